//! Double-double arithmetic (~31 significant digits) and a Jacobi
//! eigensolver over it.
//!
//! This is the extended-precision escape hatch for words long enough
//! that singular-value gaps exceed what f64 can resolve, and it doubles
//! as the independent g g^T oracle in tests: generator products are
//! accumulated without renormalization and the symmetric eigenproblem is
//! solved in double-double, a route fully separate from the
//! exterior-power bookkeeping of the main path.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let x0 = self.hi.sqrt();
        // one Newton step in double-double
        let x = Dd::from_f64(x0);
        let r = (self - x * x) / (Dd::from_f64(2.0) * x);
        x + r
    }

    /// Natural log with ~1e-15 absolute accuracy, enough for spectra on
    /// the log scale (the double-double value itself carries the
    /// precision; the final log is taken once).
    pub fn ln(self) -> f64 {
        debug_assert!(self.hi > 0.0);
        self.hi.ln() + (self.lo / self.hi).ln_1p()
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - Dd::from_f64(q1) * o;
        let q2 = r.hi / o.hi;
        let r = r - Dd::from_f64(q2) * o;
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<std::cmp::Ordering> {
        (self.hi, self.lo).partial_cmp(&(o.hi, o.lo))
    }
}

/// Dense square matrix over Dd, just enough for oracle products.
#[derive(Clone, Debug)]
pub struct DdMat {
    pub n: usize,
    pub e: Vec<Dd>,
}

impl DdMat {
    pub fn zeros(n: usize) -> DdMat {
        DdMat {
            n,
            e: vec![Dd::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> DdMat {
        let mut m = DdMat::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = Dd::ONE;
        }
        m
    }

    pub fn from_f64_rows(n: usize, rows: &[f64]) -> DdMat {
        DdMat {
            n,
            e: rows.iter().map(|&x| Dd::from_f64(x)).collect(),
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Dd {
        self.e[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Dd) {
        self.e[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &DdMat) -> DdMat {
        let n = self.n;
        let mut out = DdMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Dd::ZERO;
                for k in 0..n {
                    acc = acc + self.at(i, k) * o.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn gram(&self) -> DdMat {
        // g g^T
        let n = self.n;
        let mut out = DdMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Dd::ZERO;
                for k in 0..n {
                    acc = acc + self.at(i, k) * self.at(j, k);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// Cyclic Jacobi eigenvalues of a symmetric DdMat, descending.
pub fn jacobi_eigenvalues_dd(a: &DdMat) -> Vec<Dd> {
    let n = a.n;
    let mut m = a.clone();
    let two = Dd::from_f64(2.0);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m.at(i, j).abs().to_f64());
            }
        }
        let scale = (0..n).map(|i| m.at(i, i).abs().to_f64()).fold(0.0, f64::max);
        if off <= scale * 1e-34 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.at(p, q);
                if apq.abs().to_f64() <= scale * 1e-36 {
                    continue;
                }
                let theta = (m.at(q, q) - m.at(p, p)) / (two * apq);
                let t = {
                    let sign = if theta.hi >= 0.0 { Dd::ONE } else { -Dd::ONE };
                    sign / (theta.abs() + (theta * theta + Dd::ONE).sqrt())
                };
                let c = Dd::ONE / (t * t + Dd::ONE).sqrt();
                let s = t * c;
                // rotate rows/cols p, q
                for k in 0..n {
                    let akp = m.at(k, p);
                    let akq = m.at(k, q);
                    m.set(k, p, c * akp - s * akq);
                    m.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = m.at(p, k);
                    let aqk = m.at(q, k);
                    m.set(p, k, c * apk - s * aqk);
                    m.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eig: Vec<Dd> = (0..n).map(|i| m.at(i, i)).collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig
}
