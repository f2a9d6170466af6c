//! Built-in example representations.
//!
//! - `fuchsian-g2-sym2`: side pairings of the regular hyperbolic octagon
//!   (vertex angle pi/4) rearranged to satisfy the genus-2 commutator
//!   relator, lifted to SL(3,R) by the symmetric square.
//! - `triangle-334-vinberg(t)`: the one-parameter Vinberg reflection
//!   family of the (3,3,4) triangle group; t = 0 is the symmetric point
//!   preserving a signature-(2,1) form.
//! - `f2-schottky`: two hyperbolic SL(2,R) elements with disjoint axes,
//!   lifted by the symmetric square.

use nalgebra::{Complex, DMatrix, Matrix2};

use crate::error::{LabError, Result};
use crate::group::{parse_presentation, Presentation};
use crate::replin::Representation;

/// How boundary samples of an entry acquire a circular order.
#[derive(Clone, Debug)]
pub enum OrderingRef {
    /// Angle of the limit line of a 2-dimensional reference rep in RP^1.
    Rp1(Representation),
    /// Angle along the invariant conic of a 3-dimensional reference rep;
    /// `to_diag` maps the form to diag(1,1,-1) coordinates.
    Conic {
        rep: Representation,
        to_diag: DMatrix<f64>,
    },
    /// Cantor boundary: cyclic shortlex on ray prefixes.
    ShortlexCyclic,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation_text: String,
    pub presentation: Presentation,
    pub rep: Representation,
    pub ordering: OrderingRef,
}

type C64 = Complex<f64>;
type CMat = Matrix2<C64>;

fn mobius(m: &CMat, z: C64) -> C64 {
    (m[(0, 0)] * z + m[(0, 1)]) / (m[(1, 0)] * z + m[(1, 1)])
}

/// Disk-model isometry sending p to 0, normalized to det 1.
fn t_move(p: C64) -> CMat {
    let m = CMat::new(C64::new(1.0, 0.0), -p, -p.conj(), C64::new(1.0, 0.0));
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    m / det.sqrt()
}

fn rot(phi: f64) -> CMat {
    let h = C64::new(0.0, phi / 2.0).exp();
    CMat::new(h, C64::new(0.0, 0.0), C64::new(0.0, 0.0), h.inv())
}

/// Unique orientation-preserving isometry with (p, q) -> (p2, q2)
/// (equal hyperbolic distances assumed).
fn pair_map(p: C64, q: C64, p2: C64, q2: C64) -> CMat {
    let n1 = t_move(p);
    let n1 = rot(-mobius(&n1, q).arg()) * n1;
    let n2 = t_move(p2);
    let n2 = rot(-mobius(&n2, q2).arg()) * n2;
    n2.try_inverse().unwrap() * n1
}

/// SU(1,1) -> SL(2,R) conversion via the Cayley transform.
fn to_real(m: &CMat) -> DMatrix<f64> {
    // C maps the upper half plane to the disk; real form = C^{-1} m C
    let s = C64::new(0.0, 2.0).sqrt();
    let c = CMat::new(
        C64::new(1.0, 0.0) / s,
        C64::new(0.0, -1.0) / s,
        C64::new(1.0, 0.0) / s,
        C64::new(0.0, 1.0) / s,
    );
    let r = c.try_inverse().unwrap() * m * c;
    let mut out = DMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            debug_assert!(r[(i, j)].im.abs() < 1e-10);
            out[(i, j)] = r[(i, j)].re;
        }
    }
    // clean determinant to exactly 1
    let det: f64 = out[(0, 0)] * out[(1, 1)] - out[(0, 1)] * out[(1, 0)];
    out / det.abs().sqrt()
}

/// The 2-dimensional regular-octagon representation of the genus-2
/// surface group with relator [a1,b1][a2,b2].
pub fn octagon_fuchsian(pres: &Presentation) -> Representation {
    // circumradius: cosh R = cot^2(pi/8); vertices at angles pi/8 + k pi/4
    let cosh_r = 1.0 / (std::f64::consts::PI / 8.0).tan().powi(2);
    let r_hyp = cosh_r.acosh();
    let rho = (r_hyp / 2.0).tanh();
    let verts: Vec<C64> = (0..8)
        .map(|k| {
            let th = std::f64::consts::PI / 8.0 + 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            C64::new(rho * th.cos(), rho * th.sin())
        })
        .collect();
    // boundary word a b A B c d C D on sides 0..7 (side i = v_i -> v_{i+1});
    // the pairing sends side j to side i reversed; rearranging b, d as the
    // inverses of the raw pairings turns the vertex cycle into the
    // commutator relator.
    let raw = |i: usize, j: usize| {
        pair_map(
            verts[j],
            verts[(j + 1) % 8],
            verts[(i + 1) % 8],
            verts[i],
        )
    };
    let a = raw(0, 2);
    let b = raw(1, 3).try_inverse().unwrap();
    let c = raw(4, 6);
    let d = raw(5, 7).try_inverse().unwrap();
    let mut mats = Vec::new();
    for g in [a, b, c, d] {
        let real = to_real(&g);
        let inv = real.clone().try_inverse().unwrap();
        mats.push(real);
        mats.push(inv);
    }
    let rep = Representation::new("octagon-g2", 2, mats);
    debug_assert!(rep.validate(pres).is_ok());
    rep
}

/// Vinberg reflection family for a hyperbolic (p,q,r) triangle.
/// Deviation parameter t = 0 is the symmetric (Fuchsian) point.
pub fn vinberg_triangle(pres: &Presentation, p: usize, q: usize, r: usize, t: f64) -> Representation {
    let c = |m: usize| 2.0 * (std::f64::consts::PI / m as f64).cos();
    let (cp, cq, cr) = (c(p), c(q), c(r));
    let e = (t / 6.0).exp();
    // Cartan-like matrix: a_ii = 2, a_ij a_ji = 4 cos^2(pi/m_ij);
    // the cyclic-product ratio e^t is the projective deformation parameter.
    let mut a = DMatrix::zeros(3, 3);
    a[(0, 0)] = 2.0;
    a[(1, 1)] = 2.0;
    a[(2, 2)] = 2.0;
    a[(0, 1)] = -cp * e;
    a[(1, 0)] = -cp / e;
    a[(1, 2)] = -cq * e;
    a[(2, 1)] = -cq / e;
    a[(2, 0)] = -cr * e;
    a[(0, 2)] = -cr / e;
    let mut mats = Vec::new();
    for i in 0..3 {
        let mut m = DMatrix::identity(3, 3);
        for k in 0..3 {
            m[(i, k)] -= a[(i, k)];
        }
        mats.push(m);
    }
    let rep = Representation::new(format!("vinberg-{p}{q}{r}(t={t})"), 3, mats);
    debug_assert!(rep.validate(pres).is_ok());
    rep
}

/// Two hyperbolic SL(2,R) elements with disjoint axes generating a free
/// Schottky group: axis of `a` is (0, infinity), axis of `b` is (1, 2).
/// Sphere minima of tau_1 grow by ~2 per letter for this pair.
pub fn schottky_f2(pres: &Presentation) -> Representation {
    let l = 3.0f64;
    let a = DMatrix::from_row_slice(2, 2, &[l, 0.0, 0.0, 1.0 / l]);
    let cm = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 1.0]);
    let b = &cm * &a * cm.clone().try_inverse().unwrap();
    let mats = vec![
        a.clone(),
        a.try_inverse().unwrap(),
        b.clone(),
        b.try_inverse().unwrap(),
    ];
    let rep = Representation::new("schottky-f2", 2, mats);
    debug_assert!(rep.validate(pres).is_ok());
    rep
}

/// Transform taking a signature-(2,1) symmetric form to diag(1,1,-1)
/// coordinates (negative direction last).
fn conic_chart(j: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = j.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..3).collect();
    // positive eigenvalues first
    idx.sort_by(|&x, &y| eig.eigenvalues[y].partial_cmp(&eig.eigenvalues[x]).unwrap());
    let mut p = DMatrix::zeros(3, 3);
    for (row, &i) in idx.iter().enumerate() {
        let scale = eig.eigenvalues[i].abs().sqrt();
        for k in 0..3 {
            p[(row, k)] = eig.eigenvectors[(k, i)] * scale;
        }
    }
    p
}

/// Invariant symmetric form of a 3-dim rep (least-squares over the
/// generator constraints g^T J g = J), normalized.
pub fn invariant_form(rep: &Representation) -> Result<DMatrix<f64>> {
    // unknowns: symmetric 3x3 = 6 entries; constraints per generator:
    // g^T J g - J = 0 (6 equations each)
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut rows: Vec<f64> = Vec::new();
    let mut nrows = 0;
    for s in 0..rep.num_symbols() {
        let g = rep.generator(s as u8);
        // (g^T J g)_{ab} = sum_{c,d} g_{ca} J_{cd} g_{db}
        for &(ai, bi) in &pairs {
            let mut row = [0.0f64; 6];
            for (k, &(ci, di)) in pairs.iter().enumerate() {
                let mut coeff = g[(ci, ai)] * g[(di, bi)];
                if ci != di {
                    coeff += g[(di, ai)] * g[(ci, bi)];
                }
                row[k] = coeff;
            }
            // subtract J_{ab}
            for (k, &(ci, di)) in pairs.iter().enumerate() {
                if (ci, di) == (ai, bi) {
                    row[k] -= 1.0;
                }
            }
            rows.extend_from_slice(&row);
            nrows += 1;
        }
    }
    let m = DMatrix::from_row_slice(nrows, 6, &rows);
    let svd = m.svd(true, true);
    let v_t = svd.v_t.unwrap();
    let small = svd.singular_values[5];
    if small > 1e-6 {
        return Err(LabError::NumericConvergence(format!(
            "no invariant form: smallest singular value {small:.3e}"
        )));
    }
    let sol = v_t.row(5);
    let mut j = DMatrix::zeros(3, 3);
    for (k, &(ai, bi)) in pairs.iter().enumerate() {
        j[(ai, bi)] = sol[k];
        j[(bi, ai)] = sol[k];
    }
    // normalize sign so signature is (2,1), not (1,2)
    let eig = j.clone().symmetric_eigen();
    let pos = eig.eigenvalues.iter().filter(|&&x| x > 0.0).count();
    if pos == 1 {
        j = -j;
    }
    Ok(j)
}

/// Looks up a built-in by name; `triangle-334-vinberg(t)` takes the
/// deformation parameter in parentheses.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let (base, param) = match name.find('(') {
        Some(i) => {
            let close = name
                .rfind(')')
                .ok_or_else(|| LabError::RepFile(format!("unbalanced parens in `{name}`")))?;
            let t: f64 = name[i + 1..close]
                .parse()
                .map_err(|_| LabError::RepFile(format!("bad parameter in `{name}`")))?;
            (&name[..i], Some(t))
        }
        None => (name, None),
    };
    match base {
        "fuchsian-g2-sym2" => {
            let text = "surface genus=2".to_string();
            let pres = parse_presentation(&text)?;
            let base2 = octagon_fuchsian(&pres);
            let rep = base2.sym2();
            Ok(CatalogEntry {
                name: name.to_string(),
                presentation_text: text,
                presentation: pres,
                rep,
                ordering: OrderingRef::Rp1(base2),
            })
        }
        "triangle-334-vinberg" => {
            let t = param.unwrap_or(0.0);
            let text = "triangle 3 3 4".to_string();
            let pres = parse_presentation(&text)?;
            let rep = vinberg_triangle(&pres, 3, 3, 4, t);
            let reference = vinberg_triangle(&pres, 3, 3, 4, 0.0);
            let j = invariant_form(&reference)?;
            Ok(CatalogEntry {
                name: name.to_string(),
                presentation_text: text,
                presentation: pres,
                rep,
                ordering: OrderingRef::Conic {
                    rep: reference,
                    to_diag: conic_chart(&j),
                },
            })
        }
        "f2-schottky" => {
            let text = "free rank=2".to_string();
            let pres = parse_presentation(&text)?;
            let base2 = schottky_f2(&pres);
            let rep = base2.sym2();
            Ok(CatalogEntry {
                name: name.to_string(),
                presentation_text: text,
                presentation: pres,
                rep,
                ordering: OrderingRef::ShortlexCyclic,
            })
        }
        other => Err(LabError::RepFile(format!("unknown catalog entry `{other}`"))),
    }
}
