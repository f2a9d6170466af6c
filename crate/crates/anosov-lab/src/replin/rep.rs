//! Linear representations: generator matrices, validation, duality and
//! the symmetric-square lift.

use nalgebra::DMatrix;

use crate::error::{LabError, Result};
use crate::group::{Letter, Presentation, Word};

use super::evaluate::Evaluator;

pub const INVERSE_TOL: f64 = 1e-10;
pub const DET_TOL: f64 = 1e-10;
pub const RELATOR_TOL: f64 = 1e-8;

/// A representation of a presentation's group into SL^{+-}(d, R):
/// one matrix per generating symbol, |det| = 1.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    mats: Vec<DMatrix<f64>>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub max_inverse_dev: f64,
    pub max_det_dev: f64,
    pub max_relator_dev: f64,
}

impl Representation {
    pub fn new(name: impl Into<String>, dim: usize, mats: Vec<DMatrix<f64>>) -> Representation {
        Representation {
            name: name.into(),
            dim,
            mats,
        }
    }

    pub fn generator(&self, s: Letter) -> &DMatrix<f64> {
        &self.mats[s as usize]
    }

    pub fn num_symbols(&self) -> usize {
        self.mats.len()
    }

    /// Checks the contract: inverse symbols carry inverse matrices,
    /// |det| = 1, and relators evaluate to plus or minus identity.
    pub fn validate(&self, pres: &Presentation) -> Result<ValidationReport> {
        if self.mats.len() != pres.num_symbols() {
            return Err(LabError::RepFile(format!(
                "representation has {} matrices, presentation needs {}",
                self.mats.len(),
                pres.num_symbols()
            )));
        }
        let mut max_inv: f64 = 0.0;
        let mut max_det: f64 = 0.0;
        for s in 0..pres.num_symbols() as Letter {
            let m = self.generator(s);
            let det: f64 = m.determinant();
            max_det = max_det.max((det.abs() - 1.0).abs());
            let minv = self
                .generator(pres.inverse_letter(s))
                .clone();
            let prod = m * minv;
            let dev = (&prod - DMatrix::identity(self.dim, self.dim)).norm();
            max_inv = max_inv.max(dev);
        }
        if max_inv > INVERSE_TOL {
            return Err(LabError::RepFile(format!(
                "inverse-consistency deviation {max_inv:.3e} exceeds {INVERSE_TOL:.0e}"
            )));
        }
        if max_det > DET_TOL {
            return Err(LabError::RepFile(format!(
                "determinant deviation {max_det:.3e} exceeds {DET_TOL:.0e}"
            )));
        }
        let mut max_rel: f64 = 0.0;
        for rel in pres.relators() {
            let dev = self.relator_deviation(rel);
            max_rel = max_rel.max(dev);
        }
        if max_rel > RELATOR_TOL {
            return Err(LabError::RepFile(format!(
                "relator deviation {max_rel:.3e} exceeds {RELATOR_TOL:.0e}"
            )));
        }
        Ok(ValidationReport {
            max_inverse_dev: max_inv,
            max_det_dev: max_det,
            max_relator_dev: max_rel,
        })
    }

    /// Distance of the relator image from the nearer of +-identity.
    pub fn relator_deviation(&self, rel: &Word) -> f64 {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for &s in rel.letters() {
            m = m * self.generator(s);
        }
        let id = DMatrix::identity(self.dim, self.dim);
        let plus = (&m - &id).norm();
        let minus = (&m + &id).norm();
        plus.min(minus)
    }

    /// Dual (contragredient) representation: inverse transposes.
    pub fn dual(&self) -> Representation {
        let mats = self
            .mats
            .iter()
            .map(|m| {
                m.clone()
                    .try_inverse()
                    .expect("generator not invertible")
                    .transpose()
            })
            .collect();
        Representation {
            name: format!("{}*", self.name),
            dim: self.dim,
            mats,
        }
    }

    /// Symmetric-square lift of a 2-dimensional representation, acting
    /// on symmetric 2-tensors in the monomial basis (x^2, xy, y^2).
    pub fn sym2(&self) -> Representation {
        assert_eq!(self.dim, 2, "sym2 lift requires a 2-dimensional rep");
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
                let s = DMatrix::from_row_slice(
                    3,
                    3,
                    &[
                        a * a,
                        a * b,
                        b * b,
                        2.0 * a * c,
                        a * d + b * c,
                        2.0 * b * d,
                        c * c,
                        c * d,
                        d * d,
                    ],
                );
                // unit determinant normalization: det Sym^2(M) = det(M)^3
                let det: f64 = s.determinant();
                &s / det.abs().powf(1.0 / 3.0)
            })
            .collect();
        Representation {
            name: format!("sym2({})", self.name),
            dim: 3,
            mats,
        }
    }

    /// One-off evaluation without a cache.
    pub fn evaluate(&self, w: &Word) -> Result<super::matrix::NormalizedMatrix> {
        Evaluator::new(self).matrix(w)
    }
}

/// Parses a representation file: header `dim d`, `field R`, optional
/// `presentation <name>`, then one line per named generator with d*d
/// row-major entries. Inverse symbols not listed are derived by matrix
/// inversion.
pub fn parse_rep_file(
    text: &str,
    pres: &Presentation,
) -> Result<(Representation, Option<String>)> {
    let mut dim: Option<usize> = None;
    let mut name = "rep".to_string();
    let mut pres_ref: Option<String> = None;
    let mut given: Vec<Option<DMatrix<f64>>> = vec![None; pres.num_symbols()];
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "dim" => {
                dim = Some(
                    toks.next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| LabError::RepFile("bad dim line".into()))?,
                )
            }
            "field" => {
                let f = toks.next().unwrap_or("");
                if f != "R" {
                    return Err(LabError::RepFile(format!("unsupported field `{f}`")));
                }
            }
            "name" => {
                if let Some(n) = toks.next() {
                    name = n.to_string();
                }
            }
            "presentation" => pres_ref = toks.next().map(|s| s.to_string()),
            gen_name => {
                let d = dim.ok_or_else(|| {
                    LabError::RepFile("generator line before dim header".into())
                })?;
                let idx = (0..pres.num_symbols() as Letter)
                    .find(|&s| pres.symbol_name(s) == gen_name)
                    .ok_or_else(|| LabError::UnknownGenerator(gen_name.to_string()))?;
                let vals: Vec<f64> = toks
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| LabError::RepFile(format!("bad entry: {e}")))?;
                if vals.len() != d * d {
                    return Err(LabError::RepFile(format!(
                        "generator {gen_name}: expected {} entries, got {}",
                        d * d,
                        vals.len()
                    )));
                }
                given[idx as usize] = Some(DMatrix::from_row_slice(d, d, &vals));
            }
        }
    }
    let d = dim.ok_or_else(|| LabError::RepFile("missing dim header".into()))?;
    let mut mats: Vec<DMatrix<f64>> = Vec::with_capacity(pres.num_symbols());
    for s in 0..pres.num_symbols() as Letter {
        let m = match &given[s as usize] {
            Some(m) => m.clone(),
            None => {
                let inv_sym = pres.inverse_letter(s);
                given[inv_sym as usize]
                    .as_ref()
                    .ok_or_else(|| {
                        LabError::RepFile(format!(
                            "no matrix for generator {}",
                            pres.symbol_name(s)
                        ))
                    })?
                    .clone()
                    .try_inverse()
                    .ok_or_else(|| LabError::RepFile("singular generator".into()))?
            }
        };
        mats.push(m);
    }
    Ok((Representation::new(name, d, mats), pres_ref))
}

/// Serializes in the same format (17 significant digits).
pub fn to_rep_file(rep: &Representation, pres: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", rep.dim));
    out.push_str("field R\n");
    out.push_str(&format!("name {}\n", rep.name));
    for s in 0..pres.num_symbols() as Letter {
        if pres.inverse_letter(s) < s {
            continue; // derive inverses on load
        }
        let m = rep.generator(s);
        let entries: Vec<String> = m
            .row_iter()
            .flat_map(|r| r.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>())
            .collect();
        out.push_str(&format!(
            "{} {}\n",
            pres.symbol_name(s),
            entries.join(" ")
        ));
    }
    out
}
