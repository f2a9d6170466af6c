//! Command-line surface: run configuration, input resolution, artifact
//! emission and the command implementations.

pub mod cache;
pub mod commands;
pub mod emit;

use std::path::PathBuf;

use crate::catalog::{builtin, CatalogEntry, OrderingRef};
use crate::error::{LabError, Result};
use crate::exponents::ExponentMethod;
use crate::group::{parse_presentation, Presentation};
use crate::replin::{parse_rep_file, Representation};

pub use commands::run;

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// catalog name (`fuchsian-g2-sym2`, `triangle-334-vinberg(t)`,
    /// `f2-schottky`) or a representation-file path
    pub rep: String,
    /// second representation: `dual`, a catalog name, or a file path
    pub repbar: Option<String>,
    /// presentation document (inline text or file path) for rep files
    pub presentation: Option<String>,
    pub depth: usize,
    pub count: usize,
    pub beta: f64,
    pub rvalue: Option<f64>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub window: (f64, f64),
    pub method: ExponentMethod,
    pub phi: String,
    pub cloud: Option<String>,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rep: "triangle-334-vinberg(0)".into(),
            repbar: None,
            presentation: None,
            depth: 12,
            count: 2000,
            beta: 1.0,
            rvalue: None,
            seed: 1,
            out_dir: PathBuf::from("out"),
            cache_dir: Some(PathBuf::from("out/cache")),
            window: crate::exponents::DEFAULT_WINDOW,
            method: ExponentMethod::SlopeFit,
            phi: "tau1".into(),
            cloud: None,
            tolerance: 0.2,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(LabError::Grammar(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        if self.depth < 4 {
            return Err(LabError::Grammar(format!(
                "depth must be >= 4, got {}",
                self.depth
            )));
        }
        Ok(())
    }

    /// Key-value config file: one `key = value` per line, `#` comments.
    pub fn from_file(path: &std::path::Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = RunConfig::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(LabError::Grammar(format!("bad config line `{line}`")));
            };
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |k: &str, v: &str| LabError::Grammar(format!("bad value `{v}` for `{k}`"));
        match key {
            "rep" => self.rep = value.to_string(),
            "repbar" => self.repbar = Some(value.to_string()),
            "presentation" => self.presentation = Some(value.to_string()),
            "depth" => self.depth = value.parse().map_err(|_| bad(key, value))?,
            "count" => self.count = value.parse().map_err(|_| bad(key, value))?,
            "beta" => self.beta = value.parse().map_err(|_| bad(key, value))?,
            "rvalue" => self.rvalue = Some(value.parse().map_err(|_| bad(key, value))?),
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "out" => self.out_dir = PathBuf::from(value),
            "cache" => {
                self.cache_dir = if value == "off" {
                    None
                } else {
                    Some(PathBuf::from(value))
                }
            }
            "window" => {
                let (a, b) = value
                    .split_once(':')
                    .ok_or_else(|| bad(key, value))?;
                self.window = (
                    a.trim().parse().map_err(|_| bad(key, value))?,
                    b.trim().parse().map_err(|_| bad(key, value))?,
                );
            }
            "method" => {
                self.method = match value {
                    "slope-fit" => ExponentMethod::SlopeFit,
                    "poincare-root" => ExponentMethod::PoincareRoot,
                    _ => return Err(bad(key, value)),
                }
            }
            "phi" => self.phi = value.to_string(),
            "cloud" => self.cloud = Some(value.to_string()),
            "tolerance" => self.tolerance = value.parse().map_err(|_| bad(key, value))?,
            other => return Err(LabError::Grammar(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }
}

/// Fully resolved inputs for a run.
pub struct Resolved {
    pub pres_text: String,
    pub pres: Presentation,
    pub rep: Representation,
    pub repbar: Option<Representation>,
    pub ordering: OrderingRef,
    pub input_hash: u64,
}

fn load_custom(cfg: &RunConfig, path: &str) -> Result<(String, Presentation, Representation)> {
    let pres_spec = cfg.presentation.as_deref().ok_or_else(|| {
        LabError::RepFile("representation files need --presentation".into())
    })?;
    let pres_text = if std::path::Path::new(pres_spec).exists() {
        std::fs::read_to_string(pres_spec)?
    } else {
        pres_spec.to_string()
    };
    let pres = parse_presentation(&pres_text)?;
    let text = std::fs::read_to_string(path)?;
    let (rep, _) = parse_rep_file(&text, &pres)?;
    rep.validate(&pres)?;
    Ok((pres_text, pres, rep))
}

pub fn resolve(cfg: &RunConfig) -> Result<Resolved> {
    cfg.validate()?;
    let primary: std::result::Result<CatalogEntry, LabError> = builtin(&cfg.rep);
    let (pres_text, pres, rep, ordering) = match primary {
        Ok(entry) => (
            entry.presentation_text,
            entry.presentation,
            entry.rep,
            entry.ordering,
        ),
        Err(_) if std::path::Path::new(&cfg.rep).exists() => {
            let (t, p, r) = load_custom(cfg, &cfg.rep)?;
            (t, p, r, OrderingRef::ShortlexCyclic)
        }
        Err(e) => return Err(e),
    };
    let repbar = match cfg.repbar.as_deref() {
        None => None,
        Some("dual") => Some(rep.dual()),
        Some(name) => match builtin(name) {
            Ok(entry) => Some(entry.rep),
            Err(_) if std::path::Path::new(name).exists() => {
                let text = std::fs::read_to_string(name)?;
                let (r, _) = parse_rep_file(&text, &pres)?;
                r.validate(&pres)?;
                Some(r)
            }
            Err(e) => return Err(e),
        },
    };
    let mut hash_input = Vec::new();
    hash_input.extend_from_slice(pres_text.as_bytes());
    hash_input.extend_from_slice(cfg.rep.as_bytes());
    hash_input.extend_from_slice(cfg.repbar.as_deref().unwrap_or("-").as_bytes());
    for s in 0..rep.num_symbols() as u8 {
        for v in rep.generator(s).iter() {
            hash_input.extend_from_slice(&v.to_le_bytes());
        }
    }
    let input_hash = emit::fnv64(&hash_input);
    Ok(Resolved {
        pres_text,
        pres,
        rep,
        repbar,
        ordering,
        input_hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_round_trip() {
        let dir = std::env::temp_dir().join("anosov-lab-test-cfg");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(
            &path,
            "# example\nrep = triangle-334-vinberg(1.2)\nrepbar = dual\nbeta = 0.75\ndepth = 10\nwindow = 0.2:0.8\nmethod = poincare-root\n",
        )
        .unwrap();
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.rep, "triangle-334-vinberg(1.2)");
        assert_eq!(cfg.repbar.as_deref(), Some("dual"));
        assert_eq!(cfg.beta, 0.75);
        assert_eq!(cfg.method, ExponentMethod::PoincareRoot);
        assert_eq!(cfg.window, (0.2, 0.8));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn config_invariants_enforced() {
        let mut cfg = RunConfig::default();
        cfg.beta = 1.5;
        assert!(cfg.validate().is_err());
        cfg.beta = 0.5;
        cfg.depth = 3;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn resolve_catalog_and_dual() {
        let mut cfg = RunConfig::default();
        cfg.rep = "triangle-334-vinberg(1.2)".into();
        cfg.repbar = Some("dual".into());
        let r = resolve(&cfg).unwrap();
        assert_eq!(r.rep.dim, 3);
        assert!(r.repbar.is_some());
        assert!(matches!(r.ordering, OrderingRef::Conic { .. }));
    }
}
