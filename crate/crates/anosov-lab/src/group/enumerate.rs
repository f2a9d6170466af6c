//! Sphere and ball enumeration by incremental normal-form extension.
//!
//! Every normal form of length n+1 is a normal form of length n extended
//! by one letter (prefixes of shortlex-geodesic words are shortlex
//! geodesics), so spheres are built level by level and deduplicated on
//! canonical words.

use std::collections::HashSet;

use super::presentation::{Presentation, Word};
use super::reduce::reduce;
use crate::error::{LabError, Result};

/// Default cap on the total number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 8_000_000;

/// Spheres 0..=n as sorted vectors of normal forms.
#[derive(Clone, Debug)]
pub struct Spheres {
    pub levels: Vec<Vec<Word>>,
}

impl Spheres {
    pub fn radius(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn sphere(&self, n: usize) -> &[Word] {
        &self.levels[n]
    }

    pub fn ball_iter(&self) -> impl Iterator<Item = &Word> {
        self.levels.iter().flatten()
    }

    pub fn ball_size(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }
}

/// Enumerates spheres of radius 0..=n, one normal form per element,
/// in deterministic shortlex order per level.
pub fn spheres(pres: &Presentation, n: usize, cap: usize) -> Result<Spheres> {
    let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let mut total = 1usize;
    for radius in 1..=n {
        let prev = &levels[radius - 1];
        let mut next: HashSet<Word> = HashSet::with_capacity(prev.len() * 2);
        for w in prev {
            for s in 0..pres.num_symbols() as u8 {
                let mut cand = w.clone();
                cand.push(s);
                let c = reduce(pres, &cand);
                if c.len() == radius {
                    next.insert(c);
                }
            }
        }
        total += next.len();
        if total > cap {
            return Err(LabError::ResourceCap {
                completed: radius - 1,
            });
        }
        let mut level: Vec<Word> = next.into_iter().collect();
        level.sort();
        levels.push(level);
    }
    Ok(Spheres { levels })
}

/// Sphere of radius exactly n.
pub fn sphere(pres: &Presentation, n: usize, cap: usize) -> Result<Vec<Word>> {
    Ok(spheres(pres, n, cap)?.levels.pop().unwrap())
}

/// Ball of radius n as a flat sorted-by-level list.
pub fn ball(pres: &Presentation, n: usize, cap: usize) -> Result<Vec<Word>> {
    Ok(spheres(pres, n, cap)?.levels.into_iter().flatten().collect())
}
