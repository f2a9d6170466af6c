//! Prefix-cached evaluation over enumerated balls and rays.
//!
//! Normal-form prefixes of normal forms are normal forms, so the cache
//! is a prefix tree: each element costs one matrix product per compound
//! level beyond its parent. The product path of an element is fixed by
//! its normal form, making results independent of evaluation order.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::matrix::{compound, NormalizedMatrix};
use super::rep::Representation;
use super::spectral::{spectrum_from_companions, SpectrumSample};
use crate::error::{LabError, Result};
use crate::group::Word;

/// Cached per-element data: normalized compound products for k = 1..=d-1.
#[derive(Clone, Debug)]
pub struct Entry {
    pub comps: Vec<NormalizedMatrix>,
}

impl Entry {
    pub fn matrix(&self) -> &NormalizedMatrix {
        &self.comps[0]
    }
}

pub struct Evaluator<'a> {
    rep: &'a Representation,
    /// generator compounds: gen_comps[k-1][symbol]
    gen_comps: Vec<Vec<DMatrix<f64>>>,
    cache: HashMap<Word, Entry>,
}

impl<'a> Evaluator<'a> {
    pub fn new(rep: &'a Representation) -> Evaluator<'a> {
        let d = rep.dim;
        let mut gen_comps = Vec::new();
        for k in 1..d {
            let level: Vec<DMatrix<f64>> = (0..rep.num_symbols())
                .map(|s| compound(rep.generator(s as u8), k))
                .collect();
            gen_comps.push(level);
        }
        let mut cache = HashMap::new();
        let identity = Entry {
            comps: (1..d)
                .map(|k| {
                    let n = gen_comps[k - 1][0].nrows();
                    NormalizedMatrix::identity(n)
                })
                .collect(),
        };
        cache.insert(Word::empty(), identity);
        Evaluator {
            rep,
            gen_comps,
            cache,
        }
    }

    pub fn rep(&self) -> &Representation {
        self.rep
    }

    pub fn cached_len(&self) -> usize {
        self.cache.len()
    }

    /// Entry for `w`, computing and caching all missing prefixes.
    pub fn entry(&mut self, w: &Word) -> Result<Entry> {
        if let Some(e) = self.cache.get(w) {
            return Ok(e.clone());
        }
        // find longest cached prefix
        let mut start = w.len();
        while start > 0 {
            if self.cache.contains_key(&Word(w.letters()[..start].to_vec())) {
                break;
            }
            start -= 1;
        }
        let mut cur = self.cache[&Word(w.letters()[..start].to_vec())].clone();
        for i in start..w.len() {
            let s = w.letters()[i] as usize;
            let mut comps = Vec::with_capacity(cur.comps.len());
            for (k, c) in cur.comps.iter().enumerate() {
                let next = c.mul_raw(&self.gen_comps[k][s]).map_err(|_| {
                    LabError::NumericOverflow {
                        word: format!("{:?}", &w.letters()[..=i]),
                    }
                })?;
                comps.push(next);
            }
            cur = Entry { comps };
            self.cache
                .insert(Word(w.letters()[..=i].to_vec()), cur.clone());
        }
        Ok(cur)
    }

    pub fn matrix(&mut self, w: &Word) -> Result<NormalizedMatrix> {
        Ok(self.entry(w)?.comps[0].clone())
    }

    pub fn spectrum(&mut self, w: &Word) -> Result<SpectrumSample> {
        let e = self.entry(w)?;
        spectrum_from_companions(self.rep.dim, &e.comps, 0.0, Some(w.clone()), w.len())
    }
}
