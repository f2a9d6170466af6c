//! Approximate cone types at finite witness depth.
//!
//! The witness of gamma at depth k is the set of h in ball(k) with
//! |gamma h| = |gamma| + |h|. Two elements share a ConeTypeId iff their
//! witnesses agree. Witness depth is a finite surrogate; stabilization
//! across depths is monitored by callers, not assumed.

use std::collections::HashMap;

use super::presentation::{Presentation, Word};
use super::reduce::reduce;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTypeId {
    pub id: usize,
    pub depth: usize,
}

/// Assigns stable ids to witness sets.
#[derive(Default)]
pub struct ConeTypeRegistry {
    ids: HashMap<Vec<Word>, usize>,
}

impl ConeTypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, witness: Vec<Word>) -> usize {
        let next = self.ids.len();
        *self.ids.entry(witness).or_insert(next)
    }

    pub fn count(&self) -> usize {
        self.ids.len()
    }
}

/// Depth-k witness set of `gamma`, sorted shortlex. `ball_k` must be the
/// ball of radius k (normal forms).
pub fn cone_witness(pres: &Presentation, gamma: &Word, ball_k: &[Word]) -> Vec<Word> {
    let mut witness = Vec::new();
    for h in ball_k {
        let c = reduce(pres, &gamma.concat(h));
        if c.len() == gamma.len() + h.len() {
            witness.push(h.clone());
        }
    }
    witness
}

pub fn cone_type(
    pres: &Presentation,
    gamma: &Word,
    ball_k: &[Word],
    depth: usize,
    registry: &mut ConeTypeRegistry,
) -> ConeTypeId {
    let witness = cone_witness(pres, gamma, ball_k);
    ConeTypeId {
        id: registry.intern(witness),
        depth,
    }
}

/// True when h extends gamma geodesically within slack c:
/// |gamma| + |h| - |gamma h| <= c. Slack 0 is exact cone-type membership.
pub fn geodesic_slack(pres: &Presentation, gamma: &Word, h: &Word) -> usize {
    let c = reduce(pres, &gamma.concat(h));
    gamma.len() + h.len() - c.len()
}
