//! Conjugacy-class representatives among cyclically reduced words.
//!
//! A class is identified by the shortlex-minimal normal form reachable
//! from a word through cyclic rotations and geodesic rewritings (braid
//! moves / half-relator swaps). If any rotation reduces to a shorter
//! word the element is conjugate into a smaller ball and is skipped at
//! this length.

use std::collections::{HashSet, VecDeque};

use super::enumerate::ball;
use super::presentation::{Presentation, Word};
use super::reduce::{geodesic_closure, reduce};
use crate::error::Result;

const ORBIT_CAP: usize = 500_000;

/// Shortlex-minimal normal form in the rotation+rewrite orbit of `w`,
/// or None if the class contains a shorter element.
pub fn cyclic_min(pres: &Presentation, w: &Word) -> Option<Word> {
    let n = w.len();
    if n == 0 {
        return Some(Word::empty());
    }
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    let mut best: Option<Word> = None;
    let start = reduce(pres, w);
    if start.len() < n {
        return None;
    }
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let c = reduce(pres, &u);
        if c.len() < n {
            return None;
        }
        if best.as_ref().map_or(true, |b| &c < b) {
            best = Some(c);
        }
        // geodesic rewritings of u
        for v in geodesic_closure(pres, &reduce(pres, &u)) {
            for k in 0..n {
                let r = v.rotate(k);
                let rc = reduce(pres, &r);
                if rc.len() < n {
                    return None;
                }
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        assert!(seen.len() < ORBIT_CAP, "conjugacy orbit blow-up");
    }
    best
}

/// One representative per conjugacy class among cyclically reduced words
/// of length 1..=n. With `identify_inverses` the classes of gamma and
/// gamma^{-1} are merged.
pub fn conjugacy_reps(
    pres: &Presentation,
    n: usize,
    cap: usize,
    identify_inverses: bool,
) -> Result<Vec<Word>> {
    let b = ball(pres, n, cap)?;
    let mut reps = Vec::new();
    for w in &b {
        if w.is_empty() {
            continue;
        }
        let Some(m) = cyclic_min(pres, w) else {
            continue;
        };
        if m != *w {
            continue;
        }
        if identify_inverses {
            if let Some(mi) = cyclic_min(pres, &pres.inverse_word(w)) {
                if mi < *w {
                    continue;
                }
            }
        }
        reps.push(w.clone());
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate::DEFAULT_ELEMENT_CAP;
    use crate::group::presentation::parse_presentation;

    #[test]
    fn f2_classes_up_to_length_two() {
        let p = parse_presentation("free rank=2").unwrap();
        let reps = conjugacy_reps(&p, 2, DEFAULT_ELEMENT_CAP, false).unwrap();
        // length 1: a, A, b, B. length 2: a2, b2, A2, B2 and the four
        // mixed classes ab, aB, Ab, AB (rotations identified; ba ~ ab).
        let names: Vec<String> = reps.iter().map(|w| p.format_word(w)).collect();
        assert_eq!(reps.len(), 12, "{names:?}");
        for w in ["a", "b", "a a", "a b", "a B", "A b", "A B"] {
            let target = p.parse_word(w).unwrap();
            assert!(reps.contains(&target), "missing {w}");
        }
        // ba is rotation-equivalent to ab and must not appear
        assert!(!reps.contains(&p.parse_word("b a").unwrap()));
    }

    #[test]
    fn representatives_are_cyclically_reduced() {
        let p = parse_presentation("triangle 3 3 4").unwrap();
        let reps = conjugacy_reps(&p, 5, DEFAULT_ELEMENT_CAP, false).unwrap();
        for w in &reps {
            for k in 0..w.len() {
                assert_eq!(
                    reduce(&p, &w.rotate(k)).len(),
                    w.len(),
                    "rotation of {} reduces",
                    p.format_word(w)
                );
            }
        }
    }

    #[test]
    fn exhaustive_orbit_partition_matches() {
        // independent oracle: partition all cyclically reduced words by
        // the rotation+rewrite orbit relation computed by brute force
        for text in ["free rank=2", "surface genus=2"] {
            let p = parse_presentation(text).unwrap();
            let n = 3;
            let b = ball(&p, n, DEFAULT_ELEMENT_CAP).unwrap();
            let cyc: Vec<&Word> = b
                .iter()
                .filter(|w| {
                    !w.is_empty()
                        && (0..w.len()).all(|k| reduce(&p, &w.rotate(k)).len() == w.len())
                })
                .collect();
            let mut keys: HashSet<Word> = HashSet::new();
            for w in &cyc {
                keys.insert(cyclic_min(&p, w).unwrap());
            }
            let reps = conjugacy_reps(&p, n, DEFAULT_ELEMENT_CAP, false).unwrap();
            assert_eq!(reps.len(), keys.len(), "{text}");
        }
    }
}
