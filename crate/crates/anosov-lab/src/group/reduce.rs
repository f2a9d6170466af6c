//! Geodesic normal forms.
//!
//! Free groups use plain free reduction. Surface groups use Dehn's
//! algorithm (the standard one-relator presentation is C'(1/6), so
//! length reductions terminate on a geodesic) followed by closure under
//! half-relator swaps to pick the shortlex-minimal geodesic. Triangle
//! Coxeter groups use Tits' solution: delete squares, close under braid
//! moves, and take the shortlex minimum of the closure.

use std::collections::{HashSet, VecDeque};

use super::presentation::{Letter, Presentation, PresentationKind, Word};

/// Hard cap on rewrite-closure exploration. Geodesic closures at desk
/// depths stay in the hundreds; hitting this means a logic error.
const CLOSURE_CAP: usize = 200_000;

/// Reduces `w` to its geodesic, shortlex-minimal normal form.
///
/// Idempotent total function: `reduce(reduce(w)) == reduce(w)`.
pub fn reduce(pres: &Presentation, w: &Word) -> Word {
    match pres.kind {
        PresentationKind::Free { .. } => free_reduce(pres, w),
        PresentationKind::Surface { .. } => surface_reduce(pres, w),
        PresentationKind::Triangle { .. } => coxeter_reduce(pres, w),
    }
}

/// True if `w` is already in normal form.
pub fn is_normal_form(pres: &Presentation, w: &Word) -> bool {
    reduce(pres, w) == *w
}

/// Stack-based free reduction (cancels s s^{-1}); for Coxeter kinds the
/// generators are involutions so this cancels equal neighbours.
pub fn free_reduce(pres: &Presentation, w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &s in w.letters() {
        if out.last() == Some(&pres.inverse_letter(s)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    Word(out)
}

/// One leftmost-longest Dehn replacement: a subword matching more than
/// half of a cyclic relator is replaced by the inverse of the complement.
fn apply_shortening(pres: &Presentation, w: &Word) -> Option<Word> {
    let half = pres.half_len;
    let full = 2 * half;
    let n = w.len();
    for start in 0..n {
        let max_k = full.min(n - start);
        for k in (half + 1..=max_k).rev() {
            let sub = &w.letters()[start..start + k];
            if let Some(reps) = pres.rewrite.get(sub) {
                let mut v = Vec::with_capacity(n - k + reps[0].len());
                v.extend_from_slice(&w.letters()[..start]);
                v.extend_from_slice(&reps[0]);
                v.extend_from_slice(&w.letters()[start + k..]);
                return Some(Word(v));
            }
        }
    }
    None
}

/// All single half-relator swaps of `w` (length-preserving).
fn swap_neighbors(pres: &Presentation, w: &Word, out: &mut Vec<Word>) {
    let half = pres.half_len;
    let n = w.len();
    if n < half {
        return;
    }
    for start in 0..=n - half {
        let sub = &w.letters()[start..start + half];
        if let Some(reps) = pres.rewrite.get(sub) {
            for rep in reps {
                if rep.len() == half && rep.as_slice() != sub {
                    let mut v = Vec::with_capacity(n);
                    v.extend_from_slice(&w.letters()[..start]);
                    v.extend_from_slice(rep);
                    v.extend_from_slice(&w.letters()[start + half..]);
                    out.push(Word(v));
                }
            }
        }
    }
}

fn surface_reduce(pres: &Presentation, w: &Word) -> Word {
    let mut cur = free_reduce(pres, w);
    'outer: loop {
        while let Some(shorter) = apply_shortening(pres, &cur) {
            cur = free_reduce(pres, &shorter);
        }
        // cur is Dehn-reduced; explore the swap closure for either a
        // hidden shortening or the shortlex-minimal geodesic.
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        let mut best = cur.clone();
        let mut scratch = Vec::new();
        while let Some(u) = queue.pop_front() {
            scratch.clear();
            swap_neighbors(pres, &u, &mut scratch);
            for v in scratch.drain(..) {
                let v = free_reduce(pres, &v);
                if v.len() < best.len() {
                    cur = v;
                    continue 'outer;
                }
                if apply_shortening(pres, &v).is_some() {
                    cur = v;
                    continue 'outer;
                }
                if seen.insert(v.clone()) {
                    if v < best {
                        best = v.clone();
                    }
                    queue.push_back(v);
                }
            }
            assert!(seen.len() < CLOSURE_CAP, "swap closure blow-up");
        }
        return best;
    }
}

/// All single braid moves r_i r_j r_i ... <-> r_j r_i r_j ... of length m_ij.
fn braid_neighbors(pres: &Presentation, w: &Word, out: &mut Vec<Word>) {
    let n = w.len();
    let pairs = [(0u8, 1u8), (1, 2), (0, 2)];
    for &(i, j) in &pairs {
        let m = pres.coxeter_order(i, j);
        if m == usize::MAX || n < m {
            continue;
        }
        for start in 0..=n - m {
            let sub = &w.letters()[start..start + m];
            for (x, y) in [(i, j), (j, i)] {
                let alternating = sub
                    .iter()
                    .enumerate()
                    .all(|(k, &s)| s == if k % 2 == 0 { x } else { y });
                if alternating {
                    let mut v = w.0.clone();
                    for (k, slot) in v[start..start + m].iter_mut().enumerate() {
                        *slot = if k % 2 == 0 { y } else { x };
                    }
                    out.push(Word(v));
                }
            }
        }
    }
}

fn has_square(w: &Word) -> Option<usize> {
    w.letters().windows(2).position(|p| p[0] == p[1])
}

fn coxeter_reduce(pres: &Presentation, w: &Word) -> Word {
    let mut cur = free_reduce(pres, w); // involutions: removes squares
    'outer: loop {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        let mut best = cur.clone();
        let mut scratch = Vec::new();
        while let Some(u) = queue.pop_front() {
            scratch.clear();
            braid_neighbors(pres, &u, &mut scratch);
            for v in scratch.drain(..) {
                if has_square(&v).is_some() {
                    cur = free_reduce(pres, &v);
                    continue 'outer;
                }
                if seen.insert(v.clone()) {
                    if v < best {
                        best = v.clone();
                    }
                    queue.push_back(v);
                }
            }
            assert!(seen.len() < CLOSURE_CAP, "braid closure blow-up");
        }
        return best;
    }
}

/// The full set of geodesic words representing the same element as the
/// normal form `w` (which must be in normal form). Used by conjugacy
/// machinery and tests.
pub fn geodesic_closure(pres: &Presentation, w: &Word) -> Vec<Word> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    let mut scratch = Vec::new();
    while let Some(u) = queue.pop_front() {
        scratch.clear();
        match pres.kind {
            PresentationKind::Free { .. } => {}
            PresentationKind::Surface { .. } => swap_neighbors(pres, &u, &mut scratch),
            PresentationKind::Triangle { .. } => braid_neighbors(pres, &u, &mut scratch),
        }
        for v in scratch.drain(..) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
        assert!(seen.len() < CLOSURE_CAP, "geodesic closure blow-up");
    }
    let mut out: Vec<Word> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::parse_presentation;

    #[test]
    fn free_reduction() {
        let p = parse_presentation("free rank=2").unwrap();
        let w = p.parse_word("a A b").unwrap();
        assert_eq!(p.format_word(&reduce(&p, &w)), "b");
    }

    #[test]
    fn surface_relator_reduces_to_identity() {
        let p = parse_presentation("surface genus=2").unwrap();
        let rel = p.relators()[0].clone();
        assert!(reduce(&p, &rel).is_empty());
        // and so does any cyclic rotation and the inverse
        for k in 0..8 {
            assert!(reduce(&p, &rel.rotate(k)).is_empty());
        }
        assert!(reduce(&p, &p.inverse_word(&rel)).is_empty());
    }

    #[test]
    fn triangle_relators_reduce_to_identity() {
        let p = parse_presentation("triangle 3 3 4").unwrap();
        for rel in p.relators() {
            assert!(reduce(&p, rel).is_empty(), "{}", p.format_word(rel));
        }
        // (r1 r2)^3 = e implies (r1 r2)^2 = r2 r1
        let w = p.parse_word("r1 r2 r1 r2").unwrap();
        assert_eq!(p.format_word(&reduce(&p, &w)), "r2 r1");
    }

    #[test]
    fn reduce_is_idempotent_on_random_words() {
        for text in ["free rank=2", "surface genus=2", "triangle 3 3 4"] {
            let p = parse_presentation(text).unwrap();
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..400 {
                let mut w = Word::empty();
                for _ in 0..14 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    w.push((state >> 33) as u8 % p.num_symbols() as u8);
                }
                let r = reduce(&p, &w);
                assert_eq!(reduce(&p, &r), r, "not idempotent on {}", p.format_word(&w));
                assert!(r.len() <= w.len());
            }
        }
    }

    #[test]
    fn triangle_inverse_is_reverse() {
        let p = parse_presentation("triangle 3 3 4").unwrap();
        let w = p.parse_word("r1 r2 r3 r1").unwrap();
        let winv = p.inverse_word(&w);
        let prod = reduce(&p, &w.concat(&winv));
        assert!(prod.is_empty());
    }
}
