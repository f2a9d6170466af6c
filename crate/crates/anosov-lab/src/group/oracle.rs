//! Exhaustive breadth-first oracle over the Cayley graph.
//!
//! Verification-only machinery, kept independent of the normal-form
//! path: elements are identified by pure word-problem triviality tests
//! (Dehn length reduction for surface kinds, square search through braid
//! moves for Coxeter kinds), never by shortlex canonicalization. Buckets
//! keyed on the abelianized exponent vector keep the pairwise equality
//! testing affordable.

use std::collections::{HashMap, HashSet, VecDeque};

use super::presentation::{Letter, Presentation, PresentationKind, Word};

/// Word-problem triviality test, standalone.
pub fn is_trivial(pres: &Presentation, w: &Word) -> bool {
    match pres.kind {
        PresentationKind::Free { .. } => free_reduce_letters(pres, w.letters()).is_empty(),
        PresentationKind::Surface { .. } => dehn_trivial(pres, w),
        PresentationKind::Triangle { .. } => tits_trivial(pres, w),
    }
}

/// Equality in the group via triviality of u v^{-1}.
pub fn words_equal(pres: &Presentation, u: &Word, v: &Word) -> bool {
    is_trivial(pres, &u.concat(&pres.inverse_word(v)))
}

fn free_reduce_letters(pres: &Presentation, w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&pres.inverse_letter(s)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Dehn's algorithm as a pure yes/no word-problem solver: a freely
/// reduced nonempty trivial word in a C'(1/6) presentation always
/// contains more of a cyclic relator than half (Greendlinger), so
/// shortening terminates on the empty word exactly for trivial input.
fn dehn_trivial(pres: &Presentation, w: &Word) -> bool {
    let half = pres.half_len;
    let full = 2 * half;
    let mut cur = free_reduce_letters(pres, w.letters());
    'outer: loop {
        if cur.is_empty() {
            return true;
        }
        let n = cur.len();
        for start in 0..n {
            let max_k = full.min(n - start);
            for k in (half + 1..=max_k).rev() {
                if let Some(reps) = pres.rewrite.get(&cur[start..start + k]) {
                    let mut v = Vec::with_capacity(n);
                    v.extend_from_slice(&cur[..start]);
                    v.extend_from_slice(&reps[0]);
                    v.extend_from_slice(&cur[start + k..]);
                    cur = free_reduce_letters(pres, &v);
                    continue 'outer;
                }
            }
        }
        return false;
    }
}

/// Tits' solution to the word problem in Coxeter groups: a word is
/// non-reduced iff some sequence of braid moves exposes a square.
fn tits_trivial(pres: &Presentation, w: &Word) -> bool {
    let mut cur = w.0.clone();
    'outer: loop {
        cur = free_reduce_letters(pres, &cur);
        if cur.is_empty() {
            return true;
        }
        if cur.len() % 2 == 1 {
            return false;
        }
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        while let Some(u) = queue.pop_front() {
            for v in braid_images(pres, &u) {
                if v.windows(2).any(|p| p[0] == p[1]) {
                    cur = v;
                    continue 'outer;
                }
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        return false;
    }
}

fn braid_images(pres: &Presentation, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let n = w.len();
    for &(i, j) in &[(0u8, 1u8), (1, 2), (0, 2)] {
        let m = pres.coxeter_order(i, j);
        if m == usize::MAX || n < m {
            continue;
        }
        for start in 0..=n - m {
            for (x, y) in [(i, j), (j, i)] {
                let alternating = w[start..start + m]
                    .iter()
                    .enumerate()
                    .all(|(k, &s)| s == if k % 2 == 0 { x } else { y });
                if alternating {
                    let mut v = w.to_vec();
                    for (k, slot) in v[start..start + m].iter_mut().enumerate() {
                        *slot = if k % 2 == 0 { y } else { x };
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

fn abelianized(pres: &Presentation, w: &Word) -> Vec<i32> {
    // class map: letters that coincide in the abelianization share a slot.
    // For Coxeter kinds an odd dihedral order m_ij forces r_i = r_j there.
    let mut class: Vec<usize> = (0..pres.num_symbols()).collect();
    if matches!(pres.kind, PresentationKind::Triangle { .. }) {
        for &(i, j) in &[(0u8, 1u8), (1, 2), (0, 2)] {
            if pres.coxeter_order(i, j) % 2 == 1 {
                let (a, b) = (class[i as usize].min(class[j as usize]), class[i as usize].max(class[j as usize]));
                for c in class.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
            }
        }
    }
    let mut v = vec![0i32; pres.num_symbols()];
    for &s in w.letters() {
        let inv = pres.inverse_letter(s);
        if inv == s {
            // involution: exponent mod 2
            v[class[s as usize]] ^= 1;
        } else if s < inv {
            v[class[s as usize]] += 1;
        } else {
            v[class[inv as usize]] -= 1;
        }
    }
    v
}

/// Breadth-first enumeration of the Cayley graph out to `radius`,
/// identifying vertices purely by the word problem. Returns one
/// first-visited representative word per element, per sphere.
pub fn bfs_ball(pres: &Presentation, radius: usize) -> Vec<Vec<Word>> {
    let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    // bucket key: (abelianization, sphere index) -> indices into sphere
    let mut buckets: Vec<HashMap<Vec<i32>, Vec<usize>>> = vec![HashMap::new()];
    buckets[0].insert(abelianized(pres, &Word::empty()), vec![0]);

    for n in 1..=radius {
        let mut sphere: Vec<Word> = Vec::new();
        let mut bucket: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
        let prev = levels[n - 1].clone();
        for w in &prev {
            for s in 0..pres.num_symbols() as Letter {
                if !w.is_empty() && *w.letters().last().unwrap() == pres.inverse_letter(s) {
                    continue;
                }
                let mut cand = w.clone();
                cand.push(s);
                let key = abelianized(pres, &cand);
                // all relators have even length: the Cayley graph is
                // bipartite, so cand lies in sphere n-2 or sphere n
                if n >= 2 {
                    if let Some(ids) = buckets[n - 2].get(&key) {
                        if ids
                            .iter()
                            .any(|&i| words_equal(pres, &cand, &levels[n - 2][i]))
                        {
                            continue;
                        }
                    }
                }
                let ids = bucket.entry(key).or_default();
                if ids.iter().any(|&i| words_equal(pres, &cand, &sphere[i])) {
                    continue;
                }
                ids.push(sphere.len());
                sphere.push(cand);
            }
        }
        levels.push(sphere);
        buckets.push(bucket);
    }
    levels
}

/// Sphere sizes 0..=radius from the BFS oracle.
pub fn bfs_ball_sizes(pres: &Presentation, radius: usize) -> Vec<usize> {
    bfs_ball(pres, radius).iter().map(|l| l.len()).collect()
}

/// Cayley-graph distance of `w` from the identity, if within the
/// enumerated ball.
pub fn bfs_distance(pres: &Presentation, levels: &[Vec<Word>], w: &Word) -> Option<usize> {
    for (n, level) in levels.iter().enumerate() {
        if level.iter().any(|r| words_equal(pres, r, w)) {
            return Some(n);
        }
    }
    None
}
