//! Geodesic rays: nested normal-form prefixes built by seeded extension.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::presentation::{Letter, Presentation, Word};
use super::reduce::reduce;

/// A geodesic ray truncated at finite depth. Every prefix is a normal
/// form of the stated length, so prefixes are nested alpha_0 < alpha_1 < ...
#[derive(Clone, Debug)]
pub struct Ray {
    pub word: Word,
}

impl Ray {
    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.word.letters()[..n].to_vec())
    }
}

/// Letters s for which w.s is itself a normal form (the shortlex tree
/// children of w).
pub fn normal_extensions(pres: &Presentation, w: &Word) -> Vec<Letter> {
    let mut out = Vec::new();
    for s in 0..pres.num_symbols() as Letter {
        let mut c = w.clone();
        c.push(s);
        if reduce(pres, &c) == c {
            out.push(s);
        }
    }
    out
}

/// Builds `count` rays of depth `depth` by repeatedly extending a normal
/// form, choosing uniformly (seeded) among valid extensions. Dead ends of
/// the shortlex tree are handled by backtracking.
pub fn geodesic_rays(pres: &Presentation, depth: usize, count: usize, seed: u64) -> Vec<Ray> {
    let mut rays = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15));
        rays.push(build_ray(pres, depth, &mut rng));
    }
    rays
}

fn build_ray(pres: &Presentation, depth: usize, rng: &mut ChaCha8Rng) -> Ray {
    let mut word = Word::empty();
    // stack of untried extensions per level, for backtracking
    let mut frontier: Vec<Vec<Letter>> = Vec::new();
    let mut options = normal_extensions(pres, &word);
    loop {
        if word.len() == depth {
            return Ray { word };
        }
        if options.is_empty() {
            // dead end in the shortlex tree: backtrack
            assert!(
                !frontier.is_empty(),
                "shortlex tree exhausted before target depth"
            );
            word.0.pop();
            options = frontier.pop().unwrap();
            continue;
        }
        let pick = rng.gen_range(0..options.len());
        let s = options.swap_remove(pick);
        frontier.push(options);
        word.push(s);
        options = normal_extensions(pres, &word);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::parse_presentation;

    #[test]
    fn rays_are_nested_normal_forms() {
        for text in ["free rank=2", "surface genus=2", "triangle 3 3 4"] {
            let p = parse_presentation(text).unwrap();
            for ray in geodesic_rays(&p, 12, 5, 7) {
                for n in 0..=ray.depth() {
                    let pre = ray.prefix(n);
                    assert_eq!(pre.len(), n);
                    assert_eq!(reduce(&p, &pre), pre);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_rays() {
        let p = parse_presentation("surface genus=2").unwrap();
        let r1 = geodesic_rays(&p, 10, 4, 42);
        let r2 = geodesic_rays(&p, 10, 4, 42);
        for (a, b) in r1.iter().zip(&r2) {
            assert_eq!(a.word, b.word);
        }
    }

    #[test]
    fn f2_power_ray_has_no_backtracking() {
        let p = parse_presentation("free rank=2").unwrap();
        let w = p.parse_word("a a a a a").unwrap();
        assert_eq!(reduce(&p, &w), w);
    }
}
