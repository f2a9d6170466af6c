use std::collections::HashMap;
use std::fmt;

use crate::error::{LabError, Result};

/// Index into the symmetric generating set of a [`Presentation`].
pub type Letter = u8;

/// A word in the generators, stored as letter indices. Ordering is
/// shortlex with the presentation's fixed generator order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, s: Letter) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Cyclic rotation by `k` positions.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.0)
    }
}

/// Presentation family tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Free { rank: usize },
    Surface { genus: usize },
    Triangle { m12: usize, m23: usize, m13: usize },
}

/// A finite presentation of one of the supported word-hyperbolic families.
///
/// The generating set is symmetric: for every symbol its formal inverse is
/// also a symbol (Coxeter generators are their own inverses). Relators are
/// stored cyclically reduced.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub kind: PresentationKind,
    symbols: Vec<String>,
    inverse: Vec<Letter>,
    relators: Vec<Word>,
    /// Surface groups: subword -> complement replacements, keyed by cyclic
    /// subwords of the relator and its inverse (lengths half..full).
    pub(crate) rewrite: HashMap<Vec<Letter>, Vec<Vec<Letter>>>,
    /// Half the relator length for surface kinds (swap site size).
    pub(crate) half_len: usize,
}

impl Presentation {
    pub fn free(rank: usize) -> Result<Presentation> {
        if rank == 0 || rank > 13 {
            return Err(LabError::Grammar(format!(
                "free rank must be in 1..=13, got {rank}"
            )));
        }
        let mut symbols = Vec::new();
        let mut inverse = Vec::new();
        for i in 0..rank {
            let c = (b'a' + i as u8) as char;
            symbols.push(c.to_string());
            symbols.push(c.to_ascii_uppercase().to_string());
            inverse.push((2 * i + 1) as Letter);
            inverse.push((2 * i) as Letter);
        }
        Ok(Presentation {
            kind: PresentationKind::Free { rank },
            symbols,
            inverse,
            relators: Vec::new(),
            rewrite: HashMap::new(),
            half_len: 0,
        })
    }

    pub fn surface(genus: usize) -> Result<Presentation> {
        if genus < 2 || genus > 4 {
            return Err(LabError::Grammar(format!(
                "surface genus must be in 2..=4, got {genus}"
            )));
        }
        let mut symbols = Vec::new();
        let mut inverse = Vec::new();
        for i in 1..=genus {
            for name in [format!("a{i}"), format!("b{i}")] {
                let k = symbols.len() as Letter;
                symbols.push(name.clone());
                symbols.push(name.to_uppercase());
                inverse.push(k + 1);
                inverse.push(k);
            }
        }
        // genus-g relator [a1,b1]...[ag,bg], length 4g
        let mut rel = Vec::new();
        for i in 0..genus {
            let a = (4 * i) as Letter;
            let b = (4 * i + 2) as Letter;
            rel.extend_from_slice(&[a, b, a + 1, b + 1]);
        }
        let mut p = Presentation {
            kind: PresentationKind::Surface { genus },
            symbols,
            inverse,
            relators: vec![Word(rel)],
            rewrite: HashMap::new(),
            half_len: 2 * genus,
        };
        p.build_rewrite_table();
        Ok(p)
    }

    pub fn triangle(p: usize, q: usize, r: usize) -> Result<Presentation> {
        if p < 2 || q < 2 || r < 2 {
            return Err(LabError::Grammar("triangle orders must be >= 2".into()));
        }
        if q * r + p * r + p * q >= p * q * r {
            return Err(LabError::Grammar(format!(
                "triangle ({p},{q},{r}) is not hyperbolic"
            )));
        }
        let symbols = vec!["r1".to_string(), "r2".to_string(), "r3".to_string()];
        let inverse = vec![0, 1, 2];
        let mut relators = Vec::new();
        for i in 0..3u8 {
            relators.push(Word(vec![i, i]));
        }
        for (i, j, m) in [(0u8, 1u8, p), (1, 2, q), (0, 2, r)] {
            let mut rel = Vec::new();
            for _ in 0..m {
                rel.push(i);
                rel.push(j);
            }
            relators.push(Word(rel));
        }
        Ok(Presentation {
            kind: PresentationKind::Triangle { m12: p, m23: q, m13: r },
            symbols,
            inverse,
            relators,
            rewrite: HashMap::new(),
            half_len: 0,
        })
    }

    /// Dihedral order of the pair of Coxeter generators (i, j).
    pub(crate) fn coxeter_order(&self, i: Letter, j: Letter) -> usize {
        match self.kind {
            PresentationKind::Triangle { m12, m23, m13 } => match (i.min(j), i.max(j)) {
                (0, 1) => m12,
                (1, 2) => m23,
                (0, 2) => m13,
                _ => usize::MAX,
            },
            _ => usize::MAX,
        }
    }

    fn build_rewrite_table(&mut self) {
        let rel = self.relators[0].clone();
        let n = rel.len();
        let inv_rel = self.inverse_word(&rel);
        let mut table: HashMap<Vec<Letter>, Vec<Vec<Letter>>> = HashMap::new();
        for base in [rel, inv_rel] {
            for rot in 0..n {
                let cyc = base.rotate(rot);
                for k in self.half_len..=n {
                    let sub = cyc.0[..k].to_vec();
                    let complement = self.inverse_word(&Word(cyc.0[k..].to_vec())).0;
                    let entry = table.entry(sub).or_default();
                    if !entry.contains(&complement) {
                        entry.push(complement);
                    }
                }
            }
        }
        self.rewrite = table;
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol_name(&self, s: Letter) -> &str {
        &self.symbols[s as usize]
    }

    pub fn inverse_letter(&self, s: Letter) -> Letter {
        self.inverse[s as usize]
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(
            w.0.iter()
                .rev()
                .map(|&s| self.inverse[s as usize])
                .collect(),
        )
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.0.iter()
            .map(|&s| self.symbol_name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "e" {
                continue;
            }
            match self.symbols.iter().position(|s| s == tok) {
                Some(i) => letters.push(i as Letter),
                None => return Err(LabError::UnknownGenerator(tok.to_string())),
            }
        }
        Ok(Word(letters))
    }
}

/// Parses a presentation document.
///
/// Grammar: an optional leading `kind` token, a kind name
/// (`free|surface|triangle`), then kind parameters either as `key=value`
/// pairs or bare integers (`triangle 3 3 4`).
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == '=')
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.first() == Some(&"kind") {
        tokens.remove(0);
    }
    if tokens.is_empty() {
        return Err(LabError::Grammar("empty presentation document".into()));
    }
    let kind = tokens.remove(0);
    let ints: Vec<usize> = tokens
        .iter()
        .filter_map(|t| t.parse::<usize>().ok())
        .collect();
    match kind {
        "free" => {
            let rank = named_or_positional(&tokens, &ints, "rank")?;
            Presentation::free(rank)
        }
        "surface" => {
            let genus = named_or_positional(&tokens, &ints, "genus")?;
            Presentation::surface(genus)
        }
        "triangle" => {
            if ints.len() != 3 {
                return Err(LabError::Grammar(
                    "triangle expects three integer orders".into(),
                ));
            }
            Presentation::triangle(ints[0], ints[1], ints[2])
        }
        other => Err(LabError::Grammar(format!("unknown kind `{other}`"))),
    }
}

fn named_or_positional(tokens: &[&str], ints: &[usize], key: &str) -> Result<usize> {
    if let Some(pos) = tokens.iter().position(|t| *t == key) {
        if let Some(v) = tokens.get(pos + 1).and_then(|t| t.parse::<usize>().ok()) {
            return Ok(v);
        }
    }
    ints.first().copied().ok_or_else(|| {
        LabError::Grammar(format!("missing `{key}` parameter"))
    })
}
