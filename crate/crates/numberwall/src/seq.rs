//! Sequence families: paper-folding sequences, seeded random sequences,
//! literals, reversal, and the sequence file format.

use std::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::rng::{self, Rng};
use crate::Result;

/// A finite 1-indexed sequence of field elements, identified with the
/// truncated Laurent series `Θ(t) = Σ s_i t^{-i}`.
#[derive(Debug, Clone)]
pub struct Seq {
    field: Field,
    codes: Vec<u16>,
}

impl PartialEq for Seq {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.codes == other.codes
    }
}
impl Eq for Seq {}

impl Seq {
    pub fn from_codes(field: Field, codes: Vec<u16>) -> Result<Self> {
        for &c in &codes {
            if c as u32 >= field.order() {
                return Err(Error::CodeOutOfRange {
                    code: c as u32,
                    order: field.order(),
                });
            }
        }
        Ok(Seq { field, codes })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// 1-indexed access, `1 <= i <= len`.
    pub fn at(&self, i: usize) -> u16 {
        self.codes[i - 1]
    }

    pub fn codes(&self) -> &[u16] {
        &self.codes
    }

    /// The reflection `S' = (s_r, ..., s_1)`.
    pub fn reverse(&self) -> Seq {
        let mut codes = self.codes.clone();
        codes.reverse();
        Seq {
            field: self.field.clone(),
            codes,
        }
    }

    /// Copy with one element appended.
    pub fn appended(&self, code: u16) -> Seq {
        let mut codes = self.codes.clone();
        codes.push(code);
        Seq {
            field: self.field.clone(),
            codes,
        }
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.codes.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `ν_2(i)`: exponent of 2 in `i >= 1`.
pub fn nu2(i: u64) -> u32 {
    debug_assert!(i >= 1);
    i.trailing_zeros()
}

/// The n-th-level paper-folding symbol at index `i >= 1`: reduce the odd
/// part of `i` mod `2^{n+1}` (an odd residue), subtract one and halve.
/// Symbols lie in `[0, 2^n)`.
pub fn paper_folding(level: u32, i: u64) -> u64 {
    assert!(i >= 1, "paper-folding index starts at 1");
    assert!(level <= 32, "paper-folding level out of desk-scale range");
    let odd = i >> nu2(i);
    let rep = odd & ((1u64 << (level + 1)) - 1);
    assert!(rep % 2 == 1, "odd part reduced mod 2^(n+1) must stay odd");
    (rep - 1) / 2
}

/// How integer symbols become field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    /// Symbol mod p (default for prime fields).
    ModChar,
    /// Symbol taken as an element code verbatim (default for extensions);
    /// symbols at or above q do not embed.
    CodeIdentity,
    /// Explicit symbol -> code table.
    Table(Vec<u16>),
}

/// Root-of-unity embedding for level-`n` paper-folding symbols:
/// `v -> z^v` for `z` of multiplicative order `2^n`, so every entry is
/// nonzero. Level 1 is the `(-1)^v` sign sequence behind the known t-LC
/// counterexample over characteristic 3; level 2 needs a fourth root of
/// unity, which exists iff `4 | q - 1`.
pub fn signed_embedding(field: &Field, level: u32) -> Result<Embedding> {
    let q = field.order();
    let order = 1u64 << level;
    if (q as u64 - 1) % order != 0 {
        return Err(Error::EmbeddingIncomplete { symbol: order });
    }
    let z = field
        .codes()
        .find(|&c| {
            if c == 0 {
                return false;
            }
            let full = field.pow(c, order as i64).unwrap_or(0) == 1;
            let half = order == 1 || field.pow(c, (order / 2) as i64).unwrap_or(1) != 1;
            full && half
        })
        .ok_or(Error::EmbeddingIncomplete { symbol: order })?;
    let table: Vec<u16> = (0..order)
        .map(|v| field.pow(z, v as i64).expect("nonzero base"))
        .collect();
    Ok(Embedding::Table(table))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeKind {
    PaperFolding { level: u32 },
    Random { seed: u64 },
    Literal { symbols: Vec<u64> },
}

/// A reproducible description of a sequence.
#[derive(Debug, Clone)]
pub struct SeqRecipe {
    pub kind: RecipeKind,
    pub length: usize,
    pub field: Field,
    pub embedding: Embedding,
}

impl SeqRecipe {
    pub fn new(kind: RecipeKind, length: usize, field: Field) -> Self {
        let embedding = if field.extension_degree() == 1 {
            Embedding::ModChar
        } else {
            Embedding::CodeIdentity
        };
        SeqRecipe {
            kind,
            length,
            field,
            embedding,
        }
    }

    fn embed(&self, symbol: u64) -> Result<u16> {
        let q = self.field.order() as u64;
        match &self.embedding {
            Embedding::ModChar => Ok((symbol % self.field.characteristic() as u64) as u16),
            Embedding::CodeIdentity => {
                if symbol >= q {
                    Err(Error::EmbeddingIncomplete { symbol })
                } else {
                    Ok(symbol as u16)
                }
            }
            Embedding::Table(t) => match t.get(symbol as usize) {
                Some(&c) if (c as u64) < q => Ok(c),
                _ => Err(Error::EmbeddingIncomplete { symbol }),
            },
        }
    }

    pub fn materialize(&self) -> Result<Seq> {
        let codes: Vec<u16> = match &self.kind {
            RecipeKind::PaperFolding { level } => (1..=self.length as u64)
                .map(|i| self.embed(paper_folding(*level, i)))
                .collect::<Result<_>>()?,
            RecipeKind::Random { seed } => {
                let mut rng = Rng::new(*seed);
                (0..self.length)
                    .map(|_| rng.code(self.field.order()))
                    .collect()
            }
            RecipeKind::Literal { symbols } => {
                if symbols.len() < self.length {
                    return Err(Error::Parse(format!(
                        "literal sequence has {} entries, recipe wants {}",
                        symbols.len(),
                        self.length
                    )));
                }
                symbols[..self.length]
                    .iter()
                    .map(|&s| self.embed(s))
                    .collect::<Result<_>>()?
            }
        };
        Seq::from_codes(self.field.clone(), codes)
    }

    /// Metadata string recorded in reports so runs are reproducible.
    pub fn describe(&self) -> String {
        match &self.kind {
            RecipeKind::PaperFolding { level } => {
                format!("pf:{}:{}", level, self.length)
            }
            RecipeKind::Random { seed } => {
                format!("random:{}:{} ({})", seed, self.length, rng::ALGORITHM)
            }
            RecipeKind::Literal { .. } => format!("literal:{}", self.length),
        }
    }
}

/// Parse a comma/whitespace separated symbol list.
pub fn parse_symbols(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let v: u64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad sequence entry {tok:?}")))?;
        out.push(v);
    }
    Ok(out)
}

/// Parse a sequence file: one integer code per whitespace/comma separated
/// token; an optional `# field: p^k/mod` header names the field.
pub fn parse_seq_file(text: &str) -> Result<(Option<String>, Vec<u64>)> {
    let mut field = None;
    let mut body = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(spec) = rest.strip_prefix("field:") {
                field = Some(spec.trim().to_string());
            }
            continue;
        }
        body.push_str(line);
        body.push(' ');
    }
    Ok((field, parse_symbols(&body)?))
}
