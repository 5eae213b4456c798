//! The defining relations of the virtual, welded and welded-star braid
//! groups, realized as explicit word rewrites.
//!
//! A [`RelationRewrite`] names a relation instance, a letter offset and a
//! direction. Besides the literal relation equations, each commuting family
//! and each three-letter family carries its formal-inverse variant (obtained
//! by inverting both sides); those variants are group consequences of the
//! defining relations and keep rewriting usable on words containing
//! `σ_i^{-1}`.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::word::{BraidWord, Generator, Sign};

/// Which group the rewriting happens in. `Wb` adds the welded relation
/// `τ_i σ_{i+1} σ_i = σ_{i+1} σ_i τ_{i+1}`, `WbStar` instead adds
/// `τ_i σ_{i+1}^{-1} σ_i^{-1} = σ_{i+1}^{-1} σ_i^{-1} τ_{i+1}`. The two are
/// never combined.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupFlavor {
    Vb,
    Wb,
    WbStar,
}

impl fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFlavor::Vb => "vb",
            GroupFlavor::Wb => "wb",
            GroupFlavor::WbStar => "wb-star",
        })
    }
}

/// The three cancelling two-letter shapes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TrivialPair {
    /// `σ_i σ_i^{-1}`
    SigmaSigmaInv(usize),
    /// `σ_i^{-1} σ_i`
    SigmaInvSigma(usize),
    /// `τ_i τ_i`
    TauTau(usize),
}

impl TrivialPair {
    pub fn index(self) -> usize {
        match self {
            TrivialPair::SigmaSigmaInv(i)
            | TrivialPair::SigmaInvSigma(i)
            | TrivialPair::TauTau(i) => i,
        }
    }

    fn letters(self) -> [Generator; 2] {
        match self {
            TrivialPair::SigmaSigmaInv(i) => [Generator::Sigma(i), Generator::SigmaInv(i)],
            TrivialPair::SigmaInvSigma(i) => [Generator::SigmaInv(i), Generator::Sigma(i)],
            TrivialPair::TauTau(i) => [Generator::Tau(i), Generator::Tau(i)],
        }
    }

    /// The pair that cancels `a b`, if these two letters cancel.
    pub fn of(a: Generator, b: Generator) -> Option<TrivialPair> {
        match (a, b) {
            (Generator::Sigma(i), Generator::SigmaInv(j)) if i == j => {
                Some(TrivialPair::SigmaSigmaInv(i))
            }
            (Generator::SigmaInv(i), Generator::Sigma(j)) if i == j => {
                Some(TrivialPair::SigmaInvSigma(i))
            }
            (Generator::Tau(i), Generator::Tau(j)) if i == j => Some(TrivialPair::TauTau(i)),
            _ => None,
        }
    }
}

/// One relation family instance. The left/right sides are the literal words
/// of the equation; see [`RelationId::sides`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RelationId {
    /// `σ_i σ_i^{-1} = 1`, `σ_i^{-1} σ_i = 1`, `τ_i² = 1`
    Trivial(TrivialPair),
    /// `σ_i^{ε} σ_j^{δ} = σ_j^{δ} σ_i^{ε}` for `|i−j| > 1`, left side as written
    BraidCommute { i: usize, si: Sign, j: usize, sj: Sign },
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`; `inverted` flips every letter
    BraidYangBaxter { i: usize, inverted: bool },
    /// `τ_i τ_j = τ_j τ_i` for `|i−j| > 1`
    TauCommute { i: usize, j: usize },
    /// `τ_i τ_{i+1} τ_i = τ_{i+1} τ_i τ_{i+1}`
    TauYangBaxter { i: usize },
    /// `σ_i^{ε} τ_j = τ_j σ_i^{ε}` for `|i−j| > 1`; `sigma_first` is the
    /// written order of the left side
    MixedCommute { i: usize, s: Sign, j: usize, sigma_first: bool },
    /// `σ_i^{ε} τ_{i+1} τ_i = τ_{i+1} τ_i σ_{i+1}^{ε}`
    MixedDetour { i: usize, s: Sign },
    /// `τ_i σ_{i+1} σ_i = σ_{i+1} σ_i τ_{i+1}` (welded groups only);
    /// `inverted`: `σ_i^{-1} σ_{i+1}^{-1} τ_i = τ_{i+1} σ_i^{-1} σ_{i+1}^{-1}`
    Welded { i: usize, inverted: bool },
    /// `τ_i σ_{i+1}^{-1} σ_i^{-1} = σ_{i+1}^{-1} σ_i^{-1} τ_{i+1}` (star flavor);
    /// `inverted`: `σ_i σ_{i+1} τ_i = τ_{i+1} σ_i σ_{i+1}`
    WeldedStar { i: usize, inverted: bool },
}

fn sig(i: usize, s: Sign) -> Generator {
    match s {
        Sign::Plus => Generator::Sigma(i),
        Sign::Minus => Generator::SigmaInv(i),
    }
}

impl RelationId {
    /// The two sides of the relation equation, as words.
    pub fn sides(&self) -> (Vec<Generator>, Vec<Generator>) {
        use Generator::*;
        match *self {
            RelationId::Trivial(pair) => (pair.letters().to_vec(), Vec::new()),
            RelationId::BraidCommute { i, si, j, sj } => {
                (vec![sig(i, si), sig(j, sj)], vec![sig(j, sj), sig(i, si)])
            }
            RelationId::BraidYangBaxter { i, inverted } => {
                let s = if inverted { Sign::Minus } else { Sign::Plus };
                (
                    vec![sig(i, s), sig(i + 1, s), sig(i, s)],
                    vec![sig(i + 1, s), sig(i, s), sig(i + 1, s)],
                )
            }
            RelationId::TauCommute { i, j } => (vec![Tau(i), Tau(j)], vec![Tau(j), Tau(i)]),
            RelationId::TauYangBaxter { i } => (
                vec![Tau(i), Tau(i + 1), Tau(i)],
                vec![Tau(i + 1), Tau(i), Tau(i + 1)],
            ),
            RelationId::MixedCommute { i, s, j, sigma_first } => {
                if sigma_first {
                    (vec![sig(i, s), Tau(j)], vec![Tau(j), sig(i, s)])
                } else {
                    (vec![Tau(j), sig(i, s)], vec![sig(i, s), Tau(j)])
                }
            }
            RelationId::MixedDetour { i, s } => (
                vec![sig(i, s), Tau(i + 1), Tau(i)],
                vec![Tau(i + 1), Tau(i), sig(i + 1, s)],
            ),
            RelationId::Welded { i, inverted } => {
                if inverted {
                    (
                        vec![SigmaInv(i), SigmaInv(i + 1), Tau(i)],
                        vec![Tau(i + 1), SigmaInv(i), SigmaInv(i + 1)],
                    )
                } else {
                    (
                        vec![Tau(i), Sigma(i + 1), Sigma(i)],
                        vec![Sigma(i + 1), Sigma(i), Tau(i + 1)],
                    )
                }
            }
            RelationId::WeldedStar { i, inverted } => {
                if inverted {
                    (
                        vec![Sigma(i), Sigma(i + 1), Tau(i)],
                        vec![Tau(i + 1), Sigma(i), Sigma(i + 1)],
                    )
                } else {
                    (
                        vec![Tau(i), SigmaInv(i + 1), SigmaInv(i)],
                        vec![SigmaInv(i + 1), SigmaInv(i), Tau(i + 1)],
                    )
                }
            }
        }
    }

    /// Structural validity of the instance (index ranges, distance
    /// constraints). Checked again by [`apply_rewrite`] so that hand-built
    /// rewrites cannot smuggle in non-relations.
    pub fn is_valid(&self) -> bool {
        match *self {
            RelationId::Trivial(pair) => pair.index() >= 1,
            RelationId::BraidCommute { i, j, .. } => {
                i >= 1 && j >= 1 && i.abs_diff(j) > 1
            }
            RelationId::MixedCommute { i, j, .. } => i >= 1 && j >= 1 && i.abs_diff(j) > 1,
            RelationId::TauCommute { i, j } => i >= 1 && j >= 1 && i.abs_diff(j) > 1,
            RelationId::BraidYangBaxter { i, .. }
            | RelationId::TauYangBaxter { i }
            | RelationId::MixedDetour { i, .. }
            | RelationId::Welded { i, .. }
            | RelationId::WeldedStar { i, .. } => i >= 1,
        }
    }

    /// Whether the relation belongs to the given group flavor.
    pub fn allowed_in(&self, flavor: GroupFlavor) -> bool {
        match self {
            RelationId::Welded { .. } => flavor == GroupFlavor::Wb,
            RelationId::WeldedStar { .. } => flavor == GroupFlavor::WbStar,
            _ => true,
        }
    }

    fn max_index(&self) -> usize {
        let (lhs, rhs) = self.sides();
        lhs.iter()
            .chain(rhs.iter())
            .map(|g| g.index())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "ltr",
            Direction::RightToLeft => "rtl",
        })
    }
}

/// A relation instance anchored at a letter offset, applied left-to-right
/// (replace the left side by the right side) or right-to-left.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RelationRewrite {
    pub position: usize,
    pub id: RelationId,
    pub direction: Direction,
}

impl RelationRewrite {
    pub fn new(id: RelationId, position: usize, direction: Direction) -> Self {
        RelationRewrite { position, id, direction }
    }

    /// The same rewrite site applied in the opposite direction; applying a
    /// rewrite and then its flip restores the original word.
    pub fn flipped(&self) -> RelationRewrite {
        RelationRewrite {
            position: self.position,
            id: self.id,
            direction: self.direction.flip(),
        }
    }

    /// (expected subword, replacement) at `position` for this direction.
    pub fn pattern(&self) -> (Vec<Generator>, Vec<Generator>) {
        let (lhs, rhs) = self.id.sides();
        match self.direction {
            Direction::LeftToRight => (lhs, rhs),
            Direction::RightToLeft => (rhs, lhs),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RewriteError {
    #[error("rewrite does not match at position {position}: expected `{expected}`, found `{found}`")]
    Mismatch {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("rewrite position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("relation instance is structurally invalid: {0}")]
    InvalidRelation(String),
    #[error("relation letter index exceeds word degree {degree}")]
    IndexOutOfRange { degree: usize },
}

fn letters_to_string(letters: &[Generator]) -> String {
    if letters.is_empty() {
        return "(empty)".to_string();
    }
    letters
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Replaces the matched side of the relation by the other side. The word
/// degree and the underlying permutation are unchanged.
pub fn apply_rewrite(word: &BraidWord, rewrite: &RelationRewrite) -> Result<BraidWord, RewriteError> {
    if !rewrite.id.is_valid() {
        return Err(RewriteError::InvalidRelation(format!("{}", rewrite.id)));
    }
    if rewrite.id.max_index() >= word.degree() {
        return Err(RewriteError::IndexOutOfRange {
            degree: word.degree(),
        });
    }
    let (expected, replacement) = rewrite.pattern();
    let letters = word.letters();
    let end = rewrite.position.checked_add(expected.len());
    let in_range = match end {
        Some(end) => end <= letters.len() && rewrite.position <= letters.len(),
        None => false,
    };
    if !in_range {
        return Err(RewriteError::PositionOutOfRange {
            position: rewrite.position,
            len: letters.len(),
        });
    }
    let window = &letters[rewrite.position..rewrite.position + expected.len()];
    if window != expected.as_slice() {
        return Err(RewriteError::Mismatch {
            position: rewrite.position,
            expected: letters_to_string(&expected),
            found: letters_to_string(window),
        });
    }
    let mut out = Vec::with_capacity(letters.len() + replacement.len() - expected.len());
    out.extend_from_slice(&letters[..rewrite.position]);
    out.extend_from_slice(&replacement);
    out.extend_from_slice(&letters[rewrite.position + expected.len()..]);
    Ok(word.with_letters(out))
}

/// Enumerates every rewrite whose matched side occurs in `word`, including
/// the insertion sites of the trivial relations (right-to-left at every
/// offset). The list is sorted by position, then relation, then direction.
pub fn applicable_rewrites(word: &BraidWord, flavor: GroupFlavor) -> Vec<RelationRewrite> {
    let letters = word.letters();
    let m = word.degree();
    let mut out = Vec::new();

    let mut push = |id: RelationId, pos: usize, dir: Direction| {
        out.push(RelationRewrite::new(id, pos, dir));
    };

    for pos in 0..letters.len() {
        // two-letter windows
        if pos + 2 <= letters.len() {
            let (a, b) = (letters[pos], letters[pos + 1]);
            if let Some(pair) = TrivialPair::of(a, b) {
                push(RelationId::Trivial(pair), pos, Direction::LeftToRight);
            }
            if a.index().abs_diff(b.index()) > 1 {
                match (a.sign(), b.sign()) {
                    (Some(si), Some(sj)) => push(
                        RelationId::BraidCommute { i: a.index(), si, j: b.index(), sj },
                        pos,
                        Direction::LeftToRight,
                    ),
                    (None, None) => push(
                        RelationId::TauCommute { i: a.index(), j: b.index() },
                        pos,
                        Direction::LeftToRight,
                    ),
                    (Some(s), None) => push(
                        RelationId::MixedCommute {
                            i: a.index(),
                            s,
                            j: b.index(),
                            sigma_first: true,
                        },
                        pos,
                        Direction::LeftToRight,
                    ),
                    (None, Some(s)) => push(
                        RelationId::MixedCommute {
                            i: b.index(),
                            s,
                            j: a.index(),
                            sigma_first: false,
                        },
                        pos,
                        Direction::LeftToRight,
                    ),
                }
            }
        }
        // three-letter windows
        if pos + 3 <= letters.len() {
            let window = &letters[pos..pos + 3];
            for i in 1..m {
                for id in three_letter_instances(i, flavor) {
                    let (lhs, rhs) = id.sides();
                    if window == lhs.as_slice() {
                        push(id, pos, Direction::LeftToRight);
                    }
                    if window == rhs.as_slice() {
                        push(id, pos, Direction::RightToLeft);
                    }
                }
            }
        }
    }

    // insertion sites for the trivial relations
    for pos in 0..=letters.len() {
        for i in 1..m {
            for pair in [
                TrivialPair::SigmaSigmaInv(i),
                TrivialPair::SigmaInvSigma(i),
                TrivialPair::TauTau(i),
            ] {
                push(RelationId::Trivial(pair), pos, Direction::RightToLeft);
            }
        }
    }

    out.sort();
    out
}

fn three_letter_instances(i: usize, flavor: GroupFlavor) -> Vec<RelationId> {
    let mut ids = vec![
        RelationId::BraidYangBaxter { i, inverted: false },
        RelationId::BraidYangBaxter { i, inverted: true },
        RelationId::TauYangBaxter { i },
        RelationId::MixedDetour { i, s: Sign::Plus },
        RelationId::MixedDetour { i, s: Sign::Minus },
    ];
    match flavor {
        GroupFlavor::Vb => {}
        GroupFlavor::Wb => {
            ids.push(RelationId::Welded { i, inverted: false });
            ids.push(RelationId::Welded { i, inverted: true });
        }
        GroupFlavor::WbStar => {
            ids.push(RelationId::WeldedStar { i, inverted: false });
            ids.push(RelationId::WeldedStar { i, inverted: true });
        }
    }
    ids
}

// --- text form -------------------------------------------------------------
//
// `trivial-sS i=2`, `braid-comm i=1+ j=3-`, `braid-yb i=1`, `braid-yb-inv i=1`,
// `tau-comm i=1 j=3`, `tau-yb i=1`, `mixed-comm s=2+ t=4` (written order),
// `mixed-detour i=1-`, `welded i=1`, `welded-inv i=1`, `welded-star i=1`,
// `welded-star-inv i=1`; a rewrite appends ` @<pos> <ltr|rtl>`.

fn fmt_signed(i: usize, s: Sign) -> String {
    format!("{i}{s}")
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationId::Trivial(TrivialPair::SigmaSigmaInv(i)) => write!(f, "trivial-sS i={i}"),
            RelationId::Trivial(TrivialPair::SigmaInvSigma(i)) => write!(f, "trivial-Ss i={i}"),
            RelationId::Trivial(TrivialPair::TauTau(i)) => write!(f, "trivial-tt i={i}"),
            RelationId::BraidCommute { i, si, j, sj } => {
                write!(f, "braid-comm i={} j={}", fmt_signed(i, si), fmt_signed(j, sj))
            }
            RelationId::BraidYangBaxter { i, inverted: false } => write!(f, "braid-yb i={i}"),
            RelationId::BraidYangBaxter { i, inverted: true } => write!(f, "braid-yb-inv i={i}"),
            RelationId::TauCommute { i, j } => write!(f, "tau-comm i={i} j={j}"),
            RelationId::TauYangBaxter { i } => write!(f, "tau-yb i={i}"),
            RelationId::MixedCommute { i, s, j, sigma_first: true } => {
                write!(f, "mixed-comm s={} t={}", fmt_signed(i, s), j)
            }
            RelationId::MixedCommute { i, s, j, sigma_first: false } => {
                write!(f, "mixed-comm t={} s={}", j, fmt_signed(i, s))
            }
            RelationId::MixedDetour { i, s } => write!(f, "mixed-detour i={}", fmt_signed(i, s)),
            RelationId::Welded { i, inverted: false } => write!(f, "welded i={i}"),
            RelationId::Welded { i, inverted: true } => write!(f, "welded-inv i={i}"),
            RelationId::WeldedStar { i, inverted: false } => write!(f, "welded-star i={i}"),
            RelationId::WeldedStar { i, inverted: true } => write!(f, "welded-star-inv i={i}"),
        }
    }
}

impl fmt::Display for RelationRewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{} {}", self.id, self.position, self.direction)
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("malformed rewrite `{0}`")]
pub struct ParseRewriteError(pub String);

fn parse_index(arg: &str, key: &str) -> Option<usize> {
    let value = arg.strip_prefix(key)?.strip_prefix('=')?;
    value.parse().ok().filter(|&i| i >= 1)
}

fn parse_signed(arg: &str, key: &str) -> Option<(usize, Sign)> {
    let value = arg.strip_prefix(key)?.strip_prefix('=')?;
    let (digits, sign) = value.split_at(value.len().checked_sub(1)?);
    let sign = match sign {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        _ => return None,
    };
    let i: usize = digits.parse().ok()?;
    (i >= 1).then_some((i, sign))
}

impl FromStr for RelationRewrite {
    type Err = ParseRewriteError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseRewriteError(text.trim().to_string());
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(err());
        }
        let direction = match toks[toks.len() - 1] {
            "ltr" => Direction::LeftToRight,
            "rtl" => Direction::RightToLeft,
            _ => return Err(err()),
        };
        let position: usize = toks[toks.len() - 2]
            .strip_prefix('@')
            .and_then(|p| p.parse().ok())
            .ok_or_else(err)?;
        let args = &toks[1..toks.len() - 2];
        let one = |key: &str| -> Option<usize> {
            match args {
                [a] => parse_index(a, key),
                _ => None,
            }
        };
        let id = match toks[0] {
            "trivial-sS" => RelationId::Trivial(TrivialPair::SigmaSigmaInv(
                one("i").ok_or_else(err)?,
            )),
            "trivial-Ss" => RelationId::Trivial(TrivialPair::SigmaInvSigma(
                one("i").ok_or_else(err)?,
            )),
            "trivial-tt" => RelationId::Trivial(TrivialPair::TauTau(one("i").ok_or_else(err)?)),
            "braid-comm" => match args {
                [a, b] => {
                    let (i, si) = parse_signed(a, "i").ok_or_else(err)?;
                    let (j, sj) = parse_signed(b, "j").ok_or_else(err)?;
                    RelationId::BraidCommute { i, si, j, sj }
                }
                _ => return Err(err()),
            },
            "braid-yb" => RelationId::BraidYangBaxter { i: one("i").ok_or_else(err)?, inverted: false },
            "braid-yb-inv" => RelationId::BraidYangBaxter { i: one("i").ok_or_else(err)?, inverted: true },
            "tau-comm" => match args {
                [a, b] => RelationId::TauCommute {
                    i: parse_index(a, "i").ok_or_else(err)?,
                    j: parse_index(b, "j").ok_or_else(err)?,
                },
                _ => return Err(err()),
            },
            "tau-yb" => RelationId::TauYangBaxter { i: one("i").ok_or_else(err)? },
            "mixed-comm" => match args {
                [a, b] => {
                    if let (Some((i, s)), Some(j)) = (parse_signed(a, "s"), parse_index(b, "t")) {
                        RelationId::MixedCommute { i, s, j, sigma_first: true }
                    } else if let (Some(j), Some((i, s))) =
                        (parse_index(a, "t"), parse_signed(b, "s"))
                    {
                        RelationId::MixedCommute { i, s, j, sigma_first: false }
                    } else {
                        return Err(err());
                    }
                }
                _ => return Err(err()),
            },
            "mixed-detour" => match args {
                [a] => {
                    let (i, s) = parse_signed(a, "i").ok_or_else(err)?;
                    RelationId::MixedDetour { i, s }
                }
                _ => return Err(err()),
            },
            "welded" => RelationId::Welded { i: one("i").ok_or_else(err)?, inverted: false },
            "welded-inv" => RelationId::Welded { i: one("i").ok_or_else(err)?, inverted: true },
            "welded-star" => RelationId::WeldedStar { i: one("i").ok_or_else(err)?, inverted: false },
            "welded-star-inv" => RelationId::WeldedStar { i: one("i").ok_or_else(err)?, inverted: true },
            _ => return Err(err()),
        };
        if !id.is_valid() {
            return Err(err());
        }
        Ok(RelationRewrite::new(id, position, direction))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    #[test]
    fn yang_baxter_site_found() {
        let word = w("degree 3; s1 s2 s1");
        let rewrites = applicable_rewrites(&word, GroupFlavor::Vb);
        assert!(rewrites.contains(&RelationRewrite::new(
            RelationId::BraidYangBaxter { i: 1, inverted: false },
            0,
            Direction::LeftToRight,
        )));
    }

    #[test]
    fn welded_site_gated_by_flavor() {
        let word = w("degree 3; t1 s2 s1");
        let welded = RelationRewrite::new(
            RelationId::Welded { i: 1, inverted: false },
            0,
            Direction::LeftToRight,
        );
        assert!(applicable_rewrites(&word, GroupFlavor::Wb).contains(&welded));
        assert!(!applicable_rewrites(&word, GroupFlavor::Vb).contains(&welded));
        let got = apply_rewrite(&word, &welded).unwrap();
        assert_eq!(got, w("degree 3; s2 s1 t2"));
    }

    #[test]
    fn empty_word_offers_only_insertions() {
        let word = BraidWord::empty(3);
        let rewrites = applicable_rewrites(&word, GroupFlavor::Vb);
        assert!(!rewrites.is_empty());
        assert!(rewrites.iter().all(|r| {
            matches!(r.id, RelationId::Trivial(_)) && r.direction == Direction::RightToLeft
        }));
    }

    #[test]
    fn apply_yang_baxter() {
        let word = w("degree 3; s1 s2 s1");
        let r = RelationRewrite::new(
            RelationId::BraidYangBaxter { i: 1, inverted: false },
            0,
            Direction::LeftToRight,
        );
        assert_eq!(apply_rewrite(&word, &r).unwrap(), w("degree 3; s2 s1 s2"));
    }

    #[test]
    fn apply_mixed_detour() {
        let word = w("degree 3; s1 t2 t1");
        let r = RelationRewrite::new(
            RelationId::MixedDetour { i: 1, s: Sign::Plus },
            0,
            Direction::LeftToRight,
        );
        assert_eq!(apply_rewrite(&word, &r).unwrap(), w("degree 3; t2 t1 s2"));
    }

    #[test]
    fn apply_then_flip_is_identity() {
        let word = w("degree 4; s1 t3 s2 s1 S3");
        for r in applicable_rewrites(&word, GroupFlavor::Vb) {
            let forward = apply_rewrite(&word, &r).unwrap();
            let back = apply_rewrite(&forward, &r.flipped()).unwrap();
            assert_eq!(back, word, "rewrite {r} is not involutive");
        }
    }

    #[test]
    fn rewrites_preserve_permutation_and_writhe() {
        for text in [
            "degree 3; s1 s2 s1 t1",
            "degree 4; t1 s2 s1 t3 S2 s3",
            "degree 4; S1 S2 S1 t3 t1",
            "degree 3; t1 s2 s1",
        ] {
            let word = w(text);
            for flavor in [GroupFlavor::Vb, GroupFlavor::Wb, GroupFlavor::WbStar] {
                for r in applicable_rewrites(&word, flavor) {
                    let next = apply_rewrite(&word, &r).unwrap();
                    assert_eq!(next.permutation(), word.permutation(), "{r}");
                    assert_eq!(next.writhe(), word.writhe(), "{r}");
                    assert_eq!(next.degree(), word.degree());
                }
            }
        }
    }

    #[test]
    fn mismatch_reported() {
        let word = w("degree 3; s1 s2 s1");
        let r = RelationRewrite::new(
            RelationId::TauYangBaxter { i: 1 },
            0,
            Direction::LeftToRight,
        );
        assert!(matches!(
            apply_rewrite(&word, &r),
            Err(RewriteError::Mismatch { .. })
        ));
        let off_the_end = RelationRewrite::new(
            RelationId::TauYangBaxter { i: 1 },
            1,
            Direction::LeftToRight,
        );
        assert!(matches!(
            apply_rewrite(&word, &off_the_end),
            Err(RewriteError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn invalid_commute_rejected() {
        // adjacent indices do not commute
        let word = w("degree 3; s1 s2");
        let r = RelationRewrite::new(
            RelationId::BraidCommute { i: 1, si: Sign::Plus, j: 2, sj: Sign::Plus },
            0,
            Direction::LeftToRight,
        );
        assert!(matches!(
            apply_rewrite(&word, &r),
            Err(RewriteError::InvalidRelation(_))
        ));
    }

    #[test]
    fn insertion_respects_degree() {
        let word = BraidWord::empty(2);
        let r = RelationRewrite::new(
            RelationId::Trivial(TrivialPair::TauTau(4)),
            0,
            Direction::RightToLeft,
        );
        assert!(matches!(
            apply_rewrite(&word, &r),
            Err(RewriteError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let word = w("degree 4; s1 t3 s1 S1");
        let a = applicable_rewrites(&word, GroupFlavor::Vb);
        let b = applicable_rewrites(&word, GroupFlavor::Vb);
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(a, sorted);
    }

    #[test]
    fn rewrite_text_round_trip() {
        let word = w("degree 4; s1 t3 s2 s1 S3 t1 t3");
        for flavor in [GroupFlavor::Vb, GroupFlavor::Wb, GroupFlavor::WbStar] {
            for r in applicable_rewrites(&word, flavor) {
                let parsed: RelationRewrite = r.to_string().parse().unwrap();
                assert_eq!(parsed, r, "text form of {r}");
            }
        }
    }
}
