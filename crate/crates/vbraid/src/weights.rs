//! Crossing weight tables for the state sum.
//!
//! A table fixes the label count `N` (labels run over `1..=N`) and, for each
//! crossing sign, the admissible label configurations around a crossing
//! together with their weight in `Z[q, q^{-1}]` and a smoothing tag. Corners
//! follow the Gauss-data convention: labels `(l1, l2)` sit on the incoming
//! corners 1 and 2, `(l3, l4)` on the outgoing corners 3 and 4.
//!
//! The built-in table for given `(N, α)`:
//!
//! | sign | in      | out     | weight      | smoothing |
//! |------|---------|---------|-------------|-----------|
//! | `+`  | `(i,i)` | `(i,i)` | `-q^-1`     | parallel  |
//! | `+`  | `(i,j)` | `(j,i)` | `1`         | swap      |
//! | `+`  | `(i,j)`, `i>j` | `(i,j)` | `q - q^-1` | parallel |
//! | `-`  | `(i,i)` | `(i,i)` | `-q`        | parallel  |
//! | `-`  | `(i,j)` | `(j,i)` | `1`         | swap      |
//! | `-`  | `(i,j)`, `i<j` | `(i,j)` | `q^-1 - q` | parallel |
//!
//! These cell values are pinned by the golden evaluations in the acceptance
//! suite; changing any of them breaks exact reproduction of the published
//! values. The `alpha` parameter is carried as table metadata and threads
//! through the file format, but the built-in cells do not depend on it: no
//! monomial factor `q^α` can be attached to any cell class without breaking
//! move invariance, so only externally supplied tables can make use of it.
//!
//! File format:
//!
//! ```text
//! N 2
//! alpha 0
//! w + 1 1 -> 1 1 : -q^-1 : parallel
//! w + 1 2 -> 2 1 : 1 : swap
//! ...
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::word::Sign;

/// How a crossing is resolved in the smoothed diagram: `Swap` joins corners
/// 1–4 and 2–3 (the strands still cross), `Parallel` joins 1–3 and 2–4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Smoothing {
    Swap,
    Parallel,
}

impl fmt::Display for Smoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothing::Swap => "swap",
            Smoothing::Parallel => "parallel",
        })
    }
}

/// One admissible configuration: crossing sign, entry labels, exit labels,
/// weight and smoothing tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightEntry {
    pub sign: Sign,
    pub labels_in: (u32, u32),
    pub labels_out: (u32, u32),
    pub weight: LaurentPoly,
    pub smoothing: Smoothing,
}

type Key = (Sign, u32, u32, u32, u32);

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WeightError {
    #[error("N must be at least 1")]
    ZeroN,
    #[error("label {0} out of range 1..={1}")]
    LabelOutOfRange(u32, u32),
    #[error("duplicate entry for sign {0}, labels {1} {2} -> {3} {4}")]
    DuplicateEntry(Sign, u32, u32, u32, u32),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseWeightError {
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: String },
    #[error("missing `N <n>` header")]
    MissingN,
    #[error(transparent)]
    Table(#[from] WeightError),
}

/// The full table for a pair `(N, α)`. Entries are keyed uniquely by
/// `(sign, entry labels, exit labels)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightTable {
    n: u32,
    alpha: i64,
    entries: BTreeMap<Key, (LaurentPoly, Smoothing)>,
}

impl WeightTable {
    pub fn empty(n: u32, alpha: i64) -> Result<Self, WeightError> {
        if n == 0 {
            return Err(WeightError::ZeroN);
        }
        Ok(WeightTable {
            n,
            alpha,
            entries: BTreeMap::new(),
        })
    }

    /// The built-in table described in the module docs.
    pub fn standard(n: u32, alpha: i64) -> Result<Self, WeightError> {
        let mut table = WeightTable::empty(n, alpha)?;
        let q = |c: i64, e: i64| LaurentPoly::monomial(c, e);
        for i in 1..=n {
            table.insert(WeightEntry {
                sign: Sign::Plus,
                labels_in: (i, i),
                labels_out: (i, i),
                weight: q(-1, -1),
                smoothing: Smoothing::Parallel,
            })?;
            table.insert(WeightEntry {
                sign: Sign::Minus,
                labels_in: (i, i),
                labels_out: (i, i),
                weight: q(-1, 1),
                smoothing: Smoothing::Parallel,
            })?;
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    table.insert(WeightEntry {
                        sign,
                        labels_in: (i, j),
                        labels_out: (j, i),
                        weight: LaurentPoly::one(),
                        smoothing: Smoothing::Swap,
                    })?;
                }
                if i > j {
                    table.insert(WeightEntry {
                        sign: Sign::Plus,
                        labels_in: (i, j),
                        labels_out: (i, j),
                        weight: q(1, 1).add(&q(-1, -1)),
                        smoothing: Smoothing::Parallel,
                    })?;
                } else {
                    table.insert(WeightEntry {
                        sign: Sign::Minus,
                        labels_in: (i, j),
                        labels_out: (i, j),
                        weight: q(1, -1).add(&q(-1, 1)),
                        smoothing: Smoothing::Parallel,
                    })?;
                }
            }
        }
        Ok(table)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, entry: WeightEntry) -> Result<(), WeightError> {
        let (l1, l2) = entry.labels_in;
        let (l3, l4) = entry.labels_out;
        for l in [l1, l2, l3, l4] {
            if l == 0 || l > self.n {
                return Err(WeightError::LabelOutOfRange(l, self.n));
            }
        }
        let key = (entry.sign, l1, l2, l3, l4);
        if self.entries.contains_key(&key) {
            return Err(WeightError::DuplicateEntry(entry.sign, l1, l2, l3, l4));
        }
        self.entries.insert(key, (entry.weight, entry.smoothing));
        Ok(())
    }

    /// The unique entry matching the four labels around a crossing, if any.
    pub fn lookup(
        &self,
        sign: Sign,
        l1: u32,
        l2: u32,
        l3: u32,
        l4: u32,
    ) -> Option<(&LaurentPoly, Smoothing)> {
        self.entries
            .get(&(sign, l1, l2, l3, l4))
            .map(|(w, s)| (w, *s))
    }

    pub fn has_entries_for(&self, sign: Sign) -> bool {
        self.entries.keys().any(|&(s, ..)| s == sign)
    }

    /// Entries with the given sign whose known corner labels match.
    /// `None` positions are wildcards; order: corners 1, 2, 3, 4.
    pub fn compatible(&self, sign: Sign, partial: [Option<u32>; 4]) -> bool {
        self.entries.keys().any(|&(s, l1, l2, l3, l4)| {
            s == sign
                && [l1, l2, l3, l4]
                    .iter()
                    .zip(partial.iter())
                    .all(|(&l, want)| want.is_none_or(|w| w == l))
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = WeightEntry> + '_ {
        self.entries
            .iter()
            .map(|(&(sign, l1, l2, l3, l4), (w, sm))| WeightEntry {
                sign,
                labels_in: (l1, l2),
                labels_out: (l3, l4),
                weight: w.clone(),
                smoothing: *sm,
            })
    }
}

impl fmt::Display for WeightTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N {}", self.n)?;
        writeln!(f, "alpha {}", self.alpha)?;
        for (&(sign, l1, l2, l3, l4), (w, sm)) in &self.entries {
            writeln!(f, "w {sign} {l1} {l2} -> {l3} {l4} : {w} : {sm}")?;
        }
        Ok(())
    }
}

impl FromStr for WeightTable {
    type Err = ParseWeightError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |line: usize, error: String| ParseWeightError::Invalid { line, error };
        let mut n: Option<u32> = None;
        let mut alpha: i64 = 0;
        let mut rows: Vec<(usize, WeightEntry)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["N", v] => {
                    n = Some(
                        v.parse()
                            .map_err(|_| bad(line_no, format!("bad N `{v}`")))?,
                    )
                }
                ["alpha", v] => {
                    alpha = v
                        .parse()
                        .map_err(|_| bad(line_no, format!("bad alpha `{v}`")))?
                }
                ["w", rest @ ..] => {
                    let text = rest.join(" ");
                    let mut halves = text.splitn(3, " : ");
                    let head = halves.next().unwrap_or("");
                    let weight = halves
                        .next()
                        .ok_or_else(|| bad(line_no, "missing weight".into()))?;
                    let smoothing = halves
                        .next()
                        .ok_or_else(|| bad(line_no, "missing smoothing".into()))?;
                    let head_toks: Vec<&str> = head.split_whitespace().collect();
                    let entry = match head_toks.as_slice() {
                        [sign, l1, l2, "->", l3, l4] => {
                            let sign = match *sign {
                                "+" => Sign::Plus,
                                "-" => Sign::Minus,
                                other => {
                                    return Err(bad(line_no, format!("bad sign `{other}`")))
                                }
                            };
                            let lab = |s: &str| -> Result<u32, ParseWeightError> {
                                s.parse()
                                    .map_err(|_| bad(line_no, format!("bad label `{s}`")))
                            };
                            WeightEntry {
                                sign,
                                labels_in: (lab(l1)?, lab(l2)?),
                                labels_out: (lab(l3)?, lab(l4)?),
                                weight: weight.trim().parse().map_err(
                                    |e: crate::laurent::ParsePolyError| {
                                        bad(line_no, e.to_string())
                                    },
                                )?,
                                smoothing: match smoothing.trim() {
                                    "swap" => Smoothing::Swap,
                                    "parallel" => Smoothing::Parallel,
                                    other => {
                                        return Err(bad(
                                            line_no,
                                            format!("bad smoothing `{other}`"),
                                        ))
                                    }
                                },
                            }
                        }
                        _ => return Err(bad(line_no, format!("bad entry `{line}`"))),
                    };
                    rows.push((line_no, entry));
                }
                _ => return Err(bad(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        let n = n.ok_or(ParseWeightError::MissingN)?;
        let mut table = WeightTable::empty(n, alpha)?;
        for (_, entry) in rows {
            table.insert(entry)?;
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_table_shape() {
        let t = WeightTable::standard(2, 0).unwrap();
        // 2 diagonal + 2 swap + 1 parallel per sign
        assert_eq!(t.len(), 10);
        let (w, sm) = t.lookup(Sign::Plus, 1, 1, 1, 1).unwrap();
        assert_eq!(w, &LaurentPoly::monomial(-1, -1));
        assert_eq!(sm, Smoothing::Parallel);
        let (w, sm) = t.lookup(Sign::Plus, 2, 1, 2, 1).unwrap();
        assert_eq!(w, &"q - q^-1".parse().unwrap());
        assert_eq!(sm, Smoothing::Parallel);
        let (w, sm) = t.lookup(Sign::Minus, 1, 2, 2, 1).unwrap();
        assert_eq!(w, &LaurentPoly::one());
        assert_eq!(sm, Smoothing::Swap);
        assert!(t.lookup(Sign::Plus, 1, 2, 1, 2).is_none());
    }

    #[test]
    fn file_round_trip() {
        let t = WeightTable::standard(3, 0).unwrap();
        let text = t.to_string();
        let again: WeightTable = text.parse().unwrap();
        assert_eq!(again, t);
        assert_eq!(again.to_string(), text);
    }

    #[test]
    fn duplicate_entry_rejected() {
        let mut t = WeightTable::standard(2, 0).unwrap();
        let err = t.insert(WeightEntry {
            sign: Sign::Plus,
            labels_in: (1, 1),
            labels_out: (1, 1),
            weight: LaurentPoly::one(),
            smoothing: Smoothing::Swap,
        });
        assert!(matches!(err, Err(WeightError::DuplicateEntry(..))));
    }

    #[test]
    fn label_range_enforced() {
        let mut t = WeightTable::empty(2, 0).unwrap();
        let err = t.insert(WeightEntry {
            sign: Sign::Plus,
            labels_in: (3, 1),
            labels_out: (3, 1),
            weight: LaurentPoly::one(),
            smoothing: Smoothing::Swap,
        });
        assert_eq!(err, Err(WeightError::LabelOutOfRange(3, 2)));
        assert!(WeightTable::empty(0, 0).is_err());
    }

    #[test]
    fn alpha_is_metadata() {
        let a = WeightTable::standard(2, 0).unwrap();
        let b = WeightTable::standard(2, 5).unwrap();
        assert_eq!(b.alpha(), 5);
        assert!(a.entries().zip(b.entries()).all(|(x, y)| x == y));
    }
}
