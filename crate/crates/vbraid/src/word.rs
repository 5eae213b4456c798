//! Braid words over the virtual braid generators.
//!
//! A word of degree `m` is a finite sequence of letters `σ_i`, `σ_i^{-1}`,
//! `τ_i` with `1 ≤ i ≤ m−1`, each acting on the adjacent strand pair
//! `(i, i+1)`. Words are immutable values; every operation returns a new
//! word.
//!
//! The text form is line oriented: a header `degree <m>;` followed by
//! whitespace-separated tokens `s<i>` (σ_i), `S<i>` (σ_i^{-1}) and `t<i>`
//! (τ_i). Emission is canonical: single spaces, no trailing space.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Sign of a real crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One letter of a braid word.
///
/// `Sigma(i)` is the positive crossing of strands `i` and `i+1`,
/// `SigmaInv(i)` its inverse, and `Tau(i)` the virtual crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::Sigma(i) | Generator::SigmaInv(i) | Generator::Tau(i) => i,
        }
    }

    /// Formal inverse. `τ_i` is its own inverse (τ_i² = 1).
    pub fn inverse(self) -> Generator {
        match self {
            Generator::Sigma(i) => Generator::SigmaInv(i),
            Generator::SigmaInv(i) => Generator::Sigma(i),
            Generator::Tau(i) => Generator::Tau(i),
        }
    }

    /// True for `σ_i` and `σ_i^{-1}` (real crossings), false for `τ_i`.
    pub fn is_real(self) -> bool {
        !matches!(self, Generator::Tau(_))
    }

    /// Crossing sign, or `None` for a virtual letter.
    pub fn sign(self) -> Option<Sign> {
        match self {
            Generator::Sigma(_) => Some(Sign::Plus),
            Generator::SigmaInv(_) => Some(Sign::Minus),
            Generator::Tau(_) => None,
        }
    }

    pub(crate) fn shifted(self, by: usize) -> Generator {
        match self {
            Generator::Sigma(i) => Generator::Sigma(i + by),
            Generator::SigmaInv(i) => Generator::SigmaInv(i + by),
            Generator::Tau(i) => Generator::Tau(i + by),
        }
    }

    /// Whether two adjacent letters cancel under free reduction.
    pub(crate) fn cancels(self, next: Generator) -> bool {
        next == self.inverse()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::SigmaInv(i) => write!(f, "S{i}"),
            Generator::Tau(i) => write!(f, "t{i}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("letter {letter} is out of range for degree {degree} (indices run 1..={})", .degree.saturating_sub(1))]
    IndexOutOfRange { letter: String, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseWordError {
    #[error("missing `degree <m>;` header")]
    MissingHeader,
    #[error("malformed degree header `{0}`")]
    BadHeader(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A braid word: a declared degree and a sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BraidWord {
    degree: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    /// Builds a word, checking that every letter index is within
    /// `1..=degree-1`.
    pub fn new(degree: usize, letters: Vec<Generator>) -> Result<Self, WordError> {
        if degree == 0 {
            return Err(WordError::ZeroDegree);
        }
        for g in &letters {
            if g.index() == 0 || g.index() >= degree {
                return Err(WordError::IndexOutOfRange {
                    letter: g.to_string(),
                    degree,
                });
            }
        }
        Ok(BraidWord { degree, letters })
    }

    /// The trivial braid of the given degree.
    ///
    /// Panics if `degree` is zero.
    pub fn empty(degree: usize) -> Self {
        assert!(degree >= 1, "braid degree must be at least 1");
        BraidWord {
            degree,
            letters: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation in the diagram monoid. Degrees must agree.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, WordError> {
        if self.degree != other.degree {
            return Err(WordError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            degree: self.degree,
            letters,
        })
    }

    /// The formal group inverse: reverse the letters and invert each one.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            degree: self.degree,
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Removes adjacent `σ_i σ_i^{-1}`, `σ_i^{-1} σ_i` and `τ_i τ_i` pairs
    /// until none remain. The result is the unique fixed point regardless of
    /// cancellation order.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Generator> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if stack.last().is_some_and(|top| top.cancels(g)) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        BraidWord {
            degree: self.degree,
            letters: stack,
        }
    }

    /// Image in the symmetric group: every letter projects to the
    /// transposition `(i, i+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut image: Vec<usize> = (1..=self.degree).collect();
        for &g in &self.letters {
            let i = g.index();
            image.swap(i - 1, i);
        }
        Permutation { image }
    }

    /// Positive crossings minus negative crossings; `τ` letters contribute 0.
    pub fn writhe(&self) -> i64 {
        self.letters
            .iter()
            .filter_map(|g| g.sign())
            .map(Sign::as_i64)
            .sum()
    }

    /// Adds `s` trivial strands on the left and `t` on the right: degree
    /// becomes `m+s+t` and every letter index shifts by `+s`.
    pub fn embed(&self, s: usize, t: usize) -> BraidWord {
        BraidWord {
            degree: self.degree + s + t,
            letters: self.letters.iter().map(|g| g.shifted(s)).collect(),
        }
    }

    pub(crate) fn with_letters(&self, letters: Vec<Generator>) -> BraidWord {
        debug_assert!(letters
            .iter()
            .all(|g| g.index() >= 1 && g.index() < self.degree));
        BraidWord {
            degree: self.degree,
            letters,
        }
    }

    pub(crate) fn pushed(&self, g: Generator) -> BraidWord {
        debug_assert!(g.index() >= 1 && g.index() < self.degree);
        let mut letters = self.letters.clone();
        letters.push(g);
        BraidWord {
            degree: self.degree,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {};", self.degree)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseWordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let semi = text.find(';').ok_or(ParseWordError::MissingHeader)?;
        let (header, body) = (&text[..semi], &text[semi + 1..]);
        let mut parts = header.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some("degree"), Some(num), None) => {
                let degree: usize = num
                    .parse()
                    .map_err(|_| ParseWordError::BadHeader(header.trim().to_string()))?;
                if degree == 0 {
                    return Err(WordError::ZeroDegree.into());
                }
                let mut letters = Vec::new();
                for tok in body.split_whitespace() {
                    letters.push(parse_generator(tok)?);
                }
                Ok(BraidWord::new(degree, letters)?)
            }
            _ => Err(ParseWordError::BadHeader(header.trim().to_string())),
        }
    }
}

pub(crate) fn parse_generator(tok: &str) -> Result<Generator, ParseWordError> {
    let bad = || ParseWordError::BadToken(tok.to_string());
    let (kind, digits) = tok.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let i: usize = digits.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    match kind {
        "s" => Ok(Generator::Sigma(i)),
        "S" => Ok(Generator::SigmaInv(i)),
        "t" => Ok(Generator::Tau(i)),
        _ => Err(bad()),
    }
}

/// A permutation of `{1, …, m}`, stored as the image sequence.
///
/// For a braid word this is the composite of its transpositions with the
/// first letter outermost: `perm(uv) = perm(u) ∘ perm(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation {
            image: (1..=m).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of a point, 1-based.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, WordError> {
        if self.degree() != other.degree() {
            return Err(WordError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            image: (1..=self.degree()).map(|x| self.apply(other.apply(x))).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            image[v - 1] = k + 1;
        }
        Permutation { image }
    }

    pub fn cycle_count(&self) -> usize {
        let m = self.image.len();
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] - 1;
            }
        }
        cycles
    }

    /// The embedding matching [`BraidWord::embed`]: `s` fixed points below,
    /// `t` above, everything else shifted by `+s`.
    pub fn embed(&self, s: usize, t: usize) -> Permutation {
        let m = self.degree();
        let mut image: Vec<usize> = (1..=s).collect();
        image.extend(self.image.iter().map(|&v| v + s));
        image.extend(m + s + 1..=m + s + t);
        Permutation { image }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    #[test]
    fn parse_basic() {
        let word = w("degree 2; s1 S1");
        assert_eq!(word.degree(), 2);
        assert_eq!(
            word.letters(),
            &[Generator::Sigma(1), Generator::SigmaInv(1)]
        );
    }

    #[test]
    fn parse_prop33_word() {
        let word = w("degree 3; t1 S1 t2 t1 s1 t2");
        assert_eq!(word.len(), 6);
        assert_eq!(word.letters()[2], Generator::Tau(2));
    }

    #[test]
    fn parse_index_out_of_range() {
        let err = "degree 2; s5".parse::<BraidWord>().unwrap_err();
        assert!(matches!(
            err,
            ParseWordError::Word(WordError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "s1 s2".parse::<BraidWord>().unwrap_err(),
            ParseWordError::MissingHeader
        );
        assert!(matches!(
            "degree x; s1".parse::<BraidWord>().unwrap_err(),
            ParseWordError::BadHeader(_)
        ));
        assert!(matches!(
            "degree 3; q1".parse::<BraidWord>().unwrap_err(),
            ParseWordError::BadToken(_)
        ));
        assert!(matches!(
            "degree 3; s0".parse::<BraidWord>().unwrap_err(),
            ParseWordError::BadToken(_)
        ));
        assert!(matches!(
            "degree 0;".parse::<BraidWord>().unwrap_err(),
            ParseWordError::Word(WordError::ZeroDegree)
        ));
    }

    #[test]
    fn emit_canonical() {
        assert_eq!(w("degree 2;  s1   S1 ").to_string(), "degree 2; s1 S1");
        assert_eq!(BraidWord::empty(3).to_string(), "degree 3;");
    }

    #[test]
    fn concat_and_invert() {
        let a = w("degree 2; s1");
        let b = w("degree 2; t1");
        assert_eq!(a.concat(&b).unwrap(), w("degree 2; s1 t1"));
        assert_eq!(
            w("degree 2; t1 S1").invert(),
            w("degree 2; s1 t1"),
            "inverse reverses and flips"
        );
        assert_eq!(BraidWord::empty(4).invert(), BraidWord::empty(4));
        let err = a.concat(&w("degree 3; s1")).unwrap_err();
        assert!(matches!(err, WordError::DegreeMismatch { .. }));
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("degree 2; s1 S1").free_reduce(), BraidWord::empty(2));
        assert_eq!(w("degree 3; t2 t2 s1").free_reduce(), w("degree 3; s1"));
        assert_eq!(
            w("degree 3; s1 t2 t2 S1").free_reduce(),
            BraidWord::empty(3)
        );
    }

    #[test]
    fn permutation_examples() {
        assert!(w("degree 2; t1 S1").permutation().is_identity());
        assert!(BraidWord::empty(3).permutation().is_identity());
        // σ1 σ2 sends 1 → 2 → 3 → 1.
        let p = w("degree 3; s1 s2").permutation();
        assert_eq!(p.image(), &[2, 3, 1]);
        assert_eq!(p.cycle_count(), 1);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(w("degree 2; s1 s1 s1").writhe(), 3);
        assert_eq!(w("degree 2; t1 S1").writhe(), -1);
        assert_eq!(w("degree 3; t1 S1 S2 t1 s1 s2").writhe(), 0);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(w("degree 2; s1").embed(1, 0), w("degree 3; s2"));
        assert_eq!(w("degree 2; t1").embed(0, 1), w("degree 3; t1"));
    }

    // Exhaustive oracle: apply single cancellations in every possible order
    // and collect the fully reduced results.
    fn reduce_all_orders(letters: &[Generator], out: &mut BTreeSet<Vec<Generator>>) {
        let mut cancelled = false;
        for p in 0..letters.len().saturating_sub(1) {
            if letters[p].cancels(letters[p + 1]) {
                cancelled = true;
                let mut next = letters.to_vec();
                next.drain(p..p + 2);
                reduce_all_orders(&next, out);
            }
        }
        if !cancelled {
            out.insert(letters.to_vec());
        }
    }

    fn all_words(m: usize, len: usize) -> Vec<Vec<Generator>> {
        let alphabet: Vec<Generator> = (1..m)
            .flat_map(|i| {
                [
                    Generator::Sigma(i),
                    Generator::SigmaInv(i),
                    Generator::Tau(i),
                ]
            })
            .collect();
        let mut words = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|wrd| {
                    alphabet.iter().map(move |&g| {
                        let mut next = wrd.clone();
                        next.push(g);
                        next
                    })
                })
                .collect();
        }
        words
    }

    #[test]
    fn free_reduce_confluent_exhaustive() {
        for len in 0..=4 {
            for letters in all_words(3, len) {
                let mut results = BTreeSet::new();
                reduce_all_orders(&letters, &mut results);
                assert_eq!(results.len(), 1, "cancellation order changed result");
                let word = BraidWord::new(3, letters).unwrap();
                assert_eq!(
                    word.free_reduce().letters(),
                    results.iter().next().unwrap().as_slice()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn parse_emit_round_trip(degree in 1usize..6, raw in proptest::collection::vec((0usize..3, 1usize..5), 0..12)) {
            let letters: Vec<Generator> = raw
                .into_iter()
                .filter(|(_, i)| *i < degree)
                .map(|(k, i)| match k {
                    0 => Generator::Sigma(i),
                    1 => Generator::SigmaInv(i),
                    _ => Generator::Tau(i),
                })
                .collect();
            let word = BraidWord::new(degree, letters).unwrap();
            let round: BraidWord = word.to_string().parse().unwrap();
            prop_assert_eq!(round, word);
        }

        #[test]
        fn free_reduce_idempotent_and_confluent(raw in proptest::collection::vec((0usize..3, 1usize..3), 0..7)) {
            let letters: Vec<Generator> = raw
                .into_iter()
                .map(|(k, i)| match k {
                    0 => Generator::Sigma(i),
                    1 => Generator::SigmaInv(i),
                    _ => Generator::Tau(i),
                })
                .collect();
            let word = BraidWord::new(3, letters.clone()).unwrap();
            let reduced = word.free_reduce();
            prop_assert_eq!(reduced.free_reduce(), reduced.clone());
            let mut results = BTreeSet::new();
            reduce_all_orders(&letters, &mut results);
            prop_assert_eq!(results.len(), 1);
            prop_assert_eq!(reduced.letters(), results.iter().next().unwrap().as_slice());
        }

        #[test]
        fn embed_functorial(degree in 2usize..5, raw in proptest::collection::vec((0usize..3, 1usize..4), 0..10)) {
            let letters: Vec<Generator> = raw
                .into_iter()
                .filter(|(_, i)| *i < degree)
                .map(|(k, i)| match k {
                    0 => Generator::Sigma(i),
                    1 => Generator::SigmaInv(i),
                    _ => Generator::Tau(i),
                })
                .collect();
            let word = BraidWord::new(degree, letters).unwrap();
            prop_assert_eq!(word.embed(1, 0).embed(0, 1), word.embed(1, 1));
            // embed commutes with concat, invert and permutation
            prop_assert_eq!(word.embed(1, 2).invert(), word.invert().embed(1, 2));
            prop_assert_eq!(
                word.embed(2, 1).permutation(),
                word.permutation().embed(2, 1)
            );
            let double = word.concat(&word).unwrap();
            prop_assert_eq!(
                double.embed(1, 1),
                word.embed(1, 1).concat(&word.embed(1, 1)).unwrap()
            );
        }
    }
}
