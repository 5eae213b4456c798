//! The Markov move calculus on braid words: relation rewrites, conjugation,
//! right stabilization of positive/negative/virtual type, left stabilization,
//! and the right/left virtual exchange move — plus machine-checkable move
//! sequences ([`Witness`]) and their replay.
//!
//! Witness logs are line oriented, one step per line:
//!
//! ```text
//! start degree 3; t1 S1 S2 t1 s1 s2
//! vm0 tau-yb i=1 @2 ltr
//! vm1 degree 3; t1
//! vm2 virt stab
//! left-stab pos destab
//! vm3 right sigma-to-tau
//! end degree 3; t1 S1 t2 t1 s1 t2
//! ```

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::rewrite::{apply_rewrite, GroupFlavor, RelationId, RelationRewrite, RewriteError, TrivialPair};
use crate::word::{BraidWord, Generator, WordError};

/// Stabilization type: which generator gets appended on the new strand.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StabKind {
    Positive,
    Negative,
    Virtual,
}

impl StabKind {
    pub fn generator(self, index: usize) -> Generator {
        match self {
            StabKind::Positive => Generator::Sigma(index),
            StabKind::Negative => Generator::SigmaInv(index),
            StabKind::Virtual => Generator::Tau(index),
        }
    }

    fn of(g: Generator) -> StabKind {
        match g {
            Generator::Sigma(_) => StabKind::Positive,
            Generator::SigmaInv(_) => StabKind::Negative,
            Generator::Tau(_) => StabKind::Virtual,
        }
    }
}

impl fmt::Display for StabKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabKind::Positive => "pos",
            StabKind::Negative => "neg",
            StabKind::Virtual => "virt",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StabDir {
    Stabilize,
    Destabilize,
}

impl StabDir {
    pub fn flip(self) -> StabDir {
        match self {
            StabDir::Stabilize => StabDir::Destabilize,
            StabDir::Destabilize => StabDir::Stabilize,
        }
    }
}

impl fmt::Display for StabDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabDir::Stabilize => "stab",
            StabDir::Destabilize => "destab",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExchangeSide {
    Left,
    Right,
}

impl fmt::Display for ExchangeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExchangeSide::Left => "left",
            ExchangeSide::Right => "right",
        })
    }
}

/// Orientation of an exchange move between its σ-shape
/// `ι(b1) σ^{-1} ι(b2) σ` and τ-shape `ι(b1) τ ι(b2) τ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExchangeDir {
    SigmaToTau,
    TauToSigma,
}

impl ExchangeDir {
    pub fn flip(self) -> ExchangeDir {
        match self {
            ExchangeDir::SigmaToTau => ExchangeDir::TauToSigma,
            ExchangeDir::TauToSigma => ExchangeDir::SigmaToTau,
        }
    }
}

impl fmt::Display for ExchangeDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExchangeDir::SigmaToTau => "sigma-to-tau",
            ExchangeDir::TauToSigma => "tau-to-sigma",
        })
    }
}

/// One applied move with its full parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveStep {
    /// VM0/WM0: a single relation rewrite.
    Rewrite(RelationRewrite),
    /// VM1/WM1: replace `b` by `g^{-1} b g`, freely reduced.
    Conjugate(BraidWord),
    /// VM2/WM2: right stabilization or its inverse.
    StabRight { kind: StabKind, dir: StabDir },
    /// Left stabilization (a derived move, not part of the VM2 family).
    StabLeft { kind: StabKind, dir: StabDir },
    /// VM3: right/left virtual exchange.
    Exchange { side: ExchangeSide, dir: ExchangeDir },
}

impl MoveStep {
    /// The step undoing this one on its result word.
    pub fn inverse(&self) -> MoveStep {
        match self {
            MoveStep::Rewrite(r) => MoveStep::Rewrite(r.flipped()),
            MoveStep::Conjugate(g) => MoveStep::Conjugate(g.invert()),
            MoveStep::StabRight { kind, dir } => MoveStep::StabRight {
                kind: *kind,
                dir: dir.flip(),
            },
            MoveStep::StabLeft { kind, dir } => MoveStep::StabLeft {
                kind: *kind,
                dir: dir.flip(),
            },
            MoveStep::Exchange { side, dir } => MoveStep::Exchange {
                side: *side,
                dir: dir.flip(),
            },
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MoveError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("cannot destabilize: word is empty")]
    DestabilizeEmpty,
    #[error("cannot destabilize: degree is already 1")]
    DestabilizeDegreeOne,
    #[error("cannot destabilize: last letter {found} is not on the boundary strand pair")]
    DestabilizeLastLetter { found: String },
    #[error("cannot destabilize: boundary strand is used before the final letter")]
    DestabilizeStrandUsed,
    #[error("destabilization type mismatch: expected {expected}, found {found}")]
    DestabilizeKind { expected: StabKind, found: StabKind },
    #[error("word does not match the {side} exchange {dir} pattern")]
    ExchangeMismatch { side: ExchangeSide, dir: ExchangeDir },
}

/// `g^{-1} b g`, freely reduced. Degrees must agree.
pub fn conjugate(b: &BraidWord, g: &BraidWord) -> Result<BraidWord, WordError> {
    Ok(g.invert().concat(b)?.concat(g)?.free_reduce())
}

/// Appends the stabilization generator on a fresh strand to the right:
/// degree `m` becomes `m + 1`.
pub fn stabilize_right(b: &BraidWord, kind: StabKind) -> BraidWord {
    let m = b.degree();
    b.embed(0, 1).pushed(kind.generator(m))
}

/// Inverse of [`stabilize_right`]. Requires that the final letter is the
/// only one touching the last strand; returns the lowered word and the
/// stabilization type it removed.
pub fn destabilize_right(b: &BraidWord) -> Result<(BraidWord, StabKind), MoveError> {
    let m = b.degree();
    if m < 2 {
        return Err(MoveError::DestabilizeDegreeOne);
    }
    let letters = b.letters();
    let last = *letters.last().ok_or(MoveError::DestabilizeEmpty)?;
    if last.index() != m - 1 {
        return Err(MoveError::DestabilizeLastLetter {
            found: last.to_string(),
        });
    }
    let body = &letters[..letters.len() - 1];
    if body.iter().any(|g| g.index() == m - 1) {
        return Err(MoveError::DestabilizeStrandUsed);
    }
    let word = BraidWord::new(m - 1, body.to_vec())?;
    Ok((word, StabKind::of(last)))
}

/// Shifts every strand up by one and appends the stabilization generator on
/// strands 1 and 2.
pub fn stabilize_left(b: &BraidWord, kind: StabKind) -> BraidWord {
    b.embed(1, 0).pushed(kind.generator(1))
}

/// Inverse of [`stabilize_left`].
pub fn destabilize_left(b: &BraidWord) -> Result<(BraidWord, StabKind), MoveError> {
    let m = b.degree();
    if m < 2 {
        return Err(MoveError::DestabilizeDegreeOne);
    }
    let letters = b.letters();
    let last = *letters.last().ok_or(MoveError::DestabilizeEmpty)?;
    if last.index() != 1 {
        return Err(MoveError::DestabilizeLastLetter {
            found: last.to_string(),
        });
    }
    let body = &letters[..letters.len() - 1];
    if body.iter().any(|g| g.index() == 1) {
        return Err(MoveError::DestabilizeStrandUsed);
    }
    let lowered: Vec<Generator> = body
        .iter()
        .map(|g| match g {
            Generator::Sigma(i) => Generator::Sigma(i - 1),
            Generator::SigmaInv(i) => Generator::SigmaInv(i - 1),
            Generator::Tau(i) => Generator::Tau(i - 1),
        })
        .collect();
    let word = BraidWord::new(m - 1, lowered)?;
    Ok((word, StabKind::of(last)))
}

/// Which exchange shape a word matches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExchangeForm {
    Sigma,
    Tau,
}

/// A successful exchange pattern match: the two blocks (at the lower
/// degree) and the shape the word was in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExchangeMatch {
    pub b1: BraidWord,
    pub b2: BraidWord,
    pub form: ExchangeForm,
}

/// Builds the exchange pair on `side` for blocks `b1`, `b2` of equal degree
/// `m`, returning `(source, target)` for the chosen direction. The σ-shape
/// is `ι(b1) σ^{-1} ι(b2) σ` and the τ-shape `ι(b1) τ ι(b2) τ`, on the last
/// strand pair for a right exchange and the first for a left one.
pub fn exchange(
    b1: &BraidWord,
    b2: &BraidWord,
    side: ExchangeSide,
    dir: ExchangeDir,
) -> Result<(BraidWord, BraidWord), WordError> {
    if b1.degree() != b2.degree() {
        return Err(WordError::DegreeMismatch {
            left: b1.degree(),
            right: b2.degree(),
        });
    }
    let m = b1.degree();
    let (e1, e2, index) = match side {
        ExchangeSide::Right => (b1.embed(0, 1), b2.embed(0, 1), m),
        ExchangeSide::Left => (b1.embed(1, 0), b2.embed(1, 0), 1),
    };
    let build = |a: Generator, b: Generator| {
        e1.pushed(a)
            .concat(&e2.pushed(b))
            .expect("equal degrees by construction")
    };
    let sigma_form = build(Generator::SigmaInv(index), Generator::Sigma(index));
    let tau_form = build(Generator::Tau(index), Generator::Tau(index));
    Ok(match dir {
        ExchangeDir::SigmaToTau => (sigma_form, tau_form),
        ExchangeDir::TauToSigma => (tau_form, sigma_form),
    })
}

/// Pattern-matches `word` against the exchange shapes on `side`: the
/// boundary strand pair must carry exactly two letters, the second of them
/// final, forming either `σ^{-1} … σ` or `τ … τ`.
pub fn match_exchange(word: &BraidWord, side: ExchangeSide) -> Option<ExchangeMatch> {
    let m = word.degree();
    if m < 2 || word.len() < 2 {
        return None;
    }
    let index = match side {
        ExchangeSide::Right => m - 1,
        ExchangeSide::Left => 1,
    };
    let letters = word.letters();
    let on_boundary: Vec<usize> = letters
        .iter()
        .enumerate()
        .filter(|(_, g)| g.index() == index)
        .map(|(k, _)| k)
        .collect();
    let [p, q] = on_boundary.as_slice() else {
        return None;
    };
    if *q != letters.len() - 1 {
        return None;
    }
    let form = match (letters[*p], letters[*q]) {
        (Generator::SigmaInv(_), Generator::Sigma(_)) => ExchangeForm::Sigma,
        (Generator::Tau(_), Generator::Tau(_)) => ExchangeForm::Tau,
        _ => return None,
    };
    let unembed = |block: &[Generator]| -> Option<BraidWord> {
        let letters: Vec<Generator> = match side {
            ExchangeSide::Right => block.to_vec(),
            ExchangeSide::Left => block
                .iter()
                .map(|g| match g {
                    Generator::Sigma(i) => Generator::Sigma(i - 1),
                    Generator::SigmaInv(i) => Generator::SigmaInv(i - 1),
                    Generator::Tau(i) => Generator::Tau(i - 1),
                })
                .collect(),
        };
        BraidWord::new(m - 1, letters).ok()
    };
    Some(ExchangeMatch {
        b1: unembed(&letters[..*p])?,
        b2: unembed(&letters[*p + 1..*q])?,
        form,
    })
}

/// Applies one step to a word. Rewrites are literal; conjugation freely
/// reduces; the others check their patterns.
pub fn apply_step(word: &BraidWord, step: &MoveStep) -> Result<BraidWord, MoveError> {
    match step {
        MoveStep::Rewrite(r) => Ok(apply_rewrite(word, r)?),
        MoveStep::Conjugate(g) => Ok(conjugate(word, g)?),
        MoveStep::StabRight { kind, dir: StabDir::Stabilize } => Ok(stabilize_right(word, *kind)),
        MoveStep::StabRight { kind, dir: StabDir::Destabilize } => {
            let (lowered, found) = destabilize_right(word)?;
            if found != *kind {
                return Err(MoveError::DestabilizeKind {
                    expected: *kind,
                    found,
                });
            }
            Ok(lowered)
        }
        MoveStep::StabLeft { kind, dir: StabDir::Stabilize } => Ok(stabilize_left(word, *kind)),
        MoveStep::StabLeft { kind, dir: StabDir::Destabilize } => {
            let (lowered, found) = destabilize_left(word)?;
            if found != *kind {
                return Err(MoveError::DestabilizeKind {
                    expected: *kind,
                    found,
                });
            }
            Ok(lowered)
        }
        MoveStep::Exchange { side, dir } => {
            let wanted = match dir {
                ExchangeDir::SigmaToTau => ExchangeForm::Sigma,
                ExchangeDir::TauToSigma => ExchangeForm::Tau,
            };
            let matched = match_exchange(word, *side)
                .filter(|m| m.form == wanted)
                .ok_or(MoveError::ExchangeMismatch {
                    side: *side,
                    dir: *dir,
                })?;
            let (_, target) = exchange(&matched.b1, &matched.b2, *side, *dir)?;
            Ok(target)
        }
    }
}

/// Which move vocabulary a witness is replayed against.
///
/// `VbStrict` is the conjugation-closed fragment without exchange moves
/// (VM0–VM2 on words); `Vb` adds VM3 and left stabilizations; `Wb` and
/// `WbStar` are the welded vocabularies WM0–WM2 of their flavors, where the
/// exchange move is derivable and therefore not a primitive step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveSet {
    VbStrict,
    Vb,
    Wb,
    WbStar,
}

impl MoveSet {
    pub fn flavor(self) -> GroupFlavor {
        match self {
            MoveSet::VbStrict | MoveSet::Vb => GroupFlavor::Vb,
            MoveSet::Wb => GroupFlavor::Wb,
            MoveSet::WbStar => GroupFlavor::WbStar,
        }
    }

    pub fn allows(self, step: &MoveStep) -> bool {
        match step {
            MoveStep::Rewrite(r) => r.id.allowed_in(self.flavor()),
            MoveStep::Conjugate(_) | MoveStep::StabRight { .. } => true,
            MoveStep::StabLeft { kind, .. } => {
                self != MoveSet::VbStrict || *kind == StabKind::Virtual
            }
            MoveStep::Exchange { .. } => self == MoveSet::Vb,
        }
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveSet::VbStrict => "vb-strict",
            MoveSet::Vb => "vb",
            MoveSet::Wb => "wb",
            MoveSet::WbStar => "wb-star",
        })
    }
}

impl FromStr for MoveSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vb-strict" => Ok(MoveSet::VbStrict),
            "vb" => Ok(MoveSet::Vb),
            "wb" => Ok(MoveSet::Wb),
            "wb-star" => Ok(MoveSet::WbStar),
            other => Err(format!(
                "unknown flavor `{other}` (expected vb, vb-strict, wb or wb-star)"
            )),
        }
    }
}

/// A move sequence with declared endpoints. Replaying `steps` from `start`
/// must reach `end` up to free reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub start: BraidWord,
    pub steps: Vec<MoveStep>,
    pub end: BraidWord,
}

impl Witness {
    /// The same derivation read backwards.
    pub fn reversed(&self) -> Witness {
        Witness {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(MoveStep::inverse).collect(),
            end: self.start.clone(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WitnessError {
    #[error("step {index} ({step}) is not allowed under {moves}")]
    IllegalStep {
        index: usize,
        step: String,
        moves: MoveSet,
    },
    #[error("step {index} ({step}) failed: {error}")]
    StepFailed {
        index: usize,
        step: String,
        error: MoveError,
    },
    #[error("replay ended at `{reached}`, expected `{expected}` up to free reduction")]
    EndMismatch { reached: String, expected: String },
}

/// Replays a witness under the move set of the given flavor (`Vb` words get
/// the full VM0–VM3 vocabulary).
pub fn verify_witness(witness: &Witness, flavor: GroupFlavor) -> Result<(), WitnessError> {
    let moves = match flavor {
        GroupFlavor::Vb => MoveSet::Vb,
        GroupFlavor::Wb => MoveSet::Wb,
        GroupFlavor::WbStar => MoveSet::WbStar,
    };
    verify_witness_in(witness, moves)
}

/// Replays each step, checking legality under `moves`; succeeds when the end
/// word is reached exactly after free reduction.
pub fn verify_witness_in(witness: &Witness, moves: MoveSet) -> Result<(), WitnessError> {
    let mut current = witness.start.clone();
    for (index, step) in witness.steps.iter().enumerate() {
        if !moves.allows(step) {
            return Err(WitnessError::IllegalStep {
                index,
                step: step.to_string(),
                moves,
            });
        }
        current = apply_step(&current, step).map_err(|error| WitnessError::StepFailed {
            index,
            step: step.to_string(),
            error,
        })?;
    }
    if current.free_reduce() != witness.end.free_reduce() {
        return Err(WitnessError::EndMismatch {
            reached: current.to_string(),
            expected: witness.end.to_string(),
        });
    }
    Ok(())
}

/// Realizes a right virtual exchange move inside the welded move vocabulary:
/// an explicit chain of WM0 rewrites (including the welded relation),
/// conjugations, and one virtual stabilization/destabilization pair passing
/// through degree `m+2`, connecting `ι(b1) σ_m^{-1} ι(b2) σ_m` to
/// `ι(b1) τ_m ι(b2) τ_m`. Every step replays under `Wb`.
pub fn welded_exchange_witness(b1: &BraidWord, b2: &BraidWord) -> Result<Witness, WordError> {
    use Direction::{LeftToRight as Ltr, RightToLeft as Rtl};
    use crate::rewrite::Direction;

    if b1.degree() != b2.degree() {
        return Err(WordError::DegreeMismatch {
            left: b1.degree(),
            right: b2.degree(),
        });
    }
    let m = b1.degree();
    let (start, end) = exchange(b1, b2, ExchangeSide::Right, ExchangeDir::SigmaToTau)?;

    // the chain below tracks positions inside freely reduced blocks
    let u = b1.free_reduce();
    let v = b2.free_reduce();
    let (a, c) = (u.len(), v.len());

    let mut steps: Vec<MoveStep> = Vec::new();
    let mut current = start.clone();
    let mut push = |current: &mut BraidWord, step: MoveStep| {
        *current = apply_step(current, &step).expect("exchange chain step applies");
        steps.push(step);
    };
    let rw = |id: RelationId, pos: usize, dir: Direction| {
        MoveStep::Rewrite(RelationRewrite::new(id, pos, dir))
    };
    let word = |degree: usize, letters: Vec<Generator>| {
        BraidWord::new(degree, letters).expect("chain word in range")
    };

    // b1 S_m b2 s_m = b1 S_m t_m t_m b2 s_m, inserted on the literal word
    push(&mut current, rw(RelationId::Trivial(TrivialPair::TauTau(m)), b1.len() + 1, Rtl));

    // rotate so the word ends with t_m, stabilize virtually, rotate back.
    // The two rotation conjugations freely reduce the blocks, landing on
    // u S_m t_m t_{m+1} t_m v s_m in degree m+2 with u, v reduced.
    let rotor = {
        let mut letters = vec![Generator::Tau(m)];
        letters.extend_from_slice(b2.letters());
        letters.push(Generator::Sigma(m));
        letters
    };
    push(&mut current, MoveStep::Conjugate(word(m + 1, rotor.clone()).invert()));
    push(&mut current, MoveStep::StabRight { kind: StabKind::Virtual, dir: StabDir::Stabilize });
    push(&mut current, MoveStep::Conjugate(word(m + 2, rotor)));

    // t_m t_{m+1} t_m = t_{m+1} t_m t_{m+1}
    push(&mut current, rw(RelationId::TauYangBaxter { i: m }, a + 1, Ltr));

    // S_m t_{m+1} t_m = t_{m+1} t_m S_{m+1}, via a trivial insertion and the
    // positive detour relation
    push(&mut current, rw(RelationId::Trivial(TrivialPair::SigmaSigmaInv(m + 1)), a + 3, Rtl));
    push(&mut current, rw(RelationId::MixedDetour { i: m, s: Sign::Plus }, a + 1, Rtl));
    push(&mut current, rw(RelationId::Trivial(TrivialPair::SigmaInvSigma(m)), a, Ltr));

    // slide t_{m+1} left through u
    for k in (0..a).rev() {
        let id = commute_with_tau(u.letters()[k], m + 1);
        push(&mut current, rw(id, k, Ltr));
    }

    // slide each letter of v left past t_{m+1} and S_{m+1}
    for j in 0..c {
        let letter = v.letters()[j];
        push(&mut current, rw(tau_then_letter(letter, m + 1), a + 3 + j, Ltr));
        push(&mut current, rw(sigma_inv_then_letter(letter, m + 1), a + 2 + j, Ltr));
    }

    // conjugate the leading t_{m+1} away
    push(&mut current, MoveStep::Conjugate(word(m + 2, vec![Generator::Tau(m + 1)])));

    // t_{m+1} s_m t_{m+1} = t_m s_{m+1} t_m
    push(&mut current, rw(RelationId::Trivial(TrivialPair::TauTau(m)), a + c + 5, Rtl));
    push(&mut current, rw(RelationId::MixedDetour { i: m, s: Sign::Plus }, a + c + 3, Ltr));
    push(&mut current, rw(RelationId::Trivial(TrivialPair::TauTau(m + 1)), a + c + 2, Ltr));

    // S_{m+1} t_m s_{m+1} = s_m t_{m+1} S_m, through the welded relation
    push(&mut current, rw(RelationId::Trivial(TrivialPair::SigmaSigmaInv(m)), a + c + 4, Rtl));
    push(&mut current, rw(RelationId::Welded { i: m, inverted: false }, a + c + 2, Ltr));
    push(&mut current, rw(RelationId::Trivial(TrivialPair::SigmaInvSigma(m + 1)), a + c + 1, Ltr));

    // rotate t_{m+1} to the end, destabilize, rotate back
    push(&mut current, MoveStep::Conjugate(word(
        m + 2,
        vec![Generator::Tau(m), Generator::Sigma(m)],
    )));
    push(&mut current, MoveStep::StabRight { kind: StabKind::Virtual, dir: StabDir::Destabilize });
    push(&mut current, MoveStep::Conjugate(word(
        m + 1,
        vec![Generator::SigmaInv(m), Generator::Tau(m)],
    )));

    debug_assert_eq!(current, end.free_reduce());
    Ok(Witness { start, steps, end })
}

fn commute_with_tau(letter: Generator, tau_index: usize) -> RelationId {
    match letter.sign() {
        Some(s) => RelationId::MixedCommute {
            i: letter.index(),
            s,
            j: tau_index,
            sigma_first: true,
        },
        None => RelationId::TauCommute {
            i: letter.index(),
            j: tau_index,
        },
    }
}

fn tau_then_letter(letter: Generator, tau_index: usize) -> RelationId {
    match letter.sign() {
        Some(s) => RelationId::MixedCommute {
            i: letter.index(),
            s,
            j: tau_index,
            sigma_first: false,
        },
        None => RelationId::TauCommute {
            i: tau_index,
            j: letter.index(),
        },
    }
}

fn sigma_inv_then_letter(letter: Generator, sigma_index: usize) -> RelationId {
    match letter.sign() {
        Some(s) => RelationId::BraidCommute {
            i: sigma_index,
            si: Sign::Minus,
            j: letter.index(),
            sj: s,
        },
        None => RelationId::MixedCommute {
            i: sigma_index,
            s: Sign::Minus,
            j: letter.index(),
            sigma_first: true,
        },
    }
}

use crate::word::Sign;

// --- text form ---------------------------------------------------------------

impl fmt::Display for MoveStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveStep::Rewrite(r) => write!(f, "vm0 {r}"),
            MoveStep::Conjugate(g) => write!(f, "vm1 {g}"),
            MoveStep::StabRight { kind, dir } => write!(f, "vm2 {kind} {dir}"),
            MoveStep::StabLeft { kind, dir } => write!(f, "left-stab {kind} {dir}"),
            MoveStep::Exchange { side, dir } => write!(f, "vm3 {side} {dir}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("malformed move step `{0}`")]
pub struct ParseStepError(pub String);

impl FromStr for MoveStep {
    type Err = ParseStepError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let err = || ParseStepError(text.to_string());
        let (kind, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match kind {
            "vm0" => Ok(MoveStep::Rewrite(rest.parse().map_err(|_| err())?)),
            "vm1" => Ok(MoveStep::Conjugate(rest.parse().map_err(|_| err())?)),
            "vm2" | "left-stab" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [k, d] = toks.as_slice() else {
                    return Err(err());
                };
                let stab_kind = match *k {
                    "pos" => StabKind::Positive,
                    "neg" => StabKind::Negative,
                    "virt" => StabKind::Virtual,
                    _ => return Err(err()),
                };
                let dir = match *d {
                    "stab" => StabDir::Stabilize,
                    "destab" => StabDir::Destabilize,
                    _ => return Err(err()),
                };
                if kind == "vm2" {
                    Ok(MoveStep::StabRight { kind: stab_kind, dir })
                } else {
                    Ok(MoveStep::StabLeft { kind: stab_kind, dir })
                }
            }
            "vm3" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [s, d] = toks.as_slice() else {
                    return Err(err());
                };
                let side = match *s {
                    "left" => ExchangeSide::Left,
                    "right" => ExchangeSide::Right,
                    _ => return Err(err()),
                };
                let dir = match *d {
                    "sigma-to-tau" => ExchangeDir::SigmaToTau,
                    "tau-to-sigma" => ExchangeDir::TauToSigma,
                    _ => return Err(err()),
                };
                Ok(MoveStep::Exchange { side, dir })
            }
            _ => Err(err()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseWitnessError {
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: String },
    #[error("witness log needs a `start <word>` line before any step")]
    MissingStart,
    #[error("witness log needs an `end <word>` line after the steps")]
    MissingEnd,
}

impl Witness {
    /// Serializes the witness to its line-oriented log.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("start {}\n", self.start));
        for step in &self.steps {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        out.push_str(&format!("end {}\n", self.end));
        out
    }

    /// Parses a log produced by [`Witness::to_log`]. Blank lines and `#`
    /// comments are ignored.
    pub fn from_log(text: &str) -> Result<Witness, ParseWitnessError> {
        let mut start: Option<BraidWord> = None;
        let mut end: Option<BraidWord> = None;
        let mut steps = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |error: String| ParseWitnessError::Invalid {
                line: line_no,
                error,
            };
            if let Some(word) = line.strip_prefix("start ") {
                if start.is_some() || !steps.is_empty() {
                    return Err(bad("unexpected `start` line".into()));
                }
                start = Some(word.parse().map_err(|e| bad(format!("{e}")))?);
            } else if let Some(word) = line.strip_prefix("end ") {
                if end.is_some() {
                    return Err(bad("duplicate `end` line".into()));
                }
                end = Some(word.parse().map_err(|e| bad(format!("{e}")))?);
            } else {
                if start.is_none() {
                    return Err(ParseWitnessError::MissingStart);
                }
                if end.is_some() {
                    return Err(bad("step after `end` line".into()));
                }
                steps.push(line.parse().map_err(|e: ParseStepError| bad(e.to_string()))?);
            }
        }
        Ok(Witness {
            start: start.ok_or(ParseWitnessError::MissingStart)?,
            steps,
            end: end.ok_or(ParseWitnessError::MissingEnd)?,
        })
    }
}
