//! Bounded bidirectional search over the move graph.
//!
//! Nodes are freely reduced words; edges are single moves followed by the
//! explicit trivial cancellations needed to land back on a reduced word, so
//! that the assembled [`Witness`] replays literally. A returned witness is
//! always verified before it is handed out; `None` means "no connection
//! found within the limits", never "inequivalent".

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use thiserror::Error;

use crate::moves::{
    apply_step, destabilize_right, match_exchange, verify_witness_in, ExchangeDir, ExchangeForm,
    ExchangeSide, MoveSet, MoveStep, StabDir, StabKind, Witness,
};
use crate::rewrite::{applicable_rewrites, Direction, RelationId, RelationRewrite, TrivialPair};
use crate::word::{BraidWord, Generator};

/// Caps for the search: largest degree and word length a node may have, and
/// the total number of moves allowed along a connecting path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchLimits {
    max_degree: usize,
    max_length: usize,
    max_depth: usize,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("search limits must all be positive")]
pub struct LimitsError;

impl SearchLimits {
    pub fn new(max_degree: usize, max_length: usize, max_depth: usize) -> Result<Self, LimitsError> {
        if max_degree == 0 || max_length == 0 || max_depth == 0 {
            return Err(LimitsError);
        }
        Ok(SearchLimits {
            max_degree,
            max_length,
            max_depth,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }
}

/// Desk-scale defaults: degree ≤ 5, length ≤ 12, depth ≤ 8.
impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_degree: 5,
            max_length: 12,
            max_depth: 8,
        }
    }
}

/// One search edge: a move plus the cancellations restoring reducedness.
type Edge = Vec<MoveStep>;

struct NodeEntry {
    word: BraidWord,
    parent: Option<(usize, Edge)>,
}

struct Frontier {
    ids: HashMap<BraidWord, usize>,
    nodes: Vec<NodeEntry>,
    level: Vec<usize>,
}

impl Frontier {
    fn seeded(root: BraidWord) -> Frontier {
        let mut f = Frontier {
            ids: HashMap::new(),
            nodes: Vec::new(),
            level: Vec::new(),
        };
        f.ids.insert(root.clone(), 0);
        f.nodes.push(NodeEntry {
            word: root,
            parent: None,
        });
        f.level.push(0);
        f
    }

    /// Path of edges from the root to `id`.
    fn path_from_root(&self, mut id: usize) -> Vec<Edge> {
        let mut edges = Vec::new();
        while let Some((parent, edge)) = &self.nodes[id].parent {
            edges.push(edge.clone());
            id = *parent;
        }
        edges.reverse();
        edges
    }
}

/// Bidirectional breadth-first search for a move sequence connecting the two
/// words. Moves are drawn from `moves` (rewrites of the flavor, conjugation
/// by a single generator, right stabilization both ways, and the exchange
/// move when allowed); both endpoints are searched and the meeting paths are
/// spliced into one witness.
pub fn equiv_search(
    w1: &BraidWord,
    w2: &BraidWord,
    moves: MoveSet,
    limits: SearchLimits,
) -> Option<Witness> {
    let start = w1.free_reduce();
    let goal = w2.free_reduce();
    if start.degree() > limits.max_degree
        || goal.degree() > limits.max_degree
        || start.len() > limits.max_length
        || goal.len() > limits.max_length
    {
        return None;
    }

    if start == goal {
        return finish(w1, w2, Vec::new());
    }

    let mut fwd = Frontier::seeded(start);
    let mut bwd = Frontier::seeded(goal);

    let mut depth_used = 0;
    while depth_used < limits.max_depth {
        // expand the smaller frontier level
        let fwd_turn = fwd.level.len() <= bwd.level.len();
        let expanded = if fwd_turn {
            expand_level(&mut fwd, moves, limits)
        } else {
            expand_level(&mut bwd, moves, limits)
        };
        if expanded.is_empty() {
            return None; // exhausted within caps
        }
        depth_used += 1;
        // meeting point?
        let (this, other) = if fwd_turn { (&fwd, &bwd) } else { (&bwd, &fwd) };
        let mut meets: Vec<(usize, usize)> = expanded
            .iter()
            .filter_map(|&id| other.ids.get(&this.nodes[id].word).map(|&oid| (id, oid)))
            .collect();
        meets.sort();
        if let Some(&(id, oid)) = meets.first() {
            let (fid, bid) = if fwd_turn { (id, oid) } else { (oid, id) };
            let mut steps: Vec<MoveStep> = fwd.path_from_root(fid).into_iter().flatten().collect();
            for edge in bwd.path_from_root(bid).into_iter().rev() {
                steps.extend(edge.iter().rev().map(MoveStep::inverse));
            }
            return finish(w1, w2, steps);
        }
    }
    None
}

fn finish(w1: &BraidWord, w2: &BraidWord, mut steps: Vec<MoveStep>) -> Option<Witness> {
    // the search operated on reduced words; normalize the declared start
    if *w1 != w1.free_reduce() {
        steps.insert(0, MoveStep::Conjugate(BraidWord::empty(w1.degree())));
    }
    let witness = Witness {
        start: w1.clone(),
        steps,
        end: w2.clone(),
    };
    debug_assert!(verify_witness_in(&witness, MoveSet::Vb).is_ok()
        || verify_witness_in(&witness, MoveSet::Wb).is_ok()
        || verify_witness_in(&witness, MoveSet::WbStar).is_ok());
    Some(witness)
}

/// Expands every node of the current deepest level; returns the ids of the
/// newly discovered nodes.
fn expand_level(frontier: &mut Frontier, moves: MoveSet, limits: SearchLimits) -> Vec<usize> {
    let level = std::mem::take(&mut frontier.level);
    let mut discovered = Vec::new();
    for id in level {
        let word = frontier.nodes[id].word.clone();
        for (edge, next) in successors(&word, moves, limits) {
            match frontier.ids.entry(next.clone()) {
                Entry::Occupied(_) => {}
                Entry::Vacant(slot) => {
                    let nid = frontier.nodes.len();
                    slot.insert(nid);
                    frontier.nodes.push(NodeEntry {
                        word: next,
                        parent: Some((id, edge)),
                    });
                    discovered.push(nid);
                }
            }
        }
    }
    frontier.level = discovered.clone();
    discovered
}

/// The trivial cancellations turning `word` into its free reduction, as
/// explicit rewrite steps.
fn reduction_steps(word: &BraidWord) -> (BraidWord, Vec<MoveStep>) {
    let mut current = word.clone();
    let mut steps = Vec::new();
    loop {
        let letters = current.letters();
        let Some(pos) = (0..letters.len().saturating_sub(1))
            .find(|&p| letters[p].cancels(letters[p + 1]))
        else {
            return (current, steps);
        };
        let pair = TrivialPair::of(letters[pos], letters[pos + 1])
            .expect("cancelling pair is a trivial relation");
        let step = MoveStep::Rewrite(RelationRewrite::new(
            RelationId::Trivial(pair),
            pos,
            Direction::LeftToRight,
        ));
        current = apply_step(&current, &step).expect("cancellation applies");
        steps.push(step);
    }
}

/// Deterministic successor enumeration from a reduced node. Pure trivial
/// insertions cancel straight back to the same node under free reduction, so
/// they never yield a new edge and are skipped here.
fn successors(word: &BraidWord, moves: MoveSet, limits: SearchLimits) -> Vec<(Edge, BraidWord)> {
    let mut out: Vec<(Edge, BraidWord)> = Vec::new();
    let mut push = |mut edge: Edge, result: BraidWord| {
        let (reduced, cancels) = reduction_steps(&result);
        if reduced == *word || reduced.len() > limits.max_length {
            return;
        }
        edge.extend(cancels);
        out.push((edge, reduced));
    };

    // relation rewrites
    for r in applicable_rewrites(word, moves.flavor()) {
        if matches!(
            (&r.id, r.direction),
            (RelationId::Trivial(_), Direction::RightToLeft)
        ) {
            continue;
        }
        let step = MoveStep::Rewrite(r);
        let next = apply_step(word, &step).expect("enumerated rewrite applies");
        push(vec![step], next);
    }

    // conjugation by single generators
    let m = word.degree();
    for i in 1..m {
        for g in [
            Generator::Sigma(i),
            Generator::SigmaInv(i),
            Generator::Tau(i),
        ] {
            let conjugator = BraidWord::new(m, vec![g]).expect("index in range");
            let step = MoveStep::Conjugate(conjugator);
            let next = apply_step(word, &step).expect("conjugation applies");
            push(vec![step], next);
        }
    }

    // right stabilizations, both directions
    if m + 1 <= limits.max_degree && word.len() + 1 <= limits.max_length {
        for kind in [StabKind::Positive, StabKind::Negative, StabKind::Virtual] {
            let step = MoveStep::StabRight {
                kind,
                dir: StabDir::Stabilize,
            };
            let next = apply_step(word, &step).expect("stabilization applies");
            push(vec![step], next);
        }
    }
    if let Ok((_, kind)) = destabilize_right(word) {
        let step = MoveStep::StabRight {
            kind,
            dir: StabDir::Destabilize,
        };
        let next = apply_step(word, &step).expect("destabilization applies");
        push(vec![step], next);
    }

    // exchange moves
    if moves == MoveSet::Vb {
        for side in [ExchangeSide::Left, ExchangeSide::Right] {
            if let Some(matched) = match_exchange(word, side) {
                let dir = match matched.form {
                    ExchangeForm::Sigma => ExchangeDir::SigmaToTau,
                    ExchangeForm::Tau => ExchangeDir::TauToSigma,
                };
                let step = MoveStep::Exchange { side, dir };
                let next = apply_step(word, &step).expect("matched exchange applies");
                push(vec![step], next);
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{conjugate, verify_witness_in};

    fn w(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    #[test]
    fn zero_limits_rejected() {
        assert!(SearchLimits::new(0, 5, 5).is_err());
        assert!(SearchLimits::new(5, 5, 0).is_err());
        let limits = SearchLimits::new(4, 10, 6).unwrap();
        assert_eq!(limits.max_degree(), 4);
    }

    #[test]
    fn finds_single_stabilization() {
        let witness = equiv_search(
            &w("degree 2; s1"),
            &w("degree 3; s1 s2"),
            MoveSet::Vb,
            SearchLimits::default(),
        )
        .unwrap();
        verify_witness_in(&witness, MoveSet::Vb).unwrap();
        assert_eq!(
            witness.steps,
            vec![MoveStep::StabRight {
                kind: StabKind::Positive,
                dir: StabDir::Stabilize
            }]
        );
    }

    #[test]
    fn finds_conjugation() {
        let word = w("degree 3; s1 t2");
        let conjugated = conjugate(&word, &w("degree 3; t1")).unwrap();
        let witness = equiv_search(
            &word,
            &conjugated,
            MoveSet::VbStrict,
            SearchLimits::new(4, 10, 2).unwrap(),
        )
        .unwrap();
        verify_witness_in(&witness, MoveSet::VbStrict).unwrap();
        assert!(witness.steps.len() <= 2);
    }

    #[test]
    fn identical_words_connect_trivially() {
        let word = w("degree 2; s1 S1 t1");
        let witness = equiv_search(
            &word,
            &w("degree 2; t1"),
            MoveSet::VbStrict,
            SearchLimits::default(),
        )
        .unwrap();
        verify_witness_in(&witness, MoveSet::VbStrict).unwrap();
    }

    #[test]
    fn witness_reverses() {
        let witness = equiv_search(
            &w("degree 2; t1"),
            &w("degree 3; t1 t2"),
            MoveSet::Vb,
            SearchLimits::default(),
        )
        .unwrap();
        let reversed = witness.reversed();
        verify_witness_in(&reversed, MoveSet::Vb).unwrap();
        assert_eq!(reversed.start, witness.end);
        assert_eq!(reversed.end, witness.start);
    }

    #[test]
    fn meets_in_the_middle() {
        // two moves apart: conjugation then stabilization
        let word = w("degree 2; s1 t1");
        let mid = conjugate(&word, &w("degree 2; s1")).unwrap();
        let far = crate::moves::stabilize_right(&mid, StabKind::Virtual);
        let witness = equiv_search(
            &word,
            &far,
            MoveSet::VbStrict,
            SearchLimits::new(4, 10, 4).unwrap(),
        )
        .unwrap();
        verify_witness_in(&witness, MoveSet::VbStrict).unwrap();
    }

    #[test]
    fn exchange_found_under_vb_only()
    {
        let sigma_form = w("degree 3; t1 S1 S2 t1 s1 s2");
        let tau_form = w("degree 3; t1 S1 t2 t1 s1 t2");
        let tight = SearchLimits::new(3, 8, 1).unwrap();
        let witness = equiv_search(&sigma_form, &tau_form, MoveSet::Vb, tight).unwrap();
        verify_witness_in(&witness, MoveSet::Vb).unwrap();
        assert!(equiv_search(&sigma_form, &tau_form, MoveSet::VbStrict, tight).is_none());
    }
}
