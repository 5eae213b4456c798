//! The state-sum invariant on braid closures.
//!
//! The closure of a word is segmented at its real crossings into arcs
//! (components without real crossings stay as whole loops). A state labels
//! every arc with an element of `1..=N`; it is admissible when the four
//! labels around every crossing match a weight-table entry. Each admissible
//! state contributes the product of its crossing weights times
//! `q^(2·label − N − 1)` for every component of the smoothed diagram, and
//! the whole sum is scaled by `(-q^N)^writhe`.

use std::fmt;
use thiserror::Error;

use crate::gauss::{gauss_of_closure, EndpointRef, GaussData};
use crate::laurent::LaurentPoly;
use crate::weights::{Smoothing, WeightTable};
use crate::word::{BraidWord, Sign};

/// The arcs of a closure and, for every real crossing, the four incident
/// arcs by corner. Arc ids are dense indices; `loop_arcs` lists the ids of
/// components with no real crossing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureArcs {
    arc_count: usize,
    loop_arcs: Vec<usize>,
    sites: Vec<CrossingSite>,
}

/// Incident arc ids of one crossing, indexed corner 1 through corner 4.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossingSite {
    pub sign: Sign,
    pub corners: [usize; 4],
}

impl ClosureArcs {
    /// Reads the arc structure off Gauss data: one arc per exit→entry pair,
    /// one loop arc per free loop.
    pub fn from_gauss(gauss: &GaussData) -> ClosureArcs {
        let mut arc_of_endpoint: std::collections::HashMap<EndpointRef, usize> =
            std::collections::HashMap::new();
        for (k, (src, dst)) in gauss.arcs().iter().enumerate() {
            arc_of_endpoint.insert(src.clone(), k);
            arc_of_endpoint.insert(dst.clone(), k);
        }
        let real_arcs = gauss.arcs().len();
        let sites = gauss
            .crossings()
            .iter()
            .map(|(id, &sign)| {
                let corner = |c: u8| arc_of_endpoint[&EndpointRef::new(id.clone(), c)];
                CrossingSite {
                    sign,
                    corners: [corner(1), corner(2), corner(3), corner(4)],
                }
            })
            .collect();
        ClosureArcs {
            arc_count: real_arcs + gauss.free_loops(),
            loop_arcs: (real_arcs..real_arcs + gauss.free_loops()).collect(),
            sites,
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn loop_arcs(&self) -> &[usize] {
        &self.loop_arcs
    }

    pub fn sites(&self) -> &[CrossingSite] {
        &self.sites
    }

    pub fn writhe(&self) -> i64 {
        self.sites.iter().map(|s| s.sign.as_i64()).sum()
    }
}

/// Arcs of the closure of a braid word, segmented at real crossings only.
pub fn arcs_of_closure(word: &BraidWord) -> ClosureArcs {
    ClosureArcs::from_gauss(&gauss_of_closure(word))
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EvalError {
    #[error("weight table has no entries for sign {0}: table incomplete")]
    IncompleteTable(Sign),
    #[error("state is not admissible at crossing {site}: labels {labels:?} have no table entry")]
    NotAdmissible { site: usize, labels: [u32; 4] },
    #[error("label conflict on a smoothed component (arcs {a} and {b} carry {la} vs {lb}); the weight table is inconsistent")]
    LabelConflict { a: usize, b: usize, la: u32, lb: u32 },
    #[error("state has {got} labels for {want} arcs")]
    WrongArity { got: usize, want: usize },
}

/// A total labeling of the arcs by `1..=N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateAssignment {
    pub labels: Vec<u32>,
}

impl fmt::Display for StateAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.labels {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Streams the admissible states of `arcs` under `table`, in lexicographic
/// label order. Enumeration backtracks arc by arc, pruning any partial
/// labeling some crossing can no longer extend.
pub fn admissible_states<'a>(
    arcs: &'a ClosureArcs,
    table: &'a WeightTable,
) -> Result<AdmissibleStates<'a>, EvalError> {
    for site in &arcs.sites {
        if !table.has_entries_for(site.sign) {
            return Err(EvalError::IncompleteTable(site.sign));
        }
    }
    Ok(AdmissibleStates::new(arcs, table, None))
}

#[derive(Debug)]
pub struct AdmissibleStates<'a> {
    arcs: &'a ClosureArcs,
    table: &'a WeightTable,
    /// labels[k] is the current label of arc k; 0 = unassigned
    labels: Vec<u32>,
    /// next label candidate to try at each depth
    depth: usize,
    done: bool,
    /// sites listing each arc, for partial-consistency pruning
    sites_of_arc: Vec<Vec<usize>>,
    /// restrict arc 0 to this label (used to partition work across threads)
    first_label: Option<u32>,
}

impl<'a> AdmissibleStates<'a> {
    fn new(arcs: &'a ClosureArcs, table: &'a WeightTable, first_label: Option<u32>) -> Self {
        let mut sites_of_arc = vec![Vec::new(); arcs.arc_count];
        for (s, site) in arcs.sites.iter().enumerate() {
            for &a in &site.corners {
                if !sites_of_arc[a].contains(&s) {
                    sites_of_arc[a].push(s);
                }
            }
        }
        AdmissibleStates {
            arcs,
            table,
            labels: vec![0; arcs.arc_count],
            depth: 0,
            done: false,
            sites_of_arc,
            first_label,
        }
    }

    fn consistent_at(&self, arc: usize) -> bool {
        self.sites_of_arc[arc].iter().all(|&s| {
            let site = &self.arcs.sites[s];
            let partial = site.corners.map(|a| {
                let l = self.labels[a];
                (l != 0).then_some(l)
            });
            self.table.compatible(site.sign, partial)
        })
    }

    fn candidate_range(&self, depth: usize) -> (u32, u32) {
        match (depth, self.first_label) {
            (0, Some(l)) => (l, l),
            _ => (1, self.table.n()),
        }
    }
}

impl Iterator for AdmissibleStates<'_> {
    type Item = StateAssignment;

    fn next(&mut self) -> Option<StateAssignment> {
        if self.done {
            return None;
        }
        let n_arcs = self.arcs.arc_count;
        if n_arcs == 0 {
            // single empty state
            self.done = true;
            return Some(StateAssignment { labels: Vec::new() });
        }
        // resume by backtracking when a full state was just yielded
        let mut backtrack = self.depth == n_arcs;
        loop {
            if backtrack {
                // step back to the deepest arc with candidates left
                loop {
                    if self.depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                    let (_, hi) = self.candidate_range(self.depth);
                    if self.labels[self.depth] < hi {
                        break;
                    }
                    self.labels[self.depth] = 0;
                }
            } else {
                // enter a fresh arc, in pre-increment form
                let (lo, _) = self.candidate_range(self.depth);
                self.labels[self.depth] = lo - 1;
            }
            // advance the label at the current arc to the next consistent one
            backtrack = loop {
                let (_, hi) = self.candidate_range(self.depth);
                if self.labels[self.depth] >= hi {
                    self.labels[self.depth] = 0;
                    break true;
                }
                self.labels[self.depth] += 1;
                if self.consistent_at(self.depth) {
                    self.depth += 1;
                    break false;
                }
            };
            if !backtrack && self.depth == n_arcs {
                return Some(StateAssignment {
                    labels: self.labels.clone(),
                });
            }
        }
    }
}

/// Product of the matched entry weights of a state; the empty product is 1.
pub fn state_weight(
    arcs: &ClosureArcs,
    table: &WeightTable,
    state: &StateAssignment,
) -> Result<LaurentPoly, EvalError> {
    check_arity(arcs, state)?;
    let mut out = LaurentPoly::one();
    for (k, site) in arcs.sites.iter().enumerate() {
        let [l1, l2, l3, l4] = site.corners.map(|a| state.labels[a]);
        let (w, _) = table
            .lookup(site.sign, l1, l2, l3, l4)
            .ok_or(EvalError::NotAdmissible {
                site: k,
                labels: [l1, l2, l3, l4],
            })?;
        out = out.mul(w);
    }
    Ok(out)
}

/// Components of the smoothed diagram with their inherited labels, sorted
/// by smallest member arc. Every arc of a component must carry the same
/// label; a conflict is a table transcription error and is reported, never
/// repaired.
pub fn smooth_components(
    arcs: &ClosureArcs,
    table: &WeightTable,
    state: &StateAssignment,
) -> Result<Vec<(Vec<usize>, u32)>, EvalError> {
    check_arity(arcs, state)?;
    let mut parent: Vec<usize> = (0..arcs.arc_count).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, site) in arcs.sites.iter().enumerate() {
        let [l1, l2, l3, l4] = site.corners.map(|a| state.labels[a]);
        let (_, smoothing) =
            table
                .lookup(site.sign, l1, l2, l3, l4)
                .ok_or(EvalError::NotAdmissible {
                    site: k,
                    labels: [l1, l2, l3, l4],
                })?;
        let [a1, a2, a3, a4] = site.corners;
        let joins = match smoothing {
            Smoothing::Swap => [(a1, a4), (a2, a3)],
            Smoothing::Parallel => [(a1, a3), (a2, a4)],
        };
        for (x, y) in joins {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }
    let mut components: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for a in 0..arcs.arc_count {
        let r = find(&mut parent, a);
        components.entry(r).or_default().push(a);
    }
    let mut out = Vec::with_capacity(components.len());
    for (_, members) in components {
        let label = state.labels[members[0]];
        for &a in &members[1..] {
            if state.labels[a] != label {
                return Err(EvalError::LabelConflict {
                    a: members[0],
                    b: a,
                    la: label,
                    lb: state.labels[a],
                });
            }
        }
        let mut members = members;
        members.sort_unstable();
        out.push((members, label));
    }
    out.sort_by_key(|(members, _)| members[0]);
    Ok(out)
}

/// `∏_c q^(2·label(c) − N − 1)` over smoothed components.
pub fn h_factor(components: &[(Vec<usize>, u32)], n: u32) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (_, label) in components {
        out = out.scale_by_monomial(1, 2 * i64::from(*label) - i64::from(n) - 1);
    }
    out
}

fn check_arity(arcs: &ClosureArcs, state: &StateAssignment) -> Result<(), EvalError> {
    if state.labels.len() != arcs.arc_count {
        return Err(EvalError::WrongArity {
            got: state.labels.len(),
            want: arcs.arc_count,
        });
    }
    Ok(())
}

/// `(-q^N)^w`, exact for negative `w` as well.
fn writhe_prefactor(n: u32, w: i64) -> LaurentPoly {
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, i64::from(n) * w)
}

fn state_sum(arcs: &ClosureArcs, table: &WeightTable, first_label: Option<u32>) -> Result<LaurentPoly, EvalError> {
    for site in &arcs.sites {
        if !table.has_entries_for(site.sign) {
            return Err(EvalError::IncompleteTable(site.sign));
        }
    }
    let mut total = LaurentPoly::zero();
    for state in AdmissibleStates::new(arcs, table, first_label) {
        let g = state_weight(arcs, table, &state)?;
        let components = smooth_components(arcs, table, &state)?;
        let h = h_factor(&components, table.n());
        total = total.add(&g.mul(&h));
    }
    Ok(total)
}

/// Evaluates the invariant of the closure of `word` against `table`.
pub fn q_invariant_with_table(
    word: &BraidWord,
    table: &WeightTable,
) -> Result<LaurentPoly, EvalError> {
    q_invariant_workers(word, table, 1)
}

/// As [`q_invariant_with_table`], splitting state enumeration over the label
/// of the first arc across `workers` threads. Partial sums combine by ring
/// addition, so the result is identical for any worker count.
pub fn q_invariant_workers(
    word: &BraidWord,
    table: &WeightTable,
    workers: usize,
) -> Result<LaurentPoly, EvalError> {
    let arcs = arcs_of_closure(word);
    let prefactor = writhe_prefactor(table.n(), word.writhe());
    let sum = if workers <= 1 || arcs.arc_count() == 0 || table.n() == 1 {
        state_sum(&arcs, table, None)?
    } else {
        let results: Vec<Result<LaurentPoly, EvalError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (1..=table.n())
                .map(|label| {
                    let arcs = &arcs;
                    scope.spawn(move || state_sum(arcs, table, Some(label)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut total = LaurentPoly::zero();
        for r in results {
            total = total.add(&r?);
        }
        total
    };
    Ok(prefactor.mul(&sum))
}

/// The invariant at `(N, α)` using the built-in weight table.
pub fn q_invariant(word: &BraidWord, n: u32, alpha: i64) -> Result<LaurentPoly, EvalError> {
    let table = WeightTable::standard(n, alpha).expect("n >= 1");
    q_invariant_with_table(word, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightEntry;

    fn w(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    fn p(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn arc_counts() {
        assert_eq!(arcs_of_closure(&w("degree 2; s1")).arc_count(), 2);
        let loops = arcs_of_closure(&BraidWord::empty(1));
        assert_eq!(loops.arc_count(), 1);
        assert_eq!(loops.loop_arcs(), &[0]);
        assert_eq!(arcs_of_closure(&w("degree 2; t1 S1")).arc_count(), 2);
    }

    // brute-force oracle: filter all N^arcs labelings by table lookup
    fn brute_states(arcs: &ClosureArcs, table: &WeightTable) -> Vec<Vec<u32>> {
        let n = table.n();
        let mut out = Vec::new();
        let mut labels = vec![1u32; arcs.arc_count()];
        loop {
            let ok = arcs.sites().iter().all(|site| {
                let [l1, l2, l3, l4] = site.corners.map(|a| labels[a]);
                table.lookup(site.sign, l1, l2, l3, l4).is_some()
            });
            if ok {
                out.push(labels.clone());
            }
            // odometer
            let mut k = arcs.arc_count();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if labels[k] < n {
                    labels[k] += 1;
                    for l in labels.iter_mut().skip(k + 1) {
                        *l = 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn state_counts() {
        let table = WeightTable::standard(2, 0).unwrap();
        let unknot = arcs_of_closure(&BraidWord::empty(1));
        assert_eq!(admissible_states(&unknot, &table).unwrap().count(), 2);

        let table1 = WeightTable::standard(1, 0).unwrap();
        let kink = arcs_of_closure(&w("degree 2; s1"));
        assert_eq!(admissible_states(&kink, &table1).unwrap().count(), 1);
        // pinned against the brute-force oracle
        assert_eq!(admissible_states(&kink, &table).unwrap().count(), 3);
    }

    #[test]
    fn enumeration_matches_brute_oracle() {
        let table = WeightTable::standard(2, 0).unwrap();
        for text in [
            "degree 2; s1",
            "degree 2; t1 S1",
            "degree 3; t1 S1 S2 t1 s1 s2",
            "degree 3; S2 t1 S2 t1",
            "degree 3; s1 s1 s2 t1",
            "degree 4; s1 S2 s3 t2 s1",
        ] {
            let arcs = arcs_of_closure(&w(text));
            let fast: Vec<Vec<u32>> = admissible_states(&arcs, &table)
                .unwrap()
                .map(|s| s.labels)
                .collect();
            assert_eq!(fast, brute_states(&arcs, &table), "{text}");
        }
    }

    #[test]
    fn incomplete_table_reported() {
        let mut table = WeightTable::empty(2, 0).unwrap();
        table
            .insert(WeightEntry {
                sign: Sign::Plus,
                labels_in: (1, 1),
                labels_out: (1, 1),
                weight: LaurentPoly::one(),
                smoothing: Smoothing::Parallel,
            })
            .unwrap();
        let arcs = arcs_of_closure(&w("degree 2; S1"));
        assert_eq!(
            admissible_states(&arcs, &table).unwrap_err(),
            EvalError::IncompleteTable(Sign::Minus)
        );
    }

    #[test]
    fn weights_and_components() {
        let table = WeightTable::standard(2, 0).unwrap();
        // no crossings: empty product, one loop component
        let unknot = arcs_of_closure(&BraidWord::empty(1));
        let state = StateAssignment { labels: vec![2] };
        assert_eq!(state_weight(&unknot, &table, &state).unwrap(), LaurentPoly::one());
        let comps = smooth_components(&unknot, &table, &state).unwrap();
        assert_eq!(comps, vec![(vec![0], 2)]);
        assert_eq!(h_factor(&comps, 2), p("q"));

        // single positive kink, diagonal state smooths parallel: two components
        let kink = arcs_of_closure(&w("degree 2; s1"));
        let diag = StateAssignment { labels: vec![1, 1] };
        assert_eq!(
            state_weight(&kink, &table, &diag).unwrap(),
            p("-q^-1")
        );
        let comps = smooth_components(&kink, &table, &diag).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(h_factor(&comps, 2), p("q^-2"));
    }

    #[test]
    fn h_factor_examples() {
        assert_eq!(h_factor(&[(vec![0], 1)], 2), p("q^-1"));
        assert_eq!(h_factor(&[(vec![0], 1), (vec![1], 2)], 2), p("1"));
        assert_eq!(h_factor(&[(vec![0], 2)], 3), p("1"));
    }

    #[test]
    fn label_conflict_is_loud() {
        // a bad table whose swap smoothing joins differently labeled arcs
        let mut table = WeightTable::empty(2, 0).unwrap();
        table
            .insert(WeightEntry {
                sign: Sign::Plus,
                labels_in: (1, 2),
                labels_out: (1, 2),
                weight: LaurentPoly::one(),
                smoothing: Smoothing::Swap, // joins corners 1-4: labels 1 vs 2
            })
            .unwrap();
        let arcs = arcs_of_closure(&w("degree 2; s1"));
        let state = StateAssignment { labels: vec![1, 2] };
        assert!(matches!(
            smooth_components(&arcs, &table, &state),
            Err(EvalError::LabelConflict { .. })
        ));
    }

    #[test]
    fn unknot_value() {
        assert_eq!(q_invariant(&BraidWord::empty(1), 2, 0).unwrap(), p("q^-1 + q"));
        // positive kink: invariant under stabilization
        assert_eq!(q_invariant(&w("degree 2; s1"), 2, 0).unwrap(), p("q^-1 + q"));
    }

    #[test]
    fn left_negative_stabilization_value() {
        assert_eq!(q_invariant(&w("degree 2; t1 S1"), 2, 0).unwrap(), p("1 - q^-2"));
    }

    #[test]
    fn workers_agree() {
        let word = w("degree 3; t1 S1 S2 t1 s1 s2");
        let table = WeightTable::standard(2, 0).unwrap();
        let single = q_invariant_workers(&word, &table, 1).unwrap();
        for workers in [2, 3, 8] {
            assert_eq!(q_invariant_workers(&word, &table, workers).unwrap(), single);
        }
    }

    #[test]
    fn n3_unknot() {
        let got = q_invariant(&BraidWord::empty(1), 3, 0).unwrap();
        assert_eq!(got, p("q^-2 + 1 + q^2"));
    }
}
