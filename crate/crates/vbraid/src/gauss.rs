//! Gauss data of braid closures: the real crossings with their signs, the
//! directed arc pairing on crossing endpoints, and the count of components
//! that carry no real crossing.
//!
//! Virtual crossings are deliberately absent — arcs run through them. Two
//! closures look the same at this level exactly when a sign-preserving
//! relabeling of crossings carries one arc pairing onto the other.
//!
//! Corner convention at a crossing, both strands oriented downward: corners
//! 1 and 2 are the incoming left/right arcs, corners 3 and 4 the outgoing
//! left/right arcs, and the strands pass through as 1→4 and 2→3.
//!
//! Text form, line oriented with `#` comments:
//!
//! ```text
//! crossing v1 +
//! crossing v2 -
//! arc v1.3 -> v2.1
//! ...
//! loops 0
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::word::{BraidWord, Sign};

/// One of the four arc endpoints on the boundary of a crossing
/// neighborhood.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EndpointRef {
    pub crossing: String,
    pub corner: u8,
}

impl EndpointRef {
    pub fn new(crossing: impl Into<String>, corner: u8) -> Self {
        EndpointRef {
            crossing: crossing.into(),
            corner,
        }
    }

    pub fn is_exit(&self) -> bool {
        self.corner == 3 || self.corner == 4
    }

    pub fn is_entry(&self) -> bool {
        self.corner == 1 || self.corner == 2
    }
}

impl fmt::Display for EndpointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.corner)
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GaussError {
    #[error("corner {0} out of range (must be 1..=4)")]
    BadCorner(u8),
    #[error("unknown crossing id `{0}`")]
    UnknownCrossing(String),
    #[error("arc source {0} must be an exit corner (3 or 4)")]
    SourceNotExit(EndpointRef),
    #[error("arc target {0} must be an entry corner (1 or 2)")]
    TargetNotEntry(EndpointRef),
    #[error("duplicate arc source {0}")]
    DuplicateSource(EndpointRef),
    #[error("duplicate arc target {0}")]
    DuplicateTarget(EndpointRef),
    #[error("unmatched endpoint {0}: every crossing corner needs exactly one arc")]
    UnmatchedEndpoint(EndpointRef),
    #[error("duplicate crossing id `{0}`")]
    DuplicateCrossing(String),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseGaussError {
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: String },
    #[error(transparent)]
    Data(#[from] GaussError),
}

/// The diagram-equivalence fingerprint of a braid closure: signed real
/// crossings, the arc pairing `exit endpoint → entry endpoint`, and the
/// number of free loops.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussData {
    crossings: BTreeMap<String, Sign>,
    arcs: BTreeSet<(EndpointRef, EndpointRef)>,
    free_loops: usize,
}

impl GaussData {
    /// Validates the corner roles and the exactly-once coverage of every
    /// crossing endpoint.
    pub fn new(
        crossings: BTreeMap<String, Sign>,
        arcs: BTreeSet<(EndpointRef, EndpointRef)>,
        free_loops: usize,
    ) -> Result<Self, GaussError> {
        let mut sources = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for (src, dst) in &arcs {
            for ep in [src, dst] {
                if !(1..=4).contains(&ep.corner) {
                    return Err(GaussError::BadCorner(ep.corner));
                }
                if !crossings.contains_key(&ep.crossing) {
                    return Err(GaussError::UnknownCrossing(ep.crossing.clone()));
                }
            }
            if !src.is_exit() {
                return Err(GaussError::SourceNotExit(src.clone()));
            }
            if !dst.is_entry() {
                return Err(GaussError::TargetNotEntry(dst.clone()));
            }
            if !sources.insert(src.clone()) {
                return Err(GaussError::DuplicateSource(src.clone()));
            }
            if !targets.insert(dst.clone()) {
                return Err(GaussError::DuplicateTarget(dst.clone()));
            }
        }
        for id in crossings.keys() {
            for corner in [3u8, 4] {
                let ep = EndpointRef::new(id.clone(), corner);
                if !sources.contains(&ep) {
                    return Err(GaussError::UnmatchedEndpoint(ep));
                }
            }
            for corner in [1u8, 2] {
                let ep = EndpointRef::new(id.clone(), corner);
                if !targets.contains(&ep) {
                    return Err(GaussError::UnmatchedEndpoint(ep));
                }
            }
        }
        Ok(GaussData {
            crossings,
            arcs,
            free_loops,
        })
    }

    pub fn crossings(&self) -> &BTreeMap<String, Sign> {
        &self.crossings
    }

    pub fn arcs(&self) -> &BTreeSet<(EndpointRef, EndpointRef)> {
        &self.arcs
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Successor map on entry endpoints: pass through the crossing
    /// (1→4, 2→3), then follow the arc leaving that exit.
    fn next_entry(&self) -> HashMap<EndpointRef, EndpointRef> {
        let arc_from: HashMap<&EndpointRef, &EndpointRef> =
            self.arcs.iter().map(|(s, t)| (s, t)).collect();
        let mut next = HashMap::new();
        for id in self.crossings.keys() {
            for (entry, exit) in [(1u8, 4u8), (2, 3)] {
                let from = EndpointRef::new(id.clone(), entry);
                let via = EndpointRef::new(id.clone(), exit);
                let to = arc_from
                    .get(&via)
                    .expect("validated data covers every exit");
                next.insert(from, (*to).clone());
            }
        }
        next
    }

    /// The cycles of the closed-up diagram, each listed as its sequence of
    /// entry endpoints.
    fn cycles(&self) -> Vec<Vec<EndpointRef>> {
        let next = self.next_entry();
        let mut seen: BTreeSet<EndpointRef> = BTreeSet::new();
        let mut cycles = Vec::new();
        let mut starts: Vec<&EndpointRef> = next.keys().collect();
        starts.sort();
        for start in starts {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut at = start.clone();
            loop {
                seen.insert(at.clone());
                cycle.push(at.clone());
                at = next[&at].clone();
                if at == *start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of link components: cycles through real crossings plus free
    /// loops.
    pub fn mu(&self) -> usize {
        self.cycles().len() + self.free_loops
    }

    /// True when a sign-preserving bijection of crossings carries one arc
    /// pairing onto the other. Decided by brute-force bijection search,
    /// independently of [`GaussData::canonical_code`].
    pub fn same_gauss_data(&self, other: &GaussData) -> bool {
        if self.free_loops != other.free_loops
            || self.crossings.len() != other.crossings.len()
            || self.arcs.len() != other.arcs.len()
            || self.mu() != other.mu()
        {
            return false;
        }
        let mine: Vec<(&String, Sign)> = self.crossings.iter().map(|(k, &s)| (k, s)).collect();
        let mut theirs_by_sign: BTreeMap<Sign, Vec<&String>> = BTreeMap::new();
        for (k, &s) in &other.crossings {
            theirs_by_sign.entry(s).or_default().push(k);
        }
        for (sign, group) in &theirs_by_sign {
            let mine_count = mine.iter().filter(|(_, s)| s == sign).count();
            if mine_count != group.len() {
                return false;
            }
        }
        let mut assignment: HashMap<&String, &String> = HashMap::new();
        let mut used: BTreeSet<&String> = BTreeSet::new();
        self.search_bijection(&mine, 0, &mut assignment, &mut used, other)
    }

    fn search_bijection<'a>(
        &'a self,
        mine: &[(&'a String, Sign)],
        k: usize,
        assignment: &mut HashMap<&'a String, &'a String>,
        used: &mut BTreeSet<&'a String>,
        other: &'a GaussData,
    ) -> bool {
        if k == mine.len() {
            return self.arcs.iter().all(|(s, t)| {
                let map = |ep: &EndpointRef| EndpointRef {
                    crossing: assignment[&ep.crossing].clone(),
                    corner: ep.corner,
                };
                other.arcs.contains(&(map(s), map(t)))
            });
        }
        let (id, sign) = mine[k];
        for (cand, &cs) in &other.crossings {
            if cs != sign || used.contains(cand) {
                continue;
            }
            assignment.insert(id, cand);
            used.insert(cand);
            if self.search_bijection(mine, k + 1, assignment, used, other) {
                return true;
            }
            assignment.remove(id);
            used.remove(cand);
        }
        false
    }

    /// A deterministic canonical string: traverse the cycles, numbering
    /// crossings in first-visit order, and minimize lexicographically over
    /// every component order and starting point. Two data have equal codes
    /// exactly when [`GaussData::same_gauss_data`] holds.
    pub fn canonical_code(&self) -> String {
        let cycles = self.cycles();
        let k = cycles.len();
        let mut best: Option<String> = None;
        let mut order: Vec<usize> = (0..k).collect();
        let mut chosen: Vec<bool> = vec![false; k];
        self.minimize(&cycles, &mut order, 0, &mut chosen, &mut best);
        let mut code = best.unwrap_or_default();
        if !code.is_empty() {
            code.push('|');
        }
        code.push_str(&format!("loops:{}", self.free_loops));
        code
    }

    fn minimize(
        &self,
        cycles: &[Vec<EndpointRef>],
        order: &mut Vec<usize>,
        depth: usize,
        chosen: &mut Vec<bool>,
        best: &mut Option<String>,
    ) {
        if depth == cycles.len() {
            self.minimize_starts(cycles, order, 0, &mut Vec::new(), best);
            return;
        }
        for c in 0..cycles.len() {
            if chosen[c] {
                continue;
            }
            chosen[c] = true;
            order[depth] = c;
            self.minimize(cycles, order, depth + 1, chosen, best);
            chosen[c] = false;
        }
    }

    fn minimize_starts(
        &self,
        cycles: &[Vec<EndpointRef>],
        order: &[usize],
        depth: usize,
        starts: &mut Vec<usize>,
        best: &mut Option<String>,
    ) {
        if depth == order.len() {
            let code = self.emit_code(cycles, order, starts);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for s in 0..cycles[order[depth]].len() {
            starts.push(s);
            self.minimize_starts(cycles, order, depth + 1, starts, best);
            starts.pop();
        }
    }

    fn emit_code(&self, cycles: &[Vec<EndpointRef>], order: &[usize], starts: &[usize]) -> String {
        let mut numbering: HashMap<&String, usize> = HashMap::new();
        let mut parts = Vec::new();
        for (&c, &start) in order.iter().zip(starts) {
            let cycle = &cycles[c];
            let mut tokens = Vec::with_capacity(cycle.len());
            for step in 0..cycle.len() {
                let ep = &cycle[(start + step) % cycle.len()];
                let n = numbering.len() + 1;
                let num = *numbering.entry(&ep.crossing).or_insert(n);
                let sign = self.crossings[&ep.crossing];
                tokens.push(format!("{sign}{num}.{}", ep.corner));
            }
            parts.push(tokens.join(","));
        }
        parts.join("|")
    }
}

impl fmt::Display for GaussData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, sign) in &self.crossings {
            writeln!(f, "crossing {id} {sign}")?;
        }
        for (src, dst) in &self.arcs {
            writeln!(f, "arc {src} -> {dst}")?;
        }
        write!(f, "loops {}", self.free_loops)
    }
}

impl FromStr for GaussData {
    type Err = ParseGaussError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut crossings = BTreeMap::new();
        let mut arc_lines: Vec<(usize, EndpointRef, EndpointRef)> = Vec::new();
        let mut loops: Option<usize> = None;
        let bad = |line: usize, error: &str| ParseGaussError::Invalid {
            line,
            error: error.to_string(),
        };
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["crossing", id, sign] => {
                    let sign = match *sign {
                        "+" => Sign::Plus,
                        "-" => Sign::Minus,
                        other => return Err(bad(line_no, &format!("bad sign `{other}`"))),
                    };
                    if crossings.insert(id.to_string(), sign).is_some() {
                        return Err(GaussError::DuplicateCrossing(id.to_string()).into());
                    }
                }
                ["arc", src, "->", dst] => {
                    let src = parse_endpoint(src).map_err(|e| bad(line_no, &e))?;
                    let dst = parse_endpoint(dst).map_err(|e| bad(line_no, &e))?;
                    arc_lines.push((line_no, src, dst));
                }
                ["loops", n] => {
                    if loops.is_some() {
                        return Err(bad(line_no, "duplicate loops line"));
                    }
                    loops = Some(
                        n.parse()
                            .map_err(|_| bad(line_no, &format!("bad loop count `{n}`")))?,
                    );
                }
                _ => return Err(bad(line_no, &format!("unrecognized line `{line}`"))),
            }
        }
        let arcs: BTreeSet<(EndpointRef, EndpointRef)> = arc_lines
            .into_iter()
            .map(|(_, s, t)| (s, t))
            .collect();
        Ok(GaussData::new(crossings, arcs, loops.unwrap_or(0))?)
    }
}

fn parse_endpoint(tok: &str) -> Result<EndpointRef, String> {
    let (id, corner) = tok
        .rsplit_once('.')
        .ok_or_else(|| format!("bad endpoint `{tok}` (want `<id>.<corner>`)"))?;
    let corner: u8 = corner
        .parse()
        .map_err(|_| format!("bad corner in `{tok}`"))?;
    if !(1..=4).contains(&corner) {
        return Err(format!("corner {corner} out of range (must be 1..=4)"));
    }
    if id.is_empty() {
        return Err(format!("empty crossing id in `{tok}`"));
    }
    Ok(EndpointRef::new(id, corner))
}

/// Gauss data of the closure of a braid word.
///
/// The braid is read top to bottom; the `k`-th real letter becomes crossing
/// `v<k>`. Virtual letters only reroute strands, and the closure joins
/// bottom position `i` back to top position `i`. Strand cycles that meet no
/// real crossing are counted as free loops.
pub fn gauss_of_closure(word: &BraidWord) -> GaussData {
    let m = word.degree();
    // provisional arc segments: 0..m are the top segments, two more per crossing
    let mut births: Vec<Option<EndpointRef>> = vec![None; m];
    let mut deaths: Vec<Option<EndpointRef>> = vec![None; m];
    let mut current: Vec<usize> = (0..m).collect();
    let mut signs: Vec<Sign> = Vec::new();

    for &g in word.letters() {
        let k = g.index() - 1;
        match g.sign() {
            None => current.swap(k, k + 1),
            Some(sign) => {
                let id = format!("v{}", signs.len() + 1);
                signs.push(sign);
                deaths[current[k]] = Some(EndpointRef::new(id.clone(), 1));
                deaths[current[k + 1]] = Some(EndpointRef::new(id.clone(), 2));
                let x3 = births.len();
                births.push(Some(EndpointRef::new(id.clone(), 3)));
                deaths.push(None);
                let x4 = births.len();
                births.push(Some(EndpointRef::new(id, 4)));
                deaths.push(None);
                current[k] = x3;
                current[k + 1] = x4;
            }
        }
    }

    // close up: bottom position p rejoins top segment p
    let mut uf = UnionFind::new(births.len());
    for (p, &seg) in current.iter().enumerate() {
        uf.union(seg, p);
    }

    let mut class_birth: HashMap<usize, EndpointRef> = HashMap::new();
    let mut class_death: HashMap<usize, EndpointRef> = HashMap::new();
    for seg in 0..births.len() {
        let root = uf.find(seg);
        if let Some(b) = &births[seg] {
            class_birth.insert(root, b.clone());
        }
        if let Some(d) = &deaths[seg] {
            class_death.insert(root, d.clone());
        }
    }

    let mut arcs = BTreeSet::new();
    let mut free_loops = 0;
    let mut roots: BTreeSet<usize> = (0..births.len()).map(|s| uf.find(s)).collect();
    while let Some(root) = roots.pop_first() {
        match (class_birth.get(&root), class_death.get(&root)) {
            (Some(b), Some(d)) => {
                arcs.insert((b.clone(), d.clone()));
            }
            (None, None) => free_loops += 1,
            _ => unreachable!("closure arcs have both endpoints or none"),
        }
    }

    let crossings: BTreeMap<String, Sign> = signs
        .iter()
        .enumerate()
        .map(|(k, &s)| (format!("v{}", k + 1), s))
        .collect();
    GaussData::new(crossings, arcs, free_loops).expect("closure data is well formed")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }
}
