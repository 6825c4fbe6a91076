use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::Result;
use crate::forms::{BinaryForm, PatternState, Sign};

/// How a root pattern changes when a form crosses between strata of the
/// complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// A root of multiplicity `m` separates into `m₁ + m₂ = m`.
    Split,
    /// Two adjacent roots collide into one of multiplicity `m₁ + m₂ < k`.
    Merge,
    /// A complex pair lands on ℝP¹ as a new double root.
    PairDrop,
    /// A double root leaves ℝP¹ as a complex pair.
    PairRaise,
    /// A complex pair lands on an existing root: `m → m + 2`.
    Absorb,
    /// A complex pair leaves an existing root: `m → m − 2`, `m ≥ 3`.
    Release,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::Split => "split",
            MoveKind::Merge => "merge",
            MoveKind::PairDrop => "pair-drop",
            MoveKind::PairRaise => "pair-raise",
            MoveKind::Absorb => "absorb",
            MoveKind::Release => "release",
        };
        f.write_str(s)
    }
}

/// All pattern states of degree-`d` forms off `Σ_k`, in increasing order.
pub fn enumerate_states(d: u32, k: u32) -> Vec<PatternState> {
    let mut out = BTreeSet::new();
    let mut parts = Vec::new();
    collect_multisets(d, k.saturating_sub(1), &mut parts, &mut |mults| {
        let sum: u32 = mults.iter().sum();
        if (d - sum).is_multiple_of(2) {
            for s in signed_variants(mults.to_vec(), None) {
                out.insert(s);
            }
        }
    });
    out.into_iter().collect()
}

/// Every multiset with parts in `1..=max_part` and sum at most `budget`.
fn collect_multisets(budget: u32, max_part: u32, parts: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    emit(parts);
    for m in 1..=max_part.min(budget) {
        parts.push(m);
        collect_multisets(budget - m, m, parts, emit);
        parts.pop();
    }
}

/// States carrying `mults`: an all-even pattern inherits the source sign when
/// there is one and otherwise is reachable with either sign.
fn signed_variants(mults: Vec<u32>, source: Option<Sign>) -> Vec<PatternState> {
    let signs: Vec<Option<Sign>> = if mults.iter().all(|m| m % 2 == 0) {
        match source {
            Some(s) => vec![Some(s)],
            None => vec![Some(Sign::Plus), Some(Sign::Minus)],
        }
    } else {
        vec![None]
    };
    signs
        .into_iter()
        .map(|s| PatternState::new(mults.clone(), s).expect("sign matches parity"))
        .collect()
}

fn without(mults: &[u32], drop: &[usize]) -> Vec<u32> {
    mults
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, &m)| m)
        .collect()
}

/// Neighbours of `s` in the move graph for degree `d`, threshold `k`.
pub fn moves(s: &PatternState, d: u32, k: u32) -> Vec<(PatternState, MoveKind)> {
    let mults = s.mults();
    let sign = s.sign();
    let sum = s.root_sum();
    let mut out = BTreeSet::new();
    let mut push = |m: Vec<u32>, kind: MoveKind| {
        for t in signed_variants(m, sign) {
            if t.is_valid_for(d, k) && &t != s {
                out.insert((t, kind));
            }
        }
    };

    for (i, &m) in mults.iter().enumerate() {
        for m1 in 1..=m / 2 {
            let mut next = without(mults, &[i]);
            next.extend([m1, m - m1]);
            push(next, MoveKind::Split);
        }
        for (j, &m2) in mults.iter().enumerate().skip(i + 1) {
            if m + m2 < k {
                let mut next = without(mults, &[i, j]);
                next.push(m + m2);
                push(next, MoveKind::Merge);
            }
        }
        if m + 2 < k && sum + 2 <= d {
            let mut next = without(mults, &[i]);
            next.push(m + 2);
            push(next, MoveKind::Absorb);
        }
        if m >= 3 {
            let mut next = without(mults, &[i]);
            next.push(m - 2);
            push(next, MoveKind::Release);
        }
        if m == 2 {
            push(without(mults, &[i]), MoveKind::PairRaise);
        }
    }
    if 2 < k && sum + 2 <= d {
        let mut next = mults.to_vec();
        next.push(2);
        push(next, MoveKind::PairDrop);
    }
    out.into_iter().collect()
}

/// Undirected graph on the pattern states of `(d, k)`.
#[derive(Clone, Debug)]
pub struct MoveGraph {
    d: u32,
    k: u32,
    adjacency: BTreeMap<PatternState, BTreeSet<(PatternState, MoveKind)>>,
}

impl MoveGraph {
    pub fn build(d: u32, k: u32) -> Self {
        let mut adjacency: BTreeMap<PatternState, BTreeSet<(PatternState, MoveKind)>> =
            enumerate_states(d, k).into_iter().map(|s| (s, BTreeSet::new())).collect();
        let states: Vec<PatternState> = adjacency.keys().cloned().collect();
        for s in &states {
            for (t, kind) in moves(s, d, k) {
                adjacency.get_mut(s).expect("enumerated").insert((t.clone(), kind));
                adjacency.entry(t).or_default().insert((s.clone(), kind));
            }
        }
        MoveGraph { d, k, adjacency }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn states(&self) -> impl Iterator<Item = &PatternState> {
        self.adjacency.keys()
    }

    pub fn neighbours(&self, s: &PatternState) -> impl Iterator<Item = &(PatternState, MoveKind)> {
        self.adjacency.get(s).into_iter().flatten()
    }

    pub fn contains(&self, s: &PatternState) -> bool {
        self.adjacency.contains_key(s)
    }

    pub fn edge_count(&self) -> usize {
        let twice: usize = self
            .adjacency
            .iter()
            .map(|(s, n)| n.iter().filter(|(t, _)| t != s).count())
            .sum();
        twice / 2
    }

    pub fn adjacent(&self, a: &PatternState, b: &PatternState) -> bool {
        self.neighbours(a).any(|(t, _)| t == b)
    }

    /// Connected components, each sorted, listed by least element.
    pub fn components(&self) -> Vec<Vec<PatternState>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.adjacency.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(s) = queue.pop_front() {
                for (t, _) in self.neighbours(&s) {
                    if seen.insert(t.clone()) {
                        queue.push_back(t.clone());
                    }
                }
                comp.push(s);
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Least state reachable from `s`, the canonical component id.
    pub fn representative(&self, s: &PatternState) -> Option<PatternState> {
        if !self.contains(s) {
            return None;
        }
        let mut seen = BTreeSet::from([s.clone()]);
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(u) = queue.pop_front() {
            for (t, _) in self.neighbours(&u) {
                if seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
        }
        seen.into_iter().next()
    }

    /// Breadth-first shortest move sequence from `a` to `b`; each entry
    /// names the move that reached it.
    pub fn shortest_path(&self, a: &PatternState, b: &PatternState) -> Option<Vec<(PatternState, Option<MoveKind>)>> {
        let mut parent: BTreeMap<PatternState, Option<(PatternState, MoveKind)>> = BTreeMap::new();
        parent.insert(a.clone(), None);
        let mut queue = VecDeque::from([a.clone()]);
        while let Some(u) = queue.pop_front() {
            if &u == b {
                let mut path = Vec::new();
                let mut cur = u;
                loop {
                    match parent[&cur].clone() {
                        Some((prev, kind)) => {
                            path.push((cur, Some(kind)));
                            cur = prev;
                        }
                        None => {
                            path.push((cur, None));
                            break;
                        }
                    }
                }
                path.reverse();
                return Some(path);
            }
            for (t, kind) in self.neighbours(&u) {
                if !parent.contains_key(t) {
                    parent.insert(t.clone(), Some((u.clone(), *kind)));
                    queue.push_back(t.clone());
                }
            }
        }
        None
    }

    /// Component id of a form off `Σ_k`.
    pub fn classify(&self, f: &BinaryForm) -> Result<PatternState> {
        let p = f.pattern(self.k)?;
        Ok(self.representative(&p).expect("pattern of a degree-d form is a state"))
    }
}

/// Connected components of the move graph for `(d, k)`.
pub fn component_count(d: u32, k: u32) -> usize {
    MoveGraph::build(d, k).component_count()
}

/// Canonical component id of `f` for threshold `k`.
pub fn classify(f: &BinaryForm, k: u32) -> Result<PatternState> {
    MoveGraph::build(f.degree() as u32, k).classify(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(m: &[u32], s: Option<Sign>) -> PatternState {
        PatternState::new(m.to_vec(), s).unwrap()
    }

    const PLUS: Option<Sign> = Some(Sign::Plus);
    const MINUS: Option<Sign> = Some(Sign::Minus);

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_states(4, 2),
            vec![st(&[], MINUS), st(&[], PLUS), st(&[1, 1], None), st(&[1, 1, 1, 1], None)]
        );
        assert_eq!(enumerate_states(3, 2), vec![st(&[1], None), st(&[1, 1, 1], None)]);
        let s = enumerate_states(4, 3);
        assert_eq!(s.len(), 9);
        assert!(s.contains(&st(&[2], PLUS)));
        assert!(s.contains(&st(&[2, 2], MINUS)));
        assert!(s.contains(&st(&[1, 1, 2], None)));
    }

    #[test]
    fn no_moves_at_threshold_two() {
        for d in 2..=9 {
            for s in enumerate_states(d, 2) {
                assert!(moves(&s, d, 2).is_empty(), "{s}");
            }
        }
    }

    #[test]
    fn move_examples() {
        let m = moves(&st(&[2], PLUS), 4, 3);
        assert!(m.contains(&(st(&[1, 1], None), MoveKind::Split)));
        assert!(m.contains(&(st(&[], PLUS), MoveKind::PairRaise)));
        assert!(!m.iter().any(|(t, _)| t == &st(&[], MINUS)));

        let m = moves(&st(&[1, 1], None), 4, 3);
        assert!(m.contains(&(st(&[2], PLUS), MoveKind::Merge)));
        assert!(m.contains(&(st(&[2], MINUS), MoveKind::Merge)));

        let m = moves(&st(&[], PLUS), 6, 3);
        assert_eq!(m, vec![(st(&[2], PLUS), MoveKind::PairDrop)]);

        // a signed merge keeps its sign
        let m = moves(&st(&[2, 2], PLUS), 4, 5);
        assert!(m.contains(&(st(&[4], PLUS), MoveKind::Merge)));
        assert!(!m.contains(&(st(&[4], MINUS), MoveKind::Merge)));
        let m = moves(&st(&[1], None), 3, 4);
        assert!(m.contains(&(st(&[3], None), MoveKind::Absorb)));
    }

    #[test]
    fn moves_are_symmetric() {
        for d in 2..=9 {
            for k in 2..=d {
                for s in enumerate_states(d, k) {
                    for (t, _) in moves(&s, d, k) {
                        assert!(moves(&t, d, k).iter().any(|(u, _)| u == &s), "{s} -> {t} (d={d}, k={k})");
                    }
                }
            }
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count(4, 2), 4);
        assert_eq!(component_count(5, 2), 3);
        assert_eq!(component_count(6, 3), 1);
    }

    #[test]
    fn shortest_paths() {
        let g = MoveGraph::build(4, 3);
        let path = g.shortest_path(&st(&[], PLUS), &st(&[], MINUS)).unwrap();
        assert_eq!(path.first().unwrap().0, st(&[], PLUS));
        assert_eq!(path.last().unwrap().0, st(&[], MINUS));
        assert_eq!(path[0].1, None);
        for w in path.windows(2) {
            assert!(g.adjacent(&w[0].0, &w[1].0));
            assert!(w[1].1.is_some());
        }
        let g2 = MoveGraph::build(4, 2);
        assert!(g2.shortest_path(&st(&[], PLUS), &st(&[], MINUS)).is_none());
    }

    #[test]
    fn classify_examples() {
        let pos = BinaryForm::from_ints(&[1, 0, 2, 0, 1]);
        assert_eq!(classify(&pos, 2).unwrap(), st(&[], PLUS));
        assert_eq!(classify(&pos.neg(), 2).unwrap(), st(&[], MINUS));
        let f = BinaryForm::from_ints(&[0, 1, 0, 1, 0]);
        assert_eq!(classify(&f, 2).unwrap(), st(&[1, 1], None));
        assert!(classify(&BinaryForm::from_ints(&[0, 0, 1]), 2).is_err());
    }
}
