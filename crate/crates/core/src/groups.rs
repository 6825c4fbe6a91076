//! Finitely generated abelian groups and degree-indexed tables of them.
//!
//! An [`AbelianGroup`] is stored as a free rank plus a list of invariant
//! factors `t₁ | t₂ | … | tₛ`, all at least 2. Every constructor
//! canonicalizes, so derived equality is isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Map, Value};

/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/tₛ` in invariant-factor form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `ℤ^rank`.
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// The cyclic group `ℤ/n`, with the usual reading `ℤ/0 = ℤ`.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, [n])
    }

    /// Direct sum of `ℤ^free_rank` and the cyclic groups `ℤ/nᵢ`.
    ///
    /// Orders equal to 1 vanish and an order of 0 contributes a free summand,
    /// which is how Smith normal form diagonals read.
    pub fn from_cyclic_orders(free_rank: usize, orders: impl IntoIterator<Item = u64>) -> Self {
        let mut free_rank = free_rank;
        let mut torsion = Vec::new();
        for n in orders {
            match n {
                0 => free_rank += 1,
                1 => {}
                n => torsion.push(n),
            }
        }
        AbelianGroup { free_rank, torsion: invariant_factors(torsion) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors, each dividing the next.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let torsion = self.torsion.iter().chain(&other.torsion).copied().collect();
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion: invariant_factors(torsion),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "free": self.free_rank, "torsion": self.torsion })
    }
}

/// Brings a list of cyclic orders (all ≥ 2) into divisibility order.
///
/// `ℤ/a ⊕ ℤ/b ≅ ℤ/gcd(a,b) ⊕ ℤ/lcm(a,b)`; one sweep over all pairs leaves
/// each entry dividing every later one.
fn invariant_factors(mut orders: Vec<u64>) -> Vec<u64> {
    orders.sort_unstable();
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            let (a, b) = (orders[i], orders[j]);
            let g = a.gcd(&b);
            orders[i] = g;
            orders[j] = (a / g).checked_mul(b).expect("torsion order overflows u64");
        }
    }
    orders.retain(|&n| n > 1);
    orders
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

fn subscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ{}", superscript(r))),
        }
        // runs of equal factors collapse into a power
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&u| u == t).count();
            if run == 1 {
                parts.push(format!("ℤ{}", subscript(t)));
            } else {
                parts.push(format!("(ℤ{}){}", subscript(t), superscript(run)));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Abelian groups indexed by integer degree; absent degrees are trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    entries: BTreeMap<i64, AbelianGroup>,
}

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    /// Direct-sums `group` into the entry at `degree`.
    pub fn add(&mut self, degree: i64, group: &AbelianGroup) {
        if group.is_trivial() {
            return;
        }
        let slot = self.entries.entry(degree).or_default();
        *slot = slot.direct_sum(group);
    }

    pub fn with(mut self, degree: i64, group: AbelianGroup) -> Self {
        self.add(degree, &group);
        self
    }

    pub fn get(&self, degree: i64) -> AbelianGroup {
        self.entries.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &AbelianGroup)> + '_ {
        self.entries.iter().map(|(&d, g)| (d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        let mut out = self.clone();
        for (d, g) in other.iter() {
            out.add(d, g);
        }
        out
    }

    /// Moves every entry from degree `m` to `f(m)`, summing collisions.
    pub fn reindex(&self, f: impl Fn(i64) -> i64) -> GradedGroup {
        let mut out = GradedGroup::new();
        for (d, g) in self.iter() {
            out.add(f(d), g);
        }
        out
    }

    pub fn total_free_rank(&self) -> usize {
        self.entries.values().map(AbelianGroup::free_rank).sum()
    }

    /// `Σ (−1)^m · rank(G_m)`; torsion does not contribute.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, g)| {
                let r = g.free_rank() as i64;
                if d.rem_euclid(2) == 0 { r } else { -r }
            })
            .sum()
    }

    /// JSON object keyed by decimal degree strings, ascending numerically.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (d, g) in self.iter() {
            map.insert(d.to_string(), g.to_json());
        }
        Value::Object(map)
    }
}

impl FromIterator<(i64, AbelianGroup)> for GradedGroup {
    fn from_iter<I: IntoIterator<Item = (i64, AbelianGroup)>>(iter: I) -> Self {
        let mut out = GradedGroup::new();
        for (d, g) in iter {
            out.add(d, &g);
        }
        out
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(d, g)| format!("{d}: {g}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
