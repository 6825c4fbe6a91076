//! The spectral sequence of the filtered conical resolution of `Σ_k`, and the
//! closed-form cohomology of its complement.
//!
//! Let `P = ⌊d/k⌋`, the largest number of distinct real lines on which a
//! nonzero form of degree `d` can vanish to order `k`. The resolution of
//! `Σ_k ⊂ HP_d` is filtered by `F₁ ⊂ … ⊂ F_P ⊂ F_{P+1}`:
//!
//! * for `1 ≤ p ≤ P`, `F_p ∖ F_{p−1}` fibres over the configuration space
//!   `B(ℝP¹, p)` with fibre (open `(p−1)`-simplex) × `ℝ^{d+1−pk}`, so it is a
//!   manifold of dimension `d − p(k−2)`;
//! * `F_{P+1} ∖ F_P` is an open disc of dimension `2P`.
//!
//! The Borel–Moore homology of a stratum is decided by the product of three
//! orientation characters (base, simplex bundle, vector bundle). The first
//! two agree, so only the vector bundle matters: the stratum has `ℤ` in its
//! top two degrees when `k(d+1−pk)` is even and a single `ℤ₂` one below the
//! top otherwise. These cells form `E¹`. The only nonzero differential is
//! `d₁ : E¹_{P+1,P−1} = ℤ → E¹_{P,P−1} = ℤ₂` when `k` is odd and `k | d`;
//! after it the sequence has collapsed. Alexander duality in
//! `HP_d ≅ ℝ^{d+1}` turns `H̄_{d−l}(Σ_k)` into `H̃^l(HP_d ∖ Σ_k)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GradedGroup};

/// Degree `d` and forbidden multiplicity `k`, with `d ≥ k ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Problem {
    d: u32,
    k: u32,
}

impl Problem {
    pub fn new(d: i64, k: i64) -> Result<Self> {
        if k < 2 || d < k || d > u32::MAX as i64 {
            return Err(Error::InvalidProblem { d, k });
        }
        Ok(Problem { d: d as u32, k: k as u32 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `P = ⌊d/k⌋`.
    pub fn max_lines(&self) -> u32 {
        self.d / self.k
    }

    /// Whether the one nontrivial `d₁` occurs: `k` odd and `k | d`.
    pub fn has_d1(&self) -> bool {
        self.k % 2 == 1 && self.d.is_multiple_of(self.k)
    }

    fn check_stratum(&self, p: u32, max: u32) -> Result<()> {
        if p == 0 || p > max {
            return Err(Error::StratumOutOfRange { p, max });
        }
        Ok(())
    }
}

/// Orientation characters of the stratum `F_p ∖ F_{p−1}`, `1 ≤ p ≤ P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumCharacters {
    /// `B(ℝP¹, p)` is orientable iff `p` is odd.
    pub base: i32,
    /// The bundle of open `(p−1)`-simplices is orientable iff `p` is odd.
    pub simplex: i32,
    /// The `ℝ^{d+1−pk}` bundle is orientable iff `k(d+1−pk)` is even.
    pub fiber: i32,
}

impl StratumCharacters {
    pub fn product(&self) -> i32 {
        self.base * self.simplex * self.fiber
    }
}

pub fn stratum_characters(pr: &Problem, p: u32) -> Result<StratumCharacters> {
    pr.check_stratum(p, pr.max_lines())?;
    let parity = |odd: bool| if odd { 1 } else { -1 };
    let fiber_rank = pr.d + 1 - p * pr.k;
    Ok(StratumCharacters {
        base: parity(p % 2 == 1),
        simplex: parity(p % 2 == 1),
        fiber: parity((pr.k * fiber_rank).is_multiple_of(2)),
    })
}

/// `+1` iff the stratum's Borel–Moore homology is `ℤ` in its top two degrees.
pub fn stratum_character(pr: &Problem, p: u32) -> Result<i32> {
    Ok(stratum_characters(pr, p)?.product())
}

/// Real dimension of `F_p ∖ F_{p−1}`, `1 ≤ p ≤ P + 1`.
pub fn stratum_dimension(pr: &Problem, p: u32) -> Result<i64> {
    let big_p = pr.max_lines();
    pr.check_stratum(p, big_p + 1)?;
    let (d, k, p) = (pr.d as i64, pr.k as i64, p as i64);
    Ok(if p == big_p as i64 + 1 { 2 * big_p as i64 } else { d - p * (k - 2) })
}

pub fn stratum_bm_homology(pr: &Problem, p: u32) -> Result<GradedGroup> {
    let top = stratum_dimension(pr, p)?;
    if p == pr.max_lines() + 1 {
        return Ok(GradedGroup::new().with(top, AbelianGroup::free(1)));
    }
    Ok(if stratum_character(pr, p)? == 1 {
        GradedGroup::new().with(top, AbelianGroup::free(1)).with(top - 1, AbelianGroup::free(1))
    } else {
        GradedGroup::new().with(top - 1, AbelianGroup::cyclic(2))
    })
}

/// One page `E^r_{p,q}` of the filtration spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    problem: Problem,
    page: u32,
    cells: BTreeMap<(u32, i64), AbelianGroup>,
}

impl SpectralPage {
    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn page(&self) -> u32 {
        self.page
    }

    pub fn cell(&self, p: u32, q: i64) -> AbelianGroup {
        self.cells.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero cells ordered by `p`, then by descending `q`.
    pub fn cells(&self) -> Vec<(u32, i64, &AbelianGroup)> {
        let mut out: Vec<_> = self.cells.iter().map(|(&(p, q), g)| (p, q, g)).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        out
    }

    /// `Σ (−1)^{p+q} rank E_{p,q}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.total_degree_table().euler_characteristic()
    }

    /// Direct sum of the cells along each antidiagonal `p + q = m`.
    pub fn total_degree_table(&self) -> GradedGroup {
        let mut out = GradedGroup::new();
        for (&(p, q), g) in &self.cells {
            out.add(p as i64 + q, g);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells()
            .into_iter()
            .map(|(p, q, g)| json!({ "p": p, "q": q, "free": g.free_rank(), "torsion": g.torsion() }))
            .collect();
        json!({
            "schema": 1,
            "d": self.problem.d,
            "k": self.problem.k,
            "page": self.page,
            "cells": cells,
        })
    }

    /// Text grid with `q` decreasing downwards and `p` increasing to the right.
    pub fn render_grid(&self) -> String {
        let big_p = self.problem.max_lines();
        let (Some(qmin), Some(qmax)) = (
            self.cells.keys().map(|&(_, q)| q).min(),
            self.cells.keys().map(|&(_, q)| q).max(),
        ) else {
            return String::from("(empty page)\n");
        };
        let cols: Vec<u32> = (1..=big_p + 1).collect();
        let text = |p: u32, q: i64| match self.cells.get(&(p, q)) {
            Some(g) => g.to_string(),
            None => ".".to_string(),
        };
        let width = cols
            .iter()
            .flat_map(|&p| (qmin..=qmax).map(move |q| (p, q)))
            .map(|(p, q)| text(p, q).chars().count())
            .chain(cols.iter().map(|p| p.to_string().len()))
            .max()
            .unwrap_or(1);
        let label_width = ["q\\p".len(), qmin.to_string().len(), qmax.to_string().len()]
            .into_iter()
            .max()
            .unwrap_or(3);
        let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w.saturating_sub(s.chars().count())), s);
        let mut out = String::new();
        let _ = write!(out, "{} |", pad("q\\p", label_width));
        for &p in &cols {
            let _ = write!(out, " {}", pad(&p.to_string(), width));
        }
        out.push('\n');
        for q in (qmin..=qmax).rev() {
            let _ = write!(out, "{} |", pad(&q.to_string(), label_width));
            for &p in &cols {
                let _ = write!(out, " {}", pad(&text(p, q), width));
            }
            out.push('\n');
        }
        out
    }
}

pub fn e1_page(pr: &Problem) -> SpectralPage {
    let mut cells = BTreeMap::new();
    for p in 1..=pr.max_lines() + 1 {
        let stratum = stratum_bm_homology(pr, p).expect("p in range");
        for (m, g) in stratum.iter() {
            cells.insert((p, m - p as i64), g.clone());
        }
    }
    SpectralPage { problem: *pr, page: 1, cells }
}

/// The lowest nonzero row of column `P` coincides with the row `P − 1` of
/// the disc cell in column `P + 1`. This holds exactly when `k | d`.
pub fn top_columns_share_row(pr: &Problem) -> bool {
    let page = e1_page(pr);
    let big_p = pr.max_lines();
    let lowest = page.cells.keys().filter(|&&(p, _)| p == big_p).map(|&(_, q)| q).min();
    lowest == Some(big_p as i64 - 1)
}

/// `E¹ → E²`. For `k` odd with `k | d` the differential
/// `ℤ = E¹_{P+1,P−1} → E¹_{P,P−1} = ℤ₂` is onto: the target dies and the
/// kernel, again `ℤ`, stays. In every other case `d₁ = 0`. `E² = E^∞`.
pub fn apply_d1(page: &SpectralPage) -> Result<SpectralPage> {
    if page.page != 1 {
        return Err(Error::WrongPage { expected: 1, got: page.page });
    }
    let pr = page.problem;
    let mut next = page.clone();
    next.page = 2;
    if pr.has_d1() {
        let big_p = pr.max_lines();
        let row = big_p as i64 - 1;
        let target = page.cell(big_p, row);
        let source = page.cell(big_p + 1, row);
        if target != AbelianGroup::cyclic(2) || source != AbelianGroup::free(1) {
            return Err(Error::UnexpectedPage(format!(
                "d₁ expects ℤ → ℤ₂ in row {row}, found {source} → {target}"
            )));
        }
        next.cells.remove(&(big_p, row));
    }
    Ok(next)
}

/// `H̄_*(Σ_k)`, assembled from `E^∞ = E²` by degreewise direct sum.
pub fn discriminant_bm_homology(pr: &Problem) -> GradedGroup {
    apply_d1(&e1_page(pr)).expect("E¹ has the expected shape").total_degree_table()
}

/// `H̃^l(HP_d ∖ Σ_k) ≅ H̄_{d−l}(Σ_k)`, read as a pure index flip.
pub fn alexander_dual(h: &GradedGroup, d: u32) -> GradedGroup {
    h.reindex(|m| d as i64 - m)
}

/// Reduced cohomology of `HP_d ∖ Σ_k` straight from the case analysis:
///
/// 1. `k` even: `ℤ` in dimensions `p(k−2)` and `p(k−2)+1` for `1 ≤ p ≤ P`,
///    and `ℤ` in dimension `d − 2P`;
/// 2. `k` odd, `k ∤ d`: for each `1 ≤ p ≤ P`, `ℤ` in `p(k−2)` and `p(k−2)+1`
///    if `d − pk` is odd, `ℤ₂` in `p(k−2)+1` if it is even; plus `ℤ` in `d − 2P`;
/// 3. `k` odd, `k | d`: as in 2 without the `ℤ₂` in dimension `d − 2P + 1`.
pub fn closed_form_groups(pr: &Problem) -> GradedGroup {
    let (d, k) = (pr.d as i64, pr.k as i64);
    let big_p = pr.max_lines() as i64;
    let mut h = GradedGroup::new();
    let z = AbelianGroup::free(1);
    let z2 = AbelianGroup::cyclic(2);
    if k % 2 == 0 {
        for p in 1..=big_p {
            h.add(p * (k - 2), &z);
            h.add(p * (k - 2) + 1, &z);
        }
    } else {
        for p in 1..=big_p {
            if (d - p * k) % 2 != 0 {
                h.add(p * (k - 2), &z);
                h.add(p * (k - 2) + 1, &z);
            } else if !(d % k == 0 && p == d / k) {
                h.add(p * (k - 2) + 1, &z2);
            }
        }
    }
    h.add(d - 2 * big_p, &z);
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Degree { degree: i64, spectral: AbelianGroup, closed: AbelianGroup },
    Euler { e1: i64, answer: i64 },
}

/// Both routes to `H̃^*(HP_d ∖ Σ_k)` side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub problem: Problem,
    pub spectral: GradedGroup,
    pub closed: GradedGroup,
    pub e1_euler: i64,
    /// `Σ_l (−1)^{d−l} rank H̃^l`.
    pub answer_euler: i64,
    pub mismatch: Option<Mismatch>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn crosscheck(pr: &Problem) -> CrossCheck {
    let e1 = e1_page(pr);
    let spectral = alexander_dual(&discriminant_bm_homology(pr), pr.d);
    let closed = closed_form_groups(pr);
    let e1_euler = e1.euler_characteristic();
    let answer_euler = spectral.reindex(|l| pr.d as i64 - l).euler_characteristic();

    let degrees: std::collections::BTreeSet<i64> =
        spectral.iter().chain(closed.iter()).map(|(l, _)| l).collect();
    let mut mismatch = degrees.into_iter().find_map(|l| {
        let (a, b) = (spectral.get(l), closed.get(l));
        (a != b).then_some(Mismatch::Degree { degree: l, spectral: a, closed: b })
    });
    if mismatch.is_none() && e1_euler != answer_euler {
        mismatch = Some(Mismatch::Euler { e1: e1_euler, answer: answer_euler });
    }
    CrossCheck { problem: *pr, spectral, closed, e1_euler, answer_euler, mismatch }
}

/// Every valid `(d, k)` with `d ≤ dmax` and `k ≤ kmax`, ordered by `d` then `k`.
pub fn sweep(dmax: u32, kmax: u32) -> Vec<CrossCheck> {
    let mut out = Vec::new();
    for d in 2..=dmax {
        for k in 2..=d.min(kmax) {
            let pr = Problem::new(d as i64, k as i64).expect("valid by construction");
            out.push(crosscheck(&pr));
        }
    }
    out
}
