//! Finite abstract simplicial complexes, joins, integer boundary matrices,
//! Smith normal form and reduced integral homology.
//!
//! Join powers of a triangulated circle model the union of all simplices
//! spanned by at most `r` points of a generically embedded circle; that
//! union is a `(2r − 1)`-sphere, which [`caratheodory_check`] confirms at
//! the level of integral homology.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GradedGroup};

pub const DEFAULT_FACE_CAP: usize = 1_000_000;

/// Vertices are `0..labels.len()`, ordered by index; that order orients
/// every simplex. A complex without vertices is the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from facet vertex lists; non-maximal facets are dropped.
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let mut clean: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!("facet vertex {v} out of range")));
            }
            if !f.is_empty() {
                clean.insert(f);
            }
        }
        let all: Vec<Vec<usize>> = clean.into_iter().collect();
        let facets = all
            .iter()
            .filter(|f| !all.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { labels, facets })
    }

    /// Complex on vertices `0..n` labelled by their index.
    pub fn from_facets(n: usize, facets: &[&[usize]]) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::new(labels, facets.iter().map(|f| f.to_vec()).collect())
    }

    pub fn point() -> Self {
        SimplicialComplex { labels: vec!["0".into()], facets: vec![vec![0]] }
    }

    /// Boundary of the `n`-gon.
    pub fn circle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::NotACircle(n));
        }
        let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Self::new((0..n).map(|i| i.to_string()).collect(), facets)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Top dimension; −1 for `{∅}`.
    pub fn dimension(&self) -> i64 {
        let floor = if self.labels.is_empty() { -1 } else { 0 };
        self.facets.iter().map(|f| f.len() as i64 - 1).fold(floor, i64::max)
    }

    /// Faces of every dimension `q ≥ 0`, each list sorted.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); (self.dimension() + 1) as usize];
        // isolated labels still count as vertices
        for v in 0..self.labels.len() {
            by_dim[0].insert(vec![v]);
        }
        for facet in &self.facets {
            let n = facet.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// `(f₀, f₁, …)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    /// Join on disjoint vertex sets; labels are tagged `a.` and `b.`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.labels.len();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("a.{l}"))
            .chain(other.labels.iter().map(|l| format!("b.{l}")))
            .collect();
        SimplicialComplex { labels, facets: join_facets(&self.facets, &other.facets, offset) }
    }

    /// `r`-fold join of `self` with itself, labels tagged `c{i}.`.
    pub fn join_power(&self, r: usize) -> SimplicialComplex {
        let n = self.labels.len();
        let mut labels = Vec::with_capacity(n * r);
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for i in 0..r {
            labels.extend(self.labels.iter().map(|l| format!("c{i}.{l}")));
            facets = join_facets(&facets, &self.facets, i * n);
        }
        SimplicialComplex { labels, facets }
    }

    /// `∂_q` from `q`-faces (columns) to `(q−1)`-faces (rows). `∂₀` is the
    /// augmentation onto the empty simplex.
    pub fn boundary_matrix(&self, q: usize) -> IntegerMatrix {
        let faces = self.faces();
        boundary_from_faces(&faces, q)
    }

    /// Reduced integral homology.
    pub fn homology(&self) -> GradedGroup {
        homology_from_faces(&self.faces())
    }

    /// Number of nonempty faces.
    pub fn face_count(&self) -> usize {
        self.faces().iter().map(Vec::len).sum()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

fn join_facets(a: &[Vec<usize>], b: &[Vec<usize>], offset: usize) -> Vec<Vec<usize>> {
    let empty = [Vec::new()];
    let a = if a.is_empty() { &empty[..] } else { a };
    let b = if b.is_empty() { &empty[..] } else { b };
    let mut out = Vec::with_capacity(a.len() * b.len());
    for s in a {
        for t in b {
            let mut f = s.clone();
            f.extend(t.iter().map(|v| v + offset));
            if !f.is_empty() {
                out.push(f);
            }
        }
    }
    out
}

fn boundary_from_faces(faces: &[Vec<Vec<usize>>], q: usize) -> IntegerMatrix {
    let Some(cols) = faces.get(q) else {
        let rows = if q == 0 { 1 } else { faces.get(q - 1).map_or(0, Vec::len) };
        return IntegerMatrix::zeros(rows, 0);
    };
    if q == 0 {
        let mut m = IntegerMatrix::zeros(1, cols.len());
        for j in 0..cols.len() {
            m.columns[j].push((0, BigInt::one()));
        }
        return m;
    }
    let rows = &faces[q - 1];
    let index: BTreeMap<&[usize], usize> = rows.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (j, face) in cols.iter().enumerate() {
        let mut col: Vec<(usize, BigInt)> = (0..face.len())
            .map(|i| {
                let mut sub = face.clone();
                sub.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (index[sub.as_slice()], BigInt::from(sign))
            })
            .collect();
        col.sort_by_key(|(r, _)| *r);
        m.columns[j] = col;
    }
    m
}

fn homology_from_faces(faces: &[Vec<Vec<usize>>]) -> GradedGroup {
    let top = faces.len();
    // invariant factors of ∂_q for q = 0..=top (∂_top is empty)
    let factors: Vec<Vec<BigInt>> = (0..=top).map(|q| smith_normal_form(&boundary_from_faces(faces, q))).collect();
    let mut h = GradedGroup::new();
    // degree −1: the empty simplex, killed by ∂₀ as soon as a vertex exists
    h.add(-1, &AbelianGroup::free(1 - factors[0].len()));
    for q in 0..top {
        let free = faces[q].len() - factors[q].len() - factors[q + 1].len();
        let torsion = factors[q + 1]
            .iter()
            .filter(|t| !t.is_one())
            .map(|t| t.to_u64().expect("torsion coefficient exceeds u64"));
        h.add(q as i64, &AbelianGroup::from_cyclic_orders(free, torsion));
    }
    h
}

/// Sparse integer matrix stored by columns, entries in increasing row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map_or_else(BigInt::zero, |(_, v)| v.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzeros() == 0
    }

    /// `self · other`; panics on a shape mismatch.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    *acc.entry(*i).or_insert_with(BigInt::zero) += a * b;
                }
            }
            out.columns[j] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).len()
    }
}

/// Positive invariant factors `d₁ | d₂ | … | d_r` with `r` the rank.
///
/// Elimination works on a row-sparse copy and always pivots on an entry
/// of smallest absolute value. Once the pivot column is cleared, the column
/// operations that clear the pivot row touch no other row.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (j, col) in m.columns.iter().enumerate() {
        for (i, v) in col {
            if !v.is_zero() {
                rows[*i].insert(j, v.clone());
                cols[j].insert(*i);
            }
        }
    }

    let mut diagonal = Vec::new();
    while let Some((mut r, mut c)) = smallest_entry(&rows) {
        loop {
            // clear column c with row operations
            let others: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
            let pivot = rows[r][&c].clone();
            for i in others {
                let quot = &rows[i][&c] / &pivot;
                if !quot.is_zero() {
                    let pivot_row: Vec<(usize, BigInt)> = rows[r].iter().map(|(j, v)| (*j, v.clone())).collect();
                    for (j, v) in pivot_row {
                        let entry = rows[i].entry(j).or_insert_with(BigInt::zero);
                        *entry -= &quot * v;
                        if entry.is_zero() {
                            rows[i].remove(&j);
                            cols[j].remove(&i);
                        } else {
                            cols[j].insert(i);
                        }
                    }
                }
            }
            if let Some(i) = cols[c].iter().copied().filter(|&i| i != r).min_by_key(|&i| rows[i][&c].abs()) {
                r = i;
                continue;
            }
            // column c is now zero outside row r; clear row r with column operations
            let pivot = rows[r][&c].clone();
            let rest: Vec<usize> = rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in rest {
                let v = rows[r][&j].clone();
                let rem = &v - (&v / &pivot) * &pivot;
                if rem.is_zero() {
                    rows[r].remove(&j);
                    cols[j].remove(&r);
                } else {
                    rows[r].insert(j, rem);
                }
            }
            if let Some(j) = rows[r].keys().copied().filter(|&j| j != c).min_by_key(|j| rows[r][j].abs()) {
                c = j;
                continue;
            }
            diagonal.push(pivot.abs());
            rows[r].clear();
            cols[c].clear();
            break;
        }
    }
    normalize_divisibility(diagonal)
}

fn smallest_entry(rows: &[BTreeMap<usize, BigInt>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                let unit = a.is_one();
                best = Some((i, *j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn normalize_divisibility(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Outcome of the join-power sphere check.
#[derive(Clone, Debug, PartialEq)]
pub struct CaratheodoryReport {
    pub r: usize,
    pub n: usize,
    pub f_vector: Vec<usize>,
    pub homology: GradedGroup,
    pub is_sphere: bool,
}

/// Homology of the `r`-fold join power of the `n`-gon against `S^{2r−1}`.
pub fn caratheodory_check(r: usize, n: usize, face_cap: usize) -> Result<CaratheodoryReport> {
    if r == 0 {
        return Err(Error::InvalidComplex("join power needs r ≥ 1".into()));
    }
    let circle = SimplicialComplex::circle(n)?;
    // faces of the join power: (1 + n z + n z²)^r minus the empty face
    let faces = (0..r).try_fold(1usize, |acc, _| acc.checked_mul(2 * n + 1)).map(|t| t - 1);
    match faces {
        Some(f) if f <= face_cap => {}
        other => return Err(Error::FaceCap { faces: other.unwrap_or(usize::MAX), cap: face_cap }),
    }
    let complex = circle.join_power(r);
    let all = complex.faces();
    let homology = homology_from_faces(&all);
    let sphere = GradedGroup::new().with(2 * r as i64 - 1, AbelianGroup::free(1));
    Ok(CaratheodoryReport {
        r,
        n,
        f_vector: all.iter().map(Vec::len).collect(),
        is_sphere: homology == sphere,
        homology,
    })
}
