//! Binary forms `f(x, y) = Σ cᵢ x^{d−i} yⁱ` with exact rational coefficients.
//!
//! Root lines of `f` are points of ℝP¹. The line `y = 0` is the root "at
//! infinity" of the dehomogenization `f(x, 1)`; it is split off explicitly as
//! the largest power of `y` dividing `f` before any univariate work.
//!
//! Literal syntax, shared by the CLI and the tests: comma-separated exact
//! rationals `c0,c1,...,cd`, each an integer or `p/q`, for example
//! `1,0,-1/4` for `x² − y²/4`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{self, Poly, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Q>,
}

impl BinaryForm {
    /// Form of degree `coeffs.len() − 1`; panics on an empty list.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| poly::q(c)).collect())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The linear form `a·x + b·y`.
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![a, b])
    }

    /// `x² + y²`.
    pub fn circle() -> Self {
        Self::from_ints(&[1, 0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, x: &Q, y: &Q) -> Q {
        let d = self.degree();
        let mut acc = Q::zero();
        let mut ypow = Q::one();
        let mut xpows = vec![Q::one(); d + 1];
        for i in 1..=d {
            xpows[i] = &xpows[i - 1] * x;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &xpows[d - i] * &ypow;
            ypow *= y;
        }
        acc
    }

    /// Floating-point evaluation, used by numerical loop tracking.
    pub fn evaluate_f64(&self, x: f64, y: f64) -> f64 {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| to_f64(c) * x.powi((d - i) as i32) * y.powi(i as i32))
            .sum()
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: u32) -> BinaryForm {
        (0..e).fold(BinaryForm::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &Q) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> BinaryForm {
        self.scale(&-Q::one())
    }

    /// Same-degree sum; panics on a degree mismatch.
    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    /// `(1 − t)·self + t·other`.
    pub fn lerp(&self, other: &BinaryForm, t: &Q) -> BinaryForm {
        self.scale(&(Q::one() - t)).add(&other.scale(t))
    }

    /// `f(a·x + b·y, c·x + e·y)`.
    pub fn substitute(&self, a: &Q, b: &Q, c: &Q, e: &Q) -> BinaryForm {
        let d = self.degree();
        let xs = BinaryForm::linear(a.clone(), b.clone());
        let ys = BinaryForm::linear(c.clone(), e.clone());
        let mut out = BinaryForm::new(vec![Q::zero(); d + 1]);
        for (i, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = xs.pow((d - i) as u32).mul(&ys.pow(i as u32)).scale(coef);
            out = out.add(&term);
        }
        out
    }

    /// `f(a·x + b·y, −b·x + a·y)`, a rotation when `a² + b² = 1`.
    pub fn rotate(&self, a: &Q, b: &Q) -> BinaryForm {
        self.substitute(a, b, &-b.clone(), a)
    }

    /// `f(y, x)`.
    pub fn swap_variables(&self) -> BinaryForm {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinaryForm::new(c)
    }

    /// Splits `f = y^e · g` with `y ∤ g` and returns `(e, g(x, 1))`.
    fn dehomogenize(&self) -> (u32, Poly) {
        let d = self.degree();
        // coefficient of x^j in f(x, 1) is c_{d−j}
        let p = Poly::new(self.coeffs.iter().rev().cloned().collect());
        let e = d - p.degree().unwrap_or(0);
        (e as u32, p)
    }

    fn homogenize(p: &Poly, degree: usize) -> BinaryForm {
        let mut coeffs = vec![Q::zero(); degree + 1];
        for (j, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - j] = c.clone();
        }
        BinaryForm::new(coeffs)
    }

    /// `f = scale · Π gⱼ^j` with squarefree, pairwise coprime `gⱼ`, each
    /// normalized so its first nonzero coefficient is 1.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let (e, p) = self.dehomogenize();
        let scale = p.lead();
        let mut parts: Vec<(BinaryForm, u32)> = poly::squarefree(&p)
            .into_iter()
            .map(|(g, j)| {
                let deg = g.degree().unwrap_or(0);
                (BinaryForm::homogenize(&g, deg), j)
            })
            .collect();
        if e > 0 {
            let y = BinaryForm::linear(Q::zero(), Q::one());
            match parts.iter_mut().find(|(_, j)| *j == e) {
                Some((g, _)) => *g = g.mul(&y),
                None => parts.push((y, e)),
            }
        }
        parts.sort_by_key(|(_, j)| *j);
        Ok(SquarefreeDecomposition { scale, parts })
    }

    /// Distinct real root lines of a squarefree form.
    pub fn real_root_count(&self) -> usize {
        let (e, p) = self.dehomogenize();
        let affine = if p.degree().unwrap_or(0) == 0 {
            0
        } else {
            poly::SturmChain::new(&p).count_all()
        };
        affine + usize::from(e > 0)
    }

    /// Multiplicities of the real root lines, ascending.
    pub fn real_root_multiplicities(&self) -> Result<Vec<u32>> {
        let dec = self.squarefree_decomposition()?;
        let mut mults = Vec::new();
        for (g, j) in &dec.parts {
            mults.extend(std::iter::repeat_n(*j, g.real_root_count()));
        }
        mults.sort_unstable();
        Ok(mults)
    }

    /// Whether `f` avoids the discriminant: nonzero, and every real root
    /// line has multiplicity at most `k − 1`. Complex roots are free.
    pub fn in_complement(&self, k: u32) -> bool {
        match self.real_root_multiplicities() {
            Ok(m) => m.iter().all(|&j| j < k),
            Err(_) => false,
        }
    }

    /// Sign at the first of `(1,0), (0,1), (1,1), (1,2), (1,3), …` that is
    /// not a root; 0 only for the zero form.
    pub fn sign_off_roots(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let candidates = [(1, 0), (0, 1)].into_iter().chain((1..).map(|n| (1, n)));
        for (x, y) in candidates {
            let v = self.evaluate(&poly::q(x), &poly::q(y));
            if !v.is_zero() {
                return poly::sign(&v);
            }
        }
        unreachable!()
    }

    /// Combinatorial class of a form in the complement of `Σ_k`.
    pub fn pattern(&self, k: u32) -> Result<PatternState> {
        let mults = self.real_root_multiplicities()?;
        if let Some(&m) = mults.iter().find(|&&m| m >= k) {
            return Err(Error::SingularForm { multiplicity: m, k });
        }
        let sign = if mults.iter().all(|m| m % 2 == 0) {
            Some(if self.sign_off_roots() > 0 { Sign::Plus } else { Sign::Minus })
        } else {
            None
        };
        Ok(PatternState { mults, sign })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| json!(c.to_string())).collect())
    }
}

pub(crate) fn to_f64(c: &Q) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for tok in s.split(',') {
            coeffs.push(parse_rational(tok.trim())?);
        }
        Ok(BinaryForm::new(coeffs))
    }
}

fn parse_rational(tok: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad coefficient {tok:?}"));
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub scale: Q,
    /// `(gⱼ, j)` by increasing multiplicity `j`.
    pub parts: Vec<(BinaryForm, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> BinaryForm {
        self.parts
            .iter()
            .fold(BinaryForm::constant(self.scale.clone()), |acc, (g, j)| acc.mul(&g.pow(*j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Real root multiplicities of a nonsingular form, plus the global sign
/// when every multiplicity is even (then `f` never changes sign).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternState {
    mults: Vec<u32>,
    sign: Option<Sign>,
}

impl PatternState {
    /// Sorts `mults`; the sign must be present exactly when all entries are even.
    pub fn new(mut mults: Vec<u32>, sign: Option<Sign>) -> Result<Self> {
        mults.sort_unstable();
        if mults.contains(&0) {
            return Err(Error::Parse("zero multiplicity in pattern".into()));
        }
        let all_even = mults.iter().all(|m| m % 2 == 0);
        if all_even != sign.is_some() {
            return Err(Error::Parse(
                "pattern sign is required exactly when all multiplicities are even".into(),
            ));
        }
        Ok(PatternState { mults, sign })
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    pub fn root_sum(&self) -> u32 {
        self.mults.iter().sum()
    }

    pub fn all_even(&self) -> bool {
        self.mults.iter().all(|m| m % 2 == 0)
    }

    /// Whether this is a state of some form of degree `d` off `Σ_k`.
    pub fn is_valid_for(&self, d: u32, k: u32) -> bool {
        let s = self.root_sum();
        s <= d && (d - s).is_multiple_of(2) && self.mults.iter().all(|&m| m >= 1 && m < k)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mults": self.mults,
            "sign": self.sign.map(Sign::as_i32),
        })
    }
}

impl fmt::Display for PatternState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.mults.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", m.join(","))?;
        match self.sign {
            Some(Sign::Plus) => write!(f, "+"),
            Some(Sign::Minus) => write!(f, "-"),
            None => Ok(()),
        }
    }
}

/// A point of ℝP¹ given by a nonzero spanning vector `(u, v)`. The
/// associated linear factor is `v·x − u·y`; scaling the vector by `λ`
/// scales the factor by `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    u: Q,
    v: Q,
}

impl Direction {
    pub fn new(u: Q, v: Q) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::InvalidRootDatum("zero direction vector".into()));
        }
        Ok(Direction { u, v })
    }

    /// Unit vector `(cos θ, sin θ)` with rational entries.
    pub fn pythagorean(cos: Q, sin: Q) -> Result<Self> {
        if &cos * &cos + &sin * &sin != Q::one() {
            return Err(Error::InvalidRootDatum(format!("({cos}, {sin}) is not on the unit circle")));
        }
        Direction::new(cos, sin)
    }

    pub fn u(&self) -> &Q {
        &self.u
    }

    pub fn v(&self) -> &Q {
        &self.v
    }

    pub fn factor(&self) -> BinaryForm {
        BinaryForm::linear(self.v.clone(), -self.u.clone())
    }

    pub fn same_line(&self, other: &Direction) -> bool {
        (&self.u * &other.v - &self.v * &other.u).is_zero()
    }
}

/// Explicit root data of a form: real root lines with multiplicities, a list
/// of positive definite factors carrying the complex roots, and a scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub real_roots: Vec<(Direction, u32)>,
    pub definite: Vec<BinaryForm>,
    pub scale: Q,
}

impl RootDatum {
    /// Number of complex conjugate root pairs.
    pub fn complex_pairs(&self) -> usize {
        self.definite.iter().map(|q| q.degree() / 2).sum()
    }

    pub fn degree(&self) -> usize {
        let real: u32 = self.real_roots.iter().map(|(_, m)| m).sum();
        real as usize + 2 * self.complex_pairs()
    }
}

/// Expands `scale · Π Lᵢ^{mᵢ} · Π Qⱼ`.
pub fn from_roots(datum: &RootDatum) -> Result<BinaryForm> {
    if datum.scale.is_zero() {
        return Err(Error::InvalidRootDatum("zero scale".into()));
    }
    for (i, (a, m)) in datum.real_roots.iter().enumerate() {
        if *m == 0 {
            return Err(Error::InvalidRootDatum("zero multiplicity".into()));
        }
        if datum.real_roots[..i].iter().any(|(b, _)| a.same_line(b)) {
            return Err(Error::CoincidentRoots);
        }
    }
    for q in &datum.definite {
        let positive = q.degree() >= 2
            && q.degree() % 2 == 0
            && q.real_root_count_any() == 0
            && q.sign_off_roots() > 0;
        if !positive {
            return Err(Error::InvalidRootDatum(format!("{q} is not positive definite")));
        }
    }
    let mut f = BinaryForm::constant(datum.scale.clone());
    for (dir, m) in &datum.real_roots {
        f = f.mul(&dir.factor().pow(*m));
    }
    for q in &datum.definite {
        f = f.mul(q);
    }
    Ok(f)
}

impl BinaryForm {
    /// Distinct real root lines of any nonzero form.
    pub(crate) fn real_root_count_any(&self) -> usize {
        match self.squarefree_decomposition() {
            Ok(dec) => dec.parts.iter().map(|(g, _)| g.real_root_count()).sum(),
            Err(_) => 0,
        }
    }

    /// Whether the form has no real root line and is positive.
    pub fn is_positive_definite(&self) -> bool {
        !self.is_zero() && self.real_root_count_any() == 0 && self.sign_off_roots() > 0
    }

    /// Real root lines with multiplicities, sorted by multiplicity. Irrational
    /// lines are replaced by a rational line within `width` of the true slope.
    pub(crate) fn root_lines(&self, width: &Q) -> Result<Vec<RootLine>> {
        let dec = self.squarefree_decomposition()?;
        let mut out = Vec::new();
        for (g, j) in &dec.parts {
            let (e, p) = g.dehomogenize();
            if e > 0 {
                out.push(RootLine {
                    direction: Direction::new(Q::one(), Q::zero())?,
                    multiplicity: *j,
                    exact: true,
                });
            }
            for root in poly::isolate_real_roots(&p, width) {
                let (t, exact) = match root {
                    poly::RealRoot::Exact(t) => (t, true),
                    poly::RealRoot::Between(lo, hi) => (poly::simplest_between(&lo, &hi), false),
                };
                out.push(RootLine { direction: Direction::new(t, Q::one())?, multiplicity: *j, exact });
            }
        }
        Ok(out)
    }

    /// Quotient of `self` by `divisor` and whether the division is exact.
    /// Assumes `y` divides both to the same power.
    pub(crate) fn divide(&self, divisor: &BinaryForm) -> (BinaryForm, bool) {
        let (_, p) = self.dehomogenize();
        let (_, r) = divisor.dehomogenize();
        let (quot, rem) = p.div_rem(&r);
        let deg = self.degree() - divisor.degree();
        (BinaryForm::homogenize(&quot, deg), rem.is_zero())
    }
}

/// A real root line found by [`BinaryForm::root_lines`].
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RootLine {
    pub direction: Direction,
    pub multiplicity: u32,
    pub exact: bool,
}
