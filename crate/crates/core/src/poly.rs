//! Dense univariate polynomials over ℚ: Sturm sequences, Yun's squarefree
//! splitting and real root isolation. Used by the binary form layer on
//! dehomogenized forms `f(x, 1)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficients in ascending order, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Q::one()] }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// Signs at every point are unchanged, so Sturm sign counts survive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Poly::new(ints.into_iter().map(|c| Q::from_integer(c / &content)).collect())
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign(&self.lead());
                if positive || d % 2 == 0 { s } else { -s }
            }
        }
    }
}

pub fn sign(x: &Q) -> i32 {
    match x.cmp(&Q::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Where a Sturm chain is evaluated.
#[derive(Clone, Debug)]
pub enum Point {
    NegInf,
    At(Q),
    PosInf,
}

/// Sturm chain `p, p', −rem(p, p'), …` with content normalization per step.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&q(-1)).primitive());
        }
        SturmChain { chain }
    }

    pub fn sign_changes(&self, at: &Point) -> usize {
        let signs = self.chain.iter().map(|p| match at {
            Point::NegInf => p.sign_at_infinity(false),
            Point::PosInf => p.sign_at_infinity(true),
            Point::At(x) => sign(&p.eval(x)),
        });
        let mut changes = 0;
        let mut last = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in `(a, b]`, where `a` is not a root.
    pub fn count_between(&self, a: &Point, b: &Point) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }

    pub fn count_all(&self) -> usize {
        self.count_between(&Point::NegInf, &Point::PosInf)
    }
}

/// Yun's algorithm: `p = lead · Π gᵢ^i` with monic, squarefree, pairwise
/// coprime `gᵢ`. Only factors of positive degree are returned.
pub fn squarefree(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = Poly::gcd(&f, &df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut dpoly = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = Poly::gcd(&b, &dpoly);
        let nb = b.div_rem(&a).0;
        let nc = dpoly.div_rem(&a).0;
        dpoly = nc.sub(&nb.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Cauchy bound: every real root lies strictly inside `(−B, B)`.
pub fn root_bound(p: &Poly) -> Q {
    let lead = p.lead().abs();
    let max = p
        .coeffs
        .iter()
        .rev()
        .skip(1)
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Q::zero);
    max + Q::one()
}

/// A real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Q),
    /// Unique root in the open interval; neither endpoint is a root.
    Between(Q, Q),
}

impl RealRoot {
    pub fn lower(&self) -> &Q {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Between(a, _) => a,
        }
    }
}

/// Isolates every real root of the squarefree `p` into disjoint intervals
/// of width at most `width`, in increasing order. Rational roots come back
/// as [`RealRoot::Exact`].
pub fn isolate_real_roots(p: &Poly, width: &Q) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let prim = p.primitive();
    let sturm = SturmChain::new(&prim);
    // rational roots r/s of an integer polynomial have s | lead, and two
    // distinct rationals with denominators ≤ s are 1/s² apart
    let lead = prim.lead().abs();
    let detect = (lead.clone() * &lead * q(2)).recip();
    let target = if &detect < width { detect } else { width.clone() };

    let bound = root_bound(&prim);
    let mut pending = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        let n = sturm.count_between(&Point::At(lo.clone()), &Point::At(hi.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo <= target {
            found.push(settle_interval(&prim, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / q(2);
        if prim.eval(&mid).is_zero() {
            // carve out a root-free neighbourhood around the exact root
            let mut delta = (&hi - &lo) / q(4);
            loop {
                let a = &mid - &delta;
                let b = &mid + &delta;
                if !prim.eval(&a).is_zero()
                    && !prim.eval(&b).is_zero()
                    && sturm.count_between(&Point::At(a.clone()), &Point::At(b.clone())) == 1
                {
                    found.push(RealRoot::Exact(mid.clone()));
                    pending.push((lo, a));
                    pending.push((b, hi));
                    break;
                }
                delta /= q(2);
            }
        } else {
            pending.push((lo, mid.clone()));
            pending.push((mid, hi));
        }
    }
    found.sort_by(|a, b| a.lower().cmp(b.lower()));
    found
}

/// `(lo, hi]` holds exactly one root and is narrow enough that a rational
/// root would be the simplest rational in it.
fn settle_interval(p: &Poly, lo: Q, hi: Q) -> RealRoot {
    if p.eval(&hi).is_zero() {
        return RealRoot::Exact(hi);
    }
    let s = simplest_between(&lo, &hi);
    if p.eval(&s).is_zero() {
        RealRoot::Exact(s)
    } else {
        RealRoot::Between(lo, hi)
    }
}

/// The rational with the smallest denominator (then numerator) in `[lo, hi]`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Q::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
