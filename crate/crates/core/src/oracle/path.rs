//! Explicit paths between forms in the same component of the complement.
//!
//! Root lines are placed on the universal cover of ℝP¹ via a square
//! parametrization `u ↦ d(u)` with `d(u + 4) = −d(u)`, so every position is
//! rational and every intermediate form is exact.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::moves::MoveGraph;
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, Direction, PatternState};
use crate::poly::{q, Q};

const FRAMES: i64 = 4;

/// Direction vector at position `u`.
fn direction_at(u: &Q) -> (Q, Q) {
    let four = q(4);
    let n = (u / &four).floor();
    let r = u - &n * &four;
    let (w, v) = if r < Q::one() {
        (Q::one(), r)
    } else if r < q(3) {
        (q(2) - r, Q::one())
    } else {
        (q(-1), four - r)
    };
    if n.to_integer().is_odd() {
        (-w, -v)
    } else {
        (w, v)
    }
}

/// Linear form vanishing on the line through `d(u)`.
fn line_at(u: &Q) -> BinaryForm {
    let (w, v) = direction_at(u);
    BinaryForm::linear(v, -w)
}

/// Position in `[0, 4)` of the line spanned by `dir`.
fn position_of(dir: &Direction) -> Q {
    let (mut a, mut b) = (dir.u().clone(), dir.v().clone());
    if b.is_negative() || (b.is_zero() && a.is_negative()) {
        a = -a;
        b = -b;
    }
    if b.is_zero() {
        Q::zero()
    } else if a >= b {
        &b / &a
    } else if a > -b.clone() {
        q(2) - &a / &b
    } else {
        q(4) + &b / &a
    }
}

fn frac(j: i64, n: i64) -> Q {
    Q::new(j.into(), n.into())
}

/// `sign · Π L(uᵢ)^{mᵢ} · definite`, positions strictly increasing with span
/// below 4.
#[derive(Clone, Debug)]
struct Config {
    sign: i32,
    roots: Vec<(Q, u32)>,
    definite: BinaryForm,
}

impl Config {
    fn form_with(&self, roots: &[(Q, u32)], extra: Option<&BinaryForm>) -> BinaryForm {
        let mut f = self.definite.clone();
        if self.sign < 0 {
            f = f.neg();
        }
        for (u, m) in roots {
            f = f.mul(&line_at(u).pow(*m));
        }
        if let Some(e) = extra {
            f = f.mul(e);
        }
        f
    }

    fn form(&self) -> BinaryForm {
        self.form_with(&self.roots, None)
    }

    /// Brings positions back into `[0, 4)` without changing the form.
    fn canonicalize(&mut self) {
        let four = q(4);
        for (u, m) in self.roots.iter_mut() {
            while *u >= four {
                *u -= &four;
                if *m % 2 == 1 {
                    self.sign = -self.sign;
                }
            }
            while u.is_negative() {
                *u += &four;
                if *m % 2 == 1 {
                    self.sign = -self.sign;
                }
            }
        }
        self.roots.sort_by(|a, b| a.0.cmp(&b.0));
    }

    /// Distance from root `i` to the next root going forward.
    fn gap_after(&self, i: usize) -> Q {
        let next = match self.roots.get(i + 1) {
            Some((u, _)) => u.clone(),
            None => &self.roots[0].0 + q(4),
        };
        next - &self.roots[i].0
    }
}

/// One sample of a path: parameter, form, and its root pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSample {
    pub t: Q,
    pub form: BinaryForm,
    pub pattern: PatternState,
}

impl PathSample {
    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t.to_string(),
            "coeffs": self.form.to_json(),
            "pattern": self.pattern.to_json(),
        })
    }
}

struct Builder {
    k: u32,
    cfg: Config,
    forms: Vec<(BinaryForm, PatternState)>,
}

impl Builder {
    fn push(&mut self, f: BinaryForm) -> Result<()> {
        if self.forms.last().map(|(g, _)| g) == Some(&f) {
            return Ok(());
        }
        let pattern = f
            .pattern(self.k)
            .map_err(|_| Error::PathConstruction(format!("sample {f} meets the discriminant")))?;
        self.forms.push((f, pattern));
        Ok(())
    }

    fn animate(&mut self, frame: impl Fn(&Q) -> BinaryForm) -> Result<()> {
        for j in 1..=FRAMES {
            self.push(frame(&frac(j, FRAMES)))?;
        }
        Ok(())
    }

    fn normalize_definite(&mut self) -> Result<()> {
        let c = self.cfg.definite.degree() / 2;
        let target = BinaryForm::circle().pow(c as u32);
        if self.cfg.definite == target {
            return Ok(());
        }
        let cfg = self.cfg.clone();
        self.animate(|t| {
            let mut c = cfg.clone();
            c.definite = cfg.definite.lerp(&target, t);
            c.form()
        })?;
        self.cfg.definite = target;
        Ok(())
    }

    /// Slides roots to `targets`; both lists must be strictly increasing with
    /// span below 4 so no two roots ever meet.
    fn move_roots(&mut self, targets: &[Q]) -> Result<()> {
        let cfg = self.cfg.clone();
        if cfg.roots.iter().map(|(u, _)| u).eq(targets.iter()) {
            return Ok(());
        }
        self.animate(|t| {
            let roots: Vec<(Q, u32)> = cfg
                .roots
                .iter()
                .zip(targets)
                .map(|((u, m), v)| (u + (v - u) * t, *m))
                .collect();
            cfg.form_with(&roots, None)
        })?;
        for ((u, _), v) in self.cfg.roots.iter_mut().zip(targets) {
            *u = v.clone();
        }
        self.cfg.canonicalize();
        Ok(())
    }

    /// Advances every root to the next one's position, which flips the
    /// overall sign when the wrapping root has odd multiplicity.
    fn cyclic_shift(&mut self) -> Result<()> {
        let roots = &self.cfg.roots;
        let mut targets: Vec<Q> = roots.iter().skip(1).map(|(u, _)| u.clone()).collect();
        targets.push(&roots[0].0 + q(4));
        if roots.iter().any(|(_, m)| *m != roots[0].1) {
            return Err(Error::PathConstruction("cyclic shift needs equal multiplicities".into()));
        }
        self.move_roots(&targets)
    }

    /// Separates every multiple root into simple roots.
    fn split_all(&mut self) -> Result<()> {
        while let Some(i) = self.cfg.roots.iter().position(|(_, m)| *m >= 2) {
            let (u, m) = self.cfg.roots[i].clone();
            let target = &u + self.cfg.gap_after(i) * frac(m as i64 - 1, m as i64);
            let cfg = self.cfg.clone();
            self.animate(|t| {
                let mut roots = cfg.roots.clone();
                roots[i].1 = m - 1;
                roots.insert(i + 1, (&u + (&target - &u) * t, 1));
                cfg.form_with(&roots, None)
            })?;
            self.cfg.roots[i].1 = m - 1;
            self.cfg.roots.insert(i + 1, (target, 1));
            self.cfg.canonicalize();
        }
        Ok(())
    }

    /// Collides the first two simple roots into a double root.
    fn merge_first_pair(&mut self) -> Result<()> {
        let cfg = self.cfg.clone();
        let (u0, u1) = (cfg.roots[0].0.clone(), cfg.roots[1].0.clone());
        self.animate(|t| {
            let mut roots = cfg.roots.clone();
            if t.is_one() {
                roots.remove(1);
                roots[0].1 = 2;
            } else {
                roots[1].0 = &u1 + (&u0 - &u1) * t;
            }
            cfg.form_with(&roots, None)
        })?;
        self.cfg.roots.remove(1);
        self.cfg.roots[0].1 = 2;
        Ok(())
    }

    /// Lifts the double root at index 0 off ℝP¹ as a complex pair.
    fn raise_first(&mut self) -> Result<()> {
        let cfg = self.cfg.clone();
        let l2 = line_at(&cfg.roots[0].0).pow(2);
        let rest: Vec<(Q, u32)> = cfg.roots[1..].to_vec();
        let circle = BinaryForm::circle();
        self.animate(|t| cfg.form_with(&rest, Some(&l2.add(&circle.scale(t)))))?;
        self.cfg.definite = self.cfg.definite.mul(&l2.add(&circle));
        self.cfg.roots = rest;
        self.normalize_definite()
    }

    /// Lands a complex pair of the definite part as a double root at `u = 0`.
    fn drop_pair(&mut self) -> Result<()> {
        let c = self.cfg.definite.degree() / 2;
        let rest = BinaryForm::circle().pow(c as u32 - 1);
        let l2 = line_at(&Q::zero()).pow(2);
        let circle = BinaryForm::circle();
        let mut cfg = self.cfg.clone();
        cfg.definite = rest.clone();
        self.animate(|t| cfg.form_with(&[], Some(&l2.add(&circle.scale(&(Q::one() - t))))))?;
        self.cfg.definite = rest;
        self.cfg.roots = vec![(Q::zero(), 2)];
        Ok(())
    }
}

/// Exact configuration of `f`, plus the frames of a straight segment from
/// `f` to it when irrational roots had to be rounded.
fn settle(f: &BinaryForm, k: u32) -> Result<(Config, Vec<BinaryForm>)> {
    let pattern = f.pattern(k)?;
    let mut width = frac(1, 8);
    for _ in 0..8 {
        let lines = f.root_lines(&width)?;
        let mut roots: Vec<(Q, u32)> = lines.iter().map(|l| (position_of(&l.direction), l.multiplicity)).collect();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let distinct = roots.windows(2).all(|w| w[0].0 != w[1].0);
        let mut r = BinaryForm::constant(Q::one());
        for (u, m) in &roots {
            r = r.mul(&line_at(u).pow(*m));
        }
        let (w, exact) = f.divide(&r);
        if distinct && !w.is_zero() && w.real_root_count_any() == 0 {
            let sign = w.sign_off_roots();
            let definite = if sign < 0 { w.neg() } else { w };
            let cfg = Config { sign, roots, definite };
            if exact {
                return Ok((cfg, Vec::new()));
            }
            let target = cfg.form();
            let mut n = 8;
            while n <= 64 {
                let frames: Vec<BinaryForm> = (1..=n).map(|j| f.lerp(&target, &frac(j, n))).collect();
                if frames.iter().all(|g| g.pattern(k).as_ref() == Ok(&pattern)) {
                    return Ok((cfg, frames));
                }
                n *= 2;
            }
        }
        width /= q(64);
    }
    Err(Error::PathConstruction(format!("could not settle the roots of {f}")))
}

/// Frames from `f` to the canonical base point of its component, each with
/// its pattern.
pub fn path_to_base(f: &BinaryForm, k: u32) -> Result<Vec<(BinaryForm, PatternState)>> {
    let (cfg, frames) = settle(f, k)?;
    let mut b = Builder { k, cfg, forms: Vec::new() };
    b.push(f.clone())?;
    for g in frames {
        b.push(g)?;
    }
    b.normalize_definite()?;

    if k == 2 {
        let s = b.cfg.roots.len();
        if s > 0 {
            if b.cfg.sign < 0 {
                b.cyclic_shift()?;
            }
            let targets: Vec<Q> = (0..s).map(|i| frac(4 * i as i64, s as i64)).collect();
            b.move_roots(&targets)?;
        }
    } else {
        if b.cfg.roots.is_empty() && b.cfg.sign < 0 {
            b.drop_pair()?;
        }
        b.split_all()?;
        while b.cfg.roots.len() >= 2 {
            if b.cfg.roots.len() == 2 && b.cfg.sign < 0 {
                b.cyclic_shift()?;
            }
            b.merge_first_pair()?;
            b.raise_first()?;
        }
        if b.cfg.roots.len() == 1 {
            let target = if b.cfg.sign > 0 { Q::zero() } else { q(4) };
            b.move_roots(&[target])?;
        }
    }
    debug_assert_eq!(b.forms.last().expect("nonempty").0, b.cfg.form());
    Ok(b.forms)
}

/// Result of [`connect`].
#[derive(Clone, Debug, PartialEq)]
pub enum Connection {
    Connected(Vec<PathSample>),
    Distinct { f_class: PatternState, g_class: PatternState },
}

impl Connection {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connection::Connected(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Connection::Connected(path) => json!({
                "schema": 1,
                "verdict": "connected",
                "path": path.iter().map(PathSample::to_json).collect::<Vec<_>>(),
            }),
            Connection::Distinct { f_class, g_class } => json!({
                "schema": 1,
                "verdict": "distinct",
                "f_class": f_class.to_json(),
                "g_class": g_class.to_json(),
            }),
        }
    }
}

/// A sampled path from `f` to `g` avoiding `Σ_k`, or the two distinct
/// component ids when none exists.
pub fn connect(f: &BinaryForm, g: &BinaryForm, k: u32) -> Result<Connection> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), got: g.degree() });
    }
    let graph = MoveGraph::build(f.degree() as u32, k);
    let (cf, cg) = (graph.classify(f)?, graph.classify(g)?);
    if cf != cg {
        return Ok(Connection::Distinct { f_class: cf, g_class: cg });
    }
    let mut forms = path_to_base(f, k)?;
    let mut back = path_to_base(g, k)?;
    if forms.last() != back.last() {
        return Err(Error::PathConstruction("base points differ".into()));
    }
    back.pop();
    back.reverse();
    forms.extend(back);
    let n = forms.len().max(2) as i64 - 1;
    let samples = forms
        .into_iter()
        .enumerate()
        .map(|(i, (form, pattern))| PathSample { t: frac(i as i64, n), form, pattern })
        .collect();
    Ok(Connection::Connected(samples))
}

/// Checks that consecutive samples share a pattern or differ by one move.
pub fn check_path(path: &[PathSample], graph: &MoveGraph) -> std::result::Result<(), String> {
    for (i, s) in path.iter().enumerate() {
        if s.form.pattern(graph.k()).as_ref() != Ok(&s.pattern) {
            return Err(format!("sample {i} has a stale pattern"));
        }
        if !graph.contains(&s.pattern) {
            return Err(format!("sample {i} pattern {} is not a state", s.pattern));
        }
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0].pattern != w[1].pattern && !graph.adjacent(&w[0].pattern, &w[1].pattern) {
            return Err(format!("samples {i} and {} jump from {} to {}", i + 1, w[0].pattern, w[1].pattern));
        }
        if w[0].t >= w[1].t {
            return Err(format!("parameter not increasing at sample {}", i + 1));
        }
    }
    Ok(())
}
