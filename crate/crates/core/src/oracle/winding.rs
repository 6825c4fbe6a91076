//! Winding number of a loop of forms with only simple real roots.
//!
//! The real roots are tracked as angles in `[0, π)` by continuation in the
//! loop parameter; the winding number is the total displacement over `π`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::forms::{to_f64, BinaryForm};

/// A closed loop in the space of forms.
#[derive(Clone, Debug, PartialEq)]
pub enum LoopSpec {
    /// `t ↦ f ∘ R(−tπ)`, rotating every root line forward by `tπ`.
    Rotate(BinaryForm),
    /// Straight segments through the listed forms; the last equals the first.
    Polygon(Vec<BinaryForm>),
}

impl LoopSpec {
    /// Polygon through `forms` followed by the first form again.
    pub fn closed_polygon(mut forms: Vec<BinaryForm>) -> Self {
        if let Some(first) = forms.first().cloned() {
            forms.push(first);
        }
        LoopSpec::Polygon(forms)
    }

    /// The loop run backwards.
    pub fn reversed(&self) -> Result<LoopSpec> {
        match self {
            LoopSpec::Polygon(v) => Ok(LoopSpec::Polygon(v.iter().rev().cloned().collect())),
            LoopSpec::Rotate(_) => Err(Error::NonClosedLoop),
        }
    }

    /// Concatenation of two polygonal loops with a common base point.
    pub fn concat(&self, other: &LoopSpec) -> Result<LoopSpec> {
        match (self, other) {
            (LoopSpec::Polygon(a), LoopSpec::Polygon(b)) if a.first() == b.first() => {
                let mut v = a.clone();
                v.extend(b.iter().skip(1).cloned());
                Ok(LoopSpec::Polygon(v))
            }
            _ => Err(Error::NonClosedLoop),
        }
    }

    fn vertices(&self) -> Vec<&BinaryForm> {
        match self {
            LoopSpec::Rotate(f) => vec![f],
            LoopSpec::Polygon(v) => v.iter().collect(),
        }
    }
}

/// Floating coefficients of a form, in the same order.
struct Sampled {
    coeffs: Vec<f64>,
}

impl Sampled {
    fn new(f: &BinaryForm) -> Self {
        Sampled { coeffs: f.coeffs().iter().map(to_f64).collect() }
    }

    fn at(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        let d = self.coeffs.len() as i32 - 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * c.powi(d - i as i32) * s.powi(i as i32))
            .sum()
    }
}

/// Evaluates `h_t(φ) = f_t(cos φ, sin φ)` along the loop.
struct Evaluator {
    spec: LoopSpec,
    vertices: Vec<Sampled>,
}

impl Evaluator {
    fn new(spec: &LoopSpec) -> Self {
        let vertices = spec.vertices().into_iter().map(Sampled::new).collect();
        Evaluator { spec: spec.clone(), vertices }
    }

    fn eval(&self, t: f64, phi: f64) -> f64 {
        match &self.spec {
            LoopSpec::Rotate(_) => self.vertices[0].at(phi - t * PI),
            LoopSpec::Polygon(_) => {
                let m = self.vertices.len() - 1;
                let x = t * m as f64;
                let seg = (x.floor() as usize).min(m - 1);
                let s = x - seg as f64;
                (1.0 - s) * self.vertices[seg].at(phi) + s * self.vertices[seg + 1].at(phi)
            }
        }
    }

    /// Root angles in `[0, π)` at parameter `t`, or `None` unless exactly
    /// `expected` sign changes are resolved.
    fn roots(&self, t: f64, expected: usize) -> Option<Vec<f64>> {
        const PHASE: f64 = 0.123_456_789;
        for m in [512usize, 4096, 32768] {
            let grid: Vec<f64> = (0..=m).map(|j| PHASE + PI * j as f64 / m as f64).collect();
            let vals: Vec<f64> = grid.iter().map(|&p| self.eval(t, p)).collect();
            if vals.iter().any(|v| *v == 0.0 || !v.is_finite()) {
                continue;
            }
            let mut out = Vec::new();
            for j in 0..m {
                if (vals[j] > 0.0) != (vals[j + 1] > 0.0) {
                    let (mut lo, mut hi, mut flo) = (grid[j], grid[j + 1], vals[j]);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        let fm = self.eval(t, mid);
                        if (fm > 0.0) == (flo > 0.0) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    out.push((0.5 * (lo + hi)).rem_euclid(PI));
                }
            }
            if out.len() == expected {
                out.sort_by(|a, b| a.total_cmp(b));
                return Some(out);
            }
        }
        None
    }
}

/// Signed shortest displacement from `a` to `b` modulo π.
fn displacement(a: f64, b: f64) -> f64 {
    (b - a + PI / 2.0).rem_euclid(PI) - PI / 2.0
}

fn min_gap(angles: &[f64]) -> f64 {
    if angles.len() < 2 {
        return PI;
    }
    let mut g = PI - (angles[angles.len() - 1] - angles[0]);
    for w in angles.windows(2) {
        g = g.min(w[1] - w[0]);
    }
    g
}

/// Total displacement of the tracked roots, or `None` when the match is
/// ambiguous.
fn matched_step(old: &[f64], new: &[f64]) -> Option<f64> {
    let bound = (min_gap(old).min(min_gap(new)) / 2.0).min(PI / 8.0);
    let mut used = vec![false; new.len()];
    let mut total = 0.0;
    for &a in old {
        let (j, delta) = new
            .iter()
            .enumerate()
            .map(|(j, &b)| (j, displacement(a, b)))
            .min_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))?;
        if used[j] || delta.abs() >= bound {
            return None;
        }
        used[j] = true;
        total += delta;
    }
    Some(total)
}

/// Winding number of `spec`: the number of half-turns swept by the real root
/// lines, counted with orientation. Forms with only simple real roots lie off
/// `Σ_k` for every `k ≥ 2`.
pub fn winding(spec: &LoopSpec, k: u32) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidProblem { d: spec.vertices()[0].degree() as i64, k: k as i64 });
    }
    let vertices = spec.vertices();
    if vertices.is_empty() {
        return Err(Error::NonClosedLoop);
    }
    let degree = vertices[0].degree();
    let mut expected = None;
    for f in &vertices {
        if f.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, got: f.degree() });
        }
        let mults = f.real_root_multiplicities()?;
        if mults.iter().any(|&m| m != 1) {
            return Err(Error::NotSimpleRoots(f.to_string()));
        }
        match expected {
            None => expected = Some(mults.len()),
            Some(p) if p != mults.len() => return Err(Error::LoopApproachesDiscriminant { t: f64::NAN }),
            _ => {}
        }
    }
    if let LoopSpec::Polygon(v) = spec {
        if v.len() < 2 || v.first() != v.last() {
            return Err(Error::NonClosedLoop);
        }
    }
    let p = expected.unwrap_or(0);
    if p == 0 {
        return Ok(0);
    }

    let ev = Evaluator::new(spec);
    let mut t: f64 = 0.0;
    let mut current = ev.roots(0.0, p).ok_or(Error::LoopApproachesDiscriminant { t: 0.0 })?;
    let start = current.clone();
    let max_step: f64 = 1.0 / 64.0;
    let mut h = max_step;
    let mut total: f64 = 0.0;
    while t < 1.0 {
        let t1 = (t + h).min(1.0);
        let step = ev.roots(t1, p).and_then(|next| matched_step(&current, &next).map(|d| (next, d)));
        match step {
            Some((next, d)) => {
                total += d;
                current = next;
                t = t1;
                h = (2.0 * h).min(max_step);
            }
            None => {
                h /= 2.0;
                if h < 1e-9 {
                    return Err(Error::LoopApproachesDiscriminant { t });
                }
            }
        }
    }
    if start.iter().zip(&current).any(|(a, b)| displacement(*a, *b).abs() > 1e-6) {
        return Err(Error::NonClosedLoop);
    }
    let w = (total / PI).round();
    if (total - w * PI).abs() >= PI / 4.0 {
        return Err(Error::NonClosedLoop);
    }
    Ok(w as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn form(s: &str) -> BinaryForm {
        s.parse().unwrap()
    }

    fn line(j: usize) -> BinaryForm {
        // vanishes on the line at angle jπ/4, oriented so the angle is lifted
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];
        let (a, b) = dirs[j];
        BinaryForm::linear(q(b), q(-a))
    }

    #[test]
    fn rotation_winds_once_per_root() {
        assert_eq!(winding(&LoopSpec::Rotate(form("0,1,0")), 2).unwrap(), 2);
        assert_eq!(winding(&LoopSpec::Rotate(form("0,1,-1,0")), 2).unwrap(), 3);
        assert_eq!(winding(&LoopSpec::Rotate(form("0,1,0,-1,0")), 2).unwrap(), 4);
        assert_eq!(winding(&LoopSpec::Rotate(form("1,0")), 2).unwrap(), 1);
    }

    #[test]
    fn rotating_a_definite_form_is_trivial() {
        assert_eq!(winding(&LoopSpec::Rotate(form("1,0,1")), 2).unwrap(), 0);
    }

    #[test]
    fn polygonal_loop() {
        let forms: Vec<BinaryForm> = (0..4).map(|j| line(j).mul(&line(j + 2))).collect();
        let l = LoopSpec::closed_polygon(forms);
        assert_eq!(winding(&l, 2).unwrap(), 2);
        assert_eq!(winding(&l.reversed().unwrap(), 2).unwrap(), -2);
        assert_eq!(winding(&l.concat(&l).unwrap(), 2).unwrap(), 4);
    }

    #[test]
    fn constant_loop() {
        let f = form("0,1,0");
        assert_eq!(winding(&LoopSpec::closed_polygon(vec![f]), 2).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_loops() {
        assert!(matches!(
            winding(&LoopSpec::Rotate(form("1,0,0")), 3),
            Err(Error::NotSimpleRoots(_))
        ));
        let open = LoopSpec::Polygon(vec![form("0,1,0"), form("1,0,-1")]);
        assert_eq!(winding(&open, 2), Err(Error::NonClosedLoop));
        // xy → x² + y² → xy crosses a double root
        let through = LoopSpec::closed_polygon(vec![form("0,1,0"), form("1,0,1")]);
        assert!(winding(&through, 2).is_err());
    }
}
