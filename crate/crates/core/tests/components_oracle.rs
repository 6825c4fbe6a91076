use discomp::forms::{BinaryForm, PatternState, Sign};
use discomp::groups::AbelianGroup;
use discomp::oracle::{check_path, classify, component_count, connect, winding, Connection, LoopSpec, MoveGraph};
use discomp::poly::{q, Q};
use discomp::resolution::{closed_form_groups, Problem};
use proptest::prelude::*;

fn form(s: &str) -> BinaryForm {
    s.parse().unwrap()
}

#[test]
fn components_agree_with_degree_zero() {
    for d in 2..=14u32 {
        for k in 2..=d {
            let h0 = closed_form_groups(&Problem::new(d as i64, k as i64).unwrap()).get(0);
            assert!(h0.torsion().is_empty());
            assert_eq!(component_count(d, k), 1 + h0.free_rank(), "({d},{k})");
        }
    }
}

#[test]
fn component_count_formula() {
    for d in 2..=14u32 {
        let expect = if d % 2 == 0 { d / 2 + 2 } else { d.div_ceil(2) };
        assert_eq!(component_count(d, 2) as u32, expect);
        for k in 3..=d {
            assert_eq!(component_count(d, k), 1);
        }
    }
}

/// At threshold two the components are the sign-definite cones, which are
/// contractible, and one component per positive root count, each winding
/// once around a circle. Their reduced cohomology follows directly.
#[test]
fn threshold_two_cohomology_from_component_topology() {
    for d in 2..=14u32 {
        let graph = MoveGraph::build(d, 2);
        let comps = graph.components();
        let circles = comps.iter().filter(|c| !c[0].mults().is_empty()).count();
        let h = closed_form_groups(&Problem::new(d as i64, 2).unwrap());
        assert_eq!(h.get(0), AbelianGroup::free(comps.len() - 1), "d = {d}");
        assert_eq!(h.get(1), AbelianGroup::free(circles), "d = {d}");
        assert_eq!(h.total_free_rank(), comps.len() - 1 + circles);
    }
}

#[test]
fn rotation_generates_circle_components() {
    // p simple root lines x, x − y, x − 2y, … rotate through p half-turns
    for p in 1..=4i64 {
        let f = (0..p).fold(BinaryForm::circle(), |f, j| f.mul(&BinaryForm::linear(q(1), q(-j))));
        assert_eq!(winding(&LoopSpec::Rotate(f), 2).unwrap(), p);
    }
}

#[test]
fn separation_at_degree_four() {
    let f = form("1,0,2,0,1");
    let g = f.neg();
    assert_eq!(f.real_root_count(), 0);
    assert_eq!(g.real_root_count(), 0);
    let (cf, cg) = (classify(&f, 2).unwrap(), classify(&g, 2).unwrap());
    assert_ne!(cf, cg);
    assert_eq!(cf, PatternState::new(vec![], Some(Sign::Plus)).unwrap());
    for lam in [1, 2, 7] {
        assert_eq!(classify(&f.scale(&q(lam)), 2).unwrap(), cf);
        assert_eq!(classify(&g.scale(&Q::new(1.into(), lam.into())), 2).unwrap(), cg);
    }
    assert!(!connect(&f, &g, 2).unwrap().is_connected());
}

#[test]
fn connect_examples() {
    let f = form("0,1,0,1,0");
    let g = BinaryForm::linear(q(1), q(-1)).mul(&BinaryForm::linear(q(1), q(1))).mul(&form("1,0,4"));
    let Connection::Connected(path) = connect(&f, &g, 2).unwrap() else { panic!("same class") };
    assert!(path.iter().all(|s| s.pattern.mults() == [1, 1]));
    check_path(&path, &MoveGraph::build(4, 2)).unwrap();
}

fn arb_form() -> impl Strategy<Value = BinaryForm> {
    (2usize..=6, proptest::collection::vec(-4i64..=4, 7)).prop_map(|(d, c)| BinaryForm::from_ints(&c[..=d]))
}

fn pythagorean() -> impl Strategy<Value = (Q, Q)> {
    (1i64..6, 0i64..6).prop_filter("nonzero", |(m, n)| m != n).prop_map(|(m, n)| {
        let h = m * m + n * n;
        (Q::new((m * m - n * n).into(), h.into()), Q::new((2 * m * n).into(), h.into()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_is_invariant(f in arb_form(), k in 2u32..5, lam in 1i64..5, (a, b) in pythagorean()) {
        prop_assume!(!f.is_zero() && f.in_complement(k));
        let c = classify(&f, k).unwrap();
        prop_assert_eq!(&classify(&f.scale(&q(lam)), k).unwrap(), &c);
        prop_assert_eq!(&classify(&f.rotate(&a, &b), k).unwrap(), &c);
        if f.pattern(k).unwrap().mults().iter().any(|m| m % 2 == 1) {
            prop_assert_eq!(&classify(&f.neg(), k).unwrap(), &c);
        }
    }

    #[test]
    fn connect_certificates_are_exact(f in arb_form(), g in arb_form(), k in 2u32..4) {
        prop_assume!(f.degree() == g.degree() && f.degree() >= k as usize);
        prop_assume!(!f.is_zero() && !g.is_zero() && f.in_complement(k) && g.in_complement(k));
        match connect(&f, &g, k).unwrap() {
            Connection::Connected(path) => {
                for s in &path {
                    prop_assert!(s.pattern.mults().iter().all(|&m| m < k));
                    prop_assert_eq!(&s.form.pattern(k).unwrap(), &s.pattern);
                }
                check_path(&path, &MoveGraph::build(f.degree() as u32, k)).unwrap();
            }
            Connection::Distinct { f_class, g_class } => {
                prop_assert_ne!(f_class, g_class);
            }
        }
    }
}

#[test]
fn winding_additive_and_odd() {
    let l = |a: i64, b: i64| BinaryForm::linear(q(b), q(-a));
    let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];
    let quarter: Vec<BinaryForm> = (0..4).map(|j| l(dirs[j].0, dirs[j].1).mul(&l(dirs[j + 2].0, dirs[j + 2].1))).collect();
    let a = LoopSpec::closed_polygon(quarter.clone());
    // same base point, a half-turn through different perpendicular pairs
    let steps = [((1, 0), (0, 1)), ((2, 1), (-1, 2)), ((1, 2), (-2, 1)), ((-1, 2), (-2, -1)), ((-2, 1), (-1, -2))];
    let b = LoopSpec::closed_polygon(steps.iter().map(|&((a1, b1), (a2, b2))| l(a1, b1).mul(&l(a2, b2))).collect());
    let (wa, wb) = (winding(&a, 2).unwrap(), winding(&b, 2).unwrap());
    assert_eq!((wa, wb), (2, 2));
    assert_eq!(winding(&a.concat(&b).unwrap(), 2).unwrap(), wa + wb);
    assert_eq!(winding(&a.reversed().unwrap(), 2).unwrap(), -wa);
    assert_eq!(winding(&b.reversed().unwrap(), 2).unwrap(), -wb);
}
