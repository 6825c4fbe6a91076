use discomp::groups::{AbelianGroup, GradedGroup};
use discomp::simplicial::{caratheodory_check, smith_normal_form, IntegerMatrix, SimplicialComplex, DEFAULT_FACE_CAP};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if n < r {
        return Vec::new();
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d₁⋯dᵢ` as the gcd of all `i × i` minors, for every `i` up to the rank.
fn minor_gcds(m: &[Vec<i64>]) -> Vec<i64> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for i in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, i) {
            for cs in subsets(cols, i) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

#[test]
fn smith_form_matches_minor_gcds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let factors = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        let gcds = minor_gcds(&rows);
        assert_eq!(factors.len(), gcds.len(), "rank of {rows:?}");
        let mut prod = BigInt::one();
        for (i, f) in factors.iter().enumerate() {
            assert!(f.is_positive());
            if i > 0 {
                assert!((f % &factors[i - 1]).is_zero(), "divisibility chain in {rows:?}");
            }
            prod *= f;
            assert_eq!(prod, BigInt::from(gcds[i]), "{rows:?}");
        }
    }
}

fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        6,
        &[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
        ],
    )
    .unwrap()
}

#[test]
fn projective_plane_has_two_torsion() {
    let rp2 = projective_plane();
    assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
    assert_eq!(rp2.homology(), GradedGroup::new().with(1, AbelianGroup::cyclic(2)));
}

fn constructed() -> Vec<SimplicialComplex> {
    let c3 = SimplicialComplex::circle(3).unwrap();
    let c5 = SimplicialComplex::circle(5).unwrap();
    vec![
        SimplicialComplex::point(),
        c3.clone(),
        c5.clone(),
        c3.join(&c5),
        c3.join_power(2),
        c3.join_power(3),
        projective_plane(),
        projective_plane().join(&SimplicialComplex::point()),
    ]
}

#[test]
fn boundary_squares_to_zero() {
    for k in constructed() {
        for q in 1..=k.dimension() as usize {
            let dd = k.boundary_matrix(q - 1).mul(&k.boundary_matrix(q));
            assert!(dd.is_zero(), "∂∘∂ ≠ 0 at q = {q}");
        }
    }
}

#[test]
fn cone_is_acyclic() {
    let cone = projective_plane().join(&SimplicialComplex::point());
    assert!(cone.homology().is_zero());
}

#[test]
fn join_powers_are_spheres() {
    for r in 1..=3 {
        let rep = caratheodory_check(r, 3, DEFAULT_FACE_CAP).unwrap();
        assert!(rep.is_sphere, "r = {r}: {}", rep.homology);
        assert_eq!(rep.homology, GradedGroup::new().with(2 * r as i64 - 1, AbelianGroup::free(1)));
        let euler: i64 = rep.f_vector.iter().enumerate().map(|(i, f)| if i % 2 == 0 { *f as i64 } else { -(*f as i64) }).sum();
        // χ(S^{2r−1}) = 0
        assert_eq!(euler, 0);
    }
}
