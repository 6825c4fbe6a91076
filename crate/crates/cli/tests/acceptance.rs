//! Acceptance suite: one line per criterion. Pass `--r4` after `--` to also
//! run the fourth join power.

use std::time::{Duration, Instant};

use discomp::forms::BinaryForm;
use discomp::groups::{AbelianGroup, GradedGroup};
use discomp::oracle::{classify, winding, LoopSpec};
use discomp::poly::q;
use discomp::resolution::{self, Problem};
use discomp::simplicial::{caratheodory_check, smith_normal_form, IntegerMatrix, SimplicialComplex, DEFAULT_FACE_CAP};
use discomp_cli::run;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP_DMAX: u32 = 30;
const SWEEP_BUDGET: Duration = Duration::from_secs(5);
const COMPONENTS_BUDGET: Duration = Duration::from_secs(1);
const JOIN_BUDGET: Duration = Duration::from_secs(60);
const SNF_SAMPLES: usize = 200;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict>);

fn cli(args: &[String]) -> discomp_cli::Output {
    run(std::iter::once("discomp".to_string()).chain(args.iter().cloned()))
}

fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn problems() -> impl Iterator<Item = (u32, u32)> {
    (2..=SWEEP_DMAX).flat_map(|d| (2..=d).map(move |k| (d, k)))
}

fn groups(d: u32, k: u32) -> GradedGroup {
    resolution::closed_form_groups(&Problem::new(d as i64, k as i64).unwrap())
}

fn method_agreement() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    for (d, k) in problems() {
        let out = cli(&args(&format!("groups --d {d} --k {k} --method both")));
        if out.code != 0 || !out.stdout.ends_with("AGREE\n") {
            return Err(format!("({d},{k}) reported {}", out.stdout.lines().last().unwrap_or("nothing")));
        }
        cases += 1;
    }
    let elapsed = start.elapsed();
    if elapsed >= SWEEP_BUDGET {
        return Err(format!("{cases} cases took {elapsed:.2?}"));
    }
    Ok(format!("{cases} cases AGREE in {elapsed:.2?}"))
}

fn even_threshold_ranks() -> Verdict {
    let mut cases = 0;
    for (d, k) in problems().filter(|(_, k)| k % 2 == 0) {
        let h = groups(d, k);
        let rank = 2 * (d / k) as usize + 1;
        if h.total_free_rank() != rank || h.iter().any(|(_, g)| !g.is_free()) {
            return Err(format!("({d},{k}): {h}, expected free of rank {rank}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} cases free of rank 2⌊d/k⌋+1"))
}

fn torsion_placement() -> Verdict {
    let mut cases = 0;
    for (d, k) in problems().filter(|(_, k)| k % 2 == 1) {
        let h = groups(d, k);
        let mut expect: Vec<i64> = (1..=d / k)
            .filter(|p| (d - p * k) % 2 == 0 && !(d % k == 0 && *p == d / k))
            .map(|p| (p * (k - 2) + 1) as i64)
            .collect();
        expect.sort_unstable();
        let found: Vec<i64> = h.iter().filter(|(_, g)| !g.torsion().is_empty()).map(|(l, _)| l).collect();
        let all_z2 = h.iter().all(|(_, g)| g.torsion().iter().all(|&t| t == 2) && g.torsion().len() <= 1);
        if found != expect || !all_z2 {
            return Err(format!("({d},{k}): torsion in {found:?}, expected ℤ₂ in {expect:?}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} cases with ℤ₂ exactly where predicted"))
}

fn component_counts() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut check = |d: u32, k: u32, expect: usize| -> Result<(), String> {
        let out = cli(&args(&format!("components --d {d} --k {k} --method both")));
        let head = format!("theorem: {expect}\noracle: {expect}\n");
        if out.code != 0 || !out.stdout.starts_with(&head) {
            return Err(format!("({d},{k}): {}", out.stdout.lines().take(2).collect::<Vec<_>>().join(", ")));
        }
        cases += 1;
        Ok(())
    };
    for d in (2..=12).step_by(2) {
        check(d, 2, d as usize / 2 + 2)?;
    }
    for d in (3..=13).step_by(2) {
        check(d, 2, (d as usize).div_ceil(2))?;
    }
    for d in 3..=12 {
        for k in 3..=d {
            check(d, k, 1)?;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= COMPONENTS_BUDGET {
        return Err(format!("{cases} cases took {elapsed:.2?}"));
    }
    Ok(format!("{cases} cases, theorem and oracle agree, {elapsed:.2?}"))
}

fn join_powers(max_r: usize) -> Verdict {
    let mut notes = Vec::new();
    for r in 1..=max_r {
        let start = Instant::now();
        let rep = caratheodory_check(r, 3, DEFAULT_FACE_CAP).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let sphere = GradedGroup::new().with(2 * r as i64 - 1, AbelianGroup::free(1));
        if rep.homology != sphere {
            return Err(format!("r = {r}: {}", rep.homology));
        }
        if r == 3 && elapsed >= JOIN_BUDGET {
            return Err(format!("r = 3 took {elapsed:.2?}"));
        }
        notes.push(format!("r={r} S{} {elapsed:.2?}", 2 * r - 1));
    }
    Ok(notes.join(", "))
}

fn euler_invariance() -> Verdict {
    let mut cases = 0;
    for (d, k) in problems() {
        let c = resolution::crosscheck(&Problem::new(d as i64, k as i64).unwrap());
        if c.e1_euler != c.answer_euler {
            return Err(format!("({d},{k}): E¹ {} vs answer {}", c.e1_euler, c.answer_euler));
        }
        cases += 1;
    }
    Ok(format!("{cases} cases"))
}

fn line(a: i64, b: i64) -> BinaryForm {
    BinaryForm::linear(q(b), q(-a))
}

fn winding_criterion() -> Verdict {
    let fixtures = [("0,1,0", 2), ("0,1,-1,0", 3), ("0,1,0,-1,0", 4)];
    for (f, p) in fixtures {
        let out = cli(&args(&format!("winding --rotate --form {f}")));
        if out.stdout.trim() != p.to_string() {
            return Err(format!("rotating {f} gave {:?}, expected {p}", out.stdout.trim()));
        }
    }
    let constant = cli(&args("winding --loop 0,1,0;0,1,0"));
    if constant.stdout.trim() != "0" {
        return Err(format!("constant loop gave {:?}", constant.stdout.trim()));
    }
    let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];
    let a = LoopSpec::closed_polygon((0..4).map(|j| line(dirs[j].0, dirs[j].1).mul(&line(dirs[j + 2].0, dirs[j + 2].1))).collect());
    let steps = [((1, 0), (0, 1)), ((2, 1), (-1, 2)), ((1, 2), (-2, 1)), ((-1, 2), (-2, -1)), ((-2, 1), (-1, -2))];
    let b = LoopSpec::closed_polygon(steps.iter().map(|&((a1, b1), (a2, b2))| line(a1, b1).mul(&line(a2, b2))).collect());
    let w = |l: &LoopSpec| winding(l, 2).map_err(|e| e.to_string());
    let (wa, wb, wab) = (w(&a)?, w(&b)?, w(&a.concat(&b).map_err(|e| e.to_string())?)?);
    if wab != wa + wb {
        return Err(format!("w(a·b) = {wab}, w(a) + w(b) = {}", wa + wb));
    }
    Ok(format!("rotation 2,3,4; constant 0; w(a·b) = {wa} + {wb}"))
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
        })
        .sum()
}

fn choose(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    (r - 1..n)
        .flat_map(|last| {
            choose(last, r - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn homology_engine() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let factors = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        let mut prod = BigInt::from(1);
        for i in 1..=r.min(c) {
            let mut g = 0i64;
            for rs in choose(r, i) {
                for cs in choose(c, i) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&a| cs.iter().map(|&b| rows[a][b]).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            let got = factors.get(i - 1).map(|f| {
                prod *= f;
                prod.clone()
            });
            if got.unwrap_or_default() != BigInt::from(g) {
                return Err(format!("{rows:?}: factors {factors:?}, minor gcd {g} at size {i}"));
            }
        }
    }
    let rp2 = SimplicialComplex::from_facets(
        6,
        &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5], &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5]],
    )
    .map_err(|e| e.to_string())?;
    if rp2.homology() != GradedGroup::new().with(1, AbelianGroup::cyclic(2)) {
        return Err(format!("projective plane gave {}", rp2.homology()));
    }
    let c3 = SimplicialComplex::circle(3).map_err(|e| e.to_string())?;
    let complexes = [rp2.clone(), c3.clone(), c3.join_power(2), c3.join_power(3), rp2.join(&c3)];
    for k in &complexes {
        for qq in 1..=k.dimension() as usize {
            if !k.boundary_matrix(qq - 1).mul(&k.boundary_matrix(qq)).is_zero() {
                return Err(format!("∂∘∂ ≠ 0 at q = {qq}"));
            }
        }
    }
    Ok(format!("{SNF_SAMPLES} matrices, H̃₁(ℝP²) = ℤ₂, ∂∘∂ = 0 on {} complexes", complexes.len()))
}

fn separation() -> Verdict {
    let f: BinaryForm = "1,0,2,0,1".parse().map_err(|e: discomp::Error| e.to_string())?;
    let g = f.neg();
    if f.real_root_count() != 0 || g.real_root_count() != 0 {
        return Err("zero counts differ from 0".into());
    }
    let (cf, cg) = (classify(&f, 2).map_err(|e| e.to_string())?, classify(&g, 2).map_err(|e| e.to_string())?);
    if cf == cg {
        return Err(format!("both classified as {cf}"));
    }
    for lam in 1..=5 {
        if classify(&f.scale(&q(lam)), 2).ok() != Some(cf.clone()) || classify(&g.scale(&q(lam)), 2).ok() != Some(cg.clone()) {
            return Err(format!("classification moved under scaling by {lam}"));
        }
    }
    Ok(format!("zero counts 0 and 0, ids {cf} and {cg}, stable under scaling"))
}

fn main() {
    let r4 = std::env::args().any(|a| a == "--r4");
    let criteria: Vec<Criterion> = vec![
        ("method agreement sweep", Box::new(method_agreement)),
        ("even threshold ranks", Box::new(even_threshold_ranks)),
        ("torsion placement", Box::new(torsion_placement)),
        ("component counts", Box::new(component_counts)),
        ("join powers are spheres", Box::new(move || join_powers(if r4 { 4 } else { 3 }))),
        ("euler invariance", Box::new(euler_invariance)),
        ("winding", Box::new(winding_criterion)),
        ("homology engine", Box::new(homology_engine)),
        ("sign separation", Box::new(separation)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(note) => {
                failed += 1;
                println!("FAIL {} {name}: {note}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
