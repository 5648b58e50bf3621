//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p braidmono --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use braidmono::braid::BraidWord;
use braidmono::family::{
    bp_discriminant_family, bp_fiber_family, degeneracy_check_bp, discriminant_in_x,
    proportionality_error, Bivariate,
};
use braidmono::hurwitz::{
    global_conjugation, minimal_stabilizing_power, orbit_bfs, periodic_tuple, HurwitzTuple,
};
use braidmono::perm::Permutation;
use braidmono::poly::{roots, Poly, RootConfig};
use braidmono::theorems::{
    degeneracy_grid_bp, theorem1_generators, verify_delta_conjugation, verify_pipeline_bp,
    verify_pipeline_plane, verify_redundancy, verify_stabilization, BandExpansion,
};
use braidmono::tracker::{covering_tuple, CoveringBasis, TrackConfig};
use braidmono::RunConfig;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(criterion: &str, detail: &str, pass: bool) {
    println!("{criterion}: {}: {detail}", if pass { "pass" } else { "FAIL" });
    assert!(pass, "{criterion} failed: {detail}");
}

#[test]
fn a1_end_to_end_bp_pipeline() {
    let run = RunConfig::default();
    for (n, k) in [(1usize, 2usize), (2, 2), (2, 3), (3, 2)] {
        let t0 = Instant::now();
        let rep = verify_pipeline_bp(n, k, &run).expect("pipeline runs");
        let elapsed = t0.elapsed();
        let stab = rep.verdicts["all_tracked_stabilize_tent_tuple"];
        let closed = rep.verdicts["closed_loops_consistent"];
        let refine = rep.verdicts["refinement_stable"];
        let within_time = elapsed.as_secs_f64() < 60.0;
        report(
            "A1",
            &format!(
                "(n,k)=({n},{k}): stabilization {stab}, closed-loop consistency {closed}, \
                 refinement stability {refine}, {:.2?} < 60s",
                elapsed
            ),
            stab && closed && refine && within_time,
        );
    }
}

#[test]
fn a2_elimination_of_the_branch_locus() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut rand_poly = |deg: usize| -> Poly {
        Poly::from_coeffs(
            (0..=deg)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    };
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n = trial % 3 + 1;
        let dp = trial % 4;
        let dq = (trial / 4) % 4;
        let p = rand_poly(dp);
        let q = rand_poly(dq);
        let f = Bivariate::unfolding_shape(n, &p, &q);
        let bound = 3 * (n + 1);
        let disc = discriminant_in_x(&f, bound, false).expect("interpolation");
        let expect = p.pow((n + 1) as u32).sub(&q.pow(n as u32));
        let err = proportionality_error(&disc, &expect);
        worst = worst.max(err);
    }
    report(
        "A2",
        &format!("100 random (p,q), deg <= 3, n <= 3: max relative coefficient error {worst:.2e} < 1e-8"),
        worst < 1e-8,
    );
}

#[test]
fn a3_degeneracy_locus_grid() {
    for n in 1..=3usize {
        for k in 1..=3usize {
            let grid = degeneracy_grid_bp(n, k, 1e-6, 1.5, 41, 1e-7).expect("grid runs");
            report(
                "A3",
                &format!(
                    "(n,k)=({n},{k}): {}/{} off-band points agree ({:.4} >= 0.99, {} band points excluded)",
                    grid.agreements,
                    grid.total - grid.excluded,
                    grid.fraction,
                    grid.excluded
                ),
                grid.fraction >= 0.99,
            );
        }
    }
    // on-locus spot checks
    let spot1 = degeneracy_check_bp(2, 2, c(1.0, 0.0), c(1.0, 0.0), 1e-6).unwrap();
    let spot2 = !degeneracy_check_bp(2, 2, c(1.0, 0.0), c(0.0, 0.0), 1e-6).unwrap();
    let spot3 = degeneracy_check_bp(2, 2, c(0.0, 0.0), c(0.0, 1.0), 1e-6).unwrap();
    // triple roots resolve to ~1e-5 clusters, hence the looser tolerance
    let spot4 = degeneracy_check_bp(3, 2, c(0.0, 0.0), c(0.7, 0.0), 1e-4).unwrap();
    report(
        "A3",
        "on-locus spot checks: u^{n+1}=v^n true, base point false, u=0 branches true",
        spot1 && spot2 && spot3 && spot4,
    );
}

#[test]
fn a4_branching_tuple_confirmation() {
    let cfg = TrackConfig::default();
    for (n, k) in [(2usize, 2usize), (2, 3)] {
        let fam = bp_discriminant_family(n, k);
        let p0 = fam.at(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let branch = roots(&p0, &RootConfig::default()).unwrap().values;
        let fiber = bp_fiber_family(n, k, c(1.0, 0.0), c(0.0, 0.0));
        let data = covering_tuple(&fiber, &branch, CoveringBasis::Spider, &cfg).unwrap();
        let per = periodic_tuple(n, k);
        let conj = global_conjugation(&data.tuple, &per).unwrap();
        let pass = conj.is_some();
        report(
            "A4",
            &format!(
                "(n,k)=({n},{k}): covering tuple [{}] at (u,v)=(1,0), branch points ordered by \
                 increasing argument ending at the positive real axis, equals the period-n \
                 sequence in S_{} (period n = {n}, not period k) up to global conjugation by {}",
                data.tuple.text(),
                n + 1,
                conj.as_ref().map(|g| g.cycle_string()).unwrap_or_default()
            ),
            pass,
        );
    }
}

#[test]
fn a5_generator_stabilization() {
    let t0 = Instant::now();
    let mut checked = 0usize;
    for m in 1..=16usize {
        for n in 1..=m {
            if m % n != 0 {
                continue;
            }
            let k = m / n;
            let gs = theorem1_generators(n, k);
            let per = periodic_tuple(n, k);
            for expansion in [BandExpansion::Canonical, BandExpansion::Prime] {
                let rep = verify_stabilization(&gs, &per, expansion).unwrap();
                assert!(
                    rep.all_stabilize,
                    "(n,k)=({n},{k}) expansion {expansion:?}: {:?}",
                    rep.items.iter().filter(|i| !i.stabilizes).map(|i| &i.item).collect::<Vec<_>>()
                );
                checked += rep.items.len();
            }
        }
    }
    let elapsed = t0.elapsed();
    report(
        "A5",
        &format!(
            "{checked} generator items over all nk <= 16 stabilize the periodic tuple \
             (both band expansions), {:.2?} < 10s",
            elapsed
        ),
        elapsed.as_secs_f64() < 10.0,
    );
}

#[test]
fn a6_proof_identities() {
    let mut delta_checks = 0usize;
    let mut redundancy_checks = 0usize;
    for m in 1..=12usize {
        for n in 1..=m {
            if m % n != 0 {
                continue;
            }
            let k = m / n;
            let rep = verify_delta_conjugation(n, k, 12, BandExpansion::Canonical).unwrap();
            assert!(rep.passed(), "delta conjugation (n,k)=({n},{k}): {:?}", rep.failures);
            delta_checks += rep.checks;
            let rep = verify_redundancy(n, m, 12, BandExpansion::Canonical).unwrap();
            assert!(rep.passed(), "redundancy (n,strands)=({n},{m}): {:?}", rep.failures);
            redundancy_checks += rep.checks;
        }
    }
    report(
        "A6",
        &format!(
            "delta-conjugation ({delta_checks} checks) and redundancy ({redundancy_checks} \
             checks) hold exhaustively for nk <= 12 under handle reduction"
        ),
        delta_checks > 0 && redundancy_checks > 0,
    );
}

#[test]
fn a7_plane_curve_case() {
    let run = RunConfig::default();
    let rep = verify_pipeline_plane(3, &run).expect("plane pipeline runs");
    let grid_ok = rep.verdicts["degeneracy_locus_matches_grid"]
        && rep.verdicts["unit_roots_degenerate_at_infinity"];
    report(
        "A7",
        &format!(
            "d=3 degeneracy locus is exactly u^3=1: grid fraction {:.4}, unit roots flagged \
             at infinity",
            rep.grid.fraction
        ),
        grid_ok,
    );
    let exp_ok = rep.verdicts["normalized_exp_sums_match_item_iv"];
    let perm_ok = rep.verdicts["normalized_perms_trivial"];
    for t in &rep.tracked {
        println!(
            "A7 (report): {} raw word exp {} perm {}, normalized exp {} (= 2(d(d-1)-1) = 10), \
             exact clause-iv word match: {:?} (aligned {:?}) - reported, not required",
            t.label,
            t.expsum,
            t.perm,
            t.normalized_expsum,
            t.matches_item_iv,
            t.matches_item_iv_arg_aligned
        );
    }
    report(
        "A7",
        "d=3 tracked lassos: exponent sums 10 and trivial permutations after basepoint \
         normalization",
        exp_ok && perm_ok,
    );
}

#[test]
fn a8_hurwitz_oracle() {
    let t2 = HurwitzTuple::parse("(1 2);(1 2)", 2).unwrap();
    let t3 = HurwitzTuple::parse("(1 2);(2 3)", 3).unwrap();
    let t4 = HurwitzTuple::parse("(1 2);(3 4)", 4).unwrap();
    let sizes = (
        orbit_bfs(&t2, 1000).unwrap().size,
        orbit_bfs(&t4, 1000).unwrap().size,
        orbit_bfs(&t3, 1000).unwrap().size,
    );
    report(
        "A8",
        &format!("orbit sizes (equal, disjoint, adjacent) = {sizes:?} == (1, 2, 3)"),
        sizes == (1, 2, 3),
    );
    // minimal stabilizing powers, exhaustively over transposition pairs in
    // S_3 and S_4
    let mut ok = true;
    for degree in [3usize, 4] {
        let mut transpositions = Vec::new();
        for a in 1..=degree {
            for b in (a + 1)..=degree {
                transpositions.push(Permutation::transposition(degree, a, b).unwrap());
            }
        }
        let sigma = BraidWord::generator(2, 1).unwrap();
        for x in &transpositions {
            for y in &transpositions {
                let tuple = HurwitzTuple::new(degree, vec![x.clone(), y.clone()]).unwrap();
                let min = minimal_stabilizing_power(&sigma, &tuple, 6).unwrap();
                let shared = x
                    .support()
                    .iter()
                    .filter(|p| y.support().contains(p))
                    .count();
                let expected = match (x == y, shared) {
                    (true, _) => Some(1),
                    (false, 0) => Some(2),
                    (false, 1) => Some(3),
                    _ => unreachable!("distinct transpositions share at most one point"),
                };
                ok &= min == expected;
            }
        }
    }
    report(
        "A8",
        "minimal stabilizing powers are 1/2/3 for equal/disjoint/adjacent transposition pairs \
         (exhaustive in S_3 and S_4)",
        ok,
    );
}

#[test]
fn a9_braid_engine_soundness() {
    // both defining relation families, all indices, m <= 8
    let mut relations = 0usize;
    for m in 2..=8usize {
        for i in 1..m {
            for j in 1..m {
                if (i as i32 - j as i32).abs() > 1 {
                    let a = BraidWord::new(m, vec![i as i32, j as i32]).unwrap();
                    let b = BraidWord::new(m, vec![j as i32, i as i32]).unwrap();
                    assert!(a.equals(&b).unwrap(), "commutation {i},{j} in Br_{m}");
                    relations += 1;
                }
            }
            if i + 1 < m {
                let a = BraidWord::new(m, vec![i as i32, (i + 1) as i32, i as i32]).unwrap();
                let b = BraidWord::new(m, vec![(i + 1) as i32, i as i32, (i + 1) as i32]).unwrap();
                assert!(a.equals(&b).unwrap(), "braid relation {i} in Br_{m}");
                relations += 1;
            }
        }
    }
    report("A9", &format!("{relations} defining relations hold for m <= 8"), relations > 0);

    // randomized relator insertions preserve the equivalence class
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let m = rng.gen_range(3..=8usize);
        let len = rng.gen_range(0..=30usize);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..m as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let w = BraidWord::new(m, letters.clone()).unwrap();
        // pick a relator subword equal to the identity
        let relator: Vec<i32> = match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(1..m as i32);
                vec![i, -i]
            }
            1 => {
                let i = rng.gen_range(1..(m - 1).max(2) as i32).min(m as i32 - 2).max(1);
                vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
            }
            _ => {
                if m >= 4 {
                    let i = rng.gen_range(1..=(m as i32 - 3));
                    let j = rng.gen_range((i + 2)..(m as i32));
                    vec![i, j, -i, -j]
                } else {
                    let i = rng.gen_range(1..m as i32);
                    vec![-i, i]
                }
            }
        };
        let pos = rng.gen_range(0..=letters.len());
        let mut inserted = letters.clone();
        inserted.splice(pos..pos, relator);
        let v = BraidWord::new(m, inserted).unwrap();
        assert!(w.equals(&v).unwrap(), "trial {trial}: relator insertion changed the class");
        assert_eq!(w.exponent_sum(), v.exponent_sum());
        assert_eq!(w.permutation_image(), v.permutation_image());
    }
    report("A9", "1000 randomized relator insertions preserve equality and invariants", true);

    // reduced nonempty words are never reported trivial
    let mut nonempty = 0usize;
    for trial in 0..300 {
        let m = 3 + trial % 6;
        let len = 1 + trial % 25;
        let letters: Vec<i32> = (0..len)
            .map(|t| {
                let i = 1 + ((trial * 31 + t * 17) % (m - 1)) as i32;
                if (trial + t) % 3 == 0 {
                    -i
                } else {
                    i
                }
            })
            .collect();
        let w = BraidWord::new(m, letters).unwrap();
        let r = w.handle_reduced();
        assert_eq!(r.handle_reduced(), r, "reduction must be a fixpoint");
        assert!(w.equals(&r).unwrap(), "reduction must preserve the class");
        if !r.is_empty() {
            nonempty += 1;
            assert!(!r.is_trivial(), "reduced nonempty word declared trivial: {:?}", r);
        }
    }
    report(
        "A9",
        &format!("{nonempty} reduced nonempty words, none declared trivial; reduction is a fixpoint"),
        nonempty > 0,
    );
}
