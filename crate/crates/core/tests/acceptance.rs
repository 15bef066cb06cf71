//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible under `cargo test -- --nocapture`, and always
//! visible on failure). Tolerances and time budgets are pinned in the code.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use subspace_codes::ferrers::FerrersDiagram;
use subspace_codes::field::Field;
use subspace_codes::matrix::GFMatrix;
use subspace_codes::multilevel::{
    construct_code, verify_fiber_distances, weight_k_vectors, CheckMode, SubspaceCode,
};
use subspace_codes::puncture::{puncture, verify_min_distance, Hyperplane};
use subspace_codes::rank_metric::{ferrers_code, gabidulin, min_rank_distance};
use subspace_codes::subspace::{
    enumerate_grassmannian, gaussian_coefficient, intersection, subspace_distance, Subspace,
};

fn report(number: u8, name: &str, ok: bool, details: &str) {
    println!(
        "criterion {number} ({name}): {} - {details}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn build(n: usize, k: usize) -> SubspaceCode {
    construct_code(&Field::binary(), n, k, 2, None).expect("construction parameters are valid")
}

#[test]
fn criterion_1_table_reproduction() {
    let mut ok = true;
    let mut details = Vec::new();
    for &(n, k, expected) in &[(6usize, 3usize, 71usize), (7, 3, 289), (8, 4, 4573)] {
        let start = Instant::now();
        let code = build(n, k);
        let elapsed = start.elapsed();
        let hit = code.len() == expected && elapsed < Duration::from_secs(5);
        ok &= hit;
        details.push(format!(
            "(n={n},k={k}): {} words (expected {expected}) in {elapsed:.2?}",
            code.len()
        ));
    }
    let details = details.join("; ");
    report(1, "table reproduction", ok, &details);
    assert!(ok, "{details}");
}

#[test]
fn criterion_2_distance_verification() {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for &(n, k, pairs) in &[
        (6usize, 3usize, 2_485u64),
        (7, 3, 41_616),
        (8, 4, 10_453_878),
    ] {
        let code = build(n, k);
        let scan = verify_min_distance(&code, Some(4)).expect("scan within guard");
        ok &= scan.minimum == 4 && scan.pairs == pairs;
        details.push(format!(
            "(n={n},k={k}): min {} over {} pairs",
            scan.minimum, scan.pairs
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    let details = format!("{}; total {elapsed:.2?}", details.join("; "));
    report(2, "distance verification", ok, &details);
    assert!(ok, "{details}");
}

#[test]
fn criterion_3_puncturing_reproduction() {
    let f = Field::binary();
    let code = build(8, 4);
    let hyperplane = Hyperplane::coordinate(&f, 8, 7).expect("coordinate in range");
    let v = GFMatrix::from_rows(&f, 8, &[vec![1, 0, 0, 0, 0, 0, 0, 1]]);
    let (punctured, accounting) = puncture(&code, &hyperplane, &v).expect("valid puncturing");
    let start = Instant::now();
    let scan = verify_min_distance(&punctured, Some(3)).expect("scan within guard");
    let elapsed = start.elapsed();

    let size_ok = punctured.len() == 573;
    let distance_ok = scan.minimum >= 3 && elapsed < Duration::from_secs(5);
    let ok = size_ok && distance_ok;
    let details = format!(
        "size {} (expected 573), min distance {} over {} pairs in {elapsed:.2?}",
        punctured.len(),
        scan.minimum,
        scan.pairs
    );
    report(3, "puncturing reproduction", ok, &details);
    if !size_ok {
        println!("  fiber survivors (vector: contained + through = total):");
        for fiber in &accounting.fibers {
            println!(
                "  {}: {} + {} = {}",
                fiber.vector,
                fiber.contained,
                fiber.through_vector,
                fiber.contained + fiber.through_vector
            );
        }
        println!(
            "  totals: {} contained + {} through - {} overlap = {} (expected 573, difference {})",
            accounting.contained,
            accounting.through_vector,
            accounting.overlap,
            accounting.output_size,
            573i64 - accounting.output_size as i64
        );
    }
    assert!(ok, "{details}");
}

#[test]
fn criterion_4_dimension_bound_suite() {
    let f = Field::binary();
    let start = Instant::now();
    let mut ok = true;
    let mut shapes = 0u32;
    for n in 1..=8usize {
        for k in 1..=n {
            for v in weight_k_vectors(n, k) {
                let diagram = FerrersDiagram::of(v).expect("nonzero vector");
                for delta in 1..=2usize {
                    let code = ferrers_code(&diagram, delta, &f).expect("delta within range");
                    ok &= code.dimension() <= diagram.dimension_bound(delta);
                    shapes += 1;
                }
            }
        }
    }
    let mut unattained = 0usize;
    for &(n, k) in &[(6usize, 3usize), (7, 3), (8, 4)] {
        let code = build(n, k);
        for fiber in code
            .fibers()
            .expect("constructed codes carry fiber reports")
        {
            if !fiber.attains_bound {
                unattained += 1;
            }
        }
    }
    ok &= unattained == 0;
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    let details = format!(
        "{shapes} (diagram, delta) shapes within bound, {unattained} construction fibers below bound, in {elapsed:.2?}"
    );
    report(4, "dimension bound suite", ok, &details);
    assert!(ok, "{details}");
}

#[test]
fn criterion_5_distance_law_suite() {
    let mut ok = true;
    let mut details = Vec::new();
    for &(n, k, pairs) in &[(6usize, 3usize, 2_485u64), (7, 3, 41_616)] {
        let code = build(n, k);
        let law =
            verify_fiber_distances(&code, CheckMode::Exhaustive).expect("constant-dimension code");
        ok &= law.pass() && law.pairs == pairs;
        details.push(format!(
            "(n={n},k={k}): {} violations over {} exhaustive pairs",
            law.violations.len(),
            law.pairs
        ));
    }
    let code = build(8, 4);
    let law = verify_fiber_distances(
        &code,
        CheckMode::Sample {
            count: 100_000,
            seed: 42,
        },
    )
    .expect("constant-dimension code");
    ok &= law.pass() && law.pairs == 100_000;
    details.push(format!(
        "(n=8,k=4): {} violations over {} sampled pairs",
        law.violations.len(),
        law.pairs
    ));
    let details = details.join("; ");
    report(5, "distance law suite", ok, &details);
    assert!(ok, "{details}");
}

#[test]
fn criterion_6_oracle_equivalence() {
    let f = Field::binary();
    let mut ok = true;

    let planes = enumerate_grassmannian(&f, 4, 2).expect("within enumeration guard");
    let grassmannian_ok = planes.len() == 35;
    ok &= grassmannian_ok;

    // The identifying-vector fibers partition the Grassmannian, so the
    // fiber sizes 2^dots must add up to the full count. The zero vector
    // (k = 0) has an empty diagram; its fiber is the zero subspace alone.
    let mut partition_ok = true;
    for n in 1..=8usize {
        for k in 0..=n {
            let total: u128 = if k == 0 {
                1
            } else {
                weight_k_vectors(n, k)
                    .into_iter()
                    .map(|v| {
                        let dots = FerrersDiagram::of(v).expect("nonzero vector").dot_count();
                        1u128 << dots
                    })
                    .sum()
            };
            partition_ok &= total == gaussian_coefficient(n, k, 2).expect("small parameters");
        }
    }
    ok &= partition_ok;

    let mut rng = StdRng::seed_from_u64(6);
    let mut distance_ok = true;
    for _ in 0..500 {
        let mut sample = || {
            let rows: Vec<Vec<u32>> = (0..rng.gen_range(1..=5usize))
                .map(|_| (0..6).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            Subspace::from_rows(&f, 6, &rows).expect("entries in range")
        };
        let u = sample();
        let w = sample();
        let meet = intersection(&u, &w);
        let oracle = u.dim() + w.dim() - 2 * meet.dim();
        distance_ok &= subspace_distance(&u, &w) == oracle;
    }
    ok &= distance_ok;

    let details = format!(
        "|G(4,2)| = {} (expected 35); fiber partition matches Gaussian counts for n <= 8: {partition_ok}; distance agrees with intersection oracle on 500 pairs: {distance_ok}",
        planes.len()
    );
    report(6, "oracle equivalence", ok, &details);
    assert!(ok, "{details}");
}

#[test]
fn criterion_7_mrd_property() {
    let f = Field::binary();
    let start = Instant::now();
    let mut ok = true;
    let mut cases = 0u32;
    for m in 1..=4usize {
        for t in 1..=4usize {
            let small = m.min(t);
            let big = m.max(t);
            for delta in 1..=small {
                let code = gabidulin(&f, m, t, delta).expect("parameters in range");
                let dim_ok = code.dimension() == big * (small - delta + 1);
                let min = min_rank_distance(&code).expect("scan within guard");
                let min_ok = min == Some(delta);
                ok &= dim_ok && min_ok;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    let details =
        format!("{cases} (m,t,delta) cases with exact dimension and minimum rank distance, in {elapsed:.2?}");
    report(7, "MRD property", ok, &details);
    assert!(ok, "{details}");
}
