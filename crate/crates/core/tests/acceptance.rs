//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fintopo::bingh::{bing_hanner, bing_hanner_oracle};
use fintopo::catalog::{catalog_build, read_catalog, topology_classes};
use fintopo::dimension::{
    cov_dim, cov_dim_oracle, ind_boundary, ind_partition, large_ind, CoveringDimension, IndBoundary,
};
use fintopo::error::Error;
use fintopo::harness::{Status, SuiteKind, SuiteOptions, SuiteRegistry};
use fintopo::lattice::is_extension_by_opens;
use fintopo::structural::{
    decompose_zero_dim, sn, sn_naive, verify_witness, ClassPredicate, InfinityCertificate, SnValue,
};
use fintopo::{DimValue, FiniteSpace, PointSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bing_hanner_equivalence() -> Outcome {
    let spaces = labeled(4);
    let start = Instant::now();
    let mut instances = 0;
    let mut mismatches = 0;
    for s in &spaces {
        for m in PointSet::all_subsets(4) {
            instances += 1;
            if bing_hanner(s, m) != bing_hanner_oracle(s, m).map_err(|e| e.to_string())? {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    // the library oracle itself against the literal formula
    for s in &spaces {
        for m in PointSet::all_subsets(4) {
            let t = bing_hanner_oracle(s, m).map_err(|e| e.to_string())?;
            ensure(
                sorted_opens(t.opens().iter().copied()) == bing_hanner_lit(s, m),
                format!("oracle disagrees with the formula on {s:?}, M = {m}"),
            )?;
        }
    }
    ensure(instances == 5680, format!("{instances} instances"))?;
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("{instances} instances, 0 mismatches, {elapsed:.2?}"))
}

fn covering_dimension_equivalence() -> Outcome {
    let mut checked = 0;
    for s in labeled_up_to(4) {
        let oracle = cov_dim_oracle(&s).map_err(|e| e.to_string())?;
        ensure(cov_dim(&s) == oracle, format!("cov_dim {} vs oracle {} on {s:?}", cov_dim(&s), oracle))?;
        if s.n() <= 3 {
            ensure(cov_dim_lit(&s) == oracle, format!("definition disagrees on {s:?}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} labeled topologies, 0 mismatches"))
}

fn structural_number_equivalence() -> Outcome {
    let classes = topology_classes(3, 5).map_err(|e| e.to_string())?;
    ensure(classes.len() == 9, format!("{} classes", classes.len()))?;
    let mut compared = 0;
    for c in &classes {
        for name in ["ind0", "dim0"] {
            let pred = ClassPredicate::named(name).map_err(|e| e.to_string())?;
            let fast = sn(&c.space, &pred, Some(4));
            let naive = sn_naive(&c.space, &pred, 4);
            let agree = match (&fast, &naive) {
                (Ok(SnValue::Finite { k: a, .. }), Ok(SnValue::Finite { k: b, .. })) => a == b,
                (Ok(SnValue::Infinite(_)), Err(Error::BoundExhausted { .. })) => true,
                (Err(Error::BoundExhausted { .. }), Err(Error::BoundExhausted { .. })) => true,
                _ => false,
            };
            ensure(agree, format!("{} {name}: {fast:?} vs {naive:?}", c.code))?;
            if let Ok(v) = &fast {
                ensure(verify_witness(&c.space, &pred, v), format!("{} {name}: witness", c.code))?;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} comparisons, 0 mismatches"))
}

fn enumeration_counts() -> Outcome {
    let labeled_counts: Vec<usize> = (1..=4).map(|n| labeled(n).len()).collect();
    let class_counts: Vec<usize> = (1..=4)
        .map(|n| topology_classes(n, 5).map(|c| c.len()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(labeled_counts == [1, 4, 29, 355], format!("labeled {labeled_counts:?}"))?;
    ensure(class_counts == [1, 3, 9, 33], format!("classes {class_counts:?}"))?;
    let mut valid = 0;
    for mask in 0u32..256 {
        let family: Vec<PointSet> = (0..8u16)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| PointSet::from_bits(3, b).unwrap())
            .collect();
        let lit = is_topology(3, &family);
        ensure(
            FiniteSpace::from_opens(3, &family).is_ok() == lit,
            format!("validation disagrees on {family:?}"),
        )?;
        valid += lit as usize;
    }
    ensure(valid == 29, format!("{valid} of 256 families validate"))?;
    Ok(format!("labeled {labeled_counts:?}, classes {class_counts:?}, naive 29/256"))
}

fn hard_suites() -> Outcome {
    let registry = SuiteRegistry::standard();
    let expected = [
        "prop-intersection-1",
        "prop-intersection-2",
        "bh-basics",
        "bh-preserve-t",
        "bh-preserve-hn",
        "partition-avoid-Ind0",
        "partition-avoid-ind0",
        "bh-Ind0",
        "bh-ind0",
        "sn-monotone",
        "density-monotone",
        "sn-hn-upper",
    ];
    let mut hard = registry.names_of_kind(SuiteKind::Hard);
    hard.sort();
    let mut want = expected.to_vec();
    want.sort();
    ensure(hard == want, format!("hard suites {hard:?}"))?;
    let options = SuiteOptions::default();
    let start = Instant::now();
    let mut instances = 0;
    for n in 1..=4 {
        for name in expected {
            let r = registry.run(name, n, &options).map_err(|e| e.to_string())?;
            ensure(r.status == Status::Pass, r.summary())?;
            instances += r.instances_checked;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("12 suites x n=1..4, {instances} instances, {elapsed:.2?}"))
}

/// Structural number by brute force over all labeled topologies.
fn sn_brute(tau: &FiniteSpace, pred: &ClassPredicate) -> Option<usize> {
    let candidates: Vec<FiniteSpace> = labeled(tau.n())
        .into_iter()
        .filter(|mu| is_extension_by_opens(tau, mu) && pred.evaluate(mu))
        .collect();
    least_family(tau, &candidates)
}

fn fixed_values() -> Outcome {
    let fin = DimValue::Finite;
    let s = FiniteSpace::sierpinski();
    let g = s.ground();
    let mut lit = Dims::new(&s);
    let dim0 = ClassPredicate::named("dim0").map_err(|e| e.to_string())?;
    let ind0 = ClassPredicate::named("ind0").map_err(|e| e.to_string())?;
    let checks = [
        ("S ind_b", ind_boundary(&s), lit.ind_boundary(g), fin(1)),
        ("S ind_p", ind_partition(&s), lit.ind_partition(g), DimValue::Infinite),
        ("S Ind", large_ind(&s), lit.large_ind(g), fin(0)),
        ("S dim", cov_dim(&s), cov_dim_lit(&s), fin(0)),
    ];
    for (what, got, oracle, want) in checks {
        ensure(got == want && oracle == want, format!("{what}: {got} (oracle {oracle}), want {want}"))?;
    }
    ensure(s.density() == 1 && density_lit(&s) == 1, "S density")?;
    let v = sn(&s, &dim0, None).map_err(|e| e.to_string())?;
    ensure(v.finite() == Some(1) && sn_brute(&s, &dim0) == Some(1), "S sn(dim0)")?;
    let v = sn(&s, &ind0, None).map_err(|e| e.to_string())?;
    ensure(
        matches!(v, SnValue::Infinite(InfinityCertificate::EmptyHitSet { .. }))
            && verify_witness(&s, &ind0, &v)
            && sn_brute(&s, &ind0).is_none(),
        format!("S sn(ind0) = {}", v.summary()),
    )?;

    let c3 = FiniteSpace::chain(3);
    let g = c3.ground();
    let mut lit = Dims::new(&c3);
    let checks = [
        ("C3 ind_b", ind_boundary(&c3), lit.ind_boundary(g), fin(2)),
        ("C3 Ind", large_ind(&c3), lit.large_ind(g), fin(0)),
        ("C3 dim", cov_dim(&c3), cov_dim_lit(&c3), fin(0)),
    ];
    for (what, got, oracle, want) in checks {
        ensure(got == want && oracle == want, format!("{what}: {got} (oracle {oracle}), want {want}"))?;
    }
    let k_ind = decompose_zero_dim(&c3, &IndBoundary).map_err(|e| e.to_string())?.k;
    let k_dim = decompose_zero_dim(&c3, &CoveringDimension).map_err(|e| e.to_string())?.k;
    // oracle: a piece of ind <= 0 in the chain is a single point
    let ind_pieces = PointSet::all_subsets(3)
        .filter(|p| !p.is_empty() && lit.ind_boundary(*p) <= fin(0))
        .count();
    ensure(k_ind == 3 && ind_pieces == 3, format!("C3 decompose(ind) = {k_ind}"))?;
    ensure(k_dim == 1 && cov_dim_lit(&c3) <= fin(0), format!("C3 decompose(dim) = {k_dim}"))?;
    Ok("Sierpinski and C3 values match library and oracles".into())
}

fn exploratory_findings() -> Outcome {
    let registry = SuiteRegistry::standard();
    let options = SuiteOptions {
        seed: 20,
        ..SuiteOptions::default()
    };
    let mut total = 0;
    for name in ["ind-le-Ind", "ind-two-forms"] {
        for n in [2, 3, 4, 5] {
            let a = registry.run(name, n, &options).map_err(|e| e.to_string())?;
            let b = registry.run(name, n, &options).map_err(|e| e.to_string())?;
            ensure(a == b, format!("{name} n={n} is not deterministic"))?;
            ensure(a.status == Status::Findings, a.summary())?;
            if n == 2 {
                ensure(
                    a.violations.iter().any(|v| v.code.to_string() == "2:b0"),
                    format!("{name}: no Sierpinski witness"),
                )?;
            }
            let text = a.to_json().map_err(|e| e.to_string())?;
            let back = fintopo::harness::VerificationReport::from_json(&text).map_err(|e| e.to_string())?;
            ensure(back == a, format!("{name} n={n} report does not round-trip"))?;
            for v in &back.violations {
                ensure(
                    registry.reproduce(&back, v).map_err(|e| e.to_string())?,
                    format!("{name}: {} does not reproduce", v.code),
                )?;
            }
            total += a.violations.len();
        }
    }
    Ok(format!("{total} findings, all reproduced from the logged seed"))
}

fn catalog_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let preds = vec![
        ClassPredicate::named("ind0").map_err(|e| e.to_string())?,
        ClassPredicate::named("dim0").map_err(|e| e.to_string())?,
    ];
    let a = dir.path().join("a.cat");
    let b = dir.path().join("b.cat");
    catalog_build(4, &preds, &a, 5).map_err(|e| e.to_string())?;
    catalog_build(4, &preds, &b, 5).map_err(|e| e.to_string())?;
    let bytes_a = std::fs::read(&a).map_err(|e| e.to_string())?;
    let bytes_b = std::fs::read(&b).map_err(|e| e.to_string())?;
    ensure(bytes_a == bytes_b, "builds differ")?;
    let (_, records) = read_catalog(&a).map_err(|e| e.to_string())?;
    ensure(records.len() == 33, format!("{} records", records.len()))?;
    for r in &records {
        ensure(r.reverify(&preds).map_err(|e| e.to_string())?, format!("{} does not re-verify", r.code))?;
    }
    Ok(format!("{} bytes, {} records re-verified", bytes_a.len(), records.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("bing-hanner oracle equivalence", bing_hanner_equivalence),
        ("covering dimension oracle equivalence", covering_dimension_equivalence),
        ("structural number oracle equivalence", structural_number_equivalence),
        ("enumeration counts", enumeration_counts),
        ("hard suites on n <= 4", hard_suites),
        ("fixed values", fixed_values),
        ("exploratory findings", exploratory_findings),
        ("catalog determinism", catalog_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
