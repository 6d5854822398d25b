//! End-to-end acceptance checks, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mfk::suites::{run_suite, SuiteOptions, SUITES};
use mfk_core::cosection::{cosection_localized_gysin, CosectionModel};
use mfk_core::kclass::localized_class;
use mfk_core::koszul::{koszul_complex, SectionCosectionPair};
use mfk_core::module::{GradedFreeModule, LaurentPolynomial, PresentedModule};
use mfk_core::ring::{Ideal, MonomialOrder, PolyRing, Polynomial};
use mfk_core::Q;
use serde_json::Value;

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

const SEED: u64 = 20_240_611;

type Check = Result<String, String>;

fn suite(name: &str, count: usize, minimum: usize) -> Check {
    let opts = SuiteOptions { seed: SEED, count, ..SuiteOptions::default() };
    let report = run_suite(name, &opts).ok_or("unknown suite")?;
    if report.count < minimum {
        return Err(format!("only {} instances", report.count));
    }
    match report.instances.iter().find(|r| !r.verdict) {
        None => Ok(format!("{}/{} instances", report.passed, report.count)),
        Some(r) => Err(format!("instance {} failed {}\n{}", r.index, r.error.clone().unwrap_or_default(), r.input)),
    }
}

fn zero_locus_of_the_origin() -> Check {
    let one_minus_t = LaurentPolynomial::from_i64(0, &[1, -1]);
    let mut times = Vec::new();
    for n in 1..=4 {
        let start = Instant::now();
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let r = PolyRing::new(&names, &vec![1; n], MonomialOrder::DegRevLex).map_err(|e| e.to_string())?;
        let vars: Vec<Polynomial<Q>> = (0..n).map(|i| Polynomial::var(&r, i)).collect();
        let pair = SectionCosectionPair::new(&GradedFreeModule::free(&r, n), vec![Polynomial::zero(&r); n], vars.clone()).map_err(|e| e.to_string())?;
        let e = koszul_complex(&pair).map_err(|e| e.to_string())?;
        let support = Ideal::new(&r, vars).map_err(|e| e.to_string())?;
        let c = localized_class(&e, &PresentedModule::free(&GradedFreeModule::free(&r, 1)), &support).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let expected = (0..n).fold(LaurentPolynomial::one(), |p, _| p.mul(&one_minus_t));
        if c.length() != Some(1) || c.numerator() != Some(&expected) {
            return Err(format!("n = {n}: got {c}"));
        }
        if elapsed >= Duration::from_secs(1) {
            return Err(format!("n = {n} took {elapsed:?}"));
        }
        times.push(format!("{:.0} ms", elapsed.as_secs_f64() * 1e3));
    }
    Ok(format!("n = 1..4 in {}", times.join(", ")))
}

fn worked_cosection_model() -> Check {
    let r = PolyRing::new(&["x"], &[1], MonomialOrder::DegRevLex).map_err(|e| e.to_string())?;
    let x = Polynomial::<Q>::var(&r, 0);
    let model = CosectionModel::new(&GradedFreeModule::free(&r, 1), vec![x]).map_err(|e| e.to_string())?;
    let class = |g: &str| -> Result<_, String> {
        let i = Ideal::parse(model.ring(), g).map_err(|e| e.to_string())?;
        cosection_localized_gysin(&model, &PresentedModule::quotient(&i)).map_err(|e| e.to_string())
    };
    let (z, v) = (class("x*y")?, class("x")?);
    if !z.is_zero() || z.length() != Some(0) {
        return Err(format!("class of O_Z(w) is {z}"));
    }
    if v.length() != Some(1) {
        return Err(format!("class of O_V(x) is {v}"));
    }
    Ok("O_Z(w) gives 0, O_V(x) gives 1".into())
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let out = f()?;
    let elapsed = start.elapsed();
    if elapsed >= limit {
        return Err(format!("{out}, but took {elapsed:?}"));
    }
    Ok(format!("{out} in {:.2} s", elapsed.as_secs_f64()))
}

fn deformation() -> Check {
    let out = suite("deformation", 12, 10)?;
    let report = run_suite("deformation", &SuiteOptions { seed: SEED, count: 1, ..SuiteOptions::default() }).ok_or("unknown suite")?;
    let fixed = &report.instances[0].outputs;
    let want = serde_json::json!({ "low": 0, "coeffs": [1, -1] });
    let polys: Vec<&Value> = fixed["fibers"].as_array().into_iter().flatten().map(|f| &f["class"]["polynomial"]).collect();
    if fixed["homology"]["polynomial"] != want || polys.is_empty() || polys.iter().any(|p| **p != want) {
        return Err(format!("fixed instance does not give 1 - t: {fixed}"));
    }
    Ok(format!("{out}; fixed instance gives 1 - t at both ends"))
}

fn duality() -> Check {
    let report = run_suite("duality", &SuiteOptions { seed: SEED, count: 12, ..SuiteOptions::default() }).ok_or("unknown suite")?;
    let ranks: Vec<u64> = report.instances.iter().filter_map(|r| r.outputs["rank"].as_u64()).collect();
    if ranks.iter().filter(|&&k| k <= 3).count() < 5 || (0..=3).any(|k| !ranks.contains(&k)) {
        return Err(format!("ranks covered: {ranks:?}"));
    }
    match report.instances.iter().find(|r| !r.verdict) {
        None => Ok(format!("{} pairs of rank 0..3", report.count)),
        Some(r) => Err(format!("instance {}\n{}", r.index, r.input)),
    }
}

fn oracles() -> Check {
    let gb = oracle::groebner_criterion(2024, 60)?;
    if gb < 50 {
        return Err(format!("only {gb} ideals"));
    }
    let hs = oracle::hilbert_dimensions(77, 24, 10)?;
    Ok(format!("{gb} ideals, {hs} modules up to degree 10"))
}

fn determinism() -> Check {
    let opts = SuiteOptions { seed: SEED, count: 12, ..SuiteOptions::default() };
    for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
        let opts = SuiteOptions { order, ..opts };
        for name in SUITES {
            let a = run_suite(name, &opts).ok_or("unknown suite")?.to_json();
            let b = run_suite(name, &opts).ok_or("unknown suite")?.to_json();
            if a != b {
                return Err(format!("{name} ({}) differs between runs", order.name()));
            }
        }
    }
    Ok(format!("{} suites, both orders, byte-identical", SUITES.len()))
}

fn main() -> ExitCode {
    let checks: Vec<(&str, Box<dyn FnOnce() -> Check>)> = vec![
        ("koszul zero locus of the origin", Box::new(zero_locus_of_the_origin)),
        ("worked cosection model", Box::new(worked_cosection_model)),
        ("additivity over cones", Box::new(|| timed(Duration::from_secs(60), || suite("additivity", 24, 20)))),
        ("multiplicativity with nested supports", Box::new(|| suite("multiplicativity", 12, 10))),
        ("gysin map commutes with the class", Box::new(|| suite("gysin", 12, 10))),
        ("deformation to homology", Box::new(deformation)),
        ("koszul duality", Box::new(duality)),
        ("zero cosection reduction", Box::new(|| suite("sigma-zero", 5, 5))),
        ("homotopy on tensor products", Box::new(|| suite("homotopy", 12, 10))),
        ("groebner and hilbert oracles", Box::new(oracles)),
        ("deterministic reports", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
