//! Acceptance run: one PASS/FAIL line per criterion, with the individual
//! properties listed underneath. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fusionkit::linalg::DEFAULT_MAX_ENTRIES;
use fusionkit::partition::DEFAULT_MAX_POINTS;
use fusionkit::verify::{self, PropertyOutcome};
use fusionkit::{Alphabet, Exec, Modulus};

const SEED: u64 = 20240607;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn(Exec) -> Vec<PropertyOutcome>,
}

fn hom_table(exec: Exec) -> Vec<PropertyOutcome> {
    [2, 3, 4].into_iter().map(|s| verify::hom_table(s, exec)).collect()
}

fn clebsch_gordan(exec: Exec) -> Vec<PropertyOutcome> {
    vec![verify::clebsch_gordan(8, exec)]
}

fn triple_agreement(exec: Exec) -> Vec<PropertyOutcome> {
    let mut out: Vec<PropertyOutcome> = [1, 2, 3]
        .into_iter()
        .map(Modulus::Finite)
        .chain([Modulus::Infinite])
        .map(|m| verify::trivial_count_agreement(m, 6, DEFAULT_MAX_POINTS, exec))
        .collect();
    for s in [1, 2, 3] {
        out.push(verify::hom_triple_agreement(
            s,
            4,
            6,
            DEFAULT_MAX_POINTS,
            DEFAULT_MAX_ENTRIES,
            exec,
        ));
    }
    out
}

fn functoriality(exec: Exec) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push(verify::functoriality(n, 6, DEFAULT_MAX_ENTRIES, exec));
        out.push(verify::tensor_identity(n, 6, DEFAULT_MAX_ENTRIES, exec));
    }
    out
}

fn independence(exec: Exec) -> Vec<PropertyOutcome> {
    (2..=5)
        .map(|n| verify::independence(n, 6, DEFAULT_MAX_POINTS, DEFAULT_MAX_ENTRIES, exec))
        .collect()
}

fn dimensions(exec: Exec) -> Vec<PropertyOutcome> {
    let mut out = vec![verify::d_linear_at_four(12)];
    for n in [4, 5, 7] {
        out.push(verify::d_table(n));
        out.push(verify::d_product_identity(n, 10));
    }
    for s in [1, 2, 3] {
        for n in [4, 5] {
            out.push(verify::dimension_morphism(Modulus::Finite(s), n, 200, 8, SEED, exec));
        }
    }
    out
}

fn formulations(exec: Exec) -> Vec<PropertyOutcome> {
    let mut out: Vec<PropertyOutcome> = [1, 2, 3]
        .into_iter()
        .map(|s| verify::formulations_exhaustive(s, 5, exec))
        .collect();
    out.push(verify::formulations_random(Modulus::Infinite, 100, 8, SEED, exec));
    out
}

fn well_formedness(exec: Exec) -> Vec<PropertyOutcome> {
    let instances = [
        Alphabet::Reflection(Modulus::Finite(1)),
        Alphabet::Reflection(Modulus::Finite(2)),
        Alphabet::Reflection(Modulus::Finite(3)),
        Alphabet::Orthogonal,
        Alphabet::Unitary,
    ];
    let cases = 500;
    let mut out = Vec::new();
    for a in &instances {
        out.push(verify::associativity(a, cases, 9, SEED, exec));
        out.push(verify::frobenius(a, cases, 6, SEED, exec));
        out.push(verify::conjugation(a, cases, 8, SEED, exec));
        out.push(verify::irreducibility(a, cases, 8, SEED, exec));
        if let Some(m) = a.modulus() {
            out.push(verify::tensor_basis_round_trip(m, cases, 5, SEED, exec));
        }
    }
    out.push(verify::orthogonal_rule(8, exec));
    out
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "Hom(u_i, u_j) table, s in {2,3,4}",
            budget: Duration::from_secs(1),
            run: hom_table,
        },
        Criterion {
            id: 2,
            title: "s=1 Clebsch-Gordan, k,l <= 8",
            budget: Duration::from_secs(5),
            run: clebsch_gordan,
        },
        Criterion {
            id: 3,
            title: "trivial multiplicity = NC_s count = rank",
            budget: Duration::from_secs(600),
            run: triple_agreement,
        },
        Criterion {
            id: 4,
            title: "functoriality and tensor identities, n=2..5",
            budget: Duration::from_secs(120),
            run: functoriality,
        },
        Criterion {
            id: 5,
            title: "independence of NC(k,l) maps",
            budget: Duration::from_secs(180),
            run: independence,
        },
        Criterion {
            id: 6,
            title: "dimension sequence and morphism",
            budget: Duration::from_secs(60),
            run: dimensions,
        },
        Criterion {
            id: 7,
            title: "word rule = a/z monoid rule",
            budget: Duration::from_secs(60),
            run: formulations,
        },
        Criterion {
            id: 8,
            title: "engine well-formedness",
            budget: Duration::from_secs(120),
            run: well_formedness,
        },
    ];
    let exec = Exec::default();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcomes = (c.run)(exec);
        let elapsed = start.elapsed();
        let props_ok = verify::all_passed(&outcomes);
        let in_budget = elapsed <= c.budget;
        let ok = props_ok && in_budget;
        if !ok {
            failed += 1;
        }
        let cases: u64 = outcomes.iter().map(|o| o.cases).sum();
        println!(
            "{} criterion {}: {} ({} properties, {} cases, {:.2}s of {}s{})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            outcomes.len(),
            cases,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if in_budget { "" } else { ", over budget" }
        );
        for o in &outcomes {
            for line in o.to_string().lines() {
                println!("    {line}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
