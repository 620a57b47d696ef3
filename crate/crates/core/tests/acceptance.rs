//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{groups_up_to, naive_signed_sumset, subsets_of_size};
use signed_sumset::harness::{digit_minimizer_checks, DigitSuite, Verdict};
use signed_sumset::{
    h_fold_signed_sumset, min_sumset_size, rho_oracle, rho_pm_oracle, set_add, upper_bound_probe,
    zp2_equality, zp2_table_prediction, ElementSet, Family, GroupSpec, SearchOptions,
};

type Outcome = Result<String, String>;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn u(n: usize, m: usize, h: usize) -> u64 {
    min_sumset_size(n as u64, m as u64, h as u64).unwrap().value
}

fn signed_min(g: &GroupSpec, m: usize, h: usize, family: Family) -> Result<u64, String> {
    rho_pm_oracle(g, m, h, family, &opts())
        .map(|r| r.value as u64)
        .map_err(|e| format!("{g} m={m} h={h}: {e}"))
}

fn cyclic_equality() -> Outcome {
    let mut cells = 0;
    for n in 2..=24 {
        let g = GroupSpec::cyclic(n).unwrap();
        for m in 1..=n {
            for h in 2..=4 {
                let v = signed_min(&g, m, h, Family::AFamily)?;
                if v != u(n, m, h) {
                    return Err(format!("Z{n} m={m} h={h}: signed {v}, u {}", u(n, m, h)));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn plain_minimum() -> Outcome {
    let mut cells = 0;
    let groups = groups_up_to(16);
    for g in &groups {
        let n = g.order();
        for m in 1..=n {
            for h in 0..=4 {
                let v = rho_oracle(g, m, h, &opts())
                    .map_err(|e| e.to_string())?
                    .value as u64;
                if v != u(n, m, h) {
                    return Err(format!("{g} m={m} h={h}: oracle {v}, u {}", u(n, m, h)));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{} groups, {cells} cells", groups.len()))
}

fn family_reduction() -> Outcome {
    let mut cells = 0;
    for g in groups_up_to(12) {
        for m in 1..=g.order() {
            for h in 2..=3 {
                let all = signed_min(&g, m, h, Family::AllSets)?;
                let fam = signed_min(&g, m, h, Family::AFamily)?;
                if all != fam {
                    return Err(format!("{g} m={m} h={h}: all sets {all}, families {fam}"));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

/// Values of m where the exact signed minimum differs from the plain one,
/// after checking each cell against the classification.
fn zp2_disagreements(p: usize, signed: &[u64]) -> Result<Vec<usize>, String> {
    let mut gaps = Vec::new();
    for (i, &v) in signed.iter().enumerate() {
        let m = i + 1;
        let plain = u(p * p, m, 2);
        let equal = zp2_equality(p as u64, m as u64).unwrap();
        if (v == plain) != equal {
            return Err(format!(
                "p={p} m={m}: signed {v}, plain {plain}, classified equal={equal}"
            ));
        }
        if v != plain {
            gaps.push(m);
        }
    }
    Ok(gaps)
}

fn zp2_signed_minima(p: usize) -> Result<Vec<u64>, String> {
    let g = GroupSpec::elementary(p, 2).unwrap();
    (1..=p * p)
        .map(|m| signed_min(&g, m, 2, Family::AFamily))
        .collect()
}

fn zp2_p3(signed: &[u64]) -> Outcome {
    let gaps = zp2_disagreements(3, signed)?;
    if gaps != [4] || signed[3] != 8 || u(9, 4, 2) != 7 {
        return Err(format!(
            "disagreements {gaps:?}, m=4: {} vs {}",
            signed[3],
            u(9, 4, 2)
        ));
    }
    Ok("only m=4 disagrees (8 vs 7)".into())
}

fn zp2_p5(signed: &[u64]) -> Outcome {
    let gaps = zp2_disagreements(5, signed)?;
    if gaps != [6, 7, 11, 12] {
        return Err(format!("disagreements {gaps:?}"));
    }
    Ok(format!("disagreements {gaps:?}, (p-1)^2/4 = 4"))
}

fn zp2_table(z3: &[u64], z5: &[u64]) -> Outcome {
    for (p, signed) in [(3u64, z3), (5, z5)] {
        for (i, &v) in signed.iter().enumerate() {
            let m = i as u64 + 1;
            let pred = zp2_table_prediction(p, m).unwrap();
            if v != pred {
                return Err(format!("refuted at p={p} m={m}: oracle {v}, table {pred}"));
            }
        }
    }
    let boxed = [(3, 4, 8), (5, 6, 15), (5, 7, 15), (5, 11, 24), (5, 12, 24)];
    for (p, m, want) in boxed {
        let got = if p == 3 { z3[m - 1] } else { z5[m - 1] };
        if got != want {
            return Err(format!("p={p} m={m}: {got}, expected {want}"));
        }
    }
    Ok("consistent for all 34 cells, boxed entries 8, 15, 15, 24, 24".into())
}

fn digit_suite() -> Outcome {
    let suite = DigitSuite {
        p_max: 31,
        r_max: 4,
        h_max: 6,
        m_max: 2000,
    };
    let (mut pass, mut first_fail) = (0u64, None);
    digit_minimizer_checks(&suite, |outcome, cell| {
        if outcome.verdict == Verdict::Pass {
            pass += 1;
        } else if first_fail.is_none() {
            first_fail = Some(format!("{cell:?}: {}", outcome.detail));
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    match first_fail {
        Some(f) => Err(f),
        None => Ok(format!("{pass} cells")),
    }
}

fn signed_kernel() -> Outcome {
    let pool = groups_up_to(30);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut sets = 0u64;
    let mut names = Vec::new();
    for _ in 0..20 {
        let g = &pool[rng.gen_range(0..pool.len())];
        names.push(g.to_string());
        for k in 1..=4.min(g.order()) {
            for idx in subsets_of_size(g.order(), k) {
                let a = ElementSet::from_indices(g, idx).unwrap();
                for h in 0..=3 {
                    if h_fold_signed_sumset(g, &a, h).unwrap() != naive_signed_sumset(g, &a, h) {
                        return Err(format!("{g} {} h={h}", a.format(g)));
                    }
                }
                sets += 1;
            }
        }
    }
    let z5 = GroupSpec::cyclic(5).unwrap();
    let a = ElementSet::from_indices(&z5, [1, 2]).unwrap();
    if h_fold_signed_sumset(&z5, &a, 2).unwrap().contains(0) {
        return Err("0 in 2_±{1,2} over Z5".into());
    }
    Ok(format!(
        "{sets} sets over {}; 0 not in 2_±{{1,2}} in Z5",
        names.join(" ")
    ))
}

fn cauchy_davenport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [3usize, 5, 7, 11, 13] {
        let g = GroupSpec::cyclic(p).unwrap();
        for _ in 0..10_000 {
            let mut pick = || {
                let k = rng.gen_range(1..=p);
                ElementSet::from_indices(&g, sample(&mut rng, p, k).into_vec()).unwrap()
            };
            let (a, b) = (pick(), pick());
            let s = set_add(&g, &a, &b).len();
            if s < p.min(a.len() + b.len() - 1) {
                return Err(format!("Z{p}: |{} + {}| = {s}", a.format(&g), b.format(&g)));
            }
        }
    }
    Ok("50000 pairs, 0 violations".into())
}

fn large_prime() -> Outcome {
    let p = 7usize;
    let g = GroupSpec::elementary(p, 2).unwrap();
    for m in 1..=6 {
        let v = signed_min(&g, m, 2, Family::AFamily)?;
        let equal = zp2_equality(p as u64, m as u64).unwrap();
        if (v == u(49, m, 2)) != equal {
            return Err(format!(
                "m={m}: signed {v}, plain {}, classified equal={equal}",
                u(49, m, 2)
            ));
        }
    }
    for m in 7..=49 {
        let probe = upper_bound_probe(&g, m, 2, 2000, m as u64)
            .map_err(|e| e.to_string())?
            .value as u64;
        let pred = zp2_table_prediction(p as u64, m as u64).unwrap();
        if !(u(49, m, 2) <= probe && probe <= pred) {
            return Err(format!(
                "m={m}: u {} <= probe {probe} <= table {pred} fails",
                u(49, m, 2)
            ));
        }
    }
    Ok("exact for m <= 6, u <= probe <= table for 7..49".into())
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_sumsets"))
            .args([
                "scan", "-g", "Z5^2", "--m", "1..25", "--h", "2", "--format", "jsonl", "--jobs",
                jobs,
            ])
            .env_remove("SUMSETS_BUDGET")
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("--jobs {jobs} exited {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let (one, eight) = (run("1")?, run("8")?);
    if one != eight {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", one.len()))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {name} ({detail}) [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {name} ({detail}) [{secs:.1}s]");
            }
        }
    };
    report(1, "cyclic signed minimum equals u", &mut cyclic_equality);
    report(
        2,
        "plain minimum equals u on every group of order <= 16",
        &mut plain_minimum,
    );
    report(
        3,
        "structural families reach the signed minimum",
        &mut family_reduction,
    );

    let z3 = zp2_signed_minima(3);
    let z5 = zp2_signed_minima(5);
    report(4, "Z3^2 equality classification", &mut || {
        zp2_p3(z3.as_deref()?)
    });
    report(5, "Z5^2 equality classification", &mut || {
        zp2_p5(z5.as_deref()?)
    });
    report(6, "Z_p^2 table for p in {3, 5}", &mut || {
        zp2_table(z3.as_deref()?, z5.as_deref()?)
    });

    report(7, "digit descriptions of the minimizers", &mut digit_suite);
    report(
        8,
        "signed sumset kernel against coefficient enumeration",
        &mut signed_kernel,
    );
    report(9, "Cauchy-Davenport on random pairs", &mut cauchy_davenport);
    report(10, "Z7^2 exact cells and probe bounds", &mut large_prime);
    report(11, "scan output independent of --jobs", &mut determinism);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
