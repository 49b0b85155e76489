//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use clap::Parser;
use hyperind::dress::{dress_certificate, marks_matrix};
use hyperind::families;
use hyperind::gamma::classify_all;
use hyperind::goursat::{goursat_enumerate, ProductSubgroup};
use hyperind::group::FiniteGroup;
use hyperind::selfcheck::{
    check_dichotomy, check_dress, check_goursat, check_cyclic_quotients, check_split_laws, corpus_group,
    standard_corpus, DICHOTOMY_GROUPS, SMALL_GROUPS,
};
use hyperind_cli::{run, Cli};
use num_rational::BigRational;
use num_traits::One;

type Criterion = (&'static str, fn() -> Verdict, Duration);

struct Verdict {
    passed: bool,
    detail: String,
}

fn cli_text(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("hyperind").chain(args.iter().copied()))
        .expect("arguments parse");
    let out = run(&cli);
    (out.code, out.output)
}

/// Smallest `q^l ≥ k·n`, by repeated multiplication in `u128`.
fn bound_oracle(q: u128, n: u128) -> u128 {
    let (mut k, mut m) = (0u128, n);
    while m % q == 0 {
        m /= q;
        k += 1;
    }
    let mut power = 1u128;
    while power < k * n {
        power *= q;
    }
    power
}

fn exponents() -> Verdict {
    let (code, text) = cli_text(&["exponents", "60"]);
    let expected = [(2u128, 128u128), (3, 81), (5, 125)];
    let oracle_ok = expected.iter().all(|&(q, b)| bound_oracle(q, 60) == b);
    let lines_ok = expected
        .iter()
        .all(|&(q, b)| text.contains(&format!("c_{q}(60) = ")) && text.contains(&format!(" = {b}\n")));
    let passed = code == 0
        && text.contains("c = 1296000\n")
        && text.contains("d = 120\n")
        && oracle_ok
        && lines_ok;
    Verdict {
        passed,
        detail: "c(60) = 1296000, d(60) = 120, per-prime 128/81/125".into(),
    }
}

fn cyclic_quotients() -> Verdict {
    match check_cyclic_quotients(&[2, 3, 5], 100) {
        Ok(r) => Verdict {
            passed: r.passed,
            detail: format!("{} groups, {} exceptions", r.cases, r.failures.len()),
        },
        Err(e) => Verdict {
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Hyperelementary subgroups of `G × Z/N` counted in the materialized subgroups.
fn hyperelementary_count(g: &FiniteGroup, n: u64, p: u64) -> usize {
    goursat_enumerate(g, n)
        .into_iter()
        .map(|r| ProductSubgroup::new(r, n))
        .filter(|h| {
            let hg = h.materialize(g, usize::MAX).expect("materializes");
            families::is_p_hyperelementary(&hg, p).expect("prime")
        })
        .count()
}

fn dichotomy() -> Verdict {
    let groups: Vec<FiniteGroup> = DICHOTOMY_GROUPS.iter().map(|s| corpus_group(s)).collect();
    let r = check_dichotomy(&groups, &[2, 3], &[2, 3]);
    let mut missing = Vec::new();
    for g in &groups {
        for p in [2, 3] {
            for big_m in [2, 3] {
                let Ok(sweep) = classify_all(g, p, big_m) else {
                    missing.push(format!("{} p={p} M={big_m}", g.label()));
                    continue;
                };
                if sweep.records.len() != hyperelementary_count(g, sweep.modulus, p) {
                    missing.push(format!("{} p={p} M={big_m}", g.label()));
                }
            }
        }
    }
    Verdict {
        passed: r.passed && missing.is_empty(),
        detail: format!(
            "{} subgroups classified, {} audit failures, {} coverage mismatches",
            r.cases,
            r.failures.len(),
            missing.len()
        ),
    }
}

fn sym3_identity() -> bool {
    let g = corpus_group("sym:3");
    let Ok(cert) = dress_certificate(&g, 3) else {
        return false;
    };
    let Ok(marks) = marks_matrix(&g, 3) else {
        return false;
    };
    // each certificate term weighs its row of marks
    (0..marks.columns.len()).all(|j| {
        let total: BigRational = cert
            .entries
            .iter()
            .map(|e| {
                let i = marks.rows.iter().position(|r| r == &e.class).expect("row present");
                &e.coefficient * BigRational::from_integer(marks.entries[i][j].into())
            })
            .sum();
        total.is_one()
    }) && marks.columns.len() == 3
}

fn dress() -> Verdict {
    let corpus = match standard_corpus(48) {
        Ok(c) => c,
        Err(e) => {
            return Verdict {
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let r = check_dress(&corpus);
    let sym3 = sym3_identity();
    Verdict {
        passed: r.passed && sym3,
        detail: format!(
            "{} groups, {} (group, prime) certificates, {} failures, sym:3 at 3 exact: {sym3}",
            corpus.len(),
            r.cases,
            r.failures.len()
        ),
    }
}

fn goursat() -> Verdict {
    let groups: Vec<FiniteGroup> = SMALL_GROUPS.iter().map(|s| corpus_group(s)).collect();
    match check_goursat(&groups, 8) {
        Ok(r) => Verdict {
            passed: r.passed,
            detail: format!("{} (G, N) pairs, {} mismatches", r.cases, r.failures.len()),
        },
        Err(e) => Verdict {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn arithmetic() -> Verdict {
    let r = check_split_laws(200);
    Verdict {
        passed: r.passed && r.cases == 40_000,
        detail: format!("{} cases, {} failures", r.cases, r.failures.len()),
    }
}

fn vanishing() -> Verdict {
    let (c30, t30) = cli_text(&["vanishing", "30"]);
    let (c12, t12) = cli_text(&["vanishing", "12"]);
    let passed = c30 == 0
        && c12 == 0
        && t30.contains("square-free: true")
        && t30.contains("square-free, so NK_n(ZG) = 0 for n <= 1")
        && t12.contains("zero localizations: {3}\n");
    Verdict {
        passed,
        detail: "|G| = 30 square-free, |G| = 12 lists {3}".into(),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 exponent reproduction", exponents, Duration::from_secs(1)),
        ("2 hyperelementary corpus", cyclic_quotients, Duration::from_secs(120)),
        ("3 deep/elementary dichotomy", dichotomy, Duration::from_secs(600)),
        ("4 induction certificates", dress, Duration::from_secs(300)),
        ("5 product subgroup oracle", goursat, Duration::MAX),
        ("6 arithmetic laws", arithmetic, Duration::MAX),
        ("7 vanishing report", vanishing, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let in_time = elapsed < limit;
        let passed = verdict.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} ({:.2?}{})",
            if passed { "PASS" } else { "FAIL" },
            verdict.detail,
            elapsed,
            if in_time { "" } else { ", over time limit" }
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
