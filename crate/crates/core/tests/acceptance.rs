//! End-to-end acceptance checks. Runs without the libtest harness and
//! prints one PASS/FAIL line per criterion; exits non-zero on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use cdlattice::catalog::{self, CatalogEntry};
use cdlattice::lattice;
use cdlattice::report::{self, Analysis, SweepOutcome, SweepReport, SweepRow, VerifyOptions};
use cdlattice::spec::GroupSpec;
use cdlattice::theorem::{self, Recognition, Truth, Verdict};
use cdlattice::Group;

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyze_spec(text: &str) -> Result<Analysis, String> {
    let spec = GroupSpec::parse(text).map_err(|e| format!("{text}: {e}"))?;
    report::run_verify(&spec, &VerifyOptions::default()).map_err(|e| format!("{text}: {e}"))
}

struct Run {
    entry: CatalogEntry,
    group: Group,
    analysis: Analysis,
}

/// Every catalog group of order 2..=128 analysed once, ordered by order
/// then name.
fn analyse_catalog() -> Result<Vec<Run>, String> {
    let mut runs: Vec<Run> = catalog::entries_in(2, catalog::CATALOG_MAX_ORDER)
        .into_par_iter()
        .map(|entry| {
            let group = entry.build().map_err(|e| format!("{}: {e}", entry.name))?;
            let analysis = report::analyze(&group, &VerifyOptions::default())
                .map_err(|e| format!("{}: {e}", entry.name))?;
            Ok(Run {
                entry,
                group,
                analysis,
            })
        })
        .collect::<Result<_, String>>()?;
    runs.sort_by(|a, b| (a.entry.order, &a.entry.name).cmp(&(b.entry.order, &b.entry.name)));
    Ok(runs)
}

fn q8_regression() -> Check {
    let start = Instant::now();
    let a = analyze_spec("Q8")?;
    let elapsed = start.elapsed();
    let g = a.group();
    let t = &a.theorem;

    let z = center_scan(g);
    let z_id = a
        .lattice
        .subgroups()
        .iter()
        .position(|h| h.members().iter().collect::<Vec<_>>() == z)
        .ok_or("centre missing from lattice")?;
    let oracle_m_star = a
        .lattice
        .subgroups()
        .iter()
        .map(|h| measure_scan(g, &h.members().iter().collect::<Vec<_>>()))
        .max()
        .unwrap();

    ensure(a.cd.m_star == 16 && oracle_m_star == 16, || {
        format!("m* = {} (scan {oracle_m_star})", a.cd.m_star)
    })?;
    ensure(a.cd.cd_members.len() == 5, || {
        format!("|CD| = {}", a.cd.cd_members.len())
    })?;
    ensure(a.cd_subgroup == z_id, || {
        "Chermak–Delgado subgroup is not Z(Q8)".into()
    })?;
    ensure(t.hypothesis == Truth::True, || {
        format!("hypothesis {}", t.hypothesis)
    })?;
    ensure((t.n, t.m, t.k) == (Some(3), Some(2), Some(1)), || {
        format!("(n,m,k) = {:?}", (t.n, t.m, t.k))
    })?;
    ensure(t.bound_slack == Some(0), || {
        format!("slack {:?}", t.bound_slack)
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "m*=16, |CD|=5, M=Z, (3,2,1), slack 0 in {elapsed:.2?}"
    ))
}

fn example_families() -> Check {
    let start = Instant::now();
    let specs = [
        "Q8",
        "Q8xC2",
        "Q8xC2xC2",
        "Q8xC2xC2xC2",
        "SDP(4,4,3)",
        "SDP(9,9,4)",
    ];
    for text in specs {
        let a = analyze_spec(text)?;
        let t = &a.theorem;
        ensure(t.hypothesis == Truth::True, || {
            format!("{text}: hypothesis {}", t.hypothesis)
        })?;
        ensure(equal_cyclic_measure_scan(a.group()) == Some(true), || {
            format!("{text}: scan disagrees")
        })?;
        ensure(t.violations().is_empty(), || {
            format!("{text}: {:?}", t.violations())
        })?;
    }
    // p = 5 gives order 625, past the default cap of 128.
    let p5 = GroupSpec::parse("SDP(25,25,6)").map_err(|e| e.to_string())?;
    let capped = report::run_verify(&p5, &VerifyOptions::default());
    ensure(matches!(capped, Err(ref e) if e.is_capacity()), || {
        format!("order 625 not capped: {:?}", capped.err())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} groups hold; SDP(25,25,6) refused by the order cap; {elapsed:.2?}",
        specs.len()
    ))
}

fn abelian_characterisation(runs: &[Run]) -> Check {
    let mut checked = 0;
    for r in runs
        .iter()
        .filter(|r| r.entry.order <= 64 && is_abelian(&r.group))
    {
        let elementary = is_elementary_abelian(&r.group);
        let holds = r.analysis.theorem.hypothesis == Truth::True;
        ensure(holds == elementary, || {
            format!(
                "{}: hypothesis {holds}, elementary {elementary}",
                r.entry.name
            )
        })?;
        checked += 1;
    }
    ensure(checked > 0, || "no abelian groups".into())?;
    Ok(format!(
        "{checked} abelian groups of order <= 64, zero exceptions"
    ))
}

fn smallest_examples(runs: &[Run]) -> Check {
    let counts: Vec<usize> = (2..=16)
        .map(|n| runs.iter().filter(|r| r.entry.order == n).count())
        .collect();
    ensure(
        counts == [1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14],
        || format!("catalog counts {counts:?}"),
    )?;

    let holders = |n: usize| -> BTreeSet<&str> {
        runs.iter()
            .filter(|r| r.entry.order == n && !is_abelian(&r.group))
            .filter(|r| r.analysis.theorem.hypothesis == Truth::True)
            .map(|r| r.entry.name.as_str())
            .collect()
    };
    for n in 2..8 {
        ensure(holders(n).is_empty(), || {
            format!("order {n}: {:?}", holders(n))
        })?;
    }
    ensure(holders(8) == BTreeSet::from(["Q8"]), || {
        format!("order 8: {:?}", holders(8))
    })?;
    for n in 9..16 {
        ensure(holders(n).is_empty(), || {
            format!("order {n}: {:?}", holders(n))
        })?;
    }
    ensure(
        holders(16) == BTreeSet::from(["Q8xC2", "SDP(4,4,3)"]),
        || format!("order 16: {:?}", holders(16)),
    )?;

    // SDP(4,4,3) is C4⋊C4: non-abelian, exponent 4, no element of order 8,
    // and exactly three involutions.
    let c4c4 = &runs
        .iter()
        .find(|r| r.entry.name == "SDP(4,4,3)")
        .unwrap()
        .group;
    let involutions = (0..16).filter(|&x| element_order(c4c4, x) == 2).count();
    let max_order = (0..16).map(|x| element_order(c4c4, x)).max().unwrap();
    ensure(involutions == 3 && max_order == 4, || {
        "SDP(4,4,3) is not C4⋊C4".into()
    })?;

    // Every verdict agrees with the independent scan.
    for r in runs.iter().filter(|r| r.entry.order <= 16) {
        let scan = equal_cyclic_measure_scan(&r.group) == Some(true);
        ensure(
            scan == (r.analysis.theorem.hypothesis == Truth::True),
            || format!("{}: scan disagrees", r.entry.name),
        )?;
    }
    Ok("non-abelian holders: {Q8} at 8, {Q8xC2, C4⋊C4} at 16, none below 8".into())
}

/// C1–C5 recomputed from the multiplication table.
fn recheck_conclusions(g: &Group) -> Result<(), String> {
    let (p, n) = prime_power(g.order()).ok_or("not a p-group")?;
    let z = center_scan(g);
    let order_p: Vec<usize> = (0..g.order())
        .filter(|&x| element_order(g, x) == p)
        .collect();
    ensure(closure(g, &order_p) == z, || "Omega_1 != Z".into())?;
    let k = log_p(z.len(), p).unwrap();
    let m = (0..g.order())
        .map(|x| log_p(element_order(g, x), p).unwrap())
        .max()
        .unwrap();
    let common = p.pow(n + 1);
    for x in (0..g.order()).filter(|&x| x != g.identity()) {
        let c = cyclic(g, x);
        ensure(measure_scan(g, &c) as usize == common, || {
            format!("measure of <{x}> != p^(n+1)")
        })?;
    }
    ensure(k + 2 * m <= n + 2, || {
        format!("bound fails: n={n} m={m} k={k}")
    })?;
    for b in (0..g.order()).filter(|&x| element_order(g, x) == p.pow(m)) {
        let bz: BTreeSet<usize> = cyclic(g, b)
            .iter()
            .flat_map(|&x| z.iter().map(move |&y| g.mul(x, y)))
            .collect();
        let cb = centralizer_scan(g, &[b]).len();
        ensure(
            bz.len() == p.pow(m + k - 1) && cb.is_multiple_of(bz.len()),
            || format!("divisibility fails at b={b}"),
        )?;
    }
    Ok(())
}

fn soundness_sweep(runs: &[Run]) -> Check {
    let start = Instant::now();
    let mut holders = 0;
    for r in runs {
        let t = &r.analysis.theorem;
        let scan = equal_cyclic_measure_scan(&r.group) == Some(true);
        ensure(scan == (t.hypothesis == Truth::True), || {
            format!("{}: hypothesis disagrees with scan", r.entry.name)
        })?;
        if t.hypothesis != Truth::True {
            for &(name, v) in &t.conclusions {
                ensure(v == Verdict::NotApplicable, || {
                    format!("{}: {name} is {v:?} without hypothesis", r.entry.name)
                })?;
            }
            continue;
        }
        holders += 1;
        for name in [
            theorem::P_GROUP,
            theorem::OMEGA1_EQUALS_CENTER,
            theorem::COMMON_VALUE,
            theorem::ORDER_BOUND,
            theorem::DIVISIBILITY,
        ] {
            ensure(t.conclusion(name) == Some(Verdict::Pass), || {
                format!("{}: {name} {:?}", r.entry.name, t.conclusion(name))
            })?;
        }
        recheck_conclusions(&r.group).map_err(|e| format!("{}: {e}", r.entry.name))?;
    }

    // A violating row must surface as exit status 3, ahead of row errors.
    let template = SweepRow {
        group: "X".into(),
        order: 2,
        abelian: true,
        hypothesis: "true".into(),
        condition_a: "true".into(),
        condition_b: "true".into(),
        recognition: "C2".into(),
        n: Some(1),
        m: Some(1),
        k: Some(1),
        bound_slack: Some(1),
        m_star: 4,
        cd_member_count: 1,
        subgroup_count: 2,
        violations: Vec::new(),
        error: None,
    };
    let mut violating = template.clone();
    violating.violations.push(theorem::ORDER_BOUND.into());
    let mut errored = template.clone();
    errored.error = Some("capacity".into());
    let report = |rows: Vec<SweepRow>| SweepReport {
        rows,
        summary: Default::default(),
    };
    ensure(
        report(vec![template.clone()]).outcome() == SweepOutcome::Clean,
        || "clean sweep misclassified".into(),
    )?;
    ensure(
        report(vec![errored.clone()]).outcome().exit_code() == 2,
        || "errored sweep not exit 2".into(),
    )?;
    ensure(
        report(vec![errored, violating]).outcome().exit_code() == 3,
        || "violating sweep not exit 3".into(),
    )?;

    let status = Command::new(env!("CARGO_BIN_EXE_cdlattice"))
        .args(["--quiet", "--max-order", "128", "sweep", "--no-properties"])
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), || {
        format!("CLI sweep exited {status}")
    })?;

    Ok(format!(
        "{} groups, {holders} holders, C1-C5 pass and rechecked; CLI sweep exit 0; {:.2?}",
        runs.len(),
        start.elapsed()
    ))
}

fn corollary_sweep(runs: &[Run]) -> Check {
    let mut holders = BTreeSet::new();
    for r in runs {
        let c = r
            .analysis
            .theorem
            .corollary
            .as_ref()
            .ok_or("corollary missing")?;
        let either = c.condition_a == Truth::True || c.condition_b == Truth::True;
        if either {
            ensure(c.recognition != Recognition::Neither, || {
                format!("{}: unrecognised", r.entry.name)
            })?;
            ensure(c.conclusion == Verdict::Pass, || {
                format!("{}: {:?}", r.entry.name, c.conclusion)
            })?;
            if r.entry.order <= 16 {
                holders.insert(r.entry.name.as_str());
            }
        }
        // Condition (a) implies the equal-cyclic-measure hypothesis.
        if c.condition_a == Truth::True {
            ensure(r.analysis.theorem.hypothesis == Truth::True, || {
                format!("{}: (a) without hypothesis", r.entry.name)
            })?;
        }
        // Independent recognition.
        let order = r.group.order();
        let involutions = (0..order)
            .filter(|&x| element_order(&r.group, x) == 2)
            .count();
        let expect = if prime_power(order).is_some_and(|(_, k)| k == 1) {
            Recognition::Cp(order as u64)
        } else if order == 8 && !is_abelian(&r.group) && involutions == 1 {
            Recognition::Q8
        } else {
            Recognition::Neither
        };
        ensure(c.recognition == expect, || {
            format!("{}: recognised as {}", r.entry.name, c.recognition)
        })?;
    }
    let expected = BTreeSet::from(["C2", "C3", "C5", "C7", "C11", "C13", "Q8"]);
    ensure(holders == expected, || {
        format!("holders up to 16: {holders:?}")
    })?;
    Ok(format!(
        "{} groups; holders up to 16 = {{C2, C3, C5, C7, C11, C13, Q8}}",
        runs.len()
    ))
}

const PROPERTY_NAMES: [&str; 12] = [
    "p1_duality_inequality",
    "p1_double_centralizer",
    "p2_centralizer_in_cd",
    "p2_double_centralizer",
    "p3_meet_join_closed",
    "p3_modular",
    "p3_self_dual",
    "p4_min_abelian",
    "p4_min_contains_center",
    "p4_min_normal",
    "p5_max_normal",
    "p5_max_cd_equal",
];

fn cd_properties(runs: &[Run]) -> Check {
    let mut checked = 0;
    for r in runs.iter().filter(|r| r.entry.order <= 64) {
        let cd = &r.analysis.cd;
        let names: BTreeSet<&str> = cd.properties.iter().map(|p| p.name).collect();
        ensure(names == PROPERTY_NAMES.into(), || {
            format!("{}: property checks {names:?}", r.entry.name)
        })?;
        if let Some(f) = cd.failures().next() {
            return Err(format!("{}: {} ({:?})", r.entry.name, f.name, f.witness));
        }

        // Independent: CD members by scan, closure under intersection and
        // join, and the minimal member's structure.
        let g = &r.group;
        let subs: Vec<Vec<usize>> = r
            .analysis
            .lattice
            .subgroups()
            .iter()
            .map(|h| h.members().iter().collect())
            .collect();
        let measures: Vec<u64> = subs.iter().map(|h| measure_scan(g, h)).collect();
        let m_star = *measures.iter().max().unwrap();
        let members: BTreeSet<Vec<usize>> = subs
            .iter()
            .zip(&measures)
            .filter(|(_, &m)| m == m_star)
            .map(|(h, _)| h.clone())
            .collect();
        let reported: BTreeSet<Vec<usize>> =
            cd.cd_members.iter().map(|&i| subs[i].clone()).collect();
        ensure(members == reported, || {
            format!("{}: CD members differ from scan", r.entry.name)
        })?;
        for a in &members {
            for b in &members {
                let meet: Vec<usize> = a
                    .iter()
                    .copied()
                    .filter(|x| b.binary_search(x).is_ok())
                    .collect();
                let join = closure(g, &a.iter().chain(b).copied().collect::<Vec<_>>());
                ensure(members.contains(&meet) && members.contains(&join), || {
                    format!("{}: CD not a sublattice", r.entry.name)
                })?;
            }
        }
        let min = members.iter().min_by_key(|h| h.len()).unwrap();
        ensure(
            members
                .iter()
                .all(|h| min.iter().all(|x| h.binary_search(x).is_ok())),
            || format!("{}: no least CD member", r.entry.name),
        )?;
        let z = center_scan(g);
        ensure(
            z.iter().all(|x| min.binary_search(x).is_ok())
                && min.iter().all(|&a| min.iter().all(|&b| commute(g, a, b)))
                && is_normal_scan(g, min),
            || format!("{}: M(G) not abelian, normal and over Z", r.entry.name),
        )?;
        checked += 1;
    }
    Ok(format!(
        "{checked} groups of order <= 64, all P1-P5 checks pass and CD rechecked by scan"
    ))
}

fn oracle_equivalence(runs: &[Run]) -> Check {
    let start = Instant::now();
    let small: Vec<&Run> = runs.iter().filter(|r| r.entry.order <= 24).collect();
    small.par_iter().try_for_each(|r| {
        let oracle = subgroups_by_subsets(&r.group);
        let ours: BTreeSet<Vec<usize>> = r
            .analysis
            .lattice
            .subgroups()
            .iter()
            .map(|h| h.members().iter().collect())
            .collect();
        ensure(
            oracle == ours && ours.len() == r.analysis.lattice.len(),
            || {
                format!(
                    "{}: {} subgroups, oracle {}",
                    r.entry.name,
                    ours.len(),
                    oracle.len()
                )
            },
        )
    })?;
    let measured: usize = runs
        .par_iter()
        .map(|r| {
            let g = &r.group;
            for (h, row) in r
                .analysis
                .lattice
                .subgroups()
                .iter()
                .zip(&r.analysis.cd.measures)
            {
                let members: Vec<usize> = h.members().iter().collect();
                let c = centralizer_scan(g, &members).len();
                if row.size != members.len()
                    || row.centralizer_size != c
                    || row.measure != (members.len() * c) as u64
                {
                    return Err(format!(
                        "{}: measure of subgroup {} differs",
                        r.entry.name, row.id
                    ));
                }
                if lattice::centralizer(g, h).size() != c {
                    return Err(format!(
                        "{}: centralizer of subgroup {} differs",
                        r.entry.name, row.id
                    ));
                }
            }
            Ok(r.analysis.lattice.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} groups match the subset oracle; {measured} measures rechecked; {elapsed:.2?}",
        small.len()
    ))
}

fn main() -> ExitCode {
    let runs = analyse_catalog();
    let with_runs = |f: fn(&[Run]) -> Check| -> Check {
        match &runs {
            Ok(r) => f(r),
            Err(e) => Err(format!("catalog analysis failed: {e}")),
        }
    };
    let results: Vec<(&str, Check)> = vec![
        ("1 Q8 regression", q8_regression()),
        ("2 example families", example_families()),
        (
            "3 abelian characterisation",
            with_runs(abelian_characterisation),
        ),
        ("4 smallest examples", with_runs(smallest_examples)),
        ("5 soundness sweep", with_runs(soundness_sweep)),
        ("6 corollary sweep", with_runs(corollary_sweep)),
        ("7 CD-lattice properties", with_runs(cd_properties)),
        ("8 oracle equivalence", with_runs(oracle_equivalence)),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
