//! Acceptance suite: one PASS/FAIL line per criterion, exit status nonzero if
//! any criterion fails. All comparisons are exact; the only tolerances are the
//! wall-clock budgets pinned below.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use heckeq_core::series::coeff_fraction_string;
use heckeq_core::string::string_c_triple;
use heckeq_core::suite::{run_identities, run_suite, suite_identities, Fault, DEFAULT_SEED};
use heckeq_core::theta::euler;
use heckeq_core::{coeff, FracExp, IdentityReport, StringIndex, Status};

const KP_HECKE_BUDGET: Duration = Duration::from_secs(60);
const KP_ETA_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn o(n: i64) -> FracExp {
    FracExp::int(n)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_verified(reports: &[IdentityReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.status != Status::Verified) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} is {}: {}",
            r.identity_id,
            r.status.as_str(),
            r.first_discrepancy
                .as_ref()
                .map(|d| format!("q^{} lhs {} rhs {}", d.exponent, d.lhs_coeff, d.rhs_coeff))
                .or_else(|| r.error.clone())
                .unwrap_or_default()
        )),
    }
}

fn find<'a>(reports: &'a [IdentityReport], id: &str) -> Result<&'a IdentityReport, String> {
    reports.iter().find(|r| r.identity_id == id).ok_or_else(|| format!("missing {id}"))
}

/// Equation name of a randomized identity id (`suite/name#k...`).
fn family(id: &str) -> &str {
    id.split('#').next().unwrap_or(id)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn kp_hecke() -> Outcome {
    let (reports, t) = timed(|| run_suite("kp-hecke", Some(o(60))).unwrap());
    ensure(reports.len() == 13, format!("{} reports, expected 13", reports.len()))?;
    all_verified(&reports)?;
    let b = find(&reports, "kp-hecke/10B")?;
    ensure(
        b.lhs == "f(6,6,1; q^6, q^4)" && b.rhs == "J(4,10)*J(3,15)",
        "f_{6,6,1}(q^6,q^4,q) = J_{4,10}J_{3,15} not in suite",
    )?;
    for id in ["4B", "6B", "6C", "8B", "10C"] {
        let r = find(&reports, &format!("kp-hecke/{id}"))?;
        ensure(r.lhs.contains(" - ") || r.lhs.contains(" + "), format!("{id} is not a ±-combination"))?;
    }
    ensure(t < KP_HECKE_BUDGET, format!("took {t:?}"))?;
    Ok(format!("13/13 verified at order 60 in {:.2}s", t.as_secs_f64()))
}

fn kp_eta() -> Outcome {
    let (reports, t) = timed(|| run_suite("kp-eta", Some(o(40))).unwrap());
    ensure(reports.len() == 12, format!("{} reports, expected 12", reports.len()))?;
    all_verified(&reports)?;
    ensure(reports.iter().all(|r| r.lhs.starts_with("C(")), "left sides must be triple-sum string functions")?;
    for (id, pre) in [("8B", "q^(1/10)"), ("10B", "q^(29/40)"), ("10C", "q^(-1/15)")] {
        let r = find(&reports, &format!("kp-eta/{id}"))?;
        ensure(r.rhs.contains("rp(") && r.rhs.contains(pre), format!("{id} lacks its restricted product or {pre}"))?;
    }
    ensure(t < KP_ETA_BUDGET, format!("took {t:?}"))?;
    Ok(format!("12/12 verified at order 40 in {:.2}s", t.as_secs_f64()))
}

const INDICES: [&str; 6] = ["2,1,1", "4,2,0", "4,2,2", "6,5,1", "8,6,2", "10,9,1"];

fn cross() -> Outcome {
    let reports = run_suite("cross", Some(o(20))).unwrap();
    all_verified(&reports)?;
    for i in INDICES {
        find(&reports, &format!("cross/C=S({i})"))?;
        find(&reports, &format!("cross/S=KPL({i})"))?;
    }
    Ok(format!("C = S = KPL at order 20 for {} indices ({} checks)", INDICES.len(), reports.len()))
}

fn symmetry() -> Outcome {
    let reports = run_suite("string-sym", Some(o(25))).unwrap();
    all_verified(&reports)?;
    for i in INDICES {
        for tag in ["neg", "refl", "dual"] {
            find(&reports, &format!("string-sym/{tag}({i})"))?;
        }
    }
    Ok(format!("{} symmetry instances verified at order 25", reports.len()))
}

fn main_theorem() -> Outcome {
    let reports = run_suite("main-thm", Some(o(25))).unwrap();
    all_verified(&reports)?;
    let count = |p: &str| reports.iter().filter(|r| r.identity_id.starts_with(p)).count();
    let (plus, minus) = (count("main-thm/split+"), count("main-thm/split-"));
    let (cl, cm) = (count("main-thm/cor-l"), count("main-thm/cor-m"));
    let (pp, pm) = (count("main-thm/prop51+"), count("main-thm/prop51-"));
    ensure(plus == 6 && minus == 6, format!("splitting theorem: {plus}+/{minus}-"))?;
    ensure(cl >= 3 && cm >= 3, format!("corollaries: {cl}/{cm}"))?;
    ensure(pp == 10 && pm == 10, format!("disguised forms: {pp}+/{pm}-"))?;
    Ok(format!("theorem {plus}+{minus}, corollaries {cl}+{cm}, disguised forms {pp}+{pm} at order 25"))
}

fn expansion() -> Outcome {
    let reports = run_suite("expansion", None).unwrap();
    all_verified(&reports)?;
    let mut fams: BTreeMap<&str, Vec<&IdentityReport>> = BTreeMap::new();
    for r in &reports {
        fams.entry(family(&r.identity_id)).or_default().push(r);
    }
    let mut random = 0;
    for name in (1..=3).map(|p| format!("expansion/f1p1(p={p})")).chain((2..=6).map(|n| format!("expansion/fnn1(n={n})"))) {
        let rs = fams.get(name.as_str()).ok_or_else(|| format!("missing {name}"))?;
        ensure(rs.len() >= 10, format!("{name}: {} instances", rs.len()))?;
        ensure(rs.iter().all(|r| r.order == o(25) && r.lhs.starts_with("f(")), format!("{name}: order or lhs"))?;
        random += rs.len();
    }
    for id in ["f551", "f441", "f331"] {
        ensure(find(&reports, &format!("expansion/{id}"))?.order == o(50), format!("{id} order"))?;
    }
    let theta = run_identities(
        &suite_identities("theta-id", DEFAULT_SEED)
            .unwrap()
            .into_iter()
            .filter(|i| i.id.starts_with("theta-id/f661"))
            .collect::<Vec<_>>(),
        None,
        &[],
    );
    ensure(theta.len() == 2 && theta.iter().all(|r| r.order == o(60)), "f661 theta identities")?;
    all_verified(&theta)?;
    Ok(format!("{random} random expansions at 25, 3 evaluations at 50, 2 theta identities at 60"))
}

fn functional_equations() -> Outcome {
    let mut summary = Vec::new();
    for suite in ["theta-id", "appell", "hecke-fe"] {
        let ids = suite_identities(suite, DEFAULT_SEED).unwrap();
        let again = suite_identities(suite, DEFAULT_SEED).unwrap();
        ensure(
            ids.iter().zip(&again).all(|(a, b)| a.lhs.text() == b.lhs.text() && a.rhs.text() == b.rhs.text()),
            format!("{suite}: instances depend on more than the seed"),
        )?;
        let reports = run_identities(&ids, None, &[]);
        all_verified(&reports)?;
        let mut fams: BTreeMap<&str, usize> = BTreeMap::new();
        for r in reports.iter().filter(|r| r.identity_id.contains('#')) {
            ensure(r.order >= o(30) && r.order <= o(40), format!("{} at order {}", r.identity_id, r.order))?;
            *fams.entry(family(&r.identity_id)).or_default() += 1;
        }
        if let Some((name, n)) = fams.iter().find(|(_, n)| **n < 25) {
            return Err(format!("{name}: only {n} instances"));
        }
        summary.push(format!("{suite} {} eqs/{} instances", fams.len(), fams.values().sum::<usize>()));
    }
    Ok(summary.join(", "))
}

/// Partitions of `n` into parts of size at most `max`, by direct recursion.
fn partitions(n: i64, max: i64) -> i64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|part| partitions(n - part, part)).sum()
}

fn oracles() -> Outcome {
    let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
    let brute: Vec<i64> = (0..=8).map(|n| partitions(n, n)).collect();
    ensure(brute == expected, format!("brute-force counter gives {brute:?}"))?;
    let idx = StringIndex::new(1, 0, 0).unwrap();
    let lead = FracExp::new(-1, 24);
    let c = string_c_triple(&idx, o(8) + lead).unwrap();
    for (n, p) in brute.iter().enumerate() {
        let got = c.coeff(FracExp::int(n as i64) + lead);
        ensure(got == coeff(*p), format!("C(1,0,0) at q^({n}-1/24): {got}, partition count {p}"))?;
    }
    // J_1 three ways: library, direct product, pentagonal number theorem
    let n = 15usize;
    let mut product = vec![0i64; n + 1];
    product[0] = 1;
    for i in 1..=n {
        for k in (i..=n).rev() {
            product[k] -= product[k - i];
        }
    }
    let mut pentagonal = vec![0i64; n + 1];
    for k in -4i64..=4 {
        let e = k * (3 * k - 1) / 2;
        if (0..=n as i64).contains(&e) {
            pentagonal[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    ensure(product == pentagonal, "direct product differs from pentagonal series")?;
    let j1 = euler(1, o(n as i64));
    for (k, want) in product.iter().enumerate() {
        let got = j1.coeff(o(k as i64));
        ensure(got == coeff(*want), format!("J_1 at q^{k}: {}", coeff_fraction_string(&got)))?;
    }
    Ok("p(0..8) = 1,1,2,3,5,7,11,15,22 from C(1,0,0); J_1 = pentagonal = product to order 15".into())
}

fn fault_injection() -> Outcome {
    let ids = suite_identities("all", DEFAULT_SEED).unwrap();
    let faults: Vec<Fault> = ids
        .iter()
        .enumerate()
        .map(|(k, i)| {
            let top = i.order.floor();
            Fault::new(i.id.clone(), o((k as i64 * 7919) % (top + 1)))
        })
        .collect();
    let reports = run_identities(&ids, None, &faults);
    for (r, f) in reports.iter().zip(&faults) {
        let d = r
            .first_discrepancy
            .as_ref()
            .filter(|_| r.status == Status::Failed)
            .ok_or_else(|| format!("{} not failed under a fault at q^{}", r.identity_id, f.exponent))?;
        ensure(
            d.exponent == f.exponent && d.lhs_coeff.clone() - d.rhs_coeff.clone() == f.delta,
            format!("{}: discrepancy at q^{}, injected at q^{}", r.identity_id, d.exponent, f.exponent),
        )?;
    }

    let bin = env!("CARGO_BIN_EXE_heckeq");
    let json = std::env::temp_dir().join(format!("heckeq-acceptance-{}.json", std::process::id()));
    let run = |extra: &[&str]| {
        Command::new(bin)
            .args(["verify", "--suite", "kp-hecke", "--order", "60", "--json"])
            .arg(&json)
            .args(extra)
            .output()
            .expect("run heckeq")
            .status
            .code()
    };
    ensure(run(&[]) == Some(0), "clean kp-hecke run does not exit 0")?;
    let code = run(&["--inject-fault", "kp-hecke/8A@23"]);
    ensure(code == Some(1), format!("faulted run exits {code:?}"))?;
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).map_err(|e| e.to_string())?).unwrap();
    let _ = std::fs::remove_file(&json);
    let failed: Vec<&serde_json::Value> = v.as_array().unwrap().iter().filter(|r| r["status"] == "failed").collect();
    ensure(
        failed.len() == 1
            && failed[0]["identity_id"] == "kp-hecke/8A"
            && failed[0]["first_discrepancy"]["exponent"] == "23/1",
        format!("JSON failed entries: {failed:?}"),
    )?;
    Ok(format!("{} identities each caught at the injected exponent; CLI exit codes 0/1", reports.len()))
}

fn main() {
    let criteria: [Check; 9] = [
        ("kp-hecke suite", kp_hecke),
        ("kp-eta suite", kp_eta),
        ("cross-method suite", cross),
        ("symmetry suite", symmetry),
        ("main-theorem suite", main_theorem),
        ("expansion suite", expansion),
        ("functional-equation suites", functional_equations),
        ("oracle checks", oracles),
        ("fault injection", fault_injection),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (outcome, t) = timed(check);
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail} [{:.1}s]", n + 1, t.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL - {why} [{:.1}s]", n + 1, t.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
