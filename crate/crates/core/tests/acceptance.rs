//! Acceptance suite. Runs without the libtest harness so every criterion prints
//! exactly one PASS/FAIL line; the process exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use powsum::campaign::{run_campaign, GridSpec, Report};
use powsum::engine::{
    dd_dominance_check_exact, replay_monotonicity_with, CheckName, DominanceStatus, Evaluator,
};
use powsum::numeric::{rat, ArithMode, EvalConfig, Mode, Outcome, Scalar};
use powsum::powersum::{slope_aux, SlopeAux};

// Pinned limits.
const EXACT_SUITE_BUDGET: Duration = Duration::from_secs(60);
const MAX_INDETERMINATE_RATE: f64 = 0.01;
const F64_REL_TOL: f64 = 1e-9;
const DOMINANCE_TRIALS: usize = 10_000;
const DOMINANCE_SEED: u64 = 0x5eed_2d0d;
/// One trial in this many is built so that both divided differences coincide.
const EQUALITY_EVERY: usize = 250;

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    rat(n, d)
}

fn int_sums(max_n: u64, k: u32) -> Vec<BigInt> {
    // s[i] = 1^k + ... + i^k, computed without the library
    let mut s = vec![BigInt::from(0)];
    for i in 1..=max_n {
        let t = BigInt::from(i).pow(k);
        let next = s.last().unwrap() + t;
        s.push(next);
    }
    s
}

fn tally(rep: &Report) -> String {
    format!(
        "{} holds, {} fails, {} indeterminate",
        rep.summary.holds, rep.summary.fails, rep.summary.indeterminate
    )
}

fn require_all_hold(rep: &Report, what: &str) -> Result<(), String> {
    if rep.summary.fails == 0 && rep.summary.indeterminate == 0 {
        Ok(())
    } else {
        let first = rep.records.iter().find(|r| r.outcome != Outcome::Holds).unwrap();
        Err(format!("{what}: {} (first: n={:?} r={} alpha={:?} rprime={:?})", tally(rep), first.n, first.r, first.alpha, first.rprime))
    }
}

fn power_ratio_monotone_exact() -> Check {
    let start = Instant::now();
    let grid = GridSpec::new(CheckName::Theorem1, 1, 300, (1..=6).map(|r| q(r, 1)).collect())
        .alpha((2..=5).map(|a| q(a, 1)).collect())
        .mode(ArithMode::Exact);
    let rep = run_campaign(&grid).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    require_all_hold(&rep, "campaign")?;
    if rep.records.len() != 6 * 4 * 300 {
        return Err(format!("expected 7200 records, got {}", rep.records.len()));
    }
    // independent oracle: S_n(r)^a S_{n+1}(e) >= S_{n+1}(r)^a S_n(e), integers only
    let mut sums: HashMap<u32, Vec<BigInt>> = HashMap::new();
    for rec in &rep.records {
        let r: u32 = rec.r.parse().unwrap();
        let a: u32 = rec.alpha.as_deref().unwrap().parse().unwrap();
        let e = a * (r + 1) - 1;
        let n = rec.n.unwrap() as usize;
        for k in [r, e] {
            sums.entry(k).or_insert_with(|| int_sums(301, k));
        }
        let (sr, se) = (&sums[&r], &sums[&e]);
        let lhs = sr[n].clone().pow(a) * &se[n + 1];
        let rhs = sr[n + 1].clone().pow(a) * &se[n];
        let oracle_eq = lhs == rhs;
        if lhs < rhs || oracle_eq != rec.equality {
            return Err(format!("oracle disagrees at n={n} r={r} alpha={a}"));
        }
    }
    let equalities = rep.records.iter().filter(|r| r.equality).count();
    if elapsed > EXACT_SUITE_BUDGET {
        return Err(format!("took {elapsed:?}, budget {EXACT_SUITE_BUDGET:?}"));
    }
    Ok(format!("{}; {equalities} equalities; oracle agrees; {elapsed:.1?}", tally(&rep)))
}

fn identity_case() -> Check {
    let ev = Evaluator::new();
    let (one, two) = (q(1, 1), q(2, 1));
    for n in 1..=10_000u64 {
        let t = ev.power_ratio_term(n, &one, &two, Mode::Exact).map_err(|e| e.to_string())?;
        if t.as_exact() != Some(&BigRational::one()) {
            return Err(format!("term at n={n} is {t}"));
        }
        // closed forms: (n(n+1)/2)^2 and its cube sum agree
        if n % 1000 == 0 {
            let s1: BigInt = BigInt::from(n) * BigInt::from(n + 1) / 2;
            let s3 = int_sums(n, 3)[n as usize].clone();
            if s1.clone() * s1 != s3 {
                return Err(format!("closed form mismatch at n={n}"));
            }
        }
    }
    let grid = GridSpec::new(CheckName::Theorem1, 1, 200, vec![one]).alpha(vec![two]).mode(ArithMode::Exact);
    let rep = run_campaign(&grid).map_err(|e| e.to_string())?;
    require_all_hold(&rep, "check")?;
    if !rep.records.iter().all(|r| r.equality) {
        return Err("non-strict check did not report equality".into());
    }
    Ok(format!("term = 1 for n <= 10000; check holds with equality on n <= 200 ({})", tally(&rep)))
}

fn bennett_closed_form() -> Check {
    let ev = Evaluator::new();
    let one = q(1, 1);
    for n in 1..=1000u64 {
        let p = ev.p_ratio(n, &one, Mode::Exact).map_err(|e| e.to_string())?;
        let want = BigRational::new(BigInt::from(n + 1), BigInt::from(n + 2));
        if p.as_exact() != Some(&want) {
            return Err(format!("P_{n}(1) = {p}, want {want}"));
        }
    }
    let upper = GridSpec::new(
        CheckName::BennettR1Upper,
        1,
        100,
        vec![q(2, 1), q(3, 1), q(4, 1), q(3, 2)],
    );
    let upper = run_campaign(&upper).map_err(|e| e.to_string())?;
    require_all_hold(&upper, "upper")?;
    let rev = GridSpec::new(CheckName::BennettR1Reversed, 1, 100, vec![q(1, 2), q(3, 4)]);
    let rev = run_campaign(&rev).map_err(|e| e.to_string())?;
    require_all_hold(&rev, "reversed")?;
    Ok(format!("closed form for n <= 1000; upper {}; reversed {}", tally(&upper), tally(&rev)))
}

fn strict_positive_bounds() -> Check {
    let rs = vec![q(1, 2), q(1, 1), q(3, 2), q(2, 1), q(4, 1), q(8, 1)];
    let mut out = Vec::new();
    for check in [CheckName::Alzer, CheckName::Martins] {
        let rep = run_campaign(&GridSpec::new(check, 1, 100, rs.clone())).map_err(|e| e.to_string())?;
        require_all_hold(&rep, check.as_str())?;
        if rep.records.iter().any(|r| r.precision_bits != 128) {
            return Err(format!("{check}: escalation beyond default start precision"));
        }
        out.push(format!("{check}: {}", tally(&rep)));
    }
    Ok(out.join("; "))
}

fn negative_exponent_bounds() -> Check {
    let rs = vec![q(-1, 2), q(-1, 1), q(-2, 1), q(-8, 1)];
    let mut out = Vec::new();
    for check in [CheckName::AlzerNegLower, CheckName::AlzerNegUpper] {
        let rep = run_campaign(&GridSpec::new(check, 1, 100, rs.clone())).map_err(|e| e.to_string())?;
        if rep.summary.fails != 0 {
            return Err(format!("{check}: {}", tally(&rep)));
        }
        out.push(format!("{check}: {}", tally(&rep)));
    }
    Ok(out.join("; "))
}

fn g_f64(r: f64, a: f64) -> f64 {
    1.0 + 2f64.powf(a * (r + 1.0) - 1.0) - (1.0 + 2f64.powf(r)).powf(a)
}

fn base_gap_grid() -> Check {
    let quarters = |lo: i64, hi: i64| (4 * lo..=4 * hi).map(|k| q(k, 4)).collect::<Vec<_>>();
    let grid = GridSpec::new(CheckName::Lemma23Grid, 1, 1, quarters(1, 10)).alpha(quarters(2, 10));
    let rep = run_campaign(&grid).map_err(|e| e.to_string())?;
    require_all_hold(&rep, "grid")?;
    let eq: Vec<_> = rep.records.iter().filter(|r| r.equality).collect();
    if eq.len() != 1 || eq[0].r != "1" || eq[0].alpha.as_deref() != Some("2") {
        let at: Vec<_> = eq.iter().map(|r| format!("({}, {:?})", r.r, r.alpha)).collect();
        return Err(format!("equality expected only at (1, 2), found at {}", at.join(" ")));
    }
    // double-precision oracle agrees on sign everywhere
    for rec in &rep.records {
        let r = rec.r.parse::<BigRational>().unwrap().to_f64().unwrap();
        let a = rec.alpha.as_deref().unwrap().parse::<BigRational>().unwrap().to_f64().unwrap();
        let g = g_f64(r, a);
        let scale = 2f64.powf(a * (r + 1.0) - 1.0);
        if g < -F64_REL_TOL * scale {
            return Err(format!("f64 oracle negative at ({r}, {a})"));
        }
    }
    // auxiliary function: positive at 2, convex on [2, 100]
    let cfg = EvalConfig::interval();
    let h2 = slope_aux(&Scalar::from_int(2, Mode::Interval(128)), SlopeAux::Value).map_err(|e| e.to_string())?;
    if !h2.is_provably_positive() {
        return Err(format!("h(2) = {h2} not provably positive"));
    }
    let oracle = 8.0 * 4f64.ln() - 9.0 * 3f64.ln();
    if (h2.to_f64() - oracle).abs() > F64_REL_TOL {
        return Err(format!("h(2) = {} vs oracle {oracle}", h2.to_f64()));
    }
    let mut samples = 0;
    for k in 4..=200i64 {
        let x = q(k, 2);
        let v = powsum::numeric::compare_ge(
            |m| slope_aux(&Scalar::from_ratio(&x, m), SlopeAux::SecondDerivative),
            |m| Ok(Scalar::from_int(0, m)),
            true,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        if !v.holds() {
            return Err(format!("h'' at x = {x}: {}", v.outcome));
        }
        samples += 1;
    }
    Ok(format!("{} grid points; equality only at (1, 2); h(2) > 0; h'' > 0 at {samples} points", rep.records.len()))
}

fn replay_grid() -> Check {
    let combos: Vec<(i64, i64)> = [1, 2, 3].iter().flat_map(|&r| [2, 3].map(|a| (r, a))).collect();
    let cfg = EvalConfig::interval();
    let results: Vec<Result<(usize, usize, usize), String>> = combos
        .par_iter()
        .map(|&(r, a)| {
            let ev = Evaluator::new();
            let (mut ok, mut broken, mut total) = (0, 0, 0);
            for n in 1..=50 {
                let t = replay_monotonicity_with(&ev, n, &q(r, 1), &q(a, 1), &cfg).map_err(|e| e.to_string())?;
                total += 1;
                if t.overall().holds() {
                    ok += 1;
                } else if let Some(s) = t.first_non_holds() {
                    eprintln!("  replay n={n} r={r} alpha={a}: step {} {}", s.name, s.verdict.outcome);
                }
                if !t.chain_consistent() {
                    broken += 1;
                }
            }
            Ok((ok, broken, total))
        })
        .collect();
    let (mut ok, mut broken, mut total) = (0, 0, 0);
    for r in results {
        let (a, b, c) = r?;
        ok += a;
        broken += b;
        total += c;
    }
    if ok != total || broken != 0 || total != 300 {
        return Err(format!("{ok}/{total} traces hold, {broken} chain violations"));
    }
    Ok(format!("{ok}/{total} traces hold, 0 chain violations"))
}

fn random_quadruple(rng: &mut ChaCha8Rng, equality: bool) -> ([BigRational; 4], BigRational) {
    let mut pick = |lo: i64| q(rng.gen_range(lo..=1000), 1000);
    let (c, d) = (pick(1), pick(1));
    let big = c.clone().max(d.clone());
    let (a, b) = if equality {
        // (a, b) is (c, d) reordered
        let small = c.clone().min(d.clone());
        (big, small)
    } else {
        let a = &big + pick(0);
        let floor = (&c + &d - &a).max(q(0, 1));
        let t = pick(1);
        let b = &floor + (&a - &floor) * t;
        (a, b)
    };
    let den = rng.gen_range(1..=8);
    let r = q(rng.gen_range(2 * den..=8 * den), den);
    ([a, b, c, d], r)
}

fn dd_f64(x: f64, y: f64, r: f64) -> f64 {
    if x == y {
        r * x.powf(r - 1.0)
    } else {
        (x.powf(r) - y.powf(r)) / (x - y)
    }
}

fn dominance_random() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DOMINANCE_SEED);
    let trials: Vec<_> = (0..DOMINANCE_TRIALS)
        .map(|i| {
            let eq = i % EQUALITY_EVERY == 0;
            (eq, random_quadruple(&mut rng, eq))
        })
        .collect();
    let cfg = EvalConfig::interval();
    let results: Vec<Result<(bool, DominanceStatus), String>> = trials
        .par_iter()
        .map(|(eq, (v, r))| {
            let rep = dd_dominance_check_exact([&v[0], &v[1], &v[2], &v[3]], r, &cfg).map_err(|e| e.to_string())?;
            let f = |x: &BigRational| x.to_f64().unwrap();
            let (lhs, rhs) = (dd_f64(f(&v[0]), f(&v[1]), f(r)), dd_f64(f(&v[2]), f(&v[3]), f(r)));
            if lhs < rhs * (1.0 - F64_REL_TOL) {
                return Err(format!("f64 oracle violates the conclusion at {v:?}, r = {r}"));
            }
            Ok((*eq, rep.status()))
        })
        .collect();
    let (mut holds, mut indet, mut unexpected) = (0, 0, Vec::new());
    for res in results {
        let (eq, status) = res?;
        match status {
            DominanceStatus::Conclusion(Outcome::Holds) => holds += 1,
            DominanceStatus::Conclusion(Outcome::Indeterminate) if eq => indet += 1,
            other => unexpected.push(format!("{other:?} (constructed equality: {eq})")),
        }
    }
    let rate = indet as f64 / DOMINANCE_TRIALS as f64;
    if !unexpected.is_empty() || rate >= MAX_INDETERMINATE_RATE {
        return Err(format!(
            "{holds} holds, {indet} indeterminate (rate {rate:.4}), unexpected: {}",
            unexpected.first().cloned().unwrap_or_default()
        ));
    }
    Ok(format!("{holds} holds, 0 fails, {indet} indeterminate (rate {rate:.4}, all at constructed equalities)"))
}

fn scaled_pair_sums() -> Check {
    let exact = GridSpec::new(CheckName::Ineq311, 1, 200, vec![q(1, 1), q(2, 1), q(4, 1)]).mode(ArithMode::Exact);
    let exact = run_campaign(&exact).map_err(|e| e.to_string())?;
    require_all_hold(&exact, "exact")?;
    let at_one: Vec<_> = exact.records.iter().filter(|r| r.r == "1").collect();
    if at_one.len() != 200 || !at_one.iter().all(|r| r.equality) {
        return Err("r = 1 not an equality for every n".into());
    }
    // integer oracle: (S_{n+1}+S_n)(n+2)^(r+1) vs (S_{n+2}+S_{n+1})(n+1)^(r+1)
    for r in [1u32, 2, 4] {
        let s = int_sums(202, r);
        for n in 1..=200usize {
            let lhs = (&s[n + 1] + &s[n]) * BigInt::from(n + 2).pow(r + 1);
            let rhs = (&s[n + 2] + &s[n + 1]) * BigInt::from(n + 1).pow(r + 1);
            let rec = exact.records.iter().find(|x| x.r == r.to_string() && x.n == Some(n as u64)).unwrap();
            if lhs < rhs || (lhs == rhs) != rec.equality {
                return Err(format!("integer oracle disagrees at n={n} r={r}"));
            }
        }
    }
    let frac = run_campaign(&GridSpec::new(CheckName::Ineq311, 1, 200, vec![q(3, 2)])).map_err(|e| e.to_string())?;
    require_all_hold(&frac, "r = 3/2")?;
    Ok(format!("exact {}; r = 3/2 {}; equality at r = 1 for all n", tally(&exact), tally(&frac)))
}

fn problem1_scan() -> Check {
    // rationals p/q with q <= 4
    let mut grid: Vec<BigRational> = Vec::new();
    for den in 1..=4i64 {
        for num in den..=9 * den {
            grid.push(q(num, den));
        }
    }
    grid.sort();
    grid.dedup();
    let rs: Vec<_> = grid.iter().filter(|r| **r <= q(4, 1)).cloned().collect();
    let start = Instant::now();
    let mut records = Vec::new();
    let mut pairs = 0;
    for r in &rs {
        let rps: Vec<_> = grid.iter().filter(|rp| *rp > r && **rp <= q(2, 1) * r + q(1, 1)).cloned().collect();
        pairs += rps.len();
        let g = GridSpec::new(CheckName::Problem1, 1, 50, vec![r.clone()]).rprime(rps);
        records.extend(run_campaign(&g).map_err(|e| e.to_string())?.records);
    }
    let fails: Vec<_> = records.iter().filter(|r| r.outcome == Outcome::Fails).collect();
    let indet = records.iter().filter(|r| r.outcome == Outcome::Indeterminate).count();
    for f in &fails {
        eprintln!("  finding: n={:?} r={} rprime={:?} lhs={:?} rhs={:?}", f.n, f.r, f.rprime, f.lhs, f.rhs);
    }
    let covered: Vec<_> = records.iter().filter(|r| {
        let r0: BigRational = r.r.parse().unwrap();
        let rp: BigRational = r.rprime.as_deref().unwrap().parse().unwrap();
        rp >= q(2, 1) * r0 + q(1, 1)
    }).collect();
    if covered.iter().any(|r| r.covered_by_corollary1 != Some(true) || r.outcome != Outcome::Holds) {
        return Err("corollary region not labeled or not holding".into());
    }
    if records.iter().filter(|r| r.covered_by_corollary1 == Some(true)).count() != covered.len() {
        return Err("label applied outside the corollary region".into());
    }
    if !fails.is_empty() {
        return Err(format!("{} findings (see above), {indet} indeterminate", fails.len()));
    }
    Ok(format!(
        "{pairs} pairs x 50 n = {} comparisons, 0 fails, {indet} indeterminate; {} covered and holding; {:.1?}",
        records.len(),
        covered.len(),
        start.elapsed()
    ))
}

fn cli_determinism() -> Check {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_powsum"))
            .args(["check", "theorem1", "--r", "2", "--alpha", "2", "--n-max", "100", "--mode", "exact"])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let stripped: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
            .collect::<Vec<_>>()
            .join("\n");
        Ok::<_, String>((out.status.code(), stripped))
    };
    let (c1, a) = run()?;
    let (c2, b) = run()?;
    if c1 != Some(0) || c2 != Some(0) {
        return Err(format!("exit codes {c1:?}, {c2:?}"));
    }
    if a != b {
        return Err("outputs differ".into());
    }
    if !a.contains("\"fails\": 0") {
        return Err("summary missing".into());
    }
    Ok(format!("two runs identical apart from wall_time_ms ({} bytes), exit 0", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("power-ratio monotonicity, exact, r 1..6, alpha 2..5, n <= 300", power_ratio_monotone_exact),
        ("identity case r = 1, alpha = 2, n <= 10^4", identity_case),
        ("P_n(1) closed form and bennett checks", bennett_closed_form),
        ("alzer and martins strict bounds", strict_positive_bounds),
        ("negative-exponent bounds", negative_exponent_bounds),
        ("base gap grid and auxiliary function", base_gap_grid),
        ("replay grid [1,50] x {1,2,3} x {2,3}", replay_grid),
        ("randomized divided-difference dominance", dominance_random),
        ("scaled pair-sum inequality", scaled_pair_sums),
        ("problem1 scan, denominators <= 4", problem1_scan),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
