//! Acceptance campaign: one line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dedekind_core::appell::{apostol_bernoulli_table, frobenius_euler_table, series_oracle_b, series_oracle_h};
use dedekind_core::arith::{euler_phi, gcd, moebius};
use dedekind_core::dedekind::{e_sum, e_sum_table, ramanujan_sum, v_sum, ESumParams};
use dedekind_core::spectra::{family, Family};
use dedekind_core::verify::{run_grid, GridSpec, Identity, Report};
use dedekind_core::{zeta_pow, CycloNum, QPoly, Rational, Scalar};

const PROP1_BUDGET: Duration = Duration::from_secs(10);
const PROP2_SERIAL_BUDGET: Duration = Duration::from_secs(300);
const FLOAT_REL_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

#[derive(Default)]
struct Context {
    prop2_serial: Option<String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn campaign(identity: Identity, workers: Option<usize>) -> Result<Report, String> {
    let report = run_grid(&GridSpec::acceptance(identity), identity, workers).map_err(|e| e.to_string())?;
    if let Some(bad) = report.failures().next() {
        return Err(format!(
            "{} failures, first: {:?} {:?}",
            report.summary.fail, bad.params, bad.reason
        ));
    }
    Ok(report)
}

fn summary(r: &Report) -> String {
    format!("pass {} fail {} skipped {}", r.summary.pass, r.summary.fail, r.summary.skipped)
}

fn c1_prop1(_: &mut Context) -> Outcome {
    let t = Instant::now();
    let report = campaign(Identity::Prop1, None)?;
    let took = t.elapsed();
    ensure(report.summary.pass == 50 * 7 * 8, || format!("expected 2800 passes, {}", summary(&report)))?;
    ensure(took < PROP1_BUDGET, || format!("took {took:?}, budget {PROP1_BUDGET:?}"))?;
    Ok(format!("{} in {took:.2?}", summary(&report)))
}

fn c2_prop2(ctx: &mut Context) -> Outcome {
    let t = Instant::now();
    let report = campaign(Identity::Prop2, Some(1))?;
    let took = t.elapsed();
    ensure(report.summary.pass == 6 * 7 * 4 * 4 * 5 * 5, || summary(&report))?;
    ensure(took < PROP2_SERIAL_BUDGET, || format!("serial run took {took:?}"))?;
    ctx.prop2_serial = Some(report.to_json());
    Ok(format!("{} single-threaded in {took:.2?}", summary(&report)))
}

fn c3_mult(_: &mut Context) -> Outcome {
    let report = campaign(Identity::Mult, None)?;
    let mut zero_sums = 0;
    for n in 2..=8u32 {
        let delta = family(&Family::Delta, n).map_err(|e| e.to_string())?;
        for lambda in [Rational::one(), Rational::from(2), Rational::new(-1, 2)] {
            for (r, p) in [(0, 1), (2, -1), (3, 2)] {
                let e = e_sum_table(6, r, p, &CycloNum::from_rational(&lambda), &delta).map_err(|e| e.to_string())?;
                ensure(e.iter().all(QPoly::is_zero), || format!("delta E-sum nonzero at n={n} λ={lambda}"))?;
                zero_sums += e.len();
            }
        }
    }
    Ok(format!("{}; {zero_sums} delta E-sums identically 0", summary(&report)))
}

fn c4_dual_path(_: &mut Context) -> Outcome {
    let lambdas = [Rational::one(), Rational::from(2), Rational::new(-1, 2)];
    let mut checked = 0;
    for lambda in &lambdas {
        let rec = apostol_bernoulli_table(10, lambda);
        let ser = series_oracle_b(10, lambda).map_err(|e| e.to_string())?;
        ensure(rec == ser, || format!("B mismatch at λ={lambda}"))?;
        checked += rec.len();
        let lam = CycloNum::from_rational(lambda);
        for n in 2..=8u32 {
            for k in 1..i64::from(n) {
                let gamma = zeta_pow(n, -k);
                for p in [-1, 0, 1, 2] {
                    let rec = frobenius_euler_table(10, p, &lam, &gamma).map_err(|e| e.to_string())?;
                    let ser = series_oracle_h(10, p, &lam, &gamma).map_err(|e| e.to_string())?;
                    ensure(rec == ser, || format!("H mismatch at λ={lambda} n={n} k={k} p={p}"))?;
                    checked += rec.len();
                }
            }
        }
    }
    Ok(format!("{checked} polynomials equal on both routes"))
}

fn c5_gseries(_: &mut Context) -> Outcome {
    let report = campaign(Identity::Gseries, None)?;
    ensure(report.summary.pass > 0, || "no cases ran".into())?;
    Ok(format!("{} at T=8 (series identity, m·E_m(nq) and G_m = E_(m+1) checked per case)", summary(&report)))
}

fn c6_section4(_: &mut Context) -> Outcome {
    let report = campaign(Identity::Section4, None)?;
    for n in 2..=20u32 {
        let phi = euler_phi(u64::from(n)) as i64;
        ensure(v_sum(n, 0, &Rational::one()) == Rational::from(phi), || format!("V^0 at n={n}"))?;
        ensure(v_sum(n, 1, &Rational::one()) == Rational::new(i64::from(n) * phi, 2), || format!("V^1 at n={n}"))?;
    }
    Ok(format!("{}; V_n^(0)(1), V_n^(1)(1) ok for n=2..20", summary(&report)))
}

fn c7_ramanujan(_: &mut Context) -> Outcome {
    for n in 1..=20u32 {
        let nn = u64::from(n);
        ensure(ramanujan_sum(n, 0) == Rational::from(euler_phi(nn) as i64), || format!("c_{n}(0)"))?;
        ensure(ramanujan_sum(n, 1) == Rational::from(moebius(nn)), || format!("c_{n}(1)"))?;
        for k in 0..i64::from(n) {
            let g = gcd(k, i64::from(n)) as u64;
            let holder = Rational::new(moebius(nn / g) * euler_phi(nn) as i64, euler_phi(nn / g) as i64);
            ensure(ramanujan_sum(n, k) == holder, || format!("Hölder mismatch at n={n} k={k}"))?;
        }
    }
    let report = campaign(Identity::Moebius, None)?;
    Ok(format!("c_n(0), c_n(1), Hölder ok for n ≤ 20; Möbius interp {}", summary(&report)))
}

fn c8_rationality(_: &mut Context) -> Outcome {
    let one = CycloNum::one();
    let mut count = 0;
    for n in 2..=12u32 {
        for a in (1..i64::from(n)).filter(|&a| gcd(a, i64::from(n)) == 1) {
            let fd = family(&Family::FourierDedekind { a, c0: None }, n).map_err(|e| e.to_string())?;
            for r in 0..i64::from(n) {
                let params = ESumParams { m: 1, r, p: 1, lambda: one.clone(), seq: &fd };
                let e = e_sum(&params).map_err(|e| e.to_string())?.eval(&CycloNum::zero());
                let q = e.is_rational().ok_or_else(|| format!("FD sum irrational at n={n} a={a} r={r}"))?;
                let exact = e.embed_complex(53).unwrap();
                let approx = common::e_sum_f64(1, n, r, 1, 0.0, 1.0, common::dedekind_weight(n, a, -1));
                ensure(common::close(exact, approx, FLOAT_REL_TOL), || {
                    format!("FD float mismatch n={n} a={a} r={r}: {q} vs {approx}")
                })?;
                count += 1;
            }
            let ad = family(&Family::ApostolDedekind { a, c0: None }, n).map_err(|e| e.to_string())?;
            for m in 2..=6 {
                let params = ESumParams { m, r: 0, p: 1, lambda: one.clone(), seq: &ad };
                let e = e_sum(&params).map_err(|e| e.to_string())?.eval(&CycloNum::zero());
                let q = e.is_rational().ok_or_else(|| format!("AD sum irrational at n={n} a={a} m={m}"))?;
                let exact = e.embed_complex(53).unwrap();
                let approx = common::e_sum_f64(m, n, 0, 1, 0.0, 1.0, common::dedekind_weight(n, a, 1));
                ensure(common::close(exact, approx, FLOAT_REL_TOL), || {
                    format!("AD float mismatch n={n} a={a} m={m}: {q} vs {approx}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} classical instances rational and within {FLOAT_REL_TOL:e} of float evaluation"))
}

fn c9_determinism(ctx: &mut Context) -> Outcome {
    let first = ctx.prop2_serial.clone().ok_or("criterion 2 produced no report")?;
    let second = campaign(Identity::Prop2, None)?.to_json();
    ensure(first == second, || "prop2 reports differ between serial and parallel runs".into())?;
    let a = campaign(Identity::Prop1, Some(3))?.to_json();
    let b = campaign(Identity::Prop1, None)?.to_json();
    ensure(a == b, || "prop1 reports differ".into())?;
    Ok(format!("byte-identical reports ({} bytes prop2, {} bytes prop1)", first.len(), a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Context) -> Outcome); 9] = [
        ("1 interpolation: coefficient form = Lagrange form", c1_prop1),
        ("2 simultaneous multiplication formula campaign", c2_prop2),
        ("3 multiplication formula recovery", c3_mult),
        ("4 recurrence vs series oracle (B and H)", c4_dual_path),
        ("5 generating-series chain", c5_gseries),
        ("6 totative closed form and V sums", c6_section4),
        ("7 Ramanujan sums and Möbius interpolation", c7_ramanujan),
        ("8 rationality of classical instances", c8_rationality),
        ("9 determinism", c9_determinism),
    ];
    let mut ctx = Context::default();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f(&mut ctx) {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{:.2?}]", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
