//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion, non-zero exit
//! if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fracdec::bounds::{emit_figure, min_info_check_uniform, radius_naive, radius_optimal, BoundsError, FIGURE_CSV_HEADER};
use fracdec::codeword::{ArrayCodeword, ErrorPattern};
use fracdec::fields::{ExtField, Field, PrimeField, TraceDualBasis};
use fracdec::frs::{FrsConfig, FrsError, FrsParams};
use fracdec::harness::io::{read_json, SchemeConfigFile};
use fracdec::harness::naive::{compare_naive, Outcome};
use fracdec::harness::oracle::{collision_search, column_download};
use fracdec::harness::simulate::{simulate, ExperimentSpec, SupportMode};
use fracdec::harness::Scheme;
use fracdec::poly::Poly;
use fracdec::rational::Rational;
use fracdec::rs::{RsCode, RsError};
use fracdec::trace_scheme::{TsConfig, TsOverrides};

const BUDGET: u64 = 1_000_000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn shipped(name: &str) -> Scheme {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    let file: SchemeConfigFile = read_json(&path).expect("shipped config parses");
    Scheme::from_file(&file).expect("shipped config is valid")
}

fn sweep(scheme: &Scheme, label: &str, supports: usize) -> Check {
    let spec = ExperimentSpec { error_weights: vec![0, 1, 2], trials_per_weight: 10, seed: 2024, support_mode: SupportMode::Exhaustive };
    let report = simulate(scheme, &spec, BUDGET).map_err(|e| e.to_string())?;
    ensure(scheme.radius() == 2 && report.radius_optimal == 2, "radius is not 2")?;
    let two = &report.results[2];
    ensure(two.trials == supports * 10, format!("{} trials at t=2, expected {}", two.trials, supports * 10))?;
    for r in &report.results {
        ensure(r.successes == r.trials, format!("t={}: {} of {} decoded", r.t, r.successes, r.trials))?;
        ensure(r.max_downloaded == report.download_budget, format!("t={}: downloaded {}", r.t, r.max_downloaded))?;
    }
    Ok(format!(
        "{label}: {}/{} two-column patterns decoded, {} symbols downloaded, {} accessed",
        two.successes, two.trials, two.max_downloaded, two.accessed_per_trial
    ))
}

fn criterion1() -> Check {
    let s = shipped("ts_13_12_4_4_2.json");
    ensure(s.download_budget() == 24, "ts download budget is not 24")?;
    sweep(&s, "ts(13,12,4,4,2)", 66)
}

fn criterion2() -> Check {
    let s = shipped("frs_37_8_3_4.json");
    ensure(s.download_per_column() == 3 && s.l() == 4, "frs prefix is not 3 of 4")?;
    sweep(&s, "frs(37,8,3,4,3/4)", 28)
}

fn criterion3() -> Check {
    let mut notes = Vec::new();
    for name in ["ts_13_12_4_4_2.json", "frs_37_8_3_4.json"] {
        let s = shipped(name);
        let t = s.radius() + 1;
        let spec = ExperimentSpec { error_weights: vec![t], trials_per_weight: 1000, seed: 77, support_mode: SupportMode::Sampled };
        let r = &simulate(&s, &spec, BUDGET).map_err(|e| e.to_string())?.results[0];
        let bad = r.detected_failures + r.silent_failures;
        ensure(bad > 0, format!("{}: all {} weight-{t} trials decoded", s.name(), r.trials))?;
        notes.push(format!("{} t={t}: {bad}/1000 failed", s.name()));
    }
    let tiny = [
        r#"{"scheme":"ts","q":5,"n":5,"k":1,"l":2,"m":1}"#,
        r#"{"scheme":"frs","p":11,"n":5,"k":1,"l":2,"alpha":"1/2"}"#,
    ];
    for json in tiny {
        let s = Scheme::from_file(&serde_json::from_str(json).unwrap()).unwrap();
        let t = s.radius() + 1;
        let (at_radius, _) = collision_search(&s, s.radius(), 10_000).map_err(|e| e.to_string())?;
        ensure(!at_radius.found, format!("{}: collision at t = radius", s.name()))?;
        let (report, found) = collision_search(&s, t, 10_000).map_err(|e| e.to_string())?;
        let c = found.ok_or_else(|| format!("{}: no collision at t = {t}", s.name()))?;
        let download = column_download(&s);
        ensure(c.verify(s.q(), t, &download), "witness does not verify")?;
        // the decoder sees one download but two messages explain it
        let corrupted = c.e_hat.apply(&c.c_hat, s.q()).unwrap();
        let decoded = s.decode(&s.download(&corrupted).unwrap(), BUDGET);
        let right = |w: &ArrayCodeword| decoded.as_ref().ok().map(|m| s.encode(m).unwrap() == *w).unwrap_or(false);
        ensure(!(right(&c.c_hat) && right(&c.c_tilde)), "decoder recovered both")?;
        notes.push(format!("{} witness over {} codewords at t={t}", s.name(), report.codewords));
    }
    Ok(notes.join("; "))
}

fn criterion4() -> Check {
    let mut notes = Vec::new();
    for name in ["ts_13_12_4_4_2.json", "frs_37_8_3_4.json"] {
        let s = shipped(name);
        let r = compare_naive(&s, 2, 0, BUDGET).map_err(|e| e.to_string())?;
        ensure(r.separated, format!("{name}: not separated ({:?} / {:?})", r.naive_outcome, r.fractional_outcome))?;
        ensure(r.naive_radius == 1 && r.naive_columns.len() == 6, format!("{name}: naive reader mis-sized"))?;
        ensure(r.fractional_outcome == Outcome::Recovered, "fractional decoder failed")?;
        notes.push(format!("{} errors {:?}: naive {:?}, fractional recovered", s.name(), r.error_columns, r.naive_outcome));
    }
    Ok(notes.join("; "))
}

fn criterion5() -> Check {
    let rate = Rational::new(2, 5);
    let rows = emit_figure(rate, 61).map_err(|e| e.to_string())?;
    let (first, last) = (&rows[0], &rows[60]);
    let zero = Rational::from_integer(0);
    ensure(rows.len() == 61, "row count")?;
    ensure(first.alpha == rate && first.naive == zero && first.optimal == zero, "left endpoint")?;
    let three_tenths = Rational::new(3, 10);
    ensure(last.alpha == Rational::from_integer(1) && last.naive == three_tenths && last.optimal == three_tenths, "right endpoint")?;
    for r in &rows {
        ensure(r.optimal >= r.naive, format!("optimal below naive at {}", r.alpha))?;
        ensure(r.optimal * r.alpha == r.naive, format!("ratio is not 1/alpha at {}", r.alpha))?;
    }
    for w in rows.windows(2) {
        ensure(w[1].optimal >= w[0].optimal, "optimal curve decreases")?;
    }
    let out = Command::new(env!("CARGO_BIN_EXE_fracdec")).args(["figure", "--rate", "0.4"]).output().map_err(|e| e.to_string())?;
    let csv = String::from_utf8_lossy(&out.stdout).to_string();
    let lines: Vec<&str> = csv.lines().collect();
    ensure(out.status.success() && lines.len() == 62 && lines[0] == FIGURE_CSV_HEADER, "cli figure output")?;
    ensure(lines[1] == "0.400000,0.000000,0.000000" && lines[61] == "1.000000,0.300000,0.300000", "cli endpoints")?;
    Ok("61 rows, endpoints (0.4,0,0) and (1,0.3,0.3), optimal = naive/alpha exactly".into())
}

fn criterion6() -> Check {
    let f = PrimeField::new(13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut near, mut far) = (0usize, 0usize);
    for case in 0..12_000 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=2.min(n));
        let points: Vec<u64> = sample(&mut rng, 13, n).into_iter().map(|x| x as u64).collect();
        let code = RsCode::new(f, k, points).unwrap();
        let radius = code.radius();
        // two thirds near a codeword, the rest arbitrary words
        let received: Vec<u64> = if case % 3 != 2 {
            let h = Poly::new(&f, (0..k).map(|_| rng.gen_range(0..13)).collect());
            let mut w = code.encode(&h).unwrap();
            let weight = rng.gen_range(0..=radius);
            for i in sample(&mut rng, n, weight) {
                w[i] = (w[i] + rng.gen_range(1..13)) % 13;
            }
            w
        } else {
            (0..n).map(|_| rng.gen_range(0..13)).collect()
        };
        let brute = code.nearest_codeword_bruteforce(&received, radius, BUDGET).unwrap();
        match code.decode_unique(&received) {
            Ok(dec) => {
                ensure(brute.len() == 1 && brute[0].0 == dec.message, format!("case {case}: decoder and oracle disagree"))?;
                near += 1;
            }
            Err(RsError::DecodingFailure { .. }) => {
                ensure(brute.is_empty(), format!("case {case}: decoder failed but oracle found a codeword"))?;
                far += 1;
            }
            Err(e) => return Err(format!("case {case}: {e}")),
        }
    }

    let frs = FrsConfig::new(FrsParams { p: Some(13), gamma: None, n: 6, k: 1, l: 2, alpha: Rational::new(1, 2) }).unwrap();
    let scheme = frs.scheme();
    let radius = scheme.radius();
    let mut frs_cases = 0;
    for case in 0..1500 {
        let word = if case % 2 == 0 {
            let msg: Vec<u64> = (0..2).map(|_| rng.gen_range(0..13)).collect();
            let w = frs.encode_message(&msg).unwrap();
            let weight = rng.gen_range(0..=radius + 1);
            let e = ErrorPattern::random(&mut rng, 6, weight, 2, 13).unwrap();
            e.apply(&w, 13).unwrap()
        } else {
            ArrayCodeword::new((0..6).map(|_| (0..2).map(|_| rng.gen_range(0..13)).collect()).collect())
        };
        let bundle = frs.download_all(&word).unwrap();
        let prefixes = ArrayCodeword::new(bundle.per_column.clone());
        let list = frs.list_decode_bruteforce(&prefixes, radius, BUDGET).unwrap();
        match frs.decode(&bundle, BUDGET) {
            Ok(dec) => ensure(list == vec![dec.message], format!("frs case {case}: disagreement"))?,
            Err(FrsError::DecodingFailure { .. }) => ensure(list.is_empty(), format!("frs case {case}: missed codeword"))?,
            Err(e) => return Err(e.to_string()),
        }
        frs_cases += 1;
    }
    Ok(format!("12000 RS cases ({near} decoded, {far} failures) and {frs_cases} FRS cases agree with brute force"))
}

/// `sum_i beta^(q^i)` by repeated exponentiation.
fn trace_oracle(f: &ExtField, beta: &<ExtField as Field>::Elem) -> u64 {
    let q = f.characteristic();
    let mut acc = f.zero();
    let mut x = beta.clone();
    for _ in 0..f.degree() {
        acc = f.add(&acc, &x);
        x = f.pow(&x, q);
    }
    assert!(acc.coeffs()[1..].iter().all(|&c| c == 0), "trace left the base field");
    acc.coeffs()[0]
}

fn criterion7() -> Check {
    for (q, l) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let f = ExtField::new(PrimeField::new(q).unwrap(), l).unwrap();
        let b = *f.base();
        let elems: Vec<_> = (0..f.size()).map(|i| f.from_index(i).unwrap()).collect();
        let traces: Vec<u64> = elems.iter().map(|e| trace_oracle(&f, e)).collect();
        for (e, &t) in elems.iter().zip(&traces) {
            ensure(f.trace(e) == t, format!("GF({q}^{l}): trace mismatch"))?;
        }
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                for s in 0..q {
                    let lhs = f.trace(&f.add(&f.scale(s, x), y));
                    ensure(lhs == b.add(&b.mul(&s, &traces[i]), &traces[j]), format!("GF({q}^{l}): not linear"))?;
                }
            }
        }
        for v in 0..q {
            ensure(traces.iter().filter(|&&t| t == v).count() as u64 == f.size() / q, format!("GF({q}^{l}): trace not balanced onto {v}"))?;
        }
        let basis = TraceDualBasis::polynomial(&f);
        for (i, z) in basis.zeta().iter().enumerate() {
            for (j, nu) in basis.nu().iter().enumerate() {
                ensure(trace_oracle(&f, &f.mul(z, nu)) == u64::from(i == j), format!("GF({q}^{l}): dual basis"))?;
            }
        }
        for e in &elems {
            ensure(basis.reconstruct(&f, &basis.project(&f, e)).unwrap() == *e, "projection roundtrip")?;
        }
    }

    let ts = TsConfig::new(13, 12, 4, 4, 2, TsOverrides::default()).unwrap();
    let base = *ts.base();
    let r = ts.l() - ts.m();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let msg: Vec<_> = (0..4).map(|_| ts.field().from_index(rng.gen_range(0..ts.field().size())).unwrap()).collect();
        let proj = ts.project_polys(&ts.message_poly(&msg).unwrap());
        let word = ts.encode(&msg).unwrap();
        for j in 0..ts.m() {
            let p = &ts.annihilators()[j];
            let mut g = proj[r + j].mul(&p.pow(r, &base), &base);
            for (u, h) in proj.iter().take(r).enumerate() {
                g = g.add(&h.mul(&p.pow(u, &base), &base), &base);
            }
            for (i, w) in ts.omega().iter().enumerate() {
                ensure(ts.download(word.column(i), i).unwrap()[j] == g.eval(w, &base), "download identity")?;
            }
            for hs in proj.iter().take(r) {
                for w in &ts.sets()[j] {
                    ensure(g.eval(w, &base) == hs.eval(w, &base), "peeling identity")?;
                }
                let (quot, rem) = g.sub(hs, &base).div_rem(p, &base).unwrap();
                ensure(rem.is_zero(), "peeling step is not exact")?;
                g = quot;
            }
            ensure(g == proj[r + j], "peeling leaves the wrong projection")?;
        }
    }

    let frs = FrsConfig::new(FrsParams { p: Some(37), gamma: Some(2), n: 8, k: 3, l: 4, alpha: Rational::new(3, 4) }).unwrap();
    let fp = *frs.field();
    for _ in 0..100 {
        let msg: Vec<u64> = (0..12).map(|_| rng.gen_range(0..37)).collect();
        let h = Poly::new(&fp, msg.clone());
        let dl = frs.download_all(&frs.encode_message(&msg).unwrap()).unwrap();
        for (i, col) in dl.per_column.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                ensure(*v == h.eval(&fp.pow(&2, (4 * i + j) as u64), &fp), "frs prefix identity")?;
            }
        }
    }
    Ok("GF(4), GF(8), GF(9) exhaustive; 100 messages per shipped config".into())
}

fn small_prime_at_least(n: u64) -> u64 {
    (n.max(2)..).find(|&p| fracdec::fields::is_prime(p)).unwrap()
}

fn criterion8() -> Check {
    let mut checked = 0usize;
    let mut flips = 0usize;
    for n in 1..=24u64 {
        let q = small_prime_at_least(n);
        for k in 1..=n {
            for l in 1..=4u64 {
                for a in 1..=l {
                    let alpha = Rational::new(a as i64, l as i64);
                    if alpha * (n as i64) < Rational::from_integer(k as i64) {
                        continue;
                    }
                    let opt = radius_optimal(n, k, alpha).map_err(|e| e.to_string())?;
                    ensure(radius_naive(n, k, alpha).unwrap() <= opt, "naive above optimal")?;
                    let t = opt as usize;
                    ensure(min_info_check_uniform(n as usize, alpha, t, k) == Ok(true), format!("min-info fails at radius n={n} k={k}"))?;
                    match min_info_check_uniform(n as usize, alpha, t + 1, k) {
                        Ok(false) | Err(BoundsError::TooManyErrors { .. }) => flips += 1,
                        other => return Err(format!("min-info does not flip at n={n} k={k} alpha={alpha}: {other:?}")),
                    }
                    // trace scheme: alpha = m/l with m | k
                    if k % a == 0 && (l * k / a) <= n {
                        let ts = TsConfig::new(q, n as usize, k as usize, l as usize, a as usize, TsOverrides::default())
                            .map_err(|e| format!("ts n={n} k={k} l={l} m={a}: {e}"))?;
                        ensure(ts.radius() as u64 == opt, format!("ts radius n={n} k={k} l={l} m={a}"))?;
                        checked += 1;
                    }
                    // folded RS: k / alpha integral
                    let koa = Rational::from_integer(k as i64) / alpha;
                    if koa.is_integer() {
                        let frs = FrsConfig::new(FrsParams { p: None, gamma: None, n: n as usize, k: k as usize, l: l as usize, alpha })
                            .map_err(|e| format!("frs n={n} k={k} l={l} alpha={alpha}: {e}"))?;
                        ensure(frs.radius() as u64 == opt, format!("frs radius n={n} k={k} l={l} alpha={alpha}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} scheme configurations match radius_optimal; {flips} pass/fail flips at radius+1"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 optimal radius, trace scheme", criterion1),
        ("2 optimal radius, folded RS", criterion2),
        ("3 radius sharpness and collision witness", criterion3),
        ("4 separation from naive reading", criterion4),
        ("5 normalized radius curves", criterion5),
        ("6 oracle equivalence", criterion6),
        ("7 algebraic identities", criterion7),
        ("8 bound-formula consistency", criterion8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
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
