use std::fs::OpenOptions;
use std::io::Write;
use std::time::Instant;

use apery::discover::{rediscover_row, scientific, RelationSearch};
use apery::hypergeom::{corollary2, corollary3, eq61, gosper_solve, reflection_corollary3, tnk};
use apery::identities::{verify_range, IdentityKind};
use apery::precision::zeta_reference_with_schedule;
use apery::series::{
    gf_lhs, gf_rhs, koecher_gf_lhs, koecher_gf_rhs, koecher_zeta, measure_digits_per_term, zeta4n3_via_corollary1, zeta_fast,
};
use apery::{HpComplex, HpReal, Rational, Scalar};
use serde_json::json;

use crate::report::{err_bound_string, Outcome, RunReport};
use crate::{BenchArgs, DiscoverArgs, Failure, GfArgs, HyperArgs, HyperEval, VerifyArgs, ZetaArgs, ZetaMethod};

pub type Produced = (Vec<RunReport>, String);

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn positive_digits(d: u32) -> Result<u32, Failure> {
    if d == 0 {
        return usage("--digits must be at least 1");
    }
    Ok(d)
}

/// Row index of the coefficient method that yields ζ(target).
fn row_index(target: u32, step: u32, n: Option<u32>, method: &str) -> Result<u32, Failure> {
    let derived = (target >= 3 && (target - 3) % step == 0).then(|| (target - 3) / step);
    match (derived, n) {
        (Some(d), None) => Ok(d),
        (Some(d), Some(n)) if d == n => Ok(n),
        (_, Some(n)) => usage(format!("--method {method} with --n {n} gives zeta({}), not zeta({target})", step * n + 3)),
        (None, None) => usage(format!("--method {method} computes zeta({step}n+3); {target} is not of that form")),
    }
}

pub fn zeta(a: &ZetaArgs, guard: u32) -> Result<Produced, Failure> {
    let digits = positive_digits(a.digits)?;
    let work = digits + guard;
    let start = Instant::now();
    let (value, terms, detail): (HpReal, u64, Option<String>) = match a.method {
        ZetaMethod::Fast => {
            if a.n.is_some() {
                return usage("--n applies only to --method corollary1 or koecher");
            }
            let e = zeta_fast(a.target, work)?;
            (e.value, e.terms, None)
        }
        ZetaMethod::Corollary1 => {
            let n = row_index(a.target, 4, a.n, "corollary1")?;
            let e = zeta4n3_via_corollary1(n, work)?;
            (e.value, e.terms, None)
        }
        ZetaMethod::Koecher => {
            let n = row_index(a.target, 2, a.n, "koecher")?;
            let e = koecher_zeta(n, work)?;
            (e.value, e.terms, None)
        }
        ZetaMethod::Reference => {
            if a.n.is_some() {
                return usage("--n applies only to --method corollary1 or koecher");
            }
            let (v, sched) = zeta_reference_with_schedule(a.target, work)?;
            let direct = sched.cutoff.saturating_sub(1);
            (v, direct + sched.corrections as u64, Some(format!("{direct} direct terms, {} Bernoulli corrections", sched.corrections)))
        }
    };
    let method = format!("{:?}", a.method).to_lowercase();
    let mut r = RunReport::new("zeta", Outcome::Value).param("target", a.target).param("method", &method);
    if let Some(n) = a.n {
        r = r.param("n", n);
    }
    r.value = Some(value.to_decimal_string(digits as usize));
    r.err_bound = Some(err_bound_string(&value));
    r.detail = detail;
    r.term_count = Some(terms);
    r.digits = Some(digits);
    r.wall_time_seconds = start.elapsed().as_secs_f64();
    let text = format!(
        "{}\nzeta({}) by {method}: {terms} terms, error below 1e{:.1}\n",
        r.value.as_deref().unwrap_or_default(),
        a.target,
        value.err_log10()
    );
    Ok((vec![r], text))
}

pub fn verify(a: &VerifyArgs) -> Result<Produced, Failure> {
    if a.n_max == 0 {
        return usage("--n-max must be at least 1");
    }
    let kinds: Vec<IdentityKind> = if a.identity == "all" {
        IdentityKind::ALL.to_vec()
    } else {
        vec![a.identity.parse::<IdentityKind>()?]
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for kind in kinds {
        let outcomes = verify_range(kind, a.n_max);
        let failures: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
        for f in &failures {
            text += &format!("{kind} n={} FAIL {}\n", f.n, f.detail);
        }
        text += &format!("{kind}: {}/{} pass for n = 1..={}\n", outcomes.len() - failures.len(), outcomes.len(), a.n_max);
        reports.extend(outcomes.into_iter().map(|o| {
            let mut r = RunReport::new("verify", if o.pass { Outcome::Pass } else { Outcome::Fail })
                .param("identity", kind)
                .param("n", o.n);
            r.detail = Some(o.detail);
            r.wall_time_seconds = o.seconds;
            r
        }));
    }
    Ok((reports, text))
}

fn check(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn hyper(a: &HyperArgs, guard: u32) -> Result<Produced, Failure> {
    let start = Instant::now();
    let needs_n = matches!(a.eval, HyperEval::Cor2 | HyperEval::Eq61 | HyperEval::Gosper);
    if needs_n && a.n == 0 {
        return usage("--n must be at least 1");
    }
    let digits = positive_digits(a.digits)?;
    let work = digits + guard;
    let mut r = match a.eval {
        HyperEval::Cor2 => {
            let c = corollary2(a.n, work)?;
            let pass = c.passes() && c.value.err_within_digits(digits as i64);
            let mut r = RunReport::new("hyper", check(pass)).param("eval", "cor2").param("n", a.n);
            r.value = Some(c.value.to_decimal_string(digits as usize));
            r.detail = Some(format!("expected {} = {}", c.expected, HpReal::from_rational(&c.expected, work).to_decimal_string(digits as usize)));
            r.err_bound = Some(err_bound_string(&c.value.re));
            r.term_count = Some(c.terms);
            r.digits = Some(digits);
            r
        }
        HyperEval::Cor3 => {
            let c = corollary3(work)?;
            let refl = reflection_corollary3();
            let pass = c.passes() && c.value.err_within_digits(digits as i64) && refl.value == c.expected;
            let mut r = RunReport::new("hyper", check(pass)).param("eval", "cor3");
            r.value = Some(c.value.to_decimal_string(digits as usize));
            r.detail = Some(format!("expected {}; reflection gives {}", c.expected, refl.value));
            r.err_bound = Some(err_bound_string(&c.value.re));
            r.term_count = Some(c.terms);
            r.digits = Some(digits);
            r
        }
        HyperEval::Eq61 => {
            let e = eq61(a.n)?;
            let mut r = RunReport::new("hyper", check(e.passes())).param("eval", "eq61").param("n", a.n);
            let v = if e.value.im == Rational::from_i64(0) { e.value.re.to_string() } else { format!("{} + {}i", e.value.re, e.value.im) };
            r.value = Some(v);
            r.detail = Some(format!("closed form {}", e.closed_form));
            r
        }
        HyperEval::Gosper => {
            let g = gosper_solve(a.n)?;
            let reflected = (-(a.n as i64)..=-1).try_fold(Rational::from_i64(0), |acc, j| tnk(a.n, j).map(|t| acc + t))?;
            let mut r = RunReport::new("hyper", check(g.passes())).param("eval", "gosper").param("n", a.n);
            r.value = Some(reflected.to_string());
            r.detail = Some(format!(
                "deg s = {}, key equation {}, certificate {}, reflected sum over -n..-1 = {reflected}",
                g.s_degree().map_or("none".to_string(), |d| d.to_string()),
                if g.equation_holds { "holds" } else { "fails" },
                if g.certificate_holds { "holds" } else { "fails" },
            ));
            r
        }
    };
    r.wall_time_seconds = start.elapsed().as_secs_f64();
    let text = format!(
        "{} {}: {}\n{}\n",
        format!("{:?}", a.eval).to_lowercase(),
        r.outcome,
        r.value.as_deref().unwrap_or_default(),
        r.detail.as_deref().unwrap_or_default()
    );
    Ok((vec![r], text))
}

pub fn discover(a: &DiscoverArgs, guard: u32) -> Result<Produced, Failure> {
    if a.target != "zeta" {
        return usage(format!("unsupported --target {:?}; only zeta", a.target));
    }
    let digits = positive_digits(a.digits)?;
    let start = Instant::now();
    let row = rediscover_row(a.n, a.s, digits + guard, a.max_height)?;
    let partitions: Vec<String> = row.basis.entries.iter().map(|e| e.alpha.to_string()).collect();
    let labels = row.basis.labels();
    let mut r = RunReport::new("discover", check(row.table.is_some()))
        .param("target", format!("zeta({})", row.basis.target))
        .param("n", a.n)
        .param("s", a.s)
        .param("maxHeight", row.max_height);
    r.digits = Some(digits);
    let mut text = String::new();
    let ledger = match &row.search {
        RelationSearch::Found(rel) => {
            let coeffs: Vec<String> = rel.coefficients.iter().map(ToString::to_string).collect();
            let residual = scientific(&rel.residual, 3);
            r.value = Some(coeffs.join(","));
            r.err_bound = Some(residual.clone());
            text += &format!("relation among {} (residual {residual}):\n", labels.join(", "));
            for (l, c) in labels.iter().zip(&coeffs) {
                text += &format!("  {c:>12}  {l}\n");
            }
            if let Some(table) = &row.table {
                let parts: Vec<String> = table.iter().map(|(e, c)| format!("{}: {c}", e.alpha)).collect();
                r.detail = Some(format!("(2/5) zeta({}) = sum c_alpha lambda; {}", row.basis.target, parts.join("; ")));
                text += &format!("(2/5) zeta({}) = sum over alpha of c_alpha lambda_alpha:\n", row.basis.target);
                for (e, c) in table {
                    text += &format!("  {:>10}  {:<8} {e}\n", c.to_string(), e.alpha.to_string());
                }
            } else {
                r.detail = Some("relation does not involve the zeta value".into());
                text += "the relation does not involve the zeta value\n";
            }
            json!({
                "target": format!("zeta({})", row.basis.target), "n": a.n, "s": a.s, "digits": digits,
                "maxHeight": row.max_height, "found": true, "labels": labels, "partitions": partitions,
                "coefficients": coeffs, "residual": residual,
                "table": row.table.as_ref().map(|t| t.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>()),
            })
        }
        RelationSearch::NotFound(ex) => {
            r.detail = Some(format!("no relation; every relation has height >= 1e{:.1}", ex.height_log10));
            text += &format!("no relation with height <= {}; every relation has height >= 1e{:.1}\n", row.max_height, ex.height_log10);
            json!({
                "target": format!("zeta({})", row.basis.target), "n": a.n, "s": a.s, "digits": digits,
                "maxHeight": row.max_height, "found": false, "labels": labels, "partitions": partitions,
                "excludedHeightLog10": ex.height_log10,
            })
        }
    };
    if let Some(path) = &a.ledger {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Failure::Usage(format!("cannot open ledger {}: {e}", path.display())))?;
        writeln!(f, "{ledger}").map_err(|e| Failure::Compute(format!("ledger write failed: {e}")))?;
    }
    r.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok((vec![r], text))
}

fn parse_z(s: &str, scale: u32) -> Result<HpComplex, Failure> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    Ok(HpComplex::new(HpReal::parse(re)?.rescale(scale), HpReal::parse(im)?.rescale(scale)))
}

pub fn gf(a: &GfArgs, guard: u32) -> Result<Produced, Failure> {
    let digits = positive_digits(a.digits)?;
    let work = digits + guard;
    let z = parse_z(&a.z, work + 10)?;
    if !z.re.is_exact() || !z.im.is_exact() {
        return usage(format!("--z {} has more decimals than the working precision", a.z));
    }
    let start = Instant::now();
    let (lhs, rhs) = if a.koecher {
        (koecher_gf_lhs(&z, work)?, koecher_gf_rhs(&z, work)?)
    } else {
        (gf_lhs(&z, work)?, gf_rhs(&z, work)?)
    };
    let gap = (&lhs.value - &rhs.value).abs_upper_f64();
    let tol = 10f64.powi(-(digits as i32 - 2));
    let pass = gap <= tol;
    let mut r = RunReport::new("gf", check(pass)).param("z", &a.z).param("koecher", a.koecher);
    r.value = Some(lhs.value.to_decimal_string(digits as usize));
    r.err_bound = Some(format!("{gap:.3e}"));
    r.detail = Some(format!("rhs {}", rhs.value.to_decimal_string(digits as usize)));
    r.term_count = Some(lhs.terms.max(rhs.terms));
    r.digits = Some(digits);
    r.wall_time_seconds = start.elapsed().as_secs_f64();
    let text = format!(
        "lhs {}\nrhs {}\n|lhs - rhs| <= {gap:.3e} ({}, tolerance {tol:.0e})\n",
        lhs.value.to_decimal_string(digits as usize),
        rhs.value.to_decimal_string(digits as usize),
        r.outcome
    );
    Ok((vec![r], text))
}

const BENCH_METHODS: [&str; 4] = ["fast3", "fast5", "fast7", "reference"];

fn time_min(repeats: u32, f: impl Fn() -> apery::Result<u64>) -> Result<(f64, u64), Failure> {
    let mut best = f64::INFINITY;
    let mut terms = 0;
    for _ in 0..repeats {
        let t = Instant::now();
        terms = f()?;
        best = best.min(t.elapsed().as_secs_f64());
    }
    Ok((best, terms))
}

pub fn bench(a: &BenchArgs) -> Result<Produced, Failure> {
    if a.digits.is_empty() || a.digits.contains(&0) {
        return usage("--digits needs a nonempty list of positive values");
    }
    if a.repeats == 0 {
        return usage("--repeats must be at least 1");
    }
    let mut reports = Vec::new();
    for &d in &a.digits {
        for m in BENCH_METHODS {
            let (secs, terms) = match m {
                "reference" => time_min(a.repeats, || zeta_reference_with_schedule(3, d).map(|(_, s)| s.cutoff - 1 + s.corrections as u64))?,
                _ => {
                    let target = m[4..].parse().expect("method names end in the target");
                    time_min(a.repeats, || zeta_fast(target, d).map(|e| e.terms))?
                }
            };
            let mut r = RunReport::new("bench", Outcome::Value).param("method", m);
            r.value = Some(format!("{secs:.6}"));
            r.wall_time_seconds = secs;
            r.term_count = Some(terms);
            r.digits = Some(d);
            reports.push(r);
        }
    }
    let top = *a.digits.iter().max().expect("nonempty");
    let rate = measure_digits_per_term(3, top)?;
    let mut r = RunReport::new("bench", Outcome::Value).param("method", "fast3-digits-per-term");
    r.value = Some(format!("{:.4}", rate.slope));
    r.digits = Some(top);
    r.term_count = rate.samples.last().map(|s| s.0);
    reports.push(r);

    let mut text = format!("{:<10}", "method");
    for d in &a.digits {
        text += &format!("{:>14}", format!("{d} digits"));
    }
    text += "\n";
    for m in BENCH_METHODS {
        text += &format!("{m:<10}");
        for d in &a.digits {
            let row = reports.iter().find(|r| r.parameters["method"] == m && r.digits == Some(*d)).expect("timed");
            text += &format!("{:>13.4}s", row.wall_time_seconds);
        }
        text += "\n";
    }
    for d in &a.digits {
        let secs = |m: &str| reports.iter().find(|r| r.parameters["method"] == m && r.digits == Some(*d)).unwrap().wall_time_seconds;
        let (fast, reference) = (secs("fast3"), secs("reference"));
        text += &format!("{d} digits: fast3 is {:.1}x the reference speed\n", reference / fast);
    }
    text += &format!("fast3 digits per term at {top} digits: {:.4}\n", rate.slope);
    Ok((reports, text))
}
