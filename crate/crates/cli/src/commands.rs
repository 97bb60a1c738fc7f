use rayon::prelude::*;
use serde_json::{json, Value};

use twisted_periods::characters::{enumerate_primitive_characters, DirichletCharacter};
use twisted_periods::eigenforms::{
    char_poly, eigen_decompose, load_fixtures, twisted_lambda_ratio, QuadraticExtension, RnCombination, FIXTURE_JSON,
};
use twisted_periods::exact_field::pretty::{latex_number, latex_polynomial, pretty_number, pretty_polynomial};
use twisted_periods::exact_field::recognize_surd;
use twisted_periods::numeric_verify::{
    lambda_delta, petersson_delta_inverse, reference, twisted_lambda_delta, verify_trace_numeric, NumericReport,
    DEFAULT_TRUNCATION,
};
use twisted_periods::period_formula::{
    lemma_sum_polynomial, period_from_polynomial, theorem1_polynomial, PeriodContext,
};
use twisted_periods::trace_formula::{trace_direct, trace_via_theorem1, TraceQuery};
use twisted_periods::{ExactNumber, QuadSurd};

use crate::report::{CliError, Report};
use crate::{Check, Command, FormArgs, Grid, TracePath};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<Report> {
    match command {
        Command::Theorem1 { form, n, m, oracle } => theorem1(&form, n, m, oracle),
        Command::Trace { form, m, n, via } => trace(&form, m, n, via),
        Command::Crosscheck { grid } => crosscheck(grid),
        Command::Eigen { fixture } => eigen(&fixture),
        Command::Ratio { fixture, index, character, m1, m2 } => ratio(&fixture, index, &character, m1, m2),
        Command::VerifyNumeric { check, m, n, character, truncation } => verify(check, m, n, &character, truncation),
        Command::Fixtures { dump } => fixtures(dump.as_deref()),
    }
}

fn context(form: &FormArgs, n: i64) -> Result<PeriodContext> {
    if form.weight < 4 {
        return Err(CliError::Validation(format!("weight {} must be at least 4", form.weight)));
    }
    let chi = DirichletCharacter::parse(&form.character)?;
    Ok(PeriodContext::new(form.level, form.weight - 2, n, chi)?)
}

fn context_json(ctx: &PeriodContext) -> Value {
    json!({
        "level": ctx.level(),
        "weight": ctx.weight(),
        "n": ctx.n(),
        "character": ctx.chi().to_string(),
    })
}

fn number_json(x: &ExactNumber) -> Value {
    let z = x.to_complex();
    json!({
        "exact": x,
        "surd": recognize_surd(x),
        "float": [z.re, z.im],
    })
}

fn theorem1(form: &FormArgs, n: i64, m: Option<i64>, oracle: bool) -> Result<Report> {
    let ctx = context(form, n)?;
    let p = if oracle { lemma_sum_polynomial(&ctx)? } else { theorem1_polynomial(&ctx)? };
    let mut json = context_json(&ctx);
    json["command"] = json!("theorem1");
    json["method"] = json!(if oracle { "residue-sum" } else { "closed-form" });
    if let Some(m) = m {
        let m = u32::try_from(m).map_err(|_| CliError::Validation(format!("m = {m} is negative")))?;
        let r = period_from_polynomial(&ctx, &p, m)?;
        json["m"] = json!(m);
        json["period"] = number_json(&r);
        return Ok(Report::new(pretty_number(&r), json).with_latex(latex_number(&r)));
    }
    json["polynomial"] = serde_json::to_value(&p).expect("serializable");
    json["coefficients"] = p
        .coefficients_ascending()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| json!({"degree": k, "value": pretty_number(c)}))
        .collect();
    Ok(Report::new(pretty_polynomial(&p), json).with_latex(latex_polynomial(&p)))
}

fn trace(form: &FormArgs, m: i64, n: i64, via: TracePath) -> Result<Report> {
    let ctx = context(form, n)?;
    let q = TraceQuery::new(ctx.clone(), m)?;
    let value = match via {
        TracePath::Direct => trace_direct(&q)?,
        TracePath::Theorem1 => trace_via_theorem1(&q)?,
    };
    let mut json = context_json(&ctx);
    json["command"] = json!("trace");
    json["m"] = json!(m);
    json["trace"] = number_json(&value);
    Ok(Report::new(pretty_number(&value), json).with_latex(latex_number(&value)))
}

fn grid_contexts(grid: Grid) -> Result<Vec<PeriodContext>> {
    let (levels, moduli, ws): (&[u64], &[u64], &[i64]) = match grid {
        Grid::Default => (&[1, 2, 3, 4], &[3, 4, 5, 7, 8, 12], &[10, 12, 14]),
        Grid::Quick => (&[1, 2], &[3, 4, 5], &[10]),
    };
    let mut out = Vec::new();
    for &d in moduli {
        let chars = enumerate_primitive_characters(d)?;
        for &level in levels {
            for chi in &chars {
                for &w in ws {
                    for n in 1..w {
                        out.push(PeriodContext::new(level, w, n, chi.clone())?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn crosscheck(grid: Grid) -> Result<Report> {
    let ctxs = grid_contexts(grid)?;
    let results: Vec<std::result::Result<(usize, Vec<String>), String>> = ctxs
        .par_iter()
        .map(|ctx| {
            let mut bad = Vec::new();
            let closed = theorem1_polynomial(ctx).map_err(|e| e.to_string())?;
            let oracle = lemma_sum_polynomial(ctx).map_err(|e| e.to_string())?;
            let describe = || format!("N={} k={} n={} chi={}", ctx.level(), ctx.weight(), ctx.n(), ctx.chi());
            if closed != oracle {
                bad.push(format!("polynomial {}", describe()));
            }
            let mut traces = 0;
            for m in (0..=ctx.w()).filter(|&m| ctx.parity_admits(m)) {
                let q = TraceQuery::new(ctx.clone(), m as i64).map_err(|e| e.to_string())?;
                let direct = trace_direct(&q).map_err(|e| e.to_string())?;
                let via = trace_via_theorem1(&q).map_err(|e| e.to_string())?;
                if direct != via {
                    bad.push(format!("trace m={m} {}", describe()));
                }
                traces += 1;
            }
            Ok((traces, bad))
        })
        .collect();
    let mut traces = 0;
    let mut mismatches = Vec::new();
    for r in results {
        let (t, bad) = r.map_err(CliError::Computation)?;
        traces += t;
        mismatches.extend(bad);
    }
    let all_equal = mismatches.is_empty();
    let mut text = if all_equal {
        format!("ALL EQUAL: {} period polynomials, {traces} trace pairs\n", ctxs.len())
    } else {
        format!("MISMATCH: {} of {} checks differ\n", mismatches.len(), ctxs.len() + traces)
    };
    for m in &mismatches {
        text.push_str(&format!("  {m}\n"));
    }
    let json = json!({
        "command": "crosscheck",
        "grid": match grid { Grid::Default => "default", Grid::Quick => "quick" },
        "contexts": ctxs.len(),
        "traces": traces,
        "all_equal": all_equal,
        "mismatches": mismatches,
    });
    Ok(Report::new(text, json).failed(!all_equal))
}

fn combination_text(basis: &[u32], v: &[QuadSurd]) -> String {
    let mut out = String::new();
    for (n, c) in basis.iter().zip(v).filter(|(_, c)| !c.is_zero()) {
        let text = c.to_string();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) if c.is_rational() => (true, rest.to_string()),
            _ if c.is_rational() => (false, text),
            _ => (false, format!("({text})")),
        };
        if !out.is_empty() {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        out.push_str(&format!("{body}*R_{n}"));
    }
    out
}

fn eigen(name: &str) -> Result<Report> {
    let reg = load_fixtures()?;
    let fix = reg.matrix(name).ok_or_else(|| unknown_fixture(name, reg.matrices.iter().map(|m| m.name.as_str())))?;
    let p = char_poly(&fix.matrix);
    let pairs = eigen_decompose(&fix.matrix)?;
    let mut text = format!("characteristic polynomial: {}\n", pretty_polynomial(&p));
    let mut latex = format!("\\det(xI - T_{{{}}}) = {}\n", fix.hecke_prime, latex_polynomial(&p));
    let mut rows = Vec::new();
    for e in &pairs {
        let form = combination_text(&fix.basis, &e.vector);
        text.push_str(&format!("eigenvalue {} (multiplicity {}): {form}\n", e.eigenvalue, e.multiplicity));
        latex.push_str(&format!("\\lambda = {}: {form}\n", e.eigenvalue));
        rows.push(json!({
            "eigenvalue": e.eigenvalue,
            "multiplicity": e.multiplicity,
            "vector": e.vector,
            "form": form,
        }));
    }
    let json = json!({
        "command": "eigen",
        "fixture": fix.name,
        "level": fix.level,
        "weight": fix.weight,
        "hecke_prime": fix.hecke_prime,
        "basis": fix.basis,
        "char_poly": p,
        "eigenpairs": rows,
    });
    Ok(Report::new(text, json).with_latex(latex))
}

fn unknown_fixture<'a>(name: &str, known: impl Iterator<Item = &'a str>) -> CliError {
    CliError::Validation(format!("no fixture {name:?}; known: {}", known.collect::<Vec<_>>().join(", ")))
}

fn extension_text(x: &QuadraticExtension) -> String {
    if let (Some(a), Some(b)) = (x.rational_part().as_rational(), x.surd_part().as_rational()) {
        if let Ok(s) = QuadSurd::new(a, b, x.radicand()) {
            return s.to_string();
        }
    }
    if x.radicand() == 1 {
        return pretty_number(x.rational_part());
    }
    format!("{} + ({})*sqrt({})", pretty_number(x.rational_part()), pretty_number(x.surd_part()), x.radicand())
}

fn extension_json(x: &QuadraticExtension) -> Value {
    let z = x.to_complex();
    json!({
        "rational": x.rational_part(),
        "surd": x.surd_part(),
        "radicand": x.radicand(),
        "text": extension_text(x),
        "float": [z.re, z.im],
    })
}

fn ratio(name: &str, index: usize, character: &str, m1: u32, m2: u32) -> Result<Report> {
    let reg = load_fixtures()?;
    let table = reg.table(name).ok_or_else(|| unknown_fixture(name, reg.tables.iter().map(|t| t.name.as_str())))?;
    let f: &RnCombination = table
        .forms
        .get(index)
        .ok_or_else(|| CliError::Validation(format!("{name} has {} forms, no index {index}", table.forms.len())))?;
    let chi = DirichletCharacter::parse(character)?;
    let (value, conj) = twisted_lambda_ratio(f, &chi, m1, m2)?;
    let text = format!(
        "Lambda(f,chi,{})/Lambda(f,chi,{}) for f = {f}\n  {}\nconjugate embedding:\n  {}\n",
        m1 + 1,
        m2 + 1,
        extension_text(&value),
        extension_text(&conj)
    );
    let json = json!({
        "command": "ratio",
        "fixture": name,
        "index": index,
        "form": f.to_string(),
        "character": chi.to_string(),
        "m1": m1,
        "m2": m2,
        "ratio": extension_json(&value),
        "conjugate": extension_json(&conj),
    });
    Ok(Report::new(text, json))
}

fn verify(check: Check, m: i64, n: i64, character: &str, truncation: Option<usize>) -> Result<Report> {
    let trunc = truncation.unwrap_or(DEFAULT_TRUNCATION);
    let (name, report) = match check {
        Check::Lambda => {
            let s = u32::try_from(m + 1).map_err(|_| CliError::Validation(format!("m = {m} out of range")))?;
            let computed = lambda_delta(s, trunc)?;
            let expected = if s == 2 || s == 10 { reference::LAMBDA_DELTA_2 } else { lambda_delta(12 - s, trunc)? };
            (format!("Lambda(Delta,{s})"), NumericReport::new(expected, computed, 1e-12, 0.0))
        }
        Check::Petersson => {
            let computed = petersson_delta_inverse(truncation.unwrap_or(10_000))?;
            ("1/<Delta,Delta>".to_string(), NumericReport::new(reference::PETERSSON_INVERSE, computed, 0.0, 1e-6))
        }
        Check::Twisted => {
            let chi = DirichletCharacter::parse(character)?;
            if chi != DirichletCharacter::kronecker(-3)? {
                return Err(CliError::Validation("reference twisted values exist only for kronecker:-3".into()));
            }
            let expected = match m {
                1 => reference::TWISTED_LAMBDA_2,
                3 => reference::TWISTED_LAMBDA_4,
                5 => 0.0,
                _ => return Err(CliError::Validation(format!("no reference value for m = {m}; use 1, 3 or 5"))),
            };
            let computed = twisted_lambda_delta(&chi, m as u32, trunc)?;
            let mut report = NumericReport::new(expected, computed.re, 1e-8, 0.0);
            report.pass &= computed.im.abs() <= 1e-8;
            (format!("Lambda(Delta,chi,{})", m + 1), report)
        }
        Check::Trace => {
            let chi = DirichletCharacter::parse(character)?;
            let q = TraceQuery::new(PeriodContext::new(1, 10, n, chi)?, m)?;
            (format!("trace(m={m}, n={n})"), verify_trace_numeric(&q, trunc)?)
        }
    };
    let text = format!(
        "{name}: expected {:.15e}, computed {:.15e}, abs err {:.2e}, rel err {:.2e}: {}\n",
        report.expected,
        report.computed,
        report.abs_err,
        report.rel_err,
        if report.pass { "PASS" } else { "FAIL" }
    );
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["check"] = json!(name);
    Ok(Report::new(text, json).failed(!report.pass))
}

fn fixtures(dump: Option<&str>) -> Result<Report> {
    let reg = load_fixtures()?;
    match dump {
        Some("-") => Ok(Report::new(FIXTURE_JSON.to_string(), serde_json::from_str(FIXTURE_JSON).expect("valid JSON"))),
        Some(path) => {
            std::fs::write(path, FIXTURE_JSON).map_err(|e| CliError::Computation(format!("writing {path}: {e}")))?;
            Ok(Report::new(format!("wrote {path}\n"), json!({"command": "fixtures", "written": path})))
        }
        None => {
            let mut text = String::new();
            for t in &reg.tables {
                text.push_str(&format!("table   {}  ({} forms)\n", t.name, t.forms.len()));
            }
            for m in &reg.matrices {
                text.push_str(&format!("matrix  {}  (T_{} on R_{:?})\n", m.name, m.hecke_prime, m.basis));
            }
            for r in &reg.ratios {
                text.push_str(&format!("ratios  {}  ({} rows)\n", r.name, r.rows.len()));
            }
            for c in &reg.central_values {
                text.push_str(&format!("central {}  ({} rows)\n", c.name, c.rows.len()));
            }
            let json = json!({
                "command": "fixtures",
                "tables": reg.tables.iter().map(|t| json!({"name": t.name, "level": t.level, "weight": t.weight, "forms": t.forms.iter().map(ToString::to_string).collect::<Vec<_>>()})).collect::<Vec<_>>(),
                "matrices": reg.matrices.iter().map(|m| m.name.clone()).collect::<Vec<_>>(),
                "ratios": reg.ratios.iter().map(|r| r.name.clone()).collect::<Vec<_>>(),
                "central_values": reg.central_values.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
            });
            Ok(Report::new(text, json))
        }
    }
}
