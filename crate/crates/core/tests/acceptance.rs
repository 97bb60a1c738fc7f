//! Acceptance criteria, one line each. Run with `--nocapture` to see the
//! report; the test fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use twisted_periods::arith::{mod_inverse, rat, rat_pow};
use twisted_periods::characters::DirichletCharacter;
use twisted_periods::eigenforms::{
    char_poly, eigen_decompose, load_fixtures, twisted_lambda, twisted_lambda_ratio, QuadraticExtension,
};
use twisted_periods::exact_field::{sqrt_integer, sqrt_natural};
use twisted_periods::numeric_verify::{
    lambda_delta, petersson_delta_inverse, reference, twisted_lambda_delta, verify_trace_numeric, NumericReport,
    DEFAULT_TRUNCATION,
};
use twisted_periods::period_formula::{
    lemma_sum_polynomial, per_h_symmetrized_periods, theorem1_polynomial, PeriodContext,
};
use twisted_periods::trace_formula::{trace_direct, trace_via_theorem1, TraceQuery};
use twisted_periods::{ExactNumber, ExactPolynomial, QuadSurd};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn example1_ctx(n: i64) -> PeriodContext {
    PeriodContext::new(1, 10, n, DirichletCharacter::kronecker(-3).unwrap()).unwrap()
}

fn rational(q: BigRational) -> ExactNumber {
    ExactNumber::rational(&q, 1)
}

fn example1_polynomial() -> Outcome {
    let g1 = theorem1_polynomial(&example1_ctx(1)).map_err(err)?;
    let mut coeffs = vec![BigRational::from_integer(0.into()); 10];
    coeffs[1] = rat(512, 2187);
    coeffs[3] = rat(-128, 81);
    coeffs[7] = rat(128, 1);
    coeffs[9] = rat(-1536, 1);
    // -2048 / sqrt(3) = -2048 sqrt(3) / 3
    let scale = &sqrt_integer(3).map_err(err)? * &rational(rat(-2048, 3));
    let expected = ExactPolynomial::from_rationals(&coeffs).scale(&scale);
    ensure(g1 == expected, || format!("g_1 = {g1}"))?;
    for (n, (p, q)) in [(3, (-25, 48)), (5, (5, 12)), (7, (-25, 48)), (9, (1, 1))] {
        let g = theorem1_polynomial(&example1_ctx(n)).map_err(err)?;
        ensure(g == g1.scale(&rational(rat(p, q))), || format!("g_{n} is not {p}/{q} g_1"))?;
    }
    Ok("g_1 printed form; g_3 = g_7 = -25/48 g_1, g_5 = 5/12 g_1, g_9 = g_1".into())
}

fn example1_traces() -> Outcome {
    let root3 = sqrt_integer(3).map_err(err)?;
    let big: BigInt = BigInt::from(-(9i64 << 18));
    let small: BigInt = BigInt::from(-(9i64 << 14));
    let value = |num: &BigInt| -> ExactNumber { &root3 * &rational(BigRational::new(num.clone(), 5.into())) };
    let expected = [
        (1, value(&big)),
        (3, value(&small)),
        (5, ExactNumber::zero(1)),
        (7, value(&-small.clone())),
        (9, value(&-big.clone())),
    ];
    for (m, e) in expected {
        let q = TraceQuery::new(example1_ctx(1), m).map_err(err)?;
        let t = trace_direct(&q).map_err(err)?;
        ensure(t == e, || format!("trace at (m, n) = ({m}, 1) is {t}"))?;
    }
    Ok("(m,n) = (1,1),(3,1),(5,1),(7,1),(9,1) exact".into())
}

fn oracle_grid() -> Outcome {
    let ctxs = common::default_grid();
    let per_ctx: Vec<Result<usize, String>> = ctxs
        .par_iter()
        .map(|ctx| {
            let closed = theorem1_polynomial(ctx).map_err(err)?;
            let oracle = lemma_sum_polynomial(ctx).map_err(err)?;
            ensure(closed == oracle, || format!("polynomials differ for {ctx:?}"))?;
            let mut traces = 0;
            for m in 0..=ctx.w() {
                if !ctx.parity_admits(m) {
                    continue;
                }
                let q = TraceQuery::new(ctx.clone(), m as i64).map_err(err)?;
                let direct = trace_direct(&q).map_err(err)?;
                let via = trace_via_theorem1(&q).map_err(err)?;
                ensure(direct == via, || format!("traces differ for {ctx:?}, m = {m}"))?;
                traces += 1;
            }
            Ok(traces)
        })
        .collect();
    let traces: usize = per_ctx.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("{} contexts equal; {traces} trace pairs equal", ctxs.len()))
}

fn example2() -> Outcome {
    let reg = load_fixtures().map_err(err)?;
    let matrix = &reg.matrix("level1-weight24-hecke2").ok_or("missing matrix")?.matrix;
    let pairs = eigen_decompose(matrix).map_err(err)?;
    for sign in ["+", "-"] {
        let v = vec![
            QuadSurd::from_int(118041),
            format!("1135193 {sign} 19*sqrt(144169)").parse::<QuadSurd>().map_err(err)?,
        ];
        ensure(pairs.iter().any(|p| p.vector == v), || format!("no eigenvector (118041, 1135193 {sign} 19 sqrt 144169)"))?;
    }
    let fix = reg.ratio("level1-weight24-twist5-ratios").ok_or("missing ratios")?;
    let f = &reg.table(&fix.form).ok_or("missing form")?.forms[0];
    let denom = fix.rows.iter().find(|r| r.m == fix.denominator_m).ok_or("missing row")?.value();
    let mut count = 0;
    for row in fix.rows.iter().filter(|r| r.m != fix.denominator_m) {
        let expected = &row.value() / &denom;
        let (ratio, conj) = twisted_lambda_ratio(f, &fix.character, row.m, fix.denominator_m).map_err(err)?;
        ensure(ratio == QuadraticExtension::from_surd(&expected), || format!("ratio at m = {} is {ratio}", row.m))?;
        ensure(conj == QuadraticExtension::from_surd(&expected.conjugate()), || {
            format!("conjugate ratio at m = {} is {conj}", row.m)
        })?;
        count += 2;
    }
    ensure(count == 10, || format!("{count} ratios checked, expected 10"))?;
    Ok("both eigenvectors; 5 ratios x 2 embeddings exact".into())
}

fn example3() -> Outcome {
    let reg = load_fixtures().map_err(err)?;
    let matrix = &reg.matrix("level2-weight16-hecke3").ok_or("missing matrix")?.matrix;
    let linear = |r: i64| ExactPolynomial::from_rationals(&[rat(-r, 1), rat(1, 1)]);
    let expected = &(&linear(-3348) * &linear(-3348)) * &linear(6252);
    ensure(char_poly(matrix) == expected, || "characteristic polynomial differs".into())?;
    let pairs = eigen_decompose(matrix).map_err(err)?;
    let target: Vec<QuadSurd> = [7, 110, 168].iter().map(|&x| QuadSurd::from_int(x)).collect();
    ensure(
        pairs.iter().any(|p| p.eigenvalue == QuadSurd::from_int(6252) && p.vector == target),
        || "eigenvector (7, 110, 168) not found".into(),
    )?;

    let fix = reg.central_value("level2-weight16-central").ok_or("missing table")?;
    let f = &reg.table(&fix.form).ok_or("missing form")?.forms[0];
    ensure(f.coordinates(&[2, 4, 6]) == target, || "fixture form is not 7R_2 + 110R_4 + 168R_6".into())?;
    // sqrt(D) T(D) for each D, and Lambda(f, chi_D, 8)
    let rows: Vec<(u64, ExactNumber, ExactNumber)> = fix
        .rows
        .par_iter()
        .map(|row| {
            let chi = DirichletCharacter::kronecker(row.modulus as i64).map_err(err)?;
            let lambda = twisted_lambda(f, &chi, fix.m).map_err(err)?;
            let printed = &sqrt_natural(row.modulus).map_err(err)? * &ExactNumber::from(row.value.clone());
            Ok((row.modulus, lambda.rational_part().clone(), printed))
        })
        .collect::<Result<_, String>>()?;
    let mut pairs_checked = 0;
    for (i, (d1, l1, t1)) in rows.iter().enumerate() {
        for (d2, l2, t2) in &rows[i + 1..] {
            // l1 / l2 == t1 / t2, cross-multiplied
            ensure(&(l1 * t2) == &(l2 * t1), || format!("cross-ratio D = {d1}, {d2} differs"))?;
            pairs_checked += 1;
        }
    }
    ensure(rows.iter().all(|(_, l, _)| !l.is_zero()), || "a tabulated central value vanished".into())?;
    ensure(pairs_checked == 78, || format!("{pairs_checked} pairs"))?;
    Ok("char poly, eigenvector, 78 cross-ratios exact".into())
}

fn duality() -> Outcome {
    let ctxs = common::grid(&common::GRID_LEVELS, &[3, 5, 7], &common::GRID_WEIGHTS);
    // v = -(N h)^{-1} mod D needs gcd(N, D) = 1
    let (coprime, skipped): (Vec<_>, Vec<_>) =
        ctxs.into_iter().partition(|c| twisted_periods::arith::gcd(c.level() as i64, c.modulus() as i64) == 1);
    let counts: Vec<Result<usize, String>> = coprime
        .par_iter()
        .map(|ctx| {
            let (level, d, w, n) = (ctx.level() as i64, ctx.modulus() as i64, ctx.w() as i64, ctx.n() as i64);
            let dual_ctx = ctx.with_n(w - n).map_err(err)?;
            let lv = BigRational::from_integer(level.into());
            let dv = BigRational::from_integer(d.into());
            let mut checked = 0;
            for h in 1..d {
                let v = mod_inverse((-level * h).rem_euclid(d), d).ok_or("no inverse")?;
                let rho = per_h_symmetrized_periods(ctx, h).map_err(err)?;
                let dual = per_h_symmetrized_periods(&dual_ctx, v).map_err(err)?;
                for m in 0..=w {
                    let sign = if (n + m) % 2 == 0 { 1 } else { -1 };
                    let factor = rat_pow(&lv, w - n - m) * rat_pow(&dv, w - 2 * m) * BigRational::from_integer(sign.into());
                    let rhs = &dual[(w - m) as usize] * &rational(factor);
                    ensure(rho[m as usize] == rhs, || format!("duality fails for {ctx:?}, m = {m}, h = {h}"))?;
                    checked += 1;
                }
            }
            Ok(checked)
        })
        .collect();
    let checked: usize = counts.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!(
        "{checked} identities over {} contexts; {} contexts with gcd(N, D) > 1 have no v",
        coprime.len(),
        skipped.len()
    ))
}

fn numerics() -> Outcome {
    let chi = DirichletCharacter::kronecker(-3).map_err(err)?;
    let lam = NumericReport::new(reference::LAMBDA_DELTA_2, lambda_delta(2, DEFAULT_TRUNCATION).map_err(err)?, 1e-12, 0.0);
    ensure(lam.pass, || format!("Lambda(Delta, 2): {lam:?}"))?;
    let pet = NumericReport::new(reference::PETERSSON_INVERSE, petersson_delta_inverse(10_000).map_err(err)?, 0.0, 1e-6);
    ensure(pet.pass, || format!("1/||Delta||^2: {pet:?}"))?;
    let tw = twisted_lambda_delta(&chi, 1, DEFAULT_TRUNCATION).map_err(err)?;
    let twr = NumericReport::new(reference::TWISTED_LAMBDA_2, tw.re, 1e-8, 0.0);
    ensure(twr.pass && tw.im.abs() <= 1e-8, || format!("Lambda(Delta, chi, 2) = {tw}"))?;
    let q = TraceQuery::new(example1_ctx(1), 1).map_err(err)?;
    let exact = trace_direct(&q).map_err(err)?.to_complex();
    let tr = NumericReport::new(reference::TRACE_PRODUCT, exact.re, 0.0, 1e-5);
    ensure(tr.pass && exact.im.abs() <= 1e-9, || format!("exact trace {exact} vs printed product: {tr:?}"))?;
    let product = verify_trace_numeric(&q, DEFAULT_TRUNCATION).map_err(err)?;
    ensure(product.pass, || format!("numeric product vs exact trace: {product:?}"))?;
    Ok(format!(
        "Lambda err {:.1e}; 1/||Delta||^2 rel {:.1e}; twisted err {:.1e}; trace rel {:.1e}, product rel {:.1e}",
        lam.abs_err, pet.rel_err, twr.abs_err, tr.rel_err, product.rel_err
    ))
}

fn properties() -> Outcome {
    common::bernoulli_addition(100)?;
    let bern = common::generalized_bernoulli_definitions(24)?;
    let gauss = common::gauss_sum_product(40)?;
    common::four_tuple_bezout_invariance(1000)?;
    let zeros = common::parity_vanishing(&common::default_grid())?;
    Ok(format!(
        "addition 100 cases; {bern} B_k,chi pairs; {gauss} Gauss sums; 1000 Bezout cases; {zeros} vanishing coefficients"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { id: 1, name: "Example 1 period polynomial", limit: Duration::from_secs(1), run: example1_polynomial },
        Criterion { id: 2, name: "Example 1 traces", limit: Duration::from_secs(1), run: example1_traces },
        Criterion { id: 3, name: "oracle grid and trace paths", limit: Duration::from_secs(600), run: oracle_grid },
        Criterion { id: 4, name: "Example 2 eigenforms and ratios", limit: Duration::from_secs(30), run: example2 },
        Criterion { id: 5, name: "Example 3 central values", limit: Duration::from_secs(120), run: example3 },
        Criterion { id: 6, name: "period duality", limit: Duration::from_secs(300), run: duality },
        Criterion { id: 7, name: "numerics", limit: Duration::from_secs(60), run: numerics },
        Criterion { id: 8, name: "property suites", limit: Duration::from_secs(600), run: properties },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("criterion {} PASS {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                println!("criterion {} FAIL {} ({elapsed:.2?}): {why}", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
