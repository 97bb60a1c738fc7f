use num_bigint::BigInt;
use num_rational::BigRational;
use twisted_periods::characters::DirichletCharacter;
use twisted_periods::eigenforms::{
    char_poly, eigen_decompose, load_fixtures, twisted_lambda, twisted_lambda_ratio, QuadraticExtension,
};
use twisted_periods::exact_field::sqrt_natural;
use twisted_periods::{Error, ExactNumber, ExactPolynomial, QuadSurd};

fn q(s: &str) -> QuadSurd {
    s.parse().unwrap()
}

#[test]
fn weight24_hecke_matrix_eigenvectors() {
    let reg = load_fixtures().unwrap();
    let m = &reg.matrix("level1-weight24-hecke2").unwrap().matrix;
    let pairs = eigen_decompose(m).unwrap();
    let vectors: Vec<_> = pairs.iter().map(|p| p.vector.clone()).collect();
    assert!(vectors.contains(&vec![q("118041"), q("1135193 + 19*sqrt(144169)")]));
    assert!(vectors.contains(&vec![q("118041"), q("1135193 - 19*sqrt(144169)")]));
    for p in &pairs {
        assert_eq!(p.eigenvalue.radicand(), 144169);
        let image = m.left_apply(&p.vector);
        let scaled: Vec<_> = p.vector.iter().map(|x| x * &p.eigenvalue).collect();
        assert_eq!(image, scaled);
    }
    // the table's eigenforms agree with the matrix
    let table = reg.table("level1-weight24-even").unwrap();
    for f in &table.forms {
        assert!(vectors.contains(&f.coordinates(&[2, 4])));
    }
}

#[test]
fn weight24_twisted_ratios_match_printed_values() {
    let reg = load_fixtures().unwrap();
    let fix = reg.ratio("level1-weight24-twist5-ratios").unwrap();
    let f = &reg.table(&fix.form).unwrap().forms[0];
    let denom = fix.rows.iter().find(|r| r.m == fix.denominator_m).unwrap().value();
    for row in fix.rows.iter().filter(|r| r.m != fix.denominator_m) {
        let expected = &row.value() / &denom;
        let (ratio, conj) = twisted_lambda_ratio(f, &fix.character, row.m, fix.denominator_m).unwrap();
        assert_eq!(ratio, QuadraticExtension::from_surd(&expected), "m = {}", row.m);
        assert_eq!(conj, QuadraticExtension::from_surd(&expected.conjugate()), "m = {}", row.m);
    }
    // a ratio between two non-central values
    let value = |m: u32| fix.rows.iter().find(|r| r.m == m).unwrap().value();
    let (ratio, _) = twisted_lambda_ratio(f, &fix.character, 5, 7).unwrap();
    assert_eq!(ratio, QuadraticExtension::from_surd(&(&value(5) / &value(7))));
}

#[test]
fn weight16_level2_central_values() {
    let reg = load_fixtures().unwrap();
    let m = &reg.matrix("level2-weight16-hecke3").unwrap().matrix;
    let p = char_poly(m);
    let root = |r: i64| ExactPolynomial::from_rationals(&[BigRational::from_integer((-r).into()), BigRational::from_integer(1.into())]);
    assert_eq!(p, &(&root(-3348) * &root(-3348)) * &root(6252));

    let fix = reg.central_value("level2-weight16-central").unwrap();
    let f = &reg.table(&fix.form).unwrap().forms[0];
    assert_eq!(f.coordinates(&[2, 4, 6]), vec![q("7"), q("110"), q("168")]);
    // Lambda(f, chi_D, 8) / (sqrt(D) T(D)) is Lambda(f, 8) for every D
    let normalized: Vec<ExactNumber> = fix
        .rows
        .iter()
        .map(|row| {
            let chi = DirichletCharacter::kronecker(row.modulus as i64).unwrap();
            let lambda = twisted_lambda(f, &chi, fix.m).unwrap();
            assert_eq!(lambda.radicand(), 1);
            let root = sqrt_natural(row.modulus).unwrap();
            let den = ExactNumber::from(BigInt::from(row.modulus) * &row.value);
            &(lambda.rational_part() * &root) * &den.inv().unwrap()
        })
        .collect();
    for x in &normalized[1..] {
        assert_eq!(x, &normalized[0]);
    }
    assert!(!normalized[0].is_zero());
    assert!((&normalized[0] * &ExactNumber::i()).is_rational());
}

#[test]
fn vanishing_central_value_is_flagged() {
    let reg = load_fixtures().unwrap();
    let f = &reg.table("level2-weight16-even").unwrap().forms[0];
    let chi = DirichletCharacter::kronecker(13).unwrap();
    assert!(twisted_lambda(f, &chi, 7).unwrap().is_zero());
    assert_eq!(twisted_lambda_ratio(f, &chi, 5, 7).unwrap_err(), Error::ZeroDenominator);
}
