use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use sporadic::config::RunConfig;
use sporadic::congruences::{padic_gamma, primes_between, rational_residue, PAdicContext};
use sporadic::float::{complex as cx, BigFloat};
use sporadic::lvalues::{lambda_at_cut, LFunctionSpec};
use sporadic::modforms::{binary_theta_form, sporadic_form};
use sporadic::numerics::{interp_eval, InterpLabel};
use sporadic::qseries::{eta_quotient_expand, EtaQuotientSpec, IntSeries, QSeries};
use sporadic::report::OutputFormat;
use sporadic::sequences::{apery_table, run_recurrence2, sporadic_table, Recurrence2Spec, SporadicLabel};

fn int_series(offset: i64, cs: &[i64]) -> IntSeries {
    QSeries::new(24 * offset, cs.iter().map(|&c| BigInt::from(c)).collect())
}

fn series() -> impl Strategy<Value = IntSeries> {
    (0i64..3, prop::collection::vec(-9i64..10, 1..24)).prop_map(|(o, cs)| int_series(o, &cs))
}

/// Leading coefficient +-1, so the inverse stays integral.
fn unit_series() -> impl Strategy<Value = IntSeries> {
    (prop::bool::ANY, prop::collection::vec(-9i64..10, 0..20)).prop_map(|(neg, mut cs)| {
        cs.insert(0, if neg { -1 } else { 1 });
        int_series(0, &cs)
    })
}

fn eta_factors() -> impl Strategy<Value = Vec<(u32, i32)>> {
    prop::collection::vec((1u32..7, -3i32..4), 1..4)
}

/// `prod q^(m e/24) prod_n (1 - q^(m n))^e` by plain series arithmetic.
fn eta_by_products(factors: &[(u32, i32)], len: usize) -> IntSeries {
    let mut acc = QSeries::one(len);
    for &(m, e) in factors {
        let mut p = QSeries::one(len);
        let mut step = m as usize;
        while step < len {
            let mut v = vec![BigInt::from(0); len];
            v[0] = BigInt::one();
            v[step] = BigInt::from(-1);
            p = p.mul(&QSeries::new(0, v));
            step += m as usize;
        }
        let p = p.pow(e as i64).unwrap();
        acc = acc.mul(&p).mul(&QSeries::monomial(m as i64 * e as i64, BigInt::one(), len));
    }
    acc
}

fn label() -> impl Strategy<Value = SporadicLabel> {
    prop::sample::select(SporadicLabel::ALL.to_vec())
}

fn same(a: &IntSeries, b: &IntSeries) -> bool {
    a.first_difference(b).unwrap().is_none()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert!(same(&a.mul(&b), &b.mul(&a)));
        let lhs = a.add(&b).unwrap().mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c)).unwrap();
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
    }

    #[test]
    fn inverse_and_sqrt(u in unit_series()) {
        let one = QSeries::one(u.len());
        prop_assert!(same(&u.mul(&u.inverse().unwrap()), &one));
        let r = if u.coeffs()[0] == BigInt::one() { u.clone() } else { u.neg() };
        prop_assert!(same(&r.mul(&r).sqrt().unwrap(), &r));
    }

    #[test]
    fn eta_expansion_matches_products(f in eta_factors(), len in 10usize..90) {
        let spec = EtaQuotientSpec::new(&f);
        let a: IntSeries = eta_quotient_expand(&spec, len);
        let b = eta_by_products(&f, len);
        prop_assert!(same(&a, &b), "{spec}: {:?}", a.first_difference(&b));
    }

    #[test]
    fn eta_rescale_is_level_change(f in eta_factors(), d in 1u32..5, len in 5usize..40) {
        let scaled: Vec<(u32, i32)> = f.iter().map(|&(m, e)| (m * d, e)).collect();
        let a: IntSeries = eta_quotient_expand(&EtaQuotientSpec::new(&f), len).rescale(d);
        let b: IntSeries = eta_quotient_expand(&EtaQuotientSpec::new(&scaled), len * d as usize);
        prop_assert_eq!(a.offset24(), b.offset24());
        prop_assert!(same(&a, &b));
    }

    #[test]
    fn recurrence_matches_binomial_sums(l in label(), n_max in 0u64..60) {
        let rec = run_recurrence2(&Recurrence2Spec::for_label(l), n_max).unwrap();
        prop_assert_eq!(rec.terms, sporadic_table(l, n_max));
    }

    #[test]
    fn reflection_formula(pi in 0usize..15, a in -40i64..40, b in 1i64..30) {
        let p = primes_between(3, 53)[pi];
        prop_assume!(!(b as u64).is_multiple_of(p));
        let ctx = PAdicContext::new(p, 2).unwrap();
        let q = ctx.modulus() as u128;
        let x = BigRational::new(a.into(), b.into());
        let y = BigRational::one() - &x;
        let g = padic_gamma(&x, &ctx).unwrap() as u128 * padic_gamma(&y, &ctx).unwrap() as u128 % q;
        let r = rational_residue(&x, &ctx).unwrap() % p;
        let a0 = if r == 0 { p } else { r };
        prop_assert_eq!(g, if a0 % 2 == 0 { 1 } else { q - 1 });
    }

    #[test]
    fn padic_gamma_step(pi in 0usize..15, a in -40i64..40, b in 1i64..30) {
        let p = primes_between(3, 53)[pi];
        prop_assume!(!(b as u64).is_multiple_of(p));
        let ctx = PAdicContext::new(p, 2).unwrap();
        let q = ctx.modulus() as u128;
        let x = BigRational::new(a.into(), b.into());
        let next = padic_gamma(&(&x + BigRational::one()), &ctx).unwrap() as u128;
        let g = padic_gamma(&x, &ctx).unwrap() as u128;
        let r = rational_residue(&x, &ctx).unwrap() as u128;
        // Gamma_p(x+1) = -x Gamma_p(x) for units, -Gamma_p(x) otherwise
        let factor = if r.is_multiple_of(p as u128) { 1 } else { r };
        prop_assert_eq!(next, (q - factor * g % q) % q);
    }

    #[test]
    fn config_round_trip(
        bits in 64u32..2048,
        order in 10usize..5000,
        pmax in 5u64..100_000,
        tol in 1u32..200,
        fmt in prop::sample::select(vec![OutputFormat::Json, OutputFormat::Tsv, OutputFormat::Human]),
    ) {
        let cfg = RunConfig { precision_bits: bits, qseries_order: order, prime_max: pmax, tolerance_exponent: tol, output_format: fmt };
        prop_assert_eq!(RunConfig::parse(&cfg.to_kv()).unwrap(), cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn interpolation_hits_integers(li in 0usize..6, n in 0u64..10) {
        let l = InterpLabel::ALL[li];
        let want = match l.sporadic() {
            Some(s) => sporadic_table(s, n),
            None => apery_table(n),
        };
        let v = interp_eval::<BigFloat>(l, &cx::from_i64(n as i64, 128), 128).unwrap();
        let w = BigFloat::from_bigint(&want[n as usize], 128);
        let d = cx::dist_f64(&v.value, &cx::real(w.clone()));
        prop_assert!(d <= v.radius.max(1e-30 * (1.0 + w.abs().to_f64())), "{l}({n}): {d:e}");
    }

    #[test]
    fn completed_value_is_cut_invariant(a in 4i64..9, b in 4i64..5, which in 0usize..3) {
        let (form, s) = [(binary_theta_form(5), 4), (sporadic_form(SporadicLabel::C), 2), (sporadic_form(SporadicLabel::F), 1)][which].clone();
        let spec = LFunctionSpec::for_form(&form, 1500).unwrap();
        let base = lambda_at_cut(&spec, s, &BigRational::one(), 1, 128).unwrap();
        let v = lambda_at_cut(&spec, s, &BigRational::new(a.into(), b.into()), 1, 128).unwrap();
        let d = (v.value.clone() - base.value.clone()).abs().to_f64();
        prop_assert!(d <= v.radius + base.radius + 1e-34 * base.value.abs().to_f64(), "t = {a}/{b}: {d:e}");
    }
}

#[test]
fn q_derivative_of_eta4_power() {
    let f: IntSeries = eta_quotient_expand(&EtaQuotientSpec::new(&[(4, 6)]), 10);
    let theta = f.q_derivative().unwrap();
    let want = [(1, 1), (5, -30), (9, 81)];
    for (n, c) in want {
        assert_eq!(theta.coeff(n), Some(BigInt::from(c)), "q^{n}");
    }
}
