//! Strategies and configuration shared by the property suites.
#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use vflie_core::{Field, Monomial, Poly, Scalar, VecField};

/// Fixed-seed configuration; `VFLIE_SEED` overrides the seed.
pub fn config(cases: u32) -> Config {
    let seed = std::env::var("VFLIE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_2024);
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn rational_scalar() -> impl Strategy<Value = Scalar> {
    small_rational().prop_map(Scalar::Rational)
}

/// Scalars of `field`, built from a random residue when cyclotomic.
pub fn scalar_in(field: Field) -> BoxedStrategy<Scalar> {
    match field {
        Field::Rational => rational_scalar().boxed(),
        Field::Cyclotomic(d) => {
            proptest::collection::vec(small_rational(), 1..=(d as usize).max(1))
                .prop_map(move |c| Scalar::from_residue(d, c).unwrap())
                .boxed()
        }
    }
}

pub fn monomial(arity: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_deg, arity).prop_filter_map("degree", move |e| {
        (e.iter().sum::<u32>() <= max_deg).then(|| Monomial::new(e))
    })
}

pub fn poly(
    arity: usize,
    field: Field,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((monomial(arity, max_deg), scalar_in(field)), 0..=max_terms)
        .prop_map(move |terms| Poly::from_terms(arity, field, terms).unwrap())
}

pub fn vecfield(arity: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = VecField> {
    proptest::collection::vec(poly(arity, Field::Rational, max_deg, max_terms), arity)
        .prop_map(|c| VecField::new(c).unwrap())
}

/// Univariate polynomial in `x` with a prescribed zero order at the origin.
pub fn with_order(order: u32, extra: u32) -> impl Strategy<Value = Poly> {
    (
        rational_scalar().prop_filter("nonzero", |s| !s.is_zero()),
        proptest::collection::vec(small_rational(), 0..=extra as usize),
    )
        .prop_map(move |(lead, rest)| {
            let mut terms = vec![(Monomial::new(vec![order]), lead)];
            for (i, c) in rest.into_iter().enumerate() {
                terms.push((
                    Monomial::new(vec![order + 1 + i as u32]),
                    Scalar::Rational(c),
                ));
            }
            Poly::from_terms(1, Field::Rational, terms).unwrap()
        })
}
