mod common;

use proptest::prelude::*;
use vflie_core::poly::Order;
use vflie_core::{Field, Poly, Scalar};

const Q: Field = Field::Rational;

fn nu(p: &Poly) -> u32 {
    match p.vanishing_order(&Scalar::zero()).unwrap() {
        Order::Finite(k) => k,
        Order::Infinite => panic!("zero polynomial"),
    }
}

fn wronskian(f: &Poly, g: &Poly) -> Poly {
    let df = f.partial_derivative(0).unwrap();
    let dg = g.partial_derivative(0).unwrap();
    f.checked_mul(&dg)
        .unwrap()
        .checked_sub(&df.checked_mul(g).unwrap())
        .unwrap()
}

/// `f`, `g` with distinct positive zero orders at the origin.
fn order_pair() -> impl Strategy<Value = (u32, u32, Poly, Poly)> {
    (1u32..=6, 1u32..=6)
        .prop_filter("distinct", |(i, j)| i != j)
        .prop_flat_map(|(i, j)| {
            (
                Just(i),
                Just(j),
                common::with_order(i, 3),
                common::with_order(j, 3),
            )
        })
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn leibniz(p in common::poly(3, Q, 4, 5), q in common::poly(3, Q, 4, 5), i in 0usize..3) {
        let lhs = p.checked_mul(&q).unwrap().partial_derivative(i).unwrap();
        let rhs = p.checked_mul(&q.partial_derivative(i).unwrap()).unwrap()
            .checked_add(&q.checked_mul(&p.partial_derivative(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_composes(
        p in common::poly(2, Q, 3, 4),
        psi in proptest::collection::vec(common::poly(2, Q, 2, 3), 2),
        phi in proptest::collection::vec(common::poly(2, Q, 2, 3), 2),
    ) {
        let stepwise = p.substitute(&psi).unwrap().substitute(&phi).unwrap();
        let composite: Vec<Poly> = psi.iter().map(|q| q.substitute(&phi).unwrap()).collect();
        prop_assert_eq!(stepwise, p.substitute(&composite).unwrap());
    }

    #[test]
    fn vanishing_order_is_additive(
        f in common::poly(1, Q, 6, 4),
        g in common::poly(1, Q, 6, 4),
        alpha in -2i64..=2,
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let a = Scalar::from_int(alpha);
        let of = f.vanishing_order(&a).unwrap();
        let og = g.vanishing_order(&a).unwrap();
        let ofg = f.checked_mul(&g).unwrap().vanishing_order(&a).unwrap();
        match (of, og, ofg) {
            (Order::Finite(x), Order::Finite(y), Order::Finite(z)) => prop_assert_eq!(x + y, z),
            other => prop_assert!(false, "unexpected orders {:?}", other),
        }
    }

    #[test]
    fn wronskian_order((i, j, f, g) in order_pair()) {
        prop_assert_eq!(nu(&f), i);
        prop_assert_eq!(nu(&g), j);
        prop_assert_eq!(nu(&wronskian(&f, &g)), i + j - 1);
    }
}

#[test]
fn vanishing_order_of_zero_is_infinite() {
    assert_eq!(
        Poly::zero(1, Q).vanishing_order(&Scalar::one()).unwrap(),
        Order::Infinite
    );
}
