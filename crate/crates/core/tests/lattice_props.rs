mod common;

use num_integer::Integer;
use proptest::prelude::*;
use vflie_core::lattice::Direction;
use vflie_core::{LatticeParams, LatticePoint};

/// All `(d, e)` with `d <= max_d`, `e > 1` and `e e' = d + 1`.
fn minimal_regime(max_d: i64) -> Vec<LatticeParams> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for e in (2..d).filter(|e| e.gcd(&d) == 1) {
            let p = LatticeParams::new(d, e).unwrap();
            if p.is_minimal_regime() {
                out.push(p);
            }
        }
    }
    out
}

fn any_params() -> impl Strategy<Value = LatticeParams> {
    (2i64..=15, 1i64..15).prop_filter_map("coprime", |(d, e)| {
        (e < d && e.gcd(&d) == 1).then(|| LatticeParams::new(d, e).unwrap())
    })
}

fn pt(a: i64, b: i64) -> LatticePoint {
    LatticePoint::new(a, b)
}

fn f_formula(p: &LatticeParams, q: LatticePoint) -> i64 {
    (q.a * p.e() + q.b) + (q.a + q.b * p.e_prime())
}

proptest! {
    #![proptest_config(common::config(400))]

    #[test]
    fn lambda_is_a_submonoid(p in any_params(), a in 0i64..30, b in 0i64..30, c in 0i64..30, d in 0i64..30) {
        let (x, y) = (pt(a, b), pt(c, d));
        if p.in_lambda(x) && p.in_lambda(y) {
            prop_assert!(p.in_lambda(x + y));
        }
    }

    #[test]
    fn e_prime_inverts_e(p in any_params()) {
        prop_assert_eq!((p.e() * p.e_prime()).mod_floor(&p.d()), 1 % p.d());
        prop_assert!(1 <= p.e_prime() && p.e_prime() < p.d());
    }
}

#[test]
fn two_congruences_agree() {
    for d in 2..=15i64 {
        for e in (1..d).filter(|e| e.gcd(&d) == 1) {
            let p = LatticeParams::new(d, e).unwrap();
            for a in -3..=40 {
                for b in -3..=40 {
                    let first = (a * e + b).mod_floor(&d) == 0;
                    let second = (a + b * p.e_prime()).mod_floor(&d) == 0;
                    assert_eq!(first, second, "d={d} e={e} ({a},{b})");
                }
            }
        }
    }
}

#[test]
fn greedy_paths_stay_in_lambda_hat() {
    let regimes = minimal_regime(40);
    assert!(regimes.len() >= 10);
    for p in &regimes {
        for a in 0..=4 * p.d() {
            for b in 0..=4 * p.d() {
                let q = pt(a, b);
                if !p.in_lambda(q) {
                    continue;
                }
                let path = p.decompose_path(q).unwrap();
                assert_eq!(path.start, p.base_point());
                assert_eq!(path.end, q);
                let pts = path.points(p);
                assert_eq!(*pts.last().unwrap(), q);
                assert!(pts.iter().all(|&r| p.in_lambda_hat(r)), "{p} {q}");
                // walking downward, each reduction lowers f by mult * d
                let mut cur = q;
                for step in path.steps.iter().rev() {
                    let next = cur - p.direction(step.dir) * step.mult;
                    assert_eq!(f_formula(p, cur) - f_formula(p, next), step.mult * p.d());
                    cur = next;
                }
                assert_eq!(cur, p.base_point());
            }
        }
    }
}

#[test]
fn u_first_greedy_reaches_the_same_base() {
    for p in minimal_regime(30) {
        for a in 0..=3 * p.d() {
            for b in 0..=3 * p.d() {
                let mut cur = pt(a, b);
                if !p.in_lambda(cur) {
                    continue;
                }
                while cur != p.base_point() {
                    cur = if cur.b >= p.e() {
                        cur - p.direction(Direction::U) * (cur.b / p.e())
                    } else if cur.a >= p.e_prime() {
                        cur - p.direction(Direction::V) * (cur.a / p.e_prime())
                    } else {
                        panic!("{p}: stuck at {cur}")
                    };
                    assert!(p.in_lambda_hat(cur));
                }
            }
        }
    }
}

#[test]
fn base_point_is_the_unique_small_point() {
    for p in minimal_regime(60) {
        let small: Vec<_> = (0..p.e_prime())
            .flat_map(|a| (0..p.e()).map(move |b| pt(a, b)))
            .filter(|&q| p.in_lambda(q))
            .collect();
        assert_eq!(small, vec![p.base_point()], "{p}");
    }
}

#[test]
fn nm_solution_reconstructs() {
    for p in minimal_regime(40) {
        for a in 0..=50 {
            for b in 0..=50 {
                let q = pt(a, b);
                if !p.in_lambda(q) {
                    continue;
                }
                let (n, m) = p.nm_solution(q).unwrap();
                assert!(n >= 0 && m >= 0);
                assert_eq!(p.u() * n + p.v() * m, q);
                assert_eq!(p.f_value(q).unwrap(), (n + m) * p.d());
            }
        }
    }
}

#[test]
fn outside_the_regime_paths_are_refused() {
    let p = LatticeParams::new(7, 3).unwrap();
    assert!(!p.is_minimal_regime());
    assert!(p.decompose_path(pt(2, 1)).is_err());
    let veronese = LatticeParams::new(4, 1).unwrap();
    assert!(veronese.decompose_path(pt(1, 3)).is_err());
}
