//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{precondition, Error, Result};
use crate::scalar::{Field, Scalar};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with `x > y > z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Monomial {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Monomial {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Zero order of a univariate polynomial at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; {}]({})", self.arity, self.field, self)
    }
}

impl Poly {
    pub fn zero(arity: usize, field: Field) -> Poly {
        Poly {
            arity,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, field: Field, c: Scalar) -> Result<Poly> {
        Poly::from_terms(arity, field, [(Monomial::one(arity), c)])
    }

    pub fn one(arity: usize, field: Field) -> Poly {
        Poly::monomial(Monomial::one(arity), Scalar::one(), field)
    }

    pub fn var(arity: usize, field: Field, index: usize) -> Result<Poly> {
        if index >= arity {
            return Err(Error::VariableOutOfRange { index, arity });
        }
        Ok(Poly::monomial(
            Monomial::var(arity, index),
            Scalar::one(),
            field,
        ))
    }

    /// Single term; the coefficient must embed into `field`.
    pub fn monomial(m: Monomial, c: Scalar, field: Field) -> Poly {
        assert!(c.field().embeds_in(field), "coefficient outside {field}");
        let mut terms = BTreeMap::new();
        let arity = m.arity();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            arity,
            field,
            terms,
        }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        arity: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Poly> {
        let mut out = Poly::zero(arity, field);
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: m.arity(),
                });
            }
            if !c.field().embeds_in(field) {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest monomial in graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Whether the polynomial involves variable `index`.
    pub fn depends_on(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.0[index] > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<Field> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(self.field)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.arity, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Poly> {
        if !c.field().embeds_in(self.field) {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        if c.is_zero() {
            return Ok(Poly::zero(self.arity, self.field));
        }
        Ok(Poly {
            arity: self.arity,
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        })
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.arity, self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Re-tags the polynomial in a larger field (`Q` into `Q(zeta_d)`).
    pub fn promote(&self, field: Field) -> Result<Poly> {
        if !self.field.embeds_in(field) {
            return Err(Error::FieldMismatch(self.field, field));
        }
        Ok(Poly {
            arity: self.arity,
            field,
            terms: self.terms.clone(),
        })
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Poly> {
        if index >= self.arity {
            return Err(Error::VariableOutOfRange {
                index,
                arity: self.arity,
            });
        }
        let mut out = Poly::zero(self.arity, self.field);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        Ok(out)
    }

    /// Replaces variable `i` by `images[i]` and expands.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: images.len(),
            });
        }
        let (target_arity, mut field) = match images.first() {
            Some(p) => (p.arity, p.field),
            None => (0, self.field),
        };
        for p in images {
            if p.arity != target_arity {
                return Err(Error::ArityMismatch {
                    expected: target_arity,
                    found: p.arity,
                });
            }
            field = field.join(p.field)?;
        }
        field = field.join(self.field)?;
        let images: Vec<Poly> = images
            .iter()
            .map(|p| p.promote(field))
            .collect::<Result<_>>()?;
        // powers of each image, built lazily
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target_arity, field), p.clone()])
            .collect();
        let mut out = Poly::zero(target_arity, field);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_arity, field, c.clone())?;
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Value at a point.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = t.try_mul(&x.pow(e as i64)?)?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    fn require_univariate(&self) -> Result<()> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: self.arity,
            });
        }
        Ok(())
    }

    /// Dense coefficients `c_0, ..., c_deg` of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<Scalar>> {
        self.require_univariate()?;
        let deg = self.degree().unwrap_or(0) as usize;
        let mut out = vec![Scalar::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(field: Field, coeffs: &[Scalar]) -> Result<Poly> {
        Poly::from_terms(
            1,
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial(vec![i as u32]), c.clone())),
        )
    }

    /// Largest `k` with `(x - alpha)^k | f`.
    pub fn vanishing_order(&self, alpha: &Scalar) -> Result<Order> {
        self.require_univariate()?;
        if self.is_zero() {
            return Ok(Order::Infinite);
        }
        let mut coeffs = self.univariate_coeffs()?;
        let mut k = 0;
        loop {
            // synthetic division by (x - alpha), highest coefficient first
            let n = coeffs.len();
            let mut quot = vec![Scalar::zero(); n - 1];
            let mut acc = Scalar::zero();
            for i in (0..n).rev() {
                acc = acc.try_mul(alpha)?.try_add(&coeffs[i])?;
                if i > 0 {
                    quot[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                return Ok(Order::Finite(k));
            }
            k += 1;
            coeffs = quot;
        }
    }

    /// `Some((c, alpha, k))` with `f = c (x - alpha)^k`; `alpha = 0` when `k = 0`.
    pub fn is_scaled_linear_power(&self) -> Result<Option<(Scalar, Scalar, u32)>> {
        self.require_univariate()?;
        if self.is_zero() {
            return Err(precondition("zero polynomial"));
        }
        let coeffs = self.univariate_coeffs()?;
        let k = coeffs.len() - 1;
        let c = coeffs[k].clone();
        if k == 0 {
            return Ok(Some((c, Scalar::zero(), 0)));
        }
        // c (x - a)^k has x^{k-1} coefficient -k c a
        let alpha = -(coeffs[k - 1].try_div(&c.try_mul(&Scalar::from_int(k as i64))?)?);
        let candidate = linear_power(self.field, &alpha, k as u32)?.scale(&c)?;
        Ok((candidate == *self).then_some((c, alpha, k as u32)))
    }
}

/// `(x - alpha)^k` as a univariate polynomial.
pub fn linear_power(field: Field, alpha: &Scalar, k: u32) -> Result<Poly> {
    let field = field.join(alpha.field())?;
    let base = Poly::from_univariate(field, &[-alpha, Scalar::one()])?;
    Ok(base.pow(k))
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// Operator forms panic on arity/field mismatch; see the `checked_*` methods.
macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomial operands disagree on arity or field")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

pub(crate) const VARS: [char; 3] = ['x', 'y', 'z'];

/// Writes `c*x^i*y^j` with the sign already stripped from rational `c`.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Scalar,
    m: &Monomial,
    suffix: Option<&str>,
) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    match c {
        Scalar::Rational(r) => {
            let abs = num_traits::Signed::abs(r);
            let unit = num_traits::One::is_one(&abs);
            if !unit || (m.is_one() && suffix.is_none()) {
                factors.push(abs.to_string());
            }
        }
        Scalar::Cyclotomic(_) => factors.push(format!("({c})")),
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        let v = VARS.get(i).copied().unwrap_or('?');
        match e {
            0 => {}
            1 => factors.push(v.to_string()),
            _ => factors.push(format!("{v}^{e}")),
        }
    }
    if let Some(s) = suffix {
        factors.push(s.to_string());
    }
    write!(f, "{}", factors.join("*"))
}

/// Writes a signed sequence of terms joined by ` + ` / ` - `.
pub(crate) fn write_signed<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, &'a Monomial, Option<&'a str>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, m, suffix) in terms {
        let neg = c.is_negative_rational();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        write_term(f, c, m, suffix)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Canonical text: descending graded-lex order, signs folded into separators.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed(f, self.terms.iter().rev().map(|(m, c)| (c, m, None)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p2(s: &str) -> Poly {
        parse_poly(s, 2, Field::Rational).unwrap()
    }

    fn p1(s: &str) -> Poly {
        parse_poly(s, 1, Field::Rational).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p2("x + y") * &p2("x - y"), p2("x^2 - y^2"));
    }

    #[test]
    fn multiplication_by_zero() {
        let z = Poly::zero(2, Field::Rational);
        assert!((&p2("x^2") * &z).is_empty());
    }

    #[test]
    fn root_shape_substitution() {
        // y^2 p(y^3) with p(t) = 1 + t
        let p = p1("1 + x");
        let y = Poly::var(2, Field::Rational, 1).unwrap();
        let inner = p.substitute(&[y.pow(3)]).unwrap();
        assert_eq!(&y.pow(2) * &inner, p2("y^2 + y^5"));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = p2("x");
        let b = parse_poly("x", 3, Field::Rational).unwrap();
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p2("x^2*y").partial_derivative(0).unwrap(), p2("2*x*y"));
        assert!(p2("x^2").partial_derivative(1).unwrap().is_zero());
        assert_eq!(
            p2("x^3 + x").partial_derivative(0).unwrap(),
            p2("3*x^2 + 1")
        );
        assert!(p2("x").partial_derivative(2).is_err());
    }

    #[test]
    fn substitution_through_group_generator() {
        // d = 4, e = 3: (x, y) -> (zeta^3 x, zeta y)
        let field = Field::Cyclotomic(4);
        let z = Scalar::zeta(4).unwrap();
        let x = Poly::var(2, field, 0).unwrap();
        let y = Poly::var(2, field, 1).unwrap();
        let images = [x.scale(&z.pow(3).unwrap()).unwrap(), y.scale(&z).unwrap()];
        let p = parse_poly("x^2*y", 2, field).unwrap();
        let expected = p.scale(&z.pow(3).unwrap()).unwrap();
        assert_eq!(p.substitute(&images).unwrap(), expected);
    }

    #[test]
    fn twist_fixes_symmetric_polynomial() {
        let p = p2("x + y");
        assert_eq!(p.substitute(&[p2("y"), p2("x")]).unwrap(), p);
    }

    #[test]
    fn binomial_substitution() {
        let p = p2("x^2");
        assert_eq!(
            p.substitute(&[p2("x + y^2"), p2("y")]).unwrap(),
            p2("x^2 + 2*x*y^2 + y^4")
        );
    }

    #[test]
    fn vanishing_orders() {
        let zero = Scalar::zero();
        assert_eq!(p1("x^4").vanishing_order(&zero).unwrap(), Order::Finite(4));
        assert_eq!(
            p1("x^2 - 2*x + 1").vanishing_order(&Scalar::one()).unwrap(),
            Order::Finite(2)
        );
        assert_eq!(
            Poly::zero(1, Field::Rational)
                .vanishing_order(&zero)
                .unwrap(),
            Order::Infinite
        );
        assert_eq!(
            p1("x + 1").vanishing_order(&zero).unwrap(),
            Order::Finite(0)
        );
    }

    #[test]
    fn scaled_linear_powers() {
        let (c, a, k) = p1("3*x^2 - 6*x + 3")
            .is_scaled_linear_power()
            .unwrap()
            .unwrap();
        assert_eq!((c, a, k), (Scalar::from_int(3), Scalar::one(), 2));
        assert_eq!(p1("x^2 + 1").is_scaled_linear_power().unwrap(), None);
        assert_eq!(
            p1("7").is_scaled_linear_power().unwrap(),
            Some((Scalar::from_int(7), Scalar::zero(), 0))
        );
        assert!(Poly::zero(1, Field::Rational)
            .is_scaled_linear_power()
            .is_err());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p2("x^2 + 2*x*y^2 + y^4").to_string(), "y^4 + 2*x*y^2 + x^2");
        assert_eq!(p2("-x + 1/2").to_string(), "-x + 1/2");
        assert_eq!(Poly::zero(2, Field::Rational).to_string(), "0");
    }

    #[test]
    fn promotion_is_explicit() {
        let p = p2("x");
        let q = parse_poly("y", 2, Field::Cyclotomic(3)).unwrap();
        assert!(matches!(p.checked_add(&q), Err(Error::FieldMismatch(..))));
        let lifted = p.promote(Field::Cyclotomic(3)).unwrap();
        assert!(lifted.checked_add(&q).is_ok());
        assert!(q.promote(Field::Rational).is_err());
    }
}
