//! Exact scalars: rationals and elements of cyclotomic fields `Q(zeta_d)`.
//!
//! A cyclotomic element is stored as a residue of `Q[t]` modulo the `d`-th
//! cyclotomic polynomial, always reduced to degree `< phi(d)`. Elements whose
//! residue is a constant are normalized to [`Scalar::Rational`], so equality
//! is structural.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::poly::{Monomial, Poly};

/// The coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// `Q(zeta_d)` for the given order `d >= 1`.
    Cyclotomic(u32),
}

impl Field {
    pub fn cyclotomic(order: u32) -> Result<Field> {
        if order == 0 {
            return Err(invalid("cyclotomic order must be positive"));
        }
        Ok(Field::Cyclotomic(order))
    }

    /// The smallest field containing both; `Q` embeds into every `Q(zeta_d)`.
    pub fn join(self, other: Field) -> Result<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Cyclotomic(a), Field::Cyclotomic(b)) if a == b => Ok(self),
            _ => Err(Error::FieldMismatch(self, other)),
        }
    }

    /// Whether values of `self` may be used in `target` without conversion.
    pub fn embeds_in(self, target: Field) -> bool {
        self == Field::Rational || self == target
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(d) => write!(f, "Q(zeta_{d})"),
        }
    }
}

/// Integer coefficients (constant term first) of the `d`-th cyclotomic polynomial.
pub(crate) struct CyclotomicModulus {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicModulus {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn modulus(order: u32) -> Arc<CyclotomicModulus> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicModulus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&order) {
        return m.clone();
    }
    let m = Arc::new(CyclotomicModulus {
        order,
        coeffs: cyclotomic_coeffs(order),
    });
    cache.lock().unwrap().entry(order).or_insert(m).clone()
}

/// `Phi_d = (t^d - 1) / prod_{k | d, k < d} Phi_k`, by exact division.
fn cyclotomic_coeffs(d: u32) -> Vec<BigInt> {
    assert!(d >= 1);
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for k in 1..d {
        if d.is_multiple_of(k) {
            num = exact_div_monic(&num, &modulus(k).coeffs);
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The `d`-th cyclotomic polynomial as a univariate polynomial over `Q`.
pub fn cyclotomic_polynomial(d: u32) -> Result<Poly> {
    if d == 0 {
        return Err(invalid("cyclotomic order must be positive"));
    }
    let m = modulus(d);
    let terms = m
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            (
                Monomial::new(vec![i as u32]),
                Scalar::Rational(BigRational::from_integer(c.clone())),
            )
        });
    Poly::from_terms(1, Field::Rational, terms)
}

/// A non-rational element of `Q(zeta_d)`.
#[derive(Clone)]
pub struct Cyclotomic {
    modulus: Arc<CyclotomicModulus>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.modulus.order
    }

    /// Residue coefficients, constant term first; length `phi(d)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[d={}]({})", self.order(), self)
    }
}

/// An exact element of `Q` or of some `Q(zeta_d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => write!(f, "{c:?}"),
        }
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    /// The primitive root of unity `zeta_d`, i.e. the class of `t`.
    pub fn zeta(order: u32) -> Result<Scalar> {
        Scalar::from_residue(order, vec![BigRational::zero(), BigRational::one()])
    }

    /// The class of `sum coeffs[i] t^i` in `Q(zeta_d)`.
    pub fn from_residue(order: u32, coeffs: Vec<BigRational>) -> Result<Scalar> {
        Field::cyclotomic(order)?;
        let m = modulus(order);
        let reduced = reduce(&m, coeffs);
        Ok(normalize(m, reduced))
    }

    /// The minimal field this value lives in.
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.order()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// True for rationals below zero; cyclotomic values have no sign.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.zip_with(other, |a, b| a + b, add_vec)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(r), Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Rational(r)) => {
                if r.is_zero() {
                    return Ok(Scalar::zero());
                }
                Ok(Scalar::Cyclotomic(Cyclotomic {
                    modulus: c.modulus.clone(),
                    coeffs: c.coeffs.iter().map(|x| x * r).collect(),
                }))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                if a.order() != b.order() {
                    return Err(Error::FieldMismatch(self.field(), other.field()));
                }
                let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
                for (i, x) in a.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.coeffs.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                let reduced = reduce(&a.modulus, prod);
                Ok(normalize(a.modulus.clone(), reduced))
            }
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => {
                let modulus: Vec<BigRational> = c
                    .modulus
                    .coeffs
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let inv = inverse_mod(&c.coeffs, &modulus).ok_or(Error::DivisionByZero)?;
                let reduced = reduce(&c.modulus, inv);
                Ok(normalize(c.modulus.clone(), reduced))
            }
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    fn zip_with(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        cyc: impl Fn(&[BigRational], &[BigRational]) -> Vec<BigRational>,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(rat(a, b))),
            (Scalar::Rational(r), Scalar::Cyclotomic(c)) => {
                let lifted = lift(r, c.coeffs.len());
                Ok(normalize(c.modulus.clone(), cyc(&lifted, &c.coeffs)))
            }
            (Scalar::Cyclotomic(c), Scalar::Rational(r)) => {
                let lifted = lift(r, c.coeffs.len());
                Ok(normalize(c.modulus.clone(), cyc(&c.coeffs, &lifted)))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                if a.order() != b.order() {
                    return Err(Error::FieldMismatch(self.field(), other.field()));
                }
                Ok(normalize(a.modulus.clone(), cyc(&a.coeffs, &b.coeffs)))
            }
        }
    }
}

fn lift(r: &BigRational, len: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    v[0] = r.clone();
    v
}

fn add_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Reduce a coefficient vector modulo the monic integer modulus.
fn reduce(m: &CyclotomicModulus, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let deg = m.degree();
    while v.len() > deg {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - deg;
        for (j, mj) in m.coeffs[..deg].iter().enumerate() {
            v[shift + j] -= &top * BigRational::from_integer(mj.clone());
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

fn normalize(m: Arc<CyclotomicModulus>, coeffs: Vec<BigRational>) -> Scalar {
    if coeffs.iter().skip(1).all(Zero::is_zero) {
        Scalar::Rational(coeffs.into_iter().next().unwrap_or_else(BigRational::zero))
    } else {
        Scalar::Cyclotomic(Cyclotomic { modulus: m, coeffs })
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Extended Euclid: `s` with `s * a = 1 mod m`, or `None` if not coprime.
fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Gcd-normalized rational from machine integers.
pub fn rational(num: i64, den: i64) -> BigRational {
    let g = num.gcd(&den).max(1);
    BigRational::new((num / g).into(), (den / g).into())
}

// Operator forms panic on field mismatch; callers that cannot rule a mismatch
// out use the `try_*` methods.

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                modulus: c.modulus.clone(),
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs)
                    .expect("scalar operation across incompatible fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self)
                    .$try(&rhs)
                    .expect("scalar operation across incompatible fields")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);
