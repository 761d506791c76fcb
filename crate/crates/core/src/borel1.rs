//! Vector fields on the line: special polynomials and the small Borel
//! subalgebras of `Der(k[x])`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{invalid, precondition, Error, Result};
use crate::generate::{Binding, BracketWord, Sl2Certificate, Sl2Words};
use crate::poly::{linear_power, Monomial, Poly};
use crate::scalar::{rational, Field, Scalar};
use crate::vecfield::VecField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecialClass {
    Special,
    NonSpecial,
    /// Quadratic without a rational root: special over the algebraic closure.
    SpecialOverClosure,
}

/// `f = lambda (x - alpha)^k + mu (x - alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialForm {
    pub class: SpecialClass,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub alpha: Scalar,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub k: u32,
}

impl Witness {
    pub fn reconstruct(&self) -> Result<Poly> {
        let field = self
            .alpha
            .field()
            .join(self.lambda.field())?
            .join(self.mu.field())?;
        let a = linear_power(field, &self.alpha, self.k)?.scale(&self.lambda)?;
        let b = linear_power(field, &self.alpha, 1)?.scale(&self.mu)?;
        a.checked_add(&b)
    }
}

#[derive(Serialize)]
struct SpecialJson {
    class: SpecialClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
}

impl SpecialForm {
    fn special(alpha: Scalar, lambda: Scalar, mu: Scalar, k: u32) -> SpecialForm {
        SpecialForm {
            class: SpecialClass::Special,
            witness: Some(Witness {
                alpha,
                lambda,
                mu,
                k,
            }),
        }
    }

    fn without_witness(class: SpecialClass) -> SpecialForm {
        SpecialForm {
            class,
            witness: None,
        }
    }

    pub fn to_json(&self) -> String {
        let w = self.witness.as_ref();
        let j = SpecialJson {
            class: self.class,
            alpha: w.map(|w| w.alpha.to_string()),
            lambda: w.map(|w| w.lambda.to_string()),
            mu: w.map(|w| w.mu.to_string()),
            k: w.map(|w| w.k),
        };
        serde_json::to_string(&j).expect("plain json")
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// Decides whether `f` is special and returns a witness when one is rational.
pub fn special_form(f: &Poly) -> Result<SpecialForm> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    if f.field() != Field::Rational {
        return Err(invalid("specialness is decided over Q"));
    }
    let deg = f
        .degree()
        .ok_or_else(|| precondition("the zero polynomial has no form"))?;
    let zero = Scalar::zero();
    let at = |p: &Poly, a: &Scalar| p.evaluate(std::slice::from_ref(a));
    let df = f.partial_derivative(0)?;
    match deg {
        0 | 1 => Ok(SpecialForm::special(
            zero.clone(),
            at(f, &zero)?,
            at(&df, &zero)?,
            0,
        )),
        2 => {
            let c = f.univariate_coeffs()?;
            let r = |s: &Scalar| s.as_rational().cloned().expect("rational field");
            let (c0, c1, c2) = (r(&c[0]), r(&c[1]), r(&c[2]));
            let four = BigRational::from_integer(4.into());
            let disc = &c1 * &c1 - four * &c2 * &c0;
            match rational_sqrt(&disc) {
                None => Ok(SpecialForm::without_witness(
                    SpecialClass::SpecialOverClosure,
                )),
                Some(s) => {
                    let two = BigRational::from_integer(2.into());
                    let alpha = Scalar::Rational((-c1 + s) / (two * &c2));
                    let mu = at(&df, &alpha)?;
                    Ok(SpecialForm::special(alpha, Scalar::Rational(c2), mu, 2))
                }
            }
        }
        k => {
            let f2 = df.partial_derivative(0)?;
            let Some((_, alpha, _)) = f2.is_scaled_linear_power()? else {
                return Ok(SpecialForm::without_witness(SpecialClass::NonSpecial));
            };
            if !at(f, &alpha)?.is_zero() {
                return Ok(SpecialForm::without_witness(SpecialClass::NonSpecial));
            }
            let lambda = f.leading_term().expect("nonzero").1.clone();
            let w = Witness {
                mu: at(&df, &alpha)?,
                alpha,
                lambda,
                k,
            };
            if w.reconstruct()? != *f {
                return Ok(SpecialForm::without_witness(SpecialClass::NonSpecial));
            }
            Ok(SpecialForm {
                class: SpecialClass::Special,
                witness: Some(w),
            })
        }
    }
}

/// Whether `k p(x) d/dx` is a one-dimensional Borel subalgebra, i.e. `p` is
/// not special.
pub fn borel_1d_dim1(p: &Poly) -> Result<bool> {
    Ok(special_form(p)?.class == SpecialClass::NonSpecial)
}

/// The basis `((x - alpha)^k d/dx, (x - alpha) d/dx)`.
pub fn borel_1d_dim2(alpha: &Scalar, k: u32) -> Result<(VecField, VecField)> {
    if k == 1 {
        return Err(invalid("k = 1 gives a one-dimensional span"));
    }
    let field = alpha.field();
    let a = VecField::new(vec![linear_power(field, alpha, k)?])?;
    let b = VecField::new(vec![linear_power(field, alpha, 1)?])?;
    Ok((a, b))
}

/// `e = x^2 d/dx`, `f = -d/dx`, `h = 2x d/dx`.
pub fn sl2_on_line() -> Result<Sl2Certificate> {
    let mono = |e: u32| {
        VecField::new(vec![Poly::monomial(
            Monomial::new(vec![e]),
            Scalar::one(),
            Field::Rational,
        )])
        .expect("line field")
    };
    let mut binding = Binding::new();
    binding.insert("dx".into(), mono(0));
    binding.insert("x_dx".into(), mono(1));
    binding.insert("x2_dx".into(), mono(2));
    let words = Sl2Words {
        e: BracketWord::leaf("x2_dx"),
        h: BracketWord::scale(rational(2, 1), BracketWord::leaf("x_dx")),
        f: BracketWord::scale(rational(-1, 1), BracketWord::leaf("dx")),
    };
    Sl2Certificate::from_words(words, binding)
}
