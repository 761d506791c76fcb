//! Spans of vector fields and their derived series, plus the catalog of named
//! subalgebras.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lattice::{LatticeParams, LatticePoint};
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, Scalar};
use crate::vecfield::{gen_dab, gen_dminus, gen_dplus, VecField};

/// Coordinate index of a vector field: a monomial and a direction.
type Key = (Monomial, usize);

fn leading_key(v: &VecField) -> Option<(Key, Scalar)> {
    v.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.leading_term().map(|(m, c)| ((m.clone(), i), c.clone())))
        .max_by(|a, b| a.0.cmp(&b.0))
}

/// A linear subspace of vector fields in echelon form.
///
/// Rows are keyed by their leading coordinate and normalized to leading
/// coefficient one.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    arity: usize,
    field: Field,
    rows: BTreeMap<Key, VecField>,
    discards: usize,
}

impl SpanBasis {
    pub fn empty(arity: usize, field: Field) -> SpanBasis {
        SpanBasis {
            arity,
            field,
            rows: BTreeMap::new(),
            discards: 0,
        }
    }

    pub fn from_fields(arity: usize, field: Field, elements: &[VecField]) -> Result<SpanBasis> {
        let mut s = SpanBasis::empty(arity, field);
        for v in elements {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Brackets dropped for exceeding a degree cap while building this span.
    pub fn discards(&self) -> usize {
        self.discards
    }

    /// Basis in ascending order of leading coordinate.
    pub fn elements(&self) -> impl Iterator<Item = &VecField> {
        self.rows.values()
    }

    fn check(&self, v: &VecField) -> Result<()> {
        if v.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: v.arity(),
            });
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field, v.field()));
        }
        Ok(())
    }

    /// Remainder of `v` after reduction against the current rows.
    fn reduce(&self, v: &VecField) -> VecField {
        let mut r = v.clone();
        while let Some((key, c)) = leading_key(&r) {
            match self.rows.get(&key) {
                Some(row) => r = r.checked_sub(&row.scale(&c).unwrap()).unwrap(),
                None => break,
            }
        }
        r
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &VecField) -> Result<bool> {
        self.check(v)?;
        let mut r = v.clone();
        loop {
            let Some((key, c)) = leading_key(&r) else {
                return Ok(false);
            };
            match self.rows.get(&key) {
                Some(row) => r = r.checked_sub(&row.scale(&c)?)?,
                None => {
                    let row = r.scale(&c.inverse()?)?;
                    self.rows.insert(key, row);
                    return Ok(true);
                }
            }
        }
    }

    pub fn contains(&self, v: &VecField) -> Result<bool> {
        self.check(v)?;
        Ok(leading_key(&self.reduce(v)).is_none())
    }
}

/// Builds the span of a nonempty family.
pub fn span(elements: &[VecField]) -> Result<SpanBasis> {
    let first = elements
        .first()
        .ok_or_else(|| invalid("span of an empty family needs an explicit ambient space"))?;
    SpanBasis::from_fields(first.arity(), first.field(), elements)
}

/// Span of `[a, b]` over basis pairs, dropping brackets of degree above `degree_cap`.
pub fn bracket_span(a: &SpanBasis, b: &SpanBasis, degree_cap: u32) -> Result<SpanBasis> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch {
            expected: a.arity,
            found: b.arity,
        });
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field, b.field));
    }
    let same = std::ptr::eq(a, b);
    let xs: Vec<&VecField> = a.elements().collect();
    let ys: Vec<&VecField> = b.elements().collect();
    let mut out = SpanBasis::empty(a.arity, a.field);
    for (i, x) in xs.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for y in &ys[start..] {
            let z = x.bracket(y)?;
            match z.degree() {
                None => {}
                Some(deg) if deg > degree_cap => out.discards += 1,
                Some(_) => {
                    out.insert(&z)?;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeriesVerdict {
    SolvableAtTruncation,
    NotDecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSeriesReport {
    pub truncation: u32,
    pub levels: Vec<usize>,
    pub discards: usize,
    pub verdict: SeriesVerdict,
    #[serde(skip)]
    pub stabilized_at_zero: Option<usize>,
}

impl DerivedSeriesReport {
    /// Index of the first zero level, if one was reached.
    pub fn derived_length(&self) -> Option<usize> {
        self.stabilized_at_zero
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Iterates `L -> [L, L]` from the span of `generators`. Stops at zero, after
/// `max_levels` steps, or as soon as a level has the same dimension as its
/// predecessor (the series is then stationary).
pub fn derived_series(
    generators: &SpanBasis,
    degree_cap: u32,
    max_levels: usize,
) -> Result<DerivedSeriesReport> {
    if max_levels == 0 {
        return Err(invalid("max_levels must be at least 1"));
    }
    let mut levels = vec![generators.dim()];
    let mut discards = generators.discards();
    let mut cur = generators.clone();
    let mut zero_at = if cur.is_zero() { Some(0) } else { None };
    let mut level = 0;
    while zero_at.is_none() && level < max_levels {
        let next = bracket_span(&cur, &cur, degree_cap)?;
        level += 1;
        discards += next.discards();
        levels.push(next.dim());
        if next.is_zero() {
            zero_at = Some(level);
        } else if next.dim() == cur.dim() {
            break;
        }
        cur = next;
    }
    Ok(DerivedSeriesReport {
        truncation: degree_cap,
        levels,
        discards,
        verdict: if zero_at.is_some() {
            SeriesVerdict::SolvableAtTruncation
        } else {
            SeriesVerdict::NotDecided
        },
        stabilized_at_zero: zero_at,
    })
}

/// Names of the catalogued subalgebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    J2Plus,
    J2Minus,
    J20Plus,
    J20Minus,
    U2Plus,
    U2Minus,
    U20Plus,
    U20Minus,
    T2,
    T3,
    U3Plus,
    J3Plus,
    Vec0,
    VecC,
    Vec0At0,
    VecCAt0,
    UDePlus,
    UDeMinus,
    NDeInvariants,
    GDe,
    IDe,
    Sl2A1,
}

const TAG_NAMES: [(Tag, &str); 22] = [
    (Tag::J2Plus, "j2plus"),
    (Tag::J2Minus, "j2minus"),
    (Tag::J20Plus, "j20plus"),
    (Tag::J20Minus, "j20minus"),
    (Tag::U2Plus, "u2plus"),
    (Tag::U2Minus, "u2minus"),
    (Tag::U20Plus, "u20plus"),
    (Tag::U20Minus, "u20minus"),
    (Tag::T2, "t2"),
    (Tag::T3, "t3"),
    (Tag::U3Plus, "u3plus"),
    (Tag::J3Plus, "j3plus"),
    (Tag::Vec0, "vec0"),
    (Tag::VecC, "vecc"),
    (Tag::Vec0At0, "vec0_0"),
    (Tag::VecCAt0, "vecc_0"),
    (Tag::UDePlus, "u_de_plus"),
    (Tag::UDeMinus, "u_de_minus"),
    (Tag::NDeInvariants, "n_de_invariants"),
    (Tag::GDe, "g_de"),
    (Tag::IDe, "I_de"),
    (Tag::Sl2A1, "sl2_A1"),
];

impl Tag {
    pub fn all() -> impl Iterator<Item = Tag> {
        TAG_NAMES.iter().map(|&(t, _)| t)
    }

    pub fn name(self) -> &'static str {
        TAG_NAMES.iter().find(|(t, _)| *t == self).unwrap().1
    }

    pub fn needs_params(self) -> bool {
        matches!(
            self,
            Tag::UDePlus | Tag::UDeMinus | Tag::NDeInvariants | Tag::GDe | Tag::IDe
        )
    }

    /// Dimension of the ambient affine space.
    pub fn arity(self) -> usize {
        match self {
            Tag::T3 | Tag::U3Plus | Tag::J3Plus => 3,
            Tag::Sl2A1 => 1,
            _ => 2,
        }
    }
}

impl FromStr for Tag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Tag> {
        TAG_NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|&(t, _)| t)
            .ok_or_else(|| invalid(format!("unknown algebra `{s}`")))
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedAlgebra {
    tag: Tag,
    params: Option<LatticeParams>,
}

impl NamedAlgebra {
    pub fn new(tag: Tag, params: Option<LatticeParams>) -> Result<NamedAlgebra> {
        if tag.needs_params() != params.is_some() {
            return Err(invalid(if tag.needs_params() {
                format!("{tag} needs (d,e) parameters")
            } else {
                format!("{tag} takes no parameters")
            }));
        }
        Ok(NamedAlgebra { tag, params })
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn params(&self) -> Option<LatticeParams> {
        self.params
    }

    pub fn arity(&self) -> usize {
        self.tag.arity()
    }

    fn p(&self) -> &LatticeParams {
        self.params.as_ref().expect("validated at construction")
    }

    /// Exact membership test.
    pub fn member(&self, x: &VecField) -> Result<bool> {
        if x.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: x.arity(),
            });
        }
        let c = x.coeffs();
        let ok = match self.tag {
            Tag::J2Plus => {
                supp(&c[0], |e| e[0] == 0 || (e[0] == 1 && e[1] == 0))
                    && supp(&c[1], |e| e[0] == 0 && e[1] <= 1)
            }
            Tag::J2Minus => {
                supp(&c[1], |e| e[1] == 0 || (e[1] == 1 && e[0] == 0))
                    && supp(&c[0], |e| e[1] == 0 && e[0] <= 1)
            }
            Tag::J20Plus => {
                supp(&c[0], |e| {
                    (e[0] == 0 && e[1] >= 1) || (e[0] == 1 && e[1] == 0)
                }) && supp(&c[1], |e| e == [0, 1])
            }
            Tag::J20Minus => {
                supp(&c[1], |e| {
                    (e[1] == 0 && e[0] >= 1) || (e[1] == 1 && e[0] == 0)
                }) && supp(&c[0], |e| e == [1, 0])
            }
            Tag::U2Plus => supp(&c[0], |e| e[0] == 0) && supp(&c[1], |e| e == [0, 0]),
            Tag::U2Minus => supp(&c[1], |e| e[1] == 0) && supp(&c[0], |e| e == [0, 0]),
            Tag::U20Plus => supp(&c[0], |e| e[0] == 0 && e[1] >= 1) && c[1].is_zero(),
            Tag::U20Minus => supp(&c[1], |e| e[1] == 0 && e[0] >= 1) && c[0].is_zero(),
            Tag::T2 => supp(&c[0], |e| e == [1, 0]) && supp(&c[1], |e| e == [0, 1]),
            Tag::T3 => (0..3).all(|i| supp(&c[i], |e| is_var(e, i))),
            Tag::U3Plus => {
                supp(&c[0], |e| e[0] == 0)
                    && supp(&c[1], |e| e[0] == 0 && e[1] == 0)
                    && supp(&c[2], |e| e == [0, 0, 0])
            }
            Tag::J3Plus => {
                supp(&c[0], |e| e[0] == 0 || is_var(e, 0))
                    && supp(&c[1], |e| (e[0] == 0 && e[1] == 0) || is_var(e, 1))
                    && supp(&c[2], |e| e == [0, 0, 0] || is_var(e, 2))
            }
            Tag::Vec0 => x.divergence().is_zero(),
            Tag::VecC => is_constant(&x.divergence()),
            Tag::Vec0At0 => x.divergence().is_zero() && vanishes_at_origin(x),
            Tag::VecCAt0 => is_constant(&x.divergence()) && vanishes_at_origin(x),
            Tag::UDePlus => {
                let p = self.p();
                c[1].is_zero() && supp(&c[0], |e| e[0] == 0 && congruent(e[1] as i64, p.e(), p.d()))
            }
            Tag::UDeMinus => {
                let p = self.p();
                c[0].is_zero()
                    && supp(&c[1], |e| {
                        e[1] == 0 && congruent(e[0] as i64, p.e_prime(), p.d())
                    })
            }
            Tag::NDeInvariants => self.graded_check(x, |p, q| p.in_lambda_hat(q))?,
            Tag::GDe => {
                self.graded_check(x, |p, q| p.in_lambda_hat(q))? && x.divergence().is_zero()
            }
            Tag::IDe => {
                self.graded_check(x, |p, q| p.in_lambda_small(q))? && x.divergence().is_zero()
            }
            Tag::Sl2A1 => c[0].degree().is_none_or(|d| d <= 2),
        };
        Ok(ok)
    }

    /// Every bigraded component must have an allowed bidegree and, away from
    /// `(0,0)`, be a multiple of the zero-divergence generator.
    fn graded_check(
        &self,
        x: &VecField,
        allowed: impl Fn(&LatticeParams, LatticePoint) -> bool,
    ) -> Result<bool> {
        let p = self.p();
        for (bd, comp) in x.bidegree_components()? {
            let q = LatticePoint::new(bd.a, bd.b);
            if !allowed(p, q) {
                return Ok(false);
            }
            if (bd.a, bd.b) != (0, 0) && !comp.divergence().is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the elements of total degree at most `degree_cap`, over `Q`.
    /// Finite algebras ignore the cap.
    pub fn truncated_basis(&self, degree_cap: u32) -> Vec<VecField> {
        let cap = degree_cap;
        let f2 = |fx: &[(u32, u32)], fy: &[(u32, u32)]| fields2(fx, fy);
        match self.tag {
            Tag::J2Plus => {
                let mut v = ys_dx(0, cap);
                v.extend(torus2());
                v.push(gen_dminus(0));
                v
            }
            Tag::J2Minus => {
                let mut v = xs_dy(0, cap);
                v.extend(torus2());
                v.push(gen_dplus(0));
                v
            }
            Tag::J20Plus => {
                let mut v = ys_dx(1, cap);
                v.extend(torus2());
                v
            }
            Tag::J20Minus => {
                let mut v = xs_dy(1, cap);
                v.extend(torus2());
                v
            }
            Tag::U2Plus => {
                let mut v = ys_dx(0, cap);
                v.push(gen_dminus(0));
                v
            }
            Tag::U2Minus => {
                let mut v = vec![gen_dplus(0)];
                v.extend(xs_dy(0, cap));
                v
            }
            Tag::U20Plus => ys_dx(1, cap),
            Tag::U20Minus => xs_dy(1, cap),
            Tag::T2 => torus2(),
            Tag::T3 => torus3(),
            Tag::U3Plus => u3plus(cap),
            Tag::J3Plus => {
                let mut v = torus3();
                v.extend(u3plus(cap));
                v
            }
            Tag::Vec0 | Tag::VecC | Tag::Vec0At0 | Tag::VecCAt0 => {
                let at0 = matches!(self.tag, Tag::Vec0At0 | Tag::VecCAt0);
                let lo = u32::from(at0);
                let mut v: Vec<VecField> = (lo..=cap).map(gen_dplus).collect();
                v.extend((lo..=cap).map(gen_dminus));
                v.extend(dab_up_to(cap, |_, _| true));
                if matches!(self.tag, Tag::VecC | Tag::VecCAt0) && cap >= 1 {
                    v.push(f2(&[(1, 0)], &[(0, 1)]));
                }
                v
            }
            Tag::UDePlus => plus_roots(self.p(), 0, cap),
            Tag::UDeMinus => minus_roots(self.p(), 0, cap),
            Tag::NDeInvariants | Tag::GDe | Tag::IDe => {
                let p = *self.p();
                let mut v = Vec::new();
                let first = match self.tag {
                    Tag::NDeInvariants => {
                        if cap >= 1 {
                            v.extend(torus2());
                        }
                        0
                    }
                    Tag::GDe => {
                        if cap >= 1 {
                            v.push(gen_dab(0, 0));
                        }
                        0
                    }
                    _ => 1,
                };
                v.extend(plus_roots(&p, first, cap));
                v.extend(minus_roots(&p, first, cap));
                v.extend(dab_up_to(cap, |a, b| {
                    p.in_lambda(LatticePoint::new(a as i64, b as i64))
                }));
                v
            }
            Tag::Sl2A1 => {
                let x2 = Poly::monomial(Monomial::new(vec![2]), Scalar::one(), Field::Rational);
                let one = Poly::monomial(
                    Monomial::new(vec![0]),
                    Scalar::from_int(-1),
                    Field::Rational,
                );
                let x =
                    Poly::monomial(Monomial::new(vec![1]), Scalar::from_int(2), Field::Rational);
                [x2, one, x]
                    .into_iter()
                    .map(|p| VecField::new(vec![p]).unwrap())
                    .collect()
            }
        }
    }
}

impl fmt::Display for NamedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.params {
            Some(p) => write!(f, "{}(d={}, e={})", self.tag, p.d(), p.e()),
            None => write!(f, "{}", self.tag),
        }
    }
}

pub fn member(alg: &NamedAlgebra, x: &VecField) -> Result<bool> {
    alg.member(x)
}

pub fn truncated_basis(alg: &NamedAlgebra, degree_cap: u32) -> Vec<VecField> {
    alg.truncated_basis(degree_cap)
}

fn supp(p: &Poly, pred: impl Fn(&[u32]) -> bool) -> bool {
    p.terms().all(|(m, _)| pred(m.exponents()))
}

fn is_var(e: &[u32], i: usize) -> bool {
    e.iter().enumerate().all(|(j, &k)| k == u32::from(j == i))
}

fn is_constant(p: &Poly) -> bool {
    p.degree().is_none_or(|d| d == 0)
}

fn vanishes_at_origin(x: &VecField) -> bool {
    let one = Monomial::one(x.arity());
    x.coeffs().iter().all(|p| p.coeff(&one).is_zero())
}

fn congruent(n: i64, r: i64, d: i64) -> bool {
    (n - r).rem_euclid(d) == 0
}

fn fields2(fx: &[(u32, u32)], fy: &[(u32, u32)]) -> VecField {
    let mk = |ts: &[(u32, u32)]| {
        Poly::from_terms(
            2,
            Field::Rational,
            ts.iter()
                .map(|&(i, j)| (Monomial::new(vec![i, j]), Scalar::one())),
        )
        .unwrap()
    };
    VecField::new(vec![mk(fx), mk(fy)]).unwrap()
}

fn torus2() -> Vec<VecField> {
    vec![fields2(&[(1, 0)], &[]), fields2(&[], &[(0, 1)])]
}

fn torus3() -> Vec<VecField> {
    (0..3)
        .map(|i| VecField::monomial(3, Field::Rational, Monomial::var(3, i), i, Scalar::one()))
        .collect()
}

fn ys_dx(lo: u32, cap: u32) -> Vec<VecField> {
    (lo..=cap).map(gen_dplus).collect()
}

fn xs_dy(lo: u32, cap: u32) -> Vec<VecField> {
    (lo..=cap).map(gen_dminus).collect()
}

/// `d/dz`, then `k[z] d/dy`, then `k[y,z] d/dx` by degree.
fn u3plus(cap: u32) -> Vec<VecField> {
    let q = Field::Rational;
    let mut v = vec![VecField::monomial(3, q, Monomial::one(3), 2, Scalar::one())];
    for k in 0..=cap {
        v.push(VecField::monomial(
            3,
            q,
            Monomial::new(vec![0, 0, k]),
            1,
            Scalar::one(),
        ));
    }
    for deg in 0..=cap {
        for j in (0..=deg).rev() {
            let m = Monomial::new(vec![0, j, deg - j]);
            v.push(VecField::monomial(3, q, m, 0, Scalar::one()));
        }
    }
    v
}

fn plus_roots(p: &LatticeParams, first_k: i64, cap: u32) -> Vec<VecField> {
    (first_k..)
        .map(|k| p.e() + k * p.d())
        .take_while(|&n| n <= cap as i64)
        .map(|n| gen_dplus(n as u32))
        .collect()
}

fn minus_roots(p: &LatticeParams, first_l: i64, cap: u32) -> Vec<VecField> {
    (first_l..)
        .map(|l| p.e_prime() + l * p.d())
        .take_while(|&m| m <= cap as i64)
        .map(|m| gen_dminus(m as u32))
        .collect()
}

/// `D[a,b]` with `a + b + 1 <= cap`, ordered by `a + b` then `a`.
fn dab_up_to(cap: u32, keep: impl Fn(u32, u32) -> bool) -> Vec<VecField> {
    let mut v = Vec::new();
    for s in 0..cap {
        for a in 0..=s {
            if keep(a, s - a) {
                v.push(gen_dab(a, s - a));
            }
        }
    }
    v
}
