//! Polynomial vector fields (derivations of `k[x_1, ..., x_n]`).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{write_signed, Monomial, Poly};
use crate::scalar::{Field, Scalar};

const DIRS: [&str; 3] = ["dx", "dy", "dz"];

/// `sum_i f_i d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecField {
    arity: usize,
    field: Field,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for VecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VecField[{}; {}]({})", self.arity, self.field, self)
    }
}

impl VecField {
    pub fn new(coeffs: Vec<Poly>) -> Result<VecField> {
        let arity = coeffs.len();
        if arity == 0 {
            return Err(invalid("a vector field needs at least one coordinate"));
        }
        let field = coeffs[0].field();
        for c in &coeffs {
            if c.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: c.arity(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
        }
        Ok(VecField {
            arity,
            field,
            coeffs,
        })
    }

    pub fn zero(arity: usize, field: Field) -> VecField {
        VecField {
            arity,
            field,
            coeffs: vec![Poly::zero(arity, field); arity],
        }
    }

    /// `c * m * d/dx_dir`.
    pub fn monomial(arity: usize, field: Field, m: Monomial, dir: usize, c: Scalar) -> VecField {
        let mut v = VecField::zero(arity, field);
        v.coeffs[dir] = Poly::monomial(m, c, field);
        v
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, dir: usize) -> &Poly {
        &self.coeffs[dir]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Maximum total degree over the coefficients; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }

    /// All `(monomial, direction, coefficient)` triples.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, usize, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| (m, i, c)))
    }

    fn check_compatible(&self, other: &VecField) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &VecField) -> Result<VecField> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &VecField) -> Result<VecField> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &VecField, op: impl Fn(&Poly, &Poly) -> Poly) -> VecField {
        VecField {
            arity: self.arity,
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<VecField> {
        Ok(VecField {
            arity: self.arity,
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.scale(c))
                .collect::<Result<_>>()?,
        })
    }

    pub fn neg(&self) -> VecField {
        VecField {
            arity: self.arity,
            field: self.field,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }

    pub fn promote(&self, field: Field) -> Result<VecField> {
        Ok(VecField {
            arity: self.arity,
            field,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.promote(field))
                .collect::<Result<_>>()?,
        })
    }

    /// Derivation action `sum_i f_i dp/dx_i`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: p.arity(),
            });
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        let mut out = Poly::zero(self.arity, self.field);
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(i)?;
            if !dp.is_zero() {
                out = &out + &(f * &dp);
            }
        }
        Ok(out)
    }

    /// Commutator `[X, Y]`, with coefficients `X(g_i) - Y(f_i)`.
    pub fn bracket(&self, other: &VecField) -> Result<VecField> {
        self.check_compatible(other)?;
        let coeffs = (0..self.arity)
            .map(|i| Ok(&self.apply(&other.coeffs[i])? - &other.apply(&self.coeffs[i])?))
            .collect::<Result<_>>()?;
        Ok(VecField {
            arity: self.arity,
            field: self.field,
            coeffs,
        })
    }

    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.arity, self.field);
        for (i, f) in self.coeffs.iter().enumerate() {
            out = &out + &f.partial_derivative(i).expect("index within arity");
        }
        out
    }

    fn require_plane(&self) -> Result<()> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: self.arity,
            });
        }
        Ok(())
    }

    /// Splits a field on the plane into bigraded homogeneous components.
    pub fn bidegree_components(&self) -> Result<BTreeMap<Bidegree, VecField>> {
        self.require_plane()?;
        let mut out: BTreeMap<Bidegree, VecField> = BTreeMap::new();
        for (m, dir, c) in self.terms() {
            let key = Bidegree::of_term(m, dir);
            let entry = out
                .entry(key)
                .or_insert_with(|| VecField::zero(2, self.field));
            entry.coeffs[dir].add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// The bidegree if the field is nonzero and homogeneous.
    pub fn bidegree(&self) -> Result<Option<Bidegree>> {
        let comps = self.bidegree_components()?;
        if comps.len() == 1 {
            Ok(comps.keys().next().copied())
        } else {
            Ok(None)
        }
    }

    /// Pushforward `phi_* X`, characterized by
    /// `(phi_* X)(p) = X(p o phi) o phi^{-1}`.
    pub fn pushforward(&self, phi: &PolyAutomorphism) -> Result<VecField> {
        if phi.arity != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: phi.arity,
            });
        }
        let field = self.field.join(phi.field)?;
        let x = self.promote(field)?;
        let coeffs = phi
            .forward
            .iter()
            .map(|fi| x.apply(&fi.promote(field)?)?.substitute(&phi.inverse))
            .collect::<Result<_>>()?;
        VecField::new(coeffs)
    }
}

impl fmt::Display for VecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().flat_map(|(i, p)| {
            p.terms()
                .rev()
                .map(move |(m, c)| (c, m, Some(DIRS.get(i).copied().unwrap_or("d?"))))
        });
        write_signed(f, terms)
    }
}

/// Weight of a homogeneous field on the plane: `bideg(x^i y^j d/dx) = (i-1, j)`,
/// `bideg(x^i y^j d/dy) = (i, j-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

impl Bidegree {
    pub fn new(a: i64, b: i64) -> Result<Bidegree> {
        if a < -1 || b < -1 || (a == -1 && b == -1) {
            return Err(invalid(format!(
                "({a},{b}) is not a bidegree of a vector field"
            )));
        }
        Ok(Bidegree { a, b })
    }

    fn of_term(m: &Monomial, dir: usize) -> Bidegree {
        let e = m.exponents();
        let (i, j) = (e[0] as i64, e[1] as i64);
        if dir == 0 {
            Bidegree { a: i - 1, b: j }
        } else {
            Bidegree { a: i, b: j - 1 }
        }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The homogeneous zero-divergence generators of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `y^n d/dx`
    Plus(u32),
    /// `x^m d/dy`
    Minus(u32),
    /// `x^a y^b ((b+1) x d/dx - (a+1) y d/dy)`
    Dab(u32, u32),
}

impl Generator {
    pub fn bidegree(self) -> Bidegree {
        match self {
            Generator::Plus(n) => Bidegree { a: -1, b: n as i64 },
            Generator::Minus(m) => Bidegree { a: m as i64, b: -1 },
            Generator::Dab(a, b) => Bidegree {
                a: a as i64,
                b: b as i64,
            },
        }
    }

    /// The generator spanning the zero-divergence component of a bidegree.
    pub fn of_bidegree(bd: Bidegree) -> Option<Generator> {
        match (bd.a, bd.b) {
            (-1, n) if n >= 0 => Some(Generator::Plus(n as u32)),
            (m, -1) if m >= 0 => Some(Generator::Minus(m as u32)),
            (a, b) if a >= 0 && b >= 0 => Some(Generator::Dab(a as u32, b as u32)),
            _ => None,
        }
    }

    pub fn field(self) -> VecField {
        self.field_in(Field::Rational)
    }

    pub fn field_in(self, field: Field) -> VecField {
        match self {
            Generator::Plus(n) => gen_dplus_in(n, field),
            Generator::Minus(m) => gen_dminus_in(m, field),
            Generator::Dab(a, b) => gen_dab_in(a, b, field),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Plus(n) => write!(f, "D+[{n}]"),
            Generator::Minus(m) => write!(f, "D-[{m}]"),
            Generator::Dab(a, b) => write!(f, "D[{a},{b}]"),
        }
    }
}

fn mono2(i: u32, j: u32) -> Monomial {
    Monomial::new(vec![i, j])
}

fn gen_dplus_in(n: u32, field: Field) -> VecField {
    VecField::monomial(2, field, mono2(0, n), 0, Scalar::one())
}

fn gen_dminus_in(m: u32, field: Field) -> VecField {
    VecField::monomial(2, field, mono2(m, 0), 1, Scalar::one())
}

fn gen_dab_in(a: u32, b: u32, field: Field) -> VecField {
    let fx = Poly::monomial(mono2(a + 1, b), Scalar::from_int(b as i64 + 1), field);
    let fy = Poly::monomial(mono2(a, b + 1), Scalar::from_int(-(a as i64) - 1), field);
    VecField::new(vec![fx, fy]).expect("plane field")
}

/// `y^n d/dx`.
pub fn gen_dplus(n: u32) -> VecField {
    gen_dplus_in(n, Field::Rational)
}

/// `x^m d/dy`.
pub fn gen_dminus(m: u32) -> VecField {
    gen_dminus_in(m, Field::Rational)
}

/// `x^a y^b ((b+1) x d/dx - (a+1) y d/dy)`.
pub fn gen_dab(a: u32, b: u32) -> VecField {
    gen_dab_in(a, b, Field::Rational)
}

/// Result of a closed-form commutator lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableEntry {
    Zero,
    Term(BigRational, Generator),
}

impl TableEntry {
    fn term(c: i64, g: Generator) -> TableEntry {
        if c == 0 {
            TableEntry::Zero
        } else {
            TableEntry::Term(BigRational::from_integer(c.into()), g)
        }
    }

    fn negated(self) -> TableEntry {
        match self {
            TableEntry::Zero => TableEntry::Zero,
            TableEntry::Term(c, g) => TableEntry::Term(-c, g),
        }
    }

    pub fn to_field(&self) -> VecField {
        match self {
            TableEntry::Zero => VecField::zero(2, Field::Rational),
            TableEntry::Term(c, g) => g.field().scale(&Scalar::Rational(c.clone())).unwrap(),
        }
    }
}

/// Closed-form brackets between the homogeneous generators of the plane.
pub fn commutation_table(lhs: Generator, rhs: Generator) -> TableEntry {
    use Generator::*;
    let i = |v: u32| v as i64;
    match (lhs, rhs) {
        (Plus(_), Plus(_)) | (Minus(_), Minus(_)) => TableEntry::Zero,
        (Plus(n), Minus(m)) => match (n, m) {
            (0, 0) => TableEntry::Zero,
            (0, m) => TableEntry::term(i(m), Minus(m - 1)),
            // [D-_0, D+_n] = n D+_{n-1}
            (n, 0) => TableEntry::term(-i(n), Plus(n - 1)),
            (n, m) => TableEntry::term(-1, Dab(m - 1, n - 1)),
        },
        (Minus(_), Plus(_)) => commutation_table(rhs, lhs).negated(),
        (Dab(a, b), Dab(a2, b2)) => {
            let det = (i(a2) + 1) * (i(b) + 1) - (i(a) + 1) * (i(b2) + 1);
            TableEntry::term(det, Dab(a + a2, b + b2))
        }
        (Plus(n), Dab(a, b)) => {
            if a == 0 {
                TableEntry::term(i(n) + i(b) + 1, Plus(n + b))
            } else {
                TableEntry::term(i(a) + 1, Dab(a - 1, n + b))
            }
        }
        (Minus(m), Dab(a, b)) => {
            if b == 0 {
                TableEntry::term(-(i(m) + i(a) + 1), Minus(m + a))
            } else {
                TableEntry::term(i(b) + 1, Dab(m + a, b - 1))
            }
        }
        (Dab(..), Plus(_)) | (Dab(..), Minus(_)) => commutation_table(rhs, lhs).negated(),
    }
}

/// A polynomial automorphism with an explicitly supplied inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAutomorphism {
    arity: usize,
    field: Field,
    forward: Vec<Poly>,
    inverse: Vec<Poly>,
}

impl PolyAutomorphism {
    /// Validates that `forward` and `inverse` compose to the identity both ways.
    pub fn new(forward: Vec<Poly>, inverse: Vec<Poly>) -> Result<PolyAutomorphism> {
        let arity = forward.len();
        if inverse.len() != arity || arity == 0 {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: inverse.len(),
            });
        }
        let mut field = Field::Rational;
        for p in forward.iter().chain(&inverse) {
            if p.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: p.arity(),
                });
            }
            field = field.join(p.field())?;
        }
        let forward: Vec<Poly> = forward
            .iter()
            .map(|p| p.promote(field))
            .collect::<Result<_>>()?;
        let inverse: Vec<Poly> = inverse
            .iter()
            .map(|p| p.promote(field))
            .collect::<Result<_>>()?;
        for i in 0..arity {
            let xi = Poly::var(arity, field, i)?;
            if forward[i].substitute(&inverse)? != xi || inverse[i].substitute(&forward)? != xi {
                return Err(invalid("supplied inverse does not invert the map"));
            }
        }
        Ok(PolyAutomorphism {
            arity,
            field,
            forward,
            inverse,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn forward(&self) -> &[Poly] {
        &self.forward
    }

    pub fn inverse_images(&self) -> &[Poly] {
        &self.inverse
    }

    /// Diagonal map `x_i -> s_i x_i`.
    pub fn diagonal(scales: &[Scalar]) -> Result<PolyAutomorphism> {
        let arity = scales.len();
        let mut field = Field::Rational;
        for s in scales {
            field = field.join(s.field())?;
        }
        let mut fwd = Vec::with_capacity(arity);
        let mut inv = Vec::with_capacity(arity);
        for (i, s) in scales.iter().enumerate() {
            let xi = Poly::var(arity, field, i)?;
            fwd.push(xi.scale(s)?);
            inv.push(xi.scale(&s.inverse()?)?);
        }
        PolyAutomorphism::new(fwd, inv)
    }

    /// Generator `(x, y) -> (zeta^e x, zeta y)` of the cyclic group of order `d`.
    pub fn cyclic_generator(d: u32, e: u32) -> Result<PolyAutomorphism> {
        let z = Scalar::zeta(d)?;
        PolyAutomorphism::diagonal(&[z.pow(e as i64)?, z])
    }

    /// The coordinate swap `(x, y) -> (y, x)`.
    pub fn twist() -> PolyAutomorphism {
        let x = Poly::var(2, Field::Rational, 0).unwrap();
        let y = Poly::var(2, Field::Rational, 1).unwrap();
        PolyAutomorphism::new(vec![y.clone(), x.clone()], vec![y, x]).unwrap()
    }

    /// `phi o psi`, i.e. `x -> phi(psi(x))`.
    pub fn compose(&self, psi: &PolyAutomorphism) -> Result<PolyAutomorphism> {
        let forward = self
            .forward
            .iter()
            .map(|p| p.substitute(&psi.forward))
            .collect::<Result<_>>()?;
        let inverse = psi
            .inverse
            .iter()
            .map(|p| p.substitute(&self.inverse))
            .collect::<Result<_>>()?;
        PolyAutomorphism::new(forward, inverse)
    }
}

/// Outcome of the bounded local-finiteness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Finiteness {
    /// Every seed's iterates spanned an invariant subspace within the bounds.
    Bounded,
    /// Some iterate passed the degree bound, or the iteration budget ran out.
    Exceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub verdict: Finiteness,
    pub degree_bound: u32,
    pub iteration_bound: u32,
    /// Largest degree among computed iterates.
    pub max_degree: u32,
    /// Dimension of the invariant span found for each stabilized seed.
    pub seed_dimensions: Vec<Option<usize>>,
}

/// Semi-decision for local finiteness: iterates `X` on each seed until the
/// iterates become linearly dependent (an invariant subspace was found) or a
/// bound is hit. Never a proof of local finiteness.
pub fn local_finiteness_probe(
    x: &VecField,
    seeds: &[Poly],
    degree_bound: u32,
    iteration_bound: u32,
) -> Result<FinitenessReport> {
    if seeds.is_empty() {
        return Err(invalid("at least one seed polynomial is required"));
    }
    let mut max_degree = 0;
    let mut verdict = Finiteness::Bounded;
    let mut dims = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut echelon = PolyEchelon::default();
        let mut current = seed.clone();
        let mut stabilized = None;
        for _ in 0..=iteration_bound {
            let deg = current.degree().unwrap_or(0);
            max_degree = max_degree.max(deg);
            if deg > degree_bound {
                break;
            }
            if !echelon.insert(&current) {
                stabilized = Some(echelon.rank());
                break;
            }
            current = x.apply(&current)?;
        }
        if stabilized.is_none() {
            verdict = Finiteness::Exceeded;
        }
        dims.push(stabilized);
    }
    Ok(FinitenessReport {
        verdict,
        degree_bound,
        iteration_bound,
        max_degree,
        seed_dimensions: dims,
    })
}

/// Incremental row echelon form over polynomials viewed as coefficient vectors.
#[derive(Default)]
struct PolyEchelon {
    rows: BTreeMap<Monomial, Poly>,
}

impl PolyEchelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, p: &Poly) -> bool {
        let mut r = p.clone();
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&m) {
                Some(pivot) => r = &r - &pivot.scale(&c).unwrap(),
                None => {
                    let inv = c.inverse().unwrap();
                    self.rows.insert(m, r.scale(&inv).unwrap());
                    return true;
                }
            }
        }
        false
    }
}

/// True when all generator parameters are at most `max` and the closed form
/// agrees with the generic bracket; returns the number of identities checked
/// and the first mismatches found.
pub fn table_check(max: u32) -> (usize, Vec<(Generator, Generator)>) {
    let mut gens = Vec::new();
    for n in 0..=max {
        gens.push(Generator::Plus(n));
        gens.push(Generator::Minus(n));
    }
    for a in 0..=max {
        for b in 0..=max {
            gens.push(Generator::Dab(a, b));
        }
    }
    let fields: Vec<VecField> = gens.iter().map(|g| g.field()).collect();
    let mut count = 0;
    let mut bad = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        for (j, &h) in gens.iter().enumerate() {
            count += 1;
            let direct = fields[i].bracket(&fields[j]).expect("plane fields");
            if commutation_table(g, h).to_field() != direct {
                bad.push((g, h));
            }
        }
    }
    (count, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_vecfield};

    fn vf(s: &str) -> VecField {
        parse_vecfield(s, 2, Field::Rational).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, 2, Field::Rational).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(vf("y*dx").apply(&p("x^2")).unwrap(), p("2*x*y"));
        assert_eq!(vf("x*dx + y*dy").apply(&p("x^3*y")).unwrap(), p("4*x^3*y"));
    }

    #[test]
    fn iterates_of_non_locally_finite_field_grow() {
        let d = vf("x^2*dx");
        let mut q = p("x");
        let mut last = 1;
        for _ in 0..10 {
            q = d.apply(&q).unwrap();
            let deg = q.degree().unwrap();
            assert!(deg > last);
            last = deg;
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(vf("y*dx").bracket(&vf("x*dy")).unwrap(), vf("-x*dx + y*dy"));
        assert_eq!(vf("dx").bracket(&vf("x^2*dy")).unwrap(), vf("2*x*dy"));
        let x = vf("x^3*y*dx - 7*y^2*dy + dx");
        assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn bracket_arity_mismatch() {
        let a = vf("dx");
        let b = parse_vecfield("dz", 3, Field::Rational).unwrap();
        assert!(matches!(a.bracket(&b), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn divergence_examples() {
        assert!(vf("x^2*dx - 2*x*y*dy").divergence().is_zero());
        assert_eq!(vf("x*dx + y*dy").divergence(), p("2"));
        assert!(vf("y*dx").divergence().is_zero());
    }

    #[test]
    fn components_examples() {
        let comps = vf("y*dx + x^2*dy").bidegree_components().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&Bidegree { a: -1, b: 1 }], vf("y*dx"));
        assert_eq!(comps[&Bidegree { a: 2, b: -1 }], vf("x^2*dy"));
        assert!(VecField::zero(2, Field::Rational)
            .bidegree_components()
            .unwrap()
            .is_empty());
        let d11 = gen_dab(1, 1);
        let comps = d11.bidegree_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&Bidegree { a: 1, b: 1 }], d11);
    }

    #[test]
    fn generators() {
        assert_eq!(gen_dab(0, 0), vf("x*dx - y*dy"));
        assert_eq!(gen_dab(1, 1), vf("2*x^2*y*dx - 2*x*y^2*dy"));
        assert_eq!(gen_dplus(0), vf("dx"));
        assert_eq!(Generator::Plus(3).bidegree(), Bidegree { a: -1, b: 3 });
        assert_eq!(Generator::Minus(2).bidegree(), Bidegree { a: 2, b: -1 });
        assert_eq!(
            gen_dab(2, 5).bidegree().unwrap(),
            Some(Bidegree { a: 2, b: 5 })
        );
        assert_eq!(
            gen_dplus(4).bidegree().unwrap(),
            Some(Bidegree { a: -1, b: 4 })
        );
    }

    #[test]
    fn table_examples() {
        use Generator::*;
        assert_eq!(
            commutation_table(Plus(1), Dab(0, 1)),
            TableEntry::Term(BigRational::from_integer(3.into()), Plus(2))
        );
        assert_eq!(
            gen_dplus(1).bracket(&gen_dab(0, 1)).unwrap(),
            vf("3*y^2*dx")
        );
        assert_eq!(
            commutation_table(Dab(1, 0), Dab(0, 1)),
            TableEntry::Term(BigRational::from_integer((-3).into()), Dab(1, 1))
        );
        assert_eq!(commutation_table(Plus(2), Plus(5)), TableEntry::Zero);
    }

    #[test]
    fn table_small_exhaustive() {
        let (count, bad) = table_check(3);
        assert_eq!(count, (8 + 16) * (8 + 16));
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn bidegree_bounds() {
        assert!(Bidegree::new(-1, -1).is_err());
        assert!(Bidegree::new(-2, 0).is_err());
        assert!(Bidegree::new(-1, 0).is_ok());
    }

    #[test]
    fn pushforward_twist() {
        let tau = PolyAutomorphism::twist();
        assert_eq!(vf("y*dx").pushforward(&tau).unwrap(), vf("x*dy"));
    }

    #[test]
    fn pushforward_cyclic_generator() {
        let phi = PolyAutomorphism::cyclic_generator(4, 3).unwrap();
        let field = Field::Cyclotomic(4);
        let fixed = gen_dplus(3).promote(field).unwrap();
        assert_eq!(fixed.pushforward(&phi).unwrap(), fixed);
        let moved = gen_dplus(1).promote(field).unwrap();
        let zeta2 = Scalar::zeta(4).unwrap().pow(2).unwrap();
        let image = moved.pushforward(&phi).unwrap();
        assert_eq!(image, moved.scale(&zeta2).unwrap());
        assert_ne!(image, moved);
    }

    #[test]
    fn automorphism_validation() {
        let x = p("x");
        let y = p("y");
        assert!(
            PolyAutomorphism::new(vec![&x + &p("y^2"), y.clone()], vec![x.clone(), y.clone()])
                .is_err()
        );
        assert!(PolyAutomorphism::new(
            vec![&x + &p("y^2"), y.clone()],
            vec![&x - &p("y^2"), y.clone()]
        )
        .is_ok());
    }

    #[test]
    fn probe_examples() {
        let d10 = gen_dab(1, 0);
        let r = local_finiteness_probe(&d10, &[p("x")], 40, 40).unwrap();
        assert_eq!(r.verdict, Finiteness::Exceeded);

        let r = local_finiteness_probe(&vf("y*dx"), &[p("x"), p("y")], 40, 40).unwrap();
        assert_eq!(r.verdict, Finiteness::Bounded);
        assert_eq!(r.seed_dimensions, vec![Some(2), Some(1)]);

        let r = local_finiteness_probe(&vf("x*dx"), &[p("x^2")], 40, 40).unwrap();
        assert_eq!(r.verdict, Finiteness::Bounded);
        assert_eq!(r.seed_dimensions, vec![Some(1)]);

        assert!(local_finiteness_probe(&vf("x*dx"), &[], 4, 4).is_err());
    }

    #[test]
    fn display_groups_by_direction() {
        assert_eq!(vf("x*dy + y*dx").to_string(), "y*dx + x*dy");
        assert_eq!(vf("-x*dx + y*dy").to_string(), "-x*dx + y*dy");
        assert_eq!(VecField::zero(2, Field::Rational).to_string(), "0");
    }
}
