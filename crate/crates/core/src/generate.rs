//! Bracket words and the constructive generation procedures: root-derivation
//! words for `D[a,b]`, the Veronese identities, sl(2) detection, the
//! solvable extension check on 3-space and the invariant-generation probe.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, precondition, Error, Result};
use crate::lattice::{Direction, LatticeParams, LatticePath, LatticePoint};
use crate::liealg::{bracket_span, NamedAlgebra, SpanBasis, Tag};
use crate::poly::Monomial;
use crate::scalar::{Field, Scalar};
use crate::vecfield::{gen_dab, gen_dminus, gen_dplus, Bidegree, VecField};

/// A nested Lie expression over named generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketWord {
    Leaf(String),
    Bracket(Box<BracketWord>, Box<BracketWord>),
    Scale {
        #[serde(with = "rational_string")]
        s: BigRational,
        w: Box<BracketWord>,
    },
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        let r: BigRational = text
            .trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("`{text}` is not a rational number")))?;
        Ok(r)
    }
}

impl BracketWord {
    pub fn leaf(name: &str) -> BracketWord {
        BracketWord::Leaf(name.to_string())
    }

    pub fn bracket(a: BracketWord, b: BracketWord) -> BracketWord {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    pub fn scale(s: BigRational, w: BracketWord) -> BracketWord {
        BracketWord::Scale { s, w: Box::new(w) }
    }

    /// `ad(g)^r (self)`, left-nested.
    pub fn ad_power(self, g: &BracketWord, r: usize) -> BracketWord {
        (0..r).fold(self, |w, _| BracketWord::bracket(g.clone(), w))
    }

    /// Names of all leaves, in order of first appearance.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            BracketWord::Leaf(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            BracketWord::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            BracketWord::Scale { w, .. } => w.collect_leaves(out),
        }
    }
}

pub type Binding = BTreeMap<String, VecField>;

pub fn eval_word(w: &BracketWord, binding: &Binding) -> Result<VecField> {
    match w {
        BracketWord::Leaf(n) => binding
            .get(n)
            .cloned()
            .ok_or_else(|| Error::UnboundName(n.clone())),
        BracketWord::Bracket(a, b) => eval_word(a, binding)?.bracket(&eval_word(b, binding)?),
        BracketWord::Scale { s, w } => {
            if s.is_zero() {
                return Err(invalid("scale factors in a word must be nonzero"));
            }
            eval_word(w, binding)?.scale(&Scalar::Rational(s.clone()))
        }
    }
}

/// The `c` with `c * image = target`, if `image` is a nonzero multiple of `target`.
pub fn proportionality(target: &VecField, image: &VecField) -> Option<Scalar> {
    let (m, dir, c) = image.terms().next()?;
    let t = target.coeff(dir).coeff(m);
    let ratio = t.try_div(c).ok()?;
    let scaled = image.scale(&ratio).ok()?;
    (scaled == *target && !ratio.is_zero()).then_some(ratio)
}

fn rational_ratio(target: &VecField, image: &VecField) -> Result<BigRational> {
    let c = proportionality(target, image)
        .ok_or_else(|| precondition(format!("{image} is not a nonzero multiple of {target}")))?;
    c.as_rational()
        .cloned()
        .ok_or_else(|| precondition("ratio is not rational"))
}

pub const DPLUS_E: &str = "Dplus_e";
pub const DMINUS_EPRIME: &str = "Dminus_eprime";

/// A word realizing `D[a,b]` from the two lowest roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DabWord {
    pub target: LatticePoint,
    pub word: BracketWord,
    /// `D[a,b] = c * eval(word)`.
    pub c: BigRational,
    pub path: LatticePath,
    /// The scalar after the base word and after each unit step of the path.
    pub step_scalars: Vec<BigRational>,
}

impl DabWord {
    pub fn scaled_word(&self) -> BracketWord {
        BracketWord::scale(self.c.clone(), self.word.clone())
    }
}

/// Binding of the two root generators `y^e d/dx` and `x^{e'} d/dy`.
pub fn root_binding(params: &LatticeParams) -> Binding {
    let mut b = Binding::new();
    b.insert(DPLUS_E.into(), gen_dplus(params.e() as u32));
    b.insert(DMINUS_EPRIME.into(), gen_dminus(params.e_prime() as u32));
    b
}

/// Expresses `D[a,b]` through `ad` chains in the two roots, following the
/// greedy lattice path. The scalar is found by evaluating and matching.
pub fn build_dab_word(params: &LatticeParams, a: i64, b: i64) -> Result<DabWord> {
    let target = LatticePoint::new(a, b);
    let path = params.decompose_path(target)?;
    let binding = root_binding(params);
    let plus = BracketWord::leaf(DPLUS_E);
    let minus = BracketWord::leaf(DMINUS_EPRIME);

    let mut word = BracketWord::bracket(plus.clone(), minus.clone());
    let mut value = binding[DPLUS_E].bracket(&binding[DMINUS_EPRIME])?;
    let mut point = path.start;
    let dab = |p: LatticePoint| gen_dab(p.a as u32, p.b as u32);
    let mut scalars = vec![rational_ratio(&dab(point), &value)?];
    for step in &path.steps {
        let (g, gw) = match step.dir {
            Direction::U => (&binding[DPLUS_E], &plus),
            Direction::V => (&binding[DMINUS_EPRIME], &minus),
        };
        for _ in 0..step.mult {
            word = BracketWord::bracket(gw.clone(), word);
            value = g.bracket(&value)?;
            point = point + params.direction(step.dir);
            scalars.push(rational_ratio(&dab(point), &value)?);
        }
    }
    let c = scalars.last().cloned().expect("base scalar");
    Ok(DabWord {
        target,
        word,
        c,
        path,
        step_scalars: scalars,
    })
}

/// Evaluates a built word and checks it against `D[a,b]`.
pub fn verify_dab_word(params: &LatticeParams, w: &DabWord) -> Result<bool> {
    let v = eval_word(&w.scaled_word(), &root_binding(params))?;
    Ok(v == gen_dab(w.target.a as u32, w.target.b as u32) && !w.c.is_zero())
}

/// Both sides of `D[ld, kd] = [D-_{1+ld}, D+_{1+kd}]`.
pub fn veronese_identity(d: u32, k: u32, l: u32) -> Result<(VecField, VecField)> {
    if d < 2 {
        return Err(invalid("d must be at least 2"));
    }
    let lhs = gen_dab(l * d, k * d);
    let rhs = gen_dminus(1 + l * d).bracket(&gen_dplus(1 + k * d))?;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseChain {
    /// `ad(D+_1)^s (D[ld, 0])`.
    pub image: VecField,
    /// `D[ld - s, s]`.
    pub target: VecField,
    /// `image = alpha * target`.
    pub alpha: BigRational,
}

pub fn veronese_ad_chain(d: u32, l: u32, s: u32) -> Result<VeroneseChain> {
    if d < 2 {
        return Err(invalid("d must be at least 2"));
    }
    let top = l * d;
    if s > top {
        return Err(invalid(format!("s = {s} exceeds ld = {top}")));
    }
    let y_dx = gen_dplus(1);
    let mut image = gen_dab(top, 0);
    for _ in 0..s {
        image = y_dx.bracket(&image)?;
    }
    let target = gen_dab(top - s, s);
    let alpha = rational_ratio(&image, &target)?;
    Ok(VeroneseChain {
        image,
        target,
        alpha,
    })
}

/// An sl(2)-triple with exact relations and the words producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Certificate {
    pub e: VecField,
    pub h: VecField,
    pub f: VecField,
    /// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub relations_verified: [bool; 3],
    pub words: Sl2Words,
    pub binding: Binding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Words {
    pub e: BracketWord,
    pub h: BracketWord,
    pub f: BracketWord,
}

impl Sl2Certificate {
    pub fn from_words(words: Sl2Words, binding: Binding) -> Result<Sl2Certificate> {
        let e = eval_word(&words.e, &binding)?;
        let h = eval_word(&words.h, &binding)?;
        let f = eval_word(&words.f, &binding)?;
        let two = Scalar::from_int(2);
        let relations_verified = [
            h.bracket(&e)? == e.scale(&two)?,
            h.bracket(&f)? == f.scale(&-two)?,
            e.bracket(&f)? == h,
        ];
        if relations_verified.contains(&false) {
            return Err(precondition("triple does not satisfy the sl(2) relations"));
        }
        Ok(Sl2Certificate {
            e,
            h,
            f,
            relations_verified,
            words,
            binding,
        })
    }

    pub fn all_verified(&self) -> bool {
        self.relations_verified.iter().all(|&b| b)
    }
}

/// Reasons `detect_sl2` refuses an input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Sl2Refusal {
    #[error("the field is not bihomogeneous")]
    NotHomogeneous,
    #[error("the field already lies in j2plus")]
    InTriangular,
    #[error("the divergence is not constant")]
    DivergenceNotConstant,
}

impl From<Sl2Refusal> for Error {
    fn from(r: Sl2Refusal) -> Error {
        Error::Precondition(r.to_string())
    }
}

/// Names of the leaves used by `detect_sl2`: the input and three elements of
/// `j2plus`.
pub const SL2_LEAVES: [&str; 4] = ["v", "dx", "dy", "y_dx"];

/// Finds an sl(2)-triple in the Lie algebra generated by `v` and `j2plus`.
///
/// For bidegree `(a,b)` with `a >= 1`, `ad(d/dy)` is applied `b+1` times to
/// reach `x^a d/dy` and then `ad(d/dx)` `a-1` times to reach `x d/dy`, which
/// pairs with `y d/dx`. For `(0,b)` with `b >= 1`, `ad(d/dy)` is applied
/// `b-1` times to reach `D[0,1]`, which pairs with `d/dy`.
pub fn detect_sl2(v: &VecField) -> Result<Sl2Certificate> {
    if v.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: v.arity(),
        });
    }
    let field = v.field();
    let v = if field == Field::Rational {
        v.clone()
    } else {
        return Err(invalid("sl(2) detection works over Q"));
    };
    let bd = v.bidegree()?.ok_or(Sl2Refusal::NotHomogeneous)?;
    let vecc = NamedAlgebra::new(Tag::VecC, None)?;
    if !vecc.member(&v)? {
        return Err(Sl2Refusal::DivergenceNotConstant.into());
    }
    if NamedAlgebra::new(Tag::J2Plus, None)?.member(&v)? {
        return Err(Sl2Refusal::InTriangular.into());
    }
    let mut binding = Binding::new();
    binding.insert("v".into(), v.clone());
    binding.insert("dx".into(), gen_dplus(0));
    binding.insert("dy".into(), gen_dminus(0));
    binding.insert("y_dx".into(), gen_dplus(1));
    let leaf = BracketWord::leaf;
    let (a, b) = (bd.a, bd.b);
    let words = if a >= 1 {
        let raw = leaf("v")
            .ad_power(&leaf("dy"), (b + 1) as usize)
            .ad_power(&leaf("dx"), (a - 1) as usize);
        let val = eval_word(&raw, &binding)?;
        let k = rational_ratio(&gen_dminus(1), &val)?;
        let e = BracketWord::scale(k, raw);
        let f = leaf("y_dx");
        Sl2Words {
            h: BracketWord::bracket(e.clone(), f.clone()),
            e,
            f,
        }
    } else if a == 0 && b >= 1 {
        let raw = leaf("v").ad_power(&leaf("dy"), (b - 1) as usize);
        let val = eval_word(&raw, &binding)?;
        let k = rational_ratio(&gen_dab(0, 1), &val)?;
        let f = BracketWord::scale(k, raw);
        let e = leaf("dy");
        Sl2Words {
            h: BracketWord::bracket(e.clone(), f.clone()),
            e,
            f,
        }
    } else {
        // Every other bidegree of a constant-divergence field lies in j2plus.
        return Err(Sl2Refusal::InTriangular.into());
    };
    Sl2Certificate::from_words(words, binding)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub degree_cap: u32,
    pub clauses: Vec<Clause>,
    /// Dimension of the second commutant of the truncated extension.
    pub second_commutant_dim: usize,
}

impl ExtensionReport {
    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

fn field3(terms: &[([u32; 3], usize, i64)]) -> VecField {
    let mut v = VecField::zero(3, Field::Rational);
    for &(e, dir, c) in terms {
        let t = VecField::monomial(
            3,
            Field::Rational,
            Monomial::new(e.to_vec()),
            dir,
            Scalar::from_int(c),
        );
        v = v.checked_add(&t).unwrap();
    }
    v
}

/// `z (x d/dx - y d/dy)` on 3-space.
pub fn triangular_delta() -> VecField {
    field3(&[([1, 0, 1], 0, 1), ([0, 1, 1], 1, -1)])
}

/// Checks that adjoining `delta = z (x d/dx - y d/dy)` to the truncated
/// triangular algebra of 3-space behaves as a solvable extension: `ad(delta)`
/// preserves the summands, and the second commutant falls back into `j3plus`.
pub fn verify_triangular_extension(degree_cap: u32) -> Result<ExtensionReport> {
    if degree_cap < 3 {
        return Err(invalid("degree cap must be at least 3"));
    }
    let delta = triangular_delta();
    let ad = |x: &VecField| delta.bracket(x).expect("arity 3");
    let mut clauses = Vec::new();

    // k[y,z] d/dx
    let mut ok = true;
    for deg in 0..=degree_cap {
        for j in 0..=deg {
            let x = field3(&[([0, j, deg - j], 0, 1)]);
            let r = ad(&x);
            ok &= r.coeff(1).is_zero() && r.coeff(2).is_zero() && !r.coeff(0).depends_on(0);
        }
    }
    clauses.push(Clause {
        name: "ad(delta) k[y,z]dx in k[y,z]dx".into(),
        passed: ok,
        detail: String::new(),
    });

    // k[z] d/dy
    let mut ok = true;
    for k in 0..=degree_cap {
        let r = ad(&field3(&[([0, 0, k], 1, 1)]));
        ok &= r.coeff(0).is_zero()
            && r.coeff(2).is_zero()
            && !r.coeff(1).depends_on(0)
            && !r.coeff(1).depends_on(1);
    }
    clauses.push(Clause {
        name: "ad(delta) k[z]dy in k[z]dy".into(),
        passed: ok,
        detail: String::new(),
    });

    // k d/dz
    let h0 = field3(&[([1, 0, 0], 0, 1), ([0, 1, 0], 1, -1)]);
    let r = ad(&field3(&[([0, 0, 0], 2, 1)]));
    let m = proportionality(&r, &h0);
    clauses.push(Clause {
        name: "ad(delta) k dz = k(x dx - y dy)".into(),
        passed: m.is_some(),
        detail: match &m {
            Some(c) => format!("ad(delta)(dz) = {c} * (x*dx - y*dy)"),
            None => format!("ad(delta)(dz) = {r}"),
        },
    });

    // t3
    let torus: Vec<VecField> = (0..3)
        .map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            field3(&[(e, i, 1)])
        })
        .collect();
    let images: Vec<VecField> = torus.iter().map(&ad).collect();
    let img = SpanBasis::from_fields(3, Field::Rational, &images)?;
    let ok = img.dim() == 1 && img.contains(&delta)?;
    let zz = proportionality(&images[2], &delta);
    clauses.push(Clause {
        name: "ad(delta) t3 = k delta".into(),
        passed: ok,
        detail: match zz {
            Some(c) => format!("ad(delta)(z*dz) = {c} * delta"),
            None => String::new(),
        },
    });

    clauses.push(Clause {
        name: "ad(delta)(x dx - y dy) = 0".into(),
        passed: ad(&h0).is_zero(),
        detail: String::new(),
    });

    // Second commutant of h = j3plus + k delta, computed without truncation.
    let j3 = NamedAlgebra::new(Tag::J3Plus, None)?;
    let mut gens = j3.truncated_basis(degree_cap);
    gens.push(delta.clone());
    let h = SpanBasis::from_fields(3, Field::Rational, &gens)?;
    let h1 = bracket_span(&h, &h, u32::MAX)?;
    let h2 = bracket_span(&h1, &h1, u32::MAX)?;
    let mut bad = 0;
    for w in h2.elements() {
        if !j3.member(w)? {
            bad += 1;
        }
    }
    clauses.push(Clause {
        name: "h'' in j3plus".into(),
        passed: bad == 0,
        detail: format!("{} basis elements checked, {bad} outside", h2.dim()),
    });

    Ok(ExtensionReport {
        degree_cap,
        clauses,
        second_commutant_dim: h2.dim(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub bidegree: [i64; 2],
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question2Report {
    pub d: i64,
    pub e: i64,
    pub degree_cap: u32,
    pub generated_support: Vec<SupportEntry>,
    pub invariant_support: Vec<SupportEntry>,
    /// Bidegrees where the generated span is smaller than the invariants.
    pub missing: Vec<[i64; 2]>,
}

fn support(s: &SpanBasis) -> Result<BTreeMap<Bidegree, usize>> {
    let mut out = BTreeMap::new();
    for v in s.elements() {
        let bd = v
            .bidegree()?
            .ok_or_else(|| precondition("span of homogeneous fields has a mixed row"))?;
        *out.entry(bd).or_insert(0) += 1;
    }
    Ok(out)
}

fn entries(m: &BTreeMap<Bidegree, usize>) -> Vec<SupportEntry> {
    m.iter()
        .map(|(bd, &dim)| SupportEntry {
            bidegree: [bd.a, bd.b],
            dim,
        })
        .collect()
}

/// Compares the truncated Lie closure of the two root families and the torus
/// with the truncated invariant algebra, bidegree by bidegree. Reports only;
/// nothing is concluded about the untruncated algebras.
pub fn question2_probe(params: &LatticeParams, degree_cap: u32) -> Result<Question2Report> {
    let alg = |t| NamedAlgebra::new(t, Some(*params));
    let mut gens = alg(Tag::UDePlus)?.truncated_basis(degree_cap);
    gens.extend(alg(Tag::UDeMinus)?.truncated_basis(degree_cap));
    gens.extend(NamedAlgebra::new(Tag::T2, None)?.truncated_basis(degree_cap));
    let mut closure = SpanBasis::from_fields(2, Field::Rational, &gens)?;
    loop {
        let new = bracket_span(&closure, &closure, degree_cap)?;
        let mut grew = false;
        for v in new.elements() {
            grew |= closure.insert(v)?;
        }
        if !grew {
            break;
        }
    }
    let invariants = SpanBasis::from_fields(
        2,
        Field::Rational,
        &alg(Tag::NDeInvariants)?.truncated_basis(degree_cap),
    )?;
    let gen_supp = support(&closure)?;
    let inv_supp = support(&invariants)?;
    let missing = inv_supp
        .iter()
        .filter(|(bd, &dim)| gen_supp.get(bd).copied().unwrap_or(0) < dim)
        .map(|(bd, _)| [bd.a, bd.b])
        .collect();
    Ok(Question2Report {
        d: params.d(),
        e: params.e(),
        degree_cap,
        generated_support: entries(&gen_supp),
        invariant_support: entries(&inv_supp),
        missing,
    })
}

/// True when `r` is a strictly positive rational.
pub fn is_positive(r: &BigRational) -> bool {
    r.is_positive()
}

/// `[(b+2)(b+3)...(b+rho+1)]^{-1}`.
pub fn beta(b: i64, rho: i64) -> BigRational {
    let prod = (2..=rho + 1).fold(BigRational::one(), |acc, j| {
        acc * BigRational::from_integer((b + j).into())
    });
    prod.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vecfield;
    use crate::scalar::rational;

    fn vf(s: &str) -> VecField {
        parse_vecfield(s, 2, Field::Rational).unwrap()
    }

    fn params(d: i64, e: i64) -> LatticeParams {
        LatticeParams::new(d, e).unwrap()
    }

    #[test]
    fn eval_examples() {
        let mut b = Binding::new();
        b.insert("p".into(), vf("y*dx"));
        b.insert("q".into(), vf("x*dy"));
        let w = BracketWord::bracket(BracketWord::leaf("p"), BracketWord::leaf("q"));
        assert_eq!(eval_word(&w, &b).unwrap(), vf("-x*dx + y*dy"));

        b.insert("p".into(), vf("dx"));
        let w = BracketWord::scale(rational(-1, 1), BracketWord::leaf("p"));
        assert_eq!(eval_word(&w, &b).unwrap(), vf("-dx"));

        let mut b = Binding::new();
        b.insert("m".into(), gen_dminus(2));
        b.insert("d".into(), gen_dab(1, 1));
        let w = BracketWord::scale(
            rational(1, 2),
            BracketWord::bracket(BracketWord::leaf("m"), BracketWord::leaf("d")),
        );
        assert_eq!(eval_word(&w, &b).unwrap(), gen_dab(3, 0));

        let w = BracketWord::leaf("nope");
        assert_eq!(eval_word(&w, &b), Err(Error::UnboundName("nope".into())));
        let w = BracketWord::scale(rational(0, 1), BracketWord::leaf("m"));
        assert!(eval_word(&w, &b).is_err());
    }

    #[test]
    fn dab_word_examples() {
        let p = params(3, 2);
        let w = build_dab_word(&p, 1, 1).unwrap();
        assert_eq!(
            w.word,
            BracketWord::bracket(BracketWord::leaf(DPLUS_E), BracketWord::leaf(DMINUS_EPRIME))
        );
        assert_eq!(w.c, rational(-1, 1));
        assert!(verify_dab_word(&p, &w).unwrap());

        let w = build_dab_word(&p, 3, 0).unwrap();
        assert_eq!(
            w.word,
            BracketWord::bracket(
                BracketWord::leaf(DMINUS_EPRIME),
                BracketWord::bracket(BracketWord::leaf(DPLUS_E), BracketWord::leaf(DMINUS_EPRIME))
            )
        );
        assert_eq!(w.c, rational(-1, 2));
        assert!(verify_dab_word(&p, &w).unwrap());

        let w = build_dab_word(&p, 0, 3).unwrap();
        assert!(matches!(&w.word, BracketWord::Bracket(g, _) if **g == BracketWord::leaf(DPLUS_E)));
        assert!(verify_dab_word(&p, &w).unwrap());

        assert!(build_dab_word(&p, 1, 0).is_err());
        assert!(build_dab_word(&params(4, 3), 1, 1).is_err());
    }

    #[test]
    fn dab_word_json() {
        let w = build_dab_word(&params(3, 2), 3, 0).unwrap();
        assert_eq!(
            crate::parse::print_word(&w.word),
            r#"{"bracket":[{"leaf":"Dminus_eprime"},{"bracket":[{"leaf":"Dplus_e"},{"leaf":"Dminus_eprime"}]}]}"#
        );
    }

    #[test]
    fn veronese_examples() {
        let (l, r) = veronese_identity(3, 0, 0).unwrap();
        assert_eq!(l, vf("x*dx - y*dy"));
        assert_eq!(l, r);
        let (l, r) = veronese_identity(2, 1, 0).unwrap();
        assert_eq!(l, gen_dab(0, 2));
        assert_eq!(l, r);
        let c = veronese_ad_chain(3, 1, 1).unwrap();
        assert_eq!(c.alpha, rational(4, 1));
        assert_eq!(c.target, gen_dab(2, 1));
        assert!(veronese_ad_chain(3, 1, 4).is_err());
        assert!(veronese_identity(1, 0, 0).is_err());
    }

    #[test]
    fn sl2_from_root() {
        let c = detect_sl2(&vf("x*dy")).unwrap();
        assert_eq!(c.e, vf("x*dy"));
        assert_eq!(c.f, vf("y*dx"));
        assert_eq!(c.h, vf("x*dx - y*dy"));
        assert!(c.all_verified());
    }

    #[test]
    fn sl2_from_dab11() {
        let c = detect_sl2(&gen_dab(1, 1)).unwrap();
        assert_eq!(c.e, vf("x*dy"));
        assert!(c.all_verified());
        for (w, v) in [(&c.words.e, &c.e), (&c.words.h, &c.h), (&c.words.f, &c.f)] {
            assert_eq!(eval_word(w, &c.binding).unwrap(), *v);
        }
    }

    #[test]
    fn sl2_from_dab01() {
        let c = detect_sl2(&gen_dab(0, 1)).unwrap();
        assert_eq!(c.e, vf("dy"));
        assert_eq!(c.f, vf("2*x*y*dx - y^2*dy"));
        assert_eq!(c.h, vf("2*x*dx - 2*y*dy"));
        assert!(c.all_verified());
    }

    #[test]
    fn sl2_refusals() {
        let msg = |r: Result<Sl2Certificate>| match r {
            Err(Error::Precondition(m)) => m,
            other => panic!("{other:?}"),
        };
        assert_eq!(
            msg(detect_sl2(&vf("x*dy + y*dx"))),
            Sl2Refusal::NotHomogeneous.to_string()
        );
        assert_eq!(
            msg(detect_sl2(&vf("y^3*dx"))),
            Sl2Refusal::InTriangular.to_string()
        );
        assert_eq!(
            msg(detect_sl2(&vf("x^2*dx"))),
            Sl2Refusal::DivergenceNotConstant.to_string()
        );
    }

    #[test]
    fn triangular_extension_cap4() {
        let r = verify_triangular_extension(4).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.clauses[2].detail.contains("-1"));
        assert!(r.clauses[3].detail.contains("-1"));
        assert!(verify_triangular_extension(2).is_err());
    }

    #[test]
    fn question2_regimes() {
        assert!(question2_probe(&params(3, 2), 6)
            .unwrap()
            .missing
            .is_empty());
        for d in [2, 3, 5] {
            assert!(question2_probe(&params(d, 1), 6)
                .unwrap()
                .missing
                .is_empty());
        }
        let r = question2_probe(&params(4, 3), 6).unwrap();
        assert!(!r.invariant_support.is_empty());
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta(0, 1), rational(1, 2));
        assert_eq!(beta(1, 2), rational(1, 12));
    }
}
