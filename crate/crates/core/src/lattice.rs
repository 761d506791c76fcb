//! Lattice monoids attached to the cyclic quotient surfaces `X_{d,e}`.
//!
//! Points are bidegrees `(a, b)` of homogeneous vector fields on the plane.
//! Everything lives in the lattice `L = {(a, b) : ae + b = 0 mod d}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeParams {
    d: i64,
    e: i64,
    e_prime: i64,
}

impl LatticeParams {
    /// Validates `d > 1`, `1 <= e < d`, `gcd(d, e) = 1` and derives `e'`, the
    /// inverse of `e` modulo `d` taken in `[1, d)`.
    pub fn new(d: i64, e: i64) -> Result<LatticeParams> {
        if d <= 1 {
            return Err(invalid(format!("d must exceed 1, got {d}")));
        }
        if e < 1 || e >= d {
            return Err(invalid(format!(
                "e must satisfy 1 <= e < d, got e={e}, d={d}"
            )));
        }
        let g = e.extended_gcd(&d);
        if g.gcd != 1 {
            return Err(invalid(format!("gcd({d},{e}) = {} is not 1", g.gcd)));
        }
        let e_prime = g.x.mod_floor(&d);
        Ok(LatticeParams { d, e, e_prime })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn e_prime(&self) -> i64 {
        self.e_prime
    }

    /// The regime `e e' = d + 1`, in which the two lowest roots generate.
    pub fn is_minimal_regime(&self) -> bool {
        self.e * self.e_prime == self.d + 1
    }

    /// `u = (-1, e)`, the bidegree of `y^e d/dx`.
    pub fn u(&self) -> LatticePoint {
        LatticePoint::new(-1, self.e)
    }

    /// `v = (e', -1)`, the bidegree of `x^{e'} d/dy`.
    pub fn v(&self) -> LatticePoint {
        LatticePoint::new(self.e_prime, -1)
    }

    /// `(e'-1, e-1) = u + v`.
    pub fn base_point(&self) -> LatticePoint {
        self.u() + self.v()
    }

    pub fn in_lattice(&self, p: LatticePoint) -> bool {
        (p.a * self.e + p.b).mod_floor(&self.d) == 0
    }

    /// `Lambda`: lattice points with `a, b >= 0` and `a + b > 0`.
    pub fn in_lambda(&self, p: LatticePoint) -> bool {
        self.in_lattice(p) && p.a >= 0 && p.b >= 0 && p.a + p.b > 0
    }

    /// `Lambda-hat`: lattice points with `a, b >= -1`, other than `(-1, -1)`.
    pub fn in_lambda_hat(&self, p: LatticePoint) -> bool {
        self.in_lattice(p) && p.a >= -1 && p.b >= -1 && !(p.a == -1 && p.b == -1)
    }

    /// `Lambda-hat` without the three points `(-1, e)`, `(e', -1)`, `(0, 0)`.
    pub fn in_lambda_small(&self, p: LatticePoint) -> bool {
        self.in_lambda_hat(p) && p != self.u() && p != self.v() && p != LatticePoint::new(0, 0)
    }

    /// `f(a, b) = (ae + b) + (a + be')`.
    pub fn f_value(&self, p: LatticePoint) -> Result<i64> {
        if !self.in_lambda(p) {
            return Err(precondition(format!("{p} is not in Lambda")));
        }
        Ok((self.e + 1) * p.a + (self.e_prime + 1) * p.b)
    }

    fn require_regime(&self) -> Result<()> {
        if !self.is_minimal_regime() {
            return Err(precondition(format!(
                "requires e*e' = d+1, but {}*{} != {}",
                self.e,
                self.e_prime,
                self.d + 1
            )));
        }
        Ok(())
    }

    /// `(n, m) = ((a + be')/d, (ae + b)/d)`, so that `p = n u + m v`.
    pub fn nm_solution(&self, p: LatticePoint) -> Result<(i64, i64)> {
        self.require_regime()?;
        if !self.in_lambda(p) {
            return Err(precondition(format!("{p} is not in Lambda")));
        }
        let n = (p.a + p.b * self.e_prime) / self.d;
        let m = (p.a * self.e + p.b) / self.d;
        Ok((n, m))
    }

    /// Greedy reduction of `p` to the base point, returned as a path upward
    /// from the base point. When both reductions apply the `v` direction goes
    /// first.
    pub fn decompose_path(&self, p: LatticePoint) -> Result<LatticePath> {
        self.require_regime()?;
        if self.e <= 1 {
            return Err(precondition("path decomposition needs e > 1"));
        }
        if !self.in_lambda(p) {
            return Err(precondition(format!("{p} is not in Lambda")));
        }
        let base = self.base_point();
        let mut cur = p;
        let mut down = Vec::new();
        while cur != base {
            let step = if cur.a >= self.e_prime {
                PathStep {
                    dir: Direction::V,
                    mult: cur.a / self.e_prime,
                }
            } else if cur.b >= self.e {
                PathStep {
                    dir: Direction::U,
                    mult: cur.b / self.e,
                }
            } else {
                return Err(precondition(format!(
                    "greedy reduction stuck at {cur} above the base point"
                )));
            };
            cur = cur - self.direction(step.dir) * step.mult;
            down.push(step);
        }
        down.reverse();
        Ok(LatticePath {
            start: base,
            steps: down,
            end: p,
        })
    }

    pub fn direction(&self, dir: Direction) -> LatticePoint {
        match dir {
            Direction::U => self.u(),
            Direction::V => self.v(),
        }
    }

    /// Checks `(Lambda-hat + lambda) & Lambda-hat ⊂ lambda` for all addends in
    /// `[-1, box_bound]^2`.
    pub fn monoid_ideal_check(&self, box_bound: i64) -> Result<IdealReport> {
        if box_bound < self.d {
            return Err(invalid(format!(
                "box bound {box_bound} is below d = {}",
                self.d
            )));
        }
        let pts: Vec<LatticePoint> = (-1..=box_bound)
            .flat_map(|a| (-1..=box_bound).map(move |b| LatticePoint::new(a, b)))
            .collect();
        let hat: Vec<_> = pts
            .iter()
            .copied()
            .filter(|&p| self.in_lambda_hat(p))
            .collect();
        let small: Vec<_> = hat
            .iter()
            .copied()
            .filter(|&p| self.in_lambda_small(p))
            .collect();
        let mut violations = Vec::new();
        let mut checked = 0;
        for &h in &hat {
            for &s in &small {
                checked += 1;
                let sum = h + s;
                if self.in_lambda_hat(sum) && !self.in_lambda_small(sum) {
                    violations.push([h, s, sum]);
                }
            }
        }
        Ok(IdealReport {
            holds: violations.is_empty(),
            checked,
            violations,
        })
    }

    /// Bidegrees of the roots `y^{e+kd} d/dx` and `x^{e'+ld} d/dy` for
    /// `k, l < count`.
    pub fn demazure_roots(&self, count: usize) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
        if count == 0 {
            return Err(invalid("count must be at least 1"));
        }
        let plus = (0..count as i64)
            .map(|k| LatticePoint::new(-1, self.e + k * self.d))
            .collect();
        let minus = (0..count as i64)
            .map(|l| LatticePoint::new(self.e_prime + l * self.d, -1))
            .collect();
        Ok((plus, minus))
    }
}

impl fmt::Display for LatticeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, e={}, e'={})", self.d, self.e, self.e_prime)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const fn new(a: i64, b: i64) -> LatticePoint {
        LatticePoint { a, b }
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from([a, b]: [i64; 2]) -> Self {
        LatticePoint { a, b }
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.a, p.b]
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = LatticePoint;
    fn mul(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.a * k, self.b * k)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub dir: Direction,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePath {
    pub start: LatticePoint,
    pub steps: Vec<PathStep>,
    pub end: LatticePoint,
}

impl LatticePath {
    /// Every point visited, one per unit step, starting with `start`.
    pub fn points(&self, params: &LatticeParams) -> Vec<LatticePoint> {
        let mut cur = self.start;
        let mut out = vec![cur];
        for s in &self.steps {
            for _ in 0..s.mult {
                cur = cur + params.direction(s.dir);
                out.push(cur);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("paths always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub holds: bool,
    pub checked: usize,
    /// Triples `[hat, small, sum]` with `sum` in Lambda-hat but not in lambda.
    pub violations: Vec<[LatticePoint; 3]>,
}
