//! Convex hulls of finite rational point sets.
//!
//! Every answer here carries a certificate: a convex combination or a
//! Carathéodory certificate when a point is inside, a strictly separating
//! functional (or a whole lexicographic order) when it is outside, and an
//! integer relation `Σ q_i a_i = 0` when the origin is in the hull.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    common_denominator, LpOutcome, LpProblem, RatMatrix, RatVector, Rational, Relation,
};
use crate::order::MatrixOrder;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    dim: usize,
    points: Vec<RatVector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPointSet {
    dim: usize,
    points: Vec<RatVector>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;
    fn try_from(raw: RawPointSet) -> Result<Self, Error> {
        PointSet::new(raw.dim, raw.points)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<RatVector>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::EmptyInput("dim"));
        }
        if points.is_empty() {
            return Err(Error::EmptyInput("points"));
        }
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                what: "points",
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(PointSet { dim, points })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self, Error> {
        let dim = points.first().map_or(0, |p| p.len());
        Self::new(
            dim,
            points
                .iter()
                .map(|p| RatVector::from_ints(p.iter().copied()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RatVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn check(&self, what: &'static str, x: &RatVector) -> Result<(), Error> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                what,
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Decides whether `x` lies in the convex hull.
    pub fn point_in_hull(&self, x: &RatVector) -> Result<HullMembership, Error> {
        self.check("x", x)?;
        if let Some(coeffs) = self.convex_combination(x) {
            return Ok(HullMembership::Inside(coeffs));
        }
        Ok(HullMembership::Outside(self.strict_separator(x)))
    }

    /// Feasibility LP `λ ≥ 0, Σλ = 1, Σ λ_i a_i = x`.
    fn convex_combination(&self, x: &RatVector) -> Option<Vec<Rational>> {
        let k = self.points.len();
        let mut lp = LpProblem::feasibility(k);
        for i in 0..k {
            lp.constrain(RatVector::unit(k, i), Relation::Ge, Rational::zero());
        }
        lp.constrain(
            RatVector::new(vec![Rational::one(); k]),
            Relation::Eq,
            Rational::one(),
        );
        for j in 0..self.dim {
            let row = self.points.iter().map(|p| p[j].clone()).collect();
            lp.constrain(row, Relation::Eq, x[j].clone());
        }
        match lp.solve().expect("well-formed membership LP") {
            LpOutcome::Optimal { point, .. } => Some(point.into_entries()),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
        }
    }

    /// For `x` outside the hull: a primitive integer functional `f` with
    /// `f·(a_i − x) ≥ 1` for every point.
    fn strict_separator(&self, x: &RatVector) -> Separator {
        let mut lp = LpProblem::feasibility(self.dim);
        for p in &self.points {
            lp.constrain(p - x, Relation::Ge, Rational::one());
        }
        let f = match lp.solve().expect("well-formed separation LP") {
            LpOutcome::Optimal { point, .. } => primitive_integer_direction(&point),
            other => panic!("no strict separator for a point outside a finite hull: {other:?}"),
        };
        let threshold = self
            .points
            .iter()
            .map(|p| f.dot(p))
            .min()
            .expect("point set is nonempty");
        Separator {
            functional: f,
            threshold,
        }
    }

    /// A Carathéodory certificate for `x`, or `None` when `x` is outside the hull.
    pub fn caratheodory(&self, x: &RatVector) -> Result<Option<CaratheodoryCertificate>, Error> {
        self.check("x", x)?;
        Ok(self
            .convex_combination(x)
            .map(|coeffs| self.reduce_support(coeffs)))
    }

    /// Walks a convex combination down to an affinely independent support:
    /// while the support admits an affine dependence `μ` (`Σμ = 0`,
    /// `Σ μ_i a_i = 0`), move along `−μ` until a coefficient reaches zero.
    fn reduce_support(&self, coeffs: Vec<Rational>) -> CaratheodoryCertificate {
        let mut support: Vec<(usize, Rational)> = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        loop {
            let lifted: Vec<RatVector> = support
                .iter()
                .map(|(i, _)| {
                    let mut e = self.points[*i].entries().to_vec();
                    e.push(Rational::one());
                    RatVector::new(e)
                })
                .collect();
            let relations = RatMatrix::from_columns(self.dim + 1, &lifted)
                .expect("lifted points share a dimension")
                .kernel_basis();
            let Some(mut mu) = relations.into_iter().next() else {
                break;
            };
            // Σμ = 0 with μ ≠ 0, so μ has a positive entry; pick the sign anyway.
            if !mu.iter().any(Rational::is_positive) {
                mu = -&mu;
            }
            let step = support
                .iter()
                .zip(mu.iter())
                .filter(|(_, m)| m.is_positive())
                .map(|((_, c), m)| c / m)
                .min()
                .expect("affine dependence has a positive entry");
            support = support
                .into_iter()
                .zip(mu.iter())
                .map(|((i, c), m)| (i, c - &step * m))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        let (indices, coords) = support.into_iter().unzip();
        CaratheodoryCertificate { indices, coords }
    }

    /// Nonnegative integers `q`, not all zero, with `Σ q_i a_i = 0`, or
    /// `None` when the origin is not in the hull.
    ///
    /// Relations among nonzero points are preferred; a zero point on its own
    /// only yields a witness flagged with `zero_generator`.
    pub fn natural_combination_witness(&self) -> Option<NaturalWitness> {
        let nonzero: Vec<usize> = (0..self.points.len())
            .filter(|&i| !self.points[i].is_zero())
            .collect();
        if !nonzero.is_empty() {
            let sub = self.subset(&nonzero);
            if let Some(cert) = sub
                .caratheodory(&RatVector::zeros(self.dim))
                .expect("origin has the right dimension")
            {
                let q = clear_denominators(&cert.coords);
                let mut coeffs = vec![BigUint::zero(); self.points.len()];
                for (local, value) in cert.indices.iter().zip(q) {
                    coeffs[nonzero[*local]] = value;
                }
                return Some(NaturalWitness {
                    coeffs,
                    zero_generator: false,
                });
            }
        }
        let zero = self.points.iter().position(RatVector::is_zero)?;
        let mut coeffs = vec![BigUint::zero(); self.points.len()];
        coeffs[zero] = BigUint::from(1u8);
        Some(NaturalWitness {
            coeffs,
            zero_generator: true,
        })
    }

    /// A total order under which every point is strictly greater than `a`.
    /// Fails with [`Error::InHull`] when `a` is in the hull.
    pub fn separate_from_hull(&self, a: &RatVector) -> Result<SeparationResult, Error> {
        match self.point_in_hull(a)? {
            HullMembership::Inside(coeffs) => {
                Err(Error::InHull(Box::new(self.reduce_support(coeffs))))
            }
            HullMembership::Outside(sep) => {
                let rows = complete_to_basis(self.dim, vec![sep.functional]);
                Ok(SeparationResult {
                    order: MatrixOrder::new(self.dim, rows)
                        .expect("rows have the ambient dimension"),
                    vertex: a.clone(),
                })
            }
        }
    }

    /// Either a total order making every nonzero point positive, or a natural
    /// witness that the origin is in the hull of the nonzero points.
    ///
    /// Each round finds a functional `f ≥ 0` on the points still undecided,
    /// maximizing their total value inside the box `−1 ≤ f_j ≤ 1`. A positive
    /// optimum appends `f` as the next row and leaves the points on which `f`
    /// vanishes for the next round; a zero optimum means every admissible
    /// functional vanishes on them, so the origin is in their hull.
    pub fn positive_lex_order(&self) -> PositiveOrder {
        let mut remaining: Vec<usize> = (0..self.points.len())
            .filter(|&i| !self.points[i].is_zero())
            .collect();
        let mut rows = Vec::new();
        while !remaining.is_empty() {
            let total = remaining
                .iter()
                .fold(RatVector::zeros(self.dim), |acc, &i| &acc + &self.points[i]);
            let mut lp = LpProblem::new(total);
            for &i in &remaining {
                lp.constrain(self.points[i].clone(), Relation::Ge, Rational::zero());
            }
            for j in 0..self.dim {
                lp.constrain(RatVector::unit(self.dim, j), Relation::Le, Rational::one());
                lp.constrain(RatVector::unit(self.dim, j), Relation::Ge, -Rational::one());
            }
            let (f, value) = match lp.solve().expect("well-formed positivity LP") {
                LpOutcome::Optimal { point, value } => (point, value),
                other => unreachable!("boxed LP with feasible origin gave {other:?}"),
            };
            if value.is_zero() {
                let witness = self
                    .subset(&remaining)
                    .natural_combination_witness()
                    .expect("zero optimum forces the origin into the hull");
                let mut coeffs = vec![BigUint::zero(); self.points.len()];
                for (local, q) in witness.coeffs.into_iter().enumerate() {
                    coeffs[remaining[local]] = q;
                }
                return PositiveOrder::Witness(NaturalWitness {
                    coeffs,
                    zero_generator: false,
                });
            }
            remaining.retain(|&i| f.dot(&self.points[i]).is_zero());
            rows.push(f);
        }
        let rows = complete_to_basis(self.dim, rows);
        PositiveOrder::Order(
            MatrixOrder::new(self.dim, rows)
                .expect("rows have the ambient dimension")
                .canonicalize(),
        )
    }
}

/// Scales a nonzero rational vector by a positive factor to the primitive
/// integer vector on the same ray.
fn primitive_integer_direction(v: &RatVector) -> RatVector {
    let denom = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.clone();
    }
    ints.into_iter().map(|x| Rational::from(x / &g)).collect()
}

/// Turns positive rationals into the proportional primitive natural numbers.
fn clear_denominators(values: &[Rational]) -> Vec<BigUint> {
    let v = primitive_integer_direction(&RatVector::new(values.to_vec()));
    v.iter()
        .map(|x| {
            x.to_integer()
                .and_then(|n| n.to_biguint())
                .expect("nonnegative integer after clearing denominators")
        })
        .collect()
}

/// Appends standard unit vectors, in order, until the rows span `Q^dim`.
pub(crate) fn complete_to_basis(dim: usize, mut rows: Vec<RatVector>) -> Vec<RatVector> {
    let mut rank = RatMatrix::from_rows(dim, &rows)
        .expect("rows have dimension dim")
        .rank();
    for j in 0..dim {
        if rank == dim {
            break;
        }
        rows.push(RatVector::unit(dim, j));
        let grown = RatMatrix::from_rows(dim, &rows)
            .expect("rows have dimension dim")
            .rank();
        if grown > rank {
            rank = grown;
        } else {
            rows.pop();
        }
    }
    rows
}

/// A functional with `f·x < threshold ≤ f·a_i` for every point `a_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Separator {
    pub functional: RatVector,
    pub threshold: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HullMembership {
    /// Convex coefficients aligned with the point set.
    Inside(Vec<Rational>),
    Outside(Separator),
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside(_))
    }

    /// Re-checks the evidence exactly.
    pub fn verify(&self, set: &PointSet, x: &RatVector) -> bool {
        match self {
            HullMembership::Inside(coeffs) => {
                coeffs.len() == set.len()
                    && coeffs.iter().all(|c| !c.is_negative())
                    && coeffs.iter().sum::<Rational>() == Rational::one()
                    && combine(set, coeffs.iter().enumerate()) == *x
            }
            HullMembership::Outside(sep) => {
                sep.functional.dot(x) < sep.threshold
                    && set
                        .points()
                        .iter()
                        .all(|p| sep.functional.dot(p) >= sep.threshold)
            }
        }
    }
}

fn combine<'a>(set: &PointSet, terms: impl Iterator<Item = (usize, &'a Rational)>) -> RatVector {
    terms.fold(RatVector::zeros(set.dim()), |acc, (i, c)| {
        acc.add_scaled(c, &set.points()[i])
    })
}

/// Positive barycentric coordinates of a point over an affinely independent
/// subset of a point set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CaratheodoryCertificate {
    pub indices: Vec<usize>,
    pub coords: Vec<Rational>,
}

impl CaratheodoryCertificate {
    pub fn verify(&self, set: &PointSet, x: &RatVector) -> bool {
        let distinct = self.indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = self.indices.iter().all(|&i| i < set.len());
        if !(distinct && in_range)
            || self.indices.len() != self.coords.len()
            || self.indices.is_empty()
        {
            return false;
        }
        let selected: Vec<RatVector> = self
            .indices
            .iter()
            .map(|&i| set.points()[i].clone())
            .collect();
        self.indices.len() <= set.dim() + 1
            && self.coords.iter().all(Rational::is_positive)
            && self.coords.iter().sum::<Rational>() == Rational::one()
            && crate::arith::affinely_independent(&selected)
            && combine(set, self.indices.iter().copied().zip(&self.coords)) == *x
    }
}

/// Natural numbers `q_i`, aligned with a point set, with `Σ q_i a_i = 0`.
///
/// `zero_generator` marks the degenerate witness that merely points at a
/// zero point of the set; otherwise some `q_i > 0` sits on a nonzero point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NaturalWitness {
    pub coeffs: Vec<BigUint>,
    pub zero_generator: bool,
}

impl NaturalWitness {
    pub fn verify(&self, set: &PointSet) -> bool {
        if self.coeffs.len() != set.len() || self.coeffs.iter().all(Zero::is_zero) {
            return false;
        }
        let sum = set
            .points()
            .iter()
            .zip(&self.coeffs)
            .fold(RatVector::zeros(set.dim()), |acc, (p, q)| {
                acc.add_scaled(&Rational::from(BigInt::from(q.clone())), p)
            });
        let on_nonzero = set
            .points()
            .iter()
            .zip(&self.coeffs)
            .any(|(p, q)| !q.is_zero() && !p.is_zero());
        sum.is_zero() && (self.zero_generator || on_nonzero)
    }
}

/// A total order whose half-space with vertex `vertex` contains the point set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeparationResult {
    pub order: MatrixOrder,
    pub vertex: RatVector,
}

impl SeparationResult {
    pub fn verify(&self, set: &PointSet) -> bool {
        self.order.dim() == set.dim()
            && self.order.is_total_on_space()
            && set
                .points()
                .iter()
                .all(|p| self.order.sign(&(p - &self.vertex)) == Ordering::Greater)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PositiveOrder {
    Order(MatrixOrder),
    Witness(NaturalWitness),
}

impl PositiveOrder {
    pub fn verify(&self, set: &PointSet) -> bool {
        match self {
            PositiveOrder::Order(m) => order_makes_positive(m, set),
            PositiveOrder::Witness(w) => !w.zero_generator && w.verify(set),
        }
    }
}

/// True when `m` is total and every nonzero point is strictly positive.
pub fn order_makes_positive(m: &MatrixOrder, set: &PointSet) -> bool {
    m.dim() == set.dim()
        && m.is_total_on_space()
        && set
            .points()
            .iter()
            .filter(|p| !p.is_zero())
            .all(|p| m.sign(p) == Ordering::Greater)
}
