//! Finitely generated additive semigroups of `Q^n` under a matrix order.
//!
//! The semigroup consists of the nonempty sums of generators; the origin is
//! an element only when `include_identity` is set. For a total order, the
//! semigroup is well-ordered exactly when every nonzero generator is
//! positive, which makes both the decision and the ascending enumeration
//! below effective.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::arith::{RatVector, Rational};
use crate::convex::{PointSet, PositiveOrder};
use crate::order::MatrixOrder;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSemigroup")]
pub struct FGSemigroup {
    dim: usize,
    generators: Vec<RatVector>,
    include_identity: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSemigroup {
    dim: usize,
    generators: Vec<RatVector>,
    #[serde(default)]
    include_identity: bool,
}

impl TryFrom<RawSemigroup> for FGSemigroup {
    type Error = Error;
    fn try_from(raw: RawSemigroup) -> Result<Self, Error> {
        FGSemigroup::new(raw.dim, raw.generators, raw.include_identity)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WellOrderVerdict {
    WellOrdered,
    /// A nonzero generator that is not positive; its multiples form an
    /// infinite strictly decreasing chain.
    NotWellOrdered(RatVector),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    /// Generator multiplicities recombining to the queried point.
    Member(Vec<u64>),
    /// No decomposition with at most the given number of generators. This is
    /// not a proof of non-membership.
    NotMemberWithinBound,
}

impl FGSemigroup {
    pub fn new(
        dim: usize,
        generators: Vec<RatVector>,
        include_identity: bool,
    ) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::EmptyInput("dim"));
        }
        if generators.is_empty() {
            return Err(Error::EmptyInput("generators"));
        }
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                what: "generators",
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(FGSemigroup {
            dim,
            generators,
            include_identity,
        })
    }

    pub fn from_ints(generators: &[&[i64]], include_identity: bool) -> Result<Self, Error> {
        let dim = generators.first().map_or(0, |g| g.len());
        Self::new(
            dim,
            generators
                .iter()
                .map(|g| RatVector::from_ints(g.iter().copied()))
                .collect(),
            include_identity,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatVector] {
        &self.generators
    }

    pub fn include_identity(&self) -> bool {
        self.include_identity
    }

    fn nonzero_generators(&self) -> impl Iterator<Item = &RatVector> {
        self.generators.iter().filter(|g| !g.is_zero())
    }

    fn check_order(&self, order: &MatrixOrder) -> Result<(), Error> {
        if order.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                what: "order",
                expected: self.dim,
                found: order.dim(),
            });
        }
        let rank = order.rank();
        if rank != self.dim {
            return Err(Error::NotTotal {
                dim: self.dim,
                rank,
            });
        }
        Ok(())
    }

    /// Decides whether the semigroup is well-ordered under a total order.
    pub fn is_well_ordered(&self, order: &MatrixOrder) -> Result<WellOrderVerdict, Error> {
        self.check_order(order)?;
        Ok(self
            .nonzero_generators()
            .find(|g| order.sign(g) != Ordering::Greater)
            .map_or(WellOrderVerdict::WellOrdered, |g| {
                WellOrderVerdict::NotWellOrdered(g.clone())
            }))
    }

    fn require_well_ordered(&self, order: &MatrixOrder) -> Result<(), Error> {
        match self.is_well_ordered(order)? {
            WellOrderVerdict::WellOrdered => Ok(()),
            WellOrderVerdict::NotWellOrdered(g) => Err(Error::NotWellOrdered(g)),
        }
    }

    /// A total order well-ordering the semigroup, or a witness that the
    /// origin is a nontrivial sum of generators (so no such order exists).
    pub fn find_well_order(&self) -> PositiveOrder {
        PointSet::new(self.dim, self.generators.clone())
            .expect("semigroup generators form a valid point set")
            .positive_lex_order()
    }

    /// The elements in increasing order, as an unbounded iterator.
    pub fn ascending(&self, order: &MatrixOrder) -> Result<AscendingElements, Error> {
        self.require_well_ordered(order)?;
        Ok(AscendingElements::new(self, order))
    }

    /// The `count` smallest elements, strictly increasing.
    pub fn enumerate_ascending(
        &self,
        order: &MatrixOrder,
        count: usize,
    ) -> Result<Vec<RatVector>, Error> {
        Ok(self.ascending(order)?.take(count).collect())
    }

    /// The least element: the origin when it is included, otherwise the
    /// least nonzero generator.
    pub fn minimum_element(&self, order: &MatrixOrder) -> Result<RatVector, Error> {
        self.require_well_ordered(order)?;
        if self.include_identity {
            return Ok(RatVector::zeros(self.dim));
        }
        self.nonzero_generators()
            .min_by(|a, b| order.sign(&(*a - *b)))
            .cloned()
            .ok_or(Error::EmptySemigroup)
    }

    /// Searches for a decomposition of `x` using at most `bound` generators.
    pub fn bounded_membership(&self, x: &RatVector, bound: usize) -> Result<Membership, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                what: "x",
                expected: self.dim,
                found: x.dim(),
            });
        }
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        let m = self.generators.len();
        if self.include_identity && x.is_zero() {
            return Ok(Membership::Member(vec![0; m]));
        }
        // Sums of exactly k generators, one decomposition per distinct value.
        let mut level: HashMap<RatVector, Vec<u64>> = HashMap::new();
        level.insert(RatVector::zeros(self.dim), vec![0; m]);
        for _ in 0..bound {
            let mut next: HashMap<RatVector, Vec<u64>> = HashMap::with_capacity(level.len() * m);
            for (value, mult) in &level {
                for (i, g) in self.generators.iter().enumerate() {
                    let sum = value + g;
                    next.entry(sum).or_insert_with(|| {
                        let mut mult = mult.clone();
                        mult[i] += 1;
                        mult
                    });
                }
            }
            if let Some(mult) = next.get(x) {
                return Ok(Membership::Member(mult.clone()));
            }
            level = next;
        }
        Ok(Membership::NotMemberWithinBound)
    }

    /// `Σ mult_i g_i`.
    pub fn combine(&self, multiplicities: &[u64]) -> RatVector {
        self.generators
            .iter()
            .zip(multiplicities)
            .fold(RatVector::zeros(self.dim), |acc, (g, &k)| {
                acc.add_scaled(&Rational::from(k), g)
            })
    }
}

/// Best-first enumeration of a well-ordered semigroup.
///
/// The frontier holds every generated element not yet emitted. The least
/// unemitted element `s` is `s' + g` for some emitted `s'` (or `s = g`), so it
/// is already in the frontier when it becomes the minimum.
#[derive(Debug)]
pub struct AscendingElements {
    order: MatrixOrder,
    generators: Vec<RatVector>,
    frontier: BinaryHeap<Reverse<(Vec<Rational>, RatVector)>>,
    seen: HashSet<RatVector>,
    identity_pending: bool,
}

impl AscendingElements {
    fn new(semigroup: &FGSemigroup, order: &MatrixOrder) -> Self {
        let generators: Vec<RatVector> = semigroup.nonzero_generators().cloned().collect();
        let mut it = AscendingElements {
            order: order.clone(),
            generators: generators.clone(),
            frontier: BinaryHeap::new(),
            seen: HashSet::new(),
            identity_pending: semigroup.include_identity,
        };
        for g in generators {
            it.push(g);
        }
        it
    }

    fn push(&mut self, v: RatVector) {
        if self.seen.insert(v.clone()) {
            let key = self.order.key(&v);
            self.frontier.push(Reverse((key, v)));
        }
    }

    /// Number of elements currently waiting in the frontier.
    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }
}

impl Iterator for AscendingElements {
    type Item = RatVector;

    fn next(&mut self) -> Option<RatVector> {
        if self.identity_pending {
            self.identity_pending = false;
            return Some(RatVector::zeros(self.order.dim()));
        }
        let Reverse((_, least)) = self.frontier.pop()?;
        for i in 0..self.generators.len() {
            let sum = &least + &self.generators[i];
            self.push(sum);
        }
        Some(least)
    }
}
