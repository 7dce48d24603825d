//! Lexicographic orders on `Q^n` given by a stack of linear functionals.
//!
//! Two vectors are compared by the sign of the first row that does not
//! vanish on their difference. Rows that are linearly dependent on earlier
//! ones never decide a comparison, so a rank-deficient stack defines a total
//! preorder rather than an order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::arith::{RatMatrix, RatVector, Rational};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawOrder")]
pub struct MatrixOrder {
    dim: usize,
    rows: Vec<RatVector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrder {
    dim: usize,
    rows: Vec<RatVector>,
}

impl TryFrom<RawOrder> for MatrixOrder {
    type Error = Error;
    fn try_from(raw: RawOrder) -> Result<Self, Error> {
        MatrixOrder::new(raw.dim, raw.rows)
    }
}

impl MatrixOrder {
    pub fn new(dim: usize, rows: Vec<RatVector>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::EmptyInput("dim"));
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput("rows"));
        }
        if let Some(bad) = rows.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch {
                what: "rows",
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(MatrixOrder { dim, rows })
    }

    /// The standard lexicographic order `e_1 ≻ e_2 ≻ … ≻ 0`.
    pub fn identity(dim: usize) -> Self {
        MatrixOrder {
            dim,
            rows: (0..dim).map(|i| RatVector::unit(dim, i)).collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        let dim = rows.first().map_or(0, |r| r.len());
        Self::new(
            dim,
            rows.iter()
                .map(|r| RatVector::from_ints(r.iter().copied()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.dim, &self.rows).expect("rows share the order's dimension")
    }

    fn check(&self, what: &'static str, v: &RatVector) -> Result<(), Error> {
        if v.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                what,
                expected: self.dim,
                found: v.dim(),
            })
        }
    }

    /// Sign of `v` under the order: the sign of the first row not vanishing on it.
    pub fn sign(&self, v: &RatVector) -> Ordering {
        debug_assert_eq!(v.dim(), self.dim);
        for row in &self.rows {
            let value = row.dot(v);
            if !value.is_zero() {
                return if value.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, u: &RatVector, v: &RatVector) -> Result<Ordering, Error> {
        self.check("u", u)?;
        self.check("v", v)?;
        Ok(self.sign(&(u - v)))
    }

    /// The values of all rows on `v`. Comparing these tuples lexicographically
    /// is the same as comparing the vectors under the order.
    pub fn key(&self, v: &RatVector) -> Vec<Rational> {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    pub fn is_total_on_space(&self) -> bool {
        self.rank() == self.dim
    }

    /// Normal form under the order-preserving row operations: positive
    /// scaling, adding multiples of earlier rows to later ones, and dropping
    /// rows that become zero.
    ///
    /// Every kept row has leading entry `±1` and is zero in the leading
    /// columns of all earlier kept rows.
    pub fn canonicalize(&self) -> MatrixOrder {
        let mut kept: Vec<(usize, RatVector)> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            for (lead, k) in &kept {
                if !r[*lead].is_zero() {
                    // k[lead] is ±1.
                    let factor = -(&r[*lead] * &k[*lead]);
                    r = r.add_scaled(&factor, k);
                }
            }
            let Some(lead) = r.leading_index() else {
                continue;
            };
            let scale = r[lead].abs().recip().expect("leading entry is nonzero");
            kept.push((lead, r.scale(&scale)));
        }
        if kept.is_empty() {
            // Every row vanished: the trivial preorder. Keep a single zero row.
            return MatrixOrder {
                dim: self.dim,
                rows: vec![RatVector::zeros(self.dim)],
            };
        }
        MatrixOrder {
            dim: self.dim,
            rows: kept.into_iter().map(|(_, r)| r).collect(),
        }
    }

    pub fn orders_equal(&self, other: &MatrixOrder) -> Result<bool, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                what: "right",
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self.canonicalize() == other.canonicalize())
    }

    /// The flag `L_0 ⊃ L_1 ⊃ …` of common kernels of the leading canonical rows.
    pub fn flag(&self) -> FlagDescription {
        let canonical = self.canonicalize();
        let live: Vec<RatVector> = canonical
            .rows
            .iter()
            .filter(|r| !r.is_zero())
            .cloned()
            .collect();
        let mut subspaces = vec![Subspace {
            dim: self.dim,
            basis: (0..self.dim)
                .map(|i| RatVector::unit(self.dim, i))
                .collect(),
        }];
        for i in 1..=live.len() {
            let basis = RatMatrix::from_rows(self.dim, &live[..i])
                .expect("rows share the order's dimension")
                .kernel_basis();
            subspaces.push(Subspace {
                dim: basis.len(),
                basis,
            });
        }
        FlagDescription {
            subspaces,
            orientations: live,
        }
    }

    /// Compares two elements of the group of formal differences.
    pub fn group_extend_compare(
        &self,
        a1: &FormalDifference,
        a2: &FormalDifference,
    ) -> Result<Ordering, Error> {
        a1.check(self.dim, "a1")?;
        a2.check(self.dim, "a2")?;
        Ok(self.sign(&(&(&a1.plus + &a2.minus) - &(&a2.plus + &a1.minus))))
    }
}

/// One subspace of a flag together with an exact basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Subspace {
    pub dim: usize,
    pub basis: Vec<RatVector>,
}

/// Flag of subspaces attached to an order. `orientations[i]` is the
/// functional whose positive side is the chosen half of `subspaces[i]`, with
/// boundary `subspaces[i + 1]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FlagDescription {
    pub subspaces: Vec<Subspace>,
    pub orientations: Vec<RatVector>,
}

impl FlagDescription {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.dim).collect()
    }
}

/// The formal difference `plus − minus`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalDifference {
    pub plus: RatVector,
    pub minus: RatVector,
}

impl FormalDifference {
    pub fn new(plus: RatVector, minus: RatVector) -> Result<Self, Error> {
        if plus.dim() != minus.dim() {
            return Err(Error::DimensionMismatch {
                what: "minus",
                expected: plus.dim(),
                found: minus.dim(),
            });
        }
        Ok(FormalDifference { plus, minus })
    }

    fn check(&self, dim: usize, what: &'static str) -> Result<(), Error> {
        for part in [&self.plus, &self.minus] {
            if part.dim() != dim {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: dim,
                    found: part.dim(),
                });
            }
        }
        Ok(())
    }

    pub fn value(&self) -> RatVector {
        &self.plus - &self.minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    fn v(xs: &[i64]) -> RatVector {
        RatVector::from_ints(xs.iter().copied())
    }

    fn order(rows: &[&[i64]]) -> MatrixOrder {
        MatrixOrder::from_int_rows(rows).unwrap()
    }

    #[test]
    fn compare_examples() {
        let id = MatrixOrder::identity(2);
        assert_eq!(id.compare(&v(&[1, 0]), &v(&[0, 5])).unwrap(), Greater);
        assert_eq!(id.compare(&v(&[0, 3]), &v(&[0, 3])).unwrap(), Equal);
        let swapped = order(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.compare(&v(&[1, 0]), &v(&[0, 1])).unwrap(), Less);
    }

    #[test]
    fn compare_rejects_bad_dimension() {
        let id = MatrixOrder::identity(2);
        assert!(matches!(
            id.compare(&v(&[1]), &v(&[0, 5])),
            Err(Error::DimensionMismatch { what: "u", .. })
        ));
    }

    #[test]
    fn construction_errors() {
        assert!(MatrixOrder::new(2, vec![]).is_err());
        assert!(MatrixOrder::new(0, vec![v(&[])]).is_err());
        assert!(MatrixOrder::new(2, vec![v(&[1, 0]), v(&[1])]).is_err());
    }

    #[test]
    fn totality_examples() {
        assert!(MatrixOrder::identity(2).is_total_on_space());
        assert!(!order(&[&[1, 1]]).is_total_on_space());
        assert!(!order(&[&[1, 0], &[2, 0]]).is_total_on_space());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            order(&[&[2, 4], &[1, 3]]).canonicalize(),
            order(&[&[1, 2], &[0, 1]])
        );
        assert_eq!(
            order(&[&[1, 0], &[3, 5]]).canonicalize(),
            order(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(
            order(&[&[-2, 0], &[0, 3]]).canonicalize(),
            order(&[&[-1, 0], &[0, 1]])
        );
        // Dependent rows are dropped.
        assert_eq!(
            order(&[&[1, 1], &[2, 2], &[0, 3]]).canonicalize(),
            order(&[&[1, 1], &[0, 1]])
        );
        // Non-integer canonical entries.
        assert_eq!(
            order(&[&[3, 1]]).canonicalize().rows()[0],
            RatVector::new(vec![Rational::one(), Rational::new(1, 3).unwrap()])
        );
    }

    #[test]
    fn zero_rows_canonicalize_to_trivial_preorder() {
        let c = order(&[&[0, 0], &[0, 0]]).canonicalize();
        assert_eq!(c.rows().len(), 1);
        assert!(c.rows()[0].is_zero());
        assert_eq!(c.compare(&v(&[1, 2]), &v(&[3, 4])).unwrap(), Equal);
    }

    #[test]
    fn equality_examples() {
        let id = MatrixOrder::identity(2);
        assert!(id.orders_equal(&order(&[&[2, 0], &[5, 3]])).unwrap());
        let skew = order(&[&[1, 1], &[0, 1]]);
        assert!(!id.orders_equal(&skew).unwrap());
        // The disagreeing pair from the example: d = (1, -1).
        let d = v(&[1, -1]);
        let z = v(&[0, 0]);
        assert_ne!(id.compare(&d, &z).unwrap(), skew.compare(&d, &z).unwrap());
        assert!(order(&[&[0, 1]]).orders_equal(&order(&[&[0, 1]])).unwrap());
        assert!(id.orders_equal(&MatrixOrder::identity(3)).is_err());
    }

    #[test]
    fn upper_triangular_left_action_is_not_order_preserving() {
        // Rows (1,10),(0,1) are an upper triangular image of the identity
        // rows but define a different order.
        let id = MatrixOrder::identity(2);
        let m = order(&[&[1, 10], &[0, 1]]);
        assert!(!id.orders_equal(&m).unwrap());
        let d = v(&[1, -1]);
        assert_eq!(id.sign(&d), Greater);
        assert_eq!(m.sign(&d), Less);
    }

    #[test]
    fn flag_examples() {
        let f = MatrixOrder::identity(2).flag();
        assert_eq!(f.dims(), vec![2, 1, 0]);
        assert_eq!(f.subspaces[1].basis, vec![v(&[0, 1])]);

        let f = order(&[&[0, 1], &[1, 0]]).flag();
        assert_eq!(f.dims(), vec![2, 1, 0]);
        assert_eq!(f.subspaces[1].basis, vec![v(&[1, 0])]);

        let f = order(&[&[1, 1]]).flag();
        assert_eq!(f.dims(), vec![2, 1]);
        let b = &f.subspaces[1].basis[0];
        assert!(v(&[1, 1]).dot(b).is_zero() && !b.is_zero());
    }

    #[test]
    fn group_compare_examples() {
        let m = order(&[&[1]]);
        let a1 = FormalDifference::new(v(&[3]), v(&[1])).unwrap();
        let a2 = FormalDifference::new(v(&[5]), v(&[4])).unwrap();
        assert_eq!(m.group_extend_compare(&a1, &a2).unwrap(), Greater);

        let x = FormalDifference::new(v(&[2, -7]), v(&[4, 1])).unwrap();
        let id = MatrixOrder::identity(2);
        assert_eq!(id.group_extend_compare(&x, &x).unwrap(), Equal);

        let a1 = FormalDifference::new(v(&[0, 0]), v(&[1, 0])).unwrap();
        let a2 = FormalDifference::new(v(&[0, 0]), v(&[0, 1])).unwrap();
        assert_eq!(id.group_extend_compare(&a1, &a2).unwrap(), Less);
        // Direct comparison of the differences agrees.
        assert_eq!(id.compare(&a1.value(), &a2.value()).unwrap(), Less);
    }

    #[test]
    fn serde_shape() {
        let m: MatrixOrder =
            serde_json::from_str(r#"{"dim":2,"rows":[["2/4",1],["0","-3"]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"dim":2,"rows":[["1/2","1"],["0","-3"]]}"#
        );
        assert!(serde_json::from_str::<MatrixOrder>(r#"{"dim":3,"rows":[["1","0"]]}"#).is_err());
        assert!(serde_json::from_str::<MatrixOrder>(r#"{"dim":2,"rows":[]}"#).is_err());
    }
}
