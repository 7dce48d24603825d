//! Random instance generators and brute-force oracles shared by the
//! integration suites. Nothing here calls the LP solver or the hull code.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashSet;

use lexorder::arith::{solve_affine, Constraint, LpProblem, Relation};
use lexorder::{MatrixOrder, PointSet, RatMatrix, RatVector, Rational};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).unwrap()
}

pub fn int_vec(rng: &mut StdRng, dim: usize, lo: i64, hi: i64) -> RatVector {
    (0..dim)
        .map(|_| Rational::from(rng.gen_range(lo..=hi)))
        .collect()
}

pub fn nonzero_int_vec(rng: &mut StdRng, dim: usize, lo: i64, hi: i64) -> RatVector {
    loop {
        let v = int_vec(rng, dim, lo, hi);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn rat_vec(rng: &mut StdRng, dim: usize, num: i64, max_den: i64) -> RatVector {
    (0..dim)
        .map(|_| q(rng.gen_range(-num..=num), rng.gen_range(1..=max_den)))
        .collect()
}

pub fn random_total_order(rng: &mut StdRng, dim: usize, lo: i64, hi: i64) -> MatrixOrder {
    loop {
        let rows: Vec<RatVector> = (0..dim).map(|_| int_vec(rng, dim, lo, hi)).collect();
        let m = MatrixOrder::new(dim, rows).unwrap();
        if m.is_total_on_space() {
            return m;
        }
    }
}

/// Sign of the first nonzero row value, computed from scratch.
pub fn lex_sign(rows: &[RatVector], d: &RatVector) -> Ordering {
    for r in rows {
        let value: Rational = r.iter().zip(d.iter()).map(|(a, b)| a * b).sum();
        if value.is_positive() {
            return Ordering::Greater;
        }
        if value.is_negative() {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

pub fn all_subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) <= k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Gaussian elimination on a square system; `None` when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip().unwrap();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[derive(Debug, PartialEq, Eq)]
pub enum OracleLp {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

fn boxed_vertex_optimum(p: &LpProblem, bound: i64) -> Option<Rational> {
    let n = p.dim();
    let mut cons: Vec<Constraint> = p.constraints.clone();
    for j in 0..n {
        cons.push(Constraint::new(
            RatVector::unit(n, j),
            Relation::Le,
            Rational::from(bound),
        ));
        cons.push(Constraint::new(
            RatVector::unit(n, j),
            Relation::Ge,
            Rational::from(-bound),
        ));
    }
    let mut best: Option<Rational> = None;
    for subset in all_subsets_up_to(cons.len(), n) {
        if subset.len() != n {
            continue;
        }
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| cons[i].coeffs.entries().to_vec())
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| cons[i].rhs.clone()).collect();
        let Some(x) = solve_square(&a, &b) else {
            continue;
        };
        let x = RatVector::new(x);
        if cons.iter().all(|c| c.is_satisfied_by(&x)) {
            let value = p.objective.dot(&x);
            if best.as_ref().is_none_or(|b| value > *b) {
                best = Some(value);
            }
        }
    }
    best
}

/// Vertex enumeration on the problem intersected with boxes of two sizes:
/// a bounded problem has the same optimum in both, an unbounded one grows.
pub fn lp_oracle(p: &LpProblem) -> OracleLp {
    const B: i64 = 1_000_000;
    match (boxed_vertex_optimum(p, B), boxed_vertex_optimum(p, 2 * B)) {
        (None, _) => OracleLp::Infeasible,
        (Some(a), Some(b)) if a == b => OracleLp::Optimal(a),
        _ => OracleLp::Unbounded,
    }
}

/// Membership by trying every affinely independent subset of size ≤ dim + 1.
pub fn hull_oracle(set: &PointSet, x: &RatVector) -> bool {
    subset_certificates(set, x).next().is_some()
}

pub fn subset_certificates<'a>(
    set: &'a PointSet,
    x: &'a RatVector,
) -> impl Iterator<Item = (Vec<usize>, Vec<Rational>)> + 'a {
    all_subsets_up_to(set.len(), set.dim() + 1)
        .into_iter()
        .filter_map(move |s| {
            let pts: Vec<RatVector> = s.iter().map(|&i| set.points()[i].clone()).collect();
            let lambda = solve_affine(&pts, x).unwrap()?;
            lambda
                .iter()
                .all(|l| !l.is_negative())
                .then_some((s, lambda))
        })
}

/// Does some sum of between 1 and `max_terms` points vanish?
pub fn zero_sum_within(points: &[RatVector], max_terms: usize) -> bool {
    let dim = points[0].dim();
    let mut level: HashSet<RatVector> = HashSet::from([RatVector::zeros(dim)]);
    for _ in 0..max_terms {
        let mut next = HashSet::new();
        for v in &level {
            for p in points {
                let s = v + p;
                if s.is_zero() {
                    return true;
                }
                next.insert(s);
            }
        }
        level = next;
    }
    false
}

/// Positive integer multiple of each row, so that row values on integer
/// vectors are integers with the same sign pattern.
fn integer_rows(order: &MatrixOrder) -> Vec<Vec<i128>> {
    order
        .rows()
        .iter()
        .map(|r| {
            let mut den = BigInt::from(1);
            for x in r.iter() {
                den = num_integer::Integer::lcm(&den, x.denom());
            }
            r.iter()
                .map(|x| {
                    let v = x.numer() * (&den / x.denom());
                    i128::try_from(v).expect("small order entries")
                })
                .collect()
        })
        .collect()
}

/// All sums of between 1 and `n` integer generators, deduplicated, sorted by
/// the order, first `n` nonzero ones.
pub fn enumeration_oracle(gens: &[Vec<i64>], order: &MatrixOrder, n: usize) -> Vec<RatVector> {
    let dim = gens[0].len();
    let rows = integer_rows(order);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut coeffs = vec![0usize; gens.len()];
    fn walk(
        i: usize,
        budget: usize,
        gens: &[Vec<i64>],
        coeffs: &mut Vec<usize>,
        dim: usize,
        seen: &mut HashSet<Vec<i64>>,
    ) {
        if i == gens.len() {
            if coeffs.iter().sum::<usize>() == 0 {
                return;
            }
            let mut s = vec![0i64; dim];
            for (g, &c) in gens.iter().zip(coeffs.iter()) {
                for k in 0..dim {
                    s[k] += g[k] * c as i64;
                }
            }
            seen.insert(s);
            return;
        }
        for c in 0..=budget {
            coeffs[i] = c;
            walk(i + 1, budget - c, gens, coeffs, dim, seen);
        }
        coeffs[i] = 0;
    }
    walk(0, n, gens, &mut coeffs, dim, &mut seen);
    let mut keyed: Vec<(Vec<i128>, Vec<i64>)> = seen
        .into_iter()
        .filter(|s| s.iter().any(|&x| x != 0))
        .map(|s| {
            let key = rows
                .iter()
                .map(|r| r.iter().zip(&s).map(|(a, &b)| a * b as i128).sum())
                .collect();
            (key, s)
        })
        .collect();
    keyed.sort();
    keyed
        .into_iter()
        .take(n)
        .map(|(_, s)| RatVector::from_ints(s))
        .collect()
}

pub fn matrix_rank(rows: &[RatVector], cols: usize) -> usize {
    RatMatrix::from_rows(cols, rows).unwrap().rank()
}
