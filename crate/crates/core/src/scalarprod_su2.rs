//! SU(2) scalar products: the partition sum over Bethe-rapidity splits, its
//! normalised and on-shell forms, the Slavnov determinant and the forms
//! obtained when every on-shell root is sent to infinity.

use serde::{Deserialize, Serialize};

use crate::dwpf::{izergin, vandermonde_up};
use crate::error::{Error, Result};
use crate::exactnum::{lift, sequential_limit, Field, Matrix, Rat, Symbolic};
pub use crate::sets::PartitionSplit;
use crate::sets::{check_distinct, sign, splits};
use crate::spinchain_su2::EigenfunctionSpec;
use crate::vertexmodel::f_sets;

/// Pairs `(split of lambda_B, split of lambda_C)` with `|B_I| = |C_I|`, in
/// ascending bitmask order of the B split, then of the C split.
pub fn balanced_split_pairs(n: usize) -> Vec<(PartitionSplit, PartitionSplit)> {
    let cs = splits("lambda_C", n);
    let mut out = Vec::new();
    for b in splits("lambda_B", n) {
        for c in cs.iter().filter(|c| c.part_i.len() == b.part_i.len()) {
            out.push((b.clone(), c.clone()));
        }
    }
    out
}

fn pick<F: Clone>(xs: &[F], idx: &[usize]) -> Vec<F> {
    idx.iter().map(|&k| xs[k].clone()).collect()
}

fn prod_at<F: Field>(ws: &[F], idx: &[usize]) -> F {
    idx.iter().fold(F::one(), |acc, &k| acc * ws[k].clone())
}

/// Per-element weights entering one term of the partition sum.
pub struct SplitWeights<'a, F> {
    pub b_in_i: &'a [F],
    pub b_in_ii: &'a [F],
    pub c_in_i: &'a [F],
    pub c_in_ii: &'a [F],
}

/// `sum w(B_I) w(B_II) w(C_I) w(C_II) f(C_I, C_II) f(B_II, B_I) Z(B_II|C_II) Z(C_I|B_I)`.
pub fn su2_partition_sum<F: Field>(lc: &[F], lb: &[F], w: &SplitWeights<'_, F>) -> Result<F> {
    if lc.len() != lb.len() {
        return Err(Error::SizeMismatch(format!("|lambda_C| = {} but |lambda_B| = {}", lc.len(), lb.len())));
    }
    let mut acc = F::zero();
    for (b, c) in balanced_split_pairs(lb.len()) {
        let coeff = prod_at(w.b_in_i, &b.part_i)
            * prod_at(w.b_in_ii, &b.part_ii)
            * prod_at(w.c_in_i, &c.part_i)
            * prod_at(w.c_in_ii, &c.part_ii);
        if coeff.is_zero() {
            continue;
        }
        let (bi, bii) = (pick(lb, &b.part_i), pick(lb, &b.part_ii));
        let (ci, cii) = (pick(lc, &c.part_i), pick(lc, &c.part_ii));
        let term = coeff * f_sets(&ci, &cii)? * f_sets(&bii, &bi)? * izergin(&bii, &cii)? * izergin(&ci, &bi)?;
        acc = acc + term;
    }
    Ok(acc)
}

fn eval_all<F: Field>(spec: &EigenfunctionSpec, xs: &[F]) -> Result<Vec<F>> {
    xs.iter().map(|x| spec.eval(x)).collect()
}

fn ones<F: Field>(n: usize) -> Vec<F> {
    vec![F::one(); n]
}

/// Scalar product of a generic model from its vacuum eigenvalues `a`, `d`.
pub fn sp_sum_in<F: Field>(lc: &[F], lb: &[F], spec_a: &EigenfunctionSpec, spec_d: &EigenfunctionSpec) -> Result<F> {
    let (ab, db) = (eval_all(spec_a, lb)?, eval_all(spec_d, lb)?);
    let (ac, dc) = (eval_all(spec_a, lc)?, eval_all(spec_d, lc)?);
    su2_partition_sum(lc, lb, &SplitWeights { b_in_i: &ab, b_in_ii: &db, c_in_i: &dc, c_in_ii: &ac })
}

pub fn sp_sum(lc: &[Rat], lb: &[Rat], spec_a: &EigenfunctionSpec, spec_d: &EigenfunctionSpec) -> Result<Rat> {
    sp_sum_in(lc, lb, spec_a, spec_d)
}

/// Scalar product divided by `prod d(lambda_B) d(lambda_C)`, with `r = a/d`.
pub fn sp_sum_normalized_in<F: Field>(lc: &[F], lb: &[F], spec_r: &EigenfunctionSpec) -> Result<F> {
    let (rb, rc) = (eval_all(spec_r, lb)?, eval_all(spec_r, lc)?);
    let (ob, oc) = (ones(lb.len()), ones(lc.len()));
    su2_partition_sum(lc, lb, &SplitWeights { b_in_i: &rb, b_in_ii: &ob, c_in_i: &oc, c_in_ii: &rc })
}

pub fn sp_sum_normalized(lc: &[Rat], lb: &[Rat], spec_r: &EigenfunctionSpec) -> Result<Rat> {
    sp_sum_normalized_in(lc, lb, spec_r)
}

/// The on-shell value of `r(x_i)`: `-prod_j (x_i - x_j + 1)/(x_i - x_j - 1)`,
/// the product running over all `j` in the set (the `j = i` factor is -1).
pub fn onshell_r<F: Field>(xs: &[F], i: usize) -> Result<F> {
    let mut p = -F::one();
    for xj in xs {
        let d = xs[i].clone() - xj.clone();
        let den = d.clone() - F::one();
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!("on-shell product with {} - {} = 1", xs[i], xj)));
        }
        p = p * (d + F::one()).div(&den)?;
    }
    Ok(p)
}

/// Normalised scalar product with `r(lambda_B)` replaced by its on-shell value
/// and `r(lambda_C)` free.
pub fn slavnov_onshell_sum_in<F: Field>(lc: &[F], lb: &[F], r_c: &EigenfunctionSpec) -> Result<F> {
    let rb: Result<Vec<F>> = (0..lb.len()).map(|i| onshell_r(lb, i)).collect();
    let rc = eval_all(r_c, lc)?;
    let (ob, oc) = (ones(lb.len()), ones(lc.len()));
    su2_partition_sum(lc, lb, &SplitWeights { b_in_i: &rb?, b_in_ii: &ob, c_in_i: &oc, c_in_ii: &rc })
}

pub fn slavnov_onshell_sum(lc: &[Rat], lb: &[Rat], r_c: &EigenfunctionSpec) -> Result<Rat> {
    slavnov_onshell_sum_in(lc, lb, r_c)
}

/// Slavnov's determinant:
/// `det[ (prod_{k!=j}(B_k - C_i + 1) r(C_i) - prod_{k!=j}(B_k - C_i - 1)) / (B_j - C_i) ]
///  / (prod_{i<j} (C_j - C_i)(B_i - B_j))`.
pub fn slavnov_det_in<F: Field>(lc: &[F], lb: &[F], r_c: &EigenfunctionSpec) -> Result<F> {
    if lc.len() != lb.len() {
        return Err(Error::SizeMismatch(format!("|lambda_C| = {} but |lambda_B| = {}", lc.len(), lb.len())));
    }
    check_distinct("lambda_C", lc)?;
    check_distinct("lambda_B", lb)?;
    let n = lc.len();
    let mut rows = Vec::with_capacity(n);
    for ci in lc {
        let r = r_c.eval(ci)?;
        let mut row = Vec::with_capacity(n);
        for (j, bj) in lb.iter().enumerate() {
            let (mut plus, mut minus) = (F::one(), F::one());
            for (k, bk) in lb.iter().enumerate() {
                if k != j {
                    let d = bk.clone() - ci.clone();
                    plus = plus * (d.clone() + F::one());
                    minus = minus * (d - F::one());
                }
            }
            let den = bj.clone() - ci.clone();
            if den.is_zero() {
                return Err(Error::PoleAtPoint(format!("lambda_B = lambda_C = {ci}")));
            }
            row.push((plus * r.clone() - minus).div(&den)?);
        }
        rows.push(row);
    }
    let det = if n == 0 { F::one() } else { Matrix::from_rows(rows)?.det()? };
    let mut lb_rev = lb.to_vec();
    lb_rev.reverse();
    det.div(&(vandermonde_up(lc) * vandermonde_up(&lb_rev)))
}

pub fn slavnov_det(lc: &[Rat], lb: &[Rat], r_c: &EigenfunctionSpec) -> Result<Rat> {
    slavnov_det_in(lc, lb, r_c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InfiniteForm {
    Sum,
    Det,
}

/// `sum (-1)^{|C_I|} prod r(C_II) f(C_I, C_II)`.
pub fn sp_infinite_sum<F: Field>(lc: &[F], r: &[F]) -> Result<F> {
    let mut acc = F::zero();
    for s in splits("lambda_C", lc.len()) {
        let (ci, cii) = s.pick(lc);
        let term = sign::<F>(ci.len()) * prod_at(r, &s.part_ii) * f_sets(&ci, &cii)?;
        acc = acc + term;
    }
    Ok(acc)
}

/// `det(C_i^{j-1} r_i - (C_i + 1)^{j-1}) / prod_{i<j} (C_j - C_i)`.
pub fn sp_infinite_det<F: Field>(lc: &[F], r: &[F]) -> Result<F> {
    check_distinct("lambda_C", lc)?;
    let n = lc.len();
    let rows: Vec<Vec<F>> = lc
        .iter()
        .zip(r)
        .map(|(c, ri)| {
            let s = c.clone() + F::one();
            (0..n as u32).map(|j| c.pow(j) * ri.clone() - s.pow(j)).collect()
        })
        .collect();
    let det = if n == 0 { F::one() } else { Matrix::from_rows(rows)?.det()? };
    det.div(&vandermonde_up(lc))
}

/// Scalar product with all on-shell rapidities sent to infinity, normalised by `ell!`.
pub fn sp_infinite(lc: &[Rat], r_c: &EigenfunctionSpec, form: InfiniteForm) -> Result<Rat> {
    check_distinct("lambda_C", lc)?;
    let r = eval_all(r_c, lc)?;
    match form {
        InfiniteForm::Sum => sp_infinite_sum(lc, &r),
        InfiniteForm::Det => sp_infinite_det(lc, &r),
    }
}

/// `slavnov_onshell_sum` over the variable list `lb` with `lc` fixed.
struct OnshellExpr<'a> {
    lc: &'a [Rat],
    r_c: &'a EigenfunctionSpec,
}

impl Symbolic for OnshellExpr<'_> {
    fn eval<F: Field>(&self, lb: &[F]) -> Result<F> {
        slavnov_onshell_sum_in(&lift(self.lc), lb, self.r_c)
    }
}

/// `(1/l!) lim prod lB * slavnov_onshell_sum`, every `lB` sent to infinity
/// from the highest index down.
pub fn sp_infinite_limit(lc: &[Rat], r_c: &EigenfunctionSpec) -> Result<Rat> {
    check_distinct("lambda_C", lc)?;
    let n = lc.len();
    let order: Vec<usize> = (0..n).rev().collect();
    let lim = sequential_limit(&OnshellExpr { lc, r_c }, &vec![Rat::zero(); n], &order, 1)?;
    lim.checked_div(&Rat::factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertexmodel::weight_g;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn term_count() {
        for n in 0..5 {
            let expected: usize = (0..=n).map(|k| binom(n, k).pow(2)).sum();
            assert_eq!(balanced_split_pairs(n).len(), expected);
        }
    }

    #[test]
    fn single_root_values() {
        let a = EigenfunctionSpec::XxxFundamental(vec![r(0)]);
        assert_eq!(sp_sum(&[r(3)], &[r(2)], &a, &EigenfunctionSpec::One).unwrap(), Rat::new(1, 6));
        assert_eq!(sp_sum(&[], &[], &a, &EigenfunctionSpec::One).unwrap(), r(1));
        let (c1, c2) = (Rat::new(5, 3), r(-2));
        let spec = EigenfunctionSpec::table([(r(2), c1.clone()), (r(3), c2.clone())]);
        let expected = weight_g(&r(3), &r(2)).unwrap() * (c1 - c2);
        assert_eq!(sp_sum_normalized(&[r(3)], &[r(2)], &spec).unwrap(), expected);
    }

    #[test]
    fn slavnov_single_root() {
        let rc = EigenfunctionSpec::table([(r(3), Rat::new(2, 7))]);
        let det = slavnov_det(&[r(3)], &[r(2)], &rc).unwrap();
        assert_eq!(det, (Rat::new(2, 7) - r(1)).checked_div(&(r(2) - r(3))).unwrap());
        assert_eq!(slavnov_onshell_sum(&[r(3)], &[r(2)], &rc).unwrap(), det);
    }

    #[test]
    fn slavnov_with_vanishing_r() {
        // only the C_II = {} term survives
        let lc = [r(3), Rat::new(-7, 2)];
        let lb = [r(10), Rat::new(1, 3)];
        let zero = EigenfunctionSpec::table(lc.iter().map(|c| (c.clone(), r(0))));
        let rb: Vec<Rat> = (0..2).map(|i| onshell_r(&lb, i).unwrap()).collect();
        let single = rb[0].clone() * rb[1].clone() * izergin(&lc, &lb).unwrap();
        assert_eq!(slavnov_det(&lc, &lb, &zero).unwrap(), single);
        assert_eq!(slavnov_onshell_sum(&lc, &lb, &zero).unwrap(), single);
    }

    #[test]
    fn infinite_single_root() {
        let rc = EigenfunctionSpec::table([(r(4), Rat::new(3, 2))]);
        for f in [InfiniteForm::Sum, InfiniteForm::Det] {
            assert_eq!(sp_infinite(&[r(4)], &rc, f).unwrap(), Rat::new(1, 2));
        }
    }
}
