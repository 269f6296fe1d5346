//! SU(3) scalar products: the mixed partition function `Z({l},{m}|{w},{v})`
//! and its evaluation as a sum over products of domain-wall partition
//! functions, its infinite-rapidity limits, the generic and on-shell sum
//! formulas, and the factorised forms reached when one set of on-shell
//! rapidities is sent to infinity.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dwpf::{domain_wall_lattice, izergin, vandermonde_up};
use crate::error::{Error, Result};
use crate::exactnum::{lift, reconstruct, sequential_limit, Field, Matrix, Rat, RatFunc, Symbolic};
use crate::scalarprod_su2::{slavnov_det_in, slavnov_onshell_sum_in, su2_partition_sum, SplitWeights};
use crate::sets::{check_distinct, check_len, sign, splits, PartitionSplit};
use crate::spinchain_su2::EigenfunctionSpec;
use crate::spinchain_su3::{su3_scalar_product_direct, Su3ChainSpec};
use crate::vertexmodel::{contract_lattice, f_sets, Boundary, ColLine, Edge, LatticeSpec, RowLine};

/// The lattice whose partition function is `Z({l},{m}|{w},{v})`: rows for
/// `l` (left 1, right 2) above rows for `m` (left 3, right 2); undotted
/// columns for `w` (bottom 2, top 1) left of dotted columns for `v`
/// (bottom 3, top 2).
pub fn su3_lattice(l: &[Rat], m: &[Rat], w: &[Rat], v: &[Rat]) -> LatticeSpec {
    let mut b = BTreeMap::new();
    for i in 0..l.len() {
        b.insert(Edge::Left(i + 1), Boundary::Fixed(1));
        b.insert(Edge::Right(i + 1), Boundary::Fixed(2));
    }
    for i in 0..m.len() {
        b.insert(Edge::Left(l.len() + i + 1), Boundary::Fixed(3));
        b.insert(Edge::Right(l.len() + i + 1), Boundary::Fixed(2));
    }
    for j in 0..w.len() {
        b.insert(Edge::Bottom(j + 1), Boundary::Fixed(2));
        b.insert(Edge::Top(j + 1), Boundary::Fixed(1));
    }
    for j in 0..v.len() {
        b.insert(Edge::Bottom(w.len() + j + 1), Boundary::Fixed(3));
        b.insert(Edge::Top(w.len() + j + 1), Boundary::Fixed(2));
    }
    let rows = l.iter().chain(m).map(|x| RowLine { rapidity: x.clone(), alphabet: 3 }).collect();
    let cols = w
        .iter()
        .map(|x| ColLine { rapidity: x.clone(), alphabet: 3, dotted: false })
        .chain(v.iter().map(|x| ColLine { rapidity: x.clone(), alphabet: 3, dotted: true }))
        .collect();
    LatticeSpec { rows, cols, boundary: b }
}

fn check_z_sizes<F>(l: &[F], m: &[F], w: &[F], v: &[F]) -> Result<()> {
    check_len("w", w, l.len())?;
    check_len("v", v, m.len())
}

/// `Z({l},{m}|{w},{v})` by direct contraction of its lattice.
pub fn z_su3_oracle(l: &[Rat], m: &[Rat], w: &[Rat], v: &[Rat]) -> Result<Rat> {
    check_z_sizes(l, m, w, v)?;
    check_distinct("lambda and mu", &[l, m].concat())?;
    check_distinct("w and v", &[w, v].concat())?;
    if l.is_empty() && m.is_empty() {
        return Ok(Rat::one());
    }
    contract_lattice(&su3_lattice(l, m, w, v))
}

/// `K = f(m_I, m_II) f(l_II, l_I) f(m_I, l_I) Z(l_II | m_II)`, the coefficient
/// of `Z(l_I + m_II | w) Z(v | m_I + l_II)` in the expansion of `Z`.
pub fn k_coefficient<F: Field>(l_i: &[F], l_ii: &[F], m_i: &[F], m_ii: &[F]) -> Result<F> {
    Ok(f_sets(m_i, m_ii)? * f_sets(l_ii, l_i)? * f_sets(m_i, l_i)? * izergin(l_ii, m_ii)?)
}

/// Pairs of splits of `l` and `m` with `|l_II| = |m_II|`, in ascending
/// bitmask order of the `l` split, then of the `m` split.
fn balanced_pairs(nl: usize, nm: usize) -> Vec<(PartitionSplit, PartitionSplit)> {
    let ms = splits("mu", nm);
    let mut out = Vec::new();
    for a in splits("lambda", nl) {
        for b in ms.iter().filter(|b| b.part_ii.len() == a.part_ii.len()) {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// `Z({l},{m}|{w},{v})` as the sum over splits with `|l_II| = |m_II|` of
/// `K Z(l_I + m_II | w) Z(v | m_I + l_II)`, over any field.
pub fn z_su3_sum_in<F: Field>(l: &[F], m: &[F], w: &[F], v: &[F]) -> Result<F> {
    check_z_sizes(l, m, w, v)?;
    let mut acc = F::zero();
    for (a, b) in balanced_pairs(l.len(), m.len()) {
        let (l_i, l_ii) = a.pick(l);
        let (m_i, m_ii) = b.pick(m);
        let k = k_coefficient(&l_i, &l_ii, &m_i, &m_ii)?;
        if k.is_zero() {
            continue;
        }
        let left = izergin(&[l_i, m_ii].concat(), w)?;
        let right = izergin(v, &[m_i, l_ii].concat())?;
        acc = acc + k * left * right;
    }
    Ok(acc)
}

pub fn z_su3_sum(l: &[Rat], m: &[Rat], w: &[Rat], v: &[Rat]) -> Result<Rat> {
    check_distinct("lambda and mu", &[l, m].concat())?;
    check_distinct("w and v", &[w, v].concat())?;
    z_su3_sum_in(l, m, w, v)
}

/// Bookkeeping from a full enumeration of all `2^(l+m)` split pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumAudit {
    pub value: Rat,
    pub kept: usize,
    pub skipped: usize,
    /// Skipped pairs whose lattice product turned out nonzero.
    pub skipped_nonzero: usize,
}

/// Domain-wall lattice with possibly unequal numbers of rows and columns.
fn rectangular_dwpf(rows: &[Rat], cols: &[Rat]) -> Result<Rat> {
    if rows.len() == cols.len() {
        return izergin(rows, cols);
    }
    if rows.is_empty() {
        // Each column carries state 2 at the bottom and 1 at the top.
        return Ok(Rat::zero());
    }
    contract_lattice(&domain_wall_lattice(rows, cols, false))
}

/// `z_su3_sum` with every split pair visited. Pairs with `|l_II| != |m_II|`
/// are evaluated from rectangular domain-wall lattices to confirm that they
/// vanish.
pub fn z_su3_sum_audit(l: &[Rat], m: &[Rat], w: &[Rat], v: &[Rat]) -> Result<SumAudit> {
    check_z_sizes(l, m, w, v)?;
    let mut audit = SumAudit { value: Rat::zero(), kept: 0, skipped: 0, skipped_nonzero: 0 };
    for a in splits("lambda", l.len()) {
        for b in splits("mu", m.len()) {
            let (l_i, l_ii) = a.pick(l);
            let (m_i, m_ii) = b.pick(m);
            if l_ii.len() == m_ii.len() {
                audit.kept += 1;
                let k = k_coefficient(&l_i, &l_ii, &m_i, &m_ii)?;
                audit.value += k * izergin(&[l_i, m_ii].concat(), w)? * izergin(v, &[m_i, l_ii].concat())?;
            } else {
                audit.skipped += 1;
                let pre = f_sets(&m_i, &m_ii)? * f_sets(&l_ii, &l_i)? * f_sets(&m_i, &l_i)?;
                let term = pre
                    * rectangular_dwpf(&l_ii, &m_ii)?
                    * rectangular_dwpf(&[l_i, m_ii].concat(), w)?
                    * rectangular_dwpf(v, &[m_i, l_ii].concat())?;
                if !term.is_zero() {
                    audit.skipped_nonzero += 1;
                }
            }
        }
    }
    Ok(audit)
}

/// Which set of variables of `Z({l},{m}|{w},{v})` is sent to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZLimit {
    MuInf,
    LambdaInf,
    VInf,
    WInf,
}

impl ZLimit {
    /// Names of the three remaining sets, in the order they are passed.
    pub fn remaining_sets(self) -> [&'static str; 3] {
        match self {
            ZLimit::MuInf => ["lambda", "w", "v"],
            ZLimit::LambdaInf => ["mu", "w", "v"],
            ZLimit::VInf => ["lambda", "mu", "w"],
            ZLimit::WInf => ["lambda", "mu", "v"],
        }
    }
}

fn check_remaining(which: ZLimit, remaining: &[Vec<Rat>], sizes: (usize, usize)) -> Result<()> {
    if remaining.len() != 3 {
        return Err(Error::SizeMismatch(format!("{} remaining sets, expected 3", remaining.len())));
    }
    let (ell, m) = sizes;
    for (name, set) in which.remaining_sets().iter().zip(remaining) {
        let n = if matches!(*name, "lambda" | "w") { ell } else { m };
        check_len(name, set, n)?;
    }
    Ok(())
}

/// Closed forms for `(1/k!) lim (prod x) Z` with one set `x` sent to infinity:
/// `MU_INF` gives `(-1)^m Z(l|w)`, `LAMBDA_INF` gives `Z(v|m)`, `V_INF` gives
/// `f(m, w) Z(l|w)` and `W_INF` gives `(-1)^l f(v, l) Z(v|m)`.
pub fn z_su3_limit(which: ZLimit, remaining: &[Vec<Rat>], sizes: (usize, usize)) -> Result<Rat> {
    check_remaining(which, remaining, sizes)?;
    let (ell, m) = sizes;
    let (a, b, c) = (&remaining[0], &remaining[1], &remaining[2]);
    match which {
        ZLimit::MuInf => Ok(sign::<Rat>(m) * izergin(a, b)?),
        ZLimit::LambdaInf => izergin(c, a),
        ZLimit::VInf => Ok(f_sets(b, c)? * izergin(a, c)?),
        ZLimit::WInf => Ok(sign::<Rat>(ell) * f_sets(c, a)? * izergin(c, b)?),
    }
}

/// `z_su3_sum` over the variable list `[l.., m.., w.., v..]`.
struct ZSumExpr {
    ell: usize,
    m: usize,
}

impl Symbolic for ZSumExpr {
    fn eval<F: Field>(&self, x: &[F]) -> Result<F> {
        let (l, rest) = x.split_at(self.ell);
        let (m, rest) = rest.split_at(self.m);
        let (w, v) = rest.split_at(self.ell);
        z_su3_sum_in(l, m, w, v)
    }
}

/// The same limit computed from `z_su3_sum` by sequential limits, the
/// highest index of the infinite set going first unless `order` (positions
/// within that set) is given.
pub fn z_su3_limit_sequential(
    which: ZLimit,
    remaining: &[Vec<Rat>],
    sizes: (usize, usize),
    order: Option<&[usize]>,
) -> Result<Rat> {
    check_remaining(which, remaining, sizes)?;
    let (ell, m) = sizes;
    let (a, b, c) = (remaining[0].clone(), remaining[1].clone(), remaining[2].clone());
    let k = if matches!(which, ZLimit::MuInf | ZLimit::VInf) { m } else { ell };
    let active = vec![Rat::zero(); k];
    let (vars, offset) = match which {
        ZLimit::LambdaInf => ([active, a, b, c].concat(), 0),
        ZLimit::MuInf => ([a, active, b, c].concat(), ell),
        ZLimit::WInf => ([a, b, active, c].concat(), ell + m),
        ZLimit::VInf => ([a, b, c, active].concat(), 2 * ell + m),
    };
    let positions: Vec<usize> = match order {
        Some(o) => o.to_vec(),
        None => (0..k).rev().collect(),
    };
    if positions.len() != k || positions.iter().any(|&p| p >= k) {
        return Err(Error::SizeMismatch(format!("limit order {positions:?} for a set of {k}")));
    }
    let order: Vec<usize> = positions.iter().map(|p| p + offset).collect();
    let lim = sequential_limit(&ZSumExpr { ell, m }, &vars, &order, 1)?;
    Ok(lim * Rat::factorial(k).recip()?)
}

/// Both sides of `f(m, w) Z(l|w) = sum K Z(l_I + m_II | w)`, the sum running
/// over splits with `|l_II| = |m_II|`.
pub fn lemma1_check(l: &[Rat], m: &[Rat], w: &[Rat]) -> Result<(Rat, Rat)> {
    check_len("w", w, l.len())?;
    check_distinct("lambda and mu", &[l, m].concat())?;
    let lhs = f_sets(m, w)? * izergin(l, w)?;
    let mut rhs = Rat::zero();
    for (a, b) in balanced_pairs(l.len(), m.len()) {
        let (l_i, l_ii) = a.pick(l);
        let (m_i, m_ii) = b.pick(m);
        rhs += k_coefficient(&l_i, &l_ii, &m_i, &m_ii)? * izergin(&[l_i, m_ii].concat(), w)?;
    }
    Ok((lhs, rhs))
}

/// Per-element weights of one term of the SU(3) partition sum, indexed like
/// the rapidity sets they multiply.
pub struct Su3Weights<F> {
    pub lb_i: Vec<F>,
    pub lb_ii: Vec<F>,
    pub lc_i: Vec<F>,
    pub lc_ii: Vec<F>,
    pub mb_i: Vec<F>,
    pub mb_ii: Vec<F>,
    pub mc_i: Vec<F>,
    pub mc_ii: Vec<F>,
}

fn prod_at<F: Field>(ws: &[F], idx: &[usize]) -> F {
    idx.iter().fold(F::one(), |acc, &k| acc * ws[k].clone())
}

/// Splits `(B, C)` of a Bethe-vector set and its dual partner.
pub type SplitPair = (PartitionSplit, PartitionSplit);

/// Split pairs `(B, C)` of two equal-size sets with `|B_I| = |C_I|`.
pub fn matched_pairs(n: usize) -> Vec<SplitPair> {
    let cs = splits("C", n);
    let mut out = Vec::new();
    for b in splits("B", n) {
        for c in cs.iter().filter(|c| c.part_i.len() == b.part_i.len()) {
            out.push((b.clone(), c.clone()));
        }
    }
    out
}

fn check_sp_sizes<F>(mc: &[F], lc: &[F], lb: &[F], mb: &[F]) -> Result<()> {
    check_len("lambda_B", lb, lc.len())?;
    check_len("mu_B", mb, mc.len())
}

/// The double partition sum
/// `sum w(..) f(lC_I, lC_II) f(lB_II, lB_I) f(mC_II, mC_I) f(mB_I, mB_II)
///  f(mB_II, lB_II) f(mC_I, lC_I) Z(lB_II, mC_I | lC_II, mB_I) Z(lC_I, mB_II | lB_I, mC_II)`.
pub fn su3_partition_sum<F: Field>(mc: &[F], lc: &[F], lb: &[F], mb: &[F], w: &Su3Weights<F>) -> Result<F> {
    check_sp_sizes(mc, lc, lb, mb)?;
    let lpairs = matched_pairs(lb.len());
    let mpairs = matched_pairs(mb.len());
    let jobs: Vec<(&SplitPair, &SplitPair)> =
        lpairs.iter().flat_map(|lp| mpairs.iter().map(move |mp| (lp, mp))).collect();
    // Terms are computed in parallel and summed in enumeration order.
    let terms: Vec<Result<F>> = jobs.par_iter().map(|((sb, sc), (tb, tc))| su3_term(mc, lc, lb, mb, w, sb, sc, tb, tc)).collect();
    let mut acc = F::zero();
    for t in terms {
        acc = acc + t?;
    }
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn su3_term<F: Field>(
    mc: &[F],
    lc: &[F],
    lb: &[F],
    mb: &[F],
    w: &Su3Weights<F>,
    sb: &PartitionSplit,
    sc: &PartitionSplit,
    tb: &PartitionSplit,
    tc: &PartitionSplit,
) -> Result<F> {
    let weight = prod_at(&w.lb_i, &sb.part_i)
        * prod_at(&w.lb_ii, &sb.part_ii)
        * prod_at(&w.lc_i, &sc.part_i)
        * prod_at(&w.lc_ii, &sc.part_ii)
        * prod_at(&w.mb_i, &tb.part_i)
        * prod_at(&w.mb_ii, &tb.part_ii)
        * prod_at(&w.mc_i, &tc.part_i)
        * prod_at(&w.mc_ii, &tc.part_ii);
    if weight.is_zero() {
        return Ok(F::zero());
    }
    let (lb_i, lb_ii) = sb.pick(lb);
    let (lc_i, lc_ii) = sc.pick(lc);
    let (mb_i, mb_ii) = tb.pick(mb);
    let (mc_i, mc_ii) = tc.pick(mc);
    let f = f_sets(&lc_i, &lc_ii)?
        * f_sets(&lb_ii, &lb_i)?
        * f_sets(&mc_ii, &mc_i)?
        * f_sets(&mb_i, &mb_ii)?
        * f_sets(&mb_ii, &lb_ii)?
        * f_sets(&mc_i, &lc_i)?;
    let z1 = z_su3_sum_in(&lb_ii, &mc_i, &lc_ii, &mb_i)?;
    if z1.is_zero() {
        return Ok(F::zero());
    }
    let z2 = z_su3_sum_in(&lc_i, &mb_ii, &lb_i, &mc_ii)?;
    Ok(weight * f * z1 * z2)
}

fn eval_all<F: Field>(spec: &EigenfunctionSpec, xs: &[F]) -> Result<Vec<F>> {
    xs.iter().map(|x| spec.eval(x)).collect()
}

fn ones<F: Field>(n: usize) -> Vec<F> {
    vec![F::one(); n]
}

/// Vacuum eigenvalue functions `a1, a2, a3` of a generic SU(3) model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su3Eigenfunctions {
    pub a1: EigenfunctionSpec,
    pub a2: EigenfunctionSpec,
    pub a3: EigenfunctionSpec,
}

/// Generic scalar product from the vacuum eigenvalues.
pub fn su3_sp_sum_in<F: Field>(mc: &[F], lc: &[F], lb: &[F], mb: &[F], a: &Su3Eigenfunctions) -> Result<F> {
    let w = Su3Weights {
        lb_i: eval_all(&a.a1, lb)?,
        lb_ii: eval_all(&a.a2, lb)?,
        lc_i: eval_all(&a.a2, lc)?,
        lc_ii: eval_all(&a.a1, lc)?,
        mb_i: eval_all(&a.a3, mb)?,
        mb_ii: eval_all(&a.a2, mb)?,
        mc_i: eval_all(&a.a2, mc)?,
        mc_ii: eval_all(&a.a3, mc)?,
    };
    su3_partition_sum(mc, lc, lb, mb, &w)
}

pub fn su3_sp_sum(mc: &[Rat], lc: &[Rat], lb: &[Rat], mb: &[Rat], a: &Su3Eigenfunctions) -> Result<Rat> {
    check_sets(mc, lc, lb, mb)?;
    su3_sp_sum_in(mc, lc, lb, mb, a)
}

/// Scalar product divided by `prod a2(lC) a2(lB) a3(mC) a3(mB)`, in terms of
/// `r1 = a1/a2` and `r2 = a2/a3`.
pub fn su3_sp_sum_normalized_in<F: Field>(
    mc: &[F],
    lc: &[F],
    lb: &[F],
    mb: &[F],
    r1: &EigenfunctionSpec,
    r2: &EigenfunctionSpec,
) -> Result<F> {
    let w = Su3Weights {
        lb_i: eval_all(r1, lb)?,
        lb_ii: ones(lb.len()),
        lc_i: ones(lc.len()),
        lc_ii: eval_all(r1, lc)?,
        mb_i: ones(mb.len()),
        mb_ii: eval_all(r2, mb)?,
        mc_i: eval_all(r2, mc)?,
        mc_ii: ones(mc.len()),
    };
    su3_partition_sum(mc, lc, lb, mb, &w)
}

pub fn su3_sp_sum_normalized(
    mc: &[Rat],
    lc: &[Rat],
    lb: &[Rat],
    mb: &[Rat],
    r1: &EigenfunctionSpec,
    r2: &EigenfunctionSpec,
) -> Result<Rat> {
    check_sets(mc, lc, lb, mb)?;
    su3_sp_sum_normalized_in(mc, lc, lb, mb, r1, r2)
}

fn check_sets<F: Field>(mc: &[F], lc: &[F], lb: &[F], mb: &[F]) -> Result<()> {
    check_sp_sizes(mc, lc, lb, mb)?;
    for (name, s) in [("mu_C", mc), ("lambda_C", lc), ("lambda_B", lb), ("mu_B", mb)] {
        check_distinct(name, s)?;
    }
    Ok(())
}

/// `prod_j (x_i - x_j + 1)/(x_i - x_j - 1)` over the whole set (the `j = i`
/// factor is -1).
fn ratio_product<F: Field>(xs: &[F], i: usize) -> Result<F> {
    let mut p = F::one();
    for xj in xs {
        let d = xs[i].clone() - xj.clone();
        let den = d.clone() - F::one();
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!("{} - {} = 1 in a Bethe product", xs[i], xj)));
        }
        p = p * (d + F::one()).div(&den)?;
    }
    Ok(p)
}

/// On-shell values `r1(lB_i) = -prod_j (..) prod_k f(mB_k, lB_i)`.
pub fn onshell_r1<F: Field>(lb: &[F], mb: &[F]) -> Result<Vec<F>> {
    (0..lb.len())
        .map(|i| Ok(-ratio_product(lb, i)? * f_sets(mb, std::slice::from_ref(&lb[i]))?))
        .collect()
}

/// On-shell values `r2(mB_i) = -prod_j (..) prod_k 1/f(mB_i, lB_k)`.
pub fn onshell_r2<F: Field>(lb: &[F], mb: &[F]) -> Result<Vec<F>> {
    (0..mb.len())
        .map(|i| (-ratio_product(mb, i)?).div(&f_sets(std::slice::from_ref(&mb[i]), lb)?))
        .collect()
}

/// Normalised scalar product with the Bethe equations substituted for
/// `r1(lB)` and `r2(mB)`; `r1(lC)` and `r2(mC)` stay free.
pub fn su3_sp_onshell_sum_in<F: Field>(
    mc: &[F],
    lc: &[F],
    lb: &[F],
    mb: &[F],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<F> {
    let w = Su3Weights {
        lb_i: onshell_r1(lb, mb)?,
        lb_ii: ones(lb.len()),
        lc_i: ones(lc.len()),
        lc_ii: eval_all(r1c, lc)?,
        mb_i: ones(mb.len()),
        mb_ii: onshell_r2(lb, mb)?,
        mc_i: eval_all(r2c, mc)?,
        mc_ii: ones(mc.len()),
    };
    su3_partition_sum(mc, lc, lb, mb, &w)
}

pub fn su3_sp_onshell_sum(
    mc: &[Rat],
    lc: &[Rat],
    lb: &[Rat],
    mb: &[Rat],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<Rat> {
    check_sets(mc, lc, lb, mb)?;
    su3_sp_onshell_sum_in(mc, lc, lb, mb, r1c, r2c)
}

/// Which on-shell set is sent to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactorizedLimit {
    MubInf,
    LambInf,
}

/// `det(x_i^{j-1} a_i - (x_i + 1)^{j-1} b_i) / prod_{i<j} (x_j - x_i)`.
pub fn shifted_power_det<F: Field>(xs: &[F], a: &[F], b: &[F]) -> Result<F> {
    check_distinct("rapidities", xs)?;
    let n = xs.len();
    if n == 0 {
        return Ok(F::one());
    }
    let rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let s = xs[i].clone() + F::one();
            (0..n as u32).map(|j| xs[i].pow(j) * a[i].clone() - s.pow(j) * b[i].clone()).collect()
        })
        .collect();
    Matrix::from_rows(rows)?.det()?.div(&vandermonde_up(xs))
}

/// `r2(mC_i) prod_k f(mC_i, lC_k)`.
fn r2_dressed<F: Field>(mc: &[F], lc: &[F], r2c: &EigenfunctionSpec) -> Result<Vec<F>> {
    mc.iter().map(|x| Ok(r2c.eval(x)? * f_sets(std::slice::from_ref(x), lc)?)).collect()
}

/// `prod_k f(mC_k, lC_i)`.
fn f_from_mc<F: Field>(mc: &[F], lc: &[F]) -> Result<Vec<F>> {
    lc.iter().map(|x| f_sets(mc, std::slice::from_ref(x))).collect()
}

/// The scalar product with one on-shell set sent to infinity, as a product
/// of two determinants. `MUB_INF`: an infinite-root determinant in `mC`
/// times Slavnov's determinant in `(lC, lB)`. `LAMB_INF`: an infinite-root
/// determinant in `lC` times Slavnov's determinant in `(mC, mB)`.
pub fn su3_sp_factorized_in<F: Field>(
    limit: FactorizedLimit,
    mc: &[F],
    lc: &[F],
    surviving_b: &[F],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<F> {
    match limit {
        FactorizedLimit::MubInf => {
            let a = r2_dressed(mc, lc, r2c)?;
            let first = shifted_power_det(mc, &a, &ones(mc.len()))?;
            Ok(first * slavnov_det_in(lc, surviving_b, r1c)?)
        }
        FactorizedLimit::LambInf => {
            let a = eval_all(r1c, lc)?;
            let first = shifted_power_det(lc, &a, &f_from_mc(mc, lc)?)?;
            Ok(first * slavnov_det_in(mc, surviving_b, r2c)?)
        }
    }
}

pub fn su3_sp_factorized(
    limit: FactorizedLimit,
    mc: &[Rat],
    lc: &[Rat],
    surviving_b: &[Rat],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<Rat> {
    check_distinct("mu_C", mc)?;
    check_distinct("lambda_C", lc)?;
    check_distinct("surviving B", surviving_b)?;
    su3_sp_factorized_in(limit, mc, lc, surviving_b, r1c, r2c)
}

/// `sum (-1)^{|X_I|} prod_{X_II} r f(X_I, X_II)` over splits of `xs`.
fn signed_subset_sum<F: Field>(xs: &[F], r: &[F]) -> Result<F> {
    let mut acc = F::zero();
    for s in splits("x", xs.len()) {
        let (xi, xii) = s.pick(xs);
        acc = acc + sign::<F>(xi.len()) * prod_at(r, &s.part_ii) * f_sets(&xi, &xii)?;
    }
    Ok(acc)
}

/// The same two limits as products of two partition sums, before either sum
/// is written as a determinant.
pub fn su3_sp_factorized_sums_in<F: Field>(
    limit: FactorizedLimit,
    mc: &[F],
    lc: &[F],
    surviving_b: &[F],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<F> {
    match limit {
        FactorizedLimit::MubInf => {
            // sum (-1)^{|mC_II|} prod_{mC_I} r2 f(mC_I, lC) f(mC_II, mC_I)
            let first = signed_subset_sum(mc, &r2_dressed(mc, lc, r2c)?)?;
            Ok(first * slavnov_onshell_sum_in(lc, surviving_b, r1c)?)
        }
        FactorizedLimit::LambInf => {
            let inv: Vec<F> = f_from_mc(mc, lc)?
                .iter()
                .zip(eval_all(r1c, lc)?)
                .map(|(f, r)| r.div(f))
                .collect::<Result<_>>()?;
            let first = signed_subset_sum(lc, &inv)?;
            let mb = surviving_b;
            let on: Vec<F> = (0..mb.len()).map(|i| Ok(-ratio_product(mb, i)?)).collect::<Result<_>>()?;
            let second = su2_partition_sum(
                mb,
                mc,
                &SplitWeights {
                    b_in_i: &eval_all(r2c, mc)?,
                    b_in_ii: &ones(mc.len()),
                    c_in_i: &ones(mb.len()),
                    c_in_ii: &on,
                },
            )?;
            Ok(f_sets(mc, lc)? * first * second)
        }
    }
}

/// The on-shell sum over the variable list `[lB.., mB..]`.
struct OnshellExpr<'a> {
    mc: &'a [Rat],
    lc: &'a [Rat],
    r1c: &'a EigenfunctionSpec,
    r2c: &'a EigenfunctionSpec,
}

impl Symbolic for OnshellExpr<'_> {
    fn eval<F: Field>(&self, x: &[F]) -> Result<F> {
        let (lb, mb) = x.split_at(self.lc.len());
        su3_sp_onshell_sum_in(&lift(self.mc), &lift(self.lc), lb, mb, self.r1c, self.r2c)
    }
}

/// `(1/k!) lim (prod x) <<mC, lC | lB, mB>>` with the infinite set sent to
/// infinity from its highest index down, computed from the on-shell sum.
pub fn su3_sp_factorized_limit(
    limit: FactorizedLimit,
    mc: &[Rat],
    lc: &[Rat],
    surviving_b: &[Rat],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<Rat> {
    let (ell, m) = (lc.len(), mc.len());
    let (k, vars, offset) = match limit {
        FactorizedLimit::MubInf => {
            check_len("lambda_B", surviving_b, ell)?;
            (m, [surviving_b.to_vec(), vec![Rat::zero(); m]].concat(), ell)
        }
        FactorizedLimit::LambInf => {
            check_len("mu_B", surviving_b, m)?;
            (ell, [vec![Rat::zero(); ell], surviving_b.to_vec()].concat(), 0)
        }
    };
    let order: Vec<usize> = (0..k).rev().map(|p| p + offset).collect();
    let expr = OnshellExpr { mc, lc, r1c, r2c };
    Ok(sequential_limit(&expr, &vars, &order, 1)? * Rat::factorial(k).recip()?)
}

/// Exponent schedules for sending both on-shell sets to infinity along one
/// variable `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StaggerOrder {
    /// `lB_i = x^i`, `mB_j = x^{l+j}`: `mB` outruns `lB`.
    LambdaThenMu,
    /// `lB_i = x^{m+i}`, `mB_j = x^j`: `lB` outruns `mB`.
    MuThenLambda,
}

/// `lim_x (prod lB prod mB / (l! m!)) <<mC, lC | lB, mB>>` on the given
/// exponent schedule.
pub fn staggered_double_limit(
    order: StaggerOrder,
    mc: &[Rat],
    lc: &[Rat],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
    sizes: (usize, usize),
) -> Result<Rat> {
    let (ell, m) = sizes;
    check_len("lambda_C", lc, ell)?;
    check_len("mu_C", mc, m)?;
    let (el, em) = match order {
        StaggerOrder::LambdaThenMu => (1, 1 + ell),
        StaggerOrder::MuThenLambda => (1 + m, 1),
    };
    let lb: Vec<RatFunc> = (0..ell).map(|i| RatFunc::monomial((el + i) as u32)).collect();
    let mb: Vec<RatFunc> = (0..m).map(|j| RatFunc::monomial((em + j) as u32)).collect();
    let sp = su3_sp_onshell_sum_in(&lift::<RatFunc>(mc), &lift::<RatFunc>(lc), &lb, &mb, r1c, r2c)?;
    let scale = lb.iter().chain(&mb).fold(RatFunc::constant(Rat::one()), |acc, x| acc * x.clone());
    let norm = Rat::factorial(ell) * Rat::factorial(m);
    Ok((sp * scale).limit(0)? * norm.recip()?)
}

/// Closed forms of the two staggered limits: for `LAMBDA_THEN_MU` the
/// infinite-root determinant in `lC` with `r1` times the one in `mC` with
/// `r2 f(mC, lC)`; for `MU_THEN_LAMBDA` the determinant in `mC` with `r2`
/// times the one in `lC` with `r1` against `(lC + 1)^{j-1} f(mC, lC)`.
pub fn staggered_closed_form(
    order: StaggerOrder,
    mc: &[Rat],
    lc: &[Rat],
    r1c: &EigenfunctionSpec,
    r2c: &EigenfunctionSpec,
) -> Result<Rat> {
    let (o_l, o_m): (Vec<Rat>, Vec<Rat>) = (ones(lc.len()), ones(mc.len()));
    let r1: Vec<Rat> = eval_all(r1c, lc)?;
    match order {
        StaggerOrder::LambdaThenMu => {
            Ok(shifted_power_det(lc, &r1, &o_l)? * shifted_power_det(mc, &r2_dressed(mc, lc, r2c)?, &o_m)?)
        }
        StaggerOrder::MuThenLambda => {
            let r2: Vec<Rat> = eval_all(r2c, mc)?;
            Ok(shifted_power_det(mc, &r2, &o_m)? * shifted_power_det(lc, &r1, &f_from_mc(mc, lc)?)?)
        }
    }
}

/// Both sides of the factorisation of the normalised chain scalar product
/// `SP / (f(lC, w) f(lB, w) f(v, mC) f(v, mB))` at `w = lC_II + lB_I`,
/// `v = mC_II + mB_I`. `lambda` splits `(lB, lC)` and `mu` splits `(mB, mC)`,
/// each with `|B_I| = |C_I|`. The left side is the chain value, approached
/// along a line in `(w, v)` and read off from its reconstruction; the right
/// side is `f(mC_I, lC_I) f(mB_II, lB_II) Z(lB_II, mC_I | lC_II, mB_I)
/// Z(lC_I, mB_II | lB_I, mC_II)` over `f(lC_I, lB_I) f(lB_II, lC_II)
/// f(mB_I, mC_I) f(mC_II, mB_II)`.
pub fn chain_specialization(
    mc: &[Rat],
    lc: &[Rat],
    lb: &[Rat],
    mb: &[Rat],
    lambda: &SplitPair,
    mu: &SplitPair,
) -> Result<(Rat, Rat)> {
    check_sets(mc, lc, lb, mb)?;
    let ((lb_i, lb_ii), (lc_i, lc_ii)) = (lambda.0.pick(lb), lambda.1.pick(lc));
    let ((mb_i, mb_ii), (mc_i, mc_ii)) = (mu.0.pick(mb), mu.1.pick(mc));
    if lb_i.len() != lc_i.len() || mb_i.len() != mc_i.len() {
        return Err(Error::SizeMismatch("splits must have |B_I| = |C_I|".into()));
    }
    let w0 = [lc_ii.clone(), lb_i.clone()].concat();
    let v0 = [mc_ii.clone(), mb_i.clone()].concat();
    let h = reconstruct(|t| {
        let w: Vec<Rat> = w0.iter().enumerate().map(|(k, x)| x + &(t * &Rat::int(k as i64 + 1))).collect();
        let v: Vec<Rat> = v0.iter().enumerate().map(|(k, x)| x - &(t * &Rat::int(k as i64 + 2))).collect();
        let spec = Su3ChainSpec::new(w.clone(), v.clone())?;
        let sp = su3_scalar_product_direct(mc, lc, lb, mb, &spec)?;
        let den = f_sets(&[lc, lb].concat(), &w)? * f_sets(&v, &[mc, mb].concat())?;
        sp.checked_div(&den)
    })?;
    let lhs = h.eval(&Rat::zero())?;
    let den = f_sets(&lc_i, &lb_i)? * f_sets(&lb_ii, &lc_ii)? * f_sets(&mb_i, &mc_i)? * f_sets(&mc_ii, &mb_ii)?;
    let num = f_sets(&mc_i, &lc_i)?
        * f_sets(&mb_ii, &lb_ii)?
        * z_su3_sum(&lb_ii, &mc_i, &lc_ii, &mb_i)?
        * z_su3_sum(&lc_i, &mb_ii, &lb_i, &mc_ii)?;
    Ok((lhs, num.checked_div(&den)?))
}
