//! Domain-wall partition functions: determinant evaluations, partial
//! (fewer-row) versions, lattice oracles and infinite-rapidity limits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{as_function_of, sequential_limit, Field, Matrix, Rat, RatFunc, Symbolic, MAX_ACTIVE};
use crate::sets::{check_distinct, check_len};
use crate::vertexmodel::{contract_lattice, f_sets, Boundary, ColLine, Edge, LatticeSpec, RowLine};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DwpfInput {
    pub lambdas: Vec<Rat>,
    pub ws: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PdwpfFormula {
    Izergin,
    Kostov,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Lambda,
    W,
}

/// `prod_{i<j} (x_j - x_i)`.
pub(crate) fn vandermonde_up<F: Field>(x: &[F]) -> F {
    let mut acc = F::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc = acc * (x[j].clone() - x[i].clone());
        }
    }
    acc
}

/// Row of the row-scaled Izergin kernel for one `l`:
/// `prod_{k != j} (l - w_k + 1) / (l - w_j)`.
fn izergin_row<F: Field>(l: &F, w: &[F]) -> Result<Vec<F>> {
    let shifted: Vec<F> = w.iter().map(|wk| l.clone() - wk.clone() + F::one()).collect();
    let mut row = Vec::with_capacity(w.len());
    for (j, wj) in w.iter().enumerate() {
        let d = l.clone() - wj.clone();
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("lambda = w = {l}")));
        }
        let mut num = F::one();
        for (k, s) in shifted.iter().enumerate() {
            if k != j {
                num = num * s.clone();
            }
        }
        row.push(num.div(&d)?);
    }
    Ok(row)
}

fn check_dwpf_sets<F: Field>(l: &[F], w: &[F]) -> Result<()> {
    check_distinct("lambda", l)?;
    check_distinct("w", w)?;
    Ok(())
}

/// Izergin determinant, `Z(l|w)` with `|l| = |w|`. The kernel
/// `1/((l-w)(l-w+1))` is multiplied through by `prod_k (l_i - w_k + 1)` row by
/// row, which removes the spurious 0/0 at `l_i - w_j = -1`.
pub fn izergin<F: Field>(l: &[F], w: &[F]) -> Result<F> {
    check_len("w", w, l.len())?;
    check_dwpf_sets(l, w)?;
    let n = l.len();
    if n == 0 {
        return Ok(F::one());
    }
    let rows: Result<Vec<Vec<F>>> = l.iter().map(|li| izergin_row(li, w)).collect();
    let det = Matrix::from_rows(rows?)?.det()?;
    let mut w_rev = w.to_vec();
    w_rev.reverse();
    det.div(&(vandermonde_up(l) * vandermonde_up(&w_rev)))
}

/// `prod_k f(l, w_k)`.
fn a_xxx<F: Field>(l: &F, w: &[F]) -> Result<F> {
    let mut acc = F::one();
    for wk in w {
        let d = l.clone() - wk.clone();
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("lambda = w = {l}")));
        }
        acc = acc * (d.clone() + F::one()).div(&d)?;
    }
    Ok(acc)
}

/// Kostov's `n x n` determinant, valid for `n <= |w|`:
/// `det(l_i^{j-1} prod_k f(l_i, w_k) - (l_i + 1)^{j-1}) / prod_{i<j} (l_j - l_i)`.
pub fn kostov<F: Field>(l: &[F], w: &[F]) -> Result<F> {
    if l.len() > w.len() {
        return Err(Error::SizeError(format!("{} rows for {} columns", l.len(), w.len())));
    }
    check_dwpf_sets(l, w)?;
    let n = l.len();
    let mut rows = Vec::with_capacity(n);
    for li in l {
        let a = a_xxx(li, w)?;
        let shifted = li.clone() + F::one();
        rows.push((0..n as u32).map(|j| li.pow(j) * a.clone() - shifted.pow(j)).collect());
    }
    Matrix::from_rows(rows)?.det()?.div(&vandermonde_up(l))
}

/// Izergin-type form of the partial DWPF with `n = |l| < |w| = ell`: the first
/// `n` rows carry the (row-scaled) kernel, the last `ell - n` rows the powers
/// `w_j^{ell-n-1}, ..., w_j^0`.
pub fn izergin_partial<F: Field>(l: &[F], w: &[F]) -> Result<F> {
    let (n, ell) = (l.len(), w.len());
    if n > ell {
        return Err(Error::SizeError(format!("{n} rows for {ell} columns")));
    }
    check_dwpf_sets(l, w)?;
    let mut rows = Vec::with_capacity(ell);
    for li in l {
        rows.push(izergin_row(li, w)?);
    }
    for p in (0..(ell - n) as u32).rev() {
        rows.push(w.iter().map(|wj| wj.pow(p)).collect());
    }
    let det = if ell == 0 { F::one() } else { Matrix::from_rows(rows)?.det()? };
    let mut w_rev = w.to_vec();
    w_rev.reverse();
    det.div(&(vandermonde_up(l) * vandermonde_up(&w_rev)))
}

/// Lattice with rows `l` (top to bottom) and columns `w`; left edges 1, right
/// edges 2, top edges 1; bottom edges 2, or summed when `summed_bottom`.
pub fn domain_wall_lattice(l: &[Rat], w: &[Rat], summed_bottom: bool) -> LatticeSpec {
    let mut b = BTreeMap::new();
    for i in 1..=l.len() {
        b.insert(Edge::Left(i), Boundary::Fixed(1));
        b.insert(Edge::Right(i), Boundary::Fixed(2));
    }
    for j in 1..=w.len() {
        b.insert(Edge::Bottom(j), if summed_bottom { Boundary::Summed } else { Boundary::Fixed(2) });
        b.insert(Edge::Top(j), Boundary::Fixed(1));
    }
    LatticeSpec {
        rows: l.iter().map(|x| RowLine { rapidity: x.clone(), alphabet: 2 }).collect(),
        cols: w.iter().map(|x| ColLine { rapidity: x.clone(), alphabet: 2, dotted: false }).collect(),
        boundary: b,
    }
}

pub fn dwpf_izergin(input: &DwpfInput) -> Result<Rat> {
    izergin(&input.lambdas, &input.ws)
}

pub fn dwpf_kostov(input: &DwpfInput) -> Result<Rat> {
    check_len("w", &input.ws, input.lambdas.len())?;
    kostov(&input.lambdas, &input.ws)
}

pub fn dwpf_lattice(input: &DwpfInput) -> Result<Rat> {
    check_len("w", &input.ws, input.lambdas.len())?;
    check_dwpf_sets(&input.lambdas, &input.ws)?;
    contract_lattice(&domain_wall_lattice(&input.lambdas, &input.ws, false))
}

/// Partial DWPF with `n = |lambdas| < ell = |ws|`.
pub fn pdwpf(input: &DwpfInput, formula: PdwpfFormula) -> Result<Rat> {
    let (n, ell) = (input.lambdas.len(), input.ws.len());
    if n >= ell {
        return Err(Error::SizeError(format!("partial DWPF needs n < ell, got n = {n}, ell = {ell}")));
    }
    match formula {
        PdwpfFormula::Izergin => izergin_partial(&input.lambdas, &input.ws),
        PdwpfFormula::Kostov => kostov(&input.lambdas, &input.ws),
        PdwpfFormula::Lattice => {
            check_dwpf_sets(&input.lambdas, &input.ws)?;
            contract_lattice(&domain_wall_lattice(&input.lambdas, &input.ws, true))
        }
    }
}

/// `Z(l|w)` as a symbolic expression in the variables `l ++ w`.
pub struct IzerginExpr {
    pub n: usize,
}

impl Symbolic for IzerginExpr {
    fn eval<F: Field>(&self, v: &[F]) -> Result<F> {
        izergin(&v[..self.n], &v[self.n..])
    }
}

/// `lim prod x_i * Z` with every rapidity of `side` sent to infinity, highest
/// index first. `fixed` holds the other set; when empty, `0, 2, 4, ...` is used.
pub fn dwpf_all_infinite(side: Side, ell: usize, fixed: &[Rat]) -> Result<Rat> {
    if ell == 0 || ell > MAX_ACTIVE {
        return Err(Error::Unsupported(format!("all-infinite limit for ell = {ell}")));
    }
    let fixed: Vec<Rat> = if fixed.is_empty() { (0..ell as i64).map(|k| Rat::int(2 * k)).collect() } else { fixed.to_vec() };
    check_len("fixed", &fixed, ell)?;
    // Placeholders for the active set; they are replaced by tower variables.
    let active: Vec<Rat> = (0..ell as i64).map(|k| Rat::int(1000 + k)).collect();
    let (point, offset) = match side {
        Side::Lambda => ([active, fixed].concat(), 0),
        Side::W => ([fixed, active].concat(), ell),
    };
    let order: Vec<usize> = (0..ell).rev().map(|k| k + offset).collect();
    sequential_limit(&IzerginExpr { n: ell }, &point, &order, 1)
}

/// `ell!` for the rapidity side, `(-1)^ell ell!` for the inhomogeneity side.
pub fn all_infinite_closed_form(side: Side, ell: usize) -> Rat {
    let f = Rat::factorial(ell);
    match side {
        Side::Lambda => f,
        Side::W if ell % 2 == 1 => -f,
        Side::W => f,
    }
}

/// `lim_{l_i -> inf} Z(l|w)`, which vanishes.
pub fn decay_limit(l: &[Rat], w: &[Rat], i: usize) -> Result<Rat> {
    check_len("w", w, l.len())?;
    as_function_of(&IzerginExpr { n: l.len() }, &[l, w].concat(), i)?.limit(0)
}

/// Both sides of the residue relation at `l_i = w_j`: `(l_i - w_j) Z(l|w)`
/// evaluated there as a function of `l_i`, and
/// `f(w_j, w minus w_j) f(l minus l_i, w_j) Z(l minus l_i | w minus w_j)`.
pub fn residue_check(l: &[Rat], w: &[Rat], i: usize, j: usize) -> Result<(Rat, Rat)> {
    check_len("w", w, l.len())?;
    if i >= l.len() || j >= w.len() {
        return Err(Error::SizeMismatch(format!("residue at ({i}, {j}) for size {}", l.len())));
    }
    let z = as_function_of(&IzerginExpr { n: l.len() }, &[l, w].concat(), i)?;
    let lhs = (z * (RatFunc::x() - RatFunc::from_rat(&w[j]))).eval(&w[j])?;
    let (mut l_hat, mut w_hat) = (l.to_vec(), w.to_vec());
    l_hat.remove(i);
    w_hat.remove(j);
    let wj = std::slice::from_ref(&w[j]);
    let rhs = f_sets(wj, &w_hat)? * f_sets(&l_hat, wj)? * izergin(&l_hat, &w_hat)?;
    Ok((lhs, rhs))
}
