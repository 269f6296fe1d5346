//! Inhomogeneous SU(3) chain whose first sites carry the fundamental and whose
//! last sites carry the anti-fundamental representation: monodromy entries,
//! nested Bethe vectors, the direct scalar product, Bethe equations and the
//! transfer-matrix eigenvalue.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lift, Field, Rat};
use crate::monodromy::{monodromy, Site};
use crate::numeric::{self, NewtonOptions, C};
use crate::operator::{Operator, StateVec};
use crate::sets::check_distinct;
use crate::spinchain_su2::EigenfunctionSpec;
use crate::vertexmodel::{f_weight, rmatrix_entries, VertexKind};

/// Largest chain handled by the explicit operator construction.
pub const MAX_SITES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su3ChainSpec {
    /// Inhomogeneities of the fundamental sites.
    pub ws: Vec<Rat>,
    /// Inhomogeneities of the anti-fundamental sites.
    pub vs: Vec<Rat>,
}

impl Su3ChainSpec {
    pub fn new(ws: Vec<Rat>, vs: Vec<Rat>) -> Result<Self> {
        let s = Su3ChainSpec { ws, vs };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ws.len() + self.vs.len() > MAX_SITES {
            return Err(Error::SizeError(format!(
                "chain of {} sites (max {MAX_SITES})",
                self.ws.len() + self.vs.len()
            )));
        }
        check_distinct("w and v", &[self.ws.clone(), self.vs.clone()].concat())
    }

    pub fn sites(&self) -> usize {
        self.ws.len() + self.vs.len()
    }

    /// `a1 = prod f(x, w)`.
    pub fn a1(&self) -> EigenfunctionSpec {
        EigenfunctionSpec::XxxFundamental(self.ws.clone())
    }

    /// `a3 = prod f(v, x)`.
    pub fn a3(&self) -> EigenfunctionSpec {
        EigenfunctionSpec::XxxAntiFundamental(self.vs.clone())
    }
}

/// `T(l) = R(l, w_1) ... R(l, w_L) R*(l, v_1) ... R*(l, v_M)` as a 3 x 3
/// matrix of operators. The empty chain gives the identity on a
/// one-dimensional space.
pub fn su3_monodromy<S: Field>(l: &S, ws: &[S], vs: &[S]) -> Result<Vec<Vec<Operator<S>>>> {
    let sites: Vec<Site<S>> = ws
        .iter()
        .map(|w| Site { kind: VertexKind::Su3, rapidity: w.clone() })
        .chain(vs.iter().map(|v| Site { kind: VertexKind::Su3Star, rapidity: v.clone() }))
        .collect();
    if sites.is_empty() {
        return Ok((0..3)
            .map(|a| (0..3).map(|b| if a == b { Operator::identity(1) } else { Operator::zero(1) }).collect())
            .collect());
    }
    monodromy(l, &sites)
}

/// The entry `t_ij(l)` with 1-based `i, j`.
pub fn su3_monodromy_entry(i: usize, j: usize, l: &Rat, spec: &Su3ChainSpec) -> Result<Operator> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::SizeError(format!("monodromy entry ({i}, {j})")));
    }
    spec.validate()?;
    let mut t = su3_monodromy(l, &spec.ws, &spec.vs)?;
    Ok(t[i - 1].swap_remove(j - 1))
}

/// State 1 on every fundamental site and state 3 on every anti-fundamental site.
pub fn su3_vacuum<S: Field>(n_w: usize, n_v: usize) -> StateVec<S> {
    StateVec::basis(3usize.pow((n_w + n_v) as u32), su3_vacuum_index(n_w, n_v))
}

fn su3_vacuum_index(n_w: usize, n_v: usize) -> usize {
    let mut idx = 0;
    for _ in 0..n_w {
        idx *= 3;
    }
    for _ in 0..n_v {
        idx = idx * 3 + 2;
    }
    idx
}

/// `I_{2^i} (x) op (x) I_{2^(n-i-1)}` on `n` auxiliary two-state spaces.
fn aux_factor<S: Field>(op: &Operator<S>, i: usize, n: usize) -> Operator<S> {
    Operator::identity(1 << i).kron(op).kron(&Operator::identity(1 << (n - i - 1)))
}

type Block<S> = [[Operator<S>; 2]; 2];

fn block_mul<S: Field>(x: &Block<S>, y: &Block<S>) -> Block<S> {
    let entry = |a: usize, b: usize| x[a][0].mul(&y[0][b]).add(&x[a][1].mul(&y[1][b]));
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// The secondary monodromy on `H (x) V_1 (x) ... (x) V_n`, with the lower-right
/// 2 x 2 part `D` of `T(x)` and normalised SU(2) R-matrices coupling the
/// auxiliary index to the spaces `V_i` of the first-level rapidities:
/// `D(x) R(x, l_n) ... R(x, l_1)` for kets and `R(x, l_n) ... R(x, l_1) D(x)`
/// for duals.
fn secondary_monodromy<S: Field>(x: &S, lam: &[S], ws: &[S], vs: &[S], dual: bool) -> Result<Block<S>> {
    let t = su3_monodromy(x, ws, vs)?;
    let dim = t[0][0].dim();
    let n = lam.len();
    let da = 1usize << n;
    let id_aux = Operator::identity(da);
    let id_h = Operator::identity(dim);
    let d: Block<S> = [
        [t[1][1].kron(&id_aux), t[1][2].kron(&id_aux)],
        [t[2][1].kron(&id_aux), t[2][2].kron(&id_aux)],
    ];
    let mut chain: Option<Block<S>> = None;
    for i in (0..n).rev() {
        let r = rmatrix_entries(VertexKind::Su2Normalized, x, &lam[i])?;
        let blk = |a: usize, b: usize| {
            let mut op = Operator::zero(2);
            for p in 0..2 {
                for q in 0..2 {
                    op.add_entry(p, q, r[(a * 2 + p) * 4 + b * 2 + q].clone());
                }
            }
            id_h.kron(&aux_factor(&op, i, n))
        };
        let e: Block<S> = [[blk(0, 0), blk(0, 1)], [blk(1, 0), blk(1, 1)]];
        chain = Some(match chain {
            None => e,
            Some(c) => block_mul(&c, &e),
        });
    }
    Ok(match (chain, dual) {
        (None, _) => d,
        (Some(c), false) => block_mul(&d, &c),
        (Some(c), true) => block_mul(&c, &d),
    })
}

/// Auxiliary multi-index `alpha` (most significant first) to the 2^n index.
fn alpha_index(alpha: usize, n: usize, i: usize) -> usize {
    (alpha >> (n - 1 - i)) & 1
}

/// The component of a vector on `H (x) V^n` along auxiliary basis state `alpha`.
fn aux_component<S: Field>(v: &StateVec<S>, alpha: usize, da: usize) -> StateVec<S> {
    let mut out = StateVec::zero(v.dim() / da);
    for (k, x) in v.entries() {
        if k % da == alpha {
            out.add_entry(k / da, x.clone());
        }
    }
    out
}

/// `B1(l_1) ... B1(l_n) B2(m_1) ... B2(m_k) |0> (x) |up>` with the auxiliary
/// legs contracted, over any field.
pub fn nested_bethe_state_in<S: Field>(lb: &[S], mb: &[S], ws: &[S], vs: &[S]) -> Result<StateVec<S>> {
    let n = lb.len();
    let da = 1usize << n;
    let vac = su3_vacuum_index(ws.len(), vs.len());
    let dim = 3usize.pow((ws.len() + vs.len()) as u32);
    let mut phi = StateVec::basis(dim * da, vac * da);
    for mu in mb.iter().rev() {
        let t2 = secondary_monodromy(mu, lb, ws, vs, false)?;
        phi = t2[0][1].apply(&phi);
    }
    let firsts: Vec<Vec<Vec<Operator<S>>>> = lb.iter().map(|l| su3_monodromy(l, ws, vs)).collect::<Result<_>>()?;
    let mut out = StateVec::zero(dim);
    for alpha in 0..da {
        let mut w = aux_component(&phi, alpha, da);
        for i in (0..n).rev() {
            if w.is_zero() {
                break;
            }
            w = firsts[i][0][1 + alpha_index(alpha, n, i)].apply(&w);
        }
        out = out.add(&w);
    }
    Ok(out)
}

/// `<0| (x) <up| C2(m_1) ... C2(m_k) C1(l_1) ... C1(l_n)` with the auxiliary
/// legs contracted, as a row vector over any field.
pub fn dual_nested_bethe_state_in<S: Field>(lc: &[S], mc: &[S], ws: &[S], vs: &[S]) -> Result<StateVec<S>> {
    let n = lc.len();
    let da = 1usize << n;
    let vac = su3_vacuum_index(ws.len(), vs.len());
    let dim = 3usize.pow((ws.len() + vs.len()) as u32);
    let mut phi = StateVec::basis(dim * da, vac * da);
    for mu in mc {
        let t2 = secondary_monodromy(mu, lc, ws, vs, true)?;
        phi = t2[1][0].apply_left(&phi);
    }
    let firsts: Vec<Vec<Vec<Operator<S>>>> = lc.iter().map(|l| su3_monodromy(l, ws, vs)).collect::<Result<_>>()?;
    let mut out = StateVec::zero(dim);
    for alpha in 0..da {
        let mut w = aux_component(&phi, alpha, da);
        for i in 0..n {
            if w.is_zero() {
                break;
            }
            w = firsts[i][1 + alpha_index(alpha, n, i)][0].apply_left(&w);
        }
        out = out.add(&w);
    }
    Ok(out)
}

pub fn nested_bethe_state(lb: &[Rat], mb: &[Rat], spec: &Su3ChainSpec) -> Result<StateVec> {
    spec.validate()?;
    check_distinct("lambda_B", lb)?;
    check_distinct("mu_B", mb)?;
    nested_bethe_state_in(lb, mb, &spec.ws, &spec.vs)
}

pub fn dual_nested_bethe_state(lc: &[Rat], mc: &[Rat], spec: &Su3ChainSpec) -> Result<StateVec> {
    spec.validate()?;
    check_distinct("lambda_C", lc)?;
    check_distinct("mu_C", mc)?;
    dual_nested_bethe_state_in(lc, mc, &spec.ws, &spec.vs)
}

/// `prod_{x in a, y in b} f(x, y)`.
fn f_cross<S: Field>(a: &[S], b: &[S]) -> Result<S> {
    let mut acc = S::one();
    for x in a {
        for y in b {
            acc = acc * f_weight(x, y)?;
        }
    }
    Ok(acc)
}

/// `f(mC, lC) f(mB, lB) <mC, lC | lB, mB>` over any field.
pub fn su3_scalar_product_direct_in<S: Field>(
    mc: &[S],
    lc: &[S],
    lb: &[S],
    mb: &[S],
    ws: &[S],
    vs: &[S],
) -> Result<S> {
    if lc.len() != lb.len() || mc.len() != mb.len() {
        return Err(Error::SizeMismatch(format!(
            "|lambda_C|, |lambda_B|, |mu_C|, |mu_B| = {}, {}, {}, {}",
            lc.len(),
            lb.len(),
            mc.len(),
            mb.len()
        )));
    }
    let pre = f_cross(mc, lc)? * f_cross(mb, lb)?;
    let bra = dual_nested_bethe_state_in(lc, mc, ws, vs)?;
    let ket = nested_bethe_state_in(lb, mb, ws, vs)?;
    Ok(pre * bra.dot(&ket))
}

pub fn su3_scalar_product_direct(
    mc: &[Rat],
    lc: &[Rat],
    lb: &[Rat],
    mb: &[Rat],
    spec: &Su3ChainSpec,
) -> Result<Rat> {
    spec.validate()?;
    for (name, s) in [("mu_C", mc), ("lambda_C", lc), ("lambda_B", lb), ("mu_B", mb)] {
        check_distinct(name, s)?;
    }
    su3_scalar_product_direct_in(mc, lc, lb, mb, &spec.ws, &spec.vs)
}

/// `prod_j (x - y_j + 1)/(x - y_j - 1)` including `y_j = x`, which gives -1.
fn ratio_product<F: Field>(x: &F, ys: &[F]) -> Result<F> {
    let mut p = F::one();
    for y in ys {
        let d = x.clone() - y.clone();
        p = p * (d.clone() + F::one()).div(&(d - F::one()))?;
    }
    Ok(p)
}

/// Residuals of both sets of Bethe equations for given ratio functions
/// `r1 = a1/a2` and `r2 = a2/a3`:
/// `r1(l_i) + prod_j (..) prod_k f(m_k, l_i)` and
/// `r2(m_i) + prod_j (..) prod_k 1/f(m_i, l_k)`.
pub fn su3_bethe_residuals_with<F, R1, R2>(l: &[F], m: &[F], r1: R1, r2: R2) -> Result<(Vec<F>, Vec<F>)>
where
    F: Field,
    R1: Fn(&F) -> Result<F>,
    R2: Fn(&F) -> Result<F>,
{
    let mut first = Vec::with_capacity(l.len());
    for li in l {
        let mut p = ratio_product(li, l)?;
        for mk in m {
            p = p * f_weight(mk, li)?;
        }
        first.push(r1(li)? + p);
    }
    let mut second = Vec::with_capacity(m.len());
    for mi in m {
        let mut p = ratio_product(mi, m)?;
        for lk in l {
            p = p.div(&f_weight(mi, lk)?)?;
        }
        second.push(r2(mi)? + p);
    }
    Ok((first, second))
}

pub fn su3_bethe_residuals(
    l: &[Rat],
    m: &[Rat],
    spec_r1: &EigenfunctionSpec,
    spec_r2: &EigenfunctionSpec,
) -> Result<(Vec<Rat>, Vec<Rat>)> {
    su3_bethe_residuals_with(l, m, |x| spec_r1.eval(x), |x| spec_r2.eval(x))
}

/// Bethe residuals for the chain itself, with `r1 = a1` and `r2 = 1/a3`.
pub fn su3_chain_bethe_residuals<F: Field>(l: &[F], m: &[F], spec: &Su3ChainSpec) -> Result<(Vec<F>, Vec<F>)> {
    let (a1, a3) = (spec.a1(), spec.a3());
    su3_bethe_residuals_with(l, m, |x| a1.eval(x), |x| F::one().div(&a3.eval(x)?))
}

/// `a1(x) prod f(l_i, x) + a2(x) prod f(m_i, x) prod f(x, l_j) + a3(x) prod f(x, m_i)`.
pub fn su3_transfer_eigenvalue<S: Field>(x: &S, l: &[S], m: &[S], spec: &Su3ChainSpec) -> Result<S> {
    let a1 = spec.a1().eval(x)?;
    let a3 = spec.a3().eval(x)?;
    let xs = std::slice::from_ref(x);
    Ok(a1 * f_cross(l, xs)? + f_cross(m, xs)? * f_cross(xs, l)? + a3 * f_cross(xs, m)?)
}

/// Eigenvalue of the secondary transfer matrix,
/// `a2(x) prod f(m_i, x) + a3(x) prod 1/f(x, l_k) prod f(x, m_i)`.
/// `1/f(x, y) = (x - y)/(x - y + 1)` stays finite at `x = y`.
pub fn nested_transfer_eigenvalue<S: Field>(x: &S, l: &[S], m: &[S], spec: &Su3ChainSpec) -> Result<S> {
    let a3 = spec.a3().eval(x)?;
    let xs = std::slice::from_ref(x);
    let mut inv = S::one();
    for lk in l {
        let d = x.clone() - lk.clone();
        inv = inv * d.clone().div(&(d + S::one()))?;
    }
    Ok(f_cross(m, xs)? + a3 * inv * f_cross(xs, m)?)
}

/// `(t11 + t22 + t33)(x)|psi> - Lambda(x)|psi>` and `|psi>` for the nested
/// Bethe vector at `(l, m)`.
pub fn su3_transfer_residual<S: Field>(
    x: &S,
    l: &[S],
    m: &[S],
    spec: &Su3ChainSpec,
) -> Result<(StateVec<S>, StateVec<S>)> {
    let ws: Vec<S> = lift(&spec.ws);
    let vs: Vec<S> = lift(&spec.vs);
    let psi = nested_bethe_state_in(l, m, &ws, &vs)?;
    let t = su3_monodromy(x, &ws, &vs)?;
    let tpsi = t[0][0].add(&t[1][1]).add(&t[2][2]).apply(&psi);
    let lam = su3_transfer_eigenvalue(x, l, m, spec)?;
    Ok((tpsi.sub(&psi.scale(&lam)), psi))
}

/// Floating-point `|| T(x) psi - Lambda(x) psi ||_inf / || psi ||_inf`.
pub fn su3_transfer_check(x: &Rat, l: &[C], m: &[C], spec: &Su3ChainSpec) -> Result<f64> {
    let (res, psi) = su3_transfer_residual(&C::from_rat(x), l, m, spec)?;
    let n = psi.max_norm();
    if n == 0.0 {
        return Err(Error::NoConvergence("Bethe vector vanishes at these roots".into()));
    }
    Ok(res.max_norm() / n)
}

/// Both Bethe equation sets with all denominators cleared.
fn su3_bethe_polynomial(l: &[C], m: &[C], w: &[C], v: &[C]) -> Vec<C> {
    let one = C::new(1.0, 0.0);
    let mut out = Vec::with_capacity(l.len() + m.len());
    for (i, li) in l.iter().enumerate() {
        let (mut p, mut q) = (one, one);
        for wk in w {
            p *= li - wk + one;
            q *= li - wk;
        }
        for (j, lj) in l.iter().enumerate() {
            if j != i {
                p *= li - lj - one;
                q *= li - lj + one;
            }
        }
        for mk in m {
            p *= mk - li;
            q *= mk - li + one;
        }
        out.push(p - q);
    }
    for (i, mi) in m.iter().enumerate() {
        let (mut p, mut q) = (one, one);
        for vk in v {
            p *= vk - mi;
            q *= vk - mi + one;
        }
        for (j, mj) in m.iter().enumerate() {
            if j != i {
                p *= mi - mj - one;
                q *= mi - mj + one;
            }
        }
        for lk in l {
            p *= mi - lk + one;
            q *= mi - lk;
        }
        out.push(p - q);
    }
    out
}

const SEPARATION: f64 = 1e-6;

fn separated(z: &[C], others: &[C]) -> bool {
    let one = C::new(1.0, 0.0);
    let near = |d: C| d.norm() < SEPARATION || (d - one).norm() < SEPARATION || (d + one).norm() < SEPARATION;
    for (i, a) in z.iter().enumerate() {
        if others.iter().any(|b| (a - b).norm() < SEPARATION) {
            return false;
        }
        if z[i + 1..].iter().any(|b| near(a - b)) {
            return false;
        }
    }
    true
}

/// Numeric on-shell rapidities `(lambda, mu)` for the chain, by seeded
/// multi-start Newton on the cleared Bethe equations. Solutions must pass the
/// rational-form residual check below 1e-10 and keep all rapidities apart
/// from each other and from the inhomogeneities.
pub fn solve_su3_bethe_numeric(spec: &Su3ChainSpec, n_l: usize, n_m: usize, seed: u64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    spec.validate()?;
    if n_l + n_m == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let wc: Vec<C> = lift(&spec.ws);
    let vc: Vec<C> = lift(&spec.vs);
    let all: Vec<C> = wc.iter().chain(&vc).copied().collect();
    let lo = all.iter().map(|z| z.re).fold(0.0, f64::min) - 2.0;
    let hi = all.iter().map(|z| z.re).fold(0.0, f64::max) + 2.0;
    let opts = NewtonOptions::default();
    let sols = numeric::multistart(
        |z: &[C]| su3_bethe_polynomial(&z[..n_l], &z[n_l..], &wc, &vc),
        |r| (0..n_l + n_m).map(|_| numeric::random_point(r, (lo, hi), (-2.0, 2.0))).collect(),
        |z| {
            let (l, m) = z.split_at(n_l);
            let joined: Vec<C> = l.iter().chain(m).copied().collect();
            separated(&joined, &all)
                && su3_chain_bethe_residuals(l, m, spec)
                    .map(|(a, b)| a.iter().chain(&b).all(|c| c.norm() < 1e-10))
                    .unwrap_or(false)
        },
        |z| {
            let (l, m) = z.split_at(n_l);
            [numeric::sort_roots(l.to_vec()), numeric::sort_roots(m.to_vec())].concat()
        },
        seed,
        &opts,
    );
    let z = sols
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoConvergence(format!("no admissible root set after {} starts", opts.starts)))?;
    let (l, m) = z.split_at(n_l);
    Ok((l.to_vec(), m.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RatFunc;
    use crate::vertexmodel::{weight_f, weight_g};

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    fn chain(ws: &[Rat], vs: &[Rat]) -> Su3ChainSpec {
        Su3ChainSpec::new(ws.to_vec(), vs.to_vec()).unwrap()
    }

    #[test]
    fn pseudo_vacuum_laws() {
        let spec = chain(&[r(0), Rat::new(1, 2)], &[r(4)]);
        let vac = su3_vacuum::<Rat>(2, 1);
        for l in [r(7), Rat::new(-5, 3), r(11)] {
            let t = su3_monodromy(&l, &spec.ws, &spec.vs).unwrap();
            let a = [spec.a1().eval(&l).unwrap(), Rat::one(), spec.a3().eval(&l).unwrap()];
            for i in 0..3 {
                assert_eq!(t[i][i].apply(&vac), vac.scale(&a[i]));
                for j in 0..i {
                    assert!(t[i][j].apply(&vac).is_zero(), "t{}{} |0>", i + 1, j + 1);
                    assert!(t[j][i].apply_left(&vac).is_zero(), "<0| t{}{}", j + 1, i + 1);
                }
            }
        }
    }

    #[test]
    fn commutation_t32_t12() {
        let spec = chain(&[r(0)], &[Rat::new(5, 2)]);
        let (x, y) = (Rat::new(7, 3), r(-4));
        let tx = su3_monodromy(&x, &spec.ws, &spec.vs).unwrap();
        let ty = su3_monodromy(&y, &spec.ws, &spec.vs).unwrap();
        let f = weight_f(&x, &y).unwrap();
        let g = weight_g(&x, &y).unwrap();
        let lhs = tx[2][1].mul(&ty[0][1]);
        let rhs = ty[0][1].mul(&tx[2][1]).scale(&f).sub(&tx[0][1].mul(&ty[2][1]).scale(&g));
        assert_eq!(lhs, rhs);
    }

    fn intertwining_holds(ws: &[Rat], vs: &[Rat]) {
        let (l, m) = (Rat::new(9, 2), r(-3));
        let tl = su3_monodromy(&l, ws, vs).unwrap();
        let tm = su3_monodromy(&m, ws, vs).unwrap();
        let rm = rmatrix_entries(VertexKind::Su3, &l, &m).unwrap();
        let at = |a: usize, b: usize, c: usize, d: usize| rm[(a * 3 + b) * 9 + c * 3 + d].clone();
        let dim = tl[0][0].dim();
        for a in 0..3 {
            for b in 0..3 {
                for e in 0..3 {
                    for f in 0..3 {
                        let (mut lhs, mut rhs) = (Operator::zero(dim), Operator::zero(dim));
                        for c in 0..3 {
                            for d in 0..3 {
                                lhs = lhs.add(&tl[c][e].mul(&tm[d][f]).scale(&at(a, b, c, d)));
                                rhs = rhs.add(&tm[b][d].mul(&tl[a][c]).scale(&at(c, d, e, f)));
                            }
                        }
                        assert_eq!(lhs, rhs, "component ({a}{b},{e}{f})");
                    }
                }
            }
        }
    }

    #[test]
    fn intertwining_on_single_site_chains() {
        intertwining_holds(&[r(1)], &[]);
        intertwining_holds(&[], &[Rat::new(1, 3)]);
    }

    #[test]
    fn empty_states_are_the_vacuum() {
        let spec = chain(&[r(0)], &[r(3)]);
        assert_eq!(nested_bethe_state(&[], &[], &spec).unwrap(), su3_vacuum(1, 1));
        assert_eq!(dual_nested_bethe_state(&[], &[], &spec).unwrap(), su3_vacuum(1, 1));
        assert_eq!(su3_scalar_product_direct(&[], &[], &[], &[], &spec).unwrap(), Rat::one());
    }

    #[test]
    fn single_first_level_rapidity_is_t12() {
        // (l, m) = (1, 0) chain: the state is t12(l)|0>
        let spec = chain(&[r(0)], &[]);
        let l = r(3);
        let psi = nested_bethe_state(std::slice::from_ref(&l), &[], &spec).unwrap();
        let t12 = su3_monodromy_entry(1, 2, &l, &spec).unwrap();
        assert_eq!(psi, t12.apply(&su3_vacuum(1, 0)));
        assert_eq!(psi.get(1), weight_g(&l, &r(0)).unwrap());
    }

    #[test]
    fn second_level_only_is_t23() {
        // (0, 1): nested structure collapses to t23(m)|0>
        let spec = chain(&[], &[r(2)]);
        let m = r(-1);
        let psi = nested_bethe_state(&[], std::slice::from_ref(&m), &spec).unwrap();
        let t23 = su3_monodromy_entry(2, 3, &m, &spec).unwrap();
        assert_eq!(psi, t23.apply(&su3_vacuum(0, 1)));
        let dual = dual_nested_bethe_state(&[], std::slice::from_ref(&m), &spec).unwrap();
        let t32 = su3_monodromy_entry(3, 2, &m, &spec).unwrap();
        assert_eq!(dual, t32.apply_left(&su3_vacuum(0, 1)));
    }

    #[test]
    fn first_level_rapidities_commute_in_the_ket() {
        let spec = chain(&[r(0), Rat::new(1, 2)], &[r(5)]);
        let (a, b) = (Rat::new(7, 3), r(-4));
        let mb = [Rat::new(13, 2)];
        let s1 = nested_bethe_state(&[a.clone(), b.clone()], &mb, &spec).unwrap();
        let s2 = nested_bethe_state(&[b, a], &mb, &spec).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn residual_reductions() {
        let one = EigenfunctionSpec::One;
        let t = EigenfunctionSpec::table([(r(2), r(5))]);
        let (a, b) = su3_bethe_residuals(&[r(2)], &[], &t, &one).unwrap();
        assert_eq!((a, b), (vec![r(4)], vec![]));
        let (a, b) = su3_bethe_residuals(&[], &[r(2)], &one, &t).unwrap();
        assert_eq!((a, b), (vec![], vec![r(4)]));
    }

    /// `l = w + d, m = w + 2d, v = w + 3d` solves both Bethe equations on
    /// the (1, 1) chain.
    fn exact_on_shell() -> (Su3ChainSpec, Rat, Rat) {
        let (w, v) = (r(1), r(7));
        let d = Rat::new(2, 1);
        (chain(std::slice::from_ref(&w), &[v]), &w + &d, &w + &(&d + &d))
    }

    #[test]
    fn exact_on_shell_vector_is_an_eigenvector() {
        let (spec, l, m) = exact_on_shell();
        let (a, b) = su3_chain_bethe_residuals(std::slice::from_ref(&l), std::slice::from_ref(&m), &spec).unwrap();
        assert!(a[0].is_zero() && b[0].is_zero());
        for x in [r(-2), Rat::new(11, 3), r(20)] {
            let (res, psi) = su3_transfer_residual(&x, std::slice::from_ref(&l), std::slice::from_ref(&m), &spec).unwrap();
            assert!(!psi.is_zero());
            assert!(res.is_zero(), "x = {x}");
        }
    }

    #[test]
    fn vacuum_eigenvalue_and_nested_value() {
        let spec = chain(&[r(0)], &[r(3)]);
        let x = Rat::new(5, 2);
        let (res, _) = su3_transfer_residual(&x, &[], &[], &spec).unwrap();
        assert!(res.is_zero());
        let (l, m) = ([r(6), Rat::new(1, 3)], [r(-7)]);
        let at = nested_transfer_eigenvalue(&l[1], &l, &m, &spec).unwrap();
        assert_eq!(at, weight_f(&m[0], &l[1]).unwrap());
    }

    #[test]
    fn numeric_one_one_solution() {
        let spec = chain(&[r(0)], &[Rat::new(1, 2)]);
        let (l, m) = solve_su3_bethe_numeric(&spec, 1, 1, 11).unwrap();
        let (a, b) = su3_chain_bethe_residuals(&l, &m, &spec).unwrap();
        assert!(a[0].norm() < 1e-10 && b[0].norm() < 1e-10);
        assert!(su3_transfer_check(&r(3), &l, &m, &spec).unwrap() < 1e-8);
        assert_eq!(solve_su3_bethe_numeric(&spec, 1, 1, 11).unwrap(), (l, m));
    }

    #[test]
    fn generic_field_matches_rational() {
        let (w, v) = ([r(0)], [r(4)]);
        let (lc, lb, mc, mb) = ([r(9)], [r(-6)], [Rat::new(5, 2)], [Rat::new(-11, 3)]);
        let exact = su3_scalar_product_direct(&mc, &lc, &lb, &mb, &chain(&w, &v)).unwrap();
        let lf = |s: &[Rat]| -> Vec<RatFunc> { lift(s) };
        let sym = su3_scalar_product_direct_in(&lf(&mc), &lf(&lc), &lf(&lb), &lf(&mb), &lf(&w), &lf(&v)).unwrap();
        assert_eq!(sym.as_rat(), Some(exact));
    }
}
