//! Inhomogeneous XXX spin-1/2 chain: monodromy entries, Bethe vectors, direct
//! scalar products and Bethe equations, with a floating-point on-shell check.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lift, product, Field, Rat};
use crate::monodromy::{monodromy, Site};
use crate::numeric::{self, NewtonOptions, C};
use crate::operator::{Operator, StateVec};
use crate::sets::check_distinct;
use crate::vertexmodel::{f_weight, VertexKind};

/// A pseudo-vacuum eigenvalue function such as a(x), d(x) or r(x) = a(x)/d(x).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenfunctionSpec {
    /// `prod_i f(x, w_i)`.
    XxxFundamental(Vec<Rat>),
    /// `prod_j f(v_j, x)`.
    XxxAntiFundamental(Vec<Rat>),
    /// Free constants keyed by the exact argument.
    ConstantTable(BTreeMap<Rat, Rat>),
    One,
}

impl EigenfunctionSpec {
    pub fn eval<F: Field>(&self, x: &F) -> Result<F> {
        match self {
            EigenfunctionSpec::XxxFundamental(w) => {
                let mut acc = F::one();
                for wi in w {
                    acc = acc * f_weight(x, &F::from_rat(wi))?;
                }
                Ok(acc)
            }
            EigenfunctionSpec::XxxAntiFundamental(v) => {
                let mut acc = F::one();
                for vj in v {
                    acc = acc * f_weight(&F::from_rat(vj), x)?;
                }
                Ok(acc)
            }
            EigenfunctionSpec::ConstantTable(t) => {
                let key = x.as_rat().ok_or_else(|| Error::MissingConstant(format!("non-constant argument {x}")))?;
                t.get(&key).map(F::from_rat).ok_or_else(|| Error::MissingConstant(key.to_string()))
            }
            EigenfunctionSpec::One => Ok(F::one()),
        }
    }

    pub fn table(pairs: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        EigenfunctionSpec::ConstantTable(pairs.into_iter().collect())
    }
}

/// `prod_x spec(x)` over a set.
pub fn eval_product<F: Field>(spec: &EigenfunctionSpec, xs: &[F]) -> Result<F> {
    let vals: Result<Vec<F>> = xs.iter().map(|x| spec.eval(x)).collect();
    Ok(product(vals?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Su2Entry {
    A,
    B,
    C,
    D,
}

fn sites<S: Field>(w: &[S]) -> Vec<Site<S>> {
    w.iter().map(|x| Site { kind: VertexKind::Su2, rapidity: x.clone() }).collect()
}

/// The four entries `[[A, B], [C, D]]` of the monodromy at `l`.
pub fn su2_monodromy<S: Field>(l: &S, w: &[S]) -> Result<Vec<Vec<Operator<S>>>> {
    monodromy(l, &sites(w))
}

pub fn su2_monodromy_entry(entry: Su2Entry, l: &Rat, w: &[Rat]) -> Result<Operator> {
    let mut t = su2_monodromy(l, w)?;
    let (a, b) = match entry {
        Su2Entry::A => (0, 0),
        Su2Entry::B => (0, 1),
        Su2Entry::C => (1, 0),
        Su2Entry::D => (1, 1),
    };
    Ok(t[a].swap_remove(b))
}

/// All spins in state 1.
pub fn vacuum<S: Field>(sites: usize) -> StateVec<S> {
    StateVec::basis(2usize.pow(sites as u32), 0)
}

/// `B(l_1) ... B(l_n)|0>` over any field.
pub fn bethe_state_in<S: Field>(lb: &[S], w: &[S]) -> Result<StateVec<S>> {
    let mut v = vacuum(w.len());
    for l in lb.iter().rev() {
        v = su2_monodromy(l, w)?[0][1].apply(&v);
    }
    Ok(v)
}

/// `<0| C(l_1) ... C(l_n)` over any field, as a row vector.
pub fn dual_bethe_state_in<S: Field>(lc: &[S], w: &[S]) -> Result<StateVec<S>> {
    let mut v = vacuum(w.len());
    for l in lc {
        v = su2_monodromy(l, w)?[1][0].apply_left(&v);
    }
    Ok(v)
}

pub fn bethe_state(lb: &[Rat], w: &[Rat]) -> Result<StateVec> {
    check_distinct("lambda_B", lb)?;
    bethe_state_in(lb, w)
}

pub fn dual_bethe_state(lc: &[Rat], w: &[Rat]) -> Result<StateVec> {
    check_distinct("lambda_C", lc)?;
    dual_bethe_state_in(lc, w)
}

/// `<0| prod C(lc) prod B(lb) |0>` by explicit operator application.
pub fn su2_scalar_product_direct(lc: &[Rat], lb: &[Rat], w: &[Rat]) -> Result<Rat> {
    if lc.len() != lb.len() {
        return Err(Error::SizeMismatch(format!("|lambda_C| = {} but |lambda_B| = {}", lc.len(), lb.len())));
    }
    Ok(dual_bethe_state(lc, w)?.dot(&bethe_state(lb, w)?))
}

/// `r(l_i) + prod_j (l_i - l_j + 1)/(l_i - l_j - 1)` with `r = a/d`; the
/// product includes `j = i`, which contributes -1.
pub fn bethe_residual_in<F: Field>(l: &[F], spec_a: &EigenfunctionSpec, spec_d: &EigenfunctionSpec) -> Result<Vec<F>> {
    let mut out = Vec::with_capacity(l.len());
    for li in l {
        let r = spec_a.eval(li)?.div(&spec_d.eval(li)?)?;
        let mut p = F::one();
        for lj in l {
            let d = li.clone() - lj.clone();
            p = p * (d.clone() + F::one()).div(&(d - F::one()))?;
        }
        out.push(r + p);
    }
    Ok(out)
}

pub fn bethe_residual(l: &[Rat], spec_a: &EigenfunctionSpec, spec_d: &EigenfunctionSpec) -> Result<Vec<Rat>> {
    bethe_residual_in(l, spec_a, spec_d)
}

/// `a(x) prod f(l_i, x) + d(x) prod f(x, l_i)` for the XXX chain (d = 1).
pub fn su2_transfer_eigenvalue<S: Field>(x: &S, l: &[S], w: &[S]) -> Result<S> {
    let mut a = S::one();
    for wi in w {
        a = a * f_weight(x, wi)?;
    }
    let (mut p1, mut p2) = (S::one(), S::one());
    for li in l {
        p1 = p1 * f_weight(li, x)?;
        p2 = p2 * f_weight(x, li)?;
    }
    Ok(a * p1 + p2)
}

/// `(A(x) + D(x))|psi> - Lambda(x)|psi>` for the Bethe vector at `l`.
pub fn transfer_residual<S: Field>(x: &S, l: &[S], w: &[S]) -> Result<(StateVec<S>, StateVec<S>)> {
    let psi = bethe_state_in(l, w)?;
    let t = su2_monodromy(x, w)?;
    let tpsi = t[0][0].add(&t[1][1]).apply(&psi);
    let lam = su2_transfer_eigenvalue(x, l, w)?;
    Ok((tpsi.sub(&psi.scale(&lam)), psi))
}

/// Floating-point `|| T(x) psi - Lambda(x) psi ||_inf / || psi ||_inf`.
pub fn transfer_check(x: &Rat, roots: &[C], w: &[Rat]) -> Result<f64> {
    let wc: Vec<C> = lift(w);
    let (res, psi) = transfer_residual(&C::from_rat(x), roots, &wc)?;
    let n = psi.max_norm();
    if n == 0.0 {
        return Err(Error::NoConvergence("Bethe vector vanishes at these roots".into()));
    }
    Ok(res.max_norm() / n)
}

/// Bethe equations with denominators cleared:
/// `prod_k (l_i - w_k + 1) prod_{j!=i} (l_i - l_j - 1) - prod_k (l_i - w_k) prod_{j!=i} (l_i - l_j + 1)`.
fn su2_bethe_polynomial(l: &[C], w: &[C]) -> Vec<C> {
    let one = C::new(1.0, 0.0);
    (0..l.len())
        .map(|i| {
            let (mut p, mut q) = (one, one);
            for wk in w {
                p *= l[i] - wk + one;
                q *= l[i] - wk;
            }
            for (j, lj) in l.iter().enumerate() {
                if j != i {
                    p *= l[i] - lj - one;
                    q *= l[i] - lj + one;
                }
            }
            p - q
        })
        .collect()
}

const SEPARATION: f64 = 1e-6;

fn well_separated(l: &[C], w: &[C]) -> bool {
    let one = C::new(1.0, 0.0);
    for (i, li) in l.iter().enumerate() {
        if w.iter().any(|wk| (li - wk).norm() < SEPARATION) {
            return false;
        }
        for lj in &l[i + 1..] {
            let d = li - lj;
            if d.norm() < SEPARATION || (d - one).norm() < SEPARATION || (d + one).norm() < SEPARATION {
                return false;
            }
        }
    }
    true
}

/// Roots of the Bethe equations for the chain with `a(x) = prod f(x, w_i)`,
/// `d = 1`, found by seeded multi-start Newton. Returns the first solution in
/// (re, im) order among those that pass the rational-form residual check.
pub fn solve_bethe_numeric(sites: usize, w: &[Rat], n: usize, seed: u64) -> Result<Vec<Complex64>> {
    if w.len() != sites {
        return Err(Error::SizeMismatch(format!("{} inhomogeneities for {sites} sites", w.len())));
    }
    if n > sites {
        return Err(Error::SizeError(format!("{n} roots on {sites} sites")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let wc: Vec<C> = lift(w);
    let lo = wc.iter().map(|z| z.re).fold(f64::INFINITY, f64::min) - 2.0;
    let hi = wc.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max) + 2.0;
    let a = EigenfunctionSpec::XxxFundamental(w.to_vec());
    let sols = numeric::multistart(
        |z: &[C]| su2_bethe_polynomial(z, &wc),
        |r| (0..n).map(|_| numeric::random_point(r, (lo, hi), (-2.0, 2.0))).collect(),
        |z| {
            well_separated(z, &wc)
                && bethe_residual_in(z, &a, &EigenfunctionSpec::One)
                    .map(|res| res.iter().all(|c| c.norm() < 1e-10))
                    .unwrap_or(false)
        },
        numeric::sort_roots,
        seed,
        &NewtonOptions::default(),
    );
    sols.into_iter()
        .next()
        .ok_or_else(|| Error::NoConvergence(format!("no admissible root set after {} starts", NewtonOptions::default().starts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertexmodel::{g_weight, weight_f, weight_g};

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn single_site_products() {
        let w = [r(0)];
        let c = su2_monodromy_entry(Su2Entry::C, &r(3), &w).unwrap();
        let b = su2_monodromy_entry(Su2Entry::B, &r(2), &w).unwrap();
        let v = vacuum::<Rat>(1);
        let val = c.apply_left(&v).dot(&b.apply(&v));
        assert_eq!(val, weight_g(&r(3), &r(0)).unwrap() * weight_g(&r(2), &r(0)).unwrap());
        assert_eq!(su2_scalar_product_direct(&[r(3)], &[r(2)], &w).unwrap(), Rat::new(1, 6));
    }

    #[test]
    fn vacuum_eigenvalues() {
        let w = [Rat::new(1, 2), r(-3)];
        let l = r(4);
        let v = vacuum::<Rat>(2);
        let a = su2_monodromy_entry(Su2Entry::A, &l, &w).unwrap();
        let d = su2_monodromy_entry(Su2Entry::D, &l, &w).unwrap();
        let av = EigenfunctionSpec::XxxFundamental(w.to_vec()).eval(&l).unwrap();
        assert_eq!(a.apply(&v), v.scale(&av));
        assert_eq!(d.apply(&v), v);
        let one_site = su2_monodromy_entry(Su2Entry::A, &l, &w[..1]).unwrap();
        assert_eq!(one_site.apply(&vacuum(1)), vacuum::<Rat>(1).scale(&weight_f(&l, &w[0]).unwrap()));
        // annihilation laws
        assert!(su2_monodromy_entry(Su2Entry::C, &l, &w).unwrap().apply(&v).is_zero());
        assert!(su2_monodromy_entry(Su2Entry::B, &l, &w).unwrap().apply_left(&v).is_zero());
    }

    #[test]
    fn bethe_states() {
        let w = [r(0), r(5)];
        assert_eq!(bethe_state(&[], &w).unwrap(), vacuum(2));
        let (a, b) = (Rat::new(7, 2), r(-4));
        assert_eq!(bethe_state(&[a.clone(), b.clone()], &w).unwrap(), bethe_state(&[b, a], &w).unwrap());
        let one = bethe_state(&[r(2)], &[r(0)]).unwrap();
        assert_eq!(one.entries().len(), 1);
        assert_eq!(one.get(1), g_weight(&r(2), &r(0)).unwrap());
        assert!(matches!(bethe_state(&[r(1), r(1)], &w), Err(Error::DuplicateRapidity(_))));
    }

    #[test]
    fn commuting_b_operators() {
        let w = [r(0), Rat::new(1, 3), r(-2)];
        let (x, y) = (Rat::new(5, 2), r(7));
        let bx = su2_monodromy_entry(Su2Entry::B, &x, &w).unwrap();
        let by = su2_monodromy_entry(Su2Entry::B, &y, &w).unwrap();
        assert_eq!(bx.mul(&by), by.mul(&bx));
    }

    #[test]
    fn exchange_relations() {
        let w = [r(0), Rat::new(2, 3)];
        let (l, m) = (Rat::new(7, 3), r(-5));
        let t = |x: &Rat| su2_monodromy(x, &w).unwrap();
        let (tl, tm) = (t(&l), t(&m));
        let f = weight_f(&l, &m).unwrap();
        let g = weight_g(&l, &m).unwrap();
        // A(m)B(l) = f(l,m) B(l)A(m) - g(l,m) B(m)A(l)
        let lhs = tm[0][0].mul(&tl[0][1]);
        let rhs = tl[0][1].mul(&tm[0][0]).scale(&f).sub(&tm[0][1].mul(&tl[0][0]).scale(&g));
        assert_eq!(lhs, rhs);
        // D(m)B(l) = f(m,l) B(l)D(m) - g(m,l) B(m)D(l)
        let f2 = weight_f(&m, &l).unwrap();
        let g2 = weight_g(&m, &l).unwrap();
        let lhs = tm[1][1].mul(&tl[0][1]);
        let rhs = tl[0][1].mul(&tm[1][1]).scale(&f2).sub(&tm[0][1].mul(&tl[1][1]).scale(&g2));
        assert_eq!(lhs, rhs);
        // C(m)B(l) = B(l)C(m) + g(m,l) (A(l)D(m) - A(m)D(l))
        let lhs = tm[1][0].mul(&tl[0][1]);
        let rhs = tl[0][1]
            .mul(&tm[1][0])
            .add(&tl[0][0].mul(&tm[1][1]).sub(&tm[0][0].mul(&tl[1][1])).scale(&g2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn residual_examples() {
        let one = EigenfunctionSpec::One;
        let table = EigenfunctionSpec::table([(r(2), r(1))]);
        assert_eq!(bethe_residual(&[r(2)], &table, &one).unwrap(), vec![Rat::zero()]);
        let a = EigenfunctionSpec::XxxFundamental(vec![r(0)]);
        // l = 1: r = f(1,0) = 2, residual 2 - 1
        assert_eq!(bethe_residual(&[r(1)], &a, &one).unwrap(), vec![r(1)]);
        assert!(matches!(
            EigenfunctionSpec::table([]).eval(&r(3)),
            Err(Error::MissingConstant(_))
        ));
    }

    #[test]
    fn vacuum_transfer_exact() {
        let w = [r(0), Rat::new(1, 2), r(3)];
        let (res, _) = transfer_residual(&r(5), &[], &w).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn two_site_single_root() {
        let w = [r(0), Rat::new(1, 2)];
        let roots = solve_bethe_numeric(2, &w, 1, 7).unwrap();
        assert!((roots[0] - C::new(-0.25, 0.0)).norm() < 1e-12);
        assert!(transfer_check(&r(5), &roots, &w).unwrap() < 1e-9);
        assert_eq!(solve_bethe_numeric(2, &w, 1, 7).unwrap(), roots);
    }

    #[test]
    fn eigenfunction_json() {
        let s: EigenfunctionSpec = serde_json::from_str(r#"{"constant_table":{"1/2":"3","-1":"2/5"}}"#).unwrap();
        assert_eq!(s.eval(&Rat::new(1, 2)).unwrap(), r(3));
        let x: EigenfunctionSpec = serde_json::from_str(r#"{"xxx_fundamental":["0","1"]}"#).unwrap();
        assert_eq!(x.eval(&r(2)).unwrap(), r(3));
        let o: EigenfunctionSpec = serde_json::from_str(r#""one""#).unwrap();
        assert_eq!(o, EigenfunctionSpec::One);
    }
}
