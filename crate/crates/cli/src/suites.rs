//! Seeded verification batteries and the named suites built from them.

use bethe_core::dwpf::{self, DwpfInput, IzerginExpr, PdwpfFormula, Side};
use bethe_core::exactnum::sequential_limit;
use bethe_core::sample::{nonzero_rat, pole_free_sets, rng};
use bethe_core::scalarprod_su2::{self as su2, InfiniteForm};
use bethe_core::scalarprod_su3::{self as su3, FactorizedLimit, StaggerOrder, Su3Eigenfunctions, ZLimit};
use bethe_core::spinchain_su2::{self as chain2, EigenfunctionSpec};
use bethe_core::spinchain_su3::{self as chain3, Su3ChainSpec};
use bethe_core::vertexmodel::{self as vm, f_sets, YbCombo};
use bethe_core::Rat;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Check, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Battery {
    YangBaxter,
    DwpfAgreement,
    Korepin,
    PartialDwpf,
    Su2Oracle,
    Slavnov,
    ZSum,
    ZLimits,
    Su3Oracle,
    Factorized,
    Staggered,
    NumericsSu2,
    NumericsSu3,
}

impl Battery {
    pub const ALL: [Battery; 13] = [
        Battery::YangBaxter,
        Battery::DwpfAgreement,
        Battery::Korepin,
        Battery::PartialDwpf,
        Battery::Su2Oracle,
        Battery::Slavnov,
        Battery::ZSum,
        Battery::ZLimits,
        Battery::Su3Oracle,
        Battery::Factorized,
        Battery::Staggered,
        Battery::NumericsSu2,
        Battery::NumericsSu3,
    ];

    fn index(self) -> u64 {
        Battery::ALL.iter().position(|b| *b == self).unwrap() as u64
    }
}

pub const SUITES: &[&str] =
    &["yangbaxter", "korepin", "su2_oracle", "slavnov", "theorem1", "theorem2", "su3_oracle", "factorized", "staggered", "all"];

/// Batteries run by a named suite, in report order.
pub fn suite_batteries(name: &str) -> CliResult<Vec<Battery>> {
    use Battery::*;
    Ok(match name {
        "yangbaxter" => vec![YangBaxter],
        "korepin" => vec![DwpfAgreement, Korepin, PartialDwpf],
        "su2_oracle" => vec![Su2Oracle, NumericsSu2],
        "slavnov" => vec![Slavnov],
        "theorem1" => vec![ZSum],
        "theorem2" => vec![ZLimits],
        "su3_oracle" => vec![Su3Oracle, NumericsSu3],
        "factorized" => vec![Factorized],
        "staggered" => vec![Staggered],
        "all" => Battery::ALL.to_vec(),
        other => return Err(CliError::UnknownSuite(other.to_string())),
    })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BatteryOutcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl BatteryOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

type Task = (String, Box<dyn Fn() -> CliResult<Vec<Check>> + Send + Sync>);

fn task(label: String, f: impl Fn() -> CliResult<Vec<Check>> + Send + Sync + 'static) -> Task {
    (label, Box::new(f))
}

/// Runs tasks in parallel; output order is the task order.
fn run_tasks(tasks: Vec<Task>) -> Vec<Check> {
    let per_task: Vec<Vec<Check>> = tasks
        .par_iter()
        .map(|(label, f)| match f() {
            Ok(checks) => checks
                .into_iter()
                .map(|mut c| {
                    c.name = format!("{label}: {}", c.name);
                    c
                })
                .collect(),
            Err(e) => vec![Check::error(label.clone(), &e)],
        })
        .collect();
    per_task.into_iter().flatten().collect()
}

fn free_table(xs: &[Rat], g: &mut ChaCha8Rng) -> EigenfunctionSpec {
    EigenfunctionSpec::table(xs.iter().map(|x| (x.clone(), nonzero_rat(g))))
}

fn r(n: i64) -> Rat {
    Rat::int(n)
}

/// Runs one battery. Instance data comes from a generator seeded by `seed`
/// and the battery, so batteries are independent of each other.
pub fn run_battery(b: Battery, seed: u64) -> BatteryOutcome {
    let mut g = rng(seed.wrapping_mul(1_000_003).wrapping_add(b.index()));
    let mut notes = Vec::new();
    let tasks = match b {
        Battery::YangBaxter => yang_baxter(&mut g),
        Battery::DwpfAgreement => dwpf_agreement(&mut g),
        Battery::Korepin => korepin(&mut g),
        Battery::PartialDwpf => partial_dwpf(&mut g),
        Battery::Su2Oracle => su2_oracle(&mut g),
        Battery::Slavnov => slavnov(&mut g),
        Battery::ZSum => {
            notes.push(non_factorization_note(&mut g));
            z_sum(&mut g)
        }
        Battery::ZLimits => z_limits(&mut g),
        Battery::Su3Oracle => su3_oracle(&mut g),
        Battery::Factorized => factorized(&mut g),
        Battery::Staggered => staggered(&mut g),
        Battery::NumericsSu2 => numerics_su2(seed),
        Battery::NumericsSu3 => numerics_su3(seed),
    };
    BatteryOutcome { checks: run_tasks(tasks), notes }
}

fn yang_baxter(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for combo in [YbCombo::Su2, YbCombo::Su3, YbCombo::MixedStar] {
        for k in 0..50 {
            let s = pole_free_sets(g, &[3]).remove(0);
            tasks.push(task(format!("yang-baxter {combo:?} #{k}"), move || {
                let t = vm::yang_baxter_residual(combo, &s[0], &s[1], &s[2])?;
                let nonzero = t.entries().iter().filter(|x| !x.is_zero()).count();
                Ok(vec![Check::eq("nonzero residual entries", &nonzero, &0)])
            }));
        }
    }
    tasks
}

fn dwpf_input(l: &[Rat], w: &[Rat]) -> DwpfInput {
    DwpfInput { lambdas: l.to_vec(), ws: w.to_vec() }
}

fn dwpf_agreement(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = vec![task("dwpf hand value".into(), || {
        let v = dwpf::dwpf_lattice(&dwpf_input(&[r(2), r(4)], &[r(0), r(1)]))?;
        Ok(vec![Check::eq("Z((2,4)|(0,1))", &v, &Rat::new(2, 3))])
    })];
    for ell in 1..=3 {
        for k in 0..20 {
            let s = pole_free_sets(g, &[ell, ell]);
            tasks.push(task(format!("dwpf ell={ell} #{k}"), move || {
                let i = dwpf_input(&s[0], &s[1]);
                let lat = dwpf::dwpf_lattice(&i)?;
                Ok(vec![
                    Check::eq("izergin = lattice", &dwpf::dwpf_izergin(&i)?, &lat),
                    Check::eq("kostov = lattice", &dwpf::dwpf_kostov(&i)?, &lat),
                ])
            }));
        }
    }
    tasks
}

fn korepin(g: &mut ChaCha8Rng) -> Vec<Task> {
    let s = pole_free_sets(g, &[1, 1]);
    let mut tasks = vec![task("korepin single site".into(), move || {
        let z = dwpf::izergin(&s[0], &s[1])?;
        Ok(vec![Check::eq("Z(l|w) = g(l,w)", &z, &vm::weight_g(&s[0][0], &s[1][0])?)])
    })];
    for ell in 2..=3 {
        for k in 0..3 {
            let s = pole_free_sets(g, &[ell, ell]);
            tasks.push(task(format!("korepin ell={ell} #{k}"), move || {
                let (l, w) = (&s[0], &s[1]);
                let z = dwpf::izergin(l, w)?;
                let mut checks = Vec::new();
                for shift in 1..ell {
                    let mut lp = l.clone();
                    lp.rotate_left(shift);
                    let mut wp = w.clone();
                    wp.rotate_right(shift);
                    checks.push(Check::eq(format!("symmetric in l, rotation {shift}"), &dwpf::izergin(&lp, w)?, &z));
                    checks.push(Check::eq(format!("symmetric in w, rotation {shift}"), &dwpf::izergin(l, &wp)?, &z));
                }
                let mut swapped = l.clone();
                swapped.swap(0, 1);
                checks.push(Check::eq("symmetric in l, swap", &dwpf::izergin(&swapped, w)?, &z));
                for i in 0..ell {
                    checks.push(Check::eq(format!("decay in l_{i}"), &dwpf::decay_limit(l, w, i)?, &Rat::zero()));
                    for j in 0..ell {
                        let (lhs, rhs) = dwpf::residue_check(l, w, i, j)?;
                        checks.push(Check::eq(format!("residue at l_{i} = w_{j}"), &lhs, &rhs));
                    }
                }
                Ok(checks)
            }));
        }
    }
    tasks
}

fn partial_dwpf(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (n, ell) in [(1, 2), (1, 3), (2, 3)] {
        let s = pole_free_sets(g, &[ell, ell]);
        tasks.push(task(format!("partial dwpf (n,ell)=({n},{ell})"), move || {
            let i = dwpf_input(&s[0][..n], &s[1]);
            let lat = dwpf::pdwpf(&i, PdwpfFormula::Lattice)?;
            let point = [s[0].clone(), s[1].clone()].concat();
            let order: Vec<usize> = (n..ell).rev().collect();
            let lim = sequential_limit(&IzerginExpr { n: ell }, &point, &order, 1)?.checked_div(&Rat::factorial(ell - n))?;
            Ok(vec![
                Check::eq("izergin form = lattice", &dwpf::pdwpf(&i, PdwpfFormula::Izergin)?, &lat),
                Check::eq("kostov form = lattice", &dwpf::pdwpf(&i, PdwpfFormula::Kostov)?, &lat),
                Check::eq("sequential limit of the full dwpf", &lim, &lat),
            ])
        }));
    }
    for ell in 1..=3 {
        for side in [Side::Lambda, Side::W] {
            tasks.push(task(format!("all-infinite {side:?} ell={ell}"), move || {
                let v = dwpf::dwpf_all_infinite(side, ell, &[])?;
                Ok(vec![Check::eq("constant", &v, &dwpf::all_infinite_closed_form(side, ell))])
            }));
        }
    }
    tasks
}

fn su2_oracle(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for ell in 1..=3 {
        for k in 0..20 {
            let s = pole_free_sets(g, &[ell, ell, ell]);
            tasks.push(task(format!("su2 sum ell=L={ell} #{k}"), move || {
                let a = EigenfunctionSpec::XxxFundamental(s[2].clone());
                let sum = su2::sp_sum(&s[0], &s[1], &a, &EigenfunctionSpec::One)?;
                let direct = chain2::su2_scalar_product_direct(&s[0], &s[1], &s[2])?;
                Ok(vec![Check::eq("partition sum = chain", &sum, &direct)])
            }));
        }
    }
    tasks
}

fn slavnov(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for ell in 1..=3 {
        for k in 0..5 {
            let s = pole_free_sets(g, &[ell, ell]);
            let rc = free_table(&s[0], g);
            tasks.push(task(format!("slavnov ell={ell} #{k}"), move || {
                let sum = su2::slavnov_onshell_sum(&s[0], &s[1], &rc)?;
                Ok(vec![Check::eq("on-shell sum = determinant", &sum, &su2::slavnov_det(&s[0], &s[1], &rc)?)])
            }));
        }
        let s = pole_free_sets(g, &[ell]).remove(0);
        let rc = free_table(&s, g);
        tasks.push(task(format!("infinite limit ell={ell}"), move || {
            let sum = su2::sp_infinite(&s, &rc, InfiniteForm::Sum)?;
            Ok(vec![
                Check::eq("sum form = determinant form", &sum, &su2::sp_infinite(&s, &rc, InfiniteForm::Det)?),
                Check::eq("sequential limit of the on-shell sum", &su2::sp_infinite_limit(&s, &rc)?, &sum),
            ])
        }));
    }
    tasks
}

fn non_factorization_note(g: &mut ChaCha8Rng) -> String {
    let s = pole_free_sets(g, &[2, 2, 2, 2]);
    let eval = || -> CliResult<(Rat, Rat)> {
        let z = su3::z_su3_oracle(&s[0], &s[1], &s[2], &s[3])?;
        let product = f_sets(&s[1], &s[0])? * dwpf::izergin(&s[0], &s[2])? * dwpf::izergin(&s[3], &s[1])?;
        Ok((z, product))
    };
    match eval() {
        Ok((z, p)) => format!("(2,2) instance: Z = {z}, f(mu,lambda) Z(lambda|w) Z(v|mu) = {p}, factorizes: {}", z == p),
        Err(e) => format!("(2,2) factorization record failed: {e}"),
    }
}

fn z_sum(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = vec![task("Z hand value (1,1)".into(), || {
        let v = su3::z_su3_sum(&[r(2)], &[r(0)], &[r(1)], &[r(3)])?;
        Ok(vec![
            Check::eq("sum", &v, &Rat::new(-1, 3)),
            Check::eq("lattice", &su3::z_su3_oracle(&[r(2)], &[r(0)], &[r(1)], &[r(3)])?, &Rat::new(-1, 3)),
        ])
    })];
    for (ell, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        for k in 0..10 {
            let s = pole_free_sets(g, &[ell, m, ell, m]);
            tasks.push(task(format!("Z sum ({ell},{m}) #{k}"), move || {
                let sum = su3::z_su3_sum(&s[0], &s[1], &s[2], &s[3])?;
                Ok(vec![Check::eq("sum = lattice", &sum, &su3::z_su3_oracle(&s[0], &s[1], &s[2], &s[3])?)])
            }));
        }
    }
    tasks
}

fn z_limits(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (ell, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let s = pole_free_sets(g, &[ell, m, ell, m]);
        for which in [ZLimit::MuInf, ZLimit::LambdaInf, ZLimit::VInf, ZLimit::WInf] {
            let (l, mu, w, v) = (s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone());
            let rem = match which {
                ZLimit::MuInf => vec![l, w, v],
                ZLimit::LambdaInf => vec![mu, w, v],
                ZLimit::VInf => vec![l, mu, w],
                ZLimit::WInf => vec![l, mu, v],
            };
            tasks.push(task(format!("Z limit {which:?} ({ell},{m})"), move || {
                let closed = su3::z_su3_limit(which, &rem, (ell, m))?;
                let mut checks =
                    vec![Check::eq("closed form = sequential limit", &closed, &su3::z_su3_limit_sequential(which, &rem, (ell, m), None)?)];
                if (ell, m) == (2, 2) && matches!(which, ZLimit::MuInf | ZLimit::WInf) {
                    let permuted = su3::z_su3_limit_sequential(which, &rem, (ell, m), Some(&[0, 1]))?;
                    checks.push(Check::eq("lowest index first", &permuted, &closed));
                }
                Ok(checks)
            }));
        }
    }
    for (ell, m) in [(1, 1), (2, 1)] {
        let s = pole_free_sets(g, &[ell, m, ell]);
        tasks.push(task(format!("lemma ({ell},{m})"), move || {
            let (lhs, rhs) = su3::lemma1_check(&s[0], &s[1], &s[2])?;
            Ok(vec![Check::eq("lhs = rhs", &lhs, &rhs)])
        }));
    }
    tasks
}

fn su3_oracle(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (ell, m) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
        let s = pole_free_sets(g, &[m, ell, ell, m, 2, 1]);
        tasks.push(task(format!("su3 sum ({ell},{m})"), move || {
            let spec = Su3ChainSpec::new(s[4].clone(), s[5].clone())?;
            let a = Su3Eigenfunctions { a1: spec.a1(), a2: EigenfunctionSpec::One, a3: spec.a3() };
            let sum = su3::su3_sp_sum(&s[0], &s[1], &s[2], &s[3], &a)?;
            let direct = chain3::su3_scalar_product_direct(&s[0], &s[1], &s[2], &s[3], &spec)?;
            Ok(vec![Check::eq("partition sum = chain", &sum, &direct)])
        }));
    }
    let s = pole_free_sets(g, &[1, 1, 1, 1]);
    for (a, lam) in su3::matched_pairs(1).into_iter().enumerate() {
        for (b, mu) in su3::matched_pairs(1).into_iter().enumerate() {
            let (s, lam) = (s.clone(), lam.clone());
            tasks.push(task(format!("chain specialisation (1,1) split {a}{b}"), move || {
                let (lhs, rhs) = su3::chain_specialization(&s[0], &s[1], &s[2], &s[3], &lam, &mu)?;
                Ok(vec![Check::eq("normalised product = two Z factors", &lhs, &rhs)])
            }));
        }
    }
    tasks
}

fn factorized(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (ell, m) in [(1, 1), (2, 1), (1, 2)] {
        let s = pole_free_sets(g, &[m, ell, ell, m]);
        let (r1, r2) = (free_table(&s[1], g), free_table(&s[0], g));
        for limit in [FactorizedLimit::MubInf, FactorizedLimit::LambInf] {
            let (s, r1, r2) = (s.clone(), r1.clone(), r2.clone());
            tasks.push(task(format!("factorized {limit:?} ({ell},{m})"), move || {
                let surv = if limit == FactorizedLimit::MubInf { &s[2] } else { &s[3] };
                let det = su3::su3_sp_factorized(limit, &s[0], &s[1], surv, &r1, &r2)?;
                Ok(vec![
                    Check::eq("determinants = sequential limit", &det, &su3::su3_sp_factorized_limit(limit, &s[0], &s[1], surv, &r1, &r2)?),
                    Check::eq("determinants = limit sums", &det, &su3::su3_sp_factorized_sums_in(limit, &s[0], &s[1], surv, &r1, &r2)?),
                ])
            }));
        }
    }
    tasks
}

fn staggered(g: &mut ChaCha8Rng) -> Vec<Task> {
    let mut tasks = Vec::new();
    for k in 0..3 {
        let s = pole_free_sets(g, &[1, 1]);
        let (r1, r2) = (free_table(&s[1], g), free_table(&s[0], g));
        tasks.push(task(format!("staggered (1,1) #{k}"), move || {
            let mut values = Vec::new();
            let mut checks = Vec::new();
            for order in [StaggerOrder::LambdaThenMu, StaggerOrder::MuThenLambda] {
                let v = su3::staggered_double_limit(order, &s[0], &s[1], &r1, &r2, (1, 1))?;
                let closed = su3::staggered_closed_form(order, &s[0], &s[1], &r1, &r2)?;
                checks.push(Check::eq(format!("{order:?} = closed form"), &v, &closed));
                values.push(v);
            }
            checks.push(Check::differ("the two orders differ", &values[0], &values[1]));
            Ok(checks)
        }));
    }
    tasks
}

const RESIDUAL_BOUND: f64 = 1e-8;

fn numerics_su2(seed: u64) -> Vec<Task> {
    vec![task("numeric su2 L=2 ell=1".into(), move || {
        let w = [Rat::zero(), Rat::new(1, 2)];
        let roots = chain2::solve_bethe_numeric(2, &w, 1, seed)?;
        let res = chain2::transfer_check(&Rat::new(3, 7), &roots, &w)?;
        Ok(vec![Check::below("transfer eigenvector residual", res, RESIDUAL_BOUND)])
    })]
}

fn numerics_su3(seed: u64) -> Vec<Task> {
    vec![task("numeric su3 (1,1)".into(), move || {
        let spec = Su3ChainSpec::new(vec![Rat::zero()], vec![Rat::new(1, 2)])?;
        let (l, m) = chain3::solve_su3_bethe_numeric(&spec, 1, 1, seed)?;
        let res = chain3::su3_transfer_check(&Rat::new(3, 7), &l, &m, &spec)?;
        Ok(vec![Check::below("transfer eigenvector residual", res, RESIDUAL_BOUND)])
    })]
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Schema("--threads must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Schema(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert_eq!(suite_batteries("nope"), Err(CliError::UnknownSuite("nope".into())));
        for s in SUITES {
            assert!(!suite_batteries(s).unwrap().is_empty());
        }
    }

    #[test]
    fn small_batteries_pass() {
        for b in [Battery::YangBaxter, Battery::Staggered, Battery::NumericsSu2] {
            let out = run_battery(b, 7);
            assert!(out.all_passed(), "{b:?}: {:?}", out.checks.iter().find(|c| !c.passed()));
        }
    }

    #[test]
    fn errors_become_failed_checks() {
        let checks = run_tasks(vec![task("bad".into(), || Err(CliError::Schema("x".into())))]);
        assert_eq!(checks.len(), 1);
        assert!(!checks[0].passed());
    }
}
