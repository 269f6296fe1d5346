//! Job dispatch: one entry per library operation.

use bethe_core::dwpf::{self, DwpfInput, PdwpfFormula, Side};
use bethe_core::exactnum::{det_exact, ratfunc_eval, ratfunc_limit, Matrix, Rat, RatFunc};
use bethe_core::operator::{Operator, StateVec};
use bethe_core::scalarprod_su2::{self as su2, InfiniteForm};
use bethe_core::scalarprod_su3::{self as su3, FactorizedLimit, StaggerOrder, Su3Eigenfunctions, ZLimit};
use bethe_core::spinchain_su2::{self as chain2, EigenfunctionSpec, Su2Entry};
use bethe_core::spinchain_su3::{self as chain3, Su3ChainSpec};
use bethe_core::vertexmodel::{self as vm, LatticeSpec, VertexKind, YbCombo};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::{Check, CliError, CliResult};

/// Every job kind accepted by `run_job`.
pub const KINDS: &[&str] = &[
    "weight_f",
    "weight_g",
    "build_rmatrix",
    "yang_baxter_residual",
    "contract_lattice",
    "ratfunc_eval",
    "ratfunc_limit",
    "det_exact",
    "su2_monodromy_entry",
    "bethe_state",
    "dual_bethe_state",
    "su2_scalar_product_direct",
    "bethe_residual",
    "solve_bethe_numeric",
    "transfer_check",
    "dwpf_izergin",
    "dwpf_kostov",
    "dwpf_lattice",
    "pdwpf",
    "dwpf_all_infinite",
    "sp_sum",
    "sp_sum_normalized",
    "slavnov_onshell_sum",
    "slavnov_det",
    "sp_infinite",
    "su3_monodromy_entry",
    "nested_bethe_state",
    "dual_nested_bethe_state",
    "su3_scalar_product_direct",
    "su3_bethe_residuals",
    "su3_transfer_eigenvalue",
    "solve_su3_bethe_numeric",
    "su3_transfer_check",
    "z_su3_oracle",
    "z_su3_sum",
    "z_su3_limit",
    "lemma1_check",
    "su3_sp_sum",
    "su3_sp_sum_normalized",
    "su3_sp_onshell_sum",
    "su3_sp_factorized",
    "staggered_double_limit",
];

fn parse<T: DeserializeOwned>(v: &Value) -> CliResult<T> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Schema(e.to_string()))
}

fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

fn rats(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

fn operator_json(op: &Operator) -> Value {
    let entries: Vec<Value> = op.entries().iter().map(|((i, j), v)| json!([i, j, v.to_string()])).collect();
    json!({ "dim": op.dim(), "entries": entries })
}

fn state_json(v: &StateVec) -> Value {
    let entries: Vec<Value> = v.entries().iter().map(|(i, x)| json!([i, x.to_string()])).collect();
    json!({ "dim": v.dim(), "entries": entries })
}

fn complex_json(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|z| json!([z.re, z.im])).collect())
}

fn complexes(zs: &[[f64; 2]]) -> Vec<Complex64> {
    zs.iter().map(|z| Complex64::new(z[0], z[1])).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair {
    l: Rat,
    m: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RmatrixParams {
    kind: VertexKind,
    l: Rat,
    m: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct YbParams {
    combo: YbCombo,
    l: Rat,
    m: Rat,
    n: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeParams {
    lattice: LatticeSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RatFuncParams {
    f: RatFunc,
    #[serde(default)]
    x: Option<Rat>,
    #[serde(default)]
    k: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixParams {
    matrix: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su2EntryParams {
    entry: Su2Entry,
    l: Rat,
    w: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateParams {
    lambdas: Vec<Rat>,
    w: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su2PairParams {
    lambda_c: Vec<Rat>,
    lambda_b: Vec<Rat>,
    #[serde(default)]
    w: Vec<Rat>,
    #[serde(default)]
    spec_a: Option<EigenfunctionSpec>,
    #[serde(default)]
    spec_d: Option<EigenfunctionSpec>,
    #[serde(default)]
    spec_r: Option<EigenfunctionSpec>,
    #[serde(default)]
    r_c: Option<EigenfunctionSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidualParams {
    lambdas: Vec<Rat>,
    spec_a: EigenfunctionSpec,
    spec_d: EigenfunctionSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveParams {
    sites: usize,
    w: Vec<Rat>,
    n: usize,
    #[serde(default)]
    check_at: Option<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransferParams {
    x: Rat,
    roots: Vec<[f64; 2]>,
    w: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PdwpfParams {
    lambdas: Vec<Rat>,
    ws: Vec<Rat>,
    formula: PdwpfFormula,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AllInfiniteParams {
    side: Side,
    ell: usize,
    #[serde(default)]
    fixed: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InfiniteParams {
    lambda_c: Vec<Rat>,
    r_c: EigenfunctionSpec,
    form: InfiniteForm,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3EntryParams {
    i: usize,
    j: usize,
    l: Rat,
    spec: Su3ChainSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NestedParams {
    lambdas: Vec<Rat>,
    mus: Vec<Rat>,
    spec: Su3ChainSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3ResidualParams {
    lambdas: Vec<Rat>,
    mus: Vec<Rat>,
    spec_r1: EigenfunctionSpec,
    spec_r2: EigenfunctionSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3EigenvalueParams {
    x: Rat,
    lambdas: Vec<Rat>,
    mus: Vec<Rat>,
    spec: Su3ChainSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3SolveParams {
    spec: Su3ChainSpec,
    n_lambda: usize,
    n_mu: usize,
    #[serde(default)]
    check_at: Option<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3TransferParams {
    x: Rat,
    lambdas: Vec<[f64; 2]>,
    mus: Vec<[f64; 2]>,
    spec: Su3ChainSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZParams {
    lambdas: Vec<Rat>,
    mus: Vec<Rat>,
    ws: Vec<Rat>,
    #[serde(default)]
    vs: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZLimitParams {
    which: ZLimit,
    remaining: Vec<Vec<Rat>>,
    sizes: (usize, usize),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su3SpParams {
    mu_c: Vec<Rat>,
    lambda_c: Vec<Rat>,
    lambda_b: Vec<Rat>,
    mu_b: Vec<Rat>,
    #[serde(default)]
    spec: Option<Su3ChainSpec>,
    #[serde(default)]
    a1: Option<EigenfunctionSpec>,
    #[serde(default)]
    a2: Option<EigenfunctionSpec>,
    #[serde(default)]
    a3: Option<EigenfunctionSpec>,
    #[serde(default)]
    r1: Option<EigenfunctionSpec>,
    #[serde(default)]
    r2: Option<EigenfunctionSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorizedParams {
    limit: FactorizedLimit,
    mu_c: Vec<Rat>,
    lambda_c: Vec<Rat>,
    surviving_b: Vec<Rat>,
    r1: EigenfunctionSpec,
    r2: EigenfunctionSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StaggeredParams {
    order: StaggerOrder,
    mu_c: Vec<Rat>,
    lambda_c: Vec<Rat>,
    r1: EigenfunctionSpec,
    r2: EigenfunctionSpec,
    sizes: (usize, usize),
}

fn need<T>(x: Option<T>, name: &str) -> CliResult<T> {
    x.ok_or_else(|| CliError::Schema(format!("missing field `{name}`")))
}

/// Result value and built-in cross-checks of one job.
pub type Outcome = (Value, Vec<Check>);

pub fn dispatch(kind: &str, p: &Value, seed: u64) -> CliResult<Outcome> {
    let none = Vec::new;
    Ok(match kind {
        "weight_f" | "weight_g" => {
            let a: Pair = parse(p)?;
            let v = if kind == "weight_f" { vm::weight_f(&a.l, &a.m)? } else { vm::weight_g(&a.l, &a.m)? };
            (rat(&v), none())
        }
        "build_rmatrix" => {
            let a: RmatrixParams = parse(p)?;
            (json!(vm::build_rmatrix(a.kind, &a.l, &a.m)?), none())
        }
        "yang_baxter_residual" => {
            let a: YbParams = parse(p)?;
            let t = vm::yang_baxter_residual(a.combo, &a.l, &a.m, &a.n)?;
            let nonzero = t.entries().iter().filter(|x| !x.is_zero()).count();
            (json!(t), vec![Check::eq("nonzero residual entries", &nonzero, &0)])
        }
        "contract_lattice" => {
            let a: LatticeParams = parse(p)?;
            (rat(&vm::contract_lattice(&a.lattice)?), none())
        }
        "ratfunc_eval" => {
            let a: RatFuncParams = parse(p)?;
            (rat(&ratfunc_eval(&a.f, &need(a.x, "x")?)?), none())
        }
        "ratfunc_limit" => {
            let a: RatFuncParams = parse(p)?;
            (rat(&ratfunc_limit(&a.f, need(a.k, "k")?)?), none())
        }
        "det_exact" => {
            let a: MatrixParams = parse(p)?;
            (rat(&det_exact(&Matrix::from_rows(a.matrix)?)?), none())
        }
        "su2_monodromy_entry" => {
            let a: Su2EntryParams = parse(p)?;
            (operator_json(&chain2::su2_monodromy_entry(a.entry, &a.l, &a.w)?), none())
        }
        "bethe_state" => {
            let a: StateParams = parse(p)?;
            (state_json(&chain2::bethe_state(&a.lambdas, &a.w)?), none())
        }
        "dual_bethe_state" => {
            let a: StateParams = parse(p)?;
            (state_json(&chain2::dual_bethe_state(&a.lambdas, &a.w)?), none())
        }
        "su2_scalar_product_direct" => {
            let a: Su2PairParams = parse(p)?;
            let direct = chain2::su2_scalar_product_direct(&a.lambda_c, &a.lambda_b, &a.w)?;
            let sum = su2::sp_sum(&a.lambda_c, &a.lambda_b, &EigenfunctionSpec::XxxFundamental(a.w.clone()), &EigenfunctionSpec::One)?;
            (rat(&direct), vec![Check::eq("direct = partition sum", &direct, &sum)])
        }
        "bethe_residual" => {
            let a: ResidualParams = parse(p)?;
            (rats(&chain2::bethe_residual(&a.lambdas, &a.spec_a, &a.spec_d)?), none())
        }
        "solve_bethe_numeric" => {
            let a: SolveParams = parse(p)?;
            let roots = chain2::solve_bethe_numeric(a.sites, &a.w, a.n, seed)?;
            let x = a.check_at.unwrap_or_else(|| Rat::new(3, 7));
            let res = chain2::transfer_check(&x, &roots, &a.w)?;
            (complex_json(&roots), vec![Check::below("transfer eigenvector residual", res, 1e-8)])
        }
        "transfer_check" => {
            let a: TransferParams = parse(p)?;
            let res = chain2::transfer_check(&a.x, &complexes(&a.roots), &a.w)?;
            (json!(res), vec![Check::below("transfer eigenvector residual", res, 1e-8)])
        }
        "dwpf_izergin" | "dwpf_kostov" | "dwpf_lattice" => {
            let a: DwpfInput = parse(p)?;
            let v = match kind {
                "dwpf_izergin" => dwpf::dwpf_izergin(&a)?,
                "dwpf_kostov" => dwpf::dwpf_kostov(&a)?,
                _ => dwpf::dwpf_lattice(&a)?,
            };
            (rat(&v), none())
        }
        "pdwpf" => {
            let a: PdwpfParams = parse(p)?;
            let input = DwpfInput { lambdas: a.lambdas, ws: a.ws };
            let v = dwpf::pdwpf(&input, a.formula)?;
            let checks = [PdwpfFormula::Izergin, PdwpfFormula::Kostov, PdwpfFormula::Lattice]
                .into_iter()
                .filter(|f| *f != a.formula)
                .map(|f| Ok(Check::eq(format!("agrees with {f:?}"), &v, &dwpf::pdwpf(&input, f)?)))
                .collect::<CliResult<Vec<_>>>()?;
            (rat(&v), checks)
        }
        "dwpf_all_infinite" => {
            let a: AllInfiniteParams = parse(p)?;
            let v = dwpf::dwpf_all_infinite(a.side, a.ell, &a.fixed)?;
            let closed = dwpf::all_infinite_closed_form(a.side, a.ell);
            (rat(&v), vec![Check::eq("closed form", &v, &closed)])
        }
        "sp_sum" => {
            let a: Su2PairParams = parse(p)?;
            let v = su2::sp_sum(&a.lambda_c, &a.lambda_b, &need(a.spec_a, "spec_a")?, &need(a.spec_d, "spec_d")?)?;
            (rat(&v), none())
        }
        "sp_sum_normalized" => {
            let a: Su2PairParams = parse(p)?;
            (rat(&su2::sp_sum_normalized(&a.lambda_c, &a.lambda_b, &need(a.spec_r, "spec_r")?)?), none())
        }
        "slavnov_onshell_sum" | "slavnov_det" => {
            let a: Su2PairParams = parse(p)?;
            let r = need(a.r_c, "r_c")?;
            let sum = su2::slavnov_onshell_sum(&a.lambda_c, &a.lambda_b, &r)?;
            let det = su2::slavnov_det(&a.lambda_c, &a.lambda_b, &r)?;
            let v = if kind == "slavnov_det" { det.clone() } else { sum.clone() };
            (rat(&v), vec![Check::eq("on-shell sum = Slavnov determinant", &sum, &det)])
        }
        "sp_infinite" => {
            let a: InfiniteParams = parse(p)?;
            let v = su2::sp_infinite(&a.lambda_c, &a.r_c, a.form)?;
            let other = match a.form {
                InfiniteForm::Sum => InfiniteForm::Det,
                InfiniteForm::Det => InfiniteForm::Sum,
            };
            let checks = vec![
                Check::eq(format!("agrees with {other:?}"), &v, &su2::sp_infinite(&a.lambda_c, &a.r_c, other)?),
                Check::eq("sequential limit", &v, &su2::sp_infinite_limit(&a.lambda_c, &a.r_c)?),
            ];
            (rat(&v), checks)
        }
        "su3_monodromy_entry" => {
            let a: Su3EntryParams = parse(p)?;
            (operator_json(&chain3::su3_monodromy_entry(a.i, a.j, &a.l, &a.spec)?), none())
        }
        "nested_bethe_state" => {
            let a: NestedParams = parse(p)?;
            (state_json(&chain3::nested_bethe_state(&a.lambdas, &a.mus, &a.spec)?), none())
        }
        "dual_nested_bethe_state" => {
            let a: NestedParams = parse(p)?;
            (state_json(&chain3::dual_nested_bethe_state(&a.lambdas, &a.mus, &a.spec)?), none())
        }
        "su3_scalar_product_direct" => {
            let a: Su3SpParams = parse(p)?;
            let spec = need(a.spec, "spec")?;
            let direct = chain3::su3_scalar_product_direct(&a.mu_c, &a.lambda_c, &a.lambda_b, &a.mu_b, &spec)?;
            let eig = Su3Eigenfunctions { a1: spec.a1(), a2: EigenfunctionSpec::One, a3: spec.a3() };
            let sum = su3::su3_sp_sum(&a.mu_c, &a.lambda_c, &a.lambda_b, &a.mu_b, &eig)?;
            (rat(&direct), vec![Check::eq("direct = partition sum", &direct, &sum)])
        }
        "su3_bethe_residuals" => {
            let a: Su3ResidualParams = parse(p)?;
            let (r1, r2) = chain3::su3_bethe_residuals(&a.lambdas, &a.mus, &a.spec_r1, &a.spec_r2)?;
            (json!({ "lambda": rats(&r1), "mu": rats(&r2) }), none())
        }
        "su3_transfer_eigenvalue" => {
            let a: Su3EigenvalueParams = parse(p)?;
            (rat(&chain3::su3_transfer_eigenvalue(&a.x, &a.lambdas, &a.mus, &a.spec)?), none())
        }
        "solve_su3_bethe_numeric" => {
            let a: Su3SolveParams = parse(p)?;
            let (l, m) = chain3::solve_su3_bethe_numeric(&a.spec, a.n_lambda, a.n_mu, seed)?;
            let x = a.check_at.unwrap_or_else(|| Rat::new(3, 7));
            let res = chain3::su3_transfer_check(&x, &l, &m, &a.spec)?;
            (
                json!({ "lambda": complex_json(&l), "mu": complex_json(&m) }),
                vec![Check::below("transfer eigenvector residual", res, 1e-8)],
            )
        }
        "su3_transfer_check" => {
            let a: Su3TransferParams = parse(p)?;
            let res = chain3::su3_transfer_check(&a.x, &complexes(&a.lambdas), &complexes(&a.mus), &a.spec)?;
            (json!(res), vec![Check::below("transfer eigenvector residual", res, 1e-8)])
        }
        "z_su3_oracle" => {
            let a: ZParams = parse(p)?;
            (rat(&su3::z_su3_oracle(&a.lambdas, &a.mus, &a.ws, &a.vs)?), none())
        }
        "z_su3_sum" => {
            let a: ZParams = parse(p)?;
            let v = su3::z_su3_sum(&a.lambdas, &a.mus, &a.ws, &a.vs)?;
            let lattice = su3::z_su3_oracle(&a.lambdas, &a.mus, &a.ws, &a.vs)?;
            (rat(&v), vec![Check::eq("sum = lattice", &v, &lattice)])
        }
        "z_su3_limit" => {
            let a: ZLimitParams = parse(p)?;
            let v = su3::z_su3_limit(a.which, &a.remaining, a.sizes)?;
            let seq = su3::z_su3_limit_sequential(a.which, &a.remaining, a.sizes, None)?;
            (rat(&v), vec![Check::eq("sequential limit of the sum", &v, &seq)])
        }
        "lemma1_check" => {
            let a: ZParams = parse(p)?;
            let (lhs, rhs) = su3::lemma1_check(&a.lambdas, &a.mus, &a.ws)?;
            (json!({ "lhs": rat(&lhs), "rhs": rat(&rhs) }), vec![Check::eq("lhs = rhs", &lhs, &rhs)])
        }
        "su3_sp_sum" => {
            let a: Su3SpParams = parse(p)?;
            let eig = Su3Eigenfunctions { a1: need(a.a1, "a1")?, a2: need(a.a2, "a2")?, a3: need(a.a3, "a3")? };
            (rat(&su3::su3_sp_sum(&a.mu_c, &a.lambda_c, &a.lambda_b, &a.mu_b, &eig)?), none())
        }
        "su3_sp_sum_normalized" => {
            let a: Su3SpParams = parse(p)?;
            let (r1, r2) = (need(a.r1, "r1")?, need(a.r2, "r2")?);
            (rat(&su3::su3_sp_sum_normalized(&a.mu_c, &a.lambda_c, &a.lambda_b, &a.mu_b, &r1, &r2)?), none())
        }
        "su3_sp_onshell_sum" => {
            let a: Su3SpParams = parse(p)?;
            let (r1, r2) = (need(a.r1, "r1")?, need(a.r2, "r2")?);
            (rat(&su3::su3_sp_onshell_sum(&a.mu_c, &a.lambda_c, &a.lambda_b, &a.mu_b, &r1, &r2)?), none())
        }
        "su3_sp_factorized" => {
            let a: FactorizedParams = parse(p)?;
            let (mc, lc, b) = (&a.mu_c, &a.lambda_c, &a.surviving_b);
            let v = su3::su3_sp_factorized(a.limit, mc, lc, b, &a.r1, &a.r2)?;
            let checks = vec![
                Check::eq("sequential limit", &v, &su3::su3_sp_factorized_limit(a.limit, mc, lc, b, &a.r1, &a.r2)?),
                Check::eq("product of sums", &v, &su3::su3_sp_factorized_sums_in(a.limit, mc, lc, b, &a.r1, &a.r2)?),
            ];
            (rat(&v), checks)
        }
        "staggered_double_limit" => {
            let a: StaggeredParams = parse(p)?;
            let v = su3::staggered_double_limit(a.order, &a.mu_c, &a.lambda_c, &a.r1, &a.r2, a.sizes)?;
            let closed = su3::staggered_closed_form(a.order, &a.mu_c, &a.lambda_c, &a.r1, &a.r2)?;
            (rat(&v), vec![Check::eq("closed form", &v, &closed)])
        }
        other => return Err(CliError::UnknownKind(other.to_string())),
    })
}
