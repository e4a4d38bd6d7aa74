//! Deterministic table emitters (JSON, plus LaTeX for the reducibility
//! sweep).

use padic_lf_core::dmatrix::{canonical_ctx, dmatrix, DMethod};
use padic_lf_core::factors::{epsilon_factor, lfactor, tate_gamma};
use padic_lf_core::serialize::{coeff_matrix_to_json, ratfun_to_json, RatFunJson};
use padic_lf_core::{AddChar, FieldCtx, MultChar, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charenum::{chi_id, enumerate_chars};
use crate::config::{JobConfig, PiValuePolicy};
use crate::suites::reducibility_rows;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Reducibility,
    Dmatrix,
    Factors,
}

impl TableKind {
    pub fn parse(s: &str) -> Option<TableKind> {
        match s {
            "reducibility" => Some(TableKind::Reducibility),
            "dmatrix" => Some(TableKind::Dmatrix),
            "factors" => Some(TableKind::Factors),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct ReducibilityJsonRow {
    p: u64,
    n: u32,
    chi: String,
    n_parity: &'static str,
    predicate: bool,
    self_associate: bool,
    pole_at_zero: bool,
    reducible: bool,
}

/// Reducibility sweep over a list of n values at fixed p.
pub fn reducibility_table(p: u64, n_list: &[u32], config: &JobConfig) -> Result<Value> {
    let mut rows = Vec::new();
    for &n in n_list {
        let mut c = config.clone();
        c.p = p;
        c.n = n;
        for r in reducibility_rows(&c)? {
            rows.push(ReducibilityJsonRow {
                p: r.p,
                n: r.n,
                chi: r.chi,
                n_parity: if r.n % 2 == 0 { "even" } else { "odd" },
                predicate: r.predicate,
                self_associate: r.self_associate,
                pole_at_zero: r.pole_at_zero,
                reducible: r.reducible,
            });
        }
    }
    Ok(json!({
        "schema": crate::config::SCHEMA_VERSION,
        "kind": "reducibility",
        "p": p,
        "n_list": n_list,
        "rows": rows,
    }))
}

/// The same sweep as a small LaTeX tabular.
pub fn reducibility_latex(p: u64, n_list: &[u32], config: &JobConfig) -> Result<String> {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{llllll}\n");
    out.push_str("$n$ & class & self-assoc. & pole at $s=0$ & reducible \\\\\n\\hline\n");
    for &n in n_list {
        let mut c = config.clone();
        c.p = p;
        c.n = n;
        for r in reducibility_rows(&c)? {
            out.push_str(&format!(
                "{} & {} & {} & {} & {} \\\\\n",
                r.n,
                r.chi.replace('_', "\\_"),
                r.self_associate,
                r.pole_at_zero,
                r.reducible
            ));
        }
    }
    out.push_str("\\end{tabular}\n");
    Ok(out)
}

pub fn dmatrix_table(ctx: &FieldCtx, chi: &MultChar, method: DMethod) -> Result<Value> {
    let psi = AddChar::unramified(ctx);
    let nctx = canonical_ctx(ctx, &psi)?;
    let m = dmatrix(&nctx, chi, &psi, method)?;
    let j = coeff_matrix_to_json(&m, &chi_id(chi));
    Ok(json!({
        "schema": crate::config::SCHEMA_VERSION,
        "kind": "dmatrix",
        "p": ctx.p,
        "n": ctx.n,
        "matrix": j,
    }))
}

#[derive(Serialize)]
struct FactorRow {
    chi: String,
    e_chi: u32,
    l: RatFunJson,
    epsilon: RatFunJson,
    gamma: RatFunJson,
}

pub fn factors_table(config: &JobConfig) -> Result<Value> {
    let ctx = FieldCtx::new(config.p, config.n)?;
    let psi = AddChar::unramified(&ctx);
    let chars = enumerate_chars(ctx.p, ctx.n, config.conductor_bound, PiValuePolicy::Small)?;
    let mut rows = Vec::new();
    for chi in &chars {
        rows.push(FactorRow {
            chi: chi_id(chi),
            e_chi: chi.conductor(),
            l: ratfun_to_json(&lfactor(ctx.p, chi)),
            epsilon: ratfun_to_json(&epsilon_factor(&ctx, chi, &psi)?),
            gamma: ratfun_to_json(&tate_gamma(&ctx, chi, &psi)?),
        });
    }
    Ok(json!({
        "schema": crate::config::SCHEMA_VERSION,
        "kind": "factors",
        "p": ctx.p,
        "n": ctx.n,
        "rows": rows,
    }))
}
