//! `scan`: a template expression evaluated over a grid of parameters.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use beideal::dsl::parse_expr;
use beideal::verify::{run_invariants, Mode, OracleConfig, Verdict};
use beideal::{Error, Result};

use crate::{combine, conjecture_status, exit_code, param_table, ModeArg, Outcome};

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Expression with `{name}` placeholders, e.g. `fan({m}; 1)`.
    #[arg(long)]
    pub template: String,
    /// `name=lo..hi` (inclusive) or `name=a|b|c`; repeat for a grid.
    #[arg(long = "param", required = true)]
    pub params: Vec<String>,
    /// Test whether the extremal Betti number equals the CM-type.
    #[arg(long)]
    pub conjecture: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub values: Vec<String>,
}

fn bad(msg: String) -> Error {
    Error::Parse { pos: 0, msg }
}

pub fn parse_param(text: &str) -> Result<Param> {
    let (name, spec) = text
        .split_once('=')
        .ok_or_else(|| bad(format!("parameter {text:?} is not name=values")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad(format!("bad parameter name {name:?}")));
    }
    let values: Vec<String> = if let Some((lo, hi)) = spec.split_once("..") {
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| bad(format!("bad range bound {s:?} in {text:?}")))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi || hi - lo > 1000 {
            return Err(bad(format!("range {lo}..{hi} is empty or too long")));
        }
        (lo..=hi).map(|v| v.to_string()).collect()
    } else {
        spec.split('|').map(|s| s.trim().to_string()).collect()
    };
    if values.iter().any(String::is_empty) {
        return Err(bad(format!("empty value in {text:?}")));
    }
    Ok(Param {
        name: name.to_string(),
        values,
    })
}

/// Cartesian product, first parameter varying slowest.
pub fn grid(params: &[Param]) -> Vec<BTreeMap<String, String>> {
    let mut out = vec![BTreeMap::new()];
    for p in params {
        out = out
            .into_iter()
            .flat_map(|row| {
                p.values.iter().map(move |v| {
                    let mut row = row.clone();
                    row.insert(p.name.clone(), v.clone());
                    row
                })
            })
            .collect();
    }
    out
}

pub fn instantiate(template: &str, params: &BTreeMap<String, String>) -> String {
    params.iter().fold(template.to_string(), |t, (k, v)| {
        t.replace(&format!("{{{k}}}"), v)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Values {
    pub reg: Option<usize>,
    pub projdim: Option<usize>,
    #[serde(rename = "extremalBetti")]
    pub extremal_betti: Option<u64>,
    #[serde(rename = "cmType")]
    pub cm_type: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub params: BTreeMap<String, String>,
    pub expression: String,
    pub closed: Option<Values>,
    pub oracle: Option<Values>,
    pub verdict: Verdict,
    /// `holds`, `fails` or `untested`; absent without `--conjecture`.
    pub conjecture: Option<&'static str>,
    pub error: Option<String>,
    pub notes: Vec<String>,
}

fn row(args: &ScanArgs, params: BTreeMap<String, String>, cfg: &OracleConfig) -> ScanRow {
    let expression = instantiate(&args.template, &params);
    let mode: Mode = args.mode.into();
    let report = parse_expr(&expression).and_then(|e| run_invariants(&e, mode, cfg));
    match report {
        Ok(r) => {
            let mut notes: Vec<String> =
                r.closed_form.iter().flat_map(|c| c.notes.clone()).collect();
            notes.extend(r.oracle_error.clone());
            for a in &r.adjudications {
                let cands: Vec<String> = a
                    .candidates
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                notes.push(format!(
                    "{}: {}; oracle {}",
                    a.question,
                    cands.join(", "),
                    a.oracle
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "n/a".into())
                ));
            }
            ScanRow {
                params,
                expression: r.expression.clone(),
                closed: r.closed_form.as_ref().map(|c| Values {
                    reg: c.reg,
                    projdim: c.projdim,
                    extremal_betti: c.extremal_betti,
                    cm_type: c.cm_type,
                }),
                oracle: r.oracle.as_ref().map(|o| Values {
                    reg: o.reg,
                    projdim: o.projdim,
                    extremal_betti: o.extremal_betti,
                    cm_type: o.cm_type,
                }),
                verdict: r.verdict,
                conjecture: args.conjecture.then(|| conjecture_status(&r)),
                error: None,
                notes,
            }
        }
        Err(e) => ScanRow {
            params,
            expression,
            closed: None,
            oracle: None,
            verdict: Verdict::NotComputable,
            conjecture: args.conjecture.then_some("untested"),
            error: Some(e.to_string()),
            notes: Vec::new(),
        },
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn values_cell(v: &Option<Values>) -> String {
    match v {
        None => "-".into(),
        Some(v) => format!(
            "{}/{}/{}/{}",
            opt(v.reg),
            opt(v.projdim),
            opt(v.extremal_betti),
            opt(v.cm_type)
        ),
    }
}

/// Rows come back in grid order whatever order the workers finish in.
pub fn scan(args: &ScanArgs, cfg: &OracleConfig) -> Result<Outcome> {
    let params = args
        .params
        .iter()
        .map(|p| parse_param(p))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<ScanRow> = grid(&params)
        .into_par_iter()
        .map(|p| row(args, p, cfg))
        .collect();
    let verdict = combine(rows.iter().map(|r| r.verdict));
    let mut table = format!(
        "{:<24} {:<28} {:>16} {:>16}  {:<15}{}\n",
        "params",
        "expression",
        "closed r/p/b/cm",
        "oracle r/p/b/cm",
        "verdict",
        if args.conjecture { " conjecture" } else { "" }
    );
    for r in &rows {
        let _ = writeln!(
            table,
            "{:<24} {:<28} {:>16} {:>16}  {:<15}{}",
            param_table(&r.params),
            r.expression,
            values_cell(&r.closed),
            values_cell(&r.oracle),
            r.verdict.to_string(),
            r.conjecture.map(|c| format!(" {c}")).unwrap_or_default()
        );
        if let Some(e) = &r.error {
            let _ = writeln!(table, "  error: {e}");
        }
    }
    Ok(Outcome {
        json: json!({
            "template": args.template,
            "conjecture": args.conjecture,
            "rows": rows,
            "verdict": verdict,
        }),
        table,
        code: exit_code(verdict),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        let p = parse_param("m=2..4").unwrap();
        assert_eq!(p.values, ["2", "3", "4"]);
        let p = parse_param("a=K(2)|fan(2; 1)").unwrap();
        assert_eq!(p.values, ["K(2)", "fan(2; 1)"]);
        assert!(parse_param("m").is_err());
        assert!(parse_param("m=4..2").is_err());
        assert!(parse_param("=1..2").is_err());
        assert!(parse_param("m=1||2").is_err());
    }

    #[test]
    fn grid_order_is_row_major() {
        let ps = [
            parse_param("a=1..2").unwrap(),
            parse_param("b=x|y").unwrap(),
        ];
        let g: Vec<String> = grid(&ps).iter().map(param_table).collect();
        assert_eq!(g, ["a=1 b=x", "a=1 b=y", "a=2 b=x", "a=2 b=y"]);
    }

    #[test]
    fn templates_fill_every_placeholder() {
        let mut p = BTreeMap::new();
        p.insert("a".to_string(), "K(2)".to_string());
        p.insert("b".to_string(), "K(3)".to_string());
        assert_eq!(
            instantiate("cone({a}, {b}, {a})", &p),
            "cone(K(2), K(3), K(2))"
        );
    }
}
