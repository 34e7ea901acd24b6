use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use simplex_bernstein::basis::{compare_generating, eval};
use simplex_bernstein::identities::{
    check_axis_symmetry, check_decomposition, check_permutation_symmetry, check_recurrence,
    CheckConfig, CheckReport, Counterexample, DecompositionWeight, ReportValue,
};
use simplex_bernstein::operator::{bundled, convergence_table, GridStep};
use simplex_bernstein::qbernstein::{
    check_q_decomposition, check_q_symmetry, q_basis_eval, QBasisId, QParam,
};
use simplex_bernstein::{BasisId, Error, Rational};

use crate::parse::{self, Number, Point};
use crate::{CheckArgs, Cli, Command, EvalArgs, Format, GenfunArgs, TableArgs, WeightArg};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.format.unwrap_or(Format::Json)),
        Command::Check(args) => cmd_check(args, cli.format.unwrap_or(Format::Json), cli.seed),
        Command::Table(args) => cmd_table(args, cli.format.unwrap_or(Format::Csv)),
        Command::Genfun(args) => cmd_genfun(args, cli.format.unwrap_or(Format::Json)),
    }
}

fn to_json(value: &impl Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn check_dim(flag: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found }).context(format!("--{flag}"));
    }
    Ok(())
}

fn show_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_eval(args: &EvalArgs, format: Format) -> Result<Outcome> {
    let v = parse::multi_index(&args.v)?;
    check_dim("v", args.k, v.dim())?;
    let id = BasisId::new(v.clone(), args.n)?;
    let point = parse::point(&args.x)?;

    let (x_json, x_csv, value_json, value_csv, q_shown): (
        Vec<Value>,
        Vec<String>,
        Value,
        String,
        Option<f64>,
    ) = match (&args.q, point) {
        (Some(q), point) => {
            let q = match parse::number(q)? {
                Number::Exact(r) => QParam::from_rational(r)?,
                Number::Float(f) => QParam::new(f)?,
            };
            let x = match point {
                Point::Exact(p) => p.to_f64(),
                Point::Float(p) => p,
            };
            check_dim("x", args.k, x.dim())?;
            let value = q_basis_eval(&QBasisId::new(id, q.clone()), &x)?;
            (
                x.coords().iter().map(|&c| json!(c)).collect(),
                x.coords().iter().map(f64::to_string).collect(),
                json!(value),
                value.to_string(),
                Some(q.value()),
            )
        }
        (None, Point::Exact(x)) => {
            check_dim("x", args.k, x.dim())?;
            let value = eval(&id, &x)?;
            (
                x.coords()
                    .iter()
                    .map(|c| serde_json::to_value(ReportValue::from(c)))
                    .collect::<Result<_, _>>()?,
                x.coords().iter().map(show_rational).collect(),
                serde_json::to_value(ReportValue::from(&value))?,
                show_rational(&value),
                None,
            )
        }
        (None, Point::Float(x)) => {
            check_dim("x", args.k, x.dim())?;
            let value = eval(&id, &x)?;
            (
                x.coords().iter().map(|&c| json!(c)).collect(),
                x.coords().iter().map(f64::to_string).collect(),
                json!(value),
                value.to_string(),
                None,
            )
        }
    };

    let text = match format {
        Format::Json => {
            let mut record = json!({
                "k": args.k,
                "n": args.n,
                "v": v.entries(),
                "x": x_json,
                "value": value_json,
            });
            if let Some(q) = q_shown {
                record["q"] = json!(q);
            }
            to_json(&record)?
        }
        Format::Csv => {
            let v_csv: Vec<String> = v.entries().iter().map(u32::to_string).collect();
            format!(
                "k,n,v,x,q,value\n{},{},{},{},{},{}\n",
                args.k,
                args.n,
                v_csv.join(" "),
                x_csv.join(" "),
                q_shown.map(|q| q.to_string()).unwrap_or_default(),
                value_csv
            )
        }
    };
    Ok(Outcome::ok(text))
}

/// Suites in output order.
const SUITES: [&str; 4] = ["thm1", "thm2", "thm3", "thm4"];

fn cmd_check(args: &CheckArgs, format: Format, seed: u64) -> Result<Outcome> {
    if format != Format::Json {
        bail!("check reports are JSON only");
    }
    if args.k == 0 {
        return Err(Error::InvalidDimension.into());
    }
    let qs = parse::numbers(&args.q)?
        .into_iter()
        .map(|q| match q {
            Number::Exact(r) => QParam::from_rational(r),
            Number::Float(f) => QParam::new(f),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weight = match args.weight {
        WeightArg::Stated => DecompositionWeight::Stated,
        WeightArg::Mutated => DecompositionWeight::Mutated,
        WeightArg::Unit => DecompositionWeight::Unit,
    };
    let config = CheckConfig::new(args.k, args.n_max)
        .with_seed(seed)
        .with_random_points(args.points);

    let none = !(args.thm1 || args.thm2 || args.thm3 || args.thm4);
    let selected = [args.thm1, args.thm2, args.thm3, args.thm4].map(|s| s || args.all || none);

    let mut out = serde_json::Map::new();
    let mut failed = false;
    for (suite, _) in SUITES.iter().zip(selected).filter(|(_, on)| *on) {
        let report: CheckReport = match *suite {
            "thm1" => check_decomposition(&config, weight)?.merge(check_recurrence(&config)?),
            "thm2" => check_axis_symmetry(&config)?.merge(check_permutation_symmetry(&config)?),
            "thm3" => check_q_decomposition(&config, &qs, weight)?,
            _ => check_q_symmetry(&config, &qs)?,
        };
        failed |= !report.passed();
        let records: &Vec<Counterexample> = &report.counterexamples;
        out.insert(suite.to_string(), serde_json::to_value(records)?);
    }
    Ok(Outcome {
        text: to_json(&Value::Object(out))?,
        code: if failed { 1 } else { 0 },
    })
}

fn cmd_table(args: &TableArgs, format: Format) -> Result<Outcome> {
    let f = bundled(&args.function, args.k)?;
    let degrees = parse::degrees(&args.degrees)?;
    let step = match parse::number(&args.grid_step)? {
        Number::Exact(r) => GridStep::from_rational(&r)?,
        Number::Float(x) => bail!(Error::InvalidGridStep(format!(
            "{x} must be given as a fraction 1/M"
        ))),
    };
    let rows = convergence_table(&f, &degrees, &step)?;
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut text = String::from("function,k,n,grid_step,sup_error\n");
            for row in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{:e}\n",
                    row.function, row.k, row.n, row.grid_step, row.sup_error
                ));
            }
            text
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_genfun(args: &GenfunArgs, format: Format) -> Result<Outcome> {
    let v = parse::multi_index(&args.v)?;
    if let Some(k) = args.k {
        check_dim("v", k, v.dim())?;
    }
    let x = parse::float_point(&args.x)?;
    check_dim("x", v.dim(), x.dim())?;
    let t = parse::number(&args.t)?.to_f64();
    let cmp = compare_generating(&v, &x, t, args.truncation)?;
    let text = match format {
        Format::Json => to_json(&json!({
            "v": v.entries(),
            "x": x.coords(),
            "t": t,
            "truncation": args.truncation,
            "partial": cmp.partial,
            "closed": cmp.closed,
            "abs_diff": cmp.abs_diff,
        }))?,
        Format::Csv => format!(
            "partial,closed,abs_diff\n{:e},{:e},{:e}\n",
            cmp.partial, cmp.closed, cmp.abs_diff
        ),
    };
    Ok(Outcome::ok(text))
}
