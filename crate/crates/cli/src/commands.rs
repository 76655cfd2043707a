//! Command implementations. Each writes its report to `out`, diagnostics to
//! `err`, and returns the process exit code on success.

use std::io::Write;

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use spcycles_core::classes::{identity_scan, weight_for_signature, IdentityReport};
use spcycles_core::cones::{
    accumulation_cone_model, canonicalize, convergence_scan, extremal_generators, extremal_rays, is_pointed,
    pointedness_witness, span_dimension, Ray,
};
use spcycles_core::lattice::{
    build_even_unimodular, common_component_family, gauss_reduce, moment_matrix, EvenLattice,
    HalfIntegralMatrix, LatticeVector,
};
use spcycles_core::qseries::dim_mk;
use spcycles_core::ExactRational;

use crate::format::rational_to_string;
use crate::{BasisCache, Cli, CliError, Command, Format, LatticeCommand, RunConfig};

/// Dispatches a parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cache = BasisCache::new(cli.cache_dir);
    match cli.command {
        Command::Identities { n, max_m } => {
            identities(n, max_m, cli.format.unwrap_or(Format::Csv), out, err)
        }
        Command::Converge {
            weight,
            max_m,
            precision,
            full,
            ..
        } => {
            let config = RunConfig::resolve(weight.n, weight.weight, max_m, precision)?;
            converge(&config, !full, cli.format.unwrap_or(Format::Csv), &cache, out, err)
        }
        Command::Cone {
            weight,
            max_m,
            precision,
        } => {
            let config = RunConfig::resolve(weight.n, weight.weight, max_m, precision)?;
            json_only(cli.format)?;
            cone(&config, &cache, out, err)
        }
        Command::Lattice { command } => {
            json_only(cli.format)?;
            lattice(command, out)
        }
    }
}

fn json_only(format: Option<Format>) -> Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage("this command only supports --format json".into())),
        _ => Ok(()),
    }
}

fn write_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn q(x: &ExactRational) -> Value {
    Value::String(rational_to_string(x))
}

fn ray_json(r: &Ray) -> Value {
    Value::Array(r.canonical().iter().map(q).collect())
}

fn display_float(x: &ExactRational) -> String {
    format!("{:e}", x.to_f64().unwrap_or(f64::NAN))
}

fn physical_note(config: &RunConfig, err: &mut dyn Write) {
    if !config.is_physical() {
        let _ = writeln!(
            err,
            "note: weight {} is non-physical (no even unimodular lattice of signature (2k - 2, 2)); \
             rays approach +e_0 rather than the Kahler ray",
            config.weight
        );
    }
}

pub fn identities(
    n: u32,
    max_m: u64,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    weight_for_signature(n).map_err(|e| CliError::Usage(format!("--n {n}: {e}")))?;
    if n % 8 != 2 {
        let _ = writeln!(err, "note: n = {n} is not 2 mod 8; the identities are checked for the weight 1 + n/2 anyway");
    }
    let rows = identity_scan(n, max_m)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "m",
                "n",
                "coefficient_lhs",
                "coefficient_rhs",
                "coefficient_equal",
                "primitive_lhs",
                "primitive_rhs",
                "primitive_equal",
            ])?;
            for (c, p) in &rows {
                w.write_record([
                    c.m.to_string(),
                    c.n.to_string(),
                    rational_to_string(&c.lhs),
                    rational_to_string(&c.rhs),
                    c.equal.to_string(),
                    rational_to_string(&p.lhs),
                    rational_to_string(&p.rhs),
                    p.equal.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let report = |r: &IdentityReport| json!({ "equal": r.equal, "lhs": q(&r.lhs), "rhs": q(&r.rhs) });
            let records: Vec<Value> = rows
                .iter()
                .map(|(c, p)| json!({ "coefficient": report(c), "m": c.m, "primitive": report(p) }))
                .collect();
            let all = rows.iter().all(|(c, p)| c.equal && p.equal);
            write_json(out, &json!({ "all_equal": all, "max_m": max_m, "n": n, "records": records }))?;
        }
    }
    match rows.iter().find(|(c, p)| !(c.equal && p.equal)) {
        None => Ok(0),
        Some((c, _)) => {
            let _ = writeln!(err, "identity check failed at m = {}", c.m);
            Ok(1)
        }
    }
}

pub fn converge(
    config: &RunConfig,
    primitive: bool,
    format: Format,
    cache: &BasisCache,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    physical_note(config, err);
    let ms: Vec<u64> = (1..=config.max_m).collect();
    let rows = if ms.is_empty() {
        Vec::new()
    } else {
        let basis = cache.load_or_compute(config.weight, config.precision, err)?;
        convergence_scan(&basis, &ms, primitive)?
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["m", "distance_num", "distance_den", "distance_float"])?;
            for row in &rows {
                w.write_record([
                    row.m.to_string(),
                    row.distance.numer().to_string(),
                    row.distance.denom().to_string(),
                    display_float(&row.distance),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "distance": q(&r.distance), "distance_float": display_float(&r.distance), "m": r.m }))
                .collect();
            write_json(
                out,
                &json!({
                    "classes": if primitive { "primitive" } else { "full" },
                    "max_m": config.max_m,
                    "n": config.n,
                    "physical": config.is_physical(),
                    "precision": config.precision,
                    "rows": records,
                    "weight": config.weight,
                }),
            )?;
        }
    }
    Ok(0)
}

pub fn cone(
    config: &RunConfig,
    cache: &BasisCache,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    physical_note(config, err);
    let basis = cache.load_or_compute(config.weight, config.precision, err)?;
    let full = accumulation_cone_model(&basis, config.max_m)?;
    let half = full.prefix(config.max_m as usize / 2 + 1);
    let pointed = is_pointed(&full);
    let (extremal, rays, stable) = if pointed {
        let indices = extremal_generators(&full)?;
        let mut rays = indices
            .iter()
            .map(|&i| canonicalize(&full.generators()[i]))
            .collect::<Result<Vec<_>, _>>()?;
        rays.sort();
        let stable = is_pointed(&half) && extremal_rays(&half)? == rays;
        (
            json!(indices),
            Value::Array(rays.iter().map(ray_json).collect()),
            stable,
        )
    } else {
        (Value::Null, Value::Null, false)
    };
    let witness = pointedness_witness(&full).map(|y| Value::Array(y.iter().map(q).collect()));
    write_json(
        out,
        &json!({
            "dim": span_dimension(&full),
            "extremal_generators": extremal,
            "extremal_rays": rays,
            "extremal_stable": stable,
            "generator_count": full.generators().len(),
            "max_m": config.max_m,
            "n": config.n,
            "physical": config.is_physical(),
            "pointed": pointed,
            "pointedness_witness": witness,
            "space_dimension": dim_mk(config.weight.into()),
            "weight": config.weight,
        }),
    )?;
    Ok(0)
}

fn matrix_json(t: &HalfIntegralMatrix) -> Value {
    json!({ "doubled": true, "matrix": t.doubled() })
}

fn lattice_for(n: u32) -> Result<EvenLattice, CliError> {
    build_even_unimodular(n).map_err(|e| CliError::Usage(format!("--n {n}: {e}")))
}

fn parse_matrix(flag: &str, text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("{flag}: expected a JSON array of integer rows ({e})")))
}

pub fn lattice(command: LatticeCommand, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        LatticeCommand::Build { n } => {
            let l = lattice_for(n)?;
            write_json(
                out,
                &json!({
                    "determinant": l.determinant().to_string(),
                    "even": l.is_even(),
                    "gram": l.gram(),
                    "n": n,
                    "rank": l.rank(),
                    "signature": [l.signature().0, l.signature().1],
                    "unimodular": l.is_unimodular(),
                }),
            )?;
            Ok(0)
        }
        LatticeCommand::Moment { n, vectors } => {
            let l = lattice_for(n)?;
            let tuple: Vec<LatticeVector> = parse_matrix("--vectors", &vectors)?
                .into_iter()
                .map(LatticeVector)
                .collect();
            let t = moment_matrix(&l, &tuple)?;
            write_json(
                out,
                &json!({
                    "determinant": q(&t.determinant()),
                    "moment": matrix_json(&t),
                    "positive_definite": t.is_positive_definite(),
                    "positive_semidefinite": t.is_positive_semidefinite(),
                    "rank": t.rank(),
                }),
            )?;
            Ok(0)
        }
        LatticeCommand::Reduce { matrix } => {
            let t = HalfIntegralMatrix::from_doubled(parse_matrix("--matrix", &matrix)?)
                .map_err(|e| CliError::Usage(format!("--matrix: {e}")))?;
            let (reduced, u) = gauss_reduce(&t).map_err(|e| CliError::Usage(format!("--matrix: {e}")))?;
            write_json(
                out,
                &json!({
                    "determinant": q(&t.determinant()),
                    "input": matrix_json(&t),
                    "reduced": matrix_json(&reduced),
                    "u": u,
                }),
            )?;
            Ok(0)
        }
        LatticeCommand::Family { n, m, j_max } => {
            let l = lattice_for(n)?;
            let report = common_component_family(&l, m, j_max)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let members: Vec<Value> = report
                .members
                .iter()
                .map(|f| {
                    json!({
                        "determinant": q(&f.determinant),
                        "j": f.j,
                        "moment": matrix_json(&f.moment),
                        "moment_matches": f.moment_matches,
                        "span_matches": f.span_matches,
                        "tuple": [f.tuple[0].coords(), f.tuple[1].coords()],
                    })
                })
                .collect();
            let pass = report.all_checks_pass();
            write_json(
                out,
                &json!({
                    "all_checks_pass": pass,
                    "determinants_increasing": report.determinants_increasing,
                    "first": report.first.coords(),
                    "m": m,
                    "members": members,
                    "n": n,
                    "second": report.second.coords(),
                }),
            )?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}
