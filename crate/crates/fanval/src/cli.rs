//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fanval_core::indicator::{
    euler_involution_check, exceptional_arrangement, hug_kabluchko_check, klivans_swartz_indicator_check,
    lemma_key_check, recover_cone, sommerville_check, theorem_vk_arr_check, verify_polar_duality,
    verify_vk_valuation, vk, vk_terms, IndicatorCheck,
};
use fanval_core::intrinsic::{verify_klivans_swartz, verify_zaslavsky, IntrinsicSampler};
use fanval_core::linalg::primitive_from_rational;
use fanval_core::projection::{check_moreau_isomorphism, metric_projection, moreau_fan};
use fanval_core::{Arrangement, Cone, Fan, IndicatorElement};
use serde_json::{json, Value};

use crate::json::{self as io, Instance, InputError};
use crate::suite::{self, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// V_k is a simple valuation under a hyperplane split (needs --normal)
    VkVal,
    /// regions of an arrangement against its flats
    Key,
    /// V_k of an arrangement against its flats
    VkArr,
    /// alternating sum of F − N_F C
    HugKabluchko,
    /// alternating sum of tangent cones
    Sommerville,
    /// V_k(C) = V_{d−k}(C^∨)
    PolarDuality,
    /// Moreau fan faces against intervals of the face lattice
    MoreauIso,
    /// the Euler map is an involution
    EulerInvolution,
    /// V_k of an arrangement equals w_k [R^d] almost everywhere
    KsIndicator,
    /// Monte Carlo coefficients against Whitney numbers
    KlivansSwartz,
    /// ōχ(1) and ōχ(−1) of a fan
    Zaslavsky,
    /// cone recovery from its V_k terms
    Recovery,
}

impl Theorem {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "fanval", version, about = "Exact valuations on polyhedral cones, fans and hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Monte Carlo sample count (per cone)
    #[arg(short = 'N', long, global = true, default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Confidence multiplier for statistical checks
    #[arg(long, global = true, default_value_t = 4.0, value_parser = positive)]
    pub z: f64,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unsigned characteristic polynomial of an arrangement
    Chi {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Closed regions of an arrangement
    Regions {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Lattice of flats with Möbius values
    Flats {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Nearest point of a cone
    Project {
        #[arg(long)]
        cone: PathBuf,
        /// Comma-separated rational coordinates, e.g. 1,-2/3
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Moreau fan of a cone
    Moreau {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Monte Carlo intrinsic volumes of a cone
    Intrinsic {
        #[arg(long)]
        cone: PathBuf,
        /// Emit running estimates after each twentieth of the samples
        #[arg(long)]
        trace: bool,
    },
    /// V_k of a cone as a sum of indicator functions
    Vk {
        #[arg(long)]
        cone: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Exceptional arrangement of an arrangement
    Exceptional {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Check one identity on one instance
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Cone, arrangement or fan file (kind detected from its keys)
        #[arg(long, visible_alias = "cone", visible_alias = "arrangement", visible_alias = "fan")]
        input: PathBuf,
        /// Restrict to one k; all admissible k otherwise
        #[arg(short)]
        k: Option<usize>,
        /// Hyperplane normal for vk-val, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        normal: Option<String>,
    },
    /// Run the acceptance battery
    Suite {
        /// Run only these criteria (1-10)
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

/// What a command produced.
struct Output {
    json: Value,
    text: String,
    csv: Option<Vec<Vec<String>>>,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, csv: None, ok: true }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
}

impl From<fanval_core::Error> for CliError {
    fn from(e: fanval_core::Error) -> Self {
        CliError::Input(InputError::Geometry(e))
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its report to `out`. Returns the exit code: 0 on success, 1 when a
/// verification fails, 2 on bad arguments or input.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli);
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match cli.format {
        Format::Text => writeln!(out, "{}", output.text.trim_end()).map_err(|e| e.to_string()),
        Format::Json => serde_json::to_string_pretty(&output.json)
            .map_err(|e| e.to_string())
            .and_then(|s| writeln!(out, "{s}").map_err(|e| e.to_string())),
        Format::Csv => match &output.csv {
            Some(rows) => write_csv(out, rows),
            None => {
                eprintln!("error: this command has no CSV output");
                return 2;
            }
        },
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if output.ok {
        0
    } else {
        1
    }
}

fn write_csv(out: &mut dyn Write, rows: &[Vec<String>]) -> Result<(), String> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Chi { arrangement } => chi(&io::load_arrangement(arrangement)?),
        Command::Regions { arrangement } => Ok(regions(&io::load_arrangement(arrangement)?)),
        Command::Flats { arrangement } => Ok(flats(&io::load_arrangement(arrangement)?)),
        Command::Project { cone, point } => project(&io::load_cone(cone)?, point),
        Command::Moreau { cone } => Ok(moreau(&io::load_cone(cone)?)),
        Command::Intrinsic { cone, trace } => Ok(intrinsic(cli, &io::load_cone(cone)?, *trace)),
        Command::Vk { cone, k } => vk_command(&io::load_cone(cone)?, *k),
        Command::Exceptional { arrangement } => Ok(exceptional(&io::load_arrangement(arrangement)?)),
        Command::Verify { theorem, input, k, normal } => {
            verify(cli, *theorem, input, io::load_instance(input)?, *k, normal.as_deref())
        }
        Command::Suite { only } => run_suite(cli, only),
    }
}

fn chi(a: &Arrangement) -> Result<Output, CliError> {
    let w = a.whitney_numbers();
    let mut json = json!({ "arrangement": io::arrangement(a), "polynomial": w.to_string(), "whitney": w.coefficients() });
    let mut text = w.to_string();
    let mut ok = true;
    if !a.is_empty() {
        let delres = a.char_poly_delres()?;
        ok = delres == w;
        json["deletion_restriction"] = json!(delres.to_string());
        json["routes_agree"] = json!(ok);
        if !ok {
            text = format!("{text}\ndeletion-restriction gives {delres}");
        }
    }
    let mut csv = vec![vec!["k".to_string(), "w_k".to_string()]];
    csv.extend((0..=a.dim()).map(|k| vec![k.to_string(), w.coefficient(k).to_string()]));
    Ok(Output { json, text, csv: Some(csv), ok })
}

fn regions(a: &Arrangement) -> Output {
    let fan = a.regions();
    let mut text = format!("{} regions\n", fan.len());
    for c in fan.cones() {
        text.push_str(&format!("{c}\n"));
    }
    Output::new(json!({ "count": fan.len(), "regions": io::fan(&fan)["cones"] }), text)
}

fn flats(a: &Arrangement) -> Output {
    let lattice = a.flats_lattice();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut csv = vec![vec!["index".into(), "dim".into(), "mobius".into(), "basis".into()]];
    for (i, f) in lattice.flats().iter().enumerate() {
        let mu = lattice.mobius(0, i);
        text.push_str(&format!("dim {} mu {:>3} {}\n", f.dim(), mu, f));
        rows.push(json!({
            "dim": f.dim(),
            "mobius": mu,
            "basis": io::integer_vectors_json(f.basis()),
            "hyperplanes": lattice.hyperplanes_containing(i),
        }));
        csv.push(vec![i.to_string(), f.dim().to_string(), mu.to_string(), f.to_string()]);
    }
    Output { json: json!({ "flats": rows }), text, csv: Some(csv), ok: true }
}

fn project(c: &Cone, point: &str) -> Result<Output, CliError> {
    let x = io::parse_point(point)?;
    if x.len() != c.ambient_dim() {
        return Err(CliError::Usage(format!("point has {} coordinates, cone lives in R^{}", x.len(), c.ambient_dim())));
    }
    let r = metric_projection(c, &x);
    let json = json!({
        "point": io::rational_vector(&x),
        "projection": io::rational_vector(&r.point),
        "distance_sq": io::rational(&r.distance_sq),
        "face": io::cone(r.face.cone()),
    });
    let coords: Vec<String> = r.point.iter().map(|v| v.to_string()).collect();
    let text = format!(
        "projection ({})\ndistance^2 {}\nface {}",
        coords.join(", "),
        r.distance_sq,
        r.face.cone()
    );
    Ok(Output::new(json, text))
}

fn moreau(c: &Cone) -> Output {
    let fan = moreau_fan(c);
    let iso = check_moreau_isomorphism(c);
    let mut text = format!("{} maximal cones\n", fan.len());
    for cone in fan.cones() {
        text.push_str(&format!("{cone}\n"));
    }
    text.push_str(&format!(
        "faces {} intervals {} bijective {} order-preserving {}",
        iso.moreau_faces, iso.intervals, iso.bijective, iso.order_preserving
    ));
    let json = json!({
        "fan": io::fan(&fan),
        "moreau_faces": iso.moreau_faces,
        "intervals": iso.intervals,
        "bijective": iso.bijective,
        "order_preserving": iso.order_preserving,
    });
    Output { json, text, csv: None, ok: iso.holds() }
}

fn intrinsic(cli: &Cli, c: &Cone, trace: bool) -> Output {
    let d = c.ambient_dim();
    let mut sampler = IntrinsicSampler::new(c, cli.seed, 0);
    let mut trace_rows = Vec::new();
    if trace {
        let steps = 20.min(cli.samples);
        let mut done = 0;
        for s in 1..=steps {
            let upto = cli.samples * s / steps;
            sampler.run(upto - done);
            done = upto;
            trace_rows.push(sampler.estimate());
        }
    } else {
        sampler.run(cli.samples);
    }
    let est = sampler.estimate();
    let radii: Vec<f64> = (0..=d).map(|k| est.ci_radius(k, cli.z)).collect();
    let mut text = format!("samples {} seed {}\n", cli.samples, cli.seed);
    for k in 0..=d {
        text.push_str(&format!("v_{k} = {:.6} ± {:.6}\n", est.value(k), radii[k]));
    }
    let mut json = json!({
        "samples": cli.samples,
        "seed": cli.seed,
        "z": cli.z,
        "values": est.values(),
        "ci_radius": radii,
    });
    let mut header = vec!["samples".to_string()];
    header.extend((0..=d).map(|k| format!("v_{k}")));
    let mut csv = vec![header];
    if trace {
        json["trace"] = trace_rows
            .iter()
            .map(|e| json!({ "samples": e.samples(), "values": e.values() }))
            .collect::<Vec<_>>()
            .into();
        for e in &trace_rows {
            let mut row = vec![e.samples().to_string()];
            row.extend(e.values().iter().map(|v| v.to_string()));
            csv.push(row);
        }
    } else {
        let mut row = vec![est.samples().to_string()];
        row.extend(est.values().iter().map(|v| v.to_string()));
        csv.push(row);
    }
    Output { json, text, csv: Some(csv), ok: true }
}

fn vk_command(c: &Cone, k: usize) -> Result<Output, CliError> {
    if k > c.ambient_dim() {
        return Err(CliError::Usage(format!("k = {k} exceeds the dimension {}", c.ambient_dim())));
    }
    let f = vk(c, k);
    Ok(Output::new(io::indicator(&f), f.to_string()))
}

fn exceptional(a: &Arrangement) -> Output {
    let pi = exceptional_arrangement(a);
    let mut text = format!("{} hyperplanes\n", pi.len());
    for n in pi.normals() {
        let coords: Vec<String> = n.iter().map(|v| v.to_string()).collect();
        text.push_str(&format!("({})\n", coords.join(",")));
    }
    Output::new(json!({ "normals": io::integer_vectors_json(pi.normals()) }), text)
}

fn check_json(c: &IndicatorCheck) -> Value {
    json!({
        "holds": c.holds,
        "cells": c.cells,
        "mismatches": c.mismatches,
        "lhs_terms": c.lhs.len(),
        "rhs_terms": c.rhs.len(),
    })
}

fn expect_cone(theorem: Theorem, instance: &Instance) -> Result<&Cone, CliError> {
    match instance {
        Instance::Cone(c) => Ok(c),
        other => Err(CliError::Usage(format!("{} needs a cone, got a {}", theorem.name(), other.kind()))),
    }
}

fn expect_arrangement(theorem: Theorem, instance: &Instance) -> Result<&Arrangement, CliError> {
    match instance {
        Instance::Arrangement(a) => Ok(a),
        other => Err(CliError::Usage(format!("{} needs an arrangement, got a {}", theorem.name(), other.kind()))),
    }
}

fn ks_range(k: Option<usize>, d: usize) -> Result<Vec<usize>, CliError> {
    match k {
        Some(k) if k > d => Err(CliError::Usage(format!("k = {k} exceeds the dimension {d}"))),
        Some(k) => Ok(vec![k]),
        None => Ok((0..=d).collect()),
    }
}

fn indicator_checks(rows: Vec<(usize, IndicatorCheck)>) -> (bool, Value) {
    let ok = rows.iter().all(|(_, c)| c.holds);
    let details = rows
        .iter()
        .map(|(k, c)| {
            let mut v = check_json(c);
            v["k"] = json!(k);
            v
        })
        .collect::<Vec<_>>();
    (ok, json!({ "checks": details }))
}

fn verify(
    cli: &Cli,
    theorem: Theorem,
    path: &Path,
    instance: Instance,
    k: Option<usize>,
    normal: Option<&str>,
) -> Result<Output, CliError> {
    let (ok, details) = match theorem {
        Theorem::Key => {
            let c = lemma_key_check(expect_arrangement(theorem, &instance)?);
            (c.holds, check_json(&c))
        }
        Theorem::VkArr => {
            let a = expect_arrangement(theorem, &instance)?;
            let ks = ks_range(k, a.ambient_dim())?;
            indicator_checks(ks.into_iter().map(|k| (k, theorem_vk_arr_check(a, k))).collect())
        }
        Theorem::KsIndicator => {
            let a = expect_arrangement(theorem, &instance)?;
            indicator_checks(klivans_swartz_indicator_check(a).into_iter().enumerate().collect())
        }
        Theorem::VkVal => {
            let c = expect_cone(theorem, &instance)?;
            let normal = normal.ok_or_else(|| CliError::Usage("vk-val needs --normal".into()))?;
            let n = primitive_from_rational(&io::parse_point(normal)?);
            if n.len() != c.ambient_dim() {
                return Err(CliError::Usage("normal has the wrong dimension".into()));
            }
            let ks = ks_range(k, c.ambient_dim())?;
            indicator_checks(ks.into_iter().map(|k| (k, verify_vk_valuation(c, &n, k))).collect())
        }
        Theorem::PolarDuality => {
            let c = expect_cone(theorem, &instance)?;
            let ks = ks_range(k, c.ambient_dim())?;
            indicator_checks(ks.into_iter().map(|k| (k, verify_polar_duality(c, k))).collect())
        }
        Theorem::HugKabluchko => {
            let c = hug_kabluchko_check(expect_cone(theorem, &instance)?);
            (c.holds, check_json(&c))
        }
        Theorem::Sommerville => {
            let c = sommerville_check(expect_cone(theorem, &instance)?);
            (c.holds, check_json(&c))
        }
        Theorem::EulerInvolution => {
            let f = IndicatorElement::cone(expect_cone(theorem, &instance)?.clone());
            let c = euler_involution_check(&f);
            (c.holds, check_json(&c))
        }
        Theorem::MoreauIso => {
            let m = check_moreau_isomorphism(expect_cone(theorem, &instance)?);
            let details = json!({
                "moreau_faces": m.moreau_faces,
                "intervals": m.intervals,
                "bijective": m.bijective,
                "order_preserving": m.order_preserving,
            });
            (m.holds(), details)
        }
        Theorem::Recovery => {
            let c = expect_cone(theorem, &instance)?;
            let d = c.ambient_dim();
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (c.lineality_dim()..=c.dim()).filter(|k| 2 * k != d).collect(),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for k in ks {
                let got = recover_cone(&vk_terms(c, k), k, d);
                let recovered = got.as_ref() == Ok(c);
                ok &= recovered;
                rows.push(json!({
                    "k": k,
                    "recovered": recovered,
                    "error": got.err().map(|e| e.to_string()),
                }));
            }
            (ok, json!({ "checks": rows }))
        }
        Theorem::KlivansSwartz => {
            let a = expect_arrangement(theorem, &instance)?;
            let r = verify_klivans_swartz(a, cli.samples, cli.seed, cli.z)?;
            let rows = r
                .rows
                .iter()
                .map(|r| json!({ "k": r.k, "estimate": r.estimate, "ci_radius": r.ci_radius, "whitney": r.whitney, "within": r.within }))
                .collect::<Vec<_>>();
            (r.holds(), json!({ "samples": cli.samples, "seed": cli.seed, "z": cli.z, "coefficients": rows }))
        }
        Theorem::Zaslavsky => {
            let fan: Fan = match &instance {
                Instance::Arrangement(a) => a.regions(),
                Instance::Fan(f) => f.clone(),
                Instance::Cone(c) => Fan::single(c.clone()),
            };
            let r = verify_zaslavsky(&fan, cli.samples, cli.seed, cli.z);
            let details = json!({
                "samples": cli.samples,
                "seed": cli.seed,
                "z": cli.z,
                "cones": r.cones,
                "at_one": r.at_one,
                "at_minus_one": r.at_minus_one,
                "tolerance": r.tolerance,
                "at_minus_one_vanishes": r.at_minus_one_vanishes,
            });
            (r.holds(), details)
        }
    };
    let status = if ok { "PASS" } else { "FAIL" };
    let instance_json = json!({ "path": path.display().to_string(), "kind": instance.kind() });
    let json = json!({ "theorem": theorem.name(), "instance": instance_json, "status": status, "details": details });
    let text = format!("{status} {} {}", theorem.name(), path.display());
    Ok(Output { json, text, csv: None, ok })
}

fn run_suite(cli: &Cli, only: &[usize]) -> Result<Output, CliError> {
    if let Some(bad) = only.iter().find(|i| !(1..=10).contains(*i)) {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    let cfg = SuiteConfig { seed: cli.seed };
    let outcomes: Vec<_> = suite::criteria()
        .iter()
        .enumerate()
        .filter(|(i, _)| only.is_empty() || only.contains(&(i + 1)))
        .map(|(_, c)| c(cfg))
        .collect();
    let ok = outcomes.iter().all(|o| o.passed);
    let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
    let json = json!({ "seed": cli.seed, "criteria": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>() });
    let mut csv = vec![vec!["criterion".to_string(), "name".to_string(), "status".to_string(), "summary".to_string()]];
    csv.extend(outcomes.iter().map(|o| vec![o.id.to_string(), o.name.to_string(), o.status().to_string(), o.summary.clone()]));
    Ok(Output { json, text, csv: Some(csv), ok })
}
