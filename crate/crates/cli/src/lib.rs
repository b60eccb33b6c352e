//! `spectra` command line.
//!
//! Every subcommand produces a JSON document with a top-level `"schema": 1`
//! field; `--format csv|table` renders the tabular part instead. Exit codes:
//! 0 on success, 1 on domain errors, 2 on malformed input.

pub mod error;
pub mod output;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use spectra_core::gm::{
    d_elliptic, d_rational, gm_gap_ok, kernel_slope, restriction_types_elliptic,
    splitting_types_rational, CurveFamilyKind,
};
use spectra_core::hn::{
    hnp_from_points, is_semistable_profile, polygon_geq, slopes, HnPolygon, RankDegreePoint,
};
use spectra_core::model::{
    catalog_description, catalog_lookup, normalize, slope, twist, validate_threefold,
    BundleChern, ThreefoldInvariants, ValidatedThreefold, CATALOG,
};
use spectra_core::riemann_roch::{
    euler_char_integral, euler_char_line_power, euler_char_surface, euler_char_threefold,
    spectrum_degree, spectrum_degree_closed, spectrum_invariants, spectrum_rank,
    spectrum_rank_value, todd_components,
};
use spectra_core::spectrum::{
    bounds, cohomology_table, connectedness_check, enumerate_spectra, symmetry_check,
    vanishing_thresholds, Spectrum, SpectrumConstraints,
};
use spectra_core::Rational;

pub use error::CliError;
pub use output::{Format, Report, Table};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Spectra of rank-two bundles, HN polygons and Grauert-Mulich invariants")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Built-in threefolds
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Slope, twist and normalization of rank-two Chern data
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Riemann-Roch: χ(E) and the rank and degree of the spectrum
    #[command(subcommand)]
    Rr(RrCmd),
    /// Spectrum enumeration and admissibility
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// h1/h2 tables of a spectrum
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// d(W) and Grauert-Mulich splitting types
    #[command(subcommand)]
    Gm(GmCmd),
    /// Harder-Narasimhan polygons
    #[command(subcommand)]
    Hnp(HnpCmd),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    List,
    Show { name: String },
}

/// Chern data, from a request file or inline flags.
#[derive(Debug, Args)]
pub struct BundleArgs {
    /// JSON request file with `threefold` and `chern` ("-" for stdin)
    #[arg(long, conflicts_with_all = ["threefold", "lambda3", "c1_cubed", "c1_c2", "c1sq_lambda", "c2_lambda", "c1_lambdasq", "c1_c2z"])]
    pub request: Option<PathBuf>,
    /// Catalog entry
    #[arg(long, conflicts_with = "lambda3")]
    pub threefold: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["lambda_c2z", "dim_l"])]
    pub lambda3: Option<i64>,
    #[arg(long = "lambda-c2z", allow_hyphen_values = true)]
    pub lambda_c2z: Option<i64>,
    #[arg(long = "dim-l", allow_hyphen_values = true)]
    pub dim_l: Option<i64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c1_cubed: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c1_c2: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c1sq_lambda: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c2_lambda: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub c1_lambdasq: i64,
    #[arg(long = "c1-c2z", allow_hyphen_values = true, default_value_t = 0)]
    pub c1_c2z: i64,
}

#[derive(Debug, Subcommand)]
pub enum ChernCmd {
    Slope(BundleArgs),
    Twist {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    Normalize(BundleArgs),
}

#[derive(Debug, Args)]
pub struct RrArgs {
    #[command(flatten)]
    pub bundle: BundleArgs,
    /// Twist into the normalization window first
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Subcommand)]
pub enum RrCmd {
    /// χ(E) and χ(E_S)
    Chi(RrArgs),
    /// Rank and degree of the spectrum
    Rank(RrArgs),
    /// Degree of the spectrum by both routes
    Degree(RrArgs),
    /// r, d, χ(E) and χ(E_S) of a normalized bundle
    Invariants(RrArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCmd {
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        bounds: bool,
        /// Support window LO,HI
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 2)]
        window: Option<Vec<i64>>,
    },
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    Thresholds {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Connectedness, symmetry and bounds of given spectra
    Check {
        #[arg(long)]
        spectrum: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CohomologyCmd {
    Table {
        /// Spectrum JSON: one spectrum, a list, or `spectrum enumerate` output ("-" for stdin)
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -5)]
        lmin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 5)]
        lmax: i64,
        /// Pick one spectrum out of a list
        #[arg(long)]
        index: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyKindArg {
    Rational,
    EllipticPencil,
    Supplied,
}

#[derive(Debug, Subcommand)]
pub enum GmCmd {
    DInvariant {
        #[arg(long, value_enum, required_unless_present = "family")]
        kind: Option<FamilyKindArg>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        normal_degrees: Option<Vec<i64>>,
        #[arg(long = "dim-l", allow_hyphen_values = true)]
        dim_l: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        mu_max: Option<String>,
        /// JSON family descriptor file
        #[arg(long, conflicts_with = "kind")]
        family: Option<PathBuf>,
    },
    Splittings {
        #[arg(long, allow_hyphen_values = true)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    EllipticRestriction {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Grauert-Mulich gap test of a weakly decreasing slope profile
    Gap {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        profile: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        dw: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HnpCmd {
    Hull {
        /// `[[rank, degree], ...]` inline, or a file path
        #[arg(long, default_value = "[]")]
        points: String,
        /// RANK,DEGREE
        #[arg(long, allow_hyphen_values = true)]
        total: String,
    },
    Compare {
        /// vertex list of the first polygon
        #[arg(long)]
        p: String,
        /// vertex list of the second polygon
        #[arg(long)]
        q: String,
    },
    Semistable {
        #[arg(long, default_value = "[]")]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        total: String,
    },
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Catalog(c) => catalog(c),
        Command::Chern(c) => chern(c),
        Command::Rr(c) => rr(c),
        Command::Spectrum(c) => spectrum(c),
        Command::Cohomology(c) => cohomology(c),
        Command::Gm(c) => gm(c),
        Command::Hnp(c) => hnp(c),
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs them.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_source(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{what}: {e}")))
}

/// Inline JSON when the value starts with `[` or `{`, otherwise a file path.
fn inline_or_file(value: &str) -> Result<String, CliError> {
    let t = value.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(value.to_string())
    } else {
        read_source(&PathBuf::from(value))
    }
}

fn check_schema(v: &Value) -> Result<(), CliError> {
    match v.get("schema") {
        None => Ok(()),
        Some(s) if s.as_u64() == Some(u64::from(SCHEMA)) => Ok(()),
        Some(s) => Err(CliError::input(format!("unsupported schema {s}"))),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("domain types serialize")
}

fn envelope(fields: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    if let Value::Object(m) = fields {
        out.extend(m);
    }
    Value::Object(out)
}

// ---------------------------------------------------------------- catalog

fn catalog(cmd: &CatalogCmd) -> Result<Report, CliError> {
    match cmd {
        CatalogCmd::List => {
            let mut table = Table::new(["name", "lambda3", "lambda_c2Z", "dim_L", "description"]);
            let mut entries = Vec::new();
            for (name, _, desc) in CATALOG {
                let z = catalog_lookup(name)?;
                table.push([
                    name.to_string(),
                    z.lambda3().to_string(),
                    z.lambda_c2z().to_string(),
                    z.dim_l().to_string(),
                    desc.to_string(),
                ]);
                entries.push(json!({
                    "name": name,
                    "lambda3": z.lambda3(),
                    "lambda_c2Z": z.lambda_c2z(),
                    "dim_L": z.dim_l(),
                    "description": desc,
                }));
            }
            Ok(Report::with_table(envelope(json!({ "entries": entries })), table))
        }
        CatalogCmd::Show { name } => {
            let z = catalog_lookup(name)?;
            Ok(Report::json(envelope(json!({
                "name": name,
                "description": catalog_description(name),
                "lambda3": z.lambda3(),
                "lambda_c2Z": z.lambda_c2z(),
                "dim_L": z.dim_l(),
                "mu_L": z.mu_l(),
                "chi_L": euler_char_line_power(1, &z),
                "todd": todd_components(&z),
                "dW": d_elliptic(z.dim_l())?,
            }))))
        }
    }
}

// ------------------------------------------------------------------ chern

#[derive(Deserialize)]
#[serde(untagged)]
enum ThreefoldSpec {
    Named(String),
    Explicit(ThreefoldInvariants),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleRequest {
    #[serde(default)]
    #[allow(dead_code)]
    schema: Option<u32>,
    threefold: ThreefoldSpec,
    chern: BundleChern,
}

fn load_bundle(args: &BundleArgs) -> Result<(ValidatedThreefold, BundleChern), CliError> {
    if let Some(path) = &args.request {
        let text = read_source(path)?;
        let raw: Value = parse_json(&text, "request")?;
        check_schema(&raw)?;
        let req: BundleRequest =
            serde_json::from_value(raw).map_err(|e| CliError::input(format!("request: {e}")))?;
        let z = match req.threefold {
            ThreefoldSpec::Named(name) => catalog_lookup(&name)?,
            ThreefoldSpec::Explicit(inv) => validate_threefold(inv)?,
        };
        return Ok((z, req.chern));
    }
    let z = match (&args.threefold, args.lambda3) {
        (_, Some(lambda3)) => validate_threefold(ThreefoldInvariants {
            lambda3,
            lambda_c2z: args.lambda_c2z.unwrap_or(12),
            dim_l: args.dim_l.unwrap_or(lambda3 + 1),
            name: None,
        })?,
        (Some(name), None) => catalog_lookup(name)?,
        (None, None) => {
            return Err(CliError::input(
                "give --request FILE, --threefold NAME or --lambda3/--lambda-c2z/--dim-l",
            ))
        }
    };
    let c = BundleChern {
        c1_cubed: args.c1_cubed,
        c1_c2: args.c1_c2,
        c1sq_lambda: args.c1sq_lambda,
        c2_lambda: args.c2_lambda,
        c1_lambdasq: args.c1_lambdasq,
        c1_c2z: args.c1_c2z,
    };
    Ok((z, c))
}

fn chern(cmd: &ChernCmd) -> Result<Report, CliError> {
    match cmd {
        ChernCmd::Slope(b) => {
            let (z, c) = load_bundle(b)?;
            Ok(Report::json(envelope(json!({
                "mu": slope(&c, &z),
                "mu_L": z.mu_l(),
            }))))
        }
        ChernCmd::Twist { bundle, m } => {
            let (z, c) = load_bundle(bundle)?;
            let t = twist(&c, &z, *m)?;
            Ok(Report::json(envelope(json!({
                "m": m,
                "chern": t,
                "mu": t.mu(),
            }))))
        }
        ChernCmd::Normalize(b) => {
            let (z, c) = load_bundle(b)?;
            Ok(Report::json(envelope(to_json(&normalize(&c, &z)?))))
        }
    }
}

// --------------------------------------------------------------------- rr

fn rr(cmd: &RrCmd) -> Result<Report, CliError> {
    let args = match cmd {
        RrCmd::Chi(a) | RrCmd::Rank(a) | RrCmd::Degree(a) | RrCmd::Invariants(a) => a,
    };
    let (z, mut c) = load_bundle(&args.bundle)?;
    let mut head = serde_json::Map::new();
    if args.normalize {
        let n = normalize(&c, &z)?;
        head.insert("twist_exponent".into(), json!(n.twist_exponent));
        c = n.normalized;
    }
    let body = match cmd {
        RrCmd::Chi(_) => json!({
            "chi_E": euler_char_integral(&c, &z)?,
            "chi_E_S": euler_char_surface(&c),
        }),
        RrCmd::Rank(_) => json!({
            "r": spectrum_rank(&c, &z)?,
            "d": spectrum_degree(&c, &z)?,
        }),
        RrCmd::Degree(_) => {
            let d = spectrum_degree(&c, &z)?;
            json!({
                "d": d,
                "closed": spectrum_degree_closed(&c),
                "route": -euler_char_threefold(&c, &z) - spectrum_rank_value(&c),
            })
        }
        RrCmd::Invariants(_) => to_json(&spectrum_invariants(&c, &z)?),
    };
    if let Value::Object(m) = body {
        head.extend(m);
    }
    Ok(Report::json(envelope(Value::Object(head))))
}

// --------------------------------------------------------------- spectrum

/// Spectra from one spectrum, a list, or an envelope with a `spectra` field.
fn load_spectra(text: &str) -> Result<Vec<Spectrum>, CliError> {
    let raw: Value = parse_json(text, "spectrum")?;
    check_schema(&raw)?;
    let bad = |e: serde_json::Error| CliError::input(format!("spectrum: {e}"));
    match raw {
        Value::Array(_) => serde_json::from_value(raw).map_err(bad),
        Value::Object(ref m) if m.contains_key("spectra") => {
            serde_json::from_value(m["spectra"].clone()).map_err(bad)
        }
        Value::Object(mut m) => {
            m.remove("schema");
            serde_json::from_value(Value::Object(m)).map(|s| vec![s]).map_err(bad)
        }
        _ => Err(CliError::input("spectrum: expected an object or a list")),
    }
}

fn spectrum(cmd: &SpectrumCmd) -> Result<Report, CliError> {
    match cmd {
        SpectrumCmd::Enumerate {
            r,
            d,
            connected,
            symmetric,
            bounds,
            window,
        } => {
            let constraints = SpectrumConstraints {
                connected: *connected,
                symmetric: *symmetric,
                bounds: *bounds,
                window: window.as_ref().map(|w| (w[0], w[1])),
            };
            let all = enumerate_spectra(*r, *d, &constraints)?;
            let mut table = Table::new(["index", "spectrum", "a", "b"]);
            for (i, s) in all.iter().enumerate() {
                let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
                table.push([i.to_string(), s.to_string(), opt(s.a()), opt(s.b())]);
            }
            let json = envelope(json!({
                "r": r,
                "d": d,
                "constraints": constraints,
                "count": all.len(),
                "spectra": all,
            }));
            Ok(Report::with_table(json, table))
        }
        SpectrumCmd::Bounds { r, d } => {
            let (a_min, b_max) = bounds(*r, *d)?;
            Ok(Report::json(envelope(json!({
                "r": r, "d": d, "a_min": a_min, "b_max": b_max,
            }))))
        }
        SpectrumCmd::Thresholds { r, d } => {
            let (t1, t2) = vanishing_thresholds(*r, *d)?;
            Ok(Report::json(envelope(json!({
                "r": r,
                "d": d,
                "t1": t1,
                "t2": t2,
            }))))
        }
        SpectrumCmd::Check { spectrum } => {
            let all = load_spectra(&read_source(spectrum)?)?;
            let mut table = Table::new(["spectrum", "connected", "symmetric", "within_bounds"]);
            let mut checks = Vec::new();
            for s in &all {
                let within = match bounds(s.rank(), s.degree()) {
                    Ok((lo, hi)) => Some(
                        Rational::from_int(s.a().unwrap()) >= lo
                            && Rational::from_int(s.b().unwrap()) <= hi,
                    ),
                    Err(_) => None,
                };
                let (conn, sym) = (connectedness_check(s), symmetry_check(s));
                table.push([
                    s.to_string(),
                    conn.to_string(),
                    sym.to_string(),
                    within.map(|b| b.to_string()).unwrap_or_default(),
                ]);
                checks.push(json!({
                    "spectrum": s,
                    "connected": conn,
                    "symmetric": sym,
                    "within_bounds": within,
                }));
            }
            Ok(Report::with_table(envelope(json!({ "checks": checks })), table))
        }
    }
}

fn cohomology(cmd: &CohomologyCmd) -> Result<Report, CliError> {
    let CohomologyCmd::Table {
        spectrum,
        lmin,
        lmax,
        index,
    } = cmd;
    if lmin > lmax {
        return Err(CliError::input(format!("--lmin {lmin} exceeds --lmax {lmax}")));
    }
    let mut all = load_spectra(&read_source(spectrum)?)?;
    if let Some(i) = index {
        if *i >= all.len() {
            return Err(CliError::input(format!(
                "--index {i} out of range for {} spectra",
                all.len()
            )));
        }
        all = vec![all.swap_remove(*i)];
    }
    let many = all.len() > 1;
    let mut table = if many {
        Table::new(["spectrum", "l", "h1", "h2"])
    } else {
        Table::new(["l", "h1", "h2"])
    };
    let cell = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut tables = Vec::new();
    for (i, s) in all.iter().enumerate() {
        let rows = cohomology_table(s, *lmin, *lmax);
        for row in &rows {
            let mut line = vec![row.l.to_string(), cell(row.h1), cell(row.h2)];
            if many {
                line.insert(0, i.to_string());
            }
            table.push(line);
        }
        tables.push(json!({ "spectrum": s, "rows": rows }));
    }
    Ok(Report::with_table(envelope(json!({ "tables": tables })), table))
}

// --------------------------------------------------------------------- gm

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|e| CliError::input(format!("{e}")))
}

fn gm(cmd: &GmCmd) -> Result<Report, CliError> {
    match cmd {
        GmCmd::DInvariant {
            kind,
            normal_degrees,
            dim_l,
            mu_max,
            family,
        } => {
            let fam = if let Some(path) = family {
                let raw: Value = parse_json(&read_source(path)?, "family")?;
                check_schema(&raw)?;
                let mut raw = raw;
                if let Value::Object(m) = &mut raw {
                    m.remove("schema");
                }
                serde_json::from_value(raw).map_err(|e| CliError::input(format!("family: {e}")))?
            } else {
                let missing = |flag: &str| CliError::input(format!("{flag} is required for this kind"));
                match kind.expect("clap enforces --kind or --family") {
                    FamilyKindArg::Rational => CurveFamilyKind::Rational {
                        normal_degrees: normal_degrees.clone().ok_or_else(|| missing("--normal-degrees"))?,
                    },
                    FamilyKindArg::EllipticPencil => CurveFamilyKind::EllipticPencil {
                        dim_l: dim_l.ok_or_else(|| missing("--dim-l"))?,
                    },
                    FamilyKindArg::Supplied => CurveFamilyKind::Supplied {
                        mu_max: parse_rational(mu_max.as_deref().ok_or_else(|| missing("--mu-max"))?)?,
                    },
                }
            };
            let inv = fam.d_invariant()?;
            let mut body = to_json(&fam);
            if let (Value::Object(m), Value::Object(extra)) = (&mut body, to_json(&inv)) {
                m.extend(extra);
            }
            Ok(Report::json(envelope(body)))
        }
        GmCmd::Splittings { rank, degree } => {
            let types = splitting_types_rational(*rank, *degree)?;
            let mut table = Table::new(["type"]);
            for t in &types {
                table.push([t.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")]);
            }
            Ok(Report::with_table(
                envelope(json!({ "rank": rank, "degree": degree, "dW": d_rational(&[1])?, "types": types })),
                table,
            ))
        }
        GmCmd::EllipticRestriction { degree } => {
            let r = restriction_types_elliptic(*degree);
            let mut body = json!({ "degree": degree });
            if let (Value::Object(m), Value::Object(extra)) = (&mut body, to_json(&r)) {
                m.extend(extra);
            }
            Ok(Report::json(envelope(body)))
        }
        GmCmd::Kernel { n } => Ok(Report::json(envelope(to_json(&kernel_slope(*n)?)))),
        GmCmd::Gap { profile, dw } => {
            let profile = profile
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let dw = parse_rational(dw)?;
            let ok = gm_gap_ok(&profile, &dw)?;
            Ok(Report::json(envelope(json!({
                "profile": profile,
                "dW": dw,
                "ok": ok,
            }))))
        }
    }
}

// -------------------------------------------------------------------- hnp

fn parse_total(s: &str) -> Result<RankDegreePoint, CliError> {
    let bad = || CliError::input(format!("--total expects RANK,DEGREE, got {s:?}"));
    let (r, d) = s.split_once(',').ok_or_else(bad)?;
    Ok(RankDegreePoint::new(
        r.trim().parse().map_err(|_| bad())?,
        d.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_points(s: &str) -> Result<Vec<RankDegreePoint>, CliError> {
    parse_json(&inline_or_file(s)?, "points")
}

fn parse_polygon(s: &str, which: &str) -> Result<HnPolygon, CliError> {
    let v = parse_points(s)?;
    HnPolygon::from_vertices(v).ok_or_else(|| {
        CliError::input(format!(
            "--{which}: not a polygon (must start at [0,0], ranks increasing, slopes strictly decreasing)"
        ))
    })
}

fn polygon_report(p: &HnPolygon) -> Report {
    let s = slopes(p);
    let mut table = Table::new(["rank", "degree", "next_slope"]);
    for (i, v) in p.vertices().iter().enumerate() {
        let next = s.get(i).map(|x| x.to_string()).unwrap_or_default();
        table.push([v.rank.to_string(), v.degree.to_string(), next]);
    }
    Report::with_table(envelope(json!({ "vertices": p, "slopes": s })), table)
}

fn hnp(cmd: &HnpCmd) -> Result<Report, CliError> {
    match cmd {
        HnpCmd::Hull { points, total } => {
            let p = hnp_from_points(&parse_points(points)?, parse_total(total)?)?;
            Ok(polygon_report(&p))
        }
        HnpCmd::Compare { p, q } => {
            let (p, q) = (parse_polygon(p, "p")?, parse_polygon(q, "q")?);
            Ok(Report::json(envelope(json!({
                "p_geq_q": polygon_geq(&p, &q)?,
                "q_geq_p": polygon_geq(&q, &p)?,
            }))))
        }
        HnpCmd::Semistable { points, total } => {
            let ok = is_semistable_profile(&parse_points(points)?, parse_total(total)?)?;
            Ok(Report::json(envelope(json!({ "semistable": ok }))))
        }
    }
}
