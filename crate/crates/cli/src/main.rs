//! `knot818` command-line tool.
//!
//! Exit codes: 0 success, 1 internal error or fixture mismatch, 2 usage or
//! parse error, 3 domain precondition (e.g. the braid closes to a link).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knot818::braid::BraidError;
use knot818::embedding::phase_in_pi;
use knot818::notation::BraidParseError;
use knot818::{
    alexander_from_braid, annular_embed, canonical_818, check_fixture, closure_diagram,
    defect_report, emit_extended_gauss, ensemble_totals, mirror_table, parse_braid_word,
    site_totals, traverse, winding_phase, writhe, BraidWord, DefectReport, Direction, EnsembleKind,
    Errata, Site, SiteLabel, StartSpec, Table1Fixture, TraversalTable, VertexRule, VisitRole,
};
use serde_json::{json, Value};

const PHASE_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "knot818",
    version,
    about = "Invariants and traversal tables for the 8_18 knot"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "KNOT818_FORMAT",
        default_value = "text"
    )]
    format: Format,

    /// Print phases as raw radians instead of multiples of π.
    #[arg(long, global = true)]
    radians: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct BraidArgs {
    /// Space-separated generator indices, negative for inverses.
    /// Defaults to the 8_18 word (σ1 σ2⁻¹)⁴.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,

    #[arg(long, default_value_t = 3)]
    strands: usize,
}

impl BraidArgs {
    fn braid(&self) -> Result<BraidWord, Failure> {
        match &self.braid {
            None => Ok(BraidWord::knot_818()),
            Some(text) => parse_braid_word(text, self.strands).map_err(Failure::from),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the closure diagram of a braid and summarise it.
    Build(BraidArgs),
    /// Alexander polynomial, writhe, winding phase and determinant.
    Invariants(BraidArgs),
    /// One traversal table of the 8_18 diagram.
    Traverse {
        #[arg(long)]
        start: String,
        #[arg(long = "dir", default_value = "cw")]
        direction: String,
        /// Entry role at a crossing start (over or under).
        #[arg(long)]
        role: Option<String>,
        /// Report the mirror image of the table.
        #[arg(long)]
        mirror: bool,
    },
    /// Per-class allocation totals and mismatch flags.
    Analyze {
        #[arg(long, value_enum, default_value = "reps10", conflicts_with = "state")]
        ensemble: EnsembleArg,
        /// Single start such as "K,cw" or "F,ccw,over".
        #[arg(long)]
        state: Option<String>,
    },
    /// Match a traversal fixture CSV against the generated tables.
    CheckFixture {
        /// Fixture CSV; the bundled one when omitted.
        path: Option<PathBuf>,
        /// Errata CSV to apply to unmatched cases.
        #[arg(long, conflicts_with = "bundled_errata")]
        errata: Option<PathBuf>,
        /// Apply the bundled errata.
        #[arg(long)]
        bundled_errata: bool,
    },
    /// Polyline of the annular embedding as x,y rows.
    Embed {
        #[command(flatten)]
        braid: BraidArgs,
        /// Comma-separated strand radii, innermost first. Defaults to 1,2,...
        #[arg(long)]
        radii: Option<String>,
        #[arg(long, default_value_t = knot818::embedding::DEFAULT_POINTS_PER_SLOT)]
        points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    Reps10,
    All40,
    #[value(name = "with_mirrors")]
    WithMirrors,
}

impl From<EnsembleArg> for EnsembleKind {
    fn from(e: EnsembleArg) -> Self {
        match e {
            EnsembleArg::Reps10 => EnsembleKind::Reps10,
            EnsembleArg::All40 => EnsembleKind::All40,
            EnsembleArg::WithMirrors => EnsembleKind::WithMirrors,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl ToString) -> Failure {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Failure {
        let code = match e {
            BraidError::NotAKnot { .. } | BraidError::VertexRuleInapplicable => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BraidParseError> for Failure {
    fn from(e: BraidParseError) -> Failure {
        match e {
            BraidParseError::Braid(b) => b.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// What a command prints, plus whether it should exit with the mismatch code.
struct Output {
    body: String,
    mismatch: bool,
}

impl From<String> for Output {
    fn from(body: String) -> Output {
        Output {
            body,
            mismatch: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            if out.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Build(args) => build(cli, &args.braid()?).map(Output::from),
        Command::Invariants(args) => invariants(cli, &args.braid()?).map(Output::from),
        Command::Traverse {
            start,
            direction,
            role,
            mirror,
        } => {
            let spec = start_spec(start, direction, role.as_deref())?;
            let mut table = traverse(&canonical_818(), &spec).map_err(Failure::internal)?;
            if *mirror {
                table = mirror_table(&table);
            }
            Ok(table_output(cli.format, &table).into())
        }
        Command::Analyze { ensemble, state } => {
            analyze(cli.format, *ensemble, state.as_deref()).map(Output::from)
        }
        Command::CheckFixture {
            path,
            errata,
            bundled_errata,
        } => check(cli.format, path.as_ref(), errata.as_ref(), *bundled_errata),
        Command::Embed {
            braid,
            radii,
            points,
        } => embed(cli.format, &braid.braid()?, radii.as_deref(), *points).map(Output::from),
    }
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn default_radii(strands: usize) -> Vec<f64> {
    (1..=strands).map(|r| r as f64).collect()
}

fn build(cli: &Cli, braid: &BraidWord) -> Result<String, Failure> {
    let d = closure_diagram(braid, VertexRule::Auto)?;
    let w = writhe(&d.crossings);
    let gauss = emit_extended_gauss(&d.word);
    Ok(match cli.format {
        Format::Text => format!(
            "crossings: {}\nwrithe: {w}\nvertices: {}\ngauss: {gauss}\n",
            d.crossings.len(),
            d.vertices.len()
        ),
        Format::Csv => format!(
            "key,value\ncrossings,{}\nwrithe,{w}\nvertices,{}\ngauss,{gauss}\n",
            d.crossings.len(),
            d.vertices.len()
        ),
        Format::Json => json_out(&json!({
            "strands": braid.strands(),
            "letters": braid.letters(),
            "crossings": d.crossings.len(),
            "writhe": w,
            "vertices": d.vertices.len(),
            "gauss": gauss,
        })),
    })
}

fn phase_text(phase: f64, radians: bool) -> String {
    match phase_in_pi(phase, PHASE_TOL) {
        Some(k) if !radians => format!("{k}π"),
        _ => format!("{phase}"),
    }
}

fn invariants(cli: &Cli, braid: &BraidWord) -> Result<String, Failure> {
    let delta = alexander_from_braid(braid).map_err(|e| match e {
        knot818::alexander::AlexanderError::Braid(b) => b.into(),
        other => Failure::internal(other),
    })?;
    let d = closure_diagram(braid, VertexRule::Auto)?;
    let w = writhe(&d.crossings);
    let embedding = annular_embed(
        braid,
        &default_radii(braid.strands()),
        knot818::embedding::DEFAULT_POINTS_PER_SLOT,
    )
    .map_err(Failure::internal)?;
    let phase = winding_phase(&embedding).map_err(Failure::internal)?;
    let det = delta.evaluate_int(-1).map_err(Failure::internal)?;
    let det = det.numer().magnitude().to_string();
    let coeffs: Vec<String> = delta.coefficients().iter().map(|c| c.to_string()).collect();
    let ptext = phase_text(phase, cli.radians);
    Ok(match cli.format {
        Format::Text => {
            format!("alexander: {delta}\nwrithe: {w}\nphase: {ptext}\ndeterminant: {det}\n")
        }
        Format::Csv => format!(
            "key,value\nalexander,{}\nwrithe,{w}\nphase,{ptext}\ndeterminant,{det}\n",
            coeffs.join(" ")
        ),
        Format::Json => json_out(&json!({
            "alexander": delta.to_string(),
            "coefficients": coeffs,
            "min_exponent": delta.min_exponent(),
            "writhe": w,
            "phase": if cli.radians { json!(phase) } else { json!(ptext) },
            "determinant": det,
        })),
    })
}

fn parse_site(text: &str) -> Result<SiteLabel, Failure> {
    let mut chars = text.trim().chars();
    match (
        chars
            .next()
            .map(|c| c.to_ascii_uppercase())
            .and_then(SiteLabel::from_letter),
        chars.next(),
    ) {
        (Some(l), None) => Ok(l),
        _ => Err(Failure::usage(format!(
            "unknown site {text:?}, expected a letter A-L"
        ))),
    }
}

fn start_spec(site: &str, direction: &str, role: Option<&str>) -> Result<StartSpec, Failure> {
    let site = parse_site(site)?;
    let direction: Direction = direction
        .parse()
        .map_err(|e: knot818::traversal::TraversalError| Failure::usage(e.to_string()))?;
    let role = role
        .map(|r| {
            VisitRole::from_name(&r.trim().to_ascii_lowercase()).ok_or_else(|| {
                Failure::usage(format!("unknown role {r:?}, expected over or under"))
            })
        })
        .transpose()?;
    StartSpec::new(site, direction, role).map_err(|e| Failure::usage(e.to_string()))
}

fn table_rows(table: &TraversalTable) -> Vec<(Site, VisitRole, u32)> {
    let mut rows = Vec::new();
    for site in table.values().keys() {
        for role in [VisitRole::Through, VisitRole::Over, VisitRole::Under] {
            if let Some(v) = table.value(*site, role) {
                rows.push((*site, role, v));
            }
        }
    }
    rows
}

fn table_output(format: Format, table: &TraversalTable) -> String {
    let rows = table_rows(table);
    match format {
        Format::Text => {
            let mut s = String::new();
            for (site, role, v) in rows {
                let _ = writeln!(s, "{site} {:<7} {v:>2}", role.name());
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("site,role,value\n");
            for (site, role, v) in rows {
                let _ = writeln!(s, "{site},{},{v}", role.name());
            }
            s
        }
        Format::Json => json_out(&Value::Array(
            rows.iter()
                .map(|(site, role, v)| json!({"site": site.to_string(), "role": role.name(), "value": v}))
                .collect(),
        )),
    }
}

fn analyze(format: Format, ensemble: EnsembleArg, state: Option<&str>) -> Result<String, Failure> {
    let word = canonical_818();
    let allocation = match state {
        Some(text) => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            let spec = match parts.as_slice() {
                [site, dir] => start_spec(site, dir, None)?,
                [site, dir, role] => start_spec(site, dir, Some(role))?,
                _ => {
                    return Err(Failure::usage(format!(
                        "bad state {text:?}, expected SITE,DIR[,ROLE]"
                    )))
                }
            };
            let table = traverse(&word, &spec).map_err(Failure::internal)?;
            site_totals(&table, spec.to_string())
        }
        None => {
            let kind: EnsembleKind = ensemble.into();
            let states = kind.build(&word).map_err(Failure::internal)?;
            ensemble_totals(&states, kind.name()).map_err(Failure::internal)?
        }
    };
    let report = defect_report(&allocation).map_err(Failure::internal)?;
    Ok(report_output(format, &report))
}

fn report_output(format: Format, report: &DefectReport) -> String {
    match format {
        Format::Text => {
            let plural = if report.states == 1 { "" } else { "s" };
            let mut s = format!(
                "source: {} ({} state{plural})\n",
                report.source, report.states
            );
            for c in &report.classes {
                let totals: Vec<String> =
                    c.totals.iter().map(|(l, t)| format!("{l}={t}")).collect();
                let _ = writeln!(
                    s,
                    "{}: {} mean {} max_deviation {} mismatch {}",
                    c.class.name(),
                    totals.join(" "),
                    c.mean,
                    c.max_deviation,
                    c.mismatch
                );
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("class,site,total\n");
            for c in &report.classes {
                for (l, t) in &c.totals {
                    let _ = writeln!(s, "{},{l},{t}", c.class.name());
                }
            }
            s
        }
        Format::Json => json_out(&json!({
            "source": report.source,
            "states": report.states,
            "mismatch": report.any_mismatch(),
            "classes": report.classes.iter().map(|c| json!({
                "class": c.class.name(),
                "totals": c.totals.iter().map(|(l, t)| json!({"site": l.to_string(), "total": t})).collect::<Vec<_>>(),
                "mean": c.mean.to_string(),
                "max_deviation": c.max_deviation.to_string(),
                "mismatch": c.mismatch,
            })).collect::<Vec<_>>(),
        })),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check(
    format: Format,
    path: Option<&PathBuf>,
    errata: Option<&PathBuf>,
    bundled_errata: bool,
) -> Result<Output, Failure> {
    let fixture = match path {
        Some(p) => Table1Fixture::parse(&read(p)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => Table1Fixture::builtin(),
    };
    let errata = match (errata, bundled_errata) {
        (Some(p), _) => Some(
            Errata::parse(&read(p)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        ),
        (None, true) => Some(Errata::builtin()),
        (None, false) => None,
    };
    let ensemble = EnsembleKind::Reps10
        .build(&canonical_818())
        .map_err(Failure::internal)?
        .with_mirrors();
    let report = check_fixture(&ensemble, &fixture, errata.as_ref());
    let body = match format {
        Format::Text => report.to_string(),
        Format::Csv => {
            let mut s = String::from("case,status,matched_by,corrections,violations\n");
            for c in &report.cases {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c.case,
                    c.status.name(),
                    c.matched_by.as_deref().unwrap_or(""),
                    c.corrections.join("; "),
                    c.violations.join("; ")
                );
            }
            s
        }
        Format::Json => json_out(&serde_json::to_value(&report).map_err(Failure::internal)?),
    };
    Ok(Output {
        body,
        mismatch: !report.all_matched(),
    })
}

fn embed(
    format: Format,
    braid: &BraidWord,
    radii: Option<&str>,
    points: usize,
) -> Result<String, Failure> {
    let radii = match radii {
        None => default_radii(braid.strands()),
        Some(text) => text
            .split(',')
            .map(|r| {
                r.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::usage(format!("bad radius {r:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let e = annular_embed(braid, &radii, points).map_err(|e| match e {
        knot818::embedding::GeometryError::Braid(b) => b.into(),
        other => Failure::usage(other.to_string()),
    })?;
    let pts = e.polyline();
    Ok(match format {
        Format::Text | Format::Csv => {
            let mut s = String::from("x,y\n");
            for p in pts {
                let _ = writeln!(s, "{},{}", p.x, p.y);
            }
            s
        }
        Format::Json => json_out(&Value::Array(
            pts.iter().map(|p| json!([p.x, p.y])).collect(),
        )),
    })
}
