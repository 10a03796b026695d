//! `whitney`: exact Stiefel-Whitney class computations for dihedral
//! groups from the command line.
//!
//! Exit codes: 0 success, 2 input validation failure, 3 cross-check or
//! verification disagreement, 64 unknown command.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use whitney::detection::{detection_table, lemma_table};
use whitney::dihedral::{CharacterData, DihedralParam, ParityClass, Representation};
use whitney::lifting::{
    lift_report_character, lift_report_cohomological, lift_report_cohomological_char, LiftReport,
};
use whitney::products::{product_report, ProductRep};
use whitney::ring_f2::{CohomClass, RingPresentation};
use whitney::swc::{factor_w, total_swc, total_swc_multiplicative, SwcReport};
use whitney::sweeps::{self, SweepReport};

#[derive(Parser)]
#[command(name = "whitney", version, about = "Stiefel-Whitney classes of dihedral groups: exact computation and exhaustive verification")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Dihedral order parameter m.
    #[arg(long)]
    m: Option<u64>,

    /// Representation: inline JSON or a path to a JSON file.
    #[arg(long, conflicts_with = "chi")]
    rep: Option<String>,

    /// Character values: inline JSON, e.g. '{"1":4,"s":-4,"rs":-4,"rc":4}'.
    #[arg(long = "char", value_name = "JSON")]
    chi: Option<String>,

    /// Also run the independent path and verify agreement.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Total, degree-1/2 and top Stiefel-Whitney classes.
    Swc(InputArgs),
    /// Liftability to the four double covers of O(V).
    Lift(InputArgs),
    /// Recover generator exponents of a unit class in W(D_m).
    Factor {
        /// Dihedral order parameter m (must be divisible by 4).
        #[arg(long)]
        m: Option<u64>,
        /// Class in text form, e.g. '1+x'.
        #[arg(long, conflicts_with = "rep")]
        class: Option<String>,
        /// Factor the total class of this representation instead.
        #[arg(long)]
        rep: Option<String>,
        /// Exponent search bound.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Per-degree table verifying detection by the Klein-four subgroups.
    Detect {
        /// Dihedral order parameter m (must be divisible by 4).
        #[arg(long)]
        m: Option<u64>,
        /// Largest degree to verify (default 20, or WHITNEY_TRUNCATION).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Per-degree table for the supporting independence statement.
    Lemma {
        /// Largest degree to verify.
        #[arg(long, default_value_t = 20)]
        max_degree: u32,
    },
    /// Spinoriality of an external tensor product of two representations.
    ProductSpin {
        /// Left factor: inline JSON or a path to a JSON file.
        #[arg(long)]
        left: String,
        /// Right factor: inline JSON or a path to a JSON file.
        #[arg(long)]
        right: String,
        /// Group order parameter for the left factor.
        #[arg(long)]
        m: Option<u64>,
        /// Group order parameter for the right factor.
        #[arg(long)]
        m2: Option<u64>,
    },
    /// Exhaustive verification sweeps.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Group order parameter.
        #[arg(long)]
        m: Option<u64>,
        /// Second group order parameter (aspin).
        #[arg(long)]
        m2: Option<u64>,
        /// Multiplicity bound for representation sweeps.
        #[arg(long)]
        max_mult: Option<u64>,
        /// Degree bound for detection sweeps.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Exponent bound for factorization round trips.
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    FormulaOracle,
    Detection,
    LiftingEquivalence,
    Aspin,
    All,
}

enum Failure {
    /// Invalid input: exit 2.
    Input(String),
    /// A cross-check or verification found a disagreement: exit 3.
    Disagreement(String),
}

impl From<whitney::Error> for Failure {
    fn from(e: whitney::Error) -> Self {
        match e {
            whitney::Error::InternalInconsistency(_) => Failure::Disagreement(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    exit: u8,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output { text, json, exit: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                ErrorKind::InvalidSubcommand => {
                    eprint!("{e}");
                    return ExitCode::from(64);
                }
                _ => {
                    eprint!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
    };

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("failed to configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }

    match run(&cli.command) {
        Ok(output) => {
            match cli.format {
                Format::Text => println!("{}", output.text),
                Format::Json => println!("{}", output.json),
            }
            ExitCode::from(output.exit)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Accept inline JSON (starts with `{`) or a path to a JSON file.
fn json_argument(raw: &str) -> Result<serde_json::Value, Failure> {
    let content = if raw.trim_start().starts_with('{') {
        raw.to_owned()
    } else {
        std::fs::read_to_string(raw)
            .map_err(|e| Failure::Input(format!("cannot read `{raw}`: {e}")))?
    };
    serde_json::from_str(&content).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))
}

fn parse_rep(raw: &str, m: Option<u64>) -> Result<Representation, Failure> {
    Ok(Representation::from_json(&json_argument(raw)?, m)?)
}

fn parse_char(raw: &str, m: Option<u64>) -> Result<CharacterData, Failure> {
    Ok(CharacterData::from_json(&json_argument(raw)?, m)?)
}

fn truncation_env() -> Result<Option<u32>, Failure> {
    match std::env::var("WHITNEY_TRUNCATION") {
        Ok(v) => v
            .parse::<u32>()
            .map(Some)
            .map_err(|_| Failure::Input(format!("WHITNEY_TRUNCATION=`{v}` is not a degree"))),
        Err(_) => Ok(None),
    }
}

fn require_zero_mod_four(m: u64) -> Result<DihedralParam, Failure> {
    let g = DihedralParam::new(m)?;
    if g.parity_class() != ParityClass::ZeroModFour {
        return Err(Failure::Input(format!(
            "m = {m} is not divisible by 4; this command works in the F2[x,y,w]/(y^2+xy) presentation"
        )));
    }
    Ok(g)
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Swc(input) => run_swc(input),
        Command::Lift(input) => run_lift(input),
        Command::Factor { m, class, rep, bound } => run_factor(*m, class.as_deref(), rep.as_deref(), *bound),
        Command::Detect { m, max_degree } => run_detect(*m, *max_degree),
        Command::Lemma { max_degree } => run_lemma(*max_degree),
        Command::ProductSpin { left, right, m, m2 } => run_product(left, right, *m, *m2),
        Command::Verify { suite, m, m2, max_mult, max_degree, bound } => {
            run_verify(*suite, *m, *m2, *max_mult, *max_degree, *bound)
        }
    }
}

fn swc_text(report: &SwcReport) -> String {
    let invariants = report
        .invariants
        .as_object()
        .map(|map| {
            map.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default();
    format!(
        "w = {}\nw1 = {}\nw2 = {}\ntop: {} ({})\ninvariants: {}",
        report.total,
        report.w1,
        report.w2,
        report.top.class,
        if report.top.nonzero { "nonzero" } else { "zero" },
        invariants,
    )
}

fn run_swc(input: &InputArgs) -> Result<Output, Failure> {
    match (&input.rep, &input.chi) {
        (Some(raw), None) => {
            let rep = parse_rep(raw, input.m)?;
            let report = SwcReport::from_representation(&rep)?;
            let mut json = serde_json::to_value(&report).expect("report serializes");
            let mut text = swc_text(&report);
            let mut exit = 0;
            if input.cross_check {
                let formula = total_swc(&rep)?;
                let oracle = total_swc_multiplicative(&rep)?;
                let agreement = formula == oracle;
                json["cross_check"] = json!({
                    "oracle_total": oracle.to_string(),
                    "agreement": agreement,
                });
                text.push_str(&format!(
                    "\ncross-check (per-irreducible oracle): {}",
                    if agreement { "agree" } else { "DISAGREE" }
                ));
                if !agreement {
                    exit = 3;
                }
            }
            Ok(Output { text, json, exit })
        }
        (None, Some(raw)) => {
            if input.cross_check {
                return Err(Failure::Input(
                    "--cross-check needs multiplicities; use --rep".into(),
                ));
            }
            let chi = parse_char(raw, input.m)?;
            let report = SwcReport::from_character(&chi)?;
            Ok(Output::ok(
                swc_text(&report),
                serde_json::to_value(&report).expect("report serializes"),
            ))
        }
        _ => Err(Failure::Input("supply exactly one of --rep or --char".into())),
    }
}

fn lift_json(report: &LiftReport, agreement: Option<bool>) -> serde_json::Value {
    let mut json = serde_json::to_value(report).expect("report serializes");
    if let Some(agreement) = agreement {
        json["agreement"] = json!(agreement);
    }
    json
}

fn lift_text(report: &LiftReport, agreement: Option<bool>) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "O(V) x Z/2Z: yes\n~O(V):       {}\nPin+(V):     {}\nPin-(V):     {}",
        yes_no(report.lifts_tilde_o),
        yes_no(report.lifts_pin_plus),
        yes_no(report.lifts_pin_minus),
    );
    match agreement {
        Some(true) => text.push_str("\ncross-check (cohomological): agree"),
        Some(false) => text.push_str("\ncross-check (cohomological): DISAGREE"),
        None => {}
    }
    text
}

fn run_lift(input: &InputArgs) -> Result<Output, Failure> {
    let (character, cohomological) = match (&input.rep, &input.chi) {
        (Some(raw), None) => {
            let rep = parse_rep(raw, input.m)?;
            let chr = lift_report_character(&rep.character())?;
            let coh = input
                .cross_check
                .then(|| lift_report_cohomological(&rep))
                .transpose()?;
            (chr, coh)
        }
        (None, Some(raw)) => {
            let chi = parse_char(raw, input.m)?;
            let chr = lift_report_character(&chi)?;
            let coh = input
                .cross_check
                .then(|| lift_report_cohomological_char(&chi))
                .transpose()?;
            (chr, coh)
        }
        _ => return Err(Failure::Input("supply exactly one of --rep or --char".into())),
    };
    let agreement = cohomological.map(|coh| coh.agrees_with(&character));
    let exit = u8::from(agreement == Some(false)) * 3;
    Ok(Output {
        text: lift_text(&character, agreement),
        json: lift_json(&character, agreement),
        exit,
    })
}

fn run_factor(
    m: Option<u64>,
    class: Option<&str>,
    rep: Option<&str>,
    bound: u32,
) -> Result<Output, Failure> {
    let m = m.unwrap_or(4);
    require_zero_mod_four(m)?;
    let trunc = truncation_env()?.unwrap_or(2 * bound + 8);
    let cls = match (class, rep) {
        (Some(text), None) => {
            CohomClass::parse_text(RingPresentation::ZeroModFour, trunc, text)?
        }
        (None, Some(raw)) => {
            let rep = parse_rep(raw, Some(m))?;
            whitney::swc::char_total_swc(&rep.character(), trunc)?
        }
        _ => return Err(Failure::Input("supply exactly one of --class or --rep".into())),
    };
    let exponents = factor_w(&cls, bound)?;
    let text = match exponents {
        Some((a, b, c)) => {
            format!("{cls} = (1+y)^{a} * (1+x+y)^{b} * (1+x+w)^{c}")
        }
        None => format!("{cls} has no factorization with exponents bounded by {bound}"),
    };
    let json = json!({
        "class": cls.to_string(),
        "bound": bound,
        "truncation": trunc,
        "exponents": exponents.map(|(a, b, c)| vec![a, b, c]),
    });
    Ok(Output::ok(text, json))
}

fn run_detect(m: Option<u64>, max_degree: Option<u32>) -> Result<Output, Failure> {
    require_zero_mod_four(m.unwrap_or(4))?;
    let max_degree = match max_degree {
        Some(d) => d,
        None => truncation_env()?.unwrap_or(20),
    };
    let rows = detection_table(max_degree);
    let all_ok = rows.iter().all(|r| r.ok);
    let mut text = String::from("degree  dim H^d  rank res*  verdict\n");
    for row in &rows {
        text.push_str(&format!(
            "{:<7} {:<8} {:<10} {}\n",
            row.degree,
            row.dim,
            row.rank,
            if row.ok { "injective" } else { "KERNEL" },
        ));
    }
    text.push_str(if all_ok {
        "detection verified in every degree"
    } else {
        "detection FAILED"
    });
    let json = json!({ "max_degree": max_degree, "rows": rows, "all_ok": all_ok });
    Ok(Output {
        text,
        json,
        exit: if all_ok { 0 } else { 3 },
    })
}

fn run_lemma(max_degree: u32) -> Result<Output, Failure> {
    let rows = lemma_table(max_degree);
    let all_ok = rows.iter().all(|r| r.ok);
    let mut text = String::from("degree  |S_d|  rank  verdict\n");
    for row in &rows {
        text.push_str(&format!(
            "{:<7} {:<6} {:<5} {}\n",
            row.degree,
            row.set_size,
            row.rank,
            if row.ok { "independent" } else { "DEPENDENT" },
        ));
    }
    text.push_str(if all_ok {
        "independence verified in every degree"
    } else {
        "independence FAILED"
    });
    let json = json!({ "max_degree": max_degree, "rows": rows, "all_ok": all_ok });
    Ok(Output {
        text,
        json,
        exit: if all_ok { 0 } else { 3 },
    })
}

fn run_product(
    left: &str,
    right: &str,
    m: Option<u64>,
    m2: Option<u64>,
) -> Result<Output, Failure> {
    let product = ProductRep::new(parse_rep(left, m)?, parse_rep(right, m2)?)?;
    let report = product_report(&product)?;
    let text = format!(
        "spinorial: {}\nconditions (1)(2)(3): {} {} {}\nrestriction to G x 1 spinorial: {}\nrestriction to 1 x G' spinorial: {}\nparity/determinant condition: {}",
        report.spinorial,
        report.conditions[0],
        report.conditions[1],
        report.conditions[2],
        report.theorem_16.i_left,
        report.theorem_16.i_right,
        report.theorem_16.ii,
    );
    Ok(Output::ok(
        text,
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

fn run_verify(
    suite: Suite,
    m: Option<u64>,
    m2: Option<u64>,
    max_mult: Option<u64>,
    max_degree: Option<u32>,
    bound: Option<u32>,
) -> Result<Output, Failure> {
    let max_mult = max_mult.unwrap_or(3);
    let max_degree = max_degree.unwrap_or(20);
    let mut reports: Vec<SweepReport> = Vec::new();
    match suite {
        Suite::FormulaOracle => {
            reports.push(sweeps::formula_oracle(m.unwrap_or(4), max_mult)?);
        }
        Suite::Detection => {
            reports.push(sweeps::detection(max_degree));
            reports.push(sweeps::independence(max_degree));
        }
        Suite::LiftingEquivalence => {
            reports.push(sweeps::lifting_equivalence(m.unwrap_or(4), max_mult)?);
        }
        Suite::Aspin => {
            reports.push(sweeps::aspin(m.unwrap_or(4), m2.unwrap_or(4))?);
        }
        Suite::All => {
            for m in [3, 4, 6, 8] {
                reports.push(sweeps::formula_oracle(m, max_mult)?);
            }
            reports.push(sweeps::detection(max_degree));
            reports.push(sweeps::independence(max_degree));
            for m in [3, 4, 5, 6, 8, 12] {
                reports.push(sweeps::lifting_equivalence(m, max_mult)?);
            }
            for (a, b) in [(4, 4), (4, 8), (8, 8)] {
                reports.push(sweeps::aspin(a, b)?);
            }
            reports.push(sweeps::factor_roundtrip(
                bound.unwrap_or(3),
                2 * bound.unwrap_or(3) + 8,
            )?);
        }
    }
    let pass = reports.iter().all(SweepReport::passed);
    let text = reports
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({ "suites": reports, "pass": pass });
    Ok(Output {
        text,
        json,
        exit: if pass { 0 } else { 3 },
    })
}
