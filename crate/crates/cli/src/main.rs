//! `mvb` — command-line interface to the multiple-vector-bundle duality
//! calculus: dualization and faces of decomposed bundles, the groups
//! generated by dualization (by concrete action and by coset enumeration),
//! and the numeric verification suites.
//!
//! Exit codes: 0 on success / all checks passing, 1 on a verification
//! failure or operational error, 2 on usage errors. Set `MVB_LOG` (e.g.
//! `MVB_LOG=debug`) for logging.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mvb_core::duality::{self, Word};
use mvb_core::fpgroup;
use mvb_core::lattice::{AxisIndex, DecomposedBundle};
use mvb_core::paircalc;
use mvb_core::report::CheckReport;
use mvb_core::Error;

#[derive(Parser)]
#[command(
    name = "mvb",
    version,
    about = "Duality calculus of multiple vector bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Dualize a bundle along one axis
    Dual(DualArgs),
    /// Exchange two axes of a bundle
    Flip(FlipArgs),
    /// Extend a bundle by its cotangent completion
    Cotangent(CotangentArgs),
    /// Extract a core double vector bundle (or the ultracore)
    Core(CoreArgs),
    /// Render a bundle's face lattice as DOT
    Render(RenderArgs),
    /// Group computations
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Verification suites
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
    /// Verify relation families by action
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Args)]
struct DualArgs {
    /// Input bundle (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    /// Axis to dualize along (1-based)
    #[arg(long)]
    axis: AxisIndex,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct FlipArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// The two axes to exchange (repeat the flag; defaults to 1 and 2)
    #[arg(long)]
    axis: Vec<AxisIndex>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CotangentArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Dimension of the cotangent-of-base slot
    #[arg(long, default_value = "0")]
    dims: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CoreArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Which core double vector bundle (omit for the ultracore)
    #[arg(long)]
    axis: Option<AxisIndex>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order of a presented group by coset enumeration
    Order {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "100000")]
        cap: usize,
    },
    /// Concrete dualization group by action closure
    Closure {
        #[arg(long)]
        n: u8,
        #[arg(long, default_value = "100000")]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify one relation word by action
    Verify {
        #[arg(long)]
        relation: String,
        #[arg(long)]
        n: u8,
    },
    /// Subgroup index, normality and quotient in a presented group
    Subgroup {
        #[arg(long, default_value = "vb3")]
        preset: String,
        /// Subgroup generator words (repeat; defaults to the order-12
        /// normal subgroup of vb3)
        #[arg(long)]
        relation: Vec<String>,
        #[arg(long, default_value = "100000")]
        cap: usize,
    },
    /// Matrix certificate that (XYZ)^4 is independent of the braid-type
    /// relators
    Independence,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Numeric pairing/reversal/cornering checks
    Numeric {
        #[arg(long, value_parser = parse_dims, default_value = "2,3,2")]
        dims: (usize, usize, usize),
        #[arg(long, default_value = "1000")]
        trials: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// Full invariant suite of every module
    All {
        #[arg(long, default_value = "1000")]
        trials: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value = "100000")]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check the relation family (X_{i1}…X_{ik})^{k+1} = 1 by action
    Conjecture {
        #[arg(long)]
        n: u8,
        #[arg(long = "max-k")]
        max_k: u8,
    },
}

fn parse_dims(text: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated dimensions, e.g. 2,3,2".into());
    }
    let mut out = [0usize; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("bad dimension '{part}'"))?;
    }
    Ok((out[0], out[1], out[2]))
}

fn load_bundle(path: &PathBuf) -> Result<DecomposedBundle, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    DecomposedBundle::from_json(&text)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn bundle_text(b: &DecomposedBundle, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(b.to_json()),
        Format::Dot => b.render_dot(),
        Format::Text => {
            let mut lines = Vec::new();
            for (mask, d) in b.slots() {
                let subset: Vec<String> = (1..=b.n())
                    .filter(|i| mask & (1 << (i - 1)) != 0)
                    .map(|i| i.to_string())
                    .collect();
                let sg = if d.sign.is_plus() { "" } else { "-" };
                lines.push(format!(
                    "{{{}}}: {}{} (dim {})",
                    subset.join(","),
                    sg,
                    d.display_name(),
                    d.atom.dim
                ));
            }
            Ok(lines.join("\n"))
        }
    }
}

/// Parse a word in the dualization generators: `V`/`H` at n = 2 (`V` is
/// the dual over the first side), `X`/`Y`/`Z` at n = 3, or `X1 … Xn`
/// generally.
fn parse_action_word(n: u8, text: &str) -> Result<Vec<AxisIndex>, Error> {
    let contextual: Option<Vec<String>> = match n {
        2 => Some(vec!["H".into(), "V".into()]),
        3 => Some(vec!["X".into(), "Y".into(), "Z".into()]),
        _ => None,
    };
    let numbered: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let letters = match contextual {
        Some(gens) => {
            fpgroup::parse_word(&gens, text).or_else(|_| fpgroup::parse_word(&numbered, text))
        }
        None => fpgroup::parse_word(&numbered, text),
    }?;
    Ok(letters
        .into_iter()
        .map(|l| l.unsigned_abs() as AxisIndex)
        .collect())
}

fn parse_subgroup_words(
    p: &fpgroup::Presentation,
    words: &[String],
) -> Result<Vec<Vec<fpgroup::Letter>>, Error> {
    words.iter().map(|w| p.parse_word(w)).collect()
}

fn print_report(r: &CheckReport) {
    println!("{}", serde_json::to_string(r).expect("report serializes"));
}

/// Run the numeric suite; returns true iff everything passed.
fn run_numeric(dims: (usize, usize, usize), trials: usize, seed: u64) -> Result<bool, Error> {
    let dvb = paircalc::TrivDvb::new(dims.0, dims.1, dims.2);
    let mut all = true;
    let mut reports = vec![
        paircalc::exactness_check_a(&dvb),
        paircalc::nondegeneracy_check(&dvb),
        paircalc::pairing_axioms_check(
            "pair_duals_axioms",
            &paircalc::pair_duals_shape(&dvb),
            paircalc::pair_duals_generic,
            seed,
            trials,
        ),
        paircalc::pairing_axioms_check(
            "tangent_pairing_axioms",
            &paircalc::tangent_pairing_shape(dims.2.max(1), dims.0.max(1)),
            paircalc::tangent_pairing_generic,
            seed,
            trials,
        ),
        paircalc::mx38_check(dims.2.max(1), dims.0.max(1), seed, trials),
        paircalc::cornering_check(&dvb, seed, trials)?,
        paircalc::cornering_check_negated(&dvb, seed, trials),
        paircalc::dual_morphism_check(&dvb, dims.1, dims.2, seed, trials),
    ];
    for dm in 1..=3 {
        for dv in 1..=3 {
            reports.push(paircalc::antisymplecto_check(dm, dv));
        }
    }
    for r in &reports {
        print_report(r);
        all &= r.pass;
    }
    Ok(all)
}

fn run_check_all(trials: usize, seed: u64, cap: usize) -> Result<bool, Error> {
    let mut all = true;
    let mut note = |name: &str, ok: bool| {
        println!("{} — {name}", if ok { "PASS" } else { "FAIL" });
        all &= ok;
    };
    // fpgroup facts
    note(
        "vb2 order 6",
        fpgroup::group_order(&fpgroup::preset("vb2")?, cap)? == 6,
    );
    let vb3 = fpgroup::preset("vb3")?;
    note("vb3 order 72", fpgroup::group_order(&vb3, cap)? == 72);
    let sub = parse_subgroup_words(
        &vb3,
        &["X Y X Z".into(), "Y Z Y X".into(), "Z X Z Y".into()],
    )?;
    note(
        "vb3 subgroup index 6",
        fpgroup::subgroup_index(&vb3, &sub, cap)? == 6,
    );
    note("vb3 subgroup normal", fpgroup::is_normal(&vb3, &sub, cap)?);
    note(
        "vb3 quotient S3",
        fpgroup::quotient_order(&vb3, &sub, cap)? == (6, true),
    );
    note(
        "independence certificate",
        fpgroup::independence_certificate()?.pass,
    );
    // duality facts
    note(
        "closure n=2 order 6",
        duality::closure(2, cap)?.order() == 6,
    );
    note(
        "closure n=3 order 72",
        duality::closure(3, cap)?.order() == 72,
    );
    let conjecture = duality::verify_conjecture(3, 3)?;
    note(
        "conjecture relations n=3",
        conjecture.iter().all(|r| r.holds),
    );
    // numeric suite
    println!("— numeric checks —");
    let numeric = run_numeric((2, 3, 2), trials, seed)?;
    note("numeric suite", numeric);
    // cross-module oracle on short words
    let mut ok = true;
    for len in 0..=4usize {
        for idx in 0..(1usize << len) {
            let word: Vec<AxisIndex> = (0..len)
                .map(|k| if idx >> k & 1 == 1 { 2 } else { 1 })
                .collect();
            let numeric = paircalc::oracle_signed_relabeling((2, 3, 2), &word)?;
            let symbolic = duality::SignedRelabeling::from_word(2, &word)?;
            ok &= numeric == symbolic;
        }
    }
    note("oracle vs symbolic (n=2, length ≤ 4)", ok);
    Ok(all)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Dual(args) => {
            let b = load_bundle(&args.input)?;
            let d = duality::dual_axis(&b, args.axis)?;
            emit(&bundle_text(&d, args.format)?, &args.out)?;
            Ok(true)
        }
        Command::Flip(args) => {
            let b = load_bundle(&args.input)?;
            let (i, j) = match args.axis.as_slice() {
                [] => (1, 2),
                [i, j] => (*i, *j),
                _ => {
                    return Err(Error::parse(
                        "flip takes exactly two --axis flags (or none for 1 and 2)",
                    ))
                }
            };
            let f = b.flip(i, j)?;
            emit(&bundle_text(&f, args.format)?, &args.out)?;
            Ok(true)
        }
        Command::Cotangent(args) => {
            let b = load_bundle(&args.input)?;
            let c = duality::cotangent_completion(&b, args.dims);
            emit(&bundle_text(&c, args.format)?, &args.out)?;
            Ok(true)
        }
        Command::Core(args) => {
            let b = load_bundle(&args.input)?;
            match args.axis {
                Some(i) => {
                    let k = b.core_dvb(i)?;
                    emit(&bundle_text(&k, args.format)?, &args.out)?;
                }
                None => {
                    let u = b.ultracore();
                    emit(
                        &format!("{} (dim {})", u.display_name(), u.atom.dim),
                        &args.out,
                    )?;
                }
            }
            Ok(true)
        }
        Command::Render(args) => {
            let b = load_bundle(&args.input)?;
            emit(&b.render_dot()?, &args.out)?;
            Ok(true)
        }
        Command::Group { command } => run_group(command),
        Command::Check { command } => match command {
            CheckCommand::Numeric { dims, trials, seed } => run_numeric(dims, trials, seed),
            CheckCommand::All { trials, seed, cap } => run_check_all(trials, seed, cap),
        },
        Command::Verify { command } => match command {
            VerifyCommand::Conjecture { n, max_k } => {
                let reports = duality::verify_conjecture(n, max_k)?;
                let mut all = true;
                for r in &reports {
                    println!("{}", serde_json::to_string(r).expect("report serializes"));
                    all &= r.holds;
                }
                Ok(all)
            }
        },
    }
}

fn run_group(command: GroupCommand) -> Result<bool, Error> {
    match command {
        GroupCommand::Order { preset, cap } => {
            let p = fpgroup::preset(&preset)?;
            println!("{}", fpgroup::group_order(&p, cap)?);
            Ok(true)
        }
        GroupCommand::Closure { n, cap, format } => {
            let closure = duality::closure(n, cap)?;
            match format {
                Format::Dot => println!("{}", closure.to_dot()),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "n": n, "order": closure.order() })
                ),
                Format::Text => println!("{}", closure.order()),
            }
            Ok(true)
        }
        GroupCommand::Verify { relation, n } => {
            let word = Word::new(parse_action_word(n, &relation)?);
            let g = duality::SignedRelabeling::from_word(n, &word.letters)?;
            let holds = g.is_identity();
            let report = mvb_core::report::RelationReport {
                relation,
                n: n as usize,
                holds,
                order: Some(g.order()),
            };
            println!(
                "{}",
                serde_json::to_string(&report).expect("report serializes")
            );
            Ok(holds)
        }
        GroupCommand::Subgroup {
            preset,
            relation,
            cap,
        } => {
            let p = fpgroup::preset(&preset)?;
            let words: Vec<String> = if relation.is_empty() {
                vec!["X Y X Z".into(), "Y Z Y X".into(), "Z X Z Y".into()]
            } else {
                relation
            };
            let gens = parse_subgroup_words(&p, &words)?;
            let order = fpgroup::group_order(&p, cap)?;
            let index = fpgroup::subgroup_index(&p, &gens, cap)?;
            let normal = fpgroup::is_normal(&p, &gens, cap)?;
            let (q_order, nonabelian) = fpgroup::quotient_order(&p, &gens, cap)?;
            println!(
                "{}",
                serde_json::json!({
                    "preset": preset,
                    "generators": words,
                    "groupOrder": order,
                    "index": index,
                    "subgroupOrder": order / index,
                    "normal": normal,
                    "quotientOrder": q_order,
                    "quotientNonabelian": nonabelian,
                })
            );
            Ok(true)
        }
        GroupCommand::Independence => {
            let report = fpgroup::independence_certificate()?;
            println!(
                "{}",
                serde_json::to_string(&report).expect("report serializes")
            );
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MVB_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
