use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trsiso::deciders::{
    brute_force_decide, check_semantic_compatibility, decide_any, decision_to_json, sample_terms, DecideError,
    OracleError, Relation, SAMPLE_COUNT, SAMPLE_DEPTH,
};
use trsiso::graphs::{emit_graph, encode, graph_to_trs_funcs, graph_to_trs_vars, parse_graph, AnyGraph, Encoding, GraphFormat};
use trsiso::rewriting::terminates_bounded;
use trsiso::templates::{maximal_normal_form, template};
use trsiso::{parse_trs, print_trs, Kind, Trs, TrsMode};

const ISO: u8 = 0;
const NOT_ISO: u8 = 1;
const USAGE: u8 = 2;
const NORMAL_FORM: u8 = 3;
const SIZE_GUARD: u8 = 4;

#[derive(Parser)]
#[command(name = "trsiso", version, about = "Decide equivalence up to renaming between term rewriting systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Step budget for bounded rewriting probes.
    #[arg(long, global = true, default_value_t = 10_000)]
    fuel: usize,
    /// Accept variable left-hand sides and fresh right-hand side variables.
    #[arg(long, global = true)]
    permissive: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a relation between two TRS files.
    Decide {
        #[arg(long, short)]
        relation: Relation,
        a: PathBuf,
        b: PathBuf,
        /// Write the decision and its witness as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Also test whether the witness preserves one-step rewriting on sampled terms.
        #[arg(long)]
        semantic: bool,
    },
    /// Print the template of a TRS.
    Template {
        #[arg(long, short, value_enum)]
        kind: KindArg,
        file: PathBuf,
    },
    /// Print a maximal normal form of a TRS.
    Normalize {
        #[arg(long, short, value_enum)]
        kind: KindArg,
        file: PathBuf,
    },
    /// Encode a TRS as a labelled graph.
    Encode {
        #[arg(long, short, value_enum)]
        kind: EncodingArg,
        file: PathBuf,
        #[arg(long, short, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Build the TRS of a plain directed graph.
    Graph2trs {
        #[arg(long, short, value_enum)]
        kind: GraphKindArg,
        file: PathBuf,
    },
    /// Decide a relation by exhaustive search over small inputs.
    Oracle {
        #[arg(long, short)]
        relation: Relation,
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    V,
    F,
    Full,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::V => Kind::V,
            KindArg::F => Kind::F,
            KindArg::Full => Kind::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Forest,
    Gf,
    Gv,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKindArg {
    Funcs,
    Vars,
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure { code: USAGE, msg: msg.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path, mode: TrsMode) -> Result<Trs, Failure> {
    parse_trs(&read(path)?, mode).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn decide_error(e: DecideError) -> Failure {
    let code = match e {
        DecideError::NormalForm { .. } => NORMAL_FORM,
        _ => USAGE,
    };
    Failure { code, msg: e.to_string() }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mode = if cli.permissive { TrsMode::Permissive } else { TrsMode::Strict };
    match cli.command {
        Command::Decide { relation, a, b, witness, semantic } => {
            let (ta, tb) = (load(&a, mode)?, load(&b, mode)?);
            let d = decide_any(&ta, &tb, relation).map_err(decide_error)?;
            for line in &d.trail {
                println!("# {line}");
            }
            if d.is_iso() {
                println!("{} and {} are {relation}-isomorphic", a.display(), b.display());
            } else {
                println!("{} and {} are not {relation}-isomorphic", a.display(), b.display());
            }
            if let Some(out) = witness {
                let json = serde_json::to_string_pretty(&decision_to_json(&d)).expect("json value serializes");
                fs::write(&out, json + "\n").map_err(|e| usage(format!("{}: {e}", out.display())))?;
            }
            if let (true, Some(w)) = (semantic, &d.witness) {
                semantic_report(&ta, &tb, relation, w, cli.seed, cli.fuel);
            }
            Ok(if d.is_iso() { ISO } else { NOT_ISO })
        }
        Command::Template { kind, file } => {
            print!("{}", print_trs(&template(&load(&file, mode)?, kind.into()).templated));
            Ok(0)
        }
        Command::Normalize { kind, file } => {
            print!("{}", print_trs(&maximal_normal_form(&load(&file, mode)?, kind.into()).0));
            Ok(0)
        }
        Command::Encode { kind, file, format } => {
            let enc = match kind {
                EncodingArg::Forest => Encoding::Forest,
                EncodingArg::Gf => Encoding::F,
                EncodingArg::Gv => Encoding::V,
                EncodingArg::Full => Encoding::Full,
            };
            let format = match format {
                FormatArg::Json => GraphFormat::Json,
                FormatArg::Dot => GraphFormat::Dot,
            };
            let g = AnyGraph::Labelled(encode(&load(&file, mode)?, enc).graph);
            print!("{}", emit_graph(&g, format));
            Ok(0)
        }
        Command::Graph2trs { kind, file } => {
            let AnyGraph::Plain(g) = parse_graph(&read(&file)?).map_err(usage)? else {
                return Err(usage("expected a plain directed graph, found a labelled one"));
            };
            let t = match kind {
                GraphKindArg::Funcs => graph_to_trs_funcs(&g),
                GraphKindArg::Vars => graph_to_trs_vars(&g),
            }
            .map_err(usage)?;
            print!("{}", print_trs(&t));
            Ok(0)
        }
        Command::Oracle { relation, a, b } => {
            let (ta, tb) = (load(&a, mode)?, load(&b, mode)?);
            match brute_force_decide(&ta, &tb, relation) {
                Ok(true) => {
                    println!("{} and {} are {relation}-isomorphic", a.display(), b.display());
                    Ok(ISO)
                }
                Ok(false) => {
                    println!("{} and {} are not {relation}-isomorphic", a.display(), b.display());
                    Ok(NOT_ISO)
                }
                Err(e @ OracleError::SizeGuard) => Err(Failure { code: SIZE_GUARD, msg: e.to_string() }),
                Err(e @ OracleError::NormalForm(_)) => Err(Failure { code: NORMAL_FORM, msg: e.to_string() }),
            }
        }
    }
}

/// Informational only: never changes the exit code.
fn semantic_report(a: &Trs, b: &Trs, r: Relation, w: &trsiso::deciders::Witness, seed: u64, fuel: usize) {
    match check_semantic_compatibility(a, b, r, w, seed) {
        Ok(rep) if rep.violations.is_empty() => println!("semantic: one-step rewriting preserved on {} samples", rep.samples),
        Ok(rep) => {
            println!("semantic: {} of {} samples violate one-step rewriting", rep.violations.len(), rep.samples);
            for v in &rep.violations {
                println!("  {}: missing {:?}, extra {:?}", v.sample, v.missing.len(), v.extra.len());
            }
        }
        Err(e) => println!("semantic: {e}"),
    }
    let members = w.members();
    if members.len() != 1 {
        return;
    }
    let mut differ = 0;
    let samples = sample_terms(a, SAMPLE_COUNT, SAMPLE_DEPTH, seed);
    for s in &samples {
        let Ok(img) = members[0].apply(s) else { continue };
        if let (Ok(x), Ok(y)) = (terminates_bounded(a, s, fuel), terminates_bounded(b, &img, fuel)) {
            differ += (x != y) as usize;
        }
    }
    println!("semantic: termination probes differ on {differ} of {} samples (fuel {fuel})", samples.len());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
