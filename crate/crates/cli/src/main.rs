use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ordcat::json::{Fixture, Loaded, QuantaleDto};
use ordcat::laws::{bad_law, registry, run_suite, Backend};
use ordcat::maltsev::{ord_w_maltsev_direct, CoproductTest};
use ordcat::quantale::FinQuantale;
use ordcat::replay::{replay, REPLAY_IDS};
use ordcat::report::Verdict;
use ordcat::vcat::{h_is_vfunctor, is_symmetric_vwedge, FinVCat};
use serde_json::json;

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;

/// Largest number of candidate hom tables `classify-vcat` will enumerate.
const ENUMERATION_LIMIT: u128 = 2_000_000;

#[derive(Parser)]
#[command(
    name = "ordcat",
    version,
    about = "Ideals, Mal'tsev tests and law checks on finite ordered structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Ord,
    Vcat,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Ord => Backend::Ord,
            BackendArg::Vcat => Backend::Vcat,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized law suite.
    CheckLaws {
        #[arg(long, value_enum, default_value = "ord")]
        backend: BackendArg,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Base seed; the ORDCAT_SEED environment variable takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_bad_law: bool,
    },
    /// Replay a worked example by id.
    Replay {
        id: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate which small V-categories pass the coproduct test.
    ClassifyVcat {
        /// A quantale fixture file, or one of V2, min3, luk3, diamond.
        #[arg(long)]
        quantale: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Decide whether a finite preorder passes the coproduct test.
    Wmaltsev {
        /// A preorder fixture file.
        #[arg(long)]
        object: PathBuf,
        /// Carrier bound for the cross-checking direct search (at most 3).
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(0..=3))]
        budget: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::CheckLaws {
            backend,
            iterations,
            max_size,
            seed,
            json,
            inject_bad_law,
        } => check_laws(
            backend.into(),
            iterations as usize,
            max_size,
            seed,
            json.as_deref(),
            inject_bad_law,
        ),
        Command::Replay { id, json } => cmd_replay(&id, json.as_deref()),
        Command::ClassifyVcat {
            quantale,
            max_size,
            json,
        } => classify_vcat(&quantale, max_size, json.as_deref()),
        Command::Wmaltsev {
            object,
            budget,
            json,
        } => wmaltsev(&object, budget as usize, json.as_deref()),
    };
    ExitCode::from(code)
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    USAGE
}

fn write_json(path: Option<&Path>, text: &str) -> Result<(), u8> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn seed_override(seed: u64) -> Result<u64, u8> {
    match std::env::var("ORDCAT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| usage(format!("ORDCAT_SEED is not an integer: {s:?}"))),
        Err(_) => Ok(seed),
    }
}

fn check_laws(
    backend: Backend,
    iterations: usize,
    max_size: usize,
    seed: u64,
    json: Option<&Path>,
    bad: bool,
) -> u8 {
    let seed = match seed_override(seed) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut laws = registry(backend);
    if bad {
        laws.push(bad_law(backend));
    }
    let report = run_suite(backend, &laws, iterations, max_size, seed);
    print!("{}", report.human());
    if let Err(code) = write_json(json, &report.to_json_string()) {
        return code;
    }
    if report.violations == 0 {
        OK
    } else {
        VIOLATION
    }
}

fn emit(v: &Verdict, json: Option<&Path>) -> u8 {
    print!("{}", v.human());
    if let Err(code) = write_json(json, &v.to_json_string()) {
        return code;
    }
    if v.passed() {
        OK
    } else {
        VIOLATION
    }
}

fn cmd_replay(id: &str, json: Option<&Path>) -> u8 {
    match replay(id) {
        Some(v) => emit(&v, json),
        None => usage(format!(
            "unknown replay id {id:?}; known ids: {}",
            REPLAY_IDS.join(", ")
        )),
    }
}

fn load_fixture(path: &Path) -> Result<Loaded, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Fixture::parse(&text)
        .and_then(|f| f.load())
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_quantale(arg: &str) -> Result<FinQuantale, u8> {
    let path = Path::new(arg);
    if !path.exists() {
        return FinQuantale::fixture(arg)
            .ok_or_else(|| usage(format!("no such file or quantale fixture: {arg}")));
    }
    match load_fixture(path)? {
        Loaded::Quantale(v) => Ok(v),
        _ => Err(usage(format!("{arg}: expected a quantale fixture"))),
    }
}

fn classify_vcat(arg: &str, max_size: usize, json: Option<&Path>) -> u8 {
    let v = match load_quantale(arg) {
        Ok(v) => Arc::new(v),
        Err(code) => return code,
    };
    let off = max_size * max_size.saturating_sub(1);
    let candidates = (v.size() as u128).checked_pow(off as u32);
    if candidates.is_none_or(|c| c > ENUMERATION_LIMIT) {
        return usage(format!(
            "--max-size {max_size} needs more than {ENUMERATION_LIMIT} candidates"
        ));
    }
    let boolean = *v == FinQuantale::boolean();
    let mut rows = Vec::new();
    let mut disagreements = 0;
    for n in 1..=max_size {
        for y in FinVCat::all_of_size(&v, n) {
            let object = h_is_vfunctor(&y);
            let sym = is_symmetric_vwedge(&y);
            let equivalence = boolean.then(|| y.to_preorder().expect("boolean").is_symmetric());
            if object != sym || equivalence.is_some_and(|e| e != sym) {
                disagreements += 1;
            }
            rows.push(json!({
                "size": n,
                "hom": y.hom_rows(),
                "w_maltsev_object": object,
                "symmetric_vwedge": sym,
                "equivalence_relation": equivalence,
            }));
        }
    }
    let quantale = serde_json::to_value(QuantaleDto::from(v.as_ref())).expect("serializes");
    let details = json!({"quantale": quantale, "max_size": max_size, "disagreements": disagreements, "table": rows});
    emit(
        &Verdict::new("classify-vcat", disagreements == 0, details),
        json,
    )
}

fn wmaltsev(path: &Path, budget: usize, json: Option<&Path>) -> u8 {
    let y = match load_fixture(path) {
        Ok(Loaded::Preorder(p)) => p,
        Ok(_) => return usage(format!("{}: expected a preorder fixture", path.display())),
        Err(code) => return code,
    };
    let test = CoproductTest::new(&y);
    let verdict = test.holds();
    let mut details = json!({
        "size": y.size(),
        "w_maltsev_object": verdict,
        "d_star": ordcat::json::rel_json(&test.d_star),
    });
    let mut agree = true;
    if y.size() <= 3 {
        let direct = ord_w_maltsev_direct(&y, budget);
        agree = direct.holds == verdict;
        details["direct_search"] = json!({"budget": budget, "holds": direct.holds, "ideals_checked": direct.ideals_checked});
    }
    details["agreement"] = json!(agree);
    emit(&Verdict::new("wmaltsev", agree, details), json)
}
