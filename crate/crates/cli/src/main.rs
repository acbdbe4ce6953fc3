use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use moufang_core::mult_group::mult_group_invariants;
use moufang_core::report::{DEFAULT_BUDGET, DEFAULT_SAMPLES, DEFAULT_SEED};
use moufang_core::structure::centralizer;
use moufang_core::text::{format_table, parse_table};
use moufang_core::verify::{analyze, exit_code, run_suite, to_json_lines, SuiteOptions};
use moufang_core::{
    build, loops::generate, CheckConfig, CheckReport, Cml, ConstructionSpec, Error, FiniteLoop,
    Mode, Status, Subloop,
};

#[derive(Parser)]
#[command(name = "moufang", version, about = "Finite commutative Moufang loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest number of tuples checked exhaustively before sampling.
    #[arg(long, global = true, env = "MOUFANG_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Number of samples drawn when a check exceeds the budget.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
}

impl Common {
    fn config(&self) -> CheckConfig {
        CheckConfig {
            budget: self.budget,
            seed: self.seed,
            samples: self.samples,
            ..CheckConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a Cayley table is a loop.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write the Cayley table of a construction: cyclic(n), ea3(k), cml81, product(a,b).
    Construct {
        spec: String,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Structural summary of a loop.
    Analyze {
        path: PathBuf,
        /// Also compute the subloop lattice and special rank.
        #[arg(long)]
        rank: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Invariants of the multiplication group.
    Multgroup {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Centralizer Z_H(M) of a set M inside the subloop H.
    Centralizer {
        path: PathBuf,
        /// Generators of H, comma separated; the whole loop when omitted.
        #[arg(long, value_delimiter = ',')]
        subloop: Option<Vec<usize>>,
        /// Elements of M, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "")]
        set: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every check of the structure theory on a loop.
    Verify {
        path: PathBuf,
        /// Include the checks that need the full subloop lattice.
        #[arg(long)]
        rank: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}

fn load(path: &Path) -> Result<FiniteLoop, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_table(&text)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Validate { path, common } => {
            let l = load(&path)?;
            let cml = l.is_cml().passed();
            if common.json {
                print_json(
                    &serde_json::json!({"order": l.order(), "identity": l.identity(), "cml": cml}),
                );
            } else {
                println!("loop of order {} with identity {}", l.order(), l.identity());
                println!("commutative Moufang: {}", if cml { "yes" } else { "no" });
            }
            Ok(0)
        }
        Command::Construct { spec, out } => {
            let spec: ConstructionSpec = spec.parse()?;
            let text = format_table(&build(&spec)?);
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| Error::Parse {
                    line: 0,
                    message: format!("{}: {e}", p.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Analyze { path, rank, common } => {
            let l = load(&path)?;
            let a = analyze(&l, rank)?;
            if common.json {
                print_json(&a);
                return Ok(0);
            }
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            println!("order                {}", a.order);
            println!("identity             {}", a.identity);
            println!("commutative          {}", a.commutative);
            println!("associative          {}", a.associative);
            println!("CML                  {}", a.cml);
            println!("exponent             {}", a.exponent);
            println!("center order         {}", opt(a.center_order));
            if let Some(s) = &a.central_series_orders {
                println!("upper central series {s:?}");
            }
            println!("class                {}", opt(a.nilpotency_class));
            if let Some((q, e)) = a.quotient_by_center {
                println!("L/Z(L)               order {q}, exponent {e}");
            }
            println!("min generators       {}", opt(a.min_generators));
            println!("rank                 {}", opt(a.special_rank));
            println!("|M(L)|               {}", a.mult_group_order);
            println!("|I(L)|               {}", a.inner_mapping_group_order);
            Ok(0)
        }
        Command::Multgroup { path, common } => {
            let l = load(&path)?;
            let r = mult_group_invariants(&l, &common.config());
            if common.json {
                print_json(&r);
            } else {
                println!("degree               {}", r.degree);
                println!("order                {}", r.order);
                println!("inner mapping order  {}", r.inner_order);
                println!("transitive           {}", r.transitive);
                println!("|M| = n|I|           {}", r.order_is_degree_times_inner);
                println!(
                    "center order         {}",
                    r.center_order.as_deref().unwrap_or("-")
                );
                println!(
                    "class                {}",
                    r.nilpotency_class.map_or("-".into(), |c| c.to_string())
                );
                println!("3-group              {}", r.is_3_group);
                for (what, why) in &r.skipped {
                    println!("skipped {what}: {why}");
                }
            }
            Ok(0)
        }
        Command::Centralizer {
            path,
            subloop,
            set,
            common,
        } => {
            let l = Cml::certify(load(&path)?)?;
            let m: Vec<usize> = set
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim().parse().map_err(|_| Error::Parse {
                        line: 0,
                        message: format!("not an index: {s:?}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            let h = match &subloop {
                Some(gens) => {
                    for &g in gens {
                        l.check_element(g)?;
                    }
                    generate(&l, gens)
                }
                None => Subloop::whole(&l),
            };
            let c = centralizer(&l, &h, &m)?;
            if common.json {
                print_json(&serde_json::json!({
                    "subloop_order": h.order(),
                    "set": m,
                    "centralizer_order": c.order(),
                    "members": c.members(),
                }));
            } else {
                println!("|H| = {}, M = {m:?}", h.order());
                println!("|Z_H(M)| = {}", c.order());
                println!("{:?}", c.members());
            }
            Ok(0)
        }
        Command::Verify { path, rank, common } => {
            let l = load(&path)?;
            let opts = SuiteOptions {
                cfg: common.config(),
                rank,
                ..SuiteOptions::default()
            };
            let reports = run_suite(&l, &opts);
            if common.json {
                print!("{}", to_json_lines(&reports));
            } else {
                for r in &reports {
                    println!("{}", human_line(r));
                }
            }
            Ok(exit_code(&reports) as u8)
        }
    }
}

fn human_line(r: &CheckReport) -> String {
    let status = match &r.status {
        Status::Pass => "PASS".to_string(),
        Status::Fail => "FAIL".to_string(),
        Status::Skipped(why) => format!("SKIP ({why})"),
    };
    let mode = match &r.mode {
        Mode::Exhaustive => "exhaustive".to_string(),
        Mode::Sampled { seed, count } => format!("sampled seed={seed} count={count}"),
    };
    let mut line = format!(
        "{status:<6} {:<40} {mode}, {} checked, {} ms",
        r.name, r.checked, r.timing_ms
    );
    if let Some(w) = &r.counterexample {
        line.push_str(&format!(", witness {}", serde_json::to_string(w).unwrap()));
    }
    if let Some(n) = &r.note {
        line.push_str(&format!(" [{n}]"));
    }
    line
}
