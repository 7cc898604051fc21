//! `slq`: build, decompose and fuse representations of sl_q(2) from the shell.
//!
//! Exit status: 0 on success, 1 when an invariant fails, 2 for a rejected
//! configuration, 3 when a computation cannot complete.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slq_core::decompose::{build_fingerprint_library, verify_decomposition, FingerprintLibrary, SummandType};
use slq_core::fusion::{bratteli, fusion_tower_with, PairTable, TowerOptions, MATRIX_CAP, RING_CAP};
use slq_core::qalgebra::{make_context, Mode, QContext, Sign, Spin};
use slq_core::repbuild::build_irrep;
use slq_core::report::{decompose_spins, run_suite, DecompositionReport, FusionReport, RepReport, Suite};
use slq_core::scalars::Rational;
use slq_core::Error;

#[derive(Parser)]
#[command(
    name = "slq",
    version,
    about = "Exact representations of sl_q(2): tensor products, decompositions, fusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators and the Casimir of one irrep.
    Rep {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Spin, e.g. 0.5, 1, 3/2.
        #[arg(long)]
        j: Spin,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decompose a tensor product of irreps into summands.
    Decompose {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Comma-separated spins, e.g. 0.5,0.5,1.
        #[arg(long, value_delimiter = ',', required = true)]
        spins: Vec<Spin>,
        /// Seed for the randomized splitting fallback.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest product dimension accepted.
        #[arg(long, default_value_t = 256)]
        cap: usize,
        /// Include summand bases in the JSON output.
        #[arg(long)]
        basis: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Multiplicities of the summands of the tensor powers of one module.
    Fusion {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bratteli diagram of a tower as Graphviz DOT.
    Bratteli {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        tower: TowerArgs,
        /// Keep twisted copies apart instead of identifying them.
        #[arg(long)]
        keep_twist: bool,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Run invariant suites; exits with 1 if any check fails.
    Check {
        #[command(flatten)]
        ctx: ContextArgs,
        /// algebra, center, coassoc, decompose or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Spins to check (default: every allowed spin).
        #[arg(long, value_delimiter = ',')]
        spins: Vec<Spin>,
        /// Largest product dimension checked.
        #[arg(long, default_value_t = 16)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct ContextArgs {
    /// Root of unity q = exp(2 pi i / N).
    #[arg(
        long,
        value_name = "N",
        conflicts_with = "generic",
        required_unless_present = "generic"
    )]
    root: Option<usize>,
    /// Rational q instead of a root of unity.
    #[arg(long)]
    generic: bool,
    /// The rational q in generic mode.
    #[arg(long, default_value = "3/2", requires = "generic")]
    q0: Rational,
    /// Sign of the irreps, +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    eps: Sign,
}

impl ContextArgs {
    fn context(&self) -> Result<QContext, Error> {
        match self.root {
            Some(n) => make_context(Mode::Root, Some(n), None, self.eps),
            None => make_context(Mode::Generic, None, Some(self.q0.clone()), self.eps),
        }
    }
}

#[derive(Args)]
struct TowerArgs {
    /// Generating module: a spin (0.5, 1) or a type name (I6_1, sigma*V(1/2)).
    #[arg(long)]
    seed_rep: String,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Compute levels by the ring recursion or by decomposing full products.
    #[arg(long, value_enum, default_value = "ring")]
    mode: ModeArg,
    /// Largest dimension of the deepest product (default 4096 ring, 64 full).
    #[arg(long)]
    cap: Option<u64>,
}

impl TowerArgs {
    /// The generating type; it must exist in the context.
    fn generator(&self, lib: &FingerprintLibrary) -> Result<SummandType, Error> {
        let ty = match self.seed_rep.parse::<Spin>() {
            Ok(spin) => SummandType::irrep(spin),
            Err(_) => self.seed_rep.parse()?,
        };
        lib.entry(ty).map_err(|e| Error::UnsupportedParameter(e.to_string()))?;
        Ok(ty)
    }

    fn options(&self) -> TowerOptions {
        let opts = match self.mode {
            ModeArg::Ring => TowerOptions::ring(),
            ModeArg::Full => TowerOptions::full_matrix(),
        };
        opts.with_cap(self.cap.unwrap_or(match self.mode {
            ModeArg::Ring => RING_CAP,
            ModeArg::Full => MATRIX_CAP,
        }))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ring,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// What a command produced, and whether its invariants held.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn unsupported(format: Format) -> Error {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    Error::UnsupportedParameter(format!("output format {name} is not available for this command"))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Rep { ctx, j, format } => {
            let ctx = ctx.context()?;
            let report = RepReport::new(&build_irrep(j, &ctx)?)?;
            match format {
                Format::Json => Ok(Outcome::ok(json(&report))),
                Format::Text => {
                    let mut out = format!("{} in {ctx}\n", report.label);
                    for (name, m) in [
                        ("E", &report.e),
                        ("F", &report.f),
                        ("K", &report.k),
                        ("C", &report.casimir),
                    ] {
                        out.push_str(&format!("{name} =\n"));
                        for row in m {
                            out.push_str(&format!("  [{}]\n", row.join(", ")));
                        }
                    }
                    Ok(Outcome::ok(out))
                }
                Format::Dot => Err(unsupported(format)),
            }
        }
        Command::Decompose {
            ctx,
            spins,
            seed,
            cap,
            basis,
            format,
        } => {
            let ctx = ctx.context()?;
            let d = decompose_spins(&spins, &ctx, seed, cap)?;
            let report = DecompositionReport::new(&spins, &d, basis);
            let ok = report.verified;
            let text = match format {
                Format::Json => json(&report),
                Format::Text => {
                    let mut out = String::new();
                    for s in &report.summands {
                        out.push_str(&format!(
                            "{}  dim {}  casimir {}  q_dim {}\n",
                            s.ty, s.dim, s.casimir, s.q_dim
                        ));
                    }
                    out.push_str(&verify_decomposition(&d).to_string());
                    out
                }
                Format::Dot => return Err(unsupported(format)),
            };
            Ok(Outcome { text, ok })
        }
        Command::Fusion { ctx, tower, format } => {
            let ctx = ctx.context()?;
            let lib = build_fingerprint_library(&ctx)?;
            let opts = tower.options();
            let table = fusion_tower_with(tower.generator(&lib)?, tower.depth, &lib, &mut PairTable::new(), opts)?;
            let ok = table.dimension_failures().is_empty();
            let report = FusionReport::new(&table, opts.mode);
            let text = match format {
                Format::Json => json(&report),
                Format::Text => {
                    let mut out = String::new();
                    for l in &report.levels {
                        let parts: Vec<String> = l.kinds.iter().map(|(k, c)| format!("{c}x{k}")).collect();
                        out.push_str(&format!("n={}  {}\n", l.level, parts.join(" + ")));
                    }
                    out
                }
                Format::Dot => return Err(unsupported(format)),
            };
            Ok(Outcome { text, ok })
        }
        Command::Bratteli {
            ctx,
            tower,
            keep_twist,
            output,
            format,
        } => {
            let ctx = ctx.context()?;
            let lib = build_fingerprint_library(&ctx)?;
            let generator = tower.generator(&lib)?;
            let table = fusion_tower_with(generator, tower.depth, &lib, &mut PairTable::new(), tower.options())?;
            let diagram = bratteli(&table);
            let title = format!("{generator} in {ctx}");
            let (text, ok) = if keep_twist {
                let ok = diagram.is_consistent();
                match format {
                    Format::Dot => (diagram.to_dot(&title), ok),
                    Format::Json => (json(&diagram), ok),
                    Format::Text => return Err(unsupported(format)),
                }
            } else {
                let projected = diagram.up_to_twist()?;
                let ok = projected.is_consistent() && diagram.is_consistent();
                match format {
                    Format::Dot => (projected.to_dot(&title), ok),
                    Format::Json => (json(&projected), ok),
                    Format::Text => return Err(unsupported(format)),
                }
            };
            match output {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| Error::UnsupportedParameter(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Outcome {
                        text: String::new(),
                        ok,
                    })
                }
                None => Ok(Outcome { text, ok }),
            }
        }
        Command::Check {
            ctx,
            suite,
            spins,
            cap,
            format,
        } => {
            let ctx = ctx.context()?;
            let suite: Suite = suite.parse()?;
            let report = run_suite(&ctx, suite, &spins, cap)?;
            let ok = report.passed();
            let text = match format {
                Format::Text => format!(
                    "{report}{} of {} checks passed\n",
                    report.checks.len() - report.failures().len(),
                    report.checks.len()
                ),
                Format::Json => json(&report),
                Format::Dot => return Err(unsupported(format)),
            };
            Ok(Outcome { text, ok })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegenerateDeformation(_)
        | Error::SpinTooLarge { .. }
        | Error::UnsupportedParameter(_)
        | Error::Parse(_)
        | Error::NotApplicable(_)
        | Error::EmptyProduct => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
