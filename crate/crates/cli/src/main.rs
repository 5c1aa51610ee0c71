use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use lcupar::circuits::{
    build_qrom_parallel, build_qrom_serial, build_select_parallel, build_select_serial,
    emit_circuit, emit_staged, synthesize_partition, Circuit, QromTable,
};
use lcupar::clifford::{normal_form_stages, tableau_from_circuit};
use lcupar::io::{
    check_partition, emit_observable, emit_qrom_table, parse_observable, parse_qrom_table,
    partition_from_toml, partition_to_toml, resource_report_csv, resource_report_text, sweep_csv,
    verdict_csv, verdict_text, SweepRow, Verification,
};
use lcupar::pipeline::{
    all_x_observable, qrom_filling_sweep, random_qrom_table, run_pipeline, PipelineConfig,
};
use lcupar::resources::{
    estimate_from_partition, estimate_select, CopiesConvention, CostModelConfig, ResourceReport,
};
use lcupar::sim::{circuits_equivalent, EquivalenceConfig};
use lcupar::{
    partition_parallel, partition_qrom_addresses, Error, ErrorClass, Observable, Partition,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "lcupar", version, about = "Parallel SELECT and QROM compiler")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest set size; defaults to the number of system qubits (address
    /// width for QROM tables).
    #[arg(long, global = true)]
    capacity: Option<usize>,

    /// Index instances charged by the resource model: `n` or `max-set-size`.
    #[arg(long, global = true, default_value = "n")]
    copies_convention: CopiesConvention,

    #[arg(long, global = true, default_value_t = EquivalenceConfig::default().seed)]
    seed: u64,

    #[arg(long, global = true, default_value_t = EquivalenceConfig::default().tolerance)]
    tolerance: f64,

    /// Widest circuit the statevector check will simulate.
    #[arg(long, global = true, default_value_t = EquivalenceConfig::default().qubit_cap)]
    qubit_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Serial,
    Parallel,
}

#[derive(Subcommand)]
enum Command {
    /// Split an observable into commuting, linearly independent sets.
    Partition {
        observable: PathBuf,
        /// Write the partition file here instead of stdout; the summary then
        /// goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diagonalizing Clifford of every set, in staged normal form.
    Synth {
        observable: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Emit the serial or parallel SELECT circuit.
    BuildSelect {
        observable: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Variant::Parallel)]
        variant: Variant,
    },
    /// Emit the serial or parallel QROM circuit for a table file.
    BuildQrom {
        table: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Parallel)]
        variant: Variant,
    },
    /// Check serial and parallel SELECT for equivalence by simulation.
    Verify {
        observable: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Random input states per check.
        #[arg(long, default_value_t = EquivalenceConfig::default().trials)]
        trials: usize,
    },
    /// Resource estimate, from an observable or from raw counts.
    Estimate {
        #[arg(conflicts_with_all = ["qubits", "terms", "sets"])]
        observable: Option<PathBuf>,
        #[arg(long, requires = "observable")]
        partition: Option<PathBuf>,
        #[arg(long, requires_all = ["terms", "sets"])]
        qubits: Option<usize>,
        #[arg(long, requires_all = ["qubits", "sets"])]
        terms: Option<usize>,
        #[arg(long, requires_all = ["qubits", "terms"])]
        sets: Option<usize>,
    },
    /// Filling factor of all 2^n address patterns for n = 2..=max-n.
    SweepQrom {
        #[arg(long, default_value_t = 14)]
        max_n: usize,
    },
    /// Partition, synthesize, build, verify and estimate in one run.
    Pipeline {
        observable: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = EquivalenceConfig::default().trials)]
        trials: usize,
    },
    /// Write a sample input.
    Generate {
        #[command(subcommand)]
        sample: Sample,
    },
}

#[derive(Subcommand)]
enum Sample {
    /// Every tensor product of I and X on n qubits, unit weights.
    AllX { n: usize },
    /// Random table over distinct addresses, seeded by `--seed`.
    QromTable {
        #[arg(long)]
        address_width: usize,
        #[arg(long)]
        data_width: usize,
        #[arg(long)]
        entries: usize,
    },
}

enum Failure {
    Core(Error),
    NotEquivalent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Io => 1,
        ErrorClass::Parse => 3,
        ErrorClass::Precondition => 4,
        ErrorClass::Capacity => 5,
        ErrorClass::Verification => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
        Err(Failure::NotEquivalent(out)) => {
            print!("{out}");
            eprintln!("error: circuits are not equivalent");
            ExitCode::from(exit_code(ErrorClass::Verification))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Core(Error::Io(format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Core(Error::Io(format!("{}: {e}", path.display()))))
}

fn load_observable(path: &Path) -> Result<Observable, Failure> {
    let obs = parse_observable(path)?;
    let s = obs.stats();
    if s.merged + s.dropped > 0 {
        eprintln!(
            "note: {} duplicate terms merged, {} zero terms dropped",
            s.merged, s.dropped
        );
    }
    Ok(obs)
}

impl Cli {
    fn cost(&self) -> CostModelConfig {
        CostModelConfig {
            copies_convention: self.copies_convention,
            ..CostModelConfig::default()
        }
    }

    fn equivalence(&self, trials: usize) -> EquivalenceConfig {
        EquivalenceConfig {
            trials,
            tolerance: self.tolerance,
            seed: self.seed,
            qubit_cap: self.qubit_cap,
        }
    }

    /// Partition read from `file` and checked against `obs`, or computed.
    fn partition(&self, obs: &Observable, file: Option<&Path>) -> Result<Partition, Failure> {
        match file {
            Some(path) => {
                let p = partition_from_toml(&read(path)?)?;
                check_partition(obs, &p)?;
                Ok(p)
            }
            None => Ok(partition_parallel(obs, self.capacity.unwrap_or(obs.n_qubits()))?.0),
        }
    }
}

fn sweep_report(rows: &[SweepRow]) -> String {
    let mut out =
        String::from("    n  terms   sets  depth_reduction  filling  filling_with_zero\n");
    for r in rows {
        let zero = r
            .filling_with_zero
            .map_or("-".into(), |f| format!("{f:.4}"));
        out += &format!(
            "{:5} {:6} {:6} {:16.4} {:8.4} {:>18}\n",
            r.n, r.term_count, r.set_count, r.depth_reduction, r.filling, zero
        );
    }
    out
}

fn report(r: &ResourceReport, format: Format) -> String {
    match format {
        Format::Report => resource_report_text(r),
        Format::Csv => resource_report_csv(r),
    }
}

fn verdict(v: &Verification, format: Format) -> String {
    match format {
        Format::Report => verdict_text(v),
        Format::Csv => verdict_csv(v),
    }
}

fn qrom_circuit(
    table: &QromTable,
    variant: Variant,
    capacity: Option<usize>,
) -> Result<Circuit, Failure> {
    Ok(match variant {
        Variant::Serial => build_qrom_serial(table)?,
        Variant::Parallel => {
            let cap = capacity.unwrap_or(table.address_width());
            build_qrom_parallel(table, &partition_qrom_addresses(&table.addresses(), cap)?)?
        }
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    match &cli.command {
        Command::Partition { observable, output } => {
            let obs = load_observable(observable)?;
            let p = cli.partition(&obs, None)?;
            let toml = partition_to_toml(&p)?;
            let row = SweepRow::from_partition(&p)?;
            let summary = match cli.format {
                Format::Csv => sweep_csv(&[row]),
                Format::Report => sweep_report(&[row]),
            };
            match output {
                Some(path) => {
                    write(path, &toml)?;
                    write!(stdout, "{summary}")?;
                }
                None => {
                    write!(stdout, "{toml}")?;
                    eprint!("{summary}");
                }
            }
        }
        Command::Synth {
            observable,
            partition,
        } => {
            let obs = load_observable(observable)?;
            let p = cli.partition(&obs, partition.as_deref())?;
            for (k, d) in synthesize_partition(&obs, &p)?.iter().enumerate() {
                let staged = normal_form_stages(&tableau_from_circuit(&d.circuit)?);
                let signs: Vec<String> = d.signs.iter().map(ToString::to_string).collect();
                writeln!(
                    stdout,
                    "# set {k} terms {:?} signs {}",
                    p.sets[k].term_indices,
                    signs.join(" ")
                )?;
                write!(stdout, "{}", emit_staged(&staged))?;
            }
        }
        Command::BuildSelect {
            observable,
            partition,
            variant,
        } => {
            let obs = load_observable(observable)?;
            let c = match variant {
                Variant::Serial => build_select_serial(&obs)?,
                Variant::Parallel => {
                    let p = cli.partition(&obs, partition.as_deref())?;
                    build_select_parallel(&obs, &p, &synthesize_partition(&obs, &p)?)?
                }
            };
            write!(stdout, "{}", emit_circuit(&c))?;
        }
        Command::BuildQrom { table, variant } => {
            let t = parse_qrom_table(table)?;
            write!(
                stdout,
                "{}",
                emit_circuit(&qrom_circuit(&t, *variant, cli.capacity)?)
            )?;
        }
        Command::Verify {
            observable,
            partition,
            trials,
        } => {
            let obs = load_observable(observable)?;
            let p = cli.partition(&obs, partition.as_deref())?;
            let serial = build_select_serial(&obs)?;
            let parallel = build_select_parallel(&obs, &p, &synthesize_partition(&obs, &p)?)?;
            let v = if parallel.n_qubits() > cli.qubit_cap {
                Verification::Skipped {
                    qubits: parallel.n_qubits(),
                    cap: cli.qubit_cap,
                }
            } else {
                let cfg = cli.equivalence(*trials);
                Verification::Checked(circuits_equivalent(
                    &serial,
                    &parallel,
                    &["system", "index"],
                    &cfg,
                )?)
            };
            let out = verdict(&v, cli.format);
            if v.passed() == Some(false) {
                return Err(Failure::NotEquivalent(out));
            }
            write!(stdout, "{out}")?;
        }
        Command::Estimate {
            observable,
            partition,
            qubits,
            terms,
            sets,
        } => {
            let cost = cli.cost();
            let r = match (observable, qubits, terms, sets) {
                (Some(path), ..) => {
                    let obs = load_observable(path)?;
                    let p = cli.partition(&obs, partition.as_deref())?;
                    estimate_from_partition(&obs, &p, &cost)?
                }
                (None, Some(n), Some(l), Some(s)) => {
                    if cost.copies_convention == CopiesConvention::MaxSetSize {
                        Cli::command()
                            .error(
                                clap::error::ErrorKind::ArgumentConflict,
                                "--copies-convention max-set-size needs an observable",
                            )
                            .exit();
                    }
                    estimate_select(*n, *l, *s, &cost)?
                }
                _ => Cli::command()
                    .error(
                        clap::error::ErrorKind::MissingRequiredArgument,
                        "give an observable file or --qubits, --terms and --sets",
                    )
                    .exit(),
            };
            write!(stdout, "{}", report(&r, cli.format))?;
        }
        Command::SweepQrom { max_n } => {
            let sweep = qrom_filling_sweep(*max_n)?;
            let trend = format!(
                "non-decreasing from n=4: {} (zero pattern excluded), {} (zero pattern counted)\n",
                sweep.monotone_from_4, sweep.monotone_with_zero_from_4
            );
            match cli.format {
                Format::Csv => {
                    write!(stdout, "{}", sweep_csv(&sweep.rows))?;
                    eprint!("{trend}");
                }
                Format::Report => write!(stdout, "{}{trend}", sweep_report(&sweep.rows))?,
            }
        }
        Command::Pipeline {
            observable,
            out_dir,
            trials,
        } => {
            let source = read(observable)?;
            let cfg = PipelineConfig {
                capacity: cli.capacity,
                equivalence: cli.equivalence(*trials),
                cost: cli.cost(),
            };
            let a = run_pipeline(&source, &cfg)?;
            fs::create_dir_all(out_dir)?;
            let ext = match cli.format {
                Format::Report => "txt",
                Format::Csv => "csv",
            };
            let v = verdict(&a.verification, cli.format);
            let files = [
                ("partition.toml".to_string(), a.partition_toml()?),
                ("cliffords.txt".to_string(), a.cliffords_text()),
                ("select_serial.txt".to_string(), a.serial_text()),
                ("select_parallel.txt".to_string(), a.parallel_text()),
                (format!("verdict.{ext}"), v.clone()),
                (format!("report.{ext}"), report(&a.report, cli.format)),
                ("manifest.json".to_string(), a.manifest.to_json()),
            ];
            for (name, text) in &files {
                write(&out_dir.join(name), text)?;
            }
            let summary = format!(
                "{} terms on {} qubits, {} sets, filling {:.4}, depth factor {:.4}\n{v}",
                a.observable.len(),
                a.observable.n_qubits(),
                a.partition.set_count(),
                a.filling.filling_factor,
                a.report.depth_reduction_factor
            );
            if a.verification.passed() == Some(false) {
                return Err(Failure::NotEquivalent(summary));
            }
            write!(stdout, "{summary}")?;
        }
        Command::Generate { sample } => match sample {
            Sample::AllX { n } => write!(stdout, "{}", emit_observable(&all_x_observable(*n)?))?,
            Sample::QromTable {
                address_width,
                data_width,
                entries,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let t = random_qrom_table(*address_width, *data_width, *entries, &mut rng)?;
                write!(stdout, "{}", emit_qrom_table(&t))?;
            }
        },
    }
    Ok(())
}
