use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkdiag::eqtheory::{check_all, gen_term};
use linkdiag::interchange::{
    diagram_to_netlist, netlist_to_diagram, parse_netlist, print_netlist, to_dot,
};
use linkdiag::{
    delink, flatten, parse_module, print_module, Diagram, Error, Mode, Signature, SourceModule,
};

#[derive(Parser)]
#[command(
    name = "diag",
    version,
    about = "Type check, interpret and compare string diagram terms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type check every definition and print its judgement.
    Check { file: PathBuf },
    /// Interpret a definition as a diagram.
    Eval {
        file: PathBuf,
        #[arg(long = "def")]
        def: String,
        /// Write the diagram as DOT to this file (`-` for standard output).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether two definitions denote the same diagram. Exits 0 iff they do.
    Eq {
        file: PathBuf,
        name1: String,
        name2: String,
    },
    /// Print a definition in link normal form.
    Flatten {
        file: PathBuf,
        #[arg(long = "def")]
        def: String,
    },
    /// Print a definition using combinators only.
    Delink {
        file: PathBuf,
        #[arg(long = "def")]
        def: String,
    },
    /// Export a closed definition as a netlist.
    ToNetlist {
        file: PathBuf,
        #[arg(long = "def")]
        def: String,
    },
    /// Import a netlist and print it as a module with one definition.
    FromNetlist {
        file: PathBuf,
        /// Overrides the mode pragma of the netlist.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Check every equational schema of a mode on random instances.
    Laws {
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, env = "DIAG_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        size: usize,
    },
    /// Print a random closed well-typed term.
    Gen {
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 20)]
        size: usize,
        #[arg(long, env = "DIAG_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// A failure reported with exit status 1.
struct Failure {
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

impl<E: Into<Error>> From<E> for Box<Failure> {
    fn from(e: E) -> Self {
        Box::new(Failure::from(e.into()))
    }
}

type Outcome = Result<(String, bool), Box<Failure>>;

fn fail(code: &'static str, message: impl Into<String>) -> Box<Failure> {
    Box::new(Failure {
        code,
        message: message.into(),
    })
}

fn read(path: &Path) -> Result<String, Box<Failure>> {
    std::fs::read_to_string(path).map_err(|e| fail("IoError", format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SourceModule, Box<Failure>> {
    Ok(parse_module(&read(path)?)?)
}

fn lookup(m: &SourceModule, name: &str) -> Result<Diagram, Box<Failure>> {
    let t = m
        .def(name)
        .ok_or_else(|| fail("UnknownDefinition", format!("no definition named `{name}`")))?;
    Ok(m.context().interpret(t)?)
}

fn summary(d: &Diagram) -> String {
    let list = |m: std::collections::BTreeMap<String, usize>| {
        let v: Vec<String> = m.into_iter().map(|(x, c)| format!("{x}:{c}")).collect();
        if v.is_empty() {
            "-".to_string()
        } else {
            v.join(" ")
        }
    };
    let mut s = String::new();
    let _ = writeln!(s, "type: {} -> {}", d.inputs(), d.outputs());
    let _ = writeln!(s, "boxes: {}", d.boxes().len());
    let _ = writeln!(s, "nets: {}", d.nets().len());
    let _ = writeln!(s, "loops: {}", d.loops());
    let _ = writeln!(s, "sources: {}", list(d.open_sources()));
    let _ = writeln!(s, "sinks: {}", list(d.open_sinks()));
    let _ = writeln!(s, "acyclic: {}", d.is_acyclic());
    s
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { file } => {
            let m = load(&file)?;
            let ctx = m.context();
            let mut out = String::new();
            for (name, t) in &m.defs {
                let j = ctx.typecheck(t).map_err(|e| {
                    let e = Error::from(e);
                    fail(e.code(), format!("in `{name}`: {e}"))
                })?;
                let _ = writeln!(out, "{name} : {}", j.render());
            }
            Ok((out, true))
        }
        Command::Eval { file, def, dot } => {
            let m = load(&file)?;
            let d = lookup(&m, &def)?;
            let mut out = summary(&d);
            match dot {
                Some(p) if p.as_os_str() == "-" => out.push_str(&to_dot(&d)),
                Some(p) => std::fs::write(&p, to_dot(&d))
                    .map_err(|e| fail("IoError", format!("{}: {e}", p.display())))?,
                None => {}
            }
            Ok((out, true))
        }
        Command::Eq { file, name1, name2 } => {
            let m = load(&file)?;
            let same = lookup(&m, &name1)?.equivalent(&lookup(&m, &name2)?);
            let verdict = if same { "equivalent" } else { "not equivalent" };
            Ok((format!("{verdict}\n"), same))
        }
        Command::Flatten { file, def } => {
            let m = load(&file)?;
            let t = flatten(&lookup(&m, &def)?, m.mode)?;
            Ok((format!("{}\n", linkdiag::print_term(&t)), true))
        }
        Command::Delink { file, def } => {
            let m = load(&file)?;
            let t = delink(&lookup(&m, &def)?, m.mode)?;
            Ok((format!("{}\n", linkdiag::print_term(&t)), true))
        }
        Command::ToNetlist { file, def } => {
            let m = load(&file)?;
            let mut nl = diagram_to_netlist(&lookup(&m, &def)?, &def)?;
            nl.mode = Some(m.mode);
            Ok((print_netlist(&nl), true))
        }
        Command::FromNetlist { file, mode } => {
            let nl = parse_netlist(&read(&file)?)?;
            let mode = mode.or(nl.mode).unwrap_or(Mode::Uniflow);
            // arities come from the first instance of each constant
            let mut sig = Signature::new();
            for c in &nl.components {
                sig.insert(c.constant.clone(), c.inputs.len(), c.outputs.len());
            }
            let imported = netlist_to_diagram(&nl, &sig, mode)?;
            for w in &imported.warnings {
                eprintln!("warning: {w}");
            }
            let t = flatten(&imported.diagram, mode)?;
            let m = SourceModule {
                mode,
                signature: sig,
                free_decls: Default::default(),
                defs: vec![(nl.name.clone(), t)],
            };
            Ok((print_module(&m), true))
        }
        Command::Laws {
            mode,
            instances,
            seed,
            size,
        } => {
            let reports = check_all(mode, &Signature::law_default(), instances, size, seed);
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            let failed = reports.iter().filter(|r| !r.ok()).count();
            let _ = writeln!(out, "{} schemas, {failed} failing", reports.len());
            Ok((out, failed == 0))
        }
        Command::Gen { mode, size, seed } => {
            let t = gen_term(mode, &Signature::law_default(), size, seed);
            Ok((format!("{}\n", linkdiag::print_term(&t)), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(1)
        }
    }
}
