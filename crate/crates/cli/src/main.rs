use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plstrat::arrangement::{stratify_singular_locus, svg};
use plstrat::jacobi::Notion;
use plstrat::pipeline::{
    self, bundle_checks_pass, codomain_of, jacobi_stage, load, to_json_bytes, validate_input, ChainSelector, Error,
    Exports, Input, PipelineConfig,
};
use plstrat::reeb::{reeb_graph, reeb_scaffold};

#[derive(Parser)]
#[command(name = "plstrat", version, about = "Jacobi sets, codomain stratifications and Reeb spaces of PL maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the domain is a combinatorial manifold and the map is generic.
    Validate(InputArgs),
    /// Run every stage and write the output bundle.
    Pipeline {
        #[command(flatten)]
        input: InputArgs,
        /// Fiber-constancy samples per open stratum.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Skip the DOT rendering of the Reeb graph.
        #[arg(long)]
        no_dot: bool,
        /// Skip the SVG rendering of the codomain stratification.
        #[arg(long)]
        no_svg: bool,
    },
    /// Critical simplices and the verdict table.
    Jacobi(InputArgs),
    /// Stratification of the image by the refined arrangement.
    StratifyCodomain {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reeb graph (maps to the line) or fiber-component scaffold (maps to the plane).
    Reeb {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Stratify a planar fold/cusp locus.
    Morse2Locus {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Filtration file for a chain of codomain strata.
    ExportFiltration {
        #[command(flatten)]
        input: InputArgs,
        /// Chain index among the maximal chains, or comma-separated labels.
        #[arg(long, default_value = "0")]
        chain: ChainSelector,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    values: Option<PathBuf>,
    #[arg(long)]
    locus: Option<PathBuf>,
    #[arg(long, default_value = "H")]
    notion: Notion,
    /// Break link ties by vertex index.
    #[arg(long)]
    perturb: bool,
    /// Output directory; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

impl InputArgs {
    fn config(&self) -> Result<PipelineConfig, Error> {
        let mut c = PipelineConfig::new(self.complex.clone(), self.values.clone(), self.locus.clone())?;
        c.notion = self.notion;
        c.perturb = self.perturb;
        Ok(c)
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), message: e.to_string() }
}

/// Writes `bytes` to `out/name`, or to standard output.
fn emit(out: Option<&Path>, name: &str, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| io_err(&path, e))
        }
        None => std::io::stdout().write_all(bytes).map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

fn need_map(input: Input, command: &str) -> Result<plstrat::jacobi::PLMap, Error> {
    match input {
        Input::Map(f) => Ok(f),
        Input::Locus(_) => Err(Error::Config(format!("{command} needs --complex and --values"))),
    }
}

fn wrong_format(command: &str, format: Format) -> Error {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Svg => "svg",
    };
    Error::Config(format!("{command} does not support --format {name}"))
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Validate(args) => {
            let report = validate_input(&load(&args.config()?)?);
            emit(args.out.as_deref(), "validate.json", &to_json_bytes(&report))?;
            Ok(report.exit_code())
        }
        Command::Pipeline { input, samples, no_dot, no_svg } => {
            let mut config = input.config()?;
            config.samples_per_stratum = samples;
            config.exports = Exports { dot: !no_dot, svg: !no_svg };
            let bundle = pipeline::cmd_pipeline(&config)?;
            let out = input.out.unwrap_or_else(|| PathBuf::from("."));
            for (name, bytes) in &bundle {
                emit(Some(&out), name, bytes)?;
                println!("{}", out.join(name).display());
            }
            if bundle_checks_pass(&bundle) {
                Ok(0)
            } else {
                eprintln!("error: consistency checks failed, see audit.json");
                Ok(3)
            }
        }
        Command::Jacobi(args) => {
            let f = need_map(load(&args.config()?)?, "jacobi")?;
            let (json, _) = jacobi_stage(&f, args.notion)?;
            emit(args.out.as_deref(), "jacobi.json", &to_json_bytes(&json))?;
            Ok(0)
        }
        Command::StratifyCodomain { input, format } => {
            let f = need_map(load(&input.config()?)?, "stratify-codomain")?;
            let s = codomain_of(&f, input.notion)?;
            match format {
                Format::Json => emit(input.out.as_deref(), "codomain_strat.json", &to_json_bytes(&s.to_json()))?,
                Format::Svg => emit(input.out.as_deref(), "codomain_strat.svg", svg::codomain_svg(&s).as_bytes())?,
                Format::Dot => return Err(wrong_format("stratify-codomain", format)),
            }
            Ok(0)
        }
        Command::Reeb { input, format } => {
            let f = need_map(load(&input.config()?)?, "reeb")?;
            if f.k() == 1 {
                let g = reeb_graph(&f, input.notion)?;
                match format {
                    Format::Json => emit(input.out.as_deref(), "reeb.json", &to_json_bytes(&g))?,
                    Format::Dot => emit(input.out.as_deref(), "reeb.dot", g.to_dot().as_bytes())?,
                    Format::Svg => return Err(wrong_format("reeb", format)),
                }
            } else {
                if format != Format::Json {
                    return Err(wrong_format("reeb", format));
                }
                let s = codomain_of(&f, input.notion)?;
                let scaffold = reeb_scaffold(&f, &s)?;
                emit(input.out.as_deref(), "scaffold.json", &to_json_bytes(&scaffold.to_json()))?;
            }
            Ok(0)
        }
        Command::Morse2Locus { input, format } => {
            let Input::Locus(l) = load(&input.config()?)? else {
                return Err(Error::Config("morse2-locus needs --locus".into()));
            };
            let s = stratify_singular_locus(&l)?;
            match format {
                Format::Json => emit(input.out.as_deref(), "codomain_strat.json", &to_json_bytes(&s.to_json()))?,
                Format::Svg => emit(input.out.as_deref(), "codomain_strat.svg", svg::locus_svg(&s).as_bytes())?,
                Format::Dot => return Err(wrong_format("morse2-locus", format)),
            }
            Ok(0)
        }
        Command::ExportFiltration { input, chain } => {
            let text = pipeline::cmd_export_filtration(&input.config()?, &chain)?;
            emit(input.out.as_deref(), "filtration.txt", text.as_bytes())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
