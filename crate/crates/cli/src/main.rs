mod files;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nefhodge::corpus::{diamond_split, half_lattice_example, pd_partition, product};
use nefhodge::hodge::{
    chi_omega1, e_polynomial, hodge_one_ample, hodge_one_hypersurface, pd_mirror_hodge, ChiReport, FormulaUsed,
    HodgeReport, VertexAssignmentMode,
};
use nefhodge::nefpart::{decompose, enumerate_partitions};
use nefhodge::verify::verify_all;
use nefhodge::{validate, Error, LatticePolytope, NefPartition};
use serde_json::{json, Value};

use files::{int_vec, partition_file, polytope_file, to_canonical_string, vertex_list, FileError};
use report::{digest, hodge_rows, render_json, render_table, Output};

#[derive(Parser)]
#[command(name = "nefhodge", version, about = "Nef-partitions and Hodge numbers of Calabi-Yau complete intersections")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Charge each boundary point of delta* to every nabla_i containing it.
    #[arg(long, global = true)]
    strict_vertex_mode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Single polytopes.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Nef-partitions.
    #[command(subcommand)]
    Nef(NefCmd),
    /// Hodge-theoretic invariants.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Example generators.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Duality identity suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Dimension, facets and lattice-point counts.
    Info { file: PathBuf },
    /// Polar dual; a polytope file when it is a lattice polytope.
    Dual { file: PathBuf },
    /// All lattice points, sorted.
    Points {
        file: PathBuf,
        /// Only points in the relative interior.
        #[arg(long)]
        interior: bool,
    },
}

#[derive(Subcommand)]
enum NefCmd {
    Validate {
        file: PathBuf,
    },
    /// Emits the dual partition file.
    Dualize {
        file: PathBuf,
    },
    /// All nef-partitions of a reflexive polytope into `parts` parts.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        parts: usize,
    },
    Decompose {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum HodgeCmd {
    /// Coefficients of E(delta, t).
    E { file: PathBuf },
    /// Euler characteristic of the 1-forms with its four terms.
    Chi { file: PathBuf },
    /// h^{1,q} in the ample case.
    H1q { file: PathBuf },
    /// h^{q,1} of a hypersurface given by a reflexive polytope file.
    Hypersurface { file: PathBuf },
    /// h^{1,q} of a complete intersection in P^d and of its mirror.
    Pd {
        #[arg(required = true)]
        degrees: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    Pd {
        #[arg(required = true)]
        degrees: Vec<u32>,
    },
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    Diamond,
    Halflattice,
}

#[derive(Subcommand)]
enum VerifyCmd {
    All { file: PathBuf },
}

enum Failure {
    Input(String),
    Core(Error),
    Verification(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Core(e) => match e {
                Error::InvalidInput(_) | Error::DimensionMismatch { .. } => 1,
                Error::Internal(_) => 3,
                _ => 2,
            },
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) | Failure::Verification(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::Input(e.0)
    }
}

/// What a command produced: a report or a polytope/partition file.
enum Produced {
    Report(Output),
    File(Value),
}

struct Inputs {
    bytes: Vec<Vec<u8>>,
}

impl Inputs {
    fn new() -> Self {
        Self { bytes: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Failure::Input(format!("{}: not valid UTF-8", path.display())))?;
        self.bytes.push(bytes);
        Ok(text)
    }

    fn args(&mut self, text: String) {
        self.bytes.push(text.into_bytes());
    }

    fn polytope(&mut self, path: &Path) -> Result<LatticePolytope, Failure> {
        let text = self.read(path)?;
        files::parse_polytope(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }

    fn partition(&mut self, path: &Path) -> Result<NefPartition, Failure> {
        let text = self.read(path)?;
        let parts = files::parse_partition(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok(validate(&parts)?)
    }

    fn digest(&self) -> String {
        let refs: Vec<&[u8]> = self.bytes.iter().map(|b| b.as_slice()).collect();
        digest(&refs)
    }
}

fn formula_name(f: FormulaUsed) -> &'static str {
    match f {
        FormulaUsed::Hypersurface => "hypersurface",
        FormulaUsed::AmplePullback => "amplePullback",
        FormulaUsed::AmpleTerminal => "ampleTerminal",
        FormulaUsed::PdMirror => "pdMirror",
    }
}

fn hodge_json(r: &HodgeReport) -> Value {
    json!({ "hOneQ": r.h_one_q, "formulaUsed": formula_name(r.formula), "preconditionNotes": r.notes })
}

fn chi_json(r: &ChiReport) -> Value {
    let mode = match r.mode {
        VertexAssignmentMode::Canonical => "canonical",
        VertexAssignmentMode::Strict => "strict",
    };
    json!({
        "chiOmega1": r.chi_omega1,
        "terms": {
            "chiOd": r.terms[0],
            "partSums": r.terms[1],
            "vertexOutside": r.terms[2],
            "vertexInside": r.terms[3],
        },
        "vertexAssignmentMode": mode,
    })
}

fn partition_json(np: &NefPartition) -> Value {
    json!({
        "dim": np.d(),
        "r": np.r(),
        "delta": vertex_list(np.delta.vertices()),
        "deltaStar": vertex_list(np.delta_star.vertices()),
        "parts": np.parts.iter().map(|p| vertex_list(p.vertices())).collect::<Vec<_>>(),
        "nablas": np.nablas.iter().map(|p| vertex_list(p.vertices())).collect::<Vec<_>>(),
        "phi": np.phi,
    })
}

fn poly(cmd: &PolyCmd, inputs: &mut Inputs) -> Result<(&'static str, Produced), Failure> {
    Ok(match cmd {
        PolyCmd::Info { file } => {
            let p = inputs.polytope(file)?;
            let facets: Vec<Value> = p
                .facets()
                .iter()
                .map(|f| json!({ "normal": int_vec(&f.normal), "offset": f.offset.to_string() }))
                .collect();
            let results = json!({
                "ambientDim": p.ambient_dim(),
                "dim": p.dim(),
                "vertices": vertex_list(p.vertices()),
                "facets": facets,
                "numPoints": p.num_points(),
                "numInteriorPoints": p.num_interior_points(),
                "reflexive": p.is_reflexive(),
            });
            ("poly info", Produced::Report(Output::new(results)))
        }
        PolyCmd::Dual { file } => {
            let p = inputs.polytope(file)?;
            let dual = p.polar_dual()?;
            match dual.polytope {
                Some(q) => ("poly dual", Produced::File(polytope_file(&q))),
                None => {
                    let vs: Vec<Value> = dual
                        .vertices
                        .iter()
                        .map(|v| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()))
                        .collect();
                    ("poly dual", Produced::Report(Output::new(json!({ "lattice": false, "vertices": vs }))))
                }
            }
        }
        PolyCmd::Points { file, interior } => {
            let p = inputs.polytope(file)?;
            let pts = if *interior { p.interior_lattice_points() } else { p.lattice_points() };
            let results = json!({ "interior": interior, "count": pts.len(), "points": vertex_list(&pts) });
            ("poly points", Produced::Report(Output::new(results)))
        }
    })
}

fn nef(cmd: &NefCmd, inputs: &mut Inputs) -> Result<(&'static str, Produced), Failure> {
    Ok(match cmd {
        NefCmd::Validate { file } => {
            let np = inputs.partition(file)?;
            ("nef validate", Produced::Report(Output::new(partition_json(&np))))
        }
        NefCmd::Dualize { file } => {
            let np = inputs.partition(file)?;
            let dual = np.dual()?;
            ("nef dualize", Produced::File(partition_file(&dual.parts)))
        }
        NefCmd::Enumerate { file, parts } => {
            let p = inputs.polytope(file)?;
            inputs.args(parts.to_string());
            let found = enumerate_partitions(&p, *parts)?;
            let list: Vec<Value> = found
                .iter()
                .map(|np| Value::Array(np.parts.iter().map(|q| vertex_list(q.vertices())).collect()))
                .collect();
            ("nef enumerate", Produced::Report(Output::new(json!({ "count": found.len(), "partitions": list }))))
        }
        NefCmd::Decompose { file } => {
            let np = inputs.partition(file)?;
            let report = decompose(&np)?;
            let comps: Vec<Value> = report
                .components
                .iter()
                .map(|c| {
                    json!({
                        "indices": c.indices,
                        "vertices": vertex_list(c.polytope.vertices()),
                        "latticeBasis": vertex_list(&c.lattice_basis.to_rows()),
                    })
                })
                .collect();
            let results = json!({
                "components": comps,
                "sublatticeIndex": report.sublattice_index.to_string(),
                "splitsOverZ": report.splits_over_z,
            });
            ("nef decompose", Produced::Report(Output::new(results)))
        }
    })
}

fn hodge(cmd: &HodgeCmd, inputs: &mut Inputs, strict: bool) -> Result<(&'static str, Produced), Failure> {
    Ok(match cmd {
        HodgeCmd::E { file } => {
            let np = inputs.partition(file)?;
            let e = e_polynomial(&np)?;
            let rows =
                e.coefficients.iter().enumerate().map(|(q, c)| (format!("h^{{0,{q}}}"), c.to_string())).collect();
            ("hodge e", Produced::Report(Output::with_rows(json!({ "coefficients": e.coefficients }), rows)))
        }
        HodgeCmd::Chi { file } => {
            let np = inputs.partition(file)?;
            let mode = if strict { VertexAssignmentMode::Strict } else { VertexAssignmentMode::Canonical };
            inputs.args(format!("strict={strict}"));
            let r = chi_omega1(&np, mode)?;
            let results = chi_json(&r);
            let mut rows = vec![("chi(Omega^1)".to_string(), r.chi_omega1.to_string())];
            for (name, t) in ["chiOd", "partSums", "vertexOutside", "vertexInside"].iter().zip(r.terms) {
                rows.push((name.to_string(), t.to_string()));
            }
            rows.push(("vertexAssignmentMode".into(), results["vertexAssignmentMode"].as_str().unwrap_or("").into()));
            ("hodge chi", Produced::Report(Output::with_rows(results, rows)))
        }
        HodgeCmd::H1q { file } => {
            let np = inputs.partition(file)?;
            let r = hodge_one_ample(&np)?;
            let mut rows = hodge_rows(&r.h_one_q);
            rows.push(("formula".into(), formula_name(r.formula).into()));
            ("hodge h1q", Produced::Report(Output::with_rows(hodge_json(&r), rows)))
        }
        HodgeCmd::Hypersurface { file } => {
            let p = inputs.polytope(file)?;
            let r = hodge_one_hypersurface(&p)?;
            let mut rows = hodge_rows(&r.h_one_q);
            rows.push(("formula".into(), formula_name(r.formula).into()));
            ("hodge hypersurface", Produced::Report(Output::with_rows(hodge_json(&r), rows)))
        }
        HodgeCmd::Pd { degrees } => {
            inputs.args(format!("{degrees:?}"));
            let (v, w) = pd_mirror_hodge(degrees)?;
            let mut rows: Vec<(String, String)> =
                hodge_rows(&v.h_one_q).into_iter().map(|(k, x)| (format!("V {k}"), x)).collect();
            rows.extend(hodge_rows(&w.h_one_q).into_iter().map(|(k, x)| (format!("W {k}"), x)));
            let results = json!({ "degrees": degrees, "vReport": hodge_json(&v), "wReport": hodge_json(&w) });
            ("hodge pd", Produced::Report(Output::with_rows(results, rows)))
        }
    })
}

fn gen(cmd: &GenCmd, inputs: &mut Inputs) -> Result<(&'static str, Produced), Failure> {
    let (name, parts) = match cmd {
        GenCmd::Pd { degrees } => ("gen pd", pd_partition(degrees)?),
        GenCmd::Product { files } => {
            let factors = files.iter().map(|f| inputs.polytope(f)).collect::<Result<Vec<_>, _>>()?;
            ("gen product", product(&factors)?)
        }
        GenCmd::Diamond => ("gen diamond", diamond_split()),
        GenCmd::Halflattice => ("gen halflattice", half_lattice_example()),
    };
    // generators are deterministic and the diamond split is intentionally not nef
    let parts = match validate(&parts) {
        Ok(np) => np.parts,
        Err(_) => parts,
    };
    Ok((name, Produced::File(partition_file(&parts))))
}

fn verify(cmd: &VerifyCmd, inputs: &mut Inputs) -> Result<(&'static str, Produced), Failure> {
    let VerifyCmd::All { file } = cmd;
    let np = inputs.partition(file)?;
    let suites = verify_all(&np)?;
    let all = suites.iter().all(|s| s.passed);
    let list: Vec<Value> =
        suites.iter().map(|s| json!({ "name": s.name, "passed": s.passed, "detail": s.detail })).collect();
    let mut rows: Vec<(String, String)> = suites
        .iter()
        .map(|s| (s.name.to_string(), format!("{} {}", if s.passed { "PASS" } else { "FAIL" }, s.detail)))
        .collect();
    rows.push(("all".into(), if all { "PASS".into() } else { "FAIL".into() }));
    Ok(("verify all", Produced::Report(Output::with_rows(json!({ "suites": list, "allPassed": all }), rows))))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("NEFHODGE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("NEFHODGE_THREADS: expected a positive integer, got \"{value}\"")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("NEFHODGE_THREADS: {e}")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let mut inputs = Inputs::new();
    let (command, produced) = match &cli.command {
        Command::Poly(c) => poly(c, &mut inputs)?,
        Command::Nef(c) => nef(c, &mut inputs)?,
        Command::Hodge(c) => hodge(c, &mut inputs, cli.strict_vertex_mode)?,
        Command::Gen(c) => gen(c, &mut inputs)?,
        Command::Verify(c) => verify(c, &mut inputs)?,
    };
    let passed = match &produced {
        Produced::Report(o) => o.results.get("allPassed").and_then(Value::as_bool).unwrap_or(true),
        Produced::File(_) => true,
    };
    let text = match (produced, cli.format) {
        (Produced::File(v), _) => to_canonical_string(&v),
        (Produced::Report(o), Format::Json) => render_json(command, &inputs.digest(), &o),
        (Produced::Report(o), Format::Table) => render_table(command, &o),
    };
    emit(&text, cli.out.as_deref())?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            let f = Failure::Verification("one or more identity suites failed".into());
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
