//! Command-line front end.
//!
//! Tuples come from `--fixture NAME` or `--input FILE` (a JSON tuple file).
//! When a fixture supplies the tuple, `--input` names the vector file;
//! otherwise the vector is read from `--vector`. Exit codes: 0 success,
//! 1 usage or numerical failure, 2 unmet hypothesis, 3 a verdict
//! contradicting a rigidity statement whose hypotheses were verified.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fixtures::FixtureName;
use crate::fock::{stabilization_index, truncated_multiplier_norms, Polynomial};
use crate::ideals::{annihilator, model_space, model_tuple, omega_e, quotient_algebra, AnnihilatorBasis};
use crate::linalg::{c64, ComplexMatrix, ComplexVector, ToleranceConfig};
use crate::random::{random_coinvariant, random_proper_invariant};
use crate::subspaces::{
    check_idempotent, decomposition_exists, decomposition_find, rigidity_coinvariant_check,
    rigidity_invariant_check, splitting_construct, SubspaceBasis, Verdict,
};
use crate::sweep::{parse_suites, run_suite};
use crate::tuples::{nilpotency_index, validate, RowTuple};
use crate::vectors::{
    fock_intertwiner, fock_residual, gram_operator, is_cyclic, is_separating, krylov, multiplicity,
    quasiaffine_witness, random_vector, separating_greedy_with, separating_witness, Sampler,
};

#[derive(Parser, Debug)]
#[command(name = "rowcontract", version, about = "Analysis of commuting row contractions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Tuple file, or the vector file when --fixture is given.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Named fixture, e.g. maxcount, fromgriff:3, rectangle:2,3, jordan:4.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Vector file when the tuple comes from --input.
    #[arg(long, global = true)]
    pub vector: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative rank and PSD tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Degree bound or truncation degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Replace the tuple by its adjoint.
    #[arg(long, global = true)]
    pub adjoint: bool,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Commutativity, row contraction, purity, nilpotency and defect.
    Check,
    /// Annihilator basis, quotient dimension and socle exponents.
    Ann,
    /// Model space and model tuple of the annihilator or of given generators.
    Model {
        /// Generators separated by `;`, e.g. "x1^2; x1*x2; x2^2".
        #[arg(long)]
        generators: Option<String>,
        /// Print the model matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Cyclicity of a vector and the multiplicity of the tuple.
    Cyclic,
    /// Separation verdict and witness for a vector, plus a greedy separating set.
    Separating {
        #[arg(long, value_enum, default_value_t = SamplerArg::Gaussian)]
        sampler: SamplerArg,
    },
    /// Gram operator of a vector's orbit.
    Gram,
    /// Invertible intertwiner from the model tuple.
    Transform,
    /// Rigidity verdict for a pair of subspaces.
    Rigidity {
        #[arg(long, value_enum, default_value_t = Kind::Invariant)]
        kind: Kind,
        /// Spanning columns of M (JSON matrix); random when omitted.
        #[arg(long)]
        m: Option<PathBuf>,
        /// Spanning columns of N (JSON matrix); the whole space when omitted.
        #[arg(long)]
        n: Option<PathBuf>,
    },
    /// Invariant decomposition certificate.
    Decompose {
        /// Also search for a summand on which the tuple is cyclic.
        #[arg(long)]
        cyclic: bool,
    },
    /// Invariant complement of an invariant subspace.
    Split {
        #[arg(long)]
        m: PathBuf,
    },
    /// Truncated multiplier norms of a polynomial.
    Fock {
        #[arg(long)]
        poly: String,
        /// Also build the Fock intertwiner of the vector for the tuple.
        #[arg(long)]
        intertwiner: bool,
    },
    /// List fixtures, or write one to a tuple file.
    Fixtures {
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Run seeded property suites.
    Sweep {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SamplerArg {
    Gaussian,
    Basis,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Invariant,
    Coinvariant,
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Report printed by every command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: Value,
    pub warnings: Vec<String>,
    pub wall_time_seconds: f64,
}

struct Outcome {
    results: Value,
    warnings: Vec<String>,
    exit: i32,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome { results, warnings: Vec::new(), exit: EXIT_OK }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_FAILURE,
            };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let mut ctx = Context { cli: &cli, digest: Sha256::new() };
    match ctx.execute() {
        Ok(o) => {
            let report = Report {
                command,
                input_digest: hex(&ctx.digest.finalize()),
                results: o.results,
                warnings: o.warnings,
                wall_time_seconds: start.elapsed().as_secs_f64(),
            };
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes")
            } else {
                human(&report)
            };
            let _ = writeln!(out, "{text}");
            o.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_hypothesis() {
                EXIT_HYPOTHESIS
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

struct Context<'a> {
    cli: &'a Cli,
    digest: Sha256,
}

impl Context<'_> {
    fn tol(&self) -> Result<ToleranceConfig> {
        let t = match self.cli.tol {
            Some(v) => ToleranceConfig::uniform(v),
            None => ToleranceConfig::default(),
        };
        t.validate()?;
        Ok(t)
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn tuple(&mut self) -> Result<RowTuple> {
        let t = match (&self.cli.fixture, &self.cli.input) {
            (Some(name), _) => {
                self.digest.update(name.as_bytes());
                name.parse::<FixtureName>()?.build()?
            }
            (None, Some(path)) => {
                let text = self.read(path)?;
                parse_tuple_file(&text)?
            }
            (None, None) => {
                return Err(Error::InvalidParameter("give --fixture NAME or --input FILE".into()))
            }
        };
        Ok(if self.cli.adjoint { t.adjoint() } else { t })
    }

    fn vector_path(&self) -> Option<&PathBuf> {
        if self.cli.fixture.is_some() {
            self.cli.input.as_ref().or(self.cli.vector.as_ref())
        } else {
            self.cli.vector.as_ref()
        }
    }

    /// The vector from file, or a seeded random vector with a warning.
    fn vector(&mut self, n: usize, warnings: &mut Vec<String>) -> Result<ComplexVector> {
        match self.vector_path().cloned() {
            Some(path) => {
                let text = self.read(&path)?;
                let v = parse_vector(&text)?;
                if v.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "vector: expected {n} entries, found {}",
                        v.len()
                    )));
                }
                Ok(v)
            }
            None => {
                warnings.push(format!("no vector given; using a random vector from seed {}", self.cli.seed));
                Ok(random_vector(self.cli.seed, n))
            }
        }
    }

    fn subspace(&mut self, path: &Path, n: usize, tol: &ToleranceConfig) -> Result<SubspaceBasis> {
        let text = self.read(path)?;
        let m = parse_matrix(&serde_json::from_str(&text).map_err(|e| Error::Parse(format!("subspace: {e}")))?, "subspace")?;
        if m.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "subspace: columns have {} entries, the tuple acts on C^{n}",
                m.nrows()
            )));
        }
        Ok(SubspaceBasis::span(&m, tol))
    }

    fn execute(&mut self) -> Result<Outcome> {
        let tol = self.tol()?;
        let cli = self.cli;
        match &cli.command {
            Command::Check => {
                let t = self.tuple()?;
                let r = validate(&t, &tol)?;
                let mut results = serde_json::to_value(&r).expect("serializes");
                results["d"] = json!(t.d());
                results["dim"] = json!(t.dim());
                results["row_square"] = matrix_json(&r.row_square);
                Ok(Outcome::ok(results))
            }
            Command::Ann => {
                let t = self.tuple()?;
                let ann = annihilator(&t, &tol)?;
                Ok(Outcome::ok(annihilator_json(&ann, Some(&t), &tol)?))
            }
            Command::Model { generators, matrices } => {
                let ann = match generators {
                    Some(g) => {
                        self.digest.update(g.as_bytes());
                        let parts: Vec<&str> = g.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
                        let d = parts
                            .iter()
                            .map(|p| Polynomial::parse(p, None).map(|q| q.d()))
                            .collect::<Result<Vec<_>>>()?
                            .into_iter()
                            .max()
                            .unwrap_or(1);
                        let gens = parts
                            .iter()
                            .map(|p| Polynomial::parse(p, Some(d)))
                            .collect::<Result<Vec<_>>>()?;
                        AnnihilatorBasis::from_generators(d, &gens, cli.degree, &tol)?
                    }
                    None => annihilator(&self.tuple()?, &tol)?,
                };
                let space = model_space(&ann, None, &tol)?;
                let model = model_tuple(&space)?;
                let basis: Vec<String> = space.basis_polynomials()?.iter().map(|p| p.to_string()).collect();
                let mut results = json!({
                    "d": ann.d(),
                    "degree_bound": ann.degree_bound(),
                    "model_dim": space.dim(),
                    "basis": basis,
                });
                if *matrices || cli.json {
                    results["matrices"] = tuple_json(&model);
                }
                Ok(Outcome::ok(results))
            }
            Command::Cyclic => {
                let t = self.tuple()?;
                let mut warnings = Vec::new();
                let v = self.vector(t.dim(), &mut warnings)?;
                let k = krylov(&t, &v, &tol)?;
                let mult = multiplicity(&t, &tol).ok();
                Ok(Outcome {
                    results: json!({
                        "cyclic": is_cyclic(&t, &v, &tol)?,
                        "krylov_dim": k.dim(),
                        "dim": t.dim(),
                        "multiplicity": mult,
                    }),
                    warnings,
                    exit: EXIT_OK,
                })
            }
            Command::Separating { sampler } => {
                let t = self.tuple()?;
                let mut warnings = Vec::new();
                let mut results = json!({});
                if self.vector_path().is_some() {
                    let v = self.vector(t.dim(), &mut warnings)?;
                    results["separating"] = json!(is_separating(&t, &v, &tol)?);
                    let w = separating_witness(&t, &v, &tol)?;
                    results["witness"] = json!(w.as_ref().map(display_polynomial));
                }
                let s = match sampler {
                    SamplerArg::Gaussian => Sampler::Gaussian { seed: cli.seed },
                    SamplerArg::Basis => Sampler::StandardBasis,
                };
                let run = separating_greedy_with(&t, s, &tol)?;
                results["delta"] = json!(run.delta);
                results["greedy_set"] = Value::Array(run.vectors.iter().map(vector_json).collect());
                results["greedy_size"] = json!(run.vectors.len());
                results["kernel_dims"] = json!(run.kernel_dims);
                Ok(Outcome { results, warnings, exit: EXIT_OK })
            }
            Command::Gram => {
                let t = self.tuple()?;
                let mut warnings = Vec::new();
                let v = self.vector(t.dim(), &mut warnings)?;
                let g = gram_operator(&t, &v, &tol)?;
                let mut results = serde_json::to_value(&g).expect("serializes");
                results["gram"] = matrix_json(&g.gram);
                Ok(Outcome { results, warnings, exit: EXIT_OK })
            }
            Command::Transform => {
                let t = self.tuple()?;
                let w = quasiaffine_witness(&t, cli.seed, &tol)?;
                Ok(Outcome::ok(json!({
                    "model_dim": w.model.dim(),
                    "residual": w.residual,
                    "inverse_condition": w.inverse_condition,
                    "annihilator_generators": w.annihilator.generators(&tol).iter().map(display_polynomial).collect::<Vec<_>>(),
                    "x": matrix_json(&w.x),
                })))
            }
            Command::Rigidity { kind, m, n } => {
                let t = self.tuple()?;
                let dim = t.dim();
                let mut warnings = Vec::new();
                let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(cli.seed);
                let ms = match m {
                    Some(p) => self.subspace(p, dim, &tol)?,
                    None => {
                        warnings.push("no M given; drawing a random one".into());
                        match kind {
                            Kind::Invariant => random_proper_invariant(&mut rng, &t, &tol)?,
                            Kind::Coinvariant => random_coinvariant(&mut rng, &t, &tol)?,
                        }
                    }
                };
                let ns = match n {
                    Some(p) => self.subspace(p, dim, &tol)?,
                    None => SubspaceBasis::full(dim),
                };
                let r = match kind {
                    Kind::Invariant => rigidity_invariant_check(&t, &ms, &ns, &tol)?,
                    Kind::Coinvariant => rigidity_coinvariant_check(&t, &ms, &ns, &tol)?,
                };
                let exit = match r.verdict {
                    Verdict::Consistent => EXIT_OK,
                    Verdict::Inapplicable => EXIT_HYPOTHESIS,
                    Verdict::TheoremViolation => EXIT_VIOLATION,
                };
                let mut results = serde_json::to_value(&r).expect("serializes");
                results["m_dim"] = json!(ms.dim());
                results["n_dim"] = json!(ns.dim());
                Ok(Outcome { results, warnings, exit })
            }
            Command::Decompose { cyclic } => {
                let t = self.tuple()?;
                let r = decomposition_exists(&t, cli.seed, &tol)?;
                let mut results = json!({
                    "exists": r.exists,
                    "commutant_dim": r.commutant_dim,
                    "radical_dim": r.radical_dim,
                });
                if let Some(e) = &r.certificate {
                    results["certificate"] = matrix_json(e);
                    results["certificate_check"] = serde_json::to_value(check_idempotent(e, &t, &tol)).expect("serializes");
                }
                if *cyclic {
                    let found = decomposition_find(&t, true, cli.seed, &tol)?;
                    results["cyclic_summand"] = match found {
                        Some((m, n)) => json!({"m": matrix_json(m.frame()), "n": matrix_json(n.frame())}),
                        None => Value::Null,
                    };
                }
                Ok(Outcome::ok(results))
            }
            Command::Split { m } => {
                let t = self.tuple()?;
                let ms = self.subspace(m, t.dim(), &tol)?;
                let s = splitting_construct(&t, &ms, cli.seed, &tol)?;
                Ok(Outcome::ok(json!({
                    "degenerate": s.degenerate,
                    "n_dim": s.n.dim(),
                    "n": matrix_json(s.n.frame()),
                    "xi": vector_json(&s.xi),
                    "min_singular_value": s.min_singular_value,
                    "joint_rank": s.joint_rank,
                })))
            }
            Command::Fock { poly, intertwiner } => {
                self.digest.update(poly.as_bytes());
                let p = Polynomial::parse(poly, None)?;
                let n = cli.degree.unwrap_or(12);
                let norms = truncated_multiplier_norms(&p, n)?;
                let mut results = json!({
                    "polynomial": p.to_string(),
                    "norms": norms,
                    "stabilized_at": stabilization_index(&norms, 1e-6),
                });
                if *intertwiner {
                    let t = self.tuple()?;
                    let mut warnings = Vec::new();
                    let v = self.vector(t.dim(), &mut warnings)?;
                    let cap = nilpotency_index(&t, None, &tol)?.ok_or(Error::NotNilpotent { cap: t.dim() + 1 })?.max(n);
                    let x = fock_intertwiner(&t, &v, cap, &tol)?;
                    results["intertwiner_residual"] = json!(fock_residual(&t, &x, cap)?);
                    results["intertwiner_norm"] = json!(crate::linalg::operator_norm(&x));
                    return Ok(Outcome { results, warnings, exit: EXIT_OK });
                }
                Ok(Outcome::ok(results))
            }
            Command::Fixtures { write } => {
                let list: Vec<Value> = FixtureName::catalogue()
                    .into_iter()
                    .map(|(n, d)| json!({"name": n, "description": d}))
                    .collect();
                let mut results = json!({ "fixtures": list });
                if let Some(path) = write {
                    let t = self.tuple()?;
                    std::fs::write(path, write_tuple_file(&t))
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    results["written"] = json!(path.display().to_string());
                }
                Ok(Outcome::ok(results))
            }
            Command::Sweep { suite, count } => {
                let suites = parse_suites(suite)?;
                let summaries: Vec<_> = suites.into_iter().map(|s| run_suite(s, cli.seed, *count, &tol)).collect();
                let exit = if summaries.iter().any(|s| s.violations > 0) {
                    EXIT_VIOLATION
                } else if summaries.iter().any(|s| s.failed > 0) {
                    EXIT_FAILURE
                } else if summaries.iter().any(|s| s.inapplicable > 0) {
                    EXIT_HYPOTHESIS
                } else {
                    EXIT_OK
                };
                let mut results = json!({ "suites": summaries });
                results["all_passed"] = json!(exit == EXIT_OK);
                Ok(Outcome { results, warnings: Vec::new(), exit })
            }
        }
    }
}

fn annihilator_json(ann: &AnnihilatorBasis, t: Option<&RowTuple>, tol: &ToleranceConfig) -> Result<Value> {
    let q = quotient_algebra(ann, tol)?;
    let mut v = json!({
        "d": ann.d(),
        "degree_bound": ann.degree_bound(),
        "dimension": ann.dim(),
        "basis": ann.echelon_basis().iter().map(display_polynomial).collect::<Vec<_>>(),
        "generators": ann.generators(tol).iter().map(display_polynomial).collect::<Vec<_>>(),
        "quotient_basis": q.monomial_basis().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "delta": q.dim(),
    });
    if let Some(t) = t {
        v["omega_e"] = json!(omega_e(t, tol)?.iter().map(|a| a.to_string()).collect::<Vec<_>>());
    }
    Ok(v)
}

/// Rescales by the least positive integer `k <= 1000` that makes every
/// coefficient an integer within `1e-9`; otherwise returns `p` unchanged.
pub fn clear_denominators(p: &Polynomial) -> Polynomial {
    let near = |x: f64| (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0);
    (1..=1000)
        .find(|&k| {
            let k = k as f64;
            p.terms().all(|(_, c)| near(c.re * k) && near(c.im * k))
        })
        .map(|k| {
            let mut q = Polynomial::zero(p.d());
            for (a, c) in p.terms() {
                let s = *c * k as f64;
                q.add_term(a.clone(), c64(s.re.round(), s.im.round()));
            }
            q
        })
        .unwrap_or_else(|| p.clone())
}

fn display_polynomial(p: &Polynomial) -> String {
    clear_denominators(p).to_string()
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Entries as `[re, im]` pairs.
pub fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn vector_json(v: &ComplexVector) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn tuple_json(t: &RowTuple) -> Value {
    Value::Array(t.mats().iter().map(matrix_json).collect())
}

/// Tuple file text with every float written to 17 significant digits.
pub fn write_tuple_file(t: &RowTuple) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{{");
    let _ = writeln!(s, "  \"d\": {},", t.d());
    let _ = writeln!(s, "  \"dim\": {},", t.dim());
    let _ = writeln!(s, "  \"matrices\": [");
    for (k, m) in t.mats().iter().enumerate() {
        let _ = writeln!(s, "    [");
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols())
                .map(|j| format!("[{}, {}]", fmt_f64(m[(i, j)].re), fmt_f64(m[(i, j)].im)))
                .collect();
            let sep = if i + 1 < m.nrows() { "," } else { "" };
            let _ = writeln!(s, "      [{}]{sep}", row.join(", "));
        }
        let sep = if k + 1 < t.d() { "," } else { "" };
        let _ = writeln!(s, "    ]{sep}");
    }
    let _ = writeln!(s, "  ]");
    let _ = writeln!(s, "}}");
    s
}

fn parse_entry(v: &Value, field: &str) -> Result<Complex64> {
    let z = match v {
        Value::Number(n) => c64(n.as_f64().unwrap_or(f64::NAN), 0.0),
        Value::Array(pair) if pair.len() == 2 => match (pair[0].as_f64(), pair[1].as_f64()) {
            (Some(re), Some(im)) => c64(re, im),
            _ => return Err(Error::Parse(format!("{field}: expected [re, im] numbers"))),
        },
        _ => return Err(Error::Parse(format!("{field}: expected a number or [re, im]"))),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Parse(format!("{field}: entry is not finite")));
    }
    Ok(z)
}

fn parse_matrix(v: &Value, field: &str) -> Result<ComplexMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{field}: expected an array of rows")))?;
    let ncols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut m = ComplexMatrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{field}[{i}]: expected an array")))?;
        if row.len() != ncols {
            return Err(Error::Parse(format!(
                "{field}[{i}]: expected {ncols} entries, found {}",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = parse_entry(e, &format!("{field}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

/// Reads `{"d": .., "dim": .., "matrices": [...]}`.
pub fn parse_tuple_file(text: &str) -> Result<RowTuple> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("tuple file: {e}")))?;
    let count = |key: &str| -> Result<usize> {
        v.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("{key}: missing or not a non-negative integer")))
    };
    let d = count("d")?;
    let dim = count("dim")?;
    let mats = v
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrices: missing or not an array".into()))?;
    if mats.len() != d {
        return Err(Error::Parse(format!("matrices: expected {d} matrices, found {}", mats.len())));
    }
    let parsed = mats
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let field = format!("matrices[{k}]");
            let a = parse_matrix(m, &field)?;
            if a.nrows() != dim || a.ncols() != dim {
                return Err(Error::Parse(format!(
                    "{field}: expected {dim}x{dim}, found {}x{}",
                    a.nrows(),
                    a.ncols()
                )));
            }
            Ok(a)
        })
        .collect::<Result<Vec<_>>>()?;
    RowTuple::new(parsed)
}

/// Reads a vector: a JSON array of numbers or `[re, im]` pairs, optionally
/// wrapped as `{"vector": [...]}`.
pub fn parse_vector(text: &str) -> Result<ComplexVector> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector file: {e}")))?;
    let arr = v
        .get("vector")
        .unwrap_or(&v)
        .as_array()
        .ok_or_else(|| Error::Parse("vector: expected an array".into()))?;
    let entries = arr
        .iter()
        .enumerate()
        .map(|(i, e)| parse_entry(e, &format!("vector[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexVector::from_vec(entries))
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}

fn human(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", r.command.join(" "));
    let _ = writeln!(s, "input_digest: {}", r.input_digest);
    flatten("", &r.results, &mut s);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = write!(s, "wall_time_seconds: {:.3}", r.wall_time_seconds);
    s
}
