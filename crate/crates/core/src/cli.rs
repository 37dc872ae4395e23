//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification exceeds its tolerance, 2 on usage
//! errors and malformed input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::abelian::FiniteAbelianGroup;
use crate::error::Error;
use crate::hilbert::{self, CVector, HermitianOperator, TensorSpaceShape};
use crate::io::{self, GenerationMode, Instance, InputError, InstanceSpec};
use crate::separability::{
    self, PptOptions, SeparabilityStatus, SeparableDecomposition, DUAL_SIDE_TOLERANCE, SYNTHESIS_TOLERANCE,
};
use crate::spectral::{self, PairClass, SPECTRAL_TOLERANCE};
use crate::transform::{self, VectorMapping};

/// Tolerance of the intro-example identity.
pub const INTRO_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "sepconv", version, about = "Separable operators from tensor convolutions on finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build C_Φ = Σ_g w·P[(Φ^1 ⋆ ... ⋆ Φ^m)(g)] and print it as JSON.
    Construct(MappingSource),
    /// Build the same operator from the Fourier side, Σ_χ w'·P[⊗ F̂Φ^μ(χ)].
    Dual(MappingSource),
    /// Find mappings whose C_Φ equals a separable decomposition.
    Synthesize(SynthesizeArgs),
    /// Check an operator (PPT on every cut, optional certificate) or a set of mappings.
    Verify(VerifyArgs),
    /// Spectral checks for the Z_n construction or for a given mapping.
    Spectral(SpectralArgs),
    /// Compare both forms of the two-term Z_2 example.
    DemoIntro(DemoArgs),
    /// Random decomposition → synthesized mappings → C_Φ, and report the residual.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Args)]
struct MappingSource {
    /// JSON file holding an array of mappings ("-" for stdin).
    #[arg(long, conflicts_with_all = ["seed", "group", "dims"])]
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Group moduli, e.g. 2,3.
    #[arg(long, value_delimiter = ',')]
    group: Option<Vec<usize>>,
    /// Factor dimensions, e.g. 2,2.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Weight of each point of G.
    #[arg(long, default_value_t = 1.0)]
    weight: f64,
}

#[derive(Debug, Args)]
struct SynthesizeArgs {
    /// Decomposition JSON ("-" for stdin); a random one is drawn when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', required = true)]
    group: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Operator JSON to test.
    #[arg(long, conflicts_with = "mappings")]
    operator: Option<PathBuf>,
    /// Decomposition JSON used as a separability certificate for --operator.
    #[arg(long, requires = "operator")]
    decomposition: Option<PathBuf>,
    /// Mappings JSON: check the primal/dual equality and PPT of C_Φ.
    #[arg(long)]
    mappings: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    group: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Treat PPT as sufficient on 2x2 and 2x3 spaces.
    #[arg(long)]
    decisive: bool,
}

#[derive(Debug, Args)]
struct SpectralArgs {
    /// Mapping JSON to classify; otherwise the Z_n construction is built.
    #[arg(long, conflicts_with_all = ["n", "dims"])]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Draw coefficients at random instead of λ ≡ 1.
    #[arg(long)]
    random_lambdas: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// Entries as comma-separated numbers; `re:im` for complex ones.
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<String>,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    group: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Number of terms; defaults to (dim H)^2.
    #[arg(long)]
    terms: Option<usize>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(src) => construct(src, out, false),
        Command::Dual(src) => construct(src, out, true),
        Command::Synthesize(args) => synthesize(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Spectral(args) => spectral_cmd(args, out),
        Command::DemoIntro(args) => demo_intro(args, out),
        Command::Roundtrip(args) => roundtrip(args, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn load_mappings(
    input: Option<&PathBuf>,
    seed: Option<u64>,
    group: Option<&Vec<usize>>,
    dims: Option<&Vec<usize>>,
    weight: f64,
) -> std::result::Result<Vec<VectorMapping>, Failure> {
    if let Some(path) = input {
        return Ok(io::read_json(path)?);
    }
    let (Some(group), Some(dims)) = (group, dims) else {
        return Err(Failure::Usage("give --input, or --group and --dims (with an optional --seed)".into()));
    };
    let spec = InstanceSpec {
        primal_weight: weight,
        ..InstanceSpec::new(seed.unwrap_or(0), group, dims, GenerationMode::RandomMapping)
    };
    match io::generate(&spec)? {
        Instance::Mappings(m) => Ok(m),
        _ => unreachable!("random_mapping mode yields mappings"),
    }
}

fn construct(src: MappingSource, out: &mut dyn Write, dual: bool) -> CliResult {
    let phis = load_mappings(src.input.as_ref(), src.seed, src.group.as_ref(), src.dims.as_ref(), src.weight)?;
    let op = if dual {
        separability::operator_dual_side(&phis)?
    } else {
        separability::operator_from_mappings(&phis)?
    };
    emit(out, &op)
}

fn synthesize(args: SynthesizeArgs, out: &mut dyn Write) -> CliResult {
    let group = FiniteAbelianGroup::new(&args.group)?;
    let d: SeparableDecomposition = match &args.input {
        Some(path) => io::read_json(path)?,
        None => {
            let dims = args.dims.ok_or_else(|| Failure::Usage("give --input or --dims".into()))?;
            let shape = TensorSpaceShape::new(&dims)?;
            let terms = args.terms.unwrap_or_else(|| separability::caratheodory_bound(&shape));
            io::random_decomposition(&mut io::rng_from_seed(args.seed), &shape, terms)?
        }
    };
    let phis = separability::synthesize_mappings(&d, &group)?;
    emit(out, &phis)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let options = PptOptions { decisive: args.decisive };
    if let Some(path) = &args.operator {
        let op: HermitianOperator = io::read_json(path)?;
        if op.dims().len() < 2 {
            return Err(Failure::Usage("the operator needs at least two tensor factors".into()));
        }
        let ppt = match separability::ppt_check_all(&op, options) {
            Err(Error::NotPositiveSemidefinite { min_eigenvalue }) => {
                emit(out, &json!({ "psd": false, "min_eigenvalue": min_eigenvalue, "tolerance": op.psd_threshold() }))?;
                return Err(Failure::Verification(format!(
                    "operator is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})"
                )));
            }
            other => other?,
        };
        let certificate = match &args.decomposition {
            Some(path) => {
                let d: SeparableDecomposition = io::read_json(path)?;
                Some(separability::certify_with_decomposition(&op, &d, SYNTHESIS_TOLERANCE)?)
            }
            None => None,
        };
        emit(out, &json!({ "psd": true, "ppt": ppt, "certificate": certificate }))?;
        if let Some(c) = certificate {
            if c.status != SeparabilityStatus::SeparableCertified {
                return Err(Failure::Verification("decomposition does not reproduce the operator".into()));
            }
        }
        return Ok(());
    }

    let phis = load_mappings(args.mappings.as_ref(), args.seed, args.group.as_ref(), args.dims.as_ref(), 1.0)?;
    let primal = separability::operator_from_mappings(&phis)?;
    let dual = separability::operator_dual_side(&phis)?;
    let residual = primal.relative_diff(&dual)?;
    let ppt = separability::ppt_check_all(&primal, options)?;
    let entangled = ppt.iter().any(|v| v.status == SeparabilityStatus::EntangledPpt);
    emit(
        out,
        &json!({
            "dual_side_residual": residual,
            "tolerance": DUAL_SIDE_TOLERANCE,
            "ppt": ppt,
        }),
    )?;
    if residual > DUAL_SIDE_TOLERANCE {
        return Err(Failure::Verification(format!("primal/dual residual {residual:e} > {DUAL_SIDE_TOLERANCE:e}")));
    }
    if entangled {
        return Err(Failure::Verification("C_Φ failed the PPT test".into()));
    }
    Ok(())
}

fn print_table(out: &mut dyn Write, verdict: &spectral::SpectralVerdict) -> std::io::Result<()> {
    writeln!(out, "pairwise classification (row g, column h):")?;
    for (g, row) in verdict.pairwise.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                PairClass::Orthogonal => "orth".to_string(),
                PairClass::RealProportional { lambda } => format!("prop({lambda:.6})"),
                PairClass::Neither => "neither".to_string(),
            })
            .collect();
        writeln!(out, "  {g:>3}: {}", cells.join("  "))?;
    }
    writeln!(out, "spectral: {}", verdict.is_spectral)?;
    if !verdict.phase_proportional.is_empty() {
        writeln!(
            out,
            "note: pairs {:?} are proportional by a non-real factor; they count as neither",
            verdict.phase_proportional
        )?;
    }
    Ok(())
}

fn spectral_cmd(args: SpectralArgs, out: &mut dyn Write) -> CliResult {
    let io_err = |e: std::io::Error| Failure::Usage(e.to_string());
    if let Some(path) = &args.input {
        let m: VectorMapping = io::read_json(path)?;
        let verdict = spectral::gram_spectral_condition(&m);
        print_table(out, &verdict).map_err(io_err)?;
        writeln!(out, "tolerance: {SPECTRAL_TOLERANCE:e}").map_err(io_err)?;
        return Ok(());
    }
    let dims = args.dims.unwrap_or_else(|| vec![args.n, args.n]);
    let lambdas: Vec<Vec<Complex64>> = if args.random_lambdas {
        let mut rng = io::rng_from_seed(args.seed);
        dims.iter().map(|_| (0..args.n).map(|_| io::random_complex(&mut rng)).collect()).collect()
    } else {
        vec![vec![Complex64::new(1.0, 0.0); args.n]; dims.len()]
    };
    let system = spectral::zn_construct_standard(args.n, &dims, lambdas.clone())?;
    let verdict = spectral::gram_spectral_condition(&system.mapping);
    print_table(out, &verdict).map_err(io_err)?;

    let report = spectral::zn_orthogonality_check(&system.mapping, &lambdas)?;
    writeln!(out, "gram diagonal: {:?}", report.gram.iter().enumerate().map(|(g, r)| r[g][0]).collect::<Vec<_>>())
        .map_err(io_err)?;
    writeln!(out, "predicted diagonal (|λ|² convolution): {:?}", report.predicted_diagonal).map_err(io_err)?;
    writeln!(out, "orthogonality residual: {:e} (tolerance {SPECTRAL_TOLERANCE:e})", report.max_residual)
        .map_err(io_err)?;
    writeln!(
        out,
        "product of sums Π_μ Σ|λ^μ|²: {} (trace of the Gram matrix; residual against product·I {:e})",
        report.product_of_sums, report.product_residual
    )
    .map_err(io_err)?;

    let mut failed = !report.holds;
    if !args.random_lambdas && dims.len() >= 2 {
        let mut worst = 0.0f64;
        for g in 0..args.n {
            for (_, d) in spectral::homothety_check(&system, g)? {
                worst = worst.max(d);
            }
        }
        writeln!(
            out,
            "homothety deviation: {worst:e} (expected n^(m-2) = {} on each factor, tolerance {SPECTRAL_TOLERANCE:e})",
            (args.n as f64).powi(dims.len() as i32 - 2)
        )
        .map_err(io_err)?;
        failed |= worst > SPECTRAL_TOLERANCE;
    }
    match spectral::projector_property_check(&system.mapping) {
        Ok(r) => writeln!(out, "projector property: c = {}, residual {:e}", r.constant, r.residual).map_err(io_err)?,
        Err(e) => writeln!(out, "projector property: not applicable ({e})").map_err(io_err)?,
    }
    if failed {
        return Err(Failure::Verification("spectral checks exceeded tolerance".into()));
    }
    Ok(())
}

fn parse_vector(text: &str) -> std::result::Result<CVector, Failure> {
    let entries = text
        .split(',')
        .map(|item| {
            let item = item.trim();
            let (re, im) = item.split_once(':').unwrap_or((item, "0"));
            match (re.parse::<f64>(), im.parse::<f64>()) {
                (Ok(re), Ok(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Failure::Usage(format!("cannot parse vector entry '{item}'"))),
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(CVector::new(entries))
}

fn matrix_lines(op: &HermitianOperator) -> Vec<String> {
    (0..op.dim())
        .map(|i| {
            (0..op.dim())
                .map(|j| {
                    let z = op.get(i, j);
                    format!("{:>9.4}{:+.4}i", z.re, z.im)
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn demo_intro(args: DemoArgs, out: &mut dyn Write) -> CliResult {
    let pick = |arg: &Option<String>, default: CVector| -> std::result::Result<CVector, Failure> {
        arg.as_deref().map(parse_vector).unwrap_or(Ok(default))
    };
    let v0 = pick(&args.v0, CVector::basis(2, 0))?;
    let v1 = pick(&args.v1, CVector::basis(2, 1))?;
    let w0 = pick(&args.w0, CVector::basis(2, 0))?;
    let w1 = pick(&args.w1, CVector::basis(2, 1))?;
    if v0.dim() != v1.dim() || w0.dim() != w1.dim() {
        return Err(Failure::Usage("v0, v1 and w0, w1 must have matching dimensions".into()));
    }
    let group = FiniteAbelianGroup::cyclic(2)?;
    let phis = vec![
        VectorMapping::new(group.clone(), vec![v0.clone(), v1.clone()])?,
        VectorMapping::new(group, vec![w0.clone(), w1.clone()])?,
    ];
    let conv = transform::tensor_convolve(&phis)?;
    let convolution_form = separability::operator_from_mappings(&phis)?;
    let plus = hilbert::tensor(&[v0.add(&v1)?, w0.add(&w1)?])?;
    let minus = hilbert::tensor(&[v0.sub(&v1)?, w0.sub(&w1)?])?;
    let separable_form = hilbert::projector(&plus).scaled(0.5).add(&hilbert::projector(&minus).scaled(0.5))?;
    let diff = convolution_form.max_diff(&separable_form)?;

    let io_err = |e: std::io::Error| Failure::Usage(e.to_string());
    writeln!(out, "P[v0⊗w0 + v1⊗w1] + P[v0⊗w1 + v1⊗w0]:").map_err(io_err)?;
    for line in matrix_lines(&convolution_form) {
        writeln!(out, "  {line}").map_err(io_err)?;
    }
    writeln!(out, "1/2 P[(v0+v1)⊗(w0+w1)] + 1/2 P[(v0-v1)⊗(w0-w1)]:").map_err(io_err)?;
    for line in matrix_lines(&separable_form) {
        writeln!(out, "  {line}").map_err(io_err)?;
    }
    let orthogonal = hilbert::inner(conv.value(0), conv.value(1))?;
    writeln!(out, "⟨conv(0), conv(1)⟩ = {}{:+}i", orthogonal.re, orthogonal.im).map_err(io_err)?;
    writeln!(out, "max-norm difference: {diff:e} (tolerance {INTRO_TOLERANCE:e})").map_err(io_err)?;
    if diff > INTRO_TOLERANCE {
        return Err(Failure::Verification(format!("difference {diff:e} exceeds {INTRO_TOLERANCE:e}")));
    }
    Ok(())
}

fn roundtrip(args: RoundtripArgs, out: &mut dyn Write) -> CliResult {
    let group = FiniteAbelianGroup::new(&args.group)?;
    let shape = TensorSpaceShape::new(&args.dims)?;
    let terms = args.terms.unwrap_or_else(|| separability::caratheodory_bound(&shape));
    let d = io::random_decomposition(&mut io::rng_from_seed(args.seed), &shape, terms)?;
    let phis = separability::synthesize_mappings(&d, &group)?;
    let target = separability::operator_from_decomposition(&d)?;
    let rebuilt = separability::operator_from_mappings(&phis)?;
    let residual = rebuilt.relative_diff(&target)?;
    emit(
        out,
        &json!({
            "seed": args.seed,
            "group": group.moduli(),
            "dims": shape.dims(),
            "terms": terms,
            "relative_residual": residual,
            "tolerance": SYNTHESIS_TOLERANCE,
        }),
    )?;
    if residual > SYNTHESIS_TOLERANCE {
        return Err(Failure::Verification(format!("residual {residual:e} > {SYNTHESIS_TOLERANCE:e}")));
    }
    Ok(())
}
