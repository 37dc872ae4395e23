//! Deterministic instance generation and JSON file helpers.
//!
//! Random instances use `ChaCha8Rng::seed_from_u64(seed)`. Every complex number is
//! drawn as a real part followed by an imaginary part, each uniform on `[-1, 1)`.
//! Decomposition weights are uniform on `(0, 1]`. Values are drawn in a fixed order
//! (mapping by mapping, element rank ascending, coordinate ascending), so an `InstanceSpec`
//! always produces the same bits.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, MeasurePair};
use crate::error::{Error, Result};
use crate::hilbert::{CVector, TensorSpaceShape};
use crate::separability::{caratheodory_bound, DecompositionTerm, SeparableDecomposition};
use crate::spectral::{self, ZnSpectralSystem};
use crate::transform::VectorMapping;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationMode {
    RandomMapping,
    RandomDecomposition,
    IntroExample,
    ZnSpectral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub moduli: Vec<usize>,
    /// Factor dimensions; the number of factors `m` is `dims.len()`.
    pub dims: Vec<usize>,
    pub mode: GenerationMode,
    /// Number of decomposition terms; defaults to the Carathéodory bound.
    #[serde(default)]
    pub terms: Option<usize>,
    /// `[v0, v1, w0, w1]` for the intro example; drawn from the seed when absent.
    #[serde(default)]
    pub intro_vectors: Option<Vec<CVector>>,
    #[serde(default = "unit_weight")]
    pub primal_weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

impl InstanceSpec {
    pub fn new(seed: u64, moduli: &[usize], dims: &[usize], mode: GenerationMode) -> Self {
        InstanceSpec {
            seed,
            moduli: moduli.to_vec(),
            dims: dims.to_vec(),
            mode,
            terms: None,
            intro_vectors: None,
            primal_weight: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Mappings(Vec<VectorMapping>),
    Decomposition(SeparableDecomposition),
    Spectral(ZnSpectralSystem),
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re = rng.gen_range(-1.0..1.0);
    let im = rng.gen_range(-1.0..1.0);
    Complex64::new(re, im)
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    CVector::new((0..dim).map(|_| random_complex(rng)).collect())
}

pub fn random_mapping<R: Rng>(rng: &mut R, group: &FiniteAbelianGroup, measure: MeasurePair, dim: usize) -> Result<VectorMapping> {
    let values = (0..group.order()).map(|_| random_vector(rng, dim)).collect();
    VectorMapping::with_measure(group.clone(), measure, values)
}

pub fn random_decomposition<R: Rng>(rng: &mut R, shape: &TensorSpaceShape, terms: usize) -> Result<SeparableDecomposition> {
    let terms = (0..terms)
        .map(|_| {
            let weight = 1.0 - rng.gen::<f64>();
            let factors = shape.dims().iter().map(|&d| random_vector(rng, d)).collect();
            DecompositionTerm { weight, factors }
        })
        .collect();
    SeparableDecomposition::new(shape.clone(), terms)
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance> {
    let mut rng = rng_from_seed(spec.seed);
    let group = FiniteAbelianGroup::new(&spec.moduli)?;
    let measure = MeasurePair::conjugate(&group, spec.primal_weight)?;
    let shape = TensorSpaceShape::new(&spec.dims)?;
    match spec.mode {
        GenerationMode::RandomMapping => spec
            .dims
            .iter()
            .map(|&d| random_mapping(&mut rng, &group, measure, d))
            .collect::<Result<Vec<_>>>()
            .map(Instance::Mappings),
        GenerationMode::RandomDecomposition => {
            let terms = spec.terms.unwrap_or_else(|| caratheodory_bound(&shape));
            random_decomposition(&mut rng, &shape, terms).map(Instance::Decomposition)
        }
        GenerationMode::IntroExample => {
            if group.moduli() != [2] || spec.dims.len() != 2 {
                return Err(Error::InvalidInstance(
                    "the intro example lives on Z_2 with two factors".into(),
                ));
            }
            let vectors = match &spec.intro_vectors {
                Some(vs) => vs.clone(),
                None => vec![
                    random_vector(&mut rng, spec.dims[0]),
                    random_vector(&mut rng, spec.dims[0]),
                    random_vector(&mut rng, spec.dims[1]),
                    random_vector(&mut rng, spec.dims[1]),
                ],
            };
            if vectors.len() != 4 {
                return Err(Error::InvalidInstance(format!("expected 4 intro vectors, got {}", vectors.len())));
            }
            for (k, v) in vectors.iter().enumerate() {
                let expected = spec.dims[k / 2];
                if v.dim() != expected {
                    return Err(Error::DimensionMismatch { expected, found: v.dim() });
                }
            }
            Ok(Instance::Mappings(vec![
                VectorMapping::with_measure(group.clone(), measure, vectors[..2].to_vec())?,
                VectorMapping::with_measure(group, measure, vectors[2..].to_vec())?,
            ]))
        }
        GenerationMode::ZnSpectral => {
            if group.num_factors() != 1 {
                return Err(Error::InvalidInstance("the Z_n construction needs a cyclic group".into()));
            }
            let n = group.order();
            let lambdas = vec![vec![Complex64::new(1.0, 0.0); n]; spec.dims.len()];
            spectral::zn_construct_standard(n, &spec.dims, lambdas)
                .map_err(|e| Error::InvalidInstance(e.to_string()))
                .map(Instance::Spectral)
        }
    }
}

/// Errors from reading or parsing an input file, with the location when known.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in {path} at line {line}, column {column}: {message}")]
    Json { path: String, line: usize, column: usize, message: String },
}

/// Reads JSON from a file, or from stdin when `path` is `-`.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, InputError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| InputError::Io { path: name.clone(), source })?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|source| InputError::Io { path: name.clone(), source })?
    };
    parse_json(&text, &name)
}

pub fn parse_json<T: DeserializeOwned>(text: &str, name: &str) -> std::result::Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        path: name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}
