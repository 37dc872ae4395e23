//! Spectral decompositions of operators `Σ_g P[conv(g)]` built from tensor convolutions.
//!
//! The sum is a spectral decomposition (up to normalizing each projector) when every
//! pair of convolution values is either orthogonal or real-proportional. This module
//! classifies pairs directly, implements the angle criterion for two bipartite maps on
//! `Z_2`, and the orthonormal-system construction on `Z_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::hilbert::{self, CVector, HermitianOperator};
use crate::transform::{self, ScalarFunction, VectorMapping};

/// Default relative tolerance for the classifications in this module.
pub const SPECTRAL_TOLERANCE: f64 = 1e-10;
/// Relative tolerance of real proportionality, `‖a - λb‖ <= tol · max norm`.
pub const PROPORTIONALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PairClass {
    Orthogonal,
    RealProportional { lambda: f64 },
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralVerdict {
    /// `pairwise[g][h]` classifies `m(g)` against `m(h)`; for proportional pairs
    /// `m(g) = λ m(h)`.
    pub pairwise: Vec<Vec<PairClass>>,
    pub is_spectral: bool,
    /// Pairs reported as `Neither` that are proportional by a non-real factor.
    pub phase_proportional: Vec<(usize, usize)>,
}

/// Least-squares real `λ` with `a ≈ λ b`, if the fit is within tolerance.
fn real_multiple(a: &CVector, b: &CVector, scale: f64) -> Option<f64> {
    let nb = b.norm_sqr();
    if nb == 0.0 {
        return None;
    }
    let lambda = hilbert::inner(b, a).ok()?.re / nb;
    let residual = a.sub(&b.scaled(Complex64::new(lambda, 0.0))).ok()?.norm();
    (residual <= PROPORTIONALITY_TOLERANCE * scale).then_some(lambda)
}

fn complex_multiple(a: &CVector, b: &CVector, scale: f64) -> bool {
    let nb = b.norm_sqr();
    if nb == 0.0 {
        return false;
    }
    let Ok(z) = hilbert::inner(b, a) else { return false };
    let fit = b.scaled(z / nb);
    a.sub(&fit).map(|r| r.norm() <= PROPORTIONALITY_TOLERANCE * scale).unwrap_or(false)
}

/// Checks conditions (A) orthogonality or (B) real proportionality for every pair of values.
pub fn gram_spectral_condition(m: &VectorMapping) -> SpectralVerdict {
    gram_spectral_condition_with_tol(m, SPECTRAL_TOLERANCE)
}

pub fn gram_spectral_condition_with_tol(m: &VectorMapping, tol: f64) -> SpectralVerdict {
    let values = m.values();
    let scale = values.iter().map(CVector::norm).fold(0.0, f64::max);
    let n = values.len();
    let mut pairwise = vec![vec![PairClass::Neither; n]; n];
    let mut phase_proportional = Vec::new();
    for g in 0..n {
        for h in 0..n {
            let overlap = hilbert::inner(&values[g], &values[h]).expect("values share a dimension");
            pairwise[g][h] = if overlap.norm() <= tol * scale * scale {
                PairClass::Orthogonal
            } else if let Some(lambda) = real_multiple(&values[g], &values[h], scale) {
                PairClass::RealProportional { lambda }
            } else {
                if complex_multiple(&values[g], &values[h], scale) {
                    phase_proportional.push((g, h));
                }
                PairClass::Neither
            };
        }
    }
    let is_spectral = pairwise.iter().flatten().all(|c| *c != PairClass::Neither);
    SpectralVerdict { pairwise, is_spectral, phase_proportional }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Z2Condition {
    /// `∠(v0, v1) ± ∠(w0, w1) = π mod 2π`.
    ConditionA,
    /// Both pairs are linearly dependent.
    ConditionB,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Z2AngleReport {
    pub cos_v: f64,
    pub cos_w: f64,
    pub condition_a: bool,
    pub condition_b: bool,
    /// `ConditionB` takes precedence when both hold.
    pub verdict: Z2Condition,
}

fn cos_angle(a: &CVector, b: &CVector) -> Result<f64> {
    Ok(hilbert::inner(a, b)?.re / (a.norm() * b.norm()))
}

fn dependent(a: &CVector, b: &CVector, tol: f64) -> Result<bool> {
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let gram_det = na * nb - hilbert::inner(a, b)?.norm_sqr();
    Ok(gram_det <= tol * na * nb)
}

/// Angle criterion for `v: Z_2 → H_1`, `w: Z_2 → H_2` with all four values of equal norm.
///
/// The pair `conv(0), conv(1)` satisfies `⟨conv(0), conv(1)⟩ = 2R^4 (cos∠(v0,v1) + cos∠(w0,w1))`,
/// where `cos∠(a, b) = Re⟨a, b⟩ / (‖a‖‖b‖)`.
pub fn z2_angle_condition(v0: &CVector, v1: &CVector, w0: &CVector, w1: &CVector) -> Result<Z2AngleReport> {
    if v0.dim() != v1.dim() || w0.dim() != w1.dim() {
        return Err(Error::DimensionMismatch {
            expected: v0.dim(),
            found: if v0.dim() != v1.dim() { v1.dim() } else { w1.dim() },
        });
    }
    let norms = [v0.norm(), v1.norm(), w0.norm(), w1.norm()];
    let r = norms[0];
    if r == 0.0 || norms.iter().any(|&x| (x - r).abs() > 1e-9 * r) {
        return Err(Error::Precondition(format!(
            "the angle criterion needs four vectors of equal positive norm, got {norms:?}"
        )));
    }
    let cos_v = cos_angle(v0, v1)?;
    let cos_w = cos_angle(w0, w1)?;
    let condition_a = (cos_v + cos_w).abs() <= SPECTRAL_TOLERANCE;
    let condition_b = dependent(v0, v1, SPECTRAL_TOLERANCE)? && dependent(w0, w1, SPECTRAL_TOLERANCE)?;
    let verdict = if condition_b {
        Z2Condition::ConditionB
    } else if condition_a {
        Z2Condition::ConditionA
    } else {
        Z2Condition::Neither
    };
    Ok(Z2AngleReport { cos_v, cos_w, condition_a, condition_b, verdict })
}

/// Inputs and output of the `Z_n` construction `v^μ_g = λ^μ_g e^μ_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZnSpectralSystem {
    pub n: usize,
    pub bases: Vec<Vec<CVector>>,
    pub lambdas: Vec<Vec<Complex64>>,
    /// The factor mappings `v^μ: Z_n → H_μ`.
    pub factors: Vec<VectorMapping>,
    /// `v^1 ⋆ ... ⋆ v^m` with the counting measure.
    pub mapping: VectorMapping,
}

/// `bases[μ]` must be an orthonormal system of `n` vectors in `H_μ`, `lambdas[μ]` a
/// function on `Z_n`.
pub fn zn_construct(bases: Vec<Vec<CVector>>, lambdas: Vec<Vec<Complex64>>) -> Result<ZnSpectralSystem> {
    let m = bases.len();
    if m < 2 {
        return Err(Error::Precondition(format!("need at least two factors, got {m}")));
    }
    if lambdas.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: lambdas.len() });
    }
    let n = bases[0].len();
    if n == 0 {
        return Err(Error::Precondition("orthonormal systems are empty".into()));
    }
    let group = FiniteAbelianGroup::cyclic(n)?;
    let mut factors = Vec::with_capacity(m);
    for (mu, (basis, lambda)) in bases.iter().zip(&lambdas).enumerate() {
        if basis.len() != n || lambda.len() != n {
            return Err(Error::Precondition(format!(
                "factor {mu} has {} basis vectors and {} coefficients, expected {n}",
                basis.len(),
                lambda.len()
            )));
        }
        let dim = basis[0].dim();
        if dim < n {
            return Err(Error::Precondition(format!(
                "factor {mu} has dimension {dim} < n = {n}; it cannot hold {n} orthonormal vectors"
            )));
        }
        let mut deviation = 0.0f64;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((hilbert::inner(a, b)? - expected).norm());
            }
        }
        if deviation > 1e-10 {
            return Err(Error::Precondition(format!(
                "factor {mu} is not orthonormal (Gram deviation {deviation:e})"
            )));
        }
        let values = basis.iter().zip(lambda).map(|(e, &l)| e.scaled(l)).collect();
        factors.push(VectorMapping::new(group.clone(), values)?);
    }
    let mapping = transform::tensor_convolve(&factors)?;
    Ok(ZnSpectralSystem { n, bases, lambdas, factors, mapping })
}

/// Standard bases `e_0..e_{n-1}` of `C^{dims[μ]}` with the given coefficients.
pub fn zn_construct_standard(n: usize, dims: &[usize], lambdas: Vec<Vec<Complex64>>) -> Result<ZnSpectralSystem> {
    let bases = dims
        .iter()
        .map(|&d| {
            if d < n {
                Err(Error::Precondition(format!("dimension {d} < n = {n}")))
            } else {
                Ok((0..n).map(|k| CVector::basis(d, k)).collect())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    zn_construct(bases, lambdas)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    /// Gram matrix `⟨conv(g), conv(h)⟩`.
    pub gram: Vec<Vec<[f64; 2]>>,
    /// Exact diagonal `(|λ^1|² ⋆ ... ⋆ |λ^m|²)(g)`, scaled by the measure.
    pub predicted_diagonal: Vec<f64>,
    /// `Π_μ Σ_g |λ^μ_g|²`, which equals the trace of the Gram matrix.
    pub product_of_sums: f64,
    /// Largest relative deviation of the Gram matrix from `diag(predicted_diagonal)`.
    pub max_residual: f64,
    /// Largest relative deviation of the Gram matrix from `product_of_sums · I`.
    pub product_residual: f64,
    pub holds: bool,
}

/// Gram matrix of a `Z_n` tensor convolution against the prediction from `lambdas`.
///
/// The values are mutually orthogonal; the squared norm of `conv(g)` is the
/// convolution of the profiles `|λ^μ|²`, whose total over `g` is `Π_μ Σ|λ^μ|²`.
pub fn zn_orthogonality_check(m: &VectorMapping, lambdas: &[Vec<Complex64>]) -> Result<OrthogonalityReport> {
    let group = m.group();
    let n = group.order();
    if group.num_factors() != 1 {
        return Err(Error::Precondition(format!("expected a cyclic group, got moduli {:?}", group.moduli())));
    }
    if lambdas.len() < 2 || lambdas.iter().any(|l| l.len() != n) {
        return Err(Error::Precondition(format!("need at least two coefficient functions on Z_{n}")));
    }
    let values = m.values();
    let gram: Vec<Vec<Complex64>> = values
        .iter()
        .map(|a| values.iter().map(|b| hilbert::inner(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let profiles: Vec<ScalarFunction> = lambdas
        .iter()
        .map(|l| ScalarFunction::new(group.clone(), l.iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect()))
        .collect::<Result<_>>()?;
    let mut diag = profiles[0].clone();
    for p in &profiles[1..] {
        diag = transform::convolve_scalar(&diag, p)?;
    }
    let w = m.measure().primal_weight;
    let measure_factor = w.powi(2 * (lambdas.len() as i32 - 1));
    let predicted_diagonal: Vec<f64> = diag.values().iter().map(|z| z.re * measure_factor).collect();
    let product_of_sums: f64 =
        lambdas.iter().map(|l| l.iter().map(|z| z.norm_sqr()).sum::<f64>()).product::<f64>() * measure_factor;

    let scale = gram.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(product_of_sums).max(1e-300);
    let mut max_residual = 0.0f64;
    let mut product_residual = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            let exact = if g == h { predicted_diagonal[g] } else { 0.0 };
            let product = if g == h { product_of_sums } else { 0.0 };
            max_residual = max_residual.max((gram[g][h] - exact).norm() / scale);
            product_residual = product_residual.max((gram[g][h] - product).norm() / scale);
        }
    }
    Ok(OrthogonalityReport {
        gram: gram.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        predicted_diagonal,
        product_of_sums,
        max_residual,
        product_residual,
        holds: max_residual <= SPECTRAL_TOLERANCE,
    })
}

/// For constant coefficients, every reduced operator of `P[conv(g)]` on `H_μ` is
/// `n^{m-2} Π_ν |λ^ν|²` times the projection onto `span{e^μ_g}`. Returns the max-norm
/// deviation from that homothety for each factor.
pub fn homothety_check(system: &ZnSpectralSystem, g: usize) -> Result<Vec<(usize, f64)>> {
    let n = system.n;
    let m = system.bases.len();
    if g >= n {
        return Err(Error::ElementMismatch { residues: vec![g], moduli: vec![n] });
    }
    for (mu, lambda) in system.lambdas.iter().enumerate() {
        let l0 = lambda[0];
        if lambda.iter().any(|&l| (l - l0).norm() > 1e-12 * l0.norm().max(1.0)) {
            return Err(Error::Precondition(format!("coefficients of factor {mu} are not constant")));
        }
    }
    let scale = (n as f64).powi(m as i32 - 2)
        * system.lambdas.iter().map(|l| l[0].norm_sqr()).product::<f64>();
    let p = hilbert::projector(&system.mapping.values()[g]);
    system
        .bases
        .iter()
        .enumerate()
        .map(|(mu, basis)| {
            let reduced = p.partial_trace(mu)?;
            let mut expected = HermitianOperator::zeros(&[basis[0].dim()]);
            for e in basis {
                expected.add_projector(e, scale);
            }
            Ok((mu, reduced.max_diff(&expected)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectorReport {
    /// Common squared norm `c` of the values.
    pub constant: f64,
    /// `‖S² - cS‖_max / max(1, c‖S‖_max)` for `S = Σ_g P[m(g)]`.
    pub residual: f64,
    pub holds: bool,
}

/// Checks that `S = Σ_g P[m(g)]` satisfies `S² = cS`, i.e. `S/c` is an orthogonal projection.
pub fn projector_property_check(m: &VectorMapping) -> Result<ProjectorReport> {
    let values = m.values();
    let norms: Vec<f64> = values.iter().map(CVector::norm_sqr).collect();
    let max_norm = norms.iter().copied().fold(0.0, f64::max);
    let constant = norms[0];
    if norms.iter().any(|&x| (x - constant).abs() > SPECTRAL_TOLERANCE * max_norm.max(1e-300)) {
        return Err(Error::Precondition(format!("values do not share a common norm: {norms:?}")));
    }
    for (g, a) in values.iter().enumerate() {
        for b in &values[g + 1..] {
            if hilbert::inner(a, b)?.norm() > SPECTRAL_TOLERANCE * max_norm.max(1e-300) {
                return Err(Error::Precondition("values are not mutually orthogonal".into()));
            }
        }
    }
    let mut s = HermitianOperator::zeros(&[m.dim()]);
    for v in values {
        s.add_projector(v, 1.0);
    }
    let square = s.mul(&s)?;
    let diff = (square - s.matrix().scale(constant)).iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let residual = diff / (constant * s.max_abs()).max(1.0);
    Ok(ProjectorReport { constant, residual, holds: residual <= SPECTRAL_TOLERANCE })
}
