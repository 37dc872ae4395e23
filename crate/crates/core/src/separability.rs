//! Separable operators built from tensor convolutions.
//!
//! For mappings `Φ^μ: G → H_μ` the operator
//!
//! ```text
//! C_Φ = Σ_g w · P[(Φ^1 ⋆ ... ⋆ Φ^m)(g)]
//! ```
//!
//! is a positive combination of (generally entangled) projectors. After a Fourier
//! transform the same operator reads `Σ_χ w_dual · P[F̂Φ^1(χ) ⊗ ... ⊗ F̂Φ^m(χ)]`, an
//! explicit separable decomposition. [`synthesize_mappings`] goes the other way: it
//! places every term of a given decomposition on its own dual point and transforms back.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, MeasurePair};
use crate::error::{Error, Result};
use crate::hilbert::{self, CVector, HermitianOperator, TensorSpaceShape, Wire};
use crate::transform::{self, Side, VectorMapping};

/// Relative tolerance of the primal/dual-side equality.
pub const DUAL_SIDE_TOLERANCE: f64 = 1e-9;
/// Relative tolerance of the synthesis round trip.
pub const SYNTHESIS_TOLERANCE: f64 = 1e-8;
/// Operators whose entries are all below this are compared absolutely.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// `true` when `‖a - b‖_max <= tol · max(‖a‖_max, ‖b‖_max)` or `<= ABSOLUTE_FLOOR`.
pub fn operators_match(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<bool> {
    let diff = a.max_diff(b)?;
    Ok(diff <= ABSOLUTE_FLOOR || diff <= tol * a.max_abs().max(b.max_abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTerm {
    pub weight: f64,
    pub factors: Vec<CVector>,
}

impl DecompositionTerm {
    /// Zero weight or a zero factor makes the term vanish.
    pub fn is_trivial(&self) -> bool {
        self.weight == 0.0 || self.factors.iter().any(CVector::is_zero)
    }
}

/// `Σ_p λ_p P[v_p^1 ⊗ ... ⊗ v_p^m]` with `λ_p >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionWire", into = "DecompositionWire")]
pub struct SeparableDecomposition {
    shape: TensorSpaceShape,
    terms: Vec<DecompositionTerm>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionWire {
    dims: Vec<usize>,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    weight: f64,
    factors: Vec<Vec<Wire>>,
}

impl TryFrom<DecompositionWire> for SeparableDecomposition {
    type Error = Error;

    fn try_from(wire: DecompositionWire) -> Result<Self> {
        let shape = TensorSpaceShape::new(&wire.dims)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| DecompositionTerm {
                weight: t.weight,
                factors: t
                    .factors
                    .iter()
                    .map(|f| CVector::new(f.iter().map(Complex64::from).collect()))
                    .collect(),
            })
            .collect();
        SeparableDecomposition::new(shape, terms)
    }
}

impl From<SeparableDecomposition> for DecompositionWire {
    fn from(d: SeparableDecomposition) -> Self {
        DecompositionWire {
            dims: d.shape.dims().to_vec(),
            terms: d
                .terms
                .into_iter()
                .map(|t| TermWire {
                    weight: t.weight,
                    factors: t
                        .factors
                        .iter()
                        .map(|f| f.entries().iter().map(|&z| Wire::from(z)).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl SeparableDecomposition {
    pub fn new(shape: TensorSpaceShape, terms: Vec<DecompositionTerm>) -> Result<Self> {
        for (p, term) in terms.iter().enumerate() {
            if !(term.weight >= 0.0 && term.weight.is_finite()) {
                return Err(Error::InvalidShape(format!(
                    "term {p} has weight {}, expected a finite non-negative number",
                    term.weight
                )));
            }
            if term.factors.len() != shape.num_factors() {
                return Err(Error::DimensionMismatch {
                    expected: shape.num_factors(),
                    found: term.factors.len(),
                });
            }
            for (f, &d) in term.factors.iter().zip(shape.dims()) {
                if f.dim() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: f.dim() });
                }
            }
        }
        Ok(SeparableDecomposition { shape, terms })
    }

    pub fn empty(shape: TensorSpaceShape) -> Self {
        SeparableDecomposition { shape, terms: Vec::new() }
    }

    pub fn shape(&self) -> &TensorSpaceShape {
        &self.shape
    }

    pub fn terms(&self) -> &[DecompositionTerm] {
        &self.terms
    }

    /// Terms that contribute a nonzero projector.
    pub fn effective_terms(&self) -> impl Iterator<Item = &DecompositionTerm> {
        self.terms.iter().filter(|t| !t.is_trivial())
    }
}

fn shape_of_mappings(phis: &[VectorMapping]) -> Result<TensorSpaceShape> {
    let dims: Vec<usize> = phis.iter().map(VectorMapping::dim).collect();
    TensorSpaceShape::new(&dims)
}

/// `C_Φ = Σ_g w · P[(Φ^1 ⋆ ... ⋆ Φ^m)(g)]`.
pub fn operator_from_mappings(phis: &[VectorMapping]) -> Result<HermitianOperator> {
    let shape = shape_of_mappings(phis)?;
    let conv = transform::tensor_convolve(phis)?;
    let w = conv.weight();
    let mut op = HermitianOperator::zeros(shape.dims());
    for value in conv.values() {
        op.add_projector(value, w);
    }
    Ok(op)
}

fn dual_factors(phis: &[VectorMapping]) -> Result<(Vec<VectorMapping>, f64)> {
    shape_of_mappings(phis)?;
    let first = &phis[0];
    if first.side() != Side::Primal {
        return Err(Error::IncompatibleMappings("mappings must live on G".into()));
    }
    transform::check_conjugate(first.group(), first.measure())?;
    for phi in &phis[1..] {
        if phi.group() != first.group() || phi.measure() != first.measure() || phi.side() != first.side() {
            return Err(Error::IncompatibleMappings("mappings live on different domains".into()));
        }
    }
    let hats = phis.iter().map(transform::fourier).collect::<Result<Vec<_>>>()?;
    Ok((hats, first.measure().dual_weight))
}

/// `Σ_χ w_dual · P[F̂Φ^1(χ) ⊗ ... ⊗ F̂Φ^m(χ)]`, computed without any convolution.
pub fn operator_dual_side(phis: &[VectorMapping]) -> Result<HermitianOperator> {
    operator_from_decomposition(&decomposition_from_mappings(phis)?)
}

/// One term `(w_dual, F̂Φ^1(χ), ..., F̂Φ^m(χ))` per dual point `χ`, in rank order.
pub fn decomposition_from_mappings(phis: &[VectorMapping]) -> Result<SeparableDecomposition> {
    let shape = shape_of_mappings(phis)?;
    let (hats, dual_weight) = dual_factors(phis)?;
    let order = phis[0].group().order();
    let terms = (0..order)
        .map(|chi| DecompositionTerm {
            weight: dual_weight,
            factors: hats.iter().map(|h| flatten(h.value(chi))).collect(),
        })
        .collect();
    SeparableDecomposition::new(shape, terms)
}

fn flatten(v: &CVector) -> CVector {
    CVector::new(v.entries().to_vec())
}

/// `Σ_p λ_p P[v_p^1 ⊗ ... ⊗ v_p^m]`.
pub fn operator_from_decomposition(d: &SeparableDecomposition) -> Result<HermitianOperator> {
    let mut op = HermitianOperator::zeros(d.shape.dims());
    for term in &d.terms {
        let v = hilbert::tensor_in(&d.shape, &term.factors)?;
        op.add_projector(&v, term.weight);
    }
    Ok(op)
}

/// `(dim H)^2`: every separable operator on `H` needs at most this many terms.
pub fn caratheodory_bound(shape: &TensorSpaceShape) -> usize {
    shape.total_dim() * shape.total_dim()
}

/// Mappings on `group` (counting measure) whose `C_Φ` equals the decomposition.
pub fn synthesize_mappings(
    d: &SeparableDecomposition,
    group: &FiniteAbelianGroup,
) -> Result<Vec<VectorMapping>> {
    synthesize_mappings_with_measure(d, group, MeasurePair::counting(group))
}

/// Term `p` of the decomposition is carried by the dual point of rank `p` alone:
/// `Ψ^μ(χ_p) = (λ_p / w_dual)^{1/(2m)} · v_p^μ`, then `Φ^μ = F̂^{-1} Ψ^μ`.
/// On a finite group the indicator of a single dual point plays the role of the
/// disjointly supported bump functions, so the dual-side sum separates term by term.
pub fn synthesize_mappings_with_measure(
    d: &SeparableDecomposition,
    group: &FiniteAbelianGroup,
    measure: MeasurePair,
) -> Result<Vec<VectorMapping>> {
    transform::check_conjugate(group, &measure)?;
    let terms: Vec<&DecompositionTerm> = d.effective_terms().collect();
    let capacity = group.dual().order();
    if terms.len() > capacity {
        return Err(Error::Capacity {
            terms: terms.len(),
            capacity,
            caratheodory: caratheodory_bound(&d.shape),
        });
    }
    let m = d.shape.num_factors();
    let exponent = 1.0 / (2 * m) as f64;
    let dims = d.shape.dims();
    (0..m)
        .map(|mu| {
            let mut psi = vec![CVector::zeros(dims[mu]); capacity];
            for (slot, term) in psi.iter_mut().zip(&terms) {
                let amplitude = (term.weight / measure.dual_weight).powf(exponent);
                *slot = term.factors[mu].scaled(Complex64::new(amplitude, 0.0));
            }
            let psi = VectorMapping::with_measure(group.clone(), measure, psi)?.with_side(Side::Dual);
            transform::inverse_fourier(&psi)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparabilityStatus {
    SeparableCertified,
    EntangledPpt,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// An explicit decomposition reproducing the operator.
    Decomposition { decomposition: SeparableDecomposition, relative_residual: f64 },
    /// The partial transpose across `cut` has a negative eigenvalue.
    PptViolation { cut: usize, min_eigenvalue: f64, tolerance: f64 },
    /// PPT holds on a bipartite space of total dimension 4 or 6, where it is sufficient.
    PptDecisive { cut: usize, min_eigenvalue: f64, tolerance: f64 },
    /// PPT holds but is not sufficient for this shape.
    PptPassed { cut: usize, min_eigenvalue: f64, tolerance: f64 },
    /// A candidate decomposition failed to reproduce the operator.
    CertificateMismatch { relative_residual: f64, tolerance: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    pub status: SeparabilityStatus,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PptOptions {
    /// Report `SeparableCertified` when PPT holds on a 2x2 or 2x3 space.
    pub decisive: bool,
}

/// Bipartite shapes where the PPT test decides separability.
pub fn ppt_is_decisive(dims: &[usize]) -> bool {
    dims.len() == 2 && matches!(dims[0] * dims[1], 4 | 6) && dims.iter().all(|&d| d > 1)
}

/// PPT test across the bipartition `{0..cut} | {cut..m}`.
///
/// A non-PSD input is an error, not a verdict.
pub fn ppt_check(a: &HermitianOperator, cut: usize, options: PptOptions) -> Result<SeparabilityVerdict> {
    let factors = a.dims().len();
    if cut == 0 || cut >= factors {
        return Err(Error::InvalidCut { cut, factors });
    }
    let min_eigenvalue = a.min_eigenvalue()?;
    if min_eigenvalue < -a.psd_threshold() {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    let pt = a.partial_transpose(cut)?;
    let tolerance = pt.psd_threshold();
    let min_eigenvalue = pt.min_eigenvalue()?;
    let verdict = if min_eigenvalue < -tolerance {
        SeparabilityVerdict {
            status: SeparabilityStatus::EntangledPpt,
            evidence: Evidence::PptViolation { cut, min_eigenvalue, tolerance },
        }
    } else if options.decisive && ppt_is_decisive(a.dims()) {
        SeparabilityVerdict {
            status: SeparabilityStatus::SeparableCertified,
            evidence: Evidence::PptDecisive { cut, min_eigenvalue, tolerance },
        }
    } else {
        SeparabilityVerdict {
            status: SeparabilityStatus::Inconclusive,
            evidence: Evidence::PptPassed { cut, min_eigenvalue, tolerance },
        }
    };
    Ok(verdict)
}

/// [`ppt_check`] on every cut `1..m`.
pub fn ppt_check_all(a: &HermitianOperator, options: PptOptions) -> Result<Vec<SeparabilityVerdict>> {
    (1..a.dims().len()).map(|cut| ppt_check(a, cut, options)).collect()
}

/// Certifies separability by reconstructing `a` from `d`.
pub fn certify_with_decomposition(
    a: &HermitianOperator,
    d: &SeparableDecomposition,
    tol: f64,
) -> Result<SeparabilityVerdict> {
    if a.dims() != d.shape().dims() {
        return Err(Error::InvalidShape(format!(
            "operator dims {:?} differ from decomposition dims {:?}",
            a.dims(),
            d.shape().dims()
        )));
    }
    let rebuilt = operator_from_decomposition(d)?;
    let relative_residual = a.relative_diff(&rebuilt)?;
    Ok(if operators_match(a, &rebuilt, tol)? {
        SeparabilityVerdict {
            status: SeparabilityStatus::SeparableCertified,
            evidence: Evidence::Decomposition { decomposition: d.clone(), relative_residual },
        }
    } else {
        SeparabilityVerdict {
            status: SeparabilityStatus::Inconclusive,
            evidence: Evidence::CertificateMismatch { relative_residual, tolerance: tol },
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::make_group;
    use crate::hilbert::{projector, tensor};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn e(k: usize) -> CVector {
        CVector::basis(2, k)
    }

    fn shape22() -> TensorSpaceShape {
        TensorSpaceShape::new(&[2, 2]).unwrap()
    }

    fn intro_mappings(v: [CVector; 2], w: [CVector; 2]) -> Vec<VectorMapping> {
        let g = make_group(&[2]).unwrap();
        vec![
            VectorMapping::new(g.clone(), v.to_vec()).unwrap(),
            VectorMapping::new(g, w.to_vec()).unwrap(),
        ]
    }

    #[test]
    fn standard_basis_intro_matrix() {
        let op = operator_from_mappings(&intro_mappings([e(0), e(1)], [e(0), e(1)])).unwrap();
        let ones = [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)];
        for i in 0..4 {
            for j in 0..4 {
                let expected = if ones.contains(&(i, j)) { 1.0 } else { 0.0 };
                assert_eq!(op.get(i, j), c(expected), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn intro_primal_and_dual_forms() {
        let v = [CVector::from_real(&[0.3, -1.0]), CVector::new(vec![Complex64::new(0.5, 0.2), c(1.0)])];
        let w = [CVector::from_real(&[1.0, 0.0, 2.0]), CVector::new(vec![c(0.0), Complex64::i(), c(-0.4)])];
        let phis = intro_mappings(v.clone(), w.clone());

        let mut eq1 = projector(&tensor(&[v[0].clone(), w[0].clone()]).unwrap().add(&tensor(&[v[1].clone(), w[1].clone()]).unwrap()).unwrap());
        eq1 = eq1.add(&projector(&tensor(&[v[0].clone(), w[1].clone()]).unwrap().add(&tensor(&[v[1].clone(), w[0].clone()]).unwrap()).unwrap())).unwrap();
        let plus = tensor(&[v[0].add(&v[1]).unwrap(), w[0].add(&w[1]).unwrap()]).unwrap();
        let minus = tensor(&[v[0].sub(&v[1]).unwrap(), w[0].sub(&w[1]).unwrap()]).unwrap();
        let eq2 = projector(&plus).scaled(0.5).add(&projector(&minus).scaled(0.5)).unwrap();

        let primal = operator_from_mappings(&phis).unwrap();
        let dual = operator_dual_side(&phis).unwrap();
        assert!(primal.max_diff(&eq1).unwrap() < 1e-14);
        assert!(dual.max_diff(&eq2).unwrap() < 1e-14);
        assert!(eq1.max_diff(&eq2).unwrap() < 1e-14);

        let d = decomposition_from_mappings(&phis).unwrap();
        assert_eq!(d.terms().len(), 2);
        assert!(d.terms().iter().all(|t| t.weight == 0.5));
        assert!(d.terms()[0].factors[0].sub(&v[0].add(&v[1]).unwrap()).unwrap().max_abs() < 1e-15);
        assert!(d.terms()[1].factors[1].sub(&w[0].sub(&w[1]).unwrap()).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn zero_mapping_gives_zero_operator() {
        let g = make_group(&[3]).unwrap();
        let phi1 = VectorMapping::zeros(g.clone(), MeasurePair::counting(&g), 2);
        let phi2 = VectorMapping::new(g, (0..3).map(|k| CVector::basis(3, k)).collect()).unwrap();
        let phis = [phi1, phi2];
        assert_eq!(operator_from_mappings(&phis).unwrap(), HermitianOperator::zeros(&[2, 3]));
        assert_eq!(operator_dual_side(&phis).unwrap(), HermitianOperator::zeros(&[2, 3]));
        let d = decomposition_from_mappings(&phis).unwrap();
        assert!(d.terms().iter().all(|t| t.factors[0].is_zero()));
    }

    #[test]
    fn delta_mappings_give_single_term() {
        // Φ^μ = δ_0 · v^μ transforms to the constant v^μ: |G| terms of weight 1/|G|
        let g = make_group(&[4]).unwrap();
        let v = [CVector::from_real(&[1.0, 2.0]), CVector::new(vec![Complex64::i(), c(1.0)])];
        let phis: Vec<VectorMapping> = v
            .iter()
            .map(|x| {
                let mut values = vec![CVector::zeros(2); 4];
                values[0] = x.clone();
                VectorMapping::new(g.clone(), values).unwrap()
            })
            .collect();
        let d = decomposition_from_mappings(&phis).unwrap();
        let total: f64 = d.terms().iter().map(|t| t.weight).sum();
        assert!((total - 1.0).abs() < 1e-15);
        for t in d.terms() {
            assert!(t.factors[0].sub(&v[0]).unwrap().max_abs() < 1e-15);
            assert!(t.factors[1].sub(&v[1]).unwrap().max_abs() < 1e-15);
        }
        let direct = projector(&tensor(&v).unwrap());
        assert!(operator_from_decomposition(&d).unwrap().max_diff(&direct).unwrap() < 1e-14);
        assert!(operator_from_mappings(&phis).unwrap().max_diff(&direct).unwrap() < 1e-14);
    }

    #[test]
    fn mismatched_mappings_are_rejected() {
        let g = make_group(&[3]).unwrap();
        let phi = VectorMapping::zeros(g.clone(), MeasurePair::counting(&g), 2);
        let other = VectorMapping::zeros(make_group(&[2]).unwrap(), MeasurePair::counting(&g), 2);
        assert!(operator_from_mappings(&[phi.clone(), other.clone()]).is_err());
        assert!(operator_dual_side(&[phi.clone(), other]).is_err());
        assert!(operator_from_mappings(std::slice::from_ref(&phi)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = SeparableDecomposition::new(shape22(), vec![DecompositionTerm { weight: 1.0, factors: vec![e(0), e(0)] }]).unwrap();
        let op = operator_from_decomposition(&d).unwrap();
        let mut expected = HermitianOperator::zeros(&[2, 2]);
        expected.add_projector(&CVector::basis(4, 0), 1.0);
        assert_eq!(op, expected);

        let empty = SeparableDecomposition::empty(shape22());
        assert_eq!(operator_from_decomposition(&empty).unwrap(), HermitianOperator::zeros(&[2, 2]));

        let bad = SeparableDecomposition::new(shape22(), vec![DecompositionTerm { weight: 1.0, factors: vec![e(0), CVector::zeros(3)] }]);
        assert!(bad.is_err());
        let bad = SeparableDecomposition::new(shape22(), vec![DecompositionTerm { weight: -1.0, factors: vec![e(0), e(0)] }]);
        assert!(bad.is_err());
    }

    fn synthesis_residual(d: &SeparableDecomposition, moduli: &[usize]) -> f64 {
        let g = make_group(moduli).unwrap();
        let phis = synthesize_mappings(d, &g).unwrap();
        operator_from_mappings(&phis).unwrap().relative_diff(&operator_from_decomposition(d).unwrap()).unwrap()
    }

    #[test]
    fn synthesis_single_term() {
        let d = SeparableDecomposition::new(shape22(), vec![DecompositionTerm { weight: 1.0, factors: vec![e(0), e(0)] }]).unwrap();
        let g = make_group(&[2]).unwrap();
        let phis = synthesize_mappings(&d, &g).unwrap();
        for phi in &phis {
            let hat = transform::fourier(phi).unwrap();
            assert!(hat.value(1).max_abs() < 1e-15);
            assert!(hat.value(0).max_abs() > 0.5);
        }
        // evaluate C_Φ directly from the convolution values
        let conv = transform::tensor_convolve(&phis).unwrap();
        let mut direct = HermitianOperator::zeros(&[2, 2]);
        for v in conv.values() {
            direct.add_projector(v, 1.0);
        }
        let target = operator_from_decomposition(&d).unwrap();
        assert!(direct.max_diff(&target).unwrap() < 1e-14);
    }

    #[test]
    fn synthesis_two_terms_on_z2() {
        let d = SeparableDecomposition::new(
            shape22(),
            vec![
                DecompositionTerm { weight: 0.7, factors: vec![CVector::from_real(&[1.0, 1.0]), e(0)] },
                DecompositionTerm { weight: 2.0, factors: vec![e(1), CVector::new(vec![Complex64::i(), c(0.5)])] },
            ],
        )
        .unwrap();
        assert!(synthesis_residual(&d, &[2]) <= 1e-8);
    }

    #[test]
    fn synthesis_capacity_error() {
        let term = DecompositionTerm { weight: 1.0, factors: vec![e(0), e(1)] };
        let d = SeparableDecomposition::new(shape22(), vec![term.clone(), term.clone(), term]).unwrap();
        let err = synthesize_mappings(&d, &make_group(&[2]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Capacity { terms: 3, capacity: 2, caratheodory: 16 }));
    }

    #[test]
    fn trivial_terms_do_not_count_toward_capacity() {
        let d = SeparableDecomposition::new(
            shape22(),
            vec![
                DecompositionTerm { weight: 0.0, factors: vec![e(0), e(1)] },
                DecompositionTerm { weight: 1.0, factors: vec![CVector::zeros(2), e(1)] },
                DecompositionTerm { weight: 1.0, factors: vec![e(1), e(1)] },
                DecompositionTerm { weight: 3.0, factors: vec![e(0), e(1)] },
            ],
        )
        .unwrap();
        assert!(synthesis_residual(&d, &[2]) <= 1e-8);
    }

    #[test]
    fn caratheodory_examples() {
        assert_eq!(caratheodory_bound(&shape22()), 16);
        assert_eq!(caratheodory_bound(&TensorSpaceShape::new(&[2, 3]).unwrap()), 36);
        assert_eq!(caratheodory_bound(&TensorSpaceShape::new(&[1, 1]).unwrap()), 1);
    }

    fn bell_projector() -> HermitianOperator {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = tensor(&[e(0), e(0)]).unwrap().add(&tensor(&[e(1), e(1)]).unwrap()).unwrap().scaled(c(s));
        projector(&v)
    }

    #[test]
    fn ppt_detects_bell_state() {
        let verdict = ppt_check(&bell_projector(), 1, PptOptions::default()).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::EntangledPpt);
        match verdict.evidence {
            Evidence::PptViolation { cut, min_eigenvalue, .. } => {
                assert_eq!(cut, 1);
                assert!((min_eigenvalue + 0.5).abs() < 1e-10);
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }

    #[test]
    fn ppt_on_maximally_mixed_state() {
        let a = HermitianOperator::identity(&[2, 2]).scaled(0.25);
        let verdict = ppt_check(&a, 1, PptOptions::default()).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::Inconclusive);
        let verdict = ppt_check(&a, 1, PptOptions { decisive: true }).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::SeparableCertified);

        let a = HermitianOperator::identity(&[3, 3]);
        let verdict = ppt_check(&a, 1, PptOptions { decisive: true }).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::Inconclusive);
    }

    #[test]
    fn ppt_rejects_non_psd_input() {
        let a = HermitianOperator::identity(&[2, 2]).scaled(-1.0);
        assert!(matches!(
            ppt_check(&a, 1, PptOptions::default()),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        assert!(matches!(ppt_check(&bell_projector(), 2, PptOptions::default()), Err(Error::InvalidCut { .. })));
    }

    #[test]
    fn constructed_operator_passes_ppt() {
        let v = [CVector::from_real(&[0.3, -1.0]), CVector::new(vec![Complex64::new(0.5, 0.2), c(1.0)])];
        let w = [CVector::from_real(&[1.0, 0.7]), CVector::new(vec![c(0.0), Complex64::i()])];
        let op = operator_from_mappings(&intro_mappings(v, w)).unwrap();
        let verdict = ppt_check(&op, 1, PptOptions { decisive: true }).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::SeparableCertified);
    }

    #[test]
    fn certificate_checks_reconstruction() {
        let v = [e(0), e(1)];
        let phis = intro_mappings(v.clone(), v);
        let op = operator_from_mappings(&phis).unwrap();
        let d = decomposition_from_mappings(&phis).unwrap();
        let verdict = certify_with_decomposition(&op, &d, 1e-9).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::SeparableCertified);
        let verdict = certify_with_decomposition(&bell_projector(), &d, 1e-9).unwrap();
        assert_eq!(verdict.status, SeparabilityStatus::Inconclusive);
    }

    #[test]
    fn decomposition_json() {
        let d = SeparableDecomposition::new(shape22(), vec![DecompositionTerm { weight: 0.5, factors: vec![e(0), e(1)] }]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"dims":[2,2],"terms":[{"weight":0.5,"factors":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]}]}"#);
        assert_eq!(serde_json::from_str::<SeparableDecomposition>(&s).unwrap(), d);
        assert!(serde_json::from_str::<SeparableDecomposition>(r#"{"dims":[2],"terms":[]}"#).is_err());
    }
}
