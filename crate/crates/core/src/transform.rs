//! Convolution and Fourier transform of scalar and Hilbert-space-valued functions
//! on a finite abelian group.
//!
//! A function lives either on `G` or on its dual; [`Side`] records which, and the
//! matching weight of the [`MeasurePair`] is used whenever the function is integrated.
//! All sums run in ascending element rank.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, MeasurePair};
use crate::error::{Error, Result};
use crate::hilbert::{self, kron_vec, CVector, Wire};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Primal,
    Dual,
}

impl Side {
    fn weight(self, measure: &MeasurePair) -> f64 {
        match self {
            Side::Primal => measure.primal_weight,
            Side::Dual => measure.dual_weight,
        }
    }
}

/// A table `Φ: G → H`, one vector per group element, indexed by rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MappingWire", into = "MappingWire")]
pub struct VectorMapping {
    group: FiniteAbelianGroup,
    measure: MeasurePair,
    side: Side,
    dims: Vec<usize>,
    values: Vec<CVector>,
}

#[derive(Serialize, Deserialize)]
struct MappingWire {
    group: FiniteAbelianGroup,
    dim: usize,
    values: Vec<Vec<Wire>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factor_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    primal_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "is_primal")]
    side: Side,
}

fn is_primal(side: &Side) -> bool {
    *side == Side::Primal
}

impl TryFrom<MappingWire> for VectorMapping {
    type Error = Error;

    fn try_from(wire: MappingWire) -> Result<Self> {
        let dims = wire.factor_dims.unwrap_or_else(|| vec![wire.dim]);
        if hilbert::product(&dims) != wire.dim {
            return Err(Error::DimensionMismatch { expected: wire.dim, found: hilbert::product(&dims) });
        }
        let measure = MeasurePair::conjugate(&wire.group, wire.primal_weight.unwrap_or(1.0))?;
        let values = wire
            .values
            .iter()
            .map(|v| CVector::with_dims(dims.clone(), v.iter().map(Complex64::from).collect()))
            .collect::<Result<Vec<_>>>()?;
        let mut mapping = VectorMapping::with_measure(wire.group, measure, values)?;
        mapping.side = wire.side;
        Ok(mapping)
    }
}

impl From<VectorMapping> for MappingWire {
    fn from(m: VectorMapping) -> Self {
        let dim = m.dim();
        MappingWire {
            factor_dims: (m.dims.len() > 1).then(|| m.dims.clone()),
            primal_weight: (m.measure.primal_weight != 1.0).then_some(m.measure.primal_weight),
            side: m.side,
            group: m.group,
            dim,
            values: m
                .values
                .into_iter()
                .map(|v| v.entries().iter().map(|&z| Wire::from(z)).collect())
                .collect(),
        }
    }
}

impl VectorMapping {
    /// Mapping on `G` with the counting measure.
    pub fn new(group: FiniteAbelianGroup, values: Vec<CVector>) -> Result<Self> {
        let measure = MeasurePair::counting(&group);
        Self::with_measure(group, measure, values)
    }

    pub fn with_measure(
        group: FiniteAbelianGroup,
        measure: MeasurePair,
        values: Vec<CVector>,
    ) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: values.len() });
        }
        let dims = values
            .first()
            .map(|v| v.dims().to_vec())
            .ok_or_else(|| Error::InvalidShape("mapping has no values".into()))?;
        if let Some(bad) = values.iter().find(|v| v.dims() != dims.as_slice()) {
            return Err(Error::DimensionMismatch {
                expected: hilbert::product(&dims),
                found: bad.dim(),
            });
        }
        Ok(VectorMapping { group, measure, side: Side::Primal, dims, values })
    }

    /// `Φ(g) = f(g)·v`.
    pub fn rank_one(f: &ScalarFunction, v: &CVector) -> Self {
        VectorMapping {
            group: f.group.clone(),
            measure: f.measure,
            side: f.side,
            dims: v.dims().to_vec(),
            values: f.values.iter().map(|&c| v.scaled(c)).collect(),
        }
    }

    pub fn zeros(group: FiniteAbelianGroup, measure: MeasurePair, dim: usize) -> Self {
        let values = vec![CVector::zeros(dim); group.order()];
        VectorMapping { group, measure, side: Side::Primal, dims: vec![dim], values }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn measure(&self) -> &MeasurePair {
        &self.measure
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Weight of a single point of the domain.
    pub fn weight(&self) -> f64 {
        self.side.weight(&self.measure)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        hilbert::product(&self.dims)
    }

    pub fn values(&self) -> &[CVector] {
        &self.values
    }

    pub fn value(&self, rank: usize) -> &CVector {
        &self.values[rank]
    }

    /// Reinterprets the table as living on `G` or on its dual.
    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    /// Copy of the mapping with a different measure on the same group.
    pub fn with_measure_pair(&self, measure: MeasurePair) -> Self {
        VectorMapping { measure, ..self.clone() }
    }

    /// Σ over the domain of `⟨Φ(g), Ψ(g)⟩` weighted by the domain measure.
    pub fn l2_inner(&self, other: &VectorMapping) -> Result<Complex64> {
        check_compatible(self, other)?;
        let mut s = Complex64::new(0.0, 0.0);
        for (a, b) in self.values.iter().zip(&other.values) {
            s += hilbert::inner(a, b)?;
        }
        Ok(s * self.weight())
    }

    /// Largest `|Φ(g)_i - Ψ(g)_i|` over all points and coordinates.
    pub fn max_diff(&self, other: &VectorMapping) -> Result<f64> {
        if self.values.len() != other.values.len() || self.dim() != other.dim() {
            return Err(Error::IncompatibleMappings("shapes differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.entries().iter().zip(b.entries()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(CVector::max_abs).fold(0.0, f64::max)
    }
}

fn check_compatible(a: &VectorMapping, b: &VectorMapping) -> Result<()> {
    if a.group != b.group {
        return Err(Error::IncompatibleMappings(format!(
            "groups differ: {:?} vs {:?}",
            a.group.moduli(),
            b.group.moduli()
        )));
    }
    if a.measure != b.measure {
        return Err(Error::IncompatibleMappings("measures differ".into()));
    }
    if a.side != b.side {
        return Err(Error::IncompatibleMappings("one mapping lives on the dual group".into()));
    }
    Ok(())
}

/// A complex function on `G` (or on its dual), indexed by rank.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction {
    group: FiniteAbelianGroup,
    measure: MeasurePair,
    side: Side,
    values: Vec<Complex64>,
}

impl ScalarFunction {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        let measure = MeasurePair::counting(&group);
        Self::with_measure(group, measure, values)
    }

    pub fn with_measure(
        group: FiniteAbelianGroup,
        measure: MeasurePair,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: values.len() });
        }
        Ok(ScalarFunction { group, measure, side: Side::Primal, values })
    }

    /// Indicator of the identity element.
    pub fn delta(group: FiniteAbelianGroup, measure: MeasurePair) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[0] = Complex64::new(1.0, 0.0);
        ScalarFunction { group, measure, side: Side::Primal, values }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn measure(&self) -> &MeasurePair {
        &self.measure
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn weight(&self) -> f64 {
        self.side.weight(&self.measure)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn l2_inner(&self, other: &ScalarFunction) -> Result<Complex64> {
        self.check(other)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.weight())
    }

    fn check(&self, other: &ScalarFunction) -> Result<()> {
        if self.group != other.group || self.measure != other.measure || self.side != other.side {
            return Err(Error::IncompatibleMappings("scalar functions live on different domains".into()));
        }
        Ok(())
    }

    /// Views the function as a mapping into `C^1`.
    fn as_mapping(&self) -> VectorMapping {
        VectorMapping {
            group: self.group.clone(),
            measure: self.measure,
            side: self.side,
            dims: vec![1],
            values: self.values.iter().map(|&z| CVector::new(vec![z])).collect(),
        }
    }

    fn from_mapping(m: VectorMapping) -> Self {
        ScalarFunction {
            group: m.group,
            measure: m.measure,
            side: m.side,
            values: m.values.iter().map(|v| v.entries()[0]).collect(),
        }
    }
}

/// `(f ⋆ f')(g) = Σ_h f(g - h) f'(h) · w`.
pub fn convolve_scalar(f: &ScalarFunction, f2: &ScalarFunction) -> Result<ScalarFunction> {
    f.check(f2)?;
    let group = &f.group;
    let w = f.weight();
    let n = group.order();
    let values = (0..n)
        .map(|g| {
            let s: Complex64 = (0..n).map(|h| f.values[group.sub_ranks(g, h)] * f2.values[h]).sum();
            s * w
        })
        .collect();
    Ok(ScalarFunction { values, ..f.clone() })
}

/// `(Φ ⋆ Ψ)(g) = Σ_h Φ(g - h) ⊗ Ψ(h) · w`.
fn tensor_convolve_pair(a: &VectorMapping, b: &VectorMapping) -> Result<VectorMapping> {
    check_compatible(a, b)?;
    let group = &a.group;
    let w = a.weight();
    let n = group.order();
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    let values = (0..n)
        .map(|g| {
            let mut acc = CVector::zeros_with_dims(&dims);
            for h in 0..n {
                let term = kron_vec(&a.values[group.sub_ranks(g, h)], &b.values[h]);
                for (y, x) in acc.entries_mut().iter_mut().zip(term.entries()) {
                    *y += x;
                }
            }
            for y in acc.entries_mut() {
                *y *= w;
            }
            acc
        })
        .collect();
    Ok(VectorMapping { group: group.clone(), measure: a.measure, side: a.side, dims, values })
}

/// `Φ^1 ⋆ ... ⋆ Φ^m`, folded from the left.
pub fn tensor_convolve(mappings: &[VectorMapping]) -> Result<VectorMapping> {
    if mappings.len() < 2 {
        return Err(Error::IncompatibleMappings(format!(
            "tensor convolution needs at least two mappings, got {}",
            mappings.len()
        )));
    }
    for m in &mappings[1..] {
        check_compatible(&mappings[0], m)?;
    }
    let mut acc = tensor_convolve_pair(&mappings[0], &mappings[1])?;
    for m in &mappings[2..] {
        acc = tensor_convolve_pair(&acc, m)?;
    }
    Ok(acc)
}

/// `F̂Φ(χ) = Σ_g γ_χ(-g) Φ(g) · w`, a mapping on the dual group.
pub fn fourier(m: &VectorMapping) -> Result<VectorMapping> {
    if m.side != Side::Primal {
        return Err(Error::IncompatibleMappings("forward transform expects a mapping on G".into()));
    }
    Ok(transform(m, -1.0, Side::Dual))
}

/// `Φ(g) = Σ_χ γ_χ(g) F̂Φ(χ) · w_dual`, a mapping on `G`.
pub fn inverse_fourier(m: &VectorMapping) -> Result<VectorMapping> {
    if m.side != Side::Dual {
        return Err(Error::IncompatibleMappings(
            "inverse transform expects a mapping on the dual group".into(),
        ));
    }
    check_conjugate(m.group(), m.measure())?;
    Ok(transform(m, 1.0, Side::Primal))
}

/// Fails unless `primal_weight · dual_weight · |G| = 1`, the Parseval normalization.
pub fn check_conjugate(group: &FiniteAbelianGroup, measure: &MeasurePair) -> Result<()> {
    let product = measure.primal_weight * measure.dual_weight * group.order() as f64;
    if (product - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidMeasure(format!(
            "dual weight {} is not conjugate to primal weight {} on a group of order {}",
            measure.dual_weight,
            measure.primal_weight,
            group.order()
        )));
    }
    Ok(())
}

fn transform(m: &VectorMapping, sign: f64, target: Side) -> VectorMapping {
    let group = &m.group;
    let n = group.order();
    let w = m.weight();
    let values = (0..n)
        .map(|out| {
            let mut acc = CVector::zeros_with_dims(&m.dims);
            for src in 0..n {
                let c = group.character_by_rank(out, src);
                let c = if sign < 0.0 { c.conj() } else { c };
                acc.axpy(c, &m.values[src]);
            }
            acc.scaled(Complex64::new(w, 0.0))
        })
        .collect();
    VectorMapping { group: group.clone(), measure: m.measure, side: target, dims: m.dims.clone(), values }
}

pub fn fourier_scalar(f: &ScalarFunction) -> Result<ScalarFunction> {
    Ok(ScalarFunction::from_mapping(fourier(&f.as_mapping())?))
}

pub fn inverse_fourier_scalar(f: &ScalarFunction) -> Result<ScalarFunction> {
    Ok(ScalarFunction::from_mapping(inverse_fourier(&f.as_mapping())?))
}

/// `Φ[v](g) = ⟨v, Φ(g)⟩`.
pub fn scalarize(m: &VectorMapping, v: &CVector) -> Result<ScalarFunction> {
    let values = m.values.iter().map(|x| hilbert::inner(v, x)).collect::<Result<Vec<_>>>()?;
    Ok(ScalarFunction { group: m.group.clone(), measure: m.measure, side: m.side, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::make_group;
    use crate::hilbert::tensor;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cv(xs: &[(f64, f64)]) -> CVector {
        CVector::new(xs.iter().map(|&(a, b)| c(a, b)).collect())
    }

    fn z2_intro() -> (Vec<CVector>, Vec<CVector>) {
        let v = vec![cv(&[(1.0, 0.5), (-0.3, 0.0)]), cv(&[(0.2, -1.0), (0.7, 0.1)])];
        let w = vec![cv(&[(0.0, 1.0), (2.0, 0.0), (0.5, 0.5)]), cv(&[(1.0, 0.0), (0.0, 0.0), (-1.0, 0.3)])];
        (v, w)
    }

    #[test]
    fn delta_is_convolution_unit() {
        let g = make_group(&[2, 3]).unwrap();
        let f = ScalarFunction::new(g.clone(), (0..6).map(|k| c(k as f64, 1.0 - k as f64)).collect()).unwrap();
        let d = ScalarFunction::delta(g.clone(), MeasurePair::counting(&g));
        assert_eq!(convolve_scalar(&d, &f).unwrap(), f);
    }

    #[test]
    fn z2_scalar_convolution() {
        let g = make_group(&[2]).unwrap();
        let (a0, a1, b0, b1) = (c(1.0, 2.0), c(-0.5, 0.0), c(3.0, -1.0), c(0.0, 0.25));
        let f = ScalarFunction::new(g.clone(), vec![a0, a1]).unwrap();
        let f2 = ScalarFunction::new(g, vec![b0, b1]).unwrap();
        let out = convolve_scalar(&f, &f2).unwrap();
        assert_eq!(out.values(), &[a0 * b0 + a1 * b1, a0 * b1 + a1 * b0]);
    }

    #[test]
    fn constant_convolution() {
        for n in 1..8 {
            let g = make_group(&[n]).unwrap();
            let one = ScalarFunction::new(g, vec![c(1.0, 0.0); n]).unwrap();
            let out = convolve_scalar(&one, &one).unwrap();
            assert!(out.values().iter().all(|&z| z == c(n as f64, 0.0)));
        }
    }

    #[test]
    fn convolution_group_mismatch() {
        let f = ScalarFunction::new(make_group(&[2]).unwrap(), vec![c(1., 0.); 2]).unwrap();
        let f2 = ScalarFunction::new(make_group(&[3]).unwrap(), vec![c(1., 0.); 3]).unwrap();
        assert!(convolve_scalar(&f, &f2).is_err());
    }

    #[test]
    fn z2_tensor_convolution() {
        let g = make_group(&[2]).unwrap();
        let (v, w) = z2_intro();
        let phi1 = VectorMapping::new(g.clone(), v.clone()).unwrap();
        let phi2 = VectorMapping::new(g, w.clone()).unwrap();
        let conv = tensor_convolve(&[phi1, phi2]).unwrap();
        let at0 = tensor(&[v[0].clone(), w[0].clone()]).unwrap().add(&tensor(&[v[1].clone(), w[1].clone()]).unwrap()).unwrap();
        let at1 = tensor(&[v[0].clone(), w[1].clone()]).unwrap().add(&tensor(&[v[1].clone(), w[0].clone()]).unwrap()).unwrap();
        assert_eq!(conv.dims(), &[2, 3]);
        assert!(conv.value(0).sub(&at0).unwrap().max_abs() < 1e-15);
        assert!(conv.value(1).sub(&at1).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn tensor_convolution_of_zero_is_zero() {
        let g = make_group(&[3]).unwrap();
        let phi1 = VectorMapping::new(g.clone(), (0..3).map(|k| CVector::basis(3, k)).collect()).unwrap();
        let phi2 = VectorMapping::zeros(g.clone(), MeasurePair::counting(&g), 2);
        let conv = tensor_convolve(&[phi1, phi2]).unwrap();
        assert!(conv.values().iter().all(CVector::is_zero));
    }

    #[test]
    fn tensor_convolution_errors() {
        let g = make_group(&[3]).unwrap();
        let phi = VectorMapping::zeros(g.clone(), MeasurePair::counting(&g), 2);
        assert!(tensor_convolve(std::slice::from_ref(&phi)).is_err());
        let other = VectorMapping::zeros(make_group(&[4]).unwrap(), MeasurePair::counting(&g), 2);
        assert!(tensor_convolve(&[phi.clone(), other]).is_err());
        let remeasured = phi.with_measure_pair(MeasurePair::conjugate(&g, 2.0).unwrap());
        assert!(tensor_convolve(&[phi, remeasured]).is_err());
    }

    #[test]
    fn z2_fourier() {
        let g = make_group(&[2]).unwrap();
        let (v, _) = z2_intro();
        let hat = fourier(&VectorMapping::new(g, v.clone()).unwrap()).unwrap();
        assert_eq!(hat.side(), Side::Dual);
        assert!(hat.value(0).sub(&v[0].add(&v[1]).unwrap()).unwrap().max_abs() < 1e-15);
        assert!(hat.value(1).sub(&v[0].sub(&v[1]).unwrap()).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn fourier_of_delta_and_constant() {
        let g = make_group(&[5]).unwrap();
        let v = cv(&[(1.0, -2.0), (0.5, 0.5)]);
        let mut values = vec![CVector::zeros(2); 5];
        values[0] = v.clone();
        let hat = fourier(&VectorMapping::new(g.clone(), values).unwrap()).unwrap();
        assert!(hat.values().iter().all(|x| x.sub(&v).unwrap().max_abs() < 1e-15));

        let hat = fourier(&VectorMapping::new(g, vec![v.clone(); 5]).unwrap()).unwrap();
        assert!(hat.value(0).sub(&v.scaled(c(5.0, 0.0))).unwrap().max_abs() < 1e-14);
        assert!(hat.values()[1..].iter().all(|x| x.max_abs() < 1e-14));
    }

    #[test]
    fn inverse_of_constant_is_delta() {
        let g = make_group(&[2, 3]).unwrap();
        let v = cv(&[(0.3, 0.0), (0.0, -1.0), (2.0, 2.0)]);
        let mut hat = VectorMapping::new(g, vec![v.clone(); 6]).unwrap();
        hat.side = Side::Dual;
        let back = inverse_fourier(&hat).unwrap();
        assert!(back.value(0).sub(&v).unwrap().max_abs() < 1e-14);
        assert!(back.values()[1..].iter().all(|x| x.max_abs() < 1e-14));
    }

    #[test]
    fn inverse_rejects_non_conjugate_measure() {
        let g = make_group(&[3]).unwrap();
        let bad = MeasurePair { primal_weight: 1.0, dual_weight: 1.0 };
        let m = VectorMapping::zeros(g.clone(), bad, 2);
        let hat = fourier(&m).unwrap();
        assert!(matches!(inverse_fourier(&hat), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn transform_direction_is_checked() {
        let g = make_group(&[3]).unwrap();
        let m = VectorMapping::zeros(g.clone(), MeasurePair::counting(&g), 2);
        assert!(inverse_fourier(&m).is_err());
        let hat = fourier(&m).unwrap();
        assert!(fourier(&hat).is_err());
        assert!(inverse_fourier(&hat).unwrap().values().iter().all(CVector::is_zero));
    }

    #[test]
    fn parseval_on_z6_with_weight_two() {
        let g = make_group(&[6]).unwrap();
        let measure = MeasurePair::conjugate(&g, 2.0).unwrap();
        let f = ScalarFunction::with_measure(
            g.clone(),
            measure,
            (0..6).map(|k| c((k as f64).sin(), (2.0 * k as f64).cos())).collect(),
        )
        .unwrap();
        let f2 = ScalarFunction::with_measure(
            g.clone(),
            measure,
            (0..6).map(|k| c(0.1 * k as f64, -0.3)).collect(),
        )
        .unwrap();
        // direct summations on both sides, dual weight 1/12
        let lhs: Complex64 = (0..6).map(|k| f.values()[k].conj() * f2.values()[k] * 2.0).sum();
        let hf = fourier_scalar(&f).unwrap();
        let hf2 = fourier_scalar(&f2).unwrap();
        let rhs: Complex64 = (0..6).map(|k| hf.values()[k].conj() * hf2.values()[k] / 12.0).sum();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn scalarize_examples() {
        let g = make_group(&[3]).unwrap();
        let values: Vec<CVector> = (0..3).map(|k| cv(&[(k as f64, 1.0), (-1.0, k as f64)])).collect();
        let m = VectorMapping::new(g, values.clone()).unwrap();
        let f = scalarize(&m, &CVector::basis(2, 1)).unwrap();
        for k in 0..3 {
            assert_eq!(f.values()[k], values[k].entries()[1]);
        }
        let f = scalarize(&m, &CVector::zeros(2)).unwrap();
        assert!(f.values().iter().all(|z| z.norm() == 0.0));
        assert!(scalarize(&m, &CVector::zeros(3)).is_err());
    }

    #[test]
    fn json_round_trip_keeps_measure_and_factors() {
        let g = make_group(&[2]).unwrap();
        let (v, w) = z2_intro();
        let measure = MeasurePair::conjugate(&g, 0.5).unwrap();
        let a = VectorMapping::with_measure(g.clone(), measure, v).unwrap();
        let b = VectorMapping::with_measure(g, measure, w).unwrap();
        let conv = tensor_convolve(&[a, b]).unwrap();
        let hat = fourier(&conv).unwrap();
        for m in [conv, hat] {
            let s = serde_json::to_string(&m).unwrap();
            let back: VectorMapping = serde_json::from_str(&s).unwrap();
            assert_eq!(back, m);
        }
        let plain = r#"{"group":{"moduli":[2]},"dim":1,"values":[[[1.0,0.0]],[[0.0,1.0]]]}"#;
        let m: VectorMapping = serde_json::from_str(plain).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), plain);
    }
}
