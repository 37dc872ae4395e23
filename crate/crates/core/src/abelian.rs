//! Finite abelian groups written as products of cyclic groups `Z_{n_1} x ... x Z_{n_k}`.
//!
//! A finite abelian group is self-dual, so the dual group reuses the same moduli and
//! characters are addressed by ordinary [`GroupElement`]s. The pairing between a
//! character `chi` and an element `g` is `prod_j exp(2 pi i chi_j g_j / n_j)`.
//!
//! Elements are stored in arrays by their mixed-radix rank with the last factor
//! varying fastest, which is also the order produced by [`FiniteAbelianGroup::elements`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupWire", into = "GroupWire")]
pub struct FiniteAbelianGroup {
    moduli: Vec<usize>,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    moduli: Vec<i64>,
}

impl TryFrom<GroupWire> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(wire: GroupWire) -> Result<Self> {
        FiniteAbelianGroup::from_signed(&wire.moduli)
    }
}

impl From<FiniteAbelianGroup> for GroupWire {
    fn from(group: FiniteAbelianGroup) -> Self {
        GroupWire { moduli: group.moduli.iter().map(|&n| n as i64).collect() }
    }
}

/// A tuple of residues, one per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<usize>);

impl GroupElement {
    pub fn new(residues: Vec<usize>) -> Self {
        GroupElement(residues)
    }

    pub fn residues(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for GroupElement {
    fn from(residues: Vec<usize>) -> Self {
        GroupElement(residues)
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: &[usize]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("moduli list is empty".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("modulus {bad} is not positive")));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        Ok(FiniteAbelianGroup { moduli: moduli.to_vec(), order })
    }

    /// Like [`FiniteAbelianGroup::new`] but accepts user-facing signed input.
    pub fn from_signed(moduli: &[i64]) -> Result<Self> {
        let mut checked = Vec::with_capacity(moduli.len());
        for &n in moduli {
            if n <= 0 {
                return Err(Error::InvalidGroup(format!("modulus {n} is not positive")));
            }
            checked.push(n as usize);
        }
        Self::new(&checked)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_factors(&self) -> usize {
        self.moduli.len()
    }

    /// The Pontryagin dual, identified with `self` through the standard pairing.
    pub fn dual(&self) -> FiniteAbelianGroup {
        self.clone()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = g.0.len() == self.moduli.len()
            && g.0.iter().zip(&self.moduli).all(|(&r, &n)| r < n);
        if ok {
            Ok(())
        } else {
            Err(Error::ElementMismatch { residues: g.0.clone(), moduli: self.moduli.clone() })
        }
    }

    /// Reduces arbitrary integers into an element of the group.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.moduli.len() {
            return Err(Error::ElementMismatch {
                residues: residues.iter().map(|&r| r.unsigned_abs() as usize).collect(),
                moduli: self.moduli.clone(),
            });
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as usize)
                .collect(),
        ))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter().zip(&h.0).zip(&self.moduli).map(|((&a, &b), &n)| (a + b) % n).collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(g.0.iter().zip(&self.moduli).map(|(&a, &n)| (n - a) % n).collect()))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.add(g, &self.neg(h)?)
    }

    /// Mixed-radix rank, last factor fastest.
    pub fn rank(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.0.iter().zip(&self.moduli).fold(0, |acc, (&r, &n)| acc * n + r))
    }

    pub fn unrank(&self, mut rank: usize) -> GroupElement {
        debug_assert!(rank < self.order);
        let mut residues = vec![0; self.moduli.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = rank % n;
            rank /= n;
        }
        GroupElement(residues)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |r| self.unrank(r))
    }

    /// Rank of `g_rank - h_rank`, working directly on ranks.
    pub(crate) fn sub_ranks(&self, g_rank: usize, h_rank: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        let (mut g, mut h) = (g_rank, h_rank);
        for &n in self.moduli.iter().rev() {
            let d = (g % n + n - h % n) % n;
            out += d * stride;
            stride *= n;
            g /= n;
            h /= n;
        }
        out
    }

    /// Phase of the pairing as a fraction of a full turn, reduced to `[0, 1)`.
    pub(crate) fn pairing_turns(&self, chi_rank: usize, g_rank: usize) -> f64 {
        let (mut chi, mut g) = (chi_rank, g_rank);
        let mut turns = 0.0;
        for &n in self.moduli.iter().rev() {
            let product = ((chi % n) * (g % n)) % n;
            turns += product as f64 / n as f64;
            chi /= n;
            g /= n;
        }
        turns.fract()
    }

    pub(crate) fn character_by_rank(&self, chi_rank: usize, g_rank: usize) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.pairing_turns(chi_rank, g_rank))
    }

    /// `gamma_chi(g)`; `chi` is an element of the dual, i.e. of `self.dual()`.
    pub fn character_value(&self, chi: &GroupElement, g: &GroupElement) -> Result<Complex64> {
        let chi_rank = self.rank(chi)?;
        let g_rank = self.rank(g)?;
        Ok(self.character_by_rank(chi_rank, g_rank))
    }
}

/// Weights of a single point of `G` and of its dual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurePair {
    pub primal_weight: f64,
    pub dual_weight: f64,
}

impl MeasurePair {
    /// Counting measure on `G` and its conjugate `1/|G|` on the dual.
    pub fn counting(group: &FiniteAbelianGroup) -> Self {
        MeasurePair { primal_weight: 1.0, dual_weight: 1.0 / group.order() as f64 }
    }

    /// The dual weight is the unique one for which Parseval holds: `1 / (w |G|)`.
    pub fn conjugate(group: &FiniteAbelianGroup, primal_weight: f64) -> Result<Self> {
        if !(primal_weight > 0.0 && primal_weight.is_finite()) {
            return Err(Error::InvalidMeasure(format!(
                "primal weight must be positive and finite, got {primal_weight}"
            )));
        }
        Ok(MeasurePair {
            primal_weight,
            dual_weight: 1.0 / (primal_weight * group.order() as f64),
        })
    }
}

pub fn make_group(moduli: &[usize]) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(moduli)
}

pub fn conjugate_measures(group: &FiniteAbelianGroup, primal_weight: f64) -> Result<MeasurePair> {
    MeasurePair::conjugate(group, primal_weight)
}
