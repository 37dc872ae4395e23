#![allow(dead_code)]

//! Brute-force reference implementations used to check the library.
//!
//! Everything here works on plain `Vec`s, with characters taken straight from
//! `exp(2πi Σ χ_j g_j / n_j)` and convolutions expanded over all `m`-tuples.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use sepconv::{CVector, FiniteAbelianGroup, HermitianOperator, VectorMapping};

pub type Mat = Vec<Vec<Complex64>>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Residue tuples of `∏ Z_{n_j}`, last coordinate fastest.
pub fn elements(moduli: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in moduli {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |r| {
                    let mut e = prefix.clone();
                    e.push(r);
                    e
                })
            })
            .collect();
    }
    out
}

pub fn index_of(moduli: &[usize], e: &[usize]) -> usize {
    e.iter().zip(moduli).fold(0, |acc, (&r, &n)| acc * n + r)
}

pub fn character(moduli: &[usize], chi: &[usize], g: &[usize]) -> Complex64 {
    let phase: f64 = chi.iter().zip(g).zip(moduli).map(|((&a, &b), &n)| (a * b) as f64 / n as f64).sum();
    Complex64::from_polar(1.0, 2.0 * PI * phase)
}

/// `w Σ_g conj(γ_χ(g)) f(g)` for vector-valued `f`.
pub fn dft(moduli: &[usize], w: f64, f: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let els = elements(moduli);
    els.iter()
        .map(|chi| {
            let mut acc = vec![c(0.0); f[0].len()];
            for (g, fg) in els.iter().zip(f) {
                let k = character(moduli, chi, g).conj() * w;
                for (a, x) in acc.iter_mut().zip(fg) {
                    *a += k * x;
                }
            }
            acc
        })
        .collect()
}

pub fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// `(Φ^1 ⋆ ... ⋆ Φ^m)(g) = w^{m-1} Σ_{h_1 + ... + h_m = g} Φ^1(h_1) ⊗ ... ⊗ Φ^m(h_m)`.
pub fn tensor_convolution(moduli: &[usize], w: f64, phis: &[Vec<Vec<Complex64>>]) -> Vec<Vec<Complex64>> {
    let els = elements(moduli);
    let m = phis.len();
    let dim: usize = phis.iter().map(|p| p[0].len()).product();
    let mut out = vec![vec![c(0.0); dim]; els.len()];
    let mut tuple = vec![0usize; m];
    loop {
        let sum: Vec<usize> = (0..moduli.len())
            .map(|j| tuple.iter().map(|&t| els[t][j]).sum::<usize>() % moduli[j])
            .collect();
        let mut v = phis[0][tuple[0]].clone();
        for mu in 1..m {
            v = kron(&v, &phis[mu][tuple[mu]]);
        }
        for (o, x) in out[index_of(moduli, &sum)].iter_mut().zip(&v) {
            *o += x;
        }
        let mut k = m;
        loop {
            if k == 0 {
                let scale = c(w.powi(m as i32 - 1));
                return out.into_iter().map(|v| v.into_iter().map(|x| x * scale).collect()).collect();
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < els.len() {
                break;
            }
            tuple[k] = 0;
        }
    }
}

pub fn zeros(n: usize) -> Mat {
    vec![vec![c(0.0); n]; n]
}

pub fn add_projector(a: &mut Mat, v: &[Complex64], weight: f64) {
    for (i, vi) in v.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            a[i][j] += vi * vj.conj() * weight;
        }
    }
}

pub fn operator(w: f64, values: &[Vec<Complex64>]) -> Mat {
    let mut a = zeros(values[0].len());
    for v in values {
        add_projector(&mut a, v, w);
    }
    a
}

pub fn mat_of(op: &HermitianOperator) -> Mat {
    (0..op.dim()).map(|i| (0..op.dim()).map(|j| op.get(i, j)).collect()).collect()
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

pub fn relative_diff(a: &Mat, b: &Mat) -> f64 {
    max_diff(a, b) / max_abs(a).max(max_abs(b)).max(1e-300)
}

/// Reduced operator of `|v⟩⟨v|` on factor `keep` of a space with factor dims `dims`.
pub fn reduced(v: &[Complex64], dims: &[usize], keep: usize) -> Mat {
    let before: usize = dims[..keep].iter().product();
    let after: usize = dims[keep + 1..].iter().product();
    let d = dims[keep];
    let mut out = zeros(d);
    for a in 0..d {
        for b in 0..d {
            for x in 0..before {
                for y in 0..after {
                    out[a][b] += v[(x * d + a) * after + y] * v[(x * d + b) * after + y].conj();
                }
            }
        }
    }
    out
}

pub fn values_of(m: &VectorMapping) -> Vec<Vec<Complex64>> {
    m.values().iter().map(|v| v.entries().to_vec()).collect()
}

pub fn random_values<R: Rng>(rng: &mut R, order: usize, dim: usize) -> Vec<Vec<Complex64>> {
    (0..order)
        .map(|_| (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect()
}

pub fn mapping(group: &FiniteAbelianGroup, w: f64, values: &[Vec<Complex64>]) -> VectorMapping {
    let measure = sepconv::MeasurePair::conjugate(group, w).unwrap();
    let vs = values.iter().map(|v| CVector::new(v.clone())).collect();
    VectorMapping::with_measure(group.clone(), measure, vs).unwrap()
}

/// All invariant-factor decompositions `n_1 | n_2 | ... | n_k` of abelian groups of order
/// at most `max_order`, plus the non-canonical forms used elsewhere in the tests.
pub fn abelian_groups(max_order: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, order: usize, max_order: usize, out: &mut Vec<Vec<usize>>) {
        let last = prefix.last().copied().unwrap_or(1);
        let mut n = if prefix.is_empty() { 2 } else { last };
        while order * n <= max_order {
            if n % last == 0 {
                prefix.push(n);
                out.push(prefix.clone());
                extend(prefix, order * n, max_order, out);
                prefix.pop();
            }
            n += 1;
        }
    }
    let mut out = vec![vec![1]];
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.extend([vec![2, 3], vec![3, 2], vec![2, 3, 5], vec![4, 2], vec![3, 4]]);
    out
}

/// Groups, factor counts and dims swept by the random-instance criteria.
pub const SWEEP_GROUPS: [&[usize]; 6] = [&[2], &[3], &[4], &[2, 2], &[6], &[2, 3]];
