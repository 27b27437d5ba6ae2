//! One-excitation XX spin chains as Jacobi matrices.
//!
//! A chain on sites `0..=N` has on-site fields `B_0..B_N` and positive
//! couplings `J_1..J_N`, stored zero-based: `couplings()[k]` couples sites
//! `k` and `k + 1`. Units have `ħ = 1` and evolution is `e^{+itJ}`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::ChainState;
use crate::tridiag::{symmetric_tridiagonal_eigen, Eigensystem};

/// Relative tolerance used by [`verify_pst`] when none is given.
pub const DEFAULT_PST_TOL: f64 = 1e-8;
/// Cap on the odd gap multiplier `2m + 1` searched by [`verify_pst`].
pub const DEFAULT_MAX_ODD: u64 = 99;

/// A Jacobi matrix: diagonal fields and strictly positive couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiChain {
    diagonal: Vec<f64>,
    couplings: Vec<f64>,
}

impl JacobiChain {
    pub fn new(diagonal: Vec<f64>, couplings: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::EmptyChain);
        }
        if diagonal.len() != couplings.len() + 1 {
            return Err(Error::ChainLengthMismatch {
                diagonal: diagonal.len(),
                couplings: couplings.len(),
            });
        }
        if let Some(&value) = diagonal.iter().find(|b| !b.is_finite()) {
            return Err(Error::NonFinite {
                what: "diagonal",
                value,
            });
        }
        for (index, &value) in couplings.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    what: "couplings",
                    value,
                });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveCoupling { index, value });
            }
        }
        Ok(JacobiChain {
            diagonal,
            couplings,
        })
    }

    /// Chain length `N` (number of couplings).
    pub fn n(&self) -> usize {
        self.couplings.len()
    }

    /// Number of sites, `N + 1`.
    pub fn sites(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// Largest absolute entry, at least 1. Scales absolute tolerances.
    pub fn scale(&self) -> f64 {
        self.diagonal
            .iter()
            .chain(&self.couplings)
            .fold(1.0f64, |m, x| m.max(x.abs()))
    }

    /// Palindromic fields and couplings, i.e. `J = RJR` for the reflection `R`.
    pub fn is_mirror_symmetric(&self, tol: f64) -> bool {
        let b = &self.diagonal;
        let j = &self.couplings;
        b.iter().zip(b.iter().rev()).all(|(x, y)| (x - y).abs() <= tol)
            && j.iter().zip(j.iter().rev()).all(|(x, y)| (x - y).abs() <= tol)
    }

    pub fn eigensystem(&self) -> Result<Eigensystem> {
        symmetric_tridiagonal_eigen(&self.diagonal, &self.couplings)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.sites();
        DMatrix::from_fn(n, n, |i, k| {
            if i == k {
                self.diagonal[i]
            } else if i + 1 == k {
                self.couplings[i]
            } else if k + 1 == i {
                self.couplings[k]
            } else {
                0.0
            }
        })
    }
}

/// The Krawtchouk chain `J_n = sqrt(n (N + 1 - n)) / 2`, `B = 0`, whose
/// spectrum is `k - N/2` and which transfers perfectly at `T = π`.
pub fn krawtchouk_chain(n: usize) -> Result<JacobiChain> {
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let couplings = (1..=n)
        .map(|k| ((k * (n + 1 - k)) as f64).sqrt() / 2.0)
        .collect();
    JacobiChain::new(vec![0.0; n + 1], couplings)
}

/// Cached spectral decomposition of a chain for repeated evolution.
#[derive(Debug, Clone)]
pub struct ChainPropagator {
    eigen: Eigensystem,
}

impl ChainPropagator {
    pub fn new(chain: &JacobiChain) -> Result<Self> {
        Ok(ChainPropagator {
            eigen: chain.eigensystem()?,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn sites(&self) -> usize {
        self.eigen.values.len()
    }

    /// `e^{itJ} ψ`.
    pub fn evolve(&self, psi: &ChainState, t: f64) -> ChainState {
        let n = self.sites();
        assert_eq!(psi.len(), n, "chain state length");
        let v = &self.eigen.vectors;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let overlap: Complex64 = (0..n).map(|i| psi[i] * v[(i, k)]).sum();
            let c = overlap * Complex64::from_polar(1.0, t * self.eigen.values[k]);
            for (i, o) in out.iter_mut().enumerate() {
                *o += c * v[(i, k)];
            }
        }
        ChainState::new(out)
    }

    /// `<m| e^{itJ} |n>`.
    pub fn amplitude(&self, m: usize, n: usize, t: f64) -> Complex64 {
        let v = &self.eigen.vectors;
        self.eigen
            .values
            .iter()
            .enumerate()
            .map(|(k, &lambda)| Complex64::from_polar(v[(m, k)] * v[(n, k)], t * lambda))
            .sum()
    }
}

/// `e^{itJ}|0>` by spectral decomposition.
pub fn evolve_chain(chain: &JacobiChain, t: f64) -> Result<ChainState> {
    let p = ChainPropagator::new(chain)?;
    Ok(p.evolve(&ChainState::basis(chain.sites(), 0), t))
}

/// Outcome of the gap-criterion certification of a chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstReport {
    pub eigenvalues: Vec<f64>,
    pub gaps: Vec<f64>,
    pub odd_multipliers: Option<Vec<u64>>,
    pub transfer_time: Option<f64>,
    pub phase: Option<f64>,
    pub mirror_symmetric: bool,
    pub pst: bool,
    /// Relative tolerance the report was produced with.
    #[serde(skip)]
    pub tolerance: f64,
    /// `|<N| e^{iTJ} |0>|` at the fitted transfer time.
    #[serde(skip)]
    pub transfer_fidelity: Option<f64>,
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

/// Finds the smallest odd `p_min <= max_odd` such that every gap ratio
/// `gap_k / g_min` is within `tol` (relative) of an odd `p_k / p_min` with
/// `p_k <= max_odd`. Returns `(p_min, p_k)`.
fn fit_odd_ratios(gaps: &[f64], tol: f64, max_odd: u64) -> Option<(u64, Vec<u64>)> {
    let g_min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    if g_min.is_nan() || g_min <= 0.0 {
        return None;
    }
    'outer: for p_min in (1..=max_odd).step_by(2) {
        let mut odd = Vec::with_capacity(gaps.len());
        for &g in gaps {
            let target = g / g_min * p_min as f64;
            let p = target.round();
            if p < 1.0 || p > max_odd as f64 || (target - p).abs() > tol * target {
                continue 'outer;
            }
            let p = p as u64;
            if p.is_multiple_of(2) {
                continue 'outer;
            }
            odd.push(p);
        }
        return Some((p_min, odd));
    }
    None
}

/// Certifies perfect state transfer from site 0 to site N.
///
/// Requires mirror symmetry and consecutive eigenvalue gaps that are odd
/// multiples of a common `π / T`. The fitted `T` is the smallest such time
/// and is confirmed by evaluating `|<N|e^{iTJ}|0>| >= 1 - tol`.
pub fn verify_pst(chain: &JacobiChain, tol: f64, max_odd: u64) -> Result<PstReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if max_odd < 1 {
        return Err(Error::InvalidArgument("max_odd must be at least 1".into()));
    }
    let propagator = ChainPropagator::new(chain)?;
    let eigenvalues = propagator.eigenvalues().to_vec();
    let gaps: Vec<f64> = eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
    let mirror_symmetric = chain.is_mirror_symmetric(tol * chain.scale());

    let mut report = PstReport {
        eigenvalues,
        gaps,
        odd_multipliers: None,
        transfer_time: None,
        phase: None,
        mirror_symmetric,
        pst: false,
        tolerance: tol,
        transfer_fidelity: None,
        diagnostics: Vec::new(),
    };

    if chain.n() == 0 {
        report
            .diagnostics
            .push("single-site chain has no distinct end to transfer to".into());
        return Ok(report);
    }
    if !mirror_symmetric {
        report.diagnostics.push("chain is not mirror symmetric".into());
    }

    let Some((p_min, odd)) = fit_odd_ratios(&report.gaps, tol, max_odd) else {
        report.diagnostics.push(format!(
            "gaps are not odd multiples of a common spacing with 2m+1 <= {max_odd}"
        ));
        return Ok(report);
    };
    let g_min = report.gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let t = p_min as f64 * PI / g_min;
    let amplitude = propagator.amplitude(chain.n(), 0, t);
    report.transfer_time = Some(t);
    report.phase = Some(amplitude.arg());
    report.transfer_fidelity = Some(amplitude.norm());
    report.odd_multipliers = Some(odd.iter().map(|p| (p - 1) / 2).collect());

    let reaches_end = amplitude.norm() >= 1.0 - tol;
    if mirror_symmetric && !reaches_end {
        report.diagnostics.push(format!(
            "gap fit succeeded but |<N|exp(iTJ)|0>| = {} at T = {t}",
            amplitude.norm()
        ));
    }
    report.pst = mirror_symmetric && reaches_end;
    Ok(report)
}
