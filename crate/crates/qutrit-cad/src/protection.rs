//! Entanglement protection by local measurements: weak measurement (WM) and
//! environment-assisted measurement (EAM), each followed by quantum
//! measurement reversal (QMR).
//!
//! Both protocols are probabilistic: the output density matrix is conditioned
//! on all measurements succeeding, and [`ProtocolOutcome::probability`] is
//! the trace of the state before normalization (the chance of that success).
//! All operations are local, so neither protocol can raise negativity above
//! its initial value.

use num_complex::Complex64;

use crate::channels::{ad_kraus_single, cad_apply, fcad_kraus, ChannelParams};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};

/// Post-selection probabilities below this leave the conditional state
/// undefined and are reported as [`Error::ZeroProbability`].
pub const ZERO_PROBABILITY_TOL: f64 = 1e-12;

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Measurement strengths: (p, q) for the up-front weak measurement and
/// (p_r, q_r) for the reversal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtectionParams {
    pub p: f64,
    pub q: f64,
    pub p_r: f64,
    pub q_r: f64,
}

impl ProtectionParams {
    /// All four strengths must lie in [0, 1].
    pub fn new(p: f64, q: f64, p_r: f64, q_r: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("q", q)?;
        check_unit("p_r", p_r)?;
        check_unit("q_r", q_r)?;
        Ok(ProtectionParams { p, q, p_r, q_r })
    }
}

/// A protocol's conditional output state together with the probability of the
/// post-selected branch.
#[derive(Clone, Debug)]
pub struct ProtocolOutcome {
    pub state: ComplexMatrix,
    pub probability: f64,
}

/// Single-qutrit weak measurement (null-result branch):
/// diag(1, sqrt(1-p), sqrt(1-q)).
pub fn wm_operator(p: f64, q: f64) -> Result<ComplexMatrix> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    Ok(ComplexMatrix::from_diag(&[
        1.0,
        (1.0 - p).sqrt(),
        (1.0 - q).sqrt(),
    ]))
}

/// Single-qutrit measurement reversal:
/// diag(sqrt((1-p_r)(1-q_r)), sqrt(1-q_r), sqrt(1-p_r)).
pub fn qmr_operator(p_r: f64, q_r: f64) -> Result<ComplexMatrix> {
    check_unit("p_r", p_r)?;
    check_unit("q_r", q_r)?;
    Ok(ComplexMatrix::from_diag(&[
        ((1.0 - p_r) * (1.0 - q_r)).sqrt(),
        (1.0 - q_r).sqrt(),
        (1.0 - p_r).sqrt(),
    ]))
}

/// Trit flip T = |0><2| + |1><0| + |2><1| (the cyclic level permutation
/// |0> -> |1> -> |2> -> |0>).
pub fn trit_flip() -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(3);
    t[(0, 2)] = Complex64::ONE;
    t[(1, 0)] = Complex64::ONE;
    t[(2, 1)] = Complex64::ONE;
    t
}

/// The reversal operator built from experimentally friendly pieces: the
/// five-step sequence T, WM(p_r, q_r), T, WM(p_r, q_r), T.
///
/// Chasing each basis vector through the permutation cycle shows the product
/// is exactly diag(sqrt(p_r_bar q_r_bar), sqrt(q_r_bar), sqrt(p_r_bar)),
/// i.e. [`qmr_operator`].
pub fn qmr_via_flips(p_r: f64, q_r: f64) -> Result<ComplexMatrix> {
    let t = trit_flip();
    let w = wm_operator(p_r, q_r)?;
    Ok(&(&(&(&t * &w) * &t) * &w) * &t)
}

/// Reversal strengths tuned to undo WM plus damping, independently of the
/// initial state: p_r = 1 - (1-q)(1-d2), q_r = 1 - (1-p)(1-d1). Note the
/// cross-pairing: p_r picks up (q, d2) and q_r picks up (p, d1).
pub fn optimal_qmr_wm(p: f64, q: f64, d1: f64, d2: f64) -> Result<(f64, f64)> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    check_unit("d1", d1)?;
    check_unit("d2", d2)?;
    Ok((1.0 - (1.0 - q) * (1.0 - d2), 1.0 - (1.0 - p) * (1.0 - d1)))
}

/// Reversal strengths for the EAM protocol: p_r = d1, q_r = d2.
pub fn optimal_qmr_eam(d1: f64, d2: f64) -> Result<(f64, f64)> {
    check_unit("d1", d1)?;
    check_unit("d2", d2)?;
    Ok((d1, d2))
}

/// Normalize a post-selected branch, reporting its success probability, or
/// fail if the branch has numerically vanished.
fn post_select(unnormalized: ComplexMatrix) -> Result<ProtocolOutcome> {
    let probability = unnormalized.trace().re;
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbability {
            probability,
            threshold: ZERO_PROBABILITY_TOL,
        });
    }
    Ok(ProtocolOutcome {
        state: unnormalized.scaled(1.0 / probability),
        probability,
    })
}

/// WM + QMR protection: weak-measure both qutrits, send them through the
/// correlated damping channel, then reverse. `rho0` must be a valid density
/// matrix; both qutrits receive identical local operations.
pub fn wm_qmr_pipeline(
    rho0: &ComplexMatrix,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> Result<ProtocolOutcome> {
    let m_wm = {
        let e = wm_operator(prot.p, prot.q)?;
        kron(&e, &e)
    };
    let m_r = {
        let e = qmr_operator(prot.p_r, prot.q_r)?;
        kron(&e, &e)
    };
    let measured = &(&m_wm * rho0) * &m_wm.dagger();
    let damped = cad_apply(&measured, ch)?;
    post_select(&(&m_r * &damped) * &m_r.dagger())
}

/// EAM + QMR protection: monitor the environment, keep only the no-click
/// branches of both the uncorrelated and correlated decay paths, then
/// reverse. The WM strengths in `prot` are not used.
pub fn eam_qmr_pipeline(
    rho0: &ComplexMatrix,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> Result<ProtocolOutcome> {
    let e00 = {
        let e0 = &ad_kraus_single(ch.d1, ch.d2)?.ops()[0].clone();
        kron(e0, e0)
    };
    let a00 = fcad_kraus(ch.d1, ch.d2)?.ops()[0].clone();
    let no_click = &(&(&e00 * rho0) * &e00.dagger()).scaled(1.0 - ch.mu)
        + &(&(&a00 * rho0) * &a00.dagger()).scaled(ch.mu);
    let m_r = {
        let e = qmr_operator(prot.p_r, prot.q_r)?;
        kron(&e, &e)
    };
    post_select(&(&m_r * &no_click) * &m_r.dagger())
}
