//! Closed-form output states and success probabilities for the class-1
//! family, written out element by element.
//!
//! These expressions were derived independently of the Kraus pipelines and
//! exist to cross-check them (and vice versa): the two routes must agree
//! entrywise to 1e-12. Only class-1 states have closed forms here; class-2
//! behaviour is exercised numerically through the pipelines.
//!
//! Element bookkeeping: |ij> lives at composite index 3*i + j, so the class-1
//! support is {0, 4, 8} = {|00>, |11>, |22>}. Decay products land on
//! {1, 3} = {|01>, |10>} and {2, 6} = {|02>, |20>}. Each protected element
//! carries the amplitude-level reversal factors sqrt((1-p_r)(1-q_r)),
//! sqrt(1-q_r), sqrt(1-p_r) for levels |0>, |1>, |2>. A measurement branch is
//! normalized once, globally, by its total trace; the success probability is
//! exactly that trace.

use num_complex::Complex64;

use crate::channels::ChannelParams;
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::protection::{ProtectionParams, ZERO_PROBABILITY_TOL};
use crate::states::StateAmplitudes;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Class-1 state after the correlated damping channel (trace preserving, no
/// post-selection).
pub fn analytic_rho1_cad(amps: &StateAmplitudes, ch: &ChannelParams) -> ComplexMatrix {
    let (a, b, g) = (amps.alpha(), amps.beta(), amps.gamma());
    let (b2, g2) = (b.norm_sqr(), g.norm_sqr());
    let (d1, d2, mu) = (ch.d1, ch.d2, ch.mu);
    let (mb, db1, db2) = (1.0 - mu, 1.0 - d1, 1.0 - d2);

    let mut rho = ComplexMatrix::zeros(9);
    rho[(0, 0)] = real(a * a + b2 * (mb * d1 * d1 + mu * d1) + g2 * (mb * d2 * d2 + mu * d2));
    rho[(0, 4)] = b.conj() * a * (mb * db1 + mu * db1.sqrt());
    rho[(4, 0)] = rho[(0, 4)].conj();
    rho[(0, 8)] = g.conj() * a * (mb * db2 + mu * db2.sqrt());
    rho[(8, 0)] = rho[(0, 8)].conj();
    rho[(1, 1)] = real(b2 * mb * db1 * d1);
    rho[(3, 3)] = rho[(1, 1)];
    rho[(2, 2)] = real(g2 * mb * db2 * d2);
    rho[(6, 6)] = rho[(2, 2)];
    rho[(4, 4)] = real(b2 * (mb * db1 * db1 + mu * db1));
    rho[(4, 8)] = b * g.conj() * (mb * db1 * db2 + mu * (db1 * db2).sqrt());
    rho[(8, 4)] = rho[(4, 8)].conj();
    rho[(8, 8)] = real(g2 * (mb * db2 * db2 + mu * db2));
    rho
}

/// Unnormalized elements of the WM + channel + reversal branch for class 1.
fn wm_branch_unnormalized(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> ComplexMatrix {
    let (a, b, g) = (amps.alpha(), amps.beta(), amps.gamma());
    let (b2, g2) = (b.norm_sqr(), g.norm_sqr());
    let (d1, d2, mu) = (ch.d1, ch.d2, ch.mu);
    let (mb, db1, db2) = (1.0 - mu, 1.0 - d1, 1.0 - d2);
    let (pb, qb) = (1.0 - prot.p, 1.0 - prot.q);
    let (prb, qrb) = (1.0 - prot.p_r, 1.0 - prot.q_r);

    let mut sig = ComplexMatrix::zeros(9);
    sig[(0, 0)] = real(
        (a * a + b2 * pb * pb * (mb * d1 * d1 + mu * d1) + g2 * qb * qb * (mb * d2 * d2 + mu * d2))
            * (prb * qrb) * (prb * qrb),
    );
    sig[(0, 4)] = b.conj() * a * (pb * (mb * db1 + mu * db1.sqrt()) * prb * qrb * qrb);
    sig[(4, 0)] = sig[(0, 4)].conj();
    sig[(0, 8)] = g.conj() * a * (qb * (mb * db2 + mu * db2.sqrt()) * prb * prb * qrb);
    sig[(8, 0)] = sig[(0, 8)].conj();
    sig[(1, 1)] = real(b2 * pb * pb * mb * db1 * d1 * prb * qrb * qrb);
    sig[(3, 3)] = sig[(1, 1)];
    sig[(2, 2)] = real(g2 * qb * qb * mb * db2 * d2 * prb * prb * qrb);
    sig[(6, 6)] = sig[(2, 2)];
    sig[(4, 4)] = real(b2 * pb * pb * (mb * db1 * db1 + mu * db1) * qrb * qrb);
    sig[(4, 8)] =
        b * g.conj() * (pb * qb * (mb * db1 * db2 + mu * (db1 * db2).sqrt()) * prb * qrb);
    sig[(8, 4)] = sig[(4, 8)].conj();
    sig[(8, 8)] = real(g2 * qb * qb * (mb * db2 * db2 + mu * db2) * prb * prb);
    sig
}

/// Closed-form success probability of the WM protocol on class 1: the trace
/// of the unnormalized branch, factored per initial-state component.
pub fn wm_success_probability(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> f64 {
    let (a, b2, g2) = (
        amps.alpha(),
        amps.beta().norm_sqr(),
        amps.gamma().norm_sqr(),
    );
    let (d1, d2, mu) = (ch.d1, ch.d2, ch.mu);
    let mb = 1.0 - mu;
    let (pb, qb) = (1.0 - prot.p, 1.0 - prot.q);
    let (pr, qr) = (prot.p_r, prot.q_r);
    let (prb, qrb) = (1.0 - pr, 1.0 - qr);

    a * a * prb * prb * qrb * qrb
        + b2 * pb * pb * qrb * qrb
            * (1.0 + mb * d1 * d1 * pr * pr - 2.0 * mb * d1 * pr - mu * d1 * (2.0 * pr - pr * pr))
        + g2 * qb * qb * prb * prb
            * (1.0 + mb * d2 * d2 * qr * qr - 2.0 * mb * d2 * qr - mu * d2 * (2.0 * qr - qr * qr))
}

/// Class-1 output of the WM + reversal protocol: normalized state and the
/// success probability (the branch trace before normalization).
pub fn analytic_rho1_wm(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> Result<(ComplexMatrix, f64)> {
    let sig = wm_branch_unnormalized(amps, prot, ch);
    normalize_branch(sig)
}

/// Unnormalized elements of the EAM no-click branch followed by reversal,
/// for class 1. Structurally the no-decay sub-block of the WM branch: the
/// click branches are discarded rather than collapsed, so nothing ever lands
/// on the single-decay kets.
fn eam_branch_unnormalized(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> ComplexMatrix {
    let (a, b, g) = (amps.alpha(), amps.beta(), amps.gamma());
    let (b2, g2) = (b.norm_sqr(), g.norm_sqr());
    let (d1, d2, mu) = (ch.d1, ch.d2, ch.mu);
    let (mb, db1, db2) = (1.0 - mu, 1.0 - d1, 1.0 - d2);
    let (prb, qrb) = (1.0 - prot.p_r, 1.0 - prot.q_r);

    let mut sig = ComplexMatrix::zeros(9);
    sig[(0, 0)] = real(a * a * (prb * qrb) * (prb * qrb));
    sig[(0, 4)] = b.conj() * a * ((mb * db1 + mu * db1.sqrt()) * prb * qrb * qrb);
    sig[(4, 0)] = sig[(0, 4)].conj();
    sig[(0, 8)] = g.conj() * a * ((mb * db2 + mu * db2.sqrt()) * prb * prb * qrb);
    sig[(8, 0)] = sig[(0, 8)].conj();
    sig[(4, 4)] = real(b2 * (mb * db1 * db1 + mu * db1) * qrb * qrb);
    sig[(4, 8)] = b * g.conj() * ((mb * db1 * db2 + mu * (db1 * db2).sqrt()) * prb * qrb);
    sig[(8, 4)] = sig[(4, 8)].conj();
    sig[(8, 8)] = real(g2 * (mb * db2 * db2 + mu * db2) * prb * prb);
    sig
}

/// Closed-form success probability of the EAM protocol on class 1: the trace
/// of the no-click branch after reversal.
pub fn eam_success_probability(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> f64 {
    let (a, b2, g2) = (
        amps.alpha(),
        amps.beta().norm_sqr(),
        amps.gamma().norm_sqr(),
    );
    let (d1, d2, mu) = (ch.d1, ch.d2, ch.mu);
    let (mb, db1, db2) = (1.0 - mu, 1.0 - d1, 1.0 - d2);
    let (prb, qrb) = (1.0 - prot.p_r, 1.0 - prot.q_r);

    a * a * prb * prb * qrb * qrb
        + b2 * qrb * qrb * (mb * db1 * db1 + mu * db1)
        + g2 * prb * prb * (mb * db2 * db2 + mu * db2)
}

/// Class-1 output of the EAM + reversal protocol: normalized state and the
/// success probability.
pub fn analytic_rho1_eam(
    amps: &StateAmplitudes,
    prot: &ProtectionParams,
    ch: &ChannelParams,
) -> Result<(ComplexMatrix, f64)> {
    let sig = eam_branch_unnormalized(amps, prot, ch);
    normalize_branch(sig)
}

fn normalize_branch(sig: ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let probability = sig.trace().re;
    if probability < ZERO_PROBABILITY_TOL {
        return Err(crate::error::Error::ZeroProbability {
            probability,
            threshold: ZERO_PROBABILITY_TOL,
        });
    }
    Ok((sig.scaled(1.0 / probability), probability))
}
