//! Global numerical tolerance.
//!
//! Every approximate comparison in the crate goes through [`epsilon`]. The
//! default is 1e-9; it can be overridden process-wide either by the
//! `CP1GRAFT_EPS` environment variable (read once, on first use) or
//! programmatically via [`set_epsilon`].

use std::sync::atomic::{AtomicU64, Ordering};

/// Default comparison tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-9;

// 0u64 is the bit pattern of 0.0, which is never a valid tolerance, so it
// doubles as the "not yet initialised" sentinel.
static EPS_BITS: AtomicU64 = AtomicU64::new(0);

fn init_from_env() -> f64 {
    let eps = std::env::var("CP1GRAFT_EPS")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|e| e.is_finite() && *e > 0.0)
        .unwrap_or(DEFAULT_EPSILON);
    EPS_BITS.store(eps.to_bits(), Ordering::Relaxed);
    eps
}

/// The current global tolerance.
pub fn epsilon() -> f64 {
    let bits = EPS_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        init_from_env()
    } else {
        f64::from_bits(bits)
    }
}

/// Override the global tolerance. Panics on a non-positive or non-finite value.
pub fn set_epsilon(eps: f64) {
    assert!(
        eps.is_finite() && eps > 0.0,
        "tolerance must be a positive finite number, got {eps}"
    );
    EPS_BITS.store(eps.to_bits(), Ordering::Relaxed);
}
