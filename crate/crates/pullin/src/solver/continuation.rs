//! Voltage continuation: march the applied voltage up from a stable
//! state, then bisect the first bad bracket down to the requested
//! resolution.
//!
//! The engine is generic over the state being continued, so the same
//! logic drives both the finite-element beam and the one-DOF lumped
//! transducer. A voltage counts as *good* when its equilibrium solve
//! converged, nothing touched the collapse floor, and the tangent at
//! the converged point is positive definite; pull-in is the first
//! voltage where any of the three fails. Every step warm-starts from
//! the last good state, which keeps Newton on the stable branch right
//! up to the fold.

use super::{SolverConfig, SolverError};

/// One evaluated voltage during a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// Applied voltage (V).
    pub voltage: f64,
    /// Gap-closing deflection at the reference point (m).
    pub deflection: f64,
    /// Smallest gap seen anywhere (m).
    pub min_gap: f64,
    /// Newton iterations spent.
    pub iterations: usize,
    /// Whether a stable equilibrium was found at this voltage.
    pub converged: bool,
}

/// A resolved pull-in event.
#[derive(Debug, Clone)]
pub struct PullIn<S> {
    /// Highest voltage where a stable equilibrium was found.
    pub v_low: f64,
    /// Lowest voltage found unstable; `v_high - v_low` is within the
    /// bracket tolerance.
    pub v_high: f64,
    /// Reported pull-in voltage, the bracket midpoint.
    pub v_pi: f64,
    /// Converged state at `v_low`, the last one before the jump.
    pub state_at_v_low: S,
    /// Every voltage evaluated, in evaluation order: the upward march
    /// first, then the bisection probes.
    pub trace: Vec<SweepRecord>,
}

/// What a voltage sweep found.
#[derive(Debug, Clone)]
pub enum SweepOutcome<S> {
    /// The structure went unstable below `v_max`.
    PullIn(PullIn<S>),
    /// Still stable at `v_max`.
    NoPullIn {
        v_max: f64,
        /// Converged state at `v_max`.
        state: S,
        trace: Vec<SweepRecord>,
    },
}

impl<S> SweepOutcome<S> {
    pub fn trace(&self) -> &[SweepRecord] {
        match self {
            SweepOutcome::PullIn(p) => &p.trace,
            SweepOutcome::NoPullIn { trace, .. } => trace,
        }
    }

    pub fn pull_in(&self) -> Option<&PullIn<S>> {
        match self {
            SweepOutcome::PullIn(p) => Some(p),
            SweepOutcome::NoPullIn { .. } => None,
        }
    }
}

/// Result of one equilibrium evaluation, as the engine sees it.
pub(crate) struct StepEval<S> {
    /// Converged to a stable point: keep marching past it.
    pub ok: bool,
    /// The converged state, when there is one to warm-start from.
    pub state: Option<S>,
    pub record: SweepRecord,
}

pub(crate) fn run_sweep<S>(
    cfg: &SolverConfig,
    start: S,
    mut eval: impl FnMut(f64, &S) -> Result<StepEval<S>, SolverError>,
) -> Result<SweepOutcome<S>, SolverError> {
    let mut trace = Vec::new();

    let first = eval(cfg.v_start, &start)?;
    trace.push(first.record);
    if !first.ok {
        return Err(SolverError::NotStableAtStart { v: cfg.v_start });
    }
    let mut v_low = cfg.v_start;
    let mut s_low = first.state.expect("a good step carries its state");

    // March upward until something gives or v_max is reached.
    let mut v_high = loop {
        if v_low >= cfg.v_max {
            return Ok(SweepOutcome::NoPullIn {
                v_max: cfg.v_max,
                state: s_low,
                trace,
            });
        }
        let v = (v_low + cfg.dv_initial).min(cfg.v_max);
        let e = eval(v, &s_low)?;
        trace.push(e.record);
        if e.ok {
            v_low = v;
            s_low = e.state.expect("a good step carries its state");
        } else {
            break v;
        }
    };

    // Bisect the bracket down to the requested voltage resolution.
    while v_high - v_low > cfg.vpi_bracket_tol {
        let mid = 0.5 * (v_low + v_high);
        if mid <= v_low || mid >= v_high {
            break; // bracket at float resolution
        }
        let e = eval(mid, &s_low)?;
        trace.push(e.record);
        if e.ok {
            v_low = mid;
            s_low = e.state.expect("a good step carries its state");
        } else {
            v_high = mid;
        }
    }

    Ok(SweepOutcome::PullIn(PullIn {
        v_low,
        v_high,
        v_pi: 0.5 * (v_low + v_high),
        state_at_v_low: s_low,
        trace,
    }))
}
