//! Equilibrium, pull-in search, and residual-stress identification.
//!
//! The static problem at a given voltage is
//!
//! ```text
//! R(q) = R_int(q) - F_e(q, V) = 0,
//! ```
//!
//! solved by Newton iteration on the full tangent `J = K_T - K_e`: the
//! structural tangent minus the electrostatic softening. `J` is
//! symmetric, and its LDL^T pivot signs double as the stability test —
//! all pivots positive means the equilibrium is a local energy minimum.
//! Pull-in is the smallest voltage with no stable equilibrium on the
//! branch being tracked, found by marching the voltage upward and
//! bisecting the first bracket where the solve fails, the beam crosses
//! the collapse floor, or the tangent goes indefinite.
//!
//! Convergence is judged on scaled norms so cantilevers and bridges,
//! volts and micro-newtons, all use one tolerance: residual components
//! are weighted by the rest gap (forces) or gap over length (moments),
//! making them energies, and compared against the weighted norms of the
//! applied load and the starting internal force.
//!
//! The inverse problem — what residual stress explains a measured
//! pull-in voltage — is a scalar bisection on top of the sweep, since
//! pull-in rises monotonically with tensile prestress.

mod continuation;

use continuation::{run_sweep, StepEval};
pub use continuation::{PullIn, SweepOutcome, SweepRecord};

use crate::beam_fem::{
    self, BeamState, ElementKinematics, FemError, InitialState, Mesh, DOFS_PER_NODE,
};
use crate::domain::{BoundaryCondition, DomainError, Specimen};
use crate::electrostatics::{self, ElectrostaticConfig, LumpedTransducer};
use crate::units::pa_to_mpa;
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error("bad solver setting: {0}")]
    Config(String),
    #[error("no stable equilibrium at the starting voltage {v} V")]
    NotStableAtStart { v: f64 },
    #[error("numbers went non-finite while solving at {v} V; check the inputs")]
    NonFinite { v: f64 },
    #[error("no pull-in below {v_max} V at sigma0 = {sigma0_mpa} MPa")]
    NoPullInAtSigma { sigma0_mpa: f64, v_max: f64 },
    #[error(
        "measured {measured} V is outside the attainable range [{v_lo:.2}, {v_hi:.2}] V \
         spanned by sigma0 in [{sigma_lo_mpa}, {sigma_hi_mpa}] MPa"
    )]
    TargetOutOfRange {
        measured: f64,
        v_lo: f64,
        v_hi: f64,
        sigma_lo_mpa: f64,
        sigma_hi_mpa: f64,
    },
    #[error("residual-stress identification needs a clamped-clamped specimen")]
    NotClampedClamped,
}

/// Knobs for the equilibrium and continuation solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative residual tolerance for Newton convergence.
    pub newton_tol: f64,
    /// Newton iteration cap per voltage.
    pub max_newton_iters: usize,
    /// Sweep start voltage (V).
    pub v_start: f64,
    /// Sweep ceiling (V); no pull-in below it is reported as such.
    pub v_max: f64,
    /// Upward marching step (V).
    pub dv_initial: f64,
    /// Width the pull-in bracket is bisected down to (V).
    pub vpi_bracket_tol: f64,
    /// Fraction of the Newton step applied (1 = full steps).
    pub relaxation: f64,
    /// Elements along the span.
    pub n_elements: usize,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            newton_tol: 1.0e-9,
            max_newton_iters: 50,
            v_start: 0.0,
            v_max: 300.0,
            dv_initial: 1.0,
            vpi_bracket_tol: 0.05,
            relaxation: 1.0,
            n_elements: 32,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: &str| Err(SolverError::Config(msg.to_string()));
        if !(self.newton_tol > 0.0 && self.newton_tol.is_finite()) {
            return bad("newton_tol must be positive and finite");
        }
        if self.max_newton_iters == 0 {
            return bad("max_newton_iters must be at least 1");
        }
        if !(self.v_start >= 0.0 && self.v_start.is_finite()) {
            return bad("v_start must be finite and non-negative");
        }
        if !(self.v_max > self.v_start) {
            return bad("v_max must exceed v_start");
        }
        if !(self.dv_initial > 0.0 && self.dv_initial.is_finite()) {
            return bad("dv must be positive");
        }
        if !(self.vpi_bracket_tol > 0.0 && self.vpi_bracket_tol.is_finite()) {
            return bad("tol_v must be positive");
        }
        if !(self.relaxation > 0.0 && self.relaxation <= 1.0) {
            return bad("relaxation must be in (0, 1]");
        }
        if self.n_elements == 0 {
            return bad("n_elements must be at least 1");
        }
        Ok(())
    }
}

/// A specimen made solvable: mesh, element properties, release state,
/// and electrostatic configuration, all in SI.
#[derive(Debug, Clone)]
pub struct BeamModel {
    pub mesh: Mesh,
    pub kinematics: ElementKinematics,
    pub initial: InitialState,
    pub electro: ElectrostaticConfig,
    /// Node whose deflection is reported: the tip for a cantilever, the
    /// midspan node for a bridge.
    pub reference_node: usize,
    /// Residual weights (per free DOF) for the scaled convergence norm.
    scale: Vec<f64>,
}

impl BeamModel {
    pub fn new(spec: &Specimen, n_elements: usize) -> Result<BeamModel, SolverError> {
        spec.validate()?;
        let min_elements = match spec.bc {
            BoundaryCondition::Cantilever => 1,
            BoundaryCondition::ClampedClamped => 2,
        };
        if n_elements < min_elements {
            return Err(SolverError::Config(format!(
                "a {} needs at least {} element(s), got {}",
                spec.bc.label(),
                min_elements,
                n_elements
            )));
        }
        let mesh = Mesh::new(spec.length, n_elements, spec.bc);
        let reference_node = match spec.bc {
            BoundaryCondition::Cantilever => mesh.n_nodes() - 1,
            BoundaryCondition::ClampedClamped => n_elements / 2,
        };
        let scale = mesh
            .free_dofs()
            .iter()
            .map(|&d| match d % DOFS_PER_NODE {
                2 => spec.gap0 / spec.length,
                _ => spec.gap0,
            })
            .collect();
        Ok(BeamModel {
            mesh,
            kinematics: ElementKinematics::from_specimen(spec),
            initial: InitialState::from_specimen(spec),
            electro: ElectrostaticConfig::from_specimen(spec),
            reference_node,
            scale,
        })
    }

    /// Gap-closing deflection at the reference node (m).
    pub fn reference_deflection(&self, state: &BeamState) -> f64 {
        state.transverse(&self.mesh, self.reference_node)
    }

    /// Nodal profile `(x, v)` in metres, gap-closing positive.
    pub fn profile(&self, state: &BeamState) -> Vec<(f64, f64)> {
        (0..self.mesh.n_nodes())
            .map(|n| (self.mesh.node_x(n), state.transverse(&self.mesh, n)))
            .collect()
    }

    fn scaled_norm(&self, reduced: &[f64]) -> f64 {
        debug_assert_eq!(reduced.len(), self.scale.len());
        reduced
            .iter()
            .zip(&self.scale)
            .map(|(r, s)| (r * s) * (r * s))
            .sum::<f64>()
            .sqrt()
    }

    /// Dimensionless size of a displacement increment: translations
    /// against the gap, rotations against gap over length.
    fn scaled_increment(&self, reduced: &[f64]) -> f64 {
        debug_assert_eq!(reduced.len(), self.scale.len());
        reduced
            .iter()
            .zip(&self.scale)
            .map(|(d, s)| (d / s) * (d / s))
            .sum::<f64>()
            .sqrt()
    }
}

/// Newton also stops once a step moves the state by less than this
/// (relative to the gap): at lightly loaded voltages the residual
/// reference is so small that assembly roundoff can sit above the
/// relative tolerance, while the iterate is at the root to well below
/// any physical resolution.
const INCREMENT_TOL: f64 = 1.0e-10;

/// One converged (or failed) equilibrium solve.
#[derive(Debug, Clone)]
pub struct EquilibriumResult {
    /// Newton met the residual tolerance without touching the collapse
    /// floor.
    pub converged: bool,
    /// Tangent `K_T - K_e` positive definite at the converged state;
    /// always false when not converged.
    pub stable: bool,
    /// Final iterate (the converged state when `converged`).
    pub state: BeamState,
    /// Linear solves performed.
    pub iterations: usize,
    /// Scaled residual norm at exit.
    pub residual_norm: f64,
    /// Smallest gap at exit (m).
    pub min_gap: f64,
}

/// Newton iteration at fixed voltage from the given starting state.
///
/// Touching the collapse floor or running out of iterations is a normal
/// outcome (`converged: false`), not an error — that is precisely how
/// pull-in shows up. Errors are reserved for inputs the model cannot
/// represent and for non-finite arithmetic.
pub fn solve_equilibrium(
    model: &BeamModel,
    voltage: f64,
    start: &BeamState,
    cfg: &SolverConfig,
) -> Result<EquilibriumResult, SolverError> {
    let mesh = &model.mesh;
    let mut q = start.clone();
    let mut iterations = 0;
    let mut converged = false;
    let mut residual_norm = f64::INFINITY;
    let mut reference = None;
    let mut step_stagnated = false;

    for iter in 0..=cfg.max_newton_iters {
        let load = match electrostatics::distributed_load(mesh, &q, voltage, &model.electro) {
            Ok(f) => f,
            Err(_) => {
                // Crossed the collapse floor: the transducer has pulled
                // in at this voltage as far as statics is concerned.
                let min_gap = electrostatics::min_gap(mesh, &q, &model.electro);
                return Ok(EquilibriumResult {
                    converged: false,
                    stable: false,
                    state: q,
                    iterations,
                    residual_norm,
                    min_gap,
                });
            }
        };
        let f_red = mesh.reduce_vec(&load);
        let r_int = beam_fem::internal_force(mesh, &model.kinematics, &model.initial, &q);
        let mut r = mesh.reduce_vec(&r_int);
        let ref_norm =
            *reference.get_or_insert_with(|| model.scaled_norm(&f_red) + model.scaled_norm(&r));
        for (ri, fi) in r.iter_mut().zip(&f_red) {
            *ri -= fi;
        }
        residual_norm = model.scaled_norm(&r);
        if !residual_norm.is_finite() {
            return Err(SolverError::NonFinite { v: voltage });
        }
        if residual_norm <= cfg.newton_tol * ref_norm || step_stagnated {
            converged = true;
            break;
        }
        if iter == cfg.max_newton_iters {
            break;
        }

        let mut j = beam_fem::tangent_stiffness(mesh, &model.kinematics, &model.initial, &q);
        let ke = electrostatics::load_jacobian(mesh, &q, voltage, &model.electro)
            .expect("gap already checked by the load evaluation");
        j.sub_assign(&ke);
        let factor = match j.ldlt() {
            Ok(f) => f,
            // A dead-singular tangent means the branch folded under us.
            Err(_) => break,
        };
        for ri in r.iter_mut() {
            *ri = -*ri;
        }
        let dq = factor.solve(&r);
        let full = mesh.expand_vec(&dq);
        for (qi, di) in q.dofs.iter_mut().zip(&full) {
            *qi += cfg.relaxation * di;
        }
        iterations = iter + 1;
        if cfg.relaxation * model.scaled_increment(&dq) <= INCREMENT_TOL {
            // At the root to below any physical resolution; take one
            // more residual pass and accept.
            step_stagnated = true;
        }
    }

    let stable = if converged {
        let mut j = beam_fem::tangent_stiffness(mesh, &model.kinematics, &model.initial, &q);
        match electrostatics::load_jacobian(mesh, &q, voltage, &model.electro) {
            Ok(ke) => {
                j.sub_assign(&ke);
                j.ldlt().map(|f| f.is_positive_definite()).unwrap_or(false)
            }
            Err(_) => false,
        }
    } else {
        false
    };
    let min_gap = electrostatics::min_gap(mesh, &q, &model.electro);
    Ok(EquilibriumResult {
        converged,
        stable,
        state: q,
        iterations,
        residual_norm,
        min_gap,
    })
}

/// Voltage sweep with pull-in bracketing on an already-built model.
pub fn sweep_model(
    model: &BeamModel,
    cfg: &SolverConfig,
) -> Result<SweepOutcome<BeamState>, SolverError> {
    cfg.validate()?;
    let start = BeamState::zero(&model.mesh);
    run_sweep(cfg, start, |v, warm| {
        let res = solve_equilibrium(model, v, warm, cfg)?;
        let ok = res.converged && res.stable;
        Ok(StepEval {
            ok,
            state: res.converged.then_some(res.state.clone()),
            record: SweepRecord {
                voltage: v,
                deflection: model.reference_deflection(&res.state),
                min_gap: res.min_gap,
                iterations: res.iterations,
                converged: ok,
            },
        })
    })
}

/// Builds the model for a specimen and sweeps it.
pub fn sweep_and_bracket(
    spec: &Specimen,
    cfg: &SolverConfig,
) -> Result<SweepOutcome<BeamState>, SolverError> {
    let model = BeamModel::new(spec, cfg.n_elements)?;
    sweep_model(&model, cfg)
}

/// The pull-in voltage of a specimen, or an error when it stays stable
/// up to `v_max` — for callers (identification, sensitivity scans) that
/// need a number, not an outcome.
pub fn pullin_voltage(
    spec: &Specimen,
    cfg: &SolverConfig,
) -> Result<PullIn<BeamState>, SolverError> {
    match sweep_and_bracket(spec, cfg)? {
        SweepOutcome::PullIn(p) => Ok(p),
        SweepOutcome::NoPullIn { v_max, .. } => Err(SolverError::NoPullInAtSigma {
            sigma0_mpa: pa_to_mpa(spec.residual_stress),
            v_max,
        }),
    }
}

/// Sweep of the one-DOF lumped transducer with spring constant `k`,
/// through the same continuation engine as the beam.
pub fn sweep_lumped(
    t: &LumpedTransducer,
    k: f64,
    cfg: &SolverConfig,
) -> Result<SweepOutcome<f64>, SolverError> {
    cfg.validate()?;
    if !(k > 0.0 && t.gap0 > 0.0 && t.area > 0.0) {
        return Err(SolverError::Config(
            "lumped transducer needs positive stiffness, gap and area".to_string(),
        ));
    }
    let floor = ElectrostaticConfig::DEFAULT_COLLAPSE_FRACTION * t.gap0;
    let force_ref = k * t.gap0;
    run_sweep(cfg, 0.0_f64, |v, &warm| {
        let mut x = warm;
        let mut iterations = 0;
        let mut converged = false;
        let mut collapsed = false;
        for iter in 0..=cfg.max_newton_iters {
            if t.gap0 - x <= floor {
                collapsed = true;
                break;
            }
            let f = k * x - t.force(x, v);
            if !f.is_finite() {
                return Err(SolverError::NonFinite { v });
            }
            if f.abs() <= cfg.newton_tol * force_ref {
                converged = true;
                break;
            }
            if iter == cfg.max_newton_iters {
                break;
            }
            let jac = k - t.force_gradient(x, v);
            if jac == 0.0 {
                break;
            }
            x += cfg.relaxation * (-f / jac);
            iterations = iter + 1;
        }
        let stable = converged && !collapsed && k - t.force_gradient(x, v) > 0.0;
        let ok = converged && stable;
        Ok(StepEval {
            ok,
            state: ok.then_some(x),
            record: SweepRecord {
                voltage: v,
                deflection: x,
                min_gap: t.gap0 - x,
                iterations,
                converged: ok,
            },
        })
    })
}

/// Residual-stress bisection is run until the stress bracket is this
/// tight (Pa); 0.01 MPa is far below what pull-in data can resolve.
pub const IDENTIFY_SIGMA_TOL: f64 = 1.0e4;

/// Outcome of a residual-stress identification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentifyResult {
    /// Identified residual stress (Pa, tensile positive).
    pub sigma0: f64,
    /// Predicted pull-in voltage at `sigma0` (V).
    pub v_pi: f64,
    /// Pull-in at the low end of the search range (V).
    pub v_lo: f64,
    /// Pull-in at the high end of the search range (V).
    pub v_hi: f64,
    /// Full voltage sweeps spent.
    pub evaluations: usize,
}

/// Finds the residual stress of a clamped-clamped specimen whose
/// predicted pull-in matches the measured voltage, searching
/// `[sigma_lo, sigma_hi]` (Pa) by bisection. Pull-in rises monotonically
/// with tensile prestress, which makes the bisection safe whenever the
/// target is attainable inside the range.
pub fn identify_prestress(
    spec: &Specimen,
    measured_vpi: f64,
    sigma_lo: f64,
    sigma_hi: f64,
    cfg: &SolverConfig,
) -> Result<IdentifyResult, SolverError> {
    if spec.bc != BoundaryCondition::ClampedClamped {
        return Err(SolverError::NotClampedClamped);
    }
    if !(measured_vpi > 0.0 && measured_vpi.is_finite()) {
        return Err(SolverError::Config(
            "measured pull-in voltage must be positive and finite".to_string(),
        ));
    }
    if !(sigma_lo.is_finite() && sigma_hi.is_finite() && sigma_lo < sigma_hi) {
        return Err(SolverError::Config(
            "stress search range must be finite with sigma_lo < sigma_hi".to_string(),
        ));
    }
    let mut lo = sigma_lo;
    let mut hi = sigma_hi;
    let v_lo = pullin_voltage(&spec.with_residual_stress(lo), cfg)?.v_pi;
    let v_hi = pullin_voltage(&spec.with_residual_stress(hi), cfg)?.v_pi;
    let mut evaluations = 2;
    if !(v_lo <= measured_vpi && measured_vpi <= v_hi) {
        return Err(SolverError::TargetOutOfRange {
            measured: measured_vpi,
            v_lo,
            v_hi,
            sigma_lo_mpa: pa_to_mpa(sigma_lo),
            sigma_hi_mpa: pa_to_mpa(sigma_hi),
        });
    }
    while hi - lo > IDENTIFY_SIGMA_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v_mid = pullin_voltage(&spec.with_residual_stress(mid), cfg)?.v_pi;
        evaluations += 1;
        if v_mid < measured_vpi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sigma0 = 0.5 * (lo + hi);
    let v_pi = pullin_voltage(&spec.with_residual_stress(sigma0), cfg)?.v_pi;
    evaluations += 1;
    Ok(IdentifyResult {
        sigma0,
        v_pi,
        v_lo,
        v_hi,
        evaluations,
    })
}

/// Pull-in voltage for each assumed prestress value (Pa), in the given
/// order. The entries are independent, so they run in parallel.
pub fn prestress_sensitivity(
    spec: &Specimen,
    sigmas: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<(f64, f64)>, SolverError> {
    if spec.bc != BoundaryCondition::ClampedClamped {
        return Err(SolverError::NotClampedClamped);
    }
    let results: Vec<Result<f64, SolverError>> = sigmas
        .par_iter()
        .map(|&s| pullin_voltage(&spec.with_residual_stress(s), cfg).map(|p| p.v_pi))
        .collect();
    sigmas
        .iter()
        .zip(results)
        .map(|(&s, r)| r.map(|v| (s, v)))
        .collect()
}
