//! Electrostatic loading of the deflected beam.
//!
//! The counter-electrode runs under the whole span at distance
//! `g(x) = g0 - v(x)`. Per unit length the parallel-plate attraction is
//!
//! ```text
//! q(x) = eps * w * V^2 / (2 g(x)^2) * f_fr,
//! f_fr = 1 + 0.65 g(x) / w          (Palmer fringing, optional)
//! ```
//!
//! integrated against the transverse shape functions with 4-point Gauss.
//! The load grows as the gap closes, which is the destabilizing feedback
//! behind pull-in; its consistent jacobian dF/dq is positive semidefinite
//! and is what the coupled Newton tangent subtracts.
//!
//! [`LumpedTransducer`] is the rigid-plate idealization: all compliance
//! in one spring, the classic x = g0/3 instability at
//! V_PI = sqrt(8 k g0^3 / (27 eps A)). It serves as the analytic anchor
//! for the continuation machinery.

use crate::banded::BandMatrix;
use crate::beam_fem::{b_rows, shapes_at, BeamState, Mesh, GAUSS_4, HALF_BANDWIDTH};
use crate::domain::Specimen;

#[derive(Debug, thiserror::Error)]
#[error(
    "electrode contact: gap {gap_um:.4} um at x = {x_um:.1} um fell below the collapse \
     threshold {floor_um:.4} um"
)]
pub struct PenetrationError {
    pub x_um: f64,
    pub gap_um: f64,
    pub floor_um: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectrostaticConfig {
    /// Gap permittivity (F/m).
    pub permittivity: f64,
    /// Electrode (= beam) width (m).
    pub width: f64,
    /// Undeflected gap (m).
    pub gap0: f64,
    /// Palmer fringing-field correction on the line load.
    pub fringing: bool,
    /// Fraction of g0 below which the gap counts as collapsed.
    pub collapse_fraction: f64,
    /// Multiplier on the line load, for sensitivity studies.
    pub force_scale: f64,
}

impl ElectrostaticConfig {
    pub const DEFAULT_COLLAPSE_FRACTION: f64 = 0.01;

    pub fn new(permittivity: f64, width: f64, gap0: f64) -> ElectrostaticConfig {
        ElectrostaticConfig {
            permittivity,
            width,
            gap0,
            fringing: false,
            collapse_fraction: Self::DEFAULT_COLLAPSE_FRACTION,
            force_scale: 1.0,
        }
    }

    pub fn from_specimen(s: &Specimen) -> ElectrostaticConfig {
        let mut c = ElectrostaticConfig::new(s.permittivity, s.section.width, s.gap0);
        c.fringing = s.fringing;
        c
    }

    fn collapse_floor(&self) -> f64 {
        self.collapse_fraction * self.gap0
    }

    /// Attraction per unit length at local gap `g` (N/m).
    pub fn line_load(&self, gap: f64, voltage: f64) -> f64 {
        let base = self.permittivity * self.width * voltage * voltage / (2.0 * gap * gap);
        let fr = if self.fringing {
            1.0 + 0.65 * gap / self.width
        } else {
            1.0
        };
        self.force_scale * base * fr
    }

    /// d(line_load)/d(gap); negative, the load grows as the gap closes.
    fn line_load_gap_derivative(&self, gap: f64, voltage: f64) -> f64 {
        let c = self.force_scale * self.permittivity * self.width * voltage * voltage / 2.0;
        let mut d = -2.0 * c / (gap * gap * gap);
        if self.fringing {
            d -= 0.65 / self.width * c / (gap * gap);
        }
        d
    }
}

fn for_each_gauss_point(
    mesh: &Mesh,
    state: &BeamState,
    cfg: &ElectrostaticConfig,
    mut visit: impl FnMut(usize, &crate::beam_fem::ShapeEval, f64, f64, f64),
) -> Result<(), PenetrationError> {
    let h = mesh.h();
    let floor = cfg.collapse_floor();
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        for (&xi, &wgt) in GAUSS_4.points.iter().zip(GAUSS_4.weights) {
            let sh = shapes_at(xi, h);
            let rows = b_rows(&sh);
            let mut v = 0.0;
            for (local, &dof) in dofs.iter().enumerate() {
                v += rows.transverse[local] * state.dofs[dof];
            }
            let gap = cfg.gap0 - v;
            if gap <= floor {
                let x = mesh.node_x(e) + h * (1.0 + xi) / 2.0;
                return Err(PenetrationError {
                    x_um: crate::units::m_to_um(x),
                    gap_um: crate::units::m_to_um(gap),
                    floor_um: crate::units::m_to_um(floor),
                });
            }
            visit(e, &sh, wgt * h / 2.0, gap, xi);
        }
    }
    Ok(())
}

/// Consistent nodal loads for the current profile, full length.
pub fn distributed_load(
    mesh: &Mesh,
    state: &BeamState,
    voltage: f64,
    cfg: &ElectrostaticConfig,
) -> Result<Vec<f64>, PenetrationError> {
    let mut f = vec![0.0; mesh.n_dofs()];
    for_each_gauss_point(mesh, state, cfg, |e, sh, w, gap, _| {
        let q = cfg.line_load(gap, voltage);
        let rows = b_rows(sh);
        let dofs = mesh.element_dofs(e);
        for (local, &dof) in dofs.iter().enumerate() {
            f[dof] += w * q * rows.transverse[local];
        }
    })?;
    Ok(f)
}

/// Load jacobian dF_e/dq, reduced; positive semidefinite.
pub fn load_jacobian(
    mesh: &Mesh,
    state: &BeamState,
    voltage: f64,
    cfg: &ElectrostaticConfig,
) -> Result<BandMatrix, PenetrationError> {
    let mut k = BandMatrix::zeros(mesh.n_free(), HALF_BANDWIDTH);
    for_each_gauss_point(mesh, state, cfg, |e, sh, w, gap, _| {
        let softening = -cfg.line_load_gap_derivative(gap, voltage);
        let rows = b_rows(sh);
        let dofs = mesh.element_dofs(e);
        for i in 0..6 {
            let Some(ri) = mesh.reduced_index(dofs[i]) else {
                continue;
            };
            for j in 0..=i {
                let Some(rj) = mesh.reduced_index(dofs[j]) else {
                    continue;
                };
                k.add(
                    ri,
                    rj,
                    w * softening * rows.transverse[i] * rows.transverse[j],
                );
            }
        }
    })?;
    Ok(k)
}

/// Smallest gap over nodes and load quadrature points (m).
pub fn min_gap(mesh: &Mesh, state: &BeamState, cfg: &ElectrostaticConfig) -> f64 {
    let mut g_min = f64::INFINITY;
    for node in 0..mesh.n_nodes() {
        g_min = g_min.min(cfg.gap0 - state.transverse(mesh, node));
    }
    let h = mesh.h();
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        for &xi in GAUSS_4.points {
            let rows = b_rows(&shapes_at(xi, h));
            let mut v = 0.0;
            for (local, &dof) in dofs.iter().enumerate() {
                v += rows.transverse[local] * state.dofs[dof];
            }
            g_min = g_min.min(cfg.gap0 - v);
        }
    }
    g_min
}

/// Rigid plate on a spring: the textbook single-DOF transducer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LumpedTransducer {
    /// Electrode area (m^2).
    pub area: f64,
    /// Rest gap (m).
    pub gap0: f64,
    /// Gap permittivity (F/m).
    pub permittivity: f64,
}

impl LumpedTransducer {
    pub fn capacitance(&self, x: f64) -> f64 {
        self.permittivity * self.area / (self.gap0 - x)
    }

    /// Attraction at plate displacement `x` toward the electrode (N).
    pub fn force(&self, x: f64, voltage: f64) -> f64 {
        let g = self.gap0 - x;
        self.permittivity * self.area * voltage * voltage / (2.0 * g * g)
    }

    /// dF/dx, the electrostatic softening (N/m).
    pub fn force_gradient(&self, x: f64, voltage: f64) -> f64 {
        let g = self.gap0 - x;
        self.permittivity * self.area * voltage * voltage / (g * g * g)
    }
}

/// Closed-form pull-in of the lumped transducer with spring stiffness
/// `k`: returns `(v_pi, x_pi)` with `x_pi = g0 / 3`.
pub fn lumped_pullin(k: f64, t: &LumpedTransducer) -> (f64, f64) {
    let v_pi = (8.0 * k * t.gap0.powi(3) / (27.0 * t.permittivity * t.area)).sqrt();
    (v_pi, t.gap0 / 3.0)
}
