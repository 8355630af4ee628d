//! Geometrically nonlinear Euler-Bernoulli beam discretization.
//!
//! Two-node elements with three DOFs per node `[u, v, theta]`: linear
//! axial shapes and Hermite cubic transverse shapes. The membrane strain
//! carries the von Karman term,
//!
//! ```text
//! eps = du/dx + (dv/dx)^2 / 2,        kappa = d^2v/dx^2,
//! ```
//!
//! so stretching and bending couple once deflections reach a fraction of
//! the thickness, which is exactly the regime electrostatic actuation
//! drives these beams into. Stress resultants fold in the initial state
//! the structure was released with:
//!
//! ```text
//! N = EA (eps - eps0) + N0,           M = EJ (kappa - kappa0) + M0.
//! ```
//!
//! A tensile N0 (clamped-clamped beam with residual stress) stiffens the
//! transverse response through the geometric stiffness; a stress-free
//! curvature kappa0 (released cantilever) makes the beam relax toward its
//! curled shape. The transverse axis points toward the counter-electrode:
//! positive `v` closes the gap.

mod assembly;
mod element;

pub use assembly::{
    assemble_geometric_stiffness, assemble_linear_stiffness, check_well_constrained,
    element_axial_forces, internal_force, internal_force_and_tangent, tangent_stiffness,
};
pub(crate) use element::b_rows;
pub use element::{shapes_at, ElementKinematics, GaussRule, ShapeEval, GAUSS_2, GAUSS_3, GAUSS_4};

use crate::domain::{BoundaryCondition, Specimen};

pub const DOFS_PER_NODE: usize = 3;
/// Half bandwidth of every assembled matrix (two coupled 3-DOF nodes).
pub const HALF_BANDWIDTH: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum FemError {
    #[error(
        "stiffness matrix is not positive definite after applying constraints \
         (pivot {pivot:.3e} at reduced dof {index}); the model is insufficiently constrained"
    )]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("factorization failed: {0}")]
    Factorization(#[from] crate::banded::FactorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dof {
    Axial = 0,
    Transverse = 1,
    Rotation = 2,
}

/// Uniform 1D mesh with its constraint set and free-DOF numbering.
#[derive(Debug, Clone)]
pub struct Mesh {
    length: f64,
    n_elements: usize,
    h: f64,
    constrained: Vec<bool>,
    free: Vec<usize>,
    reduced_of: Vec<Option<usize>>,
}

impl Mesh {
    pub fn new(length: f64, n_elements: usize, bc: BoundaryCondition) -> Mesh {
        assert!(length > 0.0 && n_elements > 0);
        let n_dofs = DOFS_PER_NODE * (n_elements + 1);
        let mut constrained = vec![false; n_dofs];
        for d in 0..DOFS_PER_NODE {
            constrained[d] = true;
        }
        if bc == BoundaryCondition::ClampedClamped {
            assert!(
                n_elements >= 2,
                "a clamped-clamped mesh needs at least 2 elements to have free DOFs"
            );
            for d in 0..DOFS_PER_NODE {
                constrained[n_dofs - DOFS_PER_NODE + d] = true;
            }
        }
        Mesh::with_constraints(length, n_elements, constrained)
    }

    /// Mesh with an explicit constraint mask; a fully unconstrained mesh
    /// is useful for checking rigid-body behaviour of the assembled
    /// operators.
    pub fn with_constraints(length: f64, n_elements: usize, constrained: Vec<bool>) -> Mesh {
        let n_dofs = DOFS_PER_NODE * (n_elements + 1);
        assert_eq!(constrained.len(), n_dofs);
        let mut free = Vec::new();
        let mut reduced_of = vec![None; n_dofs];
        for (dof, &fixed) in constrained.iter().enumerate() {
            if !fixed {
                reduced_of[dof] = Some(free.len());
                free.push(dof);
            }
        }
        assert!(!free.is_empty(), "mesh has no free DOFs");
        Mesh {
            length,
            n_elements,
            h: length / n_elements as f64,
            constrained,
            free,
            reduced_of,
        }
    }

    pub fn free_free(length: f64, n_elements: usize) -> Mesh {
        let n_dofs = DOFS_PER_NODE * (n_elements + 1);
        Mesh::with_constraints(length, n_elements, vec![false; n_dofs])
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    /// Uniform element length L / n_elements.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_nodes(&self) -> usize {
        self.n_elements + 1
    }

    pub fn n_dofs(&self) -> usize {
        DOFS_PER_NODE * self.n_nodes()
    }

    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    pub fn node_x(&self, node: usize) -> f64 {
        self.h * node as f64
    }

    pub fn dof(&self, node: usize, which: Dof) -> usize {
        DOFS_PER_NODE * node + which as usize
    }

    pub fn is_constrained(&self, dof: usize) -> bool {
        self.constrained[dof]
    }

    pub fn free_dofs(&self) -> &[usize] {
        &self.free
    }

    pub fn reduced_index(&self, dof: usize) -> Option<usize> {
        self.reduced_of[dof]
    }

    /// Global DOFs of element `e` in local order `[u1, v1, t1, u2, v2, t2]`.
    pub fn element_dofs(&self, e: usize) -> [usize; 6] {
        let base = DOFS_PER_NODE * e;
        [base, base + 1, base + 2, base + 3, base + 4, base + 5]
    }

    pub fn reduce_vec(&self, full: &[f64]) -> Vec<f64> {
        debug_assert_eq!(full.len(), self.n_dofs());
        self.free.iter().map(|&d| full[d]).collect()
    }

    pub fn expand_vec(&self, reduced: &[f64]) -> Vec<f64> {
        debug_assert_eq!(reduced.len(), self.free.len());
        let mut full = vec![0.0; self.n_dofs()];
        for (r, &d) in self.free.iter().enumerate() {
            full[d] = reduced[r];
        }
        full
    }
}

/// Stress and shape state the beam was released in.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InitialState {
    /// Residual membrane stress (Pa, tensile positive).
    pub sigma0: f64,
    /// Axial pre-load N0 = sigma0 * A (N).
    pub n0: f64,
    /// Initial bending moment (N m).
    pub m0: f64,
    /// Stress-free membrane strain offset.
    pub eps0: f64,
    /// Stress-free curvature (1/m, positive toward the electrode).
    pub kappa0: f64,
}

impl InitialState {
    pub fn zero() -> InitialState {
        InitialState::default()
    }

    pub fn from_specimen(s: &Specimen) -> InitialState {
        match s.bc {
            BoundaryCondition::ClampedClamped => InitialState {
                sigma0: s.residual_stress,
                n0: s.residual_stress * s.section.area(),
                ..Default::default()
            },
            // The measured rise is away from the electrode while the
            // model's transverse axis points toward it, hence the sign.
            BoundaryCondition::Cantilever => InitialState {
                kappa0: -s.initial_curvature(),
                ..Default::default()
            },
        }
    }
}

/// Full-length DOF vector; constrained entries stay zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamState {
    pub dofs: Vec<f64>,
}

impl BeamState {
    pub fn zero(mesh: &Mesh) -> BeamState {
        BeamState {
            dofs: vec![0.0; mesh.n_dofs()],
        }
    }

    /// Gap-closing deflection at a node (m).
    pub fn transverse(&self, mesh: &Mesh, node: usize) -> f64 {
        self.dofs[mesh.dof(node, Dof::Transverse)]
    }

    pub fn rotation(&self, mesh: &Mesh, node: usize) -> f64 {
        self.dofs[mesh.dof(node, Dof::Rotation)]
    }

    pub fn axial(&self, mesh: &Mesh, node: usize) -> f64 {
        self.dofs[mesh.dof(node, Dof::Axial)]
    }

    pub fn max_transverse(&self, mesh: &Mesh) -> f64 {
        (0..mesh.n_nodes())
            .map(|n| self.transverse(mesh, n))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
