//! Electrostatic pull-in analysis for micro-machined beams.
//!
//! This crate predicts the pull-in voltage of electrostatically actuated
//! micro-beams — cantilevers and clamped-clamped bridges suspended over a
//! ground electrode — including the effect of residual stress and initial
//! curvature left behind by the release process, and solves the inverse
//! problem of identifying the residual stress of a bridge from its measured
//! pull-in voltage.
//!
//! The mechanical model is a geometrically nonlinear Euler-Bernoulli beam
//! discretised with two-node finite elements (cubic Hermite deflection,
//! linear axial displacement). Membrane-bending coupling of the von Kármán
//! kind captures the stretching stiffness that dominates pre-stressed
//! bridges; a geometric stiffness term carries the axial pre-load into the
//! transverse problem. The electrostatic load is the parallel-plate line
//! load evaluated on the deformed gap at the element Gauss points, with an
//! optional first-order fringing-field correction, and contributes its
//! softening jacobian to the tangent. Pull-in is detected by sweeping the
//! voltage, watching the sign of the tangent-stiffness pivots, and
//! bisecting the bracket until the requested voltage resolution is met.
//!
//! Internally everything is strict SI (metres, pascals, newtons); the
//! convenience constructors and the command line speak micrometres, MPa
//! and GPa, matching how such devices are usually reported.
//!
//! # Module map
//!
//! - [`domain`] — specimen descriptions, material/section data, the
//!   built-in specimen catalog, and the plain-text config format.
//! - [`beam_fem`] — meshes, element matrices, assembly of internal force
//!   and tangent stiffness.
//! - [`electrostatics`] — distributed electrostatic load, its jacobian,
//!   and the one-dof lumped transducer used for sanity checks.
//! - [`solver`] — Newton equilibrium, voltage sweep with pull-in
//!   bracketing, and residual-stress identification.
//! - [`banded`] — the symmetric banded LDLᵀ factorisation behind both the
//!   Newton solve and the stability test.
//! - [`units`] — unit conversions between SI and the micro-scale units
//!   used at the boundaries.
//! - [`cli`] — the `pullin` command-line front end.
//!
//! # Getting started
//!
//! ```
//! use pullin::domain::catalog;
//! use pullin::solver::{sweep_and_bracket, SolverConfig, SweepOutcome};
//!
//! // A 190 µm cantilever from the built-in catalog.
//! let entry = catalog::lookup("geom3/sample1").unwrap();
//! let outcome = sweep_and_bracket(&entry.specimen, &SolverConfig::default()).unwrap();
//! match outcome {
//!     SweepOutcome::PullIn(p) => {
//!         assert!(p.v_pi > 30.0 && p.v_pi < 90.0);
//!     }
//!     SweepOutcome::NoPullIn { .. } => panic!("cantilever must pull in"),
//! }
//! ```
//!
//! The `examples/` directory exercises every major capability:
//!
//! | example | shows |
//! |---|---|
//! | `catalog_tour` | the built-in specimen catalog, predicted vs measured |
//! | `cantilever_pullin` | pull-in of a curled cantilever, mesh refinement |
//! | `bridge_pullin` | pull-in of a pre-stressed bridge vs its measured window |
//! | `identify_stress` | inverse identification of residual stress |
//! | `stress_sensitivity` | V_PI as a function of assumed pre-stress |
//! | `deflection_profiles` | equilibrium shapes below pull-in |
//! | `lumped_transducer` | the classic one-dof pull-in closed form |
//! | `custom_specimen` | describing a device from scratch, config files |

pub mod banded;
pub mod beam_fem;
pub mod cli;
pub mod domain;
pub mod electrostatics;
pub mod solver;
pub mod units;
