//! Assembly of residuals and stiffness operators over the mesh.
//!
//! All matrices come back in reduced (free-DOF) numbering as symmetric
//! banded storage; the internal force comes back full-length so the
//! constrained entries expose the support reactions.
//!
//! The von Karman membrane strain is averaged over each element (one
//! constant axial resultant per element) rather than sampled pointwise:
//! the linear axial interpolation cannot chase the quadratic slope
//! field within an element, and on beams as slender as these the
//! pointwise variant locks — the spurious membrane energy visibly
//! stiffens the bending response even at fine meshes. Averaging is the
//! classical cure and makes pure-bending states exactly representable.
//! Quadrature is exact everywhere: 2-point Gauss for the linear
//! stiffness and bending terms, 3-point for the slope averages and the
//! geometric stiffness, whose integrands are quartic in the element
//! coordinate.

use super::element::{b_rows, ElementKinematics, GAUSS_2, GAUSS_3};
use super::{shapes_at, BeamState, FemError, InitialState, Mesh, HALF_BANDWIDTH};
use crate::banded::BandMatrix;

fn gather(state: &BeamState, dofs: &[usize; 6]) -> [f64; 6] {
    let mut qe = [0.0; 6];
    for (local, &dof) in dofs.iter().enumerate() {
        qe[local] = state.dofs[dof];
    }
    qe
}

fn mirror(ke: &mut [[f64; 6]; 6]) {
    for i in 0..6 {
        for j in 0..i {
            ke[j][i] = ke[i][j];
        }
    }
}

fn fold_matrix(mesh: &Mesh, k: &mut BandMatrix, e: usize, ke: &[[f64; 6]; 6]) {
    let dofs = mesh.element_dofs(e);
    for i in 0..6 {
        let Some(ri) = mesh.reduced_index(dofs[i]) else {
            continue;
        };
        for j in 0..=i {
            let Some(rj) = mesh.reduced_index(dofs[j]) else {
                continue;
            };
            k.add(ri, rj, ke[i][j]);
        }
    }
}

fn dot6(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    let mut s = 0.0;
    for i in 0..6 {
        s += a[i] * b[i];
    }
    s
}

pub(crate) fn element_linear(kin: &ElementKinematics, h: f64) -> [[f64; 6]; 6] {
    let mut ke = [[0.0; 6]; 6];
    for (&xi, &wgt) in GAUSS_2.points.iter().zip(GAUSS_2.weights) {
        let b = b_rows(&shapes_at(xi, h));
        let w = wgt * h / 2.0;
        for i in 0..6 {
            for j in 0..=i {
                ke[i][j] += w
                    * (kin.ea * b.axial[i] * b.axial[j] + kin.ej * b.curvature[i] * b.curvature[j]);
            }
        }
    }
    mirror(&mut ke);
    ke
}

pub(crate) fn element_geometric(n_axial: f64, h: f64) -> [[f64; 6]; 6] {
    let mut ke = [[0.0; 6]; 6];
    for (&xi, &wgt) in GAUSS_3.points.iter().zip(GAUSS_3.weights) {
        let b = b_rows(&shapes_at(xi, h));
        let w = wgt * h / 2.0;
        for i in 0..6 {
            for j in 0..=i {
                ke[i][j] += w * n_axial * b.slope[i] * b.slope[j];
            }
        }
    }
    mirror(&mut ke);
    ke
}

/// Element-constant membrane state: the axial resultant from the
/// element-averaged von Karman strain and the variation row of that
/// average.
struct MembraneState {
    /// Axial resultant N, constant over the element by construction.
    n: f64,
    /// d(average strain)/dq, the membrane B-bar row.
    ba: [f64; 6],
}

fn membrane_state(
    kin: &ElementKinematics,
    initial: &InitialState,
    h: f64,
    qe: &[f64; 6],
) -> MembraneState {
    let b0 = b_rows(&shapes_at(0.0, h));
    let mut ba = b0.axial;
    let mut eps = dot6(&b0.axial, qe);
    if kin.von_karman {
        // Element averages of slope^2 / 2 and slope * G; the integrands
        // are quartic in xi, so three points are exact.
        for (&xi, &wgt) in GAUSS_3.points.iter().zip(GAUSS_3.weights) {
            let b = b_rows(&shapes_at(xi, h));
            let slope = dot6(&b.slope, qe);
            let w = wgt / 2.0;
            eps += w * 0.5 * slope * slope;
            for i in 0..6 {
                ba[i] += w * slope * b.slope[i];
            }
        }
    }
    let n = kin.ea * (eps - initial.eps0) + initial.n0;
    MembraneState { n, ba }
}

fn element_internal(
    kin: &ElementKinematics,
    initial: &InitialState,
    h: f64,
    qe: &[f64; 6],
) -> [f64; 6] {
    let ms = membrane_state(kin, initial, h, qe);
    let mut re = [0.0; 6];
    for i in 0..6 {
        re[i] = ms.n * h * ms.ba[i];
    }
    for (&xi, &wgt) in GAUSS_2.points.iter().zip(GAUSS_2.weights) {
        let b = b_rows(&shapes_at(xi, h));
        let w = wgt * h / 2.0;
        let kappa = dot6(&b.curvature, qe);
        let m = kin.ej * (kappa - initial.kappa0) + initial.m0;
        for i in 0..6 {
            re[i] += w * m * b.curvature[i];
        }
    }
    re
}

fn element_tangent(
    kin: &ElementKinematics,
    initial: &InitialState,
    h: f64,
    qe: &[f64; 6],
) -> [[f64; 6]; 6] {
    let ms = membrane_state(kin, initial, h, qe);
    let mut ke = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..=i {
            ke[i][j] = kin.ea * h * ms.ba[i] * ms.ba[j];
        }
    }
    for (&xi, &wgt) in GAUSS_2.points.iter().zip(GAUSS_2.weights) {
        let b = b_rows(&shapes_at(xi, h));
        let w = wgt * h / 2.0;
        for i in 0..6 {
            for j in 0..=i {
                ke[i][j] += w * kin.ej * b.curvature[i] * b.curvature[j];
            }
        }
    }
    if kin.von_karman {
        for (&xi, &wgt) in GAUSS_3.points.iter().zip(GAUSS_3.weights) {
            let b = b_rows(&shapes_at(xi, h));
            let w = wgt * h / 2.0;
            for i in 0..6 {
                for j in 0..=i {
                    ke[i][j] += w * ms.n * b.slope[i] * b.slope[j];
                }
            }
        }
    }
    mirror(&mut ke);
    ke
}

/// Small-deflection stiffness K_L (membrane + bending), reduced.
pub fn assemble_linear_stiffness(mesh: &Mesh, kin: &ElementKinematics) -> BandMatrix {
    let mut k = BandMatrix::zeros(mesh.n_free(), HALF_BANDWIDTH);
    let ke = element_linear(kin, mesh.h());
    for e in 0..mesh.n_elements() {
        fold_matrix(mesh, &mut k, e, &ke);
    }
    k
}

/// Stress stiffening K_G for a given axial force per element (N, tensile
/// positive), reduced. Linear in the axial force.
pub fn assemble_geometric_stiffness(mesh: &Mesh, axial_force: &[f64]) -> BandMatrix {
    assert_eq!(axial_force.len(), mesh.n_elements());
    let mut k = BandMatrix::zeros(mesh.n_free(), HALF_BANDWIDTH);
    for (e, &n) in axial_force.iter().enumerate() {
        let ke = element_geometric(n, mesh.h());
        fold_matrix(mesh, &mut k, e, &ke);
    }
    k
}

/// Internal force vector, full length: entries on constrained DOFs are
/// the support reactions.
pub fn internal_force(
    mesh: &Mesh,
    kin: &ElementKinematics,
    initial: &InitialState,
    state: &BeamState,
) -> Vec<f64> {
    let mut r = vec![0.0; mesh.n_dofs()];
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        let qe = gather(state, &dofs);
        let re = element_internal(kin, initial, mesh.h(), &qe);
        for (local, &dof) in dofs.iter().enumerate() {
            r[dof] += re[local];
        }
    }
    r
}

/// Consistent tangent dR/dq at the given state, reduced.
pub fn tangent_stiffness(
    mesh: &Mesh,
    kin: &ElementKinematics,
    initial: &InitialState,
    state: &BeamState,
) -> BandMatrix {
    let mut k = BandMatrix::zeros(mesh.n_free(), HALF_BANDWIDTH);
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        let qe = gather(state, &dofs);
        let ke = element_tangent(kin, initial, mesh.h(), &qe);
        fold_matrix(mesh, &mut k, e, &ke);
    }
    k
}

/// Residual and tangent in one element sweep; what a Newton iteration
/// actually wants.
pub fn internal_force_and_tangent(
    mesh: &Mesh,
    kin: &ElementKinematics,
    initial: &InitialState,
    state: &BeamState,
) -> (Vec<f64>, BandMatrix) {
    let mut r = vec![0.0; mesh.n_dofs()];
    let mut k = BandMatrix::zeros(mesh.n_free(), HALF_BANDWIDTH);
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        let qe = gather(state, &dofs);
        let re = element_internal(kin, initial, mesh.h(), &qe);
        let ke = element_tangent(kin, initial, mesh.h(), &qe);
        for (local, &dof) in dofs.iter().enumerate() {
            r[dof] += re[local];
        }
        fold_matrix(mesh, &mut k, e, &ke);
    }
    (r, k)
}

/// Axial resultant N per element (constant within each element by the
/// strain averaging); for a clamped-clamped beam in equilibrium it
/// should be uniform along the span.
pub fn element_axial_forces(
    mesh: &Mesh,
    kin: &ElementKinematics,
    initial: &InitialState,
    state: &BeamState,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(mesh.n_elements());
    for e in 0..mesh.n_elements() {
        let dofs = mesh.element_dofs(e);
        let qe = gather(state, &dofs);
        out.push(membrane_state(kin, initial, mesh.h(), &qe).n);
    }
    out
}

/// Verifies that the constrained linear stiffness is positive definite,
/// i.e. the model is actually held down. Uses Jacobi scaling so the pivot
/// test is dimensionless.
pub fn check_well_constrained(mesh: &Mesh, kin: &ElementKinematics) -> Result<(), FemError> {
    let mut k = assemble_linear_stiffness(mesh, kin);
    let mut s = vec![0.0; k.n()];
    for i in 0..k.n() {
        let d = k.get(i, i);
        if !(d > 0.0) {
            return Err(FemError::NotPositiveDefinite { index: i, pivot: d });
        }
        s[i] = 1.0 / d.sqrt();
    }
    k.scale_symmetric(&s);
    let f = k.ldlt()?;
    let min = f.min_pivot();
    if min <= 1e-10 {
        let index = f
            .pivots()
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        return Err(FemError::NotPositiveDefinite { index, pivot: min });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::Dof;
    use super::*;
    use crate::domain::BoundaryCondition;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const E_EFF: f64 = 97.0e9;
    const W: f64 = 32.0e-6;
    const T: f64 = 2.7e-6;
    const L: f64 = 540.0e-6;

    fn kin() -> ElementKinematics {
        ElementKinematics::new(E_EFF, W * T, W * T * T * T / 12.0)
    }

    fn solve_reduced(k: &BandMatrix, rhs: &[f64]) -> Vec<f64> {
        k.ldlt().unwrap().solve(rhs)
    }

    #[test]
    fn rigid_motions_produce_no_force() {
        let mesh = Mesh::free_free(L, 4);
        let k = assemble_linear_stiffness(&mesh, &kin());
        let scale = k.max_abs_diag();

        // Transverse translation, axial translation, rigid rotation.
        let mut translation = vec![0.0; mesh.n_dofs()];
        let mut axial = vec![0.0; mesh.n_dofs()];
        let mut rotation = vec![0.0; mesh.n_dofs()];
        for node in 0..mesh.n_nodes() {
            translation[mesh.dof(node, Dof::Transverse)] = 1.0;
            axial[mesh.dof(node, Dof::Axial)] = 1.0;
            rotation[mesh.dof(node, Dof::Transverse)] = mesh.node_x(node);
            rotation[mesh.dof(node, Dof::Rotation)] = 1.0;
        }
        for q in [&translation, &axial, &rotation] {
            let f = k.mul_vec(q);
            let worst = f.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            assert!(
                worst <= scale * 1e-9,
                "rigid motion produced force {worst:.3e}"
            );
        }
    }

    #[test]
    fn element_matrices_are_symmetric() {
        let mut rng = StdRng::seed_from_u64(42);
        let h = L / 16.0;
        for _ in 0..20 {
            let mut qe = [0.0; 6];
            for v in qe.iter_mut() {
                *v = rng.gen_range(-1.5e-6..1.5e-6);
            }
            let ke = element_tangent(&kin(), &InitialState::zero(), h, &qe);
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(ke[i][j], ke[j][i]);
                }
            }
        }
        let kl = element_linear(&kin(), h);
        let kg = element_geometric(1.0e-3, h);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(kl[i][j], kl[j][i]);
                assert_eq!(kg[i][j], kg[j][i]);
            }
        }
    }

    #[test]
    fn cantilever_tip_load_matches_closed_form() {
        // Hermite elements are nodally exact for point loads; what is
        // left is solver roundoff, which grows with the stiffness
        // condition number (~n^4), so the tolerance is loose enough to
        // cover the 64-element case.
        let p = 1.0e-6;
        let ej = kin().ej;
        for n in [1usize, 2, 8, 32, 64] {
            let mesh = Mesh::new(L, n, BoundaryCondition::Cantilever);
            let k = assemble_linear_stiffness(&mesh, &kin());
            let mut f = vec![0.0; mesh.n_dofs()];
            f[mesh.dof(mesh.n_nodes() - 1, Dof::Transverse)] = p;
            let x = solve_reduced(&k, &mesh.reduce_vec(&f));
            let full = mesh.expand_vec(&x);
            let tip_v = full[mesh.dof(mesh.n_nodes() - 1, Dof::Transverse)];
            let tip_t = full[mesh.dof(mesh.n_nodes() - 1, Dof::Rotation)];
            assert_relative_eq!(tip_v, p * L.powi(3) / (3.0 * ej), max_relative = 1e-8);
            assert_relative_eq!(tip_t, p * L * L / (2.0 * ej), max_relative = 1e-8);
        }
    }

    #[test]
    fn bridge_midspan_load_matches_closed_form() {
        let p = 1.0e-6;
        let ej = kin().ej;
        for n in [2usize, 8, 32, 64] {
            let mesh = Mesh::new(L, n, BoundaryCondition::ClampedClamped);
            let k = assemble_linear_stiffness(&mesh, &kin());
            let mut f = vec![0.0; mesh.n_dofs()];
            f[mesh.dof(n / 2, Dof::Transverse)] = p;
            let x = solve_reduced(&k, &mesh.reduce_vec(&f));
            let full = mesh.expand_vec(&x);
            let mid = full[mesh.dof(n / 2, Dof::Transverse)];
            assert_relative_eq!(mid, p * L.powi(3) / (192.0 * ej), max_relative = 1e-10);
        }
    }

    #[test]
    fn geometric_stiffness_is_linear_in_axial_force() {
        let mesh = Mesh::new(L, 8, BoundaryCondition::ClampedClamped);
        let n1: Vec<f64> = vec![2.4e-4; 8];
        let n2: Vec<f64> = vec![4.8e-4; 8];
        let k1 = assemble_geometric_stiffness(&mesh, &n1);
        let k2 = assemble_geometric_stiffness(&mesh, &n2);
        for i in 0..k1.n() {
            for j in 0..k1.n() {
                assert_eq!(2.0 * k1.get(i, j), k2.get(i, j));
            }
        }
        let kz = assemble_geometric_stiffness(&mesh, &vec![0.0; 8]);
        assert_eq!(kz.max_abs_diag(), 0.0);
    }

    #[test]
    fn tension_stiffens_the_transverse_response() {
        let mesh = Mesh::new(L, 16, BoundaryCondition::ClampedClamped);
        let k0 = assemble_linear_stiffness(&mesh, &kin());
        let n0 = 30.0e6 * W * T;
        let mut kt = k0.clone();
        kt.add_assign(&assemble_geometric_stiffness(&mesh, &vec![n0; 16]));

        let mut f = vec![0.0; mesh.n_dofs()];
        f[mesh.dof(8, Dof::Transverse)] = 1.0e-6;
        let soft = solve_reduced(&k0, &mesh.reduce_vec(&f));
        let stiff = solve_reduced(&kt, &mesh.reduce_vec(&f));
        let r = mesh.reduced_index(mesh.dof(8, Dof::Transverse)).unwrap();
        assert!(stiff[r] < soft[r]);
        assert!(stiff[r] > 0.0);
    }

    #[test]
    fn buckling_load_matches_euler() {
        let ej = kin().ej;
        let p_euler = 4.0 * std::f64::consts::PI.powi(2) * ej / (L * L);
        let mut errors = Vec::new();
        for n in [4usize, 8, 16] {
            let mesh = Mesh::new(L, n, BoundaryCondition::ClampedClamped);
            let kl = assemble_linear_stiffness(&mesh, &kin());
            let stable = |p: f64| {
                let mut k = kl.clone();
                k.add_assign(&assemble_geometric_stiffness(&mesh, &vec![-p; n]));
                k.ldlt().map(|f| f.is_positive_definite()).unwrap_or(false)
            };
            assert!(stable(0.5 * p_euler));
            assert!(!stable(2.0 * p_euler));
            let (mut lo, mut hi) = (0.5 * p_euler, 2.0 * p_euler);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if stable(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let p_cr = 0.5 * (lo + hi);
            errors.push((p_cr - p_euler).abs() / p_euler);
        }
        assert!(
            errors[2] < 0.01,
            "buckling error at 16 elements: {:.2e}",
            errors[2]
        );
        assert!(errors[1] <= errors[0] + 1e-12);
        assert!(errors[2] <= errors[1] + 1e-12);
    }

    #[test]
    fn internal_force_is_zero_at_rest_without_prestress() {
        let mesh = Mesh::new(L, 8, BoundaryCondition::Cantilever);
        let r = internal_force(
            &mesh,
            &kin(),
            &InitialState::zero(),
            &BeamState::zero(&mesh),
        );
        assert!(r.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn prestressed_bridge_at_rest_is_self_equilibrated_with_end_reactions() {
        let mesh = Mesh::new(L, 8, BoundaryCondition::ClampedClamped);
        let n0 = 30.0e6 * W * T;
        let init = InitialState {
            sigma0: 30.0e6,
            n0,
            ..Default::default()
        };
        let r = internal_force(&mesh, &kin(), &init, &BeamState::zero(&mesh));
        for &dof in mesh.free_dofs() {
            assert!(r[dof].abs() <= n0 * 1e-12, "free residual {}", r[dof]);
        }
        let left = r[mesh.dof(0, Dof::Axial)];
        let right = r[mesh.dof(mesh.n_nodes() - 1, Dof::Axial)];
        assert_relative_eq!(left, -n0, max_relative = 1e-12);
        assert_relative_eq!(right, n0, max_relative = 1e-12);
    }

    #[test]
    fn linear_kinematics_reduce_to_stiffness_times_displacement() {
        let mesh = Mesh::new(L, 8, BoundaryCondition::Cantilever);
        let lin = kin().linear();
        let k = assemble_linear_stiffness(&mesh, &lin);
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let mut q = BeamState::zero(&mesh);
            for &dof in mesh.free_dofs() {
                q.dofs[dof] = rng.gen_range(-2.0e-6..2.0e-6);
            }
            let r = internal_force(&mesh, &lin, &InitialState::zero(), &q);
            let kq = k.mul_vec(&mesh.reduce_vec(&q.dofs));
            let r_red = mesh.reduce_vec(&r);
            let scale = kq.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            for i in 0..kq.len() {
                assert!(
                    (r_red[i] - kq[i]).abs() <= scale * 1e-13,
                    "patch mismatch at {i}: {} vs {}",
                    r_red[i],
                    kq[i]
                );
            }
        }
    }

    #[test]
    fn tangent_at_rest_is_linear_plus_geometric_stiffness() {
        let mesh = Mesh::new(L, 8, BoundaryCondition::ClampedClamped);
        let n0 = 30.0e6 * W * T;
        let init = InitialState {
            sigma0: 30.0e6,
            n0,
            ..Default::default()
        };
        let kt = tangent_stiffness(&mesh, &kin(), &init, &BeamState::zero(&mesh));
        let kl = assemble_linear_stiffness(&mesh, &kin());
        let kg = assemble_geometric_stiffness(&mesh, &vec![n0; 8]);
        for i in 0..kt.n() {
            for j in 0..kt.n() {
                let expect = kl.get(i, j) + kg.get(i, j);
                let tol = (expect.abs() + kl.max_abs_diag()) * 1e-12;
                assert!(
                    (kt.get(i, j) - expect).abs() <= tol,
                    "({i},{j}): {} vs {}",
                    kt.get(i, j),
                    expect
                );
            }
        }
    }

    #[test]
    fn tangent_matches_finite_differences() {
        let mesh = Mesh::new(L, 6, BoundaryCondition::Cantilever);
        let init = InitialState {
            kappa0: -40.0,
            ..Default::default()
        };
        let mut rng = StdRng::seed_from_u64(123);
        let g0 = 3.0e-6;
        let delta = 1.0e-6 * g0;
        for _ in 0..20 {
            let mut q = BeamState::zero(&mesh);
            for &dof in mesh.free_dofs() {
                q.dofs[dof] = rng.gen_range(-0.3e-6..0.3e-6);
            }
            let kt = tangent_stiffness(&mesh, &kin(), &init, &q);

            let nf = mesh.n_free();
            let mut fd = vec![vec![0.0; nf]; nf];
            for (col, &dof) in mesh.free_dofs().iter().enumerate() {
                let mut qp = q.clone();
                qp.dofs[dof] += delta;
                let mut qm = q.clone();
                qm.dofs[dof] -= delta;
                let rp = mesh.reduce_vec(&internal_force(&mesh, &kin(), &init, &qp));
                let rm = mesh.reduce_vec(&internal_force(&mesh, &kin(), &init, &qm));
                for row in 0..nf {
                    fd[row][col] = (rp[row] - rm[row]) / (2.0 * delta);
                }
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..nf {
                for j in 0..nf {
                    num += (kt.get(i, j) - fd[i][j]).powi(2);
                    den += kt.get(i, j).powi(2);
                }
            }
            let rel = (num / den).sqrt();
            assert!(rel < 1e-6, "FD tangent mismatch {rel:.3e}");
        }
    }

    #[test]
    fn released_cantilever_relaxes_to_its_stress_free_curvature() {
        // Stress-free curvature kappa0 (gap-closing negative here, i.e.
        // a rise) must relax to tip deflection kappa0 * L^2 / 2. The
        // quadratic deflection plus the axial field that zeroes each
        // element's average membrane strain is exactly representable,
        // so the match is to roundoff at every mesh.
        let y = 6.0e-6;
        let kappa0 = -2.0 * y / (L * L);
        let init = InitialState {
            kappa0,
            ..Default::default()
        };
        for n in [4usize, 8, 16, 32] {
            let mesh = Mesh::new(L, n, BoundaryCondition::Cantilever);
            let mut q = BeamState::zero(&mesh);
            for _ in 0..25 {
                let (r, kt) = internal_force_and_tangent(&mesh, &kin(), &init, &q);
                let mut rhs = mesh.reduce_vec(&r);
                for v in rhs.iter_mut() {
                    *v = -*v;
                }
                let dq = kt.ldlt().unwrap().solve(&rhs);
                let full = mesh.expand_vec(&dq);
                for dof in 0..mesh.n_dofs() {
                    q.dofs[dof] += full[dof];
                }
            }
            let tip = q.transverse(&mesh, mesh.n_nodes() - 1);
            let expect = kappa0 * L * L / 2.0;
            assert_relative_eq!(tip, expect, max_relative = 1e-9);

            // And the relaxed beam carries no membrane force.
            let n_span = element_axial_forces(&mesh, &kin(), &init, &q);
            let scale = kin().ea * y * y / (L * L);
            for ne in n_span {
                assert!(ne.abs() <= scale * 1e-9, "leftover N = {ne:.3e}");
            }
        }
    }

    #[test]
    fn axial_resultant_is_uniform_for_a_smooth_deflection() {
        // Impose a clamped-clamped transverse profile, relax the axial
        // DOFs (the axial subproblem is linear in u, so one solve of the
        // u-block does it), and check the membrane force is constant
        // along the span.
        let n = 32;
        let mesh = Mesh::new(L, n, BoundaryCondition::ClampedClamped);
        let k = kin();
        let amp = 0.8e-6;
        let mut q = BeamState::zero(&mesh);
        for node in 0..mesh.n_nodes() {
            let x = mesh.node_x(node) / L;
            let s = (std::f64::consts::PI * x).sin();
            let ds = std::f64::consts::PI / L * (std::f64::consts::PI * x).cos();
            let vd = mesh.dof(node, Dof::Transverse);
            if !mesh.is_constrained(vd) {
                q.dofs[vd] = amp * s * s;
                q.dofs[mesh.dof(node, Dof::Rotation)] = 2.0 * amp * s * ds;
            }
        }

        let (r, kt) = internal_force_and_tangent(&mesh, &k, &InitialState::zero(), &q);
        let r_red = mesh.reduce_vec(&r);
        let axial_reduced: Vec<usize> = (1..mesh.n_nodes() - 1)
            .map(|node| mesh.reduced_index(mesh.dof(node, Dof::Axial)).unwrap())
            .collect();
        let m = axial_reduced.len();
        let kuu =
            nalgebra::DMatrix::from_fn(m, m, |a, b| kt.get(axial_reduced[a], axial_reduced[b]));
        let ru = nalgebra::DVector::from_fn(m, |a, _| -r_red[axial_reduced[a]]);
        let du = kuu.lu().solve(&ru).expect("axial block must be regular");
        for (a, node) in (1..mesh.n_nodes() - 1).enumerate() {
            q.dofs[mesh.dof(node, Dof::Axial)] += du[a];
        }

        let forces = element_axial_forces(&mesh, &k, &InitialState::zero(), &q);
        let mean = forces.iter().sum::<f64>() / forces.len() as f64;
        assert!(mean > 0.0, "stretching a pinned profile must be tensile");
        for f in &forces {
            assert!(
                (f - mean).abs() <= mean.abs() * 0.01,
                "axial force varies: {f} vs mean {mean}"
            );
        }
    }

    #[test]
    fn constraint_check_flags_a_floating_beam() {
        let free = Mesh::free_free(L, 4);
        assert!(check_well_constrained(&free, &kin()).is_err());
        let held = Mesh::new(L, 4, BoundaryCondition::Cantilever);
        assert!(check_well_constrained(&held, &kin()).is_ok());
    }
}
