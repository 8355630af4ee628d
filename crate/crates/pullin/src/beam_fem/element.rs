//! Element-level kinematics: Gauss rules, shape functions on the natural
//! coordinate, and the section properties an element needs.

use crate::domain::Specimen;

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone, Copy)]
pub struct GaussRule {
    pub points: &'static [f64],
    pub weights: &'static [f64],
}

pub const GAUSS_2: GaussRule = GaussRule {
    points: &[-0.577_350_269_189_625_8, 0.577_350_269_189_625_8],
    weights: &[1.0, 1.0],
};

pub const GAUSS_3: GaussRule = GaussRule {
    points: &[-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4],
    weights: &[5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0],
};

pub const GAUSS_4: GaussRule = GaussRule {
    points: &[
        -0.861_136_311_594_052_6,
        -0.339_981_043_584_856_3,
        0.339_981_043_584_856_3,
        0.861_136_311_594_052_6,
    ],
    weights: &[
        0.347_854_845_137_453_86,
        0.652_145_154_862_546_1,
        0.652_145_154_862_546_1,
        0.347_854_845_137_453_86,
    ],
};

/// Shape functions and their x-derivatives at one natural coordinate.
/// Transverse entries are ordered `[N_v1, N_t1, N_v2, N_t2]`.
#[derive(Debug, Clone, Copy)]
pub struct ShapeEval {
    pub axial: [f64; 2],
    pub axial_dx: [f64; 2],
    pub transverse: [f64; 4],
    pub slope: [f64; 4],
    pub curvature: [f64; 4],
}

/// Evaluates linear axial and Hermite cubic transverse shapes at
/// `xi in [-1, 1]` for an element of length `h`. Derivatives are with
/// respect to x: d/dx = (2/h) d/dxi.
pub fn shapes_at(xi: f64, h: f64) -> ShapeEval {
    let dxi = 2.0 / h;
    let xi2 = xi * xi;

    let axial = [(1.0 - xi) / 2.0, (1.0 + xi) / 2.0];
    let axial_dx = [-1.0 / h, 1.0 / h];

    let transverse = [
        (2.0 - 3.0 * xi + xi2 * xi) / 4.0,
        h * (1.0 - xi - xi2 + xi2 * xi) / 8.0,
        (2.0 + 3.0 * xi - xi2 * xi) / 4.0,
        h * (-1.0 - xi + xi2 + xi2 * xi) / 8.0,
    ];
    let slope = [
        dxi * (-3.0 + 3.0 * xi2) / 4.0,
        dxi * h * (-1.0 - 2.0 * xi + 3.0 * xi2) / 8.0,
        dxi * (3.0 - 3.0 * xi2) / 4.0,
        dxi * h * (-1.0 + 2.0 * xi + 3.0 * xi2) / 8.0,
    ];
    let curvature = [
        dxi * dxi * (6.0 * xi) / 4.0,
        dxi * dxi * h * (-2.0 + 6.0 * xi) / 8.0,
        dxi * dxi * (-6.0 * xi) / 4.0,
        dxi * dxi * h * (2.0 + 6.0 * xi) / 8.0,
    ];

    ShapeEval {
        axial,
        axial_dx,
        transverse,
        slope,
        curvature,
    }
}

/// Shape rows spread over the local DOF order `[u1, v1, t1, u2, v2, t2]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BRows {
    /// du/dx row.
    pub axial: [f64; 6],
    /// dv/dx row (G).
    pub slope: [f64; 6],
    /// d2v/dx2 row (B_b).
    pub curvature: [f64; 6],
    /// v row, for load consistency and gap evaluation.
    pub transverse: [f64; 6],
}

pub(crate) fn b_rows(sh: &ShapeEval) -> BRows {
    BRows {
        axial: [sh.axial_dx[0], 0.0, 0.0, sh.axial_dx[1], 0.0, 0.0],
        slope: [0.0, sh.slope[0], sh.slope[1], 0.0, sh.slope[2], sh.slope[3]],
        curvature: [
            0.0,
            sh.curvature[0],
            sh.curvature[1],
            0.0,
            sh.curvature[2],
            sh.curvature[3],
        ],
        transverse: [
            0.0,
            sh.transverse[0],
            sh.transverse[1],
            0.0,
            sh.transverse[2],
            sh.transverse[3],
        ],
    }
}

/// Section stiffness an element carries: the constitutive diagonal
/// `D = diag(EA, EJ)` with E already the effective (plate or plain)
/// modulus, plus the switch for the von Karman membrane term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementKinematics {
    /// Membrane stiffness E_eff * A (N).
    pub ea: f64,
    /// Bending stiffness E_eff * J (N m^2).
    pub ej: f64,
    /// Include the (dv/dx)^2/2 membrane term. Off reduces the element to
    /// the linear Euler-Bernoulli beam.
    pub von_karman: bool,
}

impl ElementKinematics {
    pub fn new(e_eff: f64, area: f64, second_moment: f64) -> ElementKinematics {
        ElementKinematics {
            ea: e_eff * area,
            ej: e_eff * second_moment,
            von_karman: true,
        }
    }

    pub fn from_specimen(s: &Specimen) -> ElementKinematics {
        ElementKinematics::new(
            s.effective_modulus(),
            s.section.area(),
            s.section.second_moment(),
        )
    }

    pub fn linear(mut self) -> ElementKinematics {
        self.von_karman = false;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_rules_integrate_polynomials_exactly() {
        for (rule, max_degree) in [(GAUSS_2, 3usize), (GAUSS_3, 5), (GAUSS_4, 7)] {
            for k in 0..=max_degree {
                let num: f64 = rule
                    .points
                    .iter()
                    .zip(rule.weights)
                    .map(|(x, w)| w * x.powi(k as i32))
                    .sum();
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                assert_relative_eq!(num, exact, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn shapes_interpolate_nodal_values() {
        let h = 0.37e-4;
        let at0 = shapes_at(-1.0, h);
        assert_relative_eq!(at0.transverse[0], 1.0);
        assert_relative_eq!(at0.transverse[2], 0.0);
        assert_relative_eq!(at0.slope[0], 0.0, epsilon = 1e-12 / h);
        assert_relative_eq!(at0.slope[1], 1.0);
        assert_relative_eq!(at0.axial[0], 1.0);
        assert_relative_eq!(at0.axial[1], 0.0);

        let at1 = shapes_at(1.0, h);
        assert_relative_eq!(at1.transverse[2], 1.0);
        assert_relative_eq!(at1.transverse[0], 0.0);
        assert_relative_eq!(at1.slope[3], 1.0);
        assert_relative_eq!(at1.slope[2], 0.0, epsilon = 1e-12 / h);
    }

    #[test]
    fn transverse_shapes_partition_unity() {
        let h = 2.0e-5;
        for xi in [-1.0, -0.3, 0.0, 0.61, 1.0] {
            let sh = shapes_at(xi, h);
            assert_relative_eq!(sh.transverse[0] + sh.transverse[2], 1.0, epsilon = 1e-14);
            assert_relative_eq!(sh.axial[0] + sh.axial[1], 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn rigid_and_linear_fields_are_reproduced() {
        // v = a + b x has constant slope b and zero curvature.
        let h = 1.3e-5;
        let (a, b) = (2.1e-6, 0.04);
        let qe = [0.0, a, b, 0.0, a + b * h, b];
        for &xi in GAUSS_3.points {
            let rows = b_rows(&shapes_at(xi, h));
            let v: f64 = (0..6).map(|i| rows.transverse[i] * qe[i]).sum();
            let s: f64 = (0..6).map(|i| rows.slope[i] * qe[i]).sum();
            let c: f64 = (0..6).map(|i| rows.curvature[i] * qe[i]).sum();
            let x = h * (1.0 + xi) / 2.0;
            assert_relative_eq!(v, a + b * x, max_relative = 1e-13);
            assert_relative_eq!(s, b, max_relative = 1e-13);
            assert_relative_eq!(c, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn quadratic_field_has_constant_curvature() {
        // v = x^2 / 2 -> curvature 1 everywhere.
        let h = 2.0e-5;
        let v = |x: f64| x * x / 2.0;
        let qe = [0.0, v(0.0), 0.0, 0.0, v(h), h];
        for &xi in GAUSS_3.points {
            let rows = b_rows(&shapes_at(xi, h));
            let c: f64 = (0..6).map(|i| rows.curvature[i] * qe[i]).sum();
            assert_relative_eq!(c, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn kinematics_from_specimen_uses_effective_modulus() {
        let s = crate::domain::lookup("geom5/sample1").unwrap().specimen;
        let kin = ElementKinematics::from_specimen(&s);
        let e_eff = s.effective_modulus();
        assert_relative_eq!(kin.ea, e_eff * s.section.area(), max_relative = 1e-14);
        assert_relative_eq!(
            kin.ej,
            e_eff * s.section.second_moment(),
            max_relative = 1e-14
        );
        assert!(kin.von_karman);
        assert!(!kin.linear().von_karman);
    }
}
