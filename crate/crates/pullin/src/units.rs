//! Boundary unit conversions.
//!
//! Geometry is entered in microns, stress in MPa, moduli in GPa; everything
//! internal is SI. These helpers are the only conversion path, and they are
//! written so that a value printed back out in user units survives a
//! round trip bit-exactly (divide on the way in, multiply by the same
//! constant on the way out).

/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854e-12;

const UM_PER_M: f64 = 1.0e6;
const PA_PER_MPA: f64 = 1.0e6;
const PA_PER_GPA: f64 = 1.0e9;

pub fn um_to_m(um: f64) -> f64 {
    um / UM_PER_M
}

pub fn m_to_um(m: f64) -> f64 {
    m * UM_PER_M
}

pub fn mpa_to_pa(mpa: f64) -> f64 {
    mpa * PA_PER_MPA
}

pub fn pa_to_mpa(pa: f64) -> f64 {
    pa / PA_PER_MPA
}

pub fn gpa_to_pa(gpa: f64) -> f64 {
    gpa * PA_PER_GPA
}

pub fn pa_to_gpa(pa: f64) -> f64 {
    pa / PA_PER_GPA
}

/// Curvature stated per micron to per meter.
pub fn per_um_to_per_m(k: f64) -> f64 {
    k * UM_PER_M
}

pub fn per_m_to_per_um(k: f64) -> f64 {
    k / UM_PER_M
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn micron_round_trip_is_exact_for_catalog_scale_values() {
        for um in [531.4, 33.5, 2.953, 2.996, 6.334, 190.3, 3.107, 0.032] {
            assert_eq!(m_to_um(um_to_m(um)), um);
        }
    }

    #[test]
    fn known_conversions() {
        assert_eq!(um_to_m(3.0), 3.0e-6);
        assert_eq!(mpa_to_pa(30.0), 3.0e7);
        assert_eq!(gpa_to_pa(80.0), 8.0e10);
        assert_eq!(pa_to_gpa(8.0e10), 80.0);
    }

    proptest! {
        #[test]
        fn round_trips_stay_within_one_ulp(x in 1.0e-3..1.0e4f64) {
            let back = m_to_um(um_to_m(x));
            prop_assert!((back - x).abs() <= x * f64::EPSILON);
            let back = pa_to_mpa(mpa_to_pa(x));
            prop_assert!((back - x).abs() <= x * f64::EPSILON);
            let back = pa_to_gpa(gpa_to_pa(x));
            prop_assert!((back - x).abs() <= x * f64::EPSILON);
        }
    }
}
