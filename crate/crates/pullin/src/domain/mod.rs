//! Specimen description: material, cross-section, boundary condition and
//! the initial state the beam was released in.
//!
//! Everything here is plain immutable data in SI units. Geometry for the
//! micro-machined test structures arrives in microns through
//! [`config`] or the built-in [`catalog`]; the
//! constructors validate and convert once, and the analysis modules never
//! see user units.

pub mod catalog;
pub mod config;

pub use catalog::{load_catalog, lookup, CatalogEntry};

use crate::units;

#[derive(Debug, thiserror::Error)]
pub enum DomainError {
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },
    #[error("unknown catalog id `{0}` (expected the form geomN/sampleM; see `pullin catalog`)")]
    UnknownCatalogId(String),
    #[error("{0}")]
    Constraint(String),
}

fn require(ok: bool, field: &'static str, reason: impl Into<String>) -> Result<(), DomainError> {
    if ok {
        Ok(())
    } else {
        Err(DomainError::InvalidField {
            field,
            reason: reason.into(),
        })
    }
}

/// Isotropic elastic material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Young's modulus E (Pa).
    pub young_modulus: f64,
    /// Poisson ratio nu.
    pub poisson_ratio: f64,
}

impl Material {
    /// Default electroplated-gold values used when a config does not
    /// override them.
    pub const DEFAULT_E: f64 = 80.0e9;
    pub const DEFAULT_NU: f64 = 0.42;

    pub fn new(young_modulus: f64, poisson_ratio: f64) -> Result<Self, DomainError> {
        require(
            young_modulus.is_finite() && young_modulus > 0.0,
            "young_modulus",
            format!("must be positive and finite, got {young_modulus}"),
        )?;
        require(
            poisson_ratio.is_finite() && (0.0..0.5).contains(&poisson_ratio),
            "poisson_ratio",
            format!("must lie in [0, 0.5), got {poisson_ratio}"),
        )?;
        Ok(Material {
            young_modulus,
            poisson_ratio,
        })
    }
}

impl Default for Material {
    fn default() -> Self {
        Material {
            young_modulus: Self::DEFAULT_E,
            poisson_ratio: Self::DEFAULT_NU,
        }
    }
}

/// Rectangular cross-section. Area and second moment are always derived
/// from width and thickness, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    /// Width w (m), the face toward the electrode.
    pub width: f64,
    /// Thickness t (m), the bending direction.
    pub thickness: f64,
    /// Use the plate modulus E/(1-nu^2) instead of E. Set automatically
    /// for wide sections (w/t >= 5), where transverse contraction is
    /// constrained.
    pub use_plate_modulus: bool,
}

impl Section {
    pub fn new(width: f64, thickness: f64) -> Result<Self, DomainError> {
        require(
            width.is_finite() && width > 0.0,
            "width",
            format!("must be positive and finite, got {width}"),
        )?;
        require(
            thickness.is_finite() && thickness > 0.0,
            "thickness",
            format!("must be positive and finite, got {thickness}"),
        )?;
        Ok(Section {
            width,
            thickness,
            use_plate_modulus: width / thickness >= 5.0,
        })
    }

    pub fn with_modulus_rule(
        width: f64,
        thickness: f64,
        use_plate_modulus: bool,
    ) -> Result<Self, DomainError> {
        let mut s = Section::new(width, thickness)?;
        s.use_plate_modulus = use_plate_modulus;
        Ok(s)
    }

    /// Cross-section area w*t (m^2).
    pub fn area(&self) -> f64 {
        self.width * self.thickness
    }

    /// Second moment of area about the bending axis, w*t^3/12 (m^4).
    pub fn second_moment(&self) -> f64 {
        self.width * self.thickness.powi(3) / 12.0
    }
}

/// Bending modulus actually used by the beam model: plain E for narrow
/// sections, plate modulus E/(1-nu^2) for wide ones.
pub fn effective_modulus(material: &Material, section: &Section) -> f64 {
    if section.use_plate_modulus {
        material.young_modulus / (1.0 - material.poisson_ratio * material.poisson_ratio)
    } else {
        material.young_modulus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Clamped at x = 0, free at x = L.
    Cantilever,
    /// Clamped at both ends (a bridge).
    ClampedClamped,
}

impl BoundaryCondition {
    pub fn label(&self) -> &'static str {
        match self {
            BoundaryCondition::Cantilever => "cantilever",
            BoundaryCondition::ClampedClamped => "clamped",
        }
    }
}

/// Stress-free shape the beam was released in. Cantilevers curl out of
/// plane when the deposition stress gradient relaxes; the measured tip
/// rise (away from the electrode) or an equivalent uniform curvature
/// captures that. Bridges cannot relax and stay flat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialShape {
    Flat,
    /// Tip rise y at the free end (m, positive away from the electrode).
    TipRise(f64),
    /// Uniform stress-free curvature kappa0 (1/m, positive bowing away
    /// from the electrode).
    UniformCurvature(f64),
}

/// One beam ready for analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Specimen {
    pub name: String,
    pub bc: BoundaryCondition,
    /// Suspended length L (m).
    pub length: f64,
    pub section: Section,
    pub material: Material,
    /// As-fabricated gap g0 to the counter-electrode (m).
    pub gap0: f64,
    /// Permittivity of the dielectric in the gap (F/m), eps0 * eps_r.
    pub permittivity: f64,
    /// Residual (membrane) stress sigma0 (Pa, tensile positive).
    /// Meaningful for clamped-clamped beams only.
    pub residual_stress: f64,
    pub initial_shape: InitialShape,
    /// Apply the Palmer fringing-field correction to the electrostatic
    /// load.
    pub fringing: bool,
}

impl Specimen {
    pub fn validate(&self) -> Result<(), DomainError> {
        require(!self.name.is_empty(), "name", "must not be empty")?;
        require(
            self.length.is_finite() && self.length > 0.0,
            "length",
            format!("must be positive and finite, got {} m", self.length),
        )?;
        require(
            self.gap0.is_finite() && self.gap0 > 0.0,
            "gap0",
            format!("must be positive and finite, got {} m", self.gap0),
        )?;
        require(
            self.permittivity.is_finite() && self.permittivity > 0.0,
            "permittivity",
            format!("must be positive and finite, got {}", self.permittivity),
        )?;
        require(
            self.residual_stress.is_finite(),
            "residual_stress",
            "must be finite",
        )?;
        Material::new(self.material.young_modulus, self.material.poisson_ratio)?;
        Section::new(self.section.width, self.section.thickness)?;
        match self.bc {
            BoundaryCondition::Cantilever => {
                if self.residual_stress != 0.0 {
                    return Err(DomainError::Constraint(
                        "a cantilever relaxes membrane pre-stress through its free end; \
                         sigma0 must be 0 (model curl via y_tip_um or kappa0_per_um instead)"
                            .into(),
                    ));
                }
            }
            BoundaryCondition::ClampedClamped => {
                if self.initial_shape != InitialShape::Flat {
                    return Err(DomainError::Constraint(
                        "a clamped-clamped beam is held flat by its anchors; \
                         use sigma0_MPa for the locked-in stress instead of an initial shape"
                            .into(),
                    ));
                }
            }
        }
        match self.initial_shape {
            InitialShape::Flat => {}
            InitialShape::TipRise(y) => {
                require(y.is_finite(), "tip rise", "must be finite")?;
            }
            InitialShape::UniformCurvature(k) => {
                require(k.is_finite(), "initial curvature", "must be finite")?;
            }
        }
        Ok(())
    }

    /// Stress-free curvature (1/m, positive away from the electrode).
    /// A measured tip rise y maps to the uniform curvature 2*y/L^2 that
    /// produces it.
    pub fn initial_curvature(&self) -> f64 {
        match self.initial_shape {
            InitialShape::Flat => 0.0,
            InitialShape::UniformCurvature(k) => k,
            InitialShape::TipRise(y) => 2.0 * y / (self.length * self.length),
        }
    }

    /// Free-end rise implied by the initial shape (m).
    pub fn tip_rise(&self) -> f64 {
        match self.initial_shape {
            InitialShape::Flat => 0.0,
            InitialShape::TipRise(y) => y,
            InitialShape::UniformCurvature(k) => k * self.length * self.length / 2.0,
        }
    }

    /// Bending modulus used by the beam model (Pa).
    pub fn effective_modulus(&self) -> f64 {
        effective_modulus(&self.material, &self.section)
    }

    /// Axial pre-load sigma0 * A locked in at release (N, tensile
    /// positive). Zero for cantilevers.
    pub fn axial_preload(&self) -> f64 {
        match self.bc {
            BoundaryCondition::Cantilever => 0.0,
            BoundaryCondition::ClampedClamped => self.residual_stress * self.section.area(),
        }
    }

    pub fn with_residual_stress(&self, sigma0_pa: f64) -> Specimen {
        let mut s = self.clone();
        s.residual_stress = sigma0_pa;
        s
    }

    pub fn with_young_modulus(&self, e_pa: f64) -> Specimen {
        let mut s = self.clone();
        s.material.young_modulus = e_pa;
        s
    }
}

/// Convenience constructor used by the catalog and tests: microns in,
/// validated specimen out.
#[allow(clippy::too_many_arguments)]
pub fn specimen_from_um(
    name: &str,
    bc: BoundaryCondition,
    l_um: f64,
    w_um: f64,
    t_um: f64,
    g_um: f64,
    sigma0_mpa: f64,
    shape: InitialShape,
) -> Result<Specimen, DomainError> {
    let s = Specimen {
        name: name.to_string(),
        bc,
        length: units::um_to_m(l_um),
        section: Section::new(units::um_to_m(w_um), units::um_to_m(t_um))?,
        material: Material::default(),
        gap0: units::um_to_m(g_um),
        permittivity: units::VACUUM_PERMITTIVITY,
        residual_stress: units::mpa_to_pa(sigma0_mpa),
        initial_shape: shape,
        fringing: false,
    };
    s.validate()?;
    Ok(s)
}
