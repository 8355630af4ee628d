//! Plain-text specimen descriptions.
//!
//! One `key = value` pair per line, `#` starts a comment, blank lines are
//! ignored. Geometry is given in microns, stress in MPa, the modulus in
//! GPa. Example:
//!
//! ```text
//! name = bridge-a
//! bc = clamped          # cantilever | clamped
//! L_um = 541.8
//! w_um = 32.2
//! t_um = 2.68
//! g_um = 2.83
//! E_GPa = 80
//! nu = 0.42
//! sigma0_MPa = 30
//! n_elements = 32
//! ```
//!
//! The reader is strict: unknown keys, duplicate keys and keys that do not
//! apply to the chosen boundary condition are errors that name the key and
//! line, never silently ignored. `sigma0_MPa` is for clamped beams only;
//! `y_tip_um` / `kappa0_per_um` (mutually exclusive) are for cantilevers
//! only.

use super::{BoundaryCondition, DomainError, InitialShape, Material, Section, Specimen};
use crate::units;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}` (first given on line {first})")]
    DuplicateKey {
        line: usize,
        key: String,
        first: usize,
    },
    #[error("line {line}: `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("key `{key}` does not apply to bc = {bc}: {reason}")]
    WrongBc {
        key: &'static str,
        bc: &'static str,
        reason: &'static str,
    },
    #[error("`y_tip_um` and `kappa0_per_um` are mutually exclusive; give one")]
    ShapeOverspecified,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

const KEYS: [&str; 14] = [
    "name",
    "bc",
    "L_um",
    "w_um",
    "t_um",
    "g_um",
    "E_GPa",
    "nu",
    "sigma0_MPa",
    "y_tip_um",
    "kappa0_per_um",
    "eps_r",
    "fringing",
    "n_elements",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SpecimenConfig {
    pub specimen: Specimen,
    /// Mesh resolution override, if the file pins one.
    pub n_elements: Option<usize>,
}

struct RawEntry {
    line: usize,
    value: String,
}

fn parse_f64(raw: &RawEntry, key: &str) -> Result<f64, ConfigError> {
    let v: f64 = raw.value.parse().map_err(|_| ConfigError::BadValue {
        line: raw.line,
        key: key.to_string(),
        reason: format!("not a number: `{}`", raw.value),
    })?;
    if !v.is_finite() {
        return Err(ConfigError::BadValue {
            line: raw.line,
            key: key.to_string(),
            reason: "must be finite".into(),
        });
    }
    Ok(v)
}

pub fn parse_config(text: &str) -> Result<SpecimenConfig, ConfigError> {
    let mut entries: Vec<(String, RawEntry)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.split_once('#') {
            Some((head, _)) => head,
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Malformed {
            line: line_no,
            text: line.to_string(),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line: line_no, key });
        }
        if let Some((_, first)) = entries.iter().find(|(k, _)| *k == key) {
            return Err(ConfigError::DuplicateKey {
                line: line_no,
                key,
                first: first.line,
            });
        }
        entries.push((
            key,
            RawEntry {
                line: line_no,
                value,
            },
        ));
    }

    let take = |key: &'static str| entries.iter().find(|(k, _)| k == key).map(|(_, e)| e);
    let take_f64 = |key: &'static str| -> Result<Option<f64>, ConfigError> {
        take(key).map(|e| parse_f64(e, key)).transpose()
    };

    let name = take("name")
        .ok_or(ConfigError::Missing("name"))?
        .value
        .clone();
    let bc_entry = take("bc").ok_or(ConfigError::Missing("bc"))?;
    let bc = match bc_entry.value.as_str() {
        "cantilever" => BoundaryCondition::Cantilever,
        "clamped" => BoundaryCondition::ClampedClamped,
        other => {
            return Err(ConfigError::BadValue {
                line: bc_entry.line,
                key: "bc".into(),
                reason: format!("expected `cantilever` or `clamped`, got `{other}`"),
            })
        }
    };

    let l_um = take_f64("L_um")?.ok_or(ConfigError::Missing("L_um"))?;
    let w_um = take_f64("w_um")?.ok_or(ConfigError::Missing("w_um"))?;
    let t_um = take_f64("t_um")?.ok_or(ConfigError::Missing("t_um"))?;
    let g_um = take_f64("g_um")?.ok_or(ConfigError::Missing("g_um"))?;
    let e_gpa = take_f64("E_GPa")?;
    let nu = take_f64("nu")?;
    let sigma0_mpa = take_f64("sigma0_MPa")?;
    let y_tip_um = take_f64("y_tip_um")?;
    let kappa0_per_um = take_f64("kappa0_per_um")?;
    let eps_r = take_f64("eps_r")?;

    match bc {
        BoundaryCondition::Cantilever => {
            if sigma0_mpa.is_some() {
                return Err(ConfigError::WrongBc {
                    key: "sigma0_MPa",
                    bc: "cantilever",
                    reason: "a free end relaxes membrane stress; describe curl via y_tip_um or kappa0_per_um",
                });
            }
        }
        BoundaryCondition::ClampedClamped => {
            if y_tip_um.is_some() {
                return Err(ConfigError::WrongBc {
                    key: "y_tip_um",
                    bc: "clamped",
                    reason: "anchors hold the beam flat; use sigma0_MPa",
                });
            }
            if kappa0_per_um.is_some() {
                return Err(ConfigError::WrongBc {
                    key: "kappa0_per_um",
                    bc: "clamped",
                    reason: "anchors hold the beam flat; use sigma0_MPa",
                });
            }
        }
    }
    if y_tip_um.is_some() && kappa0_per_um.is_some() {
        return Err(ConfigError::ShapeOverspecified);
    }

    let initial_shape = if let Some(y) = y_tip_um {
        InitialShape::TipRise(units::um_to_m(y))
    } else if let Some(k) = kappa0_per_um {
        InitialShape::UniformCurvature(units::per_um_to_per_m(k))
    } else {
        InitialShape::Flat
    };

    let fringing = match take("fringing") {
        None => false,
        Some(e) => match e.value.as_str() {
            "on" => true,
            "off" => false,
            other => {
                return Err(ConfigError::BadValue {
                    line: e.line,
                    key: "fringing".into(),
                    reason: format!("expected `on` or `off`, got `{other}`"),
                })
            }
        },
    };

    let n_elements = match take("n_elements") {
        None => None,
        Some(e) => {
            let n: usize = e.value.parse().map_err(|_| ConfigError::BadValue {
                line: e.line,
                key: "n_elements".into(),
                reason: format!("not a positive integer: `{}`", e.value),
            })?;
            let min = match bc {
                BoundaryCondition::Cantilever => 1,
                BoundaryCondition::ClampedClamped => 2,
            };
            if n < min {
                return Err(ConfigError::BadValue {
                    line: e.line,
                    key: "n_elements".into(),
                    reason: format!("must be at least {min} for bc = {}", bc.label()),
                });
            }
            Some(n)
        }
    };

    if let Some(r) = eps_r {
        if r <= 0.0 {
            let e = take("eps_r").unwrap();
            return Err(ConfigError::BadValue {
                line: e.line,
                key: "eps_r".into(),
                reason: format!("must be positive, got {r}"),
            });
        }
    }

    let material = Material::new(
        e_gpa.map_or(Material::DEFAULT_E, units::gpa_to_pa),
        nu.unwrap_or(Material::DEFAULT_NU),
    )?;
    let specimen = Specimen {
        name,
        bc,
        length: units::um_to_m(l_um),
        section: Section::new(units::um_to_m(w_um), units::um_to_m(t_um))?,
        material,
        gap0: units::um_to_m(g_um),
        permittivity: units::VACUUM_PERMITTIVITY * eps_r.unwrap_or(1.0),
        residual_stress: units::mpa_to_pa(sigma0_mpa.unwrap_or(0.0)),
        initial_shape,
        fringing,
    };
    specimen.validate()?;
    Ok(SpecimenConfig {
        specimen,
        n_elements,
    })
}

/// Serializes a specimen back to the config format. Parsing the output
/// reproduces the specimen bit-for-bit.
pub fn write_config(specimen: &Specimen, n_elements: Option<usize>) -> String {
    let mut out = String::new();
    let mut push = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(&value);
        out.push('\n');
    };
    push("name", specimen.name.clone());
    push("bc", specimen.bc.label().to_string());
    push("L_um", format!("{}", units::m_to_um(specimen.length)));
    push(
        "w_um",
        format!("{}", units::m_to_um(specimen.section.width)),
    );
    push(
        "t_um",
        format!("{}", units::m_to_um(specimen.section.thickness)),
    );
    push("g_um", format!("{}", units::m_to_um(specimen.gap0)));
    push(
        "E_GPa",
        format!("{}", units::pa_to_gpa(specimen.material.young_modulus)),
    );
    push("nu", format!("{}", specimen.material.poisson_ratio));
    if specimen.residual_stress != 0.0 {
        push(
            "sigma0_MPa",
            format!("{}", units::pa_to_mpa(specimen.residual_stress)),
        );
    }
    match specimen.initial_shape {
        InitialShape::Flat => {}
        InitialShape::TipRise(y) => push("y_tip_um", format!("{}", units::m_to_um(y))),
        InitialShape::UniformCurvature(k) => {
            push("kappa0_per_um", format!("{}", units::per_m_to_per_um(k)))
        }
    }
    let eps_r = specimen.permittivity / units::VACUUM_PERMITTIVITY;
    if eps_r != 1.0 {
        push("eps_r", format!("{eps_r}"));
    }
    if specimen.fringing {
        push("fringing", "on".to_string());
    }
    if let Some(n) = n_elements {
        push("n_elements", format!("{n}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::load_catalog;

    const BRIDGE: &str = "\
name = bridge-a
bc = clamped
L_um = 541.8
w_um = 32.2
t_um = 2.68
g_um = 2.83
sigma0_MPa = 30
";

    #[test]
    fn parses_a_bridge_with_defaults() {
        let cfg = parse_config(BRIDGE).unwrap();
        let s = &cfg.specimen;
        assert_eq!(s.name, "bridge-a");
        assert_eq!(s.bc, BoundaryCondition::ClampedClamped);
        assert_eq!(s.length, units::um_to_m(541.8));
        assert_eq!(s.residual_stress, 3.0e7);
        assert_eq!(s.material.young_modulus, 80.0e9);
        assert_eq!(s.material.poisson_ratio, 0.42);
        assert_eq!(s.permittivity, units::VACUUM_PERMITTIVITY);
        assert!(!s.fringing);
        assert_eq!(cfg.n_elements, None);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text =
            format!("# header\n\n{BRIDGE}\n  # trailing comment\nn_elements = 48 # inline\n");
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.n_elements, Some(48));
    }

    #[test]
    fn unknown_key_names_key_and_line() {
        let text = format!("{BRIDGE}gap_um = 3\n");
        let err = parse_config(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("gap_um"), "{msg}");
        assert!(msg.contains("line 8"), "{msg}");
    }

    #[test]
    fn duplicate_key_is_rejected() {
        let text = format!("{BRIDGE}L_um = 100\n");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("duplicate key `L_um`"), "{msg}");
    }

    #[test]
    fn missing_required_key() {
        let msg = parse_config("name = x\nbc = clamped\n")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("L_um"), "{msg}");
    }

    #[test]
    fn zero_gap_is_a_domain_error() {
        let text = BRIDGE.replace("g_um = 2.83", "g_um = 0");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("gap0"), "{msg}");
    }

    #[test]
    fn non_finite_numbers_are_rejected() {
        let text = BRIDGE.replace("g_um = 2.83", "g_um = nan");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("finite"), "{msg}");
    }

    #[test]
    fn bc_conditional_keys() {
        let text = BRIDGE.replace("bc = clamped", "bc = cantilever");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("sigma0_MPa"), "{msg}");

        let text = format!("{BRIDGE}y_tip_um = 2\n").replace("sigma0_MPa = 30", "");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("y_tip_um"), "{msg}");
    }

    #[test]
    fn tip_rise_and_curvature_are_exclusive() {
        let text = "\
name = c
bc = cantilever
L_um = 190
w_um = 32
t_um = 2
g_um = 3
y_tip_um = 4
kappa0_per_um = 1e-4
";
        let msg = parse_config(text).unwrap_err().to_string();
        assert!(msg.contains("mutually exclusive"), "{msg}");
    }

    #[test]
    fn bad_bc_value_lists_choices() {
        let text = BRIDGE.replace("bc = clamped", "bc = pinned");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(
            msg.contains("cantilever") && msg.contains("clamped"),
            "{msg}"
        );
    }

    #[test]
    fn fringing_and_eps_r() {
        let text = format!("{BRIDGE}fringing = on\neps_r = 2.5\n");
        let s = parse_config(&text).unwrap().specimen;
        assert!(s.fringing);
        assert_eq!(s.permittivity, units::VACUUM_PERMITTIVITY * 2.5);
    }

    #[test]
    fn n_elements_bounds() {
        let text = format!("{BRIDGE}n_elements = 1\n");
        let msg = parse_config(&text).unwrap_err().to_string();
        assert!(msg.contains("at least 2"), "{msg}");
        let text = format!("{BRIDGE}n_elements = 2.5\n");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn round_trip_is_bit_exact_for_the_whole_catalog() {
        for entry in load_catalog() {
            let text = write_config(&entry.specimen, Some(32));
            let back = parse_config(&text).unwrap();
            assert_eq!(back.specimen, entry.specimen, "{}", entry.specimen.name);
            assert_eq!(back.n_elements, Some(32));

            let text = write_config(&entry.specimen, None);
            let back = parse_config(&text).unwrap();
            assert_eq!(back.specimen, entry.specimen);
            assert_eq!(back.n_elements, None);
        }
    }

    #[test]
    fn round_trip_preserves_options() {
        let mut s = load_catalog()[14].specimen.clone(); // geom5/sample1 area
        s.residual_stress = units::mpa_to_pa(30.0);
        s.fringing = true;
        s.material.young_modulus = units::gpa_to_pa(92.5);
        let back = parse_config(&write_config(&s, Some(64))).unwrap();
        assert_eq!(back.specimen, s);
        assert_eq!(back.n_elements, Some(64));
    }
}
