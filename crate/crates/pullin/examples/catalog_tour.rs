//! Walks the built-in specimen catalog and checks two predictions
//! against the measured pull-in windows.
//!
//! The catalog stores the measured dimensions of nineteen electroplated
//! gold beams together with the voltage window in which each one was
//! observed to collapse. Specimens are stored stress-free: for bridges
//! the published residual stress is separate metadata, applied here
//! explicitly before sweeping.
//!
//! Run with `cargo run --example catalog_tour`.

use std::error::Error;

use pullin::domain::catalog::load_catalog;
use pullin::domain::BoundaryCondition;
use pullin::solver::{pullin_voltage, SolverConfig};
use pullin::units::{m_to_um, pa_to_mpa};

fn main() -> Result<(), Box<dyn Error>> {
    let entries = load_catalog();
    println!("{} specimens on file\n", entries.len());
    println!(
        "{:<15} {:<10} {:>7} {:>6} {:>6} {:>6}  {:>10} {:>12}",
        "id", "bc", "L_um", "w_um", "t_um", "g0_um", "sigma0_MPa", "measured_V"
    );
    for e in &entries {
        let s = &e.specimen;
        let sigma = e
            .published_prestress
            .map(|p| format!("{:.0}", pa_to_mpa(p)))
            .unwrap_or_else(|| "-".into());
        let note = if e.incomplete { "  (incomplete)" } else { "" };
        println!(
            "{:<15} {:<10} {:>7.1} {:>6.1} {:>6.3} {:>6.3}  {:>10} {:>9.0}-{:.0}{}",
            s.name,
            s.bc.label(),
            m_to_um(s.length),
            m_to_um(s.section.width),
            m_to_um(s.section.thickness),
            m_to_um(s.gap0),
            sigma,
            e.measured_vpi.0,
            e.measured_vpi.1,
            note,
        );
    }

    // Two spot checks: a stubby cantilever and a pre-stressed bridge.
    let cfg = SolverConfig::default();
    println!("\nspot checks (E = 80 GPa assumed):");
    for id in ["geom3/sample1", "geom5/sample1"] {
        let entry = entries
            .iter()
            .find(|e| e.specimen.name == id)
            .expect("spot-check id is in the catalog");
        let spec = match entry.published_prestress {
            Some(p) => entry.specimen.with_residual_stress(p),
            None => entry.specimen.clone(),
        };
        let p = pullin_voltage(&spec, &cfg)?;
        let tag = match spec.bc {
            BoundaryCondition::Cantilever => "cantilever",
            BoundaryCondition::ClampedClamped => "bridge",
        };
        println!(
            "  {id} ({tag}, sigma0 = {:.0} MPa): predicted {:.2} V, measured {:.0}-{:.0} V",
            pa_to_mpa(spec.residual_stress),
            p.v_pi,
            entry.measured_vpi.0,
            entry.measured_vpi.1,
        );
    }
    println!(
        "\nBridges land close once their published stress is applied; cantilever\n\
         families carry the release-curl idealization error and are the honest\n\
         scatter band of the model (see `cantilever_pullin`)."
    );
    Ok(())
}
