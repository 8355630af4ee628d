//! Describing a device that is not in the catalog: building a specimen
//! in code, round-tripping it through the config-file format, and
//! sweeping it.
//!
//! The config format is the same one the `pullin` binary accepts with
//! `--config`, so anything assembled here can be saved and re-run from
//! the command line unchanged.
//!
//! Run with `cargo run --example custom_specimen`.

use std::error::Error;

use pullin::domain::config::{parse_config, write_config};
use pullin::domain::{specimen_from_um, BoundaryCondition, InitialShape};
use pullin::solver::{pullin_voltage, SolverConfig};
use pullin::units::um_to_m;

fn main() -> Result<(), Box<dyn Error>> {
    // A 400 um gold bridge, 10 MPa of plating tension, 2.5 um gap.
    let spec = specimen_from_um(
        "demo-bridge",
        BoundaryCondition::ClampedClamped,
        400.0, // length
        30.0,  // width
        2.5,   // thickness
        2.5,   // gap
        10.0,  // sigma0 (MPa)
        InitialShape::Flat,
    )?;

    // Persist it in the CLI's config format and read it back; the
    // round trip is exact.
    let text = write_config(&spec, Some(48));
    println!("config file:\n---\n{text}---\n");
    let parsed = parse_config(&text)?;
    assert_eq!(parsed.specimen, spec);
    assert_eq!(parsed.n_elements, Some(48));

    let cfg = SolverConfig {
        n_elements: parsed.n_elements.unwrap(),
        ..SolverConfig::default()
    };
    let p = pullin_voltage(&spec, &cfg)?;
    println!(
        "{}: V_PI = {:.3} V (bracket [{:.3}, {:.3}])",
        spec.name, p.v_pi, p.v_low, p.v_high
    );

    // What-if variants straight off the base specimen: a stress-relieved
    // anneal and a stiffer film.
    let annealed = spec.with_residual_stress(0.0);
    let stiff = spec.with_young_modulus(98.0e9);
    println!(
        "annealed (sigma0 = 0):   V_PI = {:.3} V",
        pullin_voltage(&annealed, &cfg)?.v_pi
    );
    println!(
        "stiffer film (98 GPa):   V_PI = {:.3} V",
        pullin_voltage(&stiff, &cfg)?.v_pi
    );

    // A cantilever must state its release shape; the curl is measured as
    // a tip rise in the lab.
    let curled = specimen_from_um(
        "demo-cantilever",
        BoundaryCondition::Cantilever,
        300.0,
        30.0,
        2.0,
        3.0,
        0.0,
        InitialShape::TipRise(um_to_m(2.0)),
    )?;
    println!(
        "curled cantilever:       V_PI = {:.3} V",
        pullin_voltage(&curled, &SolverConfig::default())?.v_pi
    );
    Ok(())
}
