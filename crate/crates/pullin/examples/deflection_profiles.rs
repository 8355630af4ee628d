//! Equilibrium shapes of a curled cantilever as the voltage rises
//! toward pull-in.
//!
//! At 0 V the beam relaxes to its stress-free curl (tip up, away from
//! the electrode). Increasing voltage first flattens the curl, then
//! bends the beam toward the plane; close to pull-in the tip has eaten
//! a sizable fraction of the gap and the shape steepens near the free
//! end where the load is strongest.
//!
//! Deflections are printed in the geometric convention — positive away
//! from the electrode — so the relaxed curl shows up as positive
//! numbers and electrostatic deflection drives them negative.
//!
//! Run with `cargo run --example deflection_profiles`.

use std::error::Error;

use pullin::beam_fem::BeamState;
use pullin::domain::catalog::lookup;
use pullin::solver::{pullin_voltage, solve_equilibrium, BeamModel, SolverConfig};
use pullin::units::m_to_um;

fn main() -> Result<(), Box<dyn Error>> {
    let spec = lookup("geom1/sample1")?.specimen;
    let cfg = SolverConfig {
        n_elements: 8, // coarse mesh so the table stays readable
        ..SolverConfig::default()
    };
    let model = BeamModel::new(&spec, cfg.n_elements)?;

    let v_pi = pullin_voltage(&spec, &cfg)?.v_pi;
    let voltages = [0.0, 0.5 * v_pi, 0.8 * v_pi, 0.95 * v_pi];

    // Walk the voltage up with warm starts, capturing the shape at the
    // requested stations (cold Newton close to pull-in could hop the
    // energy barrier and land on the collapsed side).
    let mut profiles = Vec::new();
    let mut state = BeamState::zero(&model.mesh);
    let mut v = 0.0;
    for &v_stop in &voltages {
        while v < v_stop {
            v = (v + cfg.dv_initial).min(v_stop);
            state = solve_equilibrium(&model, v, &state, &cfg)?.state;
        }
        if v == 0.0 {
            state = solve_equilibrium(&model, 0.0, &state, &cfg)?.state;
        }
        profiles.push(model.profile(&state));
    }

    println!(
        "{} (V_PI = {:.2} V), deflection away from the electrode in um\n",
        spec.name, v_pi
    );
    print!("{:>9}", "x_um");
    for &v_stop in &voltages {
        print!(" {:>9.2}V", v_stop);
    }
    println!();
    for node in 0..profiles[0].len() {
        print!("{:>9.1}", m_to_um(profiles[0][node].0));
        for profile in &profiles {
            let rise = -m_to_um(profile[node].1);
            let rise = if rise == 0.0 { 0.0 } else { rise };
            print!(" {:>10.4}", rise);
        }
        println!();
    }

    println!(
        "\nThe tip starts {:.3} um up; by 95% of V_PI it has moved well into the\n\
         gap, and the last stable shape (just before the fold) would take the\n\
         tip to roughly a third of its available travel.",
        m_to_um(spec.tip_rise())
    );
    Ok(())
}
