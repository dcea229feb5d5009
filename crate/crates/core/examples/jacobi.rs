//! Exhaustive Jacobi checks on a window of basis triples.
//!
//! cargo run --release --example jacobi

use std::time::Instant;

use wittkit::ground::Gamma;
use wittkit::lie::{jacobi_sweep, BracketRule};
use wittkit::window::Window;

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    let window = Window::new(3, 3)?;
    for rule in [
        BracketRule::WGamma,
        BracketRule::WGammaHat,
        BracketRule::WittType,
        BracketRule::subquotient(1, 3)?,
    ] {
        let t = Instant::now();
        let s = jacobi_sweep(&z, window, rule)?;
        println!(
            "Γ=ℤ  {:<12} triples {:>6}  nonzero {}  ({:?})",
            rule.to_string(),
            s.checked,
            s.nonzero,
            t.elapsed()
        );
    }

    // A smaller window keeps the symbolic case quick in debug builds.
    let g = Gamma::symbolic(2);
    let s = jacobi_sweep(&g, Window::new(1, 2)?, BracketRule::WGammaHat)?;
    println!(
        "Γ=ℤ² symbolic wgamma-hat     triples {:>6}  nonzero {}",
        s.checked, s.nonzero
    );
    Ok(())
}
