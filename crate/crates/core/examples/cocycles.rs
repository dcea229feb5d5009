//! Normalising 2-cocycles: ψ = cφ₀ + ψ_f, then certifying that φ₀ itself is
//! not a coboundary.
//!
//! cargo run --example cocycles

use wittkit::cohomology::{coboundary_fit, normalize_cocycle, Cocycle, LinearFunctional};
use wittkit::ground::{Gamma, Scalar};
use wittkit::window::Window;

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    let window = Window::new(3, 2)?;
    let mut f = LinearFunctional::zero();
    f.set(z.element(&[0]), 0, Scalar::from_int(5));
    f.set(z.element(&[2]), 1, Scalar::ratio(-1, 2));
    f.set(z.element(&[-1]), 3, Scalar::from_int(7));
    let psi = Cocycle::Canonical
        .scale(Scalar::ratio(3, 4))
        .plus(Cocycle::Coboundary(f));

    let r = normalize_cocycle(&z, &psi, window)?;
    println!("c = {}", z.display_scalar(&r.c));
    for ((d, i), v) in &r.f.values {
        println!("f(L({},{i})) = {}", z.format_degree(d), z.display_scalar(v));
    }
    println!("residual zero {}", r.residual.is_zero());

    let fit = coboundary_fit(&z, &Cocycle::Canonical, window)?;
    println!("\nφ₀ is a coboundary on the window: {}", fit.feasible);
    for eq in &fit.certificate {
        println!("  {}", eq.format(&z));
    }
    Ok(())
}
