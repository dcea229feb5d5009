//! Automorphisms φ_{τ,c}: L(α,i) ↦ τ(α) c^{−i−1} L(cα,i).
//!
//! cargo run --example automorphisms

use std::collections::BTreeMap;

use wittkit::automorphism::{
    aut_apply, aut_compose, aut_invert, aut_verify, extend_from_generators, rigidity_check,
    AutElement, Character,
};
use wittkit::dsl::eval_str;
use wittkit::ground::{Gamma, Scalar, ScaleMap};
use wittkit::lie::{BracketRule, Element};
use wittkit::window::Window;

fn main() -> wittkit::Result<()> {
    let g = Gamma::symbolic(2);
    let window = Window::new(2, 2)?;
    // τ(g1) = 2, τ(g2) = −1/3; c swaps the generators.
    let tau = Character::new(vec![Scalar::from_int(2), Scalar::ratio(-1, 3)])?;
    let c = ScaleMap::new(&g, Scalar::one(), vec![vec![0, 1], vec![1, 0]]);
    // Swapping g1 and g2 is not multiplication by a scalar in ℚ(g1,g2).
    println!("swap accepted as a scale map: {}", c.is_ok());

    let c = ScaleMap::negation(&g);
    let a = AutElement::new(tau, c);
    let x = eval_str(&g, "L(g1,1) + (g2/g1)*L(g1-g2,0)", BracketRule::WGamma)?;
    println!("φ(x) = {}", aut_apply(&a, &x)?.format(&g));
    println!(
        "homomorphism residual zero {}",
        aut_verify(&g, &a, window)?.is_zero()
    );
    println!(
        "determined by L(0,0), L(α,0), L(α,1): {}",
        rigidity_check(&g, &a, window)?
    );

    let inv = aut_invert(&g, &a);
    println!(
        "φ∘φ⁻¹ is the identity {}",
        aut_compose(&g, &a, &inv).is_identity()
    );

    let mut gens = BTreeMap::new();
    for (d, i) in window.generators(&g) {
        gens.insert((d, i), aut_apply(&a, &Element::basis(d, i))?);
    }
    let extended = extend_from_generators(&g, &gens, window)?;
    let top = (g.element(&[1, -1]), window.level_bound);
    println!(
        "extension at L(g1-g2,{}) = {}",
        top.1,
        extended.get(&top).map(|e| e.format(&g)).unwrap_or_default()
    );
    Ok(())
}
