//! Brackets under each rule, for Γ = ℤ and for a symbolic rank-2 lattice.
//!
//! cargo run --example brackets

use wittkit::dsl::eval_str;
use wittkit::ground::Gamma;
use wittkit::lie::{bracket, BracketRule, Element};

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    let show = |src: &str, rule: BracketRule| -> wittkit::Result<()> {
        let x = eval_str(&z, src, rule)?;
        println!("{:<12} {src:<20} = {}", rule.to_string(), x.format(&z));
        Ok(())
    };
    show("[L(1,2), L(3,1)]", BracketRule::WGamma)?;
    show("[L(2,0), L(-2,0)]", BracketRule::WGammaHat)?;
    show("[L(1,2), L(3,1)]", BracketRule::WittType)?;
    show("[L(1,1), L(2,1)]", BracketRule::subquotient(1, 2)?)?;

    // Scalars are rational functions of the generators.
    let g = Gamma::symbolic(2);
    let a = Element::basis(g.element(&[1, 0]), 1);
    let b = Element::basis(g.element(&[0, 1]), 2);
    let ab = bracket(&g, &a, &b, BracketRule::WGamma)?;
    println!("\nrank 2: [L(g1,1), L(g2,2)] = {}", ab.format(&g));
    let scaled = eval_str(&g, "((g1 + 1)/g2)*[L(g1,0), L(-g1,3)]", BracketRule::WGamma)?;
    println!(
        "rank 2: ((g1 + 1)/g2)*[L(g1,0), L(-g1,3)] = {}",
        scaled.format(&g)
    );
    Ok(())
}
