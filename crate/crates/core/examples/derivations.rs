//! A derivation given by its values on generators is split as ad_y + D_φ.
//!
//! cargo run --example derivations

use wittkit::derivation::{
    decompose_derivation, direct_sum_check, leibniz_check, AdditiveMap, DerivationSpec,
};
use wittkit::dsl::eval_str;
use wittkit::ground::{Gamma, Scalar};
use wittkit::lie::{BracketRule, CompletionElement};
use wittkit::window::Window;

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    let window = Window::new(2, 2)?;
    let y = eval_str(&z, "L(1,0) - 1/2*L(1,1) + 2*L(-1,3)", BracketRule::WGamma)?;
    let spec = DerivationSpec::Symbolic {
        y: CompletionElement::from_element(&y),
        phi: AdditiveMap::new(vec![Scalar::from_int(3)]),
    };
    // Hide the construction: keep only the images of L(α,0), L(α,1).
    let table = spec.tabulate(&z, window)?;
    println!(
        "Leibniz residual zero: {}",
        leibniz_check(&z, &table, window)?.is_zero()
    );

    let r = decompose_derivation(&z, &table, window, 6)?;
    println!("recovered y  = {}", r.y.truncated_element(6).format(&z));
    println!("recovered φ  = {}", z.display_scalar(&r.phi.values()[0]));
    println!("residual zero {}", r.residual.is_zero());

    let ds = direct_sum_check(&z, window, Window::new(3, 4)?)?;
    println!(
        "ad W ∩ span D_φ = 0: φ forced {} y forced {}",
        ds.phi_forced_zero, ds.y_forced_zero
    );
    Ok(())
}
