//! JSON wire formats for elements, automorphisms and cocycles.
//!
//! cargo run --example json_io

use wittkit::automorphism::AutElement;
use wittkit::cohomology::Cocycle;
use wittkit::dsl::eval_str;
use wittkit::ground::Gamma;
use wittkit::json;
use wittkit::lie::BracketRule;

fn main() -> wittkit::Result<()> {
    let g = Gamma::from_json(r#"{"rank": 2, "generators": ["s", "t"]}"#)?;
    println!("Γ fingerprint {}", g.fingerprint());

    let x = eval_str(&g, "(s/t)*L(s-2t,3) - L(0,0)", BracketRule::WGamma)?;
    let v = json::element_to_json(&g, &x);
    println!("{v}");
    assert_eq!(json::element_from_json(&g, &v)?, x);

    let a = json::aut_from_json(
        &g,
        &serde_json::json!({
            "tau": {"s": "1/2", "t": -1},
            "c": {"value": -1, "matrix": [[-1, 0], [0, -1]]}
        }),
    )?;
    assert_ne!(a, AutElement::identity(&g));
    println!("{}", json::aut_to_json(&g, &a));

    let psi = json::cocycle_from_json(
        &g,
        &serde_json::json!({"kind": "combo", "terms": [["2", {"kind": "canonical"}]]}),
    )?;
    assert!(matches!(psi, Cocycle::LinearCombo(_)));
    println!("{}", json::cocycle_to_json(&g, &psi));
    Ok(())
}
