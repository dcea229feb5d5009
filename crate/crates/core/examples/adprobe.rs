//! Iterating ad_x. In W(Γ) the span keeps growing and the top coefficient
//! is k!; in the Witt type algebra L(0,0) acts locally finitely.
//!
//! cargo run --example adprobe

use wittkit::dsl::eval_str;
use wittkit::ground::Gamma;
use wittkit::lie::BracketRule;
use wittkit::structure::ad_probe;

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    for (rule, x, y) in [
        (BracketRule::WGamma, "L(1,0)", "L(0,1)"),
        (BracketRule::WittType, "L(0,0)", "L(1,3)"),
    ] {
        let p = ad_probe(
            &z,
            &eval_str(&z, x, rule)?,
            &eval_str(&z, y, rule)?,
            8,
            rule,
        )?;
        println!(
            "{:<8} x = {x}, y = {y}: ranks {:?}",
            rule.to_string(),
            p.ranks
        );
        for h in &p.highest_terms {
            println!(
                "         step {} top L({},{}) predicted {} computed {}",
                h.step,
                z.format_degree(&h.degree),
                h.level,
                z.display_scalar(&h.predicted),
                z.display_scalar(&h.computed)
            );
        }
    }
    Ok(())
}
