//! Every nonzero element generates an ideal W^n; the report carries the chain
//! of brackets that reaches a basis element, and the window closure.
//!
//! cargo run --release --example ideals

use wittkit::dsl::eval_str;
use wittkit::ground::Gamma;
use wittkit::lie::BracketRule;
use wittkit::structure::{ideal_generated, nested_bracket_span_check, theta_apply};
use wittkit::window::Window;

fn main() -> wittkit::Result<()> {
    let z = Gamma::integers();
    let x = eval_str(&z, "L(2,1) + L(-1,1) - L(0,3)", BracketRule::WGamma)?;
    let report = ideal_generated(&z, &x, Window::new(2, 6)?)?;
    println!("generator     {}", x.format(&z));
    for step in &report.witness_chain {
        println!(
            "  [{}, .] -> {}",
            step.operator.format(&z),
            step.result.format(&z)
        );
    }
    println!("classified as {}", report.classified_as);
    println!("replays       {}", report.replay(&z)?);
    if let Some(check) = &report.window_check {
        println!(
            "closure       dim {} passed {}",
            check.span_dimension,
            check.passed()
        );
    }

    // The operator Θ lowers a homogeneous element of length ≥ 3.
    let y = eval_str(&z, "L(1,0) + L(1,3)", BracketRule::WGamma)?;
    let t = theta_apply(&z, &z.element(&[2]), &z.element(&[1]), &y)?;
    println!("\nΘ(L(1,0) + L(1,3)) = {}", t.format(&z));

    let ok = nested_bracket_span_check(&z, 4, 2, Window::new(2, 6)?)?;
    println!("[W¹,[W¹,W²]] spans W⁴ on the window: {ok}");
    Ok(())
}
