//! The expression language: parse, print, evaluate, and report errors with
//! positions.
//!
//! cargo run --example dsl

use wittkit::dsl::{eval, parse, print};
use wittkit::ground::Gamma;
use wittkit::lie::BracketRule;

fn main() -> wittkit::Result<()> {
    let g = Gamma::symbolic(2);
    let src = "(-3)*[L(g1,0), (L(0,1) - C)] + ((g1 + g2)/g2^2)*L(-g1,1)";
    let e = parse(&g, src)?;
    println!("printed   {}", print(&g, &e));
    println!("reparses  {}", parse(&g, &print(&g, &e))? == e);
    println!(
        "value     {}",
        eval(&g, &e, BracketRule::WGammaHat)?.format(&g)
    );

    for bad in ["[L(1,0)", "L(g3,0)", "2*L(g1,0) +\n  *L(g2,1)"] {
        match parse(&g, bad) {
            Ok(_) => println!("{bad:?} parsed"),
            Err(err) => println!("{:<14} {err}", err.kind()),
        }
    }
    Ok(())
}
