//! Connected exhaustions layer by layer.
//!
//! `cargo run --example exhaustion`

use endscope::exhaustion::exhaustion;
use endscope::zoo;

fn main() -> endscope::Result<()> {
    for name in ["ladder", "twostrand", "fan", "infstar"] {
        let pres = zoo::by_name(name).unwrap();
        let ex = exhaustion(&pres, 4)?;
        println!("{name}:");
        for l in &ex.layers {
            println!(
                "  H{} = {}  ({} component record(s), checks {})",
                l.index,
                l.set,
                l.components.len(),
                if l.checks.passed() { "ok" } else { "failed" }
            );
            for r in &l.components {
                let family = r.shift.map_or(String::new(), |s| format!(" (family, shift {s})"));
                println!("      C = {}{family}  N(C) = {}  U* = {}", r.component, r.adhesion, r.u_star);
            }
        }
        if let Some(m) = ex.fixed_point {
            println!("  H{m} is the whole graph");
        }
    }
    Ok(())
}
