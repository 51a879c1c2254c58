//! Connected envelopes and finite adhesion.
//!
//! `cargo run --example envelope`

use endscope::envelope::{check_envelope, envelope, finite_adhesion};
use endscope::{zoo, Epvs};

fn main() -> endscope::Result<()> {
    let ladder = zoo::ladder();
    let bottom: Epvs = "{c0 0.0=(1)*}".parse()?;
    let report = finite_adhesion(&ladder, &bottom);
    println!("ladder, bottom rail: finite adhesion {}", report.finite_adhesion);
    if let Some((c, n)) = &report.witness {
        println!("  component {c} has infinite neighbourhood {n}");
    }

    for (name, set) in [
        ("infstar", "{0.0=(1)*}"),
        ("ladder", "{0.0=(100)*}"),
        ("comb", "{0.1=(10)*}"),
        ("twostrand", "{0.0=1(0)* 0.1=(1)*}"),
        ("hubbed_ladder", "{0.1=(01)*}"),
    ] {
        let pres = zoo::by_name(name).unwrap();
        let u: Epvs = set.parse()?;
        let u_star = envelope(&pres, &u)?;
        let c = check_envelope(&pres, &u, &u_star);
        println!(
            "{name}: U = {u} -> U* = {u_star}  [superset {}, connected {}, finite adhesion {}, same closure {}]",
            c.superset, c.connected, c.finite_adhesion, c.closure_equal
        );
    }
    Ok(())
}
