//! Reading, writing and unfolding presentations.
//!
//! `cargo run --example presentations`

use endscope::text::{emit_presentation, parse_presentation};
use endscope::zoo;

const LADDER_WITH_DIAGONALS: &str = "\
graph diagonal_ladder
core 2
core_edge 0 1
tail 0 period 2
intra 0 0 1
inter 0 0 0
inter 0 1 1
inter 0 0 1
attach 0 0 0
attach 0 1 1
";

fn main() -> endscope::Result<()> {
    let pres = parse_presentation(LADDER_WITH_DIAGONALS)?;
    let report = pres.validate();
    println!("{}: valid {}, connected {:?}", pres.name, report.is_valid(), report.connected);
    print!("{}", emit_presentation(&pres));

    let g = pres.unfold(3);
    println!("unfold(3): {} vertices, {} edges", g.len(), g.edge_count());
    for (a, b) in g.edges().iter().take(6) {
        println!("  {a} -- {b}");
    }

    match parse_presentation("graph broken\ncore 1\nhub 0 0 0 0 0\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    println!("zoo: {}", zoo::NAMES.join(", "));
    Ok(())
}
