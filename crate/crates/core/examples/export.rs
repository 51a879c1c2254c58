//! JSON documents and DOT drawings.
//!
//! `cargo run --example export`

use endscope::ends::enumerate_ends;
use endscope::export::{read_document, to_json, tree_dot, unfolding_dot, EndView};
use endscope::spanning_tree::{build_spanning_tree, SpanningTreePrefix};
use endscope::verify::check_end_faithful;
use endscope::zoo;

fn main() -> endscope::Result<()> {
    let fan = zoo::fan();
    let views: Vec<EndView> = enumerate_ends(&fan)?.iter().map(EndView::from).collect();
    println!("{}", to_json("ends", &fan, &views)?);

    print!("{}", unfolding_dot(&zoo::ladder(), 2));

    let comb = zoo::comb();
    let st = build_spanning_tree(&comb, 3, 6)?;
    print!("{}", tree_dot(&comb.name, &st.tree));

    // a saved document carries its presentation and can be checked on its own
    let doc = to_json("spanning_tree", &comb, &st)?;
    let (pres, back): (_, SpanningTreePrefix) = read_document(&doc, "spanning_tree")?;
    println!("reloaded tree passes: {}", check_end_faithful(&pres, &back).passed());
    Ok(())
}
