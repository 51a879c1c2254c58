//! Tree-decompositions that display the topological ends.
//!
//! `cargo run --example tree_decomposition`

use endscope::export::td_dot;
use endscope::treedecomp::build_tree_decomposition;
use endscope::zoo;

fn main() -> endscope::Result<()> {
    for name in ["double_ray", "twostrand", "fan", "hubbed_ladder"] {
        let pres = zoo::by_name(name).unwrap();
        let td = build_tree_decomposition(&pres, 4, 12)?;
        println!("{name}: {} nodes, {} leaves", td.nodes.len(), td.leaf_count());
        for n in &td.nodes {
            let sep = n.separator.as_ref().map_or("-".to_string(), |s| s.to_string());
            println!("  node {:>2} parent {:?} separator {sep} part {}", n.id, n.parent, n.part);
        }
        for d in &td.display_table {
            println!("  topological end {} <-> branch {:?}", d.end, d.chain);
        }
        for o in &td.dominated {
            println!("  dominated end {} sits at node {:?}", o.end, o.node);
        }
    }
    let td = build_tree_decomposition(&zoo::double_ray(), 3, 10)?;
    print!("{}", td_dot(&td));
    Ok(())
}
