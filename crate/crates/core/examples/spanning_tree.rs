//! End-faithful spanning trees.
//!
//! `cargo run --example spanning_tree`

use endscope::spanning_tree::build_spanning_tree;
use endscope::zoo;

fn main() -> endscope::Result<()> {
    for name in ["comb", "ladder", "double_ray", "fan"] {
        let pres = zoo::by_name(name).unwrap();
        let st = build_spanning_tree(&pres, 4, 10)?;
        println!("{name}: {} tree vertices up to copy 10", st.tree.parent.len());
        for a in st.attachments.iter().take(4) {
            println!("  layer {} hangs {} by {}-{}", a.layer, a.component, a.edge.0, a.edge.1);
        }
        for r in &st.ray_certificates {
            let path: Vec<String> = r.path.iter().map(|v| v.to_string()).collect();
            println!("  end {}: rooted ray {} ...", r.end, path.join(" "));
        }
        if st.ray_certificates.is_empty() {
            println!("  no topological ends");
        }
    }
    match build_spanning_tree(&zoo::ray(), 8, 2) {
        Err(e) => println!("ray with horizon 2: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
