//! Checking builder output, and catching corrupted certificates.
//!
//! `cargo run --example verify`

use endscope::ends::enumerate_ends;
use endscope::spanning_tree::build_spanning_tree;
use endscope::treedecomp::build_tree_decomposition;
use endscope::verify::{
    canonical_chain, check_display, check_end_faithful, check_nested_chain, check_td_axioms, check_upwards_disjoint,
};
use endscope::{zoo, Epvs, VertexId};

fn main() -> endscope::Result<()> {
    let pres = zoo::ladder();
    let mut td = build_tree_decomposition(&pres, 6, 40)?;
    print!("{}", check_td_axioms(&pres, &td, 40)?);
    print!("{}", check_upwards_disjoint(&td));
    print!("{}", check_display(&pres, &td));

    // drop a vertex from every part: the first axiom fails and names it
    let v = VertexId::tail(0, 2, 1);
    for n in &mut td.nodes {
        n.part = n.part.difference(&Epvs::vertex(v));
    }
    let rep = check_td_axioms(&pres, &td, 40)?;
    for f in rep.failures() {
        println!("corrupted: {} failed, witness {:?}", f.name, f.witness);
    }

    // nested separations pin down an undominated end; a hub spoils the nesting
    for name in ["ray", "fan"] {
        let p = zoo::by_name(name).unwrap();
        let end = &enumerate_ends(&p)?[0];
        let chain = canonical_chain(&p, end, 4)?;
        let rep = check_nested_chain(&p, &chain)?;
        println!("{name} chain: {}", if rep.passed() { "undominated end" } else { "rejected" });
        for f in rep.failures() {
            println!("  {} witness {:?}", f.name, f.witness);
        }
    }

    let comb = zoo::comb();
    let mut st = build_spanning_tree(&comb, 5, 20)?;
    println!("comb tree: {}", if check_end_faithful(&comb, &st).passed() { "end-faithful" } else { "broken" });
    // hang a tooth from the root instead of its spine vertex
    st.tree.parent.insert(VertexId::tail(0, 3, 1), Some(VertexId::Core(0)));
    for f in check_end_faithful(&comb, &st).failures() {
        println!("  {} witness {:?}", f.name, f.witness);
    }
    Ok(())
}
