//! Star–comb certificates and cofinal trees.
//!
//! `cargo run --example star_comb`

use endscope::envelope::components_of_complement;
use endscope::starcomb::{check, check_external, cofinal_tree, external_star_or_comb, star_or_comb};
use endscope::{zoo, Epvs};

fn main() -> endscope::Result<()> {
    for (name, set) in [("comb", "{0.1=(1)*}"), ("infstar", "{0.0=(1)*}"), ("ladder", "{0.0=(10)*}"), ("hubbed_ladder", "{0.1=(1)*}")] {
        let pres = zoo::by_name(name).unwrap();
        let u: Epvs = set.parse()?;
        let cert = star_or_comb(&pres, &u)?;
        check(&pres, &cert, &u, 20).expect("certificate checks");
        println!("{name}, U = {u}: {}", cert.kind());
        for p in cert.paths().take(3) {
            let p: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            println!("  {}", p.join(" "));
        }
    }

    // paths through a component C of G − W, ending in N(C)
    let pres = zoo::ladder();
    let w: Epvs = "{c0 0.0=(1)*}".parse()?;
    for piece in components_of_complement(&pres, &w) {
        let c = piece.member(0);
        if pres.neighborhood(&c).is_finite() {
            println!("ladder, C = {c}: N(C) is finite, nothing to attach");
            continue;
        }
        let cert = external_star_or_comb(&pres, &w, &c)?;
        check_external(&pres, &cert, &w, &c, 10).expect("external certificate checks");
        println!("ladder, C = {c}: external {}", cert.kind());
    }

    let pres = zoo::twostrand();
    let u: Epvs = "{0.0=0(1)* 0.1=0(1)*}".parse()?;
    let tree = cofinal_tree(&pres, &u)?;
    let prefix = tree.materialize(&pres, 4);
    println!("twostrand cofinal tree up to copy 4: {} vertices, hull {}", prefix.parent.len(), tree.hull);
    Ok(())
}
