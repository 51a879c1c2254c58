//! Ends, their dominators, and closures of vertex sets.
//!
//! `cargo run --example ends`

use endscope::ends::{closure, closure_of_neighborhood, component_of, enumerate_ends};
use endscope::{zoo, Epvs, VertexId};

fn main() -> endscope::Result<()> {
    for pres in zoo::all() {
        let ends = enumerate_ends(&pres)?;
        println!("{}: {} end(s)", pres.name, ends.len());
        for e in &ends {
            let ray: Vec<String> = e.representative.take(5).iter().map(|v| v.to_string()).collect();
            println!(
                "  end {} lane {} dominators {:?} ray {} ...",
                e.id,
                e.lane,
                e.dominators,
                ray.join(" ")
            );
        }
    }

    // the even copies of a ray are in the closure of its end; a finite set never is
    let ray = zoo::ray();
    let evens: Epvs = "{0.0=(10)*}".parse()?;
    println!("ray, closure of {evens}: {} end(s)", closure(&ray, &evens)?.len());
    println!("ray, closure of {{c0}}: {} end(s)", closure(&ray, &Epvs::vertex(VertexId::Core(0)))?.len());

    // a hub dominates: the closure of its neighbourhood contains the end
    let fan = zoo::fan();
    let w = Epvs::vertex(VertexId::Core(0));
    println!("fan, closure of N(c0): {} end(s)", closure_of_neighborhood(&fan, &w)?.len());

    let dr = zoo::double_ray();
    let ends = enumerate_ends(&dr)?;
    for e in &ends {
        println!("double_ray, C({{c0}}, end {}) = {}", e.id, component_of(&dr, &w, e)?);
    }
    Ok(())
}
