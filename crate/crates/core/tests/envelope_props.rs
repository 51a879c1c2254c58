mod common;

use endscope::envelope::{check_envelope, envelope};

const DEPTH: usize = 48;
const CUT: usize = 24;

#[test]
fn two_hundred_random_envelopes() {
    let graphs = common::test_graphs();
    let mut rng = common::rng(2024);
    let mut done = 0;
    while done < 200 {
        use rand::Rng;
        let pres = &graphs[rng.gen_range(0..graphs.len())];
        let u = common::random_epvs(&mut rng, pres);
        if u.is_empty() {
            continue;
        }
        let u_star = envelope(pres, &u).unwrap_or_else(|e| panic!("{} U = {u}: {e}", pres.name));
        assert!(check_envelope(pres, &u, &u_star).passed());
        if let Err(e) = common::envelope_verdict(pres, &u, &u_star, DEPTH, CUT) {
            panic!("{} U = {u}, U* = {u_star}: {e}", pres.name);
        }
        done += 1;
    }
}

#[test]
fn envelope_of_envelope_is_still_an_envelope_of_u() {
    let mut rng = common::rng(77);
    for pres in common::test_graphs() {
        for _ in 0..10 {
            let u = common::random_epvs(&mut rng, &pres);
            if u.is_empty() {
                continue;
            }
            let once = envelope(&pres, &u).unwrap();
            let twice = envelope(&pres, &once).unwrap();
            assert!(check_envelope(&pres, &u, &twice).passed(), "{} U = {u}", pres.name);
        }
    }
}
