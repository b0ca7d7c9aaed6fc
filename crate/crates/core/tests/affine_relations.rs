use walled_brauer::affine::{check_relation, AffineEngine, OmegaSpec};
use walled_brauer::arith::rational::{frac, int};
use walled_brauer::diagram::OrSeq;
use walled_brauer::relations::{instances_for, RELATION_IDS};

fn objects(max: usize) -> Vec<OrSeq> {
    let mut v = Vec::new();
    for n in 1..=max {
        for t in 0..=n {
            v.extend(OrSeq::all(n - t, t));
        }
    }
    v
}

#[test]
fn every_relation_holds_for_generic_omegas() {
    let om = OmegaSpec::List(vec![int(3), frac(1, 2), int(-2), frac(7, 3), int(5), int(1)]);
    let eng = AffineEngine::new(om.clone());
    for a in objects(3) {
        for id in RELATION_IDS {
            if instances_for(&a, id, &om, 4).unwrap().is_empty() {
                continue;
            }
            assert!(check_relation(&eng, &a, id, 4).unwrap(), "{id} fails on {a}");
        }
    }
}
