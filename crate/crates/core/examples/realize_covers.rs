//! Realizing prescribed classes after a finite cover, and comparing bundles up to covers.

use soulcert::bundles::{pullback, Bundle};
use soulcert::obstruction::{betti_obstruction, find_obstruction, realize, same_in_finite_cover, RealizeTargets};
use soulcert::spaces::{kunneth_product, torus_cover_map, Space};

fn main() {
    let s2 = Space::sphere(2).unwrap();
    let b = kunneth_product(&s2, &Space::torus(2).unwrap());
    let s = b.element("s").unwrap();
    let t = &b.element("t1").unwrap() * &b.element("t2").unwrap();

    let xi_c = Bundle::oriented_with_euler(&s2, 2, s2.element("s").unwrap(), vec![]).unwrap();
    let e = &s + &t;
    // the top class of an oriented plane bundle is e²
    let targets = RealizeTargets { euler: Some(e.clone()), pontrjagin: vec![e.pow(2)] };
    for m in 1..=3 {
        let xi = realize(&xi_c, &b, &targets, m).unwrap();
        println!("cover {m}: e = {}, {}", xi.euler().unwrap(), find_obstruction(&xi).unwrap().verdict);
    }

    let xi = realize(&xi_c, &b, &targets, 1).unwrap();
    let lifted = pullback(&torus_cover_map(&b, 2).unwrap(), &xi).unwrap();
    let report = same_in_finite_cover(&xi, &lifted).unwrap();
    println!("xi vs its double-cover pullback: same {}, euler {}, restriction {}", report.same, report.euler, report.restriction);

    for (p, c, k) in [(4, 2, 1), (3, 2, 1), (6, 4, 2)] {
        println!("total Betti {p} over core {c}, torus rank {k}: {}", betti_obstruction(p, c, k).unwrap());
    }
}
