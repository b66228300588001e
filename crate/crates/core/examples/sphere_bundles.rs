//! Sphere bundles: Gysin Betti numbers and the two Ricci obstructions.

use soulcert::bundles::Bundle;
use soulcert::obstruction::SearchOptions;
use soulcert::spaces::{kunneth_product, Space};
use soulcert::sphere_bundles::{gysin_betti, sphere_euler_check, sphere_pontrjagin_check};

fn main() {
    let t4 = Space::torus(4).unwrap();
    let e = &t4.element("t1").unwrap() * &t4.element("t2").unwrap();
    let xi = Bundle::oriented_with_euler(&t4, 2, e, vec![]).unwrap();
    let g = gysin_betti(&xi).unwrap();
    println!("S(xi) over T4, fibre S^{}: Betti {:?}, chi {}", g.fiber_dim, g.betti, g.euler_characteristic());
    println!("Euler check: {}", sphere_euler_check(&xi).unwrap().verdict);

    let b = kunneth_product(&Space::sphere(4).unwrap(), &Space::torus(4).unwrap());
    let x = &b.element("t1").unwrap() * &b.element("t2").unwrap();
    let p1 = &x * &(&b.element("t3").unwrap() * &b.element("t4").unwrap());
    let eta = Bundle::new(&b, 3, true, None, vec![p1]).unwrap();
    let g = gysin_betti(&eta).unwrap();
    println!("S(eta) over S4 x T4: total Betti {}", g.total());
    let cert = sphere_pontrjagin_check(&eta, None, &SearchOptions::default()).unwrap();
    println!("Pontrjagin check: {} by {:?}", cert.verdict, cert.witness.map(|w| w.to_string()));
}
