//! Characteristic classes under the bundle operations.

use soulcert::bundles::{external_product, power_sums, pullback, stabilize, tangent_bundle, whitney_sum, Bundle};
use soulcert::spaces::{kunneth_product, torus_cover_map, Space};

fn show(name: &str, xi: &Bundle) {
    println!("{name}: rank {} over {}, oriented {}", xi.rank(), xi.base(), xi.is_oriented());
    if let Some(e) = xi.euler() {
        println!("  e  = {e}");
    }
    println!("  p  = {}", xi.total_pontrjagin());
}

fn main() {
    let cp3 = Space::complex_projective(3).unwrap();
    let tc = tangent_bundle(&cp3).unwrap();
    show("T CP3", &tc);
    show("T CP3 + T CP3", &whitney_sum(&tc, &tc).unwrap());

    let t2 = Space::torus(2).unwrap();
    let tt = t2.element("t1").unwrap();
    let line = Bundle::oriented_with_euler(&t2, 2, &tt * &t2.element("t2").unwrap(), vec![]).unwrap();
    let prod = external_product(&tc, &line).unwrap();
    show("T CP3 x xi", &prod);

    let b = kunneth_product(&cp3, &t2);
    let f = torus_cover_map(&b, 3).unwrap();
    show("3-fold cover", &pullback(&f, &prod).unwrap());
    show("stabilized", &stabilize(&prod, 2));

    let s = power_sums(&tc, 3);
    for k in 1..=3 {
        println!("s{k}(T CP3) = {}", s.get(k).unwrap());
    }
    println!("Newton identities hold: {}", s.satisfies_newton(&tc));
}
