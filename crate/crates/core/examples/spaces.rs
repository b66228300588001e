//! Cohomology rings of model spaces: products, bigrading and a hand-written algebra.

use std::sync::Arc;

use soulcert::algebra::{Element, GradedAlgebra};
use soulcert::rational::q;
use soulcert::spaces::{kunneth_product, poincare_polynomial, ManualData, Space};

fn main() {
    let cp2 = Space::complex_projective(2).unwrap();
    let b = kunneth_product(&cp2, &Space::torus(2).unwrap());
    println!("{b}: dimension {}, Betti {:?}", b.dimension(), poincare_polynomial(&b));

    let a = b.element("a").unwrap();
    let t = &b.element("t1").unwrap() * &b.element("t2").unwrap();
    let x = &a.pow(2) + &(&a * &t);
    println!("x = {x}");
    println!("  core part     {}", b.core_part(&x));
    println!("  relative part {}", b.relative_part(&x));
    println!("  torus degree 2 component {}", b.torus_component(&x, 2));
    println!("  (a*t)^2 = {}", (&a * &t).pow(2));

    // S² × S² by hand: two degree-2 classes with u² = v² = 0 and u·v the top class.
    let basis = vec![("1".into(), 0), ("u".into(), 2), ("v".into(), 2), ("uv".into(), 4)];
    let products = vec![((1, 2), vec![(3, q(1))])];
    let alg = GradedAlgebra::with_commuted_products(basis, products, 4).unwrap();
    let s2s2 = Space::manual("S2xS2", alg, ManualData { tangent: None, simply_connected: true });
    let alg: &Arc<GradedAlgebra> = s2s2.algebra();
    let u = Element::from_label(alg, "u").unwrap();
    let v = Element::from_label(alg, "v").unwrap();
    println!("{s2s2}: (u+v)^2 = {}", (&u + &v).pow(2));
}
