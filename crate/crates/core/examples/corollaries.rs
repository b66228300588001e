//! Ready-made obstructed families over C × T.

use soulcert::bundles::Bundle;
use soulcert::obstruction::{check_add_norm_bundle, check_flat_product, check_pdual, check_polynomial_q_family};
use soulcert::poly::ClassPolynomial;
use soulcert::spaces::Space;

fn main() {
    let cp1 = Space::complex_projective(1).unwrap();
    let cp3 = Space::complex_projective(3).unwrap();
    let s4 = Space::sphere(4).unwrap();
    let t2 = Space::torus(2).unwrap();
    let t4 = Space::torus(4).unwrap();

    let pd = check_pdual(&cp1, &t2, None, 1).unwrap();
    println!("rank-2 bundle with e = y + t over CP1 x T2: {} by {}", pd.verdict, pd.witness.unwrap());

    let an = check_add_norm_bundle(&cp3, &t2, 1, 6).unwrap();
    println!("normal bundle of CP3 plus a relative p1: {} with value {}", an.verdict, an.value.unwrap());

    let fam = check_polynomial_q_family(&s4, &t4, 1, &ClassPolynomial::zero()).unwrap();
    println!("family over S4 x T4: hypotheses hold {}, search agrees {:?}", fam.hypotheses_hold(), fam.search_agrees);
    for j in 1..=3 {
        let member = fam.member(j).unwrap();
        println!("  member {j}: p1 = {}", member.pontrjagin(1));
    }

    let t = t2.element("t1").unwrap();
    let xi = Bundle::oriented_with_euler(&t2, 2, &t * &t2.element("t2").unwrap(), vec![]).unwrap();
    let flat = check_flat_product(&Bundle::trivial(&cp3, 0), &xi).unwrap();
    println!("CP3 x (oriented plane bundle over T2): {}", flat.verdict);
}
