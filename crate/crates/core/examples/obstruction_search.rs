//! Searching for a characteristic-class obstruction and checking the certificate.

use soulcert::bundles::Bundle;
use soulcert::obstruction::find_obstruction;
use soulcert::spaces::{kunneth_product, Space};

fn main() {
    let b = kunneth_product(&Space::complex_projective(2).unwrap(), &Space::torus(2).unwrap());
    let a = b.element("a").unwrap();
    let t = &b.element("t1").unwrap() * &b.element("t2").unwrap();

    let cases = [
        ("e = a", Bundle::oriented_with_euler(&b, 2, a.clone(), vec![]).unwrap()),
        ("e = a + t1*t2", Bundle::oriented_with_euler(&b, 2, &a + &t, vec![]).unwrap()),
        ("p1 = a*t1*t2", Bundle::new(&b, 3, true, None, vec![&a * &t]).unwrap()),
        ("trivial", Bundle::trivial(&b, 4)),
    ];
    for (name, xi) in cases {
        let cert = find_obstruction(&xi).unwrap();
        println!("{name}: {}", cert.verdict);
        if let (Some(w), Some(v)) = (&cert.witness, &cert.value) {
            println!("  witness {w} = {v}, restriction {}", cert.restriction.as_ref().unwrap());
            for (s, x) in &cert.generators {
                println!("  {s} = {x}");
            }
        }
        println!("  independent check: {:?}", cert.verify());
    }
}
