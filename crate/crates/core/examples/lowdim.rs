//! Complete answers over S¹×S³, S¹×S² and S⁴.

use soulcert::lowdim::{classify_s1s2, classify_s1s3, s4_class_of, s4_invariants, s4_realizable, LowDimBundle};

fn main() {
    for (rank, w1, p1, e) in [(4, false, 0, 0), (3, true, 0, 0), (4, false, 2, 0), (4, false, 0, 1)] {
        let b = LowDimBundle::s1s3(rank, w1, p1, e, None).unwrap();
        println!("S1xS3 rank {rank} w1 {w1} p1 {p1} e {e}: {}", classify_s1s3(&b).unwrap());
    }
    for (rank, w1, e, w2) in [(2, false, 3, false), (2, true, 0, false), (5, true, 0, true)] {
        let b = LowDimBundle::s1s2(rank, w1, e, w2).unwrap();
        println!("S1xS2 rank {rank} w1 {w1}: {}", classify_s1s2(&b).unwrap());
    }
    for (m, n) in [(1, 0), (2, -1), (0, 3)] {
        let (p1, e) = s4_invariants(m, n);
        println!("S4 ({m}, {n}): p1 {p1}, e {e}, back to {:?}", s4_class_of(p1, e));
    }
    println!("rank 4 with p1 2, e 0 realizable: {}", s4_realizable(4, 2, 0).unwrap());
    println!("rank 3 with p1 4, e 0 realizable: {}", s4_realizable(3, 4, 0).unwrap());
}
