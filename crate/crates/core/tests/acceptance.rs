//! The eleven acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use common::*;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soulcert::algebra::{Element, GradedAlgebra};
use soulcert::bundles::{external_product_over, power_sums, whitney_sum, Bundle};
use soulcert::lowdim::{classify_s1s2, classify_s1s3, s4_invariants, s4_realizable, LowDimBundle};
use soulcert::obstruction::{
    betti_obstruction, check_flat_product, check_pdual, find_obstruction, ObstructionCertificate, Verdict,
};
use soulcert::poly::{ClassPolynomial, Symbol};
use soulcert::rational::{q, Q};
use soulcert::script::{run_text, RunOptions};
use soulcert::spaces::{kunneth_product, poincare_polynomial, torus_cover_map, Space};
use soulcert::sphere_bundles::{gysin_betti, sphere_euler_check, sphere_pontrjagin_check, SphereError};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn obstructed(c: &ObstructionCertificate) -> bool {
    c.verdict == Verdict::Obstructed
}

// 1 ------------------------------------------------------------------------

/// Exhaustive axiom check from the structure constants alone.
fn axiom_failures(alg: &GradedAlgebra) -> Vec<String> {
    let n = alg.dim();
    let deg: Vec<usize> = (0..n).map(|i| alg.degree(i)).collect();
    let mut out = Vec::new();
    if deg.iter().filter(|&&d| d == 0).count() != 1 || deg[0] != 0 {
        out.push("unit is not the unique degree-0 basis element".to_string());
        return out;
    }
    let table: Vec<Vec<Vec<(usize, Q)>>> = (0..n).map(|i| (0..n).map(|j| alg.product_terms(i, j)).collect()).collect();
    for i in 0..n {
        if table[0][i] != vec![(i, Q::one())] || table[i][0] != vec![(i, Q::one())] {
            out.push(format!("unit law fails on {}", alg.label(i)));
        }
        for j in 0..n {
            for (k, _) in &table[i][j] {
                if deg[*k] != deg[i] + deg[j] {
                    out.push(format!("degree of {}*{}", alg.label(i), alg.label(j)));
                }
            }
            let sign = if deg[i] * deg[j] % 2 == 1 { -Q::one() } else { Q::one() };
            let mut a: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, c) in &table[i][j] {
                *a.entry(*k).or_insert_with(Q::zero) += c;
            }
            for (k, c) in &table[j][i] {
                *a.entry(*k).or_insert_with(Q::zero) -= c * &sign;
            }
            if a.values().any(|c| !c.is_zero()) {
                out.push(format!("commutativity of {} and {}", alg.label(i), alg.label(j)));
            }
        }
    }
    let top = alg.top_degree();
    for i in 1..n {
        for j in 1..n {
            if deg[i] + deg[j] > top {
                continue;
            }
            for k in 1..n {
                if deg[i] + deg[j] + deg[k] > top {
                    continue;
                }
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (l, c) in &table[i][j] {
                    for (r, d) in &table[*l][k] {
                        *acc.entry(*r).or_insert_with(Q::zero) += c * d;
                    }
                }
                for (l, c) in &table[j][k] {
                    for (r, d) in &table[i][*l] {
                        *acc.entry(*r).or_insert_with(Q::zero) -= c * d;
                    }
                }
                if acc.values().any(|c| !c.is_zero()) {
                    out.push(format!("associativity on ({}, {}, {})", alg.label(i), alg.label(j), alg.label(k)));
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut spaces = Vec::new();
    spaces.extend((1..=8).map(|n| Space::sphere(n).unwrap()));
    spaces.extend((1..=4).map(|k| Space::torus(k).unwrap()));
    spaces.extend((1..=4).map(|n| Space::complex_projective(n).unwrap()));
    let mut checked = 0;
    for s in &spaces {
        let f = axiom_failures(s.algebra());
        ensure!(f.is_empty() && s.algebra().axiom_violations().is_empty(), "{s}: {:?}", f.first());
        checked += 1;
    }
    for (i, a) in spaces.iter().enumerate() {
        for b in &spaces[i..] {
            let p = kunneth_product(a, b);
            let f = axiom_failures(p.algebra());
            ensure!(f.is_empty(), "{p}: {} violations, first {:?}", f.len(), f.first());
            let (pa, pb, pp) = (poincare_polynomial(a), poincare_polynomial(b), poincare_polynomial(&p));
            let mut expect = vec![0usize; pa.len() + pb.len() - 1];
            for (x, u) in pa.iter().enumerate() {
                for (y, v) in pb.iter().enumerate() {
                    expect[x + y] += u * v;
                }
            }
            ensure!(pp == expect, "{p}: Poincare polynomial {pp:?} != {expect:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} rings, zero violations"))
}

// 2 ------------------------------------------------------------------------

fn random_bundle<R: Rng>(rng: &mut R, base: &Space, max_rank: usize) -> Bundle {
    let rank = rng.gen_range(0..=max_rank);
    let oriented = rng.gen_bool(0.5);
    let spread = if rng.gen_bool(0.4) { 0 } else { 2 };
    let half = rank / 2;
    if oriented && rank % 2 == 0 && rank > 0 {
        let e = random_class(rng, base, rank, spread);
        let p: Vec<Element> = (1..half).map(|i| random_class(rng, base, 4 * i, spread)).collect();
        Bundle::oriented_with_euler(base, rank, e, p).unwrap()
    } else {
        let p: Vec<Element> = (1..=half).map(|i| random_class(rng, base, 4 * i, spread)).collect();
        Bundle::new(base, rank, oriented, None, p).unwrap()
    }
}

fn criterion_2(audit: &mut Audit) -> Outcome {
    let point = Space::point();
    let cp3 = Space::complex_projective(3).unwrap();
    let t4 = Space::torus(4).unwrap();
    let a = cp3.element("a").unwrap();
    let etas = vec![
        Bundle::trivial(&point, 0),
        Bundle::trivial(&point, 1),
        Bundle::trivial(&point, 3),
        soulcert::bundles::tangent_bundle(&cp3).unwrap(),
        Bundle::trivial(&cp3, 2),
        Bundle::oriented_with_euler(&cp3, 2, a.clone(), vec![]).unwrap(),
        Bundle::new(&cp3, 3, false, None, vec![a.pow(2).scale(&q(2))]).unwrap(),
    ];
    let top = t4.fundamental_class().unwrap();
    let loud: Vec<Bundle> = [1, -3, 5]
        .iter()
        .map(|c| Bundle::new(&t4, 3, false, None, vec![top.scale(&q(*c))]).unwrap())
        .collect();
    let quiet: Vec<Bundle> = (0..4).map(|r| Bundle::trivial(&t4, r)).collect();
    for eta in &etas {
        let b = kunneth_product(eta.base(), &t4);
        for (xis, want) in [(&loud, true), (&quiet, false)] {
            for xi in xis {
                let flat = check_flat_product(eta, xi).map_err(|e| e.to_string())?;
                let prod = external_product_over(&b, eta, xi).unwrap();
                let search = find_obstruction(&prod).map_err(|e| e.to_string())?;
                audit.see(&flat);
                audit.see(&search);
                ensure!(obstructed(&flat) == want, "flat product over {} gave {}", eta.base(), flat.verdict);
                ensure!(obstructed(&search) == want, "search over {} gave {}", eta.base(), search.verdict);
                if !want {
                    ensure!(flat.verdict == Verdict::NoObstructionFound, "unexpected {}", flat.verdict);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut hits = 0;
    for _ in 0..100 {
        let c = small_space(&mut rng);
        let t = Space::torus(rng.gen_range(1..=4)).unwrap();
        let eta = random_bundle(&mut rng, &c, 4);
        let xi = random_bundle(&mut rng, &t, 4);
        let b = kunneth_product(&c, &t);
        let flat = check_flat_product(&eta, &xi).map_err(|e| e.to_string())?;
        let search = find_obstruction(&external_product_over(&b, &eta, &xi).unwrap()).map_err(|e| e.to_string())?;
        audit.see(&flat);
        audit.see(&search);
        ensure!(
            obstructed(&flat) == obstructed(&search),
            "disagreement on {b}: flat {} vs search {}",
            flat.verdict,
            search.verdict
        );
        hits += usize::from(obstructed(&flat));
    }
    Ok(format!("fixed cases agree; 100 random instances agree ({hits} obstructed)"))
}

// 3 ------------------------------------------------------------------------

fn criterion_3(audit: &mut Audit) -> Outcome {
    let cp3 = Space::complex_projective(3).unwrap();
    let b = kunneth_product(&cp3, &Space::torus(2).unwrap());
    let alg = b.algebra();
    let a = dense(&b.element("a").unwrap());
    let t = dense(&b.element("t1*t2").unwrap());
    let e = add(&a, &t);
    // p(TB ⊕ ξ) = (1 + a²)^4 (1 + e²), computed from structure constants
    let total = mul(alg, &tangent_total_pontrjagin(&b, &[("a", 3)]), &add(&unit(alg), &mul(alg, &e, &e)));
    let p2 = homogeneous(alg, &total, 8);
    let a3t = dense(&b.element("a^3*t1*t2").unwrap());
    let mixed: Dense = p2.iter().enumerate().map(|(i, c)| if label_torus_degree(alg.label(i)) == 2 { c.clone() } else { Q::zero() }).collect();
    ensure!(mixed == scale(&a3t, &q(8)), "oracle component is not 8 a^3 t1 t2");
    // 2·p1(TCP³)·a
    let p1c = homogeneous(alg, &tangent_total_pontrjagin(&b, &[("a", 3)]), 4);
    ensure!(mul(alg, &scale(&p1c, &q(2)), &a) == scale(&dense(&b.element("a^3").unwrap()), &q(8)), "2 p1 a");

    let xi = Bundle::oriented_with_euler(&b, 2, &b.element("a").unwrap() + &b.element("t1*t2").unwrap(), vec![]).unwrap();
    let cert = find_obstruction(&xi).map_err(|e| e.to_string())?;
    audit.see(&cert);
    ensure!(obstructed(&cert), "search verdict {}", cert.verdict);
    let value = dense(cert.value.as_ref().unwrap());
    let mixed_engine: Dense =
        value.iter().enumerate().map(|(i, c)| if label_torus_degree(alg.label(i)) == 2 && alg.degree(i) == 8 { c.clone() } else { Q::zero() }).collect();
    ensure!(cert.witness.as_ref().unwrap().to_string() == "P2", "witness {:?}", cert.witness);
    ensure!(mixed_engine == mixed, "engine component differs from oracle");
    let pd = check_pdual(&cp3, &Space::torus(2).unwrap(), None, 0).map_err(|e| e.to_string())?;
    audit.see(&pd);
    ensure!(obstructed(&pd) && pd.value == cert.value, "pdual corollary disagrees");
    let out = run_text(
        "space B = product(cp(3), torus(2))\nbundle xi over B { rank 2, oriented, euler = a + t1*t2 }\ncheck xi\n",
        &RunOptions::default(),
    );
    ensure!(out.error.is_none(), "script failed");
    ensure!(out.records[0].get("value") == Some("8*a^3*t1*t2"), "script value {:?}", out.records[0].get("value"));
    Ok("component of p2(TB+xi) is 8*a^3*t1*t2; Obstructed by search, corollary and script".into())
}

// 4 ------------------------------------------------------------------------

fn criterion_4(audit: &mut Audit) -> Outcome {
    let mut n = 0;
    for p1 in -10..=10 {
        for e in -10..=10 {
            let lb = LowDimBundle::s1s3(4, false, p1, e, None).map_err(|e| e.to_string())?;
            let class = classify_s1s3(&lb).map_err(|e| e.to_string())?;
            let cert = find_obstruction(&lb.rational_descriptor().unwrap()).map_err(|e| e.to_string())?;
            audit.see(&cert);
            let want = p1 != 0 || e != 0;
            ensure!(obstructed(&cert) == want, "search at (p1, e) = ({p1}, {e}): {}", cert.verdict);
            ensure!((class.verdict() == Verdict::Obstructed) == want, "classifier at ({p1}, {e}): {class}");
            if !want {
                ensure!(cert.verdict == Verdict::NoObstructionFound, "verdict {}", cert.verdict);
                ensure!(class.verdict() == Verdict::KnownNonnegativelyCurved, "classifier {class}");
            }
            n += 1;
        }
        for (rank, w1) in [(3, false), (3, true), (4, true)] {
            let lb = LowDimBundle::s1s3(rank, w1, p1, 0, None).map_err(|e| e.to_string())?;
            let class = classify_s1s3(&lb).map_err(|e| e.to_string())?;
            let cert = find_obstruction(&lb.rational_descriptor().unwrap()).map_err(|e| e.to_string())?;
            audit.see(&cert);
            ensure!(obstructed(&cert) == (p1 != 0), "rank {rank} w1 {w1} p1 {p1}: {}", cert.verdict);
            ensure!((class.verdict() == Verdict::Obstructed) == (p1 != 0), "classifier rank {rank} w1 {w1} p1 {p1}");
            n += 1;
        }
    }
    Ok(format!("{n} descriptors over S3 x S1, search and classifier agree"))
}

// 5 ------------------------------------------------------------------------

fn criterion_5(audit: &mut Audit) -> Outcome {
    let mut n = 0;
    for rank in 0..=5usize {
        for w1 in [false, true] {
            for e in -10..=10i64 {
                for w2 in [false, true] {
                    let Ok(lb) = LowDimBundle::s1s2(rank, w1, e, w2) else { continue };
                    let cert = find_obstruction(&lb.rational_descriptor().unwrap()).map_err(|e| e.to_string())?;
                    audit.see(&cert);
                    ensure!(!obstructed(&cert), "rank {rank} w1 {w1} e {e}: Obstructed");
                    let d = classify_s1s2(&lb).map_err(|e| e.to_string())?;
                    ensure!(d.verdict() == Verdict::KnownNonnegativelyCurved, "classifier on rank {rank}");
                    n += 1;
                }
            }
        }
    }
    // rank 0: 1; rank 1: w1 either; oriented rank 2: 21 Euler numbers; nonorientable rank 2: 1;
    // ranks 3..5: w1 and w2 free
    ensure!(n == 1 + 2 + 21 + 1 + 3 * 4, "sweep covered {n} descriptors");
    Ok(format!("{n} descriptors over S2 x S1, none obstructed"))
}

// 6 ------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let mut image = HashSet::new();
    for m in -20..=20i64 {
        for n in -20..=20i64 {
            let v = s4_invariants(m, n);
            ensure!(v == (2 * (m - n), m + n), "s4_invariants({m}, {n}) = {v:?}");
            image.insert(v);
        }
    }
    ensure!(image.len() == 41 * 41, "not injective on the grid");
    for k in -40..=40 {
        ensure!(s4_realizable(3, k, 0).unwrap() == (k % 4 == 0), "rank 3, p1 = {k}");
    }
    for p1 in -20..=20 {
        for e in -20..=20 {
            let brute = (-40..=40i64).any(|m| (-40..=40i64).any(|n| 2 * (m - n) == p1 && m + n == e));
            ensure!(s4_realizable(4, p1, e).unwrap() == brute, "rank 4 at ({p1}, {e})");
        }
    }
    Ok("table, rank-3 rule, injectivity and rank-4 image agree".into())
}

// 7 ------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    let s4 = Space::sphere(4).unwrap();
    let s = s4.element("s").unwrap();
    for d in -3..=3 {
        for c in [-2, 0, 6] {
            let xi = Bundle::new(&s4, 4, true, Some(s.scale(&q(d))), vec![s.scale(&q(c))]).unwrap();
            let g = gysin_betti(&xi).map_err(|e| e.to_string())?;
            let want = if d != 0 { vec![1, 0, 0, 0, 0, 0, 0, 1] } else { vec![1, 0, 0, 1, 1, 0, 0, 1] };
            ensure!(g.betti == want, "e = {d} s: {:?}", g.betti);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let c = small_space(&mut rng);
        let k = rng.gen_range(0..=2);
        let b = if k == 0 { c } else { with_torus(&c, k) };
        let rank = rng.gen_range(2..=6);
        let xi = if rank % 2 == 0 {
            let e = random_class(&mut rng, &b, rank, 2);
            Bundle::oriented_with_euler(&b, rank, e, vec![]).unwrap()
        } else {
            Bundle::new(&b, rank, true, None, vec![]).unwrap()
        };
        let g = gysin_betti(&xi).map_err(|e| e.to_string())?;
        let chi_fiber = if (rank - 1) % 2 == 0 { 2 } else { 0 };
        let want = euler_characteristic(b.algebra()) * chi_fiber;
        ensure!(g.euler_characteristic() == want, "{b}, rank {rank}: {} != {want}", g.euler_characteristic());
    }
    Ok("S4 profiles exact; Euler characteristic identity on 50 random bundles".into())
}

// 8 ------------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut n = 0;
    for k in 1..=3 {
        for _ in 0..4 {
            let c = small_space(&mut rng);
            let b = with_torus(&c, k);
            let alg = b.algebra();
            let x = (0..=b.dimension()).fold(b.zero(), |acc, d| &acc + &random_class(&mut rng, &b, d, 3));
            let xd = dense(&x);
            for m in 1..=5u64 {
                let f = torus_cover_map(&b, m).map_err(|e| e.to_string())?;
                let y = dense(&f.pull(&x).unwrap());
                for i in 0..alg.dim() {
                    let factor = Q::from_integer((m as i64).pow(label_torus_degree(alg.label(i)) as u32).into());
                    ensure!(y[i] == &xd[i] * &factor, "{b}, m = {m}, component {}", alg.label(i));
                }
                let images: Vec<Dense> = (0..alg.dim()).map(|i| dense(&f.pull(&Element::basis(alg, i)).unwrap())).collect();
                ensure!(rank(&images) == alg.dim() && f.induced.is_injective(), "{b}, m = {m}: not injective");
                for m2 in 1..=5u64 {
                    let g = torus_cover_map(&b, m2).unwrap();
                    let lhs = f.then(&g).unwrap().pull(&x).unwrap();
                    let rhs = torus_cover_map(&b, m * m2).unwrap().pull(&x).unwrap();
                    ensure!(lhs == rhs, "{b}: covers {m} and {m2} do not compose to {}", m * m2);
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (space, m) pairs scale by m^j, compose and inject"))
}

// 9 ------------------------------------------------------------------------

type Formal = BTreeMap<[u32; 4], Q>;

fn formal_mul(x: &Formal, y: &Formal) -> Formal {
    let mut out = Formal::new();
    for (a, c) in x {
        for (b, d) in y {
            let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
            *out.entry(m).or_insert_with(Q::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn formal_add(x: &Formal, y: &Formal) -> Formal {
    let mut out = x.clone();
    for (m, c) in y {
        *out.entry(*m).or_insert_with(Q::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn formal_one() -> Formal {
    Formal::from([([0; 4], Q::one())])
}

fn criterion_9() -> Outcome {
    // elementary symmetric e_i(y1..y4) by expanding Π(1 + y_j)
    let mut prod = formal_one();
    for j in 0..4 {
        let mut y = [0; 4];
        y[j] = 1;
        prod = formal_mul(&prod, &formal_add(&formal_one(), &Formal::from([(y, Q::one())])));
    }
    let elem: Vec<Formal> = (0..=4)
        .map(|i| prod.iter().filter(|(m, _)| m.iter().sum::<u32>() == i).map(|(m, c)| (*m, c.clone())).collect())
        .collect();
    for k in 1..=4u32 {
        let direct: Formal = (0..4)
            .map(|j| {
                let mut m = [0; 4];
                m[j] = k;
                (m, Q::one())
            })
            .collect();
        let poly = ClassPolynomial::power_sum(k as usize);
        let mut via = Formal::new();
        for (m, c) in poly.terms() {
            let mut t = Formal::from([([0; 4], c.clone())]);
            for (s, e) in m.factors() {
                let Symbol::Pontrjagin(i) = s else { return Err("power sum mentions E".into()) };
                for _ in 0..e {
                    t = formal_mul(&t, &elem[i]);
                }
            }
            via = formal_add(&via, &t);
        }
        ensure!(via == direct, "s{k} from Newton differs from the direct power sum");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let spaces = [
        kunneth_product(&Space::complex_projective(3).unwrap(), &Space::torus(3).unwrap()),
        kunneth_product(&Space::sphere(2).unwrap(), &Space::torus(4).unwrap()),
        kunneth_product(&Space::complex_projective(4).unwrap(), &Space::torus(2).unwrap()),
    ];
    for b in &spaces {
        let alg = b.algebra();
        for _ in 0..6 {
            let roots: Vec<Element> = (0..rng.gen_range(1..=4)).map(|_| random_class(&mut rng, b, 2, 2)).collect();
            let xi = roots
                .iter()
                .map(|x| Bundle::oriented_with_euler(b, 2, x.clone(), vec![]).unwrap())
                .reduce(|u, v| whitney_sum(&u, &v).unwrap())
                .unwrap();
            let ps = power_sums(&xi, 4);
            ensure!(ps.satisfies_newton(&xi), "Newton recursion on {b}");
            for k in 1..=4 {
                let mut want = vec![Q::zero(); alg.dim()];
                for x in &roots {
                    let x2 = mul(alg, &dense(x), &dense(x));
                    let mut p = unit(alg);
                    for _ in 0..k {
                        p = mul(alg, &p, &x2);
                    }
                    want = add(&want, &p);
                }
                ensure!(dense(ps.get(k).unwrap()) == want, "s{k} on {b} differs from the sum of root powers");
            }
            let eta = random_bundle(&mut rng, b, 5);
            let sum = whitney_sum(&xi, &eta).unwrap();
            let (a, c, s) = (power_sums(&xi, 4), power_sums(&eta, 4), power_sums(&sum, 4));
            for k in 1..=4 {
                ensure!(
                    dense(s.get(k).unwrap()) == add(&dense(a.get(k).unwrap()), &dense(c.get(k).unwrap())),
                    "additivity of s{k} on {b}"
                );
            }
        }
    }
    Ok("s1..s4 match the four-root expansion; recursion and additivity hold on 18 random sums".into())
}

// 11 -----------------------------------------------------------------------

fn criterion_11(audit: &mut Audit) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [2usize, 4] {
        let t = Space::torus(k).unwrap();
        for rank in (2..=k).step_by(2) {
            for _ in 0..12 {
                let e = random_class(&mut rng, &t, rank, 1);
                let xi = Bundle::oriented_with_euler(&t, rank, e.clone(), vec![]).unwrap();
                let cert = sphere_euler_check(&xi).map_err(|e| e.to_string())?;
                audit.see(&cert);
                ensure!(obstructed(&cert) == !e.is_zero(), "T^{k} rank {rank}: e = {e}, verdict {}", cert.verdict);
            }
        }
    }
    let t4 = Space::torus(4).unwrap();
    let top = t4.fundamental_class().unwrap();
    let xi = Bundle::new(&t4, 3, true, None, vec![top.clone()]).unwrap();
    let p1 = ClassPolynomial::symbol(Symbol::Pontrjagin(1));
    let cert = sphere_pontrjagin_check(&xi, Some(&p1), &Default::default()).map_err(|e| e.to_string())?;
    audit.see(&cert);
    ensure!(obstructed(&cert), "Q = P1 on T^4 gave {}", cert.verdict);
    let triv = sphere_pontrjagin_check(&Bundle::trivial(&t4, 3), Some(&p1), &Default::default()).unwrap();
    ensure!(!obstructed(&triv), "trivial bundle obstructed");
    let loud = Bundle::oriented_with_euler(&t4, 4, top.clone(), vec![]).unwrap();
    ensure!(
        matches!(sphere_pontrjagin_check(&loud, Some(&p1), &Default::default()), Err(SphereError::EulerNonzero)),
        "nonzero Euler class accepted"
    );
    let triples = [(3, 2, 1, true), (4, 2, 1, false), (5, 2, 1, false), (7, 2, 2, true), (8, 2, 2, false), (1, 1, 0, false), (15, 4, 2, true), (16, 1, 4, false)];
    for (p, c, k, want) in triples {
        let v = betti_obstruction(p, c, k).map_err(|e| e.to_string())?;
        ensure!((v == Verdict::Obstructed) == want && want == (p < c * (1 << k)), "betti {p} {c} {k}: {v}");
    }
    Ok("Euler test fires iff e != 0; Q = P1 fires on T^4 and refuses e != 0; Betti rule exact".into())
}

fn main() {
    let start = Instant::now();
    let mut audit = Audit::default();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "algebra axioms", criterion_1()),
        (2, "flat product obstruction", criterion_2(&mut audit)),
        (3, "Poincare-dual component", criterion_3(&mut audit)),
        (4, "S1 x S3 dichotomy", criterion_4(&mut audit)),
        (5, "S1 x S2 consistency", criterion_5(&mut audit)),
        (6, "S4 table", criterion_6()),
        (7, "Gysin profiles", criterion_7()),
        (8, "cover scaling", criterion_8()),
        (9, "Newton identities", criterion_9()),
    ];
    let c11 = criterion_11(&mut audit);
    let c10 = if audit.failures.is_empty() && audit.checked > 0 {
        Ok(format!("{} obstructed certificates re-evaluated independently", audit.checked))
    } else if audit.checked == 0 {
        Err("no obstructed certificates were produced".into())
    } else {
        Err(format!("{} of {} failed: {}", audit.failures.len(), audit.checked, audit.failures[0]))
    };
    results.push((10, "certificate soundness", c10));
    results.push((11, "sphere bundle checks", c11));
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(msg) => println!("PASS {n:>2} {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria pass in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
