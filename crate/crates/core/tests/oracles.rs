//! Closed-form values computed by hand, checked against the engine.

use hypersurf_core::homology::{length, tor};
use hypersurf_core::theta::{chi_ambient, theta};
use hypersurf_core::{FreeResolution, GradedModule, Length, PolyRing, Ring};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn koszul_betti_numbers_are_binomial() {
    for n in 1..=4 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let s = Ring::polynomial(PolyRing::with_vars(32003, &refs).unwrap());
        let k = GradedModule::residue_field(&s);
        let res = FreeResolution::compute(&k, n + 1).unwrap();
        let expected: Vec<usize> = (0..=n).map(|i| binomial(n, i)).collect();
        assert_eq!(res.betti_table().totals(), expected, "n = {n}");
        for i in 0..=n {
            assert_eq!(res.betti_table().get(i, i as i32), binomial(n, i));
        }
    }
}

// Over k[x,y]/(xy) the resolution of R/(x^a) is x^a, y, x, y, x, ...
// Tensoring with R/(y^b) gives Tor_0 = a + b - 1, odd Tor = 0, even Tor = 1.
#[test]
fn node_tor_closed_form() {
    let r = Ring::define(32003, &["x", "y"], "x*y").unwrap();
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let m = GradedModule::quotient(&r, &[r.parse(&format!("x^{a}")).unwrap()]).unwrap();
            let n = GradedModule::quotient(&r, &[r.parse(&format!("y^{b}")).unwrap()]).unwrap();
            for i in 0..=5 {
                let want = match i {
                    0 => (a + b - 1) as usize,
                    i if i % 2 == 1 => 0,
                    _ => 1,
                };
                assert_eq!(length(&tor(&m, &n, i).unwrap()), Length::Finite(want), "a={a} b={b} i={i}");
            }
            assert_eq!(theta(&m, &n).unwrap().value, 1);
            assert_eq!(chi_ambient(&m, &n).unwrap(), 1);
        }
    }
}

// Over k[x]/(x^d), Tor_i(k, k) = k for every i.
#[test]
fn residue_field_over_fat_point() {
    for d in 2..=4 {
        let r = Ring::define(32003, &["x"], &format!("x^{d}")).unwrap();
        let k = GradedModule::residue_field(&r);
        let res = FreeResolution::compute(&k, 6).unwrap();
        assert_eq!(res.betti_table().totals(), vec![1; 7]);
        // generator of F_i sits in degree (i/2)·d + (i mod 2)
        for i in 0..=6usize {
            let deg = (i / 2) as i32 * d + (i % 2) as i32;
            assert_eq!(res.betti_table().get(i, deg), 1, "d={d} i={i}");
        }
    }
}

// Hilbert series of S/(f): H(t) = (1 - t^d) / (1 - t)^n.
#[test]
fn hypersurface_hilbert_function() {
    let r = Ring::define(32003, &["x", "y", "z"], "x^3 + y^3 + z^3").unwrap();
    let rm = GradedModule::free(&r, vec![0]);
    let c2 = |k: i64| if k < 0 { 0 } else { ((k + 1) * (k + 2) / 2) as usize };
    for t in 0..10 {
        assert_eq!(rm.hilbert_value(t), c2(t) - c2(t - 3), "t={t}");
    }
}
