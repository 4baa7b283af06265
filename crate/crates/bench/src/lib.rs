//! Fixtures shared by the benchmarks.

use hypersurf_core::factorization::{circulant_matrix, two_term_matrix};
use hypersurf_core::{GradedModule, Matrix, Ring};

/// `k[x,y,u,v]/(xu - yv)` with the ideal `(x, y)` and its dual.
pub fn cone_pair() -> (GradedModule, GradedModule) {
    let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
    let m = GradedModule::ideal(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
    let ms = m.dual();
    (m, ms)
}

/// `k[x,y,z]/(xy - z^2)` with `coker [[x, z], [z, y]]`.
pub fn a1_module() -> GradedModule {
    let r = Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap();
    let p = |s: &str| r.parse(s).unwrap();
    let a = two_term_matrix(&r, &p("x"), &p("z"), &p("y"), &p("-z")).unwrap();
    GradedModule::cokernel(&r, a).unwrap()
}

/// The circulant 3x3 factor of `x^3 + y^3 + z^3 - 3xyz`.
pub fn circulant() -> (Ring, Matrix) {
    let r = Ring::define(32003, &["x", "y", "z"], "x^3 + y^3 + z^3 - 3*x*y*z").unwrap();
    let a = circulant_matrix(&r).unwrap();
    (r, a)
}

/// `m^k` in `k[x,y,z]/(x^3 + y^3 + z^3)`, a module with a sizable presentation.
pub fn fermat_power(k: u32) -> GradedModule {
    let r = Ring::define(32003, &["x", "y", "z"], "x^3 + y^3 + z^3").unwrap();
    let mut gens = Vec::new();
    for i in 0..=k {
        for j in 0..=k - i {
            gens.push(r.parse(&format!("x^{i}*y^{j}*z^{}", k - i - j)).unwrap());
        }
    }
    GradedModule::ideal(&r, &gens).unwrap()
}
