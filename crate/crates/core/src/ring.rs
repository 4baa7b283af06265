//! Polynomial rings `S = k[x_1, ..., x_n]` and hypersurface rings `R = S/(f)`.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::GroebnerBasis;
use crate::hilbert;
use crate::matrix::Matrix;
use crate::poly::{PolyRing, Polynomial};

/// A standard graded ring: either the ambient polynomial ring `S` or `S/(f)` for a
/// homogeneous `f` of positive degree. Elements of `S/(f)` are always stored as
/// their normal forms modulo `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    base: PolyRing,
    relation: Option<Polynomial>,
}

impl Ring {
    pub fn polynomial(base: PolyRing) -> Self {
        Self { base, relation: None }
    }

    pub fn hypersurface(base: PolyRing, f: Polynomial) -> Result<Self> {
        if f.nvars() != base.nvars() {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroRelation);
        }
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous(base.display(&f)));
        }
        if f.degree() == Some(0) {
            return Err(Error::ConstantRelation);
        }
        let f = f.monic(base.field());
        Ok(Self { base, relation: Some(f) })
    }

    /// Parses `f` over `k[vars]` with `k = F_p`.
    pub fn define(p: u32, vars: &[&str], f: &str) -> Result<Self> {
        let base = PolyRing::with_vars(p, vars)?;
        let f = base.parse(f)?;
        Self::hypersurface(base, f)
    }

    pub fn base(&self) -> &PolyRing {
        &self.base
    }

    pub fn field(&self) -> &PrimeField {
        self.base.field()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        self.relation.as_ref()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.relation.is_some()
    }

    /// Degree of `f`, or 0 for the polynomial ring.
    pub fn relation_degree(&self) -> i32 {
        self.relation.as_ref().map_or(0, |f| f.degree().unwrap() as i32)
    }

    pub fn dim(&self) -> usize {
        match self.relation {
            Some(_) => self.nvars() - 1,
            None => self.nvars(),
        }
    }

    /// The ambient polynomial ring `S`.
    pub fn ambient(&self) -> Ring {
        Ring::polynomial(self.base.clone())
    }

    pub fn zero(&self) -> Polynomial {
        self.base.zero()
    }

    pub fn one(&self) -> Polynomial {
        self.base.one()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.base.parse(text)?))
    }

    pub fn display(&self, p: &Polynomial) -> String {
        self.base.display(p)
    }

    /// Normal form modulo `f`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        match &self.relation {
            Some(f) => p.reduce_by(self.field(), f),
            None => p.clone(),
        }
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        match &self.relation {
            Some(_) => m.map_entries(|p| self.reduce(p)),
            None => m.clone(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(self.field(), b))
    }

    pub fn mul_matrix(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&a.mul(self.field(), b))
    }

    /// Jacobian criterion: `S/(f, df/dx_1, ..., df/dx_n)` has Krull dimension at most 0.
    /// The polynomial ring is regular and reports `true`.
    pub fn is_isolated_singularity(&self) -> bool {
        let Some(f) = &self.relation else { return true };
        let field = self.field();
        let mut gens = vec![vec![f.clone()]];
        for i in 0..self.nvars() {
            let d = f.derivative(field, i);
            if !d.is_zero() {
                gens.push(vec![d]);
            }
        }
        let gb = GroebnerBasis::compute(&self.base, &[0], &gens).expect("same ring");
        hilbert::krull_dim(&gb, self.nvars()) <= 0
    }

    /// The Jacobian criterion is unreliable when `p` divides an exponent of `f`.
    pub fn exponent_warning(&self) -> Option<String> {
        let f = self.relation.as_ref()?;
        let p = self.field().characteristic();
        let bad = f
            .terms()
            .iter()
            .flat_map(|(_, m)| m.exponents().iter().copied())
            .any(|e| e > 0 && e % p == 0);
        bad.then(|| {
            format!(
                "characteristic {p} divides an exponent of the relation; the Jacobian test may be inaccurate"
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap().dim(), 3);
        assert_eq!(Ring::define(32003, &["x", "y"], "x*y").unwrap().dim(), 1);
        assert_eq!(Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap().dim(), 2);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(matches!(
            Ring::define(32003, &["x", "y", "u", "v"], "x*u - y"),
            Err(Error::Inhomogeneous(_))
        ));
        assert_eq!(Ring::define(32003, &["x"], "x - x"), Err(Error::ZeroRelation));
        assert_eq!(Ring::define(32003, &["x"], "3"), Err(Error::ConstantRelation));
        assert_eq!(Ring::define(32004, &["x"], "x"), Err(Error::NotPrime(32004)));
    }

    #[test]
    fn isolated_singularities() {
        assert!(Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap().is_isolated_singularity());
        assert!(Ring::define(32003, &["x", "y"], "x*y").unwrap().is_isolated_singularity());
        assert!(Ring::define(32003, &["x", "y", "z"], "x*y - z^2").unwrap().is_isolated_singularity());
        assert!(!Ring::define(32003, &["x", "y", "z"], "x^2*y").unwrap().is_isolated_singularity());
    }

    #[test]
    fn exponent_warning() {
        let r = Ring::define(3, &["x", "y"], "x^3 + y^3").unwrap();
        assert!(r.exponent_warning().is_some());
        let r = Ring::define(32003, &["x", "y"], "x^3 + y^3").unwrap();
        assert!(r.exponent_warning().is_none());
    }

    #[test]
    fn reduction_is_normal_form() {
        let r = Ring::define(32003, &["x", "y", "u", "v"], "x*u - y*v").unwrap();
        assert_eq!(r.parse("x*u").unwrap(), r.parse("y*v").unwrap());
        assert!(r.parse("x*u - y*v").unwrap().is_zero());
    }
}
