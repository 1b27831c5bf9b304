use std::collections::BTreeMap;

use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactla::subspace::solve_combination;
use crate::exactla::{Rational, Subspace};

/// Roots, positive system, simple roots and ρ, all in ε-coordinates with the
/// standard dot product as invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub coord_dim: usize,
    pub roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub rho: Weight,
    /// Regular functional: α is positive iff ⟨α, regular⟩ > 0.
    pub regular: Weight,
    pub root_spaces: BTreeMap<Weight, Subspace>,
}

impl RootDatum {
    /// Builds the datum from a root list; `root_spaces` may be empty for
    /// abstract data (e.g. closed-form oracles).
    pub fn new(
        coord_dim: usize,
        mut roots: Vec<Weight>,
        regular: Weight,
        root_spaces: BTreeMap<Weight, Subspace>,
    ) -> Result<Self> {
        roots.sort();
        roots.dedup();
        let mut positive_roots = Vec::new();
        for a in &roots {
            if a.len() != coord_dim {
                return Err(Error::DimensionMismatch { expected: coord_dim, found: a.len() });
            }
            let v = a.dot(&regular);
            if v.is_zero() {
                return Err(Error::Internal(format!("functional {regular} is not regular at root {a}")));
            }
            if v.is_positive() {
                positive_roots.push(a.clone());
            }
        }
        let mut simple_roots: Vec<Weight> = positive_roots
            .iter()
            .filter(|a| {
                !positive_roots.iter().any(|b| {
                    let c = a.sub(b);
                    positive_roots.binary_search(&c).is_ok()
                })
            })
            .cloned()
            .collect();
        simple_roots.sort_by(|a, b| a.leading_index().cmp(&b.leading_index()).then_with(|| a.cmp(b)));
        let half = Rational::new(1, 2);
        let rho = positive_roots.iter().fold(Weight::zero(coord_dim), |acc, a| acc.add(a)).scale(&half);
        Ok(RootDatum { coord_dim, roots, positive_roots, simple_roots, rho, regular, root_spaces })
    }

    /// Closed subsystem of roots satisfying `keep`, with the same positivity.
    pub fn subsystem(&self, keep: impl Fn(&Weight) -> bool) -> RootDatum {
        let roots: Vec<Weight> = self.roots.iter().filter(|a| keep(a)).cloned().collect();
        let spaces = self
            .root_spaces
            .iter()
            .filter(|(a, _)| keep(a))
            .map(|(a, s)| (a.clone(), s.clone()))
            .collect();
        RootDatum::new(self.coord_dim, roots, self.regular.clone(), spaces).expect("subsystem of a valid datum")
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.roots.binary_search(w).is_ok()
    }

    pub fn is_positive(&self, w: &Weight) -> bool {
        self.positive_roots.binary_search(w).is_ok()
    }

    /// ⟨μ, α∨⟩ = 2⟨μ,α⟩/⟨α,α⟩.
    pub fn coroot_pairing(&self, mu: &Weight, alpha: &Weight) -> Rational {
        coroot_pairing(mu, alpha)
    }

    pub fn is_dominant_integral(&self, mu: &Weight) -> bool {
        self.simple_roots.iter().all(|a| {
            let p = coroot_pairing(mu, a);
            p.is_integer() && !p.is_negative()
        })
    }

    /// Weyl dimension formula Π_{α>0} ⟨λ+ρ,α⟩/⟨ρ,α⟩.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Rational {
        let lr = lambda.add(&self.rho);
        let mut d = Rational::one();
        for a in &self.positive_roots {
            d = &d * &(&lr.dot(a) / &self.rho.dot(a));
        }
        d
    }

    pub fn reflect(&self, mu: &Weight, alpha: &Weight) -> Weight {
        reflect(mu, alpha)
    }

    /// W-conjugate of μ in the closed dominant chamber (valid for rational μ).
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut m = mu.clone();
        loop {
            let Some(a) = self.simple_roots.iter().find(|a| m.dot(a).is_negative()) else {
                return m;
            };
            m = reflect(&m, a);
        }
    }

    /// Coordinates of `w` in the simple roots, if `w` lies in their span.
    pub fn simple_coordinates(&self, w: &Weight) -> Option<Vec<Rational>> {
        let vecs: Vec<Vec<Rational>> = self.simple_roots.iter().map(|a| a.0.clone()).collect();
        if vecs.is_empty() {
            return w.is_zero().then(Vec::new);
        }
        solve_combination(&vecs, &w.0)
    }

    /// Maximum under the regular functional, ties broken by lexicographic maximum.
    pub fn order_key(&self, w: &Weight) -> (Rational, Weight) {
        (w.dot(&self.regular), w.clone())
    }
}

pub fn coroot_pairing(mu: &Weight, alpha: &Weight) -> Rational {
    &(&mu.dot(alpha) * &Rational::from_int(2)) / &alpha.dot(alpha)
}

/// s_α(μ) = μ − ⟨μ, α∨⟩α.
pub fn reflect(mu: &Weight, alpha: &Weight) -> Weight {
    let c = -coroot_pairing(mu, alpha);
    mu.add_scaled(&c, alpha)
}
