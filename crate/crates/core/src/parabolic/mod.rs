//! Parabolic subalgebras p(H) ⊇ j: compatibility, closedness of G^τP,
//! Levi decomposition of p^τ, Gelfand–Kirillov dimensions and closed-orbit
//! censuses.

mod census;
mod choice;

pub use census::{closed_orbit_census, closed_orbit_census_from_h, double_coset_count, CensusRepresentative, OrbitCensusReport};
pub use choice::ParabolicChoice;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::lie::to_matrix;
use crate::exactla::subspace::solve_combination;
use crate::exactla::{ad_nilpotent, ad_nilpotent_fast, nilpotent_subalgebra_test, Matrix, NilpotencyReport, Rational, Subspace};
use crate::liealg::{AlgebraRealization, Weight};
use crate::pairs::SymmetricPair;

#[derive(Clone, Debug)]
pub struct ParabolicData {
    /// ε-coordinates of H.
    pub h: Weight,
    pub h_matrix: Matrix,
    pub levi_roots: Vec<Weight>,
    /// Roots with α(H) > 0.
    pub nilradical_roots: Vec<Weight>,
    /// Roots with α(H) < 0.
    pub opposite_roots: Vec<Weight>,
    pub l: Subspace,
    pub u_plus: Subspace,
    pub u_minus: Subspace,
    pub p: Subspace,
}

impl ParabolicData {
    pub fn is_borel(&self) -> bool {
        self.levi_roots.is_empty()
    }

    /// Whether a root lies in p, i.e. α(H) ≥ 0.
    pub fn contains_root(&self, alpha: &Weight) -> bool {
        !alpha.dot(&self.h).is_negative()
    }
}

fn span_of(n: usize, parts: impl IntoIterator<Item = Vec<Rational>>) -> Subspace {
    Subspace::span(n * n, parts).expect("vectors of length n²")
}

/// p(H) from ε-coordinates of H ∈ j.
pub fn parabolic_from_coords(g: &AlgebraRealization, h: &Weight) -> Result<ParabolicData> {
    if h.len() != g.coord_dim() {
        return Err(Error::DimensionMismatch { expected: g.coord_dim(), found: h.len() });
    }
    let h_matrix = g.cartan_element(h);
    let h = g.epsilon(&h_matrix)?;
    let mut levi_roots = Vec::new();
    let mut nilradical_roots = Vec::new();
    let mut opposite_roots = Vec::new();
    for a in &g.datum.roots {
        let v = a.dot(&h);
        if v.is_zero() {
            levi_roots.push(a.clone());
        } else if v.is_positive() {
            nilradical_roots.push(a.clone());
        } else {
            opposite_roots.push(a.clone());
        }
    }
    let n = g.matrix_dim;
    let vecs = |roots: &[Weight]| -> Vec<Vec<Rational>> {
        roots.iter().flat_map(|a| g.datum.root_spaces[a].basis().to_vec()).collect()
    };
    let cartan: Vec<Vec<Rational>> = g.cartan_basis.iter().map(|m| m.as_vector().to_vec()).collect();
    let l = span_of(n, cartan.iter().cloned().chain(vecs(&levi_roots)));
    let u_plus = span_of(n, vecs(&nilradical_roots));
    let u_minus = span_of(n, vecs(&opposite_roots));
    let p = span_of(n, cartan.into_iter().chain(vecs(&levi_roots)).chain(vecs(&nilradical_roots)));
    Ok(ParabolicData { h, h_matrix, levi_roots, nilradical_roots, opposite_roots, l, u_plus, u_minus, p })
}

/// p(H) for H in the diagonal Cartan.
pub fn parabolic_from_h(g: &AlgebraRealization, h: &Matrix) -> Result<ParabolicData> {
    let eps = g.epsilon(h)?;
    parabolic_from_coords(g, &eps)
}

/// ε-coordinates of Σ_{i ∉ subset} ϖ_i∨ (0-based simple-root indices).
pub fn coweight_sum(g: &AlgebraRealization, subset: &[usize]) -> Result<Weight> {
    let simple = &g.datum.simple_roots;
    if let Some(&bad) = subset.iter().find(|&&i| i >= simple.len()) {
        return Err(Error::InvalidInput(format!("simple root index {} out of range 1..={}", bad + 1, simple.len())));
    }
    let d = g.coord_dim();
    let cols: Vec<Vec<Rational>> = (0..d).map(|k| simple.iter().map(|a| a.0[k].clone()).collect()).collect();
    let target: Vec<Rational> = (0..simple.len())
        .map(|i| if subset.contains(&i) { Rational::zero() } else { Rational::one() })
        .collect();
    let h = solve_combination(&cols, &target).ok_or_else(|| Error::Internal("simple roots dependent".into()))?;
    g.epsilon(&g.cartan_element(&Weight(h)))
}

/// Standard parabolic whose Levi has simple roots `subset` (0-based).
pub fn parabolic_from_simple_subset(g: &AlgebraRealization, subset: &[usize]) -> Result<ParabolicData> {
    parabolic_from_coords(g, &coweight_sum(g, subset)?)
}

/// All subsets of the simple roots, in binary order.
pub fn standard_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0..1usize << rank).map(|mask| (0..rank).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub tau_stable: bool,
    pub compatible: bool,
    pub h_fixed: Option<Matrix>,
    /// p(H_fixed) = p, re-verified when compatible.
    pub h_fixed_reproduces_p: bool,
}

fn check_ambient(p: &ParabolicData, pair: &SymmetricPair) -> Result<()> {
    let n = pair.g.matrix_dim;
    if p.p.ambient_dim() != n * n || p.h.len() != pair.g.coord_dim() {
        return Err(Error::CartanMismatch);
    }
    Ok(())
}

pub fn is_tau_stable(p: &ParabolicData, pair: &SymmetricPair) -> bool {
    let n = pair.g.matrix_dim;
    p.p.basis().iter().all(|b| p.p.contains(pair.tau.apply(&to_matrix(n, b)).as_vector()))
}

pub fn compatibility_report(p: &ParabolicData, pair: &SymmetricPair) -> Result<CompatibilityReport> {
    check_ambient(p, pair)?;
    let tau_stable = is_tau_stable(p, pair);
    if !tau_stable {
        return Ok(CompatibilityReport { tau_stable, compatible: false, h_fixed: None, h_fixed_reproduces_p: false });
    }
    let hf = pair.fix_cartan(&p.h_matrix);
    let again = parabolic_from_h(&pair.g, &hf)?;
    Ok(CompatibilityReport { tau_stable, compatible: true, h_fixed_reproduces_p: again.p == p.p, h_fixed: Some(hf) })
}

#[derive(Clone, Debug)]
pub struct ClosednessReport {
    pub closed: bool,
    pub nilpotency: NilpotencyReport,
    pub pr_u: Subspace,
    /// (l^τ, pr_τ(u₊)) when closed.
    pub p_tau_levi: Option<(Subspace, Subspace)>,
    pub dim_p_tau: Option<usize>,
    /// p ∩ g^τ = l^τ ⊕ pr_τ(u₊), by span and dimension.
    pub levi_verified: bool,
    pub gk_dim: Option<usize>,
}

/// pr_τ(u₊) = {(Z + τZ)/2 : Z ∈ u₊}.
pub fn projected_nilradical(p: &ParabolicData, pair: &SymmetricPair) -> Subspace {
    let n = pair.g.matrix_dim;
    let half = Rational::new(1, 2);
    span_of(
        n,
        p.u_plus.basis().iter().map(|b| {
            let tb = pair.tau.apply_vec(b);
            b.iter().zip(&tb).map(|(x, y)| &(x + y) * &half).collect()
        }),
    )
}

pub fn closedness_report(p: &ParabolicData, pair: &SymmetricPair) -> Result<ClosednessReport> {
    check_ambient(p, pair)?;
    let pr_u = projected_nilradical(p, pair);
    let nilpotency = nilpotent_subalgebra_test(&pr_u, pair.g.matrix_dim);
    let closed = nilpotency.bracket_closed && nilpotency.nilpotent;
    if !closed {
        return Ok(ClosednessReport {
            closed,
            nilpotency,
            pr_u,
            p_tau_levi: None,
            dim_p_tau: None,
            levi_verified: false,
            gk_dim: None,
        });
    }
    let p_tau = p.p.intersection(&pair.fixed)?;
    let l_tau = p.l.intersection(&pair.fixed)?;
    let levi_verified = p_tau.dim() == l_tau.dim() + pr_u.dim() && l_tau.sum(&pr_u)? == p_tau;
    let gk_dim = pair.dim_fixed() - p_tau.dim();
    Ok(ClosednessReport {
        closed,
        nilpotency,
        dim_p_tau: Some(p_tau.dim()),
        p_tau_levi: Some((l_tau, pr_u.clone())),
        pr_u,
        levi_verified,
        gk_dim: Some(gk_dim),
    })
}

/// Which ad-nilpotency test the randomized cross-check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyRoute {
    /// Matrix of ad(Z) in echelon coordinates.
    AdOperator,
    /// Z minus its scalar part is a nilpotent matrix.
    Matrix,
}

/// Fixed-seed spot check that pr_τ(u₊) consists of ad-nilpotent elements:
/// `samples` random combinations of its basis with coefficients in {−3,…,3}.
pub fn criterion_iii_check(
    pr_u: &Subspace,
    pair: &SymmetricPair,
    samples: usize,
    seed: u64,
    route: NilpotencyRoute,
) -> Result<bool> {
    let n = pair.g.matrix_dim;
    let basis: Vec<Matrix> = pr_u.basis().iter().map(|v| to_matrix(n, v)).collect();
    if basis.is_empty() {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut z = Matrix::zero(n);
        for b in &basis {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                z = &z + &b.scale(&Rational::from_int(c));
            }
        }
        let nil = match route {
            NilpotencyRoute::AdOperator => ad_nilpotent(&z, &pair.g.algebra)?,
            NilpotencyRoute::Matrix => ad_nilpotent_fast(&z, &pair.g.algebra),
        };
        if !nil {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub closed: bool,
    pub intersection_parabolic: bool,
}

/// For each root α, g_α or g_{−α} lies in p₁ ∩ p₂.
pub fn tensor_closedness(p1: &ParabolicData, p2: &ParabolicData, g: &AlgebraRealization) -> Result<TensorReport> {
    if p1.h.len() != p2.h.len() || p1.p.ambient_dim() != p2.p.ambient_dim() || p1.h.len() != g.coord_dim() {
        return Err(Error::CartanMismatch);
    }
    let ok = g.datum.positive_roots.iter().all(|a| {
        let neg = a.neg();
        (p1.contains_root(a) && p2.contains_root(a)) || (p1.contains_root(&neg) && p2.contains_root(&neg))
    });
    Ok(TensorReport { closed: ok, intersection_parabolic: ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_classical;
    use crate::pairs::build_pair;

    fn pair(s: &str) -> SymmetricPair {
        build_pair(s.parse().unwrap()).unwrap()
    }

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn parabolic_from_h_examples() {
        let sl2 = build_classical("A1".parse().unwrap()).unwrap();
        let b = parabolic_from_coords(&sl2, &w(&[1, -1])).unwrap();
        assert!(b.is_borel());
        assert_eq!(b.u_plus.dim(), 1);

        let sp4 = build_classical("C2".parse().unwrap()).unwrap();
        let siegel = parabolic_from_h(&sp4, &sp4.cartan_element(&w(&[1, 1]))).unwrap();
        assert_eq!(siegel.u_plus.dim(), 3);

        let sl4 = build_classical("A3".parse().unwrap()).unwrap();
        let heis = parabolic_from_coords(&sl4, &w(&[1, 0, 0, -1])).unwrap();
        assert_eq!(heis.u_plus.dim(), 5);
        assert_eq!(heis.l.dim() + heis.u_plus.dim() + heis.u_minus.dim(), 15);

        assert!(matches!(parabolic_from_h(&sl2, &Matrix::unit(2, 0, 1)), Err(Error::NotInCartan)));
    }

    #[test]
    fn simple_subsets() {
        let sp4 = build_classical("C2".parse().unwrap()).unwrap();
        let full = parabolic_from_simple_subset(&sp4, &[0, 1]).unwrap();
        assert_eq!(full.p.dim(), 10);
        let borel = parabolic_from_simple_subset(&sp4, &[]).unwrap();
        assert!(borel.is_borel());
        let siegel = parabolic_from_simple_subset(&sp4, &[0]).unwrap();
        let by_h = parabolic_from_coords(&sp4, &w(&[1, 1])).unwrap();
        assert_eq!(siegel.p, by_h.p);
    }

    #[test]
    fn levi_normalizes_nilradical() {
        let sl4 = build_classical("A3".parse().unwrap()).unwrap();
        let p = parabolic_from_simple_subset(&sl4, &[1]).unwrap();
        let n = 4;
        for x in p.l.basis() {
            for y in p.u_plus.basis() {
                let z = crate::exactla::bracket(&to_matrix(n, x), &to_matrix(n, y)).unwrap();
                assert!(p.u_plus.contains(z.as_vector()));
            }
        }
    }

    #[test]
    fn compatibility_examples() {
        let pr = pair("sl_s_glgl:p=2,q=2");
        let b = parabolic_from_simple_subset(&pr.g, &[]).unwrap();
        let rep = compatibility_report(&b, &pr).unwrap();
        assert!(rep.tau_stable && rep.compatible && rep.h_fixed_reproduces_p);

        let gc = pair("group_case:type=A1");
        let opp = parabolic_from_coords(&gc.g, &w(&[1, -1, -1, 1])).unwrap();
        assert!(!compatibility_report(&opp, &gc).unwrap().tau_stable);
        let same = parabolic_from_coords(&gc.g, &w(&[1, -1, 1, -1])).unwrap();
        assert!(compatibility_report(&same, &gc).unwrap().tau_stable);

        let so6 = pair("so_down_so:m=5");
        let b = parabolic_from_simple_subset(&so6.g, &[]).unwrap();
        let rep = compatibility_report(&b, &so6).unwrap();
        assert!(rep.tau_stable && rep.h_fixed_reproduces_p);

        let other = pair("sp_down_gl:n=2");
        assert!(matches!(compatibility_report(&b, &other), Err(Error::CartanMismatch)));
    }

    #[test]
    fn closedness_examples() {
        let pr = pair("sl_s_glgl:p=2,q=2");
        let heis = parabolic_from_coords(&pr.g, &w(&[1, 0, 0, -1])).unwrap();
        let rep = closedness_report(&heis, &pr).unwrap();
        assert!(rep.closed && rep.levi_verified);
        assert_eq!(rep.gk_dim, Some(2));
        let heis1 = parabolic_from_coords(&pr.g, &w(&[1, -1, 0, 0])).unwrap();
        assert_eq!(closedness_report(&heis1, &pr).unwrap().gk_dim, Some(1));

        let sp = pair("sp_down_gl:n=2");
        let siegel1 = parabolic_from_coords(&sp.g, &w(&[1, -1])).unwrap();
        let rep = closedness_report(&siegel1, &sp).unwrap();
        assert!(rep.closed);
        assert_eq!(rep.gk_dim, Some(1));
        assert_eq!(rep.gk_dim, Some(rep.pr_u.dim()));
    }

    #[test]
    fn pr_tau_of_borel_nilradical_is_nilpotent() {
        let pr = pair("sl_s_glgl:p=2,q=2");
        let b = parabolic_from_simple_subset(&pr.g, &[]).unwrap();
        let rep = closedness_report(&b, &pr).unwrap();
        assert!(rep.nilpotency.bracket_closed && rep.nilpotency.nilpotent);
    }

    #[test]
    fn non_closed_group_case() {
        let gc = pair("group_case:type=A1");
        let opp = parabolic_from_coords(&gc.g, &w(&[1, -1, -1, 1])).unwrap();
        let rep = closedness_report(&opp, &gc).unwrap();
        assert!(!rep.closed);
        assert!(!criterion_iii_check(&rep.pr_u, &gc, 20, 7, NilpotencyRoute::AdOperator).unwrap());
        assert!(!criterion_iii_check(&rep.pr_u, &gc, 20, 7, NilpotencyRoute::Matrix).unwrap());
    }

    #[test]
    fn tensor_examples() {
        let sl3 = build_classical("A2".parse().unwrap()).unwrap();
        let b = parabolic_from_simple_subset(&sl3, &[]).unwrap();
        let opp = parabolic_from_coords(&sl3, &w(&[-1, 0, 1])).unwrap();
        let q = parabolic_from_simple_subset(&sl3, &[0]).unwrap();
        assert!(tensor_closedness(&b, &b, &sl3).unwrap().closed);
        assert!(!tensor_closedness(&b, &opp, &sl3).unwrap().closed);
        assert!(tensor_closedness(&b, &q, &sl3).unwrap().closed);
    }
}
