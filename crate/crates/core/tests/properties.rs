use std::collections::BTreeMap;

use proptest::prelude::*;
use vbranch_core::branching::{
    branch_with_setup, decompose_character, recompose, sym_power_character, BranchSetup, VermaSpec,
};
use vbranch_core::exactla::{bracket, jacobi_holds, Matrix, Rational, Subspace};
use vbranch_core::liealg::{
    build_classical, freudenthal_character, weyl_group, AlgebraRealization, CharacterCache, Weight,
};
use vbranch_core::pairs::build_pair;
use vbranch_core::parabolic::ParabolicChoice;
use vbranch_core::Exec;

fn algebra(i: usize) -> AlgebraRealization {
    let t = ["A2", "B2", "C2", "D3", "A3"][i % 5];
    build_classical(t.parse().unwrap()).unwrap()
}

fn element(g: &AlgebraRealization, coeffs: &[i64]) -> Matrix {
    g.basis
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(Matrix::zero(g.matrix_dim), |acc, (b, c)| &acc + &b.scale(&Rational::from_int(*c)))
}

fn dominant(g: &AlgebraRealization, cs: &[i64]) -> Weight {
    let d = &g.datum;
    let w = d
        .simple_roots
        .iter()
        .zip(cs)
        .fold(Weight::zero(g.coord_dim()), |acc, (a, c)| acc.add_scaled(&Rational::from_int(*c), a));
    d.dominant_conjugate(&w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_and_closure(i in 0usize..5, a in prop::collection::vec(-3i64..=3, 6),
                          b in prop::collection::vec(-3i64..=3, 7), c in prop::collection::vec(-3i64..=3, 5)) {
        let g = algebra(i);
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        prop_assert!(jacobi_holds(&x, &y, &z));
        prop_assert!(g.algebra.contains(&bracket(&x, &y).unwrap()));
    }

    #[test]
    fn echelon_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 0..6)) {
        let vecs: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        let s = Subspace::span(5, vecs.clone()).unwrap();
        let again = Subspace::span(5, s.basis().to_vec()).unwrap();
        prop_assert_eq!(&s, &again);
        for v in &vecs {
            prop_assert!(s.contains(v));
        }
    }

    #[test]
    fn freudenthal_matches_weyl_and_is_invariant(i in 0usize..5, cs in prop::collection::vec(0i64..=2, 3)) {
        let g = algebra(i);
        let lam = dominant(&g, &cs);
        let chr = freudenthal_character(&g.datum, &lam).unwrap();
        let total: u64 = chr.values().sum();
        prop_assert_eq!(Rational::from_int(total as i64), g.datum.weyl_dimension(&lam));
        let w = weyl_group(&g.datum).unwrap();
        for x in w.iter().step_by(5) {
            for (mu, m) in &chr {
                prop_assert_eq!(chr.get(&x.apply(mu)), Some(m));
            }
        }
    }

    #[test]
    fn decompose_round_trip(i in 0usize..3, parts in prop::collection::vec((prop::collection::vec(0i64..=2, 3), 1u64..=3), 1..4)) {
        let g = algebra(i);
        let mut want: BTreeMap<Weight, u64> = BTreeMap::new();
        for (cs, m) in &parts {
            *want.entry(dominant(&g, cs)).or_insert(0) += m;
        }
        let want: Vec<(Weight, u64)> = want.into_iter().collect();
        let mut cache = CharacterCache::new();
        let chr = recompose(&want, &g.datum, &mut cache).unwrap();
        let mut got = decompose_character(&chr, &g.datum, &mut cache).unwrap();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn sym_power_total_dimension(n in 1usize..5, k in 0usize..5) {
        let ws: Vec<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
        let c = sym_power_character(&ws, k).unwrap();
        let binom = (1..=k).fold(1u64, |acc, j| acc * (n + j - 1) as u64 / j as u64);
        prop_assert_eq!(c.values().sum::<u64>(), binom);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn finiteness_bound_is_stable(case in 0usize..4, n in 1usize..3) {
        let (id, choice) = [
            ("sl_s_glgl:p=2,q=2", ParabolicChoice::Heisenberg),
            ("sp_down_gl:n=2", ParabolicChoice::Borel),
            ("so_down_so:m=5", ParabolicChoice::Borel),
            ("gl_down_gl:n=2,l=2", ParabolicChoice::Borel),
        ][case].clone();
        let pr = build_pair(id.parse().unwrap()).unwrap();
        let spec = VermaSpec::generic(choice.build(&pr.g).unwrap());
        let setup = BranchSetup::new(&spec, &pr).unwrap();
        let small = branch_with_setup(&spec, &setup, n, Exec::Sequential).unwrap();
        let big = branch_with_setup(&spec, &setup, n + 2, Exec::Sequential).unwrap();
        for e in &big.entries {
            if setup.finiteness_bound(&e.displacement) <= n {
                prop_assert_eq!(small.multiplicity(&e.displacement), e.multiplicity);
            }
        }
    }
}
