use vbranch_core::liealg::weyl_group;
use vbranch_core::pairs::{build_pair, PairSpec};
use vbranch_core::parabolic::{
    closed_orbit_census, closed_orbit_census_from_h, closedness_report, compatibility_report, double_coset_count,
    parabolic_from_coords, parabolic_from_simple_subset, standard_subsets, tensor_closedness,
};
use vbranch_core::Exec;

#[test]
fn tau_stable_implies_closed() {
    for spec in PairSpec::catalog(4) {
        let pr = build_pair(spec).unwrap();
        for sub in standard_subsets(pr.g.datum.simple_roots.len()) {
            let p = parabolic_from_simple_subset(&pr.g, &sub).unwrap();
            let c = compatibility_report(&p, &pr).unwrap();
            if c.tau_stable {
                assert!(c.h_fixed_reproduces_p, "{spec} {sub:?}");
                assert!(closedness_report(&p, &pr).unwrap().closed, "{spec} {sub:?}");
            }
        }
    }
}

#[test]
fn census_invariant_under_fixed_weyl_translates() {
    for (id, sub) in [("sl_s_glgl:p=2,q=2", vec![1]), ("sp_down_gl:n=3", vec![0, 1]), ("so_down_so:m=5", vec![])] {
        let pr = build_pair(id.parse().unwrap()).unwrap();
        let base = closed_orbit_census(&pr, &sub, Exec::default()).unwrap();
        let h0 = parabolic_from_simple_subset(&pr.g, &sub).unwrap().h;
        for s in pr.census_generators().unwrap() {
            let moved = closed_orbit_census_from_h(&pr, &s.apply(&h0), Exec::default()).unwrap();
            assert_eq!(moved.closed_count, base.closed_count, "{id}");
            assert_eq!(moved.gk_dims(), base.gk_dims(), "{id}");
        }
    }
}

#[test]
fn inner_census_matches_double_cosets() {
    for spec in PairSpec::catalog(4) {
        let pr = build_pair(spec).unwrap();
        if !pr.tau.is_inner {
            continue;
        }
        for sub in standard_subsets(pr.g.datum.simple_roots.len()).into_iter().step_by(3) {
            let c = closed_orbit_census(&pr, &sub, Exec::default()).unwrap();
            assert_eq!(c.closed_count, double_coset_count(&pr, &sub).unwrap(), "{spec} {sub:?}");
        }
    }
}

#[test]
fn tensor_criterion_matches_group_case() {
    for t in ["A1", "A2", "B2"] {
        let g1 = vbranch_core::liealg::build_classical(t.parse().unwrap()).unwrap();
        let gc = build_pair(format!("group_case:type={t}").parse().unwrap()).unwrap();
        let w = weyl_group(&g1.datum).unwrap();
        let r = g1.datum.simple_roots.len();
        let d = g1.coord_dim();
        for s1 in standard_subsets(r) {
            for s2 in standard_subsets(r) {
                let p1 = parabolic_from_simple_subset(&g1, &s1).unwrap();
                for x in w.iter().step_by(2) {
                    let h2 = x.apply(&parabolic_from_simple_subset(&g1, &s2).unwrap().h);
                    let p2 = parabolic_from_coords(&g1, &h2).unwrap();
                    let tensor = tensor_closedness(&p1, &p2, &g1).unwrap().closed;
                    let mut h = p1.h.0.clone();
                    h.extend(h2.0.iter().cloned());
                    assert_eq!(h.len(), 2 * d);
                    let pp = parabolic_from_coords(&gc.g, &vbranch_core::liealg::Weight(h)).unwrap();
                    assert_eq!(closedness_report(&pp, &gc).unwrap().closed, tensor, "{t} {s1:?} {s2:?}");
                }
            }
        }
    }
}
