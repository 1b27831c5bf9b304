use std::collections::HashMap;

use super::{closedness_report, coweight_sum, parabolic_from_coords, ParabolicData};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::liealg::{simple_reflections, weyl_group, Weight, WeylElement};
use crate::pairs::SymmetricPair;

#[derive(Clone, Debug)]
pub struct CensusRepresentative {
    /// A Weyl element w with p = w·p₀.
    pub weyl: WeylElement,
    pub parabolic: ParabolicData,
    pub gk_dim: usize,
    /// Number of closed translates in the class.
    pub class_size: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitCensusReport {
    pub total_parabolics_containing_j: usize,
    pub closed_translates: usize,
    pub closed_count: usize,
    /// Sorted by (gk_dim, H).
    pub representatives: Vec<CensusRepresentative>,
}

impl OrbitCensusReport {
    pub fn gk_dims(&self) -> Vec<usize> {
        self.representatives.iter().map(|r| r.gk_dim).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Closed G^τ-orbits through standard parabolics with Levi simple roots `subset`.
pub fn closed_orbit_census(pair: &SymmetricPair, subset: &[usize], exec: Exec) -> Result<OrbitCensusReport> {
    let h0 = coweight_sum(&pair.g, subset)?;
    closed_orbit_census_from_h(pair, &h0, exec)
}

/// Census over the W-translates of p(H₀).
pub fn closed_orbit_census_from_h(pair: &SymmetricPair, h0: &Weight, exec: Exec) -> Result<OrbitCensusReport> {
    let g = &pair.g;
    let group = weyl_group(&g.datum)?;
    let sign_key = |h: &Weight| -> Vec<bool> { g.datum.roots.iter().map(|a| !a.dot(h).is_negative()).collect() };

    // Distinct translates w·p₀, first by root set and then by subspace.
    let mut by_key: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut translates: Vec<(WeylElement, Weight)> = Vec::new();
    for w in &group {
        let h = w.apply(h0);
        by_key.entry(sign_key(&h)).or_insert_with(|| {
            translates.push((w.clone(), h));
            translates.len() - 1
        });
    }
    let built: Vec<Result<ParabolicData>> = exec.map(&translates, |(_, h)| parabolic_from_coords(g, h));
    let built: Vec<ParabolicData> = built.into_iter().collect::<Result<_>>()?;
    {
        let mut seen = std::collections::HashSet::new();
        if !built.iter().all(|p| seen.insert(&p.p)) {
            return Err(Error::Internal("distinct root sets gave equal parabolics".into()));
        }
    }

    let reports = exec.map(&built, |p| closedness_report(p, pair));
    let mut closed: Vec<(usize, usize)> = Vec::new();
    let mut closed_index: HashMap<usize, usize> = HashMap::new();
    for (i, r) in reports.into_iter().enumerate() {
        let r = r?;
        if r.closed {
            let gk = r.gk_dim.ok_or_else(|| Error::Internal("closed without gk".into()))?;
            closed_index.insert(i, closed.len());
            closed.push((i, gk));
        }
    }

    let gens = pair.census_generators()?;
    let mut uf = UnionFind::new(closed.len());
    for (ci, &(i, _)) in closed.iter().enumerate() {
        for s in &gens {
            let img = s.apply(&translates[i].1);
            let j = *by_key
                .get(&sign_key(&img))
                .ok_or_else(|| Error::Internal("census generator leaves the W-orbit".into()))?;
            match closed_index.get(&j) {
                Some(&cj) => uf.union(ci, cj),
                None => return Err(Error::Internal("census generator does not preserve closedness".into())),
            }
        }
    }

    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for ci in 0..closed.len() {
        let root = uf.find(ci);
        classes.entry(root).or_default().push(ci);
    }
    let mut representatives: Vec<CensusRepresentative> = classes
        .into_values()
        .map(|members| {
            let best = *members
                .iter()
                .min_by(|&&a, &&b| translates[closed[a].0].1.cmp(&translates[closed[b].0].1).reverse())
                .expect("non-empty class");
            let (i, gk) = closed[best];
            CensusRepresentative {
                weyl: translates[i].0.clone(),
                parabolic: built[i].clone(),
                gk_dim: gk,
                class_size: members.len(),
            }
        })
        .collect();
    representatives.sort_by(|a, b| (a.gk_dim, &a.parabolic.h).cmp(&(b.gk_dim, &b.parabolic.h)));
    Ok(OrbitCensusReport {
        total_parabolics_containing_j: translates.len(),
        closed_translates: closed.len(),
        closed_count: uf.classes(),
        representatives,
    })
}

/// |W_{g^τ} \ W_g / W_l| with W_{g^τ} generated by the census lifts and W_l by
/// the simple reflections in `subset`.
pub fn double_coset_count(pair: &SymmetricPair, subset: &[usize]) -> Result<usize> {
    let group = weyl_group(&pair.g.datum)?;
    let index: HashMap<&WeylElement, usize> = group.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let left = pair.census_generators()?;
    let simple = simple_reflections(&pair.g.datum)?;
    let right: Vec<&WeylElement> = subset.iter().map(|&i| &simple[i]).collect();
    let mut uf = UnionFind::new(group.len());
    for (i, w) in group.iter().enumerate() {
        for s in &left {
            uf.union(i, index[&s.compose(w)]);
        }
        for s in &right {
            uf.union(i, index[&w.compose(s)]);
        }
    }
    Ok(uf.classes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::build_pair;

    fn pair(s: &str) -> SymmetricPair {
        build_pair(s.parse().unwrap()).unwrap()
    }

    fn census(s: &str, subset: &[usize]) -> OrbitCensusReport {
        closed_orbit_census(&pair(s), subset, Exec::default()).unwrap()
    }

    #[test]
    fn borel_sl4() {
        let r = census("sl_s_glgl:p=2,q=2", &[]);
        assert_eq!(r.total_parabolics_containing_j, 24);
        assert_eq!(r.closed_count, 6);
        assert_eq!(double_coset_count(&pair("sl_s_glgl:p=2,q=2"), &[]).unwrap(), 6);
    }

    #[test]
    fn heisenberg() {
        let r = census("sl_s_glgl:p=2,q=2", &[1]);
        assert_eq!(r.closed_count, 4);
        assert_eq!(r.gk_dims(), vec![1, 1, 2, 2]);
        let r = census("sl_s_glgl:p=2,q=3", &[1, 2]);
        assert_eq!(r.closed_count, 4);
        assert_eq!(r.gk_dims(), vec![1, 3, 3, 3]);
    }

    #[test]
    fn siegel() {
        for n in 2..=3 {
            let pr = pair(&format!("sp_down_gl:n={n}"));
            let sub: Vec<usize> = (0..n - 1).collect();
            let r = closed_orbit_census(&pr, &sub, Exec::default()).unwrap();
            assert_eq!(r.closed_count, n + 1);
            let mut gk = r.gk_dims();
            gk.sort();
            let mut want: Vec<usize> = (0..=n).map(|j| j * (n - j)).collect();
            want.sort();
            assert_eq!(gk, want);
            assert_eq!(double_coset_count(&pr, &sub).unwrap(), n + 1);
        }
    }

    #[test]
    fn borel_counts() {
        for n in 1..=3 {
            assert_eq!(census(&format!("gl_down_gl:n={n},l=1"), &[]).closed_count, n + 1);
        }
        assert_eq!(census("so_down_so:m=4", &[]).closed_count, 2);
        assert_eq!(census("so_down_so:m=5", &[]).closed_count, 1);
    }

    #[test]
    fn strategies_agree() {
        let pr = pair("sl_s_glgl:p=2,q=2");
        let a = closed_orbit_census(&pr, &[1], Exec::Parallel).unwrap();
        let b = closed_orbit_census(&pr, &[1], Exec::Sequential).unwrap();
        assert_eq!(a.gk_dims(), b.gk_dims());
        let ha: Vec<_> = a.representatives.iter().map(|r| r.parabolic.h.clone()).collect();
        let hb: Vec<_> = b.representatives.iter().map(|r| r.parabolic.h.clone()).collect();
        assert_eq!(ha, hb);
    }

    #[test]
    fn group_case_borel() {
        // Closed G-orbits on B × B: one, the diagonal.
        let r = census("group_case:type=A1", &[]);
        assert_eq!(r.total_parabolics_containing_j, 4);
        assert_eq!(r.closed_count, 1);
    }
}
