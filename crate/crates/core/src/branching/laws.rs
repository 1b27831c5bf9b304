use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::decompose::decompose_character;
use super::engine::{restricted_weights, BranchEntry, BranchingTable};
use super::series::{sym_powers, to_disp};
use crate::error::{Error, Result};
use crate::exactla::{bracket, lie::to_matrix, Rational};
use crate::liealg::{CharacterCache, RootDatum, Weight};
use crate::pairs::{build_pair, PairSpec, SymmetricPair};
use crate::parabolic::{is_tau_stable, ParabolicData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawFamily {
    /// gl_{n+1} ↓ gl_1 ⊕ gl_n.
    AA,
    /// so_{2n+1} ↓ so_{2n}.
    BD,
    /// so_{2n+2} ↓ so_{2n+1}.
    DB,
}

impl LawFamily {
    /// The catalog pair realizing the law; `l` is used by AA only.
    pub fn pair_spec(self, n: usize, l: usize) -> Result<PairSpec> {
        let s = match self {
            LawFamily::AA => PairSpec::GlDownGl { n, l },
            LawFamily::BD => PairSpec::SoDownSo { m: 2 * n },
            LawFamily::DB => PairSpec::SoDownSo { m: 2 * n + 1 },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn assumption(self, n: usize, l: usize) -> String {
        match self {
            LawFamily::AA => format!("λ_i − λ_j ∉ ℤ for distinct i, j in {{1..{}}} ∖ {{{l}}}", n + 1),
            LawFamily::BD | LawFamily::DB => format!("λ_i ± λ_j ∉ ℤ for 1 ≤ i < j ≤ {n}"),
        }
    }
}

impl FromStr for LawFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AA" => Ok(LawFamily::AA),
            "BD" => Ok(LawFamily::BD),
            "DB" => Ok(LawFamily::DB),
            _ => Err(Error::InvalidInput(format!("unknown law {s:?}; expected AA, BD or DB"))),
        }
    }
}

impl fmt::Display for LawFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawFamily::AA => "AA",
            LawFamily::BD => "BD",
            LawFamily::DB => "DB",
        })
    }
}

/// All k ∈ ℕⁿ with |k| = total.
pub fn compositions(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The closed-form multiplicity-free tables, as displacements from λ|_{j′}.
pub fn closed_form_law(family: LawFamily, n: usize, l: usize, degree: usize) -> Result<BranchingTable> {
    family.pair_spec(n, l)?;
    let dim = match family {
        LawFamily::AA => n + 1,
        LawFamily::BD | LawFamily::DB => n,
    };
    let mut entries = Vec::new();
    for k_deg in 0..=degree {
        for k in compositions(n, k_deg) {
            let k: Vec<i64> = k.into_iter().map(|x| x as i64).collect();
            let displacement = match family {
                LawFamily::AA => {
                    // k is indexed by {1..n+1} ∖ {l}.
                    let before = &k[..l - 1];
                    let after = &k[l - 1..];
                    let ind = before.iter().sum::<i64>() - after.iter().sum::<i64>();
                    let mut d: Vec<i64> = before.iter().map(|x| -x).collect();
                    d.push(ind);
                    d.extend(after.iter().copied());
                    d
                }
                LawFamily::BD | LawFamily::DB => k.iter().map(|x| -x).collect(),
            };
            entries.push(BranchEntry { displacement, multiplicity: 1, first_degree: k_deg });
        }
    }
    let mut t = BranchingTable {
        base_offset: Weight::zero(dim),
        entries,
        degree_bound: degree,
        genericity_assumptions: vec![family.assumption(n, l)],
    };
    t.canonicalize();
    Ok(t)
}

/// Distinct nonzero restrictions of roots of g to j^τ.
pub fn restricted_roots(pair: &SymmetricPair) -> Vec<Weight> {
    let set: BTreeSet<Weight> = pair.g.datum.roots.iter().map(|a| pair.restrict(a)).filter(|w| !w.is_zero()).collect();
    set.into_iter().collect()
}

/// Neither α + β nor α − β lies in `roots`.
pub fn strongly_orthogonal(a: &Weight, b: &Weight, roots: &BTreeSet<Weight>) -> bool {
    !roots.contains(&a.add(b)) && !roots.contains(&a.sub(b))
}

/// ν₁ is the highest weight; ν_j the highest among those strongly
/// orthogonal to ν₁, …, ν_{j−1}.
pub fn strongly_orthogonal_sequence(weights: &[Weight], roots: &[Weight], regular: &Weight) -> Vec<Weight> {
    let roots: BTreeSet<Weight> = roots.iter().cloned().collect();
    let mut cand: Vec<Weight> = weights.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    cand.sort_by_cached_key(|w| std::cmp::Reverse((w.dot(regular), w.clone())));
    let mut seq: Vec<Weight> = Vec::new();
    for w in cand {
        if seq.iter().all(|v| strongly_orthogonal(v, &w, &roots)) {
            seq.push(w);
        }
    }
    seq
}

#[derive(Clone, Debug)]
pub struct SchmidReport {
    pub nu: Vec<Weight>,
    /// (degree, Σ a_j ν_j) with a₁ ≥ … ≥ a_k ≥ 0, degree ≤ N.
    pub d: Vec<(usize, Weight)>,
    /// Constituents of S^k(u₋ ∩ g^{−τ}) for k ≤ N.
    pub per_degree: Vec<Vec<(Weight, u64)>>,
    pub multiplicity_free: bool,
    pub matches_d: bool,
}

impl SchmidReport {
    pub fn verified(&self) -> bool {
        self.multiplicity_free && self.matches_d
    }
}

fn nonincreasing(k: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total.min(cap)).rev() {
        for mut rest in nonincreasing(k - 1, total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// S(u₋ ∩ g^{−τ}) as an l^τ-module, checked against the strongly orthogonal
/// description degree by degree.
pub fn schmid_decomposition(pair: &SymmetricPair, p: &ParabolicData, degree: usize) -> Result<SchmidReport> {
    if p.h.len() != pair.g.coord_dim() || p.p.ambient_dim() != pair.g.matrix_dim.pow(2) {
        return Err(Error::CartanMismatch);
    }
    if !is_tau_stable(p, pair) {
        return Err(Error::Incompatible(format!("{}: τp ≠ p", pair.label)));
    }
    let n = pair.g.matrix_dim;
    let basis: Vec<_> = p.u_plus.basis().iter().map(|v| to_matrix(n, v)).collect();
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if !bracket(x, y)?.is_zero() {
                return Err(Error::Hypothesis("nilradical is not abelian".into()));
            }
        }
    }
    let h = pair.restricted_coords(&pair.fix_cartan(&p.h_matrix))?;
    let l_tau: RootDatum = pair.restricted_datum.subsystem(|b| b.dot(&h).is_zero());
    let weights = restricted_weights(pair, &p.u_minus.intersection(&pair.minus)?)?;
    let nu = strongly_orthogonal_sequence(&weights, &restricted_roots(pair), &pair.restricted_datum.regular);

    let mut d = Vec::new();
    for k in 0..=degree {
        for a in nonincreasing(nu.len(), k, k) {
            let w = nu
                .iter()
                .zip(&a)
                .fold(Weight::zero(pair.j_tau_eps.len()), |acc, (v, c)| acc.add_scaled(&Rational::from_int(*c as i64), v));
            d.push((k, w));
        }
    }

    let dim = pair.j_tau_eps.len();
    let zero = Weight::zero(dim);
    let ints: Vec<Vec<i64>> = weights.iter().map(|w| to_disp(&zero, w)).collect::<Result<_>>()?;
    let mut cache = CharacterCache::new();
    let mut per_degree = Vec::new();
    let mut multiplicity_free = true;
    let mut matches_d = true;
    for (k, s) in sym_powers(&ints, dim, degree).into_iter().enumerate() {
        let chr: BTreeMap<Weight, i64> = s.into_iter().map(|(w, m)| (Weight::from_disp(&w), m)).collect();
        let parts = decompose_character(&chr, &l_tau, &mut cache)?;
        multiplicity_free &= parts.iter().all(|(_, m)| *m == 1);
        let got: BTreeSet<&Weight> = parts.iter().map(|(w, _)| w).collect();
        let want: BTreeSet<&Weight> = d.iter().filter(|(j, _)| *j == k).map(|(_, w)| w).collect();
        matches_d &= got == want;
        per_degree.push(parts);
    }
    Ok(SchmidReport { nu, d, per_degree, multiplicity_free, matches_d })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    /// ⟨λ+ρ, β∨⟩ ∉ {1, 2, …} for every β in the nilradical.
    pub simple_certified: bool,
    /// The δ + ρ′ lie in pairwise distinct W′-orbits.
    pub distinct_infchar: Option<bool>,
}

/// Simplicity test for M_p(λ) and, given a table, the infinitesimal-character
/// separation of its summands at this λ.
pub fn genericity_check(
    pair: &SymmetricPair,
    p: &ParabolicData,
    lambda: &Weight,
    table: Option<&BranchingTable>,
) -> Result<GenericityReport> {
    let g = &pair.g;
    if lambda.len() != g.coord_dim() {
        return Err(Error::DimensionMismatch { expected: g.coord_dim(), found: lambda.len() });
    }
    let lambda = g.normalize_weight(lambda);
    // Positive system containing the nilradical.
    let positive: Vec<&Weight> = g
        .datum
        .roots
        .iter()
        .filter(|a| {
            let v = a.dot(&p.h);
            v.is_positive() || (v.is_zero() && g.datum.is_positive(a))
        })
        .collect();
    let half = Rational::new(1, 2);
    let rho = positive.iter().fold(Weight::zero(g.coord_dim()), |acc, a| acc.add(a)).scale(&half);
    let lr = lambda.add(&rho);
    let simple_certified = p.nilradical_roots.iter().all(|b| {
        let c = crate::liealg::coroot_pairing(&lr, b);
        !(c.is_integer() && c.is_positive())
    });
    let distinct_infchar = table.map(|t| {
        let base = pair.restrict(&lambda);
        let datum = &pair.restricted_datum;
        let mut seen = BTreeSet::new();
        t.entries.iter().all(|e| {
            let delta = base.add(&Weight::from_disp(&e.displacement));
            seen.insert(datum.dominant_conjugate(&delta.add(&datum.rho)))
        })
    });
    Ok(GenericityReport { simple_certified, distinct_infchar })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfRow {
    pub spec: PairSpec,
    pub dim_g: usize,
    pub dim_fixed: usize,
    pub rank_g: usize,
    pub rank_fixed: usize,
    pub passes: bool,
}

/// dim g − dim g^τ ≤ rank g + rank g^τ over the catalog pairs with simple g
/// and rank ≤ `max_rank`.
pub fn mf_table(max_rank: usize) -> Result<Vec<MfRow>> {
    if max_rank > 6 {
        return Err(Error::RankCap { rank: max_rank, cap: 6 });
    }
    PairSpec::catalog(max_rank)
        .into_iter()
        .filter(|s| s.simple_g())
        .map(|spec| {
            let pair = build_pair(spec)?;
            let (dim_g, dim_fixed, rank_g, rank_fixed) = (pair.dim_g(), pair.dim_fixed(), pair.g.rank(), pair.rank_fixed());
            Ok(MfRow { spec, dim_g, dim_fixed, rank_g, rank_fixed, passes: dim_g - dim_fixed <= rank_g + rank_fixed })
        })
        .collect()
}

pub fn mf_scan(max_rank: usize) -> Result<Vec<PairSpec>> {
    Ok(mf_table(max_rank)?.into_iter().filter(|r| r.passes).map(|r| r.spec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::engine::{branch_multiplicities, VermaSpec};
    use crate::exec::Exec;
    use crate::parabolic::{parabolic_from_simple_subset, ParabolicChoice};

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    fn pair(s: &str) -> SymmetricPair {
        build_pair(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let aa = closed_form_law(LawFamily::AA, 1, 1, 2).unwrap();
        assert_eq!(aa.summands(), vec![(vec![-2, 2], 1, 2), (vec![-1, 1], 1, 1), (vec![0, 0], 1, 0)]);
        let bd = closed_form_law(LawFamily::BD, 2, 0, 1).unwrap();
        assert_eq!(bd.summands(), vec![(vec![-1, 0], 1, 1), (vec![0, -1], 1, 1), (vec![0, 0], 1, 0)]);
        let db = closed_form_law(LawFamily::DB, 2, 0, 1).unwrap();
        assert_eq!(db.summands(), bd.summands());
        let aa2 = closed_form_law(LawFamily::AA, 2, 2, 1).unwrap();
        assert_eq!(aa2.summands(), vec![(vec![-1, 1, 0], 1, 1), (vec![0, -1, 1], 1, 1), (vec![0, 0, 0], 1, 0)]);
    }

    #[test]
    fn engine_matches_laws() {
        for (fam, n, l) in [(LawFamily::AA, 2, 1), (LawFamily::AA, 2, 2), (LawFamily::AA, 2, 3), (LawFamily::BD, 2, 0), (LawFamily::DB, 2, 0)] {
            let pr = build_pair(fam.pair_spec(n, l).unwrap()).unwrap();
            let p = parabolic_from_simple_subset(&pr.g, &[]).unwrap();
            let t = branch_multiplicities(&VermaSpec::generic(p), &pr, 3, Exec::default()).unwrap();
            assert_eq!(t.summands(), closed_form_law(fam, n, l, 3).unwrap().summands(), "{fam} {n} {l}");
        }
    }

    #[test]
    fn strongly_orthogonal_examples() {
        let sp = pair("sp_down_gl:n=2");
        let ws = [w(&[-2, 0]), w(&[-1, -1]), w(&[0, -2])];
        let seq = strongly_orthogonal_sequence(&ws, &restricted_roots(&sp), &sp.restricted_datum.regular);
        assert_eq!(seq, vec![w(&[0, -2]), w(&[-2, 0])]);
        assert_eq!(strongly_orthogonal_sequence(&ws[..1], &restricted_roots(&sp), &sp.restricted_datum.regular), vec![w(&[-2, 0])]);

        let sl = pair("sl_s_glgl:p=2,q=2");
        let p = ParabolicChoice::Maximal(2).build(&sl.g).unwrap();
        let ws = restricted_weights(&sl, &p.u_minus).unwrap();
        assert_eq!(strongly_orthogonal_sequence(&ws, &restricted_roots(&sl), &sl.restricted_datum.regular).len(), 2);
    }

    #[test]
    fn schmid_examples() {
        let sp = pair("sp_down_gl:n=2");
        let p = ParabolicChoice::Siegel.build(&sp.g).unwrap();
        let r = schmid_decomposition(&sp, &p, 2).unwrap();
        assert!(r.verified());
        let d: BTreeSet<Weight> = r.d.iter().map(|(_, x)| x.clone()).collect();
        assert_eq!(d, BTreeSet::from([w(&[0, 0]), w(&[0, -2]), w(&[0, -4]), w(&[-2, -2])]));
        assert_eq!(schmid_decomposition(&sp, &p, 0).unwrap().d, vec![(0, w(&[0, 0]))]);

        let sl = pair("sl_s_glgl:p=2,q=2");
        let p = ParabolicChoice::Maximal(2).build(&sl.g).unwrap();
        assert!(schmid_decomposition(&sl, &p, 3).unwrap().verified());

        let heis = ParabolicChoice::Heisenberg.build(&sl.g).unwrap();
        assert!(matches!(schmid_decomposition(&sl, &heis, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn scalar_branching_is_schmid() {
        let sp = pair("sp_down_gl:n=2");
        let p = ParabolicChoice::Siegel.build(&sp.g).unwrap();
        let t = branch_multiplicities(&VermaSpec::generic(p.clone()), &sp, 3, Exec::default()).unwrap();
        let r = schmid_decomposition(&sp, &p, 3).unwrap();
        let from_table: BTreeSet<Vec<i64>> = t.entries.iter().map(|e| e.displacement.clone()).collect();
        let from_d: BTreeSet<Vec<i64>> = r.d.iter().map(|(_, x)| x.to_ints().unwrap()).collect();
        assert_eq!(from_table, from_d);
        assert!(t.is_multiplicity_free());
    }

    #[test]
    fn genericity_examples() {
        let gl = pair("sl_s_glgl:p=1,q=1");
        let b = parabolic_from_simple_subset(&gl.g, &[]).unwrap();
        let lam = Weight(vec![Rational::new(-1, 4), Rational::new(1, 4)]);
        assert!(genericity_check(&gl, &b, &lam, None).unwrap().simple_certified);
        assert!(!genericity_check(&gl, &b, &w(&[0, 0]), None).unwrap().simple_certified);

        let so = pair("so_down_so:m=4");
        let b = parabolic_from_simple_subset(&so.g, &[]).unwrap();
        let t = closed_form_law(LawFamily::BD, 2, 0, 2).unwrap();
        let lam = Weight(vec![Rational::new(1, 2), Rational::new(1, 3)]);
        assert_eq!(genericity_check(&so, &b, &lam, Some(&t)).unwrap().distinct_infchar, Some(true));
        let t0 = closed_form_law(LawFamily::BD, 2, 0, 2).unwrap();
        assert_eq!(genericity_check(&so, &b, &w(&[0, 0]), Some(&t0)).unwrap().distinct_infchar, Some(false));
    }

    #[test]
    fn mf_scan_examples() {
        let rows = mf_table(3).unwrap();
        let find = |s: &str| rows.iter().find(|r| r.spec == s.parse().unwrap()).unwrap().clone();
        assert!(find("sl_s_glgl:p=1,q=2").passes);
        assert!(find("so_down_so:m=4").passes);
        let r = find("sl_s_glgl:p=2,q=2");
        assert_eq!((r.dim_g, r.dim_fixed, r.rank_g, r.rank_fixed), (15, 7, 3, 3));
        assert!(!r.passes);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(nonincreasing(2, 4, 4), vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
    }
}
