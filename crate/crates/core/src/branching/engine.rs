use std::collections::BTreeMap;

use super::decompose::decompose_character;
use super::series::{from_disp, pair_disp, sym_powers, tensor, to_disp, Disp, DispChar};
use crate::error::{Error, Result};
use crate::exactla::{lie::weight_decomposition, Matrix, Rational, Subspace};
use crate::exec::Exec;
use crate::liealg::{freudenthal_character, CharacterCache, RootDatum, Weight};
use crate::pairs::SymmetricPair;
use crate::parabolic::{compatibility_report, ParabolicData};

/// How λ is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSpec {
    /// λ = λ₀ + c with λ₀ integral dominant for l (zero when absent) and c a
    /// generic central character of l, carried symbolically.
    Generic { int_part: Option<Weight> },
    Numeric(Weight),
}

#[derive(Clone, Debug)]
pub struct VermaSpec {
    pub parabolic: ParabolicData,
    pub lambda: LambdaSpec,
}

impl VermaSpec {
    pub fn generic(parabolic: ParabolicData) -> Self {
        VermaSpec { parabolic, lambda: LambdaSpec::Generic { int_part: None } }
    }

    pub fn numeric(parabolic: ParabolicData, lambda: Weight) -> Self {
        VermaSpec { parabolic, lambda: LambdaSpec::Numeric(lambda) }
    }

    /// The weight all computations run with.
    pub fn effective_lambda(&self, pair: &SymmetricPair) -> Result<Weight> {
        let d = pair.g.coord_dim();
        let w = match &self.lambda {
            LambdaSpec::Generic { int_part: None } => return Ok(Weight::zero(d)),
            LambdaSpec::Generic { int_part: Some(w) } | LambdaSpec::Numeric(w) => w,
        };
        if w.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: w.len() });
        }
        Ok(pair.g.normalize_weight(w))
    }

    /// ⟨λ, α∨⟩ = 0 on Δ(l).
    pub fn scalar_type(&self, pair: &SymmetricPair) -> Result<bool> {
        let lam = self.effective_lambda(pair)?;
        Ok(self.parabolic.levi_roots.iter().all(|a| lam.dot(a).is_zero()))
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.lambda, LambdaSpec::Generic { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchEntry {
    pub displacement: Disp,
    pub multiplicity: u64,
    pub first_degree: usize,
}

/// m(δ;λ) for δ = base_offset + displacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingTable {
    pub base_offset: Weight,
    pub entries: Vec<BranchEntry>,
    pub degree_bound: usize,
    pub genericity_assumptions: Vec<String>,
}

impl BranchingTable {
    /// Degree ascending, then displacement descending.
    pub fn canonicalize(&mut self) {
        self.entries.sort_by(|a, b| a.first_degree.cmp(&b.first_degree).then_with(|| b.displacement.cmp(&a.displacement)));
    }

    pub fn multiplicity(&self, d: &[i64]) -> u64 {
        self.entries.iter().find(|e| e.displacement == d).map_or(0, |e| e.multiplicity)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 1)
    }

    /// (displacement, multiplicity, degree) triples, ignoring base and assumptions.
    pub fn summands(&self) -> Vec<(Disp, u64, usize)> {
        let mut v: Vec<_> = self.entries.iter().map(|e| (e.displacement.clone(), e.multiplicity, e.first_degree)).collect();
        v.sort();
        v
    }
}

/// Everything the engine derives from (spec, pair) once.
#[derive(Clone, Debug)]
pub struct BranchSetup {
    pub h_fixed: Matrix,
    /// H_fixed in the frame of j^τ.
    pub h_restricted: Weight,
    pub l_datum: RootDatum,
    pub l_prime_datum: RootDatum,
    pub lambda: Weight,
    /// λ|_{j′}.
    pub base: Weight,
    /// F_λ|_{l′} as displacements.
    pub finite_part: DispChar,
    pub u_minus: Vec<Disp>,
    /// u₋ ∩ g^τ.
    pub u_minus_fixed: Vec<Disp>,
    /// u₋ ∩ g^{−τ}.
    pub u_minus_anti: Vec<Disp>,
    /// Least ad(H)-level on u₋ ∩ g^{−τ}.
    pub a: Option<Rational>,
}

/// Weights of a j^τ-stable subspace, restricted to j^τ, with multiplicity.
pub fn restricted_weights(pair: &SymmetricPair, v: &Subspace) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for (w, s) in weight_decomposition(&pair.j_tau_basis, v)? {
        for _ in 0..s.dim() {
            out.push(Weight(w.clone()));
        }
    }
    Ok(out)
}

/// F_λ as an l-module, with weights restricted to j′.
pub fn restrict_finite_module(pair: &SymmetricPair, l_datum: &RootDatum, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    let chr = freudenthal_character(l_datum, lambda)?;
    let mut out = BTreeMap::new();
    for (w, m) in chr {
        *out.entry(pair.restrict(&w)).or_insert(0) += m as i64;
    }
    Ok(out)
}

fn disps(ws: &[Weight]) -> Result<Vec<Disp>> {
    ws.iter().map(|w| to_disp(&Weight::zero(w.len()), w)).collect()
}

impl BranchSetup {
    pub fn new(spec: &VermaSpec, pair: &SymmetricPair) -> Result<Self> {
        let p = &spec.parabolic;
        let compat = compatibility_report(p, pair)?;
        if !compat.compatible {
            return Err(Error::Incompatible(format!("{} with p(H), H = {}", pair.label, p.h)));
        }
        let h_fixed = compat.h_fixed.expect("compatible");
        let h_restricted = pair.restricted_coords(&h_fixed)?;
        let l_datum = pair.g.datum.subsystem(|a| a.dot(&p.h).is_zero());
        let l_prime_datum = pair.restricted_datum.subsystem(|b| b.dot(&h_restricted).is_zero());
        let lambda = spec.effective_lambda(pair)?;
        if !l_datum.is_dominant_integral(&lambda) {
            return Err(Error::NotDominant(format!("{lambda} is not dominant integral for the Levi factor")));
        }
        let base = pair.restrict(&lambda);
        let mut finite_part = BTreeMap::new();
        for (w, m) in restrict_finite_module(pair, &l_datum, &lambda)? {
            finite_part.insert(to_disp(&base, &w)?, m);
        }
        let u_minus = disps(&restricted_weights(pair, &p.u_minus)?)?;
        let u_minus_fixed = disps(&restricted_weights(pair, &p.u_minus.intersection(&pair.fixed)?)?)?;
        let u_minus_anti = disps(&restricted_weights(pair, &p.u_minus.intersection(&pair.minus)?)?)?;
        if u_minus_fixed.len() + u_minus_anti.len() != u_minus.len() {
            return Err(Error::Internal("u₋ does not split under τ".into()));
        }
        let mut setup = BranchSetup {
            h_fixed,
            h_restricted,
            l_datum,
            l_prime_datum,
            lambda,
            base,
            finite_part,
            u_minus,
            u_minus_fixed,
            u_minus_anti,
            a: None,
        };
        setup.a = setup.min_level(&setup.u_minus_anti)?;
        Ok(setup)
    }

    /// −⟨d, H_fixed⟩: the ad(H)-depth of a displacement.
    pub fn level(&self, d: &[i64]) -> Rational {
        -pair_disp(d, &self.h_restricted)
    }

    fn min_level(&self, ws: &[Disp]) -> Result<Option<Rational>> {
        let mut best: Option<Rational> = None;
        for w in ws {
            let l = self.level(w);
            if !l.is_positive() {
                return Err(Error::Internal(format!("u₋ weight {w:?} has level {l}")));
            }
            if best.as_ref().is_none_or(|b| l < *b) {
                best = Some(l);
            }
        }
        Ok(best)
    }

    /// Largest k with k·a ≤ level; 0 when u₋ ∩ g^{−τ} = 0.
    pub fn degree_for_level(a: &Option<Rational>, level: &Rational) -> usize {
        match a {
            None => 0,
            Some(a) => (level / a).floor_i64().unwrap_or(0).max(0) as usize,
        }
    }

    /// Degrees beyond which δ cannot receive contributions.
    pub fn finiteness_bound(&self, d: &[i64]) -> usize {
        Self::degree_for_level(&self.a, &self.level(d))
    }

    fn l_prime_character(&self, d: &[i64], cache: &mut CharacterCache) -> Result<DispChar> {
        let c = cache.get(&self.l_prime_datum, &from_disp(&self.base, d))?;
        c.iter().map(|(w, m)| Ok((to_disp(&self.base, w)?, *m as i64))).collect()
    }
}

fn assumptions(spec: &VermaSpec) -> Vec<String> {
    let mut v = vec!["identity of characters in the Grothendieck group of O^{p'}".to_string()];
    if spec.is_generic() {
        v.insert(0, "λ = λ₀ + c with c central in l and generic".into());
        v.push("direct sum: the δ + ρ' lie in distinct W'-orbits for generic c".into());
    }
    v
}

/// Per-degree l′-decomposition of F_λ|_{l′} ⊗ S^k(u₋ ∩ g^{−τ}), k ≤ n.
pub fn degree_decompositions(setup: &BranchSetup, n: usize, exec: Exec) -> Result<Vec<Vec<(Disp, u64)>>> {
    let dim = setup.base.len();
    let powers = sym_powers(&setup.u_minus_anti, dim, n);
    let per_degree = exec.map(&powers, |s| -> Result<Vec<(Disp, u64)>> {
        let prod = tensor(&setup.finite_part, s);
        let chr: BTreeMap<Weight, i64> = prod.iter().map(|(d, m)| (from_disp(&setup.base, d), *m)).collect();
        let mut cache = CharacterCache::new();
        decompose_character(&chr, &setup.l_prime_datum, &mut cache)?
            .into_iter()
            .map(|(w, m)| Ok((to_disp(&setup.base, &w)?, m)))
            .collect()
    });
    per_degree.into_iter().collect()
}

pub fn branch_multiplicities(spec: &VermaSpec, pair: &SymmetricPair, n: usize, exec: Exec) -> Result<BranchingTable> {
    let setup = BranchSetup::new(spec, pair)?;
    branch_with_setup(spec, &setup, n, exec)
}

pub fn branch_with_setup(spec: &VermaSpec, setup: &BranchSetup, n: usize, exec: Exec) -> Result<BranchingTable> {
    let mut merged: BTreeMap<Disp, (u64, usize)> = BTreeMap::new();
    for (k, parts) in degree_decompositions(setup, n, exec)?.into_iter().enumerate() {
        for (d, m) in parts {
            let e = merged.entry(d).or_insert((0, k));
            e.0 += m;
        }
    }
    let mut table = BranchingTable {
        base_offset: setup.base.clone(),
        entries: merged
            .into_iter()
            .map(|(displacement, (multiplicity, first_degree))| BranchEntry { displacement, multiplicity, first_degree })
            .collect(),
        degree_bound: n,
        genericity_assumptions: assumptions(spec),
    };
    table.canonicalize();
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    pub level: Rational,
    pub table_degree: usize,
    /// Number of distinct weights on each side.
    pub lhs_weights: usize,
    pub rhs_weights: usize,
}

/// Compares ch M_p^g(λ)|_{j′} with Σ m(δ;λ) ch M_{p′}^{g′}(δ), both truncated at
/// ad(H)-level ≤ L.
pub fn verify_character_identity(spec: &VermaSpec, pair: &SymmetricPair, level: u64, exec: Exec) -> Result<IdentityReport> {
    let setup = BranchSetup::new(spec, pair)?;
    let lv = Rational::from_int(level as i64);
    let n = BranchSetup::degree_for_level(&setup.a, &lv);
    let table = branch_with_setup(spec, &setup, n, exec)?;
    verify_with_table(&setup, &table, level)
}

pub fn verify_with_table(setup: &BranchSetup, table: &BranchingTable, level: u64) -> Result<IdentityReport> {
    let lv = Rational::from_int(level as i64);
    let dim = setup.base.len();
    let truncate = |c: &mut DispChar| c.retain(|d, m| *m != 0 && setup.level(d) <= lv);

    let a_full = setup.min_level(&setup.u_minus)?;
    let k_full = BranchSetup::degree_for_level(&a_full, &lv);
    let mut lhs: DispChar = BTreeMap::new();
    for s in sym_powers(&setup.u_minus, dim, k_full) {
        for (d, m) in tensor(&setup.finite_part, &s) {
            *lhs.entry(d).or_insert(0) += m;
        }
    }
    truncate(&mut lhs);

    let a_fixed = setup.min_level(&setup.u_minus_fixed)?;
    let k_fixed = BranchSetup::degree_for_level(&a_fixed, &lv);
    let mut s_fixed: DispChar = BTreeMap::new();
    for s in sym_powers(&setup.u_minus_fixed, dim, k_fixed) {
        for (d, m) in s {
            *s_fixed.entry(d).or_insert(0) += m;
        }
    }
    truncate(&mut s_fixed);
    let mut cache = CharacterCache::new();
    let mut rhs: DispChar = BTreeMap::new();
    for e in &table.entries {
        if setup.level(&e.displacement) > lv {
            continue;
        }
        let f = setup.l_prime_character(&e.displacement, &mut cache)?;
        for (d, m) in tensor(&f, &s_fixed) {
            *rhs.entry(d).or_insert(0) += m * e.multiplicity as i64;
        }
    }
    truncate(&mut rhs);
    Ok(IdentityReport {
        holds: lhs == rhs,
        level: lv,
        table_degree: table.degree_bound,
        lhs_weights: lhs.len(),
        rhs_weights: rhs.len(),
    })
}
