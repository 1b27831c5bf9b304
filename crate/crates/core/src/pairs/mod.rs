//! Catalog of symmetric pairs (g, g^τ) with τ realized as conjugation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactla::subspace::solve_combination;
use crate::exactla::{Matrix, Rational, Subspace};
use crate::liealg::{
    build_classical, build_double, build_gl, weight_decomposition_datum, AlgebraRealization, ClassicalType,
    Family, RootDatum, Weight, WeylElement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairSpec {
    /// (gl_{n+1}, gl_1 ⊕ gl_n), τ = Ad(diag with −1 in slot l), 1 ≤ l ≤ n+1.
    GlDownGl { n: usize, l: usize },
    /// (sl_{p+q}, s(gl_p ⊕ gl_q)).
    SlSGlGl { p: usize, q: usize },
    /// (so_{m+1}, so_m), m ≥ 4.
    SoDownSo { m: usize },
    /// (sp_{2n}, gl_n), n ≥ 2.
    SpDownGl { n: usize },
    /// (g ⊕ g, diag g).
    GroupCase(ClassicalType),
}

impl PairSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidPair(format!("{self}: {m}")));
        match *self {
            PairSpec::GlDownGl { n, l } if n < 1 || l < 1 || l > n + 1 => bad("need n ≥ 1 and 1 ≤ l ≤ n+1"),
            PairSpec::SlSGlGl { p, q } if p < 1 || q < 1 => bad("need p, q ≥ 1"),
            PairSpec::SoDownSo { m } if m < 4 => bad("need m ≥ 4"),
            PairSpec::SpDownGl { n } if n < 2 => bad("need n ≥ 2"),
            PairSpec::GroupCase(t) => ClassicalType::new(t.family, t.rank).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Rank (Cartan dimension) of g.
    pub fn rank(&self) -> usize {
        match *self {
            PairSpec::GlDownGl { n, .. } => n + 1,
            PairSpec::SlSGlGl { p, q } => p + q - 1,
            PairSpec::SoDownSo { m } => (m + 1) / 2,
            PairSpec::SpDownGl { n } => n,
            PairSpec::GroupCase(t) => 2 * t.rank,
        }
    }

    /// Whether g is simple.
    pub fn simple_g(&self) -> bool {
        matches!(self, PairSpec::SlSGlGl { .. } | PairSpec::SoDownSo { .. } | PairSpec::SpDownGl { .. })
    }

    /// Catalog entries whose g has rank ≤ `max_rank` (p ≤ q for SL_S_GLGL).
    pub fn catalog(max_rank: usize) -> Vec<PairSpec> {
        let mut out = Vec::new();
        for n in 1..max_rank {
            for l in 1..=n + 1 {
                out.push(PairSpec::GlDownGl { n, l });
            }
        }
        for s in 2..=max_rank + 1 {
            for p in 1..=s / 2 {
                out.push(PairSpec::SlSGlGl { p, q: s - p });
            }
        }
        for m in 4..=2 * max_rank {
            if (m + 1) / 2 <= max_rank {
                out.push(PairSpec::SoDownSo { m });
            }
        }
        for n in 2..=max_rank {
            out.push(PairSpec::SpDownGl { n });
        }
        for (fam, min) in [(Family::A, 1), (Family::B, 2), (Family::C, 2), (Family::D, 3)] {
            for r in min..=max_rank / 2 {
                out.push(PairSpec::GroupCase(ClassicalType { family: fam, rank: r }));
            }
        }
        out
    }

    pub fn catalog_ids() -> &'static str {
        "gl_down_gl:n=N,l=L | sl_s_glgl:p=P,q=Q | so_down_so:m=M | sp_down_gl:n=N | group_case:type=A1"
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairSpec::GlDownGl { n, l } => write!(f, "gl_down_gl:n={n},l={l}"),
            PairSpec::SlSGlGl { p, q } => write!(f, "sl_s_glgl:p={p},q={q}"),
            PairSpec::SoDownSo { m } => write!(f, "so_down_so:m={m}"),
            PairSpec::SpDownGl { n } => write!(f, "sp_down_gl:n={n}"),
            PairSpec::GroupCase(t) => write!(f, "group_case:type={t}"),
        }
    }
}

impl FromStr for PairSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::InvalidPair(format!("unknown pair id '{s}'; catalog: {}", PairSpec::catalog_ids()));
        let (name, params) = s.trim().split_once(':').ok_or_else(unknown)?;
        let mut kv = std::collections::BTreeMap::new();
        for part in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(unknown)?;
            kv.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        let num = |k: &str| -> Result<usize> {
            kv.get(k).and_then(|v| v.parse().ok()).ok_or_else(|| Error::InvalidPair(format!("'{s}': missing or bad '{k}'")))
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "gl_down_gl" => PairSpec::GlDownGl { n: num("n")?, l: num("l")? },
            "sl_s_glgl" => PairSpec::SlSGlGl { p: num("p")?, q: num("q")? },
            "so_down_so" => PairSpec::SoDownSo { m: num("m")? },
            "sp_down_gl" => PairSpec::SpDownGl { n: num("n")? },
            "group_case" => PairSpec::GroupCase(
                kv.get("type").ok_or_else(unknown)?.parse().map_err(|e: Error| Error::InvalidPair(e.to_string()))?,
            ),
            _ => return Err(unknown()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// τ(Z) = A Z A⁻¹.
#[derive(Clone, Debug)]
pub struct Involution {
    pub conjugator: Matrix,
    pub conjugator_inv: Matrix,
    pub is_inner: bool,
}

impl Involution {
    pub fn new(a: Matrix, is_inner: bool) -> Result<Self> {
        let inv = a.inverse()?;
        Ok(Involution { conjugator: a, conjugator_inv: inv, is_inner })
    }

    pub fn apply(&self, z: &Matrix) -> Matrix {
        &(&self.conjugator * z) * &self.conjugator_inv
    }

    pub fn apply_vec(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.conjugator.dim();
        self.apply(&Matrix::from_vector(n, v).expect("n² vector")).into_vector()
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricPair {
    pub spec: PairSpec,
    pub g: AlgebraRealization,
    pub tau: Involution,
    pub fixed: Subspace,
    pub minus: Subspace,
    /// Frame f'_k of j^τ: the k-th restricted coordinate of μ is μ(f'_k).
    pub j_tau_basis: Vec<Matrix>,
    /// ε-coordinates (in g) of each f'_k.
    pub j_tau_eps: Vec<Weight>,
    pub restricted_datum: RootDatum,
    pub label: String,
}

fn diag_signs(n: usize, minus: &[usize]) -> Matrix {
    let mut d = vec![Rational::one(); n];
    for &i in minus {
        d[i] = Rational::from_int(-1);
    }
    Matrix::diagonal(&d)
}

pub fn build_pair(spec: PairSpec) -> Result<SymmetricPair> {
    spec.validate()?;
    let (g, a, inner) = match spec {
        PairSpec::GlDownGl { n, l } => (build_gl(n + 1)?, diag_signs(n + 1, &[l - 1]), true),
        PairSpec::SlSGlGl { p, q } => {
            let t = ClassicalType::new(Family::A, p + q - 1)?;
            (build_classical(t)?, diag_signs(p + q, &(p..p + q).collect::<Vec<_>>()), true)
        }
        PairSpec::SoDownSo { m } => {
            let size = m + 1;
            let t = if size % 2 == 1 {
                ClassicalType::new(Family::B, size / 2)?
            } else {
                ClassicalType::new(Family::D, size / 2)?
            };
            let g = build_classical(t)?;
            if size % 2 == 1 {
                (g, diag_signs(size, &[size / 2]), true)
            } else {
                let mut a = Matrix::identity(size);
                let (i, j) = (size / 2 - 1, size / 2);
                a.set(i, i, Rational::zero());
                a.set(j, j, Rational::zero());
                a.set(i, j, Rational::one());
                a.set(j, i, Rational::one());
                (g, a, false)
            }
        }
        PairSpec::SpDownGl { n } => {
            let t = ClassicalType::new(Family::C, n)?;
            (build_classical(t)?, diag_signs(2 * n, &(n..2 * n).collect::<Vec<_>>()), true)
        }
        PairSpec::GroupCase(t) => {
            let g = build_double(t)?;
            let h = g.matrix_dim / 2;
            let mut a = Matrix::zero(2 * h);
            for r in 0..h {
                a.set(r, h + r, Rational::one());
                a.set(h + r, r, Rational::one());
            }
            (g, a, false)
        }
    };
    let tau = Involution::new(a, inner)?;
    let n2 = g.matrix_dim * g.matrix_dim;
    let half = Rational::new(1, 2);
    let mut plus_vecs = Vec::new();
    let mut minus_vecs = Vec::new();
    for b in &g.basis {
        let tb = tau.apply(b);
        plus_vecs.push((&(b + &tb)).scale(&half).into_vector());
        minus_vecs.push((&(b - &tb)).scale(&half).into_vector());
    }
    let fixed = Subspace::span(n2, plus_vecs)?;
    let minus = Subspace::span(n2, minus_vecs)?;
    if fixed.dim() + minus.dim() != g.dim() {
        return Err(Error::Internal(format!("{spec}: eigenspaces do not split g")));
    }

    let d = g.coord_dim();
    let (j_tau_basis, j_tau_eps): (Vec<Matrix>, Vec<Weight>) = match spec {
        PairSpec::SoDownSo { m } if (m + 1) % 2 == 0 => {
            let k = d - 1;
            (g.frame[..k].to_vec(), (0..k).map(|i| Weight::unit(d, i)).collect())
        }
        PairSpec::GroupCase(_) => {
            let h = d / 2;
            (
                (0..h).map(|i| &g.frame[i] + &g.frame[h + i]).collect(),
                (0..h).map(|i| Weight::unit(d, i).add(&Weight::unit(d, h + i))).collect(),
            )
        }
        _ => (g.frame.clone(), (0..d).map(|i| Weight::unit(d, i)).collect()),
    };
    for f in &j_tau_basis {
        if tau.apply(f) != *f {
            return Err(Error::Internal(format!("{spec}: j^τ frame not fixed by τ")));
        }
    }

    let mut pair = SymmetricPair {
        spec,
        label: spec.to_string(),
        g,
        tau,
        fixed,
        minus,
        j_tau_basis,
        j_tau_eps,
        restricted_datum: RootDatum::new(0, vec![], Weight::zero(0), Default::default())?,
    };
    let h_reg = pair.g.cartan_element(&pair.g.datum.regular);
    let reg = pair.restricted_coords(&pair.fix_cartan(&h_reg))?;
    let rank = pair.rank_fixed();
    pair.restricted_datum = weight_decomposition_datum(&pair.j_tau_basis, &pair.fixed, rank, reg)?;
    Ok(pair)
}

impl SymmetricPair {
    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_fixed(&self) -> usize {
        self.fixed.dim()
    }

    /// dim j^τ (the frame of j^τ may be linearly dependent, as for sl).
    pub fn rank_fixed(&self) -> usize {
        let n = self.g.matrix_dim;
        Subspace::span(n * n, self.j_tau_basis.iter().map(|m| m.as_vector().to_vec())).expect("n²").dim()
    }

    /// Restriction of a weight of j to j^τ, in ε'-coordinates.
    pub fn restrict(&self, mu: &Weight) -> Weight {
        Weight(self.j_tau_eps.iter().map(|f| mu.dot(f)).collect())
    }

    /// (H + τH)/2.
    pub fn fix_cartan(&self, h: &Matrix) -> Matrix {
        (&(h + &self.tau.apply(h))).scale(&Rational::new(1, 2))
    }

    /// Coordinates h' of H ∈ j^τ in the frame of j^τ.
    pub fn restricted_coords(&self, h: &Matrix) -> Result<Weight> {
        let eps = self.g.epsilon(h)?;
        let vecs: Vec<Vec<Rational>> = self.j_tau_eps.iter().map(|w| w.0.clone()).collect();
        solve_combination(&vecs, &eps.0).map(Weight).ok_or(Error::NotInCartan)
    }

    /// τα for a root α of g.
    pub fn tau_root(&self, alpha: &Weight) -> Option<Weight> {
        let x = self.g.root_vector(alpha)?;
        self.g.weight_of(&self.tau.apply(&x))
    }

    /// Lifts of the simple reflections of W(g^τ, j^τ) to W(g): s_α when
    /// τα = α, otherwise s_α s_{τα} with α ⊥ τα; here α|_{j^τ} is the simple
    /// restricted root.
    pub fn census_generators(&self) -> Result<Vec<WeylElement>> {
        let mut gens = Vec::new();
        for beta in &self.restricted_datum.simple_roots {
            let alpha = self
                .g
                .datum
                .roots
                .iter()
                .find(|a| self.restrict(a) == *beta)
                .ok_or_else(|| Error::Internal(format!("no root of g restricts to {beta}")))?;
            let ta = self.tau_root(alpha).ok_or_else(|| Error::Internal("τ does not permute roots".into()))?;
            let s = WeylElement::reflection(alpha)?;
            if ta == *alpha {
                gens.push(s);
            } else if alpha.dot(&ta).is_zero() {
                gens.push(s.compose(&WeylElement::reflection(&ta)?));
            } else {
                return Err(Error::Unsupported(format!("lift of {beta}: α and τα not orthogonal")));
            }
        }
        Ok(gens)
    }
}

/// Splits V into V ∩ g^τ, V ∩ g^{−τ} and pr_τ(V) = {(Z+τZ)/2}.
pub fn tau_split(pair: &SymmetricPair, v: &Subspace) -> Result<(Subspace, Subspace, Subspace)> {
    let plus = v.intersection(&pair.fixed)?;
    let minus = v.intersection(&pair.minus)?;
    let half = Rational::new(1, 2);
    let pr_vecs = v.basis().iter().map(|b| {
        let tb = pair.tau.apply_vec(b);
        b.iter().zip(&tb).map(|(x, y)| &(x + y) * &half).collect::<Vec<Rational>>()
    });
    let pr = Subspace::span(v.ambient_dim(), pr_vecs)?;
    Ok((plus, minus, pr))
}
