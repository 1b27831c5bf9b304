use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::roots::RootDatum;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactla::{weight_decomposition, Matrix, MatrixLieAlgebra, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalType {
    pub family: Family,
    pub rank: usize,
}

impl ClassicalType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(Error::Unsupported(format!("{family:?}{rank}: rank must be at least {min}")));
        }
        Ok(ClassicalType { family, rank })
    }

    /// Size of the defining matrices.
    pub fn matrix_dim(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => 2 * n * n + n,
            Family::D => 2 * n * n - n,
        }
    }

    pub fn weyl_order(&self) -> usize {
        let n = self.rank;
        let fact: usize = (1..=n).product();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B | Family::C => fact << n,
            Family::D => fact << (n - 1),
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for ClassicalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(Error::InvalidInput(format!("unknown classical type '{s}'"))),
        };
        let rank: usize =
            chars.as_str().parse().map_err(|_| Error::InvalidInput(format!("bad rank in '{s}'")))?;
        ClassicalType::new(fam, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationKind {
    /// sl_{n+1}, so(2n+1), sp(2n), so(2n) with anti-diagonal forms.
    Special(ClassicalType),
    /// gl_size, with one-dimensional center.
    GeneralLinear(usize),
    /// g ⊕ g, block diagonal.
    Double(ClassicalType),
}

impl fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationKind::Special(t) => write!(f, "{t}"),
            RealizationKind::GeneralLinear(n) => write!(f, "gl{n}"),
            RealizationKind::Double(t) => write!(f, "{t}+{t}"),
        }
    }
}

/// A matrix realization with its diagonal Cartan.
///
/// `frame[i]` is the diagonal element F_i on which the i-th ε-coordinate of a
/// weight is evaluated; `eps_positions[i]` is the diagonal slot that reads off
/// the i-th coordinate of an element of the Cartan.
#[derive(Clone, Debug)]
pub struct AlgebraRealization {
    pub kind: RealizationKind,
    pub matrix_dim: usize,
    pub algebra: MatrixLieAlgebra,
    pub basis: Vec<Matrix>,
    pub cartan_basis: Vec<Matrix>,
    pub frame: Vec<Matrix>,
    pub eps_positions: Vec<usize>,
    pub bilinear_form: Option<Matrix>,
    pub datum: RootDatum,
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Anti-identity of size n.
pub fn anti_identity(n: usize) -> Matrix {
    let mut k = Matrix::zero(n);
    for i in 0..n {
        k.set(i, n - 1 - i, Rational::one());
    }
    k
}

/// Symplectic form [[0, K_n], [−K_n, 0]].
pub fn symplectic_form(n: usize) -> Matrix {
    let mut j = Matrix::zero(2 * n);
    for i in 0..n {
        j.set(i, 2 * n - 1 - i, r(1));
        j.set(n + i, n - 1 - i, r(-1));
    }
    j
}

fn orth_frame(big_n: usize, n: usize) -> Vec<Matrix> {
    (0..n)
        .map(|i| {
            let mut f = Matrix::zero(big_n);
            f.set(i, i, r(1));
            f.set(big_n - 1 - i, big_n - 1 - i, r(-1));
            f
        })
        .collect()
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.dim();
    let mut m = Matrix::zero(2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j).clone());
            m.set(n + i, n + j, b.get(i, j).clone());
        }
    }
    m
}

struct Parts {
    n: usize,
    basis: Vec<Matrix>,
    cartan: Vec<Matrix>,
    frame: Vec<Matrix>,
    eps: Vec<usize>,
    form: Option<Matrix>,
    regular: Vec<i64>,
}

fn special_parts(t: ClassicalType) -> Parts {
    let n = t.rank;
    let big = t.matrix_dim();
    match t.family {
        Family::A => {
            let mut basis = Vec::new();
            for i in 0..big {
                for j in 0..big {
                    if i != j {
                        basis.push(Matrix::unit(big, i, j));
                    }
                }
            }
            let cartan: Vec<Matrix> = (0..n)
                .map(|i| {
                    let mut h = Matrix::zero(big);
                    h.set(i, i, r(1));
                    h.set(i + 1, i + 1, r(-1));
                    h
                })
                .collect();
            basis.extend(cartan.iter().cloned());
            let frame = (0..big)
                .map(|i| {
                    let mut f = Matrix::identity(big).scale(&Rational::new(-1, big as i64));
                    f.set(i, i, Rational::new(big as i64 - 1, big as i64));
                    f
                })
                .collect();
            Parts {
                n: big,
                basis,
                cartan,
                frame,
                eps: (0..big).collect(),
                form: None,
                regular: (1..=big as i64).rev().collect(),
            }
        }
        Family::B | Family::D => {
            let k = anti_identity(big);
            let mut basis = Vec::new();
            for i in 0..big {
                for j in i + 1..big {
                    let a = &Matrix::unit(big, i, j) - &Matrix::unit(big, j, i);
                    basis.push(&k * &a);
                }
            }
            let frame = orth_frame(big, n);
            Parts {
                n: big,
                basis,
                cartan: frame.clone(),
                frame,
                eps: (0..n).collect(),
                form: Some(k),
                regular: (1..=n as i64).rev().collect(),
            }
        }
        Family::C => {
            let jf = symplectic_form(n);
            let mut basis = Vec::new();
            for i in 0..big {
                for j in i..big {
                    let s = &Matrix::unit(big, i, j) + &Matrix::unit(big, j, i);
                    basis.push(&jf * &s);
                }
            }
            let frame = orth_frame(big, n);
            Parts {
                n: big,
                basis,
                cartan: frame.clone(),
                frame,
                eps: (0..n).collect(),
                form: Some(jf),
                regular: (1..=n as i64).rev().collect(),
            }
        }
    }
}

fn gl_parts(size: usize) -> Parts {
    let mut basis = Vec::new();
    for i in 0..size {
        for j in 0..size {
            basis.push(Matrix::unit(size, i, j));
        }
    }
    let frame: Vec<Matrix> = (0..size).map(|i| Matrix::unit(size, i, i)).collect();
    Parts {
        n: size,
        basis,
        cartan: frame.clone(),
        frame,
        eps: (0..size).collect(),
        form: None,
        regular: (1..=size as i64).rev().collect(),
    }
}

fn double_parts(p: Parts) -> Parts {
    let n = p.n;
    let z = Matrix::zero(n);
    let dbl = |v: &[Matrix]| -> Vec<Matrix> {
        v.iter().map(|x| block_diag(x, &z)).chain(v.iter().map(|x| block_diag(&z, x))).collect()
    };
    let mut eps = p.eps.clone();
    eps.extend(p.eps.iter().map(|e| e + n));
    let mut regular = p.regular.clone();
    regular.extend(p.regular.iter());
    Parts {
        n: 2 * n,
        basis: dbl(&p.basis),
        cartan: dbl(&p.cartan),
        frame: dbl(&p.frame),
        eps,
        form: p.form.as_ref().map(|f| block_diag(f, f)),
        regular,
    }
}

fn assemble(kind: RealizationKind, parts: Parts, expected_dim: usize) -> Result<AlgebraRealization> {
    let n = parts.n;
    let space = Subspace::span(n * n, parts.basis.iter().map(|b| b.as_vector().to_vec()))?;
    if space.dim() != expected_dim {
        return Err(Error::Internal(format!("{kind}: built dimension {} != {expected_dim}", space.dim())));
    }
    let scalar_center = matches!(kind, RealizationKind::GeneralLinear(_));
    let algebra = MatrixLieAlgebra::new(n, space, scalar_center);
    let regular = Weight::from_ints(&parts.regular);
    let datum = weight_decomposition_datum(&parts.frame, &algebra.space, parts.cartan.len(), regular)?;
    Ok(AlgebraRealization {
        kind,
        matrix_dim: n,
        algebra,
        basis: parts.basis,
        cartan_basis: parts.cartan,
        frame: parts.frame,
        eps_positions: parts.eps,
        bilinear_form: parts.form,
        datum,
    })
}

/// Root datum of an ad(frame)-stable subalgebra `space` whose zero weight
/// space must have dimension `rank` and whose root spaces must be lines.
pub fn weight_decomposition_datum(frame: &[Matrix], space: &Subspace, rank: usize, regular: Weight) -> Result<RootDatum> {
    let dec = weight_decomposition(frame, space)?;
    let mut spaces = BTreeMap::new();
    let mut roots = Vec::new();
    for (w, s) in dec {
        let w = Weight(w);
        if w.is_zero() {
            if s.dim() != rank {
                return Err(Error::Internal(format!("zero weight space has dim {} != rank {rank}", s.dim())));
            }
            continue;
        }
        if s.dim() != 1 {
            return Err(Error::Internal(format!("root space {w} has dim {}", s.dim())));
        }
        roots.push(w.clone());
        spaces.insert(w, s);
    }
    RootDatum::new(frame.len(), roots, regular, spaces)
}

/// Standard split realization of a classical simple Lie algebra.
pub fn build_classical(t: ClassicalType) -> Result<AlgebraRealization> {
    let t = ClassicalType::new(t.family, t.rank)?;
    assemble(RealizationKind::Special(t), special_parts(t), t.dim())
}

/// gl_size with diagonal Cartan.
pub fn build_gl(size: usize) -> Result<AlgebraRealization> {
    if size < 2 {
        return Err(Error::Unsupported("gl_n needs n ≥ 2".into()));
    }
    assemble(RealizationKind::GeneralLinear(size), gl_parts(size), size * size)
}

/// g ⊕ g, block diagonal, with the concatenated Cartan.
pub fn build_double(t: ClassicalType) -> Result<AlgebraRealization> {
    let t = ClassicalType::new(t.family, t.rank)?;
    assemble(RealizationKind::Double(t), double_parts(special_parts(t)), 2 * t.dim())
}

/// Spec-facing alias for [`AlgebraRealization::datum`].
pub fn root_datum(g: &AlgebraRealization) -> RootDatum {
    g.datum.clone()
}

impl AlgebraRealization {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.cartan_basis.len()
    }

    /// Number of ε-coordinates.
    pub fn coord_dim(&self) -> usize {
        self.frame.len()
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    /// ε-coordinates h of an element H = Σ h_i F_i of the Cartan.
    pub fn epsilon(&self, h: &Matrix) -> Result<Weight> {
        if h.dim() != self.matrix_dim || !h.is_diagonal() || !self.algebra.contains(h) {
            return Err(Error::NotInCartan);
        }
        Ok(Weight(self.eps_positions.iter().map(|&p| h.get(p, p).clone()).collect()))
    }

    /// Σ h_i F_i.
    pub fn cartan_element(&self, h: &Weight) -> Matrix {
        let mut m = Matrix::zero(self.matrix_dim);
        for (c, f) in h.0.iter().zip(&self.frame) {
            if !c.is_zero() {
                m = &m + &f.scale(c);
            }
        }
        m
    }

    /// Projects a weight onto the weight space of the algebra (sum-zero blocks
    /// for type A); other types are unchanged.
    pub fn normalize_weight(&self, w: &Weight) -> Weight {
        let center = |xs: &[Rational]| -> Vec<Rational> {
            let mean = &xs.iter().sum::<Rational>() / &r(xs.len() as i64);
            xs.iter().map(|x| x - &mean).collect()
        };
        match &self.kind {
            RealizationKind::Special(t) if t.family == Family::A => Weight(center(&w.0)),
            RealizationKind::Double(t) if t.family == Family::A => {
                let h = w.len() / 2;
                let mut v = center(&w.0[..h]);
                v.extend(center(&w.0[h..]));
                Weight(v)
            }
            _ => w.clone(),
        }
    }

    /// A nonzero vector of the root space g_α.
    pub fn root_vector(&self, alpha: &Weight) -> Option<Matrix> {
        self.datum
            .root_spaces
            .get(alpha)
            .map(|s| Matrix::from_vector(self.matrix_dim, &s.basis()[0]).expect("n² vector"))
    }

    /// Basis of the Cartan as a subspace.
    pub fn cartan_subspace(&self) -> Subspace {
        let n = self.matrix_dim;
        Subspace::span(n * n, self.cartan_basis.iter().map(|m| m.as_vector().to_vec())).expect("n²")
    }

    /// Weight of a root vector (or any ad-eigenvector of the frame).
    pub fn weight_of(&self, x: &Matrix) -> Option<Weight> {
        let n = self.matrix_dim;
        for j in 0..n {
            for i in 0..n {
                if !x.get(i, j).is_zero() {
                    return Some(Weight(self.frame.iter().map(|f| f.get(i, i) - f.get(j, j)).collect()));
                }
            }
        }
        None
    }
}
