use std::collections::BTreeMap;

use super::matrix::{bracket, Matrix};
use super::rational::Rational;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A Lie subalgebra of gl_n given as a subspace of ℚ^{n²}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLieAlgebra {
    pub n: usize,
    pub space: Subspace,
    /// Dimension of the scalar center (1 for gl_n, 0 otherwise).
    pub scalar_center: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub bracket_closed: bool,
    pub nilpotent: bool,
    pub lcs_length: usize,
}

pub fn to_matrix(n: usize, v: &[Rational]) -> Matrix {
    Matrix::from_vector(n, v).expect("vector of length n²")
}

impl MatrixLieAlgebra {
    pub fn new(n: usize, space: Subspace, scalar_center: bool) -> Self {
        MatrixLieAlgebra { n, space, scalar_center }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space.basis().iter().map(|v| to_matrix(self.n, v)).collect()
    }

    pub fn contains(&self, z: &Matrix) -> bool {
        z.dim() == self.n && self.space.contains(z.as_vector())
    }
}

/// Bracket-closedness and lower-central-series test for a subspace `s` of gl_n.
pub fn nilpotent_subalgebra_test(s: &Subspace, n: usize) -> NilpotencyReport {
    let basis: Vec<Matrix> = s.basis().iter().map(|v| to_matrix(n, v)).collect();
    let mut closed = true;
    'outer: for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            let z = bracket(x, y).expect("same dimension");
            if !s.contains(z.as_vector()) {
                closed = false;
                break 'outer;
            }
        }
    }
    if !closed {
        return NilpotencyReport { bracket_closed: false, nilpotent: false, lcs_length: 0 };
    }
    if s.is_zero() {
        return NilpotencyReport { bracket_closed: true, nilpotent: true, lcs_length: 0 };
    }
    let mut current = basis.clone();
    let mut steps = 0;
    let mut last_dim = s.dim();
    while steps <= s.dim() {
        let products = basis.iter().flat_map(|x| {
            current.iter().map(move |y| bracket(x, y).expect("same dimension").into_vector())
        });
        let next = Subspace::span(n * n, products).expect("ambient n²");
        steps += 1;
        if next.is_zero() {
            return NilpotencyReport { bracket_closed: true, nilpotent: true, lcs_length: steps };
        }
        if next.dim() == last_dim {
            break;
        }
        last_dim = next.dim();
        current = next.basis().iter().map(|v| to_matrix(n, v)).collect();
    }
    NilpotencyReport { bracket_closed: true, nilpotent: false, lcs_length: steps }
}

/// Nilpotency of ad(Z) on `alg`, from the matrix of ad(Z) in echelon coordinates.
pub fn ad_nilpotent(z: &Matrix, alg: &MatrixLieAlgebra) -> Result<bool> {
    let d = alg.dim();
    let mut cols = Vec::with_capacity(d);
    for b in alg.basis_matrices() {
        let img = bracket(z, &b)?;
        let c = alg.space.coordinates(img.as_vector()).ok_or(Error::NotInAlgebra)?;
        cols.push(c);
    }
    let mut ad = Matrix::zero(d);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            ad.set(i, j, x);
        }
    }
    Ok(ad.is_nilpotent())
}

/// Same verdict as [`ad_nilpotent`] for algebras whose center is zero or the
/// scalars: ad(Z) is nilpotent iff Z minus its scalar part is a nilpotent matrix.
pub fn ad_nilpotent_fast(z: &Matrix, alg: &MatrixLieAlgebra) -> bool {
    let n = z.dim();
    let w = if alg.scalar_center {
        let c = &z.trace() / &Rational::from_int(n as i64);
        z - &Matrix::identity(n).scale(&c)
    } else {
        z.clone()
    };
    w.is_nilpotent()
}

/// Weight of the matrix unit E_ab under ad of a diagonal family.
fn unit_weight(family: &[Matrix], a: usize, b: usize) -> Vec<Rational> {
    family.iter().map(|d| d.get(a, a) - d.get(b, b)).collect()
}

/// Simultaneous eigenspace decomposition of `v` (inside gl_n) under ad of a
/// commuting diagonal family. Weights are returned in ascending order.
pub fn weight_decomposition(family: &[Matrix], v: &Subspace) -> Result<Vec<(Vec<Rational>, Subspace)>> {
    let Some(first) = family.first() else {
        return Ok(vec![(Vec::new(), v.clone())]);
    };
    let n = first.dim();
    if v.ambient_dim() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: v.ambient_dim() });
    }
    if family.iter().any(|d| d.dim() != n || !d.is_diagonal()) {
        return Err(Error::NonDiagonalFamily);
    }
    // column-major index b*n + a holds E_ab
    let weights: Vec<Vec<Rational>> =
        (0..n * n).map(|idx| unit_weight(family, idx % n, idx / n)).collect();
    let mut groups: BTreeMap<Vec<Rational>, Vec<Vec<Rational>>> = BTreeMap::new();
    for row in v.basis() {
        let mut parts: BTreeMap<&Vec<Rational>, Vec<Rational>> = BTreeMap::new();
        for (idx, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            parts.entry(&weights[idx]).or_insert_with(|| vec![Rational::zero(); n * n])[idx] = x.clone();
        }
        for (w, p) in parts {
            groups.entry(w.clone()).or_default().push(p);
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    let mut total = 0;
    for (w, vecs) in groups {
        let s = Subspace::span(n * n, vecs)?;
        total += s.dim();
        out.push((w, s));
    }
    if total != v.dim() {
        return Err(Error::NotSemisimple(format!(
            "weight spaces have total dimension {total}, subspace has dimension {}",
            v.dim()
        )));
    }
    Ok(out)
}

/// Checks the Jacobi identity on one triple.
pub fn jacobi_holds(x: &Matrix, y: &Matrix, z: &Matrix) -> bool {
    let a = bracket(x, &bracket(y, z).unwrap()).unwrap();
    let b = bracket(y, &bracket(z, x).unwrap()).unwrap();
    let c = bracket(z, &bracket(x, y).unwrap()).unwrap();
    (&(&a + &b) + &c).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn span(n: usize, ms: &[Matrix]) -> Subspace {
        Subspace::span(n * n, ms.iter().map(|m| m.as_vector().to_vec())).unwrap()
    }

    fn sl2() -> MatrixLieAlgebra {
        let h = Matrix::diagonal(&[r(1), r(-1)]);
        MatrixLieAlgebra::new(2, span(2, &[Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0), h]), false)
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent() {
        let s = span(3, &[Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2), Matrix::unit(3, 0, 2)]);
        let rep = nilpotent_subalgebra_test(&s, 3);
        assert_eq!(rep, NilpotencyReport { bracket_closed: true, nilpotent: true, lcs_length: 2 });
    }

    #[test]
    fn e_and_f_not_closed() {
        let s = span(2, &[Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)]);
        assert!(!nilpotent_subalgebra_test(&s, 2).bracket_closed);
    }

    #[test]
    fn borel_is_closed_not_nilpotent() {
        let s = span(2, &[Matrix::unit(2, 0, 1), Matrix::diagonal(&[r(1), r(-1)])]);
        let rep = nilpotent_subalgebra_test(&s, 2);
        assert!(rep.bracket_closed && !rep.nilpotent);
    }

    #[test]
    fn ad_nilpotency_examples() {
        let g = sl2();
        assert!(ad_nilpotent(&Matrix::unit(2, 0, 1), &g).unwrap());
        assert!(!ad_nilpotent(&Matrix::diagonal(&[r(1), r(-1)]), &g).unwrap());
        let x = &Matrix::unit(2, 0, 1) + &Matrix::unit(2, 1, 0);
        assert!(!ad_nilpotent(&x, &g).unwrap());
        assert!(!ad_nilpotent_fast(&x, &g));
        assert!(ad_nilpotent_fast(&Matrix::unit(2, 0, 1), &g));
    }

    #[test]
    fn gl_scalar_part_is_ignored() {
        let mut all = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                all.push(Matrix::unit(2, i, j));
            }
        }
        let gl2 = MatrixLieAlgebra::new(2, span(2, &all), true);
        let z = &Matrix::identity(2) + &Matrix::unit(2, 0, 1);
        assert!(ad_nilpotent(&z, &gl2).unwrap());
        assert!(ad_nilpotent_fast(&z, &gl2));
    }

    #[test]
    fn sl2_weights() {
        let g = sl2();
        let dec = weight_decomposition(&[Matrix::diagonal(&[r(1), r(-1)])], &g.space).unwrap();
        let ws: Vec<(i64, usize)> = dec.iter().map(|(w, s)| (w[0].to_i64().unwrap(), s.dim())).collect();
        assert_eq!(ws, vec![(-2, 1), (0, 1), (2, 1)]);
    }

    #[test]
    fn sl3_weights() {
        let mut ms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    ms.push(Matrix::unit(3, i, j));
                }
            }
        }
        ms.push(Matrix::diagonal(&[r(1), r(-1), r(0)]));
        ms.push(Matrix::diagonal(&[r(0), r(1), r(-1)]));
        let v = span(3, &ms);
        let fam = [Matrix::diagonal(&[r(1), r(-1), r(0)]), Matrix::diagonal(&[r(0), r(1), r(-1)])];
        let dec = weight_decomposition(&fam, &v).unwrap();
        assert_eq!(dec.len(), 7);
        let zero = dec.iter().find(|(w, _)| w.iter().all(Rational::is_zero)).unwrap();
        assert_eq!(zero.1.dim(), 2);
    }

    #[test]
    fn non_stable_subspace_is_rejected() {
        let x = &Matrix::unit(2, 0, 1) + &Matrix::unit(2, 1, 0);
        let v = span(2, &[x]);
        let fam = [Matrix::diagonal(&[r(1), r(-1)])];
        assert!(matches!(weight_decomposition(&fam, &v), Err(Error::NotSemisimple(_))));
        assert!(matches!(weight_decomposition(&[Matrix::unit(2, 0, 1)], &v), Err(Error::NonDiagonalFamily)));
    }
}
