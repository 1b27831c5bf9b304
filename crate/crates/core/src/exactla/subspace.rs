use super::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of ℚ^d held as a reduced-row-echelon basis.
///
/// The RREF basis is canonical, so structural equality is subspace equality
/// and the coordinates of a member vector are read off at the pivot columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Row-reduces `rows` in place to RREF and returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Rational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for c in col..width {
                if pivot_row[c].is_zero() {
                    continue;
                }
                let t = &pivot_row[c] * &f;
                other[c] = &other[c] - &t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space {x : A x = 0} of a `rows × width` matrix.
pub fn null_space(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, width);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for (row, &p) in a.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Some solution `c` of Σ c_i vectors[i] = target, if one exists.
pub fn solve_combination(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = vectors.len();
    let d = target.len();
    // augmented system: columns are the vectors, last column is the target
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut sol = vec![Rational::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        sol[p] = row[k].clone();
    }
    Some(sol)
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, rows, pivots: (0..ambient_dim).collect() }
    }

    /// Echelonized span of `vectors`. Empty input gives the zero subspace.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Result<Self> {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        let pivots = rref(&mut rows, ambient_dim);
        Ok(Subspace { ambient_dim, rows, pivots })
    }

    /// Spans a non-empty list of equal-length vectors, inferring the ambient dimension.
    pub fn echelon_span(vectors: &[Vec<Rational>]) -> Result<Self> {
        let d = vectors.first().map_or(0, Vec::len);
        Self::span(d, vectors.iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(c * y);
                }
            }
        }
        residual.iter().all(Rational::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Self::span(self.ambient_dim, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Linear equations cutting out the subspace: `v ∈ self` iff every
    /// returned functional vanishes on `v`.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut f = vec![Rational::zero(); self.ambient_dim];
                f[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        f[p] = -&row[free];
                    }
                }
                f
            })
            .collect()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let (small, big) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let eqs = big.annihilator();
        if eqs.is_empty() {
            return Ok(small.clone());
        }
        // constraints on coefficients c of small's basis
        let m: Vec<Vec<Rational>> = eqs
            .iter()
            .map(|f| small.rows.iter().map(|row| dot(f, row)).collect())
            .collect();
        let kernel = null_space(&m, small.dim());
        let vectors = kernel.into_iter().map(|c| {
            let mut v = vec![Rational::zero(); small.ambient_dim];
            for (ci, row) in c.iter().zip(&small.rows) {
                if ci.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x + &(ci * y);
                    }
                }
            }
            v
        });
        Subspace::span(small.ambient_dim, vectors)
    }

    /// Members of the subspace whose coordinates vanish outside `support`.
    pub fn restrict_to_coordinates(&self, support: &[usize]) -> Result<Subspace> {
        let mut mask = vec![false; self.ambient_dim];
        for &s in support {
            mask[s] = true;
        }
        let outside: Vec<usize> = (0..self.ambient_dim).filter(|&i| !mask[i]).collect();
        let m: Vec<Vec<Rational>> =
            outside.iter().map(|&i| self.rows.iter().map(|row| row[i].clone()).collect()).collect();
        let kernel = null_space(&m, self.dim());
        let vectors = kernel.into_iter().map(|c| combine(&c, &self.rows, self.ambient_dim));
        Subspace::span(self.ambient_dim, vectors)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

/// Σ coeffs[i] · vectors[i].
pub fn combine(coeffs: &[Rational], vectors: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (c, row) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(row) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn span_examples() {
        let s = Subspace::echelon_span(&[v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 0])]);
        let t = Subspace::echelon_span(&[v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(Subspace::span(3, vec![]).unwrap().dim(), 0);
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::echelon_span(&[v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 7, 3]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(combine(&c, s.basis(), 3), w);
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::echelon_span(&[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::echelon_span(&[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Subspace::echelon_span(&[v(&[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
    }

    #[test]
    fn restrict_to_support() {
        let s = Subspace::echelon_span(&[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let r = s.restrict_to_coordinates(&[2]).unwrap();
        assert_eq!(r, Subspace::echelon_span(&[v(&[0, 0, 1])]).unwrap());
    }

    #[test]
    fn solve_in_span() {
        let sol = solve_combination(&[v(&[1, 0]), v(&[1, 1])], &v(&[3, 2])).unwrap();
        assert_eq!(sol, v(&[1, 2]));
        assert!(solve_combination(&[v(&[1, 0])], &v(&[0, 1])).is_none());
    }
}
