use std::fmt;

use crate::exactla::subspace::dot;
use crate::exactla::Rational;

/// Rational ε-coordinates of a functional on a Cartan subalgebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(d: usize) -> Self {
        Weight(vec![Rational::zero(); d])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Weight(xs.iter().map(|&x| Rational::from_int(x)).collect())
    }

    /// Unit vector e_i.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut w = Self::zero(d);
        w.0[i] = Rational::one();
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_scaled(&self, c: &Rational, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + &(c * b)).collect())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Rational::to_i64).collect()
    }

    pub fn from_disp(d: &[i64]) -> Self {
        Self::from_ints(d)
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> usize {
        self.0.iter().position(|x| !x.is_zero()).unwrap_or(self.0.len())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
