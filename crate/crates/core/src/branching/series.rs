use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::liealg::Weight;

/// Integer displacement from a fixed base weight.
pub type Disp = Vec<i64>;

/// Signed multiset of displacements.
pub type DispChar = BTreeMap<Disp, i64>;

/// Truncated formal character on j′, graded by symmetric degree and stored as
/// displacements from `base_offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub base_offset: Weight,
    pub terms: BTreeMap<(usize, Disp), i64>,
    pub degree_bound: usize,
}

impl CharacterSeries {
    pub fn new(base_offset: Weight, degree_bound: usize) -> Self {
        CharacterSeries { base_offset, terms: BTreeMap::new(), degree_bound }
    }

    pub fn degree(&self, k: usize) -> DispChar {
        self.terms.iter().filter(|((d, _), _)| *d == k).map(|((_, w), m)| (w.clone(), *m)).collect()
    }

    pub fn add_degree(&mut self, k: usize, c: &DispChar) {
        for (w, m) in c {
            *self.terms.entry((k, w.clone())).or_insert(0) += m;
        }
        self.terms.retain(|_, m| *m != 0);
    }
}

pub fn disp_add(a: &[i64], b: &[i64]) -> Disp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn disp_scale(a: &[i64], k: i64) -> Disp {
    a.iter().map(|x| x * k).collect()
}

/// w − base, which must be integral.
pub fn to_disp(base: &Weight, w: &Weight) -> Result<Disp> {
    w.sub(base)
        .to_ints()
        .ok_or_else(|| Error::Internal(format!("{w} is not in the lattice through {base}")))
}

pub fn from_disp(base: &Weight, d: &[i64]) -> Weight {
    base.add(&Weight::from_disp(d))
}

/// ⟨d, h⟩.
pub fn pair_disp(d: &[i64], h: &Weight) -> Rational {
    d.iter().zip(h.coords()).filter(|(x, _)| **x != 0).map(|(x, y)| &Rational::from_int(*x) * y).sum()
}

/// Characters of S^0, …, S^n of a space with the given weight multiset,
/// adding one variable at a time: S_new[d] = S_old[d] + w·S_new[d−1].
pub fn sym_powers(weights: &[Disp], dim: usize, n: usize) -> Vec<DispChar> {
    let mut out: Vec<DispChar> = vec![BTreeMap::new(); n + 1];
    out[0].insert(vec![0; dim], 1);
    for w in weights {
        for d in 1..=n {
            let shifted: Vec<(Disp, i64)> = out[d - 1].iter().map(|(k, m)| (disp_add(k, w), *m)).collect();
            for (k, m) in shifted {
                *out[d].entry(k).or_insert(0) += m;
            }
        }
    }
    out
}

/// Character of S^k(V) for V with weight multiset `weights`.
pub fn sym_power_character(weights: &[Weight], k: usize) -> Result<BTreeMap<Weight, u64>> {
    let Some(first) = weights.first() else {
        return Ok(if k == 0 { BTreeMap::from([(Weight::zero(0), 1)]) } else { BTreeMap::new() });
    };
    let dim = first.len();
    let base = Weight::zero(dim);
    let mut ints = Vec::with_capacity(weights.len());
    for w in weights {
        if w.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: w.len() });
        }
        ints.push(to_disp(&base, w).map_err(|_| Error::InvalidInput(format!("weight {w} is not integral")))?);
    }
    let powers = sym_powers(&ints, dim, k);
    Ok(powers[k].iter().map(|(d, m)| (Weight::from_disp(d), *m as u64)).collect())
}

/// Product of two characters.
pub fn tensor(a: &DispChar, b: &DispChar) -> DispChar {
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, n) in b {
            *out.entry(disp_add(x, y)).or_insert(0) += m * n;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn two_weights_degree_two() {
        let c = sym_power_character(&[w(&[-1, 0]), w(&[0, -1])], 2).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.values().all(|&m| m == 1));
        assert!(c.contains_key(&w(&[-1, -1])));
    }

    #[test]
    fn single_weight() {
        for k in 0..5 {
            let c = sym_power_character(&[w(&[2, -1])], k).unwrap();
            assert_eq!(c, BTreeMap::from([(w(&[2 * k as i64, -(k as i64)]), 1)]));
        }
    }

    #[test]
    fn siegel_sym_square() {
        let c = sym_power_character(&[w(&[-2, 0]), w(&[-1, -1]), w(&[0, -2])], 2).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.values().sum::<u64>(), 6);
        assert_eq!(c[&w(&[-2, -2])], 2);
    }

    #[test]
    fn brute_force_monomials() {
        let ws = [vec![1, 0, -1], vec![0, 1, -1], vec![1, -1, 0], vec![1, 0, -1]];
        let p = sym_powers(&ws, 3, 3);
        let mut brute: DispChar = BTreeMap::new();
        for a in 0..=3i64 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    let d = 3 - a - b - c;
                    let mut v = vec![0; 3];
                    for (k, wt) in [a, b, c, d].iter().zip(&ws) {
                        v = disp_add(&v, &disp_scale(wt, *k));
                    }
                    *brute.entry(v).or_insert(0) += 1;
                }
            }
        }
        assert_eq!(p[3], brute);
    }
}
