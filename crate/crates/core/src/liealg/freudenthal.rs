use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::roots::RootDatum;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactla::Rational;

pub type Character = BTreeMap<Weight, u64>;

/// Weight multiplicities of the simple module F_λ by Freudenthal's recursion.
///
/// Weights are visited level by level below λ (level = sum of simple-root
/// coordinates of λ − μ), so every term on the right of the recursion is final
/// when μ is reached.
pub fn freudenthal_character(datum: &RootDatum, lambda: &Weight) -> Result<Character> {
    if !datum.is_dominant_integral(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let simple = &datum.simple_roots;
    let r = simple.len();
    let pos: Vec<(Weight, Vec<i64>, Rational)> = datum
        .positive_roots
        .iter()
        .map(|a| {
            let c = datum
                .simple_coordinates(a)
                .and_then(|c| c.iter().map(Rational::to_i64).collect::<Option<Vec<i64>>>())
                .expect("positive roots are integral in the simple roots");
            (a.clone(), c, a.dot(a))
        })
        .collect();
    let lr = lambda.add(&datum.rho);
    let top = lr.dot(&lr);
    let two = Rational::from_int(2);

    let weight_at = |n: &[i64]| -> Weight {
        let mut w = lambda.clone();
        for (ni, a) in n.iter().zip(simple) {
            if *ni != 0 {
                w = w.add_scaled(&Rational::from_int(-ni), a);
            }
        }
        w
    };

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(vec![0; r], 1);
    let mut frontier: Vec<Vec<i64>> = vec![vec![0; r]];
    while !frontier.is_empty() {
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for n in &frontier {
            for i in 0..r {
                let mut m = n.clone();
                m[i] += 1;
                candidates.push(m);
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for n in candidates {
            let mu = weight_at(&n);
            let mr = mu.add(&datum.rho);
            let denom = &top - &mr.dot(&mr);
            if !denom.is_positive() {
                continue;
            }
            let mut sum = Rational::zero();
            for (a, c, aa) in &pos {
                let mu_a = mu.dot(a);
                let mut k = 1i64;
                loop {
                    let shifted: Vec<i64> = n.iter().zip(c).map(|(x, y)| x - k * y).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        let ip = &mu_a + &(&Rational::from_int(k) * aa);
                        sum += &(&Rational::from_int(m as i64) * &ip);
                    }
                    k += 1;
                }
            }
            let m = &(&two * &sum) / &denom;
            let m = m.to_i64().filter(|&x| x >= 0).ok_or_else(|| {
                Error::Internal(format!("non-integral Freudenthal multiplicity {m} at {mu}"))
            })?;
            if m > 0 {
                mult.insert(n.clone(), m as u64);
                next.push(n);
            }
        }
        frontier = next;
    }
    Ok(mult.into_iter().map(|(n, m)| (weight_at(&n), m)).collect())
}

/// Caller-owned memo table for characters of one fixed datum.
#[derive(Default)]
pub struct CharacterCache {
    map: HashMap<Weight, Arc<Character>>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, datum: &RootDatum, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(c) = self.map.get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(freudenthal_character(datum, lambda)?);
        self.map.insert(lambda.clone(), c.clone());
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_classical, ClassicalType};

    fn datum(t: &str) -> RootDatum {
        let t: ClassicalType = t.parse().unwrap();
        build_classical(t).unwrap().datum
    }

    fn total(c: &Character) -> u64 {
        c.values().sum()
    }

    #[test]
    fn a1_adjoint() {
        let d = datum("A1");
        let c = freudenthal_character(&d, &Weight::from_ints(&[1, -1])).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.values().all(|&m| m == 1));
    }

    #[test]
    fn a2_adjoint() {
        let d = datum("A2");
        let c = freudenthal_character(&d, &Weight::from_ints(&[1, 0, -1])).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(total(&c), 8);
        assert_eq!(c[&Weight::zero(3)], 2);
    }

    #[test]
    fn c2_adjoint() {
        let d = datum("C2");
        let c = freudenthal_character(&d, &Weight::from_ints(&[2, 0])).unwrap();
        assert_eq!(total(&c), 10);
        assert_eq!(c[&Weight::zero(2)], 2);
    }

    #[test]
    fn non_dominant_rejected() {
        let d = datum("A1");
        assert!(matches!(
            freudenthal_character(&d, &Weight::from_ints(&[-1, 1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn matches_weyl_dimension() {
        let d = datum("B3");
        for lam in [[1, 0, 0], [1, 1, 0], [2, 1, 1], [3, 1, 0]] {
            let l = Weight::from_ints(&lam);
            let c = freudenthal_character(&d, &l).unwrap();
            assert_eq!(Rational::from_int(total(&c) as i64), d.weyl_dimension(&l));
        }
        let d = datum("D4");
        let half = Weight(vec![Rational::new(1, 2); 4]);
        let c = freudenthal_character(&d, &half).unwrap();
        assert_eq!(total(&c), 8);
    }
}
