use std::collections::{HashSet, VecDeque};

use super::roots::{reflect, RootDatum};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactla::Rational;

pub const WEYL_RANK_CAP: usize = 6;

/// Signed permutation of ε-coordinates: w(e_k) = sign[k]·e_{target[k]}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub target: Vec<usize>,
    pub sign: Vec<i8>,
}

impl WeylElement {
    pub fn identity(d: usize) -> Self {
        WeylElement { target: (0..d).collect(), sign: vec![1; d] }
    }

    /// The reflection s_α, which must act as a signed permutation.
    pub fn reflection(alpha: &Weight) -> Result<Self> {
        let d = alpha.len();
        let mut target = Vec::with_capacity(d);
        let mut sign = Vec::with_capacity(d);
        for k in 0..d {
            let img = reflect(&Weight::unit(d, k), alpha);
            let nz: Vec<usize> = (0..d).filter(|&i| !img.0[i].is_zero()).collect();
            match nz.as_slice() {
                [i] if img.0[*i].abs().is_one() => {
                    target.push(*i);
                    sign.push(if img.0[*i].is_negative() { -1 } else { 1 });
                }
                _ => return Err(Error::Unsupported(format!("reflection in {alpha} is not a signed permutation"))),
            }
        }
        Ok(WeylElement { target, sign })
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let mut out = vec![Rational::zero(); v.len()];
        for k in 0..v.len() {
            out[self.target[k]] = if self.sign[k] < 0 { -&v.0[k] } else { v.0[k].clone() };
        }
        Weight(out)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let d = self.target.len();
        let mut target = Vec::with_capacity(d);
        let mut sign = Vec::with_capacity(d);
        for k in 0..d {
            let t = other.target[k];
            target.push(self.target[t]);
            sign.push(other.sign[k] * self.sign[t]);
        }
        WeylElement { target, sign }
    }

    pub fn inverse(&self) -> WeylElement {
        let d = self.target.len();
        let mut target = vec![0; d];
        let mut sign = vec![1; d];
        for k in 0..d {
            target[self.target[k]] = k;
            sign[self.target[k]] = self.sign[k];
        }
        WeylElement { target, sign }
    }

    pub fn minus_count(&self) -> usize {
        self.sign.iter().filter(|&&s| s < 0).count()
    }
}

/// Closure of a generating set under composition (breadth first from the identity).
pub fn generate_group(d: usize, gens: &[WeylElement], cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(d);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let x = g.compose(&w);
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return Err(Error::Internal(format!("group exceeds {cap} elements")));
                }
                order.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    Ok(order)
}

pub fn simple_reflections(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    datum.simple_roots.iter().map(WeylElement::reflection).collect()
}

/// All elements of W, as signed permutations, identity first.
pub fn weyl_group(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    if datum.rank() > WEYL_RANK_CAP {
        return Err(Error::RankCap { rank: datum.rank(), cap: WEYL_RANK_CAP });
    }
    let gens = simple_reflections(datum)?;
    generate_group(datum.coord_dim, &gens, 1 << 20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_classical, build_double, ClassicalType};

    fn order(t: &str) -> usize {
        let t: ClassicalType = t.parse().unwrap();
        weyl_group(&build_classical(t).unwrap().datum).unwrap().len()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order("A3"), 24);
        assert_eq!(order("B2"), 8);
        assert_eq!(order("D3"), 24);
        assert_eq!(order("C3"), 48);
        assert_eq!(order("D4"), 192);
    }

    #[test]
    fn type_constraints_on_signs() {
        let a = weyl_group(&build_classical("A2".parse().unwrap()).unwrap().datum).unwrap();
        assert!(a.iter().all(|w| w.minus_count() == 0));
        let d = weyl_group(&build_classical("D4".parse().unwrap()).unwrap().datum).unwrap();
        assert!(d.iter().all(|w| w.minus_count() % 2 == 0));
    }

    #[test]
    fn group_axioms() {
        let w = weyl_group(&build_classical("B3".parse().unwrap()).unwrap().datum).unwrap();
        let v = Weight::from_ints(&[5, -2, 7]);
        for x in w.iter().take(20) {
            assert_eq!(x.compose(&x.inverse()), WeylElement::identity(3));
            for y in w.iter().skip(7).take(5) {
                assert_eq!(x.compose(y).apply(&v), x.apply(&y.apply(&v)));
            }
        }
    }

    #[test]
    fn double_weyl_group() {
        let g = build_double("A1".parse().unwrap()).unwrap();
        assert_eq!(weyl_group(&g.datum).unwrap().len(), 4);
    }

    #[test]
    fn rank_cap() {
        let g = build_classical("A7".parse().unwrap()).unwrap();
        assert!(matches!(weyl_group(&g.datum), Err(Error::RankCap { .. })));
    }
}
