use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::{CharacterCache, RootDatum, Weight};

/// Splits a character into simple modules by repeatedly removing the
/// character of its highest remaining weight (regular functional of `datum`,
/// ties broken lexicographically).
pub fn decompose_character(
    chr: &BTreeMap<Weight, i64>,
    datum: &RootDatum,
    cache: &mut CharacterCache,
) -> Result<Vec<(Weight, u64)>> {
    let mut residual: BTreeMap<Weight, i64> = chr.iter().filter(|(_, m)| **m != 0).map(|(w, m)| (w.clone(), *m)).collect();
    let mut order: Vec<Weight> = residual.keys().cloned().collect();
    order.sort_by_cached_key(|w| std::cmp::Reverse(datum.order_key(w)));
    let mut out = Vec::new();
    for w in order {
        let m = residual[&w];
        if m < 0 {
            return Err(Error::Decomposition(format!("negative residual multiplicity {m} at {w}")));
        }
        if m == 0 {
            continue;
        }
        if !datum.is_dominant_integral(&w) {
            return Err(Error::Decomposition(format!("maximal remaining weight {w} is not dominant")));
        }
        let c = cache.get(datum, &w)?;
        for (v, k) in c.iter() {
            match residual.get_mut(v) {
                Some(r) => *r -= m * *k as i64,
                None => {
                    return Err(Error::Decomposition(format!("weight {v} of the module at {w} is missing")));
                }
            }
        }
        out.push((w, m as u64));
    }
    if let Some((w, m)) = residual.iter().find(|(_, m)| **m != 0) {
        return Err(Error::Decomposition(format!("residual multiplicity {m} at {w}")));
    }
    Ok(out)
}

/// Σ m·ch F_δ; inverse of [`decompose_character`].
pub fn recompose(parts: &[(Weight, u64)], datum: &RootDatum, cache: &mut CharacterCache) -> Result<BTreeMap<Weight, i64>> {
    let mut out = BTreeMap::new();
    for (w, m) in parts {
        for (v, k) in cache.get(datum, w)?.iter() {
            *out.entry(v.clone()).or_insert(0) += (*m * *k) as i64;
        }
    }
    Ok(out)
}
