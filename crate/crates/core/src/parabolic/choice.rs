use std::fmt;
use std::str::FromStr;

use super::{coweight_sum, parabolic_from_coords, ParabolicData};
use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::liealg::{AlgebraRealization, Family, RealizationKind, Weight};

/// Textual parabolic selector: `borel`, `full`, `heisenberg`, `siegel`,
/// `maximal:k`, `subset:i,j,...` (1-based Levi simple roots) or `h:a,b,...`
/// (ε-coordinates of H).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicChoice {
    Borel,
    Full,
    /// Type A: Levi generated by the interior simple roots.
    Heisenberg,
    /// Type C: Levi generated by all but the last simple root.
    Siegel,
    /// Levi generated by all simple roots except the k-th (1-based).
    Maximal(usize),
    Subset(Vec<usize>),
    H(Weight),
}

impl ParabolicChoice {
    /// Levi simple-root subset (0-based), when the choice is standard.
    pub fn subset(&self, g: &AlgebraRealization) -> Result<Option<Vec<usize>>> {
        let r = g.datum.simple_roots.len();
        let family = match g.kind {
            RealizationKind::Special(t) => Some(t.family),
            RealizationKind::GeneralLinear(_) => Some(Family::A),
            RealizationKind::Double(_) => None,
        };
        let out = match self {
            ParabolicChoice::Borel => vec![],
            ParabolicChoice::Full => (0..r).collect(),
            ParabolicChoice::Heisenberg => {
                if family != Some(Family::A) || r < 2 {
                    return Err(Error::InvalidInput("heisenberg needs type A of rank ≥ 2".into()));
                }
                (1..r - 1).collect()
            }
            ParabolicChoice::Siegel => {
                if family != Some(Family::C) {
                    return Err(Error::InvalidInput("siegel needs type C".into()));
                }
                (0..r - 1).collect()
            }
            ParabolicChoice::Maximal(k) => {
                if *k < 1 || *k > r {
                    return Err(Error::InvalidInput(format!("maximal:{k} out of range 1..={r}")));
                }
                (0..r).filter(|&i| i != k - 1).collect()
            }
            ParabolicChoice::Subset(s) => {
                let mut v = Vec::new();
                for &i in s {
                    if i < 1 || i > r {
                        return Err(Error::InvalidInput(format!("simple root {i} out of range 1..={r}")));
                    }
                    v.push(i - 1);
                }
                v.sort();
                v.dedup();
                v
            }
            ParabolicChoice::H(_) => return Ok(None),
        };
        Ok(Some(out))
    }

    /// ε-coordinates of the defining H.
    pub fn h_coords(&self, g: &AlgebraRealization) -> Result<Weight> {
        match self {
            ParabolicChoice::H(h) => {
                if h.len() != g.coord_dim() {
                    return Err(Error::DimensionMismatch { expected: g.coord_dim(), found: h.len() });
                }
                g.epsilon(&g.cartan_element(h))
            }
            _ => coweight_sum(g, &self.subset(g)?.expect("standard choice")),
        }
    }

    pub fn build(&self, g: &AlgebraRealization) -> Result<ParabolicData> {
        parabolic_from_coords(g, &self.h_coords(g)?)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::InvalidInput(format!("bad list entry {x:?}"))))
        .collect()
}

impl FromStr for ParabolicChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        Ok(match head {
            "borel" => ParabolicChoice::Borel,
            "full" => ParabolicChoice::Full,
            "heisenberg" => ParabolicChoice::Heisenberg,
            "siegel" => ParabolicChoice::Siegel,
            "maximal" => ParabolicChoice::Maximal(
                rest.trim().parse().map_err(|_| Error::InvalidInput(format!("bad maximal index {rest:?}")))?,
            ),
            "subset" => ParabolicChoice::Subset(parse_list(rest)?),
            "h" => {
                let v: Vec<Rational> = parse_list(rest)?;
                if v.is_empty() {
                    return Err(Error::InvalidInput("h: needs coordinates".into()));
                }
                ParabolicChoice::H(Weight(v))
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown parabolic {s:?}; expected borel, full, heisenberg, siegel, maximal:k, subset:i,j or h:a,b"
                )))
            }
        })
    }
}

impl fmt::Display for ParabolicChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| v.join(",");
        match self {
            ParabolicChoice::Borel => write!(f, "borel"),
            ParabolicChoice::Full => write!(f, "full"),
            ParabolicChoice::Heisenberg => write!(f, "heisenberg"),
            ParabolicChoice::Siegel => write!(f, "siegel"),
            ParabolicChoice::Maximal(k) => write!(f, "maximal:{k}"),
            ParabolicChoice::Subset(s) => write!(f, "subset:{}", join(&s.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
            ParabolicChoice::H(h) => write!(f, "h:{}", join(&h.0.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
        }
    }
}
