//! Type labels for mutation classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canonical::CanonicalForm;
use crate::catalog;
use crate::enumerate::{finite_class, MutationClass, SearchConfig};
use crate::error::Result;
use crate::matrix::ExchangeMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    FiniteType,
    /// Cycle with `p >= q >= 1` arrows in the two directions.
    AffineA(usize, usize),
    /// Affine D_n on `n + 1` vertices.
    AffineD(usize),
    AffineE(usize),
    ExtendedAffineE(usize),
    X6,
    X7,
    /// Rank two, by arrow weight.
    Rank2(i64),
    SurfaceOther,
    MutationInfinite,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::FiniteType => write!(f, "FiniteType"),
            TypeLabel::AffineA(p, q) => write!(f, "AffineA({p},{q})"),
            TypeLabel::AffineD(n) => write!(f, "AffineD({n})"),
            TypeLabel::AffineE(k) => write!(f, "AffineE({k})"),
            TypeLabel::ExtendedAffineE(k) => write!(f, "ExtendedAffineE({k})"),
            TypeLabel::X6 => write!(f, "X6"),
            TypeLabel::X7 => write!(f, "X7"),
            TypeLabel::Rank2(w) => write!(f, "Rank2({w})"),
            TypeLabel::SurfaceOther => write!(f, "SurfaceOther"),
            TypeLabel::MutationInfinite => write!(f, "MutationInfinite"),
        }
    }
}

impl FromStr for TypeLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("unknown type label {s:?}");
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(bad()),
            None => (s, None),
        };
        let nums: Vec<i64> = match args {
            Some(a) => {
                a.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<std::result::Result<_, _>>()?
            }
            None => Vec::new(),
        };
        let u = |i: usize| usize::try_from(nums[i]).map_err(|_| bad());
        Ok(match (name, nums.len()) {
            ("FiniteType", 0) => TypeLabel::FiniteType,
            ("AffineA", 2) => TypeLabel::AffineA(u(0)?, u(1)?),
            ("AffineD", 1) => TypeLabel::AffineD(u(0)?),
            ("AffineE", 1) => TypeLabel::AffineE(u(0)?),
            ("ExtendedAffineE", 1) => TypeLabel::ExtendedAffineE(u(0)?),
            ("X6", 0) => TypeLabel::X6,
            ("X7", 0) => TypeLabel::X7,
            ("Rank2", 1) => TypeLabel::Rank2(nums[0]),
            ("SurfaceOther", 0) => TypeLabel::SurfaceOther,
            ("MutationInfinite", 0) => TypeLabel::MutationInfinite,
            _ => return Err(bad()),
        })
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TypeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Type of the mutation class of the principal part.
pub fn classify(m: &ExchangeMatrix, config: &SearchConfig) -> Result<TypeLabel> {
    let p = m.principal();
    let Some(class) = finite_class(&p, config)? else {
        return Ok(TypeLabel::MutationInfinite);
    };
    Ok(label_finite_class(&p, &class))
}

/// Label of a class already known to be finite and complete.
pub fn label_finite_class(p: &ExchangeMatrix, class: &MutationClass) -> TypeLabel {
    let n = p.n();
    if n == 2 {
        return TypeLabel::Rank2(p.weight(0, 1));
    }
    let members: Vec<ExchangeMatrix> = class.forms().map(CanonicalForm::to_matrix).collect();
    if members.iter().all(|q| q.max_weight() <= 3) {
        return TypeLabel::FiniteType;
    }
    if !p.is_connected() || !p.is_skew_symmetric() {
        return TypeLabel::SurfaceOther;
    }
    let canon = crate::canonical::Canonicalizer::new();
    let exceptional: Vec<(TypeLabel, ExchangeMatrix)> = vec![
        (TypeLabel::X6, catalog::x6()),
        (TypeLabel::X7, catalog::x7()),
        (TypeLabel::ExtendedAffineE(6), catalog::extended_e6()),
        (TypeLabel::ExtendedAffineE(7), catalog::extended_e7()),
        (TypeLabel::ExtendedAffineE(8), catalog::extended_e8()),
    ];
    for (label, q) in exceptional {
        if q.n() == n && class.contains_form(&canon.canonical_form(&q)) {
            return label;
        }
    }
    members.iter().find_map(affine_shape).unwrap_or(TypeLabel::SurfaceOther)
}

/// Affine label when `q` is a simply laced cycle (not oriented) or an affine tree.
fn affine_shape(q: &ExchangeMatrix) -> Option<TypeLabel> {
    let n = q.n();
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            match q.get(i, j).abs() {
                0 => {}
                1 if q.get(j, i).abs() == 1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                    edges += 1;
                }
                _ => return None,
            }
        }
    }
    if !q.is_connected() {
        return None;
    }
    if edges == n && adj.iter().all(|a| a.len() == 2) {
        // walk once around the cycle counting arrows along the walk direction
        let (mut prev, mut cur) = (0, adj[0][0]);
        let mut forward = usize::from(q.get(0, cur) > 0);
        for _ in 1..n {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            forward += usize::from(q.get(cur, next) > 0);
            prev = cur;
            cur = next;
        }
        let backward = n - forward;
        if forward == 0 || backward == 0 {
            return None;
        }
        return Some(TypeLabel::AffineA(forward.max(backward), forward.min(backward)));
    }
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [c] if adj[*c].len() == 4 && n == 5 => Some(TypeLabel::AffineD(4)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&s| arm_length(&adj, *c, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [2, 2, 2] => Some(TypeLabel::AffineE(6)),
                [1, 3, 3] => Some(TypeLabel::AffineE(7)),
                [1, 2, 5] => Some(TypeLabel::AffineE(8)),
                _ => None,
            }
        }
        [a, b] if adj[*a].len() == 3 && adj[*b].len() == 3 => {
            let leaves = |c: usize| adj[c].iter().filter(|&&u| adj[u].len() == 1).count();
            (leaves(*a) >= 2 && leaves(*b) >= 2).then_some(TypeLabel::AffineD(n - 1))
        }
        _ => None,
    }
}

fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    while adj[cur].len() == 2 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn label_text_roundtrip() {
        for l in [
            TypeLabel::FiniteType,
            TypeLabel::AffineA(3, 1),
            TypeLabel::AffineD(5),
            TypeLabel::AffineE(7),
            TypeLabel::ExtendedAffineE(8),
            TypeLabel::X6,
            TypeLabel::X7,
            TypeLabel::Rank2(9),
            TypeLabel::SurfaceOther,
            TypeLabel::MutationInfinite,
        ] {
            assert_eq!(l.to_string().parse::<TypeLabel>().unwrap(), l);
        }
        assert!("AffineA(1)".parse::<TypeLabel>().is_err());
    }

    #[test]
    fn dynkin_and_affine_trees() {
        assert_eq!(classify(&catalog::type_d(5), &cfg()).unwrap(), TypeLabel::FiniteType);
        assert_eq!(classify(&catalog::affine_d_tree(4), &cfg()).unwrap(), TypeLabel::AffineD(4));
        assert_eq!(classify(&catalog::affine_d_tree(6), &cfg()).unwrap(), TypeLabel::AffineD(6));
        assert_eq!(classify(&catalog::affine_a_cycle(2, 1), &cfg()).unwrap(), TypeLabel::AffineA(2, 1));
        assert_eq!(classify(&catalog::affine_e_tree(6), &cfg()).unwrap(), TypeLabel::AffineE(6));
    }

    #[test]
    fn markov_is_a_surface_class() {
        assert_eq!(classify(&catalog::markov(), &cfg()).unwrap(), TypeLabel::SurfaceOther);
    }
}
