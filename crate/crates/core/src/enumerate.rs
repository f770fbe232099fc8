//! Breadth-first enumeration of mutation classes up to isomorphism.

use indexmap::IndexMap;

use crate::canonical::{CanonicalForm, Canonicalizer};
use crate::error::{Error, Result};
use crate::matrix::{ExchangeMatrix, MutationSequence};

pub const DEFAULT_MAX_MEMBERS: usize = 1_000_000;
pub const DEFAULT_MAX_DEPTH: usize = 64;
pub const MAX_MEMBERS_ENV: &str = "MUTFIN_MAX_MEMBERS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_members: usize,
    pub max_depth: usize,
    /// Exploration order of the canonical labeling search; results do not depend on it.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    /// Default caps, with `MUTFIN_MAX_MEMBERS` overriding the member cap.
    fn default() -> Self {
        let max_members =
            std::env::var(MAX_MEMBERS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_MEMBERS);
        SearchConfig { max_members, max_depth: DEFAULT_MAX_DEPTH, seed: None }
    }
}

impl SearchConfig {
    pub fn canonicalizer(&self) -> Canonicalizer {
        match self.seed {
            Some(s) => Canonicalizer::with_seed(s),
            None => Canonicalizer::new(),
        }
    }
}

/// Isomorphism classes reachable from a seed, each with a shortest witness
/// sequence from the seed. Members are kept in discovery order.
#[derive(Clone, Debug)]
pub struct MutationClass {
    seed: ExchangeMatrix,
    members: IndexMap<CanonicalForm, MutationSequence>,
    complete: bool,
}

impl MutationClass {
    pub fn seed(&self) -> &ExchangeMatrix {
        &self.seed
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// False when a cap stopped the search with unexplored members left.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.members.keys()
    }

    pub fn members(&self) -> impl Iterator<Item = (&CanonicalForm, &MutationSequence)> {
        self.members.iter()
    }

    pub fn contains_form(&self, f: &CanonicalForm) -> bool {
        self.members.contains_key(f)
    }

    pub fn witness(&self, f: &CanonicalForm) -> Option<&MutationSequence> {
        self.members.get(f)
    }

    /// Seed mutated along each member's witness, in discovery order.
    pub fn representatives(&self) -> impl Iterator<Item = Result<ExchangeMatrix>> + '_ {
        self.members.values().map(|s| self.seed.apply(s))
    }
}

/// What a visitor wants the walk to do after seeing a member.
pub enum Visit<T> {
    Continue,
    Stop(T),
}

pub enum WalkOutcome<T> {
    /// Every member was visited.
    Exhausted(MutationClass),
    /// The visitor stopped at the member reached by `witness`.
    Stopped { witness: MutationSequence, value: T, class: MutationClass },
    /// A cap was reached first.
    Capped(MutationClass),
}

/// Breadth-first walk over the class of `seed`. Each new member is handed to
/// `visit` together with its witness and canonical form as soon as it is generated.
pub fn walk_class<T>(
    seed: &ExchangeMatrix,
    config: &SearchConfig,
    mut visit: impl FnMut(&ExchangeMatrix, &MutationSequence, &CanonicalForm) -> Result<Visit<T>>,
) -> Result<WalkOutcome<T>> {
    let canon = config.canonicalizer();
    let mut members = IndexMap::new();
    let root = MutationSequence::empty();
    let seed_form = canon.canonical_form(seed);
    let first = visit(seed, &root, &seed_form)?;
    members.insert(seed_form, root.clone());
    let class = |members, complete| MutationClass { seed: seed.clone(), members, complete };
    if let Visit::Stop(value) = first {
        return Ok(WalkOutcome::Stopped { witness: root, value, class: class(members, false) });
    }
    let mut frontier = vec![(seed.clone(), root)];
    let mut scratch = seed.clone();
    let mut depth = 0usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (mat, seq) in &frontier {
            for k in 0..seed.n() {
                if seq.as_slice().last() == Some(&k) {
                    continue;
                }
                mat.mutate_into(k, &mut scratch)?;
                let form = canon.canonical_form(&scratch);
                if members.contains_key(&form) {
                    continue;
                }
                if depth >= config.max_depth || members.len() >= config.max_members {
                    return Ok(WalkOutcome::Capped(class(members, false)));
                }
                let witness = seq.then(k);
                let step = visit(&scratch, &witness, &form)?;
                members.insert(form, witness.clone());
                if let Visit::Stop(value) = step {
                    return Ok(WalkOutcome::Stopped { witness, value, class: class(members, false) });
                }
                next.push((scratch.clone(), witness));
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(WalkOutcome::Exhausted(class(members, true)))
}

/// All members of the class, within the caps of `config`.
pub fn enumerate_class(seed: &ExchangeMatrix, config: &SearchConfig) -> Result<MutationClass> {
    Ok(match walk_class::<()>(seed, config, |_, _, _| Ok(Visit::Continue))? {
        WalkOutcome::Exhausted(c) | WalkOutcome::Capped(c) => c,
        WalkOutcome::Stopped { class, .. } => class,
    })
}

#[derive(Clone, Debug)]
pub enum Finiteness {
    Finite(MutationClass),
    /// A member reached by `witness` has an arrow of weight above 4 inside a
    /// connected component with at least three vertices.
    Infinite {
        witness: MutationSequence,
        arrow: (usize, usize),
        weight: i64,
    },
    Undecided(MutationClass),
}

impl Finiteness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finiteness::Finite(_))
    }
}

/// Decides whether the principal part has a finite mutation class. Frozen rows are ignored.
///
/// Components of rank at most two always have finite classes. A component of
/// rank three or more is mutation-finite exactly when no member carries an
/// arrow of weight above 4, so the walk stops at the first such arrow.
pub fn is_mutation_finite_mutable(m: &ExchangeMatrix, config: &SearchConfig) -> Result<Finiteness> {
    let p = m.principal();
    let mut large = vec![false; p.n()];
    for comp in p.components() {
        if comp.len() >= 3 {
            for &v in &comp {
                large[v] = true;
            }
        }
    }
    let outcome = walk_class(&p, config, |mat, _, _| {
        Ok(match heavy_arrow(mat, &large) {
            Some(hit) => Visit::Stop(hit),
            None => Visit::Continue,
        })
    })?;
    Ok(match outcome {
        WalkOutcome::Exhausted(c) => Finiteness::Finite(c),
        WalkOutcome::Capped(c) => Finiteness::Undecided(c),
        WalkOutcome::Stopped { witness, value: (arrow, weight), .. } => Finiteness::Infinite { witness, arrow, weight },
    })
}

fn heavy_arrow(m: &ExchangeMatrix, large: &[bool]) -> Option<((usize, usize), i64)> {
    for i in 0..m.n() {
        if !large[i] {
            continue;
        }
        for j in 0..m.n() {
            if m.get(i, j) > 0 {
                let w = m.weight(i, j);
                if w > 4 {
                    return Some(((i, j), w));
                }
            }
        }
    }
    None
}

/// Finite class or an error when the caps were hit or the class is infinite.
pub(crate) fn finite_class(m: &ExchangeMatrix, config: &SearchConfig) -> Result<Option<MutationClass>> {
    match is_mutation_finite_mutable(m, config)? {
        Finiteness::Finite(c) => Ok(Some(c)),
        Finiteness::Infinite { .. } => Ok(None),
        Finiteness::Undecided(_) => Err(Error::CapsExceeded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> ExchangeMatrix {
        let arrows: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
        ExchangeMatrix::from_arrows(n, &arrows).unwrap()
    }

    #[test]
    fn small_type_a_classes() {
        let cfg = SearchConfig::default();
        // A2: one arrow; A3: path, oriented triangle, and the two non-linear paths collapse by symmetry
        assert_eq!(enumerate_class(&path(2), &cfg).unwrap().len(), 1);
        assert_eq!(enumerate_class(&path(3), &cfg).unwrap().len(), 4);
    }

    #[test]
    fn witnesses_replay_to_members() {
        let cfg = SearchConfig::default();
        let c = enumerate_class(&path(4), &cfg).unwrap();
        let canon = Canonicalizer::new();
        for ((form, _), rep) in c.members().zip(c.representatives()) {
            assert_eq!(&canon.canonical_form(&rep.unwrap()), form);
        }
    }

    #[test]
    fn member_cap_marks_incomplete() {
        let cfg = SearchConfig { max_members: 2, ..SearchConfig::default() };
        let c = enumerate_class(&path(4), &cfg).unwrap();
        assert!(!c.is_complete());
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn markov_quiver_is_finite_with_one_member() {
        let m = ExchangeMatrix::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        match is_mutation_finite_mutable(&m, &SearchConfig::default()).unwrap() {
            Finiteness::Finite(c) => assert_eq!(c.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn heavy_triangle_is_infinite() {
        let m = ExchangeMatrix::from_arrows(3, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        assert!(matches!(
            is_mutation_finite_mutable(&m, &SearchConfig::default()).unwrap(),
            Finiteness::Infinite { .. }
        ));
    }

    #[test]
    fn heavy_rank_two_component_is_finite() {
        // Kronecker-like weight 9 pair next to an isolated vertex
        let m = ExchangeMatrix::from_arrows(3, &[(0, 1, 3)]).unwrap();
        assert!(is_mutation_finite_mutable(&m, &SearchConfig::default()).unwrap().is_finite());
    }
}
