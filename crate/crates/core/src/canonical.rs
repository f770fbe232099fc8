//! Canonical forms of extended exchange matrices under relabeling of mutable
//! vertices and reordering of frozen rows.
//!
//! Colour refinement on weighted in/out signatures (symmetrizer entries and
//! frozen-row incidences included), then individualization with backtracking
//! on the first smallest non-singleton cell. The form is the least leaf key
//! over the search tree. Vertices with identical neighbourhoods are twins and
//! only one of each twin class is individualized per cell.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::ExchangeMatrix;

/// Sequence `n, m, d (permuted), principal block (row-major), frozen rows (sorted)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Box<[i64]>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Little-endian byte encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonical representative itself.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        let n = self.0[0] as usize;
        let m = self.0[1] as usize;
        let d = self.0[2..2 + n].to_vec();
        let entries = self.0[2 + n..].to_vec();
        ExchangeMatrix::from_parts(n, m, entries, Some(d)).expect("canonical form encodes a valid matrix")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Canonicalizer {
    seed: Option<u64>,
}

impl Canonicalizer {
    pub fn new() -> Self {
        Canonicalizer { seed: None }
    }

    /// Shuffles the order in which branches are explored. The result does not
    /// depend on the seed.
    pub fn with_seed(seed: u64) -> Self {
        Canonicalizer { seed: Some(seed) }
    }

    pub fn canonical_form(&self, m: &ExchangeMatrix) -> CanonicalForm {
        self.canonical_labeling(m).0
    }

    /// Canonical form together with the relabeling `old vertex -> new position`
    /// that produces it from `m`.
    pub fn canonical_labeling(&self, m: &ExchangeMatrix) -> (CanonicalForm, Vec<usize>) {
        let g = Graph::new(m);
        let mut rng = self.seed.map(ChaCha8Rng::seed_from_u64);
        let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
        let colors = g.initial_colors();
        let mut scratch = Scratch::default();
        g.search(colors, &mut best, &mut rng, &mut scratch);
        let (key, perm) = best.expect("search visits at least one leaf");
        (CanonicalForm(key.into_boxed_slice()), perm)
    }
}

pub fn canonical_form(m: &ExchangeMatrix) -> CanonicalForm {
    Canonicalizer::new().canonical_form(m)
}

pub fn are_isomorphic(a: &ExchangeMatrix, b: &ExchangeMatrix) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

struct Graph<'a> {
    m: &'a ExchangeMatrix,
    n: usize,
    /// mutable vertices then frozen rows
    size: usize,
    twin_rep: Vec<usize>,
}

/// Color of a vertex and the sorted `(color, b_uv, b_vu)` list of its neighbors.
type Signature = (u32, Vec<(u32, i64, i64)>);

#[derive(Default)]
struct Scratch {
    sigs: Vec<Signature>,
    order: Vec<usize>,
}

impl<'a> Graph<'a> {
    fn new(m: &'a ExchangeMatrix) -> Self {
        let n = m.n();
        let mut twin_rep: Vec<usize> = (0..n).collect();
        for v in 0..n {
            if twin_rep[v] != v {
                continue;
            }
            for u in v + 1..n {
                if twin_rep[u] == u && are_twins(m, v, u) {
                    twin_rep[u] = v;
                }
            }
        }
        Graph { m, n, size: m.m(), twin_rep }
    }

    /// `(b_vu, b_uv)` as seen from `v`; frozen rows have no entries among themselves.
    fn pair(&self, v: usize, u: usize) -> (i64, i64) {
        let n = self.n;
        match (v < n, u < n) {
            (true, true) => (self.m.get(v, u), self.m.get(u, v)),
            (true, false) => (0, self.m.get(u, v)),
            (false, true) => (self.m.get(v, u), 0),
            (false, false) => (0, 0),
        }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let d = self.m.symmetrizer();
        let keys: Vec<(u8, i64)> = (0..self.size).map(|v| if v < self.n { (0, d[v]) } else { (1, 0) }).collect();
        dense_rank(&keys)
    }

    fn refine(&self, colors: &mut [u32], s: &mut Scratch) {
        let mut classes = count_classes(colors);
        loop {
            s.sigs.resize_with(self.size, Default::default);
            for v in 0..self.size {
                let sig = &mut s.sigs[v];
                sig.0 = colors[v];
                sig.1.clear();
                for u in 0..self.size {
                    if u == v {
                        continue;
                    }
                    let (a, b) = self.pair(v, u);
                    if a != 0 || b != 0 {
                        sig.1.push((colors[u], a, b));
                    }
                }
                sig.1.sort_unstable();
            }
            s.order.clear();
            s.order.extend(0..self.size);
            let sigs = &s.sigs;
            s.order.sort_by(|&x, &y| sigs[x].cmp(&sigs[y]));
            let mut next = 0u32;
            for idx in 0..s.order.len() {
                let v = s.order[idx];
                if idx > 0 && sigs[s.order[idx - 1]] != sigs[v] {
                    next += 1;
                }
                colors[v] = next;
            }
            let now = if self.size == 0 { 0 } else { next as usize + 1 };
            if now == classes {
                break;
            }
            classes = now;
        }
    }

    fn search(
        &self,
        mut colors: Vec<u32>,
        best: &mut Option<(Vec<i64>, Vec<usize>)>,
        rng: &mut Option<ChaCha8Rng>,
        s: &mut Scratch,
    ) {
        self.refine(&mut colors, s);
        // mutable vertices carry the colours 0..k, frozen rows the ones above
        let mut counts = vec![0usize; self.size];
        for v in 0..self.n {
            counts[colors[v] as usize] += 1;
        }
        let target = (0..self.size).find(|&c| counts[c] > 1);
        let Some(target) = target else {
            let perm: Vec<usize> = colors[..self.n].iter().map(|&c| c as usize).collect();
            let key = self.leaf_key(&perm);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                *best = Some((key, perm));
            }
            return;
        };
        let mut children: Vec<usize> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if colors[v] as usize == target && !reps.contains(&self.twin_rep[v]) {
                reps.push(self.twin_rep[v]);
                children.push(v);
            }
        }
        if let Some(r) = rng.as_mut() {
            children.shuffle(r);
        }
        for v in children {
            let child: Vec<u32> =
                colors.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(c as usize == target && u != v)).collect();
            self.search(child, best, rng, s);
        }
    }

    fn leaf_key(&self, perm: &[usize]) -> Vec<i64> {
        let n = self.n;
        let m = self.m;
        let mut inv = vec![0usize; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut key = Vec::with_capacity(2 + n + m.m() * n);
        key.push(n as i64);
        key.push(m.m() as i64);
        key.extend(inv.iter().map(|&o| m.symmetrizer()[o]));
        for &i in &inv {
            key.extend(inv.iter().map(|&j| m.get(i, j)));
        }
        let mut frozen: Vec<Vec<i64>> = (n..m.m()).map(|r| inv.iter().map(|&j| m.get(r, j)).collect()).collect();
        frozen.sort_unstable();
        key.extend(frozen.into_iter().flatten());
        key
    }
}

fn are_twins(m: &ExchangeMatrix, u: usize, v: usize) -> bool {
    if m.symmetrizer()[u] != m.symmetrizer()[v] || m.get(u, v) != 0 || m.get(v, u) != 0 {
        return false;
    }
    (0..m.m())
        .filter(|&w| w != u && w != v)
        .all(|w| m.get(w, u) == m.get(w, v) && (w >= m.n() || m.get(u, w) == m.get(v, w)))
}

fn dense_rank<T: Ord>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(&k).unwrap() as u32).collect()
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> ExchangeMatrix {
        ExchangeMatrix::new(rows, None).unwrap()
    }

    #[test]
    fn orientations_of_a3_path() {
        let linear = m(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        let relabeled = linear.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(canonical_form(&linear), canonical_form(&relabeled));
        let sink = m(vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]);
        assert_ne!(canonical_form(&linear), canonical_form(&sink));
    }

    #[test]
    fn form_rebuilds_an_isomorphic_matrix() {
        let a = m(vec![vec![0, 1, 0], vec![-2, 0, 1], vec![0, -1, 0], vec![3, 0, -1]]);
        let f = canonical_form(&a);
        assert_eq!(canonical_form(&f.to_matrix()), f);
    }

    #[test]
    fn labeling_reproduces_form() {
        let a = m(vec![vec![0, 2, -1], vec![-2, 0, 1], vec![1, -1, 0], vec![1, 2, 3]]);
        let (f, perm) = Canonicalizer::new().canonical_labeling(&a);
        let r = a.relabel(&perm).unwrap();
        assert_eq!(&f.as_slice()[2 + 3..2 + 3 + 9], &r.entries()[..9]);
    }

    #[test]
    fn frozen_row_order_ignored() {
        let a = m(vec![vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 2]]);
        let b = m(vec![vec![0, 1], vec![-1, 0], vec![0, 2], vec![1, 0]]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn seeds_do_not_change_the_form() {
        let a = m(vec![
            vec![0, 1, 0, 0, -1],
            vec![-1, 0, 1, 0, 0],
            vec![0, -1, 0, 1, 0],
            vec![0, 0, -1, 0, 1],
            vec![1, 0, 0, -1, 0],
        ]);
        let f = canonical_form(&a);
        for seed in 0..5 {
            assert_eq!(Canonicalizer::with_seed(seed).canonical_form(&a), f);
        }
    }

    #[test]
    fn empty_and_isolated() {
        let z = ExchangeMatrix::new(vec![vec![0; 6]; 6], None).unwrap();
        assert_eq!(canonical_form(&z).as_slice().len(), 2 + 6 + 36);
    }
}
