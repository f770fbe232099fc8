//! Named quivers: Dynkin and affine trees, double-arrow affine representatives,
//! the extended affine quivers of type E and the exceptional quivers X6, X7.
//!
//! Vertices of the extended affine quivers are numbered from 1 in the usual
//! pictures; here vertex `k` becomes index `k - 1`. X6 and X7 keep their
//! numbering from 0.

use crate::matrix::{ExchangeMatrix, MutationSequence};

fn quiver(n: usize, arrows: &[(usize, usize, i64)]) -> ExchangeMatrix {
    ExchangeMatrix::from_arrows(n, arrows).expect("catalog quivers are well formed")
}

/// Linearly oriented path on `n` vertices.
pub fn type_a(n: usize) -> ExchangeMatrix {
    let arrows: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
    quiver(n, &arrows)
}

/// Path `0 - 1 - ... - (n-2)` with an extra vertex `n-1` attached to `n-3`.
pub fn type_d(n: usize) -> ExchangeMatrix {
    assert!(n >= 4);
    let mut arrows: Vec<_> = (1..n - 1).map(|i| (i - 1, i, 1)).collect();
    arrows.push((n - 3, n - 1, 1));
    quiver(n, &arrows)
}

/// Tree with a branch vertex and three arms of the given lengths (branch vertex excluded).
pub fn star_tree(arms: [usize; 3]) -> ExchangeMatrix {
    let n = 1 + arms.iter().sum::<usize>();
    let mut arrows = Vec::new();
    let mut next = 1;
    for len in arms {
        let mut prev = 0;
        for _ in 0..len {
            arrows.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    quiver(n, &arrows)
}

/// E6, E7, E8 as trees.
pub fn type_e(k: usize) -> ExchangeMatrix {
    assert!((6..=8).contains(&k));
    star_tree([1, 2, k - 4])
}

/// Affine E6, E7, E8 as trees.
pub fn affine_e_tree(k: usize) -> ExchangeMatrix {
    match k {
        6 => star_tree([2, 2, 2]),
        7 => star_tree([1, 3, 3]),
        8 => star_tree([1, 2, 5]),
        _ => panic!("no affine E{k}"),
    }
}

/// Affine D_n on `n + 1` vertices as a tree.
pub fn affine_d_tree(n: usize) -> ExchangeMatrix {
    assert!(n >= 4);
    if n == 4 {
        return quiver(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
    }
    // spine 0 .. n-4, two leaves on each end
    let spine = n - 3;
    let mut arrows: Vec<_> = (1..spine).map(|i| (i - 1, i, 1)).collect();
    arrows.push((0, spine, 1));
    arrows.push((0, spine + 1, 1));
    arrows.push((spine - 1, spine + 2, 1));
    arrows.push((spine - 1, spine + 3, 1));
    quiver(n + 1, &arrows)
}

/// Cycle on `p + q` vertices with `p` arrows one way and `q` the other.
pub fn affine_a_cycle(p: usize, q: usize) -> ExchangeMatrix {
    let n = p + q;
    assert!(p >= 1 && q >= 1 && n >= 2);
    if n == 2 {
        return quiver(2, &[(0, 1, 2)]);
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        arrows.push(if i < p { (i, j, 1) } else { (j, i, 1) });
    }
    quiver(n, &arrows)
}

/// Double arrow `0 => 1` with wings of the given sizes. The first vertex `w`
/// of each wing closes an oriented triangle `1 -> w -> 0`; the rest of the
/// wing is a linearly oriented path hanging off `w`.
pub fn double_arrow_with_wings(wings: &[usize]) -> ExchangeMatrix {
    let n = 2 + wings.iter().sum::<usize>();
    let mut arrows = vec![(0, 1, 2)];
    let mut next = 2;
    for &len in wings {
        arrows.push((1, next, 1));
        arrows.push((next, 0, 1));
        for k in 1..len {
            arrows.push((next + k - 1, next + k, 1));
        }
        next += len;
    }
    quiver(n, &arrows)
}

/// Double-arrow representative of affine E6, E7, E8 (wings of sizes 1, 2, k-4).
pub fn affine_e_double(k: usize) -> ExchangeMatrix {
    assert!((6..=8).contains(&k));
    double_arrow_with_wings(&[1, 2, k - 4])
}

/// Double-arrow representative of affine D_n (wings of sizes 1, 1, n-3).
/// Wing vertices are numbered 2, n, then 3..n-1.
pub fn affine_d_double(n: usize) -> ExchangeMatrix {
    assert!(n >= 4);
    let mut arrows = vec![(0, 1, 2)];
    for w in [2, n, 3] {
        arrows.push((1, w, 1));
        arrows.push((w, 0, 1));
    }
    for v in 4..n {
        arrows.push((v - 1, v, 1));
    }
    quiver(n + 1, &arrows)
}

/// Markov quiver: oriented triangle of double arrows.
pub fn markov() -> ExchangeMatrix {
    quiver(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)])
}

/// Labels 1..8: double arrow 8 => 7, triangles 7 -> i -> 8 for i = 1, 2, 3,
/// and legs 4 -> 1, 5 -> 2, 6 -> 3.
pub fn extended_e6() -> ExchangeMatrix {
    let l = |x: usize| x - 1;
    let mut arrows = vec![(l(8), l(7), 2)];
    for i in 1..=3 {
        arrows.push((l(7), l(i), 1));
        arrows.push((l(i), l(8), 1));
        arrows.push((l(i + 3), l(i), 1));
    }
    quiver(8, &arrows)
}

/// Labels 1..9: double arrow 9 => 8, triangles 8 -> i -> 9 for i = 2, 3, 4,
/// legs 2 - 6 - 1 and 4 - 7 - 5 with 6, 7, 8 as sources of the tree part.
pub fn extended_e7() -> ExchangeMatrix {
    let l = |x: usize| x - 1;
    let mut arrows = vec![(l(9), l(8), 2)];
    for i in 2..=4 {
        arrows.push((l(8), l(i), 1));
        arrows.push((l(i), l(9), 1));
    }
    for (t, h) in [(6, 2), (6, 1), (7, 4), (7, 5)] {
        arrows.push((l(t), l(h), 1));
    }
    quiver(9, &arrows)
}

/// Labels 1..10: double arrow 10 => 9, triangles 9 -> i -> 10 for i = 2, 3, 4,
/// legs 2 - 1 and 4 - 5 - 6 - 7 - 8 with alternating orientation.
pub fn extended_e8() -> ExchangeMatrix {
    let l = |x: usize| x - 1;
    let mut arrows = vec![(l(10), l(9), 2)];
    for i in 2..=4 {
        arrows.push((l(9), l(i), 1));
        arrows.push((l(i), l(10), 1));
    }
    for (t, h) in [(1, 2), (5, 4), (5, 6), (7, 6), (7, 8)] {
        arrows.push((l(t), l(h), 1));
    }
    quiver(10, &arrows)
}

/// Extended affine E quiver of the given kind (6, 7 or 8).
pub fn extended_e(k: usize) -> ExchangeMatrix {
    match k {
        6 => extended_e6(),
        7 => extended_e7(),
        8 => extended_e8(),
        _ => panic!("no extended affine E{k}"),
    }
}

/// Sink-source blocks `(first, second)` of the extended affine E quivers, zero-based.
/// Alternating the two blocks takes the quiver to its opposite.
pub fn extended_e_blocks(k: usize) -> (Vec<usize>, Vec<usize>) {
    let z = |v: &[usize]| v.iter().map(|x| x - 1).collect::<Vec<_>>();
    match k {
        6 => (z(&[1, 2, 3]), z(&[4, 5, 6, 7])),
        7 => (z(&[1, 2, 3, 4, 5]), z(&[6, 7, 8])),
        8 => (z(&[2, 3, 4, 6, 8]), z(&[1, 5, 7, 9])),
        _ => panic!("no extended affine E{k}"),
    }
}

/// Sequence taking the extended affine E quiver to its opposite.
pub fn extended_e_reversal(k: usize) -> MutationSequence {
    let (a, b) = extended_e_blocks(k);
    let rounds = match k {
        6 => 1,
        7 => 2,
        8 => 4,
        _ => unreachable!(),
    };
    let mut seq = Vec::new();
    for _ in 0..rounds {
        seq.extend(&a);
        seq.extend(&b);
    }
    seq.extend(&a);
    MutationSequence::new(seq)
}

/// Vertex 0 in the middle of three triangles `a => b -> 0 -> a`, with
/// `(a, b)` = (1, 2), (3, 4), (5, 6).
pub fn x7() -> ExchangeMatrix {
    let mut arrows = Vec::new();
    for (a, b) in [(1, 2), (3, 4), (5, 6)] {
        arrows.extend([(a, b, 2), (b, 0, 1), (0, a, 1)]);
    }
    quiver(7, &arrows)
}

/// X7 with vertex 6 removed; vertex 5 is a leaf with a single arrow `0 -> 5`.
pub fn x6() -> ExchangeMatrix {
    x7().restrict(&[0, 1, 2, 3, 4, 5]).expect("indices in range")
}
