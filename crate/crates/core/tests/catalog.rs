use mutfin_core::catalog;
use mutfin_core::{
    canonical_form, classify, enumerate_class, ExchangeMatrix, MutationSequence, SearchConfig, TypeLabel,
};

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn same_class(a: &ExchangeMatrix, b: &ExchangeMatrix) -> bool {
    enumerate_class(a, &cfg()).unwrap().contains_form(&canonical_form(b))
}

#[test]
fn extended_e_reversal_gives_opposite() {
    for k in 6..=8 {
        let q = catalog::extended_e(k);
        let seq = catalog::extended_e_reversal(k);
        assert_eq!(q.apply(&seq).unwrap(), q.opposite(), "E{k}");
    }
}

#[test]
fn extended_e_blocks_are_independent_sets() {
    for k in 6..=8 {
        let q = catalog::extended_e(k);
        let (a, b) = catalog::extended_e_blocks(k);
        for block in [&a, &b] {
            for &i in block.iter() {
                for &j in block.iter() {
                    assert_eq!(q.get(i, j), 0);
                }
            }
        }
        assert_eq!(a.len() + b.len() + 1, q.n());
    }
}

#[test]
fn extended_e_classification() {
    for k in 6..=8 {
        assert_eq!(classify(&catalog::extended_e(k), &cfg()).unwrap(), TypeLabel::ExtendedAffineE(k));
    }
}

#[test]
fn x6_class_has_five_members() {
    assert_eq!(enumerate_class(&catalog::x6(), &cfg()).unwrap().len(), 5);
    assert_eq!(classify(&catalog::x6(), &cfg()).unwrap(), TypeLabel::X6);
}

#[test]
fn x7_triple_mutation_moves_double_arrows() {
    let q = catalog::x7();
    let r = q.apply(&MutationSequence::new(vec![0, 1, 2])).unwrap();
    assert_eq!(canonical_form(&r), canonical_form(&q));
    let mut doubles: Vec<(usize, usize)> =
        r.diagram().arrows.iter().filter(|a| a.double).map(|a| (a.tail.min(a.head), a.tail.max(a.head))).collect();
    doubles.sort_unstable();
    assert_eq!(doubles, vec![(0, 1), (3, 6), (4, 5)]);
    assert_eq!(classify(&q, &cfg()).unwrap(), TypeLabel::X7);
}

#[test]
fn double_arrow_affine_representatives() {
    for k in 6..=8 {
        assert!(same_class(&catalog::affine_e_tree(k), &catalog::affine_e_double(k)), "E{k}");
        assert_eq!(classify(&catalog::affine_e_double(k), &cfg()).unwrap(), TypeLabel::AffineE(k));
    }
    for n in 4..=7 {
        assert!(same_class(&catalog::affine_d_tree(n), &catalog::affine_d_double(n)), "D{n}");
        assert_eq!(classify(&catalog::affine_d_double(n), &cfg()).unwrap(), TypeLabel::AffineD(n));
    }
}

#[test]
fn acyclic_triangle_meets_double_arrow_form() {
    // 1 -> 2 -> 3 with 1 -> 3, against 1 => 3 with 3 -> 2 -> 1
    let acyclic = ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    let double = ExchangeMatrix::from_arrows(3, &[(0, 2, 2), (2, 1, 1), (1, 0, 1)]).unwrap();
    assert!(same_class(&acyclic, &double));
    assert_eq!(classify(&acyclic, &cfg()).unwrap(), TypeLabel::AffineA(2, 1));
}

#[test]
fn dynkin_trees_are_finite_type() {
    for q in [catalog::type_a(5), catalog::type_d(6), catalog::type_e(6), catalog::type_e(7), catalog::type_e(8)] {
        assert_eq!(classify(&q, &cfg()).unwrap(), TypeLabel::FiniteType);
    }
}
