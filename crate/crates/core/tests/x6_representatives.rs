//! Admissible vectors of every X6 representative, obtained by carrying the
//! ray `a (-1, 0, 0, 0, 0, 2)` of the catalog labeling along each witness.

use mutfin_core::*;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn boxed(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let x = (code % side) as i64 - r;
                code /= side;
                x
            })
            .collect()
    })
}

#[test]
fn every_representative_has_one_admissible_ray() {
    let x6 = catalog::x6();
    let ray = x6.with_coefficients(&CoefficientVector::new(vec![-1, 0, 0, 0, 0, 2])).unwrap();
    let class = enumerate_class(&x6, &cfg()).unwrap();
    assert_eq!(class.len(), 5);
    let mut dec = Decider::new(cfg());
    let mut rays = Vec::new();
    for (_, path) in class.members() {
        let rep = x6.apply(path).unwrap();
        // mutation is linear on vectors with a fixed sign pattern, so a >= 0 scales the image
        let v = ray.apply(path).unwrap().coefficients(0).unwrap().into_inner();
        let peak = v.iter().map(|x| x.abs()).max().unwrap();
        for b in boxed(6, 2) {
            let expected = (0..=2 / peak).any(|a| b.iter().zip(&v).all(|(x, y)| *x == a * y));
            let e = rep.with_coefficients(&CoefficientVector::new(b.clone())).unwrap();
            let verdict = dec.decide(&e).unwrap();
            assert_eq!(verdict.is_admissible(), expected, "path {:?}, b = {b:?}", path.as_slice());
            match fast_admissible(&e, &cfg()).unwrap() {
                FastVerdict::Unknown => {}
                fast => assert_eq!(fast == FastVerdict::Admissible, expected, "fast, b = {b:?}"),
            }
        }
        rays.push((path.as_slice().to_vec(), v));
    }
    // derived rays, keyed by witness from the catalog labeling
    let recorded: Vec<(Vec<usize>, Vec<i64>)> = vec![
        (vec![], vec![-1, 0, 0, 0, 0, 2]),
        (vec![0], vec![1, -1, 0, -1, 0, 1]),
        (vec![5], vec![1, 0, 0, 0, 0, -2]),
        (vec![0, 1], vec![0, 1, -1, -1, 0, 1]),
        (vec![0, 5], vec![1, -1, 1, -1, 1, -1]),
    ];
    assert_eq!(rays, recorded);
}
