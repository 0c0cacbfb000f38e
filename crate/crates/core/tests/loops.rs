mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use sfi_core::graph::{bouquet, cycle_family, FairGraph};
use sfi_core::linalg::Matrix;
use sfi_core::loops::{LoopAlgebra, LoopVector};
use sfi_core::tl::{TLMorphism, TemperleyLieb};
use sfi_core::QScalar;

fn example_graphs() -> Vec<(&'static str, FairGraph)> {
    vec![
        ("bouquet", bouquet(1, param(2).into()).unwrap()),
        ("cycle3", cycle_family(3, param(2)).unwrap()),
    ]
}

fn basepoint(name: &str) -> &'static str {
    if name == "bouquet" {
        "v"
    } else {
        "v0"
    }
}

/// Matrix of a linear map on loop vectors, columns indexed by loops of
/// length `n`, rows by loops of length `m`.
fn matrix_of(a: &LoopAlgebra<'_>, n: usize, m: usize, f: impl Fn(&LoopVector) -> LoopVector) -> Matrix<QScalar> {
    let cols = a.enumerate(n);
    let rows = a.enumerate(m);
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (j, l) in cols.iter().enumerate() {
        let mut x = LoopVector::zero(a.base(), n);
        x.add_term(l.clone(), QScalar::one());
        let y = f(&x);
        for (k, v) in y.terms() {
            let i = rows.iter().position(|r| r.as_slice() == k).unwrap();
            out.set(i, j, v.clone());
        }
    }
    out
}

fn scale(m: &Matrix<QScalar>, c: &QScalar) -> Matrix<QScalar> {
    let rows = m.to_rows().into_iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
    Matrix::from_rows(rows)
}

#[test]
fn loop_counts_match_adjacency_powers() {
    for (name, g) in valid_corpus_graphs() {
        for v in 0..g.vertices().len() {
            let a = LoopAlgebra::at(&g, v);
            for n in 0..=6 {
                assert_eq!(a.loop_count(n) as u128, closed_walks(&g, v, n), "{name} v={v} n={n}");
            }
        }
    }
}

#[test]
fn turnbacks_match_tl_action() {
    for (name, g) in example_graphs() {
        let a = LoopAlgebra::new(&g, basepoint(name)).unwrap();
        for n in 0..=5 {
            for i in 1..n {
                let f = TLMorphism::identity(i - 1)
                    .tensor(&TLMorphism::cup())
                    .tensor(&TLMorphism::identity(n - i - 1));
                let direct = matrix_of(&a, n, n - 2, |x| a.cup(i, x).unwrap());
                assert_eq!(direct, a.operator_matrix(&f).unwrap(), "{name} cup {i} on {n}");
            }
            for i in 0..=n {
                let f = TLMorphism::identity(i)
                    .tensor(&TLMorphism::cap())
                    .tensor(&TLMorphism::identity(n - i));
                let direct = matrix_of(&a, n, n + 2, |x| a.cap(i, x).unwrap());
                assert_eq!(direct, a.operator_matrix(&f).unwrap(), "{name} cap {i} on {n}");
            }
        }
    }
}

#[test]
fn turnback_matrices_satisfy_tl_relations() {
    for (name, g) in example_graphs() {
        let a = LoopAlgebra::new(&g, basepoint(name)).unwrap();
        let d = a.delta();
        for n in 2..=5 {
            let cup: Vec<_> = (1..n).map(|i| matrix_of(&a, n, n - 2, |x| a.cup(i, x).unwrap())).collect();
            let cap: Vec<_> = (0..n - 1)
                .map(|i| matrix_of(&a, n - 2, n, |x| a.cap(i, x).unwrap()))
                .collect();
            // e_i = cap(i-1) ∘ cup(i)
            let e: Vec<_> = (0..n - 1).map(|k| cap[k].mul(&cup[k])).collect();
            let tl = TemperleyLieb::new(d.clone());
            for k in 0..e.len() {
                assert_eq!(e[k], a.operator_matrix(&tl.generator(k + 1, n).unwrap()).unwrap());
                assert_eq!(e[k].mul(&e[k]), scale(&e[k], &d), "{name} n={n}");
                for l in 0..e.len() {
                    if k.abs_diff(l) == 1 {
                        assert_eq!(e[k].mul(&e[l]).mul(&e[k]), e[k]);
                    } else if k.abs_diff(l) > 1 {
                        assert_eq!(e[k].mul(&e[l]), e[l].mul(&e[k]));
                    }
                }
            }
            // Removing the arc just inserted closes a circle; removing a
            // neighbouring arc straightens a zigzag.
            let m = n - 2;
            for i in 0..=m {
                let c = matrix_of(&a, m, m + 2, |x| a.cap(i, x).unwrap());
                let circle = matrix_of(&a, m + 2, m, |x| a.cup(i + 1, x).unwrap()).mul(&c);
                assert_eq!(circle, scale(&Matrix::identity(a.loop_count(m)), &d));
                if i >= 1 {
                    let z = matrix_of(&a, m + 2, m, |x| a.cup(i, x).unwrap()).mul(&c);
                    assert!(z.is_identity());
                }
                if i + 2 <= m + 1 {
                    let z = matrix_of(&a, m + 2, m, |x| a.cup(i + 2, x).unwrap()).mul(&c);
                    assert!(z.is_identity());
                }
            }
        }
    }
}

#[test]
fn action_is_functorial() {
    let mut rng = rng(2024);
    for (name, g) in example_graphs() {
        let a = LoopAlgebra::new(&g, basepoint(name)).unwrap();
        let tl = TemperleyLieb::new(a.delta());
        for trial in 0..100 {
            let par = rng.gen_range(0..2usize);
            let mut deg = || par + 2 * rng.gen_range(0..=(5 - par) / 2);
            let (n, m, k) = (deg(), deg(), deg());
            let f = random_morphism(&mut rng, m, k, 3);
            let h = random_morphism(&mut rng, n, m, 3);
            let x = random_loop_vector(&mut rng, &a, n, 4);
            let lhs = a.tl_act(&tl.compose(&f, &h).unwrap(), &x).unwrap();
            let rhs = a.tl_act(&f, &a.tl_act(&h, &x).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{name} trial {trial}: {n}→{m}→{k}");
        }
    }
}

#[test]
fn identity_acts_trivially() {
    let g = cycle_family(3, param(2)).unwrap();
    let a = LoopAlgebra::new(&g, "v0").unwrap();
    for n in 0..=5 {
        assert!(a.operator_matrix(&TLMorphism::identity(n)).unwrap().is_identity());
    }
}

#[test]
fn out_of_range_turnbacks_are_errors() {
    let g = bouquet(1, param(2).into()).unwrap();
    let a = LoopAlgebra::new(&g, "v").unwrap();
    let x = a.vector(&["e", "ebar"]).unwrap();
    assert!(a.cup(0, &x).is_err());
    assert!(a.cup(2, &x).is_err());
    assert!(a.cap(3, &x).is_err());
    assert!(a.tl_act(&TLMorphism::identity(3), &x).is_err());
    assert!(a.vector(&["e", "e"]).is_ok());
    assert!(a.vector(&["nope"]).is_err());
}

fn random_loop(rng: &mut rand_chacha::ChaCha8Rng, a: &LoopAlgebra<'_>, n: usize) -> Vec<usize> {
    let loops = a.enumerate(n);
    loops[rng.gen_range(0..loops.len())].clone()
}

proptest! {
    #[test]
    fn cycle_loop_weight_is_a_winding_power(seed in any::<u64>(), n in 0usize..8, cyc in 2usize..5) {
        // On the n-cycle forward edges weigh 1/4 and backward ones 4, so a
        // loop weighs 4^-(forward - backward), and that difference is a
        // multiple of n.
        let g = cycle_family(cyc, param(2)).unwrap();
        let a = LoopAlgebra::new(&g, "v0").unwrap();
        if a.loop_count(n) == 0 {
            return Ok(());
        }
        let mut rng = rng(seed);
        let l = random_loop(&mut rng, &a, n);
        let ids = a.loop_ids(&l);
        let fwd = ids.iter().filter(|s| s.starts_with('f')).count() as i32;
        let bwd = ids.len() as i32 - fwd;
        prop_assert_eq!((fwd - bwd) % cyc as i32, 0);
        prop_assert_eq!(a.loop_weight(&l), q(4, 1).pow(bwd - fwd));
    }

    #[test]
    fn loop_star_is_an_antimultiplicative_involution(seed in any::<u64>(), m in 0usize..4, n in 0usize..4) {
        let g = bouquet(1, param(2).into()).unwrap();
        let a = LoopAlgebra::new(&g, "v").unwrap();
        let mut rng = rng(seed);
        let x = random_loop_vector(&mut rng, &a, m, 3);
        let y = random_loop_vector(&mut rng, &a, n, 3);
        let lhs = a.star(&a.multiply(&x, &y).unwrap()).unwrap();
        let rhs = a.multiply(&a.star(&y).unwrap(), &a.star(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.star(&a.star(&x).unwrap()).unwrap(), x);
    }
}
