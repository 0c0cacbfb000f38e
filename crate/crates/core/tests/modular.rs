mod common;

use common::*;
use sfi_core::graph::{bouquet, cycle_family, read_graph, FairGraph, GraphParam};
use sfi_core::loops::{branching_multiplicity, LoopAlgebra, LoopVector};
use sfi_core::modular::*;
use sfi_core::scalar::quantum_int_from_delta;
use sfi_core::{Error, QScalar};

fn example_graphs() -> Vec<(FairGraph, &'static str)> {
    vec![
        (bouquet(1, param(2).into()).unwrap(), "v"),
        (cycle_family(3, param(2)).unwrap(), "v0"),
    ]
}

#[test]
fn left_inner_equals_right_inner_against_modular() {
    for (g, base) in example_graphs() {
        let a = LoopAlgebra::new(&g, base).unwrap();
        for n in 0..=4 {
            let loops = a.enumerate_loops(n);
            for x in &loops {
                let x = LoopVector::basis(x);
                let dx = apply_modular(&a, &x);
                for y in &loops {
                    let y = LoopVector::basis(y);
                    assert_eq!(left_inner(&a, &x, &y).unwrap(), right_inner(&a, &y, &dx).unwrap());
                }
            }
        }
    }
}

#[test]
fn loop_basis_orthonormality() {
    for (g, base) in example_graphs() {
        let a = LoopAlgebra::new(&g, base).unwrap();
        for n in 0..=4 {
            let loops = a.enumerate_loops(n);
            for (i, l) in loops.iter().enumerate() {
                let x = LoopVector::basis(l);
                let xs = x.scale(&a.loop_half_weight(&l.edges));
                for (j, m) in loops.iter().enumerate() {
                    let y = LoopVector::basis(m);
                    let ys = y.scale(&a.loop_half_weight(&m.edges));
                    let kron = QScalar::from_int((i == j) as i64);
                    assert_eq!(left_inner(&a, &x, &y).unwrap(), kron);
                    assert_eq!(right_inner(&a, &xs, &ys).unwrap(), kron);
                }
            }
        }
    }
}

#[test]
fn modular_operator_is_diagonal_in_loop_weights() {
    for (g, base) in example_graphs() {
        let a = LoopAlgebra::new(&g, base).unwrap();
        for n in 0..=4 {
            let d = modular_operator(&a, n);
            let loops = a.enumerate(n);
            for (i, l) in loops.iter().enumerate() {
                let w: QScalar = l.iter().map(|&e| g.edge(e).weight()).product();
                assert_eq!(*d.get(i, i), w);
            }
        }
    }
}

#[test]
fn dimension_bounds_and_decomposition_on_corpus() {
    for (name, g) in valid_corpus_graphs() {
        let a = LoopAlgebra::at(&g, 0);
        let delta = g.delta();
        for n in 0..=5 {
            let count = QScalar::from_int(a.loop_count(n) as i64);
            assert!(count <= delta.pow(2 * n as i32), "{name} n={n}");
            let t = trace_bounds(&a, n);
            assert!(t.pass, "{name} n={n}: {t:?}");
            if g.vertices().len() == 1 {
                assert_eq!(t.trace, delta.pow(n as i32), "{name} n={n}");
            }
        }
        let dims: Vec<u64> = (0..=4).map(|k| a.isotypic_dim(k).unwrap() as u64).collect();
        for (k, &dim) in dims.iter().enumerate() {
            let bound = quantum_int_from_delta(k as u32 + 1, &delta).pow(2);
            assert!(QScalar::from_int(dim as i64) <= bound, "{name} k={k}: {dim} > {bound}");
        }
        for n in 0..=4 {
            let total: u64 = (0..=n).map(|k| branching_multiplicity(n, k) * dims[k]).sum();
            assert_eq!(total, a.loop_count(n) as u64, "{name} n={n}");
        }
    }
}

#[test]
fn branching_multiplicities_are_ballot_numbers() {
    // mult(n, k) = C(n, (n-k)/2) - C(n, (n-k)/2 - 1) when n - k is even.
    let binom = |n: u64, k: i64| -> u64 {
        if k < 0 || k as u64 > n {
            return 0;
        }
        (0..k as u64).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    for n in 0..=10usize {
        for k in 0..=n {
            let expected = if (n - k) % 2 == 0 {
                let j = ((n - k) / 2) as i64;
                binom(n as u64, j) - binom(n as u64, j - 1)
            } else {
                0
            };
            assert_eq!(branching_multiplicity(n, k), expected, "n={n} k={k}");
        }
    }
}

#[test]
fn cycle_spectra() {
    for n in [2usize, 3, 4] {
        let g = cycle_family(n, param(2)).unwrap();
        let a = LoopAlgebra::new(&g, "v0").unwrap();
        let lambda = q(1, 4).pow(n as i32);
        let s = spectrum_exact(&a).unwrap();
        assert_eq!(s.kind, SpectrumKind::Cyclic);
        assert_eq!(s.lambda, Some(lambda.clone()));
        assert_eq!(classify_type(&s), FactorType::IIILambda { lambda });
        let brute = spectrum_bruteforce(&a, 12).unwrap();
        assert!(brute.agrees_with(&s).unwrap(), "n={n}");
        for v in g.vertices() {
            let other = LoopAlgebra::new(&g, v).unwrap();
            assert!(spectrum_exact(&other).unwrap().agrees_with(&s).unwrap());
        }
    }
}

#[test]
fn dense_spectrum() {
    let bytes = std::fs::read(example_path("dense_bouquet.json")).unwrap();
    let g = read_graph(&bytes).unwrap();
    let a = LoopAlgebra::new(&g, "v").unwrap();
    let s = spectrum_exact(&a).unwrap();
    assert_eq!((s.kind, s.rank), (SpectrumKind::Dense, 2));
    assert_eq!(classify_type(&s), FactorType::III1);
    assert!(spectrum_bruteforce(&a, 2).unwrap().agrees_with(&s).unwrap());
}

#[test]
fn flat_and_unit_weight_graphs_are_tracial() {
    let flat = cycle_family(5, param(1)).unwrap();
    let b2 = bouquet(2, GraphParam::Delta(q(4, 1))).unwrap();
    for g in [flat, b2] {
        let a = LoopAlgebra::at(&g, 0);
        assert!(is_tracial(&a).unwrap());
        assert!(modular_is_identity(&a, 4));
    }
}

#[test]
fn dimension_function_graphs_are_tracial() {
    for (name, g) in dimension_function_graphs() {
        let file = read_graph(&std::fs::read(example_path(name)).unwrap()).unwrap();
        assert_eq!(file, g, "{name} differs from its rebuild");
        for v in 0..g.vertices().len() {
            let a = LoopAlgebra::at(&g, v);
            let s = spectrum_exact(&a).unwrap();
            assert!(s.is_trivial(), "{name}");
            assert_eq!(classify_type(&s), FactorType::II1);
            assert!(modular_is_identity(&a, 4), "{name}");
        }
    }
}

#[test]
fn invalid_horizon_is_rejected() {
    let g = cycle_family(3, param(2)).unwrap();
    let a = LoopAlgebra::new(&g, "v0").unwrap();
    assert!(matches!(spectrum_bruteforce(&a, 0), Err(Error::InvalidParam(_))));
}

#[test]
fn quantum_group_spectra() {
    let (s, kac) = qg_spectrum(&vec![q(1, 1); 4]).unwrap();
    assert!(s.is_trivial() && kac);
    assert_eq!(classify_type(&s), FactorType::II1);
    let (s, kac) = qg_spectrum(&[q(2, 1), q(1, 2)]).unwrap();
    assert_eq!((s.kind, s.lambda.clone(), kac), (SpectrumKind::Cyclic, Some(q(1, 2)), false));
    let (s, _) = qg_spectrum(&[q(2, 1), q(1, 2), q(3, 1), q(1, 3)]).unwrap();
    assert_eq!(classify_type(&s), FactorType::III1);
    assert!(matches!(qg_spectrum(&[q(2, 1), q(1, 1)]), Err(Error::Precondition(_))));
    assert!(matches!(qg_spectrum(&[q(-1, 1), q(-1, 1)]), Err(Error::Precondition(_))));
    assert!(matches!(qg_spectrum(&[]), Err(Error::Precondition(_))));
}
