mod common;

use proptest::prelude::*;
use zx_core::diagram::{make_generator, tensor};
use zx_core::semantics::{evaluate, evaluate_float, matrices_equal, Comparison, ExactMatrix, Matrix};
use zx_core::{CycloNumber, Diagram, Generator};

fn transpose(m: &ExactMatrix) -> ExactMatrix {
    let (r, c) = (m.rows(), m.cols());
    let data = (0..c * r).map(|i| m.get(i % r, i / r).clone()).collect();
    Matrix::from_rows(c, r, data).unwrap()
}

fn hadamards(n: usize) -> ExactMatrix {
    let h = evaluate(&make_generator(Generator::H, 1, 1).unwrap()).unwrap();
    (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(&h))
}

fn exact_eq(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    matrices_equal(a, b, Comparison::Exact).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn words_evaluate_layer_by_layer(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let w = common::Word::random(&mut r, 4, 4);
        prop_assert!(exact_eq(&evaluate(&w.diagram()).unwrap(), &w.matrix()));
    }

    #[test]
    fn tensor_is_kron(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let a = common::random_diagram(&mut r, 4);
        let b = common::random_diagram(&mut r, 4);
        let lhs = evaluate(&tensor(&a, &b)).unwrap();
        let rhs = evaluate(&a).unwrap().kron(&evaluate(&b).unwrap());
        prop_assert!(exact_eq(&lhs, &rhs));
    }

    #[test]
    fn composition_is_matmul(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let a = common::random_diagram(&mut r, 4);
        let mut b = common::random_diagram(&mut r, 4);
        while b.n_inputs() != a.n_outputs() {
            b = common::random_diagram(&mut r, 4);
        }
        let lhs = evaluate(&a.then(&b).unwrap()).unwrap();
        let rhs = evaluate(&b).unwrap().matmul(&evaluate(&a).unwrap()).unwrap();
        prop_assert!(exact_eq(&lhs, &rhs));
    }

    #[test]
    fn only_topology_matters(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = common::random_diagram(&mut r, 6);
        let m = evaluate(&d).unwrap();
        prop_assert!(exact_eq(&m, &evaluate(&common::relabel(&mut r, &d)).unwrap()));
        let back = Diagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert!(exact_eq(&m, &evaluate(&back).unwrap()));
    }

    #[test]
    fn flipping_transposes(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = common::random_diagram(&mut r, 5);
        prop_assert!(exact_eq(&evaluate(&d.flipped()).unwrap(), &transpose(&evaluate(&d).unwrap())));
    }

    #[test]
    fn colour_swap_conjugates_by_hadamards(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = common::random_diagram(&mut r, 5);
        let m = evaluate(&d).unwrap();
        let want = hadamards(d.n_outputs()).matmul(&m).unwrap().matmul(&hadamards(d.n_inputs())).unwrap();
        prop_assert!(exact_eq(&evaluate(&d.colour_swapped()).unwrap(), &want));
    }

    #[test]
    fn float_backend_tracks_exact(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let d = common::random_diagram(&mut r, 6);
        let e = evaluate(&d).unwrap().to_float();
        let f = evaluate_float(&d).unwrap();
        prop_assert!(e.max_abs_diff(&f).unwrap() < 1e-9);
    }
}

#[test]
fn loops_count_as_two() {
    let mut d = Diagram::empty();
    d.add_loops(3);
    assert_eq!(zx_core::semantics::scalar_of(&d).unwrap(), CycloNumber::from_int(8));
}
