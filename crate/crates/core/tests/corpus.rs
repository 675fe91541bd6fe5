use std::path::PathBuf;

use qscheme::linalg::Matrix;
use qscheme::regularize::find_legs;
use qscheme::suite::{load_corpus, run_suite, CorpusEntry};
use qscheme::weyl::{coxeter_order, reflect_param};
use qscheme::{QuiverMult, Trunc};

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")).unwrap()
}

fn get(name: &str) -> QuiverMult {
    corpus().into_iter().find(|e| e.name == format!("{name}.quiver")).unwrap().quiver
}

#[test]
fn example_cartan_matrices() {
    for d in [2i64, 3] {
        let c = get(&format!("example_i_d{d}")).cartan().c;
        assert_eq!(c, Matrix::from_rows(vec![vec![2, -d, -1], vec![-1, 2, 0], vec![-1, 0, 2]], 3).unwrap());
        let c = get(&format!("example_ii_d{d}")).cartan().c;
        assert_eq!(c, Matrix::from_rows(vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-d, 0, 2]], 3).unwrap());
    }
}

#[test]
fn example_i_orders_and_parameters() {
    for d in [2usize, 3] {
        let q = get(&format!("example_i_d{d}"));
        assert_eq!(coxeter_order(&q, 0, 2).unwrap(), Some(3));
        assert_eq!(coxeter_order(&q, 1, 2).unwrap(), Some(2));
        let lam = vec![Trunc::from_ints(&[5]), Trunc::from_ints(&vec![1; d]), Trunc::from_ints(&[7])];
        let out = reflect_param(&q, 0, &lam).unwrap();
        let mut want_j = vec![1; d];
        want_j[d - 1] += d as i64 * 5;
        assert_eq!(out[1], Trunc::from_ints(&want_j));
        assert_eq!(out[2], Trunc::from_ints(&[12]));
        assert_eq!(out[0], Trunc::from_ints(&[-5]));
    }
    assert_eq!(coxeter_order(&get("affine_a1"), 0, 1).unwrap(), None);
}

#[test]
fn legs_of_regularization_examples() {
    for name in ["star_n2_d4", "star_n3_d2", "star_n3_d3", "star_n4_d4"] {
        let q = get(name);
        let legs = find_legs(&q);
        assert_eq!(legs.len(), 1, "{name}");
        assert_eq!(legs[0].names(&q), vec!["b0", "p"]);
    }
    for name in ["double_leg_n4_d2", "double_leg_n5_d3", "double_leg_n4_d4"] {
        assert_eq!(find_legs(&get(name)).len(), 2, "{name}");
    }
    assert!(find_legs(&get("a3")).is_empty());
}

#[test]
fn suites_are_deterministic() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let a = run_suite("functor", &dir, 9, 4).unwrap();
    let b = run_suite("functor", &dir, 9, 4).unwrap();
    assert!(a.passed(), "{a}");
    assert_eq!(a, b);
    assert_eq!(qscheme::io::to_string(&a.to_json()), qscheme::io::to_string(&b.to_json()));
}
