use crate::straighten::{derive_correspondence, relabel, straighten_fork};
use crate::{
    fix_signs, map_between, straighten, straighten_with, Certificate, Circuit, CliffordGate, ExactOracle, Label,
    LabelPerm, StraightenOptions, TernaryTree,
};

#[test]
fn certificate_text_survives_a_round_trip() {
    for seed in 0..10 {
        let tree = TernaryTree::random(6, seed).unwrap();
        let result = fix_signs(&tree, &straighten(&tree));
        let text = Certificate::from(&result).to_string();
        let parsed: Certificate = text.parse().unwrap();
        let checked = parsed.check(&tree).unwrap();
        assert_eq!(checked.signs, result.signs);
        assert_eq!(checked.leaf_of_rank, result.leaf_of_rank);
        assert!(ExactOracle::new().check(&tree, &checked).unwrap().passed());
    }
}

#[test]
fn step_checking_on_the_full_tree() {
    let tree = TernaryTree::full_ternary(2).unwrap();
    let options = StraightenOptions {
        check_steps: true,
        materialize_swaps: true,
    };
    let r = straighten_with(&tree, options);
    assert_eq!(r.permutation, (1..=13).collect::<Vec<_>>());
    r.verify(&tree).unwrap();
}

#[test]
fn relabel_then_straighten_fork_composes() {
    let tree: TernaryTree = "(q1 :x (q2 :z (q3)) :y (q4))".parse().unwrap();
    let (c1, t1) = relabel(&tree, 2, LabelPerm::swap(Label::X, Label::Y)).unwrap();
    let (c2, t2) = straighten_fork(&t1, 1).unwrap();
    assert!(t2.is_z_chain());
    let mut circuit = c1;
    circuit.append(&c2).unwrap();
    let r = derive_correspondence(&tree, &circuit, &t2.chain_order().unwrap()).unwrap();
    assert_eq!(r.signs.len(), 9);
}

#[test]
fn mapping_chain_to_binary_tree_is_exact() {
    let a = TernaryTree::jw_chain(3).unwrap();
    let b: TernaryTree = "(q1 :x (q2) :y (q3))".parse().unwrap();
    let mapping = map_between(&a, &b).unwrap();
    mapping.verify(&a, &b).unwrap();
    let oracle = ExactOracle::new();
    let u = oracle.unitary(&mapping.circuit, 3).unwrap();
    let targets: Vec<_> = b.generators().strings().cloned().collect();
    for (la, lb, sign) in &mapping.correspondence {
        let image = oracle.conjugate_by(&u, a.generators().get(*la).unwrap()).unwrap();
        assert_eq!(image, targets[lb - 1].clone().with_phase((*sign).into()));
    }
}

#[test]
fn larger_random_trees_stay_valid() {
    let tree = TernaryTree::random(50, 1).unwrap();
    assert!(tree.generators().check().is_valid());
    assert_eq!(TernaryTree::random(5, 7).unwrap(), TernaryTree::random(5, 7).unwrap());
    let r = straighten(&tree);
    r.verify(&tree).unwrap();
    assert!(r.circuit.count_cz() <= 50 * 50);
}

#[test]
fn appending_a_gate_breaks_verification() {
    let tree: TernaryTree = "(q1 :x (q2) :y (q3))".parse().unwrap();
    let mut r = straighten(&tree);
    let mut gates = r.circuit.gates().to_vec();
    gates.push(CliffordGate::Cz(1, 2));
    r.circuit = Circuit::from_gates(3, gates).unwrap();
    assert!(r.verify(&tree).is_err());
    assert!(!ExactOracle::new().check(&tree, &r).unwrap().passed());
}
