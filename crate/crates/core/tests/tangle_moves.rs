mod common;

use flagtangle_core::flags::GradedSet;
use flagtangle_core::ring::SkeinScalar;
use flagtangle_core::tangle::*;

fn bent_nu(side: &[(SkeinScalar, TangleWord)], right: &GradedSet, left: &GradedSet) -> SkeinVector {
    let target = left.shift(-1).concat(right);
    let mut out = SkeinVector::zero(target);
    for (c, w) in side {
        out.add_scaled(&nu(&bend(w).unwrap()).unwrap(), c).unwrap();
    }
    out
}

fn check(inst: &MoveInstance) {
    let lhs = bent_nu(&inst.lhs, &inst.right, &inst.left);
    let rhs = bent_nu(&inst.rhs, &inst.right, &inst.left);
    assert_eq!(lhs, rhs, "{} {:?}\nlhs:\n{}\nrhs:\n{}", inst.kind, inst.labels, lhs, rhs);
}

#[test]
fn moves_preserve_nu() {
    for kind in MoveKind::ALL {
        for inst in move_instances(kind, -2, 2) {
            check(&inst);
        }
    }
}

#[test]
fn dual_variants_of_moves_preserve_nu() {
    for kind in MoveKind::ALL {
        for inst in move_instances(kind, -2, 2) {
            check(&inst.map_words(dual_v).unwrap());
            check(&inst.map_words(dual_h).unwrap());
            check(&inst.map_words(|w| dual_h(&dual_v(w)?)).unwrap());
        }
    }
}

#[test]
fn perturbed_relations_are_detected() {
    for inst in move_instances(MoveKind::S1, -2, 2) {
        let mut bad = inst.clone();
        bad.lhs[1].0 = -SkeinScalar::q_pow(if (inst.labels[0] - inst.labels[1]) % 2 == 0 { -1 } else { 1 });
        let lhs = bent_nu(&bad.lhs, &bad.right, &bad.left);
        let rhs = bent_nu(&bad.rhs, &bad.right, &bad.left);
        assert_ne!(lhs, rhs, "{:?}", inst.labels);
    }
    for inst in move_instances(MoveKind::R1, -2, 2).into_iter().chain(move_instances(MoveKind::R3, -2, 2)) {
        assert!(!bent_nu(&inst.lhs, &inst.right, &inst.left).is_zero());
    }
    let s2 = move_instance(MoveKind::S2, &[0]);
    let mut bad = s2.clone();
    bad.rhs[0].0 = SkeinScalar::one();
    assert_ne!(bent_nu(&bad.lhs, &bad.right, &bad.left), bent_nu(&bad.rhs, &bad.right, &bad.left));
}
