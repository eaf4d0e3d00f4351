use congruence_core::invariants::{
    cayley_class, check_agen, check_bgen, classify_p4, clebsch_h, congruence_sectional_genus, decompose_x,
    integrality_gate, multiplicity_k, parasitic_excess, triple_points_p4,
};

#[test]
fn rows_are_self_consistent() {
    for r in classify_p4() {
        assert_eq!(multiplicity_k(r.h, r.m), r.k);
        assert_eq!(cayley_class(r.h, r.m).unwrap(), r.a);
        assert_eq!(clebsch_h(r.m, r.pi).unwrap(), r.h);
        assert_eq!(parasitic_excess(r.m, r.k, r.a, 4).unwrap(), r.x);
        assert!(check_bgen(1, r.a as u64, 0, r.x as u64, &[(r.k as u64, r.m as u64)]));
        assert!(check_agen(&[(3, r.k as u64)], 1, r.a as u64, true));
        assert!(!decompose_x(r.x as u64, 4).is_empty() || r.x == 0);
    }
}

#[test]
fn gate_matches_rows_with_unique_h() {
    assert_eq!(integrality_gate(4).unwrap(), Some(3));
    assert_eq!(integrality_gate(6).unwrap(), Some(7));
    assert_eq!(integrality_gate(7).unwrap(), None);
    assert_eq!(integrality_gate(8).unwrap(), None);
    assert!(integrality_gate(5).is_err());
}

#[test]
fn known_surfaces() {
    // projected Veronese, Bordiga, elliptic quintic scroll
    assert_eq!(triple_points_p4(4, 0, 1), 1);
    assert_eq!(triple_points_p4(6, 3, 1), 1);
    assert_eq!(triple_points_p4(5, 1, 0), 0);
    assert_eq!(congruence_sectional_genus(0, 2).unwrap(), 1);
    assert_eq!(congruence_sectional_genus(3, 8).unwrap(), 10);
}
