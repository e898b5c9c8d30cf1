mod common;

#[test]
fn field_axioms_hold() {
    common::field_axioms(0x0f1e_1d00).unwrap();
}

#[test]
fn exact_divide_inverts_multiplication() {
    common::exact_divide_round_trip(0x0d1f_0001).unwrap();
}

#[test]
fn adjugate_gives_inverse() {
    common::adjugate_inverse(0x0ad1_0002).unwrap();
}

#[test]
fn substitution_round_trips() {
    common::substitution_round_trip(0x5b57_0003).unwrap();
}
