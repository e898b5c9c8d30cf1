//! Minimal polynomials of `2cos(pi/(2m))` for the dihedral realizations.

/// `(m, coefficients lowest degree first)`.
const DIHEDRAL_MINIMAL_POLYNOMIALS: &[(u32, &[i64])] = &[
    (3, &[-3, 0, 1]),
    (4, &[2, 0, -4, 0, 1]),
    (5, &[5, 0, -5, 0, 1]),
    (6, &[1, 0, -4, 0, 1]),
    (7, &[-7, 0, 14, 0, -7, 0, 1]),
    (8, &[2, 0, -16, 0, 20, 0, -8, 0, 1]),
    (9, &[-3, 0, 9, 0, -6, 0, 1]),
    (10, &[1, 0, -12, 0, 19, 0, -8, 0, 1]),
    (11, &[-11, 0, 55, 0, -77, 0, 44, 0, -11, 0, 1]),
    (12, &[1, 0, -16, 0, 20, 0, -8, 0, 1]),
];

pub const MAX_DIHEDRAL_ORDER: u32 = 12;

pub fn dihedral_minimal_polynomial(m: u32) -> Option<&'static [i64]> {
    DIHEDRAL_MINIMAL_POLYNOMIALS.iter().find(|(k, _)| *k == m).map(|(_, c)| *c)
}
