use std::fmt;

use crate::exactalg::{Field, FieldContext, Matrix, MultiPoly, Scalar, MAX_VARS};

use super::presets::{dihedral_minimal_polynomial, MAX_DIHEDRAL_ORDER};
use super::CoxeterError;

/// Which family a datum belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupType {
    A,
    B,
    D,
    /// Dihedral group of order `2m`.
    I2(u32),
    Custom(String),
}

impl GroupType {
    pub fn parse(label: &str) -> Option<GroupType> {
        match label {
            "A" | "a" => Some(GroupType::A),
            "B" | "b" | "C" | "c" => Some(GroupType::B),
            "D" | "d" => Some(GroupType::D),
            "I2" | "i2" | "I" | "i" => Some(GroupType::I2(0)),
            _ => None,
        }
    }
}

/// A realization of a finite irreducible Coxeter group in coordinates
/// `x1..xl` of the dual space.
#[derive(Clone)]
pub struct CoxeterDatum {
    group_type: GroupType,
    rank: usize,
    field: Field,
    /// `A = (I*(X_i, X_j))`.
    gram: Matrix<Scalar>,
    /// One normalized linear form per reflecting hyperplane.
    hyperplanes: Vec<Vec<Scalar>>,
    /// Generator `s` acts by the substitution `x_i -> sum_j s[i][j] x_j`.
    generators: Vec<Matrix<Scalar>>,
    exponents: Vec<u32>,
    coxeter_number: u32,
}

impl fmt::Debug for CoxeterDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterDatum")
            .field("label", &self.label())
            .field("exponents", &self.exponents)
            .finish()
    }
}

/// Scales a nonzero form so its first nonzero coefficient is one.
pub fn normalize_form(form: &[Scalar]) -> Result<Vec<Scalar>, CoxeterError> {
    let lead = form
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| CoxeterError::InvalidDatum("zero hyperplane form".into()))?;
    let inv = lead.inv()?;
    Ok(form.iter().map(|c| c * &inv).collect())
}

impl CoxeterDatum {
    /// Assembles and checks a datum from explicit data.
    ///
    /// Checks: symmetric nonsingular Gram matrix, `h = m_l + 1`,
    /// `#hyperplanes = sum m_j = l h / 2`, a unique exponent equal to one
    /// (irreducibility), and for each generator: involution, isometry of the
    /// Gram matrix, and stability of the hyperplane set.
    pub fn new(
        group_type: GroupType,
        field: Field,
        gram: Matrix<Scalar>,
        hyperplanes: Vec<Vec<Scalar>>,
        generators: Vec<Matrix<Scalar>>,
        exponents: Vec<u32>,
    ) -> Result<CoxeterDatum, CoxeterError> {
        let rank = gram.rows();
        if rank == 0 || rank > MAX_VARS {
            return Err(CoxeterError::RankOutOfRange(format!("rank {rank} outside 1..={MAX_VARS}")));
        }
        if !gram.is_square() {
            return Err(CoxeterError::InvalidDatum("Gram matrix is not square".into()));
        }
        if !gram.is_symmetric() {
            return Err(CoxeterError::InvalidDatum("Gram matrix is not symmetric".into()));
        }
        if gram.det()?.is_zero() {
            return Err(CoxeterError::InvalidDatum("Gram matrix is singular".into()));
        }
        let mut exponents = exponents;
        if exponents.len() != rank {
            return Err(CoxeterError::InvalidDatum(format!("{} exponents for rank {rank}", exponents.len())));
        }
        exponents.sort_unstable();
        if exponents.iter().filter(|&&m| m == 1).count() != 1 {
            return Err(CoxeterError::InvalidDatum(
                "exactly one exponent must equal 1 (irreducible group)".into(),
            ));
        }
        let coxeter_number = exponents[rank - 1] + 1;
        let total: u32 = exponents.iter().sum();
        if total as usize != hyperplanes.len() || 2 * total != rank as u32 * coxeter_number {
            return Err(CoxeterError::InvalidDatum(format!(
                "{} hyperplanes, exponent sum {total}, rank*h/2 = {}",
                hyperplanes.len(),
                rank as u32 * coxeter_number / 2
            )));
        }
        let mut forms = Vec::with_capacity(hyperplanes.len());
        for h in &hyperplanes {
            if h.len() != rank {
                return Err(CoxeterError::InvalidDatum("hyperplane form of wrong length".into()));
            }
            let n = normalize_form(h)?;
            if forms.contains(&n) {
                return Err(CoxeterError::InvalidDatum("repeated hyperplane".into()));
            }
            forms.push(n);
        }
        if generators.is_empty() {
            return Err(CoxeterError::InvalidDatum("no generators".into()));
        }
        let one = Scalar::one(&field);
        let id = Matrix::identity_like(rank, &one);
        for (g, s) in generators.iter().enumerate() {
            if s.rows() != rank || s.cols() != rank {
                return Err(CoxeterError::InvalidDatum(format!("generator {g} has wrong size")));
            }
            if s.mul(s) != id {
                return Err(CoxeterError::InvalidDatum(format!("generator {g} is not an involution")));
            }
            if s.mul(&gram).mul(&s.transpose()) != gram {
                return Err(CoxeterError::InvalidDatum(format!(
                    "generator {g} does not preserve the Gram matrix"
                )));
            }
            for f in &forms {
                let image = normalize_form(&apply_to_form(s, f))?;
                if !forms.contains(&image) {
                    return Err(CoxeterError::InvalidDatum(format!(
                        "generator {g} does not permute the hyperplanes"
                    )));
                }
            }
        }
        let datum = CoxeterDatum {
            group_type,
            rank,
            field,
            gram,
            hyperplanes: forms,
            generators,
            exponents,
            coxeter_number,
        };
        let q = datum.anti_invariant_q();
        for (g, s) in datum.generators.iter().enumerate() {
            if q.subst_linear(s)? != -&q {
                return Err(CoxeterError::InvalidDatum(format!(
                    "generator {g} is not a reflection: Q is not anti-invariant"
                )));
            }
        }
        Ok(datum)
    }

    pub fn group_type(&self) -> &GroupType {
        &self.group_type
    }

    /// Short identifier such as `B2` or `I2(5)`.
    pub fn label(&self) -> String {
        match &self.group_type {
            GroupType::A => format!("A{}", self.rank),
            GroupType::B => format!("B{}", self.rank),
            GroupType::D => format!("D{}", self.rank),
            GroupType::I2(m) => format!("I2({m})"),
            GroupType::Custom(name) => name.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gram(&self) -> &Matrix<Scalar> {
        &self.gram
    }

    pub fn hyperplane_forms(&self) -> &[Vec<Scalar>] {
        &self.hyperplanes
    }

    /// Hyperplane forms as degree-one polynomials.
    pub fn hyperplane_polys(&self) -> Vec<MultiPoly> {
        self.hyperplanes.iter().map(|f| MultiPoly::linear(f)).collect()
    }

    pub fn generators(&self) -> &[Matrix<Scalar>] {
        &self.generators
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    /// `Q`, the product of all hyperplane forms.
    pub fn anti_invariant_q(&self) -> MultiPoly {
        let mut q = MultiPoly::one(&self.field, self.rank);
        for f in &self.hyperplanes {
            q = &q * &MultiPoly::linear(f);
        }
        q
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.field, self.rank, i)
    }
}

/// Coefficients of `alpha(s x)` for a form `alpha`: `s^T alpha`.
pub fn apply_to_form(s: &Matrix<Scalar>, form: &[Scalar]) -> Vec<Scalar> {
    let n = form.len();
    (0..n)
        .map(|j| {
            let mut acc = Scalar::zero(form[0].field());
            for (i, a) in form.iter().enumerate() {
                acc = &acc + &(a * s.get(i, j));
            }
            acc
        })
        .collect()
}

fn int(field: &Field, n: i64) -> Scalar {
    Scalar::from_int(field, n)
}

fn unit_form(field: &Field, n: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(field); n];
    for &(i, c) in entries {
        v[i] = &v[i] + &int(field, c);
    }
    v
}

fn swap_matrix(field: &Field, n: usize, a: usize, b: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| {
        let src = if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        };
        int(field, i64::from(src == j))
    })
}

/// Builds one of the built-in realizations.
///
/// `n` is the rank for types A, B, D and the order parameter `m` for I2.
pub fn build_datum(group_type: &GroupType, n: u32) -> Result<CoxeterDatum, CoxeterError> {
    match group_type {
        GroupType::A => build_a(n as usize),
        GroupType::B => build_b(n as usize),
        GroupType::D => build_d(n as usize),
        GroupType::I2(_) => build_i2(n),
        GroupType::Custom(name) => Err(CoxeterError::UnsupportedType(format!(
            "{name}: custom groups are read from an invariants file"
        ))),
    }
}

fn check_rank(n: usize, min: usize, what: &str) -> Result<(), CoxeterError> {
    if n < min || n > MAX_VARS {
        Err(CoxeterError::RankOutOfRange(format!("{what} requires rank in {min}..={MAX_VARS}, got {n}")))
    } else {
        Ok(())
    }
}

/// `A_l` in the hyperplane `x_1 + ... + x_{l+1} = 0` with coordinates
/// `X_i = x_i|_V`, so `A = (delta_ij - 1/(l+1))`. Rank one is realized on an
/// orthonormal line instead.
fn build_a(l: usize) -> Result<CoxeterDatum, CoxeterError> {
    check_rank(l, 1, "type A")?;
    let q = FieldContext::rationals();
    if l == 1 {
        return CoxeterDatum::new(
            GroupType::A,
            q.clone(),
            Matrix::identity_like(1, &Scalar::one(&q)),
            vec![vec![Scalar::one(&q)]],
            vec![Matrix::from_rows(vec![vec![int(&q, -1)]])],
            vec![1],
        );
    }
    let denom = l as i64 + 1;
    let gram = Matrix::from_fn(l, l, |i, j| Scalar::from_ratio(&q, i64::from(i == j) * denom - 1, denom));
    let mut forms = Vec::new();
    for i in 0..=l {
        for j in i + 1..=l {
            if j < l {
                forms.push(unit_form(&q, l, &[(i, 1), (j, -1)]));
            } else {
                // x_i - x_{l+1} = X_i + sum_k X_k
                let mut entries: Vec<(usize, i64)> = (0..l).map(|k| (k, 1)).collect();
                entries.push((i, 1));
                forms.push(unit_form(&q, l, &entries));
            }
        }
    }
    let mut gens: Vec<Matrix<Scalar>> = (0..l - 1).map(|i| swap_matrix(&q, l, i, i + 1)).collect();
    // transposition (l, l+1): X_l -> -sum X_k
    gens.push(Matrix::from_fn(
        l,
        l,
        |i, j| {
            if i == l - 1 {
                int(&q, -1)
            } else {
                int(&q, i64::from(i == j))
            }
        },
    ));
    CoxeterDatum::new(GroupType::A, q, gram, forms, gens, (1..=l as u32).collect())
}

fn signed_pair_forms(field: &Field, l: usize) -> Vec<Vec<Scalar>> {
    let mut forms = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            forms.push(unit_form(field, l, &[(i, 1), (j, -1)]));
            forms.push(unit_form(field, l, &[(i, 1), (j, 1)]));
        }
    }
    forms
}

fn build_b(l: usize) -> Result<CoxeterDatum, CoxeterError> {
    check_rank(l, 1, "type B")?;
    let q = FieldContext::rationals();
    let mut forms: Vec<Vec<Scalar>> = (0..l).map(|i| unit_form(&q, l, &[(i, 1)])).collect();
    forms.extend(signed_pair_forms(&q, l));
    let mut gens: Vec<Matrix<Scalar>> = (0..l - 1).map(|i| swap_matrix(&q, l, i, i + 1)).collect();
    gens.push(Matrix::from_fn(l, l, |i, j| {
        int(
            &q,
            if i != j {
                0
            } else if i == l - 1 {
                -1
            } else {
                1
            },
        )
    }));
    let exps = (1..=l as u32).map(|j| 2 * j - 1).collect();
    CoxeterDatum::new(GroupType::B, q.clone(), Matrix::identity_like(l, &Scalar::one(&q)), forms, gens, exps)
}

fn build_d(l: usize) -> Result<CoxeterDatum, CoxeterError> {
    check_rank(l, 3, "type D")?;
    let q = FieldContext::rationals();
    let forms = signed_pair_forms(&q, l);
    let mut gens: Vec<Matrix<Scalar>> = (0..l - 1).map(|i| swap_matrix(&q, l, i, i + 1)).collect();
    // (x_{l-1}, x_l) -> (-x_l, -x_{l-1})
    gens.push(Matrix::from_fn(l, l, |i, j| {
        if i >= l - 2 && j >= l - 2 {
            int(&q, -i64::from(i != j))
        } else {
            int(&q, i64::from(i == j))
        }
    }));
    let mut exps: Vec<u32> = (1..l as u32).map(|j| 2 * j - 1).collect();
    exps.push(l as u32 - 1);
    CoxeterDatum::new(GroupType::D, q.clone(), Matrix::identity_like(l, &Scalar::one(&q)), forms, gens, exps)
}

/// `2cos(n * pi/(2m))` as an integer polynomial in `c = 2cos(pi/(2m))`.
fn chebyshev_value(c: &Scalar, n: u32) -> Scalar {
    let field = c.field();
    let (mut prev, mut cur) = (int(field, 2), c.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(c * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The field `Q(2cos(pi/(2m)))` with `cos(k pi/m)` and `sin(k pi/m)`.
pub struct DihedralField {
    pub field: Field,
    generator: Scalar,
    m: u32,
}

impl DihedralField {
    pub fn new(m: u32) -> Result<Self, CoxeterError> {
        let coeffs = dihedral_minimal_polynomial(m).ok_or_else(|| {
            CoxeterError::RankOutOfRange(format!("I2(m) requires 3 <= m <= {MAX_DIHEDRAL_ORDER}, got {m}"))
        })?;
        let field = FieldContext::from_integer_coeffs(coeffs, &format!("2cos(pi/{})", 2 * m))?;
        let generator = Scalar::generator(&field);
        Ok(DihedralField { field, generator, m })
    }

    /// `cos(k pi / m)`.
    pub fn cos(&self, k: u32) -> Scalar {
        let half = Scalar::from_ratio(&self.field, 1, 2);
        &chebyshev_value(&self.generator, 2 * k) * &half
    }

    /// `sin(k pi / m)` for `0 <= k <= m`.
    pub fn sin(&self, k: u32) -> Scalar {
        let half = Scalar::from_ratio(&self.field, 1, 2);
        let n = (i64::from(self.m) - 2 * i64::from(k)).unsigned_abs() as u32;
        &chebyshev_value(&self.generator, n) * &half
    }
}

fn build_i2(m: u32) -> Result<CoxeterDatum, CoxeterError> {
    if m < 3 {
        return Err(CoxeterError::RankOutOfRange(format!(
            "I2(m) requires m >= 3 (m = 2 is reducible), got {m}"
        )));
    }
    let df = DihedralField::new(m)?;
    let f = df.field.clone();
    // mirror lines at angles k pi/m; alpha_k = -sin x + cos y
    let forms: Vec<Vec<Scalar>> = (0..m).map(|k| vec![-df.sin(k), df.cos(k)]).collect();
    let zero = Scalar::zero(&f);
    let one = Scalar::one(&f);
    let s0 = Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero, -&one]]);
    let (c2, s2) = (df.cos(2), df.sin(2));
    let s1 = Matrix::from_rows(vec![vec![c2.clone(), s2.clone()], vec![s2, -&c2]]);
    CoxeterDatum::new(
        GroupType::I2(m),
        f.clone(),
        Matrix::identity_like(2, &one),
        forms,
        vec![s0, s1],
        vec![1, m - 1],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_forms_and_exponents() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        assert_eq!(d.hyperplane_forms().len(), 4);
        assert_eq!(d.exponents(), &[1, 3]);
        assert_eq!(d.coxeter_number(), 4);
        let rendered: Vec<String> = d.hyperplane_polys().iter().map(|p| p.render()).collect();
        assert_eq!(rendered, vec!["x1", "x2", "x1 - x2", "x1 + x2"]);
    }

    #[test]
    fn a1_is_a_point_pair() {
        let d = build_datum(&GroupType::A, 1).unwrap();
        assert_eq!(d.hyperplane_forms().len(), 1);
        assert_eq!(d.exponents(), &[1]);
        assert_eq!(d.coxeter_number(), 2);
        assert_eq!(d.anti_invariant_q().render(), "x1");
    }

    #[test]
    fn i2_5_over_quartic_field() {
        let d = build_datum(&GroupType::I2(0), 5).unwrap();
        assert_eq!(d.hyperplane_forms().len(), 5);
        assert_eq!(d.exponents(), &[1, 4]);
        assert_eq!(d.coxeter_number(), 5);
        assert_eq!(d.field().degree(), 4);
    }

    #[test]
    fn a2_gram_entries() {
        let d = build_datum(&GroupType::A, 2).unwrap();
        let q = d.field().clone();
        assert_eq!(d.gram().get(0, 0), &Scalar::from_ratio(&q, 2, 3));
        assert_eq!(d.gram().get(0, 1), &Scalar::from_ratio(&q, -1, 3));
        assert_eq!(d.hyperplane_forms().len(), 3);
    }

    #[test]
    fn b2_q_and_reflection() {
        let d = build_datum(&GroupType::B, 2).unwrap();
        let q = d.anti_invariant_q();
        let (x, y) = (d.var(0), d.var(1));
        assert_eq!(q, &(&(&x * &y) * &(&x - &y)) * &(&x + &y));
        let swap = swap_matrix(d.field(), 2, 0, 1);
        assert_eq!(q.subst_linear(&swap).unwrap(), -&q);
    }

    #[test]
    fn builtin_counts_and_isometries() {
        let mut data = Vec::new();
        for l in 1..=4 {
            data.push(build_datum(&GroupType::A, l).unwrap());
            data.push(build_datum(&GroupType::B, l).unwrap());
        }
        for l in 3..=5 {
            data.push(build_datum(&GroupType::D, l).unwrap());
        }
        for m in 3..=12 {
            data.push(build_datum(&GroupType::I2(m), m).unwrap());
        }
        for d in &data {
            let l = d.rank() as u32;
            let sum: u32 = d.exponents().iter().sum();
            assert_eq!(d.hyperplane_forms().len() as u32, sum, "{}", d.label());
            assert_eq!(2 * sum, l * d.coxeter_number(), "{}", d.label());
            let id = Matrix::identity_like(d.rank(), &Scalar::one(d.field()));
            for s in d.generators() {
                assert_eq!(s.mul(s), id);
                assert_eq!(&s.mul(d.gram()).mul(&s.transpose()), d.gram());
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(build_datum(&GroupType::D, 2), Err(CoxeterError::RankOutOfRange(_))));
        assert!(matches!(build_datum(&GroupType::I2(2), 2), Err(CoxeterError::RankOutOfRange(_))));
        assert!(matches!(build_datum(&GroupType::B, 0), Err(CoxeterError::RankOutOfRange(_))));
        assert!(matches!(build_datum(&GroupType::I2(13), 13), Err(CoxeterError::RankOutOfRange(_))));
        assert!(matches!(
            build_datum(&GroupType::Custom("H3".into()), 3),
            Err(CoxeterError::UnsupportedType(_))
        ));
    }

    #[test]
    fn dihedral_trig_identities() {
        for m in 3..=12 {
            let df = DihedralField::new(m).unwrap();
            let one = Scalar::one(&df.field);
            for k in 0..m {
                let (c, s) = (df.cos(k), df.sin(k));
                assert_eq!(&(&c * &c) + &(&s * &s), one, "m={m} k={k}");
            }
            assert_eq!(df.cos(m), -&one);
        }
    }

    #[test]
    fn rejects_reducible_custom_exponents() {
        let q = FieldContext::rationals();
        let one = Scalar::one(&q);
        let gens = vec![
            Matrix::from_rows(vec![vec![-&one, Scalar::zero(&q)], vec![Scalar::zero(&q), one.clone()]]),
            Matrix::from_rows(vec![vec![one.clone(), Scalar::zero(&q)], vec![Scalar::zero(&q), -&one]]),
        ];
        let forms = vec![unit_form(&q, 2, &[(0, 1)]), unit_form(&q, 2, &[(1, 1)])];
        let err = CoxeterDatum::new(
            GroupType::Custom("A1xA1".into()),
            q.clone(),
            Matrix::identity_like(2, &one),
            forms,
            gens,
            vec![1, 1],
        );
        assert!(matches!(err, Err(CoxeterError::InvalidDatum(_))));
    }
}
