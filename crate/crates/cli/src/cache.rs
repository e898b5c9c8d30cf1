//! Content-addressed store for `D^k[X]` tables under `COXSAITO_CACHE_DIR`.
//!
//! The key hashes everything the tables depend on: the field, the Gram
//! matrix, the hyperplane forms and the invariants.

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use coxsaito::exactalg::{FactoredFraction, Field, Monomial, MultiPoly, Scalar};
use coxsaito::saito::SaitoContext;

const FORMAT: &str = "coxsaito-dkx-v1";

#[derive(Serialize, Deserialize)]
struct Term {
    exponents: Vec<u32>,
    coefficient: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Fraction {
    numerator: Vec<Term>,
    factors: Vec<(Vec<Term>, u32)>,
    scalar: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Table {
    format: String,
    key: String,
    dkx: Vec<(usize, Vec<Fraction>)>,
}

fn scalar_out(c: &Scalar) -> Vec<String> {
    c.coeffs().iter().map(ToString::to_string).collect()
}

fn scalar_in(field: &Field, c: &[String]) -> Option<Scalar> {
    let coeffs = c.iter().map(|s| s.parse::<BigRational>().ok()).collect::<Option<Vec<_>>>()?;
    (coeffs.len() == field.degree()).then(|| Scalar::from_coeffs(field, coeffs))
}

fn poly_out(p: &MultiPoly) -> Vec<Term> {
    p.terms().map(|(m, c)| Term { exponents: m.exponents(p.nvars()), coefficient: scalar_out(&c) }).collect()
}

fn poly_in(field: &Field, nvars: usize, terms: &[Term]) -> Option<MultiPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponents.len() != nvars || t.exponents.iter().any(|&e| e > u32::from(u16::MAX)) {
            return None;
        }
        out.push((Monomial::from_exponents(&t.exponents), scalar_in(field, &t.coefficient)?));
    }
    Some(MultiPoly::from_terms(field, nvars, out))
}

fn fraction_out(f: &FactoredFraction) -> Fraction {
    Fraction {
        numerator: poly_out(f.numerator()),
        factors: f.denominator_factors().iter().map(|(p, e)| (poly_out(p), *e)).collect(),
        scalar: scalar_out(f.denominator_scalar()),
    }
}

fn fraction_in(field: &Field, nvars: usize, f: &Fraction) -> Option<FactoredFraction> {
    let num = poly_in(field, nvars, &f.numerator)?;
    let factors =
        f.factors.iter().map(|(p, e)| Some((poly_in(field, nvars, p)?, *e))).collect::<Option<Vec<_>>>()?;
    FactoredFraction::new(num, factors, scalar_in(field, &f.scalar)?).ok()
}

pub fn cache_key(ctx: &SaitoContext) -> String {
    let d = ctx.datum();
    let mut h = Sha256::new();
    h.update(FORMAT.as_bytes());
    h.update(d.field().render_minimal_polynomial().as_bytes());
    for (_, _, g) in d.gram().entries() {
        h.update(g.render(false).as_bytes());
        h.update(b";");
    }
    for form in d.hyperplane_forms() {
        for c in form {
            h.update(c.render(false).as_bytes());
            h.update(b",");
        }
        h.update(b";");
    }
    for p in ctx.invariants().polys() {
        h.update(p.render().as_bytes());
        h.update(b";");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct DiskCache {
    path: PathBuf,
    key: String,
}

impl DiskCache {
    pub fn new(dir: &Path, ctx: &SaitoContext) -> Self {
        let key = cache_key(ctx);
        DiskCache { path: dir.join(format!("{key}.json")), key }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Seeds `ctx` from the stored table. Returns the number of tables
    /// loaded; unreadable or mismatched files are ignored.
    pub fn load(&self, ctx: &SaitoContext) -> usize {
        let Ok(text) = fs::read_to_string(&self.path) else {
            return 0;
        };
        let Ok(table) = serde_json::from_str::<Table>(&text) else {
            return 0;
        };
        if table.format != FORMAT || table.key != self.key {
            return 0;
        }
        let field = ctx.datum().field();
        let l = ctx.rank();
        let mut loaded = 0;
        for (k, row) in &table.dkx {
            let Some(values) = row.iter().map(|f| fraction_in(field, l, f)).collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if ctx.seed_dkx(*k, values).is_ok() {
                loaded += 1;
            }
        }
        loaded
    }

    pub fn store(&self, ctx: &SaitoContext) -> std::io::Result<()> {
        let table = Table {
            format: FORMAT.to_string(),
            key: self.key.clone(),
            dkx: ctx
                .computed_dkx()
                .into_iter()
                .map(|(k, v)| (k, v.iter().map(fraction_out).collect()))
                .collect(),
        };
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&table).expect("table serializes"))?;
        fs::rename(tmp, &self.path)
    }
}
