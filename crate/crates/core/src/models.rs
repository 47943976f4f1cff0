//! Rational models `M_{p,p′}` at `b² = p/p′`.
//!
//! A degenerate field of `M_{p,p′}` has positive integer indices with
//! `n1 + n2 < p` and `m1 + m2 < p′`. Each field carries three index sets,
//! related by the rotation
//! `(n1, n2, m1, m2) → (p − n1 − n2, n1, p′ − m1 − m2, m1)`.
//! The lexicographically smallest of the three labels the field.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::charge::{h_of, w_of, weyl_images, KacCharge};
use crate::error::{Error, Result};
use crate::fusion::fuse_deg_deg;
use crate::rational::{as_i64, int, Rational};
use crate::sl3::{WeylElement, WeylLabel, Z3};

pub use crate::charge::generalized_z3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalModel {
    p: i64,
    p_prime: i64,
}

/// Which congruence fixes the Z3 charge of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z3Rule {
    /// `p ≡ 0`: `q = n1 − n2`
    P,
    /// `p′ ≡ 0`: `q = m1 − m2`
    PPrime,
    /// `p + p′ ≡ 0`: `q = (n1 − n2) + (m1 − m2)`
    Sum,
    /// `p − p′ ≡ 0`: `q = (n1 − n2) − (m1 − m2)`
    Difference,
}

impl RationalModel {
    pub fn new(p: i64, p_prime: i64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidModel {
            p,
            p_prime,
            reason: reason.to_string(),
        };
        if p < 1 || p_prime < 1 {
            return Err(invalid("p and p' must be positive"));
        }
        if p.gcd(&p_prime) != 1 {
            return Err(invalid("p and p' must be coprime"));
        }
        Ok(Self { p, p_prime })
    }

    /// The three-state Potts model `M_{4,5}`.
    pub fn potts() -> Self {
        Self { p: 4, p_prime: 5 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p_prime(&self) -> i64 {
        self.p_prime
    }

    pub fn b2(&self) -> Rational {
        Rational::new(self.p.into(), self.p_prime.into())
    }

    pub fn b(&self) -> f64 {
        (self.p as f64 / self.p_prime as f64).sqrt()
    }

    /// `c = 2 − 24 (p − p′)² / (p p′)`
    pub fn central_charge(&self) -> Rational {
        let d = self.p - self.p_prime;
        int(2) - Rational::new((24 * d * d).into(), (self.p * self.p_prime).into())
    }

    pub fn z3_rule(&self) -> Z3Rule {
        let (p, q) = (self.p.rem_euclid(3), self.p_prime.rem_euclid(3));
        if p == 0 {
            Z3Rule::P
        } else if q == 0 {
            Z3Rule::PPrime
        } else if (p + q) % 3 == 0 {
            Z3Rule::Sum
        } else {
            Z3Rule::Difference
        }
    }

    pub fn in_table(&self, [n1, n2, m1, m2]: [i64; 4]) -> bool {
        n1 >= 1
            && n2 >= 1
            && m1 >= 1
            && m2 >= 1
            && n1 + n2 < self.p
            && m1 + m2 < self.p_prime
    }

    pub fn rotate(&self, [n1, n2, m1, m2]: [i64; 4]) -> [i64; 4] {
        [self.p - n1 - n2, n1, self.p_prime - m1 - m2, m1]
    }

    pub fn triple(&self, z: [i64; 4]) -> [[i64; 4]; 3] {
        let a = self.rotate(z);
        [z, a, self.rotate(a)]
    }

    /// The table field whose triple contains these indices, if any.
    pub fn field_of(&self, charge: &KacCharge) -> Option<DegenerateField> {
        let z = integer_indices(charge)?;
        if !self.in_table(z) {
            return None;
        }
        let mut members = self.triple(z);
        members.sort();
        Some(DegenerateField {
            indices: members[0],
            alternates: [members[1], members[2]],
        })
    }

    pub fn field(&self, indices: [i64; 4]) -> Result<DegenerateField> {
        self.field_of(&KacCharge::from_ints(indices[0], indices[1], indices[2], indices[3]))
            .ok_or_else(|| Error::NotInKacTable(format!("{indices:?} in M({}, {})", self.p, self.p_prime)))
    }
}

impl fmt::Display for RationalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {})", self.p, self.p_prime)
    }
}

fn integer_indices(charge: &KacCharge) -> Option<[i64; 4]> {
    let z = charge.indices();
    Some([as_i64(&z[0])?, as_i64(&z[1])?, as_i64(&z[2])?, as_i64(&z[3])?])
}

/// A field of a Kac table: its canonical indices `(n1, n2, m1, m2)` and the
/// two other members of its triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegenerateField {
    pub indices: [i64; 4],
    pub alternates: [[i64; 4]; 2],
}

impl DegenerateField {
    pub fn charge(&self) -> KacCharge {
        let [n1, n2, m1, m2] = self.indices;
        KacCharge::from_ints(n1, n2, m1, m2)
    }

    pub fn members(&self) -> [[i64; 4]; 3] {
        [self.indices, self.alternates[0], self.alternates[1]]
    }
}

impl fmt::Display for DegenerateField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.charge())
    }
}

/// All fields of the Kac table, sorted by canonical indices.
pub fn kac_table(model: &RationalModel) -> Vec<DegenerateField> {
    let mut out = BTreeSet::new();
    for n1 in 1..model.p {
        for n2 in 1..model.p - n1 {
            for m1 in 1..model.p_prime {
                for m2 in 1..model.p_prime - m1 {
                    out.insert(model.field([n1, n2, m1, m2]).expect("index in range"));
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn z3_charge_of(field: &DegenerateField, model: &RationalModel) -> Z3 {
    z3_of_indices(field.indices, model)
}

pub fn z3_of_indices([n1, n2, m1, m2]: [i64; 4], model: &RationalModel) -> Z3 {
    let (dn, dm) = (n1 - n2, m1 - m2);
    Z3::new(match model.z3_rule() {
        Z3Rule::P => dn,
        Z3Rule::PPrime => dm,
        Z3Rule::Sum => dn + dm,
        Z3Rule::Difference => dn - dm,
    })
}

/// `(n1, m1, n2, m2) → (n1 + u p, m1 + u p′, n2 + v p, m2 + v p′)`.
pub fn index_shift(
    charge: &KacCharge,
    u: &Rational,
    v: &Rational,
    model: &RationalModel,
) -> KacCharge {
    let [n1, n2, m1, m2] = charge.indices();
    let p = int(model.p);
    let q = int(model.p_prime);
    KacCharge::new(n1 + u * &p, n2 + v * &p, m1 + u * &q, m2 + v * &q)
}

/// `b (α − Q)` at `b² = p/p′`; equal values mean equal vertex charges.
pub fn scaled_vertex_charge(charge: &KacCharge, model: &RationalModel) -> crate::sl3::Weight {
    charge.scaled_shift_at(&model.b2())
}

/// A way of reaching a table field from a charge: a Weyl image followed by an
/// index shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub weyl: WeylElement,
    pub u: Rational,
    pub v: Rational,
    pub indices: [i64; 4],
    pub field: DegenerateField,
}

fn shift_to(target: i64, n: &Rational, p: i64) -> Rational {
    (int(target) - n) / int(p)
}

/// All Weyl images and shifts taking `charge` into the Kac table of `model`.
pub fn specializations(charge: &KacCharge, model: &RationalModel) -> Vec<Specialization> {
    let mut out = Vec::new();
    for (x, image) in weyl_images(charge) {
        let [n1, n2, m1, m2] = image.indices();
        for k1 in 1..model.p {
            let u = shift_to(k1, &n1, model.p);
            let Some(j1) = as_i64(&(&m1 + &u * int(model.p_prime))) else {
                continue;
            };
            for k2 in 1..model.p - k1 {
                let v = shift_to(k2, &n2, model.p);
                let Some(j2) = as_i64(&(&m2 + &v * int(model.p_prime))) else {
                    continue;
                };
                let z = [k1, k2, j1, j2];
                if let Some(field) = model.field_of(&KacCharge::from_ints(k1, k2, j1, j2)) {
                    out.push(Specialization {
                        weyl: x,
                        u: u.clone(),
                        v,
                        indices: z,
                        field,
                    });
                }
            }
        }
    }
    out
}

/// The table field a charge becomes in `model`. Landings reached without a
/// Weyl image come first, then those through the reflection in `ρ`.
pub fn specialize(charge: &KacCharge, model: &RationalModel) -> Result<Specialization> {
    let rank = |x: &WeylElement| match x.label {
        WeylLabel::Id => 0,
        WeylLabel::S1S2S1 => 1,
        _ => 2,
    };
    specializations(charge, model)
        .into_iter()
        .min_by_key(|s| rank(&s.weyl))
        .ok_or_else(|| Error::NoSpecialization(format!("{charge} in {model}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PottsField {
    pub name: &'static str,
    pub field: DegenerateField,
    pub charge: Z3,
    pub h: Rational,
    /// `b w / (β √3)`, exact at `b² = 4/5`.
    pub w_scaled: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PottsFusion {
    pub left: &'static str,
    pub right: &'static str,
    pub products: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PottsReport {
    pub model: RationalModel,
    pub central_charge: Rational,
    pub fields: Vec<PottsField>,
    pub fusions: Vec<PottsFusion>,
}

impl PottsReport {
    pub fn get(&self, name: &str) -> Option<&PottsField> {
        self.fields.iter().find(|f| f.name == name)
    }
}

const POTTS_NAMES: [(&str, [i64; 4]); 6] = [
    ("1", [1, 1, 1, 1]),
    ("σ", [1, 1, 2, 1]),
    ("σ*", [1, 1, 1, 2]),
    ("ψ", [1, 1, 1, 3]),
    ("ψ*", [1, 1, 3, 1]),
    ("ε", [1, 1, 2, 2]),
];

fn potts_name(field: &DegenerateField) -> &'static str {
    POTTS_NAMES
        .iter()
        .find(|(_, z)| *z == field.indices)
        .map(|(n, _)| *n)
        .expect("every Potts field is named")
}

pub fn potts_content() -> Result<PottsReport> {
    let model = RationalModel::potts();
    let b2 = model.b2();
    let mut fields = Vec::new();
    for field in kac_table(&model) {
        let charge = field.charge();
        fields.push(PottsField {
            name: potts_name(&field),
            field,
            charge: z3_charge_of(&field, &model),
            h: h_of(&charge).eval_at_b2(&b2).expect("even powers"),
            w_scaled: w_of(&charge).eval_times_b_at_b2(&b2).expect("odd powers"),
        });
    }
    fields.sort_by_key(|f| POTTS_NAMES.iter().position(|(n, _)| *n == f.name));
    let mut fusions = Vec::new();
    for (left, right) in [("σ", "σ"), ("σ", "σ*")] {
        let a = model.field(POTTS_NAMES.iter().find(|(n, _)| *n == left).unwrap().1)?;
        let b = model.field(POTTS_NAMES.iter().find(|(n, _)| *n == right).unwrap().1)?;
        let out = fuse_deg_deg(&a.charge(), &b.charge(), Some(&model))?;
        let mut products = Vec::new();
        for term in &out.terms {
            let f = model.field_of(&term.charge).expect("truncated to the table");
            for _ in 0..term.multiplicity {
                products.push(potts_name(&f));
            }
        }
        fusions.push(PottsFusion {
            left,
            right,
            products,
        });
    }
    Ok(PottsReport {
        model,
        central_charge: model.central_charge(),
        fields,
        fusions,
    })
}
