//! The Virasoro case: Kac charges `α_{rs}`, the Z2 spin field `Φ_{1/2,0}`,
//! degenerate fusion and the Potts and O(n) critical lines.
//!
//! Conventions: `Q = (b⁻¹ − b)/2`, `c = 1 − 24Q²`, `h_α = α(α − 2Q)` and
//! `α_{rs} = (1 − r)b⁻¹/2 − (1 − s)b/2`. The reflection `α → 2Q − α` acts as
//! `(r, s) → (−r, −s)`.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{as_i64, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VirCharge {
    pub r: Rational,
    pub s: Rational,
}

impl VirCharge {
    pub fn new(r: Rational, s: Rational) -> Self {
        Self { r, s }
    }

    pub fn from_ints(r: i64, s: i64) -> Self {
        Self::new(int(r), int(s))
    }

    /// `α` as a Laurent polynomial in `b`.
    pub fn alpha(&self) -> LaurentPoly {
        let half = rat(1, 2);
        LaurentPoly::from_terms([
            (-1, (Rational::one() - &self.r) * &half),
            (1, -(Rational::one() - &self.s) * &half),
        ])
    }

    /// `2Q − α`
    pub fn reflected(&self) -> Self {
        Self::new(-self.r.clone(), -self.s.clone())
    }
}

impl fmt::Display for VirCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// Same field for generic `b`: equal or reflected indices.
pub fn vir_equivalent(a: &VirCharge, b: &VirCharge) -> bool {
    a == b || *a == b.reflected()
}

pub fn vir_background() -> LaurentPoly {
    (&LaurentPoly::b_inv() - &LaurentPoly::b()).scale(&rat(1, 2))
}

/// `c = 1 − 24 Q²`
pub fn vir_c() -> LaurentPoly {
    &LaurentPoly::constant(int(1)) - &vir_background().pow(2).scale(&int(24))
}

/// `h_{rs} = ((r b⁻¹ − s b)² − (b⁻¹ − b)²) / 4`
pub fn vir_h(r: &Rational, s: &Rational) -> LaurentPoly {
    let rs = LaurentPoly::from_terms([(-1, r.clone()), (1, -s.clone())]);
    let one = &LaurentPoly::b_inv() - &LaurentPoly::b();
    (&rs.pow(2) - &one.pow(2)).scale(&rat(1, 4))
}

/// `h = α (α − 2Q)`
pub fn vir_h_of(charge: &VirCharge) -> LaurentPoly {
    let a = charge.alpha();
    let two_q = vir_background().scale(&int(2));
    &a * &(&a - &two_q)
}

/// The spin field `Φ_{1/2,0}`.
pub fn vir_spin() -> VirCharge {
    VirCharge::new(rat(1, 2), int(0))
}

fn check_degenerate(r: i64, s: i64) -> Result<()> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidIndices(format!("({r}, {s})")));
    }
    Ok(())
}

/// `Φ_{rs} × V_α = Σ_{j<r, k<s} V_{α + ((1−r)/2 + j) b⁻¹ − ((1−s)/2 + k) b}`.
pub fn vir_fuse_deg_generic(r: i64, s: i64, alpha: &VirCharge) -> Result<Vec<VirCharge>> {
    check_degenerate(r, s)?;
    let mut out = Vec::with_capacity((r * s) as usize);
    for j in 0..r {
        for k in 0..s {
            out.push(VirCharge::new(
                &alpha.r - int(1 - r + 2 * j),
                &alpha.s - int(1 - s + 2 * k),
            ));
        }
    }
    Ok(out)
}

/// Charges `α` for which a nontrivial term of `Φ_{rs} × V_α` is the
/// reflection of `α`.
pub fn vir_fixed_points(r: i64, s: i64) -> Result<Vec<VirCharge>> {
    check_degenerate(r, s)?;
    let mut out = Vec::new();
    for j in 0..r {
        for k in 0..s {
            let (dr, ds) = (1 - r + 2 * j, 1 - s + 2 * k);
            if dr == 0 && ds == 0 {
                continue;
            }
            // α − d = −α
            let c = VirCharge::new(rat(dr, 2), rat(ds, 2));
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Does `V_β × V_β` contain `Φ_{rs}` for `β = Φ_{1/2,0}`?
///
/// Decided through `Φ_{rs} × V_β ∋ V_β` up to reflection.
pub fn vir_in_spin_fusion(r: i64, s: i64) -> Result<bool> {
    let spin = vir_spin();
    Ok(vir_fuse_deg_generic(r, s, &spin)?
        .iter()
        .any(|t| vir_equivalent(t, &spin)))
}

/// Generalised Z2 charge `q̃ = s − 1`, reduced mod 2. It does not depend on `r`.
pub fn vir_z2(_r: i64, s: i64) -> u8 {
    (s - 1).rem_euclid(2) as u8
}

/// Z2 charge in the model with `b² = p/p′`.
pub fn vir_z2_model(r: i64, s: i64, p: i64, p_prime: i64) -> u8 {
    let q = if p % 2 == 0 {
        r - 1
    } else if p_prime % 2 == 0 {
        s - 1
    } else {
        r + s
    };
    q.rem_euclid(2) as u8
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirSectorRow {
    pub r: i64,
    pub s: i64,
    pub z2: u8,
    pub allowed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirSectorReport {
    pub cutoff: i64,
    pub rows: Vec<VirSectorRow>,
}

impl VirSectorReport {
    /// Every field is allowed exactly when it is Z2-neutral.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|row| row.allowed == (row.z2 == 0))
    }
}

pub fn vir_sector_check(cutoff: i64) -> Result<VirSectorReport> {
    if cutoff < 1 {
        return Err(Error::Parse(format!("cutoff must be at least 1, got {cutoff}")));
    }
    let mut rows = Vec::new();
    for r in 1..=cutoff {
        for s in 1..=cutoff {
            rows.push(VirSectorRow {
                r,
                s,
                z2: vir_z2(r, s),
                allowed: vir_in_spin_fusion(r, s)?,
            });
        }
    }
    Ok(VirSectorReport { cutoff, rows })
}

/// Degenerate fields of the model `b² = p/p′` equivalent to `charge`, found
/// through `(r, s) → (r + u p, s + u p′)` and reflection.
pub fn vir_specialize(charge: &VirCharge, p: i64, p_prime: i64) -> Result<Vec<(i64, i64)>> {
    let model = crate::models::RationalModel::new(p, p_prime)?;
    let (p, q) = (model.p(), model.p_prime());
    let mut out = Vec::new();
    for c in [charge.clone(), charge.reflected()] {
        for r in 1..p {
            let u = (int(r) - &c.r) / int(p);
            let Some(s) = as_i64(&(&c.s + &u * int(q))) else {
                continue;
            };
            if (1..q).contains(&s) && !out.contains(&(r, s)) {
                out.push((r, s));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VirCurveRow {
    pub b: f64,
    pub c: f64,
    pub h_spin: f64,
    pub h21: f64,
    pub h13: f64,
    pub h12: f64,
    /// `√𝒬 = −2 cos π b²`
    pub sqrt_potts_q: f64,
    /// `n = −2 cos π/b²`
    pub loop_n: f64,
    pub potts_branch: &'static str,
    pub on_branch: &'static str,
}

pub fn potts_branch(b: f64) -> &'static str {
    let lo = 0.5f64.sqrt();
    let hi = 1.5f64.sqrt();
    if b <= lo || b >= hi {
        "extended"
    } else if b < 1.0 {
        "critical"
    } else if b > 1.0 {
        "tricritical"
    } else {
        "critical-tricritical"
    }
}

pub fn on_branch(b: f64) -> &'static str {
    if b < 0.5f64.sqrt() {
        "extended"
    } else if b < 1.0 {
        "dilute"
    } else if b > 1.0 {
        "dense"
    } else {
        "dilute-dense"
    }
}

pub fn vir_curves(grid: &[f64]) -> Result<Vec<VirCurveRow>> {
    let c = vir_c();
    let spin = vir_h_of(&vir_spin());
    let h21 = vir_h(&int(2), &int(1));
    let h13 = vir_h(&int(1), &int(3));
    let h12 = vir_h(&int(1), &int(2));
    grid.iter()
        .map(|&b| {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::NonPositiveB(b));
            }
            Ok(VirCurveRow {
                b,
                c: c.eval(b),
                h_spin: spin.eval(b),
                h21: h21.eval(b),
                h13: h13.eval(b),
                h12: h12.eval(b),
                sqrt_potts_q: -2.0 * (PI * b * b).cos(),
                loop_n: -2.0 * (PI / (b * b)).cos(),
                potts_branch: potts_branch(b),
                on_branch: on_branch(b),
            })
        })
        .collect()
}

/// `8 h_σ (h_ε + 1) − (2 h_ε − h_ε²)` with `ε = Φ13`; zero on the O(n) curve.
pub fn on_curve_residual() -> LaurentPoly {
    let hs = vir_h_of(&vir_spin());
    let he = vir_h(&int(1), &int(3));
    let one = LaurentPoly::constant(int(1));
    let lhs = (&hs * &(&he + &one)).scale(&int(8));
    let rhs = &he.scale(&int(2)) - &he.pow(2);
    &lhs - &rhs
}

/// `2 h_σ (2 h_ε + 1) − (h_ε − h_ε²)` with `ε = Φ21`; zero on the Potts curve.
pub fn potts_curve_residual() -> LaurentPoly {
    let hs = vir_h_of(&vir_spin());
    let he = vir_h(&int(2), &int(1));
    let one = LaurentPoly::constant(int(1));
    let lhs = (&hs * &(&he.scale(&int(2)) + &one)).scale(&int(2));
    let rhs = &he - &he.pow(2);
    &lhs - &rhs
}

/// `3 h13 − (8 h12 + 1)`; zero on the half line.
pub fn half_line_residual() -> LaurentPoly {
    let h13 = vir_h(&int(1), &int(3));
    let h12 = vir_h(&int(1), &int(2));
    &h13.scale(&int(3)) - &(&h12.scale(&int(8)) + &LaurentPoly::constant(int(1)))
}

/// `dh_ε / dh_σ` along the O(n) curve at `b²`, exact.
pub fn on_curve_slope(b2: &Rational) -> Option<Rational> {
    let hs = vir_h_of(&vir_spin()).derivative();
    let he = vir_h(&int(1), &int(3)).derivative();
    // Both derivatives are odd in b; their ratio is the ratio of b·d/db.
    let num = he.eval_times_b_at_b2(b2)?;
    let den = hs.eval_times_b_at_b2(b2)?;
    (!den.is_zero()).then(|| num / den)
}
