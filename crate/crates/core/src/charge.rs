//! Coulomb-gas vertex charges in Kac-index form.
//!
//! A charge `α[[n1, m1], [n2, m2]]` has ω-components
//! `α_i = (1 − n_i) b⁻¹ − (1 − m_i) b`, and with the background charge
//! `Q = (b⁻¹ − b) ρ` the shifted charge splits as `α − Q = −b⁻¹ P + b R`
//! with `P = (n1, n2)` and `R = (m1, m2)`. The Weyl group acts linearly on
//! `α − Q`, hence simultaneously on `P` and `R`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{format_rational, int, is_positive_integer, rat, Rational};
use crate::sl3::{conjugate_weight, weyl_elements, Weight, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KacCharge {
    pub n1: Rational,
    pub n2: Rational,
    pub m1: Rational,
    pub m2: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldClass {
    CompletelyDegenerate,
    SemiDegenerateLevelOne,
    Generic,
}

impl FieldClass {
    pub fn name(self) -> &'static str {
        match self {
            FieldClass::CompletelyDegenerate => "completely_degenerate",
            FieldClass::SemiDegenerateLevelOne => "semi_degenerate_level_one",
            FieldClass::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "completely_degenerate" | "degenerate" => Ok(FieldClass::CompletelyDegenerate),
            "semi_degenerate_level_one" | "semi_degenerate" => {
                Ok(FieldClass::SemiDegenerateLevelOne)
            }
            "generic" => Ok(FieldClass::Generic),
            other => Err(Error::Parse(format!("unknown field class {other:?}"))),
        }
    }
}

impl KacCharge {
    /// Indices in `(n1, n2, m1, m2)` order.
    pub fn new(n1: Rational, n2: Rational, m1: Rational, m2: Rational) -> Self {
        Self { n1, n2, m1, m2 }
    }

    pub fn from_ints(n1: i64, n2: i64, m1: i64, m2: i64) -> Self {
        Self::new(int(n1), int(n2), int(m1), int(m2))
    }

    /// From the two-row notation `[[n1, m1], [n2, m2]]`.
    pub fn from_rows(top: (Rational, Rational), bottom: (Rational, Rational)) -> Self {
        Self::new(top.0, bottom.0, top.1, bottom.1)
    }

    /// From the split pair `P = (n1, n2)`, `R = (m1, m2)`.
    pub fn from_split(p: &Weight, r: &Weight) -> Self {
        Self::new(p.a1.clone(), p.a2.clone(), r.a1.clone(), r.a2.clone())
    }

    /// `Φ_{λ,μ}` has indices `n_i = λ_i + 1`, `m_i = μ_i + 1`.
    pub fn degenerate(lam: &Weight, mu: &Weight) -> Self {
        let one = Weight::int(1, 1);
        Self::from_split(&(lam + &one), &(mu + &one))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 1, 1, 1)
    }

    /// The fundamental spin field `[[2/3, 1/3], [-1/3, 1/3]]`.
    pub fn sigma() -> Self {
        Self::new(rat(2, 3), rat(-1, 3), rat(1, 3), rat(1, 3))
    }

    /// `σ′ = [[1, 1/2], [0, 1/2]]`.
    pub fn sigma_prime() -> Self {
        Self::new(int(1), int(0), rat(1, 2), rat(1, 2))
    }

    /// `σ″ = [[1, 2], [1, 1]]`.
    pub fn sigma_double_prime() -> Self {
        Self::from_ints(1, 1, 2, 1)
    }

    /// `ψ = [[1, 1], [1, 3]]`.
    pub fn psi() -> Self {
        Self::from_ints(1, 1, 1, 3)
    }

    /// `ψ′ = [[2, 1], [1, 1]]`.
    pub fn psi_prime() -> Self {
        Self::from_ints(2, 1, 1, 1)
    }

    /// `ε = [[1, 2], [1, 2]]`.
    pub fn epsilon() -> Self {
        Self::from_ints(1, 1, 2, 2)
    }

    pub fn indices(&self) -> [Rational; 4] {
        [
            self.n1.clone(),
            self.n2.clone(),
            self.m1.clone(),
            self.m2.clone(),
        ]
    }

    pub fn from_indices(z: &[Rational]) -> Self {
        Self::new(z[0].clone(), z[1].clone(), z[2].clone(), z[3].clone())
    }

    pub fn p(&self) -> Weight {
        Weight::new(self.n1.clone(), self.n2.clone())
    }

    pub fn r(&self) -> Weight {
        Weight::new(self.m1.clone(), self.m2.clone())
    }

    /// The two ω-components of `α` as Laurent polynomials in `b`.
    pub fn alpha(&self) -> [LaurentPoly; 2] {
        let comp = |n: &Rational, m: &Rational| {
            LaurentPoly::from_terms([(-1, int(1) - n), (1, m - int(1))])
        };
        [comp(&self.n1, &self.m1), comp(&self.n2, &self.m2)]
    }

    /// ω-components of `α − Q = −b⁻¹ P + b R`.
    pub fn shifted(&self) -> [LaurentPoly; 2] {
        let comp = |n: &Rational, m: &Rational| {
            LaurentPoly::from_terms([(-1, -n.clone()), (1, m.clone())])
        };
        [comp(&self.n1, &self.m1), comp(&self.n2, &self.m2)]
    }

    /// Value of `b (α − Q)` at `b² = b2`; exact since only `b⁰, b²` occur.
    pub fn scaled_shift_at(&self, b2: &Rational) -> Weight {
        &self.r().scale(b2) - &self.p()
    }

    pub fn is_integral(&self) -> bool {
        self.indices().iter().all(|x| x.is_integer())
    }

    pub fn has_positive_integer_indices(&self) -> bool {
        self.indices().iter().all(is_positive_integer)
    }
}

impl fmt::Display for KacCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_rational(&self.n1),
            format_rational(&self.m1),
            format_rational(&self.n2),
            format_rational(&self.m2)
        )
    }
}

/// Background charge components `Q = (b⁻¹ − b)(ω1 + ω2)`.
pub fn background_charge() -> [LaurentPoly; 2] {
    let q = &LaurentPoly::b_inv() - &LaurentPoly::b();
    [q.clone(), q]
}

/// Inner product of two ω-component vectors with Laurent entries.
pub fn dot(u: &[LaurentPoly; 2], v: &[LaurentPoly; 2]) -> LaurentPoly {
    let two_thirds = rat(2, 3);
    let third = rat(1, 3);
    (&u[0] * &v[0]).scale(&two_thirds)
        + (&u[0] * &v[1]).scale(&third)
        + (&u[1] * &v[0]).scale(&third)
        + (&u[1] * &v[1]).scale(&two_thirds)
}

/// `c(b) = 50 − 24 b⁻² − 24 b²`.
pub fn central_charge() -> LaurentPoly {
    LaurentPoly::from_terms([(-2, int(-24)), (0, int(50)), (2, int(-24))])
}

/// `c = 2 − 12 Q²`, computed from the background charge vector.
pub fn central_charge_from_background() -> LaurentPoly {
    let q = background_charge();
    LaurentPoly::constant(int(2)) - dot(&q, &q).scale(&int(12))
}

/// `Q² = 2 (b⁻¹ − b)²`.
pub fn background_norm2() -> LaurentPoly {
    let q = background_charge();
    dot(&q, &q)
}

/// `β = 2 / √(8 − 15 Q²)` at numeric `b`.
pub fn beta_at(b: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::NonPositiveB(b));
    }
    let value = 8.0 - 15.0 * background_norm2().eval(b);
    if value <= 0.0 {
        return Err(Error::NonRealBeta { b, value });
    }
    Ok(2.0 / value.sqrt())
}

fn kac_x(charge: &KacCharge) -> (LaurentPoly, LaurentPoly) {
    let x = |n: &Rational, m: &Rational| {
        LaurentPoly::from_terms([(-1, n.clone()), (1, -m.clone())])
    };
    (x(&charge.n1, &charge.m1), x(&charge.n2, &charge.m2))
}

/// Conformal dimension from the Kac formula:
/// `h = [(n1+n2)b⁻¹ − (m1+m2)b]²/4 + [(n1−n2)b⁻¹ − (m1−m2)b]²/12 − (b⁻¹−b)²`.
pub fn h_of(charge: &KacCharge) -> LaurentPoly {
    let (x1, x2) = kac_x(charge);
    let q = &LaurentPoly::b_inv() - &LaurentPoly::b();
    (&x1 + &x2).pow(2).scale(&rat(1, 4)) + (&x1 - &x2).pow(2).scale(&rat(1, 12)) - q.pow(2)
}

/// `h_α = ½ α·(α − 2Q)` evaluated directly on the vertex charge.
pub fn h_from_vertex(charge: &KacCharge) -> LaurentPoly {
    let a = charge.alpha();
    let q = background_charge();
    let a_minus_2q = [
        &a[0] - &q[0].scale(&int(2)),
        &a[1] - &q[1].scale(&int(2)),
    ];
    dot(&a, &a_minus_2q).scale(&rat(1, 2))
}

/// The factor `w / (β√3)`:
/// `(2/27) [(n1−n2)b⁻¹ − (m1−m2)b] [(n1+2n2)b⁻¹ − (m1+2m2)b] [(2n1+n2)b⁻¹ − (2m1+m2)b]`.
pub fn w_of(charge: &KacCharge) -> LaurentPoly {
    let (x1, x2) = kac_x(charge);
    let f1 = &x1 - &x2;
    let f2 = &x1 + &x2.scale(&int(2));
    let f3 = &x1.scale(&int(2)) + &x2;
    (&(&f1 * &f2) * &f3).scale(&rat(2, 27))
}

fn kac_y(charge: &KacCharge, b2: &Rational) -> (Rational, Rational) {
    (&charge.n1 - &charge.m1 * b2, &charge.n2 - &charge.m2 * b2)
}

/// `h_of` at `b² = b2`, computed without Laurent arithmetic.
pub fn h_at_b2(charge: &KacCharge, b2: &Rational) -> Rational {
    let (y1, y2) = kac_y(charge, b2);
    let one_minus = Rational::one() - b2;
    let s = &y1 + &y2;
    let d = &y1 - &y2;
    (&s * &s * rat(1, 4) + &d * &d * rat(1, 12) - &one_minus * &one_minus) / b2
}

/// `b · w_of` at `b² = b2`, computed without Laurent arithmetic.
pub fn w_scaled_at_b2(charge: &KacCharge, b2: &Rational) -> Rational {
    let (y1, y2) = kac_y(charge, b2);
    let f1 = &y1 - &y2;
    let f2 = &y1 + &y2 * int(2);
    let f3 = &y1 * int(2) + &y2;
    f1 * f2 * f3 * rat(2, 27) / b2
}

/// `∏_j (α − Q)·h_j`, the Weyl-invariant cubic built from the weights of `[ω1]`.
/// Equals `−w_of / 2`.
pub fn h_triple_product(charge: &KacCharge) -> LaurentPoly {
    let v = charge.shifted();
    let mut out = LaurentPoly::constant(Rational::one());
    for j in 1..=3 {
        let h = Weight::h(j);
        let hv = [
            LaurentPoly::constant(h.a1.clone()),
            LaurentPoly::constant(h.a2.clone()),
        ];
        out = &out * &dot(&v, &hv);
    }
    out
}

/// `w = β√3 · w_of` at numeric `b`.
pub fn w_numeric(charge: &KacCharge, b: f64) -> Result<f64> {
    let beta = beta_at(b)?;
    Ok(w_of(charge).eval(b) * beta * 3f64.sqrt())
}

/// `x ⋆ α = Q + x(α − Q)`.
pub fn weyl_star(x: &WeylElement, charge: &KacCharge) -> KacCharge {
    KacCharge::from_split(&x.apply(&charge.p()), &x.apply(&charge.r()))
}

/// All six images `x ⋆ α`, paired with `x`.
pub fn weyl_images(charge: &KacCharge) -> Vec<(WeylElement, KacCharge)> {
    weyl_elements()
        .into_iter()
        .map(|x| {
            let img = weyl_star(&x, charge);
            (x, img)
        })
        .collect()
}

/// Whether two charges describe the same field for generic `b`.
pub fn weyl_equivalent(a: &KacCharge, b: &KacCharge) -> Option<WeylElement> {
    weyl_elements().into_iter().find(|x| &weyl_star(x, a) == b)
}

/// `(α1 ω1 + α2 ω2)* = α2 ω1 + α1 ω2`, i.e. `(n1, m1) ↔ (n2, m2)`.
pub fn conjugate(charge: &KacCharge) -> KacCharge {
    KacCharge::from_split(&conjugate_weight(&charge.p()), &conjugate_weight(&charge.r()))
}

/// Classification for generic `b`:
/// completely degenerate iff some Weyl image has four positive integer
/// indices; semi-degenerate at level one iff some image has `(n2, m2) = (1, 1)`.
pub fn classify(charge: &KacCharge) -> FieldClass {
    let images = weyl_images(charge);
    if images.iter().any(|(_, c)| c.has_positive_integer_indices()) {
        return FieldClass::CompletelyDegenerate;
    }
    if images
        .iter()
        .any(|(_, c)| c.n2 == Rational::one() && c.m2 == Rational::one())
    {
        return FieldClass::SemiDegenerateLevelOne;
    }
    FieldClass::Generic
}

/// `q̃ = (n1 − n2) + (m1 − m2)`.
pub fn generalized_z3(charge: &KacCharge) -> Rational {
    (&charge.n1 - &charge.n2) + (&charge.m1 - &charge.m2)
}

/// The Weyl image used as the printed label of a charge: `R` dominant if
/// possible, then `P` dominant, then the lexicographically smallest indices.
pub fn canonical_image(candidates: &[KacCharge]) -> KacCharge {
    fn dominant(w: &Weight) -> bool {
        w.a1 >= Rational::zero() && w.a2 >= Rational::zero()
    }
    let mut ranked: Vec<_> = candidates
        .iter()
        .map(|c| ((!dominant(&c.r()), !dominant(&c.p())), c))
        .collect();
    ranked.sort();
    ranked[0].1.clone()
}

/// Canonical representative of the Weyl orbit of `charge`.
pub fn canonical_representative(charge: &KacCharge) -> KacCharge {
    let images: Vec<_> = weyl_images(charge).into_iter().map(|(_, c)| c).collect();
    canonical_image(&images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binv_minus_b() -> LaurentPoly {
        &LaurentPoly::b_inv() - &LaurentPoly::b()
    }

    #[test]
    fn direct_evaluation_matches_laurent_forms() {
        let charges = [
            KacCharge::sigma(),
            KacCharge::psi(),
            KacCharge::new(rat(3, 7), rat(-2, 5), rat(1, 11), rat(4, 3)),
        ];
        for c in &charges {
            for b2 in [rat(4, 5), rat(7, 3), rat(1, 2)] {
                assert_eq!(h_of(c).eval_at_b2(&b2), Some(h_at_b2(c, &b2)));
                assert_eq!(w_of(c).eval_times_b_at_b2(&b2), Some(w_scaled_at_b2(c, &b2)));
            }
        }
    }

    #[test]
    fn central_charge_special_values() {
        let c = central_charge();
        assert_eq!(c.eval_at_b2(&int(1)), Some(int(2)));
        assert_eq!(c.eval_at_b2(&rat(4, 5)), Some(rat(4, 5)));
        assert_eq!(c.eval_at_b2(&rat(1, 2)), Some(int(-10)));
        assert_eq!(c, central_charge_from_background());
    }

    #[test]
    fn beta_rejects_bad_b() {
        assert!(beta_at(0.0).is_err());
        assert!(beta_at(-1.0).is_err());
        assert!((beta_at(1.0).unwrap() - 2.0 / 8f64.sqrt()).abs() < 1e-15);
        // c = −10 puts 8 − 15 Q² below zero
        assert!(matches!(
            beta_at(0.5f64.sqrt()),
            Err(Error::NonRealBeta { .. })
        ));
        // agrees with β² = 16 / (22 + 5c)
        let b = 0.9f64;
        let c = central_charge().eval(b);
        assert!((beta_at(b).unwrap().powi(2) - 16.0 / (22.0 + 5.0 * c)).abs() < 1e-12);
    }

    #[test]
    fn split_reproduces_shifted_charge() {
        let ch = KacCharge::new(rat(2, 3), rat(-1, 3), rat(1, 3), rat(5, 7));
        let a = ch.alpha();
        let q = background_charge();
        let s = ch.shifted();
        for i in 0..2 {
            assert_eq!(&a[i] - &q[i], s[i]);
        }
    }

    #[test]
    fn psi_dimension() {
        let h = h_of(&KacCharge::psi());
        assert_eq!(h, LaurentPoly::from_terms([(0, int(-2)), (2, rat(10, 3))]));
        assert_eq!(h.eval_at_b2(&rat(4, 5)), Some(rat(2, 3)));
    }

    #[test]
    fn identity_is_trivial() {
        assert!(h_of(&KacCharge::identity()).is_zero());
        assert!(w_of(&KacCharge::identity()).is_zero());
    }

    #[test]
    fn sigma_eigenvalues() {
        let s = KacCharge::sigma();
        let expected_h = (LaurentPoly::constant(int(1))
            - binv_minus_b().pow(2).scale(&int(8)))
        .scale(&rat(1, 9));
        assert_eq!(h_of(&s), expected_h);
        assert_eq!(w_of(&s), binv_minus_b().scale(&rat(-2, 27)));
    }

    #[test]
    fn w_matches_triple_product_up_to_normalisation() {
        for ch in [KacCharge::sigma(), KacCharge::psi(), KacCharge::sigma_prime()] {
            assert_eq!(w_of(&ch), h_triple_product(&ch).scale(&int(-2)));
        }
    }

    #[test]
    fn conjugation_of_potts_sigma() {
        let s = KacCharge::from_ints(1, 1, 2, 1);
        assert_eq!(conjugate(&s), KacCharge::from_ints(1, 1, 1, 2));
        assert_eq!(conjugate(&KacCharge::epsilon()), KacCharge::epsilon());
        assert_eq!(conjugate(&conjugate(&KacCharge::sigma())), KacCharge::sigma());
    }

    #[test]
    fn reflection_of_two_q_minus_alpha_is_conjugate() {
        // R_{h2} is the reflection fixing h2, i.e. s1s2s1 (reflection in ρ)
        let r = WeylElement::from_label(crate::sl3::WeylLabel::S1S2S1);
        assert_eq!(r.apply(&Weight::h(2)), Weight::h(2));
        let ch = KacCharge::new(rat(3, 4), rat(-2, 5), rat(7, 3), rat(1, 6));
        // 2Q − α has split coordinates (−P, −R)
        let reflected = KacCharge::from_split(&-ch.p(), &-ch.r());
        assert_eq!(weyl_star(&r, &reflected), conjugate(&ch));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&KacCharge::sigma_double_prime()),
            FieldClass::CompletelyDegenerate
        );
        assert_eq!(
            classify(&KacCharge::sigma_prime()),
            FieldClass::SemiDegenerateLevelOne
        );
        assert_eq!(
            classify(&conjugate(&KacCharge::sigma_prime())),
            FieldClass::SemiDegenerateLevelOne
        );
        assert_eq!(classify(&KacCharge::sigma()), FieldClass::Generic);
        assert_eq!(
            classify(&KacCharge::new(rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7))),
            FieldClass::Generic
        );
    }

    #[test]
    fn canonical_sigma_label() {
        for (_, img) in weyl_images(&KacCharge::sigma()) {
            assert_eq!(canonical_representative(&img), KacCharge::sigma());
        }
    }

    #[test]
    fn display_uses_row_notation() {
        assert_eq!(KacCharge::sigma().to_string(), "[[2/3, 1/3], [-1/3, 1/3]]");
    }

    #[test]
    fn generalized_charges() {
        assert_eq!(generalized_z3(&KacCharge::sigma()), int(1));
        assert_eq!(generalized_z3(&KacCharge::identity()), int(0));
        assert_eq!(generalized_z3(&KacCharge::sigma_double_prime()), int(1));
    }
}
