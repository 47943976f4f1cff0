//! Fusion rules and conformal-block counting.
//!
//! `Φ_{λ,μ} × V_α` produces `V_{α − b⁻¹λ′ + bμ′}` for every weight `λ′` of
//! `[λ]` and `μ′` of `[μ]`, with multiplicity `m_λ(λ′) m_μ(μ′)`. In split
//! coordinates this is `P → P + λ′`, `R → R + μ′`. Whether a given target
//! field occurs is decided exactly: for generic `b` the `b⁻¹` and `b` parts
//! must be matched by one and the same Weyl element.

use std::collections::BTreeMap;
use std::fmt;

use crate::charge::{classify, conjugate, weyl_equivalent, weyl_images, FieldClass, KacCharge};
use crate::error::{Error, Result};
use crate::models::RationalModel;
use crate::sl3::{
    conjugate_weight, multiplicity, tensor_decompose, weight_system, weyl_elements, Weight,
    WeylElement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FusionMode {
    /// Does `Φ*_{λ,μ}` occur in `V_α × V_α`?
    SelfFusion,
    /// Does `Φ_{λ,μ}` occur in `V_α × V_α*`?
    Conjugate,
}

impl FusionMode {
    pub fn name(self) -> &'static str {
        match self {
            FusionMode::SelfFusion => "self",
            FusionMode::Conjugate => "conjugate",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "self" => Ok(FusionMode::SelfFusion),
            "conjugate" | "conj" => Ok(FusionMode::Conjugate),
            other => Err(Error::Parse(format!("unknown fusion mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTerm {
    pub charge: KacCharge,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FusionOutcome {
    pub terms: Vec<FusionTerm>,
}

impl FusionOutcome {
    /// Number of terms counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }

    /// Multiplicity of `target` up to Weyl equivalence.
    pub fn multiplicity_of(&self, target: &KacCharge) -> u64 {
        self.terms
            .iter()
            .filter(|t| weyl_equivalent(&t.charge, target).is_some())
            .map(|t| t.multiplicity)
            .sum()
    }

    pub fn contains(&self, target: &KacCharge) -> bool {
        self.multiplicity_of(target) > 0
    }
}

impl fmt::Display for FusionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.multiplicity != 1 {
                write!(f, "{}·", t.multiplicity)?;
            }
            write!(f, "Φ{}", t.charge)?;
        }
        Ok(())
    }
}

/// A solution `(x, λ′, μ′)` of `x(P + λ′) = P_target`, `x(R + μ′) = R_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: WeylElement,
    pub lam_weight: Weight,
    pub mu_weight: Weight,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} λ′={} μ′={}", self.x, self.lam_weight, self.mu_weight)
    }
}

fn check_dominant(w: &Weight) -> Result<()> {
    if w.is_dominant_integral() {
        Ok(())
    } else {
        Err(Error::NotDominantIntegral(w.a1.to_string(), w.a2.to_string()))
    }
}

/// `Φ_{λ,μ} × V_α` term by term.
pub fn fuse_deg_generic(lam: &Weight, mu: &Weight, alpha: &KacCharge) -> Result<FusionOutcome> {
    check_dominant(lam)?;
    check_dominant(mu)?;
    let il = weight_system(lam)?;
    let im = weight_system(mu)?;
    let p = alpha.p();
    let r = alpha.r();
    let mut terms = Vec::new();
    for (wl, ml) in il.weights() {
        for (wm, mm) in im.weights() {
            terms.push(FusionTerm {
                charge: KacCharge::from_split(&(&p + wl), &(&r + wm)),
                multiplicity: ml * mm,
            });
        }
    }
    Ok(FusionOutcome { terms })
}

/// The `(λ, μ)` labels of a charge with positive integer indices.
pub fn degenerate_labels(charge: &KacCharge) -> Result<(Weight, Weight)> {
    if !charge.has_positive_integer_indices() {
        return Err(Error::NotInKacTable(charge.to_string()));
    }
    let one = Weight::int(1, 1);
    Ok((&charge.p() - &one, &charge.r() - &one))
}

/// The Weyl image of a completely degenerate charge with positive integer
/// indices. It is unique: `P` then lies in the open dominant chamber.
pub fn degenerate_form(charge: &KacCharge) -> Option<KacCharge> {
    weyl_images(charge)
        .into_iter()
        .map(|(_, c)| c)
        .find(KacCharge::has_positive_integer_indices)
}

/// `Φ_{λ,μ} × Φ_{λ′,μ′} → Σ N_{λλ′}^{λ″} N_{μμ′}^{μ″} Φ_{λ″,μ″}`.
///
/// With a model, terms outside its Kac table are dropped and the rest are
/// relabelled by their canonical table entry.
pub fn fuse_deg_deg(
    f1: &KacCharge,
    f2: &KacCharge,
    model: Option<&RationalModel>,
) -> Result<FusionOutcome> {
    let (l1, m1) = degenerate_labels(f1)?;
    let (l2, m2) = degenerate_labels(f2)?;
    let lam_terms = tensor_decompose(&l1, &l2)?;
    let mu_terms = tensor_decompose(&m1, &m2)?;
    let mut merged: BTreeMap<KacCharge, u64> = BTreeMap::new();
    for (lam, nl) in &lam_terms {
        for (mu, nm) in &mu_terms {
            let charge = KacCharge::degenerate(lam, mu);
            let label = match model {
                None => Some(charge),
                Some(model) => model.field_of(&charge).map(|f| f.charge()),
            };
            if let Some(label) = label {
                *merged.entry(label).or_insert(0) += nl * nm;
            }
        }
    }
    Ok(FusionOutcome {
        terms: merged
            .into_iter()
            .map(|(charge, multiplicity)| FusionTerm {
                charge,
                multiplicity,
            })
            .collect(),
    })
}

/// Exact test of the generic fusion rule: does `Φ_{λ,μ} × V_α` contain the
/// target `V_{α*}` (self mode) or `V_α` (conjugate mode) up to Weyl action?
pub fn constraint_witness(
    lam: &Weight,
    mu: &Weight,
    alpha: &KacCharge,
    mode: FusionMode,
) -> Result<Option<Witness>> {
    check_dominant(lam)?;
    check_dominant(mu)?;
    let il = weight_system(lam)?;
    let im = weight_system(mu)?;
    let (p, r) = (alpha.p(), alpha.r());
    let (tp, tr) = match mode {
        FusionMode::SelfFusion => (conjugate_weight(&p), conjugate_weight(&r)),
        FusionMode::Conjugate => (p.clone(), r.clone()),
    };
    for x in weyl_elements() {
        let inv = x.inverse();
        let lam_weight = &inv.apply(&tp) - &p;
        if multiplicity(&il, &lam_weight) == 0 {
            continue;
        }
        let mu_weight = &inv.apply(&tr) - &r;
        if multiplicity(&im, &mu_weight) == 0 {
            continue;
        }
        return Ok(Some(Witness {
            x,
            lam_weight,
            mu_weight,
        }));
    }
    Ok(None)
}

fn degenerate_membership(
    lam: &Weight,
    mu: &Weight,
    form: &KacCharge,
    mode: FusionMode,
) -> Result<bool> {
    let (other, target) = match mode {
        FusionMode::SelfFusion => (
            form.clone(),
            KacCharge::degenerate(&conjugate_weight(lam), &conjugate_weight(mu)),
        ),
        FusionMode::Conjugate => (conjugate(form), KacCharge::degenerate(lam, mu)),
    };
    Ok(fuse_deg_deg(form, &other, None)?.contains(&target))
}

/// Fusion membership for the field `V_α`. Completely degenerate charges
/// fuse by the sl3 tensor-product rule; all others by the generic rule.
pub fn contains_in_fusion(
    lam: &Weight,
    mu: &Weight,
    alpha: &KacCharge,
    mode: FusionMode,
) -> Result<bool> {
    check_dominant(lam)?;
    check_dominant(mu)?;
    if classify(alpha) == FieldClass::CompletelyDegenerate {
        let form = degenerate_form(alpha).expect("classified as degenerate");
        return degenerate_membership(lam, mu, &form, mode);
    }
    Ok(constraint_witness(lam, mu, alpha, mode)?.is_some())
}

/// Does `V_α × V_α` contain `Φ*_{λ,μ}`?
pub fn contains_in_self_fusion(lam: &Weight, mu: &Weight, alpha: &KacCharge) -> Result<bool> {
    contains_in_fusion(lam, mu, alpha, FusionMode::SelfFusion)
}

/// Does `V_α × V_α*` contain `Φ_{λ,μ}`?
pub fn contains_in_conjugate_fusion(
    lam: &Weight,
    mu: &Weight,
    alpha: &KacCharge,
) -> Result<bool> {
    contains_in_fusion(lam, mu, alpha, FusionMode::Conjugate)
}

/// All `(λ, μ)` with `λ1 + λ2 ≤ cutoff`, `μ1 + μ2 ≤ cutoff` that pass the
/// membership test. Only completely degenerate fields are reported; other
/// fields in the OPE are outside the scope of this scan.
pub fn degenerate_spectrum(
    alpha: &KacCharge,
    cutoff: i64,
    mode: FusionMode,
) -> Result<Vec<(Weight, Weight)>> {
    if cutoff < 1 {
        return Err(Error::Parse(format!("cutoff must be at least 1, got {cutoff}")));
    }
    let reps = crate::sl3::dominant_weights_up_to(cutoff);
    let mut out = Vec::new();
    for lam in &reps {
        for mu in &reps {
            if contains_in_fusion(lam, mu, alpha, mode)? {
                out.push((lam.clone(), mu.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockCount {
    pub s_channel: u64,
    pub t_channel: u64,
}

fn sum_squares(w: &Weight) -> Result<u64> {
    Ok(weight_system(w)?.weights().map(|(_, m)| m * m).sum())
}

fn neutral_count(w: &Weight) -> Result<u64> {
    let mut total = 0;
    for (nu, n) in tensor_decompose(w, &conjugate_weight(w))? {
        total += n * multiplicity(&*weight_system(&nu)?, &Weight::zero());
    }
    Ok(total)
}

/// Number of conformal blocks of `⟨Φ* V* V Φ⟩` in the two channels.
pub fn block_counts(lam: &Weight, mu: &Weight) -> Result<BlockCount> {
    check_dominant(lam)?;
    check_dominant(mu)?;
    Ok(BlockCount {
        s_channel: sum_squares(lam)? * sum_squares(mu)?,
        t_channel: neutral_count(lam)? * neutral_count(mu)?,
    })
}
