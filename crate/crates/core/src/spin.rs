//! Finding spin fields: charges whose self- or conjugate fusion contains
//! prescribed degenerate fields for every `b`.
//!
//! For a pair `(λ, μ)`, a Weyl element `x` and weights `λ′ ∈ [λ]`, `μ′ ∈ [μ]`,
//! the condition `x(P + λ′) = P*`, `x(R + μ′) = R*` is linear in the four
//! indices. The solver enumerates these systems, intersects them across the
//! requested pairs and reports the surviving points and families up to Weyl
//! equivalence.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::charge::{
    canonical_representative, classify, conjugate, generalized_z3, h_of, w_of, weyl_images,
    FieldClass, KacCharge,
};
use crate::error::{Error, Result};
use crate::fusion::{constraint_witness, degenerate_spectrum, FusionMode, Witness};
use crate::laurent::LaurentPoly;
use crate::linalg::AffineSpace;
use crate::rational::{int, rat, Rational};
use crate::sl3::{weight_system, weyl_elements, Weight, WeylElement, Z3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub rep_pairs: Vec<(Weight, Weight)>,
    pub mode: FusionMode,
    /// Required value of `q̃ = (n1 − n2) + (m1 − m2)`.
    pub charge_filter: Option<Rational>,
    /// Keep only solutions of this class. For completely degenerate fields,
    /// families are replaced by their smallest positive integer member.
    pub class_filter: Option<FieldClass>,
}

impl ConstraintSpec {
    pub fn new(rep_pairs: Vec<(Weight, Weight)>, mode: FusionMode) -> Self {
        Self {
            rep_pairs,
            mode,
            charge_filter: None,
            class_filter: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rep_pairs.is_empty() {
            return Err(Error::InvalidSpec("rep_pairs must not be empty".into()));
        }
        for (l, m) in &self.rep_pairs {
            if !l.is_dominant_integral() || !m.is_dominant_integral() {
                return Err(Error::InvalidSpec(format!(
                    "pair ({l}, {m}) is not dominant integral"
                )));
            }
        }
        Ok(())
    }

    /// `{([ω1], 0), (0, [ω1]), ([ω2], [ω2])}` in self-fusion with `q̃ = 1`.
    pub fn sigma() -> Self {
        Self {
            charge_filter: Some(int(1)),
            ..Self::new(
                vec![
                    (Weight::int(1, 0), Weight::int(0, 0)),
                    (Weight::int(0, 0), Weight::int(1, 0)),
                    (Weight::int(0, 1), Weight::int(0, 1)),
                ],
                FusionMode::SelfFusion,
            )
        }
    }

    /// `([ω1], 0)` in self-fusion, restricted to semi-degenerate fields.
    pub fn sigma_prime() -> Self {
        Self {
            class_filter: Some(FieldClass::SemiDegenerateLevelOne),
            ..Self::new(
                vec![(Weight::int(1, 0), Weight::int(0, 0))],
                FusionMode::SelfFusion,
            )
        }
    }

    /// The conjugate of the field itself and `Φ*[[1,1],[1,3]]` in
    /// self-fusion, for a completely degenerate field.
    pub fn sigma_double_prime() -> Self {
        Self {
            class_filter: Some(FieldClass::CompletelyDegenerate),
            ..Self::new(
                vec![
                    (Weight::int(0, 0), Weight::int(1, 0)),
                    (Weight::int(0, 0), Weight::int(0, 2)),
                ],
                FusionMode::SelfFusion,
            )
        }
    }
}

/// A component of the solution set: an isolated charge or a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinSolution {
    /// The orbit representative; for a family, its base point.
    pub charge: KacCharge,
    /// Set when the constraints leave free parameters.
    pub family: Option<AffineSpace>,
    /// One witness per rep pair, valid for `charge`.
    pub witnesses: Vec<Witness>,
    pub class: FieldClass,
    pub h: LaurentPoly,
    pub w: LaurentPoly,
}

impl SpinSolution {
    pub fn is_family(&self) -> bool {
        self.family.is_some()
    }
}

impl fmt::Display for SpinSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            None => write!(f, "{} ({})", self.charge, self.class.name()),
            Some(s) => {
                let (base, dirs) = s.parametric();
                let show = |v: &[Rational]| {
                    v.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                write!(f, "family ({})", show(&base))?;
                for d in &dirs {
                    write!(f, " + t({})", show(d))?;
                }
                Ok(())
            }
        }
    }
}

fn weyl_transform(x: &WeylElement) -> Vec<Vec<Rational>> {
    let m = x.matrix;
    let mut t = vec![vec![Rational::zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            t[i][j] = int(m[i][j]);
            t[i + 2][j + 2] = int(m[i][j]);
        }
    }
    t
}

/// Equations on `(n1, n2, m1, m2)` for one choice of `x, λ′, μ′`.
fn pair_system(x: &WeylElement, lam_w: &Weight, mu_w: &Weight, mode: FusionMode) -> Option<AffineSpace> {
    // x(P + λ′) = T P  ⇔  (X − T) P = −X λ′, with T the swap or the identity.
    let target = |i: usize, j: usize| -> i64 {
        match mode {
            FusionMode::SelfFusion => i64::from(i != j),
            FusionMode::Conjugate => i64::from(i == j),
        }
    };
    let xl = x.apply(lam_w);
    let xm = x.apply(mu_w);
    let mut eqs = Vec::new();
    for (offset, shift) in [(0usize, &xl), (2usize, &xm)] {
        for i in 0..2 {
            let mut a = vec![Rational::zero(); 4];
            for j in 0..2 {
                a[offset + j] = int(x.matrix[i][j] - target(i, j));
            }
            let c = if i == 0 { -shift.a1.clone() } else { -shift.a2.clone() };
            eqs.push((a, c));
        }
    }
    AffineSpace::from_equations(4, eqs)
}

#[derive(Clone, Debug)]
struct Branch {
    space: AffineSpace,
    witnesses: Vec<Witness>,
}

fn candidate_systems(lam: &Weight, mu: &Weight, mode: FusionMode) -> Result<Vec<Branch>> {
    let il = weight_system(lam)?;
    let im = weight_system(mu)?;
    let mut out: Vec<Branch> = Vec::new();
    for x in weyl_elements() {
        for (lw, _) in il.weights() {
            for (mw, _) in im.weights() {
                if let Some(space) = pair_system(&x, lw, mw, mode) {
                    if out.iter().any(|b| b.space == space) {
                        continue;
                    }
                    out.push(Branch {
                        space,
                        witnesses: vec![Witness {
                            x,
                            lam_weight: lw.clone(),
                            mu_weight: mw.clone(),
                        }],
                    });
                }
            }
        }
    }
    Ok(out)
}

fn filter_space(filter: &Rational) -> AffineSpace {
    AffineSpace::from_equations(4, vec![(vec![int(1), int(-1), int(1), int(-1)], filter.clone())])
        .expect("single nonzero equation")
}

/// Spaces on which some Weyl image has `n2 = m2 = 1`.
fn semi_degenerate_spaces() -> Vec<AffineSpace> {
    weyl_elements()
        .iter()
        .map(|x| {
            let row = x.matrix[1];
            let a = vec![int(row[0]), int(row[1]), int(0), int(0)];
            let b = vec![int(0), int(0), int(row[0]), int(row[1])];
            AffineSpace::from_equations(4, vec![(a, int(1)), (b, int(1))]).expect("consistent")
        })
        .collect()
}

/// Every component of the solution set before Weyl deduplication.
pub fn solve_components(spec: &ConstraintSpec) -> Result<Vec<AffineSpace>> {
    spec.validate()?;
    let mut branches = vec![Branch {
        space: AffineSpace::full(4),
        witnesses: Vec::new(),
    }];
    for (lam, mu) in &spec.rep_pairs {
        let candidates = candidate_systems(lam, mu, spec.mode)?;
        let mut next: Vec<Branch> = Vec::new();
        for b in &branches {
            for c in &candidates {
                if let Some(space) = b.space.intersect(&c.space) {
                    if next.iter().any(|n| n.space == space) {
                        continue;
                    }
                    let mut witnesses = b.witnesses.clone();
                    witnesses.extend(c.witnesses.iter().cloned());
                    next.push(Branch { space, witnesses });
                }
            }
        }
        branches = next;
    }
    let mut spaces: Vec<AffineSpace> = branches.into_iter().map(|b| b.space).collect();
    if let Some(q) = &spec.charge_filter {
        let f = filter_space(q);
        spaces = spaces.iter().filter_map(|s| s.intersect(&f)).collect();
    }
    if spec.class_filter == Some(FieldClass::SemiDegenerateLevelOne) {
        let semi = semi_degenerate_spaces();
        spaces = spaces
            .iter()
            .flat_map(|s| semi.iter().filter_map(|t| s.intersect(t)).collect::<Vec<_>>())
            .collect();
    }
    Ok(remove_contained(spaces))
}

/// Drops duplicates and components contained in larger ones.
fn remove_contained(spaces: Vec<AffineSpace>) -> Vec<AffineSpace> {
    let mut unique: Vec<AffineSpace> = Vec::new();
    for s in spaces {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    let keep: Vec<bool> = unique
        .iter()
        .enumerate()
        .map(|(i, s)| {
            !unique.iter().enumerate().any(|(j, t)| {
                j != i && t.dimension() > s.dimension() && s.intersect(t).as_ref() == Some(s)
            })
        })
        .collect();
    unique
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}

/// Largest free parameter tried when looking for integer members of a family.
const FAMILY_SEARCH_BOUND: i64 = 8;

/// The member with positive integer indices of smallest index sum, then
/// lexicographically smallest.
pub fn minimal_positive_integer_member(space: &AffineSpace) -> Option<KacCharge> {
    let free = space.free_variables().len();
    let mut best: Option<(Rational, KacCharge)> = None;
    let mut values = vec![1i64; free];
    loop {
        let z = space.at(&values.iter().map(|v| int(*v)).collect::<Vec<_>>());
        let c = KacCharge::from_indices(&z);
        if c.has_positive_integer_indices() {
            let sum: Rational = z.iter().sum();
            let better = match &best {
                None => true,
                Some((s, b)) => (&sum, &c) < (s, b),
            };
            if better {
                best = Some((sum, c));
            }
        }
        let Some(i) = values.iter().position(|v| *v < FAMILY_SEARCH_BOUND) else {
            break;
        };
        values[i] += 1;
        for v in values.iter_mut().take(i) {
            *v = 1;
        }
    }
    best.map(|(_, c)| c)
}

fn canonical_family(space: &AffineSpace) -> AffineSpace {
    weyl_elements()
        .iter()
        .map(|x| space.image_under(&weyl_transform(&x.inverse())))
        .min()
        .expect("six images")
}

/// Witnesses for a concrete charge, one per rep pair.
pub fn witnesses_for(charge: &KacCharge, spec: &ConstraintSpec) -> Result<Vec<Witness>> {
    spec.rep_pairs
        .iter()
        .map(|(l, m)| {
            constraint_witness(l, m, charge, spec.mode)?.ok_or_else(|| {
                Error::InvalidSpec(format!("{charge} does not satisfy the pair ({l}, {m})"))
            })
        })
        .collect()
}

fn point_solution(charge: KacCharge, spec: &ConstraintSpec) -> Result<SpinSolution> {
    let witnesses = witnesses_for(&charge, spec)?;
    Ok(SpinSolution {
        class: classify(&charge),
        h: h_of(&charge),
        w: w_of(&charge),
        charge,
        family: None,
        witnesses,
    })
}

/// Solves the spec and returns one solution per Weyl orbit.
pub fn solve(spec: &ConstraintSpec) -> Result<Vec<SpinSolution>> {
    let components = solve_components(spec)?;
    let mut points: BTreeSet<KacCharge> = BTreeSet::new();
    let mut families: BTreeSet<AffineSpace> = BTreeSet::new();
    for space in &components {
        match space.point() {
            Some(z) => {
                let c = KacCharge::from_indices(&z);
                let keep = match spec.class_filter {
                    Some(FieldClass::CompletelyDegenerate) => {
                        classify(&c) == FieldClass::CompletelyDegenerate
                    }
                    _ => true,
                };
                if keep {
                    points.insert(canonical_representative(&c));
                }
            }
            None => {
                if spec.class_filter == Some(FieldClass::CompletelyDegenerate) {
                    if let Some(c) = minimal_positive_integer_member(space) {
                        points.insert(canonical_representative(&c));
                    }
                } else {
                    families.insert(canonical_family(space));
                }
            }
        }
    }
    let mut out = Vec::new();
    for c in points {
        out.push(point_solution(c, spec)?);
    }
    for fam in families {
        let (base, _) = fam.parametric();
        let charge = KacCharge::from_indices(&base);
        out.push(SpinSolution {
            witnesses: witnesses_for(&charge, spec)?,
            class: classify(&charge),
            h: h_of(&charge),
            w: w_of(&charge),
            charge,
            family: Some(fam),
        });
    }
    if out.is_empty() {
        return Err(Error::NoSolution);
    }
    out.sort_by_key(|s| {
        let sum: Rational = s.charge.indices().iter().map(|x| x.clone() * x.clone()).sum();
        (s.is_family(), sum)
    });
    Ok(out)
}

/// Re-substitutes a witness: does it carry `charge` to its target?
pub fn verify_witness(charge: &KacCharge, lam: &Weight, mu: &Weight, w: &Witness, mode: FusionMode) -> bool {
    let il = weight_system(lam);
    let im = weight_system(mu);
    let (Ok(il), Ok(im)) = (il, im) else {
        return false;
    };
    if crate::sl3::multiplicity(&il, &w.lam_weight) == 0 || crate::sl3::multiplicity(&im, &w.mu_weight) == 0 {
        return false;
    }
    let p = w.x.apply(&(&charge.p() + &w.lam_weight));
    let r = w.x.apply(&(&charge.r() + &w.mu_weight));
    let got = KacCharge::from_split(&p, &r);
    let target = match mode {
        FusionMode::SelfFusion => conjugate(charge),
        FusionMode::Conjugate => charge.clone(),
    };
    got == target
}

/// A predicted set of degenerate fields in a fusion product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sector {
    /// `q_λ + q_μ ≡ r`
    Sum(Z3),
    /// `q_λ ≡ a`, `q_μ ≡ b`
    Separate(Z3, Z3),
    /// An explicit finite list.
    Explicit(Vec<(Weight, Weight)>),
}

impl Sector {
    pub fn contains(&self, lam: &Weight, mu: &Weight) -> bool {
        let (ql, qm) = (
            lam.z3_charge().expect("integral"),
            mu.z3_charge().expect("integral"),
        );
        match self {
            Sector::Sum(r) => ql + qm == *r,
            Sector::Separate(a, b) => ql == *a && qm == *b,
            Sector::Explicit(list) => list.iter().any(|(l, m)| l == lam && m == mu),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Sum(r) => write!(f, "q_λ + q_μ ≡ {r}"),
            Sector::Separate(a, b) => write!(f, "q_λ ≡ {a}, q_μ ≡ {b}"),
            Sector::Explicit(list) => {
                let items: Vec<_> = list.iter().map(|(l, m)| format!("({l}, {m})")).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub sector: Sector,
    pub cutoff: i64,
    pub found: Vec<(Weight, Weight)>,
    /// Predicted but absent.
    pub missing: Vec<(Weight, Weight)>,
    /// Present but not predicted.
    pub unexpected: Vec<(Weight, Weight)>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

/// Compares the degenerate spectrum of a fusion product with a prediction.
pub fn sector_coverage(
    charge: &KacCharge,
    mode: FusionMode,
    cutoff: i64,
    sector: Sector,
) -> Result<CoverageReport> {
    let found = degenerate_spectrum(charge, cutoff, mode)?;
    let mut missing = Vec::new();
    let mut unexpected = Vec::new();
    let reps = crate::sl3::dominant_weights_up_to(cutoff);
    for l in &reps {
        for m in &reps {
            let predicted = sector.contains(l, m);
            let present = found.iter().any(|(a, b)| a == l && b == m);
            if predicted && !present {
                missing.push((l.clone(), m.clone()));
            }
            if present && !predicted {
                unexpected.push((l.clone(), m.clone()));
            }
        }
    }
    Ok(CoverageReport {
        sector,
        cutoff,
        found,
        missing,
        unexpected,
    })
}

/// Specializes a solution to `M_{p,p′}`.
pub fn rational_specialization(
    charge: &KacCharge,
    p: i64,
    p_prime: i64,
) -> Result<crate::models::Specialization> {
    let model = crate::models::RationalModel::new(p, p_prime)?;
    crate::models::specialize(charge, &model)
}

/// Cartesian coordinates of `a1 ω1 + a2 ω2` with `ω1 = (√3, 1)/√6`,
/// `ω2 = (0, √(2/3))`.
pub fn to_cartesian(a1: f64, a2: f64) -> (f64, f64) {
    let s6 = 6f64.sqrt();
    (a1 * 3f64.sqrt() / s6, a1 / s6 + a2 * (2.0f64 / 3.0).sqrt())
}

/// `α − Q` in ω-coordinates at numeric `b`.
pub fn shifted_at(charge: &KacCharge, b: f64) -> (f64, f64) {
    let [x, y] = charge.shifted();
    (x.eval(b), y.eval(b))
}

/// The 12 points `x(α − Q)` and `x(α* − Q)` in the plane.
pub fn orbit_points(charge: &KacCharge, b: f64) -> Result<Vec<(f64, f64)>> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::NonPositiveB(b));
    }
    let mut out = Vec::with_capacity(12);
    for c in [charge.clone(), conjugate(charge)] {
        for (_, image) in weyl_images(&c) {
            let (a1, a2) = shifted_at(&image, b);
            out.push(to_cartesian(a1, a2));
        }
    }
    Ok(out)
}

fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
    (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
}

/// Points shared by all given orbits at `b`.
pub fn common_orbit_points(charges: &[KacCharge], b: f64, tol: f64) -> Result<Vec<(f64, f64)>> {
    let orbits: Vec<_> = charges.iter().map(|c| orbit_points(c, b)).collect::<Result<_>>()?;
    let Some((first, rest)) = orbits.split_first() else {
        return Ok(Vec::new());
    };
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in first {
        if rest.iter().all(|o| o.iter().any(|q| close(*p, *q, tol))) && !out.iter().any(|q| close(*p, *q, tol)) {
            out.push(*p);
        }
    }
    Ok(out)
}

/// Whether a Cartesian point lies on a reflection wall.
pub fn on_weyl_wall(point: (f64, f64), tol: f64) -> bool {
    // Roots e1 = 2ω1 − ω2, e2 = 2ω2 − ω1 and e1 + e2.
    let w1 = to_cartesian(1.0, 0.0);
    let w2 = to_cartesian(0.0, 1.0);
    let e1 = (2.0 * w1.0 - w2.0, 2.0 * w1.1 - w2.1);
    let e2 = (2.0 * w2.0 - w1.0, 2.0 * w2.1 - w1.1);
    let e3 = (e1.0 + e2.0, e1.1 + e2.1);
    [e1, e2, e3]
        .iter()
        .any(|e| (e.0 * point.0 + e.1 * point.1).abs() <= tol)
}

/// Named fields whose dimensions are tabulated along the curves.
pub fn curve_fields() -> [(&'static str, KacCharge); 6] {
    [
        ("sigma", KacCharge::sigma()),
        ("psi", KacCharge::psi()),
        ("psi_prime", KacCharge::psi_prime()),
        ("sigma_prime", KacCharge::sigma_prime()),
        ("sigma_double_prime", KacCharge::sigma_double_prime()),
        ("epsilon", KacCharge::epsilon()),
    ]
}

/// The closed forms of the tabulated dimensions.
pub fn closed_form(name: &str) -> Option<LaurentPoly> {
    let t = |k: i32, n: i64, d: i64| (k, rat(n, d));
    let binv_b2 = (&LaurentPoly::b_inv() - &LaurentPoly::b()).pow(2);
    Some(match name {
        "sigma" => (LaurentPoly::constant(int(1)) - binv_b2.scale(&int(8))).scale(&rat(1, 9)),
        "psi" => LaurentPoly::from_terms([t(0, -2, 1), t(2, 10, 3)]),
        "psi_prime" => LaurentPoly::from_terms([t(-2, 4, 3), t(0, -1, 1)]),
        "sigma_prime" => LaurentPoly::from_terms([t(-2, 1, 12)]) - binv_b2.scale(&rat(3, 4)),
        "sigma_double_prime" => LaurentPoly::from_terms([t(2, 4, 3), t(0, -1, 1)]),
        "epsilon" => LaurentPoly::from_terms([t(0, -2, 1), t(2, 3, 1)]),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub b: f64,
    pub c: f64,
    /// In the order of [`curve_fields`].
    pub h: [f64; 6],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCurveRow {
    pub b2: Rational,
    pub c: Rational,
    pub h: [Rational; 6],
}

pub fn curve_tables(grid: &[f64]) -> Result<Vec<CurveRow>> {
    let c = crate::charge::central_charge();
    let hs: Vec<LaurentPoly> = curve_fields().iter().map(|(_, f)| h_of(f)).collect();
    grid.iter()
        .map(|&b| {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::NonPositiveB(b));
            }
            Ok(CurveRow {
                b,
                c: c.eval(b),
                h: std::array::from_fn(|i| hs[i].eval(b)),
            })
        })
        .collect()
}

pub fn curve_row_exact(b2: &Rational) -> Result<ExactCurveRow> {
    if *b2 <= Rational::zero() {
        return Err(Error::NonPositiveB(crate::rational::to_f64(b2)));
    }
    let c = crate::charge::central_charge().eval_at_b2(b2).expect("even powers");
    let fields = curve_fields();
    Ok(ExactCurveRow {
        b2: b2.clone(),
        c,
        h: std::array::from_fn(|i| h_of(&fields[i].1).eval_at_b2(b2).expect("even powers")),
    })
}

/// `h_ε − 4 h_{σ′}` and its `b²`-derivative, both exact at `b²`.
pub fn epsilon_sigma_prime_gap(b2: &Rational) -> (Rational, Rational) {
    let gap = &h_of(&KacCharge::epsilon()) - &h_of(&KacCharge::sigma_prime()).scale(&int(4));
    // d/d(b²) = (1/2b) d/db
    let d = gap.derivative().shift(-1).scale(&rat(1, 2));
    (
        gap.eval_at_b2(b2).expect("even powers"),
        d.eval_at_b2(b2).expect("even powers"),
    )
}

/// `q̃` of the solution, for reporting.
pub fn solution_charge(sol: &SpinSolution) -> Rational {
    generalized_z3(&sol.charge)
}

/// Whether `charge` is `Φ_{0,0}` up to Weyl action.
pub fn is_identity(charge: &KacCharge) -> bool {
    crate::charge::weyl_equivalent(charge, &KacCharge::identity()).is_some()
}
