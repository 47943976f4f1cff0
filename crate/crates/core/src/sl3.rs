//! sl3 weight lattice, Weyl group and irreducible representations.
//!
//! Weights are stored in the basis of fundamental weights `(ω1, ω2)`. The
//! metric is the Gram matrix `ω1·ω1 = ω2·ω2 = 2/3`, `ω1·ω2 = 1/3`, so the simple
//! roots are `e1 = 2ω1 − ω2`, `e2 = 2ω2 − ω1` with `e_i · ω_j = δ_ij`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_i64, format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub a1: Rational,
    pub a2: Rational,
}

impl Weight {
    pub fn new(a1: Rational, a2: Rational) -> Self {
        Self { a1, a2 }
    }

    pub fn int(a1: i64, a2: i64) -> Self {
        Self::new(int(a1), int(a2))
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    pub fn omega1() -> Self {
        Self::int(1, 0)
    }

    pub fn omega2() -> Self {
        Self::int(0, 1)
    }

    pub fn e1() -> Self {
        Self::int(2, -1)
    }

    pub fn e2() -> Self {
        Self::int(-1, 2)
    }

    /// Weyl vector `ρ = e1 + e2 = ω1 + ω2`.
    pub fn rho() -> Self {
        Self::int(1, 1)
    }

    /// `h1 = ω1`, `h2 = ω2 − ω1`, `h3 = −ω2`; the weights of `[ω1]`.
    pub fn h(j: usize) -> Self {
        match j {
            1 => Self::int(1, 0),
            2 => Self::int(-1, 1),
            3 => Self::int(0, -1),
            _ => panic!("h_j is defined for j = 1, 2, 3"),
        }
    }

    /// The six roots `±e1, ±e2, ±(e1 + e2)`.
    pub fn roots() -> [Weight; 6] {
        [
            Self::e1(),
            Self::e2(),
            Self::rho(),
            -Self::e1(),
            -Self::e2(),
            -Self::rho(),
        ]
    }

    pub fn positive_roots() -> [Weight; 3] {
        [Self::e1(), Self::e2(), Self::rho()]
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        (int(2) * (&self.a1 * &other.a1)
            + &self.a1 * &other.a2
            + &self.a2 * &other.a1
            + int(2) * (&self.a2 * &other.a2))
            / int(3)
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight::new(&self.a1 * s, &self.a2 * s)
    }

    pub fn is_integral(&self) -> bool {
        self.a1.is_integer() && self.a2.is_integer()
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.is_integral() && !self.a1.is_negative() && !self.a2.is_negative()
    }

    /// Integer coordinates, if integral and small.
    pub fn as_ints(&self) -> Option<(i64, i64)> {
        Some((as_i64(&self.a1)?, as_i64(&self.a2)?))
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    /// `q = a1 − a2 mod 3` for an integral weight.
    pub fn z3_charge(&self) -> Option<Z3> {
        let (a1, a2) = self.as_ints()?;
        Some(Z3::new(a1 - a2))
    }
}

/// Exchange of `ω1` and `ω2`.
pub fn conjugate_weight(w: &Weight) -> Weight {
    Weight::new(w.a2.clone(), w.a1.clone())
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(&self.a1 + &rhs.a1, &self.a2 + &rhs.a2)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(&self.a1 - &rhs.a1, &self.a2 - &rhs.a2)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a1, -self.a2)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -(self.clone())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.a1),
            format_rational(&self.a2)
        )
    }
}

/// Element of `Z/3Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Z3(u8);

impl Z3 {
    pub fn new(v: i64) -> Self {
        Z3(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Representative in `{-1, 0, 1}`.
    pub fn balanced(self) -> i8 {
        match self.0 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl Add for Z3 {
    type Output = Z3;
    fn add(self, rhs: Z3) -> Z3 {
        Z3::new(i64::from(self.0) + i64::from(rhs.0))
    }
}

impl Neg for Z3 {
    type Output = Z3;
    fn neg(self) -> Z3 {
        Z3::new(-i64::from(self.0))
    }
}

impl fmt::Display for Z3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.balanced())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeylLabel {
    Id,
    S1,
    S2,
    S1S2,
    S2S1,
    S1S2S1,
}

impl WeylLabel {
    pub const ALL: [WeylLabel; 6] = [
        WeylLabel::Id,
        WeylLabel::S1,
        WeylLabel::S2,
        WeylLabel::S1S2,
        WeylLabel::S2S1,
        WeylLabel::S1S2S1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeylLabel::Id => "id",
            WeylLabel::S1 => "s1",
            WeylLabel::S2 => "s2",
            WeylLabel::S1S2 => "s1s2",
            WeylLabel::S2S1 => "s2s1",
            WeylLabel::S1S2S1 => "s1s2s1",
        }
    }
}

/// Weyl group element as an integer matrix on ω-coordinates.
/// Words compose right to left: `s1s2` applies `s2` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub label: WeylLabel,
    pub matrix: [[i64; 2]; 2],
}

const S1: [[i64; 2]; 2] = [[-1, 0], [1, 1]];
const S2: [[i64; 2]; 2] = [[1, 1], [0, -1]];
const ID: [[i64; 2]; 2] = [[1, 0], [0, 1]];

fn matmul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

impl WeylElement {
    pub fn from_label(label: WeylLabel) -> Self {
        let matrix = match label {
            WeylLabel::Id => ID,
            WeylLabel::S1 => S1,
            WeylLabel::S2 => S2,
            WeylLabel::S1S2 => matmul(S1, S2),
            WeylLabel::S2S1 => matmul(S2, S1),
            WeylLabel::S1S2S1 => matmul(matmul(S1, S2), S1),
        };
        Self { label, matrix }
    }

    pub fn identity() -> Self {
        Self::from_label(WeylLabel::Id)
    }

    fn from_matrix(m: [[i64; 2]; 2]) -> Self {
        weyl_elements()
            .into_iter()
            .find(|x| x.matrix == m)
            .expect("Weyl group is closed under composition")
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let m = &self.matrix;
        Weight::new(
            int(m[0][0]) * &w.a1 + int(m[0][1]) * &w.a2,
            int(m[1][0]) * &w.a1 + int(m[1][1]) * &w.a2,
        )
    }

    pub fn apply_int(&self, (a1, a2): (i64, i64)) -> (i64, i64) {
        let m = &self.matrix;
        (m[0][0] * a1 + m[0][1] * a2, m[1][0] * a1 + m[1][1] * a2)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        Self::from_matrix(matmul(self.matrix, other.matrix))
    }

    pub fn inverse(&self) -> WeylElement {
        let m = self.matrix;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Self::from_matrix([[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]])
    }

    pub fn sign(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label.name())
    }
}

/// All six elements of the Weyl group of sl3.
pub fn weyl_elements() -> Vec<WeylElement> {
    WeylLabel::ALL.iter().map(|l| WeylElement::from_label(*l)).collect()
}

/// Distinct images of `w` under the Weyl group.
pub fn weyl_orbit(w: &Weight) -> BTreeSet<Weight> {
    weyl_elements().iter().map(|x| x.apply(w)).collect()
}

/// An sl3 irrep with its full weight table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    highest: Weight,
    table: BTreeMap<Weight, u64>,
}

impl Irrep {
    /// Builds the weight table of `[highest]`: the weight set by string
    /// lowering from the highest weight, multiplicities by Freudenthal.
    pub fn new(highest: &Weight) -> Result<Self> {
        let (l1, l2) = dominant_ints(highest)?;
        let table = freudenthal_table(l1, l2)
            .into_iter()
            .map(|((a1, a2), m)| (Weight::int(a1, a2), m))
            .collect();
        Ok(Self {
            highest: highest.clone(),
            table,
        })
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn table(&self) -> &BTreeMap<Weight, u64> {
        &self.table
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.table.iter().map(|(w, m)| (w, *m))
    }

    pub fn dimension(&self) -> u64 {
        self.table.values().sum()
    }

    pub fn z3_charge(&self) -> Z3 {
        self.highest.z3_charge().expect("irreps have integral highest weights")
    }

    pub fn conjugate(&self) -> Irrep {
        Irrep {
            highest: conjugate_weight(&self.highest),
            table: self
                .table
                .iter()
                .map(|(w, m)| (conjugate_weight(w), *m))
                .collect(),
        }
    }
}

fn dominant_ints(w: &Weight) -> Result<(i64, i64)> {
    if !w.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(
            format_rational(&w.a1),
            format_rational(&w.a2),
        ));
    }
    w.as_ints().ok_or_else(|| {
        Error::NotDominantIntegral(format_rational(&w.a1), format_rational(&w.a2))
    })
}

/// Weyl dimension formula `(λ1+1)(λ2+1)(λ1+λ2+2)/2`.
pub fn weyl_dimension(l1: u64, l2: u64) -> u64 {
    (l1 + 1) * (l2 + 1) * (l1 + l2 + 2) / 2
}

/// Three times the inner product of two integral weights.
fn dot3((a, b): (i64, i64), (c, d): (i64, i64)) -> i64 {
    2 * a * c + a * d + b * c + 2 * b * d
}

/// The weight set of `[(l1, l2)]` by repeated string lowering: from every
/// weight with `a_i > 0`, subtract `e_i` up to `a_i` times.
fn lowered_weight_set(l1: i64, l2: i64) -> BTreeSet<(i64, i64)> {
    let simple = [(2, -1), (-1, 2)];
    let mut set = BTreeSet::new();
    let mut stack = vec![(l1, l2)];
    set.insert((l1, l2));
    while let Some(w) = stack.pop() {
        for (i, e) in simple.iter().enumerate() {
            let ai = if i == 0 { w.0 } else { w.1 };
            for k in 1..=ai.max(0) {
                let next = (w.0 - k * e.0, w.1 - k * e.1);
                if set.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    set
}

fn freudenthal_table(l1: i64, l2: i64) -> BTreeMap<(i64, i64), u64> {
    let weights = lowered_weight_set(l1, l2);
    // depth = number of simple roots below the highest weight: λ − μ = k e1 + l e2
    let depth = |w: &(i64, i64)| (l1 - w.0) + (l2 - w.1);
    let mut ordered: Vec<(i64, i64)> = weights.iter().copied().collect();
    ordered.sort_by_key(|w| (depth(w), *w));

    let positive = [(2, -1), (-1, 2), (1, 1)];
    let lam_rho = (l1 + 1, l2 + 1);
    let top = dot3(lam_rho, lam_rho);
    let mut mult: HashMap<(i64, i64), i64> = HashMap::new();
    for w in ordered {
        if w == (l1, l2) {
            mult.insert(w, 1);
            continue;
        }
        let w_rho = (w.0 + 1, w.1 + 1);
        let denom = top - dot3(w_rho, w_rho);
        let mut num = 0i64;
        for alpha in positive {
            let mut k = 1;
            loop {
                let up = (w.0 + k * alpha.0, w.1 + k * alpha.1);
                match mult.get(&up) {
                    Some(m) => num += 2 * m * dot3(up, alpha),
                    None if weights.contains(&up) => {
                        unreachable!("higher weight processed first")
                    }
                    None => break,
                }
                k += 1;
            }
        }
        assert!(denom > 0 && num % denom == 0, "Freudenthal division must be exact");
        mult.insert(w, num / denom);
    }
    mult.into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(w, m)| (w, m as u64))
        .collect()
}

fn irrep_cache() -> &'static Mutex<HashMap<(i64, i64), Arc<Irrep>>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), Arc<Irrep>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, memoised irrep. Tables are immutable once built.
pub fn irrep(l1: i64, l2: i64) -> Result<Arc<Irrep>> {
    if l1 < 0 || l2 < 0 {
        return Err(Error::NotDominantIntegral(l1.to_string(), l2.to_string()));
    }
    if let Some(hit) = irrep_cache().lock().unwrap().get(&(l1, l2)) {
        return Ok(Arc::clone(hit));
    }
    let built = Arc::new(Irrep::new(&Weight::int(l1, l2))?);
    irrep_cache()
        .lock()
        .unwrap()
        .entry((l1, l2))
        .or_insert_with(|| Arc::clone(&built));
    Ok(built)
}

/// Full weight system of the irrep with the given highest weight.
pub fn weight_system(highest: &Weight) -> Result<Arc<Irrep>> {
    let (l1, l2) = dominant_ints(highest)?;
    irrep(l1, l2)
}

/// `m_λ(w)`; zero when `w` is not a weight of the irrep.
pub fn multiplicity(irrep: &Irrep, w: &Weight) -> u64 {
    irrep.table.get(w).copied().unwrap_or(0)
}

/// `q_λ = λ1 − λ2 mod 3`.
pub fn z3_charge(highest: &Weight) -> Result<Z3> {
    let (l1, l2) = dominant_ints(highest)?;
    Ok(Z3::new(l1 - l2))
}

/// Decomposition of `[λ] ⊗ [μ]`: convolve the two weight tables, then peel
/// off the irrep of the highest remaining weight until nothing is left.
pub fn tensor_decompose(lam: &Weight, mu: &Weight) -> Result<Vec<(Weight, u64)>> {
    let a = weight_system(lam)?;
    let b = weight_system(mu)?;
    let mut remaining: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for (wa, ma) in a.weights() {
        let wa = wa.as_ints().expect("integral");
        for (wb, mb) in b.weights() {
            let wb = wb.as_ints().expect("integral");
            *remaining.entry((wa.0 + wb.0, wa.1 + wb.1)).or_insert(0) += (ma * mb) as i64;
        }
    }
    let mut out = Vec::new();
    loop {
        remaining.retain(|_, m| *m != 0);
        // the maximum of a1 + a2 (= w·ρ) is attained at a highest weight
        let Some((&top, &n)) = remaining.iter().max_by_key(|(w, _)| (w.0 + w.1, w.0)) else {
            break;
        };
        assert!(n > 0 && top.0 >= 0 && top.1 >= 0, "peeling must stay non-negative");
        let sub = irrep(top.0, top.1)?;
        for (w, m) in sub.weights() {
            let w = w.as_ints().expect("integral");
            *remaining.entry(w).or_insert(0) -= n * m as i64;
        }
        out.push((Weight::int(top.0, top.1), n as u64));
    }
    out.sort();
    Ok(out)
}

/// `N_{λμ}^ν`.
pub fn fusion_coefficient(lam: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    Ok(tensor_decompose(lam, mu)?
        .into_iter()
        .find(|(w, _)| w == nu)
        .map(|(_, n)| n)
        .unwrap_or(0))
}

/// Whether `[λ]` contains all of `±h1, ±h2, ±h3` for the given sign.
pub fn contains_hj_triple(irrep: &Irrep, sign: i64) -> bool {
    let s = int(sign.signum());
    (1..=3).all(|j| multiplicity(irrep, &Weight::h(j).scale(&s)) > 0)
}

pub fn contains_zero(irrep: &Irrep) -> bool {
    multiplicity(irrep, &Weight::zero()) > 0
}

/// All dominant integral weights with `λ1 + λ2 ≤ cutoff`.
pub fn dominant_weights_up_to(cutoff: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for total in 0..=cutoff {
        for l1 in (0..=total).rev() {
            out.push(Weight::int(l1, total - l1));
        }
    }
    out
}
