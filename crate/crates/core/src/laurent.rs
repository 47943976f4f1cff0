//! Laurent polynomials in the Coulomb-gas coupling `b`.
//!
//! Every exact eigenvalue in this crate is a finite sum `Σ c_k b^k` with
//! rational `c_k`. Zero coefficients are never stored, so structural equality
//! is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, int, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · b^k`
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// The variable `b`.
    pub fn b() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `b^{-1}`.
    pub fn b_inv() -> Self {
        Self::monomial(Rational::one(), -1)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn exponents(&self) -> Vec<i32> {
        self.coeffs.keys().copied().collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, c)| (*k, c * s)))
    }

    /// Multiplies by `b^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(Rational::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `d/db`
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(k, c)| (k - 1, c * int(i64::from(*k)))),
        )
    }

    pub fn eval(&self, b: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, c)| to_f64(c) * b.powi(*k))
            .sum()
    }

    /// Exact value at `b² = b2` when only even powers occur.
    pub fn eval_at_b2(&self, b2: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            if k % 2 != 0 {
                return None;
            }
            acc += c * pow_rational(b2, k / 2);
        }
        Some(acc)
    }

    /// Exact value of `b · p(b)` at `b² = b2` when only odd powers occur.
    pub fn eval_times_b_at_b2(&self, b2: &Rational) -> Option<Rational> {
        self.shift(1).eval_at_b2(b2)
    }
}

fn pow_rational(x: &Rational, k: i32) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let monomial = match k {
                0 => String::new(),
                1 => "b".to_string(),
                k => format!("b^{k}"),
            };
            if *k == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{} {monomial}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
