//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Variables are the unit eigenvalues `u1..ug`; the conjugate `~ui` is
//! `ui^-1`, so conjugation negates every exponent. Terms are kept in a
//! canonical graded-lexicographic order (total absolute degree first),
//! which makes every rendering deterministic and diffable.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector with graded-lex ordering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expo(pub SmallVec<[i16; 12]>);

impl Expo {
    fn grade(&self) -> i32 {
        self.0.iter().map(|&e| (e as i32).abs()).sum()
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}
impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Expo, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms
                .insert(Expo(SmallVec::from_elem(0, nvars)), BigInt::from(c));
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The monomial `ui^e` (1-based variable index).
    pub fn var_pow(nvars: usize, i: usize, e: i16) -> Self {
        assert!((1..=nvars).contains(&i));
        let mut p = Self::zero(nvars);
        let mut expo = SmallVec::from_elem(0i16, nvars);
        expo[i - 1] = e;
        p.terms.insert(Expo(expo), BigInt::one());
        p
    }

    pub fn monomial(nvars: usize, coeff: i64, expos: &[i16]) -> Self {
        assert_eq!(expos.len(), nvars);
        let mut p = Self::zero(nvars);
        if coeff != 0 {
            p.terms
                .insert(Expo(SmallVec::from_slice(expos)), BigInt::from(coeff));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &BigInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, e: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_budgeted(other, usize::MAX)
            .expect("unbudgeted multiply")
    }

    /// Product with a cap on the number of stored terms.
    pub fn mul_budgeted(&self, other: &Self, budget: usize) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.0.clone();
                for (x, y) in e.iter_mut().zip(eb.0.iter()) {
                    *x += *y;
                }
                out.insert(Expo(e), ca * cb);
                if out.terms.len() > budget {
                    return Err(Error::TermBudget {
                        terms: out.terms.len(),
                        budget,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Conjugation: negate every exponent.
    pub fn conj(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let neg: SmallVec<[i16; 12]> = e.0.iter().map(|&x| -x).collect();
                    (Expo(neg), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Expo(SmallVec::from_elem(0, self.nvars)))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Constant term of `self * other` without materializing the product.
    pub fn inner_constant(&self, other: &Self) -> BigInt {
        assert_eq!(self.nvars, other.nvars);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BigInt::zero();
        for (e, c) in &small.terms {
            let neg: SmallVec<[i16; 12]> = e.0.iter().map(|&x| -x).collect();
            if let Some(d) = large.terms.get(&Expo(neg)) {
                acc += c * d;
            }
        }
        acc
    }

    /// Evaluate at one complex value per variable.
    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = Complex64::new(coeff_to_f64(c), 0.0);
            for (i, &ex) in e.0.iter().enumerate() {
                if ex != 0 {
                    m *= values[i].powi(ex as i32);
                }
            }
            acc += m;
        }
        acc
    }

    /// Canonical text form: terms in graded-lex order, `~ui` for `ui^-1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || e.0.iter().all(|&x| x == 0) {
                parts.push(abs.to_string());
            }
            for (i, &ex) in e.0.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                let name = if ex < 0 {
                    format!("~u{}", i + 1)
                } else {
                    format!("u{}", i + 1)
                };
                let a = ex.unsigned_abs();
                if a == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{a}"));
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

fn coeff_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
