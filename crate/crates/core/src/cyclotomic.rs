//! Exact arithmetic in the cyclotomic field `Q(zeta_n)`.
//!
//! Elements are rational coefficient vectors on the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)` modulo the n-th cyclotomic polynomial.
//! One field context per level is cached and shared; all values are
//! immutable and safe to use across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 = prod_{d | n} Phi_d, so divide out the proper divisors.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials, panics if not divisible.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// Shared context for one cyclotomic level.
pub struct CycField {
    n: u32,
    phi: usize,
    /// `x^d mod Phi_n` for `d` in `0..=max(2*phi-2, n-1)`.
    red: Vec<Vec<BigInt>>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();

/// The cached field context of level `n`.
pub fn field(n: u32) -> Arc<CycField> {
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(CycField::build(n)))
        .clone()
}

impl CycField {
    fn build(n: u32) -> CycField {
        assert!(n >= 1);
        let phi_poly = cyclotomic_polynomial(n);
        let phi = phi_poly.len() - 1;
        let max_deg = (2 * phi).saturating_sub(2).max(n as usize - 1);
        let mut red: Vec<Vec<BigInt>> = Vec::with_capacity(max_deg + 1);
        for d in 0..phi {
            let mut row = vec![BigInt::zero(); phi];
            row[d] = BigInt::one();
            red.push(row);
        }
        for d in phi..=max_deg {
            // x^d = x * x^(d-1), then substitute x^phi = -(lower part of Phi).
            let prev = red[d - 1].clone();
            let mut row = vec![BigInt::zero(); phi];
            for i in 1..phi {
                row[i] = prev[i - 1].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    row[i] -= &top * &phi_poly[i];
                }
            }
            red.push(row);
        }
        CycField { n, phi, red }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phi(&self) -> usize {
        self.phi
    }
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyc {
    f: Arc<CycField>,
    c: Vec<BigRational>,
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.f.n == other.f.n && self.c == other.c
    }
}
impl Eq for Cyc {}

impl Cyc {
    pub fn zero(n: u32) -> Cyc {
        let f = field(n);
        let phi = f.phi;
        Cyc {
            f,
            c: vec![BigRational::zero(); phi],
        }
    }

    pub fn from_int(n: u32, v: i64) -> Cyc {
        let mut z = Cyc::zero(n);
        z.c[0] = BigRational::from_integer(v.into());
        z
    }

    pub fn from_rational(n: u32, v: BigRational) -> Cyc {
        let mut z = Cyc::zero(n);
        z.c[0] = v;
        z
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Cyc {
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        let c = f.red[k]
            .iter()
            .map(|b| BigRational::from_integer(b.clone()))
            .collect();
        Cyc { f, c }
    }

    /// The imaginary unit; requires `4 | n`.
    pub fn i_unit(n: u32) -> Cyc {
        assert!(n % 4 == 0, "i lives in Q(zeta_n) only when 4 | n");
        Cyc::zeta_pow(n, n as i64 / 4)
    }

    pub fn level(&self) -> u32 {
        self.f.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Integer value if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.c[1..].iter().all(|x| x.is_zero()) && self.c[0].is_integer() {
            Some(self.c[0].to_integer())
        } else {
            None
        }
    }

    fn check_level(&self, other: &Cyc) {
        assert_eq!(
            self.f.n, other.f.n,
            "cyclotomic level mismatch: {} vs {}",
            self.f.n, other.f.n
        );
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        self.check_level(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a + b)
            .collect();
        Cyc {
            f: self.f.clone(),
            c,
        }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.check_level(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a - b)
            .collect();
        Cyc {
            f: self.f.clone(),
            c,
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            f: self.f.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        self.check_level(other);
        let phi = self.f.phi;
        let mut wide = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut c = vec![BigRational::zero(); phi];
        for (d, w) in wide.into_iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if d < phi {
                c[d] += w;
            } else {
                for (i, r) in self.f.red[d].iter().enumerate() {
                    if !r.is_zero() {
                        c[i] += &w * r;
                    }
                }
            }
        }
        Cyc {
            f: self.f.clone(),
            c,
        }
    }

    pub fn scale_int(&self, k: i64) -> Cyc {
        let k = BigRational::from_integer(k.into());
        Cyc {
            f: self.f.clone(),
            c: self.c.iter().map(|a| a * &k).collect(),
        }
    }

    /// Galois action `zeta -> zeta^t`; `t` must be a unit mod `n`.
    pub fn galois(&self, t: u32) -> Result<Cyc> {
        let n = self.f.n;
        if crate::finite_field::gcd(t as u64, n as u64) != 1 {
            return Err(Error::NotAGenerator {
                a: t as u64,
                m: n as u64,
                order: 0,
                expected: 1,
            });
        }
        let mut c = vec![BigRational::zero(); self.f.phi];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let target = (j as u64 * t as u64 % n as u64) as usize;
            for (i, r) in self.f.red[target].iter().enumerate() {
                if !r.is_zero() {
                    c[i] += a * r;
                }
            }
        }
        Ok(Cyc {
            f: self.f.clone(),
            c,
        })
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Cyc {
        self.galois(self.f.n - 1).expect("n-1 is a unit mod n")
    }

    /// Numeric embedding `zeta_n -> exp(2 pi i / n)`.
    pub fn embed(&self) -> Complex64 {
        let n = self.f.n as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = rational_to_f64(a);
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n;
            z += Complex64::new(theta.cos(), theta.sin()) * v;
        }
        z
    }

    /// Render coefficients as `num/den` strings (used by the general block form).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.c.iter().map(rational_string).collect()
    }
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // good enough for the magnitudes that appear here
    let num = r.numer();
    let den = r.denom();
    let scale = 1i64 << 52;
    let q = (num * scale) / den;
    let approx: f64 = q.to_string().parse().unwrap_or(0.0);
    approx / scale as f64
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", rational_string(a))?;
            } else if a.is_one() {
                write!(f, "z^{j}")?;
            } else {
                write!(f, "{}*z^{j}", rational_string(a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (level {})", self.f.n)
    }
}
