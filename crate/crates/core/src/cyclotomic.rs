//! Exact arithmetic in the cyclotomic field Q(zeta_N).
//!
//! Elements are kept in the power basis 1, z, ..., z^(phi(N)-1) with
//! z = zeta_N = exp(2 pi i / N), reduced modulo the N-th cyclotomic
//! polynomial. Coefficients share one positive denominator so that the
//! hot loops (character inner products) run on integers only.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub const DEFAULT_CONDUCTOR_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor {conductor} exceeds the cap {cap}")]
    ConductorCap { conductor: u64, cap: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse cyclotomic value `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mobius(mut n: u64) -> i8 {
    let mut result = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial, via
/// the product of (x^d - 1)^mu(n/d) over divisors d of n.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().expect("poly cache").get(&n) {
        return Arc::clone(p);
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let mut next = vec![0i64; poly.len() + d as usize];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // divide by x^d - 1: q_i = q_{i-d} - p_i read from the bottom
            let d = d as usize;
            let out_len = poly.len() - d;
            let mut q = vec![0i64; out_len];
            for i in 0..out_len {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    let poly = Arc::new(poly);
    poly_cache().lock().expect("poly cache").insert(n, Arc::clone(&poly));
    poly
}

/// Reduces a vector of exponent coefficients (index = power of zeta_n)
/// to the power basis of length phi(n).
fn reduce(n: u64, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let n_us = n as usize;
    if coeffs.len() > n_us {
        let tail = coeffs.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            coeffs[i % n_us] += c;
        }
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    if coeffs.len() > deg {
        for k in (deg..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            let shift = k - deg;
            for (j, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    coeffs[shift + j] -= &c * p;
                }
            }
        }
        coeffs.truncate(deg);
    }
    coeffs.resize(deg, BigInt::zero());
    coeffs
}

/// An exact element of Q(zeta_N).
#[derive(Debug, Clone)]
pub struct CycloElement {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    fn normalized(conductor: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        CycloElement { conductor, num, den }
    }

    /// Builds an element from coefficients of arbitrary powers of zeta_n.
    pub fn from_powers(conductor: u64, coeffs: &[BigRational]) -> Result<Self, CycloError> {
        check_conductor(conductor, DEFAULT_CONDUCTOR_CAP)?;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::normalized(conductor, reduce(conductor, ints), den))
    }

    pub fn zero(conductor: u64) -> Self {
        let phi = euler_phi(conductor) as usize;
        CycloElement { conductor, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn from_int(conductor: u64, value: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = value.into();
        e
    }

    pub fn from_rational(conductor: u64, value: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(conductor) as usize];
        num[0] = value.numer().clone();
        Self::normalized(conductor, num, value.denom().clone())
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(conductor, 1)
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Self::normalized(conductor, reduce(conductor, v), BigInt::one())
    }

    /// Sum of integer multiplicities times powers of zeta_n.
    pub fn from_power_counts(conductor: u64, counts: &[i64]) -> Self {
        let v = counts.iter().map(|&c| BigInt::from(c)).collect();
        Self::normalized(conductor, reduce(conductor, v), BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Re-expresses `self` in Q(zeta_m), where `m` is a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "embedding target must be a multiple of the conductor");
        let step = (m / self.conductor) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len().saturating_sub(1)) * step + 1];
        for (k, c) in self.num.iter().enumerate() {
            v[k * step] = c.clone();
        }
        CycloElement { conductor: m, num: reduce(m, v), den: self.den.clone() }
    }

    fn unify(&self, other: &Self, cap: u64) -> Result<(Self, Self), CycloError> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        let l = self.conductor.lcm(&other.conductor);
        check_conductor(l, cap)?;
        Ok((self.embed(l), other.embed(l)))
    }

    pub fn checked_op(&self, other: &Self, op: CycloOp, cap: u64) -> Result<Self, CycloError> {
        if self.conductor != other.conductor {
            let (a, b) = self.unify(other, cap)?;
            return a.checked_op(&b, op, cap);
        }
        let n = self.conductor;
        Ok(match op {
            CycloOp::Add | CycloOp::Sub => {
                let neg = op == CycloOp::Sub;
                let (num, den) = if self.den == other.den {
                    let num = self.num.iter().zip(&other.num).map(|(a, b)| if neg { a - b } else { a + b }).collect();
                    (num, self.den.clone())
                } else {
                    let num = self
                        .num
                        .iter()
                        .zip(&other.num)
                        .map(|(a, b)| {
                            let (x, y) = (a * &other.den, b * &self.den);
                            if neg {
                                x - y
                            } else {
                                x + y
                            }
                        })
                        .collect();
                    (num, &self.den * &other.den)
                };
                Self::normalized(n, num, den)
            }
            CycloOp::Mul => {
                let len = self.num.len() + other.num.len() - 1;
                let mut prod = vec![BigInt::zero(); len];
                for (i, a) in self.num.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.num.iter().enumerate() {
                        if !b.is_zero() {
                            prod[i + j] += a * b;
                        }
                    }
                }
                Self::normalized(n, reduce(n, prod), &self.den * &other.den)
            }
        })
    }

    /// Complex conjugation zeta -> zeta^(N-1).
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut v = vec![BigInt::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        CycloElement { conductor: self.conductor, num: reduce(self.conductor, v), den: self.den.clone() }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num.iter().skip(1).all(Zero::is_zero) {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.conductor, num, &self.den * q.denom())
    }

    /// Image under zeta_N -> exp(2 pi i / N).
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let n = self.conductor as f64;
        self.num
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }

    /// Lexicographic order on the coefficient vectors after unifying conductors.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.unify(other, u64::MAX).expect("uncapped unify");
        for (x, y) in a.coeffs().iter().zip(b.coeffs().iter()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Parses the report text form, e.g. `1/2 - 3*z + z^2`, where `z` stands for zeta_n.
    pub fn parse(text: &str, conductor: u64) -> Result<Self, CycloError> {
        check_conductor(conductor, DEFAULT_CONDUCTOR_CAP)?;
        let err = |reason: &str| CycloError::Parse { text: text.to_string(), reason: reason.into() };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty value"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef_text, power) = match body.find('z') {
                None => (body, 0i64),
                Some(pos) => {
                    let (c, zpart) = body.split_at(pos);
                    let c = if c.is_empty() {
                        "1"
                    } else {
                        c.strip_suffix('*').ok_or_else(|| err("expected `*` before z"))?
                    };
                    let p = match zpart.strip_prefix('z').unwrap_or("") {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|e| e.parse::<i64>().ok())
                            .ok_or_else(|| err("bad exponent"))?,
                    };
                    (c, p)
                }
            };
            let coef = parse_rational(coef_text).ok_or_else(|| err("bad coefficient"))?;
            let idx = power.rem_euclid(conductor as i64) as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, BigRational::zero());
            }
            coeffs[idx] += coef * BigRational::from_integer(BigInt::from(sign));
        }
        Self::from_powers(conductor, &coeffs)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().ok()?;
            let b: BigInt = b.parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn check_conductor(n: u64, cap: u64) -> Result<(), CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroConductor);
    }
    if n > cap {
        return Err(CycloError::ConductorCap { conductor: n, cap });
    }
    Ok(())
}

/// Add, subtract or multiply with conductor unification under the default cap.
pub fn cyc_arith(a: &CycloElement, b: &CycloElement, op: CycloOp) -> Result<CycloElement, CycloError> {
    a.checked_op(b, op, DEFAULT_CONDUCTOR_CAP)
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        match self.unify(other, u64::MAX) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => false,
        }
    }
}

impl Eq for CycloElement {}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "{mag}*{zpart}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            /// Panics if the unified conductor exceeds the default cap.
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                cyc_arith(self, rhs, $op).expect("conductor within cap")
            }
        }
        impl $tr<CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, CycloOp::Add);
binop!(Sub, sub, CycloOp::Sub);
binop!(Mul, mul, CycloOp::Mul);

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { conductor: self.conductor, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64, k: i64) -> CycloElement {
        CycloElement::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..60u64 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn arithmetic_examples() {
        let minus_one = CycloElement::from_int(3, -1);
        assert_eq!(&z(3, 1) + &z(3, 2), minus_one);
        assert_eq!(&z(4, 1) * &z(4, 1), CycloElement::from_int(4, -1));
        let a = &CycloElement::one(5) + &z(5, 1);
        let b = &CycloElement::one(5) + &z(5, 4);
        let p = &a * &b;
        assert_eq!(p, &(&CycloElement::from_int(5, 2) + &z(5, 1)) + &z(5, 4));
        let lhs = p.to_complex();
        assert!((lhs.re - 2.618033988749895).abs() < 1e-9 && lhs.im.abs() < 1e-9);
        assert!((lhs.re - a.to_complex().norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert_eq!(CycloElement::from_int(7, -1).conj(), CycloElement::from_int(7, -1));
        let a = &CycloElement::from_int(8, 2) + &(&CycloElement::from_int(8, 3) * &z(8, 1));
        let c = a.conj();
        assert_eq!(c, &CycloElement::from_int(8, 2) + &(&CycloElement::from_int(8, 3) * &z(8, 7)));
        let (x, y) = (a.to_complex(), c.to_complex());
        assert!((x.conj() - y).norm() < 1e-9);
    }

    #[test]
    fn integrality() {
        assert_eq!(CycloElement::from_int(1, 5).as_integer(), Some(BigInt::from(5)));
        assert_eq!(z(3, 1).as_integer(), None);
        let e = &(&z(3, 1) + &z(3, 2)) + &CycloElement::from_int(3, 2);
        assert_eq!(e.as_integer(), Some(BigInt::from(1)));
        let half = CycloElement::from_rational(6, &BigRational::new(1.into(), 2.into()));
        assert_eq!(half.as_integer(), None);
    }

    #[test]
    fn mixed_conductors_unify_by_lcm() {
        let s = &z(4, 1) + &z(6, 1);
        assert_eq!(s.conductor(), 12);
        let expect = z(4, 1).to_complex() + z(6, 1).to_complex();
        assert!((s.to_complex() - expect).norm() < 1e-9);
        assert_eq!(z(4, 1), z(8, 2));
        let big = z(1000, 1);
        assert!(matches!(cyc_arith(&big, &z(1001, 1), CycloOp::Add), Err(CycloError::ConductorCap { .. })));
    }

    #[test]
    fn text_round_trip() {
        for text in ["0", "1", "-1", "z", "-z^2", "1/2 - 3*z + z^3", "2 + 3/4*z^5"] {
            let e = CycloElement::parse(text, 24).unwrap();
            let again = CycloElement::parse(&e.to_string(), 24).unwrap();
            assert_eq!(e, again, "{text}");
        }
        assert_eq!(CycloElement::parse("z^3", 3).unwrap(), CycloElement::one(3));
        assert_eq!(CycloElement::parse("-1 - z", 3).unwrap(), z(3, 2));
        assert_eq!(z(3, 2).to_string(), "-1 - z");
        assert!(CycloElement::parse("2 z", 5).is_err());
        assert!(CycloElement::parse("", 5).is_err());
        assert!(CycloElement::parse("1/0", 5).is_err());
    }

    fn arb_element() -> impl Strategy<Value = CycloElement> {
        (1u64..=24, proptest::collection::vec((-4i64..=4, 1i64..=3), 0..6), proptest::collection::vec(0i64..48, 0..6))
            .prop_map(|(n, cs, ks)| {
                let mut acc = CycloElement::zero(n);
                for ((num, den), k) in cs.into_iter().zip(ks) {
                    let q = BigRational::new(num.into(), den.into());
                    acc = &acc + &z(n, k).scale(&q);
                }
                acc
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn embedding_is_a_homomorphism(a in arb_element(), b in arb_element()) {
            let prod = (&a * &b).to_complex();
            prop_assert!((prod - a.to_complex() * b.to_complex()).norm() < 1e-9);
            let sum = (&a + &b).to_complex();
            prop_assert!((sum - (a.to_complex() + b.to_complex())).norm() < 1e-9);
            prop_assert!((a.conj().to_complex() - a.to_complex().conj()).norm() < 1e-9);
        }
    }
}
