//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! Elements are stored as Σ_k c_k ζ^k over all `m` powers (the group ring
//! Q[x]/(x^m − 1)). Equality and rationality are decided after reducing modulo
//! the m-th cyclotomic polynomial, which gives a unique representative of
//! degree < φ(m).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Self { order, coeffs: vec![BigRational::zero(); order] }
    }

    pub fn from_rational(order: usize, value: BigRational) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    pub fn from_int(order: usize, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(value.into()))
    }

    /// ζ_m^k.
    pub fn root_power(order: usize, k: usize) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[k % order] = BigRational::one();
        out
    }

    /// `re + i·im` with rational parts, embedded in Q(ζ_4).
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        let mut out = Self::zero(4);
        out.coeffs[0] = re;
        out.coeffs[1] = im;
        out
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), order);
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Re-express in Q(ζ_target); `target` must be a multiple of the current order.
    pub fn lift(&self, target: usize) -> Self {
        assert!(target.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, target);
        let step = target / self.order;
        let mut out = Self::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * step] = c.clone();
        }
        out
    }

    pub fn conj(&self) -> Self {
        let m = self.order;
        let mut out = Self::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(m - k) % m] = c.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { order: self.order, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let m = self.order;
        let mut out = Self::zero(m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % m] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(self.order, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Unique representative modulo Φ_m, of length φ(m).
    pub fn canonical(&self) -> Vec<BigRational> {
        let phi = cyclotomic_polynomial(self.order);
        poly_rem(&self.coeffs, &phi)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    pub fn exact_eq(&self, other: &Self) -> bool {
        let m = self.order.lcm(&other.order);
        self.lift(m).add(&other.lift(m).scale(&-BigRational::one())).is_zero()
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        let canon = self.canonical();
        if canon.iter().skip(1).all(Zero::is_zero) {
            Some(canon.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
                let w = c.to_f64().unwrap_or(f64::NAN);
                num_complex::Complex64::new(w * theta.cos(), w * theta.sin())
            })
            .sum()
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.canonical().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})·z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer coefficients of Φ_m, lowest degree first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigRational> {
    // x^m - 1 divided by Φ_d for every proper divisor d of m.
    let mut num = vec![BigRational::zero(); m + 1];
    num[0] = -BigRational::one();
    num[m] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let (q, r) = poly_divmod(num, den);
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

fn poly_rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let deg = den.len() - 1;
    let (_, mut r) = poly_divmod(num, den);
    r.resize(deg.max(1), BigRational::zero());
    r
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let factor = &rem[i] / &lead;
        for (j, d) in den.iter().enumerate() {
            let idx = i - dn + j;
            rem[idx] = &rem[idx] - &factor * d;
        }
        quot[i - dn] = factor;
    }
    rem.truncate(dn);
    (quot, rem)
}

/// Parses `"3"`, `"-1/2"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
