//! Double-word arithmetic and reduction of step angles modulo 2π.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

/// Largest |t·ln n| (or linear argument) accepted by the reducers.
pub const MAX_ARGUMENT: f64 = 1e12;

/// 2π as three non-overlapping words.
pub const TWO_PI_3: [f64; 3] = [
    std::f64::consts::TAU,
    2.4492935982947064e-16,
    -5.989539619436679e-33,
];

pub const LN2: DoubleWord = DoubleWord {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

pub const TWO_PI: DoubleWord = DoubleWord {
    hi: TWO_PI_3[0],
    lo: TWO_PI_3[1],
};

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleWord {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleWord {
    pub const ZERO: DoubleWord = DoubleWord { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleWord = DoubleWord { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleWord { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        DoubleWord { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn scale(self, pow2: f64) -> Self {
        DoubleWord {
            hi: self.hi * pow2,
            lo: self.lo * pow2,
        }
    }

    pub fn recip(self) -> Self {
        DoubleWord::ONE / self
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            DoubleWord { hi, lo }
        } else {
            DoubleWord { hi, lo: 0.0 }
        }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    /// Natural logarithm to about 32 significant digits.
    pub fn ln(self) -> Result<Self> {
        if !(self.hi > 0.0) || !self.hi.is_finite() {
            return Err(Error::Domain(format!(
                "log of non-positive value {}",
                self.hi
            )));
        }
        let bits = self.hi.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        if biased == 0 {
            // subnormal: lift into the normal range first
            let lifted = self.scale(2f64.powi(600)).ln()?;
            return Ok(lifted - LN2.mul_f64(600.0));
        }
        // hi = f·2^e with f in [1, 2)
        let mut e = biased - 1023;
        let mut m = self.scale(pow2(-e));
        if m.hi > std::f64::consts::SQRT_2 {
            m = m.scale(0.5);
            e += 1;
        }
        let z = (m - DoubleWord::ONE) / (m + DoubleWord::ONE);
        let z2 = z * z;
        let inv = odd_reciprocals();
        let mut acc = inv[ATANH_TERMS - 1];
        for k in (0..ATANH_TERMS - 1).rev() {
            acc = acc * z2 + inv[k];
        }
        let ln_m = (z * acc).scale(2.0);
        Ok(ln_m + LN2.mul_f64(e as f64))
    }
}

const ATANH_TERMS: usize = 22;

fn odd_reciprocals() -> &'static [DoubleWord; ATANH_TERMS] {
    static TABLE: OnceLock<[DoubleWord; ATANH_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [DoubleWord::ZERO; ATANH_TERMS];
        for (k, slot) in t.iter_mut().enumerate() {
            *slot = DoubleWord::from_f64((2 * k + 1) as f64).recip();
        }
        t
    })
}

#[inline]
fn pow2(e: i64) -> f64 {
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl Add for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn add(self, b: DoubleWord) -> DoubleWord {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleWord { hi, lo }
    }
}

impl Sub for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn sub(self, b: DoubleWord) -> DoubleWord {
        self + (-b)
    }
}

impl Div for DoubleWord {
    type Output = DoubleWord;

    fn div(self, b: DoubleWord) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleWord { hi, lo } + DoubleWord::from_f64(q3)
    }
}

impl Neg for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn neg(self) -> DoubleWord {
        DoubleWord {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleWord {
    type Output = DoubleWord;
    #[inline]
    fn mul(self, b: DoubleWord) -> DoubleWord {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }
}

impl PartialOrd for DoubleWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl From<f64> for DoubleWord {
    fn from(x: f64) -> Self {
        DoubleWord::from_f64(x)
    }
}

impl fmt::Display for DoubleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

/// Parses plain decimal strings such as `-12.0625` or `0.69314718055994530941723`
/// to double-word accuracy.
impl FromStr for DoubleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("not a decimal: {s:?}"),
        };
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let chunk = 15;
        let ten15 = DoubleWord::from_f64(1e15);
        let mut value = DoubleWord::ZERO;
        for piece in int_part.as_bytes().chunks(chunk) {
            let width = piece.len() as i32;
            let digits: f64 = std::str::from_utf8(piece)
                .unwrap()
                .parse()
                .map_err(|_| bad())?;
            value = value.mul_f64(10f64.powi(width)) + DoubleWord::from_f64(digits);
        }
        let mut denom = DoubleWord::ONE;
        for piece in frac_part.as_bytes().chunks(chunk) {
            let width = piece.len() as i32;
            let digits: f64 = std::str::from_utf8(piece)
                .unwrap()
                .parse()
                .map_err(|_| bad())?;
            denom = if width == chunk as i32 {
                denom * ten15
            } else {
                denom.mul_f64(10f64.powi(width))
            };
            value = value + DoubleWord::from_f64(digits) / denom;
        }
        Ok(if neg { -value } else { value })
    }
}

/// ln 2π in double-word.
pub fn ln_two_pi() -> DoubleWord {
    static V: OnceLock<DoubleWord> = OnceLock::new();
    *V.get_or_init(|| TWO_PI.ln().expect("2π is positive"))
}

/// ln n to about 32 significant digits.
pub fn dw_log(n: u64) -> Result<DoubleWord> {
    if n == 0 {
        return Err(Error::Domain("log of zero".into()));
    }
    if n == 1 {
        return Ok(DoubleWord::ZERO);
    }
    if n > (1u64 << 53) {
        return Err(Error::Range(format!("step index {n} exceeds 2^53")));
    }
    DoubleWord::from_f64(n as f64).ln()
}

/// Angle reduced into (−2π, 0] with the number of whole turns removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAngle {
    pub theta: f64,
    pub removed_cycles: u64,
}

impl ReducedAngle {
    pub const ZERO: ReducedAngle = ReducedAngle {
        theta: 0.0,
        removed_cycles: 0,
    };
}

/// Splits a non-negative value as `2π·k + r` with `r` in [0, 2π).
pub fn mod_two_pi(a: DoubleWord) -> Result<(u64, DoubleWord)> {
    if !a.hi.is_finite() || a.hi.abs() > MAX_ARGUMENT {
        return Err(Error::Range(format!(
            "argument {:e} outside the supported range ±{:e}",
            a.hi, MAX_ARGUMENT
        )));
    }
    if a.is_negative() {
        return Err(Error::Domain(
            "mod_two_pi expects a non-negative value".into(),
        ));
    }
    let mut k = (a.hi / TWO_PI_3[0]).floor();
    let mut r = sub_multiple(a, k);
    while r.is_negative() {
        r = r + TWO_PI + DoubleWord::from_f64(TWO_PI_3[2]);
        k -= 1.0;
    }
    while r >= TWO_PI {
        r = r - TWO_PI - DoubleWord::from_f64(TWO_PI_3[2]);
        k += 1.0;
    }
    Ok((k as u64, r))
}

#[inline]
fn sub_multiple(a: DoubleWord, k: f64) -> DoubleWord {
    let (p1, e1) = two_prod(k, TWO_PI_3[0]);
    let (p2, e2) = two_prod(k, TWO_PI_3[1]);
    let p3 = k * TWO_PI_3[2];
    let r = a - DoubleWord::new(p1, e1);
    let r = r - DoubleWord::new(p2, e2);
    r - DoubleWord::from_f64(p3)
}

/// θ = −t·ln n reduced into (−2π, 0].
pub fn reduce_angle(t: f64, n: u64) -> Result<ReducedAngle> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "t must be finite and non-negative, got {t}"
        )));
    }
    let ln = dw_log(n)?;
    reduce_product(t, ln)
}

/// Reduces −t·L for a double-word logarithm L ≥ 0.
pub fn reduce_product(t: f64, ln: DoubleWord) -> Result<ReducedAngle> {
    if t == 0.0 || ln.hi == 0.0 {
        return Ok(ReducedAngle::ZERO);
    }
    let a = ln.mul_f64(t);
    let (k, r) = mod_two_pi(a)?;
    let theta = -r.to_f64();
    Ok(ReducedAngle {
        theta: if theta == 0.0 { 0.0 } else { theta },
        removed_cycles: k,
    })
}

/// Sign-preserving reduction: negative input lands in (−2π, 0], non-negative in [0, 2π).
pub fn reduce_linear_dw(a: DoubleWord) -> Result<f64> {
    if a.is_negative() {
        let (_, r) = mod_two_pi(-a)?;
        let v = -r.to_f64();
        Ok(if v == 0.0 { 0.0 } else { v })
    } else {
        Ok(mod_two_pi(a)?.1.to_f64())
    }
}

pub fn reduce_linear(a: f64) -> Result<f64> {
    reduce_linear_dw(DoubleWord::from_f64(a))
}

/// Signed distance from `a` to the nearest multiple of 2π, in (−π, π].
pub fn wrap_pi(a: f64) -> f64 {
    let r = a.rem_euclid(std::f64::consts::TAU);
    if r > std::f64::consts::PI {
        r - std::f64::consts::TAU
    } else {
        r
    }
}

/// Successive logarithms ln n, ln(n+1), … using ln(n+1) = ln n + 2·atanh(1/(2n+1)).
#[derive(Debug, Clone)]
pub struct LogStream {
    n: u64,
    ln: DoubleWord,
}

impl LogStream {
    pub fn starting_at(n: u64) -> Result<Self> {
        Ok(LogStream { n, ln: dw_log(n)? })
    }

    pub fn current(&self) -> (u64, DoubleWord) {
        (self.n, self.ln)
    }

    pub fn advance(&mut self) {
        let y = DoubleWord::from_f64((2 * self.n + 1) as f64).recip();
        let y2 = y * y;
        // atanh(y)/y = Σ y^{2k}/(2k+1)
        let mut terms = 1usize;
        let mut p = y2.hi;
        while p > 1e-34 && terms < ATANH_TERMS {
            p *= y2.hi;
            terms += 1;
        }
        self.n += 1;
        if p > 1e-34 {
            self.ln = DoubleWord::from_f64(self.n as f64).ln().unwrap_or(self.ln);
            return;
        }
        let inv = odd_reciprocals();
        let mut acc = inv[terms - 1];
        for k in (0..terms - 1).rev() {
            acc = acc * y2 + inv[k];
        }
        self.ln = self.ln + (y * acc).scale(2.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pi_words_match_decimal() {
        let p: DoubleWord = "6.2831853071795864769252867665590057683943387987502"
            .parse()
            .unwrap();
        assert_eq!(p.hi, TWO_PI_3[0]);
        assert!((p.lo - TWO_PI_3[1]).abs() < 1e-31);
    }

    #[test]
    fn ln2_words_match_decimal() {
        let l: DoubleWord = "0.69314718055994530941723212145817656807550013436025"
            .parse()
            .unwrap();
        assert_eq!(l.hi, LN2.hi);
        assert!((l.lo - LN2.lo).abs() < 1e-32);
    }

    #[test]
    fn division_round_trip() {
        let a = DoubleWord::new(1.0, 1e-20);
        let b = DoubleWord::from_f64(3.0);
        let q = a / b;
        let back = q * b - a;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn log_stream_tracks_direct_logs() {
        let mut s = LogStream::starting_at(1).unwrap();
        for _ in 0..5000 {
            s.advance();
        }
        let (n, ln) = s.current();
        assert_eq!(n, 5001);
        let direct = dw_log(5001).unwrap();
        let err = (ln - direct).to_f64().abs();
        assert!(err < 1e-28, "{err:e}");
    }

    #[test]
    fn subnormal_and_tiny_logs() {
        let x = DoubleWord::from_f64(1e-310);
        let v = x.ln().unwrap().to_f64();
        assert!((v - (1e-310f64).ln()).abs() < 1e-12);
        assert!(DoubleWord::from_f64(0.0).ln().is_err());
    }
}
