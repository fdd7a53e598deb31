//! Radix-10 arbitrary-precision reals.
//!
//! A [`Scalar`] is `mantissa × 10^exponent` carrying its own significant-digit
//! budget, inherited from the [`PrecisionContext`] that created it. Binary
//! operations work at the larger budget of their two operands, so the
//! precision always comes from an explicit context and never from global state.
//!
//! Rounding discipline:
//!
//! * `+`, `-`, `*`, `/` and [`Scalar::sqrt`] are correctly rounded,
//!   round-half-to-even, to the result budget.
//! * Elementary functions (`sin`, `cos`, `atan2`, `asin`, `acos`, π) are
//!   evaluated at the budget plus [`GUARD_DIGITS`] and then rounded once, so
//!   they are faithfully rounded (error below one unit in the last digit in
//!   practice, always within two).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Extra digits carried inside elementary-function kernels.
pub const GUARD_DIGITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("precision of {0} digits is below the supported minimum of 30")]
    Precision(u32),
    #[error("{function}: argument {value} is outside the domain")]
    Domain {
        function: &'static str,
        value: String,
    },
    #[error("cannot parse {0:?} as a decimal number")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Significant-digit budget for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 30;
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn new(digits: u32) -> Result<Self, ScalarError> {
        if digits < Self::MIN_DIGITS {
            return Err(ScalarError::Precision(digits));
        }
        Ok(Self { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// The same context with `extra` more digits.
    pub fn widened(self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero_with(self.digits)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, v: i64) -> Scalar {
        Scalar::round(BigInt::from(v), 0, self.digits)
    }

    /// `num / den`, correctly rounded.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        &self.int(num) / &self.int(den)
    }

    /// `10^(k − digits)`: the tolerance scale used throughout the geometry code.
    pub fn eps(self, k: i32) -> Scalar {
        Scalar {
            mant: BigInt::one(),
            exp: i64::from(k) - i64::from(self.digits),
            digits: self.digits,
        }
    }

    pub fn parse(self, s: &str) -> Result<Scalar, ScalarError> {
        let (mant, exp) = parse_decimal(s)?;
        Ok(Scalar::round(mant, exp, self.digits))
    }

    pub fn pi(self) -> Scalar {
        pi(self.digits)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            digits: Self::DEFAULT_DIGITS,
        }
    }
}

impl TryFrom<u32> for PrecisionContext {
    type Error = ScalarError;

    fn try_from(digits: u32) -> Result<Self, Self::Error> {
        Self::new(digits)
    }
}

impl From<PrecisionContext> for u32 {
    fn from(ctx: PrecisionContext) -> u32 {
        ctx.digits
    }
}

/// A real number rounded to a decimal significant-digit budget.
#[derive(Clone)]
pub struct Scalar {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

thread_local! {
    static POW10: RefCell<Vec<BigUint>> = RefCell::new(vec![BigUint::one()]);
    static PI_CACHE: RefCell<HashMap<u32, Scalar>> = RefCell::new(HashMap::new());
}

fn pow10(n: u32) -> BigUint {
    POW10.with(|cell| {
        let mut table = cell.borrow_mut();
        while table.len() <= n as usize {
            let next = table.last().expect("seeded with 10^0") * 10u32;
            table.push(next);
        }
        table[n as usize].clone()
    })
}

/// Number of decimal digits of a nonzero magnitude.
fn num_digits(m: &BigUint) -> u32 {
    let bits = m.bits();
    if bits == 0 {
        return 0;
    }
    // 2^(bits-1) <= m < 2^bits pins the digit count to one of two values.
    let lower = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as u32 + 1;
    if *m >= pow10(lower) {
        lower + 1
    } else {
        lower
    }
}

fn parse_decimal(s: &str) -> Result<(BigInt, i64), ScalarError> {
    let err = || ScalarError::Parse(s.to_owned());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (coeff, exp10) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = body[i + 1..].parse().map_err(|_| err())?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match coeff.find('.') {
        Some(i) => (&coeff[..i], &coeff[i + 1..]),
        None => (coeff, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let all: String = [int_part, frac_part].concat();
    let mag = BigUint::parse_bytes(all.as_bytes(), 10).ok_or_else(err)?;
    let mant = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
    Ok((mant, exp10 - frac_part.len() as i64))
}

impl Scalar {
    fn zero_with(digits: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
            digits,
        }
    }

    /// Rounds `mant × 10^exp` half-to-even onto `digits` significant digits.
    fn round(mant: BigInt, exp: i64, digits: u32) -> Self {
        if mant.is_zero() {
            return Self::zero_with(digits);
        }
        let (sign, mag) = mant.into_parts();
        let nd = num_digits(&mag);
        if nd <= digits {
            return Self {
                mant: BigInt::from_biguint(sign, mag),
                exp,
                digits,
            };
        }
        let shift = nd - digits;
        let unit = pow10(shift);
        let (mut q, r) = mag.div_rem(&unit);
        match (r << 1u32).cmp(&unit) {
            Ordering::Greater => q += 1u32,
            Ordering::Equal if q.is_odd() => q += 1u32,
            _ => {}
        }
        let mut exp = exp + i64::from(shift);
        if q == pow10(digits) {
            q = pow10(digits - 1);
            exp += 1;
        }
        Self {
            mant: BigInt::from_biguint(sign, q),
            exp,
            digits,
        }
    }

    /// Like [`Scalar::round`] but for a truncated value whose discarded tail
    /// was nonzero; appends a sticky digit so ties break correctly.
    fn round_inexact(mant: BigInt, exp: i64, digits: u32, inexact: bool) -> Self {
        if !inexact {
            return Self::round(mant, exp, digits);
        }
        let sticky = if mant.is_negative() { -1 } else { 1 };
        Self::round(mant * 10 + sticky, exp - 1, digits)
    }

    pub fn from_int(v: i64, digits: u32) -> Self {
        Self::round(BigInt::from(v), 0, digits)
    }

    /// Significant-digit budget of this value.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn context(&self) -> PrecisionContext {
        PrecisionContext {
            digits: self.digits,
        }
    }

    /// Re-rounds onto a different digit budget.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::round(self.mant.clone(), self.exp, digits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
            digits: self.digits,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Decimal order of magnitude: `10^(top-1) <= |x| < 10^top`.
    /// Zero reports `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + i64::from(num_digits(self.mant.magnitude()))
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant * BigInt::from_biguint(Sign::Plus, pow10(self.exp as u32));
        }
        let shift = (-self.exp) as u64;
        let mag = self.mant.magnitude();
        if shift > u64::from(num_digits(mag)) + 1 {
            return BigInt::zero();
        }
        let unit = pow10(shift as u32);
        let (mut q, r) = mag.div_rem(&unit);
        if (r << 1u32) >= unit {
            q += 1u32;
        }
        BigInt::from_biguint(self.mant.sign(), q).max(BigInt::zero())
            * if self.is_negative() { -1 } else { 1 }
    }

    pub fn to_f64(&self) -> f64 {
        // Rust's float parser is correctly rounded for arbitrary-length input.
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with exactly `sig` significant digits,
    /// e.g. `3.750723412843e-11`.
    pub fn to_scientific(&self, sig: u32) -> String {
        let sig = sig.max(1);
        let r = Self::round(self.mant.clone(), self.exp, sig);
        if r.is_zero() {
            return if sig == 1 {
                "0e0".to_owned()
            } else {
                format!("0.{}e0", "0".repeat(sig as usize - 1))
            };
        }
        let mut s = r.mant.magnitude().to_str_radix(10);
        let mut exp = r.exp;
        // pad to exactly `sig` digits
        while (s.len() as u32) < sig {
            s.push('0');
            exp -= 1;
        }
        let e10 = exp + s.len() as i64 - 1;
        let sign = if r.is_negative() { "-" } else { "" };
        if s.len() == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// Exact value as a positional decimal with every carried digit.
    pub fn to_plain_string(&self) -> String {
        let (digits, exp) = self.stripped();
        if digits == "0" {
            return "0".to_owned();
        }
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{}", positional(&digits, exp))
    }

    /// Digit string with trailing zeros removed, plus the matching exponent.
    fn stripped(&self) -> (String, i64) {
        if self.is_zero() {
            return ("0".to_owned(), 0);
        }
        let s = self.mant.magnitude().to_str_radix(10);
        let trimmed = s.trim_end_matches('0');
        let exp = self.exp + (s.len() - trimmed.len()) as i64;
        (trimmed.to_owned(), exp)
    }

    pub fn to_degrees(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        let v = &(&self.with_digits(w) * &Self::from_int(180, w)) / &pi(w);
        v.with_digits(self.digits)
    }

    pub fn to_radians(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        let v = &(&self.with_digits(w) * &pi(w)) / &Self::from_int(180, w);
        v.with_digits(self.digits)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(div_impl(self, rhs))
    }

    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.is_negative() {
            return Err(self.domain("sqrt"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let target = i64::from(self.digits) + 2;
        let mag = self.mant.magnitude();
        let nd = i64::from(num_digits(mag));
        let mut shift = (2 * target - nd).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = mag * pow10(shift as u32);
        let root = scaled.sqrt();
        let inexact = &root * &root != scaled;
        Ok(Self::round_inexact(
            BigInt::from_biguint(Sign::Plus, root),
            (self.exp - shift) / 2,
            self.digits,
            inexact,
        ))
    }

    pub fn sin(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        let (r, quadrant) = self.reduce_quarter_turns(w);
        let v = match quadrant {
            0 => sin_series(&r),
            1 => cos_series(&r),
            2 => -sin_series(&r),
            _ => -cos_series(&r),
        };
        v.with_digits(self.digits)
    }

    pub fn cos(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        let (r, quadrant) = self.reduce_quarter_turns(w);
        let v = match quadrant {
            0 => cos_series(&r),
            1 => -sin_series(&r),
            2 => -cos_series(&r),
            _ => sin_series(&r),
        };
        v.with_digits(self.digits)
    }

    /// `x − sin x` without the cancellation of the naive difference for small
    /// `x`; the circular-segment kernel depends on it.
    pub fn x_minus_sin(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        if self.top() > 0 {
            return (self - &self.sin()).with_digits(self.digits);
        }
        let x = self.with_digits(w);
        let x2 = x.square();
        let mut term = &(&x2 * &x) / &Self::from_int(6, w);
        let mut sum = term.clone();
        let mut k: i64 = 2;
        loop {
            term = -(&(&term * &x2) / &Self::from_int((2 * k) * (2 * k + 1), w));
            if term.is_zero() || term.top() < sum.top() - i64::from(w) - 2 {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        sum.with_digits(self.digits)
    }

    pub fn atan(&self) -> Self {
        let w = self.digits + GUARD_DIGITS;
        let x = self.with_digits(w);
        let v = if x.is_negative() {
            -atan_nonneg(&x.abs())
        } else {
            atan_nonneg(&x)
        };
        v.with_digits(self.digits)
    }

    /// Angle of the vector `(x, y)` in `(−π, π]`.
    pub fn atan2(y: &Self, x: &Self) -> Result<Self, ScalarError> {
        if y.is_zero() && x.is_zero() {
            return Err(ScalarError::Domain {
                function: "atan2",
                value: "(0, 0)".to_owned(),
            });
        }
        let digits = y.digits.max(x.digits);
        let w = digits + GUARD_DIGITS;
        let ay = y.abs().with_digits(w);
        let ax = x.abs().with_digits(w);
        let base = if ay <= ax {
            atan_nonneg(&(&ay / &ax))
        } else {
            &half_pi(w) - &atan_nonneg(&(&ax / &ay))
        };
        let unsigned = if x.is_negative() {
            &pi(w) - &base
        } else {
            base
        };
        let v = if y.is_negative() { -unsigned } else { unsigned };
        Ok(v.with_digits(digits))
    }

    pub fn asin(&self) -> Result<Self, ScalarError> {
        let (s, c) = self.unit_complement("asin")?;
        Ok(Self::atan2(&s, &c)?.with_digits(self.digits))
    }

    pub fn acos(&self) -> Result<Self, ScalarError> {
        let (s, c) = self.unit_complement("acos")?;
        Ok(Self::atan2(&c, &s)?.with_digits(self.digits))
    }

    /// `(x, sqrt(1 − x²))` at guard precision, for |x| ≤ 1.
    fn unit_complement(&self, function: &'static str) -> Result<(Self, Self), ScalarError> {
        let w = self.digits + GUARD_DIGITS;
        let one = Self::from_int(1, w);
        if self.abs() > one {
            return Err(self.domain(function));
        }
        let x = self.with_digits(w);
        // (1 − x)(1 + x) keeps full relative accuracy as |x| → 1
        let c = (&(&one - &x) * &(&one + &x)).sqrt()?;
        Ok((x, c))
    }

    fn domain(&self, function: &'static str) -> ScalarError {
        ScalarError::Domain {
            function,
            value: self.to_string(),
        }
    }

    /// Returns `r` with `|r| <= π/4` and `k mod 4` such that `x = r + kπ/2`.
    fn reduce_quarter_turns(&self, w: u32) -> (Self, u8) {
        let x = self.with_digits(w);
        if x.top() <= 0 && x.abs() < Self::round(BigInt::from(78), -2, w) {
            return (x, 0);
        }
        // π at roughly double precision keeps r relatively accurate near kπ/2
        let wr = 2 * w + self.top().max(0) as u32;
        let xr = self.with_digits(wr);
        let hp = half_pi(wr);
        let k = (&xr / &hp).round_to_integer();
        let r = &xr - &(&Self::round(k.clone(), 0, wr) * &hp);
        let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0);
        (r.with_digits(w), quadrant)
    }
}

fn positional(digits: &str, exp: i64) -> String {
    let n = digits.len() as i64;
    if exp >= 0 {
        format!("{digits}{}", "0".repeat(exp as usize))
    } else if n + exp > 0 {
        let split = (n + exp) as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{digits}", "0".repeat((-(n + exp)) as usize))
    }
}

fn pi(digits: u32) -> Scalar {
    if let Some(v) = PI_CACHE.with(|c| c.borrow().get(&digits).cloned()) {
        return v;
    }
    // Machin: π = 16·atan(1/5) − 4·atan(1/239), in fixed point.
    let guard = 10;
    let scale = BigInt::from_biguint(Sign::Plus, pow10(digits + guard));
    let fixed = arctan_inverse(5, &scale) * 16 - arctan_inverse(239, &scale) * 4;
    let v = Scalar::round(fixed, -i64::from(digits + guard), digits);
    PI_CACHE.with(|c| c.borrow_mut().insert(digits, v.clone()));
    v
}

fn half_pi(digits: u32) -> Scalar {
    &pi(digits + 1) / &Scalar::from_int(2, digits)
}

/// `atan(1/n) · scale`, truncated.
fn arctan_inverse(n: u64, scale: &BigInt) -> BigInt {
    let n2 = BigInt::from(n * n);
    let mut power = scale / BigInt::from(n);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &n2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn sin_series(r: &Scalar) -> Scalar {
    if r.is_zero() {
        return r.clone();
    }
    let w = r.digits;
    let r2 = r.square();
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut k: i64 = 1;
    loop {
        term = -(&(&term * &r2) / &Scalar::from_int((2 * k) * (2 * k + 1), w));
        if term.is_zero() || term.top() < sum.top() - i64::from(w) - 2 {
            return sum;
        }
        sum = &sum + &term;
        k += 1;
    }
}

fn cos_series(r: &Scalar) -> Scalar {
    let w = r.digits;
    let r2 = r.square();
    let mut term = Scalar::from_int(1, w);
    let mut sum = term.clone();
    let mut k: i64 = 1;
    loop {
        term = -(&(&term * &r2) / &Scalar::from_int((2 * k - 1) * (2 * k), w));
        if term.is_zero() || term.top() < sum.top() - i64::from(w) - 2 {
            return sum;
        }
        sum = &sum + &term;
        k += 1;
    }
}

/// atan for `x >= 0` at `x`'s own budget.
fn atan_nonneg(x: &Scalar) -> Scalar {
    let w = x.digits;
    let one = Scalar::from_int(1, w);
    if x > &one {
        return &half_pi(w) - &atan_nonneg(&(&one / x));
    }
    // halve the angle until the series converges quickly
    let mut x = x.clone();
    let mut halvings = 0u32;
    while x.top() > -2 {
        let denom = &one + &(&one + &x.square()).sqrt().expect("1 + x² > 0");
        x = &x / &denom;
        halvings += 1;
    }
    if x.is_zero() {
        return x;
    }
    let x2 = x.square();
    let mut power = x.clone();
    let mut sum = x.clone();
    let mut k: i64 = 1;
    loop {
        power = -(&power * &x2);
        let term = &power / &Scalar::from_int(2 * k + 1, w);
        if term.is_zero() || term.top() < sum.top() - i64::from(w) - 2 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    &sum * &Scalar::from_int(1i64 << halvings, w)
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    let digits = a.digits.max(b.digits);
    if a.is_zero() {
        return b.with_digits(digits);
    }
    if b.is_zero() {
        return a.with_digits(digits);
    }
    let (big, small) = if a.top() >= b.top() { (a, b) } else { (b, a) };
    // If `small` sits entirely below both the last digit of `big` and the
    // rounding position, only its sign can influence the rounded sum; replace
    // it by a one-digit proxy instead of aligning huge mantissas.
    let lim = big.exp.min(big.top() - i64::from(digits) - 1);
    if small.top() <= lim {
        let proxy = if small.is_negative() { -1 } else { 1 };
        let shift = (big.exp - (lim - 1)) as u32;
        let mant = &big.mant * BigInt::from_biguint(Sign::Plus, pow10(shift)) + proxy;
        return Scalar::round(mant, lim - 1, digits);
    }
    let e = a.exp.min(b.exp);
    let ma = &a.mant * BigInt::from_biguint(Sign::Plus, pow10((a.exp - e) as u32));
    let mb = &b.mant * BigInt::from_biguint(Sign::Plus, pow10((b.exp - e) as u32));
    Scalar::round(ma + mb, e, digits)
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::round(&a.mant * &b.mant, a.exp + b.exp, a.digits.max(b.digits))
}

fn div_impl(a: &Scalar, b: &Scalar) -> Scalar {
    assert!(!b.is_zero(), "Scalar division by zero");
    let digits = a.digits.max(b.digits);
    if a.is_zero() {
        return Scalar::zero_with(digits);
    }
    let na = i64::from(num_digits(a.mant.magnitude()));
    let nb = i64::from(num_digits(b.mant.magnitude()));
    let k = (i64::from(digits) + 2 + nb - na).max(0);
    let num = &a.mant * BigInt::from_biguint(Sign::Plus, pow10(k as u32));
    let (q, r) = num.div_rem(&b.mant);
    Scalar::round_inexact(q, a.exp - b.exp - k, digits, !r.is_zero())
}

fn cmp_impl(a: &Scalar, b: &Scalar) -> Ordering {
    let sa = a.mant.sign();
    let sb = b.mant.sign();
    let rank = |s: Sign| match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    match rank(sa).cmp(&rank(sb)) {
        Ordering::Equal if sa == Sign::NoSign => return Ordering::Equal,
        Ordering::Equal => {}
        other => return other,
    }
    let mag = match a.top().cmp(&b.top()) {
        Ordering::Equal => {
            let e = a.exp.min(b.exp);
            let ma = a.mant.magnitude() * pow10((a.exp - e) as u32);
            let mb = b.mant.magnitude() * pow10((b.exp - e) as u32);
            ma.cmp(&mb)
        }
        other => other,
    };
    if sa == Sign::Minus {
        mag.reverse()
    } else {
        mag
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        cmp_impl(self, other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_impl(self, other)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            mant: -self.mant,
            exp: self.exp,
            digits: self.digits,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(self, &rhs)
            }
        }
    };
}

fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
    add_impl(a, &-b)
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

/// Canonical shortest form: positional for decimal exponents in `[-7, 21)`,
/// scientific (`d.ddde-N`) otherwise. Parsing it back is exact.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (digits, exp) = self.stripped();
        let e10 = exp + digits.len() as i64 - 1;
        if self.is_negative() {
            f.write_str("-")?;
        }
        if (-7..21).contains(&e10) {
            f.write_str(&positional(&digits, exp))
        } else if digits.len() == 1 {
            write!(f, "{digits}e{e10}")
        } else {
            write!(f, "{}.{}e{e10}", &digits[..1], &digits[1..])
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}d]", self.digits)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    /// The digit budget is recovered as the number of significant digits in
    /// the string (at least [`PrecisionContext::MIN_DIGITS`]), so the value
    /// itself round-trips exactly.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let (mant, exp) = parse_decimal(&s).map_err(serde::de::Error::custom)?;
        let sig = if mant.is_zero() {
            0
        } else {
            num_digits(mant.magnitude())
        };
        Ok(Scalar::round(
            mant,
            exp,
            sig.max(PrecisionContext::MIN_DIGITS),
        ))
    }
}
