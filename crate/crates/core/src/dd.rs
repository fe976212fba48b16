//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64` with
//! |lo| ≤ ulp(hi)/2, giving ~106 bits of significand.
//!
//! Arithmetic, `sqrt`, `exp` and `ln` are accurate to a few units of 1e-32.
//! Trigonometric functions are only carried at `f64` accuracy; nothing in the
//! solver needs them in extended precision.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    fn exp_impl(self) -> Self {
        if self.hi > 709.8 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::zero();
        }
        // x = m ln2 + r, |r| ≤ ln2/2, then exp(r) = (exp(r/2^10))^(2^10).
        let m = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Dd::LN_2.mul_f64(m);
        let r = r.mul_f64(1.0 / 1024.0);
        let mut term = Dd::one();
        let mut sum = Dd::zero();
        for k in 1..=14 {
            term = term * r / Dd::from_f64(k as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        // exp(r) - 1 carried through the squarings keeps the small part exact.
        for _ in 0..10 {
            sum = sum * (sum + Dd::from_f64(2.0));
        }
        let e = sum + Dd::one();
        Dd::new(e.hi * 2f64.powi(m as i32), e.lo * 2f64.powi(m as i32))
    }

    fn ln_impl(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::from_f64(f64::NEG_INFINITY)
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        if self.hi.is_infinite() {
            return self;
        }
        // One Newton step on exp(y) = x doubles the f64 seed's accuracy.
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp_impl() - Dd::one()
    }

    pub const LN_2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };
    pub const E: Dd = Dd { hi: std::f64::consts::E, lo: 1.445_646_891_729_250_2e-16 };
    pub const LN_10: Dd = Dd { hi: std::f64::consts::LN_10, lo: -2.170_756_223_382_249_2e-16 };
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&(self.hi + self.lo), f)
    }
}

impl fmt::LowerExp for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&(self.hi + self.lo), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi == 0.0 {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd::new(q1, q2) + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) { *self = *self $op b; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Zero for Dd {
    fn zero() -> Self {
        Dd::from_f64(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::from_f64(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::from_f64)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        (t.hi + t.lo).to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        (t.hi + t.lo).to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Some(Dd::renorm(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Dd::renorm(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Dd::from_f64(x))
    }
}

impl NumCast for Dd {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Dd::from_f64)
    }
}

impl FloatConst for Dd {
    fn E() -> Self {
        Dd::E
    }
    fn FRAC_1_PI() -> Self {
        Dd::one() / Dd::PI
    }
    fn FRAC_1_SQRT_2() -> Self {
        Dd::from_f64(0.5).sqrt()
    }
    fn FRAC_2_PI() -> Self {
        Dd::from_f64(2.0) / Dd::PI
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Dd::from_f64(2.0) / Dd::PI.sqrt()
    }
    fn FRAC_PI_2() -> Self {
        Dd::PI.mul_f64(0.5)
    }
    fn FRAC_PI_3() -> Self {
        Dd::PI / Dd::from_f64(3.0)
    }
    fn FRAC_PI_4() -> Self {
        Dd::PI.mul_f64(0.25)
    }
    fn FRAC_PI_6() -> Self {
        Dd::PI / Dd::from_f64(6.0)
    }
    fn FRAC_PI_8() -> Self {
        Dd::PI.mul_f64(0.125)
    }
    fn LN_10() -> Self {
        Dd::LN_10
    }
    fn LN_2() -> Self {
        Dd::LN_2
    }
    fn LOG10_E() -> Self {
        Dd::one() / Dd::LN_10
    }
    fn LOG2_E() -> Self {
        Dd::one() / Dd::LN_2
    }
    fn PI() -> Self {
        Dd::PI
    }
    fn SQRT_2() -> Self {
        Dd::from_f64(2.0).sqrt()
    }
    fn TAU() -> Self {
        Dd::PI.mul_f64(2.0)
    }
    fn LOG10_2() -> Self {
        Dd::LN_2 / Dd::LN_10
    }
    fn LOG2_10() -> Self {
        Dd::LN_10 / Dd::LN_2
    }
}

// Functions carried at f64 accuracy only.
macro_rules! via_f64 {
    ($($m:ident),*) => {$(
        fn $m(self) -> Self { Dd::from_f64((self.hi + self.lo).$m()) }
    )*};
}

impl Float for Dd {
    fn nan() -> Self {
        Dd::from_f64(f64::NAN)
    }
    fn infinity() -> Self {
        Dd::from_f64(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Dd::from_f64(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Dd::from_f64(-0.0)
    }
    fn min_value() -> Self {
        Dd::from_f64(f64::MIN)
    }
    fn min_positive_value() -> Self {
        // Below this the low word underflows and precision degrades to f64.
        Dd::from_f64(f64::MIN_POSITIVE * 2f64.powi(53))
    }
    fn max_value() -> Self {
        Dd::from_f64(f64::MAX)
    }
    fn epsilon() -> Self {
        Dd::from_f64(2f64.powi(-104))
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let h = self.hi.floor();
        if h == self.hi {
            Dd::renorm(h, self.lo.floor())
        } else {
            Dd::from_f64(h)
        }
    }
    fn ceil(self) -> Self {
        -(-self).floor()
    }
    fn round(self) -> Self {
        (self + Dd::from_f64(0.5)).floor()
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Dd::from_f64(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Dd::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn powf(self, n: Self) -> Self {
        if n.fract().is_zero() && n.abs().hi < 1e9 {
            return self.powi(n.hi as i32 + n.lo as i32);
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::zero() } else { Dd::nan() };
        }
        if self.hi.is_infinite() {
            return self;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - Dd::new(p, e)).hi;
        Dd::renorm(x, r / (2.0 * x))
    }
    fn exp(self) -> Self {
        self.exp_impl()
    }
    fn exp2(self) -> Self {
        (self * Dd::LN_2).exp()
    }
    fn ln(self) -> Self {
        self.ln_impl()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / Dd::LN_2
    }
    fn log10(self) -> Self {
        self.ln() / Dd::LN_10
    }
    fn max(self, other: Self) -> Self {
        if other > self || self.is_nan() {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if other < self || self.is_nan() {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        (self - other).max(Dd::zero())
    }
    fn cbrt(self) -> Self {
        let y = Dd::from_f64((self.hi + self.lo).cbrt());
        if y.is_zero() || !y.is_finite() {
            return y;
        }
        y - (y * y * y - self) / (y * y).mul_f64(3.0)
    }
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return Dd::zero();
        }
        let r = small / big;
        big * (Dd::one() + r * r).sqrt()
    }
    via_f64!(sin, cos, tan, asin, acos, atan);
    fn atan2(self, other: Self) -> Self {
        Dd::from_f64((self.hi + self.lo).atan2(other.hi + other.lo))
    }
    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn exp_m1(self) -> Self {
        if self.abs().hi < 1e-5 {
            // Short Taylor series avoids the cancellation in exp(x) - 1.
            let mut term = self;
            let mut sum = self;
            for k in 2..=6 {
                term = term * self / Dd::from_f64(k as f64);
                sum = sum + term;
            }
            sum
        } else {
            self.exp() - Dd::one()
        }
    }
    fn ln_1p(self) -> Self {
        let u = Dd::one() + self;
        if u == Dd::one() {
            self
        } else {
            u.ln() * self / (u - Dd::one())
        }
    }
    fn sinh(self) -> Self {
        let e = self.exp_m1();
        (e + e / (e + Dd::one())).mul_f64(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).mul_f64(0.5)
    }
    fn tanh(self) -> Self {
        let e = (self.mul_f64(2.0)).exp_m1();
        e / (e + Dd::from_f64(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a * a + Dd::one()).sqrt()).ln();
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        (self + (self * self - Dd::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((Dd::one() + self) / (Dd::one() - self)).ln().mul_f64(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
}
