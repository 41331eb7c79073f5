//! Directed-rounding interval arithmetic over arbitrary-precision floats.
//!
//! Every operation rounds the lower endpoint down and the upper endpoint up,
//! so an interval computed from enclosing inputs encloses the exact real
//! result. This is what lets `analytics` certify inequalities numerically:
//! if `a.hi() <= b.lo()` then the underlying reals satisfy a <= b, full stop.
//!
//! The default working precision is 192 bits (about 57 decimal digits);
//! callers that find an enclosure too wide re-run at doubled precision.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;

/// A closed interval [lo, hi] of reals with outward-rounded endpoints.
#[derive(Clone, Debug)]
pub struct BigRealInterval {
    lo: BigFloat,
    hi: BigFloat,
}

impl BigRealInterval {
    /// Builds an interval from endpoints; panics if lo > hi or either is NaN.
    pub fn from_endpoints(lo: BigFloat, hi: BigFloat) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        assert!(cmp(&lo, &hi) <= 0, "inverted interval: {lo} > {hi}");
        BigRealInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    /// Width divided by the midpoint magnitude, as a double. Zero-straddling
    /// intervals report infinity.
    pub fn rel_width_f64(&self) -> f64 {
        let mid = self.mid_f64().abs();
        let width = self.hi_f64() - self.lo_f64();
        if mid == 0.0 {
            if width == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            width / mid
        }
    }

    /// True when every point of the interval is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    /// Certified comparison: true when the enclosed real is definitely <=
    /// every point of `other`.
    pub fn le_certain(&self, other: &BigRealInterval) -> bool {
        cmp(&self.hi, &other.lo) <= 0
    }

    /// Certified comparison: true when the enclosed real is definitely >=
    /// every point of `other`.
    pub fn ge_certain(&self, other: &BigRealInterval) -> bool {
        cmp(&self.lo, &other.hi) >= 0
    }

    /// True when the point `x` may lie in the interval (endpoint rounding
    /// included).
    pub fn contains_point(&self, x: &BigFloat) -> bool {
        cmp(&self.lo, x) <= 0 && cmp(x, &self.hi) <= 0
    }
}

impl std::fmt::Display for BigRealInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Total-order comparison of two (non-NaN) BigFloats.
fn cmp(a: &BigFloat, b: &BigFloat) -> i32 {
    match a.cmp(b) {
        Some(o) => {
            if o > 0 {
                1
            } else if o < 0 {
                -1
            } else {
                0
            }
        }
        None => panic!("NaN in interval comparison"),
    }
}

fn bf_min(a: BigFloat, b: BigFloat) -> BigFloat {
    if cmp(&a, &b) <= 0 {
        a
    } else {
        b
    }
}

fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    if cmp(&a, &b) >= 0 {
        a
    } else {
        b
    }
}

/// Approximate double conversion (round-to-nearest-ish; not directed).
/// Only for reporting and heuristics, never for certification.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let m = match x.mantissa_digits() {
        Some(m) => m,
        None => return f64::NAN,
    };
    let e = x.exponent().unwrap_or(0);
    let top = m.last().copied().unwrap_or(0);
    let next = if m.len() >= 2 { m[m.len() - 2] } else { 0 };
    let scale = u64::MAX as f64 + 1.0;
    let frac = top as f64 / scale + next as f64 / (scale * scale);
    let v = frac * 2f64.powi(e);
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// Evaluation context: working precision plus the constants cache that
/// astro-float requires for transcendental functions.
pub struct IntervalCtx {
    prec: usize,
    cc: Consts,
}

impl IntervalCtx {
    pub fn new(prec_bits: usize) -> Self {
        IntervalCtx {
            prec: prec_bits,
            cc: Consts::new().expect("constants cache"),
        }
    }

    /// Default context: 192-bit mantissas, about 57 decimal digits.
    pub fn default_prec() -> Self {
        Self::new(192)
    }

    pub fn prec_bits(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> BigRealInterval {
        let z = BigFloat::from_u64(0, self.prec);
        BigRealInterval { lo: z.clone(), hi: z }
    }

    pub fn one(&self) -> BigRealInterval {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> BigRealInterval {
        let x = BigFloat::from_u64(v, self.prec);
        BigRealInterval { lo: x.clone(), hi: x }
    }

    pub fn from_i64(&self, v: i64) -> BigRealInterval {
        let x = BigFloat::from_i64(v, self.prec);
        BigRealInterval { lo: x.clone(), hi: x }
    }

    /// Exact for doubles (they are binary rationals).
    pub fn from_f64(&self, v: f64) -> BigRealInterval {
        assert!(v.is_finite());
        let x = BigFloat::from_f64(v, self.prec);
        BigRealInterval { lo: x.clone(), hi: x }
    }

    /// Encloses an arbitrary-precision natural number; exact when the value
    /// fits the working precision, one-ulp wide otherwise.
    pub fn from_biguint(&mut self, v: &BigUint) -> BigRealInterval {
        let digits = v.to_u64_digits();
        if digits.len() <= 1 {
            return self.from_u64(digits.first().copied().unwrap_or(0));
        }
        let s = v.to_string();
        let lo = BigFloat::parse(&s, astro_float::Radix::Dec, self.prec, RoundingMode::Down, &mut self.cc);
        let hi = BigFloat::parse(&s, astro_float::Radix::Dec, self.prec, RoundingMode::Up, &mut self.cc);
        BigRealInterval::from_endpoints(lo, hi)
    }

    pub fn pi(&mut self) -> BigRealInterval {
        let lo = self.cc.pi(self.prec, RoundingMode::Down);
        let hi = self.cc.pi(self.prec, RoundingMode::Up);
        BigRealInterval::from_endpoints(lo, hi)
    }

    pub fn add(&self, a: &BigRealInterval, b: &BigRealInterval) -> BigRealInterval {
        BigRealInterval::from_endpoints(
            a.lo.add(&b.lo, self.prec, RoundingMode::Down),
            a.hi.add(&b.hi, self.prec, RoundingMode::Up),
        )
    }

    pub fn sub(&self, a: &BigRealInterval, b: &BigRealInterval) -> BigRealInterval {
        BigRealInterval::from_endpoints(
            a.lo.sub(&b.hi, self.prec, RoundingMode::Down),
            a.hi.sub(&b.lo, self.prec, RoundingMode::Up),
        )
    }

    pub fn neg(&self, a: &BigRealInterval) -> BigRealInterval {
        BigRealInterval::from_endpoints(a.hi.neg(), a.lo.neg())
    }

    pub fn mul(&self, a: &BigRealInterval, b: &BigRealInterval) -> BigRealInterval {
        let p = self.prec;
        let down = |x: &BigFloat, y: &BigFloat| x.mul(y, p, RoundingMode::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.mul(y, p, RoundingMode::Up);
        let lo = bf_min(
            bf_min(down(&a.lo, &b.lo), down(&a.lo, &b.hi)),
            bf_min(down(&a.hi, &b.lo), down(&a.hi, &b.hi)),
        );
        let hi = bf_max(
            bf_max(up(&a.lo, &b.lo), up(&a.lo, &b.hi)),
            bf_max(up(&a.hi, &b.lo), up(&a.hi, &b.hi)),
        );
        BigRealInterval::from_endpoints(lo, hi)
    }

    /// Interval division; the divisor must not contain zero.
    pub fn div(&self, a: &BigRealInterval, b: &BigRealInterval) -> BigRealInterval {
        let b_pos = b.lo.is_positive() && !b.lo.is_zero();
        let b_neg = b.hi.is_negative() && !b.hi.is_zero();
        assert!(b_pos || b_neg, "division by interval containing zero");
        let p = self.prec;
        let down = |x: &BigFloat, y: &BigFloat| x.div(y, p, RoundingMode::Down);
        let up = |x: &BigFloat, y: &BigFloat| x.div(y, p, RoundingMode::Up);
        let lo = bf_min(
            bf_min(down(&a.lo, &b.lo), down(&a.lo, &b.hi)),
            bf_min(down(&a.hi, &b.lo), down(&a.hi, &b.hi)),
        );
        let hi = bf_max(
            bf_max(up(&a.lo, &b.lo), up(&a.lo, &b.hi)),
            bf_max(up(&a.hi, &b.lo), up(&a.hi, &b.hi)),
        );
        BigRealInterval::from_endpoints(lo, hi)
    }

    pub fn recip(&self, a: &BigRealInterval) -> BigRealInterval {
        let one = self.one();
        self.div(&one, a)
    }

    pub fn exp(&mut self, a: &BigRealInterval) -> BigRealInterval {
        BigRealInterval::from_endpoints(
            a.lo.exp(self.prec, RoundingMode::Down, &mut self.cc),
            a.hi.exp(self.prec, RoundingMode::Up, &mut self.cc),
        )
    }

    /// Natural logarithm; requires a strictly positive interval.
    pub fn ln(&mut self, a: &BigRealInterval) -> BigRealInterval {
        assert!(a.is_strictly_positive(), "ln of non-positive interval");
        BigRealInterval::from_endpoints(
            a.lo.ln(self.prec, RoundingMode::Down, &mut self.cc),
            a.hi.ln(self.prec, RoundingMode::Up, &mut self.cc),
        )
    }

    /// Square root; requires a non-negative lower endpoint.
    pub fn sqrt(&self, a: &BigRealInterval) -> BigRealInterval {
        assert!(!a.lo.is_negative(), "sqrt of negative interval");
        BigRealInterval::from_endpoints(
            a.lo.sqrt(self.prec, RoundingMode::Down),
            a.hi.sqrt(self.prec, RoundingMode::Up),
        )
    }

    /// Integer power of a non-negative interval.
    pub fn powi(&self, a: &BigRealInterval, n: usize) -> BigRealInterval {
        assert!(!a.lo.is_negative(), "powi base must be non-negative");
        if n == 0 {
            return self.one();
        }
        BigRealInterval::from_endpoints(
            a.lo.powi(n, self.prec, RoundingMode::Down),
            a.hi.powi(n, self.prec, RoundingMode::Up),
        )
    }

    /// Smallest integer certainly >= every point of the interval, when the
    /// enclosure pins it down uniquely; None when the enclosure straddles
    /// an integer boundary.
    pub fn ceil_u64_certain(&self, a: &BigRealInterval) -> Option<u64> {
        let approx = a.hi_f64();
        if !(0.0..9.0e15).contains(&approx) {
            return None;
        }
        let mut c = approx.ceil() as u64;
        // adjust against exact endpoints
        while c > 0 && cmp(&BigFloat::from_u64(c - 1, self.prec), &a.hi) >= 0 {
            c -= 1;
        }
        while cmp(&BigFloat::from_u64(c, self.prec), &a.hi) < 0 {
            c += 1;
        }
        // c = ceil(hi); it equals ceil of the true value iff c - 1 < lo
        if c == 0 || cmp(&BigFloat::from_u64(c - 1, self.prec), &a.lo) < 0 {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squared_encloses_two() {
        let mut ctx = IntervalCtx::default_prec();
        let two = ctx.from_u64(2);
        let r = ctx.sqrt(&two);
        let sq = ctx.mul(&r, &r);
        assert!(sq.contains_point(two.lo()));
        assert!(sq.rel_width_f64() < 1e-50);
        let _ = &mut ctx;
    }

    #[test]
    fn exp_ln_round_trip_encloses_identity() {
        let mut ctx = IntervalCtx::default_prec();
        for v in [0.1, 1.0, 7.5, 123.25] {
            let x = ctx.from_f64(v);
            let e = ctx.exp(&x);
            let back = ctx.ln(&e);
            assert!(back.contains_point(x.lo()), "round trip failed at {v}");
        }
    }

    #[test]
    fn pi_matches_f64() {
        let mut ctx = IntervalCtx::default_prec();
        let pi = ctx.pi();
        assert!((pi.mid_f64() - std::f64::consts::PI).abs() < 1e-12);
        assert!(pi.rel_width_f64() < 1e-50);
    }

    #[test]
    fn biguint_conversion_encloses_value() {
        let mut ctx = IntervalCtx::default_prec();
        let v: BigUint = BigUint::from(10u8).pow(80) + 7u8;
        let iv = ctx.from_biguint(&v);
        assert!(iv.rel_width_f64() < 1e-50);
        assert!((iv.mid_f64() - 1e80).abs() < 1e68);
        let small = ctx.from_biguint(&BigUint::from(12345u32));
        assert_eq!(small.lo_f64(), 12345.0);
        assert_eq!(small.hi_f64(), 12345.0);
    }

    #[test]
    fn division_by_zero_straddling_interval_panics() {
        let ctx = IntervalCtx::default_prec();
        let one = ctx.one();
        let m1 = ctx.from_i64(-1);
        let straddle = BigRealInterval::from_endpoints(m1.lo().clone(), one.hi().clone());
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            ctx.div(&one, &straddle)
        }));
        assert!(result.is_err());
    }

    #[test]
    fn ceil_extraction() {
        let mut ctx = IntervalCtx::default_prec();
        let three = ctx.from_u64(3);
        let ten = ctx.from_u64(10);
        let q = ctx.div(&ten, &three);
        assert_eq!(ctx.ceil_u64_certain(&q), Some(4));
        let exact = ctx.from_u64(5);
        assert_eq!(ctx.ceil_u64_certain(&exact), Some(5));
        let tiny = ctx.from_f64(1e-60);
        assert_eq!(ctx.ceil_u64_certain(&tiny), Some(1));
    }

    // Sampled soundness: a higher-precision point evaluation of the same
    // expression must land inside the interval computed at base precision.
    #[test]
    fn soundness_against_higher_precision_point_eval() {
        use astro_float::{BigFloat, RoundingMode};
        let mut ctx = IntervalCtx::new(192);
        let mut cc = Consts::new().unwrap();
        let hp = 512usize;
        let mut seed = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 10.0 + 0.0625
        };
        for _ in 0..50 {
            let a = next();
            let b = next();
            // expression: sqrt(exp(ln(a) * 0.5) + a * b) / (a + b)
            let ia = ctx.from_f64(a);
            let ib = ctx.from_f64(b);
            let half = ctx.from_f64(0.5);
            let t1 = ctx.ln(&ia);
            let t2 = ctx.mul(&t1, &half);
            let t3 = ctx.exp(&t2);
            let t4 = ctx.mul(&ia, &ib);
            let t5 = ctx.add(&t3, &t4);
            let t6 = ctx.sqrt(&t5);
            let t7 = ctx.add(&ia, &ib);
            let got = ctx.div(&t6, &t7);

            let rm = RoundingMode::ToEven;
            let pa = BigFloat::from_f64(a, hp);
            let pb = BigFloat::from_f64(b, hp);
            let phalf = BigFloat::from_f64(0.5, hp);
            let p1 = pa.ln(hp, rm, &mut cc);
            let p2 = p1.mul(&phalf, hp, rm);
            let p3 = p2.exp(hp, rm, &mut cc);
            let p4 = pa.mul(&pb, hp, rm);
            let p5 = p3.add(&p4, hp, rm);
            let p6 = p5.sqrt(hp, rm);
            let p7 = pa.add(&pb, hp, rm);
            let point = p6.div(&p7, hp, rm);

            assert!(
                got.contains_point(&point),
                "point eval escaped interval for a={a} b={b}: {got} vs {point}"
            );
        }
    }
}
