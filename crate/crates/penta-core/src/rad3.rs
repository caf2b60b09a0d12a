//! The quadratic ring Q(sqrt 3), exact closed forms for the distance
//! sequences, and the decimal approximation models for the total distance
//! and APL.
//!
//! Closed forms are evaluated with `1 + sqrt 3` and `1 - sqrt 3` as exact
//! ring elements; the sqrt-3 components cancel and the results are checked
//! to be integers (a nonzero radical part or a fractional result is an
//! internal error, not a rounding). The approximation models carry decimal
//! coefficients, so they evaluate against a fixed-precision rational
//! sqrt(3) (default 60 digits) instead of the ring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decimal::{ln_rational, ratio_to_f64, sqrt3_rational};
use crate::error::{PentaError, Result};

/// Default decimal working precision for approximation models.
pub const DEFAULT_PRECISION: u32 = 60;

/// `p + q sqrt(3)` with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rad3 {
    pub p: BigRational,
    pub q: BigRational,
}

impl Rad3 {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Rad3 { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Rad3 {
            p: BigRational::from(BigInt::from(p)),
            q: BigRational::from(BigInt::from(q)),
        }
    }

    /// Rational `a/b + (c/d) sqrt(3)`.
    pub fn from_fracs(a: i64, b: i64, c: i64, d: i64) -> Self {
        Rad3 {
            p: BigRational::new(BigInt::from(a), BigInt::from(b)),
            q: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn zero() -> Self {
        Rad3::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Rad3::from_ints(1, 0)
    }

    /// `1 + sqrt 3`, the dominant eigenvalue of the distance recursion.
    pub fn lambda1() -> Self {
        Rad3::from_ints(1, 1)
    }

    /// `1 - sqrt 3`.
    pub fn lambda2() -> Self {
        Rad3::from_ints(1, -1)
    }

    pub fn add(&self, rhs: &Rad3) -> Rad3 {
        Rad3 {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }

    pub fn sub(&self, rhs: &Rad3) -> Rad3 {
        Rad3 {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }

    /// `(p + q r)(p' + q' r) = (p p' + 3 q q') + (p q' + q p') r`.
    pub fn mul(&self, rhs: &Rad3) -> Rad3 {
        Rad3 {
            p: &self.p * &rhs.p + (&self.q * &rhs.q) * BigInt::from(3),
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Rad3 {
        Rad3 {
            p: &self.p * k,
            q: &self.q * k,
        }
    }

    /// Radical conjugate `p - q sqrt(3)`; a ring automorphism, so it
    /// commutes with every closed-form evaluation.
    pub fn conj(&self) -> Rad3 {
        Rad3 {
            p: self.p.clone(),
            q: -self.q.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Rad3 {
        let mut base = self.clone();
        let mut acc = Rad3::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The exact rational value, failing if the radical part survives.
    pub fn to_rational(&self) -> Result<BigRational> {
        if !self.q.is_zero() {
            return Err(PentaError::Internal(format!(
                "closed form evaluated to {} + {} sqrt3; radical part should cancel",
                self.p, self.q
            )));
        }
        Ok(self.p.clone())
    }

    /// The exact integer value, failing on a radical part or denominator.
    pub fn to_integer(&self) -> Result<BigInt> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return Err(PentaError::Internal(format!(
                "closed form evaluated to non-integer {r}"
            )));
        }
        Ok(r.to_integer())
    }

    /// Decimal value against a fixed-precision rational sqrt(3).
    pub fn eval(&self, sqrt3: &BigRational) -> BigRational {
        &self.p + &self.q * sqrt3
    }
}

fn five_pow(t: u32) -> BigRational {
    BigRational::from(BigInt::from(5).pow(t))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `d12(t) = [ (1+sqrt3)^(t+1) + (1-sqrt3)^(t+1) ] / 2`, exact.
pub fn d12_closed(t: u32) -> Result<BigInt> {
    let x = Rad3::lambda1().pow(t + 1);
    let y = Rad3::lambda2().pow(t + 1);
    x.add(&y).scale(&rat(1, 2)).to_integer()
}

/// `d13(t) = [ (1+sqrt3)^(t+2) + (1-sqrt3)^(t+2) ] / 4`, exact. Also the
/// diameter of `G(t)`.
pub fn d13_closed(t: u32) -> Result<BigInt> {
    let x = Rad3::lambda1().pow(t + 2);
    let y = Rad3::lambda2().pow(t + 2);
    x.add(&y).scale(&rat(1, 4)).to_integer()
}

/// Closed form for the corner row sum `S(t)`, exact.
pub fn s_closed(t: u32) -> Result<BigInt> {
    let l1 = Rad3::lambda1().pow(t);
    let l2 = Rad3::lambda2().pow(t);
    let c1 = Rad3::from_fracs(9, 4, 5, 4); // (9 + 5 sqrt3)/4
    let inner = c1
        .mul(&l1)
        .add(&c1.conj().mul(&l2))
        .add(&Rad3::new(rat(9, 13), BigRational::zero()));
    let c2 = Rad3::from_fracs(21, 52, 15, 52); // (21 + 15 sqrt3)/52
    let outer = c2.mul(&l1).add(&c2.conj().mul(&l2));
    inner.scale(&five_pow(t)).add(&outer).to_integer()
}

/// Closed form for the junction remainder sum `F(t)`, exact.
pub fn f_closed(t: u32) -> Result<BigInt> {
    let l1 = Rad3::lambda1().pow(t);
    let l2 = Rad3::lambda2().pow(t);
    let c3 = Rad3::from_fracs(792, 472, 485, 472); // (792 + 485 sqrt3)/472
    let c4 = Rad3::from_fracs(48, 312, -1, 312); // (48 - sqrt3)/312
    let p5 = five_pow(t);
    let big = c3.mul(&l1).add(&c3.conj().mul(&l2)).scale(&p5);
    let small = c4.mul(&l1).add(&c4.conj().mul(&l2));
    let tail = Rad3::new(rat(9, 13) * &p5 - rat(21, 59), BigRational::zero());
    big.add(&small).add(&tail).to_integer()
}

/// Nine-term decimal model of the total pair distance `D(t)`.
///
/// The coefficients are fitted decimals, so this is an approximation by
/// construction; its relative deviation from the exact `D(t)` stays below
/// `10^-3` for `3 <= t <= 12` (measured maximum 2.56e-4 at t = 3, and
/// 1.8e-2 at the unrepresentative t = 1).
pub fn d_total_approx(t: u32, digits: u32) -> BigRational {
    let r = sqrt3_rational(digits);
    let lp = pow_rat(&(BigRational::one() + &r), t);
    let lm = pow_rat(&(BigRational::one() - &r), t);
    let p5 = five_pow(t);
    let p25 = &p5 * &p5;
    rat(67350, 10000) * &p25 * &lp
        + rat(8226, 10000) * &p25 * &lm
        + rat(34007, 10000) * &p5 * &lp
        + rat(8248, 100000) * &p5 * &lm
        + rat(-31636, 10000) * &lp
        + rat(-18587, 10000) * &lm
        + rat(25961, 10000) * &p25
        + (rat(859, 1000) + rat(-271, 100) * BigInt::from(t)) * &p5
        + rat(5526, 1000)
}

/// Five-term decimal model of the APL.
pub fn apl_approx5(t: u32, digits: u32) -> BigRational {
    let r = sqrt3_rational(digits);
    let lp = pow_rat(&(BigRational::one() + &r), t);
    let lm = pow_rat(&(BigRational::one() - &r), t);
    let p5 = five_pow(t);
    rat(9579, 10000) * &lp
        + rat(1170, 10000) * &lm
        + rat(4836, 10000) * &lp / &p5
        + rat(117, 10000) * &lm / &p5
        + rat(3692, 10000)
}

/// Leading-term APL asymptotic `0.9579 (1 + sqrt3)^t`.
pub fn apl_asymptotic(t: u32, digits: u32) -> BigRational {
    let r = sqrt3_rational(digits);
    rat(9579, 10000) * pow_rat(&(BigRational::one() + &r), t)
}

/// `diameter(t) * 4 / (1+sqrt3)^(t+2)`; tends to 1 like `|z|^(t+2)` with
/// `z = (1-sqrt3)/(1+sqrt3)`, |z| < 0.27.
pub fn diameter_asymptotic_ratio(t: u32, digits: u32) -> Result<BigRational> {
    let r = sqrt3_rational(digits);
    let d13 = BigRational::from(d13_closed(t)?);
    Ok(d13 * BigInt::from(4) / pow_rat(&(BigRational::one() + &r), t + 2))
}

fn pow_rat(base: &BigRational, mut e: u32) -> BigRational {
    let mut b = base.clone();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Scaling exponent of APL against N: `ln(1+sqrt3) / ln 5`, evaluated at
/// the given precision and rounded to f64 (0.6244742533884690...).
pub fn exponent_at(digits: u32) -> f64 {
    let r = sqrt3_rational(digits);
    let num = ln_rational(&(BigRational::one() + &r), digits);
    let den = ln_rational(&BigRational::from(BigInt::from(5)), digits);
    ratio_to_f64(&(num / den))
}

/// [`exponent_at`] at the default precision.
pub fn exponent() -> f64 {
    exponent_at(DEFAULT_PRECISION)
}

/// `ln(1 + sqrt3)` at the given precision (1.00505253...), the limit of
/// the APL log-growth per level.
pub fn ln_lambda1(digits: u32) -> BigRational {
    let r = sqrt3_rational(digits);
    ln_rational(&(BigRational::one() + &r), digits)
}
