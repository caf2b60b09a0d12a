//! Exact-rational numeric utilities: the fixed-precision sqrt(3)
//! surrogate, decimal rendering, rational-to-f64 conversion, and a
//! high-precision natural logarithm. Nothing here touches the exact
//! integer chain; these helpers exist for the approximation layer, fit
//! reporting and display.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Truncated decimal approximation of sqrt(3):
/// `isqrt(3 * 10^(2 digits)) / 10^digits`. Deterministic for a given
/// digit count; 60 digits is the default working precision.
pub fn sqrt3_rational(digits: u32) -> BigRational {
    let scale = BigUint::from(10u32).pow(digits);
    let rad = BigUint::from(3u32) * &scale * &scale;
    let root = rad.sqrt();
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, root),
        BigInt::from_biguint(Sign::Plus, scale),
    )
}

/// f64 value of an arbitrary-size rational, computed through a 56-bit
/// scaled integer quotient (plain `numer/denom` conversion overflows long
/// before the values here do).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let negative = r.numer().sign() == Sign::Minus;
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // shift so the integer quotient carries ~56 significant bits
    let shift = 56 - (nb - db);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mut x = q.to_f64().unwrap_or(f64::INFINITY);
    x *= 2f64.powi(-shift as i32);
    if negative {
        -x
    } else {
        x
    }
}

fn ceil_log10(x: &BigRational) -> i64 {
    // smallest e with |x| < 10^e, for |x| > 0
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64 + 1;
    let pow = |k: i64| -> (BigUint, BigUint) {
        if k >= 0 {
            (BigUint::from(10u32).pow(k as u32), BigUint::one())
        } else {
            (BigUint::one(), BigUint::from(10u32).pow((-k) as u32))
        }
    };
    // |x| < 10^e  <=>  num * den(10^e) < den * num(10^e)
    let lt = |e: i64| {
        let (pn, pd) = pow(e);
        num * pd < den * pn
    };
    while !lt(e) {
        e += 1;
    }
    while e > i64::MIN && lt(e - 1) {
        e -= 1;
    }
    e
}

/// Render a rational with the given number of significant digits.
/// Values whose magnitude fits within the digit budget print in plain
/// decimal, others in scientific notation. Rounding is half-away-from-zero
/// on the exact value, so output is deterministic.
pub fn decimal_string(x: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if x.numer().is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    let e = ceil_log10(&ax); // 10^(e-1) <= ax < 10^e
                             // integer with `sig` digits
    let k = sig as i64 - e;
    let scaled = if k >= 0 {
        &ax * BigRational::from(BigInt::from(10).pow(k as u32))
    } else {
        &ax / BigRational::from(BigInt::from(10).pow((-k) as u32))
    };
    let num = scaled.numer().magnitude();
    let den = scaled.denom().magnitude();
    let mut mant = (num * 2u32 + den) / (den * 2u32);
    let mut digits = mant.to_string();
    let mut exp10 = e; // value = 0.digits * 10^exp10
    if digits.len() > sig {
        // rounding carried into a new leading digit (e.g. 999.96 -> 1000)
        mant /= BigUint::from(10u32);
        digits = mant.to_string();
        exp10 += 1;
    }
    debug_assert_eq!(digits.len(), sig);

    let body = if exp10 >= 1 && exp10 <= sig as i64 {
        // plain decimal, point inside or right after the digits
        let ip = exp10 as usize;
        if ip == sig {
            digits
        } else {
            format!("{}.{}", &digits[..ip], &digits[ip..])
        }
    } else if exp10 <= 0 && exp10 > -4 {
        format!("0.{}{}", "0".repeat((-exp10) as usize), digits)
    } else {
        let mut s = String::new();
        s.push(digits.as_bytes()[0] as char);
        if sig > 1 {
            s.push('.');
            s.push_str(&digits[1..]);
        }
        format!("{s}e{}", exp10 - 1)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Natural logarithm of a positive rational, exact up to the requested
/// decimal precision, via `ln x = 2 atanh((x-1)/(x+1))` with the series
/// summed in exact rationals until the tail is below `10^-(digits+5)`.
pub fn ln_rational(x: &BigRational, digits: u32) -> BigRational {
    assert!(x.is_positive(), "ln of non-positive value");
    let one = BigRational::one();
    let z = (x - &one) / (x + &one);
    let z2 = &z * &z;
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits + 5));
    let mut term = z.clone(); // z^(2k+1)
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        sum += term.clone() / BigInt::from(2 * k + 1);
        term *= &z2;
        k += 1;
        if term.abs() < tol {
            break;
        }
        assert!(k < 100_000, "ln series failed to converge");
    }
    sum * BigInt::from(2)
}
