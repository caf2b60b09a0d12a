//! Least-squares recovery of the delta approximation coefficients, in
//! exact rational arithmetic.
//!
//! The model bases mix powers of `5^t` with `(1 +- sqrt3)^t`;
//! evaluation substitutes the fixed-precision rational sqrt(3) (see
//! [`crate::decimal::sqrt3_rational`]), after which the whole solve is
//! exact: design matrix, Gram-Schmidt, coefficients and residual are all
//! `BigRational`. No conditioning or pivoting games are needed, and two
//! runs can never disagree in the last digit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::decimal::{decimal_string, sqrt3_rational};
use crate::error::{PentaError, Result};
use crate::rad3::DEFAULT_PRECISION;

/// Term order is fixed: the nine-term basis inserts `5^(2t)` at index 6,
/// between `(1-sqrt3)^t` and `5^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitBasis {
    pub with_a7: bool,
}

impl FitBasis {
    pub fn eight_term() -> Self {
        FitBasis { with_a7: false }
    }

    pub fn nine_term() -> Self {
        FitBasis { with_a7: true }
    }

    pub fn len(&self) -> usize {
        if self.with_a7 {
            9
        } else {
            8
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = vec![
            "5^(2t)*(1+sqrt3)^t",
            "5^(2t)*(1-sqrt3)^t",
            "5^t*(1+sqrt3)^t",
            "5^t*(1-sqrt3)^t",
            "(1+sqrt3)^t",
            "(1-sqrt3)^t",
        ];
        if self.with_a7 {
            v.push("5^(2t)");
        }
        v.push("5^t");
        v.push("1");
        v
    }

    /// Evaluate every term at `t` against the rational sqrt(3) `r`.
    pub fn columns(&self, t: u32, r: &BigRational) -> Vec<BigRational> {
        let lp = pow_rat(&(BigRational::one() + r), t);
        let lm = pow_rat(&(BigRational::one() - r), t);
        let p5 = BigRational::from(BigInt::from(5).pow(t));
        let p25 = &p5 * &p5;
        let mut v = vec![&p25 * &lp, &p25 * &lm, &p5 * &lp, &p5 * &lm, lp, lm];
        if self.with_a7 {
            v.push(p25);
        }
        v.push(p5);
        v.push(BigRational::one());
        v
    }
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

/// What the squared error is measured against.
///
/// `Relative` scales each row by `1/y`, minimizing the sum of squared
/// relative errors. The data spans 19 orders of magnitude across the
/// usual windows, so an absolute objective would fit only the largest
/// rows; relative is the canonical choice and `Absolute` exists for
/// comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Relative,
    Absolute,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::Relative => "relative",
            Objective::Absolute => "absolute",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FitResult {
    pub basis: FitBasis,
    pub objective: Objective,
    pub precision_digits: u32,
    /// The `t` values the fit was solved on, ascending.
    pub window: Vec<u32>,
    pub coefficients: Vec<BigRational>,
    /// Sum of squared errors of the solved system (relative errors under
    /// the `Relative` objective), exact.
    pub residual: BigRational,
}

/// Solve the least-squares problem on `data` (pairs `(t, y)`).
///
/// Preconditions: at least as many data points as basis terms, distinct
/// `t`, and strictly positive `y` (required by the relative objective and
/// true of every quantity this crate fits).
pub fn fit(
    data: &[(u32, BigInt)],
    basis: FitBasis,
    objective: Objective,
    precision_digits: u32,
) -> Result<FitResult> {
    let m = basis.len();
    if data.len() < m {
        return Err(PentaError::Usage(format!(
            "fit needs at least {m} data points for the {m}-term basis, got {}",
            data.len()
        )));
    }
    let mut window: Vec<u32> = data.iter().map(|row| row.0).collect();
    window.sort_unstable();
    window.dedup();
    if window.len() != data.len() {
        return Err(PentaError::Usage("fit data has duplicate t values".into()));
    }
    for (t, y) in data {
        if !y.is_positive() {
            return Err(PentaError::Usage(format!(
                "fit data value at t = {t} is not positive"
            )));
        }
    }

    let r = sqrt3_rational(precision_digits);
    let n = data.len();
    // design matrix columns and target, row-scaled per the objective
    let mut cols: Vec<Vec<BigRational>> = vec![Vec::with_capacity(n); m];
    let mut target: Vec<BigRational> = Vec::with_capacity(n);
    for (t, y) in data {
        let terms = basis.columns(*t, &r);
        let yq = BigRational::from(y.clone());
        match objective {
            Objective::Relative => {
                for (j, term) in terms.into_iter().enumerate() {
                    cols[j].push(term / &yq);
                }
                target.push(BigRational::one());
            }
            Objective::Absolute => {
                for (j, term) in terms.into_iter().enumerate() {
                    cols[j].push(term);
                }
                target.push(yq);
            }
        }
    }

    let coefficients = solve_normal(&cols, &target, &basis)?;

    let mut residual = BigRational::zero();
    for i in 0..n {
        let mut pred = BigRational::zero();
        for (j, col) in cols.iter().enumerate() {
            pred += &col[i] * &coefficients[j];
        }
        let e = pred - &target[i];
        residual += &e * &e;
    }

    Ok(FitResult {
        basis,
        objective,
        precision_digits,
        window,
        coefficients,
        residual,
    })
}

/// Unnormalized Gram-Schmidt + back-substitution. Exposed for tests that
/// exercise the rank-deficiency contract directly; the pinned bases are
/// generalized Vandermonde systems on distinct growth bases, so they are
/// provably full rank on distinct `t`.
#[doc(hidden)]
pub fn solve_normal(
    cols: &[Vec<BigRational>],
    target: &[BigRational],
    basis: &FitBasis,
) -> Result<Vec<BigRational>> {
    let m = cols.len();
    let names = basis.names();
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norms: Vec<BigRational> = Vec::with_capacity(m);
    // r_upper[j][k] = projection coefficient of column k on ortho j (j < k)
    let mut r_upper: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m]; m];

    for k in 0..m {
        let mut u = cols[k].clone();
        for j in 0..k {
            let rjk = dot(&cols[k], &ortho[j]) / &norms[j];
            for (ui, oi) in u.iter_mut().zip(&ortho[j]) {
                *ui -= &rjk * oi;
            }
            r_upper[j][k] = rjk;
        }
        let nn = dot(&u, &u);
        if nn.is_zero() {
            let depends_on = (0..k).filter(|&j| !r_upper[j][k].is_zero()).collect();
            return Err(PentaError::RankDeficient {
                col: k,
                name: names.get(k).copied().unwrap_or("?").to_string(),
                depends_on,
            });
        }
        ortho.push(u);
        norms.push(nn);
    }

    let mut coeffs = vec![BigRational::zero(); m];
    for k in (0..m).rev() {
        let mut c = dot(target, &ortho[k]) / &norms[k];
        for j in (k + 1)..m {
            c -= &r_upper[k][j] * &coeffs[j];
        }
        coeffs[k] = c;
    }
    Ok(coeffs)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Evaluate the fitted model at `t`.
pub fn predict(res: &FitResult, t: u32) -> BigRational {
    let r = sqrt3_rational(res.precision_digits);
    let terms = res.basis.columns(t, &r);
    let mut p = BigRational::zero();
    for (c, term) in res.coefficients.iter().zip(terms) {
        p += c * term;
    }
    p
}

#[derive(Clone, Debug)]
pub struct ValidationRow {
    pub t: u32,
    pub relative_error: BigRational,
    pub in_window: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub max_relative_error: BigRational,
    pub max_at: u32,
}

/// Compare predictions against a reference table (pairs `(t, y)`),
/// reporting exact relative errors `|pred/y - 1|`.
pub fn validate(res: &FitResult, table: &[(u32, BigInt)]) -> ValidationReport {
    let mut rows = Vec::with_capacity(table.len());
    let mut max = BigRational::zero();
    let mut max_at = 0;
    for (t, y) in table {
        let pred = predict(res, *t);
        let err = (pred / BigRational::from(y.clone()) - BigRational::one()).abs();
        if err > max {
            max = err.clone();
            max_at = *t;
        }
        rows.push(ValidationRow {
            t: *t,
            relative_error: err,
            in_window: res.window.contains(t),
        });
    }
    ValidationReport {
        rows,
        max_relative_error: max,
        max_at,
    }
}

// ---------------------------------------------------------------------------
// report document

#[derive(Serialize)]
pub struct FitReport {
    pub basis: Vec<&'static str>,
    pub objective: &'static str,
    pub precision_digits: u32,
    pub window: Vec<u32>,
    pub coefficients: Vec<String>,
    pub residual: String,
    pub validation: Vec<FitReportRow>,
    pub max_relative_error: String,
    pub max_relative_error_at: u32,
}

#[derive(Serialize)]
pub struct FitReportRow {
    pub t: u32,
    pub relative_error: String,
    pub in_window: bool,
}

impl FitReport {
    /// Decimal rendering of a fit plus its validation, for emission.
    /// Coefficients carry 20 significant digits, errors 6.
    pub fn new(res: &FitResult, val: &ValidationReport) -> Self {
        FitReport {
            basis: res.basis.names(),
            objective: res.objective.as_str(),
            precision_digits: res.precision_digits,
            window: res.window.clone(),
            coefficients: res
                .coefficients
                .iter()
                .map(|c| decimal_string(c, 20))
                .collect(),
            residual: decimal_string(&res.residual, 6),
            validation: val
                .rows
                .iter()
                .map(|r| FitReportRow {
                    t: r.t,
                    relative_error: decimal_string(&r.relative_error, 6),
                    in_window: r.in_window,
                })
                .collect(),
            max_relative_error: decimal_string(&val.max_relative_error, 6),
            max_relative_error_at: val.max_at,
        }
    }
}

/// Default-precision convenience used by the CLI and tests.
pub fn default_precision_from_env() -> Result<u32> {
    match std::env::var("PENTA_PRECISION") {
        Ok(s) => {
            let digits: u32 = s.trim().parse().map_err(|_| {
                PentaError::Usage(format!(
                    "PENTA_PRECISION must be a positive integer, got {s:?}"
                ))
            })?;
            if !(10..=10_000).contains(&digits) {
                return Err(PentaError::Usage(format!(
                    "PENTA_PRECISION must be between 10 and 10000, got {digits}"
                )));
            }
            Ok(digits)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_PRECISION),
        Err(e) => Err(PentaError::Usage(format!("PENTA_PRECISION: {e}"))),
    }
}
