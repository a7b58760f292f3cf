//! Exact reliability polynomials.
//!
//! `R(rho) = 1 - sum_k mu_k rho^k (1 - rho)^(m - k)` is the probability that
//! the graph stays connected when every edge fails independently with
//! probability `rho`. Coefficients are kept as exact integers in the monomial
//! basis and evaluated over exact rationals; floats only appear when
//! rendering curves.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::cuts::{CutSpectrum, CutTester};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    m: usize,
    /// `coefficients[i]` multiplies `rho^i`.
    coefficients: Vec<BigInt>,
    spectrum: CutSpectrum,
}

impl ReliabilityPolynomial {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn spectrum(&self) -> &CutSpectrum {
        &self.spectrum
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Human-readable form, e.g. `1 - 3*rho^2 + 2*rho^3`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "rho".into(),
                (1, false) => format!("{mag}*rho"),
                (_, true) => format!("rho^{i}"),
                (_, false) => format!("{mag}*rho^{i}"),
            });
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Expand `1 - sum_k mu_k rho^k (1 - rho)^(m-k)` into monomials.
pub fn polynomial_from_spectrum(spectrum: &CutSpectrum) -> Result<ReliabilityPolynomial> {
    let m = spectrum.m();
    let mut coefficients = vec![BigInt::zero(); m + 1];
    coefficients[0] = BigInt::one();
    for k in 0..=m {
        let mu = BigInt::from(spectrum.require(k)?.clone());
        if mu.is_zero() {
            continue;
        }
        for j in 0..=m - k {
            let term = &mu * BigInt::from(binomial(m - k, j));
            if j % 2 == 0 {
                coefficients[k + j] -= term;
            } else {
                coefficients[k + j] += term;
            }
        }
    }
    Ok(ReliabilityPolynomial {
        m,
        coefficients,
        spectrum: spectrum.clone(),
    })
}

fn check_rho(rho: &BigRational) -> Result<()> {
    if rho.is_negative() || *rho > BigRational::one() {
        return Err(Error::RhoOutOfRange(rho.to_string()));
    }
    Ok(())
}

fn horner(coefficients: &[BigInt], x: &BigRational) -> BigRational {
    coefficients
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from(c.clone())
        })
}

/// Sign of `sum c_i x^i` without building rationals: homogeneous Horner on
/// numerator and (positive) denominator.
fn sign_at(coefficients: &[BigInt], x: &BigRational) -> Ordering {
    let (p, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut scale = BigInt::one();
    for c in coefficients.iter().rev() {
        acc = acc * p + c * &scale;
        scale *= q;
    }
    // acc = q^d * value with q > 0
    acc.sign_cmp()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

pub fn evaluate(poly: &ReliabilityPolynomial, rho: &BigRational) -> Result<BigRational> {
    check_rho(rho)?;
    Ok(horner(&poly.coefficients, rho))
}

/// Direct evaluation of `1 - sum_k mu_k rho^k (1 - rho)^(m-k)`.
pub fn evaluate_bernstein(spectrum: &CutSpectrum, rho: &BigRational) -> Result<BigRational> {
    check_rho(rho)?;
    let m = spectrum.m();
    let q = BigRational::one() - rho;
    let mut sum = BigRational::zero();
    for k in 0..=m {
        let mu = BigRational::from(BigInt::from(spectrum.require(k)?.clone()));
        sum += mu * pow(rho, k) * pow(&q, m - k);
    }
    Ok(BigRational::one() - sum)
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FirstBetter,
    SecondBetter,
    Equal,
}

/// Outcome of comparing two spectra lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub first_diff_index: Option<usize>,
    /// Values at the first differing index, as decimal strings.
    pub mu_a: Option<String>,
    pub mu_b: Option<String>,
}

impl Comparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

fn compare_at(
    a: &CutSpectrum,
    b: &CutSpectrum,
    order: impl Iterator<Item = usize>,
) -> Result<Comparison> {
    if a.m() != b.m() {
        return Err(Error::EdgeCountMismatch(a.m(), b.m()));
    }
    for k in order {
        let (x, y) = (a.require(k)?, b.require(k)?);
        let verdict = match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => Verdict::FirstBetter,
            Ordering::Greater => Verdict::SecondBetter,
        };
        return Ok(Comparison {
            verdict,
            first_diff_index: Some(k),
            mu_a: Some(x.to_string()),
            mu_b: Some(y.to_string()),
        });
    }
    Ok(Comparison {
        verdict: Verdict::Equal,
        first_diff_index: None,
        mu_a: None,
        mu_b: None,
    })
}

/// Fewer cuts at the first differing index from `mu_0` upward means more
/// reliable for all small enough `rho`. Stops at the first difference, so
/// later entries may be absent.
pub fn compare_near_zero(a: &CutSpectrum, b: &CutSpectrum) -> Result<Comparison> {
    compare_at(a, b, 0..=a.m())
}

/// Same comparison from `mu_m` downward, deciding reliability near `rho = 1`.
pub fn compare_near_one(a: &CutSpectrum, b: &CutSpectrum) -> Result<Comparison> {
    compare_at(a, b, (0..=a.m()).rev())
}

fn difference(a: &ReliabilityPolynomial, b: &ReliabilityPolynomial) -> Result<Vec<BigInt>> {
    if a.m != b.m {
        return Err(Error::EdgeCountMismatch(a.m, b.m));
    }
    Ok(a.coefficients
        .iter()
        .zip(&b.coefficients)
        .map(|(x, y)| x - y)
        .collect())
}

fn dyadic(num: u64, exp: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::one() << exp)
}

/// A sample point where the first polynomial is strictly larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// `rho = 2^-i` near zero, `rho = 1 - 2^-i` near one.
    pub exponent: u32,
    pub rho: BigRational,
    pub value_a: BigRational,
    pub value_b: BigRational,
}

fn stable_witness(
    a: &ReliabilityPolynomial,
    b: &ReliabilityPolynomial,
    point: impl Fn(u32) -> BigRational,
) -> Result<Option<Witness>> {
    let diff = difference(a, b)?;
    // smallest i such that a > b at every sample 2^-j, j = i..=64
    let mut first = None;
    for i in (1..=64u32).rev() {
        if sign_at(&diff, &point(i)) == Ordering::Greater {
            first = Some(i);
        } else {
            break;
        }
    }
    Ok(first.map(|i| {
        let rho = point(i);
        Witness {
            exponent: i,
            value_a: horner(&a.coefficients, &rho),
            value_b: horner(&b.coefficients, &rho),
            rho,
        }
    }))
}

/// Search `rho = 2^-i`, `i = 1..=64`, for a point where `a` beats `b`; the
/// reported point is the largest one from which `a` stays ahead at every
/// smaller sample.
pub fn witness_near_zero(
    a: &ReliabilityPolynomial,
    b: &ReliabilityPolynomial,
) -> Result<Option<Witness>> {
    stable_witness(a, b, |i| dyadic(1, i))
}

/// Mirror of [`witness_near_zero`] on `rho = 1 - 2^-i`.
pub fn witness_near_one(
    a: &ReliabilityPolynomial,
    b: &ReliabilityPolynomial,
) -> Result<Option<Witness>> {
    stable_witness(a, b, |i| BigRational::one() - dyadic(1, i))
}

/// An interval in `(0, 1)` at whose endpoints `R_a - R_b` has opposite signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Sign of `R_a - R_b` at `lo`.
    pub sign_at_lo: Ordering,
}

impl CrossingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

const GRID_START: u32 = 4;
const GRID_MAX: u32 = 12;

/// Isolate the sign changes of `R_a - R_b` in `(0, 1)`.
///
/// Signs are sampled on dyadic grids of `2^j` cells, refined until the
/// number of sign changes is the same on two consecutive grids; each
/// bracketing cell is then bisected down to `tolerance`.
pub fn find_crossings(
    a: &ReliabilityPolynomial,
    b: &ReliabilityPolynomial,
    tolerance: &BigRational,
) -> Result<Vec<CrossingInterval>> {
    let diff = difference(a, b)?;
    if diff.iter().all(Zero::is_zero) {
        return Err(Error::IdenticalPolynomials);
    }
    if !tolerance.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let mut previous: Option<usize> = None;
    let mut brackets = Vec::new();
    for exp in GRID_START..=GRID_MAX {
        brackets = grid_brackets(&diff, exp);
        if previous == Some(brackets.len()) {
            break;
        }
        previous = Some(brackets.len());
    }
    brackets
        .into_iter()
        .map(|(lo, hi, s)| bisect(&diff, lo, hi, s, tolerance))
        .collect()
}

fn grid_brackets(diff: &[BigInt], exp: u32) -> Vec<(BigRational, BigRational, Ordering)> {
    let cells = 1u64 << exp;
    let mut out = Vec::new();
    let mut last: Option<(BigRational, Ordering)> = None;
    for i in 1..cells {
        let x = dyadic(i, exp);
        let s = sign_at(diff, &x);
        if s == Ordering::Equal {
            continue;
        }
        if let Some((px, ps)) = &last {
            if *ps != s {
                out.push((px.clone(), x.clone(), *ps));
            }
        }
        last = Some((x, s));
    }
    out
}

fn bisect(
    diff: &[BigInt],
    mut lo: BigRational,
    mut hi: BigRational,
    sign_lo: Ordering,
    tolerance: &BigRational,
) -> Result<CrossingInterval> {
    let two = BigRational::from(BigInt::from(2));
    while &hi - &lo > *tolerance {
        let mid = (&lo + &hi) / &two;
        match sign_at(diff, &mid) {
            Ordering::Equal => return straddle_root(diff, mid, sign_lo, tolerance),
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(CrossingInterval {
        lo,
        hi,
        sign_at_lo: sign_lo,
    })
}

/// Exact rational root at `root`: shrink a symmetric interval around it until
/// the endpoint signs are nonzero and opposite.
fn straddle_root(
    diff: &[BigInt],
    root: BigRational,
    sign_lo: Ordering,
    tolerance: &BigRational,
) -> Result<CrossingInterval> {
    let two = BigRational::from(BigInt::from(2));
    let mut delta = tolerance / &two;
    for _ in 0..256 {
        let (lo, hi) = (&root - &delta, &root + &delta);
        let (sl, sh) = (sign_at(diff, &lo), sign_at(diff, &hi));
        if sl == sign_lo && sh == sign_lo.reverse() {
            return Ok(CrossingInterval {
                lo,
                hi,
                sign_at_lo: sign_lo,
            });
        }
        delta /= &two;
    }
    Err(Error::Mismatch(format!("could not straddle root {root}")))
}

/// Format with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV `rho,R` on a uniform grid of `points` values covering `[0, 1]`.
pub fn curve_csv(poly: &ReliabilityPolynomial, points: usize) -> Result<String> {
    if points < 2 {
        return Err(Error::InvalidParameter(
            "a curve needs at least 2 points".into(),
        ));
    }
    let mut out = String::from("rho,R\n");
    let last = BigInt::from(points - 1);
    for i in 0..points {
        let rho = BigRational::new(BigInt::from(i), last.clone());
        let r = evaluate(poly, &rho)?;
        out.push_str(&format!(
            "{},{}\n",
            format_significant(rho.to_f64().unwrap_or(f64::NAN), 12),
            format_significant(r.to_f64().unwrap_or(f64::NAN), 12)
        ));
    }
    Ok(out)
}

/// Fraction of `trials` random edge failure patterns (each edge fails with
/// probability `rho`) that leave `g` connected.
pub fn monte_carlo_reliability(g: &MultiGraph, rho: f64, trials: u64, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tester = CutTester::new(g);
    let mut failed = vec![false; g.m()];
    let mut connected = 0u64;
    for _ in 0..trials {
        for f in failed.iter_mut() {
            *f = rng.gen_bool(rho);
        }
        if !tester.disconnects(|e| failed[e]) {
            connected += 1;
        }
    }
    connected as f64 / trials as f64
}
