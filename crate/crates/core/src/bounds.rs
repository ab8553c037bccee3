//! Closed-form rate and distance bounds, evaluated in exact rationals.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// Decimal approximation for display only.
pub fn approx(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_locality(r: usize, t: usize) -> Result<()> {
    if r == 0 || t == 0 {
        return Err(Error::Domain(format!(
            "need r, t >= 1, got r = {r}, t = {t}"
        )));
    }
    Ok(())
}

fn check_code_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// `r / (r + 1)`: the rate limit for a single recovering set.
pub fn rate_bound_t1(r: usize) -> Result<Rational> {
    check_locality(r, 1)?;
    Ok(Rational::new(big(r), big(r + 1)))
}

/// `n - k - ceil(k / r) + 2`.
pub fn distance_bound_t1(n: usize, k: usize, r: usize) -> Result<i64> {
    check_code_params(n, k)?;
    check_locality(r, 1)?;
    Ok(n as i64 - k as i64 - k.div_ceil(r) as i64 + 2)
}

/// `prod_{j=1}^t (1 + 1/(j r))`.
pub fn availability_product(r: usize, t: usize) -> Result<Rational> {
    check_locality(r, t)?;
    Ok((1..=t)
        .map(|j| Rational::new(big(j * r + 1), big(j * r)))
        .fold(Rational::one(), |acc, f| acc * f))
}

/// `1 / prod_{j=1}^t (1 + 1/(j r))`.
pub fn rate_bound(r: usize, t: usize) -> Result<Rational> {
    Ok(availability_product(r, t)?.recip())
}

/// `sum_{i=0}^t floor((k - 1) / r^i)`.
pub fn closure_lower_bound(m: usize, r: usize, t: usize) -> usize {
    let mut total = 0;
    let mut power: u128 = 1;
    for _ in 0..=t {
        let term = (m as u128) / power;
        if term == 0 {
            break;
        }
        total += term as usize;
        power = power.saturating_mul(r as u128);
    }
    total
}

/// `n - sum_{i=0}^t floor((k - 1) / r^i)`.
pub fn distance_bound(n: usize, k: usize, r: usize, t: usize) -> Result<i64> {
    check_code_params(n, k)?;
    check_locality(r, t)?;
    Ok(n as i64 - closure_lower_bound(k - 1, r, t) as i64)
}

/// Probability that a vertex is colored under a uniformly random
/// permutation, by inclusion-exclusion over the events "τ(v) exceeds every
/// member of set j". Both closed forms are evaluated and must agree.
pub fn coloring_probability(r: usize, t: usize) -> Result<Rational> {
    check_locality(r, t)?;
    let alternating = coloring_probability_alternating(r, t);
    let product = Rational::one() - rate_bound(r, t)?;
    if alternating != product {
        return Err(Error::InternalMismatch(format!(
            "coloring probability for r = {r}, t = {t}: alternating sum {alternating}, product form {product}"
        )));
    }
    Ok(product)
}

/// `sum_{j=1}^t (-1)^{j-1} C(t, j) / (j r + 1)`.
pub fn coloring_probability_alternating(r: usize, t: usize) -> Rational {
    (1..=t)
        .map(|j| {
            let term = Rational::new(binomial(big(t), big(j)), big(j * r + 1));
            if j % 2 == 1 {
                term
            } else {
                -term
            }
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Checks `t + 1 <= P^r <= (t + 1)(1 + 1/r)^r` where `P` is the availability
/// product, i.e. the r-th root sandwich, without taking roots.
pub fn rroot_sandwich(r: usize, t: usize) -> Result<(bool, bool)> {
    let p_r: Rational = Pow::pow(availability_product(r, t)?, r);
    let lower = integer(t as i64 + 1);
    let upper = &lower * Pow::pow(Rational::new(big(r + 1), big(r)), r);
    Ok((lower <= p_r, p_r <= upper))
}

/// `e_t = (r^{t+1} - 1) / (r^{t+1} - r^t)`, cross-checked against
/// `sum_{i=0}^t r^{-i}`. Undefined for `r = 1`.
pub fn expansion_constant(r: usize, t: usize) -> Result<Rational> {
    if r < 2 {
        return Err(Error::Domain(format!(
            "expansion constant needs r >= 2 (denominator r^(t+1) - r^t vanishes), got r = {r}"
        )));
    }
    let rb = big(r);
    let rt: BigInt = Pow::pow(&rb, t);
    let rt1 = &rt * &rb;
    let closed = Rational::new(&rt1 - 1, &rt1 - &rt);
    let series = (0..=t)
        .map(|i| Rational::new(BigInt::one(), Pow::pow(&rb, i)))
        .fold(Rational::zero(), |acc, x| acc + x);
    if closed != series {
        return Err(Error::InternalMismatch(format!(
            "e_{t} for r = {r}: closed form {closed}, series {series}"
        )));
    }
    Ok(closed)
}

/// Base-`r` digits of `m`, least significant first.
pub fn base_r_digits(mut m: usize, r: usize) -> Vec<usize> {
    let mut digits = Vec::new();
    while m > 0 {
        digits.push(m % r);
        m /= r;
    }
    digits
}

/// Evaluates both sides of
/// `floor(m / r^t) r^t e_t + sum_{i<t} a_i r^i e_i = sum_{i=0}^t floor(m / r^i)`
/// with `a_i` the base-`r` digits of `m`, and reports whether they agree.
pub fn base_r_identity_check(m: usize, r: usize, t: usize) -> Result<bool> {
    let (lhs, rhs) = base_r_identity_sides(m, r, t)?;
    Ok(lhs == rhs)
}

pub fn base_r_identity_sides(m: usize, r: usize, t: usize) -> Result<(Rational, Rational)> {
    if r < 2 {
        return Err(Error::Domain(format!(
            "base-r identity needs r >= 2, got {r}"
        )));
    }
    let rb = big(r);
    let mb = big(m);
    let power = |i: usize| -> BigInt { Pow::pow(&rb, i) };
    let digits = base_r_digits(m, r);

    let top = Rational::from_integer((&mb / power(t)) * power(t)) * expansion_constant(r, t)?;
    let mut lhs = top;
    for i in 0..t {
        let alpha = digits.get(i).copied().unwrap_or(0);
        lhs += Rational::from_integer(big(alpha) * power(i)) * expansion_constant(r, i)?;
    }
    let rhs = (0..=t)
        .map(|i| Rational::from_integer(&mb / power(i)))
        .fold(Rational::zero(), |acc, x| acc + x);
    Ok((lhs, rhs))
}

mod rational_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub mod option {
        use super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.collect_str(x),
                None => s.serialize_none(),
            }
        }
    }
}

pub(crate) use rational_string::serialize as serialize_rational;

/// Every applicable bound for one parameter set, optionally compared against
/// a concrete code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub r: usize,
    pub t: usize,
    #[serde(with = "rational_string")]
    pub rate_bound: Rational,
    #[serde(with = "rational_string")]
    pub rate_bound_t1: Rational,
    pub distance_bound: Option<i64>,
    pub distance_bound_t1: Option<i64>,
    /// Rate of the `t`-fold single-parity-check product, conjectured optimal
    /// for moderate `t`. Reported, never asserted.
    #[serde(with = "rational_string")]
    pub conjectured_rate: Rational,
    #[serde(with = "rational_string::option")]
    pub achieved_rate: Option<Rational>,
    pub achieved_distance: Option<usize>,
    pub rate_meets_bound: Option<bool>,
    pub distance_meets_bound: Option<bool>,
}

impl BoundReport {
    pub fn new(r: usize, t: usize, code_params: Option<(usize, usize)>) -> Result<Self> {
        let (n, k) = code_params.unzip();
        let (distance_bound, distance_bound_t1) = match code_params {
            Some((n, k)) => (
                Some(distance_bound(n, k, r, t)?),
                Some(distance_bound_t1(n, k, r)?),
            ),
            None => (None, None),
        };
        Ok(BoundReport {
            n,
            k,
            r,
            t,
            rate_bound: rate_bound(r, t)?,
            rate_bound_t1: rate_bound_t1(r)?,
            distance_bound,
            distance_bound_t1,
            conjectured_rate: Pow::pow(rate_bound_t1(r)?, t),
            achieved_rate: None,
            achieved_distance: None,
            rate_meets_bound: None,
            distance_meets_bound: None,
        })
    }

    /// Records the rate `k/n` and the distance of an actual code.
    pub fn with_code(mut self, distance: usize) -> Self {
        if let (Some(n), Some(k)) = (self.n, self.k) {
            let rate = Rational::new(big(k), big(n));
            self.rate_meets_bound = Some(rate == self.rate_bound);
            self.achieved_rate = Some(rate);
        }
        self.distance_meets_bound = self.distance_bound.map(|b| b == distance as i64);
        self.achieved_distance = Some(distance);
        self
    }

    /// Whether every achieved value stays within its bound.
    pub fn is_consistent(&self) -> bool {
        let rate_ok = self
            .achieved_rate
            .as_ref()
            .is_none_or(|a| *a <= self.rate_bound);
        let dist_ok = match (self.achieved_distance, self.distance_bound) {
            (Some(d), Some(b)) => d as i64 <= b,
            _ => true,
        };
        rate_ok && dist_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned two-column table.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        rows.push(("n".into(), opt(self.n)));
        rows.push(("k".into(), opt(self.k)));
        rows.push(("r".into(), self.r.to_string()));
        rows.push(("t".into(), self.t.to_string()));
        rows.push((
            "rate bound".into(),
            format!("{} (~{:.6})", self.rate_bound, approx(&self.rate_bound)),
        ));
        rows.push((
            "rate bound, t = 1".into(),
            format!(
                "{} (~{:.6})",
                self.rate_bound_t1,
                approx(&self.rate_bound_t1)
            ),
        ));
        rows.push((
            "conjectured best rate".into(),
            format!(
                "{} (~{:.6})",
                self.conjectured_rate,
                approx(&self.conjectured_rate)
            ),
        ));
        if let Some(d) = self.distance_bound {
            rows.push(("distance bound".into(), d.to_string()));
        }
        if let Some(d) = self.distance_bound_t1 {
            rows.push(("distance bound, t = 1".into(), d.to_string()));
        }
        if let Some(rate) = &self.achieved_rate {
            rows.push((
                "achieved rate".into(),
                format!("{rate} (~{:.6})", approx(rate)),
            ));
        }
        if let Some(d) = self.achieved_distance {
            rows.push(("achieved distance".into(), d.to_string()));
        }
        if let Some(m) = self.distance_meets_bound {
            rows.push((
                "distance meets bound".into(),
                if m { "yes" } else { "no" }.into(),
            ));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (key, value) in rows {
            let _ = writeln!(out, "{key:<width$}  {value}");
        }
        out
    }
}
