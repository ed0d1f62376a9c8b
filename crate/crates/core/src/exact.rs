// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact ground truth: binomials, Moon's labeled-forest count, the exact
//! probability that a uniform `G(n, m)` is acyclic, and exhaustive
//! enumeration of small graphs.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{max_edges, Graph};
use crate::random::decode_sorted_pairs;
use crate::recognize::{
    find_kuratowski_bruteforce, is_acyclic, is_outerplanar, is_planar, near_planar_verdict, Property,
    SearchBudgetExceeded,
};

/// Default cap on the number of graphs an enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumerating C({pairs}, {m}) = {count} graphs exceeds the budget of {budget}")]
    BudgetExceeded {
        pairs: usize,
        m: usize,
        count: BigUint,
        budget: u64,
    },
    #[error("forest count for n={n}, k={k} is not a non-negative integer")]
    NonIntegralForestCount { n: usize, k: usize },
    #[error(transparent)]
    Kuratowski(#[from] SearchBudgetExceeded),
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) after i + 1 factors.
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Number of labeled forests on `n` vertices with exactly `k` trees
/// (Moon's formula):
///
/// ```text
/// f(n,k) = C(n,k) · Σ_{i=0..k} (-1/2)^i (k+i) i! C(k,i) C(n-k,i) n^(n-k-i-1)
/// ```
///
/// Terms with `i > n - k` vanish, and the only negative power of `n` is
/// `n^-1` at `i = n - k`. Multiplying every term by `2^k · n` turns the sum
/// into an integer sum; the product with `C(n,k)` is then divided back out
/// exactly, and a non-zero remainder would mean the formula was misapplied and is reported
/// as an error.
pub fn labeled_forest_count(n: usize, k: usize) -> Result<BigUint, OracleError> {
    assert!(1 <= k && k <= n, "forest count needs 1 <= k <= n");
    if k == n {
        return Ok(BigUint::one());
    }
    let nb = BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut factorial = BigInt::one();
    for i in 0..=k.min(n - k) {
        if i > 0 {
            factorial *= i;
        }
        let mut term = BigInt::from(k + i)
            * &factorial
            * BigInt::from(binomial(k as u64, i as u64))
            * BigInt::from(binomial((n - k) as u64, i as u64));
        term <<= k - i;
        // n^(n-k-i-1) · n = n^(n-k-i), exponent >= 0 here.
        term *= nb.pow((n - k - i) as u32);
        if i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let scale = (BigInt::one() << k) * &nb;
    let (q, r) = (BigInt::from(binomial(n as u64, k as u64)) * sum).div_rem(&scale);
    if !r.is_zero() || q.is_negative() {
        return Err(OracleError::NonIntegralForestCount { n, k });
    }
    Ok(q.to_biguint().expect("non-negative"))
}

/// Exact probability that a uniform graph with `n` vertices and `m` edges
/// is a forest: `f(n, n-m) / C(C(n,2), m)`, and `0` once `m >= n`.
pub fn acyclic_probability(n: usize, m: usize) -> Result<BigRational, OracleError> {
    assert!(m <= max_edges(n), "m exceeds C(n,2)");
    if m >= n.max(1) {
        return Ok(BigRational::zero());
    }
    if m == 0 {
        return Ok(BigRational::one());
    }
    let forests = labeled_forest_count(n, n - m)?;
    let graphs = binomial(max_edges(n) as u64, m as u64);
    Ok(BigRational::new(forests.into(), graphs.into()))
}

/// Calls `visitor` on every labeled simple graph with `n` vertices and `m`
/// edges, in lexicographic order of the sorted pair-index tuples. Returns
/// the number of graphs visited.
pub fn enumerate_graphs<F>(n: usize, m: usize, budget: u64, mut visitor: F) -> Result<u64, OracleError>
where
    F: FnMut(&Graph),
{
    let pairs = max_edges(n);
    let count = binomial(pairs as u64, m as u64);
    if count > BigUint::from(budget) {
        return Err(OracleError::BudgetExceeded {
            pairs,
            m,
            count,
            budget,
        });
    }
    if m > pairs {
        return Ok(0);
    }
    let mut combo: Vec<u64> = (0..m as u64).collect();
    let mut visited = 0u64;
    loop {
        let g = Graph::from_sorted_unchecked(n, decode_sorted_pairs(n, &combo));
        visitor(&g);
        visited += 1;
        // Next combination in lexicographic order.
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(visited);
            }
            i -= 1;
            if combo[i] < (pairs - m + i) as u64 {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..m {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Which decision procedure an exact count uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decider {
    /// The production recognizers, near-planarity fast path disabled.
    Recognizer,
    /// Planarity by brute-force Kuratowski search (planar property only).
    Kuratowski,
}

/// Fraction of labeled `(n, m)` graphs with the property, by enumeration.
pub fn count_property_exact(
    n: usize,
    m: usize,
    property: Property,
    decider: Decider,
    budget: u64,
) -> Result<BigRational, OracleError> {
    let mut positives = 0u64;
    let mut failure = None;
    let total = enumerate_graphs(n, m, budget, |g| {
        let holds = match (decider, property) {
            (Decider::Kuratowski, Property::Planar) => match find_kuratowski_bruteforce(g) {
                Ok(w) => w.is_none(),
                Err(e) => {
                    failure.get_or_insert(e);
                    false
                }
            },
            (_, Property::Acyclic) => is_acyclic(g),
            (_, Property::Planar) => is_planar(g),
            (_, Property::Outerplanar) => is_outerplanar(g),
            (_, Property::NearPlanar) => near_planar_verdict(g, false),
        };
        positives += holds as u64;
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    assert!(total > 0, "no graphs with n={n}, m={m}");
    Ok(BigRational::new(positives.into(), total.into()))
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering of a probability in `[0, 1]`, rounded half-up to 15
/// significant digits, trailing zeros removed.
pub fn format_probability(p: &BigRational) -> String {
    assert!(!p.is_negative() && *p <= BigRational::one());
    if p.is_zero() {
        return "0".to_string();
    }
    // Find e with 10^e <= p < 10^(e+1); e <= 0 here.
    let ten = BigInt::from(10);
    let mut e: i64 = 0;
    let mut scaled = p.clone();
    while scaled < BigRational::one() {
        scaled *= BigRational::from_integer(ten.clone());
        e -= 1;
    }
    if scaled >= BigRational::from_integer(ten.clone()) {
        // p == 1
        return "1".to_string();
    }
    // digits = round(p · 10^(14 - e)), 15 significant digits.
    let shift = (14 - e) as u32;
    let x = p * BigRational::from_integer(ten.pow(shift));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let digits = (x + half).floor().to_integer();
    let mut s = digits.to_string();
    let shift = shift as usize;
    // Rounding may have carried into a new leading digit.
    if s.len() > shift {
        let int_len = s.len() - shift;
        let (int, frac) = s.split_at(int_len);
        let frac = frac.trim_end_matches('0');
        return if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        };
    }
    while s.len() < shift {
        s.insert(0, '0');
    }
    let frac = s.trim_end_matches('0');
    format!("0.{frac}")
}
