//! Closed forms for `|Q_q(A)|` and `|R_{q²}(A)|`.
//!
//! Three routes are available: direct enumeration of classes (in
//! [`abelian`](crate::abelian)), a divisor sum of `N_A(d)` weighted by goodness
//! of `d` with respect to `(q, 1)`, and a closed form in terms of the
//! semigroup decomposition `m = 2^β m_0 m_1 m_2 ...` where `m_α` collects the
//! odd prime powers `r^e || m` with `2^α || ord_r(q)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, InnerProduct};
use crate::arith;
use crate::error::{Error, Result};
use crate::goodness::{self, GoodnessClass, GoodnessQuery};

/// `m = 2^β · ∏_α m_α` relative to a prime power `q`, plus `γ` with `2^γ || q + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDecomposition {
    pub beta: u32,
    /// Nontrivial buckets only; missing `α` means `m_α = 1`.
    pub parts: BTreeMap<u32, u64>,
    pub gamma: u32,
}

impl SemigroupDecomposition {
    pub fn part(&self, alpha: u32) -> u64 {
        self.parts.get(&alpha).copied().unwrap_or(1)
    }

    /// `Σ_{α >= 2} (m_α - 1)`.
    pub fn high_excess(&self) -> u64 {
        self.parts.range(2..).map(|(_, &m)| m - 1).sum()
    }

    pub fn order(&self) -> u64 {
        self.parts.values().product::<u64>() << self.beta
    }
}

fn check_prime_power(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    arith::factorize(q)?
        .as_prime_power()
        .map(|_| ())
        .ok_or(Error::NotPrimePower(q))
}

fn check_coprime(m: u64, q: u64) -> Result<()> {
    let g = m.gcd(&q);
    if g != 1 {
        return Err(Error::NotCoprime {
            what: "q and the group order",
            gcd: g,
        });
    }
    Ok(())
}

/// Splits `m` by the 2-adic valuation of `ord_r(q)` for each odd prime `r | m`.
pub fn decompose(m: u64, q: u64) -> Result<SemigroupDecomposition> {
    if m == 0 {
        return Err(Error::Zero { what: "m" });
    }
    check_prime_power(q)?;
    check_coprime(m, q)?;
    let f = arith::factorize(m)?;
    let mut beta = 0;
    let mut parts = BTreeMap::new();
    for &(r, e) in &f.prime_powers {
        if r == 2 {
            beta = e;
            continue;
        }
        let alpha = arith::v2(arith::mult_order(q as i64, r)?)?;
        *parts.entry(alpha).or_insert(1) *= r.pow(e);
    }
    let gamma = arith::v2(q + 1)?;
    Ok(SemigroupDecomposition { beta, parts, gamma })
}

/// Which classifier decides membership of `d` in `G_(q,1)` / `OG_(q,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Classifier {
    #[default]
    Theorem,
    BruteForce,
}

fn goodness_class(d: u64, q: u64, classifier: Classifier) -> Result<GoodnessClass> {
    let query = GoodnessQuery::new(q as i64, 1, d)?;
    Ok(match classifier {
        Classifier::Theorem => goodness::classify_class(&query),
        Classifier::BruteForce => goodness::brute_force_classify(&query).class,
    })
}

fn weighted_order_sum(
    group: &AbelianGroup,
    q: u64,
    classifier: Classifier,
    admit: fn(GoodnessClass) -> bool,
) -> Result<u64> {
    check_prime_power(q)?;
    check_coprime(group.order(), q)?;
    let mut total = 0;
    for (d, count) in group.order_counts()? {
        if count > 0 && admit(goodness_class(d, q, classifier)?) {
            total += count;
        }
    }
    Ok(total)
}

/// `Σ_{d | M} χ(d, q) N_A(d)` with `χ(d, q) = 1` iff `d ∈ G_(q,1)`.
pub fn q_size_sum(group: &AbelianGroup, q: u64) -> Result<u64> {
    q_size_sum_with(group, q, Classifier::Theorem)
}

pub fn q_size_sum_with(group: &AbelianGroup, q: u64, classifier: Classifier) -> Result<u64> {
    weighted_order_sum(group, q, classifier, GoodnessClass::is_good)
}

/// `Σ_{d | M} λ(d, q) N_A(d)` with `λ(d, q) = 1` iff `d ∈ OG_(q,1)`.
pub fn r_size_sum(group: &AbelianGroup, q: u64) -> Result<u64> {
    r_size_sum_with(group, q, Classifier::Theorem)
}

pub fn r_size_sum_with(group: &AbelianGroup, q: u64, classifier: Classifier) -> Result<u64> {
    weighted_order_sum(group, q, classifier, GoodnessClass::is_oddly_good)
}

/// `Σ_{i=0}^{γ} N_A(2^i)`: the elements killed by `2^γ`.
fn two_power_sum(group: &AbelianGroup, gamma: u32) -> u64 {
    let sylow = group.sylow_exponents(2);
    let top = sylow.first().copied().unwrap_or(0);
    // terms with i above the Sylow-2 exponent vanish
    group.killed_by(1 << gamma.min(top))
}

/// `m_1 Σ_{i=0}^{γ} N_A(2^i) + (1 + N_A(2))^{min(1,β)} Σ_{α>=2} (m_α - 1)`.
pub fn q_size_closed(group: &AbelianGroup, q: u64) -> Result<u64> {
    let dec = decompose(group.order(), q)?;
    let head = dec.part(1) * two_power_sum(group, dec.gamma);
    let tail_factor = if dec.beta == 0 {
        1
    } else {
        1 + group.count_order(2)?
    };
    Ok(head + tail_factor * dec.high_excess())
}

/// `m_1 Σ_{i=0}^{γ} N_A(2^i)`.
pub fn r_size_closed(group: &AbelianGroup, q: u64) -> Result<u64> {
    let dec = decompose(group.order(), q)?;
    Ok(dec.part(1) * two_power_sum(group, dec.gamma))
}

/// `|Q|` or `|R|` by the closed form, selected by inner product.
pub fn fixed_set_closed(group: &AbelianGroup, q: u64, ip: InnerProduct) -> Result<u64> {
    match ip {
        InnerProduct::Euclidean => q_size_closed(group, q),
        InnerProduct::Hermitian => r_size_closed(group, q),
    }
}

/// Inclusive bounds on a fixed-set size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: u64,
    pub upper: u64,
}

impl Bounds {
    pub fn contains(&self, x: u64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Bounds on `|Q_q(A)|` that depend only on `m` and `q`.
///
/// The Sylow-2 subgroup interpolates between `Z_{2^β}` and `(Z_2)^β`. The
/// first term is `2^{min(β,γ)} m_1` for the cyclic case and `2^{min(β,γβ)} m_1`
/// for the elementary abelian one. The multiplier `1 + N_A(2)` of
/// `Σ_{α>=2}(m_α - 1)` likewise runs from `2^{min(1,β)}` up to `2^β`.
pub fn bounds_q(m: u64, q: u64) -> Result<Bounds> {
    let dec = decompose(m, q)?;
    let m1 = dec.part(1);
    let excess = dec.high_excess();
    let (b, g) = (dec.beta, dec.gamma);
    Ok(Bounds {
        lower: (m1 << b.min(g)) + (excess << b.min(1)),
        upper: (m1 << b.min(g * b)) + (excess << b),
    })
}

/// `2^{min(β,γ)} m_1 <= |R_{q²}(A)| <= 2^{min(β,γβ)} m_1`.
pub fn bounds_r(m: u64, q: u64) -> Result<Bounds> {
    let dec = decompose(m, q)?;
    let m1 = dec.part(1);
    let (b, g) = (dec.beta, dec.gamma);
    Ok(Bounds {
        lower: m1 << b.min(g),
        upper: m1 << b.min(g * b),
    })
}

/// Exponent multiset `a_i` of an abelian `p`-group `∏ Z_{p^{a_i}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionShape(Vec<u32>);

impl PartitionShape {
    /// Zero exponents are dropped; parts are kept in descending order.
    pub fn new(mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        PartitionShape(exponents)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `Σ a_i`, so the group has order `p^weight`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Whether `self ⪯ other`: some regrouping of `self`'s parts sums to
    /// exactly `other`'s parts.
    pub fn is_finer(&self, other: &PartitionShape) -> Result<bool> {
        let (left, right) = (self.weight(), other.weight());
        if left != right {
            return Err(Error::UnequalWeight { left, right });
        }
        if self.0.len() < other.0.len() {
            return Ok(false);
        }
        let mut remaining: Vec<u64> = other.0.iter().map(|&b| b as u64).collect();
        Ok(pack(&self.0, &mut remaining))
    }
}

/// Places each part (largest first) into a bin whose remaining capacity
/// admits it; bins must all end exactly full.
fn pack(parts: &[u32], bins: &mut [u64]) -> bool {
    let Some((&part, rest)) = parts.split_first() else {
        return bins.iter().all(|&b| b == 0);
    };
    let part = part as u64;
    for i in 0..bins.len() {
        // bins with equal remaining capacity are interchangeable
        if bins[i] < part || bins[..i].contains(&bins[i]) {
            continue;
        }
        bins[i] -= part;
        let ok = pack(rest, bins);
        bins[i] += part;
        if ok {
            return true;
        }
    }
    false
}

/// Sylow 2-subgroup shape of a group.
pub fn sylow2_shape(group: &AbelianGroup) -> PartitionShape {
    PartitionShape::new(group.sylow_exponents(2))
}
