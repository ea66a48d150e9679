//! Good, oddly-good and evenly-good integers.
//!
//! For fixed coprime nonzero `a`, `b`, a positive integer `ℓ` is *good* when
//! `ℓ | a^k + b^k` for some `k >= 1`, *oddly-good* when such a `k` can be odd
//! and *evenly-good* when it can be even. [`classify`] decides this from the
//! 2-adic valuations of multiplicative orders; [`brute_force_classify`] scans
//! exponents directly and serves as the oracle.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, TwoAdicSplit};
use crate::error::{Error, Result};

/// Classification of `ℓ` with respect to `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoodnessClass {
    Bad,
    OddlyGood,
    EvenlyGood,
    /// Both an odd and an even witness exist; only possible for `ℓ ∈ {1, 2}`.
    BothParityGood,
}

impl GoodnessClass {
    pub fn is_good(self) -> bool {
        self != GoodnessClass::Bad
    }

    /// Membership in `OG_(a,b)`.
    pub fn is_oddly_good(self) -> bool {
        matches!(self, GoodnessClass::OddlyGood | GoodnessClass::BothParityGood)
    }

    /// Membership in `EG_(a,b)`.
    pub fn is_evenly_good(self) -> bool {
        matches!(self, GoodnessClass::EvenlyGood | GoodnessClass::BothParityGood)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GoodnessClass::Bad => "bad",
            GoodnessClass::OddlyGood => "oddly-good",
            GoodnessClass::EvenlyGood => "evenly-good",
            GoodnessClass::BothParityGood => "both-parity-good",
        }
    }
}

impl fmt::Display for GoodnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated triple `(a, b, ℓ)` with `gcd(a, b) = 1`, `a, b ≠ 0`, `ℓ >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoodnessQuery {
    a: i64,
    b: i64,
    l: u64,
}

impl GoodnessQuery {
    pub fn new(a: i64, b: i64, l: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::Zero { what: "a" });
        }
        if b == 0 {
            return Err(Error::Zero { what: "b" });
        }
        if l == 0 {
            return Err(Error::Zero { what: "l" });
        }
        let g = a.unsigned_abs().gcd(&b.unsigned_abs());
        if g != 1 {
            return Err(Error::NotCoprime { what: "a and b", gcd: g });
        }
        Ok(GoodnessQuery { a, b, l })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// The same pair with a different `ℓ`.
    pub fn with_l(&self, l: u64) -> Result<Self> {
        GoodnessQuery::new(self.a, self.b, l)
    }

    fn ab_odd(&self) -> bool {
        self.a % 2 != 0 && self.b % 2 != 0
    }

    fn coprime_to_l(&self) -> bool {
        self.a.unsigned_abs().gcd(&self.l) == 1 && self.b.unsigned_abs().gcd(&self.l) == 1
    }

    /// `a + b` as an exact integer.
    fn sum(&self) -> i128 {
        self.a as i128 + self.b as i128
    }
}

/// Result of classifying a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessVerdict {
    pub class: GoodnessClass,
    /// Least odd `k` with `ℓ | a^k + b^k`.
    pub witness_odd: Option<u64>,
    /// Least even `k` with `ℓ | a^k + b^k`.
    pub witness_even: Option<u64>,
    /// `ord_ℓ(a/b)` whenever `b` is invertible modulo `ℓ`.
    pub order_ratio: Option<u64>,
}

/// Parity filter for [`witness_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    fn accepts(self, k: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => k % 2 == 1,
            Parity::Even => k.is_multiple_of(2),
        }
    }
}

/// Common 2-adic valuation of `ord_p(a/b)` over the primes `p | d`.
///
/// `Ok(None)` when the valuations differ. Requires `gcd(ab, d) = 1`.
fn common_prime_order_v2(q: &GoodnessQuery, d: u64) -> Result<Option<u32>> {
    let f = arith::factorize(d)?;
    let mut common = None;
    for p in f.primes() {
        let s = arith::v2(arith::mult_order_ratio(q.a, q.b, p)?)?;
        match common {
            None => common = Some(s),
            Some(c) if c != s => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(common)
}

/// Decides the class of `ℓ` from the characterization theorems alone.
///
/// `ℓ = 2^β d` with `d` odd. For `d > 1` every prime `p | d` must share one
/// valuation `s = v2(ord_p(a/b)) >= 1`; `s = 1` gives oddly-good and `s >= 2`
/// evenly-good. A factor `2^β` with `β >= 2` needs `2^β | a + b` and forces an
/// odd witness, so it only combines with `s = 1`. Even `ℓ` needs `ab` odd.
pub fn classify_class(q: &GoodnessQuery) -> GoodnessClass {
    use GoodnessClass::*;
    let l = q.l;
    if l == 1 {
        return BothParityGood;
    }
    if !q.coprime_to_l() {
        return Bad;
    }
    if l == 2 {
        return if q.ab_odd() { BothParityGood } else { Bad };
    }
    let TwoAdicSplit { beta, odd_part: d } = TwoAdicSplit::of(l).expect("l >= 1");
    if beta >= 1 && !q.ab_odd() {
        return Bad;
    }
    let s = if d > 1 {
        match common_prime_order_v2(q, d).expect("d coprime to ab") {
            Some(s) if s >= 1 => Some(s),
            _ => return Bad,
        }
    } else {
        None
    };
    if beta >= 2 {
        let two_part = 1i128 << beta;
        if q.sum() % two_part != 0 {
            return Bad;
        }
        return match s {
            None | Some(1) => OddlyGood,
            Some(_) => Bad,
        };
    }
    match s {
        Some(1) => OddlyGood,
        Some(_) => EvenlyGood,
        // d = 1 with β <= 1 means ℓ <= 2, handled above
        None => unreachable!("ℓ > 2 with trivial odd part and β <= 1"),
    }
}

/// Classifies `ℓ` and fills in witnesses and the order of `a/b`.
///
/// For `ℓ > 2` the exponents `k` with `(a/b)^k ≡ -1 (mod ℓ)` form the single
/// class `k ≡ ord/2 (mod ord)`, so the least witness is `ord_ℓ(a/b) / 2`.
pub fn classify(q: &GoodnessQuery) -> GoodnessVerdict {
    let class = classify_class(q);
    let order_ratio = if q.coprime_to_l() {
        Some(arith::mult_order_ratio(q.a, q.b, q.l).expect("a, b units mod ℓ"))
    } else {
        None
    };
    let (witness_odd, witness_even) = match class {
        GoodnessClass::Bad => (None, None),
        GoodnessClass::BothParityGood => (Some(1), Some(2)),
        GoodnessClass::OddlyGood | GoodnessClass::EvenlyGood => {
            let k = order_ratio.expect("good ℓ is coprime to ab") / 2;
            if k % 2 == 1 {
                (Some(k), None)
            } else {
                (None, Some(k))
            }
        }
    };
    GoodnessVerdict {
        class,
        witness_odd,
        witness_even,
        order_ratio,
    }
}

/// Upper end of the exponent scan: `max(2, 2·λ(ℓ))`.
pub fn witness_bound(l: u64) -> u64 {
    let lambda = arith::carmichael(l).expect("l >= 1");
    (2 * lambda).max(2)
}

/// Smallest `k >= 1` of the requested parity with `ℓ | a^k + b^k`.
///
/// Scans `k <= max(2, 2·λ(ℓ))`. Witnesses satisfy `(a/b)^k ≡ -1 (mod ℓ)`,
/// which for `ℓ > 2` coprime to `ab` is the residue class
/// `k ≡ ord/2 (mod ord)` with `ord = ord_ℓ(a/b) <= λ(ℓ)`, so the first
/// witness of either parity (when one exists) falls inside the bound.
pub fn witness_search(q: &GoodnessQuery, parity: Parity) -> Option<u64> {
    let l = q.l;
    let a = arith::reduce(q.a, l);
    let b = arith::reduce(q.b, l);
    let (mut ak, mut bk) = (1 % l, 1 % l);
    for k in 1..=witness_bound(l) {
        ak = arith::mul_mod(ak, a, l);
        bk = arith::mul_mod(bk, b, l);
        if parity.accepts(k) && (ak as u128 + bk as u128).is_multiple_of(l as u128) {
            return Some(k);
        }
    }
    None
}

/// Classification from the definition only: one exponent scan for the least
/// odd and least even witness.
///
/// The order of `a/b` is the least `e` with `a^e ≡ b^e (mod ℓ)`, found in the
/// same scan. Intended for `ℓ <= 10^7`.
pub fn brute_force_classify(q: &GoodnessQuery) -> GoodnessVerdict {
    let l = q.l;
    let a = arith::reduce(q.a, l);
    let b = arith::reduce(q.b, l);
    let (mut ak, mut bk) = (1 % l, 1 % l);
    let (mut odd, mut even, mut order) = (None, None, None);
    let units = q.coprime_to_l();
    for k in 1..=witness_bound(l) {
        ak = arith::mul_mod(ak, a, l);
        bk = arith::mul_mod(bk, b, l);
        if (ak as u128 + bk as u128).is_multiple_of(l as u128) {
            if k % 2 == 1 {
                odd.get_or_insert(k);
            } else {
                even.get_or_insert(k);
            }
        }
        if units && order.is_none() && ak == bk {
            order = Some(k);
        }
        if odd.is_some() && even.is_some() && (order.is_some() || !units) {
            break;
        }
    }
    let class = match (odd, even) {
        (None, None) => GoodnessClass::Bad,
        (Some(_), None) => GoodnessClass::OddlyGood,
        (None, Some(_)) => GoodnessClass::EvenlyGood,
        (Some(_), Some(_)) => GoodnessClass::BothParityGood,
    };
    GoodnessVerdict {
        class,
        witness_odd: odd,
        witness_even: even,
        order_ratio: order,
    }
}

/// Necessary conditions satisfied by a good `ℓ = 2^β d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryProfile {
    /// Common `s` with `2^s || ord_p(a/b)` for all primes `p | d`; `None` when `d = 1`.
    pub s: Option<u32>,
    /// `γ` with `2^γ || a + b`; `None` when `a + b = 0` (every power of 2 divides it).
    pub gamma: Option<u32>,
    pub beta: u32,
    pub beta_min: u32,
    /// Inclusive upper end; `None` means unbounded.
    pub beta_max: Option<u32>,
    /// `v2(ord_ℓ(a/b))`.
    pub order_v2: u32,
}

impl NecessaryProfile {
    pub fn admits_beta(&self, beta: u32) -> bool {
        beta >= self.beta_min && self.beta_max.is_none_or(|hi| beta <= hi)
    }
}

/// Reports `s`, `γ`, the admissible range of `β` and `v2(ord_ℓ(a/b))`.
pub fn necessary_profile(q: &GoodnessQuery) -> Result<NecessaryProfile> {
    let verdict = classify(q);
    if !verdict.class.is_good() {
        return Err(Error::BadInteger(q.l));
    }
    let TwoAdicSplit { beta, odd_part: d } = TwoAdicSplit::of(q.l)?;
    let gamma = arith::v2_signed(q.sum());
    let s = if d > 1 {
        common_prime_order_v2(q, d)?
    } else {
        None
    };
    let ab_odd = q.ab_odd();
    let (beta_min, beta_max) = match verdict.class {
        GoodnessClass::BothParityGood => (0, Some(if ab_odd { 1 } else { 0 })),
        GoodnessClass::OddlyGood if d == 1 => (2, gamma),
        GoodnessClass::OddlyGood => (0, gamma),
        GoodnessClass::EvenlyGood => (0, Some(if ab_odd { 1 } else { 0 })),
        GoodnessClass::Bad => unreachable!(),
    };
    let order = verdict.order_ratio.expect("good ℓ is coprime to ab");
    Ok(NecessaryProfile {
        s,
        gamma,
        beta,
        beta_min,
        beta_max,
        order_v2: arith::v2(order)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GoodnessClass::*;

    fn query(a: i64, b: i64, l: u64) -> GoodnessQuery {
        GoodnessQuery::new(a, b, l).unwrap()
    }

    #[test]
    fn classify_examples() {
        let v = classify(&query(2, 1, 3));
        assert_eq!((v.class, v.witness_odd, v.witness_even), (OddlyGood, Some(1), None));
        let v = classify(&query(2, 1, 5));
        assert_eq!((v.class, v.witness_odd, v.witness_even), (EvenlyGood, None, Some(2)));
        assert_eq!(v.order_ratio, Some(4));
        assert_eq!(classify(&query(2, 1, 7)).class, Bad);
        assert_eq!(classify(&query(3, 1, 2)).class, BothParityGood);
        let v = classify(&query(7, 1, 4));
        assert_eq!((v.class, v.order_ratio), (OddlyGood, Some(2)));
    }

    #[test]
    fn query_validation() {
        assert!(matches!(
            GoodnessQuery::new(2, 4, 3),
            Err(Error::NotCoprime { gcd: 2, .. })
        ));
        assert!(GoodnessQuery::new(0, 1, 3).is_err());
        assert!(GoodnessQuery::new(1, 0, 3).is_err());
        assert!(GoodnessQuery::new(1, 1, 0).is_err());
    }

    #[test]
    fn witness_search_examples() {
        assert_eq!(witness_search(&query(2, 1, 9), Parity::Any), Some(3));
        assert_eq!(witness_search(&query(2, 1, 5), Parity::Odd), None);
        assert_eq!(witness_search(&query(1, 1, 1), Parity::Any), Some(1));
        assert_eq!(witness_search(&query(1, 1, 1), Parity::Even), Some(2));
    }

    #[test]
    fn brute_force_examples() {
        let q = query(2, 1, 341);
        assert_eq!(brute_force_classify(&q), classify(&q));
        assert_eq!(brute_force_classify(&query(3, 2, 1)).class, BothParityGood);
        assert_eq!(brute_force_classify(&query(4, 1, 2)).class, Bad);
    }

    #[test]
    fn non_coprime_l_is_bad() {
        assert_eq!(classify(&query(2, 1, 6)).class, Bad);
        assert_eq!(classify(&query(3, 5, 15)).class, Bad);
        assert_eq!(classify(&query(4, 1, 2)).class, Bad);
        assert_eq!(classify(&query(4, 1, 2)).order_ratio, None);
    }

    #[test]
    fn high_two_powers_need_divisibility_of_sum() {
        // ord_8(3) = 2 but 8 never divides 3^k + 1
        assert_eq!(arith::mult_order(3, 8).unwrap(), 2);
        assert_eq!(classify(&query(3, 1, 8)).class, Bad);
        assert_eq!(brute_force_classify(&query(3, 1, 8)).class, Bad);
        assert_eq!(classify(&query(7, 1, 8)).class, OddlyGood);
        assert_eq!(classify(&query(7, 1, 16)).class, Bad);
    }

    #[test]
    fn odd_part_with_odd_order_prime_is_bad_even_when_2_exactly_divides_its_order() {
        // ord_77(3) = 30, yet 11 is bad for (3, 1), so 4 * 77 is bad
        assert_eq!(arith::mult_order(3, 77).unwrap(), 30);
        assert_eq!(classify(&query(3, 1, 308)).class, Bad);
        assert_eq!(brute_force_classify(&query(3, 1, 308)).class, Bad);
    }

    #[test]
    fn opposite_pair_makes_everything_oddly_good() {
        for l in 3..200 {
            let q = query(1, -1, l);
            assert_eq!(classify(&q).class, OddlyGood, "l={l}");
            assert_eq!(brute_force_classify(&q).class, OddlyGood, "l={l}");
        }
        let p = necessary_profile(&query(1, -1, 12)).unwrap();
        assert_eq!(p.gamma, None);
        assert!(p.admits_beta(2));
    }

    #[test]
    fn necessary_profile_examples() {
        assert!(matches!(
            necessary_profile(&query(2, 1, 15)),
            Err(Error::BadInteger(15))
        ));
        let p = necessary_profile(&query(2, 1, 9)).unwrap();
        assert_eq!((p.s, p.order_v2), (Some(1), 1));
        let p = necessary_profile(&query(7, 1, 4)).unwrap();
        assert_eq!(p.s, None);
        assert_eq!((p.beta_min, p.beta_max, p.gamma), (2, Some(3), Some(3)));
    }

    #[test]
    fn necessary_profile_consistent_with_classify() {
        for (a, b) in [(2, 1), (3, 1), (7, 1), (5, 3), (-2, 3), (9, 2)] {
            for l in 1..=2000 {
                let q = query(a, b, l);
                let class = classify_class(&q);
                match necessary_profile(&q) {
                    Err(_) => assert_eq!(class, Bad),
                    Ok(p) => {
                        assert!(p.admits_beta(p.beta), "({a},{b},{l}) {p:?}");
                        match class {
                            OddlyGood if l > 2 => assert_eq!(p.order_v2, 1),
                            EvenlyGood => {
                                assert_eq!(Some(p.order_v2), p.s);
                                assert!(p.order_v2 >= 2);
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_witnesses_divide() {
        for (a, b) in [(2i64, 1i64), (3, 1), (-2, 3), (5, 2)] {
            for l in 1..=600u64 {
                let v = classify(&query(a, b, l));
                for k in v.witness_odd.into_iter().chain(v.witness_even) {
                    let s = arith::pow_mod(arith::reduce(a, l), k, l) as u128
                        + arith::pow_mod(arith::reduce(b, l), k, l) as u128;
                    assert_eq!(s % l as u128, 0, "({a},{b},{l}) k={k}");
                }
                match v.class {
                    OddlyGood => assert!(v.witness_odd.is_some() && v.witness_even.is_none()),
                    EvenlyGood => assert!(v.witness_even.is_some() && v.witness_odd.is_none()),
                    BothParityGood => assert!(l <= 2),
                    Bad => {}
                }
                assert_eq!(v.witness_odd, witness_search(&query(a, b, l), Parity::Odd));
                assert_eq!(v.witness_even, witness_search(&query(a, b, l), Parity::Even));
            }
        }
    }
}
