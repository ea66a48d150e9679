//! Exact elementary number theory on machine integers.
//!
//! Everything here is a pure function of its arguments. Moduli are `u64`,
//! signed operands (`a`, `b` of a goodness query) are `i64` and are reduced
//! into the canonical residue range `[0, n)` before any order computation.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest input accepted by [`factorize`].
pub const FACTORIZE_MAX: u64 = 1 << 63;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization `value = ∏ prime^exponent`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub prime_powers: Vec<(u64, u32)>,
    pub value: u64,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, _)| p)
    }

    /// The prime-power components `p^e`.
    pub fn components(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.prime_powers.as_slice(), [(_, 1)])
    }

    /// `Some((p, e))` when the value is `p^e` with `e >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.prime_powers.as_slice() {
            [pe] => Some(*pe),
            _ => None,
        }
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.prime_powers {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Split of `n` into `2^beta * odd_part`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoAdicSplit {
    pub beta: u32,
    pub odd_part: u64,
}

impl TwoAdicSplit {
    pub fn of(n: u64) -> Result<Self> {
        let beta = v2(n)?;
        Ok(TwoAdicSplit {
            beta,
            odd_part: n >> beta,
        })
    }
}

/// 2-adic valuation: the largest `g` with `2^g | n`.
pub fn v2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Zero { what: "n" });
    }
    Ok(n.trailing_zeros())
}

/// 2-adic valuation of a nonzero signed integer.
pub fn v2_signed(n: i128) -> Option<u32> {
    (n != 0).then(|| n.trailing_zeros())
}

/// Whether `2^s || n`, i.e. `2^s` divides `n` exactly.
pub fn exact_divides(s: u32, n: u64) -> bool {
    n != 0 && n.trailing_zeros() == s
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Canonical residue of a signed integer in `[0, n)`.
pub fn reduce(a: i64, n: u64) -> u64 {
    (a as i128).rem_euclid(n as i128) as u64
}

/// Inverse of `a` modulo `n`, when `gcd(a, n) = 1`.
pub fn mod_inverse(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Zero { what: "modulus" });
    }
    if n == 1 {
        return Ok(0);
    }
    let r = reduce(a, n) as i128;
    let egcd = r.extended_gcd(&(n as i128));
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { value: a, modulus: n });
    }
    Ok(egcd.x.rem_euclid(n as i128) as u64)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic Miller-Rabin primality test (exact for all `u64`).
pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

/// Brent's variant of Pollard's rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Complete prime factorization of `1 <= n <= 2^63`.
///
/// Trial division up to `10^6`, then Pollard rho on whatever cofactor is left.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero { what: "n" });
    }
    if n > FACTORIZE_MAX {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            max: FACTORIZE_MAX,
        });
    }
    let mut prime_powers = Vec::new();
    let mut rest = n;
    let tz = rest.trailing_zeros();
    if tz > 0 {
        prime_powers.push((2, tz));
        rest >>= tz;
    }
    let mut p = 3u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += 2;
    }
    if rest > 1 {
        let mut large = Vec::new();
        if p * p > rest {
            large.push(rest);
        } else {
            split_large(rest, &mut large);
        }
        large.sort_unstable();
        for q in large {
            match prime_powers.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => prime_powers.push((q, 1)),
            }
        }
    }
    Ok(Factorization {
        prime_powers,
        value: n,
    })
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if f.prime_powers.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.prime_powers.len() % 2 == 0 { 1 } else { -1 })
}

fn carmichael_of(f: &Factorization) -> u64 {
    f.prime_powers.iter().fold(1u64, |acc, &(p, e)| {
        let l = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1 << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1)
        };
        acc.lcm(&l)
    })
}

/// Carmichael function: the exponent of `(Z/nZ)^*`.
pub fn carmichael(n: u64) -> Result<u64> {
    Ok(carmichael_of(&factorize(n)?))
}

/// Multiplicative order of `a` modulo `n`.
///
/// `a` is reduced into `[0, n)` first; the order modulo 1 is 1. The exponent
/// `λ(n)` is factored and each prime is divided out while the power stays 1.
pub fn mult_order(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Zero { what: "modulus" });
    }
    if n == 1 {
        return Ok(1);
    }
    let r = reduce(a, n);
    let g = r.gcd(&n);
    if g != 1 {
        return Err(Error::NotCoprime {
            what: "base and modulus",
            gcd: g,
        });
    }
    Ok(order_of_unit(r, n, &factorize(n)?))
}

/// Order of a unit `r` modulo `n`, given the factorization of `n`.
pub(crate) fn order_of_unit(r: u64, n: u64, nf: &Factorization) -> u64 {
    if n == 1 {
        return 1;
    }
    let lambda = carmichael_of(nf);
    let lf = factorize(lambda).expect("carmichael value is positive");
    let mut e = lambda;
    for &(p, k) in &lf.prime_powers {
        for _ in 0..k {
            if pow_mod(r, e / p, n) == 1 {
                e /= p;
            } else {
                break;
            }
        }
    }
    e
}

/// Order of `a * b^{-1}` modulo `n`.
pub fn mult_order_ratio(a: i64, b: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Zero { what: "modulus" });
    }
    if n == 1 {
        return Ok(1);
    }
    let b_inv = mod_inverse(b, n)?;
    let ratio = mul_mod(reduce(a, n), b_inv, n);
    if ratio.gcd(&n) != 1 {
        return Err(Error::NotInvertible { value: a, modulus: n });
    }
    Ok(order_of_unit(ratio, n, &factorize(n)?))
}

/// Solves `x ≡ a_i (mod 2 a_i)` for all `i`.
///
/// A solution exists iff all `a_i` share the same 2-adic valuation `s`; the
/// least positive one is then `2^s · lcm(odd parts)`.
pub fn solve_half_order_system(values: &[u64]) -> Result<Option<u64>> {
    let (first, rest) = values.split_first().ok_or(Error::Zero {
        what: "number of congruences",
    })?;
    let s = v2(*first)?;
    let mut odd_lcm = first >> s;
    for &a in rest {
        if v2(a)? != s {
            return Ok(None);
        }
        odd_lcm = odd_lcm.lcm(&(a >> s));
    }
    Ok(Some(odd_lcm << s))
}
