//! Finite abelian groups in primary decomposition, element-order counts, and
//! `q`-cyclotomic classes with their Euclidean and Hermitian pairings.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ENUM`].
pub const MAX_ENUM_ENV: &str = "GOODINT_MAX_ENUM";

/// Current enumeration cap, read from `GOODINT_MAX_ENUM` when set.
pub fn enumeration_cap() -> u64 {
    std::env::var(MAX_ENUM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// Which form the code duals are taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

impl InnerProduct {
    pub fn short(self) -> &'static str {
        match self {
            InnerProduct::Euclidean => "E",
            InnerProduct::Hermitian => "H",
        }
    }
}

impl FromStr for InnerProduct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "e" | "euclidean" => Ok(InnerProduct::Euclidean),
            "h" | "hermitian" => Ok(InnerProduct::Hermitian),
            _ => Err(Error::Parse {
                input: s.to_owned(),
                reason: "expected E or H".into(),
            }),
        }
    }
}

/// A finite abelian group `Z_{n_1} × ... × Z_{n_r}` with every `n_i` a prime
/// power, sorted ascending. The trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element as a coordinate tuple, `coords[i] ∈ [0, factors[i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    /// Builds a group from arbitrary cyclic orders, splitting each into its
    /// prime-power components (`[6]` becomes `[2, 3]`).
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut factors = Vec::new();
        let mut order: u64 = 1;
        for &n in orders {
            let f = arith::factorize(n)?;
            factors.extend(f.components());
            order = order.checked_mul(n).ok_or(Error::Overflow("group order"))?;
        }
        factors.sort_unstable();
        Ok(AbelianGroup { factors })
    }

    /// `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        AbelianGroup::from_cyclic_orders(&[n])
    }

    /// Prime-power cyclic factors in ascending order.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `m = |A|`.
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// `M`, the least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, n| acc.lcm(n))
    }

    /// Exponents `a_i` of the Sylow `p`-subgroup `∏ Z_{p^{a_i}}`, descending.
    pub fn sylow_exponents(&self, p: u64) -> Vec<u32> {
        let mut exps: Vec<u32> = self
            .factors
            .iter()
            .filter(|&&n| n % p == 0)
            .map(|&n| {
                let mut e = 0;
                let mut n = n;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                e
            })
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        self.factors
            .iter()
            .zip(&x.0)
            .fold(1, |acc, (&n, &c)| acc.lcm(&(n / c.gcd(&n))))
    }

    /// Number of elements annihilated by `e`, i.e. `∏ gcd(e, n_i)`.
    pub fn killed_by(&self, e: u64) -> u64 {
        self.factors.iter().map(|&n| e.gcd(&n)).product()
    }

    /// `N_A(d)`: elements of order exactly `d`, by Möbius inversion of
    /// [`killed_by`](Self::killed_by) over the divisors of `d`.
    pub fn count_order(&self, d: u64) -> Result<u64> {
        if d == 0 {
            return Err(Error::Zero { what: "d" });
        }
        if !self.exponent().is_multiple_of(d) {
            return Ok(0);
        }
        let mut total: i128 = 0;
        for e in arith::divisors(d)? {
            let mu = arith::mobius(d / e)?;
            if mu != 0 {
                total += mu as i128 * self.killed_by(e) as i128;
            }
        }
        Ok(total as u64)
    }

    /// `(d, N_A(d))` for every divisor `d` of the exponent.
    pub fn order_counts(&self) -> Result<Vec<(u64, u64)>> {
        arith::divisors(self.exponent())?
            .into_iter()
            .map(|d| Ok((d, self.count_order(d)?)))
            .collect()
    }

    fn check_enumerable(&self) -> Result<()> {
        let cap = enumeration_cap();
        let size = self.order();
        if size > cap {
            return Err(Error::EnumerationCap { size, cap });
        }
        Ok(())
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.check_enumerable()?;
        Ok(Elements {
            factors: &self.factors,
            next: Some(vec![0; self.factors.len()]),
        })
    }

    fn check_coprime(&self, q: u64) -> Result<()> {
        let g = q.gcd(&self.order());
        if g != 1 || q == 0 {
            return Err(Error::NotCoprime {
                what: "q and the group order",
                gcd: g,
            });
        }
        Ok(())
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.factors[i + 1] as usize;
        }
        strides
    }

    fn decode(&self, mut index: usize, strides: &[usize]) -> GroupElement {
        let coords = strides
            .iter()
            .map(|&s| {
                let c = index / s;
                index %= s;
                c as u64
            })
            .collect();
        GroupElement(coords)
    }

    /// Index of `c · x` for every flat index `x`.
    fn scale_map(&self, c: i128) -> Vec<u32> {
        let strides = self.strides();
        let m = self.order() as usize;
        let mults: Vec<u64> = self
            .factors
            .iter()
            .map(|&n| c.rem_euclid(n as i128) as u64)
            .collect();
        let mut coords = vec![0u64; self.factors.len()];
        let mut out = Vec::with_capacity(m);
        for _ in 0..m {
            let image: usize = coords
                .iter()
                .zip(&mults)
                .zip(self.factors.iter().zip(&strides))
                .map(|((&x, &k), (&n, &s))| (arith::mul_mod(x, k, n) as usize) * s)
                .sum();
            out.push(image as u32);
            for (i, x) in coords.iter_mut().enumerate().rev() {
                *x += 1;
                if *x < self.factors[i] {
                    break;
                }
                *x = 0;
            }
        }
        out
    }

    /// Orbits of multiplication by `mult`; representatives are the least
    /// flat index (equivalently the lexicographically least tuple).
    fn class_table(&self, mult: i128) -> Result<ClassTable> {
        self.check_enumerable()?;
        let image = self.scale_map(mult);
        let m = image.len();
        let mut class_of = vec![u32::MAX; m];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..m {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let mut x = start;
            let mut size = 0u64;
            while class_of[x] == u32::MAX {
                class_of[x] = id;
                size += 1;
                x = image[x] as usize;
            }
            reps.push(start);
            sizes.push(size);
        }
        Ok(ClassTable {
            class_of,
            reps,
            sizes,
        })
    }

    /// Partition into `q`-cyclotomic classes `S_q(a) = {q^i · a}`.
    pub fn cyclotomic_classes(&self, q: u64) -> Result<Vec<CycClass>> {
        self.check_coprime(q)?;
        let table = self.class_table(q as i128)?;
        Ok(self.materialize(&table))
    }

    fn materialize(&self, table: &ClassTable) -> Vec<CycClass> {
        let strides = self.strides();
        let mut members: Vec<Vec<GroupElement>> = table
            .sizes
            .iter()
            .map(|&s| Vec::with_capacity(s as usize))
            .collect();
        for (x, &id) in table.class_of.iter().enumerate() {
            members[id as usize].push(self.decode(x, &strides));
        }
        table
            .reps
            .iter()
            .zip(&table.sizes)
            .zip(members)
            .map(|((&rep, &size), members)| CycClass {
                representative: self.decode(rep, &strides),
                size,
                members,
            })
            .collect()
    }

    fn pair_classes(&self, q: u64, ip: InnerProduct) -> Result<(ClassTable, Vec<Pairing>)> {
        self.check_coprime(q)?;
        let (orbit_mult, partner_mult) = match ip {
            InnerProduct::Euclidean => (q as i128, -1i128),
            InnerProduct::Hermitian => {
                let q = (q % self.exponent().max(1)) as i128;
                (q * q, -q)
            }
        };
        let table = self.class_table(orbit_mult)?;
        let partner = self.scale_map(partner_mult);
        let pairing = table
            .reps
            .iter()
            .enumerate()
            .map(|(id, &rep)| {
                let other = table.class_of[partner[rep] as usize] as usize;
                if other == id {
                    Pairing::SelfPaired
                } else {
                    Pairing::PairedWith(other)
                }
            })
            .collect();
        Ok((table, pairing))
    }

    /// `q`-cyclotomic classes tagged type I (`-a ∈ S_q(a)`) or type II,
    /// with each type II class linked to the class of `-a`.
    pub fn classify_euclidean(&self, q: u64) -> Result<ClassPairing> {
        self.classify(q, InnerProduct::Euclidean)
    }

    /// `q²`-cyclotomic classes tagged type I′ (`-q·a ∈ S_{q²}(a)`) or type
    /// II′, with each type II′ class linked to the class of `-q·a`.
    pub fn classify_hermitian(&self, q: u64) -> Result<ClassPairing> {
        self.classify(q, InnerProduct::Hermitian)
    }

    pub fn classify(&self, q: u64, ip: InnerProduct) -> Result<ClassPairing> {
        let (table, pairing) = self.pair_classes(q, ip)?;
        let classes = self.materialize(&table);
        Ok(ClassPairing::new(ip, classes, pairing))
    }

    /// Class sizes and pairings without materializing members.
    pub fn class_layout(&self, q: u64, ip: InnerProduct) -> Result<Vec<(u64, Pairing)>> {
        let (table, pairing) = self.pair_classes(q, ip)?;
        Ok(table.sizes.into_iter().zip(pairing).collect())
    }

    fn self_paired_size(&self, q: u64, ip: InnerProduct) -> Result<u64> {
        let (table, pairing) = self.pair_classes(q, ip)?;
        Ok(table
            .sizes
            .iter()
            .zip(&pairing)
            .filter(|(_, p)| **p == Pairing::SelfPaired)
            .map(|(s, _)| s)
            .sum())
    }

    /// `|Q_q(A)|`: total size of the type I classes.
    pub fn q_set_direct(&self, q: u64) -> Result<u64> {
        self.self_paired_size(q, InnerProduct::Euclidean)
    }

    /// `|R_{q²}(A)|`: total size of the type I′ classes.
    pub fn r_set_direct(&self, q: u64) -> Result<u64> {
        self.self_paired_size(q, InnerProduct::Hermitian)
    }
}

struct ClassTable {
    class_of: Vec<u32>,
    reps: Vec<usize>,
    sizes: Vec<u64>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Parses the literal `"2,4,3"` as `Z_2 × Z_4 × Z_3`.
impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_owned(),
            reason: reason.to_owned(),
        };
        if s.trim().is_empty() {
            return Err(parse_err("empty group literal"));
        }
        let orders = s
            .split(',')
            .map(|t| {
                let n: u64 = t
                    .trim()
                    .parse()
                    .map_err(|_| parse_err("cyclic orders must be positive integers"))?;
                if n == 0 {
                    return Err(parse_err("cyclic orders must be positive"));
                }
                Ok(n)
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::from_cyclic_orders(&orders)
    }
}

/// Iterator over group elements, see [`AbelianGroup::elements`].
pub struct Elements<'a> {
    factors: &'a [u64],
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried_out = true;
        for (i, x) in succ.iter_mut().enumerate().rev() {
            *x += 1;
            if *x < self.factors[i] {
                carried_out = false;
                break;
            }
            *x = 0;
        }
        if !carried_out {
            self.next = Some(succ);
        }
        Some(GroupElement(current))
    }
}

/// A `q`-cyclotomic class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycClass {
    /// Lexicographically least member.
    pub representative: GroupElement,
    pub size: u64,
    pub members: Vec<GroupElement>,
}

/// How a class relates to its partner under the chosen duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pairing {
    /// Type I (Euclidean) or I′ (Hermitian).
    SelfPaired,
    /// Type II or II′; holds the index of the partner class.
    PairedWith(usize),
}

/// Cyclotomic classes annotated with their pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPairing {
    pub inner_product: InnerProduct,
    pub classes: Vec<CycClass>,
    pub pairing: Vec<Pairing>,
    /// `r_I` (or `r_I′`).
    pub self_paired: usize,
    /// `r_II` (or `r_II′`), the number of partner pairs.
    pub pairs: usize,
}

impl ClassPairing {
    fn new(inner_product: InnerProduct, classes: Vec<CycClass>, pairing: Vec<Pairing>) -> Self {
        let self_paired = pairing.iter().filter(|p| **p == Pairing::SelfPaired).count();
        let pairs = (pairing.len() - self_paired) / 2;
        ClassPairing {
            inner_product,
            classes,
            pairing,
            self_paired,
            pairs,
        }
    }

    /// `t = r_I + 2 r_II`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Total size of the self-paired classes (`|Q|` or `|R|`).
    pub fn fixed_set_size(&self) -> u64 {
        self.classes
            .iter()
            .zip(&self.pairing)
            .filter(|(_, p)| **p == Pairing::SelfPaired)
            .map(|(c, _)| c.size)
            .sum()
    }
}

/// Partitions of `n` as descending part lists.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `m` up to isomorphism.
pub fn groups_of_order(m: u64) -> Result<Vec<AbelianGroup>> {
    let f = arith::factorize(m)?;
    let mut groups = vec![Vec::<u64>::new()];
    for &(p, e) in &f.prime_powers {
        let mut next = Vec::new();
        for partial in &groups {
            for partition in integer_partitions(e) {
                let mut factors = partial.clone();
                factors.extend(partition.iter().map(|&k| p.pow(k)));
                next.push(factors);
            }
        }
        groups = next;
    }
    Ok(groups
        .into_iter()
        .map(|mut factors| {
            factors.sort_unstable();
            AbelianGroup { factors }
        })
        .collect())
}

/// Every abelian group of order `1..=max_order`, ordered by order.
pub fn groups_up_to(max_order: u64) -> Vec<AbelianGroup> {
    (1..=max_order)
        .flat_map(|m| groups_of_order(m).expect("positive order"))
        .collect()
}
