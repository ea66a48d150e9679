//! Hull dimensions of abelian codes in `F_q[A × Z_{p^k}]` with `p ∤ |A|`.
//!
//! A code is identified with its ε-profile: one dimension `ε_i ∈ [0, p^k]`
//! per cyclotomic class of `A`, the dimension of its cyclic component
//! generated by `(x - 1)^{p^k - ε_i}`. Duality maps a self-paired class to
//! itself and swaps the two classes of a pair, so the hull dimension is a sum
//! of `min` terms weighted by class sizes. Averages are taken over the
//! uniform distribution on profiles and carried as exact rationals.

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::abelian::{AbelianGroup, InnerProduct, Pairing};
use crate::arith;
use crate::counting;
use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Renders `r` as `"num/den"` (denominator always shown).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with 6 significant digits.
pub fn rational_decimal(r: &Rational) -> String {
    let x = *r.numer() as f64 / *r.denom() as f64;
    if x == 0.0 {
        return "0".to_owned();
    }
    let digits = 6 - 1 - x.abs().log10().floor() as i32;
    if digits > 0 {
        let s = format!("{:.*}", digits as usize, x);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_owned()
    } else {
        let scale = 10f64.powi(-digits);
        format!("{}", (x / scale).round() * scale)
    }
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SlotKind {
    SelfPaired,
    PairFirst { partner: usize },
    PairSecond { partner: usize },
}

impl SlotKind {
    fn partner(self, own: usize) -> usize {
        match self {
            SlotKind::SelfPaired => own,
            SlotKind::PairFirst { partner } | SlotKind::PairSecond { partner } => partner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassSlot {
    pub class_size: u64,
    pub kind: SlotKind,
}

/// Class layout for `A` over `F_{p^ν}` (Euclidean) or `F_{p^{2ν}}` (Hermitian):
/// self-paired classes first, then the first and second halves of each pair.
pub fn class_layout(group: &AbelianGroup, q: u64, ip: InnerProduct) -> Result<Vec<ClassSlot>> {
    let raw = group.class_layout(q, ip)?;
    let mut layout: Vec<ClassSlot> = raw
        .iter()
        .filter(|(_, p)| *p == Pairing::SelfPaired)
        .map(|&(class_size, _)| ClassSlot {
            class_size,
            kind: SlotKind::SelfPaired,
        })
        .collect();
    let pairs: Vec<u64> = raw
        .iter()
        .enumerate()
        .filter_map(|(i, &(size, p))| match p {
            Pairing::PairedWith(j) if i < j => Some(size),
            _ => None,
        })
        .collect();
    let first = layout.len();
    let r2 = pairs.len();
    for (l, &size) in pairs.iter().enumerate() {
        layout.push(ClassSlot {
            class_size: size,
            kind: SlotKind::PairFirst { partner: first + r2 + l },
        });
    }
    for (l, &size) in pairs.iter().enumerate() {
        layout.push(ClassSlot {
            class_size: size,
            kind: SlotKind::PairSecond { partner: first + l },
        });
    }
    Ok(layout)
}

/// A code given by its ε-tuple over a class layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeProfile {
    pub layout: Vec<ClassSlot>,
    pub epsilons: Vec<u64>,
    /// `p^k`.
    pub pk: u64,
}

impl CodeProfile {
    pub fn new(layout: Vec<ClassSlot>, epsilons: Vec<u64>, pk: u64) -> Result<Self> {
        let profile = CodeProfile {
            layout,
            epsilons,
            pk,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedProfile(msg));
        if self.epsilons.len() != self.layout.len() {
            return bad(format!(
                "{} dimensions for {} classes",
                self.epsilons.len(),
                self.layout.len()
            ));
        }
        if let Some(e) = self.epsilons.iter().find(|&&e| e > self.pk) {
            return bad(format!("dimension {e} exceeds p^k = {}", self.pk));
        }
        for (i, slot) in self.layout.iter().enumerate() {
            if slot.class_size == 0 {
                return bad(format!("class {i} has size 0"));
            }
            let j = slot.kind.partner(i);
            let back = match (slot.kind, self.layout.get(j).map(|s| s.kind)) {
                (SlotKind::SelfPaired, _) => continue,
                (SlotKind::PairFirst { .. }, Some(SlotKind::PairSecond { partner }))
                | (SlotKind::PairSecond { .. }, Some(SlotKind::PairFirst { partner })) => partner,
                _ => return bad(format!("class {i} has no matching partner at {j}")),
            };
            if back != i || self.layout[j].class_size != slot.class_size {
                return bad(format!("classes {i} and {j} are not a symmetric pair"));
            }
        }
        Ok(())
    }

    /// Profile of the dual code: `ε_i ↦ p^k - ε_{partner(i)}`.
    pub fn dual(&self) -> CodeProfile {
        let epsilons = self
            .layout
            .iter()
            .enumerate()
            .map(|(i, slot)| self.pk - self.epsilons[slot.kind.partner(i)])
            .collect();
        CodeProfile {
            layout: self.layout.clone(),
            epsilons,
            pk: self.pk,
        }
    }
}

/// Dimension of `C ∩ C^⊥`.
///
/// Self-paired classes contribute `s·min(ε, p^k - ε)`; a pair `(ε, ε′)`
/// contributes `s·[min(ε, p^k - ε′) + min(ε′, p^k - ε)]`.
pub fn hull_dim(profile: &CodeProfile) -> Result<u64> {
    profile.validate()?;
    let pk = profile.pk;
    Ok(profile
        .layout
        .iter()
        .enumerate()
        .map(|(i, slot)| {
            let own = profile.epsilons[i];
            let other = profile.epsilons[slot.kind.partner(i)];
            slot.class_size * own.min(pk - other)
        })
        .sum())
}

/// Average hull dimension together with its bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullSummary {
    #[serde(serialize_with = "ser_rational")]
    pub average: Rational,
    /// Strict: `average < m p^k / 3`.
    #[serde(serialize_with = "ser_rational")]
    pub upper_bound: Rational,
    /// `m p^k / 12` (Euclidean) or `m p^k / 8` (Hermitian) when nonzero, else 0.
    #[serde(serialize_with = "ser_rational")]
    pub lower_bound: Rational,
    pub is_zero: bool,
    pub m: u64,
    pub pk: u64,
    /// `|Q_{p^ν}(A)|` or `|R_{p^{2ν}}(A)|`.
    pub fixed_set_size: u64,
    /// 1 when `p^k` is even, i.e. `p = 2` and `k >= 1`.
    pub delta_p: u8,
    pub inner_product: InnerProduct,
}

/// Validated parameters of an average-hull computation.
struct HullParams {
    m: u64,
    q: u64,
    pk: u64,
}

fn hull_params(group: &AbelianGroup, p: u64, nu: u32, k: u32) -> Result<HullParams> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if nu == 0 {
        return Err(Error::Zero { what: "nu" });
    }
    let m = group.order();
    if m.is_multiple_of(p) {
        return Err(Error::NotCoprime {
            what: "p and the group order",
            gcd: p,
        });
    }
    let q = p.checked_pow(nu).ok_or(Error::Overflow("p^nu"))?;
    let pk = p.checked_pow(k).ok_or(Error::Overflow("p^k"))?;
    if (m as u128) * (pk as u128 + 1) * 12 > i64::MAX as u128 {
        return Err(Error::Overflow("m p^k"));
    }
    Ok(HullParams { m, q, pk })
}

/// `m n (1/3 - 1/(6(n+1))) - F ((n+1)/12 + (2 - 3δ)/(12(n+1)))` with `n = p^k`,
/// `F` the fixed-set size and `δ = 1` iff `n` is even.
pub fn average_formula(m: u64, pk: u64, fixed_set_size: u64) -> Rational {
    let n = pk as i128;
    let delta = (n % 2 == 0) as i128;
    let mn = Rational::from_integer(m as i128 * n);
    let fixed = Rational::from_integer(fixed_set_size as i128);
    mn * (Rational::new(1, 3) - Rational::new(1, 6 * (n + 1)))
        - fixed * (Rational::new(n + 1, 12) + Rational::new(2 - 3 * delta, 12 * (n + 1)))
}

/// Average hull dimension over all abelian codes in `F_q[A × Z_{p^k}]`,
/// with `q = p^ν` (Euclidean) or `q = p^{2ν}` (Hermitian).
pub fn avg_hull(
    group: &AbelianGroup,
    p: u64,
    nu: u32,
    k: u32,
    ip: InnerProduct,
) -> Result<HullSummary> {
    let HullParams { m, q, pk } = hull_params(group, p, nu, k)?;
    let fixed_set_size = counting::fixed_set_closed(group, q, ip)?;
    let average = average_formula(m, pk, fixed_set_size);
    let mn = (m as i128) * (pk as i128);
    let is_zero = average.is_zero();
    let lower_bound = if is_zero {
        Rational::zero()
    } else {
        match ip {
            InnerProduct::Euclidean => Rational::new(mn, 12),
            InnerProduct::Hermitian => Rational::new(mn, 8),
        }
    };
    Ok(HullSummary {
        average,
        upper_bound: Rational::new(mn, 3),
        lower_bound,
        is_zero,
        m,
        pk,
        fixed_set_size,
        delta_p: (pk % 2 == 0) as u8,
        inner_product: ip,
    })
}

/// Largest `(p^k + 1)^2` the enumeration oracle will visit per pair.
pub const BRUTE_FORCE_MAX_PAIR_OUTCOMES: u64 = 1_000_000;
/// Largest number of cyclotomic classes the enumeration oracle accepts.
pub const BRUTE_FORCE_MAX_CLASSES: usize = 10_000;

/// Mean of `min(ε, n - ε)` over `ε ∈ {0..n}`, by enumeration.
fn self_paired_mean(n: u64) -> Rational {
    let total: u64 = (0..=n).map(|e| e.min(n - e)).sum();
    Rational::new(total as i128, n as i128 + 1)
}

/// Mean of `min(ε, n - ε′) + min(ε′, n - ε)` over independent `ε, ε′`.
fn pair_mean(n: u64) -> Rational {
    let mut total = 0u64;
    for e in 0..=n {
        for f in 0..=n {
            total += e.min(n - f) + f.min(n - e);
        }
    }
    let outcomes = (n as i128 + 1) * (n as i128 + 1);
    Rational::new(total as i128, outcomes)
}

/// Average hull dimension from the class layout by linearity of expectation:
/// each class (or pair of classes) contributes its size times the mean of
/// its `min` term over all dimension choices.
pub fn avg_hull_bruteforce(
    group: &AbelianGroup,
    p: u64,
    nu: u32,
    k: u32,
    ip: InnerProduct,
) -> Result<Rational> {
    let HullParams { q, pk, .. } = hull_params(group, p, nu, k)?;
    let outcomes = (pk as u128 + 1).pow(2);
    if outcomes > BRUTE_FORCE_MAX_PAIR_OUTCOMES as u128 {
        return Err(Error::Infeasible(format!(
            "(p^k + 1)^2 = {outcomes} exceeds {BRUTE_FORCE_MAX_PAIR_OUTCOMES}"
        )));
    }
    let layout = class_layout(group, q, ip)?;
    if layout.len() > BRUTE_FORCE_MAX_CLASSES {
        return Err(Error::Infeasible(format!(
            "{} classes exceed {BRUTE_FORCE_MAX_CLASSES}",
            layout.len()
        )));
    }
    let self_mean = self_paired_mean(pk);
    let pair = pair_mean(pk);
    let mut total = Rational::zero();
    for slot in &layout {
        let size = Rational::from_integer(slot.class_size as i128);
        match slot.kind {
            SlotKind::SelfPaired => total += size * self_mean,
            SlotKind::PairFirst { .. } => total += size * pair,
            SlotKind::PairSecond { .. } => {}
        }
    }
    Ok(total)
}

/// One cell of a scan: a group and code parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub group: String,
    pub p: u64,
    pub nu: u32,
    pub k: u32,
    pub inner_product: InnerProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub cell: ScanCell,
    pub result: std::result::Result<HullSummary, String>,
}

/// Cartesian product `groups × params × ks × inner products`, in that nesting order.
pub fn scan_cells(
    groups: &[AbelianGroup],
    params: &[(u64, u32)],
    ks: &[u32],
    inner: &[InnerProduct],
) -> Vec<(AbelianGroup, ScanCell)> {
    let mut cells = Vec::new();
    for group in groups {
        for &(p, nu) in params {
            for &k in ks {
                for &ip in inner {
                    cells.push((
                        group.clone(),
                        ScanCell {
                            group: group.to_string(),
                            p,
                            nu,
                            k,
                            inner_product: ip,
                        },
                    ));
                }
            }
        }
    }
    cells
}

/// Evaluates every cell (in parallel); rows come back in input order and
/// per-cell failures are reported inline.
pub fn scan_table(cells: &[(AbelianGroup, ScanCell)]) -> Vec<ScanRow> {
    cells
        .par_iter()
        .map(|(group, cell)| ScanRow {
            cell: cell.clone(),
            result: avg_hull(group, cell.p, cell.nu, cell.k, cell.inner_product)
                .map_err(|e| e.to_string()),
        })
        .collect()
}
