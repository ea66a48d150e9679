//! Sweeps that cross-check every closed form against its enumeration oracle.
//!
//! Each family counts the cases it checked and records the first failure.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{self, AbelianGroup, InnerProduct};
use crate::counting::{self, PartitionShape};
use crate::error::Error;
use crate::goodness::{self, GoodnessClass, GoodnessQuery, Parity};
use crate::hull::{self, Rational};

/// Pairs `(a, b)` used by the goodness sweeps.
pub const GOODNESS_PAIRS: [(i64, i64); 10] = [
    (2, 1),
    (3, 1),
    (4, 1),
    (8, 1),
    (3, 2),
    (5, 2),
    (5, 3),
    (7, 1),
    (9, 2),
    (-2, 3),
];

/// Prime powers used by the fixed-set sweeps.
pub const FIXED_SET_QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// `(p, ν)` used by the average-hull sweeps.
pub const HULL_PARAMS: [(u64, u32); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Small,
    Full,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "small" => Ok(Suite::Small),
            "full" => Ok(Suite::Full),
            _ => Err(Error::Parse {
                input: s.to_owned(),
                reason: "expected small or full".into(),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Small => "small",
            Suite::Full => "full",
        })
    }
}

/// Sweep sizes for a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteLimits {
    pub max_l: u64,
    pub max_group_order: u64,
    pub max_hull_order: u64,
    pub max_type_order: u64,
    pub max_two_group: u64,
    pub max_partition_weight: u32,
}

impl Suite {
    pub fn limits(self) -> SuiteLimits {
        match self {
            Suite::Small => SuiteLimits {
                max_l: 1000,
                max_group_order: 60,
                max_hull_order: 30,
                max_type_order: 40,
                max_two_group: 16,
                max_partition_weight: 6,
            },
            Suite::Full => SuiteLimits {
                max_l: 5000,
                max_group_order: 200,
                max_hull_order: 60,
                max_type_order: 100,
                max_two_group: 64,
                max_partition_weight: 8,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }

    fn report(self, name: &'static str) -> FamilyReport {
        FamilyReport {
            name,
            checked: self.checked,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn query(a: i64, b: i64, l: u64) -> GoodnessQuery {
    GoodnessQuery::new(a, b, l).expect("sweep pairs are coprime")
}

/// Theorem-based classification agrees with the exponent scan.
pub fn goodness_equivalence(max_l: u64) -> FamilyReport {
    let ls: Vec<u64> = (1..=max_l).collect();
    par_tally(&ls, |&l, t| {
        for (a, b) in GOODNESS_PAIRS {
            let q = query(a, b, l);
            let fast = goodness::classify(&q);
            let slow = goodness::brute_force_classify(&q);
            t.check(fast == slow, || format!("({a},{b},{l}): {fast:?} vs {slow:?}"));
        }
    })
    .report("goodness-equivalence")
}

/// Disjointness for `ℓ > 2`, divisor closure for odd `d`, and the doubling law.
pub fn goodness_structure(max_l: u64) -> FamilyReport {
    let ls: Vec<u64> = (1..=max_l).collect();
    par_tally(&ls, |&l, t| {
        for (a, b) in GOODNESS_PAIRS {
            let q = query(a, b, l);
            let class = goodness::classify_class(&q);
            if l > 2 && class.is_good() {
                let odd = goodness::witness_search(&q, Parity::Odd).is_some();
                let even = goodness::witness_search(&q, Parity::Even).is_some();
                t.check(odd != even, || format!("({a},{b},{l}) has odd={odd} even={even}"));
            }
            if l % 2 == 1 && l > 1 && class.is_good() {
                for j in crate::arith::divisors(l).expect("l >= 1") {
                    let cj = goodness::classify_class(&query(a, b, j));
                    let ok = match class {
                        GoodnessClass::OddlyGood => cj.is_oddly_good(),
                        GoodnessClass::EvenlyGood => cj.is_evenly_good(),
                        _ => cj.is_good(),
                    };
                    t.check(ok, || format!("({a},{b}): {l} is {class} but divisor {j} is {cj}"));
                }
            }
            let coprime = (a * b).unsigned_abs().gcd(&l) == 1;
            let ab_odd = a % 2 != 0 && b % 2 != 0;
            if l % 2 == 1 && l > 1 && coprime && ab_odd && 2 * l <= max_l {
                let twice = query(a, b, 2 * l);
                let c2 = goodness::classify_class(&twice);
                t.check(class.is_good() == c2.is_good(), || {
                    format!("({a},{b}): {l} is {class} but {} is {c2}", 2 * l)
                });
                if class.is_good() {
                    let o1 = goodness::classify(&q).order_ratio;
                    let o2 = goodness::classify(&twice).order_ratio;
                    t.check(o1 == o2 && o1.is_some_and(|o| o % 2 == 0), || {
                        format!("({a},{b},{l}): ord {o1:?} vs ord_2l {o2:?}")
                    });
                }
            }
        }
    })
    .report("goodness-structure")
}

/// Möbius-inversion counts agree with enumeration.
pub fn order_counts(max_order: u64) -> FamilyReport {
    let groups = abelian::groups_up_to(max_order);
    par_tally(&groups, |g, t| {
        let mut counts = std::collections::BTreeMap::new();
        for x in g.elements().expect("small group") {
            *counts.entry(g.element_order(&x)).or_insert(0u64) += 1;
        }
        let formula = g.order_counts().expect("valid group");
        let total: u64 = formula.iter().map(|(_, n)| n).sum();
        t.check(total == g.order(), || format!("[{g}] counts sum to {total}"));
        for (d, n) in formula {
            let brute = counts.get(&d).copied().unwrap_or(0);
            t.check(n == brute, || format!("[{g}] N({d}) = {n}, enumeration {brute}"));
        }
    })
    .report("order-counts")
}

/// Direct enumeration, divisor sum and closed form agree for `|Q|` and `|R|`.
pub fn fixed_set_three_way(max_order: u64) -> FamilyReport {
    let groups = abelian::groups_up_to(max_order);
    par_tally(&groups, |g, t| {
        for q in FIXED_SET_QS {
            if g.order().gcd(&q) != 1 {
                continue;
            }
            let qd = g.q_set_direct(q).expect("coprime");
            let qs = counting::q_size_sum(g, q).expect("coprime");
            let qc = counting::q_size_closed(g, q).expect("coprime");
            t.check(qd == qs && qs == qc, || format!("[{g}] q={q}: Q {qd}/{qs}/{qc}"));
            let rd = g.r_set_direct(q).expect("coprime");
            let rs = counting::r_size_sum(g, q).expect("coprime");
            let rc = counting::r_size_closed(g, q).expect("coprime");
            t.check(rd == rs && rs == rc, || format!("[{g}] q={q}: R {rd}/{rs}/{rc}"));
            // Full fixed sets are governed by the exponent, not the order.
            let good = goodness::classify_class(&query(q as i64, 1, g.exponent())).is_good();
            t.check((qd == g.order()) == good, || format!("[{g}] q={q}: |Q|=m vs exponent good"));
            let odd = goodness::classify_class(&query(q as i64, 1, g.exponent())).is_oddly_good();
            t.check((rd == g.order()) == odd, || format!("[{g}] q={q}: |R|=m vs exponent oddly good"));
            let bq = counting::bounds_q(g.order(), q).expect("coprime");
            let br = counting::bounds_r(g.order(), q).expect("coprime");
            t.check(bq.contains(qd), || format!("[{g}] q={q}: |Q|={qd} outside {bq:?}"));
            t.check(br.contains(rd), || format!("[{g}] q={q}: |R|={rd} outside {br:?}"));
        }
    })
    .report("fixed-set-three-way")
}

/// Class types match goodness of the element order.
pub fn class_types(max_order: u64) -> FamilyReport {
    let groups = abelian::groups_up_to(max_order);
    par_tally(&groups, |g, t| {
        for q in [2u64, 3, 4, 5, 8, 9] {
            if g.order().gcd(&q) != 1 {
                continue;
            }
            for ip in [InnerProduct::Euclidean, InnerProduct::Hermitian] {
                let classes = g.classify(q, ip).expect("coprime");
                for (class, pairing) in classes.classes.iter().zip(&classes.pairing) {
                    let d = g.element_order(&class.representative);
                    let c = goodness::classify_class(&query(q as i64, 1, d));
                    let expect = match ip {
                        InnerProduct::Euclidean => c.is_good(),
                        InnerProduct::Hermitian => c.is_oddly_good(),
                    };
                    let self_paired = *pairing == abelian::Pairing::SelfPaired;
                    t.check(self_paired == expect, || {
                        format!("[{g}] q={q} {ip:?}: class of {} (ord {d})", class.representative)
                    });
                }
            }
        }
    })
    .report("class-types")
}

/// Closed-form averages equal the enumeration oracle, and obey the bounds.
pub fn hull_averages(max_order: u64) -> (FamilyReport, FamilyReport) {
    let groups = abelian::groups_up_to(max_order);
    let (exact, bounds) = groups
        .par_iter()
        .map(|g| {
            let mut exact = Tally::default();
            let mut bounds = Tally::default();
            for (p, nu) in HULL_PARAMS {
                if g.order() % p == 0 {
                    continue;
                }
                let q = p.pow(nu);
                for k in [0u32, 1] {
                    for ip in [InnerProduct::Euclidean, InnerProduct::Hermitian] {
                        let s = hull::avg_hull(g, p, nu, k, ip).expect("valid cell");
                        let brute = hull::avg_hull_bruteforce(g, p, nu, k, ip).expect("feasible");
                        exact.check(s.average == brute, || {
                            format!("[{g}] p={p} nu={nu} k={k} {ip:?}: {} vs {}", s.average, brute)
                        });
                        let m = g.order() as i128;
                        let mpk = Rational::from_integer(m * s.pk as i128);
                        bounds.check(s.average < mpk / 3, || format!("[{g}] {p},{nu},{k},{ip:?} upper"));
                        let set_good = {
                            let c = goodness::classify_class(&query(q as i64, 1, g.exponent()));
                            match ip {
                                InnerProduct::Euclidean => c.is_good(),
                                InnerProduct::Hermitian => c.is_oddly_good(),
                            }
                        };
                        bounds.check(s.is_zero == (k == 0 && set_good), || {
                            format!("[{g}] {p},{nu},{k},{ip:?} zero characterization")
                        });
                        if !s.is_zero {
                            let floor = match ip {
                                InnerProduct::Euclidean => mpk / 12,
                                InnerProduct::Hermitian => mpk / 8,
                            };
                            bounds.check(s.average >= floor, || {
                                format!("[{g}] {p},{nu},{k},{ip:?}: {} below {}", s.average, floor)
                            });
                        }
                        if k == 0 {
                            let short = Rational::new(m - s.fixed_set_size as i128, 4);
                            bounds.check(s.average == short, || format!("[{g}] {p},{nu},k=0,{ip:?} short form"));
                        }
                    }
                }
            }
            (exact, bounds)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((Tally::default(), Tally::default()), |(e, b), (e2, b2)| {
            (e.merge(e2), b.merge(b2))
        });
    (exact.report("hull-average-exact"), bounds.report("hull-average-bounds"))
}

/// Finer Sylow-2 subgroup never decreases `|Q|` or `|R|`.
pub fn monotonicity(max_two_group: u64) -> FamilyReport {
    let mut tally = Tally::default();
    let mut beta = 0u32;
    while (1u64 << beta) <= max_two_group {
        let shapes = abelian::integer_partitions(beta);
        for odd in [1u64, 3, 5, 15] {
            let odd_part = AbelianGroup::cyclic(odd).expect("positive");
            let build = |parts: &Vec<u32>| {
                let mut orders: Vec<u64> = parts.iter().map(|&e| 1u64 << e).collect();
                orders.extend_from_slice(odd_part.factors());
                AbelianGroup::from_cyclic_orders(&orders).expect("positive")
            };
            for q in FIXED_SET_QS {
                if (odd << beta).gcd(&q) != 1 {
                    continue;
                }
                for fine in &shapes {
                    for coarse in &shapes {
                        let finer = PartitionShape::new(fine.clone())
                            .is_finer(&PartitionShape::new(coarse.clone()))
                            .expect("equal weight");
                        if !finer {
                            continue;
                        }
                        let (ga, gb) = (build(fine), build(coarse));
                        let qa = counting::q_size_closed(&ga, q).expect("coprime");
                        let qb = counting::q_size_closed(&gb, q).expect("coprime");
                        let ra = counting::r_size_closed(&ga, q).expect("coprime");
                        let rb = counting::r_size_closed(&gb, q).expect("coprime");
                        tally.check(qa >= qb && ra >= rb, || {
                            format!("q={q}: [{ga}] ⪯ [{gb}] but Q {qa}<{qb} or R {ra}<{rb}")
                        });
                        let qa_direct = ga.q_set_direct(q).expect("coprime");
                        tally.check(qa_direct == qa, || format!("[{ga}] q={q} direct {qa_direct}"));
                    }
                }
            }
        }
        beta += 1;
    }
    tally.report("finer-monotonicity")
}

/// `is_finer` is reflexive, antisymmetric and transitive.
pub fn finer_partial_order(max_weight: u32) -> FamilyReport {
    let mut tally = Tally::default();
    for w in 0..=max_weight {
        let shapes: Vec<PartitionShape> = abelian::integer_partitions(w)
            .into_iter()
            .map(PartitionShape::new)
            .collect();
        let n = shapes.len();
        let rel: Vec<Vec<bool>> = shapes
            .iter()
            .map(|a| shapes.iter().map(|b| a.is_finer(b).expect("equal weight")).collect())
            .collect();
        for i in 0..n {
            tally.check(rel[i][i], || format!("not reflexive at {:?}", shapes[i]));
            for j in 0..n {
                if i != j {
                    tally.check(!(rel[i][j] && rel[j][i]), || {
                        format!("not antisymmetric: {:?} {:?}", shapes[i], shapes[j])
                    });
                }
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        tally.check(rel[i][k], || {
                            format!("not transitive: {:?} {:?} {:?}", shapes[i], shapes[j], shapes[k])
                        });
                    }
                }
            }
        }
    }
    tally.report("finer-partial-order")
}

/// Runs every family at the sizes of `suite`.
pub fn run_suite(suite: Suite) -> Vec<FamilyReport> {
    let lim = suite.limits();
    let (exact, bounds) = hull_averages(lim.max_hull_order);
    vec![
        goodness_equivalence(lim.max_l),
        goodness_structure(lim.max_l),
        order_counts(lim.max_group_order),
        fixed_set_three_way(lim.max_group_order),
        class_types(lim.max_type_order),
        exact,
        bounds,
        monotonicity(lim.max_two_group),
        finer_partial_order(lim.max_partition_weight),
    ]
}
