//! Acceptance sweeps. Every check compares the library against an oracle
//! written here from first principles, with exact integer or rational equality.
//!
//! Runs with a custom harness so the PASS/FAIL lines always print.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use goodint::abelian::{groups_up_to, integer_partitions};
use goodint::counting::{self, PartitionShape};
use goodint::goodness::{brute_force_classify, classify, GoodnessQuery};
use goodint::{avg_hull, avg_hull_bruteforce, AbelianGroup, GoodnessClass, InnerProduct, Rational};
use rayon::prelude::*;

const PAIRS: [(i64, i64); 10] = [
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
const MAX_L: u64 = 5000;
const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const HULL_PARAMS: [(u64, u32); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];
const INNER: [InnerProduct; 2] = [InnerProduct::Euclidean, InnerProduct::Hermitian];

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Outcome of checking a group of cases: how many ran and what went wrong.
#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

// ---------------------------------------------------------------------------
// goodness oracle: scan k directly

/// Least odd and least even `k >= 1` with `ℓ | a^k + b^k`, and the least `k >= 1`
/// with `a^k ≡ b^k (mod ℓ)`.
struct Scan {
    odd: Option<u64>,
    even: Option<u64>,
    ratio_order: Option<u64>,
}

fn scan(a: i64, b: i64, l: u64) -> Scan {
    let am = a.rem_euclid(l as i64) as u64;
    let bm = b.rem_euclid(l as i64) as u64;
    let (mut x, mut y) = (1 % l, 1 % l);
    let mut out = Scan { odd: None, even: None, ratio_order: None };
    // Preperiod is below 64 and the period is at most ℓ; two periods cover both parities.
    for k in 1..=2 * l + 64 {
        x = x * am % l;
        y = y * bm % l;
        if (x + y) % l == 0 {
            let slot = if k % 2 == 1 { &mut out.odd } else { &mut out.even };
            slot.get_or_insert(k);
        }
        if x == y && out.ratio_order.is_none() {
            out.ratio_order = Some(k);
        }
    }
    if gcd(bm, l) != 1 {
        out.ratio_order = None;
    }
    out
}

fn scan_class(s: &Scan) -> GoodnessClass {
    match (s.odd.is_some(), s.even.is_some()) {
        (true, true) => GoodnessClass::BothParityGood,
        (true, false) => GoodnessClass::OddlyGood,
        (false, true) => GoodnessClass::EvenlyGood,
        (false, false) => GoodnessClass::Bad,
    }
}

/// Oracle scans for every pair and every `ℓ <= MAX_L`, indexed `[pair][ℓ]`.
fn scan_table() -> Vec<Vec<Scan>> {
    PAIRS
        .par_iter()
        .map(|&(a, b)| {
            let mut row = vec![Scan { odd: None, even: None, ratio_order: None }];
            row.extend((1..=MAX_L).map(|l| scan(a, b, l)));
            row
        })
        .collect()
}

fn criterion_1(scans: &[Vec<Scan>]) -> Outcome {
    PAIRS
        .par_iter()
        .zip(scans)
        .map(|(&(a, b), row)| {
            let mut o = Outcome::default();
            for l in 1..=MAX_L {
                let q = GoodnessQuery::new(a, b, l).expect("valid");
                let s = &row[l as usize];
                let fast = classify(&q);
                let slow = brute_force_classify(&q);
                let expect = scan_class(s);
                o.check(fast.class == expect && slow.class == expect, || {
                    format!("({a},{b}) ℓ={l}: classify {:?}, brute {:?}, scan {expect:?}", fast.class, slow.class)
                });
                o.check(fast.witness_odd == s.odd && fast.witness_even == s.even, || {
                    format!("({a},{b}) ℓ={l}: witnesses {:?}/{:?} vs {:?}/{:?}", fast.witness_odd, fast.witness_even, s.odd, s.even)
                });
                o.check(fast.order_ratio == s.ratio_order, || {
                    format!("({a},{b}) ℓ={l}: ord {:?} vs {:?}", fast.order_ratio, s.ratio_order)
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge)
}

fn criterion_2(scans: &[Vec<Scan>]) -> Outcome {
    PAIRS
        .par_iter()
        .zip(scans)
        .map(|(&(a, b), row)| {
            let mut o = Outcome::default();
            let class_of = |l: u64| classify(&GoodnessQuery::new(a, b, l).expect("valid")).class;
            for l in 1..=MAX_L {
                let c = class_of(l);
                let s = &row[l as usize];
                if l > 2 && c.is_good() {
                    o.check(s.odd.is_some() != s.even.is_some(), || {
                        format!("({a},{b}) ℓ={l}: both parities divide")
                    });
                }
                if c.is_good() {
                    for j in (1..=l).filter(|j| l % j == 0) {
                        let cj = class_of(j);
                        let ok = cj.is_good()
                            && (!c.is_oddly_good() || cj.is_oddly_good())
                            && (!c.is_evenly_good() || cj.is_evenly_good());
                        o.check(ok, || format!("({a},{b}) ℓ={l} {c:?}: divisor {j} is {cj:?}"));
                    }
                }
            }
            let ab_odd = (a * b) % 2 != 0;
            for d in (3..=MAX_L / 2).step_by(2) {
                if !ab_odd || gcd((a * b).unsigned_abs(), d) != 1 {
                    continue;
                }
                let (cd, c2d) = (class_of(d), class_of(2 * d));
                o.check(cd.is_good() == c2d.is_good(), || {
                    format!("({a},{b}) d={d}: {cd:?} but 2d {c2d:?}")
                });
                if cd.is_good() {
                    let (od, o2d) = (row[d as usize].ratio_order, row[2 * d as usize].ratio_order);
                    o.check(od == o2d && od.is_some_and(|x| x % 2 == 0), || {
                        format!("({a},{b}) d={d}: ord {od:?} vs ord(2d) {o2d:?}")
                    });
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge)
}

// ---------------------------------------------------------------------------
// group oracles: explicit coordinate tuples

struct Elements {
    factors: Vec<u64>,
    all: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
}

impl Elements {
    fn new(g: &AbelianGroup) -> Self {
        let factors = g.factors().to_vec();
        let mut all = vec![vec![]];
        for &n in &factors {
            all = all
                .into_iter()
                .flat_map(|x| {
                    (0..n).map(move |c| {
                        let mut y = x.clone();
                        y.push(c);
                        y
                    })
                })
                .collect();
        }
        let index = all.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Elements { factors, all, index }
    }

    fn scale(&self, x: &[u64], t: i64) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&c, &n)| ((c as i128 * t as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }

    fn order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&c, &n)| lcm(acc, n / gcd(c, n)))
    }

    /// Orbit of `x` under multiplication by `t`.
    fn orbit(&self, x: &[u64], t: u64) -> Vec<Vec<u64>> {
        let mut out = vec![x.to_vec()];
        let mut y = self.scale(x, t as i64);
        while y != x {
            out.push(y.clone());
            y = self.scale(&y, t as i64);
        }
        out
    }

    /// Orbits under `t`, each tagged with the orbit of its partner `partner · x`.
    fn classes(&self, t: u64, partner: i64) -> Vec<(u64, usize)> {
        let mut owner = vec![usize::MAX; self.all.len()];
        let mut reps = Vec::new();
        for (i, x) in self.all.iter().enumerate() {
            if owner[i] != usize::MAX {
                continue;
            }
            let orbit = self.orbit(x, t);
            for y in &orbit {
                owner[self.index[y]] = reps.len();
            }
            reps.push((x.clone(), orbit.len() as u64));
        }
        reps.iter()
            .map(|(x, size)| (*size, owner[self.index[&self.scale(x, partner)]]))
            .collect()
    }

    fn q_set(&self, q: u64) -> u64 {
        self.all
            .iter()
            .filter(|x| self.orbit(x, q).contains(&self.scale(x, -1)))
            .count() as u64
    }

    fn r_set(&self, q: u64) -> u64 {
        self.all
            .iter()
            .filter(|x| self.orbit(x, q * q).contains(&self.scale(x, -(q as i64))))
            .count() as u64
    }
}

fn criterion_3(groups: &[AbelianGroup]) -> Outcome {
    groups
        .par_iter()
        .map(|g| {
            let mut o = Outcome::default();
            let el = Elements::new(g);
            for q in QS {
                if gcd(g.order(), q) != 1 {
                    continue;
                }
                let want_q = el.q_set(q);
                let got_q = [
                    g.q_set_direct(q).unwrap(),
                    counting::q_size_sum(g, q).unwrap(),
                    counting::q_size_closed(g, q).unwrap(),
                ];
                o.check(got_q.iter().all(|&x| x == want_q), || {
                    format!("[{g}] q={q}: |Q| direct/sum/closed {got_q:?}, oracle {want_q}")
                });
                let want_r = el.r_set(q);
                let got_r = [
                    g.r_set_direct(q).unwrap(),
                    counting::r_size_sum(g, q).unwrap(),
                    counting::r_size_closed(g, q).unwrap(),
                ];
                o.check(got_r.iter().all(|&x| x == want_r), || {
                    format!("[{g}] q={q}: |R| direct/sum/closed {got_r:?}, oracle {want_r}")
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// Expected hull dimension when each class dimension is uniform on `0..=n`,
/// by enumerating every outcome of every class (and pair of classes).
fn average_oracle(el: &Elements, q: u64, n: u64, ip: InnerProduct) -> Rational {
    let (t, partner) = match ip {
        InnerProduct::Euclidean => (q, -1),
        InnerProduct::Hermitian => (q * q, -(q as i64)),
    };
    let classes = el.classes(t, partner);
    let side = n as i128 + 1;
    let mut total = Rational::from_integer(0);
    for (i, &(size, j)) in classes.iter().enumerate() {
        let s = size as i128;
        if j == i {
            let sum: u64 = (0..=n).map(|e| e.min(n - e)).sum();
            total += Rational::new(s * sum as i128, side);
        } else if i < j {
            let mut sum = 0u64;
            for e in 0..=n {
                for f in 0..=n {
                    sum += e.min(n - f) + f.min(n - e);
                }
            }
            total += Rational::new(s * sum as i128, side * side);
        }
    }
    total
}

struct HullCell {
    group: AbelianGroup,
    p: u64,
    nu: u32,
    k: u32,
    ip: InnerProduct,
    oracle: Rational,
}

fn hull_cells(groups: &[AbelianGroup]) -> Vec<HullCell> {
    groups
        .par_iter()
        .flat_map_iter(|g| {
            let el = Elements::new(g);
            let mut cells = Vec::new();
            for (p, nu) in HULL_PARAMS {
                if g.order() % p == 0 {
                    continue;
                }
                for k in [0, 1] {
                    for ip in INNER {
                        let oracle = average_oracle(&el, p.pow(nu), p.pow(k), ip);
                        cells.push(HullCell { group: g.clone(), p, nu, k, ip, oracle });
                    }
                }
            }
            cells
        })
        .collect()
}

fn criterion_4(cells: &[HullCell]) -> Outcome {
    let mut o = Outcome::default();
    for c in cells {
        let closed = avg_hull(&c.group, c.p, c.nu, c.k, c.ip).unwrap().average;
        let brute = avg_hull_bruteforce(&c.group, c.p, c.nu, c.k, c.ip).unwrap();
        o.check(closed == c.oracle && brute == c.oracle, || {
            format!(
                "[{}] p={} nu={} k={} {:?}: closed {closed}, library brute {brute}, oracle {}",
                c.group, c.p, c.nu, c.k, c.ip, c.oracle
            )
        });
    }
    let z3 = AbelianGroup::cyclic(3).unwrap();
    let z5 = AbelianGroup::cyclic(5).unwrap();
    let anchor_e = avg_hull(&z3, 2, 1, 1, InnerProduct::Euclidean).unwrap().average;
    o.check(anchor_e == Rational::from_integer(1), || format!("avg^E(Z_3, p=2, k=1) = {anchor_e}"));
    let anchor_h = avg_hull(&z5, 2, 1, 0, InnerProduct::Hermitian).unwrap().average;
    o.check(anchor_h == Rational::from_integer(1), || format!("avg^H(Z_5, q=4, k=0) = {anchor_h}"));
    o
}

/// Bounds on the criterion-4 sweep. `zero_target` picks the integer whose
/// goodness is expected to characterize a vanishing average.
fn criterion_5(cells: &[HullCell], zero_target: fn(&AbelianGroup) -> u64) -> Outcome {
    let mut o = Outcome::default();
    for c in cells {
        let m = c.group.order() as i128;
        let mpk = Rational::from_integer(m * c.p.pow(c.k) as i128);
        let avg = c.oracle;
        let tag = || format!("[{}] p={} nu={} k={} {:?}", c.group, c.p, c.nu, c.k, c.ip);
        o.check(avg < mpk / 3, || format!("{}: {avg} not below m p^k/3", tag()));
        let target = zero_target(&c.group);
        let verdict = classify(&GoodnessQuery::new(c.p.pow(c.nu) as i64, 1, target).unwrap()).class;
        let admissible = match c.ip {
            InnerProduct::Euclidean => verdict.is_good(),
            InnerProduct::Hermitian => verdict.is_oddly_good(),
        };
        let predicted_zero = c.k == 0 && admissible;
        o.check((avg == Rational::from_integer(0)) == predicted_zero, || {
            format!("{}: average {avg}, predicted zero {predicted_zero} ({target} is {verdict:?})", tag())
        });
        if avg != Rational::from_integer(0) {
            let floor = match c.ip {
                InnerProduct::Euclidean => mpk / 12,
                InnerProduct::Hermitian => mpk / 8,
            };
            o.check(avg >= floor, || format!("{}: {avg} below {floor}", tag()));
        }
    }
    o
}

/// All coarsenings of `parts`: multisets of block sums over every set partition.
fn coarsenings(parts: &[u32]) -> BTreeSet<Vec<u32>> {
    fn go(parts: &[u32], i: usize, blocks: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        if i == parts.len() {
            let mut b = blocks.clone();
            b.sort_unstable_by(|x, y| y.cmp(x));
            out.insert(b);
            return;
        }
        for j in 0..blocks.len() {
            blocks[j] += parts[i];
            go(parts, i + 1, blocks, out);
            blocks[j] -= parts[i];
        }
        blocks.push(parts[i]);
        go(parts, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = BTreeSet::new();
    go(parts, 0, &mut Vec::new(), &mut out);
    out
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::default();
    for w in 0..=8u32 {
        let shapes = integer_partitions(w);
        let rel: Vec<Vec<bool>> = shapes
            .iter()
            .map(|a| {
                let coarse = coarsenings(a);
                shapes
                    .iter()
                    .map(|b| {
                        let got = PartitionShape::new(a.clone())
                            .is_finer(&PartitionShape::new(b.clone()))
                            .unwrap();
                        let want = coarse.contains(b);
                        o.check(got == want, || format!("is_finer({a:?}, {b:?}) = {got}, oracle {want}"));
                        want
                    })
                    .collect()
            })
            .collect();
        let n = shapes.len();
        for i in 0..n {
            o.check(rel[i][i], || format!("{:?} not finer than itself", shapes[i]));
            for j in 0..n {
                if i != j {
                    o.check(!(rel[i][j] && rel[j][i]), || format!("{:?} ~ {:?}", shapes[i], shapes[j]));
                }
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        o.check(rel[i][k], || {
                            format!("{:?} ⪯ {:?} ⪯ {:?} not transitive", shapes[i], shapes[j], shapes[k])
                        });
                    }
                }
            }
        }
    }

    let mut jobs = Vec::new();
    for beta in 0..=6u32 {
        for odd in [1u64, 3, 5, 15] {
            for q in QS {
                if gcd(odd << beta, q) == 1 {
                    jobs.push((beta, odd, q));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|&(beta, odd, q)| {
            let mut o = Outcome::default();
            let sizes: BTreeMap<Vec<u32>, (u64, u64)> = integer_partitions(beta)
                .into_iter()
                .map(|shape| {
                    let mut orders: Vec<u64> = shape.iter().map(|&e| 1u64 << e).collect();
                    orders.push(odd);
                    let g = AbelianGroup::from_cyclic_orders(&orders).unwrap();
                    let el = Elements::new(&g);
                    let (qs, rs) = (el.q_set(q), el.r_set(q));
                    let lib = (counting::q_size_closed(&g, q).unwrap(), counting::r_size_closed(&g, q).unwrap());
                    o.check(lib == (qs, rs), || format!("[{g}] q={q}: closed {lib:?}, oracle {:?}", (qs, rs)));
                    (shape, (qs, rs))
                })
                .collect();
            for (fine, &(qf, rf)) in &sizes {
                let coarse = coarsenings(fine);
                for (c, &(qc, rc)) in sizes.iter().filter(|(c, _)| coarse.contains(*c)) {
                    o.check(qf >= qc && rf >= rc, || {
                        format!("odd={odd} q={q}: {fine:?} ⪯ {c:?} but (Q,R) ({qf},{rf}) < ({qc},{rc})")
                    });
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge)
        .merge(o)
}

fn criterion_7(groups: &[AbelianGroup]) -> Outcome {
    groups
        .par_iter()
        .map(|g| {
            let mut o = Outcome::default();
            let el = Elements::new(g);
            let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
            for x in &el.all {
                *tally.entry(el.order(x)).or_default() += 1;
            }
            let m = g.order();
            for d in 1..=m {
                let got = g.count_order(d).unwrap();
                let want = tally.get(&d).copied().unwrap_or(0);
                o.check(got == want, || format!("[{g}] N({d}) = {got}, enumeration {want}"));
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge)
}

fn report(id: &str, title: &str, started: Instant, o: &Outcome) -> bool {
    let ok = o.failures.is_empty();
    println!(
        "criterion {id} [{}] {title}: {} checks, {} failures ({:.1?})",
        if ok { "PASS" } else { "FAIL" },
        o.checked,
        o.failures.len(),
        started.elapsed()
    );
    for f in o.failures.iter().take(5) {
        println!("    {f}");
    }
    if o.failures.len() > 5 {
        println!("    ... {} more", o.failures.len() - 5);
    }
    ok
}

fn main() -> ExitCode {
    let mut all_ok = true;

    let t = Instant::now();
    let scans = scan_table();
    all_ok &= report("1", "goodness classification matches direct scan, l <= 5000", t, &criterion_1(&scans));
    let t = Instant::now();
    all_ok &= report("2", "disjointness, divisor closure, doubling", t, &criterion_2(&scans));

    let t = Instant::now();
    let groups_200 = groups_up_to(200);
    all_ok &= report("3", "|Q| and |R|: direct, divisor sum, closed form, oracle", t, &criterion_3(&groups_200));

    let t = Instant::now();
    let cells = hull_cells(&groups_up_to(60));
    all_ok &= report("4", "average hull dimension equals enumeration", t, &criterion_4(&cells));

    let t = Instant::now();
    let literal = criterion_5(&cells, AbelianGroup::order);
    all_ok &= report("5", "bounds, zero iff k = 0 and m good", t, &literal);
    let t = Instant::now();
    report("5*", "bounds, zero iff k = 0 and exponent good (informational)", t, &criterion_5(&cells, AbelianGroup::exponent));

    let t = Instant::now();
    all_ok &= report("6", "finer Sylow-2 type gives larger fixed sets; is_finer partial order", t, &criterion_6());

    let t = Instant::now();
    all_ok &= report("7", "element-order counts match enumeration, m <= 200", t, &criterion_7(&groups_200));

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
