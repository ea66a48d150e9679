use std::io;

use goodint::arith;
use goodint::counting;
use goodint::goodness::{self, GoodnessClass, GoodnessQuery};
use goodint::hull::{rational_decimal, rational_string};
use goodint::verify::{self, FamilyReport, Suite};
use goodint::{AbelianGroup, InnerProduct, Rational};
use serde::Serialize;

use crate::envelope::{Envelope, Failure};
use crate::{ClassifyArgs, FixedsetArgs, Format, GroupArgs, HullavgArgs, Method, SuiteArg, VerifyArgs};

const CSV_HEADER: [&str; 5] = ["l", "class", "witness", "ord", "v2ord"];

#[derive(Debug, Serialize)]
struct ClassifyRow {
    l: u64,
    class: GoodnessClass,
    /// Least `k` of either parity.
    witness: Option<u64>,
    witness_odd: Option<u64>,
    witness_even: Option<u64>,
    ord: Option<u64>,
    v2ord: Option<u32>,
}

impl ClassifyRow {
    fn new(q: &GoodnessQuery) -> Result<Self, Failure> {
        let v = goodness::classify(q);
        let witness = match (v.witness_odd, v.witness_even) {
            (Some(o), Some(e)) => Some(o.min(e)),
            (o, e) => o.or(e),
        };
        Ok(ClassifyRow {
            l: q.l(),
            class: v.class,
            witness,
            witness_odd: v.witness_odd,
            witness_even: v.witness_even,
            ord: v.order_ratio,
            v2ord: v.order_ratio.map(arith::v2).transpose()?,
        })
    }

    fn csv_record(&self) -> [String; 5] {
        let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.l.to_string(),
            self.class.as_str().to_owned(),
            opt(self.witness),
            opt(self.ord),
            opt(self.v2ord.map(u64::from)),
        ]
    }
}

pub fn classify(args: &ClassifyArgs) -> Result<(), Failure> {
    let (from, to) = match (args.l, args.from, args.to) {
        (Some(l), _, _) => (l, l),
        (None, Some(from), Some(to)) => (from, to),
        _ => return Err(Failure::Usage("give --l or both --from and --to".into())),
    };
    if from > to {
        return Err(Failure::Usage(format!("empty range: --from {from} exceeds --to {to}")));
    }
    let first = GoodnessQuery::new(args.a, args.b, from)?;

    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(CSV_HEADER)?;
            for l in from..=to {
                w.write_record(ClassifyRow::new(&first.with_l(l)?)?.csv_record())?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Json => {
            let rows = (from..=to)
                .map(|l| ClassifyRow::new(&first.with_l(l)?))
                .collect::<Result<Vec<_>, _>>()?;
            if args.l.is_some() {
                let row = rows.into_iter().next().expect("one modulus");
                Envelope::new("classify", args, row).print()
            } else {
                Envelope::new("classify", args, rows).print()
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct OrderCount {
    d: u64,
    count: u64,
}

#[derive(Debug, Serialize)]
struct GroupReport {
    group: String,
    factors: Vec<u64>,
    order: u64,
    exponent: u64,
    order_counts: Vec<OrderCount>,
}

pub fn group(args: &GroupArgs) -> Result<(), Failure> {
    let g: AbelianGroup = args.factors.parse()?;
    let order_counts = g
        .order_counts()?
        .into_iter()
        .map(|(d, count)| OrderCount { d, count })
        .collect();
    let report = GroupReport {
        group: g.to_string(),
        factors: g.factors().to_vec(),
        order: g.order(),
        exponent: g.exponent(),
        order_counts,
    };
    Envelope::new("group", args, report).print()
}

#[derive(Debug, Serialize)]
struct FixedsetReport {
    /// `Q` (Euclidean) or `R` (Hermitian).
    set: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<u64>,
    size: u64,
    agree: bool,
}

pub fn fixedset(args: &FixedsetArgs) -> Result<(), Failure> {
    let g: AbelianGroup = args.group.parse()?;
    let ip = InnerProduct::from(args.inner);
    let q = args.q;
    let wants = |m: Method| args.method == m || args.method == Method::All;

    let direct = wants(Method::Direct)
        .then(|| match ip {
            InnerProduct::Euclidean => g.q_set_direct(q),
            InnerProduct::Hermitian => g.r_set_direct(q),
        })
        .transpose()?;
    let sum = wants(Method::Sum)
        .then(|| match ip {
            InnerProduct::Euclidean => counting::q_size_sum(&g, q),
            InnerProduct::Hermitian => counting::r_size_sum(&g, q),
        })
        .transpose()?;
    let closed = wants(Method::Closed)
        .then(|| counting::fixed_set_closed(&g, q, ip))
        .transpose()?;

    let values: Vec<u64> = [direct, sum, closed].into_iter().flatten().collect();
    let size = values[0];
    let agree = values.iter().all(|&v| v == size);
    let set = match ip {
        InnerProduct::Euclidean => "Q",
        InnerProduct::Hermitian => "R",
    };
    let report = FixedsetReport { set, direct, sum, closed, size, agree };
    Envelope::new("fixedset", args, report).print()?;
    if agree {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "|{set}| for [{g}], q={q}: direct {direct:?}, sum {sum:?}, closed {closed:?}"
        )))
    }
}

#[derive(Debug, Serialize)]
struct HullReport {
    average: String,
    average_decimal: String,
    upper_bound: String,
    upper_bound_decimal: String,
    lower_bound: String,
    lower_bound_decimal: String,
    is_zero: bool,
    m: u64,
    pk: u64,
    fixed_set_size: u64,
    delta_p: u8,
    inner_product: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

pub fn hullavg(args: &HullavgArgs) -> Result<(), Failure> {
    let g: AbelianGroup = args.group.parse()?;
    let ip = InnerProduct::from(args.inner);
    let s = goodint::avg_hull(&g, args.p, args.nu, args.k, ip)?;
    let enumerated: Option<Rational> = args
        .verify
        .then(|| goodint::avg_hull_bruteforce(&g, args.p, args.nu, args.k, ip))
        .transpose()?;
    let verified = enumerated.map(|e| e == s.average);
    let report = HullReport {
        average: rational_string(&s.average),
        average_decimal: rational_decimal(&s.average),
        upper_bound: rational_string(&s.upper_bound),
        upper_bound_decimal: rational_decimal(&s.upper_bound),
        lower_bound: rational_string(&s.lower_bound),
        lower_bound_decimal: rational_decimal(&s.lower_bound),
        is_zero: s.is_zero,
        m: s.m,
        pk: s.pk,
        fixed_set_size: s.fixed_set_size,
        delta_p: s.delta_p,
        inner_product: ip.short(),
        enumerated: enumerated.as_ref().map(rational_string),
        verified,
    };
    Envelope::new("hullavg", args, report).print()?;
    match (verified, enumerated) {
        (Some(false), Some(e)) => Err(Failure::Mismatch(format!(
            "closed form {} but enumeration {}",
            rational_string(&s.average),
            rational_string(&e)
        ))),
        _ => Ok(()),
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    suite: Suite,
    passed: bool,
    families: Vec<FamilyReport>,
}

pub fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suite = match args.suite {
        SuiteArg::Small => Suite::Small,
        SuiteArg::Full => Suite::Full,
    };
    let families = verify::run_suite(suite);
    let passed = families.iter().all(FamilyReport::passed);
    let failed: Vec<&str> = families.iter().filter(|f| !f.passed()).map(|f| f.name).collect();
    Envelope::new("verify", args, VerifyReport { suite, passed, families }).print()?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("failing families: {}", failed.join(", "))))
    }
}
