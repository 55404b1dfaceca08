//! Every checked identity under a stable id, and the runner that checks them.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::cert::{self, Certificate};
use crate::error::{Error, Result};
use crate::kr::{self, HSeries, JFamily, ProductSide, Reduction};
use crate::oracle::oracle_with_prefactor;
use crate::qfactor::Classical;
use crate::recur::{self, FunctionalEquation, HFamily, ReducedRecurrence, CATALOG_PARAMETERS};
use crate::report::{compare, Mismatch, Status, VerificationReport};
use crate::series::LaurentSeries;

/// Environment variable that replaces every default order.
pub const ORDER_ENV: &str = "QRV_DEFAULT_ORDER";

pub const DEFAULT_ORDER: i64 = 200;
pub const CLASSICAL_ORDER: i64 = 100;
pub const INSTANCE_ORDER: i64 = 150;
pub const FE_ORDER: i64 = 150;
pub const RECUR_ORDER: i64 = recur::DEFAULT_QPREC;
pub const WZ_ORDER: i64 = cert::DEFAULT_QPREC;

type Check = Arc<dyn Fn(i64) -> Result<Option<Mismatch>> + Send + Sync>;
type Side = Arc<dyn Fn(i64) -> Result<LaurentSeries> + Send + Sync>;

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub status: Status,
    pub default_order: i64,
    pub description: String,
    check: Check,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("status", &self.status)
            .field("default_order", &self.default_order)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    fn new(
        id: impl Into<String>,
        status: Status,
        default_order: i64,
        description: impl Into<String>,
        check: impl Fn(i64) -> Result<Option<Mismatch>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            status,
            default_order,
            description: description.into(),
            check: Arc::new(check),
        }
    }

    /// Two series that must agree below the order.
    fn pair(
        id: impl Into<String>,
        status: Status,
        default_order: i64,
        description: impl Into<String>,
        lhs: impl Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static,
        rhs: impl Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static,
    ) -> Self {
        let (lhs, rhs): (Side, Side) = (Arc::new(lhs), Arc::new(rhs));
        Self::new(id, status, default_order, description, move |order| {
            let (l, r) = rayon::join(|| lhs(order), || rhs(order));
            compare(&l?, &r?, order)
        })
    }

    /// The order used when none is given: the environment override, else
    /// the record's own default.
    pub fn effective_order(&self) -> i64 {
        env_order().unwrap_or(self.default_order)
    }

    pub fn check(&self, order: i64) -> Result<Option<Mismatch>> {
        if order < 1 {
            return Err(Error::BadParameter(format!("order must be >= 1, got {order}")));
        }
        (self.check)(order)
    }

    pub fn run(&self, order: Option<i64>) -> Result<VerificationReport> {
        let order = order.unwrap_or_else(|| self.effective_order());
        let t = Instant::now();
        let mismatch = self.check(order)?;
        Ok(VerificationReport::new(
            self.id.clone(),
            self.status,
            order,
            mismatch,
            t.elapsed().as_millis() as u64,
        ))
    }
}

fn env_order() -> Option<i64> {
    std::env::var(ORDER_ENV).ok()?.trim().parse().ok().filter(|&n| n >= 1)
}

fn h_at_one(ell: u8) -> impl Fn(i64) -> Result<LaurentSeries> + Send + Sync {
    move |p| HSeries::new(ell)?.at_one(p)
}

fn product(side: ProductSide) -> impl Fn(i64) -> Result<LaurentSeries> + Send + Sync {
    move |p| side.eval(p)
}

const PROVED: [u8; 7] = [1, 2, 3, 6, 7, 10, 11];

fn product_records(out: &mut Vec<IdentityRecord>) {
    for ell in 1..=11u8 {
        let status = if PROVED.contains(&ell) {
            Status::Proved
        } else {
            Status::Conjectural
        };
        out.push(IdentityRecord::pair(
            format!("C:H{ell}"),
            status,
            DEFAULT_ORDER,
            format!("H{ell}(1) as a triple sum equals its product"),
            h_at_one(ell),
            product(kr::kr_product(ell).expect("catalog product")),
        ));
    }
    for (ell, side, status) in [
        (1u8, kr::kr_product(1).expect("catalog"), Status::Proved),
        (2, kr::h2_mod12_product(), Status::ConjecturalExternal),
        (3, kr::kr_product(3).expect("catalog"), Status::ConjecturalExternal),
    ] {
        out.push(IdentityRecord::pair(
            format!("BOS:H{ell}"),
            status,
            DEFAULT_ORDER,
            format!("H{ell}(1) equals the modulus-12 character product"),
            h_at_one(ell),
            product(side),
        ));
    }
}

fn reduction_records(out: &mut Vec<IdentityRecord>) {
    for r in Reduction::ALL {
        let ell = r.ell();
        out.push(IdentityRecord::pair(
            format!("T:H{ell}"),
            Status::Proved,
            DEFAULT_ORDER,
            format!("H{ell}(1) as a triple sum equals its single-sum form"),
            move |p| kr::thm2_rhs(r, p),
            h_at_one(ell),
        ));
    }
}

fn side_records(out: &mut Vec<IdentityRecord>) {
    out.push(IdentityRecord::pair(
        "EqH1Final",
        Status::Proved,
        DEFAULT_ORDER,
        "single sum for H1(1) equals its product",
        kr::h1_final_lhs,
        product(kr::h1_final_product()),
    ));
    out.push(IdentityRecord::pair(
        "MS1.12",
        Status::Proved,
        DEFAULT_ORDER,
        "single sum with (-q^6;q^6)/(-q^2;q^2) equals its product",
        kr::ms_112_lhs,
        product(kr::ms_112_product()),
    ));
    out.push(IdentityRecord::pair(
        "MS1.30",
        Status::Proved,
        DEFAULT_ORDER,
        "single sum used for H3(1) equals its product",
        kr::ms_130_lhs,
        product(kr::ms_130_product()),
    ));
    out.push(IdentityRecord::pair(
        "MS1.30:alt",
        Status::Proved,
        DEFAULT_ORDER,
        "second single-sum form of the same product",
        kr::ms_130_alt_lhs,
        product(kr::ms_130_product()),
    ));
    out.push(IdentityRecord::pair(
        "REMARK-P1:b=1",
        Status::Proved,
        INSTANCE_ORDER,
        "a = 0, b = 1 solution (multiplied through) equals the closed product",
        |p| kr::prop1_rhs(0, 1, p),
        product(kr::prop1_closed_product(1)),
    ));
    out.push(IdentityRecord::pair(
        "REMARK-P1:b=3",
        Status::Proved,
        INSTANCE_ORDER,
        "a = 0, b = 3 single sum equals the closed product",
        |p| kr::remark_lhs(3, p),
        product(kr::remark_product(3)),
    ));
    out.push(IdentityRecord::pair(
        "PROP1-CLOSED:b=3",
        Status::Proved,
        INSTANCE_ORDER,
        "a = 0, b = 3 solution equals the closed product",
        |p| kr::prop1_rhs(0, 3, p),
        product(kr::prop1_closed_product(3)),
    ));
}

/// `(a, b)` for each use of the shifts-2-4-6 solution, with the series it
/// evaluates.
pub const PROP1_INSTANCES: [(i64, i64, &str); 8] = [
    (2, 3, "H3(1)"),
    (-1, 3, "H4(1)"),
    (3, 1, "H5(q^2)"),
    (3, -1, "J5(1)"),
    (0, 1, "H6(1)"),
    (0, 3, "H7(1)"),
    (1, 3, "H9(1)"),
    (1, 1, "J8(1)"),
];

/// `(a, b, c, family)` for each use of the shifts-3-6 solution.
pub const PROP2_INSTANCES: [(i64, i64, i64, JFamily); 4] = [
    (-2, 4, 6, JFamily::J10),
    (2, 6, 8, JFamily::J11),
    (-2, 4, 8, JFamily::J12(0)),
    (4, 8, 10, JFamily::J12(2)),
];

fn prop1_target(name: &'static str, prec: i64) -> Result<LaurentSeries> {
    let cap = |ell: u8| HSeries::Catalog(ell).x_bound(prec, 0);
    match name {
        "H5(q^2)" => HSeries::Catalog(5).at_q_power(2, prec),
        "J5(1)" => Ok(kr::j5(cap(5), prec)?.eval_x1()),
        "J8(1)" => Ok(kr::j8(cap(8), prec)?.eval_x1()),
        _ => {
            let ell = name[1..name.len() - 3].parse().expect("H<l>(1)");
            HSeries::new(ell)?.at_one(prec)
        }
    }
}

fn instance_records(out: &mut Vec<IdentityRecord>) {
    for (a, b, target) in PROP1_INSTANCES {
        out.push(IdentityRecord::pair(
            format!("PROP1:a={a},b={b}"),
            Status::Proved,
            INSTANCE_ORDER,
            format!("shifts-2-4-6 solution at x = 1 reproduces {target}"),
            move |p| kr::prop1_rhs(a, b, p),
            move |p| prop1_target(target, p),
        ));
    }
    for (a, b, c, family) in PROP2_INSTANCES {
        out.push(IdentityRecord::new(
            format!("PROP2:a={a},b={b},c={c}"),
            Status::Proved,
            INSTANCE_ORDER,
            format!("shifts-3-6 solution reproduces {}(x) and its value at x = 1", family.label()),
            move |order| {
                let xcap = 12;
                let lhs = kr::prop2_rhs(a, b, c, 1, 0, xcap, order)?;
                let rhs = family.series(xcap, order)?;
                if let Some((n, (exp, l, r))) = lhs.first_mismatch(&rhs) {
                    return Ok(Some(Mismatch {
                        exp,
                        lhs: l.to_string(),
                        rhs: r.to_string(),
                        at: Some(format!("x^{n}")),
                    }));
                }
                let at1 = kr::prop2_at_one(a, b, c, 1, 0, order)?;
                Ok(compare(&at1, &family.at_one(order)?, order)?.map(|m| m.with_context("x=1")))
            },
        ));
    }
    for (ell, family) in [(10u8, JFamily::J10), (11, JFamily::J11)] {
        out.push(IdentityRecord::pair(
            format!("H{ell}:{}", family.label()),
            Status::Proved,
            DEFAULT_ORDER,
            format!("H{ell}(1) = (-q^p;q)_inf {}(1)", family.label()),
            move |p| kr::j_with_prefactor(family, p),
            h_at_one(ell),
        ));
    }
    out.push(IdentityRecord::pair(
        "H10:KUMMER",
        Status::Proved,
        DEFAULT_ORDER,
        "2phi1 form of H10(1) equals the q-Kummer product",
        kr::h10_kummer_lhs,
        product(kr::h10_kummer_product()),
    ));
    out.push(IdentityRecord::pair(
        "H11:KUMMER",
        Status::Proved,
        DEFAULT_ORDER,
        "2phi1 form of H11(1) equals the q-Kummer product",
        kr::h11_kummer_lhs,
        product(kr::h11_kummer_product()),
    ));
    out.push(IdentityRecord::pair(
        "SEC5",
        Status::Conjectural,
        DEFAULT_ORDER,
        "weighted triple sum equals 1/((q^2;q^3)(q,q^6,q^9;q^12))",
        kr::sec5_lhs,
        product(kr::sec5_product()),
    ));
    out.push(IdentityRecord::pair(
        "SEC5:ROUTES",
        Status::InternalCrosscheck,
        DEFAULT_ORDER,
        "weighted triple sum equals its J12 decomposition",
        kr::sec5_lhs,
        kr::sec5_via_j,
    ));
    out.push(IdentityRecord::pair(
        "SEC6",
        Status::Conjectural,
        DEFAULT_ORDER,
        "triple sum with linear form i-3j-3k equals q^-1(1+q+q^2) times the H9 product",
        kr::sec6_at_one,
        product(kr::sec6_product()),
    ));
}

/// Every product side, paired with the id used for its oracle check.
pub fn product_sides() -> Vec<(String, ProductSide)> {
    let mut out: Vec<(String, ProductSide)> = (1..=11u8)
        .map(|l| (format!("C:H{l}"), kr::kr_product(l).expect("catalog")))
        .collect();
    out.extend([
        ("BOS:H2".to_string(), kr::h2_mod12_product()),
        ("EqH1Final".into(), kr::h1_final_product()),
        ("MS1.12".into(), kr::ms_112_product()),
        ("MS1.30".into(), kr::ms_130_product()),
        ("PROP1-CLOSED:b=1".into(), kr::prop1_closed_product(1)),
        ("PROP1-CLOSED:b=3".into(), kr::prop1_closed_product(3)),
        ("REMARK-P1:b=3".into(), kr::remark_product(3)),
        ("H10:KUMMER".into(), kr::h10_kummer_product()),
        ("H11:KUMMER".into(), kr::h11_kummer_product()),
        ("SEC5".into(), kr::sec5_product()),
        ("SEC6".into(), kr::sec6_product()),
    ]);
    out
}

fn oracle_records(out: &mut Vec<IdentityRecord>) {
    for (id, side) in product_sides() {
        let classes = side.classes().expect("catalog products have positive residues");
        out.push(IdentityRecord::pair(
            format!("ORACLE:{id}"),
            Status::InternalCrosscheck,
            DEFAULT_ORDER,
            format!("product side of {id} against direct partition counting"),
            product(side.clone()),
            move |p| oracle_with_prefactor(side.prefactor_terms(), &classes, p),
        ));
    }
}

fn fe_records(out: &mut Vec<IdentityRecord>) {
    for fe in FunctionalEquation::catalog() {
        let xcap = if matches!(fe.target, recur::FeTarget::J(_)) { 10 } else { 12 };
        out.push(IdentityRecord::new(
            format!("FE:{}", fe.label()),
            Status::Proved,
            FE_ORDER,
            format!("q-difference equation for {} up to x^{xcap}", fe.label()),
            move |order| fe.check(xcap, order),
        ));
    }
}

fn recur_records(out: &mut Vec<IdentityRecord>) {
    let n = recur::DEFAULT_N_MAX;
    for (family, two_c, d) in CATALOG_PARAMETERS {
        let at = format!("2c={two_c},d={d}");
        out.push(IdentityRecord::new(
            format!("RECUR:{}:{at}", family.name()),
            Status::Proved,
            RECUR_ORDER,
            format!("three-term recurrence for h_(c,d,N), N <= {n}"),
            move |q| recur::check_h_recurrence(family, two_c, d, n, q),
        ));
        out.push(IdentityRecord::new(
            format!("RECUR:LONG:{at}"),
            Status::Proved,
            RECUR_ORDER,
            format!("four-term recurrence for h_(c,d,N), N <= {n}"),
            move |q| recur::check_h_recurrence(HFamily::Long, two_c, d, n, q),
        ));
        out.push(IdentityRecord::new(
            format!("RECUR:SHIFT:{at}"),
            Status::Proved,
            RECUR_ORDER,
            format!("iterating the {} recurrence gives the four-term one", family.name()),
            move |q| recur::check_shift_closure(two_c, d, family, n, q),
        ));
        out.push(IdentityRecord::new(
            format!("RECUR:UNIQ:{at}"),
            Status::InternalCrosscheck,
            RECUR_ORDER,
            "the recurrence and initial values alone rebuild h_(c,d,N)",
            move |q| recur::check_uniqueness(family, two_c, d, n, q),
        ));
    }
    let mut basic: Vec<(i64, i64)> = CATALOG_PARAMETERS.iter().map(|&(_, c, d)| (c, d)).collect();
    basic.push((-4, -2));
    for (two_c, d) in basic {
        out.push(IdentityRecord::new(
            format!("RECUR:BASIC:2c={two_c},d={d}"),
            Status::Proved,
            RECUR_ORDER,
            "the three first-order relations between neighbouring h_(c,d,N)",
            move |q| recur::check_basic_relations(two_c, d, n, q),
        ));
    }
    for r in ReducedRecurrence::ALL {
        out.push(IdentityRecord::new(
            format!("RECUR:RED:{}", r.label()),
            Status::Proved,
            RECUR_ORDER,
            format!("coefficient recurrence {} on the direct sums", r.label()),
            move |q| recur::check_reduced(r, n, q),
        ));
    }
}

fn wz_records(out: &mut Vec<IdentityRecord>) {
    let (km, mm) = (cert::DEFAULT_K_MAX, cert::DEFAULT_M_MAX);
    for c in Certificate::ALL {
        let label = c.family().label();
        out.push(IdentityRecord::new(
            format!("WZ:{label}:telescoping"),
            Status::Proved,
            WZ_ORDER,
            format!("telescoping certificate for {label}, k, M <= {km}"),
            move |q| cert::check_telescoping(&c, km, mm, q),
        ));
        out.push(IdentityRecord::new(
            format!("WZ:{label}:summed"),
            Status::Proved,
            WZ_ORDER,
            format!("k-sums of the certificate terms for {label}"),
            move |q| cert::check_summed_recurrence(&c, mm, q),
        ));
        out.push(IdentityRecord::new(
            format!("WZ:{label}:regularised"),
            Status::InternalCrosscheck,
            WZ_ORDER,
            "pole-free certificate equals the literal one for k <= M",
            move |q| cert::check_regularisation(&c, mm, q),
        ));
        out.push(IdentityRecord::new(
            format!("WZ:{label}:tail"),
            Status::Proved,
            WZ_ORDER,
            "certificate valuations grow in k and vanish",
            move |q| {
                for m in 0..=mm {
                    if let Some(x) = cert::check_vanishing_tail(&c, m, m + 1..=m + 20, q)? {
                        return Ok(Some(x));
                    }
                }
                cert::check_valuation_growth(&c, mm, 5..=25)
            },
        ));
    }
}

fn classical_records(out: &mut Vec<IdentityRecord>) {
    let grids: Vec<_> = Classical::ALL.par_iter().map(|&c| (c, c.grid())).collect();
    for (c, grid) in grids {
        for (i, p) in grid.into_iter().enumerate() {
            let desc = c
                .parameters()
                .iter()
                .zip(&p)
                .map(|(n, e)| format!("{n}=q^{e}"))
                .collect::<Vec<_>>()
                .join(", ");
            let (pl, pr) = (p.clone(), p);
            out.push(IdentityRecord::pair(
                format!("CLASSICAL:{}:grid{i}", c.name()),
                Status::Classical,
                CLASSICAL_ORDER,
                desc,
                move |q| c.lhs(&pl, q),
                move |q| c.rhs(&pr, q),
            ));
        }
    }
}

/// The whole catalog, in a fixed order.
pub fn catalog() -> &'static [IdentityRecord] {
    static CATALOG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        product_records(&mut out);
        reduction_records(&mut out);
        side_records(&mut out);
        instance_records(&mut out);
        oracle_records(&mut out);
        fe_records(&mut out);
        recur_records(&mut out);
        wz_records(&mut out);
        classical_records(&mut out);
        out
    })
}

pub fn find(id: &str) -> Result<&'static IdentityRecord> {
    catalog()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Checks one identity; `order` defaults to the record's (or the
/// environment's) default.
pub fn run(id: &str, order: Option<i64>) -> Result<VerificationReport> {
    find(id)?.run(order)
}

/// Checks every record whose id starts with `prefix` (all for `""`), in
/// parallel; reports come back in catalog order.
pub fn run_all(prefix: &str, order: Option<i64>) -> Result<Vec<VerificationReport>> {
    catalog()
        .par_iter()
        .filter(|r| r.id.starts_with(prefix))
        .map(|r| r.run(order))
        .collect()
}
