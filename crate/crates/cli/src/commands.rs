use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use motdisc::genfun::{
    distinct_nu_limit, hyper_density, hyper_ordered_density, k_lt_a_nu, kbar_nu, multi_point_density,
    stable_limit, star_power, sym_s_series, zeta_s_series, zeta_series, zinv_lambda,
    HypersurfaceDensity, LimitReport, Normalization,
};
use motdisc::models::{dispatch, ModelKind, Scalar, SpecVisitor, Specialization, Specializer, TargetValue, XModel};
use motdisc::oracle::{
    check_guard, count_hyper_s, count_w_lambda, exp_formula_sym_counts, integer_power_density,
    integer_power_prediction, tabulate_sym_s, Curve, DEFAULT_GUARD, MAX_GUARD,
};
use motdisc::partitions::{GenPartition, IntPartition};
use motdisc::ring::TruncSeries;
use motdisc::verify;
use motdisc::{Error, Result};

use crate::args::{Common, LimitKind, Norm, OracleKind, OracleParams, SeriesKind, Shape};
use crate::report::{Report, Table};

/// Model and specialization after defaults are applied.
struct Resolved {
    model: XModel,
    spec: Specialization,
}

fn resolve(common: &Common, report: &mut Report) -> Result<Resolved> {
    let model: XModel = common.x.parse()?;
    let spec = match &common.spec {
        Some(s) => s.parse()?,
        None => match model.kind() {
            ModelKind::PointCounts { q, .. } => Specialization::Count(*q),
            _ => Specialization::MotivicL,
        },
    };
    report.param("X", &model).param("spec", spec);
    Ok(Resolved { model, spec })
}

fn parse_nu(nu: &Option<String>) -> Result<IntPartition> {
    match nu {
        Some(s) => s.parse(),
        None => Ok(IntPartition::empty()),
    }
}

/// A rational value also gets a decimal rendering.
fn scalar_fields(report: &mut Report, key: &str, v: &Scalar) {
    report.field(key, v.to_string());
    if let Scalar::Rational(r) = v {
        if let Some(x) = r.to_f64() {
            report.field(&format!("{key}_decimal"), x);
        }
    }
}

pub fn series(kind: SeriesKind, shape: &Shape, common: &Common) -> Result<Report> {
    let mut report = Report::new(format!("series {}", series_name(kind)));
    let r = resolve(common, &mut report)?;
    let order = common.trunc;
    report.param("trunc", order);

    enum Job {
        K(IntPartition, u32),
        Kbar(IntPartition),
        Symsing(usize),
        Zeta,
        ZetaS(usize),
        Zinv(GenPartition),
    }
    let job = match kind {
        SeriesKind::K => {
            let nu = parse_nu(&shape.nu)?;
            report.param("nu", &nu).param("a", shape.a);
            Job::K(nu, shape.a)
        }
        SeriesKind::Kbar => {
            let nu = parse_nu(&shape.nu)?;
            report.param("nu", &nu);
            Job::Kbar(nu)
        }
        SeriesKind::Symsing => {
            let s = shape.s.ok_or_else(|| Error::Parse("series symsing needs --s".into()))?;
            report.param("s", s);
            Job::Symsing(s)
        }
        SeriesKind::Zeta => match shape.s {
            Some(s) => {
                report.param("s", s);
                Job::ZetaS(s)
            }
            None => Job::Zeta,
        },
        SeriesKind::Zetainv => {
            let lambda = match (shape.s, &shape.nu) {
                (Some(_), Some(_)) => return Err(Error::Parse("give --s or --nu, not both".into())),
                (Some(s), None) => star_power(s),
                (None, Some(nu)) => nu.parse()?,
                (None, None) => GenPartition::empty(),
            };
            report.param("lambda", &lambda);
            Job::Zinv(lambda)
        }
    };

    struct Run(Job, usize);
    impl SpecVisitor for Run {
        type Output = (Vec<Scalar>, String);
        fn visit<S: Specializer>(self, sp: &S) -> Result<Self::Output> {
            let Run(job, n) = self;
            let series: TruncSeries<S::Value> = match &job {
                Job::K(nu, a) => k_lt_a_nu(sp, nu, *a, n)?,
                Job::Kbar(nu) => kbar_nu(sp, nu, n)?,
                Job::Symsing(s) => sym_s_series(sp, *s, n)?,
                Job::Zeta => zeta_series(sp, n)?,
                Job::ZetaS(s) => zeta_s_series(sp, *s, n)?,
                Job::Zinv(l) => zinv_lambda(sp, l, n)?,
            };
            let grading = format!("{:?}", series.grading());
            Ok((series.into_coeffs().into_iter().map(TargetValue::into_scalar).collect(), grading))
        }
    }
    let note = match &job {
        Job::K(nu, _) | Job::Kbar(nu) => Some(format!("coefficient of t^j lies in Sym^(j+{})", nu.sum())),
        _ => None,
    };
    let (coeffs, grading) = dispatch(&r.model, r.spec, Run(job, order))?;
    report.param("grading", grading);
    if let Some(note) = note {
        report.field("note", note);
    }
    let decimal = coeffs.iter().any(|c| matches!(c, Scalar::Rational(r) if !r.is_integer()));
    let mut header = vec!["j".to_string(), "coefficient".to_string()];
    if decimal {
        header.push("decimal".into());
    }
    let rows = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut row = vec![j.to_string(), c.to_string()];
            if decimal {
                let x = match c {
                    Scalar::Rational(r) => r.to_f64().map(|x| x.to_string()).unwrap_or_default(),
                    _ => String::new(),
                };
                row.push(x);
            }
            row
        })
        .collect();
    report.table = Some(Table { header, rows });
    Ok(report)
}

fn series_name(kind: SeriesKind) -> &'static str {
    match kind {
        SeriesKind::K => "k",
        SeriesKind::Kbar => "kbar",
        SeriesKind::Symsing => "symsing",
        SeriesKind::Zeta => "zeta",
        SeriesKind::Zetainv => "zetainv",
    }
}

fn limit_fields<V: TargetValue>(report: &mut Report, lim: LimitReport<V>) {
    report.field("normalization", lim.normalization.to_string());
    scalar_fields(report, "value", &lim.value.into_scalar());
    report.field("codim_cutoff", lim.codim_cutoff);
    report.field("tail_dimension", lim.tail.to_string());
    report.field("order_used", lim.order_used as u64);
}

pub fn limit(kind: LimitKind, shape: &Shape, norm: Norm, offset: Option<u32>, common: &Common) -> Result<Report> {
    let name = match kind {
        LimitKind::K => "k",
        LimitKind::Kbar => "kbar",
        LimitKind::Symsing => "symsing",
        LimitKind::Distinct => "distinct",
    };
    let mut report = Report::new(format!("limit {name}"));
    let r = resolve(common, &mut report)?;
    let nu = parse_nu(&shape.nu)?;
    let s = shape.s;
    if kind == LimitKind::Symsing && s.is_none() {
        return Err(Error::Parse("limit symsing needs --s".into()));
    }
    let default_offset = if kind == LimitKind::Symsing { 0 } else { nu.sum() as u32 };
    let offset = offset.unwrap_or(default_offset);
    let normalization = match norm {
        Norm::Sym => Normalization::Sym { offset },
        Norm::M => Normalization::MPower { offset },
    };
    match kind {
        LimitKind::K => report.param("nu", &nu).param("a", shape.a),
        LimitKind::Kbar | LimitKind::Distinct => report.param("nu", &nu),
        LimitKind::Symsing => report.param("s", s.unwrap_or(0)),
    };
    if kind == LimitKind::Distinct && norm != Norm::Sym {
        return Err(Error::Parse("limit distinct is normalized by Sym only".into()));
    }
    report.param("normalization", normalization).param("cutoff", common.cutoff);

    struct Run {
        kind: LimitKind,
        nu: IntPartition,
        a: u32,
        s: usize,
        normalization: Normalization,
        cutoff: i64,
        report: Report,
    }
    impl SpecVisitor for Run {
        type Output = Report;
        fn visit<S: Specializer>(self, sp: &S) -> Result<Report> {
            let Run { kind, nu, a, s, normalization, cutoff, mut report } = self;
            let lim = match kind {
                LimitKind::K => stable_limit(sp, &|n| k_lt_a_nu(sp, &nu, a, n), normalization, cutoff)?,
                LimitKind::Kbar => stable_limit(sp, &|n| kbar_nu(sp, &nu, n), normalization, cutoff)?,
                LimitKind::Symsing => stable_limit(sp, &|n| sym_s_series(sp, s, n), normalization, cutoff)?,
                LimitKind::Distinct => distinct_nu_limit(sp, &nu, cutoff)?,
            };
            limit_fields(&mut report, lim);
            Ok(report)
        }
    }
    dispatch(
        &r.model,
        r.spec,
        Run { kind, nu, a: shape.a, s: s.unwrap_or(0), normalization, cutoff: common.cutoff, report },
    )
}

fn density_fields<V: TargetValue>(report: &mut Report, h: HypersurfaceDensity<V>) {
    report.field("density", h.label);
    report.field("expression", h.expression);
    scalar_fields(report, "value", &h.value.into_scalar());
    report.field("tail_dimension", h.tail.to_string());
    report.field("complete", h.complete);
}

pub fn hyper(s: Option<usize>, ordered: bool, m: Option<u32>, d: Option<i64>, common: &Common) -> Result<Report> {
    let mut report = Report::new("hyper");
    let r = resolve(common, &mut report)?;
    let d = d.unwrap_or(i64::from(r.model.dim()));
    report.param("d", d).param("cutoff", common.cutoff);
    enum Job {
        Exact(usize),
        Ordered(usize),
        Multi(u32),
    }
    let job = match (s, m) {
        (Some(s), None) if ordered => Job::Ordered(s),
        (Some(s), None) => Job::Exact(s),
        (None, Some(m)) => Job::Multi(m),
        _ => return Err(Error::Parse("hyper needs exactly one of --s or --m".into())),
    };
    match job {
        Job::Exact(s) => report.param("s", s),
        Job::Ordered(s) => report.param("s", s).param("ordered", true),
        Job::Multi(m) => report.param("m", m),
    };
    struct Run(Job, i64, i64, Report);
    impl SpecVisitor for Run {
        type Output = Report;
        fn visit<S: Specializer>(self, sp: &S) -> Result<Report> {
            let Run(job, d, cutoff, mut report) = self;
            let h = match job {
                Job::Exact(s) => hyper_density(sp, d, s, cutoff)?,
                Job::Ordered(s) => hyper_ordered_density(sp, d, s, cutoff)?,
                Job::Multi(m) => multi_point_density(sp, d, m, cutoff)?,
            };
            density_fields(&mut report, h);
            Ok(report)
        }
    }
    dispatch(&r.model, r.spec, Run(job, d, common.cutoff, report))
}

/// Guards above the default need `--force`; nothing goes past the hard limit.
fn effective_guard(common: &Common) -> Result<u64> {
    if common.guard > MAX_GUARD {
        return Err(Error::GuardExceeded { states: u128::from(common.guard), guard: u128::from(MAX_GUARD) });
    }
    if common.guard > DEFAULT_GUARD && !common.force {
        return Err(Error::GuardExceeded { states: u128::from(common.guard), guard: u128::from(DEFAULT_GUARD) });
    }
    Ok(common.guard)
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("`{s}` is not a degree or a range A..B"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let j = s.trim().parse().map_err(|_| bad())?;
            Ok((j, j))
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("oracle {kind} needs --{flag}")))
}

pub fn oracle(kind: OracleKind, p: &OracleParams, common: &Common) -> Result<Report> {
    let start = Instant::now();
    let name = match kind {
        OracleKind::W => "w",
        OracleKind::Symsing => "symsing",
        OracleKind::Hyper => "hyper",
        OracleKind::Exp => "exp",
        OracleKind::Integer => "integer",
    };
    let mut report = Report::new(format!("oracle {name}"));
    let guard = effective_guard(common)?;
    match kind {
        OracleKind::W => {
            let curve: Curve = common.x.parse()?;
            let q = need(p.q, "q", name)?;
            let lam: IntPartition = p
                .nu
                .as_deref()
                .ok_or_else(|| Error::Parse("oracle w needs --nu".into()))?
                .parse()?;
            report.param("X", curve).param("q", q).param("nu", &lam).param("guard", guard);
            let count = count_w_lambda(curve, q, &lam, guard)?;
            report.field("exact_count", count);
        }
        OracleKind::Symsing => {
            let curve: Curve = common.x.parse()?;
            let q = need(p.q, "q", name)?;
            let (lo, hi) = parse_range(p.j.as_deref().ok_or_else(|| Error::Parse("oracle symsing needs --j".into()))?)?;
            report.param("X", curve).param("q", q).param("j", format!("{lo}..{hi}")).param("guard", guard);
            let mut rows = Vec::new();
            for j in lo..=hi {
                let by_s = tabulate_sym_s(curve, q, j, guard)?;
                match p.s {
                    Some(s) => rows.push(vec![j.to_string(), s.to_string(), by_s.get(s).copied().unwrap_or(0).to_string()]),
                    None => {
                        for (s, c) in by_s.iter().enumerate().filter(|(_, &c)| c > 0) {
                            rows.push(vec![j.to_string(), s.to_string(), c.to_string()]);
                        }
                    }
                }
            }
            if let Some(s) = p.s {
                report.param("s", s);
            }
            if lo == hi && p.s.is_some() {
                report.field("exact_count", rows[0][2].clone());
            }
            report.table = Some(Table { header: vec!["j".into(), "s".into(), "count".into()], rows });
        }
        OracleKind::Hyper => {
            let q = need(p.q, "q", name)?;
            let s = need(p.s, "s", name)?;
            let (lo, hi) = parse_range(p.j.as_deref().ok_or_else(|| Error::Parse("oracle hyper needs --j".into()))?)?;
            report.param("X", "P1").param("q", q).param("j", format!("{lo}..{hi}")).param("s", s).param("guard", guard);
            let mut rows = Vec::new();
            for j in lo..=hi {
                let h = count_hyper_s(q, j, s, guard)?;
                let (num, den) = h.reduced();
                let decimal = h.fraction().to_f64().unwrap_or(f64::NAN);
                if lo == hi {
                    report.field("count", h.count.to_string());
                    report.field("total", h.total.to_string());
                    report.field("fraction", format!("{num}/{den}"));
                    report.field("decimal", decimal);
                }
                rows.push(vec![j.to_string(), h.count.to_string(), h.total.to_string(), format!("{num}/{den}"), decimal.to_string()]);
            }
            report.table = Some(Table {
                header: ["j", "count", "total", "fraction", "decimal"].map(String::from).to_vec(),
                rows,
            });
        }
        OracleKind::Exp => {
            let counts: Vec<BigInt> = p
                .counts
                .as_deref()
                .ok_or_else(|| Error::Parse("oracle exp needs --counts".into()))?
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad count `{x}`"))))
                .collect::<Result<_>>()?;
            let n = p.n.unwrap_or(counts.len());
            let shown: Vec<String> = counts.iter().map(ToString::to_string).collect();
            report.param("counts", shown.join(",")).param("n", n);
            let syms = exp_formula_sym_counts(&counts, n)?;
            let rows = syms.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect();
            report.table = Some(Table { header: vec!["n".into(), "sym_count".into()], rows });
        }
        OracleKind::Integer => {
            let a = need(p.a, "a", name)?;
            let b = p.b.unwrap_or(a);
            report.param("a", a).param("b", b).param("r", p.r).param("bound", p.bound);
            check_guard(u128::from(p.bound), MAX_GUARD)?;
            let density = integer_power_density(a, b, p.r, p.bound)?;
            let pred = integer_power_prediction(a, b, p.r)?;
            report.field("fraction", density.to_string());
            report.field("decimal", density.to_f64().unwrap_or(f64::NAN));
            report.field("prediction", pred.value);
            report.field("prediction_tail_bound", pred.tail_bound);
        }
    }
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

pub struct VerifyOutcome {
    pub report: Report,
    pub all_passed: bool,
}

pub fn verify(suite: &str) -> Result<VerifyOutcome> {
    let start = Instant::now();
    let mut report = Report::new("verify");
    report.param("suite", suite);
    let mut rows = Vec::new();
    let mut all_passed = true;
    for c in verify::select(suite)? {
        let r = c.run();
        all_passed &= r.passed;
        rows.push(vec![
            r.id.to_string(),
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.name.to_string(),
            format!("{:.3}", r.elapsed.as_secs_f64()),
            r.budget.as_secs().to_string(),
            r.detail,
        ]);
    }
    report.field("passed", all_passed);
    report.table = Some(Table {
        header: ["id", "verdict", "criterion", "seconds", "budget", "detail"].map(String::from).to_vec(),
        rows,
    });
    report.elapsed = Some(start.elapsed());
    Ok(VerifyOutcome { report, all_passed })
}
