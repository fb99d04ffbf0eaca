//! Concrete varieties `X` and the specializations that turn symbolic classes
//! into Laurent polynomials in `L`, point counts, Euler characteristics or
//! Hodge–Deligne polynomials.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::oracle::exp_formula_sym_counts;
use crate::ring::{
    eval_at_l_power, gen_binomial, inverse_truncated, Dimension, Dimensioned, EvalReport, Grading, HdPoly,
    LaurentL, MotivicClass, Ring, TruncSeries,
};

/// Number of point counts generated for the `counts:q=Q` shorthand.
pub const DEFAULT_COUNT_LENGTH: usize = 48;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind {
    AffineSpace(u32),
    ProjLine,
    ProjSpace(u32),
    /// `counts[r-1] = #X(F_{q^r})`.
    PointCounts { q: u64, counts: Vec<BigInt> },
    EulerChar(i64),
    HodgeDeligne(HdPoly),
    /// `table[n] = [Sym^n X]`.
    SymTable(Vec<LaurentL>),
}

/// A variety described by its dimension and enough data to specialize
/// classes built from its symmetric powers.
#[derive(Clone, Debug, PartialEq)]
pub struct XModel {
    dim: u32,
    kind: ModelKind,
}

impl XModel {
    pub fn affine(d: u32) -> Self {
        XModel { dim: d, kind: ModelKind::AffineSpace(d) }
    }

    pub fn point() -> Self {
        XModel::affine(0)
    }

    pub fn proj_line() -> Self {
        XModel { dim: 1, kind: ModelKind::ProjLine }
    }

    pub fn proj_space(n: u32) -> Self {
        XModel { dim: n, kind: ModelKind::ProjSpace(n) }
    }

    /// Validates `N_r >= 0` and that the exponential formula yields
    /// nonnegative integers.
    pub fn point_counts(q: u64, dim: u32, counts: Vec<BigInt>) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::InvalidCounts(format!("q = {q} is not a prime power")));
        }
        if counts.iter().any(|n| n < &BigInt::from(0)) {
            return Err(Error::InvalidCounts("point counts must be nonnegative".into()));
        }
        exp_formula_sym_counts(&counts, counts.len())?;
        Ok(XModel { dim, kind: ModelKind::PointCounts { q, counts } })
    }

    pub fn euler(chi: i64, dim: u32) -> Self {
        XModel { dim, kind: ModelKind::EulerChar(chi) }
    }

    pub fn hodge_deligne(e: HdPoly, dim: u32) -> Self {
        XModel { dim, kind: ModelKind::HodgeDeligne(e) }
    }

    pub fn sym_table(dim: u32, table: Vec<LaurentL>) -> Result<Self> {
        if table.first() != Some(&LaurentL::one()) {
            return Err(Error::InvalidInput("a Sym table must start with [Sym^0 X] = 1".into()));
        }
        Ok(XModel { dim, kind: ModelKind::SymTable(table) })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    /// `[Sym^n X]` as a Laurent polynomial in `L`, when the model has one.
    pub fn sym_laurent(&self, n: u32) -> Result<LaurentL> {
        match &self.kind {
            ModelKind::AffineSpace(d) => Ok(LaurentL::l_pow(i64::from(d * n))),
            ModelKind::ProjLine => Ok(LaurentL::from_terms((0..=i64::from(n)).map(|k| (k, 1.into())))),
            ModelKind::ProjSpace(m) => Ok(complete_homogeneous_powers(*m, n)),
            ModelKind::SymTable(t) => t.get(n as usize).cloned().ok_or_else(|| {
                Error::InsufficientModelData(format!("[Sym^{n} X]; the table stops at {}", t.len() - 1))
            }),
            ModelKind::HodgeDeligne(e) => hd_sym(e, n)?.as_laurent().ok_or_else(|| {
                Error::UnsupportedSpecialization {
                    target: "motivic-L".into(),
                    model: self.to_string(),
                }
            }),
            _ => Err(Error::UnsupportedSpecialization {
                target: "motivic-L".into(),
                model: self.to_string(),
            }),
        }
    }

    fn has_laurent(&self) -> bool {
        match &self.kind {
            ModelKind::HodgeDeligne(e) => e.as_laurent().is_some(),
            ModelKind::PointCounts { .. } | ModelKind::EulerChar(_) => false,
            _ => true,
        }
    }

    /// JSON config `{kind, params}`.
    pub fn to_json(&self) -> Json {
        let (kind, params) = match &self.kind {
            ModelKind::AffineSpace(d) => ("affine-space", serde_json::json!({ "d": d })),
            ModelKind::ProjLine => ("proj-line", serde_json::json!({})),
            ModelKind::ProjSpace(n) => ("proj-space", serde_json::json!({ "n": n })),
            ModelKind::PointCounts { q, counts } => (
                "point-counts",
                serde_json::json!({
                    "q": q,
                    "dim": self.dim,
                    "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
            ),
            ModelKind::EulerChar(chi) => ("euler", serde_json::json!({ "chi": chi, "dim": self.dim })),
            ModelKind::HodgeDeligne(e) => (
                "hodge-deligne",
                serde_json::json!({ "e": e.to_string(), "dim": self.dim }),
            ),
            ModelKind::SymTable(t) => (
                "sym-table",
                serde_json::json!({
                    "dim": self.dim,
                    "table": t.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
            ),
        };
        serde_json::json!({ "kind": kind, "params": params })
    }

    /// Reads the `{kind, params}` config written by [`XModel::to_json`].
    pub fn from_json(v: &Json) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::Parse("model config needs a string `kind`".into()))?;
        let empty = serde_json::json!({});
        let params = v.get("params").unwrap_or(&empty);
        let int = |key: &str| -> Result<i64> {
            params
                .get(key)
                .and_then(Json::as_i64)
                .ok_or_else(|| Error::Parse(format!("model config needs integer `{key}`")))
        };
        let dim = |default: u32| -> Result<u32> {
            match params.get("dim") {
                None => Ok(default),
                Some(d) => d
                    .as_u64()
                    .map(|d| d as u32)
                    .ok_or_else(|| Error::Parse("`dim` must be a nonnegative integer".into())),
            }
        };
        let text_list = |key: &str| -> Result<Vec<String>> {
            params
                .get(key)
                .and_then(Json::as_array)
                .ok_or_else(|| Error::Parse(format!("model config needs a list `{key}`")))?
                .iter()
                .map(|x| match x {
                    Json::String(s) => Ok(s.clone()),
                    Json::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Parse(format!("bad entry in `{key}`"))),
                })
                .collect()
        };
        match kind {
            "affine-space" => Ok(XModel::affine(int("d")? as u32)),
            "proj-line" => Ok(XModel::proj_line()),
            "proj-space" => Ok(XModel::proj_space(int("n")? as u32)),
            "point-counts" => {
                let q = int("q")? as u64;
                let counts = text_list("counts")?
                    .iter()
                    .map(|s| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad count `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let d = dim(guess_dim(q, &counts))?;
                XModel::point_counts(q, d, counts)
            }
            "euler" => Ok(XModel::euler(int("chi")?, dim(0)?)),
            "hodge-deligne" => {
                let e: HdPoly = params
                    .get("e")
                    .and_then(Json::as_str)
                    .ok_or_else(|| Error::Parse("model config needs string `e`".into()))?
                    .parse()?;
                let d = dim(hd_dim(&e))?;
                Ok(XModel::hodge_deligne(e, d))
            }
            "sym-table" => {
                let table = text_list("table")?
                    .iter()
                    .map(|s| s.parse::<LaurentL>())
                    .collect::<Result<Vec<_>>>()?;
                XModel::sym_table(dim(0)?, table)
            }
            other => Err(Error::Parse(format!("unknown model kind `{other}`"))),
        }
    }
}

impl fmt::Display for XModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModelKind::AffineSpace(0) => write!(f, "pt"),
            ModelKind::AffineSpace(d) => write!(f, "A^{d}"),
            ModelKind::ProjLine => write!(f, "P1"),
            ModelKind::ProjSpace(n) => write!(f, "P{n}"),
            ModelKind::PointCounts { q, counts } => {
                write!(f, "counts:q={q},dim={},N=[", self.dim)?;
                for (i, c) in counts.iter().take(6).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                if counts.len() > 6 {
                    write!(f, ",...")?;
                }
                write!(f, "]")
            }
            ModelKind::EulerChar(chi) => write!(f, "euler:{chi}"),
            ModelKind::HodgeDeligne(e) => write!(f, "hd:{e}"),
            ModelKind::SymTable(t) => write!(f, "sym-table(dim={}, {} entries)", self.dim, t.len()),
        }
    }
}

impl FromStr for XModel {
    type Err = Error;

    /// Shorthands: `A^d`, `A1`, `pt`, `P1`, `Pn`, `counts:q=2`,
    /// `counts:q=2,N=[2,4,8]`, `counts:q=2,N=[..],dim=1`, `euler:2`,
    /// `euler:2,dim=1`, `hd:1+uv`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "pt" || s == "point" {
            return Ok(XModel::point());
        }
        if let Some(d) = s.strip_prefix("A^").or_else(|| s.strip_prefix('A')) {
            return d
                .parse()
                .map(XModel::affine)
                .map_err(|_| Error::Parse(format!("bad affine space `{s}`")));
        }
        if let Some(n) = s.strip_prefix("P^").or_else(|| s.strip_prefix('P')) {
            return match n.parse::<u32>() {
                Ok(1) => Ok(XModel::proj_line()),
                Ok(n) if n >= 1 => Ok(XModel::proj_space(n)),
                _ => Err(Error::Parse(format!("bad projective space `{s}`"))),
            };
        }
        if let Some(rest) = s.strip_prefix("euler:") {
            let (chi, dim) = split_dim(rest)?;
            let chi = chi
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad Euler characteristic `{chi}`")))?;
            return Ok(XModel::euler(chi, dim.unwrap_or(0)));
        }
        if let Some(rest) = s.strip_prefix("hd:") {
            let (poly, dim) = split_dim(rest)?;
            let e: HdPoly = poly.parse()?;
            let d = dim.unwrap_or_else(|| hd_dim(&e));
            return Ok(XModel::hodge_deligne(e, d));
        }
        if let Some(rest) = s.strip_prefix("counts:") {
            return parse_counts(rest);
        }
        Err(Error::Parse(format!(
            "unknown model `{s}` (expected A^d, pt, P1, Pn, counts:q=..., euler:..., hd:...)"
        )))
    }
}

/// Splits a trailing `,dim=k`.
fn split_dim(s: &str) -> Result<(&str, Option<u32>)> {
    match s.rsplit_once(",dim=") {
        Some((body, d)) => Ok((
            body,
            Some(d.trim().parse().map_err(|_| Error::Parse(format!("bad dim `{d}`")))?),
        )),
        None => Ok((s, None)),
    }
}

fn parse_counts(rest: &str) -> Result<XModel> {
    let (body, dim) = split_dim(rest)?;
    let (q_part, n_part) = match body.split_once(",N=") {
        Some((q, n)) => (q, Some(n)),
        None => (body, None),
    };
    let q: u64 = q_part
        .trim()
        .strip_prefix("q=")
        .and_then(|q| q.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad counts model `counts:{rest}`")))?;
    let counts: Vec<BigInt> = match n_part {
        Some(list) => {
            let inner = list
                .trim()
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("point counts `{list}` need brackets")))?;
            inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad point count `{x}`")))
                })
                .collect::<Result<_>>()?
        }
        // The affine line: N_r = q^r.
        None => (1..=DEFAULT_COUNT_LENGTH as u32)
            .map(|r| BigInt::from(q).pow(r))
            .collect(),
    };
    let d = dim.unwrap_or_else(|| guess_dim(q, &counts));
    XModel::point_counts(q, d, counts)
}

/// `round(log_q N_R / R)` from the last supplied count.
fn guess_dim(q: u64, counts: &[BigInt]) -> u32 {
    let Some(last) = counts.last() else { return 0 };
    let r = counts.len() as f64;
    let bits = last.bits() as f64;
    if bits == 0.0 || q < 2 {
        return 0;
    }
    (bits / (q as f64).log2() / r).round().max(0.0) as u32
}

fn hd_dim(e: &HdPoly) -> u32 {
    e.terms().map(|((p, q), _)| ((p + q) / 2).max(0) as u32).max().unwrap_or(0)
}

pub(crate) fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap_or(q);
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// `h_n(1, L, …, L^m)`, i.e. `[Sym^n P^m]`.
fn complete_homogeneous_powers(m: u32, n: u32) -> LaurentL {
    // h[k] over the variables processed so far.
    let mut h: Vec<LaurentL> = vec![LaurentL::zero(); n as usize + 1];
    h[0] = LaurentL::one();
    for i in 0..=i64::from(m) {
        for k in 1..=n as usize {
            // Adding variable L^i: h_k += L^i · h_{k-1} (in place, ascending k).
            let add = h[k - 1].mul_l_power(i);
            h[k].add_assign_ref(&add);
        }
    }
    h.pop().unwrap_or_else(LaurentL::one)
}

/// Coefficient of `t^n` in `Π (1 - u^p v^q t)^{-e_{p,q}}`.
fn hd_sym(e: &HdPoly, n: u32) -> Result<HdPoly> {
    let order = n as usize;
    let mut acc = TruncSeries::<HdPoly>::one(order, Grading::MultiplicitySum);
    for ((p, q), c) in e.terms() {
        let mono = HdPoly::monomial(p, q, 1.into());
        let factor = TruncSeries::from_fn(order, Grading::MultiplicitySum, |k| {
            let b = gen_binomial(&(c + BigInt::from(k) - 1), k as u32);
            Ring::pow(&mono, k as u32).times(&HdPoly::from_bigint(&b))
        });
        acc = acc.mul(&factor)?;
    }
    Ok(acc.coeff(order).clone())
}

/// A target of specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// Keep symmetric-power generators; only `L` is concrete.
    Symbolic,
    MotivicL,
    Count(u64),
    Euler,
    HodgeDeligne,
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Symbolic => write!(f, "symbolic"),
            Specialization::MotivicL => write!(f, "motivic-L"),
            Specialization::Count(q) => write!(f, "count:q={q}"),
            Specialization::Euler => write!(f, "euler"),
            Specialization::HodgeDeligne => write!(f, "hd"),
        }
    }
}

impl FromStr for Specialization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "symbolic" => Ok(Specialization::Symbolic),
            "motivic-L" | "motivic" | "L" => Ok(Specialization::MotivicL),
            "euler" => Ok(Specialization::Euler),
            "hd" | "hodge-deligne" => Ok(Specialization::HodgeDeligne),
            other => {
                let q = other
                    .strip_prefix("count:q=")
                    .or_else(|| other.strip_prefix("count:"))
                    .and_then(|q| q.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown specialization `{other}`")))?;
                if !is_prime_power(q) {
                    return Err(Error::Parse(format!("q = {q} is not a prime power")));
                }
                Ok(Specialization::Count(q))
            }
        }
    }
}

/// A ring morphism out of the free model: images of `L^k` and of `S_n`.
pub trait Specializer: Send + Sync {
    type Value: TargetValue;

    fn model(&self) -> &XModel;
    fn target(&self) -> Specialization;
    fn l_power(&self, k: i64) -> Result<Self::Value>;
    fn sym(&self, n: u32) -> Result<Self::Value>;

    fn dim(&self) -> i64 {
        i64::from(self.model().dim())
    }

    fn laurent(&self, c: &LaurentL) -> Result<Self::Value> {
        let mut acc = Self::Value::zero();
        for (k, v) in c.terms() {
            acc.add_assign_ref(&self.l_power(k)?.times(&Self::Value::from_bigint(v)));
        }
        Ok(acc)
    }

    fn specialize(&self, c: &MotivicClass) -> Result<Self::Value> {
        let mut acc = Self::Value::zero();
        for (m, coeff) in c.terms() {
            let mut term = self.laurent(coeff)?;
            for &(i, e) in m.pairs() {
                term = term.times(&Ring::pow(&self.sym(i)?, e));
            }
            acc.add_assign_ref(&term);
        }
        Ok(acc)
    }
}

/// Memo for symmetric-power images, grown on demand.
struct SymCache<V>(RwLock<Vec<V>>);

impl<V: Clone> SymCache<V> {
    fn new() -> Self {
        SymCache(RwLock::new(Vec::new()))
    }

    fn get(&self, n: u32, compute: impl Fn(u32) -> Result<V>) -> Result<V> {
        if let Some(v) = self.0.read().unwrap().get(n as usize) {
            return Ok(v.clone());
        }
        let mut table = self.0.write().unwrap();
        while table.len() <= n as usize {
            let next = compute(table.len() as u32)?;
            table.push(next);
        }
        Ok(table[n as usize].clone())
    }
}

/// Identity on symmetric powers: values stay in the free model.
pub struct SymbolicSpec {
    model: XModel,
}

impl SymbolicSpec {
    /// A symbolic `X` of dimension `d`; the dimension is only used to filter
    /// evaluations.
    pub fn new(d: u32) -> Self {
        SymbolicSpec { model: XModel { dim: d, kind: ModelKind::SymTable(vec![LaurentL::one()]) } }
    }
}

impl Specializer for SymbolicSpec {
    type Value = MotivicClass;
    fn model(&self) -> &XModel {
        &self.model
    }
    fn target(&self) -> Specialization {
        Specialization::Symbolic
    }
    fn l_power(&self, k: i64) -> Result<MotivicClass> {
        Ok(MotivicClass::l_pow(k))
    }
    fn sym(&self, n: u32) -> Result<MotivicClass> {
        Ok(MotivicClass::s(n))
    }
    fn specialize(&self, c: &MotivicClass) -> Result<MotivicClass> {
        Ok(c.clone())
    }
}

/// Values in `Z[L, L⁻¹]`.
pub struct LaurentSpec {
    model: XModel,
    cache: SymCache<LaurentL>,
}

impl LaurentSpec {
    pub fn new(model: &XModel) -> Result<Self> {
        if !model.has_laurent() {
            return Err(Error::UnsupportedSpecialization {
                target: "motivic-L".into(),
                model: model.to_string(),
            });
        }
        Ok(LaurentSpec { model: model.clone(), cache: SymCache::new() })
    }
}

impl Specializer for LaurentSpec {
    type Value = LaurentL;
    fn model(&self) -> &XModel {
        &self.model
    }
    fn target(&self) -> Specialization {
        Specialization::MotivicL
    }
    fn l_power(&self, k: i64) -> Result<LaurentL> {
        Ok(LaurentL::l_pow(k))
    }
    fn sym(&self, n: u32) -> Result<LaurentL> {
        self.cache.get(n, |k| self.model.sym_laurent(k))
    }
    fn laurent(&self, c: &LaurentL) -> Result<LaurentL> {
        Ok(c.clone())
    }
}

/// Point counts over `F_q`: `L ↦ q`, values rational so that `L⁻¹` is
/// available.
pub struct CountSpec {
    model: XModel,
    q: u64,
    cache: SymCache<BigRational>,
}

impl CountSpec {
    pub fn new(model: &XModel, q: u64) -> Result<Self> {
        let ok = match &model.kind {
            ModelKind::PointCounts { q: mq, .. } => *mq == q,
            _ => model.has_laurent(),
        };
        if !ok || !is_prime_power(q) {
            return Err(Error::UnsupportedSpecialization {
                target: format!("count:q={q}"),
                model: model.to_string(),
            });
        }
        Ok(CountSpec { model: model.clone(), q, cache: SymCache::new() })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn compute_sym(&self, n: u32) -> Result<BigRational> {
        match &self.model.kind {
            ModelKind::PointCounts { counts, .. } => {
                if (n as usize) > counts.len() {
                    return Err(Error::InsufficientModelData(format!(
                        "#Sym^{n} X(F_q) needs point counts N_1..N_{n}; only {} given",
                        counts.len()
                    )));
                }
                let syms = exp_formula_sym_counts(&counts[..n as usize], n as usize)?;
                Ok(BigRational::from_integer(syms[n as usize].clone()))
            }
            _ => self
                .model
                .sym_laurent(n)?
                .eval_rational(&BigRational::from_integer(self.q.into())),
        }
    }
}

impl Specializer for CountSpec {
    type Value = BigRational;
    fn model(&self) -> &XModel {
        &self.model
    }
    fn target(&self) -> Specialization {
        Specialization::Count(self.q)
    }
    fn l_power(&self, k: i64) -> Result<BigRational> {
        let q = BigRational::from_integer(self.q.into());
        Ok(if k >= 0 { Ring::pow(&q, k as u32) } else { Ring::pow(&q.recip(), (-k) as u32) })
    }
    fn sym(&self, n: u32) -> Result<BigRational> {
        self.cache.get(n, |k| self.compute_sym(k))
    }
}

/// Compactly supported Euler characteristic: `L ↦ 1`.
pub struct EulerSpec {
    model: XModel,
}

impl EulerSpec {
    pub fn new(model: &XModel) -> Result<Self> {
        if matches!(model.kind, ModelKind::PointCounts { .. }) {
            return Err(Error::UnsupportedSpecialization {
                target: "euler".into(),
                model: model.to_string(),
            });
        }
        Ok(EulerSpec { model: model.clone() })
    }
}

impl Specializer for EulerSpec {
    type Value = BigInt;
    fn model(&self) -> &XModel {
        &self.model
    }
    fn target(&self) -> Specialization {
        Specialization::Euler
    }
    fn l_power(&self, _k: i64) -> Result<BigInt> {
        Ok(BigInt::from(1))
    }
    fn sym(&self, n: u32) -> Result<BigInt> {
        match &self.model.kind {
            // Coefficient of t^n in (1 - t)^{-χ}.
            ModelKind::EulerChar(chi) => Ok(gen_binomial(&BigInt::from(chi + i64::from(n) - 1), n)),
            ModelKind::HodgeDeligne(e) => Ok(hd_sym(e, n)?.at_one()),
            _ => Ok(self.model.sym_laurent(n)?.sum_of_coefficients()),
        }
    }
}

/// Hodge–Deligne polynomials: `L ↦ uv`.
pub struct HodgeSpec {
    model: XModel,
    cache: SymCache<HdPoly>,
}

impl HodgeSpec {
    pub fn new(model: &XModel) -> Result<Self> {
        let ok = matches!(model.kind, ModelKind::HodgeDeligne(_)) || model.has_laurent();
        if !ok {
            return Err(Error::UnsupportedSpecialization {
                target: "hd".into(),
                model: model.to_string(),
            });
        }
        Ok(HodgeSpec { model: model.clone(), cache: SymCache::new() })
    }
}

impl Specializer for HodgeSpec {
    type Value = HdPoly;
    fn model(&self) -> &XModel {
        &self.model
    }
    fn target(&self) -> Specialization {
        Specialization::HodgeDeligne
    }
    fn l_power(&self, k: i64) -> Result<HdPoly> {
        Ok(HdPoly::uv_pow(k))
    }
    fn sym(&self, n: u32) -> Result<HdPoly> {
        self.cache.get(n, |k| match &self.model.kind {
            ModelKind::HodgeDeligne(e) => hd_sym(e, k),
            _ => Ok(HdPoly::from_laurent(&self.model.sym_laurent(k)?)),
        })
    }
}

/// A specialized value of any target ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Class(MotivicClass),
    Laurent(LaurentL),
    Rational(BigRational),
    Integer(BigInt),
    Hd(HdPoly),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Class(c) => write!(f, "{c}"),
            Scalar::Laurent(c) => write!(f, "{c}"),
            Scalar::Rational(c) => write!(f, "{c}"),
            Scalar::Integer(c) => write!(f, "{c}"),
            Scalar::Hd(c) => write!(f, "{c}"),
        }
    }
}

/// Values a specializer can produce: conversion into [`Scalar`] plus the
/// evaluation hooks used for limits at negative powers of `L`.
pub trait TargetValue: Ring {
    fn into_scalar(self) -> Scalar;

    /// `Σ f_n L^{-mn}`; `l_inv_m` is the image of `L^{-m}`. Truncating rings
    /// keep terms of dimension `>= -cutoff`, numeric rings return the exact
    /// partial sum.
    fn eval_at_l_power(
        f: &TruncSeries<Self>,
        m: i64,
        d: i64,
        cutoff: i64,
        l_inv_m: &Self,
    ) -> Result<EvalReport<Self>>;

    /// Inverse up to dimension `-cutoff` (exact for numeric rings).
    fn inverse_value(&self, d: i64, cutoff: i64) -> Result<Self>;

    /// Terms of dimension `>= min_dim`; numeric rings keep everything.
    fn truncate_dim(&self, min_dim: i64, d: i64) -> (Self, Dimension);

    /// Whether values are truncated by dimension (so that identities between
    /// evaluations hold exactly).
    fn truncates() -> bool;
}

fn no_limits<T>(target: &str) -> Result<T> {
    Err(Error::UnsupportedSpecialization {
        target: target.into(),
        model: "evaluation at negative powers of L".into(),
    })
}

macro_rules! dimensioned_target {
    ($t:ty, $variant:ident) => {
        impl TargetValue for $t {
            fn into_scalar(self) -> Scalar {
                Scalar::$variant(self)
            }
            fn eval_at_l_power(
                f: &TruncSeries<Self>,
                m: i64,
                d: i64,
                cutoff: i64,
                _l_inv_m: &Self,
            ) -> Result<EvalReport<Self>> {
                eval_at_l_power(f, m, d, cutoff, true)
            }
            fn inverse_value(&self, d: i64, cutoff: i64) -> Result<Self> {
                inverse_truncated(self, d, cutoff)
            }
            fn truncate_dim(&self, min_dim: i64, d: i64) -> (Self, Dimension) {
                Dimensioned::split_at(self, min_dim, d)
            }
            fn truncates() -> bool {
                true
            }
        }
    };
}

dimensioned_target!(MotivicClass, Class);
dimensioned_target!(LaurentL, Laurent);

impl TargetValue for BigRational {
    fn into_scalar(self) -> Scalar {
        Scalar::Rational(self)
    }
    fn eval_at_l_power(
        f: &TruncSeries<Self>,
        m: i64,
        d: i64,
        cutoff: i64,
        l_inv_m: &Self,
    ) -> Result<EvalReport<Self>> {
        if m <= d {
            return Err(Error::Divergence { m, d });
        }
        let mut value = <BigRational as Ring>::zero();
        let mut power = <BigRational as Ring>::one();
        for c in f.coeffs() {
            value += c * &power;
            power = &power * l_inv_m;
        }
        let unseen = -(m - d) * (f.order() as i64 + 1);
        Ok(EvalReport {
            value,
            tail: Dimension::Finite(unseen),
            complete: unseen < -cutoff,
        })
    }
    fn inverse_value(&self, _d: i64, _cutoff: i64) -> Result<Self> {
        self.try_inverse().ok_or_else(|| Error::NotInvertible(self.to_string()))
    }
    fn truncate_dim(&self, _min_dim: i64, _d: i64) -> (Self, Dimension) {
        (self.clone(), Dimension::NegInfinity)
    }
    fn truncates() -> bool {
        false
    }
}

macro_rules! limitless_target {
    ($t:ty, $variant:ident, $name:expr) => {
        impl TargetValue for $t {
            fn into_scalar(self) -> Scalar {
                Scalar::$variant(self)
            }
            fn eval_at_l_power(
                _f: &TruncSeries<Self>,
                _m: i64,
                _d: i64,
                _cutoff: i64,
                _l_inv_m: &Self,
            ) -> Result<EvalReport<Self>> {
                no_limits($name)
            }
            fn inverse_value(&self, _d: i64, _cutoff: i64) -> Result<Self> {
                no_limits($name)
            }
            fn truncate_dim(&self, _min_dim: i64, _d: i64) -> (Self, Dimension) {
                (self.clone(), Dimension::NegInfinity)
            }
            fn truncates() -> bool {
                false
            }
        }
    };
}

limitless_target!(BigInt, Integer, "euler");
limitless_target!(HdPoly, Hd, "hd");

/// A computation generic over the specializer, run by [`dispatch`].
pub trait SpecVisitor {
    type Output;
    fn visit<S: Specializer>(self, sp: &S) -> Result<Self::Output>;
}

/// Builds the specializer for `(model, target)` and runs `visitor` with it.
pub fn dispatch<V: SpecVisitor>(model: &XModel, target: Specialization, visitor: V) -> Result<V::Output> {
    match target {
        Specialization::Symbolic => visitor.visit(&SymbolicSpec::new(model.dim())),
        Specialization::MotivicL => visitor.visit(&LaurentSpec::new(model)?),
        Specialization::Count(q) => visitor.visit(&CountSpec::new(model, q)?),
        Specialization::Euler => visitor.visit(&EulerSpec::new(model)?),
        Specialization::HodgeDeligne => visitor.visit(&HodgeSpec::new(model)?),
    }
}

/// `[Sym^n X]` under a specialization.
pub fn sym_class(model: &XModel, n: u32, target: Specialization) -> Result<Scalar> {
    struct Sym(u32);
    impl SpecVisitor for Sym {
        type Output = Scalar;
        fn visit<S: Specializer>(self, sp: &S) -> Result<Scalar> {
            Ok(sp.sym(self.0)?.into_scalar())
        }
    }
    dispatch(model, target, Sym(n))
}

/// Substitutes the model's symmetric powers and the image of `L` into `c`.
pub fn specialize_class(c: &MotivicClass, model: &XModel, target: Specialization) -> Result<Scalar> {
    struct Spec<'a>(&'a MotivicClass);
    impl SpecVisitor for Spec<'_> {
        type Output = Scalar;
        fn visit<S: Specializer>(self, sp: &S) -> Result<Scalar> {
            Ok(sp.specialize(self.0)?.into_scalar())
        }
    }
    dispatch(model, target, Spec(c))
}

/// Checks `χ(Z_X(t)) = (1-t)^{-χ}` and `Σ χ(w_{1^j}) t^j = (1+t)^χ` to
/// order `n`.
pub fn macdonald_check(chi: i64, n: usize) -> Result<bool> {
    let model = XModel::euler(chi, 0);
    let sp = EulerSpec::new(&model)?;
    let z = crate::genfun::zeta_series(&sp, n)?;
    let chi_big = BigInt::from(chi);
    let want_z = TruncSeries::from_fn(n, Grading::MultiplicitySum, |k| {
        gen_binomial(&(&chi_big + BigInt::from(k as i64) - 1), k as u32)
    });
    if z != want_z {
        return Ok(false);
    }
    for j in 0..=n {
        // λ = 1^j has the single multiplicity j.
        let profile = if j == 0 { vec![] } else { vec![j as u32] };
        let w = crate::genfun::w_profile(&crate::partitions::IntPartition::new(profile)?);
        let got = sp.specialize(&w)?;
        if got != gen_binomial(&chi_big, j as u32) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `Z_X = Z_U · Z_Y` to order `n` under `target`, for `X = U ⊔ Y`.
pub fn stratification_check(
    u: &XModel,
    y: Option<&XModel>,
    x: &XModel,
    target: Specialization,
    n: usize,
) -> Result<bool> {
    struct Strat<'a> {
        u: &'a XModel,
        y: Option<&'a XModel>,
        n: usize,
    }
    impl SpecVisitor for Strat<'_> {
        type Output = bool;
        fn visit<S: Specializer>(self, sp_x: &S) -> Result<bool> {
            let target = sp_x.target();
            let zu = zeta_with(self.u, target, self.n)?;
            let zy = match self.y {
                Some(y) => zeta_with(y, target, self.n)?,
                None => vec![Scalar::Integer(1.into())]
                    .into_iter()
                    .chain((1..=self.n).map(|_| Scalar::Integer(0.into())))
                    .collect(),
            };
            let zx = crate::genfun::zeta_series(sp_x, self.n)?;
            // Compare through a common ring: push U and Y values into X's ring.
            let cast = |s: &Scalar| -> Result<S::Value> { scalar_into::<S>(s) };
            let zu = TruncSeries::new(self.n, Grading::MultiplicitySum, zu.iter().map(cast).collect::<Result<_>>()?);
            let zy = TruncSeries::new(self.n, Grading::MultiplicitySum, zy.iter().map(cast).collect::<Result<_>>()?);
            Ok(zu.mul(&zy)? == zx)
        }
    }
    dispatch(x, target, Strat { u, y, n })
}

fn zeta_with(model: &XModel, target: Specialization, n: usize) -> Result<Vec<Scalar>> {
    (0..=n as u32).map(|k| sym_class(model, k, target)).collect()
}

fn scalar_into<S: Specializer>(s: &Scalar) -> Result<S::Value> {
    let any: &dyn std::any::Any = match s {
        Scalar::Class(c) => c,
        Scalar::Laurent(c) => c,
        Scalar::Rational(c) => c,
        Scalar::Integer(c) => c,
        Scalar::Hd(c) => c,
    };
    any.downcast_ref::<S::Value>()
        .cloned()
        .or_else(|| match s {
            Scalar::Integer(n) => Some(S::Value::from_bigint(n)),
            _ => None,
        })
        .ok_or_else(|| Error::Internal("values from different specialization rings".into()))
}

/// Checks `#Sym^n(X × A¹)(F_q) = q^n · #Sym^n X(F_q)` for `n <= n_max`,
/// building the counts of `X × A¹` as `q^r N_r`.
pub fn product_with_line_check(x: &XModel, q: u64, n_max: usize) -> Result<bool> {
    let counts_x: Vec<BigInt> = match &x.kind {
        ModelKind::PointCounts { q: mq, counts } if *mq == q => counts.clone(),
        _ => {
            let sp = LaurentSpec::new(x)?;
            let qq = BigRational::from_integer(q.into());
            // N_r = X(F_{q^r}) from the L-model: only valid for polynomial-count
            // models, where [X] evaluated at q^r counts points.
            (1..=n_max as u32)
                .map(|r| {
                    let v = sp.sym(1)?.eval_rational(&Ring::pow(&qq, r))?;
                    v.is_integer()
                        .then(|| v.to_integer())
                        .ok_or_else(|| Error::InvalidCounts("non-integral point count".into()))
                })
                .collect::<Result<_>>()?
        }
    };
    if counts_x.len() < n_max {
        return Err(Error::InsufficientModelData(format!("point counts up to r = {n_max}")));
    }
    let counts_xa: Vec<BigInt> = counts_x
        .iter()
        .enumerate()
        .map(|(i, n)| n * BigInt::from(q).pow(i as u32 + 1))
        .collect();
    let sx = exp_formula_sym_counts(&counts_x[..n_max], n_max)?;
    let sxa = exp_formula_sym_counts(&counts_xa[..n_max], n_max)?;
    Ok((0..=n_max).all(|n| sxa[n] == &sx[n] * BigInt::from(q).pow(n as u32)))
}
