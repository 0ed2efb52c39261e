//! Checks on twisted Virasoro modules: the bracket and Heisenberg-Virasoro
//! relations, the `w_k` identity, invariant-subspace probes, recovery of the
//! `t`-action from Virasoro words, and isomorphism decisions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{bareiss_rank, Echelon, SparseRow};
use crate::modules::{omega_closed_form, Family, ModVec, Module, Sym};
use crate::scalar::Scalar;
use crate::Generator;

/// Anything the Virasoro algebra acts on through basis symbols.
pub trait VirRep: Sync {
    fn vir(&self, n: i64, v: &ModVec) -> Result<ModVec>;
    fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec>;
    fn basis(&self, count: usize) -> Vec<Sym>;
    fn twist(&self) -> Option<Scalar>;
}

impl VirRep for Module {
    fn vir(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        self.vir_act(n, v)
    }

    fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec> {
        Module::t_act(self, m, v)
    }

    fn basis(&self, count: usize) -> Vec<Sym> {
        Module::basis(self, count)
    }

    fn twist(&self) -> Option<Scalar> {
        Module::twist(self).cloned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub v: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            passed: true,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) -> bool {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.counterexample = Some(cx());
        }
        ok
    }
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Op {
    Vir,
    T,
}

/// Caches `d_n` and `t^m` on basis symbols and extends them linearly.
pub struct Memo<'a, R: ?Sized> {
    rep: &'a R,
    table: Mutex<HashMap<(Op, i64, Sym), ModVec>>,
}

impl<'a, R: VirRep + ?Sized> Memo<'a, R> {
    pub fn new(rep: &'a R) -> Self {
        Memo {
            rep,
            table: Mutex::new(HashMap::new()),
        }
    }

    fn image(&self, op: Op, n: i64, sym: Sym) -> Result<ModVec> {
        if let Some(v) = self.table.lock().expect("not poisoned").get(&(op, n, sym)) {
            return Ok(v.clone());
        }
        let v = ModVec::basis(sym);
        let img = match op {
            Op::Vir => self.rep.vir(n, &v)?,
            Op::T => self.rep.t_act(n, &v)?,
        };
        self.table
            .lock()
            .expect("not poisoned")
            .insert((op, n, sym), img.clone());
        Ok(img)
    }

    fn apply(&self, op: Op, n: i64, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (sym, c) in v.terms() {
            out.add_scaled(&self.image(op, n, *sym)?, c);
        }
        Ok(out)
    }
}

impl<R: VirRep + ?Sized> VirRep for Memo<'_, R> {
    fn vir(&self, n: i64, v: &ModVec) -> Result<ModVec> {
        self.apply(Op::Vir, n, v)
    }

    fn t_act(&self, m: i64, v: &ModVec) -> Result<ModVec> {
        self.apply(Op::T, m, v)
    }

    fn basis(&self, count: usize) -> Vec<Sym> {
        self.rep.basis(count)
    }

    fn twist(&self) -> Option<Scalar> {
        self.rep.twist()
    }
}

/// Per-vector results in basis order. Cases after the first failing vector
/// are not counted, as if the vectors had been checked one at a time.
fn per_vector<F>(check: &str, basis: Vec<Sym>, f: F) -> Result<CheckReport>
where
    F: Fn(&ModVec, &mut CheckReport) -> Result<()> + Sync,
{
    let parts = basis
        .par_iter()
        .map(|sym| {
            let mut r = CheckReport::new(check);
            f(&ModVec::basis(*sym), &mut r)?;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new(check);
    for part in parts {
        report.cases += part.cases;
        if !part.passed {
            report.passed = false;
            report.counterexample = part.counterexample;
            break;
        }
    }
    Ok(report)
}

/// `[d_m, d_n] v = (n - m) d_(m+n) v` for `|m|, |n| <= range` on the first
/// `basis_budget` basis vectors. Stops at the first failure.
pub fn bracket_check<R: VirRep + ?Sized>(rep: &R, range: i64, basis_budget: usize) -> Result<CheckReport> {
    let rep = Memo::new(rep);
    per_vector("bracket", rep.basis(basis_budget), |v, report| {
        let images: BTreeMap<i64, ModVec> = (-range..=range)
            .map(|n| Ok((n, rep.vir(n, v)?)))
            .collect::<Result<_>>()?;
        for m in -range..=range {
            for n in -range..=range {
                let lhs = &rep.vir(m, &images[&n])? - &rep.vir(n, &images[&m])?;
                let rhs = rep.vir(m + n, v)?.scale(&int(n - m));
                let ok = report.record(lhs == rhs, || Counterexample {
                    m: Some(m),
                    n: Some(n),
                    k: None,
                    v: v.to_string(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                if !ok {
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

/// `[d_n, t^m] v = m t^(m+n) v` for `|m|, |n| <= range`.
pub fn hvir_check<R: VirRep + ?Sized>(rep: &R, range: i64, basis_budget: usize) -> Result<CheckReport> {
    let rep = Memo::new(rep);
    per_vector("hvir", rep.basis(basis_budget), |v, report| {
        for m in -range..=range {
            let tv = rep.t_act(m, v)?;
            for n in -range..=range {
                let lhs = &rep.vir(n, &tv)? - &rep.t_act(m, &rep.vir(n, v)?)?;
                let rhs = rep.t_act(m + n, v)?.scale(&int(m));
                let ok = report.record(lhs == rhs, || Counterexample {
                    m: Some(m),
                    n: Some(n),
                    k: None,
                    v: v.to_string(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                if !ok {
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

/// `w_k v` computed only from the Virasoro action:
/// `-1/2 d_(k-1) d_1 v - 1/2 d_(k+1) d_(-1) v + d_k d_0 v`.
pub fn wk_apply<R: VirRep + ?Sized>(rep: &R, k: i64, v: &ModVec) -> Result<ModVec> {
    let half = Scalar::ratio(-1, 2);
    let mut out = rep.vir(k, &rep.vir(0, v)?)?;
    out.add_scaled(&rep.vir(k - 1, &rep.vir(1, v)?)?, &half);
    out.add_scaled(&rep.vir(k + 1, &rep.vir(-1, v)?)?, &half);
    Ok(out)
}

/// `w_k v = b(b-1) t^k v` for `|k| <= k_range`.
pub fn wk_check<R: VirRep + ?Sized>(rep: &R, k_range: i64, basis_budget: usize) -> Result<CheckReport> {
    let b = rep.twist().ok_or(Error::NoTwist)?;
    let c = &b * &(&b - &Scalar::one());
    let rep = Memo::new(rep);
    per_vector("wk", rep.basis(basis_budget), |v, report| {
        for k in -k_range..=k_range {
            let lhs = wk_apply(&rep, k, v)?;
            let rhs = rep.t_act(k, v)?.scale(&c);
            let ok = report.record(lhs == rhs, || Counterexample {
                m: None,
                n: None,
                k: Some(k),
                v: v.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            if !ok {
                return Ok(());
            }
        }
        Ok(())
    })
}

/// The closed form of `d_n` on `Omega(lambda, b)` against the module action,
/// for `|n| <= n_range`, `k <= k_max`.
pub fn omega_formula_check(lambda: &Scalar, b: &Scalar, n_range: i64, k_max: u32) -> Result<CheckReport> {
    let m = Module::omega(lambda.clone(), b.clone())?;
    let mut report = CheckReport::new("omega-closed-form");
    for n in -n_range..=n_range {
        for k in 0..=k_max {
            let v = ModVec::basis(Sym::E(k));
            let lhs = m.vir_act(n, &v)?;
            let rhs = omega_closed_form(n, k, lambda, b)?;
            let ok = report.record(lhs == rhs, || Counterexample {
                m: None,
                n: Some(n),
                k: Some(k as i64),
                v: v.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            if !ok {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The scalar by which `w_0` acts on `v`.
pub fn recover_c<R: VirRep + ?Sized>(rep: &R, v: &ModVec) -> Result<Scalar> {
    let (sym, coeff) = v.terms().next().ok_or(Error::ZeroVector)?;
    let w = wk_apply(rep, 0, v)?;
    let c = w.coeff(sym).checked_div(coeff)?;
    if w != v.scale(&c) {
        return Err(Error::NotEigenvector);
    }
    Ok(c)
}

/// `t^k v` recovered as `w_k v / b(b-1)`, using only the Virasoro action.
pub fn recover_t_action<R: VirRep + ?Sized>(rep: &R, k: i64, v: &ModVec) -> Result<ModVec> {
    let c = recover_c(rep, v)?;
    if c.is_zero() {
        return Err(Error::TwistDegenerate);
    }
    Ok(wk_apply(rep, k, v)?.scale(&c.inv()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeVerdict {
    ProperSubspaceWitness,
    WindowFilled,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub window: Vec<String>,
    pub seed_vector: String,
    pub generator_range: i64,
    pub word_length: usize,
    pub levels_run: usize,
    pub spanned_dim: usize,
    pub window_dim: usize,
    pub escapes: usize,
    pub verdict: ProbeVerdict,
}

/// A basis of a window subspace claimed closed under `d_n`, `|n| <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeCertificate {
    pub window: Vec<Sym>,
    pub generator_range: i64,
    pub basis: Vec<ModVec>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Col {
    Out(Sym),
    In(usize),
}

struct Window {
    syms: Vec<Sym>,
    index: BTreeMap<Sym, usize>,
}

impl Window {
    fn new(syms: &[Sym]) -> Self {
        Window {
            syms: syms.to_vec(),
            index: syms.iter().enumerate().map(|(i, s)| (*s, i)).collect(),
        }
    }

    fn contains_vec(&self, v: &ModVec) -> bool {
        v.support().all(|s| self.index.contains_key(s))
    }

    fn row(&self, v: &ModVec) -> SparseRow<Col> {
        v.terms()
            .map(|(s, c)| {
                let col = self.index.get(s).map_or(Col::Out(*s), |i| Col::In(*i));
                (col, c.clone())
            })
            .collect()
    }

    fn vec(&self, row: &SparseRow<Col>) -> ModVec {
        ModVec::from_terms(row.iter().map(|(col, c)| {
            let sym = match col {
                Col::In(i) => self.syms[*i],
                Col::Out(s) => *s,
            };
            (sym, c.clone())
        }))
    }
}

fn in_window_rows(e: &Echelon<Col>) -> Vec<&SparseRow<Col>> {
    (0..e.rank())
        .filter(|&i| matches!(e.pivot_of(i), Col::In(_)))
        .map(|i| &e.rows()[i])
        .collect()
}

/// Escapes are accepted for `Omega` on a window `E(0), ..., E(W-1)`, where
/// every `d_n` raises the top degree by exactly one.
fn escapes_safe(family: Option<&Family>, window: &[Sym]) -> bool {
    matches!(family, Some(Family::Omega { .. }))
        && window.iter().copied().collect::<BTreeSet<_>>()
            == (0..window.len() as u32).map(Sym::E).collect()
}

fn images<R: VirRep + ?Sized>(rep: &R, vs: &[ModVec], n_range: i64) -> Result<Vec<ModVec>> {
    let jobs: Vec<(usize, i64)> = (0..vs.len())
        .flat_map(|i| (-n_range..=n_range).map(move |n| (i, n)))
        .collect();
    jobs.par_iter().map(|(i, n)| rep.vir(*n, &vs[*i])).collect()
}

/// Explores the span of words in `d_n`, `|n| <= n_range`, applied to `seed`,
/// and intersects it with the window. At least `word_length` levels are
/// computed; afterwards levels continue until the window part is closed under
/// the generators, up to `word_length + window.len()` levels.
pub fn submodule_probe<R: VirRep + ?Sized>(
    rep: &R,
    family: Option<&Family>,
    seed: &ModVec,
    n_range: i64,
    word_length: usize,
    window: &[Sym],
) -> Result<(ProbeReport, Option<ProbeCertificate>)> {
    if seed.is_zero() {
        return Err(Error::ZeroVector);
    }
    let win = Window::new(window);
    if !win.contains_vec(seed) {
        return Err(Error::Usage("seed must be supported in the window".into()));
    }
    let mut span = Echelon::new();
    span.insert(&win.row(seed));
    let mut frontier = vec![seed.clone()];
    let cap = word_length + window.len();
    let mut levels = 0;
    let mut closed = false;
    let mut exhausted = false;
    let filled = |e: &Echelon<Col>| in_window_rows(e).len() == window.len();
    while levels < cap && !filled(&span) {
        if frontier.is_empty() {
            exhausted = true;
            closed = true;
            break;
        }
        if levels >= word_length {
            let basis: Vec<ModVec> = in_window_rows(&span).iter().map(|r| win.vec(r)).collect();
            let mut trial = span.clone();
            for img in images(rep, &basis, n_range)? {
                trial.insert(&win.row(&img));
            }
            if in_window_rows(&trial).len() == basis.len() {
                closed = true;
                break;
            }
        }
        let imgs = images(rep, &frontier, n_range)?;
        frontier = imgs
            .into_iter()
            .filter(|img| span.insert(&win.row(img)))
            .collect();
        levels += 1;
    }
    let s_rows: Vec<ModVec> = in_window_rows(&span).iter().map(|r| win.vec(r)).collect();
    let spanned_dim = s_rows.len();
    let escapes = images(rep, &s_rows, n_range)?
        .iter()
        .filter(|v| !win.contains_vec(v))
        .count();
    // an exhausted search has found the whole generated submodule
    let verdict = if spanned_dim == window.len() {
        ProbeVerdict::WindowFilled
    } else if exhausted || (closed && (escapes == 0 || escapes_safe(family, window))) {
        ProbeVerdict::ProperSubspaceWitness
    } else {
        ProbeVerdict::Inconclusive
    };
    let report = ProbeReport {
        window: window.iter().map(Sym::to_string).collect(),
        seed_vector: seed.to_string(),
        generator_range: n_range,
        word_length,
        levels_run: levels,
        spanned_dim,
        window_dim: window.len(),
        escapes,
        verdict,
    };
    let cert = (verdict == ProbeVerdict::ProperSubspaceWitness).then(|| ProbeCertificate {
        window: window.to_vec(),
        generator_range: n_range,
        basis: s_rows,
    });
    Ok((report, cert))
}

fn dense(window: &[Sym], v: &ModVec) -> Vec<Scalar> {
    window.iter().map(|s| v.coeff(s)).collect()
}

/// Re-checks a certificate with fraction-free rank computations: the basis
/// is independent, lies in the window, and every generator image that stays
/// in the window lies in its span.
pub fn verify_certificate<R: VirRep + ?Sized>(rep: &R, cert: &ProbeCertificate) -> Result<bool> {
    let win = Window::new(&cert.window);
    if cert.basis.iter().any(|v| !win.contains_vec(v)) {
        return Ok(false);
    }
    let rows: Vec<Vec<Scalar>> = cert.basis.iter().map(|v| dense(&cert.window, v)).collect();
    let r = bareiss_rank(&rows);
    if r != cert.basis.len() || r == cert.window.len() {
        return Ok(false);
    }
    for v in &cert.basis {
        for n in -cert.generator_range..=cert.generator_range {
            let img = rep.vir(n, v)?;
            if !win.contains_vec(&img) {
                continue;
            }
            let mut ext = rows.clone();
            ext.push(dense(&cert.window, &img));
            if bareiss_rank(&ext) != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Isomorphism invariants of a twisted module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub c: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_recovered: Option<String>,
}

pub fn family_tag(m: &Module) -> &'static str {
    match m.family() {
        Family::Omega { .. } => "OMEGA",
        Family::KQuotient { .. } => "KQUOTIENT",
        Family::Fraction { .. } => "FRACTION",
        Family::Natural => "NATURAL",
        Family::VPrime00 => "VPRIME00",
    }
}

/// `c` is recovered from `w_0` on the first basis vector. For `Omega` with
/// `c != 0`, `lambda` is recovered from the `t`-eigenvalue of `E(0)` and must
/// match the stored one.
pub fn fingerprint(m: &Module) -> Result<Fingerprint> {
    let v = ModVec::basis(m.basis(1)[0]);
    let c = recover_c(m, &v)?;
    let mut params = BTreeMap::new();
    let mut lambda_recovered = None;
    match m.family() {
        Family::Omega { lambda } => {
            params.insert("lambda".into(), lambda.to_string());
            if !c.is_zero() {
                let tv = recover_t_action(m, 1, &v)?;
                let got = tv.coeff(&Sym::E(0));
                if tv != v.scale(&got) || &got != lambda {
                    return Err(Error::InvalidModule(format!(
                        "recovered lambda {got} does not match {lambda}"
                    )));
                }
                lambda_recovered = Some(got.to_string());
            }
        }
        Family::KQuotient { beta } => {
            params.insert("beta".into(), beta.to_string());
            if let Some(alpha) = m.intermediate_alpha() {
                params.insert("alpha".into(), alpha.to_string());
            }
        }
        Family::Fraction { poles, alphas } => {
            let join = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            params.insert("poles".into(), join(poles));
            params.insert("alphas".into(), join(alphas));
        }
        Family::Natural | Family::VPrime00 => {}
    }
    Ok(Fingerprint {
        c: c.to_string(),
        family: family_tag(m).into(),
        params,
        b: m.twist().map(|b| b.to_string()),
        lambda_recovered,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoDecision {
    pub verdict: IsoVerdict,
    pub reason: String,
}

/// `(rank over C[t,t^-1], theta-eigenvalue)` for the rank-one families.
/// `None` rank means the module is not finitely generated over `C[t,t^-1]`
/// or is torsion.
fn rank_one_alpha(m: &Module) -> Option<LaurentPoly> {
    match m.family() {
        Family::Natural => Some(LaurentPoly::zero()),
        Family::KQuotient { .. } => m.intermediate_alpha(),
        Family::Fraction { poles, alphas } if poles.iter().all(Scalar::is_zero) => Some(
            alphas
                .first()
                .map(|a| LaurentPoly::constant(a.clone()))
                .unwrap_or_default(),
        ),
        _ => None,
    }
}

/// Rank as a `C[t,t^-1]`-module: `Some(d)` for free modules of rank `d`,
/// `None` for torsion or infinitely generated modules.
fn laurent_rank(m: &Module) -> Option<u32> {
    match m.family() {
        Family::Omega { .. } | Family::VPrime00 => None,
        Family::KQuotient { beta } => beta.degree(),
        Family::Natural => Some(1),
        Family::Fraction { poles, .. } => poles.iter().all(Scalar::is_zero).then_some(1),
    }
}

fn same_k_module(a: &Module, b: &Module) -> bool {
    match (a.family(), b.family()) {
        (Family::KQuotient { beta: x }, Family::KQuotient { beta: y }) => {
            x.to_generator(Generator::Theta).monic().ok() == y.to_generator(Generator::Theta).monic().ok()
        }
        (x, y) => x == y,
    }
}

/// Whether the underlying `K`-modules are isomorphic, where decidable.
pub fn k_isomorphic(a: &Module, b: &Module) -> (Option<bool>, String) {
    if same_k_module(a, b) {
        return (Some(true), "identical K-module data".into());
    }
    match (a.family(), b.family()) {
        (Family::VPrime00, _) | (_, Family::VPrime00) => {
            return (None, "the quotient by constants is not a K-module".into())
        }
        (Family::Omega { lambda: x }, Family::Omega { lambda: y }) => {
            return (Some(x == y), "Omega modules are classified by lambda".into())
        }
        (Family::Omega { .. }, _) | (_, Family::Omega { .. }) => {
            return (
                Some(false),
                "Omega is torsion over C[t,t^-1]; the other module is torsion-free".into(),
            )
        }
        _ => {}
    }
    if let (Some(x), Some(y)) = (rank_one_alpha(a), rank_one_alpha(b)) {
        let diff = (&x - &y).as_constant().and_then(|c| c.as_i64());
        let iso = diff.is_some() || x == y;
        return (
            Some(iso),
            "rank-one modules K/K(theta - alpha) are isomorphic iff the alphas differ by an integer".into(),
        );
    }
    match (laurent_rank(a), laurent_rank(b)) {
        (Some(x), Some(y)) if x != y => (Some(false), format!("free of different ranks {x} and {y} over C[t,t^-1]")),
        (Some(_), None) | (None, Some(_)) => (
            Some(false),
            "one module is finitely generated over C[t,t^-1], the other is not".into(),
        ),
        _ => (None, "K-module isomorphism is not decidable for this pair".into()),
    }
}

/// Decides `A_b = B_b1` following the classification: `A = B` as
/// `K`-modules with `b = b1`, or `b, b1` equal to `1, 0` with `theta A = A`.
pub fn decide_isomorphism(m1: &Module, m2: &Module) -> IsoDecision {
    let decision = |verdict, reason: &str| IsoDecision {
        verdict,
        reason: reason.to_string(),
    };
    if m1 == m2 {
        return decision(IsoVerdict::Isomorphic, "identical descriptors");
    }
    let (Some(b), Some(b1)) = (m1.twist(), m2.twist()) else {
        if let (None, None) = (m1.twist(), m2.twist()) {
            return decision(IsoVerdict::Isomorphic, "identical descriptors");
        }
        return decision(IsoVerdict::Unknown, "the quotient by constants is outside the classification");
    };
    let (kiso, kreason) = k_isomorphic(m1, m2);
    let zero = Scalar::zero();
    let one = Scalar::one();
    if b == b1 {
        return match kiso {
            Some(true) => decision(IsoVerdict::Isomorphic, &format!("same twist; {kreason}")),
            Some(false) => decision(IsoVerdict::NotIsomorphic, &format!("same twist; {kreason}")),
            None => decision(IsoVerdict::Unknown, &format!("same twist; {kreason}")),
        };
    }
    let c1 = b * &(b - &one);
    let c2 = b1 * &(b1 - &one);
    if c1 != c2 {
        return decision(IsoVerdict::NotIsomorphic, "w_0 eigenvalues b(b-1) differ");
    }
    if !((b == &one && b1 == &zero) || (b == &zero && b1 == &one)) {
        return decision(IsoVerdict::NotIsomorphic, "b(b-1) agrees but b differs outside {0, 1}");
    }
    let twisted_one = if b == &one { m1 } else { m2 };
    match (kiso, twisted_one.theta_surjective()) {
        (Some(false), _) => decision(IsoVerdict::NotIsomorphic, &kreason),
        (_, Some(false)) => decision(IsoVerdict::NotIsomorphic, "twists 1 and 0 need theta A = A, which fails"),
        (Some(true), Some(true)) => decision(IsoVerdict::Isomorphic, "twists 1 and 0 with theta A = A"),
        _ => decision(IsoVerdict::Unknown, "theta A = A or K-isomorphism undecided"),
    }
}

#[cfg(test)]
mod tests;
