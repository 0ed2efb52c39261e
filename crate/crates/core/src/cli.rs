//! Command-line dispatch. [`run`] maps an argument list to output text and
//! an exit code: 0 for pass or verdict, 1 for fail, 2 for errors.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_laurent, parse_modvec, parse_module, parse_ore, parse_poly, parse_scalar, parse_scalar_list};
use crate::factor::{
    complete_square, construct_reducible, irreducible_by_degree, polynomial_minus_t, search_witness,
    transport_factors, verify_factorization, verify_transport, FactorWitness, SearchOutcome, SearchSpec,
};
use crate::laurent::LaurentPoly;
use crate::modules::Module;
use crate::ore::OreElem;
use crate::report::{env_seed, Report, Status};
use crate::structure::{
    bracket_check, decide_isomorphism, fingerprint, hvir_check, omega_formula_check, submodule_probe,
    verify_certificate, wk_check, CheckReport,
};
use crate::{suites, Generator};

#[derive(Parser, Debug)]
#[command(name = "vtwist", version, about = "Exact computations with twisted Virasoro modules")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites; defaults to $VTWIST_SEED or 1729.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Arithmetic in K = C[t,t^-1][Th].
    #[command(subcommand)]
    Ore(OreCmd),
    /// Identity checks on modules and in K.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Search for a proper submodule inside a finite window.
    Probe(ProbeArgs),
    /// Isomorphism invariants of a module.
    Fingerprint(ModuleArgs),
    /// Decide whether two twisted modules are isomorphic.
    Iso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Factorization of Th^2 - f.
    #[command(subcommand)]
    Factor(FactorCmd),
    /// Apply an operator to a module vector.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Rerun the command stored in a JSON report and compare byte for byte.
    Replay {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand, Debug)]
enum OreCmd {
    Mul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    Bracket {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Right division: left = q * right + r with deg r < deg right.
    Divide {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Rewrite in the other generator.
    Convert {
        #[arg(long)]
        expr: String,
        /// `th` or `dt`.
        #[arg(long)]
        to: String,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// [d_m, d_n] = (n - m) d_(m+n) on basis vectors.
    Bracket {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 5)]
        range: i64,
        #[arg(long, default_value_t = 10)]
        basis: usize,
    },
    /// w_k = b(b-1) t^k on basis vectors.
    Wk {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 4)]
        krange: i64,
        #[arg(long, default_value_t = 6)]
        basis: usize,
    },
    /// [d_n, t^m] = m t^(m+n) on basis vectors.
    Hvir {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 5)]
        range: i64,
        #[arg(long, default_value_t = 10)]
        basis: usize,
    },
    /// Closed form of d_n Th^k on Omega(lambda, b).
    OmegaFormula {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 5)]
        nrange: i64,
        #[arg(long, default_value_t = 5)]
        kmax: u32,
    },
    /// Seeded: the Virasoro relation among D_n(b) in K.
    VirasoroK {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        range: i64,
    },
    /// Seeded: w_k = b(b-1) t^k in K.
    WkIdentity {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        krange: i64,
    },
    /// Seeded: recovering t^k and b(b-1) from the Virasoro action.
    Recover {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Seeded: Th A_1 -> C[t,t^-1]/C intertwines d_n.
    ThetaToVprime {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Full descriptor, e.g. "omega(lambda=2, b=1)". Overrides the other flags.
    #[arg(long)]
    module: Option<String>,
    /// omega, kquotient, series, fraction, natural or vprime00.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    poles: Option<String>,
    #[arg(long)]
    alphas: Option<String>,
}

impl ModuleArgs {
    fn build(&self) -> Result<Module> {
        if let Some(m) = &self.module {
            return parse_module(m);
        }
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| Error::Usage("give --module or --family".into()))?;
        let family = match family {
            "kquot" => "kquotient",
            "vprime" => "vprime00",
            other => other,
        };
        let fields = [
            ("lambda", &self.lambda),
            ("beta", &self.beta),
            ("alpha", &self.alpha),
            ("poles", &self.poles),
            ("alphas", &self.alphas),
            ("b", &self.b),
        ];
        let kv: Vec<String> = fields
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k}={}", bracket_list(k, v))))
            .collect();
        parse_module(&format!("{family}({})", kv.join(", ")))
    }
}

fn bracket_list(key: &str, v: &str) -> String {
    if matches!(key, "poles" | "alphas") && !v.trim_start().starts_with('[') {
        format!("[{v}]")
    } else {
        v.to_string()
    }
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[command(flatten)]
    module: ModuleArgs,
    /// Starting vector, e.g. "E1" or "T(0)".
    #[arg(long)]
    seed_vec: String,
    /// Number of leading basis vectors spanning the window.
    #[arg(long, default_value_t = 7)]
    window: usize,
    /// Generators d_n with |n| <= nrange.
    #[arg(long, default_value_t = 3)]
    nrange: i64,
    /// Minimum word length explored.
    #[arg(long, default_value_t = 4)]
    length: usize,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Candidate poles, comma separated.
    #[arg(long, default_value = "")]
    poles: String,
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    h_lo: i64,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    h_hi: i64,
    /// Values tried for a coefficient the degrees leave free.
    #[arg(long = "box", default_value = "-2,-1,0,1,2", allow_hyphen_values = true)]
    coeff_box: String,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
}

impl SearchArgs {
    fn spec(&self) -> Result<SearchSpec> {
        Ok(SearchSpec {
            pole_candidates: parse_scalar_list(&self.poles)?,
            h_bounds: (self.h_lo, self.h_hi),
            coeff_box: parse_scalar_list(&self.coeff_box)?,
            budget: self.budget,
        })
    }

    fn inputs(&self, m: &mut BTreeMap<String, String>) -> Result<()> {
        m.insert("poles".into(), list_text(&parse_scalar_list(&self.poles)?));
        m.insert("h-lo".into(), self.h_lo.to_string());
        m.insert("h-hi".into(), self.h_hi.to_string());
        m.insert("box".into(), list_text(&parse_scalar_list(&self.coeff_box)?));
        m.insert("budget".into(), self.budget.to_string());
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
enum FactorCmd {
    /// f = h^2 - Th(h) + sum of pole terms, with its witness.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value = "")]
        poles: String,
    },
    /// Expand (Th - g)(Th + g) and compare with Th^2 - f.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value = "")]
        poles: String,
    },
    /// Degree certificate for Th^2 - f, or the family poly(Dt) - t.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Polynomial in t standing for the variable of poly(Dt) - t.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Th^2 + 2 f1 Th + f2 -> Th^2 - F; with --h, transport a witness back.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, default_value = "")]
        poles: String,
    },
    /// Bounded witness search.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Degree certificate if available, else a bounded search.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classify each line of a file; `#` starts a comment.
    Batch {
        #[arg(long)]
        file: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// Apply exactly one of d_n, t^m or an element of K to a vector.
    Act {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        vec: String,
        #[arg(long, allow_hyphen_values = true)]
        vir: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let seed = cli.seed.unwrap_or_else(env_seed);
    if let Cmd::Factor(FactorCmd::Batch { file, search }) = &cli.cmd {
        return batch(file, search, seed, cli.json);
    }
    let report = dispatch(&cli.cmd, seed);
    let code = report.exit_code();
    let text = if cli.json { report.to_json() } else { report.to_text() };
    (text, code)
}

/// Runs one command. Errors become reports with status `error`.
fn dispatch(cmd: &Cmd, seed: u64) -> Report {
    let name = command_name(cmd);
    let mut inputs = BTreeMap::new();
    match execute(cmd, seed, &mut inputs) {
        Ok((status, details)) => Report::new(&name, inputs, seed).with(status, details),
        Err(e) => Report::new(&name, inputs, seed).with(Status::Error, json!({ "error": e.to_string() })),
    }
}

fn command_name(cmd: &Cmd) -> String {
    let sub = match cmd {
        Cmd::Ore(c) => match c {
            OreCmd::Mul { .. } => "ore mul",
            OreCmd::Bracket { .. } => "ore bracket",
            OreCmd::Divide { .. } => "ore divide",
            OreCmd::Convert { .. } => "ore convert",
        },
        Cmd::Check(c) => match c {
            CheckCmd::Bracket { .. } => "check bracket",
            CheckCmd::Wk { .. } => "check wk",
            CheckCmd::Hvir { .. } => "check hvir",
            CheckCmd::OmegaFormula { .. } => "check omega-formula",
            CheckCmd::VirasoroK { .. } => "check virasoro-k",
            CheckCmd::WkIdentity { .. } => "check wk-identity",
            CheckCmd::Recover { .. } => "check recover",
            CheckCmd::ThetaToVprime { .. } => "check theta-to-vprime",
        },
        Cmd::Probe(_) => "probe",
        Cmd::Fingerprint(_) => "fingerprint",
        Cmd::Iso { .. } => "iso",
        Cmd::Factor(c) => match c {
            FactorCmd::Construct { .. } => "factor construct",
            FactorCmd::Verify { .. } => "factor verify",
            FactorCmd::Certify { .. } => "factor certify",
            FactorCmd::Reduce { .. } => "factor reduce",
            FactorCmd::Search { .. } => "factor search",
            FactorCmd::Classify { .. } => "factor classify",
            FactorCmd::Batch { .. } => "factor batch",
        },
        Cmd::Module(ModuleCmd::Act { .. }) => "module act",
        Cmd::Replay { .. } => "replay",
    };
    sub.to_string()
}

fn list_text(v: &[crate::Scalar]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn check_result(r: CheckReport) -> (Status, Value) {
    (Status::from_passed(r.passed), to_value(&r))
}

fn suite_result(r: suites::SuiteReport) -> (Status, Value) {
    (Status::from_passed(r.passed), to_value(&r))
}

fn ore_pair(left: &str, right: &str, inputs: &mut BTreeMap<String, String>) -> Result<(OreElem, OreElem)> {
    let (a, b) = (parse_ore(left)?, parse_ore(right)?);
    // both operands are lowered in Th so they can be combined
    let (a, b) = (a.to_generator(Generator::Theta), b.to_generator(Generator::Theta));
    inputs.insert("left".into(), a.to_string());
    inputs.insert("right".into(), b.to_string());
    Ok((a, b))
}

fn witness(h: &str, poles: &str, inputs: &mut BTreeMap<String, String>) -> Result<FactorWitness> {
    let h = parse_laurent(h)?;
    let poles = parse_scalar_list(poles)?;
    inputs.insert("h".into(), h.to_string());
    inputs.insert("poles".into(), list_text(&poles));
    Ok(FactorWitness { poles, h })
}

fn module_input(args: &ModuleArgs, inputs: &mut BTreeMap<String, String>) -> Result<Module> {
    let m = args.build()?;
    inputs.insert("module".into(), m.to_string());
    Ok(m)
}

fn execute(cmd: &Cmd, seed: u64, inputs: &mut BTreeMap<String, String>) -> Result<(Status, Value)> {
    match cmd {
        Cmd::Ore(c) => ore_command(c, inputs),
        Cmd::Check(c) => check_command(c, seed, inputs),
        Cmd::Probe(p) => {
            let m = module_input(&p.module, inputs)?;
            let v = parse_modvec(&p.seed_vec)?;
            inputs.insert("seed-vec".into(), v.to_string());
            inputs.insert("window".into(), p.window.to_string());
            inputs.insert("nrange".into(), p.nrange.to_string());
            inputs.insert("length".into(), p.length.to_string());
            m.check_vec(&v)?;
            let window = m.basis(p.window);
            let (report, cert) = submodule_probe(&m, Some(m.family()), &v, p.nrange, p.length, &window)?;
            let mut details = to_value(&report);
            if let Some(cert) = cert {
                let verified = verify_certificate(&m, &cert)?;
                details["certificate"] = json!({
                    "basis": cert.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    "verified": verified,
                });
            }
            Ok((Status::Verdict, details))
        }
        Cmd::Fingerprint(args) => {
            let m = module_input(args, inputs)?;
            Ok((Status::Verdict, to_value(&fingerprint(&m)?)))
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (parse_module(left)?, parse_module(right)?);
            inputs.insert("left".into(), a.to_string());
            inputs.insert("right".into(), b.to_string());
            let d = decide_isomorphism(&a, &b);
            let mut details = to_value(&d);
            details["left_fingerprint"] = fingerprint(&a).map(|f| to_value(&f)).unwrap_or(Value::Null);
            details["right_fingerprint"] = fingerprint(&b).map(|f| to_value(&f)).unwrap_or(Value::Null);
            Ok((Status::Verdict, details))
        }
        Cmd::Factor(c) => factor_command(c, inputs),
        Cmd::Module(ModuleCmd::Act { module, vec, vir, t, k }) => {
            let m = module_input(module, inputs)?;
            let v = parse_modvec(vec)?;
            m.check_vec(&v)?;
            inputs.insert("vec".into(), v.to_string());
            let (op, out) = match (vir, t, k) {
                (Some(n), None, None) => {
                    inputs.insert("vir".into(), n.to_string());
                    (format!("d_{n}"), m.vir_act(*n, &v)?)
                }
                (None, Some(j), None) => {
                    inputs.insert("t".into(), j.to_string());
                    (format!("t^{j}"), m.t_act(*j, &v)?)
                }
                (None, None, Some(x)) => {
                    let x = parse_ore(x)?;
                    inputs.insert("k".into(), x.to_string());
                    (x.to_string(), m.k_act(&x, &v)?)
                }
                _ => return Err(Error::Usage("give exactly one of --vir, --t, --k".into())),
            };
            Ok((Status::Verdict, json!({ "operator": op, "result": out.to_string() })))
        }
        Cmd::Replay { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Usage(format!("{file}: {e}")))?;
            let stored = Report::from_json(&text).map_err(|e| Error::Usage(format!("{file}: {e}")))?;
            inputs.insert("file".into(), file.clone());
            let mut args = vec!["vtwist".to_string(), "--json".to_string()];
            args.extend(stored.replay_args());
            let (fresh, _) = run(&args);
            let identical = fresh == stored.to_json();
            Ok((
                Status::from_passed(identical),
                json!({ "replayed": stored.command, "identical": identical }),
            ))
        }
    }
}

fn ore_command(c: &OreCmd, inputs: &mut BTreeMap<String, String>) -> Result<(Status, Value)> {
    let details = match c {
        OreCmd::Mul { left, right } => {
            let (a, b) = ore_pair(left, right, inputs)?;
            json!({ "product": (&a * &b).to_string() })
        }
        OreCmd::Bracket { left, right } => {
            let (a, b) = ore_pair(left, right, inputs)?;
            json!({ "bracket": a.bracket(&b)?.to_string() })
        }
        OreCmd::Divide { left, right } => {
            let (a, b) = ore_pair(left, right, inputs)?;
            let (q, r) = a.right_divide(&b)?;
            let recombined = &(&q * &b) + &r == a;
            json!({ "quotient": q.to_string(), "remainder": r.to_string(), "recombines": recombined })
        }
        OreCmd::Convert { expr, to } => {
            let target = match to.as_str() {
                "th" | "Th" => Generator::Theta,
                "dt" | "Dt" => Generator::Ddt,
                other => return Err(Error::Usage(format!("--to must be th or dt, not '{other}'"))),
            };
            let x = parse_ore(expr)?;
            inputs.insert("expr".into(), x.to_string());
            inputs.insert("to".into(), if target == Generator::Theta { "th" } else { "dt" }.into());
            json!({ "converted": x.to_generator(target).to_string() })
        }
    };
    Ok((Status::Verdict, details))
}

fn check_command(c: &CheckCmd, seed: u64, inputs: &mut BTreeMap<String, String>) -> Result<(Status, Value)> {
    let mut put = |k: &str, v: String| {
        inputs.insert(k.into(), v);
    };
    Ok(match c {
        CheckCmd::Bracket { module, range, basis } => {
            let m = module.build()?;
            put("module", m.to_string());
            put("range", range.to_string());
            put("basis", basis.to_string());
            check_result(bracket_check(&m, *range, *basis)?)
        }
        CheckCmd::Wk { module, krange, basis } => {
            let m = module.build()?;
            put("module", m.to_string());
            put("krange", krange.to_string());
            put("basis", basis.to_string());
            check_result(wk_check(&m, *krange, *basis)?)
        }
        CheckCmd::Hvir { module, range, basis } => {
            let m = module.build()?;
            put("module", m.to_string());
            put("range", range.to_string());
            put("basis", basis.to_string());
            check_result(hvir_check(&m, *range, *basis)?)
        }
        CheckCmd::OmegaFormula { lambda, b, nrange, kmax } => {
            let (lambda, b) = (parse_scalar(lambda)?, parse_scalar(b)?);
            put("lambda", lambda.to_string());
            put("b", b.to_string());
            put("nrange", nrange.to_string());
            put("kmax", kmax.to_string());
            check_result(omega_formula_check(&lambda, &b, *nrange, *kmax)?)
        }
        CheckCmd::VirasoroK { samples, range } => {
            put("samples", samples.to_string());
            put("range", range.to_string());
            suite_result(suites::virasoro_in_k(seed, *samples, *range))
        }
        CheckCmd::WkIdentity { samples, krange } => {
            put("samples", samples.to_string());
            put("krange", krange.to_string());
            suite_result(suites::wk_identity(seed, *samples, *krange))
        }
        CheckCmd::Recover { samples } => {
            put("samples", samples.to_string());
            suite_result(suites::recovery(seed, *samples)?)
        }
        CheckCmd::ThetaToVprime { samples } => {
            put("samples", samples.to_string());
            suite_result(suites::theta_to_vprime_suite(seed, *samples)?)
        }
    })
}

fn witness_json(w: &FactorWitness) -> Value {
    let (left, right) = w.factors();
    json!({
        "h": w.h.to_string(),
        "poles": w.poles.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "g": w.g1().to_string(),
        "left_factor": left.to_string(),
        "right_factor": right.to_string(),
    })
}

fn search_json(f: &LaurentPoly, args: &SearchArgs) -> Result<Value> {
    Ok(match search_witness(f, &args.spec()?)? {
        SearchOutcome::Found { witness, subsets } => {
            let check = verify_factorization(f, &witness);
            json!({
                "outcome": "FOUND",
                "witness": witness_json(&witness),
                "verified": check.passed,
                "subsets": subsets,
            })
        }
        SearchOutcome::NotFound { explored, subsets } => json!({
            "outcome": "NOT_FOUND",
            "explored": explored,
            "subsets": subsets,
            "note": "no witness within the bounds; this is not an irreducibility proof",
        }),
    })
}

fn classify_json(f: &LaurentPoly, args: &SearchArgs) -> Result<Value> {
    if let Some(cert) = irreducible_by_degree(f) {
        return Ok(json!({
            "outcome": "IRREDUCIBLE",
            "certificate": { "kind": cert.kind(), "data": cert.data() },
        }));
    }
    search_json(f, args)
}

fn factor_command(c: &FactorCmd, inputs: &mut BTreeMap<String, String>) -> Result<(Status, Value)> {
    match c {
        FactorCmd::Construct { h, poles } => {
            let w = witness(h, poles, inputs)?;
            let (f, w) = construct_reducible(&w.h, &w.poles)?;
            let check = verify_factorization(&f, &w);
            Ok((
                Status::Verdict,
                json!({ "f": f.to_string(), "witness": witness_json(&w), "verified": check.passed }),
            ))
        }
        FactorCmd::Verify { f, h, poles } => {
            let f = parse_laurent(f)?;
            inputs.insert("f".into(), f.to_string());
            let w = witness(h, poles, inputs)?;
            let check = verify_factorization(&f, &w);
            Ok((Status::from_passed(check.passed), to_value(&check)))
        }
        FactorCmd::Certify { f, poly } => match (f, poly) {
            (Some(f), None) => {
                let f = parse_laurent(f)?;
                inputs.insert("f".into(), f.to_string());
                let cert = irreducible_by_degree(&f);
                let details = match cert {
                    Some(c) => json!({ "certificate": { "kind": c.kind(), "data": c.data() } }),
                    None => json!({ "certificate": Value::Null, "note": "degree tests are inconclusive" }),
                };
                Ok((Status::Verdict, details))
            }
            (None, Some(p)) => {
                let p = parse_poly(p)?;
                inputs.insert("poly".into(), p.to_laurent().to_string());
                let (cert, beta) = polynomial_minus_t(&p)?;
                Ok((
                    Status::Verdict,
                    json!({ "certificate": { "kind": cert.kind(), "data": cert.data() }, "beta": beta.to_string() }),
                ))
            }
            _ => Err(Error::Usage("give exactly one of --f, --poly".into())),
        },
        FactorCmd::Reduce { f1, f2, h, poles } => {
            let (f1, f2) = (parse_laurent(f1)?, parse_laurent(f2)?);
            inputs.insert("f1".into(), f1.to_string());
            inputs.insert("f2".into(), f2.to_string());
            let big_f = complete_square(&f1, &f2);
            let mut details = json!({ "F": big_f.to_string() });
            let Some(h) = h else {
                return Ok((Status::Verdict, details));
            };
            let w = witness(h, poles, inputs)?;
            let inner = verify_factorization(&big_f, &w).passed;
            let (left, right) = transport_factors(&f1, &w);
            let transported = inner && verify_transport(&f1, &f2, &w);
            details["witness_verified"] = json!(inner);
            details["left_factor"] = json!(left.to_string());
            details["right_factor"] = json!(right.to_string());
            details["transport_verified"] = json!(transported);
            Ok((Status::from_passed(transported), details))
        }
        FactorCmd::Search { f, search } | FactorCmd::Classify { f, search } => {
            let f = parse_laurent(f)?;
            inputs.insert("f".into(), f.to_string());
            search.inputs(inputs)?;
            let details = match c {
                FactorCmd::Search { .. } => search_json(&f, search)?,
                _ => classify_json(&f, search)?,
            };
            Ok((Status::Verdict, details))
        }
        FactorCmd::Batch { .. } => unreachable!("handled in run"),
    }
}

/// One `factor classify` report per nonblank, noncomment line.
fn batch(file: &str, search: &SearchArgs, seed: u64, json_out: bool) -> (String, i32) {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            let inputs = [("file".to_string(), file.to_string())].into_iter().collect();
            let r = Report::new("factor batch", inputs, seed)
                .with(Status::Error, json!({ "error": format!("{file}: {e}") }));
            return (if json_out { r.to_json() } else { r.to_text() }, 2);
        }
    };
    let mut out = String::new();
    let mut code = 0;
    for (lineno, line) in text.lines().enumerate() {
        let expr = line.split('#').next().unwrap_or("").trim();
        if expr.is_empty() {
            continue;
        }
        let cmd = Cmd::Factor(FactorCmd::Classify {
            f: expr.to_string(),
            search: search.clone(),
        });
        let r = dispatch(&cmd, seed);
        code = code.max(r.exit_code());
        if json_out {
            out.push_str(&r.to_json_line());
        } else {
            let outcome = match r.status {
                Status::Error => format!("error: {}", r.details["error"].as_str().unwrap_or("?")),
                _ => r.details["outcome"].as_str().unwrap_or("?").to_string(),
            };
            let f = r.inputs.get("f").map_or(expr, String::as_str);
            out.push_str(&format!("line {}: {f}: {outcome}", lineno + 1));
        }
        out.push('\n');
    }
    (out, code)
}
