//! The `qg` subcommands as library functions returning a JSON report and a
//! pass/fail verdict.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use qg_core::catalog::{defining_corep, sn_plus_presentation, FiniteGroup};
use qg_core::corep::{decompose, is_corep, is_kac, orthogonality_residual, q_matrix_gram, unitarize, Corep};
use qg_core::dualqg::{
    biduality, modular_report, unimodularity_report, DualElement, DualQG, IrrData, ModularReport,
    UnimodularityReport,
};
use qg_core::freestar::{
    delta_well_defined, eval_hom, normal_form, validate_magic, Presentation, DEFAULT_DEGREE_CAP,
    DEFAULT_MAX_STEPS,
};
use qg_core::hopfcore::{verify_algebra, verify_all, HopfData, StructureAlgebra, VerificationReport};
use qg_core::measures::{haar_cesaro, haar_solve, HaarResult};
use qg_core::random::seeded;
use qg_core::tenscore::{max_abs_diff_vec, CMatrix, Tolerance};

use crate::report::{checks, complex, matrix, num, vector};
use crate::schema::{self, CorepSpec, Payload};

/// Exit status: 0 pass, 1 mathematical failure, 2 input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Input = 2,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CmdError {
    /// Unreadable, malformed or inconsistent input.
    Input(String),
    /// The computation itself failed; the report carries the reason.
    Math(String),
}

impl From<qg_core::Error> for CmdError {
    fn from(e: qg_core::Error) -> Self {
        CmdError::Math(e.to_string())
    }
}

type CmdResult = Result<(Value, bool), CmdError>;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub tol: Tolerance,
    pub seed: u64,
}

/// The loaded contents of a spec file.
pub enum Loaded {
    Algebra(StructureAlgebra),
    Hopf {
        h: Arc<HopfData>,
        coreps: BTreeMap<String, CorepSpec>,
        group: Option<FiniteGroup>,
    },
    Presentation(Presentation),
    Irr(Vec<CMatrix>),
    Magic(Vec<Vec<CMatrix>>),
}

pub struct Input {
    pub kind: &'static str,
    pub name: String,
    pub data: Loaded,
}

pub fn load(path: &Path) -> Result<Input, CmdError> {
    let spec = schema::load(path).map_err(CmdError::Input)?;
    from_payload(spec.payload).map_err(CmdError::Input)
}

pub fn from_payload(p: Payload) -> Result<Input, String> {
    let kind = p.kind();
    let name = p.name().to_string();
    let data = match p {
        Payload::Algebra(s) => Loaded::Algebra(schema::algebra(&s)?),
        Payload::Hopf(s) => Loaded::Hopf {
            h: Arc::new(schema::hopf(&s)?),
            coreps: s.coreps,
            group: None,
        },
        Payload::Group(s) => {
            let g = schema::group(&s)?;
            Loaded::Hopf {
                h: Arc::new(schema::group_hopf(&s, &g)?),
                coreps: BTreeMap::new(),
                group: Some(g),
            }
        }
        Payload::Presentation(s) => Loaded::Presentation(schema::presentation(&s)?),
        Payload::Irrdata(s) => Loaded::Irr(schema::q_blocks(&s)?),
        Payload::Magic(s) => Loaded::Magic(schema::magic_entries(&s)?),
    };
    Ok(Input { kind, name, data })
}

fn header(command: &str, input: &Input) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("kind".into(), json!(input.kind));
    m.insert("name".into(), json!(input.name));
    m
}

fn finish(mut m: serde_json::Map<String, Value>, passed: bool) -> (Value, bool) {
    m.insert("passed".into(), json!(passed));
    (Value::Object(m), passed)
}

fn wrong_kind(command: &str, kind: &str) -> CmdError {
    CmdError::Input(format!("'{command}' does not accept a {kind} spec"))
}

pub fn verify(input: &Input, opts: Options) -> CmdResult {
    let tol = opts.tol;
    let mut m = header("verify", input);
    let report = match &input.data {
        Loaded::Algebra(a) => verify_algebra(a, tol),
        Loaded::Hopf { h, .. } => verify_all(h, tol),
        Loaded::Presentation(p) => match &p.delta {
            Some(d) => delta_well_defined(p, d, DEFAULT_DEGREE_CAP, tol)?,
            None => return Err(CmdError::Input("presentation carries no delta to verify".into())),
        },
        Loaded::Irr(qs) => {
            let src = IrrData::truncated(qs.clone(), tol)?;
            modular_report(&src, tol)?.report
        }
        Loaded::Magic(u) => validate_magic(u, tol)?,
    };
    let passed = report.passed();
    m.insert("checks".into(), checks(&report));
    m.insert("failures".into(), json!(report.failures()));
    Ok(finish(m, passed))
}

pub fn host<'a>(input: &'a Input, command: &str) -> Result<&'a Arc<HopfData>, CmdError> {
    match &input.data {
        Loaded::Hopf { h, .. } => Ok(h),
        _ => Err(wrong_kind(command, input.kind)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Solve,
    Cesaro,
    Both,
}

fn haar_json(r: &HaarResult, tol: Tolerance) -> Value {
    json!({
        "state": vector(r.state.coeffs()),
        "residual": num(r.residual),
        "iterations": r.iterations,
        "tracial": r.state.is_tracial(tol),
        "trace_residual": num(r.state.trace_residual()),
    })
}

pub fn haar(input: &Input, method: Method, max_iter: usize, opts: Options) -> CmdResult {
    let h = host(input, "haar")?;
    let tol = opts.tol;
    let mut m = header("haar", input);
    m.insert("labels".into(), json!(h.labels()));
    let solve = match method {
        Method::Solve | Method::Both => Some(haar_solve(h, tol)?),
        Method::Cesaro => None,
    };
    let cesaro = match method {
        Method::Cesaro | Method::Both => Some(haar_cesaro(h, None, max_iter, tol, opts.seed)?),
        Method::Solve => None,
    };
    let mut passed = true;
    if let (Some(a), Some(b)) = (&solve, &cesaro) {
        let gap = max_abs_diff_vec(a.state.coeffs(), b.state.coeffs());
        let ok = gap <= 10.0 * tol.bound(1.0);
        m.insert("agreement".into(), json!({ "difference": num(gap), "passed": ok }));
        passed &= ok;
    }
    if let Some(r) = &solve {
        m.insert("solve".into(), haar_json(r, tol));
    }
    if let Some(r) = &cesaro {
        m.insert("cesaro".into(), haar_json(r, tol));
    }
    Ok(finish(m, passed))
}

fn resolve_corep(input: &Input, name: &str) -> Result<Corep, CmdError> {
    let Loaded::Hopf { h, coreps, group } = &input.data else {
        return Err(wrong_kind("decompose", input.kind));
    };
    if let Some(s) = coreps.get(name) {
        return schema::corep(s, h.clone()).map_err(CmdError::Input);
    }
    match (name, group) {
        ("regular", _) => Ok(Corep::regular(h.clone())),
        ("defining", Some(g)) => {
            defining_corep(g, h.clone()).map_err(|e| CmdError::Input(e.to_string()))
        }
        _ => Err(CmdError::Input(format!("unknown corepresentation '{name}'"))),
    }
}

pub fn decompose_cmd(input: &Input, corep: &str, opts: Options) -> CmdResult {
    let h = host(input, "decompose")?;
    let tol = opts.tol;
    let mut rng = seeded(opts.seed);
    let u = resolve_corep(input, corep)?;
    let mut m = header("decompose", input);
    m.insert("corep".into(), json!(corep));
    m.insert("size".into(), json!(u.size()));
    if !is_corep(&u, tol) {
        return Err(qg_core::Error::NotACorep { residual: u.corep_residual() }.into());
    }
    let haar = haar_solve(h, tol)?.state;
    let unitary = u.is_unitary(tol);
    let u = if unitary { u } else { unitarize(&u, tol)?.0 };
    m.insert("unitarized".into(), json!(!unitary));
    let mut dec = decompose(&u, tol, &mut rng)?;
    dec.summands.sort_by_key(|s| s.irrep.size());
    let mut qs = Vec::new();
    let mut summands = Vec::new();
    for s in &dec.summands {
        let q = q_matrix_gram(&s.irrep, &haar, tol)?;
        summands.push(json!({
            "dim": s.irrep.size(),
            "multiplicity": s.multiplicity,
            "d": num(q.d),
            "q": matrix(&q.q),
            "intertwiners": s.isometries.iter().map(matrix).collect::<Vec<_>>(),
        }));
        qs.push(q);
    }
    let irreps: Vec<Corep> = dec.summands.iter().map(|s| s.irrep.clone()).collect();
    let (orth_rows, orth_cols) = orthogonality_residual(&irreps, &qs, &haar);
    let kac = is_kac(h, tol, &mut rng)?;
    let reassembly_ok = tol.scaled(100.0).accepts(dec.residual, 1.0);
    let orth_ok = tol.accepts(orth_rows, 1.0) && tol.accepts(orth_cols, 1.0);
    m.insert("dims".into(), json!(dec.dims()));
    m.insert(
        "multiplicities".into(),
        json!(dec.summands.iter().map(|s| s.multiplicity).collect::<Vec<_>>()),
    );
    m.insert("summands".into(), Value::Array(summands));
    m.insert("reassembly_residual".into(), num(dec.residual));
    m.insert(
        "orthogonality".into(),
        json!({ "first": num(orth_rows), "second": num(orth_cols), "passed": orth_ok }),
    );
    m.insert(
        "kac".into(),
        json!({
            "kac": kac.is_kac(),
            "q_identity": kac.q_identity,
            "q_residual": num(kac.q_residual),
            "antipode_involutive": kac.antipode_involutive,
            "antipode_residual": num(kac.antipode_residual),
            "haar_tracial": kac.haar_tracial,
            "trace_residual": num(kac.trace_residual),
            "dims_equal": kac.dims_equal,
            "dim_gap": num(kac.dim_gap),
        }),
    );
    Ok(finish(m, reassembly_ok && orth_ok))
}

fn blocks(x: &DualElement) -> Value {
    Value::Array(x.blocks.iter().map(matrix).collect())
}

fn modular_json(r: &ModularReport) -> Value {
    json!({
        "q": blocks(&r.q),
        "q_is_identity": r.q_is_identity,
        "trace_gap": num(r.trace_gap),
        "min_excess": num(r.min_excess),
        "weight_residual": num(r.weight_residual),
        "weight_gap": num(r.weight_gap),
        "witness": r.witness.as_ref().map(blocks),
        "delta_residuals": r.delta_residuals.map(|(a, b)| json!([num(a), num(b)])),
        "checks": checks(&r.report),
        "note": r.note,
    })
}

fn unimodularity_json(r: &UnimodularityReport) -> Value {
    let res = |i: usize| r.residuals[i].map(num);
    json!({
        "unimodular": r.is_unimodular(),
        "haar_tracial": r.haar_tracial,
        "weights_equal": r.weights_equal,
        "q_identity": r.q_identity,
        "antipode_involutive": r.antipode_involutive,
        "antipode_bounded": r.antipode_bounded,
        "residuals": [res(0), res(1), res(2), res(3)],
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({ "passed": r.passed(), "checks": checks(r) })
}

pub fn dual(input: &Input, opts: Options) -> CmdResult {
    let tol = opts.tol;
    let mut m = header("dual", input);
    match &input.data {
        Loaded::Irr(qs) => {
            let src = IrrData::truncated(qs.clone(), tol)?;
            let modular = modular_report(&src, tol)?;
            let unimod = unimodularity_report(&src, tol)?;
            m.insert("source".into(), json!("truncated"));
            m.insert("blocks".into(), json!(src.dims()));
            m.insert("modular".into(), modular_json(&modular));
            m.insert("unimodularity".into(), unimodularity_json(&unimod));
            let passed = modular.report.passed();
            Ok(finish(m, passed))
        }
        Loaded::Hopf { h, .. } => {
            let mut rng = seeded(opts.seed);
            let src = IrrData::finite(h, tol, &mut rng)?;
            let d = DualQG::new(src)?;
            let roundtrip = d.roundtrip_residual();
            let roundtrip_ok = tol.accepts(roundtrip, 1.0);
            let structure = d.verify_structure(tol);
            let invariance = d.verify_dual_invariance(tol);
            let modular = modular_report(d.src(), tol)?;
            let unimod = unimodularity_report(d.src(), tol)?;
            let bid = biduality(h, tol, &mut rng)?;
            m.insert("source".into(), json!("finite"));
            m.insert("blocks".into(), json!(d.dims()));
            m.insert("fourier_roundtrip".into(), json!({ "residual": num(roundtrip), "passed": roundtrip_ok }));
            m.insert("structure".into(), report_json(&structure));
            m.insert("invariance".into(), report_json(&invariance));
            m.insert("modular".into(), modular_json(&modular));
            m.insert("unimodularity".into(), unimodularity_json(&unimod));
            m.insert("biduality".into(), json!({ "isomorphic": bid.passed(), "checks": checks(&bid.report) }));
            let passed = roundtrip_ok
                && structure.passed()
                && invariance.passed()
                && modular.report.passed()
                && bid.passed();
            Ok(finish(m, passed))
        }
        _ => Err(wrong_kind("dual", input.kind)),
    }
}

pub fn rewrite(input: &Input, expr: Option<&str>, degree_cap: Option<usize>, opts: Options) -> CmdResult {
    let Loaded::Presentation(p) = &input.data else {
        return Err(wrong_kind("rewrite", input.kind));
    };
    let mut m = header("rewrite", input);
    let mut passed = true;
    if let Some(e) = expr {
        let poly = p.parse_poly(e).map_err(|e| CmdError::Input(e.to_string()))?;
        let nf = normal_form(&poly, p, DEFAULT_MAX_STEPS)?;
        m.insert("expr".into(), json!(e));
        m.insert("normal_form".into(), json!(p.format_poly(&nf)));
        m.insert(
            "terms".into(),
            Value::Array(
                nf.terms()
                    .map(|(w, &z)| {
                        let word: Vec<String> = w.0.iter().map(|&l| p.letter_name(l)).collect();
                        json!([complex(z), word.join(" ")])
                    })
                    .collect(),
            ),
        );
    }
    if expr.is_none() || degree_cap.is_some() {
        let Some(d) = &p.delta else {
            return Err(CmdError::Input("presentation carries no delta".into()));
        };
        let cap = degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
        let r = delta_well_defined(p, d, cap, opts.tol)?;
        passed &= r.passed();
        m.insert("degree_cap".into(), json!(cap));
        m.insert("delta".into(), report_json(&r));
    }
    Ok(finish(m, passed))
}

pub fn magic(input: &Input, opts: Options) -> CmdResult {
    let Loaded::Magic(u) = &input.data else {
        return Err(wrong_kind("magic", input.kind));
    };
    let tol = opts.tol;
    let mut m = header("magic", input);
    let r = validate_magic(u, tol)?;
    let pres = sn_plus_presentation(u.len())?;
    let assignment: Vec<CMatrix> = u.iter().flatten().cloned().collect();
    let e = eval_hom(&pres, &assignment, tol)?;
    m.insert("n".into(), json!(u.len()));
    m.insert("magic".into(), report_json(&r));
    m.insert("relations".into(), report_json(&e));
    Ok(finish(m, r.passed() && e.passed()))
}

/// Runs a command body and maps its result to an exit status and the text
/// destined for stdout and stderr.
pub fn conclude(result: CmdResult, command: &str) -> (Status, String, String) {
    match result {
        Ok((v, passed)) => {
            let status = if passed { Status::Pass } else { Status::Fail };
            (status, crate::report::render(v), String::new())
        }
        Err(CmdError::Math(msg)) => {
            let v = json!({ "command": command, "passed": false, "error": msg });
            (Status::Fail, crate::report::render(v), String::new())
        }
        Err(CmdError::Input(msg)) => (Status::Input, String::new(), format!("error: {msg}\n")),
    }
}
