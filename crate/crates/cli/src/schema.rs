//! JSON input schema, version "1".
//!
//! Complex numbers are `[re, im]`. Structure constants are sparse: the
//! multiplication lists `[i, j, k, re, im]` for `e_i e_j ∋ (re + i·im) e_k`,
//! the comultiplication lists `[i, p, re, im]` for the coefficient of
//! `e_j ⊗ e_k` in `Δ(e_i)` with pair index `p = j·dim + k`. The involution is
//! `v* = J·conj(v)`, given as `{"J": dense, "conjugate": true}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use qg_core::catalog::{function_algebra, group_algebra, FiniteGroup};
use qg_core::corep::Corep;
use qg_core::freestar::{Presentation, Rule, TensorPoly, Word, WordPoly};
use qg_core::hopfcore::{HopfData, StructureAlgebra, StructureCoalgebra};
use qg_core::tenscore::{c, CMatrix, CVector};

pub const VERSION: &str = "1";

pub type Complex = [f64; 2];
pub type Dense = Vec<Vec<Complex>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecFile {
    pub version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Algebra(AlgebraSpec),
    Hopf(HopfSpec),
    Group(GroupSpec),
    Presentation(PresentationSpec),
    Irrdata(IrrSpec),
    Magic(MagicSpec),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Hopf(_) => "hopf",
            Payload::Group(_) => "group",
            Payload::Presentation(_) => "presentation",
            Payload::Irrdata(_) => "irrdata",
            Payload::Magic(_) => "magic",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Payload::Algebra(s) => &s.name,
            Payload::Hopf(s) => &s.algebra.name,
            Payload::Group(s) => &s.name,
            Payload::Presentation(s) => &s.name,
            Payload::Irrdata(s) => &s.name,
            Payload::Magic(s) => &s.name,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarSpec {
    #[serde(rename = "J")]
    pub j: Dense,
    pub conjugate: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub unit: Vec<Complex>,
    pub mult: Vec<(usize, usize, usize, f64, f64)>,
    pub star: StarSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorepSpec {
    pub size: usize,
    /// `[i, j, k, [re, im]]`: coefficient of `e_k` in `u_ij`.
    pub coeffs: Vec<(usize, usize, usize, Complex)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfSpec {
    #[serde(flatten)]
    pub algebra: AlgebraSpec,
    pub delta: Vec<(usize, usize, f64, f64)>,
    pub counit: Vec<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Dense>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coreps: BTreeMap<String, CorepSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    GroupAlgebra,
    FunctionAlgebra,
}

/// A finite group given by its Cayley table or by generating permutations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub name: String,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
}

/// `[[re, im], "word"]`; the word `"1"` is the empty word.
pub type Term = (Complex, String);
/// `[[re, im], "left word", "right word"]`.
pub type TensorTerm = (Complex, String, String);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleSpec {
    pub lhs: String,
    pub rhs: Vec<Term>,
    #[serde(default)]
    pub tier: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationSpec {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    pub relations: Vec<Vec<Term>>,
    #[serde(default)]
    pub rules: Vec<RuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<TensorTerm>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrSpec {
    #[serde(default)]
    pub name: String,
    /// One positive matrix `Q_α` per block.
    pub blocks: Vec<Dense>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MagicSpec {
    #[serde(default)]
    pub name: String,
    /// `n × n` array of equally sized square operator matrices.
    pub entries: Vec<Vec<Dense>>,
}

pub fn parse(text: &str) -> Result<SpecFile, String> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| format!("parse error: {e}"))?;
    if spec.version != VERSION {
        return Err(format!("unsupported schema version '{}'", spec.version));
    }
    Ok(spec)
}

pub fn load(path: &std::path::Path) -> Result<SpecFile, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse(&text)
}

fn cx(z: Complex) -> Result<qg_core::tenscore::C64, String> {
    if z[0].is_finite() && z[1].is_finite() {
        Ok(c(z[0], z[1]))
    } else {
        Err("non-finite number".into())
    }
}

fn vector(v: &[Complex], n: usize, what: &str) -> Result<CVector, String> {
    if v.len() != n {
        return Err(format!("{what} has length {}, expected {n}", v.len()));
    }
    Ok(CVector::from_vec(v.iter().map(|&z| cx(z)).collect::<Result<_, _>>()?))
}

pub fn dense(m: &Dense, rows: usize, cols: usize, what: &str) -> Result<CMatrix, String> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(format!("{what} must be {rows}x{cols}"));
    }
    let mut out = CMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            out[(i, j)] = cx(z)?;
        }
    }
    Ok(out)
}

fn square(m: &Dense, what: &str) -> Result<CMatrix, String> {
    dense(m, m.len(), m.len(), what)
}

pub fn algebra(s: &AlgebraSpec) -> Result<StructureAlgebra, String> {
    let n = s.dim;
    if n == 0 {
        return Err("dimension must be positive".into());
    }
    let mut mult = CMatrix::zeros(n, n * n);
    for &(i, j, k, re, im) in &s.mult {
        if i >= n || j >= n || k >= n {
            return Err(format!("mult entry ({i}, {j}, {k}) out of range"));
        }
        mult[(k, i * n + j)] += cx([re, im])?;
    }
    if !s.star.conjugate {
        return Err("star must be conjugate-linear (conjugate: true)".into());
    }
    let star = dense(&s.star.j, n, n, "star J")?;
    let unit = vector(&s.unit, n, "unit")?;
    StructureAlgebra::new(s.labels.clone(), mult, unit, star).map_err(|e| e.to_string())
}

pub fn hopf(s: &HopfSpec) -> Result<HopfData, String> {
    let alg = algebra(&s.algebra)?;
    let n = alg.dim();
    let mut delta = CMatrix::zeros(n * n, n);
    for &(i, p, re, im) in &s.delta {
        if i >= n || p >= n * n {
            return Err(format!("delta entry ({i}, {p}) out of range"));
        }
        delta[(p, i)] += cx([re, im])?;
    }
    let counit = vector(&s.counit, n, "counit")?;
    let coalg = StructureCoalgebra::new(delta, counit).map_err(|e| e.to_string())?;
    let antipode = s.antipode.as_ref().map(|m| dense(m, n, n, "antipode")).transpose()?;
    HopfData::new(s.algebra.name.clone(), alg, coalg, antipode).map_err(|e| e.to_string())
}

pub fn group(s: &GroupSpec) -> Result<FiniteGroup, String> {
    let g = match (&s.cayley, &s.permutations) {
        (Some(table), None) => {
            let labels = if s.labels.is_empty() {
                (0..table.len()).map(|i| i.to_string()).collect()
            } else {
                s.labels.clone()
            };
            FiniteGroup::from_table(&s.name, labels, table.clone())
        }
        (None, Some(gens)) => FiniteGroup::from_permutations(&s.name, gens),
        _ => return Err("group needs exactly one of 'cayley' or 'permutations'".into()),
    }
    .map_err(|e| e.to_string())?;
    if s.order.is_some_and(|o| o != g.order()) {
        return Err(format!("declared order differs from the table ({})", g.order()));
    }
    if s.identity.is_some_and(|e| e != g.identity()) {
        return Err("declared identity is inconsistent with the table".into());
    }
    if let Some(inv) = &s.inverse {
        if inv.len() != g.order() || inv.iter().enumerate().any(|(a, &b)| g.inverse(a) != b) {
            return Err("declared inverse map is inconsistent with the table".into());
        }
    }
    Ok(g)
}

pub fn group_hopf(s: &GroupSpec, g: &FiniteGroup) -> Result<HopfData, String> {
    match s.construction {
        Construction::GroupAlgebra => group_algebra(g),
        Construction::FunctionAlgebra => function_algebra(g),
    }
    .map_err(|e| e.to_string())
}

pub fn corep(s: &CorepSpec, host: Arc<HopfData>) -> Result<Corep, String> {
    let n = s.size;
    let dim = host.dim();
    let mut coeffs = vec![CVector::zeros(dim); n * n];
    for &(i, j, k, z) in &s.coeffs {
        if i >= n || j >= n || k >= dim {
            return Err(format!("corep entry ({i}, {j}, {k}) out of range"));
        }
        coeffs[i * n + j][k] += cx(z)?;
    }
    Corep::new(host, n, coeffs).map_err(|e| e.to_string())
}

fn word(p: &Presentation, s: &str) -> Result<Word, String> {
    p.parse_word(s).map_err(|e| e.to_string())
}

fn poly(p: &Presentation, terms: &[Term]) -> Result<WordPoly, String> {
    let mut out = WordPoly::zero();
    for (z, w) in terms {
        out.add_term(cx(*z)?, word(p, w)?);
    }
    Ok(out)
}

pub fn presentation(s: &PresentationSpec) -> Result<Presentation, String> {
    if s.generators.is_empty() {
        return Err("presentation needs at least one generator".into());
    }
    let mut p = Presentation::new(s.name.clone(), s.generators.clone());
    p.parameters = s.parameters.clone();
    p.relations = s.relations.iter().map(|r| poly(&p, r)).collect::<Result<_, _>>()?;
    let mut rules = Vec::new();
    for r in &s.rules {
        let lhs = word(&p, &r.lhs)?;
        if lhs.is_empty() {
            return Err("rule with empty left-hand side".into());
        }
        rules.push(Rule { lhs, rhs: poly(&p, &r.rhs)?, tier: r.tier });
    }
    p.rules = rules;
    if let Some(d) = &s.delta {
        if d.len() != s.generators.len() {
            return Err("delta needs one image per generator".into());
        }
        let mut images = Vec::new();
        for img in d {
            let mut t = TensorPoly::zero();
            for (z, l, r) in img {
                t.add_term(cx(*z)?, word(&p, l)?, word(&p, r)?);
            }
            images.push(t);
        }
        p.delta = Some(images);
    }
    Ok(p)
}

pub fn q_blocks(s: &IrrSpec) -> Result<Vec<CMatrix>, String> {
    if s.blocks.is_empty() {
        return Err("irrdata needs at least one block".into());
    }
    s.blocks.iter().map(|b| square(b, "Q block")).collect()
}

pub fn magic_entries(s: &MagicSpec) -> Result<Vec<Vec<CMatrix>>, String> {
    let n = s.entries.len();
    if n == 0 || s.entries.iter().any(|r| r.len() != n) {
        return Err("magic entries must form a nonempty square array".into());
    }
    let k = s.entries[0][0].len();
    s.entries
        .iter()
        .map(|row| row.iter().map(|m| dense(m, k, k, "magic entry")).collect())
        .collect()
}

// Export from in-memory structures.

fn complex(z: qg_core::tenscore::C64) -> Complex {
    [z.re, z.im]
}

pub fn dense_out(m: &CMatrix) -> Dense {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex(m[(i, j)])).collect()).collect()
}

pub fn hopf_spec(h: &HopfData) -> HopfSpec {
    let n = h.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let z = h.alg.mult()[(k, i * n + j)];
                if z.norm() > 0.0 {
                    mult.push((i, j, k, z.re, z.im));
                }
            }
        }
    }
    let mut delta = Vec::new();
    for i in 0..n {
        for &((j, k), z) in h.coalg.delta_terms(i) {
            delta.push((i, j * n + k, z.re, z.im));
        }
    }
    delta.sort_by_key(|d| (d.0, d.1));
    HopfSpec {
        algebra: AlgebraSpec {
            name: h.name.clone(),
            dim: n,
            labels: h.labels().to_vec(),
            unit: h.alg.unit().iter().map(|&z| complex(z)).collect(),
            mult,
            star: StarSpec { j: dense_out(h.alg.star_matrix()), conjugate: true },
        },
        delta,
        counit: h.coalg.counit().iter().map(|&z| complex(z)).collect(),
        antipode: h.antipode.as_ref().map(dense_out),
        coreps: BTreeMap::new(),
    }
}

pub fn corep_spec(u: &Corep) -> CorepSpec {
    let n = u.size();
    let mut coeffs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, &z) in u.coeff(i, j).iter().enumerate() {
                if z.norm() > 0.0 {
                    coeffs.push((i, j, k, complex(z)));
                }
            }
        }
    }
    CorepSpec { size: n, coeffs }
}

fn word_string(p: &Presentation, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.0.iter().map(|&l| p.letter_name(l)).collect::<Vec<_>>().join(" ")
    }
}

fn terms_out(p: &Presentation, q: &WordPoly) -> Vec<Term> {
    q.terms().map(|(w, &z)| (complex(z), word_string(p, w))).collect()
}

pub fn presentation_spec(p: &Presentation) -> PresentationSpec {
    PresentationSpec {
        name: p.name.clone(),
        generators: p.generators.clone(),
        parameters: p.parameters.clone(),
        relations: p.relations.iter().map(|r| terms_out(p, r)).collect(),
        rules: p
            .rules
            .iter()
            .map(|r| RuleSpec { lhs: word_string(p, &r.lhs), rhs: terms_out(p, &r.rhs), tier: r.tier })
            .collect(),
        delta: p.delta.as_ref().map(|d| {
            d.iter()
                .map(|t| {
                    t.terms()
                        .map(|((l, r), &z)| (complex(z), word_string(p, l), word_string(p, r)))
                        .collect()
                })
                .collect()
        }),
    }
}

pub fn to_json(payload: Payload) -> String {
    let spec = SpecFile { version: VERSION.into(), payload };
    let mut s = serde_json::to_string_pretty(&spec).expect("spec serializes");
    s.push('\n');
    s
}
