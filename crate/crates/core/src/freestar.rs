//! Free *-algebra presentations and rewriting.
//!
//! A letter is a generator or its adjoint, encoded as `2·gen + adj`, so
//! letters of one generator sort together with the plain letter first.
//! Words compare by length, then lexicographically. Normal forms come from
//! repeatedly rewriting the leftmost redex of the highest-priority tier of
//! rules that matches anywhere in the word.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hopfcore::VerificationReport;
use crate::tenscore::{c, identity, max_abs, max_abs_diff, CMatrix, Tolerance, C64, ONE, ZERO};

pub type Letter = u16;

pub fn letter(gen: usize, adjoint: bool) -> Letter {
    (2 * gen + adjoint as usize) as Letter
}

pub fn letter_gen(l: Letter) -> usize {
    (l / 2) as usize
}

pub fn letter_is_adjoint(l: Letter) -> bool {
    l % 2 == 1
}

fn letter_star(l: Letter) -> Letter {
    l ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| letter_star(l)).collect())
    }

    fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.is_empty() || pat.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pat.0.len()).find(|&i| self.0[i..i + pat.0.len()] == pat.0[..])
    }
}

/// A noncommutative polynomial: a finite sum of coefficient·word.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, C64>,
}

impl WordPoly {
    pub fn zero() -> Self {
        WordPoly::default()
    }

    pub fn one() -> Self {
        WordPoly::monomial(ONE, Word::empty())
    }

    pub fn monomial(coeff: C64, w: Word) -> Self {
        let mut p = WordPoly::zero();
        p.add_term(coeff, w);
        p
    }

    pub fn letter(l: Letter) -> Self {
        WordPoly::monomial(ONE, Word(vec![l]))
    }

    pub fn add_term(&mut self, coeff: C64, w: Word) {
        if coeff == ZERO {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(ZERO);
        *e += coeff;
        if *e == ZERO {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn coeff(&self, w: &Word) -> C64 {
        self.terms.get(w).copied().unwrap_or(ZERO)
    }

    /// Largest coefficient modulus; zero for the zero polynomial.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, z) in &other.terms {
            out.add_term(*z, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &WordPoly) -> WordPoly {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> WordPoly {
        let mut out = WordPoly::zero();
        for (w, z) in &self.terms {
            out.add_term(z * s, w.clone());
        }
        out
    }

    pub fn mul(&self, other: &WordPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(x * y, a.concat(b));
            }
        }
        out
    }

    /// `(Σ c w)* = Σ c̄ w*`.
    pub fn star(&self) -> WordPoly {
        let mut out = WordPoly::zero();
        for (w, z) in &self.terms {
            out.add_term(z.conj(), w.star());
        }
        out
    }
}

/// An oriented rule `lhs → rhs`; lower `tier` fires first.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: WordPoly,
    pub tier: u8,
}

/// Sums of `c · (w₁ ⊗ w₂)` in the tensor square.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), C64>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn one() -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(ONE, Word::empty(), Word::empty());
        t
    }

    /// `p ⊗ q`.
    pub fn simple(p: &WordPoly, q: &WordPoly) -> Self {
        let mut t = TensorPoly::zero();
        for (a, x) in p.terms() {
            for (b, y) in q.terms() {
                t.add_term(x * y, a.clone(), b.clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, coeff: C64, left: Word, right: Word) {
        if coeff == ZERO {
            return;
        }
        let key = (left, right);
        let e = self.terms.entry(key.clone()).or_insert(ZERO);
        *e += coeff;
        if *e == ZERO {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &C64)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for ((a, b), z) in &other.terms {
            out.add_term(*z, a.clone(), b.clone());
        }
        out
    }

    pub fn scale(&self, s: C64) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), z) in &self.terms {
            out.add_term(z * s, a.clone(), b.clone());
        }
        out
    }

    /// `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), x) in &self.terms {
            for ((cc, d), y) in &other.terms {
                out.add_term(x * y, a.concat(cc), b.concat(d));
            }
        }
        out
    }

    pub fn star(&self) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), z) in &self.terms {
            out.add_term(z.conj(), a.star(), b.star());
        }
        out
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|(a, b)| a.len() + b.len())
            .max()
            .unwrap_or(0)
    }
}

/// Generators, relations, rewrite rules and parameters.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<WordPoly>,
    pub rules: Vec<Rule>,
    pub parameters: BTreeMap<String, f64>,
    /// Images `Δ(x)` of the generators, when the presentation carries them.
    pub delta: Option<Vec<TensorPoly>>,
}

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;
pub const DEFAULT_DEGREE_CAP: usize = 6;

impl Presentation {
    pub fn new(name: impl Into<String>, generators: Vec<String>) -> Self {
        Presentation {
            name: name.into(),
            generators,
            relations: Vec::new(),
            rules: Vec::new(),
            parameters: BTreeMap::new(),
            delta: None,
        }
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let g = &self.generators[letter_gen(l)];
        if letter_is_adjoint(l) {
            format!("{g}*")
        } else {
            g.clone()
        }
    }

    fn parse_letter(&self, tok: &str) -> Result<Letter> {
        let (name, adj) = match tok.strip_suffix('*') {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let g = self
            .generator(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator '{name}'")))?;
        Ok(letter(g, adj))
    }

    /// Parses whitespace-separated letters such as `"a* g"`; `"1"` or an
    /// empty string is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.split_whitespace().map(|t| self.parse_letter(t)).collect::<Result<_>>().map(Word)
    }

    /// Parses `term (± term)*` where a term is an optional real coefficient
    /// followed by a word, e.g. `"a* a + g* g - 1"`.
    pub fn parse_poly(&self, s: &str) -> Result<WordPoly> {
        let mut out = WordPoly::zero();
        let mut sign = 1.0;
        let mut current: Vec<&str> = Vec::new();
        let flush = |toks: &mut Vec<&str>, sign: f64, out: &mut WordPoly| -> Result<()> {
            if toks.is_empty() {
                return Ok(());
            }
            let (coef, rest) = match toks[0].parse::<f64>() {
                Ok(v) => (v, &toks[1..]),
                Err(_) => (1.0, &toks[..]),
            };
            let w = self.parse_word(&rest.join(" "))?;
            out.add_term(c(sign * coef, 0.0), w);
            toks.clear();
            Ok(())
        };
        for tok in s.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if current.is_empty() && tok == "-" {
                        sign = -sign;
                        continue;
                    }
                    flush(&mut current, sign, &mut out)?;
                    sign = if tok == "-" { -1.0 } else { 1.0 };
                }
                _ => current.push(tok),
            }
        }
        if current.is_empty() && out.is_empty() {
            return Err(Error::InvalidInput("empty expression".into()));
        }
        flush(&mut current, sign, &mut out)?;
        Ok(out)
    }

    /// Renders with 12 significant digits, e.g. `"0.5 a g"` or `"1 - g* g"`.
    pub fn format_poly(&self, p: &WordPoly) -> String {
        if p.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (w, z)) in p.terms().enumerate() {
            let word: Vec<String> = w.0.iter().map(|&l| self.letter_name(l)).collect();
            let (neg, mag) = if z.im == 0.0 {
                (z.re < 0.0, format_real(z.re.abs()))
            } else {
                (false, format!("({}{:+}i)", format_real(z.re), format_real(z.im)))
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if word.is_empty() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push(' ');
                }
                s.push_str(&word.join(" "));
            }
        }
        s
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        let mut best: Option<(u8, usize, usize)> = None;
        for (r, rule) in self.rules.iter().enumerate() {
            if let Some(pos) = w.find(&rule.lhs) {
                let key = (rule.tier, pos, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, pos, r)| (pos, &self.rules[r]))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }
}

fn format_real(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap_or(x);
    let mut t = format!("{v}");
    if t.len() > 20 {
        t = s;
    }
    t
}

/// Exhaustive rewriting to a fixpoint. Fails with
/// [`Error::StepLimitExceeded`] after `max_steps` single rewrites.
pub fn normal_form(p: &WordPoly, pres: &Presentation, max_steps: usize) -> Result<WordPoly> {
    let mut pending: BTreeMap<Word, C64> = p.terms.clone();
    let mut done = WordPoly::zero();
    let mut steps = 0usize;
    while let Some((w, z)) = pending.pop_first() {
        if z == ZERO {
            continue;
        }
        match pres.find_redex(&w) {
            None => done.add_term(z, w),
            Some((pos, rule)) => {
                steps += 1;
                if steps > max_steps {
                    return Err(Error::StepLimitExceeded { steps: max_steps });
                }
                let prefix = Word(w.0[..pos].to_vec());
                let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
                for (m, y) in rule.rhs.terms() {
                    let nw = prefix.concat(m).concat(&suffix);
                    *pending.entry(nw).or_insert(ZERO) += z * y;
                }
            }
        }
    }
    Ok(done)
}

/// Normal form of each tensor factor.
pub fn tensor_normal_form(t: &TensorPoly, pres: &Presentation, max_steps: usize) -> Result<TensorPoly> {
    let mut cache: BTreeMap<Word, WordPoly> = BTreeMap::new();
    let mut nf = |w: &Word| -> Result<WordPoly> {
        if let Some(p) = cache.get(w) {
            return Ok(p.clone());
        }
        let p = normal_form(&WordPoly::monomial(ONE, w.clone()), pres, max_steps)?;
        cache.insert(w.clone(), p.clone());
        Ok(p)
    };
    let mut out = TensorPoly::zero();
    for ((a, b), z) in t.terms() {
        let pa = nf(a)?;
        let pb = nf(b)?;
        out = out.add(&TensorPoly::simple(&pa, &pb).scale(*z));
    }
    Ok(out)
}

/// `Δ(p)` from the generator images, extended as a unital *-homomorphism.
pub fn apply_delta(p: &WordPoly, delta_on_gens: &[TensorPoly]) -> TensorPoly {
    let images: Vec<TensorPoly> = (0..2 * delta_on_gens.len())
        .map(|l| {
            let d = &delta_on_gens[l / 2];
            if l % 2 == 1 {
                d.star()
            } else {
                d.clone()
            }
        })
        .collect();
    let mut out = TensorPoly::zero();
    for (w, z) in p.terms() {
        let mut t = TensorPoly::one();
        for &l in &w.0 {
            t = t.mul(&images[l as usize]);
        }
        out = out.add(&t.scale(*z));
    }
    out
}

/// Checks that every relation `r` has `Δ(r)` rewriting to zero in the tensor
/// square. Relations whose image exceeds `degree_cap` are not expanded; the
/// check `within_degree_cap` records whether any were left out.
pub fn delta_well_defined(
    pres: &Presentation,
    delta_on_gens: &[TensorPoly],
    degree_cap: usize,
    tol: Tolerance,
) -> Result<VerificationReport> {
    if delta_on_gens.len() != pres.generators.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} generator images for {} generators",
            delta_on_gens.len(),
            pres.generators.len()
        )));
    }
    let gen_degree = delta_on_gens.iter().map(|d| d.degree()).max().unwrap_or(0).max(1);
    let mut report = VerificationReport::new();
    let mut skipped = 0;
    for (i, r) in pres.relations.iter().enumerate() {
        if r.degree() * gen_degree > degree_cap {
            skipped += 1;
            continue;
        }
        let img = apply_delta(r, delta_on_gens);
        let nf = tensor_normal_form(&img, pres, DEFAULT_MAX_STEPS)?;
        let scale = img.max_coeff().max(1.0);
        report.push(&format!("relation_{i}"), nf.max_coeff(), scale, tol);
    }
    report.push_bool("within_degree_cap", skipped == 0);
    Ok(report)
}

fn eval_poly(p: &WordPoly, mats: &[CMatrix]) -> CMatrix {
    let n = mats[0].nrows();
    let mut out = CMatrix::zeros(n, n);
    for (w, z) in p.terms() {
        let mut m = identity(n);
        for &l in &w.0 {
            m *= &mats[l as usize];
        }
        out += m * *z;
    }
    out
}

/// Substitutes matrices for the generators (and their adjoints for the
/// adjoint letters) and checks every relation.
pub fn eval_hom(
    pres: &Presentation,
    assignment: &[CMatrix],
    tol: Tolerance,
) -> Result<VerificationReport> {
    if assignment.len() != pres.generators.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for {} generators",
            assignment.len(),
            pres.generators.len()
        )));
    }
    let n = assignment[0].nrows();
    if assignment.iter().any(|m| m.shape() != (n, n)) {
        return Err(Error::DimensionMismatch("assignment matrices must share a square shape".into()));
    }
    let mats: Vec<CMatrix> = assignment
        .iter()
        .flat_map(|m| [m.clone(), m.adjoint()])
        .collect();
    let scale = assignment.iter().fold(1.0f64, |s, m| s.max(max_abs(m)));
    let mut report = VerificationReport::new();
    for (i, r) in pres.relations.iter().enumerate() {
        let v = eval_poly(r, &mats);
        let s = scale.powi(r.degree() as i32) * r.max_coeff().max(1.0);
        report.push(&format!("relation_{i}"), max_abs(&v), s, tol);
    }
    Ok(report)
}

/// Checks a matrix of operators for being a magic unitary: self-adjoint
/// idempotent entries, rows and columns summing to `𝟙`, and the derived
/// orthogonality `u_jk u_jl = δ_kl u_jk`, `u_kj u_lj = δ_kl u_kj`.
pub fn validate_magic(u: &[Vec<CMatrix>], tol: Tolerance) -> Result<VerificationReport> {
    let n = u.len();
    if n == 0 || u.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("magic matrix must be square".into()));
    }
    let m = u[0][0].nrows();
    if u.iter().flatten().any(|x| x.shape() != (m, m)) {
        return Err(Error::DimensionMismatch("entries must share a square shape".into()));
    }
    let id = identity(m);
    let mut proj: f64 = 0.0;
    let mut sa: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let p = &u[j][k];
            sa = sa.max(max_abs_diff(p, &p.adjoint()));
            proj = proj.max(max_abs_diff(&(p * p), p));
            for l in 0..n {
                if l != k {
                    ortho = ortho.max(max_abs(&(p * &u[j][l])));
                    ortho = ortho.max(max_abs(&(&u[k][j] * &u[l][j])));
                }
            }
        }
    }
    let mut rows: f64 = 0.0;
    let mut cols: f64 = 0.0;
    for j in 0..n {
        let r: CMatrix = u[j].iter().fold(CMatrix::zeros(m, m), |a, x| a + x);
        let c_: CMatrix = (0..n).fold(CMatrix::zeros(m, m), |a, i| a + &u[i][j]);
        rows = rows.max(max_abs_diff(&r, &id));
        cols = cols.max(max_abs_diff(&c_, &id));
    }
    let mut report = VerificationReport::new();
    report.push("self_adjoint", sa, 1.0, tol);
    report.push("idempotent", proj, 1.0, tol);
    report.push("row_sums", rows, 1.0, tol);
    report.push("column_sums", cols, 1.0, tol);
    report.push("orthogonality", ortho, 1.0, tol);
    Ok(report)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| format!("x{}{}", letter_gen(l), if letter_is_adjoint(l) { "*" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sn_plus_presentation, suq2_presentation};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn suq2_rules() {
        let p = suq2_presentation(2.0).unwrap();
        let ga = p.parse_poly("g a").unwrap();
        let nf = normal_form(&ga, &p, 100).unwrap();
        assert_eq!(nf, p.parse_poly("0.5 a g").unwrap());
        assert_eq!(p.format_poly(&nf), "0.5 a g");
        let nf = normal_form(&p.parse_poly("a* a").unwrap(), &p, 100).unwrap();
        assert_eq!(nf, p.parse_poly("1 - g* g").unwrap());
        assert_eq!(p.format_poly(&nf), "1 - g* g");
        for r in &p.relations {
            assert!(normal_form(r, &p, 1000).unwrap().max_coeff() < 1e-12);
        }
    }

    #[test]
    fn parse_and_format() {
        let p = suq2_presentation(1.0).unwrap();
        let e = p.parse_poly("- a* a + 2 g - 1").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.coeff(&Word::empty()), c(-1.0, 0.0));
        assert!(p.parse_word("b").is_err());
        assert_eq!(p.format_poly(&WordPoly::zero()), "0");
    }

    #[test]
    fn step_limit() {
        let mut p = Presentation::new("loop", vec!["x".into(), "y".into()]);
        let xy = p.parse_word("x y").unwrap();
        let yx = p.parse_word("y x").unwrap();
        p.rules.push(Rule { lhs: xy.clone(), rhs: WordPoly::monomial(ONE, yx.clone()), tier: 0 });
        p.rules.push(Rule { lhs: yx, rhs: WordPoly::monomial(ONE, xy.clone()), tier: 0 });
        assert_eq!(
            normal_form(&WordPoly::monomial(ONE, xy), &p, 50).unwrap_err(),
            Error::StepLimitExceeded { steps: 50 }
        );
    }

    #[test]
    fn sn_plus_orthogonality() {
        let p = sn_plus_presentation(3).unwrap();
        let e = p.parse_poly("u11 u12").unwrap();
        assert!(normal_form(&e, &p, 100).unwrap().is_empty());
        let e = p.parse_poly("u21 u21").unwrap();
        assert_eq!(normal_form(&e, &p, 100).unwrap(), p.parse_poly("u21").unwrap());
    }

    #[test]
    fn delta_checks() {
        let p = suq2_presentation(2.0).unwrap();
        let d = p.delta.clone().unwrap();
        assert!(delta_well_defined(&p, &d, 6, tol()).unwrap().passed());
        let mut wrong = d.clone();
        let a = WordPoly::letter(letter(0, false));
        wrong[0] = TensorPoly::simple(&a, &a);
        assert!(!delta_well_defined(&p, &wrong, 6, tol()).unwrap().passed());
        let p = sn_plus_presentation(3).unwrap();
        let d = p.delta.clone().unwrap();
        assert!(delta_well_defined(&p, &d, 6, tol()).unwrap().passed());
    }

    #[test]
    fn evaluation() {
        let p = suq2_presentation(1.0).unwrap();
        let th = 0.7f64;
        let a = CMatrix::from_element(1, 1, c(th.cos(), th.sin()));
        let g = CMatrix::zeros(1, 1);
        assert!(eval_hom(&p, &[a, g], tol()).unwrap().passed());
        let p = suq2_presentation(2.0).unwrap();
        let one = CMatrix::from_element(1, 1, ONE);
        assert!(!eval_hom(&p, &[one.clone(), one], tol()).unwrap().passed());
        assert!(eval_hom(&p, &[CMatrix::zeros(1, 1), CMatrix::zeros(2, 2)], tol()).is_err());
    }

    #[test]
    fn magic_permutations() {
        let z = CMatrix::zeros(1, 1);
        let o = CMatrix::from_element(1, 1, ONE);
        let u = vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]];
        assert!(validate_magic(&u, tol()).unwrap().passed());
        let half = CMatrix::from_element(1, 1, c(0.5, 0.0));
        let u = vec![vec![half.clone(), half.clone()], vec![half.clone(), half]];
        assert!(!validate_magic(&u, tol()).unwrap().passed());
        assert!(validate_magic(&[vec![o.clone(), z]], tol()).is_err());
    }
}
