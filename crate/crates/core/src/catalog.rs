//! Finite groups and the ready-made examples built from them.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::corep::Corep;
use crate::dualqg::IrrData;
use crate::freestar::{letter, Letter, Presentation, Rule, TensorPoly, Word, WordPoly};
use crate::error::{Error, Result};
use crate::hopfcore::{HopfData, StructureAlgebra, StructureCoalgebra};
use crate::tenscore::{c, identity, max_abs_diff, CMatrix, CVector, Tolerance, C64, ONE};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates the table (Latin square, associativity, identity, inverses).
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Cayley table".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} labels for order {n}",
                labels.len()
            )));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidInput("Cayley table is not square".into()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidInput(
                        "Cayley table is not a Latin square".into(),
                    ));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidInput(
                        "Cayley table is not a Latin square".into(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity)
                    .ok_or_else(|| Error::InvalidInput(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            name: name.to_string(),
            labels,
            table,
            identity,
            inverse,
            perms: None,
        })
    }

    /// The group generated by a list of permutations of `{0, …, k-1}` with
    /// product `(a·b)(x) = a(b(x))`.
    pub fn from_permutations(name: &str, generators: &[Vec<usize>]) -> Result<Self> {
        let k = generators.first().map_or(0, |g| g.len());
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != k || sorted != (0..k).collect::<Vec<_>>() {
                return Err(Error::InvalidInput("generator is not a permutation".into()));
            }
        }
        let compose = |a: &[usize], b: &[usize]| b.iter().map(|&x| a[x]).collect::<Vec<_>>();
        let id: Vec<usize> = (0..k).collect();
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose(&x, g);
                if !elements.contains(&y) {
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        elements.sort();
        let index = |p: &Vec<usize>| elements.iter().position(|q| q == p).expect("closed set");
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index(&compose(a, b))).collect())
            .collect();
        let labels = elements
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        let mut g = FiniteGroup::from_table(name, labels, table)?;
        g.perms = Some(elements);
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Underlying permutations, when the group was built from them.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Checks that `map` (indexed by elements of `self`) is a bijective
    /// homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        let n = self.order();
        if other.order() != n || map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in map {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| map[self.table[a][b]] == other.table[map[a]][map[b]]))
    }

    /// Greedy generating set: each generator lies outside the subgroup
    /// generated by the previous ones.
    fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[self.identity] = true;
        for x in 0..n {
            if span[x] {
                continue;
            }
            gens.push(x);
            let mut queue: VecDeque<usize> = (0..n).filter(|&y| span[y]).collect();
            while let Some(y) = queue.pop_front() {
                for &g in &gens {
                    let z = self.table[y][g];
                    if !span[z] {
                        span[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        gens
    }

    /// Extends generator images to the whole group; `None` on a conflict.
    fn extend(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.table[x][g];
                let fy = other.table[map[x]][img];
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        self.is_isomorphism(other, &map).then_some(map)
    }

    /// An explicit isomorphism onto `other`, found by backtracking over
    /// images of a generating set.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() {
            return None;
        }
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let mut images = Vec::with_capacity(gens.len());
        self.search(other, &gens, &orders, &mut images)
    }

    fn search(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend(other, gens, images);
        }
        let want = orders[images.len()];
        for y in 0..other.order() {
            if other.element_order(y) != want || images.contains(&y) {
                continue;
            }
            images.push(y);
            if let Some(m) = self.search(other, gens, orders, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group of order 0".into()));
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_table(&format!("Z{n}"), labels, table)
}

/// Symmetric group on `n ≤ 6` letters; elements are sorted permutations.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidInput(format!(
            "symmetric group S{n} not supported"
        )));
    }
    let mut gens = Vec::new();
    if n > 1 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(swap);
        gens.push(cycle);
    } else {
        gens.push(vec![0]);
    }
    FiniteGroup::from_permutations(&format!("S{n}"), &gens)
}

/// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidInput("dihedral group needs n ≥ 3".into()));
    }
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(&format!("D{n}"), &[rot, refl])
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> Result<FiniteGroup> {
    // Unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k.
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let idx = |neg: bool, axis: usize| axis + if neg { 4 } else { 0 };
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (na, xa) = (a >= 4, a % 4);
                    let (nb, xb) = (b >= 4, b % 4);
                    let (nc, xc) = unit_mul(xa, xb);
                    idx(na ^ nb ^ nc, xc)
                })
                .collect()
        })
        .collect();
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table("Q8", labels, table)
}

/// The groups used by the test suites: Z₂ … Z₁₂, S₃, S₄, D₄, Q₈.
pub fn standard_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (2..=12).map(|n| cyclic(n).expect("n > 0")).collect();
    out.push(symmetric(3).expect("S3"));
    out.push(symmetric(4).expect("S4"));
    out.push(dihedral(4).expect("D4"));
    out.push(quaternion().expect("Q8"));
    out
}

fn permutation_matrix(map: impl Fn(usize) -> usize, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(map(i), i)] = ONE;
    }
    m
}

/// The group algebra ℂG: `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g* = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup) -> Result<HopfData> {
    let n = g.order();
    let mut mult = CMatrix::zeros(n, n * n);
    let mut delta = CMatrix::zeros(n * n, n);
    for a in 0..n {
        for b in 0..n {
            mult[(g.mul(a, b), a * n + b)] = ONE;
        }
        delta[(a * n + a, a)] = ONE;
    }
    let mut unit = CVector::zeros(n);
    unit[g.identity()] = ONE;
    let inv = permutation_matrix(|a| g.inverse(a), n);
    let alg = StructureAlgebra::new(g.labels().to_vec(), mult, unit, inv.clone())?
        .with_gram(identity(n))?;
    let coalg = StructureCoalgebra::new(delta, CVector::from_element(n, ONE))?;
    HopfData::new(format!("C[{}]", g.name()), alg, coalg, Some(inv))
}

/// The function algebra ℂ^G on indicator functions `δ_g`:
/// `Δ(δ_g) = Σ_{ab=g} δ_a⊗δ_b`, `ε(δ_g) = [g = e]`, `S(δ_g) = δ_{g⁻¹}`.
pub fn function_algebra(g: &FiniteGroup) -> Result<HopfData> {
    let n = g.order();
    let mut mult = CMatrix::zeros(n, n * n);
    let mut delta = CMatrix::zeros(n * n, n);
    for a in 0..n {
        mult[(a, a * n + a)] = ONE;
        for b in 0..n {
            delta[(a * n + b, g.mul(a, b))] = ONE;
        }
    }
    let mut counit = CVector::zeros(n);
    counit[g.identity()] = ONE;
    let labels = g.labels().iter().map(|l| format!("δ_{l}")).collect();
    let alg = StructureAlgebra::new(labels, mult, CVector::from_element(n, ONE), identity(n))?
        .with_gram(identity(n))?;
    let coalg = StructureCoalgebra::new(delta, counit)?;
    let s = permutation_matrix(|a| g.inverse(a), n);
    HopfData::new(format!("C^{}", g.name()), alg, coalg, Some(s))
}

/// Semigroup bialgebra of the monoid `{1, z}` with `z² = z`. It satisfies
/// the bialgebra axioms but admits no antipode.
pub fn monoid_bialgebra() -> Result<HopfData> {
    let table = [[0usize, 1], [1, 1]];
    let mut mult = CMatrix::zeros(2, 4);
    let mut delta = CMatrix::zeros(4, 2);
    for a in 0..2 {
        for b in 0..2 {
            mult[(table[a][b], a * 2 + b)] = ONE;
        }
        delta[(a * 2 + a, a)] = ONE;
    }
    let alg = StructureAlgebra::new(
        vec!["1".into(), "z".into()],
        mult,
        CVector::from_vec(vec![ONE, crate::tenscore::ZERO]),
        identity(2),
    )?;
    let coalg = StructureCoalgebra::new(delta, CVector::from_element(2, ONE))?;
    HopfData::new("C[{1,z}]", alg, coalg, None)
}

/// The permutation corepresentation of `ℂ^G` for a permutation group:
/// `u_ij = Σ_{g(j) = i} δ_g`.
pub fn defining_corep(g: &FiniteGroup, host: Arc<HopfData>) -> Result<Corep> {
    let perms = g
        .permutations()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not a permutation group", g.name())))?;
    if host.dim() != g.order() {
        return Err(Error::DimensionMismatch(
            "host dimension differs from the group order".into(),
        ));
    }
    let n = perms[0].len();
    let mut coeffs = vec![CVector::zeros(g.order()); n * n];
    for (k, p) in perms.iter().enumerate() {
        for (j, &i) in p.iter().enumerate() {
            coeffs[i * n + j][k] = ONE;
        }
    }
    Corep::new(host, n, coeffs)
}

/// The 4×4 magic unitary `[[1−p, p, 0, 0], [p, 1−p, 0, 0], [0, 0, 1−q, q],
/// [0, 0, q, 1−q]]` built from two projections of equal size.
pub fn magic_block_example(p: &CMatrix, q: &CMatrix, tol: Tolerance) -> Result<Vec<Vec<CMatrix>>> {
    let m = p.nrows();
    if p.shape() != (m, m) || q.shape() != (m, m) {
        return Err(Error::DimensionMismatch("projections must be square of equal size".into()));
    }
    for x in [p, q] {
        let res = max_abs_diff(&(x * x), x).max(max_abs_diff(x, &x.adjoint()));
        if !tol.accepts(res, 1.0) {
            return Err(Error::InvalidInput(format!(
                "input is not a projection (residual {res:.3e})"
            )));
        }
    }
    let z = CMatrix::zeros(m, m);
    let one = identity(m);
    Ok(vec![
        vec![&one - p, p.clone(), z.clone(), z.clone()],
        vec![p.clone(), &one - p, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), &one - q, q.clone()],
        vec![z.clone(), z, q.clone(), &one - q],
    ])
}

fn sn_name(n: usize, j: usize, k: usize) -> String {
    if n < 10 {
        format!("u{}{}", j + 1, k + 1)
    } else {
        format!("u{}_{}", j + 1, k + 1)
    }
}

/// Presentation of the free permutation quantum group: `u_jk` self-adjoint
/// idempotents with rows and columns summing to `𝟙`.
///
/// Rules, by priority: `u_jk* → u_jk`; `u_jk² → u_jk` and the orthogonality
/// relations within a row or a column; finally the last row and column are
/// eliminated in favour of the `(n−1)²` remaining generators.
pub fn sn_plus_presentation(n: usize) -> Result<Presentation> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let gens = (0..n)
        .flat_map(|j| (0..n).map(move |k| sn_name(n, j, k)))
        .collect();
    let mut pres = Presentation::new(format!("S{n}+"), gens);
    let g = |j: usize, k: usize| j * n + k;
    let lt = |j: usize, k: usize| letter(g(j, k), false);
    let w1 = |j: usize, k: usize| Word(vec![lt(j, k)]);
    let w2 = |a: Letter, b: Letter| Word(vec![a, b]);
    let one = WordPoly::one();
    for j in 0..n {
        for k in 0..n {
            let x = WordPoly::letter(lt(j, k));
            pres.relations.push(WordPoly::letter(letter(g(j, k), true)).sub(&x));
            pres.relations.push(x.mul(&x).sub(&x));
            pres.rules.push(Rule {
                lhs: Word(vec![letter(g(j, k), true)]),
                rhs: x.clone(),
                tier: 0,
            });
            pres.rules.push(Rule {
                lhs: w2(lt(j, k), lt(j, k)),
                rhs: x.clone(),
                tier: 1,
            });
            for l in 0..n {
                if l == k {
                    continue;
                }
                for (a, b) in [(lt(j, k), lt(j, l)), (lt(k, j), lt(l, j))] {
                    pres.relations.push(WordPoly::monomial(ONE, w2(a, b)));
                    pres.rules.push(Rule {
                        lhs: w2(a, b),
                        rhs: WordPoly::zero(),
                        tier: 1,
                    });
                }
            }
        }
    }
    for j in 0..n {
        let row = (0..n).fold(WordPoly::zero(), |p, k| p.add(&WordPoly::letter(lt(j, k))));
        let col = (0..n).fold(WordPoly::zero(), |p, k| p.add(&WordPoly::letter(lt(k, j))));
        pres.relations.push(row.sub(&one));
        pres.relations.push(col.sub(&one));
    }
    let last = n - 1;
    let free_sum = |fix_row: Option<usize>, fix_col: Option<usize>| {
        let mut p = WordPoly::zero();
        for j in 0..last {
            for k in 0..last {
                if fix_row.is_none_or(|r| r == j) && fix_col.is_none_or(|c| c == k) {
                    p.add_term(ONE, w1(j, k));
                }
            }
        }
        p
    };
    for j in 0..last {
        pres.rules.push(Rule {
            lhs: w1(j, last),
            rhs: one.sub(&free_sum(Some(j), None)),
            tier: 2,
        });
        pres.rules.push(Rule {
            lhs: w1(last, j),
            rhs: one.sub(&free_sum(None, Some(j))),
            tier: 2,
        });
    }
    pres.rules.push(Rule {
        lhs: w1(last, last),
        rhs: one.scale(c(2.0 - n as f64, 0.0)).add(&free_sum(None, None)),
        tier: 2,
    });
    let delta = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .map(|(j, k)| {
            (0..n).fold(TensorPoly::zero(), |t, l| {
                t.add(&TensorPoly::simple(
                    &WordPoly::letter(lt(j, l)),
                    &WordPoly::letter(lt(l, k)),
                ))
            })
        })
        .collect();
    pres.delta = Some(delta);
    Ok(pres)
}

/// Presentation of `SU_q(2)` on generators `a` (α) and `g` (γ).
///
/// Rules move `a` and `a*` to the left, put `g*` before `g`, and eliminate
/// `a*a` and `aa*`: `g a → q⁻¹ a g`, `g* a → q⁻¹ a g*`, `g a* → q a* g`,
/// `g* a* → q a* g*`, `g g* → g* g`, `a* a → 1 − g* g`,
/// `a a* → 1 − q² g* g`.
pub fn suq2_presentation(q: f64) -> Result<Presentation> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::InvalidInput("q must be a nonzero real".into()));
    }
    let mut pres = Presentation::new(format!("SU_{q}(2)"), vec!["a".into(), "g".into()]);
    pres.parameters.insert("q".into(), q);
    let (a, a_s, g, g_s) = (letter(0, false), letter(0, true), letter(1, false), letter(1, true));
    let l = WordPoly::letter;
    let qc = c(q, 0.0);
    let one = WordPoly::one();
    let gsg = l(g_s).mul(&l(g));
    pres.relations = vec![
        l(a_s).mul(&l(a)).add(&gsg).sub(&one),
        l(a).mul(&l(a_s)).add(&gsg.scale(qc * qc)).sub(&one),
        gsg.sub(&l(g).mul(&l(g_s))),
        l(a).mul(&l(g)).sub(&l(g).mul(&l(a)).scale(qc)),
        l(a).mul(&l(g_s)).sub(&l(g_s).mul(&l(a)).scale(qc)),
    ];
    let rule = |x: Letter, y: Letter, rhs: WordPoly| Rule {
        lhs: Word(vec![x, y]),
        rhs,
        tier: 0,
    };
    pres.rules = vec![
        rule(g, a, l(a).mul(&l(g)).scale(c(1.0 / q, 0.0))),
        rule(g_s, a, l(a).mul(&l(g_s)).scale(c(1.0 / q, 0.0))),
        rule(g, a_s, l(a_s).mul(&l(g)).scale(qc)),
        rule(g_s, a_s, l(a_s).mul(&l(g_s)).scale(qc)),
        rule(g, g_s, gsg.clone()),
        rule(a_s, a, one.sub(&gsg)),
        rule(a, a_s, one.sub(&gsg.scale(qc * qc))),
    ];
    // U = [[α, −qγ*], [γ, α*]]
    pres.delta = Some(vec![
        TensorPoly::simple(&l(a), &l(a)).add(&TensorPoly::simple(&l(g_s), &l(g)).scale(-qc)),
        TensorPoly::simple(&l(g), &l(a)).add(&TensorPoly::simple(&l(a_s), &l(g))),
    ]);
    Ok(pres)
}

/// Truncated block data with `Q = diag(t, 1/t, t, 1/t, …, 1)`: pairs
/// `(t, 1/t)` padded with a final 1 for odd sizes, so `Tr Q = Tr Q⁻¹`
/// holds exactly. A block of size 1 is always `Q = [1]`.
pub fn synthetic_nonkac(blocks: &[(usize, f64)]) -> Result<IrrData> {
    let mut qs = Vec::with_capacity(blocks.len());
    for &(n, t) in blocks {
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::InvalidInput(format!("block parameter {t} must be positive")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("blocks must be nonempty".into()));
        }
        let diag: Vec<C64> = (0..n)
            .map(|i| {
                if n % 2 == 1 && i == n - 1 {
                    ONE
                } else if i % 2 == 0 {
                    c(t, 0.0)
                } else {
                    c(1.0 / t, 0.0)
                }
            })
            .collect();
        qs.push(CMatrix::from_diagonal(&CVector::from_vec(diag)));
    }
    IrrData::truncated(qs, Tolerance::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::{check_cancellation, verify_all};
    use crate::tenscore::Tolerance;

    #[test]
    fn group_tables() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        let q8 = quaternion().unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert!(dihedral(4).unwrap().isomorphism_to(&q8).is_none());
        assert!(cyclic(6)
            .unwrap()
            .isomorphism_to(&symmetric(3).unwrap())
            .is_none());
        let z6 = cyclic(6).unwrap();
        let z2z3 = FiniteGroup::from_table(
            "Z2xZ3",
            (0..6).map(|i| i.to_string()).collect(),
            (0..6)
                .map(|a| {
                    (0..6)
                        .map(|b| ((a / 3 + b / 3) % 2) * 3 + (a % 3 + b % 3) % 3)
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let iso = z2z3.isomorphism_to(&z6).unwrap();
        assert!(z2z3.is_isomorphism(&z6, &iso));
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(FiniteGroup::from_table("x", vec!["a".into(), "b".into()], bad).is_err());
    }

    #[test]
    fn small_hopf_examples() {
        let tol = Tolerance::default();
        let z1 = group_algebra(&cyclic(1).unwrap()).unwrap();
        assert_eq!(z1.dim(), 1);
        assert!(verify_all(&z1, tol).passed());
        let z2 = group_algebra(&cyclic(2).unwrap()).unwrap();
        assert_eq!(z2.antipode().unwrap(), &identity(2));
        let s3 = group_algebra(&symmetric(3).unwrap()).unwrap();
        assert!(!s3.alg.is_commutative(tol));
        assert!(s3.coalg.is_cocommutative(tol));
        let f = function_algebra(&symmetric(3).unwrap()).unwrap();
        assert!(f.alg.is_commutative(tol));
        assert!(!f.coalg.is_cocommutative(tol));
        assert!(f.coalg.cocommutator_residual() > 0.5);
        for h in [&z2, &s3, &f] {
            assert!(verify_all(h, tol).passed());
            assert!(check_cancellation(h, tol));
        }
    }
}
