//! Graded commutative polynomial quotient rings over `F_2`.
//!
//! A [`RingPresentation`] is a list of generators with degrees and a list of
//! homogeneous rewrite rules `lead → rhs`. At construction every monomial up
//! to the top degree is reduced along every applicable rule, which checks
//! termination and confluence and tabulates the normal-form basis. Elements
//! ([`F2Poly`]) are bitsets over that basis, so addition is XOR and
//! multiplication goes through a basis multiplication table.
//!
//! Everything above the top degree is truncated to zero: the rings modelled
//! here are cohomology rings of closed manifolds of that dimension.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::WallParams;

/// Exponent vector of a monomial, indexed like the generators.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// `H^*(P(m,n)) = F_2[c,d]/(c^{m+1}, d^{n+1})`, `|c| = 1`, `|d| = 2`.
    Dold { m: u64, n: u64 },
    /// `H^*(Q(m,n)) = F_2[x,c,d]/(x^2, c^{m+1} + c^m x, d^{n+1})`,
    /// `|x| = |c| = 1`, `|d| = 2`.
    Wall { m: u64, n: u64 },
    /// `H^*(CP^n) = F_2[a]/(a^{n+1})`, `|a| = 2`.
    ComplexProjective { n: u64 },
    /// Hand-built presentation, identified by name.
    Custom(String),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Dold { m, n } => write!(f, "H*(P({m},{n}))"),
            RingKind::Wall { m, n } => write!(f, "H*(Q({m},{n}))"),
            RingKind::ComplexProjective { n } => write!(f, "H*(CP^{n})"),
            RingKind::Custom(name) => write!(f, "{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingGenerator {
    pub name: String,
    pub degree: u32,
}

/// `lead → rhs`, where `rhs` is a sum of monomials (empty for zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Exponents,
    pub rhs: Vec<Exponents>,
}

pub struct RingPresentation {
    kind: RingKind,
    generators: Vec<RingGenerator>,
    rules: Vec<RewriteRule>,
    top_degree: u32,
    basis: Vec<Exponents>,
    basis_index: HashMap<Exponents, usize>,
    /// Normal form (as basis indices) of every monomial of degree ≤ top.
    normal_forms: HashMap<Exponents, Vec<usize>>,
    mul_table: OnceLock<Vec<Box<[u32]>>>,
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingPresentation")
            .field("kind", &self.kind)
            .field("generators", &self.generators)
            .field("rules", &self.rules)
            .field("top_degree", &self.top_degree)
            .field("rank", &self.basis.len())
            .finish()
    }
}

fn mono(entries: &[(usize, u32)], len: usize) -> Exponents {
    let mut e = vec![0; len];
    for &(i, k) in entries {
        e[i] = k;
    }
    e
}

fn to_u32(v: u64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{what} = {v} is too large")))
}

impl RingPresentation {
    /// Builds the cohomology ring presentation for one of the three families.
    pub fn new(kind: RingKind) -> Result<Arc<Self>> {
        let gen = |name: &str, degree| RingGenerator { name: name.into(), degree };
        match kind {
            RingKind::Dold { m, n } => {
                let (m, n) = (to_u32(m, "m")?, to_u32(n, "n")?);
                let top = m + 2 * n;
                let rules = vec![
                    RewriteRule { lead: vec![m + 1, 0], rhs: vec![] },
                    RewriteRule { lead: vec![0, n + 1], rhs: vec![] },
                ];
                Self::build(kind, vec![gen("c", 1), gen("d", 2)], rules, top)
            }
            RingKind::Wall { m, n } => {
                if m == 0 {
                    return Err(Error::InvalidParameter(
                        "Wall presentation needs m >= 1".into(),
                    ));
                }
                let (mm, nn) = (to_u32(m, "m")?, to_u32(n, "n")?);
                let top = mm + 2 * nn + 1;
                // order matters only for which path is taken first; every
                // path is checked for agreement in `build`
                let rules = vec![
                    RewriteRule {
                        lead: mono(&[(1, mm + 1)], 3),
                        rhs: vec![mono(&[(0, 1), (1, mm)], 3)],
                    },
                    RewriteRule { lead: mono(&[(0, 2)], 3), rhs: vec![] },
                    RewriteRule { lead: mono(&[(2, nn + 1)], 3), rhs: vec![] },
                ];
                Self::build(kind, vec![gen("x", 1), gen("c", 1), gen("d", 2)], rules, top)
            }
            RingKind::ComplexProjective { n } => {
                let n = to_u32(n, "n")?;
                let rules = vec![RewriteRule { lead: vec![n + 1], rhs: vec![] }];
                Self::build(kind, vec![gen("a", 2)], rules, 2 * n)
            }
            RingKind::Custom(_) => Err(Error::InvalidParameter(
                "custom rings are built with RingPresentation::custom".into(),
            )),
        }
    }

    pub fn wall(p: WallParams) -> Arc<Self> {
        Self::new(RingKind::Wall { m: p.m(), n: p.n() }).expect("valid Wall parameters")
    }

    pub fn complex_projective(n: u64) -> Result<Arc<Self>> {
        Self::new(RingKind::ComplexProjective { n })
    }

    /// Builds an arbitrary presentation. Fails if a rule is inhomogeneous,
    /// or if rewriting does not terminate or is not confluent below `top_degree`.
    pub fn custom(
        name: &str,
        generators: Vec<RingGenerator>,
        rules: Vec<RewriteRule>,
        top_degree: u32,
    ) -> Result<Arc<Self>> {
        Self::build(RingKind::Custom(name.into()), generators, rules, top_degree)
    }

    fn build(
        kind: RingKind,
        generators: Vec<RingGenerator>,
        rules: Vec<RewriteRule>,
        top_degree: u32,
    ) -> Result<Arc<Self>> {
        let ngen = generators.len();
        if generators.iter().any(|g| g.degree == 0) {
            return Err(Error::InvalidParameter("generator degrees must be positive".into()));
        }
        let degrees: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let weight = |e: &Exponents| -> u64 {
            e.iter().zip(&degrees).map(|(&k, &d)| u64::from(k) * u64::from(d)).sum()
        };
        for r in &rules {
            if r.lead.len() != ngen || r.rhs.iter().any(|t| t.len() != ngen) {
                return Err(Error::DimensionMismatch {
                    expected: ngen,
                    actual: r.lead.len(),
                });
            }
            if r.lead.iter().all(|&k| k == 0) {
                return Err(Error::InvalidParameter("rule with constant leading term".into()));
            }
            let d = weight(&r.lead);
            if r.rhs.iter().any(|t| weight(t) != d) {
                return Err(Error::InvalidParameter(format!(
                    "rule {:?} is not homogeneous",
                    r.lead
                )));
            }
        }

        let monomials = enumerate_monomials(&degrees, top_degree);
        let mut reducer = Reducer {
            names: &generators,
            degrees: &degrees,
            rules: &rules,
            top_degree,
            memo: HashMap::new(),
            in_progress: HashSet::new(),
        };
        for m in &monomials {
            reducer.normal_form(m)?;
        }

        let mut basis: Vec<Exponents> = monomials
            .iter()
            .filter(|m| !rules.iter().any(|r| divides(&r.lead, m)))
            .cloned()
            .collect();
        basis.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| b.cmp(a)));
        let basis_index: HashMap<Exponents, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let normal_forms = reducer
            .memo
            .into_iter()
            .map(|(m, nf)| {
                let mut idx: Vec<usize> = nf.iter().map(|t| basis_index[t]).collect();
                idx.sort_unstable();
                (m, idx)
            })
            .collect();

        Ok(Arc::new(Self {
            kind,
            generators,
            rules,
            top_degree,
            basis,
            basis_index,
            normal_forms,
            mul_table: OnceLock::new(),
        }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn generators(&self) -> &[RingGenerator] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Normal-form monomials, ordered by degree.
    pub fn basis(&self) -> &[Exponents] {
        &self.basis
    }

    /// Total `F_2`-dimension of the ring.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.generators).map(|(&k, g)| k * g.degree).sum()
    }

    /// Dimension of the degree-`q` component.
    pub fn graded_dimension(&self, q: u32) -> usize {
        self.basis.iter().filter(|b| self.degree_of(b) == q).count()
    }

    fn words(&self) -> usize {
        self.basis.len().div_ceil(64)
    }

    pub fn zero(self: &Arc<Self>) -> F2Poly {
        F2Poly { ring: Arc::clone(self), bits: vec![0; self.words()] }
    }

    pub fn one(self: &Arc<Self>) -> F2Poly {
        self.monomial(&vec![0; self.generators.len()]).expect("constant monomial")
    }

    /// Normal form of an arbitrary monomial; zero above the top degree.
    pub fn monomial(self: &Arc<Self>, e: &[u32]) -> Result<F2Poly> {
        if e.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                actual: e.len(),
            });
        }
        let mut p = self.zero();
        let degree: u64 = e
            .iter()
            .zip(&self.generators)
            .map(|(&k, g)| u64::from(k) * u64::from(g.degree))
            .sum();
        if degree > u64::from(self.top_degree) {
            return Ok(p);
        }
        for &i in &self.normal_forms[e] {
            p.flip(i);
        }
        Ok(p)
    }

    pub fn generator(self: &Arc<Self>, name: &str) -> Result<F2Poly> {
        let i = self
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        self.monomial(&mono(&[(i, 1)], self.generators.len()))
    }

    /// Sum of the named basis monomials, e.g. `ring.poly(&[&[0,0,0], &[1,0,0]])`.
    pub fn poly(self: &Arc<Self>, terms: &[&[u32]]) -> Result<F2Poly> {
        let mut p = self.zero();
        for t in terms {
            p = p.add(&self.monomial(t)?)?;
        }
        Ok(p)
    }

    fn same_as(&self, other: &RingPresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.kind == other.kind
                && self.generators == other.generators
                && self.rules == other.rules
                && self.top_degree == other.top_degree)
    }

    fn table(&self) -> &[Box<[u32]>] {
        self.mul_table.get_or_init(|| {
            let n = self.basis.len();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.basis {
                for b in &self.basis {
                    let prod: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let entry: Box<[u32]> = if self.degree_of(&prod) > self.top_degree {
                        Box::new([])
                    } else {
                        self.normal_forms[&prod].iter().map(|&i| i as u32).collect()
                    };
                    t.push(entry);
                }
            }
            t
        })
    }

    fn render_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.generators)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, g)| if k == 1 { g.name.clone() } else { format!("{}^{}", g.name, k) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All exponent vectors of weighted degree ≤ `top`.
fn enumerate_monomials(degrees: &[u32], top: u32) -> Vec<Exponents> {
    fn go(degrees: &[u32], budget: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        match degrees.split_first() {
            None => out.push(prefix.clone()),
            Some((&d, rest)) => {
                for k in 0..=budget / d {
                    prefix.push(k);
                    go(rest, budget - k * d, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(degrees, top, &mut Vec::new(), &mut out);
    out
}

struct Reducer<'a> {
    names: &'a [RingGenerator],
    degrees: &'a [u32],
    rules: &'a [RewriteRule],
    top_degree: u32,
    memo: HashMap<Exponents, BTreeSet<Exponents>>,
    in_progress: HashSet<Exponents>,
}

impl Reducer<'_> {
    fn show(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(self.names)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, g)| format!("{}^{}", g.name, k))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Reduces `m` along every applicable rule and insists that all
    /// one-step branches reach the same normal form.
    fn normal_form(&mut self, m: &Exponents) -> Result<BTreeSet<Exponents>> {
        let degree: u32 = m.iter().zip(self.degrees).map(|(k, d)| k * d).sum();
        if degree > self.top_degree {
            return Ok(BTreeSet::new());
        }
        if let Some(nf) = self.memo.get(m) {
            return Ok(nf.clone());
        }
        if !self.in_progress.insert(m.clone()) {
            return Err(Error::NotTerminating(self.show(m)));
        }
        let mut result: Option<BTreeSet<Exponents>> = None;
        for rule in self.rules {
            if !divides(&rule.lead, m) {
                continue;
            }
            let mut branch = BTreeSet::new();
            for t in &rule.rhs {
                let next: Exponents =
                    m.iter().zip(&rule.lead).zip(t).map(|((a, l), b)| a - l + b).collect();
                for term in self.normal_form(&next)? {
                    // F_2 coefficients: symmetric difference
                    if !branch.remove(&term) {
                        branch.insert(term);
                    }
                }
            }
            match &result {
                None => result = Some(branch),
                Some(prev) if *prev != branch => {
                    return Err(Error::NotConfluent(self.show(m)));
                }
                Some(_) => {}
            }
        }
        let nf = result.unwrap_or_else(|| BTreeSet::from([m.clone()]));
        self.in_progress.remove(m);
        self.memo.insert(m.clone(), nf.clone());
        Ok(nf)
    }
}

/// Element of a [`RingPresentation`], stored in normal form.
#[derive(Clone)]
pub struct F2Poly {
    ring: Arc<RingPresentation>,
    bits: Vec<u64>,
}

impl PartialEq for F2Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.bits == other.bits
    }
}

impl Eq for F2Poly {}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly[{}]({})", self.ring.kind, self)
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.indices().map(|i| self.ring.render_monomial(&self.ring.basis[i])).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl F2Poly {
    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    fn flip(&mut self, i: usize) {
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    fn has(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ring.basis.len()).filter(|&i| self.has(i))
    }

    /// Normal-form monomials with coefficient 1, in basis order.
    pub fn terms(&self) -> impl Iterator<Item = &Exponents> + '_ {
        self.indices().map(|i| &self.ring.basis[i])
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.ring.basis_index.get(e).is_some_and(|&i| self.has(i))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn check_ring(&self, other: &F2Poly) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.kind.to_string(), other.ring.kind.to_string()))
        }
    }

    pub fn add(&self, other: &F2Poly) -> Result<F2Poly> {
        self.check_ring(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        Ok(F2Poly { ring: Arc::clone(&self.ring), bits })
    }

    /// Product in normal form, truncated above the top degree.
    pub fn mul(&self, other: &F2Poly) -> Result<F2Poly> {
        self.check_ring(other)?;
        let n = self.ring.basis.len();
        let table = self.ring.table();
        let mut out = self.ring.zero();
        let rhs: Vec<usize> = other.indices().collect();
        for i in self.indices() {
            for &j in &rhs {
                for &k in table[i * n + j].iter() {
                    out.flip(k as usize);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> F2Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Homogeneous component of degree `q`.
    pub fn component(&self, q: u32) -> F2Poly {
        let mut out = self.ring.zero();
        for i in self.indices() {
            if self.ring.degree_of(&self.ring.basis[i]) == q {
                out.flip(i);
            }
        }
        out
    }

    /// Degrees carrying a nonzero component, ascending.
    pub fn support_degrees(&self) -> Vec<u32> {
        let set: BTreeSet<u32> =
            self.indices().map(|i| self.ring.degree_of(&self.ring.basis[i])).collect();
        set.into_iter().collect()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.indices().map(|i| self.ring.degree_of(&self.ring.basis[i])).max()
    }

    /// Inverse of a unit `1 + r`, as the truncated geometric series `Σ r^k`.
    pub fn unit_inverse(&self) -> Result<F2Poly> {
        if self.component(0) != self.ring.one() {
            return Err(Error::NotAUnit);
        }
        let r = self.add(&self.ring.one())?;
        let mut acc = self.ring.one();
        let mut power = self.ring.one();
        // r has no degree-0 part, so r^k = 0 once k > top degree
        for _ in 0..self.ring.top_degree {
            power = power.mul(&r)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Text rendering grouped by degree, e.g. `[0] 1  [1] x + c`.
    pub fn render_by_degree(&self) -> Vec<(u32, String)> {
        self.support_degrees().into_iter().map(|q| (q, self.component(q).to_string())).collect()
    }
}

/// Ring homomorphism determined by the images of the generators.
pub struct RingHom {
    source: Arc<RingPresentation>,
    target: Arc<RingPresentation>,
    images: Vec<F2Poly>,
}

impl RingHom {
    pub fn new(
        source: &Arc<RingPresentation>,
        target: &Arc<RingPresentation>,
        images: Vec<F2Poly>,
    ) -> Result<Self> {
        if images.len() != source.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: source.generators.len(),
                actual: images.len(),
            });
        }
        for img in &images {
            if !img.ring.same_as(target) {
                return Err(Error::RingMismatch(img.ring.kind.to_string(), target.kind.to_string()));
            }
        }
        Ok(Self { source: Arc::clone(source), target: Arc::clone(target), images })
    }

    pub fn apply(&self, p: &F2Poly) -> Result<F2Poly> {
        if !p.ring.same_as(&self.source) {
            return Err(Error::RingMismatch(p.ring.kind.to_string(), self.source.kind.to_string()));
        }
        let mut out = self.target.zero();
        for e in p.terms() {
            let mut img = self.target.one();
            for (g, &k) in self.images.iter().zip(e) {
                img = img.mul(&g.pow(u64::from(k)))?;
            }
            out = out.add(&img)?;
        }
        Ok(out)
    }
}

/// Restriction to the fibre `CP^n ⊂ Q(m,n)`: `x ↦ 0`, `c ↦ 0`, `d ↦ a`.
pub fn fiber_restriction(p: &F2Poly) -> Result<F2Poly> {
    let RingKind::Wall { n, .. } = *p.ring.kind() else {
        return Err(Error::RingMismatch(
            p.ring.kind.to_string(),
            "a Wall manifold ring".into(),
        ));
    };
    let target = RingPresentation::complex_projective(n)?;
    let images = vec![target.zero(), target.zero(), target.generator("a")?];
    RingHom::new(p.ring(), &target, images)?.apply(p)
}

/// Wall's total Stiefel–Whitney class
/// `w(Q(m,n)) = (1 + c + x)(1 + c)^{m−1}(1 + c + d)^{n+1}`.
pub fn total_sw_wall(p: WallParams) -> F2Poly {
    total_sw_in(&RingPresentation::wall(p), p)
}

fn total_sw_in(ring: &Arc<RingPresentation>, p: WallParams) -> F2Poly {
    let one = ring.one();
    let x = ring.generator("x").expect("x");
    let c = ring.generator("c").expect("c");
    let d = ring.generator("d").expect("d");
    let one_c = one.add(&c).expect("same ring");
    let first = one_c.add(&x).expect("same ring");
    let last = one_c.add(&d).expect("same ring");
    first
        .mul(&one_c.pow(p.m() - 1))
        .and_then(|q| q.mul(&last.pow(p.n() + 1)))
        .expect("same ring")
}

/// Choice of line-bundle classes `x_1, …, x_k ∈ H^1(Q(m,n); F_2)` as a
/// multiset over `{0, x, c, x + c}`: `counts[i]` copies of the `i`-th class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassMultiset {
    pub counts: [u32; 4],
}

impl ClassMultiset {
    pub const CLASS_NAMES: [&'static str; 4] = ["0", "x", "c", "x+c"];

    pub fn size(&self) -> u32 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for ClassMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .zip(Self::CLASS_NAMES)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, name)| format!("{name}:{k}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Outcome of testing one multiset: `failure_degree` is the top degree in
/// which `u = w · Π(1 + x_i)^{-1}` is nonzero, when it exceeds `dim − k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetWitness {
    pub classes: ClassMultiset,
    pub failure_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOutReport {
    pub k: u32,
    /// `true` when every multiset fails, i.e. `pspan(Q(m,n)) < k`.
    pub ruled_out: bool,
    pub witnesses: Vec<MultisetWitness>,
}

impl RuleOutReport {
    /// A multiset for which the obstruction vanishes, if any.
    pub fn surviving(&self) -> Option<ClassMultiset> {
        self.witnesses.iter().find(|w| w.failure_degree.is_none()).map(|w| w.classes)
    }
}

/// Virtual Stiefel–Whitney obstruction search for one Wall manifold.
///
/// `u` depends only on the multiplicities of the three nonzero classes, not
/// on `k`, so its top degree is memoized per multiplicity triple and shared
/// between all `k`.
pub struct ObstructionSearch {
    params: WallParams,
    dim: u32,
    ring: Arc<RingPresentation>,
    total_sw: F2Poly,
    /// inverses of 1 + x, 1 + c, 1 + x + c
    inverses: [F2Poly; 3],
    memo: HashMap<[u32; 3], F2Poly>,
}

impl ObstructionSearch {
    pub fn new(params: WallParams) -> Self {
        let ring = RingPresentation::wall(params);
        let one = ring.one();
        let x = ring.generator("x").expect("x");
        let c = ring.generator("c").expect("c");
        let xc = x.add(&c).expect("same ring");
        let inverses = [&x, &c, &xc].map(|g| {
            one.add(g).and_then(|u| u.unit_inverse()).expect("1 + degree-1 class is a unit")
        });
        let total_sw = total_sw_in(&ring, params);
        let dim = u32::try_from(params.dim()).expect("dimension fits in u32");
        let mut memo = HashMap::new();
        memo.insert([0, 0, 0], total_sw.clone());
        Self { params, dim, ring, total_sw, inverses, memo }
    }

    pub fn params(&self) -> WallParams {
        self.params
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn total_sw(&self) -> &F2Poly {
        &self.total_sw
    }

    /// `u = w · (1+x)^{-a} (1+c)^{-b} (1+x+c)^{-e}`.
    pub fn virtual_class(&mut self, triple: [u32; 3]) -> F2Poly {
        if let Some(u) = self.memo.get(&triple) {
            return u.clone();
        }
        let i = triple.iter().position(|&t| t > 0).expect("nonzero triple is memoized");
        let mut prev = triple;
        prev[i] -= 1;
        let u = self.virtual_class(prev).mul(&self.inverses[i]).expect("same ring");
        self.memo.insert(triple, u.clone());
        u
    }

    pub fn rules_out(&mut self, k: u32) -> Result<RuleOutReport> {
        if k == 0 || k > self.dim {
            return Err(Error::IndexOutOfRange { index: k as usize, lo: 1, hi: self.dim as usize });
        }
        let bound = self.dim - k;
        let mut witnesses = Vec::new();
        for a in 0..=k {
            for b in 0..=k - a {
                for e in 0..=k - a - b {
                    let zeros = k - a - b - e;
                    let top = self.virtual_class([a, b, e]).max_degree();
                    let failure_degree = top.filter(|&t| t > bound);
                    witnesses.push(MultisetWitness {
                        classes: ClassMultiset { counts: [zeros, a, b, e] },
                        failure_degree,
                    });
                }
            }
        }
        let ruled_out = witnesses.iter().all(|w| w.failure_degree.is_some());
        Ok(RuleOutReport { k, ruled_out, witnesses })
    }

    /// Smallest ruled-out `k`, minus one; `dim` if nothing is ruled out.
    pub fn upper_bound(&mut self) -> u64 {
        for k in 1..=self.dim {
            if self.rules_out(k).expect("k in range").ruled_out {
                return u64::from(k - 1);
            }
        }
        u64::from(self.dim)
    }
}

/// Whether `pspan(Q(m,n)) ≥ k` is excluded by the mod-2 Massey–Szczarba
/// condition `w = u · Π(1 + x_i)` with `u_j = 0` for `j > dim − k`.
pub fn virtual_sw_rules_out(p: WallParams, k: u64) -> Result<RuleOutReport> {
    let k32 = u32::try_from(k)
        .map_err(|_| Error::IndexOutOfRange { index: usize::MAX, lo: 1, hi: p.dim() as usize })?;
    ObstructionSearch::new(p).rules_out(k32)
}

/// Upper bound on `pspan(Q(m,n))` from the virtual Stiefel–Whitney obstruction.
pub fn sw_upper_bound(p: WallParams) -> u64 {
    ObstructionSearch::new(p).upper_bound()
}
