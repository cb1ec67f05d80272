//! Concrete graded algebras generated in degree one, with exact structure
//! constants, symmetric-power bases, and the action of basic morphisms on
//! tensor and symmetric powers.
//!
//! Three constructors cover everything we compute with: polynomial rings,
//! affine semigroup rings, and quotients of polynomial rings by monomial
//! ideals. Each has a canonical monomial basis in which the product of two
//! basis elements is again a basis element or zero, so no normal-form
//! engine is needed.

use crate::linalg::{rat, Matrix, Rational};
use crate::veronese::{binomial, compositions, Bidegree, ExponentVector, Permutation, VerMorphism};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Polynomial { vars: usize },
    Semigroup { generators: Vec<Vec<i64>> },
    MonomialQuotient { vars: usize, generators: Vec<ExponentVector> },
}

/// Canonical basis label of a graded piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonomialLabel {
    Exponents(ExponentVector),
    LatticePoint(Vec<i64>),
}

impl MonomialLabel {
    pub fn display(&self) -> String {
        match self {
            MonomialLabel::Exponents(v) => {
                if v.degree() == 0 {
                    return "1".to_string();
                }
                v.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i)
                        } else {
                            format!("x{}^{}", i, e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            }
            MonomialLabel::LatticePoint(p) => {
                let inner: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(","))
            }
        }
    }
}

struct DegreeData {
    labels: Vec<MonomialLabel>,
    index: HashMap<MonomialLabel, usize>,
}

impl DegreeData {
    fn new(labels: Vec<MonomialLabel>) -> Self {
        let index = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        DegreeData { labels, index }
    }
}

/// Canonical basis of a symmetric power: sorted index multisets in
/// lexicographic order.
pub struct SymBasis {
    pub degree: usize,
    pub width: usize,
    monomials: Vec<Vec<u32>>,
}

impl SymBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, indices: &[u32]) -> usize {
        debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        self.monomials
            .binary_search_by(|m| m.as_slice().cmp(indices))
            .expect("monomial not in basis")
    }
}

/// A graded algebra generated in degree one. Degree caches are built lazily
/// behind a lock and immutable afterwards; all operations are pure.
pub struct GradedAlgebra {
    kind: AlgebraKind,
    degrees: Mutex<HashMap<usize, Arc<DegreeData>>>,
    sym: Mutex<HashMap<(usize, usize), Arc<SymBasis>>>,
}

impl GradedAlgebra {
    pub fn polynomial(vars: usize) -> Self {
        assert!(vars >= 1, "need at least one variable");
        GradedAlgebra::new(AlgebraKind::Polynomial { vars })
    }

    pub fn semigroup(generators: Vec<Vec<i64>>) -> Self {
        assert!(!generators.is_empty(), "need at least one generator");
        let dim = generators[0].len();
        assert!(dim >= 1, "generators must live in a positive-dimensional lattice");
        assert!(
            generators.iter().all(|g| g.len() == dim),
            "generators must share one lattice dimension"
        );
        let distinct: BTreeSet<Vec<i64>> = generators.into_iter().collect();
        GradedAlgebra::new(AlgebraKind::Semigroup {
            generators: distinct.into_iter().collect(),
        })
    }

    pub fn monomial_quotient(vars: usize, generators: Vec<ExponentVector>) -> Self {
        assert!(vars >= 1, "need at least one variable");
        for g in &generators {
            assert_eq!(g.vars(), vars, "generator variable count mismatch");
            assert!(g.degree() >= 1, "ideal generators must have positive degree");
        }
        GradedAlgebra::new(AlgebraKind::MonomialQuotient { vars, generators })
    }

    /// The coordinate ring of the projective line, `k[s, t]`, presented as
    /// the semigroup ring on the two unit lattice points. In level `d` the
    /// basis element with index `j` is the point `(j, d - j)`, matching the
    /// usual coordinates `s^j t^(d-j)`.
    pub fn projective_line() -> Self {
        GradedAlgebra::semigroup(vec![vec![1, 0], vec![0, 1]])
    }

    fn new(kind: AlgebraKind) -> Self {
        GradedAlgebra {
            kind,
            degrees: Mutex::new(HashMap::new()),
            sym: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    fn degree_data(&self, d: usize) -> Arc<DegreeData> {
        let mut cache = self.degrees.lock().unwrap();
        if let Some(data) = cache.get(&d) {
            return Arc::clone(data);
        }
        match &self.kind {
            AlgebraKind::Polynomial { vars } => {
                let labels = compositions(*vars, d)
                    .into_iter()
                    .map(MonomialLabel::Exponents)
                    .collect();
                let data = Arc::new(DegreeData::new(labels));
                cache.insert(d, Arc::clone(&data));
                data
            }
            AlgebraKind::MonomialQuotient { vars, generators } => {
                let labels = compositions(*vars, d)
                    .into_iter()
                    .filter(|m| !generators.iter().any(|g| g.leq(m)))
                    .map(MonomialLabel::Exponents)
                    .collect();
                let data = Arc::new(DegreeData::new(labels));
                cache.insert(d, Arc::clone(&data));
                data
            }
            AlgebraKind::Semigroup { generators } => {
                // build every missing level up to d, reusing the highest
                // cached level below d as the starting point
                let mut have: usize = 0;
                let mut level: BTreeSet<Vec<i64>> = BTreeSet::new();
                level.insert(vec![0; generators[0].len()]);
                for k in (0..=d).rev() {
                    if let Some(data) = cache.get(&k) {
                        have = k;
                        level = data
                            .labels
                            .iter()
                            .map(|l| match l {
                                MonomialLabel::LatticePoint(p) => p.clone(),
                                _ => unreachable!(),
                            })
                            .collect();
                        break;
                    }
                }
                for k in have..=d {
                    if !cache.contains_key(&k) {
                        let labels: Vec<MonomialLabel> = level
                            .iter()
                            .cloned()
                            .map(MonomialLabel::LatticePoint)
                            .collect();
                        cache.insert(k, Arc::new(DegreeData::new(labels)));
                    }
                    if k < d {
                        let mut next = BTreeSet::new();
                        for p in &level {
                            for g in generators {
                                let sum: Vec<i64> =
                                    p.iter().zip(g).map(|(a, b)| a + b).collect();
                                next.insert(sum);
                            }
                        }
                        level = next;
                    }
                }
                Arc::clone(cache.get(&d).unwrap())
            }
        }
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degree_data(d).labels.len()
    }

    pub fn basis_labels(&self, d: usize) -> Vec<MonomialLabel> {
        self.degree_data(d).labels.clone()
    }

    /// Index of the product of basis elements `i` (degree `d`) and `j`
    /// (degree `e`) in the basis of degree `d + e`, or `None` when the
    /// product lands in the monomial ideal.
    pub fn mult_indices(&self, d: usize, i: usize, e: usize, j: usize) -> Option<usize> {
        let a = self.degree_data(d);
        let b = self.degree_data(e);
        let target = self.degree_data(d + e);
        let label = match (&a.labels[i], &b.labels[j]) {
            (MonomialLabel::Exponents(x), MonomialLabel::Exponents(y)) => {
                let sum = x.add(y);
                if let AlgebraKind::MonomialQuotient { generators, .. } = &self.kind {
                    if generators.iter().any(|g| g.leq(&sum)) {
                        return None;
                    }
                }
                MonomialLabel::Exponents(sum)
            }
            (MonomialLabel::LatticePoint(x), MonomialLabel::LatticePoint(y)) => {
                MonomialLabel::LatticePoint(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            _ => unreachable!("mixed label kinds"),
        };
        Some(*target.index.get(&label).expect("product outside target basis"))
    }

    pub fn sym_basis(&self, d: usize, m: usize) -> Arc<SymBasis> {
        {
            let cache = self.sym.lock().unwrap();
            if let Some(b) = cache.get(&(d, m)) {
                return Arc::clone(b);
            }
        }
        let dim = self.dim(d);
        let mut monomials = Vec::new();
        let mut cur: Vec<u32> = Vec::with_capacity(m);
        fn rec(dim: usize, m: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for i in start..dim as u32 {
                cur.push(i);
                rec(dim, m, i, cur, out);
                cur.pop();
            }
        }
        rec(dim, m, 0, &mut cur, &mut monomials);
        let basis = Arc::new(SymBasis { degree: d, width: m, monomials });
        let mut cache = self.sym.lock().unwrap();
        let entry = cache.entry((d, m)).or_insert_with(|| Arc::clone(&basis));
        Arc::clone(entry)
    }

    pub fn sym_dim(&self, d: usize, m: usize) -> usize {
        let dim = self.dim(d);
        if m == 0 {
            return 1;
        }
        binomial(dim + m - 1, m) as usize
    }
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

/// An element of one graded piece, as exact coordinates over the canonical
/// monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgElement {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl AlgElement {
    pub fn zero(algebra: &GradedAlgebra, degree: usize) -> Self {
        AlgElement { degree, coords: vec![Rational::zero(); algebra.dim(degree)] }
    }

    pub fn basis_element(algebra: &GradedAlgebra, degree: usize, i: usize) -> Self {
        let mut e = AlgElement::zero(algebra, degree);
        e.coords[i] = rat(1);
        e
    }

    /// The unit (the basis element of the one-dimensional degree-zero piece).
    pub fn unit(algebra: &GradedAlgebra) -> Self {
        AlgElement::basis_element(algebra, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        AlgElement {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> AlgElement {
        AlgElement {
            degree: self.degree,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    fn support(&self) -> Vec<(usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Bilinear multiplication of graded pieces.
pub fn mult(algebra: &GradedAlgebra, x: &AlgElement, y: &AlgElement) -> AlgElement {
    let mut out = AlgElement::zero(algebra, x.degree + y.degree);
    for (i, ci) in x.support() {
        for (j, cj) in y.support() {
            if let Some(k) = algebra.mult_indices(x.degree, i, y.degree, j) {
                out.coords[k] += ci * cj;
            }
        }
    }
    out
}

/// Matrix of multiplication on basis pairs, column `(i, j) -> i * dim_e + j`.
pub fn mult_matrix(algebra: &GradedAlgebra, d: usize, e: usize) -> Matrix {
    let dim_d = algebra.dim(d);
    let dim_e = algebra.dim(e);
    let mut m = Matrix::zero(algebra.dim(d + e), dim_d * dim_e);
    for i in 0..dim_d {
        for j in 0..dim_e {
            if let Some(k) = algebra.mult_indices(d, i, e, j) {
                m.set(k, i * dim_e + j, rat(1));
            }
        }
    }
    m
}

/// An element of a symmetric power, as exact coordinates over the multiset
/// monomial basis in its canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    pub degree: usize,
    pub width: usize,
    pub coords: Vec<Rational>,
}

impl SymElement {
    pub fn zero(algebra: &GradedAlgebra, degree: usize, width: usize) -> Self {
        SymElement {
            degree,
            width,
            coords: vec![Rational::zero(); algebra.sym_basis(degree, width).len()],
        }
    }

    pub fn monomial(algebra: &GradedAlgebra, degree: usize, indices: &[u32]) -> Self {
        let basis = algebra.sym_basis(degree, indices.len());
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let mut e = SymElement::zero(algebra, degree, indices.len());
        e.coords[basis.index_of(&sorted)] = rat(1);
        e
    }

    pub fn from_coords(degree: usize, width: usize, coords: Vec<Rational>) -> Self {
        SymElement { degree, width, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &SymElement) -> SymElement {
        assert_eq!((self.degree, self.width), (other.degree, other.width), "grade mismatch");
        SymElement {
            degree: self.degree,
            width: self.width,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> SymElement {
        SymElement {
            degree: self.degree,
            width: self.width,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }
}

/// Product in the symmetric algebra: multiset union of monomials with
/// coefficient one, extended bilinearly.
pub fn sym_mult(algebra: &GradedAlgebra, f: &SymElement, g: &SymElement) -> SymElement {
    assert_eq!(f.degree, g.degree, "degree mismatch");
    let fb = algebra.sym_basis(f.degree, f.width);
    let gb = algebra.sym_basis(g.degree, g.width);
    let out_basis = algebra.sym_basis(f.degree, f.width + g.width);
    let mut out = SymElement::zero(algebra, f.degree, f.width + g.width);
    for (i, ci) in f.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, cj) in g.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mut merged: Vec<u32> =
                fb.monomial(i).iter().chain(gb.monomial(j)).copied().collect();
            merged.sort_unstable();
            out.coords[out_basis.index_of(&merged)] += ci * cj;
        }
    }
    out
}

/// Component `Sym^m -> Sym^i (x) Sym^(m-i)` of the comultiplication, the
/// multiplicative extension of `v -> v(x)1 + 1(x)v`: a monomial with
/// multiplicity vector `a` maps to the sum over splits `b + c = a` with
/// `|b| = i`, weighted by the product of binomials `C(a_j, b_j)`.
pub fn coproduct_component(
    algebra: &GradedAlgebra,
    f: &SymElement,
    i: usize,
) -> BTreeMap<(usize, usize), Rational> {
    assert!(i <= f.width, "split index out of range");
    let basis = algebra.sym_basis(f.degree, f.width);
    let left_basis = algebra.sym_basis(f.degree, i);
    let right_basis = algebra.sym_basis(f.degree, f.width - i);
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (mi, coeff) in f.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (left, right, weight) in monomial_splits(basis.monomial(mi), i) {
            let key = (left_basis.index_of(&left), right_basis.index_of(&right));
            let entry = out.entry(key).or_insert_with(Rational::zero);
            *entry += coeff * rat(weight as i64);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All ways to split a sorted multiset into a size-`i` part and the rest,
/// with the product-of-binomials weight.
pub(crate) fn monomial_splits(mono: &[u32], i: usize) -> Vec<(Vec<u32>, Vec<u32>, u128)> {
    let mut support: Vec<(u32, u32)> = Vec::new();
    for &ix in mono {
        match support.last_mut() {
            Some((lx, mult)) if *lx == ix => *mult += 1,
            _ => support.push((ix, 1)),
        }
    }
    let mut picks: Vec<u32> = vec![0; support.len()];
    let mut out = Vec::new();
    fn rec(
        pos: usize,
        remaining: u32,
        support: &[(u32, u32)],
        picks: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Vec<u32>, u128)>,
    ) {
        if pos == support.len() {
            if remaining == 0 {
                let weight: u128 = support
                    .iter()
                    .zip(picks.iter())
                    .map(|(&(_, a), &b)| binomial(a as usize, b as usize))
                    .product();
                let mut left = Vec::new();
                let mut right = Vec::new();
                for ((ix, a), b) in support.iter().zip(picks.iter()) {
                    for _ in 0..*b {
                        left.push(*ix);
                    }
                    for _ in 0..(a - b) {
                        right.push(*ix);
                    }
                }
                out.push((left, right, weight));
            }
            return;
        }
        let max_here = support[pos].1.min(remaining);
        for b in 0..=max_here {
            picks[pos] = b;
            rec(pos + 1, remaining - b, support, picks, out);
        }
        picks[pos] = 0;
    }
    rec(0, i as u32, &support, &mut picks, &mut out);
    out
}

// ---------------------------------------------------------------------------
// tensors
// ---------------------------------------------------------------------------

/// An element of a tensor power of one graded piece; terms are ordered
/// tuples of basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub degree: usize,
    pub width: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TensorElement {
    pub fn zero(degree: usize, width: usize) -> Self {
        TensorElement { degree, width, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, tuple: Vec<u32>, coeff: Rational) {
        assert_eq!(tuple.len(), self.width, "width mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple).or_insert_with(Rational::zero);
        *entry += coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn from_terms(degree: usize, width: usize, terms: Vec<(Vec<u32>, i64)>) -> Self {
        let mut t = TensorElement::zero(degree, width);
        for (tuple, c) in terms {
            t.add_term(tuple, rat(c));
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Projection to the symmetric power: each ordered tuple maps to its
    /// sorted multiset monomial with coefficient one.
    pub fn symmetrized(&self, algebra: &GradedAlgebra) -> SymElement {
        let basis = algebra.sym_basis(self.degree, self.width);
        let mut out = SymElement::zero(algebra, self.degree, self.width);
        for (tuple, coeff) in &self.terms {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            out.coords[basis.index_of(&sorted)] += coeff;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// basic morphisms with algebra-element slot data
// ---------------------------------------------------------------------------

/// A basic morphism `(d, m) -> (e, n)`: an order-preserving slot injection,
/// an element of degree `e` for every free target slot, and a multiplier of
/// degree `e - d` for every source slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasicMorphismB {
    source: Bidegree,
    target: Bidegree,
    alpha1: Vec<usize>,
    alpha2: BTreeMap<usize, AlgElement>,
    alpha3: Vec<AlgElement>,
}

impl BasicMorphismB {
    pub fn new(
        source: Bidegree,
        target: Bidegree,
        alpha1: Vec<usize>,
        alpha2: BTreeMap<usize, AlgElement>,
        alpha3: Vec<AlgElement>,
    ) -> Self {
        let (d, m) = (source.degree, source.width);
        let (e, n) = (target.degree, target.width);
        assert!(d <= e && m <= n, "no morphisms {} -> {}", source, target);
        assert_eq!(alpha1.len(), m, "slot injection must have length {}", m);
        assert!(alpha1.windows(2).all(|w| w[0] < w[1]), "slot injection must be strictly increasing");
        assert!(alpha1.iter().all(|&i| i < n), "slot injection out of range");
        let free: Vec<usize> = (0..n).filter(|i| !alpha1.contains(i)).collect();
        assert_eq!(
            alpha2.keys().copied().collect::<Vec<_>>(),
            free,
            "free-slot values must cover exactly the complement of the injection"
        );
        for v in alpha2.values() {
            assert_eq!(v.degree, e, "free-slot values must have degree {}", e);
        }
        assert_eq!(alpha3.len(), m, "multiplier list must have length {}", m);
        for v in &alpha3 {
            assert_eq!(v.degree, e - d, "multipliers must have degree {}", e - d);
        }
        BasicMorphismB { source, target, alpha1, alpha2, alpha3 }
    }

    pub fn identity(algebra: &GradedAlgebra, at: Bidegree) -> Self {
        let m = at.width;
        BasicMorphismB::new(
            at,
            at,
            (0..m).collect(),
            BTreeMap::new(),
            vec![AlgElement::unit(algebra); m],
        )
    }

    /// Width-preserving multiplier morphism `(d, m) -> (d + k, m)` given by
    /// one algebra element per slot.
    pub fn multiplier(source: Bidegree, multipliers: Vec<AlgElement>) -> Self {
        assert_eq!(multipliers.len(), source.width, "multiplier count mismatch");
        let k = multipliers.first().map_or(0, |v| v.degree);
        let target = Bidegree::new(source.degree + k, source.width);
        BasicMorphismB::new(
            source,
            target,
            (0..source.width).collect(),
            BTreeMap::new(),
            multipliers,
        )
    }

    /// Transport of a monomial-valued morphism into a polynomial algebra.
    pub fn from_ver(algebra: &GradedAlgebra, alpha: &VerMorphism) -> Self {
        let AlgebraKind::Polynomial { vars } = algebra.kind() else {
            panic!("monomial transport needs a polynomial algebra");
        };
        assert_eq!(*vars, alpha.vars(), "variable count mismatch");
        let e = alpha.target().degree;
        let d = alpha.source().degree;
        let find = |v: &ExponentVector, deg: usize| -> AlgElement {
            let labels = algebra.basis_labels(deg);
            let idx = labels
                .iter()
                .position(|l| matches!(l, MonomialLabel::Exponents(w) if w == v))
                .expect("monomial in basis");
            AlgElement::basis_element(algebra, deg, idx)
        };
        BasicMorphismB::new(
            alpha.source(),
            alpha.target(),
            alpha.slot_injection().to_vec(),
            alpha
                .free_slot_monomials()
                .iter()
                .map(|(&i, v)| (i, find(v, e)))
                .collect(),
            alpha.multipliers().iter().map(|v| find(v, e - d)).collect(),
        )
    }

    pub fn source(&self) -> Bidegree {
        self.source
    }

    pub fn target(&self) -> Bidegree {
        self.target
    }

    pub fn slot_injection(&self) -> &[usize] {
        &self.alpha1
    }

    pub fn free_slot_values(&self) -> &BTreeMap<usize, AlgElement> {
        &self.alpha2
    }

    pub fn multipliers(&self) -> &[AlgElement] {
        &self.alpha3
    }
}

/// Composition of basic morphisms: the same slot bookkeeping as in the
/// monomial category, with componentwise addition replaced by
/// multiplication in the algebra.
pub fn compose_basic(
    algebra: &GradedAlgebra,
    beta: &BasicMorphismB,
    alpha: &BasicMorphismB,
) -> BasicMorphismB {
    assert_eq!(alpha.target, beta.source, "object mismatch");
    let m = alpha.source.width;
    let p = beta.target.width;
    let gamma1: Vec<usize> = alpha.alpha1.iter().map(|&i| beta.alpha1[i]).collect();
    let gamma3: Vec<AlgElement> = (0..m)
        .map(|i| mult(algebra, &alpha.alpha3[i], &beta.alpha3[alpha.alpha1[i]]))
        .collect();
    let mut beta_preimage: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &j) in beta.alpha1.iter().enumerate() {
        beta_preimage.insert(j, i);
    }
    let mut gamma2 = BTreeMap::new();
    for i in 0..p {
        if gamma1.contains(&i) {
            continue;
        }
        match beta_preimage.get(&i) {
            None => {
                gamma2.insert(i, beta.alpha2[&i].clone());
            }
            Some(&ip) => {
                gamma2.insert(i, mult(algebra, &alpha.alpha2[&ip], &beta.alpha3[ip]));
            }
        }
    }
    BasicMorphismB::new(alpha.source, beta.target, gamma1, gamma2, gamma3)
}

/// Expand a list of slot values into pure tensor terms.
fn expand_slots(values: &[AlgElement]) -> Vec<(Vec<u32>, Rational)> {
    let mut acc: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), rat(1))];
    for v in values {
        let support = v.support();
        let mut next = Vec::with_capacity(acc.len() * support.len());
        for (prefix, coeff) in &acc {
            for (i, c) in &support {
                let mut tuple = prefix.clone();
                tuple.push(*i as u32);
                next.push((tuple, coeff * *c));
            }
        }
        acc = next;
    }
    acc
}

/// Apply a basic morphism at tensor level: target slot `alpha1(i)` receives
/// `alpha3(i) * b_i` and each free slot `j` receives `alpha2(j)`; slot
/// positions are retained.
pub fn apply_basic_tensor(
    algebra: &GradedAlgebra,
    alpha: &BasicMorphismB,
    f: &TensorElement,
) -> TensorElement {
    assert_eq!(
        (f.degree, f.width),
        (alpha.source.degree, alpha.source.width),
        "object mismatch"
    );
    let e = alpha.target.degree;
    let n = alpha.target.width;
    let mut source_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &k) in alpha.alpha1.iter().enumerate() {
        source_at.insert(k, i);
    }
    let mut out = TensorElement::zero(e, n);
    for (tuple, coeff) in &f.terms {
        let mut slot_values: Vec<AlgElement> = Vec::with_capacity(n);
        for k in 0..n {
            match source_at.get(&k) {
                Some(&i) => {
                    let b = AlgElement::basis_element(algebra, f.degree, tuple[i] as usize);
                    slot_values.push(mult(algebra, &alpha.alpha3[i], &b));
                }
                None => slot_values.push(alpha.alpha2[&k].clone()),
            }
        }
        for (out_tuple, c) in expand_slots(&slot_values) {
            out.add_term(out_tuple, coeff * c);
        }
    }
    out
}

/// Apply a basic morphism to a symmetric element: each multiset monomial is
/// read in its canonical sorted order, factor `i` is multiplied by
/// `alpha3(i)`, the free-slot values are appended, and the resulting
/// multiset is a monomial of the target power. Linear in `f` and in every
/// slot value.
pub fn apply_basic_sym(
    algebra: &GradedAlgebra,
    alpha: &BasicMorphismB,
    f: &SymElement,
) -> SymElement {
    assert_eq!(
        (f.degree, f.width),
        (alpha.source.degree, alpha.source.width),
        "object mismatch"
    );
    let basis = algebra.sym_basis(f.degree, f.width);
    let e = alpha.target.degree;
    let n = alpha.target.width;
    let out_basis = algebra.sym_basis(e, n);
    let mut out = SymElement::zero(algebra, e, n);
    for (mi, coeff) in f.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mono = basis.monomial(mi);
        let mut slot_values: Vec<AlgElement> = Vec::with_capacity(n);
        for (i, &b) in mono.iter().enumerate() {
            let be = AlgElement::basis_element(algebra, f.degree, b as usize);
            slot_values.push(mult(algebra, &alpha.alpha3[i], &be));
        }
        for v in alpha.alpha2.values() {
            slot_values.push(v.clone());
        }
        for (mut out_tuple, c) in expand_slots(&slot_values) {
            out_tuple.sort_unstable();
            out.coords[out_basis.index_of(&out_tuple)] += coeff * c;
        }
    }
    out
}

/// Action of a permutation of the target slots on a basic morphism; returns
/// the moved morphism and the induced permutation of the source slots.
pub fn sigma_act_basic(
    sigma: &Permutation,
    alpha: &BasicMorphismB,
) -> (BasicMorphismB, Permutation) {
    let n = alpha.target.width;
    assert_eq!(sigma.len(), n, "size mismatch");
    let m = alpha.source.width;
    let mut moved: Vec<(usize, usize)> =
        (0..m).map(|i| (sigma.apply(alpha.alpha1[i]), i)).collect();
    moved.sort_by_key(|&(pos, _)| pos);
    let new_alpha1: Vec<usize> = moved.iter().map(|&(p, _)| p).collect();
    let new_alpha3: Vec<AlgElement> =
        moved.iter().map(|&(_, i)| alpha.alpha3[i].clone()).collect();
    let mut tau = vec![0usize; m];
    for (k, &(_, i)) in moved.iter().enumerate() {
        tau[i] = k;
    }
    let new_alpha2: BTreeMap<usize, AlgElement> = alpha
        .alpha2
        .iter()
        .map(|(&j, v)| (sigma.apply(j), v.clone()))
        .collect();
    (
        BasicMorphismB::new(alpha.source, alpha.target, new_alpha1, new_alpha2, new_alpha3),
        Permutation::from_one_line(tau),
    )
}

/// Full symmetrization of a basic morphism: the average of its orbit under
/// all permutations of the target slots. Applying the result termwise with
/// [`apply_basic_sym`] is the well-defined action of the symmetrized
/// category, independent of how monomials are lifted to tensors.
pub fn symmetrize_basic(alpha: &BasicMorphismB) -> Vec<(BasicMorphismB, Rational)> {
    let n = alpha.target.width;
    assert!(n <= 8, "target width {} too large for symmetrization", n);
    let order: u128 = (1..=n.max(1) as u128).product();
    let inv = Rational::new(1.into(), order.into());
    let mut acc: BTreeMap<BasicMorphismB, Rational> = BTreeMap::new();
    for sigma in Permutation::all(n) {
        let (moved, _) = sigma_act_basic(&sigma, alpha);
        let entry = acc.entry(moved).or_insert_with(Rational::zero);
        *entry += &inv;
    }
    acc.into_iter().collect()
}

/// Apply a formal combination of basic morphisms termwise.
pub fn apply_combo_sym(
    algebra: &GradedAlgebra,
    combo: &[(BasicMorphismB, Rational)],
    f: &SymElement,
) -> SymElement {
    let (first, _) = combo.first().expect("empty combination");
    let mut out = SymElement::zero(algebra, first.target().degree, first.target().width);
    for (alpha, coeff) in combo {
        out = out.add(&apply_basic_sym(algebra, alpha, f).scale(coeff));
    }
    out
}

/// Dimension of the span of basic morphisms modulo the multilinear
/// relations: `C(n, m) * dim(B_{e-d})^m * dim(B_e)^(n-m)`.
pub fn hom_dim_basic(algebra: &GradedAlgebra, source: Bidegree, target: Bidegree) -> u128 {
    let (d, m) = (source.degree, source.width);
    let (e, n) = (target.degree, target.width);
    if d > e || m > n {
        return 0;
    }
    binomial(n, m)
        * (algebra.dim(e - d) as u128).pow(m as u32)
        * (algebra.dim(e) as u128).pow(n as u32 - m as u32)
}

/// All basic morphisms whose slot values are single basis elements; these
/// span the hom space and are independent modulo the multilinear relations.
pub fn enumerate_basic_basis(
    algebra: &GradedAlgebra,
    source: Bidegree,
    target: Bidegree,
) -> Vec<BasicMorphismB> {
    use itertools::Itertools;
    let (d, m) = (source.degree, source.width);
    let (e, n) = (target.degree, target.width);
    if d > e || m > n {
        return Vec::new();
    }
    let dim_shift = algebra.dim(e - d);
    let dim_gen = algebra.dim(e);
    let mut out = Vec::new();
    for alpha1 in (0..n).combinations(m) {
        let free: Vec<usize> = (0..n).filter(|i| !alpha1.contains(i)).collect();
        let gen_choices = index_power(dim_gen, free.len());
        let shift_choices = index_power(dim_shift, m);
        for g in &gen_choices {
            for s in &shift_choices {
                let alpha2: BTreeMap<usize, AlgElement> = free
                    .iter()
                    .zip(g)
                    .map(|(&slot, &ix)| (slot, AlgElement::basis_element(algebra, e, ix)))
                    .collect();
                let alpha3: Vec<AlgElement> = s
                    .iter()
                    .map(|&ix| AlgElement::basis_element(algebra, e - d, ix))
                    .collect();
                out.push(BasicMorphismB::new(source, target, alpha1.clone(), alpha2, alpha3));
            }
        }
    }
    out
}

fn index_power(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * dim);
        for prefix in &out {
            for i in 0..dim {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
