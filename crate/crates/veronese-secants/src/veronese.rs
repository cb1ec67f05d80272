//! The combinatorial category of bidegrees.
//!
//! Objects are pairs `(d, m)`; a morphism `(d, m) -> (e, n)` is an
//! order-preserving slot injection `alpha1 : [m] -> [n]`, a monomial of
//! degree `e` for every free target slot (`alpha2`), and a degree-raising
//! monomial multiplier of degree `e - d` for every source slot (`alpha3`).
//! Monomials live in a fixed number of variables and are written as
//! exponent vectors.
//!
//! This module implements composition, the word encoding of a morphism over
//! the two-tagged alphabet of exponent vectors, the Higman (subsequence
//! domination) order on words, left-divisibility of morphisms, a
//! composition-compatible total order, the symmetric-group action on target
//! slots, and symmetrization of formal linear combinations.

use crate::linalg::{rat, Rational};
use itertools::Itertools;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// An object `(d, m)`: polynomial degree and tensor width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub degree: usize,
    pub width: usize,
}

impl Bidegree {
    pub fn new(degree: usize, width: usize) -> Self {
        Bidegree { degree, width }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.width)
    }
}

/// A monomial in `r` variables, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(vars: usize) -> Self {
        ExponentVector(vec![0; vars])
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.vars(), other.vars(), "variable count mismatch");
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, if nonnegative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        assert_eq!(self.vars(), other.vars(), "variable count mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVector)
    }

    /// Componentwise comparison (the Dickson order).
    pub fn leq(&self, other: &ExponentVector) -> bool {
        self.vars() == other.vars() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// All exponent vectors in `vars` variables of total degree `d`, in
/// lexicographic (ascending) order. This is the canonical monomial basis
/// order used throughout the crate.
pub fn compositions(vars: usize, d: usize) -> Vec<ExponentVector> {
    assert!(vars >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut cur = vec![0u32; vars];
    fn rec(cur: &mut Vec<u32>, pos: usize, rem: usize, out: &mut Vec<ExponentVector>) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u32;
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for c in 0..=rem {
            cur[pos] = c as u32;
            rec(cur, pos + 1, rem - c, out);
        }
    }
    rec(&mut cur, 0, d, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `d` in `vars` variables.
pub fn monomial_count(vars: usize, d: usize) -> u128 {
    binomial(d + vars - 1, vars - 1)
}

/// Permutation of `[n]` in one-line notation: `i -> perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Self {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            assert!(x < n && !seen[x], "not a permutation");
            seen[x] = true;
        }
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "size mismatch");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(Permutation).chain(
            // permutations(0) yields nothing; the empty permutation is valid
            if n == 0 { Some(Permutation(Vec::new())) } else { None },
        )
    }

    pub fn random<R: rand::Rng>(rng: &mut R, n: usize) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        Permutation(v)
    }
}

/// A morphism `(d, m) -> (e, n)` with monomial slot data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerMorphism {
    vars: usize,
    source: Bidegree,
    target: Bidegree,
    /// Strictly increasing slot injection, 0-based, length `m`.
    alpha1: Vec<usize>,
    /// Free target slot -> monomial of degree `e`.
    alpha2: BTreeMap<usize, ExponentVector>,
    /// Source slot -> multiplier of degree `e - d`, length `m`.
    alpha3: Vec<ExponentVector>,
}

impl VerMorphism {
    pub fn new(
        vars: usize,
        source: Bidegree,
        target: Bidegree,
        alpha1: Vec<usize>,
        alpha2: BTreeMap<usize, ExponentVector>,
        alpha3: Vec<ExponentVector>,
    ) -> Self {
        let (d, m) = (source.degree, source.width);
        let (e, n) = (target.degree, target.width);
        assert!(d <= e && m <= n, "no morphisms {} -> {}", source, target);
        assert_eq!(alpha1.len(), m, "slot injection must have length {}", m);
        assert!(alpha1.windows(2).all(|w| w[0] < w[1]), "slot injection must be strictly increasing");
        assert!(alpha1.iter().all(|&i| i < n), "slot injection out of range");
        assert_eq!(alpha3.len(), m, "multiplier list must have length {}", m);
        let image: Vec<usize> = alpha1.clone();
        let free: Vec<usize> = (0..n).filter(|i| !image.contains(i)).collect();
        assert_eq!(
            alpha2.keys().copied().collect::<Vec<_>>(),
            free,
            "free-slot monomials must cover exactly the complement of the injection"
        );
        for v in alpha2.values() {
            assert_eq!(v.vars(), vars, "variable count mismatch");
            assert_eq!(v.degree(), e, "free-slot monomials must have degree {}", e);
        }
        for v in &alpha3 {
            assert_eq!(v.vars(), vars, "variable count mismatch");
            assert_eq!(v.degree(), e - d, "multipliers must have degree {}", e - d);
        }
        VerMorphism { vars, source, target, alpha1, alpha2, alpha3 }
    }

    pub fn identity(vars: usize, at: Bidegree) -> Self {
        let m = at.width;
        VerMorphism::new(
            vars,
            at,
            at,
            (0..m).collect(),
            BTreeMap::new(),
            vec![ExponentVector::zero(vars); m],
        )
    }

    pub fn vars(&self) -> usize {
        self.vars
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

    pub fn free_slot_monomials(&self) -> &BTreeMap<usize, ExponentVector> {
        &self.alpha2
    }

    pub fn multipliers(&self) -> &[ExponentVector] {
        &self.alpha3
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.alpha2.is_empty()
            && self.alpha3.iter().all(|v| v.degree() == 0)
    }
}

/// `compose(beta, alpha) = beta ∘ alpha`, defined when
/// `alpha.target == beta.source`.
pub fn compose(beta: &VerMorphism, alpha: &VerMorphism) -> VerMorphism {
    assert_eq!(alpha.vars, beta.vars, "variable count mismatch");
    assert_eq!(alpha.target, beta.source, "object mismatch: {} vs {}", alpha.target, beta.source);
    let m = alpha.source.width;
    let p = beta.target.width;

    let gamma1: Vec<usize> = alpha.alpha1.iter().map(|&i| beta.alpha1[i]).collect();
    let gamma3: Vec<ExponentVector> = (0..m)
        .map(|i| alpha.alpha3[i].add(&beta.alpha3[alpha.alpha1[i]]))
        .collect();

    // positions of beta's image, and which source slot they came from
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
                gamma2.insert(i, alpha.alpha2[&ip].add(&beta.alpha3[ip]));
            }
        }
    }

    VerMorphism::new(alpha.vars, alpha.source, beta.target, gamma1, gamma2, gamma3)
}

// ---------------------------------------------------------------------------
// words and orders
// ---------------------------------------------------------------------------

/// A letter of the two-tagged alphabet: exponent vectors in two disjoint
/// copies. Letters with different tags are incomparable in the Higman order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaLetter {
    /// Houses free-slot monomials (degree `e`).
    Gen(ExponentVector),
    /// Houses slot multipliers (degree `e - d`).
    Shift(ExponentVector),
}

impl SigmaLetter {
    pub fn vector(&self) -> &ExponentVector {
        match self {
            SigmaLetter::Gen(v) | SigmaLetter::Shift(v) => v,
        }
    }

    fn same_tag(&self, other: &SigmaLetter) -> bool {
        matches!(
            (self, other),
            (SigmaLetter::Gen(_), SigmaLetter::Gen(_))
                | (SigmaLetter::Shift(_), SigmaLetter::Shift(_))
        )
    }

    /// Letterwise domination: same tag and componentwise `<=`.
    pub fn dominated_by(&self, other: &SigmaLetter) -> bool {
        self.same_tag(other) && self.vector().leq(other.vector())
    }

    /// Total order used for the composition-compatible lexicographic order:
    /// every `Gen` beats every `Shift`; within a tag, lexicographic.
    pub fn total_cmp(&self, other: &SigmaLetter) -> Ordering {
        match (self, other) {
            (SigmaLetter::Gen(_), SigmaLetter::Shift(_)) => Ordering::Greater,
            (SigmaLetter::Shift(_), SigmaLetter::Gen(_)) => Ordering::Less,
            (SigmaLetter::Gen(a), SigmaLetter::Gen(b))
            | (SigmaLetter::Shift(a), SigmaLetter::Shift(b)) => a.0.cmp(&b.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<SigmaLetter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The word of a morphism: letter `i` is `Shift(alpha3(j))` when slot `i`
/// is the image of source slot `j`, and `Gen(alpha2(i))` otherwise.
pub fn word_encode(alpha: &VerMorphism) -> Word {
    let n = alpha.target.width;
    let mut shift_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, &i) in alpha.alpha1.iter().enumerate() {
        shift_at.insert(i, j);
    }
    let letters = (0..n)
        .map(|i| match shift_at.get(&i) {
            Some(&j) => SigmaLetter::Shift(alpha.alpha3[j].clone()),
            None => SigmaLetter::Gen(alpha.alpha2[&i].clone()),
        })
        .collect();
    Word(letters)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordDecodeError {
    #[error("word has {found} shift letters but the source has width {expected}")]
    ShiftCount { expected: usize, found: usize },
    #[error("letters have inconsistent degrees")]
    InconsistentDegrees,
    #[error("letters have inconsistent variable counts")]
    InconsistentVars,
}

/// Reconstruct the unique morphism with the given word and source.
/// The target degree is inferred from the letters; an all-empty word (width
/// zero) decodes to the identity-shaped morphism with target degree `d`.
pub fn word_decode(
    word: &Word,
    source: Bidegree,
    vars: usize,
) -> Result<VerMorphism, WordDecodeError> {
    let (d, m) = (source.degree, source.width);
    let shifts: Vec<(usize, &ExponentVector)> = word
        .0
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match l {
            SigmaLetter::Shift(v) => Some((i, v)),
            _ => None,
        })
        .collect();
    if shifts.len() != m {
        return Err(WordDecodeError::ShiftCount { expected: m, found: shifts.len() });
    }
    if word.0.iter().any(|l| l.vector().vars() != vars) {
        return Err(WordDecodeError::InconsistentVars);
    }
    let gens: Vec<(usize, &ExponentVector)> = word
        .0
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match l {
            SigmaLetter::Gen(v) => Some((i, v)),
            _ => None,
        })
        .collect();

    let shift_deg = shifts.first().map(|(_, v)| v.degree());
    if let Some(s) = shift_deg {
        if shifts.iter().any(|(_, v)| v.degree() != s) {
            return Err(WordDecodeError::InconsistentDegrees);
        }
    }
    let gen_deg = gens.first().map(|(_, v)| v.degree());
    if let Some(g) = gen_deg {
        if gens.iter().any(|(_, v)| v.degree() != g) {
            return Err(WordDecodeError::InconsistentDegrees);
        }
    }
    let e = match (gen_deg, shift_deg) {
        (Some(g), Some(s)) => {
            if g != d + s {
                return Err(WordDecodeError::InconsistentDegrees);
            }
            g
        }
        (Some(g), None) => {
            if g < d {
                return Err(WordDecodeError::InconsistentDegrees);
            }
            g
        }
        (None, Some(s)) => d + s,
        (None, None) => d,
    };

    let alpha1: Vec<usize> = shifts.iter().map(|(i, _)| *i).collect();
    let alpha3: Vec<ExponentVector> = shifts.iter().map(|(_, v)| (*v).clone()).collect();
    let alpha2: BTreeMap<usize, ExponentVector> =
        gens.into_iter().map(|(i, v)| (i, v.clone())).collect();
    Ok(VerMorphism::new(vars, source, Bidegree::new(e, word.len()), alpha1, alpha2, alpha3))
}

/// Higman order: `u <= v` when some strictly increasing choice of positions
/// of `v` dominates `u` letter by letter. Greedy earliest matching is exact
/// for this order.
pub fn higman_leq(u: &Word, v: &Word) -> bool {
    let mut pos = 0;
    for letter in &u.0 {
        let found = v.0[pos..].iter().position(|cand| letter.dominated_by(cand));
        match found {
            Some(off) => pos += off + 1,
            None => return false,
        }
    }
    true
}

/// Left-divisibility: a `beta` with `compose(beta, alpha) == gamma`, if one
/// exists. When several work, the least in the [`lex_compare`] order is
/// returned, which makes reduction deterministic.
pub fn divides(alpha: &VerMorphism, gamma: &VerMorphism) -> Option<VerMorphism> {
    assert_eq!(alpha.source, gamma.source, "source mismatch");
    assert_eq!(alpha.vars, gamma.vars, "variable count mismatch");
    let (e, n) = (alpha.target.degree, alpha.target.width);
    let (f, p) = (gamma.target.degree, gamma.target.width);
    if f < e || p < n {
        return None;
    }
    let m = alpha.source.width;

    // beta1 is forced on the image of alpha1 and free elsewhere; enumerate
    // all strictly increasing completions.
    let mut forced: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..m {
        forced.insert(alpha.alpha1[i], gamma.alpha1[i]);
    }
    let gamma_image: Vec<usize> = gamma.alpha1.clone();
    let candidates_for_free: Vec<usize> =
        (0..p).filter(|i| !gamma_image.contains(i)).collect();

    let mut assignments: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        slot: usize,
        n: usize,
        last: Option<usize>,
        forced: &BTreeMap<usize, usize>,
        free_targets: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slot == n {
            out.push(cur.clone());
            return;
        }
        if let Some(&img) = forced.get(&slot) {
            if last.map_or(true, |l| img > l) {
                cur.push(img);
                rec(slot + 1, n, Some(img), forced, free_targets, cur, out);
                cur.pop();
            }
            return;
        }
        for &t in free_targets {
            if last.map_or(true, |l| t > l) {
                cur.push(t);
                rec(slot + 1, n, Some(t), forced, free_targets, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, None, &forced, &candidates_for_free, &mut cur, &mut assignments);

    let mut best: Option<VerMorphism> = None;
    'outer: for beta1 in assignments {
        // beta3 on image slots is forced to gamma3 - alpha3
        let mut beta3: Vec<Option<ExponentVector>> = vec![None; n];
        for i in 0..m {
            match gamma.alpha3[i].checked_sub(&alpha.alpha3[i]) {
                Some(diff) => beta3[alpha.alpha1[i]] = Some(diff),
                None => continue 'outer,
            }
        }
        // beta3 on matched free slots is forced to gamma2(beta1(s)) - alpha2(s)
        for s in 0..n {
            if beta3[s].is_some() {
                continue;
            }
            let target_pos = beta1[s];
            let g2 = &gamma.alpha2[&target_pos];
            match g2.checked_sub(&alpha.alpha2[&s]) {
                Some(diff) => beta3[s] = Some(diff),
                None => continue 'outer,
            }
        }
        let beta3: Vec<ExponentVector> = beta3.into_iter().map(|v| v.unwrap()).collect();
        // beta2 on untouched target slots copies gamma2
        let beta1_image: Vec<usize> = beta1.clone();
        let beta2: BTreeMap<usize, ExponentVector> = (0..p)
            .filter(|i| !beta1_image.contains(i))
            .map(|i| (i, gamma.alpha2[&i].clone()))
            .collect();
        let beta = VerMorphism::new(
            alpha.vars,
            alpha.target,
            gamma.target,
            beta1,
            beta2,
            beta3,
        );
        debug_assert_eq!(&compose(&beta, alpha), gamma);
        best = match best {
            None => Some(beta),
            Some(b) => {
                if lex_compare(&beta, &b) == Ordering::Less {
                    Some(beta)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Total order on morphisms with common source and target, compatible with
/// left composition: words are compared letterwise, with every `Gen` letter
/// above every `Shift` letter and lexicographic comparison within a tag.
pub fn lex_compare(alpha: &VerMorphism, gamma: &VerMorphism) -> Ordering {
    assert_eq!(alpha.source, gamma.source, "object mismatch");
    assert_eq!(alpha.target, gamma.target, "object mismatch");
    let (u, v) = (word_encode(alpha), word_encode(gamma));
    for (a, b) in u.0.iter().zip(&v.0) {
        match a.total_cmp(b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Action of a permutation of the target slots. Returns the transformed
/// morphism together with the induced permutation of the source slots (the
/// unique one making the transported slot injection order-preserving).
pub fn sigma_act(sigma: &Permutation, alpha: &VerMorphism) -> (VerMorphism, Permutation) {
    let n = alpha.target.width;
    assert_eq!(sigma.len(), n, "size mismatch");
    let m = alpha.source.width;

    let mut moved: Vec<(usize, usize)> =
        (0..m).map(|i| (sigma.apply(alpha.alpha1[i]), i)).collect();
    moved.sort_by_key(|&(pos, _)| pos);

    let new_alpha1: Vec<usize> = moved.iter().map(|&(pos, _)| pos).collect();
    let new_alpha3: Vec<ExponentVector> =
        moved.iter().map(|&(_, i)| alpha.alpha3[i].clone()).collect();
    let mut tau = vec![0usize; m];
    for (k, &(_, i)) in moved.iter().enumerate() {
        tau[i] = k;
    }
    let new_alpha2: BTreeMap<usize, ExponentVector> = alpha
        .alpha2
        .iter()
        .map(|(&j, v)| (sigma.apply(j), v.clone()))
        .collect();

    (
        VerMorphism::new(
            alpha.vars,
            alpha.source,
            alpha.target,
            new_alpha1,
            new_alpha2,
            new_alpha3,
        ),
        Permutation::from_one_line(tau),
    )
}

// ---------------------------------------------------------------------------
// formal linear combinations
// ---------------------------------------------------------------------------

/// A formal rational combination of morphisms sharing one source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCombo {
    source: Bidegree,
    target: Bidegree,
    terms: BTreeMap<VerMorphism, Rational>,
}

impl FormalCombo {
    pub fn zero(source: Bidegree, target: Bidegree) -> Self {
        FormalCombo { source, target, terms: BTreeMap::new() }
    }

    pub fn from_morphism(m: VerMorphism) -> Self {
        let mut c = FormalCombo::zero(m.source(), m.target());
        c.add_term(m, rat(1));
        c
    }

    pub fn source(&self) -> Bidegree {
        self.source
    }

    pub fn target(&self) -> Bidegree {
        self.target
    }

    pub fn add_term(&mut self, m: VerMorphism, coeff: Rational) {
        assert_eq!(m.source(), self.source, "object mismatch");
        assert_eq!(m.target(), self.target, "object mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += coeff;
        // prune exact cancellation
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VerMorphism, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, factor: &Rational) -> FormalCombo {
        let mut out = FormalCombo::zero(self.source, self.target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn add(&self, other: &FormalCombo) -> FormalCombo {
        assert_eq!(self.source, other.source, "object mismatch");
        assert_eq!(self.target, other.target, "object mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

/// Bilinear composition of formal combinations.
pub fn compose_combo(beta: &FormalCombo, alpha: &FormalCombo) -> FormalCombo {
    assert_eq!(alpha.target, beta.source, "object mismatch");
    let mut out = FormalCombo::zero(alpha.source, beta.target);
    for (bm, bc) in &beta.terms {
        for (am, ac) in &alpha.terms {
            out.add_term(compose(bm, am), bc * ac);
        }
    }
    out
}

/// Average of a combination over all permutations of the target slots.
/// The result is invariant; applying it twice changes nothing. Target
/// widths above 8 are rejected to keep the factorial enumeration sane.
pub fn symmetrize(c: &FormalCombo) -> FormalCombo {
    let n = c.target.width;
    assert!(n <= 8, "target width {} too large for symmetrization", n);
    let order: u128 = (1..=n as u128).product();
    let inv = Rational::new(1.into(), order.into());
    let mut out = FormalCombo::zero(c.source, c.target);
    for sigma in Permutation::all(n) {
        for (m, coeff) in &c.terms {
            let (moved, _) = sigma_act(&sigma, m);
            out.add_term(moved, coeff * &inv);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// counting and enumeration
// ---------------------------------------------------------------------------

/// Number of morphisms `source -> target` in `vars` variables:
/// `C(n, m) * #monomials(e)^(n-m) * #monomials(e-d)^m`, zero when the
/// degrees or widths decrease.
pub fn hom_count(vars: usize, source: Bidegree, target: Bidegree) -> u128 {
    let (d, m) = (source.degree, source.width);
    let (e, n) = (target.degree, target.width);
    if d > e || m > n {
        return 0;
    }
    binomial(n, m)
        * monomial_count(vars, e).pow((n - m) as u32)
        * monomial_count(vars, e - d).pow(m as u32)
}

fn cartesian_power<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for prefix in &out {
            for it in items {
                let mut v = prefix.clone();
                v.push(it.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Every morphism `source -> target`, in a deterministic order.
pub fn enumerate_morphisms(
    vars: usize,
    source: Bidegree,
    target: Bidegree,
) -> Vec<VerMorphism> {
    let (d, m) = (source.degree, source.width);
    let (e, n) = (target.degree, target.width);
    if d > e || m > n {
        return Vec::new();
    }
    let gen_monomials = compositions(vars, e);
    let shift_monomials = compositions(vars, e - d);
    let mut out = Vec::new();
    for alpha1 in (0..n).combinations(m) {
        let free: Vec<usize> = (0..n).filter(|i| !alpha1.contains(i)).collect();
        for gen_choice in cartesian_power(&gen_monomials, free.len()) {
            for shift_choice in cartesian_power(&shift_monomials, m) {
                let alpha2: BTreeMap<usize, ExponentVector> =
                    free.iter().copied().zip(gen_choice.iter().cloned()).collect();
                out.push(VerMorphism::new(
                    vars,
                    source,
                    target,
                    alpha1.clone(),
                    alpha2,
                    shift_choice,
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// random generation (used by the self-test suites)
// ---------------------------------------------------------------------------

pub fn random_exponent_vector<R: rand::Rng>(rng: &mut R, vars: usize, d: usize) -> ExponentVector {
    let mut v = vec![0u32; vars];
    for _ in 0..d {
        v[rng.gen_range(0..vars)] += 1;
    }
    ExponentVector(v)
}

pub fn random_morphism<R: rand::Rng>(
    rng: &mut R,
    vars: usize,
    source: Bidegree,
    target: Bidegree,
) -> VerMorphism {
    let (d, m) = (source.degree, source.width);
    let (e, n) = (target.degree, target.width);
    assert!(d <= e && m <= n);
    let mut slots: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        slots.swap(i, j);
    }
    let mut alpha1: Vec<usize> = slots[..m].to_vec();
    alpha1.sort_unstable();
    let alpha2 = (0..n)
        .filter(|i| !alpha1.contains(i))
        .map(|i| (i, random_exponent_vector(rng, vars, e)))
        .collect();
    let alpha3 = (0..m).map(|_| random_exponent_vector(rng, vars, e - d)).collect();
    VerMorphism::new(vars, source, target, alpha1, alpha2, alpha3)
}
