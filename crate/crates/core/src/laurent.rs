//! Exact sparse Laurent polynomials in `q, w, z_1, ..., z_n` with integer
//! coefficients, and the action of the symmetric group on the `z` indices.
//!
//! Every polynomial carries its variable context (the number `n` of
//! `z`-variables). Exponent vectors are dense over the context, laid out as
//! `[q, w, z_1, ..., z_n]`, so the derived ordering on them is the canonical
//! lexicographic monomial order used for serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::modp;

/// A variable of the ambient ring. `Z` indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarId {
    Q,
    W,
    Z(usize),
}

impl VarId {
    fn slot(self) -> usize {
        match self {
            VarId::Q => 0,
            VarId::W => 1,
            VarId::Z(i) => i + 1,
        }
    }

    fn from_slot(slot: usize) -> VarId {
        match slot {
            0 => VarId::Q,
            1 => VarId::W,
            s => VarId::Z(s - 1),
        }
    }

    fn check(self, nz: usize) -> Result<()> {
        match self {
            VarId::Z(i) if i == 0 || i > nz => Err(Error::Context(format!(
                "z{i} is not a variable of a context with {nz} z-variables"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Q => write!(f, "q"),
            VarId::W => write!(f, "w"),
            VarId::Z(i) => write!(f, "z{i}"),
        }
    }
}

/// Exponents of one monomial over a fixed context; zero means "absent".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(SmallVec<[i32; 10]>);

impl ExponentVector {
    pub fn zero(nz: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, nz + 2))
    }

    pub fn from_pairs(nz: usize, pairs: &[(VarId, i32)]) -> Result<Self> {
        let mut e = Self::zero(nz);
        for &(v, x) in pairs {
            v.check(nz)?;
            e.0[v.slot()] += x;
        }
        Ok(e)
    }

    /// Builds from a raw `[q, w, z_1..z_n]` slice.
    pub fn from_slice(raw: &[i32]) -> Self {
        assert!(raw.len() >= 2, "exponent vector needs q and w slots");
        ExponentVector(SmallVec::from_slice(raw))
    }

    pub fn nz(&self) -> usize {
        self.0.len() - 2
    }

    pub fn get(&self, v: VarId) -> i32 {
        self.0.get(v.slot()).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VarId, x: i32) {
        self.0[v.slot()] = x;
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn z(&self, i: usize) -> i32 {
        self.0[i + 1]
    }

    pub fn z_slice(&self) -> &[i32] {
        &self.0[2..]
    }

    /// Sum of the exponents of every variable other than `q`.
    pub fn non_q_degree(&self) -> i64 {
        self.0[1..].iter().map(|&x| x as i64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `(var, exponent)` pairs of the nonzero entries, canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(s, &x)| (VarId::from_slot(s), x))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, x) in self.pairs() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{v}^{x}")?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Ring operation selector for [`ring_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Neg,
}

/// Sparse Laurent polynomial; no zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    nz: usize,
    terms: FxHashMap<ExponentVector, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nz == other.nz && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(nz: usize) -> Self {
        LaurentPoly {
            nz,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(nz: usize) -> Self {
        Self::constant(nz, BigInt::one())
    }

    pub fn constant(nz: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nz);
        p.add_term(ExponentVector::zero(nz), c.into());
        p
    }

    /// `c * prod v^x` for the given pairs.
    pub fn monomial(nz: usize, c: impl Into<BigInt>, pairs: &[(VarId, i32)]) -> Result<Self> {
        let mut p = Self::zero(nz);
        p.add_term(ExponentVector::from_pairs(nz, pairs)?, c.into());
        Ok(p)
    }

    pub fn var(nz: usize, v: VarId) -> Result<Self> {
        Self::monomial(nz, 1, &[(v, 1)])
    }

    /// `c * q^e`.
    pub fn q_power(nz: usize, c: impl Into<BigInt>, e: i32) -> Self {
        Self::monomial(nz, c, &[(VarId::Q, e)]).expect("q exists in every context")
    }

    /// `q^a x - q^b y` style binomial `ca * m_a + cb * m_b`.
    pub fn binomial(
        nz: usize,
        ca: i64,
        a: &[(VarId, i32)],
        cb: i64,
        b: &[(VarId, i32)],
    ) -> Result<Self> {
        let mut p = Self::monomial(nz, ca, a)?;
        p.add_term(ExponentVector::from_pairs(nz, b)?, BigInt::from(cb));
        Ok(p)
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the canonical term map is empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in canonical (lexicographic `q, w, z_1, ...`) order.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Adds `c * m^e`, keeping the map canonical.
    pub fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        debug_assert_eq!(e.nz(), self.nz);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.nz != other.nz {
            return Err(Error::Context(format!(
                "operands live in contexts with {} and {} z-variables",
                self.nz, other.nz
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let (mut acc, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            acc.add_term(e.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut acc = Self::zero(self.nz);
        let (outer, inner) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        acc.terms.reserve(inner.len() * outer.len().min(4));
        for (e1, c1) in &outer.terms {
            for (e2, c2) in &inner.terms {
                acc.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(acc)
    }

    /// In-place `self += other`.
    pub fn add_assign_ref(&mut self, other: &Self) -> Result<()> {
        self.same_context(other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            nz: self.nz,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nz);
        }
        LaurentPoly {
            nz: self.nz,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `m^shift` (exponent-wise shift).
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        LaurentPoly {
            nz: self.nz,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nz);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Relabels every `z_i` exponent to `z_{s(i)}`; `q` and `w` are fixed.
    pub fn apply_permutation(&self, s: &Permutation) -> Result<Self> {
        if s.degree() != self.nz {
            return Err(Error::Context(format!(
                "permutation of degree {} applied in a context with {} z-variables",
                s.degree(),
                self.nz
            )));
        }
        Ok(self.permute_z(&s.images))
    }

    /// `images[i]` is the 0-based target slot of `z_{i+1}`.
    fn permute_z(&self, images: &[usize]) -> Self {
        let mut out = Self::zero(self.nz);
        out.terms.reserve(self.len());
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for (i, &t) in images.iter().enumerate() {
                ne.0[t + 2] = e.0[i + 2];
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Exact coefficient of `v^e`, a polynomial not involving `v`.
    pub fn coeff_of_power(&self, v: VarId, e: i32) -> Result<Self> {
        v.check(self.nz)?;
        let slot = v.slot();
        let mut out = Self::zero(self.nz);
        for (x, c) in &self.terms {
            if x.0[slot] == e {
                let mut y = x.clone();
                y.0[slot] = 0;
                out.add_term(y, c.clone());
            }
        }
        Ok(out)
    }

    /// Smallest and largest exponent of `v`, or `None` for the zero polynomial.
    pub fn degree_range(&self, v: VarId) -> Option<(i32, i32)> {
        let slot = v.slot();
        let mut it = self.terms.keys().map(|e| e.0.get(slot).copied().unwrap_or(0));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// The substitution `v -> v^{-1}`.
    pub fn invert_var(&self, v: VarId) -> Self {
        let slot = v.slot();
        LaurentPoly {
            nz: self.nz,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut y = e.clone();
                    y.0[slot] = -y.0[slot];
                    (y, c.clone())
                })
                .collect(),
        }
    }

    /// The substitution `v -> q^{q_shift} target` (`target` may equal `v`).
    pub fn substitute(&self, v: VarId, q_shift: i32, target: VarId) -> Result<Self> {
        v.check(self.nz)?;
        target.check(self.nz)?;
        if v == VarId::Q || target == VarId::Q {
            return Err(Error::Argument("q cannot be substituted".into()));
        }
        let (vs, ts) = (v.slot(), target.slot());
        let mut out = Self::zero(self.nz);
        for (e, c) in &self.terms {
            let x = e.0[vs];
            let mut y = e.clone();
            y.0[vs] = 0;
            y.0[ts] += x;
            y.0[0] += q_shift * x;
            out.add_term(y, c.clone());
        }
        Ok(out)
    }

    /// Value with every variable set to 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Same polynomial in a context with `nz` z-variables (must not drop a used one).
    pub fn embed(&self, nz: usize) -> Result<Self> {
        if nz < self.nz {
            for e in self.terms.keys() {
                if e.0[nz + 2..].iter().any(|&x| x != 0) {
                    return Err(Error::Context(format!(
                        "cannot shrink context to {nz} z-variables"
                    )));
                }
            }
        }
        let mut out = Self::zero(nz);
        for (e, c) in &self.terms {
            let mut y = ExponentVector::zero(nz);
            let keep = (self.nz + 2).min(nz + 2);
            y.0[..keep].copy_from_slice(&e.0[..keep]);
            out.terms.insert(y, c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation in the field with `p` elements.
    pub fn eval_mod_p(&self, assignment: &BTreeMap<VarId, u64>, p: u64) -> Result<u64> {
        if !modp::is_prime(p) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        let mut values = vec![None; self.nz + 2];
        for (&v, &x) in assignment {
            v.check(self.nz)?;
            values[v.slot()] = Some(x % p);
        }
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = modp::bigint_mod(c, p);
            for (slot, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = VarId::from_slot(slot);
                let base = values[slot]
                    .ok_or_else(|| Error::Evaluation(format!("no value assigned to {v}")))?;
                let pw = modp::signed_pow_mod(base, x as i64, p).ok_or_else(|| {
                    Error::Evaluation(format!("{v} = 0 raised to negative power {x}"))
                })?;
                t = modp::mul_mod(t, pw, p);
            }
            acc = modp::add_mod(acc, t, p);
        }
        Ok(acc)
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(s: &str, nz: usize) -> Result<Self> {
        let s = s.trim();
        let mut out = Self::zero(nz);
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let mut toks = term.split_whitespace();
            let coef = toks
                .next()
                .ok_or_else(|| Error::Parse(format!("empty term in {s:?}")))?;
            let c: BigInt = coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {coef:?}")))?;
            let mut e = ExponentVector::zero(nz);
            for tok in toks {
                let (name, exp) = tok
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("expected var^exp, got {tok:?}")))?;
                let x: i32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                let v = match name {
                    "q" => VarId::Q,
                    "w" => VarId::W,
                    z if z.starts_with('z') => VarId::Z(
                        z[1..]
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad variable {z:?}")))?,
                    ),
                    other => return Err(Error::Parse(format!("unknown variable {other:?}"))),
                };
                v.check(nz)?;
                if e.0[v.slot()] != 0 {
                    return Err(Error::Parse(format!("variable {v} repeated in {term:?}")));
                }
                e.0[v.slot()] = x;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// Exact add / mul / neg with context checking.
pub fn ring_op(op: RingOp, a: &LaurentPoly, b: Option<&LaurentPoly>) -> Result<LaurentPoly> {
    match (op, b) {
        (RingOp::Neg, None) => Ok(a.neg_ref()),
        (RingOp::Neg, Some(_)) => Err(Error::Argument("neg takes one operand".into())),
        (RingOp::Add, Some(b)) => a.checked_add(b),
        (RingOp::Mul, Some(b)) => a.checked_mul(b),
        (_, None) => Err(Error::Argument(format!("{op:?} takes two operands"))),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, x) in e.pairs() {
                write!(f, " {v}^{x}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a context mismatch; use the `checked_*` methods
// when contexts are not known to agree.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.checked_add(rhs).expect("context mismatch in +")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.checked_sub(rhs).expect("context mismatch in -")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.checked_mul(rhs).expect("context mismatch in *")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

/// A permutation of `{1..n}` with its sign cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    /// From 1-based images `[s(1), ..., s(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Argument(format!("{images:?} is not a bijection on 1..{n}")));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Self::from_zero_based(zero_based))
    }

    fn from_zero_based(images: Vec<usize>) -> Self {
        let sign = parity_sign(&images);
        Permutation { images, sign }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_zero_based((0..n).collect())
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::Argument(format!("({i} {j}) is not a transposition in S_{n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Self::from_zero_based(images))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `s(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images_zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Self::from_zero_based(other.images.iter().map(|&x| self.images[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self::from_zero_based(inv)
    }

    /// All of `S_n` in lexicographic order of the image tuples.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::from_zero_based(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn parity_sign(images: &[usize]) -> i8 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
        }
    }
    if (n - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Advances to the next permutation in lexicographic order; false after the last.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// `Σ_{σ∈S_n} σ.a` (or the signed sum), acting on `z_1..z_n`.
///
/// Terms are first reduced to orbit representatives (exponents of the acted
/// positions sorted descending); the signed sum of a monomial with a repeated
/// exponent among those positions vanishes.
pub fn symmetrize(a: &LaurentPoly, n: usize, signed: bool) -> Result<LaurentPoly> {
    if n == 0 || n > a.nz() {
        return Err(Error::Argument(format!(
            "cannot symmetrize over S_{n} in a context with {} z-variables",
            a.nz()
        )));
    }
    let positions: Vec<usize> = (1..=n).collect();
    Ok(symmetrize_over(a, &positions, signed))
}

/// Symmetrizes over the permutations of the given 1-based `z` positions.
pub fn symmetrize_over(a: &LaurentPoly, positions: &[usize], signed: bool) -> LaurentPoly {
    let k = positions.len();
    let mut reps: FxHashMap<ExponentVector, BigInt> = FxHashMap::default();
    for (e, c) in a.terms() {
        let vals: SmallVec<[i32; 10]> = positions.iter().map(|&p| e.z(p)).collect();
        let mut order: SmallVec<[usize; 10]> = (0..k).collect();
        order.sort_by(|&i, &j| vals[j].cmp(&vals[i]).then(i.cmp(&j)));
        if signed && order.windows(2).any(|w| vals[w[0]] == vals[w[1]]) {
            continue;
        }
        let mut key = e.clone();
        for (i, &p) in positions.iter().enumerate() {
            key.0[p + 1] = vals[order[i]];
        }
        let c = if signed && parity_sign(&order) < 0 {
            -c
        } else {
            c.clone()
        };
        *reps.entry(key).or_default() += c;
    }

    let perms = Permutation::all(k);
    let mut out = LaurentPoly::zero(a.nz());
    let mut keys: Vec<_> = reps.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    keys.sort_by(|x, y| x.0.cmp(&y.0));
    for (key, c) in keys {
        for rho in &perms {
            let mut ne = key.clone();
            for (i, &p) in positions.iter().enumerate() {
                let target = positions[rho.images[i]];
                ne.0[target + 1] = key.0[p + 1];
            }
            let coef = if signed && rho.sign < 0 { -&c } else { c.clone() };
            out.add_term(ne, coef);
        }
    }
    out
}

/// Same result as [`symmetrize`], computed by applying every `σ ∈ S_n`
/// explicitly. Permutations are split into lexicographic chunks evaluated in
/// parallel and reduced by exact addition.
pub fn symmetrize_by_enumeration(a: &LaurentPoly, n: usize, signed: bool) -> Result<LaurentPoly> {
    if n == 0 || n > a.nz() {
        return Err(Error::Argument(format!(
            "cannot symmetrize over S_{n} in a context with {} z-variables",
            a.nz()
        )));
    }
    let nz = a.nz();
    let perms = Permutation::all(n);
    let chunk = (perms.len() / 64).max(1);
    let result = perms
        .par_chunks(chunk)
        .map(|ps| {
            let mut local = LaurentPoly::zero(nz);
            for s in ps {
                let mut images: Vec<usize> = s.images.clone();
                images.extend(n..nz);
                let mut t = a.permute_z(&images);
                if signed && s.sign < 0 {
                    t = -t;
                }
                local.add_assign_ref(&t).expect("same context");
            }
            local
        })
        .reduce(
            || LaurentPoly::zero(nz),
            |mut x, y| {
                x.add_assign_ref(&y).expect("same context");
                x
            },
        );
    Ok(result)
}
