//! Computable backends for the factor groups `G_1, ..., G_n`.
//!
//! Three kinds are supported: finite cyclic groups `Z/m` (addition mod `m`),
//! finite groups given by a Cayley table, and the infinite cyclic group `Z`
//! with arbitrary-precision payloads. Elements carry their factor index, so a
//! product of elements from different factors is an error rather than a
//! silent coercion.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The raw value of a factor element; its meaning depends on the factor kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// Residue mod `m` for a cyclic factor.
    Residue(u64),
    /// Row index into a Cayley table.
    Index(u32),
    /// Integer for the infinite cyclic factor.
    Int(BigInt),
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Residue(r) => write!(f, "{r}"),
            Payload::Index(i) => write!(f, "{i}"),
            Payload::Int(n) => write!(f, "{n}"),
        }
    }
}

/// An element of one factor group. `factor` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorElement {
    factor: usize,
    payload: Payload,
}

impl FactorElement {
    /// Builds an element without checking it against a system; see
    /// [`FactorSystem::element`] for the checked constructor.
    pub fn new_unchecked(factor: usize, payload: Payload) -> Self {
        Self { factor, payload }
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }
}

impl fmt::Display for FactorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.factor + 1, self.payload)
    }
}

/// First violated group axiom found by [`FactorGroup::validate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("cyclic order must be at least 2, got {0}")]
    CyclicOrder(u64),
    #[error("table must have at least 2 elements")]
    TooSmall,
    #[error("table is not square")]
    NotSquare,
    #[error("table entry out of range")]
    EntryOutOfRange,
    #[error("element names do not match the table size")]
    NamesMismatch,
    #[error("identity index out of range")]
    IdentityOutOfRange,
    #[error("not a Latin square")]
    NotLatinSquare,
    #[error("identity row or column is not the identity map")]
    IdentityNotNeutral,
    #[error("inverse table inconsistent")]
    InverseInconsistent,
    #[error("not associative")]
    NotAssociative,
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    names: Vec<String>,
    rows: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    identity: u32,
}

impl CayleyTable {
    /// Builds a table and derives the inverse table from it. Nothing is
    /// validated here; [`FactorSystem::new`] rejects bad tables.
    pub fn new(names: Vec<String>, rows: Vec<Vec<u32>>, identity: u32) -> Self {
        let inverse = rows
            .iter()
            .map(|row| {
                row.iter()
                    .position(|&p| p == identity)
                    .map_or(identity, |x| x as u32)
            })
            .collect();
        Self { names, rows, inverse, identity }
    }

    /// Builds a table with an explicitly supplied inverse table.
    pub fn with_inverse(
        names: Vec<String>,
        rows: Vec<Vec<u32>>,
        inverse: Vec<u32>,
        identity: u32,
    ) -> Self {
        Self { names, rows, inverse, identity }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.rows[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.rows.len();
        if n < 2 {
            return Err(Violation::TooSmall);
        }
        if self.rows.iter().any(|r| r.len() != n) {
            return Err(Violation::NotSquare);
        }
        if self.rows.iter().flatten().any(|&x| x as usize >= n) {
            return Err(Violation::EntryOutOfRange);
        }
        if !self.names.is_empty() && self.names.len() != n {
            return Err(Violation::NamesMismatch);
        }
        if self.identity as usize >= n {
            return Err(Violation::IdentityOutOfRange);
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let x = self.rows[r][c] as usize;
                if seen[x] {
                    return Err(Violation::NotLatinSquare);
                }
                seen[x] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let x = self.rows[r][c] as usize;
                if seen[x] {
                    return Err(Violation::NotLatinSquare);
                }
                seen[x] = true;
            }
        }
        let e = self.identity;
        for x in 0..n as u32 {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Violation::IdentityNotNeutral);
            }
        }
        if self.inverse.len() != n || self.inverse.iter().any(|&x| x as usize >= n) {
            return Err(Violation::InverseInconsistent);
        }
        for x in 0..n as u32 {
            let y = self.inv(x);
            if self.mul(x, y) != e || self.mul(y, x) != e || self.inv(y) != x {
                return Err(Violation::InverseInconsistent);
            }
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let ab = self.mul(a, b);
                for c in 0..n as u32 {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Violation::NotAssociative);
                    }
                }
            }
        }
        Ok(())
    }
}

/// One factor group of the free product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorGroup {
    /// `Z/order`, written additively.
    Cyclic { order: u64 },
    Table(CayleyTable),
    /// `Z`, written additively.
    InfiniteCyclic,
}

/// Representation of an automorphism of a single factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorMap {
    /// `x -> k*x` on `Z/m`, with `k` a unit.
    Mult(u64),
    /// Permutation of table indices.
    Perm(Vec<u32>),
    /// `x -> -x` when `true`, identity when `false`, on `Z`.
    Sign(bool),
}

/// An automorphism of factor `factor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorAutoPart {
    pub factor: usize,
    pub map: FactorMap,
}

impl FactorGroup {
    pub fn cyclic(order: u64) -> Self {
        FactorGroup::Cyclic { order }
    }

    /// Number of elements, or `None` for `Z`.
    pub fn order(&self) -> Option<u64> {
        match self {
            FactorGroup::Cyclic { order } => Some(*order),
            FactorGroup::Table(t) => Some(t.order() as u64),
            FactorGroup::InfiniteCyclic => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            FactorGroup::Table(t) => {
                let n = t.order() as u32;
                (0..n).all(|a| (0..n).all(|b| t.mul(a, b) == t.mul(b, a)))
            }
            _ => true,
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        match self {
            FactorGroup::Cyclic { order } if *order < 2 => Err(Violation::CyclicOrder(*order)),
            FactorGroup::Cyclic { .. } | FactorGroup::InfiniteCyclic => Ok(()),
            FactorGroup::Table(t) => t.validate(),
        }
    }

    pub fn identity(&self) -> Payload {
        match self {
            FactorGroup::Cyclic { .. } => Payload::Residue(0),
            FactorGroup::Table(t) => Payload::Index(t.identity()),
            FactorGroup::InfiniteCyclic => Payload::Int(BigInt::zero()),
        }
    }

    pub fn contains(&self, p: &Payload) -> bool {
        match (self, p) {
            (FactorGroup::Cyclic { order }, Payload::Residue(r)) => r < order,
            (FactorGroup::Table(t), Payload::Index(i)) => (*i as usize) < t.order(),
            (FactorGroup::InfiniteCyclic, Payload::Int(_)) => true,
            _ => false,
        }
    }

    pub fn is_identity(&self, p: &Payload) -> bool {
        match (self, p) {
            (FactorGroup::Cyclic { .. }, Payload::Residue(r)) => *r == 0,
            (FactorGroup::Table(t), Payload::Index(i)) => *i == t.identity(),
            (FactorGroup::InfiniteCyclic, Payload::Int(n)) => n.is_zero(),
            _ => false,
        }
    }

    /// Group law on payloads already known to belong to this factor.
    pub fn mul(&self, a: &Payload, b: &Payload) -> Payload {
        match (self, a, b) {
            (FactorGroup::Cyclic { order }, Payload::Residue(x), Payload::Residue(y)) => {
                Payload::Residue(((*x as u128 + *y as u128) % *order as u128) as u64)
            }
            (FactorGroup::Table(t), Payload::Index(x), Payload::Index(y)) => {
                Payload::Index(t.mul(*x, *y))
            }
            (FactorGroup::InfiniteCyclic, Payload::Int(x), Payload::Int(y)) => Payload::Int(x + y),
            _ => panic!("payload kind does not match factor kind"),
        }
    }

    pub fn inv(&self, a: &Payload) -> Payload {
        match (self, a) {
            (FactorGroup::Cyclic { order }, Payload::Residue(x)) => {
                Payload::Residue((order - x) % order)
            }
            (FactorGroup::Table(t), Payload::Index(x)) => Payload::Index(t.inv(*x)),
            (FactorGroup::InfiniteCyclic, Payload::Int(x)) => Payload::Int(-x),
            _ => panic!("payload kind does not match factor kind"),
        }
    }

    /// All elements in index order, or `None` for `Z`.
    pub fn elements(&self) -> Option<Vec<Payload>> {
        match self {
            FactorGroup::Cyclic { order } => Some((0..*order).map(Payload::Residue).collect()),
            FactorGroup::Table(t) => Some((0..t.order() as u32).map(Payload::Index).collect()),
            FactorGroup::InfiniteCyclic => None,
        }
    }

    /// A set on which two homomorphisms out of this factor must agree to be
    /// equal: every non-identity element for finite kinds, the generator `1`
    /// for `Z`.
    pub fn test_set(&self) -> Vec<Payload> {
        match self.elements() {
            Some(all) => all.into_iter().filter(|p| !self.is_identity(p)).collect(),
            None => vec![Payload::Int(BigInt::one())],
        }
    }

    pub fn identity_map(&self) -> FactorMap {
        match self {
            FactorGroup::Cyclic { .. } => FactorMap::Mult(1),
            FactorGroup::Table(t) => FactorMap::Perm((0..t.order() as u32).collect()),
            FactorGroup::InfiniteCyclic => FactorMap::Sign(false),
        }
    }

    /// The inner automorphism `x -> b^-1 x b` of this factor.
    pub fn conjugation(&self, b: &Payload) -> FactorMap {
        match (self, b) {
            (FactorGroup::Table(t), Payload::Index(b)) => {
                let bi = t.inv(*b);
                FactorMap::Perm((0..t.order() as u32).map(|x| t.mul(t.mul(bi, x), *b)).collect())
            }
            _ => self.identity_map(),
        }
    }

    pub fn apply_map(&self, map: &FactorMap, x: &Payload) -> Payload {
        match (self, map, x) {
            (FactorGroup::Cyclic { order }, FactorMap::Mult(k), Payload::Residue(r)) => {
                Payload::Residue(((*k as u128 * *r as u128) % *order as u128) as u64)
            }
            (FactorGroup::Table(_), FactorMap::Perm(p), Payload::Index(i)) => {
                Payload::Index(p[*i as usize])
            }
            (FactorGroup::InfiniteCyclic, FactorMap::Sign(neg), Payload::Int(n)) => {
                Payload::Int(if *neg { -n } else { n.clone() })
            }
            _ => panic!("automorphism kind does not match factor kind"),
        }
    }

    /// `outer ∘ inner`.
    pub fn compose_maps(&self, outer: &FactorMap, inner: &FactorMap) -> FactorMap {
        match (self, outer, inner) {
            (FactorGroup::Cyclic { order }, FactorMap::Mult(a), FactorMap::Mult(b)) => {
                FactorMap::Mult(((*a as u128 * *b as u128) % *order as u128) as u64)
            }
            (FactorGroup::Table(_), FactorMap::Perm(p), FactorMap::Perm(q)) => {
                FactorMap::Perm(q.iter().map(|&i| p[i as usize]).collect())
            }
            (FactorGroup::InfiniteCyclic, FactorMap::Sign(a), FactorMap::Sign(b)) => {
                FactorMap::Sign(a ^ b)
            }
            _ => panic!("automorphism kind does not match factor kind"),
        }
    }

    pub fn invert_map(&self, map: &FactorMap) -> FactorMap {
        match (self, map) {
            (FactorGroup::Cyclic { order }, FactorMap::Mult(k)) => {
                FactorMap::Mult(mod_inverse(*k, *order).expect("multiplier is a unit"))
            }
            (FactorGroup::Table(_), FactorMap::Perm(p)) => {
                let mut inv = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                FactorMap::Perm(inv)
            }
            (FactorGroup::InfiniteCyclic, FactorMap::Sign(neg)) => FactorMap::Sign(*neg),
            _ => panic!("automorphism kind does not match factor kind"),
        }
    }

    /// Checks that `map` is an automorphism of this factor. For finite kinds
    /// the homomorphism law is checked on every pair.
    pub fn validate_map(&self, map: &FactorMap) -> Result<(), &'static str> {
        match (self, map) {
            (FactorGroup::Cyclic { order }, FactorMap::Mult(k)) => {
                if *k >= *order {
                    Err("multiplier not reduced mod the order")
                } else if k.gcd(order) != 1 {
                    Err("multiplier is not a unit")
                } else {
                    Ok(())
                }
            }
            (FactorGroup::Table(t), FactorMap::Perm(p)) => {
                let n = t.order();
                if p.len() != n {
                    return Err("permutation has the wrong length");
                }
                let mut seen = vec![false; n];
                for &x in p {
                    if x as usize >= n || seen[x as usize] {
                        return Err("not a permutation");
                    }
                    seen[x as usize] = true;
                }
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        if p[t.mul(a, b) as usize] != t.mul(p[a as usize], p[b as usize]) {
                            return Err("homomorphism law fails");
                        }
                    }
                }
                Ok(())
            }
            (FactorGroup::InfiniteCyclic, FactorMap::Sign(_)) => Ok(()),
            _ => Err("automorphism kind does not match factor kind"),
        }
    }

    /// Every automorphism of a finite factor, by exhaustive search for table
    /// kinds. `None` for `Z`, whose automorphisms are the two signs.
    pub fn all_automorphisms(&self) -> Option<Vec<FactorMap>> {
        match self {
            FactorGroup::Cyclic { order } => Some(
                (1..*order)
                    .filter(|k| k.gcd(order) == 1)
                    .map(FactorMap::Mult)
                    .collect(),
            ),
            FactorGroup::Table(t) => {
                let n = t.order();
                let mut out = Vec::new();
                let mut perm: Vec<u32> = (0..n as u32).collect();
                permutations(&mut perm, 0, &mut |p| {
                    let m = FactorMap::Perm(p.to_vec());
                    if self.validate_map(&m).is_ok() {
                        out.push(m);
                    }
                });
                out.sort();
                Some(out)
            }
            FactorGroup::InfiniteCyclic => None,
        }
    }

    fn hash_into(&self, h: &mut Fnv) {
        match self {
            FactorGroup::Cyclic { order } => {
                h.write(&[1]);
                h.write(&order.to_le_bytes());
            }
            FactorGroup::Table(t) => {
                h.write(&[2]);
                h.write(&(t.order() as u64).to_le_bytes());
                h.write(&t.identity().to_le_bytes());
                for x in t.rows().iter().flatten() {
                    h.write(&x.to_le_bytes());
                }
            }
            FactorGroup::InfiniteCyclic => h.write(&[3]),
        }
    }
}

fn permutations(p: &mut [u32], k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn mod_inverse(k: u64, m: u64) -> Option<u64> {
    let e = (k as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

struct Fnv(u64);

impl Fnv {
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= *b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

/// Structural fingerprint of a factor system. Words remember the id of the
/// system they were built in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemId(pub u64);

/// The ordered tuple of factors `(G_1, ..., G_n)`, `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSystem {
    factors: Vec<FactorGroup>,
    id: SystemId,
}

impl FactorSystem {
    pub fn new(factors: Vec<FactorGroup>) -> Result<Self> {
        if factors.len() < 3 {
            return Err(Error::TooFewFactors(factors.len()));
        }
        let mut h = Fnv(0xcbf2_9ce4_8422_2325);
        for (i, g) in factors.iter().enumerate() {
            g.validate()
                .map_err(|violation| Error::InvalidGroup { factor: i, violation })?;
            g.hash_into(&mut h);
        }
        Ok(Self { factors, id: SystemId(h.0) })
    }

    /// `Z/m_1 * ... * Z/m_n`.
    pub fn cyclic(orders: &[u64]) -> Result<Self> {
        Self::new(orders.iter().map(|&m| FactorGroup::cyclic(m)).collect())
    }

    /// Number of factors `n`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[FactorGroup] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &FactorGroup {
        &self.factors[i]
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(FactorGroup::is_finite)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.rank() {
            Ok(())
        } else {
            Err(Error::FactorOutOfRange { index, len: self.rank() })
        }
    }

    pub fn element(&self, factor: usize, payload: Payload) -> Result<FactorElement> {
        self.check_index(factor)?;
        if !self.factors[factor].contains(&payload) {
            return Err(Error::InvalidPayload { factor });
        }
        Ok(FactorElement { factor, payload })
    }

    /// Checks an element built elsewhere against this system.
    pub fn check_element(&self, e: &FactorElement) -> Result<()> {
        self.check_index(e.factor)?;
        if self.factors[e.factor].contains(&e.payload) {
            Ok(())
        } else {
            Err(Error::InvalidPayload { factor: e.factor })
        }
    }

    pub fn fg_identity(&self, factor: usize) -> FactorElement {
        FactorElement { factor, payload: self.factors[factor].identity() }
    }

    pub fn fg_is_identity(&self, a: &FactorElement) -> bool {
        self.factors[a.factor].is_identity(&a.payload)
    }

    pub fn fg_mul(&self, a: &FactorElement, b: &FactorElement) -> Result<FactorElement> {
        if a.factor != b.factor {
            return Err(Error::CrossFactor { left: a.factor, right: b.factor });
        }
        Ok(self.fg_mul_same(a, b))
    }

    pub(crate) fn fg_mul_same(&self, a: &FactorElement, b: &FactorElement) -> FactorElement {
        FactorElement { factor: a.factor, payload: self.factors[a.factor].mul(&a.payload, &b.payload) }
    }

    pub fn fg_inv(&self, a: &FactorElement) -> FactorElement {
        FactorElement { factor: a.factor, payload: self.factors[a.factor].inv(&a.payload) }
    }

    pub fn fg_apply_auto(&self, phi: &FactorAutoPart, x: &FactorElement) -> Result<FactorElement> {
        if phi.factor != x.factor {
            return Err(Error::CrossFactor { left: phi.factor, right: x.factor });
        }
        Ok(FactorElement { factor: x.factor, payload: self.factors[x.factor].apply_map(&phi.map, &x.payload) })
    }

    pub fn validate_auto(&self, phi: &FactorAutoPart) -> Result<()> {
        self.check_index(phi.factor)?;
        self.factors[phi.factor]
            .validate_map(&phi.map)
            .map_err(|reason| Error::InvalidFactorAuto { factor: phi.factor, reason })
    }

    pub fn identity_auto(&self, factor: usize) -> FactorAutoPart {
        FactorAutoPart { factor, map: self.factors[factor].identity_map() }
    }

    /// `x -> b^-1 x b` on the factor of `b`.
    pub fn conjugation_auto(&self, b: &FactorElement) -> FactorAutoPart {
        FactorAutoPart { factor: b.factor, map: self.factors[b.factor].conjugation(&b.payload) }
    }

    /// `outer ∘ inner` on a single factor.
    pub fn compose_auto(&self, outer: &FactorAutoPart, inner: &FactorAutoPart) -> FactorAutoPart {
        assert_eq!(outer.factor, inner.factor, "factor automorphisms on different factors");
        FactorAutoPart {
            factor: outer.factor,
            map: self.factors[outer.factor].compose_maps(&outer.map, &inner.map),
        }
    }

    pub fn invert_auto(&self, phi: &FactorAutoPart) -> FactorAutoPart {
        FactorAutoPart { factor: phi.factor, map: self.factors[phi.factor].invert_map(&phi.map) }
    }

    /// Non-identity elements of a finite factor.
    pub fn nontrivial_elements(&self, factor: usize) -> Option<Vec<FactorElement>> {
        let g = &self.factors[factor];
        g.elements().map(|all| {
            all.into_iter()
                .filter(|p| !g.is_identity(p))
                .map(|payload| FactorElement { factor, payload })
                .collect()
        })
    }

    /// See [`FactorGroup::test_set`].
    pub fn test_set(&self, factor: usize) -> Vec<FactorElement> {
        self.factors[factor]
            .test_set()
            .into_iter()
            .map(|payload| FactorElement { factor, payload })
            .collect()
    }

    /// Shorthand for an integer payload in the infinite cyclic case and a
    /// residue/index otherwise. Panics when `value` is not an element.
    pub fn elem(&self, factor: usize, value: i64) -> FactorElement {
        let payload = match &self.factors[factor] {
            FactorGroup::Cyclic { .. } => Payload::Residue(value as u64),
            FactorGroup::Table(_) => Payload::Index(value as u32),
            FactorGroup::InfiniteCyclic => Payload::Int(BigInt::from(value)),
        };
        self.element(factor, payload).expect("element of the factor")
    }
}

impl FactorAutoPart {
    pub fn is_identity(&self, sys: &FactorSystem) -> bool {
        self.map == sys.factor(self.factor).identity_map()
    }
}
