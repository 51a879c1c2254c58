//! Eventually periodic vertex sets.
//!
//! An [`Epvs`] is a finite set of core vertices together with one
//! [`Upis`] per strand recording which copies of that strand belong to the
//! set. Strands with an empty index set are never stored, so the derived
//! equality is set equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{EpgPresentation, VertexId};
use crate::upis::{lcm, Upis};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epvs {
    cores: BTreeSet<usize>,
    strands: BTreeMap<(usize, usize), Upis>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

impl Epvs {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(vs: I) -> Self {
        let mut cores = BTreeSet::new();
        let mut copies: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in vs {
            match v {
                VertexId::Core(c) => {
                    cores.insert(c);
                }
                VertexId::Tail { tail, copy, strand } => {
                    copies.entry((tail, strand)).or_default().push(copy)
                }
            }
        }
        let strands = copies
            .into_iter()
            .map(|(key, ks)| (key, Upis::finite(ks)))
            .collect();
        Epvs { cores, strands }
    }

    pub fn vertex(v: VertexId) -> Self {
        Self::from_vertices([v])
    }

    pub fn strand_set(tail: usize, strand: usize, copies: Upis) -> Self {
        let mut s = Self::empty();
        s.add_strand(tail, strand, &copies);
        s
    }

    pub fn cores(&self) -> &BTreeSet<usize> {
        &self.cores
    }

    pub fn strands(&self) -> &BTreeMap<(usize, usize), Upis> {
        &self.strands
    }

    /// Copy indices of strand `(tail, strand)` in the set.
    pub fn strand(&self, tail: usize, strand: usize) -> Upis {
        self.strands
            .get(&(tail, strand))
            .cloned()
            .unwrap_or_else(Upis::empty)
    }

    pub fn insert_core(&mut self, c: usize) {
        self.cores.insert(c);
    }

    pub fn insert(&mut self, v: VertexId) {
        match v {
            VertexId::Core(c) => self.insert_core(c),
            VertexId::Tail { tail, copy, strand } => {
                self.add_strand(tail, strand, &Upis::singleton(copy))
            }
        }
    }

    /// Adds `copies` of strand `(tail, strand)`.
    pub fn add_strand(&mut self, tail: usize, strand: usize, copies: &Upis) {
        if copies.is_empty() {
            return;
        }
        let merged = self.strand(tail, strand).union(copies);
        self.strands.insert((tail, strand), merged);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match v {
            VertexId::Core(c) => self.cores.contains(&c),
            VertexId::Tail { tail, copy, strand } => self
                .strands
                .get(&(tail, strand))
                .is_some_and(|u| u.contains(copy)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cores.is_empty() && self.strands.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.strands.values().all(Upis::is_finite)
    }

    fn zip(&self, other: &Epvs, f: impl Fn(&Upis, &Upis) -> Upis, fc: impl Fn(bool, bool) -> bool) -> Epvs {
        let cores = self
            .cores
            .union(&other.cores)
            .copied()
            .filter(|c| fc(self.cores.contains(c), other.cores.contains(c)))
            .collect();
        let keys: BTreeSet<_> = self.strands.keys().chain(other.strands.keys()).copied().collect();
        let strands = keys
            .into_iter()
            .filter_map(|(t, i)| {
                let u = f(&self.strand(t, i), &other.strand(t, i));
                (!u.is_empty()).then_some(((t, i), u))
            })
            .collect();
        Epvs { cores, strands }
    }

    pub fn union(&self, other: &Epvs) -> Epvs {
        self.zip(other, Upis::union, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Epvs) -> Epvs {
        self.zip(other, Upis::intersect, |a, b| a && b)
    }

    pub fn difference(&self, other: &Epvs) -> Epvs {
        self.zip(other, Upis::difference, |a, b| a && !b)
    }

    /// Complement within the vertex set of `pres`.
    pub fn complement(&self, pres: &EpgPresentation) -> Epvs {
        pres.all_vertices().difference(self)
    }

    pub fn is_subset(&self, other: &Epvs) -> bool {
        self.difference(other).is_empty()
    }

    /// Translates every tail vertex `d` copies outwards; cores are kept.
    pub fn translate(&self, d: usize) -> Epvs {
        Epvs {
            cores: self.cores.clone(),
            strands: self
                .strands
                .iter()
                .map(|(&k, u)| (k, u.shift_up(d)))
                .collect(),
        }
    }

    /// Number of vertices, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        let mut n = self.cores.len();
        for u in self.strands.values() {
            n += u.len()?;
        }
        Some(n)
    }

    /// All vertices of a finite set, ascending.
    pub fn finite_vertices(&self) -> Option<Vec<VertexId>> {
        if !self.is_finite() {
            return None;
        }
        Some(self.vertices_up_to(self.max_threshold()))
    }

    /// Members whose copy index is at most `depth` (all cores included), ascending.
    pub fn vertices_up_to(&self, depth: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.cores.iter().map(|&c| VertexId::Core(c)).collect();
        for (&(t, i), u) in &self.strands {
            for k in u.iter_below(depth + 1) {
                out.push(VertexId::tail(t, k, i));
            }
        }
        out.sort_unstable();
        out
    }

    /// Largest copy index mentioned in an explicit prefix.
    pub fn max_threshold(&self) -> usize {
        self.strands.values().map(Upis::threshold).max().unwrap_or(0)
    }

    /// Least common multiple of the strand periods.
    pub fn period(&self) -> usize {
        self.strands.values().map(Upis::period).fold(1, lcm)
    }

    /// Smallest vertex in the set.
    pub fn min_vertex(&self) -> Option<VertexId> {
        if let Some(&c) = self.cores.iter().next() {
            return Some(VertexId::Core(c));
        }
        self.strands
            .iter()
            .filter_map(|(&(t, i), u)| u.least().map(|k| VertexId::tail(t, k, i)))
            .min()
    }

    /// Largest copy index of a finite set (0 when it has no tail vertices).
    pub fn max_copy(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        Some(self.strands.values().filter_map(Upis::greatest).max().unwrap_or(0))
    }
}

/// Binary or unary set operation over one presentation.
pub fn set_algebra(pres: &EpgPresentation, a: &Epvs, b: &Epvs, op: SetOp) -> Result<Epvs> {
    pres.check_set(a)?;
    pres.check_set(b)?;
    Ok(match op {
        SetOp::Union => a.union(b),
        SetOp::Intersect => a.intersect(b),
        SetOp::Difference => a.difference(b),
        SetOp::Complement => a.complement(pres),
    })
}

/// Set syntax: `{c0 c2 0.1=01(10)*}` with one `tail.strand=word` token per strand.
impl fmt::Display for Epvs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.cores.iter().map(|c| format!("c{c}")).collect();
        for (&(t, i), u) in &self.strands {
            parts.push(format!("{t}.{i}={u}"));
        }
        write!(f, "{{{}}}", parts.join(" "))
    }
}

impl fmt::Debug for Epvs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized in set syntax.
impl Serialize for Epvs {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Epvs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Epvs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::Malformed(m);
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| bad(format!("set must be enclosed in braces: {s:?}")))?;
        let mut set = Epvs::empty();
        for tok in inner.split_whitespace() {
            if let Some((lhs, rhs)) = tok.split_once('=') {
                let (t, i) = lhs
                    .split_once('.')
                    .ok_or_else(|| bad(format!("bad strand {lhs:?}")))?;
                let t: usize = t.parse().map_err(|_| bad(format!("bad tail {t:?}")))?;
                let i: usize = i.parse().map_err(|_| bad(format!("bad strand {i:?}")))?;
                let u: Upis = rhs.parse().map_err(bad)?;
                set.add_strand(t, i, &u);
            } else {
                set.insert(tok.parse()?);
            }
        }
        Ok(set)
    }
}
