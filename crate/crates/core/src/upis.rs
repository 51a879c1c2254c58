//! Ultimately periodic subsets of the natural numbers.
//!
//! A [`Upis`] stores an explicit prefix `[0, threshold)` followed by a
//! repeating pattern. Every value is kept in canonical form (minimal period,
//! then minimal threshold), so structural equality coincides with set
//! equality.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Greatest common divisor.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple; `lcm(0, x) = x`.
pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    a / gcd(a, b) * b
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Upis {
    explicit: Vec<bool>,
    pattern: Vec<bool>,
}

impl Upis {
    /// Builds a set from its raw parts and canonicalizes it.
    ///
    /// Membership is `explicit[k]` for `k < explicit.len()` and
    /// `pattern[(k - explicit.len()) % pattern.len()]` beyond. An empty
    /// pattern is treated as `[false]`.
    pub fn from_parts(explicit: Vec<bool>, mut pattern: Vec<bool>) -> Self {
        if pattern.is_empty() {
            pattern.push(false);
        }
        let mut s = Upis { explicit, pattern };
        s.canonicalize();
        s
    }

    pub fn empty() -> Self {
        Upis {
            explicit: Vec::new(),
            pattern: vec![false],
        }
    }

    /// All natural numbers.
    pub fn all() -> Self {
        Upis {
            explicit: Vec::new(),
            pattern: vec![true],
        }
    }

    pub fn singleton(k: usize) -> Self {
        Self::finite([k])
    }

    pub fn finite<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut explicit = Vec::new();
        for k in items {
            if k >= explicit.len() {
                explicit.resize(k + 1, false);
            }
            explicit[k] = true;
        }
        Self::from_parts(explicit, vec![false])
    }

    /// `{start, start + stride, start + 2·stride, …}`.
    pub fn progression(start: usize, stride: usize) -> Self {
        assert!(stride >= 1, "progression stride must be positive");
        let mut pattern = vec![false; stride];
        pattern[0] = true;
        Self::from_parts(vec![false; start], pattern)
    }

    /// `{k ≥ from}`.
    pub fn at_least(from: usize) -> Self {
        Self::from_parts(vec![false; from], vec![true])
    }

    /// `{k < below}`.
    pub fn below(below: usize) -> Self {
        Self::from_parts(vec![true; below], vec![false])
    }

    pub fn threshold(&self) -> usize {
        self.explicit.len()
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn explicit(&self) -> &[bool] {
        &self.explicit
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    pub fn contains(&self, k: usize) -> bool {
        match self.explicit.get(k) {
            Some(&b) => b,
            None => self.pattern[(k - self.explicit.len()) % self.pattern.len()],
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.is_infinite() && !self.explicit.iter().any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_infinite(&self) -> bool {
        self.pattern.iter().any(|&b| b)
    }

    /// Largest element of a finite, nonempty set.
    pub fn greatest(&self) -> Option<usize> {
        if self.is_infinite() {
            return None;
        }
        self.explicit.iter().rposition(|&b| b)
    }

    pub fn least(&self) -> Option<usize> {
        if let Some(k) = self.explicit.iter().position(|&b| b) {
            return Some(k);
        }
        self.pattern
            .iter()
            .position(|&b| b)
            .map(|j| self.explicit.len() + j)
    }

    /// Number of elements, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        if self.is_infinite() {
            None
        } else {
            Some(self.explicit.iter().filter(|&&b| b).count())
        }
    }

    /// Elements strictly below `bound`, ascending.
    pub fn iter_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (0..bound).filter(move |&k| self.contains(k))
    }

    /// First `n` elements, ascending (fewer if the set is finite).
    pub fn first_n(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n);
        if self.is_empty() {
            return out;
        }
        let mut k = 0;
        let limit = if self.is_infinite() {
            usize::MAX
        } else {
            self.explicit.len()
        };
        while out.len() < n && k < limit {
            if self.contains(k) {
                out.push(k);
            }
            k += 1;
        }
        out
    }

    /// Pointwise combination with another set.
    pub fn combine(&self, other: &Upis, f: impl Fn(bool, bool) -> bool) -> Upis {
        let t = self.threshold().max(other.threshold());
        let p = lcm(self.period(), other.period());
        let explicit = (0..t)
            .map(|k| f(self.contains(k), other.contains(k)))
            .collect();
        let pattern = (t..t + p)
            .map(|k| f(self.contains(k), other.contains(k)))
            .collect();
        Upis::from_parts(explicit, pattern)
    }

    pub fn union(&self, other: &Upis) -> Upis {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Upis) -> Upis {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Upis) -> Upis {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Upis {
        Upis::from_parts(
            self.explicit.iter().map(|b| !b).collect(),
            self.pattern.iter().map(|b| !b).collect(),
        )
    }

    pub fn is_subset(&self, other: &Upis) -> bool {
        self.difference(other).is_empty()
    }

    /// `{k + d : k ∈ self}`.
    pub fn shift_up(&self, d: usize) -> Upis {
        let mut explicit = vec![false; d];
        explicit.extend_from_slice(&self.explicit);
        Upis::from_parts(explicit, self.pattern.clone())
    }

    /// `{k - d : k ∈ self, k ≥ d}`.
    pub fn shift_down(&self, d: usize) -> Upis {
        if d <= self.explicit.len() {
            return Upis::from_parts(self.explicit[d..].to_vec(), self.pattern.clone());
        }
        let mut pattern = self.pattern.clone();
        let rot = (d - self.explicit.len()) % pattern.len();
        pattern.rotate_left(rot);
        Upis::from_parts(Vec::new(), pattern)
    }

    /// Restriction to `[0, bound)`.
    pub fn truncate(&self, bound: usize) -> Upis {
        self.intersect(&Upis::below(bound))
    }

    fn canonicalize(&mut self) {
        let p = self.pattern.len();
        for q in 1..=p {
            if p.is_multiple_of(q) && (q..p).all(|x| self.pattern[x] == self.pattern[x - q]) {
                self.pattern.truncate(q);
                break;
            }
        }
        while let Some(&last) = self.explicit.last() {
            if last == *self.pattern.last().unwrap() {
                self.explicit.pop();
                self.pattern.rotate_right(1);
            } else {
                break;
            }
        }
    }
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Written as an ultimately periodic word, e.g. `01(10)*`.
impl fmt::Display for Upis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})*", bits(&self.explicit), bits(&self.pattern))
    }
}

impl fmt::Debug for Upis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Upis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| format!("missing '(' in {s:?}"))?;
        let close = s
            .strip_suffix(")*")
            .ok_or_else(|| format!("missing ')*' in {s:?}"))?;
        let parse_bits = |t: &str| -> Result<Vec<bool>, String> {
            t.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(format!("bad bit {c:?} in {s:?}")),
                })
                .collect()
        };
        let explicit = parse_bits(&s[..open])?;
        let pattern = parse_bits(&close[open + 1..])?;
        if pattern.is_empty() {
            return Err(format!("empty period in {s:?}"));
        }
        Ok(Upis::from_parts(explicit, pattern))
    }
}

/// Serialized as its word, e.g. `01(10)*`.
impl Serialize for Upis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Upis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
