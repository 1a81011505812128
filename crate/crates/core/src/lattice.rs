//! Finite bounded distributive lattices: construction, validation,
//! filters, prime filters and join-irreducibles.
//!
//! Elements are dense indices `0..n-1`; external names are mapped to
//! indices at parse time. Subsets of the carrier are `u64` bitsets and
//! every set-valued operation orders its output by numeric bitset value.

use thiserror::Error;

/// A subset of lattice elements as a bitset over indices `0..n`.
pub type ElemSet = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a poset: {reason} at ({a},{b})")]
    NotAPoset { reason: &'static str, a: usize, b: usize },
    #[error("not a lattice: pair ({a},{b}) has no unique {kind}")]
    NotALattice { kind: &'static str, a: usize, b: usize },
    #[error("not distributive: x={x}, y={y}, z={z}")]
    NotDistributive { x: usize, y: usize, z: usize },
    #[error("unbounded: no {kind} element")]
    Unbounded { kind: &'static str },
    #[error("empty carrier")]
    Empty,
    #[error("leq matrix is not {n}x{n}")]
    BadShape { n: usize },
}

/// A finite bounded distributive lattice given by its order matrix,
/// with derived meet/join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBDL {
    n: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteBDL {
    /// Validates a candidate order and derives meet/join tables.
    ///
    /// `leq` is a row-major n*n matrix; `names[i]` labels element `i`.
    pub fn validate_bdl(names: Vec<String>, leq: Vec<bool>) -> Result<FiniteBDL, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != n * n {
            return Err(LatticeError::BadShape { n });
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(LatticeError::NotAPoset { reason: "not reflexive", a, b: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(LatticeError::NotAPoset { reason: "not antisymmetric", a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if le(b, c) && !le(a, c) {
                        return Err(LatticeError::NotAPoset { reason: "not transitive", a, b: c });
                    }
                }
            }
        }
        // meets and joins by scanning for greatest lower / least upper bounds
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut m: Option<usize> = None;
                for c in 0..n {
                    if le(c, a) && le(c, b) && m.is_none_or(|m| le(m, c)) {
                        m = Some(c);
                    }
                }
                // m is a candidate greatest lower bound; verify it dominates all lower bounds
                match m {
                    Some(m) if (0..n).all(|c| !(le(c, a) && le(c, b)) || le(c, m)) => {
                        meet[a * n + b] = m
                    }
                    _ => return Err(LatticeError::NotALattice { kind: "meet", a, b }),
                }
                let mut j: Option<usize> = None;
                for c in 0..n {
                    if le(a, c) && le(b, c) && j.is_none_or(|j| le(c, j)) {
                        j = Some(c);
                    }
                }
                match j {
                    Some(j) if (0..n).all(|c| !(le(a, c) && le(b, c)) || le(j, c)) => {
                        join[a * n + b] = j
                    }
                    _ => return Err(LatticeError::NotALattice { kind: "join", a, b }),
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(LatticeError::Unbounded { kind: "bottom" })?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(LatticeError::Unbounded { kind: "top" })?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x * n + join[y * n + z]];
                    let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive { x, y, z });
                    }
                }
            }
        }
        Ok(FiniteBDL { n, names, leq, meet, join, bottom, top })
    }

    /// Builds the lattice whose order is given by covering (or arbitrary)
    /// pairs; the reflexive-transitive closure is taken first.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<FiniteBDL, LatticeError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::validate_bdl(names, leq)
    }

    pub fn chain(k: usize) -> FiniteBDL {
        let names = (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
        let mut leq = vec![false; k * k];
        for a in 0..k {
            for b in a..k {
                leq[a * k + b] = true;
            }
        }
        Self::validate_bdl(names, leq).expect("a chain is a bounded distributive lattice")
    }

    /// 0 < a,b < 1 with a,b incomparable.
    pub fn diamond() -> FiniteBDL {
        let names = ["0", "a", "b", "1"].map(str::to_string).to_vec();
        Self::from_pairs(names, &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .expect("the four-element diamond is a bounded distributive lattice")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_set(&self, xs: ElemSet) -> usize {
        let mut acc = self.top;
        for x in iter_set(xs) {
            acc = self.meet(acc, x);
        }
        acc
    }

    pub fn join_set(&self, xs: ElemSet) -> usize {
        let mut acc = self.bottom;
        for x in iter_set(xs) {
            acc = self.join(acc, x);
        }
        acc
    }

    /// Complement of `x`, when one exists.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.n).find(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
    }

    pub fn is_boolean(&self) -> bool {
        (0..self.n).all(|x| self.complement(x).is_some())
    }

    /// Join-irreducible elements: nonzero `p` that are not the join of two
    /// strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| {
                p != self.bottom
                    && !(0..self.n).any(|a| {
                        (0..self.n).any(|b| {
                            a != p && b != p && self.join(a, b) == p
                        })
                    })
            })
            .collect()
    }

    /// Principal filter `[a)` as a bitset.
    pub fn up_set(&self, a: usize) -> ElemSet {
        (0..self.n).filter(|&x| self.leq(a, x)).fold(0, |s, x| s | (1 << x))
    }

    /// Principal ideal `(a]` as a bitset.
    pub fn down_set(&self, a: usize) -> ElemSet {
        (0..self.n).filter(|&x| self.leq(x, a)).fold(0, |s, x| s | (1 << x))
    }

    pub fn is_filter(&self, set: ElemSet) -> bool {
        if set & (1 << self.top) == 0 {
            return false;
        }
        for a in iter_set(set) {
            for b in 0..self.n {
                if self.leq(a, b) && set & (1 << b) == 0 {
                    return false;
                }
            }
            for b in iter_set(set) {
                if set & (1 << self.meet(a, b)) == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_prime_filter(&self, set: ElemSet) -> bool {
        if !self.is_filter(set) || set & (1 << self.bottom) != 0 {
            return false;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if set & (1 << self.join(a, b)) != 0
                    && set & (1 << a) == 0
                    && set & (1 << b) == 0
                {
                    return false;
                }
            }
        }
        true
    }
}

/// A filter of a `FiniteBDL`, stored as a bitset over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter(pub ElemSet);

/// A prime filter: proper and join-prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeFilter(pub ElemSet);

/// All filters, in bitset order. In a finite lattice these are exactly
/// the principal filters `[a)`.
pub fn all_filters(l: &FiniteBDL) -> Vec<Filter> {
    let mut out: Vec<Filter> = (0..l.size()).map(|a| Filter(l.up_set(a))).collect();
    out.sort();
    out.dedup();
    out
}

/// All prime filters, in bitset order.
pub fn prime_filters(l: &FiniteBDL) -> Vec<PrimeFilter> {
    let mut out: Vec<PrimeFilter> = all_filters(l)
        .into_iter()
        .filter(|f| l.is_prime_filter(f.0))
        .map(|f| PrimeFilter(f.0))
        .collect();
    out.sort();
    out
}

pub fn iter_set(set: ElemSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| set & (1 << i) != 0)
}

pub fn set_of(xs: &[usize]) -> ElemSet {
    xs.iter().fold(0, |s, &x| s | (1 << x))
}
