//! Kripke-style frames `(X, <=, R, S)`, the frame conditions making them
//! WH-, WD- or WHB-frames, their complex algebras over up-sets, and
//! p-morphism checks.

use crate::algebra::ArrowAlgebra;
use crate::lattice::{iter_set, ElemSet, FiniteBDL};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("point order is not a partial order: {a} and {b} are mutually below each other")]
    NotAPoset { a: usize, b: usize },
    #[error("point index {i} out of range for {n} points")]
    PointOutOfRange { i: usize, n: usize },
    #[error("complex algebra construction failed: {op} of two up-sets is not an up-set (frame conditions do not hold)")]
    NotClosed { op: &'static str },
}

/// A finite frame: a poset of points and two binary relations. Nothing
/// here forces the frame conditions; see [`Frame::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    n: usize,
    labels: Vec<String>,
    leq: Vec<bool>,
    r: Vec<bool>,
    s: Vec<bool>,
}

impl Frame {
    /// Builds a frame from covering (or any) order pairs and relation
    /// pairs. The order is closed reflexively and transitively.
    pub fn new(
        labels: Vec<String>,
        leq_pairs: &[(usize, usize)],
        r_pairs: &[(usize, usize)],
        s_pairs: &[(usize, usize)],
    ) -> Result<Frame, FrameError> {
        let n = labels.len();
        let check = |&(a, b): &(usize, usize)| {
            if a >= n || b >= n {
                Err(FrameError::PointOutOfRange { i: a.max(b), n })
            } else {
                Ok(())
            }
        };
        let mut leq = vec![false; n * n];
        for p in leq_pairs {
            check(p)?;
            leq[p.0 * n + p.1] = true;
        }
        for i in 0..n {
            leq[i * n + i] = true;
        }
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
        for a in 0..n {
            for b in 0..a {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(FrameError::NotAPoset { a: b, b: a });
                }
            }
        }
        let mut r = vec![false; n * n];
        for p in r_pairs {
            check(p)?;
            r[p.0 * n + p.1] = true;
        }
        let mut s = vec![false; n * n];
        for p in s_pairs {
            check(p)?;
            s[p.0 * n + p.1] = true;
        }
        Ok(Frame { n, labels, leq, r, s })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn r(&self, a: usize, b: usize) -> bool {
        self.r[a * self.n + b]
    }

    pub fn s(&self, a: usize, b: usize) -> bool {
        self.s[a * self.n + b]
    }

    pub fn r_row(&self, a: usize) -> ElemSet {
        (0..self.n).filter(|&b| self.r(a, b)).fold(0, |m, b| m | (1 << b))
    }

    pub fn s_row(&self, a: usize) -> ElemSet {
        (0..self.n).filter(|&b| self.s(a, b)).fold(0, |m, b| m | (1 << b))
    }

    /// All up-sets of the point order, in ascending bitset order.
    pub fn upsets(&self) -> Vec<ElemSet> {
        (0u64..(1 << self.n))
            .filter(|&u| {
                iter_set(u).all(|x| (0..self.n).all(|y| !self.leq(x, y) || u & (1 << y) != 0))
            })
            .collect()
    }

    /// `leq o R (in)  R`: x <= z and (z,y) in R imply (x,y) in R. The
    /// first violating triple (x, z, y) is returned.
    pub fn wh_violation(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for z in 0..self.n {
                if !self.leq(x, z) {
                    continue;
                }
                for y in 0..self.n {
                    if self.r(z, y) && !self.r(x, y) {
                        return Some((x, z, y));
                    }
                }
            }
        }
        None
    }

    /// `leq^-1 o S (in) S`: z <= x and (z,y) in S imply (x,y) in S.
    pub fn wd_violation(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for z in 0..self.n {
                if !self.leq(z, x) {
                    continue;
                }
                for y in 0..self.n {
                    if self.s(z, y) && !self.s(x, y) {
                        return Some((x, z, y));
                    }
                }
            }
        }
        None
    }

    /// First pair where S differs from R^-1.
    pub fn s_vs_r_inverse_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.s(x, y) != self.r(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_wh_frame(&self) -> bool {
        self.wh_violation().is_none()
    }

    pub fn is_wd_frame(&self) -> bool {
        self.wd_violation().is_none()
    }

    pub fn is_whb_frame(&self) -> bool {
        self.is_wh_frame() && self.is_wd_frame() && self.s_vs_r_inverse_violation().is_none()
    }

    pub fn r_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.r(x, x))
    }

    pub fn r_transitive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                !self.r(x, y) || (0..self.n).all(|z| !self.r(y, z) || self.r(x, z))
            })
        })
    }

    /// R below the order: (x,y) in R implies x <= y.
    pub fn r_below_leq(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| !self.r(x, y) || self.leq(x, y)))
    }

    pub fn s_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.s(x, x))
    }

    pub fn s_transitive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                !self.s(x, y) || (0..self.n).all(|z| !self.s(y, z) || self.s(x, z))
            })
        })
    }

    /// S above the dual order: (x,y) in S implies y <= x.
    pub fn s_above_geq(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| !self.s(x, y) || self.leq(y, x)))
    }

    /// `U => V` over R: the points x with R(x) & U contained in V.
    pub fn imp_r(&self, u: ElemSet, v: ElemSet) -> ElemSet {
        (0..self.n)
            .filter(|&x| self.r_row(x) & u & !v == 0)
            .fold(0, |m, x| m | (1 << x))
    }

    /// `U <= V` over S: the points x with S(x) meeting U \ V.
    pub fn dif_s(&self, u: ElemSet, v: ElemSet) -> ElemSet {
        (0..self.n)
            .filter(|&x| self.s_row(x) & u & !v != 0)
            .fold(0, |m, x| m | (1 << x))
    }

    /// The algebra of up-sets with `=>` over R and `<=` over S. Fails if
    /// either operation leaves the up-sets, which happens exactly when
    /// the WH/WD frame conditions are broken.
    pub fn complex_algebra(&self) -> Result<ArrowAlgebra, FrameError> {
        let ups = self.upsets();
        let index_of = |u: ElemSet| ups.binary_search(&u).ok();
        let m = ups.len();
        let names: Vec<String> = ups.iter().map(|&u| self.set_label(u)).collect();
        let mut leq_pairs = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if ups[i] & !ups[j] == 0 {
                    leq_pairs.push((i, j));
                }
            }
        }
        let lat = FiniteBDL::from_pairs(names, &leq_pairs)
            .expect("up-sets ordered by inclusion form a bounded distributive lattice");
        let mut to = vec![0; m * m];
        let mut from = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                to[i * m + j] = index_of(self.imp_r(ups[i], ups[j]))
                    .ok_or(FrameError::NotClosed { op: "=>" })?;
                from[i * m + j] = index_of(self.dif_s(ups[i], ups[j]))
                    .ok_or(FrameError::NotClosed { op: "<=" })?;
            }
        }
        Ok(ArrowAlgebra::new(lat, to, from).expect("tables are square and in range"))
    }

    fn set_label(&self, u: ElemSet) -> String {
        let mut parts: Vec<&str> = iter_set(u).map(|i| self.labels[i].as_str()).collect();
        parts.sort_unstable();
        format!("{{{}}}", parts.join(","))
    }
}

/// One broken p-morphism condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// x <= y in the domain but f(x) <= f(y) fails.
    NotMonotone { x: usize, y: usize },
    /// (x,y) in the domain relation but (f(x),f(y)) missing; `rel` is "R" or "S".
    NotForward { rel: &'static str, x: usize, y: usize },
    /// (f(x),z) in the codomain relation but no y with (x,y) in the
    /// domain relation and f(y)=z.
    NoLift { rel: &'static str, x: usize, z: usize },
    /// f maps a point outside the codomain.
    OutOfRange { x: usize },
}

/// Checks the three p-morphism conditions for `f: dom -> cod` and
/// reports every violation (order-preservation, forward preservation of
/// R and S, and the lifting/back condition for R and S).
pub fn check_morphism(f: &[usize], dom: &Frame, cod: &Frame) -> Vec<MorphismViolation> {
    assert_eq!(f.len(), dom.size(), "map must be total on the domain");
    let mut out = Vec::new();
    for x in 0..dom.size() {
        if f[x] >= cod.size() {
            out.push(MorphismViolation::OutOfRange { x });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for x in 0..dom.size() {
        for y in 0..dom.size() {
            if dom.leq(x, y) && !cod.leq(f[x], f[y]) {
                out.push(MorphismViolation::NotMonotone { x, y });
            }
        }
    }
    let rel = |frame: &Frame, name, a, b| if name == "R" { frame.r(a, b) } else { frame.s(a, b) };
    for name in ["R", "S"] {
        for x in 0..dom.size() {
            for y in 0..dom.size() {
                if rel(dom, name, x, y) && !rel(cod, name, f[x], f[y]) {
                    out.push(MorphismViolation::NotForward { rel: name, x, y });
                }
            }
            for z in 0..cod.size() {
                if rel(cod, name, f[x], z)
                    && !(0..dom.size()).any(|y| rel(dom, name, x, y) && f[y] == z)
                {
                    out.push(MorphismViolation::NoLift { rel: name, x, z });
                }
            }
        }
    }
    out
}

/// The dual of a frame morphism: `U -> f^-1(U)` from up-sets of the
/// codomain to up-sets of the domain, as an index map between the
/// carriers of the two complex algebras.
pub fn dualize_map(f: &[usize], dom: &Frame, cod: &Frame) -> Vec<usize> {
    let dom_ups = dom.upsets();
    let cod_ups = cod.upsets();
    cod_ups
        .iter()
        .map(|&u| {
            let pre: ElemSet = (0..dom.size())
                .filter(|&x| u & (1 << f[x]) != 0)
                .fold(0, |m, x| m | (1 << x));
            dom_ups
                .binary_search(&pre)
                .expect("preimage of an up-set under a monotone map is an up-set")
        })
        .collect()
}

/// Checks that `h` (an index map) is a homomorphism of arrow algebras,
/// returning the first operation it fails to preserve.
pub fn hom_violation(h: &[usize], dom: &ArrowAlgebra, cod: &ArrowAlgebra) -> Option<String> {
    let (la, lb) = (dom.lattice(), cod.lattice());
    assert_eq!(h.len(), la.size());
    if h[la.bottom()] != lb.bottom() {
        return Some("0".into());
    }
    if h[la.top()] != lb.top() {
        return Some("1".into());
    }
    for a in 0..la.size() {
        for b in 0..la.size() {
            if h[la.meet(a, b)] != lb.meet(h[a], h[b]) {
                return Some(format!("meet at ({a},{b})"));
            }
            if h[la.join(a, b)] != lb.join(h[a], h[b]) {
                return Some(format!("join at ({a},{b})"));
            }
            if h[dom.imp(a, b)] != cod.imp(h[a], h[b]) {
                return Some(format!("-> at ({a},{b})"));
            }
            if h[dom.dif(a, b)] != cod.dif(h[a], h[b]) {
                return Some(format!("<- at ({a},{b})"));
            }
        }
    }
    None
}
