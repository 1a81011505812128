//! Prime-filter spectra: the canonical relations R and S on prime
//! filters, the closure operators attached to them, the Stone map, and
//! the canonical frame of an algebra.

use crate::algebra::ArrowAlgebra;
use crate::frame::Frame;
use crate::lattice::{iter_set, prime_filters, ElemSet, PrimeFilter};

/// `(P,Q) in R` iff for all a, b: `a -> b in P` and `a in Q` imply
/// `b in Q`. Both arguments are filters given as element sets.
pub fn related_r(alg: &ArrowAlgebra, p: ElemSet, q: ElemSet) -> bool {
    let n = alg.size();
    (0..n).all(|a| {
        q & (1 << a) == 0
            || (0..n).all(|b| p & (1 << alg.imp(a, b)) == 0 || q & (1 << b) != 0)
    })
}

/// `(P,Q) in S` iff for all a, b: `a in Q` and `b not in Q` imply
/// `a <- b in P`.
pub fn related_s(alg: &ArrowAlgebra, p: ElemSet, q: ElemSet) -> bool {
    let n = alg.size();
    (0..n).all(|a| {
        q & (1 << a) == 0
            || (0..n).all(|b| q & (1 << b) != 0 || p & (1 << alg.dif(a, b)) != 0)
    })
}

/// Pairs of prime-filter indices in the canonical relation R.
pub fn relation_r(alg: &ArrowAlgebra) -> Vec<(usize, usize)> {
    let pf = prime_filters(alg.lattice());
    let mut out = Vec::new();
    for (i, p) in pf.iter().enumerate() {
        for (j, q) in pf.iter().enumerate() {
            if related_r(alg, p.0, q.0) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Pairs of prime-filter indices in the canonical relation S.
pub fn relation_s(alg: &ArrowAlgebra) -> Vec<(usize, usize)> {
    let pf = prime_filters(alg.lattice());
    let mut out = Vec::new();
    for (i, p) in pf.iter().enumerate() {
        for (j, q) in pf.iter().enumerate() {
            if related_s(alg, p.0, q.0) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `D_F(X) = { b : meet(Y) -> b in F for some Y a subset of X }`, with
/// the empty meet read as 1. The least filter H with `(F,H) in R`
/// containing X.
pub fn closure_d(alg: &ArrowAlgebra, f: ElemSet, x: ElemSet) -> ElemSet {
    let lat = alg.lattice();
    let mut out: ElemSet = 0;
    for b in 0..alg.size() {
        // scan sub-multisets Y of X, including the empty one
        let mut y = x;
        let hit = loop {
            let m = lat.meet_set(y);
            if f & (1 << alg.imp(m, b)) != 0 {
                break true;
            }
            if y == 0 {
                break false;
            }
            y = (y - 1) & x;
        };
        if hit {
            out |= 1 << b;
        }
    }
    out
}

/// `F_P(X) = { a : join(Y) <- a not in P for some Y a subset of X }`,
/// the least filter Q with `(P,Q) in S` containing X. The empty join is
/// read as 1, not 0: filters contain 1, so the closure of any X must
/// admit Y = {1}, and reading it as 0 would let `0 <- a` (which can be 0,
/// e.g. in any co-Heyting algebra) pull every element in and break the
/// characterization `(P,Q) in S iff F_P(Q) = Q`.
pub fn closure_f(alg: &ArrowAlgebra, p: ElemSet, x: ElemSet) -> ElemSet {
    let lat = alg.lattice();
    let mut out: ElemSet = 0;
    for a in 0..alg.size() {
        let mut y = x;
        let hit = loop {
            let j = if y == 0 { lat.top() } else { lat.join_set(y) };
            if p & (1 << alg.dif(j, a)) == 0 {
                break true;
            }
            if y == 0 {
                break false;
            }
            y = (y - 1) & x;
        };
        if hit {
            out |= 1 << a;
        }
    }
    out
}

/// Bitset-least prime filter Q with (P,Q) in R_A, a in Q and b not in
/// Q. Such a Q exists exactly when a->b is outside P.
pub fn witness_r(alg: &ArrowAlgebra, p: &PrimeFilter, a: usize, b: usize) -> Option<PrimeFilter> {
    prime_filters(alg.lattice())
        .into_iter()
        .find(|q| related_r(alg, p.0, q.0) && q.0 & (1 << a) != 0 && q.0 & (1 << b) == 0)
}

/// Bitset-least prime filter Q with (P,Q) in S_A, a in Q and b not in
/// Q. Exists exactly when a<-b belongs to P.
pub fn witness_s(alg: &ArrowAlgebra, p: &PrimeFilter, a: usize, b: usize) -> Option<PrimeFilter> {
    prime_filters(alg.lattice())
        .into_iter()
        .find(|q| related_s(alg, p.0, q.0) && q.0 & (1 << a) != 0 && q.0 & (1 << b) == 0)
}

/// The Stone map `a -> { P prime : a in P }` as a bitset over the
/// prime-filter indices of `prime_filters(lat)`.
pub fn stone_map(alg: &ArrowAlgebra, a: usize) -> ElemSet {
    prime_filters(alg.lattice())
        .iter()
        .enumerate()
        .filter(|(_, p)| p.0 & (1 << a) != 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// The canonical frame `(X(A), subset-order, R, S)`. Point i is the
/// i-th prime filter in bitset order, labelled by its elements.
pub fn canonical_frame(alg: &ArrowAlgebra) -> Frame {
    let pf = prime_filters(alg.lattice());
    let labels: Vec<String> = pf.iter().map(|p| filter_label(alg, p)).collect();
    let mut leq = Vec::new();
    for (i, p) in pf.iter().enumerate() {
        for (j, q) in pf.iter().enumerate() {
            if p.0 & !q.0 == 0 {
                leq.push((i, j));
            }
        }
    }
    Frame::new(labels, &leq, &relation_r(alg), &relation_s(alg))
        .expect("inclusion of prime filters is a partial order")
}

fn filter_label(alg: &ArrowAlgebra, p: &PrimeFilter) -> String {
    let names: Vec<&str> = iter_set(p.0).map(|a| alg.lattice().name(a)).collect();
    format!("{{{}}}", names.join(","))
}

/// Checks that the Stone map embeds `alg` into the complex algebra of
/// its canonical frame: injective, and preserving all six operations.
/// Returns the image indices, or the reason it fails.
pub fn representation_embedding(alg: &ArrowAlgebra) -> Result<Vec<usize>, String> {
    let frame = canonical_frame(alg);
    let complex = frame.complex_algebra().map_err(|e| e.to_string())?;
    let ups = frame.upsets();
    let mut image = Vec::with_capacity(alg.size());
    for a in 0..alg.size() {
        let u = stone_map(alg, a);
        match ups.binary_search(&u) {
            Ok(i) => image.push(i),
            Err(_) => return Err(format!("sigma({}) is not an up-set", alg.lattice().name(a))),
        }
    }
    for a in 0..alg.size() {
        for b in 0..alg.size() {
            if a != b && image[a] == image[b] {
                return Err(format!(
                    "sigma identifies {} and {}",
                    alg.lattice().name(a),
                    alg.lattice().name(b)
                ));
            }
        }
    }
    if let Some(op) = crate::frame::hom_violation(&image, alg, &complex) {
        return Err(format!("sigma does not preserve {op}"));
    }
    Ok(image)
}
