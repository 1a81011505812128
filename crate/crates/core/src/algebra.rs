//! Bounded distributive lattices equipped with a strict implication `->`
//! and a weak difference `<-`, given by explicit operation tables.

use crate::lattice::{FiniteBDL, LatticeError};
use crate::term::{Equation, Signature, Term, TermError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowAlgebra {
    lat: FiniteBDL,
    to: Vec<usize>,
    from: Vec<usize>,
}

impl ArrowAlgebra {
    /// Wraps a lattice with row-major `to`/`from` tables (row = left
    /// argument). Only shapes and ranges are validated here; axioms are
    /// a separate question, see [`ArrowAlgebra::check_equation`].
    pub fn new(lat: FiniteBDL, to: Vec<usize>, from: Vec<usize>) -> Result<Self, LatticeError> {
        let n = lat.size();
        if to.len() != n * n || from.len() != n * n {
            return Err(LatticeError::BadShape { n });
        }
        if to.iter().chain(from.iter()).any(|&v| v >= n) {
            return Err(LatticeError::BadShape { n });
        }
        Ok(ArrowAlgebra { lat, to, from })
    }

    /// The Heyting/co-Heyting structure every finite BDL carries:
    /// `a -> b = max{c : a & c <= b}`, `a <- b = min{c : a <= b | c}`.
    pub fn heyting_brouwer(lat: FiniteBDL) -> Self {
        let n = lat.size();
        let mut to = vec![0; n * n];
        let mut from = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut imp = lat.bottom();
                let mut dif = lat.top();
                for c in 0..n {
                    if lat.leq(lat.meet(a, c), b) {
                        imp = lat.join(imp, c);
                    }
                    if lat.leq(a, lat.join(b, c)) {
                        dif = lat.meet(dif, c);
                    }
                }
                to[a * n + b] = imp;
                from[a * n + b] = dif;
            }
        }
        ArrowAlgebra { lat, to, from }
    }

    pub fn lattice(&self) -> &FiniteBDL {
        &self.lat
    }

    pub fn size(&self) -> usize {
        self.lat.size()
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.to[a * self.lat.size() + b]
    }

    pub fn dif(&self, a: usize, b: usize) -> usize {
        self.from[a * self.lat.size() + b]
    }

    pub fn to_table(&self) -> &[usize] {
        &self.to
    }

    pub fn from_table(&self) -> &[usize] {
        &self.from
    }

    /// Evaluates a term under `env` (value of `x{i+1}` at index `i`).
    /// `~` needs a complemented argument; `G,H,P,F` are evaluated via
    /// their arrow definitions `Gx = 1->x`, `Hx = ~(~x <- 0)`, etc.
    pub fn eval(&self, t: &Term, env: &[usize]) -> Result<usize, TermError> {
        match t {
            Term::Var(i) => env.get(*i).copied().ok_or(TermError::UnboundVariable(*i)),
            Term::Zero => Ok(self.lat.bottom()),
            Term::One => Ok(self.lat.top()),
            Term::Not(a) => {
                let v = self.eval(a, env)?;
                self.lat.complement(v).ok_or(TermError::UninterpretedSymbol("~"))
            }
            Term::Meet(a, b) => Ok(self.lat.meet(self.eval(a, env)?, self.eval(b, env)?)),
            Term::Join(a, b) => Ok(self.lat.join(self.eval(a, env)?, self.eval(b, env)?)),
            Term::To(a, b) => Ok(self.imp(self.eval(a, env)?, self.eval(b, env)?)),
            Term::From(a, b) => Ok(self.dif(self.eval(a, env)?, self.eval(b, env)?)),
            Term::G(_) | Term::H(_) | Term::P(_) | Term::F(_) => {
                self.eval(&t.to_arrows().map_err(|_| TermError::SignatureMismatch(Signature::Tense))?, env)
            }
        }
    }

    /// Scans all assignments in lexicographic order on `(x1, .., xk)`
    /// and returns the first violation, or `None` if the equation holds.
    pub fn check_equation(&self, eq: &Equation) -> Result<Option<Violation>, TermError> {
        let k = eq.arity();
        let n = self.lat.size();
        let mut env = vec![0usize; k];
        loop {
            let lhs = self.eval(&eq.lhs, &env)?;
            let rhs = self.eval(&eq.rhs, &env)?;
            if lhs != rhs {
                return Ok(Some(Violation { env: env.clone(), lhs, rhs }));
            }
            // advance the odometer, last variable fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                env[i] += 1;
                if env[i] < n {
                    break;
                }
                env[i] = 0;
            }
        }
    }

    pub fn satisfies(&self, eq: &Equation) -> bool {
        matches!(self.check_equation(eq), Ok(None))
    }

    pub fn check_axiom(&self, id: &str) -> Option<Option<Violation>> {
        let eq = axiom(id)?;
        Some(self.check_equation(&eq).expect("axioms use the arrow signature"))
    }

    /// All axiom-family and variety labels this algebra satisfies, in a
    /// fixed order.
    pub fn classify(&self) -> Vec<&'static str> {
        let holds = |id: &str| self.check_axiom(id).unwrap().is_none();
        let wh = ["wh1", "wh2", "wh3", "wh4"].iter().all(|i| holds(i));
        let wd = ["wd1", "wd2", "wd3", "wd4"].iter().all(|i| holds(i));
        let dwh = wh && wd;
        let whb = dwh && holds("e1") && holds("e2");
        let mut out = Vec::new();
        let mut put = |cond: bool, label: &'static str| {
            if cond {
                out.push(label);
            }
        };
        put(wh, "wh");
        put(wd, "wd");
        put(dwh, "dwh");
        put(whb, "whb");
        put(wh && holds("r"), "rwh");
        put(wh && holds("t"), "twh");
        put(wh && holds("r") && holds("t"), "srl");
        put(wh && holds("b"), "basic");
        let heyting = self.is_heyting();
        let coheyting = self.is_co_heyting();
        put(heyting, "heyting");
        put(wd && holds("rstar"), "rwd");
        put(wd && holds("tstar"), "twd");
        put(wd && holds("rstar") && holds("tstar"), "srl-star");
        put(wd && holds("bstar"), "basic-star");
        put(coheyting, "co-heyting");
        put(heyting && coheyting, "hb");
        put(whb && holds("b") && holds("bstar"), "bwhb");
        put(whb && self.lat.is_boolean(), "tba-reduct");
        out
    }

    /// Residuation law checked directly: `a & c <= b  iff  c <= a -> b`.
    pub fn is_heyting(&self) -> bool {
        let n = self.lat.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.lat.leq(self.lat.meet(a, c), b) == self.lat.leq(c, self.imp(a, b)))
            })
        })
    }

    /// Co-residuation law checked directly: `a <= b | c  iff  a <- b <= c`.
    pub fn is_co_heyting(&self) -> bool {
        let n = self.lat.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.lat.leq(a, self.lat.join(b, c)) == self.lat.leq(self.dif(a, b), c))
            })
        })
    }
}

/// A failed instance of an equation: the first assignment (lexicographic
/// on the variable tuple) where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub env: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

pub const AXIOM_IDS: [&str; 16] = [
    "wh1", "wh2", "wh3", "wh4", "wd1", "wd2", "wd3", "wd4", "r", "t", "b", "rstar", "tstar",
    "bstar", "e1", "e2",
];

/// Axiom families by stable id. Inequalities `s <= t` are encoded as
/// `s & t = s`.
pub fn axiom(id: &str) -> Option<Equation> {
    use crate::term::parse_equation;
    let src = match id {
        "wh1" => "x1 -> x1 = 1",
        "wh2" => "x1 -> (x2 & x3) = (x1 -> x2) & (x1 -> x3)",
        "wh3" => "(x1 | x2) -> x3 = (x1 -> x3) & (x2 -> x3)",
        "wh4" => "(x1 -> x2) & (x2 -> x3) <= x1 -> x3",
        "wd1" => "x1 <- x1 = 0",
        "wd2" => "(x1 | x2) <- x3 = (x1 <- x3) | (x2 <- x3)",
        "wd3" => "x1 <- (x2 & x3) = (x1 <- x2) | (x1 <- x3)",
        "wd4" => "x1 <- x3 <= (x1 <- x2) | (x2 <- x3)",
        "r" => "x1 & (x1 -> x2) <= x2",
        "t" => "x1 -> x2 <= x3 -> (x1 -> x2)",
        "b" => "x1 <= 1 -> x1",
        "rstar" => "x1 <= x2 | (x1 <- x2)",
        "tstar" => "(x1 <- x2) <- x3 <= x1 <- x2",
        "bstar" => "x1 <- 0 <= x1",
        "e1" => "x1 & ((x1 -> x2) <- 0) <= x2",
        "e2" => "x1 <= x2 | (1 -> (x1 <- x2))",
        _ => return None,
    };
    Some(parse_equation(src).expect("built-in axiom parses"))
}

/// The four-element diamond 0 < a,b < 1 with arrow tables that make a
/// DWH-algebra failing both e1 and e2 (so it is not a WHB-algebra):
/// a & ((a -> b) <- 0) = a but a is not <= b, and
/// b | (1 -> (a <- b)) = b but a is not <= b.
pub fn diamond_example() -> ArrowAlgebra {
    let lat = FiniteBDL::diamond();
    // elements 0=0, 1=a, 2=b, 3=1
    let (o, a, b, i) = (0usize, 1usize, 2usize, 3usize);
    let to = vec![
        i, i, i, i, // 0 -> _
        i, i, i, i, // a -> _
        b, b, i, i, // b -> _
        b, b, i, i, // 1 -> _
    ];
    let from = vec![
        o, o, o, o, // 0 <- _
        a, o, a, o, // a <- _
        o, o, o, o, // b <- _
        a, o, a, o, // 1 <- _
    ];
    ArrowAlgebra::new(lat, to, from).unwrap()
}

/// The three-element chain 0 < a < 1 with the Heyting-Brouwer structure
/// x -> y = 1 if x <= y else y, and x <- y = 0 if x <= y else x. A basic
/// WHB-algebra whose tense extension fails both b and bstar.
pub fn three_chain_example() -> ArrowAlgebra {
    ArrowAlgebra::heyting_brouwer(FiniteBDL::chain(3))
}

/// The three-element chain with the constant maps x -> y = 1 and
/// x <- y = 0: a DWH-algebra that is not residuated (1 -> a = 1 but
/// 1 is not <= a).
pub fn three_chain_constant_example() -> ArrowAlgebra {
    let lat = FiniteBDL::chain(3);
    ArrowAlgebra::new(lat, vec![2; 9], vec![0; 9]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{from, join, meet, parse_term, to, var, Equation, Term};

    #[test]
    fn axiom_table_matches_structural_forms() {
        // spot-check the parsed axioms against hand-built terms
        assert_eq!(
            axiom("wh1").unwrap(),
            Equation::equal(to(var(0), var(0)), Term::One)
        );
        assert_eq!(
            axiom("r").unwrap(),
            Equation::leq(meet(var(0), to(var(0), var(1))), var(1))
        );
        assert_eq!(
            axiom("e1").unwrap(),
            Equation::leq(meet(var(0), from(to(var(0), var(1)), Term::Zero)), var(1))
        );
        assert_eq!(
            axiom("e2").unwrap(),
            Equation::leq(var(0), join(var(1), to(Term::One, from(var(0), var(1)))))
        );
        for id in AXIOM_IDS {
            assert!(axiom(id).is_some(), "{id}");
        }
        assert!(axiom("nope").is_none());
    }

    #[test]
    fn heyting_brouwer_on_chains_and_diamond() {
        for lat in [FiniteBDL::chain(1), FiniteBDL::chain(4), FiniteBDL::diamond()] {
            let alg = ArrowAlgebra::heyting_brouwer(lat);
            assert!(alg.is_heyting());
            assert!(alg.is_co_heyting());
            let labels = alg.classify();
            assert!(labels.contains(&"hb"));
            assert!(labels.contains(&"whb"));
            for id in AXIOM_IDS {
                assert!(alg.check_axiom(id).unwrap().is_none(), "{id} fails");
            }
        }
    }

    #[test]
    fn boolean_square_is_tba_reduct() {
        // 2x2 Boolean lattice: product of two 2-chains
        let names = vec!["00".into(), "01".into(), "10".into(), "11".into()];
        let lat = FiniteBDL::from_pairs(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let alg = ArrowAlgebra::heyting_brouwer(lat);
        assert!(alg.classify().contains(&"tba-reduct"));
        // and ~ evaluates on it
        assert_eq!(alg.eval(&parse_term("~x1").unwrap(), &[1]).unwrap(), 2);
    }

    #[test]
    fn diamond_example_is_dwh_but_not_whb() {
        let alg = diamond_example();
        let labels = alg.classify();
        assert!(labels.contains(&"dwh"));
        assert!(!labels.contains(&"whb"));
        assert!(!labels.contains(&"heyting"));
        assert!(!labels.contains(&"co-heyting"));
        let (a, b, one) = (1usize, 2usize, 3usize);
        // cited instance for e1: a & ((a -> b) <- 0) = a, and a is not <= b
        let e1 = axiom("e1").unwrap();
        assert_eq!(alg.eval(&e1.lhs, &[a, b]).unwrap(), alg.lattice().meet(a, b));
        assert_eq!(alg.dif(alg.imp(a, b), 0), a);
        assert!(!alg.lattice().leq(a, b));
        assert!(alg.check_equation(&e1).unwrap().is_some());
        // cited instance for e2: b | (1 -> (a <- b)) = b, and a is not <= b
        let e2 = axiom("e2").unwrap();
        assert_eq!(alg.imp(one, alg.dif(a, b)), b);
        assert!(alg.check_equation(&e2).unwrap().is_some());
        // first (lexicographic) failing assignments are pinned:
        // e1 first fails at x1=a, x2=0; e2 at x1=a, x2=0
        assert_eq!(alg.check_equation(&e1).unwrap().unwrap().env, vec![1, 0]);
        assert_eq!(alg.check_equation(&e2).unwrap().unwrap().env, vec![1, 0]);
        // r also fails: 1 & (1 -> a) = b is not <= a
        assert!(!alg.lattice().leq(alg.lattice().meet(one, alg.imp(one, a)), a));
        assert!(alg.check_axiom("r").unwrap().is_some());
    }

    #[test]
    fn three_chain_examples() {
        // heyting-brouwer structure on the chain
        let alg = three_chain_example();
        assert_eq!(alg, ArrowAlgebra::heyting_brouwer(FiniteBDL::chain(3)));
        let labels = alg.classify();
        for want in ["whb", "basic", "basic-star", "heyting", "co-heyting", "hb", "bwhb"] {
            assert!(labels.contains(&want), "{want}");
        }
        assert_eq!(alg.imp(2, 1), 1); // 1 -> a = a
        assert_eq!(alg.dif(1, 0), 1); // a <- 0 = a

        // constant maps: a DWH-algebra outside HB
        let flat = three_chain_constant_example();
        let labels = flat.classify();
        assert!(labels.contains(&"dwh"));
        assert!(!labels.contains(&"hb"));
        assert_eq!(flat.imp(2, 1), 2); // 1 -> a = 1, yet 1 is not <= a
        assert!(!flat.is_heyting());
    }

    #[test]
    fn variety_inclusions_on_small_stock() {
        // every algebra at hand respects the inclusion diagram:
        // heyting => basic => twh, srl => twh & rwh, rwh/twh => wh
        let stock = [
            ArrowAlgebra::heyting_brouwer(FiniteBDL::chain(3)),
            ArrowAlgebra::heyting_brouwer(FiniteBDL::diamond()),
            diamond_example(),
            three_chain_example(),
        ];
        for alg in &stock {
            let l = alg.classify();
            let has = |s: &str| l.iter().any(|&x| x == s);
            if has("heyting") {
                assert!(has("basic") && has("rwh"));
            }
            if has("basic") {
                assert!(has("twh"));
            }
            if has("srl") {
                assert!(has("twh") && has("rwh"));
            }
            if has("rwh") || has("twh") {
                assert!(has("wh"));
            }
            if has("co-heyting") {
                assert!(has("basic-star") && has("rwd"));
            }
        }
    }

    #[test]
    fn not_requires_complement() {
        let alg = ArrowAlgebra::heyting_brouwer(FiniteBDL::chain(3));
        let t = parse_term("~x1").unwrap();
        assert!(alg.eval(&t, &[1]).is_err()); // middle of a 3-chain
        assert_eq!(alg.eval(&t, &[0]).unwrap(), 2);
    }

    #[test]
    fn bad_table_shapes_rejected() {
        let lat = FiniteBDL::chain(2);
        assert!(ArrowAlgebra::new(lat.clone(), vec![0; 3], vec![0; 4]).is_err());
        assert!(ArrowAlgebra::new(lat, vec![5, 0, 0, 0], vec![0; 4]).is_err());
    }
}
