//! The LND-EQ-TRS rewrite engine on path terms.
//!
//! Rule schemas, single-step application at a position, deterministic
//! normalization with traces, and the normal-form decision procedure for
//! rewrite equivalence.

use std::fmt;

use thiserror::Error;

use crate::expr::{alpha_eq, Expr};
use crate::path::{Path, PathError, PathPos};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrsError {
    #[error("rule does not match at the given position")]
    NoMatch,
    #[error("invalid position")]
    InvalidPosition,
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Identifiers for the shipped rewrite rules, in priority order.
///
/// The first fourteen are always active. `RcNu`/`RcMu`/`RcXi` collapse a
/// congruence applied to reflexivity (for example `NuL(Refl(a), n)` to
/// `Refl(App(a, n))`) and are enabled per [`Rewriter`] configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Sr,
    Ss,
    Tr,
    Tsr,
    Trr,
    Tlr,
    Tt,
    Stss,
    TcNu,
    TcMu,
    TcXi,
    ScNu,
    ScMu,
    ScXi,
    RcNu,
    RcMu,
    RcXi,
}

impl RuleId {
    /// The always-active rules, in enumeration (priority) order.
    pub const BASE: [RuleId; 14] = [
        RuleId::Sr,
        RuleId::Ss,
        RuleId::Tr,
        RuleId::Tsr,
        RuleId::Trr,
        RuleId::Tlr,
        RuleId::Tt,
        RuleId::Stss,
        RuleId::TcNu,
        RuleId::TcMu,
        RuleId::TcXi,
        RuleId::ScNu,
        RuleId::ScMu,
        RuleId::ScXi,
    ];

    /// All rules including the gated refl-congruence collapses.
    pub const ALL: [RuleId; 17] = [
        RuleId::Sr,
        RuleId::Ss,
        RuleId::Tr,
        RuleId::Tsr,
        RuleId::Trr,
        RuleId::Tlr,
        RuleId::Tt,
        RuleId::Stss,
        RuleId::TcNu,
        RuleId::TcMu,
        RuleId::TcXi,
        RuleId::ScNu,
        RuleId::ScMu,
        RuleId::ScXi,
        RuleId::RcNu,
        RuleId::RcMu,
        RuleId::RcXi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Sr => "SR",
            RuleId::Ss => "SS",
            RuleId::Tr => "TR",
            RuleId::Tsr => "TSR",
            RuleId::Trr => "TRR",
            RuleId::Tlr => "TLR",
            RuleId::Tt => "TT",
            RuleId::Stss => "STSS",
            RuleId::TcNu => "TC_NU",
            RuleId::TcMu => "TC_MU",
            RuleId::TcXi => "TC_XI",
            RuleId::ScNu => "SC_NU",
            RuleId::ScMu => "SC_MU",
            RuleId::ScXi => "SC_XI",
            RuleId::RcNu => "RC_NU",
            RuleId::RcMu => "RC_MU",
            RuleId::RcXi => "RC_XI",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Try to rewrite the root of `p` with `rule`; returns the replacement.
fn rewrite_root(p: &Path, rule: RuleId) -> Option<Path> {
    match (rule, p) {
        // symm(refl) > refl
        (RuleId::Sr, Path::Symm(q)) => match &**q {
            Path::Refl(e) => Some(Path::Refl(e.clone())),
            _ => None,
        },
        // symm(symm(r)) > r
        (RuleId::Ss, Path::Symm(q)) => match &**q {
            Path::Symm(r) => Some((**r).clone()),
            _ => None,
        },
        // trans(r, symm(r)) > refl
        (RuleId::Tr, Path::Trans(r, s)) => match &**s {
            Path::Symm(r2) if r.alpha_eq(r2) => {
                let (src, _) = r.endpoints().ok()?;
                Some(Path::Refl(src))
            }
            _ => None,
        },
        // trans(symm(r), r) > refl
        (RuleId::Tsr, Path::Trans(s, r)) => match &**s {
            Path::Symm(r2) if r2.alpha_eq(r) => {
                let (_, tgt) = r.endpoints().ok()?;
                Some(Path::Refl(tgt))
            }
            _ => None,
        },
        // trans(r, refl) > r
        (RuleId::Trr, Path::Trans(r, s)) => match &**s {
            Path::Refl(_) => Some((**r).clone()),
            _ => None,
        },
        // trans(refl, r) > r
        (RuleId::Tlr, Path::Trans(s, r)) => match &**s {
            Path::Refl(_) => Some((**r).clone()),
            _ => None,
        },
        // trans(trans(r, s), t) > trans(r, trans(s, t))
        (RuleId::Tt, Path::Trans(a, t)) => match &**a {
            Path::Trans(r, s) => Some(Path::Trans(
                r.clone(),
                Box::new(Path::Trans(s.clone(), t.clone())),
            )),
            _ => None,
        },
        // symm(trans(r, s)) > trans(symm(s), symm(r))
        (RuleId::Stss, Path::Symm(q)) => match &**q {
            Path::Trans(r, s) => Some(Path::Trans(
                Box::new(Path::Symm(s.clone())),
                Box::new(Path::Symm(r.clone())),
            )),
            _ => None,
        },
        // congruence distributes over trans
        (RuleId::TcNu, Path::NuL(q, n)) => match &**q {
            Path::Trans(a, b) => Some(Path::trans(
                Path::NuL(a.clone(), n.clone()),
                Path::NuL(b.clone(), n.clone()),
            )),
            _ => None,
        },
        (RuleId::TcMu, Path::MuR(m, q)) => match &**q {
            Path::Trans(a, b) => Some(Path::trans(
                Path::MuR(m.clone(), a.clone()),
                Path::MuR(m.clone(), b.clone()),
            )),
            _ => None,
        },
        (RuleId::TcXi, Path::Xi(x, q)) => match &**q {
            Path::Trans(a, b) => Some(Path::trans(
                Path::Xi(x.clone(), a.clone()),
                Path::Xi(x.clone(), b.clone()),
            )),
            _ => None,
        },
        // congruence commutes with symm
        (RuleId::ScNu, Path::NuL(q, n)) => match &**q {
            Path::Symm(a) => Some(Path::symm(Path::NuL(a.clone(), n.clone()))),
            _ => None,
        },
        (RuleId::ScMu, Path::MuR(m, q)) => match &**q {
            Path::Symm(a) => Some(Path::symm(Path::MuR(m.clone(), a.clone()))),
            _ => None,
        },
        (RuleId::ScXi, Path::Xi(x, q)) => match &**q {
            Path::Symm(a) => Some(Path::symm(Path::Xi(x.clone(), a.clone()))),
            _ => None,
        },
        // congruence of refl collapses (gated)
        (RuleId::RcNu, Path::NuL(q, n)) => match &**q {
            Path::Refl(a) => Some(Path::Refl(Expr::app(a.clone(), n.clone()))),
            _ => None,
        },
        (RuleId::RcMu, Path::MuR(m, q)) => match &**q {
            Path::Refl(a) => Some(Path::Refl(Expr::app(m.clone(), a.clone()))),
            _ => None,
        },
        (RuleId::RcXi, Path::Xi(x, q)) => match &**q {
            Path::Refl(a) => Some(Path::Refl(Expr::lam(x.clone(), a.clone()))),
            _ => None,
        },
        _ => None,
    }
}

/// Apply `rule` at `pos` in `p`. Matching is independent of the rewriter
/// configuration; gating only affects which rules the engine enumerates.
pub fn apply_rule(p: &Path, pos: &PathPos, rule: RuleId) -> Result<Path, TrsError> {
    let sub = p.subpath(pos).map_err(|_| TrsError::InvalidPosition)?;
    let replacement = rewrite_root(sub, rule).ok_or(TrsError::NoMatch)?;
    p.with_subpath(pos, replacement)
        .map_err(|_| TrsError::InvalidPosition)
}

/// A single rewrite step: `rule` applied at `pos` turns `source` into
/// `target`.
///
/// Equality is judged by the (source, target) boundary only, mirroring the
/// proof irrelevance of steps; position and rule are retained so the step
/// can be re-checked in O(1).
#[derive(Clone, Debug)]
pub struct StepWitness {
    pub source: Path,
    pub target: Path,
    pub pos: PathPos,
    pub rule: RuleId,
}

impl PartialEq for StepWitness {
    fn eq(&self, other: &Self) -> bool {
        self.source.alpha_eq(&other.source) && self.target.alpha_eq(&other.target)
    }
}

impl StepWitness {
    /// Re-apply the recorded rule and check it reproduces the recorded
    /// target.
    pub fn recheck(&self) -> Result<(), TrsError> {
        let got = apply_rule(&self.source, &self.pos, self.rule)?;
        if got.alpha_eq(&self.target) {
            Ok(())
        } else {
            Err(TrsError::NoMatch)
        }
    }
}

/// A chain of steps starting at `start`; each step's target is the next
/// step's source.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub start: Path,
    pub steps: Vec<StepWitness>,
}

impl Trace {
    pub fn end(&self) -> &Path {
        self.steps.last().map(|s| &s.target).unwrap_or(&self.start)
    }

    pub fn is_chained(&self) -> bool {
        let mut cur = &self.start;
        for s in &self.steps {
            if !s.source.alpha_eq(cur) {
                return false;
            }
            cur = &s.target;
        }
        true
    }
}

/// Result of a normalization run.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub nf: Path,
    pub trace: Trace,
}

/// The rewrite engine: a fixed rule set (in priority order) plus a fuel
/// bound for normalization.
#[derive(Clone, Debug)]
pub struct Rewriter {
    rules: &'static [RuleId],
    fuel: usize,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter::new()
    }
}

impl Rewriter {
    pub fn new() -> Self {
        Rewriter {
            rules: &RuleId::BASE,
            fuel: DEFAULT_FUEL,
        }
    }

    /// Enable the refl-congruence collapse rules `RC_NU`/`RC_MU`/`RC_XI`.
    pub fn with_refl_congruence(mut self) -> Self {
        self.rules = &RuleId::ALL;
        self
    }

    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn rules(&self) -> &'static [RuleId] {
        self.rules
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    /// All single-step reducts, ordered by (pre-order position, rule
    /// priority).
    pub fn one_step_reducts(&self, p: &Path) -> Vec<(PathPos, RuleId, Path)> {
        let mut out = Vec::new();
        for pos in p.positions() {
            let sub = p.subpath(&pos).expect("position from enumeration");
            for &rule in self.rules {
                if let Some(replacement) = rewrite_root(sub, rule) {
                    let whole = p
                        .with_subpath(&pos, replacement)
                        .expect("position from enumeration");
                    out.push((pos.clone(), rule, whole));
                }
            }
        }
        out
    }

    /// The reduct the deterministic strategy picks: leftmost-outermost
    /// position, ties broken by rule priority.
    pub fn first_reduct(&self, p: &Path) -> Option<(PathPos, RuleId, Path)> {
        for pos in p.positions() {
            let sub = p.subpath(&pos).expect("position from enumeration");
            for &rule in self.rules {
                if let Some(replacement) = rewrite_root(sub, rule) {
                    let whole = p
                        .with_subpath(&pos, replacement)
                        .expect("position from enumeration");
                    return Some((pos, rule, whole));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        self.first_reduct(p).is_none()
    }

    /// Deterministic normalization. Errors with `FuelExhausted` rather than
    /// returning a partial result.
    pub fn normalize(&self, p: &Path) -> Result<Normalized, TrsError> {
        let mut current = p.clone();
        let mut steps = Vec::new();
        while let Some((pos, rule, next)) = self.first_reduct(&current) {
            if steps.len() >= self.fuel {
                return Err(TrsError::FuelExhausted { steps: steps.len() });
            }
            steps.push(StepWitness {
                source: current,
                target: next.clone(),
                pos,
                rule,
            });
            current = next;
        }
        Ok(Normalized {
            nf: current,
            trace: Trace {
                start: p.clone(),
                steps,
            },
        })
    }

    /// Decide rewrite equivalence by comparing normal forms. Paths with
    /// different endpoints are never equivalent.
    pub fn rweq(&self, p: &Path, q: &Path) -> Result<bool, TrsError> {
        let (ps, pt) = p.endpoints()?;
        let (qs, qt) = q.endpoints()?;
        if !alpha_eq(&ps, &qs) || !alpha_eq(&pt, &qt) {
            return Ok(false);
        }
        let np = self.normalize(p)?;
        let nq = self.normalize(q)?;
        Ok(np.nf.alpha_eq(&nq.nf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Name;

    fn n(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn v(s: &str) -> Expr {
        Expr::var(n(s))
    }

    fn c(s: &str) -> Expr {
        Expr::constant(n(s))
    }

    fn id_redex(arg: &str) -> Expr {
        Expr::app(Expr::lam(n("x"), v("x")), c(arg))
    }

    #[test]
    fn apply_sr_at_root() {
        let e = id_redex("a");
        let p = Path::symm(Path::refl(e.clone()));
        let got = apply_rule(&p, &PathPos::root(), RuleId::Sr).unwrap();
        assert_eq!(got, Path::refl(e));
    }

    #[test]
    fn apply_tt_at_root() {
        let r = Path::beta(id_redex("a"));
        let s = Path::refl(c("a"));
        let t = Path::refl(c("a"));
        let p = Path::trans(Path::trans(r.clone(), s.clone()), t.clone());
        let got = apply_rule(&p, &PathPos::root(), RuleId::Tt).unwrap();
        assert_eq!(got, Path::trans(r, Path::trans(s, t)));
    }

    #[test]
    fn apply_stss_at_root() {
        let r = Path::beta(id_redex("a"));
        let s = Path::refl(c("a"));
        let p = Path::symm(Path::trans(r.clone(), s.clone()));
        let got = apply_rule(&p, &PathPos::root(), RuleId::Stss).unwrap();
        assert_eq!(got, Path::trans(Path::symm(s), Path::symm(r)));
    }

    #[test]
    fn apply_tc_mu_at_root() {
        let m = Expr::lam(n("x"), v("x"));
        let p0 = Path::refl(c("a"));
        let q0 = Path::refl(c("a"));
        let p = Path::mu_r(m.clone(), Path::trans(p0.clone(), q0.clone()));
        let got = apply_rule(&p, &PathPos::root(), RuleId::TcMu).unwrap();
        assert_eq!(
            got,
            Path::trans(Path::mu_r(m.clone(), p0), Path::mu_r(m, q0))
        );
    }

    #[test]
    fn apply_rule_reports_no_match_and_bad_position() {
        let p = Path::refl(c("a"));
        assert_eq!(
            apply_rule(&p, &PathPos::root(), RuleId::Ss).unwrap_err(),
            TrsError::NoMatch
        );
        assert_eq!(
            apply_rule(&p, &PathPos(vec![2]), RuleId::Ss).unwrap_err(),
            TrsError::InvalidPosition
        );
    }

    #[test]
    fn tr_requires_alpha_equal_copies() {
        let rw = Rewriter::new();
        // trans(refl(λx.x), symm(refl(λy.y))): the two sides are α-copies
        let p = Path::trans(
            Path::refl(Expr::lam(n("x"), v("x"))),
            Path::symm(Path::refl(Expr::lam(n("y"), v("y")))),
        );
        p.validate().unwrap();
        let reducts = rw.one_step_reducts(&p);
        assert!(reducts.iter().any(|(pos, rule, _)| *rule == RuleId::Tr && pos.0.is_empty()));

        // structurally different paths with equal endpoints do not match TR
        let q = Path::trans(
            Path::refl(c("a")),
            Path::symm(Path::trans(Path::refl(c("a")), Path::refl(c("a")))),
        );
        q.validate().unwrap();
        assert!(!rw
            .one_step_reducts(&q)
            .iter()
            .any(|(pos, rule, _)| *rule == RuleId::Tr && pos.0.is_empty()));
    }

    #[test]
    fn reducts_of_normal_form_are_empty() {
        let rw = Rewriter::new();
        assert!(rw.one_step_reducts(&Path::refl(c("a"))).is_empty());
    }

    #[test]
    fn reducts_of_double_symm() {
        let rw = Rewriter::new();
        let b = Path::beta(id_redex("a"));
        let p = Path::symm(Path::symm(b.clone()));
        let got = rw.one_step_reducts(&p);
        assert_eq!(got, vec![(PathPos::root(), RuleId::Ss, b)]);
    }

    // Oracle for the reduct enumeration on one fixed instance: every
    // (position, rule) pair checked by hand against the rule table.
    #[test]
    fn reducts_of_trans_refl_symm_refl() {
        let rw = Rewriter::new();
        let p = Path::trans(Path::refl(c("a")), Path::symm(Path::refl(c("a"))));
        p.validate().unwrap();
        let got = rw.one_step_reducts(&p);
        let expected = vec![
            // TR at root: the right leg is symm of an α-copy of the left
            (
                PathPos::root(),
                RuleId::Tr,
                Path::refl(c("a")),
            ),
            // TLR at root
            (
                PathPos::root(),
                RuleId::Tlr,
                Path::symm(Path::refl(c("a"))),
            ),
            // SR under the right leg
            (
                PathPos(vec![1]),
                RuleId::Sr,
                Path::trans(Path::refl(c("a")), Path::refl(c("a"))),
            ),
        ];
        assert_eq!(got.len(), expected.len());
        for ((gp, gr, gq), (ep, er, eq)) in got.iter().zip(expected.iter()) {
            assert_eq!((gp, gr), (ep, er));
            assert!(gq.alpha_eq(eq));
        }
    }

    #[test]
    fn normalize_double_symm_is_one_ss_step() {
        let rw = Rewriter::new();
        let b = Path::beta(id_redex("a"));
        let norm = rw.normalize(&Path::symm(Path::symm(b.clone()))).unwrap();
        assert_eq!(norm.nf, b);
        assert_eq!(norm.trace.steps.len(), 1);
        assert_eq!(norm.trace.steps[0].rule, RuleId::Ss);
    }

    #[test]
    fn normalize_inverse_pair_is_one_tr_step() {
        let rw = Rewriter::new();
        let e = id_redex("a");
        let b = Path::beta(e.clone());
        let norm = rw.normalize(&Path::trans(b.clone(), Path::symm(b))).unwrap();
        assert_eq!(norm.nf, Path::refl(e));
        assert_eq!(norm.trace.steps.len(), 1);
        assert_eq!(norm.trace.steps[0].rule, RuleId::Tr);
    }

    // Exhaustive-search oracle: every reduction order reaches the same
    // normal form, and the deterministic engine agrees.
    #[test]
    fn normalize_symm_trans_refl_beta() {
        let rw = Rewriter::new();
        let e = id_redex("b");
        let p = Path::symm(Path::trans(Path::refl(e.clone()), Path::beta(e.clone())));
        p.validate().unwrap();

        fn all_normal_forms(rw: &Rewriter, p: &Path, out: &mut Vec<Path>) {
            let reducts = rw.one_step_reducts(p);
            if reducts.is_empty() {
                out.push(p.clone());
                return;
            }
            for (_, _, q) in reducts {
                all_normal_forms(rw, &q, out);
            }
        }
        let mut nfs = Vec::new();
        all_normal_forms(&rw, &p, &mut nfs);
        assert!(!nfs.is_empty());
        let expected = Path::symm(Path::beta(e));
        for nf in &nfs {
            assert!(nf.alpha_eq(&expected), "stray normal form {nf:?}");
        }

        let norm = rw.normalize(&p).unwrap();
        assert!(norm.nf.alpha_eq(&expected));
        assert_eq!(norm.trace.steps.len(), 3);
    }

    #[test]
    fn normalize_is_deterministic_and_idempotent() {
        let rw = Rewriter::new();
        let e = id_redex("a");
        let p = Path::symm(Path::trans(
            Path::trans(Path::beta(e.clone()), Path::refl(c("a"))),
            Path::symm(Path::beta(e)),
        ));
        p.validate().unwrap();
        let n1 = rw.normalize(&p).unwrap();
        let n2 = rw.normalize(&p).unwrap();
        assert_eq!(n1.trace.steps.len(), n2.trace.steps.len());
        for (a, b) in n1.trace.steps.iter().zip(n2.trace.steps.iter()) {
            assert_eq!((&a.pos, a.rule), (&b.pos, b.rule));
            assert_eq!(a.target, b.target);
        }
        let again = rw.normalize(&n1.nf).unwrap();
        assert!(again.trace.steps.is_empty());
        assert!(n1.trace.is_chained());
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        let rw = Rewriter::new().with_fuel(1);
        let b = Path::beta(id_redex("a"));
        let p = Path::symm(Path::symm(Path::symm(Path::symm(b))));
        assert_eq!(
            rw.normalize(&p).unwrap_err(),
            TrsError::FuelExhausted { steps: 1 }
        );
    }

    #[test]
    fn rweq_unit_examples() {
        let rw = Rewriter::new();
        let p = Path::beta(id_redex("a"));
        let with_unit = Path::trans(p.clone(), Path::refl(c("a")));
        assert!(rw.rweq(&with_unit, &p).unwrap());
        assert!(rw.rweq(&p, &p).unwrap());
    }

    #[test]
    fn rweq_distinguishes_reduction_routes() {
        let rw = Rewriter::new();
        let idx = Expr::lam(n("x"), v("x"));
        let idy = Expr::lam(n("y"), v("y"));
        let inner = Expr::app(idy.clone(), c("v"));
        let e = Expr::app(idx.clone(), inner.clone());

        let p1 = Path::trans(Path::beta(e.clone()), Path::beta(inner.clone()));
        let p2 = Path::trans(
            Path::mu_r(idx.clone(), Path::beta(inner)),
            Path::beta(Expr::app(idx, c("v"))),
        );
        p1.validate().unwrap();
        p2.validate().unwrap();
        let (s1, t1) = p1.endpoints().unwrap();
        let (s2, t2) = p2.endpoints().unwrap();
        assert!(alpha_eq(&s1, &s2) && alpha_eq(&t1, &t2));
        assert!(!rw.rweq(&p1, &p2).unwrap());
    }

    #[test]
    fn rweq_false_on_distinct_endpoints() {
        let rw = Rewriter::new();
        assert!(!rw.rweq(&Path::refl(c("a")), &Path::refl(c("b"))).unwrap());
    }

    #[test]
    fn refl_congruence_rules_are_gated() {
        let p = Path::nu_l(Path::refl(c("a")), c("b"));
        p.validate().unwrap();
        let base = Rewriter::new();
        assert!(base.is_normal(&p));
        let rc = Rewriter::new().with_refl_congruence();
        let norm = rc.normalize(&p).unwrap();
        assert_eq!(norm.nf, Path::refl(Expr::app(c("a"), c("b"))));
        assert_eq!(norm.trace.steps.len(), 1);
        assert_eq!(norm.trace.steps[0].rule, RuleId::RcNu);
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in RuleId::ALL {
            assert_eq!(RuleId::from_name(rule.name()), Some(rule));
        }
        assert_eq!(RuleId::from_name("bogus"), None);
    }
}
