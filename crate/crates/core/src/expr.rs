//! Untyped λ-terms with constants: the endpoints of computational paths.
//!
//! Terms are compared up to α-equivalence everywhere downstream; the
//! canonical form used for that comparison is a locally-nameless de Bruijn
//! conversion ([`Expr::debruijn`]).

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("invalid identifier {0:?}")]
    InvalidName(String),
    #[error("not a redex")]
    NotARedex,
    #[error("invalid position")]
    InvalidPosition,
}

/// A variable, constant, or binder name. Non-empty, `[A-Za-z][A-Za-z0-9_']*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(String);

impl Name {
    pub fn new(s: impl Into<String>) -> Result<Self, ExprError> {
        let s = s.into();
        let mut chars = s.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            }
            _ => false,
        };
        if ok {
            Ok(Name(s))
        } else {
            Err(ExprError::InvalidName(s))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// First name of the form `base0`, `base1`, ... not in `taken`.
    pub fn fresh(base: &Name, taken: &HashSet<Name>) -> Name {
        for k in 0u64.. {
            let candidate = Name(format!("{}{}", base.0, k));
            if !taken.contains(&candidate) {
                return candidate;
            }
        }
        unreachable!()
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An untyped λ-term with constants.
///
/// Structural equality (`==`) is syntactic; use [`alpha_eq`] for the
/// α-equivalence that the path machinery relies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(Name),
    Const(Name),
    Lam(Name, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(n: Name) -> Expr {
        Expr::Var(n)
    }

    pub fn constant(n: Name) -> Expr {
        Expr::Const(n)
    }

    pub fn lam(binder: Name, body: Expr) -> Expr {
        Expr::Lam(binder, Box::new(body))
    }

    pub fn app(fun: Expr, arg: Expr) -> Expr {
        Expr::App(Box::new(fun), Box::new(arg))
    }

    pub fn free_vars(&self) -> HashSet<Name> {
        fn go(e: &Expr, bound: &mut Vec<Name>, out: &mut HashSet<Name>) {
            match e {
                Expr::Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Expr::Const(_) => {}
                Expr::Lam(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Expr::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
            }
        }
        let mut out = HashSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Canonical locally-nameless form; equality on these is α-equivalence.
    pub fn debruijn(&self) -> DbExpr {
        fn go(e: &Expr, env: &mut Vec<Name>) -> DbExpr {
            match e {
                Expr::Var(x) => match env.iter().rev().position(|n| n == x) {
                    Some(i) => DbExpr::Bound(i as u32),
                    None => DbExpr::Free(x.clone()),
                },
                Expr::Const(c) => DbExpr::Const(c.clone()),
                Expr::Lam(x, b) => {
                    env.push(x.clone());
                    let body = go(b, env);
                    env.pop();
                    DbExpr::Lam(Box::new(body))
                }
                Expr::App(f, a) => DbExpr::App(Box::new(go(f, env)), Box::new(go(a, env))),
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn subterm(&self, pos: &ExprPos) -> Result<&Expr, ExprError> {
        let mut cur = self;
        for step in &pos.0 {
            cur = match (step, cur) {
                (ExprStep::Fun, Expr::App(f, _)) => f,
                (ExprStep::Arg, Expr::App(_, a)) => a,
                (ExprStep::Body, Expr::Lam(_, b)) => b,
                _ => return Err(ExprError::InvalidPosition),
            };
        }
        Ok(cur)
    }

    pub fn with_subterm(&self, pos: &ExprPos, sub: Expr) -> Result<Expr, ExprError> {
        fn go(e: &Expr, steps: &[ExprStep], sub: Expr) -> Result<Expr, ExprError> {
            let Some((head, rest)) = steps.split_first() else {
                return Ok(sub);
            };
            match (head, e) {
                (ExprStep::Fun, Expr::App(f, a)) => {
                    Ok(Expr::App(Box::new(go(f, rest, sub)?), a.clone()))
                }
                (ExprStep::Arg, Expr::App(f, a)) => {
                    Ok(Expr::App(f.clone(), Box::new(go(a, rest, sub)?)))
                }
                (ExprStep::Body, Expr::Lam(x, b)) => {
                    Ok(Expr::Lam(x.clone(), Box::new(go(b, rest, sub)?)))
                }
                _ => Err(ExprError::InvalidPosition),
            }
        }
        go(self, &pos.0, sub)
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Const(_) => 1,
            Expr::Lam(_, b) => 1 + b.depth(),
            Expr::App(f, a) => 1 + f.depth().max(a.depth()),
        }
    }

    pub fn is_beta_redex(&self) -> bool {
        matches!(self, Expr::App(f, _) if matches!(**f, Expr::Lam(_, _)))
    }

    pub fn is_eta_redex(&self) -> bool {
        eta_contract(self).is_ok()
    }
}

/// Canonical de Bruijn form of an [`Expr`]. Bound variables become indices,
/// free variables and constants keep their names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DbExpr {
    Bound(u32),
    Free(Name),
    Const(Name),
    Lam(Box<DbExpr>),
    App(Box<DbExpr>, Box<DbExpr>),
}

/// α-equivalence: `a` and `b` differ only in the choice of bound names.
pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    a.debruijn() == b.debruijn()
}

/// Capture-avoiding substitution of `value` for free occurrences of `var`.
///
/// The result is α-independent of bound-name choices in the inputs; binders
/// that would capture are renamed with a numeric suffix.
pub fn subst(body: &Expr, var: &Name, value: &Expr) -> Expr {
    match body {
        Expr::Var(x) if x == var => value.clone(),
        Expr::Var(_) | Expr::Const(_) => body.clone(),
        Expr::App(f, a) => Expr::app(subst(f, var, value), subst(a, var, value)),
        Expr::Lam(x, b) => {
            if x == var {
                body.clone()
            } else if b.free_vars().contains(var) && value.free_vars().contains(x) {
                let mut taken = value.free_vars();
                taken.extend(b.free_vars());
                let fresh = Name::fresh(x, &taken);
                let renamed = subst(b, x, &Expr::Var(fresh.clone()));
                Expr::Lam(fresh, Box::new(subst(&renamed, var, value)))
            } else {
                Expr::Lam(x.clone(), Box::new(subst(b, var, value)))
            }
        }
    }
}

/// Contract a top-level β-redex `(λx.M)N` to `M[N/x]`.
pub fn beta_contract(e: &Expr) -> Result<Expr, ExprError> {
    match e {
        Expr::App(f, a) => match &**f {
            Expr::Lam(x, body) => Ok(subst(body, x, a)),
            _ => Err(ExprError::NotARedex),
        },
        _ => Err(ExprError::NotARedex),
    }
}

/// Contract a top-level η-redex `λx.Mx` (with `x` not free in `M`) to `M`.
pub fn eta_contract(e: &Expr) -> Result<Expr, ExprError> {
    match e {
        Expr::Lam(x, body) => match &**body {
            Expr::App(f, a) => match &**a {
                Expr::Var(y) if y == x && !f.free_vars().contains(x) => Ok((**f).clone()),
                _ => Err(ExprError::NotARedex),
            },
            _ => Err(ExprError::NotARedex),
        },
        _ => Err(ExprError::NotARedex),
    }
}

/// One child selector in an expression position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExprStep {
    Fun,
    Arg,
    Body,
}

/// A position in an [`Expr`]: a sequence of child selectors, root-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExprPos(pub Vec<ExprStep>);

impl ExprPos {
    pub fn root() -> ExprPos {
        ExprPos(Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn v(s: &str) -> Expr {
        Expr::var(n(s))
    }

    fn c(s: &str) -> Expr {
        Expr::constant(n(s))
    }

    // Independent α-oracle for the tests: a second de Bruijn conversion that
    // shares no code with Expr::debruijn. Bound variables become negative
    // levels, free names are kept tagged.
    #[derive(Debug, PartialEq)]
    enum Canon {
        B(i64),
        F(String),
        C(String),
        L(Box<Canon>),
        A(Box<Canon>, Box<Canon>),
    }

    fn canon(e: &Expr) -> Canon {
        fn go(e: &Expr, env: &[Name], depth: i64) -> Canon {
            match e {
                Expr::Var(x) => match env.iter().rposition(|b| b == x) {
                    Some(level) => Canon::B(depth - 1 - level as i64),
                    None => Canon::F(x.as_str().to_string()),
                },
                Expr::Const(k) => Canon::C(k.as_str().to_string()),
                Expr::Lam(x, b) => {
                    let mut env2 = env.to_vec();
                    env2.push(x.clone());
                    Canon::L(Box::new(go(b, &env2, depth + 1)))
                }
                Expr::App(f, a) => {
                    Canon::A(Box::new(go(f, env, depth)), Box::new(go(a, env, depth)))
                }
            }
        }
        go(e, &[], 0)
    }

    fn oracle_alpha_eq(a: &Expr, b: &Expr) -> bool {
        canon(a) == canon(b)
    }

    #[test]
    fn name_rejects_degenerate_input() {
        assert!(Name::new("").is_err());
        assert!(Name::new("0x").is_err());
        assert!(Name::new("_x").is_err());
        assert!(Name::new("x").is_ok());
        assert!(Name::new("x0'_").is_ok());
    }

    #[test]
    fn subst_free_occurrence() {
        let body = Expr::app(v("y"), v("x"));
        assert_eq!(subst(&body, &n("x"), &c("v")), Expr::app(v("y"), c("v")));
    }

    #[test]
    fn subst_shadowed_binder() {
        let body = Expr::lam(n("x"), v("x"));
        assert_eq!(subst(&body, &n("x"), &c("v")), body);
    }

    #[test]
    fn subst_avoids_capture() {
        // Substituting y for x under a binder named y must rename the binder.
        let body = Expr::lam(n("y"), v("x"));
        let got = subst(&body, &n("x"), &v("y"));
        let expected = Expr::lam(n("z"), v("y"));
        assert!(oracle_alpha_eq(&got, &expected), "got {got:?}");
        assert!(alpha_eq(&got, &expected));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(&Expr::lam(n("x"), v("x")), &Expr::lam(n("y"), v("y"))));
        assert!(!alpha_eq(&v("x"), &v("y")));
        let a = Expr::lam(n("x"), Expr::lam(n("y"), v("x")));
        let b = Expr::lam(n("y"), Expr::lam(n("x"), v("y")));
        assert!(oracle_alpha_eq(&a, &b));
        assert!(alpha_eq(&a, &b));
        let twisted = Expr::lam(n("x"), Expr::lam(n("y"), v("y")));
        assert!(!alpha_eq(&a, &twisted));
    }

    #[test]
    fn beta_contract_examples() {
        let id = Expr::lam(n("x"), v("x"));
        assert_eq!(beta_contract(&Expr::app(id, c("v"))).unwrap(), c("v"));

        // (λy.yv)z -> zv
        let e = Expr::app(
            Expr::lam(n("y"), Expr::app(v("y"), c("v"))),
            c("z"),
        );
        assert_eq!(beta_contract(&e).unwrap(), Expr::app(c("z"), c("v")));

        assert_eq!(beta_contract(&c("v")), Err(ExprError::NotARedex));
    }

    #[test]
    fn eta_contract_examples() {
        // λw.zw -> z
        let e = Expr::lam(n("w"), Expr::app(c("z"), v("w")));
        assert_eq!(eta_contract(&e).unwrap(), c("z"));

        // x free in the function part: not a redex
        let bad = Expr::lam(n("x"), Expr::app(v("x"), v("x")));
        assert_eq!(eta_contract(&bad), Err(ExprError::NotARedex));

        let m = Expr::app(c("f"), c("y"));
        let e = Expr::lam(n("x"), Expr::app(m.clone(), v("x")));
        let got = eta_contract(&e).unwrap();
        assert!(!m.free_vars().contains(&n("x")));
        assert_eq!(got, m);
    }

    // Small deterministic generator for property tests.
    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|s| v(s)),
            prop_oneof![Just("a"), Just("b"), Just("f")].prop_map(|s| c(s)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (prop_oneof![Just("x"), Just("y"), Just("w")], inner.clone())
                    .prop_map(|(b, e)| Expr::lam(Name::new(b).unwrap(), e)),
                (inner.clone(), inner).prop_map(|(f, a)| Expr::app(f, a)),
            ]
        })
    }

    // Rename bound variables with fresh primes to make a distinct α-copy.
    fn alpha_rename(e: &Expr) -> Expr {
        match e {
            Expr::Var(_) | Expr::Const(_) => e.clone(),
            Expr::App(f, a) => Expr::app(alpha_rename(f), alpha_rename(a)),
            Expr::Lam(x, b) => {
                let fresh = Name::new(format!("{}'", x.as_str())).unwrap();
                let renamed = subst(b, x, &Expr::Var(fresh.clone()));
                Expr::lam(fresh, alpha_rename(&renamed))
            }
        }
    }

    fn positions(e: &Expr) -> Vec<ExprPos> {
        fn go(e: &Expr, here: &mut Vec<ExprStep>, out: &mut Vec<ExprPos>) {
            out.push(ExprPos(here.clone()));
            match e {
                Expr::Var(_) | Expr::Const(_) => {}
                Expr::Lam(_, b) => {
                    here.push(ExprStep::Body);
                    go(b, here, out);
                    here.pop();
                }
                Expr::App(f, a) => {
                    here.push(ExprStep::Fun);
                    go(f, here, out);
                    here.pop();
                    here.push(ExprStep::Arg);
                    go(a, here, out);
                    here.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(e, &mut Vec::new(), &mut out);
        out
    }

    proptest! {
        #[test]
        fn alpha_eq_is_reflexive_and_stable_under_renaming(e in arb_expr()) {
            prop_assert!(alpha_eq(&e, &e));
            let r = alpha_rename(&e);
            prop_assert!(alpha_eq(&e, &r));
            prop_assert!(oracle_alpha_eq(&e, &r));
        }

        #[test]
        fn alpha_eq_matches_oracle(a in arb_expr(), b in arb_expr()) {
            prop_assert_eq!(alpha_eq(&a, &b), oracle_alpha_eq(&a, &b));
        }

        #[test]
        fn subst_respects_alpha(m in arb_expr(), val in arb_expr()) {
            let m2 = alpha_rename(&m);
            let x = n("x");
            prop_assert!(alpha_eq(&subst(&m, &x, &val), &subst(&m2, &x, &val)));
        }

        #[test]
        fn beta_contract_is_subst(body in arb_expr(), arg in arb_expr()) {
            let redex = Expr::app(Expr::lam(n("x"), body.clone()), arg.clone());
            let got = beta_contract(&redex).unwrap();
            prop_assert!(alpha_eq(&got, &subst(&body, &n("x"), &arg)));
        }

        #[test]
        fn position_round_trip(e in arb_expr()) {
            for pos in positions(&e) {
                let sub = e.subterm(&pos).unwrap().clone();
                let back = e.with_subterm(&pos, sub).unwrap();
                prop_assert!(alpha_eq(&e, &back));
            }
        }
    }
}
