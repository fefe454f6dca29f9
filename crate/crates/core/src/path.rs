//! Computational path terms: the 1-cells.
//!
//! A path records a sequence of definitional-equality steps between two
//! λ-terms: reflexivity, symmetry, transitivity, primitive β/η steps, and
//! congruence lifts under λ and the two application positions.

use std::fmt;

use thiserror::Error;

use crate::expr::{alpha_eq, beta_contract, eta_contract, DbExpr, Expr, Name};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("ill-formed path at {pos}: {reason}")]
    IllFormed { pos: PathPos, reason: IllFormedReason },
    #[error("invalid position")]
    InvalidPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllFormedReason {
    /// The target of the left leg of a `Trans` does not match the source of
    /// the right leg.
    EndpointMismatch,
    NotBetaRedex,
    NotEtaRedex,
}

impl fmt::Display for IllFormedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IllFormedReason::EndpointMismatch => f.write_str("endpoint mismatch"),
            IllFormedReason::NotBetaRedex => f.write_str("not a beta redex"),
            IllFormedReason::NotEtaRedex => f.write_str("not an eta redex"),
        }
    }
}

/// A path term. `NuL` is the function-position congruence (ν), `MuR` the
/// argument-position congruence (μ with a fixed applied term), `Xi` the
/// congruence under a λ-binder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Refl(Expr),
    Symm(Box<Path>),
    Trans(Box<Path>, Box<Path>),
    Beta(Expr),
    Eta(Expr),
    Xi(Name, Box<Path>),
    NuL(Box<Path>, Expr),
    MuR(Expr, Box<Path>),
}

/// A position in a [`Path`]: integer child indices in pre-order child order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PathPos(pub Vec<usize>);

impl PathPos {
    pub fn root() -> PathPos {
        PathPos(Vec::new())
    }

    pub fn child(&self, i: usize) -> PathPos {
        let mut v = self.0.clone();
        v.push(i);
        PathPos(v)
    }

    pub fn prepend(&self, i: usize) -> PathPos {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        PathPos(v)
    }
}

impl fmt::Display for PathPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Structural key for a path with embedded expressions in canonical de
/// Bruijn form; equality on keys is the path equality used by the rewrite
/// engine (structural on constructors, α on expressions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathKey {
    Refl(DbExpr),
    Symm(Box<PathKey>),
    Trans(Box<PathKey>, Box<PathKey>),
    Beta(DbExpr),
    Eta(DbExpr),
    Xi(Name, Box<PathKey>),
    NuL(Box<PathKey>, DbExpr),
    MuR(DbExpr, Box<PathKey>),
}

impl Path {
    pub fn refl(e: Expr) -> Path {
        Path::Refl(e)
    }

    pub fn symm(p: Path) -> Path {
        Path::Symm(Box::new(p))
    }

    pub fn trans(p: Path, q: Path) -> Path {
        Path::Trans(Box::new(p), Box::new(q))
    }

    pub fn beta(e: Expr) -> Path {
        Path::Beta(e)
    }

    pub fn eta(e: Expr) -> Path {
        Path::Eta(e)
    }

    pub fn xi(binder: Name, p: Path) -> Path {
        Path::Xi(binder, Box::new(p))
    }

    pub fn nu_l(p: Path, arg: Expr) -> Path {
        Path::NuL(Box::new(p), arg)
    }

    pub fn mu_r(fun: Expr, p: Path) -> Path {
        Path::MuR(fun, Box::new(p))
    }

    pub fn children(&self) -> Vec<&Path> {
        match self {
            Path::Refl(_) | Path::Beta(_) | Path::Eta(_) => Vec::new(),
            Path::Symm(p) | Path::Xi(_, p) | Path::NuL(p, _) | Path::MuR(_, p) => vec![p],
            Path::Trans(p, q) => vec![p, q],
        }
    }

    /// Nesting depth of path constructors; leaves have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn subpath(&self, pos: &PathPos) -> Result<&Path, PathError> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = *cur.children().get(i).ok_or(PathError::InvalidPosition)?;
        }
        Ok(cur)
    }

    /// Replace the subpath at `pos`, without revalidation.
    pub fn with_subpath(&self, pos: &PathPos, sub: Path) -> Result<Path, PathError> {
        fn go(p: &Path, steps: &[usize], sub: Path) -> Result<Path, PathError> {
            let Some((&head, rest)) = steps.split_first() else {
                return Ok(sub);
            };
            match (p, head) {
                (Path::Symm(q), 0) => Ok(Path::symm(go(q, rest, sub)?)),
                (Path::Trans(a, b), 0) => Ok(Path::trans(go(a, rest, sub)?, (**b).clone())),
                (Path::Trans(a, b), 1) => Ok(Path::trans((**a).clone(), go(b, rest, sub)?)),
                (Path::Xi(x, q), 0) => Ok(Path::xi(x.clone(), go(q, rest, sub)?)),
                (Path::NuL(q, n), 0) => Ok(Path::nu_l(go(q, rest, sub)?, n.clone())),
                (Path::MuR(m, q), 0) => Ok(Path::mu_r(m.clone(), go(q, rest, sub)?)),
                _ => Err(PathError::InvalidPosition),
            }
        }
        go(self, &pos.0, sub)
    }

    /// Replace the subpath at `pos` and revalidate the result.
    pub fn replace_at(&self, pos: &PathPos, sub: Path) -> Result<Path, PathError> {
        let replaced = self.with_subpath(pos, sub)?;
        replaced.validate()?;
        Ok(replaced)
    }

    /// Source and target terms. Errors carry the first violating position.
    pub fn endpoints(&self) -> Result<(Expr, Expr), PathError> {
        fn go(p: &Path, here: &mut Vec<usize>) -> Result<(Expr, Expr), PathError> {
            match p {
                Path::Refl(e) => Ok((e.clone(), e.clone())),
                Path::Symm(q) => {
                    here.push(0);
                    let (s, t) = go(q, here)?;
                    here.pop();
                    Ok((t, s))
                }
                Path::Trans(a, b) => {
                    here.push(0);
                    let (s1, t1) = go(a, here)?;
                    here.pop();
                    here.push(1);
                    let (s2, t2) = go(b, here)?;
                    here.pop();
                    if !alpha_eq(&t1, &s2) {
                        return Err(PathError::IllFormed {
                            pos: PathPos(here.clone()),
                            reason: IllFormedReason::EndpointMismatch,
                        });
                    }
                    Ok((s1, t2))
                }
                Path::Beta(e) => match beta_contract(e) {
                    Ok(t) => Ok((e.clone(), t)),
                    Err(_) => Err(PathError::IllFormed {
                        pos: PathPos(here.clone()),
                        reason: IllFormedReason::NotBetaRedex,
                    }),
                },
                Path::Eta(e) => match eta_contract(e) {
                    Ok(t) => Ok((e.clone(), t)),
                    Err(_) => Err(PathError::IllFormed {
                        pos: PathPos(here.clone()),
                        reason: IllFormedReason::NotEtaRedex,
                    }),
                },
                Path::Xi(x, q) => {
                    here.push(0);
                    let (s, t) = go(q, here)?;
                    here.pop();
                    Ok((Expr::lam(x.clone(), s), Expr::lam(x.clone(), t)))
                }
                Path::NuL(q, n) => {
                    here.push(0);
                    let (s, t) = go(q, here)?;
                    here.pop();
                    Ok((Expr::app(s, n.clone()), Expr::app(t, n.clone())))
                }
                Path::MuR(m, q) => {
                    here.push(0);
                    let (s, t) = go(q, here)?;
                    here.pop();
                    Ok((Expr::app(m.clone(), s), Expr::app(m.clone(), t)))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn source(&self) -> Result<Expr, PathError> {
        self.endpoints().map(|(s, _)| s)
    }

    pub fn target(&self) -> Result<Expr, PathError> {
        self.endpoints().map(|(_, t)| t)
    }

    pub fn validate(&self) -> Result<(), PathError> {
        self.endpoints().map(|_| ())
    }

    pub fn alpha_key(&self) -> PathKey {
        match self {
            Path::Refl(e) => PathKey::Refl(e.debruijn()),
            Path::Symm(p) => PathKey::Symm(Box::new(p.alpha_key())),
            Path::Trans(p, q) => {
                PathKey::Trans(Box::new(p.alpha_key()), Box::new(q.alpha_key()))
            }
            Path::Beta(e) => PathKey::Beta(e.debruijn()),
            Path::Eta(e) => PathKey::Eta(e.debruijn()),
            Path::Xi(x, p) => PathKey::Xi(x.clone(), Box::new(p.alpha_key())),
            Path::NuL(p, n) => PathKey::NuL(Box::new(p.alpha_key()), n.debruijn()),
            Path::MuR(m, p) => PathKey::MuR(m.debruijn(), Box::new(p.alpha_key())),
        }
    }

    /// Structural equality with embedded expressions compared up to α.
    pub fn alpha_eq(&self, other: &Path) -> bool {
        match (self, other) {
            (Path::Refl(a), Path::Refl(b))
            | (Path::Beta(a), Path::Beta(b))
            | (Path::Eta(a), Path::Eta(b)) => alpha_eq(a, b),
            (Path::Symm(a), Path::Symm(b)) => a.alpha_eq(b),
            (Path::Trans(a1, a2), Path::Trans(b1, b2)) => a1.alpha_eq(b1) && a2.alpha_eq(b2),
            (Path::Xi(x, a), Path::Xi(y, b)) => x == y && a.alpha_eq(b),
            (Path::NuL(a, n), Path::NuL(b, m)) => alpha_eq(n, m) && a.alpha_eq(b),
            (Path::MuR(n, a), Path::MuR(m, b)) => alpha_eq(n, m) && a.alpha_eq(b),
            _ => false,
        }
    }

    /// All positions in pre-order.
    pub fn positions(&self) -> Vec<PathPos> {
        fn go(p: &Path, here: &mut Vec<usize>, out: &mut Vec<PathPos>) {
            out.push(PathPos(here.clone()));
            for (i, c) in p.children().into_iter().enumerate() {
                here.push(i);
                go(c, here, out);
                here.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}
