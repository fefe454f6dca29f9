//! The higher-cell tower: 3-cells over derivations, n-cells for n ≥ 4,
//! canonicity, derived contractibility, and the pentagon/triangle/interchange
//! coherences.
//!
//! Meta-step boundaries are computed on demand from the payloads, never
//! stored, so a malformed certificate cannot claim false boundaries.

use thiserror::Error;

use crate::derivation::{
    gamma, hcomp2, verify, whisker2, witness2, Derivation, DerivationError, Side, WitnessKind,
};
use crate::path::{Path, PathError};
use crate::trs::{Rewriter, StepWitness, TrsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error("cells are not parallel")]
    NotParallel,
    #[error("composition does not chain at {at:?}")]
    BadChain { at: Vec<usize> },
    #[error("boundary mismatch: {0}")]
    BadBoundary(String),
    #[error("ill-formed cell: {0}")]
    IllFormed(String),
    #[error("paths are not rewrite-equivalent")]
    NotEquivalent,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Trs(#[from] TrsError),
}

/// Primitive generators of 3-cells between parallel derivations: the
/// groupoid laws for vertical composition, step coherence, canonicity, the
/// higher coherences, and whisker/horizontal-composition agreement.
#[derive(Clone, Debug, PartialEq)]
pub enum MetaStep3 {
    VCompReflRight(Derivation),
    VCompReflLeft(Derivation),
    VCompAssoc(Derivation, Derivation, Derivation),
    InvInv(Derivation),
    VCompInvRight(Derivation),
    VCompInvLeft(Derivation),
    StepEq(StepWitness, StepWitness),
    Can(Derivation),
    Pentagon(Path, Path, Path, Path),
    Triangle(Path, Path),
    Interchange(Derivation, Derivation),
    WhiskerL(Path, Derivation),
    WhiskerR(Derivation, Path),
}

/// A 3-cell between parallel derivations.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell3 {
    Refl(Derivation),
    Step(MetaStep3),
    Inv(Box<Cell3>),
    Comp(Box<Cell3>, Box<Cell3>),
}

impl Cell3 {
    pub fn inv(c: Cell3) -> Cell3 {
        Cell3::Inv(Box::new(c))
    }

    pub fn comp(a: Cell3, b: Cell3) -> Cell3 {
        Cell3::Comp(Box::new(a), Box::new(b))
    }

    pub fn alpha_eq(&self, other: &Cell3) -> bool {
        match (self, other) {
            (Cell3::Refl(a), Cell3::Refl(b)) => a.alpha_eq(b),
            (Cell3::Step(a), Cell3::Step(b)) => ms3_alpha_eq(a, b),
            (Cell3::Inv(a), Cell3::Inv(b)) => a.alpha_eq(b),
            (Cell3::Comp(a1, a2), Cell3::Comp(b1, b2)) => a1.alpha_eq(b1) && a2.alpha_eq(b2),
            _ => false,
        }
    }
}

fn ms3_alpha_eq(a: &MetaStep3, b: &MetaStep3) -> bool {
    use MetaStep3::*;
    match (a, b) {
        (VCompReflRight(x), VCompReflRight(y))
        | (VCompReflLeft(x), VCompReflLeft(y))
        | (InvInv(x), InvInv(y))
        | (VCompInvRight(x), VCompInvRight(y))
        | (VCompInvLeft(x), VCompInvLeft(y))
        | (Can(x), Can(y)) => x.alpha_eq(y),
        (VCompAssoc(x1, x2, x3), VCompAssoc(y1, y2, y3)) => {
            x1.alpha_eq(y1) && x2.alpha_eq(y2) && x3.alpha_eq(y3)
        }
        (StepEq(x1, x2), StepEq(y1, y2)) => x1 == y1 && x2 == y2,
        (Pentagon(f1, g1, h1, k1), Pentagon(f2, g2, h2, k2)) => {
            f1.alpha_eq(f2) && g1.alpha_eq(g2) && h1.alpha_eq(h2) && k1.alpha_eq(k2)
        }
        (Triangle(f1, g1), Triangle(f2, g2)) => f1.alpha_eq(f2) && g1.alpha_eq(g2),
        (Interchange(x1, x2), Interchange(y1, y2)) => x1.alpha_eq(y1) && x2.alpha_eq(y2),
        (WhiskerL(p1, d1), WhiskerL(p2, d2)) => p1.alpha_eq(p2) && d1.alpha_eq(d2),
        (WhiskerR(d1, p1), WhiskerR(d2, p2)) => p1.alpha_eq(p2) && d1.alpha_eq(d2),
        _ => false,
    }
}

fn assoc2(p: &Path, q: &Path, r: &Path) -> Result<Derivation, DerivationError> {
    witness2(WitnessKind::Assoc, &[p.clone(), q.clone(), r.clone()])
}

/// The left side of the pentagon: two associators in sequence.
fn pentagon_left(f: &Path, g: &Path, h: &Path, k: &Path) -> Result<Derivation, TowerError> {
    let fg = Path::trans(f.clone(), g.clone());
    let hk = Path::trans(h.clone(), k.clone());
    let first = assoc2(&fg, h, k)?;
    let second = assoc2(f, g, &hk)?;
    Ok(Derivation::comp(first, second))
}

/// The right side of the pentagon: whiskered associators around the middle.
fn pentagon_right(f: &Path, g: &Path, h: &Path, k: &Path) -> Result<Derivation, TowerError> {
    let gh = Path::trans(g.clone(), h.clone());
    let first = whisker2(Side::Right, k, &assoc2(f, g, h)?)?;
    let second = assoc2(f, &gh, k)?;
    let third = whisker2(Side::Left, f, &assoc2(g, h, k)?)?;
    Ok(Derivation::comp(Derivation::comp(first, second), third))
}

fn triangle_left(f: &Path, g: &Path) -> Result<Derivation, TowerError> {
    let mid = f.target()?;
    let unit = Path::refl(mid);
    let first = assoc2(f, &unit, g)?;
    let lunit_g = witness2(WitnessKind::LUnit, &[g.clone()])?;
    let second = whisker2(Side::Left, f, &lunit_g)?;
    Ok(Derivation::comp(first, second))
}

fn triangle_right(f: &Path, g: &Path) -> Result<Derivation, TowerError> {
    let runit_f = witness2(WitnessKind::RUnit, &[f.clone()])?;
    Ok(whisker2(Side::Right, g, &runit_f)?)
}

/// Boundary pair of a primitive meta-step, computed from its payload.
pub fn ms3_boundary(
    rw: &Rewriter,
    m: &MetaStep3,
) -> Result<(Derivation, Derivation), TowerError> {
    match m {
        MetaStep3::VCompReflRight(d) => Ok((
            Derivation::comp(d.clone(), Derivation::Refl(d.tgt().clone())),
            d.clone(),
        )),
        MetaStep3::VCompReflLeft(d) => Ok((
            Derivation::comp(Derivation::Refl(d.src().clone()), d.clone()),
            d.clone(),
        )),
        MetaStep3::VCompAssoc(d1, d2, d3) => {
            if !d1.tgt().alpha_eq(d2.src()) || !d2.tgt().alpha_eq(d3.src()) {
                return Err(TowerError::IllFormed(
                    "associativity arguments do not chain".to_string(),
                ));
            }
            Ok((
                Derivation::comp(Derivation::comp(d1.clone(), d2.clone()), d3.clone()),
                Derivation::comp(d1.clone(), Derivation::comp(d2.clone(), d3.clone())),
            ))
        }
        MetaStep3::InvInv(d) => Ok((
            Derivation::inv(Derivation::inv(d.clone())),
            d.clone(),
        )),
        MetaStep3::VCompInvRight(d) => Ok((
            Derivation::comp(d.clone(), Derivation::inv(d.clone())),
            Derivation::Refl(d.src().clone()),
        )),
        MetaStep3::VCompInvLeft(d) => Ok((
            Derivation::comp(Derivation::inv(d.clone()), d.clone()),
            Derivation::Refl(d.tgt().clone()),
        )),
        MetaStep3::StepEq(s1, s2) => {
            if s1 != s2 {
                // step equality is keyed on boundaries only
                return Err(TowerError::BadBoundary(
                    "step_eq requires steps with equal boundaries".to_string(),
                ));
            }
            Ok((
                Derivation::Step(s1.clone()),
                Derivation::Step(s2.clone()),
            ))
        }
        MetaStep3::Can(d) => {
            let canonical = gamma(rw, d.src(), d.tgt()).map_err(|e| match e {
                DerivationError::NotEquivalent => TowerError::NotEquivalent,
                other => TowerError::Derivation(other),
            })?;
            Ok((d.clone(), canonical))
        }
        MetaStep3::Pentagon(f, g, h, k) => {
            Ok((pentagon_left(f, g, h, k)?, pentagon_right(f, g, h, k)?))
        }
        MetaStep3::Triangle(f, g) => Ok((triangle_left(f, g)?, triangle_right(f, g)?)),
        MetaStep3::Interchange(alpha, beta) => {
            let lhs = hcomp2(alpha, beta)?;
            let rhs = Derivation::comp(
                whisker2(Side::Left, alpha.src(), beta)?,
                whisker2(Side::Right, beta.tgt(), alpha)?,
            );
            Ok((lhs, rhs))
        }
        // whiskering agrees with horizontal composition by an identity
        MetaStep3::WhiskerL(h, d) => Ok((
            whisker2(Side::Left, h, d)?,
            hcomp2(&Derivation::Refl(h.clone()), d)?,
        )),
        MetaStep3::WhiskerR(d, g) => Ok((
            whisker2(Side::Right, g, d)?,
            hcomp2(d, &Derivation::Refl(g.clone()))?,
        )),
    }
}

/// Boundary pair of a 3-cell.
pub fn c3_boundary(rw: &Rewriter, c: &Cell3) -> Result<(Derivation, Derivation), TowerError> {
    match c {
        Cell3::Refl(d) => Ok((d.clone(), d.clone())),
        Cell3::Step(m) => ms3_boundary(rw, m),
        Cell3::Inv(inner) => {
            let (l, r) = c3_boundary(rw, inner)?;
            Ok((r, l))
        }
        Cell3::Comp(a, b) => {
            let (l, _) = c3_boundary(rw, a)?;
            let (_, r) = c3_boundary(rw, b)?;
            Ok((l, r))
        }
    }
}

/// Verify a 3-cell: every embedded boundary re-computes, compositions chain,
/// boundary derivations verify and are parallel.
pub fn verify3(rw: &Rewriter, c: &Cell3) -> Result<(), TowerError> {
    fn go(rw: &Rewriter, c: &Cell3, here: &mut Vec<usize>) -> Result<(Derivation, Derivation), TowerError> {
        match c {
            Cell3::Refl(d) => {
                verify(d)?;
                Ok((d.clone(), d.clone()))
            }
            Cell3::Step(m) => {
                let (l, r) = ms3_boundary(rw, m)?;
                verify(&l)?;
                verify(&r)?;
                if !l.parallel(&r) {
                    return Err(TowerError::BadBoundary(format!(
                        "meta-step boundaries not parallel at {here:?}"
                    )));
                }
                Ok((l, r))
            }
            Cell3::Inv(inner) => {
                here.push(0);
                let (l, r) = go(rw, inner, here)?;
                here.pop();
                Ok((r, l))
            }
            Cell3::Comp(a, b) => {
                here.push(0);
                let (la, ra) = go(rw, a, here)?;
                here.pop();
                here.push(1);
                let (lb, rb) = go(rw, b, here)?;
                here.pop();
                if !ra.alpha_eq(&lb) {
                    return Err(TowerError::BadChain { at: here.clone() });
                }
                Ok((la, rb))
            }
        }
    }
    let (l, r) = go(rw, c, &mut Vec::new())?;
    if !l.parallel(&r) {
        return Err(TowerError::BadBoundary(
            "cell boundaries are not parallel".to_string(),
        ));
    }
    Ok(())
}

/// Contractibility at level 3: connect parallel derivations through their
/// canonical derivation.
pub fn chi3(d1: &Derivation, d2: &Derivation) -> Result<Cell3, TowerError> {
    if !d1.parallel(d2) {
        return Err(TowerError::NotParallel);
    }
    Ok(Cell3::comp(
        Cell3::Step(MetaStep3::Can(d1.clone())),
        Cell3::inv(Cell3::Step(MetaStep3::Can(d2.clone()))),
    ))
}

/// Groupoid-law 3-cells over derivations.
pub fn witness3(kind: WitnessKind, args: &[Derivation]) -> Result<Cell3, TowerError> {
    let expect = if kind == WitnessKind::Assoc { 3 } else { 1 };
    if args.len() != expect {
        return Err(TowerError::IllFormed(format!(
            "{} expects {} derivation(s), got {}",
            kind.name(),
            expect,
            args.len()
        )));
    }
    let m = match kind {
        WitnessKind::Assoc => {
            MetaStep3::VCompAssoc(args[0].clone(), args[1].clone(), args[2].clone())
        }
        WitnessKind::LUnit => MetaStep3::VCompReflLeft(args[0].clone()),
        WitnessKind::RUnit => MetaStep3::VCompReflRight(args[0].clone()),
        WitnessKind::LInv => MetaStep3::VCompInvLeft(args[0].clone()),
        WitnessKind::RInv => MetaStep3::VCompInvRight(args[0].clone()),
        WitnessKind::InvInv => MetaStep3::InvInv(args[0].clone()),
    };
    Ok(Cell3::Step(m))
}

/// The pentagon 3-cell over four chained paths.
pub fn coherence3_pentagon(
    rw: &Rewriter,
    f: &Path,
    g: &Path,
    h: &Path,
    k: &Path,
) -> Result<Cell3, TowerError> {
    let m = MetaStep3::Pentagon(f.clone(), g.clone(), h.clone(), k.clone());
    ms3_boundary(rw, &m)?;
    Ok(Cell3::Step(m))
}

/// The triangle 3-cell over two paths through a shared endpoint.
pub fn coherence3_triangle(rw: &Rewriter, f: &Path, g: &Path) -> Result<Cell3, TowerError> {
    let m = MetaStep3::Triangle(f.clone(), g.clone());
    ms3_boundary(rw, &m)?;
    Ok(Cell3::Step(m))
}

/// The interchange 3-cell over horizontally composable derivations.
pub fn coherence3_interchange(
    rw: &Rewriter,
    alpha: &Derivation,
    beta: &Derivation,
) -> Result<Cell3, TowerError> {
    let m = MetaStep3::Interchange(alpha.clone(), beta.clone());
    ms3_boundary(rw, &m)?;
    Ok(Cell3::Step(m))
}

// ---------------------------------------------------------------------------
// Cells at dimension >= 4: one dimension-indexed representation.
// ---------------------------------------------------------------------------

/// A cell at any implemented dimension ≥ 2, for uniform payloads and
/// boundaries in the higher tower.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCell {
    Two(Derivation),
    Three(Cell3),
    Higher(CellN),
}

impl AnyCell {
    pub fn dim(&self) -> u32 {
        match self {
            AnyCell::Two(_) => 2,
            AnyCell::Three(_) => 3,
            AnyCell::Higher(c) => c.dim,
        }
    }

    pub fn alpha_eq(&self, other: &AnyCell) -> bool {
        match (self, other) {
            (AnyCell::Two(a), AnyCell::Two(b)) => a.alpha_eq(b),
            (AnyCell::Three(a), AnyCell::Three(b)) => a.alpha_eq(b),
            (AnyCell::Higher(a), AnyCell::Higher(b)) => a.alpha_eq(b),
            _ => false,
        }
    }
}

/// Meta-step generators at dimension n ≥ 4: groupoid laws, step coherence,
/// and canonicity, each with (n−1)-cell payloads. The pentagon, triangle,
/// and interchange generators live only at level 3.
#[derive(Clone, Debug, PartialEq)]
pub enum MetaStepN {
    VCompReflRight(AnyCell),
    VCompReflLeft(AnyCell),
    VCompAssoc(AnyCell, AnyCell, AnyCell),
    InvInv(AnyCell),
    VCompInvRight(AnyCell),
    VCompInvLeft(AnyCell),
    StepEq(AnyCell, AnyCell),
    Can(AnyCell),
}

impl MetaStepN {
    fn alpha_eq(&self, other: &MetaStepN) -> bool {
        use MetaStepN::*;
        match (self, other) {
            (VCompReflRight(x), VCompReflRight(y))
            | (VCompReflLeft(x), VCompReflLeft(y))
            | (InvInv(x), InvInv(y))
            | (VCompInvRight(x), VCompInvRight(y))
            | (VCompInvLeft(x), VCompInvLeft(y))
            | (Can(x), Can(y)) => x.alpha_eq(y),
            (VCompAssoc(x1, x2, x3), VCompAssoc(y1, y2, y3)) => {
                x1.alpha_eq(y1) && x2.alpha_eq(y2) && x3.alpha_eq(y3)
            }
            (StepEq(x1, x2), StepEq(y1, y2)) => x1.alpha_eq(y1) && x2.alpha_eq(y2),
            _ => false,
        }
    }
}

/// A cell at an explicit dimension n ≥ 4, with boundaries one dimension
/// down.
#[derive(Clone, Debug, PartialEq)]
pub struct CellN {
    pub dim: u32,
    pub node: Box<CellNode>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellNode {
    Refl(AnyCell),
    Step(MetaStepN),
    Inv(CellN),
    Comp(CellN, CellN),
}

impl CellN {
    pub fn new(dim: u32, node: CellNode) -> CellN {
        CellN {
            dim,
            node: Box::new(node),
        }
    }

    pub fn alpha_eq(&self, other: &CellN) -> bool {
        self.dim == other.dim
            && match (&*self.node, &*other.node) {
                (CellNode::Refl(a), CellNode::Refl(b)) => a.alpha_eq(b),
                (CellNode::Step(a), CellNode::Step(b)) => a.alpha_eq(b),
                (CellNode::Inv(a), CellNode::Inv(b)) => a.alpha_eq(b),
                (CellNode::Comp(a1, a2), CellNode::Comp(b1, b2)) => {
                    a1.alpha_eq(b1) && a2.alpha_eq(b2)
                }
                _ => false,
            }
    }
}

/// Boundary of a cell at dimension ≥ 3: a pair of cells one dimension down.
pub fn cell_boundary(rw: &Rewriter, c: &AnyCell) -> Result<(AnyCell, AnyCell), TowerError> {
    match c {
        AnyCell::Two(_) => Err(TowerError::IllFormed(
            "boundary of a 2-cell is a path pair, not a cell pair".to_string(),
        )),
        AnyCell::Three(c3) => {
            let (l, r) = c3_boundary(rw, c3)?;
            Ok((AnyCell::Two(l), AnyCell::Two(r)))
        }
        AnyCell::Higher(cn) => cn_boundary(rw, cn),
    }
}

/// Are two cells parallel (same dimension, same boundaries)?
pub fn cells_parallel(rw: &Rewriter, a: &AnyCell, b: &AnyCell) -> Result<bool, TowerError> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    match (a, b) {
        (AnyCell::Two(x), AnyCell::Two(y)) => Ok(x.parallel(y)),
        _ => {
            let (al, ar) = cell_boundary(rw, a)?;
            let (bl, br) = cell_boundary(rw, b)?;
            Ok(al.alpha_eq(&bl) && ar.alpha_eq(&br))
        }
    }
}

/// Identity cell one dimension above `c`.
pub fn cell_id(c: &AnyCell) -> AnyCell {
    match c {
        AnyCell::Two(d) => AnyCell::Three(Cell3::Refl(d.clone())),
        AnyCell::Three(c3) => AnyCell::Higher(CellN::new(4, CellNode::Refl(AnyCell::Three(c3.clone())))),
        AnyCell::Higher(cn) => AnyCell::Higher(CellN::new(
            cn.dim + 1,
            CellNode::Refl(AnyCell::Higher(cn.clone())),
        )),
    }
}

/// Inverse at the cell's own dimension.
pub fn cell_inv(c: &AnyCell) -> AnyCell {
    match c {
        AnyCell::Two(d) => AnyCell::Two(Derivation::inv(d.clone())),
        AnyCell::Three(c3) => AnyCell::Three(Cell3::inv(c3.clone())),
        AnyCell::Higher(cn) => {
            AnyCell::Higher(CellN::new(cn.dim, CellNode::Inv(cn.clone())))
        }
    }
}

/// Composition at the cell's own dimension. The dimensions must agree.
pub fn cell_comp(a: &AnyCell, b: &AnyCell) -> Result<AnyCell, TowerError> {
    match (a, b) {
        (AnyCell::Two(x), AnyCell::Two(y)) => {
            Ok(AnyCell::Two(Derivation::comp(x.clone(), y.clone())))
        }
        (AnyCell::Three(x), AnyCell::Three(y)) => {
            Ok(AnyCell::Three(Cell3::comp(x.clone(), y.clone())))
        }
        (AnyCell::Higher(x), AnyCell::Higher(y)) if x.dim == y.dim => Ok(AnyCell::Higher(
            CellN::new(x.dim, CellNode::Comp(x.clone(), y.clone())),
        )),
        _ => Err(TowerError::IllFormed(
            "composition of cells at different dimensions".to_string(),
        )),
    }
}

/// The canonical cell one dimension above a parallel pair: the χ
/// construction, recursing down to the level-3 canonicity axiom.
pub fn chi_cell(rw: &Rewriter, a: &AnyCell, b: &AnyCell) -> Result<AnyCell, TowerError> {
    if !cells_parallel(rw, a, b)? {
        return Err(TowerError::NotParallel);
    }
    match (a, b) {
        (AnyCell::Two(d1), AnyCell::Two(d2)) => Ok(AnyCell::Three(chi3(d1, d2)?)),
        _ => {
            let n = a.dim() + 1;
            Ok(AnyCell::Higher(CellN::new(
                n,
                CellNode::Comp(
                    CellN::new(n, CellNode::Step(MetaStepN::Can(a.clone()))),
                    CellN::new(
                        n,
                        CellNode::Inv(CellN::new(n, CellNode::Step(MetaStepN::Can(b.clone())))),
                    ),
                ),
            )))
        }
    }
}

/// Contractibility at dimension n ≥ 4 over parallel (n−1)-cells.
pub fn chi_n(rw: &Rewriter, n: u32, c1: &AnyCell, c2: &AnyCell) -> Result<CellN, TowerError> {
    if n < 4 {
        return Err(TowerError::IllFormed(format!(
            "chi_n is for dimension >= 4, got {n}"
        )));
    }
    if c1.dim() != n - 1 || c2.dim() != n - 1 {
        return Err(TowerError::IllFormed(format!(
            "chi_n at dimension {n} needs payloads at dimension {}",
            n - 1
        )));
    }
    if !cells_parallel(rw, c1, c2)? {
        return Err(TowerError::NotParallel);
    }
    Ok(CellN::new(
        n,
        CellNode::Comp(
            CellN::new(n, CellNode::Step(MetaStepN::Can(c1.clone()))),
            CellN::new(
                n,
                CellNode::Inv(CellN::new(n, CellNode::Step(MetaStepN::Can(c2.clone())))),
            ),
        ),
    ))
}

/// Boundary of a meta-step at dimension `n`, computed from the payload.
fn msn_boundary(rw: &Rewriter, m: &MetaStepN, n: u32) -> Result<(AnyCell, AnyCell), TowerError> {
    let payload_dim = n - 1;
    let check_dim = |c: &AnyCell| -> Result<(), TowerError> {
        if c.dim() != payload_dim {
            Err(TowerError::IllFormed(format!(
                "meta-step at dimension {n} carries a dimension-{} payload",
                c.dim()
            )))
        } else {
            Ok(())
        }
    };
    match m {
        MetaStepN::VCompReflRight(c) => {
            check_dim(c)?;
            let (_, tgt) = cell_boundary(rw, c)?;
            Ok((cell_comp(c, &cell_id(&tgt))?, c.clone()))
        }
        MetaStepN::VCompReflLeft(c) => {
            check_dim(c)?;
            let (src, _) = cell_boundary(rw, c)?;
            Ok((cell_comp(&cell_id(&src), c)?, c.clone()))
        }
        MetaStepN::VCompAssoc(c1, c2, c3) => {
            check_dim(c1)?;
            check_dim(c2)?;
            check_dim(c3)?;
            let (_, t1) = cell_boundary(rw, c1)?;
            let (s2, t2) = cell_boundary(rw, c2)?;
            let (s3, _) = cell_boundary(rw, c3)?;
            if !t1.alpha_eq(&s2) || !t2.alpha_eq(&s3) {
                return Err(TowerError::IllFormed(
                    "associativity payloads do not chain".to_string(),
                ));
            }
            Ok((
                cell_comp(&cell_comp(c1, c2)?, c3)?,
                cell_comp(c1, &cell_comp(c2, c3)?)?,
            ))
        }
        MetaStepN::InvInv(c) => {
            check_dim(c)?;
            Ok((cell_inv(&cell_inv(c)), c.clone()))
        }
        MetaStepN::VCompInvRight(c) => {
            check_dim(c)?;
            let (src, _) = cell_boundary(rw, c)?;
            Ok((cell_comp(c, &cell_inv(c))?, cell_id(&src)))
        }
        MetaStepN::VCompInvLeft(c) => {
            check_dim(c)?;
            let (_, tgt) = cell_boundary(rw, c)?;
            Ok((cell_comp(&cell_inv(c), c)?, cell_id(&tgt)))
        }
        MetaStepN::StepEq(a, b) => {
            check_dim(a)?;
            check_dim(b)?;
            let is_step = |c: &AnyCell| match c {
                AnyCell::Three(Cell3::Step(_)) => true,
                AnyCell::Higher(cn) => matches!(&*cn.node, CellNode::Step(_)),
                _ => false,
            };
            if !is_step(a) || !is_step(b) {
                return Err(TowerError::IllFormed(
                    "step_eq payloads must be primitive steps".to_string(),
                ));
            }
            if !cells_parallel(rw, a, b)? {
                return Err(TowerError::BadBoundary(
                    "step_eq requires steps with equal boundaries".to_string(),
                ));
            }
            Ok((a.clone(), b.clone()))
        }
        MetaStepN::Can(c) => {
            check_dim(c)?;
            let (src, tgt) = cell_boundary(rw, c)?;
            let canonical = chi_cell(rw, &src, &tgt)?;
            Ok((c.clone(), canonical))
        }
    }
}

/// Boundary pair of an n-cell (n ≥ 4).
pub fn cn_boundary(rw: &Rewriter, c: &CellN) -> Result<(AnyCell, AnyCell), TowerError> {
    if c.dim < 4 {
        return Err(TowerError::IllFormed(format!(
            "CellN dimension must be >= 4, got {}",
            c.dim
        )));
    }
    match &*c.node {
        CellNode::Refl(lower) => {
            if lower.dim() != c.dim - 1 {
                return Err(TowerError::IllFormed(format!(
                    "identity at dimension {} over a dimension-{} cell",
                    c.dim,
                    lower.dim()
                )));
            }
            Ok((lower.clone(), lower.clone()))
        }
        CellNode::Step(m) => msn_boundary(rw, m, c.dim),
        CellNode::Inv(inner) => {
            if inner.dim != c.dim {
                return Err(TowerError::IllFormed(
                    "inverse changes dimension".to_string(),
                ));
            }
            let (l, r) = cn_boundary(rw, inner)?;
            Ok((r, l))
        }
        CellNode::Comp(a, b) => {
            if a.dim != c.dim || b.dim != c.dim {
                return Err(TowerError::IllFormed(
                    "composition changes dimension".to_string(),
                ));
            }
            let (l, _) = cn_boundary(rw, a)?;
            let (_, r) = cn_boundary(rw, b)?;
            Ok((l, r))
        }
    }
}

/// Verify a cell at any implemented dimension.
pub fn verify_any(rw: &Rewriter, c: &AnyCell) -> Result<(), TowerError> {
    match c {
        AnyCell::Two(d) => {
            verify(d)?;
            Ok(())
        }
        AnyCell::Three(c3) => verify3(rw, c3),
        AnyCell::Higher(cn) => verify_n(rw, cn),
    }
}

/// Verify an n-cell (n ≥ 4): chaining, payload dimensions, payload cells,
/// and parallel boundaries.
pub fn verify_n(rw: &Rewriter, c: &CellN) -> Result<(), TowerError> {
    fn go(
        rw: &Rewriter,
        c: &CellN,
        here: &mut Vec<usize>,
    ) -> Result<(AnyCell, AnyCell), TowerError> {
        match &*c.node {
            CellNode::Refl(lower) => {
                verify_any(rw, lower)?;
                cn_boundary(rw, c)
            }
            CellNode::Step(m) => {
                for payload in msn_payloads(m) {
                    verify_any(rw, payload)?;
                }
                let (l, r) = msn_boundary(rw, m, c.dim)?;
                if !cells_parallel(rw, &l, &r)? {
                    return Err(TowerError::BadBoundary(format!(
                        "meta-step boundaries not parallel at {here:?}"
                    )));
                }
                Ok((l, r))
            }
            CellNode::Inv(inner) => {
                here.push(0);
                let (l, r) = go(rw, inner, here)?;
                here.pop();
                Ok((r, l))
            }
            CellNode::Comp(a, b) => {
                if a.dim != c.dim || b.dim != c.dim {
                    return Err(TowerError::IllFormed(
                        "composition changes dimension".to_string(),
                    ));
                }
                here.push(0);
                let (la, ra) = go(rw, a, here)?;
                here.pop();
                here.push(1);
                let (lb, rb) = go(rw, b, here)?;
                here.pop();
                if !ra.alpha_eq(&lb) {
                    return Err(TowerError::BadChain { at: here.clone() });
                }
                Ok((la, rb))
            }
        }
    }
    let (l, r) = go(rw, c, &mut Vec::new())?;
    if !cells_parallel(rw, &l, &r)? {
        return Err(TowerError::BadBoundary(
            "cell boundaries are not parallel".to_string(),
        ));
    }
    Ok(())
}

fn msn_payloads(m: &MetaStepN) -> Vec<&AnyCell> {
    match m {
        MetaStepN::VCompReflRight(c)
        | MetaStepN::VCompReflLeft(c)
        | MetaStepN::InvInv(c)
        | MetaStepN::VCompInvRight(c)
        | MetaStepN::VCompInvLeft(c)
        | MetaStepN::Can(c) => vec![c],
        MetaStepN::VCompAssoc(a, b, c) => vec![a, b, c],
        MetaStepN::StepEq(a, b) => vec![a, b],
    }
}

/// The globular identities at the cell's dimension: the two boundaries have
/// equal boundaries themselves.
pub fn globular_check(rw: &Rewriter, c: &AnyCell) -> bool {
    match c {
        AnyCell::Two(d) => {
            let (Ok((ss, st)), Ok((ts, tt))) = (d.src().endpoints(), d.tgt().endpoints()) else {
                return false;
            };
            crate::expr::alpha_eq(&ss, &ts) && crate::expr::alpha_eq(&st, &tt)
        }
        AnyCell::Three(c3) => match c3_boundary(rw, c3) {
            Ok((d1, d2)) => d1.parallel(&d2),
            Err(_) => false,
        },
        AnyCell::Higher(cn) => match cn_boundary(rw, cn) {
            Ok((x, y)) => cells_parallel(rw, &x, &y).unwrap_or(false),
            Err(_) => false,
        },
    }
}
