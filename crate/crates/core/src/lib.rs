//! Computational paths over untyped λ-terms, the LND-EQ-TRS rewrite engine
//! that identifies them, and the weak ω-groupoid witness tower built on top:
//! derivations (2-cells), meta-steps and higher cells, canonical derivations,
//! contractibility, and the pentagon/triangle/interchange coherences — all
//! with machine-checkable certificates.

pub mod cert;
pub mod confluence;
pub mod derivation;
pub mod expr;
pub mod path;
pub mod sexpr;
pub mod tower;
pub mod trs;

pub use expr::{alpha_eq, beta_contract, eta_contract, subst, Expr, ExprError, ExprPos, Name};
pub use path::{Path, PathError, PathPos};
pub use sexpr::{parse_expr, parse_input, parse_path, Input, SyntaxError};
pub use trs::{
    apply_rule, Normalized, Rewriter, RuleId, StepWitness, Trace, TrsError, DEFAULT_FUEL,
};
pub use derivation::{
    delta, from_trace, gamma, hcomp2, verify, whisker2, witness2, Derivation, DerivationError,
    Side, WitnessKind,
};
pub use tower::{
    c3_boundary, cell_boundary, cell_comp, cell_id, cell_inv, cells_parallel, chi3, chi_cell,
    chi_n, cn_boundary, coherence3_interchange, coherence3_pentagon, coherence3_triangle,
    globular_check, ms3_boundary, verify3, verify_any, verify_n, witness3, AnyCell, Cell3, CellN,
    CellNode, MetaStep3, MetaStepN, TowerError,
};
pub use cert::{trace_from_json, trace_to_json, CertError, Certificate};
pub use confluence::{
    bfs_rweq, corpus_confluence, enumerate_paths, gen_path, local_confluence,
    randomized_normalize, strategy_agreement, BfsOutcome, ConfluenceFailure, ConfluenceReport,
    CorpusReport, FailureReason, GenConfig, PathGen,
};
