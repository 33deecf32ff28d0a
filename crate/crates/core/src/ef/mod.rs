//! Extended formulations of pseudo-Boolean polytopes built along nest-set
//! elimination orders, and their LP-file form.

mod compile;
mod inflation;
mod lp_format;
mod piece;
mod system;

pub use compile::{compile_ef, size_bound, CompiledEf, PieceLedger, StepLedger};
pub use inflation::{inflate, inflation_family, InflationRecord};
pub use lp_format::{read_lp, write_lp, LpFile, Sidecar, SidecarVariable};
pub use piece::{augment_subedges, pointed_ef, pointed_piece, PointedPiece};
pub use system::{ef_size_report, Constraint, PolyhedralSystem, Relation, Role, SizeReport, VarKey, VarKind, Variable};
