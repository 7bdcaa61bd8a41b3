//! Formulas, points and proofs, with their text formats.

pub mod formula;
pub mod point;
pub mod proof;
pub mod sexpr;
pub mod web;

pub use formula::{parse_formula, render_formula, Formula};
pub use point::{parse_bag, parse_point, parse_points, Point};
pub use proof::{check_proof, parse_proof, render_proof, render_sequent, CheckError, Derivation, Proof, Rule, Sequent};
pub use sexpr::{Pos, SyntaxError};
pub use web::{enum_web, enumerate_web, in_web, point_in_web, HasWeb, WebShape};
