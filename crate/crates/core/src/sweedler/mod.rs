//! A small Sweedler-notation language for identities in `H` and its modules.
//!
//! `h^{21}` addresses a leaf of an iterated coproduct, `X, Y, Z` and
//! `P, Q, R` are the legs of `Φ` and `Φ⁻¹` (tag repeated instances with
//! `_k`), `m<0>, m<1>` are the legs of `ρ` and `m[0], m[1]` those of `λ`
//! (tag pairs with `<0;a>`). `(x)` separates tensor factors.
//!
//! ```
//! use qhayd_core::sweedler::{eval_equation, parse_equation, Context, Decls};
//! use qhayd_core::zoo;
//!
//! let h = zoo::kz2(qhayd_core::Field::Rational).into_arc();
//! let decls = Decls::new().algebra_var("h");
//! let eq = parse_equation("S(h^{1}) alpha h^{2} = eps(h) alpha", &decls).unwrap();
//! assert!(eval_equation(&Context::new(h), &eq, &decls).unwrap().holds);
//! ```

mod ast;
mod compile;
pub mod corpus;
mod error;
mod eval;
mod parser;

pub use ast::{Atom, Coaction, Equation, Expr, Factor, Func, Lit, PhiComp, Term};
pub use compile::{compile, ContractionPlan, Node, NodeKind, TermPlan};
pub use error::DslError;
pub use eval::{eval_equation, eval_expr, eval_plan, Context, Counterexample, Verdict};
pub use parser::{parse_equation, parse_expr, parse_expr_file, parse_file, Decls, Sort};
