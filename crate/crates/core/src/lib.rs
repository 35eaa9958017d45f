//! Kernels for PVS-Cert and for its encoding in the λΠ-calculus modulo
//! rewriting, with the translations between them.

pub mod context;
pub mod corpus;
pub mod generate;
pub mod inverse;
pub mod kernel;
pub mod lf;
pub mod pcert;
pub mod rewrite;
pub mod session;
pub mod syntax;
pub mod term;
pub mod translate;

pub use context::{Context, Signature, SymbolType, Visibility};
pub use inverse::{inverse_term, inverse_type, roundtrip_development, InverseResult, NotInImage, RoundTripFailure};
pub use kernel::{TypeError, TypeResult, TypeSystem};
pub use lf::{assert_public, check_wf_lf, infer_lf};
pub use pcert::{check_wf_pcert, conv_pcert, infer_pcert, pi_erase};
pub use rewrite::{check_orthogonality, Fuel, RewriteError, RewriteRule, RuleSet};
pub use session::{check_development, Checked, Diagnostic};
pub use syntax::{parse_file, parse_term, print_file, print_term, Decl, Declaration, Development, Mode};
pub use term::{alpha_eq, free_vars, substitute, Name, Sort, Term, TermKind};
pub use translate::{translate_ctx, translate_development, translate_term, translate_type};
