//! Risk Agora: a dialogue-game engine for dialectical argumentation over
//! uncertain claims, with qualified assertions, contestation moves, and a
//! neutral store that grades each tracked claim by the strength of the
//! arguments exhibited for and against it.

pub mod arguments;
pub mod dictionaries;
pub mod lang;
pub mod nature;
pub mod protocol;
pub mod repl;
pub mod script;
pub mod trace;

/// A ready-made dialogue about the carcinogenicity of a chemical, used by
/// the `example` subcommand and throughout the tests.
pub const EXAMPLE_SCRIPT: &str = include_str!("../examples/risk-x.agora");
