//! Library side of the `ceresa` command-line tool: graph documents, the
//! divisor mini-language and command dispatch.

pub mod commands;
pub mod divisor;
pub mod document;
pub mod error;
pub mod selftest;

pub use commands::{run, summary, Command, Options};
pub use document::{parse_graph, GraphDocument, ParsedGraph};
pub use error::{CliError, Issue};

/// Serializes a result document the way the binary prints it.
pub fn render(v: &serde_json::Value, pretty: bool) -> String {
    if pretty {
        summary(v)
    } else {
        serde_json::to_string(v).expect("values serialize") + "\n"
    }
}
