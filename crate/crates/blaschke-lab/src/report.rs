//! Report assembly and exit-code policy. Machine output (JSON) goes to
//! standard output and must be byte-identical across runs with the same
//! inputs; timings and human summaries go to standard error only.

use blaschke_core::Error;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRACT: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Contract violations exit 1; capacity/resolution/numerical failures (a
/// retry with different parameters may succeed) exit 2.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Precondition(_) => EXIT_CONTRACT,
        Error::Resolution(_) | Error::Capacity { .. } | Error::Numerical { .. } => {
            EXIT_UNCERTIFIED
        }
    }
}

/// Assemble the JSON report. `serde_json::Value` maps keep keys sorted, so
/// serialization is deterministic.
pub fn render(
    subcommand: &str,
    inputs: Value,
    outputs: Value,
    certificate: Option<Value>,
    pass: bool,
) -> String {
    let mut root = serde_json::Map::new();
    root.insert("subcommand".into(), Value::String(subcommand.into()));
    root.insert("inputs".into(), inputs);
    root.insert("outputs".into(), outputs);
    if let Some(c) = certificate {
        root.insert("certificate".into(), c);
    }
    root.insert("pass".into(), Value::Bool(pass));
    let mut text = serde_json::to_string_pretty(&Value::Object(root))
        .expect("report serialization cannot fail");
    text.push('\n');
    text
}
