//! Text format, JSON forms and the built-in example corpus.

pub mod corpus;
mod document;
mod json;
mod reports;
mod text;

pub use corpus::{builtin_example, builtin_examples, example_ids, ExampleEntry, Expected};
pub use document::{default_var_names, MapDocument};
pub use json::{
    map_from_text, map_to_text, matrix_from_json, CertificateJson, MoveJson, PairingJson, RationalMapJson,
    CERTIFICATE_FORMAT, PAIRING_FORMAT,
};
pub use reports::{
    schema, AnalyzeReport, PairReport, ReduceReport, SegreReport, SymmetrizeReport, VerifyReport, SCHEMAS,
};
pub use text::{parse_map, parse_poly, print_map, print_poly};
