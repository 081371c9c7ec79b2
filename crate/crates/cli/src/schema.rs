//! The machine-readable description printed by `mukai --schema`.

use serde_json::{json, Value};

use crate::request::Command;

fn optional(c: Command) -> &'static [&'static str] {
    match c {
        Command::PtypeCheck => &["basis", "w"],
        Command::PtypeDecompose => &["basis", "w", "side"],
        Command::PtypeEnumerate | Command::Mori => &["bound"],
        _ => &[],
    }
}

fn result_keys(c: Command) -> &'static [&'static str] {
    match c {
        Command::Snf => &["d", "invariant_factors", "rank", "u", "v"],
        Command::Disc => &[
            "cyclic",
            "determinant",
            "even",
            "factors",
            "order",
            "signature",
        ],
        Command::Saturate => &["basis", "index", "saturated"],
        Command::Pair => &["value"],
        Command::PtypeCheck => &[
            "isotropic_classes",
            "lattice",
            "p_type",
            "pairings_with_v",
            "v_square",
        ],
        Command::PtypeDecompose => &[
            "cross_pairing",
            "gram",
            "lattice",
            "minus",
            "n",
            "plus",
            "s",
            "selected",
            "t",
        ],
        Command::PtypeEnumerate => &["bound", "count", "lattices"],
        Command::LineClass => &["R", "disc_order", "square", "two_R"],
        Command::Classify => &[
            "isotropic_witness_ok",
            "lagrangian",
            "lattice",
            "lattice_error",
            "line_class",
            "n",
            "square_ok",
            "torsion_ok",
        ],
        Command::Mori => &["bound", "candidates", "count", "lagrangian_count"],
        Command::JhCheck | Command::BudgetCheck => &[
            "dimension_identity_ok",
            "ext1_budget_ok",
            "ext1_cross",
            "ext1_total",
            "jh_ok",
            "m",
            "n",
            "parts",
            "square_sum",
        ],
    }
}

pub fn schema() -> Value {
    let commands: serde_json::Map<String, Value> = Command::ALL
        .into_iter()
        .map(|c| {
            (
                c.name().to_string(),
                json!({
                    "required": c.required(),
                    "optional": optional(c),
                    "result": result_keys(c),
                }),
            )
        })
        .collect();
    json!({
        "request": {
            "common": ["command", "id"],
            "setup": {
                "presets": ["kummer-mukai", "ns-rank1:{2d}", "kummer-bbf:{n}"],
                "forms": [
                    "\"setup\": \"<preset>\"",
                    "\"setup\": {\"preset\": \"<name>\", \"n\": <int>}",
                    "\"setup\": {\"ns\": <matrix>} or \"ns\": <matrix>",
                    "\"setup\": {\"gram\": <matrix>} or \"gram\": <matrix>",
                    "\"preset\": \"<name>\", \"n\": <int>"
                ]
            },
            "integer": "JSON number or decimal string",
            "vector": "array of integers in ambient coordinates [r, c_1, ..., c_rho, s] for Mukai setups",
            "matrix": "array of equal-length rows of integers",
            "side": ["plus", "minus"]
        },
        "response": {
            "status": ["ok", "error"],
            "result": "command-specific object, present when status is ok",
            "error": {"code": "stable snake_case code", "kind": ["parse", "schema", "library"]},
            "diagnostics": "array of strings, nonempty when status is error",
            "id": "echoed from the request when given",
            "rational": "string \"p/q\" with q > 0"
        },
        "commands": commands,
        "exit_status": {"0": "every response ok", "1": "some request failed", "2": "input stream unreadable"}
    })
}
