//! Method dispatch on a JSON spec, as the `compute` subcommand does it.

use pentadet::cli::{parse_spec, run_compute, Method, ScalarMode};

fn main() {
    let text = r#"{"type":"general","n":6,"k":2,
        "L":[1,1,1],"l":[1,1,1,1,1],"d":[0,2,2,2,2,2,2],"r":[1,1,1,1,1],"R":[1,1,1]}"#;
    let spec = parse_spec(text).expect("valid spec");

    match run_compute(&spec, Method::Reduce, ScalarMode::Rational, false) {
        Ok(r) => println!("reduce: {r:?}"),
        Err(e) => println!("reduce failed (exit code {}): {e}", e.exit_code()),
    }
    let result = run_compute(&spec, Method::Auto, ScalarMode::Rational, false).expect("auto is total");
    println!("{}", serde_json::to_string_pretty(&result).unwrap());
    let float = run_compute(&spec, Method::Auto, ScalarMode::Float, false).expect("auto is total");
    println!("{}", serde_json::to_string(&float).unwrap());
}
