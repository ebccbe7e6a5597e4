//! Helpers shared by the CLI integration tests: running the built binary and
//! comparing its reports against golden files.

#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", self.stdout))
    }
}

/// Runs the binary with `args`, feeding `stdin` when given.
pub fn vanderkit(args: &[&str], stdin: Option<&str>) -> Run {
    vanderkit_env(args, stdin, &[])
}

pub fn vanderkit_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vanderkit"));
    cmd.args(args)
        .env_remove("VANDERKIT_SCALAR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin is piped");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("binary finishes");
    Run {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Removes fields that vary between runs: timings.
pub fn strip_volatile(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing");
            map.remove("structured_us");
            map.remove("dense_us");
            map.values_mut().for_each(strip_volatile);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}

/// A golden case: subcommand arguments and the job document fed on stdin.
pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub input: Option<&'static str>,
    pub exit: i32,
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

/// Runs `case` and compares its stripped report with the stored golden file.
/// Set `VANDERKIT_BLESS=1` to rewrite the golden files instead.
pub fn check_golden(case: &Golden) -> Result<(), String> {
    let run = vanderkit(case.args, case.input);
    if run.status != case.exit {
        return Err(format!(
            "{}: exit {} (expected {}); stderr: {}",
            case.name, run.status, case.exit, run.stderr
        ));
    }
    let mut got = run.json();
    strip_volatile(&mut got);
    let path = golden_path(case.name);
    if std::env::var_os("VANDERKIT_BLESS").is_some() {
        let text = serde_json::to_string_pretty(&got).unwrap() + "\n";
        std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: missing golden file ({e})", path.display()))?;
    let want: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", case.name))?;
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "{}: report differs from golden\n got: {got}\nwant: {want}",
            case.name
        ))
    }
}

pub const INVERT_123: &str = r#"{"nodes": [1, 2, 3]}"#;

pub fn golden_cases() -> Vec<Golden> {
    vec![
        Golden {
            name: "build_confluent",
            args: &["build", "--stdin"],
            input: Some(r#"{"nodes": [{"value": "1", "multiplicity": 2}, {"value": "2"}]}"#),
            exit: 0,
        },
        Golden {
            name: "det_0_1",
            args: &["det", "--stdin"],
            input: Some(r#"{"nodes": [0, 1]}"#),
            exit: 0,
        },
        Golden {
            name: "factor_simple",
            args: &["factor", "--stdin"],
            input: Some(INVERT_123),
            exit: 0,
        },
        Golden {
            name: "factor_confluent",
            args: &["factor", "--stdin"],
            input: Some(r#"{"nodes": [{"value": "2"}, {"value": "1", "multiplicity": 2}]}"#),
            exit: 0,
        },
        Golden {
            name: "invert_1_2_3",
            args: &["invert", "--stdin"],
            input: Some(INVERT_123),
            exit: 0,
        },
        Golden {
            name: "invert_two_repeated",
            args: &["invert", "--stdin"],
            input: Some(
                r#"{"nodes": [{"value": "0", "multiplicity": 2}, {"value": "1", "multiplicity": 2}]}"#,
            ),
            exit: 0,
        },
        Golden {
            name: "matfunc_exp_jordan",
            args: &["matfunc", "--stdin"],
            input: Some(
                r#"{"scalar": "float", "function": "exp",
                    "nodes": [{"value": 0, "multiplicity": 2}],
                    "matrix": {"rows": 2, "entries": [0, 1, 0, 0]}}"#,
            ),
            exit: 0,
        },
        Golden {
            name: "verify_cases",
            args: &["verify", "--stdin"],
            input: Some(
                r#"{"cases": [
                    {"nodes": [1, 2, 3]},
                    {"nodes": [{"value": "1", "multiplicity": 2}, {"value": "2"}]},
                    {"nodes": [{"value": "-1"}, {"value": "3", "multiplicity": 3}]}
                ]}"#,
            ),
            exit: 0,
        },
        Golden {
            name: "bench_small",
            args: &["bench", "--scalar", "float", "--sizes", "4,8,12"],
            input: None,
            exit: 0,
        },
        Golden {
            name: "error_duplicate_node",
            args: &["invert", "--stdin"],
            input: Some(r#"{"nodes": [1, 2, 1]}"#),
            exit: 1,
        },
        Golden {
            name: "error_singular_float",
            args: &["invert", "--stdin", "--scalar", "float"],
            input: Some(r#"{"nodes": [1.0, 1.0000000000001, 2.0]}"#),
            exit: 1,
        },
        Golden {
            name: "error_malformed",
            args: &["det", "--stdin"],
            input: Some(r#"{"nodes": "1,2"}"#),
            exit: 2,
        },
    ]
}
