//! One line per acceptance criterion, at full scale. Runs without the libtest
//! harness so the report is printed on every `cargo test`.

use std::process::Command;

use lmov_cli::suites::{self, Outcome, Scale, Status};

const SEED: u64 = 0x5eed;

fn lmov(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lmov"))
        .args(args)
        .output()
        .expect("lmov runs")
}

/// Same configuration twice, with different thread counts, must give identical bytes.
fn deterministic_output() -> Result<String, String> {
    let runs: [&[&str]; 4] = [
        &["onehole", "--tau", "-3..3", "--max-m", "5", "--seed", "7"],
        &["ov", "--tau", "-2..2", "--max-m", "6", "--format", "csv"],
        &["disc", "--tau", "-2", "--max-m", "12", "--format", "csv"],
        &["verify-all", "--quick", "--seed", "7"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "3"] {
            let mut full = args.to_vec();
            full.extend(["--threads", threads]);
            let out = lmov(&full);
            if !out.status.success() {
                return Err(format!("{args:?} exited with {}", out.status));
            }
            outputs.push(out.stdout);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{args:?} is not deterministic"));
        }
    }
    Ok(format!("{} configurations byte-identical across runs", runs.len()))
}

fn main() {
    let scale = Scale::full();
    let mut outcomes: Vec<Outcome> = suites::all(&scale, SEED);
    let det = deterministic_output();
    let infra = outcomes.last_mut().expect("thirteen suites");
    match det {
        Ok(note) => infra.detail = format!("{}; {note}", infra.detail),
        Err(e) => {
            infra.status = Status::Fail;
            infra.detail = e;
        }
    }
    println!();
    for o in &outcomes {
        println!("{}", o.timed_line());
    }
    assert_eq!(outcomes.len(), 13);
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.ok()).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all 13 criteria hold");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
