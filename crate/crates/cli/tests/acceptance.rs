//! Acceptance: `orbit` and `verify` are byte-identical across runs, and the exit codes
//! 0 (success), 1 (verification failed), 2 (invalid input) and 3 (no bound orbit) hold.

use std::process::{Command, ExitCode, Output};
use std::time::Instant;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isochrone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn identical(args: &[&str]) -> Result<usize, String> {
    let a = run(args);
    let b = run(args);
    if a.status.code() != b.status.code() {
        return Err(format!("{args:?}: exit codes differ"));
    }
    if a.stdout.is_empty() {
        return Err(format!("{args:?}: empty output"));
    }
    if a.stdout != b.stdout {
        return Err(format!("{args:?}: outputs differ"));
    }
    Ok(a.stdout.len())
}

fn criterion_11() -> Result<String, String> {
    let runs: [&[&str]; 6] = [
        &[
            "orbit",
            "--henon",
            "mu=1,beta=1",
            "--xi",
            "-0.25",
            "--lambda",
            "0.5",
            "--samples",
            "1000",
            "--periods",
            "5",
        ],
        &[
            "orbit",
            "--hollowed",
            "mu=1,beta=1",
            "--xi",
            "-0.25",
            "--lambda",
            "0.8",
            "--samples",
            "300",
            "--format",
            "json",
        ],
        &["verify", "--henon", "mu=1,beta=1"],
        &["verify", "--bounded", "mu=1,beta=1", "--format", "csv"],
        &["verify", "--plummer", "b=1", "--bertrand"],
        &[
            "elements",
            "--henon",
            "mu=1,beta=1",
            "--xi-grid",
            "-0.4:-0.05:8",
            "--lambda-grid",
            "0:1:8",
        ],
    ];
    let mut bytes = 0;
    for args in runs {
        bytes += identical(args)?;
    }
    let codes: [(&[&str], i32); 5] = [
        (&["verify", "--kepler", "mu=1"], 0),
        (&["verify", "--plummer", "b=1"], 1),
        (&["classify", "--latin", "0,1,2,0,0"], 2),
        (&["orbit", "--kepler", "mu=1"], 2),
        (
            &[
                "orbit", "--kepler", "mu=1", "--xi", "0.5", "--lambda", "0.8",
            ],
            3,
        ),
    ];
    for (args, want) in codes {
        let got = run(args).status.code();
        if got != Some(want) {
            return Err(format!("{args:?}: exit {got:?}, want {want}"));
        }
    }
    Ok(format!(
        "6 commands byte-identical ({bytes} bytes), 5 exit codes honored"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let res = criterion_11();
    let secs = start.elapsed().as_secs_f64();
    match res {
        Ok(d) => {
            println!("PASS [11] cli determinism and exit codes: {d} ({secs:.2} s)");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("FAIL [11] cli determinism and exit codes: {e} ({secs:.2} s)");
            ExitCode::FAILURE
        }
    }
}
