//! Driving the command layer from code and reading its JSON reports.

use vtwist::cli::run;
use vtwist::report::Report;

fn main() {
    let (text, code) = run([
        "vtwist", "--json", "check", "wk-identity", "--samples", "5", "--seed", "7",
    ]);
    let report = Report::from_json(&text).expect("json report");
    println!("exit {code}, status {:?}, cases {}", report.status, report.details["cases"]);
    println!("replay with: vtwist {}", report.replay_args().join(" "));

    let (text, code) = run(["vtwist", "iso", "--left", "omega(lambda=2, b=3)", "--right", "omega(lambda=2, b=-2)"]);
    print!("exit {code}\n{text}");
}
