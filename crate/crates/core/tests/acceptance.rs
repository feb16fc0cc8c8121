//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints its own line; exits non-zero if any fails. An integer
//! argument runs only that criterion.

use std::process::ExitCode;

use nullify_core::suite::criteria;

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria() {
        if only.is_some_and(|k| k != c.number) {
            continue;
        }
        let o = c.check();
        println!("{}", c.line(&o));
        failed += !o.passed as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
