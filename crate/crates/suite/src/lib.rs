//! Runner for the acceptance criteria: each criterion yields a detail
//! string on success or a diagnosis on failure, reported one line apiece.

use std::io::Write;
use std::time::Instant;

pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

pub fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

/// `PASS  n name: detail (secs)` per criterion, then a tally. Returns the
/// number of failures.
pub fn run_all(criteria: &[Criterion], out: &mut impl Write) -> std::io::Result<usize> {
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(out, "{tag} {:>2} {}: {detail} ({secs:.1}s)", i + 1, c.name)?;
        out.flush()?;
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len())?;
    Ok(failed)
}
