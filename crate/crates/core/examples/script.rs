//! Running a script in-process; the `soulcert` binary does the same on a file.

use soulcert::script::{format_records, run_text, RunOptions};

const SCRIPT: &str = "\
space B = product(cp(2), torus(2))
bundle xi over B { rank 2, oriented, euler = a + t1*t2 }
check xi
bundle nu = stab(xi, 3)
same xi nu
pdual cp(1) torus(2)
classify-s1s3 rank=4 w1=0 p1=2
";

fn main() {
    let out = run_text(SCRIPT, &RunOptions { quiet: true, ..RunOptions::default() });
    print!("{}", format_records(&out.records));
    if let Some(e) = out.error {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
