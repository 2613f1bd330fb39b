use std::io::Write;

fn main() {
    let out = cychom::cli::run(std::env::args_os());
    // one write each, so a report is never interleaved
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
