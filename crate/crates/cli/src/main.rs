use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = shadowlab_cli::run(std::env::args_os());
    if outcome.report.is_none() && outcome.exit_code != 0 {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code as u8)
}
