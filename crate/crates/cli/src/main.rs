use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let limit = std::env::var(klstab_cli::SWEEP_ENV).ok();
    let code = klstab_cli::run(
        std::env::args_os(),
        limit.as_deref(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
