use std::process::ExitCode;

fn main() -> ExitCode {
    let cfg = match sphavg::cli::RunConfig::from_args(std::env::args().skip(1)) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout();
    match sphavg::cli::run(&cfg, &mut out) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(sphavg::cli::exit_code_for(&e) as u8)
        }
    }
}
