use std::process::ExitCode;

fn main() -> ExitCode {
    let result = fcc_bsymbol::cli::run(std::env::args_os());
    if result.exit == 0 {
        println!("{}", result.body);
    } else {
        eprintln!("{}", result.body);
    }
    ExitCode::from(result.exit as u8)
}
