use std::process::ExitCode;

fn main() -> ExitCode {
    leolink::cli::main()
}
