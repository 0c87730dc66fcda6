use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use vgit_cli::{run, Args, EXIT_SCHEMA};

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("vgit: cannot read {}: {e}", args.input);
            return ExitCode::from(EXIT_SCHEMA as u8);
        }
    };
    match run(&args, &text) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("vgit: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
