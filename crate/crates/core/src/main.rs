use clap::error::ErrorKind;
use clap::Parser;

use et_spectra::cli::{self, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{err}");
            std::process::exit(0);
        }
        Err(err) => {
            eprintln!("UsageError {}", cli::usage_line(&err));
            std::process::exit(2);
        }
    };
    if let Err(err) = cli::run(cli) {
        eprintln!("{} {err}", err.name());
        std::process::exit(err.exit_code());
    }
}
