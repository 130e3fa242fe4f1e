//! The command-line front end in-process, same as the `koedds` binary.
//!
//!     cargo run --example cli -- stats --market tests/fixtures/market.tsv --svi tests/fixtures/svi.csv

fn main() {
    let mut args: Vec<String> = std::env::args().collect();
    if args.len() == 1 {
        let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
        args.extend(
            [
                "validate",
                "--market",
                &format!("{fixtures}/market.tsv"),
                "--svi",
                &format!("{fixtures}/svi.csv"),
            ]
            .map(String::from),
        );
    }
    std::process::exit(koedds::cli::run(args));
}
