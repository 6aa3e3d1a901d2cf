use std::process::exit;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    exit(concept_homology_cli::cli_main(&argv));
}
