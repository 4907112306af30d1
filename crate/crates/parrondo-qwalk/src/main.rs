use parrondo_qwalk::cli;

fn main() {
    std::process::exit(cli::main_entry());
}
