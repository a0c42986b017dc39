fn main() {
    std::process::exit(faber_walsh::cli::main_exit_code());
}
