fn main() {
    std::process::exit(reslie::workbench::cli::main_entry());
}
