fn main() {
    std::process::exit(palmod::cli::main_with_stdio() as i32);
}
