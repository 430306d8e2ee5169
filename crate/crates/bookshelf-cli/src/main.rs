fn main() {
    std::process::exit(bookshelf_cli::run());
}
