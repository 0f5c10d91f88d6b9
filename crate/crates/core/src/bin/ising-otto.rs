fn main() -> std::process::ExitCode {
    ising_otto::cli::main()
}
