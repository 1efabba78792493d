fn main() -> std::process::ExitCode {
    mtcperm::cli::main()
}
