fn main() {
    std::process::exit(rq_core::cli::dispatch(std::env::args_os()));
}
