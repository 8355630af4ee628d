use clap::Parser;

use pullin::cli;

fn main() {
    // `pullin catalog | head` should end quietly: restore the default
    // SIGPIPE disposition that the runtime masks on startup.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    cli::init_threads();
    let parsed = cli::Cli::parse();
    if let Err(e) = cli::run(&parsed) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
