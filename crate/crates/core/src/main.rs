use std::io::Write;

fn main() {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = k3fib::cli::run(
        std::env::args_os(),
        k3fib::cli::DataSource::from_env(),
        &mut out,
        &mut err,
    );
    let _ = out.flush();
    std::process::exit(code);
}
