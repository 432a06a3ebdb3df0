fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (report, code) = lgmirror::run(&argv);
    print!("{}", report.to_text());
    std::process::exit(code);
}
