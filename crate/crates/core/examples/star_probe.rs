fn main() {
    let r = superq::suites::run_suite("star", &superq::suites::SuiteOptions::default()).unwrap();
    print!("{}", r.to_text());
}
