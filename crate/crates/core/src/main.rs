fn main() {
    println!("superq: command-line interface under construction");
}
