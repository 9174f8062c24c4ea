fn main() {
    println!("gapforge");
}
