fn main() {
    println!("qabkit");
}
