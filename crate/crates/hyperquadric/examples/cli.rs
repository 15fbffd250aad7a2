//! Drive the command-line front end in-process.
fn main() {
    for args in [vec!["hyperquadric", "lie", "dims", "--delta", "-1"], vec!["hyperquadric", "flatness", "--delta", "1", "--points", "5"]] {
        let code = hyperquadric::cli::main_with_args(args);
        println!("exit {code}");
    }
}
