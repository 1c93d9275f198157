//! Abstract a variable out of a polynomial and check the beta law.

use gral_comb::poly::check_bracket;
use gral_comb::{normalize, parse_term, parse_type, Tca};

fn main() {
    let tca = Tca::standard();
    let o = parse_type("o").unwrap();
    let t = parse_term("f:(o -> o -> o) x:o (f:(o -> o -> o) @a:o x:o)").unwrap();
    let case = check_bracket(&tca, &t, "x", &o, &parse_term("@b:o").unwrap()).unwrap();
    println!("t        = {t}");
    println!("[x]t     = {}", case.abstraction);
    println!("nf [x]t  = {}", normalize(&case.abstraction).unwrap());
    println!("beta law : {}", case.holds());
}
