use germflow::coeff::{root_of_unity, Coefficient};
use germflow::linearize::resonance_check;

fn main() {
    let cases = [
        ("(1/2, 1/4)", vec![Coefficient::rational(1, 2), Coefficient::rational(1, 4)]),
        ("(1/2, 1/3)", vec![Coefficient::rational(1, 2), Coefficient::rational(1, 3)]),
        ("ζ₆", vec![root_of_unity(6, 1)]),
        ("(ζ₃, ζ₃²)", vec![root_of_unity(3, 1), root_of_unity(3, 2)]),
    ];
    for (name, lams) in cases {
        let found = resonance_check(&lams, 7).unwrap();
        println!("{name}: {} resonances up to degree 7", found.len());
        for w in found.iter().take(4) {
            println!("  {w}");
        }
    }
}
