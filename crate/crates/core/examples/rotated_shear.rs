use germflow::flow::{germs::rotated_shear_germ, iterative_root, RootOutcome};

fn main() {
    for m in 1..=3 {
        let order = 2 * m + 1;
        let u = rotated_shear_germ(m, order);
        println!("m = {m}: u = {u}");
        match iterative_root(&u, 2, order, 0).unwrap() {
            RootOutcome::Obstruction(c) => println!(
                "  no square root: component {}, monomial {}, alpha = {}, beta = {}",
                c.component, c.exponents, c.alpha, c.beta
            ),
            RootOutcome::Root(g) => println!("  root {g}"),
        }
    }
}
