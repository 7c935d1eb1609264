use germflow::flow::{germs::resonant_rotation_germ, iterative_root_all_branches, RootOutcome};

fn main() {
    for m in 1..=4 {
        let u = resonant_rotation_germ(m, 2 * m + 2);
        println!("u = {u}");
        for (branch, outcome) in iterative_root_all_branches(&u, 2, 2 * m + 2).into_iter().enumerate() {
            match outcome {
                Ok(RootOutcome::Obstruction(c)) => {
                    println!(
                        "  branch {branch}: c₁ = {}, degree {} requires {}·c = {}",
                        c.linear_root[0], c.degree, c.alpha, c.beta
                    );
                    assert_eq!(c.replay(&u).unwrap(), (c.alpha.clone(), c.beta.clone()));
                }
                Ok(RootOutcome::Root(g)) => println!("  branch {branch}: root {g}"),
                Err(e) => println!("  branch {branch}: {e}"),
            }
        }
    }
}
