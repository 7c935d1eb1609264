use germflow::cli::{lower::lower_vector_field, parse_germ};
use germflow::coeff::{Coefficient, Mode};
use germflow::flow::{exp_flow, exp_map, formal_log, germs::exp_minus_one_germ};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 8;
    let (v, _) = lower_vector_field(&parse_germ("x^2")?, order, Mode::Exact)?;
    for t in [Coefficient::one(), Coefficient::rational(-1, 2)] {
        println!("φ_{t}(x) = {}", exp_flow(&v, &t, order)?);
    }

    let (field, _) = lower_vector_field(&parse_germ("(y^2, x^3)")?, 6, Mode::Exact)?;
    println!("exp(v) = {}", exp_map(&field, 6)?);

    let u = exp_minus_one_germ(order);
    let g = formal_log(&u, order)?;
    println!("log(e^x − 1) = {g}");
    assert_eq!(exp_map(&g, order)?, u);
    Ok(())
}
