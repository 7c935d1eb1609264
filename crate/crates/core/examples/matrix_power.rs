use germflow::coeff::{Coefficient, Mode, Rational};
use germflow::linearize::{closeness_check, matrix_exp, matrix_log, matrix_power_t, SquareMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // unipotent: the logarithm terminates and stays exact
    let shear = SquareMatrix::from_rows(vec![
        vec![Coefficient::one(), Coefficient::rational(1, 2)],
        vec![Coefficient::zero(), Coefficient::one()],
    ]).expect("square");
    println!("log J   = {}", matrix_log(&shear)?);
    println!("J^(1/3) = {}", matrix_power_t(&shear, &Coefficient::rational(1, 3))?);

    let mode = Mode::Float { precision: 128 };
    let q = |n: i64, d: i64| mode.rational(Rational::new(n.into(), d.into()));
    let j = SquareMatrix::from_rows(vec![vec![q(11, 10), q(1, 5)], vec![q(-1, 10), q(9, 10)]]).expect("square");
    println!("‖J − E‖ = {:.4}", closeness_check(&j)?.norm);
    let l = matrix_log(&j)?;
    println!("exp(log J) − J: {:.1e}", matrix_exp(&l)?.max_abs_diff(&j));
    let half = matrix_power_t(&j, &q(1, 2))?;
    println!("(J^½)² − J: {:.1e}", half.mul(&half)?.max_abs_diff(&j));
    Ok(())
}
