use germflow::cli::{lower::lower_germ, parse_germ};
use germflow::coeff::Mode;
use germflow::linearize::{poincare_linearize, LinearizeError};
use germflow::series::compose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (u, _) = lower_germ(&parse_germ("(x/2 + y^2, y/3 + x*y)")?, 6, Mode::Exact)?;
    let lin = poincare_linearize(&u, 6)?;
    println!("f = {}", lin.f);
    assert_eq!(compose(&lin.f, &u)?, lin.f.scale_components(&lin.multipliers)?);

    // λ₂ = λ₁² blocks the y-equation at x²
    let (resonant, _) = lower_germ(&parse_germ("(x/2, y/4 + x^2)")?, 4, Mode::Exact)?;
    match poincare_linearize(&resonant, 4) {
        Err(LinearizeError::Resonant(witnesses)) => {
            for w in witnesses {
                println!("resonance: {w}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
