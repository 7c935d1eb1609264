use germflow::cli::{lower::lower_germ, parse_germ};
use germflow::coeff::Mode;
use germflow::series::{compose, compositional_inverse, iterate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 8;
    let (u, _) = lower_germ(&parse_germ("z + z^2")?, order, Mode::Exact)?;
    let (v, _) = lower_germ(&parse_germ("2*z - z^3")?, order, Mode::Exact)?;

    println!("u ∘ v  = {}", compose(&u, &v)?);
    println!("u∘u∘u  = {}", iterate(&u, 3)?);

    let inv = compositional_inverse(&u)?;
    println!("u⁻¹    = {inv}");
    assert!(compose(&u, &inv)?.is_identity());

    let (w, _) = lower_germ(&parse_germ("(x + y^2, y - x*y)")?, 5, Mode::Exact)?;
    let w_inv = compositional_inverse(&w)?;
    println!("w⁻¹    = {w_inv}");
    assert!(compose(&w_inv, &w)?.is_identity());
    Ok(())
}
