use germflow::cli::{lower::lower_germ, parse_germ};
use germflow::coeff::Mode;
use germflow::linearize::koenigs;
use germflow::series::compose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 10;
    let (u, _) = lower_germ(&parse_germ("z/2 + z^2")?, order, Mode::Exact)?;
    let lin = koenigs(&u, order)?;
    println!("f = {}", lin.f);

    // f ∘ u = λ f
    let lhs = compose(&lin.f, &u)?;
    let rhs = lin.f.scale_components(&lin.multipliers)?;
    assert_eq!(lhs, rhs);
    println!("f(u(z)) = λ f(z) with λ = {}", lin.multipliers[0]);

    let (expanding, _) = lower_germ(&parse_germ("3*z + z^3")?, 7, Mode::Exact)?;
    println!("expanding: f = {}", koenigs(&expanding, 7)?.f);
    Ok(())
}
