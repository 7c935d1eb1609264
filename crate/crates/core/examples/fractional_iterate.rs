use germflow::cli::{lower::lower_germ, parse_germ};
use germflow::coeff::{Coefficient, Mode};
use germflow::flow::{evaluate_flow, flow_family, verify_group_law};
use germflow::series::compose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 8;
    let half = Coefficient::rational(1, 2);
    for text in ["z/2 + z^2", "z + z^2"] {
        let (u, _) = lower_germ(&parse_germ(text)?, order, Mode::Exact)?;
        let family = flow_family(&u, order)?;
        let g = evaluate_flow(&family, &half, order)?;
        println!("{text} ({}): u^(1/2) = {g}", family.kind());
        assert_eq!(compose(&g, &g)?, u);
        assert!(verify_group_law(&family, &half, &Coefficient::rational(-3, 2), order)?.is_zero());
    }

    let (u, _) = lower_germ(&parse_germ("z/3 + z^2")?, 5, Mode::Exact)?;
    let family = flow_family(&u, 5)?;
    let t = Mode::Float { precision: 128 }.int(1).try_div(&Mode::Float { precision: 128 }.int(7))?;
    println!("u^(1/7) = {}", evaluate_flow(&family, &t, 5)?);
    Ok(())
}
