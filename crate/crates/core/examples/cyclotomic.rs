use germflow::coeff::{cyclotomic_polynomial, root_of_unity, totient, Coefficient};

fn main() {
    let zeta = root_of_unity(12, 1);
    println!("ζ₁₂ = {zeta}");
    println!("ζ₁₂^3 = {}", zeta.pow(3).unwrap());
    println!("ζ₁₂^12 = {}", zeta.pow(12).unwrap());

    // ζ₃ + ζ₃² = −1
    let sum = root_of_unity(3, 1).try_add(&root_of_unity(3, 2)).unwrap();
    assert_eq!(sum, Coefficient::int(-1));

    // mixed conductors meet in the common field
    let mixed = root_of_unity(4, 1).try_mul(&root_of_unity(3, 1)).unwrap();
    println!("i·ζ₃ = {mixed}  (order {:?})", mixed.as_root_of_unity());

    for k in [1, 5, 8, 12] {
        println!("Φ_{k} = {:?}, degree {}", cyclotomic_polynomial(k), totient(k));
    }
}
