use germflow::cli::{parse_germ, render, run, Command, OutputFormat, RunConfig};

fn main() {
    for text in ["exp(i*pi/2)*z + z^5", "(x/2 + y^2, y/3)", "rad(2, 1/2)*z - zbar^3", "z + * z"] {
        match parse_germ(text) {
            Ok(e) => println!("{text:<28} -> {}", render(&e)),
            Err(e) => println!("{text:<28} -> error at byte {}: {}", e.offset, e.message),
        }
    }

    let mut config = RunConfig::new(Command::Root);
    config.order = 6;
    config.output = OutputFormat::Json;
    let out = run(&config, "exp(i*pi/2)*z + z^5");
    println!("exit {}\n{}", out.code, out.stdout);
}
