// Transmission and reflection of a pulse crossing the center of S_k.

use graphwave::experiment::{format_rational, measure_transmission};
use graphwave::lattice::ConditionKind;

pub fn run_example() -> graphwave::Result<()> {
    println!("{:>3} {:>10} {:>10} {:>7}", "k", "T", "R", "layers");
    for k in 2..=6 {
        let r = measure_transmission(k, 8, ConditionKind::Matched)?;
        let show = |x: Option<f64>| x.map_or("-".into(), format_rational);
        println!(
            "{k:>3} {:>10} {:>10} {:>7}",
            show(r.transmitted),
            show(r.reflected),
            r.spread
        );
    }
    // Direct Kirchhoff smears the pulse over two layers; only the sums agree.
    let direct = measure_transmission(3, 8, ConditionKind::DirectKirchhoff)?;
    println!("\ndirect, k = 3:\n{direct}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
