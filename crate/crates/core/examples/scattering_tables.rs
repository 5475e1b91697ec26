// Field of the 3-star (N = 3) after a unit impulse at leaf v1, under the
// direct Kirchhoff, unit-mass and matched node conditions.

use graphwave::experiment::run_tables;

pub fn run_example() -> graphwave::Result<()> {
    for table in run_tables()? {
        println!("{table}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> graphwave::Result<()> {
    run_example()
}
