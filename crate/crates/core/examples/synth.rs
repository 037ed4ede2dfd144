//! Writes a synthetic hourly dataset: `cargo run -p marketsim-core --example synth -- <days> <seed> <out.csv>`.

use std::fs::File;
use std::io::BufWriter;

use marketsim_core::synthetic::seasonal_dataset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [days, seed, out] = args.as_slice() else {
        return Err("usage: synth <days> <seed> <out.csv>".into());
    };
    let ts = seasonal_dataset(days.parse()?, seed.parse()?);
    ts.write_csv(BufWriter::new(File::create(out)?))?;
    Ok(())
}
