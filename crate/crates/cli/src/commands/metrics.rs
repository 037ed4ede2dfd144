use anyhow::Context;
use marketsim_core::calibrate::{forecast_errors_by_type, load_trajectory};

use super::execute;
use crate::args::MetricsArgs;
use crate::failure::{Classify, Outcome};
use crate::manifest::RunDir;

pub fn run(a: MetricsArgs) -> Outcome {
    let sim = load_trajectory(&a.simulated)
        .with_context(|| format!("simulated trajectory {}", a.simulated.display()))
        .input()?;
    let obs = load_trajectory(&a.observed)
        .with_context(|| format!("observed trajectory {}", a.observed.display()))
        .input()?;
    let errors = forecast_errors_by_type(&sim, &obs, a.baseline_year).input()?;
    let run = RunDir::open(&a.out, "metrics", None, &a, &[&a.simulated, &a.observed]).input()?;
    execute(run, |run| {
        let mut w = csv::Writer::from_writer(run.create("forecast_errors.csv").runtime()?);
        w.write_record(["type", "mae", "rmse", "mase"]).runtime()?;
        for (cat, e) in &errors {
            let mase = e.mase.map_or_else(String::new, |m| m.to_string());
            w.write_record([cat.as_str().to_string(), e.mae.to_string(), e.rmse.to_string(), mase]).runtime()?;
            log::info!("{cat}: MAE {:.4}, RMSE {:.4}, MASE {}", e.mae, e.rmse, e.mase.map_or("n/a".into(), |m| format!("{m:.3}")));
        }
        w.flush().runtime()?;
        Ok(())
    })
}
