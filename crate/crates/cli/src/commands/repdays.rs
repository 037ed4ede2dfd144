use std::io::BufWriter;

use anyhow::{bail, Context};
use marketsim_core::ingest::load_hourly_series;
use marketsim_core::repdays::{evaluate_k_range, representative_year, SweepOptions};

use super::execute;
use crate::args::{workers, RepdaysArgs};
use crate::failure::{Classify, Outcome};
use crate::manifest::RunDir;

pub fn run(a: RepdaysArgs) -> Outcome {
    let workers = workers(a.workers).input()?;
    let (ts, report) = load_hourly_series(&a.input)
        .with_context(|| format!("hourly series {}", a.input.display()))
        .input()?;
    log::info!(
        "{}: {} rows, {} rejected, {} hours dropped, {} whole days kept",
        a.input.display(),
        report.total_rows,
        report.rejected_rows,
        report.dropped_hours,
        report.retained_days
    );
    let days = ts.days();
    (|| {
        if a.k == 0 || a.k > days {
            bail!("--k {} must be between 1 and the {days} days available", a.k);
        }
        if let Some(k) = a.sweep.iter().find(|&&k| k == 0 || k > days) {
            bail!("--sweep value {k} must be between 1 and the {days} days available");
        }
        if a.sweep_methods.is_empty() {
            bail!("--sweep-methods is empty");
        }
        Ok(())
    })()
    .input()?;
    let opts = SweepOptions {
        normalization: a.normalization,
        init: a.init,
        max_iter: a.max_iter,
        seed: a.seed,
        ..SweepOptions::default()
    };
    let run = RunDir::open(&a.out, "repdays", Some(a.seed), &a, &[&a.input]).input()?;
    execute(run, |run| {
        let year = representative_year(&ts, a.k, a.method, &opts).runtime()?;
        year.write_csv(BufWriter::new(run.create("representative_days.csv").runtime()?)).runtime()?;
        log::info!("{} representative days written", year.len());

        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().runtime()?;
        let rows = pool.install(|| evaluate_k_range(&ts, &a.sweep, &a.sweep_methods, &opts)).runtime()?;
        let mut w = csv::Writer::from_writer(run.create("metrics.csv").runtime()?);
        w.write_record(["k", "method", "ce_av", "nrmse_av", "ree_av"]).runtime()?;
        for r in &rows {
            w.write_record([
                r.k.to_string(),
                r.method.to_string(),
                r.ce_av.to_string(),
                r.nrmse_av.to_string(),
                r.ree_av.to_string(),
            ])
            .runtime()?;
        }
        w.flush().runtime()?;
        log::info!("{} sweep rows written", rows.len());
        Ok(())
    })
}
