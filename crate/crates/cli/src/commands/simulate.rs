use std::fs::File;
use std::io::BufWriter;

use anyhow::anyhow;
use marketsim_core::agents::InvestmentLog;
use marketsim_core::engine::{init_world, step_year_observed, write_funds_csv, write_mix_csv, DayObserver};
use marketsim_core::market::DispatchLog;

use super::{execute, load_system};
use crate::args::SimulateArgs;
use crate::failure::{Classify, Outcome};
use crate::manifest::RunDir;

pub fn run(a: SimulateArgs) -> Outcome {
    let mut sys = load_system(&a.system)?;
    if let Some(seed) = a.seed {
        sys.scenario.rng_seed = seed;
    }
    let span = (sys.scenario.end_year - sys.scenario.start_year) as u32;
    let horizon = a.horizon.unwrap_or(span);
    if horizon > span {
        return Err(anyhow!("--horizon {horizon} runs past the scenario's end year {}", sys.scenario.end_year)).input();
    }
    let seed = sys.scenario.rng_seed;
    let mut world = init_world(sys.scenario, sys.plants, sys.rep_year, sys.cost_table).input()?;
    let run = RunDir::open(&a.out, "simulate", Some(seed), &a, &a.system.paths()).input()?;
    execute(run, |run| {
        let mut dispatch = match a.dispatch_log {
            true => Some(DispatchLog::new(BufWriter::new(run.create("dispatch.csv").runtime()?)).runtime()?),
            false => None,
        };
        let mut record: Box<DayObserver<'_>> = match dispatch.as_mut() {
            Some(log) => Box::new(move |year, day, gens, d| log.record(year, day, gens, d).map_err(|e| e.to_string())),
            None => Box::new(|_, _, _, _| Ok(())),
        };
        let mut results = Vec::with_capacity(horizon as usize + 1);
        for _ in 0..=horizon {
            let r = step_year_observed(&mut world, &mut *record).runtime()?;
            log::info!(
                "{}: served {:.0} MWh, unserved {:.0} MWh, {} new plants",
                r.year,
                r.served_mwh,
                r.unserved_mwh,
                r.investments.len()
            );
            results.push(r);
        }
        drop(record);
        if let Some(log) = dispatch.as_mut() {
            log.flush().runtime()?;
        }
        write_mix_csv(BufWriter::new(run.create("mix_by_year.csv").runtime()?), &results).runtime()?;
        write_funds_csv(BufWriter::new(run.create("funds_by_year.csv").runtime()?), &results).runtime()?;
        let mut inv: InvestmentLog<BufWriter<File>> =
            InvestmentLog::new(BufWriter::new(run.create("investments.csv").runtime()?)).runtime()?;
        for d in results.iter().flat_map(|r| &r.decisions) {
            inv.record(d).runtime()?;
        }
        inv.flush().runtime()?;
        Ok(())
    })
}
