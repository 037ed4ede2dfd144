use std::io::BufWriter;

use anyhow::{anyhow, Context};
use marketsim_core::calibrate::{
    ga_run, load_trajectory, objective_longterm, objective_validation, simulate_genome, CsvGenerationLog, GaConfig,
    GenomeLayout, ScenarioBundle,
};
use marketsim_core::engine::write_mix_csv;

use super::{execute, load_system};
use crate::args::{workers, CalibrateArgs, Mode};
use crate::failure::{Classify, Outcome};
use crate::manifest::RunDir;

pub fn run(a: CalibrateArgs) -> Outcome {
    let workers = workers(a.workers).input()?;
    let sys = load_system(&a.system)?;
    let target = load_trajectory(&a.target)
        .with_context(|| format!("target mix {}", a.target.display()))
        .input()?;
    let sc = &sys.scenario;
    let layout = match a.mode {
        Mode::Validation => GenomeLayout::Validation,
        Mode::Longterm => GenomeLayout::LongTerm { first_year: a.first_year.unwrap_or(sc.start_year), curves: a.curves },
    };
    let scored_years: Vec<i32> = match a.mode {
        Mode::Validation => vec![sc.end_year],
        Mode::Longterm => sc.years().skip(usize::from(a.exclude_first_year)).collect(),
    };
    if let Some(y) = scored_years.iter().find(|y| !target.contains_key(y)) {
        return Err(anyhow!("target mix {} has no rows for {y}", a.target.display())).input();
    }
    let mut cfg = GaConfig::new(layout.bounds(), a.seed);
    cfg.population_size = a.pop;
    cfg.crossover_prob = a.cxpb;
    cfg.mutation_prob = a.mutpb;
    cfg.max_generations = a.gens;
    cfg.workers = workers;
    cfg.stall_generations = a.stall;
    cfg.validate().input()?;

    let mut bundle = ScenarioBundle::new(sys.scenario, sys.plants, sys.rep_year, sys.cost_table, target);
    bundle.exclude_first_year = a.exclude_first_year;
    // Reject inputs the engine cannot run before spending a whole GA on them.
    let probe: Vec<f64> = layout.bounds().iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    simulate_genome(&layout, &probe, &bundle, a.seed).input()?;

    let mut inputs = a.system.paths();
    inputs.push(&a.target);
    let run = RunDir::open(&a.out, "calibrate", Some(a.seed), &a, &inputs).input()?;
    execute(run, |run| {
        let mut log = CsvGenerationLog::new(run.create("generations.csv").runtime()?);
        let objective = |g: &[f64], seed: u64| match a.mode {
            Mode::Validation => objective_validation(g, &bundle, seed),
            Mode::Longterm => objective_longterm(&layout, g, &bundle, seed),
        }
        .map_err(|e| e.to_string());
        let result = ga_run(&cfg, objective, &mut log).runtime()?;
        log.into_inner().runtime()?;
        log::info!(
            "best fitness {:.6} after {} generations{}",
            result.best.fitness,
            result.history.len() - 1,
            if result.stalled { " (stalled)" } else { "" }
        );

        let mut w = csv::Writer::from_writer(run.create("best_genome.csv").runtime()?);
        w.write_record(["gene", "value"]).runtime()?;
        for (name, v) in layout.gene_names().iter().zip(&result.best.genome) {
            w.write_record([name.clone(), v.to_string()]).runtime()?;
        }
        w.write_record(["fitness".to_string(), result.best.fitness.to_string()]).runtime()?;
        w.write_record(["eval_seed".to_string(), result.best.eval_seed.to_string()]).runtime()?;
        w.flush().runtime()?;

        let mut h = csv::Writer::from_writer(run.create("history.csv").runtime()?);
        h.write_record(["generation", "best", "mean"]).runtime()?;
        for s in &result.history {
            h.write_record([s.generation.to_string(), s.best.to_string(), s.mean.to_string()]).runtime()?;
        }
        h.flush().runtime()?;

        let best_run = simulate_genome(&layout, &result.best.genome, &bundle, result.best.eval_seed).runtime()?;
        write_mix_csv(BufWriter::new(run.create("best_mix_by_year.csv").runtime()?), &best_run).runtime()?;
        Ok(())
    })
}
