use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use super::CalibrateError;
use crate::seeds::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_prob: f64,
    /// Per-gene mutation probability.
    pub mutation_prob: f64,
    pub max_generations: usize,
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
    pub workers: usize,
    pub tournament_size: usize,
    /// Blend crossover may place children up to `alpha` times the parents'
    /// spread beyond either parent.
    pub blend_alpha: f64,
    /// Mutation standard deviation as a fraction of each gene's bound width.
    pub mutation_scale: f64,
    /// Stop when the best fitness improves by less than `stall_tolerance`
    /// over this many generations; 0 disables the check.
    pub stall_generations: usize,
    pub stall_tolerance: f64,
}

impl GaConfig {
    pub fn new(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        GaConfig {
            population_size: 120,
            crossover_prob: 0.5,
            mutation_prob: 0.2,
            max_generations: 100,
            bounds,
            seed,
            workers: 1,
            tournament_size: 3,
            blend_alpha: 0.5,
            mutation_scale: 0.1,
            stall_generations: 20,
            stall_tolerance: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<(), CalibrateError> {
        let err = |m: String| Err(CalibrateError::Config(m));
        if self.population_size < 2 {
            return err(format!("population size {} < 2", self.population_size));
        }
        for (name, p) in [("crossover", self.crossover_prob), ("mutation", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return err(format!("{name} probability {p} outside [0, 1]"));
            }
        }
        if self.bounds.is_empty() {
            return err("genome has no genes".into());
        }
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return err(format!("gene {i} bounds [{lo}, {hi}] are not an interval"));
            }
        }
        if self.tournament_size == 0 {
            return err("tournament size must be at least 1".into());
        }
        if self.workers == 0 {
            return err("need at least one worker".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Vec<f64>,
    /// Lower is better; failed evaluations score `f64::INFINITY`.
    pub fitness: f64,
    /// Seed the objective was evaluated with.
    pub eval_seed: u64,
}

/// Receives the surviving population after each generation (0 is the initial one).
pub trait GenerationSink {
    fn record(&mut self, generation: usize, population: &[Individual]) -> std::io::Result<()>;
}

pub struct NullSink;

impl GenerationSink for NullSink {
    fn record(&mut self, _: usize, _: &[Individual]) -> std::io::Result<()> {
        Ok(())
    }
}

/// `generation,individual,fitness,gene_0..gene_k`, flushed after every generation.
pub struct CsvGenerationLog<W: Write> {
    writer: csv::Writer<W>,
    header_written: bool,
}

impl<W: Write> CsvGenerationLog<W> {
    pub fn new(out: W) -> Self {
        CsvGenerationLog { writer: csv::Writer::from_writer(out), header_written: false }
    }

    pub fn into_inner(self) -> Result<W, CalibrateError> {
        self.writer.into_inner().map_err(|e| CalibrateError::Sink(e.into_error()))
    }
}

fn io_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

impl<W: Write> GenerationSink for CsvGenerationLog<W> {
    fn record(&mut self, generation: usize, population: &[Individual]) -> std::io::Result<()> {
        if !self.header_written {
            let genes = population.first().map_or(0, |i| i.genome.len());
            let mut header = vec!["generation".to_string(), "individual".into(), "fitness".into()];
            header.extend((0..genes).map(|g| format!("gene_{g}")));
            self.writer.write_record(&header).map_err(io_err)?;
            self.header_written = true;
        }
        for (i, ind) in population.iter().enumerate() {
            let mut row = vec![generation.to_string(), i.to_string(), ind.fitness.to_string()];
            row.extend(ind.genome.iter().map(|g| g.to_string()));
            self.writer.write_record(&row).map_err(io_err)?;
        }
        self.writer.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaResult {
    pub best: Individual,
    pub population: Vec<Individual>,
    pub history: Vec<GenerationStats>,
    /// True when the run ended on the stall rule rather than the generation cap.
    pub stalled: bool,
}

fn stats(generation: usize, pop: &[Individual]) -> GenerationStats {
    let finite: Vec<f64> = pop.iter().map(|i| i.fitness).filter(|f| f.is_finite()).collect();
    GenerationStats {
        generation,
        best: pop.iter().map(|i| i.fitness).fold(f64::INFINITY, f64::min),
        mean: if finite.is_empty() { f64::INFINITY } else { finite.iter().sum::<f64>() / finite.len() as f64 },
    }
}

fn tournament<'a>(pop: &'a [Individual], size: usize, rng: &mut ChaCha8Rng) -> &'a Individual {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..size {
        let c = &pop[rng.random_range(0..pop.len())];
        if c.fitness < best.fitness {
            best = c;
        }
    }
    best
}

fn blend(a: &mut [f64], b: &mut [f64], alpha: f64, rng: &mut ChaCha8Rng) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let gamma = (1.0 + 2.0 * alpha) * rng.random::<f64>() - alpha;
        let (x0, y0) = (*x, *y);
        *x = (1.0 - gamma) * x0 + gamma * y0;
        *y = gamma * x0 + (1.0 - gamma) * y0;
    }
}

/// Evaluates `genomes` in parallel; results keep input order.
fn evaluate<F>(objective: &F, jobs: Vec<(Vec<f64>, u64)>) -> Vec<Individual>
where
    F: Fn(&[f64], u64) -> Result<f64, String> + Sync,
{
    jobs.into_par_iter()
        .map(|(genome, seed)| {
            let fitness = match objective(&genome, seed) {
                Ok(f) if !f.is_nan() => f,
                Ok(_) => {
                    log::warn!("objective returned NaN for {genome:?}; scoring as worst");
                    f64::INFINITY
                }
                Err(e) => {
                    log::warn!("objective failed for {genome:?}: {e}; scoring as worst");
                    f64::INFINITY
                }
            };
            Individual { genome, fitness, eval_seed: seed }
        })
        .collect()
}

/// Minimises `objective(genome, eval_seed)` over the box `cfg.bounds`.
///
/// Each generation selects parents by tournament, applies blend crossover and
/// Gaussian mutation, clamps to bounds, evaluates the changed children, and
/// keeps the best `population_size` of parents and children together. Each
/// evaluation's seed depends only on the run seed, the generation and the
/// child's index, so results do not depend on worker scheduling.
pub fn ga_run<F>(
    cfg: &GaConfig,
    objective: F,
    sink: &mut dyn GenerationSink,
) -> Result<GaResult, CalibrateError>
where
    F: Fn(&[f64], u64) -> Result<f64, String> + Sync,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CalibrateError::Pool(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.population_size;
    let sigmas: Vec<Normal<f64>> = cfg
        .bounds
        .iter()
        .map(|&(lo, hi)| Normal::new(0.0, cfg.mutation_scale * (hi - lo)).expect("finite sigma"))
        .collect();
    let clamp = |g: &mut [f64]| {
        for (x, &(lo, hi)) in g.iter_mut().zip(&cfg.bounds) {
            *x = x.clamp(lo, hi);
        }
    };

    let initial: Vec<(Vec<f64>, u64)> = (0..n)
        .map(|i| {
            let genome = cfg.bounds.iter().map(|&(lo, hi)| rng.random_range(lo..=hi)).collect();
            (genome, derive_seed(cfg.seed, &[0, i as u64]))
        })
        .collect();
    let mut pop = pool.install(|| evaluate(&objective, initial));
    sink.record(0, &pop).map_err(CalibrateError::Sink)?;
    let mut history = vec![stats(0, &pop)];
    let mut stalled = false;

    for generation in 1..=cfg.max_generations {
        let mut children: Vec<Individual> =
            (0..n).map(|_| tournament(&pop, cfg.tournament_size, &mut rng).clone()).collect();
        let mut changed = vec![false; n];
        for i in (0..n.saturating_sub(1)).step_by(2) {
            if rng.random::<f64>() < cfg.crossover_prob {
                let (left, right) = children.split_at_mut(i + 1);
                blend(&mut left[i].genome, &mut right[0].genome, cfg.blend_alpha, &mut rng);
                changed[i] = true;
                changed[i + 1] = true;
            }
        }
        for (child, flag) in children.iter_mut().zip(&mut changed) {
            for (x, dist) in child.genome.iter_mut().zip(&sigmas) {
                if rng.random::<f64>() < cfg.mutation_prob {
                    *x += dist.sample(&mut rng);
                    *flag = true;
                }
            }
            clamp(&mut child.genome);
        }

        let jobs: Vec<(Vec<f64>, u64)> = children
            .iter()
            .enumerate()
            .filter(|(i, _)| changed[*i])
            .map(|(i, c)| (c.genome.clone(), derive_seed(cfg.seed, &[generation as u64, i as u64])))
            .collect();
        let mut fresh = pool.install(|| evaluate(&objective, jobs)).into_iter();
        for (child, _) in children.iter_mut().zip(&changed).filter(|(_, &c)| c) {
            *child = fresh.next().expect("one evaluation per changed child");
        }

        let mut merged = pop;
        merged.extend(children);
        merged.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
        merged.truncate(n);
        pop = merged;

        sink.record(generation, &pop).map_err(CalibrateError::Sink)?;
        let s = stats(generation, &pop);
        log::info!("generation {generation}: best {:.6e} mean {:.6e}", s.best, s.mean);
        history.push(s);

        let window = cfg.stall_generations;
        if window > 0 && history.len() > window {
            let before = history[history.len() - 1 - window].best;
            if before - s.best < cfg.stall_tolerance {
                stalled = true;
                break;
            }
        }
    }

    Ok(GaResult { best: pop[0].clone(), population: pop, history, stalled })
}
