use std::collections::BTreeMap;

use super::CalibrateError;
use crate::agents::Ppdc;

/// How a genome maps onto simulation parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenomeLayout {
    /// `[m, c]`: one price curve for the whole run.
    Validation,
    /// `[m_0..m_{n-1}, c_0..c_{n-1}, σ_m, σ_c, S_n]`: one curve per investment
    /// year from `first_year`, belief noise, and the nuclear subsidy.
    LongTerm { first_year: i32, curves: usize },
}

/// Parameters a genome sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub ppdc: Ppdc,
    pub ppdc_by_year: BTreeMap<i32, Ppdc>,
    pub sigma_m: f64,
    pub sigma_c: f64,
    pub nuclear_subsidy: Option<f64>,
}

const VALIDATION_M: (f64, f64) = (0.0, 0.004);
const VALIDATION_C: (f64, f64) = (-30.0, 100.0);
const LONG_M: (f64, f64) = (0.0, 0.003);
const LONG_C: (f64, f64) = (-30.0, 50.0);
const SIGMA: (f64, f64) = (0.0, 0.001);
/// Subsidy range per MWh; wide enough to cover the strike-price premium of new nuclear.
const SUBSIDY: (f64, f64) = (0.0, 200.0);

impl GenomeLayout {
    /// 17 curves from 2018 (through 2034).
    pub fn long_term_default() -> Self {
        GenomeLayout::LongTerm { first_year: 2018, curves: 17 }
    }

    pub fn len(&self) -> usize {
        match self {
            GenomeLayout::Validation => 2,
            GenomeLayout::LongTerm { curves, .. } => 2 * curves + 3,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        match self {
            GenomeLayout::Validation => vec![VALIDATION_M, VALIDATION_C],
            GenomeLayout::LongTerm { curves, .. } => {
                let mut b = vec![LONG_M; *curves];
                b.extend(std::iter::repeat_n(LONG_C, *curves));
                b.extend([SIGMA, SIGMA, SUBSIDY]);
                b
            }
        }
    }

    pub fn gene_names(&self) -> Vec<String> {
        match self {
            GenomeLayout::Validation => vec!["m".into(), "c".into()],
            GenomeLayout::LongTerm { first_year, curves } => {
                let years = *first_year..*first_year + *curves as i32;
                let mut n: Vec<String> = years.clone().map(|y| format!("m_{y}")).collect();
                n.extend(years.map(|y| format!("c_{y}")));
                n.extend(["sigma_m".into(), "sigma_c".into(), "nuclear_subsidy".into()]);
                n
            }
        }
    }

    pub fn decode(&self, genome: &[f64]) -> Result<Decoded, CalibrateError> {
        if genome.len() != self.len() {
            return Err(CalibrateError::GenomeLength { expected: self.len(), got: genome.len() });
        }
        Ok(match self {
            GenomeLayout::Validation => Decoded {
                ppdc: Ppdc::new(genome[0], genome[1]),
                ppdc_by_year: BTreeMap::new(),
                sigma_m: 0.0,
                sigma_c: 0.0,
                nuclear_subsidy: None,
            },
            GenomeLayout::LongTerm { first_year, curves } => {
                let n = *curves;
                let by_year: BTreeMap<i32, Ppdc> = (0..n)
                    .map(|i| (first_year + i as i32, Ppdc::new(genome[i], genome[n + i])))
                    .collect();
                Decoded {
                    ppdc: Ppdc::new(genome[0], genome[n]),
                    ppdc_by_year: by_year,
                    sigma_m: genome[2 * n],
                    sigma_c: genome[2 * n + 1],
                    nuclear_subsidy: Some(genome[2 * n + 2]),
                }
            }
        })
    }
}
