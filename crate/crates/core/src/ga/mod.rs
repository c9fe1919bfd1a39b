//! Genetic training of fuzzy rule-based classifiers.
//!
//! Each individual encodes up to `max_rules` rules (antecedents and consequent)
//! and the interior peaks of every linguistic partition. Fitness is the MCC of
//! the decoded rule base on the training table; equal MCC prefers fewer rules.

mod chromosome;
mod ranking;

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use chromosome::{Chromosome, Layout, RuleGene, MIN_PEAK_GAP};
pub use ranking::{above_average, point_biserial, rank_features, top_k, FeatureScore};

use crate::error::{Error, Result};
use crate::metrics::ConfusionMatrix;
use crate::rules::{Limits, RuleBase, SupportMode, DEFAULT_MAX_ANTECEDENTS, DEFAULT_MAX_RULES};
use crate::table::FeatureTable;

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub max_rules: usize,
    pub max_antecedents: usize,
    pub seed: u64,
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub n_labels: usize,
    pub support_mode: SupportMode,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            generations: 200,
            crossover_rate: 0.9,
            mutation_rate: 0.02,
            max_rules: DEFAULT_MAX_RULES,
            max_antecedents: DEFAULT_MAX_ANTECEDENTS,
            seed: 0,
            elitism_count: 1,
            tournament_size: 3,
            n_labels: 3,
            support_mode: SupportMode::RuleCount,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.population_size < 2 {
            return fail(format!("population_size must be >= 2, got {}", self.population_size));
        }
        if self.elitism_count < 1 || self.elitism_count >= self.population_size {
            return fail(format!(
                "elitism_count must be in 1..{}, got {}",
                self.population_size, self.elitism_count
            ));
        }
        for (name, v) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("{name} must lie in [0,1], got {v}"));
            }
        }
        if self.max_rules < 1 || self.max_antecedents < 1 {
            return fail("max_rules and max_antecedents must be >= 1".into());
        }
        if self.tournament_size < 1 {
            return fail("tournament_size must be >= 1".into());
        }
        if self.n_labels < 2 || self.n_labels > u8::MAX as usize - 1 {
            return fail(format!("n_labels must be >= 2, got {}", self.n_labels));
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_rules: self.max_rules,
            max_antecedents: self.max_antecedents,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("invalid value '{value}' for {key}")))
        }
        match key {
            "population_size" => self.population_size = num(key, value)?,
            "generations" => self.generations = num(key, value)?,
            "crossover_rate" => self.crossover_rate = num(key, value)?,
            "mutation_rate" => self.mutation_rate = num(key, value)?,
            "max_rules" => self.max_rules = num(key, value)?,
            "max_antecedents" => self.max_antecedents = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "elitism_count" => self.elitism_count = num(key, value)?,
            "tournament_size" => self.tournament_size = num(key, value)?,
            "n_labels" => self.n_labels = num(key, value)?,
            "support_mode" => self.support_mode = value.parse()?,
            _ => return Err(Error::Config(format!("unknown GA setting '{key}'"))),
        }
        Ok(())
    }

    pub fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("population_size", self.population_size.to_string()),
            ("generations", self.generations.to_string()),
            ("crossover_rate", self.crossover_rate.to_string()),
            ("mutation_rate", self.mutation_rate.to_string()),
            ("max_rules", self.max_rules.to_string()),
            ("max_antecedents", self.max_antecedents.to_string()),
            ("seed", self.seed.to_string()),
            ("elitism_count", self.elitism_count.to_string()),
            ("tournament_size", self.tournament_size.to_string()),
            ("n_labels", self.n_labels.to_string()),
            ("support_mode", self.support_mode.to_string()),
        ]
    }

    /// Parses a plain-text `key=value` file body on top of the defaults.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut c = GaConfig::default();
        for (k, v) in crate::config::parse_kv(text)? {
            c.set(&k, &v)?;
        }
        c.validate()?;
        Ok(c)
    }
}

/// MCC of an individual and the number of rules it uses.
///
/// Ordered so that `a > b` means `a` is the better individual: higher MCC first,
/// then fewer rules.
#[derive(Debug, Clone, Copy)]
pub struct Fitness {
    pub mcc: f64,
    pub n_rules: usize,
}

impl Fitness {
    pub const WORST: Fitness = Fitness { mcc: -1.0, n_rules: 0 };
}

impl Ord for Fitness {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mcc
            .total_cmp(&other.mcc)
            .then_with(|| other.n_rules.cmp(&self.n_rules))
    }
}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Fitness {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Fitness {}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MCC {:.4} with {} rules", self.mcc, self.n_rules)
    }
}

fn layout_for(config: &GaConfig, table: &FeatureTable) -> Layout {
    Layout {
        n_features: table.n_features(),
        n_classes: table.n_classes(),
        n_labels: config.n_labels,
        max_rules: config.max_rules,
        max_antecedents: config.max_antecedents,
    }
}

fn decode_base(chromosome: &Chromosome, table: &FeatureTable, config: &GaConfig) -> Result<Option<RuleBase>> {
    let (rules, partitions) = chromosome.decode(&layout_for(config, table));
    if rules.is_empty() {
        return Ok(None);
    }
    RuleBase::fit(rules, partitions, table, config.support_mode, &config.limits()).map(Some)
}

/// MCC of the decoded rule base on `table` (labeled, rescaled). No active rule scores -1.
pub fn fitness(chromosome: &Chromosome, table: &FeatureTable, config: &GaConfig) -> Result<Fitness> {
    let Some(base) = decode_base(chromosome, table, config)? else {
        return Ok(Fitness::WORST);
    };
    let predicted = base.classify(table)?;
    let cm = ConfusionMatrix::from_predictions(&predicted, table.require_labels()?, table.n_classes())?;
    Ok(Fitness {
        mcc: cm.mcc(),
        n_rules: base.len(),
    })
}

/// Decodes `chromosome` into a rule base with statistics frozen on `table`.
pub fn decode_rule_base(chromosome: &Chromosome, table: &FeatureTable, config: &GaConfig) -> Result<RuleBase> {
    match decode_base(chromosome, table, config)? {
        Some(b) => Ok(b),
        None => RuleBase::fit(
            Vec::new(),
            chromosome.decode(&layout_for(config, table)).1,
            table,
            config.support_mode,
            &config.limits(),
        ),
    }
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub rule_base: RuleBase,
    pub best: Chromosome,
    pub best_fitness: Fitness,
    /// Best fitness of every generation, starting with the initial population.
    pub history: Vec<Fitness>,
}

fn check_training_table(table: &FeatureTable) -> Result<()> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    table.require_labels()?;
    let present = table.class_counts().iter().filter(|&&c| c > 0).count();
    if present < 2 {
        return Err(Error::TooFewClasses { needed: 2, found: present });
    }
    if table.values().iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::InvalidTable("GA training expects a table rescaled to [0,1]".into()));
    }
    Ok(())
}

fn evaluate(population: &[Chromosome], table: &FeatureTable, config: &GaConfig) -> Result<Vec<Fitness>> {
    population
        .par_iter()
        .map(|c| fitness(c, table, config))
        .collect()
}

fn tournament<R: Rng>(fits: &[Fitness], size: usize, rng: &mut R) -> usize {
    let mut best = rng.random_range(0..fits.len());
    for _ in 1..size {
        let c = rng.random_range(0..fits.len());
        if fits[c] > fits[best] {
            best = c;
        }
    }
    best
}

/// Indices sorted best first; ties keep population order.
fn ranked(fits: &[Fitness]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fits.len()).collect();
    order.sort_by(|&a, &b| fits[b].cmp(&fits[a]));
    order
}

/// Runs the GA and returns the best rule base found, with statistics on `table`.
pub fn evolve(config: &GaConfig, table: &FeatureTable) -> Result<RuleBase> {
    Ok(evolve_detailed(config, table)?.rule_base)
}

/// [`evolve`] plus the winning chromosome and the per-generation best fitness.
///
/// Fitness is evaluated in parallel; all random draws happen on one seeded
/// generator so results are identical for a given seed.
pub fn evolve_detailed(config: &GaConfig, table: &FeatureTable) -> Result<Evolution> {
    config.validate()?;
    check_training_table(table)?;
    let layout = layout_for(config, table);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut population: Vec<Chromosome> = (0..config.population_size)
        .map(|_| Chromosome::random(&layout, table, &mut rng))
        .collect();
    let mut fits = evaluate(&population, table, config)?;
    let mut order = ranked(&fits);
    let mut history = vec![fits[order[0]]];

    for _ in 0..config.generations {
        let mut next: Vec<Chromosome> = order[..config.elitism_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();
        while next.len() < config.population_size {
            let a = &population[tournament(&fits, config.tournament_size, &mut rng)];
            let b = &population[tournament(&fits, config.tournament_size, &mut rng)];
            let (mut c1, mut c2) = if rng.random_bool(config.crossover_rate) {
                a.crossover(b, &mut rng)
            } else {
                (a.clone(), b.clone())
            };
            c1.mutate(config.mutation_rate, &layout, &mut rng);
            c2.mutate(config.mutation_rate, &layout, &mut rng);
            next.push(c1);
            if next.len() < config.population_size {
                next.push(c2);
            }
        }
        population = next;
        fits = evaluate(&population, table, config)?;
        order = ranked(&fits);
        history.push(fits[order[0]]);
    }

    let best = population[order[0]].clone();
    let best_fitness = fits[order[0]];
    log::debug!("GA finished: {best_fitness}");
    Ok(Evolution {
        rule_base: decode_rule_base(&best, table, config)?,
        best,
        best_fitness,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Label;

    fn two_class_table() -> FeatureTable {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 9.0]).collect();
        let labels = (0..10).map(|i| usize::from(i >= 5)).collect();
        FeatureTable::new(rows, vec!["x".into()], Some(labels)).unwrap()
    }

    fn layout() -> Layout {
        Layout {
            n_features: 1,
            n_classes: 2,
            n_labels: 3,
            max_rules: 4,
            max_antecedents: 4,
        }
    }

    fn gene(active: bool, label: Option<Label>, consequent: usize) -> RuleGene {
        RuleGene {
            active,
            antecedents: vec![label.map_or(0, |l| l.0 as u8 + 1)],
            consequent,
        }
    }

    #[test]
    fn perfect_and_constant_predictors() {
        let t = two_class_table();
        let cfg = GaConfig::default();
        let perfect = Chromosome {
            rules: vec![
                gene(true, Some(Label::LOW), 0),
                gene(true, Some(Label::HIGH), 1),
            ],
            peaks: vec![vec![0.5]],
        };
        let f = fitness(&perfect, &t, &cfg).unwrap();
        assert_eq!((f.mcc, f.n_rules), (1.0, 2));

        let constant = Chromosome {
            rules: vec![gene(true, Some(Label::MEDIUM), 0)],
            peaks: vec![vec![0.5]],
        };
        assert_eq!(fitness(&constant, &t, &cfg).unwrap().mcc, 0.0);

        let none = Chromosome {
            rules: vec![gene(false, Some(Label::LOW), 0), gene(true, None, 0)],
            peaks: vec![vec![0.5]],
        };
        assert_eq!(fitness(&none, &t, &cfg).unwrap(), Fitness::WORST);
    }

    #[test]
    fn fewer_rules_rank_higher() {
        let five = Fitness { mcc: 0.7, n_rules: 5 };
        let three = Fitness { mcc: 0.7, n_rules: 3 };
        assert!(three > five);
        assert!(Fitness { mcc: 0.71, n_rules: 9 } > three);
    }

    #[test]
    fn single_class_rejected() {
        let t = FeatureTable::new(vec![vec![0.1], vec![0.2]], vec!["x".into()], Some(vec![0, 0])).unwrap();
        assert!(matches!(
            evolve(&GaConfig::default(), &t),
            Err(Error::TooFewClasses { .. })
        ));
    }

    #[test]
    fn zero_generations_gives_valid_base() {
        let cfg = GaConfig { generations: 0, ..GaConfig::default() };
        let e = evolve_detailed(&cfg, &two_class_table()).unwrap();
        assert_eq!(e.history.len(), 1);
        assert!(!e.rule_base.is_empty());
    }

    #[test]
    fn decode_respects_limits() {
        let mut l = layout();
        l.max_antecedents = 1;
        let c = Chromosome {
            rules: vec![RuleGene { active: true, antecedents: vec![1], consequent: 1 }],
            peaks: vec![vec![0.3]],
        };
        let (rules, parts) = c.decode(&l);
        assert_eq!(rules.len(), 1);
        assert_eq!(parts[0].peaks(), vec![0.0, 0.3, 1.0]);
    }

    #[test]
    fn config_kv_round_trip() {
        let cfg = GaConfig { seed: 42, mutation_rate: 0.125, ..GaConfig::default() };
        let text: String = cfg
            .entries()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        assert_eq!(GaConfig::from_kv(&text).unwrap(), cfg);
        assert!(GaConfig::from_kv("bogus=1").is_err());
        assert!(GaConfig::from_kv("population_size=1").is_err());
    }
}
