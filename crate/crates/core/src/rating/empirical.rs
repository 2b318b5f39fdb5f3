use std::collections::BTreeMap;

use super::{check_dimension, ConditionalRatingModel};
use crate::condition::{ConditionGrid, ConditionKey};
use crate::distribution::{validate_pmf, RatingCdf, StepCdf};
use crate::error::{QoeError, Result};
use crate::scale::RatingScale;

/// Relative rating frequencies of one tested condition.
pub fn empirical_conditional_pmf(ratings: &[i32], scale: &RatingScale) -> Result<Vec<f64>> {
    if ratings.is_empty() {
        return Err(QoeError::EmptyInput("ratings"));
    }
    let mut counts = vec![0.0; scale.levels()];
    for &r in ratings {
        let idx = scale
            .index_of(r)
            .ok_or_else(|| QoeError::domain("rating", r as f64, "a level of the scale"))?;
        counts[idx] += 1.0;
    }
    let n = ratings.len() as f64;
    Ok(counts.into_iter().map(|c| c / n).collect())
}

/// Rating distributions observed per tested condition, looked up by
/// quantized condition.
#[derive(Debug, Clone)]
pub struct EmpiricalConditionalPmf {
    scale: RatingScale,
    grid: ConditionGrid,
    dimension: usize,
    table: BTreeMap<ConditionKey, Vec<f64>>,
}

impl EmpiricalConditionalPmf {
    pub fn new(scale: RatingScale, dimension: usize, grid: ConditionGrid) -> Self {
        Self {
            scale,
            grid,
            dimension,
            table: BTreeMap::new(),
        }
    }

    /// Builds the table from raw `(condition, rating)` observations.
    pub fn from_ratings<'a, I>(scale: RatingScale, grid: ConditionGrid, observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [f64], i32)>,
    {
        let mut grouped: BTreeMap<ConditionKey, (Vec<f64>, Vec<i32>)> = BTreeMap::new();
        let mut dimension = None;
        for (condition, rating) in observations {
            match dimension {
                None => dimension = Some(condition.len()),
                Some(d) => check_dimension(Some(d), condition)?,
            }
            grouped
                .entry(grid.key(condition))
                .or_insert_with(|| (condition.to_vec(), Vec::new()))
                .1
                .push(rating);
        }
        let dimension = dimension.ok_or(QoeError::EmptyInput("rating observations"))?;
        let mut out = Self::new(scale, dimension, grid);
        for (_, (condition, ratings)) in grouped {
            let pmf = empirical_conditional_pmf(&ratings, &scale)?;
            out.insert(&condition, pmf)?;
        }
        Ok(out)
    }

    /// Adds (or replaces) the PMF of one condition.
    pub fn insert(&mut self, condition: &[f64], pmf: Vec<f64>) -> Result<()> {
        check_dimension(Some(self.dimension), condition)?;
        if pmf.len() != self.scale.levels() {
            return Err(QoeError::InvalidPmf(format!(
                "{} entries for a {}-level scale",
                pmf.len(),
                self.scale.levels()
            )));
        }
        let normalized = validate_pmf(&pmf)?;
        if normalized.deficit.abs() > 1e-6 {
            return Err(QoeError::InvalidPmf(format!(
                "conditional PMF sums to {}",
                1.0 - normalized.deficit
            )));
        }
        self.table
            .insert(self.grid.key(condition), normalized.probabilities);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, condition: &[f64]) -> Option<&[f64]> {
        self.table
            .get(&self.grid.key(condition))
            .map(Vec::as_slice)
    }

    fn lookup(&self, condition: &[f64]) -> Result<&[f64]> {
        check_dimension(Some(self.dimension), condition)?;
        self.get(condition)
            .ok_or_else(|| QoeError::UnknownCondition(condition.to_vec()))
    }
}

impl ConditionalRatingModel for EmpiricalConditionalPmf {
    fn scale(&self) -> &RatingScale {
        &self.scale
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.dimension)
    }

    fn conditional_pmf(&self, condition: &[f64]) -> Result<Vec<f64>> {
        self.lookup(condition).map(<[f64]>::to_vec)
    }

    fn conditional_cdf(&self, y: f64, condition: &[f64]) -> Result<f64> {
        StepCdf::new(self.scale, self.lookup(condition)?.to_vec()).cdf(y)
    }

    fn conditional_cdf_before(&self, y: f64, condition: &[f64]) -> Result<f64> {
        StepCdf::new(self.scale, self.lookup(condition)?.to_vec()).cdf_before(y)
    }

    fn discrete_ratings(&self) -> bool {
        true
    }

    fn name(&self) -> &'static str {
        "empirical"
    }
}
