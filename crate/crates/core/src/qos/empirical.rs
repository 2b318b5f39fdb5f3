use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::condition::{ConditionGrid, ConditionKey, QosCondition};
use crate::error::{QoeError, Result};
use crate::sum::compensated_sum;

/// Discrete, possibly multi-dimensional QoS distribution with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalJointPmf {
    entries: Vec<(QosCondition, f64)>,
    dimension: usize,
    bin_widths: Option<Vec<f64>>,
    deficit: f64,
}

/// Options for [`load_joint_pmf`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadOptions {
    pub normalize: bool,
    pub merge_duplicates: bool,
    /// Allowed deviation of the total mass from 1 when not normalizing.
    pub tolerance: f64,
    pub grid: ConditionGrid,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            normalize: false,
            merge_duplicates: false,
            tolerance: 1e-6,
            grid: ConditionGrid::default(),
        }
    }
}

impl EmpiricalJointPmf {
    pub fn point_mass(x: QosCondition) -> Self {
        Self {
            dimension: x.dimension(),
            entries: vec![(x, 1.0)],
            bin_widths: None,
            deficit: 0.0,
        }
    }

    pub fn entries(&self) -> &[(QosCondition, f64)] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bin_widths(&self) -> Option<&[f64]> {
        self.bin_widths.as_deref()
    }

    /// `1 - sum` of the raw probabilities before normalization.
    pub fn deficit(&self) -> f64 {
        self.deficit
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Validates `(coordinates, probability)` rows into a joint PMF.
pub fn load_joint_pmf<I>(rows: I, options: &LoadOptions) -> Result<EmpiricalJointPmf>
where
    I: IntoIterator<Item = (Vec<f64>, f64)>,
{
    let mut index: HashMap<ConditionKey, usize> = HashMap::new();
    let mut entries: Vec<(QosCondition, f64)> = Vec::new();
    let mut dimension = None;
    for (coords, p) in rows {
        let cond = QosCondition::new(coords)?;
        match dimension {
            None => dimension = Some(cond.dimension()),
            Some(d) if d != cond.dimension() => {
                return Err(QoeError::DimensionMismatch {
                    expected: d,
                    found: cond.dimension(),
                })
            }
            _ => {}
        }
        if !p.is_finite() {
            return Err(QoeError::InvalidPmf(format!("non-finite probability {p}")));
        }
        if p < 0.0 {
            return Err(QoeError::InvalidPmf(format!("negative probability {p}")));
        }
        let key = options.grid.key(cond.coordinates());
        match index.get(&key) {
            Some(&i) if options.merge_duplicates => entries[i].1 += p,
            Some(_) => {
                return Err(QoeError::InvalidPmf(format!(
                    "duplicate condition {:?}",
                    cond.coordinates()
                )))
            }
            None => {
                index.insert(key, entries.len());
                entries.push((cond, p));
            }
        }
    }
    let dimension = dimension.ok_or(QoeError::EmptyInput("joint PMF rows"))?;
    let total = compensated_sum(entries.iter().map(|e| e.1));
    if total <= 0.0 {
        return Err(QoeError::InvalidPmf("all probabilities are zero".into()));
    }
    let deficit = 1.0 - total;
    if options.normalize {
        for e in &mut entries {
            e.1 /= total;
        }
    } else if deficit.abs() > options.tolerance {
        return Err(QoeError::InvalidPmf(format!(
            "probabilities sum to {total}; enable normalization to rescale"
        )));
    }
    Ok(EmpiricalJointPmf {
        entries,
        dimension,
        bin_widths: None,
        deficit,
    })
}

/// Histogram of raw samples on a grid of the given bin widths. Each
/// coordinate is floored to the lower edge of its bin.
pub fn pmf_from_samples(samples: &[QosCondition], bin_widths: &[f64]) -> Result<EmpiricalJointPmf> {
    let first = samples.first().ok_or(QoeError::EmptyInput("QoS samples"))?;
    let dimension = first.dimension();
    if bin_widths.len() != dimension {
        return Err(QoeError::DimensionMismatch {
            expected: dimension,
            found: bin_widths.len(),
        });
    }
    if let Some(w) = bin_widths.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(QoeError::domain("bin width", *w, "> 0"));
    }
    let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for s in samples {
        if s.dimension() != dimension {
            return Err(QoeError::DimensionMismatch {
                expected: dimension,
                found: s.dimension(),
            });
        }
        // The small offset keeps values like 0.3 / 0.1 in the bin they name.
        let bin: Vec<i64> = s
            .coordinates()
            .iter()
            .zip(bin_widths)
            .map(|(x, w)| (x / w + 1e-9).floor() as i64)
            .collect();
        match counts.entry(bin) {
            Entry::Occupied(mut e) => *e.get_mut() += 1,
            Entry::Vacant(e) => {
                e.insert(1);
            }
        }
    }
    let n = samples.len() as f64;
    let entries = counts
        .into_iter()
        .map(|(bin, c)| {
            let coords = bin
                .iter()
                .zip(bin_widths)
                .map(|(k, w)| *k as f64 * w)
                .collect();
            Ok((QosCondition::new(coords)?, c as f64 / n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EmpiricalJointPmf {
        entries,
        dimension,
        bin_widths: Some(bin_widths.to_vec()),
        deficit: 0.0,
    })
}
