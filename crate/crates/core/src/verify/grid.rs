use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::CaseSpec;
use super::report::Report;
use super::Identity;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::{family, Family, PeriodicSeq};

/// Integer axis of a grid: an explicit list or an inclusive span.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRange {
    List(Vec<i64>),
    Span { from: i64, to: i64 },
}

impl IntRange {
    pub fn values(&self) -> Vec<i64> {
        match self {
            IntRange::List(v) => v.clone(),
            IntRange::Span { from, to } => (*from..=*to).collect(),
        }
    }
}

impl From<std::ops::RangeInclusive<i64>> for IntRange {
    fn from(r: std::ops::RangeInclusive<i64>) -> Self {
        IntRange::Span { from: *r.start(), to: *r.end() }
    }
}

fn default_order() -> usize {
    8
}

/// Grid campaign description, read from JSON.
///
/// Only the axes an identity uses are required for it. `random_sequences`
/// appends that many seeded random rational sequences
/// (`random:seed=<seed+i>`) to `sequences`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub campaign: Option<String>,
    #[serde(default)]
    pub m: Option<IntRange>,
    #[serde(default)]
    pub n: Option<IntRange>,
    #[serde(default)]
    pub r: Option<IntRange>,
    #[serde(default)]
    pub p: Option<IntRange>,
    #[serde(default)]
    pub lambda: Option<Vec<Rational>>,
    #[serde(default)]
    pub sequences: Vec<String>,
    #[serde(default)]
    pub random_sequences: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_order")]
    pub order: usize,
    /// Self-test hook: index of one generated case whose right-hand side is
    /// corrupted before comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturb_case: Option<usize>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            campaign: None,
            m: None,
            n: None,
            r: None,
            p: None,
            lambda: None,
            sequences: Vec::new(),
            random_sequences: 0,
            seed: 0,
            order: default_order(),
            perturb_case: None,
        }
    }
}

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(a, b)| Rational::new(a, b)).collect()
}

impl GridSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGrid(e.to_string()))
    }

    /// The default campaign for each identity.
    pub fn acceptance(identity: Identity) -> Self {
        let base = GridSpec { campaign: Some(format!("acceptance-{identity}")), seed: 20240601, ..Default::default() };
        match identity {
            Identity::Prop1 => GridSpec {
                n: Some((2..=8).into()),
                r: Some((-2..=5).into()),
                random_sequences: 50,
                ..base
            },
            Identity::Prop2 => GridSpec {
                m: Some((1..=6).into()),
                n: Some((2..=8).into()),
                r: Some((0..=3).into()),
                p: Some(IntRange::List(vec![-1, 0, 1, 2])),
                lambda: Some(rats(&[(1, 1), (2, 1), (-1, 2), (3, 1), (5, 7)])),
                sequences: vec!["delta".into(), "ramanujan".into()],
                random_sequences: 3,
                ..base
            },
            Identity::Mult => GridSpec {
                m: Some((0..=6).into()),
                n: Some((1..=8).into()),
                lambda: Some(rats(&[(1, 1), (2, 1), (-1, 2)])),
                ..base
            },
            Identity::Section4 => GridSpec {
                m: Some((1..=5).into()),
                n: Some(IntRange::List(vec![2, 3, 4, 6])),
                r: Some((-1..=1).into()),
                p: Some((0..=2).into()),
                lambda: Some(rats(&[(2, 1), (-1, 2)])),
                ..base
            },
            Identity::Moebius => GridSpec { n: Some((2..=12).into()), ..base },
            Identity::Gseries => GridSpec {
                n: Some(IntRange::List(vec![2, 3, 4, 6])),
                r: Some(IntRange::List(vec![0, 2])),
                p: Some(IntRange::List(vec![-1, 0, 1, 2])),
                lambda: Some(rats(&[(1, 1), (2, 1), (-1, 2)])),
                sequences: vec!["delta".into()],
                random_sequences: 2,
                order: 8,
                ..base
            },
        }
    }

    fn axis(&self, name: &str, axis: &Option<IntRange>, min: i64) -> Result<Vec<i64>> {
        let values = axis
            .as_ref()
            .map(IntRange::values)
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::InvalidGrid(format!("axis {name:?} is missing or empty")))?;
        if let Some(bad) = values.iter().find(|&&v| v < min) {
            return Err(Error::InvalidGrid(format!("axis {name:?} has {bad}, minimum is {min}")));
        }
        Ok(values)
    }

    fn lambdas(&self, min_distinct: usize) -> Result<Vec<Rational>> {
        let l = self
            .lambda
            .clone()
            .filter(|l| !l.is_empty())
            .ok_or_else(|| Error::InvalidGrid("lambda list is missing or empty".into()))?;
        let mut distinct = l.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < min_distinct {
            return Err(Error::InvalidGrid(format!(
                "need at least {min_distinct} distinct lambda samples, got {}",
                distinct.len()
            )));
        }
        Ok(l)
    }

    fn families(&self, reads_c0: bool) -> Result<Vec<Family>> {
        let mut out = self
            .sequences
            .iter()
            .map(|s| s.parse::<Family>().map_err(|e| Error::InvalidGrid(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        out.extend((0..self.random_sequences).map(|i| Family::Random { seed: self.seed.wrapping_add(i) }));
        if out.is_empty() {
            return Err(Error::InvalidGrid("no sequences given".into()));
        }
        if reads_c0 {
            if let Some(f) = out.iter().find(|f| f.missing_c0()) {
                return Err(Error::InvalidGrid(format!("{f} needs an explicit c0=<rational> for this identity")));
            }
        }
        Ok(out)
    }

    /// Expands the grid into cases in lexicographic parameter order.
    pub(super) fn cases(&self, identity: Identity) -> Result<Vec<CaseSpec>> {
        let mut seq_cache: HashMap<(String, u32), Arc<PeriodicSeq>> = HashMap::new();
        let mut resolve = |f: &Family, n: u32| -> Result<Arc<PeriodicSeq>> {
            let key = (f.to_string(), n);
            if let Some(s) = seq_cache.get(&key) {
                return Ok(s.clone());
            }
            let s = Arc::new(family(f, n).map_err(|e| Error::InvalidGrid(format!("{f} at n = {n}: {e}")))?);
            seq_cache.insert(key, s.clone());
            Ok(s)
        };
        let mut out = Vec::new();
        match identity {
            Identity::Prop1 => {
                let fams = self.families(false)?;
                for n in self.axis("n", &self.n, 2)? {
                    for r in self.axis("r", &self.r, i64::MIN)? {
                        for f in &fams {
                            let seq = resolve(f, n as u32)?;
                            out.push(CaseSpec::Prop1 { seq, label: f.to_string(), r });
                        }
                    }
                }
            }
            Identity::Prop2 => {
                let fams = self.families(true)?;
                let lambdas = self.lambdas(5)?;
                let (ps, rs) = (self.axis("p", &self.p, i64::MIN)?, self.axis("r", &self.r, i64::MIN)?);
                for m in self.axis("m", &self.m, 1)? {
                    for n in self.axis("n", &self.n, 2)? {
                        for &r in &rs {
                            for &p in &ps {
                                for lambda in &lambdas {
                                    for f in &fams {
                                        out.push(CaseSpec::Prop2 {
                                            m: m as usize,
                                            r,
                                            p,
                                            lambda: lambda.clone(),
                                            seq: resolve(f, n as u32)?,
                                            label: f.to_string(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Identity::Mult => {
                let lambdas = self.lambdas(1)?;
                for m in self.axis("m", &self.m, 0)? {
                    for n in self.axis("n", &self.n, 1)? {
                        for lambda in &lambdas {
                            out.push(CaseSpec::Mult { m: m as usize, n: n as u32, lambda: lambda.clone() });
                        }
                    }
                }
            }
            Identity::Section4 => {
                let lambdas = self.lambdas(1)?;
                let (ps, rs) = (self.axis("p", &self.p, i64::MIN)?, self.axis("r", &self.r, i64::MIN)?);
                for m in self.axis("m", &self.m, 1)? {
                    for n in self.axis("n", &self.n, 2)? {
                        for &r in &rs {
                            for &p in ps.iter().filter(|&&p| r + p == 1) {
                                for lambda in &lambdas {
                                    out.push(CaseSpec::Section4 {
                                        m: m as usize,
                                        n: n as u32,
                                        r,
                                        p,
                                        lambda: lambda.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
                if out.is_empty() {
                    return Err(Error::InvalidGrid("no (r, p) pair with r + p = 1".into()));
                }
            }
            Identity::Moebius => {
                for n in self.axis("n", &self.n, 2)? {
                    out.push(CaseSpec::Moebius { n: n as u32 });
                }
            }
            Identity::Gseries => {
                if self.order < 1 {
                    return Err(Error::InvalidGrid("order must be >= 1".into()));
                }
                let fams = self.families(true)?;
                let lambdas = self.lambdas(1)?;
                let (ps, rs) = (self.axis("p", &self.p, i64::MIN)?, self.axis("r", &self.r, i64::MIN)?);
                for n in self.axis("n", &self.n, 2)? {
                    for &r in &rs {
                        for &p in &ps {
                            for lambda in &lambdas {
                                for f in &fams {
                                    out.push(CaseSpec::Gseries {
                                        r,
                                        p,
                                        lambda: lambda.clone(),
                                        seq: resolve(f, n as u32)?,
                                        label: f.to_string(),
                                        order: self.order,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(i) = self.perturb_case {
            if i >= out.len() {
                return Err(Error::InvalidGrid(format!("perturb_case {i} out of range ({} cases)", out.len())));
            }
        }
        Ok(out)
    }
}

/// Runs every case of the grid. Cases keep their generation order, so the
/// report does not depend on `workers` or on completion order.
pub fn run_grid(spec: &GridSpec, identity: Identity, workers: Option<usize>) -> Result<Report> {
    let cases = spec.cases(identity)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InvalidGrid(format!("worker pool: {e}")))?;
    let perturb = spec.perturb_case;
    let results = pool.install(|| {
        cases
            .par_iter()
            .enumerate()
            .map(|(i, c)| c.evaluate(perturb == Some(i)))
            .collect::<Vec<_>>()
    });
    let campaign = spec.campaign.clone().unwrap_or_else(|| identity.to_string());
    Ok(Report::new(campaign, results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn empty_lambda_rejected() {
        let spec = GridSpec { m: Some((1..=2).into()), n: Some((2..=3).into()), lambda: Some(vec![]), ..Default::default() };
        assert!(matches!(run_grid(&spec, Identity::Mult, Some(1)), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn prop2_needs_five_lambdas() {
        let mut spec = GridSpec::acceptance(Identity::Prop2);
        spec.lambda = Some(rats(&[(2, 1), (3, 1), (2, 1), (5, 1), (7, 1)]));
        assert!(matches!(spec.cases(Identity::Prop2), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn missing_c0_rejected_for_prop2() {
        let mut spec = GridSpec::acceptance(Identity::Prop2);
        spec.sequences = vec!["fourier-dedekind:a=1".into()];
        assert!(spec.cases(Identity::Prop2).is_err());
        spec.sequences = vec!["fourier-dedekind:a=1,c0=0".into()];
        spec.random_sequences = 0;
        spec.m = Some(IntRange::List(vec![2]));
        spec.n = Some(IntRange::List(vec![5]));
        spec.r = Some(IntRange::List(vec![1]));
        spec.p = Some(IntRange::List(vec![1]));
        let report = run_grid(&spec, Identity::Prop2, Some(2)).unwrap();
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.summary.pass, 5);
    }

    #[test]
    fn mutation_hook_flips_exactly_one_case() {
        let mut spec = GridSpec::acceptance(Identity::Mult);
        spec.m = Some((1..=3).into());
        spec.n = Some((1..=3).into());
        spec.perturb_case = Some(4);
        let report = run_grid(&spec, Identity::Mult, None).unwrap();
        let failed: Vec<usize> = report
            .cases
            .iter()
            .enumerate()
            .filter(|(_, c)| c.status == Status::Fail)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(failed, vec![4]);
    }

    #[test]
    fn json_ranges() {
        let spec = GridSpec::from_json(r#"{"n": {"from": 2, "to": 4}, "r": [0, 1]}"#).unwrap();
        assert_eq!(spec.n.unwrap().values(), vec![2, 3, 4]);
        assert_eq!(spec.order, 8);
        assert!(GridSpec::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn section4_filters_pairs() {
        let cases = GridSpec::acceptance(Identity::Section4).cases(Identity::Section4).unwrap();
        assert_eq!(cases.len(), 5 * 4 * 3 * 2);
    }
}
