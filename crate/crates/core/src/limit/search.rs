use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::curvature::is_flat;
use crate::lattice::BoostVector;
use crate::metric::{FullMetric, MetricFile, Point};

use super::{pullback_limit, LimitError, LimitOutcome};

pub const MAX_SEARCH_DEPTH: usize = 6;
pub const MAX_SEARCH_ENTRY: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VsiStep {
    pub boost: BoostVector,
    pub metric: FullMetric,
}

/// Chain of converged limits ending in a flat metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VsiCertificate {
    pub point: Point,
    pub steps: Vec<VsiStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VsiOutcome {
    Certificate(VsiCertificate),
    /// Inconclusive: no chain within the bounds.
    NotFound {
        nodes: usize,
    },
}

impl VsiOutcome {
    pub fn certificate(&self) -> Option<&VsiCertificate> {
        match self {
            VsiOutcome::Certificate(c) => Some(c),
            VsiOutcome::NotFound { .. } => None,
        }
    }
}

/// Primitive non-zero vectors in `[0, max_entry]^k`, lexicographic.
pub fn candidate_boosts(k: usize, max_entry: u32) -> Vec<BoostVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    loop {
        let g = cur.iter().fold(0u32, |a, &b| a.gcd(&b));
        if g == 1 {
            out.push(BoostVector::new(cur.clone()));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max_entry {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

struct Search<'a> {
    point: &'a Point,
    candidates: Vec<BoostVector>,
    /// Largest remaining depth known to fail from a metric.
    failed: HashMap<FullMetric, usize>,
    nodes: usize,
}

impl Search<'_> {
    fn dfs(
        &mut self,
        g: &FullMetric,
        depth: usize,
        path: &mut Vec<VsiStep>,
    ) -> Result<bool, LimitError> {
        self.nodes += 1;
        if g.is_constant() {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        if self.failed.get(g).is_some_and(|&d| d >= depth) {
            return Ok(false);
        }
        let count = g.term_count();
        for idx in 0..self.candidates.len() {
            let b = self.candidates[idx].clone();
            let lim = pullback_limit(g, &b, self.point)?;
            let LimitOutcome::Converged(next) = lim.outcome else {
                continue;
            };
            if next.term_count() >= count {
                continue;
            }
            path.push(VsiStep {
                boost: b,
                metric: next.clone(),
            });
            if self.dfs(&next, depth - 1, path)? {
                return Ok(true);
            }
            path.pop();
        }
        let entry = self.failed.entry(g.clone()).or_insert(0);
        *entry = (*entry).max(depth);
        Ok(false)
    }
}

/// Searches for a chain of boost limits from `g` to a flat metric, by
/// iterative deepening so the shortest chain (first in lexicographic
/// candidate order) is returned.
pub fn vsi_search(
    g: &FullMetric,
    max_depth: usize,
    max_entry: u32,
    point: &Point,
) -> Result<VsiOutcome, LimitError> {
    if max_depth > MAX_SEARCH_DEPTH || max_entry > MAX_SEARCH_ENTRY || max_entry == 0 {
        return Err(LimitError::SearchBounds {
            max_depth,
            max_entry,
        });
    }
    if !point.v_is_zero(g.coords()) {
        return Err(LimitError::NonZeroVBasePoint);
    }
    if is_flat(g)? {
        return Ok(VsiOutcome::Certificate(VsiCertificate {
            point: point.clone(),
            steps: Vec::new(),
        }));
    }
    let mut search = Search {
        point,
        candidates: candidate_boosts(g.coords().k(), max_entry),
        failed: HashMap::new(),
        nodes: 0,
    };
    for depth in 1..=max_depth {
        let mut path = Vec::new();
        if search.dfs(g, depth, &mut path)? {
            let last = &path.last().expect("non-empty chain").metric;
            if !is_flat(last)? {
                return Err(LimitError::EndpointNotFlat);
            }
            return Ok(VsiOutcome::Certificate(VsiCertificate {
                point: point.clone(),
                steps: path,
            }));
        }
    }
    Ok(VsiOutcome::NotFound {
        nodes: search.nodes,
    })
}

/// Outcome of independently recomputing a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub steps_ok: Vec<bool>,
    pub endpoint_flat: bool,
    pub valid: bool,
}

/// Recomputes every step and the flatness of the endpoint.
pub fn replay(g: &FullMetric, cert: &VsiCertificate) -> Result<ReplayReport, LimitError> {
    let mut cur = g.clone();
    let mut steps_ok = Vec::with_capacity(cert.steps.len());
    for step in &cert.steps {
        let lim = pullback_limit(&cur, &step.boost, &cert.point)?;
        let ok = match &lim.outcome {
            LimitOutcome::Converged(next) => {
                next == &step.metric && next.term_count() < cur.term_count()
            }
            _ => false,
        };
        steps_ok.push(ok);
        cur = step.metric.clone();
    }
    let endpoint_flat = is_flat(&cur)?;
    Ok(ReplayReport {
        valid: endpoint_flat && steps_ok.iter().all(|&b| b),
        steps_ok,
        endpoint_flat,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub boost: BoostVector,
    pub metric: MetricFile,
}

/// `{"steps":[{"boost":[..],"metric":{..}},..],"flat":true}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub steps: Vec<StepJson>,
    pub flat: bool,
}

impl CertificateJson {
    pub fn from_certificate(cert: &VsiCertificate) -> Result<Self, LimitError> {
        let steps = cert
            .steps
            .iter()
            .map(|s| {
                Ok(StepJson {
                    boost: s.boost.clone(),
                    metric: MetricFile::from_canonical(&s.metric.to_canonical()?),
                })
            })
            .collect::<Result<Vec<_>, LimitError>>()?;
        let flat = match cert.steps.last() {
            Some(s) => is_flat(&s.metric)?,
            None => true,
        };
        Ok(Self { steps, flat })
    }

    pub fn to_certificate(&self, point: &Point) -> Result<VsiCertificate, LimitError> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let cm = s.metric.to_canonical()?;
                Ok(VsiStep {
                    boost: s.boost.clone(),
                    metric: crate::metric::assemble(&cm)?,
                })
            })
            .collect::<Result<Vec<_>, LimitError>>()?;
        Ok(VsiCertificate {
            point: point.clone(),
            steps,
        })
    }
}
