//! Incremental test-set construction over a finite candidate set.
//!
//! Three greedy constructions are provided, each resumable from a fixed
//! pre-existing design: greedy packing with boundary reflection (FSSF-fr),
//! greedy support points under the energy-distance kernel, and kernel
//! herding. Every method keeps per-candidate running statistics so one
//! selection step costs O(|candidates|).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;

use crate::discrepancy::{DiscrepancyError, Potential};
use crate::kernels::{KernelError, KernelSpec};
use crate::measures::{dist, MeasureError, PointSet, TargetMeasure};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMethod {
    FssfFr,
    SupportPoints,
    KernelHerding,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SelectionError {
    Exhausted,
    DomainViolation(String),
    DimensionMismatch { expected: usize, got: usize },
    Unsupported(String),
    TooMany { requested: usize, available: usize },
}

impl core::fmt::Display for SelectionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SelectionError::Exhausted => write!(f, "no unselected candidate remains"),
            SelectionError::DomainViolation(s) => write!(f, "domain violation: {s}"),
            SelectionError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SelectionError::Unsupported(s) => write!(f, "unsupported: {s}"),
            SelectionError::TooMany { requested, available } => {
                write!(f, "requested {requested} points but only {available} candidates remain")
            }
        }
    }
}

impl From<DiscrepancyError> for SelectionError {
    fn from(e: DiscrepancyError) -> Self {
        SelectionError::Unsupported(format!("{e}"))
    }
}

impl From<KernelError> for SelectionError {
    fn from(e: KernelError) -> Self {
        SelectionError::Unsupported(format!("{e}"))
    }
}

impl From<MeasureError> for SelectionError {
    fn from(e: MeasureError) -> Self {
        SelectionError::Unsupported(format!("{e}"))
    }
}

/// Doubled distance to the nearest face of the unit cube: the distance from
/// `x` to its reflection across that face.
pub fn reflection_distance(x: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for &v in x {
        best = best.min(v).min(1.0 - v);
    }
    2.0 * best
}

#[derive(Debug, Clone)]
enum Scratch {
    Fssf {
        /// Min distance to selected and fixed points; infinity while empty.
        min_dist: Vec<f64>,
        /// Boundary criterion per candidate, factor included.
        boundary: Vec<f64>,
    },
    Support {
        /// Mean distance to the target-measure sample.
        mean_dist_target: Vec<f64>,
        /// Running sum of distances to selected (and optionally fixed) points.
        sum_dist_sel: Vec<f64>,
        /// Whether the fixed design enters the running sum and the `1/(i+1)`
        /// count.
        include_fixed: bool,
    },
    Herding {
        kernel: KernelSpec,
        /// Running sum of kernel values against selected and fixed points.
        sum_k_sel: Vec<f64>,
        /// Target potential per candidate.
        p_mu: Vec<f64>,
    },
}

/// State of an incremental selection; single-owner mutable.
#[derive(Debug, Clone)]
pub struct SelectionState {
    method: SelectionMethod,
    candidates: PointSet,
    fixed: PointSet,
    selected: Vec<usize>,
    /// Candidates coinciding with a fixed point are never eligible.
    blocked: Vec<bool>,
    scratch: Scratch,
    rng: Rng,
}

impl SelectionState {
    fn base_checks(candidates: &PointSet, fixed: &PointSet) -> Result<(), SelectionError> {
        if !fixed.is_empty() && fixed.dim() != candidates.dim() {
            return Err(SelectionError::DimensionMismatch {
                expected: candidates.dim(),
                got: fixed.dim(),
            });
        }
        Ok(())
    }

    fn blocked_mask(candidates: &PointSet, fixed: &PointSet) -> Vec<bool> {
        candidates
            .rows()
            .map(|c| fixed.rows().any(|fx| dist(c, fx) <= 1e-12))
            .collect()
    }

    /// FSSF-fr state. Candidates must live in the unit cube; the criterion's
    /// boundary factor defaults to `sqrt(2) * d` when `boundary_factor` is
    /// `None`.
    pub fn fssf(
        candidates: PointSet,
        fixed: PointSet,
        boundary_factor: Option<f64>,
        seed: u64,
    ) -> Result<Self, SelectionError> {
        Self::base_checks(&candidates, &fixed)?;
        let d = candidates.dim();
        for (i, r) in candidates.rows().enumerate() {
            if r.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Err(SelectionError::DomainViolation(format!(
                    "candidate {i} outside the unit cube; apply the isoprobabilistic transform \
                     after selection"
                )));
            }
        }
        let factor = boundary_factor.unwrap_or(sqrt(2.0) * d as f64);
        let boundary = candidates.rows().map(|r| factor * reflection_distance(r)).collect();
        let mut min_dist = vec![f64::INFINITY; candidates.len()];
        for fx in fixed.rows() {
            for (c, md) in candidates.rows().zip(min_dist.iter_mut()) {
                *md = md.min(dist(c, fx));
            }
        }
        let blocked = Self::blocked_mask(&candidates, &fixed);
        Ok(SelectionState {
            method: SelectionMethod::FssfFr,
            scratch: Scratch::Fssf { min_dist, boundary },
            rng: Rng::new(seed),
            selected: Vec::new(),
            blocked,
            candidates,
            fixed,
        })
    }

    /// Greedy support-points state. The first criterion term averages
    /// distances over `target_sample` (the candidate set itself when `None`).
    /// The fixed design enters the running second sum.
    pub fn support_points(
        candidates: PointSet,
        fixed: PointSet,
        target_sample: Option<&PointSet>,
    ) -> Result<Self, SelectionError> {
        Self::support_points_with_options(candidates, fixed, target_sample, true)
    }

    /// Support-points state with an explicit choice of whether the fixed
    /// design contributes to the criterion's second sum.
    pub fn support_points_with_options(
        candidates: PointSet,
        fixed: PointSet,
        target_sample: Option<&PointSet>,
        include_fixed: bool,
    ) -> Result<Self, SelectionError> {
        Self::base_checks(&candidates, &fixed)?;
        let target = target_sample.unwrap_or(&candidates);
        if target.dim() != candidates.dim() {
            return Err(SelectionError::DimensionMismatch {
                expected: candidates.dim(),
                got: target.dim(),
            });
        }
        let inv_n = 1.0 / target.len() as f64;
        // Streaming pass over the target sample; no pairwise matrix is stored.
        let mean_dist_target: Vec<f64> = candidates
            .rows()
            .map(|c| target.rows().map(|t| dist(c, t)).sum::<f64>() * inv_n)
            .collect();
        let sum_dist_sel: Vec<f64> = if include_fixed {
            candidates
                .rows()
                .map(|c| fixed.rows().map(|fx| dist(c, fx)).sum::<f64>())
                .collect()
        } else {
            vec![0.0; candidates.len()]
        };
        let blocked = Self::blocked_mask(&candidates, &fixed);
        Ok(SelectionState {
            method: SelectionMethod::SupportPoints,
            scratch: Scratch::Support { mean_dist_target, sum_dist_sel, include_fixed },
            rng: Rng::new(0),
            selected: Vec::new(),
            blocked,
            candidates,
            fixed,
        })
    }

    /// Kernel-herding state against a target potential.
    pub fn herding(
        candidates: PointSet,
        fixed: PointSet,
        potential: &Potential,
    ) -> Result<Self, SelectionError> {
        Self::base_checks(&candidates, &fixed)?;
        let kernel = potential.kernel().clone();
        if !kernel.is_positive_definite() {
            return Err(SelectionError::Unsupported(
                "herding requires a positive-definite kernel; use support points for the \
                 energy-distance geometry"
                    .into(),
            ));
        }
        if kernel.dim() != candidates.dim() {
            return Err(SelectionError::DimensionMismatch {
                expected: candidates.dim(),
                got: kernel.dim(),
            });
        }
        let mut p_mu = Vec::with_capacity(candidates.len());
        for c in candidates.rows() {
            p_mu.push(potential.eval(c)?);
        }
        let sum_k_sel: Vec<f64> = candidates
            .rows()
            .map(|c| fixed.rows().map(|fx| kernel.eval(c, fx)).sum::<f64>())
            .collect();
        let blocked = Self::blocked_mask(&candidates, &fixed);
        Ok(SelectionState {
            method: SelectionMethod::KernelHerding,
            scratch: Scratch::Herding { kernel, sum_k_sel, p_mu },
            rng: Rng::new(0),
            selected: Vec::new(),
            blocked,
            candidates,
            fixed,
        })
    }

    pub fn method(&self) -> SelectionMethod {
        self.method
    }

    pub fn candidates(&self) -> &PointSet {
        &self.candidates
    }

    pub fn selected_indices(&self) -> &[usize] {
        &self.selected
    }

    pub fn selected_points(&self) -> PointSet {
        self.candidates.select(&self.selected)
    }

    fn is_taken(&self, c: usize) -> bool {
        self.blocked[c] || self.selected.contains(&c)
    }

    fn remaining(&self) -> usize {
        (0..self.candidates.len()).filter(|&c| !self.is_taken(c)).count()
    }

    /// Number of points the incremental measure is currently built on.
    fn occupancy(&self) -> usize {
        self.selected.len() + self.fixed.len()
    }

    /// Criterion value of a candidate at the current state. Larger is better
    /// for FSSF-fr; smaller is better for the MMD methods.
    pub fn score(&self, c: usize) -> f64 {
        match &self.scratch {
            Scratch::Fssf { min_dist, boundary } => min_dist[c].min(boundary[c]),
            Scratch::Support { mean_dist_target, sum_dist_sel, include_fixed } => {
                let i = if *include_fixed {
                    self.occupancy()
                } else {
                    self.selected.len()
                };
                mean_dist_target[c] - sum_dist_sel[c] / (i + 1) as f64
            }
            Scratch::Herding { sum_k_sel, p_mu, .. } => {
                let i = self.occupancy();
                if i == 0 {
                    -p_mu[c]
                } else {
                    sum_k_sel[c] / i as f64 - p_mu[c]
                }
            }
        }
    }

    /// Selects the next point and returns its candidate index.
    ///
    /// Ties are broken by the smallest candidate index. The very first
    /// FSSF-fr point (no fixed design) is drawn uniformly from the
    /// candidates by the seeded generator.
    pub fn next(&mut self) -> Result<usize, SelectionError> {
        let n = self.candidates.len();
        if self.remaining() == 0 {
            return Err(SelectionError::Exhausted);
        }

        let pick = if self.method == SelectionMethod::FssfFr && self.occupancy() == 0 {
            let free: Vec<usize> = (0..n).filter(|&c| !self.is_taken(c)).collect();
            free[self.rng.next_index(free.len())]
        } else {
            let maximize = self.method == SelectionMethod::FssfFr;
            let mut best: Option<(usize, f64)> = None;
            for c in 0..n {
                if self.is_taken(c) {
                    continue;
                }
                let s = self.score(c);
                let better = match best {
                    None => true,
                    Some((_, b)) => {
                        if maximize {
                            s > b
                        } else {
                            s < b
                        }
                    }
                };
                if better {
                    best = Some((c, s));
                }
            }
            best.expect("nonempty candidate set").0
        };

        let new_point = self.candidates.row(pick).to_vec();
        match &mut self.scratch {
            Scratch::Fssf { min_dist, .. } => {
                for (c, md) in self.candidates.rows().zip(min_dist.iter_mut()) {
                    *md = md.min(dist(c, &new_point));
                }
            }
            Scratch::Support { sum_dist_sel, .. } => {
                for (c, s) in self.candidates.rows().zip(sum_dist_sel.iter_mut()) {
                    *s += dist(c, &new_point);
                }
            }
            Scratch::Herding { kernel, sum_k_sel, .. } => {
                for (c, s) in self.candidates.rows().zip(sum_k_sel.iter_mut()) {
                    *s += kernel.eval(c, &new_point);
                }
            }
        }
        self.selected.push(pick);
        Ok(pick)
    }
}

/// Builds the selection state appropriate for `method` against the target
/// measure `mu`.
///
/// For herding the potential is analytic when the kernel/measure pair
/// supports it, otherwise empirical over the atoms of `mu` (or over the
/// candidate set when `mu` has none).
pub fn selection_state(
    method: SelectionMethod,
    candidates: PointSet,
    fixed: PointSet,
    mu: &TargetMeasure,
    kernel: &KernelSpec,
    seed: u64,
) -> Result<SelectionState, SelectionError> {
    match method {
        SelectionMethod::FssfFr => SelectionState::fssf(candidates, fixed, None, seed),
        SelectionMethod::SupportPoints => {
            let target = match mu {
                TargetMeasure::Empirical { points, .. } => Some(points.clone()),
                _ => None,
            };
            SelectionState::support_points(candidates, fixed, target.as_ref())
        }
        SelectionMethod::KernelHerding => {
            let potential = match Potential::analytic(kernel, mu) {
                Ok(p) => p,
                Err(_) => {
                    let sample = match mu {
                        TargetMeasure::Empirical { points, .. } => points.clone(),
                        _ => candidates.clone(),
                    };
                    Potential::empirical(kernel, sample)?
                }
            };
            SelectionState::herding(candidates, fixed, &potential)
        }
    }
}

/// Runs `n` selection steps and returns the ordered selected points.
pub fn select_n(
    method: SelectionMethod,
    n: usize,
    candidates: PointSet,
    fixed: PointSet,
    mu: &TargetMeasure,
    kernel: &KernelSpec,
    seed: u64,
) -> Result<PointSet, SelectionError> {
    let mut state = selection_state(method, candidates, fixed, mu, kernel, seed)?;
    let available = state.remaining();
    if n > available {
        return Err(SelectionError::TooMany { requested: n, available });
    }
    for _ in 0..n {
        state.next()?;
    }
    Ok(state.selected_points())
}
