//! Monte Carlo verification harness for the gap formulas.
//!
//! A regression task draws X with n i.i.d. N(0, σ_X² I_d) rows and labels
//! Y = XΘ + Ξ with an equivariant Θ and i.i.d. N(0, σ_ξ²) noise entries,
//! fits the minimum-norm least-squares estimate W = X⁺Y, and measures the
//! exact conditional generalisation gap σ_X²‖Ψ⊥(W)‖²_F between the fit and
//! its intertwining average — no test-set sampling. The module also hosts
//! the independent oracles for the pseudo-inverse Wishart expectations and
//! the Grassmannian projection second moment, and the Rademacher-complexity
//! sandwich experiment for feature-averaged linear classes.
//!
//! Reproducibility: per-trial generators are split from the master seed by a
//! counter (one ChaCha stream per trial), and reductions accumulate in trial
//! order, so identical configurations produce bit-identical reports whether
//! or not trials run in parallel.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{CoreError, Result};
use crate::group::Representation;
use crate::stats::{median, MeanStderr};
use crate::symmetrize::{
    build_intertwiner_projector, build_vector_averager, character_inner_product, j_matrix,
    IntertwinerProjector,
};
use crate::theory::{self, GapPrediction, GapValue, Regime};

/// Per-trial generator: stream `index + 1` of the master-seeded ChaCha
/// generator. Trials are independent of each other and of stream 0, which
/// is reserved for task-level sampling (e.g. the target Θ).
pub fn trial_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index + 1);
    rng
}

fn gaussian_matrix<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    sigma: f64,
    rng: &mut R,
) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| sigma * rng.sample::<f64, _>(StandardNormal))
}

// ---------------------------------------------------------------------------
// Tasks

/// A sampled equivariant regression problem.
#[derive(Debug, Clone)]
pub struct RegressionTask {
    pub n: usize,
    pub sigma_x: f64,
    pub sigma_xi: f64,
    pub theta: DMatrix<f64>,
    pub phi: Representation,
    pub psi: Representation,
    pub seed: u64,
}

impl RegressionTask {
    /// Validates shapes, scales and that Θ intertwines ψ → φ (relative
    /// anti-symmetric norm at most 1e-8, the theorem's hypothesis).
    pub fn new(
        n: usize,
        sigma_x: f64,
        sigma_xi: f64,
        theta: DMatrix<f64>,
        phi: Representation,
        psi: Representation,
        seed: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::InvalidExperiment("n must be positive".into()));
        }
        if sigma_x <= 0.0 || sigma_x.is_nan() || sigma_xi < 0.0 || sigma_xi.is_nan() {
            return Err(CoreError::InvalidExperiment(
                "need sigma_x > 0 and sigma_xi >= 0".into(),
            ));
        }
        let proj = build_intertwiner_projector(&phi, &psi)?;
        let rel = proj.complement(&theta)?.norm() / theta.norm().max(1.0);
        if rel > 1e-8 {
            return Err(CoreError::NotEquivariant(rel));
        }
        Ok(RegressionTask { n, sigma_x, sigma_xi, theta, phi, psi, seed })
    }

    pub fn d(&self) -> usize {
        self.phi.dim()
    }

    pub fn k(&self) -> usize {
        self.psi.dim()
    }

    /// Same task at a different sample count (Θ unchanged, so the
    /// equivariance hypothesis needs no re-validation).
    pub fn with_n(&self, n: usize) -> Self {
        let mut t = self.clone();
        t.n = n;
        t
    }
}

/// Draws an intertwining target by projecting a Gaussian matrix with Ψ_G
/// and rescaling to the requested Frobenius norm. Errors when dim S = 0
/// (no equivariant target exists).
pub fn sample_equivariant_target<R: Rng + ?Sized>(
    phi: &Representation,
    psi: &Representation,
    scale: f64,
    rng: &mut R,
) -> Result<DMatrix<f64>> {
    if scale <= 0.0 || scale.is_nan() {
        return Err(CoreError::InvalidExperiment("scale must be positive".into()));
    }
    let proj = build_intertwiner_projector(phi, psi)?;
    if proj.dim_s() < 0.5 {
        return Err(CoreError::NoEquivariantTarget);
    }
    for _ in 0..16 {
        let raw = gaussian_matrix(phi.dim(), psi.dim(), 1.0, rng);
        let projected = proj.project(&raw)?;
        let norm = projected.norm();
        if norm > 1e-8 {
            return Ok(projected * (scale / norm));
        }
    }
    Err(CoreError::NoEquivariantTarget)
}

// ---------------------------------------------------------------------------
// Least squares

/// Minimum-Frobenius-norm solution W = X⁺Y of the least-squares problem
/// min ‖Y − XU‖_F, via singular value decomposition. Singular values below
/// max(n, d)·ε·σ_max are treated as zero; Gaussian inputs are full rank
/// almost surely, so the cutoff only guards degenerate configurations.
pub fn min_norm_least_squares(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(x.nrows(), y.nrows(), "X and Y must have matching row counts");
    let (n, d) = x.shape();
    let svd = x.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let sigma = &svd.singular_values;
    let cutoff = n.max(d) as f64 * f64::EPSILON * sigma.max();
    let mut uty = u.transpose() * y;
    for i in 0..sigma.len() {
        let inv = if sigma[i] > cutoff { 1.0 / sigma[i] } else { 0.0 };
        for v in uty.row_mut(i).iter_mut() {
            *v *= inv;
        }
    }
    v_t.transpose() * uty
}

/// The exact conditional gap Δ(f_W, f_W̄) = σ_X² ‖Ψ⊥(W)‖²_F for isotropic
/// inputs (Σ = σ_X² I).
pub fn empirical_gap(
    w: &DMatrix<f64>,
    proj: &IntertwinerProjector,
    sigma_x: f64,
) -> Result<f64> {
    Ok(sigma_x * sigma_x * proj.complement(w)?.norm_squared())
}

// ---------------------------------------------------------------------------
// Experiments

/// One sweep point of a gap experiment.
#[derive(Debug, Clone)]
pub struct ExperimentRow {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub trials: usize,
    pub empirical_gap_mean: f64,
    pub empirical_gap_stderr: f64,
    /// Threshold-regime rows are summarised by the median: the mean diverges
    /// there, so acceptance at the threshold is ordinal, never numeric.
    pub empirical_gap_median: f64,
    pub predicted_gap: GapValue,
    pub regime: Regime,
    pub noiseless_term: f64,
    pub noise_term: GapValue,
    pub wall_time_s: f64,
}

impl ExperimentRow {
    /// 3-standard-error agreement with the prediction; `None` at the
    /// threshold, where the prediction is the divergence marker.
    pub fn passes_3se(&self) -> Option<bool> {
        self.predicted_gap
            .finite()
            .map(|p| (self.empirical_gap_mean - p).abs() <= 3.0 * self.empirical_gap_stderr)
    }
}

/// A gap sweep: one row per sample count, plus the task metadata.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
    pub seed: u64,
    pub group: String,
    pub phi: String,
    pub psi: String,
    pub trials: usize,
}

fn run_point(
    task: &RegressionTask,
    trials: usize,
    proj: &IntertwinerProjector,
    prediction: GapPrediction,
    stream_offset: u64,
) -> Result<ExperimentRow> {
    if trials < 2 {
        return Err(CoreError::InvalidExperiment("need at least 2 trials".into()));
    }
    let start = Instant::now();
    let (n, d, k) = (task.n, task.d(), task.k());
    let mut gaps = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = trial_rng(task.seed, stream_offset + t as u64);
        let x = gaussian_matrix(n, d, task.sigma_x, &mut rng);
        let xi = gaussian_matrix(n, k, task.sigma_xi, &mut rng);
        let y = &x * &task.theta + xi;
        let w = min_norm_least_squares(&x, &y);
        gaps.push(empirical_gap(&w, proj, task.sigma_x)?);
    }
    let stats = MeanStderr::from_values(&gaps);
    Ok(ExperimentRow {
        n,
        d,
        k,
        trials,
        empirical_gap_mean: stats.mean,
        empirical_gap_stderr: stats.stderr,
        empirical_gap_median: median(&gaps),
        predicted_gap: prediction.value,
        regime: prediction.regime,
        noiseless_term: prediction.noiseless_term,
        noise_term: prediction.noise_term,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn task_prediction(
    task: &RegressionTask,
    dim_s: f64,
    tr_j_theta: f64,
) -> GapPrediction {
    theory::predicted_gap_equivariant_from_parts(
        task.n,
        task.d(),
        task.k(),
        task.sigma_x,
        task.sigma_xi,
        task.theta.norm_squared(),
        dim_s,
        tr_j_theta,
    )
}

/// Runs `trials` independent draws of the task and reports the empirical
/// gap mean, standard error and median against the theoretical prediction.
/// Threshold-regime tasks run but the prediction carries the divergence
/// marker.
pub fn run_gap_experiment(task: &RegressionTask, trials: usize) -> Result<ExperimentRow> {
    let proj = build_intertwiner_projector(&task.phi, &task.psi)?;
    let dim_s = character_inner_product(&task.phi, &task.psi)?;
    let j = j_matrix(&task.phi, &task.psi)?;
    let tr_j_theta = (j * (task.theta.transpose() * &task.theta)).trace();
    run_point(task, trials, &proj, task_prediction(task, dim_s, tr_j_theta), 0)
}

/// Sweeps the sample count, reusing the projector and group invariants
/// across points. Trial streams are disjoint across points.
pub fn sweep_over_n(
    template: &RegressionTask,
    n_values: &[usize],
    trials: usize,
) -> Result<ExperimentReport> {
    let proj = build_intertwiner_projector(&template.phi, &template.psi)?;
    let dim_s = character_inner_product(&template.phi, &template.psi)?;
    let j = j_matrix(&template.phi, &template.psi)?;
    let tr_j_theta = (j * (template.theta.transpose() * &template.theta)).trace();
    let mut rows = Vec::with_capacity(n_values.len());
    for (i, &n) in n_values.iter().enumerate() {
        let task = template.with_n(n);
        let prediction = task_prediction(&task, dim_s, tr_j_theta);
        rows.push(run_point(&task, trials, &proj, prediction, (i * trials) as u64)?);
    }
    Ok(ExperimentReport {
        rows,
        seed: template.seed,
        group: template.phi.group().to_string(),
        phi: template.phi.name().to_string(),
        psi: template.psi.name().to_string(),
        trials,
    })
}

// ---------------------------------------------------------------------------
// Appendix oracles

/// Monte Carlo estimate of E[(XᵀX)⁺] for X with i.i.d. N(0,1) entries,
/// against the closed form r(n, d)·I.
#[derive(Debug, Clone)]
pub struct WishartOracle {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub mean: DMatrix<f64>,
    pub entry_stderr: DMatrix<f64>,
    /// Per-trial tr((XᵀX)⁺)/d: the best-fit scalar multiple of the identity.
    pub fitted_scalar: MeanStderr,
    pub expected_scalar: GapValue,
    /// ‖mean − r(n,d)·I‖_max when the expectation is finite.
    pub max_abs_dev: Option<f64>,
}

impl WishartOracle {
    /// Largest |mean_ij| / stderr_ij over off-diagonal entries.
    pub fn max_offdiag_z(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.d {
            for j in 0..self.d {
                if i != j && self.entry_stderr[(i, j)] > 0.0 {
                    worst = worst.max(self.mean[(i, j)].abs() / self.entry_stderr[(i, j)]);
                }
            }
        }
        worst
    }
}

/// Pseudo-inverse of the Gram matrix XᵀX from a thin SVD of X.
fn gram_pseudoinverse(x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, d) = x.shape();
    let svd = x.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let sigma = &svd.singular_values;
    let cutoff = n.max(d) as f64 * f64::EPSILON * sigma.max();
    let mut out = DMatrix::<f64>::zeros(d, d);
    for i in 0..sigma.len() {
        if sigma[i] > cutoff {
            let vi = v_t.row(i).transpose();
            out += &vi * vi.transpose() / (sigma[i] * sigma[i]);
        }
    }
    out
}

/// Rank projection P_E = (XᵀX)⁺(XᵀX): projection onto the row space of X.
fn rank_projection(x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, d) = x.shape();
    let svd = x.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let sigma = &svd.singular_values;
    let cutoff = n.max(d) as f64 * f64::EPSILON * sigma.max();
    let mut out = DMatrix::<f64>::zeros(d, d);
    for i in 0..sigma.len() {
        if sigma[i] > cutoff {
            let vi = v_t.row(i).transpose();
            out += &vi * vi.transpose();
        }
    }
    out
}

/// Estimates E[(XᵀX)⁺] over `trials` draws and fits the scalar multiple of
/// the identity. The fitted-constant comparison needs n outside the
/// threshold band [d−1, d+1], where the expectation diverges.
pub fn wishart_pseudoinverse_oracle(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<WishartOracle> {
    if trials < 2 || n == 0 || d == 0 {
        return Err(CoreError::InvalidExperiment(
            "need n, d >= 1 and at least 2 trials".into(),
        ));
    }
    let mut sum = DMatrix::<f64>::zeros(d, d);
    let mut sumsq = DMatrix::<f64>::zeros(d, d);
    let mut scalars = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let x = gaussian_matrix(n, d, 1.0, &mut rng);
        let p = gram_pseudoinverse(&x);
        scalars.push(p.trace() / d as f64);
        sum += &p;
        sumsq += p.map(|v| v * v);
    }
    let tn = trials as f64;
    let mean = &sum / tn;
    let entry_stderr = DMatrix::from_fn(d, d, |i, j| {
        let var = (sumsq[(i, j)] - sum[(i, j)] * sum[(i, j)] / tn) / (tn - 1.0);
        (var.max(0.0) / tn).sqrt()
    });
    let expected = theory::r_factor(n, d).value;
    let max_abs_dev = expected.finite().map(|r| {
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { r } else { 0.0 };
                worst = worst.max((mean[(i, j)] - target).abs());
            }
        }
        worst
    });
    Ok(WishartOracle {
        n,
        d,
        trials,
        mean,
        entry_stderr,
        fitted_scalar: MeanStderr::from_values(&scalars),
        expected_scalar: expected,
        max_abs_dev,
    })
}

/// Monte Carlo estimate of E[P_E ⊗ P_E] for uniformly random n-dimensional
/// subspaces E of R^d (realised as row spaces of Gaussian matrices), with
/// the isotropic-form fit (α, β, γ).
#[derive(Debug, Clone)]
pub struct ProjectionMomentOracle {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    /// Row-major d×d×d×d estimate of E[P ⊗ P]_abce = E[P_ab P_ce].
    pub mean_tensor: Vec<f64>,
    pub stderr_tensor: Vec<f64>,
    /// Statistical estimators from off-diagonal entry classes, with errors:
    /// α from P_aa P_cc (a≠c), β from P_ab² (a≠b), γ from P_ab P_ba (a≠b).
    pub alpha: MeanStderr,
    pub beta: MeanStderr,
    pub gamma: MeanStderr,
    /// Least-squares fit of the isotropic form to the mean tensor. Its
    /// normal equations involve only the contractions tr(P)², ‖P‖²_F and
    /// tr(P²), which are n², n, n exactly for every sample, so this fit
    /// reproduces the closed form up to floating-point error.
    pub ls_fit: (f64, f64, f64),
    pub closed_form: (f64, f64, f64),
    /// Largest per-sample |tr(P)² − n²| observed.
    pub max_tr_sq_dev: f64,
}

/// Closed forms of Lemma-type projection moments:
/// β = γ = n(d−n)/(d(d−1)(d+2)), α = β + n(n−1)/(d(d−1)).
pub fn projection_moment_closed_form(n: usize, d: usize) -> (f64, f64, f64) {
    let (nf, df) = (n as f64, d as f64);
    let beta = nf * (df - nf) / (df * (df - 1.0) * (df + 2.0));
    let alpha = beta + nf * (nf - 1.0) / (df * (df - 1.0));
    (alpha, beta, beta)
}

/// Runs the projection second-moment oracle; requires 0 < n < d.
pub fn projection_moment_oracle(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<ProjectionMomentOracle> {
    if n == 0 || n >= d {
        return Err(CoreError::InvalidExperiment(format!(
            "projection moment oracle needs 0 < n < d, got n={n} d={d}"
        )));
    }
    if trials < 2 {
        return Err(CoreError::InvalidExperiment("need at least 2 trials".into()));
    }
    let len = d * d * d * d;
    let mut sum = vec![0.0f64; len];
    let mut sumsq = vec![0.0f64; len];
    let mut alphas = Vec::with_capacity(trials);
    let mut betas = Vec::with_capacity(trials);
    let mut gammas = Vec::with_capacity(trials);
    let mut max_tr_sq_dev: f64 = 0.0;
    let nf = n as f64;
    let pairs = (d * (d - 1)) as f64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let x = gaussian_matrix(n, d, 1.0, &mut rng);
        let p = rank_projection(&x);
        max_tr_sq_dev = max_tr_sq_dev.max((p.trace().powi(2) - nf * nf).abs());
        let (mut a_acc, mut b_acc, mut g_acc) = (0.0, 0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    a_acc += p[(i, i)] * p[(j, j)];
                    b_acc += p[(i, j)] * p[(i, j)];
                    g_acc += p[(i, j)] * p[(j, i)];
                }
            }
        }
        alphas.push(a_acc / pairs);
        betas.push(b_acc / pairs);
        gammas.push(g_acc / pairs);
        let mut idx = 0usize;
        for a in 0..d {
            for b in 0..d {
                let pab = p[(a, b)];
                for c in 0..d {
                    for e in 0..d {
                        let v = pab * p[(c, e)];
                        sum[idx] += v;
                        sumsq[idx] += v * v;
                        idx += 1;
                    }
                }
            }
        }
    }
    let tn = trials as f64;
    let mean_tensor: Vec<f64> = sum.iter().map(|s| s / tn).collect();
    let stderr_tensor: Vec<f64> = sum
        .iter()
        .zip(&sumsq)
        .map(|(s, sq)| {
            let var = (sq - s * s / tn) / (tn - 1.0);
            (var.max(0.0) / tn).sqrt()
        })
        .collect();

    // Contract the mean tensor and solve the isotropic-form normal
    // equations  [d² d d; d d² d; d d d²] (α β γ)ᵀ = (Γ_aabb, Γ_abab, Γ_abba).
    let at = |a: usize, b: usize, c: usize, e: usize| mean_tensor[((a * d + b) * d + c) * d + e];
    let (mut c1, mut c2, mut c3) = (0.0, 0.0, 0.0);
    for a in 0..d {
        for b in 0..d {
            c1 += at(a, a, b, b);
            c2 += at(a, b, a, b);
            c3 += at(a, b, b, a);
        }
    }
    let df = d as f64;
    let gram = DMatrix::from_row_slice(
        3,
        3,
        &[df * df, df, df, df, df * df, df, df, df, df * df],
    );
    let rhs = DVector::from_column_slice(&[c1, c2, c3]);
    let fit = gram.lu().solve(&rhs).expect("Gram matrix is invertible for d ≥ 2");

    Ok(ProjectionMomentOracle {
        n,
        d,
        trials,
        mean_tensor,
        stderr_tensor,
        alpha: MeanStderr::from_values(&alphas),
        beta: MeanStderr::from_values(&betas),
        gamma: MeanStderr::from_values(&gammas),
        ls_fit: (fit[0], fit[1], fit[2]),
        closed_form: projection_moment_closed_form(n, d),
        max_tr_sq_dev,
    })
}

// ---------------------------------------------------------------------------
// Rademacher complexity

/// Empirical Rademacher complexities of the norm-ball linear class, its
/// feature-averaged class and the anti-symmetric class.
#[derive(Debug, Clone)]
pub struct RademacherExperiment {
    pub full: MeanStderr,
    pub averaged: MeanStderr,
    pub complement: MeanStderr,
    /// Per-dataset ℜ(F) − ℜ(F̄); nonnegative pointwise.
    pub reduction: MeanStderr,
    /// Per-dataset ℜ(F⊥) − (ℜ(F) − ℜ(F̄)); nonnegative pointwise.
    pub slack: MeanStderr,
}

impl RademacherExperiment {
    /// 0 ≤ ℜ(F) − ℜ(F̄) ≤ ℜ(F⊥) within k standard errors.
    pub fn sandwich_holds(&self, k: f64) -> bool {
        self.reduction.mean >= -k * self.reduction.stderr
            && self.slack.mean >= -k * self.slack.stderr
    }
}

/// Estimates ℜ_n for the class {x ↦ wᵀx : ‖w‖ ≤ radius} and its averaged
/// and anti-symmetric versions under Φ_G. For norm balls the supremum is
/// closed-form: sup |wᵀv| = radius·‖v‖ with v = (1/n)Σ σᵢxᵢ, and the
/// projected v for the derived classes. Averages over `mc_sigma` sign draws
/// per dataset and `mc_data` Gaussian datasets; standard errors are taken
/// across datasets.
pub fn rademacher_experiment(
    radius: f64,
    phi: &Representation,
    n: usize,
    mc_sigma: usize,
    mc_data: usize,
    seed: u64,
) -> Result<RademacherExperiment> {
    if radius <= 0.0 || radius.is_nan() || n == 0 || mc_sigma == 0 || mc_data < 2 {
        return Err(CoreError::InvalidExperiment(
            "need radius > 0, n ≥ 1, mc_sigma ≥ 1, mc_data ≥ 2".into(),
        ));
    }
    let d = phi.dim();
    let averager = build_vector_averager(phi);
    let mut f_full = Vec::with_capacity(mc_data);
    let mut f_avg = Vec::with_capacity(mc_data);
    let mut f_perp = Vec::with_capacity(mc_data);
    for j in 0..mc_data {
        let mut rng = trial_rng(seed, j as u64);
        let xs = gaussian_matrix(n, d, 1.0, &mut rng);
        let (mut sf, mut sa, mut sp) = (0.0, 0.0, 0.0);
        for _ in 0..mc_sigma {
            let mut v = DVector::<f64>::zeros(d);
            for i in 0..n {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                v += xs.row(i).transpose() * sign;
            }
            v /= n as f64;
            let bar = averager.apply(&v);
            sf += radius * v.norm();
            sa += radius * bar.norm();
            sp += radius * (v - bar).norm();
        }
        let m = mc_sigma as f64;
        f_full.push(sf / m);
        f_avg.push(sa / m);
        f_perp.push(sp / m);
    }
    let reduction: Vec<f64> = f_full.iter().zip(&f_avg).map(|(f, a)| f - a).collect();
    let slack: Vec<f64> =
        f_perp.iter().zip(&reduction).map(|(p, r)| p - r).collect();
    Ok(RademacherExperiment {
        full: MeanStderr::from_values(&f_full),
        averaged: MeanStderr::from_values(&f_avg),
        complement: MeanStderr::from_values(&f_perp),
        reduction: MeanStderr::from_values(&reduction),
        slack: MeanStderr::from_values(&slack),
    })
}
