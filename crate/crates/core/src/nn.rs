//! Feedforward ReLU networks with layer-wise intertwiner structure.
//!
//! A network F(x) = W^L σ(W^{L−1} σ(… σ(W¹x)…)) carries one representation
//! per layer boundary, ψ₁ (the input representation, an aspect of the task)
//! through ψ_{L+1} (the output representation; trivial for invariant heads).
//! Weight W^l maps ψ_l to ψ_{l+1}; when every W^l intertwines
//! (W^l ψ_l(g) = ψ_{l+1}(g) W^l) and the internal representations commute
//! with the activation, the network is exactly equivariant. Internal
//! representations are therefore restricted to permutation representations,
//! which commute with any element-wise non-linearity; construction rejects
//! anything else.
//!
//! Per-layer projectors depend only on the representations and are computed
//! before training. Projected gradient descent applies them after every
//! update, keeping the network exactly equivariant at every iteration; the
//! regularised mode instead descends on Σ_l ‖Ψ⊥(W^l)‖²_F.
//!
//! Biases are omitted and the ReLU subgradient at zero is fixed to zero (a
//! measure-zero event under Gaussian inputs, pinned for determinism). The
//! training loss is mean squared error over the batch.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{CoreError, Result};
use crate::group::Representation;
use crate::stats::MeanStderr;
use crate::symmetrize::{build_intertwiner_projector, mc_average_q, IntertwinerProjector};

fn relu(v: &DVector<f64>) -> DVector<f64> {
    v.map(|x| if x > 0.0 { x } else { 0.0 })
}

/// Architecture plus weights: representations ψ₁..ψ_{L+1} and weight
/// matrices W^l of shape dim(ψ_{l+1}) × dim(ψ_l).
#[derive(Debug, Clone)]
pub struct MlpSpec {
    reps: Vec<Representation>,
    weights: Vec<DMatrix<f64>>,
}

impl MlpSpec {
    pub fn new(reps: Vec<Representation>, weights: Vec<DMatrix<f64>>) -> Result<Self> {
        if reps.len() < 2 {
            return Err(CoreError::InvalidConstruction(
                "need at least an input and an output representation".into(),
            ));
        }
        if weights.len() + 1 != reps.len() {
            return Err(CoreError::InvalidConstruction(format!(
                "{} weight matrices do not fit {} representations",
                weights.len(),
                reps.len()
            )));
        }
        let group = reps[0].group();
        for r in &reps[1..] {
            if r.group() != group {
                return Err(CoreError::GroupMismatch(
                    group.to_string(),
                    r.group().to_string(),
                ));
            }
        }
        // ψ₂..ψ_L feed the activation; they must commute with it.
        for r in &reps[1..reps.len() - 1] {
            if !r.is_permutation() {
                return Err(CoreError::InvalidConstruction(format!(
                    "internal representation {} is not a permutation representation \
                     and cannot commute with ReLU",
                    r.name()
                )));
            }
        }
        for (l, w) in weights.iter().enumerate() {
            let expected = (reps[l + 1].dim(), reps[l].dim());
            if w.shape() != expected {
                return Err(CoreError::ShapeMismatch {
                    expected: format!("layer {l} weight {}×{}", expected.0, expected.1),
                    got: format!("{}×{}", w.nrows(), w.ncols()),
                });
            }
        }
        Ok(MlpSpec { reps, weights })
    }

    /// Gaussian init with 1/√fan_in scaling times `scale`.
    pub fn random<R: Rng + ?Sized>(
        reps: Vec<Representation>,
        scale: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut weights = Vec::with_capacity(reps.len().saturating_sub(1));
        for l in 0..reps.len().saturating_sub(1) {
            let (rows, cols) = (reps[l + 1].dim(), reps[l].dim());
            let s = scale / (cols as f64).sqrt();
            weights.push(DMatrix::from_fn(rows, cols, |_, _| {
                s * rng.sample::<f64, _>(StandardNormal)
            }));
        }
        MlpSpec::new(reps, weights)
    }

    pub fn num_layers(&self) -> usize {
        self.weights.len()
    }

    /// Layer widths κ₁..κ_{L+1}.
    pub fn widths(&self) -> Vec<usize> {
        self.reps.iter().map(|r| r.dim()).collect()
    }

    pub fn rep(&self, boundary: usize) -> &Representation {
        &self.reps[boundary]
    }

    pub fn input_rep(&self) -> &Representation {
        &self.reps[0]
    }

    pub fn output_rep(&self) -> &Representation {
        &self.reps[self.reps.len() - 1]
    }

    pub fn weight(&self, layer: usize) -> &DMatrix<f64> {
        &self.weights[layer]
    }

    pub fn with_weights(&self, weights: Vec<DMatrix<f64>>) -> Result<Self> {
        MlpSpec::new(self.reps.clone(), weights)
    }
}

/// One intertwiner projector per layer: layer l projects onto maps with
/// W ψ_l(g) = ψ_{l+1}(g) W, so the output-side representation is the
/// projector's d side and the input-side representation its k side. These
/// depend only on the representations and are computed before training.
pub fn build_layer_projectors(spec: &MlpSpec) -> Result<Vec<IntertwinerProjector>> {
    (0..spec.num_layers())
        .map(|l| build_intertwiner_projector(spec.rep(l + 1), spec.rep(l)))
        .collect()
}

/// Forward pass: ReLU after every layer except the last.
pub fn forward(spec: &MlpSpec, x: &DVector<f64>) -> Result<DVector<f64>> {
    if x.len() != spec.input_rep().dim() {
        return Err(CoreError::ShapeMismatch {
            expected: format!("input in R^{}", spec.input_rep().dim()),
            got: format!("R^{}", x.len()),
        });
    }
    let last = spec.num_layers() - 1;
    let mut z = x.clone();
    for (l, w) in spec.weights.iter().enumerate() {
        z = w * z;
        if l < last {
            z = relu(&z);
        }
    }
    Ok(z)
}

/// Mean-squared-error batch loss and its per-layer gradients, by
/// backpropagation through the analytic layer-wise chain rule.
pub fn mse_loss_and_grads(
    spec: &MlpSpec,
    xs: &[DVector<f64>],
    ys: &[DVector<f64>],
) -> Result<(f64, Vec<DMatrix<f64>>)> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(CoreError::InvalidExperiment(
            "batch inputs and labels must be non-empty and matched".into(),
        ));
    }
    let layers = spec.num_layers();
    let batch = xs.len() as f64;
    let mut grads: Vec<DMatrix<f64>> =
        spec.weights.iter().map(|w| DMatrix::zeros(w.nrows(), w.ncols())).collect();
    let mut loss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        // forward, keeping activations and pre-activations
        let mut acts: Vec<DVector<f64>> = Vec::with_capacity(layers + 1);
        let mut pres: Vec<DVector<f64>> = Vec::with_capacity(layers);
        acts.push(x.clone());
        for (l, w) in spec.weights.iter().enumerate() {
            let pre = w * acts.last().unwrap();
            let act = if l < layers - 1 { relu(&pre) } else { pre.clone() };
            pres.push(pre);
            acts.push(act);
        }
        let out = acts.last().unwrap();
        if y.len() != out.len() {
            return Err(CoreError::ShapeMismatch {
                expected: format!("label in R^{}", out.len()),
                got: format!("R^{}", y.len()),
            });
        }
        let resid = out - y;
        loss += resid.norm_squared() / batch;

        // backward; subgradient of ReLU at 0 is 0
        let mut delta = resid * (2.0 / batch);
        for l in (0..layers).rev() {
            grads[l] += &delta * acts[l].transpose();
            if l > 0 {
                let back = spec.weights[l].transpose() * delta;
                delta = DVector::from_fn(back.len(), |i, _| {
                    if pres[l - 1][i] > 0.0 {
                        back[i]
                    } else {
                        0.0
                    }
                });
            }
        }
    }
    Ok((loss, grads))
}

/// Plain gradient step: W^l ← W^l − η g^l.
pub fn gd_step(spec: &MlpSpec, grads: &[DMatrix<f64>], eta: f64) -> Result<MlpSpec> {
    let weights = spec
        .weights
        .iter()
        .zip(grads)
        .map(|(w, g)| w - g * eta)
        .collect();
    spec.with_weights(weights)
}

/// Projected gradient step: W^l ← Ψ_G^l(W^l − η g^l). The projection runs
/// after every step, so the network is exactly equivariant after any
/// iteration.
pub fn projected_gd_step(
    spec: &MlpSpec,
    grads: &[DMatrix<f64>],
    eta: f64,
    projectors: &[IntertwinerProjector],
) -> Result<MlpSpec> {
    assert!(eta > 0.0, "learning rate must be positive");
    let mut weights = Vec::with_capacity(spec.num_layers());
    for ((w, g), proj) in spec.weights.iter().zip(grads).zip(projectors) {
        weights.push(proj.project(&(w - g * eta))?);
    }
    spec.with_weights(weights)
}

/// Σ_l ‖Ψ_G^l⊥(W^l)‖²_F: zero exactly when every layer intertwines.
pub fn equivariance_penalty(
    spec: &MlpSpec,
    projectors: &[IntertwinerProjector],
) -> Result<f64> {
    let mut total = 0.0;
    for (w, proj) in spec.weights.iter().zip(projectors) {
        total += proj.complement(w)?.norm_squared();
    }
    Ok(total)
}

/// Gradient of the penalty: Ψ⊥ is a symmetric projection, so
/// ∇ ‖Ψ⊥(W)‖² = 2 Ψ⊥(W).
pub fn penalty_grads(
    spec: &MlpSpec,
    projectors: &[IntertwinerProjector],
) -> Result<Vec<DMatrix<f64>>> {
    spec.weights
        .iter()
        .zip(projectors)
        .map(|(w, proj)| Ok(proj.complement(w)? * 2.0))
        .collect()
}

/// Training mode for [`train`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrainMode {
    Projected,
    Regularised { lambda: f64 },
    Plain,
}

/// Per-step trace row; step 0 is the initial state.
#[derive(Debug, Clone, Copy)]
pub struct TrainRecord {
    pub step: usize,
    pub loss: f64,
    pub penalty: f64,
}

/// Fixed-batch gradient descent in the given mode. Returns the trained
/// network and one record per state (steps + 1 rows, the first before any
/// update).
pub fn train(
    spec: MlpSpec,
    xs: &[DVector<f64>],
    ys: &[DVector<f64>],
    mode: TrainMode,
    eta: f64,
    steps: usize,
) -> Result<(MlpSpec, Vec<TrainRecord>)> {
    let projectors = build_layer_projectors(&spec)?;
    let mut current = spec;
    let mut records = Vec::with_capacity(steps + 1);
    let (loss0, _) = mse_loss_and_grads(&current, xs, ys)?;
    records.push(TrainRecord {
        step: 0,
        loss: loss0,
        penalty: equivariance_penalty(&current, &projectors)?,
    });
    for step in 1..=steps {
        let (_, mut grads) = mse_loss_and_grads(&current, xs, ys)?;
        current = match mode {
            TrainMode::Projected => projected_gd_step(&current, &grads, eta, &projectors)?,
            TrainMode::Plain => gd_step(&current, &grads, eta)?,
            TrainMode::Regularised { lambda } => {
                let pgrads = penalty_grads(&current, &projectors)?;
                for (g, p) in grads.iter_mut().zip(pgrads) {
                    *g += p * lambda;
                }
                gd_step(&current, &grads, eta)?
            }
        };
        let (loss, _) = mse_loss_and_grads(&current, xs, ys)?;
        records.push(TrainRecord {
            step,
            loss,
            penalty: equivariance_penalty(&current, &projectors)?,
        });
    }
    Ok((current, records))
}

/// Monte Carlo estimate of E‖F(X) − Q F(X)‖² over X ~ N(0, I_d), for a
/// network of any depth. `q_samples` controls the inner group average on
/// continuous groups (ignored for finite groups, where Q is exact).
pub fn network_equivariance_error<R: Rng + ?Sized>(
    spec: &MlpSpec,
    mc_points: usize,
    q_samples: usize,
    rng: &mut R,
) -> Result<MeanStderr> {
    let d = spec.input_rep().dim();
    let f = |x: &DVector<f64>| forward(spec, x).expect("validated shapes");
    let mut values = Vec::with_capacity(mc_points);
    for _ in 0..mc_points {
        let x = DVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let qf = mc_average_q(f, spec.input_rep(), spec.output_rep(), &x, q_samples, rng)?;
        values.push((f(&x) - qf).norm_squared());
    }
    Ok(MeanStderr::from_values(&values))
}

/// Estimate and bound for the single-layer equivariance error.
#[derive(Debug, Clone, Copy)]
pub struct EquivarianceErrorReport {
    /// Monte Carlo estimate of inf_{s equivariant} E‖f_W(X) − s(X)‖²
    /// realised as E‖f_W(X) − Q f_W(X)‖².
    pub estimate: MeanStderr,
    /// 2 C² ‖Ψ⊥(W)‖²_F with C = 1 for ReLU.
    pub bound: f64,
}

impl EquivarianceErrorReport {
    pub fn within_bound(&self, k: f64) -> bool {
        self.estimate.mean <= self.bound + k * self.estimate.stderr
    }
}

/// Single-layer equivariance error for f_W(x) = ReLU(W x) against the bound
/// 2‖Ψ⊥(W)‖²_F. The bound is proven for a single layer only, so deeper
/// specs are rejected; the output representation must commute with ReLU.
pub fn equivariance_error<R: Rng + ?Sized>(
    spec: &MlpSpec,
    mc_points: usize,
    q_samples: usize,
    rng: &mut R,
) -> Result<EquivarianceErrorReport> {
    if spec.num_layers() != 1 {
        return Err(CoreError::InvalidExperiment(
            "the equivariance-error bound applies to single-layer networks only".into(),
        ));
    }
    if !spec.output_rep().is_permutation() {
        return Err(CoreError::InvalidConstruction(
            "the output representation must commute with ReLU".into(),
        ));
    }
    let w = spec.weight(0).clone();
    let d = spec.input_rep().dim();
    let f = move |x: &DVector<f64>| relu(&(&w * x));
    let proj = build_intertwiner_projector(spec.output_rep(), spec.input_rep())?;
    let bound = 2.0 * proj.complement(spec.weight(0))?.norm_squared();
    let mut values = Vec::with_capacity(mc_points);
    for _ in 0..mc_points {
        let x = DVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let qf = mc_average_q(&f, spec.input_rep(), spec.output_rep(), &x, q_samples, rng)?;
        values.push((f(&x) - qf).norm_squared());
    }
    Ok(EquivarianceErrorReport { estimate: MeanStderr::from_values(&values), bound })
}
