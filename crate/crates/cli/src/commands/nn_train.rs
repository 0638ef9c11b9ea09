//! `nn-train`: gradient descent on a fixed batch labelled by a random
//! equivariant teacher network, in projected, regularised or plain mode,
//! with a per-step CSV of loss, penalty and (periodically) the Monte Carlo
//! equivariance-error estimate.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Result};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use equigap_core::nn::{
    build_layer_projectors, equivariance_penalty, forward, gd_step, mse_loss_and_grads,
    network_equivariance_error, penalty_grads, projected_gd_step, MlpSpec, TrainMode,
};

use crate::config::NnTrainConfig;
use crate::output::{config_hash, write_text, Sidecar};

pub const CSV_HEADER: &str =
    "step,loss,penalty,equivariance_error,equivariance_error_stderr";

pub fn run(cfg: &NnTrainConfig) -> Result<bool> {
    let start = Instant::now();
    let group = cfg.group.build()?;
    if cfg.layers.len() < 2 {
        bail!("need at least two layer representations (input and output)");
    }
    let reps = cfg
        .layers
        .iter()
        .map(|r| r.build(&group))
        .collect::<Result<Vec<_>>>()?;
    let mode = match cfg.mode.as_str() {
        "projected" => TrainMode::Projected,
        "regularised" | "regularized" => TrainMode::Regularised { lambda: cfg.lambda },
        "plain" => TrainMode::Plain,
        other => bail!("unknown training mode {other:?}"),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // Teacher: random weights projected layer-wise, so labels come from an
    // exactly equivariant network.
    let teacher = {
        let raw = MlpSpec::random(reps.clone(), 1.0, &mut rng)?;
        let projectors = build_layer_projectors(&raw)?;
        let weights = (0..raw.num_layers())
            .map(|l| projectors[l].project(raw.weight(l)))
            .collect::<equigap_core::Result<Vec<_>>>()?;
        raw.with_weights(weights)?
    };
    let d = reps[0].dim();
    let xs: Vec<DVector<f64>> = (0..cfg.batch)
        .map(|_| DVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal)))
        .collect();
    let ys: Vec<DVector<f64>> = xs
        .iter()
        .map(|x| {
            let clean = forward(&teacher, x).expect("teacher evaluates");
            if cfg.noise > 0.0 {
                let noise = DVector::from_fn(clean.len(), |_, _| {
                    cfg.noise * rng.sample::<f64, _>(StandardNormal)
                });
                clean + noise
            } else {
                clean
            }
        })
        .collect();

    let mut student = MlpSpec::random(reps, 1.0, &mut rng)?;
    let projectors = build_layer_projectors(&student)?;
    let mut eval_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    eval_rng.set_stream(0x45_56);

    let mut body = format!("{CSV_HEADER}\n");
    let emit = |spec: &MlpSpec,
                    step: usize,
                    loss: f64,
                    body: &mut String,
                    eval_rng: &mut ChaCha8Rng|
     -> Result<f64> {
        let penalty = equivariance_penalty(spec, &projectors)?;
        let with_error = step == cfg.steps || (cfg.equiv_every > 0 && step.is_multiple_of(cfg.equiv_every));
        if with_error {
            let err = network_equivariance_error(spec, cfg.mc_points, cfg.q_samples, eval_rng)?;
            writeln!(body, "{step},{loss},{penalty},{},{}", err.mean, err.stderr)?;
        } else {
            writeln!(body, "{step},{loss},{penalty},,")?;
        }
        Ok(penalty)
    };

    let (loss0, _) = mse_loss_and_grads(&student, &xs, &ys)?;
    let initial_penalty = emit(&student, 0, loss0, &mut body, &mut eval_rng)?;
    let mut final_penalty = initial_penalty;
    for step in 1..=cfg.steps {
        let (_, mut grads) = mse_loss_and_grads(&student, &xs, &ys)?;
        student = match mode {
            TrainMode::Projected => projected_gd_step(&student, &grads, cfg.eta, &projectors)?,
            TrainMode::Plain => gd_step(&student, &grads, cfg.eta)?,
            TrainMode::Regularised { lambda } => {
                let pgrads = penalty_grads(&student, &projectors)?;
                for (g, p) in grads.iter_mut().zip(pgrads) {
                    *g += p * lambda;
                }
                gd_step(&student, &grads, cfg.eta)?
            }
        };
        let (loss, _) = mse_loss_and_grads(&student, &xs, &ys)?;
        final_penalty = emit(&student, step, loss, &mut body, &mut eval_rng)?;
    }

    write_text(&cfg.out, &body)?;
    Sidecar::new("nn-train", cfg.seed, config_hash(cfg)?, start.elapsed().as_secs_f64())
        .write(&cfg.out)?;

    let passed = match mode {
        TrainMode::Projected => final_penalty <= 1e-8,
        TrainMode::Regularised { .. } => final_penalty < initial_penalty,
        TrainMode::Plain => true,
    };
    println!(
        "mode {}: penalty {initial_penalty:.3e} → {final_penalty:.3e}  {}",
        cfg.mode,
        if passed { "pass" } else { "FAIL" }
    );
    println!("trace: {}", cfg.out.display());
    Ok(passed)
}
