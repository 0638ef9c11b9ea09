//! `symmetrizer`: materialise Ψ_G, export it as the flat binary tensor plus
//! a CSV dump, and summarise dim S, dim A, ⟨χψ, χφ⟩ and J_G as JSON.

use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use equigap_core::symmetrize::{build_intertwiner_projector, character_inner_product, j_matrix};

use crate::config::SymmetrizerConfig;
use crate::output::{config_hash, write_text, Sidecar};

#[derive(Serialize)]
struct Summary {
    group: String,
    phi: String,
    psi: String,
    d: usize,
    k: usize,
    character_inner_product: f64,
    dim_s: f64,
    dim_a: f64,
    j_matrix: Vec<Vec<f64>>,
}

pub fn run(cfg: &SymmetrizerConfig) -> Result<bool> {
    let start = Instant::now();
    let group = cfg.group.build()?;
    let phi = cfg.phi.build(&group)?;
    let psi = match &cfg.psi {
        Some(c) => c.build(&group)?,
        None => equigap_core::group::Representation::trivial(&group, 1)?,
    };

    let proj = build_intertwiner_projector(&phi, &psi)?;
    let chi = character_inner_product(&phi, &psi)?;
    let j = j_matrix(&phi, &psi)?;
    let (d, k) = proj.dims();

    if let Some(parent) = cfg.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut binary = Vec::new();
    proj.write_binary(&mut binary)?;
    std::fs::write(&cfg.out, &binary)
        .with_context(|| format!("writing tensor {}", cfg.out.display()))?;

    let mut csv = Vec::new();
    proj.write_csv(&mut csv)?;
    let csv_path = cfg.out.with_extension("csv");
    write_text(&csv_path, &String::from_utf8(csv)?)?;

    let summary = Summary {
        group: group.to_string(),
        phi: phi.name().to_string(),
        psi: psi.name().to_string(),
        d,
        k,
        character_inner_product: chi,
        dim_s: chi,
        dim_a: (d * k) as f64 - chi,
        j_matrix: (0..j.nrows())
            .map(|i| (0..j.ncols()).map(|c| j[(i, c)]).collect())
            .collect(),
    };
    let summary_path = cfg.out.with_extension("summary.json");
    write_text(&summary_path, &(serde_json::to_string_pretty(&summary)? + "\n"))?;

    Sidecar::new("symmetrizer", 0, config_hash(cfg)?, start.elapsed().as_secs_f64())
        .write(&cfg.out)?;

    println!(
        "Ψ tensor {d}×{k}×{d}×{k}: dim S = {}, dim A = {}",
        summary.dim_s, summary.dim_a
    );
    println!("tensor: {}", cfg.out.display());
    println!("csv: {}", csv_path.display());
    println!("summary: {}", summary_path.display());
    Ok(true)
}
