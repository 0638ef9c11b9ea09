//! `verify-group`: enumeration sanity plus orthogonality/homomorphism
//! defects for a named representation.

use anyhow::Result;

use equigap_core::group::{verify_representation, GroupOrder};

use crate::config::VerifyGroupConfig;

pub fn run(cfg: &VerifyGroupConfig) -> Result<bool> {
    let group = cfg.group.build()?;
    let rep = cfg.rep.build(&group)?;

    let elements = group.elements();
    let enumeration_ok = match group.order() {
        GroupOrder::Finite(n) => elements.len() == n,
        GroupOrder::Continuous => !elements.is_empty(),
    };
    let identity_first = elements.first() == Some(&group.identity());

    let report = verify_representation(&rep, cfg.pair_samples, cfg.tol);
    let passed = report.passed() && enumeration_ok && identity_first;

    println!("group: {group}");
    println!("representation: {} (dim {})", rep.name(), rep.dim());
    println!("enumeration: {} elements, identity first: {identity_first}", elements.len());
    println!("identity matrix exact: {}", report.identity_exact);
    println!("max orthogonality defect: {:.3e}", report.max_orthogonality_defect);
    println!("max homomorphism defect:  {:.3e}", report.max_homomorphism_defect);
    println!("pairs checked: {}", report.pairs_checked);
    println!("tolerance: {:.1e}", cfg.tol);
    println!("verdict: {}", if passed { "pass" } else { "FAIL" });
    Ok(passed)
}
