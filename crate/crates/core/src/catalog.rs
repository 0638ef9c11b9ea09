//! The built-in (group, representation) pairs exercised by the verification
//! suites, property tests and the CLI's default fixtures.

use crate::error::Result;
use crate::group::{Group, Representation};

/// A named (φ, ψ) pair on a common group.
#[derive(Debug, Clone)]
pub struct BuiltinPair {
    pub label: &'static str,
    pub phi: Representation,
    pub psi: Representation,
}

/// Every built-in pair, including SO(2) at 64 quadrature nodes. Covers
/// trivial outputs (k = 1), matched permutation pairs, signed reflections,
/// rotation blocks at two frequencies (one pair with dim S = 0) and a block
/// representation of a product group.
pub fn builtin_pairs() -> Result<Vec<BuiltinPair>> {
    let s3 = Group::symmetric(3)?;
    let s4 = Group::symmetric(4)?;
    let s6 = Group::symmetric(6)?;
    let c2 = Group::cyclic(2)?;
    let c4 = Group::cyclic(4)?;
    let c6 = Group::cyclic(6)?;
    let d4 = Group::dihedral(4)?;
    let d5 = Group::dihedral(5)?;
    let t64 = Group::torus_so2(64)?;

    let pairs = vec![
        BuiltinPair {
            label: "S3 permutation vs trivial",
            phi: Representation::permutation(&s3)?,
            psi: Representation::trivial(&s3, 1)?,
        },
        BuiltinPair {
            label: "S4 permutation vs permutation",
            phi: Representation::permutation(&s4)?,
            psi: Representation::permutation(&s4)?,
        },
        BuiltinPair {
            label: "S6 permutation vs trivial",
            phi: Representation::permutation(&s6)?,
            psi: Representation::trivial(&s6, 1)?,
        },
        BuiltinPair {
            label: "reflection(5) vs trivial",
            phi: Representation::reflection(&c2, 5)?,
            psi: Representation::trivial(&c2, 1)?,
        },
        BuiltinPair {
            label: "reflection(3) vs reflection(3)",
            phi: Representation::reflection(&c2, 3)?,
            psi: Representation::reflection(&c2, 3)?,
        },
        BuiltinPair {
            label: "C4 shift vs trivial",
            phi: Representation::permutation(&c4)?,
            psi: Representation::trivial(&c4, 1)?,
        },
        BuiltinPair {
            label: "C6 shift vs shift",
            phi: Representation::permutation(&c6)?,
            psi: Representation::permutation(&c6)?,
        },
        BuiltinPair {
            label: "D5 vertex action vs trivial",
            phi: Representation::permutation(&d5)?,
            psi: Representation::trivial(&d5, 1)?,
        },
        BuiltinPair {
            label: "D4 vertex action vs vertex action",
            phi: Representation::permutation(&d4)?,
            psi: Representation::permutation(&d4)?,
        },
        BuiltinPair {
            label: "C2×S3 block permutation vs trivial",
            phi: {
                let prod = Group::product(c2.clone(), s3.clone());
                Representation::permutation(&prod)?
            },
            psi: {
                let prod = Group::product(c2.clone(), s3.clone());
                Representation::trivial(&prod, 1)?
            },
        },
        BuiltinPair {
            label: "SO(2)@64 rotation vs trivial",
            phi: Representation::rotation(&t64, 1)?,
            psi: Representation::trivial(&t64, 1)?,
        },
        BuiltinPair {
            label: "SO(2)@64 rotation vs rotation",
            phi: Representation::rotation(&t64, 1)?,
            psi: Representation::rotation(&t64, 1)?,
        },
        BuiltinPair {
            label: "SO(2)@64 rotation f=2 vs f=1 (dim S = 0)",
            phi: Representation::rotation(&t64, 2)?,
            psi: Representation::rotation(&t64, 1)?,
        },
    ];
    Ok(pairs)
}

/// Built-in invariant-regression inputs: a representation φ per group, with
/// the trivial output representation implied.
pub fn builtin_invariant_reps() -> Result<Vec<Representation>> {
    Ok(vec![
        Representation::permutation(&Group::symmetric(3)?)?,
        Representation::permutation(&Group::symmetric(6)?)?,
        Representation::reflection(&Group::cyclic(2)?, 4)?,
        Representation::reflection(&Group::cyclic(2)?, 12)?,
        Representation::permutation(&Group::cyclic(5)?)?,
        Representation::permutation(&Group::dihedral(6)?)?,
        Representation::permutation(&Group::product(
            Group::cyclic(2)?,
            Group::symmetric(3)?,
        ))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::verify_representation;

    #[test]
    fn all_builtin_reps_verify() {
        for pair in builtin_pairs().unwrap() {
            for rep in [&pair.phi, &pair.psi] {
                let report = verify_representation(rep, 500, 1e-10);
                assert!(
                    report.passed(),
                    "{} rep {} failed verification: {report:?}",
                    pair.label,
                    rep.name()
                );
            }
        }
        for rep in builtin_invariant_reps().unwrap() {
            assert!(verify_representation(&rep, 500, 1e-10).passed());
        }
    }
}
