//! Orthogonal matrix representations of the built-in groups.
//!
//! Every representation returns exactly orthogonal matrices in closed form:
//! permutation matrices for the natural actions of cyclic/symmetric/dihedral
//! groups, the coordinate-reflection `diag(−1, 1, …, 1)` for cyclic(2), 2×2
//! rotation blocks for SO(2), identity matrices for the trivial
//! representation of any group, and block-diagonal sums on product groups.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Element, Group, GroupImpl};
use crate::error::{CoreError, Result};

#[derive(Clone, Debug)]
enum RepKind {
    /// Every element maps to the identity on R^dim.
    Trivial,
    /// Natural permutation action of a cyclic, symmetric or dihedral group.
    Permutation,
    /// Reflection in the first coordinate of R^dim (group cyclic(2)).
    Reflection,
    /// 2×2 rotation block of SO(2) at the given frequency.
    Rotation { frequency: u32 },
    /// Block-diagonal sum on a product group.
    DirectSum(Box<Representation>, Box<Representation>),
    /// Test fixture: a representation with one matrix deliberately scaled,
    /// used to exercise the failure path of verification.
    Corrupted { base: Box<Representation>, at: Element, factor: f64 },
}

/// An orthogonal matrix-valued homomorphism attached to a [`Group`].
#[derive(Clone, Debug)]
pub struct Representation {
    group: Group,
    dim: usize,
    kind: RepKind,
    name: String,
}

impl Representation {
    /// The trivial representation of any group on R^dim.
    pub fn trivial(group: &Group, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(CoreError::InvalidConstruction("rep dimension must be positive".into()));
        }
        Ok(Representation {
            group: group.clone(),
            dim,
            kind: RepKind::Trivial,
            name: "trivial".into(),
        })
    }

    /// The natural permutation representation: coordinate permutations for
    /// symmetric(m), cyclic shifts for cyclic(m), the vertex action for
    /// dihedral(m), and the block sum of component actions for products.
    pub fn permutation(group: &Group) -> Result<Self> {
        match group.impl_ref() {
            GroupImpl::Cyclic { m } | GroupImpl::Dihedral { m } => Ok(Representation {
                group: group.clone(),
                dim: *m,
                kind: RepKind::Permutation,
                name: "permutation".into(),
            }),
            GroupImpl::Symmetric(s) => Ok(Representation {
                group: group.clone(),
                dim: s.m,
                kind: RepKind::Permutation,
                name: "permutation".into(),
            }),
            GroupImpl::Product { left, right } => {
                let l = Representation::permutation(left)?;
                let r = Representation::permutation(right)?;
                let mut rep = Representation::direct_sum(l, r)?;
                rep.name = "permutation".into();
                Ok(rep)
            }
            GroupImpl::Torus { .. } => Err(CoreError::InvalidConstruction(
                "torus-SO2 has no natural permutation representation".into(),
            )),
        }
    }

    /// Reflection in the first coordinate of R^dim; requires cyclic(2).
    pub fn reflection(group: &Group, dim: usize) -> Result<Self> {
        if !matches!(group.impl_ref(), GroupImpl::Cyclic { m: 2 }) {
            return Err(CoreError::InvalidConstruction(
                "reflection representation requires cyclic(2)".into(),
            ));
        }
        if dim == 0 {
            return Err(CoreError::InvalidConstruction("rep dimension must be positive".into()));
        }
        Ok(Representation {
            group: group.clone(),
            dim,
            kind: RepKind::Reflection,
            name: "reflection".into(),
        })
    }

    /// The natural SO(2) rotation representation on R², at frequency `f`
    /// (angle θ maps to the rotation by f·θ). The quadrature must resolve
    /// the degree-2f integrands of the averaging operators, so the group
    /// needs at least 2f + 1 nodes.
    pub fn rotation(group: &Group, frequency: u32) -> Result<Self> {
        let nodes = match group.impl_ref() {
            GroupImpl::Torus { nodes } => *nodes,
            _ => {
                return Err(CoreError::InvalidConstruction(
                    "rotation representation requires torus-SO2".into(),
                ))
            }
        };
        if frequency == 0 {
            return Err(CoreError::InvalidConstruction("rotation frequency must be ≥ 1".into()));
        }
        if nodes < 2 * frequency as usize + 1 {
            return Err(CoreError::InvalidConstruction(format!(
                "torus-SO2({nodes}) cannot resolve frequency {frequency}: needs ≥ {} nodes",
                2 * frequency as usize + 1
            )));
        }
        Ok(Representation {
            group: group.clone(),
            dim: 2,
            kind: RepKind::Rotation { frequency },
            name: if frequency == 1 {
                "rotation".into()
            } else {
                format!("rotation(f={frequency})")
            },
        })
    }

    /// Block-diagonal representation of the product of the two groups.
    pub fn direct_sum(left: Representation, right: Representation) -> Result<Self> {
        let group = Group::product(left.group.clone(), right.group.clone());
        let dim = left.dim + right.dim;
        let name = format!("direct-sum({}, {})", left.name, right.name);
        Ok(Representation {
            group,
            dim,
            kind: RepKind::DirectSum(Box::new(left), Box::new(right)),
            name,
        })
    }

    /// Deliberately defective copy of `base` whose matrix at `at` is scaled
    /// by `factor`; exists to exercise the verification failure path.
    pub fn corrupted(base: Representation, at: Element, factor: f64) -> Result<Self> {
        base.group.validate(&at)?;
        Ok(Representation {
            group: base.group.clone(),
            dim: base.dim,
            name: format!("corrupted({})", base.name),
            kind: RepKind::Corrupted { base: Box::new(base), at, factor },
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// True when every matrix is a permutation matrix, which is exactly the
    /// condition for commuting with any element-wise non-linearity.
    pub fn is_permutation(&self) -> bool {
        match &self.kind {
            RepKind::Trivial | RepKind::Permutation => true,
            RepKind::DirectSum(l, r) => l.is_permutation() && r.is_permutation(),
            RepKind::Reflection | RepKind::Rotation { .. } | RepKind::Corrupted { .. } => false,
        }
    }

    /// The dim×dim orthogonal matrix representing `g`.
    pub fn matrix(&self, g: &Element) -> Result<DMatrix<f64>> {
        self.group.validate(g)?;
        Ok(self.matrix_unchecked(g))
    }

    fn matrix_unchecked(&self, g: &Element) -> DMatrix<f64> {
        match &self.kind {
            RepKind::Trivial => DMatrix::identity(self.dim, self.dim),
            RepKind::Permutation => {
                let mut m = DMatrix::zeros(self.dim, self.dim);
                for j in 0..self.dim {
                    m[(perm_action(&self.group, g, j), j)] = 1.0;
                }
                m
            }
            RepKind::Reflection => {
                let mut m = DMatrix::identity(self.dim, self.dim);
                if *g == Element::Finite(1) {
                    m[(0, 0)] = -1.0;
                }
                m
            }
            RepKind::Rotation { frequency } => {
                let theta = match g {
                    Element::Angle(t) => *frequency as f64 * t,
                    _ => unreachable!("validated element"),
                };
                let (s, c) = theta.sin_cos();
                DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
            }
            RepKind::DirectSum(l, r) => {
                let (a, b) = match g {
                    Element::Pair(a, b) => (a, b),
                    _ => unreachable!("validated element"),
                };
                let ml = l.matrix_unchecked(a);
                let mr = r.matrix_unchecked(b);
                let mut m = DMatrix::zeros(self.dim, self.dim);
                m.view_mut((0, 0), (l.dim, l.dim)).copy_from(&ml);
                m.view_mut((l.dim, l.dim), (r.dim, r.dim)).copy_from(&mr);
                m
            }
            RepKind::Corrupted { base, at, factor } => {
                let mut m = base.matrix_unchecked(g);
                if g == at {
                    m *= *factor;
                }
                m
            }
        }
    }

    /// Character χ(g): the trace of the representing matrix.
    pub fn character(&self, g: &Element) -> Result<f64> {
        Ok(self.matrix(g)?.trace())
    }
}

/// Image of basis point `j` under the natural action of `g`.
fn perm_action(group: &Group, g: &Element, j: usize) -> usize {
    match (group.impl_ref(), g) {
        (GroupImpl::Cyclic { m }, Element::Finite(x)) => (j + x) % m,
        (GroupImpl::Symmetric(s), Element::Finite(x)) => match &s.perms {
            Some(perms) => perms[*x][j] as usize,
            None => super::perm_of_index(s.m, *x)[j] as usize,
        },
        (GroupImpl::Dihedral { m }, Element::Finite(x)) => {
            if *x < *m {
                (j + x) % m
            } else {
                let a = x - m;
                (2 * m - j - a) % m
            }
        }
        _ => unreachable!("permutation representation on a non-permutation group"),
    }
}

/// Defect report from checking orthogonality and the homomorphism property.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub max_orthogonality_defect: f64,
    pub max_homomorphism_defect: f64,
    pub identity_exact: bool,
    pub pairs_checked: usize,
    pub tol: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.identity_exact
            && self.max_orthogonality_defect <= self.tol
            && self.max_homomorphism_defect <= self.tol
    }
}

/// Checks ‖RᵀR − I‖_F over the enumeration and the homomorphism defect
/// ‖R(gh) − R(g)R(h)‖_F over element pairs: all pairs for finite groups up
/// to 1500 elements, `pair_samples` Haar-sampled pairs otherwise. Failures
/// are reported, never thrown.
pub fn verify_representation(
    rep: &Representation,
    pair_samples: usize,
    tol: f64,
) -> VerificationReport {
    assert!(tol > 0.0, "tolerance must be positive");
    let group = rep.group();
    let identity = group.identity();
    let id_matrix = rep.matrix(&identity).expect("identity is valid");
    let identity_exact = id_matrix == DMatrix::identity(rep.dim(), rep.dim());

    let eye = DMatrix::<f64>::identity(rep.dim(), rep.dim());
    let mut max_orth: f64 = 0.0;
    for g in group.element_iter() {
        let m = rep.matrix(&g).expect("enumerated element is valid");
        max_orth = max_orth.max((m.transpose() * &m - &eye).norm());
    }

    let exhaustive = group.is_finite() && group.enumeration_len() <= 1500;
    let mut max_hom: f64 = 0.0;
    let mut pairs_checked = 0usize;
    let mut check_pair = |g: &Element, h: &Element| {
        let gh = group.compose(g, h).expect("valid elements");
        let defect = (rep.matrix(&gh).unwrap()
            - rep.matrix(g).unwrap() * rep.matrix(h).unwrap())
        .norm();
        if defect > max_hom {
            max_hom = defect;
        }
        pairs_checked += 1;
    };
    if exhaustive {
        let els = group.elements();
        for g in &els {
            for h in &els {
                check_pair(g, h);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7265_7072);
        for _ in 0..pair_samples {
            let g = group.sample_haar(&mut rng);
            let h = group.sample_haar(&mut rng);
            check_pair(&g, &h);
        }
    }

    VerificationReport {
        max_orthogonality_defect: max_orth,
        max_homomorphism_defect: max_hom,
        identity_exact,
        pairs_checked,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn permutation_rep_transposition() {
        // g = (1 2) in S₃ (0-indexed: swaps points 0 and 1) swaps rows 0, 1.
        let g3 = Group::symmetric(3).unwrap();
        let rep = Representation::permutation(&g3).unwrap();
        let swap = g3
            .elements()
            .into_iter()
            .find(|e| {
                let m = rep.matrix(e).unwrap();
                m[(1, 0)] == 1.0 && m[(0, 1)] == 1.0 && m[(2, 2)] == 1.0
            })
            .expect("transposition exists");
        let m = rep.matrix(&swap).unwrap();
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn reflection_rep_matrices() {
        let c2 = Group::cyclic(2).unwrap();
        let rep = Representation::reflection(&c2, 4).unwrap();
        assert_eq!(rep.matrix(&Element::Finite(0)).unwrap(), DMatrix::identity(4, 4));
        let m = rep.matrix(&Element::Finite(1)).unwrap();
        let mut expected = DMatrix::identity(4, 4);
        expected[(0, 0)] = -1.0;
        assert_eq!(m, expected);
    }

    #[test]
    fn so2_natural_rep_at_quarter_turn() {
        let t = Group::torus_so2(16).unwrap();
        let rep = Representation::rotation(&t, 1).unwrap();
        let m = rep.matrix(&Element::Angle(FRAC_PI_2)).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!((m - expected).norm() < 1e-15);
    }

    #[test]
    fn rotation_frequency_needs_enough_nodes() {
        let t = Group::torus_so2(5).unwrap();
        assert!(Representation::rotation(&t, 2).is_ok()); // 5 ≥ 2·2+1
        assert!(Representation::rotation(&t, 3).is_err());
    }

    #[test]
    fn unknown_element_is_rejected() {
        let g3 = Group::symmetric(3).unwrap();
        let rep = Representation::permutation(&g3).unwrap();
        assert!(rep.matrix(&Element::Finite(6)).is_err());
        assert!(rep.matrix(&Element::Angle(0.3)).is_err());
    }

    #[test]
    fn characters() {
        let g3 = Group::symmetric(3).unwrap();
        let rep = Representation::permutation(&g3).unwrap();
        // identity → dim.
        assert_eq!(rep.character(&g3.identity()).unwrap(), 3.0);
        // a 3-cycle has no fixed points → 0.
        let three_cycle = g3
            .elements()
            .into_iter()
            .find(|e| rep.character(e).unwrap() == 0.0)
            .expect("3-cycle exists");
        assert_eq!(rep.character(&three_cycle).unwrap(), 0.0);

        // reflection on R^d at the non-identity element → d − 2.
        let c2 = Group::cyclic(2).unwrap();
        let refl = Representation::reflection(&c2, 7).unwrap();
        assert_eq!(refl.character(&Element::Finite(1)).unwrap(), 5.0);
    }

    #[test]
    fn characters_are_class_functions() {
        for (g, rep) in [
            {
                let g = Group::symmetric(4).unwrap();
                let r = Representation::permutation(&g).unwrap();
                (g, r)
            },
            {
                let g = Group::dihedral(5).unwrap();
                let r = Representation::permutation(&g).unwrap();
                (g, r)
            },
        ] {
            let els = g.elements();
            for a in &els {
                for h in &els {
                    let conj = g
                        .compose(&g.compose(h, a).unwrap(), &g.inverse(h).unwrap())
                        .unwrap();
                    // integer-matrix reps: exact equality
                    assert_eq!(
                        rep.character(a).unwrap(),
                        rep.character(&conj).unwrap(),
                        "character not constant on conjugacy class in {g}"
                    );
                }
            }
        }
    }

    #[test]
    fn verify_clean_reps() {
        let s4 = Group::symmetric(4).unwrap();
        let perm = Representation::permutation(&s4).unwrap();
        let report = verify_representation(&perm, 0, 1e-10);
        assert!(report.passed());
        assert_eq!(report.max_orthogonality_defect, 0.0);
        assert_eq!(report.max_homomorphism_defect, 0.0);

        let t = Group::torus_so2(64).unwrap();
        let rot = Representation::rotation(&t, 1).unwrap();
        let report = verify_representation(&rot, 2000, 1e-10);
        assert!(report.passed(), "defects {report:?}");
    }

    #[test]
    fn verify_direct_sum_on_product() {
        let c2 = Group::cyclic(2).unwrap();
        let s3 = Group::symmetric(3).unwrap();
        let rep = Representation::direct_sum(
            Representation::reflection(&c2, 2).unwrap(),
            Representation::permutation(&s3).unwrap(),
        )
        .unwrap();
        assert_eq!(rep.dim(), 5);
        let report = verify_representation(&rep, 0, 1e-10);
        assert!(report.passed());
    }

    #[test]
    fn verify_detects_corruption() {
        // Scaling one rotation matrix by c makes ‖RᵀR − I‖_F = (c²−1)·√2.
        let t = Group::torus_so2(8).unwrap();
        let rot = Representation::rotation(&t, 1).unwrap();
        let node = Element::Angle(std::f64::consts::TAU / 8.0);
        let bad = Representation::corrupted(rot, node, 1.01).unwrap();
        let report = verify_representation(&bad, 500, 1e-10);
        assert!(!report.passed());
        let expected = (1.01f64 * 1.01 - 1.0) * 2.0f64.sqrt();
        assert!(
            (report.max_orthogonality_defect - expected).abs() < 1e-12,
            "defect {} vs {}",
            report.max_orthogonality_defect,
            expected
        );
    }

    #[test]
    fn homomorphism_defect_small_on_torus() {
        let t = Group::torus_so2(32).unwrap();
        let rot = Representation::rotation(&t, 2).unwrap();
        let report = verify_representation(&rot, 5000, 1e-10);
        assert!(report.max_homomorphism_defect <= 1e-10);
    }
}
