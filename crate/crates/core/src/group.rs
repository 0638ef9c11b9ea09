//! Compact groups with exact enumeration (finite kinds) or equispaced
//! quadrature (SO(2)), their Haar sampling, and orthogonal representations.
//!
//! Finite elements are canonical integers indexing the enumeration; torus
//! elements are angles in [0, 2π). The Haar measure is uniform weighting over
//! the enumeration (finite) or the quadrature nodes/continuous angle (torus).
//! Equispaced nodes integrate trigonometric polynomials exactly up to the
//! node count, so every group average used by the projectors is a finite sum
//! without discretisation bias.
//!
//! All types are immutable after construction and cheap to clone (shared
//! internals), so they can be moved freely across threads. Sampling takes a
//! caller-owned RNG so parallel callers use independent streams.

mod rep;

pub use rep::{verify_representation, Representation, VerificationReport};

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{CoreError, Result};

/// Composition tables are precomputed for symmetric groups up to this order
/// (5040 = 7!); larger groups compose elements arithmetically on the fly.
const TABLE_CAP: usize = 5040;
/// Permutations are materialised up to this order (40320 = 8!).
const PERM_LIST_CAP: usize = 40_320;
/// Largest symmetric group supported (10! elements is the desk-scale limit).
const MAX_SYMMETRIC_M: usize = 10;

/// A group element: an index into the enumeration for finite kinds, an angle
/// in radians for the torus, or a pair for product groups.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Finite(usize),
    Angle(f64),
    Pair(Box<Element>, Box<Element>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Finite(i) => write!(f, "#{i}"),
            Element::Angle(t) => write!(f, "angle({t:.6})"),
            Element::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// Group order: a positive integer, or continuous for torus factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    Continuous,
}

#[derive(Debug)]
enum GroupImpl {
    Cyclic { m: usize },
    Symmetric(SymmetricGroup),
    Dihedral { m: usize },
    Torus { nodes: usize },
    Product { left: Group, right: Group },
}

#[derive(Debug)]
struct SymmetricGroup {
    m: usize,
    order: usize,
    /// One-line permutations in lexicographic order, when small enough.
    perms: Option<Vec<Vec<u8>>>,
    /// Flat `order × order` composition table, when small enough.
    table: Option<Vec<u16>>,
}

/// A compact group: cyclic, symmetric or dihedral (finite, exactly
/// enumerated), SO(2) discretised by equispaced quadrature, or a product.
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<GroupImpl>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        use GroupImpl::*;
        match (&*self.inner, &*other.inner) {
            (Cyclic { m: a }, Cyclic { m: b }) => a == b,
            (Symmetric(a), Symmetric(b)) => a.m == b.m,
            (Dihedral { m: a }, Dihedral { m: b }) => a == b,
            (Torus { nodes: a }, Torus { nodes: b }) => a == b,
            (Product { left: la, right: ra }, Product { left: lb, right: rb }) => {
                la == lb && ra == rb
            }
            _ => false,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.inner {
            GroupImpl::Cyclic { m } => write!(f, "cyclic({m})"),
            GroupImpl::Symmetric(s) => write!(f, "symmetric({})", s.m),
            GroupImpl::Dihedral { m } => write!(f, "dihedral({m})"),
            GroupImpl::Torus { nodes } => write!(f, "torus-SO2({nodes})"),
            GroupImpl::Product { left, right } => write!(f, "product({left}, {right})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Lehmer-code arithmetic for symmetric groups.

fn factorial(m: usize) -> usize {
    (1..=m).product::<usize>().max(1)
}

/// Permutation with lexicographic rank `idx` among the permutations of
/// {0, …, m−1}, in one-line notation. Rank 0 is the identity.
fn perm_of_index(m: usize, mut idx: usize) -> Vec<u8> {
    let mut remaining: Vec<u8> = (0..m as u8).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f = factorial(i);
        let digit = idx / f;
        idx %= f;
        out.push(remaining.remove(digit));
    }
    out
}

/// Lexicographic rank of a permutation in one-line notation.
fn index_of_perm(perm: &[u8]) -> usize {
    let m = perm.len();
    let mut remaining: Vec<u8> = (0..m as u8).collect();
    let mut idx = 0usize;
    for (i, &p) in perm.iter().enumerate() {
        let pos = remaining.iter().position(|&r| r == p).expect("valid symbol");
        idx += pos * factorial(m - 1 - i);
        remaining.remove(pos);
    }
    idx
}

/// (a ∘ b)(i) = a(b(i)): apply `b` first.
fn compose_perms(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn invert_perm(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi as usize] = i as u8;
    }
    inv
}

impl SymmetricGroup {
    fn new(m: usize) -> Self {
        let order = factorial(m);
        let perms = (order <= PERM_LIST_CAP)
            .then(|| (0..order).map(|i| perm_of_index(m, i)).collect::<Vec<_>>());
        let table = perms.as_ref().filter(|_| order <= TABLE_CAP).map(|perms| {
            let mut table = vec![0u16; order * order];
            for (a, pa) in perms.iter().enumerate() {
                for (b, pb) in perms.iter().enumerate() {
                    table[a * order + b] = index_of_perm(&compose_perms(pa, pb)) as u16;
                }
            }
            table
        });
        SymmetricGroup { m, order, perms, table }
    }

    fn perm(&self, idx: usize) -> Vec<u8> {
        match &self.perms {
            Some(perms) => perms[idx].clone(),
            None => perm_of_index(self.m, idx),
        }
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        if let Some(table) = &self.table {
            return table[a * self.order + b] as usize;
        }
        index_of_perm(&compose_perms(&self.perm(a), &self.perm(b)))
    }

    fn inverse(&self, a: usize) -> usize {
        index_of_perm(&invert_perm(&self.perm(a)))
    }
}

// ---------------------------------------------------------------------------

fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU itself for inputs just below 0.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl Group {
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 || m > 1_000_000 {
            return Err(CoreError::InvalidConstruction(format!(
                "cyclic group order must be in 1..=1000000, got {m}"
            )));
        }
        Ok(Group { inner: Arc::new(GroupImpl::Cyclic { m }) })
    }

    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_SYMMETRIC_M {
            return Err(CoreError::InvalidConstruction(format!(
                "symmetric group degree must be in 1..={MAX_SYMMETRIC_M}, got {m}"
            )));
        }
        Ok(Group { inner: Arc::new(GroupImpl::Symmetric(SymmetricGroup::new(m))) })
    }

    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 || m > 500_000 {
            return Err(CoreError::InvalidConstruction(format!(
                "dihedral parameter must be in 1..=500000, got {m}"
            )));
        }
        Ok(Group { inner: Arc::new(GroupImpl::Dihedral { m }) })
    }

    /// SO(2) discretised by `nodes` equispaced quadrature angles in [0, 2π).
    /// At least 3 nodes are required so that the degree-2 trigonometric
    /// integrands of the averaging operators are integrated exactly.
    pub fn torus_so2(nodes: usize) -> Result<Self> {
        if nodes < 3 {
            return Err(CoreError::InvalidConstruction(format!(
                "torus-SO2 needs at least 3 quadrature nodes, got {nodes}"
            )));
        }
        Ok(Group { inner: Arc::new(GroupImpl::Torus { nodes }) })
    }

    pub fn product(left: Group, right: Group) -> Self {
        Group { inner: Arc::new(GroupImpl::Product { left, right }) }
    }

    /// The one-element group (cyclic of order 1).
    pub fn trivial() -> Self {
        Group::cyclic(1).expect("order 1 is valid")
    }

    /// The two factors of a product group, if this is one.
    pub fn product_parts(&self) -> Option<(Group, Group)> {
        match &*self.inner {
            GroupImpl::Product { left, right } => Some((left.clone(), right.clone())),
            _ => None,
        }
    }

    pub fn order(&self) -> GroupOrder {
        match &*self.inner {
            GroupImpl::Cyclic { m } => GroupOrder::Finite(*m),
            GroupImpl::Symmetric(s) => GroupOrder::Finite(s.order),
            GroupImpl::Dihedral { m } => GroupOrder::Finite(2 * m),
            GroupImpl::Torus { .. } => GroupOrder::Continuous,
            GroupImpl::Product { left, right } => match (left.order(), right.order()) {
                (GroupOrder::Finite(a), GroupOrder::Finite(b)) => GroupOrder::Finite(a * b),
                _ => GroupOrder::Continuous,
            },
        }
    }

    /// True when the group has no torus factor, so group averages are exact
    /// finite sums over the enumeration.
    pub fn is_finite(&self) -> bool {
        matches!(self.order(), GroupOrder::Finite(_))
    }

    /// Number of elements in `elements()`: the order for finite groups, the
    /// quadrature node count for torus factors.
    pub fn enumeration_len(&self) -> usize {
        match &*self.inner {
            GroupImpl::Cyclic { m } => *m,
            GroupImpl::Symmetric(s) => s.order,
            GroupImpl::Dihedral { m } => 2 * m,
            GroupImpl::Torus { nodes } => *nodes,
            GroupImpl::Product { left, right } => {
                left.enumeration_len() * right.enumeration_len()
            }
        }
    }

    pub fn identity(&self) -> Element {
        match &*self.inner {
            GroupImpl::Cyclic { .. } | GroupImpl::Symmetric(_) | GroupImpl::Dihedral { .. } => {
                Element::Finite(0)
            }
            GroupImpl::Torus { .. } => Element::Angle(0.0),
            GroupImpl::Product { left, right } => {
                Element::Pair(Box::new(left.identity()), Box::new(right.identity()))
            }
        }
    }

    /// Checks that `g` structurally belongs to this group.
    pub fn validate(&self, g: &Element) -> Result<()> {
        let ok = match (&*self.inner, g) {
            (GroupImpl::Cyclic { m }, Element::Finite(i)) => i < m,
            (GroupImpl::Symmetric(s), Element::Finite(i)) => *i < s.order,
            (GroupImpl::Dihedral { m }, Element::Finite(i)) => *i < 2 * m,
            (GroupImpl::Torus { .. }, Element::Angle(t)) => t.is_finite(),
            (GroupImpl::Product { left, right }, Element::Pair(a, b)) => {
                return left.validate(a).and_then(|_| right.validate(b));
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::ElementMismatch { group: self.to_string(), element: g.to_string() })
        }
    }

    pub fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.compose_unchecked(a, b))
    }

    fn compose_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (&*self.inner, a, b) {
            (GroupImpl::Cyclic { m }, Element::Finite(x), Element::Finite(y)) => {
                Element::Finite((x + y) % m)
            }
            (GroupImpl::Symmetric(s), Element::Finite(x), Element::Finite(y)) => {
                Element::Finite(s.compose(*x, *y))
            }
            (GroupImpl::Dihedral { m }, Element::Finite(x), Element::Finite(y)) => {
                // Indices 0..m are rotations r^j, indices m..2m reflections
                // s·r^j with s the reflection fixing vertex 0.
                let m = *m;
                let (xr, xi) = (*x >= m, x % m);
                let (yr, yi) = (*y >= m, y % m);
                let out = match (xr, yr) {
                    (false, false) => (xi + yi) % m,
                    (false, true) => m + (yi + m - xi) % m,
                    (true, false) => m + (xi + yi) % m,
                    (true, true) => (yi + m - xi) % m,
                };
                Element::Finite(out)
            }
            (GroupImpl::Torus { .. }, Element::Angle(x), Element::Angle(y)) => {
                Element::Angle(canonical_angle(x + y))
            }
            (GroupImpl::Product { left, right }, Element::Pair(a1, a2), Element::Pair(b1, b2)) => {
                Element::Pair(
                    Box::new(left.compose_unchecked(a1, b1)),
                    Box::new(right.compose_unchecked(a2, b2)),
                )
            }
            _ => unreachable!("validated elements"),
        }
    }

    pub fn inverse(&self, g: &Element) -> Result<Element> {
        self.validate(g)?;
        Ok(self.inverse_unchecked(g))
    }

    fn inverse_unchecked(&self, g: &Element) -> Element {
        match (&*self.inner, g) {
            (GroupImpl::Cyclic { m }, Element::Finite(x)) => Element::Finite((m - x) % m),
            (GroupImpl::Symmetric(s), Element::Finite(x)) => Element::Finite(s.inverse(*x)),
            (GroupImpl::Dihedral { m }, Element::Finite(x)) => {
                if *x >= *m {
                    Element::Finite(*x) // reflections are involutions
                } else {
                    Element::Finite((m - x) % m)
                }
            }
            (GroupImpl::Torus { .. }, Element::Angle(t)) => Element::Angle(canonical_angle(-t)),
            (GroupImpl::Product { left, right }, Element::Pair(a, b)) => Element::Pair(
                Box::new(left.inverse_unchecked(a)),
                Box::new(right.inverse_unchecked(b)),
            ),
            _ => unreachable!("validated elements"),
        }
    }

    /// All elements exactly once, identity first. For torus factors the
    /// equispaced quadrature nodes stand in for the elements.
    pub fn elements(&self) -> Vec<Element> {
        self.element_iter().collect()
    }

    /// Streaming version of [`elements`](Self::elements); avoids
    /// materialising large enumerations such as S₁₀.
    pub fn element_iter(&self) -> Box<dyn Iterator<Item = Element> + '_> {
        match &*self.inner {
            GroupImpl::Cyclic { m } => Box::new((0..*m).map(Element::Finite)),
            GroupImpl::Symmetric(s) => Box::new((0..s.order).map(Element::Finite)),
            GroupImpl::Dihedral { m } => Box::new((0..2 * m).map(Element::Finite)),
            GroupImpl::Torus { nodes } => {
                let n = *nodes;
                Box::new((0..n).map(move |j| Element::Angle(TAU * j as f64 / n as f64)))
            }
            GroupImpl::Product { left, right } => Box::new(left.element_iter().flat_map(
                move |a| {
                    right
                        .element_iter()
                        .map(move |b| Element::Pair(Box::new(a.clone()), Box::new(b)))
                },
            )),
        }
    }

    /// One draw from the Haar measure: uniform over the enumeration for
    /// finite groups, a uniform angle in [0, 2π) for torus factors.
    pub fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match &*self.inner {
            GroupImpl::Cyclic { m } => Element::Finite(rng.random_range(0..*m)),
            GroupImpl::Symmetric(s) => Element::Finite(rng.random_range(0..s.order)),
            GroupImpl::Dihedral { m } => Element::Finite(rng.random_range(0..2 * m)),
            GroupImpl::Torus { .. } => Element::Angle(rng.random_range(0.0..TAU)),
            GroupImpl::Product { left, right } => Element::Pair(
                Box::new(left.sample_haar(rng)),
                Box::new(right.sample_haar(rng)),
            ),
        }
    }

    fn impl_ref(&self) -> &GroupImpl {
        &self.inner
    }
}

/// Enumerates all elements (or quadrature nodes), identity first.
pub fn enumerate_elements(group: &Group) -> Vec<Element> {
    group.elements()
}
