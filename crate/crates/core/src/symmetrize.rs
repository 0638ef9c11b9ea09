//! Group-averaging operators.
//!
//! For an orthogonal representation φ of a compact group on R^d, the vector
//! averager is the matrix
//!
//! ```text
//! Φ_G = ∫ φ(g) dλ(g)
//! ```
//!
//! an orthogonal projection onto the invariant vectors. For a pair of
//! representations (φ on R^d, ψ on R^k) the intertwining average is the
//! 4-tensor
//!
//! ```text
//! Ψ_abce = ∫ φ(g)_ac ψ(g)_be dλ(g),      a,c = 1..d,  b,e = 1..k
//! ```
//!
//! applied to a d×k matrix by contracting the last two indices:
//! Ψ(W)_ab = Ψ_abce W_ce = ∫ φ(g) W ψ(g⁻¹) dλ(g). Its image is the space of
//! maps W with φ(g) W ψ(g⁻¹) = W for all g, i.e. W intertwines ψ → φ, which
//! is exactly the condition for x ↦ Wᵀx to be equivariant. The complement is
//! Ψ⊥(W) = W − Ψ(W); both are materialised densely (dk ≤ a few hundred at
//! desk scale) so every operator identity can be tested directly.
//!
//! Averages over finite groups are exact sums over the enumeration; averages
//! over the torus are exact equispaced-quadrature sums, since the integrands
//! are trigonometric polynomials whose degree the node count resolves. The
//! only Monte Carlo in this module is [`mc_average_q`] on continuous groups
//! and the μ-inner-product estimate in [`decompose_function`].

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{CoreError, Result};
use crate::group::{Element, Representation};
use crate::stats::MeanStderr;

/// The projection Φ_G onto the invariant vectors of a representation.
#[derive(Debug, Clone)]
pub struct VectorAverager {
    phi: Representation,
    matrix: DMatrix<f64>,
}

/// Builds Φ_G as the uniform average of φ(g) over the enumeration or
/// quadrature nodes.
pub fn build_vector_averager(phi: &Representation) -> VectorAverager {
    let d = phi.dim();
    let mut m = DMatrix::<f64>::zeros(d, d);
    let mut count = 0usize;
    for g in phi.group().element_iter() {
        m += phi.matrix(&g).expect("enumerated element");
        count += 1;
    }
    m /= count as f64;
    VectorAverager { phi: phi.clone(), matrix: m }
}

impl VectorAverager {
    pub fn rep(&self) -> &Representation {
        &self.phi
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Φ_G w: the closest invariant direction.
    pub fn apply(&self, w: &DVector<f64>) -> DVector<f64> {
        &self.matrix * w
    }

    /// (I − Φ_G) w: the anti-symmetric component.
    pub fn complement(&self, w: &DVector<f64>) -> DVector<f64> {
        w - self.apply(w)
    }
}

/// The intertwining average Ψ_G for a pair of representations, stored as the
/// flattened (dk)×(dk) matrix of the 4-tensor with the row-major index
/// pairing (a, b) ↦ a·k + b.
#[derive(Debug, Clone)]
pub struct IntertwinerProjector {
    phi: Representation,
    psi: Representation,
    op: DMatrix<f64>,
}

/// Builds Ψ_G for representations of the same group. With a trivial ψ
/// (k = 1) this reduces elementwise to [`build_vector_averager`].
pub fn build_intertwiner_projector(
    phi: &Representation,
    psi: &Representation,
) -> Result<IntertwinerProjector> {
    if phi.group() != psi.group() {
        return Err(CoreError::GroupMismatch(
            phi.group().to_string(),
            psi.group().to_string(),
        ));
    }
    let (d, k) = (phi.dim(), psi.dim());
    let mut op = DMatrix::<f64>::zeros(d * k, d * k);
    let mut count = 0usize;
    for g in phi.group().element_iter() {
        let mp = phi.matrix(&g).expect("enumerated element");
        let mq = psi.matrix(&g).expect("enumerated element");
        for a in 0..d {
            for c in 0..d {
                let pac = mp[(a, c)];
                if pac == 0.0 {
                    continue;
                }
                for b in 0..k {
                    for e in 0..k {
                        op[(a * k + b, c * k + e)] += pac * mq[(b, e)];
                    }
                }
            }
        }
        count += 1;
    }
    op /= count as f64;
    Ok(IntertwinerProjector { phi: phi.clone(), psi: psi.clone(), op })
}

fn vec_row_major(w: &DMatrix<f64>) -> DVector<f64> {
    let (d, k) = w.shape();
    DVector::from_fn(d * k, |i, _| w[(i / k, i % k)])
}

fn unvec_row_major(v: &DVector<f64>, d: usize, k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d, k, |a, b| v[a * k + b])
}

impl IntertwinerProjector {
    pub fn phi(&self) -> &Representation {
        &self.phi
    }

    pub fn psi(&self) -> &Representation {
        &self.psi
    }

    /// (d, k): input-side and output-side dimensions.
    pub fn dims(&self) -> (usize, usize) {
        (self.phi.dim(), self.psi.dim())
    }

    /// Tensor component Ψ_abce.
    pub fn component(&self, a: usize, b: usize, c: usize, e: usize) -> f64 {
        let k = self.psi.dim();
        self.op[(a * k + b, c * k + e)]
    }

    /// The flattened (dk)×(dk) operator.
    pub fn flattened(&self) -> &DMatrix<f64> {
        &self.op
    }

    /// Trace of the flattened operator = dim S, the dimension of the space
    /// of intertwiners.
    pub fn dim_s(&self) -> f64 {
        self.op.trace()
    }

    fn check_shape(&self, w: &DMatrix<f64>) -> Result<()> {
        let (d, k) = self.dims();
        if w.shape() != (d, k) {
            return Err(CoreError::ShapeMismatch {
                expected: format!("{d}×{k}"),
                got: format!("{}×{}", w.nrows(), w.ncols()),
            });
        }
        Ok(())
    }

    /// W̄ = Ψ_G(W): a single contraction of the tensor with the last two
    /// indices of W. The image intertwines ψ → φ.
    pub fn project(&self, w: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.check_shape(w)?;
        let (d, k) = self.dims();
        let v = vec_row_major(w);
        Ok(unvec_row_major(&(&self.op * v), d, k))
    }

    /// W⊥ = W − Ψ_G(W).
    pub fn complement(&self, w: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        Ok(w - self.project(w)?)
    }

    /// Relative size of the anti-symmetric part, ‖Ψ⊥(W)‖_F / max(‖W‖_F, 1).
    pub fn relative_complement_norm(&self, w: &DMatrix<f64>) -> Result<f64> {
        Ok(self.complement(w)?.norm() / w.norm().max(1.0))
    }

    /// Flat binary layout: header of four u64 little-endian dims (d, k, d, k)
    /// followed by the d·k·d·k tensor entries as f64 little-endian in
    /// row-major (a, b, c, e) order.
    pub fn write_binary<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let (d, k) = self.dims();
        for dim in [d, k, d, k] {
            out.write_all(&(dim as u64).to_le_bytes())?;
        }
        let n = d * k;
        for row in 0..n {
            for col in 0..n {
                out.write_all(&self.op[(row, col)].to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// CSV inspection dump: one `a,b,c,e,value` row per tensor component.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "a,b,c,e,value")?;
        let (d, k) = self.dims();
        for a in 0..d {
            for b in 0..k {
                for c in 0..d {
                    for e in 0..k {
                        writeln!(out, "{a},{b},{c},{e},{}", self.component(a, b, c, e))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reads the flat binary tensor layout back: dims (d, k) and the flattened
/// (dk)×(dk) operator.
pub fn read_binary_tensor<R: Read>(mut input: R) -> Result<(usize, usize, DMatrix<f64>)> {
    let mut dims = [0usize; 4];
    for d in dims.iter_mut() {
        let mut buf = [0u8; 8];
        input.read_exact(&mut buf)?;
        *d = u64::from_le_bytes(buf) as usize;
    }
    if dims[0] != dims[2] || dims[1] != dims[3] {
        return Err(CoreError::InvalidConstruction(format!(
            "tensor header {dims:?} is not of shape d×k×d×k"
        )));
    }
    let (d, k) = (dims[0], dims[1]);
    let n = d * k;
    let mut op = DMatrix::<f64>::zeros(n, n);
    for row in 0..n {
        for col in 0..n {
            let mut buf = [0u8; 8];
            input.read_exact(&mut buf)?;
            op[(row, col)] = f64::from_le_bytes(buf);
        }
    }
    Ok((d, k, op))
}

/// ⟨χψ, χφ⟩ = ∫ χψ(g) χφ(g) dλ(g), the dimension of the space of
/// intertwiners. Computed as the exact average of character products and
/// cross-checked against the independently computed trace of Ψ_G; a
/// discrepancy indicates a projector bug, so it is asserted.
pub fn character_inner_product(phi: &Representation, psi: &Representation) -> Result<f64> {
    if phi.group() != psi.group() {
        return Err(CoreError::GroupMismatch(
            phi.group().to_string(),
            psi.group().to_string(),
        ));
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for g in phi.group().element_iter() {
        sum += phi.character(&g).expect("enumerated element")
            * psi.character(&g).expect("enumerated element");
        count += 1;
    }
    let avg = sum / count as f64;
    let trace = build_intertwiner_projector(phi, psi)?.dim_s();
    assert!(
        (avg - trace).abs() <= 1e-8,
        "character inner product {avg} disagrees with tr Ψ_G = {trace}"
    );
    Ok(avg)
}

/// dim A = dk − ⟨χψ, χφ⟩: the dimension of the anti-symmetric maps, i.e. of
/// those that vanish under the intertwining average.
pub fn dim_a(phi: &Representation, psi: &Representation) -> Result<f64> {
    let dims = (phi.dim() * psi.dim()) as f64;
    let value = dims - character_inner_product(phi, psi)?;
    assert!(value >= -1e-8, "dim A must be nonnegative, got {value}");
    Ok(value)
}

/// J_G = ∫ (χφ(g) ψ(g) + ψ(g²)) dλ(g), the k×k matrix entering the
/// noiseless term of the equivariant gap. With trivial ψ it reduces to the
/// scalar dim S + 1.
pub fn j_matrix(phi: &Representation, psi: &Representation) -> Result<DMatrix<f64>> {
    if phi.group() != psi.group() {
        return Err(CoreError::GroupMismatch(
            phi.group().to_string(),
            psi.group().to_string(),
        ));
    }
    let group = phi.group();
    let k = psi.dim();
    let mut j = DMatrix::<f64>::zeros(k, k);
    let mut count = 0usize;
    for g in group.element_iter() {
        let chi = phi.character(&g).expect("enumerated element");
        let g2 = group.compose(&g, &g).expect("enumerated element");
        j += psi.matrix(&g).expect("enumerated element") * chi
            + psi.matrix(&g2).expect("enumerated element");
        count += 1;
    }
    j /= count as f64;
    Ok(j)
}

/// (Q f)(x) = ∫ ψ(g⁻¹) f(φ(g) x) dλ(g): the equivariant average of an
/// arbitrary function R^d → R^k at a point. Exact over the enumeration for
/// finite groups (`samples` ignored); a Monte Carlo mean over `samples` Haar
/// draws when the group has a torus factor.
pub fn mc_average_q<F, R>(
    f: F,
    phi: &Representation,
    psi: &Representation,
    x: &DVector<f64>,
    samples: usize,
    rng: &mut R,
) -> Result<DVector<f64>>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
    R: Rng + ?Sized,
{
    if phi.group() != psi.group() {
        return Err(CoreError::GroupMismatch(
            phi.group().to_string(),
            psi.group().to_string(),
        ));
    }
    if x.len() != phi.dim() {
        return Err(CoreError::ShapeMismatch {
            expected: format!("point in R^{}", phi.dim()),
            got: format!("R^{}", x.len()),
        });
    }
    let group = phi.group();
    let term = |g: &Element| -> Result<DVector<f64>> {
        let gx = phi.matrix(g)? * x;
        let fgx = f(&gx);
        if fgx.len() != psi.dim() {
            return Err(CoreError::ShapeMismatch {
                expected: format!("f value in R^{}", psi.dim()),
                got: format!("R^{}", fgx.len()),
            });
        }
        Ok(psi.matrix(&group.inverse(g)?)? * fgx)
    };
    let mut acc = DVector::<f64>::zeros(psi.dim());
    if group.is_finite() {
        let mut count = 0usize;
        for g in group.element_iter() {
            acc += term(&g)?;
            count += 1;
        }
        Ok(acc / count as f64)
    } else {
        assert!(samples >= 1, "need at least one Monte Carlo sample");
        for _ in 0..samples {
            let g = group.sample_haar(rng);
            acc += term(&g)?;
        }
        Ok(acc / samples as f64)
    }
}

/// The symmetric/anti-symmetric split of a function evaluated at chosen test
/// points, plus a Monte Carlo estimate of the μ-inner-product ⟨s, a⟩_μ
/// (zero in exact arithmetic whenever μ is G-invariant).
#[derive(Debug, Clone)]
pub struct FunctionDecomposition {
    /// s = Q f at each test point.
    pub symmetric_values: Vec<DVector<f64>>,
    /// a = f − Q f at each test point.
    pub antisymmetric_values: Vec<DVector<f64>>,
    /// Estimate of ⟨s, a⟩_μ with its standard error.
    pub inner_product: MeanStderr,
}

/// Splits `f` into s = Q f and a = f − Q f and estimates ⟨s, a⟩_μ with
/// `samples` draws from `mu_sampler` (which must draw from a G-invariant
/// law). On continuous groups, s is estimated twice with independent group
/// draws inside the inner product so the product estimate is unbiased.
pub fn decompose_function<F, S, R>(
    f: F,
    phi: &Representation,
    psi: &Representation,
    test_points: &[DVector<f64>],
    mut mu_sampler: S,
    samples: usize,
    rng: &mut R,
) -> Result<FunctionDecomposition>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
    S: FnMut(&mut R) -> DVector<f64>,
    R: Rng + ?Sized,
{
    let mut symmetric_values = Vec::with_capacity(test_points.len());
    let mut antisymmetric_values = Vec::with_capacity(test_points.len());
    for x in test_points {
        let s = mc_average_q(&f, phi, psi, x, samples, rng)?;
        antisymmetric_values.push(f(x) - &s);
        symmetric_values.push(s);
    }

    let independent_q = !phi.group().is_finite();
    let mut products = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = mu_sampler(rng);
        let s1 = mc_average_q(&f, phi, psi, &x, samples, rng)?;
        let s2 = if independent_q {
            mc_average_q(&f, phi, psi, &x, samples, rng)?
        } else {
            s1.clone()
        };
        let a = f(&x) - &s2;
        products.push(s1.dot(&a));
    }
    Ok(FunctionDecomposition {
        symmetric_values,
        antisymmetric_values,
        inner_product: MeanStderr::from_values(&products),
    })
}
