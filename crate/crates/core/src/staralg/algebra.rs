use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::StarError;
use crate::groups::FiniteGroup;
use crate::mathcore::{self, CMatrix, C64, ONE, ZERO};

/// Element of a vertex algebra as a coefficient vector over its fixed basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AElem(pub Vec<C64>);

impl AElem {
    pub fn zeros(n: usize) -> Self {
        Self(vec![ZERO; n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![ZERO; n];
        v[i] = ONE;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, z: C64) -> Self {
        Self(self.0.iter().map(|x| x * z).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Euclidean norm of the coefficients.
    pub fn coeff_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| *z == ZERO)
    }
}

/// Which concrete algebra sits at a vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    /// `M_d` with state `tr(state · a)`; basis `E_ij` at index `i*d + j`.
    Matrix { d: usize, state: CMatrix },
    /// Group algebra with the canonical trace; basis `u_g` at index `g`.
    Group { group: FiniteGroup },
    /// Laurent polynomials of degree in `[-band, band]` with the canonical
    /// trace; basis `x^k` at index `k + band`.
    Laurent { band: i64 },
}

/// A finite-dimensional unital *-algebra (or banded Laurent model) with a
/// state and an orthonormal basis of the state's kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraKind", into = "AlgebraKind")]
pub struct VertexAlgebra {
    kind: AlgebraKind,
    state: Vec<C64>,
    kernel: Vec<AElem>,
}

impl TryFrom<AlgebraKind> for VertexAlgebra {
    type Error = StarError;

    fn try_from(kind: AlgebraKind) -> Result<Self, StarError> {
        Self::new(kind)
    }
}

impl From<VertexAlgebra> for AlgebraKind {
    fn from(a: VertexAlgebra) -> Self {
        a.kind
    }
}

impl VertexAlgebra {
    pub fn new(kind: AlgebraKind) -> Result<Self, StarError> {
        let state = match &kind {
            AlgebraKind::Matrix { d, state } => {
                if *d == 0 || state.rows() != *d || state.cols() != *d {
                    return Err(StarError::SpecInvalid("density matrix has wrong shape".into()));
                }
                if (state.trace() - ONE).norm() > 1e-10 {
                    return Err(StarError::SpecInvalid("density matrix must have trace 1".into()));
                }
                if !mathcore::is_psd(state, 1e-10)?.pass {
                    return Err(StarError::SpecInvalid("density matrix is not PSD".into()));
                }
                // φ(a) = Σ_ij ρ_ji a_ij
                let mut s = vec![ZERO; d * d];
                for i in 0..*d {
                    for j in 0..*d {
                        s[i * d + j] = state[(j, i)];
                    }
                }
                s
            }
            AlgebraKind::Group { group } => {
                let mut s = vec![ZERO; group.order()];
                s[group.identity()] = ONE;
                s
            }
            AlgebraKind::Laurent { band } => {
                if *band < 1 || *band > 64 {
                    return Err(StarError::SpecInvalid(format!("Laurent band {band} out of range 1..=64")));
                }
                let mut s = vec![ZERO; (2 * band + 1) as usize];
                s[*band as usize] = ONE;
                s
            }
        };
        let kernel = kernel_basis(&state);
        Ok(Self { kind, state, kernel })
    }

    /// `M_d` with the normalized trace.
    pub fn matrix_tracial(d: usize) -> Self {
        Self::matrix(CMatrix::identity(d).scale_real(1.0 / d as f64)).expect("tracial state")
    }

    pub fn matrix(state: CMatrix) -> Result<Self, StarError> {
        Self::new(AlgebraKind::Matrix { d: state.rows(), state })
    }

    pub fn group(group: FiniteGroup) -> Self {
        Self::new(AlgebraKind::Group { group }).expect("group algebras are always valid")
    }

    pub fn laurent(band: i64) -> Result<Self, StarError> {
        Self::new(AlgebraKind::Laurent { band })
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.state.len()
    }

    pub fn kernel_basis(&self) -> &[AElem] {
        &self.kernel
    }

    pub fn unit(&self) -> AElem {
        match &self.kind {
            AlgebraKind::Matrix { d, .. } => AElem::from_matrix(&CMatrix::identity(*d)),
            AlgebraKind::Group { group } => AElem::basis(group.order(), group.identity()),
            AlgebraKind::Laurent { band } => AElem::basis(self.dim(), *band as usize),
        }
    }

    pub fn basis(&self, i: usize) -> AElem {
        AElem::basis(self.dim(), i)
    }

    pub fn check(&self, a: &AElem) -> Result<(), StarError> {
        if a.dim() != self.dim() {
            return Err(StarError::AlgebraMismatch(format!(
                "element of dimension {} in algebra of dimension {}",
                a.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn state(&self, a: &AElem) -> C64 {
        self.state.iter().zip(&a.0).map(|(s, x)| s * x).sum()
    }

    /// `a = å + φ(a)·1`.
    pub fn center(&self, a: &AElem) -> (AElem, C64) {
        let s = self.state(a);
        (a.sub(&self.unit().scale(s)), s)
    }

    pub fn mul(&self, a: &AElem, b: &AElem) -> Result<AElem, StarError> {
        self.check(a)?;
        self.check(b)?;
        match &self.kind {
            AlgebraKind::Matrix { .. } => Ok(AElem::from_matrix(&(&a.to_matrix() * &b.to_matrix()))),
            AlgebraKind::Group { group } => {
                let mut out = AElem::zeros(group.order());
                for (g, x) in a.0.iter().enumerate() {
                    if *x == ZERO {
                        continue;
                    }
                    for (h, y) in b.0.iter().enumerate() {
                        out.0[group.mul(g, h)] += x * y;
                    }
                }
                Ok(out)
            }
            AlgebraKind::Laurent { band } => {
                let n = *band;
                let mut out = AElem::zeros(self.dim());
                for (i, x) in a.0.iter().enumerate() {
                    if *x == ZERO {
                        continue;
                    }
                    for (j, y) in b.0.iter().enumerate() {
                        if *y == ZERO {
                            continue;
                        }
                        let deg = (i as i64 - n) + (j as i64 - n);
                        if deg.abs() > n {
                            return Err(StarError::OutOfBand { degree: deg, band: n });
                        }
                        out.0[(deg + n) as usize] += x * y;
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn adjoint(&self, a: &AElem) -> AElem {
        match &self.kind {
            AlgebraKind::Matrix { .. } => AElem::from_matrix(&a.to_matrix().adjoint()),
            AlgebraKind::Group { group } => {
                AElem((0..group.order()).map(|g| a.0[group.inv(g)].conj()).collect())
            }
            AlgebraKind::Laurent { .. } => AElem(a.0.iter().rev().map(|z| z.conj()).collect()),
        }
    }

    /// Faithful finite representation: the matrix itself, or the left
    /// regular representation for group algebras. `None` for Laurent.
    pub fn represent(&self, a: &AElem) -> Option<CMatrix> {
        match &self.kind {
            AlgebraKind::Matrix { .. } => Some(a.to_matrix()),
            AlgebraKind::Group { group } => {
                let n = group.order();
                let mut m = CMatrix::zeros(n, n);
                for (g, x) in a.0.iter().enumerate() {
                    if *x != ZERO {
                        m = &m + &group.regular_rep(g).scale(*x);
                    }
                }
                Some(m)
            }
            AlgebraKind::Laurent { .. } => None,
        }
    }

    /// C*-norm. For Laurent elements this is the sup over the unit circle,
    /// sampled finely and padded by a derivative bound so it never
    /// underestimates; a single monomial is exact.
    pub fn norm(&self, a: &AElem) -> f64 {
        if let Some(m) = self.represent(a) {
            return mathcore::op_norm(&m);
        }
        let n = (self.dim() as i64 - 1) / 2;
        let nonzero: Vec<(i64, C64)> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(i, z)| (i as i64 - n, *z))
            .collect();
        if nonzero.len() <= 1 {
            return nonzero.first().map_or(0.0, |(_, z)| z.norm());
        }
        const SAMPLES: usize = 4096;
        let mut best = 0.0f64;
        for s in 0..SAMPLES {
            let t = 2.0 * PI * s as f64 / SAMPLES as f64;
            let val: C64 = nonzero.iter().map(|(k, z)| z * C64::from_polar(1.0, t * *k as f64)).sum();
            best = best.max(val.norm());
        }
        let lip: f64 = nonzero.iter().map(|(k, z)| k.unsigned_abs() as f64 * z.norm()).sum();
        best + lip * PI / SAMPLES as f64
    }

    /// Coordinates of a centered element in the kernel basis.
    pub fn kernel_coords(&self, a: &AElem) -> Vec<C64> {
        self.kernel
            .iter()
            .map(|k| k.0.iter().zip(&a.0).map(|(x, y)| x.conj() * y).sum())
            .collect()
    }

    /// Random element with unit-scale Gaussian coefficients. Laurent elements
    /// are kept to degree at most one.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AElem {
        let mut g = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        match &self.kind {
            AlgebraKind::Laurent { band } => {
                let mut out = AElem::zeros(self.dim());
                for k in -1..=1 {
                    out.0[(k + band) as usize] = g();
                }
                out
            }
            _ => AElem((0..self.dim()).map(|_| g()).collect()),
        }
    }

    /// Random element of the kernel of the state, scaled to norm one. Zero
    /// when the kernel is trivial.
    pub fn random_centered<R: Rng + ?Sized>(&self, rng: &mut R) -> AElem {
        if self.kernel.is_empty() {
            return AElem::zeros(self.dim());
        }
        loop {
            let (c, _) = self.center(&self.random_element(rng));
            let n = self.norm(&c);
            if n > 1e-6 {
                return c.scale(C64::new(1.0 / n, 0.0));
            }
        }
    }
}

impl AElem {
    /// Square matrix from a row-major coefficient vector.
    pub fn to_matrix(&self) -> CMatrix {
        let d = (self.dim() as f64).sqrt().round() as usize;
        CMatrix::new(d, d, self.0.clone()).expect("square coefficient vector")
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        Self(m.data().to_vec())
    }
}

/// Orthonormal basis of `{a : Σ s_i a_i = 0}` by Gram-Schmidt on the
/// standard basis projected away from `conj(s)`.
fn kernel_basis(state: &[C64]) -> Vec<AElem> {
    let n = state.len();
    let sn: f64 = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let normal: Vec<C64> = state.iter().map(|z| z.conj() / sn).collect();
    let mut basis: Vec<Vec<C64>> = vec![normal];
    for i in 0..n {
        let mut v = vec![ZERO; n];
        v[i] = ONE;
        for _ in 0..2 {
            for b in &basis {
                let ip: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk -= ip * bk;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
        if basis.len() == n {
            break;
        }
    }
    basis.into_iter().skip(1).map(AElem).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn center_examples() {
        let m2 = VertexAlgebra::matrix_tracial(2);
        let (c, s) = m2.center(&m2.unit());
        assert!(c.coeff_norm() < 1e-15 && (s - ONE).norm() < 1e-15);
        let a = AElem::from_matrix(&CMatrix::diag_real(&[1.0, -1.0]));
        let (c, s) = m2.center(&a);
        assert_eq!(c, a);
        assert_eq!(s, ZERO);
        let a = AElem::from_matrix(&CMatrix::diag_real(&[2.0, 0.0]));
        let (c, s) = m2.center(&a);
        assert!((s - ONE).norm() < 1e-15);
        assert!(c.sub(&AElem::from_matrix(&CMatrix::diag_real(&[1.0, -1.0]))).coeff_norm() < 1e-15);
    }

    #[test]
    fn kernel_basis_is_orthonormal_and_centered() {
        let mut rng = seeded(1);
        let g = mathcore::random_gaussian(3, 3, &mut rng);
        let rho = g.gram();
        let rho = rho.scale_real(1.0 / rho.trace().re);
        let a = VertexAlgebra::matrix(rho).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.len(), 8);
        for (i, x) in k.iter().enumerate() {
            assert!(a.state(x).norm() < 1e-12);
            for (j, y) in k.iter().enumerate() {
                let ip: C64 = x.0.iter().zip(&y.0).map(|(p, q)| p.conj() * q).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-12);
            }
        }
        let z3 = VertexAlgebra::group(FiniteGroup::cyclic(3).unwrap());
        assert_eq!(z3.kernel_basis(), &[AElem::basis(3, 1), AElem::basis(3, 2)]);
    }

    #[test]
    fn laurent_band_rejects_overflow() {
        let l = VertexAlgebra::laurent(2).unwrap();
        let x = l.basis(3);
        let x2 = l.mul(&x, &x).unwrap();
        assert_eq!(x2, l.basis(4));
        assert_eq!(l.mul(&x2, &x), Err(StarError::OutOfBand { degree: 3, band: 2 }));
        assert_eq!(l.adjoint(&x), l.basis(1));
        assert_eq!(l.norm(&x), 1.0);
        // 1 + x has sup norm 2 on the circle
        let p = l.unit().add(&x);
        let n = l.norm(&p);
        assert!((2.0..2.01).contains(&n));
    }

    #[test]
    fn group_algebra_ops() {
        let s3 = FiniteGroup::symmetric3();
        let a = VertexAlgebra::group(s3.clone());
        let mut rng = seeded(4);
        let x = a.random_element(&mut rng);
        let y = a.random_element(&mut rng);
        let lhs = a.represent(&a.mul(&x, &y).unwrap()).unwrap();
        let rhs = &a.represent(&x).unwrap() * &a.represent(&y).unwrap();
        assert!(lhs.dist(&rhs) < 1e-12);
        let adj = a.represent(&a.adjoint(&x)).unwrap();
        assert!(adj.dist(&a.represent(&x).unwrap().adjoint()) < 1e-12);
        assert!((a.norm(&a.unit()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_state() {
        assert!(VertexAlgebra::matrix(CMatrix::diag_real(&[1.0, 1.0])).is_err());
        assert!(VertexAlgebra::matrix(CMatrix::diag_real(&[1.5, -0.5])).is_err());
        assert!(VertexAlgebra::laurent(0).is_err());
    }
}
