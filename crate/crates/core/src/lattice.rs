//! Integer lattice algebra attached to an acyclic quiver: Euler form, Coxeter
//! transformation, weight/dimension-vector conversion and root projections.
//!
//! Vectors are rows acting on matrices from the left. The Euler pairing is
//! `<x, y> = x * M * y^T` with `M = I - A` in the stored vertex order; `M` is
//! unimodular because the quiver is acyclic, so every linear solve below has a
//! unique integer solution. Intermediates run in i128 and panic on overflow.

use crate::quiver::Quiver;
use std::fmt;

pub type IVec = Vec<i64>;
pub type IMat = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    SizeMismatch { expected: usize, got: usize },
    NotRealRoot(IVec),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::SizeMismatch { expected, got } => {
                write!(f, "vector length {got} does not match quiver size {expected}")
            }
            LatticeError::NotRealRoot(v) => write!(f, "{v:?} is not a real root"),
        }
    }
}

impl std::error::Error for LatticeError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    Real,
    Isotropic,
    NonIsotropicImaginary,
    NotARootCandidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Dual,
}

pub fn imat_identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), k);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let s: i128 = (0..k).map(|l| a[i][l] as i128 * b[l][j] as i128).sum();
                    i64::try_from(s).expect("lattice overflow")
                })
                .collect()
        })
        .collect()
}

pub fn imat_transpose(a: &IMat) -> IMat {
    let (n, m) = (a.len(), a[0].len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Row vector times matrix.
pub fn ivec_mat(x: &[i64], a: &IMat) -> IVec {
    assert_eq!(x.len(), a.len());
    (0..a[0].len())
        .map(|j| {
            let s: i128 = (0..x.len()).map(|i| x[i] as i128 * a[i][j] as i128).sum();
            i64::try_from(s).expect("lattice overflow")
        })
        .collect()
}

pub fn ivec_dot(x: &[i64], y: &[i64]) -> i64 {
    assert_eq!(x.len(), y.len());
    let s: i128 = x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
    i64::try_from(s).expect("lattice overflow")
}

pub fn ivec_add(x: &[i64], y: &[i64]) -> IVec {
    x.iter().zip(y).map(|(a, b)| a.checked_add(*b).expect("lattice overflow")).collect()
}

pub fn ivec_sub(x: &[i64], y: &[i64]) -> IVec {
    x.iter().zip(y).map(|(a, b)| a.checked_sub(*b).expect("lattice overflow")).collect()
}

pub fn ivec_scale(x: &[i64], c: i64) -> IVec {
    x.iter().map(|a| a.checked_mul(c).expect("lattice overflow")).collect()
}

/// Determinant by Bareiss fraction-free elimination; exact in i128.
pub fn imat_det(a: &IMat) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).expect("lattice overflow")
}

/// Inverse of an integer matrix with determinant +-1 (adjugate over det).
pub fn imat_unimodular_inverse(a: &IMat) -> IMat {
    let n = a.len();
    let d = imat_det(a);
    assert!(d == 1 || d == -1, "matrix is not unimodular (det {d})");
    let minor = |r: usize, c: usize| -> i64 {
        let sub: IMat = (0..n)
            .filter(|&i| i != r)
            .map(|i| (0..n).filter(|&j| j != c).map(|j| a[i][j]).collect())
            .collect();
        if n == 1 {
            1
        } else {
            imat_det(&sub)
        }
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sgn = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sgn * minor(j, i) / d
                })
                .collect()
        })
        .collect()
}

/// Euler/Coxeter matrices of a quiver, all integral and exact.
#[derive(Debug, Clone)]
pub struct EulerContext {
    pub quiver: Quiver,
    pub m: IMat,
    pub m_inv: IMat,
    pub t: IMat,
    pub t_inv: IMat,
}

impl EulerContext {
    pub fn new(quiver: &Quiver) -> Self {
        let n = quiver.n_vertices();
        let adj = quiver.adjacency();
        let mut m = imat_identity(n);
        for i in 0..n {
            for j in 0..n {
                m[i][j] -= adj[i][j];
            }
        }
        let m_inv = imat_unimodular_inverse(&m);
        // T = -M * M^{-T}, so that <x, y> = -<y, tau x> for all x, y.
        let m_inv_t = imat_transpose(&m_inv);
        let mut t = imat_mul(&m, &m_inv_t);
        for row in &mut t {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        let t_inv = imat_unimodular_inverse(&t);
        EulerContext { quiver: quiver.clone(), m, m_inv, t, t_inv }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    fn check_len(&self, x: &[i64]) -> Result<(), LatticeError> {
        if x.len() != self.n() {
            Err(LatticeError::SizeMismatch { expected: self.n(), got: x.len() })
        } else {
            Ok(())
        }
    }

    /// `<x, y> = sum_v x_v y_v - sum_a x(ta) y(ha)`.
    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.check_len(x).unwrap();
        self.check_len(y).unwrap();
        ivec_dot(&ivec_mat(x, &self.m), y)
    }

    pub fn coxeter(&self, x: &[i64], dir: Direction) -> IVec {
        self.check_len(x).unwrap();
        match dir {
            Direction::Forward => ivec_mat(x, &self.t),
            Direction::Inverse => ivec_mat(x, &self.t_inv),
        }
    }

    /// The weight `sigma_beta = -<., beta>` of a dimension vector.
    pub fn dimvec_to_weight(&self, beta: &[i64]) -> IVec {
        self.check_len(beta).unwrap();
        let mb = ivec_mat(beta, &imat_transpose(&self.m));
        mb.iter().map(|&v| -v).collect()
    }

    /// The unique integer beta with `sigma = -<., beta>`; exists because M is
    /// unimodular.
    pub fn weight_to_dimvec(&self, sigma: &[i64]) -> IVec {
        self.check_len(sigma).unwrap();
        let neg: IVec = sigma.iter().map(|&v| -v).collect();
        ivec_mat(&neg, &imat_transpose(&self.m_inv))
    }

    /// Anti-canonical weight `<alpha, .> - <., alpha>`.
    pub fn canonical_weight(&self, alpha: &[i64]) -> IVec {
        self.check_len(alpha).unwrap();
        let left = ivec_mat(alpha, &self.m);
        let right = ivec_mat(alpha, &imat_transpose(&self.m));
        ivec_sub(&left, &right)
    }

    /// Per-vertex arrow sums: at q, the sum of alpha over heads of arrows
    /// leaving q minus the sum over tails of arrows entering q. Agrees with
    /// [`Self::canonical_weight`]; kept as an independent code path for tests.
    pub fn canonical_weight_by_arrows(&self, alpha: &[i64]) -> IVec {
        self.check_len(alpha).unwrap();
        let mut out = vec![0i64; self.n()];
        for a in &self.quiver.arrows {
            out[a.tail] += alpha[a.head];
            out[a.head] -= alpha[a.tail];
        }
        out
    }

    pub fn root_classify(&self, x: &[i64]) -> RootClass {
        match self.euler_form(x, x) {
            1 => RootClass::Real,
            0 => RootClass::Isotropic,
            v if v < 0 => RootClass::NonIsotropicImaginary,
            _ => RootClass::NotARootCandidate,
        }
    }

    /// Lattice projection away from a real root: right side
    /// `x - <eps, x> eps`, dual side `x + <eps, x> tau(eps)`. Both land in the
    /// sublattice orthogonal to eps on the left.
    pub fn project_root(&self, x: &[i64], eps: &[i64], side: Side) -> Result<IVec, LatticeError> {
        self.check_len(x)?;
        self.check_len(eps)?;
        if self.euler_form(eps, eps) != 1 {
            return Err(LatticeError::NotRealRoot(eps.to_vec()));
        }
        let c = self.euler_form(eps, x);
        Ok(match side {
            Side::Right => ivec_sub(x, &ivec_scale(eps, c)),
            Side::Dual => ivec_add(x, &ivec_scale(&self.coxeter(eps, Direction::Forward), c)),
        })
    }
}

pub fn gcd_vec(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &v| num_integer::gcd(g, v.abs()))
}

pub fn primitive(x: &[i64]) -> IVec {
    let g = gcd_vec(x);
    if g == 0 {
        x.to_vec()
    } else {
        x.iter().map(|&v| v / g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{b1, c36, ex0, theta, theta22};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn euler_direct(q: &Quiver, x: &[i64], y: &[i64]) -> i64 {
        let mut s: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        for a in &q.arrows {
            s -= x[a.tail] * y[a.head];
        }
        s
    }

    #[test]
    fn euler_matches_double_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [theta(3), theta22(), b1(), c36(), ex0()] {
            let ctx = EulerContext::new(&q);
            for _ in 0..200 {
                let x: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(-9..10)).collect();
                let y: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(-9..10)).collect();
                assert_eq!(ctx.euler_form(&x, &y), euler_direct(&q, &x, &y));
            }
        }
    }

    #[test]
    fn euler_golden_values() {
        let t3 = EulerContext::new(&theta(3));
        assert_eq!(t3.euler_form(&[1, 1], &[1, 1]), -1);
        let c = EulerContext::new(&c36());
        assert_eq!(c.euler_form(&[0, 3, 2], &[0, 3, 2]), 1);
        assert_eq!(c.euler_form(&[0, 0, 0], &[5, -2, 7]), 0);
    }

    #[test]
    fn coxeter_golden_values() {
        let c = EulerContext::new(&c36());
        assert_eq!(c.coxeter(&[0, 3, 2], Direction::Forward), vec![5, 5, 4]);
        let b = EulerContext::new(&b1());
        assert_eq!(b.coxeter(&[1, 0, 1], Direction::Forward), vec![0, 1, 0]);
    }

    #[test]
    fn coxeter_duality_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for q in [theta(2), theta(3), theta(4), theta22(), b1(), c36(), ex0()] {
            let ctx = EulerContext::new(&q);
            for _ in 0..1000 {
                let x: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(-20..21)).collect();
                let y: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(-20..21)).collect();
                let tx = ctx.coxeter(&x, Direction::Forward);
                assert_eq!(ctx.euler_form(&x, &y), -ctx.euler_form(&y, &tx));
                assert_eq!(ctx.coxeter(&tx, Direction::Inverse), x);
            }
        }
    }

    #[test]
    fn weight_conversion_golden_values() {
        let b = EulerContext::new(&b1());
        assert_eq!(b.weight_to_dimvec(&[2, 1, -3]), vec![6, 5, 3]);
        let c = EulerContext::new(&c36());
        assert_eq!(c.weight_to_dimvec(&[3, 3, -5]), vec![4, 7, 5]);
        // sigma_beta(alpha) = 0 for the intended alpha.
        assert_eq!(ivec_dot(&[3, 3, -5], &[1, 4, 3]), 0);
        assert_eq!(c.weight_to_dimvec(&[0, 0, 0]), vec![0, 0, 0]);
    }

    #[test]
    fn weight_conversion_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [theta(3), b1(), c36(), ex0()] {
            let ctx = EulerContext::new(&q);
            for _ in 0..200 {
                let beta: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(-15..16)).collect();
                let sigma = ctx.dimvec_to_weight(&beta);
                assert_eq!(ctx.weight_to_dimvec(&sigma), beta);
                // sigma(e_v) = -<e_v, beta>.
                for v in 0..q.n_vertices() {
                    let mut ev = vec![0i64; q.n_vertices()];
                    ev[v] = 1;
                    assert_eq!(sigma[v], -ctx.euler_form(&ev, &beta));
                }
            }
        }
    }

    #[test]
    fn canonical_weight_golden_values() {
        let b = EulerContext::new(&b1());
        assert_eq!(b.canonical_weight(&[1, 1, 1]), vec![2, 1, -3]);
        let c = EulerContext::new(&c36());
        assert_eq!(c.canonical_weight(&[1, 4, 3]), vec![4, 5, -8]);
    }

    #[test]
    fn canonical_weight_two_formulas_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for q in [theta(3), theta22(), b1(), c36(), ex0()] {
            let ctx = EulerContext::new(&q);
            for _ in 0..100 {
                let a: IVec = (0..q.n_vertices()).map(|_| rng.gen_range(0..9)).collect();
                assert_eq!(ctx.canonical_weight(&a), ctx.canonical_weight_by_arrows(&a));
                // sigma_ac = sigma_{alpha + tau alpha}.
                let ata = ivec_add(&a, &ctx.coxeter(&a, Direction::Forward));
                assert_eq!(ctx.canonical_weight(&a), ctx.dimvec_to_weight(&ata));
            }
        }
    }

    #[test]
    fn projection_golden_values() {
        let c = EulerContext::new(&c36());
        assert_eq!(c.project_root(&[1, 4, 3], &[0, 3, 2], Side::Right).unwrap(), vec![1, 4, 3]);
        let b = EulerContext::new(&b1());
        assert_eq!(b.project_root(&[4, 3, 2], &[1, 0, 1], Side::Dual).unwrap(), vec![4, 4, 2]);
        assert_eq!(b.project_root(&[6, 5, 3], &[1, 0, 1], Side::Dual).unwrap(), vec![6, 6, 3]);
        assert!(b.project_root(&[1, 1, 1], &[2, 0, 2], Side::Right).is_err());
    }

    #[test]
    fn projection_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cases = [(b1(), vec![1i64, 0, 1]), (c36(), vec![0, 3, 2])];
        for (q, eps) in cases {
            let ctx = EulerContext::new(&q);
            for _ in 0..200 {
                let x: IVec = (0..3).map(|_| rng.gen_range(-12..13)).collect();
                let px = ctx.project_root(&x, &eps, Side::Right).unwrap();
                let dx = ctx.project_root(&x, &eps, Side::Dual).unwrap();
                // Idempotence and landing in the orthogonal sublattice.
                assert_eq!(ctx.project_root(&px, &eps, Side::Right).unwrap(), px);
                assert_eq!(ctx.euler_form(&eps, &px), 0);
                assert_eq!(ctx.euler_form(&eps, &dx), 0);
                // Pairing against the orthogonal sublattice is preserved.
                let y: IVec = (0..3).map(|_| rng.gen_range(-12..13)).collect();
                let py = ctx.project_root(&y, &eps, Side::Right).unwrap();
                assert_eq!(ctx.euler_form(&px, &py), ctx.euler_form(&x, &py));
                // Restricted Coxeter transformation: dual-project tau, then the
                // inverse is right-project tau^{-1}.
                let fwd = ctx
                    .project_root(&ctx.coxeter(&px, Direction::Forward), &eps, Side::Dual)
                    .unwrap();
                let back = ctx
                    .project_root(&ctx.coxeter(&fwd, Direction::Inverse), &eps, Side::Right)
                    .unwrap();
                assert_eq!(back, px);
            }
        }
    }

    #[test]
    fn root_classification() {
        let c = EulerContext::new(&c36());
        assert_eq!(c.root_classify(&[0, 3, 2]), RootClass::Real);
        assert_eq!(c.root_classify(&[1, 4, 3]), RootClass::NonIsotropicImaginary);
        assert_eq!(c.root_classify(&[0, 6, 4]), RootClass::NotARootCandidate);
        assert_eq!(c.euler_form(&[1, 4, 3], &[1, 4, 3]), -2);
    }

    #[test]
    fn euler_matrix_unimodular() {
        for q in [theta(4), theta22(), b1(), c36(), ex0()] {
            let ctx = EulerContext::new(&q);
            let d = imat_det(&ctx.m);
            assert_eq!(d.abs(), 1);
            assert_eq!(imat_mul(&ctx.m, &ctx.m_inv), imat_identity(q.n_vertices()));
            assert_eq!(imat_mul(&ctx.t, &ctx.t_inv), imat_identity(q.n_vertices()));
        }
    }
}
