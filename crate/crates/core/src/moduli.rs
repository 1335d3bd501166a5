//! Moduli-level invariants: dimension and stability summaries, shell-crossing
//! blow-up reports, divisor-class transformation, anti-canonical identities,
//! and semi-invariant dimension estimation by determinant sampling.

use crate::field::{Field, PrimeField};
use crate::lattice::{gcd_vec, ivec_add, ivec_dot, ivec_sub, EulerContext, IVec, Side};
use crate::perp::{regular_weight_tests, ProjectionContext, SsPreserve, TransportDir};
use crate::rep::{generic_hom_ext, random_rep, semi_invariant};
use crate::stability::{
    dimvec_stability, functional_mod_alpha, wall_scan, StabilityClass, StabilityError,
};
use crate::matrix::{rank, Mat};
use rand::Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub alpha: IVec,
    pub sigma: IVec,
    pub stability: StabilityClass,
    /// 1 - <alpha, alpha>; absent when no semistable points exist.
    pub dimension: Option<i64>,
    /// Generic endomorphism ring is the base field.
    pub schur: bool,
    /// Cross-check: stability under the canonical weight, which must agree
    /// with the Schur flag.
    pub canonical_stable: bool,
    pub indivisible: bool,
}

pub fn analyze<F: Field, R: Rng>(
    f: &F,
    ctx: &EulerContext,
    alpha: &[i64],
    sigma: &[i64],
    trials: usize,
    cap: u64,
    rng: &mut R,
) -> Result<AnalysisReport, StabilityError> {
    let stability = dimvec_stability(f, ctx, alpha, sigma, trials, cap, rng)?;
    let dimension = match stability {
        StabilityClass::Unstable => None,
        _ => Some(1 - ctx.euler_form(alpha, alpha)),
    };
    // Generic endomorphism dimension: hom of one sample against itself, not
    // between two independent samples.
    let end = (0..trials)
        .map(|_| {
            let m = random_rep(f, &ctx.quiver, alpha, rng);
            crate::rep::hom_ext(f, &m, &m).expect("same quiver").hom
        })
        .min()
        .unwrap_or(1);
    let schur = end == 1;
    let sigma_ac = ctx.canonical_weight(alpha);
    let canonical_stable = dimvec_stability(f, ctx, alpha, &sigma_ac, trials, cap, rng)?
        == StabilityClass::Stable;
    Ok(AnalysisReport {
        alpha: alpha.to_vec(),
        sigma: sigma.to_vec(),
        stability,
        dimension,
        schur,
        canonical_stable,
        indivisible: gcd_vec(alpha) == 1,
    })
}

/// x strictly below y in the componentwise order: x <= y everywhere and x != y.
fn strictly_below(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b) && x != y
}

/// Indivisibility and no-halving hypothesis on the pair (alpha, eps):
/// gcd(alpha) = gcd(alpha - eps) = 1, and neither 2*eps nor 2*(alpha - eps)
/// sits strictly below alpha.
pub fn smiley_check(alpha: &[i64], eps: &[i64]) -> bool {
    let rest = ivec_sub(alpha, eps);
    let two_eps: IVec = eps.iter().map(|&x| 2 * x).collect();
    let two_rest: IVec = rest.iter().map(|&x| 2 * x).collect();
    gcd_vec(alpha) == 1
        && gcd_vec(&rest) == 1
        && !strictly_below(&two_eps, alpha)
        && !strictly_below(&two_rest, alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport {
    pub eps: IVec,
    pub alpha_e: IVec,
    /// Moduli dimension downstairs: 1 - <alpha_e, alpha_e> on the projected
    /// quiver.
    pub downstairs_dim: i64,
    pub smiley_ok: bool,
    pub single_wall_ok: bool,
    pub e_dual_regular: bool,
    pub sspreserve: SsPreserve,
    /// True when <eps, beta> > 0.
    pub e_effective: bool,
    /// -<alpha - eps, eps>, read as the codimension of the center.
    pub center_codim: i64,
    /// Literal dimension reading of the same quantity via the stratum count:
    /// (1 - <alpha-eps, alpha-eps>) + (ext(eps, alpha-eps) - 1).
    pub center_dim_thaddeus: i64,
    pub exceptional_locus_dim: i64,
    pub hom_rest_eps: usize,
    pub ext_rest_eps: i64,
    pub ext_eps_rest: i64,
}

pub fn blowup_report<R: Rng>(
    f: &PrimeField,
    pctx: &ProjectionContext,
    alpha: &[i64],
    beta: &[i64],
    trials: usize,
    cap: u64,
    rng: &mut R,
) -> Result<BlowupReport, StabilityError> {
    let ctx = &pctx.ctx_q;
    let eps = pctx.eps.clone();
    let rest = ivec_sub(alpha, &eps);
    let alpha_e = pctx
        .transport(alpha, TransportDir::DownRight)
        .map_err(|e| StabilityError::BadInput(e.to_string()))?;
    let downstairs_dim = 1 - pctx.ctx_e.euler_form(&alpha_e, &alpha_e);
    let smiley_ok = smiley_check(alpha, &eps);
    let sigma0 = ctx.dimvec_to_weight(beta);
    let beta_dual = ctx
        .project_root(beta, &eps, Side::Dual)
        .map_err(|e| StabilityError::BadInput(format!("{e:?}")))?;
    let sigma1 = ctx.dimvec_to_weight(&beta_dual);
    let crossings = wall_scan(f, ctx, alpha, &sigma0, &sigma1, trials, cap, rng)?;
    let eps_wall = functional_mod_alpha(&eps, alpha);
    let single_wall_ok = crossings.iter().all(|w| w.functional == eps_wall)
        && ivec_dot(&sigma1, &eps) == 0;
    let (e_dual_regular, sspreserve) = regular_weight_tests(f, pctx, beta, trials, rng)
        .map_err(|e| StabilityError::BadInput(e.to_string()))?;
    let e_effective = ctx.euler_form(&eps, beta) > 0;
    let center_codim = -ctx.euler_form(&rest, &eps);
    let (hom_rest_eps, ext_rest_eps) =
        generic_hom_ext(f, &ctx.quiver, &rest, &eps, trials, rng);
    let (_, ext_eps_rest) = generic_hom_ext(f, &ctx.quiver, &eps, &rest, trials, rng);
    let base = 1 - ctx.euler_form(&rest, &rest);
    Ok(BlowupReport {
        eps,
        alpha_e,
        downstairs_dim,
        smiley_ok,
        single_wall_ok,
        e_dual_regular,
        sspreserve,
        e_effective,
        center_codim,
        center_dim_thaddeus: base + (ext_eps_rest - 1),
        exceptional_locus_dim: base + (ext_rest_eps - 1),
        hom_rest_eps,
        ext_rest_eps,
        ext_eps_rest,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisorClass {
    pub pullback_coefficient: i64,
    /// -<eps, beta>; the coefficient of the exceptional divisor.
    pub exceptional_coefficient: i64,
    pub smiley_ok: bool,
    /// Sampled generic hom(alpha - eps, dual-projected beta) = 0.
    pub hom_hypothesis_ok: bool,
}

pub fn divisor_transform<F: Field, R: Rng>(
    f: &F,
    pctx: &ProjectionContext,
    alpha: &[i64],
    beta: &[i64],
    trials: usize,
    rng: &mut R,
) -> Result<DivisorClass, StabilityError> {
    let ctx = &pctx.ctx_q;
    let pairing = ctx.euler_form(&pctx.eps, beta);
    if pairing <= 0 {
        return Err(StabilityError::NonZeroPairing(pairing));
    }
    let rest = ivec_sub(alpha, &pctx.eps);
    let beta_dual = ctx
        .project_root(beta, &pctx.eps, Side::Dual)
        .map_err(|e| StabilityError::BadInput(format!("{e:?}")))?;
    let hom_hypothesis_ok = beta_dual.iter().all(|&x| x >= 0)
        && generic_hom_ext(f, &ctx.quiver, &rest, &beta_dual, trials, rng).0 == 0;
    Ok(DivisorClass {
        pullback_coefficient: 1,
        exceptional_coefficient: -pairing,
        smiley_ok: smiley_check(alpha, &pctx.eps),
        hom_hypothesis_ok,
    })
}

/// Two exact identities tying the anti-canonical class to the projection:
/// compatibility of alpha + tau(alpha) with the projected anti-canonical
/// class, and the pairing identity <eps, ac> = -<alpha-eps, eps> - 1.
pub fn anticanonical_checks(
    pctx: &ProjectionContext,
    alpha: &[i64],
) -> Result<(bool, bool), StabilityError> {
    let ctx = &pctx.ctx_q;
    let ac = ivec_add(alpha, &ctx.coxeter(alpha, crate::lattice::Direction::Forward));
    let down = pctx
        .transport(&ac, TransportDir::DownDual)
        .map_err(|e| StabilityError::BadInput(e.to_string()))?;
    let alpha_e = pctx
        .transport(alpha, TransportDir::DownRight)
        .map_err(|e| StabilityError::BadInput(e.to_string()))?;
    let ac_e = ivec_add(
        &alpha_e,
        &pctx.ctx_e.coxeter(&alpha_e, crate::lattice::Direction::Forward),
    );
    let projection_compat = down == ac_e;
    let rest = ivec_sub(alpha, &pctx.eps);
    let codim_identity =
        ctx.euler_form(&pctx.eps, &ac) == -ctx.euler_form(&rest, &pctx.eps) - 1;
    Ok((projection_compat, codim_identity))
}

/// Rank of the k_n x k_m evaluation matrix of determinant semi-invariants
/// between random modules: a stabilizing lower bound for the dimension of the
/// degree-n semi-invariants of weight sigma.
pub fn si_dimension<F: Field, R: Rng>(
    f: &F,
    ctx: &EulerContext,
    alpha: &[i64],
    sigma: &[i64],
    n: i64,
    k_n: usize,
    k_m: usize,
    rng: &mut R,
) -> Result<usize, StabilityError> {
    let p = ivec_dot(sigma, alpha);
    if p != 0 {
        return Err(StabilityError::NonZeroPairing(p));
    }
    let beta = ctx.weight_to_dimvec(sigma);
    let nbeta: IVec = beta.iter().map(|&b| b * n).collect();
    if nbeta.iter().any(|&b| b < 0) {
        return Err(StabilityError::BadInput(format!(
            "weight converts to non-effective {nbeta:?}"
        )));
    }
    let q = &ctx.quiver;
    let ms: Vec<_> = (0..k_m).map(|_| random_rep(f, q, alpha, rng)).collect();
    let ns: Vec<_> = (0..k_n).map(|_| random_rep(f, q, &nbeta, rng)).collect();
    let v = Mat::from_fn(k_n, k_m, |i, j| {
        semi_invariant(f, &ms[j], &ns[i]).expect("weight is orthogonal by construction")
    });
    Ok(rank(f, &v))
}

/// si_dimension with the sample count doubled until the rank stops growing;
/// returns the stabilized value and the (sample count, rank) curve.
pub fn si_dimension_stabilized<F: Field, R: Rng>(
    f: &F,
    ctx: &EulerContext,
    alpha: &[i64],
    sigma: &[i64],
    n: i64,
    rng: &mut R,
) -> Result<(usize, Vec<(usize, usize)>), StabilityError> {
    let mut k = 8;
    let mut curve = Vec::new();
    let mut last = si_dimension(f, ctx, alpha, sigma, n, k, k, rng)?;
    curve.push((k, last));
    loop {
        k *= 2;
        let next = si_dimension(f, ctx, alpha, sigma, n, k, k, rng)?;
        curve.push((k, next));
        if next == last || k > 512 {
            return Ok((next, curve));
        }
        last = next;
    }
}

pub fn hilbert_samples<F: Field, R: Rng>(
    f: &F,
    ctx: &EulerContext,
    alpha: &[i64],
    sigma: &[i64],
    n_max: i64,
    rng: &mut R,
) -> Result<Vec<usize>, StabilityError> {
    (1..=n_max)
        .map(|n| si_dimension_stabilized(f, ctx, alpha, sigma, n, rng).map(|(v, _)| v))
        .collect()
}

/// Kernel dimension of Ext(M, M) -> Ext(M, projection of M) for modules on
/// the non-orthogonality stratum; re-exported here with sampling plumbing for
/// reports. The value 1 witnesses the exceptional divisor's normal direction.
pub fn stratum_tangent_kernel<R: Rng>(
    f: &PrimeField,
    pctx: &ProjectionContext,
    m: &crate::rep::Representation<PrimeField>,
    _rng: &mut R,
) -> Result<usize, StabilityError> {
    crate::rep::tangent_kernel_dim(f, m, &pctx.e_rep)
        .map_err(|e| StabilityError::BadInput(e.to_string()))
}

/// Certified-on-success semistability of an explicit module, for reports.
pub fn module_semistable<R: Rng>(
    f: &PrimeField,
    ctx: &EulerContext,
    m: &crate::rep::Representation<PrimeField>,
    sigma: &[i64],
    trials: usize,
    rng: &mut R,
) -> Result<crate::rep::Semistability, StabilityError> {
    crate::rep::is_semistable_module(f, ctx, m, sigma, trials, rng)
        .map_err(|e| StabilityError::BadInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perp::projected_quiver;
    use crate::rep::hom_ext;
    use crate::quiver::{b1, c36, theta};
    use crate::stability::DEFAULT_ENUM_CAP;
    use crate::DEFAULT_PRIME;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME)
    }

    #[test]
    fn analyze_golden() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let ctx = EulerContext::new(&theta(3));
        let r = analyze(&f, &ctx, &[1, 1], &[1, -1], 3, DEFAULT_ENUM_CAP, &mut rng).unwrap();
        assert_eq!(r.dimension, Some(2));
        assert_eq!(r.stability, StabilityClass::Stable);
        assert!(r.schur && r.canonical_stable && r.indivisible);

        let ctx = EulerContext::new(&c36());
        let r = analyze(&f, &ctx, &[1, 4, 3], &[3, 3, -5], 3, DEFAULT_ENUM_CAP, &mut rng)
            .unwrap();
        assert_eq!(r.dimension, Some(3));
        assert_eq!(r.stability, StabilityClass::Stable);

        let r = analyze(&f, &ctx, &[1, 4, 3], &[-3, -3, 5], 3, DEFAULT_ENUM_CAP, &mut rng)
            .unwrap();
        assert_eq!(r.dimension, None);
    }

    #[test]
    fn smiley_golden() {
        assert!(smiley_check(&[1, 1, 1], &[1, 0, 1]));
        assert!(smiley_check(&[1, 4, 3], &[0, 3, 2]));
        assert!(!smiley_check(&[2, 4, 2], &[1, 2, 1]));
    }

    #[test]
    fn blowup_golden_b1() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let ctx = EulerContext::new(&b1());
        let pctx = projected_quiver(&f, &ctx, &[1, 0, 1], &mut rng).unwrap();
        let r = blowup_report(&f, &pctx, &[1, 1, 1], &[6, 5, 3], 3, DEFAULT_ENUM_CAP, &mut rng)
            .unwrap();
        assert_eq!(r.downstairs_dim, 2);
        assert_eq!(r.center_codim, 2);
        assert_eq!(r.center_dim_thaddeus, 0);
        assert_eq!(r.exceptional_locus_dim, 1);
        assert!(r.smiley_ok && r.single_wall_ok && r.e_dual_regular && r.e_effective);
        // Internal identity: with hom(alpha-eps, eps) = 0 the ext equals the
        // negated pairing.
        assert_eq!(r.hom_rest_eps, 0);
        assert_eq!(r.ext_rest_eps, r.center_codim);
    }

    #[test]
    fn blowup_golden_c36() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let ctx = EulerContext::new(&c36());
        let pctx = projected_quiver(&f, &ctx, &[0, 3, 2], &mut rng).unwrap();
        let r = blowup_report(&f, &pctx, &[1, 4, 3], &[4, 7, 5], 3, DEFAULT_ENUM_CAP, &mut rng)
            .unwrap();
        assert_eq!(r.downstairs_dim, 3);
        assert_eq!(r.center_codim, 2);
        assert_eq!(r.center_dim_thaddeus, 1);
        assert_eq!(r.exceptional_locus_dim, 2);
        assert!(r.smiley_ok && r.single_wall_ok && r.e_dual_regular && r.e_effective);
    }

    #[test]
    fn divisor_golden() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let ctx = EulerContext::new(&b1());
        let pctx = projected_quiver(&f, &ctx, &[1, 0, 1], &mut rng).unwrap();
        let d = divisor_transform(&f, &pctx, &[1, 1, 1], &[4, 3, 2], 3, &mut rng).unwrap();
        assert_eq!((d.pullback_coefficient, d.exceptional_coefficient), (1, -1));
        assert!(d.smiley_ok);

        let ctx = EulerContext::new(&c36());
        let pctx = projected_quiver(&f, &ctx, &[0, 3, 2], &mut rng).unwrap();
        let d = divisor_transform(&f, &pctx, &[1, 4, 3], &[4, 7, 5], 3, &mut rng).unwrap();
        assert_eq!((d.pullback_coefficient, d.exceptional_coefficient), (1, -1));
        // Non-effective pairing is rejected.
        assert!(divisor_transform(&f, &pctx, &[1, 4, 3], &[1, 1, 1], 3, &mut rng).is_err());
    }

    #[test]
    fn anticanonical_golden() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for (q, eps, alpha) in [
            (b1(), vec![1, 0, 1], vec![1, 1, 1]),
            (c36(), vec![0, 3, 2], vec![1, 4, 3]),
        ] {
            let ctx = EulerContext::new(&q);
            let pctx = projected_quiver(&f, &ctx, &eps, &mut rng).unwrap();
            let (compat, codim) = anticanonical_checks(&pctx, &alpha).unwrap();
            assert!(compat, "projection compatibility failed");
            assert!(codim, "codimension identity failed");
        }
    }

    #[test]
    fn si_dimension_golden_small() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let ctx = EulerContext::new(&theta(3));
        // Degree-n forms in three variables.
        for (n, expect) in [(1i64, 3usize), (2, 6), (3, 10)] {
            let (got, _) =
                si_dimension_stabilized(&f, &ctx, &[1, 1], &[1, -1], n, &mut rng).unwrap();
            assert_eq!(got, expect, "degree {n}");
        }
        let ctx = EulerContext::new(&b1());
        let (got, _) =
            si_dimension_stabilized(&f, &ctx, &[1, 1, 1], &[1, 1, -2], 1, &mut rng).unwrap();
        assert_eq!(got, 5);
    }

    #[test]
    fn si_dimension_golden_larger() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let ctx = EulerContext::new(&c36());
        let (got, _) =
            si_dimension_stabilized(&f, &ctx, &[1, 4, 3], &[3, 3, -5], 1, &mut rng).unwrap();
        assert_eq!(got, 10);
        let ctx = EulerContext::new(&b1());
        let got = hilbert_samples(&f, &ctx, &[1, 1, 1], &[2, 1, -3], 2, &mut rng).unwrap();
        assert_eq!(got, vec![9, 25]);
    }

    #[test]
    fn tangent_kernel_on_strata() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        // B1: the stratum is cut out by a vanishing arrow map d.
        let ctx = EulerContext::new(&b1());
        let pctx = projected_quiver(&f, &ctx, &[1, 0, 1], &mut rng).unwrap();
        let mut m = random_rep(&f, &ctx.quiver, &[1, 1, 1], &mut rng);
        m.mats[0] = Mat::zero(&f, 1, 1);
        let he = hom_ext(&f, &pctx.e_rep, &m).unwrap();
        assert_eq!((he.hom, he.ext), (1, 1));
        assert_eq!(stratum_tangent_kernel(&f, &pctx, &m, &mut rng).unwrap(), 1);
    }
}
