//! The perpendicular category of an exceptional module: orthogonal real Schur
//! roots, the projected quiver with its coordinate transport, regularity tests
//! for weights, and the core subcone cut out by orthogonal roots.

use crate::field::{Field, PrimeField};
use crate::lattice::{
    imat_mul, imat_transpose, imat_unimodular_inverse, ivec_mat, primitive, Direction,
    EulerContext, IMat, IVec,
};
use crate::matrix::Mat;
use crate::quiver::{Arrow, Quiver};
use crate::rep::{
    end_decompose, exceptional_rep, generic_hom_ext, iso_test, project_module_right,
    random_rep, universal_map, MapDirection, Representation,
};
use crate::stability::{below, enumerate_rays, ConeDescription, StabilityError};
use rand::Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum PerpError {
    NotExceptional(IVec),
    BasicCountMismatch { expected: usize, got: usize },
    SizeMismatch,
}

impl fmt::Display for PerpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerpError::NotExceptional(e) => {
                write!(f, "no exceptional representation certified for {e:?}")
            }
            PerpError::BasicCountMismatch { expected, got } => {
                write!(f, "expected {expected} basic projectives, found {got}")
            }
            PerpError::SizeMismatch => write!(f, "coordinate vector has the wrong length"),
        }
    }
}

impl std::error::Error for PerpError {}

/// Indecomposable projective at a vertex as a path-space representation:
/// basis at w = paths v -> w, arrows act by path concatenation.
pub fn projective_rep<F: Field>(f: &F, q: &Quiver, v: usize) -> Representation<F> {
    let nv = q.n_vertices();
    // Paths as arrow-index sequences, grouped by endpoint, in DFS order.
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); nv];
    let mut stack = vec![(v, Vec::new())];
    while let Some((w, p)) = stack.pop() {
        paths[w].push(p.clone());
        for (i, a) in q.arrows.iter().enumerate().rev() {
            if a.tail == w {
                let mut ext = p.clone();
                ext.push(i);
                stack.push((a.head, ext));
            }
        }
    }
    let dim: IVec = paths.iter().map(|p| p.len() as i64).collect();
    let mats = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            Mat::from_fn(paths[a.tail].len(), paths[a.head].len(), |r, c| {
                let mut extended = paths[a.tail][r].clone();
                extended.push(i);
                if paths[a.head][c] == extended {
                    f.one()
                } else {
                    f.zero()
                }
            })
        })
        .collect();
    Representation::new(q, dim, mats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthRoot {
    pub eps: IVec,
    pub side: OrthSide,
    /// Left roots only: generic hom(eps, alpha - eps) = 0 as well.
    pub exceptional_to_alpha: bool,
}

/// Enumerate real Schur roots up to the bound that are orthogonal to alpha on
/// one side: Euler-orthogonal and without generic homomorphisms.
pub fn find_orthogonal_roots<F: Field, R: Rng>(
    f: &F,
    ctx: &EulerContext,
    alpha: &[i64],
    bound: &[i64],
    trials: usize,
    cap: u64,
    rng: &mut R,
) -> Result<Vec<OrthRoot>, StabilityError> {
    let count: u128 = bound.iter().map(|&b| (b + 1) as u128).product();
    if count > cap as u128 {
        return Err(StabilityError::CapExceeded(count));
    }
    let q = &ctx.quiver;
    let mut out = Vec::new();
    for eps in below(bound) {
        if eps.iter().all(|&x| x == 0) || ctx.euler_form(&eps, &eps) != 1 {
            continue;
        }
        if exceptional_rep(f, q, &eps, rng).is_none() {
            continue;
        }
        if ctx.euler_form(&eps, alpha) == 0
            && generic_hom_ext(f, q, &eps, alpha, trials, rng).0 == 0
        {
            let rest: IVec = alpha.iter().zip(&eps).map(|(a, e)| a - e).collect();
            let exceptional_to_alpha = rest.iter().all(|&x| x >= 0)
                && generic_hom_ext(f, q, &eps, &rest, trials, rng).0 == 0;
            out.push(OrthRoot { eps: eps.clone(), side: OrthSide::Left, exceptional_to_alpha });
        }
        if ctx.euler_form(alpha, &eps) == 0
            && generic_hom_ext(f, q, alpha, &eps, trials, rng).0 == 0
        {
            out.push(OrthRoot { eps, side: OrthSide::Right, exceptional_to_alpha: false });
        }
    }
    Ok(out)
}

/// Everything needed to move between the quiver and the perpendicular
/// category of E presented as a quiver with one vertex fewer.
pub struct ProjectionContext {
    pub eps: IVec,
    pub e_rep: Representation<PrimeField>,
    /// Dimension vectors (in Q coordinates) of the basic projectives of the
    /// perpendicular category, one per projected vertex.
    pub projective_dims: Vec<IVec>,
    /// Rows = classes of the projected simples in Q coordinates; dual to the
    /// projectives under the Euler form.
    pub simples: IMat,
    pub quiver_e: Quiver,
    pub ctx_q: EulerContext,
    pub ctx_e: EulerContext,
    /// Projected vertex i corresponds to the i-th discovered projective after
    /// topological reordering; the permutation from discovery order.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportDir {
    DownRight,
    DownDual,
    Up,
}

pub fn projected_quiver<R: Rng>(
    f: &PrimeField,
    ctx: &EulerContext,
    eps: &[i64],
    rng: &mut R,
) -> Result<ProjectionContext, PerpError> {
    let q = &ctx.quiver;
    let n = q.n_vertices();
    let e_rep =
        exceptional_rep(f, q, eps, rng).ok_or_else(|| PerpError::NotExceptional(eps.to_vec()))?;
    // Project every projective into the perpendicular category and split off
    // the basic indecomposable projectives there.
    let mut basics: Vec<Representation<PrimeField>> = Vec::new();
    for v in 0..n {
        let p = projective_rep(f, q, v);
        let proj = project_module_right(f, &p, &e_rep).map_err(|_| PerpError::SizeMismatch)?;
        let parts = end_decompose(f, &proj.rep, rng).map_err(|_| PerpError::SizeMismatch)?;
        for (piece, _) in parts {
            if piece.total_dim() == 0 {
                continue;
            }
            if !basics.iter().any(|b| iso_test(f, b, &piece, rng)) {
                basics.push(piece);
            }
        }
    }
    if basics.len() != n - 1 {
        return Err(PerpError::BasicCountMismatch { expected: n - 1, got: basics.len() });
    }
    let mut projective_dims: Vec<IVec> = basics.iter().map(|b| b.dim.clone()).collect();
    // Simples from duality: solve <p_i, s_j> = delta_ij within the sublattice
    // <eps, .> = 0. Stacking the projectives and eps gives a unimodular
    // system, so the solution is integral.
    let simples = simples_from_duality(ctx, &projective_dims, eps);
    let me = euler_submatrix(ctx, &simples);
    let adj = adjacency_from_euler(&me)?;
    // Topological reorder so reports are stable under relabeling.
    let order = topo_of_adjacency(&adj).ok_or(PerpError::SizeMismatch)?;
    let projective_perm: Vec<IVec> =
        order.iter().map(|&i| projective_dims[i].clone()).collect();
    projective_dims = projective_perm;
    let simples: IMat = {
        let s = simples_from_duality(ctx, &projective_dims, eps);
        s
    };
    let me = euler_submatrix(ctx, &simples);
    let adj = adjacency_from_euler(&me)?;
    let mut arrows = Vec::new();
    for (i, row) in adj.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            for c in 0..k {
                arrows.push(Arrow { tail: i, head: j, label: format!("e{i}_{j}_{c}") });
            }
        }
    }
    let quiver_e = Quiver::new((1..n).map(|v| v.to_string()).collect(), arrows)
        .map_err(|_| PerpError::SizeMismatch)?;
    let ctx_e = EulerContext::new(&quiver_e);
    Ok(ProjectionContext {
        eps: eps.to_vec(),
        e_rep,
        projective_dims,
        simples,
        quiver_e,
        ctx_q: ctx.clone(),
        ctx_e,
        order,
    })
}

fn simples_from_duality(ctx: &EulerContext, projective_dims: &[IVec], eps: &[i64]) -> IMat {
    let n = ctx.n();
    // Rows of C = pairings base: C * s^T = e_j with last row forcing
    // <eps, s> = 0.
    let mut c: IMat = projective_dims.iter().map(|p| ivec_mat(p, &ctx.m)).collect();
    c.push(ivec_mat(eps, &ctx.m));
    let c_inv = imat_unimodular_inverse(&c);
    // s_j^T is the j-th column of C^{-1}.
    (0..n - 1)
        .map(|j| (0..n).map(|i| c_inv[i][j]).collect())
        .collect()
}

fn euler_submatrix(ctx: &EulerContext, simples: &IMat) -> IMat {
    let st = imat_transpose(simples);
    imat_mul(&imat_mul(simples, &ctx.m), &st)
}

fn adjacency_from_euler(me: &IMat) -> Result<IMat, PerpError> {
    let k = me.len();
    let mut adj = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let expect = if i == j { 1 } else { 0 };
            let a = expect - me[i][j];
            if a < 0 && i != j {
                return Err(PerpError::SizeMismatch);
            }
            if i != j {
                adj[i][j] = a;
            } else if me[i][j] != 1 {
                return Err(PerpError::SizeMismatch);
            }
        }
    }
    Ok(adj)
}

fn topo_of_adjacency(adj: &IMat) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut indeg = vec![0i64; k];
    for row in adj {
        for (j, &v) in row.iter().enumerate() {
            indeg[j] += v;
        }
    }
    let mut order = Vec::new();
    let mut used = vec![false; k];
    while order.len() < k {
        let next = (0..k).find(|&v| !used[v] && indeg[v] == 0)?;
        used[next] = true;
        order.push(next);
        for (j, &c) in adj[next].iter().enumerate() {
            indeg[j] -= c;
        }
    }
    Some(order)
}

impl ProjectionContext {
    /// Coordinate transport between Q and the projected quiver: down-right and
    /// down-dual compose the lattice projection with the change to the
    /// projected simples basis; up is the section x -> x . S.
    pub fn transport(&self, x: &[i64], dir: TransportDir) -> Result<IVec, PerpError> {
        match dir {
            TransportDir::Up => {
                if x.len() != self.simples.len() {
                    return Err(PerpError::SizeMismatch);
                }
                let n = self.ctx_q.n();
                let mut out = vec![0i64; n];
                for (c, s) in x.iter().zip(&self.simples) {
                    for v in 0..n {
                        out[v] += c * s[v];
                    }
                }
                Ok(out)
            }
            TransportDir::DownRight | TransportDir::DownDual => {
                if x.len() != self.ctx_q.n() {
                    return Err(PerpError::SizeMismatch);
                }
                let side = match dir {
                    TransportDir::DownRight => crate::lattice::Side::Right,
                    _ => crate::lattice::Side::Dual,
                };
                let projected = self
                    .ctx_q
                    .project_root(x, &self.eps, side)
                    .map_err(|_| PerpError::SizeMismatch)?;
                Ok(self
                    .projective_dims
                    .iter()
                    .map(|p| self.ctx_q.euler_form(p, &projected))
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsPreserve {
    None,
    CaseI,
    CaseII,
}

/// Regularity of the weight attached to beta relative to E: whether random
/// modules of dimension n*beta map onto the required multiplicity of tau(E),
/// and which semistability-preservation case applies.
pub fn regular_weight_tests<R: Rng>(
    f: &PrimeField,
    pctx: &ProjectionContext,
    beta: &[i64],
    trials: usize,
    rng: &mut R,
) -> Result<(bool, SsPreserve), PerpError> {
    let ctx = &pctx.ctx_q;
    let tau_eps = ctx.coxeter(&pctx.eps, Direction::Forward);
    let tau_e = exceptional_rep(f, &ctx.quiver, &tau_eps, rng)
        .ok_or_else(|| PerpError::NotExceptional(tau_eps.clone()))?;
    let mut e_dual_regular = true;
    for n in 1..=2i64 {
        let nbeta: IVec = beta.iter().map(|&b| b * n).collect();
        for _ in 0..trials {
            let m = random_rep(f, &ctx.quiver, &nbeta, rng);
            let um = universal_map(f, &m, &tau_e, MapDirection::ToE)
                .map_err(|_| PerpError::SizeMismatch)?;
            if !um.surjective {
                e_dual_regular = false;
            }
        }
    }
    let pairing = ctx.euler_form(&pctx.eps, beta);
    let sspreserve = if pairing <= 0 {
        SsPreserve::CaseI
    } else {
        let (_, ext) = generic_hom_ext(f, &ctx.quiver, &tau_eps, beta, trials, rng);
        if ext == 0 {
            SsPreserve::CaseII
        } else {
            SsPreserve::None
        }
    };
    Ok((e_dual_regular, sspreserve))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreLocation {
    Interior,
    Shell,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreDescription {
    pub roots: Vec<OrthRoot>,
    /// Weight-space functionals g with sigma . g <= 0 on the core (in
    /// addition to the ample-cone constraints).
    pub inequalities: Vec<IVec>,
    pub rays_weight: Vec<IVec>,
    pub rays_beta: Vec<IVec>,
    pub empty: bool,
}

/// Pairing of beta against an orthogonal root, on the root's side.
pub fn root_pairing(ctx: &EulerContext, root: &OrthRoot, beta: &[i64]) -> i64 {
    match root.side {
        OrthSide::Left => ctx.euler_form(&root.eps, beta),
        OrthSide::Right => ctx.euler_form(beta, &root.eps),
    }
}

/// Core side of the ample cone: left roots must pair strictly positively
/// against beta, right roots strictly negatively; tight constraints put beta
/// on the shell.
pub fn core_membership(
    ctx: &EulerContext,
    cone: &ConeDescription,
    roots: &[OrthRoot],
    beta: &[i64],
) -> (CoreLocation, CoreDescription) {
    let desc = core_description(ctx, cone, roots);
    let mut tight = false;
    let mut loc = CoreLocation::Interior;
    for r in roots {
        let p = root_pairing(ctx, r, beta);
        let ok = match r.side {
            OrthSide::Left => p > 0,
            OrthSide::Right => p < 0,
        };
        if !ok {
            if p == 0 {
                tight = true;
            } else {
                loc = CoreLocation::Outside;
            }
        }
    }
    if loc == CoreLocation::Interior && tight {
        loc = CoreLocation::Shell;
    }
    (loc, desc)
}

/// H-description and rays of the core subcone, in weight coordinates. A left
/// root eps contributes sigma(eps) <= 0 (its pairing against beta is
/// -sigma(eps)); a right root contributes the transported functional.
pub fn core_description(
    ctx: &EulerContext,
    cone: &ConeDescription,
    roots: &[OrthRoot],
) -> CoreDescription {
    let mut ineqs = cone.inequalities.clone();
    for r in roots {
        let g = match r.side {
            OrthSide::Left => r.eps.clone(),
            OrthSide::Right => {
                // <beta, eps> <= 0 in sigma coordinates: beta = -sigma M^{-1},
                // so the functional is M^{-T} M eps^T, negated for <= 0 form.
                let m_inv_t = imat_transpose(&ctx.m_inv);
                let v = ivec_mat(&ivec_mat(&r.eps, &imat_transpose(&ctx.m)), &m_inv_t);
                v.iter().map(|x| -x).collect()
            }
        };
        let g = primitive(&g);
        if !ineqs.contains(&g) {
            ineqs.push(g);
        }
    }
    let rays_weight = enumerate_rays(&cone.equalities, &ineqs, cone.ambient);
    let rays_beta: Vec<IVec> = rays_weight
        .iter()
        .map(|s| primitive(&ctx.weight_to_dimvec(s)))
        .collect();
    let empty = rays_weight.is_empty();
    CoreDescription { roots: roots.to_vec(), inequalities: ineqs, rays_weight, rays_beta, empty }
}
