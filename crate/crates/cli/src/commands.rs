//! Command implementations shared by the binary and the test suite.
//! Each command returns the report plus the process exit code: 0 success,
//! 1 input error (raised as Err upstream), 2 hypothesis failure.

use crate::corpus;
use crate::formats::{QuiverFile, ReportFile};
use anyhow::{anyhow, bail, Result};
use quiver_moduli::field::{PrimeField, Rationals};
use quiver_moduli::lattice::{EulerContext, IVec, Side};
use quiver_moduli::moduli::{
    analyze, anticanonical_checks, blowup_report, divisor_transform, si_dimension,
    si_dimension_stabilized,
};
use quiver_moduli::perp::{
    core_membership, find_orthogonal_roots, projected_quiver, OrthSide, TransportDir,
};
use quiver_moduli::stability::{g_ample_cone, StabilityClass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct RunOpts {
    pub seed: u64,
    pub prime: u64,
    pub trials: usize,
    pub cap: u64,
    pub certify: bool,
}

impl Default for RunOpts {
    fn default() -> Self {
        RunOpts {
            seed: 0,
            prime: quiver_moduli::DEFAULT_PRIME,
            trials: 3,
            cap: quiver_moduli::stability::DEFAULT_ENUM_CAP,
            certify: false,
        }
    }
}

impl RunOpts {
    fn field(&self) -> PrimeField {
        PrimeField::new(self.prime)
    }
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
    fn inputs(&self, qf: &QuiverFile, extra: serde_json::Value) -> serde_json::Value {
        let mut v = json!({
            "quiver": qf.name,
            "seed": self.seed,
            "prime": self.prime,
            "trials": self.trials,
            "cap": self.cap,
        });
        if let (Some(a), Some(b)) = (v.as_object_mut(), extra.as_object()) {
            for (k, val) in b {
                a.insert(k.clone(), val.clone());
            }
        }
        v
    }
}

fn stability_str(s: StabilityClass) -> &'static str {
    match s {
        StabilityClass::Stable => "stable",
        StabilityClass::StrictlySemistable => "strictly-semistable",
        StabilityClass::Unstable => "unstable",
    }
}

pub fn run_analyze(
    qf: &QuiverFile,
    alpha: &str,
    sigma: &str,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let s = qf.resolve_weight(sigma)?;
    let f = o.field();
    let mut rng = o.rng();
    let r = analyze(&f, &ctx, &a, &s, o.trials, o.cap, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let mut notes = vec!["stability and Schur flag are sampled; dimension is exact".into()];
    if o.certify {
        let rf = Rationals;
        let mut rrng = o.rng();
        let rr = analyze(&rf, &ctx, &a, &s, o.trials, o.cap, &mut rrng)
            .map_err(|e| anyhow!("{e}"))?;
        notes.push(format!(
            "rationals re-run agrees: {}",
            rr.stability == r.stability && rr.schur == r.schur
        ));
    }
    let report = ReportFile {
        command: "analyze".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "sigma": s})),
        outputs: json!({
            "stability": stability_str(r.stability),
            "dimension": r.dimension,
            "schur": r.schur,
            "canonical_stable": r.canonical_stable,
            "indivisible": r.indivisible,
        }),
        notes,
        discrepancies: vec![],
    };
    let exit = if r.schur == r.canonical_stable { 0 } else { 2 };
    Ok((report, exit))
}

pub fn run_roots(
    qf: &QuiverFile,
    alpha: &str,
    bound: Option<&str>,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let b = match bound {
        None | Some("alpha") => a.clone(),
        Some(s) => qf.resolve_dimvec(s)?,
    };
    let f = o.field();
    let mut rng = o.rng();
    let roots = find_orthogonal_roots(&f, &ctx, &a, &b, o.trials, o.cap, &mut rng)
        .map_err(|e| anyhow!("{e}"))?;
    let rows: Vec<serde_json::Value> = roots
        .iter()
        .map(|r| {
            json!({
                "eps": r.eps,
                "side": match r.side { OrthSide::Left => "left", OrthSide::Right => "right" },
                "exceptional_to_alpha": r.exceptional_to_alpha,
            })
        })
        .collect();
    let report = ReportFile {
        command: "roots".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "bound": b})),
        outputs: json!({ "roots": rows }),
        notes: vec![
            "orthogonality is exact; Schur certification and hom vanishing are sampled".into(),
            "enumeration bound recorded in inputs; roots above it are not searched".into(),
        ],
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub fn run_cone(qf: &QuiverFile, alpha: &str, o: &RunOpts) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let f = o.field();
    let mut rng = o.rng();
    let cone = g_ample_cone(&f, &ctx, &a, o.trials, o.cap, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let mut notes =
        vec!["facets come from sampled generic subdimension vectors; rays are exact".into()];
    if o.certify {
        let rf = Rationals;
        let mut rrng = o.rng();
        let again = g_ample_cone(&rf, &ctx, &a, o.trials, o.cap, &mut rrng)
            .map_err(|e| anyhow!("{e}"))?;
        notes.push(format!("rationals re-run agrees: {}", again == cone));
    }
    let report = ReportFile {
        command: "cone".into(),
        inputs: o.inputs(qf, json!({"alpha": a})),
        outputs: json!({
            "equalities": cone.equalities,
            "inequalities": cone.inequalities,
            "rays_weight": cone.rays_weight,
            "rays_beta": cone.rays_beta,
        }),
        notes,
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub fn run_core(
    qf: &QuiverFile,
    alpha: &str,
    beta: Option<&str>,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let f = o.field();
    let mut rng = o.rng();
    let cone = g_ample_cone(&f, &ctx, &a, o.trials, o.cap, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let roots = find_orthogonal_roots(&f, &ctx, &a, &a, o.trials, o.cap, &mut rng)
        .map_err(|e| anyhow!("{e}"))?;
    let probe = match beta {
        Some(b) => qf.resolve_dimvec(b)?,
        None => ctx.weight_to_dimvec(&ctx.canonical_weight(&a)),
    };
    let (loc, desc) = core_membership(&ctx, &cone, &roots, &probe);
    let report = ReportFile {
        command: "core".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "beta": probe})),
        outputs: json!({
            "membership": format!("{loc:?}").to_lowercase(),
            "inequalities": desc.inequalities,
            "rays_weight": desc.rays_weight,
            "rays_beta": desc.rays_beta,
            "empty": desc.empty,
            "roots_used": desc.roots.len(),
        }),
        notes: vec![
            "weak-core convention: roots bounded by alpha".into(),
            "pairing conditions read in dimension coordinates, validated on the corpus rays"
                .into(),
        ],
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub fn run_project(
    qf: &QuiverFile,
    eps: &str,
    alpha: Option<&str>,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let e = qf.resolve_dimvec(eps)?;
    let f = o.field();
    let mut rng = o.rng();
    let pctx = projected_quiver(&f, &ctx, &e, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let adj = pctx.quiver_e.adjacency();
    let mut outputs = json!({
        "projected_adjacency": adj,
        "projective_dims": pctx.projective_dims,
        "simples": pctx.simples,
    });
    if let Some(a) = alpha {
        let a = qf.resolve_dimvec(a)?;
        let down = pctx
            .transport(&a, TransportDir::DownRight)
            .map_err(|e| anyhow!("{e}"))?;
        let dual = pctx.transport(&a, TransportDir::DownDual).map_err(|e| anyhow!("{e}"))?;
        let obj = outputs.as_object_mut().expect("object");
        obj.insert("alpha_projected".into(), json!(down));
        obj.insert("alpha_dual_projected".into(), json!(dual));
        obj.insert(
            "alpha_dual_projected_weight".into(),
            json!(pctx.ctx_e.dimvec_to_weight(&dual)),
        );
    }
    let report = ReportFile {
        command: "project".into(),
        inputs: o.inputs(qf, json!({"eps": e, "alpha": alpha})),
        outputs,
        notes: vec![
            "projected quiver computed module-theoretically from the projected projectives"
                .into(),
        ],
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub fn run_blowup(
    qf: &QuiverFile,
    alpha: &str,
    eps: &str,
    beta: &str,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let e = qf.resolve_dimvec(eps)?;
    let b = qf.resolve_dimvec(beta)?;
    let f = o.field();
    let mut rng = o.rng();
    let pctx = projected_quiver(&f, &ctx, &e, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let r = blowup_report(&f, &pctx, &a, &b, o.trials, o.cap, &mut rng)
        .map_err(|e| anyhow!("{e}"))?;
    let beta_dual = ctx.project_root(&b, &e, Side::Dual).map_err(|e| anyhow!("{e:?}"))?;
    let mut discrepancies = vec![
        "center size -<alpha-eps,eps> is reported as a codimension; the literal dimension reading appears as center_dim_thaddeus"
            .into(),
    ];
    if !r.e_effective {
        discrepancies.push("pairing <eps,beta> is not positive: blow-up hypotheses fail".into());
    }
    let report = ReportFile {
        command: "blowup".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "eps": e, "beta": b})),
        outputs: json!({
            "alpha_projected": r.alpha_e,
            "beta_dual_projected": beta_dual,
            "downstairs_dim": r.downstairs_dim,
            "center_codim": r.center_codim,
            "center_dim_thaddeus": r.center_dim_thaddeus,
            "exceptional_locus_dim": r.exceptional_locus_dim,
            "smiley_ok": r.smiley_ok,
            "single_wall_ok": r.single_wall_ok,
            "e_dual_regular": r.e_dual_regular,
            "e_effective": r.e_effective,
            "hom_rest_eps": r.hom_rest_eps,
            "ext_rest_eps": r.ext_rest_eps,
            "ext_eps_rest": r.ext_eps_rest,
        }),
        notes: vec!["regularity and hom values are sampled; lattice quantities exact".into()],
        discrepancies,
    };
    let exit = if r.smiley_ok && r.e_effective { 0 } else { 2 };
    Ok((report, exit))
}

pub fn run_divisor(
    qf: &QuiverFile,
    alpha: &str,
    eps: &str,
    beta: &str,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let e = qf.resolve_dimvec(eps)?;
    let b = qf.resolve_dimvec(beta)?;
    let f = o.field();
    let mut rng = o.rng();
    let pctx = projected_quiver(&f, &ctx, &e, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let d = divisor_transform(&f, &pctx, &a, &b, o.trials, &mut rng)
        .map_err(|e| anyhow!("{e}"))?;
    // The same pairing through a second code path; the report asserts both.
    let pairing_again = ctx.euler_form(&e, &b);
    let report = ReportFile {
        command: "divisor".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "eps": e, "beta": b})),
        outputs: json!({
            "pullback_coefficient": d.pullback_coefficient,
            "exceptional_coefficient": d.exceptional_coefficient,
            "pairing_crosscheck": -pairing_again,
            "smiley_ok": d.smiley_ok,
            "hom_hypothesis_ok": d.hom_hypothesis_ok,
        }),
        notes: vec!["coefficients are exact; the hom hypothesis is sampled".into()],
        discrepancies: vec![],
    };
    let exit = if d.smiley_ok && d.hom_hypothesis_ok { 0 } else { 2 };
    Ok((report, exit))
}

pub fn run_si_dim(
    qf: &QuiverFile,
    alpha: &str,
    sigma: &str,
    n: i64,
    o: &RunOpts,
) -> Result<(ReportFile, i32)> {
    let q = qf.to_quiver()?;
    let ctx = EulerContext::new(&q);
    let a = qf.resolve_dimvec(alpha)?;
    let s = qf.resolve_weight(sigma)?;
    let f = o.field();
    let mut rng = o.rng();
    let (value, curve) =
        si_dimension_stabilized(&f, &ctx, &a, &s, n, &mut rng).map_err(|e| anyhow!("{e}"))?;
    let mut notes = vec![
        "rank lower bound, stabilized by doubling the sample count".into(),
    ];
    if o.certify {
        let rf = Rationals;
        let mut rrng = o.rng();
        let k = value + 3;
        let exact = si_dimension(&rf, &ctx, &a, &s, n, k, k, &mut rrng)
            .map_err(|e| anyhow!("{e}"))?;
        notes.push(format!("rationals re-run at {k} samples: {exact}"));
    }
    let report = ReportFile {
        command: "si-dim".into(),
        inputs: o.inputs(qf, json!({"alpha": a, "sigma": s, "n": n})),
        outputs: json!({ "dimension": value, "stabilization": curve }),
        notes,
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub fn run_reconstruct(out_dir: Option<&Path>, o: &RunOpts) -> Result<(ReportFile, i32)> {
    use crate::reconstruct::{family_targets, reconstruct};
    let mut known = std::collections::BTreeMap::new();
    known.insert("b1".to_string(), quiver_moduli::quiver::b1());
    let mut rows = Vec::new();
    for t in family_targets() {
        let parent = known.get(t.parent).expect("dependency order");
        let res = reconstruct(&t, parent, o.seed)?;
        rows.push(json!({
            "name": t.name,
            "arrows": res.quiver.arrows.iter().map(|a| [a.tail + 1, a.head + 1]).collect::<Vec<_>>(),
            "solutions": res.solutions,
            "constraints": res.constraints,
        }));
        known.insert(t.name.to_string(), res.quiver);
    }
    if let Some(dir) = out_dir {
        corpus::write_all(dir, o.seed)?;
    }
    let report = ReportFile {
        command: "reconstruct".into(),
        inputs: json!({"seed": o.seed, "prime": o.prime}),
        outputs: json!({ "quivers": rows }),
        notes: vec![
            "arrow lists are 1-based [tail, head]; each entry records the exact constraint set that pinned it"
                .into(),
        ],
        discrepancies: vec![],
    };
    Ok((report, 0))
}

pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub provenance: &'static str,
    pub pass: bool,
    pub hard: bool,
}

/// Golden-value verification across the corpus directory. Exit 1 on any hard
/// failure; discrepancy items report both readings and never hard-fail.
pub fn run_verify_corpus(dir: &Path, o: &RunOpts) -> Result<(ReportFile, i32)> {
    let files = corpus::load_all(dir)?;
    let get = |n: &str| -> &QuiverFile {
        files.iter().find(|f| f.name == n).expect("load_all is complete")
    };
    let f = o.field();
    let mut rows: Vec<CheckRow> = Vec::new();
    let mut check = |name: &str, expected: String, computed: String, prov: &'static str| {
        let pass = expected == computed;
        rows.push(CheckRow {
            name: name.into(),
            expected,
            computed,
            provenance: prov,
            pass,
            hard: true,
        });
    };

    // Canonical weights.
    for (qn, want) in [("b1", vec![2i64, 1, -3]), ("b2", vec![2, 2, -1, -3])] {
        let qf = get(qn);
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let a = qf.resolve_dimvec("alpha")?;
        check(
            &format!("canonical weight {qn}"),
            format!("{want:?}"),
            format!("{:?}", ctx.canonical_weight(&a)),
            "exact",
        );
    }

    // Projected quiver types and projected alpha.
    for (qn, eps_name, expect_parent, expect_alpha) in [
        ("b1", "eps", quiver_moduli::quiver::theta(3), vec![1i64, 1]),
        ("c36", "eps", quiver_moduli::quiver::theta(4), vec![1, 1]),
    ] {
        let qf = get(qn);
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let e = qf.resolve_dimvec(eps_name)?;
        let mut rng = o.rng();
        let pctx = projected_quiver(&f, &ctx, &e, &mut rng).map_err(|e| anyhow!("{e}"))?;
        check(
            &format!("projected quiver {qn}"),
            "isomorphic".into(),
            if pctx.quiver_e.isomorphic_to(&expect_parent) {
                "isomorphic".into()
            } else {
                "different".into()
            },
            "sampled",
        );
        let a = qf.resolve_dimvec("alpha")?;
        check(
            &format!("projected alpha {qn}"),
            format!("{expect_alpha:?}"),
            format!("{:?}", pctx.transport(&a, TransportDir::DownRight).map_err(|e| anyhow!("{e}"))?),
            "exact",
        );
    }

    // Weight transport on b1.
    {
        let qf = get("b1");
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let mut rng = o.rng();
        let pctx = projected_quiver(&f, &ctx, &qf.resolve_dimvec("eps")?, &mut rng)
            .map_err(|e| anyhow!("{e}"))?;
        for (beta_name, want_dual, want_weight) in
            [("beta_o2", vec![4i64, 4, 2], vec![2i64, -2]), ("beta_ac", vec![6, 6, 3], vec![3, -3])]
        {
            let b = qf.resolve_dimvec(beta_name)?;
            let dual = ctx.project_root(&b, &pctx.eps, Side::Dual).map_err(|e| anyhow!("{e:?}"))?;
            check(
                &format!("dual-projected {beta_name}"),
                format!("{want_dual:?}"),
                format!("{dual:?}"),
                "exact",
            );
            let down = pctx.transport(&b, TransportDir::DownDual).map_err(|e| anyhow!("{e}"))?;
            check(
                &format!("projected weight {beta_name}"),
                format!("{want_weight:?}"),
                format!("{:?}", pctx.ctx_e.dimvec_to_weight(&down)),
                "exact",
            );
        }
    }

    // Cone and core rays for ex0.
    {
        let qf = get("ex0");
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let a = qf.resolve_dimvec("alpha")?;
        let mut rng = o.rng();
        let cone =
            g_ample_cone(&f, &ctx, &a, o.trials, o.cap, &mut rng).map_err(|e| anyhow!("{e}"))?;
        let mut beta = cone.rays_beta.clone();
        beta.sort();
        check("cone rays ex0", "[[1, 1, 0], [3, 2, 2]]".into(), format!("{beta:?}"), "exact");
        let roots = find_orthogonal_roots(&f, &ctx, &a, &a, o.trials, o.cap, &mut rng)
            .map_err(|e| anyhow!("{e}"))?;
        let (_, desc) = core_membership(&ctx, &cone, &roots, &a);
        let mut rb = desc.rays_beta.clone();
        rb.sort();
        check("core rays ex0", "[[1, 1, 0], [4, 3, 2]]".into(), format!("{rb:?}"), "exact");
    }

    // SI dimensions (small cases only; the full set runs in the test suite).
    {
        let qf = get("theta3");
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let mut rng = o.rng();
        let (v, _) = si_dimension_stabilized(&f, &ctx, &[1, 1], &[1, -1], 1, &mut rng)
            .map_err(|e| anyhow!("{e}"))?;
        check("si-dim theta3 n=1", "3".into(), v.to_string(), "sampled");
        let qf = get("b1");
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let (v, _) = si_dimension_stabilized(&f, &ctx, &[1, 1, 1], &[1, 1, -2], 1, &mut rng)
            .map_err(|e| anyhow!("{e}"))?;
        check("si-dim b1 divisor weight", "5".into(), v.to_string(), "sampled");
    }

    // Blow-up invariants.
    for (qn, want) in [("b1", (2i64, 2i64, 0i64, 1i64)), ("c36", (3, 2, 1, 2))] {
        let qf = get(qn);
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let a = qf.resolve_dimvec("alpha")?;
        let e = qf.resolve_dimvec("eps")?;
        let b = if qn == "b1" {
            qf.resolve_dimvec("beta_ac")?
        } else {
            qf.resolve_dimvec("beta")?
        };
        let mut rng = o.rng();
        let pctx = projected_quiver(&f, &ctx, &e, &mut rng).map_err(|e| anyhow!("{e}"))?;
        let r = blowup_report(&f, &pctx, &a, &b, o.trials, o.cap, &mut rng)
            .map_err(|e| anyhow!("{e}"))?;
        check(
            &format!("blow-up numbers {qn}"),
            format!("{want:?}"),
            format!(
                "{:?}",
                (r.downstairs_dim, r.center_codim, r.center_dim_thaddeus, r.exceptional_locus_dim)
            ),
            "exact",
        );
        check(
            &format!("blow-up flags {qn}"),
            "(true, true, true)".into(),
            format!("{:?}", (r.smiley_ok, r.single_wall_ok, r.e_dual_regular)),
            "sampled",
        );
        let (compat, codim) = anticanonical_checks(&pctx, &a).map_err(|e| anyhow!("{e}"))?;
        check(
            &format!("anticanonical {qn}"),
            "(true, true)".into(),
            format!("{:?}", (compat, codim)),
            "exact",
        );
    }

    // Open-question item: dual projection of beta on c36, both readings.
    {
        let qf = get("c36");
        let ctx = EulerContext::new(&qf.to_quiver()?);
        let b = qf.resolve_dimvec("beta")?;
        let e = qf.resolve_dimvec("eps")?;
        let dual = ctx.project_root(&b, &e, Side::Dual).map_err(|e| anyhow!("{e:?}"))?;
        rows.push(CheckRow {
            name: "c36 beta dual projection (both readings)".into(),
            expected: "published (12,16,12) vs lattice (9,12,9)".into(),
            computed: format!("{dual:?}"),
            provenance: "exact",
            pass: dual == vec![9, 12, 9] || dual == vec![12, 16, 12],
            hard: false,
        });
    }

    let table: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            json!({
                "check": r.name,
                "expected": r.expected,
                "computed": r.computed,
                "provenance": r.provenance,
                "pass": r.pass,
                "hard": r.hard,
            })
        })
        .collect();
    let hard_fail = rows.iter().any(|r| r.hard && !r.pass);
    let discrepancies = rows
        .iter()
        .filter(|r| !r.hard)
        .map(|r| format!("{}: {} (computed {})", r.name, r.expected, r.computed))
        .collect();
    let report = ReportFile {
        command: "verify-corpus".into(),
        inputs: json!({"dir": dir.display().to_string(), "seed": o.seed, "prime": o.prime}),
        outputs: json!({ "table": table, "passed": rows.iter().filter(|r| r.pass).count(), "total": rows.len() }),
        notes: vec!["soft rows report open questions and never fail the run".into()],
        discrepancies,
    };
    Ok((report, if hard_fail { 1 } else { 0 }))
}

/// Shared guard for commands that need a corpus file path.
pub fn load_quiver_file(path: &str) -> Result<QuiverFile> {
    let p = Path::new(path);
    if !p.exists() {
        bail!("quiver file {path} does not exist");
    }
    QuiverFile::load(p)
}

/// Transport check used by tests: dimension vector round trip through a file.
pub fn resolve_pair(qf: &QuiverFile, alpha: &str, sigma: &str) -> Result<(IVec, IVec)> {
    Ok((qf.resolve_dimvec(alpha)?, qf.resolve_weight(sigma)?))
}
