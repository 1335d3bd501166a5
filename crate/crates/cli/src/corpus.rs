//! The golden corpus: quivers pinned directly plus the reconstructed family,
//! with the named dimension vectors and weights the verification suite uses.

use crate::formats::QuiverFile;
use crate::reconstruct::{family_targets, reconstruct};
use anyhow::{Context, Result};
use quiver_moduli::lattice::IVec;
use quiver_moduli::quiver;
use std::collections::BTreeMap;
use std::path::Path;

fn named(pairs: &[(&str, IVec)]) -> BTreeMap<String, IVec> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// The directly pinned corpus entries, in dependency order.
pub fn pinned_entries() -> Vec<QuiverFile> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4] {
        let mut qf = QuiverFile::from_quiver(&format!("theta{n}"), &quiver::theta(n));
        qf.dim_vectors = named(&[("alpha", vec![1, 1])]);
        qf.weights = named(&[("sigma", vec![1, -1])]);
        qf.notes = vec![format!("{n}-arrow Kronecker quiver")];
        out.push(qf);
    }
    let mut qf = QuiverFile::from_quiver("theta22", &quiver::theta22());
    qf.dim_vectors = named(&[("alpha", vec![1, 1, 1])]);
    qf.notes = vec![
        "double arrows 1 => 3 and 2 => 3; orientation pinned by contracting the last arrow of b2, which realizes the perpendicular category of the root eps3"
            .into(),
    ];
    out.push(qf);

    let mut qf = QuiverFile::from_quiver("b1", &quiver::b1());
    qf.dim_vectors = named(&[
        ("alpha", vec![1, 1, 1]),
        ("eps", vec![1, 0, 1]),
        ("beta_ac", vec![6, 5, 3]),
        ("beta_o2", vec![4, 3, 2]),
    ]);
    qf.weights = named(&[("sigma_ac", vec![2, 1, -3]), ("sigma_d", vec![1, 1, -2])]);
    qf.notes = vec![
        "orientation pinned by sigma_ac = (2,1,-3), eps = (1,0,1), dual projection (4,3,2) -> (4,4,2)"
            .into(),
    ];
    out.push(qf);

    let mut qf = QuiverFile::from_quiver("c36", &quiver::c36());
    qf.dim_vectors = named(&[
        ("alpha", vec![1, 4, 3]),
        ("eps", vec![0, 3, 2]),
        ("beta", vec![4, 7, 5]),
    ]);
    qf.weights = named(&[("sigma", vec![3, 3, -5])]);
    qf.notes = vec![
        "orientation pinned by <eps,eps> = 1, <eps,alpha> = 0, moduli dimension 3, dual projection of the middle injective = (16,16,12)"
            .into(),
    ];
    out.push(qf);

    let mut qf = QuiverFile::from_quiver("ex0", &quiver::ex0());
    qf.dim_vectors = named(&[("alpha", vec![2, 2, 1]), ("eps", vec![1, 2, 0])]);
    qf.notes =
        vec!["orientation pinned by the ample-cone rays (1,1,0) and (3,2,2)".into()];
    out.push(qf);
    out
}

/// Reconstruct the remaining family members on top of the pinned entries.
/// Deterministic for a fixed seed; each entry carries its constraint ledger.
pub fn reconstructed_entries(seed: u64) -> Result<Vec<QuiverFile>> {
    let mut known: BTreeMap<String, quiver::Quiver> = BTreeMap::new();
    known.insert("b1".into(), quiver::b1());
    let mut out = Vec::new();
    for target in family_targets() {
        let parent = known
            .get(target.parent)
            .with_context(|| format!("parent {} not built yet", target.parent))?;
        let res = reconstruct(&target, parent, seed)?;
        let mut qf = QuiverFile::from_quiver(target.name, &res.quiver);
        qf.dim_vectors =
            named(&[("alpha", target.alpha.clone()), ("eps", target.eps.clone())]);
        if target.name == "b2" {
            // Difference of the last two projectives; its perpendicular
            // quiver is theta22.
            qf.dim_vectors.insert("eps3".into(), vec![0, 0, 1, 0]);
        }
        qf.weights = named(&[("sigma_ac", target.sigma_ac.clone())]);
        qf.notes = res.constraints;
        known.insert(target.name.to_string(), res.quiver);
        out.push(qf);
    }
    Ok(out)
}

pub fn write_all(dir: &Path, seed: u64) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    let mut entries = pinned_entries();
    entries.extend(reconstructed_entries(seed)?);
    for e in entries {
        let path = dir.join(format!("{}.json", e.name));
        let mut s = serde_json::to_string_pretty(&e)?;
        s.push('\n');
        std::fs::write(&path, s)?;
        names.push(e.name.clone());
    }
    Ok(names)
}

pub const ALL_NAMES: [&str; 11] = [
    "theta2", "theta3", "theta4", "theta22", "b1", "c36", "ex0", "b2", "b3", "b4", "b41",
];

pub fn load(dir: &Path, name: &str) -> Result<QuiverFile> {
    QuiverFile::load(&dir.join(format!("{name}.json")))
}

pub fn load_all(dir: &Path) -> Result<Vec<QuiverFile>> {
    ALL_NAMES.iter().map(|n| load(dir, n)).collect()
}
