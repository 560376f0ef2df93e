//! Command execution. Every command returns its rows in a fixed order; module
//! errors become `error` rows and are collected for the exit code.

use qfi_core::cayley::{identity_report, CayleyPair};
use qfi_core::indices::{
    equivariant_kernel_character, half_space_boundary, homotopy_obstruction_test, pair_index_ko, pair_index_z2,
    pfaffian_pair_index, GroupElement, SymmetryData, PFAFFIAN_FLOOR,
};
use qfi_core::linalg::{hermiticity_residual, CMat, RealStructure};
use qfi_core::locality::{effective_rank, local_equivalence_curve, propagation, LocalityReport};
use qfi_core::models::{build_bdg, kramers_kappa, time_reversal, BdgSystem, ModelSpec};
use qfi_core::sample::{random_real_skew_unitary, rotated_pair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::config::{Command, RunConfig, SymmetrySpec};
use crate::output::{Cell, Row};

/// Rows of a run plus the messages of every computation error.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub rows: Vec<Row>,
    pub errors: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.errors.is_empty() {
            0
        } else {
            2
        }
    }

    fn extend(&mut self, other: Outcome) {
        self.rows.extend(other.rows);
        self.errors.extend(other.errors);
    }

    fn fail(&mut self, row: Row, e: &qfi_core::Error) {
        let where_ = if row.param_name.is_empty() {
            row.model.clone()
        } else {
            format!("{} at {}={}", row.model, row.param_name, row.param_value)
        };
        self.errors.push(format!("{where_}: {e}"));
        self.rows.push(row);
    }

    /// Human-readable summary; contains no timestamps.
    pub fn summary(&self, run_id: &str, command: Command) -> String {
        let mut s =
            format!("run {run_id}: command {command}, {} rows, {} errors\n", self.rows.len(), self.errors.len());
        for r in &self.rows {
            if matches!(r.quantity.as_str(), "z2" | "pfaffian_index" | "edge_modes" | "ko_value") {
                let at = if r.param_name.is_empty() {
                    String::new()
                } else {
                    format!(" at {}={}", r.param_name, r.param_value)
                };
                s.push_str(&format!("  {} {}{at} = {}\n", r.model, r.quantity, r.value));
            }
        }
        for e in &self.errors {
            s.push_str(&format!("  error: {e}\n"));
        }
        s
    }
}

/// First sixteen hex digits of the SHA-256 of the config text and seed.
pub fn default_run_id(text: &str, seed: u64) -> String {
    let digest = Sha256::new().chain_update(text.as_bytes()).chain_update(format!("\nseed={seed}")).finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn execute(cfg: &RunConfig) -> Outcome {
    match cfg.command {
        Command::Build => run_build(cfg),
        Command::Index => run_index(cfg),
        Command::Sweep => run_sweep(cfg),
        Command::Locality => run_locality(cfg),
        Command::Verify => run_verify(cfg),
    }
}

fn model(cfg: &RunConfig) -> &ModelSpec {
    cfg.model.as_ref().expect("validated config has a model")
}

fn reference(cfg: &RunConfig) -> &ModelSpec {
    cfg.reference.as_ref().expect("validated config has a reference")
}

fn error_row(name: &str, e: &qfi_core::Error) -> Row {
    Row::new(name, "error", e.kind())
}

fn run_build(cfg: &RunConfig) -> Outcome {
    let spec = model(cfg);
    let name = spec.kind.name();
    let mut out = Outcome::default();
    match build_bdg(spec) {
        Ok(sys) => {
            let ev = sys.eigenvalues();
            let entry = cfg.tolerances.roe.entry_tol;
            out.rows.extend([
                Row::new(name, "dim", sys.dim()),
                Row::new(name, "num_sites", sys.geometry().num_sites()),
                Row::new(name, "gap", sys.gap()).tol(spec.gap_tol),
                Row::new(name, "min_eigenvalue", ev[0]),
                Row::new(name, "max_eigenvalue", ev[ev.len() - 1]),
                Row::new(name, "hermiticity_residual", hermiticity_residual(sys.h())),
                Row::new(name, "particle_hole_residual", sys.gamma().odd_residual(sys.h())),
            ]);
            match propagation(sys.h(), sys.geometry(), entry) {
                Ok(p) => out.rows.push(Row::new(name, "propagation", p).tol(entry)),
                Err(e) => out.fail(error_row(name, &e), &e),
            }
        }
        Err(e) => out.fail(error_row(name, &e), &e),
    }
    out
}

fn symmetry_data(sym: &SymmetrySpec, sys: &BdgSystem) -> qfi_core::Result<SymmetryData> {
    let geom = sys.geometry();
    let n = sys.dim();
    let mut data = SymmetryData::none();
    for k in &sym.kappas {
        match k.as_str() {
            "kramers" => data.kappas.push(kramers_kappa(geom)?),
            other => return Err(qfi_core::Error::InvalidInput(format!("unknown kappa `{other}`"))),
        }
    }
    for g in &sym.group {
        let (matrix, antiunitary) = match g.as_str() {
            "identity" => (CMat::identity(n, n), false),
            "fermion_parity" => (-CMat::identity(n, n), false),
            "time_reversal" => (time_reversal(geom)?, true),
            other => return Err(qfi_core::Error::InvalidInput(format!("unknown group element `{other}`"))),
        };
        data.group_reps.push(GroupElement { label: g.clone(), matrix, antiunitary });
    }
    Ok(data)
}

/// Index rows of one model against the reference system.
fn pair_rows(cfg: &RunConfig, spec: &ModelSpec, reference: &BdgSystem, at: Option<(&str, f64)>) -> Outcome {
    let name = spec.kind.name();
    let row = |q: &str, v: String| {
        let r = Row::new(name, q, v);
        match at {
            Some((p, x)) => r.param(p, x),
            None => r,
        }
    };
    let mut out = Outcome::default();
    let computed = (|| -> qfi_core::Result<Vec<Row>> {
        let tol = &cfg.tolerances;
        let sys = build_bdg(spec)?;
        let (j0, j1) = (sys.j(), reference.j());
        if j0.dim() != j1.dim() {
            return Err(qfi_core::Error::DimensionMismatch { expected: j0.dim(), found: j1.dim() });
        }
        let mut rows = vec![row("gap", sys.gap().cell()).tol(spec.gap_tol)];
        let sym = symmetry_data(&cfg.symmetry, &sys)?;
        let idx = if sym.kappas.is_empty() {
            pair_index_z2(j0, j1, tol.kernel)?
        } else {
            pair_index_ko(j0, j1, &sym, tol.kernel)?
        };
        rows.push(row("kernel_dim", idx.kernel_dim.cell()).tol(tol.kernel));
        rows.push(row("kernel_gap", idx.diagnostics.gap.cell()).tol(idx.diagnostics.cut));
        rows.push(row("z2", idx.z2.cell()).tol(tol.kernel));
        rows.push(row("pfaffian_index", pfaffian_pair_index(j0, j1, sys.gamma())?.cell()).tol(PFAFFIAN_FLOOR));
        if let Some(ko) = idx.ko {
            rows.push(row("ko_degree", ko.degree().cell()));
            rows.push(row("ko_value", ko.value().cell()).tol(tol.kernel));
        }
        if !sym.group_reps.is_empty() {
            let ch = equivariant_kernel_character(j0, j1, &sym, tol.kernel)?;
            for e in ch.entries {
                rows.push(row(&format!("character:{}", e.label), e.trace.cell()).tol(tol.kernel));
            }
        }
        if cfg.index.homotopy_trials > 0 {
            let h = homotopy_obstruction_test(j0, j1, cfg.index.homotopy_trials, tol.gap)?;
            let smin = h.trials.iter().map(|t| t.min_singular_value).fold(f64::INFINITY, f64::min);
            rows.push(row("homotopy_obstructed", u8::from(h.obstructed).cell()).tol(tol.gap));
            rows.push(row("homotopy_min_singular_value", smin.cell()).tol(tol.gap));
        }
        if let Some(c) = cfg.index.edge_cut {
            let b = half_space_boundary(&sys, |x| x[0] < c, tol.edge)?;
            rows.push(row("edge_modes", b.zero_modes().cell()).tol(b.tol_edge));
            rows.push(row("edge_splitting", b.splitting.cell()).tol(b.tol_edge));
            for (i, e) in b.edges.iter().enumerate() {
                rows.push(row(&format!("edge_parity:{i}"), e.parity.cell()).tol(b.tol_edge));
            }
            if let Some(r) = b.phase_residual {
                rows.push(row("phase_residual", r.cell()));
            }
        }
        Ok(rows)
    })();
    match computed {
        Ok(rows) => out.rows = rows,
        Err(e) => out.fail(row("error", e.kind().cell()), &e),
    }
    out
}

fn run_index(cfg: &RunConfig) -> Outcome {
    let r = reference(cfg);
    match build_bdg(r) {
        Ok(sys) => pair_rows(cfg, model(cfg), &sys, None),
        Err(e) => {
            let mut out = Outcome::default();
            out.fail(error_row(r.kind.name(), &e), &e);
            out
        }
    }
}

fn run_sweep(cfg: &RunConfig) -> Outcome {
    let r = reference(cfg);
    let axis = cfg.sweep.as_ref().expect("validated sweep config has an axis");
    let mut out = Outcome::default();
    let reference = match build_bdg(r) {
        Ok(sys) => sys,
        Err(e) => {
            out.fail(error_row(r.kind.name(), &e), &e);
            return out;
        }
    };
    // points run concurrently; collect keeps grid order
    let points: Vec<Outcome> = axis
        .grid
        .par_iter()
        .map(|&x| {
            let spec = model(cfg).clone().with(&axis.param, x);
            pair_rows(cfg, &spec, &reference, Some((&axis.param, x)))
        })
        .collect();
    for p in points {
        out.extend(p);
    }
    out
}

fn run_locality(cfg: &RunConfig) -> Outcome {
    let spec = model(cfg);
    let name = spec.kind.name();
    let mut out = Outcome::default();
    let computed = (|| -> qfi_core::Result<Vec<Row>> {
        let roe = &cfg.tolerances.roe;
        let sys = build_bdg(spec)?;
        let refsys = build_bdg(reference(cfg))?;
        let geom = sys.geometry();
        if refsys.dim() != sys.dim() {
            return Err(qfi_core::Error::DimensionMismatch { expected: sys.dim(), found: refsys.dim() });
        }
        let center = cfg.locality.center.unwrap_or(geom.num_sites() / 2);
        let radii = match &cfg.locality.radii {
            Some(r) => r.clone(),
            None => {
                let far = (0..geom.num_sites())
                    .map(|s| geom.distance(center.min(geom.num_sites() - 1), s))
                    .fold(0.0, f64::max);
                (0..=far.ceil() as usize).map(|r| r as f64).collect()
            }
        };
        let curve =
            local_equivalence_curve(&sys.ground_projection(), &refsys.ground_projection(), geom, center, &radii)?;
        let diff = sys.j().matrix() - refsys.j().matrix();
        let report = LocalityReport::measure(&diff, geom, curve, roe)?;
        let mut rows = vec![
            Row::new(name, "propagation_h", propagation(sys.h(), geom, roe.entry_tol)?).tol(roe.entry_tol),
            Row::new(name, "propagation_j", propagation(sys.j().matrix(), geom, roe.entry_tol)?).tol(roe.entry_tol),
            Row::new(name, "propagation_difference", report.propagation_radius).tol(roe.entry_tol),
            Row::new(name, "effective_rank_difference", effective_rank(&diff, roe.rank_tol)).tol(roe.rank_tol),
        ];
        for (label, norm) in report.commutator_profile {
            rows.push(Row::new(name, "commutator_norm", norm).param("window", label).tol(roe.rank_tol));
        }
        rows.push(Row::new(name, "center_site", center));
        for (r, hs) in report.hs_curve {
            rows.push(Row::new(name, "hs_distance", hs).param("R", r));
        }
        for (key, verdict) in report.verdicts {
            rows.push(Row::new(name, key, verdict));
        }
        Ok(rows)
    })();
    match computed {
        Ok(rows) => out.rows = rows,
        Err(e) => out.fail(error_row(name, &e), &e),
    }
    out
}

/// Fields of the identity report, in output order.
const IDENTITIES: [&str; 8] = [
    "f_square",
    "one_plus_f_square",
    "anticommute_j0",
    "anticommute_kappa",
    "skew",
    "reality",
    "inverse_sqrt",
    "consistency",
];

/// Residuals of the Cayley identities on one random rotated pair.
pub fn random_pair_residuals(size: usize, index: usize, seed: u64, rotation: f64) -> qfi_core::Result<([f64; 8], f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((size as u64) << 32) ^ index as u64);
    let g = RealStructure::nambu(size / 2);
    let j0 = random_real_skew_unitary(&g, &mut rng)?;
    let norm = rotation * (0.1 + 0.9 * rng.random::<f64>());
    let j1 = rotated_pair(&j0, norm, &mut rng)?;
    let p = CayleyPair::new(j0, j1, Vec::new())?;
    let r = identity_report(&p)?;
    Ok((
        [
            r.f_square,
            r.one_plus_f_square,
            r.anticommute_j0,
            r.anticommute_kappa,
            r.skew,
            r.reality,
            r.inverse_sqrt,
            r.consistency,
        ],
        p.difference_norm(),
    ))
}

fn run_verify(cfg: &RunConfig) -> Outcome {
    let v = &cfg.verify;
    let tol = cfg.tolerances.cayley;
    let name = "random_pair";
    let mut out = Outcome::default();
    for &size in &v.sizes {
        let results: Vec<qfi_core::Result<([f64; 8], f64)>> =
            (0..v.pairs).into_par_iter().map(|i| random_pair_residuals(size, i, cfg.seed, v.rotation)).collect();
        let mut worst = [0.0f64; 8];
        let mut norm = 0.0f64;
        let mut failed = None;
        for r in results {
            match r {
                Ok((res, d)) => {
                    for (w, x) in worst.iter_mut().zip(res) {
                        *w = w.max(x);
                    }
                    norm = norm.max(d);
                }
                Err(e) => failed = failed.or(Some(e)),
            }
        }
        if let Some(e) = failed {
            out.fail(error_row(name, &e).param("size", size), &e);
            continue;
        }
        out.rows.push(Row::new(name, "pairs", v.pairs).param("size", size));
        out.rows.push(Row::new(name, "max_difference_norm", norm).param("size", size));
        for (id, w) in IDENTITIES.iter().zip(worst) {
            out.rows.push(Row::new(name, format!("residual:{id}"), w).param("size", size).tol(tol));
            if w > tol {
                out.errors.push(format!("{name} at size={size}: residual {id} = {w:e} exceeds {tol:e}"));
                out.rows.push(Row::new(name, "error", "identity_residual").param("size", size).tol(tol));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn rows_of<'a>(o: &'a Outcome, q: &str) -> Vec<&'a Row> {
        o.rows.iter().filter(|r| r.quantity == q).collect()
    }

    #[test]
    fn index_of_topological_kitaev_is_one() {
        let cfg = parse_config("command = \"index\"\n[model]\nkind = \"kitaev_chain\"\nsize = 40\nmu = 0.5\n").unwrap();
        let o = execute(&cfg);
        assert_eq!(o.exit_code(), 0, "{:?}", o.errors);
        assert_eq!(rows_of(&o, "z2")[0].value, "1");
        assert_eq!(rows_of(&o, "pfaffian_index")[0].value, "1");
    }

    #[test]
    fn verify_rows_are_small() {
        let cfg = parse_config("command = \"verify\"\n[verify]\nsizes = [4, 8]\npairs = 5\n").unwrap();
        let o = execute(&cfg);
        assert_eq!(o.exit_code(), 0, "{:?}", o.errors);
        let res: Vec<&Row> = o.rows.iter().filter(|r| r.quantity.starts_with("residual:")).collect();
        assert_eq!(res.len(), 16);
        assert!(res.iter().all(|r| r.value.parse::<f64>().unwrap() <= 1e-10));
    }

    #[test]
    fn sweep_flips_once_across_two() {
        let text = "command = \"sweep\"\n[model]\nkind = \"kitaev_chain\"\nsize = 40\n\
                    [sweep]\nparam = \"mu\"\nstart = 0\nstop = 4\nstep = 0.25\n";
        let o = execute(&parse_config(text).unwrap());
        let z2 = rows_of(&o, "z2");
        let errs = rows_of(&o, "error");
        // the periodic ring closes its gap exactly at mu = 2
        assert_eq!(z2.len() + errs.len(), 17);
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].param_value, "2");
        assert_eq!(errs[0].value, "gap_closed");
        assert_eq!(o.exit_code(), 2);
        let bits: Vec<&str> = z2.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(bits.windows(2).filter(|w| w[0] != w[1]).count(), 1);
        assert_eq!(bits[0], "1");
        assert_eq!(*bits.last().unwrap(), "0");
    }

    #[test]
    fn run_id_depends_on_text_and_seed() {
        assert_eq!(default_run_id("a", 1), default_run_id("a", 1));
        assert_ne!(default_run_id("a", 1), default_run_id("a", 2));
        assert_eq!(default_run_id("a", 1).len(), 16);
    }
}
