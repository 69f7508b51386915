//! The staged batch run that produces a report bundle.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::PathBuf;

use relrips::actions::{self, Classification, FiniteSubgroup};
use relrips::complex::clique_complex;
use relrips::dismantle::{edge_dismantling_sequence, is_dismantlable, EdgeSearch, EdgeSearchOutcome};
use relrips::geometry::{self, DeepParams, SampleSpec};
use relrips::rips::{self, DeltaMode, RipsGraph};
use relrips::universe::count_edge_orbits;
use relrips::{Graph, Universe, UniverseConfig, VertexId};

use crate::config::{Mode, RunConfig};
use crate::report::{Summary, SUMMARY_FILE};
use crate::Failure;

/// What a run produced. Files are listed relative to `dir`, in write order.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub dir: PathBuf,
    pub files: Vec<String>,
    pub summary: Summary,
    /// Stage name and failure, in stage order.
    pub stage_errors: Vec<(String, Failure)>,
}

impl ReportBundle {
    /// 0 when every stage succeeded, otherwise the largest failure code.
    pub fn exit_code(&self) -> i32 {
        self.stage_errors.iter().map(|(_, f)| f.exit_code()).max().unwrap_or(0)
    }
}

struct Run<'a> {
    cfg: &'a RunConfig,
    dir: PathBuf,
    files: Vec<String>,
    summary: Summary,
    errors: Vec<(String, Failure)>,
}

impl Run<'_> {
    fn write(&mut self, name: &str, text: &str) -> Result<(), Failure> {
        std::fs::write(self.dir.join(name), text)?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn stage(&mut self, name: &str, enabled: bool, f: impl FnOnce(&mut Self) -> Result<(), Failure>) {
        if !enabled {
            return;
        }
        let status = match f(self) {
            Ok(()) => "ok".to_string(),
            Err(e) => {
                self.summary.set(format!("info.stage.{name}.error"), e.to_string().replace(['\t', '\n'], " "), false);
                let kind = e.kind().to_string();
                self.errors.push((name.to_string(), e));
                kind
            }
        };
        self.summary.set(format!("verdict.stage.{name}"), status, false);
    }
}

fn key_label(u: &Universe, v: VertexId) -> String {
    u.label(v).replace(' ', "")
}

/// Coned-off edges at the identity, as `(identity, neighbour)` pairs.
fn identity_edges(u: &Universe, coned: &Graph) -> Vec<(VertexId, VertexId)> {
    let e = u.identity();
    coned.neighbors(e.0).iter().map(|&y| (e, VertexId(y))).collect()
}

fn edge_key(u: &Universe, (x, y): (VertexId, VertexId)) -> String {
    format!("{}--{}", key_label(u, x), key_label(u, y))
}

#[derive(Debug, Clone, Copy)]
struct Geometry {
    r: Option<u32>,
    d: u32,
}

/// Run every enabled stage and write the bundle into the configured output directory.
///
/// Stage failures are recorded in the summary and do not stop later stages;
/// only validation problems and a failed universe build abort the run.
pub fn run_pipeline(cfg: &RunConfig) -> Result<ReportBundle, Failure> {
    cfg.validate()?;
    let dir = cfg
        .output
        .clone()
        .ok_or_else(|| Failure::Validation("no output directory configured".into()))?;
    let (file, model, specs) = cfg.load_model()?;
    std::fs::create_dir_all(&dir)?;

    let mut run = Run { cfg, dir, files: Vec::new(), summary: Summary::default(), errors: Vec::new() };
    let manifest = manifest(cfg, &file)?;
    run.write("manifest.toml", &manifest)?;

    let ucfg = UniverseConfig {
        radius: cfg.radius,
        cert_radius: cfg.cert_radius,
        ball_cap: cfg.limits.ball_cap,
        table_cap: cfg.limits.table_cap,
    };
    let u = Universe::build(model, &specs, ucfg)?;
    let s = &mut run.summary;
    s.set("info.model", model_key(&file)?, false);
    s.set("info.n", cfg.n, false);
    s.set("info.radius", cfg.radius, false);
    s.set("info.cert_radius", u.cert_radius(), false);
    s.set("info.elements", u.n_elements(), false);
    s.set("info.cosets", u.n_cosets(), false);
    s.set("info.version", env!("CARGO_PKG_VERSION"), false);

    let coned = u.coned_off_graph();
    run.write("coned_off.txt", &u.export_graph(&coned, &|_, _| false))?;
    let rips = rips::rips_graph(&u, cfg.n)?;
    run.write("rips.txt", &u.export_graph(&rips.graph, &|x, y| !rips.is_certified(x, y)))?;
    let s = &mut run.summary;
    s.set("info.rips.edges", rips.graph.edge_count(), false);
    s.set("info.rips.uncertified_edges", rips.uncertified_edges.len(), false);
    s.set("info.rips.uncertified_non_edges", rips.uncertified_non_edges, false);

    let st = cfg.stages.clone();
    run.stage("complex", st.complex, |run| complex_stage(run, &rips));
    run.stage("dismantle", st.dismantle, |run| dismantle_stage(run, &rips, st.edge_search));
    run.stage("orbits", st.orbits, |run| orbit_stage(run, &u, &rips));
    run.stage("fineness", st.fineness, |run| fineness_stage(run, &u, &coned));
    run.stage("delta", st.delta, |run| delta_stage(run, &coned));
    let mut geo = Geometry { r: cfg.geometry.r, d: cfg.geometry.d.unwrap_or(cfg.geometry.epsilon) };
    run.stage("geometry", st.geometry, |run| geometry_stage(run, &u, &mut geo));
    run.stage("hulls", st.hulls, |run| hull_stage(run, &u, &coned, geo));
    let mut subgroups = Vec::new();
    run.stage("subgroups", st.subgroups || st.fixed_points, |run| {
        subgroups = subgroup_stage(run, &u, &rips)?;
        Ok(())
    });
    run.stage("fixed_points", st.fixed_points, |run| fixed_point_stage(run, &u, &subgroups, geo));

    let text = run.summary.to_text();
    run.write(SUMMARY_FILE, &text)?;
    Ok(ReportBundle { dir: run.dir, files: run.files, summary: run.summary, stage_errors: run.errors })
}

fn manifest(cfg: &RunConfig, file: &relrips::group::ModelFile) -> Result<String, Failure> {
    let mut echo = cfg.clone();
    echo.output = None;
    echo.model = PathBuf::from(cfg.model.file_name().unwrap_or_default());
    let ser = |e: toml::ser::Error| Failure::Validation(format!("serialising manifest: {e}"));
    let mut out = String::new();
    let _ = writeln!(out, "relrips_version = \"{}\"\n", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "[config]\n{}", indent_tables(&toml::to_string(&echo).map_err(ser)?, "config"));
    let _ = writeln!(out, "[model_file]\n{}", indent_tables(&toml::to_string(file).map_err(ser)?, "model_file"));
    Ok(out)
}

// Re-root the tables of a serialised document under `prefix`.
fn indent_tables(text: &str, prefix: &str) -> String {
    text.lines()
        .map(|l| {
            if let Some(rest) = l.strip_prefix("[[") {
                format!("[[{prefix}.{rest}")
            } else if let Some(rest) = l.strip_prefix('[') {
                format!("[{prefix}.{rest}")
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn model_key(file: &relrips::group::ModelFile) -> Result<String, Failure> {
    let text = toml::to_string(file).map_err(|e| Failure::Validation(format!("serialising model: {e}")))?;
    Ok(text.lines().filter(|l| !l.is_empty()).collect::<Vec<_>>().join("; ").replace('\t', " "))
}

fn complex_stage(run: &mut Run, rips: &RipsGraph) -> Result<(), Failure> {
    let c = clique_complex(&rips.graph, run.cfg.complex.d_max, run.cfg.limits.simplex_cap)?;
    let counts: Vec<String> = (0..=c.dim().unwrap_or(0)).map(|d| c.count(d).to_string()).collect();
    run.summary.set("info.complex.f_vector", counts.join(","), false);
    run.write("complex.txt", &c.to_text())
}

fn dismantle_stage(run: &mut Run, rips: &RipsGraph, edges: bool) -> Result<(), Failure> {
    let truncated = !rips.fully_certified();
    let (ok, seq) = is_dismantlable(&rips.graph)?;
    run.summary.set("verdict.dismantlable.universe", ok, truncated);
    run.summary.set("info.dismantle.residual", seq.residual.vertex_count(), false);
    run.write("dismantle.log", &seq.to_log())?;
    if edges {
        let search = EdgeSearch { budget: run.cfg.limits.edge_budget, seed: None };
        let (value, log) = match edge_dismantling_sequence(&rips.graph, search)? {
            EdgeSearchOutcome::Found(seq) => ("true", seq.to_log()),
            EdgeSearchOutcome::NotFound => ("false", String::new()),
            EdgeSearchOutcome::BudgetExhausted(seq) => ("budget-exhausted", seq.to_log()),
        };
        run.summary.set("verdict.edge_dismantlable.universe", value, truncated);
        run.write("edge_dismantle.log", &log)?;
    }
    Ok(())
}

fn orbit_stage(run: &mut Run, u: &Universe, rips: &RipsGraph) -> Result<(), Failure> {
    let census = count_edge_orbits(u, &rips.graph)?;
    // A class can only be missing if one of its representatives at the
    // identity has an uncertified distance.
    let truncated = 2 * run.cfg.n > u.cert_radius();
    let (vv, vw, ww) = census.by_kind();
    let s = &mut run.summary;
    s.set("orbits.element_element", vv, truncated);
    s.set("orbits.element_coset", vw, truncated);
    s.set("orbits.coset_coset", ww, truncated);
    s.set("orbits.total", census.orbit_count(), truncated);
    let mut out = String::new();
    for (class, count) in &census.classes {
        let _ = writeln!(out, "{class:?}\t{count}");
    }
    run.write("orbits.txt", &out)
}

fn fineness_stage(run: &mut Run, u: &Universe, coned: &Graph) -> Result<(), Failure> {
    let len = run.cfg.fineness.circuit_length;
    // Circuits of length L through the identity stay within L of it.
    let truncated = (u.radius() as usize) < len;
    let mut first_err = None;
    for edge in identity_edges(u, coned) {
        let key = format!("fineness.{}", edge_key(u, edge));
        match rips::fineness_audit(coned, (edge.0 .0, edge.1 .0), len, run.cfg.fineness.budget) {
            Ok(c) => run.summary.set(key, c, truncated),
            Err(relrips::Error::Budget { partial, .. }) => {
                run.summary.set(key, format!(">={partial}"), truncated);
                first_err.get_or_insert(Failure::Resource(format!("circuit budget exhausted on {}", edge_key(u, edge))));
            }
            Err(e) => return Err(e.into()),
        }
    }
    first_err.map_or(Ok(()), Err)
}

fn delta_stage(run: &mut Run, coned: &Graph) -> Result<(), Failure> {
    let mode = match run.cfg.delta.mode {
        Mode::Exhaustive => DeltaMode::Exhaustive,
        Mode::Sampled => DeltaMode::Sampled { samples: run.cfg.delta.samples as u64 },
    };
    let est = rips::delta_hyperbolicity(coned, mode, run.cfg.seed.unwrap_or(0))?;
    let s = &mut run.summary;
    s.set("estimate.delta", est.delta(), false);
    s.set("info.delta.mode", if est.exhaustive { "exhaustive" } else { "sampled-lower-bound" }, false);
    s.set("info.delta.quadruples", est.quadruples, false);
    Ok(())
}

fn spec(mode: Mode, samples: usize, seed: Option<u64>) -> SampleSpec {
    match mode {
        Mode::Exhaustive => SampleSpec::Exhaustive,
        Mode::Sampled => SampleSpec::Sampled { samples, seed: seed.expect("validated") },
    }
}

fn geometry_stage(run: &mut Run, u: &Universe, geo: &mut Geometry) -> Result<(), Failure> {
    let g = &run.cfg.geometry;
    let spec = spec(g.mode, g.samples, run.cfg.seed);
    let mut report = String::new();
    let r = match g.r {
        Some(r) => {
            let _ = writeln!(report, "R\t{r}\tgiven");
            r
        }
        None => {
            let est = geometry::estimate_r(u, g.epsilon, spec)?;
            let _ = writeln!(report, "R\t{}\testimated", est.r);
            let _ = writeln!(report, "R_windows\t{}", est.windows);
            est.r
        }
    };
    geo.r = Some(r);
    let est = geometry::estimate_d(u, DeepParams::new(g.epsilon, r)?, spec, g.worst_case_budget)?;
    let d = g.d.unwrap_or(est.d_hat.max(g.epsilon));
    geo.d = d;
    let k = g.epsilon.max(r).max(d);
    let _ = writeln!(report, "epsilon\t{}", g.epsilon);
    report.push_str(&est.to_text());
    let _ = writeln!(report, "D\t{d}\t{}", if g.d.is_some() { "given" } else { "max(d_hat, epsilon)" });
    let _ = writeln!(report, "K\t{k}");
    run.write("estimates.txt", &report)?;
    let s = &mut run.summary;
    s.set("estimate.epsilon", g.epsilon, false);
    s.set("estimate.R", r, false);
    s.set("estimate.D_hat", est.d_hat, false);
    s.set("estimate.D", d, false);
    s.set("estimate.K", k, false);
    s.set("info.geometry.checked", est.checked, false);
    s.set("info.geometry.skipped", est.skipped, false);
    Ok(())
}

fn hull_range(cfg: &RunConfig, d: u32) -> (u32, u32) {
    let lo = cfg.hulls.r_min.unwrap_or(4 * d);
    (lo, cfg.hulls.r_max.unwrap_or(lo + 4))
}

fn hull_stage(run: &mut Run, u: &Universe, coned: &Graph, geo: Geometry) -> Result<(), Failure> {
    let (lo, hi) = hull_range(run.cfg, geo.d);
    let eps = run.cfg.geometry.epsilon;
    let mut log = String::new();
    let mut all = true;
    let mut any_truncated = false;
    for edge in identity_edges(u, coned) {
        let name = edge_key(u, edge);
        for r in lo..=hi {
            let hull = geometry::r_hull(u, &[edge.0, edge.1], r, eps)?;
            let (g, certified) = rips::induced_rips(u, &hull.vertices, run.cfg.n);
            let truncated = !hull.covered || !hull.uncertified.is_empty() || !certified;
            let (ok, seq) = is_dismantlable(&g)?;
            all &= ok;
            any_truncated |= truncated;
            run.summary.set(format!("hull.{name}.r{r}.size"), hull.vertices.len(), truncated);
            run.summary.set(format!("verdict.hull.{name}.r{r}.dismantlable"), ok, truncated);
            let labels: Vec<String> = hull.vertices.iter().map(|&v| key_label(u, v)).collect();
            let _ = writeln!(log, "# hull {name} r {r} vertices {}", labels.join(" "));
            log.push_str(&seq.to_log());
        }
    }
    run.summary.set("verdict.hulls.all_dismantlable", all, any_truncated);
    run.write("hulls.log", &log)
}

fn subgroup_stage(run: &mut Run, u: &Universe, rips: &RipsGraph) -> Result<Vec<(FiniteSubgroup, Vec<VertexId>)>, Failure> {
    let reports = actions::enumerate_finite_subgroups(u, run.cfg.subgroups.max_order)?;
    run.write("subgroups.txt", &actions::subgroup_report_text(u.model(), &reports))?;
    let mut out = String::new();
    let mut found = Vec::new();
    let mut all_found = true;
    let mut all_peripheral = true;
    let mut incomplete = false;
    let mut orders = BTreeSet::new();
    for rep in &reports {
        orders.insert(rep.subgroup.order());
        incomplete |= !rep.complete;
        all_peripheral &= !matches!(rep.classification, Classification::ExceptionalInTruncation);
        let name = rep.subgroup.display(u.model());
        match actions::fixed_clique(u, rips, &rep.subgroup) {
            Ok(Some(k)) => {
                let labels: Vec<String> = k.iter().map(|&v| u.label(v)).collect();
                let _ = writeln!(out, "{name}\tfixed\t{}", labels.join(" ; "));
                found.push((rep.subgroup.clone(), k));
            }
            Ok(None) => {
                all_found = false;
                let _ = writeln!(out, "{name}\tnone");
            }
            Err(e) => {
                all_found = false;
                let _ = writeln!(out, "{name}\terror\t{e}");
            }
        }
    }
    run.write("fixed_cliques.txt", &out)?;
    let orders: Vec<String> = orders.iter().map(ToString::to_string).collect();
    let s = &mut run.summary;
    s.set("info.subgroups.count", reports.len(), false);
    s.set("verdict.subgroups.orders", orders.join(","), incomplete);
    s.set("verdict.subgroups.all_peripheral_conjugate", all_peripheral, false);
    s.set("verdict.fixed_cliques.all_found", all_found, false);
    Ok(found)
}

/// For each subgroup with a fixed clique `K`, the fixed-point set of `H` on
/// the flag complex of `Γ_n` restricted to the hull of `H·e ∪ K`, which is
/// `H`-invariant.
fn fixed_point_stage(
    run: &mut Run,
    u: &Universe,
    subgroups: &[(FiniteSubgroup, Vec<VertexId>)],
    geo: Geometry,
) -> Result<(), Failure> {
    let r = hull_range(run.cfg, geo.d).0;
    let mut out = String::new();
    let mut all = true;
    let mut truncated = false;
    for (h, k) in subgroups {
        let mut set: BTreeSet<VertexId> = actions::orbit(u, h, u.identity())?.into_iter().collect();
        set.extend(k.iter().copied());
        let set: Vec<VertexId> = set.into_iter().collect();
        let hull = geometry::r_hull(u, &set, r, run.cfg.geometry.epsilon)?;
        let (g, certified) = rips::induced_rips(u, &hull.vertices, run.cfg.n);
        truncated |= !hull.covered || !hull.uncertified.is_empty() || !certified;
        let mut perms = Vec::new();
        for gen in &h.generators {
            let mut perm = Vec::with_capacity(hull.vertices.len());
            for &v in &hull.vertices {
                let t = u.translate(gen, v)?.and_then(|t| hull.vertices.binary_search(&t).ok()).ok_or_else(|| {
                    Failure::Truncation(format!("translate of {} leaves the hull", u.label(v)))
                })?;
                perm.push(t);
            }
            perms.push(perm);
        }
        let (q, orbits) = actions::fixed_point_graph(&g, &perms)?;
        let dismantlable = q.n() > 0 && is_dismantlable(&q)?.0;
        // The flag complex of the orbit graph is the fixed-point set; a
        // dismantlable orbit graph already makes it contractible.
        let (verdict, homology) = match clique_complex(&q, q.n().max(1), run.cfg.limits.simplex_cap) {
            Ok(c) => {
                let rep = actions::contractibility_report(&c);
                let betti: Vec<String> = rep.reduced_betti.iter().map(ToString::to_string).collect();
                let v = if dismantlable { actions::Verdict::ContractibleEvidence } else { rep.verdict };
                (v, format!("collapsible\t{}\treduced_betti\t{}", rep.collapsible, betti.join(",")))
            }
            Err(relrips::Error::Resource { .. }) if dismantlable => {
                (actions::Verdict::ContractibleEvidence, "complex\tover-cap".to_string())
            }
            Err(e) => return Err(e.into()),
        };
        all &= verdict == actions::Verdict::ContractibleEvidence;
        let _ = writeln!(
            out,
            "{}\thull_vertices\t{}\tclique_orbits\t{}\tdismantlable\t{dismantlable}\t{homology}\t{}",
            h.display(u.model()),
            hull.vertices.len(),
            orbits.len(),
            verdict.as_str()
        );
    }
    run.summary.set("verdict.fixed_points.all_contractible_evidence", all, truncated);
    run.write("fixed_points.txt", &out)
}
