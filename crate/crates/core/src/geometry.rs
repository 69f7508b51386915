//! Geodesics between vertices of `V ∪ W`, deep/transition classification,
//! convexity, hulls, and empirical thin-triangle constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::substream;
use crate::universe::{Universe, VertexId};

/// The pair `(ε, R)` governing deep vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeepParams {
    pub epsilon: u32,
    pub r: u32,
}

impl DeepParams {
    pub fn new(epsilon: u32, r: u32) -> Result<Self> {
        if epsilon == 0 || r == 0 {
            return Err(Error::input("epsilon and R must be positive"));
        }
        Ok(DeepParams { epsilon, r })
    }
}

/// The constants `(ε, R, D, K)`; `K` is carried for reporting only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometryParams {
    pub deep: DeepParams,
    pub d: u32,
    pub k: u32,
}

impl GeometryParams {
    pub fn new(epsilon: u32, r: u32, d: u32, k: u32) -> Result<Self> {
        let deep = DeepParams::new(epsilon, r)?;
        if d < epsilon {
            return Err(Error::input("D must be at least epsilon"));
        }
        if k == 0 {
            return Err(Error::input("K must be positive"));
        }
        Ok(GeometryParams { deep, d, k })
    }
}

/// A geodesic edge path of group elements from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicPath {
    pub a: VertexId,
    pub b: VertexId,
    pub vertices: Vec<VertexId>,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `p_i`, with indices past the end clamped to the terminal vertex.
    pub fn at(&self, i: usize) -> VertexId {
        self.vertices[i.min(self.len())]
    }
}

/// Elements on geodesics from `a` to `b`, grouped by their index along the geodesic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub a: VertexId,
    pub b: VertexId,
    pub length: u32,
    pub layers: Vec<Vec<VertexId>>,
}

impl Interval {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self.layers.concat();
        all.sort();
        all
    }

    /// Layer `i`, clamped to the terminal layer.
    pub fn layer(&self, i: usize) -> &[VertexId] {
        &self.layers[i.min(self.layers.len() - 1)]
    }

    pub fn index_of(&self, x: VertexId) -> Option<usize> {
        self.layers.iter().position(|l| l.binary_search(&x).is_ok())
    }
}

// Whether every geodesic between members of `a` and `b` of length `l` lies
// inside the ball, so that the interval computed there is the true one.
fn interval_covered(u: &Universe, a: VertexId, b: VertexId, l: u32) -> bool {
    let r = u.radius();
    match (u.reach(a), u.reach(b)) {
        (Some(ra), Some(rb)) => ra + rb + l <= 2 * r,
        (Some(ra), None) => ra + l <= r,
        (None, Some(rb)) => rb + l <= r,
        (None, None) => false,
    }
}

/// The geodesic interval, layered by index.
pub fn interval(u: &Universe, a: VertexId, b: VertexId) -> Result<Interval> {
    u.check(a)?;
    u.check(b)?;
    let l = u.dist(a, b);
    if !interval_covered(u, a, b, l) {
        return Err(Error::truncation(format!(
            "geodesics from {} to {} leave the certified region",
            u.label(a),
            u.label(b)
        )));
    }
    let mut layers = vec![Vec::new(); l as usize + 1];
    for x in u.element_vertices() {
        let da = u.dist(a, x);
        if da <= l && da + u.dist(x, b) == l {
            layers[da as usize].push(x);
        }
    }
    Ok(Interval { a, b, length: l, layers })
}

/// All elements on some geodesic from `a` to `b`, in id order.
pub fn geodesic_interval(u: &Universe, a: VertexId, b: VertexId) -> Result<Vec<VertexId>> {
    Ok(interval(u, a, b)?.vertices())
}

fn shortlex_path(u: &Universe, iv: &Interval) -> GeodesicPath {
    let mut vertices = vec![iv.layers[0][0]];
    for layer in &iv.layers[1..] {
        let last = *vertices.last().unwrap();
        let next = *layer
            .iter()
            .find(|&&y| u.dist(last, y) == 1)
            .expect("interval layers are connected");
        vertices.push(next);
    }
    GeodesicPath { a: iv.a, b: iv.b, vertices }
}

/// The geodesic from `a` to `b` choosing the shortlex-least element at every step.
pub fn geodesic(u: &Universe, a: VertexId, b: VertexId) -> Result<GeodesicPath> {
    Ok(shortlex_path(u, &interval(u, a, b)?))
}

/// Cosets within `ε` of each element, precomputed once per universe.
struct NearCosets {
    epsilon: u32,
    near: Vec<Vec<VertexId>>,
}

impl NearCosets {
    fn new(u: &Universe, epsilon: u32) -> Self {
        let near = u
            .element_vertices()
            .map(|x| u.coset_vertices().filter(|&w| u.dist(x, w) <= epsilon).collect())
            .collect();
        NearCosets { epsilon, near }
    }

    fn check(&self, u: &Universe, x: VertexId) -> Result<()> {
        if u.norm(x).unwrap() + self.epsilon > u.radius() {
            return Err(Error::truncation(format!(
                "cosets near {} are not all in the universe",
                u.label(x)
            )));
        }
        Ok(())
    }

    /// Cosets `ε`-close to every vertex of the window.
    fn deep(&self, u: &Universe, window: &[VertexId]) -> Result<Vec<VertexId>> {
        for &x in window {
            self.check(u, x)?;
        }
        Ok(self.near[window[0].0]
            .iter()
            .copied()
            .filter(|&w| window.iter().all(|&x| u.dist(x, w) <= self.epsilon))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexTag {
    Transition,
    /// Deep in the given coset (the least one if there are several).
    Deep(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeepClassification {
    pub tags: Vec<VertexTag>,
    /// All cosets each vertex is deep in.
    pub deep_in: Vec<Vec<VertexId>>,
    /// Some vertex is deep in two distinct cosets.
    pub double_deep: bool,
}

fn classify_with(u: &Universe, near: &NearCosets, p: &GeodesicPath, r: u32) -> Result<DeepClassification> {
    let l = p.len();
    let r = r as usize;
    let mut tags = vec![VertexTag::Transition; l + 1];
    let mut deep_in = vec![Vec::new(); l + 1];
    if l >= 2 * r {
        for i in r..=l - r {
            let ws = near.deep(u, &p.vertices[i - r..=i + r])?;
            if let Some(&w) = ws.first() {
                tags[i] = VertexTag::Deep(w);
            }
            deep_in[i] = ws;
        }
    }
    let double_deep = deep_in.iter().any(|d| d.len() > 1);
    Ok(DeepClassification { tags, deep_in, double_deep })
}

/// Tag each vertex of `p` as transition or deep.
pub fn classify_vertices(u: &Universe, p: &GeodesicPath, params: DeepParams) -> Result<DeepClassification> {
    classify_with(u, &NearCosets::new(u, params.epsilon), p, params.r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleSpec {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct REstimate {
    pub r: u32,
    /// Geodesic windows examined at the returned `R`.
    pub windows: usize,
    pub exhaustive: bool,
}

// Geodesic paths from the identity of the given length (norm increases by one each step).
fn geodesic_words(u: &Universe, len: usize, budget: usize) -> Result<Vec<Vec<VertexId>>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![u.identity()]];
    while let Some(path) = stack.pop() {
        if path.len() == len + 1 {
            out.push(path);
            if out.len() > budget {
                return Err(Error::Budget { budget: budget as u64, partial: out.len() as u64 });
            }
            continue;
        }
        let last = *path.last().unwrap();
        let k = u.norm(last).unwrap();
        for y in u.ball().neighbors(last.0).into_iter().rev() {
            if u.ball().norms[y] == k + 1 {
                let mut next = path.clone();
                next.push(VertexId(y));
                stack.push(next);
            }
        }
    }
    out.reverse();
    Ok(out)
}

fn random_geodesic_word<R: Rng>(u: &Universe, len: usize, rng: &mut R) -> Option<Vec<VertexId>> {
    let mut path = vec![u.identity()];
    while path.len() <= len {
        let last = *path.last().unwrap();
        let k = u.norm(last).unwrap();
        let up: Vec<usize> =
            u.ball().neighbors(last.0).into_iter().filter(|&y| u.ball().norms[y] == k + 1).collect();
        if up.is_empty() {
            return None;
        }
        path.push(VertexId(up[rng.random_range(0..up.len())]));
    }
    Some(path)
}

pub const WINDOW_BUDGET: usize = 2_000_000;

/// Least `R` such that no geodesic vertex is `(ε, R)`-deep in two cosets.
///
/// By left invariance it suffices to examine geodesic windows of length `2R`
/// starting at the identity.
pub fn estimate_r(u: &Universe, epsilon: u32, spec: SampleSpec) -> Result<REstimate> {
    if epsilon == 0 {
        return Err(Error::input("epsilon must be positive"));
    }
    let near = NearCosets::new(u, epsilon);
    let mut r = 1u32;
    loop {
        if 2 * r + epsilon > u.radius() {
            return Err(Error::truncation(format!(
                "no R up to {} separates deep cosets inside radius {}",
                r - 1,
                u.radius()
            )));
        }
        let windows = match spec {
            SampleSpec::Exhaustive => geodesic_words(u, 2 * r as usize, WINDOW_BUDGET)?,
            SampleSpec::Sampled { samples, seed } => {
                let mut rng = substream(seed, &format!("estimate-r-{r}"));
                (0..samples).filter_map(|_| random_geodesic_word(u, 2 * r as usize, &mut rng)).collect()
            }
        };
        let mut double = false;
        for w in &windows {
            if near.deep(u, w)?.len() > 1 {
                double = true;
                break;
            }
        }
        if !double {
            return Ok(REstimate { r, windows: windows.len(), exhaustive: spec == SampleSpec::Exhaustive });
        }
        r += 1;
    }
}

/// Measured thin-triangle defect for one choice of `(a, b, c, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleDefect {
    pub defect: u32,
    pub z: VertexId,
    pub deep: bool,
}

fn exact_dist(u: &Universe, x: VertexId, y: VertexId) -> Result<u32> {
    let d = u.distance(x, y);
    if !d.exact {
        return Err(Error::truncation(format!(
            "distance between {} and {} is not certified",
            u.label(x),
            u.label(y)
        )));
    }
    Ok(d.value)
}

// Candidate values of z for index i over the given windows of p^{ab}.
fn z_candidates(
    u: &Universe,
    near: &NearCosets,
    p_i: VertexId,
    windows: &[Vec<VertexId>],
) -> Result<BTreeSet<(VertexId, bool)>> {
    let mut zs = BTreeSet::new();
    for w in windows {
        match near.deep(u, w)?.first() {
            Some(&c) => zs.insert((c, true)),
            None => zs.insert((w[w.len() / 2], false)),
        };
    }
    if windows.is_empty() {
        zs.insert((p_i, false));
    }
    Ok(zs)
}

/// Thin-triangle defect `min(|z, p^{ac}_i|_S, |z, p^{bc}_{ℓ-i}|_S)` with shortlex geodesics.
pub fn thin_triangle_check(
    u: &Universe,
    a: VertexId,
    b: VertexId,
    c: VertexId,
    i: usize,
    params: DeepParams,
) -> Result<TriangleDefect> {
    let near = NearCosets::new(u, params.epsilon);
    let ab = interval_checked(u, a, b)?;
    let ac = interval(u, a, c)?;
    let bc = interval(u, b, c)?;
    triangle_shortlex(u, &near, params.r, &ab, &ac, &bc, i)
}

fn interval_checked(u: &Universe, a: VertexId, b: VertexId) -> Result<Interval> {
    if a == b {
        return Err(Error::input("thin triangles need a != b"));
    }
    interval(u, a, b)
}

fn triangle_shortlex(
    u: &Universe,
    near: &NearCosets,
    r: u32,
    ab: &Interval,
    ac: &Interval,
    bc: &Interval,
    i: usize,
) -> Result<TriangleDefect> {
    let l = ab.length as usize;
    if i > l {
        return Err(Error::input(format!("index {i} exceeds |a,b| = {l}")));
    }
    let p = shortlex_path(u, ab);
    let class = classify_with(u, near, &p, r)?;
    let (z, deep) = match class.tags[i] {
        VertexTag::Deep(w) => (w, true),
        VertexTag::Transition => (p.vertices[i], false),
    };
    let x = shortlex_path(u, ac).at(i);
    let y = shortlex_path(u, bc).at(l - i);
    let defect = exact_dist(u, z, x)?.min(exact_dist(u, z, y)?);
    Ok(TriangleDefect { defect, z, deep })
}

// Windows p_{i-R..=i+R} of all geodesics through the interval, or none when
// the index is too close to an end for deepness.
fn interval_windows(iv: &Interval, u: &Universe, i: usize, r: usize, budget: u64) -> Result<Vec<Vec<VertexId>>> {
    let l = iv.length as usize;
    if i < r || i + r > l {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut stack: Vec<Vec<VertexId>> = iv.layers[i - r].iter().map(|&x| vec![x]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        nodes += 1;
        if nodes > budget {
            return Err(Error::Budget { budget, partial: out.len() as u64 });
        }
        let depth = i - r + path.len() - 1;
        if depth == i + r {
            out.push(path);
            continue;
        }
        let last = *path.last().unwrap();
        for &y in iv.layers[depth + 1].iter().rev() {
            if u.dist(last, y) == 1 {
                let mut next = path.clone();
                next.push(y);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

fn triangle_worst(
    u: &Universe,
    near: &NearCosets,
    r: u32,
    ab: &Interval,
    ac: &Interval,
    bc: &Interval,
    i: usize,
    budget: u64,
) -> Result<TriangleDefect> {
    let l = ab.length as usize;
    if i > l {
        return Err(Error::input(format!("index {i} exceeds |a,b| = {l}")));
    }
    let windows = interval_windows(ab, u, i, r as usize, budget)?;
    let mut zs = z_candidates(u, near, ab.layers[i][0], &windows)?;
    if windows.is_empty() {
        zs = ab.layers[i].iter().map(|&x| (x, false)).collect();
    }
    let mut worst: Option<TriangleDefect> = None;
    for (z, deep) in zs {
        let mut side_ac = 0;
        for &x in ac.layer(i) {
            side_ac = side_ac.max(exact_dist(u, z, x)?);
        }
        let mut side_bc = 0;
        for &y in bc.layer(l - i) {
            side_bc = side_bc.max(exact_dist(u, z, y)?);
        }
        let d = side_ac.min(side_bc);
        if worst.is_none_or(|w| d > w.defect) {
            worst = Some(TriangleDefect { defect: d, z, deep });
        }
    }
    Ok(worst.expect("at least one candidate"))
}

/// Thin-triangle defect maximised over all choices of the three geodesics.
///
/// The sides `p^{ac}` and `p^{bc}` enter only through the interval layers at the
/// relevant indices; `p^{ab}` is enumerated window by window within `budget` nodes.
pub fn thin_triangle_worst_case(
    u: &Universe,
    a: VertexId,
    b: VertexId,
    c: VertexId,
    i: usize,
    params: DeepParams,
    budget: u64,
) -> Result<TriangleDefect> {
    let near = NearCosets::new(u, params.epsilon);
    let ab = interval_checked(u, a, b)?;
    let ac = interval(u, a, c)?;
    let bc = interval(u, b, c)?;
    triangle_worst(u, &near, params.r, &ab, &ac, &bc, i, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DEstimate {
    pub d_hat: u32,
    pub histogram: BTreeMap<u32, u64>,
    /// Certified `(a, b, c, i)` instances measured.
    pub checked: u64,
    /// Instances skipped because some geodesic or distance was not certified.
    pub skipped: u64,
    pub exhaustive: bool,
    pub worst_case: bool,
}

impl DEstimate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "d_hat\t{}", self.d_hat);
        let _ = writeln!(out, "checked\t{}", self.checked);
        let _ = writeln!(out, "skipped\t{}", self.skipped);
        let _ = writeln!(out, "exhaustive\t{}", self.exhaustive);
        let _ = writeln!(out, "worst_case\t{}", self.worst_case);
        for (d, count) in &self.histogram {
            let _ = writeln!(out, "defect\t{d}\t{count}");
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    histogram: BTreeMap<u32, u64>,
    skipped: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.skipped += other.skipped;
        self
    }

    fn record(&mut self, r: Result<TriangleDefect>) -> Result<()> {
        match r {
            Ok(t) => *self.histogram.entry(t.defect).or_default() += 1,
            Err(Error::Truncation(_)) => self.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

/// Empirical thin-triangle constant `D̂`: the largest defect over certified instances.
///
/// `worst_case_budget = Some(b)` maximises over all geodesics per instance;
/// `None` uses shortlex geodesics.
pub fn estimate_d(
    u: &Universe,
    params: DeepParams,
    spec: SampleSpec,
    worst_case_budget: Option<u64>,
) -> Result<DEstimate> {
    let near = NearCosets::new(u, params.epsilon);
    let n = u.len();
    let eval = |ab: &Interval, ac: &Interval, bc: &Interval, i: usize| match worst_case_budget {
        Some(budget) => triangle_worst(u, &near, params.r, ab, ac, bc, i, budget),
        None => triangle_shortlex(u, &near, params.r, ab, ac, bc, i),
    };
    let tally = match spec {
        SampleSpec::Exhaustive => {
            let intervals: Vec<Option<Interval>> = (0..n * n)
                .into_par_iter()
                .map(|k| interval(u, VertexId(k / n), VertexId(k % n)).ok())
                .collect();
            let get = |x: usize, y: usize| intervals[x * n + y].as_ref();
            (0..n)
                .into_par_iter()
                .map(|a| -> Result<Tally> {
                    let mut t = Tally::default();
                    for b in (0..n).filter(|&b| b != a) {
                        let l = u.dist(VertexId(a), VertexId(b)) as u64 + 1;
                        let Some(ab) = get(a, b) else {
                            t.skipped += l * n as u64;
                            continue;
                        };
                        for c in 0..n {
                            let (Some(ac), Some(bc)) = (get(a, c), get(b, c)) else {
                                t.skipped += l;
                                continue;
                            };
                            for i in 0..=ab.length as usize {
                                t.record(eval(ab, ac, bc, i))?;
                            }
                        }
                    }
                    Ok(t)
                })
                .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?
        }
        SampleSpec::Sampled { samples, seed } => {
            let mut rng = substream(seed, "thin-triangles");
            let draws: Vec<(usize, usize, usize, f64)> = (0..samples)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n), rng.random()))
                .collect();
            draws
                .into_par_iter()
                .map(|(a, b, c, t)| -> Result<Tally> {
                    let mut tally = Tally::default();
                    let (a, b, c) = (VertexId(a), VertexId(b), VertexId(c));
                    if a == b {
                        tally.skipped += 1;
                        return Ok(tally);
                    }
                    let ivs = (interval(u, a, b), interval(u, a, c), interval(u, b, c));
                    match ivs {
                        (Ok(ab), Ok(ac), Ok(bc)) => {
                            let i = ((t * (ab.length as f64 + 1.0)) as usize).min(ab.length as usize);
                            tally.record(eval(&ab, &ac, &bc, i))?;
                        }
                        _ => tally.skipped += 1,
                    }
                    Ok(tally)
                })
                .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?
        }
    };
    Ok(DEstimate {
        d_hat: tally.histogram.keys().next_back().copied().unwrap_or(0),
        checked: tally.histogram.values().sum(),
        histogram: tally.histogram,
        skipped: tally.skipped,
        exhaustive: spec == SampleSpec::Exhaustive,
        worst_case: worst_case_budget.is_some(),
    })
}

/// A failure of `μ`-convexity: the geodesic target and the offending vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub target: VertexId,
    pub offender: VertexId,
}

/// Check `μ`-convexity of `set` with respect to `base`; returns the first violation.
pub fn is_mu_convex(
    u: &Universe,
    set: &[VertexId],
    base: VertexId,
    mu: u32,
    epsilon: u32,
) -> Result<(bool, Option<ConvexityWitness>)> {
    let members: BTreeSet<VertexId> = set.iter().copied().collect();
    if !members.contains(&base) {
        return Err(Error::input("base vertex must belong to the set"));
    }
    let near = NearCosets::new(u, epsilon);
    for &target in &members {
        let iv = interval(u, base, target)?;
        let l = iv.length;
        if l < mu {
            continue;
        }
        for layer in &iv.layers[..=(l - mu) as usize] {
            for &x in layer {
                if !members.contains(&x) {
                    return Ok((false, Some(ConvexityWitness { target, offender: x })));
                }
                near.check(u, x)?;
                if let Some(&w) = near.near[x.0].iter().find(|w| !members.contains(w)) {
                    return Ok((false, Some(ConvexityWitness { target, offender: w })));
                }
            }
        }
    }
    Ok((true, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<VertexId>,
    /// Excluded vertices whose exclusion rests on an uncertified distance.
    pub uncertified: Vec<VertexId>,
    /// Every vertex of the true hull lies in the universe.
    pub covered: bool,
}

/// The `r`-hull: elements within `r` and cosets within `r + ε` of every point of `set`.
pub fn r_hull(u: &Universe, set: &[VertexId], r: u32, epsilon: u32) -> Result<Hull> {
    if set.is_empty() {
        return Err(Error::input("hull of an empty set"));
    }
    for &x in set {
        u.check(x)?;
    }
    let mut vertices = Vec::new();
    let mut uncertified = Vec::new();
    for v in u.vertices() {
        let bound = if u.is_element(v) { r } else { r + epsilon };
        let mut inside = true;
        let mut doubtful = true;
        for &x in set {
            let d = u.distance(v, x);
            if d.value > bound {
                inside = false;
                doubtful &= u.distance_lower_bound(v, x) <= bound;
            }
        }
        if inside {
            vertices.push(v);
        } else if doubtful {
            uncertified.push(v);
        }
    }
    let covered = set.iter().any(|&x| u.reach(x).is_some_and(|rx| rx + r + epsilon <= u.radius()));
    Ok(Hull { vertices, uncertified, covered })
}
