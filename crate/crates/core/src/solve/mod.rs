//! The Chebyshev polynomial system solver.
//!
//! Given `p_1..p_n` on `[-1, 1]^n` with bounds `eps_i`, [`cheb_solve`]
//! returns boxes whose union contains every point where all `|p_i| <= eps_i`
//! could hold with a zero of the underlying functions. A node of the search
//! tries the exclusion checks, then shrinks its box by linear reduction while
//! that keeps making progress, then either reaches the base case and zooms in
//! on a single root with `eps = 0`, or splits into `2^n` children and merges
//! whatever they return.

mod checks;
mod merge;
mod reduce;

use alloc::vec;
use alloc::vec::Vec;

pub use checks::{constant_term_check, quadratic_check};
pub use reduce::{base_case_check, reduce_full, reduce_single, Reduction};

use crate::chebpoly::{check_system, ChebPoly, IntervalBox, LowOrder};
use crate::dd::Axis;
use crate::error::{invalid, Result};
use crate::exec::{Executor, Sequential};
use crate::transform::{apply, weighted_mass, AffineMap1D};
use crate::MACHINE_EPSILON;
use reduce::{base_case, looks_multiple, reduction_method, Local, Reduced};

/// Tunables of the solver and of [`crate::approximate::approximate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    /// Result boxes wider than this in some coordinate are re-solved by the
    /// driver.
    pub max_interval_size: f64,
    /// A reduction counts as progress when the box volume drops to at most
    /// this fraction.
    pub reduction_progress_factor: f64,
    /// Base case once the `eps`-only reduction leaves more than this
    /// fraction of every coordinate.
    pub base_case_shrink_cap: f64,
    /// The first split is at fraction `0.5 + first_split_offset`.
    pub first_split_offset: f64,
    /// Largest accepted 1-norm condition number of the scaled linear part.
    pub condition_cap: f64,
    /// Subdivision depth limit; also bounds the driver's re-solve nesting.
    pub max_depth: usize,
    /// Coefficients below this times `CoeffBound` are trimmed.
    pub trim_rel_tol: f64,
    /// Degree search tolerance relative to the largest sample.
    pub approx_rel_tol: f64,
    /// Largest degree tried per coordinate during approximation.
    pub degree_cap: usize,
    /// Decay rates `rho <= 1 + rho_margin` are rejected by the tail bound.
    pub rho_margin: f64,
    /// Per-entry error charged for each transformation-matrix coefficient.
    pub transform_eps: f64,
    /// Keep up to this many exclusion events for inspection.
    pub harvest_exclusions: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_interval_size: 1e-5,
            reduction_progress_factor: 0.99,
            base_case_shrink_cap: 0.4,
            first_split_offset: 0.0297,
            condition_cap: 1e8,
            max_depth: 100,
            trim_rel_tol: MACHINE_EPSILON,
            approx_rel_tol: 1e-10,
            degree_cap: 1 << 17,
            rho_margin: 1e-3,
            transform_eps: 256.0 * MACHINE_EPSILON,
            harvest_exclusions: 0,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.max_interval_size,
            self.reduction_progress_factor,
            self.base_case_shrink_cap,
            self.condition_cap,
            self.approx_rel_tol,
        ];
        if positive.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(invalid("solver tolerances must be positive and finite"));
        }
        if !(self.first_split_offset > 0.0 && self.first_split_offset < 0.1) {
            return Err(invalid("first_split_offset must lie in (0, 0.1)"));
        }
        if self.reduction_progress_factor >= 1.0 || self.base_case_shrink_cap >= 1.0 {
            return Err(invalid("progress factor and base-case cap must be below 1"));
        }
        if !(self.trim_rel_tol >= 0.0) || !(self.transform_eps >= 0.0) || !(self.rho_margin >= 0.0) {
            return Err(invalid("trim, transform and rho tolerances must be nonnegative"));
        }
        if self.degree_cap < 16 {
            return Err(invalid("degree_cap must be at least 16"));
        }
        Ok(())
    }
}

/// Warning flags on a [`RootRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Flags(u8);

impl Flags {
    pub const NONE: Flags = Flags(0);
    /// Kept because it could not be excluded, but the `eps = 0` zoom found
    /// no zero of the proxy.
    pub const SPURIOUS_CANDIDATE: Flags = Flags(1);
    /// One of several records that may describe the same zero.
    pub const POSSIBLE_DUPLICATE: Flags = Flags(2);
    /// A depth or iteration limit stopped refinement.
    pub const DEPTH_WARNING: Flags = Flags(4);
    /// The box could not be approximated or refined to the requested size.
    pub const UNRESOLVED: Flags = Flags(8);

    const NAMES: [(Flags, &'static str); 4] = [
        (Flags::SPURIOUS_CANDIDATE, "SPURIOUS_CANDIDATE"),
        (Flags::POSSIBLE_DUPLICATE, "POSSIBLE_DUPLICATE"),
        (Flags::DEPTH_WARNING, "DEPTH_WARNING"),
        (Flags::UNRESOLVED, "UNRESOLVED"),
    ];

    pub fn contains(self, other: Flags) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn insert(&mut self, other: Flags) {
        self.0 |= other.0;
    }

    pub fn union(self, other: Flags) -> Flags {
        Flags(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn names(self) -> Vec<&'static str> {
        Flags::NAMES.iter().filter(|(f, _)| self.contains(*f)).map(|(_, n)| *n).collect()
    }

    pub fn from_name(name: &str) -> Option<Flags> {
        Flags::NAMES.iter().find(|(_, n)| *n == name).map(|(f, _)| *f)
    }
}

/// One returned zero: a candidate point inside a bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub point: Vec<f64>,
    pub bounding_box: IntervalBox,
    pub flags: Flags,
    /// `f_i(point)` for the original functions; filled by the driver.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub subdivisions: usize,
    pub max_depth: usize,
    pub function_evals: usize,
}

/// Which check excluded a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionKind {
    Constant,
    Quadratic,
}

/// A box discarded because polynomial `index` provably stays above `eps`
/// in magnitude there. `poly` is that polynomial expressed on the box as
/// `[-1, 1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionEvent {
    pub poly: ChebPoly,
    pub eps: f64,
    pub index: usize,
    pub kind: ExclusionKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveOutput {
    /// Sorted by the lower corner of the box.
    pub records: Vec<RootRecord>,
    pub stats: SolveStats,
    pub exclusions: Vec<ExclusionEvent>,
}

/// Solve on one thread. `bbox` is the box that `[-1, 1]^n` stands for;
/// records are reported in its coordinates.
pub fn cheb_solve(polys: &[ChebPoly], eps: &[f64], bbox: &IntervalBox, cfg: &SolveConfig) -> Result<SolveOutput> {
    cheb_solve_with(polys, eps, bbox, cfg, &Sequential)
}

/// [`cheb_solve`] with sibling subproblems handed to `exec`. The output does
/// not depend on the executor.
pub fn cheb_solve_with<E: Executor>(
    polys: &[ChebPoly],
    eps: &[f64],
    bbox: &IntervalBox,
    cfg: &SolveConfig,
    exec: &E,
) -> Result<SolveOutput> {
    let n = check_system(polys, eps)?;
    if bbox.dims() != n {
        return Err(crate::Error::DimensionMismatch { expected: n, found: bbox.dims() });
    }
    cfg.validate()?;
    let frame: Vec<Axis> = bbox.lower().iter().zip(bbox.upper()).map(|(&l, &h)| Axis::from_interval(l, h)).collect();
    let ctx = Ctx { cfg, exec, top_half: frame.iter().map(|a| a.half.hi).collect() };
    let node = Node { polys: polys.to_vec(), eps: eps.to_vec(), frame, depth: 0 };
    let part = solve_node(&ctx, node, true);
    let records = part
        .records
        .into_iter()
        .map(|r| RootRecord {
            point: r.point,
            bounding_box: IntervalBox::closed(r.lo, r.hi).expect("record boxes are ordered"),
            flags: r.flags,
            residuals: Vec::new(),
        })
        .collect();
    Ok(SolveOutput {
        records,
        stats: SolveStats { subdivisions: part.subdivisions, max_depth: part.max_depth, function_evals: 0 },
        exclusions: part.events,
    })
}

/// The `2^n` children of `b`, in lexicographic order (coordinate 0 slowest,
/// lower half first). The first split of a solve is off-centre.
pub fn subdivide(b: &IntervalBox, is_first: bool, cfg: &SolveConfig) -> Vec<IntervalBox> {
    let frac = split_fraction(is_first, cfg);
    let cuts: Vec<f64> = b.lower().iter().zip(b.upper()).map(|(&l, &h)| l + frac * (h - l)).collect();
    let n = b.dims();
    (0..1usize << n)
        .map(|c| {
            let mut lo = vec![0.0; n];
            let mut hi = vec![0.0; n];
            for d in 0..n {
                if (c >> (n - 1 - d)) & 1 == 0 {
                    lo[d] = b.lower()[d];
                    hi[d] = cuts[d];
                } else {
                    lo[d] = cuts[d];
                    hi[d] = b.upper()[d];
                }
            }
            IntervalBox::closed(lo, hi).expect("children of a valid box")
        })
        .collect()
}

fn split_fraction(is_first: bool, cfg: &SolveConfig) -> f64 {
    if is_first {
        0.5 + cfg.first_split_offset
    } else {
        0.5
    }
}

/// Zoom in on the zero of `polys` (no error bounds) inside `[-1, 1]^n`.
/// Returns points in `bbox` coordinates; more than one point means the zoom
/// had to split and all are flagged as possible duplicates.
pub fn solve_final_root(polys: &[ChebPoly], bbox: &IntervalBox, cfg: &SolveConfig) -> Result<Vec<(Vec<f64>, Flags)>> {
    let zeros = vec![0.0; polys.len()];
    check_system(polys, &zeros)?;
    let frame: Vec<Axis> = bbox.lower().iter().zip(bbox.upper()).map(|(&l, &h)| Axis::from_interval(l, h)).collect();
    let ctx = Ctx { cfg, exec: &Sequential, top_half: frame.iter().map(|a| a.half.hi).collect() };
    let node = Node { polys: polys.to_vec(), eps: zeros, frame, depth: 0 };
    Ok(final_root(&ctx, &node).into_iter().map(|r| (r.point, r.flags)).collect())
}

/// Group touching records from one node and re-solve or collapse each group.
/// `bbox` is the node box; `polys` and `eps` describe the node on it.
pub fn merge_intervals(
    records: Vec<RootRecord>,
    polys: &[ChebPoly],
    eps: &[f64],
    bbox: &IntervalBox,
    cfg: &SolveConfig,
) -> Result<Vec<RootRecord>> {
    check_system(polys, eps)?;
    let frame: Vec<Axis> = bbox.lower().iter().zip(bbox.upper()).map(|(&l, &h)| Axis::from_interval(l, h)).collect();
    let ctx = Ctx { cfg, exec: &Sequential, top_half: frame.iter().map(|a| a.half.hi).collect() };
    let node = Node { polys: polys.to_vec(), eps: eps.to_vec(), frame, depth: 0 };
    let recs = records
        .into_iter()
        .map(|r| Rec {
            point: r.point,
            lo: r.bounding_box.lower().to_vec(),
            hi: r.bounding_box.upper().to_vec(),
            flags: r.flags,
        })
        .collect();
    let mut part = Partial::default();
    let recs = merge::merge(&ctx, &node, recs, &mut part);
    Ok(recs
        .into_iter()
        .map(|r| RootRecord {
            point: r.point,
            bounding_box: IntervalBox::closed(r.lo, r.hi).expect("record boxes are ordered"),
            flags: r.flags,
            residuals: Vec::new(),
        })
        .collect())
}

/// Relative half widths of the box after each step of the reduction loop
/// run with `eps = 0` from `[-1, 1]^n`, until exclusion, stagnation or the
/// width reaches rounding level.
pub fn reduction_widths(polys: &[ChebPoly], cfg: &SolveConfig) -> Result<Vec<f64>> {
    let zeros = vec![0.0; polys.len()];
    check_system(polys, &zeros)?;
    let n = polys.len();
    let mut polys = polys.to_vec();
    let mut width = vec![1.0f64; n];
    let mut out = Vec::new();
    for _ in 0..FINAL_MAX_ITERS {
        let lows: Vec<LowOrder> = polys.iter().map(|p| p.low_order()).collect();
        let Reduced::Box(b) = reduction_method(&lows, &zeros, cfg) else {
            break;
        };
        if b.volume_ratio() > cfg.reduction_progress_factor {
            break;
        }
        let maps = maps_onto(&b);
        for (w, m) in width.iter_mut().zip(&maps) {
            *w *= m.alpha;
        }
        out.push(width.iter().copied().fold(0.0, f64::max));
        polys = polys.iter().map(|p| transform_all(p, &maps, 0.0, cfg.trim_rel_tol).0).collect();
        if width.iter().all(|&w| w <= RESOLVED_REL) {
            break;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

/// Relative width at which a box is considered a point.
const RESOLVED_REL: f64 = 4.0 * MACHINE_EPSILON;
/// Relative width (to the base-case box) below which the `eps = 0` zoom
/// treats exclusion or stagnation as convergence.
const FINAL_TINY_REL: f64 = 1.0 / (1u64 << 30) as f64;
const FINAL_MAX_ITERS: usize = 200;
const FINAL_SPLIT_DEPTH: usize = 3;

pub(crate) struct Ctx<'a, E> {
    cfg: &'a SolveConfig,
    exec: &'a E,
    top_half: Vec<f64>,
}

#[derive(Clone)]
pub(crate) struct Node {
    polys: Vec<ChebPoly>,
    eps: Vec<f64>,
    /// Local `[-1, 1]^n` to caller coordinates.
    frame: Vec<Axis>,
    depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Rec {
    point: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    flags: Flags,
}

#[derive(Default)]
pub(crate) struct Partial {
    records: Vec<Rec>,
    subdivisions: usize,
    max_depth: usize,
    events: Vec<ExclusionEvent>,
}

impl Partial {
    fn absorb_stats(&mut self, subdivisions: usize, max_depth: usize, events: Vec<ExclusionEvent>, cap: usize) {
        self.subdivisions += subdivisions;
        self.max_depth = self.max_depth.max(max_depth);
        for e in events {
            if self.events.len() >= cap {
                break;
            }
            self.events.push(e);
        }
    }
}

fn maps_onto(b: &Local) -> Vec<AffineMap1D> {
    b.lo.iter().zip(&b.hi).map(|(&l, &h)| AffineMap1D::onto(l, h)).collect()
}

/// Transform one polynomial in every non-identity coordinate and trim.
/// Returns the polynomial and the error charge.
fn transform_all(p: &ChebPoly, maps: &[AffineMap1D], eps_c: f64, trim_rel: f64) -> (ChebPoly, f64) {
    let mut q: Option<ChebPoly> = None;
    let mut charge = 0.0;
    for (dim, m) in maps.iter().enumerate() {
        if m.is_identity() {
            continue;
        }
        let src = q.as_ref().unwrap_or(p);
        charge += eps_c * weighted_mass(src, dim);
        let t = apply(src, dim, *m);
        let degrees = t.trimmed_degrees(trim_rel * t.coeff_bound());
        q = Some(if degrees == t.degrees() {
            t
        } else {
            charge += t.mass_outside(&degrees);
            t.leading_block(&degrees)
        });
    }
    (q.unwrap_or_else(|| p.clone()), charge)
}

impl Node {
    fn lows(&self) -> Vec<LowOrder> {
        self.polys.iter().map(|p| p.low_order()).collect()
    }

    /// The node restricted to a local subbox.
    fn zoom(&self, b: &Local, charged: bool, cfg: &SolveConfig) -> Node {
        let maps = maps_onto(b);
        let eps_c = if charged { cfg.transform_eps } else { 0.0 };
        let mut polys = Vec::with_capacity(self.polys.len());
        let mut eps = Vec::with_capacity(self.polys.len());
        for (p, &e) in self.polys.iter().zip(&self.eps) {
            let (q, c) = transform_all(p, &maps, eps_c, cfg.trim_rel_tol);
            polys.push(q);
            eps.push(if charged { e + c } else { e });
        }
        let frame = self.frame.iter().zip(&maps).map(|(ax, m)| ax.compose(m.alpha, m.beta)).collect();
        Node { polys, eps, frame, depth: self.depth }
    }

    fn center(&self) -> Vec<f64> {
        self.frame.iter().map(|a| a.center.to_f64()).collect()
    }

    /// The node box in caller coordinates, rounded outward.
    fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let lo = self.frame.iter().map(|a| a.center.sub(a.half).floor_f64()).collect();
        let hi = self.frame.iter().map(|a| a.center.add(a.half).ceil_f64()).collect();
        (lo, hi)
    }

    fn record(&self, point: Vec<f64>, flags: Flags) -> Rec {
        let (lo, hi) = self.bounds();
        let point = point.iter().zip(lo.iter().zip(&hi)).map(|(p, (l, h))| p.clamp(*l, *h)).collect();
        Rec { point, lo, hi, flags }
    }

    fn relative_half(&self, top: &[f64]) -> f64 {
        self.frame.iter().zip(top).map(|(a, t)| a.half.hi / t).fold(0.0, f64::max)
    }

    /// Local box covering caller-coordinate bounds, intersected with the node.
    fn localize(&self, lo: &[f64], hi: &[f64]) -> Local {
        let mut l = Local::unit(lo.len());
        for i in 0..lo.len() {
            let a = self.frame[i].unmap(lo[i]).floor_f64();
            let b = self.frame[i].unmap(hi[i]).ceil_f64();
            l.lo[i] = a.max(-1.0).min(1.0);
            l.hi[i] = b.min(1.0).max(l.lo[i]);
        }
        l.widen_to(reduce::MIN_LOCAL_HALF);
        l
    }
}

/// Index and kind of the first exclusion check that fires.
fn exclusion(lows: &[LowOrder], eps: &[f64]) -> Option<(usize, ExclusionKind)> {
    for (i, (l, &e)) in lows.iter().zip(eps).enumerate() {
        if checks::constant_excludes(l, e) {
            return Some((i, ExclusionKind::Constant));
        }
    }
    for (i, (l, &e)) in lows.iter().zip(eps).enumerate() {
        if checks::quadratic_excludes(l, e) {
            return Some((i, ExclusionKind::Quadratic));
        }
    }
    None
}

pub(crate) fn solve_node<E: Executor>(ctx: &Ctx<'_, E>, node: Node, first: bool) -> Partial {
    let cfg = ctx.cfg;
    let mut node = node;
    let mut out = Partial { max_depth: node.depth, ..Partial::default() };
    let lows = loop {
        let lows = node.lows();
        if node.relative_half(&ctx.top_half) <= RESOLVED_REL {
            let flags = if looks_multiple(&lows, cfg) { Flags::POSSIBLE_DUPLICATE } else { Flags::NONE };
            let c = node.center();
            out.records.push(node.record(c, flags));
            return out;
        }
        if let Some((index, kind)) = exclusion(&lows, &node.eps) {
            if cfg.harvest_exclusions > 0 {
                out.events.push(ExclusionEvent { poly: node.polys[index].clone(), eps: node.eps[index], index, kind });
            }
            return out;
        }
        match reduction_method(&lows, &node.eps, cfg) {
            Reduced::Excluded => return out,
            Reduced::Box(b) if b.volume_ratio() <= cfg.reduction_progress_factor => {
                node = node.zoom(&b, true, cfg);
            }
            _ => break lows,
        }
    };

    if base_case(&lows, &node.eps, cfg) {
        let mut recs = final_root(ctx, &node);
        if recs.len() == 1 && looks_multiple(&lows, cfg) {
            recs[0].flags.insert(Flags::POSSIBLE_DUPLICATE);
        }
        out.records.extend(recs);
        return out;
    }
    if node.depth >= cfg.max_depth {
        let c = node.center();
        out.records.push(node.record(c, Flags::DEPTH_WARNING));
        return out;
    }

    let (children, events) = split(&node, first, cfg);
    out.subdivisions += 1;
    out.max_depth = out.max_depth.max(node.depth + 1);
    out.absorb_stats(0, 0, events, cfg.harvest_exclusions);
    let parts = ctx.exec.map(children, |c| solve_node(ctx, c, false));
    let mut recs = Vec::new();
    for p in parts {
        recs.extend(p.records);
        out.absorb_stats(p.subdivisions, p.max_depth, p.events, cfg.harvest_exclusions);
    }
    let merged = merge::merge(ctx, &node, recs, &mut out);
    out.records = merged;
    out
}

/// The surviving children in lexicographic order, plus the exclusions met on
/// the way. Polynomials are re-expanded one at a time, coordinate by
/// coordinate, sharing the work between children with the same leading
/// halves; a child excluded by one polynomial is skipped for the rest.
fn split(node: &Node, first: bool, cfg: &SolveConfig) -> (Vec<Node>, Vec<ExclusionEvent>) {
    let n = node.polys.len();
    let count = 1usize << n;
    let cut = 2.0 * split_fraction(first, cfg) - 1.0;
    let halves = [AffineMap1D::onto(-1.0, cut), AffineMap1D::onto(cut, 1.0)];
    let mut polys: Vec<Vec<ChebPoly>> = vec![Vec::with_capacity(n); count];
    let mut eps: Vec<Vec<f64>> = vec![Vec::with_capacity(n); count];
    let mut alive = vec![true; count];
    let mut events = Vec::new();
    for (i, (p, &e)) in node.polys.iter().zip(&node.eps).enumerate() {
        let mut leaves: Vec<Option<(ChebPoly, f64)>> = vec![None; count];
        branch(p, e, &halves, n, 0, 0, &alive, cfg, &mut leaves);
        for (c, leaf) in leaves.into_iter().enumerate() {
            let Some((q, e)) = leaf else { continue };
            let lo = q.low_order();
            let kind = if checks::constant_excludes(&lo, e) {
                Some(ExclusionKind::Constant)
            } else if checks::quadratic_excludes(&lo, e) {
                Some(ExclusionKind::Quadratic)
            } else {
                None
            };
            match kind {
                Some(kind) => {
                    alive[c] = false;
                    polys[c].clear();
                    if events.len() < cfg.harvest_exclusions {
                        events.push(ExclusionEvent { poly: q, eps: e, index: i, kind });
                    }
                }
                None => {
                    polys[c].push(q);
                    eps[c].push(e);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (c, (ps, es)) in polys.into_iter().zip(eps).enumerate() {
        if !alive[c] {
            continue;
        }
        let frame = node
            .frame
            .iter()
            .enumerate()
            .map(|(d, ax)| {
                let m = halves[(c >> (n - 1 - d)) & 1];
                ax.compose(m.alpha, m.beta)
            })
            .collect();
        out.push(Node { polys: ps, eps: es, frame, depth: node.depth + 1 });
    }
    (out, events)
}

/// Re-expand `p` on the live leaves below `base`, one coordinate per level.
#[allow(clippy::too_many_arguments)]
fn branch(
    p: &ChebPoly,
    e: f64,
    halves: &[AffineMap1D; 2],
    n: usize,
    dim: usize,
    base: usize,
    alive: &[bool],
    cfg: &SolveConfig,
    leaves: &mut [Option<(ChebPoly, f64)>],
) {
    let span = 1usize << (n - dim - 1);
    for (b, m) in halves.iter().enumerate() {
        let at = base + b * span;
        if !alive[at..at + span].iter().any(|&a| a) {
            continue;
        }
        let mut maps = vec![AffineMap1D::IDENTITY; n];
        maps[dim] = *m;
        let (q, c) = transform_all(p, &maps, cfg.transform_eps, cfg.trim_rel_tol);
        if dim + 1 == n {
            leaves[at] = Some((q, e + c));
        } else {
            branch(&q, e + c, halves, n, dim + 1, at, alive, cfg, leaves);
        }
    }
}

/// The `eps = 0` zoom from a base-case node. Every record carries the
/// base-case box.
fn final_root<E: Executor>(ctx: &Ctx<'_, E>, node: &Node) -> Vec<Rec> {
    let base_half: Vec<f64> = node.frame.iter().map(|a| a.half.hi).collect();
    let zeroed = Node { eps: vec![0.0; node.eps.len()], ..node.clone() };
    final_zoom(ctx, zeroed, &base_half, FINAL_SPLIT_DEPTH).into_iter().map(|(p, f)| node.record(p, f)).collect()
}

fn final_zoom<E: Executor>(
    ctx: &Ctx<'_, E>,
    mut node: Node,
    base_half: &[f64],
    splits_left: usize,
) -> Vec<(Vec<f64>, Flags)> {
    let cfg = ctx.cfg;
    for _ in 0..FINAL_MAX_ITERS {
        if node.relative_half(&ctx.top_half) <= RESOLVED_REL {
            return vec![(node.center(), Flags::NONE)];
        }
        let tiny = node.relative_half(base_half) <= FINAL_TINY_REL;
        let lows = node.lows();
        let outcome = if exclusion(&lows, &node.eps).is_some() {
            Reduced::Excluded
        } else {
            reduction_method(&lows, &node.eps, cfg)
        };
        match outcome {
            Reduced::Excluded => {
                let flags = if tiny { Flags::NONE } else { Flags::SPURIOUS_CANDIDATE };
                return vec![(node.center(), flags)];
            }
            Reduced::Box(b) if b.volume_ratio() <= cfg.reduction_progress_factor => {
                node = node.zoom(&b, false, cfg);
            }
            _ => {
                if tiny {
                    return vec![(node.center(), Flags::NONE)];
                }
                if splits_left == 0 {
                    return vec![(node.center(), Flags::DEPTH_WARNING)];
                }
                let mut pts = Vec::new();
                for child in split(&node, false, &SolveConfig { transform_eps: 0.0, ..cfg.clone() }).0 {
                    pts.extend(final_zoom(ctx, child, base_half, splits_left - 1));
                }
                let real: Vec<_> =
                    pts.iter().filter(|(_, f)| !f.contains(Flags::SPURIOUS_CANDIDATE)).cloned().collect();
                let mut pts = if real.is_empty() { pts } else { real };
                if pts.is_empty() {
                    return vec![(node.center(), Flags::SPURIOUS_CANDIDATE)];
                }
                if pts.len() > 1 {
                    for p in &mut pts {
                        p.1.insert(Flags::POSSIBLE_DUPLICATE);
                    }
                }
                return pts;
            }
        }
    }
    vec![(node.center(), Flags::DEPTH_WARNING)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolveConfig {
        SolveConfig::default()
    }

    #[test]
    fn subdivide_examples() {
        let unit = IntervalBox::unit(1);
        let kids = subdivide(&unit, false, &cfg());
        assert_eq!(kids[0], IntervalBox::new(vec![-1.0], vec![0.0]).unwrap());
        assert_eq!(kids[1], IntervalBox::new(vec![0.0], vec![1.0]).unwrap());

        let kids = subdivide(&IntervalBox::unit(2), false, &cfg());
        let lows: Vec<Vec<f64>> = kids.iter().map(|k| k.lower().to_vec()).collect();
        assert_eq!(lows, vec![vec![-1.0, -1.0], vec![-1.0, 0.0], vec![0.0, -1.0], vec![0.0, 0.0]]);

        let kids = subdivide(&unit, true, &cfg());
        assert!((kids[0].upper()[0] - 0.0594).abs() < 1e-15);
    }

    #[test]
    fn final_root_identity() {
        let x = ChebPoly::basis(&[1, 0]);
        let y = ChebPoly::basis(&[0, 1]);
        let pts = solve_final_root(&[x, y], &IntervalBox::unit(2), &cfg()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, vec![0.0, 0.0]);
        assert!(pts[0].1.is_empty());
    }

    #[test]
    fn final_root_t2() {
        let t2 = ChebPoly::univariate(vec![0.0, 0.0, 1.0]).unwrap();
        let b = IntervalBox::new(vec![0.6], vec![0.8]).unwrap();
        let local = crate::transform::rescale(&t2, &b).unwrap();
        let pts = solve_final_root(&[local], &b, &cfg()).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].0[0] - core::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn final_root_spurious() {
        // x^2 + 0.01 has no real zero but is small near 0
        let p = ChebPoly::univariate(vec![0.51, 0.0, 0.5]).unwrap();
        let b = IntervalBox::new(vec![-0.2], vec![0.2]).unwrap();
        let local = crate::transform::rescale(&p, &b).unwrap();
        let pts = solve_final_root(&[local], &b, &cfg()).unwrap();
        assert!(pts.iter().all(|(_, f)| f.contains(Flags::SPURIOUS_CANDIDATE)));
    }

    #[test]
    fn solve_identity_system() {
        let x = ChebPoly::basis(&[1, 0]);
        let y = ChebPoly::basis(&[0, 1]);
        let out = cheb_solve(&[x, y], &[0.0, 0.0], &IntervalBox::unit(2), &cfg()).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].point, vec![0.0, 0.0]);
    }

    #[test]
    fn solve_t5() {
        let mut c = vec![0.0; 6];
        c[5] = 1.0;
        let p = ChebPoly::univariate(c).unwrap();
        let out = cheb_solve(&[p], &[0.0], &IntervalBox::unit(1), &cfg()).unwrap();
        let pts: Vec<f64> = out.records.iter().map(|r| r.point[0]).collect();
        assert_eq!(pts.len(), 5);
        for (k, x) in pts.iter().enumerate() {
            let exact = libm::cos((4 - k) as f64 * core::f64::consts::PI / 5.0 + core::f64::consts::PI / 10.0);
            assert!((x - exact).abs() < 1e-15, "{x} vs {exact}");
        }
    }

    #[test]
    fn merge_disjoint_unchanged() {
        let x = ChebPoly::univariate(vec![0.0, 1.0]).unwrap();
        let recs = vec![
            RootRecord {
                point: vec![-0.5],
                bounding_box: IntervalBox::new(vec![-0.6], vec![-0.4]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
            RootRecord {
                point: vec![0.5],
                bounding_box: IntervalBox::new(vec![0.4], vec![0.6]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
        ];
        let out = merge_intervals(recs.clone(), &[x], &[0.0], &IntervalBox::unit(1), &cfg()).unwrap();
        assert_eq!(out, recs);
    }

    #[test]
    fn merge_touching_resolves_to_one() {
        let x = ChebPoly::univariate(vec![0.0, 1.0]).unwrap();
        let recs = vec![
            RootRecord {
                point: vec![-1e-17],
                bounding_box: IntervalBox::new(vec![-0.1], vec![0.0]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
            RootRecord {
                point: vec![1e-17],
                bounding_box: IntervalBox::new(vec![0.0], vec![0.1]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
        ];
        let out = merge_intervals(recs, &[x], &[0.0], &IntervalBox::unit(1), &cfg()).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].bounding_box.contains(&[0.0]));
    }

    #[test]
    fn merge_hull_covering_box_collapses() {
        let x = ChebPoly::univariate(vec![0.0, 1.0]).unwrap();
        let recs = vec![
            RootRecord {
                point: vec![-0.5],
                bounding_box: IntervalBox::new(vec![-1.0], vec![0.0]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
            RootRecord {
                point: vec![0.5],
                bounding_box: IntervalBox::new(vec![0.0], vec![1.0]).unwrap(),
                flags: Flags::NONE,
                residuals: vec![],
            },
        ];
        let out = merge_intervals(recs, &[x], &[0.0], &IntervalBox::unit(1), &cfg()).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|r| r.bounding_box == IntervalBox::unit(1)));
        assert_eq!(out.iter().filter(|r| r.flags.contains(Flags::POSSIBLE_DUPLICATE)).count(), 1);
    }
}
