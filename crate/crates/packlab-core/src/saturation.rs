//! Resolution-bounded saturation search: insertion scanning, replace-k-by-
//! (k+1) counterexamples, the greedy connected-replacement iteration, and
//! packing loosening via self-nesting.
//!
//! Verdicts here are resolution-bounded by construction: a grid scan that
//! finds nothing certifies only "saturated up to pitch h". Feasible grid
//! candidates are refined to a canonical tight placement by sliding toward
//! tangency (first along -x, then -y), so runs are deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::body::{Body, Placement};
use crate::diffusion::{self, GridMeasure, Margin};
use crate::geometry::{self, IsometryGroup};
use crate::isometry::Isometry;
use crate::packing::{Packing, PackingError, Window};
use crate::vec2::{Point, Rect};

/// Search controls shared by the saturation operations.
#[derive(Clone, Copy, Debug)]
pub struct SearchParams {
    /// Position grid pitch.
    pub pitch: f64,
    /// Angle grid for non-disc bodies.
    pub angle_steps: u32,
    /// Isometries allowed for inserted copies.
    pub group: IsometryGroup,
    /// Cap on candidate feasibility evaluations before giving up.
    pub max_evaluations: u64,
}

impl SearchParams {
    pub fn with_pitch(pitch: f64) -> SearchParams {
        SearchParams {
            pitch,
            angle_steps: 64,
            group: IsometryGroup::All,
            max_evaluations: 200_000_000,
        }
    }
}

/// A replace-k-by-(k+1) move: `removed` leaves the packing, `inserted`
/// enters. `connected` records whether the union of all `2k + 1` bodies is
/// connected (the requirement of the connected replacement ordering).
#[derive(Clone, Debug, PartialEq)]
pub struct ReplacementMove {
    pub removed: Vec<Placement>,
    pub inserted: Vec<Placement>,
    pub connected: bool,
}

impl ReplacementMove {
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }
}

/// Result of a resolution-bounded saturation check.
#[derive(Clone, Debug)]
pub enum SaturationOutcome {
    /// No counterexample exists at this resolution (not a proof).
    SaturatedUpToResolution { pitch: f64 },
    /// A concrete improving move.
    Counterexample(ReplacementMove),
    /// The combinatorial budget ran out before the search finished.
    BudgetExhausted { evaluations: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MoveError {
    /// A removed placement is not present in the packing.
    RemovedNotFound(usize),
    /// Applying the move violates packing validity.
    Invalid(PackingError),
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::RemovedNotFound(i) => {
                write!(f, "removed placement {i} not found in packing")
            }
            MoveError::Invalid(e) => write!(f, "move yields an invalid packing: {e}"),
        }
    }
}

impl core::error::Error for MoveError {}

#[derive(Clone, Debug, PartialEq)]
pub enum LoosenError {
    /// No self-nesting witness found for the body at this expansion factor.
    NotSelfNesting,
    Invalid(PackingError),
}

impl fmt::Display for LoosenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoosenError::NotSelfNesting => {
                write!(f, "body has no self-nesting witness in the search family")
            }
            LoosenError::Invalid(e) => write!(f, "loosened packing invalid: {e}"),
        }
    }
}

impl core::error::Error for LoosenError {}

/// Does the placed body intersect the rectangle?
fn body_meets_rect(p: &Packing, pl: &Placement, region: &Rect) -> bool {
    match p.body().place(&pl.pose) {
        crate::body::PlacedBody::Disc { center, radius } => {
            region.dist_to_point(center) <= radius
        }
        crate::body::PlacedBody::Polygon { vertices } => {
            crate::convex::poly_signed_gap(&vertices, &region.corners()) <= 0.0
        }
    }
}

enum SearchResult {
    Found(Vec<Placement>),
    NotFound,
    Budget,
}

/// Candidate placements on the position/angle grid, lexicographic in
/// `(x, y, angle, reflection)`. Positions keep the whole body inside the
/// region (by circumradius, exact for discs).
struct CandidateGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    angles: Vec<f64>,
    reflections: Vec<bool>,
}

impl CandidateGrid {
    fn new(p: &Packing, region: &Rect, params: &SearchParams) -> CandidateGrid {
        let rr = p.body().circumradius();
        let coords = |lo: f64, hi: f64| {
            let mut out = Vec::new();
            let mut x = lo + rr;
            while x <= hi - rr + 1e-12 {
                out.push(x);
                x += params.pitch;
            }
            out
        };
        let angles = if p.body().as_disc().is_some() {
            vec![0.0]
        } else {
            (0..params.angle_steps)
                .map(|i| i as f64 * core::f64::consts::TAU / params.angle_steps as f64)
                .collect()
        };
        let reflections = if p.body().as_disc().is_some() || params.group == IsometryGroup::Translations
        {
            vec![false]
        } else {
            vec![false, true]
        };
        CandidateGrid {
            xs: coords(region.x0, region.x1),
            ys: coords(region.y0, region.y1),
            angles,
            reflections,
        }
    }

    fn for_each<F: FnMut(Placement) -> bool>(&self, mut visit: F) -> bool {
        for &x in &self.xs {
            for &y in &self.ys {
                for &angle in &self.angles {
                    for &reflected in &self.reflections {
                        let pl = Placement::new(Isometry::new(angle, Point::new(x, y), reflected));
                        if visit(pl) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Slide a feasible placement along `dir` (a unit vector) until it touches
/// an obstacle, a box wall, or the region bound. Moving by the current
/// minimum gap can never create an overlap (gaps are 1-Lipschitz along a
/// translation), so the greedy advance converges to the contact.
fn slide_to_contact(
    p: &Packing,
    region: &Rect,
    start: &Placement,
    dir: Point,
) -> Placement {
    let rr = p.body().circumradius();
    let pos = start.position();
    // directional caps from the shrunk region and, over a box, the walls
    let mut cap = f64::INFINITY;
    if dir.x < -0.5 {
        cap = pos.x - (region.x0 + rr);
    } else if dir.x > 0.5 {
        cap = (region.x1 - rr) - pos.x;
    } else if dir.y < -0.5 {
        cap = pos.y - (region.y0 + rr);
    } else if dir.y > 0.5 {
        cap = (region.y1 - rr) - pos.y;
    }
    if let Window::Box { width, height } = p.window() {
        // clearance of the placed body to the wall faced by `dir`
        let placed = p.body().place(&start.pose);
        let wall = match placed {
            crate::body::PlacedBody::Disc { center, radius } => {
                if dir.x < -0.5 {
                    center.x - radius + 0.5 * width
                } else if dir.x > 0.5 {
                    0.5 * width - (center.x + radius)
                } else if dir.y < -0.5 {
                    center.y - radius + 0.5 * height
                } else {
                    0.5 * height - (center.y + radius)
                }
            }
            crate::body::PlacedBody::Polygon { vertices } => {
                let mut w = f64::INFINITY;
                for v in &vertices {
                    let c = if dir.x < -0.5 {
                        v.x + 0.5 * width
                    } else if dir.x > 0.5 {
                        0.5 * width - v.x
                    } else if dir.y < -0.5 {
                        v.y + 0.5 * height
                    } else {
                        0.5 * height - v.y
                    };
                    w = w.min(c);
                }
                w
            }
        };
        cap = cap.min(wall);
    }
    let cap = cap.max(0.0);
    let mut t = 0.0f64;
    for _ in 0..200 {
        let here = Placement {
            pose: start.pose.translated(dir * t),
        };
        let mut gap = f64::INFINITY;
        for pl in p.placements() {
            gap = gap.min(p.signed_gap_between(&here, pl));
        }
        if p.window().is_torus() {
            gap = gap.min(p.signed_gap_between(&here, &here));
        }
        let advance = gap.min(cap - t);
        if !(advance > 1e-12) {
            break;
        }
        t += advance;
    }
    Placement {
        pose: start.pose.translated(dir * t),
    }
}

fn refine_tight(p: &Packing, region: &Rect, cand: &Placement) -> Placement {
    let slid = slide_to_contact(p, region, cand, Point::new(-1.0, 0.0));
    slide_to_contact(p, region, &slid, Point::new(0.0, -1.0))
}

/// Backtracking search for `need` simultaneous insertions into `p`, all
/// inside `region`. `accept` sees every complete candidate set and may veto
/// it (used for connectivity filtering).
fn insert_many(
    p: &Packing,
    need: usize,
    region: &Rect,
    params: &SearchParams,
    evals: &mut u64,
    accept: &mut dyn FnMut(&[Placement]) -> bool,
) -> SearchResult {
    if need == 0 {
        return SearchResult::Found(Vec::new());
    }
    let grid = CandidateGrid::new(p, region, params);
    let mut result = SearchResult::NotFound;
    grid.for_each(|cand| {
        *evals += 1;
        if *evals > params.max_evaluations {
            result = SearchResult::Budget;
            return true;
        }
        if !p.fits(&cand, &[]) {
            return false;
        }
        let tight = refine_tight(p, region, &cand);
        let with = match p.with_inserted(tight) {
            Ok(w) => w,
            Err(_) => return false,
        };
        let mut sub_accept = |rest: &[Placement]| {
            let mut all = Vec::with_capacity(rest.len() + 1);
            all.push(tight);
            all.extend_from_slice(rest);
            accept(&all)
        };
        match insert_many(&with, need - 1, region, params, evals, &mut sub_accept) {
            SearchResult::Found(mut rest) => {
                rest.insert(0, tight);
                result = SearchResult::Found(rest);
                true
            }
            SearchResult::Budget => {
                result = SearchResult::Budget;
                true
            }
            SearchResult::NotFound => false,
        }
    });
    if let SearchResult::Found(ref pls) = result {
        debug_assert_eq!(pls.len(), need);
    }
    result
}

/// Scan for a single feasible insertion inside `region` at the grid pitch,
/// refined to a tight placement. `None` means no insertion exists at this
/// resolution, not a proof of saturation.
pub fn find_insertion(p: &Packing, region: &Rect, params: &SearchParams) -> Option<Placement> {
    let mut evals = 0u64;
    match insert_many(p, 1, region, params, &mut evals, &mut |_| true) {
        SearchResult::Found(v) => Some(v[0]),
        _ => None,
    }
}

/// Search for a replace-k-by-(k+1) counterexample with `k < n`: subsets of
/// placements meeting the region are removed (cheapest first: increasing k,
/// then increasing distance from the region center) and `k + 1` insertions
/// are sought by backtracking.
pub fn check_n_saturated(
    p: &Packing,
    n: usize,
    region: &Rect,
    params: &SearchParams,
) -> SaturationOutcome {
    debug_assert!(n >= 1);
    let mut evals = 0u64;
    match find_counterexample(p, n, region, params, &mut evals, false) {
        Ok(Some(mv)) => SaturationOutcome::Counterexample(mv),
        Ok(None) => SaturationOutcome::SaturatedUpToResolution {
            pitch: params.pitch,
        },
        Err(()) => SaturationOutcome::BudgetExhausted { evaluations: evals },
    }
}

/// Core move search. `Err(())` signals budget exhaustion.
fn find_counterexample(
    p: &Packing,
    n: usize,
    region: &Rect,
    params: &SearchParams,
    evals: &mut u64,
    connected_only: bool,
) -> Result<Option<ReplacementMove>, ()> {
    let meeting: Vec<usize> = (0..p.len())
        .filter(|&i| body_meets_rect(p, &p.placements()[i], region))
        .collect();
    let center = region.center();
    for k in 0..n {
        if k > meeting.len() {
            break;
        }
        let mut subsets = combinations(&meeting, k);
        subsets.sort_by(|a, b| {
            let da: f64 = a
                .iter()
                .map(|&i| p.placements()[i].position().dist(center))
                .sum();
            let db: f64 = b
                .iter()
                .map(|&i| p.placements()[i].position().dist(center))
                .sum();
            da.partial_cmp(&db).unwrap()
        });
        for subset in subsets {
            let removed: Vec<Placement> =
                subset.iter().map(|&i| p.placements()[i]).collect();
            let rest = p.without(&subset);
            let mut accept = |inserted: &[Placement]| {
                if !connected_only {
                    return true;
                }
                let mut union: Vec<Placement> = removed.clone();
                union.extend_from_slice(inserted);
                p.connected_union(&union)
            };
            match insert_many(&rest, k + 1, region, params, evals, &mut accept) {
                SearchResult::Found(inserted) => {
                    let mut union: Vec<Placement> = removed.clone();
                    union.extend_from_slice(&inserted);
                    let connected = p.connected_union(&union);
                    return Ok(Some(ReplacementMove {
                        removed,
                        inserted,
                        connected,
                    }));
                }
                SearchResult::Budget => return Err(()),
                SearchResult::NotFound => {}
            }
        }
    }
    Ok(None)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Apply a move: delete the removed placements (matched by value) and add
/// the inserted ones. The packing invariant is re-checked in full.
pub fn apply_replacement(p: &Packing, mv: &ReplacementMove) -> Result<Packing, MoveError> {
    let mut indices = Vec::with_capacity(mv.removed.len());
    for (k, r) in mv.removed.iter().enumerate() {
        let found = p
            .placements()
            .iter()
            .enumerate()
            .find(|(i, pl)| !indices.contains(i) && *pl == r)
            .map(|(i, _)| i);
        match found {
            Some(i) => indices.push(i),
            None => return Err(MoveError::RemovedNotFound(k)),
        }
    }
    let mut next = p.without(&indices);
    for ins in &mv.inserted {
        next = next.with_inserted(*ins).map_err(MoveError::Invalid)?;
    }
    next.validate().map_err(MoveError::Invalid)?;
    Ok(next)
}

/// Why a greedy iteration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// No connected replacement found at this resolution.
    NoMoveFound,
    /// The move budget was reached.
    MoveBudgetReached,
    /// The per-search evaluation budget ran out.
    SearchBudgetExhausted,
}

/// Trace of a greedy connected-replacement run.
#[derive(Clone, Debug)]
pub struct IterationTrace {
    pub initial: Packing,
    pub moves: Vec<ReplacementMove>,
    /// Field-mass increase over the region per move, for moves meeting the
    /// region (in body-diameter-normalized units; see `normalization_scale`).
    pub margins: Vec<Option<Margin>>,
    pub terminal: Packing,
    pub region: Rect,
    /// Geometry was multiplied by this factor (1 / body diameter) before
    /// evaluating margins against the diameter-normalized measure.
    pub normalization_scale: f64,
    pub stop: StopReason,
}

/// Greedy connected-replacement iteration: repeatedly find a replace-k-by-
/// (k+1) move with `k < n` whose `2k + 1` bodies form a connected union,
/// apply it, and record the diffused-mass increase over `region` for moves
/// that meet the region. `margin_mu` must be a measure over diameter-1
/// units (use [`diffusion::lemma_mu`] with the matching `n`).
pub fn saturation_iterate(
    p: &Packing,
    n: usize,
    region: &Rect,
    params: &SearchParams,
    move_budget: usize,
    margin_mu: &GridMeasure,
) -> IterationTrace {
    let scale = 1.0 / p.body().diameter();
    let mut current = p.clone();
    let mut moves = Vec::new();
    let mut margins = Vec::new();
    let mut stop = StopReason::MoveBudgetReached;
    while moves.len() < move_budget {
        let mut evals = 0u64;
        let mv = match find_counterexample(&current, n, region, params, &mut evals, true) {
            Ok(Some(mv)) => mv,
            Ok(None) => {
                stop = StopReason::NoMoveFound;
                break;
            }
            Err(()) => {
                stop = StopReason::SearchBudgetExhausted;
                break;
            }
        };
        let next = apply_replacement(&current, &mv).expect("searched move must apply");
        let meets = mv
            .removed
            .iter()
            .chain(mv.inserted.iter())
            .any(|pl| body_meets_rect(&current, pl, region));
        let margin = if meets {
            let before = scaled_packing(&current, scale);
            let after = scaled_packing(&next, scale);
            let scaled_region = Rect::new(
                region.x0 * scale,
                region.y0 * scale,
                region.x1 * scale,
                region.y1 * scale,
            );
            diffusion::replacement_margin(&before, &after, margin_mu, scaled_region).ok()
        } else {
            None
        };
        moves.push(mv);
        margins.push(margin);
        current = next;
    }
    IterationTrace {
        initial: p.clone(),
        moves,
        margins,
        terminal: current,
        region: *region,
        normalization_scale: scale,
        stop,
    }
}

/// Uniformly scale a packing's geometry (body, window, positions).
pub(crate) fn scaled_packing(p: &Packing, factor: f64) -> Packing {
    let body = p.body().scaled(factor);
    let window = p.window().scaled(factor);
    let placements: Vec<Placement> = p
        .placements()
        .iter()
        .map(|pl| {
            let mut out = *pl;
            out.pose.translation = pl.pose.translation * factor;
            out
        })
        .collect();
    Packing::new(body, window, placements).expect("uniform scaling preserves validity")
}

/// Loosen a packing by homothety: positions and window expand by
/// `1 + gamma`, and each expanded copy is replaced by an original-size copy
/// inside it via the body's self-nesting witness. Returns the loosened
/// packing and `alpha` such that all pairwise gaps are at least `2 alpha`
/// (`None` when there are no pairs to measure).
pub fn loosen(p: &Packing, gamma: f64) -> Result<(Packing, Option<f64>), LoosenError> {
    if !(gamma > 0.0) {
        return Err(LoosenError::Invalid(PackingError::BadParameter(
            "gamma must be positive",
        )));
    }
    let witness =
        geometry::self_nests(p.body(), gamma, IsometryGroup::All).ok_or(LoosenError::NotSelfNesting)?;
    let window = p.window().scaled(1.0 + gamma);
    let placements: Vec<Placement> = p
        .placements()
        .iter()
        .map(|pl| {
            let mut expanded = pl.pose;
            expanded.translation = expanded.translation * (1.0 + gamma);
            Placement::new(expanded.compose(&witness))
        })
        .collect();
    let loosened =
        Packing::new(p.body().clone(), window, placements).map_err(LoosenError::Invalid)?;
    let mut min_gap = f64::INFINITY;
    let mut pairs = false;
    let pls = loosened.placements();
    for i in 0..pls.len() {
        for j in (i + 1)..pls.len() {
            pairs = true;
            min_gap = min_gap.min(loosened.signed_gap_between(&pls[i], &pls[j]));
        }
        if loosened.window().is_torus() && !pls.is_empty() {
            pairs = true;
            min_gap = min_gap.min(loosened.signed_gap_between(&pls[i], &pls[i]));
        }
    }
    let alpha = if pairs { Some(0.5 * min_gap) } else { None };
    Ok((loosened, alpha))
}

/// The density-versus-expansion budget behind the loosening argument:
/// expanding by `1 + gamma` loses `2 gamma delta` of density (in the plane),
/// which re-saturation at rate `epsilon` recovers when
/// `2 gamma delta < epsilon vol(K) / vol(B(2r))`.
#[derive(Clone, Copy, Debug)]
pub struct LoosenBudget {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

pub fn loosen_budget_report(gamma: f64, epsilon: f64, r: f64, body: &Body, delta: f64) -> LoosenBudget {
    let lhs = 2.0 * gamma * delta;
    let rhs = epsilon * body.area() / (core::f64::consts::PI * (2.0 * r) * (2.0 * r));
    LoosenBudget {
        lhs,
        rhs,
        satisfied: lhs < rhs,
    }
}
