//! Numeric braid extraction: follow the roots of a polynomial family along a
//! closed parameter loop and read off the braid of the root motion.
//!
//! Crossings are recorded on the real part of the x-plane rotated by a fixed
//! generic angle theta. A crossing of the strands in height positions
//! `p, p+1` is positive when the left strand passes below (smaller rotated
//! imaginary part); with that convention the loop `t = e^{2 pi i s}` of
//! `x^2 - t` tracks to the single positive letter `[1]`.

use crate::braid::BraidWord;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::family::PolynomialFamily;
use crate::hurwitz::HurwitzTuple;
use crate::perm::Permutation;
use crate::poly::{min_pairwise_distance, roots, roots_from, RootConfig};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One piece of a parameter loop.
#[derive(Clone, Debug)]
pub enum Segment {
    /// Straight segment between two parameter points.
    Line { from: Vec<Complex64>, to: Vec<Complex64> },
    /// Circular arc of one coordinate, the others held at `base`.
    /// Angles in radians; decreasing angles give a clockwise arc.
    Arc {
        base: Vec<Complex64>,
        coord: usize,
        center: Complex64,
        radius: f64,
        from_angle: f64,
        to_angle: f64,
    },
    /// The degeneration curve `(u, v) = ((1 - l)^exponent, l * rho)` of the
    /// two-parameter unfolding families, traversed over `l` in
    /// `[from_lambda, to_lambda]`.
    PowerCurve { rho: Complex64, exponent: f64, from_lambda: f64, to_lambda: f64 },
}

impl Segment {
    pub fn eval(&self, t: f64) -> Vec<Complex64> {
        match self {
            Segment::Line { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| a + (b - a) * c(t, 0.0))
                .collect(),
            Segment::Arc { base, coord, center, radius, from_angle, to_angle } => {
                let mut p = base.clone();
                let angle = from_angle + (to_angle - from_angle) * t;
                p[*coord] = center + Complex64::from_polar(*radius, angle);
                p
            }
            Segment::PowerCurve { rho, exponent, from_lambda, to_lambda } => {
                let l = from_lambda + (to_lambda - from_lambda) * t;
                vec![c((1.0 - l).max(0.0).powf(*exponent), 0.0), rho * c(l, 0.0)]
            }
        }
    }

    pub fn start(&self) -> Vec<Complex64> {
        self.eval(0.0)
    }

    pub fn end(&self) -> Vec<Complex64> {
        self.eval(1.0)
    }

    fn is_arc(&self) -> bool {
        matches!(self, Segment::Arc { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pt = |p: &Vec<Complex64>| -> Vec<Vec<f64>> { p.iter().map(|z| vec![z.re, z.im]).collect() };
        match self {
            Segment::Line { from, to } => serde_json::json!({
                "kind": "line", "from": pt(from), "to": pt(to),
            }),
            Segment::Arc { base, coord, center, radius, from_angle, to_angle } => serde_json::json!({
                "kind": "arc", "base": pt(base), "coord": coord,
                "center": [center.re, center.im], "radius": radius,
                "from_angle": from_angle, "to_angle": to_angle,
            }),
            Segment::PowerCurve { rho, exponent, from_lambda, to_lambda } => serde_json::json!({
                "kind": "power_curve", "rho": [rho.re, rho.im], "exponent": exponent,
                "from_lambda": from_lambda, "to_lambda": to_lambda,
            }),
        }
    }
}

/// A piecewise-smooth closed path in parameter space.
#[derive(Clone, Debug)]
pub struct LoopPath {
    pub label: String,
    pub arity: usize,
    pub segments: Vec<Segment>,
}

impl LoopPath {
    pub fn new(label: impl Into<String>, arity: usize, segments: Vec<Segment>) -> Self {
        LoopPath { label: label.into(), arity, segments }
    }

    pub fn start(&self) -> Vec<Complex64> {
        self.segments[0].start()
    }

    /// Maximum endpoint gap over the segment chain, including closure.
    pub fn closure_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for w in self.segments.windows(2) {
            worst = worst.max(point_distance(&w[0].end(), &w[1].start()));
        }
        worst.max(point_distance(
            &self.segments.last().unwrap().end(),
            &self.segments[0].start(),
        ))
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> LoopPath {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| match s {
                Segment::Line { from, to } => Segment::Line { from: to.clone(), to: from.clone() },
                Segment::Arc { base, coord, center, radius, from_angle, to_angle } => Segment::Arc {
                    base: base.clone(),
                    coord: *coord,
                    center: *center,
                    radius: *radius,
                    from_angle: *to_angle,
                    to_angle: *from_angle,
                },
                Segment::PowerCurve { rho, exponent, from_lambda, to_lambda } => {
                    Segment::PowerCurve {
                        rho: *rho,
                        exponent: *exponent,
                        from_lambda: *to_lambda,
                        to_lambda: *from_lambda,
                    }
                }
            })
            .collect();
        LoopPath::new(format!("{}@rev", self.label), self.arity, segments)
    }

    /// Concatenation with another loop sharing the same base point.
    pub fn then(&self, other: &LoopPath) -> LoopPath {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        LoopPath::new(format!("{}*{}", self.label, other.label), self.arity, segments)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "arity": self.arity,
            "segments": self.segments.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn point_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Tracking tolerances and conventions.
#[derive(Clone, Copy, Debug)]
pub struct TrackConfig {
    pub root_tol: f64,
    /// Hard lower bound on root separation; going below it means the loop
    /// hit the degeneracy set.
    pub collision_threshold: f64,
    /// Rotation of the x-plane before reading real-part crossings.
    pub theta: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// An arc segment is resolved by at least this many steps.
    pub circle_min_steps: usize,
}

impl Default for TrackConfig {
    // the default rotation is a configured value, not an attempt at 1/pi
    #[allow(clippy::approx_constant)]
    fn default() -> Self {
        TrackConfig {
            root_tol: 1e-10,
            collision_threshold: 1e-4,
            theta: 0.3183,
            max_step: 0.02,
            min_step: 1e-10,
            circle_min_steps: 64,
        }
    }
}

impl TrackConfig {
    pub fn from_run(cfg: &RunConfig) -> Self {
        TrackConfig {
            root_tol: cfg.root_tol.min(1e-9),
            collision_threshold: cfg.collision_threshold,
            theta: cfg.rotation_theta,
            ..TrackConfig::default()
        }
    }
}

/// Braid extracted from root trajectories, with diagnostics.
#[derive(Clone, Debug)]
pub struct TrackedBraid {
    pub braid: BraidWord,
    /// Fiber at the base point, ordered by rotated real part (the strand
    /// order the braid letters refer to).
    pub basepoint_roots: Vec<Complex64>,
    pub min_separation: f64,
    pub steps: usize,
    pub max_residual: f64,
    /// Largest distance between an end root and the start root at the
    /// position predicted by the braid permutation.
    pub closure_error: f64,
}

impl TrackedBraid {
    /// `{"strands": m, "word": [...], "min_sep": ..., "steps": ...}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "strands": self.braid.strands(),
            "word": self.braid.letters(),
            "min_sep": self.min_separation,
            "steps": self.steps,
        })
    }

    /// True when the loop closed up on its starting fiber and the braid
    /// permutation matches the observed root matching.
    pub fn closed_consistent(&self, tol: f64) -> bool {
        self.closure_error < tol
    }

    /// Ranks of the basepoint roots by argument in (0, 2 pi]: the image of
    /// rank `a` is the height-order strand holding that root.
    pub fn arg_order(&self) -> Permutation {
        let mut idx: Vec<usize> = (0..self.basepoint_roots.len()).collect();
        idx.sort_by(|&a, &b| {
            arg_key(self.basepoint_roots[a]).total_cmp(&arg_key(self.basepoint_roots[b]))
        });
        Permutation::from_images(&idx.iter().map(|&s| s + 1).collect::<Vec<_>>())
            .expect("ranking is a bijection")
    }
}

/// Argument normalized into (0, 2 pi], so the positive real axis sorts last.
pub fn arg_key(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= 1e-12 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Trajectory samples: global path parameter and the fiber per strand slot.
pub type TraceRows = Vec<(f64, Vec<Complex64>)>;

/// Tracks the roots of `family` along `path` and extracts the braid.
pub fn track_loop(
    family: &PolynomialFamily,
    path: &LoopPath,
    cfg: &TrackConfig,
) -> Result<TrackedBraid> {
    Ok(track_loop_impl(family, path, cfg, false)?.0)
}

/// As `track_loop`, also recording the accepted trajectory samples
/// (for CSV/SVG dumps).
pub fn track_loop_traced(
    family: &PolynomialFamily,
    path: &LoopPath,
    cfg: &TrackConfig,
) -> Result<(TrackedBraid, TraceRows)> {
    track_loop_impl(family, path, cfg, true)
}

fn track_loop_impl(
    family: &PolynomialFamily,
    path: &LoopPath,
    cfg: &TrackConfig,
    keep_trace: bool,
) -> Result<(TrackedBraid, TraceRows)> {
    assert_eq!(path.arity, family.arity, "loop and family arity must agree");
    debug_assert!(path.closure_defect() < 1e-9, "loop must be closed");

    let root_cfg = RootConfig {
        tol: cfg.root_tol,
        multiplicity_threshold: cfg.collision_threshold,
        max_iterations: 400,
    };
    let rot = Complex64::from_polar(1.0, cfg.theta);

    let p0 = family.at(&path.start());
    let m = p0.degree().unwrap_or(0);
    if m != family.degree || m == 0 {
        return Err(Error::InvalidSpec {
            what: "family",
            text: format!(
                "degree {} at base point, declared {} (degenerate base point?)",
                m, family.degree
            ),
        });
    }
    let base = roots(&p0, &root_cfg)?;
    let mut max_residual = base.max_residual;

    // slot i = strand i+1: roots sorted by rotated real part, ties broken by
    // rotated imaginary part
    let mut slots: Vec<Complex64> = base.values;
    slots.sort_by(|a, b| {
        let (za, zb) = (a * rot, b * rot);
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    let basepoint_roots = slots.clone();

    let mut min_separation = min_pairwise_distance(&slots).unwrap_or(f64::INFINITY);
    if min_separation < cfg.collision_threshold {
        return Err(Error::RootCollision { s: 0.0, min_separation });
    }

    // order[p] = slot currently at height position p
    let mut order: Vec<usize> = (0..m).collect();
    let mut letters: Vec<i32> = Vec::new();
    let mut steps = 0usize;
    let n_seg = path.segments.len() as f64;
    let mut trace: TraceRows = Vec::new();
    if keep_trace {
        trace.push((0.0, slots.clone()));
    }

    for (seg_idx, seg) in path.segments.iter().enumerate() {
        let step_cap = if seg.is_arc() {
            cfg.max_step.min(1.0 / cfg.circle_min_steps as f64)
        } else {
            cfg.max_step
        };
        let mut t = 0.0f64;
        let mut h = step_cap;
        let mut accepts_in_a_row = 0usize;
        while t < 1.0 {
            let t_next = (t + h).min(1.0);
            let s_global = (seg_idx as f64 + t_next) / n_seg;
            let p = family.at(&seg.eval(t_next));
            if p.degree() != Some(m) {
                return Err(Error::RootCollision { s: s_global, min_separation: 0.0 });
            }
            let accepted = match roots_from(&p, &slots, &root_cfg) {
                Err(Error::RootsDidNotConverge { .. }) => None,
                Err(e) => return Err(e),
                Ok(r) => {
                    max_residual = max_residual.max(r.max_residual);
                    check_step(&slots, &r.values, &order, rot, cfg, s_global)?
                }
            };
            match accepted {
                None => {
                    h *= 0.5;
                    accepts_in_a_row = 0;
                    if h < cfg.min_step {
                        return Err(Error::MatchingAmbiguous { s: s_global });
                    }
                }
                Some(step) => {
                    let sep = min_pairwise_distance(&step.new_slots).unwrap_or(f64::INFINITY);
                    min_separation = min_separation.min(sep);
                    slots = step.new_slots;
                    order = step.new_order;
                    letters.extend_from_slice(&step.letters);
                    t = t_next;
                    steps += 1;
                    if steps > 4_000_000 {
                        return Err(Error::MatchingAmbiguous { s: s_global });
                    }
                    accepts_in_a_row += 1;
                    if accepts_in_a_row >= 3 {
                        h = (h * 1.4).min(step_cap);
                        accepts_in_a_row = 0;
                    }
                    if keep_trace {
                        trace.push((s_global, slots.clone()));
                    }
                }
            }
        }
    }

    let braid = BraidWord::new(m, letters)?;
    let perm = braid.permutation_image();
    // closed loop: the end fiber equals the start fiber, so the slot that
    // started at position i must now sit on the start value at position
    // perm(i)
    let mut closure_error = 0.0f64;
    for i in 0..m {
        let target = basepoint_roots[perm.apply(i + 1) - 1];
        closure_error = closure_error.max((slots[i] - target).norm());
    }

    Ok((
        TrackedBraid {
            braid,
            basepoint_roots,
            min_separation,
            steps,
            max_residual,
            closure_error,
        },
        trace,
    ))
}

struct StepResult {
    new_slots: Vec<Complex64>,
    new_order: Vec<usize>,
    letters: Vec<i32>,
}

/// Validates one continuation step: unambiguous matching, collision-free,
/// and order change decomposable into disjoint adjacent swaps. Returns
/// `None` to request a smaller step.
fn check_step(
    slots: &[Complex64],
    new_roots: &[Complex64],
    order: &[usize],
    rot: Complex64,
    cfg: &TrackConfig,
    s_global: f64,
) -> Result<Option<StepResult>> {
    let m = slots.len();
    let old_sep = min_pairwise_distance(slots).unwrap_or(f64::INFINITY);

    // nearest-neighbour matching of slots onto the new fiber
    let mut matched = vec![usize::MAX; m];
    let mut used = vec![false; m];
    for i in 0..m {
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        let mut best = 0usize;
        for (j, z) in new_roots.iter().enumerate() {
            let d = (slots[i] - z).norm();
            if d < d1 {
                d2 = d1;
                d1 = d;
                best = j;
            } else if d < d2 {
                d2 = d;
            }
        }
        // movement must stay small against the configuration scale and the
        // runner-up must be clearly worse
        if d1 > 0.35 * old_sep || d2 <= 2.0 * d1 || used[best] {
            return Ok(None);
        }
        used[best] = true;
        matched[i] = best;
    }
    let new_slots: Vec<Complex64> = matched.iter().map(|&j| new_roots[j]).collect();

    let sep = min_pairwise_distance(&new_slots).unwrap_or(f64::INFINITY);
    if sep < cfg.collision_threshold {
        return Err(Error::RootCollision { s: s_global, min_separation: sep });
    }

    let mut new_order: Vec<usize> = (0..m).collect();
    new_order.sort_by(|&a, &b| {
        let (za, zb) = (new_slots[a] * rot, new_slots[b] * rot);
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });

    // position change per slot must be a product of disjoint adjacent swaps
    let mut old_pos = vec![0usize; m];
    for (p, &slot) in order.iter().enumerate() {
        old_pos[slot] = p;
    }
    let mut letters = Vec::new();
    let mut p = 0usize;
    while p < m {
        let slot_here = new_order[p];
        if old_pos[slot_here] == p {
            p += 1;
            continue;
        }
        if p + 1 < m {
            let slot_next = new_order[p + 1];
            if old_pos[slot_here] == p + 1 && old_pos[slot_next] == p {
                // crossing of height positions p+1, p+2 (1-based letter p+1)
                let a = slots[slot_next] * rot; // was at position p
                let b = slots[slot_here] * rot; // was at position p+1
                let a_new = new_slots[slot_next] * rot;
                let b_new = new_slots[slot_here] * rot;
                let before = a.im - b.im;
                let after = a_new.im - b_new.im;
                if before == 0.0 || after == 0.0 || before.signum() != after.signum() {
                    // vertical order unclear at the crossing; refine
                    return Ok(None);
                }
                let letter = (p + 1) as i32;
                letters.push(if before < 0.0 { letter } else { -letter });
                p += 2;
                continue;
            }
        }
        // a slot moved further than one position in a single step
        return Ok(None);
    }

    Ok(Some(StepResult { new_slots, new_order, letters }))
}

/// Configuration for the geometric bases.
#[derive(Clone, Copy, Debug)]
pub struct BasisConfig {
    /// Distance at which radial excursions stop short of a puncture.
    pub excursion_radius: f64,
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig { excursion_radius: 0.05 }
    }
}

impl BasisConfig {
    pub fn from_run(cfg: &RunConfig) -> Self {
        BasisConfig { excursion_radius: cfg.excursion_radius }
    }
}

/// Geometric basis for the two-parameter unfolding family, based at
/// `(u, v) = (1, 0)`: one radial loop in the v-line toward each of the n
/// punctures `v^n = 1`, then the loop along the degeneration curve around
/// `u = 0`. All circles run counterclockwise.
pub fn geometric_basis_bp(n: usize, k: usize, cfg: &BasisConfig) -> Vec<LoopPath> {
    assert!(n >= 1 && k >= 1);
    let _ = k; // the loop shapes depend only on n
    let r = cfg.excursion_radius;
    let base = vec![c(1.0, 0.0), c(0.0, 0.0)];
    let mut loops = Vec::with_capacity(n + 1);
    for i in 1..=n {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / n as f64);
        let approach = zeta * c(1.0 - r, 0.0);
        let start_angle = zeta.arg() + PI;
        let tip = vec![c(1.0, 0.0), approach];
        loops.push(LoopPath::new(
            format!("radial:{i}"),
            2,
            vec![
                Segment::Line { from: base.clone(), to: tip.clone() },
                Segment::Arc {
                    base: tip.clone(),
                    coord: 1,
                    center: zeta,
                    radius: r,
                    from_angle: start_angle,
                    to_angle: start_angle + 2.0 * PI,
                },
                Segment::Line { from: tip, to: base.clone() },
            ],
        ));
    }
    // rho^2 = exp(2 pi i / n) with positive imaginary part for n >= 2; the
    // n = 1 limit takes rho = -1, which keeps the curve off the degeneracy
    // set for every lambda
    let rho = Complex64::from_polar(1.0, PI / n as f64);
    let exponent = n as f64 / (n + 1) as f64;
    let lam_tip = 1.0 - r;
    let u_tip = r.powf(exponent);
    let v_tip = rho * c(lam_tip, 0.0);
    loops.push(LoopPath::new(
        "u-loop",
        2,
        vec![
            Segment::PowerCurve { rho, exponent, from_lambda: 0.0, to_lambda: lam_tip },
            Segment::Arc {
                base: vec![c(u_tip, 0.0), v_tip],
                coord: 0,
                center: c(0.0, 0.0),
                radius: u_tip,
                from_angle: 0.0,
                to_angle: 2.0 * PI,
            },
            Segment::PowerCurve { rho, exponent, from_lambda: lam_tip, to_lambda: 0.0 },
        ],
    ));
    loops
}

/// Geometric basis for the plane-curve family, based at `u = 0`: one lasso
/// per root of `u^d = 1`, ordered counterclockwise by target argument.
/// The small circles run clockwise, which orients the tracked braids as
/// positive words.
pub fn geometric_basis_plane(d: usize, cfg: &BasisConfig) -> Vec<LoopPath> {
    assert!(d >= 2);
    let r = cfg.excursion_radius;
    let base = vec![c(0.0, 0.0)];
    (1..=d)
        .map(|j| {
            let xi = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64);
            let approach = xi * c(1.0 - r, 0.0);
            let tip = vec![approach];
            let start_angle = xi.arg() + PI;
            LoopPath::new(
                format!("lasso:{j}"),
                1,
                vec![
                    Segment::Line { from: base.clone(), to: tip.clone() },
                    Segment::Arc {
                        base: tip.clone(),
                        coord: 0,
                        center: xi,
                        radius: r,
                        from_angle: start_angle,
                        to_angle: start_angle - 2.0 * PI,
                    },
                    Segment::Line { from: tip, to: base.clone() },
                ],
            )
        })
        .collect()
}

/// Which geometric basis the covering data is read along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoveringBasis {
    /// Basepoint far above the configuration in the rotated frame, L-shaped
    /// paths ordered by rotated real part. This is the side compatible with
    /// the tracker's crossing sign: braids tracked from closed loops
    /// stabilize the resulting tuple.
    Tent,
    /// Basepoint at the origin, radial paths ordered by increasing argument
    /// ending at the positive real axis.
    Spider,
}

/// Branching data of a covering: one permutation per branch point, read
/// along a geometric basis of lassos from a common base point.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub tuple: HurwitzTuple,
    /// Branch points in the order the tuple entries refer to.
    pub branch_points: Vec<Complex64>,
    pub basis: CoveringBasis,
    pub base_x: Complex64,
}

/// Computes the covering tuple of a one-parameter fiber family (parameter =
/// x, value = the fiber polynomial in y) branched over `branch_points`.
pub fn covering_tuple(
    fiber: &PolynomialFamily,
    branch_points: &[Complex64],
    basis: CoveringBasis,
    cfg: &TrackConfig,
) -> Result<CoveringData> {
    assert_eq!(fiber.arity, 1);
    let rot = Complex64::from_polar(1.0, cfg.theta);
    let mut pts = branch_points.to_vec();
    match basis {
        CoveringBasis::Tent => pts.sort_by(|a, b| {
            let (za, zb) = (a * rot, b * rot);
            za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
        }),
        CoveringBasis::Spider => pts.sort_by(|a, b| arg_key(*a).total_cmp(&arg_key(*b))),
    }
    let gap = min_pairwise_distance(&pts).unwrap_or(1.0);
    let r_cov = match basis {
        // the circles must also stay clear of the other approach verticals,
        // which sit at the neighbouring height values
        CoveringBasis::Tent => {
            let mut min_dh = f64::INFINITY;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    min_dh = min_dh.min(((pts[i] - pts[j]) * rot).re.abs());
                }
            }
            (0.3 * gap).min(0.45 * min_dh)
        }
        // stay clear of the origin, where the spider is based
        CoveringBasis::Spider => {
            let min_norm = pts.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            (0.3 * gap).min(0.5 * min_norm)
        }
    };

    let base_x = match basis {
        CoveringBasis::Tent => {
            let max_norm = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
            rot.conj() * c(0.0, 2.0 * max_norm + 1.0)
        }
        CoveringBasis::Spider => c(0.0, 0.0),
    };

    let mut entries = Vec::with_capacity(pts.len());
    for xi in &pts {
        let lasso = match basis {
            CoveringBasis::Tent => {
                let xi_rot = xi * rot;
                let depth = (base_x * rot).im;
                let corner = rot.conj() * c(xi_rot.re, depth);
                let above = rot.conj() * c(xi_rot.re, xi_rot.im + r_cov);
                let start_angle = PI / 2.0 - cfg.theta;
                LoopPath::new(
                    "tent",
                    1,
                    vec![
                        Segment::Line { from: vec![base_x], to: vec![corner] },
                        Segment::Line { from: vec![corner], to: vec![above] },
                        Segment::Arc {
                            base: vec![above],
                            coord: 0,
                            center: *xi,
                            radius: r_cov,
                            from_angle: start_angle,
                            to_angle: start_angle + 2.0 * PI,
                        },
                        Segment::Line { from: vec![above], to: vec![corner] },
                        Segment::Line { from: vec![corner], to: vec![base_x] },
                    ],
                )
            }
            CoveringBasis::Spider => {
                let dir = xi / c(xi.norm(), 0.0);
                let approach = xi - dir * c(r_cov, 0.0);
                let start_angle = (approach - xi).arg();
                LoopPath::new(
                    "spider",
                    1,
                    vec![
                        Segment::Line { from: vec![base_x], to: vec![approach] },
                        Segment::Arc {
                            base: vec![approach],
                            coord: 0,
                            center: *xi,
                            radius: r_cov,
                            from_angle: start_angle,
                            to_angle: start_angle + 2.0 * PI,
                        },
                        Segment::Line { from: vec![approach], to: vec![base_x] },
                    ],
                )
            }
        };
        let tracked = track_loop(fiber, &lasso, cfg)?;
        entries.push(tracked.braid.permutation_image());
    }
    let tuple = HurwitzTuple::new(fiber.degree, entries)?;
    Ok(CoveringData { tuple, branch_points: pts, basis, base_x })
}

/// Writes the trajectory as CSV with header `s,root_index,re,im`.
pub fn write_trajectory_csv(rows: &[(f64, Vec<Complex64>)], path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "s,root_index,re,im")?;
    for (s, roots) in rows {
        for (i, z) in roots.iter().enumerate() {
            writeln!(out, "{},{},{},{}", s, i + 1, z.re, z.im)?;
        }
    }
    Ok(())
}

/// Renders root trajectories as a simple SVG plot (presentation only).
pub fn write_trajectory_svg(rows: &[(f64, Vec<Complex64>)], path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for (_, r) in rows {
        for z in r {
            min_x = min_x.min(z.re);
            max_x = max_x.max(z.re);
            min_y = min_y.min(z.im);
            max_y = max_y.max(z.im);
        }
    }
    let pad = 0.1 * ((max_x - min_x).max(max_y - min_y)).max(1e-6);
    let (w, h) = (640.0, 640.0);
    let s = (w / (max_x - min_x + 2.0 * pad)).min(h / (max_y - min_y + 2.0 * pad));
    let map = |z: &Complex64| -> (f64, f64) {
        ((z.re - min_x + pad) * s, h - (z.im - min_y + pad) * s)
    };
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )?;
    writeln!(out, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>")?;
    let m = rows.first().map(|(_, r)| r.len()).unwrap_or(0);
    for i in 0..m {
        let hue = (i * 360) / m.max(1);
        let pts: Vec<String> = rows
            .iter()
            .map(|(_, r)| {
                let (x, y) = map(&r[i]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"hsl({hue},70%,45%)\" stroke-width=\"1.2\"/>",
            pts.join(" ")
        )?;
        if let Some((_, first)) = rows.first() {
            let (x, y) = map(&first[i]);
            writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"hsl({hue},70%,45%)\"/>")?;
        }
    }
    writeln!(out, "</svg>")?;
    Ok(())
}
