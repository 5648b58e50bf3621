//! Generator sets of the two bifurcation monodromy groups and the
//! verification pipelines that cross-check them against tracked braids,
//! Hurwitz stabilization, and exact braid identities.

use crate::braid::{permutation_braid, BandGenerator, BraidWord};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::family::{
    bp_discriminant_family, bp_fiber_family, degeneracy_check_bp, degeneracy_check_plane,
    degeneracy_closed_bp, plane_discriminant_family,
};
use crate::hurwitz::{global_conjugation, periodic_tuple, stabilizes, HurwitzTuple};
use crate::perm::Permutation;
use crate::poly::{roots, RootConfig};
use crate::tracker::{
    covering_tuple, geometric_basis_bp, geometric_basis_plane, track_loop, track_loop_traced,
    BasisConfig, CoveringBasis, TrackConfig, TrackedBraid,
};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which expansion band-generator items use when turned into words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandExpansion {
    /// `(s_{j-1} ... s_{i+1}) s_i (s_{i+1}^{-1} ... s_{j-1}^{-1})`
    Canonical,
    /// `s_i^{-1} ... s_{j-2}^{-1} s_{j-1} s_{j-2} ... s_i`
    Prime,
}

/// One generator of a monodromy group: a band with an exponent, or an
/// explicit word.
#[derive(Clone, Debug)]
pub enum GeneratorItem {
    Band(BandGenerator),
    Word(BraidWord),
}

#[derive(Clone, Debug)]
pub struct LabeledItem {
    pub label: String,
    pub item: GeneratorItem,
}

impl LabeledItem {
    pub fn to_word(&self, strands: usize, expansion: BandExpansion) -> Result<BraidWord> {
        match &self.item {
            GeneratorItem::Band(b) => match expansion {
                BandExpansion::Canonical => b.to_word(strands),
                BandExpansion::Prime => b.to_prime_word(strands),
            },
            GeneratorItem::Word(w) => Ok(w.clone()),
        }
    }

    pub fn text(&self) -> String {
        match &self.item {
            GeneratorItem::Band(b) => b.text(),
            GeneratorItem::Word(w) => w.text(),
        }
    }
}

/// A labeled set of braid-group generators.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub strands: usize,
    pub items: Vec<LabeledItem>,
}

impl GeneratorSet {
    pub fn to_json(&self, expansion: BandExpansion) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .items
            .iter()
            .map(|it| {
                let word = it.to_word(self.strands, expansion).expect("valid item");
                serde_json::json!({
                    "label": it.label,
                    "item": it.text(),
                    "word": word.letters(),
                    "expsum": word.exponent_sum(),
                    "perm": word.permutation_image().cycle_string(),
                })
            })
            .collect();
        serde_json::json!({ "strands": self.strands, "items": items })
    }
}

/// Exponent attached to the band on strands `i < j` for period `n`:
/// 1 for equal residues, 3 for cyclically adjacent residues, except that the
/// wrap-around residue pair {0, 1} gets 2 when the period is at least 3
/// (only then are its tuple entries disjoint; at period 2 they still share a
/// sheet and keep the cube). Everything else gets 2.
pub fn band_exponent(i: usize, j: usize, n: usize) -> u32 {
    let (ri, rj) = (i % n, j % n);
    if ri == rj {
        return 1;
    }
    let adjacent = (ri + 1) % n == rj || (rj + 1) % n == ri;
    if !adjacent {
        return 2;
    }
    if n >= 3 {
        let (lo, hi) = (ri.min(rj), ri.max(rj));
        if lo == 0 && hi == 1 {
            return 2;
        }
    }
    3
}

fn clause_label(prefix: &str, exponent: u32) -> String {
    let clause = match exponent {
        1 => "i",
        3 => "ii",
        _ => "iii",
    };
    format!("{prefix}.{clause}")
}

/// Generator set of the unfolding monodromy group in Br_{nk}: one band
/// `b(i,j)^{m_ij}` per strand pair, exponents from `band_exponent` with
/// period n.
pub fn theorem1_generators(n: usize, k: usize) -> GeneratorSet {
    assert!(n >= 1 && k >= 1);
    let m = n * k;
    let mut items = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            let e = band_exponent(i, j, n);
            items.push(LabeledItem {
                label: clause_label("thm1", e),
                item: GeneratorItem::Band(BandGenerator::new(i, j, e as i32).unwrap()),
            });
        }
    }
    GeneratorSet { strands: m, items }
}

/// Generator set of the plane-curve monodromy group in Br_{d(d-1)}:
/// the band table with period d-1, plus the explicit pure-braid words of
/// the fourth clause (the palindrome `s_1 ... s_{m-1} s_{m-1} ... s_1` and
/// its conjugates by powers of `s_{m-1} ... s_1`, deduplicated up to
/// `dedup_cap` candidates).
pub fn theorem2_generators(d: usize, dedup_cap: usize) -> Result<GeneratorSet> {
    assert!(d >= 2);
    let m = d * (d - 1);
    let mut items = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            let e = band_exponent(i, j, d - 1);
            items.push(LabeledItem {
                label: clause_label("thm2", e),
                item: GeneratorItem::Band(BandGenerator::new(i, j, e as i32).unwrap()),
            });
        }
    }
    // palindrome word and its conjugates
    let mut letters: Vec<i32> = (1..m as i32).collect();
    letters.extend((1..m as i32).rev());
    let base = BraidWord::new(m, letters)?;
    let conjugator = BraidWord::new(m, (1..m as i32).rev().collect())?;
    let mut distinct: Vec<BraidWord> = Vec::new();
    let mut power = BraidWord::identity(m);
    for _ in 0..m.min(dedup_cap) {
        let conj = base.conjugated_by(&power)?;
        let mut seen = false;
        for w in &distinct {
            if conj.equals(w)? {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(conj);
        }
        power = power.compose(&conjugator)?;
    }
    for w in distinct {
        items.push(LabeledItem { label: "thm2.iv".to_string(), item: GeneratorItem::Word(w) });
    }
    Ok(GeneratorSet { strands: m, items })
}

/// Generator set of the one-variable unfolding case in Br_n:
/// `s_i^3` for adjacent strands and squared prime bands for distant pairs.
pub fn anbraids_generators(n: usize) -> GeneratorSet {
    assert!(n >= 1);
    let mut items = Vec::new();
    for i in 1..n {
        items.push(LabeledItem {
            label: "anbraids".to_string(),
            item: GeneratorItem::Band(BandGenerator::new(i, i + 1, 3).unwrap()),
        });
    }
    for i in 1..=n {
        for j in (i + 2)..=n {
            items.push(LabeledItem {
                label: "anbraids".to_string(),
                item: GeneratorItem::Band(BandGenerator::new(i, j, 2).unwrap()),
            });
        }
    }
    GeneratorSet { strands: n, items }
}

/// Per-item stabilization of a generator set on a tuple.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub case: String,
    pub all_stabilize: bool,
    pub items: Vec<ItemFingerprint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemFingerprint {
    pub label: String,
    pub item: String,
    pub word: Vec<i32>,
    pub stabilizes: bool,
    pub perm: String,
    pub expsum: i64,
}

/// Checks every item of `gs` against `tuple` under the given expansion.
pub fn verify_stabilization(
    gs: &GeneratorSet,
    tuple: &HurwitzTuple,
    expansion: BandExpansion,
) -> Result<StabilizationReport> {
    let mut items = Vec::with_capacity(gs.items.len());
    let mut all = true;
    for it in &gs.items {
        let word = it.to_word(gs.strands, expansion)?;
        let ok = stabilizes(&word, tuple)?;
        all &= ok;
        items.push(ItemFingerprint {
            label: it.label.clone(),
            item: it.text(),
            word: word.letters().to_vec(),
            stabilizes: ok,
            perm: word.permutation_image().cycle_string(),
            expsum: word.exponent_sum(),
        });
    }
    Ok(StabilizationReport {
        case: format!("stabilization on S_{} tuple", tuple.degree()),
        all_stabilize: all,
        items,
    })
}

/// Outcome of an exact identity check batch.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub case: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn delta_word(i_prime: usize, n: usize, k: usize) -> BraidWord {
    let letters: Vec<i32> = (0..k).map(|t| (i_prime + t * n) as i32).collect();
    BraidWord::new(n * k, letters).expect("delta letters in range")
}

fn band_word(i: usize, j: usize, m: usize, expansion: BandExpansion) -> Result<BraidWord> {
    let b = BandGenerator::new(i, j, 1)?;
    match expansion {
        BandExpansion::Canonical => b.to_word(m),
        BandExpansion::Prime => b.to_prime_word(m),
    }
}

/// Conjugation of the equal-residue bands by the parallel twists
/// `delta_{i'} = s_{i'} s_{i'+n} ... s_{i'+(k-1)n}`: checks, via handle
/// reduction, that conjugating `b(i,j)` by `delta_{i'}` gives
/// `b(i,j) b(i+1,j+1) b(i,j)^{-1}` when `i' = i mod n`, `b(i-1,j-1)` when
/// `i' = i-1 mod n`, and `b(i,j)` otherwise. The identity is stated for
/// right-to-left composition, so with this crate's left-to-right convention
/// the conjugator enters inverted: the left side is
/// `delta^{-1} · b(i,j) · delta`.
pub fn verify_delta_conjugation(
    n: usize,
    k: usize,
    strand_cap: usize,
    expansion: BandExpansion,
) -> Result<IdentityReport> {
    let m = n * k;
    if m > strand_cap {
        return Err(Error::StrandCapExceeded { cap: strand_cap, requested: m });
    }
    let mut checks = 0;
    let mut failures = Vec::new();
    for i_prime in 1..n {
        let delta = delta_word(i_prime, n, k);
        for i in 1..=m {
            for j in (i + 1)..=m {
                if i % n != j % n {
                    continue;
                }
                let band = band_word(i, j, m, expansion)?;
                let lhs = band.conjugated_by(&delta.inverse())?;
                let rhs = if i_prime % n == i % n {
                    let next = band_word(i + 1, j + 1, m, expansion)?;
                    next.conjugated_by(&band)?
                } else if (i_prime + 1) % n == i % n {
                    band_word(i - 1, j - 1, m, expansion)?
                } else {
                    band.clone()
                };
                checks += 1;
                if !lhs.equals(&rhs)? {
                    failures.push(format!("delta_{i_prime} on b({i},{j})"));
                }
            }
        }
    }
    Ok(IdentityReport { case: format!("delta conjugation n={n} k={k}"), checks, failures })
}

/// The redundancy identity `b(i,j+n) b(j,j+n) = b(j,j+n) b(i,j)` for all
/// `i < j` with `j + n <= strands`.
pub fn verify_redundancy(
    n: usize,
    strands: usize,
    strand_cap: usize,
    expansion: BandExpansion,
) -> Result<IdentityReport> {
    if strands > strand_cap {
        return Err(Error::StrandCapExceeded { cap: strand_cap, requested: strands });
    }
    let mut checks = 0;
    let mut failures = Vec::new();
    for i in 1..strands {
        for j in (i + 1)..strands {
            if j + n > strands {
                continue;
            }
            let a = band_word(i, j + n, strands, expansion)?;
            let b = band_word(j, j + n, strands, expansion)?;
            let c = band_word(i, j, strands, expansion)?;
            checks += 1;
            if !a.compose(&b)?.equals(&b.compose(&c)?)? {
                failures.push(format!("(i,j,n)=({i},{j},{n})"));
            }
        }
    }
    Ok(IdentityReport { case: format!("redundancy n={n} strands={strands}"), checks, failures })
}

/// Summary of one tracked basis loop.
#[derive(Clone, Debug, Serialize)]
pub struct TrackedSummary {
    pub label: String,
    pub strands: usize,
    pub word: Vec<i32>,
    pub expsum: i64,
    pub expected_expsum: i64,
    pub perm: String,
    pub stabilizes: bool,
    pub closed_consistent: bool,
    pub min_sep: f64,
    pub steps: usize,
}

/// Report of the end-to-end unfolding pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct BpReport {
    pub case: String,
    pub strands: usize,
    pub tent_tuple: Vec<String>,
    pub spider_tuple: Vec<String>,
    pub periodic_tuple: Vec<String>,
    /// Global conjugation taking the spider tuple to the periodic tuple,
    /// when one exists.
    pub spider_periodic_conjugator: Option<String>,
    pub matched_convention: String,
    pub congruence: Vec<String>,
    pub tracked: Vec<TrackedSummary>,
    pub items: Vec<ItemFingerprint>,
    pub arg_monotonicity: Vec<String>,
    pub verdicts: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

impl BpReport {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

fn tuple_strings(t: &HurwitzTuple) -> Vec<String> {
    t.entries().iter().map(|p| p.cycle_string()).collect()
}

/// Relabels a permutation on height-order strands into argument-rank labels.
fn relabel(perm: &Permutation, arg_order: &Permutation) -> Permutation {
    // arg_order maps arg rank -> height slot
    arg_order
        .then(perm)
        .and_then(|p| p.then(&arg_order.inverse()))
        .expect("sizes agree")
}

fn residue_class(support: &[usize], modulus: usize) -> Option<usize> {
    let first = *support.first()?;
    let r = first % modulus;
    support.iter().all(|&x| x % modulus == r).then_some(r)
}

/// End-to-end pipeline for the unfolding family: builds the family and its
/// geometric basis, tracks every loop, computes the covering tuple at the
/// base point, and checks stabilization, closure, exponent sums against the
/// local models, and refinement stability.
pub fn verify_pipeline_bp(n: usize, k: usize, run: &RunConfig) -> Result<BpReport> {
    let fam = bp_discriminant_family(n, k);
    let m = n * k;
    let cfg = TrackConfig::from_run(run);
    let bcfg = BasisConfig::from_run(run);
    let u = Complex64::new(1.0, 0.0);
    let v = Complex64::new(0.0, 0.0);

    let p0 = fam.at(&[u, v]);
    let branch = roots(&p0, &RootConfig { tol: run.root_tol, ..RootConfig::default() })?.values;
    let fiber = bp_fiber_family(n, k, u, v);
    let tent = covering_tuple(&fiber, &branch, CoveringBasis::Tent, &cfg)?;
    let spider = covering_tuple(&fiber, &branch, CoveringBasis::Spider, &cfg)?;
    let periodic = periodic_tuple(n, k);
    let spider_conj = global_conjugation(&spider.tuple, &periodic)?;

    let mut verdicts = BTreeMap::new();
    let mut notes = Vec::new();
    let basis = geometric_basis_bp(n, k, &bcfg);

    let mut tracked_braids: Vec<(String, TrackedBraid)> = Vec::new();
    let mut trace_rows = Vec::new();
    for lp in &basis {
        if lp.label == "u-loop" {
            let (tb, rows) = track_loop_traced(&fam, lp, &cfg)?;
            trace_rows = rows;
            tracked_braids.push((lp.label.clone(), tb));
        } else {
            tracked_braids.push((lp.label.clone(), track_loop(&fam, lp, &cfg)?));
        }
    }

    let mut all_stab = true;
    let mut all_closed = true;
    let mut all_exp = true;
    let mut congruence = Vec::new();
    let mut tracked = Vec::new();
    for (label, tb) in &tracked_braids {
        let stab = stabilizes(&tb.braid, &tent.tuple)?;
        let closed = tb.closed_consistent(1e-6);
        let expected =
            if label == "u-loop" { (k * (n * n - 1)) as i64 } else { (k - 1) as i64 };
        let expsum = tb.braid.exponent_sum();
        all_stab &= stab;
        all_closed &= closed;
        all_exp &= expsum == expected;
        let perm = tb.braid.permutation_image();
        if label.starts_with("radial") {
            let arg_perm = relabel(&perm, &tb.arg_order());
            let support = arg_perm.support();
            let class_n = residue_class(&support, n);
            let class_k = residue_class(&support, k);
            let verdict = match (class_n.is_some(), class_k.is_some()) {
                (true, true) if n == k => "matches both (n = k)",
                (true, true) => "matches both",
                (true, false) => "matches residue classes mod n",
                (false, true) => "matches residue classes mod k",
                (false, false) => "matches neither congruence",
            };
            congruence
                .push(format!("{label}: moved strands (arg labels) {:?}: {verdict}", support));
            // when the loop exchanges exactly two strands, settle which band
            // expansion the tracked braid is, both raw and after aligning
            // strand labels to the argument order
            if let Some((a, b)) = perm.as_transposition() {
                let flavor_of = |w: &BraidWord, i: usize, j: usize| -> Result<&'static str> {
                    let band = BandGenerator::new(i, j, 1).unwrap();
                    Ok(match (w.equals(&band.to_word(m)?)?, w.equals(&band.to_prime_word(m)?)?) {
                        (true, true) => "both expansions",
                        (true, false) => "the canonical expansion",
                        (false, true) => "the prime expansion",
                        (false, false) => "neither expansion (a conjugate band)",
                    })
                };
                let raw = flavor_of(&tb.braid, a, b)?;
                let align = permutation_braid(&tb.arg_order());
                let aligned_braid = tb.braid.conjugated_by(&align)?;
                let (aa, ab) = match relabel(&perm, &tb.arg_order()).as_transposition() {
                    Some(p) => p,
                    None => (a, b),
                };
                let aligned = flavor_of(&aligned_braid, aa, ab)?;
                notes.push(format!(
                    "{label}: tracked braid on strands ({a},{b}) equals {raw}; \
                     arg-aligned on ({aa},{ab}) equals {aligned}"
                ));
            }
        }
        tracked.push(TrackedSummary {
            label: label.clone(),
            strands: m,
            word: tb.braid.letters().to_vec(),
            expsum,
            expected_expsum: expected,
            perm: perm.cycle_string(),
            stabilizes: stab,
            closed_consistent: closed,
            min_sep: tb.min_separation,
            steps: tb.steps,
        });
    }
    verdicts.insert("all_tracked_stabilize_tent_tuple".to_string(), all_stab);
    verdicts.insert("closed_loops_consistent".to_string(), all_closed);
    verdicts.insert("exp_sums_match_local_models".to_string(), all_exp);

    // refinement stability: halved steps, doubled arc resolution
    let fine_cfg = TrackConfig {
        max_step: cfg.max_step / 2.0,
        circle_min_steps: cfg.circle_min_steps * 2,
        ..cfg
    };
    let mut refinement_ok = true;
    for (lp, (_, tb)) in basis.iter().zip(&tracked_braids) {
        let fine = track_loop(&fam, lp, &fine_cfg)?;
        refinement_ok &= fine.braid.equals(&tb.braid)?;
    }
    verdicts.insert("refinement_stable".to_string(), refinement_ok);

    // theorem generator fingerprints against the periodic tuple
    let gens = theorem1_generators(n, k);
    let stab_report = verify_stabilization(&gens, &periodic, BandExpansion::Canonical)?;
    verdicts.insert("generators_stabilize_periodic".to_string(), stab_report.all_stabilize);

    // argument monotonicity of the u-loop approach (diagnostic only)
    let arg_monotonicity = classify_arg_monotonicity(&trace_rows, m);

    let matched_convention = match &spider_conj {
        Some(g) => format!(
            "branching tuple = period-n sequence in S_{} (period {}), entries ordered by \
             increasing argument ending at the positive real axis, up to global conjugation \
             by {}",
            n + 1,
            n,
            g
        ),
        None => format!(
            "branching tuple in S_{} not globally conjugate to the period-n sequence \
             along the spider basis",
            n + 1
        ),
    };
    notes.push(format!(
        "radial loops expect exponent sum k-1 = {}; the u-loop expects k(n^2-1) = {}",
        k - 1,
        k * (n * n - 1)
    ));
    if n == 2 {
        notes.push(
            "period-2 exponent correction active: cross-parity band pairs carry exponent 3"
                .to_string(),
        );
    }

    Ok(BpReport {
        case: format!("bp:n={n},k={k}"),
        strands: m,
        tent_tuple: tuple_strings(&tent.tuple),
        spider_tuple: tuple_strings(&spider.tuple),
        periodic_tuple: tuple_strings(&periodic),
        spider_periodic_conjugator: spider_conj.map(|g| g.cycle_string()),
        matched_convention,
        congruence,
        tracked,
        items: stab_report.items,
        arg_monotonicity,
        verdicts,
        notes,
    })
}

/// Classifies the argument motion of each strand over the first third of
/// the traced u-loop (the approach segment).
fn classify_arg_monotonicity(rows: &[(f64, Vec<Complex64>)], m: usize) -> Vec<String> {
    let approach: Vec<&(f64, Vec<Complex64>)> =
        rows.iter().filter(|(s, _)| *s <= 1.0 / 3.0 + 1e-9).collect();
    if approach.len() < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for slot in 0..m {
        let mut up = 0.0f64;
        let mut down = 0.0f64;
        let mut prev = approach[0].1[slot].arg();
        for row in &approach[1..] {
            let mut a = row.1[slot].arg();
            // unwrap against the previous sample
            while a - prev > std::f64::consts::PI {
                a -= 2.0 * std::f64::consts::PI;
            }
            while prev - a > std::f64::consts::PI {
                a += 2.0 * std::f64::consts::PI;
            }
            let d = a - prev;
            if d > 0.0 {
                up += d;
            } else {
                down -= d;
            }
            prev = a;
        }
        let label = if up < 1e-6 && down < 1e-6 {
            "constant"
        } else if down < 1e-6 {
            "increasing"
        } else if up < 1e-6 {
            "decreasing"
        } else {
            "non-monotone"
        };
        out.push(format!("strand {} arg {}", slot + 1, label));
    }
    out
}

/// Grid agreement between a numeric degeneracy test and a closed-form
/// condition, excluding points inside the condition's band.
#[derive(Clone, Debug, Serialize)]
pub struct GridAgreement {
    pub total: usize,
    pub excluded: usize,
    pub agreements: usize,
    pub fraction: f64,
}

/// Compares `degeneracy_check_bp` with the closed condition
/// `u^{n+1} = v^n` (plus `u = 0` for n >= 2) over a real (u, v) grid.
pub fn degeneracy_grid_bp(
    n: usize,
    k: usize,
    band: f64,
    half_extent: f64,
    samples: usize,
    collision_tol: f64,
) -> Result<GridAgreement> {
    let mut total = 0;
    let mut excluded = 0;
    let mut agreements = 0;
    for iu in 0..samples {
        for iv in 0..samples {
            let u = Complex64::new(
                -half_extent + 2.0 * half_extent * iu as f64 / (samples - 1) as f64,
                0.0,
            );
            let v = Complex64::new(
                -half_extent + 2.0 * half_extent * iv as f64 / (samples - 1) as f64,
                0.0,
            );
            total += 1;
            if degeneracy_closed_bp(n, u, v, band) {
                excluded += 1;
                continue;
            }
            let numeric = degeneracy_check_bp(n, k, u, v, collision_tol)?;
            if !numeric {
                agreements += 1;
            }
        }
    }
    let considered = total - excluded;
    Ok(GridAgreement {
        total,
        excluded,
        agreements,
        fraction: if considered == 0 { 1.0 } else { agreements as f64 / considered as f64 },
    })
}

/// Compares `degeneracy_check_plane` with the closed condition `u^d = 1`
/// over a complex u grid.
pub fn degeneracy_grid_plane(
    d: usize,
    band: f64,
    half_extent: f64,
    samples: usize,
    collision_tol: f64,
) -> Result<GridAgreement> {
    let mut total = 0;
    let mut excluded = 0;
    let mut agreements = 0;
    for ire in 0..samples {
        for iim in 0..samples {
            let u = Complex64::new(
                -half_extent + 2.0 * half_extent * ire as f64 / (samples - 1) as f64,
                -half_extent + 2.0 * half_extent * iim as f64 / (samples - 1) as f64,
            );
            total += 1;
            let closed = (u.powu(d as u32) - Complex64::new(1.0, 0.0)).norm() < band;
            if closed {
                excluded += 1;
                continue;
            }
            let numeric = degeneracy_check_plane(d, u, collision_tol)?;
            if !numeric.degenerate {
                agreements += 1;
            }
        }
    }
    let considered = total - excluded;
    Ok(GridAgreement {
        total,
        excluded,
        agreements,
        fraction: if considered == 0 { 1.0 } else { agreements as f64 / considered as f64 },
    })
}

/// Summary of one tracked plane-curve lasso, raw and normalized.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneTrackedSummary {
    pub label: String,
    pub word: Vec<i32>,
    pub expsum: i64,
    pub raw_expected_expsum: i64,
    pub perm: String,
    pub closed_consistent: bool,
    /// Word after composing with prime bands that kill the far-strand
    /// permutation (the explicit normalization toward the clause-iv words).
    pub normalized_word: Vec<i32>,
    pub normalized_expsum: i64,
    pub normalized_perm_trivial: bool,
    /// Index of the clause-iv word the normalized braid equals, if any
    /// (exact equality is reported, not required).
    pub matches_item_iv: Option<usize>,
    /// Same check after conjugating to argument-rank strand labels.
    pub matches_item_iv_arg_aligned: Option<usize>,
    pub min_sep: f64,
    pub steps: usize,
}

/// Report of the plane-curve pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneReport {
    pub case: String,
    pub strands: usize,
    pub grid: GridAgreement,
    pub unit_roots_degenerate_at_infinity: bool,
    pub item_iv_words: Vec<Vec<i32>>,
    pub item_iv_expsum: i64,
    pub tracked: Vec<PlaneTrackedSummary>,
    pub verdicts: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

impl PlaneReport {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

/// End-to-end pipeline for the plane-curve family: degeneracy locus check,
/// tracking of the u-plane lassos, normalization of the tracked braids and
/// comparison against the clause-iv words.
pub fn verify_pipeline_plane(d: usize, run: &RunConfig) -> Result<PlaneReport> {
    let m = d * (d - 1);
    let fam = plane_discriminant_family(d);
    let cfg = TrackConfig::from_run(run);
    let bcfg = BasisConfig::from_run(run);

    let grid = degeneracy_grid_plane(d, 1e-6, 1.5, 41, run.multiplicity_threshold.max(1e-7))?;
    let mut unit_ok = true;
    for j in 1..=d {
        let u = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / d as f64);
        let check = degeneracy_check_plane(d, u, run.multiplicity_threshold)?;
        unit_ok &= check.degenerate && check.at_infinity;
    }

    let gens = theorem2_generators(d, m)?;
    let item_iv: Vec<BraidWord> = gens
        .items
        .iter()
        .filter(|it| it.label == "thm2.iv")
        .map(|it| it.to_word(m, BandExpansion::Canonical))
        .collect::<Result<_>>()?;
    let item_iv_expsum = 2 * (m as i64 - 1);

    let raw_expected = (2 * d * d) as i64 - (3 * d) as i64;
    let mut verdicts = BTreeMap::new();
    let mut notes = Vec::new();
    let mut tracked = Vec::new();
    let mut all_norm_exp = true;
    let mut all_norm_perm = true;
    let mut all_closed = true;

    for lp in geometric_basis_plane(d, &bcfg) {
        let tb = track_loop(&fam, &lp, &cfg)?;
        let perm = tb.braid.permutation_image();
        let closed = tb.closed_consistent(1e-6);
        all_closed &= closed;

        // kill the far-strand cycle with prime bands (one per missing
        // transposition, each contributing exponent +1)
        let mut normalized = tb.braid.clone();
        let mut current = perm.clone();
        let mut guard = 0;
        while !current.is_identity() && guard < m {
            let a = *current.support().first().unwrap();
            let b = current.apply(a);
            let (lo, hi) = (a.min(b), a.max(b));
            let band = BandGenerator::new(lo, hi, 1).unwrap().to_prime_word(m)?;
            normalized = normalized.compose(&band)?;
            current = normalized.permutation_image();
            guard += 1;
        }
        let norm_exp = normalized.exponent_sum();
        let norm_perm_trivial = normalized.permutation_image().is_identity();
        all_norm_exp &= norm_exp == item_iv_expsum;
        all_norm_perm &= norm_perm_trivial;

        let mut matches = None;
        for (idx, w) in item_iv.iter().enumerate() {
            if normalized.equals(w)? {
                matches = Some(idx);
                break;
            }
        }
        // best-effort alignment to argument-rank labels
        let align = permutation_braid(&tb.arg_order());
        let aligned = normalized.conjugated_by(&align)?;
        let mut matches_aligned = None;
        for (idx, w) in item_iv.iter().enumerate() {
            if aligned.equals(w)? {
                matches_aligned = Some(idx);
                break;
            }
        }

        tracked.push(PlaneTrackedSummary {
            label: lp.label.clone(),
            word: tb.braid.letters().to_vec(),
            expsum: tb.braid.exponent_sum(),
            raw_expected_expsum: raw_expected,
            perm: perm.cycle_string(),
            closed_consistent: closed,
            normalized_word: normalized.letters().to_vec(),
            normalized_expsum: norm_exp,
            normalized_perm_trivial: norm_perm_trivial,
            matches_item_iv: matches,
            matches_item_iv_arg_aligned: matches_aligned,
            min_sep: tb.min_separation,
            steps: tb.steps,
        });
    }

    verdicts.insert("degeneracy_locus_matches_grid".to_string(), grid.fraction >= 0.99);
    verdicts.insert("unit_roots_degenerate_at_infinity".to_string(), unit_ok);
    verdicts.insert("closed_loops_consistent".to_string(), all_closed);
    verdicts.insert("normalized_exp_sums_match_item_iv".to_string(), all_norm_exp);
    verdicts.insert("normalized_perms_trivial".to_string(), all_norm_perm);

    notes.push(format!(
        "raw lasso braids carry exponent sum 2d^2-3d = {raw_expected} and a d-apart strand \
         transposition cycle; composing with prime bands (exponent +1 each) yields the \
         clause-iv values {item_iv_expsum}"
    ));
    notes.push(format!(
        "clause iv kept {} distinct conjugates of the palindrome word",
        item_iv.len()
    ));

    Ok(PlaneReport {
        case: format!("plane:d={d}"),
        strands: m,
        grid,
        unit_roots_degenerate_at_infinity: unit_ok,
        item_iv_words: item_iv.iter().map(|w| w.letters().to_vec()).collect(),
        item_iv_expsum,
        tracked,
        verdicts,
        notes,
    })
}
