//! Point sequences cut out of axis-aligned instances, and the mating
//! operations that combine them.

use std::collections::HashSet;

use crate::corrugated::{orbit_m, AxisAlignedM};
use crate::error::{GeomError, Result};
use crate::mirror::{mp_orbit, AxisAlignedMirrorPair};
use crate::pentagram2d::{orbit, AxisAligned2};
use crate::proj::{meet_coplanar_lines, reflect_r, ProjPoint};

/// Provenance of a point in a sequence: an unreduced vertex label, and for
/// mirror pairs whether the point is the reflected copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag {
    pub label: i64,
    pub primed: bool,
}

impl Tag {
    pub fn plain(label: i64) -> Self {
        Tag { label, primed: false }
    }
}

/// An ordered sequence of affine points in R^d, each carrying a [`Tag`].
/// `period` is the label period of the instance the points came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NPoint {
    points: Vec<ProjPoint>,
    tags: Vec<Tag>,
    period: i64,
}

impl NPoint {
    pub fn new(points: Vec<ProjPoint>, tags: Vec<Tag>, period: i64) -> Result<Self> {
        if points.len() < 2 {
            return Err(GeomError::InvalidInput("a sequence needs at least two points".into()));
        }
        if tags.len() != points.len() {
            return Err(GeomError::InvalidInput("one tag per point is required".into()));
        }
        let d = points[0].dim();
        for p in &points {
            p.check_dim(d)?;
            if !p.is_finite() {
                return Err(GeomError::InfiniteVertex);
            }
        }
        Ok(NPoint { points, tags, period })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn affine(&self) -> Vec<Vec<crate::Rational>> {
        self.points.iter().map(|p| p.to_affine().expect("finite")).collect()
    }
}

fn mate_range(x: &NPoint, y: &NPoint, count: usize) -> Result<NPoint> {
    if x.len() != y.len() {
        return Err(GeomError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.dim() != y.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let n = x.len();
    let mut points = Vec::with_capacity(count);
    let mut tags = Vec::with_capacity(count);
    for p in 0..count {
        let q = (p + 1) % n;
        let wrap = if q == 0 { x.period } else { 0 };
        let z = meet_coplanar_lines(&x.points[p], &x.points[q], &y.points[p], &y.points[q])
            .map_err(|e| e.at_index(p))?;
        let sum = x.tags[p].label + x.tags[q].label + y.tags[p].label + y.tags[q].label + 2 * wrap;
        if sum % 4 != 0 {
            return Err(GeomError::VariantMismatch.at_index(p));
        }
        points.push(z);
        tags.push(Tag {
            label: sum / 4,
            primed: x.tags[p].primed,
        });
    }
    NPoint::new(points, tags, x.period)
}

/// `z_p = (x_p x_{p+1}) ∩ (y_p y_{p+1})`, indices cyclic.
pub fn mating(x: &NPoint, y: &NPoint) -> Result<NPoint> {
    mate_range(x, y, x.len())
}

/// Like [`mating`] but without the wrap-around point, so the result is one
/// point shorter.
pub fn star(x: &NPoint, y: &NPoint) -> Result<NPoint> {
    mate_range(x, y, x.len().saturating_sub(1))
}

/// Repeated mating of neighbours: stage 1 is `seqs`, stage `g + 1` mates
/// consecutive elements of stage `g`, until one element remains.
pub fn mating_chain(seqs: &[NPoint], use_star: bool) -> Result<Vec<Vec<NPoint>>> {
    if seqs.is_empty() {
        return Err(GeomError::InvalidInput("no sequences".into()));
    }
    let mut stages = vec![seqs.to_vec()];
    while stages.last().expect("nonempty").len() > 1 {
        let prev = stages.last().expect("nonempty");
        let g = stages.len() + 1;
        let next = prev
            .windows(2)
            .map(|w| if use_star { star(&w[0], &w[1]) } else { mating(&w[0], &w[1]) })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.at_step(g))?;
        stages.push(next);
    }
    Ok(stages)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Planar,
    Corrugated,
    MirrorEven,
    MirrorOdd,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Planar => "planar",
            Variant::Corrugated => "corrugated",
            Variant::MirrorEven => "mirror-even",
            Variant::MirrorOdd => "mirror-odd",
        }
    }
}

/// An axis-aligned instance from which the sequences are cut.
#[derive(Debug, Clone)]
pub enum LiftSource {
    Planar(AxisAligned2),
    Corrugated(AxisAlignedM),
    Mirror(AxisAlignedMirrorPair),
}

impl LiftSource {
    pub fn n(&self) -> usize {
        match self {
            LiftSource::Planar(p) => p.n(),
            LiftSource::Corrugated(p) => p.n(),
            LiftSource::Mirror(p) => p.n(),
        }
    }

    /// The variant this instance naturally belongs to.
    pub fn variant(&self) -> Variant {
        match self {
            LiftSource::Planar(_) => Variant::Planar,
            LiftSource::Corrugated(_) => Variant::Corrugated,
            LiftSource::Mirror(p) if p.n() % 2 == 0 => Variant::MirrorEven,
            LiftSource::Mirror(_) => Variant::MirrorOdd,
        }
    }

    /// Mirror sources are used at the canonical level `y = -1`.
    pub fn normalized(&self) -> LiftSource {
        match self {
            LiftSource::Mirror(p) => LiftSource::Mirror(p.canonical()),
            other => other.clone(),
        }
    }

    /// Ambient dimension of the points.
    pub fn ambient(&self) -> usize {
        match self {
            LiftSource::Corrugated(p) => p.m(),
            _ => 2,
        }
    }
}

/// The sequences `A_1, A_3, ...` (planar and mirror) or `A_1, A_{m+1}, ...`
/// (corrugated). Mirror instances are first moved to the level `y = -1`.
pub fn build_a_sequences(src: &LiftSource, variant: Variant) -> Result<Vec<NPoint>> {
    if src.variant() != variant {
        return Err(GeomError::VariantMismatch);
    }
    let n = src.n();
    match src.normalized() {
        LiftSource::Planar(p) => {
            let poly = p.polygon();
            let period = poly.period();
            (0..n - 1)
                .map(|i| {
                    let k = 2 * i as i64 + 1;
                    let tags: Vec<Tag> = (0..n as i64).map(|j| Tag::plain(k + 4 * j)).collect();
                    let points = tags
                        .iter()
                        .map(|t| poly.by_label(t.label).cloned().ok_or(GeomError::VariantMismatch))
                        .collect::<Result<Vec<_>>>()?;
                    NPoint::new(points, tags, period)
                })
                .collect()
        }
        LiftSource::Corrugated(p) => {
            let poly = p.polygon();
            let m = p.m() as i64;
            let period = poly.period();
            (0..n as i64 - 1)
                .map(|i| {
                    let tags: Vec<Tag> = (0..n as i64).map(|j| Tag::plain(i * m + 1 + j * m * m)).collect();
                    let points = tags
                        .iter()
                        .map(|t| poly.by_label(t.label).cloned().ok_or(GeomError::VariantMismatch))
                        .collect::<Result<Vec<_>>>()?;
                    NPoint::new(points, tags, period)
                })
                .collect()
        }
        LiftSource::Mirror(p) => {
            let count = if n.is_multiple_of(2) { n - 1 } else { n };
            (0..count as i64)
                .map(|s| {
                    let tags: Vec<Tag> = (1..=n as i64)
                        .map(|j| Tag {
                            label: s + j,
                            primed: j % 2 == 0,
                        })
                        .collect();
                    let points = tags.iter().map(|t| mirror_point(&p, t)).collect();
                    NPoint::new(points, tags, n as i64)
                })
                .collect()
        }
    }
}

fn mirror_point(p: &AxisAlignedMirrorPair, t: &Tag) -> ProjPoint {
    let x = p.pair().point(t.label - 1);
    if t.primed {
        reflect_r(x)
    } else {
        x.clone()
    }
}

/// The `n - 1` consecutive sequences starting at `A_{2l-1}` (indices
/// cyclic), used for odd mirror pairs.
pub fn w1_family(seqs: &[NPoint], l: usize) -> Vec<NPoint> {
    let total = seqs.len();
    (0..total - 1)
        .map(|i| {
            let idx = l - 1 + i;
            let mut s = seqs[idx % total].clone();
            // Wrapped sequences continue the labels instead of restarting them.
            let shift = (idx / total) as i64 * s.period;
            for t in &mut s.tags {
                t.label += shift;
            }
            s
        })
        .collect()
}

/// The orbit a mating stage is compared with, indexed by stage.
enum Orbit {
    Planar(Vec<crate::pentagram2d::LabeledPolygon2>),
    Corrugated(Vec<crate::corrugated::PolygonM>),
    Mirror(Vec<crate::mirror::MirrorPair>),
}

impl Orbit {
    fn new(src: &LiftSource, steps: usize) -> Result<Self> {
        Ok(match src.normalized() {
            LiftSource::Planar(p) => Orbit::Planar(orbit(p.polygon(), steps)?),
            LiftSource::Corrugated(p) => Orbit::Corrugated(orbit_m(p.polygon(), steps)?),
            LiftSource::Mirror(p) => Orbit::Mirror(mp_orbit(p.pair(), steps)?),
        })
    }

    /// The point of iterate `k` named by `tag`.
    fn lookup(&self, k: usize, tag: &Tag) -> Option<ProjPoint> {
        match self {
            Orbit::Planar(o) => o[k].by_label(tag.label).cloned(),
            Orbit::Corrugated(o) => o[k].by_label(tag.label).cloned(),
            Orbit::Mirror(o) => {
                let x = o[k].point(tag.label - 1);
                Some(if tag.primed { reflect_r(x) } else { x.clone() })
            }
        }
    }

    /// Every point of iterate `k`, reflected copies included for mirror pairs.
    fn all_points(&self, k: usize) -> Vec<ProjPoint> {
        match self {
            Orbit::Planar(o) => o[k].vertices().to_vec(),
            Orbit::Corrugated(o) => o[k].vertices().to_vec(),
            Orbit::Mirror(o) => {
                let mut v = o[k].points().to_vec();
                v.extend(o[k].reflected());
                v
            }
        }
    }
}

/// Result of comparing a mating chain with the orbit of the map.
#[derive(Debug, Clone)]
pub struct MatingReport {
    pub variant: Variant,
    pub n: usize,
    /// First sequence index of each family checked (always `[1]` except for
    /// odd mirror pairs).
    pub families: Vec<usize>,
    /// Per family, per stage: every point equals the orbit point its tag names.
    pub stages_ok: Vec<Vec<bool>>,
    /// Per stage `g`: whether the union of the stage equals the whole
    /// iterate `g - 1`. `None` where equality is not expected.
    pub unions: Vec<Option<bool>>,
    /// Per stage: every point of the stage is a point of the iterate.
    pub unions_subset: Vec<bool>,
    /// Final element of each family.
    pub finals: Vec<NPoint>,
    /// Planar only: the final points are exactly the even or the odd
    /// vertices of `T^{n-2}`.
    pub final_is_half: Option<bool>,
}

impl MatingReport {
    pub fn passed(&self) -> bool {
        self.stages_ok.iter().flatten().all(|&b| b)
            && self.unions.iter().all(|u| u.unwrap_or(true))
            && self.unions_subset.iter().all(|&b| b)
            && self.final_is_half.unwrap_or(true)
    }
}

/// Which families of sequences to check for odd mirror pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Families {
    /// `l = 1` and one further `l` chosen from the seed.
    Sampled(u64),
    All,
}

pub fn family_starts(n: usize, families: Families) -> Vec<usize> {
    match families {
        Families::All => (1..=n).collect(),
        Families::Sampled(seed) => {
            let extra = 1 + (seed % n as u64) as usize;
            if extra == 1 {
                vec![1]
            } else {
                vec![1, extra]
            }
        }
    }
}

/// Runs the mating chains of `src` and compares each stage with the orbit.
pub fn mating_orbit_check(src: &LiftSource, variant: Variant, families: Families) -> Result<MatingReport> {
    let n = src.n();
    let seqs = build_a_sequences(src, variant)?;
    let orbit = Orbit::new(src, n - 2)?;
    let (starts, use_star) = match variant {
        Variant::MirrorOdd => (family_starts(n, families), true),
        _ => (vec![1], false),
    };
    let mut stages_ok = Vec::new();
    let mut finals = Vec::new();
    let mut unions = Vec::new();
    let mut unions_subset = Vec::new();
    for (fi, &l) in starts.iter().enumerate() {
        let family = if variant == Variant::MirrorOdd { w1_family(&seqs, l) } else { seqs.clone() };
        let chain = mating_chain(&family, use_star)?;
        let mut ok = Vec::new();
        for (gi, stage) in chain.iter().enumerate() {
            ok.push(stage.iter().all(|e| {
                e.points()
                    .iter()
                    .zip(e.tags())
                    .all(|(pt, t)| orbit.lookup(gi, t).as_ref() == Some(pt))
            }));
            if fi == 0 {
                let all = orbit.all_points(gi);
                let mut got: HashSet<&ProjPoint> = HashSet::new();
                for e in stage {
                    got.extend(e.points());
                }
                let expected: HashSet<&ProjPoint> = all.iter().collect();
                unions_subset.push(got.is_subset(&expected));
                let g = gi + 1;
                let expect_full = match variant {
                    Variant::Planar | Variant::MirrorEven => g + 2 <= n,
                    // A stage with fewer than m elements misses whole residue classes.
                    Variant::Corrugated => g + src.ambient() <= n,
                    Variant::MirrorOdd => false,
                };
                unions.push(expect_full.then(|| got == expected));
            }
        }
        stages_ok.push(ok);
        finals.push(chain.last().expect("nonempty")[0].clone());
    }
    let final_is_half = match (&orbit, variant) {
        (Orbit::Planar(o), Variant::Planar) => {
            let last = &o[n - 2];
            let got: HashSet<&ProjPoint> = finals[0].points().iter().collect();
            let half = |r: usize| -> HashSet<&ProjPoint> { last.vertices().iter().skip(r).step_by(2).collect() };
            Some(got.len() == n && (got == half(0) || got == half(1)))
        }
        _ => None,
    };
    Ok(MatingReport {
        variant,
        n,
        families: starts,
        stages_ok,
        unions,
        unions_subset,
        finals,
        final_is_half,
    })
}
