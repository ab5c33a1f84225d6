//! Covering morphisms, path and homotopy lifting, the lifting criterion and
//! coverings built from subgroups of the fundamental group.

mod construct;
mod coset;

pub use construct::{construct_covering, SubgroupCover, SubgroupSpec};
pub use coset::{coset_enumeration, words_equal, CosetError, CosetTable};

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::action::GlobalAction;
use crate::homotopy::{
    pi0, pi1_presentation, GridHomotopy, GridViolation, HomotopyMode, Path, PathError, Pi1Error, Word,
};
use crate::morphism::{is_morphism, MorphismError, OrbitCounterexample};
use crate::{ActionViolation, BudgetExceeded, Verdict};

const FRAME_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("the star criterion says {star} but the frame-lift count says {lifts}")]
    CriteriaDisagreement { star: String, lifts: String },
    #[error("point {point} is not over {expected}")]
    NotInFiber { point: usize, expected: usize },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("the homotopy is not a valid fixed-end-point homotopy: {0}")]
    InvalidHomotopy(GridViolation),
    #[error("the source action is not path connected")]
    Disconnected,
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("the constructed action is invalid: {0}")]
    InvalidCover(ActionViolation),
    #[error("the constructed lift fails verification: {0}")]
    LiftCheck(String),
    #[error("the map is not a covering: {0:?}")]
    NotCovering(Box<NotCovering>),
}

/// Why the restriction to the star of `point` is not an isomorphism onto
/// the star of its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarFailure {
    NotInto { point: usize, neighbour: usize },
    NotInjective { point: usize, first: usize, second: usize },
    NotSurjective { point: usize, missing: usize },
    InverseNotMorphism { point: usize, frame: Vec<usize> },
}

/// A frame downstairs with a point over one of its members that has not
/// exactly one lifted frame through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftFailure {
    pub frame: Vec<usize>,
    pub fiber_point: usize,
    pub lifts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotCovering {
    NotMorphism(OrbitCounterexample),
    Failed { star: StarFailure, lift: LiftFailure },
}

/// A verified covering `p: Y -> X` with the inverse star maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    pub source: GlobalAction,
    pub target: GlobalAction,
    pub map: Vec<usize>,
    /// For each `y`, the inverse of `p` on its star: ambient `x` to
    /// ambient `y'`.
    star_inverse: Vec<HashMap<usize, usize>>,
}

fn star_check(
    y: &GlobalAction,
    x: &GlobalAction,
    p: &[usize],
) -> Result<Result<Vec<HashMap<usize, usize>>, StarFailure>, CoveringError> {
    let mut inverses = Vec::with_capacity(y.point_count());
    for point in 0..y.point_count() {
        let up = y.star(point).map_err(|_| MorphismError::Mismatch)?;
        let down = x.star(p[point]).map_err(|_| MorphismError::Mismatch)?;
        let position: HashMap<usize, usize> =
            down.embedding.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut local = Vec::with_capacity(up.embedding.len());
        let mut inverse: HashMap<usize, usize> = HashMap::new();
        for &neighbour in &up.embedding {
            let Some(&i) = position.get(&p[neighbour]) else {
                return Ok(Err(StarFailure::NotInto { point, neighbour }));
            };
            if let Some(&first) = inverse.get(&p[neighbour]) {
                return Ok(Err(StarFailure::NotInjective { point, first, second: neighbour }));
            }
            inverse.insert(p[neighbour], neighbour);
            local.push(i);
        }
        if let Some(&missing) = down.embedding.iter().find(|v| !inverse.contains_key(v)) {
            return Ok(Err(StarFailure::NotSurjective { point, missing }));
        }
        // the restriction preserves frames because p does; check the inverse
        let mut back = vec![0; down.embedding.len()];
        for (i, &j) in local.iter().enumerate() {
            back[j] = i;
        }
        if let Verdict::Fails(c) = is_morphism(&back, &down.action, &up.action)? {
            let frame = c.orbit.iter().map(|&i| down.embedding[i]).collect();
            return Ok(Err(StarFailure::InverseNotMorphism { point, frame }));
        }
        inverses.push(inverse);
    }
    Ok(Ok(inverses))
}

fn lift_check(y: &GlobalAction, x: &GlobalAction, p: &[usize]) -> Result<Option<LiftFailure>, CoveringError> {
    let mut over: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for f in y.all_frames(FRAME_LIMIT)? {
        let mut img: Vec<usize> = f.iter().map(|&v| p[v]).collect();
        img.sort_unstable();
        img.dedup();
        if img.len() == f.len() {
            over.entry(img).or_default().push(f);
        }
    }
    let mut fiber: Vec<Vec<usize>> = vec![Vec::new(); x.point_count()];
    for (v, &img) in p.iter().enumerate() {
        fiber[img].push(v);
    }
    let empty = Vec::new();
    for frame in x.all_frames(FRAME_LIMIT)? {
        let candidates = over.get(&frame).unwrap_or(&empty);
        for &x0 in &frame {
            for &fiber_point in &fiber[x0] {
                let lifts: Vec<Vec<usize>> =
                    candidates.iter().filter(|f| f.contains(&fiber_point)).cloned().collect();
                if lifts.len() != 1 {
                    return Ok(Some(LiftFailure { frame, fiber_point, lifts }));
                }
            }
        }
    }
    Ok(None)
}

/// Decides whether `p: Y -> X` is a covering by the star criterion and by
/// counting frame lifts directly; the two must agree.
pub fn is_covering(
    y: &GlobalAction,
    x: &GlobalAction,
    p: &[usize],
) -> Result<Result<CoveringMap, NotCovering>, CoveringError> {
    if let Verdict::Fails(c) = is_morphism(p, y, x)? {
        return Ok(Err(NotCovering::NotMorphism(c)));
    }
    let star = star_check(y, x, p)?;
    let lift = lift_check(y, x, p)?;
    match (star, lift) {
        (Ok(star_inverse), None) => Ok(Ok(CoveringMap {
            source: y.clone(),
            target: x.clone(),
            map: p.to_vec(),
            star_inverse,
        })),
        (Err(star), Some(lift)) => Ok(Err(NotCovering::Failed { star, lift })),
        (Ok(_), Some(lift)) => Err(CoveringError::CriteriaDisagreement {
            star: "covering".into(),
            lifts: format!("{lift:?}"),
        }),
        (Err(star), None) => Err(CoveringError::CriteriaDisagreement {
            star: format!("{star:?}"),
            lifts: "covering".into(),
        }),
    }
}

impl CoveringMap {
    /// Verifies and wraps `p`, failing if it is not a covering.
    pub fn new(y: &GlobalAction, x: &GlobalAction, p: &[usize]) -> Result<Self, CoveringError> {
        is_covering(y, x, p)?.map_err(|e| CoveringError::NotCovering(Box::new(e)))
    }

    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&v| self.map[v] == x).collect()
    }

    /// The unique lift of `w` starting at `y0`, with the same window.
    pub fn lift_path(&self, w: &Path, y0: usize) -> Result<Path, CoveringError> {
        w.validate(&self.target)?;
        if y0 >= self.map.len() || self.map[y0] != w.init() {
            return Err(CoveringError::NotInFiber { point: y0, expected: w.init() });
        }
        let mut cur = y0;
        let mut points = vec![y0];
        for &next in &w.points()[1..] {
            cur = self.star_inverse[cur][&next];
            points.push(cur);
        }
        Ok(Path::new(w.gls(), points)?)
    }

    /// Lifts every row from `y0`.
    pub fn lift_homotopy(&self, h: &GridHomotopy, y0: usize) -> Result<GridHomotopy, CoveringError> {
        let fixed = GridHomotopy::new(HomotopyMode::FixedEndPoint, h.rows().to_vec()).expect("nonempty");
        if let Verdict::Fails(v) = fixed.validate(&self.target) {
            return Err(CoveringError::InvalidHomotopy(v));
        }
        let rows = h
            .rows()
            .iter()
            .map(|r| self.lift_path(r, y0))
            .collect::<Result<Vec<_>, _>>()?;
        let lifted = GridHomotopy::new(HomotopyMode::FixedEndPoint, rows).expect("nonempty");
        match lifted.validate(&self.source) {
            Verdict::Holds => Ok(lifted),
            Verdict::Fails(v) => Err(CoveringError::InvalidHomotopy(v)),
        }
    }

    /// Whether the class of the loop `w` at `p(y0)` is in the image of the
    /// fundamental group at `y0`: its lift closes up.
    pub fn image_subgroup_membership(&self, y0: usize, w: &Path) -> Result<bool, CoveringError> {
        if !w.is_loop() {
            return Err(PathError::NotLoop(w.init()).into());
        }
        Ok(self.lift_path(w, y0)?.term() == y0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    /// The lift as a point table on `Z`.
    Lift(Vec<usize>),
    /// A generator of the fundamental group of `Z` whose image lifts open.
    FailingGenerator { generator: usize, name: String, word: Word, lifted_term: usize },
}

/// Lifts `f: Z -> X` through `c` with `z0 -> y0`, or names a generator of
/// the fundamental group of `Z` whose image is outside the image subgroup.
pub fn lifting_criterion(
    c: &CoveringMap,
    z: &GlobalAction,
    f: &[usize],
    z0: usize,
    y0: usize,
) -> Result<LiftOutcome, CoveringError> {
    if let Verdict::Fails(o) = is_morphism(f, z, &c.target)? {
        return Err(MorphismError::NotMorphism { index: o.index, orbit: o.orbit, image: o.image }.into());
    }
    if z0 >= z.point_count() || y0 >= c.map.len() || f[z0] != c.map[y0] {
        return Err(CoveringError::NotInFiber { point: y0, expected: f.get(z0).copied().unwrap_or(usize::MAX) });
    }
    let components = pi0(z);
    if components.len() != 1 || components[0].len() != z.point_count() {
        return Err(CoveringError::Disconnected);
    }
    let pres = pi1_presentation(z, z0)?;
    let image = |p: &Path| Path::new(p.gls(), p.points().iter().map(|&v| f[v]).collect());
    for generator in 0..pres.generator_count() {
        let word = Word::letter(generator);
        let lp = pres.word_to_loop(&word)?;
        let lifted = c.lift_path(&image(&lp)?, y0)?;
        if lifted.term() != y0 {
            return Ok(LiftOutcome::FailingGenerator {
                generator,
                name: pres.names[generator].clone(),
                word,
                lifted_term: lifted.term(),
            });
        }
    }
    let mut lift = Vec::with_capacity(z.point_count());
    for point in 0..z.point_count() {
        let tree = Path::from_points(pres.tree_path(point))?;
        lift.push(c.lift_path(&image(&tree)?, y0)?.term());
    }
    if !is_morphism(&lift, z, &c.source)?.holds() {
        return Err(CoveringError::LiftCheck("not a morphism".into()));
    }
    if lift.iter().enumerate().any(|(p, &v)| c.map[v] != f[p]) || lift[z0] != y0 {
        return Err(CoveringError::LiftCheck("does not cover the given map".into()));
    }
    Ok(LiftOutcome::Lift(lift))
}
