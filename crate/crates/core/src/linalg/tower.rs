//! Towers of complexes indexed by a truncation level, and the detection of
//! when their cohomology has stabilized.
//!
//! Level `n` cohomology is not read off directly: at a finite truncation the
//! boundary of the truncation produces classes that die one step further up
//! the tower. What is tracked instead is the stable image, the image of
//! `H(C_{n+w}) → H(C_n)` for an inverse tower (or `H(C_n) → H(C_{n+w})` for
//! a direct one) with `w` the window. The tower is declared stable at `n*`
//! once the stable image has the same dimension on `w` consecutive levels
//! and the transitions restrict to isomorphisms between those images, which
//! is the Mittag-Leffler condition made concrete.

use super::complex::{ChainMap, Cohomology, GradedComplex};
use super::rational::RationalMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// transitions `C_{n+1} → C_n`, the limit is an inverse limit
    Inverse,
    /// transitions `C_n → C_{n+1}`, the limit is a colimit
    Direct,
}

/// Levels `first_level, first_level + 1, …` and the transition chain maps
/// between consecutive levels.
#[derive(Clone, Debug)]
pub struct TruncationTower<L = String> {
    pub first_level: usize,
    pub direction: Direction,
    pub levels: Vec<GradedComplex<L>>,
    /// `transitions[j]` connects level `first_level + j` and the next one.
    pub transitions: Vec<ChainMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerCohomology {
    pub q_min: i32,
    pub dims: Vec<usize>,
    /// First level of the stable window.
    pub stabilized_at: usize,
}

impl TowerCohomology {
    pub fn dim(&self, q: i32) -> usize {
        let k = q - self.q_min;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }
}

impl<L: Clone> TruncationTower<L> {
    /// Checks that transitions are chain maps between the right levels and
    /// surjective (inverse towers) or injective (direct towers) per degree.
    pub fn validate(&self) -> Result<()> {
        if self.transitions.len() + 1 != self.levels.len() && !self.levels.is_empty() {
            return Err(Error::ShapeMismatch("one transition per consecutive pair of levels".into()));
        }
        for (j, t) in self.transitions.iter().enumerate() {
            let (src, dst) = match self.direction {
                Direction::Inverse => (&self.levels[j + 1], &self.levels[j]),
                Direction::Direct => (&self.levels[j], &self.levels[j + 1]),
            };
            if !super::complex::verify_chain_map(t, src, dst) {
                return Err(Error::ShapeMismatch(format!(
                    "transition at level {} is not a chain map",
                    self.first_level + j
                )));
            }
            for q in src.degrees() {
                let Some(m) = t.component(q) else { continue };
                let ok = match self.direction {
                    Direction::Inverse => m.rank() == dst.dim(q),
                    Direction::Direct => m.rank() == src.dim(q),
                };
                if !ok {
                    return Err(Error::ShapeMismatch(format!(
                        "transition at level {} degree {q} is not {}",
                        self.first_level + j,
                        if self.direction == Direction::Inverse { "surjective" } else { "injective" }
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn cohomology(&self, window: usize) -> Result<TowerCohomology> {
        let mut tracker = StabilityTracker::new(self.first_level, self.direction, window);
        for (j, level) in self.levels.iter().enumerate() {
            let t = if j == 0 { None } else { Some(self.transitions[j - 1].clone()) };
            if let Some(done) = tracker.push(level, t) {
                return Ok(done);
            }
        }
        Err(tracker.failure())
    }
}

/// Builds levels `first..=max` on demand and stops at the first stable window.
pub fn tower_cohomology_lazy<L, B, T>(
    first_level: usize,
    max_level: usize,
    direction: Direction,
    window: usize,
    mut build: B,
    mut transition: T,
) -> Result<TowerCohomology>
where
    L: Clone,
    B: FnMut(usize) -> Result<GradedComplex<L>>,
    T: FnMut(usize) -> ChainMap,
{
    let mut tracker = StabilityTracker::new(first_level, direction, window);
    for n in first_level..=max_level {
        let level = build(n)?;
        let t = if n == first_level { None } else { Some(transition(n - 1)) };
        if let Some(done) = tracker.push(&level, t) {
            return Ok(done);
        }
    }
    Err(tracker.failure())
}

struct StabilityTracker {
    first_level: usize,
    direction: Direction,
    window: usize,
    q_min: i32,
    cohomologies: Vec<Cohomology>,
    /// Induced maps on cohomology between consecutive levels, per degree, in
    /// the direction of the tower.
    induced: Vec<Vec<RationalMatrix>>,
}

impl StabilityTracker {
    fn new(first_level: usize, direction: Direction, window: usize) -> Self {
        Self { first_level, direction, window: window.max(1), q_min: 0, cohomologies: Vec::new(), induced: Vec::new() }
    }

    fn push<L: Clone>(&mut self, level: &GradedComplex<L>, transition: Option<ChainMap>) -> Option<TowerCohomology> {
        let h = level.cohomology();
        if let Some(t) = transition {
            let prev = self.cohomologies.last().expect("transition needs a previous level");
            let degrees: Vec<i32> = (h.q_min..h.q_min + h.groups.len() as i32).collect();
            let maps = degrees
                .iter()
                .map(|&q| match self.direction {
                    Direction::Inverse => t.induced_on_cohomology(&h, prev, q),
                    Direction::Direct => t.induced_on_cohomology(prev, &h, q),
                })
                .collect();
            self.induced.push(maps);
        } else {
            self.q_min = h.q_min;
        }
        self.cohomologies.push(h);
        self.check()
    }

    fn degree_count(&self) -> usize {
        self.cohomologies.iter().map(|h| h.groups.len()).max().unwrap_or(0)
    }

    /// Composite induced map between levels `a < b` in tower direction.
    fn composite(&self, a: usize, b: usize, k: usize) -> RationalMatrix {
        match self.direction {
            // H(C_b) → H(C_a) = I_a ∘ I_{a+1} ∘ … ∘ I_{b-1}
            Direction::Inverse => {
                let mut m = RationalMatrix::identity(self.cohomologies[b].groups.get(k).map_or(0, |g| g.dim()));
                for j in (a..b).rev() {
                    m = self.induced[j][k].mul(&m);
                }
                m
            }
            // H(C_a) → H(C_b) = I_{b-1} ∘ … ∘ I_a
            Direction::Direct => {
                let mut m = RationalMatrix::identity(self.cohomologies[a].groups.get(k).map_or(0, |g| g.dim()));
                for j in a..b {
                    m = self.induced[j][k].mul(&m);
                }
                m
            }
        }
    }

    /// Column basis of the stable image at level `j`.
    fn stable_image(&self, j: usize, k: usize) -> RationalMatrix {
        self.composite(j, j + self.window, k).column_space()
    }

    fn check(&mut self) -> Option<TowerCohomology> {
        let w = self.window;
        let len = self.cohomologies.len();
        // a window starting at j needs stable images at j..j+w-1, i.e. levels up to j+2w-1
        if len < 2 * w {
            return None;
        }
        let j0 = len - 2 * w;
        let degrees = self.degree_count();
        let mut dims = vec![0; degrees];
        for k in 0..degrees {
            let images: Vec<RationalMatrix> = (j0..j0 + w).map(|j| self.stable_image(j, k)).collect();
            let d = images[0].cols();
            if images.iter().any(|s| s.cols() != d) {
                return None;
            }
            for (i, j) in (j0..j0 + w - 1).enumerate() {
                let bijective = match self.direction {
                    // I_j: H(C_{j+1}) → H(C_j) restricted to S_{j+1}
                    Direction::Inverse => self.induced[j][k].mul(&images[i + 1]).rank() == d,
                    // I_{j+w}: H(C_{j+w}) → H(C_{j+w+1}) restricted to S_j
                    Direction::Direct => self.induced[j + w][k].mul(&images[i]).rank() == d,
                };
                if !bijective {
                    return None;
                }
            }
            dims[k] = d;
        }
        Some(TowerCohomology { q_min: self.q_min, dims, stabilized_at: self.first_level + j0 })
    }

    fn failure(&self) -> Error {
        Error::NotStabilized {
            max_level: self.first_level + self.cohomologies.len().saturating_sub(1),
            trace: self.cohomologies.iter().map(Cohomology::dims).collect(),
        }
    }
}
