//! Problem instances: an affine toric log scheme with smooth coordinates and
//! the closed subscheme to complete along.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::Q;
use crate::monoid::{FsMonoid, MonoidIdeal};

pub const DEFAULT_TRUNCATION: usize = 12;
pub const DEFAULT_WINDOW: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SceneOptions {
    /// Largest adic level built before giving up on stabilization.
    pub truncation: usize,
    pub window: usize,
}

impl Default for SceneOptions {
    fn default() -> Self {
        Self { truncation: DEFAULT_TRUNCATION, window: DEFAULT_WINDOW }
    }
}

/// A closed point given by coordinate values. Logged coordinates (one per
/// generator of P, which must be free) with value zero vanish at the point;
/// the others are invertible there.
#[derive(Clone, Debug, PartialEq)]
pub struct FatPoint {
    pub log_values: Vec<Q>,
    pub smooth_values: Vec<Q>,
}

impl FatPoint {
    pub fn vanishing_log(&self) -> Vec<usize> {
        (0..self.log_values.len()).filter(|&i| self.log_values[i].is_zero()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Subscheme {
    /// Ideal of `P × ℕ^s`, exponents in `ℤ^{d+s}`.
    Monomial(MonoidIdeal),
    FatPoint(FatPoint),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogScene {
    pub monoid: FsMonoid,
    pub smooth_vars: usize,
    pub subscheme: Subscheme,
    pub options: SceneOptions,
}

impl LogScene {
    /// `Y` cut out by the monomials `χ^g`, `g ∈ ℤ^{d+s}`.
    pub fn monomial(monoid: FsMonoid, smooth_vars: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        monoid.require_grading()?;
        if generators.is_empty() {
            return Err(Error::Validation(
                "the zero ideal does not define a completion; give at least one monomial".into(),
            ));
        }
        let combined = monoid.with_free_factor(smooth_vars);
        let ideal = MonoidIdeal::new(combined, generators)?;
        Ok(Self { monoid, smooth_vars, subscheme: Subscheme::Monomial(ideal), options: SceneOptions::default() })
    }

    /// `P = ℕ^r`, `n − r` smooth coordinates: the normal crossing divisor `z_1⋯z_r = 0` in `𝔸^n`.
    pub fn ncd(n: usize, r: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::Validation(format!("need 1 ≤ r ≤ n, got r = {r}, n = {n}")));
        }
        Self::monomial(FsMonoid::free(r), n - r, generators)
    }

    /// The origin of an NCD scene.
    pub fn ncd_origin(n: usize, r: usize) -> Result<Self> {
        let gens = (0..n).map(|i| crate::monoid::unit_vector(n, i)).collect();
        Self::ncd(n, r, gens)
    }

    pub fn fat_point(monoid: FsMonoid, log_values: Vec<Q>, smooth_values: Vec<Q>) -> Result<Self> {
        monoid.require_grading()?;
        if log_values.len() != monoid.generators().len() {
            return Err(Error::Validation(format!(
                "point has {} log values for {} generators",
                log_values.len(),
                monoid.generators().len()
            )));
        }
        if monoid.groupify().rank() != monoid.generators().len() {
            return Err(Error::UnsupportedScene(
                "a translated point needs a free monoid (linearly independent generators)".into(),
            ));
        }
        let smooth_vars = smooth_values.len();
        Ok(Self {
            monoid,
            smooth_vars,
            subscheme: Subscheme::FatPoint(FatPoint { log_values, smooth_values }),
            options: SceneOptions::default(),
        })
    }

    pub fn with_options(mut self, options: SceneOptions) -> Self {
        self.options = options;
        self
    }

    /// `P × ℕ^s`.
    pub fn combined_monoid(&self) -> FsMonoid {
        self.monoid.with_free_factor(self.smooth_vars)
    }

    pub fn log_rank(&self) -> usize {
        self.monoid.groupify().rank()
    }

    /// Rank of `ω¹`.
    pub fn omega_rank(&self) -> usize {
        self.log_rank() + self.smooth_vars
    }

    pub fn monomial_ideal(&self) -> Result<&MonoidIdeal> {
        match &self.subscheme {
            Subscheme::Monomial(i) => Ok(i),
            Subscheme::FatPoint(_) => Err(Error::NotMonomial),
        }
    }

    /// True when `P` is `ℕ^r` with the standard basis in some order.
    pub fn is_free_standard(&self) -> bool {
        let d = self.monoid.ambient_rank();
        let gens = self.monoid.generators();
        gens.len() == d
            && gens.iter().all(|g| g.iter().filter(|&&x| x == 1).count() == 1 && g.iter().all(|&x| x == 0 || x == 1))
            && (0..d).all(|i| gens.iter().any(|g| g[i] == 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn construction_checks() {
        assert!(LogScene::ncd_origin(2, 2).is_ok());
        assert!(matches!(LogScene::monomial(FsMonoid::free(1), 0, vec![vec![0]]), Err(Error::ImproperIdeal(_))));
        assert!(matches!(LogScene::monomial(FsMonoid::free(1), 0, vec![]), Err(Error::Validation(_))));
        let quadric = FsMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert!(matches!(
            LogScene::fat_point(quadric, vec![q(0), q(0), q(0)], vec![]),
            Err(Error::UnsupportedScene(_))
        ));
        let s = LogScene::fat_point(FsMonoid::free(1), vec![q(0)], vec![q(1)]).unwrap();
        assert_eq!(s.omega_rank(), 2);
        assert!(s.is_free_standard());
    }
}
