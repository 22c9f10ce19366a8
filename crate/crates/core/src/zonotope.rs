//! Cyclic vector configurations and the point geometry of `Z(n,d)`.
//!
//! A cyclic configuration is an ordered list of integer vectors with first
//! coordinate 1 whose flag minors (top `k` rows, any `k` increasing columns)
//! are all positive. All configurations here are generated by the moment
//! curve `t -> (1, t, t^2, ..)`, which makes lifting and projecting between
//! dimensions trivial: add or drop a power.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::colorset::ColorSet;
use crate::exact;
use crate::{Error, Result, MAX_COLORS};

/// A cyclic configuration of `n` integer vectors in dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicConfig {
    n: usize,
    d: usize,
    t: Vec<i64>,
    cols: Vec<Vec<BigInt>>,
}

impl CyclicConfig {
    /// Vectors `(1, t_i, .., t_i^{d-1})` for strictly increasing parameters.
    pub fn veronese(t: &[i64], d: usize) -> Result<CyclicConfig> {
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing);
        }
        if d < 1 || t.len() < d {
            return Err(Error::PreconditionViolated(format!(
                "need n >= d >= 1, got n={} d={d}",
                t.len()
            )));
        }
        if t.len() > MAX_COLORS {
            return Err(Error::CapExceeded(format!(
                "at most {MAX_COLORS} colors supported, got {}",
                t.len()
            )));
        }
        Ok(CyclicConfig::raw(t, d))
    }

    /// The default configuration for `n` colors in dimension `d`:
    /// parameters `0..n`, respaced to powers of two if any two 0/1
    /// combinations of the vectors collide (checked exhaustively for
    /// `n <= 12`). In dimension 1 every configuration collides (all vectors
    /// are `(1)`); vertices are identified by color subsets, not points, so
    /// the consecutive parameters are kept.
    pub fn standard(n: usize, d: usize) -> Result<CyclicConfig> {
        let t: Vec<i64> = (0..n as i64).collect();
        let cfg = CyclicConfig::veronese(&t, d)?;
        if d == 1 || cfg.distinct_combinations() {
            return Ok(cfg);
        }
        let t: Vec<i64> = (1..=n as u32).map(|i| 1i64 << i).collect();
        let cfg = CyclicConfig::veronese(&t, d)?;
        assert!(cfg.distinct_combinations(), "respaced parameters collide");
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn params(&self) -> &[i64] {
        &self.t
    }

    /// Column vector of color `c` (1-based).
    pub fn vector(&self, c: u8) -> &[BigInt] {
        &self.cols[c as usize - 1]
    }

    /// Checks that every flag minor is positive: for `k = 1..=d`, the top
    /// `k` rows against any `k` increasing columns have positive determinant.
    pub fn check_cyclic(&self) -> bool {
        for k in 1..=self.d {
            for cols in ColorSet::subsets_of_size(self.n, k) {
                let m: Vec<Vec<BigInt>> = (0..k)
                    .map(|row| cols.iter().map(|c| self.vector(c)[row].clone()).collect())
                    .collect();
                if !exact::det(&m).is_positive() {
                    return false;
                }
            }
        }
        true
    }

    /// The point of `Z(n,d)` corresponding to a subset of colors.
    pub fn subset_point(&self, x: ColorSet) -> Vec<BigInt> {
        let mut p = vec![BigInt::from(0); self.d];
        for c in x.iter() {
            for (acc, coord) in p.iter_mut().zip(self.vector(c)) {
                *acc += coord;
            }
        }
        p
    }

    /// True when all `2^n` subset points are pairwise distinct. Only checked
    /// exhaustively for `n <= 12`; larger ground sets are assumed distinct
    /// (they sit far beyond the enumeration caps anyway).
    pub fn distinct_combinations(&self) -> bool {
        if self.n > 12 {
            return true;
        }
        let mut seen = std::collections::HashSet::new();
        for mask in 0..(1u16 << self.n) {
            if !seen.insert(self.subset_point(ColorSet(mask))) {
                return false;
            }
        }
        true
    }

    /// Same parameters, one more coordinate power. Tolerates `n = d`: the
    /// lifted vector list is what facet computations need even when the
    /// lifted zonotope is degenerate.
    pub fn lift(&self) -> CyclicConfig {
        CyclicConfig::raw(&self.t, self.d + 1)
    }

    fn raw(t: &[i64], d: usize) -> CyclicConfig {
        let cols = t
            .iter()
            .map(|&ti| {
                let mut col = Vec::with_capacity(d);
                let mut pow = BigInt::from(1);
                for _ in 0..d {
                    col.push(pow.clone());
                    pow *= ti;
                }
                col
            })
            .collect();
        CyclicConfig {
            n: t.len(),
            d,
            t: t.to_vec(),
            cols,
        }
    }

    /// Same parameters, last coordinate dropped.
    pub fn project(&self) -> CyclicConfig {
        assert!(self.d >= 2);
        CyclicConfig::veronese(&self.t, self.d - 1).expect("projection of a valid configuration")
    }

    /// Restriction to a subset of colors (same dimension). The returned
    /// configuration renumbers the kept colors 1.. in ascending order.
    pub fn restrict(&self, colors: ColorSet) -> CyclicConfig {
        let t: Vec<i64> = colors.iter().map(|c| self.t[c as usize - 1]).collect();
        CyclicConfig::veronese(&t, self.d).expect("restriction of a valid configuration")
    }

    /// Mirror configuration: color `i` becomes `n+1-i` with parameter
    /// `-t_{n+1-i}`, reversing the cyclic order.
    pub fn mirror(&self) -> CyclicConfig {
        let t: Vec<i64> = self.t.iter().rev().map(|&x| -x).collect();
        CyclicConfig::veronese(&t, self.d).expect("mirror of a valid configuration")
    }
}
