//! Trace-coordinate vectors.
//!
//! [`TraceVector`] is the (3n-3)-coordinate image of an SL(2,C) tuple under
//! the trace map A -> (t_1, t_2, t_12, then t_k, t_1k, t_2k for k = 3..n),
//! where t_j = tr(A_j) and t_jk = tr(A_j A_k).
//!
//! [`VnTraceVector`] is the (4n-3)-coordinate variant for general 2x2 tuples,
//! which adds the squares: (t_1, t_11, t_2, t_22, t_12, then t_k, t_kk, t_1k,
//! t_2k for k = 3..n) with t_jj = tr(A_j^2).
//!
//! On SL(2,C) the squares are redundant (t_jj = t_j^2 - 2), which is why the
//! short layout only carries pairs touching indices 1 and 2. Both types offer
//! the induced invariants
//!
//! ```text
//!     tau_jk(z) = z_jk - z_j z_k / 2,      nu_j(z) = tau_jj(z),
//!     sigma_jk(z) = tau_jk(z)^2 - nu_j(z) nu_k(z),
//! ```
//!
//! for every index pair whose coordinates are present.

use crate::error::{Error, Result};
use crate::mat2::C64;

fn check_finite(coords: &[C64]) -> Result<()> {
    for (i, z) in coords.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput(format!("coordinate {i} is not finite")));
        }
    }
    Ok(())
}

/// The (3n-3)-coordinate trace vector for SL(2,C) tuples, n >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceVector {
    n: usize,
    coords: Vec<C64>,
}

impl TraceVector {
    pub fn new(n: usize, coords: Vec<C64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("trace vector requires n >= 2".into()));
        }
        if coords.len() != 3 * n - 3 {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates for n = {}, got {}",
                3 * n - 3,
                n,
                coords.len()
            )));
        }
        check_finite(&coords)?;
        Ok(TraceVector { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn max_norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "index {} outside 1..={}",
                j, self.n
            )));
        }
        Ok(())
    }

    /// z_j = t_j.
    pub fn z(&self, j: usize) -> Result<C64> {
        self.check_index(j)?;
        Ok(match j {
            1 => self.coords[0],
            2 => self.coords[1],
            _ => self.coords[3 * (j - 3) + 3],
        })
    }

    /// z_jk = t_jk for the stored pairs: {1,2}, {1,k}, {2,k} with k >= 3.
    pub fn z_pair(&self, j: usize, k: usize) -> Result<C64> {
        self.check_index(j)?;
        self.check_index(k)?;
        let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
        match (lo, hi) {
            (1, 2) => Ok(self.coords[2]),
            (1, k) if k >= 3 => Ok(self.coords[3 * (k - 3) + 4]),
            (2, k) if k >= 3 => Ok(self.coords[3 * (k - 3) + 5]),
            _ => Err(Error::CoordinateUnavailable(format!(
                "pair ({j},{k}) is not stored in the 3n-3 layout"
            ))),
        }
    }

    /// nu_j(z) = z_j^2/2 - 2  (the SL2 form of tau_jj).
    pub fn nu(&self, j: usize) -> Result<C64> {
        let zj = self.z(j)?;
        Ok(zj * zj / 2.0 - C64::new(2.0, 0.0))
    }

    /// tau_jk(z) = z_jk - z_j z_k / 2 for stored pairs; tau_jj = nu_j.
    pub fn tau(&self, j: usize, k: usize) -> Result<C64> {
        if j == k {
            return self.nu(j);
        }
        Ok(self.z_pair(j, k)? - self.z(j)? * self.z(k)? / 2.0)
    }

    /// sigma_jk(z) = tau_jk^2 - nu_j nu_k; for (1,2) this equals the quartic
    /// z_1^2 + z_2^2 + z_12^2 - z_1 z_2 z_12 - 4.
    pub fn sigma(&self, j: usize, k: usize) -> Result<C64> {
        if j == k {
            return Ok(C64::new(0.0, 0.0));
        }
        let t = self.tau(j, k)?;
        Ok(t * t - self.nu(j)? * self.nu(k)?)
    }

    /// Coordinates with the roles of indices 1 and 2 exchanged (z_1 <-> z_2,
    /// z_1k <-> z_2k); z_12 and the z_k are fixed.
    pub fn swap_first_two(&self) -> TraceVector {
        let mut c = self.coords.clone();
        c.swap(0, 1);
        for k in 3..=self.n {
            c.swap(3 * (k - 3) + 4, 3 * (k - 3) + 5);
        }
        TraceVector {
            n: self.n,
            coords: c,
        }
    }

    /// Coordinates after replacing A_j by -A_j for j in {1, 2}: z_j and every
    /// stored pair containing j change sign.
    pub fn negate_entry(&self, j: usize) -> Result<TraceVector> {
        if j != 1 && j != 2 {
            return Err(Error::IndexOutOfRange(
                "only entries 1 and 2 support sign normalization".into(),
            ));
        }
        let mut c = self.coords.clone();
        c[if j == 1 { 0 } else { 1 }] = -c[if j == 1 { 0 } else { 1 }];
        c[2] = -c[2];
        for k in 3..=self.n {
            let idx = 3 * (k - 3) + if j == 1 { 4 } else { 5 };
            c[idx] = -c[idx];
        }
        Ok(TraceVector {
            n: self.n,
            coords: c,
        })
    }

    /// Per-coordinate max |self - other| (infinity distance).
    pub fn max_abs_diff(&self, other: &TraceVector) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The (4n-3)-coordinate trace vector for general 2x2 tuples, n >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct VnTraceVector {
    n: usize,
    coords: Vec<C64>,
}

impl VnTraceVector {
    pub fn new(n: usize, coords: Vec<C64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("trace vector requires n >= 2".into()));
        }
        if coords.len() != 4 * n - 3 {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates for n = {}, got {}",
                4 * n - 3,
                n,
                coords.len()
            )));
        }
        check_finite(&coords)?;
        Ok(VnTraceVector { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn max_norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "index {} outside 1..={}",
                j, self.n
            )));
        }
        Ok(())
    }

    /// z_j = t_j.
    pub fn z(&self, j: usize) -> Result<C64> {
        self.check_index(j)?;
        Ok(match j {
            1 => self.coords[0],
            2 => self.coords[2],
            _ => self.coords[4 * (j - 3) + 5],
        })
    }

    /// z_jj = t_jj = tr(A_j^2).
    pub fn z_square(&self, j: usize) -> Result<C64> {
        self.check_index(j)?;
        Ok(match j {
            1 => self.coords[1],
            2 => self.coords[3],
            _ => self.coords[4 * (j - 3) + 6],
        })
    }

    /// z_jk for the stored pairs {1,2}, {1,k}, {2,k}.
    pub fn z_pair(&self, j: usize, k: usize) -> Result<C64> {
        self.check_index(j)?;
        self.check_index(k)?;
        let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
        match (lo, hi) {
            (1, 2) => Ok(self.coords[4]),
            (1, k) if k >= 3 => Ok(self.coords[4 * (k - 3) + 7]),
            (2, k) if k >= 3 => Ok(self.coords[4 * (k - 3) + 8]),
            _ => Err(Error::CoordinateUnavailable(format!(
                "pair ({j},{k}) is not stored in the 4n-3 layout"
            ))),
        }
    }

    /// tau_jk(z) = z_jk - z_j z_k / 2, with tau_jj = z_jj - z_j^2/2.
    pub fn tau(&self, j: usize, k: usize) -> Result<C64> {
        if j == k {
            return Ok(self.z_square(j)? - self.z(j)? * self.z(j)? / 2.0);
        }
        Ok(self.z_pair(j, k)? - self.z(j)? * self.z(k)? / 2.0)
    }

    /// sigma_12(z) = tau_12^2 - tau_11 tau_22.
    pub fn sigma12(&self) -> Result<C64> {
        let t12 = self.tau(1, 2)?;
        Ok(t12 * t12 - self.tau(1, 1)? * self.tau(2, 2)?)
    }

    /// Delta_12k(z) = 2 (tau_12^2 tau_kk + tau_1k^2 tau_22 + tau_2k^2 tau_11
    ///                 - 2 tau_12 tau_1k tau_2k - tau_11 tau_22 tau_kk),
    /// i.e. -2 det of the Gram matrix of tau over indices {1, 2, k}.
    pub fn delta_12k(&self, k: usize) -> Result<C64> {
        if k < 3 || k > self.n {
            return Err(Error::IndexOutOfRange(format!("k = {k} must lie in 3..=n")));
        }
        let t12 = self.tau(1, 2)?;
        let t1k = self.tau(1, k)?;
        let t2k = self.tau(2, k)?;
        let t11 = self.tau(1, 1)?;
        let t22 = self.tau(2, 2)?;
        let tkk = self.tau(k, k)?;
        Ok(2.0
            * (t12 * t12 * tkk + t1k * t1k * t22 + t2k * t2k * t11
                - 2.0 * t12 * t1k * t2k
                - t11 * t22 * tkk))
    }

    pub fn max_abs_diff(&self, other: &VnTraceVector) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
