//! Symmetric banded matrices with an LDL^T factorization.
//!
//! Beam assembly on a 1D mesh produces symmetric matrices whose half
//! bandwidth never exceeds 5 (two 3-DOF nodes per element), so a dense
//! solver would waste both memory and the chance to read stability
//! straight off the factorization: the signs of the D pivots tell whether
//! the matrix is positive definite, which is exactly the pull-in and
//! buckling indicator the solver needs. No pivoting is performed; the
//! systems here are either definite or mildly indefinite near a limit
//! point, and the factorization is only trusted through [`LdltFactor`]
//! checks.
//!
//! Storage is lower-band, column major: entry `(j + d, j)` for
//! `d in 0..=half_bandwidth` lives at `data[j * (hbw + 1) + d]`.

#[derive(Debug, thiserror::Error)]
#[error("LDL^T breakdown at pivot {index} (value {value})")]
pub struct FactorError {
    pub index: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    hbw: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        BandMatrix {
            n,
            hbw: half_bandwidth,
            data: vec![0.0; n * (half_bandwidth + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.hbw
    }

    fn idx(&self, col: usize, d: usize) -> usize {
        col * (self.hbw + 1) + d
    }

    /// Symmetric read; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if d > self.hbw || hi >= self.n {
            0.0
        } else {
            self.data[self.idx(lo, d)]
        }
    }

    /// Adds `v` at `(i, j)` and, implicitly, at `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        debug_assert!(hi < self.n && d <= self.hbw, "entry ({i},{j}) outside band");
        let at = self.idx(lo, d);
        self.data[at] += v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for j in 0..self.n {
            let diag = self.data[self.idx(j, 0)];
            y[j] += diag * x[j];
            let top = (j + self.hbw).min(self.n.saturating_sub(1));
            for i in j + 1..=top {
                let a = self.data[self.idx(j, i - j)];
                y[i] += a * x[j];
                y[j] += a * x[i];
            }
        }
        y
    }

    /// `self -= other`; shapes must match.
    pub fn sub_assign(&mut self, other: &BandMatrix) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.hbw, other.hbw);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
    }

    /// `self += other`; shapes must match.
    pub fn add_assign(&mut self, other: &BandMatrix) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.hbw, other.hbw);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    /// Congruence scaling `A <- diag(s) * A * diag(s)`.
    pub fn scale_symmetric(&mut self, s: &[f64]) {
        assert_eq!(s.len(), self.n);
        for j in 0..self.n {
            let top = (j + self.hbw).min(self.n.saturating_sub(1));
            for i in j..=top {
                let at = self.idx(j, i - j);
                self.data[at] *= s[i] * s[j];
            }
        }
    }

    pub fn max_abs_diag(&self) -> f64 {
        (0..self.n)
            .map(|j| self.data[self.idx(j, 0)].abs())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                a[i][j] = self.get(i, j);
            }
        }
        a
    }

    /// Factors `A = L D L^T` with unit lower-triangular `L`. Fails only on
    /// an exactly zero or non-finite pivot; small or negative pivots are
    /// left for the caller to judge via [`LdltFactor::is_positive_definite`]
    /// and [`LdltFactor::min_pivot`].
    pub fn ldlt(&self) -> Result<LdltFactor, FactorError> {
        let n = self.n;
        let hbw = self.hbw;
        let mut lower = vec![0.0; n * (hbw + 1)];
        let mut diag = vec![0.0; n];
        for j in 0..n {
            let k0 = j.saturating_sub(hbw);
            let mut dj = self.data[self.idx(j, 0)];
            for k in k0..j {
                let ljk = lower[k * (hbw + 1) + (j - k)];
                dj -= ljk * ljk * diag[k];
            }
            if dj == 0.0 || !dj.is_finite() {
                return Err(FactorError {
                    index: j,
                    value: dj,
                });
            }
            diag[j] = dj;
            let top = (j + hbw).min(n.saturating_sub(1));
            for i in j + 1..=top {
                let mut lij = self.data[self.idx(j, i - j)];
                for k in i.saturating_sub(hbw)..j {
                    let lik = lower[k * (hbw + 1) + (i - k)];
                    let ljk = lower[k * (hbw + 1) + (j - k)];
                    lij -= lik * ljk * diag[k];
                }
                lower[j * (hbw + 1) + (i - j)] = lij / dj;
            }
        }
        Ok(LdltFactor {
            n,
            hbw,
            lower,
            diag,
        })
    }
}

#[derive(Debug, Clone)]
pub struct LdltFactor {
    n: usize,
    hbw: usize,
    lower: Vec<f64>,
    diag: Vec<f64>,
}

impl LdltFactor {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let mut x = b.to_vec();
        for j in 0..self.n {
            let top = (j + self.hbw).min(self.n.saturating_sub(1));
            for i in j + 1..=top {
                x[i] -= self.lower[j * (self.hbw + 1) + (i - j)] * x[j];
            }
        }
        for i in 0..self.n {
            x[i] /= self.diag[i];
        }
        for j in (0..self.n).rev() {
            let top = (j + self.hbw).min(self.n.saturating_sub(1));
            for i in j + 1..=top {
                x[j] -= self.lower[j * (self.hbw + 1) + (i - j)] * x[i];
            }
        }
        x
    }

    /// All pivots strictly positive: the factored matrix was positive
    /// definite. A single non-positive pivot means an unstable (or
    /// critical) configuration.
    pub fn is_positive_definite(&self) -> bool {
        self.diag.iter().all(|&d| d > 0.0 && d.is_finite())
    }

    pub fn min_pivot(&self) -> f64 {
        self.diag.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_pivot(&self) -> f64 {
        self.diag.iter().map(|d| d.abs()).fold(0.0, f64::max)
    }

    pub fn pivots(&self) -> &[f64] {
        &self.diag
    }
}
