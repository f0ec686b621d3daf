//! Transposition weights and the position path tables derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacent-transposition weights `w_1..w_{n-1}`; `w_k` is the cost of
/// exchanging the candidates at ranks `k` and `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some(bad) = w.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weights must be finite and non-negative, got {bad}"
            )));
        }
        Ok(WeightVector(w))
    }

    pub fn uniform(n: usize) -> Self {
        WeightVector(vec![1.0; n.saturating_sub(1)])
    }

    /// Number of ranks these weights apply to.
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Weight of swapping ranks `k` and `k + 1` (1-based).
    pub fn get(&self, k: usize) -> f64 {
        self.0[k - 1]
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0)
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;
    fn try_from(w: Vec<f64>) -> Result<Self> {
        WeightVector::new(w)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// `w(k:l) = w_k + ... + w_{l-1}`, the cost of walking rank `l` up to rank `k`
/// one adjacent step at a time.
pub fn prefix_weight(w: &WeightVector, k: usize, l: usize) -> Result<f64> {
    if k == 0 || k >= l {
        return Err(Error::InvalidRange { k, l });
    }
    if l > w.n() {
        return Err(Error::PositionOutOfRange {
            position: l,
            n: w.n(),
        });
    }
    Ok(w.0[k - 1..l - 1].iter().sum())
}

/// Symmetric weights on arbitrary position transpositions `(a b)`.
/// Entries may be `+inf` to forbid a transposition.
#[derive(Debug, Clone, PartialEq)]
pub struct TranspositionWeights {
    n: usize,
    phi: Vec<f64>,
}

impl TranspositionWeights {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let mut phi = vec![0.0; n * n];
        for a in 1..=n {
            for b in (a + 1)..=n {
                let x = f(a, b);
                if x.is_nan() || x < 0.0 {
                    return Err(Error::InvalidWeights(format!(
                        "phi({a},{b}) = {x} is not a non-negative weight"
                    )));
                }
                phi[(a - 1) * n + (b - 1)] = x;
                phi[(b - 1) * n + (a - 1)] = x;
            }
        }
        Ok(TranspositionWeights { n, phi })
    }

    /// Builds from a full matrix, rejecting asymmetric input.
    #[allow(clippy::needless_range_loop)]
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (rows[a][b], rows[b][a]);
                if a != b && x != y && !(x.is_infinite() && y.is_infinite()) {
                    return Err(Error::InvalidWeights(format!(
                        "phi is not symmetric at ({}, {})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        TranspositionWeights::from_fn(n, |a, b| rows[a - 1][b - 1])
    }

    /// Cayley weights: every transposition costs 1.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 1.0)
    }

    /// `phi(a, b) = |a - b|`.
    pub fn footrule(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, b| a.abs_diff(b) as f64)
    }

    /// Weighted Kendall as a transposition weight: adjacent swaps cost `w`,
    /// everything else is forbidden.
    pub fn from_adjacent(w: &WeightVector) -> Self {
        let n = w.n();
        Self::from_fn(n, |a, b| if b == a + 1 { w.get(a) } else { f64::INFINITY })
            .expect("adjacent weights are validated")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.phi[(a - 1) * self.n + (b - 1)]
    }
}

/// `f(i, j)`: weight of the cheapest path between positions `i` and `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTable {
    n: usize,
    f: Vec<f64>,
}

impl PathTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.f[(i - 1) * self.n + (j - 1)]
    }

    /// False if some pair of positions is unreachable.
    pub fn is_finite(&self) -> bool {
        self.f.iter().all(|x| x.is_finite())
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.f.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

/// Path table of a weighted Kendall distance: positions sit on a line, so
/// `f(i, j)` is a prefix-sum difference.
pub fn path_table_from_adjacent(w: &WeightVector) -> PathTable {
    let n = w.n();
    let mut cum = vec![0.0; n];
    for k in 1..n {
        cum[k] = cum[k - 1] + w.get(k);
    }
    let mut f = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            // summed directly rather than cum[j] - cum[i] so entries equal prefix_weight exactly
            let x: f64 = w.as_slice()[i..j].iter().sum();
            f[i * n + j] = x;
            f[j * n + i] = x;
        }
    }
    PathTable { n, f }
}

/// All-pairs shortest paths on the complete graph over positions with edge
/// weights `phi` (Floyd–Warshall). Unreachable pairs stay `+inf`.
pub fn path_table_general(phi: &TranspositionWeights) -> PathTable {
    let n = phi.n();
    let mut f = phi.phi.clone();
    for i in 0..n {
        f[i * n + i] = 0.0;
    }
    for k in 0..n {
        for i in 0..n {
            let ik = f[i * n + k];
            if ik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = ik + f[k * n + j];
                if cand < f[i * n + j] {
                    f[i * n + j] = cand;
                }
            }
        }
    }
    PathTable { n, f }
}
