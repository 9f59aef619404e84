//! The canonical normalization of a generic configuration.
//!
//! Every generic projective configuration is carried by a unique projective
//! transform onto the standard frame: the first m+1 points become the basis
//! vectors and the (m+2)-nd becomes the all-ones point. The transform is
//! assembled from the adjugate of the leading (m+1) x (m+1) block, with each
//! column rescaled by the complementary frame minors and then cleared of
//! denominators, so the matrix stays polynomial in the input.

use crate::config::{act_transform, Configuration, ProjectiveTransform, Space};
use crate::dcr::Dcr;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A generic projective configuration whose first m+1 points are the
/// standard basis and whose (m+2)-nd point is all ones, each up to a row
/// scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedConfiguration(Configuration);

impl ReducedConfiguration {
    pub fn try_new(config: Configuration) -> Result<Self> {
        if !is_reduced(&config) {
            return Err(Error::Mismatch(
                "configuration is not in the reduced frame".into(),
            ));
        }
        Ok(ReducedConfiguration(config))
    }

    pub fn as_config(&self) -> &Configuration {
        &self.0
    }

    pub fn into_config(self) -> Configuration {
        self.0
    }
}

/// True iff the reduced-frame invariants hold: projective, generic, first
/// m+1 rows proportional to the basis vectors, row m+2 proportional to the
/// all-ones vector.
pub fn is_reduced(config: &Configuration) -> bool {
    if config.space() != Space::Projective {
        return false;
    }
    let m = config.m();
    for i in 1..=m + 1 {
        let row = config.row(i);
        if row[i - 1].is_zero() {
            return false;
        }
        if row
            .iter()
            .enumerate()
            .any(|(c, x)| c != i - 1 && !x.is_zero())
        {
            return false;
        }
    }
    let w = config.row(m + 2);
    if w[0].is_zero() || w.iter().any(|x| x != &w[0]) {
        return false;
    }
    config.is_generic()
}

/// The unique transform that carries a generic configuration into the
/// reduced frame.
///
/// Affine input is first viewed through its homogeneous rows; the result is
/// always projective data.
pub fn gamma(config: &Configuration) -> Result<ProjectiveTransform> {
    let q = config.to_projective();
    let m = q.m();
    if let Some(idx) = q.vanishing_minor() {
        return Err(Error::NotGeneric(format!(
            "minor {idx:?} vanishes, no normalization exists"
        )));
    }

    // adjugate of the leading block: rows 1..m+1
    let block: Vec<Vec<GaussianRational>> = (1..=m + 1).map(|i| q.row(i).to_vec()).collect();
    let adj = adjugate(&block);

    // frame minors: the leading block with row j replaced by row m+2
    let frame_minors: Vec<GaussianRational> = (1..=m + 1)
        .map(|j| {
            let mut rows = block.clone();
            rows[j - 1] = q.row(m + 2).to_vec();
            crate::config::determinant(rows)
        })
        .collect();

    // scale column j by the product of all frame minors except the j-th,
    // clearing every denominator at once
    let mut matrix = vec![vec![GaussianRational::zero(); m + 1]; m + 1];
    for j in 0..m + 1 {
        let mut scale = GaussianRational::one();
        for (l, d) in frame_minors.iter().enumerate() {
            if l != j {
                scale = &scale * d;
            }
        }
        for i in 0..m + 1 {
            matrix[i][j] = &adj[i][j] * &scale;
        }
    }
    ProjectiveTransform::new(matrix)
}

fn adjugate(block: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let k = block.len();
    let mut adj = vec![vec![GaussianRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let sub: Vec<Vec<GaussianRational>> = (0..k)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..k)
                        .filter(|&c| c != i)
                        .map(|c| block[r][c].clone())
                        .collect()
                })
                .collect();
            let d = crate::config::determinant(sub);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Splits a generic configuration into its normalizing transform and its
/// reduced representative.
pub fn decompose(config: &Configuration) -> Result<(ProjectiveTransform, ReducedConfiguration)> {
    let g = gamma(config)?;
    let reduced = act_transform(&g, &config.to_projective())?;
    Ok((g, ReducedConfiguration::try_new(reduced)?))
}

/// Rebuilds the configuration with normalizing transform `t` and reduced
/// representative `reduced`: applies the inverse of `t`.
pub fn compose(t: &ProjectiveTransform, reduced: &ReducedConfiguration) -> Result<Configuration> {
    act_transform(&t.inverse(), reduced.as_config())
}

/// Coordinates of the reduced space: the m x (n-m-2) matrix of cross ratio
/// values `1 - z(t,m+1)/z(t,s)` for point t = m+3..n and slot s = 1..m.
/// Injective on reduced configurations; every entry omits 0 and 1.
pub fn embed_p(reduced: &ReducedConfiguration) -> Vec<Vec<GaussianRational>> {
    let q = reduced.as_config();
    let m = q.m();
    let n = q.n();
    (1..=m)
        .map(|s| {
            (m + 3..=n)
                .map(|t| {
                    let last = q.entry(t, m + 1);
                    let slot = q.entry(t, s);
                    &GaussianRational::one() - &(last / slot)
                })
                .collect()
        })
        .collect()
}

/// The cross ratio whose value is the embedding entry (s, t).
pub fn embed_p_dcr(m: usize, s: usize, t: usize) -> Dcr {
    let ess: Vec<usize> = (1..=m).filter(|&i| i != s).collect();
    Dcr::new(&ess, s, m + 1, m + 2, t).unwrap()
}
