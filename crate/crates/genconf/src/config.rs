//! Ordered point configurations in projective or affine space, their maximal
//! minors, the genericity predicate, seeded sampling and the group actions.
//!
//! A configuration is kept as an n x (m+1) matrix of homogeneous coordinate
//! rows. Points act as row vectors, so a projective transform multiplies each
//! row from the right. All indices are 1-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rng::SplitMix64;
use crate::scalar::GaussianRational;
use crate::util::combinations;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Space {
    Projective,
    Affine,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Projective => "projective",
            Space::Affine => "affine",
        }
    }

    pub fn parse(s: &str) -> Result<Space> {
        match s {
            "projective" => Ok(Space::Projective),
            "affine" => Ok(Space::Affine),
            other => Err(Error::Parse(format!("unknown space {other:?}"))),
        }
    }
}

/// An ordered configuration of n points, each a coordinate row of length m+1.
///
/// Affine rows carry the last coordinate exactly 1; projective rows are
/// nonzero and only meaningful up to a row-wise scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct Configuration {
    m: usize,
    n: usize,
    space: Space,
    rows: Vec<Vec<GaussianRational>>,
}

impl Configuration {
    pub fn new(
        m: usize,
        n: usize,
        space: Space,
        rows: Vec<Vec<GaussianRational>>,
    ) -> Result<Self> {
        if m < 1 {
            return Err(Error::Mismatch("dimension m must be at least 1".into()));
        }
        if n < m + 3 {
            return Err(Error::Mismatch(format!(
                "need at least m+3 = {} points, got n = {n}",
                m + 3
            )));
        }
        if rows.len() != n {
            return Err(Error::Mismatch(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m + 1 {
                return Err(Error::Mismatch(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    m + 1
                )));
            }
            match space {
                Space::Affine => {
                    if !row[m].is_one() {
                        return Err(Error::Mismatch(format!(
                            "affine row {} must end with 1",
                            i + 1
                        )));
                    }
                }
                Space::Projective => {
                    if row.iter().all(GaussianRational::is_zero) {
                        return Err(Error::Mismatch(format!(
                            "projective row {} is the zero vector",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(Configuration { m, n, space, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn rows(&self) -> &[Vec<GaussianRational>] {
        &self.rows
    }

    /// Coordinate row of point `i` (1-based).
    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.rows[i - 1]
    }

    /// Entry `z_{i,j}`, both indices 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.rows[i - 1][j - 1]
    }

    /// The same rows viewed projectively. Affine rows are already valid
    /// homogeneous coordinates because of the trailing 1.
    pub fn to_projective(&self) -> Configuration {
        Configuration {
            m: self.m,
            n: self.n,
            space: Space::Projective,
            rows: self.rows.clone(),
        }
    }

    /// The (m+1) x (m+1) determinant of the rows selected by `idx`, in that
    /// order; alternating under transpositions of `idx`.
    pub fn minor(&self, idx: &[usize]) -> Result<GaussianRational> {
        if idx.len() != self.m + 1 {
            return Err(Error::InvalidMultiindex(format!(
                "expected {} indices, got {}",
                self.m + 1,
                idx.len()
            )));
        }
        let mut seen = vec![false; self.n + 1];
        for &i in idx {
            if i == 0 || i > self.n {
                return Err(Error::InvalidMultiindex(format!(
                    "index {i} out of range 1..={}",
                    self.n
                )));
            }
            if seen[i] {
                return Err(Error::InvalidMultiindex(format!("index {i} repeated")));
            }
            seen[i] = true;
        }
        let mat: Vec<Vec<GaussianRational>> =
            idx.iter().map(|&i| self.rows[i - 1].clone()).collect();
        Ok(determinant(mat))
    }

    /// True iff every maximal minor is nonzero, i.e. no m+1 of the points lie
    /// on a hyperplane.
    pub fn is_generic(&self) -> bool {
        self.vanishing_minor().is_none()
    }

    /// First vanishing maximal minor in lexicographic order, if any.
    pub fn vanishing_minor(&self) -> Option<Vec<usize>> {
        let pool: Vec<usize> = (1..=self.n).collect();
        combinations(&pool, self.m + 1)
            .into_iter()
            .find(|idx| self.minor(idx).unwrap().is_zero())
    }

    /// Seeded rejection sampling of a generic configuration with integer
    /// entries in `[-10n, 10n]`. Deterministic for a fixed seed; projective
    /// rows are left unnormalized.
    pub fn sample_generic(m: usize, n: usize, space: Space, seed: u64) -> Result<Configuration> {
        const MAX_ROUNDS: usize = 1000;
        if m < 1 || n < m + 3 {
            return Err(Error::Mismatch(format!(
                "sampling needs m >= 1 and n >= m+3, got ({m}, {n})"
            )));
        }
        let bound = 10 * n as i64;
        let mut rng = SplitMix64::new(seed);
        for _ in 0..MAX_ROUNDS {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let row = loop {
                    let mut row: Vec<GaussianRational> = (0..=m)
                        .map(|_| GaussianRational::from_int(rng.int_in(-bound, bound)))
                        .collect();
                    match space {
                        Space::Affine => {
                            row[m] = GaussianRational::one();
                            break row;
                        }
                        Space::Projective => {
                            if !row.iter().all(GaussianRational::is_zero) {
                                break row;
                            }
                        }
                    }
                };
                rows.push(row);
            }
            let config = Configuration::new(m, n, space, rows)?;
            if config.is_generic() {
                return Ok(config);
            }
        }
        Err(Error::SamplingExhausted(MAX_ROUNDS))
    }

    /// Row-wise equality up to a nonzero scalar per row. Compares coordinate
    /// data only, so an affine configuration equals its projective view.
    pub fn projectively_equal(&self, other: &Configuration) -> bool {
        self.m == other.m
            && self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(u, v)| rows_proportional(u, v))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Configuration({}, m={}, n={})", self.space.as_str(), self.m, self.n)?;
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// True iff `u = c v` for some nonzero scalar `c`.
pub(crate) fn rows_proportional(u: &[GaussianRational], v: &[GaussianRational]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(a) = u.iter().position(|x| !x.is_zero()) else {
        return v.iter().all(GaussianRational::is_zero);
    };
    if v[a].is_zero() {
        return false;
    }
    // cross-multiplication avoids any division preference
    u.iter()
        .zip(v)
        .all(|(ui, vi)| &(ui * &v[a]) == &(vi * &u[a]))
}

/// Exact determinant by fraction-based Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let k = m.len();
    debug_assert!(m.iter().all(|r| r.len() == k));
    let mut det = GaussianRational::one();
    let mut flip = false;
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != col {
            m.swap(p, col);
            flip = !flip;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..k {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    if flip {
        -det
    } else {
        det
    }
}

/// An element of PGL(m+1) acting on coordinate rows from the right.
///
/// Two transforms are the same group element iff their matrices agree up to
/// one global nonzero scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectiveTransform {
    matrix: Vec<Vec<GaussianRational>>,
}

impl ProjectiveTransform {
    pub fn new(matrix: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let k = matrix.len();
        if k < 2 || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Mismatch(
                "transform matrix must be square of size m+1 >= 2".into(),
            ));
        }
        let t = ProjectiveTransform { matrix };
        if t.det().is_zero() {
            return Err(Error::SingularTransform(
                "matrix has zero determinant".into(),
            ));
        }
        Ok(t)
    }

    pub fn identity(size: usize) -> Self {
        let matrix = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == j {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ProjectiveTransform { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<GaussianRational>] {
        &self.matrix
    }

    pub fn det(&self) -> GaussianRational {
        determinant(self.matrix.clone())
    }

    /// The adjugate matrix: the projective inverse, kept free of divisions.
    pub fn inverse(&self) -> ProjectiveTransform {
        let k = self.size();
        let mut adj = vec![vec![GaussianRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                // cofactor of entry (j, i)
                let sub: Vec<Vec<GaussianRational>> = (0..k)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..k)
                            .filter(|&c| c != i)
                            .map(|c| self.matrix[r][c].clone())
                            .collect()
                    })
                    .collect();
                let d = determinant(sub);
                adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        ProjectiveTransform { matrix: adj }
    }

    /// Group product "apply `self` first, then `next`". With the row action
    /// this is the plain matrix product `self.matrix * next.matrix`.
    pub fn then(&self, next: &ProjectiveTransform) -> ProjectiveTransform {
        assert_eq!(self.size(), next.size(), "composing transforms of mixed size");
        let k = self.size();
        let mut out = vec![vec![GaussianRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = GaussianRational::zero();
                for l in 0..k {
                    acc = &acc + &(&self.matrix[i][l] * &next.matrix[l][j]);
                }
                out[i][j] = acc;
            }
        }
        ProjectiveTransform { matrix: out }
    }

    pub fn apply_to_row(&self, row: &[GaussianRational]) -> Vec<GaussianRational> {
        let k = self.size();
        assert_eq!(row.len(), k);
        (0..k)
            .map(|j| {
                let mut acc = GaussianRational::zero();
                for l in 0..k {
                    acc = &acc + &(&row[l] * &self.matrix[l][j]);
                }
                acc
            })
            .collect()
    }

    pub fn projectively_equal(&self, other: &ProjectiveTransform) -> bool {
        self.size() == other.size()
            && rows_proportional(
                &self.matrix.concat(),
                &other.matrix.concat(),
            )
    }

    /// Seeded random invertible matrix with integer entries in `[-bound, bound]`.
    pub fn sample_invertible(size: usize, bound: i64, rng: &mut SplitMix64) -> ProjectiveTransform {
        loop {
            let matrix: Vec<Vec<GaussianRational>> = (0..size)
                .map(|_| {
                    (0..size)
                        .map(|_| GaussianRational::from_int(rng.int_in(-bound, bound)))
                        .collect()
                })
                .collect();
            if let Ok(t) = ProjectiveTransform::new(matrix) {
                return t;
            }
        }
    }
}

impl fmt::Debug for ProjectiveTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ProjectiveTransform(size={})", self.size())?;
        for row in &self.matrix {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// The left S(n) action: row `i` of the result is row `σ^{-1}(i)` of the input.
pub fn act_permutation(sigma: &Permutation, config: &Configuration) -> Result<Configuration> {
    if sigma.n() != config.n() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of {} letters applied to {} points",
            sigma.n(),
            config.n()
        )));
    }
    let inv = sigma.inverse();
    let rows = (1..=config.n())
        .map(|i| config.row(inv.apply(i)).to_vec())
        .collect();
    Configuration::new(config.m(), config.n(), config.space(), rows)
}

/// The diagonal action of a projective transform on every point.
///
/// For affine input the image is dehomogenized; a point sent to the
/// hyperplane at infinity is reported as `ImageNotAffine`, which is exactly
/// the failure mode that separates quasitame from tame data.
pub fn act_transform(t: &ProjectiveTransform, config: &Configuration) -> Result<Configuration> {
    if t.size() != config.m() + 1 {
        return Err(Error::Mismatch(format!(
            "transform size {} does not match m+1 = {}",
            t.size(),
            config.m() + 1
        )));
    }
    let m = config.m();
    let mut rows = Vec::with_capacity(config.n());
    for i in 1..=config.n() {
        let mut image = t.apply_to_row(config.row(i));
        if config.space() == Space::Affine {
            if image[m].is_zero() {
                return Err(Error::ImageNotAffine(format!(
                    "image of point {i} has last coordinate 0"
                )));
            }
            let scale = image[m].inv();
            image = image.iter().map(|x| x * &scale).collect();
            image[m] = GaussianRational::one();
        }
        rows.push(image);
    }
    Configuration::new(config.m(), config.n(), config.space(), rows)
}
