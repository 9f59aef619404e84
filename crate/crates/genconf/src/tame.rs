//! Equivariant self maps of the generic configuration space and their
//! constructive recovery.
//!
//! A tame map is `q -> sigma . tau(q) . q` where `sigma` is a fixed
//! permutation and `tau` is an invariant transform family: permuting the
//! points of `q` never changes `tau(q)`. Constant families are invariant for
//! free; the parametric family here feeds the sum of every cross ratio value
//! of the input, a symmetric function, into a matrix pencil.
//!
//! Running a map on functions sends each cross ratio to a cross ratio and
//! acts on the vertex set like a single permutation. Matching the frame
//! cross ratios of the image against their sources pins down a correcting
//! permutation `rho`, and the normalizing transform of `rho . f(q)` then
//! rebuilds `tau` pointwise. Nothing in the recovery path reads `sigma` or
//! `tau`; the map is only ever evaluated.

use std::collections::HashMap;

use crate::config::{act_permutation, act_transform, Configuration, ProjectiveTransform, Space};
use crate::dcr::{enumerate_dcrs, Dcr};
use crate::error::{Error, Result};
use crate::normalize::gamma;
use crate::perm::Permutation;
use crate::rng::SplitMix64;
use crate::scalar::GaussianRational;

/// The invariant transform family of a tame map.
#[derive(Clone, Debug)]
pub enum TauSpec {
    /// The same transform at every configuration.
    Constant(ProjectiveTransform),
    /// The pencil `base + u * direction` evaluated at the symmetric
    /// parameter `u(q)`: the sum of every cross ratio value of `q` (the
    /// full relabeling orbit of `orbit_dcr`).
    Parametric {
        orbit_dcr: Dcr,
        base: Vec<Vec<GaussianRational>>,
        direction: Vec<Vec<GaussianRational>>,
    },
}

/// A tame self map `q -> sigma . tau(q) . q`.
#[derive(Clone, Debug)]
pub struct TameMap {
    m: usize,
    n: usize,
    sigma: Permutation,
    tau: TauSpec,
}

impl TameMap {
    pub fn new(m: usize, n: usize, sigma: Permutation, tau: TauSpec) -> Result<Self> {
        if n < m + 3 {
            return Err(Error::Mismatch(format!(
                "tame maps need n >= m+3, got ({m}, {n})"
            )));
        }
        if sigma.n() != n {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} letters for n = {n}",
                sigma.n()
            )));
        }
        match &tau {
            TauSpec::Constant(t) => {
                if t.size() != m + 1 {
                    return Err(Error::Mismatch(format!(
                        "transform size {} does not match m+1 = {}",
                        t.size(),
                        m + 1
                    )));
                }
            }
            TauSpec::Parametric {
                orbit_dcr,
                base,
                direction,
            } => {
                if orbit_dcr.m() != m || orbit_dcr.max_index() > n {
                    return Err(Error::InvalidDcr(format!(
                        "orbit cross ratio {orbit_dcr} does not live on ({m}, {n})"
                    )));
                }
                for mat in [base, direction] {
                    if mat.len() != m + 1 || mat.iter().any(|r| r.len() != m + 1) {
                        return Err(Error::Mismatch(format!(
                            "pencil matrices must be {0} x {0}",
                            m + 1
                        )));
                    }
                }
            }
        }
        Ok(TameMap { m, n, sigma, tau })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn tau(&self) -> &TauSpec {
        &self.tau
    }

    /// The transform the family picks at `q`. Invariant under relabeling of
    /// `q` by construction.
    pub fn tau_at(&self, q: &Configuration) -> Result<ProjectiveTransform> {
        match &self.tau {
            TauSpec::Constant(t) => Ok(t.clone()),
            TauSpec::Parametric {
                orbit_dcr,
                base,
                direction,
            } => {
                // the relabeling orbit of any cross ratio is all of them
                let _ = orbit_dcr;
                let mut u = GaussianRational::zero();
                for d in enumerate_dcrs(self.m, self.n) {
                    u = &u + &d.evaluate(q)?;
                }
                let size = self.m + 1;
                let matrix: Vec<Vec<GaussianRational>> = (0..size)
                    .map(|i| {
                        (0..size)
                            .map(|j| &base[i][j] + &(&u * &direction[i][j]))
                            .collect()
                    })
                    .collect();
                ProjectiveTransform::new(matrix)
            }
        }
    }

    /// Evaluates the map: transform every point by `tau(q)`, then permute.
    pub fn eval(&self, q: &Configuration) -> Result<Configuration> {
        if q.m() != self.m || q.n() != self.n {
            return Err(Error::Mismatch(format!(
                "configuration ({}, {}) fed to a map on ({}, {})",
                q.m(),
                q.n(),
                self.m,
                self.n
            )));
        }
        let t = self.tau_at(q)?;
        let moved = act_transform(&t, q)?;
        act_permutation(&self.sigma, &moved)
    }

    /// The map as a plain evaluator; recovery code sees only this.
    pub fn as_black_box(&self) -> impl Fn(&Configuration) -> Result<Configuration> + '_ {
        move |q| self.eval(q)
    }
}

/// Evaluates a tame map on a configuration.
pub fn eval_map(f: &TameMap, q: &Configuration) -> Result<Configuration> {
    f.eval(q)
}

/// Seeded generator of tame maps for sweeps: a shuffled permutation plus
/// either a constant integer transform or an always-invertible shear pencil.
pub fn sample_tame_map(m: usize, n: usize, parametric: bool, seed: u64) -> TameMap {
    let mut rng = SplitMix64::new(seed);
    let sigma = Permutation::sample(n, &mut rng);
    let size = m + 1;
    let tau = if parametric {
        let c = ProjectiveTransform::sample_invertible(size, 5, &mut rng);
        // direction = c * unit(a, b) keeps base + u*direction = c * shear(u)
        // invertible for every u
        let a = rng.index(size);
        let b = (a + 1 + rng.index(size - 1)) % size;
        let mut direction = vec![vec![GaussianRational::zero(); size]; size];
        for i in 0..size {
            direction[i][b] = c.matrix()[i][a].clone();
        }
        let all = enumerate_dcrs(m, n);
        let orbit_dcr = all[rng.index(all.len())].clone();
        TauSpec::Parametric {
            orbit_dcr,
            base: c.matrix().to_vec(),
            direction,
        }
    } else {
        TauSpec::Constant(ProjectiveTransform::sample_invertible(size, 5, &mut rng))
    };
    TameMap::new(m, n, sigma, tau).unwrap()
}

/// Samples a generic configuration stream for probing maps.
fn probe_configs(m: usize, n: usize, count: usize, seed: u64) -> Result<Vec<Configuration>> {
    (0..count)
        .map(|i| Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(i as u64)))
        .collect()
}

/// Identifies cross ratios from values: a lookup table from value vectors at
/// the probe configurations to vertex candidates, with escalation when two
/// vertices collide on the probes.
struct DcrIdentifier {
    m: usize,
    n: usize,
    seed: u64,
    probes: Vec<Configuration>,
    images: Vec<Configuration>,
    vertices: Vec<Dcr>,
    table: HashMap<Vec<GaussianRational>, Vec<usize>>,
}

impl DcrIdentifier {
    const INITIAL_PROBES: usize = 3;
    const MAX_PROBES: usize = 6;

    fn new(
        f: &dyn Fn(&Configuration) -> Result<Configuration>,
        m: usize,
        n: usize,
        seed: u64,
    ) -> Result<Self> {
        let probes = probe_configs(m, n, Self::INITIAL_PROBES, seed)?;
        let images = probes.iter().map(f).collect::<Result<Vec<_>>>()?;
        let mut ident = DcrIdentifier {
            m,
            n,
            seed,
            probes,
            images,
            vertices: enumerate_dcrs(m, n),
            table: HashMap::new(),
        };
        ident.rebuild_table()?;
        Ok(ident)
    }

    fn rebuild_table(&mut self) -> Result<()> {
        self.table.clear();
        for (i, v) in self.vertices.iter().enumerate() {
            let key = self
                .probes
                .iter()
                .map(|q| v.evaluate(q))
                .collect::<Result<Vec<_>>>()?;
            self.table.entry(key).or_default().push(i);
        }
        Ok(())
    }

    fn escalate(
        &mut self,
        f: &dyn Fn(&Configuration) -> Result<Configuration>,
    ) -> Result<bool> {
        if self.probes.len() >= Self::MAX_PROBES {
            return Ok(false);
        }
        let offset = 0x5eed_0000u64 + self.probes.len() as u64;
        let extra = Configuration::sample_generic(
            self.m,
            self.n,
            Space::Projective,
            self.seed.wrapping_add(offset),
        )?;
        self.images.push(f(&extra)?);
        self.probes.push(extra);
        self.rebuild_table()?;
        Ok(true)
    }

    /// The vertex equal to `d` composed with the probed map.
    fn identify_composed(
        &mut self,
        f: &dyn Fn(&Configuration) -> Result<Configuration>,
        d: &Dcr,
    ) -> Result<Dcr> {
        loop {
            let key = self
                .images
                .iter()
                .map(|img| d.evaluate(img))
                .collect::<Result<Vec<_>>>()?;
            match self.table.get(&key).map(Vec::as_slice) {
                Some([unique]) => return Ok(self.vertices[*unique].clone()),
                Some(_) => {
                    if !self.escalate(f)? {
                        return Err(Error::InducedMapInconsistent(format!(
                            "{d} composed with the map matches several vertices"
                        )));
                    }
                }
                None => {
                    return Err(Error::InducedMapInconsistent(format!(
                        "{d} composed with the map matches no vertex"
                    )))
                }
            }
        }
    }
}

/// The action of `f` on cross ratios, computed symbolically from `sigma` and
/// verified numerically on sampled configurations.
///
/// Because cross ratios ignore the transform part of a tame map, the
/// composed function is the relabeling of `d` through the inverse of
/// `sigma`. A numeric mismatch would mean the map is not what it claims to
/// be and is reported as an error.
pub fn induced_map(f: &TameMap, d: &Dcr, seed: u64) -> Result<Dcr> {
    Ok(induced_map_batch(f, std::slice::from_ref(d), seed)?.pop().unwrap())
}

/// Batch version of [`induced_map`]: evaluates the map once per probe and
/// verifies every requested vertex against those images.
pub fn induced_map_batch(f: &TameMap, ds: &[Dcr], seed: u64) -> Result<Vec<Dcr>> {
    let probes = probe_configs(f.m(), f.n(), 3, seed)?;
    let images = probes
        .iter()
        .map(|q| f.eval(q))
        .collect::<Result<Vec<_>>>()?;
    let inv = f.sigma().inverse();
    let mut out = Vec::with_capacity(ds.len());
    for d in ds {
        let candidate = d.permuted(&inv);
        for (q, img) in probes.iter().zip(&images) {
            if candidate.evaluate(q)? != d.evaluate(img)? {
                return Err(Error::InducedMapInconsistent(format!(
                    "symbolic image {candidate} of {d} disagrees with an evaluation"
                )));
            }
        }
        out.push(candidate);
    }
    Ok(out)
}

/// The frame cross ratios whose values coordinatize the reduced space.
fn frame_dcrs(m: usize, n: usize) -> Vec<(usize, usize, Dcr)> {
    let mut out = Vec::new();
    for r in 1..=m {
        for s in m + 3..=n {
            out.push((r, s, crate::normalize::embed_p_dcr(m, r, s)));
        }
    }
    out
}

fn check_scope(m: usize, n: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::UnsupportedCase(
            "recovery needs m > 1; the frame constraints degenerate on the line".into(),
        ));
    }
    if n == 2 * m + 2 {
        return Err(Error::UnsupportedCase(format!(
            "n = 2m+2 = {n} is excluded from recovery"
        )));
    }
    if n < m + 3 {
        return Err(Error::Mismatch(format!("need n >= m+3, got ({m}, {n})")));
    }
    Ok(())
}

/// Finds a permutation `rho` such that composing the map with `rho` fixes
/// every frame cross ratio as a function.
///
/// The images of the frame cross ratios under the induced action are
/// identified from evaluations only; the index constraints they impose are
/// then propagated to a full permutation. A brute force sweep over S(n)
/// backs the propagation up at desk scale, and the returned permutation is
/// always re-verified against the defining fixed-point property.
pub fn find_rho_blackbox(
    f: &dyn Fn(&Configuration) -> Result<Configuration>,
    m: usize,
    n: usize,
    seed: u64,
) -> Result<Permutation> {
    check_scope(m, n)?;
    let frames = frame_dcrs(m, n);
    let mut ident = DcrIdentifier::new(f, m, n, seed)?;
    let mut targets: Vec<(usize, usize, Dcr, Dcr)> = Vec::new();
    for (r, s, d) in &frames {
        let image = ident.identify_composed(f, d)?;
        targets.push((*r, *s, d.clone(), image));
    }

    let mut pi = solve_frame_constraints(m, n, &targets);
    if pi.is_none() && n <= 8 {
        // desk-scale fallback: scan the whole group
        pi = Permutation::all(n)
            .into_iter()
            .find(|p| targets.iter().all(|(_, _, d, img)| &d.permuted(p) == img));
    }
    let Some(pi) = pi else {
        return Err(Error::TheoremViolation(format!(
            "no permutation matches the frame images on ({m}, {n})"
        )));
    };

    // verify the defining property: composing with rho fixes the frame
    let rho = pi;
    for (_, _, d, _) in &targets {
        let moved = d.permuted(&rho.inverse());
        let image = ident.identify_composed(f, &moved)?;
        if &image != d {
            return Err(Error::TheoremViolation(format!(
                "{d} is not restored after the correcting permutation"
            )));
        }
    }
    Ok(rho)
}

/// Direct constraint propagation: the essential supports of the frame
/// images determine the images of 1..m, and the Klein structure of each
/// quadruple then reads off the images of m+1, m+2 and every tail index.
fn solve_frame_constraints(
    m: usize,
    n: usize,
    targets: &[(usize, usize, Dcr, Dcr)],
) -> Option<Permutation> {
    let mut images = vec![0usize; n]; // 0 = unknown

    // union of essential supports per slot r: pi({1..m} \ {r})
    let mut ess_img: Vec<Option<Vec<usize>>> = vec![None; m + 1];
    for (r, _, _, img) in targets {
        let e = img.essential_support().to_vec();
        match &ess_img[*r] {
            None => ess_img[*r] = Some(e),
            Some(prev) if prev == &e => {}
            Some(_) => return None, // inconsistent images
        }
    }
    for r in 1..=m {
        // pi(r) lies in every other slot's set but not in slot r's own
        let own = ess_img[r].as_ref()?;
        let mut candidates: Option<Vec<usize>> = None;
        for (r2, e) in ess_img.iter().enumerate().skip(1) {
            if r2 == r {
                continue;
            }
            let e = e.as_ref()?;
            candidates = Some(match candidates {
                None => e.clone(),
                Some(prev) => prev.into_iter().filter(|v| e.contains(v)).collect(),
            });
        }
        let picks: Vec<usize> = candidates?
            .into_iter()
            .filter(|v| !own.contains(v))
            .collect();
        let [pick] = picks.as_slice() else {
            return None;
        };
        images[r - 1] = *pick;
    }

    // each frame quadruple (r, m+1, m+2, s) must land on a Klein
    // arrangement of the image quadruple; the known image of r selects the
    // arrangement uniquely
    for (r, s, _, img) in targets {
        let quad = img.quad();
        let orbit = [
            quad,
            [quad[1], quad[0], quad[3], quad[2]],
            [quad[2], quad[3], quad[0], quad[1]],
            [quad[3], quad[2], quad[1], quad[0]],
        ];
        let want_first = images[*r - 1];
        let arrangement = orbit.into_iter().find(|a| a[0] == want_first)?;
        for (slot, value) in [(*r, arrangement[0]), (m + 1, arrangement[1]),
                              (m + 2, arrangement[2]), (*s, arrangement[3])] {
            if images[slot - 1] == 0 {
                images[slot - 1] = value;
            } else if images[slot - 1] != value {
                return None;
            }
        }
    }

    if images.iter().any(|&v| v == 0) {
        return None;
    }
    Permutation::from_images(images).ok()
}

/// Convenience wrapper taking the map by value semantics.
pub fn find_rho(f: &TameMap, seed: u64) -> Result<Permutation> {
    find_rho_blackbox(&f.as_black_box(), f.m(), f.n(), seed)
}

/// The outcome of recovering a map from evaluations.
pub struct Recovered {
    pub sigma: Permutation,
    pub rho: Permutation,
    m: usize,
    n: usize,
}

impl Recovered {
    /// The invariant transform at `q`, rebuilt from normalizations:
    /// first normalize `q`, then undo the normalization of the permuted
    /// image.
    pub fn tau_at(
        &self,
        f: &dyn Fn(&Configuration) -> Result<Configuration>,
        q: &Configuration,
    ) -> Result<ProjectiveTransform> {
        let image = f(q)?;
        let corrected = act_permutation(&self.rho, &image)?;
        let g_q = gamma(q)?;
        let g_img = gamma(&corrected)?;
        Ok(g_q.then(&g_img.inverse()))
    }

    /// Rebuilds the image of `q` from the recovered data; must agree with
    /// the original map on generic input.
    pub fn eval(
        &self,
        f: &dyn Fn(&Configuration) -> Result<Configuration>,
        q: &Configuration,
    ) -> Result<Configuration> {
        let tau = self.tau_at(f, q)?;
        let moved = act_transform(&tau, &q.to_projective())?;
        act_permutation(&self.sigma, &moved)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Recovers the permutation part and the transform family of a map given
/// only as an evaluator.
pub fn recover(
    f: &dyn Fn(&Configuration) -> Result<Configuration>,
    m: usize,
    n: usize,
    seed: u64,
) -> Result<Recovered> {
    let rho = find_rho_blackbox(f, m, n, seed)?;
    Ok(Recovered {
        sigma: rho.inverse(),
        rho,
        m,
        n,
    })
}

/// The verdict of probing a map for strict equivariance.
#[derive(Debug)]
pub enum EquivarianceCheck {
    /// Relabeling the input relabels the output through a fixed group
    /// automorphism; its values on the adjacent transpositions are listed.
    Holds { generator_images: Vec<Permutation> },
    /// A generator and probe index where no consistent relabeling exists.
    Fails {
        generator: Permutation,
        probe: usize,
    },
}

impl EquivarianceCheck {
    pub fn holds(&self) -> bool {
        matches!(self, EquivarianceCheck::Holds { .. })
    }
}

/// Probes `f(theta q) = alpha(theta) f(q)` over the generators of the
/// relabeling group and seeded sample configurations.
pub fn check_strict_equivariance(
    f: &dyn Fn(&Configuration) -> Result<Configuration>,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<EquivarianceCheck> {
    let probes = probe_configs(m, n, samples.max(2), seed)?;
    let images: Vec<Configuration> = probes.iter().map(f).collect::<Result<_>>()?;
    let mut generator_images = Vec::new();
    for theta in Permutation::adjacent_transpositions(n) {
        let mut alpha: Option<Permutation> = None;
        for (idx, (q, fq)) in probes.iter().zip(&images).enumerate() {
            let moved = f(&act_permutation(&theta, q)?)?;
            let Some(pi) = match_by_rows(&moved, fq) else {
                return Ok(EquivarianceCheck::Fails {
                    generator: theta,
                    probe: idx,
                });
            };
            match &alpha {
                None => alpha = Some(pi),
                Some(prev) if prev == &pi => {}
                Some(_) => {
                    return Ok(EquivarianceCheck::Fails {
                        generator: theta,
                        probe: idx,
                    })
                }
            }
        }
        generator_images.push(alpha.expect("at least two probes"));
    }
    Ok(EquivarianceCheck::Holds { generator_images })
}

/// The permutation `pi` with `moved = pi . base`, when the rows match
/// projectively one to one.
fn match_by_rows(moved: &Configuration, base: &Configuration) -> Option<Permutation> {
    let n = base.n();
    let mut images = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for j in 1..=n {
        // find the unique row of `moved` proportional to row j of `base`
        let mut found = None;
        for i in 1..=n {
            if crate::config::rows_proportional(moved.row(i), base.row(j)) {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        let i = found?;
        if used[i] {
            return None;
        }
        used[i] = true;
        // row i of moved equals row j of base: pi maps j to i
        images[j - 1] = i;
    }
    Permutation::from_images(images).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{classify, DivisibilityComplex};
    use crate::dcr::divides;

    fn identity_map(m: usize, n: usize) -> TameMap {
        TameMap::new(
            m,
            n,
            Permutation::identity(n),
            TauSpec::Constant(ProjectiveTransform::identity(m + 1)),
        )
        .unwrap()
    }

    #[test]
    fn identity_map_fixes_configurations() {
        let f = identity_map(2, 5);
        let q = Configuration::sample_generic(2, 5, Space::Projective, 1).unwrap();
        assert_eq!(f.eval(&q).unwrap(), q);
    }

    #[test]
    fn constant_transform_acts_pointwise() {
        let mut rng = SplitMix64::new(3);
        let t = ProjectiveTransform::sample_invertible(3, 5, &mut rng);
        let f = TameMap::new(2, 5, Permutation::identity(5), TauSpec::Constant(t.clone()))
            .unwrap();
        let q = Configuration::sample_generic(2, 5, Space::Projective, 2).unwrap();
        assert_eq!(f.eval(&q).unwrap(), act_transform(&t, &q).unwrap());
    }

    #[test]
    fn tau_of_parametric_maps_is_invariant_under_relabeling() {
        let f = sample_tame_map(2, 6, true, 11);
        let q = Configuration::sample_generic(2, 6, Space::Projective, 4).unwrap();
        let t0 = f.tau_at(&q).unwrap();
        let mut rng = SplitMix64::new(8);
        for _ in 0..5 {
            let theta = Permutation::sample(6, &mut rng);
            let moved = act_permutation(&theta, &q).unwrap();
            let t1 = f.tau_at(&moved).unwrap();
            assert_eq!(t0.matrix(), t1.matrix());
        }
    }

    #[test]
    fn tame_maps_are_strictly_equivariant() {
        for (seed, parametric) in [(5u64, false), (6, true)] {
            let f = sample_tame_map(2, 5, parametric, seed);
            let verdict =
                check_strict_equivariance(&f.as_black_box(), 2, 5, 3, 100 + seed).unwrap();
            let EquivarianceCheck::Holds { generator_images } = verdict else {
                panic!("tame map failed the equivariance probe");
            };
            // the automorphism is conjugation by sigma
            for (theta, alpha) in Permutation::adjacent_transpositions(5)
                .into_iter()
                .zip(generator_images)
            {
                let conj = f
                    .sigma()
                    .compose(&theta)
                    .compose(&f.sigma().inverse());
                assert_eq!(alpha, conj);
            }
        }
    }

    #[test]
    fn row_wise_cheating_fails_the_equivariance_probe() {
        // applying different scalings to different rows breaks equivariance
        let cheat = |q: &Configuration| -> Result<Configuration> {
            let mut rows: Vec<Vec<GaussianRational>> = q.rows().to_vec();
            for (i, row) in rows.iter_mut().enumerate() {
                let w = GaussianRational::from_int(i as i64 + 2);
                row[0] = &row[0] * &w;
            }
            Configuration::new(q.m(), q.n(), q.space(), rows)
        };
        let verdict = check_strict_equivariance(&cheat, 2, 5, 3, 7).unwrap();
        assert!(!verdict.holds());
    }

    #[test]
    fn induced_action_is_the_inverse_relabeling() {
        let f = identity_map(2, 5);
        let d = Dcr::new(&[1], 2, 3, 4, 5).unwrap();
        assert_eq!(induced_map(&f, &d, 1).unwrap(), d);

        let swap = Permutation::transposition(5, 1, 2).unwrap();
        let f = TameMap::new(
            2,
            5,
            swap,
            TauSpec::Constant(ProjectiveTransform::identity(3)),
        )
        .unwrap();
        assert_eq!(
            induced_map(&f, &d, 1).unwrap(),
            Dcr::new(&[2], 1, 3, 4, 5).unwrap()
        );
    }

    #[test]
    fn induced_action_permutes_vertices_and_preserves_structure() {
        let f = sample_tame_map(2, 6, false, 21);
        let cx = DivisibilityComplex::build(2, 6).unwrap();
        let images = induced_map_batch(&f, cx.vertices(), 5).unwrap();
        let set: std::collections::HashSet<&Dcr> = images.iter().collect();
        assert_eq!(set.len(), cx.vertices().len());
        for (u, v) in cx.edges().into_iter().step_by(17) {
            let iu = &images[u];
            let iv = &images[v];
            assert!(divides(iu, iv));
            let before = classify(
                &crate::complex::Simplex::new(vec![
                    cx.vertices()[u].clone(),
                    cx.vertices()[v].clone(),
                ])
                .unwrap(),
            )
            .unwrap();
            let after = classify(
                &crate::complex::Simplex::new(vec![iu.clone(), iv.clone()]).unwrap(),
            )
            .unwrap();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn find_rho_for_pure_permutations() {
        let id = identity_map(2, 7);
        assert!(find_rho(&id, 9).unwrap().is_identity());

        let sigma = Permutation::from_images(vec![3, 1, 2, 5, 4, 6, 7]).unwrap();
        let f = TameMap::new(
            2,
            7,
            sigma.clone(),
            TauSpec::Constant(ProjectiveTransform::identity(3)),
        )
        .unwrap();
        let rho = find_rho(&f, 9).unwrap();
        assert_eq!(rho, sigma.inverse());

        // recovery of a pure permutation yields a trivial transform family
        let rec = recover(&f.as_black_box(), 2, 7, 10).unwrap();
        assert_eq!(rec.sigma, sigma);
        let q = Configuration::sample_generic(2, 7, Space::Projective, 900).unwrap();
        let tau = rec.tau_at(&f.as_black_box(), &q).unwrap();
        assert!(tau.projectively_equal(&ProjectiveTransform::identity(3)));
    }

    #[test]
    fn find_rho_rejects_out_of_scope_cases() {
        let f = identity_map(1, 4);
        assert!(matches!(
            find_rho(&f, 1),
            Err(Error::UnsupportedCase(_))
        ));
        // n = 2m+2 with m = 2
        let f = identity_map(2, 6);
        assert!(matches!(find_rho(&f, 1), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn propagated_rho_matches_brute_force() {
        for seed in [1u64, 2, 3] {
            let f = sample_tame_map(2, 7, seed % 2 == 0, seed);
            let frames = frame_dcrs(2, 7);
            let mut ident = DcrIdentifier::new(&f.as_black_box(), 2, 7, 50 + seed).unwrap();
            let targets: Vec<(usize, usize, Dcr, Dcr)> = frames
                .iter()
                .map(|(r, s, d)| {
                    let img = ident.identify_composed(&f.as_black_box(), d).unwrap();
                    (*r, *s, d.clone(), img)
                })
                .collect();
            let fast = solve_frame_constraints(2, 7, &targets).unwrap();
            let brute = Permutation::all(7)
                .into_iter()
                .find(|pi| targets.iter().all(|(_, _, d, img)| &d.permuted(pi) == img))
                .unwrap();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn recovery_round_trip_constant_tau() {
        let f = sample_tame_map(2, 7, false, 31);
        let rec = recover(&f.as_black_box(), 2, 7, 77).unwrap();
        assert_eq!(&rec.sigma, f.sigma());
        for seed in 500..503u64 {
            let q = Configuration::sample_generic(2, 7, Space::Projective, seed).unwrap();
            let rebuilt = rec.eval(&f.as_black_box(), &q).unwrap();
            assert!(rebuilt.projectively_equal(&f.eval(&q).unwrap()));
            // the recovered transform matches the hidden constant one
            let TauSpec::Constant(hidden) = f.tau() else {
                unreachable!()
            };
            let tau = rec.tau_at(&f.as_black_box(), &q).unwrap();
            assert!(tau.projectively_equal(hidden));
        }
    }

    #[test]
    fn recovery_round_trip_parametric_tau() {
        let f = sample_tame_map(3, 7, true, 41);
        let rec = recover(&f.as_black_box(), 3, 7, 88).unwrap();
        assert_eq!(&rec.sigma, f.sigma());
        for seed in 600..602u64 {
            let q = Configuration::sample_generic(3, 7, Space::Projective, seed).unwrap();
            let rebuilt = rec.eval(&f.as_black_box(), &q).unwrap();
            assert!(rebuilt.projectively_equal(&f.eval(&q).unwrap()));
        }
    }

    #[test]
    fn recovered_tau_is_invariant_on_relabeled_inputs() {
        let f = sample_tame_map(2, 7, true, 51);
        let rec = recover(&f.as_black_box(), 2, 7, 99).unwrap();
        let q = Configuration::sample_generic(2, 7, Space::Projective, 700).unwrap();
        let tau_q = rec.tau_at(&f.as_black_box(), &q).unwrap();
        let mut rng = SplitMix64::new(12);
        for _ in 0..3 {
            let theta = Permutation::sample(7, &mut rng);
            let moved = act_permutation(&theta, &q).unwrap();
            let tau_moved = rec.tau_at(&f.as_black_box(), &moved).unwrap();
            assert!(tau_moved.projectively_equal(&tau_q));
        }
    }

    #[test]
    fn quasitame_evaluation_on_affine_configurations() {
        // this transform rescales the last coordinate by 1 + z1: it throws
        // points with z1 = -1 off the chart and keeps everything else affine
        let t = ProjectiveTransform::new(vec![
            vec![GaussianRational::from_int(1), GaussianRational::from_int(0), GaussianRational::from_int(1)],
            vec![GaussianRational::from_int(0), GaussianRational::from_int(1), GaussianRational::from_int(0)],
            vec![GaussianRational::from_int(0), GaussianRational::from_int(0), GaussianRational::from_int(1)],
        ])
        .unwrap();
        let f = TameMap::new(2, 5, Permutation::identity(5), TauSpec::Constant(t)).unwrap();
        let q = Configuration::sample_generic(2, 5, Space::Affine, 12).unwrap();
        match f.eval(&q) {
            Ok(image) => {
                assert_eq!(image.space(), Space::Affine);
                for row in image.rows() {
                    assert!(row.last().unwrap().is_one());
                }
            }
            Err(Error::ImageNotAffine(_)) => {}
            Err(other) => panic!("unexpected error {other}"),
        }
    }
}
