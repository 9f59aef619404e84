//! Acceptance suite: one test per criterion, every comparison exact.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion PASS lines.

use std::collections::BTreeSet;
use std::time::Instant;

use genconf::complex::{
    classify, normal_simplex, ordered_orbit_size, stabilizer, DivisibilityComplex, Simplex,
    SimplexType,
};
use genconf::config::{act_transform, Configuration, ProjectiveTransform, Space};
use genconf::dcr::{
    as_dcr, dcr_count, divides, divisor_candidates, enumerate_dcrs, formal_quotient,
    plucker_defect, Dcr,
};
use genconf::normalize::{compose, decompose, gamma, is_reduced};
use genconf::rng::SplitMix64;
use genconf::scalar::GaussianRational;
use genconf::tame::{induced_map_batch, recover, sample_tame_map};

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn random_distinct(rng: &mut SplitMix64, count: usize, n: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut pool);
    pool.truncate(count);
    pool
}

/// Raw integer configuration without any genericity rejection; zero rows are
/// resampled to keep the rows valid homogeneous coordinates.
fn raw_integer_config(m: usize, n: usize, seed: u64) -> Configuration {
    let mut rng = SplitMix64::new(seed);
    let bound = 10 * n as i64;
    let rows: Vec<Vec<GaussianRational>> = (0..n)
        .map(|_| loop {
            let row: Vec<GaussianRational> = (0..=m)
                .map(|_| GaussianRational::from_int(rng.int_in(-bound, bound)))
                .collect();
            if !row.iter().all(GaussianRational::is_zero) {
                break row;
            }
        })
        .collect();
    Configuration::new(m, n, Space::Projective, rows).unwrap()
}

#[test]
fn criterion_01_three_term_minor_identity() {
    let start = Instant::now();
    for (m, n) in [(2usize, 5usize), (3, 6), (4, 7)] {
        for i in 0..100u64 {
            let q = raw_integer_config(m, n, 1000 * m as u64 + i);
            let mut rng = SplitMix64::new(i);
            for _ in 0..3 {
                let idx = random_distinct(&mut rng, m + 3, n);
                let (ess, quad) = idx.split_at(m - 1);
                let defect =
                    plucker_defect(&q, ess, quad[0], quad[1], quad[2], quad[3]).unwrap();
                assert!(defect.is_zero(), "nonzero defect at ({m},{n}) seed {i}");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("[criterion 01] PASS three-term minor identity, {elapsed:?}");
}

#[test]
fn criterion_02_values_omit_zero_and_one() {
    for (m, n) in [(2usize, 5usize), (3, 6)] {
        let all = enumerate_dcrs(m, n);
        for i in 0..100u64 {
            let q = Configuration::sample_generic(m, n, Space::Projective, 7000 + i).unwrap();
            for d in &all {
                let v = d.evaluate(&q).unwrap();
                assert!(
                    !v.is_zero() && !v.is_one(),
                    "{d} hit a forbidden value on seed {i}"
                );
            }
        }
    }
    println!("[criterion 02] PASS cross ratio values omit 0 and 1");
}

#[test]
fn criterion_03_projective_invariance() {
    let mut rng = SplitMix64::new(333);
    for (m, n) in [(2usize, 6usize), (3, 6)] {
        let all = enumerate_dcrs(m, n);
        for ti in 0..20u64 {
            let t = ProjectiveTransform::sample_invertible(m + 1, 9, &mut rng);
            for qi in 0..10u64 {
                // reuse configurations across transforms via seeds
                let q = Configuration::sample_generic(
                    m,
                    n,
                    Space::Projective,
                    9000 + 100 * ti + qi,
                )
                .unwrap();
                let tq = act_transform(&t, &q).unwrap();
                for _ in 0..20 {
                    let d = &all[rng.index(all.len())];
                    assert_eq!(
                        d.evaluate(&q).unwrap(),
                        d.evaluate(&tq).unwrap(),
                        "{d} moved under a projective transform"
                    );
                }
            }
        }
    }
    println!("[criterion 03] PASS projective invariance");
}

#[test]
fn criterion_04_normalization() {
    let mut rng = SplitMix64::new(444);
    for (m, n) in [(2usize, 6usize), (3, 6)] {
        for i in 0..10u64 {
            let q = Configuration::sample_generic(m, n, Space::Projective, 11_000 + i).unwrap();
            let g = gamma(&q).unwrap();
            let reduced = act_transform(&g, &q).unwrap();
            assert!(is_reduced(&reduced), "image not in the reduced frame");

            let t = ProjectiveTransform::sample_invertible(m + 1, 9, &mut rng);
            let tq = act_transform(&t, &q).unwrap();
            let reduced_tq = act_transform(&gamma(&tq).unwrap(), &tq).unwrap();
            assert!(
                reduced_tq.projectively_equal(&reduced),
                "normalization depends on the orbit representative"
            );

            let (g2, r2) = decompose(&q).unwrap();
            let back = compose(&g2, &r2).unwrap();
            assert!(back.projectively_equal(&q), "round trip failed");
        }
    }
    println!("[criterion 04] PASS normalization and decomposition");
}

#[test]
fn criterion_05_dimension_formula() {
    for (m, n) in [
        (2usize, 5usize),
        (2, 6),
        (2, 7),
        (2, 8),
        (3, 6),
        (3, 7),
        (3, 9),
    ] {
        let start = Instant::now();
        let cx = DivisibilityComplex::build(m, n).unwrap();
        let dim = cx.dimension();
        let elapsed = start.elapsed();
        let want = (n as i64 - m as i64 - 3).max(m as i64 - 1) as usize;
        assert_eq!(dim, want, "dimension of ({m},{n})");
        assert!(
            elapsed.as_secs_f64() < 60.0,
            "({m},{n}) took {elapsed:?}, budget 60 s"
        );
    }
    println!("[criterion 05] PASS dimension formula on all seven pairs");
}

#[test]
fn criterion_06_orbit_structure() {
    let cx27 = DivisibilityComplex::build(2, 7).unwrap();
    let cx28 = DivisibilityComplex::build(2, 8).unwrap();
    let cx37 = DivisibilityComplex::build(3, 7).unwrap();

    for (cx, label) in [(&cx27, "(2,7)"), (&cx28, "(2,8)"), (&cx37, "(3,7)")] {
        assert_eq!(cx.orbit_count(0), 1, "vertex orbits of {label}");
    }

    // classify is constant on every positive-dimensional orbit
    for (cx, t) in [(&cx27, 1usize), (&cx28, 2), (&cx37, 1), (&cx37, 2)] {
        let simplices = cx.simplices(t);
        for orbit in cx.orbits(t) {
            let ty = classify(&simplices[orbit[0]]).unwrap();
            for &i in &orbit {
                assert_eq!(classify(&simplices[i]).unwrap(), ty);
            }
        }
    }

    assert_eq!(cx27.orbit_count(1), 2, "(2,7) t=1 orbit count");
    assert_eq!(cx28.orbit_count(2), 1, "(2,8) t=2 orbit count");
    assert_eq!(cx37.orbit_count(1), 2, "(3,7) t=1 orbit count");
    // stated expectation: 2. The computed complex has a single orbit of
    // dimension-2 simplices at (3,7): first-type simplices stop at
    // dimension n-m-3 = 1, so only second-type triangles exist there and
    // they form one orbit. The assertion is kept as stated.
    assert_eq!(cx37.orbit_count(2), 2, "(3,7) t=2 orbit count");
    println!("[criterion 06] PASS orbit structure");
}

#[test]
fn criterion_07_stabilizers() {
    for (m, n) in [(2usize, 7usize), (3, 7), (3, 8)] {
        let first = normal_simplex(SimplexType::First, n - m - 3, m, n).unwrap();
        let st1 = stabilizer(&first, n).unwrap();
        assert_eq!(st1.len(), factorial(m - 1), "first-type stabilizer ({m},{n})");
        let orbit1 = ordered_orbit_size(&first, n);
        assert_eq!(orbit1 * st1.len(), factorial(n), "orbit-stabilizer ({m},{n}) first");

        let second = normal_simplex(SimplexType::Second, m - 1, m, n).unwrap();
        let st2 = stabilizer(&second, n).unwrap();
        assert_eq!(
            st2.len(),
            factorial(n - m - 3),
            "second-type stabilizer ({m},{n})"
        );
        let orbit2 = ordered_orbit_size(&second, n);
        assert_eq!(orbit2 * st2.len(), factorial(n), "orbit-stabilizer ({m},{n}) second");
    }
    println!("[criterion 07] PASS stabilizers and orbit-stabilizer products");
}

#[test]
fn criterion_08_divisor_oracle_equivalence() {
    for (m, n) in [(2usize, 6usize), (3, 7)] {
        let all = enumerate_dcrs(m, n);
        for mu in &all {
            let fast = divisor_candidates(mu, n);
            let slow: BTreeSet<Dcr> = all.iter().filter(|nu| divides(nu, mu)).cloned().collect();
            assert_eq!(fast, slow, "divisor sets differ for {mu} at ({m},{n})");
        }
    }
    println!("[criterion 08] PASS divisor fast path equals the exhaustive scan");
}

#[test]
fn criterion_09_identity_suite() {
    for (m, n) in [(2usize, 7usize), (3, 8)] {
        let mut rng = SplitMix64::new(99_000 + n as u64);
        let q = Configuration::sample_generic(m, n, Space::Projective, 99_100 + n as u64).unwrap();
        let one = GaussianRational::one();
        for round in 0..50 {
            let idx = random_distinct(&mut rng, m + 4, n);
            let (core, quad) = idx.split_at(m - 1);
            let (j, k, r, s, t) = (quad[0], quad[1], quad[2], quad[3], quad[4]);

            let base = Dcr::new(core, j, k, r, s).unwrap();
            let vb = base.evaluate(&q).unwrap();

            // sum to one: swapping the 2nd and 4th quadruple entries
            let om = base.one_minus();
            assert_eq!(om, Dcr::new(core, j, s, r, k).unwrap());
            assert!((&vb + &om.evaluate(&q).unwrap()).is_one(), "round {round}");

            // reciprocal: swapping the middle entries
            let inv = base.inverse();
            assert_eq!(inv, Dcr::new(core, j, r, k, s).unwrap());
            assert!((&vb * &inv.evaluate(&q).unwrap()).is_one());

            // (a): replacing j by t divides out
            let with_t = Dcr::new(core, j, k, r, t).unwrap();
            let quotient = as_dcr(&formal_quotient(&base, &with_t)).unwrap();
            assert_eq!(quotient, Dcr::new(core, t, k, r, s).unwrap());
            let vt = with_t.evaluate(&q).unwrap();
            assert_eq!(quotient.evaluate(&q).unwrap(), &vb / &vt);

            // (b): moving t into the third slot
            let lhs_b = Dcr::new(core, j, k, t, s).unwrap();
            let sym_b = as_dcr(&formal_quotient(&base.one_minus(), &with_t.one_minus())).unwrap();
            assert_eq!(sym_b, lhs_b.one_minus());
            let num_b = &(&one - &vb) / &(&one - &vt);
            assert_eq!(lhs_b.evaluate(&q).unwrap(), &one - &num_b);

            // (c): moving t into the second slot
            let lhs_c = Dcr::new(core, j, t, r, s).unwrap();
            let sym_c = as_dcr(&formal_quotient(
                &base.inverse().one_minus(),
                &with_t.inverse().one_minus(),
            ))
            .unwrap();
            assert_eq!(sym_c.one_minus().inverse(), lhs_c);
            let num_c = &(&one - &vb.inv()) / &(&one - &vt.inv());
            assert_eq!(lhs_c.evaluate(&q).unwrap(), (&one - &num_c).inv());

            // (d): absorbing a quadruple entry into the core, two ways
            let idx2 = random_distinct(&mut rng, m + 3, n);
            let (core2, rest) = idx2.split_at(m - 2);
            let (i2, j2, k2, r2, s2) = (rest[0], rest[1], rest[2], rest[3], rest[4]);
            let with = |extra: usize, a: usize, b: usize, c: usize, d: usize| {
                let mut core = core2.to_vec();
                core.push(extra);
                Dcr::new(&core, a, b, c, d).unwrap()
            };
            let lhs_d = with(i2, j2, k2, r2, s2);
            let f1 = with(j2, i2, k2, r2, s2);
            let f2 = with(s2, j2, k2, r2, i2);
            assert_eq!(as_dcr(&formal_quotient(&lhs_d, &f1)), Some(f2.clone()));
            let g1 = with(k2, j2, i2, r2, s2);
            let g2 = with(r2, j2, k2, i2, s2);
            assert_eq!(as_dcr(&formal_quotient(&lhs_d, &g1)), Some(g2.clone()));
            let vd = lhs_d.evaluate(&q).unwrap();
            assert_eq!(
                vd,
                &f1.evaluate(&q).unwrap() * &f2.evaluate(&q).unwrap()
            );
            assert_eq!(
                vd,
                &g1.evaluate(&q).unwrap() * &g2.evaluate(&q).unwrap()
            );
        }
    }
    println!("[criterion 09] PASS identity suite, symbolic and numeric");
}

#[test]
fn criterion_10_vertex_counts() {
    for (m, n) in [(2usize, 5usize), (2, 6), (2, 7), (3, 6), (3, 7), (4, 7)] {
        let fast = enumerate_dcrs(m, n);
        let r = (n - m + 1) as u128;
        let formula = {
            let mut binom = 1u128;
            for i in 0..(m - 1) as u128 {
                binom = binom * (n as u128 - i) / (i + 1);
            }
            binom * (r * (r - 1) * (r - 2) * (r - 3)) / 4
        };
        assert_eq!(fast.len() as u128, formula, "census at ({m},{n})");
        assert_eq!(dcr_count(m, n), formula);

        // independent brute force: canonicalize every ordered tuple
        let pool: Vec<usize> = (1..=n).collect();
        let mut brute = BTreeSet::new();
        for subset in combinations(&pool, m + 3) {
            for perm in permutations(&subset) {
                let (ess, quad) = perm.split_at(m - 1);
                brute.insert(Dcr::new(ess, quad[0], quad[1], quad[2], quad[3]).unwrap());
            }
        }
        let fast_set: BTreeSet<Dcr> = fast.into_iter().collect();
        assert_eq!(fast_set, brute, "brute-force census at ({m},{n})");
    }
    println!("[criterion 10] PASS vertex counts on six pairs");
}

// local combinatorial helpers so the census oracle stays independent of the
// library internals
fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[test]
fn criterion_11_tame_recovery() {
    let start = Instant::now();
    for (m, n) in [(2usize, 7usize), (3, 7)] {
        for i in 0..10u64 {
            let parametric = i % 2 == 1;
            let f = sample_tame_map(m, n, parametric, 40_000 + 17 * i + n as u64);
            let black_box = f.as_black_box();
            let rec = recover(&black_box, m, n, 50_000 + i).unwrap();
            assert_eq!(&rec.sigma, f.sigma(), "hidden permutation differs");
            for j in 0..5u64 {
                let q = Configuration::sample_generic(
                    m,
                    n,
                    Space::Projective,
                    60_000 + 100 * i + j,
                )
                .unwrap();
                let rebuilt = rec.eval(&black_box, &q).unwrap();
                assert!(
                    rebuilt.projectively_equal(&f.eval(&q).unwrap()),
                    "round trip failed at map {i} sample {j} on ({m},{n})"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 120 s");
    println!("[criterion 11] PASS tame recovery, {elapsed:?}");
}

#[test]
fn criterion_12_induced_automorphism() {
    let cx = DivisibilityComplex::build(2, 7).unwrap();
    let edges = cx.edges();
    for i in 0..10u64 {
        let parametric = i % 2 == 1;
        let f = sample_tame_map(2, 7, parametric, 40_000 + 17 * i + 7);
        let images = induced_map_batch(&f, cx.vertices(), 70_000 + i).unwrap();
        let image_set: BTreeSet<&Dcr> = images.iter().collect();
        assert_eq!(image_set.len(), cx.vertices().len(), "not a bijection");
        for &(u, v) in &edges {
            let su = Simplex::new(vec![cx.vertices()[u].clone(), cx.vertices()[v].clone()])
                .unwrap();
            let iu = &images[u];
            let iv = &images[v];
            assert!(divides(iu, iv), "image pair not adjacent");
            let si = Simplex::new(vec![iu.clone(), iv.clone()]).unwrap();
            assert_eq!(
                classify(&su).unwrap(),
                classify(&si).unwrap(),
                "edge type changed under the induced map"
            );
        }
    }
    println!("[criterion 12] PASS induced maps are type-preserving automorphisms");
}
