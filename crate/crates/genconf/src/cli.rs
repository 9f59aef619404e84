//! Command line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (bad input data, degenerate
//! configuration), 2 on a usage error. All randomized commands take a seed
//! and default to 0, so identical invocations print identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::complex::{classify, normal_simplex, stabilizer, DivisibilityComplex, SimplexType};
use crate::config::{Configuration, Space};
use crate::dcr::{dcr_count, divisor_candidates, divides, enumerate_dcrs, plucker_defect, Dcr};
use crate::error::{Error, Result};
use crate::json::{
    config_from_json, matrix_to_dto, tame_map_from_json, ComplexDto, ConfigurationDto,
    NormalizationDto,
};
use crate::normalize::{decompose, embed_p_dcr, gamma, is_reduced};
use crate::rng::SplitMix64;
use crate::tame::recover;

#[derive(Parser)]
#[command(
    name = "genconf",
    about = "Exact toolkit for geometrically generic point configurations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration file and report genericity
    Check {
        /// Path to a configuration JSON file
        config: PathBuf,
    },
    /// Compute the normalizing transform and the reduced representative
    Normalize {
        config: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate a determinant cross ratio, e.g. "e[{1};2,3,4,5]", on a configuration
    DcrEval {
        /// Cross ratio in text form
        dcr: String,
        config: PathBuf,
    },
    /// Build the divisibility complex for (m, n)
    Complex {
        m: usize,
        n: usize,
        /// Limit orbit reporting to dimensions <= this value
        #[arg(long)]
        max_dim: Option<usize>,
        /// Also compute orbit decompositions per dimension
        #[arg(long)]
        orbits: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Orbit decomposition of the t-simplices for (m, n)
    Orbits {
        m: usize,
        n: usize,
        /// Simplex dimension t
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Stabilizer of a normal simplex (ordered) in the relabeling group
    Stabilizer {
        m: usize,
        n: usize,
        /// Simplex type: first or second
        #[arg(long = "type", value_parser = parse_simplex_type)]
        simplex_type: SimplexType,
        /// Simplex dimension; defaults to the maximal one for the type
        #[arg(long)]
        dim: Option<usize>,
        /// Also report the orbit size of the ordered simplex
        #[arg(long)]
        orbit: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Recover the permutation and transform family of a map given by a file
    Recover {
        /// Path to a map JSON file
        map: PathBuf,
        m: usize,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the built-in invariant suite at (m, n)
    Selftest {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_simplex_type(s: &str) -> std::result::Result<SimplexType, String> {
    match s {
        "first" => Ok(SimplexType::First),
        "second" => Ok(SimplexType::Second),
        other => Err(format!("expected 'first' or 'second', got {other:?}")),
    }
}

/// Parses and runs one invocation; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(out: &OutArg, json: String) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<Configuration> {
    config_from_json(&fs::read_to_string(path)?)
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Check { config } => {
            let c = load_config(&config)?;
            let vanishing = c.vanishing_minor();
            let report = serde_json::json!({
                "m": c.m(),
                "n": c.n(),
                "space": c.space().as_str(),
                "generic": vanishing.is_none(),
                "reduced": is_reduced(&c),
                "first_vanishing_minor": vanishing,
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::Normalize { config, out } => {
            let c = load_config(&config)?;
            let g = gamma(&c)?;
            let (_, reduced) = decompose(&c)?;
            let dto = NormalizationDto {
                gamma: matrix_to_dto(g.matrix()),
                reduced: ConfigurationDto::from_config(reduced.as_config()),
            };
            emit(&out, serde_json::to_string_pretty(&dto)?)
        }
        Command::DcrEval { dcr, config } => {
            let d = Dcr::parse(&dcr)?;
            let c = load_config(&config)?;
            println!("{}", d.evaluate(&c)?);
            Ok(())
        }
        Command::Complex {
            m,
            n,
            max_dim,
            orbits,
            out,
        } => {
            let cx = DivisibilityComplex::build(m, n)?;
            let dimension = cx.dimension();
            let mut dto = ComplexDto {
                m,
                n,
                dimension,
                vertices: cx.vertices().iter().map(Dcr::text).collect(),
                edges: cx.edges(),
                orbits: BTreeMap::new(),
                orbit_counts: BTreeMap::new(),
                orbit_sizes: BTreeMap::new(),
                orbit_types: BTreeMap::new(),
            };
            if orbits {
                let top = max_dim.unwrap_or(dimension).min(dimension);
                for t in 0..=top {
                    let (reps, sizes, types) = orbit_summary(&cx, t)?;
                    let key = t.to_string();
                    dto.orbit_counts.insert(key.clone(), reps.len());
                    dto.orbits.insert(key.clone(), reps);
                    dto.orbit_sizes.insert(key.clone(), sizes);
                    dto.orbit_types.insert(key, types);
                }
            }
            emit(&out, serde_json::to_string_pretty(&dto)?)
        }
        Command::Orbits { m, n, dim, out } => {
            let cx = DivisibilityComplex::build(m, n)?;
            let (reps, sizes, types) = orbit_summary(&cx, dim)?;
            let reps_text: Vec<Vec<String>> = reps
                .iter()
                .map(|simplex| {
                    simplex
                        .iter()
                        .map(|&v| cx.vertices()[v].text())
                        .collect()
                })
                .collect();
            let report = serde_json::json!({
                "m": m,
                "n": n,
                "dim": dim,
                "count": reps.len(),
                "sizes": sizes,
                "types": types,
                "representatives": reps_text,
            });
            emit(&out, serde_json::to_string_pretty(&report)?)
        }
        Command::Stabilizer {
            m,
            n,
            simplex_type,
            dim,
            orbit,
            out,
        } => {
            let max_dim = match simplex_type {
                SimplexType::First => n.checked_sub(m + 3).ok_or_else(|| {
                    Error::InvalidDimension(format!("no first-type simplices for ({m}, {n})"))
                })?,
                SimplexType::Second => m - 1,
            };
            let t = dim.unwrap_or(max_dim);
            let sx = normal_simplex(simplex_type, t, m, n)?;
            let st = stabilizer(&sx, n)?;
            let mut report = serde_json::json!({
                "m": m,
                "n": n,
                "type": simplex_type.as_str(),
                "dim": t,
                "simplex": sx.vertices().iter().map(Dcr::text).collect::<Vec<_>>(),
                "order": st.len(),
                "elements": st.iter().map(|s| s.images().to_vec()).collect::<Vec<_>>(),
            });
            if orbit {
                let orbit_size = crate::complex::ordered_orbit_size(&sx, n);
                report["ordered_orbit_size"] = serde_json::json!(orbit_size);
                report["orbit_stabilizer_product"] =
                    serde_json::json!(orbit_size * st.len());
            }
            emit(&out, serde_json::to_string_pretty(&report)?)
        }
        Command::Recover { map, m, n, seed, out } => {
            let f = tame_map_from_json(&fs::read_to_string(&map)?)?;
            if f.m() != m || f.n() != n {
                return Err(Error::Mismatch(format!(
                    "map lives on ({}, {}), not ({m}, {n})",
                    f.m(),
                    f.n()
                )));
            }
            let black_box = f.as_black_box();
            let rec = recover(&black_box, m, n, seed)?;
            let mut tau_samples = Vec::new();
            let mut round_trip_ok = true;
            for i in 0..3u64 {
                let q = Configuration::sample_generic(
                    m,
                    n,
                    Space::Projective,
                    seed.wrapping_add(0xab0_0000 + i),
                )?;
                let tau = rec.tau_at(&black_box, &q)?;
                round_trip_ok &= rec
                    .eval(&black_box, &q)?
                    .projectively_equal(&black_box(&q)?);
                tau_samples.push(serde_json::json!({
                    "sample_seed": seed.wrapping_add(0xab0_0000 + i),
                    "tau": matrix_to_dto(tau.matrix()),
                }));
            }
            let report = serde_json::json!({
                "sigma": rec.sigma.images().to_vec(),
                "rho": rec.rho.images().to_vec(),
                "round_trip_ok": round_trip_ok,
                "tau_samples": tau_samples,
            });
            emit(&out, serde_json::to_string_pretty(&report)?)
        }
        Command::Selftest { m, n, seed } => selftest(m, n, seed),
    }
}

fn orbit_summary(
    cx: &DivisibilityComplex,
    t: usize,
) -> Result<(Vec<Vec<usize>>, Vec<usize>, Vec<String>)> {
    let simplices = cx.simplex_indices(t);
    let orbits = cx.orbits(t);
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut types = Vec::new();
    for orbit in orbits {
        let rep = simplices[orbit[0]].clone();
        sizes.push(orbit.len());
        if t >= 1 {
            let sx = crate::complex::Simplex::new(
                rep.iter().map(|&v| cx.vertices()[v].clone()).collect(),
            )?;
            types.push(classify(&sx)?.as_str().to_string());
        } else {
            types.push("vertex".to_string());
        }
        reps.push(rep);
    }
    Ok((reps, sizes, types))
}

fn selftest(m: usize, n: usize, seed: u64) -> Result<()> {
    if m < 1 || n < m + 3 {
        return Err(Error::Mismatch(format!(
            "selftest needs m >= 1 and n >= m+3, got ({m}, {n})"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut failures = 0usize;
    let mut report = |name: &str, ok: bool| {
        println!("{}  {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    // three-term minor identity on raw integer configurations
    let mut ok = true;
    for i in 0..20u64 {
        let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(i))?;
        let ess: Vec<usize> = (1..m).collect();
        ok &= plucker_defect(&q, &ess, m, m + 1, m + 2, m + 3)?.is_zero();
    }
    report("three-term minor identity vanishes", ok);

    let all = enumerate_dcrs(m, n);

    // values omit 0 and 1
    let mut ok = true;
    for i in 0..5u64 {
        let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(100 + i))?;
        for d in all.iter().step_by(1 + all.len() / 200) {
            let v = d.evaluate(&q)?;
            ok &= !v.is_zero() && !v.is_one();
        }
    }
    report("cross ratio values omit 0 and 1", ok);

    // sum-to-one and reciprocal identities
    let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(200))?;
    let mut ok = true;
    for _ in 0..20 {
        let d = &all[rng.index(all.len())];
        let v = d.evaluate(&q)?;
        ok &= (&v + &d.one_minus().evaluate(&q)?).is_one();
        ok &= (&v * &d.inverse().evaluate(&q)?).is_one();
    }
    report("sum-to-one and reciprocal identities", ok);

    // invariance under the projective group
    let mut ok = true;
    for i in 0..5u64 {
        let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(300 + i))?;
        let t = crate::config::ProjectiveTransform::sample_invertible(m + 1, 7, &mut rng);
        let tq = crate::config::act_transform(&t, &q)?;
        for _ in 0..10 {
            let d = &all[rng.index(all.len())];
            ok &= d.evaluate(&q)? == d.evaluate(&tq)?;
        }
    }
    report("projective invariance of cross ratios", ok);

    // normalization lands in the reduced space and is orbit-invariant
    let mut ok = true;
    for i in 0..5u64 {
        let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(400 + i))?;
        let g = gamma(&q)?;
        let reduced = crate::config::act_transform(&g, &q)?;
        ok &= is_reduced(&reduced);
        let t = crate::config::ProjectiveTransform::sample_invertible(m + 1, 7, &mut rng);
        let tq = crate::config::act_transform(&t, &q)?;
        let reduced_tq = crate::config::act_transform(&gamma(&tq)?, &tq)?;
        ok &= reduced_tq.projectively_equal(&reduced);
    }
    report("normalization reaches the reduced frame", ok);

    // decomposition round trip
    let mut ok = true;
    for i in 0..5u64 {
        let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(500 + i))?;
        let (t, reduced) = decompose(&q)?;
        ok &= crate::normalize::compose(&t, &reduced)?.projectively_equal(&q);
    }
    report("decompose and compose round trip", ok);

    // reduced-space coordinates agree with cross ratio evaluation
    let mut ok = true;
    let q = Configuration::sample_generic(m, n, Space::Projective, seed.wrapping_add(600))?;
    let (_, reduced) = decompose(&q)?;
    let p = crate::normalize::embed_p(&reduced);
    for (si, row) in p.iter().enumerate() {
        for (ti, value) in row.iter().enumerate() {
            let d = embed_p_dcr(m, si + 1, m + 3 + ti);
            ok &= &d.evaluate(reduced.as_config())? == value;
        }
    }
    report("frame coordinates match cross ratios", ok);

    // vertex census
    report(
        "vertex census matches the closed form",
        all.len() as u128 == dcr_count(m, n),
    );

    // divisor fast path against the full scan on sampled vertices
    let mut ok = true;
    for _ in 0..5 {
        let mu = &all[rng.index(all.len())];
        let fast = divisor_candidates(mu, n);
        let slow: std::collections::BTreeSet<Dcr> =
            all.iter().filter(|nu| divides(nu, mu)).cloned().collect();
        ok &= fast == slow;
    }
    report("divisor fast path matches the full scan", ok);

    // complex dimension against the closed form (kept to desk scale)
    if all.len() <= 1000 {
        let cx = DivisibilityComplex::build(m, n)?;
        let bound = (n as i64 - m as i64 - 3).max(m as i64 - 1) as usize;
        report("complex dimension matches the bound", cx.dimension() == bound);
        report("vertex orbit is single", cx.orbit_count(0) == 1);
    }

    if failures > 0 {
        return Err(Error::Mismatch(format!("{failures} selftest checks failed")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["genconf".to_string(), "bogus".to_string()]), 2);
        assert_eq!(
            run(["genconf".to_string(), "complex".to_string(), "x".to_string(), "5".to_string()]),
            2
        );
    }

    #[test]
    fn help_exits_cleanly() {
        assert_eq!(run(["genconf".to_string(), "--help".to_string()]), 0);
    }

    #[test]
    fn missing_file_is_a_domain_error() {
        assert_eq!(
            run([
                "genconf".to_string(),
                "check".to_string(),
                "/definitely/not/a/file.json".to_string(),
            ]),
            1
        );
    }

    #[test]
    fn selftest_runs_clean_at_2_5() {
        assert_eq!(
            run([
                "genconf".to_string(),
                "selftest".to_string(),
                "--m".to_string(),
                "2".to_string(),
                "--n".to_string(),
                "5".to_string(),
            ]),
            0
        );
    }
}
