//! Determinant cross ratios as canonical symbolic objects.
//!
//! A determinant cross ratio is the rational function
//!
//! ```text
//! e[{i};j,k,l,s](q) = d(i,j,k) d(i,l,s) / ( d(i,j,l) d(i,k,s) )
//! ```
//!
//! where `i` is a set of m-1 indices shared by all four maximal minors and
//! j,k,l,s are four further distinct indices. Two such expressions define the
//! same function exactly when the shared sets agree and the quadruples differ
//! by one of the four Kleinian double transpositions, so each function owns a
//! unique canonical form and function equality is data equality.
//!
//! Quotients of cross ratios live in a formal monomial algebra over the
//! maximal-minor classes. Because the minors are pairwise distinct
//! irreducible polynomials, monomial equality is rational-function equality,
//! which makes the divisibility relation fully symbolic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::GaussianRational;
use crate::util::combinations;

/// A determinant cross ratio in canonical form.
///
/// `ess` holds the shared m-1 indices sorted ascending; `quad` is the
/// lexicographically least member of its Klein orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dcr {
    ess: Vec<usize>,
    quad: [usize; 4],
}

fn klein_orbit(q: [usize; 4]) -> [[usize; 4]; 4] {
    let [j, k, l, s] = q;
    [[j, k, l, s], [k, j, s, l], [l, s, j, k], [s, l, k, j]]
}

fn canonical_quad(q: [usize; 4]) -> [usize; 4] {
    klein_orbit(q).into_iter().min().unwrap()
}

impl Dcr {
    /// Builds the canonical cross ratio with essential support `ess` and
    /// ordered quadruple (j, k, l, s).
    pub fn new(ess: &[usize], j: usize, k: usize, l: usize, s: usize) -> Result<Dcr> {
        let mut sorted = ess.to_vec();
        sorted.sort_unstable();
        let mut all = sorted.clone();
        all.extend_from_slice(&[j, k, l, s]);
        if all.iter().any(|&i| i == 0) {
            return Err(Error::InvalidDcr("indices are 1-based".into()));
        }
        let distinct: BTreeSet<usize> = all.iter().copied().collect();
        if distinct.len() != all.len() {
            return Err(Error::InvalidDcr(format!(
                "indices {{{sorted:?}}};{j},{k},{l},{s} are not distinct"
            )));
        }
        Ok(Dcr {
            ess: sorted,
            quad: canonical_quad([j, k, l, s]),
        })
    }

    /// Ambient dimension implied by the essential support size.
    pub fn m(&self) -> usize {
        self.ess.len() + 1
    }

    pub fn essential_support(&self) -> &[usize] {
        &self.ess
    }

    pub fn quad(&self) -> [usize; 4] {
        self.quad
    }

    /// All m+3 indices involved, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.ess.clone();
        s.extend_from_slice(&self.quad);
        s.sort_unstable();
        s
    }

    pub fn max_index(&self) -> usize {
        *self.support().last().unwrap()
    }

    /// The reciprocal cross ratio: swap the middle quadruple entries.
    pub fn inverse(&self) -> Dcr {
        let [j, k, l, s] = self.quad;
        Dcr {
            ess: self.ess.clone(),
            quad: canonical_quad([j, l, k, s]),
        }
    }

    /// The cross ratio with value one minus this one: swap the second and
    /// fourth quadruple entries.
    pub fn one_minus(&self) -> Dcr {
        let [j, k, l, s] = self.quad;
        Dcr {
            ess: self.ess.clone(),
            quad: canonical_quad([j, s, l, k]),
        }
    }

    /// Relabels every index through `sigma` and recanonicalizes.
    pub fn permuted(&self, sigma: &Permutation) -> Dcr {
        let ess: Vec<usize> = self.ess.iter().map(|&i| sigma.apply(i)).collect();
        let [j, k, l, s] = self.quad;
        Dcr::new(
            &ess,
            sigma.apply(j),
            sigma.apply(k),
            sigma.apply(l),
            sigma.apply(s),
        )
        .expect("a bijection preserves distinctness")
    }

    /// Exact value on a configuration.
    ///
    /// The two denominator minors are checked and a vanishing one is
    /// reported as `NotGeneric`; on generic input the result omits 0 and 1.
    pub fn evaluate(&self, config: &Configuration) -> Result<GaussianRational> {
        if self.m() != config.m() {
            return Err(Error::InvalidDcr(format!(
                "cross ratio for m={} evaluated on a configuration with m={}",
                self.m(),
                config.m()
            )));
        }
        if self.max_index() > config.n() {
            return Err(Error::InvalidDcr(format!(
                "index {} exceeds point count {}",
                self.max_index(),
                config.n()
            )));
        }
        let [j, k, l, s] = self.quad;
        let minor = |a: usize, b: usize| -> Result<GaussianRational> {
            let mut idx = self.ess.clone();
            idx.push(a);
            idx.push(b);
            config.minor(&idx)
        };
        let den1 = minor(j, l)?;
        let den2 = minor(k, s)?;
        if den1.is_zero() || den2.is_zero() {
            return Err(Error::NotGeneric(format!(
                "a minor in the denominator of {self} vanishes"
            )));
        }
        let num = &minor(j, k)? * &minor(l, s)?;
        Ok(&num / &(&den1 * &den2))
    }

    /// Canonical text form, e.g. `e[{1,2};3,4,5,6]`.
    pub fn text(&self) -> String {
        self.to_string()
    }

    /// Parses the text form (the input quadruple may be any Klein
    /// representative).
    pub fn parse(s: &str) -> Result<Dcr> {
        let bad = || Error::Parse(format!("invalid cross ratio literal {s:?}"));
        let inner = s
            .strip_prefix("e[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (ess_part, quad_part) = inner.split_once(';').ok_or_else(bad)?;
        let ess_body = ess_part
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let ess: Vec<usize> = if ess_body.is_empty() {
            Vec::new()
        } else {
            ess_body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<std::result::Result<_, _>>()?
        };
        let quad: Vec<usize> = quad_part
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?;
        if quad.len() != 4 {
            return Err(bad());
        }
        Dcr::new(&ess, quad[0], quad[1], quad[2], quad[3])
    }
}

impl fmt::Display for Dcr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ess: Vec<String> = self.ess.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "e[{{{}}};{},{},{},{}]",
            ess.join(","),
            self.quad[0],
            self.quad[1],
            self.quad[2],
            self.quad[3]
        )
    }
}

impl fmt::Debug for Dcr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A formal Laurent monomial in maximal-minor classes with a sign.
///
/// Keys are the sorted index sets of the minors; the sign tracks the parity
/// of sorting each index tuple that entered the product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMonomial {
    sign: i8,
    factors: BTreeMap<Vec<usize>, i64>,
}

impl SignedMonomial {
    pub fn one() -> Self {
        SignedMonomial {
            sign: 1,
            factors: BTreeMap::new(),
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    fn push(&mut self, class: Vec<usize>, exp: i64) {
        match self.factors.entry(class) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if exp != 0 {
                    e.insert(exp);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += exp;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &SignedMonomial) -> SignedMonomial {
        let mut out = self.clone();
        out.sign *= other.sign;
        for (class, &exp) in &other.factors {
            out.push(class.clone(), exp);
        }
        out
    }

    pub fn inverse(&self) -> SignedMonomial {
        SignedMonomial {
            sign: self.sign,
            factors: self.factors.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
        }
    }
}

/// Sorts a minor index tuple into its class and reports the sign of the sort.
fn sorted_class(idx: &[usize]) -> (Vec<usize>, i8) {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

/// The formal monomial of a cross ratio relative to sorted minor classes.
pub fn dcr_monomial(d: &Dcr) -> SignedMonomial {
    let [j, k, l, s] = d.quad();
    let mut mon = SignedMonomial::one();
    for (a, b, exp) in [(j, k, 1i64), (l, s, 1), (j, l, -1), (k, s, -1)] {
        let mut idx = d.essential_support().to_vec();
        idx.push(a);
        idx.push(b);
        let (class, sign) = sorted_class(&idx);
        mon.sign *= sign;
        mon.push(class, exp);
    }
    mon
}

/// The formal quotient mu / nu.
pub fn formal_quotient(mu: &Dcr, nu: &Dcr) -> SignedMonomial {
    dcr_monomial(mu).mul(&dcr_monomial(nu).inverse())
}

/// Recognizes a monomial as a cross ratio.
///
/// A cross ratio has exactly four distinct classes with exponents
/// +1, +1, -1, -1, a common (m-1)-index core, singleton pairwise overlaps in
/// the right pattern and the matching sign. Returns the unique such cross
/// ratio or `None`.
pub fn as_dcr(mon: &SignedMonomial) -> Option<Dcr> {
    if mon.factors.len() != 4 {
        return None;
    }
    let mut num: Vec<&Vec<usize>> = Vec::new();
    let mut den: Vec<&Vec<usize>> = Vec::new();
    for (class, &exp) in &mon.factors {
        match exp {
            1 => num.push(class),
            -1 => den.push(class),
            _ => return None,
        }
    }
    if num.len() != 2 || den.len() != 2 {
        return None;
    }
    let intersect = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().filter(|i| b.contains(i)).copied().collect()
    };
    let core = intersect(&intersect(num[0], num[1]), &intersect(den[0], den[1]));
    let single = |a: &[usize], b: &[usize]| -> Option<usize> {
        let mut it = a
            .iter()
            .filter(|i| b.contains(i) && !core.contains(i))
            .copied();
        let v = it.next()?;
        it.next().is_none().then_some(v)
    };
    let j = single(num[0], den[0])?;
    let k = single(num[0], den[1])?;
    let l = single(num[1], den[0])?;
    let s = single(num[1], den[1])?;
    let candidate = Dcr::new(&core, j, k, l, s).ok()?;
    // the final monomial comparison also validates the sign
    (&dcr_monomial(&candidate) == mon).then_some(candidate)
}

/// The proper-divisor relation: nu divides mu iff mu/nu is again a cross
/// ratio. Decided symbolically; symmetric and irreflexive.
pub fn divides(nu: &Dcr, mu: &Dcr) -> bool {
    nu != mu && as_dcr(&formal_quotient(mu, nu)).is_some()
}

/// The fast-path divisor set of `mu` inside `{1..n}`.
///
/// Divisors with a different support replace exactly one quadruple entry by
/// an index outside the support, in four patterns per fresh index. Divisors
/// with the same support exchange one essential-support index with one
/// quadruple entry. Every candidate produced here is a genuine divisor; the
/// test suite checks the set against the exhaustive symbolic scan.
pub fn divisor_candidates(mu: &Dcr, n: usize) -> BTreeSet<Dcr> {
    let [j, k, r, s] = mu.quad();
    let ess = mu.essential_support().to_vec();
    let supp = mu.support();
    let mut out = BTreeSet::new();

    // different support: one fresh index t
    for t in 1..=n {
        if supp.binary_search(&t).is_ok() {
            continue;
        }
        for quad in [[j, k, r, t], [k, j, s, t], [r, s, j, t], [s, r, k, t]] {
            let cand = Dcr::new(&ess, quad[0], quad[1], quad[2], quad[3]).unwrap();
            debug_assert!(divides(&cand, mu), "candidate {cand} must divide {mu}");
            out.insert(cand);
        }
    }

    // same support: swap one essential index with one quadruple entry
    for (ai, &a) in ess.iter().enumerate() {
        for p in 0..4 {
            let mut new_ess = ess.clone();
            new_ess[ai] = mu.quad()[p];
            let mut quad = mu.quad();
            quad[p] = a;
            let cand = Dcr::new(&new_ess, quad[0], quad[1], quad[2], quad[3]).unwrap();
            debug_assert!(divides(&cand, mu), "candidate {cand} must divide {mu}");
            out.insert(cand);
        }
    }
    out
}

/// Closed-form count of canonical cross ratios for (m, n).
pub fn dcr_count(m: usize, n: usize) -> u128 {
    let binom = |n: u128, k: u128| -> u128 {
        let mut acc = 1u128;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let r = (n - m + 1) as u128;
    binom(n as u128, (m - 1) as u128) * (r * (r - 1) * (r - 2) * (r - 3)) / 4
}

/// Every canonical cross ratio for (m, n), sorted.
pub fn enumerate_dcrs(m: usize, n: usize) -> Vec<Dcr> {
    assert!(m >= 1 && n >= m + 3, "need m >= 1 and n >= m+3");
    let pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for ess in combinations(&pool, m - 1) {
        let rest: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|i| !ess.contains(i))
            .collect();
        for four in combinations(&rest, 4) {
            let [a, b, c, d] = [four[0], four[1], four[2], four[3]];
            // the canonical member of each Klein orbit starts with the
            // smallest of the four, so fixing `a` first and permuting the
            // rest lists each function exactly once
            for (x, y, z) in [
                (b, c, d),
                (b, d, c),
                (c, b, d),
                (c, d, b),
                (d, b, c),
                (d, c, b),
            ] {
                out.push(Dcr::new(&ess, a, x, y, z).unwrap());
            }
        }
    }
    out.sort_unstable();
    debug_assert_eq!(out.len() as u128, dcr_count(m, n));
    out
}

/// The three-term product sum of maximal minors sharing the core `ess`:
///
/// ```text
/// d(i,j,k) d(i,l,s) + d(i,j,l) d(i,s,k) + d(i,j,s) d(i,k,l)
/// ```
///
/// It vanishes identically on every configuration, generic or not.
pub fn plucker_defect(
    config: &Configuration,
    ess: &[usize],
    j: usize,
    k: usize,
    l: usize,
    s: usize,
) -> Result<GaussianRational> {
    if ess.len() + 2 != config.m() + 1 {
        return Err(Error::InvalidMultiindex(format!(
            "core of size {} does not fit m = {}",
            ess.len(),
            config.m()
        )));
    }
    let minor = |a: usize, b: usize| -> Result<GaussianRational> {
        let mut idx = ess.to_vec();
        idx.push(a);
        idx.push(b);
        config.minor(&idx)
    };
    let t1 = &minor(j, k)? * &minor(l, s)?;
    let t2 = &minor(j, l)? * &minor(s, k)?;
    let t3 = &minor(j, s)? * &minor(k, l)?;
    Ok(&(&t1 + &t2) + &t3)
}
