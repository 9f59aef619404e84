//! Permutations of `{1..n}` with exact composition and inversion.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// A bijection of `{1..n}` stored as its image list: `images[i-1] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition (a b) inside S(n).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) out of range for n={n}"
            )));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of mixed size");
        Permutation {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// The adjacent transpositions (1 2), (2 3), ..., (n-1 n); they generate S(n).
    pub fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
        (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1).unwrap())
            .collect()
    }

    /// Every element of S(n). Guarded to desk scale.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n <= 9, "full S({n}) sweep is out of desk scale");
        crate::util::permutations_of(&(1..=n).collect::<Vec<_>>())
            .into_iter()
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn sample(n: usize, rng: &mut SplitMix64) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        rng.shuffle(&mut images);
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 4, 3]).is_err());
        assert!(Permutation::from_images(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn inverse_and_composition() {
        let s = Permutation::from_images(vec![3, 1, 2, 4]).unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
        let t = Permutation::transposition(4, 1, 2).unwrap();
        // (s∘t)(1) = s(2) = 1
        assert_eq!(s.compose(&t).apply(1), 1);
    }

    #[test]
    fn composition_is_associative() {
        let a = Permutation::from_images(vec![2, 3, 4, 5, 1]).unwrap();
        let b = Permutation::from_images(vec![5, 4, 3, 2, 1]).unwrap();
        let c = Permutation::from_images(vec![1, 3, 2, 5, 4]).unwrap();
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn all_of_s4_has_24_elements() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        let set: std::collections::HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 24);
    }
}
