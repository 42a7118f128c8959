//! Partition of the edges of `K_n` into `n` matchings by parallel classes of
//! a regular polygon.
//!
//! With vertices `1..=n` around the polygon, chord `(a, b)` is parallel to
//! chord `(c, d)` exactly when `a + b ≡ c + d (mod n)`. Each residue class is
//! a matching. Classes are listed side by side: for odd `n`, the class of
//! side `(i, i + 1)` for `i = 1..=n`; for even `n`, first the classes of
//! sides `(i, i + 1)` for `i = 1..=n/2` (size `n/2`), then the classes of
//! diagonals `(i, i + 2)` for `i = 1..=n/2` (size `n/2 - 1`).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matching::Matching;

pub fn kn_matching_partition(n: usize) -> Result<Vec<Matching>> {
    if n < 3 {
        return Err(Error::Unsupported(alloc::format!("K_n factorization needs n >= 3, got {n}")));
    }
    let residues: Vec<usize> = if n % 2 == 1 {
        (1..=n).map(|i| (2 * i + 1) % n).collect()
    } else {
        let sides = (1..=n / 2).map(|i| (2 * i + 1) % n);
        let diagonals = (1..=n / 2).map(|i| (2 * i + 2) % n);
        sides.chain(diagonals).collect()
    };
    Ok(residues
        .into_iter()
        .map(|r| {
            let pairs = (1..=n)
                .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
                .filter(|&(a, b)| (a + b) % n == r);
            Matching::new(pairs).expect("a parallel class is a matching")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn shapes_and_coverage() {
        for n in 3..=12 {
            let ms = kn_matching_partition(n).unwrap();
            assert_eq!(ms.len(), n);
            let mut all = BTreeSet::new();
            for m in &ms {
                for &e in m.edges() {
                    assert!(all.insert(e), "edge {e:?} repeated for n={n}");
                }
            }
            assert_eq!(all.len(), n * (n - 1) / 2);
            let sizes: Vec<usize> = ms.iter().map(Matching::len).collect();
            if n % 2 == 1 {
                assert!(sizes.iter().all(|&s| s == (n - 1) / 2));
            } else {
                assert!(sizes[..n / 2].iter().all(|&s| s == n / 2));
                assert!(sizes[n / 2..].iter().all(|&s| s == n / 2 - 1));
            }
        }
    }

    #[test]
    fn first_class_contains_its_side() {
        let ms = kn_matching_partition(7).unwrap();
        assert!(ms[0].contains(1, 2));
        assert!(ms[0].contains(7, 3));
        let ms = kn_matching_partition(8).unwrap();
        assert!(ms[0].contains(1, 2));
        assert!(ms[4].contains(1, 3));
        assert!(kn_matching_partition(2).is_err());
    }
}
