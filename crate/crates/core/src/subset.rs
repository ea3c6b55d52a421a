use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of the finite carrier `{0, .., len - 1}`.
///
/// Serializes as the sorted list of its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset {
            members: vec![false; len],
        }
    }

    pub fn full(len: usize) -> Self {
        Subset {
            members: vec![true; len],
        }
    }

    /// Subset with the listed members; `None` if an index is out of range.
    pub fn from_indices(len: usize, indices: &[usize]) -> Option<Self> {
        let mut s = Subset::empty(len);
        for &i in indices {
            *s.members.get_mut(i)? = true;
        }
        Some(s)
    }

    /// Bit `i` of `mask` decides membership of `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        Subset {
            members: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    /// Every subset of a carrier of size `len`, in increasing mask order.
    pub fn all(len: usize) -> impl Iterator<Item = Subset> {
        assert!(len < 64, "carrier too large for subset enumeration");
        (0..1u64 << len).map(move |m| Subset::from_mask(len, m))
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> bool) -> Self {
        Subset {
            members: (0..len).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) {
        self.members[i] = true;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            members: zip_with(&self.members, &other.members, |a, b| a || b),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            members: zip_with(&self.members, &other.members, |a, b| a && b),
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            members: self.members.iter().map(|&b| !b).collect(),
        }
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    assert_eq!(a.len(), b.len(), "subsets over different carriers");
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
