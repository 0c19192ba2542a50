use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported real dimension (blades are stored as 64-bit masks).
pub const MAX_DIM: usize = 64;

/// A basis monomial `e_{i1} ∧ … ∧ e_{ip}` with `i1 < … < ip`, stored as a bitmask.
///
/// Signs never live in the blade; operations return them separately.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_DIM, "generator index {i} out of range");
        Blade(1 << i)
    }

    /// Builds a blade from a strictly increasing index list.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM || prev.is_some_and(|p| p >= i) {
                return Err(Error::Parse(format!(
                    "blade indices must be strictly increasing and < {MAX_DIM}: {indices:?}"
                )));
            }
            mask |= 1 << i;
            prev = Some(i);
        }
        Ok(Blade(mask))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn index_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Largest index + 1, or 0 for the scalar blade.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn without(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, dim: usize) -> Blade {
        Blade(full_mask(dim) & !self.0)
    }

    pub fn volume(dim: usize) -> Blade {
        Blade(full_mask(dim))
    }
}

fn full_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Lexicographic order on the sorted index lists, the canonical basis order.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Below the lowest differing index the lists agree. The list holding
        // that index is smaller unless the other list has already ended.
        let low = (self.0 ^ other.0).trailing_zeros();
        let above = if low == 63 { 0 } else { u64::MAX << (low + 1) };
        let (holder_is_self, rest) = if self.0 & (1 << low) != 0 {
            (true, other.0)
        } else {
            (false, self.0)
        };
        let holder_smaller = rest & above != 0;
        if holder_is_self == holder_smaller {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e{}", self.indices().map(|i| i.to_string()).join("^e"))
    }
}

/// Sign of `e_a ∧ e_b` relative to the sorted blade `e_{a ∪ b}`; the blades
/// must be disjoint.
pub fn merge_sign(a: Blade, b: Blade) -> i8 {
    debug_assert!(a.is_disjoint(b));
    let mut inversions = 0u32;
    for j in b.indices() {
        inversions += (a.0 >> j).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All grade-`p` blades over `dim` generators in lexicographic order.
pub fn blade_basis(dim: usize, p: usize) -> Vec<Blade> {
    (0..dim)
        .combinations(p)
        .map(|c| Blade::from_indices(&c).expect("combinations are increasing"))
        .collect()
}

/// Blade basis of one degree together with a reverse lookup.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    blades: Vec<Blade>,
    position: HashMap<Blade, usize>,
}

impl DegreeBasis {
    pub fn new(dim: usize, p: usize) -> Self {
        let blades = blade_basis(dim, p);
        let position = blades.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        DegreeBasis { blades, position }
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn blade(&self, i: usize) -> Blade {
        self.blades[i]
    }

    pub fn position(&self, b: Blade) -> Option<usize> {
        self.position.get(&b).copied()
    }
}
