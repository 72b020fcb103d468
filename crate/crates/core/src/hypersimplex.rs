//! Hypersimplices and their splits, handled symbolically.
//!
//! A vertex of the hypersimplex of k-sets over an n-element ground set is a
//! 0/1 vector with exactly k ones, so it is a k-subset of {0,..,n-1} and is
//! stored as a u32 mask.  Split constructions and matroid certification work
//! entirely on masks; coordinates enter only through the chart to R^{n-1}
//! that drops the last coordinate, used when a result is cross-checked
//! against the generic subdivision machinery.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::config::{Cell, PointConfiguration, Subdivision};
use crate::error::SplitSpanError;
use crate::kernel::Rat;
use crate::Guards;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut b = 1u64;
    for i in 0..k {
        // Exact at every step: b holds C(n, i) times a partial numerator.
        b = b * (n - i) as u64 / (i + 1) as u64;
    }
    b
}

/// All k-subsets of {0,..,n-1} as masks, in the order of sorted index tuples.
fn k_subset_masks(n: usize, k: usize) -> Vec<u32> {
    (0..n)
        .combinations(k)
        .map(|c| c.iter().map(|&i| 1u32 << i).sum())
        .collect()
}

#[derive(Clone, Debug)]
pub struct Hypersimplex {
    pub k: usize,
    pub n: usize,
    vertex_sets: Vec<u32>,
    index: BTreeMap<u32, usize>,
}

impl Hypersimplex {
    pub fn new(k: usize, n: usize) -> Result<Self, SplitSpanError> {
        if n < 2 || n > 32 || k < 1 || k > n - 1 {
            return Err(SplitSpanError::InvalidInput(format!(
                "hypersimplex needs 1 <= k <= n-1 and n <= 32, got k={k}, n={n}"
            )));
        }
        let vertex_sets = k_subset_masks(n, k);
        let index = vertex_sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Hypersimplex { k, n, vertex_sets, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_sets.len()
    }

    pub fn vertex_sets(&self) -> &[u32] {
        &self.vertex_sets
    }

    pub fn index_of(&self, set: u32) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// The vertices charted to R^{n-1} by dropping the last coordinate, an
    /// affine isomorphism on the hyperplane x_1 + .. + x_n = k.
    pub fn config(&self, guards: &Guards) -> Result<PointConfiguration, SplitSpanError> {
        guards.check(self.vertex_count(), self.n - 1, "hypersimplex configuration")?;
        let points = self
            .vertex_sets
            .iter()
            .map(|&s| {
                (0..self.n - 1)
                    .map(|i| if s >> i & 1 == 1 { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        PointConfiguration::new(points)
    }

    /// The k-sets indexed by a cell of a subdivision of this hypersimplex.
    pub fn cell_family(&self, cell: &Cell) -> SetFamily {
        let members = cell.iter().map(|&i| self.vertex_sets[i]).collect();
        SetFamily::new(self.n, members).expect("cells index k-sets")
    }
}

pub fn hypersimplex_config(
    k: usize,
    n: usize,
    guards: &Guards,
) -> Result<PointConfiguration, SplitSpanError> {
    Hypersimplex::new(k, n)?.config(guards)
}

/// A 2-split of the hypersimplex: the hyperplane sum_{i in B} x_i = mu with
/// both closed sides full-dimensional.  (A,B;mu) and (B,A;k-mu) cut out the
/// same hyperplane; the representative stored is the one whose (b, mu) key
/// is smaller.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ABSplit {
    pub a: u32,
    pub b: u32,
    pub mu: usize,
}

pub fn hypersimplex_two_splits(
    h: &Hypersimplex,
    guards: &Guards,
) -> Result<Vec<ABSplit>, SplitSpanError> {
    guards.check(h.vertex_count(), h.n - 1, "hypersimplex 2-splits")?;
    let full = h.full_mask();
    let (k, n) = (h.k, h.n);
    let mut seen = BTreeSet::new();
    for a in 1..full {
        let b = full ^ a;
        let ca = a.count_ones() as usize;
        for mu in 1..k {
            // Both closed sides are full-dimensional exactly in this range.
            if k - mu + 1 <= ca && ca <= n - mu - 1 {
                let cand = if (b, mu) <= (a, k - mu) {
                    ABSplit { a, b, mu }
                } else {
                    ABSplit { a: b, b: a, mu: k - mu }
                };
                seen.insert(cand);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The two maximal cells of a 2-split, as vertex indices.
pub fn absplit_cells(h: &Hypersimplex, s: &ABSplit) -> Subdivision {
    let count = |v: u32| (v & s.b).count_ones() as usize;
    let le: Cell =
        (0..h.vertex_count()).filter(|&i| count(h.vertex_sets[i]) <= s.mu).collect();
    let ge: Cell =
        (0..h.vertex_count()).filter(|&i| count(h.vertex_sets[i]) >= s.mu).collect();
    Subdivision::new(vec![le, ge])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    Standard,
    Reversed,
}

/// A partition A_1 | A_2 | A_3 of the ground set with mu_1 + mu_2 + mu_3 = k
/// and 1 <= mu_j <= |A_j| - 1.  Each orientation of the inequalities yields
/// one 3-split.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TripartitionSplit {
    pub parts: [u32; 3],
    pub mus: [usize; 3],
    pub orientation: Orientation,
}

fn validate_tripartition(h: &Hypersimplex, t: &TripartitionSplit) -> Result<(), SplitSpanError> {
    let union = t.parts[0] | t.parts[1] | t.parts[2];
    let disjoint = t.parts[0] & t.parts[1] == 0
        && t.parts[0] & t.parts[2] == 0
        && t.parts[1] & t.parts[2] == 0;
    if union != h.full_mask() || !disjoint {
        return Err(SplitSpanError::InvalidInput(
            "parts must partition the ground set".into(),
        ));
    }
    if t.mus.iter().sum::<usize>() != h.k {
        return Err(SplitSpanError::InvalidInput(format!(
            "mu values must sum to k = {}",
            h.k
        )));
    }
    for j in 0..3 {
        let c = t.parts[j].count_ones() as usize;
        if t.mus[j] < 1 || t.mus[j] + 1 > c {
            return Err(SplitSpanError::InvalidInput(format!(
                "need 1 <= mu_{} <= |A_{}| - 1",
                j + 1,
                j + 1
            )));
        }
    }
    Ok(())
}

/// Membership test for the m-th maximal cell: |S cap A_{m+2}| <= mu_{m+2}
/// and |S cap A_{m+1}| >= mu_{m+1}, indices mod 3; the reversed orientation
/// swaps the inequalities.
fn in_cell(t: &TripartitionSplit, m: usize, v: u32) -> bool {
    let le = (m + 2) % 3;
    let ge = (m + 1) % 3;
    let sle = (v & t.parts[le]).count_ones() as usize;
    let sge = (v & t.parts[ge]).count_ones() as usize;
    match t.orientation {
        Orientation::Standard => sle <= t.mus[le] && sge >= t.mus[ge],
        Orientation::Reversed => sle >= t.mus[le] && sge <= t.mus[ge],
    }
}

/// The m-th maximal cell (m in 0..3) as a set family.
pub fn three_split_cell_family(
    h: &Hypersimplex,
    t: &TripartitionSplit,
    m: usize,
) -> Result<SetFamily, SplitSpanError> {
    validate_tripartition(h, t)?;
    let members = h.vertex_sets.iter().copied().filter(|&v| in_cell(t, m, v)).collect();
    SetFamily::new(h.n, members)
}

/// The subdivision with the three cells as maximal faces.
pub fn three_split_cells(
    h: &Hypersimplex,
    t: &TripartitionSplit,
) -> Result<Subdivision, SplitSpanError> {
    validate_tripartition(h, t)?;
    let cells = (0..3)
        .map(|m| {
            (0..h.vertex_count()).filter(|&i| in_cell(t, m, h.vertex_sets[i])).collect()
        })
        .collect();
    Ok(Subdivision::new(cells))
}

/// Vertices lying on all three hyperplanes, |S cap A_j| = mu_j for every j;
/// the common face of the three cells in either orientation.
pub fn tripartition_core(
    h: &Hypersimplex,
    t: &TripartitionSplit,
) -> Result<SetFamily, SplitSpanError> {
    validate_tripartition(h, t)?;
    let members = h
        .vertex_sets
        .iter()
        .copied()
        .filter(|&v| {
            (0..3).all(|j| (v & t.parts[j]).count_ones() as usize == t.mus[j])
        })
        .collect();
    SetFamily::new(h.n, members)
}

/// The m-th cell rewritten as a chain of intersection bounds: the >= half
/// turns into a bound on the complement, |S cap (A_le u A_m)| <= mu_le +
/// mu_m, nested above the <= half's own part.
pub fn cell_bound_chain(t: &TripartitionSplit, m: usize) -> Vec<(u32, usize)> {
    let le = match t.orientation {
        Orientation::Standard => (m + 2) % 3,
        Orientation::Reversed => (m + 1) % 3,
    };
    vec![
        (t.parts[le], t.mus[le]),
        (t.parts[le] | t.parts[m], t.mus[le] + t.mus[m]),
    ]
}

fn partitions_into_three(n: usize) -> Vec<[u32; 3]> {
    // Restricted growth: element 0 goes to part 0 and a new part may only
    // open after all lower-numbered parts are in use, so every unordered
    // partition appears exactly once.
    fn go(i: usize, used: usize, n: usize, parts: &mut [u32; 3], out: &mut Vec<[u32; 3]>) {
        if i == n {
            if used == 3 {
                out.push(*parts);
            }
            return;
        }
        for p in 0..(used + 1).min(3) {
            parts[p] |= 1u32 << i;
            go(i + 1, used.max(p + 1), n, parts, out);
            parts[p] &= !(1u32 << i);
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut [0u32; 3], &mut out);
    out
}

/// Every (unordered tripartition, mu-assignment) pair in both orientations,
/// parts sorted by mask.
pub fn enumerate_three_splits(
    h: &Hypersimplex,
    guards: &Guards,
) -> Result<Vec<TripartitionSplit>, SplitSpanError> {
    guards.check(h.vertex_count(), h.n - 1, "hypersimplex 3-splits")?;
    let k = h.k;
    if k < 3 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for partition in partitions_into_three(h.n) {
        let sizes: Vec<usize> = partition.iter().map(|p| p.count_ones() as usize).collect();
        for mu0 in 1..sizes[0] {
            for mu1 in 1..sizes[1] {
                if k <= mu0 + mu1 {
                    continue;
                }
                let mu2 = k - mu0 - mu1;
                if mu2 + 1 > sizes[2] {
                    continue;
                }
                let mut pairs =
                    [(partition[0], mu0), (partition[1], mu1), (partition[2], mu2)];
                pairs.sort();
                let parts = [pairs[0].0, pairs[1].0, pairs[2].0];
                let mus = [pairs[0].1, pairs[1].1, pairs[2].1];
                for orientation in [Orientation::Standard, Orientation::Reversed] {
                    out.push(TripartitionSplit { parts, mus, orientation });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of mu-assignments for the ordered part sizes (alpha, beta,
/// n-alpha-beta): solutions of mu_1 + mu_2 + mu_3 = k with 1 <= mu_j <=
/// size_j - 1.  Summand i counts the feasible mu_2 for mu_1 = i; the
/// interval may be empty, so its length is clamped at zero.
pub fn mu_count(alpha: usize, beta: usize, k: usize, n: usize) -> u64 {
    let gamma = n as i64 - alpha as i64 - beta as i64;
    let top = (alpha as i64 - 1).min(k as i64 - 2);
    let mut total = 0u64;
    let mut i = 1i64;
    while i <= top {
        let hi = (beta as i64 - 1).min(k as i64 - i - 1);
        let lo = 0i64.max(k as i64 - i - gamma);
        total += (hi - lo).max(0) as u64;
        i += 1;
    }
    total
}

/// The k = 4 count in closed form: of the compositions (1,1,2), (1,2,1) and
/// (2,1,1) of 4, exactly those placing the 2 on a part of size >= 3 satisfy
/// the bounds.
pub fn mu_count_k4_shortcut(alpha: usize, beta: usize, n: usize) -> u64 {
    debug_assert!(alpha >= 2 && beta >= 2 && alpha + beta + 2 <= n);
    let sizes = [alpha, beta, n - alpha - beta];
    3 - sizes.iter().filter(|&&s| s == 2).count() as u64
}

/// Total number of 3-splits.  Ordered (alpha, beta) choices visit each
/// unordered tripartition six times while mu_count is taken per ordered
/// triple, so dividing by three leaves the factor two for the orientations.
pub fn count_three_splits(k: usize, n: usize) -> u64 {
    let mut total = 0u64;
    for alpha in 2..=n.saturating_sub(4) {
        for beta in 2..=n.saturating_sub(alpha + 2) {
            total += mu_count(alpha, beta, k, n) * binomial(n, alpha) * binomial(n - alpha, beta);
        }
    }
    debug_assert_eq!(total % 3, 0);
    total / 3
}

/// A family of equal-size subsets of the ground set {0,..,n-1}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetFamily {
    pub n: usize,
    pub members: BTreeSet<u32>,
}

impl SetFamily {
    pub fn new(n: usize, members: BTreeSet<u32>) -> Result<Self, SplitSpanError> {
        if n > 32 {
            return Err(SplitSpanError::InvalidInput("ground set too large".into()));
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut card = None;
        for &m in &members {
            if m & !full != 0 {
                return Err(SplitSpanError::InvalidInput(
                    "member outside the ground set".into(),
                ));
            }
            match card {
                None => card = Some(m.count_ones()),
                Some(c) if c != m.count_ones() => {
                    return Err(SplitSpanError::InvalidInput(
                        "members of mixed cardinality".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(SetFamily { n, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Basis exchange: for all B_1, B_2 in the family and every i in B_1 - B_2
/// there is a j in B_2 - B_1 with B_1 - i + j again in the family.
pub fn is_matroid_family(f: &SetFamily) -> bool {
    if f.members.is_empty() {
        return false;
    }
    for &b1 in &f.members {
        for &b2 in &f.members {
            let mut leaving = b1 & !b2;
            let entering = b2 & !b1;
            while leaving != 0 {
                let i = leaving & leaving.wrapping_neg();
                leaving ^= i;
                let mut candidates = entering;
                let mut exchanged = false;
                while candidates != 0 {
                    let j = candidates & candidates.wrapping_neg();
                    candidates ^= j;
                    if f.members.contains(&((b1 ^ i) | j)) {
                        exchanged = true;
                        break;
                    }
                }
                if !exchanged {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff every maximal cell's vertex family passes basis exchange.
pub fn is_matroid_subdivision(h: &Hypersimplex, s: &Subdivision) -> bool {
    s.maximal_faces.iter().all(|c| is_matroid_family(&h.cell_family(c)))
}

/// All k-subsets B with |B cap A_j| <= mu_j for every listed part.  The
/// parts must form a laminar family, each pair disjoint or nested: these
/// are the constraint systems realized by placing prescribed subsets of a
/// point configuration into prescribed affine subspaces, and their bound
/// families are always matroids.  Two-element chains of this kind describe
/// the 3-split cells.
pub fn bases_by_intersection_bounds(
    n: usize,
    k: usize,
    parts: &[(u32, usize)],
    guards: &Guards,
) -> Result<SetFamily, SplitSpanError> {
    if n > 32 || k > n {
        return Err(SplitSpanError::InvalidInput(format!(
            "need k <= n <= 32, got k={k}, n={n}"
        )));
    }
    guards.check(binomial(n, k) as usize, n.saturating_sub(1), "intersection-bound bases")?;
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for &(a, _) in parts {
        if a & !full != 0 {
            return Err(SplitSpanError::InvalidInput(
                "part outside the ground set".into(),
            ));
        }
    }
    for (x, y) in parts.iter().map(|p| p.0).tuple_combinations() {
        let meet = x & y;
        if meet != 0 && meet != x && meet != y {
            return Err(SplitSpanError::InvalidInput(
                "parts must be pairwise disjoint or nested".into(),
            ));
        }
    }
    let members = k_subset_masks(n, k)
        .into_iter()
        .filter(|&b| parts.iter().all(|&(a, mu)| (b & a).count_ones() as usize <= mu))
        .collect();
    SetFamily::new(n, members)
}
