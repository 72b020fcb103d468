//! 1-splits, 2-splits and the split decomposition of weight functions.
//!
//! A 1-split removes a single point that lies in the hull of the others; a
//! 2-split cuts the configuration along a hyperplane into two full
//! subconfigurations.  Every weight decomposes coherently into split weights
//! plus a split-prime residual, with positive coefficients.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::config::{Cell, PointConfiguration, Subdivision, Weight};
use crate::error::SplitSpanError;
use crate::kernel::{dot, int_to_rat_vec, primitive, vec_sub, Int, Rat, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneSplit {
    pub point: usize,
}

impl OneSplit {
    /// The subdivision with unique maximal face `A \ {p}`.
    pub fn subdivision(&self, n: usize) -> Subdivision {
        Subdivision::new(vec![(0..n).filter(|&i| i != self.point).collect()])
    }
}

/// All points lying in the convex hull of the remaining ones.
pub fn one_splits(a: &PointConfiguration) -> Vec<OneSplit> {
    (0..a.n())
        .filter(|&p| {
            let rest: Cell = (0..a.n()).filter(|&i| i != p).collect();
            a.point_in_hull(&rest, a.point(p))
        })
        .map(|point| OneSplit { point })
        .collect()
}

/// Weight 1 at the split point, 0 elsewhere.
pub fn one_split_weight(a: &PointConfiguration, p: usize) -> Result<Weight, SplitSpanError> {
    let rest: Cell = (0..a.n()).filter(|&i| i != p).collect();
    if p >= a.n() || !a.point_in_hull(&rest, a.point(p)) {
        return Err(SplitSpanError::InvalidInput(format!(
            "point {} is not a 1-split",
            p + 1
        )));
    }
    let mut w = vec![Rat::zero(); a.n()];
    w[p] = Rat::from_integer(1.into());
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoSplit {
    /// Primitive integer normal, first nonzero coordinate positive.
    pub normal: Vec<Int>,
    pub offset: Rat,
    /// Points with normal·p >= offset.
    pub side_plus: Cell,
    /// Points with normal·p <= offset.
    pub side_minus: Cell,
}

impl TwoSplit {
    pub fn subdivision(&self) -> Subdivision {
        Subdivision::new(vec![self.side_minus.clone(), self.side_plus.clone()])
    }

    /// Points on the split hyperplane.
    pub fn wall(&self) -> Cell {
        self.side_plus.intersection(&self.side_minus).copied().collect()
    }
}

/// The canonical (normal, offset) of the hyperplane spanned by the given
/// affinely independent points, or None if they do not span one.
pub(crate) fn spanned_hyperplane(
    a: &PointConfiguration,
    idx: &[usize],
) -> Option<(Vec<Int>, Rat)> {
    let base = a.point(idx[0]);
    let rows: Vec<Vec<Rat>> =
        idx[1..].iter().map(|&i| vec_sub(a.point(i), base)).collect();
    let kernel = RatMatrix::from_rows(if rows.is_empty() {
        vec![vec![Rat::zero(); a.dim()]]
    } else {
        rows
    })
    .kernel_basis();
    if kernel.len() != 1 {
        return None;
    }
    let mut n = primitive(&kernel[0]);
    if n.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false) {
        for c in &mut n {
            *c = -c.clone();
        }
    }
    let offset = dot(&int_to_rat_vec(&n), base);
    Some((n, offset))
}

/// Builds the 2-split cut out by the hyperplane `normal·x = offset`, if that
/// hyperplane splits the configuration.  The hyperplane must meet the
/// interior of the hull, may cross configuration edges only in configuration
/// points or whole edges, and the two sides must form a valid subdivision.
/// Such a subdivision is automatically coarsest: a proper coarsening would
/// need cells of equal volume containing the sides, which forces equality.
pub fn hyperplane_two_split(
    a: &PointConfiguration,
    normal: &[Int],
    offset: &Rat,
    edges: &[Cell],
) -> Option<TwoSplit> {
    let nr = int_to_rat_vec(normal);
    let vals: Vec<Rat> = (0..a.n()).map(|i| dot(&nr, a.point(i)) - offset).collect();
    if !vals.iter().any(|v| v.is_positive()) || !vals.iter().any(|v| v.is_negative()) {
        return None;
    }
    for e in edges {
        let mut pts: Vec<usize> = e.iter().copied().collect();
        pts.sort_by(|&i, &j| a.point(i).cmp(a.point(j)));
        let (u, v) = (pts[0], pts[pts.len() - 1]);
        if (vals[u].is_positive() && vals[v].is_negative())
            || (vals[u].is_negative() && vals[v].is_positive())
        {
            // The hyperplane crosses the open edge; the crossing point must
            // carry a configuration point.
            if !e.iter().any(|&i| vals[i].is_zero()) {
                return None;
            }
        }
    }
    let side_plus: Cell = (0..a.n()).filter(|&i| !vals[i].is_negative()).collect();
    let side_minus: Cell = (0..a.n()).filter(|&i| !vals[i].is_positive()).collect();
    a.validate_subdivision(&[side_plus.clone(), side_minus.clone()]).ok()?;
    Some(TwoSplit { normal: normal.to_vec(), offset: offset.clone(), side_plus, side_minus })
}

/// All 2-splits.  Candidates are the hyperplanes spanned by configuration
/// points; this is complete because a split's wall has dimension d-1 and all
/// its vertices are configuration points.
pub fn two_splits(a: &PointConfiguration) -> Vec<TwoSplit> {
    if a.dim() == 0 {
        return Vec::new();
    }
    let edges: Vec<Cell> = a
        .configuration_faces(&a.full_cell())
        .into_iter()
        .filter(|(_, d)| *d == 1)
        .map(|(f, _)| f)
        .collect();
    let mut hyperplanes = BTreeSet::new();
    for idx in (0..a.n()).combinations(a.dim()) {
        if let Some(h) = spanned_hyperplane(a, &idx) {
            hyperplanes.insert(h);
        }
    }
    hyperplanes
        .into_iter()
        .filter_map(|(n, c)| hyperplane_two_split(a, &n, &c, &edges))
        .collect()
}

/// Transfers a 2-split of a subconfiguration to a larger configuration with
/// the same convex hull: the sides are cut out by the same hyperplane.
pub fn inherit_split(
    a_sub: &PointConfiguration,
    a: &PointConfiguration,
    s: &TwoSplit,
) -> Result<TwoSplit, SplitSpanError> {
    let mut pool: Vec<&[Rat]> = (0..a.n()).map(|i| a.point(i)).collect();
    for i in 0..a_sub.n() {
        let p = a_sub.point(i);
        match pool.iter().position(|q| *q == p) {
            Some(j) => {
                pool.swap_remove(j);
            }
            None => {
                return Err(SplitSpanError::InvalidInput(
                    "subconfiguration is not a sub-multiset".into(),
                ))
            }
        }
    }
    let hull = |c: &PointConfiguration| {
        crate::polyhedron::faces::Polyhedron::from_points(c.points()).v.vertices
    };
    if hull(a_sub) != hull(a) {
        return Err(SplitSpanError::InvalidInput(
            "subconfiguration has a different convex hull".into(),
        ));
    }
    let edges: Vec<Cell> = a
        .configuration_faces(&a.full_cell())
        .into_iter()
        .filter(|(_, d)| *d == 1)
        .map(|(f, _)| f)
        .collect();
    hyperplane_two_split(a, &s.normal, &s.offset, &edges).ok_or_else(|| {
        SplitSpanError::InvalidInput("hyperplane does not split the larger configuration".into())
    })
}

/// The split weight: distance to the hyperplane on the plus side, 0 on the
/// minus side.
pub fn split_weight(a: &PointConfiguration, s: &TwoSplit) -> Weight {
    let nr = int_to_rat_vec(&s.normal);
    (0..a.n())
        .map(|i| {
            let v = dot(&nr, a.point(i)) - &s.offset;
            if v.is_positive() {
                v
            } else {
                Rat::zero()
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    /// Positive coefficients of 1-split weights, by point index.
    pub lambda_one: Vec<(usize, Rat)>,
    /// Positive coefficients of 2-split weights.
    pub lambda_two: Vec<(TwoSplit, Rat)>,
    /// The split-prime rest.
    pub residual: Weight,
}

impl SplitDecomposition {
    pub fn is_empty(&self) -> bool {
        self.lambda_one.is_empty() && self.lambda_two.is_empty()
    }

    /// The summand weights in extraction order: 2-splits, then 1-splits.
    pub fn terms(&self, a: &PointConfiguration) -> Vec<Weight> {
        let mut out = Vec::new();
        for (s, lam) in &self.lambda_two {
            out.push(split_weight(a, s).iter().map(|v| v * lam).collect());
        }
        for (p, lam) in &self.lambda_one {
            let mut w = vec![Rat::zero(); a.n()];
            w[*p] = lam.clone();
            out.push(w);
        }
        out
    }

    pub fn reconstruct(&self, a: &PointConfiguration) -> Weight {
        let mut w = self.residual.clone();
        for t in self.terms(a) {
            for (wi, ti) in w.iter_mut().zip(&t) {
                *wi += ti;
            }
        }
        w
    }
}

/// Decomposes `w` into split weights and a split-prime residual.
///
/// A 2-split coefficient is extractable exactly when the subdivision of `w`
/// refines the split; the coefficient is the fold of the lifted weight across
/// any wall of the subdivision spanning the split hyperplane (the fold ratio
/// is constant along the hyperplane by continuity).  1-split coefficients are
/// the heights of unused points above the lower hull of the other points,
/// measured after the 2-split parts have been removed.
pub fn split_decomposition(a: &PointConfiguration, w: &[Rat]) -> SplitDecomposition {
    let sigma = a.regular_subdivision(w);
    let interior = a.interior_faces(&sigma);
    let mut lambda_two = Vec::new();
    for s in two_splits(a) {
        if !a.is_refinement(&sigma, &s.subdivision()) {
            continue;
        }
        let nr = int_to_rat_vec(&s.normal);
        let on_h = |i: &usize| dot(&nr, a.point(*i)) == s.offset;
        let wall = interior
            .iter()
            .find(|(f, d)| **d == a.dim() - 1 && f.iter().all(on_h))
            .map(|(f, _)| f.clone())
            .expect("a refined split hyperplane is spanned by a wall");
        let adj: Vec<&Cell> = sigma
            .maximal_faces
            .iter()
            .filter(|c| wall.is_subset(c))
            .collect();
        assert_eq!(adj.len(), 2, "interior wall bounds exactly two cells");
        let side_of = |c: &Cell| {
            c.iter()
                .map(|&i| dot(&nr, a.point(i)) - &s.offset)
                .find(|v| !v.is_zero())
                .expect("cell is full-dimensional")
        };
        let (cell_plus, cell_minus) = if side_of(adj[0]).is_positive() {
            (adj[0], adj[1])
        } else {
            (adj[1], adj[0])
        };
        let ext_plus = a.affine_extension(cell_plus, w);
        let ext_minus = a.affine_extension(cell_minus, w);
        let q = *cell_minus.iter().find(|i| !on_h(i)).unwrap();
        let eval = |c: &[Rat]| c[0].clone() + dot(&c[1..], a.point(q));
        let lam = (eval(&ext_minus) - eval(&ext_plus))
            / (&s.offset - dot(&nr, a.point(q)));
        debug_assert!(lam.is_positive(), "fold across a wall of a convex lift");
        lambda_two.push((s, lam));
    }
    let mut wprime = w.to_vec();
    for (s, lam) in &lambda_two {
        for (wi, si) in wprime.iter_mut().zip(split_weight(a, s)) {
            *wi -= si * lam;
        }
    }
    let support = sigma.support();
    let mut lambda_one = Vec::new();
    for os in one_splits(a) {
        let p = os.point;
        if support.contains(&p) {
            continue;
        }
        let rest: Cell = (0..a.n()).filter(|&i| i != p).collect();
        let hv = a
            .hull_value(&rest, &wprime, a.point(p))
            .expect("a 1-split point lies in the hull of the rest");
        let lam = &wprime[p] - hv;
        debug_assert!(lam.is_positive(), "unused points lift strictly above the hull");
        if lam.is_positive() {
            lambda_one.push((p, lam));
        }
    }
    let mut residual = wprime;
    for (p, lam) in &lambda_one {
        residual[*p] -= lam;
    }
    SplitDecomposition { lambda_one, lambda_two, residual }
}

/// True when no split coefficient is extractable from `w`.
pub fn is_split_prime(a: &PointConfiguration, w: &[Rat]) -> bool {
    split_decomposition(a, w).is_empty()
}
