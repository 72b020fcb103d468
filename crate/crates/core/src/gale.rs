//! Gale duality for weighted point configurations, and the constructions
//! that trade configurations for polytopes: duplicating lonely dual vectors
//! to reach a polytope with the same secondary polytope, the double lift
//! that carries a tight span one dimension up, and the negated-polar
//! configuration whose tight span is a prescribed polytope.

use num_traits::{One, Zero};

use crate::config::{Cell, PointConfiguration, Weight};
use crate::error::SplitSpanError;
use crate::kernel::{rat_int, vec_sub, zeros, RatMatrix};
use crate::polyhedron::lp::strict_lp_feasible;
use crate::polyhedron::{faces::Polyhedron, htov, HPolyhedron, VPolyhedron};
use crate::Rat;

/// Rows of a kernel basis of the transposed homogenized point matrix, one
/// dual vector per configuration point, index-aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDual {
    pub vectors: Vec<Vec<Rat>>,
}

impl GaleDual {
    /// Dimension `n - d - 1` of the dual vectors.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }
}

/// The Gale dual of a configuration.  The homogenized matrix `V` has rows
/// `(1, a)`; the columns of the dual matrix are a kernel basis of `Vᵀ`, so
/// `Vᵀ·V* = 0` exactly, and the rows of `V*` are the dual vectors `a*`.
/// The kernel basis comes from a reduced echelon form, so the dual is
/// deterministic.  Simplices get n empty vectors.
pub fn gale_dual(a: &PointConfiguration) -> GaleDual {
    let n = a.n();
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(a.dim() + 1);
    cols.push(vec![Rat::one(); n]);
    for c in 0..a.dim() {
        cols.push((0..n).map(|i| a.point(i)[c].clone()).collect());
    }
    let kernel = RatMatrix::from_rows(cols).kernel_basis();
    let vectors = (0..n)
        .map(|i| kernel.iter().map(|k| k[i].clone()).collect())
        .collect();
    GaleDual { vectors }
}

/// The dual image `w̃ = Σ w(a)·a*` of a weight.  Affine weights are spanned
/// by the homogenized columns and map to zero, so `w̃` only sees the class of
/// `w` modulo affine functions.
pub fn weight_to_chamber_point(a: &PointConfiguration, dual: &GaleDual, w: &[Rat]) -> Vec<Rat> {
    assert_eq!(w.len(), a.n());
    assert_eq!(dual.vectors.len(), a.n());
    let mut out = zeros(dual.dim());
    for (wi, v) in w.iter().zip(&dual.vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += wi * x;
        }
    }
    out
}

/// Whether `f` is a face of the subdivision induced by `w`, decided entirely
/// in the dual: `w̃` must lie in the relative interior of the cone positively
/// spanned by the duals of the complement of `f`.  The relative interior of a
/// finitely generated cone is the set of combinations with every coefficient
/// strictly positive, so this is one strict feasibility LP.  An empty
/// complement leaves the cone `{0}`, whose relative interior is `{0}` itself.
pub fn chamber_face_test(a: &PointConfiguration, dual: &GaleDual, w: &[Rat], f: &Cell) -> bool {
    assert!(f.iter().all(|&i| i < a.n()));
    let wt = weight_to_chamber_point(a, dual, w);
    let rest: Vec<usize> = (0..a.n()).filter(|i| !f.contains(i)).collect();
    if rest.is_empty() {
        return wt.iter().all(|x| x.is_zero());
    }
    let strict: Vec<(Vec<Rat>, Rat)> = (0..rest.len())
        .map(|j| {
            let mut row = zeros(rest.len());
            row[j] = Rat::one();
            (row, Rat::zero())
        })
        .collect();
    let eqs: Vec<(Vec<Rat>, Rat)> = (0..dual.dim())
        .map(|c| {
            let row: Vec<Rat> = rest.iter().map(|&i| dual.vectors[i][c].clone()).collect();
            (row, wt[c].clone())
        })
        .collect();
    strict_lp_feasible(rest.len(), &strict, &[], &eqs).is_some()
}

/// Duplicates every dual vector that is the sole member of some open linear
/// halfspace until each open halfspace off the origin holds at least two,
/// then re-materializes a configuration from the augmented dual.  The result
/// is the vertex set of a `(d+m)`-polytope on `n+m` points, `m ≤ n`, whose
/// secondary polytope is isomorphic to the input's.  A configuration that
/// needs no duplication is returned unchanged.
pub fn polytope_with_same_secondary(a: &PointConfiguration) -> PointConfiguration {
    let mut duals = gale_dual(a).vectors;
    let t = duals.first().map_or(0, |v| v.len());
    if t == 0 {
        // Simplices have an empty dual; nothing is alone in a halfspace.
        return a.clone();
    }
    loop {
        let mut grew = false;
        for i in 0..duals.len() {
            let b = duals[i].clone();
            if b.iter().all(|x| x.is_zero()) {
                continue;
            }
            if duals.iter().enumerate().any(|(j, o)| j != i && *o == b) {
                continue;
            }
            // c with ⟨c,b⟩ > 0 and ⟨c,b'⟩ ≤ 0 for every other dual vector.
            let strict = vec![(b.clone(), Rat::zero())];
            let ge: Vec<(Vec<Rat>, Rat)> = duals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, o)| (o.iter().map(|x| -x).collect(), Rat::zero()))
                .collect();
            if strict_lp_feasible(t, &strict, &ge, &[]).is_some() {
                duals.push(b);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    if duals.len() == a.n() {
        return a.clone();
    }
    materialize(&duals)
}

/// A configuration whose Gale dual spans the dependencies of `duals`, up to
/// positive rescaling of the dual vectors.  Columns of the homogenized point
/// matrix are a kernel basis of the dual matrix transposed; a strictly
/// positive kernel element (it exists because duals of configurations span
/// positively) serves as the homogenizing coordinate, and the chart drops
/// one coordinate of its certificate.  Positive rescaling of dual vectors
/// leaves every cone they span unchanged, so chamber membership and the
/// secondary polytope's combinatorics survive.
fn materialize(duals: &[Vec<Rat>]) -> PointConfiguration {
    let n = duals.len();
    let t = duals[0].len();
    let cols: Vec<Vec<Rat>> = (0..t)
        .map(|c| duals.iter().map(|b| b[c].clone()).collect())
        .collect();
    let kernel = RatMatrix::from_rows(cols).kernel_basis();
    let tp = kernel.len();
    let strict: Vec<(Vec<Rat>, Rat)> = (0..n)
        .map(|i| (kernel.iter().map(|k| k[i].clone()).collect(), Rat::zero()))
        .collect();
    let alpha = strict_lp_feasible(tp, &strict, &[], &[])
        .expect("the dual of a point configuration positively spans");
    let y: Vec<Rat> = (0..n)
        .map(|i| {
            kernel
                .iter()
                .zip(&alpha)
                .fold(Rat::zero(), |acc, (k, a)| acc + &k[i] * a)
        })
        .collect();
    // Homogeneous coordinates r_i = (K_1[i], .., K_tp[i]); r_i / y_i lies on
    // the affine chart {x : ⟨alpha, x⟩ = 1}, dropped at alpha's first pivot.
    let piv = alpha.iter().position(|x| !x.is_zero()).unwrap();
    let points: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..tp)
                .filter(|&j| j != piv)
                .map(|j| &kernel[j][i] / &y[i])
                .collect()
        })
        .collect();
    PointConfiguration::new(points).expect("re-materialized configuration is full-dimensional")
}

/// Restriction of `(a, w)` to the points whose lifts are vertices of the
/// lifted polyhedron: points in no face of `Σ_w` go, as do points interior to
/// a face of a cell and all but the first of coinciding kept points.  Returns
/// the sub-configuration, the restricted weight and the kept indices.  The
/// dropped envelope inequalities are redundant, so the tight span is
/// unchanged.
pub fn essential_points(
    a: &PointConfiguration,
    w: &[Rat],
) -> (PointConfiguration, Weight, Vec<usize>) {
    assert_eq!(w.len(), a.n());
    let s = a.regular_subdivision(w);
    let in_cell = |i: usize| s.maximal_faces.iter().any(|c| c.contains(&i));
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..a.n() {
        if !in_cell(j) {
            continue;
        }
        let copies: Vec<usize> = (0..a.n()).filter(|&i| a.point(i) == a.point(j)).collect();
        if copies.iter().copied().find(|&i| in_cell(i)) != Some(j) {
            continue;
        }
        let cell = s.maximal_faces.iter().find(|c| c.contains(&j)).unwrap();
        let others: Cell = cell.iter().copied().filter(|i| !copies.contains(i)).collect();
        if !a.point_in_hull(&others, a.point(j)) {
            kept.push(j);
        }
    }
    let points: Vec<Vec<Rat>> = kept.iter().map(|&i| a.point(i).to_vec()).collect();
    let wr: Weight = kept.iter().map(|&i| w[i].clone()).collect();
    let sub = PointConfiguration::new(points)
        .expect("lift vertices contain the hull vertices of the configuration");
    (sub, wr, kept)
}

/// The double lift: `P = {(a, +w(a)), (a, -w(a))}` over the essential points
/// of `(a, w)`, with `w` first shifted below zero by `max(w)+1` (a constant
/// shift, so the subdivision is unchanged).  The returned weight takes the
/// shifted value `w(a)` on both lifts of `a`.  `P` is the vertex set of a
/// `(d+1)`-polytope, the cells of its subdivision are the doubled cells of
/// `Σ_w`, the tight span of the output is the tight span of the input
/// embedded at last coordinate zero, and coarsest subdivisions stay coarsest.
/// Lift indices: point `i` of the essential configuration becomes `i` (lift
/// by `+w`) and `i + n'` (lift by `-w`).
pub fn pc_to_polytope_tightspan(a: &PointConfiguration, w: &[Rat]) -> (PointConfiguration, Weight) {
    let (base, wr, _) = essential_points(a, w);
    let shift = wr.iter().max().unwrap() + Rat::one();
    let ws: Vec<Rat> = wr.iter().map(|x| x - &shift).collect();
    let mut points = Vec::with_capacity(2 * base.n());
    let mut wp: Weight = Vec::with_capacity(2 * base.n());
    for sign in [Rat::one(), -Rat::one()] {
        for i in 0..base.n() {
            let mut p = base.point(i).to_vec();
            p.push(&ws[i] * &sign);
            points.push(p);
            wp.push(ws[i].clone());
        }
    }
    let p = PointConfiguration::new(points).expect("double lift is full-dimensional");
    (p, wp)
}

/// A configuration whose tight span is the polytope `p`, centered at the
/// centroid of its vertices: the negated vertices of the polar, sorted, with
/// the origin appended, weighted `1` on the polar points and `0` on the
/// origin.  The envelope is then bounded exactly by the gauge of the centered
/// polytope, with bounded faces `{0} × (faces of p)`.  Composing with
/// [`pc_to_polytope_tightspan`] realizes `p` as the tight span of a polytope
/// one dimension up with `2(m+1)` vertices, `m` the number of facets of `p`.
pub fn polytope_as_tightspan(
    p: &VPolyhedron,
) -> Result<(PointConfiguration, Weight), SplitSpanError> {
    if !p.is_bounded() || p.vertices.is_empty() {
        return Err(SplitSpanError::InvalidInput(
            "polytope_as_tightspan needs a nonempty bounded polytope".into(),
        ));
    }
    let d = p.dim;
    let hull = Polyhedron::from_points(&p.vertices);
    if d == 0 || hull.dim() != d {
        return Err(SplitSpanError::InvalidInput(format!(
            "polytope_as_tightspan needs a full-dimensional polytope, got dimension {} in R^{}",
            hull.dim(),
            d
        )));
    }
    let verts = &hull.v.vertices;
    let count = rat_int(verts.len() as i64);
    let centroid: Vec<Rat> = (0..d)
        .map(|c| verts.iter().fold(Rat::zero(), |s, v| s + &v[c]) / &count)
        .collect();
    let polar = HPolyhedron {
        dim: d,
        ineqs: verts
            .iter()
            .map(|v| {
                let vc = vec_sub(v, &centroid);
                (vc.iter().map(|x| -x).collect(), -Rat::one())
            })
            .collect(),
        eqs: vec![],
    };
    let pv = htov(&polar);
    assert!(pv.is_bounded(), "polar of a full-dimensional polytope is bounded");
    let mut pts: Vec<Vec<Rat>> = pv
        .vertices
        .iter()
        .map(|u| u.iter().map(|x| -x).collect())
        .collect();
    pts.sort();
    let mut w: Weight = vec![Rat::one(); pts.len()];
    pts.push(zeros(d));
    w.push(Rat::zero());
    let a = PointConfiguration::new(pts).expect("polar vertices span the ambient space");
    Ok((a, w))
}
