//! Point configurations, weight functions, regular subdivisions, envelopes
//! and tight spans.
//!
//! A configuration is a finite multiset of points in `Q^d` whose affine hull
//! is all of `R^d`; points are identified by index, so two points may share
//! coordinates without being the same element.  Subdivisions are stored by
//! their maximal faces only, each face a set of point indices.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::SplitSpanError;
use crate::kernel::{
    affine_dim, affine_hull, dot, rat_int, zeros, AffineSubspace, Rat, RatMatrix,
};
use crate::polyhedron::faces::{
    face_lattice, face_point_sets, intersection_vertices, lower_faces, volume, Face, Polyhedron,
};
use crate::polyhedron::lp::{solve_lp, LpProblem, Rel};
use crate::polyhedron::{htov, HPolyhedron, VPolyhedron};

/// Cell of a subdivision: a set of point indices.
pub type Cell = BTreeSet<usize>;

pub fn cell_of(indices: &[usize]) -> Cell {
    indices.iter().copied().collect()
}

#[derive(Clone, Debug)]
pub struct PointConfiguration {
    points: Vec<Vec<Rat>>,
    dim: usize,
}

impl PointConfiguration {
    /// Builds a configuration, requiring at least one point, equal coordinate
    /// lengths and a full-dimensional affine hull.
    pub fn new(points: Vec<Vec<Rat>>) -> Result<Self, SplitSpanError> {
        let Some(first) = points.first() else {
            return Err(SplitSpanError::InvalidInput("empty point configuration".into()));
        };
        let dim = first.len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(SplitSpanError::InvalidInput(
                "points have mixed coordinate lengths".into(),
            ));
        }
        if affine_dim(&points) != dim {
            return Err(SplitSpanError::InvalidInput(format!(
                "configuration must affinely span its ambient space (dimension {dim})"
            )));
        }
        Ok(PointConfiguration { points, dim })
    }

    pub fn from_i64(points: &[&[i64]]) -> Self {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&c| rat_int(c)).collect())
            .collect();
        PointConfiguration::new(pts).unwrap()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rat] {
        &self.points[i]
    }

    pub fn full_cell(&self) -> Cell {
        (0..self.n()).collect()
    }

    fn cell_points(&self, cell: &Cell) -> Vec<Vec<Rat>> {
        cell.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Euclidean volume of the convex hull of a cell's points.
    pub fn cell_volume(&self, cell: &Cell) -> Rat {
        volume(&self.cell_points(cell))
    }

    /// All faces of the subconfiguration on `cell`, each with its dimension.
    /// A face consists of every cell point lying on the corresponding face of
    /// the hull, including points interior to it.  The cell itself appears as
    /// the top face.
    pub fn configuration_faces(&self, cell: &Cell) -> Vec<(Cell, usize)> {
        let order: Vec<usize> = cell.iter().copied().collect();
        face_point_sets(&self.cell_points(cell))
            .into_iter()
            .map(|(local, d)| (local.iter().map(|&l| order[l]).collect(), d))
            .collect()
    }

    /// Proper faces of the whole configuration.
    pub fn boundary_faces(&self) -> Vec<(Cell, usize)> {
        self.configuration_faces(&self.full_cell())
            .into_iter()
            .filter(|(_, d)| *d < self.dim)
            .collect()
    }

    /// Barycentric coordinates of `q` with respect to affinely independent
    /// points `basis`, or None if `q` is outside their affine hull.
    pub fn barycentric(&self, basis: &[usize], q: &[Rat]) -> Option<Vec<Rat>> {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(self.dim + 1);
        for r in 0..self.dim {
            rows.push(basis.iter().map(|&i| self.points[i][r].clone()).collect());
        }
        rows.push(vec![Rat::one(); basis.len()]);
        let mut rhs: Vec<Rat> = q.to_vec();
        rhs.push(Rat::one());
        RatMatrix::from_rows(rows).solve(&rhs)
    }

    /// A deterministic affinely independent spanning subset of `cell`
    /// (`dim(cell)+1` indices, greedily smallest).
    pub fn affine_basis_of(&self, cell: &Cell) -> Vec<usize> {
        let mut basis: Vec<usize> = Vec::new();
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for &i in cell {
            let mut cand = chosen.clone();
            cand.push(self.points[i].clone());
            if affine_dim(&cand) == cand.len() - 1 {
                chosen = cand;
                basis.push(i);
            }
        }
        basis
    }

    /// The affine function agreeing with `w` on a full-dimensional cell,
    /// returned as coefficients `c` with value `c[0] + c[1..]·x`.
    pub fn affine_extension(&self, cell: &Cell, w: &[Rat]) -> Vec<Rat> {
        let basis = self.affine_basis_of(cell);
        assert_eq!(basis.len(), self.dim + 1, "cell must be full-dimensional");
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .map(|&i| {
                let mut row = vec![Rat::one()];
                row.extend(self.points[i].iter().cloned());
                row
            })
            .collect();
        let rhs: Vec<Rat> = basis.iter().map(|&i| w[i].clone()).collect();
        RatMatrix::from_rows(rows).solve(&rhs).expect("affine basis is invertible")
    }

    /// Value of the lower hull of `{(w(a), a) : a in indices}` at `q`,
    /// or None when `q` lies outside the hull of those points.
    pub fn hull_value(&self, indices: &Cell, w: &[Rat], q: &[Rat]) -> Option<Rat> {
        let idx: Vec<usize> = indices.iter().copied().collect();
        let m = idx.len();
        let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
        for r in 0..self.dim {
            let coeffs: Vec<Rat> = idx.iter().map(|&i| self.points[i][r].clone()).collect();
            rows.push((coeffs, Rel::Eq, q[r].clone()));
        }
        rows.push((vec![Rat::one(); m], Rel::Eq, Rat::one()));
        for j in 0..m {
            let mut e = zeros(m);
            e[j] = Rat::one();
            rows.push((e, Rel::Ge, Rat::zero()));
        }
        let objective: Vec<Rat> = idx.iter().map(|&i| w[i].clone()).collect();
        solve_lp(&LpProblem { n: m, rows, objective, maximize: false })
            .optimal()
            .map(|(v, _)| v)
    }

    pub fn point_in_hull(&self, indices: &Cell, q: &[Rat]) -> bool {
        let w = vec![Rat::zero(); self.n()];
        self.hull_value(indices, &w, q).is_some()
    }
}

/// Weight function on a configuration, one rational per point.
pub type Weight = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subdivision {
    /// Maximal faces, sorted and duplicate-free.
    pub maximal_faces: Vec<Cell>,
}

impl Subdivision {
    pub fn new(mut cells: Vec<Cell>) -> Self {
        cells.sort();
        cells.dedup();
        Subdivision { maximal_faces: cells }
    }

    pub fn trivial(n: usize) -> Self {
        Subdivision { maximal_faces: vec![(0..n).collect()] }
    }

    pub fn k(&self) -> usize {
        self.maximal_faces.len()
    }

    pub fn is_trivial(&self, n: usize) -> bool {
        self.maximal_faces.len() == 1 && self.maximal_faces[0].len() == n
    }

    /// Indices appearing in some maximal face.
    pub fn support(&self) -> Cell {
        self.maximal_faces.iter().flatten().copied().collect()
    }
}

impl PointConfiguration {
    /// Checks the subdivision axioms for a family of candidate maximal cells:
    /// every cell full-dimensional, hulls of distinct cells meeting in a
    /// common face whose points carry exactly the shared indices, and volumes
    /// adding up to the volume of the whole configuration.  Face closure
    /// needs no check because faces are derived from the maximal cells.
    pub fn validate_subdivision(&self, cells: &[Cell]) -> Result<Subdivision, SplitSpanError> {
        if cells.is_empty() {
            return Err(SplitSpanError::NotASubdivision("no maximal cells".into()));
        }
        for c in cells {
            if c.iter().any(|&i| i >= self.n()) {
                return Err(SplitSpanError::InvalidInput("cell index out of range".into()));
            }
        }
        let s = Subdivision::new(cells.to_vec());
        let cells = &s.maximal_faces;
        for c in cells {
            if affine_dim(&self.cell_points(c)) != self.dim {
                return Err(SplitSpanError::NotASubdivision(format!(
                    "cell {:?} is not full-dimensional",
                    one_based(c)
                )));
            }
        }
        let faces: Vec<Vec<(Cell, usize)>> =
            cells.iter().map(|c| self.configuration_faces(c)).collect();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                self.check_proper_pair(&cells[i], &cells[j], &faces[i], &faces[j])?;
            }
        }
        let total: Rat = cells.iter().map(|c| self.cell_volume(c)).sum();
        if total != self.cell_volume(&self.full_cell()) {
            return Err(SplitSpanError::NotASubdivision(
                "cells do not cover the configuration".into(),
            ));
        }
        Ok(s)
    }

    fn check_proper_pair(
        &self,
        c1: &Cell,
        c2: &Cell,
        faces1: &[(Cell, usize)],
        faces2: &[(Cell, usize)],
    ) -> Result<(), SplitSpanError> {
        let verts = intersection_vertices(&self.cell_points(c1), &self.cell_points(c2));
        let common: Cell = c1.intersection(c2).copied().collect();
        let overlap = |what: &str| {
            SplitSpanError::NotASubdivision(format!(
                "cells {:?} and {:?} {what}",
                one_based(c1),
                one_based(c2)
            ))
        };
        if verts.is_empty() {
            return Ok(());
        }
        // Every vertex of the geometric intersection must be a configuration
        // point indexed by both cells; the shared index set must then be a
        // face of each.  Together these force the hulls to meet in the common
        // face spanned by the shared points.
        for v in &verts {
            if !common.iter().any(|&i| self.points[i] == *v) {
                return Err(overlap("meet outside their shared points"));
            }
        }
        if !faces1.iter().any(|(f, _)| *f == common)
            || !faces2.iter().any(|(f, _)| *f == common)
        {
            return Err(overlap("do not meet in a common face"));
        }
        Ok(())
    }

    /// Decides Σ_w = s without building the lift: each maximal cell must be
    /// exactly the set of points where `w` meets the cell's affine extension,
    /// with every other point strictly above.  Requires `s` to be a valid
    /// subdivision; the conditions then characterize the lower hull facets.
    pub fn weight_induces(&self, w: &[Rat], s: &Subdivision) -> bool {
        s.maximal_faces.iter().all(|cell| {
            let c = self.affine_extension(cell, w);
            (0..self.n()).all(|p| {
                let v = &c[0] + dot(&c[1..], &self.points[p]);
                if cell.contains(&p) {
                    w[p] == v
                } else {
                    w[p] > v
                }
            })
        })
    }

    /// True when `w` is the restriction of an affine function.
    pub fn is_affine_weight(&self, w: &[Rat]) -> bool {
        let full = self.full_cell();
        let c = self.affine_extension(&full, w);
        (0..self.n()).all(|i| {
            let mut v = c[0].clone();
            v += dot(&c[1..], &self.points[i]);
            v == w[i]
        })
    }

    /// Lifted polyhedron `conv{(w(a), a)} + R>=0 * e0`.
    pub fn lift_polyhedron(&self, w: &[Rat]) -> VPolyhedron {
        let mut vertices: Vec<Vec<Rat>> = (0..self.n())
            .map(|i| {
                let mut v = vec![w[i].clone()];
                v.extend(self.points[i].iter().cloned());
                v
            })
            .collect();
        vertices.sort();
        vertices.dedup();
        let mut e0 = vec![crate::kernel::Int::from(0); self.dim + 1];
        e0[0] = crate::kernel::Int::from(1);
        VPolyhedron { dim: self.dim + 1, vertices, rays: vec![e0], lineality: vec![] }
    }

    /// The regular subdivision induced by `w`: maximal cells are the sets of
    /// points whose lifts lie on a common lower face of the lift polyhedron.
    pub fn regular_subdivision(&self, w: &[Rat]) -> Subdivision {
        assert_eq!(w.len(), self.n());
        let lifted = self.lift_polyhedron(w);
        let (poly, bounded) = lower_faces(&lifted).expect("lift recedes along e0");
        let maximal: Vec<&Face> = bounded
            .iter()
            .filter(|f| {
                !bounded.iter().any(|g| {
                    (g.dim > f.dim) && f.vertices.is_subset(&g.vertices)
                })
            })
            .collect();
        let mut cells = Vec::new();
        for f in maximal {
            // Points on the face: tight on every inequality that is tight on
            // all of the face's vertices.
            let mut rows: Option<Vec<usize>> = None;
            for &vi in &f.vertices {
                let t = poly.h.tight_rows(&poly.v.vertices[vi]);
                rows = Some(match rows {
                    None => t,
                    Some(prev) => prev.into_iter().filter(|r| t.contains(r)).collect(),
                });
            }
            let rows = rows.unwrap_or_default();
            let cell: Cell = (0..self.n())
                .filter(|&i| {
                    let mut lp = vec![w[i].clone()];
                    lp.extend(self.points[i].iter().cloned());
                    rows.iter().all(|&r| {
                        let (a, b) = &poly.h.ineqs[r];
                        dot(a, &lp) == *b
                    })
                })
                .collect();
            cells.push(cell);
        }
        Subdivision::new(cells)
    }

    /// The envelope of `w`: one inequality per point, `x0 + <a, x> >= -w(a)`,
    /// in order of the points.
    pub fn envelope(&self, w: &[Rat]) -> HPolyhedron {
        assert_eq!(w.len(), self.n());
        let ineqs = (0..self.n())
            .map(|i| {
                let mut row = vec![Rat::one()];
                row.extend(self.points[i].iter().cloned());
                (row, -w[i].clone())
            })
            .collect();
        HPolyhedron { dim: self.dim + 1, ineqs, eqs: vec![] }
    }
}

/// The tight span of a weight: the complex of bounded faces of the envelope,
/// together with the set of points whose envelope inequality is tight on each
/// face.
#[derive(Clone, Debug)]
pub struct TightSpan {
    pub envelope: HPolyhedron,
    pub poly: Polyhedron,
    /// Bounded faces of the envelope, sorted by (dim, vertex set).
    pub faces: Vec<Face>,
    /// For each bounded face, the point indices tight on all of it.
    pub tight_sets: Vec<Cell>,
}

impl TightSpan {
    /// Geometric description: each face as its sorted list of vertex
    /// coordinates.  Two tight spans coincide as complexes iff these agree.
    pub fn geometric_faces(&self) -> BTreeSet<Vec<Vec<Rat>>> {
        self.faces
            .iter()
            .map(|f| {
                let mut vs: Vec<Vec<Rat>> =
                    f.vertices.iter().map(|&i| self.poly.v.vertices[i].clone()).collect();
                vs.sort();
                vs
            })
            .collect()
    }

    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        let idx: BTreeSet<usize> = self
            .faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| *f.vertices.first().unwrap())
            .collect();
        idx.into_iter().map(|i| self.poly.v.vertices[i].clone()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let maxdim = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut f = vec![0usize; maxdim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// The maximal faces' tight sets, i.e. the abstract tight span read off
    /// geometrically.
    pub fn minimal_tight_sets(&self) -> BTreeSet<Cell> {
        let maximal: Vec<usize> = (0..self.faces.len())
            .filter(|&i| {
                !(0..self.faces.len()).any(|j| {
                    j != i
                        && self.faces[j].dim > self.faces[i].dim
                        && self.faces[i].vertices.is_subset(&self.faces[j].vertices)
                })
            })
            .collect();
        maximal.into_iter().map(|i| self.tight_sets[i].clone()).collect()
    }
}

impl PointConfiguration {
    pub fn tight_span(&self, w: &[Rat]) -> TightSpan {
        let h = self.envelope(w);
        let v = htov(&h);
        let poly = Polyhedron { h: h.clone(), v };
        let lattice = face_lattice(&poly);
        let mut faces: Vec<Face> =
            lattice.into_iter().filter(|f| f.rays.is_empty()).collect();
        faces.sort();
        let tight_sets = faces
            .iter()
            .map(|f| {
                (0..self.n())
                    .filter(|&i| {
                        f.vertices.iter().all(|&vi| {
                            let x = &poly.v.vertices[vi];
                            let (a, b) = &h.ineqs[i];
                            dot(a, x) == *b
                        })
                    })
                    .collect()
            })
            .collect();
        TightSpan { envelope: h, poly, faces, tight_sets }
    }

    /// All faces of a subdivision (of its maximal cells), with dimensions.
    pub fn subdivision_faces(&self, s: &Subdivision) -> BTreeMap<Cell, usize> {
        let mut out = BTreeMap::new();
        for c in &s.maximal_faces {
            for (f, d) in self.configuration_faces(c) {
                out.insert(f, d);
            }
        }
        out
    }

    /// Faces of the subdivision contained in no proper face of the whole
    /// configuration.
    pub fn interior_faces(&self, s: &Subdivision) -> BTreeMap<Cell, usize> {
        let boundary = self.boundary_faces();
        self.subdivision_faces(s)
            .into_iter()
            .filter(|(f, _)| !boundary.iter().any(|(b, _)| f.is_subset(b)))
            .collect()
    }

    /// The abstract tight span: interior faces of the subdivision, ordered by
    /// inclusion.
    pub fn abstract_tight_span(&self, s: &Subdivision) -> BTreeSet<Cell> {
        self.interior_faces(s).into_keys().collect()
    }

    /// True when the subdivision has exactly one inclusion-minimal interior
    /// face.
    pub fn has_g_property(&self, s: &Subdivision) -> bool {
        let interior = self.abstract_tight_span(s);
        let minimal: Vec<&Cell> = interior
            .iter()
            .filter(|f| !interior.iter().any(|g| *g != **f && g.is_subset(f)))
            .collect();
        minimal.len() == 1
    }

    /// True when every maximal face of `s1` is contained (as an index set) in
    /// some maximal face of `s2`.
    pub fn is_refinement(&self, s1: &Subdivision, s2: &Subdivision) -> bool {
        s1.maximal_faces
            .iter()
            .all(|c1| s2.maximal_faces.iter().any(|c2| c1.is_subset(c2)))
    }

    /// The common refinement: cells are the full-dimensional intersections of
    /// cells of the inputs.  None when the intersections fail to form a
    /// subdivision.
    pub fn common_refinement(&self, s1: &Subdivision, s2: &Subdivision) -> Option<Subdivision> {
        let mut cells: Vec<Cell> = Vec::new();
        for c1 in &s1.maximal_faces {
            for c2 in &s2.maximal_faces {
                let c: Cell = c1.intersection(c2).copied().collect();
                if !c.is_empty() && affine_dim(&self.cell_points(&c)) == self.dim {
                    cells.push(c);
                }
            }
        }
        if cells.is_empty() {
            return None;
        }
        self.validate_subdivision(&cells).ok()
    }

    /// Whether two weights induce coherent subdivisions: the subdivision of
    /// the sum must exist as their common refinement.
    pub fn coherence_check(&self, w1: &[Rat], w2: &[Rat]) -> bool {
        let s1 = self.regular_subdivision(w1);
        let s2 = self.regular_subdivision(w2);
        let sum: Vec<Rat> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
        let s12 = self.regular_subdivision(&sum);
        self.common_refinement(&s1, &s2) == Some(s12)
    }

    /// Independent certificate for coherence: every vertex of the envelope of
    /// `w1+w2` must split as a sum of points of the two summand envelopes.
    /// This is exactly `E(w1) + E(w2) = E(w1+w2)` since the recession cones
    /// agree.
    pub fn envelopes_sum(&self, w1: &[Rat], w2: &[Rat]) -> bool {
        let sum: Vec<Rat> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
        let e12 = self.envelope(&sum);
        let v12 = htov(&e12);
        let k = self.dim + 1;
        v12.vertices.iter().all(|v| {
            // x in E(w1) with v - x in E(w2).
            let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
            for i in 0..self.n() {
                let mut a = vec![Rat::one()];
                a.extend(self.points[i].iter().cloned());
                rows.push((a.clone(), Rel::Ge, -w1[i].clone()));
                let av = dot(&a, v);
                let neg: Vec<Rat> = a.iter().map(|c| -c.clone()).collect();
                rows.push((neg, Rel::Ge, -w2[i].clone() - av));
            }
            let obj = zeros(k);
            solve_lp(&LpProblem { n: k, rows, objective: obj, maximize: false })
                .optimal()
                .is_some()
        })
    }

    /// Affine hull of a cell's points.
    pub fn cell_affine_hull(&self, cell: &Cell) -> AffineSubspace {
        affine_hull(&self.cell_points(cell))
    }
}

/// Geometric equality of subdivisions: same set of cell hulls, compared by
/// vertex coordinates.  Distinguishes label-level from support-level
/// agreement.
pub fn geometrically_equal(
    a: &PointConfiguration,
    s1: &Subdivision,
    s2: &Subdivision,
) -> bool {
    let hulls = |s: &Subdivision| -> BTreeSet<Vec<Vec<Rat>>> {
        s.maximal_faces
            .iter()
            .map(|c| {
                let pts: Vec<Vec<Rat>> = c.iter().map(|&i| a.point(i).to_vec()).collect();
                let p = Polyhedron::from_points(&pts);
                p.v.vertices.clone()
            })
            .collect()
    };
    hulls(s1) == hulls(s2)
}

fn one_based(c: &Cell) -> Vec<usize> {
    c.iter().map(|&i| i + 1).collect()
}

/// Fixtures shared across the test suites.
pub mod fixtures {
    use super::*;

    /// Unit square scaled by 2 with its midpoint, points in matrix order:
    /// 1=(0,0), 2=(0,2), 3=(2,0), 4=(2,2), 5=(1,1).
    pub fn square_with_center() -> PointConfiguration {
        PointConfiguration::from_i64(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2], &[1, 1]])
    }

    /// Hexagon with center: 1=(0,0), 2=(1,0), 3=(2,1), 4=(2,2), 5=(1,2),
    /// 6=(0,1), 7=(1,1).
    pub fn hexagon_with_center() -> PointConfiguration {
        PointConfiguration::from_i64(&[
            &[0, 0],
            &[1, 0],
            &[2, 1],
            &[2, 2],
            &[1, 2],
            &[0, 1],
            &[1, 1],
        ])
    }

    pub fn rats(w: &[i64]) -> Vec<Rat> {
        w.iter().map(|&x| rat_int(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::kernel::rat;

    fn cells(spec: &[&[usize]]) -> Vec<Cell> {
        spec.iter().map(|c| c.iter().map(|&i| i - 1).collect()).collect()
    }

    #[test]
    fn square_diagonal_subdivision_validates() {
        let a = square_with_center();
        // Triangles along the main diagonal, with and without the center.
        let s = a.validate_subdivision(&cells(&[&[1, 2, 4], &[1, 3, 4]])).unwrap();
        assert_eq!(s.k(), 2);
        let s5 = a.validate_subdivision(&cells(&[&[1, 2, 4, 5], &[1, 3, 4, 5]])).unwrap();
        assert_eq!(s5.k(), 2);
    }

    #[test]
    fn overlapping_cells_rejected() {
        let a = square_with_center();
        // Two triangles overlapping in a full-dimensional region.
        let err = a.validate_subdivision(&cells(&[&[1, 2, 4], &[1, 2, 3, 4]]));
        assert!(err.is_err());
        // Proper geometric intersection but not along shared points.
        let err = a.validate_subdivision(&cells(&[&[1, 2, 4], &[2, 3, 4]]));
        assert!(err.is_err());
    }

    #[test]
    fn undercovering_rejected() {
        let a = square_with_center();
        let err = a.validate_subdivision(&cells(&[&[1, 2, 4]]));
        assert!(err.is_err());
    }

    #[test]
    fn regular_subdivision_of_lifted_square() {
        let a = square_with_center();
        // Height on point 1 folds along the antidiagonal 2-3; the center 5
        // lies on that fold, so it belongs to both cells.
        let s = a.regular_subdivision(&rats(&[1, 0, 0, 0, 0]));
        assert_eq!(s, Subdivision::new(cells(&[&[1, 2, 3, 5], &[2, 3, 4, 5]])));
        // Affine weights give the trivial subdivision.
        let t = a.regular_subdivision(&rats(&[0, 2, 2, 4, 2]));
        assert!(t.is_trivial(5));
        // Lifting the center point below its hull value cuts four triangles.
        let s = a.regular_subdivision(&rats(&[0, 0, 0, 0, -1]));
        assert_eq!(
            s,
            Subdivision::new(cells(&[&[1, 2, 5], &[1, 3, 5], &[2, 4, 5], &[3, 4, 5]]))
        );
    }

    #[test]
    fn regular_subdivision_shift_invariance() {
        let a = hexagon_with_center();
        let w = rats(&[0, 0, 1, 1, 0, 0, 0]);
        // Add the affine function 3 - x + 2y.
        let shift: Vec<Rat> = a
            .points()
            .iter()
            .map(|p| rat_int(3) - &p[0] + rat_int(2) * &p[1])
            .collect();
        let ws: Vec<Rat> = w.iter().zip(&shift).map(|(a, b)| a + b).collect();
        assert_eq!(a.regular_subdivision(&w), a.regular_subdivision(&ws));
    }

    #[test]
    fn hexagon_goldens() {
        let a = hexagon_with_center();
        let s = a.regular_subdivision(&rats(&[0, 0, 1, 1, 0, 0, 0]));
        assert_eq!(s, Subdivision::new(cells(&[&[1, 2, 5, 6, 7], &[2, 3, 4, 5, 7]])));
        let sbar = a.regular_subdivision(&rats(&[0, 0, 1, 1, 0, 0, 1]));
        assert_eq!(sbar, Subdivision::new(cells(&[&[1, 2, 5, 6], &[2, 3, 4, 5]])));
        assert!(a.is_refinement(&sbar, &s));
        assert!(!a.is_refinement(&s, &sbar));
        assert!(geometrically_equal(&a, &s, &sbar));
    }

    #[test]
    fn hexagon_tight_spans_are_the_same_segment() {
        let a = hexagon_with_center();
        let t = a.tight_span(&rats(&[0, 0, 1, 1, 0, 0, 0]));
        let tbar = a.tight_span(&rats(&[0, 0, 1, 1, 0, 0, 1]));
        assert_eq!(t.geometric_faces(), tbar.geometric_faces());
        let verts = t.vertices();
        assert_eq!(
            verts,
            vec![rats(&[0, 0, 0]), rats(&[1, -1, 0])]
        );
        assert_eq!(t.f_vector(), vec![2, 1]);
    }

    #[test]
    fn square_envelope_golden() {
        let a = square_with_center();
        let t = a.tight_span(&rats(&[1, 0, 0, 0, 0]));
        let verts = t.poly.v.vertices.clone();
        let expect = vec![
            vec![rat_int(-1), rat(1, 2), rat(1, 2)],
            rats(&[0, 0, 0]),
        ];
        assert_eq!(verts, expect);
        let rays: Vec<Vec<i64>> = vec![
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![2, -1, 0],
            vec![2, 0, -1],
        ];
        let got: Vec<Vec<crate::kernel::Int>> = t.poly.v.rays.clone();
        let want: Vec<Vec<crate::kernel::Int>> = rays
            .into_iter()
            .map(|r| r.into_iter().map(crate::kernel::Int::from).collect())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn abstract_tight_span_matches_geometric_one() {
        let a = hexagon_with_center();
        for w in [
            rats(&[0, 0, 1, 1, 0, 0, 0]),
            rats(&[0, 0, 1, 1, 0, 0, 1]),
            rats(&[3, 0, 0, 2, 0, 0, 0]),
            rats(&[1, 0, 2, 0, 1, 0, 0]),
        ] {
            let s = a.regular_subdivision(&w);
            let interior = a.abstract_tight_span(&s);
            let t = a.tight_span(&w);
            let geometric: BTreeSet<Cell> = t.tight_sets.iter().cloned().collect();
            assert_eq!(interior, geometric, "weight {w:?}");
        }
    }

    #[test]
    fn g_property_of_square_subdivisions() {
        let a = square_with_center();
        // One diagonal: unique interior face (the diagonal itself).
        let s = a.regular_subdivision(&rats(&[1, 0, 0, 0, 0]));
        assert!(a.has_g_property(&s));
        // Four triangles around the center: unique minimal face {5}.
        let s = a.regular_subdivision(&rats(&[0, 0, 0, 0, -1]));
        assert!(a.has_g_property(&s));
    }

    #[test]
    fn coherence_on_square_with_center() {
        let a = square_with_center();
        let w1 = rats(&[1, 0, 0, 0, 0]);
        let w2 = rats(&[0, 0, 1, 0, 0]);
        assert!(a.coherence_check(&w1, &w2));
        assert!(a.envelopes_sum(&w1, &w2));
        // Lifting the center as well drops it from both subdivisions, and the
        // bare diagonal splits have no common refinement.
        let wbar1 = rats(&[1, 0, 0, 0, 1]);
        let wbar2 = rats(&[0, 0, 1, 0, 1]);
        assert!(!a.coherence_check(&wbar1, &wbar2));
        assert!(!a.envelopes_sum(&wbar1, &wbar2));
    }

    #[test]
    fn brute_force_lower_hull_oracle() {
        // Check regular_subdivision against direct hull-value computation on
        // small configurations: a point is in a cell iff its lift touches the
        // lower hull on that cell's affine support.
        let a = square_with_center();
        let weights = [
            rats(&[1, 0, 0, 0, 0]),
            rats(&[0, 0, 0, 0, -1]),
            rats(&[2, 1, 1, 0, 1]),
            rats(&[0, 0, 0, 0, 1]),
        ];
        for w in &weights {
            let s = a.regular_subdivision(w);
            let full = a.full_cell();
            for (i, p) in a.points().iter().enumerate() {
                let hv = a.hull_value(&full, w, p).unwrap();
                let used = s.maximal_faces.iter().any(|c| c.contains(&i));
                assert_eq!(hv == w[i], used, "weight {w:?} point {i}");
            }
        }
    }

    #[test]
    fn common_refinement_and_failure() {
        let a = square_with_center();
        let s1 = a.regular_subdivision(&rats(&[1, 0, 0, 0, 0]));
        let s2 = a.regular_subdivision(&rats(&[0, 0, 1, 0, 0]));
        let cr = a.common_refinement(&s1, &s2).unwrap();
        assert_eq!(cr.k(), 4);
        // The two diagonal triangulations of the plain square intersect in
        // cells that are not joined along common faces.
        let sq = PointConfiguration::from_i64(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]);
        let d1 = Subdivision::new(cells(&[&[1, 2, 4], &[1, 3, 4]]));
        let d2 = Subdivision::new(cells(&[&[1, 2, 3], &[2, 3, 4]]));
        assert!(sq.common_refinement(&d1, &d2).is_none());
    }
}
