//! GKZ vectors, desk-scale secondary polytopes and their split outer
//! approximations.
//!
//! Triangulations are enumerated by a wall-extension search: every
//! triangulation contains exactly one simplex whose interior holds a fixed
//! generic point, and from that seed the rest is forced wall by wall.  The
//! secondary polytope is then the hull of the GKZ vectors of the regular
//! triangulations; its facets carry the coarsest regular subdivisions.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::config::{Cell, PointConfiguration, Subdivision, Weight};
use crate::error::SplitSpanError;
use crate::kernel::{dot, int_to_rat_vec, primitive, Int, Rat, RatMatrix};
use crate::ksplit::{detect_k_split, is_coarsest, is_regular, ksplit_weight};
use crate::polyhedron::faces::{intersection_vertices, Polyhedron};
use crate::splits::{one_split_weight, one_splits, spanned_hyperplane, split_weight, two_splits};
use crate::Guards;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkzVector {
    pub coordinates: Weight,
    pub triangulation: Subdivision,
}

/// Hull of the GKZ vectors of the regular triangulations.  Each facet is an
/// inner-normal inequality ⟨c,x⟩ ≥ b together with the coarsest regular
/// subdivision Σ_c it supports.
#[derive(Clone, Debug)]
pub struct SecondaryPolytope {
    pub dim: usize,
    pub vertices: Vec<GkzVector>,
    pub facets: Vec<(Weight, Rat, Subdivision)>,
}

/// Outer approximation of the secondary polytope cut out by the facet
/// inequalities of all l-splits with l ≤ level.
#[derive(Clone, Debug)]
pub struct SplitPolyhedron {
    pub level: usize,
    pub inequalities: Vec<(Weight, Rat)>,
    pub affine_equations: Vec<(Weight, Rat)>,
}

/// All full-dimensional simplices on configuration points, sorted.
fn full_dim_simplices(a: &PointConfiguration) -> Vec<Cell> {
    (0..a.n())
        .combinations(a.dim() + 1)
        .map(|c| c.into_iter().collect::<Cell>())
        .filter(|c| !a.cell_volume(c).is_zero())
        .collect()
}

/// Two simplices can share a triangulation iff their hulls meet exactly in
/// the hull of their shared points; for simplices every point subset is a
/// face, so no further face condition is needed.
fn simplices_compatible(a: &PointConfiguration, s: &Cell, t: &Cell) -> bool {
    let pts = |c: &Cell| c.iter().map(|&i| a.point(i).to_vec()).collect::<Vec<_>>();
    let common: Cell = s.intersection(t).copied().collect();
    intersection_vertices(&pts(s), &pts(t))
        .iter()
        .all(|v| common.iter().any(|&i| a.point(i) == v.as_slice()))
}

/// A rational point interior to the hull and off every hyperplane spanned by
/// configuration points, so it lies in the open interior of exactly one
/// simplex of every triangulation.
fn generic_interior_point(a: &PointConfiguration) -> Vec<Rat> {
    let n = a.n();
    let d = a.dim();
    let mut hyperplanes: BTreeSet<(Vec<Int>, Rat)> = BTreeSet::new();
    for idx in (0..n).combinations(d) {
        if let Some(h) = spanned_hyperplane(a, &idx) {
            hyperplanes.insert(h);
        }
    }
    let mut denom: i64 = 2;
    loop {
        // Positive weights (1/denom)^i keep the point interior; the weight
        // curve leaves every spanned hyperplane, so some denom works.
        let t = Rat::new(Int::one(), denom.into());
        let mut coeffs = Vec::with_capacity(n);
        let mut cur = Rat::one();
        for _ in 0..n {
            coeffs.push(cur.clone());
            cur *= &t;
        }
        let sum: Rat = coeffs.iter().sum();
        let q: Vec<Rat> = (0..d)
            .map(|r| {
                coeffs.iter().enumerate().map(|(i, c)| c * &a.point(i)[r]).sum::<Rat>() / &sum
            })
            .collect();
        if hyperplanes.iter().all(|(h, c)| dot(&int_to_rat_vec(h), &q) != *c) {
            return q;
        }
        denom += 1;
    }
}

/// All triangulations of the configuration, cells being full-dimensional
/// simplices on any subsets of the points.  Unused points are allowed.
pub fn enumerate_triangulations(
    a: &PointConfiguration,
    guards: &Guards,
) -> Result<Vec<Subdivision>, SplitSpanError> {
    guards.check(a.n(), a.dim(), "triangulation enumeration")?;
    if a.dim() == 0 {
        return Ok((0..a.n()).map(|i| Subdivision::new(vec![Cell::from([i])])).collect());
    }
    let simplices = full_dim_simplices(a);
    let m = simplices.len();
    let mut compat = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = simplices_compatible(a, &simplices[i], &simplices[j]);
            compat[i][j] = c;
            compat[j][i] = c;
        }
    }
    let boundary: Vec<Cell> = a
        .boundary_faces()
        .into_iter()
        .filter(|(_, fd)| *fd + 1 == a.dim())
        .map(|(f, _)| f)
        .collect();
    // Walls of simplices, keyed by point set, with their incident simplices;
    // boundary walls never need a second cell.
    let mut wall_map: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    let mut simplex_walls: Vec<Vec<Cell>> = vec![Vec::new(); m];
    for (i, s) in simplices.iter().enumerate() {
        for &drop in s {
            let wall: Cell = s.iter().copied().filter(|&p| p != drop).collect();
            if !boundary.iter().any(|f| wall.is_subset(f)) {
                wall_map.entry(wall.clone()).or_default().push(i);
                simplex_walls[i].push(wall);
            }
        }
    }
    let total = a.cell_volume(&a.full_cell());
    let volumes: Vec<Rat> = simplices.iter().map(|s| a.cell_volume(s)).collect();
    let q = generic_interior_point(a);
    let seeds: Vec<usize> = (0..m)
        .filter(|&i| {
            let basis: Vec<usize> = simplices[i].iter().copied().collect();
            a.barycentric(&basis, &q)
                .map(|lam| lam.iter().all(|l| l > &Rat::zero()))
                .unwrap_or(false)
        })
        .collect();

    struct Search<'x> {
        simplices: &'x [Cell],
        compat: &'x [Vec<bool>],
        wall_map: &'x BTreeMap<Cell, Vec<usize>>,
        simplex_walls: &'x [Vec<Cell>],
        volumes: &'x [Rat],
        total: &'x Rat,
        out: Vec<Subdivision>,
    }
    impl Search<'_> {
        // Lex-least interior wall covered on one side only.
        fn open_wall(&self, chosen: &[usize]) -> Option<Cell> {
            let mut counts: BTreeMap<&Cell, usize> = BTreeMap::new();
            for &i in chosen {
                for wall in &self.simplex_walls[i] {
                    *counts.entry(wall).or_insert(0) += 1;
                }
            }
            counts.into_iter().find(|(_, c)| *c == 1).map(|(w, _)| w.clone())
        }

        fn extend(&mut self, chosen: &mut Vec<usize>, vol: Rat) {
            match self.open_wall(chosen) {
                None => {
                    assert_eq!(&vol, self.total, "closed simplex family must tile the hull");
                    let cells = chosen.iter().map(|&i| self.simplices[i].clone()).collect();
                    self.out.push(Subdivision::new(cells));
                }
                Some(wall) => {
                    for &cand in &self.wall_map[&wall] {
                        if chosen.contains(&cand)
                            || !chosen.iter().all(|&i| self.compat[i][cand])
                        {
                            continue;
                        }
                        let v = vol.clone() + &self.volumes[cand];
                        if &v > self.total {
                            continue;
                        }
                        chosen.push(cand);
                        self.extend(chosen, v);
                        chosen.pop();
                    }
                }
            }
        }
    }

    let mut search = Search {
        simplices: &simplices,
        compat: &compat,
        wall_map: &wall_map,
        simplex_walls: &simplex_walls,
        volumes: &volumes,
        total: &total,
        out: Vec::new(),
    };
    for &seed in &seeds {
        search.extend(&mut vec![seed], volumes[seed].clone());
    }
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// The GKZ vector of a triangulation: per point, the total volume of the
/// incident maximal simplices.
pub fn gkz_vector(a: &PointConfiguration, t: &Subdivision) -> GkzVector {
    let mut x = vec![Rat::zero(); a.n()];
    let mut sum = Rat::zero();
    for cell in &t.maximal_faces {
        assert_eq!(cell.len(), a.dim() + 1, "triangulation cells are simplices");
        let v = a.cell_volume(cell);
        assert!(!v.is_zero(), "triangulation cells are full-dimensional");
        for &p in cell {
            x[p] += &v;
        }
        sum += v;
    }
    debug_assert_eq!(
        x.iter().sum::<Rat>(),
        Rat::from_integer((a.dim() as i64 + 1).into()) * sum
    );
    GkzVector { coordinates: x, triangulation: t.clone() }
}

/// RREF basis of the weights that are restrictions of affine functions,
/// together with the pivot columns.  This is the lineality space of the
/// secondary fan.
pub(crate) fn affine_weight_rows(a: &PointConfiguration) -> (RatMatrix, Vec<usize>) {
    let mut rows = vec![vec![Rat::one(); a.n()]];
    for r in 0..a.dim() {
        rows.push((0..a.n()).map(|i| a.point(i)[r].clone()).collect());
    }
    let mut m = RatMatrix::from_rows(rows);
    let pivots = m.rref();
    (m, pivots)
}

/// Canonical primitive representative of `w` modulo affine weights, or None
/// when `w` is affine.  Weights inducing the same subdivision and differing
/// by positive scaling and affine shifts map to the same vector.
pub fn canonical_normal(a: &PointConfiguration, w: &[Rat]) -> Option<Vec<Int>> {
    let (m, pivots) = affine_weight_rows(a);
    let mut v = w.to_vec();
    for (row, &col) in pivots.iter().enumerate() {
        let f = v[col].clone();
        if !f.is_zero() {
            for j in 0..a.n() {
                v[j] -= &f * &m[(row, j)];
            }
        }
    }
    if v.iter().all(|c| c.is_zero()) {
        None
    } else {
        Some(primitive(&v))
    }
}

pub fn secondary_polytope(
    a: &PointConfiguration,
    guards: &Guards,
) -> Result<SecondaryPolytope, SplitSpanError> {
    let tris = enumerate_triangulations(a, guards)?;
    let vertices: Vec<GkzVector> = tris
        .iter()
        .filter(|t| is_regular(a, t).is_some())
        .map(|t| gkz_vector(a, t))
        .collect();
    let coords: Vec<Vec<Rat>> = vertices.iter().map(|v| v.coordinates.clone()).collect();
    let hull = Polyhedron::from_points(&coords);
    let dim = hull.dim();
    assert_eq!(dim, a.n() - a.dim() - 1, "secondary polytope dimension");
    let mut facets: Vec<(Weight, Rat, Subdivision)> = hull
        .h
        .ineqs
        .iter()
        .map(|(c, b)| (c.clone(), b.clone(), a.regular_subdivision(c)))
        .collect();
    facets.sort_by(|x, y| (&x.2, &x.0).cmp(&(&y.2, &y.0)));
    Ok(SecondaryPolytope { dim, vertices, facets })
}

/// The facet-defining inequality ⟨w,x⟩ ≥ c supported by a weight inducing a
/// coarsest regular subdivision; tight exactly on the triangulations
/// refining Σ_w.
pub fn facet_inequality_from_weight(
    a: &PointConfiguration,
    w: &[Rat],
    sec: &SecondaryPolytope,
) -> Result<(Weight, Rat), SplitSpanError> {
    let s = a.regular_subdivision(w);
    if !is_coarsest(a, &s)? {
        return Err(SplitSpanError::InvalidInput(
            "weight does not induce a coarsest subdivision".into(),
        ));
    }
    let offset = sec
        .vertices
        .iter()
        .map(|v| dot(w, &v.coordinates))
        .min()
        .expect("secondary polytope has vertices");
    Ok((w.to_vec(), offset))
}

/// Canonicalized facet set of the secondary polytope, for exact comparison
/// of H-descriptions.
pub fn canonical_facets(a: &PointConfiguration, sec: &SecondaryPolytope) -> BTreeSet<Vec<Int>> {
    sec.facets
        .iter()
        .map(|(c, _, _)| canonical_normal(a, c).expect("facet normals are never affine"))
        .collect()
}

fn min_offset(sec: &SecondaryPolytope, w: &[Rat]) -> Rat {
    sec.vertices
        .iter()
        .map(|v| dot(w, &v.coordinates))
        .min()
        .expect("secondary polytope has vertices")
}

pub fn split_polyhedron(
    a: &PointConfiguration,
    k: usize,
    sec: &SecondaryPolytope,
) -> Result<SplitPolyhedron, SplitSpanError> {
    if k < 2 {
        return Err(SplitSpanError::InvalidInput(
            "split polyhedra start at level 2".into(),
        ));
    }
    let mut normals: BTreeSet<Vec<Int>> = BTreeSet::new();
    for s in one_splits(a) {
        let w = one_split_weight(a, s.point)?;
        normals.extend(canonical_normal(a, &w));
    }
    for s in two_splits(a) {
        normals.extend(canonical_normal(a, &split_weight(a, &s)));
    }
    if k >= 3 {
        for (_, _, s) in &sec.facets {
            if let Some(ks) = detect_k_split(a, s) {
                if ks.k >= 3 && ks.k <= k {
                    let w = ksplit_weight(a, &ks)?;
                    normals.extend(canonical_normal(a, &w));
                }
            }
        }
    }
    let inequalities: Vec<(Weight, Rat)> = normals
        .into_iter()
        .map(|n| {
            let w = int_to_rat_vec(&n);
            let b = min_offset(sec, &w);
            (w, b)
        })
        .collect();
    let base = &sec.vertices[0].coordinates;
    let (m, pivots) = affine_weight_rows(a);
    let affine_equations: Vec<(Weight, Rat)> = (0..pivots.len())
        .map(|r| {
            let row = m.row_vec(r);
            let b = dot(&row, base);
            (row, b)
        })
        .collect();
    Ok(SplitPolyhedron { level: k, inequalities, affine_equations })
}

/// Whether every facet of the secondary polytope comes from an l-split with
/// l ≤ k, i.e. the level-k split polyhedron already equals Sec(𝒜).
pub fn is_totally_k_splittable(
    a: &PointConfiguration,
    k: usize,
    guards: &Guards,
) -> Result<bool, SplitSpanError> {
    let sec = secondary_polytope(a, guards)?;
    let sp = split_polyhedron(a, k, &sec)?;
    let sec_set = canonical_facets(a, &sec);
    let sp_set: BTreeSet<Vec<Int>> = sp
        .inequalities
        .iter()
        .map(|(w, _)| canonical_normal(a, w).expect("split inequality normals are never affine"))
        .collect();
    debug_assert!(sp_set.is_subset(&sec_set), "split inequalities support facets");
    Ok(sp_set == sec_set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::fixtures::*;
    use crate::kernel::{rat, rat_int};

    fn cell(is: &[usize]) -> Cell {
        is.iter().map(|&i| i - 1).collect()
    }

    fn sub(cells: &[&[usize]]) -> Subdivision {
        Subdivision::new(cells.iter().map(|c| cell(c)).collect())
    }

    fn unit_square() -> PointConfiguration {
        PointConfiguration::from_i64(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
    }

    fn triangle_with_center() -> PointConfiguration {
        PointConfiguration::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1]])
    }

    fn cube3() -> PointConfiguration {
        let mut pts = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    pts.push(vec![rat_int(x), rat_int(y), rat_int(z)]);
                }
            }
        }
        PointConfiguration::new(pts).unwrap()
    }

    /// Exhaustive oracle: a triangulation is exactly a pairwise-compatible
    /// simplex family whose volumes add up to the hull volume.
    fn oracle_triangulations(a: &PointConfiguration) -> Vec<Subdivision> {
        let simplices = full_dim_simplices(a);
        let m = simplices.len();
        let volumes: Vec<Rat> = simplices.iter().map(|s| a.cell_volume(s)).collect();
        let mut suffix = vec![Rat::zero(); m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1].clone() + &volumes[i];
        }
        let total = a.cell_volume(&a.full_cell());
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn rec(
            i: usize,
            vol: Rat,
            a: &PointConfiguration,
            simplices: &[Cell],
            volumes: &[Rat],
            suffix: &[Rat],
            total: &Rat,
            current: &mut Vec<usize>,
            out: &mut Vec<Subdivision>,
        ) {
            if &vol == total {
                out.push(Subdivision::new(
                    current.iter().map(|&j| simplices[j].clone()).collect(),
                ));
                return;
            }
            if i == simplices.len() || &(vol.clone() + &suffix[i]) < total {
                return;
            }
            rec(i + 1, vol.clone(), a, simplices, volumes, suffix, total, current, out);
            if current.iter().all(|&j| simplices_compatible(a, &simplices[j], &simplices[i])) {
                current.push(i);
                rec(i + 1, vol + &volumes[i], a, simplices, volumes, suffix, total, current, out);
                current.pop();
            }
        }
        rec(0, Rat::zero(), a, &simplices, &volumes, &suffix, &total, &mut current, &mut out);
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_the_clique_oracle() {
        let glued = PointConfiguration::from_i64(&[
            &[0, 0],
            &[6, 0],
            &[6, 6],
            &[0, 6],
            &[2, 3],
            &[4, 3],
        ]);
        for a in [unit_square(), square_with_center(), triangle_with_center(), glued] {
            let fast = enumerate_triangulations(&a, &Guards::default()).unwrap();
            assert_eq!(fast, oracle_triangulations(&a));
            for t in &fast {
                a.validate_subdivision(&t.maximal_faces).unwrap();
            }
        }
    }

    #[test]
    fn triangulation_counts_of_small_fixtures() {
        let guards = Guards::default();
        assert_eq!(enumerate_triangulations(&unit_square(), &guards).unwrap().len(), 2);
        assert_eq!(
            enumerate_triangulations(&square_with_center(), &guards).unwrap().len(),
            3
        );
        assert_eq!(
            enumerate_triangulations(&triangle_with_center(), &guards).unwrap().len(),
            2
        );
        assert_eq!(enumerate_triangulations(&cube3(), &guards).unwrap().len(), 74);
        let wide = PointConfiguration::from_i64(&[
            &[0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        assert!(matches!(
            enumerate_triangulations(&wide, &guards),
            Err(SplitSpanError::GuardRefusal(_))
        ));
    }

    #[test]
    fn gkz_vectors_of_known_triangulations() {
        let seg = PointConfiguration::from_i64(&[&[0], &[1]]);
        let t = Subdivision::new(vec![Cell::from([0, 1])]);
        assert_eq!(gkz_vector(&seg, &t).coordinates, rats(&[1, 1]));

        let sq = unit_square();
        let t = sub(&[&[1, 2, 4], &[1, 3, 4]]);
        assert_eq!(
            gkz_vector(&sq, &t).coordinates,
            vec![rat_int(1), rat(1, 2), rat(1, 2), rat_int(1)]
        );

        let a = square_with_center();
        let fan = sub(&[&[1, 2, 5], &[1, 3, 5], &[2, 4, 5], &[3, 4, 5]]);
        assert_eq!(gkz_vector(&a, &fan).coordinates, rats(&[2, 2, 2, 2, 4]));
        let diag = sub(&[&[1, 2, 4], &[1, 3, 4]]);
        assert_eq!(gkz_vector(&a, &diag).coordinates, rats(&[4, 2, 2, 4, 0]));
    }

    #[test]
    fn secondary_polytopes_of_the_squares() {
        let guards = Guards::default();
        let sec = secondary_polytope(&unit_square(), &guards).unwrap();
        assert_eq!((sec.dim, sec.vertices.len(), sec.facets.len()), (1, 2, 2));

        let a = square_with_center();
        let sec = secondary_polytope(&a, &guards).unwrap();
        assert_eq!((sec.dim, sec.vertices.len(), sec.facets.len()), (2, 3, 3));
        let subdivisions: BTreeSet<&Subdivision> = sec.facets.iter().map(|(_, _, s)| s).collect();
        let expected = [
            sub(&[&[1, 2, 3, 4]]),
            sub(&[&[1, 2, 4, 5], &[1, 3, 4, 5]]),
            sub(&[&[1, 2, 3, 5], &[2, 3, 4, 5]]),
        ];
        assert_eq!(subdivisions, expected.iter().collect());
        for (_, _, s) in &sec.facets {
            assert!(is_coarsest(&a, s).unwrap());
        }
    }

    #[test]
    fn facet_inequalities_support_their_refinements() {
        let guards = Guards::default();
        let sq = unit_square();
        let sec = secondary_polytope(&sq, &guards).unwrap();
        let s = two_splits(&sq).remove(0);
        let (w, b) = facet_inequality_from_weight(&sq, &split_weight(&sq, &s), &sec).unwrap();
        let tight: Vec<bool> =
            sec.vertices.iter().map(|v| dot(&w, &v.coordinates) == b).collect();
        assert_eq!(tight.iter().filter(|t| **t).count(), 1);

        let a = square_with_center();
        let sec = secondary_polytope(&a, &guards).unwrap();
        let diag = two_splits(&a).remove(0);
        let (w, b) = facet_inequality_from_weight(&a, &split_weight(&a, &diag), &sec).unwrap();
        let tight: BTreeSet<&Subdivision> = sec
            .vertices
            .iter()
            .filter(|v| dot(&w, &v.coordinates) == b)
            .map(|v| &v.triangulation)
            .collect();
        let refining = [sub(&[&[1, 2, 4], &[1, 3, 4]]), sub(&[&[1, 2, 5], &[1, 3, 5], &[2, 4, 5], &[3, 4, 5]])];
        assert_eq!(tight, refining.iter().collect());

        let affine = rats(&[0, 0, 0, 0, 0]);
        assert!(facet_inequality_from_weight(&a, &affine, &sec).is_err());
    }

    #[test]
    fn canonical_normals_identify_weights_up_to_affine_shift() {
        let a = square_with_center();
        let diag = two_splits(&a).remove(0);
        let w = split_weight(&a, &diag);
        let mut shifted = w.clone();
        for (i, p) in a.points().iter().enumerate() {
            shifted[i] += rat_int(3) * &p[0] - &p[1] + rat_int(7);
        }
        let scaled: Vec<Rat> = shifted.iter().map(|x| x * rat_int(5)).collect();
        assert_eq!(canonical_normal(&a, &w), canonical_normal(&a, &scaled));
        let negated: Vec<Rat> = w.iter().map(|x| -x).collect();
        assert_ne!(canonical_normal(&a, &w), canonical_normal(&a, &negated));
        let affine: Vec<Rat> = a.points().iter().map(|p| &p[0] + &p[1]).collect();
        assert_eq!(canonical_normal(&a, &affine), None);
    }

    #[test]
    fn small_configurations_are_totally_2_splittable() {
        let guards = Guards::default();
        assert!(is_totally_k_splittable(&unit_square(), 2, &guards).unwrap());
        assert!(is_totally_k_splittable(&square_with_center(), 2, &guards).unwrap());
        let a = square_with_center();
        let sec = secondary_polytope(&a, &guards).unwrap();
        let sp2 = split_polyhedron(&a, 2, &sec).unwrap();
        let sp4 = split_polyhedron(&a, 4, &sec).unwrap();
        assert_eq!(sp2.inequalities, sp4.inequalities);
        assert_eq!(sp2.affine_equations.len(), 3);
        assert!(split_polyhedron(&a, 1, &sec).is_err());
    }
}
