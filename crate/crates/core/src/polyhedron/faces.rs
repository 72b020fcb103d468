//! Face lattices, faces of polytopes as point sets, pulling triangulations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::kernel::{
    determinant, dot, int_to_rat_vec, vec_sub, RatMatrix, Rat,
};
use super::{htov, vtoh, HPolyhedron, VPolyhedron};

/// Paired descriptions of one polyhedron.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub h: HPolyhedron,
    pub v: VPolyhedron,
}

impl Polyhedron {
    pub fn from_points(points: &[Vec<Rat>]) -> Polyhedron {
        assert!(!points.is_empty());
        let dim = points[0].len();
        let mut vertices = points.to_vec();
        vertices.sort();
        vertices.dedup();
        let raw = VPolyhedron { dim, vertices, rays: vec![], lineality: vec![] };
        let h = vtoh(&raw);
        // Re-enumerate so v holds true vertices, not the input points.
        let v = htov(&h);
        Polyhedron { h, v }
    }

    pub fn from_h(h: HPolyhedron) -> Polyhedron {
        let v = htov(&h);
        Polyhedron { h, v }
    }

    pub fn dim(&self) -> usize {
        if self.v.is_empty() {
            return 0;
        }
        let mut rows: Vec<Vec<Rat>> = self.v.vertices[1..]
            .iter()
            .map(|p| vec_sub(p, &self.v.vertices[0]))
            .collect();
        for r in &self.v.rays {
            rows.push(int_to_rat_vec(r));
        }
        for l in &self.v.lineality {
            rows.push(int_to_rat_vec(l));
        }
        if rows.is_empty() {
            return 0;
        }
        RatMatrix::from_rows(rows).rank()
    }
}

/// A face, recorded by which vertices and rays of the parent lie on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: BTreeSet<usize>,
    pub rays: BTreeSet<usize>,
}

/// All nonempty faces of a pointed polyhedron, the polyhedron itself
/// included, ordered by dimension then generator sets.
pub fn face_lattice(p: &Polyhedron) -> Vec<Face> {
    assert!(p.v.is_pointed(), "face lattice needs a pointed polyhedron");
    assert!(!p.v.is_empty());
    let nv = p.v.vertices.len();
    let nr = p.v.rays.len();
    // Incidence of each inequality row with the generators.
    let mut vert_inc: Vec<BTreeSet<usize>> = Vec::new();
    let mut ray_inc: Vec<BTreeSet<usize>> = Vec::new();
    for (a, b) in &p.h.ineqs {
        let vs = (0..nv)
            .filter(|&j| dot(a, &p.v.vertices[j]) == *b)
            .collect();
        let rs = (0..nr)
            .filter(|&j| dot(a, &int_to_rat_vec(&p.v.rays[j])).is_zero())
            .collect();
        vert_inc.push(vs);
        ray_inc.push(rs);
    }
    let top = (
        (0..nv).collect::<BTreeSet<_>>(),
        (0..nr).collect::<BTreeSet<_>>(),
    );
    let mut seen = BTreeSet::new();
    seen.insert(top.clone());
    let mut queue = VecDeque::new();
    queue.push_back(top);
    while let Some((vs, rs)) = queue.pop_front() {
        for i in 0..p.h.ineqs.len() {
            let nvs: BTreeSet<usize> = vs.intersection(&vert_inc[i]).copied().collect();
            if nvs.is_empty() {
                continue;
            }
            let nrs: BTreeSet<usize> = rs.intersection(&ray_inc[i]).copied().collect();
            let f = (nvs, nrs);
            if seen.insert(f.clone()) {
                queue.push_back(f);
            }
        }
    }
    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(vs, rs)| {
            let dim = face_dim(p, &vs, &rs);
            Face { dim, vertices: vs, rays: rs }
        })
        .collect();
    faces.sort();
    faces
}

fn face_dim(p: &Polyhedron, vs: &BTreeSet<usize>, rs: &BTreeSet<usize>) -> usize {
    let base = p.v.vertices[*vs.iter().next().unwrap()].clone();
    let mut rows: Vec<Vec<Rat>> = vs
        .iter()
        .skip(1)
        .map(|&j| vec_sub(&p.v.vertices[j], &base))
        .collect();
    for &j in rs {
        rows.push(int_to_rat_vec(&p.v.rays[j]));
    }
    if rows.is_empty() {
        0
    } else {
        RatMatrix::from_rows(rows).rank()
    }
}

/// Faces with no rays on them.
pub fn bounded_faces(faces: &[Face]) -> Vec<Face> {
    faces.iter().filter(|f| f.rays.is_empty()).cloned().collect()
}

/// Faces maximal under inclusion of generator sets.
pub fn maximal_faces(faces: &[Face]) -> Vec<Face> {
    faces
        .iter()
        .filter(|f| {
            !faces.iter().any(|g| {
                (g.vertices.len() > f.vertices.len() || g.rays.len() > f.rays.len())
                    && f.vertices.is_subset(&g.vertices)
                    && f.rays.is_subset(&g.rays)
            })
        })
        .cloned()
        .collect()
}

/// Every face of `conv(points)` as the set of point indices lying on it,
/// paired with its dimension.  The full index set (the polytope itself) is
/// included; points may repeat and interior points join every face's closure
/// test individually.
pub fn face_point_sets(points: &[Vec<Rat>]) -> Vec<(BTreeSet<usize>, usize)> {
    assert!(!points.is_empty());
    let poly = Polyhedron::from_points(points);
    let faces = face_lattice(&poly);
    let mut out: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for f in &faces {
        // Tight rows of the face, then pull in every input point tight on all
        // of them.
        let tight: Vec<usize> = (0..poly.h.ineqs.len())
            .filter(|&i| {
                f.vertices
                    .iter()
                    .all(|&j| dot(&poly.h.ineqs[i].0, &poly.v.vertices[j]) == poly.h.ineqs[i].1)
            })
            .collect();
        let members: BTreeSet<usize> = (0..points.len())
            .filter(|&j| {
                tight
                    .iter()
                    .all(|&i| dot(&poly.h.ineqs[i].0, &points[j]) == poly.h.ineqs[i].1)
            })
            .collect();
        out.entry(members).or_insert(f.dim);
    }
    out.into_iter().collect()
}

/// Pulling triangulation of `conv(points)`, as index sets into `points`.
/// Deterministic: the smallest index is pulled at every level.  Only vertex
/// indices appear in the output simplices.
pub fn pulling_triangulation(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut memo: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    pulling_rec(points, &all, &mut memo)
}

fn affinely_independent(points: &[Vec<Rat>], idx: &[usize]) -> bool {
    if idx.len() <= 1 {
        return true;
    }
    let base = &points[idx[0]];
    let rows: Vec<Vec<Rat>> = idx[1..].iter().map(|&j| vec_sub(&points[j], base)).collect();
    RatMatrix::from_rows(rows).rank() == idx.len() - 1
}

fn pulling_rec(
    points: &[Vec<Rat>],
    idx: &[usize],
    memo: &mut BTreeMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(hit) = memo.get(idx) {
        return hit.clone();
    }
    // Work on vertices of the hull only.
    let sub: Vec<Vec<Rat>> = idx.iter().map(|&j| points[j].clone()).collect();
    let poly = Polyhedron::from_points(&sub);
    let vert_idx: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&j| poly.v.vertices.contains(&points[j]))
        .collect();
    // Drop duplicate coordinates, keeping the smallest index for each vertex.
    let mut by_coord: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    for &j in vert_idx.iter().rev() {
        by_coord.insert(points[j].clone(), j);
    }
    let verts: Vec<usize> = {
        let mut v: Vec<usize> = by_coord.values().copied().collect();
        v.sort();
        v
    };
    let result = if affinely_independent(points, &verts) {
        vec![verts.clone()]
    } else {
        let apex = verts[0];
        let mut simplices = Vec::new();
        for (a, b) in &poly.h.ineqs {
            if dot(a, &points[apex]) == *b {
                continue;
            }
            let fverts: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&j| dot(a, &points[j]) == *b)
                .collect();
            for mut s in pulling_rec(points, &fverts, memo) {
                s.push(apex);
                s.sort();
                simplices.push(s);
            }
        }
        simplices.sort();
        simplices.dedup();
        simplices
    };
    memo.insert(idx.to_vec(), result.clone());
    result
}

/// Euclidean volume of `conv(points)` for full-dimensional input.
pub fn volume(points: &[Vec<Rat>]) -> Rat {
    assert!(!points.is_empty());
    let d = points[0].len();
    let mut total = Rat::zero();
    let mut dfact = Rat::from_integer(1.into());
    for k in 1..=d {
        dfact *= Rat::from_integer(k.into());
    }
    for s in pulling_triangulation(points) {
        if s.len() != d + 1 {
            continue;
        }
        let rows: Vec<Vec<Rat>> = s[1..].iter().map(|&j| vec_sub(&points[j], &points[s[0]])).collect();
        let det = determinant(&RatMatrix::from_rows(rows));
        total += det.abs() / &dfact;
    }
    total
}

/// Bounded faces of a lifted polyhedron whose recession cone is the ray of
/// the first unit vector: exactly the lower faces with respect to the first
/// coordinate.  Faces are reported through the paired polyhedron so callers
/// can match generators.
pub fn lower_faces(lifted: &VPolyhedron) -> Result<(Polyhedron, Vec<Face>), crate::error::SplitSpanError> {
    let mut e0 = vec![crate::kernel::Int::from(0); lifted.dim];
    e0[0] = crate::kernel::Int::from(1);
    if lifted.rays != vec![e0] || !lifted.lineality.is_empty() {
        return Err(crate::error::SplitSpanError::InvalidInput(
            "lifted polyhedron must recede exactly along the first unit vector".into(),
        ));
    }
    let h = vtoh(lifted);
    let v = htov(&h);
    let poly = Polyhedron { h, v };
    let faces = face_lattice(&poly);
    let bounded = bounded_faces(&faces);
    Ok((poly, bounded))
}

/// Vertex index pairs of all edges (1-faces) of a polytope.
pub fn polytope_edges(p: &Polyhedron) -> Vec<(usize, usize)> {
    assert!(p.v.is_bounded(), "edges of unbounded polyhedra not supported");
    face_lattice(p)
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| {
            let mut it = f.vertices.iter();
            (*it.next().unwrap(), *it.next().unwrap())
        })
        .collect()
}

/// Whether two facet families (facets as vertex sets over `0..nv`) are
/// related by a vertex bijection.  Backtracks over vertex images; a partial
/// image must preserve the number of facets common to every mapped pair, and
/// a full image must carry one family onto the other.  For polytopes this
/// decides combinatorial isomorphism, since the face lattice is determined by
/// the vertex-facet incidences.
pub fn incidence_isomorphic(
    nva: usize,
    fa: &[BTreeSet<usize>],
    nvb: usize,
    fb: &[BTreeSet<usize>],
) -> bool {
    if nva != nvb || fa.len() != fb.len() {
        return false;
    }
    let mut sizes_a: Vec<usize> = fa.iter().map(|f| f.len()).collect();
    let mut sizes_b: Vec<usize> = fb.iter().map(|f| f.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return false;
    }
    let common = |fs: &[BTreeSet<usize>], nv: usize| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; nv]; nv];
        for f in fs {
            for &i in f {
                for &j in f {
                    m[i][j] += 1;
                }
            }
        }
        m
    };
    let ca = common(fa, nva);
    let cb = common(fb, nvb);
    let mut deg_a: Vec<usize> = (0..nva).map(|i| ca[i][i]).collect();
    let mut deg_b: Vec<usize> = (0..nvb).map(|i| cb[i][i]).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let target: BTreeSet<&BTreeSet<usize>> = fb.iter().collect();
    fn assign(
        i: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ca: &[Vec<usize>],
        cb: &[Vec<usize>],
        fa: &[BTreeSet<usize>],
        target: &BTreeSet<&BTreeSet<usize>>,
    ) -> bool {
        let nv = ca.len();
        if i == nv {
            let image: BTreeSet<BTreeSet<usize>> = fa
                .iter()
                .map(|f| f.iter().map(|&v| sigma[v]).collect())
                .collect();
            return image.len() == target.len() && image.iter().all(|f| target.contains(f));
        }
        for j in 0..nv {
            if used[j] || ca[i][i] != cb[j][j] {
                continue;
            }
            if (0..i).any(|p| ca[i][p] != cb[j][sigma[p]]) {
                continue;
            }
            sigma.push(j);
            used[j] = true;
            if assign(i + 1, sigma, used, ca, cb, fa, target) {
                return true;
            }
            sigma.pop();
            used[j] = false;
        }
        false
    }
    assign(0, &mut Vec::new(), &mut vec![false; nvb], &ca, &cb, fa, &target)
}

/// Combinatorial isomorphism of two polytopes via their vertex-facet
/// incidences.
pub fn vertex_facet_isomorphic(p: &Polyhedron, q: &Polyhedron) -> bool {
    assert!(p.v.is_bounded() && q.v.is_bounded());
    if p.dim() != q.dim() {
        return false;
    }
    let facets = |poly: &Polyhedron| -> Vec<BTreeSet<usize>> {
        let d = poly.dim();
        if d == 0 {
            return Vec::new();
        }
        face_lattice(poly)
            .into_iter()
            .filter(|f| f.dim + 1 == d)
            .map(|f| f.vertices)
            .collect()
    };
    incidence_isomorphic(
        p.v.vertices.len(),
        &facets(p),
        q.v.vertices.len(),
        &facets(q),
    )
}

/// Vertices of the intersection of two polytopes given by their points.
pub fn intersection_vertices(p1: &[Vec<Rat>], p2: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let a = Polyhedron::from_points(p1);
    let b = Polyhedron::from_points(p2);
    let joint = HPolyhedron {
        dim: a.h.dim,
        ineqs: a.h.ineqs.iter().chain(&b.h.ineqs).cloned().collect(),
        eqs: a.h.eqs.iter().chain(&b.h.eqs).cloned().collect(),
    };
    htov(&joint).vertices
}
