//! k-splits and coarsest subdivisions: regularity certificates, coarsest
//! tests, the fan-based weight construction, and classification of the
//! combinatorial shape of tight spans.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::config::{Cell, PointConfiguration, Subdivision, Weight};
use crate::error::SplitSpanError;
use crate::kernel::{
    dot, primitive, rat_int, vec_add, vec_sub, zeros, AffineSubspace, Rat, RatMatrix,
};
use crate::polyhedron::faces::Polyhedron;
use crate::polyhedron::lp::strict_lp_feasible;
use crate::polyhedron::HPolyhedron;
use crate::secondary::secondary_polytope;
use crate::splits::one_split_weight;
use crate::Guards;

/// A coarsest subdivision with k maximal faces whose abstract tight span is
/// the face complex of a (k-1)-simplex.  The core is the unique interior
/// face of codimension k-1 shared by all maximal faces.
#[derive(Clone, Debug)]
pub struct KSplit {
    pub subdivision: Subdivision,
    pub k: usize,
    pub core_face: Cell,
    pub core_subspace: AffineSubspace,
}

/// A regularity witness: a weight inducing exactly `s`, if one exists.
///
/// A weight induces `s` iff for every maximal cell the affine extension of
/// `w` on that cell matches `w` on the cell and stays strictly below `w`
/// everywhere else.  Both condition families are linear in `w`, so a strict
/// feasibility LP decides the question exactly.
pub fn is_regular(a: &PointConfiguration, s: &Subdivision) -> Option<Weight> {
    let n = a.n();
    let mut eq_rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut strict_rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for cell in &s.maximal_faces {
        let basis = a.affine_basis_of(cell);
        for p in 0..n {
            if basis.contains(&p) {
                continue;
            }
            let lam = a
                .barycentric(&basis, a.point(p))
                .expect("cell basis spans the ambient space");
            let mut row = zeros(n);
            row[p] = Rat::from_integer(1.into());
            for (&b, l) in basis.iter().zip(&lam) {
                row[b] -= l;
            }
            if cell.contains(&p) {
                eq_rows.push((row, Rat::zero()));
            } else {
                strict_rows.push((row, Rat::zero()));
            }
        }
    }
    let w = strict_lp_feasible(n, &strict_rows, &[], &eq_rows)?;
    assert!(a.weight_induces(&w, s), "strict witness must induce s");
    Some(w)
}

/// All partitions of `0..k` into blocks, including the discrete one.
fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; k];
    loop {
        let blocks = assign.iter().max().map(|m| m + 1).unwrap_or(0);
        let mut part = vec![Vec::new(); blocks];
        for (i, &b) in assign.iter().enumerate() {
            part[b].push(i);
        }
        out.push(part);
        // Next restricted growth string.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            let cap = assign[..i].iter().max().map(|m| m + 1).unwrap_or(0);
            if assign[i] < cap {
                assign[i] += 1;
                for v in assign[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
            assign[i] = 0;
        }
    }
}

/// A valid nontrivial proper coarsening of `s` obtained by merging maximal
/// cells (and optionally absorbing configuration points inside the merged
/// hulls), or None.  Complete for coarsenings because every cell of a
/// coarsening is a union of cells of `s` plus points of its hull.
fn coarsening_by_merging(a: &PointConfiguration, s: &Subdivision) -> Option<Subdivision> {
    let cells = &s.maximal_faces;
    let k = cells.len();
    for part in set_partitions(k) {
        let mut bases: Vec<Cell> = Vec::new();
        let mut extras: Vec<(usize, usize)> = Vec::new();
        for (b, block) in part.iter().enumerate() {
            let mut base = Cell::new();
            for &i in block {
                base.extend(cells[i].iter().copied());
            }
            for p in 0..a.n() {
                if !base.contains(&p) && a.point_in_hull(&base, a.point(p)) {
                    extras.push((b, p));
                }
            }
            bases.push(base);
        }
        if extras.len() > 16 {
            continue;
        }
        for mask in 0u32..(1 << extras.len()) {
            let mut cand = bases.clone();
            for (j, &(b, p)) in extras.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    cand[b].insert(p);
                }
            }
            if let Ok(t) = a.validate_subdivision(&cand) {
                if &t != s && !t.is_trivial(a.n()) {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Whether the only proper coarsening of `s` is the trivial subdivision.
///
/// For regular subdivisions the secondary cone of `s` spans the space of
/// weights affine on every maximal cell; `s` is coarsest iff that space has
/// dimension d+2 (affine weights contribute d+1, the fold one more).  For
/// non-regular subdivisions an exhaustive merge search decides.
pub fn is_coarsest(a: &PointConfiguration, s: &Subdivision) -> Result<bool, SplitSpanError> {
    a.validate_subdivision(&s.maximal_faces.iter().cloned().collect::<Vec<_>>())?;
    if is_regular(a, s).is_none() {
        return Ok(coarsening_by_merging(a, s).is_none());
    }
    let n = a.n();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for cell in &s.maximal_faces {
        let basis = a.affine_basis_of(cell);
        for &p in cell {
            if basis.contains(&p) {
                continue;
            }
            let lam = a.barycentric(&basis, a.point(p)).unwrap();
            let mut row = zeros(n);
            row[p] = Rat::from_integer(1.into());
            for (&b, l) in basis.iter().zip(&lam) {
                row[b] -= l;
            }
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(rows).rank() };
    Ok(n - rank == a.dim() + 2)
}

/// Recognizes `s` as a k-split: coarsest, with the intersections of cell
/// subsets realizing every interior face exactly once, ordered like the face
/// complex of a (k-1)-simplex, and with a core of codimension k-1.
pub fn detect_k_split(a: &PointConfiguration, s: &Subdivision) -> Option<KSplit> {
    let k = s.k();
    let n = a.n();
    if s.is_trivial(n) || k > 20 {
        return None;
    }
    let interior = a.interior_faces(s);
    let cells: Vec<&Cell> = s.maximal_faces.iter().collect();
    let mut by_subset: Vec<(u32, Cell)> = Vec::new();
    for t in 1u32..(1 << k) {
        let mut it = (0..k).filter(|i| t & (1 << i) != 0);
        let first = it.next().unwrap();
        let mut f: Cell = cells[first].clone();
        for i in it {
            f = f.intersection(cells[i]).copied().collect();
        }
        if !interior.contains_key(&f) {
            return None;
        }
        by_subset.push((t, f));
    }
    let distinct: BTreeSet<&Cell> = by_subset.iter().map(|(_, f)| f).collect();
    if distinct.len() != (1 << k) - 1 || interior.len() != (1 << k) - 1 {
        return None;
    }
    for (t1, f1) in &by_subset {
        for (t2, f2) in &by_subset {
            if (f1.is_subset(f2)) != (t2 & t1 == *t2) {
                return None;
            }
        }
    }
    let core = by_subset.last().unwrap().1.clone();
    if interior[&core] + k != a.dim() + 1 {
        return None;
    }
    if !is_coarsest(a, s).ok()? {
        return None;
    }
    let core_subspace = a.cell_affine_hull(&core);
    Some(KSplit { subdivision: s.clone(), k, core_face: core, core_subspace })
}

/// The canonical weight inducing a k-split, built from the complete fan of
/// the subdivision projected along the core: each projected point is the
/// unique nonnegative combination of the primitive ray generators of its
/// cone, and its weight is the sum of those coefficients.  Primitive integer
/// generators replace unit vectors; positive rescaling of a ray does not
/// change the induced subdivision.  The reproduction of the subdivision is
/// checked unconditionally.
pub fn ksplit_weight(a: &PointConfiguration, ks: &KSplit) -> Result<Weight, SplitSpanError> {
    let n = a.n();
    let d = a.dim();
    let k = ks.k;
    if k == 1 {
        let cell = &ks.subdivision.maximal_faces[0];
        let p = (0..n).find(|i| !cell.contains(i)).ok_or_else(|| {
            SplitSpanError::InvalidInput("1-split must omit a point".into())
        })?;
        return one_split_weight(a, p);
    }
    let core_pts: Vec<&[Rat]> = ks.core_face.iter().map(|&i| a.point(i)).collect();
    let m = rat_int(core_pts.len() as i64);
    let origin: Vec<Rat> = (0..d)
        .map(|r| core_pts.iter().map(|p| &p[r]).sum::<Rat>() / &m)
        .collect();
    // Chart: columns are a basis of the core direction space followed by a
    // basis of its orthogonal complement; the projection of q is the tail of
    // the coordinate vector of q - origin.
    let u_basis = &ks.core_subspace.basis;
    let w_basis = if u_basis.is_empty() {
        (0..d)
            .map(|i| {
                let mut e = zeros(d);
                e[i] = Rat::from_integer(1.into());
                e
            })
            .collect()
    } else {
        RatMatrix::from_rows(u_basis.clone()).kernel_basis()
    };
    assert_eq!(u_basis.len() + w_basis.len(), d);
    assert_eq!(w_basis.len(), k - 1);
    let chart_rows: Vec<Vec<Rat>> = (0..d)
        .map(|r| {
            u_basis.iter().chain(&w_basis).map(|col| col[r].clone()).collect()
        })
        .collect();
    let chart = RatMatrix::from_rows(chart_rows);
    let project = |q: &[Rat]| -> Vec<Rat> {
        let c = chart.solve(&vec_sub(q, &origin)).expect("chart is invertible");
        c[u_basis.len()..].to_vec()
    };
    let cells = &ks.subdivision.maximal_faces;
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for i in 0..k {
        let mut it = (0..k).filter(|j| *j != i);
        let first = it.next().unwrap();
        let mut face: Cell = cells[first].clone();
        for j in it {
            face = face.intersection(&cells[j]).copied().collect();
        }
        let gen = face
            .iter()
            .map(|&p| project(a.point(p)))
            .find(|v| v.iter().any(|c| !c.is_zero()))
            .expect("ray face leaves the core");
        rays.push(crate::kernel::int_to_rat_vec(&primitive(&gen)));
    }
    let mut w = vec![Rat::zero(); n];
    for p in 0..n {
        let cell_idx = cells.iter().position(|c| c.contains(&p)).ok_or_else(|| {
            SplitSpanError::InvalidInput(format!(
                "point {} lies in no maximal face of the k-split",
                p + 1
            ))
        })?;
        let cone: Vec<usize> = (0..k).filter(|j| *j != cell_idx).collect();
        let rows: Vec<Vec<Rat>> = (0..k - 1)
            .map(|r| cone.iter().map(|&j| rays[j][r].clone()).collect())
            .collect();
        let lam = RatMatrix::from_rows(rows)
            .solve(&project(a.point(p)))
            .expect("cone generators are linearly independent");
        debug_assert!(lam.iter().all(|l| !l.is_negative()));
        w[p] = lam.iter().sum();
    }
    if !a.weight_induces(&w, &ks.subdivision) {
        return Err(SplitSpanError::InvalidInput(
            "fan weight construction failed to reproduce the subdivision".into(),
        ));
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    Simplex,
    TriangleFan,
    GluedTriangles,
    Polygon,
    Pyramid,
    Bipyramid,
    StackedTetrahedra,
    NonplanarBook,
    Mixed,
    Other,
}

/// Combinatorial shape of the abstract tight span of a subdivision: one face
/// per interior face of the subdivision, on the vertex set of maximal cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightSpanShape {
    pub kind: ShapeKind,
    /// Faces counted by dimension.
    pub f_vector: Vec<usize>,
    /// Edges as pairs of maximal-cell indices.
    pub edges: Vec<(usize, usize)>,
    /// Inclusion-maximal faces as (cell index set, dimension).
    pub maximal_faces: Vec<(BTreeSet<usize>, usize)>,
}

/// Tight-span faces as (containing cells, dimension), one per interior face.
fn tight_span_faces(a: &PointConfiguration, s: &Subdivision) -> Vec<(BTreeSet<usize>, usize)> {
    let cells = &s.maximal_faces;
    a.interior_faces(s)
        .iter()
        .map(|(g, gdim)| {
            let v: BTreeSet<usize> =
                (0..cells.len()).filter(|&i| g.is_subset(&cells[i])).collect();
            (v, a.dim() - gdim)
        })
        .collect()
}

fn is_simplex_complex(faces: &[(BTreeSet<usize>, usize)], k: usize) -> bool {
    if k >= 24 || faces.len() != (1usize << k) - 1 {
        return false;
    }
    let sets: BTreeSet<&BTreeSet<usize>> = faces.iter().map(|(v, _)| v).collect();
    sets.len() == faces.len() && sets.iter().all(|v| !v.is_empty())
}

fn cycle_on(edges: &[(usize, usize)], vertices: &BTreeSet<usize>) -> bool {
    let deg = |v: usize| edges.iter().filter(|(x, y)| *x == v || *y == v).count();
    edges.len() == vertices.len() && vertices.iter().all(|&v| deg(v) == 2)
}

/// Classifies the abstract tight span of `s`.
pub fn classify_tight_span(a: &PointConfiguration, s: &Subdivision) -> TightSpanShape {
    let k = s.k();
    let mut faces = tight_span_faces(a, s);
    faces.sort();
    faces.dedup();
    let maxdim = faces.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let mut f_vector = vec![0usize; maxdim + 1];
    for (_, d) in &faces {
        f_vector[*d] += 1;
    }
    let edges: Vec<(usize, usize)> = faces
        .iter()
        .filter(|(_, d)| *d == 1)
        .map(|(v, _)| {
            let mut it = v.iter();
            (*it.next().unwrap(), *it.next().unwrap())
        })
        .collect();
    let maximal: Vec<(BTreeSet<usize>, usize)> = faces
        .iter()
        .filter(|(v, d)| {
            !faces.iter().any(|(v2, d2)| (v2, d2) != (v, d) && v.is_subset(v2) && d2 >= d)
        })
        .cloned()
        .collect();
    let kind = classify_kind(&faces, &maximal, &edges, &f_vector, k);
    TightSpanShape { kind, f_vector, edges, maximal_faces: maximal }
}

fn classify_kind(
    faces: &[(BTreeSet<usize>, usize)],
    maximal: &[(BTreeSet<usize>, usize)],
    edges: &[(usize, usize)],
    f_vector: &[usize],
    k: usize,
) -> ShapeKind {
    if is_simplex_complex(faces, k) {
        return ShapeKind::Simplex;
    }
    let dims: BTreeSet<usize> = maximal.iter().map(|(_, d)| *d).collect();
    if dims == BTreeSet::from([2]) {
        let tri: Vec<&BTreeSet<usize>> =
            maximal.iter().filter(|(v, _)| v.len() == 3).map(|(v, _)| v).collect();
        if maximal.len() == 1 && maximal[0].0.len() == k && k >= 4 {
            if cycle_on(edges, &maximal[0].0) {
                return ShapeKind::Polygon;
            }
        } else if tri.len() == maximal.len() {
            let mut common: BTreeSet<usize> = tri[0].clone();
            for t in &tri[1..] {
                common = common.intersection(t).copied().collect();
            }
            if tri.len() == 2 && common.len() == 2 {
                return ShapeKind::GluedTriangles;
            }
            if tri.len() >= 3 && common.len() == 2 {
                return ShapeKind::NonplanarBook;
            }
            if tri.len() >= 3 && common.len() == 1 && tri.len() == k - 1 {
                return ShapeKind::TriangleFan;
            }
        }
        return ShapeKind::Other;
    }
    if dims == BTreeSet::from([3]) {
        let two_faces: Vec<&BTreeSet<usize>> =
            faces.iter().filter(|(_, d)| *d == 2).map(|(v, _)| v).collect();
        if maximal.len() == 1 && k == 5 {
            let quads = two_faces.iter().filter(|v| v.len() == 4).count();
            let tris: Vec<&&BTreeSet<usize>> =
                two_faces.iter().filter(|v| v.len() == 3).collect();
            if quads == 1 && tris.len() == 4 {
                let mut common: BTreeSet<usize> = (*tris[0]).clone();
                for t in &tris[1..] {
                    common = common.intersection(t).copied().collect();
                }
                if common.len() == 1 {
                    return ShapeKind::Pyramid;
                }
            }
            if quads == 0 && tris.len() == 6 && f_vector[1] == 9 {
                return ShapeKind::Bipyramid;
            }
        }
        if maximal.len() >= 2 && maximal.iter().all(|(v, _)| v.len() == 4) {
            let chained = (0..maximal.len()).all(|i| {
                (0..maximal.len()).any(|j| {
                    i != j
                        && maximal[i].0.intersection(&maximal[j].0).count() == 3
                })
            });
            if chained {
                return ShapeKind::StackedTetrahedra;
            }
        }
        return ShapeKind::Other;
    }
    if dims.len() > 1 {
        return ShapeKind::Mixed;
    }
    ShapeKind::Other
}

/// Necessary conditions on the shape of the tight span of a coarsest
/// k-subdivision: it is never a k-gon for k > 3, its graph is 2-connected,
/// it has no maximal edge once there are at least three vertices, and it is
/// never a (k-1)-gon glued to a triangle along an edge.  Passing the filter
/// is necessary, not sufficient.
pub fn necessary_shape_filter(shape: &TightSpanShape, k: usize) -> bool {
    let nv = shape.f_vector.first().copied().unwrap_or(0);
    if nv >= 3 && shape.maximal_faces.iter().any(|(_, d)| *d == 1) {
        return false;
    }
    if shape.kind == ShapeKind::Polygon && k > 3 {
        return false;
    }
    if shape.maximal_faces.len() == 2 && k >= 5 {
        let (a, da) = &shape.maximal_faces[0];
        let (b, db) = &shape.maximal_faces[1];
        let sizes = (a.len().max(b.len()), a.len().min(b.len()));
        if *da == 2
            && *db == 2
            && sizes == (k - 1, 3)
            && a.intersection(b).count() == 2
        {
            return false;
        }
    }
    if nv >= 3 {
        for removed in 0..nv {
            let mut seen = vec![false; nv];
            seen[removed] = true;
            let start = (0..nv).find(|&v| v != removed).unwrap();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &(x, y) in &shape.edges {
                    let o = if x == v { y } else if y == v { x } else { continue };
                    if !seen[o] {
                        seen[o] = true;
                        stack.push(o);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
        }
    }
    true
}

/// All coarsest regular subdivisions, read off the facets of the secondary
/// polytope.
pub fn enumerate_coarsest(
    a: &PointConfiguration,
    guards: &Guards,
) -> Result<Vec<Subdivision>, SplitSpanError> {
    let sec = secondary_polytope(a, guards)?;
    let mut out: Vec<Subdivision> = sec.facets.into_iter().map(|(_, _, s)| s).collect();
    out.sort();
    out.dedup();
    for s in &out {
        debug_assert!(matches!(is_coarsest(a, s), Ok(true)));
    }
    Ok(out)
}

fn subspace_within(x: &AffineSubspace, y: &AffineSubspace) -> bool {
    y.contains(&x.base) && x.basis.iter().all(|v| y.contains(&vec_add(&x.base, v)))
}

/// Equality of affine subspaces given by possibly different presentations.
pub fn affine_subspace_eq(x: &AffineSubspace, y: &AffineSubspace) -> bool {
    x.ambient_dim() == y.ambient_dim()
        && x.dim() == y.dim()
        && subspace_within(x, y)
        && subspace_within(y, x)
}

/// Necessary conditions for `u` (codimension k-1) to be the core subspace
/// of a k-split: it must meet each facet of conv A in a face of that facet,
/// or else induce an l-split, l <= k, of the facet configuration whose core
/// subspace is the intersection.  A pass does not guarantee that a k-split
/// with this core exists.
pub fn check_ksplit_subspace_conditions(
    a: &PointConfiguration,
    u: &AffineSubspace,
    k: usize,
    guards: &Guards,
) -> Result<bool, SplitSpanError> {
    let d = a.dim();
    if u.ambient_dim() != d || u.dim() + k != d + 1 {
        return Err(SplitSpanError::InvalidInput(format!(
            "a {}-split core in dimension {} has dimension {}, got {}",
            k,
            d,
            d + 1 - k,
            u.dim()
        )));
    }
    for (facet, fd) in a.boundary_faces() {
        if fd + 1 != d {
            continue;
        }
        if !facet_condition(a, u, k, &facet, guards)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn facet_condition(
    a: &PointConfiguration,
    u: &AffineSubspace,
    k: usize,
    facet: &Cell,
    guards: &Guards,
) -> Result<bool, SplitSpanError> {
    let d = a.dim();
    if d == 1 {
        // A vertex facet is met in a face or not at all.
        return Ok(true);
    }
    let fbasis = a.affine_basis_of(facet);
    let b0 = a.point(fbasis[0]).to_vec();
    let fdirs: Vec<Vec<Rat>> =
        fbasis[1..].iter().map(|&i| vec_sub(a.point(i), &b0)).collect();
    // u.base + U s = b0 + F t parametrizes W = u ∩ aff(facet).
    let rows: Vec<Vec<Rat>> = (0..d)
        .map(|r| {
            u.basis
                .iter()
                .map(|v| v[r].clone())
                .chain(fdirs.iter().map(|v| -v[r].clone()))
                .collect()
        })
        .collect();
    let mat = RatMatrix::from_rows(rows);
    let sol = match mat.solve(&vec_sub(&b0, &u.base)) {
        None => return Ok(true),
        Some(s) => s,
    };
    let mut w0 = u.base.clone();
    for (j, dir) in u.basis.iter().enumerate() {
        for r in 0..d {
            w0[r] += &sol[j] * &dir[r];
        }
    }
    let mut dir_rows: Vec<Vec<Rat>> = Vec::new();
    for v in mat.kernel_basis() {
        let mut dir = zeros(d);
        for (j, b) in u.basis.iter().enumerate() {
            for r in 0..d {
                dir[r] += &v[j] * &b[r];
            }
        }
        if dir.iter().any(|x| !x.is_zero()) {
            dir_rows.push(dir);
        }
    }
    let w_dirs: Vec<Vec<Rat>> = if dir_rows.is_empty() {
        Vec::new()
    } else {
        let mut m = RatMatrix::from_rows(dir_rows);
        let pivots = m.rref();
        (0..pivots.len()).map(|r| m.row_vec(r)).collect()
    };
    let w_dim = w_dirs.len();
    // Chart aff(facet) onto R^{d-1} by barycentric coordinates in fbasis.
    let chart = |x: &[Rat]| -> Vec<Rat> {
        a.barycentric(&fbasis, x).expect("charted point lies in the facet plane")[1..].to_vec()
    };
    let fpoints: Vec<Vec<Rat>> = facet.iter().map(|&i| chart(a.point(i))).collect();
    let wbase = chart(&w0);
    let wdirs_chart: Vec<Vec<Rat>> = w_dirs
        .iter()
        .map(|dir| vec_sub(&chart(&vec_add(&w0, dir)), &wbase))
        .collect();
    let normals: Vec<Vec<Rat>> = if wdirs_chart.is_empty() {
        (0..d - 1)
            .map(|i| {
                let mut e = zeros(d - 1);
                e[i] = rat_int(1);
                e
            })
            .collect()
    } else {
        RatMatrix::from_rows(wdirs_chart.clone()).kernel_basis()
    };
    let w_chart = AffineSubspace { base: wbase.clone(), basis: wdirs_chart };
    let hull = Polyhedron::from_points(&fpoints);
    let mut eqs = hull.h.eqs.clone();
    for nu in normals {
        let c = dot(&nu, &wbase);
        eqs.push((nu, c));
    }
    let x = Polyhedron::from_h(HPolyhedron {
        dim: d - 1,
        ineqs: hull.h.ineqs.clone(),
        eqs,
    });
    if x.v.vertices.is_empty() {
        return Ok(true);
    }
    // Tightness at a relative interior point of X picks out the smallest
    // face of the facet hull containing X; X is that face iff the face's
    // vertices all lie on W.
    let nv = rat_int(x.v.vertices.len() as i64);
    let centroid: Vec<Rat> = (0..d - 1)
        .map(|r| x.v.vertices.iter().map(|v| v[r].clone()).sum::<Rat>() / &nv)
        .collect();
    let tight: Vec<&(Vec<Rat>, Rat)> = hull
        .h
        .ineqs
        .iter()
        .filter(|(n, c)| dot(n, &centroid) == *c)
        .collect();
    let face_in_w = hull
        .v
        .vertices
        .iter()
        .filter(|v| tight.iter().all(|t| dot(&t.0, v) == t.1))
        .all(|v| w_chart.contains(v));
    if face_in_w {
        return Ok(true);
    }
    let l = d - w_dim;
    if l > k {
        return Ok(false);
    }
    let af = PointConfiguration::new(fpoints)?;
    for s in enumerate_coarsest(&af, guards)? {
        if let Some(ks) = detect_k_split(&af, &s) {
            if ks.k == l && affine_subspace_eq(&ks.core_subspace, &w_chart) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
