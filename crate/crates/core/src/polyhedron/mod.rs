//! Exact polyhedra: H- and V-descriptions, conversions, faces, volumes, LP.

pub mod dd;
pub mod faces;
pub mod lp;

use num_traits::{Signed, Zero};

use crate::kernel::{dot, int_to_rat_vec, primitive, primitive_int, Int, Rat};
use dd::dd_cone;

/// Intersection of halfspaces `a.x >= b` and hyperplanes `e.x = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub ineqs: Vec<(Vec<Rat>, Rat)>,
    pub eqs: Vec<(Vec<Rat>, Rat)>,
}

impl HPolyhedron {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|(a, b)| dot(a, x) >= *b)
            && self.eqs.iter().all(|(e, c)| dot(e, x) == *c)
    }

    /// Inequality rows tight at `x` (the point must lie in the polyhedron).
    pub fn tight_rows(&self, x: &[Rat]) -> Vec<usize> {
        self.ineqs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| dot(a, x) == *b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Generator description: convex hull of points plus cone of rays plus a
/// lineality space.  Rays and lineality vectors are primitive integer.
/// An empty polyhedron has all three lists empty; a nonempty one has at
/// least one generator point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
}

impl VPolyhedron {
    pub fn empty(dim: usize) -> Self {
        VPolyhedron { dim, vertices: vec![], rays: vec![], lineality: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

/// Vertex enumeration.  The generator points are true vertices whenever the
/// polyhedron is pointed; otherwise they are canonical representatives modulo
/// the lineality space.
pub fn htov(h: &HPolyhedron) -> VPolyhedron {
    let d = h.dim;
    let mut ineqs: Vec<Vec<Int>> = Vec::with_capacity(h.ineqs.len() + 1);
    let mut x0 = vec![Rat::zero(); d + 1];
    x0[0] = Rat::from_integer(Int::from(1));
    ineqs.push(primitive(&x0));
    for (a, b) in &h.ineqs {
        let mut row = Vec::with_capacity(d + 1);
        row.push(-b.clone());
        row.extend_from_slice(a);
        ineqs.push(primitive(&row));
    }
    let eqs: Vec<Vec<Int>> = h
        .eqs
        .iter()
        .map(|(e, c)| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(-c.clone());
            row.extend_from_slice(e);
            primitive(&row)
        })
        .collect();
    let cone = dd_cone(d + 1, &eqs, &ineqs);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &cone.rays {
        if r[0].is_positive() {
            let r0 = Rat::from_integer(r[0].clone());
            vertices.push(r[1..].iter().map(|x| Rat::from_integer(x.clone()) / &r0).collect());
        } else {
            debug_assert!(r[0].is_zero());
            rays.push(primitive_int(&r[1..]));
        }
    }
    if vertices.is_empty() {
        return VPolyhedron::empty(d);
    }
    let lineality: Vec<Vec<Int>> = cone
        .lineality
        .iter()
        .map(|l| {
            debug_assert!(l[0].is_zero());
            primitive_int(&l[1..])
        })
        .collect();
    vertices.sort();
    rays.sort();
    VPolyhedron { dim: d, vertices, rays, lineality }
}

/// Facet enumeration of a nonempty V-polyhedron.  Equations cut out the
/// affine hull; inequalities are facet-defining within it and canonical
/// (primitive, reduced against the equations).
pub fn vtoh(v: &VPolyhedron) -> HPolyhedron {
    assert!(!v.is_empty(), "vtoh needs a nonempty polyhedron");
    let d = v.dim;
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for p in &v.vertices {
        let mut row = Vec::with_capacity(d + 1);
        row.push(Rat::from_integer(Int::from(1)));
        row.extend_from_slice(p);
        gens.push(primitive(&row));
    }
    for r in &v.rays {
        let mut row = Vec::with_capacity(d + 1);
        row.push(Int::zero());
        row.extend_from_slice(r);
        gens.push(row);
    }
    let lins: Vec<Vec<Int>> = v
        .lineality
        .iter()
        .map(|l| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(Int::zero());
            row.extend_from_slice(l);
            row
        })
        .collect();
    // Facets of the homogenization cone are the extreme rays of its dual.
    let dual = dd_cone(d + 1, &lins, &gens);
    let mut ineqs = Vec::new();
    for y in &dual.rays {
        if y[1..].iter().all(|x| x.is_zero()) {
            continue;
        }
        // A facet dual ray tight at no generator supports the far face of
        // the homogenization, not a facet of the polyhedron itself.
        let tight_somewhere = gens
            .iter()
            .any(|g| g.iter().zip(y).map(|(a, b)| a * b).sum::<Int>().is_zero());
        if !tight_somewhere {
            continue;
        }
        let a = int_to_rat_vec(&y[1..]);
        let b = -Rat::from_integer(y[0].clone());
        ineqs.push((a, b));
    }
    let mut eqs = Vec::new();
    for y in &dual.lineality {
        if y[1..].iter().all(|x| x.is_zero()) {
            continue;
        }
        let e = int_to_rat_vec(&y[1..]);
        let c = -Rat::from_integer(y[0].clone());
        eqs.push((e, c));
    }
    ineqs.sort();
    eqs.sort();
    HPolyhedron { dim: d, ineqs, eqs }
}
