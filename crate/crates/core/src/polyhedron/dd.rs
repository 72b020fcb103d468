//! Double description: extreme rays and lineality of rational polyhedral cones.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::kernel::{int_dot, int_to_rat_vec, primitive, primitive_int, Int, RatMatrix};

/// Bitset over the inserted inequality indices.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<Int>,
    zero: Bits,
}

pub struct DdCone {
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

fn negated(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// c1*v1 - c2*v2
fn lincomb(c1: &Int, v1: &[Int], c2: &Int, v2: &[Int]) -> Vec<Int> {
    v1.iter().zip(v2).map(|(a, b)| c1 * a - c2 * b).collect()
}

/// Extreme rays and lineality space of `{x : Ex = 0, Ax >= 0}`.
///
/// Rows are primitive-reduced, deduplicated and inserted in lexicographic
/// order, so runs are deterministic.  Rays come back primitive, reduced modulo
/// the lineality space and sorted; the lineality basis is the reduced row
/// echelon basis of its span, scaled primitive.  Zero sets of new rays are
/// recomputed exactly against every inserted row, which keeps the
/// combinatorial adjacency test sound.
pub fn dd_cone(dim: usize, equations: &[Vec<Int>], inequalities: &[Vec<Int>]) -> DdCone {
    let clean = |rows: &[Vec<Int>], signless: bool| -> Vec<Vec<Int>> {
        let mut set = BTreeSet::new();
        for r in rows {
            assert_eq!(r.len(), dim, "row width mismatch");
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut p = primitive_int(r);
            if signless
                && p.iter()
                    .find(|x| !x.is_zero())
                    .map_or(false, |x| x.is_negative())
            {
                p = negated(&p);
            }
            set.insert(p);
        }
        set.into_iter().collect()
    };
    let eqs = clean(equations, true);
    let ineqs = clean(inequalities, false);

    let words = ineqs.len() / 64 + 1;
    let mut lin: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    // Equations first: they only carve the lineality space down.
    for a in &eqs {
        debug_assert!(rays.is_empty());
        let Some(i) = lin.iter().position(|l| !int_dot(a, l).is_zero()) else {
            continue;
        };
        let mut l0 = lin.remove(i);
        if int_dot(a, &l0).is_negative() {
            l0 = negated(&l0);
        }
        let al0 = int_dot(a, &l0);
        for l in &mut lin {
            let al = int_dot(a, l);
            if !al.is_zero() {
                *l = primitive_int(&lincomb(&al0, l, &al, &l0));
            }
        }
    }

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(i) = lin.iter().position(|l| !int_dot(a, l).is_zero()) {
            // The constraint cuts the lineality space: fold the pivot vector
            // out of it.  Old rays are pushed onto the hyperplane along the
            // pivot, the pivot itself survives as a new extreme ray.
            let mut l0 = lin.remove(i);
            if int_dot(a, &l0).is_negative() {
                l0 = negated(&l0);
            }
            let al0 = int_dot(a, &l0);
            for l in &mut lin {
                let al = int_dot(a, l);
                if !al.is_zero() {
                    *l = primitive_int(&lincomb(&al0, l, &al, &l0));
                }
            }
            for r in &mut rays {
                let ar = int_dot(a, &r.v);
                if !ar.is_zero() {
                    // al0 > 0, so the direction of the ray is preserved;
                    // earlier rows vanish on l0, so the zero set is unchanged.
                    r.v = primitive_int(&lincomb(&al0, &r.v, &ar, &l0));
                }
                r.zero.set(k);
            }
            let mut zb = Bits::new(words);
            for j in 0..k {
                zb.set(j);
            }
            rays.push(Ray { v: primitive_int(&l0), zero: zb });
            continue;
        }

        let vals: Vec<Int> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        if !vals.iter().any(|v| v.is_negative()) {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.zero.set(k);
                }
            }
            continue;
        }

        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&vals) {
            if val.is_positive() {
                next.push(r.clone());
            } else if val.is_zero() {
                let mut rr = r.clone();
                rr.zero.set(k);
                next.push(rr);
            }
        }
        let mut seen: BTreeSet<Vec<Int>> = next.iter().map(|r| r.v.clone()).collect();
        for (i, p) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, n) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let z = p.zero.intersect(&n.zero);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(t, q)| t != i && t != j && q.zero.is_superset(&z));
                if blocked {
                    continue;
                }
                let v = primitive_int(&lincomb(&vals[i], &n.v, &vals[j], &p.v));
                debug_assert!(!v.iter().all(|x| x.is_zero()));
                if !seen.insert(v.clone()) {
                    continue;
                }
                // Exact zero set: combos can be tight on rows beyond the
                // inherited ones, and the adjacency test needs the truth.
                let mut zb = Bits::new(words);
                for (idx, row) in ineqs.iter().enumerate().take(k + 1) {
                    if int_dot(row, &v).is_zero() {
                        zb.set(idx);
                    }
                }
                next.push(Ray { v, zero: zb });
            }
        }
        rays = next;
    }

    canonicalize(dim, lin, rays.into_iter().map(|r| r.v).collect())
}

/// RREF basis for the lineality, rays reduced modulo it, everything sorted.
fn canonicalize(dim: usize, lin: Vec<Vec<Int>>, rays: Vec<Vec<Int>>) -> DdCone {
    if lin.is_empty() {
        let mut rs: Vec<Vec<Int>> = rays.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        rs.sort();
        return DdCone { lineality: vec![], rays: rs };
    }
    let mut m = RatMatrix::from_rows(lin.iter().map(|l| int_to_rat_vec(l)).collect());
    let pivots = m.rref();
    let lineality: Vec<Vec<Int>> = (0..pivots.len()).map(|r| primitive(m.row(r))).collect();
    let mut out = BTreeSet::new();
    for r in rays {
        let mut v = int_to_rat_vec(&r);
        for (row, &p) in pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..dim {
                    let t = &v[j] - &f * &m[(row, j)];
                    v[j] = t;
                }
            }
        }
        let v = primitive(&v);
        debug_assert!(!v.iter().all(|x| x.is_zero()));
        out.insert(v);
    }
    DdCone { lineality, rays: out.into_iter().collect() }
}
