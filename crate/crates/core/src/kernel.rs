//! Exact rational linear algebra: vectors, matrices, ranks, kernels, affine hulls.
//!
//! Everything downstream (double description, simplex, subdivisions) sits on the
//! rational arithmetic in this module.  Rationals are `num_rational::BigRational`,
//! which keeps values in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::SplitSpanError;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(Int::from(n), Int::from(d))
}

/// Parses "p/q" or "p" with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat, SplitSpanError> {
    let bad = || SplitSpanError::InvalidInput(format!("malformed rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: Int = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Formats in lowest terms as "p/q", or "p" for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn int_dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Scales a rational vector to a primitive integer vector pointing the same way.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_int(&ints)
}

/// Divides out the gcd; the direction (overall sign) is preserved.
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive vector with the first nonzero entry positive.  Canonical
/// representative of a line through the origin (sign is NOT preserved).
pub fn primitive_signless(v: &[Rat]) -> Vec<Int> {
    let mut p = primitive(v);
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut p {
                *x = -x.clone();
            }
        }
    }
    p
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Dense rational matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged matrix");
        }
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Rank by fraction-free Bareiss elimination on an integer-scaled copy.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Int>> = (0..self.rows)
            .map(|i| {
                let mut lcm = Int::one();
                for x in self.row(i) {
                    lcm = lcm.lcm(x.denom());
                }
                self.row(i).iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = Int::one();
        let mut col = 0;
        while rank < rows && col < cols {
            let pivot = (rank..rows).find(|&i| !m[i][col].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let t = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                    m[i][j] = &t / &prev;
                }
                m[i][col] = Int::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].clone();
            for j in c..self.cols {
                let v = &self[(r, j)] / &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Canonical basis of the right kernel {x : Mx = 0}, read off the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = zeros(self.cols);
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Mx = b, if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Affine subspace given by a base point and a basis of its direction space.
#[derive(Clone, Debug)]
pub struct AffineSubspace {
    pub base: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let diff = vec_sub(p, &self.base);
        let mut rows: Vec<Vec<Rat>> = self.basis.clone();
        rows.push(diff);
        let m = RatMatrix::from_rows(rows);
        m.rank() == self.basis.len()
    }
}

/// Affine hull of a nonempty point set; the basis is canonical (RREF of the
/// translated points).
pub fn affine_hull(points: &[Vec<Rat>]) -> AffineSubspace {
    assert!(!points.is_empty());
    let base = points[0].clone();
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| vec_sub(p, &base)).collect();
    if rows.is_empty() {
        return AffineSubspace { base, basis: vec![] };
    }
    let mut m = RatMatrix::from_rows(rows);
    let pivots = m.rref();
    let basis = (0..pivots.len()).map(|r| m.row_vec(r)).collect();
    AffineSubspace { base, basis }
}

/// Affine rank minus one: dimension of the affine hull.
pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    affine_hull(points).dim()
}

/// Determinant by fraction-free Bareiss; the matrix must be square.
pub fn determinant(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    // Scale each row to integers, tracking the total factor.
    let mut scale = Rat::one();
    let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = Int::one();
        for x in m.row(i) {
            lcm = lcm.lcm(x.denom());
        }
        scale *= Rat::new(Int::one(), lcm.clone());
        a.push(m.row(i).iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }
    let mut sign = false;
    let mut prev = Int::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det = Rat::from_integer(a[n - 1][n - 1].clone()) * scale;
    if sign {
        -det
    } else {
        det
    }
}
