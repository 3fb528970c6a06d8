//! Dense exact linear algebra: fraction-free rank over `Z[i][q]` and Gaussian elimination over fields.

use crate::coeffs::{laurent_to_k, Branch, GaussInt, GaussRat, Laurent, Poly, Scalar, K};
use crate::error::{Error, Result};
use crate::ring::{ExactDiv, Field, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<T> = rows.into_iter().flat_map(|row| {
            assert_eq!(row.len(), cols, "ragged matrix");
            row
        }).collect();
        Mat { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j]))))
            .collect()
    }
}

/// Fraction-free elimination with full pivoting; returns the rank.
pub fn bareiss_rank<T: ExactDiv>(m: &Mat<T>) -> usize {
    let mut a: Vec<Vec<T>> = (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let (n, c) = (m.rows, m.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for k in 0..n.min(c) {
        let Some((pi, pj)) = (k..n).flat_map(|i| (k..c).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        let piv = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..c {
                let num = piv.mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step is exact");
            }
            a[i][k] = T::zero();
        }
        prev = piv;
    }
    rank
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, j).is_zero()) else {
            continue;
        };
        if p != r {
            for jj in 0..m.cols {
                let t = m.get(p, jj).clone();
                let u = m.get(r, jj).clone();
                m.set(p, jj, u);
                m.set(r, jj, t);
            }
        }
        let inv = m.get(r, j).inv();
        for jj in j..m.cols {
            let v = m.get(r, jj).mul(&inv);
            m.set(r, jj, v);
        }
        for i in 0..m.rows {
            if i == r || m.get(i, j).is_zero() {
                continue;
            }
            let f = m.get(i, j).clone();
            for jj in j..m.cols {
                let v = m.get(i, jj).sub(&f.mul(m.get(r, jj)));
                m.set(i, jj, v);
            }
        }
        pivots.push(j);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    rref(&mut m.clone()).len()
}

/// Rows `R` and columns `P` with `m[R,P]` nonsingular and `|R| = |P| = rank`.
pub fn rank_profile<F: Field>(m: &Mat<F>) -> (Vec<usize>, Vec<usize>) {
    let cols = rref(&mut m.clone());
    let sub = m.submatrix(&(0..m.rows).collect::<Vec<_>>(), &cols);
    let rows = rref(&mut sub.transpose());
    (rows, cols)
}

/// Solves `a·x = b` for square nonsingular `a`.
pub fn solve<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Option<Mat<F>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.rows, n);
    let mut aug = Mat::from_fn(n, n + b.cols, |i, j| if j < n { a.get(i, j).clone() } else { b.get(i, j - n).clone() });
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().any(|&j| j >= n) {
        return None;
    }
    Some(Mat::from_fn(n, b.cols, |i, j| aug.get(i, n + j).clone()))
}

pub fn inverse<F: Field>(a: &Mat<F>) -> Option<Mat<F>> {
    solve(a, &Mat::identity(a.rows))
}

/// Basis of `{v : m v = 0}` as columns.
pub fn nullspace<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let piv = rref(&mut r);
    let free: Vec<usize> = (0..m.cols).filter(|j| !piv.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = r.get(row, f).neg();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    let n = v.len();
    let a = Mat::from_columns(n, basis);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    let b = Mat::from_columns(n, &all);
    rank(&a) == rank(&b)
}

fn laurent_mat_to_poly<S: Scalar>(m: &Mat<Laurent<S>>, b: Branch) -> Mat<Poly<GaussInt>> {
    let sp: Vec<(i64, Vec<GaussInt>)> = m.data.iter().map(|x| x.specialize_dense(b)).collect();
    let lo = sp.iter().filter(|(_, v)| !v.is_empty()).map(|(s, _)| *s).min().unwrap_or(0);
    let data = sp
        .into_iter()
        .map(|(s, v)| {
            if v.is_empty() {
                return Poly::zero();
            }
            let mut c = vec![GaussInt::zero(); (s - lo) as usize];
            c.extend(v);
            Poly::new(c)
        })
        .collect();
    Mat { rows: m.rows, cols: m.cols, data }
}

/// Rank of a Laurent matrix after `√π ↦ i^k`: Bareiss over `Z[i][q]`, cross-checked by
/// evaluation at a pseudo-random integer point.
pub fn laurent_rank<S: Scalar>(m: &Mat<Laurent<S>>, b: Branch, seed: u64) -> Result<usize> {
    let exact = bareiss_rank(&laurent_mat_to_poly(m, b));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = GaussRat::from_int(&GaussInt::new(rng.gen_range(10_007..1_000_003), 0));
    let eval = rank(&m.map(|x| x.eval(b, &t)));
    if eval != exact {
        return Err(Error::Inconsistent(format!("Bareiss rank {exact} but evaluation rank {eval}")));
    }
    Ok(exact)
}

/// The same matrix viewed in the branch field `K`.
pub fn laurent_mat_to_k<S: Scalar>(m: &Mat<Laurent<S>>, b: Branch) -> Mat<K> {
    m.map(|x| laurent_to_k(x, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::LaurentPi;
    use crate::ring::{rat, Int};
    use num_rational::BigRational;

    fn q(v: &[&[i64]]) -> Mat<BigRational> {
        let cols = v[0].len();
        Mat::from_rows(v.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect(), cols)
    }

    #[test]
    fn bareiss_matches_field_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let mi = Mat::from_rows(
            vec![
                vec![Int::from_int(1), Int::from_int(2), Int::from_int(3)],
                vec![Int::from_int(2), Int::from_int(4), Int::from_int(6)],
                vec![Int::from_int(1), Int::from_int(0), Int::from_int(1)],
            ],
            3,
        );
        assert_eq!(bareiss_rank(&mi), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn profile_gives_nonsingular_block() {
        let m = q(&[&[0, 0, 0], &[1, 2, 3], &[2, 4, 7], &[3, 6, 10]]);
        let (r, c) = rank_profile(&m);
        assert_eq!(r.len(), 2);
        assert!(inverse(&m.submatrix(&r, &c)).is_some());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        let sum: Vec<_> = ns[0].iter().zip(&ns[1]).map(|(a, b)| a.add(b)).collect();
        assert!(in_span(&ns, &sum));
        assert!(!in_span(&ns, &[rat(1, 1), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn laurent_rank_detects_pi_dependence() {
        // [[1, π], [1, 1]] is singular at π = 1 only.
        let one = LaurentPi::one();
        let pi = LaurentPi::pi();
        let m = Mat::from_rows(vec![vec![one.clone(), pi], vec![one.clone(), one]], 2);
        assert_eq!(laurent_rank(&m, Branch(0), 1).unwrap(), 1);
        assert_eq!(laurent_rank(&m, Branch(1), 1).unwrap(), 2);
    }
}
