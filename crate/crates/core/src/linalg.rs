//! Dense Gaussian elimination over any of the finite fields in this crate.

/// Arithmetic interface shared by the big tower field and the small code field.
pub trait Field {
    type Elem: Copy + Eq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row; rows beyond `pivots.len()` are zero afterwards.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(m[i][c]) {
                let factor = m[i][c];
                for j in c..cols {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(f, &mut work).len()
}

/// Basis of the right null space `{x : m x = 0}`; each vector has a 1 at its
/// free column and zeros at the other free columns.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Matrix<F::Elem> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(work[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant by elimination.
pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a[i][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = f.neg(d);
        }
        d = f.mul(d, a[c][c]);
        let inv = f.inv(a[c][c]);
        for i in c + 1..n {
            if f.is_zero(a[i][c]) {
                continue;
            }
            let factor = f.mul(a[i][c], inv);
            for j in c..n {
                let t = f.mul(factor, a[c][j]);
                a[i][j] = f.sub(a[i][j], t);
            }
        }
    }
    d
}

/// True if `v` lies in the row space spanned by the rows of an RREF matrix
/// with the given pivots.
pub fn in_row_space<F: Field>(
    f: &F,
    rref_rows: &Matrix<F::Elem>,
    pivots: &[usize],
    v: &[F::Elem],
) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in pivots.iter().enumerate() {
        if f.is_zero(w[p]) {
            continue;
        }
        let factor = w[p];
        for (x, &r) in w.iter_mut().zip(&rref_rows[row]) {
            *x = f.sub(*x, f.mul(factor, r));
        }
    }
    w.iter().all(|&x| f.is_zero(x))
}
