//! Dense matrices over Q(q) and the tensor-leg bookkeeping used to place
//! operators like R_i = I ⊗ ... ⊗ R ⊗ ... ⊗ I on tensor powers.
//!
//! All operations are exact. Linear solving clears denominators row-wise and
//! then runs Bareiss fraction-free elimination over Laurent polynomials, which
//! keeps intermediate entries polynomial instead of nested fractions.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn scalar_matrix(n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c { self[(r, c)].is_one() } else { self[(r, c)].is_zero() }
                })
            })
    }

    /// Some(c) when the matrix is c * I.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let c = self[(0, 0)].clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let expect_diag = r == k;
                if expect_diag && self[(r, k)] != c {
                    return None;
                }
                if !expect_diag && !self[(r, k)].is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    pub fn map(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| f(v)).collect(),
        }
    }

    /// Entry-wise evaluation at a rational point; errors on any pole.
    pub fn eval_at(&self, q0: &crate::scalar::Rat) -> Result<Vec<Vec<crate::scalar::Rat>>> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(self[(r, c)].eval_at(q0)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Kronecker product with row-major composite indices:
    /// (A ⊗ B)[(i,k),(j,l)] = A[i,j] * B[k,l].
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        self.at(r, c)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out[(i, j)] + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }
}

/// Ordered list of tensor-factor dimensions; composite indices are row-major
/// with the first factor slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(!dims.is_empty() && dims.iter().all(|&d| d > 0));
        TensorLayout { dims }
    }

    pub fn uniform(dim: usize, factors: usize) -> Self {
        Self::new(vec![dim; factors])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Stride of factor `i`: the composite index weight of one unit in it.
    fn stride(&self, i: usize) -> usize {
        self.dims[i + 1..].iter().product()
    }

    pub fn without(&self, factor: usize) -> TensorLayout {
        assert!(self.factors() > 1, "cannot drop the only factor");
        let mut dims = self.dims.clone();
        dims.remove(factor);
        TensorLayout::new(dims)
    }
}

/// I^(i-1) ⊗ op ⊗ I^(rest): place a two-factor operator on adjacent factors
/// `pos, pos+1` (1-based) of the layout.
pub fn place_operator(op: &Matrix, pos: usize, layout: &TensorLayout) -> Result<Matrix> {
    if pos == 0 || pos >= layout.factors() {
        return Err(Error::Dimension(format!(
            "position {} invalid for {} factors",
            pos,
            layout.factors()
        )));
    }
    let d1 = layout.dims[pos - 1];
    let d2 = layout.dims[pos];
    if op.rows() != d1 * d2 || op.cols() != d1 * d2 {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but factors {} and {} have product {}",
            op.rows(),
            op.cols(),
            pos,
            pos + 1,
            d1 * d2
        )));
    }
    let left: usize = layout.dims[..pos - 1].iter().product();
    let right: usize = layout.dims[pos + 1..].iter().product();
    let mut out = Matrix::identity(left);
    out = out.kron(op);
    Ok(out.kron(&Matrix::identity(right)))
}

/// Trace over one factor (1-based); the result acts on the reduced layout.
pub fn partial_trace(m: &Matrix, layout: &TensorLayout, factor: usize) -> Result<Matrix> {
    let total = layout.total();
    if m.rows() != total || m.cols() != total {
        return Err(Error::Dimension(format!(
            "matrix is {}x{} but layout total is {}",
            m.rows(),
            m.cols(),
            total
        )));
    }
    if factor == 0 || factor > layout.factors() {
        return Err(Error::Dimension(format!("factor {} out of range", factor)));
    }
    let f = factor - 1;
    let d = layout.dims[f];
    let stride = layout.stride(f);
    let reduced = layout.without(f);
    let rtotal = reduced.total();

    // decompose a reduced composite index into (prefix, suffix) parts around
    // the removed factor, then re-insert b*stride for the traced factor
    let suffix = stride;
    let expand = |idx: usize, b: usize| -> usize {
        let pre = idx / suffix;
        let post = idx % suffix;
        (pre * d + b) * stride + post
    };

    let mut out = Matrix::zeros(rtotal, rtotal);
    for r in 0..rtotal {
        for c in 0..rtotal {
            let mut acc = Scalar::zero();
            for b in 0..d {
                acc = &acc + m.at(expand(r, b), expand(c, b));
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// The flip P on V ⊗ V for dim(V) = n.
pub fn flip_matrix(n: usize) -> Matrix {
    let mut p = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p.set(j * n + i, i * n + j, Scalar::one());
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Unique(Matrix),
    Inconsistent,
    Underdetermined,
}

impl Solve {
    pub fn unique(self) -> Result<Matrix> {
        match self {
            Solve::Unique(m) => Ok(m),
            Solve::Inconsistent => Err(Error::Inconsistent),
            Solve::Underdetermined => Err(Error::Underdetermined),
        }
    }
}

/// Working row of Laurent-polynomial entries for fraction-free elimination.
type PolyRow = Vec<LaurentPoly>;

fn clear_denominators(rows: &[Vec<Scalar>]) -> Vec<PolyRow> {
    rows.iter()
        .map(|row| {
            let mut lcm = LaurentPoly::one();
            for v in row {
                let den = v.denominator();
                let g = LaurentPoly::gcd(&lcm, den);
                lcm = lcm.mul(&den.div_exact(&g).expect("gcd divides"));
            }
            row.iter()
                .map(|v| {
                    let factor = lcm.div_exact(v.denominator()).expect("lcm divisible");
                    v.numerator().mul(&factor)
                })
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free forward elimination. Returns the echelon rows, the
/// pivot column of each used row, in order.
fn bareiss_echelon(mut m: Vec<PolyRow>, ncols: usize) -> (Vec<PolyRow>, Vec<usize>) {
    let nrows = m.len();
    let mut prev_pivot = LaurentPoly::one();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        // pick the structurally smallest nonzero pivot to limit swell
        let mut best: Option<(usize, usize)> = None;
        for r in row..nrows {
            if !m[r][col].is_zero() {
                let size = m[r][col].num_terms();
                if best.map_or(true, |(_, s)| size < s) {
                    best = Some((r, size));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        m.swap(row, prow);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                // still must rescale per Bareiss to keep divisions exact
                for c in col..ncols {
                    if m[r][c].is_zero() {
                        continue;
                    }
                    let t = m[r][c].mul(&pivot);
                    m[r][c] = t.div_exact(&prev_pivot).expect("bareiss division is exact");
                }
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let t = m[r][c].mul(&pivot).sub(&m[row][c].mul(&factor));
                m[r][c] = if t.is_zero() {
                    t
                } else {
                    t.div_exact(&prev_pivot).expect("bareiss division is exact")
                };
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        row += 1;
    }
    (m, pivot_cols)
}

/// Rank of an exact matrix.
pub fn rank(a: &Matrix) -> usize {
    let rows: Vec<Vec<Scalar>> =
        (0..a.rows()).map(|r| (0..a.cols()).map(|c| a[(r, c)].clone()).collect()).collect();
    let cleared = clear_denominators(&rows);
    let (_, pivots) = bareiss_echelon(cleared, a.cols());
    pivots.len()
}

/// Exact solve of A X = B. Reports inconsistency and underdetermination
/// instead of guessing.
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Solve> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let width = n + b.cols();
    let rows: Vec<Vec<Scalar>> = (0..a.rows())
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| a[(r, c)].clone()).collect();
            row.extend((0..b.cols()).map(|c| b[(r, c)].clone()));
            row
        })
        .collect();
    let cleared = clear_denominators(&rows);
    let (ech, pivots) = bareiss_echelon(cleared, width);

    // pivot in the augmented part means inconsistency
    if pivots.iter().any(|&c| c >= n) {
        return Ok(Solve::Inconsistent);
    }
    let rank_a = pivots.len();
    // rows below rank_a must be completely zero in the augmented part too
    for row in ech.iter().skip(rank_a) {
        if row[n..].iter().any(|v| !v.is_zero()) {
            return Ok(Solve::Inconsistent);
        }
    }
    if rank_a < n {
        return Ok(Solve::Underdetermined);
    }

    // back substitution in the field
    let mut x = Matrix::zeros(n, b.cols());
    for k in 0..b.cols() {
        for i in (0..n).rev() {
            let col = pivots[i];
            let mut acc = Scalar::new(ech[i][n + k].clone(), LaurentPoly::one())?;
            for j in i + 1..n {
                let coeff = Scalar::new(ech[i][pivots[j]].clone(), LaurentPoly::one())?;
                acc = &acc - &(&coeff * &x[(pivots[j], k)]);
            }
            let piv = Scalar::new(ech[i][col].clone(), LaurentPoly::one())?;
            x.set(col, k, acc.checked_div(&piv)?);
        }
    }
    Ok(Solve::Unique(x))
}

/// Exact inverse; None when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    match solve_linear(a, &Matrix::identity(a.rows())) {
        Ok(Solve::Unique(m)) => Some(m),
        _ => None,
    }
}

/// A basis of the column space: the pivot columns of `a`, as a matrix whose
/// columns are the chosen basis vectors.
pub fn column_space_basis(a: &Matrix) -> Option<Matrix> {
    // run elimination on the transpose-free copy to find pivot columns
    let rows: Vec<Vec<Scalar>> =
        (0..a.rows()).map(|r| (0..a.cols()).map(|c| a[(r, c)].clone()).collect()).collect();
    let cleared = clear_denominators(&rows);
    let (_, pivots) = bareiss_echelon(cleared, a.cols());
    if pivots.is_empty() {
        return None;
    }
    let mut out = Matrix::zeros(a.rows(), pivots.len());
    for (j, &col) in pivots.iter().enumerate() {
        for r in 0..a.rows() {
            out.set(r, j, a[(r, col)].clone());
        }
    }
    Some(out)
}

/// A basis of the null space of `a` (kernel vectors as columns); None when
/// the kernel is trivial.
pub fn null_space_basis(a: &Matrix) -> Option<Matrix> {
    let rows: Vec<Vec<Scalar>> =
        (0..a.rows()).map(|r| (0..a.cols()).map(|c| a[(r, c)].clone()).collect()).collect();
    let cleared = clear_denominators(&rows);
    let n = a.cols();
    let (ech, pivots) = bareiss_echelon(cleared, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return None;
    }
    let mut out = Matrix::zeros(n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        // solve for pivot coordinates with free coordinate fc set to 1
        out.set(fc, k, Scalar::one());
        for i in (0..pivots.len()).rev() {
            let col = pivots[i];
            let mut acc = Scalar::new(ech[i][fc].clone(), LaurentPoly::one()).unwrap();
            for j in i + 1..pivots.len() {
                let coeff = Scalar::new(ech[i][pivots[j]].clone(), LaurentPoly::one()).unwrap();
                acc = &acc + &(&coeff * &out[(pivots[j], k)]);
            }
            let piv = Scalar::new(ech[i][col].clone(), LaurentPoly::one()).unwrap();
            out.set(col, k, -&(acc.checked_div(&piv).unwrap()));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn s(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = Matrix::identity(2);
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
    }

    #[test]
    fn kron_agrees_with_place_operator() {
        let p = flip_matrix(2);
        let layout = TensorLayout::uniform(2, 3);
        let placed = place_operator(&p, 1, &layout).unwrap();
        assert_eq!(p.kron(&Matrix::identity(2)), placed);
        assert_eq!(place_operator(&p, 1, &TensorLayout::uniform(2, 2)).unwrap(), p);
    }

    #[test]
    fn place_operator_swaps_factors() {
        let p = flip_matrix(2);
        let layout = TensorLayout::uniform(2, 3);
        let p2 = place_operator(&p, 2, &layout).unwrap();
        // e_{0,1,0} (index 2) should map to e_{0,0,1} (index 1)
        assert!(p2[(1, 2)].is_one());
        assert!(p2[(2, 1)].is_one());
        assert!(p2[(0, 0)].is_one());
    }

    #[test]
    fn braid_relation_for_flip() {
        let p = flip_matrix(2);
        let layout = TensorLayout::uniform(2, 3);
        let p1 = place_operator(&p, 1, &layout).unwrap();
        let p2 = place_operator(&p, 2, &layout).unwrap();
        assert_eq!(&(&p1 * &p2) * &p1, &(&p2 * &p1) * &p2);
    }

    #[test]
    fn partial_trace_of_flip() {
        let p = flip_matrix(2);
        let layout = TensorLayout::uniform(2, 2);
        assert_eq!(partial_trace(&p, &layout, 2).unwrap(), Matrix::identity(2));
        assert_eq!(partial_trace(&p, &layout, 1).unwrap(), Matrix::identity(2));
        let i4 = Matrix::identity(4);
        assert_eq!(
            partial_trace(&i4, &layout, 1).unwrap(),
            Matrix::identity(2).scale(&Scalar::from_int(2))
        );
        assert!(partial_trace(&p, &layout, 3).is_err());
    }

    #[test]
    fn trace_factorizes_over_kron() {
        let a = Matrix::from_rows(vec![
            vec![s("q"), s("1")],
            vec![s("0"), s("q^-1 + 1")],
        ]);
        let b = Matrix::from_rows(vec![
            vec![s("2"), s("q")],
            vec![s("q - 1"), s("q^2")],
        ]);
        let layout = TensorLayout::uniform(2, 2);
        let tr2 = partial_trace(&a.kron(&b), &layout, 2).unwrap();
        assert_eq!(tr2, a.scale(&b.trace()));
    }

    #[test]
    fn solve_identity_and_singular() {
        let i = Matrix::identity(3);
        let b = Matrix::from_fn(3, 1, |r, _| Scalar::from_int(r as i64 + 1));
        assert_eq!(solve_linear(&i, &b).unwrap(), Solve::Unique(b.clone()));

        let mut a = Matrix::zeros(2, 2);
        a.set(0, 0, Scalar::one());
        a.set(1, 0, Scalar::one());
        let mut rhs = Matrix::zeros(2, 1);
        rhs.set(0, 0, Scalar::one());
        rhs.set(1, 0, Scalar::from_int(2));
        assert_eq!(solve_linear(&a, &rhs).unwrap(), Solve::Inconsistent);

        let zero_rhs = Matrix::zeros(2, 1);
        assert_eq!(solve_linear(&a, &zero_rhs).unwrap(), Solve::Underdetermined);
    }

    #[test]
    fn solve_round_trip_symbolic() {
        let a = Matrix::from_rows(vec![
            vec![s("q"), s("1"), s("0")],
            vec![s("0"), s("q - q^-1"), s("2")],
            vec![s("1"), s("0"), s("q^2")],
        ]);
        let x = Matrix::from_rows(vec![vec![s("1")], vec![s("q")], vec![s("q^-1 - 3")]]);
        let b = &a * &x;
        assert_eq!(solve_linear(&a, &b).unwrap(), Solve::Unique(x));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_rows(vec![
            vec![s("q"), s("1")],
            vec![s("1"), s("q")],
        ]);
        let inv = inverse(&a).unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn null_space_of_projector() {
        // symmetrizer (P + I)/2 on 2x2 has rank 3 and kernel dim 1
        let p = flip_matrix(2);
        let sym = (&p + &Matrix::identity(4)).scale(&s("1/2"));
        assert_eq!(rank(&sym), 3);
        let ker = null_space_basis(&sym).unwrap();
        assert_eq!(ker.cols(), 1);
        assert!((&sym * &ker).is_zero());
    }
}
