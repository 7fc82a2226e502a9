//! The "pair frame" of matrix copies L_1bar, L_2bar.
//!
//! Relations and operators on End(V)^2 are written through products
//! L_1bar L_2bar = L_1 R L_1 R^{-1}. Expanding in generator symbols, the
//! coefficient of l_g ⊗ l_h is the numeric matrix A_g B_h with
//! A_g = E_g ⊗ I and B_h = R (E_h ⊗ I) R^{-1} (row-convention matrices, i.e.
//! transposes of the operator matrices used elsewhere). These N^4 matrices
//! form a basis of the N^2 x N^2 matrix space whenever R is skew-invertible,
//! so any matrix decomposes uniquely in the frame; the decomposition only
//! needs one inverse of the N^2 x N^2 partial transpose of R.

use crate::braiding::Braiding;
use crate::error::{Error, Result};
use crate::matrix::{inverse, Matrix};
use crate::scalar::Scalar;

pub struct PairFrame {
    pub n: usize,
    /// R in row convention (transpose of the operator matrix).
    pub rp: Matrix,
    pub rp_inv: Matrix,
    /// Inverse of the partial transpose gamma(R)[(b,d),(e,s)] = rp[(e,b),(s,d)].
    gamma_inv: Matrix,
    /// All frame matrices B_h = rp (E_h ⊗ I) rp^{-1}, indexed by h = h1*N + h2.
    b_frames: Vec<Matrix>,
}

impl PairFrame {
    pub fn new(braiding: &Braiding) -> Result<PairFrame> {
        let n = braiding.dim();
        let nn = n * n;
        let rp = braiding.matrix().transpose();
        let rp_inv = braiding.r_inverse().transpose();
        let gamma = Matrix::from_fn(nn, nn, |row, col| {
            let (b, d) = (row / n, row % n);
            let (e, s) = (col / n, col % n);
            rp[(e * n + b, s * n + d)].clone()
        });
        let gamma_inv = inverse(&gamma).ok_or_else(|| {
            Error::NotSkewInvertible("partial transpose of R is singular".into())
        })?;
        let mut b_frames = Vec::with_capacity(nn);
        for h in 0..nn {
            let mut e_h = Matrix::zeros(nn, nn);
            let (h1, h2) = (h / n, h % n);
            for b in 0..n {
                e_h.set(h1 * n + b, h2 * n + b, Scalar::one());
            }
            b_frames.push(&(&rp * &e_h) * &rp_inv);
        }
        Ok(PairFrame { n, rp, rp_inv, gamma_inv, b_frames })
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// sum_{g,h} coeffs[(g,h)] A_g B_h as an N^2 x N^2 matrix; `coeffs` has
    /// length N^4 indexed row-major by (g, h).
    pub fn compose(&self, coeffs: &[Scalar]) -> Matrix {
        let n = self.n;
        let nn = n * n;
        assert_eq!(coeffs.len(), nn * nn);
        let mut m = Matrix::zeros(nn, nn);
        for a in 0..n {
            for b in 0..n {
                for col in 0..nn {
                    let mut acc = Scalar::zero();
                    for e in 0..n {
                        for h in 0..nn {
                            let coeff = &coeffs[(a * n + e) * nn + h];
                            if coeff.is_zero() {
                                continue;
                            }
                            acc = &acc + &(coeff * &self.b_frames[h][(e * n + b, col)]);
                        }
                    }
                    m.set(a * n + b, col, acc);
                }
            }
        }
        m
    }

    /// Unique coefficients of `m` in the frame: m = sum coeffs[(g,h)] A_g B_h.
    pub fn decompose(&self, m: &Matrix) -> Vec<Scalar> {
        let n = self.n;
        let nn = n * n;
        assert_eq!(m.rows(), nn);
        let mprime = m * &self.rp;
        let mut coeffs = vec![Scalar::zero(); nn * nn];
        for a in 0..n {
            for cc in 0..n {
                // slice over (b,d) -> gamma^{-1} -> slice over (e,s)
                for e in 0..n {
                    for s in 0..n {
                        let mut acc = Scalar::zero();
                        for b in 0..n {
                            for d in 0..n {
                                let g = &self.gamma_inv[(e * n + s, b * n + d)];
                                if g.is_zero() {
                                    continue;
                                }
                                acc = &acc + &(g * &mprime[(a * n + b, cc * n + d)]);
                            }
                        }
                        coeffs[(a * n + e) * nn + (s * n + cc)] = acc;
                    }
                }
            }
        }
        coeffs
    }

    /// The conjugation operator Q on End(V)^2 in the l ⊗ l basis:
    /// Q(L_1bar L_2bar) = R^{-1} L_1bar L_2bar R.
    pub fn conjugation_operator(&self) -> Matrix {
        let nn = self.dim();
        let dim = nn * nn;
        let mut q = Matrix::zeros(dim, dim);
        for g in 0..nn {
            for h in 0..nn {
                // A_g B_h has rows g1*n+b picked from B_h rows (g2, b)
                let n = self.n;
                let (g1, g2) = (g / n, g % n);
                let mut agbh = Matrix::zeros(nn, nn);
                for b in 0..n {
                    for col in 0..nn {
                        let v = self.b_frames[h][(g2 * n + b, col)].clone();
                        if !v.is_zero() {
                            agbh.set(g1 * n + b, col, v);
                        }
                    }
                }
                let conj = &(&self.rp_inv * &agbh) * &self.rp;
                let col_coeffs = self.decompose(&conj);
                for (row, v) in col_coeffs.into_iter().enumerate() {
                    if !v.is_zero() {
                        q.set(row, g * nn + h, v);
                    }
                }
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{build_symmetry, BraidingSpec};

    #[test]
    fn decompose_round_trips() {
        let b = build_symmetry(&BraidingSpec::StandardASeries { n: 2 }).unwrap();
        let f = PairFrame::new(&b).unwrap();
        let mut coeffs = vec![Scalar::zero(); 16];
        coeffs[3] = Scalar::q();
        coeffs[7] = Scalar::from_int(-2);
        coeffs[10] = &Scalar::q() - &Scalar::q_pow(-1);
        let m = f.compose(&coeffs);
        assert_eq!(f.decompose(&m), coeffs);
    }

    #[test]
    fn frame_of_flip_is_kronecker() {
        // for the flip, A_g B_h = E_g ⊗ E_h
        let b = build_symmetry(&BraidingSpec::Flip { n: 2 }).unwrap();
        let f = PairFrame::new(&b).unwrap();
        let mut coeffs = vec![Scalar::zero(); 16];
        coeffs[1 * 4 + 2] = Scalar::one(); // g = (0,1), h = (1,0)
        let m = f.compose(&coeffs);
        let mut e01 = Matrix::zeros(2, 2);
        e01.set(0, 1, Scalar::one());
        let mut e10 = Matrix::zeros(2, 2);
        e10.set(1, 0, Scalar::one());
        assert_eq!(m, e01.kron(&e10));
    }
}
