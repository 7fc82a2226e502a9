//! Braidings on V ⊗ V: construction, certification, skew inverses and the
//! extension to V ⊕ V*.
//!
//! Matrix convention: operators act on column vectors, entries are indexed
//! `m[(out, in)]`, and a composite index on V ⊗ V is row-major, (i, j) -> i*N + j.
//! So `R(x_i ⊗ x_j) = sum_kl m[(k*N+l, i*N+j)] x_k ⊗ x_l`.
//!
//! The dual space V* is represented throughout in the right-dual basis (the
//! basis paired trivially by the evaluation V ⊗ V* -> K). In that frame the
//! left pairing V* ⊗ V -> K has weight matrix B. The generalized-Lie checks
//! for involutive symmetries use the other frame (left-dual basis, trivial
//! left pairing, right pairing weighted by C); both frames are produced by
//! the same extension routine with different pairing weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    flip_matrix, inverse, partial_trace, place_operator, solve_linear, Matrix, Solve, TensorLayout,
};
use crate::scalar::{int, parse_scalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidingClass {
    Involutive,
    Hecke,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Flip(usize),
    SuperFlip(usize, usize),
    StandardASeries(usize),
    Explicit,
}

impl Origin {
    pub fn name(&self) -> String {
        match self {
            Origin::Flip(n) => format!("flip({})", n),
            Origin::SuperFlip(m, n) => format!("super_flip({},{})", m, n),
            Origin::StandardASeries(n) => format!("standard_a_series({})", n),
            Origin::Explicit => "explicit".to_string(),
        }
    }
}

/// A certified braiding: YBE and the class polynomial have been checked
/// exactly at construction.
#[derive(Clone, Debug)]
pub struct Braiding {
    n: usize,
    r: Matrix,
    cls: BraidingClass,
    origin: Origin,
}

/// JSON description of a braiding, the external input format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BraidingSpec {
    Flip { n: usize },
    SuperFlip { m: usize, n: usize },
    StandardASeries { n: usize },
    /// `entries[out][in]` in the scalar grammar, composite index (i,j) -> i*N+j.
    Explicit { n: usize, entries: Vec<Vec<String>> },
}

impl Braiding {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.r
    }

    pub fn class(&self) -> BraidingClass {
        self.cls
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn name(&self) -> String {
        self.origin.name()
    }

    /// The eigenvalue parameter of the class polynomial: q for a Hecke
    /// symmetry, 1 for an involutive one.
    pub fn class_parameter(&self) -> Scalar {
        match self.cls {
            BraidingClass::Involutive => Scalar::one(),
            BraidingClass::Hecke => Scalar::q(),
        }
    }

    /// omega = q - q^{-1} for the class parameter; zero in the involutive case.
    pub fn omega(&self) -> Scalar {
        let p = self.class_parameter();
        &p - &p.inv().expect("class parameter nonzero")
    }

    /// R^{-1}; from the quadratic class relation, R - omega*I for Hecke and
    /// R itself for involutive symmetries.
    pub fn r_inverse(&self) -> Matrix {
        match self.cls {
            BraidingClass::Involutive => self.r.clone(),
            BraidingClass::Hecke => {
                &self.r - &Matrix::scalar_matrix(self.r.rows(), &self.omega())
            }
        }
    }
}

fn super_flip_matrix(m: usize, n: usize) -> Matrix {
    let dim = m + n;
    let parity = |i: usize| -> i64 {
        if i < m {
            0
        } else {
            1
        }
    };
    let mut p = Matrix::zeros(dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let sign = if parity(i) * parity(j) == 1 { -1 } else { 1 };
            p.set(j * dim + i, i * dim + j, Scalar::from_int(sign));
        }
    }
    p
}

/// The Drinfeld-Jimbo Hecke symmetry for the A series:
/// x_i ⊗ x_i -> q x_i ⊗ x_i,
/// x_i ⊗ x_j -> x_j ⊗ x_i for i < j,
/// x_i ⊗ x_j -> x_j ⊗ x_i + (q - q^{-1}) x_i ⊗ x_j for i > j.
fn standard_a_series_matrix(n: usize) -> Matrix {
    let q = Scalar::q();
    let omega = &q - &Scalar::q_pow(-1);
    let mut r = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                r.set(col, col, q.clone());
            } else {
                r.set(j * n + i, col, Scalar::one());
                if i > j {
                    r.set(col, col, omega.clone());
                }
            }
        }
    }
    r
}

fn decompose_triple(idx: usize, n: usize) -> (usize, usize, usize) {
    (idx / (n * n), (idx / n) % n, idx % n)
}

/// Check the Yang-Baxter equation R_1 R_2 R_1 = R_2 R_1 R_2 on V^3.
/// On failure returns a witness basis-index pair.
pub fn check_ybe(r: &Matrix, n: usize) -> std::result::Result<(), String> {
    let layout = TensorLayout::uniform(n, 3);
    let r1 = place_operator(r, 1, &layout).expect("shape checked");
    let r2 = place_operator(r, 2, &layout).expect("shape checked");
    let lhs = &(&r1 * &r2) * &r1;
    let rhs = &(&r2 * &r1) * &r2;
    if lhs == rhs {
        return Ok(());
    }
    for row in 0..lhs.rows() {
        for col in 0..lhs.cols() {
            if lhs[(row, col)] != rhs[(row, col)] {
                let o = decompose_triple(row, n);
                let i = decompose_triple(col, n);
                return Err(format!(
                    "YBE fails at output {:?}, input {:?}: lhs = {}, rhs = {}",
                    o,
                    i,
                    lhs[(row, col)],
                    rhs[(row, col)]
                ));
            }
        }
    }
    unreachable!()
}

/// Decide the class of a braiding matrix: R^2 = I, or the Hecke condition
/// (R - qI)(R + q^{-1}I) = 0 at the generic parameter q.
pub fn detect_class(r: &Matrix) -> Result<BraidingClass> {
    let dim = r.rows();
    let id = Matrix::identity(dim);
    if &r.pow(2) == &id {
        return Ok(BraidingClass::Involutive);
    }
    let q = Scalar::q();
    let lhs = &(r - &Matrix::scalar_matrix(dim, &q)) * &(r + &Matrix::scalar_matrix(dim, &q.inv()?));
    if lhs.is_zero() {
        return Ok(BraidingClass::Hecke);
    }
    Err(Error::UnknownClass(minimal_polynomial_evidence(r)))
}

/// Degrees and coefficients of the minimal polynomial of R, reported when the
/// class cannot be identified.
fn minimal_polynomial_evidence(r: &Matrix) -> String {
    let dim = r.rows();
    let mut powers: Vec<Matrix> = vec![Matrix::identity(dim)];
    for k in 1..=3usize {
        powers.push(&powers[k - 1] * r);
        // try to express powers[k] in terms of lower powers
        let cols = k;
        let mut a = Matrix::zeros(dim * dim, cols);
        let mut b = Matrix::zeros(dim * dim, 1);
        for rr in 0..dim {
            for cc in 0..dim {
                let vrow = rr * dim + cc;
                for (j, p) in powers[..k].iter().enumerate() {
                    a.set(vrow, j, p[(rr, cc)].clone());
                }
                b.set(vrow, 0, powers[k][(rr, cc)].clone());
            }
        }
        if let Ok(Solve::Unique(x)) = solve_linear(&a, &b) {
            let terms: Vec<String> =
                (0..cols).map(|j| format!("{} * R^{}", x[(j, 0)], j)).collect();
            return format!("R^{} = {}", k, terms.join(" + "));
        }
    }
    "no low-degree minimal polynomial found".to_string()
}

/// Construct and certify a braiding.
pub fn build_symmetry(spec: &BraidingSpec) -> Result<Braiding> {
    let (n, r, origin) = match spec {
        BraidingSpec::Flip { n } => (*n, flip_matrix(*n), Origin::Flip(*n)),
        BraidingSpec::SuperFlip { m, n } => {
            (m + n, super_flip_matrix(*m, *n), Origin::SuperFlip(*m, *n))
        }
        BraidingSpec::StandardASeries { n } => {
            (*n, standard_a_series_matrix(*n), Origin::StandardASeries(*n))
        }
        BraidingSpec::Explicit { n, entries } => {
            let dim = n * n;
            if entries.len() != dim || entries.iter().any(|row| row.len() != dim) {
                return Err(Error::Dimension(format!(
                    "explicit braiding for N={} needs a {}x{} entry table",
                    n, dim, dim
                )));
            }
            let mut m = Matrix::zeros(dim, dim);
            for (i, row) in entries.iter().enumerate() {
                for (j, text) in row.iter().enumerate() {
                    m.set(i, j, parse_scalar(text)?);
                }
            }
            (*n, m, Origin::Explicit)
        }
    };
    if n == 0 {
        return Err(Error::Dimension("braiding dimension must be positive".into()));
    }
    check_ybe(&r, n).map_err(Error::NotBraiding)?;
    let cls = detect_class(&r)?;
    match origin {
        Origin::Flip(_) | Origin::SuperFlip(_, _) => {
            if cls != BraidingClass::Involutive {
                return Err(Error::Internal("flip constructors must be involutive".into()));
            }
        }
        _ => {}
    }
    Ok(Braiding { n, r, cls, origin })
}

/// Skew inverse Psi of Def-3 type: Tr_2 Psi_12 R_23 = P_13 = Tr_2 Psi_23 R_12.
///
/// The defining equation contracts to one N^2 x N^2 system: with
/// Rpt[(c,k),(f,b)] := R[(f,c),(b,k)], each slice psi[(f,b)] = Psi[(a,b),(i,f)]
/// solves Rpt psi = rhs_(a,i). Non-uniqueness or inconsistency means R is not
/// skew-invertible.
pub fn skew_inverse(braiding: &Braiding) -> Result<Matrix> {
    let n = braiding.n;
    let nn = n * n;
    let r = &braiding.r;
    let mut rpt = Matrix::zeros(nn, nn);
    for c in 0..n {
        for k in 0..n {
            for f in 0..n {
                for b in 0..n {
                    rpt.set(c * n + k, f * n + b, r[(f * n + c, b * n + k)].clone());
                }
            }
        }
    }
    // rhs column (a,i): delta_{c,i} delta_{k,a}
    let mut rhs = Matrix::zeros(nn, nn);
    for a in 0..n {
        for i in 0..n {
            rhs.set(i * n + a, a * n + i, Scalar::one());
        }
    }
    let slices = match solve_linear(&rpt, &rhs)? {
        Solve::Unique(x) => x,
        Solve::Inconsistent => {
            return Err(Error::NotSkewInvertible("defining system inconsistent".into()))
        }
        Solve::Underdetermined => {
            return Err(Error::NotSkewInvertible(
                "defining system underdetermined (degenerate R)".into(),
            ))
        }
    };
    let mut psi = Matrix::zeros(nn, nn);
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                for f in 0..n {
                    psi.set(a * n + b, i * n + f, slices[(f * n + b, a * n + i)].clone());
                }
            }
        }
    }
    // verify both identities directly
    for (tag, res) in [("first", check_def3_first(r, &psi, n)), ("second", check_def3_second(r, &psi, n))]
    {
        if !res {
            return Err(Error::Internal(format!("Def-3 {} identity fails for computed Psi", tag)));
        }
    }
    Ok(psi)
}

pub fn check_def3_first(r: &Matrix, psi: &Matrix, n: usize) -> bool {
    let layout = TensorLayout::uniform(n, 3);
    let psi12 = place_operator(psi, 1, &layout).unwrap();
    let r23 = place_operator(r, 2, &layout).unwrap();
    let reduced = partial_trace(&(&psi12 * &r23), &layout, 2).unwrap();
    reduced == flip_matrix(n)
}

pub fn check_def3_second(r: &Matrix, psi: &Matrix, n: usize) -> bool {
    let layout = TensorLayout::uniform(n, 3);
    let psi23 = place_operator(psi, 2, &layout).unwrap();
    let r12 = place_operator(r, 1, &layout).unwrap();
    let reduced = partial_trace(&(&psi23 * &r12), &layout, 2).unwrap();
    reduced == flip_matrix(n)
}

/// The dual-pairing package: Psi, its partial traces B and C, the integer a
/// with C B = q^{-2a} I, and Tr C.
#[derive(Clone, Debug)]
pub struct SkewInverseData {
    pub psi: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub a: i64,
    pub tr_c: Scalar,
}

pub fn bc_data(braiding: &Braiding, psi: &Matrix) -> Result<SkewInverseData> {
    let n = braiding.n;
    let pair = TensorLayout::uniform(n, 2);
    let b = partial_trace(psi, &pair, 1)?;
    let c = partial_trace(psi, &pair, 2)?;

    // Tr_(1)(B_1 R_12) = I and Tr_(2)(C_2 R_12) = I
    let b1r = &b.kron(&Matrix::identity(n)) * &braiding.r;
    if partial_trace(&b1r, &pair, 1)? != Matrix::identity(n) {
        return Err(Error::Internal("Tr_1(B_1 R_12) != I".into()));
    }
    let c2r = &Matrix::identity(n).kron(&c) * &braiding.r;
    if partial_trace(&c2r, &pair, 2)? != Matrix::identity(n) {
        return Err(Error::Internal("Tr_2(C_2 R_12) != I".into()));
    }

    let cb = &c * &b;
    let scalar = cb
        .as_scalar_multiple_of_identity()
        .ok_or_else(|| Error::BcNotScalar(format!("C*B = {:?}", cb)))?;
    let exp = scalar
        .as_unit_monomial()
        .ok_or_else(|| Error::BcNotScalar(format!("C*B = {} * I, not a power of q", scalar)))?;
    if exp % 2 != 0 {
        return Err(Error::BcNotScalar(format!("C*B = q^{} I with odd exponent", exp)));
    }
    if &b * &c != cb {
        return Err(Error::Internal("B*C != C*B".into()));
    }
    let tr_c = c.trace();
    Ok(SkewInverseData { psi: psi.clone(), b, c, a: -exp / 2, tr_c })
}

/// The braiding extended to V ⊕ V*, as four blocks:
///
/// * `vv`: V ⊗ V  -> V ⊗ V    (the base braiding)
/// * `vd`: V ⊗ V* -> V* ⊗ V
/// * `dv`: V* ⊗ V -> V ⊗ V*
/// * `dd`: V* ⊗ V* -> V* ⊗ V*  (index formula R(x^i ⊗ x^j) = R^{ji}_{lk} x^k ⊗ x^l)
///
/// plus the two pairing weight matrices in the chosen dual frame:
/// `pair_left[j][k]` is the value of V* ⊗ V -> K on (dual_j, x_k) and
/// `pair_right[i][j]` the value of V ⊗ V* -> K on (x_i, dual_j).
#[derive(Clone, Debug)]
pub struct ExtendedBraiding {
    pub n: usize,
    pub cls: BraidingClass,
    pub vv: Matrix,
    pub vd: Matrix,
    pub dv: Matrix,
    pub dd: Matrix,
    pub pair_left: Matrix,
    pub pair_right: Matrix,
}

/// Extension in the primary frame (right-dual basis): left pairing weighted
/// by B, right pairing trivial.
pub fn extend_to_dual(braiding: &Braiding, skew: &SkewInverseData) -> Result<ExtendedBraiding> {
    extend_with_pairings(braiding, &skew.b, &Matrix::identity(braiding.n))
}

/// Extension in the left-dual frame used by the generalized-Lie checks:
/// trivial left pairing, right pairing weighted by C (as `pair_right[i][j] =
/// C_i^j`, i.e. the transpose of the C partial trace).
pub fn extend_to_dual_left_frame(
    braiding: &Braiding,
    skew: &SkewInverseData,
) -> Result<ExtendedBraiding> {
    extend_with_pairings(braiding, &Matrix::identity(braiding.n), &skew.c.transpose())
}

fn dual_dual_block(r: &Matrix, n: usize) -> Matrix {
    Matrix::from_fn(n * n, n * n, |out, inp| {
        let (k, l) = (out / n, out % n);
        let (i, j) = (inp / n, inp % n);
        r[(j * n + i, l * n + k)].clone()
    })
}

fn extend_with_pairings(braiding: &Braiding, wl: &Matrix, wr: &Matrix) -> Result<ExtendedBraiding> {
    let n = braiding.n;
    let nn = n * n;
    let a = braiding.r.clone();
    let a_inv = braiding.r_inverse();
    let dd = dual_dual_block(&a, n);

    // dv from invariance on V* ⊗ V ⊗ V:
    //   sum_{l} dv[(m,l),(i,j)] wl[l][k] = sum_{s} wl[i][s] a_inv[(s,m),(j,k)]
    // i.e. for each input (i,j) the slice over (m, l) solves slice * Wl = G.
    // Solved as Wl^T slice^T = G^T, all slices in one call.
    let mut g_t = Matrix::zeros(n, n * nn);
    for k in 0..n {
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Scalar::zero();
                    for s in 0..n {
                        acc = &acc + &(&wl[(i, s)] * &a_inv[(s * n + m, j * n + k)]);
                    }
                    g_t.set(k, m * nn + i * n + j, acc);
                }
            }
        }
    }
    let zt = match solve_linear(&wl.transpose(), &g_t)? {
        Solve::Unique(x) => x,
        _ => return Err(Error::Internal("left pairing weight matrix is singular".into())),
    };
    let mut dv = Matrix::zeros(nn, nn);
    for m in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    dv.set(m * n + l, i * n + j, zt[(l, m * nn + i * n + j)].clone());
                }
            }
        }
    }

    // vd from invariance on V ⊗ V* ⊗ V:
    //   sum_{r,t} H[(m,k),(r,t)] vd[(r,t),(i,j)] = delta_{m,i} wl[j][k]
    // with H[(m,k),(r,t)] = sum_s wl[r][s] a[(s,m),(t,k)].
    let mut h = Matrix::zeros(nn, nn);
    for m in 0..n {
        for k in 0..n {
            for rr in 0..n {
                for t in 0..n {
                    let mut acc = Scalar::zero();
                    for s in 0..n {
                        acc = &acc + &(&wl[(rr, s)] * &a[(s * n + m, t * n + k)]);
                    }
                    h.set(m * n + k, rr * n + t, acc);
                }
            }
        }
    }
    let mut rhs = Matrix::zeros(nn, nn);
    for m in 0..n {
        for k in 0..n {
            for j in 0..n {
                rhs.set(m * n + k, m * n + j, wl[(j, k)].clone());
            }
        }
    }
    let vd = match solve_linear(&h, &rhs)? {
        Solve::Unique(x) => x,
        Solve::Inconsistent => {
            return Err(Error::Internal("pairing invariance system inconsistent".into()))
        }
        Solve::Underdetermined => {
            return Err(Error::Internal("pairing invariance system underdetermined".into()))
        }
    };

    let ext = ExtendedBraiding {
        n,
        cls: braiding.cls,
        vv: a,
        vd,
        dv,
        dd,
        pair_left: wl.clone(),
        pair_right: wr.clone(),
    };
    verify_extension(braiding, &ext)?;
    Ok(ext)
}

/// Exact verification of the extension: the remaining left-pairing
/// invariance identities, all right-pairing invariance identities, and YBE
/// plus the class polynomial for the assembled braiding on (V ⊕ V*)^2.
fn verify_extension(braiding: &Braiding, ext: &ExtendedBraiding) -> Result<()> {
    let n = ext.n;
    let wl = &ext.pair_left;
    let wr = &ext.pair_right;
    let (a, vd, dv, dd) = (&ext.vv, &ext.vd, &ext.dv, &ext.dd);

    // left pairing, W = V*: on V* ⊗ V ⊗ V*
    //   wl[i][j] delta_{m,k'} = sum dd[(m,s),(i,u)] vd[(u,v),(j,k')] wl[s][v]
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for kp in 0..n {
                    let mut acc = Scalar::zero();
                    for s in 0..n {
                        for u in 0..n {
                            for v in 0..n {
                                let t = &(&dd[(m * n + s, i * n + u)]
                                    * &vd[(u * n + v, j * n + kp)])
                                    * &wl[(s, v)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if m == kp { wl[(i, j)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "left-pairing invariance (W=V*) fails at ({},{},{},{})",
                            m, i, j, kp
                        )));
                    }
                }
            }
        }
    }
    // left pairing, second family, W = V*: on V* ⊗ V* ⊗ V
    //   delta_{m,i} wl[j][k] = sum wl[r][u] dv[(u,m),(s,k)] dd[(r,s),(i,j)]
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero();
                    for rr in 0..n {
                        for u in 0..n {
                            for s in 0..n {
                                let t = &(&wl[(rr, u)] * &dv[(u * n + m, s * n + k)])
                                    * &dd[(rr * n + s, i * n + j)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if m == i { wl[(j, k)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "left-pairing invariance (second family, W=V*) fails at ({},{},{},{})",
                            m, i, j, k
                        )));
                    }
                }
            }
        }
    }

    // right pairing, first family on V ⊗ V* ⊗ W
    // W=V:  wr[i][j] delta_{m,k} = sum a[(m,w),(i,u)] dv[(u,w'),(j,k)] wr-contraction
    for m in 0..n {
        for i in 0..n {
            for jp in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero();
                    for u in 0..n {
                        for w in 0..n {
                            for wp in 0..n {
                                let t = &(&a[(m * n + w, i * n + u)]
                                    * &dv[(u * n + wp, jp * n + k)])
                                    * &wr[(w, wp)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if m == k { wr[(i, jp)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "right-pairing invariance (W=V) fails at ({},{},{},{})",
                            m, i, jp, k
                        )));
                    }
                }
            }
        }
    }
    // W=V*: on V ⊗ V* ⊗ V*
    for mp in 0..n {
        for i in 0..n {
            for jp in 0..n {
                for kp in 0..n {
                    let mut acc = Scalar::zero();
                    for up in 0..n {
                        for w in 0..n {
                            for wp in 0..n {
                                let t = &(&vd[(mp * n + w, i * n + up)]
                                    * &dd[(up * n + wp, jp * n + kp)])
                                    * &wr[(w, wp)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if mp == kp { wr[(i, jp)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "right-pairing invariance (W=V*) fails at ({},{},{},{})",
                            mp, i, jp, kp
                        )));
                    }
                }
            }
        }
    }
    // right pairing, second family on W ⊗ V ⊗ V*
    // W=V: delta_{m,k} wr[i][j] = sum a[(u,v),(k,i)] vd[(u',m),(v,j')] wr[u][u']
    for m in 0..n {
        for k in 0..n {
            for i in 0..n {
                for jp in 0..n {
                    let mut acc = Scalar::zero();
                    for u in 0..n {
                        for v in 0..n {
                            for up in 0..n {
                                let t = &(&a[(u * n + v, k * n + i)]
                                    * &vd[(up * n + m, v * n + jp)])
                                    * &wr[(u, up)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if m == k { wr[(i, jp)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "right-pairing invariance (second family, W=V) fails at ({},{},{},{})",
                            m, k, i, jp
                        )));
                    }
                }
            }
        }
    }
    // W=V*: on V* ⊗ V ⊗ V*
    for mp in 0..n {
        for kp in 0..n {
            for i in 0..n {
                for jp in 0..n {
                    let mut acc = Scalar::zero();
                    for u in 0..n {
                        for vp in 0..n {
                            for up in 0..n {
                                let t = &(&dv[(u * n + vp, kp * n + i)]
                                    * &dd[(up * n + mp, vp * n + jp)])
                                    * &wr[(u, up)];
                                acc = &acc + &t;
                            }
                        }
                    }
                    let lhs = if mp == kp { wr[(i, jp)].clone() } else { Scalar::zero() };
                    if acc != lhs {
                        return Err(Error::Internal(format!(
                            "right-pairing invariance (second family, W=V*) fails at ({},{},{},{})",
                            mp, kp, i, jp
                        )));
                    }
                }
            }
        }
    }

    // YBE for the assembled braiding on (V ⊕ V*)^3. The class polynomial
    // can only hold on the diagonal blocks: the mixed part of the assembled
    // operator is off-diagonal, which is compatible with a quadratic
    // T^2 = alpha T + beta only when alpha = 0. So the V* ⊗ V* block is
    // checked against the class of the base, and the full operator squares
    // to the identity exactly in the involutive case.
    let big = ext.assembled();
    check_ybe(&big, 2 * n).map_err(|w| Error::Internal(format!("assembled braiding: {}", w)))?;
    match braiding.cls {
        BraidingClass::Involutive => {
            if big.pow(2) != Matrix::identity(big.rows()) {
                return Err(Error::Internal("assembled braiding is not involutive".into()));
            }
        }
        BraidingClass::Hecke => {
            let q = Scalar::q();
            let nn = n * n;
            let h = &(dd - &Matrix::scalar_matrix(nn, &q))
                * &(dd + &Matrix::scalar_matrix(nn, &q.inv()?));
            if !h.is_zero() {
                return Err(Error::Internal(
                    "dual-dual block fails the Hecke condition".into(),
                ));
            }
        }
    }
    Ok(())
}

impl ExtendedBraiding {
    /// The braiding on (V ⊕ V*)^2 as one matrix. Basis order of V ⊕ V*:
    /// x_0..x_{N-1} then the dual basis.
    pub fn assembled(&self) -> Matrix {
        let n = self.n;
        let d = 2 * n;
        let mut out = Matrix::zeros(d * d, d * d);
        let put =
            |block: &Matrix, out_shift: (usize, usize), in_shift: (usize, usize), m: &mut Matrix| {
                for o1 in 0..n {
                    for o2 in 0..n {
                        for i1 in 0..n {
                            for i2 in 0..n {
                                let v = &block[(o1 * n + o2, i1 * n + i2)];
                                if v.is_zero() {
                                    continue;
                                }
                                let row = (o1 + out_shift.0) * d + (o2 + out_shift.1);
                                let col = (i1 + in_shift.0) * d + (i2 + in_shift.1);
                                m.set(row, col, v.clone());
                            }
                        }
                    }
                }
            };
        put(&self.vv, (0, 0), (0, 0), &mut out);
        put(&self.vd, (n, 0), (0, n), &mut out);
        put(&self.dv, (0, n), (n, 0), &mut out);
        put(&self.dd, (n, n), (n, n), &mut out);
        out
    }

    /// The braiding R_{End(V)} = R_23 R_34 R_12 R_23 on End(V)^2 with
    /// End(V) = V ⊗ V*, layout [V, V*, V, V*].
    pub fn end_braiding(&self) -> Result<EndBraiding> {
        let n = self.n;
        let layout = TensorLayout::uniform(n, 4);
        let first = place_operator(&self.dv, 2, &layout)?;
        let second = place_operator(&self.vv, 1, &layout)?;
        let third = place_operator(&self.dd, 3, &layout)?;
        let fourth = place_operator(&self.vd, 2, &layout)?;
        let m = &(&fourth * &third) * &(&second * &first);
        let eb = EndBraiding { n, matrix: m };
        // YBE on End(V)^3
        let nn = n * n;
        let l3 = TensorLayout::uniform(nn, 3);
        let r1 = place_operator(&eb.matrix, 1, &l3)?;
        let r2 = place_operator(&eb.matrix, 2, &l3)?;
        if &(&r1 * &r2) * &r1 != &(&r2 * &r1) * &r2 {
            return Err(Error::Internal("R_End(V) fails the YBE".into()));
        }
        if self.cls == BraidingClass::Involutive
            && eb.matrix.pow(2) != Matrix::identity(nn * nn)
        {
            return Err(Error::Internal("R_End(V) of an involutive symmetry must square to I".into()));
        }
        Ok(eb)
    }

    /// The braiding R_{End(V),U}: End(V) ⊗ U -> U ⊗ End(V), where U is a
    /// tensor product of copies of V and V* described by `factors`
    /// (false = V, true = V*).
    pub fn braid_end_past(&self, factors: &[Factor]) -> Result<Matrix> {
        let n = self.n;
        // start on layout [V, V*, u_1, ..., u_k]; move the V* leg right past
        // each u_i, then the V leg.
        let mut dims = vec![n, n];
        dims.extend(std::iter::repeat(n).take(factors.len()));
        let layout = TensorLayout::new(dims);
        let total = layout.total();
        let mut acc = Matrix::identity(total);
        // V* starts in slot 2; braid it to the far right
        for (step, f) in factors.iter().enumerate() {
            let block = match f {
                Factor::V => &self.dv,
                Factor::Dual => &self.dd,
            };
            let placed = place_operator(block, 2 + step, &layout)?;
            acc = &placed * &acc;
        }
        // V starts in slot 1; braid it to slot just before the moved V*
        for (step, f) in factors.iter().enumerate() {
            let block = match f {
                Factor::V => &self.vv,
                Factor::Dual => &self.vd,
            };
            let placed = place_operator(block, 1 + step, &layout)?;
            acc = &placed * &acc;
        }
        Ok(acc)
    }
}

/// Kind of one tensor leg of a carrier object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    V,
    Dual,
}

/// R_{End(V)} with its layout.
#[derive(Clone, Debug)]
pub struct EndBraiding {
    pub n: usize,
    pub matrix: Matrix,
}

impl EndBraiding {
    pub fn layout(&self) -> TensorLayout {
        TensorLayout::uniform(self.n, 4)
    }
}

/// Build the full pairing package in one call, verifying everything.
pub fn skew_package(braiding: &Braiding) -> Result<SkewInverseData> {
    let psi = skew_inverse(braiding)?;
    bc_data(braiding, &psi)
}

/// Inverse of B, needed by representation formulas; error when singular.
pub fn b_inverse(skew: &SkewInverseData) -> Result<Matrix> {
    inverse(&skew.b).ok_or(Error::SingularB)
}

pub fn involutive_a_is_zero(skew: &SkewInverseData) -> bool {
    skew.a == 0
}

/// Entry-wise specialization at q = 1 compared against the flip; holds for
/// the standard A-series symmetry.
pub fn specializes_to_flip_at_one(braiding: &Braiding) -> Result<bool> {
    let vals = braiding.r.eval_at(&int(1))?;
    let p = flip_matrix(braiding.n);
    for r in 0..p.rows() {
        for c in 0..p.cols() {
            let expect = p[(r, c)].as_rat().expect("flip entries are constants");
            if vals[r][c] != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn flip(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::Flip { n }).unwrap()
    }

    pub(crate) fn super_flip(m: usize, n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::SuperFlip { m, n }).unwrap()
    }

    pub(crate) fn standard(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::StandardASeries { n }).unwrap()
    }

    #[test]
    fn flip_certifies_involutive() {
        let b = flip(2);
        assert_eq!(b.class(), BraidingClass::Involutive);
        assert_eq!(b.matrix(), &flip_matrix(2));
    }

    #[test]
    fn super_flip_sign_rule() {
        let b = super_flip(1, 1);
        assert_eq!(b.class(), BraidingClass::Involutive);
        // x_2 ⊗ x_2 -> -(x_2 ⊗ x_2): composite index 3
        assert_eq!(b.matrix()[(3, 3)], Scalar::from_int(-1));
        assert!(b.matrix()[(1, 2)].is_one());
    }

    #[test]
    fn standard_a_series_is_hecke() {
        for n in [2usize, 3] {
            let b = standard(n);
            assert_eq!(b.class(), BraidingClass::Hecke);
            assert!(specializes_to_flip_at_one(&b).unwrap());
            assert_eq!(&b.r_inverse() * b.matrix(), Matrix::identity(n * n));
        }
    }

    #[test]
    fn non_ybe_matrix_rejected_with_witness() {
        let mut entries = vec![vec!["0".to_string(); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = "1".into();
        }
        entries[0][1] = "1".into(); // breaks nothing yet: still not a permutation
        let spec = BraidingSpec::Explicit { n: 2, entries };
        match build_symmetry(&spec) {
            Err(Error::NotBraiding(w)) => assert!(w.contains("YBE fails"), "witness: {}", w),
            Err(Error::UnknownClass(_)) => {}
            other => panic!("expected rejection, got {:?}", other),
        }
    }

    #[test]
    fn unknown_class_reports_minimal_polynomial() {
        // 2R is a braiding (YBE is homogeneous) but neither involutive nor Hecke
        let two_flip: Vec<Vec<String>> = (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| if flip_matrix(2)[(r, c)].is_one() { "2".to_string() } else { "0".to_string() })
                    .collect()
            })
            .collect();
        match build_symmetry(&BraidingSpec::Explicit { n: 2, entries: two_flip }) {
            Err(Error::UnknownClass(e)) => assert!(e.contains("R^"), "evidence: {}", e),
            other => panic!("expected class error, got {:?}", other),
        }
    }

    #[test]
    fn skew_inverse_of_flip_is_flip() {
        let b = flip(3);
        let psi = skew_inverse(&b).unwrap();
        assert_eq!(psi, flip_matrix(3));
        let data = bc_data(&b, &psi).unwrap();
        assert!(data.b.is_identity());
        assert!(data.c.is_identity());
        assert_eq!(data.a, 0);
        assert_eq!(data.tr_c, Scalar::from_int(3));
    }

    #[test]
    fn super_flip_bc_signs() {
        let b = super_flip(1, 1);
        let data = skew_package(&b).unwrap();
        let d = Matrix::from_fn(2, 2, |r, c| {
            if r != c {
                Scalar::zero()
            } else if r == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            }
        });
        assert_eq!(data.b, d);
        assert_eq!(data.c, d);
        assert_eq!(data.a, 0);
        assert!(data.tr_c.is_zero());
    }

    #[test]
    fn standard_bc_is_unit_monomial_power() {
        let b = standard(2);
        let data = skew_package(&b).unwrap();
        let cb = &data.c * &data.b;
        let s = cb.as_scalar_multiple_of_identity().unwrap();
        assert_eq!(s, Scalar::q_pow(-2 * data.a));
        assert!(!data.tr_c.is_zero());
    }

    #[test]
    fn extension_blocks_for_flip_are_flips() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let p = flip_matrix(2);
        assert_eq!(ext.vv, p);
        assert_eq!(ext.vd, p);
        assert_eq!(ext.dv, p);
        assert_eq!(ext.dd, p);
    }

    #[test]
    fn extension_verifies_for_fleet() {
        for b in [flip(2), super_flip(1, 1), standard(2)] {
            let skew = skew_package(&b).unwrap();
            let ext = extend_to_dual(&b, &skew).unwrap();
            let eb = ext.end_braiding().unwrap();
            assert_eq!(eb.matrix.rows(), b.dim().pow(4));
            if b.class() == BraidingClass::Involutive {
                assert_eq!(eb.matrix.pow(2), Matrix::identity(b.dim().pow(4)));
            }
        }
    }

    #[test]
    fn end_braiding_of_flip_swaps_end_factors() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let eb = ext.end_braiding().unwrap();
        assert_eq!(eb.matrix, flip_matrix(4));
    }

    #[test]
    fn fleet_braid_end_past_v_matches_blocks() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let n = b.dim();
        let m = ext.braid_end_past(&[Factor::V]).unwrap();
        let layout = TensorLayout::uniform(n, 3);
        let manual =
            &place_operator(&ext.vv, 1, &layout).unwrap() * &place_operator(&ext.dv, 2, &layout).unwrap();
        assert_eq!(m, manual);
    }
}
