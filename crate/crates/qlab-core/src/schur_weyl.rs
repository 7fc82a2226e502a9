//! Hecke-algebra action on V^k, Young projector banks, tensor-power
//! decomposition, and the operator Q with its q-(anti)symmetrizers on
//! End(V)^2.
//!
//! Projectors are built from Jucys-Murphy elements by exact spectral
//! interpolation: multiplicative elements J_{m+1} = R_m J_m R_m with
//! eigenvalues q^{2c} for Hecke symmetries, additive elements
//! X_{m+1} = R_m X_m R_m + R_m with integer content eigenvalues in the
//! involutive case. A standard tableau is recovered from its content
//! sequence, so joint spectral projectors are exactly the primitive ones.
//! Correctness is enforced by the bank invariants (idempotency, mutual
//! orthogonality, completeness, rank additivity), which are all checked at
//! construction.

use serde::Serialize;

use crate::braiding::{Braiding, BraidingClass, ExtendedBraiding};
use crate::error::{Error, Result};
use crate::matrix::{place_operator, rank, Matrix, TensorLayout};
use crate::pairframe::PairFrame;
use crate::scalar::Scalar;

pub const DEFAULT_SIZE_CAP: usize = 128;
pub const MAX_PROJECTOR_DEGREE: usize = 4;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0));
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of k in descending lexicographic order.
    pub fn all(k: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                go(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Standard filling of a Young diagram; `contents[m-1]` is the content
/// (column - row) of the box holding entry m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
    pub contents: Vec<i64>,
    /// 1-based ordinal within its shape under the documented order.
    pub a: usize,
}

/// All standard tableaux of a shape. Within the shape, tableaux are ordered
/// by their content sequence compared entrywise from entry 1 upwards, larger
/// content first; `a` is the 1-based position in that order.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let k = shape.size();
    let parts = shape.parts();
    let mut fills: Vec<Vec<usize>> = Vec::new(); // row lengths so far
    let mut out: Vec<(Vec<i64>, Vec<Vec<usize>>)> = Vec::new();
    fn go(
        m: usize,
        k: usize,
        parts: &[usize],
        filled: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        contents: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, Vec<Vec<usize>>)>,
    ) {
        if m > k {
            out.push((contents.clone(), rows.clone()));
            return;
        }
        for r in 0..parts.len() {
            let c = filled[r];
            if c >= parts[r] {
                continue;
            }
            if r > 0 && filled[r - 1] <= c {
                continue; // box above must already be filled
            }
            filled[r] += 1;
            rows[r].push(m);
            contents.push(c as i64 - r as i64);
            go(m + 1, k, parts, filled, rows, contents, out);
            contents.pop();
            rows[r].pop();
            filled[r] -= 1;
        }
    }
    fills.resize(parts.len(), Vec::new());
    let mut filled = vec![0usize; parts.len()];
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    go(1, k, parts, &mut filled, &mut rows, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out.into_iter()
        .enumerate()
        .map(|(i, (contents, rows))| StandardTableau {
            shape: shape.clone(),
            rows,
            contents,
            a: i + 1,
        })
        .collect()
}

/// Generator images R_1 .. R_{k-1} on V^k, with braid relations, distant
/// commutation and the class quadratic verified exactly.
pub fn hecke_rep(braiding: &Braiding, k: usize) -> Result<Vec<Matrix>> {
    hecke_rep_capped(braiding, k, DEFAULT_SIZE_CAP)
}

pub fn hecke_rep_capped(braiding: &Braiding, k: usize, cap: usize) -> Result<Vec<Matrix>> {
    if k < 2 {
        return Err(Error::SizeCap(format!("degree {} has no generators", k)));
    }
    let n = braiding.dim();
    let total = n.pow(k as u32);
    if total > cap {
        return Err(Error::SizeCap(format!("N^k = {} exceeds cap {}", total, cap)));
    }
    let layout = TensorLayout::uniform(n, k);
    let gens: Vec<Matrix> = (1..k)
        .map(|i| place_operator(braiding.matrix(), i, &layout))
        .collect::<Result<_>>()?;
    let q = braiding.class_parameter();
    let id = Matrix::identity(total);
    for (i, g) in gens.iter().enumerate() {
        let quad = &(g - &Matrix::scalar_matrix(total, &q))
            * &(g + &Matrix::scalar_matrix(total, &q.inv()?));
        if !quad.is_zero() {
            return Err(Error::Internal(format!("generator {} fails the class quadratic", i + 1)));
        }
        for (j, h) in gens.iter().enumerate().skip(i + 1) {
            if j == i + 1 {
                if &(&(g * h) * g) != &(&(h * g) * h) {
                    return Err(Error::Internal(format!(
                        "braid relation fails for generators {}, {}",
                        i + 1,
                        j + 1
                    )));
                }
            } else if &(g * h) != &(h * g) {
                return Err(Error::Internal(format!(
                    "distant generators {}, {} do not commute",
                    i + 1,
                    j + 1
                )));
            }
        }
        let _ = &id;
    }
    Ok(gens)
}

/// Jucys-Murphy images on V^k: J_1 = I (or 0) and the recursion suited to
/// the class of the symmetry.
fn jm_elements(braiding: &Braiding, gens: &[Matrix], k: usize) -> Vec<Matrix> {
    let n = braiding.dim();
    let total = n.pow(k as u32);
    let mut jm = Vec::with_capacity(k);
    match braiding.class() {
        BraidingClass::Hecke => {
            jm.push(Matrix::identity(total));
            for m in 1..k {
                let r = &gens[m - 1];
                jm.push(&(r * &jm[m - 1]) * r);
            }
        }
        BraidingClass::Involutive => {
            jm.push(Matrix::zeros(total, total));
            for m in 1..k {
                let r = &gens[m - 1];
                jm.push(&(&(r * &jm[m - 1]) * r) + r);
            }
        }
    }
    jm
}

fn jm_eigenvalue(cls: BraidingClass, content: i64) -> Scalar {
    match cls {
        BraidingClass::Hecke => Scalar::q_pow(2 * content),
        BraidingClass::Involutive => Scalar::from_int(content),
    }
}

#[derive(Clone, Debug)]
pub struct BankEntry {
    pub tableau: StandardTableau,
    pub projector: Matrix,
    pub dim: usize,
}

/// Complete orthogonal family of Young projectors on V^k.
#[derive(Clone, Debug)]
pub struct ProjectorBank {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<BankEntry>,
}

impl ProjectorBank {
    pub fn get(&self, shape: &Partition, a: usize) -> Option<&BankEntry> {
        self.entries.iter().find(|e| &e.tableau.shape == shape && e.tableau.a == a)
    }

    /// Sum of the projectors of one shape (the isotypic projector).
    pub fn isotypic(&self, shape: &Partition) -> Matrix {
        let total = self.n.pow(self.k as u32);
        let mut acc = Matrix::zeros(total, total);
        for e in &self.entries {
            if &e.tableau.shape == shape {
                acc = &acc + &e.projector;
            }
        }
        acc
    }
}

pub fn young_projectors(braiding: &Braiding, k: usize) -> Result<ProjectorBank> {
    if !(2..=MAX_PROJECTOR_DEGREE).contains(&k) {
        return Err(Error::DegreeCap(format!(
            "projector banks support 2 <= k <= {}, got {}",
            MAX_PROJECTOR_DEGREE, k
        )));
    }
    let n = braiding.dim();
    let total = n.pow(k as u32);
    let gens = hecke_rep(braiding, k)?;
    let jm = jm_elements(braiding, &gens, k);
    let cls = braiding.class();

    let mut entries = Vec::new();
    for shape in Partition::all(k) {
        for tab in standard_tableaux(&shape) {
            let mut proj = Matrix::identity(total);
            for m in 2..=k {
                let c_m = tab.contents[m - 1];
                let target = jm_eigenvalue(cls, c_m);
                let bound = (m - 1) as i64;
                for other in -bound..=bound {
                    if other == c_m {
                        continue;
                    }
                    let ev = jm_eigenvalue(cls, other);
                    let denom = &target - &ev;
                    let num = &jm[m - 1] - &Matrix::scalar_matrix(total, &ev);
                    proj = &proj * &num.scale(&denom.inv()?);
                }
            }
            let dim = rank(&proj);
            entries.push(BankEntry { tableau: tab, projector: proj, dim });
        }
    }

    let bank = ProjectorBank { n, k, entries };
    verify_bank(&bank)?;
    Ok(bank)
}

fn verify_bank(bank: &ProjectorBank) -> Result<()> {
    let total = bank.n.pow(bank.k as u32);
    let mut sum = Matrix::zeros(total, total);
    let mut dims = 0usize;
    for (i, e) in bank.entries.iter().enumerate() {
        if &(&e.projector * &e.projector) != &e.projector {
            return Err(Error::Internal(format!(
                "projector {} a={} is not idempotent",
                e.tableau.shape, e.tableau.a
            )));
        }
        for f in bank.entries.iter().skip(i + 1) {
            if !(&e.projector * &f.projector).is_zero() || !(&f.projector * &e.projector).is_zero()
            {
                return Err(Error::Internal(format!(
                    "projectors {} a={} and {} a={} are not orthogonal",
                    e.tableau.shape, e.tableau.a, f.tableau.shape, f.tableau.a
                )));
            }
        }
        sum = &sum + &e.projector;
        dims += e.dim;
    }
    if !sum.is_identity() {
        return Err(Error::Internal("projector bank does not sum to the identity".into()));
    }
    if dims != total {
        return Err(Error::Internal(format!(
            "projector ranks sum to {} instead of {}",
            dims, total
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRow {
    pub partition: Vec<usize>,
    pub a: usize,
    pub dim: usize,
}

/// Ranks of the bank projectors: the multiplicity-free decomposition data of
/// V^k as a sum of images.
pub fn decompose(bank: &ProjectorBank) -> Vec<DecompositionRow> {
    bank.entries
        .iter()
        .map(|e| DecompositionRow {
            partition: e.tableau.shape.parts().to_vec(),
            a: e.tableau.a,
            dim: e.dim,
        })
        .collect()
}

/// The operator Q with its spectral projectors at eigenvalue 1 (S_q) and the
/// complement (A_q), on End(V)^2 in the l ⊗ l basis.
#[derive(Clone, Debug)]
pub struct QProjectors {
    pub q_op: Matrix,
    pub s_q: Matrix,
    pub a_q: Matrix,
    /// Whether Q itself satisfies the YBE (verified per instance).
    pub q_is_braiding: bool,
}

pub fn q_projectors(ext: &ExtendedBraiding, braiding: &Braiding) -> Result<QProjectors> {
    let frame = PairFrame::new(braiding)?;
    let q_op = frame.conjugation_operator();
    let dim = q_op.rows();
    let id = Matrix::identity(dim);
    let qq = braiding.class_parameter();
    let q2 = &qq * &qq;
    let q2i = q2.inv()?;

    let cubic = &(&(&q_op - &id) * &(&q_op + &Matrix::scalar_matrix(dim, &q2)))
        * &(&q_op + &Matrix::scalar_matrix(dim, &q2i));
    if !cubic.is_zero() {
        return Err(Error::Internal(
            "minimal polynomial of Q does not divide (Q-1)(Q+q^2)(Q+q^-2)".into(),
        ));
    }

    let norm = &(&Scalar::one() + &q2) * &(&Scalar::one() + &q2i);
    let s_q = (&(&q_op + &Matrix::scalar_matrix(dim, &q2))
        * &(&q_op + &Matrix::scalar_matrix(dim, &q2i)))
        .scale(&norm.inv()?);
    let a_q = &id - &s_q;

    if &(&s_q * &s_q) != &s_q || !(&s_q * &a_q).is_zero() {
        return Err(Error::Internal("S_q is not a projector complementary to A_q".into()));
    }

    // Q is reported as a braiding when the YBE holds for it; End(V)^3 here
    // is (N^2)^3-dimensional, so keep this to the stated desk scale.
    let nn = ext.n * ext.n;
    let l3 = TensorLayout::uniform(nn, 3);
    let q1 = place_operator(&q_op, 1, &l3)?;
    let q2p = place_operator(&q_op, 2, &l3)?;
    let q_is_braiding = &(&q1 * &q2p) * &q1 == &(&q2p * &q1) * &q2p;

    Ok(QProjectors { q_op, s_q, a_q, q_is_braiding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{build_symmetry, skew_package, extend_to_dual, BraidingSpec};
    use crate::matrix::flip_matrix;

    fn flip(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::Flip { n }).unwrap()
    }

    fn standard(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::StandardASeries { n }).unwrap()
    }

    #[test]
    fn partitions_in_descending_lex() {
        let ps = Partition::all(4);
        let texts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, vec!["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn tableau_counts_and_order() {
        let shape = Partition::new(vec![2, 1]);
        let tabs = standard_tableaux(&shape);
        assert_eq!(tabs.len(), 2);
        // a = 1 holds {1 2 / 3}: contents (0, 1, -1)
        assert_eq!(tabs[0].contents, vec![0, 1, -1]);
        assert_eq!(tabs[1].contents, vec![0, -1, 1]);
        assert_eq!(tabs[0].a, 1);
        // hook length count for (3,2): 5 standard tableaux
        assert_eq!(standard_tableaux(&Partition::new(vec![3, 2])).len(), 5);
    }

    #[test]
    fn hecke_rep_rejects_k1() {
        assert!(matches!(hecke_rep(&standard(2), 1), Err(Error::SizeCap(_))));
    }

    #[test]
    fn hecke_rep_flip_is_permutations() {
        let gens = hecke_rep(&flip(2), 3).unwrap();
        let layout = TensorLayout::uniform(2, 3);
        assert_eq!(gens[0], place_operator(&flip_matrix(2), 1, &layout).unwrap());
        assert_eq!(gens[1], place_operator(&flip_matrix(2), 2, &layout).unwrap());
    }

    #[test]
    fn k2_bank_is_q_symmetrizer_pair() {
        let b = standard(2);
        let bank = young_projectors(&b, 2).unwrap();
        assert_eq!(bank.entries.len(), 2);
        let q = Scalar::q();
        let qinv = Scalar::q_pow(-1);
        let denom = (&q + &qinv).inv().unwrap();
        let r = b.matrix();
        let sym = (r + &Matrix::scalar_matrix(4, &qinv)).scale(&denom);
        let asym = (&Matrix::scalar_matrix(4, &q) - r).scale(&denom);
        assert_eq!(bank.entries[0].projector, sym);
        assert_eq!(bank.entries[1].projector, asym);
        assert_eq!(bank.entries[0].dim, 3);
        assert_eq!(bank.entries[1].dim, 1);
    }

    #[test]
    fn decompose_standard2_k3_dims() {
        let bank = young_projectors(&standard(2), 3).unwrap();
        let rows = decompose(&bank);
        let summary: Vec<(Vec<usize>, usize, usize)> =
            rows.iter().map(|r| (r.partition.clone(), r.a, r.dim)).collect();
        assert_eq!(
            summary,
            vec![
                (vec![3], 1, 4),
                (vec![2, 1], 1, 2),
                (vec![2, 1], 2, 2),
                (vec![1, 1, 1], 1, 0),
            ]
        );
    }

    #[test]
    fn super_flip_k2_ranks_sum() {
        let b = build_symmetry(&BraidingSpec::SuperFlip { m: 1, n: 1 }).unwrap();
        let bank = young_projectors(&b, 2).unwrap();
        let total: usize = bank.entries.iter().map(|e| e.dim).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn isotypic_projectors_are_central_k3() {
        let b = standard(2);
        let bank = young_projectors(&b, 3).unwrap();
        let gens = hecke_rep(&b, 3).unwrap();
        for shape in Partition::all(3) {
            let iso = bank.isotypic(&shape);
            for g in &gens {
                assert_eq!(&iso * g, g * &iso, "isotypic projector not central for {}", shape);
            }
        }
    }

    #[test]
    fn bank_specializes_at_q_one() {
        use crate::scalar::int;
        let deformed = young_projectors(&standard(2), 2).unwrap();
        let classical = young_projectors(&flip(2), 2).unwrap();
        for (d, c) in deformed.entries.iter().zip(&classical.entries) {
            assert_eq!(
                d.projector.eval_at(&int(1)).unwrap(),
                c.projector.eval_at(&int(1)).unwrap()
            );
        }
    }

    #[test]
    fn q_projectors_flip_is_end_flip() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let qp = q_projectors(&ext, &b).unwrap();
        assert_eq!(qp.q_op, flip_matrix(4));
        assert!(qp.q_is_braiding);
        assert_eq!(rank(&qp.s_q) + rank(&qp.a_q), 16);
    }

    #[test]
    fn q_cubic_for_standard2() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let qp = q_projectors(&ext, &b).unwrap();
        assert_eq!(rank(&qp.s_q) + rank(&qp.a_q), 16);
        assert!(qp.q_is_braiding);
    }
}
