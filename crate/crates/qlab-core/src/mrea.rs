//! The modified reflection equation algebra: relations, equivariant
//! representations, braided bialgebra maps, tensor products and restrictions
//! of representations, and filtered dimension counts.
//!
//! Relations are stored as exact coefficient tables. The N^2 x N^2 matrix
//! relation R L_1 R L_1 - L_1 R L_1 R - hbar (R L_1 - L_1 R) = 0 expands, in
//! generator symbols l_g, into one quadratic-linear relation per matrix
//! entry: in row convention L_1 = sum_g l_g (E_g ⊗ I), so the coefficient of
//! l_g l_h in entry `e` is a product of numeric matrices and lives in
//! `quad[(e, (g,h))]`; the linear part lives in `lin[(e, g)]`.

use serde::Serialize;

use crate::braiding::{Braiding, ExtendedBraiding};
use crate::error::{Error, Result};
use crate::matrix::{column_space_basis, solve_linear, Matrix, Solve};
use crate::scalar::Scalar;
use crate::symbolic::{add_term, filtered_quotient_dims, spans_equal, SparseVec, WordSpace};

pub const DEFAULT_FILTRATION_CAP: usize = 3;

/// Quadratic-linear relation coefficients of the algebra presented on N^2
/// generators; one relation per entry of the defining matrix equation.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub n: usize,
    pub hbar: Scalar,
    /// N^4 x N^4: relation index (row-major matrix entry) by pair (g,h).
    pub quad: Matrix,
    /// N^4 x N^2: linear coefficients by generator.
    pub lin: Matrix,
}

/// E_g ⊗ I in row convention for g = (g1, g2).
pub(crate) fn gen_frame(n: usize, g: usize) -> Matrix {
    let (g1, g2) = (g / n, g % n);
    let mut m = Matrix::zeros(n * n, n * n);
    for b in 0..n {
        m.set(g1 * n + b, g2 * n + b, Scalar::one());
    }
    m
}

/// Coefficient tables of Def-10 type relations
/// R L R L - L R L R - hbar (R L - L R), without the span verification.
pub(crate) fn raw_relation_set(braiding: &Braiding, hbar: &Scalar) -> RelationSet {
    let n = braiding.dim();
    let nn = n * n;
    let rp = braiding.matrix().transpose();
    let frames: Vec<Matrix> = (0..nn).map(|g| gen_frame(n, g)).collect();

    let mut quad = Matrix::zeros(nn * nn, nn * nn);
    let mut lin = Matrix::zeros(nn * nn, nn);
    for g in 0..nn {
        let rag = &rp * &frames[g];
        let agr = &frames[g] * &rp;
        for h in 0..nn {
            let m = &(&rag * &(&rp * &frames[h])) - &(&frames[g] * &(&rp * &(&frames[h] * &rp)));
            for e in 0..nn * nn {
                let v = &m[(e / nn, e % nn)];
                if !v.is_zero() {
                    quad.set(e, g * nn + h, v.clone());
                }
            }
        }
        let l = (&rag - &agr).scale(hbar);
        for e in 0..nn * nn {
            let v = &l[(e / nn, e % nn)];
            if !v.is_zero() {
                lin.set(e, g, -v);
            }
        }
    }
    RelationSet { n, hbar: hbar.clone(), quad, lin }
}

impl RelationSet {
    /// Relations as vectors in the degree-<=2 word space on N^2 generators.
    pub fn word_vectors(&self, ws: &WordSpace) -> Vec<SparseVec> {
        let nn = self.n * self.n;
        let mut out = Vec::with_capacity(nn * nn);
        for e in 0..nn * nn {
            let mut v = SparseVec::new();
            for g in 0..nn {
                for h in 0..nn {
                    add_term(&mut v, ws.index(&[g, h]), &self.quad[(e, g * nn + h)]);
                }
                add_term(&mut v, ws.index(&[g]), &self.lin[(e, g)]);
            }
            out.push(v);
        }
        out
    }
}

/// Relation set with the rearranged-form verification: the relations in the
/// shape L_1bar L_2bar - R^{-1} L_1bar L_2bar R = L_1 R - R L_1 span exactly
/// the same space.
pub fn relation_set(braiding: &Braiding, hbar: &Scalar) -> Result<RelationSet> {
    let rels = raw_relation_set(braiding, hbar);
    let n = braiding.dim();
    let nn = n * n;
    let rp = braiding.matrix().transpose();
    let rp_inv = braiding.r_inverse().transpose();
    let frames: Vec<Matrix> = (0..nn).map(|g| gen_frame(n, g)).collect();

    // the rearranged form only matches the quadratic-linear shape at hbar = 1
    if rels.hbar.is_one() {
        let mut alt = Vec::with_capacity(nn * nn);
        let mut quad_words: Vec<Vec<(usize, Matrix)>> = Vec::new();
        for g in 0..nn {
            let bpart = &(&rp * &frames[g]) * &rp_inv;
            quad_words.push(vec![(g, bpart)]);
        }
        for _ in 0..nn * nn {
            alt.push(SparseVec::new());
        }
        let ws = WordSpace::new(nn, 2);
        for g in 0..nn {
            for h in 0..nn {
                let x = &frames[g] * &quad_words[h][0].1;
                let m = &x - &(&(&rp_inv * &x) * &rp);
                for e in 0..nn * nn {
                    let v = &m[(e / nn, e % nn)];
                    add_term(&mut alt[e], ws.index(&[g, h]), v);
                }
            }
            let l = &(&frames[g] * &rp) - &(&rp * &frames[g]);
            for e in 0..nn * nn {
                let v = &l[(e / nn, e % nn)];
                add_term(&mut alt[e], ws.index(&[g]), &-v);
            }
        }
        let base = rels.word_vectors(&ws);
        if !spans_equal(&base, &alt) {
            return Err(Error::Internal(
                "rearranged relation form does not span the defining relations".into(),
            ));
        }
    }
    Ok(rels)
}

/// A representation of the algebra by one carrier matrix per generator.
#[derive(Clone, Debug)]
pub struct GeneratorRep {
    pub dim: usize,
    /// images[g] for g = i*N + j.
    pub images: Vec<Matrix>,
    /// Scalar of rho(ell) when rho(ell) = chi * I.
    pub chi: Option<Scalar>,
    /// Set only by the categorical constructions in this module.
    pub equivariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepJson {
    pub carrier_dim: usize,
    pub images: Vec<Vec<Vec<String>>>,
    pub chi: Option<String>,
}

impl GeneratorRep {
    pub fn n(&self) -> usize {
        (self.images.len() as f64).sqrt() as usize
    }

    /// rho(ell) = sum C_j^i rho(l_i^j); with the stored C this is
    /// sum_{a,b} C[(a,b)] rho(l_{(a,b)}).
    pub fn ell_image(&self, c: &Matrix) -> Matrix {
        let n = c.rows();
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for a in 0..n {
            for b in 0..n {
                let w = &c[(a, b)];
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &self.images[a * n + b].scale(w);
            }
        }
        acc
    }

    pub fn compute_chi(&mut self, c: &Matrix) {
        self.chi = self.ell_image(c).as_scalar_multiple_of_identity();
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            carrier_dim: self.dim,
            images: self
                .images
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect())
                        .collect()
                })
                .collect(),
            chi: self.chi.as_ref().map(|c| c.to_string()),
        }
    }
}

/// First failing relation under substitution, if any.
#[derive(Clone, Debug)]
pub struct RepWitness {
    pub relation: usize,
    pub entry: (usize, usize),
    pub value: Scalar,
}

impl std::fmt::Display for RepWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "relation {} at entry ({},{}) evaluates to {}",
            self.relation, self.entry.0, self.entry.1, self.value
        )
    }
}

/// Substitute the images into every relation; `None` means all N^4 relations
/// vanish exactly.
pub fn check_representation(rep: &GeneratorRep, rels: &RelationSet) -> Option<RepWitness> {
    let nn = rels.n * rels.n;
    let d = rep.dim;
    assert_eq!(rep.images.len(), nn, "generator count mismatch");
    // precompute pair products
    let mut products: Vec<Option<Matrix>> = vec![None; nn * nn];
    for e in 0..nn * nn {
        let mut acc = Matrix::zeros(d, d);
        for g in 0..nn {
            for h in 0..nn {
                let c = &rels.quad[(e, g * nn + h)];
                if c.is_zero() {
                    continue;
                }
                let p = products[g * nn + h]
                    .get_or_insert_with(|| &rep.images[g] * &rep.images[h]);
                acc = &acc + &p.scale(c);
            }
            let c = &rels.lin[(e, g)];
            if !c.is_zero() {
                acc = &acc + &rep.images[g].scale(c);
            }
        }
        if !acc.is_zero() {
            for r in 0..d {
                for c in 0..d {
                    if !acc[(r, c)].is_zero() {
                        return Some(RepWitness {
                            relation: e,
                            entry: (r, c),
                            value: acc[(r, c)].clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn ensure_representation(rep: &GeneratorRep, rels: &RelationSet) -> Result<()> {
    match check_representation(rep, rels) {
        None => Ok(()),
        Some(w) => Err(Error::BadRepresentation(w.to_string())),
    }
}

/// The basic vector representation rho_1(l_i^j) x_k = x_i B_k^j on V.
pub fn vector_rep(
    braiding: &Braiding,
    skew: &crate::braiding::SkewInverseData,
) -> Result<GeneratorRep> {
    let n = braiding.dim();
    crate::braiding::b_inverse(skew)?; // invertibility is a precondition
    let mut images = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(n, n);
            for k in 0..n {
                m.set(i, k, skew.b[(j, k)].clone());
            }
            images.push(m);
        }
    }
    let mut rep = GeneratorRep { dim: n, images, chi: None, equivariant: true };
    rep.compute_chi(&skew.c);
    ensure_representation(&rep, &raw_relation_set(braiding, &Scalar::one()))?;
    if rep.chi.is_none() {
        return Err(Error::Internal("rho_1(ell) is not scalar".into()));
    }
    Ok(rep)
}

/// The basic covector representation rho_1*(l_i^j) x^k = -x^r R_{ri}^{kj} on V*.
pub fn covector_rep(
    braiding: &Braiding,
    skew: &crate::braiding::SkewInverseData,
) -> Result<GeneratorRep> {
    let n = braiding.dim();
    let r = braiding.matrix();
    let mut images = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(n, n);
            for row in 0..n {
                for k in 0..n {
                    m.set(row, k, -&r[(k * n + j, row * n + i)]);
                }
            }
            images.push(m);
        }
    }
    let mut rep = GeneratorRep { dim: n, images, chi: None, equivariant: true };
    rep.compute_chi(&skew.c);
    ensure_representation(&rep, &raw_relation_set(braiding, &Scalar::one()))?;
    if rep.chi.is_none() {
        return Err(Error::Internal("rho_1*(ell) is not scalar".into()));
    }
    Ok(rep)
}

/// One summand of Delta(l_g), with `None` marking the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub coeff: Scalar,
}

/// The braided coproduct and counit on generators.
#[derive(Clone, Debug)]
pub struct BialgebraMaps {
    pub n: usize,
    pub omega: Scalar,
    /// delta[g]: Delta(l_g) = l_g ⊗ e + e ⊗ l_g - omega sum_k l_{(g1,k)} ⊗ l_{(k,g2)}.
    pub delta: Vec<Vec<DeltaTerm>>,
}

pub fn bialgebra_maps(braiding: &Braiding) -> BialgebraMaps {
    let n = braiding.dim();
    let omega = braiding.omega();
    let mut delta = Vec::with_capacity(n * n);
    for g in 0..n * n {
        let (g1, g2) = (g / n, g % n);
        let mut terms = vec![
            DeltaTerm { left: Some(g), right: None, coeff: Scalar::one() },
            DeltaTerm { left: None, right: Some(g), coeff: Scalar::one() },
        ];
        if !omega.is_zero() {
            for k in 0..n {
                terms.push(DeltaTerm {
                    left: Some(g1 * n + k),
                    right: Some(k * n + g2),
                    coeff: -&omega,
                });
            }
        }
        delta.push(terms);
    }
    BialgebraMaps { n, omega, delta }
}

impl BialgebraMaps {
    /// (id ⊗ eps) Delta = id = (eps ⊗ id) Delta on generators, checked on
    /// coefficients: eps kills every generator slot and fixes the unit.
    pub fn counit_laws_hold(&self) -> bool {
        let nn = self.n * self.n;
        for g in 0..nn {
            let mut right_collapsed = vec![Scalar::zero(); nn];
            let mut left_collapsed = vec![Scalar::zero(); nn];
            for t in &self.delta[g] {
                match (t.left, t.right) {
                    (Some(l), None) => {
                        right_collapsed[l] = &right_collapsed[l] + &t.coeff;
                    }
                    (None, Some(r)) => {
                        left_collapsed[r] = &left_collapsed[r] + &t.coeff;
                    }
                    _ => {}
                }
            }
            for h in 0..nn {
                let expect = if h == g { Scalar::one() } else { Scalar::zero() };
                if right_collapsed[h] != expect || left_collapsed[h] != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Tensor product of equivariant representations through the coproduct:
/// rho_{U⊗W}(Delta(l_g)), where moving an algebra leg past the carrier U uses
/// the categorical braiding `braid_u` = R_{End(V),U} (an N^2 dU square matrix
/// with input (generator, U) and output (U, generator) composite indices).
pub fn tensor_rep(
    rep_u: &GeneratorRep,
    rep_w: &GeneratorRep,
    braiding: &Braiding,
    braid_u: &Matrix,
) -> Result<GeneratorRep> {
    if !rep_u.equivariant || !rep_w.equivariant {
        return Err(Error::NotEquivariant);
    }
    let n = braiding.dim();
    let nn = n * n;
    let (du, dw) = (rep_u.dim, rep_w.dim);
    if braid_u.rows() != nn * du || braid_u.cols() != nn * du {
        return Err(Error::Dimension(format!(
            "braiding past U must be {} x {}, got {} x {}",
            nn * du,
            nn * du,
            braid_u.rows(),
            braid_u.cols()
        )));
    }
    let dim = du * dw;
    let id_w = Matrix::identity(dw);
    let omega = braiding.omega();

    // twisted second-slot action: M_h = Op(e ⊗ l_h)
    let twist = |h: usize| -> Matrix {
        let mut m = Matrix::zeros(dim, dim);
        for u0 in 0..du {
            for up in 0..du {
                for f in 0..nn {
                    let t = &braid_u[(up * nn + f, h * du + u0)];
                    if t.is_zero() {
                        continue;
                    }
                    let img = &rep_w.images[f];
                    for w1 in 0..dw {
                        for w0 in 0..dw {
                            let v = &img[(w1, w0)];
                            if v.is_zero() {
                                continue;
                            }
                            let cur = &m[(up * dw + w1, u0 * dw + w0)] + &(t * v);
                            m.set(up * dw + w1, u0 * dw + w0, cur);
                        }
                    }
                }
            }
        }
        m
    };

    let twists: Vec<Matrix> = (0..nn).map(twist).collect();
    let mut images = Vec::with_capacity(nn);
    for g in 0..nn {
        let (g1, g2) = (g / n, g % n);
        let mut acc = &rep_u.images[g].kron(&id_w) + &twists[g];
        if !omega.is_zero() {
            for k in 0..n {
                let cross = &rep_u.images[g1 * n + k].kron(&id_w) * &twists[k * n + g2];
                acc = &acc - &cross.scale(&omega);
            }
        }
        images.push(acc);
    }

    let rep = GeneratorRep { dim, images, chi: None, equivariant: true };
    ensure_representation(&rep, &raw_relation_set(braiding, &Scalar::one()))?;
    Ok(rep)
}

/// Convenience: the representation on V^k obtained by iterating the tensor
/// product of the vector representation with itself.
pub fn power_rep(
    braiding: &Braiding,
    ext: &ExtendedBraiding,
    rho1: &GeneratorRep,
    k: usize,
) -> Result<GeneratorRep> {
    use crate::braiding::Factor;
    assert!(k >= 1);
    let mut acc = rho1.clone();
    let mut factors = vec![Factor::V];
    for _ in 1..k {
        let braid = ext.braid_end_past(&factors)?;
        acc = tensor_rep(&acc, rho1, braiding, &braid)?;
        factors.push(Factor::V);
    }
    Ok(acc)
}

/// Restriction rho_{lambda,a} = E^lambda_a ∘ rho_k to the image of a bank
/// projector, realized in an exact basis of that image.
pub fn restrict_rep(
    rep: &GeneratorRep,
    projector: &Matrix,
    braiding: &Braiding,
    skew: &crate::braiding::SkewInverseData,
) -> Result<GeneratorRep> {
    if projector.rows() != rep.dim {
        return Err(Error::Dimension("projector does not act on the carrier".into()));
    }
    for (g, img) in rep.images.iter().enumerate() {
        if &(projector * img) != &(img * projector) {
            return Err(Error::BadRepresentation(format!(
                "projector does not commute with the image of generator {}",
                g
            )));
        }
    }
    let basis = column_space_basis(projector)
        .ok_or_else(|| Error::Dimension("restriction to a zero projector".into()))?;
    let r = basis.cols();
    let mut images = Vec::with_capacity(rep.images.len());
    for img in &rep.images {
        let rhs = img * &basis;
        match solve_linear(&basis, &rhs)? {
            Solve::Unique(x) => images.push(x),
            _ => {
                return Err(Error::Internal(
                    "image basis did not determine the restricted action".into(),
                ))
            }
        }
    }
    let mut rep_out = GeneratorRep { dim: r, images, chi: None, equivariant: true };
    rep_out.compute_chi(&skew.c);
    ensure_representation(&rep_out, &raw_relation_set(braiding, &Scalar::one()))?;
    Ok(rep_out)
}

/// Dimensions of the degree filtration of the presented algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredDims {
    pub max_degree: usize,
    pub dims: Vec<usize>,
}

pub fn filtered_dimension(rels: &RelationSet, d: usize, cap: usize) -> Result<FilteredDims> {
    if d > cap {
        return Err(Error::DegreeCap(format!("degree {} exceeds cap {}", d, cap)));
    }
    let nn = rels.n * rels.n;
    let ws = WordSpace::new(nn, d);
    let vectors = rels.word_vectors(&ws);
    let dims = filtered_quotient_dims(&ws, &vectors);
    Ok(FilteredDims { max_degree: d, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{build_symmetry, extend_to_dual, skew_package, BraidingSpec, Factor};
    use crate::scalar::{int, parse_scalar};

    fn flip(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::Flip { n }).unwrap()
    }

    fn standard(n: usize) -> Braiding {
        build_symmetry(&BraidingSpec::StandardASeries { n }).unwrap()
    }

    #[test]
    fn classical_relations_are_gl2_commutators() {
        // for the flip at hbar = 1 the relation span must contain
        // l_i^j l_k^m - l_k^m l_i^j - delta_{kj} l_i^m + delta_{im} l_k^j
        let b = flip(2);
        let rels = relation_set(&b, &Scalar::one()).unwrap();
        let nn = 4;
        let ws = WordSpace::new(nn, 2);
        let base = rels.word_vectors(&ws);
        let mut commutators = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for m in 0..2 {
                        let g = i * 2 + j;
                        let h = k * 2 + m;
                        let mut v = SparseVec::new();
                        add_term(&mut v, ws.index(&[g, h]), &Scalar::one());
                        add_term(&mut v, ws.index(&[h, g]), &Scalar::from_int(-1));
                        if j == k {
                            add_term(&mut v, ws.index(&[i * 2 + m]), &Scalar::from_int(-1));
                        }
                        if i == m {
                            add_term(&mut v, ws.index(&[k * 2 + j]), &Scalar::one());
                        }
                        commutators.push(v);
                    }
                }
            }
        }
        assert!(spans_equal(&base, &commutators));
    }

    #[test]
    fn hbar_zero_is_homogeneous_with_same_span_dimension() {
        let b = standard(2);
        let ws = WordSpace::new(4, 2);
        let r1 = relation_set(&b, &Scalar::one()).unwrap();
        let r0 = relation_set(&b, &Scalar::zero()).unwrap();
        assert!(r0.lin.is_zero());
        let rank1 = crate::symbolic::span_rank(r1.word_vectors(&ws));
        let rank0 = crate::symbolic::span_rank(r0.word_vectors(&ws));
        assert_eq!(rank1, rank0);
    }

    #[test]
    fn vector_rep_flip_is_matrix_units() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let rep = vector_rep(&b, &skew).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let img = &rep.images[i * 2 + j];
                for r in 0..2 {
                    for c in 0..2 {
                        let expect = if r == i && c == j { Scalar::one() } else { Scalar::zero() };
                        assert_eq!(img[(r, c)], expect);
                    }
                }
            }
        }
        assert_eq!(rep.chi, Some(Scalar::one()));
    }

    #[test]
    fn vector_rep_chi_is_q_power() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let rep = vector_rep(&b, &skew).unwrap();
        assert_eq!(rep.chi, Some(Scalar::q_pow(-2 * skew.a)));
    }

    #[test]
    fn covector_rep_flip_is_negative_transpose() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let rep = covector_rep(&b, &skew).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let img = &rep.images[i * 2 + j];
                for r in 0..2 {
                    for c in 0..2 {
                        let expect =
                            if r == j && c == i { Scalar::from_int(-1) } else { Scalar::zero() };
                        assert_eq!(img[(r, c)], expect);
                    }
                }
            }
        }
        assert_eq!(rep.chi, Some(Scalar::from_int(-1)));
    }

    #[test]
    fn perturbed_rep_yields_witness() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let mut rep = vector_rep(&b, &skew).unwrap();
        let mut m = rep.images[1].clone();
        m.set(0, 0, &m[(0, 0)] + &Scalar::one());
        rep.images[1] = m;
        let rels = relation_set(&b, &Scalar::one()).unwrap();
        assert!(check_representation(&rep, &rels).is_some());
    }

    #[test]
    fn zero_images_pass_at_any_hbar() {
        let b = standard(2);
        let rels = relation_set(&b, &Scalar::one()).unwrap();
        let rep = GeneratorRep {
            dim: 2,
            images: vec![Matrix::zeros(2, 2); 4],
            chi: None,
            equivariant: false,
        };
        assert!(check_representation(&rep, &rels).is_none());
    }

    #[test]
    fn delta_counit_and_term_counts() {
        let b = standard(2);
        let maps = bialgebra_maps(&b);
        assert!(maps.counit_laws_hold());
        // N = 2: 2 primitive + N cross terms with coefficient -(q - q^{-1})
        let g12 = &maps.delta[1];
        assert_eq!(g12.len(), 2 + 2);
        let mw = -&(&Scalar::q() - &Scalar::q_pow(-1));
        for t in &g12[2..] {
            assert_eq!(t.coeff, mw);
        }
        // involutive case: primitive coproduct
        let maps_flip = bialgebra_maps(&flip(2));
        assert!(maps_flip.delta.iter().all(|ts| ts.len() == 2));
        assert!(maps_flip.counit_laws_hold());
    }

    #[test]
    fn tensor_rep_requires_equivariance_tag() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let mut rho1 = vector_rep(&b, &skew).unwrap();
        let braid = ext.braid_end_past(&[Factor::V]).unwrap();
        rho1.equivariant = false;
        assert!(matches!(
            tensor_rep(&rho1, &rho1, &b, &braid),
            Err(Error::NotEquivariant)
        ));
    }

    #[test]
    fn tensor_rep_vv_passes_for_fleet() {
        for b in [flip(2), standard(2)] {
            let skew = skew_package(&b).unwrap();
            let ext = extend_to_dual(&b, &skew).unwrap();
            let rho1 = vector_rep(&b, &skew).unwrap();
            let braid = ext.braid_end_past(&[Factor::V]).unwrap();
            let mut vv = tensor_rep(&rho1, &rho1, &b, &braid).unwrap();
            vv.compute_chi(&skew.c);
            assert!(vv.chi.is_some());
        }
    }

    #[test]
    fn classical_tensor_rep_is_primitive_sum() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let rho1 = vector_rep(&b, &skew).unwrap();
        let braid = ext.braid_end_past(&[Factor::V]).unwrap();
        let vv = tensor_rep(&rho1, &rho1, &b, &braid).unwrap();
        let id2 = Matrix::identity(2);
        for g in 0..4 {
            let expect = &rho1.images[g].kron(&id2) + &id2.kron(&rho1.images[g]);
            assert_eq!(vv.images[g], expect);
        }
    }

    #[test]
    fn restriction_dims_and_relations() {
        let b = standard(2);
        let skew = skew_package(&b).unwrap();
        let ext = extend_to_dual(&b, &skew).unwrap();
        let rho1 = vector_rep(&b, &skew).unwrap();
        let rho2 = power_rep(&b, &ext, &rho1, 2).unwrap();
        let bank = crate::schur_weyl::young_projectors(&b, 2).unwrap();
        let sym = restrict_rep(&rho2, &bank.entries[0].projector, &b, &skew).unwrap();
        assert_eq!(sym.dim, 3);
        let asym = restrict_rep(&rho2, &bank.entries[1].projector, &b, &skew).unwrap();
        assert_eq!(asym.dim, 1);
        // one-dimensional restriction: generator images are scalars
        assert!(asym.images.iter().all(|m| m.rows() == 1));
        assert_eq!(sym.dim + asym.dim, 4);
    }

    #[test]
    fn filtered_dims_classical_counts() {
        let b = flip(2);
        let rels = relation_set(&b, &Scalar::one()).unwrap();
        let out = filtered_dimension(&rels, 3, DEFAULT_FILTRATION_CAP).unwrap();
        assert_eq!(out.dims, vec![1, 5, 15, 35]);
        assert!(filtered_dimension(&rels, 4, DEFAULT_FILTRATION_CAP).is_err());
    }

    #[test]
    fn evaluate_rep_serialization() {
        let b = flip(2);
        let skew = skew_package(&b).unwrap();
        let rep = vector_rep(&b, &skew).unwrap();
        let json = serde_json::to_value(rep.to_json()).unwrap();
        assert_eq!(json["carrier_dim"], 2);
        assert_eq!(json["images"][0][0][0], "1");
        let parsed = parse_scalar(json["chi"].as_str().unwrap()).unwrap();
        assert_eq!(parsed.eval_at(&int(1)).unwrap(), int(1));
    }
}
