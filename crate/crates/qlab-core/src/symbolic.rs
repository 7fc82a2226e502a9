//! Bounded-degree linear algebra in a free associative algebra.
//!
//! Elements of degree <= d over n generators are sparse vectors indexed by
//! words; the index order is degree-major (all shorter words first, lex
//! within a length), so the leading term of a vector is its highest-degree
//! word. A triangular `Echelon` of such vectors supports exact span
//! membership, rank and the iterative ideal-closure used for filtered
//! dimension counts: whenever reduction cancels a vector down to a lower
//! degree, the closure multiplies it by generators on both sides and feeds
//! the products back in, until nothing new appears below the cap.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Words of length <= max_deg over n_gen symbols, with a dense index space.
#[derive(Clone, Debug)]
pub struct WordSpace {
    pub n_gen: usize,
    pub max_deg: usize,
    offsets: Vec<usize>,
}

impl WordSpace {
    pub fn new(n_gen: usize, max_deg: usize) -> Self {
        let mut offsets = vec![0usize];
        let mut pow = 1usize;
        for _ in 0..=max_deg {
            offsets.push(offsets.last().unwrap() + pow);
            pow *= n_gen;
        }
        WordSpace { n_gen, max_deg, offsets }
    }

    pub fn dim(&self) -> usize {
        self.offsets[self.max_deg + 1]
    }

    /// Cumulative dimension of words of length <= m.
    pub fn dim_upto(&self, m: usize) -> usize {
        self.offsets[m + 1]
    }

    pub fn index(&self, word: &[usize]) -> usize {
        assert!(word.len() <= self.max_deg);
        let mut idx = 0usize;
        for &g in word {
            debug_assert!(g < self.n_gen);
            idx = idx * self.n_gen + g;
        }
        self.offsets[word.len()] + idx
    }

    pub fn word(&self, index: usize) -> Vec<usize> {
        let len = (0..=self.max_deg)
            .find(|&l| index < self.offsets[l + 1])
            .expect("index in range");
        let mut rest = index - self.offsets[len];
        let mut word = vec![0usize; len];
        for slot in (0..len).rev() {
            word[slot] = rest % self.n_gen;
            rest /= self.n_gen;
        }
        word
    }

    pub fn degree_of(&self, index: usize) -> usize {
        (0..=self.max_deg).find(|&l| index < self.offsets[l + 1]).expect("index in range")
    }
}

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn add_term(v: &mut SparseVec, idx: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&idx) {
        Some(cur) => {
            let next = &*cur + c;
            if next.is_zero() {
                v.remove(&idx);
            } else {
                *cur = next;
            }
        }
        None => {
            v.insert(idx, c.clone());
        }
    }
}

pub fn axpy(target: &mut SparseVec, coeff: &Scalar, src: &SparseVec) {
    for (idx, c) in src {
        add_term(target, *idx, &(coeff * c));
    }
}

/// Multiply a vector by a generator on the left or right; every term grows
/// one letter, so the vector's top degree must be below the cap.
pub fn gen_mul(ws: &WordSpace, v: &SparseVec, g: usize, on_left: bool) -> SparseVec {
    let mut out = SparseVec::new();
    for (idx, c) in v {
        let mut w = ws.word(*idx);
        if on_left {
            w.insert(0, g);
        } else {
            w.push(g);
        }
        add_term(&mut out, ws.index(&w), c);
    }
    out
}

/// Triangular family of vectors with distinct leading (maximal) indices.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Fully reduce `v` against the stored pivots.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let Some((lead, coeff)) = v.iter().next_back().map(|(i, c)| (*i, c.clone())) else {
                return v;
            };
            match self.pivots.get(&lead) {
                None => return v,
                Some(p) => {
                    let factor = -&(&coeff / &p[&lead]);
                    axpy(&mut v, &factor, p);
                    debug_assert!(!v.contains_key(&lead));
                }
            }
        }
    }

    /// Reduce and, when nonzero, store as a new pivot. Returns the reduced
    /// vector's leading index.
    pub fn insert(&mut self, v: SparseVec) -> Option<(usize, SparseVec)> {
        let reduced = self.reduce(v);
        let (&lead, _) = reduced.iter().next_back()?;
        self.pivots.insert(lead, reduced.clone());
        Some((lead, reduced))
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// dim span(vs) via echelon rank.
pub fn span_rank(vs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v);
    }
    ech.rank()
}

/// Exact mutual containment of two spans.
pub fn spans_equal(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let mut ea = Echelon::new();
    for v in a {
        ea.insert(v.clone());
    }
    let mut eb = Echelon::new();
    for v in b {
        eb.insert(v.clone());
    }
    a.iter().all(|v| eb.reduce(v.clone()).is_empty())
        && b.iter().all(|v| ea.reduce(v.clone()).is_empty())
}

/// Dimensions of the degree filtration of the quotient by the two-sided
/// ideal generated by `relations` (vectors in `ws`), for m = 0..=max_deg.
///
/// Seeds the closure with every placement u * r * v that fits under the cap,
/// then iterates: any pivot whose reduced leading degree leaves room is
/// multiplied by all generators on both sides and re-inserted, until stable.
pub fn filtered_quotient_dims(ws: &WordSpace, relations: &[SparseVec]) -> Vec<usize> {
    let d = ws.max_deg;
    let mut ech = Echelon::new();
    let mut queue: Vec<SparseVec> = Vec::new();

    // all placements: degree of u r v is |u| + deg(r) + |v| with deg(r) <= 2
    let mut placements: Vec<SparseVec> = relations.to_vec();
    for _ in 0..d.saturating_sub(2) {
        let mut next = Vec::new();
        for v in &placements {
            let top = v.iter().next_back().map(|(i, _)| ws.degree_of(*i)).unwrap_or(0);
            if top < d {
                for g in 0..ws.n_gen {
                    next.push(gen_mul(ws, v, g, true));
                    next.push(gen_mul(ws, v, g, false));
                }
            }
        }
        queue.extend(placements.iter().cloned());
        placements = next;
    }
    queue.extend(placements);

    while let Some(v) = queue.pop() {
        if let Some((lead, reduced)) = ech.insert(v) {
            if ws.degree_of(lead) < d {
                for g in 0..ws.n_gen {
                    queue.push(gen_mul(ws, &reduced, g, true));
                    queue.push(gen_mul(ws, &reduced, g, false));
                }
            }
        }
    }

    (0..=d)
        .map(|m| {
            let cut = ws.dim_upto(m);
            let ideal_dim = ech.pivot_indices().filter(|&i| i < cut).count();
            cut - ideal_dim
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(ws: &WordSpace, terms: &[(&[usize], i64)]) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in terms {
            add_term(&mut v, ws.index(w), &Scalar::from_int(*c));
        }
        v
    }

    #[test]
    fn word_index_round_trip() {
        let ws = WordSpace::new(3, 3);
        for idx in 0..ws.dim() {
            assert_eq!(ws.index(&ws.word(idx)), idx);
        }
        assert_eq!(ws.dim(), 1 + 3 + 9 + 27);
    }

    #[test]
    fn commutative_polynomial_ring_dims() {
        // two generators, relation xy - yx: quotient is k[x,y]
        let ws = WordSpace::new(2, 3);
        let rel = sv(&ws, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let dims = filtered_quotient_dims(&ws, &[rel]);
        assert_eq!(dims, vec![1, 3, 6, 10]);
    }

    #[test]
    fn grassmann_algebra_dims() {
        // exterior algebra on two generators
        let ws = WordSpace::new(2, 3);
        let rels = vec![
            sv(&ws, &[(&[0, 0], 1)]),
            sv(&ws, &[(&[1, 1], 1)]),
            sv(&ws, &[(&[0, 1], 1), (&[1, 0], 1)]),
        ];
        let dims = filtered_quotient_dims(&ws, &rels);
        assert_eq!(dims, vec![1, 3, 4, 4]);
    }

    #[test]
    fn heisenberg_type_cancellation() {
        // xy - yx - 1: degree-2 relation with a constant term; the closure
        // must discover that x(xy - yx - 1) and (xy - yx - 1)x force the
        // expected filtration of the Weyl algebra
        let ws = WordSpace::new(2, 3);
        let rel = sv(&ws, &[(&[0, 1], 1), (&[1, 0], -1), (&[], -1)]);
        let dims = filtered_quotient_dims(&ws, &[rel]);
        assert_eq!(dims, vec![1, 3, 6, 10]);
    }

    #[test]
    fn span_equality_detects_difference() {
        let ws = WordSpace::new(2, 2);
        let a = vec![sv(&ws, &[(&[0, 1], 1), (&[1, 0], -1)])];
        let b = vec![sv(&ws, &[(&[0, 1], 2), (&[1, 0], -2)])];
        let c = vec![sv(&ws, &[(&[0, 1], 1)])];
        assert!(spans_equal(&a, &b));
        assert!(!spans_equal(&a, &c));
    }
}
