//! Torus-equivariant Chow rings of representations and their weighted
//! projectivizations, built from integer character tables.
//!
//! For a split torus `T` of rank `r`, `CH(BT) = Z[T0, …, T(r-1)]` with every
//! generator in degree 1. A coordinate on which `T` acts by the character
//! `(m_0, …, m_(r-1))` has first Chern class `Σ m_j T_j`. Removing the origin
//! of a representation kills the top Chern class, the product of these forms;
//! quotienting further by a `Gm` acting with weights `w_i` adds a generator
//! `h` and replaces each form `p_i` by `w_i h + p_i`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{GradedIdeal, QuotientFactors};
use crate::poly::{Monomial, PolyRing, Polynomial, RingMap};

/// Name of the `Gm`-torsor class in projectivized presentations.
pub const TORSOR_CLASS: &str = "h";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(g: u32) -> Self {
        if g.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub label: String,
    pub weights: Vec<i64>,
}

/// One character per coordinate of a torus representation.
///
/// A rank-0 table (every row empty) describes a trivial torus; its forms are
/// all zero and its rings have no torus generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    torus_rank: usize,
    rows: Vec<WeightRow>,
}

impl WeightMatrix {
    pub fn new<S: Into<String>>(
        torus_rank: usize,
        rows: impl IntoIterator<Item = (S, Vec<i64>)>,
    ) -> Result<Self> {
        let rows: Vec<WeightRow> =
            rows.into_iter().map(|(l, w)| WeightRow { label: l.into(), weights: w }).collect();
        for (i, row) in rows.iter().enumerate() {
            if row.weights.len() != torus_rank {
                return Err(Error::InvalidWeights(format!(
                    "row `{}` has {} weights, torus rank is {torus_rank}",
                    row.label,
                    row.weights.len()
                )));
            }
            if rows[..i].iter().any(|r| r.label == row.label) {
                return Err(Error::InvalidWeights(format!("duplicate label `{}`", row.label)));
            }
        }
        Ok(WeightMatrix { torus_rank, rows })
    }

    /// Rows labelled `x0, x1, …`.
    pub fn unlabelled(torus_rank: usize, rows: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        Self::new(torus_rank, rows.into_iter().enumerate().map(|(i, w)| (format!("x{i}"), w)))
    }

    /// `n` coordinates of a trivial torus.
    pub fn trivial(n: usize) -> Self {
        Self::unlabelled(0, (0..n).map(|_| Vec::new())).expect("rank-0 rows")
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn rows(&self) -> &[WeightRow] {
        &self.rows
    }

    pub fn row(&self, label: &str) -> Option<&WeightRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The first Chern class of row `i`, in `torus_ring(torus_rank)`.
    pub fn chern_form(&self, i: usize) -> Polynomial {
        chern_form(&torus_ring(self.torus_rank), &self.rows[i].weights)
    }

    /// Drops the row with the given label.
    pub fn without(&self, label: &str) -> Self {
        WeightMatrix {
            torus_rank: self.torus_rank,
            rows: self.rows.iter().filter(|r| r.label != label).cloned().collect(),
        }
    }
}

/// `Z[T0, …, T(r-1)]`, all generators of degree 1. `r = 0` gives `Z`.
pub fn torus_ring(r: usize) -> Arc<PolyRing> {
    PolyRing::new((0..r).map(|j| (format!("T{j}"), 1))).expect("valid torus ring")
}

/// `Σ_j weights_j · T_j` in a ring whose first `weights.len()` variables are
/// the torus generators.
pub fn chern_form(ring: &Arc<PolyRing>, weights: &[i64]) -> Polynomial {
    let n = ring.len();
    let mut f = Polynomial::zero(ring);
    for (j, &w) in weights.iter().enumerate() {
        let mut e = vec![0; n];
        e[j] = 1;
        f = f.add(&Polynomial::monomial(ring, w, Monomial(e))).expect("same ring");
    }
    f
}

/// A graded ring `Z[vars] / relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub ring: Arc<PolyRing>,
    pub relations: GradedIdeal,
}

impl Presentation {
    pub fn new(relations: GradedIdeal) -> Self {
        Presentation { ring: relations.ring().clone(), relations }
    }

    /// Structure of the degree-`d` graded piece.
    pub fn graded_piece(&self, d: u32) -> QuotientFactors {
        self.relations.invariant_factors(d)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.generator_strings()
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars: Vec<&str> = self.ring.variables().iter().map(|v| v.name.as_str()).collect();
        write!(f, "Z[{}]", vars.join(", "))?;
        if !self.relations.generators().is_empty() {
            write!(f, "/({})", self.relations.generator_strings().join(", "))?;
        }
        Ok(())
    }
}

/// The Chow ring of the classifying stack of a rank-`r` split torus.
pub fn chow_bt(r: usize) -> Result<Presentation> {
    if r == 0 {
        return Err(Error::InvalidRank);
    }
    Ok(Presentation::new(GradedIdeal::zero(&torus_ring(r))))
}

/// Equivariant Chow ring of the representation minus its origin:
/// `CH(BT) / (Π_i p_i)`.
pub fn punctured_rep_presentation(w: &WeightMatrix) -> Result<Presentation> {
    if w.is_empty() {
        return Err(Error::InvalidWeights("empty weight matrix".into()));
    }
    let ring = torus_ring(w.torus_rank);
    let mut rel = Polynomial::one(&ring);
    for row in &w.rows {
        rel = rel.mul(&chern_form(&ring, &row.weights))?;
    }
    Ok(Presentation::new(GradedIdeal::new(&ring, [rel])?))
}

/// Chow ring of the weighted projectivization by a `Gm` acting with
/// `gm_weights`: `Z[T.., h] / (Π_i (w_i h + p_i))`.
pub fn weighted_proj_presentation(w: &WeightMatrix, gm_weights: &[u32]) -> Result<Presentation> {
    if w.is_empty() {
        return Err(Error::InvalidWeights("empty weight matrix".into()));
    }
    if gm_weights.len() != w.len() {
        return Err(Error::InvalidGmWeights(format!(
            "{} weights for {} coordinates",
            gm_weights.len(),
            w.len()
        )));
    }
    if gm_weights.contains(&0) {
        return Err(Error::InvalidGmWeights("weights must be positive".into()));
    }
    let ring = projective_ring(w.torus_rank);
    let h = Polynomial::var(&ring, TORSOR_CLASS)?;
    let mut rel = Polynomial::one(&ring);
    for (row, &gw) in w.rows.iter().zip(gm_weights) {
        let factor = h.scale(&BigInt::from(gw)).add(&chern_form(&ring, &row.weights))?;
        rel = rel.mul(&factor)?;
    }
    Ok(Presentation::new(GradedIdeal::new(&ring, [rel])?))
}

fn projective_ring(r: usize) -> Arc<PolyRing> {
    PolyRing::new((0..r).map(|j| (format!("T{j}"), 1)).chain([(TORSOR_CLASS.to_string(), 1)]))
        .expect("valid projective ring")
}

/// Sets the torsor class `h` (the last variable) to zero.
pub fn specialize_h_zero(f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let vars = ring.variables();
    match vars.last() {
        Some(v) if v.name == TORSOR_CLASS => {}
        _ => return Err(Error::InvalidRing(format!("last variable is not `{TORSOR_CLASS}`"))),
    }
    let target = PolyRing::new(vars[..vars.len() - 1].iter().map(|v| (v.name.clone(), v.degree)))?;
    let images = vars
        .iter()
        .map(|v| {
            let img = if v.name == TORSOR_CLASS {
                Polynomial::zero(&target)
            } else {
                Polynomial::var(&target, &v.name).expect("kept variable")
            };
            (v.name.as_str(), img)
        })
        .collect::<Vec<_>>();
    RingMap::new(ring, &target, images)?.apply(f)
}

/// Characters of the maximal torus acting on the space of pairs `(f, s)`,
/// `f` a binary form of degree `N = 2g + 2` and `s` a scalar.
///
/// Row `a_i` is the coefficient of `x0^(N-i) x1^i`; the last row is `s`. Even
/// `g`: `(t0, t1)` acts by `f ↦ (t0 t1)^g f(x0/t0, x1/t1)` and
/// `s ↦ t0^(g/2) t1^(-(g+2)/2) s`. Odd `g`: `(α, ρ)` acts by
/// `f ↦ α^-2 ρ^(g+1) f(x0/ρ, x1)` and `s ↦ α^-1 ρ^((g+1)/2) s`.
pub fn action_weights(genus: u32) -> Result<WeightMatrix> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    let g = i64::from(genus);
    let n = 2 * g + 2;
    let parity = Parity::of(genus);
    let coeff = |i: i64| match parity {
        Parity::Even => vec![i - g - 2, g - i],
        Parity::Odd => vec![-2, i - g - 1],
    };
    let s = match parity {
        Parity::Even => vec![g / 2, -(g + 2) / 2],
        Parity::Odd => vec![-1, (g + 1) / 2],
    };
    let rows = (0..=n).map(|i| (format!("a{i}"), coeff(i))).chain([("s".to_string(), s)]);
    WeightMatrix::new(2, rows)
}

/// The table in the chart that forgets `a_N` (which equals `s²` on the
/// constrained locus): rows `a_0 … a_(N-1), s`.
pub fn chart_weights(g: u32) -> Result<WeightMatrix> {
    let full = action_weights(g)?;
    Ok(full.without(&format!("a{}", 2 * g + 2)))
}

/// `2·weight(s) = weight(a_N)`, forced by the constraint `f(0,1) = s²`.
pub fn weights_consistent(w: &WeightMatrix) -> bool {
    let n = w.len().saturating_sub(2);
    match (w.row(&format!("a{n}")), w.row("s")) {
        (Some(a), Some(s)) => s.weights.iter().map(|x| 2 * x).eq(a.weights.iter().copied()),
        _ => false,
    }
}

/// Weighted projectivization of the chart, with `Gm` weight 2 on every `a_i`
/// and weight 1 on `s`.
pub fn projectivized_presentation(g: u32) -> Result<Presentation> {
    let chart = chart_weights(g)?;
    let gm: Vec<u32> = chart.rows().iter().map(|r| if r.label == "s" { 1 } else { 2 }).collect();
    weighted_proj_presentation(&chart, &gm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: &Arc<PolyRing>) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn chow_bt_examples() {
        let one = chow_bt(1).unwrap();
        assert_eq!(one.ring.len(), 1);
        assert!(one.relations.generators().is_empty());
        assert_eq!(chow_bt(2).unwrap().graded_piece(3), QuotientFactors::new(4, []));
        assert_eq!(chow_bt(3).unwrap().graded_piece(2), QuotientFactors::new(6, []));
        assert_eq!(chow_bt(0), Err(Error::InvalidRank));
    }

    #[test]
    fn chern_form_examples() {
        let w = WeightMatrix::unlabelled(2, [vec![1, 0], vec![2, -4], vec![0, 0]]).unwrap();
        assert_eq!(w.chern_form(0).to_string(), "T0");
        assert_eq!(w.chern_form(1).to_string(), "2*T0 - 4*T1");
        assert!(w.chern_form(2).is_zero());
    }

    #[test]
    fn weight_matrix_validation() {
        assert!(WeightMatrix::unlabelled(2, [vec![1]]).is_err());
        assert!(WeightMatrix::new(1, [("a", vec![1]), ("a", vec![2])]).is_err());
    }

    #[test]
    fn punctured_examples() {
        let w = WeightMatrix::unlabelled(1, [vec![1], vec![1]]).unwrap();
        assert_eq!(punctured_rep_presentation(&w).unwrap().relation_strings(), ["T0^2"]);
        let w = WeightMatrix::unlabelled(1, [vec![2], vec![3]]).unwrap();
        assert_eq!(punctured_rep_presentation(&w).unwrap().relation_strings(), ["6*T0^2"]);
        let w = WeightMatrix::unlabelled(2, [vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(punctured_rep_presentation(&w).unwrap().relation_strings(), ["T0*T1"]);
        assert!(punctured_rep_presentation(&WeightMatrix::unlabelled(1, []).unwrap()).is_err());
    }

    #[test]
    fn weighted_proj_examples() {
        let pr = weighted_proj_presentation(&WeightMatrix::trivial(2), &[2, 1]).unwrap();
        assert_eq!(pr.to_string(), "Z[h]/(2*h^2)");
        let pr = weighted_proj_presentation(&WeightMatrix::trivial(5), &[2, 2, 2, 2, 1]).unwrap();
        assert_eq!(pr.relation_strings(), ["16*h^5"]);
        let pr = weighted_proj_presentation(&WeightMatrix::trivial(1), &[1]).unwrap();
        assert_eq!(pr.relation_strings(), ["h"]);
        let w = WeightMatrix::unlabelled(2, [vec![1, 0], vec![0, 1]]).unwrap();
        let pr = weighted_proj_presentation(&w, &[2, 1]).unwrap();
        assert_eq!(pr.relation_strings(), ["T0*T1 + T0*h + 2*T1*h + 2*h^2"]);
    }

    #[test]
    fn weighted_proj_errors() {
        let w = WeightMatrix::trivial(2);
        assert!(matches!(weighted_proj_presentation(&w, &[2]), Err(Error::InvalidGmWeights(_))));
        assert!(matches!(weighted_proj_presentation(&w, &[2, 0]), Err(Error::InvalidGmWeights(_))));
    }

    #[test]
    fn specialize_examples() {
        let r = projective_ring(2);
        assert_eq!(specialize_h_zero(&p("2*h + T0", &r)).unwrap().to_string(), "T0");
        assert!(specialize_h_zero(&p("2*h^2", &r)).unwrap().is_zero());
        let f = p("h + T1", &r).mul(&p("2*h + T0", &r)).unwrap();
        let s = specialize_h_zero(&f).unwrap();
        assert_eq!(s.to_string(), "T0*T1");
        assert_eq!(s.ring().len(), 2);
        assert!(specialize_h_zero(&p("T0", &torus_ring(2))).is_err());
    }

    #[test]
    fn action_weight_examples() {
        let w = action_weights(2).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(w.row("a0").unwrap().weights, [-4, 2]);
        assert_eq!(w.row("a6").unwrap().weights, [2, -4]);
        assert_eq!(w.row("s").unwrap().weights, [1, -2]);

        let w = action_weights(3).unwrap();
        for i in 0..=8i64 {
            assert_eq!(w.row(&format!("a{i}")).unwrap().weights, [-2, i - 4]);
        }
        assert_eq!(w.row("s").unwrap().weights, [-1, 2]);
        assert_eq!(action_weights(1), Err(Error::InvalidGenus(1)));
    }

    #[test]
    fn consistency_holds() {
        for g in 2..=40 {
            assert!(weights_consistent(&action_weights(g).unwrap()), "g = {g}");
        }
        assert!(!weights_consistent(&chart_weights(2).unwrap()));
    }

    #[test]
    fn projectivized_specializes_to_punctured() {
        for g in 2..=5 {
            let proj = projectivized_presentation(g).unwrap();
            let punct = punctured_rep_presentation(&chart_weights(g).unwrap()).unwrap();
            let rel = &proj.relations.generators()[0];
            assert_eq!(rel.homogeneous_degree(), Some(2 * g + 3));
            let specialised = specialize_h_zero(rel).unwrap();
            assert_eq!(specialised.to_string(), punct.relations.generators()[0].to_string());
        }
    }
}
