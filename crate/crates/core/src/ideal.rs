//! Homogeneous ideals of integer polynomial rings, examined one degree at a
//! time.
//!
//! The degree-`d` piece of an ideal is the subgroup of the free abelian group
//! on degree-`d` monomials spanned by all products `m · g` with `g` a
//! generator and `deg m + deg g = d`. Comparing these lattices with Hermite
//! normal forms decides equality of two ideals through any fixed degree, and
//! the Smith normal form gives the structure of the quotient in that degree.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl GradedIdeal {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(ring: &Arc<PolyRing>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous);
            }
            gens.push(g);
        }
        Ok(GradedIdeal { ring: ring.clone(), generators: gens })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        GradedIdeal { ring: ring.clone(), generators: Vec::new() }
    }

    /// Parses each generator in the canonical grammar.
    pub fn parse(ring: &Arc<PolyRing>, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Polynomial::parse(s, ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().filter_map(Polynomial::homogeneous_degree).max()
    }

    /// Replaces generator `i` by `g_i + multiplier · g_j` (`i ≠ j`). The ideal
    /// is unchanged; `multiplier` must keep `g_i` homogeneous.
    pub fn add_multiple(&self, i: usize, j: usize, multiplier: &Polynomial) -> Result<Self> {
        if i == j || i >= self.generators.len() || j >= self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), found: i.max(j) });
        }
        let shifted = multiplier.mul(&self.generators[j])?;
        let mut gens = self.generators.clone();
        gens[i] = gens[i].add(&shifted)?;
        if !gens[i].is_homogeneous()
            || gens[i].homogeneous_degree().is_some_and(|d| Some(d) != self.generators[i].homogeneous_degree())
        {
            return Err(Error::NotHomogeneous);
        }
        Self::new(&self.ring, gens)
    }

    /// Appends a generator already in the ideal (or any homogeneous element).
    pub fn with_generator(&self, g: Polynomial) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(&self.ring, gens)
    }

    pub fn degree_piece(&self, d: u32) -> DegreePiece {
        let basis = self.ring.monomials_of_degree(d);
        let index = |m: &Monomial| basis.binary_search_by(|b| m.cmp(b)).expect("monomial in basis");
        let mut rows = Vec::new();
        for g in &self.generators {
            let gd = g.homogeneous_degree().expect("homogeneous generator");
            if gd > d {
                continue;
            }
            for m in self.ring.monomials_of_degree(d - gd) {
                let prod = g.mul_monomial(&m);
                let mut row = vec![BigInt::default(); basis.len()];
                for (mono, c) in prod.terms() {
                    row[index(mono)] = c.clone();
                }
                rows.push(row);
            }
        }
        let lattice = IntMatrix::from_rows(basis.len(), rows).expect("row width equals basis");
        DegreePiece { degree: d, basis, lattice }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let piece = self.degree_piece(d);
        lattice::lattice_contains(&piece.lattice, &piece.coordinates(f))
    }

    /// Degree-wise lattice equality for `d = 0..=max_degree`.
    pub fn equal_up_to(&self, other: &GradedIdeal, max_degree: u32) -> Result<Vec<bool>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        (0..=max_degree)
            .map(|d| lattice::lattice_equal(&self.degree_piece(d).lattice, &other.degree_piece(d).lattice))
            .collect()
    }

    /// Structure of the degree-`d` piece of the quotient ring.
    pub fn invariant_factors(&self, d: u32) -> QuotientFactors {
        self.degree_piece(d).quotient_factors()
    }
}

/// The degree-`d` component of an ideal as a row lattice in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePiece {
    pub degree: u32,
    /// Degree-`d` monomials, descending graded-lex.
    pub basis: Vec<Monomial>,
    pub lattice: IntMatrix,
}

impl DegreePiece {
    /// Coefficient vector of a degree-`d` polynomial in this basis.
    pub fn coordinates(&self, f: &Polynomial) -> Vec<BigInt> {
        self.basis.iter().map(|m| f.coefficient(m)).collect()
    }

    pub fn quotient_factors(&self) -> QuotientFactors {
        let s = lattice::snf(&self.lattice);
        QuotientFactors {
            free_rank: self.basis.len() - s.diag.len(),
            torsion: s.diag.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }
}

/// `Z^free_rank ⊕ ⊕ Z/torsion_i`, torsion orders > 1 in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientFactors {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl QuotientFactors {
    pub fn new(free_rank: usize, torsion: impl IntoIterator<Item = i64>) -> Self {
        QuotientFactors { free_rank, torsion: torsion.into_iter().map(BigInt::from).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for QuotientFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            parts.push(if run == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Wire form: `{ "rank": n, "torsion": ["10", ...] }`.
impl Serialize for QuotientFactors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rank: usize,
            torsion: Vec<String>,
        }
        Wire { rank: self.free_rank, torsion: self.torsion.iter().map(|t| t.to_string()).collect() }
            .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t01() -> Arc<PolyRing> {
        PolyRing::new([("T0", 1), ("T1", 1)]).unwrap()
    }

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.row_vecs()
            .into_iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn degree_piece_examples() {
        let r = t01();
        let i = GradedIdeal::parse(&r, &["T0"]).unwrap();
        let p1 = i.degree_piece(1);
        assert_eq!(p1.basis, vec![Monomial(vec![1, 0]), Monomial(vec![0, 1])]);
        assert_eq!(rows(&p1.lattice), vec![vec![1, 0]]);
        assert_eq!(rows(&i.degree_piece(2).lattice), vec![vec![1, 0, 0], vec![0, 1, 0]]);

        let g2 = GradedIdeal::parse(&r, &["10*T0 + 10*T1", "2*T0^2 - 20*T0*T1 + 2*T1^2"]).unwrap();
        assert_eq!(
            rows(&g2.degree_piece(2).lattice),
            vec![vec![10, 10, 0], vec![0, 10, 10], vec![2, -20, 2]]
        );
    }

    #[test]
    fn contains_examples() {
        let r = t01();
        let t0 = GradedIdeal::parse(&r, &["T0"]).unwrap();
        assert!(t0.contains(&Polynomial::parse("T0*T1", &r).unwrap()).unwrap());
        let two = GradedIdeal::parse(&r, &["2*T0"]).unwrap();
        assert!(!two.contains(&Polynomial::parse("T0", &r).unwrap()).unwrap());

        let tr = PolyRing::new([("t", 1), ("r", 1)]).unwrap();
        let g3 = GradedIdeal::parse(&tr, &["28*t", "8*t^2 + 16*r^2"]).unwrap();
        assert!(!g3.contains(&Polynomial::parse("8*t^2 + 24*r^2", &tr).unwrap()).unwrap());
        assert!(g3.contains(&Polynomial::parse("36*t^2 + 28*t*r + 16*r^2", &tr).unwrap()).unwrap());
    }

    #[test]
    fn contains_errors() {
        let r = t01();
        let i = GradedIdeal::parse(&r, &["T0"]).unwrap();
        assert_eq!(i.contains(&Polynomial::parse("T0 + T1^2", &r).unwrap()), Err(Error::NotHomogeneous));
        let other = PolyRing::new([("h", 1)]).unwrap();
        assert_eq!(i.contains(&Polynomial::parse("h", &other).unwrap()), Err(Error::RingMismatch));
        assert_eq!(GradedIdeal::parse(&r, &["T0 + T1^2"]), Err(Error::NotHomogeneous));
    }

    #[test]
    fn zero_generators_dropped() {
        let r = t01();
        let i = GradedIdeal::new(&r, [Polynomial::zero(&r), Polynomial::parse("T0", &r).unwrap()]).unwrap();
        assert_eq!(i.generators().len(), 1);
    }

    #[test]
    fn equal_up_to_examples() {
        let r = t01();
        let a = GradedIdeal::parse(&r, &["T0"]).unwrap();
        let b = GradedIdeal::parse(&r, &["2*T0"]).unwrap();
        assert!(a.equal_up_to(&a, 6).unwrap().iter().all(|&x| x));
        let cmp = a.equal_up_to(&b, 6).unwrap();
        assert!(cmp[0]);
        assert!(cmp[1..].iter().all(|&x| !x));
        let h = PolyRing::new([("h", 1)]).unwrap();
        assert_eq!(a.equal_up_to(&GradedIdeal::zero(&h), 3), Err(Error::RingMismatch));
    }

    #[test]
    fn invariant_factor_examples() {
        let r = t01();
        let g2 = GradedIdeal::parse(&r, &["10*T0 + 10*T1", "2*T0^2 - 20*T0*T1 + 2*T1^2"]).unwrap();
        assert_eq!(g2.invariant_factors(0), QuotientFactors::new(1, []));
        assert_eq!(g2.invariant_factors(1), QuotientFactors::new(1, [10]));
        assert_eq!(GradedIdeal::zero(&r).invariant_factors(3), QuotientFactors::new(4, []));
    }

    #[test]
    fn factors_display_and_wire() {
        let q = QuotientFactors::new(1, [2, 10]);
        assert_eq!(q.to_string(), "Z + Z/2 + Z/10");
        assert_eq!(QuotientFactors::new(0, []).to_string(), "0");
        assert_eq!(QuotientFactors::new(0, [4, 4, 4, 28]).to_string(), "(Z/4)^3 + Z/28");
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"rank":1,"torsion":["2","10"]}"#);
    }

    #[test]
    fn recombination_keeps_ideal() {
        let r = t01();
        let g2 = GradedIdeal::parse(&r, &["10*T0 + 10*T1", "2*T0^2 - 20*T0*T1 + 2*T1^2"]).unwrap();
        let m = Polynomial::parse("3*T0 - T1", &r).unwrap();
        let g2b = g2.add_multiple(1, 0, &m).unwrap();
        assert!(g2.equal_up_to(&g2b, 5).unwrap().iter().all(|&x| x));
        // degree-1 multiplier on the degree-1 generator would break homogeneity
        assert_eq!(g2.add_multiple(0, 1, &m), Err(Error::NotHomogeneous));
    }
}
