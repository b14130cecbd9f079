//! Relations for the Chow ring of 1-pointed hyperelliptic curves of genus `g`.
//!
//! The relation ideal of the unpointed stack is pulled back to the Chow ring
//! of the maximal torus, and the resulting ideal is compared degree by degree
//! against the closed-form presentation:
//!
//! * even `g`: `Z[T0, T1] / (2(2g+1)(T0+T1), g(g-1)(T0²+T1²) - 2g(g+3) T0 T1)`
//! * odd `g`: `Z[t, r] / (4(2g+1) t, 8t² + 2g(g+1) r²)`
//!
//! `t` and `r` stand for τ and ρ. The comparison never assumes the outcome;
//! whatever the lattices say is what the report says.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::equivariant::{Parity, Presentation};
use crate::error::{Error, Result};
use crate::ideal::{GradedIdeal, QuotientFactors};
use crate::poly::{PolyRing, Polynomial, RingMap};

pub const CHAR_HYPOTHESIS: &str = "char(k) > 2g";

/// `Z[c1, c2]`, degrees 1 and 2.
pub fn even_ambient_ring() -> Arc<PolyRing> {
    PolyRing::new([("c1", 1), ("c2", 2)]).expect("static ring")
}

/// `Z[t, c2, c3]`, degrees 1, 2, 3; `c1` is already zero in this ring.
pub fn odd_ambient_ring() -> Arc<PolyRing> {
    PolyRing::new([("t", 1), ("c2", 2), ("c3", 3)]).expect("static ring")
}

/// `Z[t, c1, c2, c3]`, the polynomial ring presenting `CH(B PGL2 × B Gm)`
/// before the relations `c1 = 2 c3 = 0`.
pub fn odd_full_ring() -> Arc<PolyRing> {
    PolyRing::new([("t", 1), ("c1", 1), ("c2", 2), ("c3", 3)]).expect("static ring")
}

pub fn even_torus_ring() -> Arc<PolyRing> {
    PolyRing::new([("T0", 1), ("T1", 1)]).expect("static ring")
}

pub fn odd_torus_ring() -> Arc<PolyRing> {
    PolyRing::new([("t", 1), ("r", 1)]).expect("static ring")
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn check_genus(g: u32) -> Result<i64> {
    if g < 2 {
        Err(Error::InvalidGenus(g))
    } else {
        Ok(i64::from(g))
    }
}

/// The presentation of the Chow ring of the unpointed stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgPresentation {
    pub parity: Parity,
    pub g: u32,
    pub ambient: Arc<PolyRing>,
    pub relations: GradedIdeal,
}

impl HgPresentation {
    /// Relations of the ambient classifying space that were imposed before
    /// writing down `relations` (odd genus only).
    pub fn ambient_relations(&self) -> &'static [&'static str] {
        match self.parity {
            Parity::Even => &[],
            Parity::Odd => &["c1", "2*c3"],
        }
    }
}

pub fn hg_presentation(g: u32) -> Result<HgPresentation> {
    let gi = check_genus(g)?;
    let parity = Parity::of(g);
    let (ambient, gens) = match parity {
        Parity::Even => {
            let r = even_ambient_ring();
            let a = Polynomial::from_terms(&r, [(int(2 * (2 * gi + 1)), vec![1, 0])])?;
            let b = Polynomial::from_terms(
                &r,
                [(int(gi * (gi - 1)), vec![2, 0]), (int(-4 * gi * (gi + 1)), vec![0, 1])],
            )?;
            (r, vec![a, b])
        }
        Parity::Odd => {
            let r = odd_ambient_ring();
            let a = Polynomial::from_terms(&r, [(int(4 * (2 * gi + 1)), vec![1, 0, 0])])?;
            let b = Polynomial::from_terms(
                &r,
                [(int(8), vec![2, 0, 0]), (int(-2 * (gi * gi - 1)), vec![0, 1, 0])],
            )?;
            let c = Polynomial::from_terms(&r, [(int(2), vec![0, 0, 1])])?;
            (r, vec![a, b, c])
        }
    };
    let relations = GradedIdeal::new(&ambient, gens)?;
    Ok(HgPresentation { parity, g, ambient, relations })
}

fn require_homogeneous(f: &Polynomial) -> Result<()> {
    if f.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Restriction along the diagonal torus of `GL2`: `c1 ↦ T0 + T1`, `c2 ↦ T0 T1`.
pub fn even_pullback_map() -> RingMap {
    let t = even_torus_ring();
    let v = |s| Polynomial::parse(s, &t).expect("static polynomial");
    RingMap::new(&even_ambient_ring(), &t, [("c1", v("T0 + T1")), ("c2", v("T0*T1"))])
        .expect("graded map")
}

/// Restriction along `(t, l) ↦ (t, diag(l, 1))`: the adjoint action has
/// eigenvalues `l, 1, 1/l`, so `c1 ↦ 0`, `c2 ↦ -r²`, `c3 ↦ 0`, and `t ↦ t`.
/// Works from either the full ring `Z[t, c1, c2, c3]` or the ambient ring
/// without `c1`.
pub fn odd_pullback_map(source: &Arc<PolyRing>) -> Result<RingMap> {
    let t = odd_torus_ring();
    let v = |s| Polynomial::parse(s, &t).expect("static polynomial");
    let mut images = vec![("t", v("t")), ("c2", v("-r^2")), ("c3", Polynomial::zero(&t))];
    if source.index_of("c1").is_some() {
        images.push(("c1", Polynomial::zero(&t)));
    }
    RingMap::new(source, &t, images)
}

pub fn pullback_even(f: &Polynomial) -> Result<Polynomial> {
    require_homogeneous(f)?;
    even_pullback_map().apply(f)
}

pub fn pullback_odd(f: &Polynomial) -> Result<Polynomial> {
    require_homogeneous(f)?;
    let src = f.ring();
    if **src != *odd_full_ring() && **src != *odd_ambient_ring() {
        return Err(Error::RingMismatch);
    }
    odd_pullback_map(src)?.apply(f)
}

/// The ideal generated by the pulled-back relations; zero images are dropped.
pub fn image_ideal(g: u32) -> Result<GradedIdeal> {
    let hg = hg_presentation(g)?;
    let (ring, pull): (_, fn(&Polynomial) -> Result<Polynomial>) = match hg.parity {
        Parity::Even => (even_torus_ring(), pullback_even),
        Parity::Odd => (odd_torus_ring(), pullback_odd),
    };
    let gens = hg.relations.generators().iter().map(pull).collect::<Result<Vec<_>>>()?;
    GradedIdeal::new(&ring, gens)
}

/// The closed-form presentation for the pointed stack.
pub fn stated_presentation(g: u32) -> Result<Presentation> {
    let gi = check_genus(g)?;
    let gens = match Parity::of(g) {
        Parity::Even => {
            let r = even_torus_ring();
            let lin = int(2 * (2 * gi + 1));
            let a = Polynomial::from_terms(&r, [(lin.clone(), vec![1, 0]), (lin, vec![0, 1])])?;
            let sq = int(gi * (gi - 1));
            let b = Polynomial::from_terms(
                &r,
                [(sq.clone(), vec![2, 0]), (int(-2 * gi * (gi + 3)), vec![1, 1]), (sq, vec![0, 2])],
            )?;
            GradedIdeal::new(&r, [a, b])?
        }
        Parity::Odd => {
            let r = odd_torus_ring();
            let a = Polynomial::from_terms(&r, [(int(4 * (2 * gi + 1)), vec![1, 0])])?;
            let b = Polynomial::from_terms(
                &r,
                [(int(8), vec![2, 0]), (int(2 * gi * (gi + 1)), vec![0, 2])],
            )?;
            GradedIdeal::new(&r, [a, b])?
        }
    };
    Ok(Presentation::new(gens))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generators {
    pub image: Vec<String>,
    pub stated: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub d: u32,
    pub equal: bool,
    pub image_factors: QuotientFactors,
    pub stated_factors: QuotientFactors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub g: u32,
    pub parity: Parity,
    pub char_hypothesis: &'static str,
    pub generators: Generators,
    pub max_degree: u32,
    pub per_degree: Vec<DegreeComparison>,
    pub first_discrepancy: Option<u32>,
}

impl VerificationReport {
    pub fn all_equal(&self) -> bool {
        self.first_discrepancy.is_none()
    }

    pub fn degree(&self, d: u32) -> Option<&DegreeComparison> {
        self.per_degree.iter().find(|c| c.d == d)
    }
}

/// Compares the pulled-back ideal with the closed-form one in degrees
/// `0..=max_degree`.
pub fn verify(g: u32, max_degree: u32) -> Result<VerificationReport> {
    let image = image_ideal(g)?;
    let stated = stated_presentation(g)?.relations;
    compare_ideals(g, &image, &stated, max_degree)
}

/// The comparison behind [`verify`], for arbitrary generating sets.
pub fn compare_ideals(
    g: u32,
    image: &GradedIdeal,
    stated: &GradedIdeal,
    max_degree: u32,
) -> Result<VerificationReport> {
    check_genus(g)?;
    if max_degree < 4 {
        return Err(Error::DegreeCutoff(max_degree));
    }
    let equal = image.equal_up_to(stated, max_degree)?;
    let per_degree: Vec<DegreeComparison> = equal
        .into_iter()
        .enumerate()
        .map(|(d, equal)| {
            let d = d as u32;
            DegreeComparison {
                d,
                equal,
                image_factors: image.invariant_factors(d),
                stated_factors: stated.invariant_factors(d),
            }
        })
        .collect();
    let first_discrepancy = per_degree.iter().find(|c| !c.equal).map(|c| c.d);
    Ok(VerificationReport {
        g,
        parity: Parity::of(g),
        char_hypothesis: CHAR_HYPOTHESIS,
        generators: Generators {
            image: image.generator_strings(),
            stated: stated.generator_strings(),
        },
        max_degree,
        per_degree,
        first_discrepancy,
    })
}

/// For each even `g` in `2..=g_max`, whether the pulled-back generators equal
/// the closed-form generators term for term.
pub fn even_identity_results(g_max: u32) -> Result<Vec<(u32, bool)>> {
    check_genus(g_max)?;
    (2..=g_max)
        .step_by(2)
        .map(|g| {
            let image = image_ideal(g)?;
            let stated = stated_presentation(g)?.relations;
            Ok((g, image.generators() == stated.generators()))
        })
        .collect()
}

pub fn even_identity_check(g_max: u32) -> Result<bool> {
    Ok(even_identity_results(g_max)?.iter().all(|&(_, ok)| ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hg_examples() {
        assert_eq!(hg_presentation(2).unwrap().relations.generator_strings(), ["10*c1", "2*c1^2 - 24*c2"]);
        let odd = hg_presentation(3).unwrap();
        assert_eq!(odd.relations.generator_strings(), ["28*t", "8*t^2 - 16*c2", "2*c3"]);
        assert_eq!(odd.ambient_relations(), ["c1", "2*c3"]);
        assert_eq!(hg_presentation(4).unwrap().relations.generator_strings(), ["18*c1", "12*c1^2 - 80*c2"]);
        assert_eq!(hg_presentation(1), Err(Error::InvalidGenus(1)));
    }

    #[test]
    fn pullback_even_examples() {
        let r = even_ambient_ring();
        let p = |s| Polynomial::parse(s, &r).unwrap();
        assert_eq!(pullback_even(&p("c1")).unwrap().to_string(), "T0 + T1");
        assert_eq!(pullback_even(&p("c2^3")).unwrap().to_string(), "T0^3*T1^3");
        assert_eq!(pullback_even(&p("2*c1^2 - 24*c2")).unwrap().to_string(), "2*T0^2 - 20*T0*T1 + 2*T1^2");
        assert_eq!(pullback_even(&p("c1 + c2")), Err(Error::NotHomogeneous));
    }

    #[test]
    fn pullback_odd_examples() {
        let r = odd_full_ring();
        let p = |s| Polynomial::parse(s, &r).unwrap();
        assert_eq!(pullback_odd(&p("t")).unwrap().to_string(), "t");
        assert!(pullback_odd(&p("2*c3")).unwrap().is_zero());
        assert!(pullback_odd(&p("c1")).unwrap().is_zero());
        assert_eq!(pullback_odd(&p("8*t^2 - 16*c2")).unwrap().to_string(), "8*t^2 + 16*r^2");
        assert_eq!(pullback_odd(&p("t + c2")), Err(Error::NotHomogeneous));
        let a = odd_ambient_ring();
        assert_eq!(
            pullback_odd(&Polynomial::parse("c2*t", &a).unwrap()).unwrap().to_string(),
            "-t*r^2"
        );
        let wrong = even_ambient_ring();
        assert_eq!(pullback_odd(&Polynomial::parse("c1", &wrong).unwrap()), Err(Error::RingMismatch));
    }

    #[test]
    fn image_ideal_examples() {
        assert_eq!(image_ideal(2).unwrap().generator_strings(), ["10*T0 + 10*T1", "2*T0^2 - 20*T0*T1 + 2*T1^2"]);
        assert_eq!(image_ideal(3).unwrap().generator_strings(), ["28*t", "8*t^2 + 16*r^2"]);
        assert_eq!(image_ideal(5).unwrap().generator_strings(), ["44*t", "8*t^2 + 48*r^2"]);
    }

    #[test]
    fn stated_examples() {
        assert_eq!(
            stated_presentation(2).unwrap().relation_strings(),
            ["10*T0 + 10*T1", "2*T0^2 - 20*T0*T1 + 2*T1^2"]
        );
        assert_eq!(stated_presentation(3).unwrap().relation_strings(), ["28*t", "8*t^2 + 24*r^2"]);
        assert_eq!(
            stated_presentation(4).unwrap().relation_strings(),
            ["18*T0 + 18*T1", "12*T0^2 - 56*T0*T1 + 12*T1^2"]
        );
        assert!(stated_presentation(0).is_err());
    }

    #[test]
    fn verify_g2() {
        let rep = verify(2, 10).unwrap();
        assert_eq!(rep.per_degree.len(), 11);
        assert!(rep.all_equal());
        let d1 = rep.degree(1).unwrap();
        assert_eq!(d1.image_factors, QuotientFactors::new(1, [10]));
        assert_eq!(d1.stated_factors, QuotientFactors::new(1, [10]));
    }

    #[test]
    fn verify_g3_low_degrees() {
        let rep = verify(3, 6).unwrap();
        assert!(rep.degree(0).unwrap().equal);
        assert!(rep.degree(1).unwrap().equal);
        // 8r^2 = (8t^2 + 24r^2) - (8t^2 + 16r^2) is not in the image lattice
        assert!(!rep.degree(2).unwrap().equal);
        assert_eq!(rep.first_discrepancy, Some(2));
    }

    #[test]
    fn verify_rejects_small_cutoff() {
        assert_eq!(verify(2, 3), Err(Error::DegreeCutoff(3)));
    }

    #[test]
    fn even_identity() {
        assert!(even_identity_check(2).unwrap());
        assert!(even_identity_check(4).unwrap());
        assert!(even_identity_check(10).unwrap());
        let g10 = stated_presentation(10).unwrap().relation_strings();
        assert_eq!(g10[1], "90*T0^2 - 260*T0*T1 + 90*T1^2");
        assert_eq!(even_identity_results(7).unwrap(), [(2, true), (4, true), (6, true)]);
    }
}
