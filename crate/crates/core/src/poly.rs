//! Multivariate polynomials with arbitrary-precision integer coefficients over
//! a graded variable set.
//!
//! Every variable carries a positive degree, and the weighted degree of a
//! monomial is `Σ exponent_i · degree_i`. Terms are ordered graded-lexicographically
//! (higher weighted degree first, then lexicographically by declared variable
//! order), which is also the order of the canonical text form:
//!
//! ```text
//! 2*T0^2 - 20*T0*T1 + 2*T1^2
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

/// An ordered list of graded variables. Rings are shared behind an `Arc`;
/// two rings are the same ring iff their variable lists agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<Variable>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>> {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(name, degree)| Variable { name: name.into(), degree })
            .collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(&v.name) {
                return Err(Error::InvalidRing(format!("bad variable name `{}`", v.name)));
            }
            if v.degree == 0 {
                return Err(Error::InvalidRing(format!("variable `{}` has degree 0", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Arc::new(PolyRing { vars }))
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }

    /// All monomials of weighted degree `d`, in descending graded-lex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn go(vars: &[Variable], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            match vars.split_first() {
                None => {
                    if left == 0 {
                        out.push(Monomial(prefix.clone()));
                    }
                }
                Some((v, rest)) => {
                    for e in (0..=left / v.degree).rev() {
                        prefix.push(e);
                        go(rest, left - e * v.degree, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(&self.vars, d, &mut Vec::with_capacity(self.vars.len()), &mut out);
        out
    }

    /// Graded-lex comparison: `Greater` means `a` comes first in canonical order.
    pub fn grlex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree_of(a).cmp(&self.degree_of(b)).then_with(|| a.cmp(b))
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, one entry per ring variable. The derived `Ord` is plain
/// lexicographic order on exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.len()))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        Ok(Self::monomial(ring, 1, Monomial(e)))
    }

    /// `c · m`. Panics if the exponent vector has the wrong length.
    pub fn monomial(ring: &Arc<PolyRing>, c: impl Into<BigInt>, m: Monomial) -> Self {
        assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (C, Vec<u32>)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (c, e) in terms {
            if e.len() != ring.len() {
                return Err(Error::DimensionMismatch { expected: ring.len(), found: e.len() });
            }
            p.add_term(Monomial(e), c.into());
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| self.ring.grlex_cmp(b.0, a.0));
        t
    }

    /// The common weighted degree of all terms, `None` if the polynomial is
    /// zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.ring.degree_of(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Evaluates under the graded homomorphism `map`.
    pub fn substitute(&self, map: &RingMap) -> Result<Polynomial> {
        map.apply(self)
    }

    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        Parser::new(text, ring).parse()
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            let is_const = m.0.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (e, v) in m.0.iter().zip(self.ring.variables()) {
                match e {
                    0 => {}
                    1 => factors.push(v.name.clone()),
                    _ => factors.push(format!("{}^{}", v.name, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A grading-preserving ring homomorphism given by the images of the source
/// variables.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new<'a>(
        source: &Arc<PolyRing>,
        target: &Arc<PolyRing>,
        images: impl IntoIterator<Item = (&'a str, Polynomial)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Polynomial>> = vec![None; source.len()];
        for (name, img) in images {
            let i = source.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
            let var = &source.variables()[i];
            if !img.is_homogeneous() {
                return Err(Error::InhomogeneousImage(var.name.clone()));
            }
            if let Some(found) = img.homogeneous_degree() {
                if found != var.degree {
                    return Err(Error::ImageDegreeMismatch {
                        var: var.name.clone(),
                        expected: var.degree,
                        found,
                    });
                }
            }
            slots[i] = Some(img);
        }
        let images = slots
            .into_iter()
            .zip(source.variables())
            .map(|(s, v)| s.ok_or_else(|| Error::MissingImage(v.name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = ring
            .variables()
            .iter()
            .map(|v| Polynomial::var(ring, &v.name).expect("own variable"))
            .collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        // powers[i][e] = images[i]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> =
            self.images.iter().map(|_| vec![Polynomial::one(&self.target)]).collect();
        let mut out = Polynomial::zero(&self.target);
        for (m, c) in &f.terms {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&self.images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a Arc<PolyRing>) -> Self {
        Parser { src, pos: 0, ring }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                None if first => return self.err("empty input"),
                None => break,
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{c}`")),
            };
            first = false;
            let (c, m) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one(self.ring.len());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    coeff *= digits.parse::<BigInt>().expect("digits");
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                    let Some(i) = self.ring.index_of(name) else {
                        self.pos = start;
                        return Err(Error::UnknownVariable(name.to_string()));
                    };
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let digits = self.take_while(|c| c.is_ascii_digit());
                        e = match digits.parse() {
                            Ok(e) => e,
                            Err(_) => return self.err("expected exponent after `^`"),
                        };
                    }
                    mono.0[i] += e;
                }
                Some(c) => return self.err(format!("expected a factor, found `{c}`")),
                None => return self.err("expected a factor"),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((coeff, mono));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t01() -> Arc<PolyRing> {
        PolyRing::new([("T0", 1), ("T1", 1)]).unwrap()
    }

    fn p(s: &str, r: &Arc<PolyRing>) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new([("a", 1), ("a", 1)]).is_err());
        assert!(PolyRing::new([("", 1)]).is_err());
        assert!(PolyRing::new([("a", 0)]).is_err());
        assert!(PolyRing::new(Vec::<(&str, u32)>::new()).is_ok());
    }

    #[test]
    fn add_examples() {
        let r = t01();
        assert_eq!(p("T0 + T1", &r).add(&p("T0 - T1", &r)).unwrap(), p("2*T0", &r));
        let f = p("3*T0*T1 - T1^2", &r);
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        let sum = p("2*T0^2 - 20*T0*T1 + 2*T1^2", &r).add(&p("20*T0*T1", &r)).unwrap();
        assert_eq!(sum.to_string(), "2*T0^2 + 2*T1^2");
    }

    #[test]
    fn mul_examples() {
        let r = t01();
        let s = p("T0 + T1", &r);
        assert_eq!(s.mul(&s).unwrap().to_string(), "T0^2 + 2*T0*T1 + T1^2");
        assert_eq!(s.mul(&Polynomial::one(&r)).unwrap(), s);
        let h = PolyRing::new([("h", 1)]).unwrap();
        assert_eq!(p("h", &h).mul(&p("2*h", &h)).unwrap().to_string(), "2*h^2");
    }

    #[test]
    fn ring_mismatch() {
        let a = t01();
        let b = PolyRing::new([("h", 1)]).unwrap();
        assert_eq!(p("T0", &a).add(&p("h", &b)), Err(Error::RingMismatch));
        assert_eq!(p("T0", &a).mul(&p("h", &b)), Err(Error::RingMismatch));
        // structurally equal rings are the same ring
        let c = t01();
        assert!(p("T0", &a).add(&p("T1", &c)).is_ok());
    }

    #[test]
    fn substitute_examples() {
        let c = PolyRing::new([("c1", 1), ("c2", 2)]).unwrap();
        let t = t01();
        let map = RingMap::new(&c, &t, [("c1", p("T0 + T1", &t)), ("c2", p("T0*T1", &t))]).unwrap();
        let f = p("c1^2 - 4*c2", &c);
        assert_eq!(f.substitute(&map).unwrap().to_string(), "T0^2 - 2*T0*T1 + T1^2");

        let id = RingMap::identity(&c);
        assert_eq!(f.substitute(&id).unwrap(), f);

        let odd = PolyRing::new([("t", 1), ("c1", 1), ("c2", 2), ("c3", 3)]).unwrap();
        let tr = PolyRing::new([("t", 1), ("r", 1)]).unwrap();
        let map = RingMap::new(
            &odd,
            &tr,
            [
                ("t", p("t", &tr)),
                ("c1", Polynomial::zero(&tr)),
                ("c2", p("-r^2", &tr)),
                ("c3", Polynomial::zero(&tr)),
            ],
        )
        .unwrap();
        let g = 3i64;
        let f = p(&format!("8*t^2 - {}*c2", 2 * (g * g - 1)), &odd);
        assert_eq!(f.substitute(&map).unwrap().to_string(), "8*t^2 + 16*r^2");
    }

    #[test]
    fn substitute_errors() {
        let c = PolyRing::new([("c1", 1), ("c2", 2)]).unwrap();
        let t = t01();
        assert_eq!(
            RingMap::new(&c, &t, [("c1", p("T0", &t))]).unwrap_err(),
            Error::MissingImage("c2".into())
        );
        assert_eq!(
            RingMap::new(&c, &t, [("c1", p("T0", &t)), ("c2", p("T0^2 + T1", &t))]).unwrap_err(),
            Error::InhomogeneousImage("c2".into())
        );
        assert_eq!(
            RingMap::new(&c, &t, [("c1", p("T0", &t)), ("c2", p("T1", &t))]).unwrap_err(),
            Error::ImageDegreeMismatch { var: "c2".into(), expected: 2, found: 1 }
        );
    }

    #[test]
    fn canonical_strings() {
        let r = t01();
        let s = "2*T0^2 - 20*T0*T1 + 2*T1^2";
        assert_eq!(p(s, &r).to_string(), s);
        assert_eq!(p("T1 + T0", &r).to_string(), "T0 + T1");
        let z = p("0", &r);
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(p("-T1 + 5 - T0^3", &r).to_string(), "-T0^3 - T1 + 5");
        assert_eq!(p("T0*2*T0 - T0^2", &r).to_string(), "T0^2");
        assert_eq!(p("-1", &r).to_string(), "-1");
    }

    #[test]
    fn graded_order_uses_variable_degrees() {
        let r = PolyRing::new([("t", 1), ("c2", 2), ("c3", 3)]).unwrap();
        assert_eq!(p("c2 + t^3 + c3 + t*c2", &r).to_string(), "t^3 + t*c2 + c3 + c2");
        assert_eq!(p("c2*t^2", &r).homogeneous_degree(), Some(4));
    }

    #[test]
    fn parse_errors() {
        let r = t01();
        assert_eq!(Polynomial::parse("T0 + X", &r), Err(Error::UnknownVariable("X".into())));
        assert!(matches!(Polynomial::parse("T0 +", &r), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse("", &r), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse("T0^", &r), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse("T0 T1", &r), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse("2**T0", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn big_coefficients() {
        let r = t01();
        let f = p("123456789012345678901234567890*T0", &r);
        let sq = f.mul(&f).unwrap();
        assert_eq!(
            sq.to_string(),
            "15241578753238836750495351562536198787501905199875019052100*T0^2"
        );
        assert_eq!(p(&sq.to_string(), &r), sq);
    }

    #[test]
    fn monomials_of_degree_order() {
        let r = PolyRing::new([("t", 1), ("c2", 2), ("c3", 3)]).unwrap();
        let names: Vec<String> = r
            .monomials_of_degree(4)
            .into_iter()
            .map(|m| Polynomial::monomial(&r, 1, m).to_string())
            .collect();
        assert_eq!(names, ["t^4", "t^2*c2", "t*c3", "c2^2"]);
        assert_eq!(t01().monomials_of_degree(0).len(), 1);
    }
}
