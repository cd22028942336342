//! Exact arithmetic in normal crossing coordinate rings.
//!
//! The ring `k[z_0,…,z_n] / (z_0⋯z_d)` is represented by reduced polynomials:
//! a monomial divisible by the full product of the crossing variables is
//! dropped on every operation, so equality of values is equality of stored
//! terms.  A chosen subset of the free variables (indices above the crossing
//! depth) may be inverted, which makes the unit group exactly the nonzero
//! monomials supported on those variables — the fact every unit test in this
//! module leans on.  Coefficients live in the rationals or in a prime field,
//! always exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NCError;

/// Coefficient field: exact rationals or integers modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

/// Deterministic Miller–Rabin primality test, exact for all `u64` inputs
/// with this witness set.
pub fn is_prime(p: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if p < 2 {
        return false;
    }
    for w in WITNESSES {
        if p % w == 0 {
            return p == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let s = (p - 1).trailing_zeros();
    let d = (p - 1) >> s;
    'witness: for w in WITNESSES {
        let mut x = powmod(w, d);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A normal crossing coordinate ring with an inverted set of free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCRing {
    n: usize,
    d: usize,
    field: FieldSpec,
    inverted: BTreeSet<usize>,
}

/// The certificate that a polynomial is a unit: a nonzero coefficient times
/// a monomial supported on the inverted variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialUnit {
    pub coeff: BigRational,
    pub exponents: Vec<i64>,
}

impl NCRing {
    /// Ring with variables `z_0,…,z_n`, vanishing product `z_0⋯z_d`, and the
    /// given inverted subset of the free variables.
    pub fn new(
        n: usize,
        d: usize,
        field: FieldSpec,
        inverted: BTreeSet<usize>,
    ) -> Result<NCRing, NCError> {
        if d > n {
            return Err(NCError::DepthExceedsVars { n, d });
        }
        if let Some(&var) = inverted.iter().find(|&&v| v <= d || v > n) {
            return Err(NCError::InvertedBranch { var });
        }
        if let FieldSpec::Prime(p) = field {
            if !is_prime(p) {
                return Err(NCError::NonPrimeModulus(p));
            }
        }
        Ok(NCRing {
            n,
            d,
            field,
            inverted,
        })
    }

    /// Highest variable index; the variables are `z_0,…,z_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Crossing depth: monomials divisible by `z_0⋯z_d` vanish.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn inverted(&self) -> &BTreeSet<usize> {
        &self.inverted
    }

    /// Length of an exponent vector.
    pub fn width(&self) -> usize {
        self.n + 1
    }

    fn normalize_coeff(&self, c: &BigRational) -> Result<BigRational, NCError> {
        match self.field {
            FieldSpec::Rational => Ok(c.clone()),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(NCError::DenominatorNotInvertible);
                }
                let inv = modular_inverse(&den, &p).ok_or(NCError::DenominatorNotInvertible)?;
                let value = (c.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(value))
            }
        }
    }

    fn coeff_inverse(&self, c: &BigRational) -> Result<BigRational, NCError> {
        if c.is_zero() {
            return Err(NCError::DivisionByZero);
        }
        match self.field {
            FieldSpec::Rational => Ok(c.recip()),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(p);
                let inv = modular_inverse(&c.numer().mod_floor(&p), &p)
                    .ok_or(NCError::DivisionByZero)?;
                Ok(BigRational::from_integer(inv))
            }
        }
    }

    fn check_monomial(&self, exponents: &[i64]) -> Result<(), NCError> {
        if exponents.len() != self.width() {
            return Err(NCError::WrongArity {
                expected: self.width(),
                found: exponents.len(),
            });
        }
        for (var, &e) in exponents.iter().enumerate() {
            if e < 0 && !self.inverted.contains(&var) {
                return Err(NCError::NegativeExponent { var });
            }
        }
        Ok(())
    }

    /// A monomial vanishes exactly when every crossing variable divides it.
    fn monomial_vanishes(&self, exponents: &[i64]) -> bool {
        exponents[..=self.d].iter().all(|&e| e >= 1)
    }

    /// Build a polynomial from coefficient–exponent pairs, merging duplicate
    /// monomials and reducing.
    pub fn poly(&self, terms: &[(BigRational, Vec<i64>)]) -> Result<NCPoly, NCError> {
        let mut map: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        for (coeff, exponents) in terms {
            self.check_monomial(exponents)?;
            if self.monomial_vanishes(exponents) {
                continue;
            }
            let c = self.normalize_coeff(coeff)?;
            let entry = map.entry(exponents.clone()).or_insert_with(BigRational::zero);
            *entry = self.normalize_coeff(&(&*entry + c))?;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(NCPoly { terms: map })
    }

    /// Convenience constructor from integer coefficients.
    pub fn poly_i64(&self, terms: &[(i64, &[i64])]) -> Result<NCPoly, NCError> {
        let converted: Vec<(BigRational, Vec<i64>)> = terms
            .iter()
            .map(|(c, e)| (BigRational::from_integer(BigInt::from(*c)), e.to_vec()))
            .collect();
        self.poly(&converted)
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> NCPoly {
        self.constant_i64(1).expect("1 is a valid constant")
    }

    pub fn constant(&self, c: BigRational) -> Result<NCPoly, NCError> {
        self.poly(&[(c, vec![0; self.width()])])
    }

    pub fn constant_i64(&self, c: i64) -> Result<NCPoly, NCError> {
        self.constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `z_i` as a polynomial.
    pub fn var(&self, i: usize) -> Result<NCPoly, NCError> {
        if i > self.n {
            return Err(NCError::WrongArity {
                expected: self.width(),
                found: i + 1,
            });
        }
        let mut exponents = vec![0; self.width()];
        exponents[i] = 1;
        self.poly(&[(BigRational::one(), exponents)])
    }

    pub fn add(&self, f: &NCPoly, g: &NCPoly) -> NCPoly {
        let mut terms = f.terms.clone();
        for (m, c) in &g.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry = self
                .normalize_coeff(&(&*entry + c))
                .expect("normalized inputs stay normalizable");
        }
        terms.retain(|_, c| !c.is_zero());
        NCPoly { terms }
    }

    pub fn neg(&self, f: &NCPoly) -> NCPoly {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| {
                let negated = self
                    .normalize_coeff(&(-c))
                    .expect("normalized inputs stay normalizable");
                (m.clone(), negated)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        NCPoly { terms }
    }

    pub fn sub(&self, f: &NCPoly, g: &NCPoly) -> NCPoly {
        self.add(f, &self.neg(g))
    }

    pub fn mul(&self, f: &NCPoly, g: &NCPoly) -> NCPoly {
        let mut terms: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        for (ma, ca) in &f.terms {
            for (mb, cb) in &g.terms {
                let m: Vec<i64> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                if self.monomial_vanishes(&m) {
                    continue;
                }
                let c = self
                    .normalize_coeff(&(ca * cb))
                    .expect("normalized inputs stay normalizable");
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry = self
                    .normalize_coeff(&(&*entry + c))
                    .expect("normalized inputs stay normalizable");
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NCPoly { terms }
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a NCPoly>) -> NCPoly {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// The monomial-unit certificate of `f`, when `f` is a unit.
    ///
    /// Units of the reduced ring are exactly the polynomials with a single
    /// term whose support lies in the inverted variables.
    pub fn unit_certificate(&self, f: &NCPoly) -> Option<MonomialUnit> {
        if f.terms.len() != 1 {
            return None;
        }
        let (exponents, coeff) = f.terms.iter().next().expect("one term");
        for (var, &e) in exponents.iter().enumerate() {
            if e != 0 && !self.inverted.contains(&var) {
                return None;
            }
        }
        Some(MonomialUnit {
            coeff: coeff.clone(),
            exponents: exponents.clone(),
        })
    }

    pub fn is_unit(&self, f: &NCPoly) -> bool {
        self.unit_certificate(f).is_some()
    }

    /// The inverse of a unit, or `None` when `f` is not a unit.
    pub fn unit_inverse(&self, f: &NCPoly) -> Option<NCPoly> {
        let cert = self.unit_certificate(f)?;
        let coeff = self
            .coeff_inverse(&cert.coeff)
            .expect("unit coefficients are nonzero");
        let exponents: Vec<i64> = cert.exponents.iter().map(|e| -e).collect();
        Some(
            self.poly(&[(coeff, exponents)])
                .expect("inverted exponents stay on inverted variables"),
        )
    }

    /// Substitute `z_i = 0` for a crossing variable `i ≤ d`: monomials
    /// containing `z_i` vanish.
    pub fn restrict_to_component(&self, f: &NCPoly, i: usize) -> NCPoly {
        let terms = f
            .terms
            .iter()
            .filter(|(m, _)| m[i] == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        NCPoly { terms }
    }

    /// Membership in the double-locus ideal generated by the products
    /// `z_0⋯ẑ_i⋯z_d`: every monomial must be divisible by one of them.
    pub fn in_double_ideal(&self, f: &NCPoly) -> bool {
        f.terms.keys().all(|m| {
            (0..=self.d).any(|skip| {
                (0..=self.d).all(|j| j == skip || m[j] >= 1)
            })
        })
    }
}

/// Inverse of `a` modulo `p`, when `gcd(a, p) = 1`.
fn modular_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(p);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(p))
}

/// A reduced polynomial: monomial → nonzero coefficient, no stored monomial
/// divisible by the full crossing product.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl NCPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (k, (mono, coeff)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(out, " + ")?;
            }
            let vars: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("z{i}")
                    } else {
                        format!("z{i}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(out, "{coeff}")?;
            } else if coeff.is_one() {
                write!(out, "{}", vars.join("*"))?;
            } else if (-coeff).is_one() {
                write!(out, "-{}", vars.join("*"))?;
            } else {
                write!(out, "{}*{}", coeff, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
