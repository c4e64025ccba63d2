//! Exact multivariate Laurent polynomials with big-integer coefficients.
//!
//! Variables are the chamber minors of a base class (see [`VarTable`]).
//! Exponent vectors are dense and may be negative. Terms are kept in a
//! `BTreeMap` under graded-lexicographic order, so equal polynomials always
//! have identical term maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::label::{ChamberLabel, ClassKey, LabelSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("operands use different variable tables")]
    VarTableMismatch,
    #[error("division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable {0} is zero where it carries a negative exponent")]
    ZeroDenominator(usize),
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },
    #[error("label {0} is not a variable of this table")]
    UnknownLabel(ChamberLabel),
}

/// Bijection between the non-unit chamber labels of a base class and
/// variable indices, in ascending label-code order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    base: Option<ClassKey>,
    labels: Vec<ChamberLabel>,
    len: usize,
}

impl VarTable {
    /// Variables for the chamber minors of `base`; `(∅,∅)` is the constant 1.
    pub fn for_class(base: &LabelSet) -> Arc<VarTable> {
        let labels: Vec<ChamberLabel> = base.iter().filter(|l| !l.is_empty()).collect();
        Arc::new(VarTable { base: Some(base.key()), len: labels.len(), labels })
    }

    /// Anonymous variables `x0..x{len-1}`.
    pub fn generic(len: usize) -> Arc<VarTable> {
        Arc::new(VarTable { base: None, labels: Vec::new(), len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn base(&self) -> Option<&ClassKey> {
        self.base.as_ref()
    }

    pub fn labels(&self) -> &[ChamberLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: ChamberLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn name(&self, var: usize) -> String {
        match self.labels.get(var) {
            Some(l) => minor_name(*l),
            None => format!("x{var}"),
        }
    }
}

/// `D[134,123]` style name of a minor.
pub fn minor_name(l: ChamberLabel) -> String {
    let text = l.to_string();
    format!("D[{}]", text.replace('|', ","))
}

/// Dense exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn var(len: usize, var: usize, exp: i32) -> Self {
        let mut e = vec![0; len];
        e[var] = exp;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<i32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn var(vars: &Arc<VarTable>, var: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), var, 1), BigInt::one())
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: BigInt) -> Self {
        assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    /// The chamber minor `label` of the base class; `(∅,∅)` is 1.
    pub fn minor(vars: &Arc<VarTable>, label: ChamberLabel) -> Result<Self, LaurentError> {
        if label.is_empty() {
            return Ok(Self::one(vars));
        }
        let i = vars.index_of(label).ok_or(LaurentError::UnknownLabel(label))?;
        Ok(Self::var(vars, i))
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = (i64, Vec<i32>)>) -> Self {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(Monomial::from_exponents(e), BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
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

    fn check(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(LaurentError::VarTableMismatch)
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut acc: rustc_hash::FxHashMap<Monomial, BigInt> = Default::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly { vars: self.vars.clone(), terms })
    }

    fn scale_monomial(&self, m: &Monomial, c: &BigInt) -> LaurentPoly {
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Componentwise minimum exponent (the monomial content).
    fn min_exponents(&self) -> Monomial {
        let len = self.vars.len();
        let mut mins = vec![i32::MAX; len];
        for m in self.terms.keys() {
            for (lo, &e) in mins.iter_mut().zip(m.0.iter()) {
                *lo = (*lo).min(e);
            }
        }
        Monomial(mins.into_boxed_slice())
    }

    /// Exact quotient `self / den`.
    ///
    /// Both operands are first shifted by their monomial content so they
    /// become polynomials with no monomial factor; the quotient of those is
    /// then found by single-divisor long division under graded-lex order.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(den)?;
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(&self.vars));
        }
        let one = BigInt::one();
        let num_shift = self.min_exponents();
        let den_shift = den.min_exponents();
        let inv = |m: &Monomial| Monomial(m.0.iter().map(|e| -e).collect());
        let mut rem = self.scale_monomial(&inv(&num_shift), &one);
        let divisor = den.scale_monomial(&inv(&den_shift), &one);
        let (lead_m, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut quotient = LaurentPoly::zero(&self.vars);

        if divisor.terms.len() == 1 {
            // monomial divisor: only the coefficient can fail
            for (m, c) in rem.terms {
                let (q, r) = c.div_rem(lead_c);
                if !r.is_zero() {
                    return Err(LaurentError::NotDivisible);
                }
                quotient.terms.insert(m.div(lead_m), q);
            }
        } else {
            while let Some((m, c)) = rem.terms.iter().next_back() {
                if !lead_m.divides(m) {
                    return Err(LaurentError::NotDivisible);
                }
                let (q, r) = c.div_rem(lead_c);
                if !r.is_zero() {
                    return Err(LaurentError::NotDivisible);
                }
                let qm = m.div(lead_m);
                for (dm, dc) in &divisor.terms {
                    rem.add_term(dm.mul(&qm), -(dc * &q));
                }
                quotient.add_term(qm, q);
            }
        }
        let shift = num_shift.div(&den_shift);
        Ok(quotient.scale_monomial(&shift, &one))
    }

    /// Nonzero with every coefficient strictly positive.
    pub fn is_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(|c| c.is_positive())
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.vars.len() {
            return Err(LaurentError::PointLength { got: point.len(), expected: self.vars.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && point[i].is_zero() {
                    return Err(LaurentError::ZeroDenominator(i));
                }
                term *= point[i].pow_signed(e);
            }
            total += term;
        }
        Ok(total)
    }
}

/// Rational `base^e` for signed `e`.
trait RationalPow {
    fn pow_signed(&self, e: i32) -> BigRational;
}

impl RationalPow for BigRational {
    fn pow_signed(&self, e: i32) -> BigRational {
        let p = num_traits::pow(self.clone(), e.unsigned_abs() as usize);
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending canonical order, e.g.
    /// `D[34,12]*D[3,1]^-1*D[1,1] + D[13,12]*D[4,1]*D[3,1]^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(mag.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars.name(v)),
                    _ => parts.push(format!("{}^{}", self.vars.name(v), e)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(vars: &Arc<VarTable>, i: usize) -> LaurentPoly {
        LaurentPoly::var(vars, i)
    }

    fn inv(vars: &Arc<VarTable>, i: usize) -> LaurentPoly {
        LaurentPoly::monomial(vars, Monomial::var(vars.len(), i, -1), BigInt::one())
    }

    #[test]
    fn ring_identities() {
        let v = VarTable::generic(3);
        let p = x(&v, 0).add(&x(&v, 1)).unwrap();
        assert_eq!(p.add(&LaurentPoly::zero(&v)).unwrap(), p);
        assert_eq!(p.mul(&LaurentPoly::one(&v)).unwrap(), p);
        let q = x(&v, 0).sub(&x(&v, 1)).unwrap();
        let want = x(&v, 0).mul(&x(&v, 0)).unwrap().sub(&x(&v, 1).mul(&x(&v, 1)).unwrap()).unwrap();
        assert_eq!(p.mul(&q).unwrap(), want);
        assert_eq!(x(&v, 0).mul(&inv(&v, 0)).unwrap(), LaurentPoly::one(&v));
    }

    #[test]
    fn monomial_divisor() {
        let v = VarTable::generic(5);
        let num = x(&v, 0).mul(&x(&v, 1)).unwrap().add(&x(&v, 2).mul(&x(&v, 3)).unwrap()).unwrap();
        let q = num.exact_div(&x(&v, 4)).unwrap();
        let want = x(&v, 0)
            .mul(&x(&v, 1))
            .unwrap()
            .mul(&inv(&v, 4))
            .unwrap()
            .add(&x(&v, 2).mul(&x(&v, 3)).unwrap().mul(&inv(&v, 4)).unwrap())
            .unwrap();
        assert_eq!(q, want);
    }

    #[test]
    fn polynomial_divisor() {
        let v = VarTable::generic(2);
        let a = x(&v, 0).mul(&x(&v, 0)).unwrap().sub(&x(&v, 1).mul(&x(&v, 1)).unwrap()).unwrap();
        let d = x(&v, 0).sub(&x(&v, 1)).unwrap();
        assert_eq!(a.exact_div(&d).unwrap(), x(&v, 0).add(&x(&v, 1)).unwrap());
    }

    #[test]
    fn not_divisible() {
        let v = VarTable::generic(2);
        let num = x(&v, 0).add(&x(&v, 1)).unwrap();
        let den = x(&v, 0).add(&LaurentPoly::constant(&v, 2).mul(&x(&v, 1)).unwrap()).unwrap();
        assert_eq!(num.exact_div(&den), Err(LaurentError::NotDivisible));
        assert_eq!(num.exact_div(&LaurentPoly::zero(&v)), Err(LaurentError::DivisionByZero));
        let two = LaurentPoly::constant(&v, 2);
        assert_eq!(x(&v, 0).exact_div(&two), Err(LaurentError::NotDivisible));
    }

    #[test]
    fn laurent_divisor_with_monomial_content() {
        let v = VarTable::generic(3);
        // (x0 + x1) * x2^-1  divides  (x0^2 - x1^2) * x2^-3
        let d = x(&v, 0).add(&x(&v, 1)).unwrap().mul(&inv(&v, 2)).unwrap();
        let q = x(&v, 0).sub(&x(&v, 1)).unwrap().mul(&inv(&v, 2)).unwrap().mul(&inv(&v, 2)).unwrap();
        let n = d.mul(&q).unwrap();
        assert_eq!(n.exact_div(&d).unwrap(), q);
    }

    #[test]
    fn positivity() {
        let v = VarTable::generic(3);
        let p = x(&v, 0).mul(&inv(&v, 1)).unwrap().add(&LaurentPoly::constant(&v, 2).mul(&x(&v, 2)).unwrap()).unwrap();
        assert!(p.is_positive());
        assert!(!x(&v, 0).sub(&x(&v, 1)).unwrap().is_positive());
        assert!(!LaurentPoly::zero(&v).is_positive());
    }

    #[test]
    fn evaluation() {
        let v = VarTable::generic(2);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let pt = [r(3, 1), r(2, 1)];
        assert_eq!(LaurentPoly::one(&v).eval(&pt).unwrap(), r(1, 1));
        assert_eq!(x(&v, 0).mul(&inv(&v, 1)).unwrap().eval(&pt).unwrap(), r(3, 2));
        let zero_pt = [r(3, 1), r(0, 1)];
        assert_eq!(inv(&v, 1).eval(&zero_pt), Err(LaurentError::ZeroDenominator(1)));
        assert!(matches!(x(&v, 0).eval(&pt[..1]), Err(LaurentError::PointLength { .. })));
    }

    #[test]
    fn table_mismatch() {
        let a = VarTable::generic(2);
        let b = VarTable::generic(3);
        assert_eq!(x(&a, 0).add(&x(&b, 0)), Err(LaurentError::VarTableMismatch));
    }

    #[test]
    fn rendering() {
        let v = VarTable::generic(2);
        let p = x(&v, 0).mul(&inv(&v, 1)).unwrap().sub(&LaurentPoly::constant(&v, 3)).unwrap();
        assert_eq!(p.to_string(), "x0*x1^-1 - 3");
        let labels: LabelSet = ["1|1", "2|1"].iter().map(|s| s.parse().unwrap()).collect();
        let vt = VarTable::for_class(&labels);
        let q = LaurentPoly::minor(&vt, "2|1".parse().unwrap()).unwrap();
        assert_eq!(q.to_string(), "D[2,1]");
        assert_eq!(LaurentPoly::minor(&vt, ChamberLabel::EMPTY).unwrap().to_string(), "1");
    }
}
