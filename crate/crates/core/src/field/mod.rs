//! Exact arithmetic in the base valued fields.
//!
//! Two backends are provided: rational functions `F_p(t)` with an `s`-adic
//! place (`s` monic irreducible, the `t`-adic place being `s = t`) or the
//! place at infinity, and the rationals `Q` with a `p`-adic place. In every
//! case the residue field is finite of size `q`.

mod poly;

pub use poly::{monics_of_degree, Poly};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ext_int::ExtInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("residue undefined: element has negative valuation {0}")]
    NegativeValuation(ExtInt),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the supported machine width")]
    PrimeTooLarge(u64),
    #[error("place polynomial must be monic and irreducible of positive degree")]
    NotIrreducible,
    #[error("residue field size p^deg(s) does not fit in 64 bits")]
    ResidueTooLarge,
    #[error("the trivial valuation is not supported")]
    TrivialValuation,
    #[error("operation requires the {0} backend")]
    WrongBackend(&'static str),
    #[error("invalid context spec {0:?}")]
    BadContextSpec(String),
}

/// Which field `K` the context computes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// `F_p(t)`.
    FunctionField,
    /// `Q`.
    Rationals,
}

/// The valuation on `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// `v_s` for a monic irreducible `s ∈ F_p[t]`; `s = t` is the `t`-adic place.
    Finite(Poly),
    /// `v_∞(f/g) = deg g − deg f`.
    Infinite,
    /// `v_p` on `Q`.
    PAdic,
}

/// A valued field with finite residue field. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u32,
    place: Place,
    q: u64,
}

/// Reduced fraction of polynomials over `F_p` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn reduce(num: Poly, den: Poly, p: u32) -> Result<RatFun, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun { num, den: Poly::one() });
        }
        let g = num.gcd(&den, p);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g, p).0, den.div_rem(&g, p).0)
        };
        let (lc, den) = den.monic_parts(p);
        let num = if lc == 1 { num } else { num.scale(poly::inv_mod(lc, p), p) };
        Ok(RatFun { num, den })
    }

    fn from_poly(num: Poly) -> RatFun {
        RatFun { num, den: Poly::one() }
    }
}

/// An exact element of `K` in canonical form, so structural equality is
/// field equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElement {
    Fun(RatFun),
    Rat(BigRational),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Fun(f) => f.num.is_zero(),
            FieldElement::Rat(r) => r.is_zero(),
        }
    }

    pub fn as_ratfun(&self) -> Option<&RatFun> {
        match self {
            FieldElement::Fun(f) => Some(f),
            FieldElement::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Fun(_) => None,
        }
    }
}

/// An element of the residue field `F_q`: a polynomial of degree `< deg s`
/// for `s`-adic places, a constant otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    rep: Poly,
}

impl Residue {
    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    /// Position in `0..q`, reading the coefficients as base-`p` digits.
    pub fn index(&self, p: u32) -> u64 {
        self.rep.coeffs().iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<u32, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= 1 << 31 {
        return Err(FieldError::PrimeTooLarge(p));
    }
    Ok(p as u32)
}

/// `v_p(n)` and the cofactor, for nonzero `n`.
fn strip_prime(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let mut k = 0;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return (k, cur);
        }
        cur = q;
        k += 1;
    }
}

/// Inverse of `a` modulo `m` in `[0, m)`, assuming `gcd(a, m) = 1`.
fn bigint_inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl FieldContext {
    /// `F_p(t)` with the `t`-adic valuation.
    pub fn t_adic(p: u64) -> Result<Self, FieldError> {
        Self::s_adic(p, Poly::t())
    }

    /// `F_p(t)` with the valuation at a monic irreducible `s`.
    pub fn s_adic(p: u64, s: Poly) -> Result<Self, FieldError> {
        let p = check_prime(p)?;
        let Some(deg) = s.degree().filter(|&d| d > 0) else {
            return Err(FieldError::TrivialValuation);
        };
        if !s.is_monic() || !s.is_irreducible(p) {
            return Err(FieldError::NotIrreducible);
        }
        let q = (p as u64).checked_pow(deg as u32).ok_or(FieldError::ResidueTooLarge)?;
        Ok(FieldContext { p, place: Place::Finite(s), q })
    }

    /// `F_p(t)` with the degree valuation at infinity.
    pub fn infinite(p: u64) -> Result<Self, FieldError> {
        let p = check_prime(p)?;
        Ok(FieldContext { p, place: Place::Infinite, q: p as u64 })
    }

    /// `Q` with the `p`-adic valuation.
    pub fn p_adic(p: u64) -> Result<Self, FieldError> {
        let p = check_prime(p)?;
        Ok(FieldContext { p, place: Place::PAdic, q: p as u64 })
    }

    /// Parses a context spec: `ff:<p>:t`, `ff:<p>:inf`, `ff:<p>:<s(t)>` or
    /// `q:<p>`.
    pub fn from_spec(spec: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::BadContextSpec(spec.into());
        let mut parts = spec.trim().splitn(3, ':');
        let backend = parts.next().ok_or_else(bad)?;
        let p: u64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let place = parts.next().map(str::trim);
        match (backend, place) {
            ("q", None) => Self::p_adic(p),
            ("ff", Some("t")) => Self::t_adic(p),
            ("ff", Some("inf")) => Self::infinite(p),
            ("ff", Some("trivial")) | ("q", Some("trivial")) => Err(FieldError::TrivialValuation),
            ("ff", Some(s)) => {
                let pp = check_prime(p)?;
                let probe = FieldContext { p: pp, place: Place::Infinite, q: pp as u64 };
                let elt = crate::qf1::parse_element(&probe, s).map_err(|_| bad())?;
                match elt.as_ratfun() {
                    Some(f) if f.den.is_one() => Self::s_adic(p, f.num.clone()),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }

    /// Canonical spec string, inverse of [`FieldContext::from_spec`].
    pub fn spec(&self) -> String {
        match &self.place {
            Place::PAdic => format!("q:{}", self.p),
            Place::Infinite => format!("ff:{}:inf", self.p),
            Place::Finite(s) if *s == Poly::t() => format!("ff:{}:t", self.p),
            Place::Finite(s) => format!("ff:{}:{}", self.p, PolyText(s)),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Size of the residue field.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn backend(&self) -> Backend {
        match self.place {
            Place::PAdic => Backend::Rationals,
            _ => Backend::FunctionField,
        }
    }

    // ---- construction ----

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        match self.backend() {
            Backend::FunctionField => {
                let c = n.rem_euclid(self.p as i64) as u64;
                FieldElement::Fun(RatFun::from_poly(Poly::new([c], self.p)))
            }
            Backend::Rationals => FieldElement::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.backend() {
            Backend::FunctionField => {
                let c = n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0);
                FieldElement::Fun(RatFun::from_poly(Poly::new([c], self.p)))
            }
            Backend::Rationals => FieldElement::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// The indeterminate `t`; function-field backend only.
    pub fn t(&self) -> Result<FieldElement, FieldError> {
        self.from_poly(Poly::t())
    }

    pub fn from_poly(&self, f: Poly) -> Result<FieldElement, FieldError> {
        self.require_function_field()?;
        Ok(FieldElement::Fun(RatFun::from_poly(f)))
    }

    pub fn ratfun(&self, num: Poly, den: Poly) -> Result<FieldElement, FieldError> {
        self.require_function_field()?;
        RatFun::reduce(num, den, self.p).map(FieldElement::Fun)
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        if self.backend() != Backend::Rationals {
            return Err(FieldError::WrongBackend("rationals"));
        }
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement::Rat(BigRational::new(num.into(), den.into())))
    }

    fn require_function_field(&self) -> Result<(), FieldError> {
        match self.backend() {
            Backend::FunctionField => Ok(()),
            Backend::Rationals => Err(FieldError::WrongBackend("function-field")),
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        match (a, b) {
            (FieldElement::Fun(x), FieldElement::Fun(y)) => {
                if x.den == y.den {
                    let num = x.num.add(&y.num, p);
                    return FieldElement::Fun(RatFun::reduce(num, x.den.clone(), p).unwrap());
                }
                let num = x.num.mul(&y.den, p).add(&y.num.mul(&x.den, p), p);
                let den = x.den.mul(&y.den, p);
                FieldElement::Fun(RatFun::reduce(num, den, p).unwrap())
            }
            (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Fun(x) => {
                FieldElement::Fun(RatFun { num: x.num.neg(self.p), den: x.den.clone() })
            }
            FieldElement::Rat(x) => FieldElement::Rat(-x),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        match (a, b) {
            (FieldElement::Fun(x), FieldElement::Fun(y)) => {
                let num = x.num.mul(&y.num, p);
                let den = x.den.mul(&y.den, p);
                FieldElement::Fun(RatFun::reduce(num, den, p).unwrap())
            }
            (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
            _ => mixed(),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match a {
            FieldElement::Fun(x) => {
                FieldElement::Fun(RatFun::reduce(x.den.clone(), x.num.clone(), self.p)?)
            }
            FieldElement::Rat(x) => FieldElement::Rat(x.recip()),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut base = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    // ---- valuation and residue ----

    pub fn valuation(&self, a: &FieldElement) -> ExtInt {
        if a.is_zero() {
            return ExtInt::PosInf;
        }
        match (&self.place, a) {
            (Place::Finite(s), FieldElement::Fun(x)) => {
                ExtInt::Fin(self.poly_val(&x.num, s) - self.poly_val(&x.den, s))
            }
            (Place::Infinite, FieldElement::Fun(x)) => {
                ExtInt::Fin(degree(&x.den) as i64 - degree(&x.num) as i64)
            }
            (Place::PAdic, FieldElement::Rat(x)) => {
                let p = BigInt::from(self.p);
                ExtInt::Fin(strip_prime(x.numer(), &p).0 - strip_prime(x.denom(), &p).0)
            }
            _ => mixed(),
        }
    }

    fn poly_val(&self, f: &Poly, s: &Poly) -> i64 {
        if *s == Poly::t() {
            f.low_degree().unwrap_or(0) as i64
        } else {
            f.strip_factor(s, self.p).0 as i64
        }
    }

    /// Image in the residue field; rejects elements of negative valuation.
    pub fn residue(&self, a: &FieldElement) -> Result<Residue, FieldError> {
        let v = self.valuation(a);
        if v < ExtInt::ZERO {
            return Err(FieldError::NegativeValuation(v));
        }
        if v > ExtInt::ZERO {
            return Ok(Residue { rep: Poly::zero() });
        }
        let p = self.p;
        let rep = match (&self.place, a) {
            (Place::Finite(s), FieldElement::Fun(x)) => {
                let (_, n) = x.num.strip_factor(s, p);
                let (_, d) = x.den.strip_factor(s, p);
                let inv = d.inv_mod(s, p).expect("unit denominator");
                n.mul(&inv, p).rem(s, p)
            }
            (Place::Infinite, FieldElement::Fun(x)) => Poly::constant(x.num.leading(), p),
            (Place::PAdic, FieldElement::Rat(x)) => {
                let pb = BigInt::from(p);
                let (_, n) = strip_prime(x.numer(), &pb);
                let (_, d) = strip_prime(x.denom(), &pb);
                let r = (n * bigint_inv_mod(&d, &pb)).mod_floor(&pb);
                Poly::constant(r.to_u32().unwrap(), p)
            }
            _ => mixed(),
        };
        Ok(Residue { rep })
    }

    /// A uniformizer: an element of valuation 1.
    pub fn uniformizer(&self) -> FieldElement {
        match &self.place {
            Place::Finite(s) => FieldElement::Fun(RatFun::from_poly(s.clone())),
            Place::Infinite => FieldElement::Fun(RatFun { num: Poly::one(), den: Poly::t() }),
            Place::PAdic => self.from_int(self.p as i64),
        }
    }

    /// One lift per residue class; `residue(lifts[i]).index() == i`.
    pub fn residue_lifts(&self) -> Vec<FieldElement> {
        match &self.place {
            Place::Finite(_) => (0..self.q)
                .map(|i| FieldElement::Fun(RatFun::from_poly(Poly::from_index(i, self.p))))
                .collect(),
            Place::Infinite | Place::PAdic => (0..self.q).map(|i| self.from_int(i as i64)).collect(),
        }
    }

    /// The canonical representative of `a` modulo `{x : v(x) ≥ r}`: the local
    /// expansion of `a` in the uniformizer with every digit at position
    /// `≥ r` dropped. Two elements have equal truncations iff their
    /// difference has valuation `≥ r`.
    pub fn truncate(&self, a: &FieldElement, r: i64) -> FieldElement {
        let k = match self.valuation(a) {
            ExtInt::Fin(k) if k < r => k,
            _ => return self.zero(),
        };
        let m = (r - k) as u32;
        let p = self.p;
        match (&self.place, a) {
            (Place::Finite(s), FieldElement::Fun(x)) => {
                let (_, n) = x.num.strip_factor(s, p);
                let (_, d) = x.den.strip_factor(s, p);
                let modulus = s.pow(m, p);
                let unit = n.mul(&d.inv_mod(&modulus, p).expect("unit"), p).rem(&modulus, p);
                let shift = s.pow(k.unsigned_abs() as u32, p);
                let out = if k >= 0 {
                    RatFun::reduce(unit.mul(&shift, p), Poly::one(), p)
                } else {
                    RatFun::reduce(unit, shift, p)
                };
                FieldElement::Fun(out.unwrap())
            }
            (Place::Infinite, FieldElement::Fun(x)) => {
                // In u = 1/t: a = u^k · rev(num)/rev(den).
                let n = x.num.reversed(degree(&x.num));
                let d = x.den.reversed(degree(&x.den));
                let modulus = Poly::monomial(1, m as usize, p);
                let unit = n.mul(&d.inv_mod(&modulus, p).expect("unit"), p).truncate(m as usize);
                // Σ_j unit_j · t^{-(k+j)}, cleared by t^top.
                let top = (k + m as i64 - 1).max(0);
                let mut coeffs = alloc::vec![0u64; (top - k).max(0) as usize + 1];
                for (j, &c) in unit.coeffs().iter().enumerate() {
                    coeffs[(top - k - j as i64) as usize] = c as u64;
                }
                let num = Poly::new(coeffs, p);
                let den = Poly::monomial(1, top as usize, p);
                FieldElement::Fun(RatFun::reduce(num, den, p).unwrap())
            }
            (Place::PAdic, FieldElement::Rat(x)) => {
                let pb = BigInt::from(p);
                let (_, n) = strip_prime(x.numer(), &pb);
                let (_, d) = strip_prime(x.denom(), &pb);
                let modulus = num_traits::pow(pb.clone(), m as usize);
                let unit = (n * bigint_inv_mod(&d, &modulus)).mod_floor(&modulus);
                let shift = num_traits::pow(pb, k.unsigned_abs() as usize);
                let out = if k >= 0 {
                    BigRational::from_integer(unit * shift)
                } else {
                    BigRational::new(unit, shift)
                };
                FieldElement::Rat(out)
            }
            _ => mixed(),
        }
    }

    // ---- enumeration ----

    /// All `p^n` polynomials of degree `< n`, in base-`p` digit order.
    pub fn enumerate_bounded(&self, n: u32) -> Result<Vec<FieldElement>, FieldError> {
        self.require_function_field()?;
        let count = (self.p as u64).checked_pow(n).ok_or(FieldError::ResidueTooLarge)?;
        Ok((0..count)
            .map(|i| FieldElement::Fun(RatFun::from_poly(Poly::from_index(i, self.p))))
            .collect())
    }

    /// Sample points of height `≤ h`: every `π^k · Σ_{i<h} c_i π^i` with
    /// residue lifts `c_i` and `|k| ≤ h`. Deduplicated and sorted.
    pub fn sample_points(&self, h: u32) -> Vec<FieldElement> {
        let lifts = self.residue_lifts();
        let pi = self.uniformizer();
        let mut digits = alloc::vec![self.zero()];
        let mut pi_pow = self.one();
        for _ in 0..h {
            let mut next = Vec::with_capacity(digits.len() * lifts.len());
            for c in &lifts {
                let term = self.mul(c, &pi_pow);
                for a in &digits {
                    next.push(self.add(a, &term));
                }
            }
            digits = next;
            pi_pow = self.mul(&pi_pow, &pi);
        }
        let mut out = BTreeSet::new();
        for k in -(h as i64)..=h as i64 {
            let scale = self.pow(&pi, k).expect("uniformizer is nonzero");
            for a in &digits {
                out.insert(self.mul(a, &scale));
            }
        }
        out.into_iter().collect()
    }

    /// Residue of `a / π^r`; defined when `v(a) ≥ r`.
    pub fn residue_at(&self, a: &FieldElement, r: i64) -> Result<Residue, FieldError> {
        let scaled = self.mul(a, &self.pow(&self.uniformizer(), -r)?);
        self.residue(&scaled)
    }

    pub fn format(&self, a: &FieldElement) -> String {
        format!("{}", ElementText(a))
    }
}

fn degree(f: &Poly) -> usize {
    f.degree().unwrap_or(0)
}

#[cold]
fn mixed() -> ! {
    panic!("field element does not belong to this context's backend")
}

/// ASCII rendering of a polynomial, low degree first: `1+2*t+t^3`.
pub struct PolyText<'a>(pub &'a Poly);

impl fmt::Display for PolyText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (i, &c) in self.0.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

fn is_single_term(f: &Poly) -> bool {
    f.coeffs().iter().filter(|&&c| c != 0).count() <= 1
}

/// Display adapter producing the element syntax accepted by the parser.
pub struct ElementText<'a>(pub &'a FieldElement);

impl fmt::Display for ElementText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldElement::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Fun(x) if x.den.is_one() => write!(f, "{}", PolyText(&x.num)),
            FieldElement::Fun(x) => {
                let wrap = |g: &Poly| !is_single_term(g);
                if wrap(&x.num) {
                    write!(f, "({})", PolyText(&x.num))?;
                } else {
                    write!(f, "{}", PolyText(&x.num))?;
                }
                if wrap(&x.den) {
                    write!(f, "/({})", PolyText(&x.den))
                } else {
                    write!(f, "/{}", PolyText(&x.den))
                }
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ElementText(self).fmt(f)
    }
}
