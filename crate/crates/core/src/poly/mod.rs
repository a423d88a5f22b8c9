//! Multivariate polynomials over exact rationals.
//!
//! The indeterminate universe is fixed: `r, g, d, n, a, h, S1, S2, t, G, D`.
//! Every polynomial stores dense exponent vectors over that universe, so two
//! polynomials are equal iff their canonical representations are equal.
//! Terms are kept in graded-lexicographic order with no zero coefficients.

mod text;

pub use text::parse_poly;

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational scalar. Always stored reduced with positive denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Number of symbols in the universe.
pub const NSYMS: usize = 11;

/// Named indeterminates. `CapG`/`CapD` print as `G`/`D`, the rotated
/// coordinates of the parabola normal form; the rest print in lowercase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    R,
    G,
    D,
    N,
    A,
    H,
    S1,
    S2,
    T,
    CapG,
    CapD,
}

impl Sym {
    pub const ALL: [Sym; NSYMS] = [
        Sym::R,
        Sym::G,
        Sym::D,
        Sym::N,
        Sym::A,
        Sym::H,
        Sym::S1,
        Sym::S2,
        Sym::T,
        Sym::CapG,
        Sym::CapD,
    ];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Sym::R => 0,
            Sym::G => 1,
            Sym::D => 2,
            Sym::N => 3,
            Sym::A => 4,
            Sym::H => 5,
            Sym::S1 => 6,
            Sym::S2 => 7,
            Sym::T => 8,
            Sym::CapG => 9,
            Sym::CapD => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::R => "r",
            Sym::G => "g",
            Sym::D => "d",
            Sym::N => "n",
            Sym::A => "a",
            Sym::H => "h",
            Sym::S1 => "S1",
            Sym::S2 => "S2",
            Sym::T => "t",
            Sym::CapG => "G",
            Sym::CapD => "D",
        }
    }

    /// TeX rendering of the symbol name.
    pub fn tex_name(self) -> &'static str {
        match self {
            Sym::S1 => "S_1",
            Sym::S2 => "S_2",
            other => other.name(),
        }
    }

    pub fn from_name(s: &str) -> Option<Sym> {
        Sym::ALL.iter().copied().find(|sym| sym.name() == s)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense exponent vector over the symbol universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Expo([u16; NSYMS]);

impl Expo {
    pub fn unit() -> Expo {
        Expo([0; NSYMS])
    }

    pub fn of(sym: Sym, e: u16) -> Expo {
        let mut v = [0u16; NSYMS];
        v[sym.index()] = e;
        Expo(v)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    #[inline]
    pub fn exp(&self, sym: Sym) -> u16 {
        self.0[sym.index()]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Expo) -> Expo {
        let mut v = [0u16; NSYMS];
        for i in 0..NSYMS {
            v[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow");
        }
        Expo(v)
    }

    /// Symbols appearing with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = Sym> + '_ {
        Sym::ALL
            .iter()
            .copied()
            .filter(move |s| self.0[s.index()] != 0)
    }
}

impl Ord for Expo {
    // Graded lexicographic: total degree first, then the exponent vector.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Expo, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Expo::unit(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    /// The polynomial `p/q`.
    pub fn frac(p: i64, q: i64) -> Poly {
        Poly::constant(ratio(p, q))
    }

    pub fn sym(s: Sym) -> Poly {
        Poly::term(Rat::one(), Expo::of(s, 1))
    }

    pub fn term(c: Rat, e: Expo) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Expo::degree).max().unwrap_or(0)
    }

    /// Degree in a single symbol.
    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms
            .keys()
            .map(|e| u32::from(e.exp(s)))
            .max()
            .unwrap_or(0)
    }

    /// Some(c) iff the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// Symbols genuinely appearing in the polynomial.
    pub fn support(&self) -> Vec<Sym> {
        let mut seen = [false; NSYMS];
        for e in self.terms.keys() {
            for s in e.support() {
                seen[s.index()] = true;
            }
        }
        Sym::ALL
            .iter()
            .copied()
            .filter(|s| seen[s.index()])
            .collect()
    }

    pub fn iter_terms(&self) -> impl DoubleEndedIterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes the bound symbols by polynomials; unbound symbols survive.
    pub fn subst(&self, bindings: &BTreeMap<Sym, Poly>) -> Poly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = Poly::zero();
        // Cache powers of each binding as they are needed.
        let mut pow_cache: BTreeMap<(Sym, u16), Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut residual = [0u16; NSYMS];
            let mut factor = Poly::constant(c.clone());
            for s in Sym::ALL {
                let exp = e.exp(s);
                if exp == 0 {
                    continue;
                }
                if let Some(val) = bindings.get(&s) {
                    let p = pow_cache
                        .entry((s, exp))
                        .or_insert_with(|| val.pow(u32::from(exp)))
                        .clone();
                    factor = &factor * &p;
                } else {
                    residual[s.index()] = exp;
                }
            }
            out += &(&factor * &Poly::term(Rat::one(), Expo(residual)));
        }
        out
    }

    /// Substitutes a single symbol.
    pub fn subst_sym(&self, s: Sym, value: &Poly) -> Poly {
        let mut b = BTreeMap::new();
        b.insert(s, value.clone());
        self.subst(&b)
    }

    /// Full numeric evaluation. Errors if any symbol remains unbound.
    pub fn eval(&self, values: &BTreeMap<Sym, Rat>) -> Result<Rat, Error> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for s in e.support() {
                let x = values.get(&s).ok_or_else(|| {
                    Error::NotUnivariate(format!("symbol {s} unbound in evaluation"))
                })?;
                for _ in 0..e.exp(s) {
                    v *= x;
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Coefficient of `sym^k`, a polynomial in the remaining symbols.
    pub fn coeff_of(&self, sym: Sym, k: u16) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.exp(sym) == k {
                let mut rest = e.0;
                rest[sym.index()] = 0;
                out.add_term(Expo(rest), c.clone());
            }
        }
        out
    }

    /// Groups the polynomial by joint exponents of `syms`; each key is the
    /// exponent tuple in the given order, each value the cofactor.
    pub fn coefficients_in(&self, syms: &[Sym]) -> BTreeMap<Vec<u16>, Poly> {
        let mut out: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u16> = syms.iter().map(|s| e.exp(*s)).collect();
            let mut rest = e.0;
            for s in syms {
                rest[s.index()] = 0;
            }
            out.entry(key)
                .or_default()
                .add_term(Expo(rest), c.clone());
        }
        out
    }

    /// Dense coefficient vector (ascending degree) of a univariate
    /// polynomial in `sym`. Errors if any other symbol occurs.
    pub fn univariate_coeffs(&self, sym: Sym) -> Result<Vec<Rat>, Error> {
        for s in self.support() {
            if s != sym {
                return Err(Error::NotUnivariate(format!(
                    "expected a polynomial in {sym} only, found {s}"
                )));
            }
        }
        let deg = self.degree_in(sym) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e.exp(sym) as usize] = c.clone();
        }
        Ok(coeffs)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        let out = &*self * rhs;
        *self = out;
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl From<Sym> for Poly {
    fn from(s: Sym) -> Poly {
        Poly::sym(s)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

/// `C(x, k) = x(x-1)...(x-k+1)/k!` for a polynomial argument.
pub fn poly_binomial(x: &Poly, k: u32) -> Poly {
    let mut num = Poly::one();
    for t in 0..k {
        num = &num * &(x - &Poly::int(i64::from(t)));
    }
    let mut kfact = Rat::one();
    for t in 1..=k {
        kfact *= rat(i64::from(t));
    }
    num.scale(&(Rat::one() / kfact))
}

/// `C(r-1+i, m)` as a degree-`m` polynomial in `r`: the falling factorial
/// `(r-1+i)(r-2+i)...(r+i-m)/m!`. Integer-valued at every integer `r >= 1`.
pub fn binom_in_r(i: i64, m: i64) -> Result<Poly, Error> {
    if m < 0 {
        return Err(Error::param(format!("binom_in_r: m = {m} < 0")));
    }
    if m > i {
        return Err(Error::param(format!("binom_in_r: m = {m} exceeds i = {i}")));
    }
    let x = &Poly::sym(Sym::R) + &Poly::int(i - 1);
    Ok(poly_binomial(&x, m as u32))
}

/// Integer binomial as an exact rational, `C(n, k)` with `n` rational.
pub fn rat_binomial(n: &Rat, k: u32) -> Rat {
    let mut num = Rat::one();
    for t in 0..k {
        num *= n - rat(i64::from(t));
    }
    let mut kfact = Rat::one();
    for t in 1..=k {
        kfact *= rat(i64::from(t));
    }
    num / kfact
}

/// Convenience: `|c|` of a rational.
pub fn rat_abs(c: &Rat) -> Rat {
    if c.is_negative() {
        -c.clone()
    } else {
        c.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Poly {
        parse_poly(src).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let g2 = Poly::sym(Sym::G).pow(2);
        assert!((&g2 + &-&g2).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let g = Poly::sym(Sym::G);
        let lhs = &(&g - &Poly::one()) * &(&g + &Poly::one());
        assert_eq!(lhs, &g.pow(2) - &Poly::one());
    }

    #[test]
    fn square_of_linear_form() {
        // (37g - 41)^2, the Ulrich a=1 quadratic factor.
        let f = &Poly::int(37) * &Poly::sym(Sym::G);
        let f = &f - &Poly::int(41);
        assert_eq!(f.pow(2), p("1369*g^2 - 3034*g + 1681"));
    }

    #[test]
    fn subst_expands_composition() {
        // t^2 with t -> 2n^2(g-1) gives 4n^4(g-1)^2.
        let t2 = Poly::sym(Sym::T).pow(2);
        let gm1 = &Poly::sym(Sym::G) - &Poly::one();
        let val = &(&Poly::int(2) * &Poly::sym(Sym::N).pow(2)) * &gm1;
        let got = t2.subst_sym(Sym::T, &val);
        let want = &(&Poly::int(4) * &Poly::sym(Sym::N).pow(4)) * &gm1.pow(2);
        assert_eq!(got, want);
    }

    #[test]
    fn subst_empty_is_identity() {
        let f = p("r^2*g - 3*d + 1/2");
        assert_eq!(f.subst(&BTreeMap::new()), f);
    }

    #[test]
    fn binom_in_r_base_cases() {
        assert_eq!(binom_in_r(0, 0).unwrap(), Poly::one());
        // C(r+2, 3) = (r+2)(r+1)r/6
        let want = p("1/6*r^3 + 1/2*r^2 + 1/3*r");
        assert_eq!(binom_in_r(3, 3).unwrap(), want);
        // i=4, m=4 at r=1 is C(4,4) = 1
        let b = binom_in_r(4, 4).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(Sym::R, rat(1));
        assert_eq!(b.eval(&vals).unwrap(), rat(1));
    }

    #[test]
    fn binom_in_r_matches_integer_binomials() {
        for i in 0..=8i64 {
            for m in 0..=i {
                let b = binom_in_r(i, m).unwrap();
                for r in 1..=10i64 {
                    let mut vals = BTreeMap::new();
                    vals.insert(Sym::R, rat(r));
                    let got = b.eval(&vals).unwrap();
                    let want = rat_binomial(&rat(r - 1 + i), m as u32);
                    assert_eq!(got, want, "i={i} m={m} r={r}");
                }
            }
        }
    }

    #[test]
    fn binom_in_r_rejects_bad_params() {
        assert!(binom_in_r(3, -1).is_err());
        assert!(binom_in_r(2, 3).is_err());
    }

    #[test]
    fn pow_negative_style_errors_are_not_representable() {
        // pow takes u32; the unsupported negative case is unrepresentable by
        // construction, which is how this module enforces it.
        let f = p("g + 1");
        assert_eq!(f.pow(0), Poly::one());
    }

    #[test]
    fn coeff_extraction() {
        let f = p("3*g^2*d + 5*g^2 - 7*d + 2");
        assert_eq!(f.coeff_of(Sym::G, 2), p("3*d + 5"));
        assert_eq!(f.coeff_of(Sym::D, 1), p("3*g^2 - 7"));
        let by_gd = f.coefficients_in(&[Sym::G, Sym::D]);
        assert_eq!(by_gd[&vec![2, 1]], Poly::int(3));
        assert_eq!(by_gd[&vec![0, 0]], Poly::int(2));
    }

    #[test]
    fn univariate_conversion_guards_support() {
        assert!(p("g^2 - 1").univariate_coeffs(Sym::G).is_ok());
        assert!(p("g*d").univariate_coeffs(Sym::G).is_err());
    }
}
