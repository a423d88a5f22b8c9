//! Exact univariate polynomials and Sturm chains: real-root counting over
//! half-open rational intervals and Sturm-guided bisection brackets.

use crate::error::Error;
use crate::poly::{rat_abs, Poly, Rat, Sym};
use crate::Result;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Dense univariate polynomial with exact rational coefficients, ascending
/// degree, trailing coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().map_or(false, Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Reads a univariate polynomial out of a multivariate one.
    pub fn from_poly(p: &Poly, sym: Sym) -> Result<UniPoly> {
        Ok(UniPoly::new(p.univariate_coeffs(sym)?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean remainder of `self` by `other` (exact rational division).
    fn rem(&self, other: &UniPoly) -> UniPoly {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if other.degree() == 0 {
            return UniPoly::zero();
        }
        let mut r = self.clone();
        let dlead = other.leading().unwrap().clone();
        let dd = other.degree();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let q = r.leading().unwrap() / &dlead;
            let mut new = r.coeffs.clone();
            for (i, c) in other.coeffs.iter().enumerate() {
                new[i + shift] = &new[i + shift] - &(c * &q);
            }
            r = UniPoly::new(new);
        }
        r
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(l) = a.leading() {
            let inv = Rat::one() / l.clone();
            a = a.scale(&inv);
        }
        a
    }

    /// Square-free part `p / gcd(p, p')`; root set unchanged.
    pub fn square_free(&self) -> UniPoly {
        if self.is_zero() || self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, other: &UniPoly) -> UniPoly {
        // long division known to be exact
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len()];
        let dlead = other.leading().unwrap().clone();
        let dd = other.degree();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let c = r.leading().unwrap() / &dlead;
            q[shift] = c.clone();
            let mut new = r.coeffs.clone();
            for (i, oc) in other.coeffs.iter().enumerate() {
                new[i + shift] = &new[i + shift] - &(oc * &c);
            }
            r = UniPoly::new(new);
        }
        debug_assert!(r.is_zero(), "div_exact called with a non-divisor");
        UniPoly::new(q)
    }

    /// Sign at `+∞`.
    fn sign_pos_inf(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(c) => c.cmp(&Rat::zero()),
        }
    }

    /// Sign at `-∞`.
    fn sign_neg_inf(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(c) => {
                let s = c.cmp(&Rat::zero());
                if self.degree() % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }

    /// Cauchy bound: every real root has magnitude below `1 + max |a_i/a_n|`.
    pub fn root_magnitude_bound(&self) -> Rat {
        let lead = match self.leading() {
            None => return Rat::one(),
            Some(l) => l.clone(),
        };
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = rat_abs(&(c / &lead));
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }
}

/// An interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// The signed-remainder Sturm chain of the square-free part of `p`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<SturmChain> {
        if p.is_zero() {
            return Err(Error::param("Sturm chain of the zero polynomial"));
        }
        let p = p.square_free();
        let mut chain = vec![p.clone()];
        if p.degree() >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.scale(&-Rat::one()));
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn chain(&self) -> &[UniPoly] {
        &self.chain
    }

    fn variations(&self, at: &Bound) -> usize {
        let signs: Vec<Ordering> = self
            .chain
            .iter()
            .map(|q| match at {
                Bound::NegInf => q.sign_neg_inf(),
                Bound::PosInf => q.sign_pos_inf(),
                Bound::Finite(x) => q.eval(x).cmp(&Rat::zero()),
            })
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = self.variations(lo);
        let b = self.variations(hi);
        a.saturating_sub(b)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]` by Sturm's method.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmChain::new(p)?.count_roots(lo, hi))
}

/// A rational interval `(lo, hi]` containing the largest real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootBracket {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Brackets the largest real root of `p` within `width` by Sturm-guided
/// bisection; `None` when `p` has no real roots.
pub fn max_root_bracket(p: &UniPoly, width: &Rat) -> Result<Option<RootBracket>> {
    if width <= &Rat::zero() {
        return Err(Error::param("bracket width must be positive"));
    }
    let chain = SturmChain::new(p)?;
    let bound = p.root_magnitude_bound();
    let mut lo = -&bound;
    let mut hi = bound;
    if chain.count_roots(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())) == 0 {
        return Ok(None);
    }
    let two = Rat::from_integer(2.into());
    while (&hi - &lo) > *width {
        let mid = (&lo + &hi) / &two;
        if chain.count_roots(&Bound::Finite(mid.clone()), &Bound::Finite(hi.clone())) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(RootBracket { lo, hi }))
}
