//! Cohomology model of a polarized K3 surface and surface-level bundle
//! arithmetic: cup products, integration, Segre/Chern conversions, twists,
//! Mukai vectors and the diagonal push-forward.
//!
//! Picard rank 1 is assumed throughout: the first Chern class of every
//! bundle is stored as a multiple `lambda` of the polarization `H` with
//! `H^2 = 2g - 2`. Degree-2 cohomology is modelled by a small list of named
//! generators with an exact Gram pairing; the full 22-dimensional lattice is
//! never materialized. The part of the diagonal class that would need it is
//! kept as a formal middle term with two contraction rules (reproduction and
//! trace), which is all the Fock engine ever consumes.

use crate::error::Error;
use crate::poly::{poly_binomial, Poly, Rat, Sym};
use crate::Result;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Second Betti number of a K3 surface; trace of the formal middle term.
pub const K3_B2: i64 = 22;

/// Euler number of a K3 surface.
pub const K3_EULER: i64 = 24;

/// The cohomology model: genus, Euler number and the degree-2 generators
/// with their Gram pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    genus: Poly,
    euler: i64,
    gen_names: Vec<&'static str>,
    gram: Vec<Vec<Poly>>,
}

impl SurfaceModel {
    /// Polarized K3 with a single degree-2 generator `H`, `H·H = 2g-2`.
    /// The genus may be symbolic (`Sym::G`) or a numeric constant.
    pub fn k3(genus: Poly) -> SurfaceModel {
        let h2 = &(&genus - &Poly::one()) * &Poly::int(2);
        SurfaceModel {
            genus,
            euler: K3_EULER,
            gen_names: vec!["H"],
            gram: vec![vec![h2]],
        }
    }

    /// Numeric-genus convenience constructor.
    pub fn k3_genus(g: i64) -> SurfaceModel {
        SurfaceModel::k3(Poly::int(g))
    }

    /// Abstract model used for fully symbolic Segre computations: one
    /// degree-2 generator `s1` with self-pairing `S1`.
    pub fn k3_abstract_segre() -> SurfaceModel {
        SurfaceModel {
            genus: Poly::sym(Sym::G),
            euler: K3_EULER,
            gen_names: vec!["s1"],
            gram: vec![vec![Poly::sym(Sym::S1)]],
        }
    }

    /// General constructor for tests on non-K3 Euler numbers.
    pub fn with_euler(mut self, euler: i64) -> SurfaceModel {
        self.euler = euler;
        self
    }

    /// Model with `sym` substituted in the genus and the Gram entries.
    pub fn substitute_sym(&self, sym: Sym, value: &Poly) -> SurfaceModel {
        SurfaceModel {
            genus: self.genus.subst_sym(sym, value),
            euler: self.euler,
            gen_names: self.gen_names.clone(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|p| p.subst_sym(sym, value)).collect())
                .collect(),
        }
    }

    pub fn genus(&self) -> &Poly {
        &self.genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    /// `H^2 = 2g - 2`.
    pub fn h_square(&self) -> Poly {
        &(&self.genus - &Poly::one()) * &Poly::int(2)
    }

    pub fn num_gens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_name(&self, i: usize) -> &'static str {
        self.gen_names[i]
    }

    /// Pairing of two degree-2 generators.
    pub fn gram(&self, i: usize, j: usize) -> &Poly {
        &self.gram[i][j]
    }

    fn check_class(&self, c: &SurfaceClass) -> Result<()> {
        if c.deg2.len() != self.num_gens() {
            return Err(Error::ModelMismatch(format!(
                "class has {} degree-2 coordinates, model has {} generators",
                c.deg2.len(),
                self.num_gens()
            )));
        }
        Ok(())
    }

    /// Zero class.
    pub fn zero_class(&self) -> SurfaceClass {
        SurfaceClass {
            deg0: Poly::zero(),
            deg2: vec![Poly::zero(); self.num_gens()],
            deg4: Poly::zero(),
        }
    }

    /// The unit `1` of the cohomology ring.
    pub fn unit(&self) -> SurfaceClass {
        let mut c = self.zero_class();
        c.deg0 = Poly::one();
        c
    }

    /// The point class `[x]`.
    pub fn point(&self) -> SurfaceClass {
        let mut c = self.zero_class();
        c.deg4 = Poly::one();
        c
    }

    /// `coef` times the i-th degree-2 generator.
    pub fn gen_class(&self, i: usize, coef: Poly) -> SurfaceClass {
        let mut c = self.zero_class();
        c.deg2[i] = coef;
        c
    }

    /// Graded cup product. Anything above degree 4 is zero.
    pub fn cup(&self, a: &SurfaceClass, b: &SurfaceClass) -> Result<SurfaceClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        let mut out = self.zero_class();
        out.deg0 = &a.deg0 * &b.deg0;
        for i in 0..self.num_gens() {
            out.deg2[i] = &(&a.deg0 * &b.deg2[i]) + &(&b.deg0 * &a.deg2[i]);
        }
        let mut deg4 = &(&a.deg0 * &b.deg4) + &(&b.deg0 * &a.deg4);
        for i in 0..self.num_gens() {
            for j in 0..self.num_gens() {
                deg4 += &(&(&a.deg2[i] * &b.deg2[j]) * self.gram(i, j));
            }
        }
        out.deg4 = deg4;
        Ok(out)
    }

    /// Integration over the surface: the coefficient of the point class.
    pub fn integrate(&self, a: &SurfaceClass) -> Poly {
        a.deg4.clone()
    }

    /// Push-forward along the diagonal embedding. Requires a homogeneous
    /// input; a degree-0 class produces the formal middle term.
    pub fn diagonal_push(&self, a: &SurfaceClass) -> Result<DiagonalTensor> {
        self.check_class(a)?;
        let pieces = [!a.deg0.is_zero(), a.deg2.iter().any(|c| !c.is_zero()), !a.deg4.is_zero()];
        if pieces.iter().filter(|&&b| b).count() > 1 {
            return Err(Error::param(
                "diagonal_push requires a homogeneous class".to_string(),
            ));
        }
        let mut pure = Vec::new();
        let mut middle = None;
        if !a.deg4.is_zero() {
            // c[x] -> c ([x] ⊗ [x])
            pure.push((self.point_scaled(&a.deg4), self.point()));
        } else if pieces[1] {
            // deg-2 class b -> b ⊗ [x] + [x] ⊗ b
            let b = a.clone();
            pure.push((b.clone(), self.point()));
            pure.push((self.point(), b));
        } else if !a.deg0.is_zero() {
            // c -> c (1 ⊗ [x] + [x] ⊗ 1 + middle), middle trace b2 = 22
            let c = &a.deg0;
            pure.push((self.unit_scaled(c), self.point()));
            pure.push((self.point_scaled(c), self.unit()));
            middle = Some(c.clone());
        }
        Ok(DiagonalTensor { pure, middle })
    }

    fn unit_scaled(&self, c: &Poly) -> SurfaceClass {
        let mut out = self.zero_class();
        out.deg0 = c.clone();
        out
    }

    fn point_scaled(&self, c: &Poly) -> SurfaceClass {
        let mut out = self.zero_class();
        out.deg4 = c.clone();
        out
    }
}

/// A graded cohomology class: multiples of `1`, the degree-2 generators, and
/// the point class `[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    pub deg0: Poly,
    pub deg2: Vec<Poly>,
    pub deg4: Poly,
}

impl SurfaceClass {
    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg4.is_zero() && self.deg2.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Poly) -> SurfaceClass {
        SurfaceClass {
            deg0: &self.deg0 * c,
            deg2: self.deg2.iter().map(|x| x * c).collect(),
            deg4: &self.deg4 * c,
        }
    }

    pub fn add(&self, other: &SurfaceClass) -> SurfaceClass {
        SurfaceClass {
            deg0: &self.deg0 + &other.deg0,
            deg2: self
                .deg2
                .iter()
                .zip(&other.deg2)
                .map(|(x, y)| x + y)
                .collect(),
            deg4: &self.deg4 + &other.deg4,
        }
    }

    pub fn neg(&self) -> SurfaceClass {
        self.scale(&Poly::int(-1))
    }
}

/// Diagonal push-forward of a class: a sum of pure tensors plus, for
/// degree-0 inputs, a formal middle term whose contraction against any
/// degree-2 class reproduces that class and whose full trace is `b2 = 22`.
#[derive(Debug, Clone)]
pub struct DiagonalTensor {
    pub pure: Vec<(SurfaceClass, SurfaceClass)>,
    /// Coefficient of the formal middle term, if present.
    pub middle: Option<Poly>,
}

impl DiagonalTensor {
    /// Contracts the second slot against `b`, returning the class left in
    /// the first slot. Used by tests; the Fock engine consumes slots
    /// directly.
    pub fn contract_second(&self, model: &SurfaceModel, b: &SurfaceClass) -> Result<SurfaceClass> {
        let mut out = model.zero_class();
        for (l, r) in &self.pure {
            let pairing = model.integrate(&model.cup(r, b)?);
            out = out.add(&l.scale(&pairing));
        }
        if let Some(c) = &self.middle {
            // middle contracted against a deg-2 class reproduces the class
            let mut deg2_part = model.zero_class();
            deg2_part.deg2 = b.deg2.clone();
            out = out.add(&deg2_part.scale(c));
        }
        Ok(out)
    }

    /// Full trace: pairs the two slots of every term against each other.
    pub fn full_trace(&self, model: &SurfaceModel) -> Result<Poly> {
        let mut tr = Poly::zero();
        for (l, r) in &self.pure {
            tr += &model.integrate(&model.cup(l, r)?);
        }
        if let Some(c) = &self.middle {
            tr += &c.scale(&Rat::from_integer((model.euler() - 2).into()));
        }
        Ok(tr)
    }
}

/// Rank, first Chern class (as a multiple of `H`) and integrated second
/// Chern class of a bundle, together with its surface context. The record
/// every bundle family reduces to.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleInvariants {
    pub rank: Poly,
    pub lambda: Poly,
    pub c2_int: Poly,
    pub model: SurfaceModel,
    /// True when global generation is known (by construction or citation);
    /// the surface bigness criterion applies only in that case.
    pub gg: bool,
}

/// Witness for the surface-level bigness verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct BignessWitness {
    pub s2_integral: Rat,
    pub big: bool,
}

impl BundleInvariants {
    pub fn new(rank: Poly, lambda: Poly, c2_int: Poly, model: SurfaceModel) -> BundleInvariants {
        BundleInvariants {
            rank,
            lambda,
            c2_int,
            model,
            gg: false,
        }
    }

    pub fn with_gg(mut self, gg: bool) -> BundleInvariants {
        self.gg = gg;
        self
    }

    /// A line bundle `m*H` (rank 1, c2 = 0).
    pub fn line_bundle(m: Poly, model: SurfaceModel) -> BundleInvariants {
        BundleInvariants::new(Poly::one(), m, Poly::zero(), model)
    }

    /// `∫ c1^2 = lambda^2 (2g-2)`.
    pub fn c1_square_int(&self) -> Poly {
        &self.lambda.pow(2) * &self.model.h_square()
    }

    /// Integrated Segre data `(S1, S2) = (∫ s1^2, ∫ s2)`:
    /// `s1 = -c1`, `s2 = c1^2 - c2`.
    pub fn segre_from_chern(&self) -> (Poly, Poly) {
        let s1sq = self.c1_square_int();
        let s2 = &s1sq - &self.c2_int;
        (s1sq, s2)
    }

    /// Tensor by `m*H`: rank fixed, `lambda' = lambda + r m`,
    /// `c2' = c2 + (r-1) lambda m (2g-2) + C(r,2) m^2 (2g-2)`.
    pub fn twist(&self, m: i64) -> BundleInvariants {
        self.twist_by(&Poly::int(m))
    }

    /// Twist by a possibly-symbolic multiple of `H`.
    pub fn twist_by(&self, m: &Poly) -> BundleInvariants {
        let h2 = self.model.h_square();
        let r = &self.rank;
        let lambda = &self.lambda + &(r * m);
        let lin = &(&(r - &Poly::one()) * &(&self.lambda * m)) * &h2;
        let quad = &(&poly_binomial(r, 2) * &m.pow(2)) * &h2;
        let c2 = &(&self.c2_int + &lin) + &quad;
        BundleInvariants {
            rank: r.clone(),
            lambda,
            c2_int: c2,
            model: self.model.clone(),
            gg: self.gg,
        }
    }

    /// Mukai vector `(r, lambda, ∫(c1^2/2 - c2) + r)`.
    pub fn mukai_vector(&self) -> MukaiVector {
        let half = self.c1_square_int().scale(&Rat::new(1.into(), 2.into()));
        let s = &(&half - &self.c2_int) + &self.rank;
        MukaiVector {
            r: self.rank.clone(),
            lambda: self.lambda.clone(),
            s,
            h_square: self.model.h_square(),
        }
    }

    /// Euler characteristic by Hirzebruch–Riemann–Roch:
    /// `χ = ∫c1^2/2 - ∫c2 + 2r`.
    pub fn euler_char(&self) -> Poly {
        let half = self.c1_square_int().scale(&Rat::new(1.into(), 2.into()));
        &(&half - &self.c2_int) + &self.rank.scale(&Rat::from_integer(2.into()))
    }

    /// `μ_H = lambda (2g-2) / r`; requires a numeric nonzero rank.
    pub fn slope(&self) -> Result<Poly> {
        let r = self
            .rank
            .as_constant()
            .ok_or_else(|| Error::param("slope requires a numeric rank"))?;
        if r.is_zero() {
            return Err(Error::param("slope undefined for rank 0"));
        }
        Ok((&self.lambda * &self.model.h_square()).scale(&(Rat::from_integer(1.into()) / r)))
    }

    /// Surface bigness criterion for globally generated (hence nef)
    /// bundles: big iff `∫ s2 > 0`. Errors when global generation is not
    /// asserted or the Segre integral is not numeric.
    pub fn big_on_surface(&self) -> Result<BignessWitness> {
        if !self.gg {
            return Err(Error::unsupported(
                "bigness criterion not applicable: global generation not asserted",
            ));
        }
        let (_, s2) = self.segre_from_chern();
        let v = s2.as_constant().ok_or_else(|| {
            Error::unsupported("bigness verdict needs a numeric Segre integral")
        })?;
        Ok(BignessWitness {
            big: v > Rat::zero(),
            s2_integral: v,
        })
    }

    /// Section count of the tautological twist:
    /// `h^0(F ⊗ mH) · C(h^0(mH) + k - 2, k - 1)` with
    /// `h^0(mH) = m^2(g-1) + 2`. The χ-based count for `h^0(F ⊗ mH)` is
    /// valid only when higher cohomology vanishes, which the caller asserts.
    pub fn h0_tautological_twist(&self, m: i64, k: i64, higher_cohomology_vanishes: bool) -> Result<Poly> {
        if k < 1 {
            return Err(Error::param(format!("h0_tautological_twist: k = {k} < 1")));
        }
        if !higher_cohomology_vanishes {
            return Err(Error::param(
                "h0_tautological_twist: caller must assert vanishing of higher cohomology",
            ));
        }
        let h0_f = self.twist(m).euler_char();
        let gm1 = &self.model.genus().clone() - &Poly::one();
        let h0_l = &(&Poly::int(m * m) * &gm1) + &Poly::int(2);
        let sym_dim = poly_binomial(&(&h0_l + &Poly::int(k - 2)), (k - 1) as u32);
        Ok(&h0_f * &sym_dim)
    }
}

/// Mukai vector `(r, lambda·H, s)` in the coordinates fixed by `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct MukaiVector {
    pub r: Poly,
    pub lambda: Poly,
    pub s: Poly,
    h_square: Poly,
}

impl MukaiVector {
    pub fn new(r: Poly, lambda: Poly, s: Poly, model: &SurfaceModel) -> MukaiVector {
        MukaiVector {
            r,
            lambda,
            s,
            h_square: model.h_square(),
        }
    }

    /// `⟨v, w⟩ = λ_v λ_w (2g-2) - r_v s_w - r_w s_v`.
    pub fn pair(&self, other: &MukaiVector) -> Result<Poly> {
        if self.h_square != other.h_square {
            return Err(Error::ModelMismatch(
                "Mukai pairing requires the same genus context".into(),
            ));
        }
        let lam = &(&self.lambda * &other.lambda) * &self.h_square;
        let cross = &(&self.r * &other.s) + &(&other.r * &self.s);
        Ok(&lam - &cross)
    }

    pub fn self_pair(&self) -> Poly {
        self.pair(self).expect("same context")
    }

    /// Moduli dimension `2 + ⟨v, v⟩`.
    pub fn moduli_dim(&self) -> Poly {
        &Poly::int(2) + &self.self_pair()
    }
}

/// Evaluates a polynomial at numeric bindings, convenience for tests.
pub fn eval_at(p: &Poly, binds: &[(Sym, i64)]) -> Rat {
    let map: BTreeMap<Sym, Rat> = binds
        .iter()
        .map(|(s, v)| (*s, Rat::from_integer((*v).into())))
        .collect();
    p.eval(&map).expect("all symbols bound")
}

// ---------------------------------------------------------------------------
// JSON shapes
// ---------------------------------------------------------------------------

/// JSON shape of bundle invariants; exact values are strings.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BundleInvariantsDto {
    pub rank: String,
    pub lambda: String,
    pub c2: String,
    pub genus: String,
    pub euler: i64,
    pub gg: bool,
}

impl BundleInvariants {
    pub fn to_dto(&self) -> BundleInvariantsDto {
        BundleInvariantsDto {
            rank: self.rank.to_string(),
            lambda: self.lambda.to_string(),
            c2: self.c2_int.to_string(),
            genus: self.model.genus().to_string(),
            euler: self.model.euler(),
            gg: self.gg,
        }
    }
}

/// JSON shape of a Mukai vector; exact values are strings.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MukaiVectorDto {
    pub r: String,
    pub lambda: String,
    pub s: String,
    pub h_square: String,
}

impl MukaiVector {
    pub fn to_dto(&self) -> MukaiVectorDto {
        MukaiVectorDto {
            r: self.r.to_string(),
            lambda: self.lambda.to_string(),
            s: self.s.to_string(),
            h_square: self.h_square.to_string(),
        }
    }
}
