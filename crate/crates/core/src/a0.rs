//! The algebraic crossed product `A₀ = span G·D₀` and its corner at the
//! distinguished projection `p = χ_M`.
//!
//! An element is a finite sum `Σ g·(λ_g·1 + f_g)` with `f_g ∈ D₀`. The formal
//! unit coefficients `λ_g` realize bare group elements as multipliers; they
//! appear transiently while words in the generators are formed and must be
//! gone (`is_proper`) before an element is treated as an honest member of
//! `A₀`. Corner cutting always produces proper elements because `D₀` is an
//! ideal in its unitization.
//!
//! The product is forced by covariance:
//! `(g₁ f₁)(g₂ f₂) = (g₁g₂)·(α_{g₂⁻¹}(f₁)·f₂)` with `α_g(χ_c) = χ_{β_g(c)}`,
//! and the involution is `(g f)* = g⁻¹·α_g(f*)`.

use std::collections::BTreeMap;

use crate::d0::D0Elem;
use crate::scalar::Scalar;
use crate::system::{Coset, CosetError, CosetSystem, GroupElem};

/// A coefficient `λ·1 + f` in the unitization of `D₀`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitizedD0<S: CosetSystem> {
    pub unit: Scalar,
    pub fin: D0Elem<S>,
}

impl<S: CosetSystem> UnitizedD0<S> {
    pub fn zero() -> Self {
        UnitizedD0 {
            unit: Scalar::zero(),
            fin: D0Elem::zero(),
        }
    }

    pub fn one() -> Self {
        UnitizedD0 {
            unit: Scalar::one(),
            fin: D0Elem::zero(),
        }
    }

    pub fn from_d0(fin: D0Elem<S>) -> Self {
        UnitizedD0 {
            unit: Scalar::zero(),
            fin,
        }
    }

    fn is_structurally_zero(&self) -> bool {
        self.unit.is_zero() && self.fin.is_structurally_zero()
    }

    fn add(&self, other: &Self) -> Self {
        UnitizedD0 {
            unit: &self.unit + &other.unit,
            fin: self.fin.add(&other.fin),
        }
    }

    fn neg(&self) -> Self {
        UnitizedD0 {
            unit: -&self.unit,
            fin: self.fin.neg(),
        }
    }

    fn mul(&self, sys: &S, other: &Self) -> Result<Self, CosetError> {
        let mut fin = self.fin.mul(sys, &other.fin)?;
        fin = fin.add(&other.fin.scale(&self.unit));
        fin = fin.add(&self.fin.scale(&other.unit));
        Ok(UnitizedD0 {
            unit: &self.unit * &other.unit,
            fin,
        })
    }

    fn star(&self) -> Self {
        UnitizedD0 {
            unit: self.unit.conj(),
            fin: self.fin.star(),
        }
    }

    fn act_by(&self, sys: &S, g: &GroupElem<S>) -> Self {
        UnitizedD0 {
            unit: self.unit.clone(),
            fin: self.fin.act_by(sys, g),
        }
    }

    /// `λ·1 + f = 0` forces `λ = 0`: finitely many cosets of infinite-index
    /// subgroups never cover `N`, so the constant part is visible.
    fn is_zero(&self, sys: &S) -> Result<bool, CosetError> {
        Ok(self.unit.is_zero() && self.fin.is_zero(sys)?)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct A0Elem<S: CosetSystem> {
    terms: BTreeMap<GroupElem<S>, UnitizedD0<S>>,
}

impl<S: CosetSystem> Default for A0Elem<S> {
    fn default() -> Self {
        A0Elem {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: CosetSystem> A0Elem<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A bare group element `g·1` (a multiplier, not yet proper).
    pub fn from_group(g: GroupElem<S>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, UnitizedD0::one());
        A0Elem { terms }
    }

    /// An element of `D₀` placed at the identity of `G`.
    pub fn from_d0(sys: &S, f: D0Elem<S>) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_structurally_zero() {
            terms.insert(sys.g_id(), UnitizedD0::from_d0(f));
        }
        A0Elem { terms }
    }

    /// A single term `g·f`.
    pub fn from_term(g: GroupElem<S>, f: D0Elem<S>) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_structurally_zero() {
            terms.insert(g, UnitizedD0::from_d0(f));
        }
        A0Elem { terms }
    }

    /// The distinguished projection `p = χ_M` at the identity.
    pub fn proj_p(sys: &S) -> Self {
        Self::from_d0(sys, D0Elem::indicator(sys.m_coset()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem<S>, &UnitizedD0<S>)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, g: GroupElem<S>, coeff: UnitizedD0<S>) {
        if coeff.is_structurally_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_structurally_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        A0Elem {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        A0Elem {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| {
                    (
                        g.clone(),
                        UnitizedD0 {
                            unit: &c.unit * k,
                            fin: c.fin.scale(k),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn mul(&self, sys: &S, other: &Self) -> Result<Self, CosetError> {
        let mut out = Self::zero();
        for (g1, c1) in &self.terms {
            for (g2, c2) in &other.terms {
                let g2_inv = sys.g_inv(g2);
                let moved = c1.act_by(sys, &g2_inv);
                let coeff = moved.mul(sys, c2)?;
                out.add_term(sys.g_mul(g1, g2), coeff);
            }
        }
        Ok(out)
    }

    pub fn star(&self, sys: &S) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            let gi = sys.g_inv(g);
            let coeff = c.star().act_by(sys, g);
            out.add_term(gi, coeff);
        }
        out
    }

    /// No formal unit parts remain: the element is an honest member of `A₀`.
    pub fn is_proper(&self) -> bool {
        self.terms.values().all(|c| c.unit.is_zero())
    }

    /// The proper coefficients, failing when a unit part remains.
    #[allow(clippy::type_complexity)]
    pub fn proper_terms(&self) -> Result<Vec<(GroupElem<S>, D0Elem<S>)>, CosetError> {
        self.terms
            .iter()
            .map(|(g, c)| {
                if c.unit.is_zero() {
                    Ok((g.clone(), c.fin.clone()))
                } else {
                    Err(CosetError::ImproperElement)
                }
            })
            .collect()
    }

    /// Extract a `D₀` element: proper and supported at the identity.
    pub fn as_d0(&self, sys: &S) -> Result<D0Elem<S>, CosetError> {
        let mut out = D0Elem::zero();
        let e = sys.g_id();
        for (g, c) in &self.terms {
            if !c.unit.is_zero() {
                return Err(CosetError::ImproperElement);
            }
            if *g == e {
                out = out.add(&c.fin);
            } else if !c.fin.is_zero(sys)? {
                return Err(CosetError::Internal(
                    "element is supported outside the identity".into(),
                ));
            }
        }
        Ok(out)
    }

    pub fn is_zero_a0(&self, sys: &S) -> Result<bool, CosetError> {
        for c in self.terms.values() {
            if !c.is_zero(sys)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn eq_a0(&self, sys: &S, other: &Self) -> Result<bool, CosetError> {
        if self == other {
            return Ok(true);
        }
        self.sub(other).is_zero_a0(sys)
    }
}

/// An element of the corner `pA₀p`, with the certificate `p·z·p = z` checked
/// at construction. The corner is unital with unit `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CornerElem<S: CosetSystem> {
    elem: A0Elem<S>,
}

impl<S: CosetSystem> CornerElem<S> {
    /// Compress an arbitrary multiplier-algebra element: `p·z·p`. The result
    /// is always proper because `D₀` absorbs the formal units.
    pub fn cut(sys: &S, z: &A0Elem<S>) -> Result<Self, CosetError> {
        let p = A0Elem::proj_p(sys);
        let cut = p.mul(sys, z)?.mul(sys, &p)?;
        if !cut.is_proper() {
            return Err(CosetError::Internal("corner cut left a formal unit".into()));
        }
        Ok(CornerElem { elem: cut })
    }

    /// Wrap an element already known to lie in the corner; verified.
    pub fn certify(sys: &S, z: A0Elem<S>) -> Result<Self, CosetError> {
        let p = A0Elem::proj_p(sys);
        let cut = p.mul(sys, &z)?.mul(sys, &p)?;
        if !cut.eq_a0(sys, &z)? {
            return Err(CosetError::Internal(
                "element is not fixed by the corner cut".into(),
            ));
        }
        Ok(CornerElem { elem: z })
    }

    pub fn unit(sys: &S) -> Self {
        CornerElem {
            elem: A0Elem::proj_p(sys),
        }
    }

    pub fn elem(&self) -> &A0Elem<S> {
        &self.elem
    }

    pub fn into_elem(self) -> A0Elem<S> {
        self.elem
    }

    pub fn mul(&self, sys: &S, other: &Self) -> Result<Self, CosetError> {
        let prod = self.elem.mul(sys, &other.elem)?;
        debug_assert!(prod.is_proper());
        Ok(CornerElem { elem: prod })
    }

    pub fn star(&self, sys: &S) -> Self {
        CornerElem {
            elem: self.elem.star(sys),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CornerElem {
            elem: self.elem.add(&other.elem),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CornerElem {
            elem: self.elem.sub(&other.elem),
        }
    }

    pub fn eq_corner(&self, sys: &S, other: &Self) -> Result<bool, CosetError> {
        self.elem.eq_a0(sys, &other.elem)
    }

    pub fn as_d0(&self, sys: &S) -> Result<D0Elem<S>, CosetError> {
        self.elem.as_d0(sys)
    }
}

/// Covariance in `A₀`: `g·p_c·g⁻¹` computed by multiplier arithmetic.
pub fn conjugate_indicator<S: CosetSystem>(
    sys: &S,
    g: &GroupElem<S>,
    c: &Coset<S>,
) -> Result<A0Elem<S>, CosetError> {
    let gg = A0Elem::from_group(g.clone());
    let gi = A0Elem::from_group(sys.g_inv(g));
    let pc = A0Elem::from_d0(sys, D0Elem::indicator(c.clone()));
    gg.mul(sys, &pc)?.mul(sys, &gi)
}
