//! The commutative *-algebra spanned by coset indicators.
//!
//! An element is a finite formal combination `Σ c_i · χ_{x_i U_i}` with
//! Gaussian-rational coefficients and canonical cosets. Multiplication
//! refines both factors to a common subgroup from the family,
//! `χ_{xU}·χ_{yV} = Σ_{zW ⊆ xU ∩ yV} χ_{zW}`, and equality is decided by
//! refining the difference to the folded meet of all support subgroups.
//!
//! Elements are stored as given (lazy normalization); refinement happens only
//! inside products and equality tests, guarded by the instance's refinement
//! budget.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::system::{Coset, CosetError, CosetSystem, GroupElem};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct D0Elem<S: CosetSystem> {
    terms: BTreeMap<Coset<S>, Scalar>,
}

impl<S: CosetSystem> Default for D0Elem<S> {
    fn default() -> Self {
        D0Elem {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: CosetSystem> D0Elem<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single indicator `p_c = χ_c` with coefficient one.
    pub fn indicator(c: Coset<S>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c, Scalar::one());
        D0Elem { terms }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Coset<S>, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (c, s) in pairs {
            out.add_term(c, s);
        }
        out
    }

    fn add_term(&mut self, c: Coset<S>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coset<S>, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Structurally zero (no stored terms). A structurally nonzero element
    /// can still be the zero function; see [`D0Elem::is_zero`].
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, s) in &other.terms {
            out.add_term(c.clone(), s.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        D0Elem {
            terms: self.terms.iter().map(|(c, s)| (c.clone(), -s)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        D0Elem {
            terms: self.terms.iter().map(|(c, s)| (c.clone(), s * k)).collect(),
        }
    }

    /// The involution: coefficients conjugated, cosets untouched.
    pub fn star(&self) -> Self {
        D0Elem {
            terms: self
                .terms
                .iter()
                .map(|(c, s)| (c.clone(), s.conj()))
                .collect(),
        }
    }

    /// The coset-wise action `α_g(χ_c) = χ_{β_g(c)}`.
    pub fn act_by(&self, sys: &S, g: &GroupElem<S>) -> Self {
        Self::from_pairs(self.terms.iter().map(|(c, s)| (sys.act(g, c), s.clone())))
    }

    /// Pointwise evaluation as a function on `N`.
    pub fn eval(&self, sys: &S, n: &S::NElem) -> Scalar {
        let mut acc = Scalar::zero();
        for (c, s) in &self.terms {
            if sys.coset_contains(c, n) {
                acc = &acc + s;
            }
        }
        acc
    }

    /// Product of two indicators as a list of common-refinement cosets.
    fn indicator_mul(sys: &S, c1: &Coset<S>, c2: &Coset<S>) -> Result<Vec<Coset<S>>, CosetError> {
        if c1.sub() == c2.sub() {
            return Ok(if c1 == c2 { vec![c1.clone()] } else { vec![] });
        }
        if sys.sub_subset(c1.sub(), c2.sub()) {
            // xU ⊆ yV or disjoint
            return Ok(if sys.coset_contains(c2, c1.rep()) {
                vec![c1.clone()]
            } else {
                vec![]
            });
        }
        if sys.sub_subset(c2.sub(), c1.sub()) {
            return Ok(if sys.coset_contains(c1, c2.rep()) {
                vec![c2.clone()]
            } else {
                vec![]
            });
        }
        let w = sys.sub_meet(c1.sub(), c2.sub());
        let i1 = sys.sub_index(c1.sub(), &w)?;
        let i2 = sys.sub_index(c2.sub(), &w)?;
        let budget = sys.refine_budget();
        if i1.checked_mul(i2).map(|p| p > budget).unwrap_or(true) {
            return Err(CosetError::RefinementBlowup {
                lhs_index: i1,
                rhs_index: i2,
                budget,
            });
        }
        let pieces1 = sys.refine(c1, &w)?;
        let pieces2: std::collections::BTreeSet<Coset<S>> =
            sys.refine(c2, &w)?.into_iter().collect();
        Ok(pieces1
            .into_iter()
            .filter(|p| pieces2.contains(p))
            .collect())
    }

    /// The bilinear product.
    pub fn mul(&self, sys: &S, other: &Self) -> Result<Self, CosetError> {
        let mut out = Self::zero();
        for (c1, s1) in &self.terms {
            for (c2, s2) in &other.terms {
                let coeff = s1 * s2;
                for piece in Self::indicator_mul(sys, c1, c2)? {
                    out.add_term(piece, coeff.clone());
                }
            }
        }
        Ok(out)
    }

    /// Whether the element is the zero function, by refining every term to
    /// the folded meet of all support subgroups (sorted, hence deterministic)
    /// and summing coefficients per refined coset.
    pub fn is_zero(&self, sys: &S) -> Result<bool, CosetError> {
        if self.terms.is_empty() {
            return Ok(true);
        }
        let subs: std::collections::BTreeSet<S::Sub> =
            self.terms.keys().map(|c| c.sub().clone()).collect();
        let mut iter = subs.iter();
        let mut w = iter.next().unwrap().clone();
        for s in iter {
            w = sys.sub_meet(&w, s);
        }
        let budget = sys.refine_budget();
        let mut total: u64 = 0;
        for c in self.terms.keys() {
            let idx = sys.sub_index(c.sub(), &w)?;
            total = total.checked_add(idx).ok_or(CosetError::RefinementBlowup {
                lhs_index: total,
                rhs_index: idx,
                budget,
            })?;
            if total > budget {
                return Err(CosetError::RefinementBlowup {
                    lhs_index: total,
                    rhs_index: idx,
                    budget,
                });
            }
        }
        let mut acc: BTreeMap<Coset<S>, Scalar> = BTreeMap::new();
        for (c, s) in &self.terms {
            for piece in sys.refine(c, &w)? {
                let e = acc.entry(piece).or_insert_with(Scalar::zero);
                *e = &*e + s;
            }
        }
        Ok(acc.values().all(Scalar::is_zero))
    }

    /// Function equality, via `is_zero` of the difference.
    pub fn eq_d0(&self, sys: &S, other: &Self) -> Result<bool, CosetError> {
        if self == other {
            return Ok(true);
        }
        self.sub(other).is_zero(sys)
    }
}
