//! A number-field instance: `K = Q(θ)` for an algebraic integer `θ` with
//! monic integer minimal polynomial, `N = (K, +)`, `H = K^×`, `M = Z[θ]`.
//!
//! Field elements are coordinate vectors in the power basis `1, θ, …, θ^{n-1}`
//! with exact rational entries; the minimal polynomial is carried by the
//! system, which supplies the reduction `θ^n = α₀ + α₁θ + ⋯ + α_{n-1}θ^{n-1}`.
//! Subgroups (the lattices `aZ[θ]` and their joins) are canonical HNF
//! lattices, so equality of subgroups is structural and independent of the
//! generator chosen.
//!
//! The self-duality data is the top-coordinate functional
//! `φ(a₀ + a₁θ + ⋯ + a_{n-1}θ^{n-1}) = a_{n-1}` and the bicharacter
//! `B(x, y) = φ(xy) mod 1`, valued exactly in `Q/Z`.

use num::{BigInt, BigRational, One, Zero};
use serde_json::Value;

use crate::instances::lattice::{solve_linear, LatticeHnf};
use crate::scalar::{rat_from_str, rat_to_string, QmodZ};
use crate::system::{CosetError, CosetSystem, GroupElem, InstanceConfig};

/// An element of `K` in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElem(pub Vec<BigRational>);

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NumberFieldSystem {
    /// `θ^n = α₀ + α₁θ + ⋯ + α_{n-1}θ^{n-1}`.
    alphas: Vec<BigInt>,
    refine_budget: u64,
}

impl NumberFieldSystem {
    /// Build from the reduction coefficients of a monic integer minimal
    /// polynomial. Irreducibility is assumed, not checked; a reducible
    /// polynomial surfaces later as a `NotInvertible` error.
    pub fn new(alphas: Vec<BigInt>) -> Result<Self, CosetError> {
        if alphas.is_empty() {
            return Err(CosetError::Parse(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if alphas[0].is_zero() {
            return Err(CosetError::Parse(
                "constant term zero: x divides the minimal polynomial".into(),
            ));
        }
        Ok(NumberFieldSystem {
            alphas,
            refine_budget: 1_000_000,
        })
    }

    /// The field `Q(√2)` with `M = Z[√2]`.
    pub fn sqrt2() -> Self {
        Self::new(vec![BigInt::from(2), BigInt::zero()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[BigInt] {
        &self.alphas
    }

    pub fn zero_elem(&self) -> FieldElem {
        FieldElem(vec![BigRational::zero(); self.degree()])
    }

    pub fn one_elem(&self) -> FieldElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = BigRational::one();
        FieldElem(c)
    }

    pub fn from_ints(&self, coords: &[i64]) -> FieldElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        for (i, &k) in coords.iter().enumerate().take(self.degree()) {
            c[i] = BigRational::from_integer(k.into());
        }
        FieldElem(c)
    }

    pub fn from_rationals(&self, coords: Vec<BigRational>) -> Result<FieldElem, CosetError> {
        if coords.len() != self.degree() {
            return Err(CosetError::Parse(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElem(coords))
    }

    /// The generator `θ` itself.
    pub fn theta(&self) -> FieldElem {
        if self.degree() > 1 {
            self.from_ints(&[0, 1])
        } else {
            // degree one: θ = α₀
            FieldElem(vec![BigRational::from_integer(self.alphas[0].clone())])
        }
    }

    /// `θ^i` reduced into the power basis (any `i ≥ 0`).
    pub fn theta_pow(&self, i: usize) -> FieldElem {
        let n = self.degree();
        if i < n {
            let mut c = vec![BigRational::zero(); n];
            c[i] = BigRational::one();
            return FieldElem(c);
        }
        let theta = self.theta();
        let mut acc = self.theta_pow(n - 1);
        for _ in n - 1..i {
            acc = self.mul_field(&acc, &theta);
        }
        acc
    }

    pub fn mul_field(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let n = self.degree();
        if n == 1 {
            // θ is the integer α₀ itself; plain rational multiplication
            return FieldElem(vec![&x.0[0] * &y.0[0]]);
        }
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &x.0[i] * &y.0[j];
                conv[i + j] += t;
            }
        }
        for k in (n..2 * n - 1).rev() {
            if conv[k].is_zero() {
                continue;
            }
            let c = conv[k].clone();
            conv[k] = BigRational::zero();
            for (i, alpha) in self.alphas.iter().enumerate() {
                let t = &c * BigRational::from_integer(alpha.clone());
                conv[k - n + i] += t;
            }
        }
        conv.truncate(n);
        FieldElem(conv)
    }

    /// Exact inverse, solving the multiplication matrix against `e₀`.
    pub fn inv_field(&self, x: &FieldElem) -> Result<FieldElem, CosetError> {
        if x.is_zero() {
            return Err(CosetError::NotInvertible);
        }
        let n = self.degree();
        // column j of the matrix is x·θ^j; solve_linear takes row-major A with
        // A[i][j] = coefficient of θ^i in x·θ^j
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.mul_field(x, &self.theta_pow(j)));
        }
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j].0[i].clone()).collect())
            .collect();
        let mut e0 = vec![BigRational::zero(); n];
        e0[0] = BigRational::one();
        let y = solve_linear(&a, &e0)?;
        Ok(FieldElem(y))
    }

    /// The top-coordinate functional `φ`.
    pub fn phi(&self, x: &FieldElem) -> BigRational {
        x.0[self.degree() - 1].clone()
    }

    /// `B(x, y) = φ(xy) mod 1`, the exact character pairing.
    pub fn bichar(&self, x: &FieldElem, y: &FieldElem) -> QmodZ {
        QmodZ::new(self.phi(&self.mul_field(x, y)))
    }

    /// `x ∈ Z[θ]` tested through the pairing: `φ(x·θ^i) ∈ Z` for all `i < n`.
    pub fn selfdual_membership(&self, x: &FieldElem) -> bool {
        (0..self.degree()).all(|i| self.bichar(x, &self.theta_pow(i)).is_zero())
    }

    fn lattice_of(&self, a: &FieldElem) -> Result<LatticeHnf, CosetError> {
        let rows: Vec<Vec<BigRational>> = (0..self.degree())
            .map(|i| self.mul_field(a, &self.theta_pow(i)).0)
            .collect();
        LatticeHnf::from_rational_rows(&rows)
    }
}

impl CosetSystem for NumberFieldSystem {
    type NElem = FieldElem;
    type HElem = FieldElem;
    type Sub = LatticeHnf;

    fn name(&self) -> &'static str {
        "numberfield"
    }

    fn refine_budget(&self) -> u64 {
        self.refine_budget
    }

    fn n_id(&self) -> FieldElem {
        self.zero_elem()
    }

    fn n_op(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(b.0.iter()).map(|(x, y)| x + y).collect())
    }

    fn n_inv(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| -x.clone()).collect())
    }

    fn h_id(&self) -> FieldElem {
        self.one_elem()
    }

    fn h_op(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.mul_field(a, b)
    }

    fn h_inv(&self, a: &FieldElem) -> FieldElem {
        self.inv_field(a)
            .expect("nonzero field element must be invertible")
    }

    fn conj(&self, h: &FieldElem, n: &FieldElem) -> FieldElem {
        self.mul_field(h, n)
    }

    fn m_sub(&self) -> LatticeHnf {
        self.lattice_of(&self.one_elem()).expect("unit lattice")
    }

    fn sub_of_conj(&self, a: &FieldElem) -> LatticeHnf {
        assert!(!a.is_zero(), "zero is not an element of H = K^x");
        self.lattice_of(a)
            .expect("full-rank lattice from nonzero generator")
    }

    fn sub_conj(&self, h: &FieldElem, s: &LatticeHnf) -> LatticeHnf {
        let rows: Vec<Vec<BigRational>> = s
            .rational_rows()
            .into_iter()
            .map(|row| self.mul_field(h, &FieldElem(row)).0)
            .collect();
        LatticeHnf::from_rational_rows(&rows).expect("conjugated lattice stays full rank")
    }

    fn sub_contains(&self, s: &LatticeHnf, n: &FieldElem) -> bool {
        s.contains(&n.0)
    }

    fn sub_reduce(&self, s: &LatticeHnf, n: &FieldElem) -> FieldElem {
        FieldElem(s.reduce(&n.0))
    }

    fn sub_subset(&self, s: &LatticeHnf, t: &LatticeHnf) -> bool {
        s.is_sublattice_of(t)
    }

    /// Common refinement inside the family: containment fast paths, then the
    /// generator-independent closed form `den(S)·den(T)·(S·T)`, where `S·T`
    /// is the lattice spanned by pairwise products of the bases.
    fn sub_meet(&self, s: &LatticeHnf, t: &LatticeHnf) -> LatticeHnf {
        if s.is_sublattice_of(t) {
            return s.clone();
        }
        if t.is_sublattice_of(s) {
            return t.clone();
        }
        let mut rows = Vec::new();
        for r in s.rational_rows() {
            let re = FieldElem(r);
            for q in t.rational_rows() {
                rows.push(self.mul_field(&re, &FieldElem(q)).0);
            }
        }
        let product = LatticeHnf::from_rational_rows(&rows).expect("product lattice is full rank");
        let scale = BigRational::from_integer(s.den() * t.den());
        product.scale(&scale).expect("scaled product lattice")
    }

    fn sub_join(&self, s: &LatticeHnf, t: &LatticeHnf) -> LatticeHnf {
        s.join(t).expect("join of full-rank lattices")
    }

    fn sub_index(&self, big: &LatticeHnf, small: &LatticeHnf) -> Result<u64, CosetError> {
        small.index_in(big)
    }

    fn sub_transversal(
        &self,
        big: &LatticeHnf,
        small: &LatticeHnf,
    ) -> Result<Vec<FieldElem>, CosetError> {
        let reps = small.transversal_in(big, 1 << 22)?;
        Ok(reps.into_iter().map(FieldElem).collect())
    }

    fn in_h_plus(&self, a: &FieldElem) -> bool {
        !a.is_zero() && a.is_integral()
    }

    fn contracting_conjugator(&self, d: &FieldElem) -> Option<FieldElem> {
        if d.is_zero() {
            return None;
        }
        let m = self.m_sub();
        let mut cands = vec![d.clone(), self.h_inv(d)];
        // denominator-cleared copies lie in M ∩ dMd⁻¹ by construction
        for base in cands.clone() {
            let mut den = BigInt::one();
            for c in &base.0 {
                den = num::Integer::lcm(&den, c.denom());
            }
            if !den.is_one() {
                let t = BigRational::from_integer(den);
                cands.push(FieldElem(base.0.iter().map(|c| c * &t).collect()));
            }
        }
        for cand in cands {
            let s = self.sub_of_conj(&cand);
            if s != m && s.is_sublattice_of(&m) {
                return Some(cand);
            }
        }
        None
    }

    fn n_to_json(&self, n: &FieldElem) -> Value {
        Value::Array(
            n.0.iter()
                .map(|c| Value::String(rat_to_string(c)))
                .collect(),
        )
    }

    fn n_from_json(&self, v: &Value) -> Result<FieldElem, CosetError> {
        let arr = v.as_array().ok_or_else(|| {
            CosetError::Parse("field element must be an array of rationals".into())
        })?;
        let coords: Vec<BigRational> = arr
            .iter()
            .map(|c| match c {
                Value::String(s) => rat_from_str(s),
                Value::Number(k) => k
                    .as_i64()
                    .map(|i| BigRational::from_integer(i.into()))
                    .ok_or_else(|| CosetError::Parse(format!("bad coordinate {k}"))),
                other => Err(CosetError::Parse(format!("bad coordinate {other}"))),
            })
            .collect::<Result<_, _>>()?;
        self.from_rationals(coords)
    }

    fn h_to_json(&self, h: &FieldElem) -> Value {
        self.n_to_json(h)
    }

    fn h_from_json(&self, v: &Value) -> Result<FieldElem, CosetError> {
        let x = self.n_from_json(v)?;
        if x.is_zero() {
            return Err(CosetError::Parse("0 is not in H = K^x".into()));
        }
        Ok(x)
    }

    fn sub_to_json(&self, s: &LatticeHnf) -> Value {
        serde_json::json!({
            "den": s.den().to_string(),
            "rows": s
                .rows()
                .iter()
                .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
                .collect::<Vec<_>>(),
        })
    }

    fn sub_from_json(&self, v: &Value) -> Result<LatticeHnf, CosetError> {
        // either an explicit {den, rows} lattice or a generator element
        if let Some(obj) = v.as_object() {
            let den: BigInt = obj
                .get("den")
                .and_then(|d| d.as_str())
                .ok_or_else(|| CosetError::Parse("lattice needs a den field".into()))?
                .parse()
                .map_err(|_| CosetError::Parse("bad lattice denominator".into()))?;
            let rows = obj
                .get("rows")
                .and_then(|r| r.as_array())
                .ok_or_else(|| CosetError::Parse("lattice needs a rows field".into()))?;
            let rat_rows: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| CosetError::Parse("lattice rows must be arrays".into()))?
                        .iter()
                        .map(|x| {
                            let s = x.as_str().ok_or_else(|| {
                                CosetError::Parse("lattice entries are strings".into())
                            })?;
                            let p: BigInt = s
                                .parse()
                                .map_err(|_| CosetError::Parse(format!("bad lattice entry {s}")))?;
                            Ok(BigRational::new(p, den.clone()))
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            return LatticeHnf::from_rational_rows(&rat_rows);
        }
        let gen = self.h_from_json(v)?;
        Ok(self.sub_of_conj(&gen))
    }

    fn default_config(&self) -> InstanceConfig<Self> {
        // samples tuned for a quadratic field; for higher degree the vectors
        // below are padded with zeros and still exercise the lattice paths
        let pad = |pairs: &[(i64, i64)]| -> FieldElem {
            let mut coords = vec![BigRational::zero(); self.degree()];
            for (i, &(p, q)) in pairs.iter().enumerate().take(self.degree()) {
                coords[i] = BigRational::new(p.into(), q.into());
            }
            FieldElem(coords)
        };
        let theta = self.theta();
        let h_plus = vec![
            theta.clone(),
            self.from_ints(&[2]),
            self.from_ints(&[1, 1]),
            self.from_ints(&[3]),
            self.from_ints(&[0, 2]),
            self.from_ints(&[0, 3]),
        ];
        let mut h_plus: Vec<FieldElem> = h_plus.into_iter().filter(|a| self.in_h_plus(a)).collect();
        h_plus.dedup();
        let mut h_all = h_plus.clone();
        h_all.push(self.h_inv(&theta));
        h_all.push(pad(&[(1, 2)]));
        h_all.push(pad(&[(3, 2)]));
        h_all.push(self.from_ints(&[-1]));
        h_all.push(self.h_inv(&self.from_ints(&[1, 1])));
        let mut m_samples = Vec::new();
        for a in -1..=2i64 {
            for b in -1..=1i64 {
                m_samples.push(pad(&[(a, 1), (b, 1)]));
            }
        }
        m_samples.dedup();
        let mut n_samples = m_samples.clone();
        for x in [
            &[(1i64, 2i64)] as &[(i64, i64)],
            &[(0, 1), (1, 2)],
            &[(1, 2), (1, 2)],
            &[(1, 3)],
            &[(0, 1), (1, 3)],
            &[(1, 3), (2, 3)],
            &[(-1, 3), (1, 3)],
        ] {
            n_samples.push(pad(x));
        }
        n_samples.dedup();
        let mut g_samples = Vec::new();
        for n in [self.zero_elem(), self.one_elem(), theta.clone()] {
            for h in [
                self.one_elem(),
                theta.clone(),
                self.from_ints(&[2]),
                self.h_inv(&theta),
                self.from_ints(&[1, 1]),
            ] {
                g_samples.push(GroupElem { n: n.clone(), h });
            }
        }
        InstanceConfig::new(self, h_plus, h_all, m_samples, n_samples, g_samples)
            .expect("default samples are valid")
    }
}
