use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Precomputed data for Q(ζ_N): the reductions of x^e modulo Φ_N for
/// every `0 <= e < N`, in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Debug)]
pub(crate) struct FieldData {
    pub phi: usize,
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut acc = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            acc = poly_div_exact(&acc, &cyclotomic_polynomial(d));
        }
    }
    acc
}

fn build_field(order: u32) -> FieldData {
    let poly = cyclotomic_polynomial(order);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * poly[j];
            }
        }
        cur = next;
    }
    FieldData { phi, powers }
}

pub(crate) fn field(order: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<Vec<Option<Arc<FieldData>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    let idx = order as usize;
    if guard.len() <= idx {
        guard.resize(idx + 1, None);
    }
    guard[idx]
        .get_or_insert_with(|| Arc::new(build_field(order)))
        .clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of the cyclotomic field Q(ζ_N), stored in the power basis
/// modulo the N-th cyclotomic polynomial.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let f = field(order);
        Cyclotomic { order, coeffs: vec![Rational::zero(); f.phi] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    /// Builds Σ c_j ζ_N^j from arbitrary-length coefficients, reducing mod Φ_N.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        let f = field(order);
        let mut out = vec![Rational::zero(); f.phi];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate_power(&f, &mut out, e % order as usize, c);
        }
        Cyclotomic { order, coeffs: out }
    }

    /// ζ_N^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let f = field(order);
        let e = k.rem_euclid(order as i64) as usize;
        let coeffs = f.powers[e].iter().map(|&c| Rational::from_int(c)).collect();
        Cyclotomic { order, coeffs }
    }

    /// e^{2π√-1 · t} for a rational t.
    pub fn exp_2pi_i(t: &Rational) -> Self {
        let (n, d) = t.to_i64_pair().expect("angle too large");
        Cyclotomic::root_of_unity(d as u32, n)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The same element viewed in Q(ζ_M); `M` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "cannot embed Q(ζ_{}) in Q(ζ_{})", self.order, target);
        let f = field(target);
        let step = (target / self.order) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&f, &mut out, (j * step) % target as usize, c);
            }
        }
        Cyclotomic { order: target, coeffs: out }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (self.embed(m), other.embed(m))
    }

    /// The rational value, if the element lies in the prime field.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NonRational(self.to_string()))
        }
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: u32) -> Self {
        let f = field(self.order);
        let mut out = vec![Rational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (j as u64 * k as u64 % self.order as u64) as usize;
                accumulate_power(&f, &mut out, e, c);
            }
        }
        Cyclotomic { order: self.order, coeffs: out }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { order: self.order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order != other.order {
            if other.order == 1 {
                return self.scale(&other.coeffs[0]);
            }
            if self.order == 1 {
                return other.scale(&self.coeffs[0]);
            }
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let f = field(self.order);
        if f.phi == 1 {
            return Cyclotomic { order: self.order, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut raw = vec![Rational::zero(); 2 * f.phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = raw[..f.phi].to_vec();
        for (e, c) in raw.iter().enumerate().skip(f.phi) {
            if !c.is_zero() {
                accumulate_power(&f, &mut out, e % self.order as usize, c);
            }
        }
        Cyclotomic { order: self.order, coeffs: out }
    }

    /// Field norm down to Q together with the product of the non-trivial conjugates.
    fn norm_and_cofactor(&self) -> (Rational, Cyclotomic) {
        let mut cof = Cyclotomic::from_rational(Rational::one()).embed(self.order);
        for k in 2..self.order {
            if k.gcd(&self.order) == 1 {
                cof = cof.mul(&self.galois(k));
            }
        }
        let n = self.mul(&cof).as_rational().expect("field norm must be rational");
        (n, cof)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.order <= 2 {
            return Cyclotomic { order: self.order, coeffs: vec![self.coeffs[0].recip()] };
        }
        let (n, cof) = self.norm_and_cofactor();
        cof.scale(&n.recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::from_rational(Rational::one()).embed(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// √5 as an element of Q(ζ_5): 1 + 2ζ + 2ζ⁴.
    pub fn sqrt5() -> Self {
        let two = Rational::from_int(2);
        Cyclotomic::from_coeffs(
            5,
            &[Rational::one(), two.clone(), Rational::zero(), Rational::zero(), two],
        )
    }
}

fn accumulate_power(f: &FieldData, out: &mut [Rational], e: usize, c: &Rational) {
    for (slot, &p) in out.iter_mut().zip(&f.powers[e]) {
        if p != 0 {
            *slot += &(c * &Rational::from_int(p));
        }
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a cyclotomic literal: {s:?}"));
        let (n, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let order: u32 = n.trim().parse().map_err(|_| bad())?;
        let inner = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let coeffs = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(str::parse).collect::<Result<Vec<Rational>>>()?
        };
        if order == 0 {
            return Err(bad());
        }
        Ok(Cyclotomic::from_coeffs(order, &coeffs))
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn primitive_fourth_root_squares_to_minus_one() {
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.mul(&i).as_rational().unwrap(), q(-1, 1));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let s = (0..5).fold(Cyclotomic::zero(5), |acc, k| acc.add(&Cyclotomic::root_of_unity(5, k)));
        assert!(s.is_zero());
        let t = (1..5).fold(Cyclotomic::zero(5), |acc, k| acc.add(&Cyclotomic::root_of_unity(5, k)));
        assert_eq!(t.scale(&q(50, 1)).as_rational().unwrap(), q(-50, 1));
    }

    #[test]
    fn as_rational_cases() {
        let c = Cyclotomic::from_rational(q(3, 4)).embed(6);
        assert_eq!(c.as_rational().unwrap(), q(3, 4));
        assert!(Cyclotomic::root_of_unity(3, 1).as_rational().is_err());
        // the 5A inner product expansion
        let counts = [38, 36, 45, 40, 45, 36];
        let mut acc = Cyclotomic::from_rational(q(1, 64)).embed(6);
        for (j, &h) in counts.iter().enumerate() {
            let term = Cyclotomic::root_of_unity(6, j as i64).scale(&q(h, 1024));
            acc = acc.add(&term);
        }
        assert_eq!(acc.as_rational().unwrap(), q(5, 1024));
    }

    #[test]
    fn zeta_power_identities() {
        for n in 1..=12u32 {
            let z = Cyclotomic::root_of_unity(n, 1);
            assert_eq!(z.pow(n).as_rational().unwrap(), Rational::one());
            // Π over primitive roots of (x - ζ^k) evaluated at x = 2 equals Φ_n(2)
            let two = Cyclotomic::from_rational(q(2, 1)).embed(n);
            let mut prod = Cyclotomic::from_rational(Rational::one()).embed(n);
            for k in 1..=n {
                if k.gcd(&n) == 1 {
                    prod = prod.mul(&two.sub(&Cyclotomic::root_of_unity(n, k as i64)));
                }
            }
            let phi = cyclotomic_polynomial(n);
            let at2: i64 = phi.iter().rev().fold(0, |acc, &c| acc * 2 + c);
            assert_eq!(prod.as_rational().unwrap(), Rational::from_int(at2));
        }
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let r = Cyclotomic::sqrt5();
        assert_eq!(r.mul(&r).as_rational().unwrap(), q(5, 1));
    }

    #[test]
    fn embedding_and_text_round_trip() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let z6 = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(z3, z6);
        assert_eq!(z3.embed(12), Cyclotomic::root_of_unity(12, 4));
        let s = z6.scale(&q(-2, 3)).to_string();
        let back: Cyclotomic = s.parse().unwrap();
        assert_eq!(back, z6.scale(&q(-2, 3)));
        assert_eq!(Cyclotomic::from_rational(q(1, 2)).to_string(), "1:[1/2]");
    }

    fn arb_elem(order: u32) -> impl Strategy<Value = Cyclotomic> {
        let phi = euler_phi(order) as usize;
        proptest::collection::vec((-20i64..20, 1i64..6), phi)
            .prop_map(move |v| {
                let c: Vec<Rational> = v.into_iter().map(|(n, d)| Rational::new(n, d)).collect();
                Cyclotomic::from_coeffs(order, &c)
            })
    }

    proptest! {
        #[test]
        fn field_axioms_q_zeta12(a in arb_elem(12), b in arb_elem(12), c in arb_elem(12)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv()).as_rational().unwrap(), Rational::one());
            }
        }

        #[test]
        fn mixed_orders_agree(a in arb_elem(5), b in arb_elem(4)) {
            let lhs = a.mul(&b);
            let rhs = a.embed(20).mul(&b.embed(20));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rational_round_trip(n in -100i64..100, d in 1i64..100, order in 1u32..13) {
            let r = Rational::new(n, d);
            prop_assert_eq!(Cyclotomic::from_rational(r.clone()).embed(order).as_rational().unwrap(), r);
        }
    }
}
