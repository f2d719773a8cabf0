//! Monogenic orders `O_F = Z[beta]` presented by a monic integer polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::arith::matrix::{det_field, IntMatrix, Matrix};
use crate::arith::poly::{self, IntPoly, Poly, RatPoly};
use crate::arith::resultant::int_resultant;
use crate::arith::ring::{is_squarefree, prime_divisors, ExactDivision, Integers, Rationals, Ring};
use crate::error::{Error, Result};

/// An element of `F` in the power basis `1, beta, ..., beta^(d-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Vec<BigRational>);

impl FieldElement {
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        FieldElement(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        FieldElement(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, if integral.
    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.0.iter().map(BigRational::to_integer).collect())
    }

    pub fn try_ints(&self) -> Result<Vec<BigInt>> {
        self.to_ints().ok_or_else(|| Error::NotIntegral(self.to_string()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// How far the monogenic-order assumption `O_F = Z[beta]` has been checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// `disc(g)` is squarefree, or `g` is quadratic with a fundamental discriminant.
    Certified,
    /// Asserted by the caller, not verified.
    Unverified,
}

#[derive(Clone, Debug, Default)]
pub struct Declarations {
    pub label: Option<String>,
    pub units: Vec<FieldElement>,
    pub roots_of_unity: Vec<(FieldElement, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldSpec {
    label: String,
    poly: IntPoly,
    units: Vec<FieldElement>,
    roots_of_unity: Vec<(FieldElement, u64)>,
    maximality: Maximality,
    real_embeddings: usize,
}

/// Reduces an integer coefficient vector of any length modulo monic `g`.
pub(crate) fn reduce_mod_monic(g: &[BigInt], mut v: Vec<BigInt>) -> Vec<BigInt> {
    let d = g.len() - 1;
    if v.len() < d {
        v.resize(d, BigInt::zero());
        return v;
    }
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for (j, gj) in g.iter().take(d).enumerate() {
            if !gj.is_zero() {
                v[k - d + j] -= &c * gj;
            }
        }
    }
    v.truncate(d);
    v
}

/// Product of two integral elements of `Z[X]/(g)`.
pub(crate) fn mul_int_mod_g(g: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let d = g.len() - 1;
    if d == 1 {
        // Q, or any degree-one presentation
        return reduce_mod_monic(g, vec![&a[0] * &b[0]]);
    }
    let mut out = vec![BigInt::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    reduce_mod_monic(g, out)
}

fn sign_changes(values: &[BigRational]) -> usize {
    let signs: Vec<bool> = values.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots, via a Sturm sequence.
pub fn real_root_count(g: &RatPoly) -> usize {
    let r = Rationals;
    let mut seq = vec![g.clone(), poly::derivative(&r, g)];
    while let Some(last) = seq.last() {
        if last.is_zero() {
            seq.pop();
            break;
        }
        let prev = &seq[seq.len() - 2];
        let rem = poly::rem(&r, prev, last).expect("nonzero divisor");
        if rem.is_zero() {
            break;
        }
        seq.push(poly::neg(&r, &rem));
    }
    let at_pos_inf: Vec<BigRational> = seq.iter().map(|p| p.leading().cloned().unwrap_or_default()).collect();
    let at_neg_inf: Vec<BigRational> = seq
        .iter()
        .map(|p| {
            let l = p.leading().cloned().unwrap_or_default();
            if p.degree().unwrap_or(0) % 2 == 1 {
                -l
            } else {
                l
            }
        })
        .collect();
    sign_changes(&at_neg_inf) - sign_changes(&at_pos_inf)
}

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    let four = BigInt::from(4);
    let r = d.mod_floor(&four);
    if r == BigInt::one() {
        return d != &BigInt::one() && is_squarefree(d);
    }
    if r.is_zero() {
        let k = d / &four;
        let k4 = k.mod_floor(&four);
        return (k4 == BigInt::from(2) || k4 == BigInt::from(3)) && is_squarefree(&k);
    }
    false
}

impl NumberFieldSpec {
    /// Q, encoded by `g = X`, with units `{-1}` and `-1` of order 2.
    pub fn rationals() -> Self {
        let g = IntPoly::from_i64(&[0, 1]);
        let minus_one = FieldElement::from_ints(&[BigInt::from(-1)]);
        make_field(
            g,
            Declarations {
                label: Some("Q".into()),
                units: vec![minus_one.clone()],
                roots_of_unity: vec![(minus_one, 2)],
            },
        )
        .expect("Q is valid")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn declared_units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn declared_roots_of_unity(&self) -> &[(FieldElement, u64)] {
        &self.roots_of_unity
    }

    pub fn maximality(&self) -> Maximality {
        self.maximality
    }

    pub fn real_embeddings(&self) -> usize {
        self.real_embeddings
    }

    /// `r1 + r2 - 1`.
    pub fn unit_rank(&self) -> usize {
        let r1 = self.real_embeddings;
        let r2 = (self.degree() - r1) / 2;
        r1 + r2 - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn discriminant(&self) -> BigInt {
        let d = self.degree();
        let res = int_resultant(&self.poly, &poly::derivative(&Integers, &self.poly)).expect("g nonzero");
        if (d * (d - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    pub(crate) fn g_coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let ints: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        self.element_from_ints(&ints)
    }

    /// Pads (or rejects overlong) coefficient lists to the field degree.
    pub fn element_from_ints(&self, coeffs: &[BigInt]) -> FieldElement {
        let d = self.degree();
        assert!(coeffs.len() <= d, "too many coefficients for degree {d}");
        let mut v = coeffs.to_vec();
        v.resize(d, BigInt::zero());
        FieldElement::from_ints(&v)
    }

    pub fn element_from_rationals(&self, coeffs: &[BigRational]) -> FieldElement {
        let d = self.degree();
        assert!(coeffs.len() <= d, "too many coefficients for degree {d}");
        let mut v = coeffs.to_vec();
        v.resize(d, BigRational::zero());
        FieldElement::from_rationals(v)
    }

    /// `beta^k` in the power basis.
    pub fn beta_power(&self, k: usize) -> FieldElement {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        FieldElement::from_ints(&reduce_mod_monic(self.g_coeffs(), v))
    }

    pub fn integral_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        mul_int_mod_g(self.g_coeffs(), a, b)
    }

    /// Multiplication-by-`x` on the power basis; column `j` holds `x * beta^j`.
    pub fn mul_matrix(&self, x: &FieldElement) -> Matrix<BigRational> {
        let d = self.degree();
        let cols: Vec<FieldElement> = (0..d).map(|j| self.mul(x, &self.beta_power(j))).collect();
        Matrix::from_fn(d, d, |i, j| cols[j].0[i].clone())
    }

    /// Integer multiplication matrix; errors when `x` is not integral.
    pub fn int_mul_matrix(&self, x: &FieldElement) -> Result<IntMatrix> {
        let xi = x.try_ints()?;
        let d = self.degree();
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let mut e = vec![BigInt::zero(); d];
                e[j] = BigInt::one();
                self.integral_mul(&xi, &e)
            })
            .collect();
        Ok(IntMatrix::from_fn(d, d, |i, j| cols[j][i].clone()))
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        det_field(&Rationals, &self.mul_matrix(x))
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        let m = self.mul_matrix(x);
        (0..self.degree()).map(|i| m[(i, i)].clone()).sum()
    }

    /// `x` as a polynomial in `beta` over Q.
    fn as_poly(&self, x: &FieldElement) -> RatPoly {
        Poly::new(&Rationals, x.0.clone())
    }

    fn from_poly(&self, p: &RatPoly) -> FieldElement {
        let g = self.poly.to_rational();
        let r = poly::rem(&Rationals, p, &g).expect("g is monic");
        let mut v = r.into_coeffs();
        v.resize(self.degree(), BigRational::zero());
        FieldElement(v)
    }

    /// Whether `x` is a unit of `Z[beta]`: integral with norm `+-1`.
    pub fn is_integral_unit(&self, x: &FieldElement) -> bool {
        match self.int_mul_matrix(x) {
            Ok(m) => m.det().abs().is_one(),
            Err(_) => false,
        }
    }

    /// Integral inverse of a unit, via the adjugate-derived field inverse.
    pub fn unit_inverse(&self, x: &FieldElement) -> Option<FieldElement> {
        let inv = self.inv(x)?;
        inv.is_integral().then_some(inv)
    }

    pub fn root_of_unity_order_ok(&self, zeta: &FieldElement, n: u64) -> bool {
        if n == 0 || !zeta.is_integral() {
            return false;
        }
        if !self.is_one(&self.pow(zeta, n)) {
            return false;
        }
        prime_divisors(n).into_iter().all(|q| !self.is_one(&self.pow(zeta, n / q)))
    }

    /// A declared root of unity of exactly order `n`, or a power of one whose order is a multiple of `n`.
    pub fn root_of_unity_of_order(&self, n: u64) -> Option<FieldElement> {
        if n == 1 {
            return Some(self.one());
        }
        if n == 2 {
            return Some(self.from_i64(-1));
        }
        self.roots_of_unity
            .iter()
            .find(|(_, k)| k % n == 0)
            .map(|(z, k)| self.pow(z, k / n))
    }

    /// Generators of `O_F^x` that are known: a root of unity of maximal declared
    /// order (at least `-1`) followed by the declared units.
    pub fn unit_group_generators(&self) -> Vec<FieldElement> {
        let torsion = self
            .roots_of_unity
            .iter()
            .max_by_key(|(_, n)| *n)
            .map(|(z, _)| z.clone())
            .unwrap_or_else(|| self.from_i64(-1));
        let mut out = vec![torsion];
        for u in &self.units {
            if !out.contains(u) {
                out.push(u.clone());
            }
        }
        out
    }

    /// Number of declared units that are not roots of unity.
    pub fn declared_free_units(&self) -> usize {
        self.units.iter().filter(|u| !self.is_torsion(u)).count()
    }

    fn is_torsion(&self, u: &FieldElement) -> bool {
        // roots of unity in a degree-d field have order at most a small bound; 2*d^2+2 covers d <= 4
        let bound = (2 * self.degree() * self.degree() + 2) as u64;
        let mut p = u.clone();
        for _ in 0..bound {
            if self.is_one(&p) {
                return true;
            }
            p = self.mul(&p, u);
        }
        false
    }

    pub fn with_units(mut self, units: Vec<FieldElement>) -> Result<Self> {
        for u in &units {
            if !self.is_integral_unit(u) {
                return Err(Error::Declaration(format!("{u} is not a unit (norm != +-1)")));
            }
        }
        self.units = units;
        Ok(self)
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: FieldConfig = toml::from_str(s).map_err(|e| Error::Input(format!("field spec: {e}")))?;
        cfg.build()
    }

    /// `"Q"` or a path to a TOML field description.
    pub fn load(arg: &str) -> Result<Self> {
        if arg == "Q" {
            return Ok(Self::rationals());
        }
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))?;
        Self::from_toml_str(&text)
    }
}

/// Verifies declarations and returns the field.
pub fn make_field(g: IntPoly, decl: Declarations) -> Result<NumberFieldSpec> {
    if !g.is_monic(&Integers) {
        return Err(Error::NotMonic(format!("{:?}", g.coeffs())));
    }
    let d = g.degree().unwrap();
    if d == 0 {
        return Err(Error::Declaration("defining polynomial must have degree >= 1".into()));
    }
    let real_embeddings = real_root_count(&g.to_rational());
    let mut spec = NumberFieldSpec {
        label: decl.label.clone().unwrap_or_else(|| format!("Q[X]/({:?})", g.coeffs())),
        poly: g,
        units: Vec::new(),
        roots_of_unity: Vec::new(),
        maximality: Maximality::Unverified,
        real_embeddings,
    };
    let disc = spec.discriminant();
    spec.maximality = if is_squarefree(&disc) || (d == 2 && is_fundamental_discriminant(&disc)) {
        Maximality::Certified
    } else {
        Maximality::Unverified
    };
    for (z, n) in &decl.roots_of_unity {
        if z.coeffs().len() != d {
            return Err(Error::Declaration(format!("root of unity {z} has wrong length")));
        }
        if !spec.root_of_unity_order_ok(z, *n) {
            return Err(Error::Declaration(format!("{z} is not a primitive {n}-th root of unity")));
        }
    }
    spec.roots_of_unity = decl.roots_of_unity;
    for u in &decl.units {
        if u.coeffs().len() != d {
            return Err(Error::Declaration(format!("unit {u} has wrong length")));
        }
    }
    spec.with_units(decl.units)
}

impl Ring for NumberFieldSpec {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(vec![BigRational::zero(); self.degree()])
    }

    fn one(&self) -> FieldElement {
        self.from_int(&BigInt::one())
    }

    fn from_int(&self, n: &BigInt) -> FieldElement {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = BigRational::from_integer(n.clone());
        FieldElement(v)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|x| -x).collect())
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        if d == 1 {
            return FieldElement(vec![&a.0[0] * &b.0[0]]);
        }
        let mut out = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let g = self.g_coeffs();
        for k in (d..out.len()).rev() {
            if out[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut out[k]);
            for (j, gj) in g.iter().take(d).enumerate() {
                if !gj.is_zero() {
                    out[k - d + j] -= &c * BigRational::from_integer(gj.clone());
                }
            }
        }
        out.truncate(d);
        FieldElement(out)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(FieldElement(vec![a.0[0].recip()]));
        }
        let g = self.poly.to_rational();
        let (gcd, s, _) = poly::xgcd(&Rationals, &self.as_poly(a), &g);
        (gcd.degree() == Some(0)).then(|| self.from_poly(&s))
    }
}

impl ExactDivision for NumberFieldSpec {
    fn div_exact(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntLit {
    Str(String),
    Int(i64),
}

impl IntLit {
    fn parse(&self) -> Result<BigInt> {
        match self {
            IntLit::Int(i) => Ok(BigInt::from(*i)),
            IntLit::Str(s) => s.trim().parse().map_err(|_| Error::Input(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
struct RootDecl {
    element: Vec<IntLit>,
    order: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldConfig {
    label: Option<String>,
    defining_poly: Vec<IntLit>,
    #[serde(default)]
    units: Vec<Vec<IntLit>>,
    #[serde(default)]
    roots_of_unity: Vec<RootDecl>,
}

fn parse_ints(v: &[IntLit]) -> Result<Vec<BigInt>> {
    v.iter().map(IntLit::parse).collect()
}

impl FieldConfig {
    fn build(self) -> Result<NumberFieldSpec> {
        let g = Poly::new(&Integers, parse_ints(&self.defining_poly)?);
        let d = g.degree().ok_or_else(|| Error::Input("empty defining_poly".into()))?;
        let pad = |v: Vec<BigInt>| -> Result<FieldElement> {
            if v.len() > d {
                return Err(Error::Input(format!("element has more than {d} coefficients")));
            }
            let mut v = v;
            v.resize(d, BigInt::zero());
            Ok(FieldElement::from_ints(&v))
        };
        let units = self.units.iter().map(|u| parse_ints(u).and_then(pad)).collect::<Result<Vec<_>>>()?;
        let roots = self
            .roots_of_unity
            .iter()
            .map(|r| Ok((pad(parse_ints(&r.element)?)?, r.order)))
            .collect::<Result<Vec<_>>>()?;
        make_field(g, Declarations { label: self.label, units, roots_of_unity: roots })
    }
}
