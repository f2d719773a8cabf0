//! The kernel group `D(O_F[G])` of a split abelian group ring, from the Milnor
//! square `O_F[G] -> prod O_F`, `O_F[G]/m(prod O_F) -> prod O_F/m`, and the
//! check that it dies after adjoining the certified units.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::matrix::{det_field, solve_field, IntMatrix, Matrix};
use crate::arith::normal_form::hnf;
use crate::arith::ring::Ring;
use crate::capitulation::{capitulation_extension, CapitulationCertificate};
use crate::cokernel::{finite_ring_units_capped, unit_cokernel_capped, UnitGroup, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::field::residue::{ResidueElem, ResidueRing};
use crate::field::spec::{FieldElement, NumberFieldSpec};
use crate::group::Quotient;

/// `O_F[G]` for `G = prod C_{n_i}` with `zeta_n` in `F`, embedded in `prod_chi O_F`.
#[derive(Clone, Debug)]
pub struct SplitGroupAlgebra {
    pub field: NumberFieldSpec,
    pub orders: Vec<u64>,
    pub zeta: FieldElement,
    /// `n = lcm(n_i)`, the order of `zeta`.
    pub exponent: u64,
    /// Group elements as exponent tuples; also used as labels of the dual group.
    pub elements: Vec<Vec<u64>>,
    /// Entry `(chi, g)` is `chi(g)`, a power of `zeta`.
    pub character_matrix: Matrix<FieldElement>,
    pub determinant: FieldElement,
    /// Row `chi` solves `C w = |G| e_chi`; every entry is integral.
    pub witnesses: Vec<Vec<FieldElement>>,
}

impl SplitGroupAlgebra {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The same algebra with group elements (columns) listed in another order.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let s = self.order();
        let mut seen = vec![false; s];
        if perm.len() != s || perm.iter().any(|&i| i >= s || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Input("not a permutation of the group elements".into()));
        }
        build(&self.field, &self.orders, &self.zeta, perm.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// Image of the group element at position `g` in `prod_chi O_F`.
    pub fn image(&self, g: usize) -> Vec<FieldElement> {
        self.character_matrix.column(g)
    }
}

fn all_tuples(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &n in orders {
        out = out.into_iter().flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

fn build(field: &NumberFieldSpec, orders: &[u64], zeta: &FieldElement, elements: Vec<Vec<u64>>) -> Result<SplitGroupAlgebra> {
    let n = orders.iter().fold(1u64, |a, b| a.lcm(b));
    let powers: Vec<FieldElement> = (0..n).map(|k| field.pow(zeta, k)).collect();
    let chars = all_tuples(orders);
    // chi_c(g) = zeta^{sum c_i g_i n / n_i}
    let pairing = |c: &[u64], g: &[u64]| -> usize {
        (c.iter().zip(g).zip(orders).map(|((ci, gi), ni)| ci * gi % ni * (n / ni)).sum::<u64>() % n) as usize
    };
    let s = elements.len();
    let c = Matrix::from_fn(s, s, |i, j| powers[pairing(&chars[i], &elements[j])].clone());
    let determinant = det_field(field, &c);
    if field.is_zero(&determinant) {
        return Err(Error::Invariant("character matrix is singular".into()));
    }
    let size = field.from_int(&BigInt::from(s));
    let mut witnesses = Vec::with_capacity(s);
    for i in 0..s {
        let mut rhs = vec![field.zero(); s];
        rhs[i] = size.clone();
        let w = solve_field(field, &c, &rhs).ok_or_else(|| Error::Invariant("character matrix is singular".into()))?;
        if !w.iter().all(FieldElement::is_integral) {
            return Err(Error::Invariant(format!("|G| e_{i} is not in the image of O_F[G]")));
        }
        witnesses.push(w);
    }
    Ok(SplitGroupAlgebra {
        field: field.clone(),
        orders: orders.to_vec(),
        zeta: zeta.clone(),
        exponent: n,
        elements,
        character_matrix: c,
        determinant,
        witnesses,
    })
}

/// Builds the character matrix of `prod C_{n_i}`; `zeta` defaults to a declared
/// root of unity of order `lcm(n_i)`.
pub fn split_group_algebra(field: &NumberFieldSpec, orders: &[u64], zeta: Option<&FieldElement>) -> Result<SplitGroupAlgebra> {
    if orders.is_empty() {
        return Err(Error::Input("the group must have at least one cyclic factor".into()));
    }
    if orders.contains(&0) {
        return Err(Error::Input("cyclic orders must be positive".into()));
    }
    let n = orders.iter().fold(1u64, |a, b| a.lcm(b));
    let zeta = match zeta {
        Some(z) => {
            if !field.root_of_unity_order_ok(z, n) {
                return Err(Error::Precondition(format!("{z} is not a primitive {n}-th root of unity")));
            }
            z.clone()
        }
        None => field
            .root_of_unity_of_order(n)
            .ok_or_else(|| Error::Precondition(format!("{} has no declared root of unity of order {n}", field.label())))?,
    };
    build(field, orders, &zeta, all_tuples(orders))
}

/// A tuple in `prod_chi (O_F/m)^x`.
pub type UnitTuple = Vec<ResidueElem>;

#[derive(Clone, Debug)]
pub struct KernelGroupResult {
    pub field: NumberFieldSpec,
    pub orders: Vec<u64>,
    pub modulus: u64,
    /// Number of components `s = |G|`.
    pub components: usize,
    /// `(O_F/m)^x`, one copy per component.
    pub component_units: UnitGroup,
    pub ambient_order: BigInt,
    /// One tuple per (component, global unit generator).
    pub global_generators: Vec<UnitTuple>,
    pub global_image_order: BigInt,
    /// `|O_F[G]/m(prod O_F)|`.
    pub subring_size: usize,
    pub subring_unit_count: usize,
    pub subring_unit_order: BigInt,
    pub join_order: BigInt,
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<UnitTuple>,
    /// Closure of the subring units under inversion, checked when the subring is small.
    pub unit_lemma: Option<bool>,
    quotient: Quotient,
}

impl KernelGroupResult {
    pub fn order(&self) -> BigInt {
        self.quotient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `|ambient| = |join| |D|`.
    pub fn is_exact(&self) -> bool {
        self.ambient_order == &self.join_order * self.order()
    }

    /// Coordinates in `D` of the class of a tuple.
    pub fn class_of(&self, tuple: &[ResidueElem]) -> Result<Vec<BigInt>> {
        Ok(self.quotient.coordinates(&tuple_dlog(&self.component_units, tuple)?))
    }
}

const LEMMA_LIMIT: usize = 10_000;

fn tuple_dlog(units: &UnitGroup, tuple: &[ResidueElem]) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for x in tuple {
        let e = units.dlog(x).ok_or_else(|| Error::NotAUnit { witness: format!("component {x:?}") })?;
        out.extend_from_slice(e);
    }
    Ok(out)
}

fn tuple_from_exponents(ring: &ResidueRing, units: &UnitGroup, s: usize, e: &[BigInt]) -> UnitTuple {
    let r = units.rank();
    let exp = units.exponent();
    (0..s)
        .map(|i| {
            units.generators.iter().enumerate().fold(ring.one(), |acc, (k, g)| {
                let k_exp: u64 = (&e[i * r + k]).mod_floor(&exp).try_into().unwrap();
                ring.mul(&acc, &ring.pow(g, k_exp))
            })
        })
        .collect()
}

/// Additive span of `beta^j * image(g)` plus `m (prod O_F)`, as vectors of
/// length `d s` mod `m`, enumerated from the Hermite basis.
fn subring_elements(alg: &SplitGroupAlgebra, m: &BigInt, cap: u64) -> Result<Vec<Vec<BigInt>>> {
    let field = &alg.field;
    let (d, s) = (field.degree(), alg.order());
    let n = d * s;
    let mut rows = Vec::new();
    for g in 0..s {
        let img = alg.image(g);
        for j in 0..d {
            let bj = field.beta_power(j);
            let mut row = Vec::with_capacity(n);
            for c in &img {
                row.extend(field.mul(&bj, c).try_ints()?);
            }
            rows.push(row);
        }
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = m.clone();
        rows.push(row);
    }
    let h = hnf(&IntMatrix::from_rows(rows)).basis();
    if h.rows() != n {
        return Err(Error::Invariant("subring lattice is not of full rank".into()));
    }
    let steps: Vec<BigInt> = (0..n).map(|i| m / &h[(i, i)]).collect();
    let size = steps.iter().product::<BigInt>();
    if size > BigInt::from(cap) {
        return Err(Error::ResourceLimit(format!("subring of size {size} exceeds cap {cap}")));
    }
    let steps: Vec<u64> = steps.iter().map(|x| x.try_into().unwrap()).collect();
    let mut out = vec![vec![BigInt::zero(); n]];
    for i in 0..n {
        let row = h.row(i);
        let mut next = Vec::with_capacity(out.len() * steps[i] as usize);
        for v in &out {
            for x in 0..steps[i] {
                let xb = BigInt::from(x);
                next.push(v.iter().zip(row).map(|(a, b)| (a + &xb * b).mod_floor(m)).collect());
            }
        }
        out = next;
    }
    Ok(out)
}

pub fn milnor_kernel_group(alg: &SplitGroupAlgebra, m: u64) -> Result<KernelGroupResult> {
    milnor_kernel_group_capped(alg, m, DEFAULT_CAP)
}

pub fn milnor_kernel_group_capped(alg: &SplitGroupAlgebra, m: u64, cap: u64) -> Result<KernelGroupResult> {
    let s = alg.order();
    if m == 0 || m % s as u64 != 0 {
        return Err(Error::Precondition(format!("m = {m} is not a positive multiple of |G| = {s}")));
    }
    let field = &alg.field;
    if field.declared_free_units() < field.unit_rank() {
        return Err(Error::MissingUnitData(format!("{} lacks declared fundamental units", field.label())));
    }
    let d = field.degree();
    let mb = BigInt::from(m);
    let ring = ResidueRing::new(field, mb.clone())?;
    let units = finite_ring_units_capped(&ring, cap)?;
    let r = units.rank();
    let rank = s * r;
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..s {
        for k in 0..units.relations.rows() {
            let mut row = vec![BigInt::zero(); rank];
            row[i * r..(i + 1) * r].clone_from_slice(units.relations.row(k));
            relations.push(row);
        }
    }
    let ambient = Quotient::new(rank, relations.clone());
    let ambient_order = ambient.order();

    let mut global_generators = Vec::new();
    for w in field.unit_group_generators() {
        let img = ring.from_field(&w)?;
        for i in 0..s {
            let mut t = vec![ring.one(); s];
            t[i] = img.clone();
            global_generators.push(t);
        }
    }
    let sub = subring_elements(alg, &mb, cap)?;
    let split = |v: &[BigInt]| -> UnitTuple { v.chunks(d).map(<[BigInt]>::to_vec).collect() };
    let subring_units: Vec<UnitTuple> =
        sub.iter().map(|v| split(v)).filter(|t| t.iter().all(|x| units.contains(x))).collect();

    let unit_lemma = (sub.len() <= LEMMA_LIMIT).then(|| {
        let members: HashSet<&Vec<BigInt>> = sub.iter().collect();
        subring_units.iter().all(|t| {
            let inv: Vec<BigInt> = t.iter().flat_map(|x| ring.invert(x).expect("unit")).collect();
            members.contains(&inv)
        })
    });

    let order_of_span = |gens: &[UnitTuple]| -> Result<BigInt> {
        let mut rows = relations.clone();
        for t in gens {
            rows.push(tuple_dlog(&units, t)?);
        }
        Ok(&ambient_order / Quotient::new(rank, rows).order())
    };
    let global_image_order = order_of_span(&global_generators)?;
    let subring_unit_order = order_of_span(&subring_units)?;
    let join: Vec<UnitTuple> = global_generators.iter().chain(&subring_units).cloned().collect();
    let mut rows = relations;
    for t in &join {
        rows.push(tuple_dlog(&units, t)?);
    }
    let quotient = Quotient::new(rank, rows);
    let join_order = &ambient_order / quotient.order();
    let generators = quotient.generator_vectors().iter().map(|e| tuple_from_exponents(&ring, &units, s, e)).collect();
    Ok(KernelGroupResult {
        field: field.clone(),
        orders: alg.orders.clone(),
        modulus: m,
        components: s,
        component_units: units,
        ambient_order,
        global_generators,
        global_image_order,
        subring_size: sub.len(),
        subring_unit_count: subring_units.len(),
        subring_unit_order,
        join_order,
        invariant_factors: quotient.invariant_factors(),
        generators,
        unit_lemma,
        quotient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub component: usize,
    /// Class in `(O_F/m)^x / phi(O_F^x)`.
    pub class: Vec<BigInt>,
    /// Index into [`TrivialityReport::certificates`], absent for the trivial class.
    pub certificate: Option<usize>,
    /// The component times the inverse of the certified lift lies in `phi(O_F^x)`.
    pub residue_ok: bool,
}

#[derive(Clone, Debug)]
pub struct TupleReport {
    pub tuple: UnitTuple,
    pub components: Vec<ComponentClass>,
}

#[derive(Clone, Debug)]
pub struct TrivialityReport {
    pub modulus: u64,
    pub tuples: Vec<TupleReport>,
    /// `(lift, certificate)`, one per distinct nontrivial class.
    pub certificates: Vec<(FieldElement, CapitulationCertificate)>,
}

impl TrivialityReport {
    /// Every tuple maps to the identity once the certified units are adjoined.
    pub fn trivial(&self) -> bool {
        self.certificates.iter().all(|(_, c)| c.checks.all_pass())
            && self.tuples.iter().flat_map(|t| &t.components).all(|c| c.residue_ok)
    }
}

/// Capitulates the per-component classes of arbitrary unit tuples mod `m`.
pub fn capitulate_tuples(field: &NumberFieldSpec, m: u64, tuples: &[UnitTuple]) -> Result<TrivialityReport> {
    let cok = unit_cokernel_capped(field, m, DEFAULT_CAP)?;
    let mut by_class: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    let mut certificates = Vec::new();
    let mut reports = Vec::new();
    for tuple in tuples {
        let mut components = Vec::new();
        for (i, x) in tuple.iter().enumerate() {
            let class = cok.class_of(x)?;
            if class.iter().all(Zero::is_zero) {
                let residue_ok = cok.units.contains(&cok.ring.reduce(x.clone()));
                components.push(ComponentClass { component: i, class, certificate: None, residue_ok });
                continue;
            }
            let id = match by_class.get(&class) {
                Some(&id) => id,
                None => {
                    let lift = cok.canonical_lift(&class).ok_or_else(|| Error::Invariant("empty class".into()))?;
                    let lift = FieldElement::from_ints(&lift);
                    let cert = capitulation_extension(field, m, &lift)?;
                    certificates.push((lift, cert));
                    by_class.insert(class.clone(), certificates.len() - 1);
                    certificates.len() - 1
                }
            };
            let lift = cok.ring.from_field(&certificates[id].0)?;
            let ratio = cok.ring.mul(x, &cok.ring.invert(&lift)?);
            let residue_ok = cok.class_of(&ratio)?.iter().all(Zero::is_zero);
            components.push(ComponentClass { component: i, class, certificate: Some(id), residue_ok });
        }
        reports.push(TupleReport { tuple: tuple.clone(), components });
    }
    Ok(TrivialityReport { modulus: m, tuples: reports, certificates })
}

/// Runs [`capitulate_tuples`] on the generators of `D`.
pub fn capitulation_triviality_check(k: &KernelGroupResult, field: &NumberFieldSpec, m: u64) -> Result<TrivialityReport> {
    if m != k.modulus || field.defining_poly() != k.field.defining_poly() {
        return Err(Error::Precondition("kernel group was computed for a different field or modulus".into()));
    }
    capitulate_tuples(field, m, &k.generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::quadratic::quadratic_field;

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    #[test]
    fn character_matrices() {
        let a = split_group_algebra(&q(), &[2], None).unwrap();
        let rows: Vec<Vec<FieldElement>> = a.character_matrix.row_vecs();
        let e = |x| q().element(&[x]);
        assert_eq!(rows, vec![vec![e(1), e(1)], vec![e(1), e(-1)]]);
        let a = split_group_algebra(&q(), &[2, 2], Some(&e(-1))).unwrap();
        assert_eq!(a.determinant, e(16));
        assert!(matches!(split_group_algebra(&q(), &[], None), Err(Error::Input(_))));
        assert!(matches!(split_group_algebra(&q(), &[3], None), Err(Error::Precondition(_))));
        assert!(split_group_algebra(&q(), &[2], Some(&e(1))).is_err());
        let zi = quadratic_field(&BigInt::from(-1)).unwrap();
        let a = split_group_algebra(&zi, &[4], None).unwrap();
        assert!(!zi.is_zero(&a.determinant));
        assert_eq!(a.witnesses.len(), 4);
    }

    #[test]
    fn kernel_group_c2_mod_2_is_trivial() {
        let a = split_group_algebra(&q(), &[2], None).unwrap();
        let k = milnor_kernel_group(&a, 2).unwrap();
        assert!(k.is_trivial());
        assert_eq!(k.subring_size, 2);
        assert_eq!(k.unit_lemma, Some(true));
        assert!(k.is_exact());
        let rep = capitulation_triviality_check(&k, &q(), 2).unwrap();
        assert!(rep.trivial() && rep.certificates.is_empty());
        assert!(matches!(milnor_kernel_group(&a, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn tuples_with_class_three_mod_eight() {
        let t = vec![vec![BigInt::from(3)], vec![BigInt::from(1)]];
        let rep = capitulate_tuples(&q(), 8, &[t]).unwrap();
        assert_eq!(rep.certificates.len(), 1);
        assert_eq!(rep.certificates[0].0, q().element(&[3]));
        assert_eq!(rep.tuples[0].components[0].certificate, Some(0));
        assert_eq!(rep.tuples[0].components[1].certificate, None);
        assert!(rep.trivial());
    }
}
