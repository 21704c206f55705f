//! Newton polygons, integral closure and the Zariski factorization of
//! complete monomial ideals.
//!
//! The integral closure of a monomial ideal is the monomial ideal of lattice
//! points in its Newton polyhedron. For a complete ideal with hull vertices
//! `(p_0, 0), ..., (0, q_t)` each hull edge contributes the factor
//! `closure(x^Δp, y^Δq) = closure(x^(Δp/d), y^(Δq/d))^d` with
//! `d = gcd(Δp, Δq)`, and `closure(x^p, y^q)` is simple when `gcd(p, q) = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::staircase::{Monomial, MonomialIdeal};

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Vertices of the lower-left boundary of a Newton polyhedron, ordered by
/// decreasing `x`-exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Monomial>,
}

/// One hull edge, stored as the half-plane `dq*u + dp*v >= c`.
#[derive(Debug, Clone, Copy)]
struct Edge {
    dp: u64,
    dq: u64,
    c: u64,
}

impl Edge {
    fn holds(&self, u: u64, v: u64) -> bool {
        self.dq * u + self.dp * v >= self.c
    }

    /// Least `v >= 0` with `(u, v)` on or above the edge line.
    fn min_v(&self, u: u64) -> u64 {
        let lhs = self.dq * u;
        if lhs >= self.c {
            0
        } else {
            (self.c - lhs).div_ceil(self.dp)
        }
    }
}

fn cross(o: Monomial, a: Monomial, b: Monomial) -> i64 {
    let (ox, oy) = (i64::from(o.a), i64::from(o.b));
    (i64::from(a.a) - ox) * (i64::from(b.b) - oy) - (i64::from(a.b) - oy) * (i64::from(b.a) - ox)
}

impl NewtonPolygon {
    /// Lower-left hull of the generators of `ideal`.
    pub fn of(ideal: &MonomialIdeal) -> Self {
        // monotone chain over the staircase corners by increasing a; the
        // corners are already sorted, with b decreasing along the way
        let mut hull: Vec<Monomial> = Vec::with_capacity(ideal.num_min_gens());
        for &p in ideal.gens().iter().rev() {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.reverse();
        NewtonPolygon { vertices: hull }
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| {
            let (prev, next) = (w[0], w[1]);
            let dp = u64::from(prev.a - next.a);
            let dq = u64::from(next.b - prev.b);
            Edge {
                dp,
                dq,
                c: dq * u64::from(next.a) + dp * u64::from(next.b),
            }
        })
    }

    /// Whether the lattice point `m` lies in the Newton polyhedron.
    pub fn contains(&self, m: Monomial) -> bool {
        self.edges()
            .all(|e| e.holds(u64::from(m.a), u64::from(m.b)))
    }
}

/// Integral closure of an m-primary monomial ideal.
pub fn closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    if ideal.is_unit() {
        return ideal.clone();
    }
    let polygon = NewtonPolygon::of(ideal);
    let edges: Vec<Edge> = polygon.edges().collect();
    let a0 = ideal.a0();
    let raw = (0..a0)
        .map(|u| {
            let v = edges
                .iter()
                .map(|e| e.min_v(u64::from(u)))
                .max()
                .unwrap_or(0);
            Monomial::new(
                u,
                u32::try_from(v).expect("closure exponent fits the ideal"),
            )
        })
        .chain(std::iter::once(Monomial::x(a0)));
    MonomialIdeal::normalize(raw).expect("closure of an m-primary ideal is m-primary")
}

pub fn is_complete(ideal: &MonomialIdeal) -> bool {
    closure(ideal) == *ideal
}

fn require_complete(ideal: &MonomialIdeal) -> Result<()> {
    if is_complete(ideal) {
        Ok(())
    } else {
        Err(Error::NotComplete)
    }
}

/// The simple complete ideal `closure(x^p, y^q)` with `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    p: u32,
    q: u32,
}

impl SimpleFactor {
    /// `None` unless `p, q > 0` and coprime.
    pub fn new(p: u32, q: u32) -> Option<Self> {
        (p > 0 && q > 0 && gcd(p, q) == 1).then_some(SimpleFactor { p, q })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn order(self) -> u32 {
        self.p.min(self.q)
    }

    pub fn ideal(self) -> MonomialIdeal {
        closure(&MonomialIdeal::binomial(self.p, self.q))
    }

    pub fn transpose(self) -> Self {
        SimpleFactor {
            p: self.q,
            q: self.p,
        }
    }
}

// canonical order: p descending, then q ascending
impl Ord for SimpleFactor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.p.cmp(&self.p).then(self.q.cmp(&other.q))
    }
}

impl PartialOrd for SimpleFactor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `(x^p,y^q)` when one exponent is 1 (already complete), otherwise
/// `closure(x^p,y^q)`.
impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = format!("{},{}", Monomial::x(self.p), Monomial::y(self.q));
        if self.order() == 1 {
            write!(f, "({inner})")
        } else {
            write!(f, "closure({inner})")
        }
    }
}

/// Zariski decomposition of a complete monomial ideal as a multiset of
/// simple factors, canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<FactorEntry>", into = "Vec<FactorEntry>")]
pub struct Factorization {
    factors: Vec<(SimpleFactor, u32)>,
}

/// Wire form of one factorization entry.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FactorEntry {
    pub p: u32,
    pub q: u32,
    pub mult: u32,
}

impl Factorization {
    /// Collects `(factor, multiplicity)` pairs, merging repeats.
    pub fn from_factors<I>(items: I) -> Self
    where
        I: IntoIterator<Item = (SimpleFactor, u32)>,
    {
        let mut acc: BTreeMap<SimpleFactor, u32> = BTreeMap::new();
        for (f, m) in items {
            if m > 0 {
                *acc.entry(f).or_insert(0) += m;
            }
        }
        Factorization {
            factors: acc.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(SimpleFactor, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, f: SimpleFactor) -> u32 {
        self.factors
            .iter()
            .find(|(g, _)| *g == f)
            .map_or(0, |&(_, m)| m)
    }

    /// Total multiplicity.
    pub fn len(&self) -> u32 {
        self.factors.iter().map(|&(_, m)| m).sum()
    }

    /// `Σ mult·min(p, q)`, the order of the product.
    pub fn order(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(f, m)| u64::from(f.order()) * u64::from(m))
            .sum()
    }

    pub fn has_order_one_factor(&self) -> bool {
        self.factors.iter().any(|(f, _)| f.order() == 1)
    }

    /// Remove one copy of `f`; `None` if `f` does not occur.
    pub fn without(&self, f: SimpleFactor) -> Option<Factorization> {
        if self.multiplicity(f) == 0 {
            return None;
        }
        let mut rest = self.clone();
        for entry in &mut rest.factors {
            if entry.0 == f {
                entry.1 -= 1;
            }
        }
        rest.factors.retain(|&(_, m)| m > 0);
        Some(rest)
    }

    pub fn transpose(&self) -> Factorization {
        Self::from_factors(self.factors.iter().map(|&(f, m)| (f.transpose(), m)))
    }

    /// Flatten into the list of factors repeated by multiplicity.
    pub fn expanded(&self) -> Vec<SimpleFactor> {
        self.factors
            .iter()
            .flat_map(|&(f, m)| std::iter::repeat_n(f, m as usize))
            .collect()
    }
}

impl TryFrom<Vec<FactorEntry>> for Factorization {
    type Error = String;

    fn try_from(entries: Vec<FactorEntry>) -> std::result::Result<Self, String> {
        let mut items = Vec::with_capacity(entries.len());
        for e in entries {
            let f = SimpleFactor::new(e.p, e.q)
                .ok_or_else(|| format!("({}, {}) is not a coprime pair", e.p, e.q))?;
            if e.mult == 0 {
                return Err("multiplicity must be positive".into());
            }
            items.push((f, e.mult));
        }
        Ok(Self::from_factors(items))
    }
}

impl From<Factorization> for Vec<FactorEntry> {
    fn from(f: Factorization) -> Self {
        f.factors
            .into_iter()
            .map(|(s, mult)| FactorEntry {
                p: s.p,
                q: s.q,
                mult,
            })
            .collect()
    }
}

/// Product notation with factors listed by increasing `p`, then `q`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let mut listed = self.factors.clone();
        listed.sort_by_key(|(s, _)| (s.p, s.q));
        for (i, (s, m)) in listed.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{s}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Zariski factorization of a complete m-primary monomial ideal.
pub fn zariski_factor(ideal: &MonomialIdeal) -> Result<Factorization> {
    require_complete(ideal)?;
    let polygon = NewtonPolygon::of(ideal);
    let items = polygon.vertices().windows(2).map(|w| {
        let dp = w[0].a - w[1].a;
        let dq = w[1].b - w[0].b;
        let d = gcd(dp, dq);
        (
            SimpleFactor::new(dp / d, dq / d).expect("reduced edge direction"),
            d,
        )
    });
    Ok(Factorization::from_factors(items))
}

/// Product of the factors; the unit ideal for an empty factorization.
pub fn reconstruct(f: &Factorization) -> MonomialIdeal {
    f.factors()
        .iter()
        .fold(MonomialIdeal::unit(), |acc, &(s, m)| {
            acc.product(&s.ideal().power(m))
        })
}

/// Whether `closure(x^p, y^q)` divides the complete ideal `ideal`.
pub fn simple_divides(f: SimpleFactor, ideal: &MonomialIdeal) -> Result<bool> {
    Ok(zariski_factor(ideal)?.multiplicity(f) > 0)
}

pub fn is_simple(ideal: &MonomialIdeal) -> Result<bool> {
    let f = zariski_factor(ideal)?;
    Ok(f.factors().len() == 1 && f.factors()[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(pairs: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::from_pairs(pairs).unwrap()
    }

    fn sf(p: u32, q: u32) -> SimpleFactor {
        SimpleFactor::new(p, q).unwrap()
    }

    fn pts(v: &[Monomial]) -> Vec<(u32, u32)> {
        v.iter().map(|&m| m.into()).collect()
    }

    fn two_factor_ideal() -> MonomialIdeal {
        ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)])
    }

    fn case_one_ideal() -> MonomialIdeal {
        ideal(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)])
    }

    fn n4_ideal() -> MonomialIdeal {
        ideal(&[(5, 0), (4, 1), (2, 2), (1, 3), (0, 5)])
    }

    #[test]
    fn hull_vertices() {
        assert_eq!(
            pts(NewtonPolygon::of(&two_factor_ideal()).vertices()),
            vec![(5, 0), (2, 4), (0, 7)]
        );
        assert_eq!(
            pts(NewtonPolygon::of(&case_one_ideal()).vertices()),
            vec![(7, 0), (3, 2), (2, 3), (1, 5), (0, 9)]
        );
        assert_eq!(
            pts(NewtonPolygon::of(&ideal(&[(2, 0), (0, 3)])).vertices()),
            vec![(2, 0), (0, 3)]
        );
        // collinear corners are not vertices
        assert_eq!(
            pts(NewtonPolygon::of(&MonomialIdeal::maximal_power(4)).vertices()),
            vec![(4, 0), (0, 4)]
        );
    }

    #[test]
    fn closures() {
        // for u < 2 the least v with 3u + 2v >= 6
        assert_eq!(
            closure(&ideal(&[(2, 0), (0, 3)])),
            ideal(&[(2, 0), (1, 2), (0, 3)])
        );
        // 2u + 3v >= 6
        assert_eq!(
            closure(&ideal(&[(3, 0), (0, 2)])),
            ideal(&[(3, 0), (2, 1), (0, 2)])
        );
        for r in 1..6 {
            let m = MonomialIdeal::maximal_power(r);
            assert_eq!(closure(&m), m);
        }
        assert_eq!(closure(&MonomialIdeal::unit()), MonomialIdeal::unit());
    }

    #[test]
    fn completeness() {
        assert!(!is_complete(&ideal(&[(2, 0), (0, 3)])));
        assert!(is_complete(&two_factor_ideal()));
        for k in 1..8 {
            assert!(is_complete(&ideal(&[(1, 0), (0, k)])));
        }
    }

    #[test]
    fn factorizations() {
        let f = zariski_factor(&two_factor_ideal()).unwrap();
        assert_eq!(
            f,
            Factorization::from_factors([(sf(2, 3), 1), (sf(3, 4), 1)])
        );
        assert_eq!(f.to_string(), "closure(x^2,y^3) * closure(x^3,y^4)");

        let f = zariski_factor(&case_one_ideal()).unwrap();
        assert_eq!(
            f,
            Factorization::from_factors([
                (sf(1, 1), 1),
                (sf(1, 2), 1),
                (sf(1, 4), 1),
                (sf(2, 1), 2)
            ])
        );
        assert_eq!(f.to_string(), "(x,y) * (x,y^2) * (x,y^4) * (x^2,y)^2");
        assert_eq!(f.order(), 5);

        for r in 1..6 {
            assert_eq!(
                zariski_factor(&MonomialIdeal::maximal_power(r)).unwrap(),
                Factorization::from_factors([(sf(1, 1), r)])
            );
        }
        assert_eq!(
            zariski_factor(&ideal(&[(2, 0), (0, 3)])),
            Err(Error::NotComplete)
        );
    }

    #[test]
    fn reconstructions() {
        let f = Factorization::from_factors([(sf(2, 3), 1), (sf(3, 4), 1)]);
        assert_eq!(reconstruct(&f), two_factor_ideal());
        let f = Factorization::from_factors([(sf(1, 1), 1), (sf(1, 2), 1), (sf(3, 2), 1)]);
        assert_eq!(reconstruct(&f), n4_ideal());
        let f = Factorization::from_factors([(sf(1, 1), 1)]);
        assert_eq!(reconstruct(&f), MonomialIdeal::maximal_power(1));
    }

    #[test]
    fn divisibility_and_simplicity() {
        assert!(!simple_divides(sf(1, 3), &case_one_ideal()).unwrap());
        assert!(simple_divides(sf(1, 2), &case_one_ideal()).unwrap());
        assert!(simple_divides(sf(1, 1), &MonomialIdeal::maximal_power(3)).unwrap());

        for b in [3, 5, 7, 9] {
            assert!(is_simple(&closure(&ideal(&[(2, 0), (0, b)]))).unwrap());
        }
        assert!(!is_simple(&MonomialIdeal::maximal_power(2)).unwrap());
        assert!(is_simple(&ideal(&[(1, 0), (0, 4)])).unwrap());
    }

    #[test]
    fn simple_factor_validation() {
        assert!(SimpleFactor::new(2, 4).is_none());
        assert!(SimpleFactor::new(0, 1).is_none());
        assert_eq!(sf(3, 2).ideal(), ideal(&[(3, 0), (2, 1), (0, 2)]));
    }

    fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (
            1u32..9,
            1u32..9,
            prop::collection::vec((0u32..9, 0u32..9), 0..6),
        )
            .prop_map(|(a0, br, inner)| {
                let raw = inner
                    .into_iter()
                    .map(Monomial::from)
                    .chain([Monomial::x(a0), Monomial::y(br)]);
                MonomialIdeal::normalize(raw).unwrap()
            })
    }

    proptest! {
        #[test]
        fn closure_is_a_closure_operator(i in arb_ideal()) {
            let c = closure(&i);
            prop_assert!(c.contains(&i));
            prop_assert_eq!(closure(&c), c.clone());
            prop_assert_eq!(c.order(), i.order());
        }

        #[test]
        fn factor_round_trip(i in arb_ideal()) {
            let c = closure(&i);
            let f = zariski_factor(&c).unwrap();
            prop_assert_eq!(reconstruct(&f), c.clone());
            prop_assert_eq!(f.order(), c.order());
        }

        #[test]
        fn hull_vertices_are_generators(i in arb_ideal()) {
            let poly = NewtonPolygon::of(&i);
            for v in poly.vertices() {
                prop_assert!(i.gens().contains(v));
            }
            // strictly increasing slopes
            for w in poly.vertices().windows(3) {
                prop_assert!(cross(w[2], w[1], w[0]) > 0);
            }
        }

        #[test]
        fn closure_membership_is_hull_membership(i in arb_ideal()) {
            let c = closure(&i);
            let poly = NewtonPolygon::of(&i);
            for u in 0..12 {
                for v in 0..12 {
                    let m = Monomial::new(u, v);
                    prop_assert_eq!(c.member(m), poly.contains(m));
                }
            }
        }
    }
}
