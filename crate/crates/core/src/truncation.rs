//! Brute-force oracles, independent of the staircase shortcuts used
//! elsewhere.
//!
//! Lengths and minimal numbers of generators of a module `M ⊆ F = R^2` are
//! computed by exact linear algebra over `Q` in the truncation `F/m^N F`,
//! which is faithful once `m^N F ⊆ mM`. Since `Fitt_0(F/M) F ⊆ M` and
//! `m^{a_0+b_r-1} ⊆ I` for a staircase with corners `x^{a_0}` and `y^{b_r}`,
//! the degree `N = a_0 + b_r` of `Fitt_0` already suffices; every result is
//! additionally required to agree at `N` and `N + 1`.
//!
//! The residue field is modeled in characteristic zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::newton::closure;
use crate::presentation::Presentation2;
use crate::staircase::{Monomial, MonomialIdeal};

/// Extra truncation degree added on top of the proven bound.
pub const DEFAULT_MARGIN: u32 = 2;

/// The space of `rank` copies of `R/m^n`, with a basis indexed by
/// `(coordinate, monomial)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpace {
    n: u32,
    rank: usize,
}

impl TruncationSpace {
    pub fn new(n: u32, rank: usize) -> Self {
        TruncationSpace { n, rank }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    fn per_coordinate(&self) -> usize {
        let n = self.n as usize;
        n * (n + 1) / 2
    }

    pub fn dim(&self) -> usize {
        self.rank * self.per_coordinate()
    }

    /// Basis index of `m` in coordinate `coord`, or `None` if `m` vanishes
    /// in the truncation.
    pub fn index(&self, coord: usize, m: Monomial) -> Option<usize> {
        let d = m.degree();
        if d >= u64::from(self.n) {
            return None;
        }
        let d = d as usize;
        Some(coord * self.per_coordinate() + d * (d + 1) / 2 + m.b as usize)
    }

    /// All monomials of degree `lo <= deg < n`.
    pub fn monomials(&self, lo: u32) -> impl Iterator<Item = Monomial> {
        let n = self.n;
        (lo..n).flat_map(|d| (0..=d).map(move |b| Monomial::new(d - b, b)))
    }
}

type Row = Vec<(usize, BigRational)>;

/// Row-echelon basis of a subspace, grown one vector at a time.
#[derive(Debug, Default)]
struct Echelon {
    pivots: HashMap<usize, Row>,
}

fn axpy(row: &Row, factor: &BigRational, pivot: &Row) -> Row {
    // row - factor * pivot, both sorted by column
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    /// Adds `row` to the span; returns whether the rank grew.
    fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|&(c, _)| c);
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &coef, pivot),
                None => {
                    let inv = coef.recip();
                    for entry in &mut row {
                        entry.1 = &entry.1 * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn rank_of<I: IntoIterator<Item = Row>>(rows: I) -> usize {
    let mut e = Echelon::default();
    for row in rows {
        e.insert(row);
    }
    e.rank()
}

fn one() -> BigRational {
    BigRational::one()
}

/// Truncated images of `mult * column` for all multipliers of degree in
/// `lo..n`.
fn column_multiples<'a>(
    space: &'a TruncationSpace,
    p: &'a Presentation2,
    lo: u32,
) -> impl Iterator<Item = Row> + 'a {
    space.monomials(lo).flat_map(move |mult| {
        p.cols().iter().filter_map(move |c| {
            let mut row = Row::new();
            if let Some(t) = c.top {
                if let Some(i) = space.index(0, mult.times(t)) {
                    row.push((i, one()));
                }
            }
            if let Some(bt) = c.bottom {
                if let Some(i) = space.index(1, mult.times(bt)) {
                    row.push((i, one()));
                }
            }
            (!row.is_empty()).then_some(row)
        })
    })
}

fn base_degree(p: &Presentation2, margin: u32) -> Result<u32> {
    let fitting = p.fitting0()?;
    let n = (fitting.a0() + fitting.br()).max(1);
    n.checked_add(margin).ok_or(Error::NotFiniteColength)
}

fn stable<F>(what: &'static str, n: u32, f: F) -> Result<usize>
where
    F: Fn(u32) -> usize,
{
    let lo = f(n);
    let hi = f(n + 1);
    if lo != hi {
        return Err(Error::Unstable { what, n, lo, hi });
    }
    Ok(lo)
}

/// `ℓ(F/M)`.
pub fn module_colength(p: &Presentation2, margin: u32) -> Result<u64> {
    let n = base_degree(p, margin)?;
    let colength = stable("module colength", n, |n| {
        let space = TruncationSpace::new(n, 2);
        space.dim() - rank_of(column_multiples(&space, p, 0))
    })?;
    Ok(colength as u64)
}

/// `μ(M) = dim M/mM`.
pub fn module_min_gens(p: &Presentation2, margin: u32) -> Result<usize> {
    let n = base_degree(p, margin)?;
    stable("minimal number of generators", n, |n| {
        let space = TruncationSpace::new(n, 2);
        let whole = rank_of(column_multiples(&space, p, 0));
        let shifted = rank_of(column_multiples(&space, p, 1));
        whole - shifted
    })
}

/// A polynomial in `x, y` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    /// Combines like terms and drops zeros.
    pub fn new<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c.into();
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(m, _)| *m);
        Poly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::new([(m, 1)])
    }

    /// `x + y`.
    pub fn x_plus_y() -> Self {
        Poly::new([(Monomial::x(1), 1), (Monomial::y(1), 1)])
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Largest truncation degree tried before declaring the quotient infinite.
const MAX_POLY_DEGREE: u32 = 128;

fn poly_quotient_dim(gens: &[Poly], n: u32) -> usize {
    let space = TruncationSpace::new(n, 1);
    let rows = space.monomials(0).flat_map(|mult| {
        gens.iter().filter_map(move |g| {
            let row: Row = g
                .terms()
                .iter()
                .filter_map(|(m, c)| {
                    space
                        .index(0, mult.times(*m))
                        .map(|i| (i, BigRational::from_integer(c.clone())))
                })
                .collect();
            (!row.is_empty()).then_some(row)
        })
    });
    space.dim() - rank_of(rows)
}

/// `ℓ(R/(gens))`.
///
/// `ℓ(R/(J + m^N))` is nondecreasing in `N`, and equality at `N` and
/// `N + 1` forces `m^N ⊆ J` by Nakayama, so the first repeated value is the
/// length.
pub fn poly_ideal_colength(gens: &[Poly]) -> Result<u64> {
    let mut prev = poly_quotient_dim(gens, 1);
    for n in 2..=MAX_POLY_DEGREE {
        let cur = poly_quotient_dim(gens, n);
        if cur == prev {
            return Ok(cur as u64);
        }
        prev = cur;
    }
    Err(Error::NotFiniteColength)
}

/// Integral-closure membership through powers: `m` is integral over `I`
/// iff `m^n ∈ I^n` for some `n`.
#[derive(Debug, Clone)]
pub struct PowerOracle {
    ideal: MonomialIdeal,
    powers: Vec<MonomialIdeal>,
    n_max: u32,
}

/// A power bound that is exact for every lattice point: `a_0 b_r` is at
/// least every hull edge width.
pub fn default_power_bound(ideal: &MonomialIdeal) -> u32 {
    ideal.a0().saturating_mul(ideal.br()).max(1)
}

impl PowerOracle {
    pub fn new(ideal: &MonomialIdeal, n_max: u32) -> Self {
        PowerOracle {
            ideal: ideal.clone(),
            powers: vec![ideal.clone()],
            n_max: n_max.max(1),
        }
    }

    pub fn accepts(&mut self, m: Monomial) -> bool {
        for n in 1..=self.n_max {
            let idx = (n - 1) as usize;
            if idx == self.powers.len() {
                let next = self.powers[idx - 1].product(&self.ideal);
                self.powers.push(next);
            }
            if self.powers[idx].member(m.pow(n)) {
                return true;
            }
        }
        false
    }
}

pub fn closure_power_oracle(m: Monomial, ideal: &MonomialIdeal, n_max: u32) -> bool {
    PowerOracle::new(ideal, n_max).accepts(m)
}

fn push_staircases(a0: u32, max_b: u32, heights: &mut Vec<u32>, out: &mut Vec<MonomialIdeal>) {
    if heights.len() == a0 as usize {
        let raw = heights
            .iter()
            .enumerate()
            .map(|(u, &h)| Monomial::new(u as u32, h))
            .chain(std::iter::once(Monomial::x(a0)));
        let ideal = MonomialIdeal::normalize(raw).expect("staircase with both pure powers");
        if closure(&ideal) == ideal {
            out.push(ideal);
        }
        return;
    }
    // heights are nonincreasing in u and at least 1 left of a_0
    let cap = heights.last().copied().unwrap_or(max_b);
    for h in 1..=cap {
        heights.push(h);
        push_staircases(a0, max_b, heights, out);
        heights.pop();
    }
}

/// Every complete m-primary monomial ideal with `a_0 <= bound_a` and
/// `b_r <= bound_b`, each once, in canonical order.
pub fn enumerate_complete(bound_a: u32, bound_b: u32) -> std::vec::IntoIter<MonomialIdeal> {
    let mut out = Vec::new();
    for a0 in 1..=bound_a {
        push_staircases(a0, bound_b, &mut Vec::with_capacity(a0 as usize), &mut out);
    }
    out.sort();
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{is_complete, NewtonPolygon};
    use crate::presentation::{build_mk, Column};

    fn ideal(pairs: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::from_pairs(pairs).unwrap()
    }

    fn m(a: u32, b: u32) -> Monomial {
        Monomial::new(a, b)
    }

    fn free() -> Presentation2 {
        Presentation2::new(vec![
            Column::top(Monomial::ONE),
            Column::bottom(Monomial::ONE),
        ])
        .unwrap()
    }

    fn max_times_f() -> Presentation2 {
        Presentation2::new(vec![
            Column::top(m(1, 0)),
            Column::top(m(0, 1)),
            Column::bottom(m(1, 0)),
            Column::bottom(m(0, 1)),
        ])
        .unwrap()
    }

    fn n4_ideal() -> MonomialIdeal {
        ideal(&[(5, 0), (4, 1), (2, 2), (1, 3), (0, 5)])
    }

    fn case_one_ideal() -> MonomialIdeal {
        ideal(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)])
    }

    #[test]
    fn space_indexing() {
        let s = TruncationSpace::new(4, 2);
        assert_eq!(s.dim(), 20);
        let mut seen: Vec<usize> = s
            .monomials(0)
            .flat_map(|mm| [s.index(0, mm).unwrap(), s.index(1, mm).unwrap()])
            .collect();
        seen.sort();
        assert_eq!(seen, (0..20).collect::<Vec<_>>());
        assert_eq!(s.index(0, m(2, 2)), None);
    }

    #[test]
    fn module_lengths() {
        assert_eq!(module_colength(&free(), 2).unwrap(), 0);
        assert_eq!(module_colength(&max_times_f(), 2).unwrap(), 2);
        let len = module_colength(&build_mk(&n4_ideal(), 2).unwrap(), 2).unwrap();
        assert!(len > 10, "got {len}");
    }

    #[test]
    fn module_generators() {
        let m2 = MonomialIdeal::maximal_power(2);
        assert_eq!(module_min_gens(&build_mk(&m2, 1).unwrap(), 2).unwrap(), 4);
        assert_eq!(
            module_min_gens(&build_mk(&case_one_ideal(), 3).unwrap(), 2).unwrap(),
            7
        );
        assert_eq!(module_min_gens(&free(), 2).unwrap(), 2);
        assert_eq!(module_min_gens(&free(), 0).unwrap(), 2);
        assert_eq!(module_min_gens(&max_times_f(), 0).unwrap(), 4);
    }

    #[test]
    fn redundant_columns_do_not_count() {
        let p = Presentation2::new(vec![
            Column::top(m(1, 0)),
            Column::top(m(2, 0)),
            Column::top(m(0, 1)),
            Column::bottom(m(0, 1)),
            Column::bottom(m(1, 0)),
            Column::bottom(m(1, 1)),
        ])
        .unwrap();
        assert_eq!(module_min_gens(&p, 2).unwrap(), 4);
        assert_eq!(module_colength(&p, 2).unwrap(), 2);
    }

    #[test]
    fn poly_colengths() {
        let with = |i: &MonomialIdeal| {
            let mut gens: Vec<Poly> = i.gens().iter().map(|&g| Poly::monomial(g)).collect();
            gens.push(Poly::x_plus_y());
            poly_ideal_colength(&gens).unwrap()
        };
        assert_eq!(with(&MonomialIdeal::maximal_power(3)), 3);
        assert_eq!(
            with(&ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)])),
            5
        );
        let xy = [Poly::monomial(m(1, 0)), Poly::monomial(m(0, 1))];
        assert_eq!(poly_ideal_colength(&xy).unwrap(), 1);
        assert_eq!(
            poly_ideal_colength(&[Poly::monomial(m(1, 0))]),
            Err(Error::NotFiniteColength)
        );
        // (x^2 - y^2, xy) has length 4
        let gens = [
            Poly::new([(m(2, 0), 1), (m(0, 2), -1)]),
            Poly::monomial(m(1, 1)),
        ];
        assert_eq!(poly_ideal_colength(&gens).unwrap(), 4);
    }

    #[test]
    fn poly_colength_agrees_with_staircase() {
        for i in enumerate_complete(4, 5) {
            let gens: Vec<Poly> = i.gens().iter().map(|&g| Poly::monomial(g)).collect();
            assert_eq!(poly_ideal_colength(&gens).unwrap(), i.colength(), "{i}");
        }
    }

    #[test]
    fn power_oracle() {
        let i = ideal(&[(2, 0), (0, 3)]);
        assert!(closure_power_oracle(m(1, 2), &i, 2));
        assert!(!closure_power_oracle(m(1, 1), &i, 12));
        assert!(closure_power_oracle(m(2, 0), &i, 1));
        let mut oracle =
            PowerOracle::new(&case_one_ideal(), default_power_bound(&case_one_ideal()));
        let hull = NewtonPolygon::of(&case_one_ideal());
        for u in 0..10 {
            for v in 0..10 {
                assert_eq!(oracle.accepts(m(u, v)), hull.contains(m(u, v)));
            }
        }
    }

    /// Every subset of the box, closed up and filtered independently.
    fn brute_complete(bound_a: u32, bound_b: u32) -> Vec<MonomialIdeal> {
        let cells: Vec<Monomial> = (0..=bound_a)
            .flat_map(|u| (0..=bound_b).map(move |v| m(u, v)))
            .filter(|c| *c != Monomial::ONE)
            .collect();
        let mut found = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << cells.len()) {
            let raw: Vec<Monomial> = (0..cells.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cells[i])
                .collect();
            if let Ok(i) = MonomialIdeal::normalize(raw) {
                if i.a0() <= bound_a && i.br() <= bound_b && is_complete(&i) {
                    found.insert(i);
                }
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let small: Vec<_> = enumerate_complete(1, 1).collect();
        assert_eq!(small, vec![MonomialIdeal::maximal_power(1)]);
        for (a, b) in [(2, 2), (3, 3), (2, 4), (4, 2)] {
            let got: Vec<_> = enumerate_complete(a, b).collect();
            assert_eq!(got, brute_complete(a, b), "bounds ({a}, {b})");
        }
        assert_eq!(enumerate_complete(2, 2).count(), 4);
        let e52 = ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)]);
        assert!(enumerate_complete(5, 7).any(|i| i == e52));
    }

    #[test]
    fn module_invariants_under_symmetry() {
        for i in enumerate_complete(3, 4) {
            for k in 1..i.br() {
                let p = build_mk(&i, k).unwrap();
                let len = module_colength(&p, 1).unwrap();
                let mu = module_min_gens(&p, 1).unwrap();
                let t = p.transpose();
                assert_eq!(module_colength(&t, 1).unwrap(), len);
                assert_eq!(module_min_gens(&t, 1).unwrap(), mu);
                let mut cols = p.cols().to_vec();
                cols.reverse();
                let q = Presentation2::new(cols).unwrap();
                assert_eq!(module_colength(&q, 1).unwrap(), len);
                assert_eq!(module_min_gens(&q, 1).unwrap(), mu);
            }
        }
    }
}
