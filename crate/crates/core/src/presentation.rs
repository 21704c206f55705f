//! Rank-two submodules of `F = R^2` presented by 2×m matrices whose entries
//! are single monomials, and the modules `M_k(I)` built from a staircase.
//!
//! For `I = (x^{a_i} y^{b_i} | 0 <= i <= r)` and `1 <= k < b_r`, `M_k(I)` is
//! generated by the columns
//!
//! ```text
//! x^{a_0-1}  ...  x^{a_i-1} y^{b_i}  ...  x^{a_{r-1}-1} y^{b_{r-1}}  y^k  0
//! 0          ...  0                  ...  0                          x    y^{b_r-k}
//! ```
//!
//! Its Fitting ideals are the ideal of 2×2 minors and the ideal of entries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::staircase::{Monomial, MonomialIdeal};
use crate::truncation;

/// One column `(top, bottom)`; `None` is a zero entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Option<Monomial>, Option<Monomial>)")]
#[serde(into = "(Option<Monomial>, Option<Monomial>)")]
pub struct Column {
    pub top: Option<Monomial>,
    pub bottom: Option<Monomial>,
}

impl Column {
    pub fn new(top: Option<Monomial>, bottom: Option<Monomial>) -> Self {
        Column { top, bottom }
    }

    pub fn top(m: Monomial) -> Self {
        Column::new(Some(m), None)
    }

    pub fn bottom(m: Monomial) -> Self {
        Column::new(None, Some(m))
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_none() && self.bottom.is_none()
    }

    pub fn transpose(&self) -> Column {
        Column::new(
            self.top.map(Monomial::transpose),
            self.bottom.map(Monomial::transpose),
        )
    }
}

impl From<(Option<Monomial>, Option<Monomial>)> for Column {
    fn from((top, bottom): (Option<Monomial>, Option<Monomial>)) -> Self {
        Column { top, bottom }
    }
}

impl From<Column> for (Option<Monomial>, Option<Monomial>) {
    fn from(c: Column) -> Self {
        (c.top, c.bottom)
    }
}

/// Where a presentation came from, when it was built as `M_k(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MkSource {
    pub ideal: MonomialIdeal,
    pub k: u32,
}

/// A 2×m monomial matrix presenting a submodule `M ⊆ R^2`.
///
/// Equality compares columns only.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation2 {
    cols: Vec<Column>,
    #[serde(skip)]
    source: Option<MkSource>,
}

impl PartialEq for Presentation2 {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols
    }
}

impl Eq for Presentation2 {}

impl Presentation2 {
    pub fn new(cols: Vec<Column>) -> Result<Self> {
        if cols.is_empty() || cols.iter().any(Column::is_zero) {
            return Err(Error::BadPresentation);
        }
        Ok(Presentation2 { cols, source: None })
    }

    pub fn cols(&self) -> &[Column] {
        &self.cols
    }

    pub fn source(&self) -> Option<&MkSource> {
        self.source.as_ref()
    }

    /// Swap `x` and `y` in every entry.
    pub fn transpose(&self) -> Presentation2 {
        Presentation2 {
            cols: self.cols.iter().map(Column::transpose).collect(),
            source: None,
        }
    }

    /// Nonzero 2×2 minors, signs dropped.
    pub fn minors(&self) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for (i, ci) in self.cols.iter().enumerate() {
            for (j, cj) in self.cols.iter().enumerate().skip(i + 1) {
                let plus = ci.top.zip(cj.bottom).map(|(s, t)| s.times(t));
                let minus = cj.top.zip(ci.bottom).map(|(s, t)| s.times(t));
                match (plus, minus) {
                    (Some(s), Some(t)) if s == t => {}
                    (Some(s), Some(t)) => return Err(Error::NonMonomialMinor(i, j, s, t)),
                    (Some(s), None) | (None, Some(s)) => out.push(s),
                    (None, None) => {}
                }
            }
        }
        Ok(out)
    }

    /// `I(M) = Fitt_0(F/M)`, the ideal of 2×2 minors.
    pub fn fitting0(&self) -> Result<MonomialIdeal> {
        let minors = self.minors()?;
        MonomialIdeal::normalize(minors).map_err(|_| Error::NotFiniteColength)
    }

    /// `I_1(M) = Fitt_1(F/M)`, the ideal of entries.
    pub fn fitting1(&self) -> Result<MonomialIdeal> {
        let entries = self
            .cols
            .iter()
            .flat_map(|c| c.top.into_iter().chain(c.bottom));
        MonomialIdeal::normalize(entries).map_err(|_| Error::NotFiniteColength)
    }
}

fn check_k(ideal: &MonomialIdeal, k: u32) -> Result<()> {
    let upper = ideal.br();
    if k < 1 || k >= upper {
        return Err(Error::KOutOfRange { k, upper });
    }
    Ok(())
}

/// The module `M_k(I)`.
pub fn build_mk(ideal: &MonomialIdeal, k: u32) -> Result<Presentation2> {
    ideal.require_proper()?;
    check_k(ideal, k)?;
    let r = ideal.r();
    let mut cols: Vec<Column> = ideal.gens()[..r]
        .iter()
        .map(|g| Column::top(Monomial::new(g.a - 1, g.b)))
        .collect();
    cols.push(Column::new(Some(Monomial::y(k)), Some(Monomial::x(1))));
    cols.push(Column::bottom(Monomial::y(ideal.br() - k)));
    Ok(Presentation2 {
        cols,
        source: Some(MkSource {
            ideal: ideal.clone(),
            k,
        }),
    })
}

/// `ℓ = min{b_{r-1}, k, b_r - k}`.
///
/// `I_1(M_k) = (x, y^ℓ)` whenever `a_{r-1} = 1` or `k <= b_{r-1}`.
pub fn ell_value(ideal: &MonomialIdeal, k: u32) -> Result<u32> {
    ideal.require_proper()?;
    check_k(ideal, k)?;
    let r = ideal.r();
    Ok(ideal.b(r - 1).min(k).min(ideal.br() - k))
}

/// `b_i + b_r - k >= b_{i+1}` for all `0 <= i < r`, which forces
/// `I(M_k) = I`.
pub fn fitting_condition_holds(ideal: &MonomialIdeal, k: u32) -> bool {
    let br = i64::from(ideal.br());
    let k = i64::from(k);
    ideal
        .gens()
        .windows(2)
        .all(|w| i64::from(w[0].b) + br - k >= i64::from(w[1].b))
}

/// Which of the two easy sufficient conditions for [`fitting_condition_holds`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FittingShortcut {
    /// `1 <= k <= r - 1`.
    SmallK,
    /// `r <= k <= b_{r-1}` and the last staircase step is the tallest.
    DominantLastGap,
    Neither,
}

pub fn fitting_shortcut(ideal: &MonomialIdeal, k: u32) -> FittingShortcut {
    let r = ideal.r() as u64;
    let k64 = u64::from(k);
    if k >= 1 && k64 < r {
        return FittingShortcut::SmallK;
    }
    if r >= 1 && k64 >= r && k <= ideal.b(ideal.r() - 1) {
        let gaps: Vec<u32> = ideal.gens().windows(2).map(|w| w[1].b - w[0].b).collect();
        let last = *gaps.last().expect("r >= 1");
        if gaps.iter().all(|&g| last >= g) {
            return FittingShortcut::DominantLastGap;
        }
    }
    FittingShortcut::Neither
}

/// `μ(M) = ord(I(M)) + rank(M)`, with `μ` computed by the truncation oracle.
pub fn contracted_numeric(p: &Presentation2, margin: u32) -> Result<bool> {
    let fitting = p.fitting0()?;
    let mu = truncation::module_min_gens(p, margin)?;
    Ok(mu as u64 == fitting.order() + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::is_complete;

    fn ideal(pairs: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::from_pairs(pairs).unwrap()
    }

    fn m(a: u32, b: u32) -> Monomial {
        Monomial::new(a, b)
    }

    fn n4_ideal() -> MonomialIdeal {
        ideal(&[(5, 0), (4, 1), (2, 2), (1, 3), (0, 5)])
    }

    fn case_one_ideal() -> MonomialIdeal {
        ideal(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)])
    }

    #[test]
    fn mk_matrices() {
        let p = build_mk(&n4_ideal(), 2).unwrap();
        assert_eq!(
            p.cols(),
            &[
                Column::top(m(4, 0)),
                Column::top(m(3, 1)),
                Column::top(m(1, 2)),
                Column::top(m(0, 3)),
                Column::new(Some(m(0, 2)), Some(m(1, 0))),
                Column::bottom(m(0, 3)),
            ]
        );
        assert_eq!(p.source().unwrap().k, 2);

        let p = build_mk(&MonomialIdeal::maximal_power(2), 1).unwrap();
        assert_eq!(
            p.cols(),
            &[
                Column::top(m(1, 0)),
                Column::top(m(0, 1)),
                Column::new(Some(m(0, 1)), Some(m(1, 0))),
                Column::bottom(m(0, 1)),
            ]
        );

        let (b1, b) = (2, 5);
        let p = build_mk(&ideal(&[(2, 0), (1, b1), (0, b)]), 1).unwrap();
        assert_eq!(
            p.cols(),
            &[
                Column::top(m(1, 0)),
                Column::top(m(0, b1)),
                Column::new(Some(m(0, 1)), Some(m(1, 0))),
                Column::bottom(m(0, b - 1)),
            ]
        );
    }

    #[test]
    fn k_range_is_enforced() {
        let i = MonomialIdeal::maximal_power(2);
        assert_eq!(
            build_mk(&i, 0).unwrap_err(),
            Error::KOutOfRange { k: 0, upper: 2 }
        );
        assert_eq!(
            build_mk(&i, 2).unwrap_err(),
            Error::KOutOfRange { k: 2, upper: 2 }
        );
        assert_eq!(ell_value(&i, 5), Err(Error::KOutOfRange { k: 5, upper: 2 }));
        assert_eq!(
            build_mk(&MonomialIdeal::unit(), 1).unwrap_err(),
            Error::UnitIdeal
        );
    }

    #[test]
    fn fitting_ideals() {
        let m2 = MonomialIdeal::maximal_power(2);
        assert_eq!(build_mk(&m2, 1).unwrap().fitting0().unwrap(), m2);
        assert_eq!(
            build_mk(&n4_ideal(), 2).unwrap().fitting0().unwrap(),
            n4_ideal()
        );
        let swap = Presentation2::new(vec![
            Column::new(Some(m(1, 0)), Some(m(0, 1))),
            Column::new(Some(m(0, 1)), Some(m(1, 0))),
        ])
        .unwrap();
        assert!(matches!(
            swap.fitting0(),
            Err(Error::NonMonomialMinor(0, 1, _, _))
        ));

        assert_eq!(
            build_mk(&case_one_ideal(), 3).unwrap().fitting1().unwrap(),
            ideal(&[(1, 0), (0, 3)])
        );
        assert_eq!(
            build_mk(&MonomialIdeal::maximal_power(3), 2)
                .unwrap()
                .fitting1()
                .unwrap(),
            MonomialIdeal::maximal_power(1)
        );
        assert_eq!(
            build_mk(&m2, 1).unwrap().fitting1().unwrap(),
            MonomialIdeal::maximal_power(1)
        );
    }

    #[test]
    fn fitting0_matches_minor_formula() {
        // I(M_k) = I + (x^{a_i-1} y^{b_i+b_r-k} | i < r)
        let i = ideal(&[(2, 0), (1, 1), (0, 5)]);
        let k = 3;
        let extra = i.gens()[..i.r()]
            .iter()
            .map(|g| m(g.a - 1, g.b + i.br() - k));
        let expected = MonomialIdeal::normalize(i.gens().iter().copied().chain(extra)).unwrap();
        let got = build_mk(&i, k).unwrap().fitting0().unwrap();
        assert_eq!(got, expected);
        assert_ne!(got, i);
        assert!(!fitting_condition_holds(&i, k));
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell_value(&case_one_ideal(), 3).unwrap(), 3);
        assert_eq!(ell_value(&MonomialIdeal::maximal_power(3), 2).unwrap(), 1);
        assert_eq!(ell_value(&case_one_ideal(), 1).unwrap(), 1);
    }

    #[test]
    fn fitting_condition_and_shortcuts() {
        for r in 2..6 {
            let i = MonomialIdeal::maximal_power(r);
            for k in 1..r {
                assert!(fitting_condition_holds(&i, k));
                assert_eq!(fitting_shortcut(&i, k), FittingShortcut::SmallK);
            }
        }
        assert!(fitting_condition_holds(&case_one_ideal(), 1));

        // (x,y)(x,y^2)(x,y^3)(x,y^4)(x^2,y): b_i = i(i-1)/2 + 1
        let chain_x2_y = ideal(&[(6, 0), (4, 1), (3, 2), (2, 4), (1, 7), (0, 11)]);
        assert!(fitting_condition_holds(&chain_x2_y, 5));
        assert_eq!(
            fitting_shortcut(&chain_x2_y, 5),
            FittingShortcut::DominantLastGap
        );

        // (x,y)(x,y^2)(x,y^3)(x,y^4)(x,y^3)
        let chain_x_y5 = ideal(&[(5, 0), (4, 1), (3, 3), (2, 6), (1, 9), (0, 13)]);
        assert!(is_complete(&chain_x_y5));
        assert_eq!(
            fitting_shortcut(&chain_x_y5, 5),
            FittingShortcut::DominantLastGap
        );

        let i = ideal(&[(2, 0), (1, 1), (0, 5)]);
        assert_eq!(fitting_shortcut(&i, 3), FittingShortcut::Neither);
        assert_eq!(fitting_shortcut(&i, 1), FittingShortcut::SmallK);
    }

    #[test]
    fn contracted_examples() {
        let p = build_mk(&MonomialIdeal::maximal_power(3), 1).unwrap();
        assert!(contracted_numeric(&p, 2).unwrap());
        let e52 = ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)]);
        assert!(contracted_numeric(&build_mk(&e52, 2).unwrap(), 2).unwrap());
        let free = Presentation2::new(vec![
            Column::top(Monomial::ONE),
            Column::bottom(Monomial::ONE),
        ])
        .unwrap();
        assert_eq!(free.fitting0().unwrap(), MonomialIdeal::unit());
        assert!(contracted_numeric(&free, 2).unwrap());
    }

    #[test]
    fn bad_presentations() {
        assert_eq!(Presentation2::new(vec![]), Err(Error::BadPresentation));
        assert_eq!(
            Presentation2::new(vec![Column::new(None, None)]),
            Err(Error::BadPresentation)
        );
        let only_x =
            Presentation2::new(vec![Column::top(m(1, 0)), Column::bottom(m(1, 0))]).unwrap();
        assert_eq!(only_x.fitting0(), Err(Error::NotFiniteColength));
    }

    #[test]
    fn column_serde() {
        let c = Column::new(Some(m(0, 2)), Some(m(1, 0)));
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[0,2],[1,0]]");
        let c = Column::top(m(4, 0));
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[4,0],null]");
    }
}
