//! Choosing `k` so that `M_k(I)` is an indecomposable integrally closed
//! module with `I(M_k) = I`, for a complete m-primary monomial ideal `I`.
//!
//! After orienting `I` so that `a_0 <= b_r`, the ideal falls into exactly
//! one branch:
//!
//! * `r >= 3` with no simple factor of order one: any `1 <= k <= r-1`.
//! * `r >= 3` with some `(x, y^ℓ)`, `1 <= ℓ <= r-1`, missing from the
//!   factorization: `k_0` is the least such `ℓ`. When `I_1(M_{k_0}) =
//!   (x, y^{k_0})` and `x y^{k_0} ∉ I` this is case I; otherwise `I` is one
//!   of four exceptional ideals N1..N4.
//! * `r >= 3` with every `(x, y^ℓ)` present: case II-1 or II-2, depending
//!   on whether the remaining order-one factor is `(x^α, y)` or `(x, y^β)`.
//! * `r = 2`: covered when `xy ∉ I`, open otherwise.
//!
//! Each branch ends in a [`Certificate`] listing the side conditions that
//! were checked.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::newton::{
    closure, is_complete, reconstruct, zariski_factor, Factorization, SimpleFactor,
};
use crate::presentation::{build_mk, ell_value, fitting_condition_holds, Presentation2};
use crate::staircase::{Monomial, MonomialIdeal};
use crate::truncation::{module_colength, module_min_gens, DEFAULT_MARGIN};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    NoOrder1Factor,
    CaseI,
    N1,
    N2,
    N3,
    N4,
    CaseII1,
    CaseII2,
    R2Simple,
    R2Split,
    R2Open,
    NotCovered,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    IndecomposableByPaper,
    OpenPerPaper,
    NotCovered,
    /// A user-forced `k` outside the proven ranges.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Branch of an oriented complete ideal, with the parameters it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub branch: Branch,
    pub r: usize,
    pub k0: Option<u32>,
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
}

impl Classification {
    fn new(branch: Branch, r: usize) -> Self {
        Classification {
            branch,
            r,
            k0: None,
            alpha: None,
            beta: None,
        }
    }

    /// The `k` the branch's theorem proves indecomposable.
    pub fn default_k(&self) -> Option<u32> {
        let r = self.r as u32;
        match self.branch {
            Branch::NoOrder1Factor => Some(1),
            Branch::CaseI => self.k0,
            Branch::N1 | Branch::N2 | Branch::N3 => Some(r - 2),
            Branch::N4 => Some(2),
            Branch::CaseII1 => Some(match r {
                3 => 1,
                4 => 3,
                _ => r,
            }),
            Branch::CaseII2 => Some(match (r, self.beta) {
                (3, _) => 2,
                (_, Some(beta)) if beta == r => r + 1,
                _ => r,
            }),
            Branch::R2Simple | Branch::R2Split => Some(1),
            Branch::R2Open | Branch::NotCovered => None,
        }
    }

    /// Branches whose indecomposability argument compares lengths instead
    /// of reading off a missing factor.
    fn uses_length_argument(&self) -> bool {
        match self.branch {
            Branch::N1 | Branch::N2 | Branch::N3 | Branch::N4 => true,
            Branch::CaseII1 => self.r <= 4,
            Branch::CaseII2 => self.r == 3,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
        }
    }
}

/// Outcome of the decision procedure for one ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// The ideal as supplied.
    pub input: MonomialIdeal,
    /// The ideal actually decided: closed if requested, then oriented.
    pub normalized_input: MonomialIdeal,
    pub closed: bool,
    pub transposed: bool,
    pub order: u64,
    pub factorization: Factorization,
    pub branch: Branch,
    pub k: Option<u32>,
    pub k_forced: bool,
    pub matrix: Option<Presentation2>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub tool_version: String,
}

impl Certificate {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Replace a non-complete input by its integral closure.
    pub close_first: bool,
    /// Override the branch's default `k`.
    pub k: Option<u32>,
    /// Truncation margin for the module oracles.
    pub margin: u32,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            close_first: false,
            k: None,
            margin: DEFAULT_MARGIN,
        }
    }
}

/// Transpose `I` if needed so that `a_0 <= b_r`.
pub fn orient(ideal: &MonomialIdeal) -> (MonomialIdeal, bool) {
    if ideal.a0() > ideal.br() {
        (ideal.transpose(), true)
    } else {
        (ideal.clone(), false)
    }
}

fn require_oriented(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.a0() > ideal.br() {
        return Err(Error::NotOriented {
            a0: ideal.a0(),
            br: ideal.br(),
        });
    }
    Ok(())
}

fn x_y(l: u32) -> SimpleFactor {
    SimpleFactor::new(1, l).expect("(1, l) is coprime")
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

/// `I_1(M_k) = (x, y^k)` and `x y^k ∉ I`.
fn condition_f(ideal: &MonomialIdeal, k: u32) -> Result<bool> {
    let p = build_mk(ideal, k)?;
    let shape = MonomialIdeal::normalize([Monomial::x(1), Monomial::y(k)])?;
    Ok(p.fitting1()? == shape && !ideal.member(Monomial::new(1, k)))
}

/// Match a failing case-I ideal against the exceptional list.
fn match_exceptional(r: usize, f: &Factorization) -> Option<(Branch, Option<u32>, Option<u32>)> {
    let fac = |items: &[((u32, u32), u32)]| {
        Factorization::from_factors(
            items
                .iter()
                .map(|&((p, q), m)| (SimpleFactor::new(p, q).expect("coprime"), m)),
        )
    };
    match r {
        3 => {
            // (x,y)(x^α,y)(x,y^β) with β >= α >= 1
            let rest = f.without(x_y(1))?.expanded();
            let [s, t] = rest.as_slice() else {
                return None;
            };
            for (u, v) in [(s, t), (t, s)] {
                if u.q() == 1 && v.p() == 1 && v.q() >= u.p() {
                    return Some((Branch::N1, Some(u.p()), Some(v.q())));
                }
            }
            None
        }
        4 => {
            if *f == fac(&[((1, 1), 3), ((1, 2), 1)]) {
                Some((Branch::N2, Some(1), Some(2)))
            } else if *f == fac(&[((1, 1), 2), ((1, 2), 1), ((2, 1), 1)]) {
                Some((Branch::N3, Some(2), Some(2)))
            } else if *f == fac(&[((1, 1), 1), ((1, 2), 1), ((3, 2), 1)]) {
                Some((Branch::N4, None, None))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Branch of a complete, oriented, m-primary ideal.
pub fn classify(ideal: &MonomialIdeal) -> Result<Classification> {
    ideal.require_proper()?;
    if !is_complete(ideal) {
        return Err(Error::NotComplete);
    }
    require_oriented(ideal)?;
    let r = ideal.r();
    if ideal.order() != r as u64 {
        return Err(inconsistent(format!(
            "complete ideal with {} generators has order {}",
            r + 1,
            ideal.order()
        )));
    }
    if r <= 1 {
        return Ok(Classification::new(Branch::NotCovered, r));
    }
    let f = zariski_factor(ideal)?;
    if r == 2 {
        if ideal.member(Monomial::new(1, 1)) {
            return Ok(Classification::new(Branch::R2Open, r));
        }
        // (x^2, x y^b', y^b) with b > b' >= 2
        if ideal.a0() != 2 || ideal.a(1) != 1 {
            return Err(inconsistent(format!(
                "unexpected order-two staircase {ideal}"
            )));
        }
        let (b1, b) = (ideal.b(1), ideal.br());
        let branch = if b < 2 * b1 {
            Branch::R2Simple
        } else {
            Branch::R2Split
        };
        let simple = f.len() == 1;
        if simple != (branch == Branch::R2Simple) {
            return Err(inconsistent(format!(
                "{ideal} simplicity disagrees with b < 2b'"
            )));
        }
        return Ok(Classification::new(branch, r));
    }
    if ideal.a(r - 1) != 1 {
        return Err(inconsistent(format!(
            "oriented complete ideal {ideal} has a_(r-1) = {}",
            ideal.a(r - 1)
        )));
    }
    if !f.has_order_one_factor() {
        return Ok(Classification::new(Branch::NoOrder1Factor, r));
    }
    let missing = (1..r as u32).find(|&l| f.multiplicity(x_y(l)) == 0);
    if let Some(k0) = missing {
        if condition_f(ideal, k0)? {
            let mut c = Classification::new(Branch::CaseI, r);
            c.k0 = Some(k0);
            return Ok(c);
        }
        let (branch, alpha, beta) = match_exceptional(r, &f).ok_or_else(|| {
            inconsistent(format!(
                "condition (F_{k0}) fails for {ideal} but no exceptional pattern matches"
            ))
        })?;
        return Ok(Classification {
            branch,
            r,
            k0: Some(k0),
            alpha,
            beta,
        });
    }
    // every (x, y^l), 1 <= l <= r-1, divides I; one order-one factor remains
    let mut rest = f.clone();
    for l in 1..r as u32 {
        rest = rest.without(x_y(l)).expect("multiplicity checked above");
    }
    match rest.expanded().as_slice() {
        [s] if s.q() == 1 => Ok(Classification {
            branch: Branch::CaseII1,
            r,
            k0: None,
            alpha: Some(s.p()),
            beta: None,
        }),
        [s] if s.p() == 1 => Ok(Classification {
            branch: Branch::CaseII2,
            r,
            k0: None,
            alpha: None,
            beta: Some(s.q()),
        }),
        _ => Err(inconsistent(format!(
            "case II residual {rest} of {ideal} is not a single order-one factor"
        ))),
    }
}

/// Why [`sufficient_indecomposable`] certified (or failed to certify).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sufficiency {
    /// No simple factor of order one.
    NoOrderOneFactor,
    /// `x y^ℓ ∉ I` and `(x, y^ℓ)` is not a factor.
    MissingFactor {
        ell: u32,
    },
    Inconclusive {
        ell: u32,
    },
}

impl Sufficiency {
    pub fn holds(self) -> bool {
        !matches!(self, Sufficiency::Inconclusive { .. })
    }
}

/// Sufficient condition for `M_k` to be indecomposable, valid whenever
/// `M_k` is integrally closed with `I(M_k) = I`.
pub fn sufficient_indecomposable(ideal: &MonomialIdeal, k: u32) -> Result<Sufficiency> {
    ideal.require_proper()?;
    let f = zariski_factor(ideal)?;
    require_oriented(ideal)?;
    let p = build_mk(ideal, k)?;
    if p.fitting0()? != *ideal {
        return Err(Error::FittingMismatch);
    }
    let ell = ell_value(ideal, k)?;
    if !f.has_order_one_factor() {
        return Ok(Sufficiency::NoOrderOneFactor);
    }
    if !ideal.member(Monomial::new(1, ell)) && f.multiplicity(x_y(ell)) == 0 {
        return Ok(Sufficiency::MissingFactor { ell });
    }
    Ok(Sufficiency::Inconclusive { ell })
}

fn entries_ideal<'a>(entries: impl Iterator<Item = &'a Monomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::normalize(entries.copied()).map_err(|_| Error::NotFiniteColength)
}

/// Checks every certificate carries: `I(M_k) = I`, the shape of `I_1`,
/// and `μ(M_k) = r + 2`.
fn common_checks(
    ideal: &MonomialIdeal,
    k: u32,
    p: &Presentation2,
    margin: u32,
) -> Result<Vec<Check>> {
    let r = ideal.r();
    let ell = ell_value(ideal, k)?;
    let shape = MonomialIdeal::normalize([Monomial::x(1), Monomial::y(ell)])?;
    let fitting0 = p.fitting0()?;
    let mu = module_min_gens(p, margin)?;
    Ok(vec![
        Check::new("fitting0_equals_input", fitting0 == *ideal),
        Check::new("fitting_condition", fitting_condition_holds(ideal, k)),
        Check::new("fitting1_shape", p.fitting1()? == shape),
        Check::new("mu_equals_r_plus_2", mu == r + 2),
    ])
}

/// Indecomposability via a missing factor `(x, y^ℓ)`.
fn missing_factor_checks(ideal: &MonomialIdeal, f: &Factorization, ell: u32) -> Vec<Check> {
    vec![
        Check::new("xy^ell_not_in_input", !ideal.member(Monomial::new(1, ell))),
        Check::new("x_y^ell_not_dividing", f.multiplicity(x_y(ell)) == 0),
    ]
}

/// Indecomposability via lengths: a splitting would force
/// `M_k ≅ (x, y^ℓ) ⊕ I/(x, y^ℓ)`, whose colength equals the lower bound
/// from `F/M_k ->> R/J_top ⊕ R/J_bottom`; equality there would give
/// `I = J_top J_bottom`.
fn length_checks(
    ideal: &MonomialIdeal,
    f: &Factorization,
    ell: u32,
    p: &Presentation2,
    margin: u32,
) -> Result<Vec<Check>> {
    let mut checks = vec![Check::new(
        "xy^ell_not_in_input",
        !ideal.member(Monomial::new(1, ell)),
    )];
    let Some(cofactor) = f.without(x_y(ell)) else {
        checks.push(Check::new("x_y^ell_not_dividing", true));
        return Ok(checks);
    };
    let split = MonomialIdeal::binomial(1, ell).colength() + reconstruct(&cofactor).colength();
    let top = entries_ideal(p.cols().iter().filter_map(|c| c.top.as_ref()))?;
    let bottom = entries_ideal(p.cols().iter().filter_map(|c| c.bottom.as_ref()))?;
    let bound = top.colength() + bottom.colength();
    let length = module_colength(p, margin)?;
    checks.push(Check::new(
        "split_length_equals_surjection_bound",
        split == bound,
    ));
    checks.push(Check::new(
        "fitting_product_refutation",
        top.product(&bottom) != *ideal,
    ));
    checks.push(Check::new(
        "module_length_exceeds_split_length",
        length > split,
    ));
    Ok(checks)
}

fn branch_checks(
    ideal: &MonomialIdeal,
    f: &Factorization,
    cls: &Classification,
    k: u32,
    p: &Presentation2,
    margin: u32,
) -> Result<Vec<Check>> {
    let ell = ell_value(ideal, k)?;
    if cls.branch == Branch::NoOrder1Factor {
        return Ok(vec![Check::new(
            "no_order1_factor",
            !f.has_order_one_factor(),
        )]);
    }
    if cls.uses_length_argument() {
        return length_checks(ideal, f, ell, p, margin);
    }
    let mut checks = Vec::new();
    if matches!(
        cls.branch,
        Branch::CaseI | Branch::CaseII1 | Branch::CaseII2
    ) {
        checks.push(Check::new("ell_equals_k", ell == k));
    }
    checks.extend(missing_factor_checks(ideal, f, ell));
    Ok(checks)
}

/// Runs the decision procedure and records every side condition.
pub fn choose_k(input: &MonomialIdeal, opts: &DecideOptions) -> Result<Certificate> {
    input.require_proper()?;
    let complete = is_complete(input);
    if !complete && !opts.close_first {
        return Err(Error::NotComplete);
    }
    let closed = !complete;
    let working = if closed {
        closure(input)
    } else {
        input.clone()
    };
    let (ideal, transposed) = orient(&working);
    let cls = classify(&ideal)?;
    let f = zariski_factor(&ideal)?;
    let r = ideal.r();

    let default_k = cls.default_k();
    let k = opts.k.or(default_k);
    let mut cert = Certificate {
        input: input.clone(),
        normalized_input: ideal.clone(),
        closed,
        transposed,
        order: ideal.order(),
        factorization: f.clone(),
        branch: cls.branch,
        k,
        k_forced: opts.k.is_some(),
        matrix: None,
        checks: Vec::new(),
        verdict: match cls.branch {
            Branch::R2Open => Verdict::OpenPerPaper,
            Branch::NotCovered => Verdict::NotCovered,
            _ => Verdict::Unknown,
        },
        tool_version: TOOL_VERSION.to_string(),
    };
    let Some(k) = k else {
        return Ok(cert);
    };
    let p = build_mk(&ideal, k)?;
    cert.checks = common_checks(&ideal, k, &p, opts.margin)?;
    let certified_by_theorem = default_k.is_some() && Some(k) == default_k;
    if certified_by_theorem {
        cert.checks
            .extend(branch_checks(&ideal, &f, &cls, k, &p, opts.margin)?);
    } else if default_k.is_some() && (k as usize) < r {
        // a forced k in the range where M_k is known to be integrally closed
        let extra = if f.has_order_one_factor() {
            missing_factor_checks(&ideal, &f, ell_value(&ideal, k)?)
        } else {
            vec![Check::new("no_order1_factor", true)]
        };
        cert.checks.extend(extra);
    }
    let proven = default_k.is_some() && (certified_by_theorem || (k as usize) < r);
    if proven && cert.all_checks_pass() {
        cert.verdict = Verdict::IndecomposableByPaper;
    }
    cert.matrix = Some(p);
    Ok(cert)
}

/// Every `k` for which the procedure certifies `M_k`: the branch default
/// plus each `1 <= k <= r-1` passing [`sufficient_indecomposable`].
pub fn valid_ks(input: &MonomialIdeal, opts: &DecideOptions) -> Result<Vec<u32>> {
    let base = choose_k(input, &DecideOptions { k: None, ..*opts })?;
    if base.verdict != Verdict::IndecomposableByPaper {
        return Ok(Vec::new());
    }
    let ideal = &base.normalized_input;
    let mut ks: Vec<u32> = (1..ideal.r() as u32)
        .filter(|&k| matches!(sufficient_indecomposable(ideal, k), Ok(s) if s.holds()))
        .collect();
    ks.extend(base.k);
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

/// Field-by-field differences between `cert` and a fresh recomputation.
pub fn certificate_diff(cert: &Certificate, margin: u32) -> Vec<String> {
    let opts = DecideOptions {
        close_first: cert.closed,
        k: if cert.k_forced { cert.k } else { None },
        margin,
    };
    let fresh = match choose_k(&cert.input, &opts) {
        Ok(c) => c,
        Err(e) => return vec![format!("recomputation failed: {e}")],
    };
    let mut diffs = Vec::new();
    macro_rules! cmp {
        ($field:ident) => {
            if cert.$field != fresh.$field {
                diffs.push(format!(
                    "{}: recorded {:?}, recomputed {:?}",
                    stringify!($field),
                    cert.$field,
                    fresh.$field
                ));
            }
        };
    }
    cmp!(normalized_input);
    cmp!(transposed);
    cmp!(order);
    cmp!(factorization);
    cmp!(branch);
    cmp!(k);
    cmp!(matrix);
    cmp!(checks);
    cmp!(verdict);
    diffs
}

/// Recomputes the certificate from its input and compares.
pub fn verify_certificate(cert: &Certificate) -> bool {
    certificate_diff(cert, DEFAULT_MARGIN).is_empty()
}
