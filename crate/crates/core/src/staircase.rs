//! Monomials and m-primary monomial ideals in two variables.
//!
//! An m-primary monomial ideal of `R` is determined by its staircase: the
//! antichain of exponent pairs of its minimal generators. Generators are kept
//! sorted by strictly decreasing `x`-exponent, so the staircase reads
//! `a_0 > a_1 > ... > a_r = 0` and `0 = b_0 < b_1 < ... < b_r`, and two
//! ideals are equal exactly when their generator vectors are.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The monomial `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub const fn x(a: u32) -> Self {
        Monomial { a, b: 0 }
    }

    pub const fn y(b: u32) -> Self {
        Monomial { a: 0, b }
    }

    pub fn degree(self) -> u64 {
        u64::from(self.a) + u64::from(self.b)
    }

    /// Coordinatewise divisibility `self | other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial {
            a: self.a.checked_add(other.a)?,
            b: self.b.checked_add(other.b)?,
        })
    }

    /// Product of monomials.
    ///
    /// Panics on exponent overflow; callers handling untrusted input bound
    /// exponents before reaching here.
    pub fn times(self, other: Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn pow(self, n: u32) -> Monomial {
        Monomial {
            a: self.a.checked_mul(n).expect("monomial exponent overflow"),
            b: self.b.checked_mul(n).expect("monomial exponent overflow"),
        }
    }

    pub fn transpose(self) -> Monomial {
        Monomial {
            a: self.b,
            b: self.a,
        }
    }
}

impl From<(u32, u32)> for Monomial {
    fn from((a, b): (u32, u32)) -> Self {
        Monomial { a, b }
    }
}

impl From<Monomial> for (u32, u32) {
    fn from(m: Monomial) -> Self {
        (m.a, m.b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn var(f: &mut fmt::Formatter<'_>, name: char, e: u32) -> fmt::Result {
            match e {
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            }
        }
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, 0) => var(f, 'x', a),
            (0, b) => var(f, 'y', b),
            (a, b) => {
                var(f, 'x', a)?;
                write!(f, "*")?;
                var(f, 'y', b)
            }
        }
    }
}

/// An m-primary monomial ideal, or the unit ideal, stored as its staircase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Monomial>", into = "Vec<Monomial>")]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

/// Keep the minimal elements of `raw`, sorted by decreasing `a`.
fn minimalize(mut raw: Vec<Monomial>) -> Vec<Monomial> {
    raw.sort_unstable();
    raw.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(raw.len());
    let mut min_b = u32::MAX;
    // ascending a (ties by ascending b): a point survives iff its b beats
    // every point with smaller or equal a
    for m in raw {
        if m.b < min_b {
            min_b = m.b;
            out.push(m);
        }
    }
    out.reverse();
    out
}

impl MonomialIdeal {
    /// Canonical staircase of the ideal generated by `raw`.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let raw: Vec<Monomial> = raw.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        let gens = minimalize(raw);
        // after minimalization the first generator has the largest a and
        // smallest b; m-primary iff it is a pure x-power and the last a pure
        // y-power
        if gens[0].b != 0 {
            return Err(Error::NotMPrimary { missing: 'x' });
        }
        if gens[gens.len() - 1].a != 0 {
            return Err(Error::NotMPrimary { missing: 'y' });
        }
        Ok(MonomialIdeal { gens })
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        Self::normalize(pairs.iter().copied().map(Monomial::from))
    }

    pub fn unit() -> Self {
        MonomialIdeal {
            gens: vec![Monomial::ONE],
        }
    }

    /// The maximal ideal raised to the `n`-th power.
    pub fn maximal_power(n: u32) -> Self {
        if n == 0 {
            return Self::unit();
        }
        MonomialIdeal {
            gens: (0..=n).map(|i| Monomial::new(n - i, i)).collect(),
        }
    }

    /// The ideal `(x^p, y^q)` for positive `p` and `q`.
    pub fn binomial(p: u32, q: u32) -> Self {
        Self::normalize([Monomial::x(p), Monomial::y(q)]).expect("pure powers are m-primary")
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens[0] == Monomial::ONE
    }

    /// Fails with [`Error::UnitIdeal`] for the unit ideal.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// The index `r`, one less than the number of minimal generators.
    pub fn r(&self) -> usize {
        self.gens.len() - 1
    }

    /// `a_0`, the exponent of the pure `x`-power.
    pub fn a0(&self) -> u32 {
        self.gens[0].a
    }

    /// `b_r`, the exponent of the pure `y`-power.
    pub fn br(&self) -> u32 {
        self.gens[self.gens.len() - 1].b
    }

    pub fn a(&self, i: usize) -> u32 {
        self.gens[i].a
    }

    pub fn b(&self, i: usize) -> u32 {
        self.gens[i].b
    }

    pub fn num_min_gens(&self) -> usize {
        self.gens.len()
    }

    /// `ord(I)`: the minimal total degree of a generator.
    pub fn order(&self) -> u64 {
        self.gens
            .iter()
            .map(|g| g.degree())
            .min()
            .expect("staircase is nonempty")
    }

    pub fn member(&self, m: Monomial) -> bool {
        // generators with a <= m.a form a suffix; its first element has the
        // smallest b among them
        let idx = self.gens.partition_point(|g| g.a > m.a);
        idx < self.gens.len() && self.gens[idx].b <= m.b
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|&g| self.member(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        // lowest product exponent in each column, then the staircase corners
        let width = self.gens[0].a as usize + other.gens[0].a as usize;
        let mut lowest = vec![u32::MAX; width + 1];
        for &g in &self.gens {
            for &h in &other.gens {
                let m = g.times(h);
                let slot = &mut lowest[m.a as usize];
                *slot = (*slot).min(m.b);
            }
        }
        let mut gens = Vec::new();
        let mut floor = u32::MAX;
        for (a, &b) in lowest.iter().enumerate() {
            if b < floor {
                floor = b;
                gens.push(Monomial::new(a as u32, b));
            }
        }
        gens.reverse();
        MonomialIdeal { gens }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let raw = self.gens.iter().chain(other.gens.iter()).copied();
        Self::normalize(raw).expect("sum of m-primary ideals is m-primary")
    }

    /// `self^n`; `n = 0` gives the unit ideal.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut result = MonomialIdeal::unit();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.product(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Swap the roles of `x` and `y`.
    pub fn transpose(&self) -> MonomialIdeal {
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.transpose()).collect();
        gens.reverse();
        MonomialIdeal { gens }
    }

    /// Height of the staircase over column `u`: the least `v` with
    /// `x^u y^v` in the ideal.
    pub fn height(&self, u: u32) -> u32 {
        let idx = self.gens.partition_point(|g| g.a > u);
        self.gens[idx].b
    }

    /// `ℓ(R/I)`, the number of lattice points under the staircase.
    pub fn colength(&self) -> u64 {
        // between consecutive corners the height is constant
        self.gens
            .windows(2)
            .map(|w| u64::from(w[0].a - w[1].a) * u64::from(w[1].b))
            .sum()
    }
}

impl TryFrom<Vec<Monomial>> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: Vec<Monomial>) -> Result<Self> {
        Self::normalize(raw)
    }
}

impl From<MonomialIdeal> for Vec<Monomial> {
    fn from(ideal: MonomialIdeal) -> Self {
        ideal.gens
    }
}

/// Canonical generator syntax, e.g. `(x^2, x*y, y^3)`.
impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
