//! Fixed inputs shared by the benchmarks.

use icmod_core::MonomialIdeal;

/// `(x^7, x^5 y, x^3 y^2, x^2 y^3, x y^5, y^9)`.
pub fn case_one_ideal() -> MonomialIdeal {
    MonomialIdeal::from_pairs(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)])
        .expect("valid staircase")
}

/// A product of `n` factors `(x^i, y^{i+1})`, a larger non-complete input.
pub fn wide_product(n: u32) -> MonomialIdeal {
    (1..=n).fold(MonomialIdeal::unit(), |acc, i| {
        acc.product(&MonomialIdeal::binomial(i, i + 1))
    })
}
