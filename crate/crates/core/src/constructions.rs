//! Codes that meet or come close to the bounds.

use num_traits::Pow;
use serde::Serialize;

use crate::bounds::{rate_bound, rate_bound_t1, Rational};
use crate::code::{checked_power, LinearCode, DEFAULT_GUARD};
use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::recovery::{find_family, RecoveringFamily};

/// Parity-check rows of the [6, 3] shortened binary Hamming code.
pub const HAMMING_6_3_PARITY: [[u16; 6]; 3] =
    [[0, 0, 0, 1, 1, 1], [0, 1, 1, 0, 0, 1], [1, 0, 1, 0, 1, 0]];

/// The `t`-fold tensor power of the binary `[r + 1, r]` single-parity-check
/// code, with its axis-aligned recovering sets.
///
/// Coordinates are the `t`-tuples over `0..=r` in lexicographic order. Color
/// `l` is the line through a coordinate that varies its `l`-th last tuple
/// entry (stride `(r + 1)^(l - 1)`); for `t = 2` in row-major order color 1 is
/// the row and color 2 the column.
pub fn parity_product_code(r: usize, t: usize) -> Result<(LinearCode, RecoveringFamily)> {
    if r == 0 || t == 0 {
        return Err(Error::Domain(format!(
            "need r, t >= 1, got r = {r}, t = {t}"
        )));
    }
    let n = match checked_power(r as u32 + 1, t) {
        Some(n) if n <= DEFAULT_GUARD as u128 => n as usize,
        Some(n) => return Err(Error::guard("product code length", n, DEFAULT_GUARD)),
        None => {
            return Err(Error::guard(
                "product code length",
                format!("{}^{t}", r + 1),
                DEFAULT_GUARD,
            ))
        }
    };
    let k = r.pow(t as u32);
    if (k as u128) * (n as u128) > DEFAULT_GUARD as u128 {
        return Err(Error::guard("generator entries", k * n, DEFAULT_GUARD));
    }

    let field = Field::binary();
    let mut spc = Matrix::zeros(r, r + 1);
    for i in 0..r {
        spc.set(i, i, 1);
        spc.set(i, r, 1);
    }
    let mut generator = spc.clone();
    for _ in 1..t {
        generator = generator.kronecker(&field, &spc);
    }
    let code = LinearCode::from_generator(field, generator)?;

    let side = r + 1;
    let sets = (0..n)
        .map(|c| {
            (0..t)
                .map(|axis| {
                    let stride = side.pow(axis as u32);
                    let digit = (c / stride) % side;
                    CoordSet::from_zero_based(
                        (0..side)
                            .filter(|&e| e != digit)
                            .map(|e| c - digit * stride + e * stride),
                    )
                })
                .collect()
        })
        .collect();
    let family = RecoveringFamily::new(r, t, sets)?;
    Ok((code, family))
}

/// The [6, 3, 3] shortened binary Hamming code with its lexicographically
/// first family of two disjoint recovering sets of size 2 per coordinate.
pub fn shortened_hamming_6_3() -> (LinearCode, RecoveringFamily) {
    let rows: Vec<Vec<u16>> = HAMMING_6_3_PARITY.iter().map(|r| r.to_vec()).collect();
    let parity = Matrix::from_rows(&rows, 6).expect("fixed matrix is rectangular");
    let code =
        LinearCode::from_parity_check(Field::binary(), parity).expect("fixed matrix has rank 3");
    let family = find_family(&code, 2, 2)
        .expect("small code")
        .expect("every coordinate has two disjoint recovering pairs");
    (code, family)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateGap {
    #[serde(serialize_with = "crate::bounds::serialize_rational")]
    pub construction: Rational,
    #[serde(serialize_with = "crate::bounds::serialize_rational")]
    pub bound: Rational,
    #[serde(serialize_with = "crate::bounds::serialize_rational")]
    pub gap: Rational,
}

/// Rate `(r/(r+1))^t` of the product construction against the rate bound.
pub fn rate_gap_report(r: usize, t: usize) -> Result<RateGap> {
    let construction: Rational = Pow::pow(rate_bound_t1(r)?, t);
    let bound = rate_bound(r, t)?;
    Ok(RateGap {
        gap: &bound - &construction,
        construction,
        bound,
    })
}
