//! Toeplitz action of `u - 1` and elementary divisors over `Z/p^N`.

use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::series::TruncatedSeries;

/// Square matrix over `Z/p^N`, row-major.
pub type Matrix = Vec<Vec<PadicInt>>;

/// Entry `(j, i)` is the coefficient `(u - 1)_{i - j}` for `i ≥ j`, so column
/// `i` is `(u - 1)(β_i)` in the basis `β_0, …, β_{M-1}`.
pub fn toeplitz_matrix(u: &TruncatedSeries, size: usize) -> Result<Matrix> {
    if size > u.truncation() {
        return Err(Error::PrecisionExhausted(format!(
            "a {size}x{size} matrix needs u mod x^{size}, have x^{}",
            u.truncation()
        )));
    }
    let one = u.coeff(0).sibling(1);
    let zero = PadicInt::zero(u.prime(), u.precision())?;
    let coeff = |d: usize| if d == 0 { *u.coeff(0) - one } else { *u.coeff(d) };
    Ok((0..size).map(|j| (0..size).map(|i| if i >= j { coeff(i - j) } else { zero }).collect()).collect())
}

/// Exponents `e_1 ≤ … ≤ e_n` with cokernel `⊕ Z/p^{e_i}`. An exponent equal
/// to `precision` means "at least `precision`".
pub fn smith_divisors(matrix: &Matrix, precision: u32) -> Result<Vec<u32>> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidSpec("Smith normal form needs a square matrix".into()));
    }
    let mut a: Matrix = matrix
        .iter()
        .map(|row| row.iter().map(|c| c.reduce(precision.min(c.precision()))).collect())
        .collect::<Result<_>>()?;
    if a.iter().flatten().any(|c| c.precision() < precision) {
        return Err(Error::PrecisionExhausted(format!("matrix entries are known below p^{precision}")));
    }
    let mut out = Vec::with_capacity(n);
    for step in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for r in step..n {
            for c in step..n {
                let v = a[r][c].valuation();
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let (v, r, c) = best.expect("nonempty block");
        if v >= precision {
            out.extend(std::iter::repeat_n(precision, n - step));
            break;
        }
        a.swap(step, r);
        for row in a.iter_mut() {
            row.swap(step, c);
        }
        let pivot = a[step][step];
        let unit = super::padic::shift_down(&pivot, v)?.lift(precision)?;
        let unit_inv = unit.invert()?;
        for r in step + 1..n {
            if a[r][step].is_zero() {
                continue;
            }
            let factor = super::padic::shift_down(&a[r][step], v)?.lift(precision)? * unit_inv;
            for c in step..n {
                let t = a[step][c] * factor;
                a[r][c] = a[r][c] - t;
            }
        }
        for c in step + 1..n {
            a[step][c] = a[step][c].sibling(0);
        }
        out.push(v);
    }
    out.sort_unstable();
    Ok(out)
}

/// `v_p(det)` of a triangular matrix, i.e. the sum of diagonal valuations.
pub fn triangular_det_valuation(matrix: &Matrix) -> u32 {
    (0..matrix.len()).map(|i| matrix[i][i].valuation()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let u = TruncatedSeries::from_ints(3, 5, 4, &[4, 0, 1]).unwrap();
        let m = toeplitz_matrix(&u, 4).unwrap();
        assert_eq!(m[0][2].residue(), 1);
        assert_eq!(m[2][0].residue(), 0);
        assert_eq!(smith_divisors(&m, 5).unwrap(), vec![0, 0, 2, 2]);
        let id = toeplitz_matrix(&TruncatedSeries::from_ints(5, 3, 3, &[6]).unwrap(), 3).unwrap();
        assert_eq!(smith_divisors(&id, 3).unwrap(), vec![1, 1, 1]);
        let zero = toeplitz_matrix(&TruncatedSeries::from_ints(5, 3, 3, &[1]).unwrap(), 3).unwrap();
        assert!(zero.iter().flatten().all(PadicInt::is_zero));
        assert_eq!(smith_divisors(&zero, 3).unwrap(), vec![3, 3, 3]);
    }

    #[test]
    fn chains() {
        for (k, m) in [(1usize, 3u32), (2, 2), (3, 2), (2, 3)] {
            let size = k * m as usize;
            let mut coeffs = vec![0i128; size];
            coeffs[0] = 1 + 5;
            coeffs[k] = 1;
            let u = TruncatedSeries::from_ints(5, m + 2, size, &coeffs).unwrap();
            let d = smith_divisors(&toeplitz_matrix(&u, size).unwrap(), m + 2).unwrap();
            let mut expect = vec![0; size - k];
            expect.extend(std::iter::repeat_n(m, k));
            assert_eq!(d, expect, "k={k} m={m}");
        }
    }
}
