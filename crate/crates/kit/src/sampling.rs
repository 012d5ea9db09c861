//! Parallel amoeba sampling. Slices are independent and seeded by index, so
//! the merged cloud equals the sequential one bit for bit.

use archtrop_core::amoeba::{sample_slice, PointCloud, Window};
use archtrop_core::{Error, LaurentPolynomial, Result};
use rayon::prelude::*;

pub fn sample_amoeba_2d_par(
    f: &LaurentPolynomial,
    window: &Window,
    grid: usize,
    phases: usize,
    seed: u64,
) -> Result<PointCloud> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim() });
    }
    if f.len() < 2 {
        return Err(Error::InvalidArgument("a monomial has an empty amoeba".into()));
    }
    let slices: Vec<Vec<[f64; 2]>> = (0..2 * grid)
        .into_par_iter()
        .map(|k| sample_slice(f, window, k / grid, k % grid, grid, phases, seed))
        .collect::<Result<_>>()?;
    Ok(PointCloud { points: slices.concat(), window: *window, grid, phases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use archtrop_core::amoeba::sample_amoeba_2d;

    #[test]
    fn matches_sequential() {
        let f = LaurentPolynomial::parse(crate::input::F1, 2).unwrap();
        let w = Window::square(7.0);
        assert_eq!(sample_amoeba_2d_par(&f, &w, 40, 12, 9).unwrap(), sample_amoeba_2d(&f, &w, 40, 12, 9).unwrap());
        assert!(sample_amoeba_2d_par(&LaurentPolynomial::parse("x1", 2).unwrap(), &w, 4, 4, 0).is_err());
    }
}
