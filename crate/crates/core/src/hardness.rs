//! Mixed-vertex instances from Partition, certificate checking, and a
//! brute-force decision procedure for small dimensions.
//!
//! Given `α ∈ N^d` and `n = d + 1`, the bricks
//! `P_i = {|ξ_i| ≤ 1, |ξ_j| ≤ 2 for j ≠ i}` (`i < n`) and
//! `P_n = {|x| ≤ 2, |ξ_n| ≤ 1, 0 ≤ 2α·x ≤ 1}` with `x = (ξ_1, …, ξ_d)` have a
//! mixed vertex in their intersection iff `α` has a balanced partition.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{LogLinearForm, Rational, Sign};
use crate::polyhedra::linalg::{self, Matrix};
use crate::polyhedra::{irredundant, vertices_up_to, HPolyhedron, HalfSpace, Point};
use crate::{Error, Result};

/// Largest dimension accepted by [`brute_force_mixed_vertex`].
pub const BRUTE_FORCE_DIM_LIMIT: usize = 12;

/// Polyhedra `P_1, …, P_n` in `R^n`, each irredundantly presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVertexInstance {
    pub n: usize,
    pub polyhedra: Vec<HPolyhedron>,
}

impl MixedVertexInstance {
    /// Validates dimensions and makes every presentation irredundant.
    pub fn new(n: usize, polyhedra: Vec<HPolyhedron>) -> Result<Self> {
        if polyhedra.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: polyhedra.len() });
        }
        let polyhedra = polyhedra
            .iter()
            .map(|p| {
                if p.dim() != n {
                    Err(Error::DimensionMismatch { expected: n, found: p.dim() })
                } else {
                    irredundant(p)
                }
            })
            .collect::<Result<_>>()?;
        Ok(MixedVertexInstance { n, polyhedra })
    }

    /// All constraints of all `P_i` in one list.
    pub fn pooled(&self) -> HPolyhedron {
        let all = self.polyhedra.iter().flat_map(|p| p.constraints().iter().cloned()).collect();
        HPolyhedron::new(self.n, all).expect("dimensions validated")
    }

    /// Bit size of all presentations.
    pub fn size(&self) -> u64 {
        self.polyhedra.iter().map(HPolyhedron::size).sum()
    }
}

fn unit(n: usize, i: usize, s: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(s.into());
    v
}

/// `−b ≤ ξ_i ≤ b`.
fn bounds(n: usize, i: usize, b: &LogLinearForm, out: &mut Vec<HalfSpace>) {
    out.push(HalfSpace { normal: unit(n, i, 1), rhs: b.clone() });
    out.push(HalfSpace { normal: unit(n, i, -1), rhs: b.clone() });
}

fn check_alpha(alpha: &[i64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("partition instance needs at least one entry".into()));
    }
    if alpha.iter().any(|&a| a < 1) {
        return Err(Error::InvalidArgument("partition entries must be positive".into()));
    }
    Ok(())
}

/// Shared construction with coordinate half-widths `half[j]`, sum weights
/// `weight` on `x`, and the band `0 ≤ 2·weight·x ≤ band`.
fn build(half: &[LogLinearForm], weight: &[Rational], band: LogLinearForm) -> Result<MixedVertexInstance> {
    let n = half.len();
    let two = Rational::from_integer(2.into());
    let mut polys = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut rows = Vec::with_capacity(2 * n);
        for (j, h) in half.iter().enumerate() {
            let b = if j == i { h.clone() } else { h.scale(&two) };
            bounds(n, j, &b, &mut rows);
        }
        polys.push(HPolyhedron::new(n, rows)?);
    }
    let mut rows = Vec::with_capacity(2 * n + 2);
    for (j, h) in half.iter().enumerate().take(n - 1) {
        bounds(n, j, &h.scale(&two), &mut rows);
    }
    bounds(n, n - 1, &half[n - 1], &mut rows);
    let mut normal: Vec<Rational> = weight.iter().map(|w| w * &two).collect();
    normal.push(Rational::zero());
    if normal.iter().any(|x| !x.is_zero()) {
        rows.push(HalfSpace { normal: normal.clone(), rhs: band });
        rows.push(HalfSpace { normal: normal.iter().map(|x| -x).collect(), rhs: LogLinearForm::zero() });
    }
    polys.push(HPolyhedron::new(n, rows)?);
    MixedVertexInstance::new(n, polys)
}

/// The mixed-vertex instance of a Partition instance `α`.
pub fn partition_to_instance(alpha: &[i64]) -> Result<MixedVertexInstance> {
    check_alpha(alpha)?;
    let half = vec![LogLinearForm::from_integer(1); alpha.len() + 1];
    let weight: Vec<Rational> = alpha.iter().map(|&a| Rational::from_integer(a.into())).collect();
    build(&half, &weight, LogLinearForm::from_integer(1))
}

/// The logarithmic variant: a mixed vertex exists iff `α` splits into two
/// parts with equal products.
///
/// Coordinate `i` ranges over `±ln α_i` (or `±1` when `α_i = 1`, which then
/// carries no weight), and the band is `0 ≤ 2 Σ ξ_i ≤ ln(N+1) − ln N` with
/// `N = Π α_i`. An unbalanced split has `|ln(P/Q)| ≥ ln(1 + 1/N)`, so only
/// balanced corners fit the band. All right-hand sides are log-linear and all
/// normals rational.
pub fn log_partition_to_instance(alpha: &[i64]) -> Result<MixedVertexInstance> {
    check_alpha(alpha)?;
    let mut half = Vec::with_capacity(alpha.len() + 1);
    let mut weight = Vec::with_capacity(alpha.len());
    let mut product = BigInt::one();
    for &a in alpha {
        if a == 1 {
            half.push(LogLinearForm::from_integer(1));
            weight.push(Rational::zero());
        } else {
            half.push(LogLinearForm::ln(&Rational::from_integer(a.into()))?);
            weight.push(Rational::one());
        }
        product *= a;
    }
    half.push(LogLinearForm::from_integer(1));
    let big = Rational::from_integer(product.clone());
    let band = LogLinearForm::ln(&Rational::from_integer(product + 1))? - LogLinearForm::ln(&big)?;
    build(&half, &weight, band)
}

/// Whether `v` is a mixed vertex of `⋂ P_i`: it lies in the intersection,
/// the constraints tight at `v` have normals of full rank, and every `P_i`
/// has a facet through `v`.
pub fn verify_certificate(v: &[LogLinearForm], inst: &MixedVertexInstance) -> bool {
    if v.len() != inst.n {
        return false;
    }
    let mut tight: Matrix = Vec::new();
    for p in &inst.polyhedra {
        let mut on_facet = false;
        for h in p.constraints() {
            match h.slack(v).sign() {
                Sign::Negative => return false,
                Sign::Zero => {
                    on_facet = true;
                    tight.push(h.normal.clone());
                }
                Sign::Positive => {}
            }
        }
        if !on_facet {
            return false;
        }
    }
    linalg::rank(&tight) == inst.n
}

/// Searches the vertices of `⋂ P_i` for a mixed one.
pub fn brute_force_mixed_vertex(inst: &MixedVertexInstance) -> Result<Option<Point>> {
    if inst.n > BRUTE_FORCE_DIM_LIMIT {
        return Err(Error::DimensionTooLarge { dim: inst.n, limit: BRUTE_FORCE_DIM_LIMIT });
    }
    let pooled = match irredundant(&inst.pooled()) {
        Ok(p) => p,
        Err(Error::Infeasible) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(vertices_up_to(&pooled, BRUTE_FORCE_DIM_LIMIT)?.into_iter().find(|v| verify_certificate(v, inst)))
}

/// Whether `α` splits into two parts of equal sum (subset-sum table).
pub fn has_balanced_partition(alpha: &[i64]) -> bool {
    let total: i64 = alpha.iter().sum();
    if total % 2 != 0 || alpha.iter().any(|&a| a < 0) {
        return false;
    }
    let target = (total / 2) as usize;
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for &a in alpha {
        let a = a as usize;
        for s in (a..=target).rev() {
            reach[s] |= reach[s - a];
        }
    }
    reach[target]
}

/// Whether `α` splits into two parts of equal product (exhaustive, exact).
pub fn has_balanced_product_partition(alpha: &[i64]) -> bool {
    let d = alpha.len();
    if d >= 63 {
        return false;
    }
    let total: BigInt = alpha.iter().map(|&a| BigInt::from(a)).product();
    (0u64..1 << d).any(|mask| {
        let part: BigInt = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| BigInt::from(alpha[i])).product();
        &part * &part == total
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{integer_vector, rational_point};

    fn pt(v: &[i64]) -> Point {
        rational_point(&integer_vector(v))
    }

    #[test]
    fn construction_shape() {
        let inst = partition_to_instance(&[1, 2, 3]).unwrap();
        assert_eq!(inst.n, 4);
        assert!(inst.polyhedra[..3].iter().all(|p| p.len() == 8));
        assert!(partition_to_instance(&[0, 2]).is_err());
        assert!(partition_to_instance(&[]).is_err());
    }

    #[test]
    fn certificates() {
        let inst = partition_to_instance(&[1, 2, 3]).unwrap();
        assert!(verify_certificate(&pt(&[1, 1, -1, 1]), &inst));
        assert!(!verify_certificate(&pt(&[1, 1, 1, 1]), &inst));
        assert!(!verify_certificate(&pt(&[0, 0, 0, 0]), &inst));
        assert!(!verify_certificate(&pt(&[1, 1, -1]), &inst));
    }

    #[test]
    fn brute_force_examples() {
        let yes = brute_force_mixed_vertex(&partition_to_instance(&[1, 2, 3]).unwrap()).unwrap().unwrap();
        assert!(yes
            .iter()
            .all(|c| c.eq_value(&LogLinearForm::from_integer(1)) || c.eq_value(&LogLinearForm::from_integer(-1))));
        assert!(brute_force_mixed_vertex(&partition_to_instance(&[1, 1, 3]).unwrap()).unwrap().is_none());
        assert!(brute_force_mixed_vertex(&partition_to_instance(&[1]).unwrap()).unwrap().is_none());
        let v = brute_force_mixed_vertex(&partition_to_instance(&[2, 2]).unwrap()).unwrap().unwrap();
        assert!((&v[0] + &v[1]).is_zero());
    }

    #[test]
    fn logarithmic_variant() {
        // 2·6 = 3·4
        let inst = log_partition_to_instance(&[2, 3, 4, 6]).unwrap();
        let v = brute_force_mixed_vertex(&inst).unwrap().expect("balanced product split");
        assert!(verify_certificate(&v, &inst));
        assert!(brute_force_mixed_vertex(&log_partition_to_instance(&[2, 3, 5]).unwrap()).unwrap().is_none());
        // a 1 carries no weight: {1, 2} against {2}
        assert!(brute_force_mixed_vertex(&log_partition_to_instance(&[1, 2, 2]).unwrap()).unwrap().is_some());
    }

    #[test]
    fn oracles() {
        assert!(has_balanced_partition(&[1, 2, 3]));
        assert!(!has_balanced_partition(&[1, 1, 3]));
        assert!(!has_balanced_partition(&[1]));
        assert!(has_balanced_product_partition(&[2, 3, 4, 6]));
        assert!(!has_balanced_product_partition(&[2, 3, 5]));
        assert!(has_balanced_product_partition(&[1, 2, 2]));
    }
}
