use alloc::vec::Vec;

use super::linalg::{self, Matrix, RowSpace};
use super::{HPolyhedron, Point};
use crate::exact::{LogLinearForm, Sign};
use crate::{Error, Result};

/// Largest ambient dimension accepted by [`vertices`].
pub const VERTEX_DIM_LIMIT: usize = 6;

/// All vertices of `P` for `n ≤ 6`, each reported once.
///
/// Every `n`-subset of constraints with independent normals is solved exactly
/// and kept when the solution satisfies all constraints.
pub fn vertices(p: &HPolyhedron) -> Result<Vec<Point>> {
    vertices_up_to(p, VERTEX_DIM_LIMIT)
}

/// [`vertices`] with a caller-chosen dimension limit.
pub fn vertices_up_to(p: &HPolyhedron, limit: usize) -> Result<Vec<Point>> {
    let n = p.dim();
    if n > limit {
        return Err(Error::DimensionTooLarge { dim: n, limit });
    }
    let mut out: Vec<Point> = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut chosen = Vec::with_capacity(n);
    search(p, 0, &mut chosen, &RowSpace::default(), &mut out);
    Ok(out)
}

fn search(p: &HPolyhedron, start: usize, chosen: &mut Vec<usize>, space: &RowSpace, out: &mut Vec<Point>) {
    let n = p.dim();
    let cons = p.constraints();
    if chosen.len() == n {
        let a: Matrix = chosen.iter().map(|&i| cons[i].normal.clone()).collect();
        let b: Vec<LogLinearForm> = chosen.iter().map(|&i| cons[i].rhs.clone()).collect();
        let Some(v) = linalg::solve(&a, &b) else {
            return;
        };
        if !cons.iter().all(|h| h.slack(&v).sign() != Sign::Negative) {
            return;
        }
        let duplicate = out.iter().any(|u| u.iter().zip(&v).all(|(x, y)| x.eq_value(y)));
        if !duplicate {
            out.push(v);
        }
        return;
    }
    let need = n - chosen.len();
    for i in start..cons.len() {
        if cons.len() - i < need {
            break;
        }
        let mut next = space.clone();
        if !next.try_push(&cons[i].normal) {
            continue;
        }
        chosen.push(i);
        search(p, i + 1, chosen, &next, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::polyhedra::{integer_vector, HalfSpace};
    use alloc::vec;

    fn hs(a: &[i64], b: LogLinearForm) -> HalfSpace {
        HalfSpace::new(integer_vector(a), b).unwrap()
    }

    #[test]
    fn triangle_vertices() {
        let ln3 = LogLinearForm::ln(&Rational::from_integer(3.into())).unwrap();
        let p =
            HPolyhedron::new(2, vec![hs(&[-1, -1], ln3.clone()), hs(&[2, -1], ln3.clone()), hs(&[-1, 1], ln3.clone())])
                .unwrap();
        let vs = vertices(&p).unwrap();
        assert_eq!(vs.len(), 3);
        assert!(vs.iter().any(|v| v[0].eq_value(&-&ln3) && v[1].is_zero()));
        for v in &vs {
            let tight = p.active_at(v).len();
            assert_eq!(tight, 2);
        }
    }

    #[test]
    fn square_half_plane_and_limit() {
        let one = LogLinearForm::from_integer(1);
        let sq = HPolyhedron::new(
            2,
            vec![
                hs(&[1, 0], one.clone()),
                hs(&[-1, 0], one.clone()),
                hs(&[0, 1], one.clone()),
                hs(&[0, -1], one.clone()),
            ],
        )
        .unwrap();
        assert_eq!(vertices(&sq).unwrap().len(), 4);
        let half = HPolyhedron::new(2, vec![hs(&[1, 1], one.clone())]).unwrap();
        assert!(vertices(&half).unwrap().is_empty());
        let big = HPolyhedron::whole_space(7);
        assert_eq!(vertices(&big), Err(Error::DimensionTooLarge { dim: 7, limit: 6 }));
    }

    #[test]
    fn degenerate_apex_reported_once() {
        // square pyramid apex: four planes meet at the origin
        let z = LogLinearForm::zero();
        let one = LogLinearForm::from_integer(1);
        let p = HPolyhedron::new(
            3,
            vec![
                hs(&[1, 0, 1], z.clone()),
                hs(&[-1, 0, 1], z.clone()),
                hs(&[0, 1, 1], z.clone()),
                hs(&[0, -1, 1], z.clone()),
                hs(&[0, 0, -1], one),
            ],
        )
        .unwrap();
        assert_eq!(vertices(&p).unwrap().len(), 5);
    }
}
