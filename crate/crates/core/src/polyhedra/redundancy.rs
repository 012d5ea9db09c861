use alloc::vec::Vec;

use super::lp::{lp_feasible, maximize_from_origin, LpOutcome};
use super::{HPolyhedron, HalfSpace};
use num_traits::Zero;

use crate::exact::{LogLinearForm, Rational, Sign};
use crate::{Error, Result};

/// Indices (in input order) of a minimal subset of constraints defining the
/// same set as `P`.
///
/// One LP per constraint: after translating a feasible point to the origin,
/// constraint `k` is kept iff maximizing its normal over the remaining kept
/// constraints is unbounded or exceeds its right-hand side.
pub fn irredundant_indices(p: &HPolyhedron) -> Result<Vec<usize>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let z = lp_feasible(p).ok_or(Error::Infeasible)?;
    irredundant_indices_at(p, &z)
}

/// [`irredundant_indices`] given a known point `z ∈ P`, which spares the
/// feasibility phase.
///
/// In the plane with `z` strictly inside every constraint, the kept set is
/// read off the convex hull of the polar points `α_k / (β_k − α_k·z)`;
/// all orientation tests there are exact signs of log-linear forms.
pub fn irredundant_indices_at(p: &HPolyhedron, z: &[LogLinearForm]) -> Result<Vec<usize>> {
    let slacks: Vec<LogLinearForm> = p.constraints().iter().map(|h| h.slack(z)).collect();
    let signs: Vec<Sign> = slacks.iter().map(LogLinearForm::sign).collect();
    if signs.contains(&Sign::Negative) {
        return Err(Error::InvalidArgument("witness point lies outside the polyhedron".into()));
    }
    if p.dim() == 2 && signs.iter().all(|&s| s == Sign::Positive) {
        return Ok(polar_hull_2d(p.constraints(), &slacks));
    }
    let shifted: Vec<HalfSpace> =
        p.constraints().iter().zip(slacks).map(|(h, s)| HalfSpace { normal: h.normal.clone(), rhs: s }).collect();
    let n = p.dim();
    let mut kept: Vec<bool> = alloc::vec![true; shifted.len()];
    for k in 0..shifted.len() {
        let others: Vec<&HalfSpace> = (0..shifted.len()).filter(|&i| i != k && kept[i]).map(|i| &shifted[i]).collect();
        let necessary = match maximize_from_origin(&others, n, &shifted[k].normal) {
            LpOutcome::Unbounded => true,
            LpOutcome::Optimal { value, .. } => (&value - &shifted[k].rhs).sign() == Sign::Positive,
            LpOutcome::Infeasible => unreachable!("origin is feasible after translation"),
        };
        kept[k] = necessary;
    }
    Ok((0..shifted.len()).filter(|&i| kept[i]).collect())
}

/// Polar point `α/s` in homogeneous form; `None` is the origin.
type Polar<'a> = Option<(&'a [Rational], &'a LogLinearForm)>;

fn polar_coord<'a>(cons: &'a [HalfSpace], slacks: &'a [LogLinearForm], i: Option<usize>) -> Polar<'a> {
    i.map(|i| (cons[i].normal.as_slice(), &slacks[i]))
}

/// Sign of `x_a − x_b` (coordinate `c`) for polar points.
fn cmp_coord(a: Polar<'_>, b: Polar<'_>, c: usize) -> Sign {
    match (a, b) {
        (None, None) => Sign::Zero,
        (Some((al, _)), None) => Sign::of_rational(&al[c]),
        (None, Some((bl, _))) => -Sign::of_rational(&bl[c]),
        (Some((al, sa)), Some((bl, sb))) => {
            // al[c]/sa − bl[c]/sb has the sign of al[c]·sb − bl[c]·sa
            let mut f = sb.scale(&al[c]);
            f.add_scaled(&-bl[c].clone(), sa);
            f.sign()
        }
    }
}

/// Orientation of three polar points: the sign of the 3×3 determinant with
/// rows `(α_x, α_y, s)`, the origin being `(0, 0, 1)`.
fn orient(a: Polar<'_>, b: Polar<'_>, c: Polar<'_>) -> Sign {
    let zero = Rational::zero();
    let one = LogLinearForm::from_integer(1);
    let row = |p: Polar<'_>| -> ([Rational; 2], LogLinearForm) {
        match p {
            None => ([zero.clone(), zero.clone()], one.clone()),
            Some((al, s)) => ([al[0].clone(), al[1].clone()], s.clone()),
        }
    };
    let (ra, sa) = row(a);
    let (rb, sb) = row(b);
    let (rc, sc) = row(c);
    let cross = |u: &[Rational; 2], v: &[Rational; 2]| &u[0] * &v[1] - &u[1] * &v[0];
    let mut det = sc.scale(&cross(&ra, &rb));
    det.add_scaled(&cross(&rb, &rc), &sa);
    det.add_scaled(&cross(&rc, &ra), &sb);
    det.sign()
}

fn polar_hull_2d(cons: &[HalfSpace], slacks: &[LogLinearForm]) -> Vec<usize> {
    let mut pts: Vec<Option<usize>> = (0..cons.len()).map(Some).collect();
    pts.push(None);
    let key = |i: &Option<usize>| polar_coord(cons, slacks, *i);
    let cmp = |a: &Option<usize>, b: &Option<usize>| -> core::cmp::Ordering {
        let s = match cmp_coord(key(a), key(b), 0) {
            Sign::Zero => cmp_coord(key(a), key(b), 1),
            s => s,
        };
        match s {
            Sign::Negative => core::cmp::Ordering::Less,
            Sign::Positive => core::cmp::Ordering::Greater,
            // coincident polar points: earlier constraint first, origin last
            Sign::Zero => a.map_or(usize::MAX, |x| x).cmp(&b.map_or(usize::MAX, |x| x)),
        }
    };
    pts.sort_by(cmp);
    pts.dedup_by(|later, earlier| {
        cmp_coord(key(later), key(earlier), 0) == Sign::Zero && cmp_coord(key(later), key(earlier), 1) == Sign::Zero
    });
    if pts.len() <= 2 {
        return pts.iter().flatten().copied().collect::<alloc::collections::BTreeSet<_>>().into_iter().collect();
    }
    let mut hull: Vec<Option<usize>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &Option<usize>>> =
            if pass == 0 { alloc::boxed::Box::new(pts.iter()) } else { alloc::boxed::Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2
                && orient(key(&hull[hull.len() - 2]), key(&hull[hull.len() - 1]), key(&p)) != Sign::Positive
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let mut out: Vec<usize> = hull.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The irredundant sub-presentation of `P`; errors when `P` is empty.
pub fn irredundant(p: &HPolyhedron) -> Result<HPolyhedron> {
    let keep = irredundant_indices(p)?;
    HPolyhedron::new(p.dim(), keep.into_iter().map(|i| p.constraints()[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::integer_vector;
    use alloc::vec;

    fn hs(a: &[i64], b: LogLinearForm) -> HalfSpace {
        HalfSpace::new(integer_vector(a), b).unwrap()
    }

    fn ln3() -> LogLinearForm {
        LogLinearForm::ln(&Rational::from_integer(3.into())).unwrap()
    }

    #[test]
    fn dominated_constraint_dropped() {
        let p = HPolyhedron::new(
            1,
            vec![hs(&[1], LogLinearForm::from_integer(1)), hs(&[1], LogLinearForm::from_integer(2))],
        )
        .unwrap();
        assert_eq!(irredundant_indices(&p).unwrap(), vec![0]);
        assert!(irredundant(&HPolyhedron::whole_space(3)).unwrap().is_empty());
    }

    #[test]
    fn duplicates_and_infeasible() {
        let p = HPolyhedron::new(1, vec![hs(&[1], ln3()), hs(&[2], ln3().scale(&Rational::from_integer(2.into())))])
            .unwrap();
        assert_eq!(irredundant_indices(&p).unwrap().len(), 1);
        let e = HPolyhedron::new(
            1,
            vec![hs(&[1], LogLinearForm::from_integer(0)), hs(&[-1], LogLinearForm::from_integer(-1))],
        )
        .unwrap();
        assert_eq!(irredundant(&e), Err(Error::Infeasible));
    }

    #[test]
    fn triangle_with_extra_cuts() {
        // -w1-w2 <= ln3, 2w1-w2 <= ln3, -w1+w2 <= ln3 plus two implied cuts
        let p = HPolyhedron::new(
            2,
            vec![
                hs(&[-1, -1], ln3()),
                hs(&[2, -1], ln3()),
                hs(&[-1, 1], ln3()),
                hs(&[1, 0], ln3().scale(&Rational::from_integer(5.into()))),
                hs(&[0, -1], ln3().scale(&Rational::from_integer(4.into()))),
            ],
        )
        .unwrap();
        assert_eq!(irredundant_indices(&p).unwrap(), vec![0, 1, 2]);
        let origin = vec![LogLinearForm::zero(), LogLinearForm::zero()];
        assert_eq!(irredundant_indices_at(&p, &origin).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn polar_path_handles_unbounded_and_parallel() {
        let one = LogLinearForm::from_integer(1);
        let two = LogLinearForm::from_integer(2);
        let origin = vec![LogLinearForm::zero(), LogLinearForm::zero()];
        // strip |w1| <= 1 with a looser parallel copy and a duplicate
        let p = HPolyhedron::new(
            2,
            vec![hs(&[1, 0], two.clone()), hs(&[1, 0], one.clone()), hs(&[-1, 0], one.clone()), hs(&[-2, 0], two)],
        )
        .unwrap();
        assert_eq!(irredundant_indices_at(&p, &origin).unwrap(), vec![1, 2]);
        // a cone: w2 <= 1 and w1 + w2 <= 1, with a cut through its apex
        let q = HPolyhedron::new(
            2,
            vec![hs(&[0, 1], one.clone()), hs(&[1, 1], one.clone()), hs(&[1, 2], LogLinearForm::from_integer(2))],
        )
        .unwrap();
        assert_eq!(irredundant_indices_at(&q, &origin).unwrap(), vec![0, 1]);
        assert_eq!(irredundant_indices(&q).unwrap(), vec![0, 1]);
    }

    #[test]
    fn equality_pairs_are_kept() {
        let p = HPolyhedron::new(
            2,
            vec![
                hs(&[1, 1], LogLinearForm::zero()),
                hs(&[-1, -1], LogLinearForm::zero()),
                hs(&[1, 0], LogLinearForm::from_integer(1)),
            ],
        )
        .unwrap();
        assert_eq!(irredundant_indices(&p).unwrap(), vec![0, 1, 2]);
    }
}
