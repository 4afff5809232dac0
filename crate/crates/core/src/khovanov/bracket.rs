use std::collections::BTreeMap;

use super::{check_cap, KhovanovError, Laurent};
use crate::diagram::Diagram;
use crate::Limits;

/// Number of states with each `(σ(s), |s|)`.
pub fn state_census(
    d: &Diagram,
    limits: &Limits,
) -> Result<BTreeMap<(i64, usize), i64>, KhovanovError> {
    let c = check_cap(d, limits)?;
    let mut census = BTreeMap::new();
    for mask in 0..1u64 << c {
        let sigma = c as i64 - 2 * mask.count_ones() as i64;
        *census
            .entry((sigma, d.circle_count_mask(mask)))
            .or_insert(0) += 1;
    }
    Ok(census)
}

fn delta() -> Laurent {
    Laurent::from_terms([(2, -1), (-2, -1)])
}

/// `<D> = Σ_s A^{σ(s)} (−A² − A^{−2})^{|s|−1}`, a polynomial in `A`.
pub fn kauffman_bracket(d: &Diagram, limits: &Limits) -> Result<Laurent, KhovanovError> {
    let census = state_census(d, limits)?;
    let delta = delta();
    let mut total = Laurent::zero();
    for (&(sigma, circles), &count) in &census {
        let term = &Laurent::monomial(count, sigma) * &delta.pow(circles as u32 - 1);
        total = &total + &term;
    }
    Ok(total)
}

/// `(−A³)^{−w} <D>`.
fn normalized_bracket(d: &Diagram, limits: &Limits) -> Result<Laurent, KhovanovError> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(&Laurent::monomial(sign, -3 * w) * &kauffman_bracket(d, limits)?)
}

/// The Jones polynomial as a Laurent polynomial in `t^{1/2}` (exponent `k`
/// means `t^{k/2}`), from `A = t^{−1/4}`.
pub fn jones(d: &Diagram, limits: &Limits) -> Result<Laurent, KhovanovError> {
    let f = normalized_bracket(d, limits)?;
    Ok(f.map_exponents(|e| {
        debug_assert!(e % 2 == 0);
        (-e / 2, 1)
    }))
}

/// The unnormalized Jones polynomial in `q`, which equals
/// `Σ (−1)^i q^j rank C^{i,j}` over enhanced states.
pub fn unnormalized_jones(d: &Diagram, limits: &Limits) -> Result<Laurent, KhovanovError> {
    let f = &delta() * &normalized_bracket(d, limits)?;
    Ok(f.map_exponents(|e| (-e / 2, if (e / 2) % 2 == 0 { 1 } else { -1 })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_normalization() {
        let d = Diagram::unlink(1);
        let l = Limits::default();
        assert_eq!(kauffman_bracket(&d, &l).unwrap(), Laurent::one());
        assert_eq!(jones(&d, &l).unwrap(), Laurent::one());
        assert_eq!(
            unnormalized_jones(&d, &l).unwrap(),
            Laurent::from_terms([(1, 1), (-1, 1)])
        );
    }

    #[test]
    fn left_trefoil_jones() {
        let d: Diagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
        let v = jones(&d, &Limits::default()).unwrap();
        assert_eq!(v.format("t", 2), "-t^-4 + t^-3 + t^-1");
        let mirror = jones(&d.mirror(), &Limits::default()).unwrap();
        assert_eq!(mirror.format("t", 2), "t + t^3 - t^4");
    }

    #[test]
    fn kinks_do_not_change_jones() {
        let l = Limits::default();
        for pd in ["X(1,2,2,1)", "X(1,1,2,2)"] {
            let d: Diagram = pd.parse().unwrap();
            assert_eq!(jones(&d, &l).unwrap(), Laurent::one(), "{pd}");
        }
    }

    #[test]
    fn hopf_link_jones() {
        let d: Diagram = "X(4,1,3,2) X(2,3,1,4)".parse().unwrap();
        let v = jones(&d, &Limits::default()).unwrap();
        let expected = if d.writhe() > 0 {
            "-t^(1/2) - t^(5/2)"
        } else {
            "-t^(-5/2) - t^(-1/2)"
        };
        assert_eq!(v.format("t", 2), expected);
    }
}
