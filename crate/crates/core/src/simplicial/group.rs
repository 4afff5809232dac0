//! Finitely generated abelian groups, coefficient rings, and the algebra
//! needed for joins (tensor products and Tor of cyclic groups).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::smith::normalize_diagonal;

/// Coefficient ring for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    /// The prime field `Z/p`.
    Prime(u64),
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    fn symbol(self) -> String {
        match self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseRingError {
    #[error("unknown coefficient ring `{0}` (expected Z, Q or F<p>)")]
    Unknown(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
}

impl FromStr for Ring {
    type Err = ParseRingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Z" | "z" => return Ok(Ring::Integers),
            "Q" | "q" => return Ok(Ring::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("Z/")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("Fp:"))
            .ok_or_else(|| ParseRingError::Unknown(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| ParseRingError::Unknown(s.to_string()))?;
        if !is_prime(p) {
            return Err(ParseRingError::NotPrime(p));
        }
        Ok(Ring::Prime(p))
    }
}

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i ≥ 2`. Over a field only `rank` is used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from arbitrary cyclic orders, normalizing into invariant factors.
    pub fn from_cyclic(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut diag: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_zero()).collect();
        normalize_diagonal(&mut diag);
        diag.retain(|d| !d.is_one());
        AbelianGroup {
            rank,
            torsion: diag,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::from_cyclic(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = Vec::new();
        for _ in 0..other.rank {
            orders.extend(self.torsion.iter().cloned());
        }
        for _ in 0..self.rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        AbelianGroup::from_cyclic(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders = self
            .torsion
            .iter()
            .flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b)));
        AbelianGroup::from_cyclic(0, orders.collect::<Vec<_>>())
    }

    /// Renders the group with the given coefficient symbol, e.g. `Z^2 ⊕ Z/2`.
    pub fn notation(&self, ring: Ring) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let sym = ring.symbol();
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(sym.clone()),
            r => parts.push(format!("{sym}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        parts.join(" ⊕ ")
    }

    /// Parses the output of [`AbelianGroup::notation`] for any coefficient symbol.
    pub fn parse_notation(s: &str) -> Result<AbelianGroup, ParseGroupError> {
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::zero());
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for part in s.split('⊕').map(str::trim) {
            if let Some(d) = part.strip_prefix("Z/") {
                orders.push(
                    d.parse::<BigInt>()
                        .map_err(|_| ParseGroupError(part.to_string()))?,
                );
            } else {
                let (base, exp) = part.split_once('^').unwrap_or((part, "1"));
                let symbol_ok = base == "Z"
                    || base == "Q"
                    || base
                        .strip_prefix('F')
                        .is_some_and(|p| p.parse::<u64>().is_ok());
                if !symbol_ok {
                    return Err(ParseGroupError(part.to_string()));
                }
                rank += exp
                    .parse::<usize>()
                    .map_err(|_| ParseGroupError(part.to_string()))?;
            }
        }
        Ok(AbelianGroup::from_cyclic(rank, orders))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed group summand `{0}`")]
pub struct ParseGroupError(pub String);

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation(Ring::Integers))
    }
}

/// Groups indexed by degree. Degrees with a zero group may be omitted.
pub type GradedGroups = BTreeMap<i32, AbelianGroup>;

/// Drops zero entries so that graded tables compare structurally.
pub fn prune(groups: &GradedGroups) -> GradedGroups {
    groups
        .iter()
        .filter(|(_, g)| !g.is_zero())
        .map(|(d, g)| (*d, g.clone()))
        .collect()
}

/// Reduced homology of a join from the reduced homology of its factors:
/// `H_i(X*Y) = ⊕_{r+s=i-1} H_r(X)⊗H_s(Y) ⊕ ⊕_{r+s=i-2} Tor(H_r(X), H_s(Y))`.
pub fn join_homology(hx: &GradedGroups, hy: &GradedGroups) -> GradedGroups {
    let mut out: GradedGroups = BTreeMap::new();
    for (r, gx) in hx {
        for (s, gy) in hy {
            let t = gx.tensor(gy);
            if !t.is_zero() {
                let e = out.entry(r + s + 1).or_default();
                *e = e.direct_sum(&t);
            }
            let tor = gx.tor(gy);
            if !tor.is_zero() {
                let e = out.entry(r + s + 2).or_default();
                *e = e.direct_sum(&tor);
            }
        }
    }
    prune(&out)
}

/// Cohomology from homology by universal coefficients over the integers:
/// `H^i = free(H_i) ⊕ torsion(H_{i-1})`.
pub fn cohomology_from_homology(h: &GradedGroups) -> GradedGroups {
    let mut out: GradedGroups = BTreeMap::new();
    for (d, g) in h {
        if g.rank > 0 {
            out.entry(*d).or_default().rank += g.rank;
        }
        if !g.torsion.is_empty() {
            let e = out.entry(d + 1).or_default();
            *e = e.direct_sum(&AbelianGroup::from_cyclic(0, g.torsion.clone()));
        }
    }
    prune(&out)
}

/// Cohomology of a free cochain complex over `ring` from its integral
/// cohomology: `H^i(C; R) = H^i(C) ⊗ R ⊕ Tor(H^{i+1}(C), R)`.
pub fn change_coefficients(integral: &GradedGroups, ring: Ring) -> GradedGroups {
    let p = match ring {
        Ring::Integers => return prune(integral),
        Ring::Rationals => None,
        Ring::Prime(p) => Some(BigInt::from(p)),
    };
    let p_torsion = |g: Option<&AbelianGroup>| match (&p, g) {
        (Some(p), Some(g)) => g.torsion.iter().filter(|d| d.is_multiple_of(p)).count(),
        _ => 0,
    };
    let degrees: std::collections::BTreeSet<i32> =
        integral.keys().flat_map(|&d| [d, d - 1]).collect();
    let mut out = GradedGroups::new();
    for d in degrees {
        let rank = integral.get(&d).map_or(0, |g| g.rank)
            + p_torsion(integral.get(&d))
            + p_torsion(integral.get(&(d + 1)));
        if rank > 0 {
            out.insert(d, AbelianGroup::free(rank));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(r: usize) -> AbelianGroup {
        AbelianGroup::free(r)
    }

    fn cyclic(d: i64) -> AbelianGroup {
        AbelianGroup::from_cyclic(0, [BigInt::from(d)])
    }

    #[test]
    fn cyclic_orders_normalize_to_invariant_factors() {
        let g = AbelianGroup::from_cyclic(1, [2, 3, 4, 1].map(BigInt::from));
        // Z/2 ⊕ Z/3 ⊕ Z/4 = Z/2 ⊕ Z/12
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.notation(Ring::Integers), "Z ⊕ Z/2 ⊕ Z/12");
    }

    #[test]
    fn notation_round_trips() {
        for g in [
            AbelianGroup::zero(),
            z(1),
            z(3),
            cyclic(2).direct_sum(&z(2)),
            cyclic(6).direct_sum(&cyclic(4)),
        ] {
            assert_eq!(
                AbelianGroup::parse_notation(&g.notation(Ring::Integers)).unwrap(),
                g
            );
        }
        assert_eq!(AbelianGroup::parse_notation("Q^2").unwrap(), z(2));
        assert_eq!(AbelianGroup::parse_notation("F2^3").unwrap(), z(3));
        assert!(AbelianGroup::parse_notation("R^2").is_err());
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::Prime(2));
        assert_eq!("Z/7".parse::<Ring>().unwrap(), Ring::Prime(7));
        assert_eq!("F4".parse::<Ring>(), Err(ParseRingError::NotPrime(4)));
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn join_of_two_zero_spheres_is_a_circle() {
        let h: GradedGroups = [(0, z(1))].into();
        assert_eq!(join_homology(&h, &h), [(1, z(1))].into());
    }

    #[test]
    fn join_with_torsion_produces_tor_term() {
        let h: GradedGroups = [(0, cyclic(2))].into();
        let j = join_homology(&h, &h);
        assert_eq!(j, [(1, cyclic(2)), (2, cyclic(2))].into());
    }

    #[test]
    fn tensor_and_tor_of_cyclic_groups() {
        assert_eq!(cyclic(4).tensor(&cyclic(6)), cyclic(2));
        assert_eq!(cyclic(4).tor(&cyclic(6)), cyclic(2));
        assert_eq!(cyclic(3).tensor(&cyclic(2)), AbelianGroup::zero());
        assert_eq!(z(2).tensor(&cyclic(5)), cyclic(5).direct_sum(&cyclic(5)));
        assert!(z(2).tor(&cyclic(5)).is_zero());
    }

    #[test]
    fn universal_coefficients_shift_torsion_up() {
        let h: GradedGroups = [(0, z(1)), (1, cyclic(2))].into();
        assert_eq!(
            cohomology_from_homology(&h),
            [(0, z(1)), (2, cyclic(2))].into()
        );
    }
}
