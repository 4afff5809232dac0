use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Laurent polynomial with integer coefficients, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Laurent {
    terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i64) -> Self {
        let mut p = Laurent::zero();
        p.add_term(coefficient, exponent);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Laurent::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coefficient: i64, exponent: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, k: u32) -> Laurent {
        (0..k).fold(Laurent::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x ↦ x^k` (negative `k` allowed) and multiplies the
    /// coefficient of each term by `sign(e)`.
    pub fn map_exponents(&self, f: impl Fn(i64) -> (i64, i64)) -> Laurent {
        let mut p = Laurent::zero();
        for (e, c) in self.terms() {
            let (e2, s) = f(e);
            p.add_term(c * s, e2);
        }
        p
    }

    /// Formats with variable `var`, dividing exponents by `denominator`
    /// (so a polynomial in `t^{1/2}` prints with fractional powers of `t`).
    pub fn format(&self, var: &str, denominator: i64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let power = if e % denominator == 0 {
                let p = e / denominator;
                match p {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{p}"),
                }
            } else {
                let g = num_integer::gcd(e, denominator);
                format!("{var}^({}/{})", e / g, denominator / g)
            };
            match (mag, power.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&power),
                (_, false) => out.push_str(&format!("{mag}{power}")),
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x", 1))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            p.add_term(c, e);
        }
        p
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut p = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}
