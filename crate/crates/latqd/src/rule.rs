//! Rank-1 lattice rules and the symmetric index box they are probed with.

use crate::error::{Error, Result};

/// A rank-1 lattice rule with `N` points in `s` dimensions.
///
/// The rule is determined by a modulus `N >= 2` and a generating vector
/// `g` whose components all lie in `{1, …, N-1}`; its point set is
/// `{ frac(n * g / N) : n = 0, …, N-1 }`. Component values 0 are rejected
/// because a zero coordinate makes every integer vector supported on that
/// coordinate dual, which collapses the degree to 0 for uninteresting
/// reasons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeRule {
    modulus: u64,
    generator: Vec<u64>,
}

impl LatticeRule {
    /// Validates and builds a rule. Components are taken as signed so that
    /// out-of-range values (negative, zero, or `>= N`) can be reported
    /// exactly as the caller wrote them.
    pub fn new(modulus: i64, generator: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { n: modulus });
        }
        let n = modulus as u64;
        if generator.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        let mut components = Vec::with_capacity(generator.len());
        for (index, &value) in generator.iter().enumerate() {
            if value < 1 || value as u64 >= n {
                return Err(Error::GeneratorOutOfRange {
                    index,
                    value,
                    modulus: n,
                });
            }
            components.push(value as u64);
        }
        Ok(LatticeRule {
            modulus: n,
            generator: components,
        })
    }

    /// Builds a rule from components already known to lie in `{1, …, N-1}`.
    /// Panics (debug) on violations; used by search loops that construct
    /// candidates in-range by design.
    pub(crate) fn from_parts(modulus: u64, generator: Vec<u64>) -> Self {
        debug_assert!(modulus >= 2);
        debug_assert!(!generator.is_empty());
        debug_assert!(generator.iter().all(|&c| c >= 1 && c < modulus));
        LatticeRule { modulus, generator }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> &[u64] {
        &self.generator
    }

    /// Number of dimensions `s`.
    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// The rule with generating vector `u * g mod N` for a unit `u`.
    ///
    /// Units permute the residues `n * u mod N`, so the mapped rule has the
    /// same point set and hence the same weight enumerator.
    pub fn apply_unit(&self, unit: u64) -> Result<Self> {
        if unit == 0 || unit >= self.modulus || gcd(unit, self.modulus) != 1 {
            return Err(Error::NotAUnit {
                unit,
                modulus: self.modulus,
            });
        }
        let generator = self
            .generator
            .iter()
            .map(|&c| mul_mod(c, unit, self.modulus))
            .collect();
        Ok(LatticeRule {
            modulus: self.modulus,
            generator,
        })
    }
}

/// Half-width `d >= 1` of the symmetric index box `{-d, …, d}^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxRadius(u32);

impl BoxRadius {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::BoxRadiusZero);
        }
        Ok(BoxRadius(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Side length `2d + 1` of the box.
    pub fn side(self) -> u64 {
        2 * u64::from(self.0) + 1
    }
}

/// Greatest common divisor (binary-free Euclid is plenty here).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `a * b mod m` without overflow for any `u64` operands.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a + b mod m` without overflow for any `u64` operands.
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_components_in_range() {
        let rule = LatticeRule::new(8, &[1, 3, 7]).unwrap();
        assert_eq!(rule.modulus(), 8);
        assert_eq!(rule.generator(), &[1, 3, 7]);
        assert_eq!(rule.dimension(), 3);
    }

    #[test]
    fn rejects_small_moduli() {
        assert_eq!(
            LatticeRule::new(1, &[1]),
            Err(Error::ModulusTooSmall { n: 1 })
        );
        assert_eq!(
            LatticeRule::new(-4, &[1]),
            Err(Error::ModulusTooSmall { n: -4 })
        );
    }

    #[test]
    fn rejects_empty_generator() {
        assert_eq!(LatticeRule::new(5, &[]), Err(Error::EmptyGenerator));
    }

    #[test]
    fn rejects_out_of_range_components() {
        for bad in [0i64, 5, 6, -1] {
            assert_eq!(
                LatticeRule::new(5, &[1, bad]),
                Err(Error::GeneratorOutOfRange {
                    index: 1,
                    value: bad,
                    modulus: 5,
                })
            );
        }
    }

    #[test]
    fn unit_map_requires_a_unit() {
        let rule = LatticeRule::new(8, &[1, 3]).unwrap();
        assert!(rule.apply_unit(3).is_ok());
        assert_eq!(
            rule.apply_unit(2),
            Err(Error::NotAUnit {
                unit: 2,
                modulus: 8
            })
        );
        assert_eq!(
            rule.apply_unit(0),
            Err(Error::NotAUnit {
                unit: 0,
                modulus: 8
            })
        );
    }

    #[test]
    fn unit_map_multiplies_componentwise() {
        let rule = LatticeRule::new(10, &[1, 3, 7]).unwrap();
        let mapped = rule.apply_unit(3).unwrap();
        assert_eq!(mapped.generator(), &[3, 9, 1]);
    }

    #[test]
    fn box_radius_must_be_positive() {
        assert_eq!(BoxRadius::new(0), Err(Error::BoxRadiusZero));
        assert_eq!(BoxRadius::new(4).unwrap().side(), 9);
    }

    #[test]
    fn gcd_and_modular_arithmetic_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 13), 1);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(mul_mod(u64::MAX - 1, u64::MAX - 2, u64::MAX), 2);
        assert_eq!(add_mod(u64::MAX - 1, u64::MAX - 1, u64::MAX), u64::MAX - 2);
        assert_eq!(add_mod(3, 4, 5), 2);
    }
}
