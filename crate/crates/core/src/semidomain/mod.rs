//! Coefficient semidomains.
//!
//! Five instances are shipped: the nonnegative integers, the nonnegative
//! rationals, `ℕ₀[√2]`, the additive monoid generated by the powers of `2/3`,
//! and Laurent polynomials over any of these (which is how multivariate
//! polynomials are represented).

mod element;
mod quadratic;
mod two_thirds;

pub use element::{Element, UnitSplit};
pub(crate) use quadratic::div_signed as quadratic_div_signed;
pub use quadratic::QuadraticNat;
pub(crate) use two_thirds::unit_exponent as two_thirds_unit_exponent;
pub use two_thirds::TwoThirds;

use std::fmt;

/// A registered coefficient instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Natural,
    NonnegRational,
    QuadraticNat,
    TwoThirds,
    /// Laurent polynomials in one further variable over the inner instance.
    Laurent(Box<Ring>),
}

/// Capability flags of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidomainDescriptor {
    pub name: String,
    pub additively_reduced: bool,
    pub additively_atomic: bool,
    /// Whether the additive atoms are exactly the units.
    pub atoms_are_units: bool,
    /// Whether the additive splits of an element are finitely enumerable.
    pub supports_exhaustive_split: bool,
}

impl Ring {
    pub fn laurent(inner: Ring) -> Ring {
        Ring::Laurent(Box::new(inner))
    }

    /// Nested Laurent instance used as coefficient ring for `vars` variables
    /// over `base` (the outermost variable is not part of the coefficient ring).
    pub fn nested(base: Ring, vars: usize) -> Ring {
        let mut r = base;
        for _ in 1..vars {
            r = Ring::laurent(r);
        }
        r
    }

    /// Parses `n0`, `q+`, `n0sqrt2`, `two-thirds` or `multi:<k>`; returns the
    /// coefficient instance and the number of variables.
    pub fn from_name(name: &str) -> crate::Result<(Ring, usize)> {
        let bad = || crate::Error::Parse {
            pos: 0,
            msg: format!("unknown ring `{name}`"),
        };
        Ok(match name.trim() {
            "n0" => (Ring::Natural, 1),
            "q+" => (Ring::NonnegRational, 1),
            "n0sqrt2" => (Ring::QuadraticNat, 1),
            "two-thirds" => (Ring::TwoThirds, 1),
            other => {
                let k: usize = other
                    .strip_prefix("multi:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(bad)?;
                if k == 0 {
                    return Err(bad());
                }
                (Ring::nested(Ring::Natural, k), k)
            }
        })
    }

    /// Number of nested Laurent layers.
    pub fn depth(&self) -> usize {
        match self {
            Ring::Laurent(inner) => 1 + inner.depth(),
            _ => 0,
        }
    }

    /// The innermost non-Laurent instance.
    pub fn base(&self) -> &Ring {
        match self {
            Ring::Laurent(inner) => inner.base(),
            r => r,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Natural => "n0".into(),
            Ring::NonnegRational => "q+".into(),
            Ring::QuadraticNat => "n0sqrt2".into(),
            Ring::TwoThirds => "two-thirds".into(),
            Ring::Laurent(inner) => format!("laurent({})", inner.name()),
        }
    }

    pub fn descriptor(&self) -> SemidomainDescriptor {
        let (atomic, atoms_units, split) = match self {
            Ring::Natural => (true, true, true),
            Ring::NonnegRational => (false, false, false),
            Ring::QuadraticNat => (true, false, true),
            Ring::TwoThirds => (true, true, false),
            Ring::Laurent(inner) => {
                let d = inner.descriptor();
                (
                    d.additively_atomic,
                    d.atoms_are_units,
                    d.supports_exhaustive_split,
                )
            }
        };
        SemidomainDescriptor {
            name: self.name(),
            additively_reduced: true,
            additively_atomic: atomic,
            atoms_are_units: atoms_units,
            supports_exhaustive_split: split,
        }
    }

    pub fn zero(&self) -> Element {
        Element::zero(self)
    }

    pub fn one(&self) -> Element {
        Element::one(self)
    }

    /// Embeds a natural number.
    pub fn from_u64(&self, n: u64) -> Element {
        Element::from_u64(self, n)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_flags() {
        let all = [
            Ring::Natural,
            Ring::NonnegRational,
            Ring::QuadraticNat,
            Ring::TwoThirds,
            Ring::laurent(Ring::Natural),
            Ring::laurent(Ring::TwoThirds),
            Ring::laurent(Ring::QuadraticNat),
        ];
        for r in &all {
            let d = r.descriptor();
            assert!(d.additively_reduced, "{r}");
            if d.atoms_are_units {
                assert!(d.additively_atomic, "{r}");
            }
        }
        assert!(Ring::Natural.descriptor().atoms_are_units);
        assert!(Ring::TwoThirds.descriptor().atoms_are_units);
        assert!(Ring::laurent(Ring::Natural).descriptor().atoms_are_units);
        assert!(!Ring::NonnegRational.descriptor().atoms_are_units);
        assert!(!Ring::NonnegRational.descriptor().additively_atomic);
        assert!(!Ring::QuadraticNat.descriptor().atoms_are_units);
        assert!(
            !Ring::laurent(Ring::QuadraticNat)
                .descriptor()
                .atoms_are_units
        );
    }

    #[test]
    fn nested_depth() {
        let r = Ring::nested(Ring::Natural, 3);
        assert_eq!(r.depth(), 2);
        assert_eq!(r.base(), &Ring::Natural);
        assert_eq!(Ring::nested(Ring::Natural, 1), Ring::Natural);
    }
}
