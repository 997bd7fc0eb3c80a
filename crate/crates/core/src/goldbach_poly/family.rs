use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{certify_part, Summand};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::laurent_poly::LaurentPoly;
use crate::semidomain::{Element, Ring, TwoThirds};

/// `(4/3)x + 2` over `⟨(2/3)^k⟩`, with `4/3` held as `2·(2/3)`.
pub fn two_thirds_target() -> LaurentPoly {
    let four_thirds = TwoThirds::from_witness([(1, BigUint::from(2u32))]);
    LaurentPoly::from_terms(
        Ring::TwoThirds,
        [
            (1, Element::TwoThirds(four_thirds)),
            (0, Element::TwoThirds(TwoThirds::from_u64(2))),
        ],
    )
    .expect("two-thirds terms")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFamilyItem {
    pub index: u64,
    pub summands: [Summand; 2],
}

impl DecompositionFamilyItem {
    pub fn to_json(&self) -> Value {
        json!({"index": self.index, "summands": self.summands.iter().map(Summand::to_json).collect::<Vec<_>>()})
    }
}

/// The `n`-th decomposition `[(2/3)^n x + 1] + [s_n x + 1]` of `(4/3)x + 2`,
/// where `s_n` comes from rewriting `4/3` until a level-`n` atom can be
/// peeled off.
pub fn two_thirds_family(n: u64, cfg: &SearchConfig) -> Result<DecompositionFamilyItem> {
    if n == 0 {
        return Err(Error::ConditionNotMet(
            "the family is indexed from 1".into(),
        ));
    }
    let level = i64::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    let four_thirds = TwoThirds::from_witness([(1, BigUint::from(2u32))]);
    let exposed = four_thirds.expose_atom(level, cfg.exponent_window)?;
    let rest = exposed
        .remove_atom(level)
        .ok_or_else(|| Error::Defect(format!("no level-{level} atom after rewriting")))?;
    let one = Element::TwoThirds(TwoThirds::from_u64(1));
    let g = LaurentPoly::from_terms(
        Ring::TwoThirds,
        [
            (1, Element::TwoThirds(TwoThirds::atom(level))),
            (0, one.clone()),
        ],
    )?;
    let h = LaurentPoly::from_terms(Ring::TwoThirds, [(1, Element::TwoThirds(rest)), (0, one)])?;
    if g.add(&h)? != two_thirds_target() {
        return Err(Error::Defect("family summands do not add up".into()));
    }
    let cg = certify_part(&g, cfg)?;
    let ch = certify_part(&h, cfg)?;
    Ok(DecompositionFamilyItem {
        index: n,
        summands: [
            Summand {
                poly: g,
                certificate: cg,
            },
            Summand {
                poly: h,
                certificate: ch,
            },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn coeff(p: &LaurentPoly) -> TwoThirds {
        match p.coeff(1) {
            Some(Element::TwoThirds(t)) => t.clone(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn first_members() {
        let cfg = SearchConfig::default();
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let i1 = two_thirds_family(1, &cfg).unwrap();
        assert_eq!(coeff(&i1.summands[1].poly).value(), &r(2, 3));
        let i2 = two_thirds_family(2, &cfg).unwrap();
        let s2 = coeff(&i2.summands[1].poly);
        assert_eq!(s2.value(), &r(8, 9));
        assert_eq!(s2.witness().get(&2), Some(&BigUint::from(2u32)));
        let s3 = coeff(&two_thirds_family(3, &cfg).unwrap().summands[1].poly);
        assert_eq!(s3.value(), &r(28, 27));
        assert_eq!(s3.witness().get(&2), Some(&BigUint::from(1u32)));
        assert_eq!(s3.witness().get(&3), Some(&BigUint::from(2u32)));
        assert_eq!(
            two_thirds_family(0, &cfg).unwrap_err().code(),
            "ConditionNotMet"
        );
    }
}
