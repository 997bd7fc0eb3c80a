//! Infinite sets of term ranks, and the gap facts they carry.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An infinite subset `K` of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetSpec {
    ArithmeticProgression {
        first: u64,
        step: u64,
    },
    /// Pseudo-random membership from a seeded ChaCha stream; a run of seven
    /// rejections forces the next integer in, so the set is infinite.
    BitStream {
        seed: u64,
    },
}

const MAX_ZERO_RUN: u32 = 7;

impl SubsetSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SubsetSpec::ArithmeticProgression { first, step } if *first == 0 || *step == 0 => {
                Err(Error::ConditionNotMet(
                    "arithmetic progression needs first >= 1 and step >= 1".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64>> {
        match *self {
            SubsetSpec::ArithmeticProgression { first, step } => {
                Box::new((0u64..).map_while(move |n| step.checked_mul(n)?.checked_add(first)))
            }
            SubsetSpec::BitStream { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut zeros = 0;
                Box::new((1u64..).filter(move |_| {
                    let hit = rng.next_u32() & 1 == 1 || zeros == MAX_ZERO_RUN;
                    zeros = if hit { 0 } else { zeros + 1 };
                    hit
                }))
            }
        }
    }

    pub fn contains(&self, i: u64) -> bool {
        match *self {
            SubsetSpec::ArithmeticProgression { first, step } => {
                i >= first && (i - first).is_multiple_of(step)
            }
            SubsetSpec::BitStream { .. } => self.iter().take_while(|&m| m <= i).any(|m| m == i),
        }
    }

    /// Smallest difference between consecutive members.
    pub fn min_step(&self) -> u64 {
        match *self {
            SubsetSpec::ArithmeticProgression { step, .. } => step,
            SubsetSpec::BitStream { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SubsetSpec::ArithmeticProgression { first, step } => {
                json!({"kind": "ap", "first": first, "step": step})
            }
            SubsetSpec::BitStream { seed } => json!({"kind": "bits", "seed": seed}),
        }
    }

    /// `ap:<first>:<step>` or `bits:<seed>`.
    pub fn parse(text: &str) -> Result<SubsetSpec> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected ap:<first>:<step> or bits:<seed>, got `{text}`"),
        };
        let parts: Vec<&str> = text.trim().split(':').collect();
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
        let spec = match parts.as_slice() {
            ["ap", a, b] => SubsetSpec::ArithmeticProgression {
                first: num(a)?,
                step: num(b)?,
            },
            ["bits", s] => SubsetSpec::BitStream { seed: num(s)? },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl std::fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubsetSpec::ArithmeticProgression { first, step } => write!(f, "ap:{first}:{step}"),
            SubsetSpec::BitStream { seed } => write!(f, "bits:{seed}"),
        }
    }
}

/// How consecutive differences of an increasing sequence behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Growth {
    Unknown,
    Constant,
    NonDecreasing,
    Increasing,
    /// Every difference exceeds the sum of all earlier ones.
    SuperIncreasing,
}

impl Growth {
    fn nondecreasing(self) -> bool {
        self != Growth::Unknown
    }
}

/// An infinite, increasing set of term ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexSet {
    All,
    Stride {
        first: u64,
        step: u64,
    },
    /// `first + first_diff·n + increment·n(n-1)/2`.
    Quadratic {
        first: u64,
        first_diff: u64,
        increment: u64,
    },
    /// `first + unit·(2^n - 1)`.
    Doubling {
        first: u64,
        unit: u64,
    },
    /// `shift + i` for `i ∈ K`.
    Members {
        subset: SubsetSpec,
        shift: u64,
    },
    Above {
        set: Box<IndexSet>,
        min: u64,
    },
    Complement(Box<IndexSet>),
    /// `base[r]` for `r ∈ ranks`.
    Pick {
        base: Box<IndexSet>,
        ranks: Box<IndexSet>,
    },
}

impl IndexSet {
    pub fn above(self, min: u64) -> IndexSet {
        IndexSet::Above {
            set: Box::new(self),
            min,
        }
    }

    pub fn complement(self) -> IndexSet {
        IndexSet::Complement(Box::new(self))
    }

    pub fn pick(self, ranks: IndexSet) -> IndexSet {
        IndexSet::Pick {
            base: Box::new(self),
            ranks: Box::new(ranks),
        }
    }

    /// Members in increasing order; ends only where `u64` overflows.
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64>> {
        match self.clone() {
            IndexSet::All => Box::new(0u64..),
            IndexSet::Stride { first, step } => {
                Box::new((0u64..).map_while(move |n| step.checked_mul(n)?.checked_add(first)))
            }
            IndexSet::Quadratic {
                first,
                first_diff,
                increment,
            } => Box::new((0u64..).map_while(move |n| {
                let tri = n.checked_mul(n.saturating_sub(1))? / 2;
                first
                    .checked_add(first_diff.checked_mul(n)?)?
                    .checked_add(increment.checked_mul(tri)?)
            })),
            IndexSet::Doubling { first, unit } => Box::new(
                (0u32..63)
                    .map_while(move |n| unit.checked_mul((1u64 << n) - 1)?.checked_add(first)),
            ),
            IndexSet::Members { subset, shift } => {
                Box::new(subset.iter().map_while(move |i| i.checked_add(shift)))
            }
            IndexSet::Above { set, min } => Box::new(set.iter().skip_while(move |&r| r < min)),
            IndexSet::Complement(set) => {
                let mut inner = set.iter().peekable();
                Box::new((0u64..).filter(move |&n| {
                    while inner.peek().is_some_and(|&m| m < n) {
                        inner.next();
                    }
                    inner.peek() != Some(&n)
                }))
            }
            IndexSet::Pick { base, ranks } => {
                let mut b = base.iter();
                let mut pos = 0u64;
                Box::new(ranks.iter().map_while(move |r| {
                    let v = b.nth((r - pos) as usize)?;
                    pos = r + 1;
                    Some(v)
                }))
            }
        }
    }

    pub fn contains(&self, r: u64) -> bool {
        match self {
            IndexSet::All => true,
            IndexSet::Stride { first, step } => r >= *first && (r - first).is_multiple_of(*step),
            IndexSet::Complement(set) => !set.contains(r),
            IndexSet::Above { set, min } => r >= *min && set.contains(r),
            _ => self.iter().take_while(|&m| m <= r).any(|m| m == r),
        }
    }

    /// Lower bound on the difference of consecutive members.
    pub fn min_step(&self) -> u64 {
        match self {
            IndexSet::All | IndexSet::Complement(_) => 1,
            IndexSet::Stride { step, .. } => *step,
            IndexSet::Quadratic { first_diff, .. } => *first_diff,
            IndexSet::Doubling { unit, .. } => *unit,
            IndexSet::Members { subset, .. } => subset.min_step(),
            IndexSet::Above { set, .. } => set.min_step(),
            IndexSet::Pick { base, ranks } => base.min_step().saturating_mul(ranks.min_step()),
        }
    }

    /// Behaviour of consecutive differences, derived from the structure alone.
    pub fn growth(&self) -> Growth {
        match self {
            IndexSet::All | IndexSet::Stride { .. } => Growth::Constant,
            IndexSet::Quadratic { increment, .. } => {
                if *increment == 0 {
                    Growth::Constant
                } else {
                    Growth::Increasing
                }
            }
            IndexSet::Doubling { .. } => Growth::SuperIncreasing,
            IndexSet::Members {
                subset: SubsetSpec::ArithmeticProgression { .. },
                ..
            } => Growth::Constant,
            IndexSet::Members { .. } | IndexSet::Complement(_) => Growth::Unknown,
            // a tail of a superincreasing sequence stays superincreasing
            IndexSet::Above { set, .. } => set.growth(),
            IndexSet::Pick { base, ranks } => match (base.growth(), ranks.growth()) {
                (Growth::SuperIncreasing, _) => Growth::SuperIncreasing,
                (Growth::Constant, r) => r,
                (Growth::Increasing, r) if r.nondecreasing() => Growth::Increasing,
                (Growth::NonDecreasing, Growth::Increasing | Growth::SuperIncreasing) => {
                    Growth::Increasing
                }
                (Growth::NonDecreasing, r) if r.nondecreasing() => Growth::NonDecreasing,
                _ => Growth::Unknown,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            IndexSet::All => json!({"kind": "all"}),
            IndexSet::Stride { first, step } => {
                json!({"kind": "stride", "first": first, "step": step})
            }
            IndexSet::Quadratic {
                first,
                first_diff,
                increment,
            } => {
                json!({"kind": "quadratic", "first": first, "first_diff": first_diff, "increment": increment})
            }
            IndexSet::Doubling { first, unit } => {
                json!({"kind": "doubling", "first": first, "unit": unit})
            }
            IndexSet::Members { subset, shift } => {
                json!({"kind": "members", "subset": subset.to_json(), "shift": shift})
            }
            IndexSet::Above { set, min } => {
                json!({"kind": "above", "min": min, "set": set.to_json()})
            }
            IndexSet::Complement(set) => json!({"kind": "complement", "set": set.to_json()}),
            IndexSet::Pick { base, ranks } => {
                json!({"kind": "pick", "base": base.to_json(), "ranks": ranks.to_json()})
            }
        }
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexSet::All => write!(f, "all"),
            IndexSet::Stride { first, step } => write!(f, "stride({first}, {step})"),
            IndexSet::Quadratic {
                first,
                first_diff,
                increment,
            } => {
                write!(f, "quadratic({first}, {first_diff}, {increment})")
            }
            IndexSet::Doubling { first, unit } => write!(f, "doubling({first}, {unit})"),
            IndexSet::Members { subset, shift } => write!(f, "members({subset}, +{shift})"),
            IndexSet::Above { set, min } => write!(f, "above({set}, {min})"),
            IndexSet::Complement(set) => write!(f, "not({set})"),
            IndexSet::Pick { base, ranks } => write!(f, "pick({base}, {ranks})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first(s: &IndexSet, n: usize) -> Vec<u64> {
        s.iter().take(n).collect()
    }

    #[test]
    fn basic_sets() {
        assert_eq!(
            first(&IndexSet::Stride { first: 3, step: 2 }, 4),
            [3, 5, 7, 9]
        );
        assert_eq!(
            first(
                &IndexSet::Quadratic {
                    first: 4,
                    first_diff: 2,
                    increment: 1
                },
                5
            ),
            [4, 6, 9, 13, 18]
        );
        assert_eq!(
            first(&IndexSet::Doubling { first: 1, unit: 2 }, 4),
            [1, 3, 7, 15]
        );
        let q = IndexSet::Quadratic {
            first: 1,
            first_diff: 2,
            increment: 1,
        };
        assert_eq!(first(&q.clone().complement(), 6), [0, 2, 4, 5, 7, 8]);
        assert_eq!(
            first(&q.clone().pick(IndexSet::Stride { first: 1, step: 2 }), 3),
            [3, 10, 21]
        );
        assert_eq!(first(&IndexSet::All.above(5), 2), [5, 6]);
        assert!(q.contains(10) && !q.contains(11));
    }

    #[test]
    fn subsets() {
        let ap = SubsetSpec::ArithmeticProgression { first: 3, step: 3 };
        assert_eq!(ap.iter().take(3).collect::<Vec<_>>(), [3, 6, 9]);
        assert!(ap.contains(12) && !ap.contains(13));
        let b = SubsetSpec::BitStream { seed: 7 };
        let m: Vec<u64> = b.iter().take(200).collect();
        assert_eq!(m, b.iter().take(200).collect::<Vec<_>>());
        assert!(m.windows(2).all(|w| w[1] - w[0] <= 8));
        assert!(m.iter().all(|&i| i >= 1));
        assert!(b.contains(m[10]));
        assert_eq!(
            SubsetSpec::parse("ap:2:2").unwrap(),
            SubsetSpec::ArithmeticProgression { first: 2, step: 2 }
        );
        assert!(SubsetSpec::parse("ap:0:2").is_err());
    }

    #[test]
    fn growth_rules() {
        let q = IndexSet::Quadratic {
            first: 0,
            first_diff: 2,
            increment: 1,
        };
        assert_eq!(q.growth(), Growth::Increasing);
        let ap = IndexSet::Members {
            subset: SubsetSpec::ArithmeticProgression { first: 2, step: 2 },
            shift: 1,
        };
        assert_eq!(q.clone().pick(ap).growth(), Growth::Increasing);
        let bits = IndexSet::Members {
            subset: SubsetSpec::BitStream { seed: 1 },
            shift: 0,
        };
        assert_eq!(q.pick(bits.clone()).growth(), Growth::Unknown);
        assert_eq!(
            IndexSet::Doubling { first: 0, unit: 1 }.pick(bits).growth(),
            Growth::SuperIncreasing
        );
        assert_eq!(IndexSet::All.complement().min_step(), 1);
    }
}
