use serde_json::{json, Map, Value};

use crate::config::SearchConfig;
use crate::laurent_poly::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertKind {
    BinomialMonolithic,
    MonolithicLowerHalf,
    MonolithicUpperHalf,
    BruteForceNoFactor,
    /// Trinomial whose middle coefficient is a unit, over an instance whose
    /// additive atoms are its units (a product of two non-monomials would
    /// make that coefficient a sum of two nonzero terms).
    TrinomialUnitMiddle,
    /// A monomial whose coefficient is an atom of the base instance.
    PrimeCoefficient,
    /// A monomial whose (polynomial) coefficient is itself certified.
    MonomialAtomCoefficient,
    /// Series: the top-gap condition forcing every factorization to have a
    /// monomial factor.
    HyperMonolithic,
    /// Series: gaps among the tail exponents eventually increase strictly.
    EventuallyIncreasingGaps,
}

impl CertKind {
    pub fn name(self) -> &'static str {
        match self {
            CertKind::BinomialMonolithic => "BinomialMonolithic",
            CertKind::MonolithicLowerHalf => "MonolithicLowerHalf",
            CertKind::MonolithicUpperHalf => "MonolithicUpperHalf",
            CertKind::BruteForceNoFactor => "BruteForceNoFactor",
            CertKind::TrinomialUnitMiddle => "TrinomialUnitMiddle",
            CertKind::PrimeCoefficient => "PrimeCoefficient",
            CertKind::MonomialAtomCoefficient => "MonomialAtomCoefficient",
            CertKind::HyperMonolithic => "HyperMonolithic",
            CertKind::EventuallyIncreasingGaps => "EventuallyIncreasingGaps",
        }
    }

    /// Whether the kind rests only on a structural criterion.
    pub fn is_lemma_based(self) -> bool {
        self != CertKind::BruteForceNoFactor
    }
}

/// Budgets a brute-force certificate was obtained under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_degree: i64,
    pub max_mass: u64,
    pub candidate_budget: u64,
}

impl From<&SearchConfig> for SearchBounds {
    fn from(c: &SearchConfig) -> Self {
        SearchBounds {
            max_degree: c.max_degree,
            max_mass: c.max_mass,
            candidate_budget: c.candidate_budget,
        }
    }
}

impl SearchBounds {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            max_degree: self.max_degree,
            max_mass: self.max_mass,
            candidate_budget: self.candidate_budget,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub kind: CertKind,
    /// `1 ∈ gcd` of the coefficients was checked and held.
    pub gcd: bool,
    pub bounds: Option<SearchBounds>,
    /// Tail index from which the gap condition is checked (series kinds).
    pub regularity_index: Option<u64>,
    pub inner: Option<Box<IrreducibilityCertificate>>,
}

impl IrreducibilityCertificate {
    pub fn lemma(kind: CertKind) -> Self {
        IrreducibilityCertificate {
            kind,
            gcd: true,
            bounds: None,
            regularity_index: None,
            inner: None,
        }
    }

    pub fn is_lemma_based(&self) -> bool {
        self.kind.is_lemma_based() && self.inner.as_ref().is_none_or(|c| c.is_lemma_based())
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind.name()));
        m.insert("gcd".into(), json!(self.gcd));
        if let Some(b) = &self.bounds {
            m.insert(
                "bounds".into(),
                json!({"max_degree": b.max_degree, "max_mass": b.max_mass, "candidate_budget": b.candidate_budget}),
            );
        }
        if let Some(n) = self.regularity_index {
            m.insert("regularity_index".into(), json!(n));
        }
        if let Some(i) = &self.inner {
            m.insert("inner".into(), i.to_json());
        }
        Value::Object(m)
    }
}

/// `g·h` equals the factored polynomial and neither factor is a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub g: LaurentPoly,
    pub h: LaurentPoly,
}

impl FactorWitness {
    pub fn to_json(&self) -> Value {
        self.to_json_named(&[])
    }

    pub fn to_json_named(&self, names: &[String]) -> Value {
        json!({"g": self.g.to_json(names), "h": self.h.to_json(names)})
    }
}

/// Outcome of an irreducibility query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Irreducible(IrreducibilityCertificate),
    NotIrreducible(FactorWitness),
    /// No criterion applied and no complete search was possible.
    Unknown(String),
}

impl Certification {
    pub fn certificate(&self) -> Option<&IrreducibilityCertificate> {
        match self {
            Certification::Irreducible(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_certificate(self) -> Option<IrreducibilityCertificate> {
        match self {
            Certification::Irreducible(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certification::Irreducible(c) => {
                json!({"verdict": "Irreducible", "certificate": c.to_json()})
            }
            Certification::NotIrreducible(w) => {
                json!({"verdict": "NotIrreducible", "witness": w.to_json()})
            }
            Certification::Unknown(r) => json!({"verdict": "Unknown", "reason": r}),
        }
    }
}
