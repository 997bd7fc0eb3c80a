//! Search budgets shared by the bounded procedures.

/// Environment variable that overrides [`SearchConfig::candidate_budget`].
pub const BUDGET_ENV: &str = "SEMIGOLD_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Exponent window `[-w, w]` for witness rewrites over `⟨(2/3)^k⟩`.
    pub exponent_window: i64,
    /// Maximum degree (after shifting to minimum exponent 0) the factor oracle accepts.
    pub max_degree: i64,
    /// Maximum coefficient mass the factor oracle accepts.
    pub max_mass: u64,
    /// Maximum number of candidates any exhaustive enumeration may visit.
    pub candidate_budget: u64,
    /// Truncation order used for post-hoc series checks.
    pub check_order: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            exponent_window: 32,
            max_degree: 8,
            max_mass: 64,
            candidate_budget: 2_000_000,
            check_order: 200,
        }
    }
}

impl SearchConfig {
    /// Defaults, with the candidate budget taken from `SEMIGOLD_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut cfg = SearchConfig::default();
        if let Some(b) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.candidate_budget = b;
        }
        cfg
    }
}
