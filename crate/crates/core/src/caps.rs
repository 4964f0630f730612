//! Search caps.
//!
//! Every potentially explosive search (congruence-class closure, exhaustive
//! rank search, orbit following) takes an explicit cap and fails with a
//! structured error when it is exceeded — never by silently truncating.
//! `TAKAHASI_CAP` overrides the global default cap for CLI runs.

/// Name of the environment variable that overrides the default search cap.
pub const CAP_ENV_VAR: &str = "TAKAHASI_CAP";

/// Default ceiling on the number of states explored by a single closure,
/// class, or subset search.
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Default ceiling on the length a word may reach while an endomorphism
/// orbit is being followed.
pub const DEFAULT_ORBIT_LENGTH_CAP: usize = 4096;

/// Default bound on the size of a group accepted by exhaustive
/// minimum-rank search.
pub const DEFAULT_GROUP_RANK_CAP: usize = 24;

/// Default bounds for the exhaustive rank search in a completely simple
/// or Clifford subsemigroup: at most this many elements, subsets up to
/// this size.
pub const DEFAULT_CS_ELEMENT_CAP: usize = 64;
pub const DEFAULT_CS_SUBSET_CAP: usize = 4;

/// Resolves the global search cap: `TAKAHASI_CAP` if set and parseable,
/// otherwise [`DEFAULT_SEARCH_CAP`].
pub fn search_cap() -> usize {
    match std::env::var(CAP_ENV_VAR) {
        Ok(v) => v.trim().parse().unwrap_or(DEFAULT_SEARCH_CAP),
        Err(_) => DEFAULT_SEARCH_CAP,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cap_without_env() {
        // The test environment does not set the variable.
        if std::env::var(CAP_ENV_VAR).is_err() {
            assert_eq!(search_cap(), DEFAULT_SEARCH_CAP);
        }
    }
}
