//! Runtime-configurable limits.

/// Maximum degree of any constructed number field.
///
/// Override with the `FROBENIAN_DEGREE_CAP` environment variable.
pub fn degree_cap() -> usize {
    std::env::var("FROBENIAN_DEGREE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(24)
}

/// Maximum size of a wreath product enumerated exhaustively.
///
/// Override with `FROBENIAN_BRUTE_BUDGET`.
pub fn brute_force_budget() -> u64 {
    std::env::var("FROBENIAN_BRUTE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}
