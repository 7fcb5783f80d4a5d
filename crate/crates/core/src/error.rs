use thiserror::Error;

/// Errors shared across the model, starter, solver and table modules.
#[derive(Debug, Error)]
pub enum KeplerError {
    /// Covers e < 0 and e >= 1. The whole certification machinery needs
    /// f' >= 1 - e > 0, so the parabolic limit e = 1 is rejected outright.
    #[error("eccentricity {0} is outside [0, 1)")]
    EccentricityOutOfRange(f64),
    #[error("mean anomaly {0} is outside the canonical range [0, pi]")]
    MeanAnomalyOutOfRange(f64),
    #[error("expected a finite angle, got {0}")]
    NonFiniteInput(f64),
    #[error("semi-major axis {0} must be finite and positive")]
    SemiMajorAxisOutOfRange(f64),
    #[error("starter {kind} is undefined here: {why}")]
    StarterUndefined {
        kind: &'static str,
        why: &'static str,
    },
    #[error("requested digit count must be at least 1, got {0}")]
    DigitsOutOfRange(u32),
    #[error("residual tolerance must be finite and positive, got {0}")]
    ToleranceOutOfRange(f64),
    #[error("newton failed to reach the requested residual within {0} iterations")]
    NewtonStalled(u32),
    #[error("table epsilon {0} is outside (0, 1)")]
    EpsilonOutOfRange(f64),
    #[error("epsilon {eps} needs a grid of N = {n} (more than {max} entries)")]
    TableTooLarge { eps: f64, n: u64, max: u64 },
    #[error("corner query unsupported: table epsilon {eps} is not below 1 - cos(pi/7) = {limit}")]
    CornerUnsupported { eps: f64, limit: f64 },
    #[error("table stream truncated: {found} bytes, the header alone needs 24")]
    TableTruncated { found: usize },
    #[error("table stream does not start with the KALT magic bytes")]
    TableBadMagic,
    #[error("table format version {0} is not supported (expected 1)")]
    TableVersionMismatch(u32),
    #[error("table stream length {found} does not match the header (expected {expected})")]
    TableSizeMismatch { expected: u64, found: u64 },
    #[error("table N = {n} is too small for epsilon {eps} (needs at least {required})")]
    TableUndersized { n: u64, eps: f64, required: u64 },
    #[error("table entry ({i}, {j}) violates the construction invariants")]
    TableEntryInvariant { i: u64, j: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json export failed: {0}")]
    Json(#[from] serde_json::Error),
}
