/// Limits and overrides shared by the randomized constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// Maximum number of full rebuilds of a randomized family.
    pub retry_cap: u64,
    /// Resampling budget of the local-lemma samplers, per event.
    pub resample_factor: u64,
    /// Run even when a parameter precondition fails; the output is still verified.
    pub force: bool,
    /// Genus pipeline: `|X|` at or above this uses the suitable-family branch.
    pub genus_threshold: usize,
}

pub const RETRY_CAP_ENV: &str = "BOXLAB_RETRY_CAP";

impl Default for Options {
    fn default() -> Self {
        Options {
            retry_cap: 64,
            resample_factor: 10_000,
            force: false,
            genus_threshold: 10_000,
        }
    }
}

impl Options {
    /// Defaults, with `BOXLAB_RETRY_CAP` applied when set to a positive integer.
    pub fn from_env() -> Self {
        let mut o = Options::default();
        if let Some(cap) = std::env::var(RETRY_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            if cap > 0 {
                o.retry_cap = cap;
            }
        }
        o
    }
}
