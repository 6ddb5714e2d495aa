//! File formats, the command-line front end and the acceptance suite for
//! [`whitefact_core`].

pub mod cli;
pub mod formats;
pub mod selftest;

/// Sizes the global thread pool from `WHITEFACT_THREADS` (unset or `0`
/// means one thread per core). Returns an error message for a value that is
/// not a number.
pub fn configure_threads() -> Result<(), String> {
    let threads = match std::env::var("WHITEFACT_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("WHITEFACT_THREADS={v:?} is not a number"))?,
        Err(_) => 0,
    };
    // A second call finds the pool already built, which is fine.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}
