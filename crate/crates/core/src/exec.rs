//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled the [`Exec::Parallel`] mode runs on the
//! rayon global pool; without it, both modes run sequentially.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

static DEFAULT_MODE: AtomicU8 = AtomicU8::new(1);

impl Exec {
    /// Mode used by the library entry points.
    pub fn current() -> Exec {
        match DEFAULT_MODE.load(Ordering::Relaxed) {
            0 => Exec::Sequential,
            _ => Exec::Parallel,
        }
    }

    pub fn set_current(mode: Exec) {
        DEFAULT_MODE.store(mode as u8, Ordering::Relaxed);
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(Exec::current(), items, f)
}

pub fn map_with<T, R, F>(mode: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Returns the first item (in slice order) for which `f` yields `Some`.
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if Exec::current().is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().find_map_first(f);
        }
    }
    items.iter().find_map(f)
}
