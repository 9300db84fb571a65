//! Deterministic, thread-capped mapping over independent scenarios.

use std::num::NonZeroUsize;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BO_LAB_THREADS";

/// Worker count: `BO_LAB_THREADS` if it is a positive integer, otherwise the
/// available parallelism.
pub fn thread_cap() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1))
}

/// Applies `f` to every item using at most `threads` workers; results keep
/// the input order, so the output does not depend on scheduling.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("result slots")[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every item is processed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_any_thread_count() {
        let items: Vec<u64> = (0..37).collect();
        let serial = parallel_map(&items, 1, |x| x * x);
        for threads in [2, 3, 8, 100] {
            assert_eq!(parallel_map(&items, threads, |x| x * x), serial);
        }
        assert!(parallel_map(&Vec::<u64>::new(), 4, |x| *x).is_empty());
    }
}
