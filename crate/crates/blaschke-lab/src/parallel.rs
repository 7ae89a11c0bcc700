//! Order-preserving fork/join over a worker count capped by the
//! `BLASCHKE_LAB_THREADS` environment variable.

pub const THREADS_ENV: &str = "BLASCHKE_LAB_THREADS";

pub fn thread_cap() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.parse::<usize>().ok().filter(|&n| n > 0).unwrap_or(1).min(64),
        Err(_) => available,
    }
}

/// Map `f` over `items`, preserving order. Contiguous chunks are handed to
/// scoped threads; results are reassembled by chunk index, so the output is
/// `items.iter().map(f)` regardless of scheduling.
pub fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = thread_cap().min(items.len().max(1));
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut pieces: Vec<Vec<U>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| scope.spawn(|| slice.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        for h in handles {
            pieces.push(h.join().expect("worker panicked"));
        }
    });
    pieces.into_iter().flatten().collect()
}
