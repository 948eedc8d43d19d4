use std::sync::atomic::{AtomicUsize, Ordering};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Returns a name of the form `base_N` that no previous call has returned.
/// User-written names never collide as long as they avoid the `_N` suffix
/// convention with large `N`.
pub fn fresh_name(base: &str) -> String {
    let stem = match base.rfind('_') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < base.len() => {
            &base[..i]
        }
        _ => base,
    };
    let stem = if stem.is_empty() { "v" } else { stem };
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    format!("{stem}_{}", n + 1000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_are_distinct_and_keep_stem() {
        let a = fresh_name("x");
        let b = fresh_name(&a);
        assert_ne!(a, b);
        assert!(b.starts_with("x_"));
        assert_eq!(b.matches('_').count(), 1);
    }
}
