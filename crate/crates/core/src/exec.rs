//! Serial / parallel dispatch for independent work items.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How independent work items are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    /// Runs on the rayon pool when the `parallel` feature is enabled, and
    /// falls back to [`Exec::Serial`] otherwise.
    #[default]
    Parallel,
}

impl Exec {
    pub fn from_flag(parallel: bool) -> Self {
        if parallel {
            Exec::Parallel
        } else {
            Exec::Serial
        }
    }

    /// Maps `f` over `0..count`, returning results in index order.
    pub fn map_indexed<T, F>(self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..count).into_par_iter().map(f).collect(),
            _ => (0..count).map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let serial = Exec::Serial.map_indexed(1000, |i| i * i);
        let parallel = Exec::Parallel.map_indexed(1000, |i| i * i);
        assert_eq!(serial, parallel);
        assert_eq!(serial[999], 999 * 999);
    }
}
