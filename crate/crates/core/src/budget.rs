//! Wall-clock budgets for the exponential searches.
//!
//! A search calls [`Budget::tick`] once per node. The clock is consulted on
//! the first tick and then every `CHECK_INTERVAL` ticks, so a zero budget
//! fails on the very first tick.

use std::cell::Cell;
use std::time::{Duration, Instant};

const CHECK_INTERVAL: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    ticks: Cell<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            ticks: Cell::new(0),
        }
    }

    pub fn from_millis(ms: u64) -> Self {
        Self::with_timeout(Duration::from_millis(ms))
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + timeout),
            ticks: Cell::new(0),
        }
    }

    /// `None` means unlimited.
    pub fn from_optional_millis(ms: Option<u64>) -> Self {
        ms.map_or_else(Self::unlimited, Self::from_millis)
    }

    #[inline]
    pub fn tick(&self) -> Result<(), Exhausted> {
        let Some(deadline) = self.deadline else {
            return Ok(());
        };
        let t = self.ticks.get();
        self.ticks.set(t.wrapping_add(1));
        if t % CHECK_INTERVAL == 0 && Instant::now() >= deadline {
            return Err(Exhausted);
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}
