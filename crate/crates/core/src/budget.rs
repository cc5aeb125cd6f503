//! Size caps and work limits for exhaustive searches.
//!
//! Every search charges its steps against a [`WorkMeter`]; running out is an
//! explicit [`Error::Budget`], never a silently truncated result.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable read by [`Budget::from_env`].
pub const BUDGET_ENV: &str = "HETCAT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest FinSet skeleton the gallery will build.
    pub max_set_size: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// Total number of het elements in one bifunctor.
    pub max_het_size: usize,
    /// Elementary steps (factor tests, candidate extensions) per search.
    pub max_work: u64,
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_set_size: 4,
            max_objects: 256,
            max_morphisms: 8192,
            max_het_size: 1 << 20,
            max_work: 2_000_000_000,
            parallel: true,
        }
    }
}

impl Budget {
    /// Defaults overridden by `HETCAT_BUDGET`, a comma-separated list of
    /// `key=value` pairs with keys `set`, `objects`, `morphisms`, `het`,
    /// `work` and `parallel` (`on`/`off`).
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Budget> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Budget(format!("malformed budget entry `{item}`")))?;
            let num = || {
                value
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Budget(format!("budget entry `{item}` is not a number")))
            };
            match key.trim() {
                "set" => self.max_set_size = num()? as usize,
                "objects" => self.max_objects = num()? as usize,
                "morphisms" => self.max_morphisms = num()? as usize,
                "het" => self.max_het_size = num()? as usize,
                "work" => self.max_work = num()?,
                "parallel" => {
                    self.parallel = match value.trim() {
                        "on" | "true" | "1" => true,
                        "off" | "false" | "0" => false,
                        _ => return Err(Error::Budget(format!("budget entry `{item}` must be on or off"))),
                    }
                }
                other => return Err(Error::Budget(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub fn sequential(mut self) -> Budget {
        self.parallel = false;
        self
    }

    pub fn meter(&self) -> WorkMeter {
        WorkMeter::new(self.max_work)
    }

    pub fn check_objects(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_objects {
            return Err(Error::Budget(format!("{what} has {n} objects, cap is {}", self.max_objects)));
        }
        Ok(())
    }

    pub fn check_morphisms(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_morphisms {
            return Err(Error::Budget(format!("{what} has {n} morphisms, cap is {}", self.max_morphisms)));
        }
        Ok(())
    }

    pub fn check_het_size(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_het_size {
            return Err(Error::Budget(format!("{what} has {n} het elements, cap is {}", self.max_het_size)));
        }
        Ok(())
    }
}

/// Thread-safe step counter shared by the workers of one search.
#[derive(Debug)]
pub struct WorkMeter {
    limit: u64,
    used: AtomicU64,
}

impl WorkMeter {
    pub fn new(limit: u64) -> WorkMeter {
        WorkMeter {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn charge(&self, steps: u64) -> Result<()> {
        let before = self.used.fetch_add(steps, Ordering::Relaxed);
        if before.saturating_add(steps) > self.limit {
            return Err(Error::Budget(format!("search exceeded the work budget of {} steps", self.limit)));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let b = Budget::default().with_overrides("set=3, work=10,parallel=off").unwrap();
        assert_eq!(b.max_set_size, 3);
        assert_eq!(b.max_work, 10);
        assert!(!b.parallel);
        assert!(Budget::default().with_overrides("bogus=1").is_err());
    }

    #[test]
    fn meter_reports_exhaustion() {
        let m = WorkMeter::new(5);
        assert!(m.charge(5).is_ok());
        assert!(matches!(m.charge(1), Err(Error::Budget(_))));
    }
}
