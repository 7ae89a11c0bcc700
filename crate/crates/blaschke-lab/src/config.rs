//! Run configuration: defaults plus an optional `key = value` file.

use std::path::Path;

use blaschke_core::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Boundary grid size for catalog sampling; a power of two, at least 64.
    pub grid_n: usize,
    /// Taylor expansion order used when a catalog target is sampled.
    pub taylor_order: usize,
    /// Item cap for the convex-decomposition pipelines.
    pub order_cap: usize,
    /// Radius ladder for radial log-mean extrapolation.
    pub r_ladder: Vec<f64>,
    /// Seed for randomized subcommands (they refuse to run without one).
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_n: 1024,
            taylor_order: 32,
            order_cap: 65536,
            r_ladder: vec![0.9, 0.99, 0.999, 0.9999],
            seed: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 64 || !self.grid_n.is_power_of_two() {
            return Err(Error::precondition("grid_n must be a power of two >= 64"));
        }
        if !(8..=4096).contains(&self.taylor_order) {
            return Err(Error::precondition("taylor_order must lie in 8..=4096"));
        }
        if self.order_cap == 0 {
            return Err(Error::precondition("order_cap must be positive"));
        }
        if self.r_ladder.len() < 3
            || self.r_ladder.windows(2).any(|w| w[0] >= w[1])
            || self.r_ladder.iter().any(|&r| !(0.0..1.0).contains(&r))
        {
            return Err(Error::precondition(
                "r_ladder needs at least three increasing radii in (0, 1)",
            ));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::precondition(format!(
                    "config line {} is not 'key = value'",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Error::precondition(format!("config line {}: bad {what}", lineno + 1))
            };
            match key {
                "grid_n" => cfg.grid_n = value.parse().map_err(|_| bad("integer"))?,
                "taylor_order" => cfg.taylor_order = value.parse().map_err(|_| bad("integer"))?,
                "order_cap" => cfg.order_cap = value.parse().map_err(|_| bad("integer"))?,
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("integer"))?),
                "r_ladder" => {
                    cfg.r_ladder = value
                        .split(',')
                        .map(|s| s.trim().parse::<f64>().map_err(|_| bad("float list")))
                        .collect::<Result<Vec<_>>>()?;
                }
                _ => {
                    return Err(Error::precondition(format!(
                        "config line {}: unknown key '{key}'",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let dir = std::env::temp_dir().join("blaschke-lab-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(
            &path,
            "# comment\ngrid_n = 2048\nseed = 7\nr_ladder = 0.9, 0.99, 0.999\n",
        )
        .unwrap();
        let cfg = RunConfig::load(&path).unwrap();
        assert_eq!(cfg.grid_n, 2048);
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.r_ladder.len(), 3);

        std::fs::write(&path, "grid_n = 100\n").unwrap();
        assert!(RunConfig::load(&path).is_err());
        std::fs::write(&path, "nope = 1\n").unwrap();
        assert!(RunConfig::load(&path).is_err());
    }
}
