//! Range and grid arguments.

use std::fmt;
use std::str::FromStr;

/// Inclusive layer range written `A..B`, or a single layer `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerRange {
    pub first: u32,
    pub last: u32,
}

impl LayerRange {
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.first..=self.last
    }
}

impl fmt::Display for LayerRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.first, self.last)
    }
}

impl FromStr for LayerRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{part}` is not a layer number"))
        };
        let (first, last) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let a = parse(s)?;
                (a, a)
            }
        };
        if first == 0 {
            return Err("layers start at 1".into());
        }
        if last < first {
            return Err(format!("empty layer range {first}..{last}"));
        }
        Ok(LayerRange { first, last })
    }
}

/// Evenly spaced times written `A:B:STEP`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl TimeGrid {
    pub fn single(t: f64) -> Self {
        TimeGrid {
            start: t,
            end: t,
            step: 1.0,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        // Slack absorbs representation error in (end - start) / step.
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

pub fn parse_time(s: &str) -> Result<f64, String> {
    let t: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if !t.is_finite() || t < 0.0 {
        return Err(format!("time must be finite and non-negative, got {s}"));
    }
    Ok(t)
}

impl FromStr for TimeGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts.as_slice() else {
            return Err(format!("expected START:END:STEP, got `{s}`"));
        };
        let (start, end) = (parse_time(a)?, parse_time(b)?);
        let step: f64 = step
            .trim()
            .parse()
            .map_err(|_| format!("`{step}` is not a number"))?;
        if !(step.is_finite() && step > 0.0) {
            return Err("time step must be positive".into());
        }
        if end < start {
            return Err(format!("time grid ends before it starts: {s}"));
        }
        Ok(TimeGrid { start, end, step })
    }
}
