use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::stack::AnyStack;

/// A start stack and the flip sizes applied to it, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipTrace {
    pub start: AnyStack,
    pub flips: Vec<usize>,
}

impl FlipTrace {
    pub fn new(start: AnyStack, flips: Vec<usize>) -> Self {
        FlipTrace { start, flips }
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    /// Flip sizes must lie in `1..=n`; unburnt stacks only take sizes of two
    /// or more.
    pub fn validate(&self) -> Result<()> {
        let n = self.start.len();
        let min = match self.start {
            AnyStack::Unburnt(_) => 2,
            _ => 1,
        };
        for (i, &k) in self.flips.iter().enumerate() {
            if k < min || k > n {
                return Err(PancakeError::invalid(format!(
                    "flip #{} has size {k}, expected {min}..={n}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Every intermediate stack, starting with `start`.
    pub fn states(&self) -> Result<Vec<AnyStack>> {
        self.validate()?;
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.flips.len() + 1);
        out.push(cur.clone());
        for &k in &self.flips {
            cur.flip_in_place(k);
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn replay(&self) -> Result<AnyStack> {
        self.validate()?;
        let mut cur = self.start.clone();
        for &k in &self.flips {
            cur.flip_in_place(k);
        }
        Ok(cur)
    }

    pub fn sorts(&self) -> Result<bool> {
        Ok(self.replay()?.is_sorted())
    }
}

pub fn parse_flip_list(text: &str) -> Result<Vec<usize>> {
    text.split([',', ' '])
        .filter(|t| !t.trim().is_empty())
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| PancakeError::parse(i + 1, format!("`{t}` is not a flip size")))
        })
        .collect()
}
