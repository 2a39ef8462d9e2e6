//! Finite and eventually periodic sequences of partial quotients, and the
//! Collatz representation of a rational.
//!
//! Text form is `[q1,...,qm,(p1,...,pn)]` for an eventually periodic sequence
//! and `[q1,...,qm]` for a finite one; whitespace is ignored.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{collatz_step, OddRational, PartialQuotient};

/// A finite list of partial quotients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSeq(Vec<PartialQuotient>);

impl FiniteSeq {
    pub fn new() -> Self {
        FiniteSeq(Vec::new())
    }

    pub fn from_values(values: &[u64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| PartialQuotient::new(v))
            .collect::<Result<Vec<_>>>()
            .map(FiniteSeq)
    }

    pub fn items(&self) -> &[PartialQuotient] {
        &self.0
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|q| q.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, q: PartialQuotient) {
        self.0.push(q);
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|q| q.get()).sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &FiniteSeq) -> FiniteSeq {
        let mut items = self.0.clone();
        items.extend_from_slice(&other.0);
        FiniteSeq(items)
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> FiniteSeq {
        FiniteSeq(self.0.repeat(times))
    }

    pub fn starts_with(&self, prefix: &FiniteSeq) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Length of the shortest word `u` with `self` a prefix of `u^∞`.
    pub fn smallest_period(&self) -> usize {
        // KMP failure function
        let s = &self.0;
        if s.is_empty() {
            return 0;
        }
        let mut fail = vec![0usize; s.len()];
        let mut k = 0;
        for i in 1..s.len() {
            while k > 0 && s[i] != s[k] {
                k = fail[k - 1];
            }
            if s[i] == s[k] {
                k += 1;
            }
            fail[i] = k;
        }
        s.len() - fail[s.len() - 1]
    }

    /// True unless the word is a k-fold repetition (k ≥ 2) of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let p = self.smallest_period();
        p == self.len() || !self.len().is_multiple_of(p)
    }

    fn write_items(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl From<Vec<PartialQuotient>> for FiniteSeq {
    fn from(items: Vec<PartialQuotient>) -> Self {
        FiniteSeq(items)
    }
}

impl fmt::Display for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        self.write_items(f)?;
        f.write_str("]")
    }
}

impl FromStr for FiniteSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pre, cycle) = parse_brackets(s, "finite sequence")?;
        if cycle.is_some() {
            return Err(Error::Parse {
                what: "finite sequence",
                token: s.to_string(),
            });
        }
        Ok(pre)
    }
}

/// `[a1,...,am,(b1,...,bn)]`: a preperiod followed by a repeating, nonempty cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSeq {
    preperiod: FiniteSeq,
    cycle: FiniteSeq,
}

impl EventuallyPeriodicSeq {
    pub fn new(preperiod: FiniteSeq, cycle: FiniteSeq) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(EventuallyPeriodicSeq { preperiod, cycle })
    }

    /// The absolutely periodic sequence `[(cycle)]`.
    pub fn pure(cycle: FiniteSeq) -> Result<Self> {
        Self::new(FiniteSeq::new(), cycle)
    }

    pub fn preperiod(&self) -> &FiniteSeq {
        &self.preperiod
    }

    pub fn cycle(&self) -> &FiniteSeq {
        &self.cycle
    }

    pub fn is_absolutely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// The first `n` terms of the infinite expansion.
    pub fn expand(&self, n: usize) -> Vec<PartialQuotient> {
        self.preperiod
            .items()
            .iter()
            .chain(self.cycle.items().iter().cycle())
            .take(n)
            .copied()
            .collect()
    }

    /// The unique presentation of the same infinite sequence with a primitive
    /// cycle and a minimal preperiod.
    pub fn canonicalize(&self) -> EventuallyPeriodicSeq {
        let mut cycle = self.cycle.0.clone();
        let p = self.cycle.smallest_period();
        if cycle.len().is_multiple_of(p) {
            cycle.truncate(p);
        }
        let mut pre = self.preperiod.0.clone();
        while let (Some(&last_pre), Some(&last_cycle)) = (pre.last(), cycle.last()) {
            if last_pre != last_cycle {
                break;
            }
            pre.pop();
            cycle.rotate_right(1);
        }
        EventuallyPeriodicSeq {
            preperiod: FiniteSeq(pre),
            cycle: FiniteSeq(cycle),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize() == *self
    }
}

/// True iff both sequences have the same infinite expansion.
pub fn seq_equal(s: &EventuallyPeriodicSeq, t: &EventuallyPeriodicSeq) -> bool {
    s.canonicalize() == t.canonicalize()
}

impl fmt::Display for EventuallyPeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        self.preperiod.write_items(f)?;
        if !self.preperiod.is_empty() {
            f.write_str(",")?;
        }
        f.write_str("(")?;
        self.cycle.write_items(f)?;
        f.write_str(")]")
    }
}

impl FromStr for EventuallyPeriodicSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "eventually periodic sequence",
            token: s.to_string(),
        };
        let (pre, cycle) = parse_brackets(s, "eventually periodic sequence")?;
        let cycle = cycle.ok_or_else(err)?;
        if cycle.is_empty() {
            return Err(err());
        }
        EventuallyPeriodicSeq::new(pre, cycle)
    }
}

/// Parses `[a,b,...]` with an optional trailing parenthesized group.
fn parse_brackets(text: &str, what: &'static str) -> Result<(FiniteSeq, Option<FiniteSeq>)> {
    let err = || Error::Parse {
        what,
        token: text.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(err)?;

    let (head, group) = match inner.find('(') {
        Some(open) => {
            let group = inner[open..]
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(err)?;
            let head = &inner[..open];
            let head = if head.is_empty() {
                head
            } else {
                head.strip_suffix(',').ok_or_else(err)?
            };
            (head, Some(group))
        }
        None => (inner, None),
    };

    let items = |s: &str| -> Result<FiniteSeq> {
        if s.is_empty() {
            return Ok(FiniteSeq::new());
        }
        s.split(',')
            .map(|tok| {
                let v: u64 = tok.parse().map_err(|_| err())?;
                PartialQuotient::new(v).map_err(|_| err())
            })
            .collect::<Result<Vec<_>>>()
            .map(FiniteSeq)
    };
    Ok((items(head)?, group.map(items).transpose()?))
}

/// Outcome of running the Collatz algorithm under a step budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    /// A value recurred; the canonical representation.
    Periodic(EventuallyPeriodicSeq),
    /// No recurrence within the budget.
    Truncated {
        prefix: FiniteSeq,
        last_iterate: OddRational,
        steps_used: usize,
    },
    /// The trajectory reached `-1/3`, where the step is undefined.
    Degenerate { prefix: FiniteSeq },
}

impl Representation {
    pub fn periodic(&self) -> Option<&EventuallyPeriodicSeq> {
        match self {
            Representation::Periodic(s) => Some(s),
            _ => None,
        }
    }
}

/// Runs the Collatz algorithm on `a` for at most `max_steps` steps, detecting
/// the first recurrence of an iterate.
pub fn represent(a: &OddRational, max_steps: usize) -> Representation {
    let mut seen: HashMap<OddRational, usize> = HashMap::new();
    let mut quotients = Vec::new();
    let mut current = a.clone();
    for step in 0..max_steps {
        let (q, next) = match collatz_step(&current) {
            Ok(r) => r,
            Err(_) => {
                return Representation::Degenerate {
                    prefix: FiniteSeq(quotients),
                }
            }
        };
        quotients.push(q);
        seen.insert(current, step);
        if let Some(&start) = seen.get(&next) {
            let cycle = quotients.split_off(start);
            let seq = EventuallyPeriodicSeq {
                preperiod: FiniteSeq(quotients),
                cycle: FiniteSeq(cycle),
            };
            return Representation::Periodic(seq.canonicalize());
        }
        current = next;
    }
    Representation::Truncated {
        prefix: FiniteSeq(quotients),
        last_iterate: current,
        steps_used: max_steps,
    }
}
