//! Search for absolutely periodic odd integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::rational::{collatz_step, OddRational};
use crate::seq::{represent, FiniteSeq, Representation};

const CHUNK: i64 = 4096;

/// One integer loop, listed from its member of smallest absolute value
/// (positive first on ties).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopReport {
    pub members: Vec<OddRational>,
    pub quotient_cycle: FiniteSeq,
    /// The quotient cycle is primitive.
    pub canonical: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoopSearch {
    pub loops: Vec<LoopReport>,
    /// Inputs whose representation did not close within the budget.
    pub undecided: Vec<BigInt>,
    pub scanned: usize,
}

/// Orders loop representatives by `|x|`, then positive before negative.
fn key_order(a: &OddRational, b: &OddRational) -> std::cmp::Ordering {
    a.as_ratio()
        .abs()
        .cmp(&b.as_ratio().abs())
        .then_with(|| b.cmp(a))
}

/// The orbit of an absolutely periodic value, rotated to start at its key.
fn orbit(start: &OddRational, period: usize) -> LoopReport {
    let mut members = Vec::with_capacity(period);
    let mut quotients = Vec::with_capacity(period);
    let mut current = start.clone();
    for _ in 0..period {
        let (q, next) = collatz_step(&current).expect("periodic orbit never vanishes");
        members.push(current);
        quotients.push(q);
        current = next;
    }
    let key = (0..period)
        .min_by(|&i, &j| key_order(&members[i], &members[j]))
        .expect("nonempty orbit");
    members.rotate_left(key);
    quotients.rotate_left(key);
    let quotient_cycle = FiniteSeq::from(quotients);
    LoopReport {
        canonical: quotient_cycle.is_primitive(),
        members,
        quotient_cycle,
    }
}

enum Outcome {
    Loop(LoopReport),
    Transient,
    Undecided(BigInt),
}

fn classify(x: i64, max_steps: usize) -> Outcome {
    let a = OddRational::from_integer(x).expect("odd");
    match represent(&a, max_steps) {
        Representation::Periodic(s) if s.is_absolutely_periodic() => {
            Outcome::Loop(orbit(&a, s.cycle().len()))
        }
        Representation::Periodic(_) | Representation::Degenerate { .. } => Outcome::Transient,
        Representation::Truncated { .. } => Outcome::Undecided(BigInt::from(x)),
    }
}

/// Scans the odd integers of `[lo, hi]` for absolutely periodic elements,
/// reporting each loop once.
///
/// Loops come out ordered by their key member; undecided inputs in
/// increasing order.
pub fn find_absolute_loops(lo: i64, hi: i64, max_steps: usize) -> LoopSearch {
    if lo > hi {
        return LoopSearch::default();
    }
    let first = if lo.rem_euclid(2) == 1 { lo } else { lo + 1 };
    let chunks: Vec<(i64, i64)> = (0..)
        .map(|k| first + 2 * CHUNK * k)
        .take_while(|&s| s <= hi)
        .map(|s| (s, hi.min(s + 2 * CHUNK - 1)))
        .collect();

    let partial: Vec<(Vec<LoopReport>, Vec<BigInt>, usize)> = chunks
        .par_iter()
        .map(|&(start, end)| {
            let mut loops = Vec::new();
            let mut undecided = Vec::new();
            let mut scanned = 0;
            for x in (start..=end).step_by(2) {
                scanned += 1;
                match classify(x, max_steps) {
                    Outcome::Loop(report) => loops.push(report),
                    Outcome::Transient => {}
                    Outcome::Undecided(v) => undecided.push(v),
                }
            }
            (loops, undecided, scanned)
        })
        .collect();

    let mut by_key: BTreeMap<KeyOrd, LoopReport> = BTreeMap::new();
    let mut search = LoopSearch::default();
    for (loops, undecided, scanned) in partial {
        for report in loops {
            by_key
                .entry(KeyOrd(report.members[0].clone()))
                .or_insert(report);
        }
        search.undecided.extend(undecided);
        search.scanned += scanned;
    }
    search.loops = by_key.into_values().collect();
    search
}

#[derive(PartialEq, Eq)]
struct KeyOrd(OddRational);

impl PartialOrd for KeyOrd {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KeyOrd {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        key_order(&self.0, &other.0)
    }
}
