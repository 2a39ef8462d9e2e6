//! Greedy approximation of a rational `z <= -1` from above by values
//! `C^{-1}[A,(1)]` with `A` over `{1, 2}`.
//!
//! A round appends 2's while the value stays `>= z`, then appends `j` 1's and
//! a single 2, where `j` is the first index with `x (2/3)^j < w`. Here `w` is
//! the current error and `x` the gap between the value and its 2-extension.
//! Each completed round cuts the error by more than a factor of 3.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::PrefixMap;
use crate::rational::{OddRational, PartialQuotient};
use crate::seq::FiniteSeq;

/// Bookkeeping for one round of the approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    /// 2's appended by the descending scan.
    pub twos_appended: usize,
    /// 1's appended before the closing 2; zero on the stopping round.
    pub ones_appended: usize,
    /// Error `w` after the 2-scan.
    pub error_before: BigRational,
    /// Error at the end of the round.
    pub error_after: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub sequence: FiniteSeq,
    /// `C^{-1}[sequence,(1)]`
    pub value: OddRational,
    /// `value - z`, never negative.
    pub error: BigRational,
    /// Error after the first 2-scan.
    pub initial_error: BigRational,
    pub trace: Vec<RoundRecord>,
}

impl ApproxResult {
    pub fn rounds(&self) -> usize {
        self.trace.len()
    }
}

fn quotient(v: u64) -> PartialQuotient {
    PartialQuotient::new(v).expect("positive")
}

/// Incremental state of the greedy procedure.
#[derive(Debug, Clone)]
struct Approximator {
    target: BigRational,
    seq: FiniteSeq,
    map: PrefixMap,
}

impl Approximator {
    fn new(z: &BigRational) -> Result<Self> {
        if *z > -BigRational::one() {
            return Err(Error::OutOfDomain(format!("z = {z} must be <= -1")));
        }
        Ok(Approximator {
            target: z.clone(),
            seq: FiniteSeq::new(),
            map: PrefixMap::default(),
        })
    }

    fn value(&self) -> BigRational {
        self.map.ones_tail()
    }

    fn error(&self) -> BigRational {
        self.value() - &self.target
    }

    fn push(&mut self, q: PartialQuotient) {
        self.map.push(q);
        self.seq.push(q);
    }

    /// Appends 2's while `C^{-1}[A,2,(1)] >= z`.
    fn scan_twos(&mut self) -> usize {
        let two = quotient(2);
        let mut count = 0;
        loop {
            let next = self.map.pushed(two);
            if next.ones_tail() < self.target {
                return count;
            }
            self.map = next;
            self.seq.push(two);
            count += 1;
        }
    }

    /// Given error `w > 0` after a 2-scan, appends `1^j 2` and returns `j`.
    fn scan_ones(&mut self, w: &BigRational) -> usize {
        // x = C^{-1}[B,(2)] - C^{-1}[B,1,(2)] = (2/3) scale_B, then ratio 2/3
        let ratio = BigRational::new(BigInt::from(2), BigInt::from(3));
        let mut gap = self.map.scale() * &ratio;
        let mut j = 0;
        while gap >= *w {
            gap *= &ratio;
            j += 1;
        }
        let before = self.value();
        for _ in 0..j {
            self.push(quotient(1));
        }
        self.push(quotient(2));
        debug_assert_eq!(self.value(), before - gap);
        j
    }

    fn value_odd(&self) -> OddRational {
        OddRational::from_ratio(self.value()).expect("inverse steps stay in Q^odd")
    }
}

/// Finds `A` over `{1,2}` with `0 <= C^{-1}[A,(1)] - z < eps`.
pub fn approximate(z: &BigRational, eps: &BigRational) -> Result<ApproxResult> {
    if !eps.is_positive() {
        return Err(Error::OutOfDomain(format!("eps = {eps} must be positive")));
    }
    let mut state = Approximator::new(z)?;
    let mut trace = Vec::new();
    let mut initial_error = None;
    loop {
        let twos = state.scan_twos();
        let w = state.error();
        initial_error.get_or_insert_with(|| w.clone());
        if w.is_zero() || w < *eps {
            trace.push(RoundRecord {
                twos_appended: twos,
                ones_appended: 0,
                error_before: w.clone(),
                error_after: w,
            });
            break;
        }
        let ones = state.scan_ones(&w);
        trace.push(RoundRecord {
            twos_appended: twos,
            ones_appended: ones,
            error_before: w,
            error_after: state.error(),
        });
    }
    Ok(ApproxResult {
        value: state.value_odd(),
        error: state.error(),
        sequence: state.seq,
        initial_error: initial_error.expect("at least one round"),
        trace,
    })
}

/// The first `count` items of the infinite {1,2}-sequence produced by running
/// the rounds forever. After an exact hit the stream continues with 1's.
pub fn digits_of(z: &BigRational, count: usize) -> Result<FiniteSeq> {
    let mut state = Approximator::new(z)?;
    while state.seq.len() < count {
        state.scan_twos();
        let w = state.error();
        if w.is_zero() {
            while state.seq.len() < count {
                state.push(quotient(1));
            }
            break;
        }
        state.scan_ones(&w);
    }
    Ok(FiniteSeq::from(state.seq.items()[..count].to_vec()))
}
