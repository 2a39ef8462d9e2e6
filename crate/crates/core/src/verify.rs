//! Invariant suites over all sequences in `{1,2}^{<=depth}`.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{periodic_value_via_line, point_of, Point};
use crate::inversion::{invert, invert_cycle};
use crate::rational::{decimal_string, OddRational};
use crate::seq::{represent, EventuallyPeriodicSeq, FiniteSeq, Representation};

pub const MAX_VERIFY_DEPTH: usize = 14;

/// Largest `n` used for the decay-ratio suite.
const DECAY_TERMS: usize = 8;

/// All sequences over `{1,2}` of length at most `max_len`, by length then
/// lexicographically.
pub fn binary_sequences(max_len: usize) -> Vec<FiniteSeq> {
    let mut out = vec![FiniteSeq::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for d in [1, 2] {
                let mut s = out[i].values();
                s.push(d);
                out.push(FiniteSeq::from_values(&s).expect("positive"));
            }
        }
        start = end;
    }
    out
}

fn tail(seq: &FiniteSeq, extra: &[u64], t: u64) -> BigRational {
    let pre = seq.concat(&FiniteSeq::from_values(extra).expect("positive"));
    let s = EventuallyPeriodicSeq::new(pre, FiniteSeq::from_values(&[t]).expect("positive"))
        .expect("nonempty cycle");
    invert(&s).expect("valid").into_ratio()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The three self-similarity identities for one `A`.
pub fn lemma_items(a: &FiniteSeq) -> [bool; 3] {
    let y = |extra: &[u64]| tail(a, extra, 1);
    let x = |extra: &[u64]| tail(a, extra, 2);
    let (y0, y2, y22) = (y(&[]), y(&[2]), y(&[2, 2]));
    let (x0, x1, x11) = (x(&[]), x(&[1]), x(&[1, 1]));
    [
        &y0 - &y2 == &x0 - &x1,
        &y2 - &y22 == ratio(4, 3) * (&y0 - &y2),
        &x1 - &x11 == ratio(2, 3) * (&x0 - &x1),
    ]
}

/// `x <= 1`, `y <= -1`, `y < x`.
pub fn enclosed(p: &Point) -> bool {
    let (x, y) = (p.x.as_ratio(), p.y.as_ratio());
    *x <= BigRational::one() && *y <= -BigRational::one() && y < x
}

fn cross(o: &Point, p: &Point, q: &Point) -> BigRational {
    let (ox, oy) = (o.x.as_ratio(), o.y.as_ratio());
    (p.x.as_ratio() - ox) * (q.y.as_ratio() - oy) - (p.y.as_ratio() - oy) * (q.x.as_ratio() - ox)
}

/// `(1,-1)`, `P(A)`, `P(A^2)`, `P(A^3)` are collinear and the line meets
/// `y = x` at `C^{-1}[(A)]`.
pub fn collinear(a: &FiniteSeq) -> Result<bool> {
    let origin = point_of(&FiniteSeq::new())?;
    let pts = (1..=3)
        .map(|k| point_of(&a.repeat(k)))
        .collect::<Result<Vec<_>>>()?;
    let aligned =
        cross(&origin, &pts[0], &pts[1]).is_zero() && cross(&origin, &pts[0], &pts[2]).is_zero();
    Ok(aligned && periodic_value_via_line(a)? == invert_cycle(a)?)
}

/// `d_n = C^{-1}[A,1^n,(2)] - C^{-1}[A,(1)]` for `n = 0..=terms`.
pub fn decay_differences(a: &FiniteSeq, terms: usize) -> Vec<BigRational> {
    let base = tail(a, &[], 1);
    (0..=terms)
        .map(|n| tail(a, &vec![1; n], 2) - &base)
        .collect()
}

/// The constant `2 / 3^m` stated for `d_0`.
pub fn stated_decay_constant(a: &FiniteSeq) -> BigRational {
    BigRational::new(BigInt::from(2), BigInt::from(3).pow(a.len() as u32))
}

/// `2^{1 + sum A} / 3^m`, the constant the exact computation yields.
pub fn measured_decay_formula(a: &FiniteSeq) -> BigRational {
    BigRational::new(
        BigInt::one() << (1 + a.sum()),
        BigInt::from(3).pow(a.len() as u32),
    )
}

fn roundtrips(a: &FiniteSeq, p: &Point) -> bool {
    let check = |v: &OddRational, t: u64| {
        let s = EventuallyPeriodicSeq::new(a.clone(), FiniteSeq::from_values(&[t]).unwrap())
            .unwrap()
            .canonicalize();
        represent(v, 10_000) == Representation::Periodic(s)
    };
    check(&p.x, 2) && check(&p.y, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayEntry {
    pub seq: FiniteSeq,
    pub measured: BigRational,
    pub stated: BigRational,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub depth: usize,
    pub sequences: usize,
    pub suites: Vec<SuiteResult>,
    pub decay: Vec<DecayEntry>,
    /// Sequences where the measured `d_0` differs from `2 / 3^m`.
    pub stated_mismatches: usize,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

/// Runs every suite over `{1,2}^{<=depth}`.
pub fn verify(depth: usize) -> Result<VerifyReport> {
    if depth > MAX_VERIFY_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            limit: MAX_VERIFY_DEPTH,
        });
    }
    let started = Instant::now();
    let seqs = binary_sequences(depth);

    let mut lemma = [
        SuiteResult::new("lemma item 1"),
        SuiteResult::new("lemma item 2"),
        SuiteResult::new("lemma item 3"),
    ];
    let mut enclosure = SuiteResult::new("enclosure");
    let mut distinct = SuiteResult::new("distinct points");
    let mut collinearity = SuiteResult::new("collinearity");
    let mut roundtrip = SuiteResult::new("roundtrip");
    let mut decay = SuiteResult::new("decay ratio 2/3");
    let mut decay_entries = Vec::new();
    let mut stated_mismatches = 0;
    let mut seen = HashSet::new();

    let two_thirds = ratio(2, 3);
    for a in &seqs {
        for (suite, ok) in lemma.iter_mut().zip(lemma_items(a)) {
            suite.record(ok);
        }
        let p = point_of(a)?;
        enclosure.record(enclosed(&p));
        distinct.record(seen.insert(p.clone()));
        roundtrip.record(roundtrips(a, &p));
        if !a.is_empty() {
            collinearity.record(collinear(a)?);
        }

        let d = decay_differences(a, DECAY_TERMS);
        let ratios_ok =
            d.iter().all(|v| v.is_positive()) && d.windows(2).all(|w| &w[1] / &w[0] == two_thirds);
        let formula_ok = d[0] == measured_decay_formula(a);
        decay.record(ratios_ok && formula_ok);
        let stated = stated_decay_constant(a);
        if d[0] != stated {
            stated_mismatches += 1;
        }
        decay_entries.push(DecayEntry {
            seq: a.clone(),
            measured: d[0].clone(),
            stated,
        });
    }

    let mut suites: Vec<SuiteResult> = lemma.into();
    suites.extend([enclosure, distinct, collinearity, roundtrip, decay]);
    Ok(VerifyReport {
        depth,
        sequences: seqs.len(),
        suites,
        decay: decay_entries,
        stated_mismatches,
        elapsed: started.elapsed(),
    })
}

/// Rows of the decay table shown in the text report.
const DECAY_ROWS: usize = 7;

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify depth {}: {} sequences checked",
            self.depth, self.sequences
        )?;
        for s in &self.suites {
            let status = if s.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {status} {:<16} passed {:>6} failed {:>6}",
                s.name, s.passed, s.failed
            )?;
        }
        writeln!(f, "decay constant d_0 (measured vs stated 2/3^m):")?;
        for e in self.decay.iter().take(DECAY_ROWS) {
            writeln!(
                f,
                "  {:<8} measured {:<22} stated {:<6} {}",
                e.seq.to_string(),
                format!("{} ({})", e.measured, decimal_string(&e.measured, 6)),
                e.stated.to_string(),
                if e.measured == e.stated {
                    "agree"
                } else {
                    "differ"
                }
            )?;
        }
        writeln!(
            f,
            "  stated constant differs on {} of {} sequences; measured d_0 = 2^(1+sum A)/3^m on all",
            self.stated_mismatches, self.sequences
        )?;
        writeln!(f, "runtime {:.3} s", self.elapsed.as_secs_f64())?;
        write!(
            f,
            "{}",
            if self.all_passed() {
                "all suites passed"
            } else {
                "some suites FAILED"
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(binary_sequences(0).len(), 1);
        assert_eq!(binary_sequences(3).len(), 15);
        assert_eq!(binary_sequences(2)[3].values(), vec![1, 1]);
    }

    #[test]
    fn depth_one_and_three() {
        let r = verify(1).unwrap();
        assert_eq!(r.sequences, 3);
        assert!(r.all_passed());

        let r = verify(3).unwrap();
        assert_eq!(r.sequences, 15);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.stated_mismatches, 14);
        let two = FiniteSeq::from_values(&[2]).unwrap();
        let entry = r.decay.iter().find(|e| e.seq == two).unwrap();
        assert_eq!(entry.measured, ratio(8, 3));
        assert_eq!(entry.stated, ratio(2, 3));
    }

    #[test]
    fn depth_limit() {
        assert!(matches!(verify(15), Err(Error::DepthLimit { .. })));
    }
}
