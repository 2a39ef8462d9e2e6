//! Closed-form inverse of the Collatz representation on eventually periodic
//! sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{collatz_step, inverse_step, OddRational};
use crate::seq::{EventuallyPeriodicSeq, FiniteSeq};

/// The unique `a` whose representation is the pure cycle `[(b1,...,bn)]`:
///
/// ```text
///     3^(n-1) + sum_{i=1}^{n-1} 3^(n-1-i) 2^(b1+...+bi)
/// a = -------------------------------------------------
///               2^(b1+...+bn) - 3^n
/// ```
pub fn invert_cycle(cycle: &FiniteSeq) -> Result<OddRational> {
    if cycle.is_empty() {
        return Err(Error::EmptyCycle);
    }
    // Horner over the prefix sums S_0 = 0, S_i = b1 + ... + bi.
    let mut numer = BigInt::from(0);
    let mut pow2 = BigInt::one();
    let mut pow3 = BigInt::one();
    for q in cycle.items() {
        numer = numer * 3u8 + &pow2;
        pow2 <<= q.get();
        pow3 *= 3u8;
    }
    // 2^k - 3^n is odd and never zero
    let value = BigRational::new(numer, pow2 - pow3);
    Ok(OddRational::from_ratio(value).expect("closed form lies in Q^odd"))
}

/// `C^{-1}` of an eventually periodic sequence; presentation independent.
pub fn invert(s: &EventuallyPeriodicSeq) -> Result<OddRational> {
    let tail = invert_cycle(s.cycle())?;
    Ok(s.preperiod()
        .items()
        .iter()
        .rev()
        .fold(tail, |b, &q| inverse_step(&b, q)))
}

/// Runs `n` forward steps from `value` and checks they emit `cycle` and
/// return to `value`.
pub fn cycle_closes(value: &OddRational, cycle: &FiniteSeq) -> bool {
    let mut current = value.clone();
    for &expected in cycle.items() {
        match collatz_step(&current) {
            Ok((q, next)) if q == expected => current = next,
            _ => return false,
        }
    }
    current == *value
}

/// [`invert`] followed by a forward self-check of the cycle and preperiod.
pub fn invert_checked(s: &EventuallyPeriodicSeq) -> Result<OddRational> {
    let tail = invert_cycle(s.cycle())?;
    if !cycle_closes(&tail, s.cycle()) {
        return Err(Error::OutOfDomain(format!(
            "forward check failed for cycle {}",
            s.cycle()
        )));
    }
    let a = invert(s)?;
    let mut current = a.clone();
    for &expected in s.preperiod().items() {
        let (q, next) = collatz_step(&current)?;
        if q != expected {
            return Err(Error::OutOfDomain(format!(
                "forward check failed for preperiod of {s}"
            )));
        }
        current = next;
    }
    debug_assert_eq!(current, tail);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{represent, Representation};
    use proptest::prelude::*;

    fn fs(v: &[u64]) -> FiniteSeq {
        FiniteSeq::from_values(v).unwrap()
    }

    fn odd(s: &str) -> OddRational {
        s.parse().unwrap()
    }

    /// Solves `a = f(a)` for the affine cycle map by composing steps on
    /// `(slope, intercept)` pairs, independent of the closed form.
    fn fixed_point_oracle(cycle: &[u64]) -> BigRational {
        let three = BigRational::from_integer(3.into());
        let mut slope = BigRational::one();
        let mut intercept = BigRational::from_integer(0.into());
        for &b in cycle {
            let d = BigRational::from_integer(BigInt::one() << b);
            slope = &slope * &three / &d;
            intercept = (&intercept * &three + BigRational::one()) / &d;
        }
        intercept / (BigRational::one() - slope)
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(invert_cycle(&fs(&[2])).unwrap(), odd("1"));
        assert_eq!(invert_cycle(&fs(&[1, 2])).unwrap(), odd("-5"));
        assert_eq!(invert_cycle(&fs(&[2, 1])).unwrap(), odd("-7"));
        assert_eq!(invert_cycle(&fs(&[3])).unwrap(), odd("1/5"));
        assert_eq!(invert_cycle(&fs(&[1, 2, 2])).unwrap(), odd("23/5"));
        assert!(cycle_closes(&odd("23/5"), &fs(&[1, 2, 2])));
        assert_eq!(invert_cycle(&FiniteSeq::new()), Err(Error::EmptyCycle));
    }

    #[test]
    fn invert_examples() {
        let inv = |s: &str| invert_checked(&s.parse().unwrap()).unwrap();
        assert_eq!(inv("[1,1,4,(2)]"), odd("5/3"));
        assert_eq!(inv("[4,1,(3)]"), odd("-7/5"));
        assert_eq!(inv("[2,(1)]"), odd("-5/3"));
        assert_eq!(inv("[1,(1)]"), odd("-1"));
        assert_eq!(inv("[(1,1)]"), odd("-1"));
    }

    #[test]
    fn betweenness_example() {
        let v = |c: &[u64]| invert_cycle(&fs(c)).unwrap();
        let (lo, hi) = (v(&[2, 1]), v(&[1, 2]));
        let ab = v(&[1, 2, 2, 1]);
        let ba = v(&[2, 1, 1, 2]);
        assert_eq!(ab, odd("-101/17"));
        assert_eq!(ba, odd("-103/17"));
        for x in [ab, ba] {
            assert!(lo < x && x < hi);
        }
    }

    #[test]
    fn betweenness_fails_for_mixed_cycles() {
        // (2) contracts, (1) expands: C^{-1}[(2,1)] = -7 is outside (-1, 1)
        let v = |c: &[u64]| invert_cycle(&fs(c)).unwrap();
        assert_eq!((v(&[2]), v(&[1])), (odd("1"), odd("-1")));
        assert_eq!(v(&[2, 1]), odd("-7"));
        assert_eq!(v(&[1, 2]), odd("-5"));
    }

    proptest! {
        #[test]
        fn closed_form_matches_fixed_point(cycle in prop::collection::vec(1u64..8, 1..8)) {
            let a = invert_cycle(&fs(&cycle)).unwrap();
            prop_assert_eq!(a.as_ratio(), &fixed_point_oracle(&cycle));
            prop_assert!(cycle_closes(&a, &fs(&cycle)));
        }

        #[test]
        fn concatenated_cycles_lie_between(a in prop::collection::vec(1u64..4, 1..4), b in prop::collection::vec(1u64..4, 1..4)) {
            // only holds when both cycle maps contract or both expand
            let expanding = |c: &[u64]| (BigInt::one() << c.iter().sum::<u64>()) < BigInt::from(3u8).pow(c.len() as u32);
            prop_assume!(expanding(&a) == expanding(&b));
            let (va, vb) = (invert_cycle(&fs(&a)).unwrap(), invert_cycle(&fs(&b)).unwrap());
            prop_assume!(va != vb);
            let (lo, hi) = if va < vb { (va, vb) } else { (vb, va) };
            for cycle in [[a.clone(), b.clone()].concat(), [b.clone(), a.clone()].concat()] {
                let v = invert_cycle(&fs(&cycle)).unwrap();
                prop_assert!(lo < v && v < hi, "{:?} -> {}", cycle, v);
            }
        }

        #[test]
        fn roundtrip_through_represent(pre in prop::collection::vec(1u64..7, 0..8), cycle in prop::collection::vec(1u64..7, 1..6)) {
            let s = EventuallyPeriodicSeq::new(fs(&pre), fs(&cycle)).unwrap();
            let a = invert(&s).unwrap();
            prop_assert_eq!(invert(&s.canonicalize()).unwrap(), a.clone());
            prop_assert_eq!(represent(&a, 10_000), Representation::Periodic(s.canonicalize()));
        }
    }
}
