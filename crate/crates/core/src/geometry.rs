//! Points `P(A) = (C^{-1}[A,(2)], C^{-1}[A,(1)])` for finite sequences `A`
//! over `{1, 2}`, and the graphs `P_n` built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{OddRational, PartialQuotient};
use crate::seq::FiniteSeq;

/// Default bound on [`fractal_graph`] depth.
pub const DEFAULT_DEPTH_LIMIT: usize = 20;

/// The affine map `b -> C^{-1}[A, tail]` where `b = C^{-1}[tail]`.
///
/// Prepending the preperiod `A` to any tail is `b -> scale * b + shift` with
/// `scale = 2^{sum A} / 3^{|A|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    scale: BigRational,
    shift: BigRational,
}

impl Default for PrefixMap {
    fn default() -> Self {
        PrefixMap {
            scale: BigRational::one(),
            shift: BigRational::zero(),
        }
    }
}

impl PrefixMap {
    pub fn of(seq: &FiniteSeq) -> Self {
        let mut map = PrefixMap::default();
        for &q in seq.items() {
            map.push(q);
        }
        map
    }

    /// Extends the prefix by one quotient at the end.
    pub fn push(&mut self, q: PartialQuotient) {
        // f_{A q}(b) = f_A((2^q b - 1) / 3)
        let third = &self.scale / BigInt::from(3u8);
        self.shift -= &third;
        self.scale = third * (BigInt::one() << q.get());
    }

    pub fn pushed(&self, q: PartialQuotient) -> Self {
        let mut next = self.clone();
        next.push(q);
        next
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn shift(&self) -> &BigRational {
        &self.shift
    }

    pub fn apply(&self, b: &BigRational) -> BigRational {
        &self.scale * b + &self.shift
    }

    /// `C^{-1}[A,(2)]`
    pub fn twos_tail(&self) -> BigRational {
        &self.scale + &self.shift
    }

    /// `C^{-1}[A,(1)]`
    pub fn ones_tail(&self) -> BigRational {
        &self.shift - &self.scale
    }

    pub fn point(&self) -> Point {
        Point {
            x: odd(self.twos_tail()),
            y: odd(self.ones_tail()),
        }
    }
}

fn odd(r: BigRational) -> OddRational {
    OddRational::from_ratio(r).expect("inverse steps stay in Q^odd")
}

/// The point related to a finite sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    /// `C^{-1}[A,(2)]`
    pub x: OddRational,
    /// `C^{-1}[A,(1)]`
    pub y: OddRational,
}

impl Point {
    pub fn new(x: OddRational, y: OddRational) -> Self {
        Point { x, y }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn check_binary(seq: &FiniteSeq) -> Result<()> {
    match seq.items().iter().find(|q| q.get() > 2) {
        Some(q) => Err(Error::NotBinaryDigit(q.get())),
        None => Ok(()),
    }
}

/// `P(A)`; `A` must consist of 1's and 2's.
pub fn point_of(seq: &FiniteSeq) -> Result<Point> {
    check_binary(seq)?;
    Ok(PrefixMap::of(seq).point())
}

/// Intersection of the line through `(1,-1)` and `P(A)` with `y = x`.
///
/// Equals `C^{-1}[(A)]`, even when the points `P(A^k)` run off to infinity.
pub fn periodic_value_via_line(seq: &FiniteSeq) -> Result<OddRational> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let p = point_of(seq)?;
    let (x, y) = (p.x.as_ratio(), p.y.as_ratio());
    // (1,-1) + t (x - 1, y + 1) meets y = x at t = 2 / (y - x + 2)
    let two = BigRational::from_integer(BigInt::from(2));
    let denom = y - x + &two;
    if denom.is_zero() {
        return Err(Error::ParallelLine(p.to_string()));
    }
    let t = two / denom;
    let value = BigRational::one() + t * (x - BigRational::one());
    OddRational::from_ratio(value)
}

/// One vertex of `P_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub seq: FiniteSeq,
    pub point: Point,
}

/// All points `P(A)` for `A` in `{1,2}^{<=depth}` with parent/child segments.
///
/// Nodes are ordered by length, then lexicographically with `1 < 2`; edges
/// are `(parent, child)` index pairs in child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalGraph {
    pub depth: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<(usize, usize)>,
}

pub fn fractal_graph(depth: usize) -> Result<FractalGraph> {
    fractal_graph_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn fractal_graph_with_limit(depth: usize, limit: usize) -> Result<FractalGraph> {
    if depth > limit {
        return Err(Error::DepthLimit { depth, limit });
    }
    let one = PartialQuotient::new(1).expect("1 > 0");
    let two = PartialQuotient::new(2).expect("2 > 0");

    let root = PrefixMap::default();
    let mut nodes = vec![Node {
        seq: FiniteSeq::new(),
        point: root.point(),
    }];
    let mut edges = Vec::new();
    let mut level = vec![(0usize, root)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for (parent, map) in &level {
            for q in [one, two] {
                let child = map.pushed(q);
                let mut seq = nodes[*parent].seq.clone();
                seq.push(q);
                let index = nodes.len();
                nodes.push(Node {
                    seq,
                    point: child.point(),
                });
                edges.push((*parent, index));
                next.push((index, child));
            }
        }
        level = next;
    }
    Ok(FractalGraph {
        depth,
        nodes,
        edges,
    })
}
