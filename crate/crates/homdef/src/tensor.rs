//! Alternating multilinear tensors.
//!
//! An arity-`k` alternating map out of a `dim`-dimensional space is stored on
//! the strictly increasing basis `k`-tuples only (lexicographic order).
//! Evaluation at an arbitrary basis tuple sorts the indices and applies the
//! sign of the sorting permutation; repeated indices give zero. Evaluation at
//! arbitrary vectors expands multilinearly over basis tuples.

use crate::linalg::MatrixQ;
use crate::rat::Rat;
use num::Zero;

/// Binomial coefficient, exact in `usize` at the small sizes used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing `arity`-tuples from `0..dim`, lexicographic.
/// Arity 0 yields the single empty tuple.
pub fn increasing_tuples(dim: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, arity));
    let mut cur = Vec::with_capacity(arity);
    fn rec(dim: usize, arity: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur.push(v);
            rec(dim, arity, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(dim, arity, 0, &mut cur, &mut out);
    out
}

/// Lexicographic rank of a strictly increasing tuple among all such tuples.
pub fn tuple_rank(dim: usize, tuple: &[usize]) -> usize {
    let a = tuple.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (p, &t) in tuple.iter().enumerate() {
        for v in (prev + 1) as usize..t {
            rank += binomial(dim - 1 - v, a - 1 - p);
        }
        prev = t as isize;
    }
    rank
}

/// Sorts basis indices, returning the sorted tuple and the permutation sign;
/// `None` when an index repeats (the alternating value is zero).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// All `(a,b)`-shuffles of `{0, …, a+b−1}`: permutations increasing on the
/// first `a` images and on the last `b` images, each with its sign. The pair
/// `(images, sign)` lists the full image sequence `τ(0), …, τ(a+b−1)`.
/// Enumeration order follows the lexicographic order of the first block.
pub fn shuffles(a: usize, b: usize) -> Vec<(Vec<usize>, i32)> {
    let n = a + b;
    increasing_tuples(n, a)
        .into_iter()
        .map(|first| {
            let in_first = {
                let mut mask = vec![false; n];
                for &v in &first {
                    mask[v] = true;
                }
                mask
            };
            let second: Vec<usize> = (0..n).filter(|&v| !in_first[v]).collect();
            let mut inversions = 0;
            for &x in &first {
                for &y in &second {
                    if x > y {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let mut images = first;
            images.extend(second);
            (images, sign)
        })
        .collect()
}

/// Values an alternating tensor can take: module coordinate vectors or
/// operators on the algebra. Provides the vector-space structure the
/// evaluation and bracket code needs, plus flattening into coordinates.
pub trait AltValue: Clone + PartialEq {
    fn zeroed(&self) -> Self;
    fn add_in(&mut self, other: &Self);
    fn scale_in(&mut self, c: &Rat);
    fn is_zero(&self) -> bool;
    fn flat(&self) -> Vec<Rat>;
}

impl AltValue for Vec<Rat> {
    fn zeroed(&self) -> Self {
        vec![Rat::zero(); self.len()]
    }
    fn add_in(&mut self, other: &Self) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
    }
    fn scale_in(&mut self, c: &Rat) {
        for a in self.iter_mut() {
            *a *= c;
        }
    }
    fn is_zero(&self) -> bool {
        self.iter().all(|x| x.is_zero())
    }
    fn flat(&self) -> Vec<Rat> {
        self.clone()
    }
}

impl AltValue for MatrixQ {
    fn zeroed(&self) -> Self {
        MatrixQ::zero(self.rows(), self.cols())
    }
    fn add_in(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn scale_in(&mut self, c: &Rat) {
        *self = self.scale(c);
    }
    fn is_zero(&self) -> bool {
        MatrixQ::is_zero(self)
    }
    fn flat(&self) -> Vec<Rat> {
        self.flatten()
    }
}

/// Alternating `arity`-linear map `V^arity → W` with `dim = dim V`, stored on
/// strictly increasing tuples. `proto` is a zero value of the target shape so
/// evaluation has a well-typed zero even when there are no stored tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct AltTensor<T: AltValue> {
    pub dim: usize,
    pub arity: usize,
    pub values: Vec<T>,
    proto: T,
}

impl<T: AltValue> AltTensor<T> {
    pub fn zero(dim: usize, arity: usize, proto: T) -> Self {
        let count = binomial(dim, arity);
        AltTensor { dim, arity, values: vec![proto.zeroed(); count], proto: proto.zeroed() }
    }

    pub fn from_values(dim: usize, arity: usize, values: Vec<T>, proto: T) -> Self {
        assert_eq!(values.len(), binomial(dim, arity), "wrong number of tuple values");
        AltTensor { dim, arity, values, proto: proto.zeroed() }
    }

    pub fn proto(&self) -> &T {
        &self.proto
    }

    pub fn set(&mut self, tuple: &[usize], value: T) {
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must be increasing");
        let r = tuple_rank(self.dim, tuple);
        self.values[r] = value;
    }

    pub fn get(&self, tuple: &[usize]) -> &T {
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        &self.values[tuple_rank(self.dim, tuple)]
    }

    /// Value at an arbitrary basis tuple (sign applied; zero on repeats).
    pub fn eval_basis(&self, indices: &[usize]) -> T {
        assert_eq!(indices.len(), self.arity);
        match sort_with_sign(indices) {
            None => self.proto.zeroed(),
            Some((sorted, sign)) => {
                if sorted.last().is_some_and(|&l| l >= self.dim) {
                    panic!("basis index out of range");
                }
                let mut v = self.values[tuple_rank(self.dim, &sorted)].clone();
                if sign < 0 {
                    v.scale_in(&crate::rat::rat(-1));
                }
                v
            }
        }
    }

    /// Full multilinear evaluation at arbitrary coordinate vectors.
    pub fn eval(&self, args: &[&[Rat]]) -> T {
        assert_eq!(args.len(), self.arity);
        for a in args {
            assert_eq!(a.len(), self.dim, "argument has wrong dimension");
        }
        let mut acc = self.proto.zeroed();
        let mut idx = vec![0usize; self.arity];
        loop {
            let mut coeff = Rat::from_integer(1.into());
            let mut zero = false;
            for (slot, &i) in idx.iter().enumerate() {
                if args[slot][i].is_zero() {
                    zero = true;
                    break;
                }
                coeff *= &args[slot][i];
            }
            if !zero {
                let mut term = self.eval_basis(&idx);
                if !term.is_zero() {
                    term.scale_in(&coeff);
                    acc.add_in(&term);
                }
            }
            // advance the multi-index
            let mut slot = self.arity;
            loop {
                if slot == 0 {
                    return acc;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < self.dim {
                    break;
                }
                idx[slot] = 0;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity));
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            a.add_in(b);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            v.scale_in(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Concatenated coordinates of all tuple values, in tuple order.
    pub fn flatten(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for v in &self.values {
            out.extend(v.flat());
        }
        if self.values.is_empty() {
            // keep the coordinate layout length-stable even when no tuples exist
        }
        out
    }
}
