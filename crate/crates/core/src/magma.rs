//! Cayley tables, loops, and permutations of a loop's carrier.
//!
//! Elements are the indices `0..n`. Tables are stored dense and row-major
//! with one byte per entry, so the order is capped at [`MAX_ORDER`].
//!
//! Maps act on the right, as is customary for loops: `x.then(P).then(Q)`
//! applies `P` first. [`Permutation::then`] is that composition.

use std::fmt;

use crate::elements::ElementSet;
use crate::error::{Error, Line, Result};

pub const MAX_ORDER: usize = 255;

/// A raw `n × n` multiplication table; `get(x, y)` is `x·y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<u8>,
}

impl CayleyTable {
    /// Builds a table from `order²` row-major entries, checking only ranges.
    pub fn new(order: usize, entries: &[usize]) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                limit: MAX_ORDER,
            });
        }
        if entries.len() != order * order {
            return Err(Error::LengthMismatch {
                expected: order * order,
                actual: entries.len(),
            });
        }
        let mut bytes = Vec::with_capacity(entries.len());
        for (i, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(Error::OutOfRangeEntry {
                    row: i / order,
                    col: i % order,
                    value,
                    order,
                });
            }
            bytes.push(value as u8);
        }
        Ok(CayleyTable {
            order,
            entries: bytes,
        })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let flat: Vec<usize> = (0..order * order)
            .map(|i| f(i / order.max(1), i % order.max(1)))
            .collect();
        Self::new(order, &flat)
    }

    pub(crate) fn from_bytes_unchecked(order: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), order * order);
        CayleyTable { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u8] {
        &self.entries[x * self.order..(x + 1) * self.order]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_flat(&self) -> Vec<usize> {
        self.entries.iter().map(|&v| v as usize).collect()
    }

    /// First row or column containing a repeated symbol, if any.
    pub fn latin_violation(&self) -> Option<Line> {
        let n = self.order;
        for r in 0..n {
            let mut seen = ElementSet::new();
            if !self.row(r).iter().all(|&v| seen.insert(v as usize)) {
                return Some(Line::Row(r));
            }
        }
        for c in 0..n {
            let mut seen = ElementSet::new();
            if !(0..n).all(|r| seen.insert(self.get(r, c))) {
                return Some(Line::Column(c));
            }
        }
        None
    }
}

/// A quasigroup with a two-sided identity.
///
/// Construction caches both one-sided inverse maps and both division tables,
/// since every identity checker consumes them in its inner loop.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Loop {
    table: CayleyTable,
    identity: usize,
    left_inv: Vec<u8>,
    right_inv: Vec<u8>,
    // left_div[a * n + b] = a\b, the x with a·x = b
    left_div: Vec<u8>,
    // right_div[b * n + a] = b/a, the y with y·a = b
    right_div: Vec<u8>,
}

impl Loop {
    /// Validates the Latin property and locates the identity.
    pub fn new(table: CayleyTable) -> Result<Self> {
        if let Some(line) = table.latin_violation() {
            return Err(Error::NotAQuasigroup(line));
        }
        let n = table.order();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table.get(e, x) == x && table.get(x, e) == x))
            .ok_or(Error::NoIdentity)?;

        let mut left_div = vec![0u8; n * n];
        let mut right_div = vec![0u8; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table.get(a, x);
                left_div[a * n + b] = x as u8;
                let c = table.get(x, a);
                right_div[c * n + a] = x as u8;
            }
        }
        let right_inv = (0..n).map(|x| left_div[x * n + identity]).collect();
        let left_inv = (0..n).map(|x| right_div[identity * n + x]).collect();

        Ok(Loop {
            table,
            identity,
            left_inv,
            right_inv,
            left_div,
            right_div,
        })
    }

    pub fn from_rows(rows: &[&[usize]]) -> Result<Self> {
        let flat: Vec<usize> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(CayleyTable::new(rows.len(), &flat)?)
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::new(CayleyTable::from_fn(n, |x, y| (x + y) % n).expect("n in range"))
            .expect("Z_n is a loop")
    }

    /// Direct product of two loops, `(a, b)` labelled `a * |rhs| + b`.
    pub fn product(lhs: &Loop, rhs: &Loop) -> Result<Self> {
        let m = rhs.order();
        let table = CayleyTable::from_fn(lhs.order() * m, |x, y| {
            lhs.mul(x / m, y / m) * m + rhs.mul(x % m, y % m)
        })?;
        Self::new(table)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// `x^λ`, the element with `x^λ·x = e`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.left_inv[x] as usize
    }

    /// `x^ρ`, the element with `x·x^ρ = e`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.right_inv[x] as usize
    }

    /// `a\b`: the unique `x` with `a·x = b`.
    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.left_div[a * self.order() + b] as usize
    }

    /// `b/a`: the unique `y` with `y·a = b`.
    #[inline]
    pub fn right_div(&self, b: usize, a: usize) -> usize {
        self.right_div[b * self.order() + a] as usize
    }

    /// `L_x : y ↦ x·y`.
    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_bytes_unchecked(self.table.row(x).to_vec())
    }

    /// `R_x : y ↦ y·x`.
    pub fn right_translation(&self, x: usize) -> Permutation {
        let n = self.order();
        Permutation::from_bytes_unchecked((0..n).map(|y| self.mul(y, x) as u8).collect())
    }

    /// `J_ρ : x ↦ x^ρ`.
    pub fn right_inverse_map(&self) -> Permutation {
        Permutation::from_bytes_unchecked(self.right_inv.clone())
    }

    /// `J_λ : x ↦ x^λ`.
    pub fn left_inverse_map(&self) -> Permutation {
        Permutation::from_bytes_unchecked(self.left_inv.clone())
    }

    /// `s^k` with `s^0 = e`, `s^k = s^(k-1)·s`, and `s^(-k) = (s^ρ)^k`.
    pub fn power(&self, s: usize, k: i64) -> usize {
        let base = if k < 0 { self.right_inverse(s) } else { s };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `x` right-multiplied by `s` exactly `k` times, or by `s^ρ` exactly
    /// `|k|` times when `k < 0`; i.e. `x R_s^k`.
    pub fn power_shift(&self, x: usize, s: usize, k: i64) -> usize {
        let base = if k < 0 { self.right_inverse(s) } else { s };
        (0..k.unsigned_abs()).fold(x, |acc, _| self.mul(acc, base))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Relabels elements by `pi`: the result satisfies
    /// `pi(x)·pi(y) = pi(x·y)`.
    pub fn relabel(&self, pi: &Permutation) -> Result<Loop> {
        let n = self.order();
        if pi.order() != n {
            return Err(Error::OrderMismatch {
                expected: n,
                actual: pi.order(),
            });
        }
        let inv = pi.inverse();
        let table = CayleyTable::from_fn(n, |x, y| {
            pi.apply(self.mul(inv.apply(x), inv.apply(y)))
        })?;
        Loop::new(table)
    }
}

/// A bijection of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).map(|x| x as u8).collect(),
        }
    }

    pub fn from_image(image: &[usize]) -> Result<Self> {
        let n = image.len();
        if n > MAX_ORDER + 1 {
            return Err(Error::OrderTooLarge {
                order: n,
                limit: MAX_ORDER,
            });
        }
        let mut seen = ElementSet::new();
        for &x in image {
            if x >= n || !seen.insert(x) {
                return Err(Error::NotABijection { order: n });
            }
        }
        Ok(Permutation {
            image: image.iter().map(|&x| x as u8).collect(),
        })
    }

    pub(crate) fn from_bytes_unchecked(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    pub fn order(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    /// `self` followed by `next`: `x ↦ next(self(x))`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        debug_assert_eq!(self.order(), next.order());
        Permutation {
            image: self.image.iter().map(|&x| next.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y as usize] = x as u8;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// Whether the image of `set` is contained in (hence equal to) `set`.
    pub fn preserves(&self, set: &ElementSet) -> bool {
        set.iter().all(|x| set.contains(self.apply(x)))
    }

    /// First element of `set` mapped outside it.
    pub fn first_escape(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&x| !set.contains(self.apply(x)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Advances `items` to the next permutation in lexicographic order.
/// Returns `false` (leaving `items` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Every permutation of `0..n` that maps `set` onto itself, i.e. the
/// product of the symmetric groups on `set` and on its complement.
pub fn set_preserving_permutations(n: usize, set: &ElementSet) -> Vec<Permutation> {
    let inside: Vec<usize> = set.iter().filter(|&x| x < n).collect();
    let outside: Vec<usize> = (0..n).filter(|&x| !set.contains(x)).collect();
    let mut out = Vec::new();
    let mut p = inside.clone();
    loop {
        let mut q = outside.clone();
        loop {
            let mut image = vec![0u8; n];
            for (src, dst) in inside.iter().zip(&p) {
                image[*src] = *dst as u8;
            }
            for (src, dst) in outside.iter().zip(&q) {
                image[*src] = *dst as u8;
            }
            out.push(Permutation { image });
            if !next_permutation(&mut q) {
                break;
            }
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Loop {
        Loop::cyclic(4)
    }

    #[test]
    fn build_table_examples() {
        let t = CayleyTable::new(1, &[0]).unwrap();
        assert_eq!(t.get(0, 0), 0);
        let z2 = CayleyTable::new(2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(z2.get(1, 1), 0);
        assert_eq!(
            CayleyTable::new(2, &[0, 2, 1, 0]),
            Err(Error::OutOfRangeEntry {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            })
        );
        assert_eq!(
            CayleyTable::new(2, &[0, 1, 1]),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 3
            })
        );
        assert_eq!(CayleyTable::new(0, &[]), Err(Error::ZeroOrder));
    }

    #[test]
    fn as_loop_examples() {
        let l = z4();
        assert_eq!(l.identity(), 0);
        assert_eq!(
            (0..4).map(|x| l.right_inverse(x)).collect::<Vec<_>>(),
            vec![0, 3, 2, 1]
        );
        let left_zero = CayleyTable::new(2, &[0, 0, 1, 1]).unwrap();
        assert!(matches!(
            Loop::new(left_zero),
            Err(Error::NotAQuasigroup(_))
        ));
        // Latin but without identity: x·y = x - y mod 3 has right identity only.
        let sub = CayleyTable::from_fn(3, |x, y| (x + 3 - y) % 3).unwrap();
        assert_eq!(Loop::new(sub), Err(Error::NoIdentity));
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z_3 relabelled so that the identity is 2.
        let t = CayleyTable::from_fn(3, |x, y| (x + y + 1) % 3).unwrap();
        let l = Loop::new(t).unwrap();
        assert_eq!(l.identity(), 2);
        for x in 0..3 {
            assert_eq!(l.mul(x, l.right_inverse(x)), 2);
            assert_eq!(l.mul(l.left_inverse(x), x), 2);
        }
    }

    #[test]
    fn mul_and_translations() {
        let l = z4();
        assert_eq!(l.mul(1, 3), 0);
        assert_eq!(l.right_translation(1).image(), &[1, 2, 3, 0]);
        assert!(l.left_translation(0).is_identity());
        assert!(l.right_translation(0).is_identity());
    }

    #[test]
    fn divisions_invert_translations() {
        let l = Loop::product(&Loop::cyclic(2), &Loop::cyclic(3)).unwrap();
        for a in 0..6 {
            for x in 0..6 {
                assert_eq!(l.left_div(a, l.mul(a, x)), x);
                assert_eq!(l.right_div(l.mul(x, a), a), x);
            }
        }
    }

    #[test]
    fn powers() {
        let l = z4();
        assert_eq!(l.power(3, 0), 0);
        assert_eq!(l.power(1, -1), 3);
        assert_eq!(l.power(1, 5), 1);
        assert_eq!(l.power_shift(2, 1, 0), 2);
        assert_eq!(l.power_shift(2, 1, 1), l.mul(2, 1));
        assert_eq!(l.power_shift(1, 1, -2), 3);
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_image(&[1, 2, 0]).unwrap();
        let q = Permutation::from_image(&[0, 2, 1]).unwrap();
        assert_eq!(p.then(&q).image(), &[2, 1, 0]);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(
            Permutation::from_image(&[0, 0, 1]),
            Err(Error::NotABijection { order: 3 })
        );
        assert_eq!(p.to_string(), "[1 2 0]");
    }

    #[test]
    fn lexicographic_permutations() {
        let mut v = [0, 1, 2];
        let mut seen = vec![v];
        while next_permutation(&mut v) {
            seen.push(v);
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn set_preserving_count() {
        let h: ElementSet = [0, 2].into_iter().collect();
        let perms = set_preserving_permutations(5, &h);
        assert_eq!(perms.len(), 2 * 6);
        assert!(perms.iter().all(|p| p.preserves(&h)));
    }

    #[test]
    fn relabel_is_isomorphism() {
        let l = Loop::product(&Loop::cyclic(2), &Loop::cyclic(2)).unwrap();
        let pi = Permutation::from_image(&[0, 3, 1, 2]).unwrap();
        let m = l.relabel(&pi).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(m.mul(pi.apply(x), pi.apply(y)), pi.apply(l.mul(x, y)));
            }
        }
    }
}
