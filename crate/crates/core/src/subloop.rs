//! Subloop closure and enumeration, and the special loop `(G_H, ·)`.

use std::collections::{HashSet, VecDeque};

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::magma::{CayleyTable, Loop};

/// Least subset containing `seed ∪ {e}` and closed under multiplication and
/// both one-sided inverses.
pub fn generated_subloop(l: &Loop, seed: &ElementSet) -> ElementSet {
    let mut set = *seed;
    set.insert(l.identity());
    let mut members: Vec<usize> = set.to_vec();
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let push = |x: usize, set: &mut ElementSet, members: &mut Vec<usize>| {
            if set.insert(x) {
                members.push(x);
            }
        };
        push(l.left_inverse(a), &mut set, &mut members);
        push(l.right_inverse(a), &mut set, &mut members);
        for j in 0..=i {
            let b = members[j];
            push(l.mul(a, b), &mut set, &mut members);
            push(l.mul(b, a), &mut set, &mut members);
        }
        i += 1;
    }
    set
}

/// All subloops of `l`, sorted by size and then lexicographically.
///
/// Every subloop is reachable from `{e}` by repeatedly adjoining one element
/// and closing, so a breadth-first search over closures is complete.
pub fn all_subloops(l: &Loop) -> Vec<ElementSet> {
    let n = l.order();
    let trivial = ElementSet::singleton(l.identity());
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(s) = queue.pop_front() {
        for g in (0..n).filter(|&g| !s.contains(g)) {
            let mut seed = s;
            seed.insert(g);
            let t = generated_subloop(l, &seed);
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.to_vec()));
    out
}

/// A loop `G` together with a designated subloop `H` with `|H| ≥ 2`.
/// `H = G` is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecialLoop {
    carrier: Loop,
    subset: Vec<usize>,
    members: ElementSet,
}

impl SpecialLoop {
    /// Validates that `subset` is a non-trivial subloop of `l`.
    pub fn new(l: Loop, subset: &[usize]) -> Result<Self> {
        let n = l.order();
        if let Some(&bad) = subset.iter().find(|&&x| x >= n) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                order: n,
            });
        }
        let members: ElementSet = subset.iter().copied().collect();
        if !members.contains(l.identity()) {
            return Err(Error::MissingIdentity);
        }
        if members.len() < 2 {
            return Err(Error::TrivialSubloop);
        }
        for s in &members {
            for t in &members {
                if !members.contains(l.mul(s, t)) {
                    return Err(Error::NotClosed { left: s, right: t });
                }
            }
        }
        for s in &members {
            if !members.contains(l.left_inverse(s)) || !members.contains(l.right_inverse(s)) {
                return Err(Error::NotClosedUnderInverse(s));
            }
        }
        Ok(SpecialLoop {
            subset: members.to_vec(),
            carrier: l,
            members,
        })
    }

    /// `(G_G, ·)`, the loop paired with itself.
    pub fn whole(l: Loop) -> Result<Self> {
        let all: Vec<usize> = (0..l.order()).collect();
        Self::new(l, &all)
    }

    pub fn carrier(&self) -> &Loop {
        &self.carrier
    }

    /// Sorted elements of `H`.
    pub fn subloop(&self) -> &[usize] {
        &self.subset
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn is_whole(&self) -> bool {
        self.subset.len() == self.carrier.order()
    }

    /// `(H, ·)` re-indexed by position in [`Self::subloop`].
    pub fn restricted_loop(&self) -> Loop {
        let k = self.subset.len();
        let index = |x: usize| self.subset.binary_search(&x).expect("closed subloop");
        let mut entries = Vec::with_capacity(k * k);
        for &s in &self.subset {
            for &t in &self.subset {
                entries.push(index(self.carrier.mul(s, t)) as u8);
            }
        }
        Loop::new(CayleyTable::from_bytes_unchecked(k, entries))
            .expect("a closed subset of a loop is a loop")
    }

    /// Whether `s·s = e` for all `s ∈ H`.
    pub fn is_smarandache_exponent_two(&self) -> bool {
        let e = self.carrier.identity();
        self.subset.iter().all(|&s| self.carrier.mul(s, s) == e)
    }
}

/// Validating constructor, same as [`SpecialLoop::new`].
pub fn make_special(l: Loop, subset: &[usize]) -> Result<SpecialLoop> {
    SpecialLoop::new(l, subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn klein() -> Loop {
        Loop::product(&Loop::cyclic(2), &Loop::cyclic(2)).unwrap()
    }

    #[test]
    fn generated_examples() {
        let z4 = Loop::cyclic(4);
        assert_eq!(generated_subloop(&z4, &set(&[2])).to_vec(), vec![0, 2]);
        assert_eq!(generated_subloop(&z4, &set(&[1])).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(generated_subloop(&z4, &set(&[0])).to_vec(), vec![0]);
    }

    #[test]
    fn subloop_lists() {
        let z2 = Loop::cyclic(2);
        assert_eq!(all_subloops(&z2), vec![set(&[0]), set(&[0, 1])]);
        let z4 = Loop::cyclic(4);
        assert_eq!(
            all_subloops(&z4),
            vec![set(&[0]), set(&[0, 2]), set(&[0, 1, 2, 3])]
        );
        assert_eq!(all_subloops(&klein()).len(), 5);
    }

    #[test]
    fn make_special_examples() {
        let z4 = Loop::cyclic(4);
        assert!(make_special(z4.clone(), &[0, 2]).is_ok());
        assert_eq!(
            make_special(z4.clone(), &[0, 1]),
            Err(Error::NotClosed { left: 1, right: 1 })
        );
        assert_eq!(make_special(z4.clone(), &[0]), Err(Error::TrivialSubloop));
        assert_eq!(make_special(z4.clone(), &[1, 3]), Err(Error::MissingIdentity));
        assert!(matches!(
            make_special(z4, &[0, 9]),
            Err(Error::ElementOutOfRange { element: 9, .. })
        ));
    }

    #[test]
    fn exponent_two_examples() {
        assert!(SpecialLoop::whole(klein()).unwrap().is_smarandache_exponent_two());
        let z4 = Loop::cyclic(4);
        assert!(make_special(z4.clone(), &[0, 2])
            .unwrap()
            .is_smarandache_exponent_two());
        assert!(!SpecialLoop::whole(z4).unwrap().is_smarandache_exponent_two());
    }

    #[test]
    fn restriction_is_a_loop() {
        let z6 = Loop::cyclic(6);
        let gh = make_special(z6, &[0, 2, 4]).unwrap();
        let h = gh.restricted_loop();
        assert_eq!(h.order(), 3);
        assert_eq!(h.mul(1, 2), 0);
    }
}
