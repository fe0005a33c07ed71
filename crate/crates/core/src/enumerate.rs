//! Exhaustive generation of normalized loops, special-loop expansion,
//! isomorph rejection, and the search for second Smarandache Bol loops
//! that are not Bol loops.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identities::{check, PropertyId};
use crate::magma::{next_permutation, CayleyTable, Loop};
use crate::subloop::{all_subloops, SpecialLoop};

/// Largest order enumerated exhaustively.
pub const EXHAUSTIVE_ORDER_CAP: usize = 7;

fn ensure_exhaustive(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > EXHAUSTIVE_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            order,
            limit: EXHAUSTIVE_ORDER_CAP,
        });
    }
    Ok(())
}

/// Depth-first walk over normalized Latin squares.
///
/// Row 0 and column 0 read `0, 1, .., n-1`; the remaining cells are filled
/// in row-major order with the smallest symbol allowed by the row and column
/// masks, so tables come out in lexicographic order of their flattening.
#[derive(Clone, Debug)]
pub struct EnumerationCursor {
    order: usize,
    cells: Vec<u8>,
    row_masks: Vec<u16>,
    col_masks: Vec<u16>,
    /// Next symbol to try at each interior position.
    next_try: Vec<u8>,
    /// Interior positions below this index are pinned.
    floor: usize,
    depth: usize,
    started: bool,
    done: bool,
}

impl EnumerationCursor {
    pub fn new(order: usize) -> Result<Self> {
        Self::with_prefix(order, &[])
    }

    /// A cursor over the tables whose first interior cells (row-major)
    /// equal `prefix`. The prefix must itself respect the Latin property.
    pub fn with_prefix(order: usize, prefix: &[u8]) -> Result<Self> {
        ensure_exhaustive(order)?;
        let n = order;
        let interior = (n - 1) * (n - 1);
        let mut cursor = EnumerationCursor {
            order,
            cells: vec![0; n * n],
            row_masks: vec![0; n],
            col_masks: vec![0; n],
            next_try: vec![0; interior],
            floor: prefix.len(),
            depth: 0,
            started: false,
            done: false,
        };
        for i in 0..n {
            cursor.set(0, i, i as u8);
            if i > 0 {
                cursor.set(i, 0, i as u8);
            }
        }
        for (k, &v) in prefix.iter().enumerate() {
            let (r, c) = cursor.cell_at(k);
            if v as usize >= n || !cursor.allowed(r, c, v) {
                return Err(Error::NotAQuasigroup(crate::error::Line::Row(r)));
            }
            cursor.set(r, c, v);
        }
        cursor.depth = prefix.len();
        Ok(cursor)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn interior(&self) -> usize {
        self.next_try.len()
    }

    fn cell_at(&self, k: usize) -> (usize, usize) {
        let m = self.order - 1;
        (1 + k / m, 1 + k % m)
    }

    fn allowed(&self, r: usize, c: usize, v: u8) -> bool {
        (self.row_masks[r] | self.col_masks[c]) >> v & 1 == 0
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.cells[r * self.order + c] = v;
        self.row_masks[r] |= 1 << v;
        self.col_masks[c] |= 1 << v;
    }

    fn clear(&mut self, k: usize) {
        let (r, c) = self.cell_at(k);
        let v = self.cells[r * self.order + c];
        self.row_masks[r] &= !(1 << v);
        self.col_masks[c] &= !(1 << v);
    }

    fn table(&self) -> Loop {
        Loop::new(CayleyTable::from_bytes_unchecked(self.order, self.cells.clone()))
            .expect("completed normalized Latin square")
    }

    /// Moves to the previous free position, or finishes.
    fn retreat(&mut self) -> bool {
        if self.depth == self.floor {
            self.done = true;
            return false;
        }
        self.depth -= 1;
        self.clear(self.depth);
        true
    }
}

impl Iterator for EnumerationCursor {
    type Item = Loop;

    fn next(&mut self) -> Option<Loop> {
        if self.done {
            return None;
        }
        let m = self.interior();
        if !self.started {
            self.started = true;
            if self.depth == m {
                self.done = true;
                return Some(self.table());
            }
            self.next_try[self.depth] = 0;
        } else if !self.retreat() {
            return None;
        }
        let n = self.order as u8;
        loop {
            let k = self.depth;
            let (r, c) = self.cell_at(k);
            match (self.next_try[k]..n).find(|&v| self.allowed(r, c, v)) {
                Some(v) => {
                    self.set(r, c, v);
                    self.next_try[k] = v + 1;
                    self.depth += 1;
                    if self.depth == m {
                        return Some(self.table());
                    }
                    self.next_try[self.depth] = 0;
                }
                None => {
                    if !self.retreat() {
                        return None;
                    }
                }
            }
        }
    }
}

/// All normalized loops of `order`, lazily, in lexicographic order.
pub fn enumerate_loops(order: usize) -> Result<EnumerationCursor> {
    EnumerationCursor::new(order)
}

/// Row 1 assignments that respect the Latin property, in lexicographic order.
fn row_one_prefixes(order: usize) -> Vec<Vec<u8>> {
    let n = order;
    let mut out = Vec::new();
    let mut symbols: Vec<u8> = (0..n as u8).filter(|&v| v != 1).collect();
    if n < 3 {
        return vec![Vec::new()];
    }
    loop {
        // row 1 reads 1, then symbols for columns 1..n; column c may not
        // repeat row 0's entry c
        if symbols.iter().enumerate().all(|(i, &v)| v as usize != i + 1) {
            out.push(symbols.clone());
        }
        if !next_permutation(&mut symbols) {
            break;
        }
    }
    out
}

/// Same sequence as [`enumerate_loops`], computed by partitioning the
/// search on row 1 and concatenating the independent subtrees.
pub fn enumerate_loops_parallel(order: usize) -> Result<Vec<Loop>> {
    ensure_exhaustive(order)?;
    let prefixes = row_one_prefixes(order);
    let parts: Vec<Vec<Loop>> = prefixes
        .par_iter()
        .map(|p| EnumerationCursor::with_prefix(order, p).map(|c| c.collect()))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Every `(G, H)` with `G` normalized of `order` and `H` a subloop with
/// `|H| ≥ min_h`, `H = G` included. Loops come in enumeration order and,
/// within a loop, subloops by size and then lexicographically.
pub fn enumerate_special(
    order: usize,
    min_h: usize,
) -> Result<impl Iterator<Item = SpecialLoop>> {
    if min_h < 2 {
        return Err(Error::TrivialSubloop);
    }
    Ok(enumerate_loops(order)?.flat_map(move |l| special_pairs(&l, min_h)))
}

/// The special loops built on `l` with `|H| ≥ min_h`.
pub fn special_pairs(l: &Loop, min_h: usize) -> Vec<SpecialLoop> {
    all_subloops(l)
        .into_iter()
        .filter(|h| h.len() >= min_h.max(2))
        .map(|h| SpecialLoop::new(l.clone(), &h.to_vec()).expect("closed subloop"))
        .collect()
}

/// Calls `f` with every bijection `π` of `0..n` that sends `e` to 0.
fn for_each_pointed_relabeling(n: usize, e: usize, mut f: impl FnMut(&[u8])) {
    let mut rest: Vec<u8> = (1..n as u8).collect();
    let mut pi = vec![0u8; n];
    loop {
        let mut it = rest.iter();
        for (x, slot) in pi.iter_mut().enumerate() {
            *slot = if x == e { 0 } else { *it.next().expect("n - 1 images") };
        }
        f(&pi);
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

fn relabeled_into(l: &Loop, pi: &[u8], out: &mut [u8]) {
    let n = l.order();
    for x in 0..n {
        let px = pi[x] as usize;
        for y in 0..n {
            out[px * n + pi[y] as usize] = pi[l.mul(x, y)];
        }
    }
}

/// Minimum flattened table over all relabelings sending the identity to 0.
/// Two loops have equal keys exactly when they are isomorphic.
pub fn canonical_key(l: &Loop) -> Result<Vec<u8>> {
    ensure_exhaustive(l.order())?;
    let n = l.order();
    let mut best = vec![u8::MAX; n * n];
    let mut buf = vec![0u8; n * n];
    for_each_pointed_relabeling(n, l.identity(), |pi| {
        relabeled_into(l, pi, &mut buf);
        if buf < best {
            best.copy_from_slice(&buf);
        }
    });
    Ok(best)
}

/// Like [`canonical_key`] for the pair `(G, H)`: the minimum over
/// relabelings of the table followed by the sorted image of `H`.
pub fn canonical_pair_key(gh: &SpecialLoop) -> Result<Vec<u8>> {
    let l = gh.carrier();
    ensure_exhaustive(l.order())?;
    let n = l.order();
    let k = gh.subloop().len();
    let mut best = vec![u8::MAX; n * n + k];
    let mut buf = vec![0u8; n * n + k];
    for_each_pointed_relabeling(n, l.identity(), |pi| {
        relabeled_into(l, pi, &mut buf[..n * n]);
        let tail = &mut buf[n * n..];
        for (slot, &s) in tail.iter_mut().zip(gh.subloop()) {
            *slot = pi[s];
        }
        tail.sort_unstable();
        if buf < best {
            best.copy_from_slice(&buf);
        }
    });
    Ok(best)
}

/// A special loop satisfying S2_BOL whose carrier is not a Bol loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub special: SpecialLoop,
    /// Every property of [`PropertyId::all`] with its truth value.
    pub flags: Vec<(PropertyId, bool)>,
    /// [`canonical_pair_key`] of the pair, used for deduplication.
    pub canonical_key: Vec<u8>,
}

impl Finding {
    fn new(special: SpecialLoop) -> Self {
        let flags = PropertyId::all()
            .into_iter()
            .map(|p| (p, check(&special, p).holds))
            .collect();
        let canonical_key = canonical_pair_key(&special).unwrap_or_default();
        Finding {
            special,
            flags,
            canonical_key,
        }
    }

    pub fn flag(&self, p: PropertyId) -> Option<bool> {
        self.flags.iter().find(|(q, _)| *q == p).map(|&(_, b)| b)
    }
}

/// Search outcome for one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOutcome {
    pub order: usize,
    /// `false` when loops were sampled rather than enumerated.
    pub exhaustive: bool,
    pub loops_examined: u64,
    pub pairs_examined: u64,
    /// One finding per isomorphism class of pairs, in enumeration order.
    pub findings: Vec<Finding>,
}

/// Settings for orders above the exhaustive cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub samples_per_order: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: 0,
            samples_per_order: 1000,
        }
    }
}

/// The proper subloops `H` (`|H| ≥ 2`) of `l` for which S2_BOL holds
/// while `l` is not Bol. BOL is evaluated at most once, and only after
/// some subloop passes the cheaper S2_BOL check.
pub fn non_bol_subloops(l: &Loop) -> (u64, Vec<SpecialLoop>) {
    let pairs: Vec<SpecialLoop> = special_pairs(l, 2)
        .into_iter()
        .filter(|gh| !gh.is_whole())
        .collect();
    let examined = pairs.len() as u64;
    let mut bol: Option<bool> = None;
    let mut out = Vec::new();
    for gh in pairs {
        if !check(&gh, PropertyId::S2Bol).holds {
            continue;
        }
        let is_bol = *bol.get_or_insert_with(|| check(&gh, PropertyId::Bol).holds);
        if is_bol {
            break;
        }
        out.push(gh);
    }
    (examined, out)
}

fn collect_outcome(
    order: usize,
    exhaustive: bool,
    loops: impl Iterator<Item = Loop>,
) -> OrderOutcome {
    let mut seen = HashSet::new();
    let mut outcome = OrderOutcome {
        order,
        exhaustive,
        loops_examined: 0,
        pairs_examined: 0,
        findings: Vec::new(),
    };
    for l in loops {
        outcome.loops_examined += 1;
        let (examined, hits) = non_bol_subloops(&l);
        outcome.pairs_examined += examined;
        for gh in hits {
            let f = Finding::new(gh);
            if seen.insert(f.canonical_key.clone()) {
                outcome.findings.push(f);
            }
        }
    }
    outcome
}

/// Searches orders `1..=max_order` for S2_BOL special loops with `H ≠ G`
/// whose carrier is not Bol, deduplicated up to isomorphism of pairs.
///
/// Orders up to [`EXHAUSTIVE_ORDER_CAP`] are enumerated exhaustively;
/// larger orders are sampled and marked non-exhaustive.
pub fn search_s2bl_not_bol(max_order: usize) -> Vec<OrderOutcome> {
    search_s2bl_not_bol_with(max_order, Sampling::default())
}

pub fn search_s2bl_not_bol_with(max_order: usize, sampling: Sampling) -> Vec<OrderOutcome> {
    (1..=max_order).map(|n| search_order(n, sampling)).collect()
}

/// The search restricted to a single order.
pub fn search_order(order: usize, sampling: Sampling) -> OrderOutcome {
    if order <= EXHAUSTIVE_ORDER_CAP {
        let loops = enumerate_loops(order).expect("within cap");
        collect_outcome(order, true, loops)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed ^ order as u64);
        let loops = (0..sampling.samples_per_order).map(move |_| random_loop(order, &mut rng));
        collect_sampled(order, loops)
    }
}

fn collect_sampled(order: usize, loops: impl Iterator<Item = Loop>) -> OrderOutcome {
    let mut seen = HashSet::new();
    let mut outcome = OrderOutcome {
        order,
        exhaustive: false,
        loops_examined: 0,
        pairs_examined: 0,
        findings: Vec::new(),
    };
    for l in loops {
        outcome.loops_examined += 1;
        let (examined, hits) = non_bol_subloops(&l);
        outcome.pairs_examined += examined;
        for gh in hits {
            // canonical keys are too costly above the cap; dedup on the table
            let mut key = gh.carrier().table().entries().to_vec();
            key.extend(gh.subloop().iter().map(|&s| s as u8));
            if seen.insert(key) {
                outcome.findings.push(Finding {
                    flags: PropertyId::all()
                        .into_iter()
                        .map(|p| (p, check(&gh, p).holds))
                        .collect(),
                    canonical_key: Vec::new(),
                    special: gh,
                });
            }
        }
    }
    outcome
}

/// A normalized loop of order `n` built by randomized backtracking.
///
/// Cells are filled row-major with symbols tried in random order; a dead
/// end restarts the current row, and repeated failures restart the table.
pub fn random_loop(n: usize, rng: &mut impl Rng) -> Loop {
    assert!((1..=crate::magma::MAX_ORDER).contains(&n));
    'table: loop {
        let mut cells = vec![0usize; n * n];
        let mut col_used = vec![vec![false; n]; n];
        for i in 0..n {
            cells[i] = i;
            cells[i * n] = i;
            col_used[i][i] = true;
        }
        for r in 1..n {
            let mut attempts = 0;
            'row: loop {
                attempts += 1;
                if attempts > 200 {
                    continue 'table;
                }
                let mut row_used = vec![false; n];
                row_used[r] = true;
                let mut placed: Vec<(usize, usize)> = Vec::with_capacity(n);
                for c in 1..n {
                    let mut options: Vec<usize> =
                        (0..n).filter(|&v| !row_used[v] && !col_used[c][v]).collect();
                    if options.is_empty() {
                        for (c2, v) in placed {
                            col_used[c2][v] = false;
                        }
                        continue 'row;
                    }
                    options.shuffle(rng);
                    let v = options[0];
                    cells[r * n + c] = v;
                    row_used[v] = true;
                    col_used[c][v] = true;
                    placed.push((c, v));
                }
                break;
            }
        }
        let table = CayleyTable::new(n, &cells).expect("entries in range");
        return Loop::new(table).expect("Latin by construction");
    }
}
