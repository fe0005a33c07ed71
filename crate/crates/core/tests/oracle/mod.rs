//! Reference implementations used to cross-check the library. They share no
//! code with it beyond reading tables out of `Loop` values.
#![allow(dead_code)]

use loopcheck::Loop;

/// A plain multiplication table with identity `e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Table {
    pub n: usize,
    pub cells: Vec<usize>,
    pub e: usize,
}

impl Table {
    pub fn from_cells(n: usize, cells: Vec<usize>) -> Option<Table> {
        if !is_latin(n, &cells) {
            return None;
        }
        let e = (0..n).find(|&e| (0..n).all(|x| cells[e * n + x] == x && cells[x * n + e] == x))?;
        Some(Table { n, cells, e })
    }

    pub fn from_loop(l: &Loop) -> Table {
        let n = l.order();
        let cells = (0..n * n).map(|i| l.mul(i / n, i % n)).collect();
        Table::from_cells(n, cells).expect("library loops are loops")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    /// The `x` with `x·a = b`.
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        (0..self.n).find(|&x| self.mul(x, a) == b).unwrap()
    }

    /// The `x` with `a·x = b`.
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        (0..self.n).find(|&x| self.mul(a, x) == b).unwrap()
    }

    pub fn rho(&self, x: usize) -> usize {
        self.ldiv(x, self.e)
    }
}

pub fn is_latin(n: usize, cells: &[usize]) -> bool {
    if cells.len() != n * n || cells.iter().any(|&v| v >= n) {
        return false;
    }
    (0..n).all(|i| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        (0..n).all(|j| {
            let r = std::mem::replace(&mut row[cells[i * n + j]], true);
            let c = std::mem::replace(&mut col[cells[j * n + i]], true);
            !r && !c
        })
    })
}

fn is_normalized(n: usize, cells: &[usize]) -> bool {
    (0..n).all(|i| cells[i] == i && cells[i * n] == i)
}

/// Every normalized loop of order `n` by filtering all `n^(n²)` tables.
pub fn all_tables_filter(n: usize) -> Vec<Vec<usize>> {
    let total = n.pow((n * n) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let cells: Vec<usize> = (0..n * n)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect();
        if is_normalized(n, &cells) && is_latin(n, &cells) {
            out.push(cells);
        }
    }
    out.sort();
    out
}

/// Same, fixing row 0 and column 0 and filtering every interior filling.
pub fn interior_filter(n: usize) -> Vec<Vec<usize>> {
    let m = (n - 1) * (n - 1);
    let total = n.pow(m as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut cells = vec![0; n * n];
        for i in 0..n {
            cells[i] = i;
            cells[i * n] = i;
        }
        for r in 1..n {
            for col in 1..n {
                cells[r * n + col] = c % n;
                c /= n;
            }
        }
        if is_latin(n, &cells) {
            out.push(cells);
        }
    }
    out.sort();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Normalized loops built a whole row at a time: row `r` is a permutation
/// starting with `r` that avoids every symbol already in each column.
pub fn row_backtrack(n: usize) -> Vec<Vec<usize>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut rows: Vec<&Vec<usize>> = Vec::new();
    fn rec<'a>(n: usize, perms: &'a [Vec<usize>], rows: &mut Vec<&'a Vec<usize>>, out: &mut Vec<Vec<usize>>) {
        let r = rows.len();
        if r == n {
            out.push(rows.iter().flat_map(|row| row.iter().copied()).collect());
            return;
        }
        for p in perms.iter().filter(|p| p[0] == r) {
            if rows.iter().all(|q| (0..n).all(|c| q[c] != p[c])) {
                rows.push(p);
                rec(n, perms, rows, out);
                rows.pop();
            }
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let first = perms.iter().find(|p| **p == identity).unwrap();
    rows.push(first);
    rec(n, &perms, &mut rows, &mut out);
    out.sort();
    out
}

/// Subsets containing the identity and closed under multiplication. In a
/// finite loop these are exactly the subloops.
pub fn closed_subsets(t: &Table) -> Vec<Vec<usize>> {
    let n = t.n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask >> t.e & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> t.mul(a, b) & 1 == 1))
        {
            out.push(members);
        }
    }
    out
}

/// `(xs·z)s = x(sz·s)` for `x, z ∈ G`, `s ∈ h`.
pub fn s2_bol(t: &Table, h: &[usize]) -> bool {
    let n = t.n;
    h.iter().all(|&s| {
        (0..n).all(|x| {
            (0..n).all(|z| t.mul(t.mul(t.mul(x, s), z), s) == t.mul(x, t.mul(t.mul(s, z), s)))
        })
    })
}

pub fn bol(t: &Table) -> bool {
    let all: Vec<usize> = (0..t.n).collect();
    s2_bol(t, &all)
}

/// `(x/s)·((sy)s) = (xy)s` for all `x, y`: the triple built from `s` is
/// an autotopism. Also requires the three maps to fix `h` setwise.
pub fn bol_triple_is_autotopism(t: &Table, h: &[usize], s: usize) -> bool {
    let n = t.n;
    let fixes = |f: &dyn Fn(usize) -> usize| h.iter().all(|&x| h.contains(&f(x)));
    fixes(&|x| t.rdiv(x, s))
        && fixes(&|y| t.mul(t.mul(s, y), s))
        && fixes(&|x| t.mul(x, s))
        && (0..n).all(|x| {
            (0..n).all(|y| t.mul(t.rdiv(x, s), t.mul(t.mul(s, y), s)) == t.mul(t.mul(x, y), s))
        })
}

/// Whether some bijection fixing identities maps `(a, ha)` onto `(b, hb)`.
pub fn isomorphic_pairs(a: &Table, ha: &[usize], b: &Table, hb: &[usize]) -> bool {
    if a.n != b.n || ha.len() != hb.len() {
        return false;
    }
    let n = a.n;
    permutations(n).into_iter().any(|pi| {
        pi[a.e] == b.e
            && ha.iter().all(|&x| hb.contains(&pi[x]))
            && (0..n).all(|x| (0..n).all(|y| pi[a.mul(x, y)] == b.mul(pi[x], pi[y])))
    })
}

/// Number of isomorphism classes among `tables`, by pairwise testing
/// against one representative per class.
pub fn class_count(tables: &[Table]) -> usize {
    let mut reps: Vec<&Table> = Vec::new();
    for t in tables {
        if !reps.iter().any(|r| isomorphic_pairs(r, &[], t, &[])) {
            reps.push(t);
        }
    }
    reps.len()
}
