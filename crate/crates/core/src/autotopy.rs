//! Autotopism triples of a special loop and the maps built from them:
//! membership tests, exhaustive enumeration of the full, right and left
//! Smarandache autotopisms, semi-automorphisms, and pseudo-automorphisms
//! with their companions.
//!
//! Maps act on the right, so a triple `(U, V, W)` is an autotopism when
//! `xU·yV = (xy)W`, and triples compose componentwise with
//! [`Permutation::then`].

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::identities::{check, CheckResult, PropertyId, Witness};
use crate::magma::{next_permutation, set_preserving_permutations, Loop, Permutation};
use crate::subloop::SpecialLoop;

/// Largest order for which triple and map enumeration is attempted.
pub const ENUMERATION_ORDER_CAP: usize = 7;

/// Which equation a triple must satisfy.
///
/// * `Full`: `U, V, W` preserve `H` and `xU·yV = (xy)W` for all `x, y ∈ G`.
/// * `Right`: `V` preserves `H` and `xU·sV = (xs)W` for `x ∈ G`, `s ∈ H`.
/// * `Left`: `U` preserves `H` and `sU·yV = (sy)W` for `s ∈ H`, `y ∈ G`.
///
/// The same tags select companion kinds for pseudo-automorphisms, with
/// `Full` standing for the first Smarandache kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleKind {
    Full,
    Right,
    Left,
}

impl TripleKind {
    pub fn name(self) -> &'static str {
        match self {
            TripleKind::Full => "full",
            TripleKind::Right => "right",
            TripleKind::Left => "left",
        }
    }

    fn constrained_components(self) -> &'static [usize] {
        match self {
            TripleKind::Full => &[0, 1, 2],
            TripleKind::Right => &[1],
            TripleKind::Left => &[0],
        }
    }
}

impl fmt::Display for TripleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TripleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" | "first" => Ok(TripleKind::Full),
            "right" => Ok(TripleKind::Right),
            "left" => Ok(TripleKind::Left),
            _ => Err(Error::UnsupportedProperty(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutotopismTriple {
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
    pub kind: TripleKind,
}

impl AutotopismTriple {
    pub fn new(u: Permutation, v: Permutation, w: Permutation, kind: TripleKind) -> Result<Self> {
        for p in [&v, &w] {
            if p.order() != u.order() {
                return Err(Error::OrderMismatch {
                    expected: u.order(),
                    actual: p.order(),
                });
            }
        }
        Ok(AutotopismTriple { u, v, w, kind })
    }

    pub fn identity(n: usize, kind: TripleKind) -> Self {
        let id = Permutation::identity(n);
        AutotopismTriple {
            u: id.clone(),
            v: id.clone(),
            w: id,
            kind,
        }
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    pub fn components(&self) -> [&Permutation; 3] {
        [&self.u, &self.v, &self.w]
    }

    pub fn is_identity(&self) -> bool {
        self.components().iter().all(|p| p.is_identity())
    }

    fn key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(3 * self.order());
        for p in self.components() {
            key.extend_from_slice(p.image());
        }
        key
    }

    fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.u.image(), self.v.image(), self.w.image()).cmp(&(
            other.u.image(),
            other.v.image(),
            other.w.image(),
        ))
    }
}

impl fmt::Display for AutotopismTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.kind, self.u, self.v, self.w)
    }
}

/// An S-bijection `A` with every `c ∈ H` for which `(A, AR_c, AR_c)` passes
/// the membership test of `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionRecord {
    pub map: Permutation,
    pub companions: Vec<usize>,
    pub kind: TripleKind,
}

impl CompanionRecord {
    pub fn is_pseudo_automorphism(&self) -> bool {
        !self.companions.is_empty()
    }
}

fn ensure_order(gh: &SpecialLoop, p: &Permutation) -> Result<()> {
    if p.order() != gh.order() {
        return Err(Error::OrderMismatch {
            expected: gh.order(),
            actual: p.order(),
        });
    }
    Ok(())
}

fn ensure_enumerable(gh: &SpecialLoop) -> Result<()> {
    if gh.order() > ENUMERATION_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            order: gh.order(),
            limit: ENUMERATION_ORDER_CAP,
        });
    }
    Ok(())
}

/// Whether `p` maps `H` onto `H`.
pub fn is_s_bijection(gh: &SpecialLoop, p: &Permutation) -> bool {
    p.order() == gh.order() && p.preserves(gh.members())
}

/// Sweeps the defining equation of `t.kind` over its domain.
pub fn triple_holds(gh: &SpecialLoop, t: &AutotopismTriple) -> Result<CheckResult> {
    for p in t.components() {
        ensure_order(gh, p)?;
    }
    Ok(triple_holds_unchecked(gh, t))
}

fn triple_holds_unchecked(gh: &SpecialLoop, t: &AutotopismTriple) -> CheckResult {
    let h = gh.members();
    let comps = t.components();
    for &c in t.kind.constrained_components() {
        if let Some(element) = comps[c].first_escape(h) {
            return CheckResult::fail(
                Witness::Escapes {
                    component: c,
                    element,
                },
                0,
            );
        }
    }
    let l = gh.carrier();
    let g: Vec<usize> = (0..l.order()).collect();
    let (xs, ys): (&[usize], &[usize]) = match t.kind {
        TripleKind::Full => (&g, &g),
        TripleKind::Right => (&g, gh.subloop()),
        TripleKind::Left => (gh.subloop(), &g),
    };
    let mut checked = 0;
    for &x in xs {
        let xu = t.u.apply(x);
        for &y in ys {
            checked += 1;
            if l.mul(xu, t.v.apply(y)) != t.w.apply(l.mul(x, y)) {
                return CheckResult::fail(Witness::Autotopy { x, y }, checked);
            }
        }
    }
    CheckResult::pass(checked)
}

/// `(R_s⁻¹, L_sR_s, R_s)`, unvalidated.
pub fn bol_triple(gh: &SpecialLoop, s: usize) -> Result<AutotopismTriple> {
    if !gh.contains(s) {
        return Err(Error::NotInSubloop(s));
    }
    let l = gh.carrier();
    let r = l.right_translation(s);
    Ok(AutotopismTriple {
        u: r.inverse(),
        v: l.left_translation(s).then(&r),
        w: r,
        kind: TripleKind::Full,
    })
}

/// Componentwise product, `a` first.
pub fn compose_triples(a: &AutotopismTriple, b: &AutotopismTriple) -> Result<AutotopismTriple> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            expected: a.order(),
            actual: b.order(),
        });
    }
    if a.kind != b.kind {
        return Err(Error::KindMismatch(a.kind.name(), b.kind.name()));
    }
    Ok(AutotopismTriple {
        u: a.u.then(&b.u),
        v: a.v.then(&b.v),
        w: a.w.then(&b.w),
        kind: a.kind,
    })
}

pub fn invert_triple(a: &AutotopismTriple) -> AutotopismTriple {
    AutotopismTriple {
        u: a.u.inverse(),
        v: a.v.inverse(),
        w: a.w.inverse(),
        kind: a.kind,
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut items: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_bytes_unchecked(items.clone()));
        if !next_permutation(&mut items) {
            break;
        }
    }
    out
}

/// Every bijection of `G \ H` onto itself, as `(source, target)` lists.
fn complement_fillings(gh: &SpecialLoop) -> (Vec<usize>, Vec<Vec<usize>>) {
    let outside: Vec<usize> = (0..gh.order()).filter(|&x| !gh.contains(x)).collect();
    let mut p = outside.clone();
    let mut fillings = Vec::new();
    loop {
        fillings.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    (outside, fillings)
}

/// Builds the permutation that agrees with `on_h` on `H` and with each
/// filling on the complement.
fn expand<'a>(
    on_h: &[(usize, usize)],
    outside: &'a [usize],
    fillings: &'a [Vec<usize>],
    n: usize,
) -> impl Iterator<Item = Permutation> + 'a {
    let mut base = vec![0u8; n];
    for &(s, t) in on_h {
        base[s] = t as u8;
    }
    fillings.iter().map(move |fill| {
        let mut image = base.clone();
        for (&src, &dst) in outside.iter().zip(fill) {
            image[src] = dst as u8;
        }
        Permutation::from_bytes_unchecked(image)
    })
}

fn translate_right(l: &Loop, u: &Permutation, b: usize) -> Permutation {
    Permutation::from_bytes_unchecked(
        (0..l.order())
            .map(|x| l.mul(u.apply(x), b) as u8)
            .collect(),
    )
}

fn translate_left(l: &Loop, v: &Permutation, a: usize) -> Permutation {
    Permutation::from_bytes_unchecked(
        (0..l.order())
            .map(|y| l.mul(a, v.apply(y)) as u8)
            .collect(),
    )
}

/// Every triple of `kind`, sorted lexicographically by `(U, V, W)` images.
///
/// A triple is pinned down by one component and one value of another: for
/// `Full` and `Right`, `W = U R_b` with `b = eV`, and `V` is recovered on
/// its constrained domain from `a·yV = yW`, `a = eU`; `Left` is the mirror
/// image starting from `V`. Candidates are then verified over the whole
/// domain. Components that the equation never evaluates (`V` off `H` for
/// `Right`, `U` off `H` for `Left`) range over all bijections of `G \ H`.
pub fn enumerate_triples(gh: &SpecialLoop, kind: TripleKind) -> Result<Vec<AutotopismTriple>> {
    ensure_enumerable(gh)?;
    let mut out = match kind {
        TripleKind::Full => enumerate_full(gh),
        TripleKind::Right => enumerate_right(gh),
        TripleKind::Left => enumerate_left(gh),
    };
    out.sort_by(|a, b| a.lex_cmp(b));
    Ok(out)
}

fn enumerate_full(gh: &SpecialLoop) -> Vec<AutotopismTriple> {
    let l = gh.carrier();
    let n = l.order();
    let e = l.identity();
    set_preserving_permutations(n, gh.members())
        .into_par_iter()
        .flat_map_iter(|u| {
            let a = u.apply(e);
            gh.subloop()
                .iter()
                .filter_map(|&b| {
                    let w = translate_right(l, &u, b);
                    let v = Permutation::from_bytes_unchecked(
                        (0..n).map(|y| l.left_div(a, w.apply(y)) as u8).collect(),
                    );
                    let t = AutotopismTriple {
                        u: u.clone(),
                        v,
                        w,
                        kind: TripleKind::Full,
                    };
                    triple_holds_unchecked(gh, &t).holds.then_some(t)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn enumerate_right(gh: &SpecialLoop) -> Vec<AutotopismTriple> {
    let l = gh.carrier();
    let n = l.order();
    let e = l.identity();
    let (outside, fillings) = complement_fillings(gh);
    all_permutations(n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let a = u.apply(e);
            let mut found = Vec::new();
            for &b in gh.subloop() {
                let w = translate_right(l, &u, b);
                let on_h: Vec<(usize, usize)> = gh
                    .subloop()
                    .iter()
                    .map(|&s| (s, l.left_div(a, w.apply(s))))
                    .collect();
                if !on_h.iter().all(|&(_, t)| gh.contains(t)) {
                    continue;
                }
                let ok = (0..n).all(|x| {
                    let xu = u.apply(x);
                    on_h.iter()
                        .all(|&(s, sv)| l.mul(xu, sv) == w.apply(l.mul(x, s)))
                });
                if ok {
                    found.extend(expand(&on_h, &outside, &fillings, n).map(|v| {
                        AutotopismTriple {
                            u: u.clone(),
                            v,
                            w: w.clone(),
                            kind: TripleKind::Right,
                        }
                    }));
                }
            }
            found
        })
        .collect()
}

fn enumerate_left(gh: &SpecialLoop) -> Vec<AutotopismTriple> {
    let l = gh.carrier();
    let n = l.order();
    let e = l.identity();
    let (outside, fillings) = complement_fillings(gh);
    all_permutations(n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let b = v.apply(e);
            let mut found = Vec::new();
            for &a in gh.subloop() {
                let w = translate_left(l, &v, a);
                let on_h: Vec<(usize, usize)> = gh
                    .subloop()
                    .iter()
                    .map(|&s| (s, l.right_div(w.apply(s), b)))
                    .collect();
                if !on_h.iter().all(|&(_, t)| gh.contains(t)) {
                    continue;
                }
                let ok = on_h.iter().all(|&(s, su)| {
                    (0..n).all(|y| l.mul(su, v.apply(y)) == w.apply(l.mul(s, y)))
                });
                if ok {
                    found.extend(expand(&on_h, &outside, &fillings, n).map(|u| {
                        AutotopismTriple {
                            u,
                            v: v.clone(),
                            w: w.clone(),
                            kind: TripleKind::Left,
                        }
                    }));
                }
            }
            found
        })
        .collect()
}

/// Triples that are simultaneously right and left Smarandache autotopisms,
/// tagged `Right`, sorted like [`enumerate_triples`].
///
/// Membership in both forces `U` and `V` to preserve `H`, so the triple is
/// determined by `U` and `b = eV ∈ H`.
pub fn enumerate_two_sided(gh: &SpecialLoop) -> Result<Vec<AutotopismTriple>> {
    ensure_enumerable(gh)?;
    let l = gh.carrier();
    let n = l.order();
    let e = l.identity();
    let mut out: Vec<AutotopismTriple> = set_preserving_permutations(n, gh.members())
        .into_par_iter()
        .flat_map_iter(|u| {
            let a = u.apply(e);
            gh.subloop()
                .iter()
                .filter_map(|&b| {
                    let w = translate_right(l, &u, b);
                    let v = Permutation::from_bytes_unchecked(
                        (0..n).map(|y| l.left_div(a, w.apply(y)) as u8).collect(),
                    );
                    let t = AutotopismTriple {
                        u: u.clone(),
                        v,
                        w,
                        kind: TripleKind::Right,
                    };
                    let left = AutotopismTriple {
                        kind: TripleKind::Left,
                        ..t.clone()
                    };
                    (triple_holds_unchecked(gh, &t).holds
                        && triple_holds_unchecked(gh, &left).holds)
                        .then_some(t)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.lex_cmp(b));
    Ok(out)
}

/// Result of testing a finite set of triples or maps for the group axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAxioms {
    pub size: usize,
    pub contains_identity: bool,
    /// A pair of members whose product is not a member.
    pub composition_escape: Option<(usize, usize)>,
    /// A member whose inverse is not a member.
    pub inverse_escape: Option<usize>,
}

impl GroupAxioms {
    pub fn closed_under_composition(&self) -> bool {
        self.composition_escape.is_none()
    }

    pub fn closed_under_inverse(&self) -> bool {
        self.inverse_escape.is_none()
    }

    pub fn is_group(&self) -> bool {
        self.contains_identity && self.closed_under_composition() && self.closed_under_inverse()
    }
}

fn group_axioms_by<T: Sync>(
    items: &[T],
    key: impl Fn(&T) -> Vec<u8> + Sync,
    is_identity: impl Fn(&T) -> bool,
    product: impl Fn(&T, &T) -> T + Sync,
    inverse: impl Fn(&T) -> T + Sync,
) -> GroupAxioms {
    let members: HashSet<Vec<u8>> = items.iter().map(&key).collect();
    let inverse_escape = items
        .par_iter()
        .position_first(|a| !members.contains(&key(&inverse(a))));
    let composition_escape = (0..items.len()).into_par_iter().find_map_first(|i| {
        let a = &items[i];
        items
            .iter()
            .position(|b| !members.contains(&key(&product(a, b))))
            .map(|j| (i, j))
    });
    GroupAxioms {
        size: items.len(),
        contains_identity: items.iter().any(is_identity),
        composition_escape,
        inverse_escape,
    }
}

/// Components as fixed arrays, for allocation-free products.
type Packed = [[u8; ENUMERATION_ORDER_CAP]; 3];

fn pack(t: &AutotopismTriple) -> Packed {
    let mut out = [[0u8; ENUMERATION_ORDER_CAP]; 3];
    for (slot, p) in out.iter_mut().zip(t.components()) {
        slot[..p.order()].copy_from_slice(p.image());
    }
    out
}

/// Three bits per entry: 3 · 7 · 3 = 63 bits.
fn code(p: &Packed, n: usize) -> u64 {
    p.iter()
        .flat_map(|c| &c[..n])
        .fold(0u64, |acc, &x| acc << 3 | x as u64)
}

fn product(a: &Packed, b: &Packed, n: usize) -> Packed {
    let mut out = [[0u8; ENUMERATION_ORDER_CAP]; 3];
    for c in 0..3 {
        for x in 0..n {
            out[c][x] = b[c][a[c][x] as usize];
        }
    }
    out
}

/// Whether the group generated by `packed` stays inside `members`. A finite
/// set of permutation triples is closed under composition exactly when it
/// equals the group it generates, so this decides closure with about
/// `m log² m` products. Generators are picked greedily: a member joins only
/// if the group so far misses it.
fn generated_within(packed: &[Packed], members: &HashSet<u64>, n: usize) -> bool {
    let mut identity = [[0u8; ENUMERATION_ORDER_CAP]; 3];
    for c in &mut identity {
        for (x, v) in c.iter_mut().enumerate().take(n) {
            *v = x as u8;
        }
    }
    let mut gens: Vec<Packed> = Vec::new();
    let mut group: HashSet<u64> = HashSet::from([code(&identity, n)]);
    for a in packed {
        if group.contains(&code(a, n)) {
            continue;
        }
        gens.push(*a);
        group.clear();
        group.insert(code(&identity, n));
        let mut queue = vec![identity];
        while let Some(g) = queue.pop() {
            for h in &gens {
                let p = product(&g, h, n);
                let k = code(&p, n);
                if group.insert(k) {
                    if !members.contains(&k) {
                        return false;
                    }
                    queue.push(p);
                }
            }
        }
    }
    members.contains(&code(&identity, n)) || packed.is_empty()
}

/// The first `(i, j)` in row-major order with `a_i · a_j` outside the set.
fn first_escaping_product(packed: &[Packed], members: &HashSet<u64>, n: usize) -> Option<(usize, usize)> {
    (0..packed.len()).into_par_iter().find_map_first(|i| {
        packed
            .iter()
            .position(|b| !members.contains(&code(&product(&packed[i], b, n), n)))
            .map(|j| (i, j))
    })
}

/// The same check as the generic path, over packed triples.
fn packed_triple_axioms(set: &[AutotopismTriple], n: usize) -> GroupAxioms {
    let packed: Vec<Packed> = set.iter().map(pack).collect();
    let members: HashSet<u64> = packed.iter().map(|p| code(p, n)).collect();
    let inverse_escape = packed.par_iter().position_first(|a| {
        let mut inv = [[0u8; ENUMERATION_ORDER_CAP]; 3];
        for c in 0..3 {
            for x in 0..n {
                inv[c][a[c][x] as usize] = x as u8;
            }
        }
        !members.contains(&code(&inv, n))
    });
    let composition_escape = if generated_within(&packed, &members, n) {
        None
    } else {
        first_escaping_product(&packed, &members, n)
    };
    GroupAxioms {
        size: set.len(),
        contains_identity: set.iter().any(AutotopismTriple::is_identity),
        composition_escape,
        inverse_escape,
    }
}

/// Group axioms for a set of triples under componentwise composition.
pub fn triple_group_axioms(set: &[AutotopismTriple]) -> GroupAxioms {
    let n = set.first().map_or(0, AutotopismTriple::order);
    if n <= ENUMERATION_ORDER_CAP && set.iter().all(|t| t.order() == n) {
        return packed_triple_axioms(set, n);
    }
    group_axioms_by(
        set,
        AutotopismTriple::key,
        AutotopismTriple::is_identity,
        |a, b| AutotopismTriple {
            u: a.u.then(&b.u),
            v: a.v.then(&b.v),
            w: a.w.then(&b.w),
            kind: a.kind,
        },
        invert_triple,
    )
}

/// Group axioms for a set of maps under composition.
pub fn map_group_axioms(maps: &[Permutation]) -> GroupAxioms {
    group_axioms_by(
        maps,
        |p| p.image().to_vec(),
        Permutation::is_identity,
        |a, b| a.then(b),
        Permutation::inverse,
    )
}

/// `(W, J_ρVJ_ρ, U)` for a right triple; requires the second Smarandache
/// right inverse property.
pub fn right_inverse_transform(
    gh: &SpecialLoop,
    t: &AutotopismTriple,
) -> Result<AutotopismTriple> {
    if t.kind != TripleKind::Right {
        return Err(Error::KindMismatch(TripleKind::Right.name(), t.kind.name()));
    }
    for p in t.components() {
        ensure_order(gh, p)?;
    }
    if !check(gh, PropertyId::S2Rip).holds {
        return Err(Error::PreconditionPropertyMissing("S2_RIP"));
    }
    Ok(right_inverse_transform_unchecked(gh, t))
}

pub(crate) fn right_inverse_transform_unchecked(
    gh: &SpecialLoop,
    t: &AutotopismTriple,
) -> AutotopismTriple {
    let j = gh.carrier().right_inverse_map();
    AutotopismTriple {
        u: t.w.clone(),
        v: j.then(&t.v).then(&j),
        w: t.u.clone(),
        kind: TripleKind::Right,
    }
}

/// `(J_λUJ_λ, W, V)` for a left triple; requires the second Smarandache
/// left inverse property.
///
/// Both inversions are needed: from `sU·yV = (sy)W` and the left inverse
/// property one gets `(sy)V = (s^λU)^λ·yW`.
pub fn left_inverse_transform(
    gh: &SpecialLoop,
    t: &AutotopismTriple,
) -> Result<AutotopismTriple> {
    if t.kind != TripleKind::Left {
        return Err(Error::KindMismatch(TripleKind::Left.name(), t.kind.name()));
    }
    for p in t.components() {
        ensure_order(gh, p)?;
    }
    if !check(gh, PropertyId::S2Lip).holds {
        return Err(Error::PreconditionPropertyMissing("S2_LIP"));
    }
    Ok(left_inverse_transform_unchecked(gh, t))
}

pub(crate) fn left_inverse_transform_unchecked(
    gh: &SpecialLoop,
    t: &AutotopismTriple,
) -> AutotopismTriple {
    let j = gh.carrier().left_inverse_map();
    AutotopismTriple {
        u: j.then(&t.u).then(&j),
        v: t.w.clone(),
        w: t.v.clone(),
        kind: TripleKind::Left,
    }
}

fn semi_automorphism(gh: &SpecialLoop, t: &Permutation, outer: &[usize]) -> Result<CheckResult> {
    ensure_order(gh, t)?;
    if !t.preserves(gh.members()) {
        return Err(Error::NotSBijection);
    }
    let l = gh.carrier();
    let e = l.identity();
    if t.apply(e) != e {
        return Ok(CheckResult::fail(Witness::MovesIdentity, 1));
    }
    let mut checked = 1;
    for &x in outer {
        let xt = t.apply(x);
        for y in 0..l.order() {
            checked += 1;
            let lhs = t.apply(l.mul(l.mul(x, y), x));
            let rhs = l.mul(l.mul(xt, t.apply(y)), xt);
            if lhs != rhs {
                return Ok(CheckResult::fail(
                    Witness::SemiAutomorphism { x, y },
                    checked,
                ));
            }
        }
    }
    Ok(CheckResult::pass(checked))
}

/// `eT = e` and `(xy·x)T = (xT·yT)xT` for all `x, y ∈ G`.
pub fn is_s1_semi_automorphism(gh: &SpecialLoop, t: &Permutation) -> Result<CheckResult> {
    let g: Vec<usize> = (0..gh.order()).collect();
    semi_automorphism(gh, t, &g)
}

/// `eT = e` and `(sy·s)T = (sT·yT)sT` for all `y ∈ G`, `s ∈ H`.
pub fn is_s2_semi_automorphism(gh: &SpecialLoop, t: &Permutation) -> Result<CheckResult> {
    semi_automorphism(gh, t, gh.subloop())
}

/// Whether `J_ρ` is a first or second Smarandache semi-automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaiplKind {
    First,
    Second,
}

pub fn saipl_check(gh: &SpecialLoop, kind: SaiplKind) -> CheckResult {
    let j = gh.carrier().right_inverse_map();
    let r = match kind {
        SaiplKind::First => is_s1_semi_automorphism(gh, &j),
        SaiplKind::Second => is_s2_semi_automorphism(gh, &j),
    };
    r.expect("J_ρ preserves a subloop")
}

/// Every `c ∈ H` such that `(A, AR_c, AR_c)` passes the test of `kind`.
pub fn pseudo_automorphism_companions(
    gh: &SpecialLoop,
    a: &Permutation,
    kind: TripleKind,
) -> Result<CompanionRecord> {
    ensure_order(gh, a)?;
    if !a.preserves(gh.members()) {
        return Err(Error::NotSBijection);
    }
    let l = gh.carrier();
    let companions = gh
        .subloop()
        .iter()
        .copied()
        .filter(|&c| {
            let arc = a.then(&l.right_translation(c));
            let t = AutotopismTriple {
                u: a.clone(),
                v: arc.clone(),
                w: arc,
                kind,
            };
            triple_holds_unchecked(gh, &t).holds
        })
        .collect();
    Ok(CompanionRecord {
        map: a.clone(),
        companions,
        kind,
    })
}

/// All pseudo-automorphisms of `kind` (S-bijections with at least one
/// companion), in lexicographic order of their images.
pub fn pseudo_automorphisms(gh: &SpecialLoop, kind: TripleKind) -> Result<Vec<CompanionRecord>> {
    ensure_enumerable(gh)?;
    let mut maps = set_preserving_permutations(gh.order(), gh.members());
    maps.sort();
    Ok(maps
        .into_par_iter()
        .map(|a| pseudo_automorphism_companions(gh, &a, kind).expect("S-bijection by construction"))
        .filter(CompanionRecord::is_pseudo_automorphism)
        .collect())
}

/// Restriction of a triple to `H`, re-indexed by position in the sorted
/// subloop, when all three components preserve `H`.
pub fn restrict_to_subloop(gh: &SpecialLoop, t: &AutotopismTriple) -> Option<AutotopismTriple> {
    let h: &ElementSet = gh.members();
    if !t.components().iter().all(|p| p.preserves(h)) {
        return None;
    }
    let sub = gh.subloop();
    let restrict = |p: &Permutation| {
        Permutation::from_bytes_unchecked(
            sub.iter()
                .map(|&s| sub.binary_search(&p.apply(s)).expect("preserved") as u8)
                .collect(),
        )
    };
    Some(AutotopismTriple {
        u: restrict(&t.u),
        v: restrict(&t.v),
        w: restrict(&t.w),
        kind: TripleKind::Full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::CayleyTable;
    use crate::subloop::make_special;

    fn z4_02() -> SpecialLoop {
        make_special(Loop::cyclic(4), &[0, 2]).unwrap()
    }

    fn perm(xs: &[usize]) -> Permutation {
        Permutation::from_image(xs).unwrap()
    }

    #[test]
    fn s_bijection_examples() {
        let gh = z4_02();
        assert!(is_s_bijection(&gh, &Permutation::identity(4)));
        assert!(is_s_bijection(&gh, &perm(&[0, 3, 2, 1])));
        assert!(!is_s_bijection(&gh, &perm(&[1, 2, 3, 0])));
    }

    #[test]
    fn identity_and_group_triples() {
        let z3 = SpecialLoop::whole(Loop::cyclic(3)).unwrap();
        let id = AutotopismTriple::identity(3, TripleKind::Full);
        assert!(triple_holds(&z3, &id).unwrap().holds);
        let l = z3.carrier();
        // a(xy)b = (ax)(yb)
        let t = AutotopismTriple::new(
            l.left_translation(1),
            l.right_translation(2),
            l.left_translation(1).then(&l.right_translation(2)),
            TripleKind::Full,
        )
        .unwrap();
        assert!(triple_holds(&z3, &t).unwrap().holds);
    }

    #[test]
    fn escape_is_reported_before_the_equation() {
        let gh = z4_02();
        let l = gh.carrier();
        let r1 = l.right_translation(1);
        let t = AutotopismTriple::new(r1.clone(), Permutation::identity(4), r1, TripleKind::Full)
            .unwrap();
        let r = triple_holds(&gh, &t).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Escapes {
                component: 0,
                element: 0
            })
        );
        // the same maps are a right triple: only V is constrained
        let right = AutotopismTriple {
            kind: TripleKind::Right,
            ..t
        };
        assert!(triple_holds(&gh, &right).unwrap().holds);
    }

    #[test]
    fn order_mismatch() {
        let gh = z4_02();
        let t = AutotopismTriple::identity(3, TripleKind::Full);
        assert_eq!(
            triple_holds(&gh, &t),
            Err(Error::OrderMismatch {
                expected: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn bol_triple_examples() {
        let gh = z4_02();
        let t = bol_triple(&gh, 0).unwrap();
        assert!(t.is_identity());
        let t = bol_triple(&gh, 2).unwrap();
        assert_eq!(t.u.image(), &[2, 3, 0, 1]);
        assert!(t.v.is_identity());
        assert!(triple_holds(&gh, &t).unwrap().holds);
        assert_eq!(bol_triple(&gh, 1), Err(Error::NotInSubloop(1)));
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        let gh = z4_02();
        let t = bol_triple(&gh, 2).unwrap();
        assert!(compose_triples(&t, &invert_triple(&t)).unwrap().is_identity());
        let sq = compose_triples(&t, &t).unwrap();
        let l = gh.carrier();
        let r = l.right_translation(2);
        let lr = l.left_translation(2).then(&r);
        assert_eq!(sq.u, r.inverse().then(&r.inverse()));
        assert_eq!(sq.v, lr.then(&lr));
        assert_eq!(sq.w, r.then(&r));
        let right = AutotopismTriple::identity(4, TripleKind::Right);
        assert!(matches!(
            compose_triples(&t, &right),
            Err(Error::KindMismatch(..))
        ));
    }

    #[test]
    fn trivial_loop_has_one_triple() {
        // order 1 admits no special loop, so the smallest H = G case is Z_2
        let z2 = SpecialLoop::whole(Loop::cyclic(2)).unwrap();
        for kind in [TripleKind::Full, TripleKind::Right, TripleKind::Left] {
            let all = enumerate_triples(&z2, kind).unwrap();
            assert_eq!(all.len(), 4, "{kind}");
            assert!(triple_group_axioms(&all).is_group());
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // Z_2 × Z_2 with H = {0, 1}: compare against testing all 24³ triples.
        let k = Loop::product(&Loop::cyclic(2), &Loop::cyclic(2)).unwrap();
        let gh = make_special(k, &[0, 1]).unwrap();
        let perms = all_permutations(4);
        for kind in [TripleKind::Full, TripleKind::Right, TripleKind::Left] {
            let mut brute = Vec::new();
            for u in &perms {
                for v in &perms {
                    for w in &perms {
                        let t = AutotopismTriple::new(u.clone(), v.clone(), w.clone(), kind)
                            .unwrap();
                        if triple_holds(&gh, &t).unwrap().holds {
                            brute.push(t);
                        }
                    }
                }
            }
            let fast = enumerate_triples(&gh, kind).unwrap();
            assert_eq!(fast, brute, "{kind}");
        }
        let mut both: Vec<AutotopismTriple> = enumerate_triples(&gh, TripleKind::Right)
            .unwrap()
            .into_iter()
            .filter(|t| {
                let left = AutotopismTriple {
                    kind: TripleKind::Left,
                    ..t.clone()
                };
                triple_holds(&gh, &left).unwrap().holds
            })
            .collect();
        both.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(enumerate_two_sided(&gh).unwrap(), both);
    }

    #[test]
    fn order_cap() {
        let big = SpecialLoop::whole(Loop::cyclic(8)).unwrap();
        assert_eq!(
            enumerate_triples(&big, TripleKind::Full),
            Err(Error::OrderTooLarge { order: 8, limit: 7 })
        );
    }

    #[test]
    fn transforms_of_identity() {
        let gh = z4_02();
        let right = AutotopismTriple::identity(4, TripleKind::Right);
        assert!(right_inverse_transform(&gh, &right).unwrap().is_identity());
        let left = AutotopismTriple::identity(4, TripleKind::Left);
        assert!(left_inverse_transform(&gh, &left).unwrap().is_identity());
        assert!(matches!(
            right_inverse_transform(&gh, &left),
            Err(Error::KindMismatch(..))
        ));
    }

    #[test]
    fn transform_requires_inverse_property() {
        // A loop of order 5 without the right inverse property on H = G.
        let l = Loop::from_rows(&[
            &[0, 1, 2, 3, 4],
            &[1, 0, 3, 4, 2],
            &[2, 4, 0, 1, 3],
            &[3, 2, 4, 0, 1],
            &[4, 3, 1, 2, 0],
        ])
        .unwrap();
        let gh = SpecialLoop::whole(l).unwrap();
        assert!(!check(&gh, PropertyId::S2Rip).holds);
        let t = AutotopismTriple::identity(5, TripleKind::Right);
        assert_eq!(
            right_inverse_transform(&gh, &t),
            Err(Error::PreconditionPropertyMissing("S2_RIP"))
        );
    }

    #[test]
    fn semi_automorphism_examples() {
        let gh = z4_02();
        let id = Permutation::identity(4);
        assert!(is_s1_semi_automorphism(&gh, &id).unwrap().holds);
        assert!(is_s2_semi_automorphism(&gh, &id).unwrap().holds);
        let j = gh.carrier().right_inverse_map();
        assert!(is_s1_semi_automorphism(&gh, &j).unwrap().holds);
        assert!(saipl_check(&gh, SaiplKind::First).holds);
        assert!(saipl_check(&gh, SaiplKind::Second).holds);
        assert_eq!(
            is_s1_semi_automorphism(&gh, &perm(&[1, 2, 3, 0])),
            Err(Error::NotSBijection)
        );
        let swap = perm(&[2, 1, 0, 3]);
        let k = SpecialLoop::whole(Loop::cyclic(4)).unwrap();
        assert_eq!(
            is_s1_semi_automorphism(&k, &swap).unwrap().witness,
            Some(Witness::MovesIdentity)
        );
        let trivialish =
            SpecialLoop::whole(Loop::new(CayleyTable::new(2, &[0, 1, 1, 0]).unwrap()).unwrap())
                .unwrap();
        assert!(saipl_check(&trivialish, SaiplKind::First).holds);
    }

    #[test]
    fn companion_examples() {
        let gh = z4_02();
        let rec = pseudo_automorphism_companions(&gh, &Permutation::identity(4), TripleKind::Full)
            .unwrap();
        assert!(rec.companions.contains(&0));
        // the inversion automorphism of Z_4 fixes H
        let j = gh.carrier().right_inverse_map();
        let rec = pseudo_automorphism_companions(&gh, &j, TripleKind::Full).unwrap();
        assert!(rec.companions.contains(&0));
        assert_eq!(
            pseudo_automorphism_companions(&gh, &perm(&[1, 2, 3, 0]), TripleKind::Right),
            Err(Error::NotSBijection)
        );
    }

    #[test]
    fn restriction_of_full_triples() {
        let gh = make_special(Loop::cyclic(6), &[0, 2, 4]).unwrap();
        let h = gh.restricted_loop();
        let hh = SpecialLoop::whole(h).unwrap();
        for t in enumerate_triples(&gh, TripleKind::Full).unwrap() {
            let r = restrict_to_subloop(&gh, &t).unwrap();
            assert!(triple_holds(&hh, &r).unwrap().holds);
        }
    }

    fn generic_axioms(set: &[AutotopismTriple]) -> GroupAxioms {
        group_axioms_by(
            set,
            AutotopismTriple::key,
            AutotopismTriple::is_identity,
            |a, b| compose_triples(a, b).unwrap(),
            invert_triple,
        )
    }

    #[test]
    fn packed_axioms_match_generic() {
        for kind in [TripleKind::Full, TripleKind::Right, TripleKind::Left] {
            let set = enumerate_triples(&z4_02(), kind).unwrap();
            assert_eq!(triple_group_axioms(&set), generic_axioms(&set));
            for drop in [0, 1, set.len() / 2, set.len() - 1] {
                let mut partial = set.clone();
                partial.remove(drop);
                let fast = triple_group_axioms(&partial);
                assert_eq!(fast, generic_axioms(&partial));
                assert!(!fast.is_group());
            }
        }
    }
}
