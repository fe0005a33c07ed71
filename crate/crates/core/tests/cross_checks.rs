//! Library results compared with the reference implementations in
//! `oracle`, over whole small-order corpora.

mod oracle;

use std::collections::HashSet;

use loopcheck::autotopy::{
    enumerate_triples, invert_triple, left_inverse_transform, triple_group_axioms, triple_holds,
    AutotopismTriple, TripleKind,
};
use loopcheck::commands::special_corpus;
use loopcheck::enumerate::{
    canonical_key, canonical_pair_key, enumerate_loops, enumerate_loops_parallel,
};
use loopcheck::harness::{sweep, Bounds, TheoremId};
use loopcheck::magma::next_permutation;
use loopcheck::subloop::all_subloops;
use loopcheck::{check, Loop, Permutation, PropertyId, SpecialLoop};
use oracle::Table;

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_image(&items).unwrap());
        if !next_permutation(&mut items) {
            break;
        }
    }
    out
}

#[test]
fn subloops_match_power_set_filter() {
    for n in 1..=6 {
        for l in enumerate_loops(n).unwrap() {
            let lib: Vec<Vec<usize>> = all_subloops(&l).iter().map(|s| s.to_vec()).collect();
            let mut reference = oracle::closed_subsets(&Table::from_loop(&l));
            reference.sort_by_key(|s| (s.len(), s.clone()));
            assert_eq!(lib, reference);
        }
    }
}

#[test]
fn parallel_enumeration_matches_at_order_six() {
    let seq: Vec<Loop> = enumerate_loops(6).unwrap().collect();
    assert_eq!(enumerate_loops_parallel(6).unwrap(), seq);
}

#[test]
fn isomorphism_classes() {
    let five: Vec<Loop> = enumerate_loops(5).unwrap().collect();
    let keys: HashSet<Vec<u8>> = five.iter().map(|l| canonical_key(l).unwrap()).collect();
    let tables: Vec<Table> = five.iter().map(Table::from_loop).collect();
    assert_eq!(keys.len(), oracle::class_count(&tables));
    assert_eq!(keys.len(), 6);
    // equal keys exactly when the oracle finds an isomorphism
    for a in &five {
        for b in &five {
            let same = canonical_key(a).unwrap() == canonical_key(b).unwrap();
            let iso = oracle::isomorphic_pairs(&Table::from_loop(a), &[], &Table::from_loop(b), &[]);
            assert_eq!(same, iso);
        }
    }
    let six: HashSet<Vec<u8>> = enumerate_loops(6)
        .unwrap()
        .map(|l| canonical_key(&l).unwrap())
        .collect();
    assert_eq!(six.len(), 109);
}

#[test]
fn pair_keys_match_pair_isomorphism() {
    let corpus: Vec<SpecialLoop> = special_corpus(5).unwrap();
    for a in &corpus {
        for b in &corpus {
            if a.order() != b.order() {
                continue;
            }
            let same = canonical_pair_key(a).unwrap() == canonical_pair_key(b).unwrap();
            let iso = oracle::isomorphic_pairs(
                &Table::from_loop(a.carrier()),
                a.subloop(),
                &Table::from_loop(b.carrier()),
                b.subloop(),
            );
            assert_eq!(same, iso);
        }
    }
}

fn brute_force_triples(gh: &SpecialLoop, kind: TripleKind) -> Vec<AutotopismTriple> {
    let perms = all_perms(gh.order());
    let t = Table::from_loop(gh.carrier());
    let h = gh.subloop();
    let n = t.n;
    let fixes = |p: &Permutation| h.iter().all(|&s| h.contains(&p.apply(s)));
    let all: Vec<usize> = (0..n).collect();
    let (xs, ys): (&[usize], &[usize]) = match kind {
        TripleKind::Full => (&all, &all),
        TripleKind::Right => (&all, h),
        TripleKind::Left => (h, &all),
    };
    let mut out = Vec::new();
    for u in &perms {
        for v in &perms {
            for w in &perms {
                let constrained = match kind {
                    TripleKind::Full => fixes(u) && fixes(v) && fixes(w),
                    TripleKind::Right => fixes(v),
                    TripleKind::Left => fixes(u),
                };
                if constrained
                    && xs.iter().all(|&x| {
                        ys.iter()
                            .all(|&y| t.mul(u.apply(x), v.apply(y)) == w.apply(t.mul(x, y)))
                    })
                {
                    out.push(AutotopismTriple::new(u.clone(), v.clone(), w.clone(), kind).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn triple_enumeration_matches_brute_force_up_to_order_four() {
    for gh in special_corpus(4).unwrap() {
        for kind in [TripleKind::Full, TripleKind::Right, TripleKind::Left] {
            assert_eq!(
                enumerate_triples(&gh, kind).unwrap(),
                brute_force_triples(&gh, kind),
                "{kind} on {:?} / {:?}",
                gh.carrier().table().entries(),
                gh.subloop()
            );
        }
    }
}

#[test]
fn full_triples_form_groups() {
    // exact below order 6, every 25th special loop at order 6
    let corpus = special_corpus(6).unwrap();
    for (i, gh) in corpus.iter().enumerate() {
        if gh.order() == 6 && i % 25 != 0 {
            continue;
        }
        let set = enumerate_triples(gh, TripleKind::Full).unwrap();
        assert!(triple_group_axioms(&set).is_group());
    }
}

#[test]
fn literal_left_transform_is_not_membership_preserving() {
    // (J_λU, W, V) without the second J_λ already fails for the identity
    // triple of Z_4, while the conjugated form keeps membership.
    let gh = SpecialLoop::whole(Loop::cyclic(4)).unwrap();
    let id = AutotopismTriple::identity(4, TripleKind::Left);
    let j = gh.carrier().left_inverse_map();
    let literal = AutotopismTriple {
        u: j.then(&id.u),
        v: id.w.clone(),
        w: id.v.clone(),
        kind: TripleKind::Left,
    };
    assert!(!triple_holds(&gh, &literal).unwrap().holds);
    for t in enumerate_triples(&gh, TripleKind::Left).unwrap() {
        let image = left_inverse_transform(&gh, &t).unwrap();
        assert!(triple_holds(&gh, &image).unwrap().holds);
        assert!(triple_holds(&gh, &invert_triple(&image)).unwrap().holds);
    }
}

#[test]
fn groups_satisfy_every_statement() {
    let groups: Vec<SpecialLoop> = special_corpus(5)
        .unwrap()
        .into_iter()
        .filter(|gh| gh.carrier().is_associative())
        .collect();
    assert!(!groups.is_empty());
    let tags: Vec<TheoremId> = TheoremId::ALL
        .into_iter()
        .filter(|t| !t.is_observation())
        .collect();
    let r = sweep(&groups, &tags, Bounds::default()).unwrap();
    for t in &tags {
        let tally = r.tallies[t];
        assert_eq!(tally.failed, 0, "{t}");
        assert!(tally.applicable > 0, "{t} never applies");
    }
}

#[test]
fn order_four_sweep_has_no_failures() {
    let corpus = special_corpus(4).unwrap();
    let r = sweep(&corpus, &TheoremId::ALL, Bounds::default()).unwrap();
    assert_eq!(r.total_failures(), 0);
    assert!(r.non_bol.is_empty());
}

#[test]
fn properties_agree_with_direct_formulas() {
    for gh in special_corpus(5).unwrap() {
        let t = Table::from_loop(gh.carrier());
        let h = gh.subloop();
        let n = t.n;
        assert_eq!(check(&gh, PropertyId::S2Bol).holds, oracle::s2_bol(&t, h));
        assert_eq!(check(&gh, PropertyId::Bol).holds, oracle::bol(&t));
        let s2rip = (0..n).all(|y| h.iter().all(|&s| t.mul(t.mul(y, s), t.rho(s)) == y));
        assert_eq!(check(&gh, PropertyId::S2Rip).holds, s2rip);
        let s3rip = (0..n).all(|y| h.iter().all(|&s| t.mul(t.mul(s, y), t.rho(y)) == s));
        assert_eq!(check(&gh, PropertyId::S3Rip).holds, s3rip);
        let s2rap = (0..n).all(|y| h.iter().all(|&s| t.mul(y, t.mul(s, s)) == t.mul(t.mul(y, s), s)));
        assert_eq!(check(&gh, PropertyId::S2Rap).holds, s2rap);
    }
}
