//! Machine checks of the structure theorems for Smarandache Bol loops.
//!
//! Each [`TheoremId`] names one statement. [`verify`] evaluates it on a
//! single special loop and returns a [`Verdict`]: whether the hypothesis
//! held, whether the conclusion held, and a replayable counterexample when
//! it did not. [`sweep`] runs a set of statements over a corpus and tallies
//! the results.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::autotopy::{
    bol_triple, compose_triples, enumerate_triples, enumerate_two_sided, invert_triple,
    is_s2_semi_automorphism, left_inverse_transform_unchecked, map_group_axioms,
    pseudo_automorphisms, restrict_to_subloop, right_inverse_transform_unchecked, saipl_check,
    triple_group_axioms, triple_holds, AutotopismTriple, GroupAxioms, SaiplKind, TripleKind,
};
use crate::error::{Error, Result};
use crate::identities::{check, CheckResult, Law, PowerRange, PropertyId, Witness};
use crate::magma::Permutation;
use crate::subloop::SpecialLoop;

/// A checkable statement. The tag strings are the stable identifiers used
/// on the command line and in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// A second Smarandache Bol loop has a Bol subloop, namely `H`.
    SubloopIsBol,
    /// S2_BOL implies S2_RIP and S2_RAP.
    InverseAndAlternative,
    /// `x·sⁿ = (x·sⁿ⁻¹)·s = (x·s)·sⁿ⁻¹` under S2_BOL.
    PowerShift,
    /// `(x·sᵐ)·sⁿ = x·sᵐ⁺ⁿ` under S2_BOL.
    PowerSum,
    /// S2_BOL implies the Smarandache right power alternative property.
    PowerAlternative,
    /// Full triples are autotopisms of `G` and restrict to autotopisms of
    /// `H`; one-sided triples need not be full autotopisms.
    Containment,
    /// The right and left triple sets are groups.
    TripleGroups,
    /// `(W, J_ρVJ_ρ, U)` and `(J_λUJ_λ, W, V)` preserve membership.
    InverseTransforms,
    /// S2_BOL iff every `(R_s⁻¹, L_sR_s, R_s)` with `s ∈ H` is an autotopism.
    BolTriples,
    /// Under S2_BOL, `J_ρ` is a second semi-automorphism iff S3_RIP holds.
    SemiAutomorphicInverse,
    /// Under S2_BOL, `T` is a second semi-automorphism whenever `(U, T, U)`
    /// is a full triple.
    DiagonalSemiAutomorphism,
    /// Under S2_BOL and the nuclear square law, `L_sR_s⁻¹` is a second
    /// semi-automorphism for each `s ∈ H`.
    NuclearSquareSemiAutomorphism,
    /// As above, with exponent two on `H` in place of the nuclear law.
    ExponentTwoSemiAutomorphism,
    /// Under S2_BOL, each full triple factors through a pseudo-automorphism
    /// with companion `s₁s₂·s₁`.
    Factorization,
    /// The same factorization for triples that are both right and left.
    TwoSidedFactorization,
    /// Observation: are the pseudo-automorphism sets closed?
    PseudoAutomorphismClosure,
    /// Observation: is this an S2_BOL special loop that is not Bol?
    NonBolWitness,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::SubloopIsBol,
        TheoremId::InverseAndAlternative,
        TheoremId::PowerShift,
        TheoremId::PowerSum,
        TheoremId::PowerAlternative,
        TheoremId::Containment,
        TheoremId::TripleGroups,
        TheoremId::InverseTransforms,
        TheoremId::BolTriples,
        TheoremId::SemiAutomorphicInverse,
        TheoremId::DiagonalSemiAutomorphism,
        TheoremId::NuclearSquareSemiAutomorphism,
        TheoremId::ExponentTwoSemiAutomorphism,
        TheoremId::Factorization,
        TheoremId::TwoSidedFactorization,
        TheoremId::PseudoAutomorphismClosure,
        TheoremId::NonBolWitness,
    ];

    pub fn tag(self) -> &'static str {
        use TheoremId::*;
        match self {
            SubloopIsBol => "R1",
            InverseAndAlternative => "T1_4",
            PowerShift => "T1_5",
            PowerSum => "T1_6",
            PowerAlternative => "C1_7",
            Containment => "L1_8",
            TripleGroups => "L1_9",
            InverseTransforms => "L1_10",
            BolTriples => "T1_11",
            SemiAutomorphicInverse => "T1_12",
            DiagonalSemiAutomorphism => "T1_13",
            NuclearSquareSemiAutomorphism => "C1_14",
            ExponentTwoSemiAutomorphism => "C1_15",
            Factorization => "T1_16",
            TwoSidedFactorization => "T1_17",
            PseudoAutomorphismClosure => "Q1",
            NonBolWitness => "Q2",
        }
    }

    /// Observations gather evidence and never fail.
    pub fn is_observation(self) -> bool {
        matches!(
            self,
            TheoremId::PseudoAutomorphismClosure | TheoremId::NonBolWitness
        )
    }

    /// Whether verification enumerates triples or maps, and is therefore
    /// subject to the order cap.
    pub fn needs_enumeration(self) -> bool {
        use TheoremId::*;
        matches!(
            self,
            Containment
                | TripleGroups
                | InverseTransforms
                | DiagonalSemiAutomorphism
                | Factorization
                | TwoSidedFactorization
                | PseudoAutomorphismClosure
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.tag() == upper)
            .ok_or_else(|| Error::UnsupportedTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `|n|` (and `|m|`) used by the power statements.
    pub exponent: u32,
    /// Largest order for enumeration-backed statements.
    pub order_cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            exponent: 5,
            order_cap: crate::autotopy::ENUMERATION_ORDER_CAP,
        }
    }
}

impl Bounds {
    pub fn with_exponent(exponent: u32) -> Result<Self> {
        PowerRange::both(exponent)?;
        Ok(Bounds {
            exponent,
            ..Bounds::default()
        })
    }
}

/// Structured evidence that a conclusion failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `property` fails on the special loop, as shown by `witness`.
    Property {
        property: PropertyId,
        witness: Witness,
    },
    /// `x·sⁿ`, `(x·sⁿ⁻¹)·s` and `(x·s)·sⁿ⁻¹` are not all equal.
    PowerShift { x: usize, s: usize, n: i64 },
    /// `(x·sᵐ)·sⁿ ≠ x·sᵐ⁺ⁿ`.
    PowerSum { x: usize, s: usize, m: i64, n: i64 },
    /// The two sides of an equivalence disagree. `witness` refutes the
    /// false side; `element` is the subloop element it concerns, if any.
    Equivalence {
        lhs: bool,
        rhs: bool,
        element: Option<usize>,
        witness: Option<Witness>,
    },
    /// A triple that should pass the membership test of its kind.
    Triple {
        triple: AutotopismTriple,
        witness: Option<Witness>,
        reason: &'static str,
    },
    /// A map that should be a second semi-automorphism.
    Map {
        map: Permutation,
        element: Option<usize>,
        witness: Witness,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |w: &Option<Witness>| w.as_ref().map_or("-".to_string(), Witness::to_string);
        match self {
            Counterexample::Property { property, witness } => {
                write!(f, "property {property} {witness}")
            }
            Counterexample::PowerShift { x, s, n } => write!(f, "power-shift {x} {s} {n}"),
            Counterexample::PowerSum { x, s, m, n } => write!(f, "power-sum {x} {s} {m} {n}"),
            Counterexample::Equivalence {
                lhs,
                rhs,
                element,
                witness,
            } => {
                let e = element.map_or("-".to_string(), |e| e.to_string());
                write!(f, "equivalence {lhs} {rhs} {e} {}", opt(witness))
            }
            Counterexample::Triple {
                triple,
                witness,
                reason,
            } => write!(f, "triple {reason}: {triple} {}", opt(witness)),
            Counterexample::Map {
                map,
                element,
                witness,
            } => {
                let e = element.map_or("-".to_string(), |e| e.to_string());
                write!(f, "map {map} {e} {witness}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub theorem: TheoremId,
    /// Whether the hypothesis held. Always `false` for observations.
    pub applicable: bool,
    /// Present exactly when `applicable`.
    pub conclusion_holds: Option<bool>,
    /// Present exactly when the conclusion failed.
    pub counterexample: Option<Counterexample>,
    pub stats: BTreeMap<String, u64>,
    /// For the containment statement: a one-sided triple that is not a
    /// full autotopism, if this loop has one.
    pub exhibit: Option<AutotopismTriple>,
    /// Free-form findings of an observation.
    pub observation: Option<String>,
}

impl Verdict {
    fn new(theorem: TheoremId) -> Self {
        Verdict {
            theorem,
            applicable: false,
            conclusion_holds: None,
            counterexample: None,
            stats: BTreeMap::new(),
            exhibit: None,
            observation: None,
        }
    }

    fn not_applicable(theorem: TheoremId) -> Self {
        Self::new(theorem)
    }

    fn decided(theorem: TheoremId, counterexample: Option<Counterexample>) -> Self {
        Verdict {
            applicable: true,
            conclusion_holds: Some(counterexample.is_none()),
            counterexample,
            ..Self::new(theorem)
        }
    }

    fn stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn failed(&self) -> bool {
        self.conclusion_holds == Some(false)
    }

    /// One-word outcome used in reports.
    pub fn outcome(&self) -> &'static str {
        match (self.theorem.is_observation(), self.conclusion_holds) {
            (true, _) => "observed",
            (false, None) => "not-applicable",
            (false, Some(true)) => "holds",
            (false, Some(false)) => "fails",
        }
    }
}

/// Per-loop cache of property checks and enumerations shared by the
/// statements verified on it.
pub struct Context<'a> {
    gh: &'a SpecialLoop,
    bounds: Bounds,
    properties: RefCell<HashMap<PropertyId, CheckResult>>,
    full: OnceCell<Vec<AutotopismTriple>>,
    right: OnceCell<Vec<AutotopismTriple>>,
    left: OnceCell<Vec<AutotopismTriple>>,
    two_sided: OnceCell<Vec<AutotopismTriple>>,
}

type Transform = fn(&SpecialLoop, &AutotopismTriple) -> AutotopismTriple;

fn cached(
    cell: &OnceCell<Vec<AutotopismTriple>>,
    init: impl FnOnce() -> Result<Vec<AutotopismTriple>>,
) -> Result<&[AutotopismTriple]> {
    if cell.get().is_none() {
        let _ = cell.set(init()?);
    }
    Ok(cell.get().expect("initialized above"))
}

impl<'a> Context<'a> {
    pub fn new(gh: &'a SpecialLoop, bounds: Bounds) -> Self {
        Context {
            gh,
            bounds,
            properties: RefCell::new(HashMap::new()),
            full: OnceCell::new(),
            right: OnceCell::new(),
            left: OnceCell::new(),
            two_sided: OnceCell::new(),
        }
    }

    pub fn property(&self, p: PropertyId) -> CheckResult {
        if let Some(r) = self.properties.borrow().get(&p) {
            return r.clone();
        }
        let r = check(self.gh, p);
        self.properties.borrow_mut().insert(p, r.clone());
        r
    }

    fn holds(&self, p: PropertyId) -> bool {
        self.property(p).holds
    }

    fn ensure_cap(&self) -> Result<()> {
        if self.gh.order() > self.bounds.order_cap {
            return Err(Error::OrderTooLarge {
                order: self.gh.order(),
                limit: self.bounds.order_cap,
            });
        }
        Ok(())
    }

    pub fn triples(&self, kind: TripleKind) -> Result<&[AutotopismTriple]> {
        self.ensure_cap()?;
        let cell = match kind {
            TripleKind::Full => &self.full,
            TripleKind::Right => &self.right,
            TripleKind::Left => &self.left,
        };
        cached(cell, || enumerate_triples(self.gh, kind))
    }

    pub fn two_sided(&self) -> Result<&[AutotopismTriple]> {
        self.ensure_cap()?;
        cached(&self.two_sided, || enumerate_two_sided(self.gh))
    }

    pub fn verify(&self, t: TheoremId) -> Result<Verdict> {
        use TheoremId::*;
        match t {
            SubloopIsBol => Ok(self.subloop_is_bol()),
            InverseAndAlternative => Ok(self.inverse_and_alternative()),
            PowerShift => Ok(self.power_shift()),
            PowerSum => Ok(self.power_sum()),
            PowerAlternative => self.power_alternative(),
            Containment => self.containment(),
            TripleGroups => self.triple_groups(),
            InverseTransforms => self.inverse_transforms(),
            BolTriples => self.bol_triples(),
            SemiAutomorphicInverse => Ok(self.semi_automorphic_inverse()),
            DiagonalSemiAutomorphism => self.diagonal_semi_automorphism(),
            NuclearSquareSemiAutomorphism => {
                Ok(self.translation_semi_automorphism(t, PropertyId::NuclearSquare))
            }
            ExponentTwoSemiAutomorphism => {
                Ok(self.translation_semi_automorphism(t, PropertyId::Exponent2))
            }
            Factorization => self.factorization(),
            TwoSidedFactorization => self.two_sided_factorization(),
            PseudoAutomorphismClosure => self.pseudo_automorphism_closure(),
            NonBolWitness => Ok(self.non_bol_witness()),
        }
    }

    fn subloop_is_bol(&self) -> Verdict {
        let t = TheoremId::SubloopIsBol;
        if !self.holds(PropertyId::S2Bol) {
            return Verdict::not_applicable(t);
        }
        let sub = self.gh.subloop();
        let hh = SpecialLoop::whole(self.gh.restricted_loop()).expect("|H| ≥ 2");
        let r = check(&hh, PropertyId::Bol);
        let cx = r.witness.map(|w| match w {
            Witness::Law { law, vars } => Counterexample::Property {
                property: PropertyId::Bol,
                witness: Witness::Law {
                    law,
                    vars: vars.into_iter().map(|i| sub[i]).collect(),
                },
            },
            other => unreachable!("Bol check produced {other:?}"),
        });
        Verdict::decided(t, cx).stat("checked", r.checked)
    }

    fn inverse_and_alternative(&self) -> Verdict {
        let t = TheoremId::InverseAndAlternative;
        if !self.holds(PropertyId::S2Bol) {
            return Verdict::not_applicable(t);
        }
        let cx = [PropertyId::S2Rip, PropertyId::S2Rap]
            .into_iter()
            .find_map(|p| {
                self.property(p).witness.map(|witness| Counterexample::Property {
                    property: p,
                    witness,
                })
            });
        Verdict::decided(t, cx)
    }

    fn exponents(&self) -> std::ops::RangeInclusive<i64> {
        let b = self.bounds.exponent as i64;
        -b..=b
    }

    fn power_shift(&self) -> Verdict {
        let t = TheoremId::PowerShift;
        if !self.holds(PropertyId::S2Bol) {
            return Verdict::not_applicable(t);
        }
        let l = self.gh.carrier();
        let mut checked = 0;
        for x in 0..l.order() {
            for &s in self.gh.subloop() {
                for n in self.exponents() {
                    checked += 1;
                    let a = l.mul(x, l.power(s, n));
                    let b = l.mul(l.mul(x, l.power(s, n - 1)), s);
                    let c = l.mul(l.mul(x, s), l.power(s, n - 1));
                    if a != b || a != c {
                        return Verdict::decided(t, Some(Counterexample::PowerShift { x, s, n }))
                            .stat("checked", checked);
                    }
                }
            }
        }
        Verdict::decided(t, None).stat("checked", checked)
    }

    fn power_sum(&self) -> Verdict {
        let t = TheoremId::PowerSum;
        if !self.holds(PropertyId::S2Bol) {
            return Verdict::not_applicable(t);
        }
        let l = self.gh.carrier();
        let mut checked = 0;
        for x in 0..l.order() {
            for &s in self.gh.subloop() {
                for m in self.exponents() {
                    let xm = l.mul(x, l.power(s, m));
                    for n in self.exponents() {
                        checked += 1;
                        if l.mul(xm, l.power(s, n)) != l.mul(x, l.power(s, m + n)) {
                            return Verdict::decided(
                                t,
                                Some(Counterexample::PowerSum { x, s, m, n }),
                            )
                            .stat("checked", checked);
                        }
                    }
                }
            }
        }
        Verdict::decided(t, None).stat("checked", checked)
    }

    fn power_alternative(&self) -> Result<Verdict> {
        let t = TheoremId::PowerAlternative;
        if !self.holds(PropertyId::S2Bol) {
            return Ok(Verdict::not_applicable(t));
        }
        let p = PropertyId::SRpap(PowerRange::both(self.bounds.exponent)?);
        let r = self.property(p);
        let cx = r.witness.map(|witness| Counterexample::Property {
            property: p,
            witness,
        });
        Ok(Verdict::decided(t, cx).stat("checked", r.checked))
    }

    fn containment(&self) -> Result<Verdict> {
        let t = TheoremId::Containment;
        let full = self.triples(TripleKind::Full)?;
        let hh = SpecialLoop::whole(self.gh.restricted_loop()).expect("|H| ≥ 2");
        let mut cx = None;
        for tr in full {
            let r = triple_holds(self.gh, tr)?;
            if !r.holds {
                cx = Some(Counterexample::Triple {
                    triple: tr.clone(),
                    witness: r.witness,
                    reason: "not an autotopism of G",
                });
                break;
            }
            let restricted = restrict_to_subloop(self.gh, tr);
            let ok = match &restricted {
                Some(rt) => triple_holds(&hh, rt)?.holds,
                None => false,
            };
            if !ok {
                cx = Some(Counterexample::Triple {
                    triple: tr.clone(),
                    witness: None,
                    reason: "restriction is not an autotopism of H",
                });
                break;
            }
        }
        let mut v = Verdict::decided(t, cx).stat("full", full.len() as u64);
        for kind in [TripleKind::Right, TripleKind::Left] {
            let mut not_full = 0;
            let mut restricts = 0;
            let set = self.triples(kind)?;
            for tr in set {
                let as_full = AutotopismTriple {
                    kind: TripleKind::Full,
                    ..tr.clone()
                };
                if !triple_holds(self.gh, &as_full)?.holds {
                    not_full += 1;
                    if v.exhibit.is_none() {
                        v.exhibit = Some(tr.clone());
                    }
                }
                if let Some(rt) = restrict_to_subloop(self.gh, tr) {
                    if triple_holds(&hh, &rt)?.holds {
                        restricts += 1;
                    }
                }
            }
            v = v
                .stat(kind.name(), set.len() as u64)
                .stat(&format!("{}.not_full", kind.name()), not_full)
                .stat(&format!("{}.restricts", kind.name()), restricts);
        }
        Ok(v)
    }

    fn group_failure(axioms: &GroupAxioms, set: &[AutotopismTriple]) -> Option<Counterexample> {
        if !axioms.contains_identity {
            let kind = set.first().map_or(TripleKind::Right, |t| t.kind);
            let n = set.first().map_or(0, AutotopismTriple::order);
            return Some(Counterexample::Triple {
                triple: AutotopismTriple::identity(n, kind),
                witness: None,
                reason: "identity missing",
            });
        }
        if let Some((i, j)) = axioms.composition_escape {
            return Some(Counterexample::Triple {
                triple: compose_triples(&set[i], &set[j]).expect("same kind and order"),
                witness: None,
                reason: "product of two members is not a member",
            });
        }
        axioms.inverse_escape.map(|i| Counterexample::Triple {
            triple: invert_triple(&set[i]),
            witness: None,
            reason: "inverse of a member is not a member",
        })
    }

    fn triple_groups(&self) -> Result<Verdict> {
        let t = TheoremId::TripleGroups;
        let mut cx = None;
        let mut sizes = Vec::new();
        for kind in [TripleKind::Right, TripleKind::Left] {
            let set = self.triples(kind)?;
            sizes.push((kind, set.len() as u64));
            if cx.is_none() {
                cx = Self::group_failure(&triple_group_axioms(set), set);
            }
        }
        let mut v = Verdict::decided(t, cx);
        for (kind, n) in sizes {
            v = v.stat(kind.name(), n);
        }
        Ok(v)
    }

    fn inverse_transforms(&self) -> Result<Verdict> {
        let t = TheoremId::InverseTransforms;
        let rip = self.holds(PropertyId::S2Rip);
        let lip = self.holds(PropertyId::S2Lip);
        if !rip && !lip {
            return Ok(Verdict::not_applicable(t));
        }
        let mut checked = 0;
        let sides: [(bool, TripleKind, Transform); 2] = [
            (rip, TripleKind::Right, right_inverse_transform_unchecked),
            (lip, TripleKind::Left, left_inverse_transform_unchecked),
        ];
        for (enabled, kind, transform) in sides {
            if !enabled {
                continue;
            }
            for tr in self.triples(kind)? {
                checked += 1;
                let image = transform(self.gh, tr);
                let r = triple_holds(self.gh, &image)?;
                if !r.holds {
                    return Ok(Verdict::decided(
                        t,
                        Some(Counterexample::Triple {
                            triple: image,
                            witness: r.witness,
                            reason: "transformed triple is not a member",
                        }),
                    )
                    .stat("checked", checked));
                }
            }
        }
        Ok(Verdict::decided(t, None)
            .stat("checked", checked)
            .stat("right", rip as u64)
            .stat("left", lip as u64))
    }

    fn bol_triples(&self) -> Result<Verdict> {
        let t = TheoremId::BolTriples;
        let lhs = self.property(PropertyId::S2Bol);
        let mut failing = None;
        for &s in self.gh.subloop() {
            let r = triple_holds(self.gh, &bol_triple(self.gh, s)?)?;
            if !r.holds {
                failing = Some((s, r.witness.expect("failed check has a witness")));
                break;
            }
        }
        let rhs = failing.is_none();
        let cx = (lhs.holds != rhs).then(|| match (&failing, lhs.witness.clone()) {
            (Some((s, w)), _) => Counterexample::Equivalence {
                lhs: lhs.holds,
                rhs,
                element: Some(*s),
                witness: Some(w.clone()),
            },
            (None, w) => Counterexample::Equivalence {
                lhs: lhs.holds,
                rhs,
                element: None,
                witness: w,
            },
        });
        Ok(Verdict::decided(t, cx)
            .stat("s2_bol", lhs.holds as u64)
            .stat("all_triples", rhs as u64))
    }

    fn semi_automorphic_inverse(&self) -> Verdict {
        let t = TheoremId::SemiAutomorphicInverse;
        if !self.holds(PropertyId::S2Bol) {
            return Verdict::not_applicable(t);
        }
        let lhs = saipl_check(self.gh, SaiplKind::Second);
        let rhs = self.property(PropertyId::S3Rip);
        let cx = (lhs.holds != rhs.holds).then(|| Counterexample::Equivalence {
            lhs: lhs.holds,
            rhs: rhs.holds,
            element: None,
            witness: lhs.witness.clone().or(rhs.witness.clone()),
        });
        Verdict::decided(t, cx)
            .stat("saipl", lhs.holds as u64)
            .stat("s3_rip", rhs.holds as u64)
    }

    fn diagonal_semi_automorphism(&self) -> Result<Verdict> {
        let t = TheoremId::DiagonalSemiAutomorphism;
        if !self.holds(PropertyId::S2Bol) {
            return Ok(Verdict::not_applicable(t));
        }
        let mut checked = 0;
        for tr in self.triples(TripleKind::Full)?.iter().filter(|tr| tr.u == tr.w) {
            checked += 1;
            let r = is_s2_semi_automorphism(self.gh, &tr.v)?;
            if let Some(witness) = r.witness {
                return Ok(Verdict::decided(
                    t,
                    Some(Counterexample::Map {
                        map: tr.v.clone(),
                        element: None,
                        witness,
                    }),
                )
                .stat("checked", checked));
            }
        }
        Ok(Verdict::decided(t, None).stat("checked", checked))
    }

    fn translation_semi_automorphism(&self, t: TheoremId, extra: PropertyId) -> Verdict {
        if !self.holds(PropertyId::S2Bol) || !self.holds(extra) {
            return Verdict::not_applicable(t);
        }
        let l = self.gh.carrier();
        for &s in self.gh.subloop() {
            let map = l.left_translation(s).then(&l.right_translation(s).inverse());
            let r = is_s2_semi_automorphism(self.gh, &map).expect("L_sR_s⁻¹ fixes H");
            if let Some(witness) = r.witness {
                return Verdict::decided(
                    t,
                    Some(Counterexample::Map {
                        map,
                        element: Some(s),
                        witness,
                    }),
                );
            }
        }
        Verdict::decided(t, None).stat("checked", self.gh.subloop().len() as u64)
    }

    /// `(A, c, (A, AR_c, AR_c))` for a triple with `s₁ = eU`, `s₂ = eV`,
    /// `A = UR_{s₁}⁻¹` and `c = s₁s₂·s₁`.
    fn companion_data(&self, tr: &AutotopismTriple) -> (usize, AutotopismTriple) {
        let l = self.gh.carrier();
        let e = l.identity();
        let s1 = tr.u.apply(e);
        let s2 = tr.v.apply(e);
        let a = tr.u.then(&l.right_translation(s1).inverse());
        let c = l.mul(l.mul(s1, s2), s1);
        let arc = a.then(&l.right_translation(c));
        (
            s1,
            AutotopismTriple {
                u: a,
                v: arc.clone(),
                w: arc,
                kind: TripleKind::Full,
            },
        )
    }

    fn factorization(&self) -> Result<Verdict> {
        let t = TheoremId::Factorization;
        if !self.holds(PropertyId::S2Bol) {
            return Ok(Verdict::not_applicable(t));
        }
        let full = self.triples(TripleKind::Full)?;
        for tr in full {
            let (s1, companion) = self.companion_data(tr);
            let r = triple_holds(self.gh, &companion)?;
            if !r.holds {
                return Ok(Verdict::decided(
                    t,
                    Some(Counterexample::Triple {
                        triple: companion,
                        witness: r.witness,
                        reason: "companion triple is not a full autotopism",
                    }),
                ));
            }
            let product = compose_triples(&companion, &invert_triple(&bol_triple(self.gh, s1)?))?;
            if product != *tr {
                return Ok(Verdict::decided(
                    t,
                    Some(Counterexample::Triple {
                        triple: tr.clone(),
                        witness: None,
                        reason: "factorization does not reproduce the triple",
                    }),
                ));
            }
        }
        Ok(Verdict::decided(t, None).stat("checked", full.len() as u64))
    }

    fn two_sided_factorization(&self) -> Result<Verdict> {
        let t = TheoremId::TwoSidedFactorization;
        if !self.holds(PropertyId::S2Bol) {
            return Ok(Verdict::not_applicable(t));
        }
        let set = self.two_sided()?;
        for tr in set {
            let (s1, companion) = self.companion_data(tr);
            for kind in [TripleKind::Right, TripleKind::Left] {
                let c = AutotopismTriple {
                    kind,
                    ..companion.clone()
                };
                let r = triple_holds(self.gh, &c)?;
                if !r.holds {
                    return Ok(Verdict::decided(
                        t,
                        Some(Counterexample::Triple {
                            triple: c,
                            witness: r.witness,
                            reason: "companion triple is not a member",
                        }),
                    ));
                }
            }
            let b = invert_triple(&bol_triple(self.gh, s1)?);
            let product = compose_triples(&companion, &b)?;
            if (&product.u, &product.v, &product.w) != (&tr.u, &tr.v, &tr.w) {
                return Ok(Verdict::decided(
                    t,
                    Some(Counterexample::Triple {
                        triple: tr.clone(),
                        witness: None,
                        reason: "factorization does not reproduce the triple",
                    }),
                ));
            }
        }
        Ok(Verdict::decided(t, None).stat("checked", set.len() as u64))
    }

    fn pseudo_automorphism_closure(&self) -> Result<Verdict> {
        self.ensure_cap()?;
        let mut v = Verdict::new(TheoremId::PseudoAutomorphismClosure);
        let mut notes = Vec::new();
        for (kind, name) in [
            (TripleKind::Full, "first"),
            (TripleKind::Right, "right"),
            (TripleKind::Left, "left"),
        ] {
            let maps: Vec<Permutation> = pseudo_automorphisms(self.gh, kind)?
                .into_iter()
                .map(|r| r.map)
                .collect();
            let g = map_group_axioms(&maps);
            let yes_no = |b: bool| if b { "closed" } else { "not closed" };
            notes.push(format!(
                "{name} {} maps, composition {}, inverse {}",
                g.size,
                yes_no(g.closed_under_composition()),
                yes_no(g.closed_under_inverse()),
            ));
            v = v
                .stat(&format!("{name}.size"), g.size as u64)
                .stat(
                    &format!("{name}.closed_composition"),
                    g.closed_under_composition() as u64,
                )
                .stat(&format!("{name}.closed_inverse"), g.closed_under_inverse() as u64);
        }
        v.observation = Some(notes.join("; "));
        Ok(v)
    }

    fn non_bol_witness(&self) -> Verdict {
        let mut v = Verdict::new(TheoremId::NonBolWitness);
        let found =
            !self.gh.is_whole() && self.holds(PropertyId::S2Bol) && !self.holds(PropertyId::Bol);
        v.observation = Some(if found {
            "S2_BOL holds with H a proper subloop, BOL fails".to_string()
        } else {
            "no finding".to_string()
        });
        v.stat("findings", found as u64)
    }
}

pub fn verify(gh: &SpecialLoop, t: TheoremId, bounds: Bounds) -> Result<Verdict> {
    Context::new(gh, bounds).verify(t)
}

/// Verifies several statements on one loop, sharing cached work.
pub fn verify_many(gh: &SpecialLoop, tags: &[TheoremId], bounds: Bounds) -> Result<Vec<Verdict>> {
    let ctx = Context::new(gh, bounds);
    tags.iter().map(|&t| ctx.verify(t)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub applicable: u64,
    pub not_applicable: u64,
    pub held: u64,
    pub failed: u64,
    pub observed: u64,
}

/// A one-sided triple that is not a full autotopism, found in a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonContainment {
    pub index: usize,
    pub triple: AutotopismTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub corpus_size: usize,
    pub tags: Vec<TheoremId>,
    pub tallies: BTreeMap<TheoremId, Tally>,
    /// Failed verdicts with their corpus index, in corpus order.
    pub failures: Vec<(usize, Verdict)>,
    /// `None` when the containment statement was not swept; otherwise the
    /// first exhibit in corpus order, if any.
    pub non_containment: Option<Option<NonContainment>>,
    /// Corpus indices of non-Bol findings, when that observation was swept.
    pub non_bol: Vec<usize>,
    /// Observation stats summed over the corpus.
    pub observations: BTreeMap<String, u64>,
}

/// Verifies `tags` on every member of `corpus`.
///
/// Loops are processed in parallel; results are merged by corpus index, so
/// the report does not depend on scheduling.
pub fn sweep(corpus: &[SpecialLoop], tags: &[TheoremId], bounds: Bounds) -> Result<SweepReport> {
    let per_loop: Vec<Vec<Verdict>> = corpus
        .par_iter()
        .map(|gh| verify_many(gh, tags, bounds))
        .collect::<Result<_>>()?;
    let mut report = SweepReport {
        corpus_size: corpus.len(),
        tags: tags.to_vec(),
        tallies: tags.iter().map(|&t| (t, Tally::default())).collect(),
        failures: Vec::new(),
        non_containment: tags
            .contains(&TheoremId::Containment)
            .then_some(None),
        non_bol: Vec::new(),
        observations: BTreeMap::new(),
    };
    for (index, verdicts) in per_loop.into_iter().enumerate() {
        for v in verdicts {
            let tally = report.tallies.get_mut(&v.theorem).expect("tag swept");
            if v.theorem.is_observation() {
                tally.observed += 1;
                for (k, n) in &v.stats {
                    *report
                        .observations
                        .entry(format!("{}.{k}", v.theorem))
                        .or_default() += n;
                }
                if v.theorem == TheoremId::NonBolWitness && v.stats.get("findings") == Some(&1) {
                    report.non_bol.push(index);
                }
                continue;
            }
            match v.conclusion_holds {
                None => tally.not_applicable += 1,
                Some(held) => {
                    tally.applicable += 1;
                    if held {
                        tally.held += 1;
                    } else {
                        tally.failed += 1;
                    }
                }
            }
            if let (Some(slot @ None), Some(triple)) =
                (report.non_containment.as_mut(), v.exhibit.as_ref())
            {
                *slot = Some(NonContainment {
                    index,
                    triple: triple.clone(),
                });
            }
            if v.failed() {
                report.failures.push((index, v));
            }
        }
    }
    Ok(report)
}

impl SweepReport {
    pub fn total_failures(&self) -> u64 {
        self.tallies.values().map(|t| t.failed).sum()
    }
}

/// The law each one-line witness in a [`Counterexample::Property`] refers to.
pub fn property_law(p: PropertyId) -> Option<Law> {
    use PropertyId::*;
    match p {
        Bol | S2Bol => Some(Law::RightBol),
        Rip | S2Rip | S3Rip => Some(Law::RightInverse),
        Lip | S2Lip => Some(Law::LeftInverse),
        Rap | S2Rap => Some(Law::RightAlternative),
        Lap | S2Lap => Some(Law::LeftAlternative),
        NuclearSquare => Some(Law::NuclearSquare),
        Exponent2 => Some(Law::ExponentTwo),
        _ => None,
    }
}
