//! Decision procedures for the loop identities and their Smarandache
//! variants, each an exhaustive quantifier sweep with a witness on failure.
//!
//! Quantifiers are swept in the order the variables appear in the identity,
//! each ascending, so the reported witness is the first violation in that
//! order and is reproducible.

use std::fmt;
use std::str::FromStr;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::magma::Loop;
use crate::subloop::SpecialLoop;

/// An equation between two loop words, evaluated at a tuple of elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `[x, y, z]`: `(xy·z)y = x(yz·y)`.
    RightBol,
    /// `[y, x]`: `yx·x^ρ = y`.
    RightInverse,
    /// `[x, y]`: `x^λ·xy = y`.
    LeftInverse,
    /// `[y, x]`: `y·xx = yx·x`.
    RightAlternative,
    /// `[x, y]`: `xx·y = x·xy`.
    LeftAlternative,
    /// `[s, x, y]`: `xy·s² = x·ys²` with `s² = ss`.
    NuclearSquare,
    /// `[s]`: `ss = e`.
    ExponentTwo,
}

impl Law {
    pub fn arity(self) -> usize {
        match self {
            Law::RightBol | Law::NuclearSquare => 3,
            Law::ExponentTwo => 1,
            _ => 2,
        }
    }

    /// Left- and right-hand sides at `vars`.
    pub fn sides(self, l: &Loop, vars: &[usize]) -> (usize, usize) {
        let m = |a, b| l.mul(a, b);
        match (self, vars) {
            (Law::RightBol, &[x, y, z]) => (m(m(m(x, y), z), y), m(x, m(m(y, z), y))),
            (Law::RightInverse, &[y, x]) => (m(m(y, x), l.right_inverse(x)), y),
            (Law::LeftInverse, &[x, y]) => (m(l.left_inverse(x), m(x, y)), y),
            (Law::RightAlternative, &[y, x]) => (m(y, m(x, x)), m(m(y, x), x)),
            (Law::LeftAlternative, &[x, y]) => (m(m(x, x), y), m(x, m(x, y))),
            (Law::NuclearSquare, &[s, x, y]) => {
                let sq = m(s, s);
                (m(m(x, y), sq), m(x, m(y, sq)))
            }
            (Law::ExponentTwo, &[s]) => (m(s, s), l.identity()),
            _ => panic!("{self:?} expects {} variables, got {}", self.arity(), vars.len()),
        }
    }

    pub fn holds_at(self, l: &Loop, vars: &[usize]) -> bool {
        let (lhs, rhs) = self.sides(l, vars);
        lhs == rhs
    }
}

/// The failing instantiation behind a negative [`CheckResult`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `law` has unequal sides at `vars`.
    Law { law: Law, vars: Vec<usize> },
    /// `x·s^n` differs from `x R_s^n` (see [`Loop::power_shift`]).
    Power { x: usize, s: usize, n: i64 },
    /// `xU·yV ≠ (xy)W` for the triple under test.
    Autotopy { x: usize, y: usize },
    /// `(xy·x)T ≠ (xT·yT)·xT` for the map under test.
    SemiAutomorphism { x: usize, y: usize },
    /// Component `component` (0 = U, 1 = V, 2 = W) sends subloop element
    /// `element` outside the subloop.
    Escapes { component: usize, element: usize },
    /// The map does not fix the identity.
    MovesIdentity,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Witness::Law { law, vars } => write!(f, "{law:?} {}", join(vars)),
            Witness::Power { x, s, n } => write!(f, "Power {x} {s} {n}"),
            Witness::Autotopy { x, y } => write!(f, "Autotopy {x} {y}"),
            Witness::SemiAutomorphism { x, y } => write!(f, "SemiAutomorphism {x} {y}"),
            Witness::Escapes { component, element } => {
                write!(f, "Escapes {component} {element}")
            }
            Witness::MovesIdentity => write!(f, "MovesIdentity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Instances evaluated before the sweep stopped.
    pub checked: u64,
}

impl CheckResult {
    pub fn pass(checked: u64) -> Self {
        CheckResult {
            holds: true,
            witness: None,
            checked,
        }
    }

    pub fn fail(witness: Witness, checked: u64) -> Self {
        CheckResult {
            holds: false,
            witness: Some(witness),
            checked,
        }
    }

    /// Conjunction: `self` first, then `next` only if `self` held.
    pub fn and_then(self, next: impl FnOnce() -> CheckResult) -> CheckResult {
        if !self.holds {
            return self;
        }
        let mut r = next();
        r.checked += self.checked;
        r
    }
}

/// Which exponents a power-alternative check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PowerSign {
    Both,
    NonNegative,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerRange {
    max_n: u32,
    sign: PowerSign,
}

impl PowerRange {
    pub const DEFAULT_MAX: u32 = 6;

    pub fn new(max_n: u32, sign: PowerSign) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::UnsupportedProperty(format!(
                "power bound must be at least 1, got {max_n}"
            )));
        }
        Ok(PowerRange { max_n, sign })
    }

    pub fn both(max_n: u32) -> Result<Self> {
        Self::new(max_n, PowerSign::Both)
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn sign(&self) -> PowerSign {
        self.sign
    }

    /// Exponents in sweep order: `0..=max` then `-1..=-max`.
    pub fn exponents(&self) -> Vec<i64> {
        let max = self.max_n as i64;
        let mut out = Vec::new();
        if self.sign != PowerSign::Negative {
            out.extend(0..=max);
        }
        if self.sign != PowerSign::NonNegative {
            out.extend((1..=max).map(|n| -n));
        }
        out
    }
}

impl Default for PowerRange {
    fn default() -> Self {
        PowerRange {
            max_n: Self::DEFAULT_MAX,
            sign: PowerSign::Both,
        }
    }
}

/// A named property of a special loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    Bol,
    S2Bol,
    Rip,
    Lip,
    Ip,
    S2Rip,
    S2Lip,
    S2Ip,
    S3Rip,
    Rap,
    Lap,
    Ap,
    S2Rap,
    S2Lap,
    S2Ap,
    Rpap(PowerRange),
    SRpap(PowerRange),
    NuclearSquare,
    Exponent2,
}

impl PropertyId {
    /// Every property with default power bounds, in report order. Power
    /// properties appear for both signs together and for each sign alone.
    pub fn all() -> Vec<PropertyId> {
        use PropertyId::*;
        let signed = |sign| PowerRange::new(PowerRange::DEFAULT_MAX, sign).expect("nonzero bound");
        vec![
            Bol,
            S2Bol,
            Rip,
            Lip,
            Ip,
            S2Rip,
            S2Lip,
            S2Ip,
            S3Rip,
            Rap,
            Lap,
            Ap,
            S2Rap,
            S2Lap,
            S2Ap,
            Rpap(PowerRange::default()),
            Rpap(signed(PowerSign::NonNegative)),
            Rpap(signed(PowerSign::Negative)),
            SRpap(PowerRange::default()),
            SRpap(signed(PowerSign::NonNegative)),
            SRpap(signed(PowerSign::Negative)),
            NuclearSquare,
            Exponent2,
        ]
    }

    pub fn tag(&self) -> String {
        use PropertyId::*;
        let power = |base: &str, r: &PowerRange| {
            let suffix = match r.sign {
                PowerSign::Both => "",
                PowerSign::NonNegative => "_POS",
                PowerSign::Negative => "_NEG",
            };
            format!("{base}{suffix}:{}", r.max_n)
        };
        match self {
            Bol => "BOL".into(),
            S2Bol => "S2_BOL".into(),
            Rip => "RIP".into(),
            Lip => "LIP".into(),
            Ip => "IP".into(),
            S2Rip => "S2_RIP".into(),
            S2Lip => "S2_LIP".into(),
            S2Ip => "S2_IP".into(),
            S3Rip => "S3_RIP".into(),
            Rap => "RAP".into(),
            Lap => "LAP".into(),
            Ap => "AP".into(),
            S2Rap => "S2_RAP".into(),
            S2Lap => "S2_LAP".into(),
            S2Ap => "S2_AP".into(),
            Rpap(r) => power("RPAP", r),
            SRpap(r) => power("S_RPAP", r),
            NuclearSquare => "NUCLEAR_SQUARE".into(),
            Exponent2 => "EXPONENT2".into(),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    /// Accepts the tags produced by [`PropertyId::tag`]; power tags may omit
    /// the `:N` bound.
    fn from_str(s: &str) -> Result<Self> {
        use PropertyId::*;
        let unsupported = || Error::UnsupportedProperty(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        let (name, bound) = match upper.split_once(':') {
            Some((name, b)) => (name, Some(b.parse::<u32>().map_err(|_| unsupported())?)),
            None => (upper.as_str(), None),
        };
        let power = |sign| PowerRange::new(bound.unwrap_or(PowerRange::DEFAULT_MAX), sign);
        let id = match name {
            "BOL" => Bol,
            "S2_BOL" => S2Bol,
            "RIP" => Rip,
            "LIP" => Lip,
            "IP" => Ip,
            "S2_RIP" => S2Rip,
            "S2_LIP" => S2Lip,
            "S2_IP" => S2Ip,
            "S3_RIP" => S3Rip,
            "RAP" => Rap,
            "LAP" => Lap,
            "AP" => Ap,
            "S2_RAP" => S2Rap,
            "S2_LAP" => S2Lap,
            "S2_AP" => S2Ap,
            "RPAP" => Rpap(power(PowerSign::Both)?),
            "RPAP_POS" => Rpap(power(PowerSign::NonNegative)?),
            "RPAP_NEG" => Rpap(power(PowerSign::Negative)?),
            "S_RPAP" => SRpap(power(PowerSign::Both)?),
            "S_RPAP_POS" => SRpap(power(PowerSign::NonNegative)?),
            "S_RPAP_NEG" => SRpap(power(PowerSign::Negative)?),
            "NUCLEAR_SQUARE" => NuclearSquare,
            "EXPONENT2" => Exponent2,
            _ => return Err(unsupported()),
        };
        if bound.is_some() && !matches!(id, Rpap(_) | SRpap(_)) {
            return Err(unsupported());
        }
        Ok(id)
    }
}

fn sweep2(l: &Loop, law: Law, first: &[usize], second: &[usize]) -> CheckResult {
    let mut checked = 0;
    for &a in first {
        for &b in second {
            checked += 1;
            if !law.holds_at(l, &[a, b]) {
                return CheckResult::fail(
                    Witness::Law {
                        law,
                        vars: vec![a, b],
                    },
                    checked,
                );
            }
        }
    }
    CheckResult::pass(checked)
}

fn sweep3(l: &Loop, law: Law, first: &[usize], second: &[usize], third: &[usize]) -> CheckResult {
    let mut checked = 0;
    for &a in first {
        for &b in second {
            for &c in third {
                checked += 1;
                if !law.holds_at(l, &[a, b, c]) {
                    return CheckResult::fail(
                        Witness::Law {
                            law,
                            vars: vec![a, b, c],
                        },
                        checked,
                    );
                }
            }
        }
    }
    CheckResult::pass(checked)
}

fn power_alternative(l: &Loop, xs: &[usize], ss: &[usize], range: &PowerRange) -> CheckResult {
    let exponents = range.exponents();
    let mut checked = 0;
    for &x in xs {
        for &s in ss {
            for &n in &exponents {
                checked += 1;
                if l.mul(x, l.power(s, n)) != l.power_shift(x, s, n) {
                    return CheckResult::fail(Witness::Power { x, s, n }, checked);
                }
            }
        }
    }
    CheckResult::pass(checked)
}

/// Decides `p` on `gh` by exhaustive sweep.
pub fn check(gh: &SpecialLoop, p: PropertyId) -> CheckResult {
    use PropertyId::*;
    let l = gh.carrier();
    let g: Vec<usize> = (0..l.order()).collect();
    let h = gh.subloop();
    match p {
        Bol => sweep3(l, Law::RightBol, &g, &g, &g),
        S2Bol => sweep3(l, Law::RightBol, &g, h, &g),
        Rip => sweep2(l, Law::RightInverse, &g, &g),
        Lip => sweep2(l, Law::LeftInverse, &g, &g),
        Ip => check(gh, Rip).and_then(|| check(gh, Lip)),
        S2Rip => sweep2(l, Law::RightInverse, &g, h),
        S2Lip => sweep2(l, Law::LeftInverse, h, &g),
        S2Ip => check(gh, S2Rip).and_then(|| check(gh, S2Lip)),
        // sy·y^ρ = s is the right inverse law with the roles swapped.
        S3Rip => sweep2(l, Law::RightInverse, h, &g),
        Rap => sweep2(l, Law::RightAlternative, &g, &g),
        Lap => sweep2(l, Law::LeftAlternative, &g, &g),
        Ap => check(gh, Rap).and_then(|| check(gh, Lap)),
        S2Rap => sweep2(l, Law::RightAlternative, &g, h),
        S2Lap => sweep2(l, Law::LeftAlternative, h, &g),
        S2Ap => check(gh, S2Rap).and_then(|| check(gh, S2Lap)),
        Rpap(r) => power_alternative(l, &g, &g, &r),
        SRpap(r) => power_alternative(l, &g, h, &r),
        NuclearSquare => sweep3(l, Law::NuclearSquare, h, &g, &g),
        Exponent2 => {
            let mut checked = 0;
            for &s in h {
                checked += 1;
                if !Law::ExponentTwo.holds_at(l, &[s]) {
                    return CheckResult::fail(
                        Witness::Law {
                            law: Law::ExponentTwo,
                            vars: vec![s],
                        },
                        checked,
                    );
                }
            }
            CheckResult::pass(checked)
        }
    }
}

/// `N_ρ(G) = {a : y·xa = yx·a for all x, y}`.
pub fn right_nucleus(l: &Loop) -> ElementSet {
    let n = l.order();
    (0..n)
        .filter(|&a| {
            (0..n).all(|x| {
                let xa = l.mul(x, a);
                (0..n).all(|y| l.mul(y, xa) == l.mul(l.mul(y, x), a))
            })
        })
        .collect()
}

/// `SN_ρ(G_H) = N_ρ(G) ∩ H`.
pub fn smarandache_right_nucleus(gh: &SpecialLoop) -> ElementSet {
    right_nucleus(gh.carrier()).intersection(gh.members())
}
