//! Element calculus for monads cut out of a (semi)ring by a multiplicative
//! submonoid `S`: `S̄(n) = {t ∈ S^n : t(x) = Σ t_i x_i ∈ S for all x ∈ S^n}`.
//!
//! Rational tags (`d`, `dstar`, `zinf`, `oprime`) use closed-form membership
//! predicates. Finite tags (`f1r:<r>`, pointed monoids, partial semirings)
//! work on element indices of a finite carrier.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::psets::PointedMonoid;
use crate::report::{Check, Report};

pub const DEFAULT_SEED: u64 = 42;

pub const AX_UNIT: &str = "unit-law";
pub const AX_PROJECTION: &str = "projection-law";
pub const AX_ASSOCIATIVITY: &str = "associativity";
pub const AX_CLOSURE: &str = "closure-under-substitution";

/// A finite multiplicative monoid with zero and a partial addition
/// (`None` is `∞`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSemiring {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub mul: Vec<Vec<usize>>,
    pub add: Vec<Vec<Option<usize>>>,
    /// Display names of the elements.
    pub names: Vec<String>,
}

impl PartialSemiring {
    pub fn new(mul: Vec<Vec<usize>>, add: Vec<Vec<Option<usize>>>, zero: usize, one: usize) -> Result<Self> {
        let size = mul.len();
        let bad = |m: &str| Err(Error::InvalidStructure(m.into()));
        if zero >= size
            || one >= size
            || mul.iter().any(|r| r.len() != size || r.iter().any(|&v| v >= size))
            || add.len() != size
            || add.iter().any(|r| r.len() != size || r.iter().flatten().any(|&v| v >= size))
        {
            return bad("tables must be square over the carrier");
        }
        for a in 0..size {
            if add[zero][a] != Some(a) {
                return bad("0 is not neutral for the partial addition");
            }
            if mul[one][a] != a || mul[a][one] != a {
                return bad("1 is not a unit");
            }
            if mul[zero][a] != zero || mul[a][zero] != zero {
                return bad("0 is not absorbing");
            }
            for b in 0..size {
                if add[a][b] != add[b][a] {
                    return bad("partial addition is not commutative");
                }
                for c in 0..size {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative");
                    }
                    let left = add[a][b].and_then(|ab| add[ab][c]);
                    let right = add[b][c].and_then(|bc| add[a][bc]);
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return bad("partial addition is not associative where defined");
                        }
                    }
                    if let Some(bc) = add[b][c] {
                        if add[mul[a][b]][mul[a][c]] != Some(mul[a][bc]) || add[mul[b][a]][mul[c][a]] != Some(mul[bc][a]) {
                            return bad("distributivity fails where the sum is defined");
                        }
                    }
                }
            }
        }
        let names = (0..size).map(|i| i.to_string()).collect();
        Ok(PartialSemiring { size, zero, one, mul, add, names })
    }

    /// `G_*` with `g + h = ∞` for nonzero `g, h`.
    pub fn gstar(g: &PointedMonoid) -> Self {
        let add = (0..g.order)
            .map(|a| {
                (0..g.order)
                    .map(|b| match (a == g.zero, b == g.zero) {
                        (true, _) => Some(b),
                        (_, true) => Some(a),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        PartialSemiring::new(g.mul.clone(), add, g.zero, g.one).expect("pointed monoid gives a partial semiring")
    }

    /// `F_{1^r} = (μ_r)_*`; element `k + 1` is `ζ^k`.
    pub fn f1r(r: usize) -> Self {
        let mut s = PartialSemiring::gstar(&PointedMonoid::mu(r));
        s.names = core::iter::once("0".to_string()).chain((0..r).map(|k| format!("z^{k}"))).collect();
        s
    }

    /// A finite set of integers closed under multiplication and containing
    /// 0 and 1, with the addition of `ℤ` where it stays inside.
    pub fn from_integers(values: &[i64]) -> Result<Self> {
        let pos = |v: i64| values.iter().position(|&w| w == v);
        let (Some(zero), Some(one)) = (pos(0), pos(1)) else {
            return Err(Error::InvalidStructure("0 and 1 must belong to the set".into()));
        };
        let mut mul = Vec::new();
        for &a in values {
            let mut row = Vec::new();
            for &b in values {
                row.push(pos(a * b).ok_or_else(|| Error::InvalidStructure("not closed under multiplication".into()))?);
            }
            mul.push(row);
        }
        let add = values.iter().map(|&a| values.iter().map(|&b| pos(a + b)).collect()).collect();
        let mut s = PartialSemiring::new(mul, add, zero, one)?;
        s.names = values.iter().map(|v| v.to_string()).collect();
        Ok(s)
    }

    /// The unit ball `{0, 1}` of `ℕ` under the usual absolute value, with
    /// `1 + 1 = ∞`.
    pub fn naturals_unit_ball() -> Self {
        PartialSemiring::from_integers(&[0, 1]).expect("valid")
    }

    pub fn boolean() -> Self {
        let mut s = PartialSemiring::new(
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
            0,
            1,
        )
        .expect("valid");
        s.names = vec!["0".into(), "1".into()];
        s
    }

    pub fn f2() -> Self {
        PartialSemiring::from_integers(&[0, 1]).map(|mut s| {
            s.add[1][1] = Some(0);
            s
        })
        .expect("valid")
    }

    /// Right-nested sum `a_1 + (a_2 + (... ))`, `None` for `∞`.
    pub fn sum(&self, terms: impl DoubleEndedIterator<Item = usize>) -> Option<usize> {
        let mut acc = self.zero;
        for a in terms.rev() {
            acc = self.add[a][acc]?;
        }
        Some(acc)
    }

    /// `Σ t_i x_i`.
    pub fn eval(&self, t: &[usize], x: &[usize]) -> Option<usize> {
        let products: Vec<usize> = t.iter().zip(x).map(|(&a, &b)| self.mul[a][b]).collect();
        self.sum(products.into_iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonadTag {
    /// Distributions: `t ≥ 0`, `Σ t = 1`.
    D,
    /// Sub-distributions: `t ≥ 0`, `Σ t ≤ 1`.
    Dstar,
    /// `‖t‖₁ ≤ 1`.
    Zinf,
    /// `O'_ℚ` for the usual absolute value: `Σ |t_i| ≤ 1`.
    OprimeQ,
    /// `F_{1^r}`.
    F1r(usize),
    /// `G_*` for a pointed monoid.
    Gstar(PointedMonoid),
    /// `S̄` for a finite partial semiring, by brute force over `S^n`.
    Partial(PartialSemiring),
}

impl MonadTag {
    /// Parses `d`, `dstar`, `zinf`, `oprime`, `f1r:<r>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(MonadTag::D),
            "dstar" => Ok(MonadTag::Dstar),
            "zinf" => Ok(MonadTag::Zinf),
            "oprime" => Ok(MonadTag::OprimeQ),
            _ => match s.strip_prefix("f1r:").map(str::parse::<usize>) {
                Some(Ok(r)) if r >= 1 => Ok(MonadTag::F1r(r)),
                _ => Err(Error::UnsupportedTag(s.into())),
            },
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, MonadTag::D | MonadTag::Dstar | MonadTag::Zinf | MonadTag::OprimeQ)
    }

    /// The finite carrier of a finite tag.
    pub fn scalars(&self) -> Option<PartialSemiring> {
        match self {
            MonadTag::F1r(r) => Some(PartialSemiring::f1r(*r)),
            MonadTag::Gstar(g) => Some(PartialSemiring::gstar(g)),
            MonadTag::Partial(s) => Some(s.clone()),
            _ => None,
        }
    }

    /// `S̄(0) = {0}`.
    pub fn is_pointed(&self) -> bool {
        !matches!(self, MonadTag::D)
    }
}

impl fmt::Display for MonadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonadTag::D => write!(f, "d"),
            MonadTag::Dstar => write!(f, "dstar"),
            MonadTag::Zinf => write!(f, "zinf"),
            MonadTag::OprimeQ => write!(f, "oprime"),
            MonadTag::F1r(r) => write!(f, "f1r:{r}"),
            MonadTag::Gstar(g) => write!(f, "gstar:{}", g.order),
            MonadTag::Partial(s) => write!(f, "partial:{}", s.size),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeffs {
    Rational(Vec<Q>),
    /// Element indices of a finite carrier.
    Finite(Vec<usize>),
}

impl Coeffs {
    pub fn len(&self) -> usize {
        match self {
            Coeffs::Rational(v) => v.len(),
            Coeffs::Finite(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadElement {
    pub tag: MonadTag,
    pub t: Coeffs,
}

impl MonadElement {
    pub fn arity(&self) -> usize {
        self.t.len()
    }

    pub fn rational(tag: MonadTag, t: Vec<Q>) -> Result<Self> {
        let m = membership_rational(&tag, &t)?;
        if !m.member {
            return Err(Error::ClosureViolation(m.reason));
        }
        Ok(MonadElement { tag, t: Coeffs::Rational(t) })
    }

    pub fn finite(tag: MonadTag, t: Vec<usize>) -> Result<Self> {
        let m = membership_finite(&tag, &t)?;
        if !m.member {
            return Err(Error::ClosureViolation(m.reason));
        }
        Ok(MonadElement { tag, t: Coeffs::Finite(t) })
    }

    /// The unit `e_i ∈ S̄(n)`.
    pub fn basis(tag: &MonadTag, n: usize, i: usize) -> Self {
        let t = match tag.scalars() {
            None => Coeffs::Rational((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()),
            Some(s) => Coeffs::Finite((0..n).map(|j| if i == j { s.one } else { s.zero }).collect()),
        };
        MonadElement { tag: tag.clone(), t }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub reason: String,
}

fn verdict(member: bool, reason: String) -> Membership {
    Membership { member, reason }
}

fn l1(t: &[Q]) -> Q {
    t.iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

fn membership_rational(tag: &MonadTag, t: &[Q]) -> Result<Membership> {
    let sum = t.iter().fold(Q::zero(), |acc, x| acc + x);
    let negative = t.iter().position(|x| x.is_negative());
    Ok(match tag {
        MonadTag::D => match negative {
            Some(i) => verdict(false, format!("t_{i} = {} < 0", t[i])),
            None => verdict(sum.is_one(), format!("sum = {sum}")),
        },
        MonadTag::Dstar => match negative {
            Some(i) => verdict(false, format!("t_{i} = {} < 0", t[i])),
            None => verdict(sum <= Q::one(), format!("sum = {sum}")),
        },
        MonadTag::Zinf | MonadTag::OprimeQ => {
            let n = l1(t);
            verdict(n <= Q::one(), format!("l1 norm = {n}"))
        }
        _ => return Err(Error::UnsupportedTag(format!("{tag} has finite coefficients"))),
    })
}

fn membership_finite(tag: &MonadTag, t: &[usize]) -> Result<Membership> {
    let s = tag
        .scalars()
        .ok_or_else(|| Error::UnsupportedTag(format!("{tag} has rational coefficients")))?;
    if let Some(i) = t.iter().position(|&a| a >= s.size) {
        return Ok(verdict(false, format!("t_{i} is not an element of the carrier")));
    }
    match tag {
        MonadTag::Partial(_) => Ok(brute_force_membership(&s, t)),
        _ => {
            let support: Vec<usize> = (0..t.len()).filter(|&i| t[i] != s.zero).collect();
            Ok(match support.len() {
                0 => verdict(true, "t = 0".into()),
                1 => verdict(true, format!("t = e_{}({})", support[0], s.names[t[support[0]]])),
                k => verdict(false, format!("{k} nonzero entries")),
            })
        }
    }
}

/// `t(x) ∈ S` for every `x ∈ S^n`, with the first failing `x` as witness.
pub fn brute_force_membership(s: &PartialSemiring, t: &[usize]) -> Membership {
    let n = t.len();
    let mut x = vec![0usize; n];
    loop {
        if s.eval(t, &x).is_none() {
            return verdict(false, format!("t(x) is undefined at x = {x:?}"));
        }
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] < s.size {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return verdict(true, format!("t(x) in S for all {} points", s.size.pow(n as u32)));
        }
    }
}

pub fn membership(tag: &MonadTag, t: &Coeffs) -> Result<Membership> {
    match t {
        Coeffs::Rational(v) => membership_rational(tag, v),
        Coeffs::Finite(v) => membership_finite(tag, v),
    }
}

/// Every element of `S̄(n)` for a finite tag.
pub fn enumerate_members(tag: &MonadTag, n: usize) -> Result<Vec<Vec<usize>>> {
    let s = tag.scalars().ok_or_else(|| Error::UnsupportedTag(format!("{tag} is not finite")))?;
    let mut out = Vec::new();
    let mut t = vec![0usize; n];
    loop {
        if membership_finite(tag, &t)?.member {
            out.push(t.clone());
        }
        let mut k = 0;
        while k < n {
            t[k] += 1;
            if t[k] < s.size {
                break;
            }
            t[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(out);
        }
    }
}

/// Parses comma separated coefficients: rationals `p/q` for rational tags,
/// element indices for finite ones.
pub fn parse_coeffs(tag: &MonadTag, text: &str) -> Result<Coeffs> {
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    let bad = |x: &str| Error::InvalidInput(format!("cannot parse coefficient {x:?}"));
    if tag.is_rational() {
        items
            .iter()
            .map(|x| x.parse::<Q>().map_err(|_| bad(x)))
            .collect::<Result<_>>()
            .map(Coeffs::Rational)
    } else {
        items
            .iter()
            .map(|x| x.parse::<usize>().map_err(|_| bad(x)))
            .collect::<Result<_>>()
            .map(Coeffs::Finite)
    }
}

/// `s(t)_j = Σ_i s_i t_ij`, with the target arity read off `ts` (0 when
/// `ts` is empty).
pub fn substitute(s: &MonadElement, ts: &[MonadElement]) -> Result<MonadElement> {
    let n = ts.first().map_or(0, MonadElement::arity);
    substitute_into(s, ts, n)
}

/// `s(t)` as an element of `S̄(n)`.
pub fn substitute_into(s: &MonadElement, ts: &[MonadElement], n: usize) -> Result<MonadElement> {
    if ts.iter().any(|t| t.tag != s.tag) {
        return Err(Error::TagMismatch);
    }
    if ts.len() != s.arity() {
        return Err(Error::ArityMismatch {
            expected: s.arity(),
            got: ts.len(),
        });
    }
    if let Some(bad) = ts.iter().find(|t| t.arity() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            got: bad.arity(),
        });
    }
    let t = match &s.t {
        Coeffs::Rational(sv) => {
            let rows: Vec<&Vec<Q>> = ts
                .iter()
                .map(|t| match &t.t {
                    Coeffs::Rational(v) => Ok(v),
                    Coeffs::Finite(_) => Err(Error::TagMismatch),
                })
                .collect::<Result<_>>()?;
            Coeffs::Rational((0..n).map(|j| sv.iter().zip(&rows).fold(Q::zero(), |acc, (si, r)| acc + si * &r[j])).collect())
        }
        Coeffs::Finite(sv) => {
            let scalars = s.tag.scalars().ok_or(Error::TagMismatch)?;
            let rows: Vec<&Vec<usize>> = ts
                .iter()
                .map(|t| match &t.t {
                    Coeffs::Finite(v) => Ok(v),
                    Coeffs::Rational(_) => Err(Error::TagMismatch),
                })
                .collect::<Result<_>>()?;
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let col: Vec<usize> = rows.iter().map(|r| r[j]).collect();
                let v = scalars
                    .eval(sv, &col)
                    .ok_or_else(|| Error::ClosureViolation(format!("coordinate {j} of the substitution is undefined")))?;
                out.push(v);
            }
            Coeffs::Finite(out)
        }
    };
    let m = membership(&s.tag, &t)?;
    if !m.member {
        return Err(Error::ClosureViolation(m.reason));
    }
    Ok(MonadElement { tag: s.tag.clone(), t })
}

/// A random rational with denominator `den` summing into a random element
/// of `S̄(n)`; `None` when `S̄(n)` is empty.
pub fn sample_member(tag: &MonadTag, n: usize, rng: &mut ChaCha8Rng) -> Option<MonadElement> {
    if let Some(s) = tag.scalars() {
        let t = match tag {
            MonadTag::Partial(_) => {
                let all = enumerate_members(tag, n).ok()?;
                all[rng.random_range(0..all.len())].clone()
            }
            _ => {
                let mut t = vec![s.zero; n];
                if n > 0 && rng.random_range(0..=n) > 0 {
                    let nonzero: Vec<usize> = (0..s.size).filter(|&a| a != s.zero).collect();
                    t[rng.random_range(0..n)] = nonzero[rng.random_range(0..nonzero.len())];
                }
                t
            }
        };
        return Some(MonadElement { tag: tag.clone(), t: Coeffs::Finite(t) });
    }
    let den: i64 = rng.random_range(1..=16);
    let total = match tag {
        MonadTag::D => den,
        _ => rng.random_range(0..=den),
    };
    if n == 0 {
        return (total == 0 || tag.is_pointed()).then(|| MonadElement {
            tag: tag.clone(),
            t: Coeffs::Rational(Vec::new()),
        });
    }
    // split `total` into n nonnegative parts
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.random_range(0..=total)).collect();
    cuts.sort();
    let mut parts = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain(core::iter::once(total)) {
        parts.push(c - prev);
        prev = c;
    }
    let signed = matches!(tag, MonadTag::Zinf | MonadTag::OprimeQ);
    let t = parts
        .into_iter()
        .map(|p| {
            let p = if signed && rng.random_bool(0.5) { -p } else { p };
            Q::new(BigInt::from(p), BigInt::from(den))
        })
        .collect();
    Some(MonadElement { tag: tag.clone(), t: Coeffs::Rational(t) })
}

fn fmt_elem(e: &MonadElement) -> String {
    match &e.t {
        Coeffs::Rational(v) => {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
        Coeffs::Finite(v) => format!("{v:?}"),
    }
}

struct LawChecks {
    unit: Check,
    projection: Check,
    assoc: Check,
    closure: Check,
}

impl LawChecks {
    fn new() -> Self {
        LawChecks {
            unit: Check::new(AX_UNIT),
            projection: Check::new(AX_PROJECTION),
            assoc: Check::new(AX_ASSOCIATIVITY),
            closure: Check::new(AX_CLOSURE),
        }
    }

    /// Checks the unit and projection laws for `t`.
    fn unary(&mut self, t: &MonadElement) {
        let one = MonadElement::basis(&t.tag, 1, 0);
        match substitute(&one, core::slice::from_ref(t)) {
            Ok(r) => self.unit.record(r == *t, || format!("1({}) = {}", fmt_elem(t), fmt_elem(&r))),
            Err(e) => self.closure.fail(|| format!("{e}")),
        }
        let n = t.arity();
        let es: Vec<MonadElement> = (0..n).map(|i| MonadElement::basis(&t.tag, n, i)).collect();
        match substitute(t, &es) {
            Ok(r) => self.projection.record(r == *t, || format!("{}(e) = {}", fmt_elem(t), fmt_elem(&r))),
            Err(e) => self.closure.fail(|| format!("{e}")),
        }
    }

    /// `s(t(u)) = (s(t))(u)`.
    fn assoc(&mut self, s: &MonadElement, t: &[MonadElement], u: &[MonadElement], k: usize, n: usize) {
        let lhs = t
            .iter()
            .map(|ti| substitute_into(ti, u, n))
            .collect::<Result<Vec<_>>>()
            .and_then(|tu| substitute_into(s, &tu, n));
        let rhs = substitute_into(s, t, k).and_then(|st| substitute_into(&st, u, n));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                self.closure.pass();
                self.assoc.record(l == r, || format!("s={} gives {} vs {}", fmt_elem(s), fmt_elem(&l), fmt_elem(&r)))
            }
            (Err(e), _) | (_, Err(e)) => self.closure.fail(|| format!("{e}")),
        }
    }

    fn finish(self, report: &mut Report) {
        for c in [self.unit, self.projection, self.assoc, self.closure] {
            report.push(c);
        }
    }
}

/// Random checks of the unit, projection and associativity laws on sampled
/// members of arity at most `n_max`. Finite tags are additionally checked
/// exhaustively at arities up to `min(n_max, 3)`.
pub fn axiom_fuzz(tag: &MonadTag, n_max: usize, trials: usize, seed: u64) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("monad:{tag}"));
    let mut checks = LawChecks::new();
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < trials && attempts < trials * 20 {
        attempts += 1;
        let (m, k, n) = (
            rng.random_range(0..=n_max),
            rng.random_range(0..=n_max),
            rng.random_range(0..=n_max),
        );
        let Some(s) = sample_member(tag, m, &mut rng) else { continue };
        let t: Option<Vec<MonadElement>> = (0..m).map(|_| sample_member(tag, k, &mut rng)).collect();
        let u: Option<Vec<MonadElement>> = (0..k).map(|_| sample_member(tag, n, &mut rng)).collect();
        let (Some(t), Some(u)) = (t, u) else { continue };
        checks.unary(&s);
        checks.assoc(&s, &t, &u, k, n);
        done += 1;
    }
    if tag.scalars().is_some() {
        exhaustive_laws(tag, n_max.min(3), &mut checks)?;
        report.note("exhaustive-arity", n_max.min(3));
    }
    report.note("trials", done);
    report.note("seed", seed);
    checks.finish(&mut report);
    Ok(report)
}

/// Every substitution `s(t)` with `s ∈ S̄(m)` and `t ∈ S̄(k)^m` is computed
/// once by [`substitute_into`]; associativity over all triples is then
/// checked on the resulting index tables.
fn exhaustive_laws(tag: &MonadTag, n_max: usize, checks: &mut LawChecks) -> Result<()> {
    let members: Vec<Vec<MonadElement>> = (0..=n_max)
        .map(|n| {
            enumerate_members(tag, n).map(|v| {
                v.into_iter()
                    .map(|t| MonadElement { tag: tag.clone(), t: Coeffs::Finite(t) })
                    .collect()
            })
        })
        .collect::<Result<_>>()?;
    for ms in &members {
        for t in ms {
            checks.unary(t);
        }
    }
    let index: Vec<BTreeMap<&Coeffs, usize>> = members
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, e)| (&e.t, i)).collect())
        .collect();
    let count = |a: usize, len: usize| members[a].len().pow(len as u32);
    let digits = |mut code: usize, base: usize, len: usize| -> Vec<usize> {
        let mut d = vec![0; len];
        for slot in d.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        d
    };
    // table[m][k][s * |S̄(k)|^m + t] = index of s(t) in S̄(k)
    let mut table = vec![vec![Vec::new(); n_max + 1]; n_max + 1];
    for m in 0..=n_max {
        for k in 0..=n_max {
            let tuples = count(k, m);
            let mut row = Vec::with_capacity(members[m].len() * tuples);
            for s in &members[m] {
                for code in 0..tuples {
                    let t: Vec<MonadElement> = digits(code, members[k].len(), m)
                        .into_iter()
                        .map(|i| members[k][i].clone())
                        .collect();
                    match substitute_into(s, &t, k) {
                        Ok(r) => {
                            checks.closure.pass();
                            row.push(index[k][&r.t]);
                        }
                        Err(e) => {
                            checks.closure.fail(|| format!("{e}"));
                            row.push(usize::MAX);
                        }
                    }
                }
            }
            table[m][k] = row;
        }
    }
    if !checks.closure.passed() {
        return Ok(());
    }
    let encode = |d: &[usize], base: usize| d.iter().fold(0, |acc, &x| acc * base + x);
    for m in 0..=n_max {
        for k in 0..=n_max {
            for n in 0..=n_max {
                let (tk, un) = (count(k, m), count(n, k));
                for s in 0..members[m].len() {
                    for tc in 0..tk {
                        let t = digits(tc, members[k].len(), m);
                        let st = table[m][k][s * tk + tc];
                        for uc in 0..un {
                            let tu: Vec<usize> = t.iter().map(|&ti| table[k][n][ti * un + uc]).collect();
                            let lhs = table[m][n][s * count(n, m) + encode(&tu, members[n].len())];
                            let rhs = table[k][n][st * un + uc];
                            checks.assoc.record(lhs == rhs, || {
                                format!("s={} t={t:?} u#{uc}", fmt_elem(&members[m][s]))
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn tuples<T: Clone>(pool: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                pool.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// `S̄(n)` for `S = μ_r ⊔ {0} ⊂ ℂ` (r = 1, 2, 3), by exact arithmetic in
/// `ℤ[ζ]`: a sum of roots of unity is `Σ c_k ζ^k` with `c ∈ ℤ^r`.
pub fn complex_roots_members(r: usize, n: usize) -> Vec<Vec<usize>> {
    assert!((1..=3).contains(&r), "exact test implemented for r <= 3");
    // is Σ c_k ζ^k equal to 0 or to some ζ^k?
    let in_s = |c: &[i64]| -> bool {
        if r == 1 {
            return c[0] == 0 || c[0] == 1;
        }
        // for prime r, Σ c_k ζ^k = Σ d_k ζ^k iff c - d is constant
        let is_const = |v: &[i64]| v.iter().all(|&x| x == v[0]);
        if is_const(c) {
            return true;
        }
        (0..r).any(|k| {
            let mut d = c.to_vec();
            d[k] -= 1;
            is_const(&d)
        })
    };
    let size = r + 1;
    let mut out = Vec::new();
    for t in tuples(&(0..size).collect::<Vec<_>>(), n) {
        let ok = tuples(&(0..size).collect::<Vec<_>>(), n).iter().all(|x| {
            let mut c = vec![0i64; r];
            for (&a, &b) in t.iter().zip(x) {
                if a != 0 && b != 0 {
                    c[(a - 1 + b - 1) % r] += 1;
                }
            }
            in_s(&c)
        });
        if ok {
            out.push(t);
        }
    }
    out.sort();
    out
}

/// A seminorm on a semiring, given either in closed form on `ℚ` or as a
/// value table on a finite semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seminorm {
    /// The usual absolute value.
    Absolute,
    /// `|x| = 1` for `x ≠ 0`.
    Trivial,
    /// `|x|_p`.
    PAdic(u64),
    /// Values on a finite semiring.
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: usize,
        values: Vec<Q>,
    },
}

fn p_adic(x: &Q, p: u64) -> Q {
    if x.is_zero() {
        return Q::zero();
    }
    let p_big = BigInt::from(p);
    let val = |mut v: BigInt| {
        let mut k = 0i32;
        v = v.abs();
        while (&v % &p_big).is_zero() {
            v /= &p_big;
            k += 1;
        }
        k
    };
    let e = val(x.numer().clone()) - val(x.denom().clone());
    q(p as i64).pow(-e)
}

impl Seminorm {
    pub fn value(&self, x: &Q) -> Q {
        match self {
            Seminorm::Absolute => x.abs(),
            Seminorm::Trivial => {
                if x.is_zero() {
                    Q::zero()
                } else {
                    Q::one()
                }
            }
            Seminorm::PAdic(p) => p_adic(x, *p),
            Seminorm::Table { .. } => panic!("table seminorms act on element indices"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeminormReport {
    pub report: Report,
    pub multiplicative: bool,
    pub norm: bool,
    pub valuation: bool,
    pub non_archimedean: bool,
}

/// Checks `|0| = 0`, `|1| = 1`, submultiplicativity and the triangle
/// inequality on all pairs of samples, and classifies the seminorm. For
/// table seminorms the samples are ignored and the whole table is used.
pub fn seminorm_check(spec: &Seminorm, samples: &[Q]) -> SeminormReport {
    let mut zero_one = Check::new("zero-and-one");
    let mut submult = Check::new("submultiplicative");
    let mut triangle = Check::new("triangle");
    let (mut mult, mut norm, mut ultra) = (true, true, true);
    match spec {
        Seminorm::Table { add, mul, one, values } => {
            let n = values.len();
            zero_one.record(values[0].is_zero() && values[*one].is_one(), || "|0| != 0 or |1| != 1".into());
            for a in 0..n {
                norm &= a == 0 || !values[a].is_zero();
                for b in 0..n {
                    let (va, vb) = (&values[a], &values[b]);
                    let prod = &values[mul[a][b]];
                    let sum = &values[add[a][b]];
                    submult.record(*prod <= va * vb, || format!("|{a}*{b}|"));
                    triangle.record(*sum <= va + vb, || format!("|{a}+{b}|"));
                    mult &= *prod == va * vb;
                    ultra &= sum <= va.max(vb);
                }
            }
        }
        _ => {
            let v = |x: &Q| spec.value(x);
            zero_one.record(v(&Q::zero()).is_zero() && v(&Q::one()).is_one(), || "|0| != 0 or |1| != 1".into());
            for a in samples {
                norm &= a.is_zero() || !v(a).is_zero();
                for b in samples {
                    let (va, vb) = (v(a), v(b));
                    let prod = v(&(a * b));
                    let sum = v(&(a + b));
                    submult.record(prod <= &va * &vb, || format!("|{a}*{b}|"));
                    triangle.record(sum <= &va + &vb, || format!("|{a}+{b}|"));
                    mult &= prod == &va * &vb;
                    ultra &= sum <= va.max(vb);
                }
            }
        }
    }
    let mut report = Report::new("seminorm");
    report.push(zero_one);
    report.push(submult);
    report.push(triangle);
    report.note("multiplicative", mult);
    report.note("norm", norm);
    report.note("non-archimedean", ultra);
    SeminormReport {
        report,
        multiplicative: mult,
        norm,
        valuation: mult && norm,
        non_archimedean: ultra,
    }
}

/// `O_K = {x : |x| ≤ 1}` among the samples.
pub fn unit_ball(spec: &Seminorm, samples: &[Q]) -> Vec<Q> {
    samples.iter().filter(|x| spec.value(x) <= Q::one()).cloned().collect()
}

/// `x_i = sign(t_i) |t_i| / (|t_i| + ε)` for `ε = 1, 1/2, 1/4, …` until
/// `|t(x)| > 1`. Requires `‖t‖₁ > 1`.
pub fn find_witness(t: &[Q]) -> Result<Vec<Q>> {
    if l1(t) <= Q::one() {
        return Err(Error::WitnessSearchFailed("t lies in the unit ball of l1".into()));
    }
    let mut eps = Q::one();
    for _ in 0..64 {
        let x: Vec<Q> = t
            .iter()
            .map(|ti| if ti.is_zero() { Q::zero() } else { ti / (ti.abs() + &eps) })
            .collect();
        let value = t.iter().zip(&x).fold(Q::zero(), |acc, (a, b)| acc + a * b);
        if value.abs() > Q::one() {
            return Ok(x);
        }
        eps /= q(2);
    }
    Err(Error::WitnessSearchFailed(format!("no witness after 64 halvings for l1 norm {}", l1(t))))
}

/// For `K = ℚ` with the usual absolute value: `trials` sampled members of
/// `O'(n)` send sampled points of `O_K^n` into `O_K`, and `trials` sampled
/// `t` with `‖t‖₁ > 1` each get an explicit witness `x ∈ O_K^n` with
/// `|t(x)| > 1`.
pub fn ok_vs_okprime(n: usize, trials: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inclusion = Check::new("oprime-inside-ok");
    let mut witness = Check::new("outside-oprime-has-witness");
    let rand_q = |rng: &mut ChaCha8Rng, bound: i64| {
        let den: i64 = rng.random_range(1..=16);
        Q::new(BigInt::from(rng.random_range(-bound * den..=bound * den)), BigInt::from(den))
    };
    for _ in 0..trials {
        let Some(member) = sample_member(&MonadTag::OprimeQ, n, &mut rng) else { break };
        let Coeffs::Rational(t) = member.t else { unreachable!() };
        for _ in 0..8 {
            let x: Vec<Q> = (0..n).map(|_| rand_q(&mut rng, 1)).collect();
            let v = t.iter().zip(&x).fold(Q::zero(), |acc, (a, b)| acc + a * b);
            inclusion.record(v.abs() <= Q::one(), || format!("t={t:?} x={x:?}"));
        }
    }
    let mut outside = 0;
    while n > 0 && outside < trials {
        let t: Vec<Q> = (0..n).map(|_| rand_q(&mut rng, 2)).collect();
        if l1(&t) <= Q::one() {
            continue;
        }
        outside += 1;
        match find_witness(&t) {
            Ok(x) => witness.record(x.iter().all(|xi| xi.abs() <= Q::one()), || format!("x={x:?} leaves O_K")),
            Err(e) => witness.fail(|| format!("t={t:?}: {e}")),
        }
    }
    let mut report = Report::new(format!("ok-vs-oprime:n={n}"));
    report.note("trials", trials);
    report.note("seed", seed);
    report.push(inclusion);
    report.push(witness);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    fn rat(tag: MonadTag, t: &[(i64, i64)]) -> MonadElement {
        MonadElement::rational(tag, t.iter().map(|&(a, b)| qf(a, b)).collect()).unwrap()
    }

    fn member(tag: &MonadTag, t: &[(i64, i64)]) -> bool {
        membership(tag, &Coeffs::Rational(t.iter().map(|&(a, b)| qf(a, b)).collect())).unwrap().member
    }

    #[test]
    fn rational_membership() {
        assert!(member(&MonadTag::Zinf, &[(1, 2), (1, 2)]));
        assert!(!member(&MonadTag::Zinf, &[(3, 4), (1, 2)]));
        assert!(member(&MonadTag::Zinf, &[(-1, 2), (1, 2)]));
        assert!(!member(&MonadTag::Dstar, &[(-1, 2), (1, 2)]));
        assert!(member(&MonadTag::Dstar, &[(1, 3), (1, 2)]));
        assert!(!member(&MonadTag::D, &[(1, 3), (1, 2)]));
        assert!(member(&MonadTag::D, &[(1, 3), (2, 3)]));
        assert!(!member(&MonadTag::D, &[]));
        assert!(member(&MonadTag::Dstar, &[]));
    }

    #[test]
    fn f1r_membership() {
        // for r = 2 element 1 is +1 and element 2 is -1
        let tag = MonadTag::F1r(2);
        assert!(!membership(&tag, &Coeffs::Finite(vec![1, 1])).unwrap().member);
        assert!(membership(&tag, &Coeffs::Finite(vec![0, 2])).unwrap().member);
        let integers = MonadTag::Partial(PartialSemiring::from_integers(&[-1, 0, 1]).unwrap());
        // values -1, 0, 1 sit at indices 0, 1, 2
        assert!(!membership(&integers, &Coeffs::Finite(vec![2, 2])).unwrap().member);
        assert!(membership(&integers, &Coeffs::Finite(vec![1, 0])).unwrap().member);
        assert!(matches!(MonadTag::parse("f1r:0"), Err(Error::UnsupportedTag(_))));
        assert!(matches!(MonadTag::parse("qq"), Err(Error::UnsupportedTag(_))));
        assert_eq!(MonadTag::parse("f1r:3").unwrap(), MonadTag::F1r(3));
    }

    #[test]
    fn substitution_example() {
        let s = rat(MonadTag::Zinf, &[(1, 2), (1, 2)]);
        let rows = [rat(MonadTag::Zinf, &[(1, 1), (0, 1)]), rat(MonadTag::Zinf, &[(0, 1), (-1, 1)])];
        let r = substitute(&s, &rows).unwrap();
        assert_eq!(r.t, Coeffs::Rational(vec![qf(1, 2), qf(-1, 2)]));
        assert_eq!(substitute(&s, &rows[..1]), Err(Error::ArityMismatch { expected: 2, got: 1 }));
        let d = rat(MonadTag::Dstar, &[(1, 2), (1, 2)]);
        assert_eq!(substitute(&d, &rows), Err(Error::TagMismatch));
    }

    #[test]
    fn unit_and_projection_laws() {
        let t = rat(MonadTag::Zinf, &[(1, 3), (-1, 4), (1, 5)]);
        let one = MonadElement::basis(&MonadTag::Zinf, 1, 0);
        assert_eq!(substitute(&one, core::slice::from_ref(&t)).unwrap(), t);
        let es: Vec<MonadElement> = (0..3).map(|i| MonadElement::basis(&MonadTag::Zinf, 3, i)).collect();
        assert_eq!(substitute(&t, &es).unwrap(), t);
    }

    #[test]
    fn fuzz_passes() {
        for tag in [MonadTag::Zinf, MonadTag::D, MonadTag::Dstar, MonadTag::OprimeQ, MonadTag::F1r(3)] {
            let r = axiom_fuzz(&tag, 4, 150, 42).unwrap();
            assert!(r.passed(), "{r}");
        }
        for r in 1..=3 {
            let rep = axiom_fuzz(&MonadTag::F1r(r), 3, 10, 42).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let r = axiom_fuzz(&MonadTag::Partial(PartialSemiring::boolean()), 2, 30, 1).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn finite_descriptions_agree() {
        for r in 1..=3 {
            let tag = MonadTag::F1r(r);
            let partial = MonadTag::Partial(PartialSemiring::f1r(r));
            for n in 0..=3 {
                let mut listed = enumerate_members(&tag, n).unwrap();
                listed.sort();
                assert_eq!(listed.len(), r * n + 1);
                let mut partial_listed = enumerate_members(&partial, n).unwrap();
                partial_listed.sort();
                assert_eq!(partial_listed, listed);
                assert_eq!(complex_roots_members(r, n), listed);
            }
        }
    }

    #[test]
    fn substitution_matches_free_g_set() {
        // element of T(n) as Option<(g, i)>, composition s(t) = g · t_i
        for r in 1..=3 {
            let tag = MonadTag::F1r(r);
            let g = PointedMonoid::mu(r);
            let abstract_of = |t: &[usize]| t.iter().position(|&a| a != 0).map(|i| (t[i], i));
            for m in 0..=2 {
                for n in 0..=2 {
                    for s in enumerate_members(&tag, m).unwrap() {
                        let ts = tuples(&enumerate_members(&tag, n).unwrap(), m);
                        for t in ts {
                            let se = MonadElement { tag: tag.clone(), t: Coeffs::Finite(s.clone()) };
                            let te: Vec<MonadElement> =
                                t.iter().map(|v| MonadElement { tag: tag.clone(), t: Coeffs::Finite(v.clone()) }).collect();
                            let Coeffs::Finite(got) = substitute_into(&se, &te, n).unwrap().t else { unreachable!() };
                            let expected = abstract_of(&s).and_then(|(gs, i)| abstract_of(&t[i]).map(|(gt, j)| (g.mul[gs][gt], j)));
                            assert_eq!(abstract_of(&got), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn arity_one_and_zero() {
        for r in 1..=3 {
            let tag = MonadTag::F1r(r);
            assert_eq!(enumerate_members(&tag, 1).unwrap().len(), r + 1);
            assert_eq!(enumerate_members(&tag, 0).unwrap().len(), 1);
        }
        let b = MonadTag::Partial(PartialSemiring::boolean());
        assert_eq!(enumerate_members(&b, 1).unwrap().len(), 2);
        assert_eq!(enumerate_members(&b, 2).unwrap().len(), 4);
    }

    #[test]
    fn samples_nest_and_arity_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for tag in [MonadTag::D, MonadTag::Dstar, MonadTag::Zinf] {
            for n in 0..5 {
                for _ in 0..40 {
                    let Some(e) = sample_member(&tag, n, &mut rng) else { continue };
                    assert!(membership(&tag, &e.t).unwrap().member);
                    if tag == MonadTag::D {
                        assert!(membership(&MonadTag::Dstar, &e.t).unwrap().member);
                    }
                    assert!(membership(&MonadTag::Zinf, &e.t).unwrap().member);
                }
            }
        }
        // S̄(1) = S: [-1, 1] for zinf, [0, 1] for dstar, {1} for d
        for x in (-8..=8).map(|a| qf(a, 4)) {
            let inside = |tag: &MonadTag| membership(tag, &Coeffs::Rational(vec![x.clone()])).unwrap().member;
            assert_eq!(inside(&MonadTag::Zinf), x.abs() <= Q::one());
            assert_eq!(inside(&MonadTag::Dstar), !x.is_negative() && x <= Q::one());
            assert_eq!(inside(&MonadTag::D), x.is_one());
        }
    }

    #[test]
    fn naturals_ball_is_f1() {
        let n = MonadTag::Partial(PartialSemiring::naturals_unit_ball());
        for k in 0..=4 {
            assert_eq!(enumerate_members(&n, k).unwrap(), enumerate_members(&MonadTag::F1r(1), k).unwrap());
        }
    }

    #[test]
    fn long_fuzz() {
        let r = axiom_fuzz(&MonadTag::Zinf, 5, 1000, DEFAULT_SEED).unwrap();
        assert!(r.passed(), "{r}");
        assert!(axiom_fuzz(&MonadTag::D, 1, 0, 1).is_err());
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!(
            parse_coeffs(&MonadTag::Zinf, "1/2, -1/3").unwrap(),
            Coeffs::Rational(vec![qf(1, 2), qf(-1, 3)])
        );
        assert_eq!(parse_coeffs(&MonadTag::F1r(2), "0,2").unwrap(), Coeffs::Finite(vec![0, 2]));
        assert!(parse_coeffs(&MonadTag::Zinf, "x").is_err());
    }

    #[test]
    fn seminorms() {
        let samples: Vec<Q> = (-6..=6).flat_map(|a| (1..=4).map(move |b| qf(a, b))).collect();
        let abs = seminorm_check(&Seminorm::Absolute, &samples);
        assert!(abs.report.passed() && abs.valuation && !abs.non_archimedean);
        let triv = seminorm_check(&Seminorm::Trivial, &samples);
        assert!(triv.report.passed() && triv.valuation && triv.non_archimedean);
        let p = seminorm_check(&Seminorm::PAdic(2), &samples);
        assert!(p.report.passed() && p.valuation && p.non_archimedean);
        let naturals: Vec<Q> = (0..=10).map(q).collect();
        assert_eq!(unit_ball(&Seminorm::Absolute, &naturals), vec![q(0), q(1)]);
        assert_eq!(unit_ball(&Seminorm::Trivial, &naturals), naturals);
        assert_eq!(p_adic(&qf(3, 4), 2), q(4));
        assert_eq!(p_adic(&q(12), 2), qf(1, 4));
    }

    #[test]
    fn witnesses() {
        let t = vec![q(1), q(1)];
        // the first attempt (ε = 1) only reaches |t(x)| = 1
        let first: Vec<Q> = t.iter().map(|x| x / (x + q(1))).collect();
        assert_eq!(first, vec![qf(1, 2), qf(1, 2)]);
        let x = find_witness(&t).unwrap();
        assert_eq!(x, vec![qf(2, 3), qf(2, 3)]);
        assert!(find_witness(&[qf(1, 2), qf(1, 2)]).is_err());
        assert!(ok_vs_okprime(3, 200, 5).passed());
    }
}
