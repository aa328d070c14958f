//! Generic exactness calculus: factorization, strictness, pullbacks of strict
//! monomorphisms, pushouts of strict epimorphisms, square verification and the
//! parabelian / proto-exact axiom suites.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::{FiniteCategory, PointedCategory};
use crate::error::{Error, Result};
use crate::report::{Check, Report};

/// `f = im ∘ mid ∘ coim` with `coim = coker(ker f)` and `im = ker(coker f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<M> {
    pub coim: M,
    pub mid: M,
    pub im: M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MorphismClass {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_strict: bool,
    pub is_strict_mono: bool,
    pub is_strict_epi: bool,
}

impl MorphismClass {
    pub fn new(is_mono: bool, is_epi: bool, is_strict: bool) -> Self {
        MorphismClass {
            is_mono,
            is_epi,
            is_strict,
            is_strict_mono: is_strict && is_mono,
            is_strict_epi: is_strict && is_epi,
        }
    }
}

/// A commuting square
///
/// ```text
/// X' --f'--> Y'
/// |g'        |g
/// v          v
/// X  --f-->  Y
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square<M> {
    pub f_prime: M,
    pub g: M,
    pub f: M,
    pub g_prime: M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareVerdict {
    pub cartesian: bool,
    pub cocartesian: bool,
}

pub fn factorize<C: PointedCategory>(cat: &C, f: &C::Mor) -> Result<Factorization<C::Mor>> {
    let k = cat.kernel(f);
    let coim = cat.cokernel(&k);
    let c = cat.cokernel(f);
    let im = cat.kernel(&c);
    let through_im = cat
        .lift_through_mono(&im, f)
        .ok_or_else(|| Error::Internal(format!("{} does not factor through its image", cat.describe(f))))?;
    let mid = cat
        .descend_through_epi(&coim, &through_im)
        .ok_or_else(|| Error::Internal(format!("{} does not factor through its coimage", cat.describe(f))))?;
    Ok(Factorization { coim, mid, im })
}

pub fn is_strict<C: PointedCategory>(cat: &C, f: &C::Mor) -> Result<bool> {
    Ok(cat.is_iso(&factorize(cat, f)?.mid))
}

pub fn classify<C: PointedCategory>(cat: &C, f: &C::Mor) -> Result<MorphismClass> {
    Ok(MorphismClass::new(cat.is_mono(f), cat.is_epi(f), is_strict(cat, f)?))
}

/// Classification with mono/epi decided by cancellation against every
/// enumerated test morphism of size at most `bound`.
pub fn classify_by_cancellation<C: FiniteCategory>(
    cat: &C,
    f: &C::Mor,
    bound: usize,
) -> Result<MorphismClass> {
    let needed = cat.size(cat.dom(f)).max(cat.size(cat.cod(f)));
    if bound < needed {
        return Err(Error::BoundTooSmall { bound, needed });
    }
    let tests = cat.objects(bound);
    let x = cat.dom(f);
    let y = cat.cod(f);
    let is_mono = tests.iter().all(|t| {
        let homs = cat.hom(t, x);
        let images: Vec<C::Mor> = homs.iter().map(|a| cat.compose(f, a)).collect();
        all_distinct(&images)
    });
    let is_epi = tests.iter().all(|t| {
        let homs = cat.hom(y, t);
        let images: Vec<C::Mor> = homs.iter().map(|a| cat.compose(a, f)).collect();
        all_distinct(&images)
    });
    Ok(MorphismClass::new(is_mono, is_epi, is_strict(cat, f)?))
}

fn all_distinct<T: Ord + Clone>(items: &[T]) -> bool {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Pullback of a strict mono `f: X -> Y` along `g: Y' -> Y`, built as
/// `f' = ker(coker(f) ∘ g)`.
pub fn pullback_strict_mono<C: PointedCategory>(
    cat: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<Square<C::Mor>> {
    if cat.cod(f) != cat.cod(g) {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    if !classify(cat, f)?.is_strict_mono {
        return Err(Error::NotStrictMono);
    }
    let h = cat.cokernel(f);
    let f_prime = cat.kernel(&cat.compose(&h, g));
    let g_prime = cat
        .lift_through_mono(f, &cat.compose(g, &f_prime))
        .ok_or_else(|| Error::Internal("pullback leg does not factor through f".into()))?;
    Ok(Square {
        f_prime,
        g: g.clone(),
        f: f.clone(),
        g_prime,
    })
}

/// Pushout of a strict epi `e: X' -> X` along `h: X' -> Y'`, built as
/// `g = coker(h ∘ ker(e))`. The returned square has `g' = e`, `f' = h`.
pub fn pushout_strict_epi<C: PointedCategory>(
    cat: &C,
    e: &C::Mor,
    h: &C::Mor,
) -> Result<Square<C::Mor>> {
    if cat.dom(e) != cat.dom(h) {
        return Err(Error::Mismatch("pushout legs have different domains".into()));
    }
    if !classify(cat, e)?.is_strict_epi {
        return Err(Error::NotStrictEpi);
    }
    let g = cat.cokernel(&cat.compose(h, &cat.kernel(e)));
    let f = cat
        .descend_through_epi(e, &cat.compose(&g, h))
        .ok_or_else(|| Error::Internal("pushout leg does not factor through e".into()))?;
    Ok(Square {
        f_prime: h.clone(),
        g,
        f,
        g_prime: e.clone(),
    })
}

pub fn commutes<C: PointedCategory>(cat: &C, sq: &Square<C::Mor>) -> bool {
    cat.cod(&sq.f_prime) == cat.dom(&sq.g)
        && cat.cod(&sq.g_prime) == cat.dom(&sq.f)
        && cat.dom(&sq.f_prime) == cat.dom(&sq.g_prime)
        && cat.cod(&sq.g) == cat.cod(&sq.f)
        && cat.compose(&sq.g, &sq.f_prime) == cat.compose(&sq.f, &sq.g_prime)
}

/// Decide (co)cartesianness against the instance's canonical (co)limits.
pub fn verify_square<C: PointedCategory>(cat: &C, sq: &Square<C::Mor>) -> Result<SquareVerdict> {
    if !commutes(cat, sq) {
        return Err(Error::NonCommuting);
    }
    Ok(SquareVerdict {
        cartesian: is_cartesian(cat, sq)?,
        cocartesian: is_cocartesian(cat, sq)?,
    })
}

pub fn is_cartesian<C: PointedCategory>(cat: &C, sq: &Square<C::Mor>) -> Result<bool> {
    let cone = cat
        .pullback(&sq.f, &sq.g)
        .ok_or(Error::Unsupported("canonical pullback"))?;
    Ok(match cat.pullback_mediator(&cone, &sq.g_prime, &sq.f_prime) {
        Some(u) => cat.is_iso(&u),
        None => false,
    })
}

pub fn is_cocartesian<C: PointedCategory>(cat: &C, sq: &Square<C::Mor>) -> Result<bool> {
    let cocone = cat
        .pushout(&sq.f_prime, &sq.g_prime)
        .ok_or(Error::Unsupported("canonical pushout"))?;
    Ok(match cat.pushout_mediator(&cocone, &sq.g, &sq.f) {
        Some(u) => cat.is_iso(&u),
        None => false,
    })
}

/// True iff `f ≅ ker(g)` and `g ≅ coker(f)` under the canonical comparisons.
pub fn is_exact_pair<C: PointedCategory>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    if cat.cod(f) != cat.dom(g) {
        return Err(Error::Mismatch("codomain of f is not the domain of g".into()));
    }
    let k = cat.kernel(g);
    let is_ker = match cat.lift_through_mono(&k, f) {
        Some(u) => cat.is_iso(&u),
        None => false,
    };
    let c = cat.cokernel(f);
    let is_coker = match cat.descend_through_epi(&c, g) {
        Some(u) => cat.is_iso(&u),
        None => false,
    };
    Ok(is_ker && is_coker)
}

/// Every morphism between enumerated objects, grouped by (domain, codomain)
/// index, together with its classification.
pub struct HomTable<C: PointedCategory> {
    pub objects: Vec<C::Obj>,
    pub homs: BTreeMap<(usize, usize), Vec<(C::Mor, MorphismClass)>>,
}

impl<C: FiniteCategory> HomTable<C> {
    pub fn build(cat: &C, bound: usize) -> Result<Self> {
        let objects = cat.objects(bound);
        let mut homs = BTreeMap::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                let mut list = Vec::new();
                for f in cat.hom(x, y) {
                    let class = classify(cat, &f)?;
                    list.push((f, class));
                }
                homs.insert((i, j), list);
            }
        }
        Ok(HomTable { objects, homs })
    }

    pub fn from(&self, i: usize) -> impl Iterator<Item = &(C::Mor, MorphismClass)> + '_ {
        (0..self.objects.len()).flat_map(move |j| self.homs[&(i, j)].iter())
    }

    pub fn into_obj(&self, j: usize) -> impl Iterator<Item = &(C::Mor, MorphismClass)> + '_ {
        (0..self.objects.len()).flat_map(move |i| self.homs[&(i, j)].iter())
    }
}

pub const AX_PULLBACK: &str = "strict-epi-pullback-along-strict-mono";
pub const AX_PUSHOUT: &str = "strict-mono-pushout-along-strict-epi";
pub const AX_PULLBACK_CARTESIAN: &str = "pullback-square-cartesian";
pub const AX_PUSHOUT_COCARTESIAN: &str = "pushout-square-cocartesian";
pub const AX_IDENTITIES: &str = "identities-strict-mono-and-epi";
pub const AX_MONO_COMPOSE: &str = "strict-monos-compose";
pub const AX_EPI_COMPOSE: &str = "strict-epis-compose";

/// Exhaustive parabelian suite: pullbacks of strict epis along strict monos
/// are strict epis, pushouts of strict monos along strict epis are strict
/// monos. Squares are additionally checked against canonical (co)limits when
/// the instance supplies them.
pub fn check_parabelian<C: FiniteCategory>(cat: &C, bound: usize) -> Result<Report> {
    if bound == 0 {
        return Err(Error::BoundTooSmall { bound, needed: 1 });
    }
    let table = HomTable::build(cat, bound)?;
    check_parabelian_on(cat, &table)
}

pub fn check_parabelian_on<C: FiniteCategory>(cat: &C, table: &HomTable<C>) -> Result<Report> {
    let mut report = Report::new(cat.name());
    let mut pull = Check::new(AX_PULLBACK);
    let mut pull_cart = Check::new(AX_PULLBACK_CARTESIAN);
    let mut push = Check::new(AX_PUSHOUT);
    let mut push_cocart = Check::new(AX_PUSHOUT_COCARTESIAN);

    for j in 0..table.objects.len() {
        let monos: Vec<&C::Mor> = table
            .into_obj(j)
            .filter(|(_, c)| c.is_strict_mono)
            .map(|(f, _)| f)
            .collect();
        let epis: Vec<&C::Mor> = table
            .into_obj(j)
            .filter(|(_, c)| c.is_strict_epi)
            .map(|(f, _)| f)
            .collect();
        for f in &monos {
            for g in &epis {
                let sq = pullback_strict_mono(cat, f, g)?;
                let ok = classify(cat, &sq.g_prime)?.is_strict_epi;
                pull.record(ok, || {
                    format!("f={} g={} g'={}", cat.describe(f), cat.describe(g), cat.describe(&sq.g_prime))
                });
                match is_cartesian(cat, &sq) {
                    Ok(c) => pull_cart.record(c, || format!("f={} g={}", cat.describe(f), cat.describe(g))),
                    Err(Error::Unsupported(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }

    for i in 0..table.objects.len() {
        let monos: Vec<&C::Mor> = table
            .from(i)
            .filter(|(_, c)| c.is_strict_mono)
            .map(|(f, _)| f)
            .collect();
        let epis: Vec<&C::Mor> = table
            .from(i)
            .filter(|(_, c)| c.is_strict_epi)
            .map(|(f, _)| f)
            .collect();
        for e in &epis {
            for m in &monos {
                let sq = pushout_strict_epi(cat, e, m)?;
                let ok = classify(cat, &sq.f)?.is_strict_mono;
                push.record(ok, || {
                    format!("f'={} g'={} f={}", cat.describe(m), cat.describe(e), cat.describe(&sq.f))
                });
                match is_cocartesian(cat, &sq) {
                    Ok(c) => push_cocart.record(c, || format!("f'={} g'={}", cat.describe(m), cat.describe(e))),
                    Err(Error::Unsupported(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }

    report.note("objects", table.objects.len());
    report.push(pull);
    report.push(push);
    if pull_cart.checked > 0 {
        report.push(pull_cart);
    }
    if push_cocart.checked > 0 {
        report.push(push_cocart);
    }
    Ok(report)
}

/// Identities are strict mono and strict epi; composites of strict monos
/// (resp. epis) are strict monos (resp. epis).
pub fn check_proto_exact_closure<C: FiniteCategory>(cat: &C, bound: usize) -> Result<Report> {
    if bound == 0 {
        return Err(Error::BoundTooSmall { bound, needed: 1 });
    }
    let table = HomTable::build(cat, bound)?;
    check_proto_exact_closure_on(cat, &table)
}

pub fn check_proto_exact_closure_on<C: FiniteCategory>(cat: &C, table: &HomTable<C>) -> Result<Report> {
    let mut report = Report::new(cat.name());
    let mut ids = Check::new(AX_IDENTITIES);
    let mut monos = Check::new(AX_MONO_COMPOSE);
    let mut epis = Check::new(AX_EPI_COMPOSE);
    let n = table.objects.len();

    for x in &table.objects {
        let c = classify(cat, &cat.identity(x))?;
        ids.record(c.is_strict_mono && c.is_strict_epi, || format!("id on {:?}", x));
    }
    for a in 0..n {
        for b in 0..n {
            for (f, cf) in &table.homs[&(a, b)] {
                for c in 0..n {
                    for (g, cg) in &table.homs[&(b, c)] {
                        if cf.is_strict_mono && cg.is_strict_mono {
                            let gf = cat.compose(g, f);
                            let ok = classify(cat, &gf)?.is_strict_mono;
                            monos.record(ok, || chain_witness(cat, f, g));
                        }
                        if cf.is_strict_epi && cg.is_strict_epi {
                            let gf = cat.compose(g, f);
                            let ok = classify(cat, &gf)?.is_strict_epi;
                            epis.record(ok, || chain_witness(cat, f, g));
                        }
                    }
                }
            }
        }
    }
    report.push(ids);
    report.push(monos);
    report.push(epis);
    Ok(report)
}

fn chain_witness<C: PointedCategory>(cat: &C, f: &C::Mor, g: &C::Mor) -> String {
    format!("f={} then g={}", cat.describe(f), cat.describe(g))
}
