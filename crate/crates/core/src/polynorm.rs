//! Finite-dimensional rational vector spaces whose unit ball is a centrally
//! symmetric polytope, with linear maps of operator norm at most 1.
//!
//! A ball is kept in both descriptions: its vertices and its facet normals
//! `a` (meaning `a·y ≤ 1`). Both are irredundant and sorted, so two spaces
//! are equal exactly when their balls are. Conversions enumerate bases: a
//! facet is spanned by `d` independent vertices and a vertex is cut out by
//! `d` independent facets. That is fine at the dimensions used here.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{
    classify, is_cartesian, is_cocartesian, pullback_strict_mono, pushout_strict_epi, MorphismClass,
    AX_PULLBACK, AX_PULLBACK_CARTESIAN, AX_PUSHOUT, AX_PUSHOUT_COCARTESIAN,
};
use crate::category::{Cocone, Cone, PointedCategory};
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, neg, q, Matrix, Q};
use crate::report::{Check, Report};

pub const AX_PULLBACK_BICARTESIAN: &str = "pullback-along-strict-epi-cocartesian";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyNormedSpace {
    dim: usize,
    vertices: Vec<Vec<Q>>,
    facets: Vec<Vec<Q>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The vertices of `{y : r·y ≤ 1 for all rows r}`, which is also the set of
/// facet normals of `conv(rows)` by polarity. Rows must span.
fn polar_vertices(dim: usize, rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    let ones = vec![Q::one(); dim];
    for idx in combinations(rows.len(), dim) {
        let m = Matrix::from_rows(idx.iter().map(|&i| rows[i].clone()).collect(), dim);
        let Some(inv) = m.inverse() else { continue };
        let y = inv.apply(&ones);
        if rows.iter().all(|r| dot(r, &y) <= Q::one()) {
            out.insert(y);
        }
    }
    out.into_iter().collect()
}

fn symmetrize(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let set: BTreeSet<Vec<Q>> = points.iter().flat_map(|p| [p.clone(), neg(p)]).collect();
    set.into_iter().collect()
}

impl PolyNormedSpace {
    /// Ball `conv(±generators)`.
    pub fn from_generators(dim: usize, generators: &[Vec<Q>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::InvalidBall("generator has the wrong dimension".into()));
        }
        if dim == 0 {
            return Ok(PolyNormedSpace::zero());
        }
        let pts = symmetrize(generators);
        if Matrix::from_rows(pts.clone(), dim).rank() < dim {
            return Err(Error::InvalidBall("generators do not span".into()));
        }
        let facets = polar_vertices(dim, &pts);
        let vertices = polar_vertices(dim, &facets);
        Ok(PolyNormedSpace { dim, vertices, facets })
    }

    /// Ball `{y : ±a·y ≤ 1}`.
    pub fn from_facets(dim: usize, facets: &[Vec<Q>]) -> Result<Self> {
        if facets.iter().any(|a| a.len() != dim) {
            return Err(Error::InvalidBall("facet has the wrong dimension".into()));
        }
        if dim == 0 {
            return Ok(PolyNormedSpace::zero());
        }
        let rows = symmetrize(facets);
        if Matrix::from_rows(rows.clone(), dim).rank() < dim {
            return Err(Error::InvalidBall("ball is unbounded".into()));
        }
        let vertices = polar_vertices(dim, &rows);
        let facets = polar_vertices(dim, &vertices);
        Ok(PolyNormedSpace { dim, vertices, facets })
    }

    pub fn zero() -> Self {
        PolyNormedSpace {
            dim: 0,
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn linf(dim: usize) -> Self {
        let facets: Vec<Vec<Q>> = (0..dim).map(|i| unit(dim, i)).collect();
        PolyNormedSpace::from_facets(dim, &facets).expect("cube is a ball")
    }

    pub fn l1(dim: usize) -> Self {
        let gens: Vec<Vec<Q>> = (0..dim).map(|i| unit(dim, i)).collect();
        PolyNormedSpace::from_generators(dim, &gens).expect("cross-polytope is a ball")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<Q>] {
        &self.facets
    }

    /// The gauge `max_k a_k·x`.
    pub fn norm(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.facets.iter().map(|a| dot(a, x)).fold(Q::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.norm(x) <= Q::one()
    }

    pub fn describe(&self) -> String {
        let show = |v: &Vec<Q>| {
            let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
            format!("({})", parts.join(","))
        };
        let vs: Vec<String> = self.vertices.iter().map(show).collect();
        format!("dim {} conv{{{}}}", self.dim, vs.join(" "))
    }
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// `norm_eval`.
pub fn norm_eval(x: &PolyNormedSpace, v: &[Q]) -> Q {
    x.norm(v)
}

/// `max ‖m v‖_Y` over the vertices `v` of `B_X`.
pub fn operator_norm(m: &Matrix, dom: &PolyNormedSpace, cod: &PolyNormedSpace) -> Q {
    dom.vertices
        .iter()
        .map(|v| cod.norm(&m.apply(v)))
        .fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundedLinearMap {
    pub dom: PolyNormedSpace,
    pub cod: PolyNormedSpace,
    pub matrix: Matrix,
}

impl BoundedLinearMap {
    pub fn new(dom: PolyNormedSpace, cod: PolyNormedSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != cod.dim || matrix.cols() != dom.dim {
            return Err(Error::InvalidInput(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                cod.dim,
                dom.dim
            )));
        }
        if operator_norm(&matrix, &dom, &cod) > Q::one() {
            return Err(Error::InvalidInput("operator norm exceeds 1".into()));
        }
        Ok(BoundedLinearMap { dom, cod, matrix })
    }

    /// Skips the norm check; callers have established it.
    fn trusted(dom: PolyNormedSpace, cod: PolyNormedSpace, matrix: Matrix) -> Self {
        debug_assert!(operator_norm(&matrix, &dom, &cod) <= Q::one());
        BoundedLinearMap { dom, cod, matrix }
    }

    fn checked(dom: &PolyNormedSpace, cod: &PolyNormedSpace, matrix: Matrix) -> Option<Self> {
        BoundedLinearMap::new(dom.clone(), cod.clone(), matrix).ok()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `f⁻¹(0)` with the induced norm.
pub fn ns_ker(f: &BoundedLinearMap) -> (PolyNormedSpace, BoundedLinearMap) {
    let basis = f.matrix.nullspace();
    let k = Matrix::from_cols(&basis, f.dom.dim);
    let space = slice(&f.dom, &k);
    let incl = BoundedLinearMap::trusted(space.clone(), f.dom.clone(), k);
    (space, incl)
}

/// The subspace spanned by the columns of `k` (independent) with the
/// induced norm.
fn slice(x: &PolyNormedSpace, k: &Matrix) -> PolyNormedSpace {
    PolyNormedSpace::from_facets(k.cols(), &pull_facets(x, k)).expect("slice of a ball is a ball")
}

/// Facet normals of `B_X` pulled back along `k`.
fn pull_facets(x: &PolyNormedSpace, k: &Matrix) -> Vec<Vec<Q>> {
    let kt = k.transpose();
    x.facets.iter().map(|a| kt.apply(a)).collect()
}

/// Projection `ℚ^d -> ℚ^d / span(columns)` onto the coordinates that are not
/// pivots of the row-reduced spanning set.
fn quotient_projection(d: usize, span: &[Vec<Q>]) -> Matrix {
    let r = Matrix::from_rows(span.to_vec(), d).rref();
    let free: Vec<usize> = (0..d).filter(|c| !r.pivots.contains(c)).collect();
    let rows = free
        .iter()
        .map(|&j| {
            let mut row = unit(d, j);
            for (i, &p) in r.pivots.iter().enumerate() {
                row[p] = -r.matrix[(i, j)].clone();
            }
            row
        })
        .collect();
    Matrix::from_rows(rows, d)
}

/// `Y / f(X)` with the quotient norm.
pub fn ns_coker(f: &BoundedLinearMap) -> (PolyNormedSpace, BoundedLinearMap) {
    let p = quotient_projection(f.cod.dim, &f.matrix.col_vecs());
    let space = project(&f.cod, &p);
    let proj = BoundedLinearMap::trusted(f.cod.clone(), space.clone(), p);
    (space, proj)
}

fn project(x: &PolyNormedSpace, p: &Matrix) -> PolyNormedSpace {
    let gens: Vec<Vec<Q>> = x.vertices.iter().map(|v| p.apply(v)).collect();
    PolyNormedSpace::from_generators(p.rows(), &gens).expect("projection of a ball is a ball")
}

#[derive(Debug, Clone)]
pub struct NsProduct {
    pub object: PolyNormedSpace,
    pub p1: BoundedLinearMap,
    pub p2: BoundedLinearMap,
}

#[derive(Debug, Clone)]
pub struct NsCoproduct {
    pub object: PolyNormedSpace,
    pub i1: BoundedLinearMap,
    pub i2: BoundedLinearMap,
}

fn block_rows(a: usize, b: usize) -> (Matrix, Matrix) {
    let top = Matrix::identity(a).hcat(&Matrix::zeros(a, b));
    let bottom = Matrix::zeros(b, a).hcat(&Matrix::identity(b));
    (top, bottom)
}

/// Max-norm product and `ℓ1`-sum coproduct on `X ⊕ Y`.
pub fn ns_prod_coprod(x: &PolyNormedSpace, y: &PolyNormedSpace) -> (NsProduct, NsCoproduct) {
    let (a, b) = (x.dim, y.dim);
    let d = a + b;
    let pad = |v: &[Q], left: bool| -> Vec<Q> {
        let z = |n| vec![Q::zero(); n];
        if left {
            [v.to_vec(), z(b)].concat()
        } else {
            [z(a), v.to_vec()].concat()
        }
    };
    let facets: Vec<Vec<Q>> = x.facets.iter().map(|f| pad(f, true)).chain(y.facets.iter().map(|f| pad(f, false))).collect();
    let prod = PolyNormedSpace::from_facets(d, &facets).expect("product of balls");
    let gens: Vec<Vec<Q>> = x.vertices.iter().map(|v| pad(v, true)).chain(y.vertices.iter().map(|v| pad(v, false))).collect();
    let coprod = PolyNormedSpace::from_generators(d, &gens).expect("sum of balls");
    let (top, bottom) = block_rows(a, b);
    (
        NsProduct {
            p1: BoundedLinearMap::trusted(prod.clone(), x.clone(), top.clone()),
            p2: BoundedLinearMap::trusted(prod.clone(), y.clone(), bottom.clone()),
            object: prod,
        },
        NsCoproduct {
            i1: BoundedLinearMap::trusted(x.clone(), coprod.clone(), top.transpose()),
            i2: BoundedLinearMap::trusted(y.clone(), coprod.clone(), bottom.transpose()),
            object: coprod,
        },
    )
}

/// Direct polytope criterion: `f` is strict iff the image of `B_X` equals
/// `B_Y ∩ im f`, both written in a basis of the image.
pub fn ns_classify(f: &BoundedLinearMap) -> MorphismClass {
    let basis = f.matrix.column_basis();
    let r = basis.len();
    let b = Matrix::from_cols(&basis, f.cod.dim);
    let induced = slice(&f.cod, &b);
    let pushed: Vec<Vec<Q>> = f
        .dom
        .vertices
        .iter()
        .map(|v| b.solve(&f.matrix.apply(v)).expect("image lies in the span"))
        .collect();
    let quotient = PolyNormedSpace::from_generators(r, &pushed).expect("image of a ball spans the image");
    MorphismClass::new(r == f.dom.dim, r == f.cod.dim, quotient == induced)
}

/// The category of polyhedral normed spaces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyNorms;

impl PointedCategory for PolyNorms {
    type Obj = PolyNormedSpace;
    type Mor = BoundedLinearMap;

    fn name(&self) -> String {
        "polynorm".into()
    }

    fn dom<'a>(&self, f: &'a BoundedLinearMap) -> &'a PolyNormedSpace {
        &f.dom
    }

    fn cod<'a>(&self, f: &'a BoundedLinearMap) -> &'a PolyNormedSpace {
        &f.cod
    }

    fn compose(&self, g: &BoundedLinearMap, f: &BoundedLinearMap) -> BoundedLinearMap {
        BoundedLinearMap::trusted(f.dom.clone(), g.cod.clone(), g.matrix.mul(&f.matrix))
    }

    fn identity(&self, x: &PolyNormedSpace) -> BoundedLinearMap {
        BoundedLinearMap::trusted(x.clone(), x.clone(), Matrix::identity(x.dim))
    }

    fn zero_object(&self) -> PolyNormedSpace {
        PolyNormedSpace::zero()
    }

    fn zero_morphism(&self, x: &PolyNormedSpace, y: &PolyNormedSpace) -> BoundedLinearMap {
        BoundedLinearMap::trusted(x.clone(), y.clone(), Matrix::zeros(y.dim, x.dim))
    }

    fn kernel(&self, f: &BoundedLinearMap) -> BoundedLinearMap {
        ns_ker(f).1
    }

    fn cokernel(&self, f: &BoundedLinearMap) -> BoundedLinearMap {
        ns_coker(f).1
    }

    fn lift_through_mono(&self, m: &BoundedLinearMap, f: &BoundedLinearMap) -> Option<BoundedLinearMap> {
        let h = m.matrix.solve_matrix(&f.matrix)?;
        BoundedLinearMap::checked(&f.dom, &m.dom, h)
    }

    fn descend_through_epi(&self, e: &BoundedLinearMap, f: &BoundedLinearMap) -> Option<BoundedLinearMap> {
        let ht = e.matrix.transpose().solve_matrix(&f.matrix.transpose())?;
        BoundedLinearMap::checked(&e.cod, &f.cod, ht.transpose())
    }

    fn is_mono(&self, f: &BoundedLinearMap) -> bool {
        f.rank() == f.dom.dim
    }

    fn is_epi(&self, f: &BoundedLinearMap) -> bool {
        f.rank() == f.cod.dim
    }

    fn is_iso(&self, f: &BoundedLinearMap) -> bool {
        match f.matrix.inverse() {
            Some(inv) => operator_norm(&inv, &f.cod, &f.dom) <= Q::one(),
            None => false,
        }
    }

    fn size(&self, x: &PolyNormedSpace) -> usize {
        x.dim
    }

    /// `{(x, y') : f x = g y'}` with the max norm.
    fn pullback(&self, f: &BoundedLinearMap, g: &BoundedLinearMap) -> Option<Cone<BoundedLinearMap>> {
        let (a, b) = (f.dom.dim, g.dom.dim);
        let neg_g = Matrix::from_rows(g.matrix.row_vecs().iter().map(|r| neg(r)).collect(), b);
        let diff = f.matrix.hcat(&neg_g);
        let k = Matrix::from_cols(&diff.nullspace(), a + b);
        let (top, bottom) = block_rows(a, b);
        let (kx, ky) = (top.mul(&k), bottom.mul(&k));
        let facets: Vec<Vec<Q>> = pull_facets(&f.dom, &kx).into_iter().chain(pull_facets(&g.dom, &ky)).collect();
        let p = PolyNormedSpace::from_facets(k.cols(), &facets).expect("fibre product of balls is a ball");
        Some(Cone {
            left: BoundedLinearMap::trusted(p.clone(), f.dom.clone(), kx),
            right: BoundedLinearMap::trusted(p, g.dom.clone(), ky),
        })
    }

    fn pullback_mediator(&self, cone: &Cone<BoundedLinearMap>, a: &BoundedLinearMap, b: &BoundedLinearMap) -> Option<BoundedLinearMap> {
        let k = cone.left.matrix.vcat(&cone.right.matrix);
        let h = k.solve_matrix(&a.matrix.vcat(&b.matrix))?;
        BoundedLinearMap::checked(&a.dom, &cone.left.dom, h)
    }

    /// `(Y' ⊕₁ X) / {(f' x', -g' x')}` with the quotient norm.
    fn pushout(&self, f: &BoundedLinearMap, g: &BoundedLinearMap) -> Option<Cocone<BoundedLinearMap>> {
        let (a, b) = (f.cod.dim, g.cod.dim);
        let neg_g = Matrix::from_rows(g.matrix.row_vecs().iter().map(|r| neg(r)).collect(), g.dom.dim);
        let s = f.matrix.vcat(&neg_g);
        let p = quotient_projection(a + b, &s.col_vecs());
        let (top, bottom) = block_rows(a, b);
        let (py, px) = (p.mul(&top.transpose()), p.mul(&bottom.transpose()));
        let gens: Vec<Vec<Q>> = f.cod.vertices.iter().map(|v| py.apply(v)).chain(g.cod.vertices.iter().map(|v| px.apply(v))).collect();
        let q_space = PolyNormedSpace::from_generators(p.rows(), &gens).expect("quotient of a ball is a ball");
        Some(Cocone {
            left: BoundedLinearMap::trusted(f.cod.clone(), q_space.clone(), py),
            right: BoundedLinearMap::trusted(g.cod.clone(), q_space, px),
        })
    }

    fn pushout_mediator(&self, cocone: &Cocone<BoundedLinearMap>, a: &BoundedLinearMap, b: &BoundedLinearMap) -> Option<BoundedLinearMap> {
        let p = cocone.left.matrix.hcat(&cocone.right.matrix);
        let rhs = a.matrix.hcat(&b.matrix);
        let ht = p.transpose().solve_matrix(&rhs.transpose())?;
        let h = ht.transpose();
        if h.mul(&p) != rhs {
            return None;
        }
        BoundedLinearMap::checked(&cocone.left.cod, &a.cod, h)
    }

    fn describe(&self, f: &BoundedLinearMap) -> String {
        format!("{:?}:{}->{}", f.matrix, f.dom.dim, f.cod.dim)
    }
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Vec<Q> {
    (0..dim).map(|_| q(rng.random_range(-range..=range))).collect()
}

/// A random ball spanned by `dim` to `dim + 2` small integer points.
pub fn random_space(rng: &mut ChaCha8Rng, dim: usize) -> PolyNormedSpace {
    loop {
        let count = dim + rng.random_range(0..=2);
        let gens: Vec<Vec<Q>> = (0..count).map(|_| random_vector(rng, dim, 2)).collect();
        if let Ok(x) = PolyNormedSpace::from_generators(dim, &gens) {
            return x;
        }
    }
}

/// A random integer matrix rescaled to operator norm at most 1.
pub fn random_map(rng: &mut ChaCha8Rng, dom: &PolyNormedSpace, cod: &PolyNormedSpace) -> BoundedLinearMap {
    let rows: Vec<Vec<Q>> = (0..cod.dim).map(|_| random_vector(rng, dom.dim, 2)).collect();
    let mut m = Matrix::from_rows(rows, dom.dim);
    let n = operator_norm(&m, dom, cod);
    if n > Q::one() {
        let inv = n.recip();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = &m[(r, c)] * &inv;
                m[(r, c)] = v;
            }
        }
    }
    BoundedLinearMap::trusted(dom.clone(), cod.clone(), m)
}

/// A random strict epi out of `x`: the cokernel of a random map into `x`.
fn random_strict_epi(rng: &mut ChaCha8Rng, x: &PolyNormedSpace) -> BoundedLinearMap {
    let d = rng.random_range(0..=x.dim);
    let z = random_space(rng, d);
    ns_coker(&random_map(rng, &z, x)).1
}

/// A random strict mono into `y`: the kernel of a random map out of `y`.
fn random_strict_mono(rng: &mut ChaCha8Rng, y: &PolyNormedSpace) -> BoundedLinearMap {
    let d = rng.random_range(0..=y.dim);
    let z = random_space(rng, d);
    ns_ker(&random_map(rng, y, &z)).1
}

/// Random parabelian suite: pullbacks of strict epis along strict monos and
/// pushouts of strict monos along strict epis, each square also checked
/// against the canonical (co)limit.
pub fn ns_axiom_suite(dim_max: usize, samples: usize, seed: u64) -> Result<Report> {
    let cat = PolyNorms;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(cat.name());
    let mut pull = Check::new(AX_PULLBACK);
    let mut pull_cart = Check::new(AX_PULLBACK_CARTESIAN);
    let mut bicart = Check::new(AX_PULLBACK_BICARTESIAN);
    let mut push = Check::new(AX_PUSHOUT);
    let mut push_cocart = Check::new(AX_PUSHOUT_COCARTESIAN);
    for _ in 0..samples {
        let d = rng.random_range(0..=dim_max);
        let y_prime = random_space(&mut rng, d);
        let g = random_strict_epi(&mut rng, &y_prime);
        let f = random_strict_mono(&mut rng, &g.cod);
        let sq = pullback_strict_mono(&cat, &f, &g)?;
        pull.record(classify(&cat, &sq.g_prime)?.is_strict_epi, || {
            format!("f={} g={}", cat.describe(&f), cat.describe(&g))
        });
        pull_cart.record(is_cartesian(&cat, &sq)?, || format!("f={} g={}", cat.describe(&f), cat.describe(&g)));
        bicart.record(is_cocartesian(&cat, &sq)?, || format!("f={} g={}", cat.describe(&f), cat.describe(&g)));

        let d = rng.random_range(0..=dim_max);
        let extra = rng.random_range(0..=1);
        let y = random_space(&mut rng, d + extra);
        let h = strict_mono_from(&mut rng, d, &y);
        let e = random_strict_epi(&mut rng, &h.dom);
        let sq = pushout_strict_epi(&cat, &e, &h)?;
        push.record(classify(&cat, &sq.f)?.is_strict_mono, || {
            format!("e={} h={}", cat.describe(&e), cat.describe(&h))
        });
        push_cocart.record(is_cocartesian(&cat, &sq)?, || format!("e={} h={}", cat.describe(&e), cat.describe(&h)));
    }
    report.note("samples", samples);
    report.note("seed", seed);
    for c in [pull, push, pull_cart, push_cocart, bicart] {
        report.push(c);
    }
    Ok(report)
}

/// An isometric embedding of a random `dim`-dimensional slice of `ambient`.
fn strict_mono_from(rng: &mut ChaCha8Rng, dim: usize, ambient: &PolyNormedSpace) -> BoundedLinearMap {
    loop {
        let cols: Vec<Vec<Q>> = (0..dim).map(|_| random_vector(rng, ambient.dim, 2)).collect();
        let k = Matrix::from_cols(&cols, ambient.dim);
        if k.rank() == dim {
            let s = slice(ambient, &k);
            return BoundedLinearMap::trusted(s, ambient.clone(), k);
        }
    }
}

/// Best value of `‖y + Σ z_i w_i‖` over a grid of rational `z`, used as an
/// independent upper bound for quotient norms.
pub fn grid_quotient_norm(y: &PolyNormedSpace, v: &[Q], span: &[Vec<Q>], radius: i64, denom: i64) -> Q {
    let steps: Vec<Q> = (-radius * denom..=radius * denom).map(|k| Q::new(k.into(), denom.into())).collect();
    let mut best: Option<Q> = None;
    let mut idx = vec![0usize; span.len()];
    loop {
        let mut p = v.to_vec();
        for (w, &i) in span.iter().zip(&idx) {
            for (pj, wj) in p.iter_mut().zip(w) {
                *pj += &steps[i] * wj;
            }
        }
        let n = y.norm(&p);
        if best.as_ref().is_none_or(|b| n < *b) {
            best = Some(n);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < steps.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return best.expect("grid is nonempty");
        }
    }
}

pub fn is_zero_space(x: &PolyNormedSpace) -> bool {
    x.dim == 0 && x.vertices.iter().all(|v| is_zero_vec(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::factorize;
    use crate::linalg::qf;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn map(dom: &PolyNormedSpace, cod: &PolyNormedSpace, rows: &[&[i64]]) -> BoundedLinearMap {
        let m = if rows.is_empty() { Matrix::zeros(0, dom.dim()) } else { Matrix::from_i64(rows) };
        BoundedLinearMap::new(dom.clone(), cod.clone(), m).unwrap()
    }

    #[test]
    fn gauges() {
        assert_eq!(PolyNormedSpace::linf(2).norm(&v(&[2, 1])), q(2));
        assert_eq!(PolyNormedSpace::l1(2).norm(&v(&[2, 1])), q(3));
        assert_eq!(PolyNormedSpace::linf(2).vertices().len(), 4);
        assert_eq!(PolyNormedSpace::l1(3).facets().len(), 8);
    }

    #[test]
    fn descriptions_agree() {
        let x = PolyNormedSpace::from_generators(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(x, PolyNormedSpace::from_facets(2, x.facets()).unwrap());
        for a in x.facets() {
            assert!(x.vertices().iter().filter(|p| dot(a, p) == Q::one()).count() >= 2);
        }
        assert!(PolyNormedSpace::from_generators(2, &[v(&[1, 1])]).is_err());
        assert!(PolyNormedSpace::from_facets(2, &[v(&[1, 0])]).is_err());
    }

    #[test]
    fn quotient_of_square_by_diagonal() {
        let sq = PolyNormedSpace::linf(2);
        let diag = map(&PolyNormedSpace::linf(1), &sq, &[&[1], &[1]]);
        let (c, p) = ns_coker(&diag);
        assert_eq!(c, PolyNormedSpace::from_generators(1, &[v(&[2])]).unwrap());
        let class = p.matrix.apply(&v(&[1, 0]));
        assert_eq!(c.norm(&class), qf(1, 2));
        assert_eq!(grid_quotient_norm(&sq, &v(&[1, 0]), &[v(&[1, 1])], 2, 4), qf(1, 2));
    }

    #[test]
    fn kernels() {
        let sq = PolyNormedSpace::linf(2);
        let (k, _) = ns_ker(&PolyNorms.identity(&sq));
        assert_eq!(k.dim(), 0);
        let proj = map(&sq, &PolyNormedSpace::linf(1), &[&[1, 0]]);
        let (k, incl) = ns_ker(&proj);
        assert_eq!(k, PolyNormedSpace::linf(1));
        assert_eq!(incl.matrix, Matrix::from_i64(&[&[0], &[1]]));
        let (k, _) = ns_ker(&PolyNorms.zero_morphism(&sq, &sq));
        assert_eq!(k, sq);
    }

    #[test]
    fn products() {
        let i = PolyNormedSpace::linf(1);
        let (p, c) = ns_prod_coprod(&i, &i);
        assert_eq!(p.object, PolyNormedSpace::linf(2));
        assert_eq!(c.object, PolyNormedSpace::l1(2));
    }

    #[test]
    fn classification() {
        let l1 = PolyNormedSpace::l1(2);
        let linf = PolyNormedSpace::linf(2);
        let id = map(&l1, &linf, &[&[1, 0], &[0, 1]]);
        let c = ns_classify(&id);
        assert!(c.is_mono && c.is_epi && !c.is_strict);
        assert_eq!(classify(&PolyNorms, &id).unwrap(), c);
        let (k, incl) = ns_ker(&map(&l1, &PolyNormedSpace::linf(1), &[&[1, 1]]));
        assert_eq!(k, PolyNormedSpace::from_generators(1, &[vec![qf(1, 2)]]).unwrap());
        assert!(ns_classify(&incl).is_strict_mono);
        let (_, proj) = ns_coker(&incl);
        assert!(ns_classify(&proj).is_strict_epi);
        assert!(BoundedLinearMap::new(linf, l1, Matrix::identity(2)).is_err());
    }

    #[test]
    fn direct_and_generic_classification_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let (a, b) = (rng.random_range(0..=2), rng.random_range(0..=2));
            let x = random_space(&mut rng, a);
            let y = random_space(&mut rng, b);
            let f = random_map(&mut rng, &x, &y);
            assert_eq!(ns_classify(&f), classify(&PolyNorms, &f).unwrap(), "{}", PolyNorms.describe(&f));
            let fac = factorize(&PolyNorms, &f).unwrap();
            assert_eq!(fac.im.matrix.mul(&fac.mid.matrix).mul(&fac.coim.matrix), f.matrix);
        }
    }

    #[test]
    fn suite_passes() {
        let r = ns_axiom_suite(2, 40, 7).unwrap();
        assert!(r.passed(), "{r}");
    }
}
