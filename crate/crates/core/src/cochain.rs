//! Cochains of the bicomplex `C^{p,q}` and the maps between them.
//!
//! A `(p, q)`-cochain with `p > 0` is a multilinear map `A^p ⊗ L^q -> M`;
//! with `p = 0` it is a map `L^q -> P`. Coefficients are stored densely,
//! row-major over `(a_1..a_p, x_1..x_q, out)`: algebra arguments first, then
//! Leibniz arguments, then the output coordinate. In particular the anchor
//! coefficient `μ_i(x, a)` lives at `(a; x)`.
//!
//! The differentials are written in scatter form: each nonzero input
//! coefficient pushes its contributions to the outputs that read it. This is
//! the same linear map as the usual pointwise formula but costs time
//! proportional to the support of the input, which keeps matrix assembly on
//! unit vectors cheap.

use num_traits::{One, Zero};

use crate::algebra::{CPModule, CourantPair, Tensor3};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, zeros, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub p: usize,
    pub q: usize,
    pub dim_a: usize,
    pub dim_l: usize,
    pub dim_out: usize,
}

impl Shape {
    pub fn arity(&self) -> usize {
        self.p + self.q
    }

    /// Number of argument tuples.
    pub fn blocks(&self) -> usize {
        self.dim_a.pow(self.p as u32) * self.dim_l.pow(self.q as u32)
    }

    pub fn len(&self) -> usize {
        self.blocks() * self.dim_out
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Radix of argument slot `s`.
    fn radix(&self, s: usize) -> usize {
        if s < self.p {
            self.dim_a
        } else {
            self.dim_l
        }
    }

    pub fn block_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity());
        args.iter().enumerate().fold(0, |acc, (s, &i)| acc * self.radix(s) + i)
    }

    pub fn args_of(&self, mut block: usize) -> Vec<usize> {
        let mut args = vec![0; self.arity()];
        for s in (0..self.arity()).rev() {
            let r = self.radix(s);
            args[s] = block % r;
            block /= r;
        }
        args
    }
}

/// An element of `C^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    shape: Shape,
    coeffs: Vec<Scalar>,
}

impl Cochain {
    pub fn zeros(shape: Shape) -> Self {
        Self { shape, coeffs: zeros(shape.len()) }
    }

    pub fn from_coeffs(shape: Shape, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != shape.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a ({},{})-cochain of size {}",
                coeffs.len(),
                shape.p,
                shape.q,
                shape.len()
            )));
        }
        Ok(Self { shape, coeffs })
    }

    /// Builds a cochain from its value on every argument tuple.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Self {
        let mut c = Self::zeros(shape);
        for b in 0..shape.blocks() {
            let args = shape.args_of(b);
            let v = f(&args);
            assert_eq!(v.len(), shape.dim_out, "value has the wrong length");
            c.block_mut(b).clone_from_slice(&v);
        }
        c
    }

    /// A bilinear tensor `t[i][j]` viewed as a cochain with `p + q = 2`.
    /// For `(1, 1)` the tensor is indexed `(x, a)` and transposed into the
    /// `(a; x)` layout.
    pub fn from_tensor(shape: Shape, t: &Tensor3) -> Result<Self> {
        if shape.arity() != 2 {
            return Err(Error::Dimension("tensor cochains have exactly two arguments".into()));
        }
        let expected = match (shape.p, shape.q) {
            (2, 0) => [shape.dim_a, shape.dim_a, shape.dim_out],
            (1, 1) => [shape.dim_l, shape.dim_a, shape.dim_out],
            _ => [shape.dim_l, shape.dim_l, shape.dim_out],
        };
        t.check_dims(expected, "cochain tensor")?;
        Ok(Self::from_fn(shape, |args| {
            if shape.p == 1 {
                t.slot(args[1], args[0]).to_vec()
            } else {
                t.slot(args[0], args[1]).to_vec()
            }
        }))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn p(&self) -> usize {
        self.shape.p
    }

    pub fn q(&self) -> usize {
        self.shape.q
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    fn block(&self, b: usize) -> &[Scalar] {
        let d = self.shape.dim_out;
        &self.coeffs[b * d..(b + 1) * d]
    }

    fn block_mut(&mut self, b: usize) -> &mut [Scalar] {
        let d = self.shape.dim_out;
        &mut self.coeffs[b * d..(b + 1) * d]
    }

    /// Value on a tuple of basis indices, algebra arguments first.
    pub fn value(&self, args: &[usize]) -> &[Scalar] {
        self.block(self.shape.block_of(args))
    }

    pub fn value_mut(&mut self, args: &[usize]) -> &mut [Scalar] {
        let b = self.shape.block_of(args);
        self.block_mut(b)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { shape: self.shape, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { shape: self.shape, coeffs })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { shape: self.shape, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Dimension(format!(
                "cochain shapes differ: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// Nonzero coefficients as `(argument tuple, output index, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (Vec<usize>, usize, &Scalar)> + '_ {
        let d = self.shape.dim_out;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(n, c)| (self.shape.args_of(n / d), n % d, c))
    }

    fn add_at(&mut self, args: &[usize], out: usize, c: Scalar) {
        let b = self.shape.block_of(args);
        self.coeffs[b * self.shape.dim_out + out] += c;
    }
}

/// An element of `C^n_tot`: one cochain per bidegree, `p` running from `n`
/// down to `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCochain {
    n: usize,
    components: Vec<Cochain>,
}

impl TotalCochain {
    pub fn new(components: Vec<Cochain>) -> Result<Self> {
        let n = components.len().checked_sub(1).ok_or_else(|| {
            Error::Dimension("a total cochain needs at least one component".into())
        })?;
        for (k, c) in components.iter().enumerate() {
            if (c.p(), c.q()) != (n - k, k) {
                return Err(Error::Dimension(format!(
                    "component {k} has bidegree ({},{}), expected ({},{k})",
                    c.p(),
                    c.q(),
                    n - k
                )));
            }
        }
        Ok(Self { n, components })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Cochain> {
        self.components
    }

    /// The component of bidegree `(p, n - p)`.
    pub fn component(&self, p: usize) -> &Cochain {
        &self.components[self.n - p]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cochain::is_zero)
    }

    /// Coordinates in the canonical basis: components in order, each flattened.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("degrees {} and {} differ", self.n, other.n)));
        }
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, components })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("degrees {} and {} differ", self.n, other.n)));
        }
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, components })
    }
}

type Entries = Vec<(usize, Scalar)>;
type Entries2 = Vec<(usize, usize, Scalar)>;

fn nz(v: &[Scalar]) -> Entries {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Sparse views of every structure tensor, in the orientation the scatter
/// loops need.
#[derive(Debug)]
struct Tables {
    /// `mul_inv[k]`: all `(a, b, c)` with `(e_a e_b)_k = c`.
    mul_inv: Vec<Entries2>,
    /// `lam_inv[z]`: all `(x, y, c)` with `[e_x, e_y]_z = c`.
    lam_inv: Vec<Entries2>,
    /// `mu_inv[x][b]`: all `(a, c)` with `μ(x)(e_a)_b = c`.
    mu_inv: Vec<Vec<Entries>>,
    left: Vec<Vec<Entries>>,
    right: Vec<Vec<Entries>>,
    m_left: Vec<Vec<Entries>>,
    p_left: Vec<Vec<Entries>>,
    p_right: Vec<Vec<Entries>>,
    /// `phi[p][a]`: sparse `φ(p)(e_a)`.
    phi: Vec<Vec<Entries>>,
}

fn slots(t: &Tensor3) -> Vec<Vec<Entries>> {
    let [d0, d1, _] = t.dims();
    (0..d0).map(|i| (0..d1).map(|j| nz(t.slot(i, j))).collect()).collect()
}

fn inverse(t: &Tensor3) -> Vec<Entries2> {
    let mut inv = vec![Vec::new(); t.dims()[2]];
    for (i, j, k, c) in t.nonzeros() {
        inv[k].push((i, j, c.clone()));
    }
    inv
}

impl Tables {
    fn new(pair: &CourantPair, module: &CPModule) -> Self {
        let (da, dl) = (pair.dim_a(), pair.dim_l());
        let mut mu_inv = vec![vec![Vec::new(); da]; dl];
        for (x, d) in pair.mu.iter().enumerate() {
            for a in 0..da {
                for b in 0..da {
                    let c = &d.matrix[(b, a)];
                    if !c.is_zero() {
                        mu_inv[x][b].push((a, c.clone()));
                    }
                }
            }
        }
        Self {
            mul_inv: inverse(&pair.assoc.mul),
            lam_inv: inverse(&pair.leibniz.bracket),
            mu_inv,
            left: slots(&module.left_act),
            right: slots(&module.right_act),
            m_left: slots(&module.m_left),
            p_left: slots(&module.p_left),
            p_right: slots(&module.p_right),
            phi: module
                .phi
                .iter()
                .map(|m| (0..da).map(|a| nz(&m.column(a))).collect())
                .collect(),
        }
    }
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// The bicomplex `C^{*,*}(A, L; M, P)` of a Courant pair with coefficients in
/// a module.
#[derive(Debug)]
pub struct Bicomplex<'a> {
    pair: &'a CourantPair,
    module: &'a CPModule,
    tables: Tables,
}

impl<'a> Bicomplex<'a> {
    pub fn new(pair: &'a CourantPair, module: &'a CPModule) -> Result<Self> {
        module.check_shapes(pair)?;
        Ok(Self { pair, module, tables: Tables::new(pair, module) })
    }

    pub fn pair(&self) -> &CourantPair {
        self.pair
    }

    pub fn module(&self) -> &CPModule {
        self.module
    }

    pub fn shape(&self, p: usize, q: usize) -> Shape {
        Shape {
            p,
            q,
            dim_a: self.pair.dim_a(),
            dim_l: self.pair.dim_l(),
            dim_out: if p > 0 { self.module.m_dim() } else { self.module.p_dim() },
        }
    }

    pub fn zero(&self, p: usize, q: usize) -> Cochain {
        Cochain::zeros(self.shape(p, q))
    }

    pub fn zero_total(&self, n: usize) -> TotalCochain {
        TotalCochain { n, components: (0..=n).map(|k| self.zero(n - k, k)).collect() }
    }

    pub fn total_from_flat(&self, n: usize, v: &[Scalar]) -> Result<TotalCochain> {
        let mut components = Vec::with_capacity(n + 1);
        let mut offset = 0;
        for k in 0..=n {
            let shape = self.shape(n - k, k);
            let end = offset + shape.len();
            let slice = v.get(offset..end).ok_or_else(|| {
                Error::Dimension(format!("flat vector of length {} is too short for degree {n}", v.len()))
            })?;
            components.push(Cochain::from_coeffs(shape, slice.to_vec())?);
            offset = end;
        }
        if offset != v.len() {
            return Err(Error::Dimension(format!(
                "flat vector of length {} for a space of dimension {offset}",
                v.len()
            )));
        }
        TotalCochain::new(components)
    }

    fn check(&self, f: &Cochain) -> Result<()> {
        if f.shape() != self.shape(f.p(), f.q()) {
            return Err(Error::Dimension(format!(
                "cochain shape {:?} does not belong to this bicomplex",
                f.shape()
            )));
        }
        Ok(())
    }

    /// `δ_H`, the Hochschild coboundary in the algebra arguments.
    pub fn hochschild_delta(&self, f: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        if f.p() == 0 {
            return Err(Error::WrongDifferential("the Hochschild coboundary needs p >= 1; use the vertical map at p = 0"));
        }
        let (p, q) = (f.p(), f.q());
        let t = &self.tables;
        let da = self.pair.dim_a();
        let mut g = self.zero(p + 1, q);
        let mut args = vec![0; p + 1 + q];
        for (src, o, v) in f.nonzeros() {
            let (bs, ys) = src.split_at(p);
            // a_1 · f(a_2, ..)
            args[1..].clone_from_slice(&src);
            for a in 0..da {
                args[0] = a;
                for (k, c) in &t.left[a][o] {
                    g.add_at(&args, *k, v * c);
                }
            }
            // (-1)^i f(.., a_i a_{i+1}, ..)
            for i in 0..p {
                let s = sign(i + 1) * v;
                args[..i].clone_from_slice(&bs[..i]);
                args[i + 2..p + 1].clone_from_slice(&bs[i + 1..]);
                args[p + 1..].clone_from_slice(ys);
                for (a, b, c) in &t.mul_inv[bs[i]] {
                    args[i] = *a;
                    args[i + 1] = *b;
                    g.add_at(&args, o, &s * c);
                }
            }
            // (-1)^{p+1} f(.., a_p) · a_{p+1}
            let s = sign(p + 1) * v;
            args[..p].clone_from_slice(bs);
            args[p + 1..].clone_from_slice(ys);
            for a in 0..da {
                args[p] = a;
                for (k, c) in &t.right[o][a] {
                    g.add_at(&args, *k, &s * c);
                }
            }
        }
        Ok(g)
    }

    /// Pushes `coef · [x, e]` for the single coefficient `e` of a cochain at
    /// algebra arguments `bs` and output `o`. On `p > 0` this is the action on
    /// `C^p(A, M)`: `[x, f](a..) = [x, f(a..)] - Σ_k f(.., [x, a_k], ..)`.
    /// On `p = 0` it is the left action on `P`. `emit` receives the new
    /// algebra arguments, output index and coefficient.
    fn act_entry(&self, x: usize, bs: &[usize], o: usize, coef: &Scalar, mut emit: impl FnMut(&[usize], usize, Scalar)) {
        let t = &self.tables;
        if bs.is_empty() {
            for (k, c) in &t.p_left[x][o] {
                emit(bs, *k, coef * c);
            }
            return;
        }
        for (k, c) in &t.m_left[x][o] {
            emit(bs, *k, coef * c);
        }
        let mut args = bs.to_vec();
        for pos in 0..bs.len() {
            for (a, c) in &t.mu_inv[x][bs[pos]] {
                args[pos] = *a;
                emit(&args, o, -(coef * c));
            }
            args[pos] = bs[pos];
        }
    }

    /// The Leibniz-module action of a basis element `x` on cochains,
    /// applied to values with the Leibniz arguments held fixed.
    pub fn module_action(&self, x: usize, f: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        if x >= self.pair.dim_l() {
            return Err(Error::Dimension(format!("basis index {x} out of range for L")));
        }
        let p = f.p();
        let mut g = self.zero(p, f.q());
        let mut args = Vec::new();
        for (src, o, v) in f.nonzeros() {
            let (bs, ys) = src.split_at(p);
            self.act_entry(x, bs, o, v, |new_bs, k, c| {
                args.clear();
                args.extend_from_slice(new_bs);
                args.extend_from_slice(ys);
                g.add_at(&args, k, c);
            });
        }
        Ok(g)
    }

    /// `δ_L`, the Leibniz coboundary in the L-arguments, normalized by
    /// `(-1)^{q+1}` so that it commutes with `δ_H` and `δ_v`:
    ///
    /// `(-1)^{q+1} δ_L f(x_1..x_{q+1}) = Σ_{i≤q} (-1)^{i-1} [x_i, f(..x̂_i..)]
    ///   + (-1)^{q+1} [f(x_1..x_q), x_{q+1}]
    ///   + Σ_{i<j} (-1)^i f(..x̂_i..[x_i,x_j]..)`
    ///
    /// with `[g, x] = -[x, g]` on `C^p(A, M)` for `p > 0`.
    pub fn leibniz_delta(&self, f: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        let (p, q) = (f.p(), f.q());
        let dl = self.pair.dim_l();
        let t = &self.tables;
        let eps = sign(q + 1);
        let mut g = self.zero(p, q + 1);
        let mut args = vec![0; p + q + 1];
        for (src, o, v) in f.nonzeros() {
            let (bs, ys) = src.split_at(p);
            // [x_i, f(..x̂_i..)] for i = 1..q, inserting x at slot i
            for i in 0..q {
                let coef = &eps * sign(i) * v;
                let mut lx = Vec::with_capacity(q + 1);
                lx.extend_from_slice(&ys[..i]);
                lx.push(0);
                lx.extend_from_slice(&ys[i..]);
                for x in 0..dl {
                    lx[i] = x;
                    self.act_entry(x, bs, o, &coef, |new_bs, k, c| {
                        args[..p].clone_from_slice(new_bs);
                        args[p..].clone_from_slice(&lx);
                        g.add_at(&args, k, c);
                    });
                }
            }
            // (-1)^{q+1} [f(x_1..x_q), x_{q+1}]; the prefactor cancels eps
            args[p..p + q].clone_from_slice(ys);
            for x in 0..dl {
                args[p + q] = x;
                if p == 0 {
                    for (k, c) in &t.p_right[o][x] {
                        g.add_at(&args, *k, v * c);
                    }
                } else {
                    let neg = -v.clone();
                    let lx = args[p..].to_vec();
                    self.act_entry(x, bs, o, &neg, |new_bs, k, c| {
                        let mut full = new_bs.to_vec();
                        full.extend_from_slice(&lx);
                        g.add_at(&full, k, c);
                    });
                }
            }
            // (-1)^i f(x_1..x̂_i..x_{j-1}, [x_i,x_j], x_{j+1}..), 1 <= i < j <= q+1
            args[..p].clone_from_slice(bs);
            for i in 0..q {
                for j in i + 1..=q {
                    let coef = &eps * sign(i + 1) * v;
                    for (u, w, c) in &t.lam_inv[ys[j - 1]] {
                        let l = &mut args[p..];
                        l[..i].clone_from_slice(&ys[..i]);
                        l[i] = *u;
                        l[i + 1..j].clone_from_slice(&ys[i..j - 1]);
                        l[j] = *w;
                        l[j + 1..].clone_from_slice(&ys[j..]);
                        g.add_at(&args, o, &coef * c);
                    }
                }
            }
        }
        Ok(g)
    }

    /// `δ_v: C^{0,q} -> C^{1,q}`, post-composition with `φ`:
    /// `(δ_v ψ)(a; x..) = φ(ψ(x..))(a)`.
    pub fn vertical_delta(&self, psi: &Cochain) -> Result<Cochain> {
        self.check(psi)?;
        if psi.p() != 0 {
            return Err(Error::WrongDifferential("the vertical map is only defined on p = 0"));
        }
        let q = psi.q();
        let mut g = self.zero(1, q);
        let mut args = vec![0; q + 1];
        for (ys, o, v) in psi.nonzeros() {
            args[1..].clone_from_slice(&ys);
            for a in 0..self.pair.dim_a() {
                args[0] = a;
                for (k, c) in &self.tables.phi[o][a] {
                    g.add_at(&args, *k, v * c);
                }
            }
        }
        Ok(g)
    }

    /// `δ_tot`: on `C^{p,q}` it is `δ_H + (-1)^p δ_L`, with `δ_v` in place of
    /// `δ_H` at `p = 0`.
    pub fn total_delta(&self, c: &TotalCochain) -> Result<TotalCochain> {
        let n = c.degree();
        let mut out = self.zero_total(n + 1);
        for f in c.components() {
            let p = f.p();
            let vert = if p == 0 { self.vertical_delta(f)? } else { self.hochschild_delta(f)? };
            let slot = n + 1 - (p + 1);
            out.components[slot] = out.components[slot].add(&vert)?;
            let horiz = self.leibniz_delta(f)?;
            let horiz = if p % 2 == 0 { horiz } else { horiz.neg() };
            let slot = n + 1 - p;
            out.components[slot] = out.components[slot].add(&horiz)?;
        }
        Ok(out)
    }
}

fn composable(f: &Cochain, g: &Cochain) -> Result<usize> {
    if f.p() == 0 || g.p() == 0 {
        return Err(Error::NotComposable(f.p(), g.p()));
    }
    if f.q() != 0 || g.q() != 0 {
        return Err(Error::Dimension("composition needs cochains without Leibniz arguments".into()));
    }
    let (fs, gs) = (f.shape(), g.shape());
    if fs.dim_a != gs.dim_a || fs.dim_out != fs.dim_a || gs.dim_out != gs.dim_a {
        return Err(Error::Dimension("composition needs A-valued cochains on the same algebra".into()));
    }
    Ok(f.p() + g.p() - 1)
}

/// The pre-Lie product `(f∘g)(a..) = Σ_i (-1)^{i(q+1)} f(a_1..a_i, g(a_{i+1}..a_{i+q}), ..)`
/// on A-valued Hochschild cochains of degrees `p` and `q`.
pub fn circle(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let n = composable(f, g)?;
    let (p, q) = (f.p(), g.p());
    let shape = Shape { p: n, ..f.shape() };
    let da = shape.dim_a;
    let mut inner = vec![0; p];
    Ok(Cochain::from_fn(shape, |args| {
        let mut out = zeros(da);
        for i in 0..p {
            let gv = g.value(&args[i..i + q]);
            let s = sign(i * (q + 1));
            inner[..i].clone_from_slice(&args[..i]);
            inner[i + 1..].clone_from_slice(&args[i + q..]);
            for (k, c) in gv.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                inner[i] = k;
                axpy(&mut out, &(&s * c), f.value(&inner));
            }
        }
        out
    }))
}

/// The Gerstenhaber bracket `[f, g] = f∘g - (-1)^{(p-1)(q-1)} g∘f`.
pub fn gerstenhaber(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let fg = circle(f, g)?;
    let gf = circle(g, f)?;
    let s = sign((f.p() - 1) * (g.p() - 1));
    fg.sub(&gf.scale(&s))
}

/// The slice `a ↦ μ_i(x, a)` of a `(1,1)`-cochain.
pub fn curry_mu(mu_i: &Cochain, x: usize) -> Result<Cochain> {
    if (mu_i.p(), mu_i.q()) != (1, 1) {
        return Err(Error::Dimension(format!("expected a (1,1)-cochain, got ({},{})", mu_i.p(), mu_i.q())));
    }
    let shape = Shape { p: 1, q: 0, ..mu_i.shape() };
    if x >= mu_i.shape().dim_l {
        return Err(Error::Dimension(format!("basis index {x} out of range for L")));
    }
    Ok(Cochain::from_fn(shape, |args| mu_i.value(&[args[0], x]).to_vec()))
}

/// The multiplication of A as a `(2,0)`-cochain.
pub fn alpha0(pair: &CourantPair) -> Cochain {
    let s = adjoint_shape(pair, 2, 0);
    Cochain::from_tensor(s, &pair.assoc.mul).expect("multiplication has the algebra's shape")
}

/// The anchor as a `(1,1)`-cochain in the `(a; x)` layout.
pub fn mu0(pair: &CourantPair) -> Cochain {
    let s = adjoint_shape(pair, 1, 1);
    Cochain::from_tensor(s, &pair.mu_tensor()).expect("anchor has the pair's shape")
}

/// The bracket of L as a `(0,2)`-cochain.
pub fn lambda0(pair: &CourantPair) -> Cochain {
    let s = adjoint_shape(pair, 0, 2);
    Cochain::from_tensor(s, &pair.leibniz.bracket).expect("bracket has the algebra's shape")
}

/// Shape of a `(p,q)`-cochain with coefficients in the adjoint module.
pub fn adjoint_shape(pair: &CourantPair, p: usize, q: usize) -> Shape {
    Shape {
        p,
        q,
        dim_a: pair.dim_a(),
        dim_l: pair.dim_l(),
        dim_out: if p > 0 { pair.dim_a() } else { pair.dim_l() },
    }
}

/// Zero cochain of the adjoint shape.
pub fn adjoint_zero(pair: &CourantPair, p: usize, q: usize) -> Cochain {
    Cochain::zeros(adjoint_shape(pair, p, q))
}
