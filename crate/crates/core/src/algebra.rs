//! Structure-constant carriers: associative algebras, left Leibniz algebras,
//! derivations, Courant pairs and their modules, plus exhaustive law checks.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, zeros, Matrix, Scalar};

/// A rank-3 tensor `t[i][j] -> vector`, the shape of every bilinear map here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self { dims: [d0, d1, d2], data: zeros(d0 * d1 * d2) }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2]
    }

    /// The coefficient vector of `t(e_i, e_j)`.
    pub fn slot(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dims[2]]
    }

    pub fn slot_mut(&mut self, i: usize, j: usize) -> &mut [Scalar] {
        let o = self.offset(i, j);
        let d = self.dims[2];
        &mut self.data[o..o + d]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let o = self.offset(i, j);
        self.data[o + k] = value;
    }

    /// Bilinear extension to arbitrary vectors.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zeros(self.dims[2]);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                axpy(&mut out, &(ui * vj), self.slot(i, j));
            }
        }
        out
    }

    /// `t(e_i, v)`.
    pub fn apply_right(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zeros(self.dims[2]);
        for (j, vj) in v.iter().enumerate() {
            axpy(&mut out, vj, self.slot(i, j));
        }
        out
    }

    /// `t(u, e_j)`.
    pub fn apply_left(&self, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = zeros(self.dims[2]);
        for (i, ui) in u.iter().enumerate() {
            axpy(&mut out, ui, self.slot(i, j));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Nonzero entries as `(i, j, k, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let [_, d1, d2] = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(n, x)| (n / (d1 * d2), (n / d2) % d1, n % d2, x))
    }

    pub(crate) fn check_dims(&self, expected: [usize; 3], what: &str) -> Result<()> {
        if self.dims != expected {
            return Err(Error::Dimension(format!(
                "{what} has shape {:?}, expected {:?}",
                self.dims, expected
            )));
        }
        Ok(())
    }
}

/// Finite-dimensional associative algebra given by `e_i e_j = Σ_k mul[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    pub basis: Vec<String>,
    pub mul: Tensor3,
}

impl AssocAlgebra {
    pub fn new(basis: Vec<String>, mul: Tensor3) -> Result<Self> {
        let d = basis.len();
        mul.check_dims([d, d, d], "multiplication table")?;
        Ok(Self { basis, mul })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Q[x]/(x^n)` with basis `1, x, x2, ...`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let mut mul = Tensor3::zeros(n, n, n);
        for i in 0..n {
            for j in 0..n - i {
                mul.set(i, j, i + j, Scalar::one());
            }
        }
        let basis = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        Self { basis, mul }
    }

    /// The zero-multiplication algebra of the given dimension.
    pub fn null(basis: Vec<String>) -> Self {
        let d = basis.len();
        Self { basis, mul: Tensor3::zeros(d, d, d) }
    }

    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.mul.apply(u, v)
    }
}

/// Finite-dimensional left Leibniz algebra given by its bracket table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    pub basis: Vec<String>,
    pub bracket: Tensor3,
}

impl LeibnizAlgebra {
    pub fn new(basis: Vec<String>, bracket: Tensor3) -> Result<Self> {
        let d = basis.len();
        bracket.check_dims([d, d, d], "bracket table")?;
        Ok(Self { basis, bracket })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn abelian(basis: Vec<String>) -> Self {
        let d = basis.len();
        Self { basis, bracket: Tensor3::zeros(d, d, d) }
    }

    pub fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(u, v)
    }

    /// Witness of the first basis triple violating the left Leibniz identity.
    pub fn leibniz_violation(&self) -> Option<Vec<usize>> {
        let d = self.dim();
        first_failure(&[d, d, d], |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let lhs = self.bracket.apply_right(x, self.bracket.slot(y, z));
            let mut rhs = self.bracket.apply_left(self.bracket.slot(x, y), z);
            let r2 = self.bracket.apply_right(y, self.bracket.slot(x, z));
            axpy(&mut rhs, &Scalar::one(), &r2);
            lhs == rhs
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        first_failure(&[d, d], |t| {
            let s = self.bracket.slot(t[0], t[1]);
            let r = self.bracket.slot(t[1], t[0]);
            s.iter().zip(r).all(|(a, b)| (a + b).is_zero())
        })
        .is_none()
    }
}

/// A linear map on A stored as a matrix whose column `a` is the image of `e_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub matrix: Matrix,
}

impl Derivation {
    pub fn zero(dim: usize) -> Self {
        Self { matrix: Matrix::zeros(dim, dim) }
    }

    pub fn image(&self, a: usize) -> Vec<Scalar> {
        self.matrix.column(a)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v).expect("derivation applied to a vector of the wrong length")
    }

    /// First basis pair `(a, b)` where `D(ab) != D(a)b + aD(b)`.
    pub fn leibniz_rule_violation(&self, algebra: &AssocAlgebra) -> Option<Vec<usize>> {
        let d = algebra.dim();
        first_failure(&[d, d], |t| {
            let (a, b) = (t[0], t[1]);
            let lhs = self.apply(algebra.mul.slot(a, b));
            let mut rhs = algebra.mul.apply_left(&self.image(a), b);
            axpy(&mut rhs, &Scalar::one(), &algebra.mul.apply_right(a, &self.image(b)));
            lhs == rhs
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let ab = self.matrix.mul(&other.matrix).expect("square matrices");
        let ba = other.matrix.mul(&self.matrix).expect("square matrices");
        Self { matrix: ab.sub(&ba).expect("same shape") }
    }
}

/// An associative algebra A, a left Leibniz algebra L and an anchor
/// `mu: L -> Der(A)`, one derivation per basis element of L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CourantPair {
    pub assoc: AssocAlgebra,
    pub leibniz: LeibnizAlgebra,
    pub mu: Vec<Derivation>,
}

impl CourantPair {
    pub fn new(assoc: AssocAlgebra, leibniz: LeibnizAlgebra, mu: Vec<Derivation>) -> Result<Self> {
        if mu.len() != leibniz.dim() {
            return Err(Error::Dimension(format!(
                "{} anchor matrices for a Leibniz algebra of dimension {}",
                mu.len(),
                leibniz.dim()
            )));
        }
        let d = assoc.dim();
        if let Some((x, m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| (m.matrix.rows(), m.matrix.cols()) != (d, d))
        {
            return Err(Error::Dimension(format!(
                "anchor matrix {x} is {}x{}, expected {d}x{d}",
                m.matrix.rows(),
                m.matrix.cols()
            )));
        }
        Ok(Self { assoc, leibniz, mu })
    }

    pub fn dim_a(&self) -> usize {
        self.assoc.dim()
    }

    pub fn dim_l(&self) -> usize {
        self.leibniz.dim()
    }

    /// `μ(x)(a)` for basis elements.
    pub fn act(&self, x: usize, a: usize) -> Vec<Scalar> {
        self.mu[x].image(a)
    }

    /// The anchor of an arbitrary element of L.
    pub fn anchor(&self, x: &[Scalar]) -> Derivation {
        let d = self.dim_a();
        let mut m = Matrix::zeros(d, d);
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m = m.add(&self.mu[i].matrix.scale(c)).expect("same shape");
        }
        Derivation { matrix: m }
    }

    /// The anchor as a tensor `(x, a) -> μ(x)(a)`.
    pub fn mu_tensor(&self) -> Tensor3 {
        let (dl, da) = (self.dim_l(), self.dim_a());
        let mut t = Tensor3::zeros(dl, da, da);
        for x in 0..dl {
            for a in 0..da {
                t.slot_mut(x, a).clone_from_slice(&self.act(x, a));
            }
        }
        t
    }
}

/// One law in a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    /// First offending basis tuple, written with basis labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == name)
    }

    pub(crate) fn push(&mut self, law: impl Into<String>, witness: Option<String>) {
        self.checks.push(LawCheck { law: law.into(), passed: witness.is_none(), witness });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

/// Runs `ok` over the full product of index ranges and returns the first
/// tuple where it fails.
pub(crate) fn first_failure(dims: &[usize], mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if dims.iter().any(|&d| d == 0) {
        return None;
    }
    let mut t = vec![0; dims.len()];
    loop {
        if !ok(&t) {
            return Some(t);
        }
        let mut k = dims.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < dims[k] {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Formats a tuple using one label list per position.
pub(crate) fn label_tuple(labels: &[&[String]], t: &[usize]) -> String {
    let parts: Vec<&str> = labels.iter().zip(t).map(|(l, &i)| l[i].as_str()).collect();
    format!("({})", parts.join(", "))
}

fn sum(vs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = zeros(vs.first().map_or(0, Vec::len));
    for v in vs {
        axpy(&mut out, &Scalar::one(), v);
    }
    out
}

fn sub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Checks every order-zero law of a Courant pair.
pub fn validate_pair(pair: &CourantPair) -> ValidationReport {
    let (a_lab, l_lab) = (&pair.assoc.basis[..], &pair.leibniz.basis[..]);
    let (da, dl) = (pair.dim_a(), pair.dim_l());
    let m = &pair.assoc.mul;
    let mut report = ValidationReport::default();

    let assoc = first_failure(&[da, da, da], |t| {
        m.apply_left(m.slot(t[0], t[1]), t[2]) == m.apply_right(t[0], m.slot(t[1], t[2]))
    });
    report.push("associativity", assoc.map(|t| label_tuple(&[a_lab, a_lab, a_lab], &t)));

    let leib = pair.leibniz.leibniz_violation();
    report.push("leibniz identity", leib.map(|t| label_tuple(&[l_lab, l_lab, l_lab], &t)));

    let der = (0..dl).find_map(|x| pair.mu[x].leibniz_rule_violation(&pair.assoc).map(|t| (x, t)));
    report.push(
        "anchor is derivation-valued",
        der.map(|(x, t)| label_tuple(&[l_lab, a_lab, a_lab], &[x, t[0], t[1]])),
    );

    let hom = first_failure(&[dl, dl], |t| {
        let lhs = pair.anchor(pair.leibniz.bracket.slot(t[0], t[1]));
        lhs == pair.mu[t[0]].commutator(&pair.mu[t[1]])
    });
    report.push("anchor is a leibniz homomorphism", hom.map(|t| label_tuple(&[l_lab, l_lab], &t)));
    report
}

/// A module `(M, P)` over a Courant pair. All action tensors are indexed in
/// the order the arguments are written: `left_act[a][m] = a·m`,
/// `right_act[m][a] = m·a`, `p_left[x][p] = [x,p]`, `p_right[p][x] = [p,x]`,
/// `m_left[x][m] = [x,m]`, `m_right[m][x] = [m,x]`. `phi[p]` is the
/// `dim M × dim A` matrix of the derivation `φ(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPModule {
    pub m_basis: Vec<String>,
    pub p_basis: Vec<String>,
    pub left_act: Tensor3,
    pub right_act: Tensor3,
    pub p_left: Tensor3,
    pub p_right: Tensor3,
    pub m_left: Tensor3,
    pub m_right: Tensor3,
    pub phi: Vec<Matrix>,
}

impl CPModule {
    pub fn m_dim(&self) -> usize {
        self.m_basis.len()
    }

    pub fn p_dim(&self) -> usize {
        self.p_basis.len()
    }

    /// Checks all tensor shapes against the pair.
    pub fn check_shapes(&self, pair: &CourantPair) -> Result<()> {
        let (da, dl, dm, dp) = (pair.dim_a(), pair.dim_l(), self.m_dim(), self.p_dim());
        self.left_act.check_dims([da, dm, dm], "left A-action")?;
        self.right_act.check_dims([dm, da, dm], "right A-action")?;
        self.p_left.check_dims([dl, dp, dp], "left L-action on P")?;
        self.p_right.check_dims([dp, dl, dp], "right L-action on P")?;
        self.m_left.check_dims([dl, dm, dm], "left L-action on M")?;
        self.m_right.check_dims([dm, dl, dm], "right L-action on M")?;
        if self.phi.len() != dp {
            return Err(Error::Dimension(format!("{} phi matrices for dim P = {dp}", self.phi.len())));
        }
        if let Some(bad) = self.phi.iter().position(|m| (m.rows(), m.cols()) != (dm, da)) {
            return Err(Error::Dimension(format!("phi matrix {bad} is not {dm}x{da}")));
        }
        Ok(())
    }

    /// `φ(p)(a)` for basis elements.
    pub fn phi_at(&self, p: usize, a: usize) -> Vec<Scalar> {
        self.phi[p].column(a)
    }
}

/// The module `(A, L)` with multiplication, bracket and anchor actions.
pub fn adjoint_module(pair: &CourantPair) -> CPModule {
    let (da, dl) = (pair.dim_a(), pair.dim_l());
    let mu = pair.mu_tensor();
    let mut m_right = Tensor3::zeros(da, dl, da);
    for x in 0..dl {
        for a in 0..da {
            let neg: Vec<Scalar> = mu.slot(x, a).iter().map(|c| -c).collect();
            m_right.slot_mut(a, x).clone_from_slice(&neg);
        }
    }
    CPModule {
        m_basis: pair.assoc.basis.clone(),
        p_basis: pair.leibniz.basis.clone(),
        left_act: pair.assoc.mul.clone(),
        right_act: pair.assoc.mul.clone(),
        p_left: pair.leibniz.bracket.clone(),
        p_right: pair.leibniz.bracket.clone(),
        m_left: mu,
        m_right,
        phi: pair.mu.iter().map(|d| d.matrix.clone()).collect(),
    }
}

/// Checks every module law on basis tuples. Shape errors are reported before
/// any law is evaluated.
pub fn validate_module(pair: &CourantPair, module: &CPModule) -> Result<ValidationReport> {
    module.check_shapes(pair)?;
    let (da, dl, dm, dp) = (pair.dim_a(), pair.dim_l(), module.m_dim(), module.p_dim());
    let (a_lab, l_lab) = (&pair.assoc.basis[..], &pair.leibniz.basis[..]);
    let (m_lab, p_lab) = (&module.m_basis[..], &module.p_basis[..]);
    let mul = &pair.assoc.mul;
    let lam = &pair.leibniz.bracket;
    let (la, ra) = (&module.left_act, &module.right_act);
    let (pl, pr) = (&module.p_left, &module.p_right);
    let (ml, mr) = (&module.m_left, &module.m_right);
    let mut r = ValidationReport::default();

    // a·(b·m) = (ab)·m, (m·a)·b = m·(ab), (a·m)·b = a·(m·b)
    let w = first_failure(&[da, da, dm], |t| {
        la.apply_right(t[0], la.slot(t[1], t[2])) == la.apply_left(mul.slot(t[0], t[1]), t[2])
    });
    r.push("bimodule (ab)m = a(bm)", w.map(|t| label_tuple(&[a_lab, a_lab, m_lab], &t)));
    let w = first_failure(&[dm, da, da], |t| {
        ra.apply_left(ra.slot(t[0], t[1]), t[2]) == ra.apply_right(t[0], mul.slot(t[1], t[2]))
    });
    r.push("bimodule (ma)b = m(ab)", w.map(|t| label_tuple(&[m_lab, a_lab, a_lab], &t)));
    let w = first_failure(&[da, dm, da], |t| {
        ra.apply_left(la.slot(t[0], t[1]), t[2]) == la.apply_right(t[0], ra.slot(t[1], t[2]))
    });
    r.push("bimodule (am)b = a(mb)", w.map(|t| label_tuple(&[a_lab, m_lab, a_lab], &t)));

    // Representation axioms for P, one per position of the module argument.
    let w = first_failure(&[dl, dl, dp], |t| {
        let (x, y, p) = (t[0], t[1], t[2]);
        let lhs = pl.apply_right(x, pl.slot(y, p));
        let rhs = sum(&[pl.apply_left(lam.slot(x, y), p), pl.apply_right(y, pl.slot(x, p))]);
        lhs == rhs
    });
    r.push("representation [x,[y,p]] = [[x,y],p] + [y,[x,p]]", w.map(|t| label_tuple(&[l_lab, l_lab, p_lab], &t)));
    let w = first_failure(&[dl, dp, dl], |t| {
        let (x, p, y) = (t[0], t[1], t[2]);
        let lhs = pl.apply_right(x, pr.slot(p, y));
        let rhs = sum(&[pr.apply_left(pl.slot(x, p), y), pr.apply_right(p, lam.slot(x, y))]);
        lhs == rhs
    });
    r.push("representation [x,[p,y]] = [[x,p],y] + [p,[x,y]]", w.map(|t| label_tuple(&[l_lab, p_lab, l_lab], &t)));
    let w = first_failure(&[dp, dl, dl], |t| {
        let (p, x, y) = (t[0], t[1], t[2]);
        let lhs = pr.apply_right(p, lam.slot(x, y));
        let rhs = sum(&[pr.apply_left(pr.slot(p, x), y), pl.apply_right(x, pr.slot(p, y))]);
        lhs == rhs
    });
    r.push("representation [p,[x,y]] = [[p,x],y] + [x,[p,y]]", w.map(|t| label_tuple(&[p_lab, l_lab, l_lab], &t)));

    let w = first_failure(&[dl, dm], |t| {
        ml.slot(t[0], t[1]).iter().zip(mr.slot(t[1], t[0])).all(|(a, b)| (a + b).is_zero())
    });
    r.push("symmetric action [m,x] = -[x,m]", w.map(|t| label_tuple(&[l_lab, m_lab], &t)));

    let w = first_failure(&[dl, da, dm], |t| {
        let (x, a, m) = (t[0], t[1], t[2]);
        let lhs = ml.apply_right(x, la.slot(a, m));
        let rhs = sum(&[la.apply_left(&pair.act(x, a), m), la.apply_right(a, ml.slot(x, m))]);
        lhs == rhs
    });
    r.push("[x,am] = [x,a]m + a[x,m]", w.map(|t| label_tuple(&[l_lab, a_lab, m_lab], &t)));
    let w = first_failure(&[dl, dm, da], |t| {
        let (x, m, a) = (t[0], t[1], t[2]);
        let lhs = ml.apply_right(x, ra.slot(m, a));
        let rhs = sum(&[ra.apply_left(ml.slot(x, m), a), ra.apply_right(m, &pair.act(x, a))]);
        lhs == rhs
    });
    r.push("[x,ma] = [x,m]a + m[x,a]", w.map(|t| label_tuple(&[l_lab, m_lab, a_lab], &t)));

    let w = first_failure(&[dl, dl, dm], |t| {
        let (x, y, m) = (t[0], t[1], t[2]);
        let lhs = ml.apply_left(lam.slot(x, y), m);
        let rhs = sub(&ml.apply_right(x, ml.slot(y, m)), &ml.apply_right(y, ml.slot(x, m)));
        lhs == rhs
    });
    r.push("[[x,y],m] = [x,[y,m]] - [y,[x,m]]", w.map(|t| label_tuple(&[l_lab, l_lab, m_lab], &t)));

    let w = first_failure(&[dp, da, da], |t| {
        let (p, a, b) = (t[0], t[1], t[2]);
        let lhs = module.phi[p].mul_vec(mul.slot(a, b)).expect("shape checked");
        let rhs = sum(&[ra.apply_left(&module.phi_at(p, a), b), la.apply_right(a, &module.phi_at(p, b))]);
        lhs == rhs
    });
    r.push("phi is derivation-valued", w.map(|t| label_tuple(&[p_lab, a_lab, a_lab], &t)));

    // [x, g](a) = [x, g(a)] - g([x, a]) for g in C^1(A, M).
    let act_on = |x: usize, g: &Matrix, a: usize| {
        let mut v = ml.apply_right(x, &g.column(a));
        let inner = g.mul_vec(&pair.act(x, a)).expect("shape checked");
        axpy(&mut v, &-Scalar::one(), &inner);
        v
    };
    let phi_of = |v: &[Scalar]| {
        let mut m = Matrix::zeros(dm, da);
        for (p, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m = m.add(&module.phi[p].scale(c)).expect("same shape");
        }
        m
    };
    let w = first_failure(&[dl, dp, da], |t| {
        let (x, p, a) = (t[0], t[1], t[2]);
        phi_of(pl.slot(x, p)).column(a) == act_on(x, &module.phi[p], a)
    });
    r.push("phi([x,p]) = [x,phi(p)]", w.map(|t| label_tuple(&[l_lab, p_lab, a_lab], &t)));
    let w = first_failure(&[dp, dl, da], |t| {
        let (p, x, a) = (t[0], t[1], t[2]);
        let lhs = phi_of(pr.slot(p, x)).column(a);
        let rhs: Vec<Scalar> = act_on(x, &module.phi[p], a).into_iter().map(|c| -c).collect();
        lhs == rhs
    });
    r.push("phi([p,x]) = -[x,phi(p)]", w.map(|t| label_tuple(&[p_lab, l_lab, a_lab], &t)));
    Ok(r)
}

/// Basis of Der(A), obtained as the kernel of the linear system
/// `D(e_a e_b) - D(e_a) e_b - e_a D(e_b) = 0`.
pub fn commutator_derivations_basis(algebra: &AssocAlgebra) -> Vec<Derivation> {
    let d = algebra.dim();
    let m = &algebra.mul;
    // Unknown D[k][s] (coefficient of e_k in D(e_s)) sits in column k*d + s.
    let mut sys = Matrix::zeros(d * d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for k in 0..d {
                let row = (a * d + b) * d + k;
                for s in 0..d {
                    sys[(row, k * d + s)] += m.get(a, b, s);
                    sys[(row, s * d + a)] -= m.get(s, b, k);
                    sys[(row, s * d + b)] -= m.get(a, s, k);
                }
            }
        }
    }
    sys.nullspace_basis()
        .into_iter()
        .map(|v| Derivation { matrix: Matrix::from_entries(d, d, v).expect("d*d entries") })
        .collect()
}

/// Hemisemidirect product of a Lie algebra `g` with a g-module `V`:
/// `[(x,v),(y,w)] = ([x,y], x.w)`. `action[x][v]` is `x.v`.
pub fn hemisemidirect(g: &LeibnizAlgebra, action: &Tensor3, v_basis: Vec<String>) -> Result<LeibnizAlgebra> {
    let (dg, dv) = (g.dim(), v_basis.len());
    action.check_dims([dg, dv, dv], "action tensor")?;
    if !g.is_antisymmetric() || g.leibniz_violation().is_some() {
        return Err(Error::Input("hemisemidirect product needs a Lie algebra".into()));
    }
    let bad = first_failure(&[dg, dg, dv], |t| {
        let (x, y, v) = (t[0], t[1], t[2]);
        let lhs = action.apply_left(g.bracket.slot(x, y), v);
        let rhs = sub(&action.apply_right(x, action.slot(y, v)), &action.apply_right(y, action.slot(x, v)));
        lhs == rhs
    });
    if let Some(t) = bad {
        return Err(Error::Input(format!(
            "action is not a Lie module: fails on {}",
            label_tuple(&[&g.basis, &g.basis, &v_basis], &t)
        )));
    }
    let n = dg + dv;
    let mut bracket = Tensor3::zeros(n, n, n);
    for x in 0..dg {
        for y in 0..dg {
            for (k, c) in g.bracket.slot(x, y).iter().enumerate() {
                bracket.set(x, y, k, c.clone());
            }
        }
        for w in 0..dv {
            for (k, c) in action.slot(x, w).iter().enumerate() {
                bracket.set(x, dg + w, dg + k, c.clone());
            }
        }
    }
    let basis = g.basis.iter().cloned().chain(v_basis).collect();
    LeibnizAlgebra::new(basis, bracket)
}

/// Coordinates of `v` in the basis formed by `vectors`, if it lies in their span.
pub(crate) fn coordinates(vectors: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if vectors.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), vectors).ok()?;
    m.solve(v).ok().flatten()
}

/// The `i`-th standard basis vector of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}
