//! Truncated formal deformations `(α_t, μ_t, λ_t)` of a Courant pair:
//! the order-by-order equations, infinitesimals, equivalences, obstruction
//! cochains and one-step extension.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{adjoint_module, first_failure, label_tuple, CourantPair, ValidationReport};
use crate::cochain::{adjoint_shape, adjoint_zero, alpha0, gerstenhaber, lambda0, mu0, Bicomplex, Cochain, TotalCochain};
use crate::cohomology::{class_representatives, is_cocycle, total_delta_matrix};
use crate::error::{Error, Result};
use crate::linalg::{axpy, frac, zeros, Matrix, Scalar};

/// Value of a two-argument cochain on arbitrary vectors, arguments given in
/// storage order.
fn eval2(c: &Cochain, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = zeros(c.shape().dim_out);
    for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            axpy(&mut out, &(ui * vj), c.value(&[i, j]));
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    crate::algebra::basis_vector(n, i)
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    axpy(acc, &Scalar::one(), v);
}

fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    axpy(acc, &-Scalar::one(), v);
}

/// A deformation truncated at order `N`: coefficient lists `α_0..α_N`,
/// `μ_0..μ_N`, `λ_0..λ_N`, with the order-zero terms equal to the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    pair: CourantPair,
    alphas: Vec<Cochain>,
    mus: Vec<Cochain>,
    lambdas: Vec<Cochain>,
}

impl Deformation {
    /// The constant deformation of order 0.
    pub fn trivial(pair: CourantPair) -> Self {
        let (a, m, l) = (alpha0(&pair), mu0(&pair), lambda0(&pair));
        Self { pair, alphas: vec![a], mus: vec![m], lambdas: vec![l] }
    }

    /// Builds a deformation from its coefficients of orders `1..=N`, each a
    /// degree-2 total cochain `(α_n, μ_n, λ_n)`.
    pub fn new(pair: CourantPair, higher: Vec<TotalCochain>) -> Result<Self> {
        let mut d = Self::trivial(pair);
        for c in higher {
            d.push(c)?;
        }
        Ok(d)
    }

    /// Appends the next coefficient.
    pub fn push(&mut self, c: TotalCochain) -> Result<()> {
        if c.degree() != 2 {
            return Err(Error::Dimension(format!("deformation coefficients have total degree 2, got {}", c.degree())));
        }
        for (p, q) in [(2, 0), (1, 1), (0, 2)] {
            if c.component(p).shape() != adjoint_shape(&self.pair, p, q) {
                return Err(Error::Dimension(format!("coefficient component ({p},{q}) has the wrong shape")));
            }
        }
        let [a, m, l]: [Cochain; 3] = c.into_components().try_into().expect("three components");
        self.alphas.push(a);
        self.mus.push(m);
        self.lambdas.push(l);
        Ok(())
    }

    pub fn pair(&self) -> &CourantPair {
        &self.pair
    }

    pub fn order(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn alphas(&self) -> &[Cochain] {
        &self.alphas
    }

    pub fn mus(&self) -> &[Cochain] {
        &self.mus
    }

    pub fn lambdas(&self) -> &[Cochain] {
        &self.lambdas
    }

    /// `(α_n, μ_n, λ_n)` as a degree-2 total cochain.
    pub fn coefficient(&self, n: usize) -> TotalCochain {
        TotalCochain::new(vec![self.alphas[n].clone(), self.mus[n].clone(), self.lambdas[n].clone()])
            .expect("coefficients have the right bidegrees")
    }

    /// The same deformation cut off at order `k` (coefficients beyond the
    /// current order are zero).
    pub fn truncate(&self, k: usize) -> Self {
        let mut d = self.clone();
        let keep = k + 1;
        d.alphas.truncate(keep);
        d.mus.truncate(keep);
        d.lambdas.truncate(keep);
        while d.order() < k {
            d.alphas.push(adjoint_zero(&self.pair, 2, 0));
            d.mus.push(adjoint_zero(&self.pair, 1, 1));
            d.lambdas.push(adjoint_zero(&self.pair, 0, 2));
        }
        d
    }

    // Coefficient maps written with the arguments in their natural order.
    fn alpha(&self, i: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        eval2(&self.alphas[i], a, b)
    }

    fn mu(&self, i: usize, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        eval2(&self.mus[i], a, x)
    }

    fn lambda(&self, i: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        eval2(&self.lambdas[i], x, y)
    }
}

/// Index pairs `(i, j)` with `i + j = n`, both at least `lo`.
fn splits(n: usize, lo: usize) -> impl Iterator<Item = (usize, usize)> {
    (lo..=n.saturating_sub(lo)).map(move |i| (i, n - i)).filter(move |&(_, j)| j >= lo)
}

/// The four identities of order `n`, each evaluated on basis tuples, as
/// residuals `lhs - rhs`.
struct Residuals<'d> {
    d: &'d Deformation,
}

impl Residuals<'_> {
    fn dims(&self) -> (usize, usize) {
        (self.d.pair.dim_a(), self.d.pair.dim_l())
    }

    /// `Σ μ_i(x, α_j(a,b)) - α_i(a, μ_j(x,b)) - α_i(μ_j(x,a), b)`.
    fn anchor_derivation(&self, n: usize, lo: usize, x: usize, a: usize, b: usize) -> Vec<Scalar> {
        let d = self.d;
        let (da, dl) = self.dims();
        let (ea, eb, ex) = (unit(da, a), unit(da, b), unit(dl, x));
        let mut r = zeros(da);
        for (i, j) in splits(n, lo) {
            add_into(&mut r, &d.mu(i, &ex, &d.alpha(j, &ea, &eb)));
            sub_into(&mut r, &d.alpha(j, &ea, &d.mu(i, &ex, &eb)));
            sub_into(&mut r, &d.alpha(j, &d.mu(i, &ex, &ea), &eb));
        }
        r
    }

    /// `Σ μ_i(λ_j(x,y), a) - μ_i(x, μ_j(y,a)) + μ_i(y, μ_j(x,a))`.
    fn anchor_homomorphism(&self, n: usize, lo: usize, x: usize, y: usize, a: usize) -> Vec<Scalar> {
        let d = self.d;
        let (da, dl) = self.dims();
        let (ea, ex, ey) = (unit(da, a), unit(dl, x), unit(dl, y));
        let mut r = zeros(da);
        for (i, j) in splits(n, lo) {
            add_into(&mut r, &d.mu(i, &d.lambda(j, &ex, &ey), &ea));
            sub_into(&mut r, &d.mu(i, &ex, &d.mu(j, &ey, &ea)));
            add_into(&mut r, &d.mu(i, &ey, &d.mu(j, &ex, &ea)));
        }
        r
    }

    /// `Σ λ_i(x, λ_j(y,z)) - λ_i(λ_j(x,y), z) - λ_i(y, λ_j(x,z))`.
    fn leibniz(&self, n: usize, lo: usize, x: usize, y: usize, z: usize) -> Vec<Scalar> {
        let d = self.d;
        let (_, dl) = self.dims();
        let (ex, ey, ez) = (unit(dl, x), unit(dl, y), unit(dl, z));
        let mut r = zeros(dl);
        for (i, j) in splits(n, lo) {
            add_into(&mut r, &d.lambda(i, &ex, &d.lambda(j, &ey, &ez)));
            sub_into(&mut r, &d.lambda(i, &d.lambda(j, &ex, &ey), &ez));
            sub_into(&mut r, &d.lambda(i, &ey, &d.lambda(j, &ex, &ez)));
        }
        r
    }

    /// `Σ α_i(α_j(a,b), c) - α_i(a, α_j(b,c))`.
    fn associativity(&self, n: usize, lo: usize, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let d = self.d;
        let (da, _) = self.dims();
        let (ea, eb, ec) = (unit(da, a), unit(da, b), unit(da, c));
        let mut r = zeros(da);
        for (i, j) in splits(n, lo) {
            add_into(&mut r, &d.alpha(i, &d.alpha(j, &ea, &eb), &ec));
            sub_into(&mut r, &d.alpha(i, &ea, &d.alpha(j, &eb, &ec)));
        }
        r
    }
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Checks the four deformation equations at every order `0..=N`.
pub fn validate_deformation(d: &Deformation) -> ValidationReport {
    let res = Residuals { d };
    let (da, dl) = res.dims();
    let a_lab = &d.pair.assoc.basis[..];
    let l_lab = &d.pair.leibniz.basis[..];
    let mut report = ValidationReport::default();
    for n in 0..=d.order() {
        let w = first_failure(&[dl, da, da], |t| is_zero(&res.anchor_derivation(n, 0, t[0], t[1], t[2])));
        report.push(format!("order {n}: anchor acts by derivations"), w.map(|t| label_tuple(&[l_lab, a_lab, a_lab], &t)));
        let w = first_failure(&[dl, dl, da], |t| is_zero(&res.anchor_homomorphism(n, 0, t[0], t[1], t[2])));
        report.push(format!("order {n}: anchor is a homomorphism"), w.map(|t| label_tuple(&[l_lab, l_lab, a_lab], &t)));
        let w = first_failure(&[dl, dl, dl], |t| is_zero(&res.leibniz(n, 0, t[0], t[1], t[2])));
        report.push(format!("order {n}: leibniz identity"), w.map(|t| label_tuple(&[l_lab, l_lab, l_lab], &t)));
        let w = first_failure(&[da, da, da], |t| is_zero(&res.associativity(n, 0, t[0], t[1], t[2])));
        report.push(format!("order {n}: associativity"), w.map(|t| label_tuple(&[a_lab, a_lab, a_lab], &t)));
    }
    report
}

fn require_valid(d: &Deformation) -> Result<()> {
    let report = validate_deformation(d);
    let failure = report.failures().next().map(|f| {
        Error::InvalidDeformation(format!("{} fails on {}", f.law, f.witness.as_deref().unwrap_or("?")))
    });
    failure.map_or(Ok(()), Err)
}

/// `(α_1, μ_1, λ_1)`.
pub fn infinitesimal(d: &Deformation) -> Result<TotalCochain> {
    if d.order() == 0 {
        return Err(Error::NoInfinitesimal("order-0 deformations have no first-order term"));
    }
    Ok(d.coefficient(1))
}

/// The first nonzero coefficient `(α_n, μ_n, λ_n)` with `n >= 1`.
pub fn n_infinitesimal(d: &Deformation) -> Result<(usize, TotalCochain)> {
    (1..=d.order())
        .map(|n| (n, d.coefficient(n)))
        .find(|(_, c)| !c.is_zero())
        .ok_or(Error::NoInfinitesimal("every coefficient above order 0 vanishes"))
}

/// `Φ_t = id + Σ t^i φ_i` on A and `Ψ_t = id + Σ t^i ψ_i` on L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub phis: Vec<Cochain>,
    pub psis: Vec<Cochain>,
}

fn cochain_matrix(c: &Cochain) -> Matrix {
    let s = c.shape();
    let n = if s.p == 1 { s.dim_a } else { s.dim_l };
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| c.value(&[i]).to_vec()).collect();
    Matrix::from_columns(s.dim_out, &cols).expect("square")
}

fn matrix_cochain(pair: &CourantPair, p: usize, q: usize, m: &Matrix) -> Cochain {
    Cochain::from_fn(adjoint_shape(pair, p, q), |args| m.column(args[0]))
}

/// Coefficients `1, s_1, s_2, ..` of the inverse of `id + Σ t^k m_k`, up to
/// order `n`: `s_k = -Σ_{j=1..k} m_j s_{k-j}`.
fn series_inverse(ms: &[Matrix], dim: usize, n: usize) -> Vec<Matrix> {
    let mut inv = vec![Matrix::identity(dim)];
    for k in 1..=n {
        let mut s = Matrix::zeros(dim, dim);
        for j in 1..=k.min(ms.len()) {
            s = s.sub(&ms[j - 1].mul(&inv[k - j]).expect("square")).expect("same shape");
        }
        inv.push(s);
    }
    inv
}

impl Equivalence {
    pub fn identity() -> Self {
        Self { phis: Vec::new(), psis: Vec::new() }
    }

    /// Order-1 equivalence `(id + tφ, id + tψ)`.
    pub fn first_order(phi: Cochain, psi: Cochain) -> Self {
        Self { phis: vec![phi], psis: vec![psi] }
    }

    fn series(&self, pair: &CourantPair, n: usize) -> (Vec<Matrix>, Vec<Matrix>) {
        let coef = |cs: &[Cochain], dim: usize| -> Vec<Matrix> {
            let mut v = vec![Matrix::identity(dim)];
            for k in 1..=n {
                v.push(cs.get(k - 1).map_or_else(|| Matrix::zeros(dim, dim), cochain_matrix));
            }
            v
        };
        (coef(&self.phis, pair.dim_a()), coef(&self.psis, pair.dim_l()))
    }

    /// The inverse pair of series, truncated at order `n`.
    pub fn inverse(&self, pair: &CourantPair, n: usize) -> Self {
        let (phi, psi) = self.series(pair, n);
        let inv_phi = series_inverse(&phi[1..], pair.dim_a(), n);
        let inv_psi = series_inverse(&psi[1..], pair.dim_l(), n);
        Self {
            phis: inv_phi[1..].iter().map(|m| matrix_cochain(pair, 1, 0, m)).collect(),
            psis: inv_psi[1..].iter().map(|m| matrix_cochain(pair, 0, 1, m)).collect(),
        }
    }
}

/// Compositions `(k, l, r)` of `n - j` into three parts, the inner degree
/// `j` running over `0..=n`.
fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..=n).flat_map(move |j| {
        (0..=n - j).flat_map(move |k| (0..=n - j - k).map(move |l| (n - j - k - l, j, k, l)))
    })
}

/// Transforms `d` by `α̃ = Φ⁻¹α(Φ·,Φ·)`, `μ̃(x,a) = Φ⁻¹μ(Ψx,Φa)`,
/// `λ̃ = Ψ⁻¹λ(Ψ·,Ψ·)`, all truncated at the order of `d`.
pub fn apply_equivalence(d: &Deformation, e: &Equivalence) -> Result<Deformation> {
    let pair = &d.pair;
    let n = d.order();
    let (da, dl) = (pair.dim_a(), pair.dim_l());
    let (phi, psi) = e.series(pair, n);
    let inv_phi = series_inverse(&phi[1..], da, n);
    let inv_psi = series_inverse(&psi[1..], dl, n);
    let phi_cols: Vec<Vec<Vec<Scalar>>> = phi.iter().map(|m| (0..da).map(|a| m.column(a)).collect()).collect();
    let psi_cols: Vec<Vec<Vec<Scalar>>> = psi.iter().map(|m| (0..dl).map(|x| m.column(x)).collect()).collect();

    let mut out = Deformation::trivial(pair.clone());
    for m in 1..=n {
        let alpha = Cochain::from_fn(adjoint_shape(pair, 2, 0), |t| {
            let mut acc = zeros(da);
            for (r, j, k, l) in quadruples(m) {
                let v = d.alpha(j, &phi_cols[k][t[0]], &phi_cols[l][t[1]]);
                add_into(&mut acc, &inv_phi[r].mul_vec(&v).expect("square"));
            }
            acc
        });
        let mu = Cochain::from_fn(adjoint_shape(pair, 1, 1), |t| {
            let mut acc = zeros(da);
            for (r, j, k, l) in quadruples(m) {
                let v = d.mu(j, &psi_cols[k][t[1]], &phi_cols[l][t[0]]);
                add_into(&mut acc, &inv_phi[r].mul_vec(&v).expect("square"));
            }
            acc
        });
        let lambda = Cochain::from_fn(adjoint_shape(pair, 0, 2), |t| {
            let mut acc = zeros(dl);
            for (r, j, k, l) in quadruples(m) {
                let v = d.lambda(j, &psi_cols[k][t[0]], &psi_cols[l][t[1]]);
                add_into(&mut acc, &inv_psi[r].mul_vec(&v).expect("square"));
            }
            acc
        });
        out.push(TotalCochain::new(vec![alpha, mu, lambda])?)?;
    }
    Ok(out)
}

/// A degree-1 cochain `(φ_1, ψ_1)` with `δ_tot(φ_1, ψ_1)` equal to the
/// infinitesimal of `d2` minus that of `d1`, if one exists.
pub fn equivalent_infinitesimals_differ_by_coboundary(d1: &Deformation, d2: &Deformation) -> Result<Option<TotalCochain>> {
    if d1.pair != d2.pair {
        return Err(Error::Input("deformations of different pairs cannot be compared".into()));
    }
    let diff = infinitesimal(d2)?.sub(&infinitesimal(d1)?)?;
    let module = adjoint_module(&d1.pair);
    let bc = Bicomplex::new(&d1.pair, &module)?;
    let m = total_delta_matrix(&bc, 1)?;
    match m.solve(&diff.flatten())? {
        Some(x) => Ok(Some(bc.total_from_flat(1, &x)?)),
        None => Ok(None),
    }
}

/// The obstruction to extending an order-`N` deformation, a degree-3 cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// `Σ α_i(α_j(a,b),c) - α_i(a,α_j(b,c))`, a `(3,0)`-cochain.
    pub theta_a: Cochain,
    /// `Σ μ_i(x,α_j(a,b)) - α_j(a,μ_i(x,b)) - α_j(μ_i(x,a),b)`, a `(2,1)`-cochain.
    pub theta1: Cochain,
    /// `Σ -μ_i(λ_j(x,y),a) + μ_i(x,μ_j(y,a)) - μ_i(y,μ_j(x,a))`, a `(1,2)`-cochain.
    pub theta2: Cochain,
    /// `Σ λ_i(x,λ_j(y,z)) - λ_i(y,λ_j(x,z)) - λ_i(λ_j(x,y),z)`, a `(0,3)`-cochain.
    pub theta_l: Cochain,
}

impl Obstruction {
    pub fn total(&self) -> TotalCochain {
        TotalCochain::new(vec![self.theta_a.clone(), self.theta1.clone(), self.theta2.clone(), self.theta_l.clone()])
            .expect("bidegrees (3,0), (2,1), (1,2), (0,3)")
    }

    pub fn is_zero(&self) -> bool {
        self.total().is_zero()
    }
}

/// Obstruction cochain of a valid deformation, summing over `i + j = N + 1`
/// with `i, j >= 1`. Invalid deformations are refused.
pub fn obstruction(d: &Deformation) -> Result<Obstruction> {
    require_valid(d)?;
    let pair = &d.pair;
    let n = d.order() + 1;
    // With i, j >= 1 and i + j = N + 1 only coefficients up to N appear.
    let res = Residuals { d };
    let theta_a = Cochain::from_fn(adjoint_shape(pair, 3, 0), |t| res.associativity(n, 1, t[0], t[1], t[2]));
    let theta1 = Cochain::from_fn(adjoint_shape(pair, 2, 1), |t| res.anchor_derivation(n, 1, t[2], t[0], t[1]));
    let theta2 = Cochain::from_fn(adjoint_shape(pair, 1, 2), |t| {
        res.anchor_homomorphism(n, 1, t[1], t[2], t[0]).into_iter().map(|c| -c).collect()
    });
    let theta_l = Cochain::from_fn(adjoint_shape(pair, 0, 3), |t| res.leibniz(n, 1, t[0], t[1], t[2]));
    Ok(Obstruction { theta_a, theta1, theta2, theta_l })
}

/// `½ Σ_{i+j=N+1; i,j>=1} [α_i, α_j]`, the associative part of the obstruction
/// written with the Gerstenhaber bracket.
pub fn theta_a_gerstenhaber(d: &Deformation) -> Result<Cochain> {
    let n = d.order() + 1;
    let mut acc = adjoint_zero(&d.pair, 3, 0);
    for (i, j) in splits(n, 1) {
        if i <= d.order() && j <= d.order() {
            acc = acc.add(&gerstenhaber(&d.alphas[i], &d.alphas[j])?)?;
        }
    }
    Ok(acc.scale(&frac(1, 2)))
}

/// The five component identities of `δ_tot Θ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionIdentities {
    /// `δ_H Θ(A) = 0`
    pub hochschild: bool,
    /// `δ_H Θ¹ - δ_L Θ(A) = 0`
    pub mixed_31: bool,
    /// `δ_H Θ² + δ_L Θ¹ = 0`
    pub mixed_22: bool,
    /// `δ_v Θ(L) - δ_L Θ² = 0`
    pub mixed_13: bool,
    /// `δ_L Θ(L) = 0`
    pub leibniz: bool,
}

impl ObstructionIdentities {
    pub fn all(&self) -> bool {
        self.hochschild && self.mixed_31 && self.mixed_22 && self.mixed_13 && self.leibniz
    }
}

/// Evaluates each component identity separately.
pub fn obstruction_identities(d: &Deformation) -> Result<ObstructionIdentities> {
    let theta = obstruction(d)?;
    let module = adjoint_module(&d.pair);
    let bc = Bicomplex::new(&d.pair, &module)?;
    let dl_a = bc.leibniz_delta(&theta.theta_a)?;
    let dl_1 = bc.leibniz_delta(&theta.theta1)?;
    let dl_2 = bc.leibniz_delta(&theta.theta2)?;
    Ok(ObstructionIdentities {
        hochschild: bc.hochschild_delta(&theta.theta_a)?.is_zero(),
        mixed_31: bc.hochschild_delta(&theta.theta1)?.sub(&dl_a)?.is_zero(),
        mixed_22: bc.hochschild_delta(&theta.theta2)?.add(&dl_1)?.is_zero(),
        mixed_13: bc.vertical_delta(&theta.theta_l)?.sub(&dl_2)?.is_zero(),
        leibniz: bc.leibniz_delta(&theta.theta_l)?.is_zero(),
    })
}

/// Whether the assembled obstruction is a `δ_tot`-cocycle.
pub fn obstruction_is_cocycle(d: &Deformation) -> Result<bool> {
    let theta = obstruction(d)?;
    let module = adjoint_module(&d.pair);
    let bc = Bicomplex::new(&d.pair, &module)?;
    is_cocycle(&bc, &theta.total())
}

/// Extends a valid order-`N` deformation to order `N + 1` by solving
/// `δ_tot(α_{N+1}, μ_{N+1}, λ_{N+1}) = Θ`; `None` when the obstruction
/// class is nonzero.
pub fn extend(d: &Deformation) -> Result<Option<Deformation>> {
    let theta = obstruction(d)?;
    let module = adjoint_module(&d.pair);
    let bc = Bicomplex::new(&d.pair, &module)?;
    let m = total_delta_matrix(&bc, 2)?;
    let Some(x) = m.solve(&theta.total().flatten())? else {
        return Ok(None);
    };
    let mut next = d.clone();
    next.push(bc.total_from_flat(2, &x)?)?;
    require_valid(&next)?;
    Ok(Some(next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub hl2: usize,
    pub representatives: Vec<TotalCochain>,
}

impl RigidityReport {
    pub fn rigid(&self) -> bool {
        self.hl2 == 0
    }
}

/// Computes `HL^2(A, L; A, L)` with cocycle representatives of a basis.
pub fn rigidity_probe(pair: &CourantPair) -> Result<RigidityReport> {
    let module = adjoint_module(pair);
    let bc = Bicomplex::new(pair, &module)?;
    let representatives = class_representatives(&bc, 2)?;
    Ok(RigidityReport { hl2: representatives.len(), representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AssocAlgebra, LeibnizAlgebra};
    use crate::linalg::int;

    fn dual_pair() -> CourantPair {
        CourantPair::new(AssocAlgebra::truncated_polynomial(2), LeibnizAlgebra::abelian(vec![]), vec![]).unwrap()
    }

    fn dual_deformation() -> Deformation {
        let pair = dual_pair();
        let mut a1 = adjoint_zero(&pair, 2, 0);
        a1.value_mut(&[1, 1])[0] = int(1);
        let c = TotalCochain::new(vec![a1, adjoint_zero(&pair, 1, 1), adjoint_zero(&pair, 0, 2)]).unwrap();
        Deformation::new(pair, vec![c]).unwrap()
    }

    #[test]
    fn splits_enumerate_pairs() {
        assert_eq!(splits(3, 1).collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert_eq!(splits(2, 0).collect::<Vec<_>>(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(splits(1, 1).count(), 0);
    }

    #[test]
    fn dual_numbers_extend_with_zero() {
        let d = dual_deformation();
        assert!(validate_deformation(&d).passed());
        let theta = obstruction(&d).unwrap();
        assert!(theta.is_zero());
        assert_eq!(theta_a_gerstenhaber(&d).unwrap(), theta.theta_a);
        let d2 = extend(&d).unwrap().unwrap();
        assert!(d2.coefficient(2).is_zero());
        assert_eq!(d2.truncate(1), d);
    }

    #[test]
    fn trivial_deformation_has_no_infinitesimal() {
        let d = Deformation::trivial(dual_pair());
        assert!(matches!(infinitesimal(&d), Err(Error::NoInfinitesimal(_))));
        assert!(matches!(n_infinitesimal(&d.truncate(3)), Err(Error::NoInfinitesimal(_))));
        assert!(obstruction(&d).unwrap().is_zero());
    }

    #[test]
    fn n_infinitesimal_skips_zero_orders() {
        let d = dual_deformation();
        let pair = d.pair().clone();
        let zero = TotalCochain::new(vec![adjoint_zero(&pair, 2, 0), adjoint_zero(&pair, 1, 1), adjoint_zero(&pair, 0, 2)]).unwrap();
        let late = Deformation::new(pair, vec![zero.clone(), zero, d.coefficient(1)]).unwrap();
        let (n, c) = n_infinitesimal(&late).unwrap();
        assert_eq!(n, 3);
        assert_eq!(c, d.coefficient(1));
    }

    #[test]
    fn invalid_deformation_is_refused() {
        let pair = dual_pair();
        let mut a1 = adjoint_zero(&pair, 2, 0);
        a1.value_mut(&[1, 0])[0] = int(1);
        let c = TotalCochain::new(vec![a1, adjoint_zero(&pair, 1, 1), adjoint_zero(&pair, 0, 2)]).unwrap();
        let d = Deformation::new(pair, vec![c]).unwrap();
        assert!(!validate_deformation(&d).passed());
        assert!(matches!(obstruction(&d), Err(Error::InvalidDeformation(_))));
        assert!(extend(&d).is_err());
    }

    #[test]
    fn identity_equivalence_is_neutral() {
        let d = dual_deformation();
        assert_eq!(apply_equivalence(&d, &Equivalence::identity()).unwrap(), d);
    }

    #[test]
    fn series_inverse_inverts() {
        let m1 = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
        let m2 = Matrix::from_i64(&[&[0, 1], &[3, 0]]);
        let inv = series_inverse(&[m1.clone(), m2.clone()], 2, 3);
        let series = [Matrix::identity(2), m1, m2, Matrix::zeros(2, 2)];
        for n in 1..=3 {
            let mut s = Matrix::zeros(2, 2);
            for k in 0..=n {
                s = s.add(&series[k].mul(&inv[n - k]).unwrap()).unwrap();
            }
            assert!(s.is_zero(), "order {n}");
        }
    }
}
