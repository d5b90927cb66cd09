//! Shared test support: random rational data and brute-force reference
//! implementations of the Hochschild and Leibniz complexes that share no
//! code with the library's differentials.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cpair::algebra::{CPModule, CourantPair, Tensor3};
use cpair::cochain::{Bicomplex, Cochain, Shape, TotalCochain};
use cpair::linalg::Scalar;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small rationals with numerators in -4..=4 and denominators in 1..=3,
/// zero about a third of the time.
pub fn random_scalar(rng: &mut StdRng) -> Scalar {
    if rng.gen_ratio(1, 3) {
        return Scalar::zero();
    }
    Scalar::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_cochain(rng: &mut StdRng, shape: Shape) -> Cochain {
    let coeffs = (0..shape.len()).map(|_| random_scalar(rng)).collect();
    Cochain::from_coeffs(shape, coeffs).expect("length matches shape")
}

pub fn random_total(rng: &mut StdRng, bc: &Bicomplex<'_>, n: usize) -> TotalCochain {
    TotalCochain::new((0..=n).map(|k| random_cochain(rng, bc.shape(n - k, k))).collect()).expect("bidegrees")
}

/// All tuples over `0..d` of length `k` in lexicographic order.
pub fn tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// A dense multilinear map stored by argument tuple.
struct Table {
    d: usize,
    out: usize,
    values: Vec<Scalar>,
}

impl Table {
    fn unit(d: usize, k: usize, out: usize, j: usize) -> Self {
        let mut values = vec![Scalar::zero(); d.pow(k as u32) * out];
        values[j] = Scalar::one();
        Table { d, out, values }
    }

    fn at(&self, args: &[usize]) -> &[Scalar] {
        let mut i = 0;
        for &a in args {
            i = i * self.d + a;
        }
        &self.values[i * self.out..(i + 1) * self.out]
    }

    /// Value with the argument at `slot` replaced by the vector `v`.
    fn at_vector(&self, args: &[usize], slot: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.out];
        let mut a = args.to_vec();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            a[slot] = k;
            for (o, x) in acc.iter_mut().zip(self.at(&a)) {
                *o += c * x;
            }
        }
        acc
    }
}

/// `t(u, ·)` applied to a vector on the right.
fn left_apply(t: &Tensor3, i: usize, v: &[Scalar]) -> Vec<Scalar> {
    let [_, d1, d2] = t.dims();
    let mut out = vec![Scalar::zero(); d2];
    for j in 0..d1 {
        if v[j].is_zero() {
            continue;
        }
        for k in 0..d2 {
            out[k] += &v[j] * t.get(i, j, k);
        }
    }
    out
}

/// `t(·, j)` applied to a vector on the left.
fn right_apply(t: &Tensor3, v: &[Scalar], j: usize) -> Vec<Scalar> {
    let [d0, _, d2] = t.dims();
    let mut out = vec![Scalar::zero(); d2];
    for i in 0..d0 {
        if v[i].is_zero() {
            continue;
        }
        for k in 0..d2 {
            out[k] += &v[i] * t.get(i, j, k);
        }
    }
    out
}

fn add_scaled(acc: &mut [Scalar], sign: i64, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if sign > 0 {
            *a += x;
        } else {
            *a -= x;
        }
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub type SparseColumn = Vec<(usize, Scalar)>;

fn sparse(v: Vec<Scalar>) -> SparseColumn {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Columns of the Hochschild coboundary `C^p(A, M) -> C^{p+1}(A, M)`:
/// `a_1 f(a_2..) + Σ (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{p+1} f(a_1..a_p) a_{p+1}`.
/// At `p = 0` the cochain is an element `m` and this reads `a m - m a`.
pub fn hochschild_oracle(pair: &CourantPair, module: &CPModule, p: usize) -> Vec<SparseColumn> {
    let da = pair.dim_a();
    let dm = module.m_dim();
    let mul = &pair.assoc.mul;
    let inputs = da.pow(p as u32) * dm;
    (0..inputs)
        .map(|j| {
            let f = Table::unit(da, p, dm, j);
            let mut image = Vec::with_capacity(da.pow(p as u32 + 1) * dm);
            for args in tuples(da, p + 1) {
                let mut v = vec![Scalar::zero(); dm];
                add_scaled(&mut v, 1, &left_apply(&module.left_act, args[0], f.at(&args[1..])));
                for i in 1..=p {
                    let prod = mul.slot(args[i - 1], args[i]).to_vec();
                    let mut merged: Vec<usize> = args[..i].to_vec();
                    merged.extend_from_slice(&args[i + 1..]);
                    add_scaled(&mut v, sign(i), &f.at_vector(&merged, i - 1, &prod));
                }
                add_scaled(&mut v, sign(p + 1), &right_apply(&module.right_act, f.at(&args[..p]), args[p]));
                image.extend(v);
            }
            sparse(image)
        })
        .collect()
}

/// Columns of the Leibniz coboundary `CL^q(L; P) -> CL^{q+1}(L; P)` written
/// exactly as the classical formula, with no extra normalization:
/// `Σ_{i<=q} (-1)^{i-1} [x_i, ψ(..x̂_i..)] + (-1)^{q+1} [ψ(x_1..x_q), x_{q+1}]
///  + Σ_{i<j} (-1)^i ψ(..x̂_i.., [x_i, x_j], ..)`.
pub fn leibniz_oracle(pair: &CourantPair, module: &CPModule, q: usize) -> Vec<SparseColumn> {
    let dl = pair.dim_l();
    let dp = module.p_dim();
    let br = &pair.leibniz.bracket;
    let inputs = dl.pow(q as u32) * dp;
    (0..inputs)
        .map(|j| {
            let f = Table::unit(dl, q, dp, j);
            let mut image = Vec::with_capacity(dl.pow(q as u32 + 1) * dp);
            for xs in tuples(dl, q + 1) {
                let mut v = vec![Scalar::zero(); dp];
                for i in 1..=q {
                    let mut rest = xs.clone();
                    rest.remove(i - 1);
                    add_scaled(&mut v, sign(i - 1), &left_apply(&module.p_left, xs[i - 1], f.at(&rest)));
                }
                add_scaled(&mut v, sign(q + 1), &right_apply(&module.p_right, f.at(&xs[..q]), xs[q]));
                for i in 1..=q + 1 {
                    for jj in i + 1..=q + 1 {
                        let b = br.slot(xs[i - 1], xs[jj - 1]).to_vec();
                        let mut rest = xs.clone();
                        rest.remove(i - 1);
                        // x_j sits at position j - 2 once x_i is removed.
                        add_scaled(&mut v, sign(i), &f.at_vector(&rest, jj - 2, &b));
                    }
                }
                image.extend(v);
            }
            sparse(image)
        })
        .collect()
}

/// Rank by Gaussian elimination on sparse rows keyed by column.
pub fn oracle_rank(columns: &[SparseColumn]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut rank = 0;
    for col in columns {
        let mut v: BTreeMap<usize, Scalar> = col.iter().cloned().collect();
        loop {
            let Some((&lead, c)) = v.iter().next() else { break };
            let c = c.clone();
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = c / &p[&lead];
                    for (k, x) in p {
                        let e = v.entry(*k).or_insert_with(Scalar::zero);
                        *e -= &factor * x;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    pivots.insert(lead, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `dim H^n` of a complex given by its column lists `δ^{n-1}` and `δ^n`.
pub fn oracle_cohomology(incoming: Option<&[SparseColumn]>, outgoing: &[SparseColumn]) -> usize {
    outgoing.len() - oracle_rank(outgoing) - incoming.map_or(0, oracle_rank)
}

pub fn negate(cols: &[SparseColumn]) -> Vec<SparseColumn> {
    cols.iter().map(|c| c.iter().map(|(i, x)| (*i, -x.clone())).collect()).collect()
}
