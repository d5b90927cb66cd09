//! JSON documents for pairs, modules and deformations.
//!
//! Every rational is a string, `"p/q"` or an integer; decimals are rejected.
//! Tables are sparse lists of `[i, j, [coefficients]]` and anything omitted
//! is zero.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AssocAlgebra, CPModule, CourantPair, Derivation, LeibnizAlgebra, Tensor3};
use crate::cochain::{adjoint_shape, Cochain, Shape, TotalCochain};
use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, Matrix, Scalar};

/// `[i, j, [c_0, .., c_{d-1}]]`: the value on the basis pair `(e_i, e_j)`.
pub type TableEntry = (usize, usize, Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default)]
    pub table: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
}

/// Action tables of a module, each a sparse list in argument order:
/// `left` is `a·m`, `right` is `m·a`, `p_left` is `[x,p]`, `p_right` is
/// `[p,x]`, `m_left` is `[x,m]`, `m_right` is `[m,x]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionsDoc {
    #[serde(default)]
    pub left: Vec<TableEntry>,
    #[serde(default)]
    pub right: Vec<TableEntry>,
    #[serde(default)]
    pub p_left: Vec<TableEntry>,
    #[serde(default)]
    pub p_right: Vec<TableEntry>,
    #[serde(default)]
    pub m_left: Vec<TableEntry>,
    #[serde(default)]
    pub m_right: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(rename = "M")]
    pub m: SpaceDoc,
    #[serde(rename = "P")]
    pub p: SpaceDoc,
    #[serde(default)]
    pub actions: ActionsDoc,
    /// `[p, a, [coefficients in M]]`: the value `φ(e_p)(e_a)`.
    #[serde(default)]
    pub phi: Vec<TableEntry>,
}

/// A Courant pair. `mu[x]` is the matrix of `μ(e_x)` written row by row;
/// column `a` holds the coordinates of `μ(e_x)(e_a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub field: String,
    pub assoc: AlgebraDoc,
    pub leibniz: AlgebraDoc,
    #[serde(default)]
    pub mu: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDoc>,
}

fn scalar_at(s: &str, location: &str) -> Result<Scalar> {
    parse_scalar(s).map_err(|_| Error::Scalar(format!("{s} (at {location})")))
}

fn labels(doc_basis: &[String], dim: usize, prefix: &str, location: &str) -> Result<Vec<String>> {
    if doc_basis.is_empty() {
        return Ok((1..=dim).map(|i| format!("{prefix}{i}")).collect());
    }
    if doc_basis.len() != dim {
        return Err(Error::Input(format!("{location}.basis has {} labels for dim {dim}", doc_basis.len())));
    }
    Ok(doc_basis.to_vec())
}

fn table(entries: &[TableEntry], dims: [usize; 3], location: &str) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(dims[0], dims[1], dims[2]);
    for (n, (i, j, coeffs)) in entries.iter().enumerate() {
        let at = format!("{location}[{n}]");
        if *i >= dims[0] || *j >= dims[1] {
            return Err(Error::Input(format!("{at}: index ({i}, {j}) out of range {}x{}", dims[0], dims[1])));
        }
        if coeffs.len() != dims[2] {
            return Err(Error::Input(format!("{at}: {} coefficients, expected {}", coeffs.len(), dims[2])));
        }
        for (k, c) in coeffs.iter().enumerate() {
            let v = scalar_at(c, &at)?;
            let old = t.get(*i, *j, k).clone();
            t.set(*i, *j, k, old + v);
        }
    }
    Ok(t)
}

fn table_entries(t: &Tensor3) -> Vec<TableEntry> {
    let [d0, d1, _] = t.dims();
    let mut out = Vec::new();
    for i in 0..d0 {
        for j in 0..d1 {
            let v = t.slot(i, j);
            if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                out.push((i, j, v.iter().map(format_scalar).collect()));
            }
        }
    }
    out
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_scalar).collect()).collect()
}

fn matrix_from_rows(rows: &[Vec<String>], dim: usize, location: &str) -> Result<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Input(format!("{location}: expected a {dim}x{dim} matrix")));
    }
    let mut m = Matrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m[(i, j)] = scalar_at(c, &format!("{location}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

impl PairDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed pair document: {e}")))
    }

    /// The pair and, if the document has one, its module. Shape problems
    /// are reported before any law is checked.
    pub fn to_pair(&self) -> Result<(CourantPair, Option<CPModule>)> {
        if self.field != "Q" {
            return Err(Error::Input(format!("field must be \"Q\", got {:?}", self.field)));
        }
        let (da, dl) = (self.assoc.dim, self.leibniz.dim);
        let assoc = AssocAlgebra::new(
            labels(&self.assoc.basis, da, "a", "assoc")?,
            table(&self.assoc.table, [da, da, da], "assoc.table")?,
        )?;
        let leibniz = LeibnizAlgebra::new(
            labels(&self.leibniz.basis, dl, "e", "leibniz")?,
            table(&self.leibniz.table, [dl, dl, dl], "leibniz.table")?,
        )?;
        let mu = if self.mu.is_empty() {
            vec![Derivation::zero(da); dl]
        } else {
            if self.mu.len() != dl {
                return Err(Error::Input(format!("mu has {} matrices for dim L = {dl}", self.mu.len())));
            }
            self.mu
                .iter()
                .enumerate()
                .map(|(x, rows)| matrix_from_rows(rows, da, &format!("mu[{x}]")).map(|matrix| Derivation { matrix }))
                .collect::<Result<_>>()?
        };
        let pair = CourantPair::new(assoc, leibniz, mu)?;
        let module = self.module.as_ref().map(|m| m.to_module(&pair)).transpose()?;
        Ok((pair, module))
    }

    pub fn from_pair(pair: &CourantPair, module: Option<&CPModule>) -> Self {
        Self {
            field: "Q".into(),
            assoc: AlgebraDoc {
                dim: pair.dim_a(),
                basis: pair.assoc.basis.clone(),
                table: table_entries(&pair.assoc.mul),
            },
            leibniz: AlgebraDoc {
                dim: pair.dim_l(),
                basis: pair.leibniz.basis.clone(),
                table: table_entries(&pair.leibniz.bracket),
            },
            mu: pair.mu.iter().map(|d| matrix_rows(&d.matrix)).collect(),
            module: module.map(ModuleDoc::from_module),
        }
    }
}

impl ModuleDoc {
    fn to_module(&self, pair: &CourantPair) -> Result<CPModule> {
        let (da, dl, dm, dp) = (pair.dim_a(), pair.dim_l(), self.m.dim, self.p.dim);
        let a = &self.actions;
        let phi_t = table(&self.phi, [dp, da, dm], "module.phi")?;
        let phi = (0..dp)
            .map(|p| {
                let cols: Vec<Vec<Scalar>> = (0..da).map(|x| phi_t.slot(p, x).to_vec()).collect();
                Matrix::from_columns(dm, &cols)
            })
            .collect::<Result<_>>()?;
        Ok(CPModule {
            m_basis: labels(&self.m.basis, dm, "m", "module.M")?,
            p_basis: labels(&self.p.basis, dp, "p", "module.P")?,
            left_act: table(&a.left, [da, dm, dm], "module.actions.left")?,
            right_act: table(&a.right, [dm, da, dm], "module.actions.right")?,
            p_left: table(&a.p_left, [dl, dp, dp], "module.actions.p_left")?,
            p_right: table(&a.p_right, [dp, dl, dp], "module.actions.p_right")?,
            m_left: table(&a.m_left, [dl, dm, dm], "module.actions.m_left")?,
            m_right: table(&a.m_right, [dm, dl, dm], "module.actions.m_right")?,
            phi,
        })
    }

    fn from_module(m: &CPModule) -> Self {
        let da = m.phi.first().map_or(0, Matrix::cols);
        let mut phi = Vec::new();
        for (p, mat) in m.phi.iter().enumerate() {
            for a in 0..da {
                let col = mat.column(a);
                if col.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                    phi.push((p, a, col.iter().map(format_scalar).collect()));
                }
            }
        }
        Self {
            m: SpaceDoc { dim: m.m_dim(), basis: m.m_basis.clone() },
            p: SpaceDoc { dim: m.p_dim(), basis: m.p_basis.clone() },
            actions: ActionsDoc {
                left: table_entries(&m.left_act),
                right: table_entries(&m.right_act),
                p_left: table_entries(&m.p_left),
                p_right: table_entries(&m.p_right),
                m_left: table_entries(&m.m_left),
                m_right: table_entries(&m.m_right),
            },
            phi,
        }
    }
}

/// Either an inline pair or the name of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairRef {
    Catalog(String),
    Inline(Box<PairDocument>),
}

/// Coefficients of `t^order`: `alpha` entries are `[a, b, [..]]`, `mu`
/// entries `[x, a, [..]]` and `lambda` entries `[x, y, [..]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mu: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDocument {
    pub pair: PairRef,
    pub order: usize,
    #[serde(default)]
    pub coefficients: Vec<CoefficientDoc>,
}

impl DeformationDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed deformation document: {e}")))
    }

    pub fn to_deformation(&self) -> Result<Deformation> {
        let pair = match &self.pair {
            PairRef::Catalog(name) => crate::catalog::by_name(name)?.pair,
            PairRef::Inline(doc) => doc.to_pair()?.0,
        };
        let (da, dl) = (pair.dim_a(), pair.dim_l());
        let mut slots: Vec<Option<&CoefficientDoc>> = vec![None; self.order];
        for c in &self.coefficients {
            if c.order == 0 || c.order > self.order {
                return Err(Error::Input(format!(
                    "coefficient of order {} outside 1..={}",
                    c.order, self.order
                )));
            }
            if slots[c.order - 1].replace(c).is_some() {
                return Err(Error::Input(format!("order {} is listed twice", c.order)));
            }
        }
        let mut higher = Vec::with_capacity(self.order);
        for (k, slot) in slots.into_iter().enumerate() {
            let at = format!("coefficients[order {}]", k + 1);
            let (alpha, mu, lambda) = match slot {
                Some(c) => (
                    table(&c.alpha, [da, da, da], &format!("{at}.alpha"))?,
                    table(&c.mu, [dl, da, da], &format!("{at}.mu"))?,
                    table(&c.lambda, [dl, dl, dl], &format!("{at}.lambda"))?,
                ),
                None => (Tensor3::zeros(da, da, da), Tensor3::zeros(dl, da, da), Tensor3::zeros(dl, dl, dl)),
            };
            higher.push(TotalCochain::new(vec![
                Cochain::from_tensor(adjoint_shape(&pair, 2, 0), &alpha)?,
                Cochain::from_tensor(adjoint_shape(&pair, 1, 1), &mu)?,
                Cochain::from_tensor(adjoint_shape(&pair, 0, 2), &lambda)?,
            ])?);
        }
        Deformation::new(pair, higher)
    }

    /// Inline document for a deformation.
    pub fn from_deformation(d: &Deformation) -> Self {
        let coefficients = (1..=d.order())
            .map(|n| CoefficientDoc {
                order: n,
                alpha: cochain_table(&d.alphas()[n], false),
                mu: cochain_table(&d.mus()[n], true),
                lambda: cochain_table(&d.lambdas()[n], false),
            })
            .filter(|c| !(c.alpha.is_empty() && c.mu.is_empty() && c.lambda.is_empty()))
            .collect();
        Self {
            pair: PairRef::Inline(Box::new(PairDocument::from_pair(d.pair(), None))),
            order: d.order(),
            coefficients,
        }
    }
}

/// Sparse table of a two-argument cochain; `swap` writes `(a; x)` as `[x, a]`.
fn cochain_table(c: &Cochain, swap: bool) -> Vec<TableEntry> {
    let s = c.shape();
    let mut out = Vec::new();
    for b in 0..s.blocks() {
        let args = s.args_of(b);
        let v = c.value(&args);
        if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            let (i, j) = if swap { (args[1], args[0]) } else { (args[0], args[1]) };
            out.push((i, j, v.iter().map(format_scalar).collect()));
        }
    }
    out
}

/// Machine-readable form of a cochain: `{"p", "q", "entries": [[args.., [values..]], ..]}`
/// listing every argument tuple with a nonzero value.
pub fn cochain_json(c: &Cochain) -> Value {
    let s = c.shape();
    let mut entries = Vec::new();
    for b in 0..s.blocks() {
        let args = s.args_of(b);
        let v = c.value(&args);
        if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            let mut e: Vec<Value> = args.iter().map(|&i| json!(i)).collect();
            e.push(json!(v.iter().map(format_scalar).collect::<Vec<_>>()));
            entries.push(Value::Array(e));
        }
    }
    json!({ "p": s.p, "q": s.q, "entries": entries })
}

pub fn total_json(c: &TotalCochain) -> Value {
    Value::Array(c.components().iter().map(cochain_json).collect())
}

/// Inverse of [`cochain_json`] for a known shape.
pub fn cochain_from_json(shape: Shape, v: &Value) -> Result<Cochain> {
    let bad = |m: &str| Error::Input(format!("cochain json: {m}"));
    if v["p"].as_u64() != Some(shape.p as u64) || v["q"].as_u64() != Some(shape.q as u64) {
        return Err(bad("bidegree mismatch"));
    }
    let mut c = Cochain::zeros(shape);
    for e in v["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
        let e = e.as_array().ok_or_else(|| bad("entry is not an array"))?;
        let (vals, args) = e.split_last().ok_or_else(|| bad("empty entry"))?;
        let args: Vec<usize> = args
            .iter()
            .map(|a| a.as_u64().map(|x| x as usize).ok_or_else(|| bad("non-integer index")))
            .collect::<Result<_>>()?;
        if args.len() != shape.arity() {
            return Err(bad("wrong number of arguments"));
        }
        let vals = vals.as_array().ok_or_else(|| bad("values are not an array"))?;
        if vals.len() != shape.dim_out {
            return Err(bad("wrong value length"));
        }
        let slot = c.value_mut(&args);
        for (k, x) in vals.iter().enumerate() {
            slot[k] = parse_scalar(x.as_str().ok_or_else(|| bad("value is not a string"))?)?;
        }
    }
    Ok(c)
}

/// Inverse of [`total_json`] given the component shapes in order.
pub fn total_from_json(shapes: &[Shape], v: &Value) -> Result<TotalCochain> {
    let parts = v.as_array().ok_or_else(|| Error::Input("total cochain json is not an array".into()))?;
    if parts.len() != shapes.len() {
        return Err(Error::Input("total cochain json has the wrong number of components".into()));
    }
    TotalCochain::new(parts.iter().zip(shapes).map(|(p, s)| cochain_from_json(*s, p)).collect::<Result<_>>()?)
}
