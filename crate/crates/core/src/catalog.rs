//! Built-in Courant pairs with featured cochains and deformations. Every
//! entry checks itself on construction.

use crate::algebra::{
    adjoint_module, commutator_derivations_basis, coordinates, hemisemidirect, validate_module, validate_pair,
    AssocAlgebra, CourantPair, Derivation, LeibnizAlgebra, Tensor3,
};
use crate::cochain::{adjoint_zero, Bicomplex, Cochain, TotalCochain};
use crate::cohomology::is_cocycle;
use crate::deformation::{validate_deformation, Deformation};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Scalar};

/// A named `(0,2)`-cochain whose embedding `(0, 0, φ)` is a total 2-cocycle.
#[derive(Clone, Debug)]
pub struct FeaturedCochain {
    pub name: String,
    pub cochain: Cochain,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub pair: CourantPair,
    pub featured_cochains: Vec<FeaturedCochain>,
    pub featured_deformations: Vec<(String, Deformation)>,
    pub notes: &'static str,
}

pub const NAMES: [&str; 4] = ["heisenberg", "dual-numbers", "hemisemidirect", "ground-field"];

pub fn by_name(name: &str) -> Result<CatalogEntry> {
    match name {
        "heisenberg" => Ok(heisenberg()),
        "dual-numbers" => Ok(dual_numbers_line()),
        "hemisemidirect" => Ok(hemisemidirect_demo()),
        "ground-field" => Ok(ground_field()),
        other => Err(Error::Input(format!("no catalog entry named {other:?}; known: {}", NAMES.join(", ")))),
    }
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| by_name(n).expect("listed names exist")).collect()
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Embeds a `(0,2)`-cochain as the degree-2 total cochain `(0, 0, φ)`.
pub fn leibniz_class(pair: &CourantPair, phi: &Cochain) -> TotalCochain {
    TotalCochain::new(vec![adjoint_zero(pair, 2, 0), adjoint_zero(pair, 1, 1), phi.clone()])
        .expect("(2,0), (1,1), (0,2)")
}

impl CatalogEntry {
    /// Validates the pair, its adjoint module and every featured object.
    pub fn self_check(&self) -> Result<()> {
        let report = validate_pair(&self.pair);
        if let Some(f) = report.failures().next() {
            return Err(Error::InvalidDeformation(format!("{}: {} fails", self.name, f.law)));
        }
        let module = adjoint_module(&self.pair);
        if !validate_module(&self.pair, &module)?.passed() {
            return Err(Error::Input(format!("{}: adjoint module fails its laws", self.name)));
        }
        let bc = Bicomplex::new(&self.pair, &module)?;
        for f in &self.featured_cochains {
            if !is_cocycle(&bc, &leibniz_class(&self.pair, &f.cochain))? {
                return Err(Error::Input(format!("{}: {} is not a cocycle", self.name, f.name)));
            }
        }
        for (name, d) in &self.featured_deformations {
            if !validate_deformation(d).passed() {
                return Err(Error::InvalidDeformation(format!("{}: {name}", self.name)));
            }
        }
        Ok(())
    }

    pub fn deformation(&self, name: &str) -> Result<&Deformation> {
        self.featured_deformations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::Input(format!("{} has no deformation named {name:?}", self.name)))
    }
}

fn checked(entry: CatalogEntry) -> CatalogEntry {
    entry.self_check().unwrap_or_else(|e| panic!("catalog entry {} is broken: {e}", entry.name));
    entry
}

/// The Heisenberg Lie algebra `[e1,e3] = e2 = -[e3,e1]` anchored in
/// `A = Q[x]/(x^3)` by `μ(e1) = x d/dx`, `μ(e2) = μ(e3) = 0`.
pub fn heisenberg() -> CatalogEntry {
    let assoc = AssocAlgebra::truncated_polynomial(3);
    let mut br = Tensor3::zeros(3, 3, 3);
    br.set(0, 2, 1, int(1));
    br.set(2, 0, 1, int(-1));
    let leibniz = LeibnizAlgebra::new(labels(&["e1", "e2", "e3"]), br).expect("3x3x3");
    let mut d = Matrix::zeros(3, 3);
    d[(1, 1)] = int(1);
    d[(2, 2)] = int(2);
    let mu = vec![Derivation { matrix: d }, Derivation::zero(3), Derivation::zero(3)];
    let pair = CourantPair::new(assoc, leibniz, mu).expect("shapes match");

    let phi = |x: usize, y: usize| {
        let mut c = adjoint_zero(&pair, 0, 2);
        c.value_mut(&[x, y])[1] = int(1);
        c
    };
    let featured_cochains = vec![
        FeaturedCochain { name: "phi1".into(), cochain: phi(0, 0) },
        FeaturedCochain { name: "phi2".into(), cochain: phi(2, 2) },
        FeaturedCochain { name: "phi3".into(), cochain: phi(2, 0) },
    ];
    let featured_deformations = featured_cochains
        .iter()
        .map(|f| {
            let d = Deformation::new(pair.clone(), vec![leibniz_class(&pair, &f.cochain)]).expect("degree-2 coefficient");
            (f.name.clone(), d)
        })
        .collect();
    checked(CatalogEntry {
        name: "heisenberg",
        pair,
        featured_cochains,
        featured_deformations,
        notes: "Heisenberg Lie algebra anchored in the truncated polynomial algebra Q[x]/(x^3) through \
                mu(e1) = x d/dx. The finite-dimensional algebra stands in for a smooth function algebra; \
                the featured cochains phi1, phi2, phi3 only involve the bracket and the fact that mu \
                vanishes on e2 and e3.",
    })
}

/// `A = Q[x]/(x^2)`, `L = 0`, with the deformation `α_1(x, x) = 1`
/// toward `Q[x]/(x^2 - t)`.
pub fn dual_numbers_line() -> CatalogEntry {
    let pair = CourantPair::new(AssocAlgebra::truncated_polynomial(2), LeibnizAlgebra::abelian(vec![]), vec![])
        .expect("empty anchor for empty L");
    let mut a1 = adjoint_zero(&pair, 2, 0);
    a1.value_mut(&[1, 1])[0] = int(1);
    let c = TotalCochain::new(vec![a1, adjoint_zero(&pair, 1, 1), adjoint_zero(&pair, 0, 2)]).expect("degree 2");
    let d = Deformation::new(pair.clone(), vec![c]).expect("degree-2 coefficient");
    checked(CatalogEntry {
        name: "dual-numbers",
        pair,
        featured_cochains: Vec::new(),
        featured_deformations: vec![("x2-to-t".into(), d)],
        notes: "Dual numbers Q[x]/(x^2) with the zero Leibniz algebra. The featured deformation \
                x*x = t deforms toward Q[x]/(x^2 - t).",
    })
}

/// `A = Q[x]/(x^3)` and `L = Der(A) ⊕ A` with the hemisemidirect bracket
/// `[(D,a),(E,b)] = ([D,E], D(b))`, anchored by projection onto `Der(A)`.
pub fn hemisemidirect_demo() -> CatalogEntry {
    let assoc = AssocAlgebra::truncated_polynomial(3);
    let da = assoc.dim();
    let ders = commutator_derivations_basis(&assoc);
    let dg = ders.len();
    let flat: Vec<Vec<Scalar>> = ders.iter().map(|d| d.matrix.entries().to_vec()).collect();
    let mut br = Tensor3::zeros(dg, dg, dg);
    for i in 0..dg {
        for j in 0..dg {
            let c = ders[i].commutator(&ders[j]);
            let coords = coordinates(&flat, c.matrix.entries()).expect("Der(A) is closed under commutators");
            br.slot_mut(i, j).clone_from_slice(&coords);
        }
    }
    let g_labels: Vec<String> = (1..=dg).map(|i| format!("D{i}")).collect();
    let g = LeibnizAlgebra::new(g_labels, br).expect("square table");
    let mut action = Tensor3::zeros(dg, da, da);
    for (i, d) in ders.iter().enumerate() {
        for a in 0..da {
            action.slot_mut(i, a).clone_from_slice(&d.image(a));
        }
    }
    let leibniz = hemisemidirect(&g, &action, assoc.basis.clone()).expect("Der(A) acts on A");
    let mu = (0..leibniz.dim())
        .map(|i| if i < dg { ders[i].clone() } else { Derivation::zero(da) })
        .collect();
    let pair = CourantPair::new(assoc, leibniz, mu).expect("shapes match");
    checked(CatalogEntry {
        name: "hemisemidirect",
        pair,
        featured_cochains: Vec::new(),
        featured_deformations: Vec::new(),
        notes: "A = Q[x]/(x^3) and L = Der(A) + A with the hemisemidirect bracket ([D,E], D(b)); \
                the anchor is the projection onto Der(A), a Leibniz homomorphism that is not injective.",
    })
}

/// `A = Q` (unital) and `L = 0`. Both `HL^2` and `HL^3` vanish.
pub fn ground_field() -> CatalogEntry {
    let mut m = Tensor3::zeros(1, 1, 1);
    m.set(0, 0, 0, int(1));
    let assoc = AssocAlgebra::new(labels(&["1"]), m).expect("1x1x1");
    let pair = CourantPair::new(assoc, LeibnizAlgebra::abelian(vec![]), vec![]).expect("empty anchor");
    checked(CatalogEntry {
        name: "ground-field",
        pair,
        featured_cochains: Vec::new(),
        featured_deformations: Vec::new(),
        notes: "The ground field Q with the zero Leibniz algebra; rigid, and every deformation extends.",
    })
}
