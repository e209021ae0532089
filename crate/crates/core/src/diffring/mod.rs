//! Differential polynomials: the total derivative, prolongation and order tuples.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::polycore::{Coeff, Monomial, Polynomial, VarRegistry, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiffError {
    #[error("variable {0} is not declared")]
    Undeclared(String),
    #[error("name {0} is declared in more than one group")]
    DuplicateDeclaration(String),
    #[error("parameter {0} cannot be differentiated")]
    ParameterDerivative(String),
    #[error("equations belong to a different variable registry")]
    RegistryMismatch,
}

/// Total derivative `D(p) = sum_v (dp/dv) * v'`. Variables whose base name is a
/// declared constant of the registry have derivative zero. New derivative
/// variables are registered on demand.
pub fn derive<C: Coeff>(p: &Polynomial<C>) -> Polynomial<C> {
    let reg = p.registry().clone();
    let mut terms: Vec<(Monomial, C)> = Vec::new();
    for v in p.variables() {
        let var = reg.var(v);
        if reg.is_constant(&var.name) {
            continue;
        }
        let dv = reg.intern(&var.name, var.order + 1);
        for (m, c) in p.terms() {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let k = c.from_bigint_like(&BigInt::from(e));
            let m2 = m.with_exp(v, e - 1).mul(&Monomial::var(dv, 1));
            terms.push((m2, c.mul(&k)));
        }
    }
    Polynomial::from_terms(&reg, terms)
}

/// `D^k(p)`.
pub fn derive_n<C: Coeff>(p: &Polynomial<C>, k: u32) -> Polynomial<C> {
    let mut out = p.clone();
    for _ in 0..k {
        out = derive(&out);
    }
    out
}

/// Per-variable counts `1 + (highest derivative order present)`, zero when absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderTuple {
    pub names: Vec<String>,
    pub counts: Vec<u32>,
}

impl OrderTuple {
    /// `|alpha|`.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| self.counts[i])
    }
}

/// A system of differential polynomials with its variables split into unknowns to
/// eliminate, unknowns to keep, and constant parameters.
#[derive(Clone, Debug)]
pub struct DiffSystem {
    registry: Arc<VarRegistry>,
    equations: Vec<Polynomial>,
    eliminate: Vec<String>,
    keep: Vec<String>,
    params: Vec<String>,
}

impl DiffSystem {
    pub fn new(
        registry: &Arc<VarRegistry>,
        equations: Vec<Polynomial>,
        eliminate: Vec<String>,
        keep: Vec<String>,
        params: Vec<String>,
    ) -> Result<Self, DiffError> {
        let mut seen = HashSet::new();
        for n in eliminate.iter().chain(&keep).chain(&params) {
            if !seen.insert(n.clone()) {
                return Err(DiffError::DuplicateDeclaration(n.clone()));
            }
        }
        for n in &params {
            registry.declare_constant(n);
        }
        let sys = DiffSystem {
            registry: registry.clone(),
            equations,
            eliminate,
            keep,
            params,
        };
        for eq in &sys.equations {
            if !Arc::ptr_eq(eq.registry(), registry) {
                return Err(DiffError::RegistryMismatch);
            }
            for v in eq.variables() {
                let var = registry.var(v);
                if !seen.contains(&var.name) {
                    return Err(DiffError::Undeclared(var.to_string()));
                }
                if var.order > 0 && sys.params.contains(&var.name) {
                    return Err(DiffError::ParameterDerivative(var.to_string()));
                }
            }
        }
        Ok(sys)
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn eliminate_names(&self) -> &[String] {
        &self.eliminate
    }

    pub fn keep_names(&self) -> &[String] {
        &self.keep
    }

    pub fn param_names(&self) -> &[String] {
        &self.params
    }

    /// Same declarations, different equations.
    pub fn with_equations(&self, equations: Vec<Polynomial>) -> DiffSystem {
        DiffSystem {
            registry: self.registry.clone(),
            equations,
            eliminate: self.eliminate.clone(),
            keep: self.keep.clone(),
            params: self.params.clone(),
        }
    }

    /// Same equations with the roles of the unknowns reassigned.
    pub fn with_partition(&self, eliminate: Vec<String>, keep: Vec<String>) -> Result<DiffSystem, DiffError> {
        DiffSystem::new(
            &self.registry,
            self.equations.clone(),
            eliminate,
            keep,
            self.params.clone(),
        )
    }

    fn variables_of(&self, names: &[String]) -> Vec<usize> {
        let names: HashSet<&str> = names.iter().map(String::as_str).collect();
        let present: BTreeSet<usize> = self.equations.iter().flat_map(|e| e.variables()).collect();
        present
            .into_iter()
            .filter(|&v| names.contains(self.registry.var(v).name.as_str()))
            .collect()
    }

    /// Registry indices of the eliminated unknowns' derivatives that occur.
    pub fn x_variables(&self) -> Vec<usize> {
        self.variables_of(&self.eliminate)
    }

    /// Registry indices of kept unknowns' derivatives and parameters that occur.
    pub fn y_variables(&self) -> Vec<usize> {
        let mut out = self.variables_of(&self.keep);
        out.extend(self.variables_of(&self.params));
        out.sort_unstable();
        out
    }

    /// All equations and their derivatives up to order `depth`, listed depth by depth.
    pub fn prolong(&self, depth: u32) -> DiffSystem {
        let mut out = self.equations.clone();
        let mut layer = self.equations.clone();
        for _ in 0..depth {
            layer = layer.iter().map(derive).collect();
            out.extend(layer.iter().cloned());
        }
        self.with_equations(out)
    }

    fn tuple(&self, names: &[String]) -> OrderTuple {
        let counts = names
            .iter()
            .map(|n| {
                self.equations
                    .iter()
                    .flat_map(|e| e.variables())
                    .map(|v| self.registry.var(v))
                    .filter(|v| &v.name == n)
                    .map(|v| v.order + 1)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        OrderTuple {
            names: names.to_vec(),
            counts,
        }
    }

    /// `alpha` for the unknowns being eliminated.
    pub fn order_tuple(&self) -> OrderTuple {
        self.tuple(&self.eliminate)
    }

    /// `beta` for the kept unknowns.
    pub fn beta_tuple(&self) -> OrderTuple {
        self.tuple(&self.keep)
    }

    /// Adds derivatives of equations as long as they stay inside the current
    /// order window of the eliminated unknowns, until nothing new appears.
    /// Kept unknowns are not restricted.
    pub fn augment_derivatives(&self) -> (DiffSystem, Vec<Polynomial>) {
        let alpha = self.order_tuple();
        let within = |p: &Polynomial| {
            p.variables().into_iter().all(|v| {
                let var = self.registry.var(v);
                match alpha.get(&var.name) {
                    Some(a) => var.order < a,
                    None => true,
                }
            })
        };
        let mut known: HashSet<Vec<(Monomial, Q)>> = self.equations.iter().map(projective_key).collect();
        let mut equations = self.equations.clone();
        let mut added = Vec::new();
        let mut frontier = self.equations.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                let df = derive(f);
                if df.is_zero() || !within(&df) {
                    continue;
                }
                let k = projective_key(&df);
                if known.insert(k) {
                    equations.push(df.clone());
                    added.push(df.clone());
                    next.push(df);
                }
            }
            frontier = next;
        }
        (self.with_equations(equations), added)
    }
}

/// Terms of the primitive part with a positive first coefficient, identifying
/// polynomials up to a nonzero scalar.
fn projective_key(p: &Polynomial) -> Vec<(Monomial, Q)> {
    let (_, prim) = p.content_and_primitive();
    let flip = prim.terms().first().is_some_and(|(_, c)| Coeff::is_negative(c));
    if flip {
        (-&prim).terms().to_vec()
    } else {
        prim.terms().to_vec()
    }
}
