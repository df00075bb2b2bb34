use std::path::Path;

use hyperforge::algebroid::{self, AlgebroidSpec, Mu};
use hyperforge::coeff::{poly_parse, CoeffMatrix, RatFunc};
use indexmap::IndexMap;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Base {
    pub dim: usize,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub coeff: String,
}

/// The on-disk description of an algebroid and a list of named 2-forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub base: Base,
    pub rank: usize,
    pub anchor: Vec<Vec<String>>,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    #[serde(default)]
    pub forms: IndexMap<String, Vec<Vec<String>>>,
}

/// A parsed document: the algebroid, its `μ`, and the forms in declaration order.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub spec: AlgebroidSpec,
    pub mu: Mu,
    pub forms: IndexMap<String, CoeffMatrix>,
}

impl Loaded {
    pub fn vars(&self) -> &[String] {
        self.spec.gens().vars()
    }

    pub fn form(&self, name: &str) -> Result<&CoeffMatrix, CliError> {
        self.forms.get(name).ok_or_else(|| CliError::UnknownForm(name.to_string()))
    }
}

fn expr(text: &str, vars: &[String], location: impl FnOnce() -> String) -> Result<RatFunc, CliError> {
    poly_parse(text, vars).map_err(|source| CliError::Expression { location: location(), source })
}

fn matrix(
    rows: &[Vec<String>],
    shape: (usize, usize),
    vars: &[String],
    what: &str,
) -> Result<CoeffMatrix, CliError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(CliError::Shape(format!("{what} must be {}x{}", shape.0, shape.1)));
    }
    let mut m = CoeffMatrix::zeros(shape.0, shape.1);
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            m.set(i, j, expr(text, vars, || format!("{what}[{}][{}]", i + 1, j + 1))?);
        }
    }
    Ok(m)
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let vars = &self.base.vars;
        let (n, d) = (self.base.dim, self.rank);
        if vars.len() != n {
            return Err(CliError::Shape(format!("base.dim is {n} but {} variables are declared", vars.len())));
        }
        let anchor = matrix(&self.anchor, (n, d), vars, "anchor")?;
        let mut spec = AlgebroidSpec::new(vars.clone(), d, anchor)?;
        for (k, s) in self.structure.iter().enumerate() {
            if !(1 <= s.a && s.a < s.b && s.b <= d && 1 <= s.c && s.c <= d) {
                return Err(CliError::Shape(format!(
                    "structure[{}] needs 1 <= a < b <= {d} and 1 <= c <= {d}",
                    k + 1
                )));
            }
            let v = expr(&s.coeff, vars, || format!("structure[{}].coeff", k + 1))?;
            let prev = spec.structure_constant(s.c - 1, s.a - 1, s.b - 1).clone();
            spec.set_structure(s.c - 1, s.a - 1, s.b - 1, &prev + &v)?;
        }
        let mu = algebroid::build_mu(&spec);
        let mut forms = IndexMap::new();
        for (name, rows) in &self.forms {
            let w = matrix(rows, (d, d), vars, &format!("forms.{name}"))?;
            if !w.is_antisymmetric() {
                return Err(CliError::Shape(format!("form {name} is not antisymmetric")));
            }
            forms.insert(name.clone(), w);
        }
        Ok(Loaded { spec, mu, forms })
    }
}

pub fn read(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    InputDocument::from_json(&text)?.load()
}
