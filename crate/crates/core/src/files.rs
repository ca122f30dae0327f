//! JSON file formats: function sets, networks and bases.
//!
//! Scalar values are canonical expression strings in the grammar of
//! [`crate::field::parse_scalar`]. Endpoints are 0-based `[vertex, slot]`
//! pairs. Vertices may carry an optional `side` tag (0 or 1) for bipartite
//! checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldCtx, Scalar};
use crate::matrix::ScalarMatrix;
use crate::tensor::{Func, Gadget};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionDef {
    pub name: String,
    pub arity: usize,
    pub values: Vec<String>,
}

impl FunctionDef {
    pub fn from_func(name: &str, f: &Func) -> Self {
        FunctionDef {
            name: name.to_string(),
            arity: f.arity(),
            values: f.values().iter().map(|v| v.to_expr_string()).collect(),
        }
    }

    pub fn to_func(&self, ctx: &FieldCtx) -> Result<Func> {
        if self.values.len() != 1usize << self.arity {
            return Err(Error::Validation(format!(
                "function '{}': expected {} values for arity {}, found {}",
                self.name,
                1usize << self.arity,
                self.arity,
                self.values.len()
            )));
        }
        let mut vals = Vec::with_capacity(self.values.len());
        for (i, text) in self.values.iter().enumerate() {
            let v = parse_scalar(ctx, text).map_err(|e| {
                Error::Validation(format!("function '{}' value {}: {}", self.name, i, e))
            })?;
            vals.push(v);
        }
        Ok(Func::new(self.arity, vals))
    }
}

/// A set of named functions: `{"functions": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionsFile {
    pub functions: Vec<FunctionDef>,
}

impl FunctionsFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("invalid JSON: {e}")))
    }

    pub fn to_funcs(&self, ctx: &FieldCtx) -> Result<Vec<(String, Func)>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for def in &self.functions {
            if !seen.insert(def.name.clone()) {
                return Err(Error::Validation(format!("duplicate function name '{}'", def.name)));
            }
            out.push((def.name.clone(), def.to_func(ctx)?));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDef {
    pub func: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<u8>,
}

/// A network: functions, vertices referencing them by name, internal edges
/// and the ordered external endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkFile {
    pub functions: Vec<FunctionDef>,
    pub vertices: Vec<VertexDef>,
    pub edges: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub external: Vec<[usize; 2]>,
}

impl NetworkFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("invalid JSON: {e}")))
    }

    /// Builds and validates the gadget; also returns the per-vertex side
    /// tags when every vertex carries one.
    pub fn to_gadget(&self, ctx: &FieldCtx) -> Result<(Gadget, Option<Vec<u8>>)> {
        let funcs = FunctionsFile { functions: self.functions.clone() }.to_funcs(ctx)?;
        let lookup: std::collections::BTreeMap<&str, &Func> =
            funcs.iter().map(|(n, f)| (n.as_str(), f)).collect();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let f = lookup.get(v.func.as_str()).ok_or_else(|| {
                Error::Validation(format!("vertex {i}: unknown function '{}'", v.func))
            })?;
            vertices.push((*f).clone());
        }
        let edges = self
            .edges
            .iter()
            .map(|&[[v1, s1], [v2, s2]]| ((v1, s1), (v2, s2)))
            .collect();
        let external = self.external.iter().map(|&[v, s]| (v, s)).collect();
        let gadget = Gadget::new(vertices, edges, external)?;
        let sides = if self.vertices.iter().all(|v| v.side.is_some()) && !self.vertices.is_empty()
        {
            let sides: Vec<u8> = self.vertices.iter().map(|v| v.side.unwrap()).collect();
            if sides.iter().any(|&s| s > 1) {
                return Err(Error::Validation("vertex side must be 0 or 1".into()));
            }
            Some(sides)
        } else {
            None
        };
        Ok((gadget, sides))
    }

    pub fn from_gadget(g: &Gadget, sides: Option<&[u8]>) -> Self {
        // vertices with identical tables share one function entry
        let mut functions: Vec<FunctionDef> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut tables: Vec<Func> = Vec::new();
        for f in &g.vertices {
            if let Some(k) = tables.iter().position(|t| t == f) {
                names.push(functions[k].name.clone());
            } else {
                let name = format!("f{}", tables.len());
                functions.push(FunctionDef::from_func(&name, f));
                tables.push(f.clone());
                names.push(name);
            }
        }
        NetworkFile {
            functions,
            vertices: names
                .into_iter()
                .enumerate()
                .map(|(i, func)| VertexDef { func, side: sides.map(|s| s[i]) })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|&((v1, s1), (v2, s2))| [[v1, s1], [v2, s2]])
                .collect(),
            external: g.external.iter().map(|&(v, s)| [v, s]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

/// A 2x2 basis: `{"entries": [[a, b], [c, d]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisFile {
    pub entries: [[String; 2]; 2],
}

impl BasisFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("invalid JSON: {e}")))
    }

    pub fn to_matrix(&self, ctx: &FieldCtx) -> Result<ScalarMatrix> {
        let mut vals: Vec<Scalar> = Vec::with_capacity(4);
        for r in 0..2 {
            for c in 0..2 {
                let v = parse_scalar(ctx, &self.entries[r][c]).map_err(|e| {
                    Error::Validation(format!("basis entry [{r}][{c}]: {e}"))
                })?;
                vals.push(v);
            }
        }
        Ok(ScalarMatrix::mat2(
            vals[0].clone(),
            vals[1].clone(),
            vals[2].clone(),
            vals[3].clone(),
        ))
    }

    pub fn from_matrix(m: &ScalarMatrix) -> Self {
        BasisFile {
            entries: [
                [m.get(0, 0).to_expr_string(), m.get(0, 1).to_expr_string()],
                [m.get(1, 0).to_expr_string(), m.get(1, 1).to_expr_string()],
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::default()
    }

    #[test]
    fn function_round_trip() {
        let f = Func::disequality2();
        let def = FunctionDef::from_func("neq", &f);
        assert_eq!(def.to_func(&ctx()).unwrap(), f);
    }

    #[test]
    fn network_parse_and_value() {
        let text = r#"{
            "functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0", "1"]}],
            "vertices": [{"func": "eq"}],
            "edges": [[[0, 0], [0, 1]]]
        }"#;
        let nf = NetworkFile::parse(text).unwrap();
        let (g, sides) = nf.to_gadget(&ctx()).unwrap();
        assert!(sides.is_none());
        assert_eq!(g.holant_value().unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn network_round_trip() {
        let neq = Func::disequality2();
        let g = Gadget::new(
            vec![neq.clone(), neq],
            vec![((0, 0), (1, 0))],
            vec![(0, 1), (1, 1)],
        )
        .unwrap();
        let nf = NetworkFile::from_gadget(&g, Some(&[0, 1]));
        let (g2, sides) = nf.to_gadget(&ctx()).unwrap();
        assert_eq!(sides, Some(vec![0, 1]));
        assert_eq!(
            g2.gadget_function().unwrap(),
            g.gadget_function().unwrap()
        );
        // one shared function entry for the two identical tables
        assert_eq!(nf.functions.len(), 1);
    }

    #[test]
    fn validation_messages() {
        let text = r#"{
            "functions": [{"name": "eq", "arity": 2, "values": ["1", "0", "0"]}],
            "vertices": [{"func": "eq"}],
            "edges": [[[0, 0], [0, 1]]]
        }"#;
        let nf = NetworkFile::parse(text).unwrap();
        let err = nf.to_gadget(&ctx()).unwrap_err();
        assert!(err.to_string().contains("expected 4 values"));

        let text = r#"{
            "functions": [],
            "vertices": [{"func": "missing"}],
            "edges": []
        }"#;
        let err = NetworkFile::parse(text).unwrap().to_gadget(&ctx()).unwrap_err();
        assert!(err.to_string().contains("unknown function"));
    }

    #[test]
    fn basis_round_trip() {
        let m = ScalarMatrix::mat2(1.into(), 1.into(), Scalar::i().neg(), Scalar::i());
        let bf = BasisFile::from_matrix(&m);
        assert_eq!(bf.to_matrix(&ctx()).unwrap(), m);
    }
}
