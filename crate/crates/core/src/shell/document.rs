use std::collections::BTreeMap;

use crate::error::{Error, ParseErrorKind, Result};
use crate::{Poly, PolyMap};

/// Named variables, named components and free-form metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct MapDocument {
    vars: Vec<String>,
    components: Vec<(String, Poly)>,
    metadata: BTreeMap<String, String>,
}

fn dup(name: &str) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        kind: ParseErrorKind::Duplicate(name.to_string()),
    }
}

/// `x, y, z` for small dimensions, `x1..xn` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl MapDocument {
    pub fn new(vars: Vec<String>, components: Vec<(String, Poly)>, metadata: BTreeMap<String, String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(dup(v));
            }
        }
        for (i, (name, p)) in components.iter().enumerate() {
            if components[..i].iter().any(|(n, _)| n == name) {
                return Err(dup(name));
            }
            if p.nvars() != vars.len() {
                return Err(Error::VarcountMismatch {
                    expected: vars.len(),
                    got: p.nvars(),
                });
            }
        }
        for (k, v) in &metadata {
            if v.contains(['\n', '#']) || v.trim() != v {
                return Err(Error::Format(format!("metadata `{k}` must be a trimmed single line without `#`")));
            }
        }
        Ok(MapDocument {
            vars,
            components,
            metadata,
        })
    }

    /// Document for a map with default variable names and components `f1..fn`.
    pub fn from_map(map: &PolyMap) -> Self {
        let components = map
            .components()
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("f{}", i + 1), p.clone()))
            .collect();
        MapDocument {
            vars: default_var_names(map.nvars()),
            components,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Result<Self> {
        self.metadata.insert(key.to_string(), value.into());
        MapDocument::new(self.vars, self.components, self.metadata)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn components(&self) -> &[(String, Poly)] {
        &self.components
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn to_map(&self) -> Result<PolyMap> {
        PolyMap::new(self.vars.len(), self.components.iter().map(|(_, p)| p.clone()).collect())
    }
}
