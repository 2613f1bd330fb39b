//! JSON input formats.
//!
//! Algebra: `{"dim", "basis", "unit": [rationals] | null, "table"}` where
//! `table[i][j]` lists `[k, "num/den"]` pairs, the nonzero structure
//! constants of `e_i e_j`. Rationals are always strings.
//!
//! Tower: `{"stages": [algebra | "path"], "maps": [rows of rationals]}` or
//! `{"group": multiplication table, "chain": [[element indices], …]}`.
//!
//! Components: `{"label"?: "GL(n)", "components": [{"rank", "generators", "label"}]}`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{check_associativity, Algebra, AlgebraError, AlgebraHom, FiniteGroup};
use crate::linalg::{Rational, SparseMatrix};
use crate::orbifold::{OrbifoldError, TorusComponent};
use crate::towers::{hecke_tower, DirectSystem, TowerError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("algebra of dimension {dim} exceeds the cap {cap} (override with --i-know)")]
    SizeCap { dim: usize, cap: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn parse_err(position: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Parse { position: position.into(), message: message.into() }
}

fn from_json_error(e: serde_json::Error) -> InputError {
    parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

fn rational_at(s: &str, position: impl FnOnce() -> String) -> Result<Rational, InputError> {
    s.parse().map_err(|e| parse_err(position(), format!("{e}: {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Option<Vec<String>>,
    pub table: Vec<Vec<Vec<(usize, String)>>>,
}

/// Parsing options shared by all algebra inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub validate: bool,
    pub dim_cap: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { validate: true, dim_cap: crate::algebra::DEFAULT_DIM_CAP }
    }
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            basis: a.labels().to_vec(),
            unit: a.unit().map(|u| u.iter().map(Rational::to_fraction_string).collect()),
            table: a
                .table()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|cell| cell.into_iter().map(|(k, c)| (k, c.to_fraction_string())).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_algebra(self, opts: LoadOptions) -> Result<Algebra, InputError> {
        let d = self.dim;
        if d > opts.dim_cap {
            return Err(InputError::SizeCap { dim: d, cap: opts.dim_cap });
        }
        if self.basis.len() != d {
            return Err(parse_err("basis", format!("expected {d} labels, found {}", self.basis.len())));
        }
        if self.table.len() != d {
            return Err(parse_err("table", format!("expected {d} rows, found {}", self.table.len())));
        }
        let mut table = Vec::with_capacity(d);
        for (i, row) in self.table.into_iter().enumerate() {
            if row.len() != d {
                return Err(parse_err(format!("table[{i}]"), format!("expected {d} entries, found {}", row.len())));
            }
            let mut out_row = Vec::with_capacity(d);
            for (j, cell) in row.into_iter().enumerate() {
                let mut out = Vec::with_capacity(cell.len());
                for (t, (k, c)) in cell.into_iter().enumerate() {
                    let pos = || format!("table[{i}][{j}][{t}]");
                    if k >= d {
                        return Err(parse_err(pos(), format!("basis index {k} out of range 0..{d}")));
                    }
                    out.push((k, rational_at(&c, pos)?));
                }
                out_row.push(out);
            }
            table.push(out_row);
        }
        let unit = match self.unit {
            None => None,
            Some(u) if u.len() != d => {
                return Err(parse_err("unit", format!("expected {d} coordinates, found {}", u.len())))
            }
            Some(u) => Some(
                u.iter().enumerate().map(|(i, s)| rational_at(s, || format!("unit[{i}]"))).collect::<Result<_, _>>()?,
            ),
        };
        let algebra = Algebra::new(self.basis, table, unit).map_err(validation)?;
        if opts.validate {
            if let Some((i, j, k)) = check_associativity(&algebra) {
                let l = algebra.labels();
                return Err(InputError::Validation(format!(
                    "not associative at (e{i}, e{j}, e{k}) = ({}, {}, {})",
                    l[i], l[j], l[k]
                )));
            }
        }
        Ok(algebra)
    }
}

fn validation(e: AlgebraError) -> InputError {
    match e {
        AlgebraError::IndexOutOfRange { .. } | AlgebraError::Malformed(_) => parse_err("table", e.to_string()),
        other => InputError::Validation(other.to_string()),
    }
}

pub fn parse_algebra_str(text: &str, opts: LoadOptions) -> Result<Algebra, InputError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(from_json_error)?;
    file.into_algebra(opts)
}

pub fn parse_algebra_file(path: &Path, opts: LoadOptions) -> Result<Algebra, InputError> {
    parse_algebra_str(&read(path)?, opts)
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("plain data serializes")
}

pub fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TowerFile {
    Explicit { stages: Vec<Value>, maps: Vec<Vec<Vec<String>>> },
    Hecke { group: Vec<Vec<usize>>, chain: Vec<Vec<usize>> },
}

fn tower_error(e: TowerError) -> InputError {
    match e {
        TowerError::Algebra(a) => validation(a),
        other => InputError::Validation(other.to_string()),
    }
}

/// Parses a tower description; stage paths resolve relative to `base`.
pub fn parse_tower_str(text: &str, base: Option<&Path>, opts: LoadOptions) -> Result<DirectSystem, InputError> {
    let file: TowerFile = serde_json::from_str(text).map_err(from_json_error)?;
    match file {
        TowerFile::Hecke { group, chain } => {
            let n = group.len();
            let identity = (0..n)
                .find(|&e| group[e].iter().copied().eq(0..n))
                .ok_or_else(|| InputError::Validation("group table has no identity element".into()))?;
            let g = FiniteGroup::from_table(group, identity).map_err(validation)?;
            if n > opts.dim_cap {
                return Err(InputError::SizeCap { dim: n, cap: opts.dim_cap });
            }
            let subgroups = chain
                .iter()
                .map(|k| g.subgroup(k))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| InputError::Validation(e.to_string()))?;
            hecke_tower(&g, &subgroups).map_err(tower_error)
        }
        TowerFile::Explicit { stages, maps } => {
            let stages = stages
                .into_iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Value::String(p) => {
                        let path = base.map_or_else(|| PathBuf::from(&p), |b| b.join(&p));
                        parse_algebra_file(&path, opts)
                    }
                    other => serde_json::from_value::<AlgebraFile>(other)
                        .map_err(|e| parse_err(format!("stages[{i}]"), e.to_string()))?
                        .into_algebra(opts),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if maps.len() + 1 != stages.len() {
                return Err(parse_err("maps", format!("{} stages need {} maps", stages.len(), stages.len().saturating_sub(1))));
            }
            let homs = maps
                .into_iter()
                .enumerate()
                .map(|(m, rows)| {
                    let (src, dst) = (&stages[m], &stages[m + 1]);
                    if rows.len() != dst.dim() || rows.iter().any(|r| r.len() != src.dim()) {
                        return Err(parse_err(
                            format!("maps[{m}]"),
                            format!("expected a {}x{} matrix", dst.dim(), src.dim()),
                        ));
                    }
                    let dense = rows
                        .iter()
                        .enumerate()
                        .map(|(r, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(c, s)| rational_at(s, || format!("maps[{m}][{r}][{c}]")))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    AlgebraHom::new(src.clone(), dst.clone(), SparseMatrix::from_dense(&dense)).map_err(validation)
                })
                .collect::<Result<Vec<_>, _>>()?;
            DirectSystem::new(stages, homs).map_err(tower_error)
        }
    }
}

pub fn parse_tower_file(path: &Path, opts: LoadOptions) -> Result<DirectSystem, InputError> {
    parse_tower_str(&read(path)?, path.parent(), opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentList {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub components: Vec<TorusComponent>,
}

impl ComponentList {
    /// `n` when the list is labelled `GL(n)`.
    pub fn gl_rank(&self) -> Option<usize> {
        let l = self.label.as_deref()?.trim();
        l.strip_prefix("GL(")?.strip_suffix(')')?.trim().parse().ok()
    }
}

pub fn parse_components_str(text: &str) -> Result<ComponentList, InputError> {
    let list: ComponentList = serde_json::from_str(text).map_err(from_json_error)?;
    for c in &list.components {
        c.validate().map_err(|e: OrbifoldError| InputError::Validation(e.to_string()))?;
    }
    Ok(list)
}

pub fn parse_components_file(path: &Path) -> Result<ComponentList, InputError> {
    parse_components_str(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{"dim": 2, "basis": ["1", "x"], "unit": ["1", "0"],
        "table": [[[[0, "1"]], [[1, "1"]]], [[[1, "1"]], []]]}"#;

    #[test]
    fn dual_numbers_parse() {
        let a = parse_algebra_str(DUAL, LoadOptions::default()).unwrap();
        assert_eq!(a, Algebra::dual_numbers());
        let again = parse_algebra_str(&algebra_to_json(&a), LoadOptions::default()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn dangling_index_is_a_parse_error() {
        let bad = DUAL.replace("[[1, \"1\"]], []]]", "[[2, \"1\"]], []]]");
        match parse_algebra_str(&bad, LoadOptions::default()) {
            Err(InputError::Parse { position, .. }) => assert_eq!(position, "table[1][0][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_algebra_str("{\"dim\": 2,\n \"basis\": [", LoadOptions::default()) {
            Err(InputError::Parse { position, .. }) => assert!(position.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_associative_is_a_validation_error() {
        // x·x = 1 with x·1 = 2x: (x·x)·1 = 1 but x·(x·1) = 2
        let text = r#"{"dim": 2, "basis": ["1", "x"], "unit": null,
            "table": [[[[0, "1"]], [[1, "1"]]], [[[1, "2"]], [[0, "1"]]]]}"#;
        let err = parse_algebra_str(text, LoadOptions::default()).unwrap_err();
        assert!(matches!(err, InputError::Validation(ref m) if m.contains("(e")), "{err:?}");
        let opts = LoadOptions { validate: false, ..LoadOptions::default() };
        assert!(parse_algebra_str(text, opts).is_ok());
    }

    #[test]
    fn dim_cap() {
        let opts = LoadOptions { validate: true, dim_cap: 1 };
        assert_eq!(parse_algebra_str(DUAL, opts), Err(InputError::SizeCap { dim: 2, cap: 1 }));
    }

    #[test]
    fn hecke_tower_file() {
        let text = r#"{"group": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "chain": [[0,2],[0]]}"#;
        let ds = parse_tower_str(text, None, LoadOptions::default()).unwrap();
        assert_eq!(ds.stages().iter().map(Algebra::dim).collect::<Vec<_>>(), vec![2, 4]);
    }

    #[test]
    fn explicit_tower_file() {
        let text = format!(r#"{{"stages": [{DUAL}, {DUAL}], "maps": [[["1","0"],["0","1"]]]}}"#);
        let ds = parse_tower_str(&text, None, LoadOptions::default()).unwrap();
        assert_eq!(ds.len(), 2);
        let zero = format!(r#"{{"stages": [{DUAL}, {DUAL}], "maps": [[["0","0"],["0","0"]]]}}"#);
        assert!(matches!(parse_tower_str(&zero, None, LoadOptions::default()), Err(InputError::Validation(_))));
    }

    #[test]
    fn component_list() {
        let text = r#"{"label": "GL(2)", "components": [{"rank": 1, "generators": [[[-1]]], "label": "a"}]}"#;
        let list = parse_components_str(text).unwrap();
        assert_eq!(list.gl_rank(), Some(2));
        let bad = r#"{"components": [{"rank": 1, "generators": [[[2]]], "label": "a"}]}"#;
        assert!(matches!(parse_components_str(bad), Err(InputError::Validation(_))));
    }
}
