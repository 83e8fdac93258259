//! Sectioned key-value configuration for the engine.
//!
//! Grammar: `[section]` headers, `key = value` lines, `#` comments, lists
//! comma-separated, matrices as `/`-separated rows of comma-separated
//! integers. Sections: `[scalars]`, `[space]`, `[group]`, `[action]`,
//! `[cocycle]`, `[deformation]`, `[sweep]`. Every cross-reference is
//! validated at load; failures come back as diagnostics with line numbers.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::action::DeformFactor;
use crate::crossed::{parse_element, AlgebraRef, CrossedAlgebra};
use crate::group::{GroupSpec, TwoCocycle};
use crate::scalar::ScalarField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("configuration invalid:\n{}", .0.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Diagnostic>),
}

/// Raw factor line, resolved during build.
#[derive(Debug, Clone)]
pub struct FactorSpec {
    pub line: usize,
    pub g_exponents: Vec<i64>,
    /// 1-based coordinate pair as written.
    pub pair: (usize, usize),
    pub q_literal: String,
    pub s_literal: String,
}

/// Parsed configuration, structurally valid but not yet cross-checked
/// against the algebraic constraints (that happens in `build`).
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub root_order: u64,
    pub dim: usize,
    pub bounds: Vec<u32>,
    pub orders: Vec<u64>,
    pub action: Vec<Vec<i64>>,
    pub cocycle: CocycleSpec,
    pub factors: Vec<FactorSpec>,
    pub max_degree: u32,
}

#[derive(Debug, Clone)]
pub enum CocycleSpec {
    Trivial,
    Bicharacter(Vec<Vec<i64>>),
    /// Entries `g(..); g(..); scalar` with their line numbers.
    Table(Vec<(usize, String, String, String)>),
}

/// A fully built verification context.
#[derive(Debug)]
pub struct Engine {
    pub algebra: AlgebraRef,
    pub factors: Vec<Arc<DeformFactor>>,
    pub max_degree: u32,
}

pub fn parse_config(text: &str) -> Result<EngineConfig, ConfigError> {
    let mut diags = Vec::new();
    let mut section = String::new();
    let mut scalars: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut space: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut group: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut action: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut sweep: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut cocycle_kv: Vec<(usize, String, String)> = Vec::new();
    let mut factor_lines: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = name.trim().to_string();
            if !matches!(
                section.as_str(),
                "scalars" | "space" | "group" | "action" | "cocycle" | "deformation" | "sweep"
            ) {
                diags.push(Diagnostic {
                    line: line_no,
                    message: format!("unknown section [{section}]"),
                });
            }
            continue;
        }
        let Some(eq) = line.find('=') else {
            diags.push(Diagnostic {
                line: line_no,
                message: "expected `key = value`".into(),
            });
            continue;
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        match section.as_str() {
            "scalars" => {
                scalars.insert(key, (line_no, value));
            }
            "space" => {
                space.insert(key, (line_no, value));
            }
            "group" => {
                group.insert(key, (line_no, value));
            }
            "action" => {
                action.insert(key, (line_no, value));
            }
            "cocycle" => cocycle_kv.push((line_no, key, value)),
            "deformation" => {
                if key == "factor" {
                    factor_lines.push((line_no, value));
                } else {
                    diags.push(Diagnostic {
                        line: line_no,
                        message: format!("unknown key `{key}` in [deformation]"),
                    });
                }
            }
            "sweep" => {
                sweep.insert(key, (line_no, value));
            }
            _ => diags.push(Diagnostic {
                line: line_no,
                message: "key outside any section".into(),
            }),
        }
    }

    let root_order = match scalars.get("root_order") {
        Some((line, v)) => match v.parse::<u64>() {
            Ok(n) if n >= 1 => n,
            _ => {
                diags.push(Diagnostic {
                    line: *line,
                    message: "[scalars] root_order must be a positive integer".into(),
                });
                1
            }
        },
        None => {
            if let Some((line, v)) = scalars.get("mode") {
                if v == "generic" {
                    diags.push(Diagnostic {
                        line: *line,
                        message:
                            "[scalars] generic mode has no group action; crossed-product configs need root_order"
                                .into(),
                    });
                }
            } else {
                diags.push(Diagnostic {
                    line: 0,
                    message: "[scalars] root_order is required".into(),
                });
            }
            1
        }
    };

    let dim = match space.get("n") {
        Some((line, v)) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                diags.push(Diagnostic {
                    line: *line,
                    message: "[space] n must be a positive integer".into(),
                });
                1
            }
        },
        None => {
            diags.push(Diagnostic {
                line: 0,
                message: "[space] n is required".into(),
            });
            1
        }
    };

    let bounds = match space.get("bounds") {
        Some((line, v)) => {
            let parsed = parse_int_list(v);
            match parsed {
                Some(b) if b.len() == dim && b.iter().all(|&x| x >= 0) => {
                    b.into_iter().map(|x| x as u32).collect()
                }
                _ => {
                    diags.push(Diagnostic {
                        line: *line,
                        message: format!("[space] bounds must be {dim} nonnegative integers"),
                    });
                    vec![0; dim]
                }
            }
        }
        None => vec![0; dim],
    };

    let orders: Vec<u64> = match group.get("orders") {
        Some((line, v)) => match parse_int_list(v) {
            Some(xs) if xs.iter().all(|&x| x > 0) => xs.into_iter().map(|x| x as u64).collect(),
            _ => {
                diags.push(Diagnostic {
                    line: *line,
                    message: "[group] orders must be positive integers".into(),
                });
                Vec::new()
            }
        },
        None => Vec::new(),
    };

    let action_matrix: Vec<Vec<i64>> = match action.get("matrix") {
        Some((line, v)) => match parse_matrix(v) {
            Some(m) => m,
            None => {
                diags.push(Diagnostic {
                    line: *line,
                    message: "[action] matrix must be `/`-separated integer rows".into(),
                });
                Vec::new()
            }
        },
        None => {
            if !orders.is_empty() {
                diags.push(Diagnostic {
                    line: 0,
                    message: "[action] matrix is required for a nontrivial group".into(),
                });
            }
            Vec::new()
        }
    };

    let mut cocycle = CocycleSpec::Trivial;
    let mut table_entries = Vec::new();
    for (line, key, value) in &cocycle_kv {
        match key.as_str() {
            "trivial" => cocycle = CocycleSpec::Trivial,
            "bicharacter" => match parse_matrix(value) {
                Some(m) => cocycle = CocycleSpec::Bicharacter(m),
                None => diags.push(Diagnostic {
                    line: *line,
                    message: "[cocycle] bicharacter must be `/`-separated integer rows".into(),
                }),
            },
            "entry" => {
                let parts: Vec<&str> = value.split(';').map(|s| s.trim()).collect();
                if parts.len() != 3 {
                    diags.push(Diagnostic {
                        line: *line,
                        message: "[cocycle] entry must be `g(..); g(..); scalar`".into(),
                    });
                } else {
                    table_entries.push((
                        *line,
                        parts[0].to_string(),
                        parts[1].to_string(),
                        parts[2].to_string(),
                    ));
                }
            }
            other => diags.push(Diagnostic {
                line: *line,
                message: format!("unknown key `{other}` in [cocycle]"),
            }),
        }
    }
    if !table_entries.is_empty() {
        cocycle = CocycleSpec::Table(table_entries);
    }

    let mut factors = Vec::new();
    for (line, value) in &factor_lines {
        match parse_factor_line(value) {
            Ok(spec) => factors.push(FactorSpec {
                line: *line,
                ..spec
            }),
            Err(msg) => diags.push(Diagnostic {
                line: *line,
                message: msg,
            }),
        }
    }

    let max_degree = match sweep.get("max_degree") {
        Some((line, v)) => match v.parse::<u32>() {
            Ok(d) => d,
            Err(_) => {
                diags.push(Diagnostic {
                    line: *line,
                    message: "[sweep] max_degree must be a nonnegative integer".into(),
                });
                3
            }
        },
        None => 3,
    };

    if !diags.is_empty() {
        return Err(ConfigError::Invalid(diags));
    }
    Ok(EngineConfig {
        root_order,
        dim,
        bounds,
        orders,
        action: action_matrix,
        cocycle,
        factors,
        max_degree,
    })
}

fn parse_int_list(s: &str) -> Option<Vec<i64>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<i64>().ok())
        .collect()
}

fn parse_matrix(s: &str) -> Option<Vec<Vec<i64>>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split('/').map(|row| parse_int_list(row)).collect()
}

/// `g(<exponents>); pair=<i>,<j>; q=<scalar>; s=<element>`
fn parse_factor_line(value: &str) -> Result<FactorSpec, String> {
    let mut g_exponents = None;
    let mut pair = None;
    let mut q_literal = None;
    let mut s_literal = None;
    for part in value.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some(rest) = part.strip_prefix("g(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| "unterminated g(...)".to_string())?;
            g_exponents = Some(
                parse_int_list(inner).ok_or_else(|| "bad exponents in g(...)".to_string())?,
            );
        } else if let Some(rest) = part.strip_prefix("pair") {
            let rest = rest.trim_start().strip_prefix('=').ok_or("pair needs `=`")?;
            let xs = parse_int_list(rest).ok_or("bad pair")?;
            if xs.len() != 2 || xs[0] < 1 || xs[1] < 1 {
                return Err("pair must be two 1-based coordinates".into());
            }
            pair = Some((xs[0] as usize, xs[1] as usize));
        } else if let Some(rest) = part.strip_prefix("q") {
            let rest = rest.trim_start().strip_prefix('=').ok_or("q needs `=`")?;
            q_literal = Some(rest.trim().to_string());
        } else if let Some(rest) = part.strip_prefix("s") {
            let rest = rest.trim_start().strip_prefix('=').ok_or("s needs `=`")?;
            s_literal = Some(rest.trim().to_string());
        } else {
            return Err(format!("unrecognized factor fragment `{part}`"));
        }
    }
    Ok(FactorSpec {
        line: 0,
        g_exponents: g_exponents.ok_or("factor needs g(...)")?,
        pair: pair.ok_or("factor needs pair=i,j")?,
        q_literal: q_literal.ok_or("factor needs q=...")?,
        s_literal: s_literal.unwrap_or_else(|| "1".to_string()),
    })
}

impl EngineConfig {
    /// Cross-validates everything and produces the algebra and factors.
    pub fn build(&self) -> Result<Engine, ConfigError> {
        let mut diags = Vec::new();
        let field = ScalarField::cyclotomic(self.root_order);
        let group = match GroupSpec::new(
            self.orders.clone(),
            self.dim,
            self.action.clone(),
            field.clone(),
        ) {
            Ok(g) => g,
            Err(e) => {
                return Err(ConfigError::Invalid(vec![Diagnostic {
                    line: 0,
                    message: format!("[group]/[action]: {e}"),
                }]))
            }
        };
        let cocycle = match &self.cocycle {
            CocycleSpec::Trivial => TwoCocycle::trivial(&group),
            CocycleSpec::Bicharacter(m) => match TwoCocycle::bicharacter(&group, m.clone()) {
                Ok(c) => c,
                Err(e) => {
                    return Err(ConfigError::Invalid(vec![Diagnostic {
                        line: 0,
                        message: format!("[cocycle]: {e}"),
                    }]))
                }
            },
            CocycleSpec::Table(entries) => {
                let mut map = BTreeMap::new();
                // a temporary algebra for parsing group tags
                let tmp = CrossedAlgebra::free(group.clone(), TwoCocycle::trivial(&group));
                for (line, g_text, h_text, val_text) in entries {
                    let parse_tag = |t: &str| -> Result<_, String> {
                        let e = parse_element(&tmp, t).map_err(|e| e.to_string())?;
                        let mut terms = e.terms();
                        match (terms.next(), terms.next()) {
                            (Some(((m, g), c)), None) if m.is_one() && c.is_one() => {
                                Ok(g.clone())
                            }
                            _ => Err("expected a bare group tag g(...)".into()),
                        }
                    };
                    match (parse_tag(g_text), parse_tag(h_text), field.parse(val_text)) {
                        (Ok(g), Ok(h), Ok(v)) => {
                            map.insert((g, h), v);
                        }
                        (a, b, c) => {
                            let msg = a
                                .err()
                                .or(b.err())
                                .or(c.err().map(|e| e.to_string()))
                                .unwrap_or_default();
                            diags.push(Diagnostic {
                                line: *line,
                                message: format!("[cocycle] entry: {msg}"),
                            });
                        }
                    }
                }
                if !diags.is_empty() {
                    return Err(ConfigError::Invalid(diags));
                }
                match TwoCocycle::table(&group, map) {
                    Ok(c) => c,
                    Err(e) => {
                        return Err(ConfigError::Invalid(vec![Diagnostic {
                            line: 0,
                            message: format!("[cocycle]: {e}"),
                        }]))
                    }
                }
            }
        };
        let algebra = CrossedAlgebra::new(group, cocycle, self.bounds.clone());
        let mut factors = Vec::new();
        for spec in &self.factors {
            if spec.g_exponents.len() != algebra.group().generator_count() {
                diags.push(Diagnostic {
                    line: spec.line,
                    message: format!(
                        "factor g(...) has {} exponents, the group has {} generators",
                        spec.g_exponents.len(),
                        algebra.group().generator_count()
                    ),
                });
                continue;
            }
            if spec.pair.0 > self.dim || spec.pair.1 > self.dim {
                diags.push(Diagnostic {
                    line: spec.line,
                    message: format!("factor pair out of range 1..={}", self.dim),
                });
                continue;
            }
            let g = algebra.group().element(&spec.g_exponents);
            let q = match algebra.field().parse(&spec.q_literal) {
                Ok(q) => q,
                Err(e) => {
                    diags.push(Diagnostic {
                        line: spec.line,
                        message: format!("factor q: {e}"),
                    });
                    continue;
                }
            };
            let s = match parse_element(&algebra, &spec.s_literal) {
                Ok(s) => s,
                Err(e) => {
                    diags.push(Diagnostic {
                        line: spec.line,
                        message: format!("factor s: {e}"),
                    });
                    continue;
                }
            };
            match DeformFactor::new(&algebra, g, (spec.pair.0 - 1, spec.pair.1 - 1), q, s) {
                Ok(f) => factors.push(f),
                Err(e) => diags.push(Diagnostic {
                    line: spec.line,
                    message: format!("factor: {e}"),
                }),
            }
        }
        if !diags.is_empty() {
            return Err(ConfigError::Invalid(diags));
        }
        Ok(Engine {
            algebra,
            factors,
            max_degree: self.max_degree,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# adjacent-pair fixture, three coordinates, order two
[scalars]
root_order = 2
[space]
n = 3
[group]
orders = 2,2
[action]
matrix = 1,-1,0 / 0,1,-1
[cocycle]
bicharacter = 0,-1 / 0,0
[deformation]
factor = g(1,0); pair=1,2; q=z; s=1
factor = g(0,1); pair=2,3; q=z; s=1
factor = g(1,1); pair=3,1; q=z; s=1
[sweep]
max_degree = 3
";

    #[test]
    fn parses_and_builds_fixture() {
        let cfg = parse_config(EXAMPLE).unwrap();
        assert_eq!(cfg.root_order, 2);
        assert_eq!(cfg.dim, 3);
        assert_eq!(cfg.orders, vec![2, 2]);
        assert_eq!(cfg.max_degree, 3);
        let engine = cfg.build().unwrap();
        assert_eq!(engine.factors.len(), 3);
        assert_eq!(engine.algebra.group().order(), 4);
        // matches the built-in fixture
        let fx = crate::group::example51_fixture(3, 2);
        assert_eq!(*engine.algebra.group(), fx.group);
        assert_eq!(*engine.algebra.cocycle(), fx.cocycle);
    }

    #[test]
    fn bad_orders_are_reported_with_line() {
        let text = EXAMPLE.replace("orders = 2,2", "orders = 3,2");
        let cfg = parse_config(&text).unwrap();
        let err = cfg.build().unwrap_err();
        let ConfigError::Invalid(diags) = err;
        assert!(diags[0].message.contains("does not divide"));
    }

    #[test]
    fn invalid_semi_invariant_is_reported() {
        let text = EXAMPLE.replace(
            "factor = g(1,0); pair=1,2; q=z; s=1",
            "factor = g(1,0); pair=1,2; q=z; s=x3",
        );
        let cfg = parse_config(&text).unwrap();
        let err = cfg.build().unwrap_err();
        let ConfigError::Invalid(diags) = err;
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].line, 13);
        assert!(diags[0].message.contains("semi-invariant"), "{}", diags[0]);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let bad = "[scalars]\nroot_order = 2\nnonsense line\n";
        let err = parse_config(bad).unwrap_err();
        let ConfigError::Invalid(diags) = err;
        assert_eq!(diags[0].line, 3);
    }

    #[test]
    fn table_cocycle_roundtrip() {
        // the trivial table on Z/2
        let text = "\
[scalars]
root_order = 2
[space]
n = 2
[group]
orders = 2
[action]
matrix = 1,-1
[cocycle]
entry = g(0); g(0); 1
entry = g(0); g(1); 1
entry = g(1); g(0); 1
entry = g(1); g(1); 1
";
        let cfg = parse_config(text).unwrap();
        let engine = cfg.build().unwrap();
        assert!(matches!(engine.algebra.cocycle(), TwoCocycle::Table(_)));
    }

    #[test]
    fn perturbed_table_rejected_at_build() {
        let text = "\
[scalars]
root_order = 2
[space]
n = 2
[group]
orders = 2
[action]
matrix = 1,-1
[cocycle]
entry = g(0); g(0); 1
entry = g(0); g(1); -1
entry = g(1); g(0); 1
entry = g(1); g(1); 1
";
        let cfg = parse_config(text).unwrap();
        assert!(cfg.build().is_err());
    }

    #[test]
    fn weyl_config_with_empty_group() {
        let text = "\
[scalars]
root_order = 1
[space]
n = 2
[group]
orders =
[action]
matrix =
[deformation]
factor = g(); pair=1,2; q=1; s=1
[sweep]
max_degree = 4
";
        let cfg = parse_config(text).unwrap();
        let engine = cfg.build().unwrap();
        assert_eq!(engine.factors.len(), 1);
        assert_eq!(engine.algebra.group().order(), 1);
    }
}
