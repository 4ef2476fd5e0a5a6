//! Line-oriented problem files: variables, generators, a claim, a degree
//! bound, and run options.
//!
//! ```text
//! vars: a, as, ad, ads, b
//! order: deglex
//! modorder: dopot
//! gen: a*b - 1
//! gen: b*a - 1
//! claim: b - ad
//! bound: 8
//! ```
//!
//! `#` starts a comment; blank lines are skipped. Optional keys: `weights`
//! (`uniform` or `degree`), `prune` (`on`/`off`), `seed` (integer),
//! `time_budget` (seconds).

use thiserror::Error;

use crate::bimodule::{BimoduleError, GeneratorSystem};
use crate::poly::{parse_poly, NcPoly, PolyError, VariableTable};
use crate::sparsify::WeightMode;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}, col {col}: {msg}")]
    Poly { line: usize, col: usize, msg: String },
}

impl ProblemError {
    pub fn line(&self) -> usize {
        match self {
            ProblemError::Malformed { line, .. } => *line,
            ProblemError::Poly { line, .. } => *line,
        }
    }

    pub fn col(&self) -> usize {
        match self {
            ProblemError::Malformed { .. } => 1,
            ProblemError::Poly { col, .. } => *col,
        }
    }
}

/// A parsed problem file.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub vars: VariableTable,
    pub gens: Vec<NcPoly>,
    pub claim: NcPoly,
    pub bound: usize,
    pub weights: WeightMode,
    pub prune: bool,
    pub seed: u64,
    pub time_budget_secs: Option<u64>,
}

impl ProblemFile {
    pub fn system(&self) -> Result<GeneratorSystem, BimoduleError> {
        GeneratorSystem::new(self.vars.clone(), self.gens.clone())
    }
}

fn poly_err(e: PolyError, line: usize, value_col: usize) -> ProblemError {
    match e {
        PolyError::Syntax { col, msg, .. } => ProblemError::Poly {
            line,
            col: value_col + col - 1,
            msg,
        },
        PolyError::UnknownVariable { name, col, .. } => ProblemError::Poly {
            line,
            col: value_col + col - 1,
            msg: format!("unknown variable `{name}`"),
        },
        other => ProblemError::Malformed { line, msg: other.to_string() },
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut vars: Option<VariableTable> = None;
    let mut vars_line = 0usize;
    let mut gen_texts: Vec<(usize, usize, String)> = Vec::new();
    let mut claim_text: Option<(usize, usize, String)> = None;
    let mut bound: Option<usize> = None;
    let mut weights = WeightMode::Uniform;
    let mut prune = true;
    let mut seed = 0u64;
    let mut time_budget_secs = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return Err(ProblemError::Malformed {
                line: line_no,
                msg: "expected `key: value`".into(),
            });
        };
        let key = line[..colon].trim();
        let value = line[colon + 1..].trim();
        let value_col = colon + 2 + line[colon + 1..].len() - line[colon + 1..].trim_start().len();
        match key {
            "vars" => {
                let names: Vec<&str> = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                let table = VariableTable::new(names).map_err(|e| ProblemError::Malformed {
                    line: line_no,
                    msg: e.to_string(),
                })?;
                vars = Some(table);
                vars_line = line_no;
            }
            "order" => {
                if value != "deglex" {
                    return Err(ProblemError::Malformed {
                        line: line_no,
                        msg: format!("unsupported monomial order `{value}` (only deglex)"),
                    });
                }
            }
            "modorder" => {
                if value != "dopot" {
                    return Err(ProblemError::Malformed {
                        line: line_no,
                        msg: format!("unsupported module order `{value}` (only dopot)"),
                    });
                }
            }
            "gen" => gen_texts.push((line_no, value_col, value.to_string())),
            "claim" => claim_text = Some((line_no, value_col, value.to_string())),
            "bound" => {
                let n: usize = value.parse().map_err(|_| ProblemError::Malformed {
                    line: line_no,
                    msg: format!("bound must be a positive integer, got `{value}`"),
                })?;
                if n < 1 {
                    return Err(ProblemError::Malformed {
                        line: line_no,
                        msg: "bound must be at least 1".into(),
                    });
                }
                bound = Some(n);
            }
            "weights" => {
                weights = match value {
                    "uniform" => WeightMode::Uniform,
                    "degree" => WeightMode::Degree,
                    other => {
                        return Err(ProblemError::Malformed {
                            line: line_no,
                            msg: format!("weights must be uniform or degree, got `{other}`"),
                        })
                    }
                };
            }
            "prune" => {
                prune = match value {
                    "on" | "true" | "1" => true,
                    "off" | "false" | "0" => false,
                    other => {
                        return Err(ProblemError::Malformed {
                            line: line_no,
                            msg: format!("prune must be on or off, got `{other}`"),
                        })
                    }
                };
            }
            "seed" => {
                seed = value.parse().map_err(|_| ProblemError::Malformed {
                    line: line_no,
                    msg: format!("seed must be an integer, got `{value}`"),
                })?;
            }
            "time_budget" => {
                let secs: u64 = value.parse().map_err(|_| ProblemError::Malformed {
                    line: line_no,
                    msg: format!("time_budget must be seconds, got `{value}`"),
                })?;
                time_budget_secs = Some(secs);
            }
            other => {
                return Err(ProblemError::Malformed {
                    line: line_no,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }

    let vars = vars.ok_or(ProblemError::Malformed { line: 1, msg: "missing `vars:`".into() })?;
    if gen_texts.is_empty() {
        return Err(ProblemError::Malformed {
            line: vars_line,
            msg: "at least one `gen:` line is required".into(),
        });
    }
    let mut gens = Vec::with_capacity(gen_texts.len());
    for (line, col, text) in &gen_texts {
        let g = parse_poly(text, &vars).map_err(|e| poly_err(e, *line, *col))?;
        if g.is_zero() {
            return Err(ProblemError::Malformed {
                line: *line,
                msg: "generator is zero".into(),
            });
        }
        gens.push(g);
    }
    let (claim_line, claim_col, claim_text) = claim_text.ok_or(ProblemError::Malformed {
        line: vars_line,
        msg: "missing `claim:`".into(),
    })?;
    let claim =
        parse_poly(&claim_text, &vars).map_err(|e| poly_err(e, claim_line, claim_col))?;
    let bound = bound.ok_or(ProblemError::Malformed {
        line: vars_line,
        msg: "missing `bound:`".into(),
    })?;
    Ok(ProblemFile {
        vars,
        gens,
        claim,
        bound,
        weights,
        prune,
        seed,
        time_budget_secs,
    })
}
