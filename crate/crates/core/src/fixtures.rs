//! Fixture files and the algebra spec mini-language.
//!
//! Specs name constructible algebras without a parser worth the name:
//!
//! - `ga:p:n`     — the group algebra `F_p[G(n)]`
//! - `q8:p`       — `F_p[Q_8]`
//! - `mat:p:k`    — `M_k(F_p)`
//! - `file:path`  — an algebra definition file (JSON, below)
//! - `prod:s,s`   — direct product of the listed specs (no nesting)
//!
//! File formats, all JSON with decimal integers:
//!
//! - group table: `{"name", "order", "table": [[int]]}`, row-major,
//!   0-indexed, element 0 the identity;
//! - algebra: `{"p", "dim", "labels", "one": [int], "table": [[[int]]]}`
//!   with `table[i][j]` the coefficient vector of `e_i e_j`;
//! - polynomial: `{"degree", "terms": [{"perm": [int], "coeff": int}]}`,
//!   permutations 1-based.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{custom_algebra, group_algebra, matrix_algebra, product_algebra, Algebra};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::{make_from_table, make_heisenberg, make_quaternion8, FiniteGroup, GroupParams};
use crate::pi::MultilinearPolynomial;

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupTableFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub p: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub one: Vec<u32>,
    pub table: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub degree: usize,
    pub terms: Vec<PolynomialTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub perm: Vec<usize>,
    pub coeff: i64,
}

/// Loads a group from its fixture file and verifies the table.
pub fn load_group_table(path: &Path) -> Result<FiniteGroup> {
    let raw = std::fs::read_to_string(path)?;
    let file: GroupTableFile = serde_json::from_str(&raw)?;
    if file.table.len() != file.order {
        return Err(Error::InvalidInput(format!(
            "{}: declared order {} but table has {} rows",
            path.display(),
            file.order,
            file.table.len()
        )));
    }
    make_from_table(&file.name, &file.table)
}

/// Loads a custom algebra definition and verifies identity and
/// associativity.
pub fn load_algebra_file(path: &Path) -> Result<Algebra> {
    let raw = std::fs::read_to_string(path)?;
    let file: AlgebraFile = serde_json::from_str(&raw)?;
    if file.table.len() != file.dim {
        return Err(Error::InvalidInput(format!(
            "{}: declared dim {} but table has {} rows",
            path.display(),
            file.dim,
            file.table.len()
        )));
    }
    let field = PrimeField::new(file.p)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".into());
    custom_algebra(&name, field, file.labels, file.one, &file.table)
}

/// Loads a multilinear polynomial; an identity candidate must carry 1 among
/// its coefficients.
pub fn load_polynomial(path: &Path) -> Result<MultilinearPolynomial> {
    let raw = std::fs::read_to_string(path)?;
    let file: PolynomialFile = serde_json::from_str(&raw)?;
    let terms = file
        .terms
        .into_iter()
        .map(|t| {
            let perm = t
                .perm
                .iter()
                .map(|&v| {
                    if v >= 1 && v <= file.degree {
                        Ok((v - 1) as u8)
                    } else {
                        Err(Error::InvalidInput(format!(
                            "permutation entry {v} outside 1..={}",
                            file.degree
                        )))
                    }
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok((perm, t.coeff))
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = MultilinearPolynomial::new(file.degree, terms)?;
    if !poly.has_unit_coefficient() {
        return Err(Error::InvalidInput(format!(
            "{}: a polynomial identity candidate needs 1 among its coefficients",
            path.display()
        )));
    }
    Ok(poly)
}

fn parse_u32(part: Option<&str>, what: &str, spec: &str) -> Result<u32> {
    part.ok_or_else(|| Error::InvalidInput(format!("spec '{spec}' is missing {what}")))?
        .parse()
        .map_err(|_| Error::InvalidInput(format!("spec '{spec}': {what} is not an integer")))
}

/// Resolves an algebra spec string to a constructed, verified algebra.
pub fn parse_algebra_spec(spec: &str) -> Result<Arc<Algebra>> {
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("unknown algebra spec '{spec}'")))?;
    match head {
        "ga" => {
            let mut parts = rest.split(':');
            let p = parse_u32(parts.next(), "p", spec)?;
            let n = parse_u32(parts.next(), "n", spec)?;
            let field = PrimeField::new(p)?;
            let group = make_heisenberg(GroupParams::new(p, n)?)?;
            Ok(Arc::new(group_algebra(field, Arc::new(group))?))
        }
        "q8" => {
            let p = parse_u32(Some(rest), "p", spec)?;
            let field = PrimeField::new(p)?;
            Ok(Arc::new(group_algebra(field, Arc::new(make_quaternion8()))?))
        }
        "mat" => {
            let mut parts = rest.split(':');
            let p = parse_u32(parts.next(), "p", spec)?;
            let k = parse_u32(parts.next(), "k", spec)?;
            let field = PrimeField::new(p)?;
            Ok(Arc::new(matrix_algebra(field, k as usize)?))
        }
        "file" => Ok(Arc::new(load_algebra_file(Path::new(rest))?)),
        "prod" => {
            if rest.contains("prod:") {
                return Err(Error::InvalidInput(
                    "nested product specs are not supported".into(),
                ));
            }
            let factors = rest
                .split(',')
                .map(|s| parse_algebra_spec(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arc::new(product_algebra(factors)?))
        }
        _ => Err(Error::InvalidInput(format!(
            "unknown algebra spec '{spec}' (expected ga:/q8:/mat:/file:/prod:)"
        ))),
    }
}
