//! Versioned JSON documents for character tables and irreps. Complex numbers
//! are written as `[re, im]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::CMatrix;
use crate::repr::{CharacterTable, Irrep};

pub const CHARACTERS_SCHEMA: &str = "classop-characters/1";
pub const IRREPS_SCHEMA: &str = "classop-irreps/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub base: String,
    pub size: usize,
    pub centralizer_order: usize,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTableDoc {
    pub schema: String,
    pub group: String,
    pub order: usize,
    pub classes: Vec<ClassEntry>,
    pub dims: Vec<usize>,
    /// `rows[alpha][class]`
    pub rows: Vec<Vec<Complex64>>,
}

impl CharacterTableDoc {
    pub fn new(group: &FiniteGroup, table: &CharacterTable) -> Self {
        let classes = table
            .classes
            .iter()
            .map(|c| ClassEntry {
                base: group.label(c.base).to_string(),
                size: c.size(),
                centralizer_order: c.centralizer_order(),
                members: c.members.iter().map(|&g| group.label(g).to_string()).collect(),
            })
            .collect();
        CharacterTableDoc {
            schema: CHARACTERS_SCHEMA.into(),
            group: group.name(),
            order: group.order(),
            classes,
            dims: table.dims.clone(),
            rows: table.rows.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        check_schema(&doc.schema, CHARACTERS_SCHEMA)?;
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepEntry {
    pub alpha: usize,
    pub dim: usize,
    /// `matrices[g][row][col]`, elements in label order.
    pub matrices: Vec<Vec<Vec<Complex64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepsDoc {
    pub schema: String,
    pub group: String,
    pub elements: Vec<String>,
    pub irreps: Vec<IrrepEntry>,
}

impl IrrepsDoc {
    pub fn new(group: &FiniteGroup, irreps: &[Irrep]) -> Self {
        IrrepsDoc {
            schema: IRREPS_SCHEMA.into(),
            group: group.name(),
            elements: group.labels().to_vec(),
            irreps: irreps
                .iter()
                .map(|r| IrrepEntry { alpha: r.alpha, dim: r.dim, matrices: r.matrices.iter().map(rows_of).collect() })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        check_schema(&doc.schema, IRREPS_SCHEMA)?;
        Ok(doc)
    }

    pub fn to_irreps(&self) -> Result<Vec<Irrep>> {
        self.irreps
            .iter()
            .map(|e| {
                let matrices = e
                    .matrices
                    .iter()
                    .map(|rows| {
                        if rows.len() != e.dim || rows.iter().any(|r| r.len() != e.dim) {
                            return Err(Error::SizeMismatch { expected: e.dim, got: rows.len() });
                        }
                        Ok(CMatrix::from_fn(e.dim, e.dim, |i, j| rows[i][j]))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Irrep { alpha: e.alpha, dim: e.dim, matrices })
            })
            .collect()
    }
}

fn rows_of(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Schema { found: found.into(), expected: expected.into() });
    }
    Ok(())
}
