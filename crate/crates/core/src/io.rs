//! JSON documents for biquaternion and complex matrices.

use serde::{Deserialize, Serialize};

use crate::complex_linalg::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::matrix::BqMatrix;
use crate::scalar::Biquaternion;

/// `{"rows", "cols", "entries"}` with each entry `[[re, im]; 4]`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[[f64; 2]; 4]>,
}

impl MatrixDocument {
    pub fn from_matrix(a: &BqMatrix) -> Self {
        let entries = a
            .entries()
            .iter()
            .map(|q| q.components().map(|z| [z.re, z.im]))
            .collect();
        MatrixDocument {
            rows: a.rows(),
            cols: a.cols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<BqMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| Biquaternion::try_new(c(e[0]), c(e[1]), c(e[2]), c(e[3])))
            .collect::<Result<Vec<_>>>()?;
        BqMatrix::new(self.rows, self.cols, entries)
    }
}

/// `{"rows", "cols", "entries"}` with each entry `[re, im]`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl ComplexMatrixDocument {
    pub fn from_matrix(m: &CMatrix) -> Self {
        ComplexMatrixDocument {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        CMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|&e| c(e)).collect(),
        )
    }
}

fn c(e: [f64; 2]) -> C64 {
    C64::new(e[0], e[1])
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_matrix(text: &str) -> Result<BqMatrix> {
    serde_json::from_str::<MatrixDocument>(text)
        .map_err(parse_err)?
        .to_matrix()
}

pub fn parse_complex_matrix(text: &str) -> Result<CMatrix> {
    serde_json::from_str::<ComplexMatrixDocument>(text)
        .map_err(parse_err)?
        .to_matrix()
}

// One entry per line; serde_json prints the shortest round-tripping decimal.
fn layout<T: Serialize>(rows: usize, cols: usize, entries: &[T]) -> String {
    let lines: Vec<String> = entries
        .iter()
        .map(|e| {
            format!(
                "    {}",
                serde_json::to_string(e).expect("plain data serializes")
            )
        })
        .collect();
    let body = if lines.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n{}\n  ]", lines.join(",\n"))
    };
    format!("{{\n  \"rows\": {rows},\n  \"cols\": {cols},\n  \"entries\": {body}\n}}")
}

pub fn write_matrix(a: &BqMatrix) -> String {
    let doc = MatrixDocument::from_matrix(a);
    layout(doc.rows, doc.cols, &doc.entries)
}

pub fn write_complex_matrix(m: &CMatrix) -> String {
    let doc = ComplexMatrixDocument::from_matrix(m);
    layout(doc.rows, doc.cols, &doc.entries)
}
