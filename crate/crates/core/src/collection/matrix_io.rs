//! Binary persistence of [`PairwiseMatrix`].
//!
//! Layout (little-endian): magic `LTPM`, `u32` version, `u64` rows, `u64`
//! cols, one kind byte, then `rows * cols` row-major `f64`s. Ids and the
//! kernel bandwidth go to a JSON sidecar next to the binary file.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{MatrixKind, PairwiseMatrix};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"LTPM";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8 + 8 + 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSidecar {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    pub kind: MatrixKind,
    pub sigma: Option<f64>,
}

/// `<path>.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn write_matrix(path: &Path, matrix: &PairwiseMatrix, sigma: Option<f64>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&VERSION.to_le_bytes());
    header.extend_from_slice(&(matrix.rows() as u64).to_le_bytes());
    header.extend_from_slice(&(matrix.cols() as u64).to_le_bytes());
    header.push(matrix.kind.code());
    let write = |out: &mut BufWriter<fs::File>| -> std::io::Result<()> {
        out.write_all(&header)?;
        for v in &matrix.values {
            out.write_all(&v.to_le_bytes())?;
        }
        out.flush()
    };
    write(&mut out).map_err(|e| Error::io(path, e))?;

    let sidecar = MatrixSidecar {
        row_ids: matrix.row_ids.clone(),
        col_ids: matrix.col_ids.clone(),
        kind: matrix.kind,
        sigma,
    };
    let side = sidecar_path(path);
    let json = serde_json::to_vec_pretty(&sidecar).expect("sidecar serializes");
    fs::write(&side, json).map_err(|e| Error::io(&side, e))
}

/// Reads a matrix and its sidecar; returns the stored bandwidth alongside.
pub fn read_matrix(path: &Path) -> Result<(PairwiseMatrix, Option<f64>)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(Error::MatrixFormat("missing LTPM header".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(Error::MatrixFormat(format!("unsupported version {version}")));
    }
    let (rows, cols) = (u64_at(8) as usize, u64_at(16) as usize);
    let kind = MatrixKind::from_code(bytes[24])
        .ok_or_else(|| Error::MatrixFormat(format!("unknown kind byte {}", bytes[24])))?;
    let body = &bytes[HEADER_LEN..];
    let expected = rows.checked_mul(cols).and_then(|n| n.checked_mul(8));
    if expected != Some(body.len()) {
        return Err(Error::MatrixFormat(format!(
            "{rows}x{cols} header but {} payload bytes",
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();

    let side = sidecar_path(path);
    let text = fs::read(&side).map_err(|e| Error::io(&side, e))?;
    let sidecar: MatrixSidecar =
        serde_json::from_slice(&text).map_err(|e| Error::MatrixFormat(format!("sidecar: {e}")))?;
    if sidecar.row_ids.len() != rows || sidecar.col_ids.len() != cols || sidecar.kind != kind {
        return Err(Error::MatrixFormat("sidecar does not describe the binary file".into()));
    }
    let matrix = PairwiseMatrix::new(sidecar.row_ids, sidecar.col_ids, values, kind)?;
    Ok((matrix, sidecar.sigma))
}
