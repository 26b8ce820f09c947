//! JSON codecs for the on-disk formats.
//!
//! - descriptor: `{"k": int, "seq": [int, ...]}`
//! - matrix: `{"n": int, "data": [[re, im], ...]}`, row-major
//! - operand list: `[matrix, ...]`
//! - map: `{"n_in": int, "n_out": int, "images": [matrix, ...]}`, images of
//!   `E_ij` ordered by `(i, j)`
//!
//! Complex numbers are always `[re, im]`. The transpose used by the
//! transpose-similarity forms is the plain transpose `A^t`; the adjoint used
//! by skew products and unitary forms is the conjugate transpose `A^*`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::densela::ComplexMatrix;
use crate::error::{Error, Result};
use crate::recovery::LinearMapTable;
use crate::seqdesc::{DescriptorJson, ProductDescriptor};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse(&read_text(path)?)
}

pub fn parse_descriptor(text: &str) -> Result<ProductDescriptor> {
    ProductDescriptor::from_json(&parse::<DescriptorJson>(text)?)
}

pub fn read_descriptor(path: &Path) -> Result<ProductDescriptor> {
    parse_descriptor(&read_text(path)?)
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let json = read_json(path)?;
    ComplexMatrix::from_json(&json)
}

pub fn read_operands(path: &Path) -> Result<Vec<ComplexMatrix>> {
    let raw: Vec<crate::densela::MatrixJson> = read_json(path)?;
    raw.iter().map(ComplexMatrix::from_json).collect()
}

pub fn read_map(path: &Path) -> Result<LinearMapTable> {
    #[derive(serde::Deserialize)]
    struct Raw {
        n_in: usize,
        n_out: usize,
        images: Vec<crate::densela::MatrixJson>,
    }
    let raw: Raw = read_json(path)?;
    let images = raw.images.iter().map(ComplexMatrix::from_json).collect::<Result<Vec<_>>>()?;
    LinearMapTable::new(raw.n_in, raw.n_out, images)
}

/// Compact single-line JSON.
pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

/// Indented JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_pretty(value)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::MatrixJson;

    #[test]
    fn descriptor_errors_keep_their_kind() {
        assert_eq!(parse_descriptor(r#"{"k":2,"seq":[1,2,1,2]}"#).unwrap_err().kind(), "NoUniqueOccurrence");
        assert_eq!(parse_descriptor(r#"{"k":2,"seq":[1,"#).unwrap_err().kind(), "parse");
        assert_eq!(parse_descriptor(r#"{"k":2,"seq":[2,1,2]}"#).unwrap().p_one_based(), 2);
    }

    #[test]
    fn matrix_json_shape() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -2.5]]);
        assert_eq!(to_line(&m), r#"{"n":2,"data":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[-2.5,0.0]]}"#);
        let short: MatrixJson = parse(r#"{"n":2,"data":[[1,0]]}"#).unwrap();
        assert!(matches!(ComplexMatrix::from_json(&short), Err(Error::DimensionMismatch(_))));
    }
}
