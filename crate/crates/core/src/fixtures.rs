//! Fixture corpus: named descriptors, the corner embedding `M_2 -> M_3`, and
//! a few matrices that hit specific witness cases.

use std::fs;
use std::path::{Path, PathBuf};

use crate::densela::ComplexMatrix;
use crate::error::{Error, Result};
use crate::io;
use crate::recovery::LinearMapTable;
use crate::seqdesc::{validate, ProductDescriptor};

/// Descriptors with known classifications.
pub fn named_descriptors() -> Vec<(&'static str, ProductDescriptor)> {
    let v = |k, seq: &[usize]| validate(k, seq).expect("fixture descriptors are valid");
    vec![
        ("usual_product", v(2, &[1, 2])),
        ("jordan_semi_triple", v(2, &[2, 1, 2])),
        ("sandwich_r2_s1", ProductDescriptor::sandwich(2, 1)),
        ("semi_jordan_k3", v(3, &[2, 3, 3, 1, 3, 3, 2])),
        ("quasi_semi_jordan_k3", v(3, &[2, 3, 3, 1, 3, 3, 2, 2, 3, 3, 3, 2])),
        ("not_quasi_k3", v(3, &[1, 2, 3, 2, 2])),
    ]
}

/// `A -> A ⊕ 0` from `M_2` into `M_3`. It preserves every peripheral
/// spectrum of products yet is not of standard form, because it is not
/// surjective.
pub fn corner_embedding() -> LinearMapTable {
    LinearMapTable::corner_embedding(2, 3).expect("2 <= 3")
}

/// Matrices exercising each branch of the witness construction.
pub fn named_matrices() -> Vec<(&'static str, ComplexMatrix)> {
    let mut four_dim = ComplexMatrix::zeros(4);
    four_dim[(2, 0)] = 1.0.into();
    four_dim[(3, 1)] = 1.0.into();
    vec![
        ("swap", ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])),
        ("projection_rank2", ComplexMatrix::real_diag(&[1.0, 1.0, 0.0])),
        ("shift_pair", four_dim),
        ("rank_one", ComplexMatrix::from_real_rows(&[&[1.0, -1.0], &[1.0, -1.0]])),
    ]
}

/// Writes every fixture as `<name>.json` under `dir`, creating it if needed.
/// Descriptors go to `descriptors/`, matrices to `matrices/`, maps to
/// `maps/`. Returns the written paths in a fixed order.
pub fn write_all(dir: &Path) -> Result<Vec<PathBuf>> {
    let mkdir = |p: &Path| fs::create_dir_all(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
    let mut out = Vec::new();
    let ddir = dir.join("descriptors");
    mkdir(&ddir)?;
    for (name, d) in named_descriptors() {
        let path = ddir.join(format!("{name}.json"));
        io::write_json(&path, &d.to_json())?;
        out.push(path);
    }
    let mdir = dir.join("matrices");
    mkdir(&mdir)?;
    for (name, m) in named_matrices() {
        let path = mdir.join(format!("{name}.json"));
        io::write_json(&path, &m)?;
        out.push(path);
    }
    let pdir = dir.join("maps");
    mkdir(&pdir)?;
    let path = pdir.join("corner_embedding_2_3.json");
    io::write_json(&path, &corner_embedding())?;
    out.push(path);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifications_are_as_named() {
        for (name, d) in named_descriptors() {
            let c = d.classify();
            match name {
                "not_quasi_k3" => assert!(!c.is_quasi_semi_jordan),
                "quasi_semi_jordan_k3" | "sandwich_r2_s1" | "usual_product" => {
                    assert!(c.is_quasi_semi_jordan && !c.is_semi_jordan)
                }
                _ => assert!(c.is_semi_jordan, "{name}"),
            }
        }
    }
}
