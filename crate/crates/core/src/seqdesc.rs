//! Generalized-product descriptors.
//!
//! A descriptor is a slot count `k` together with an index sequence
//! `(i_1, ..., i_m)` over `{1, ..., k}` that uses every slot and contains at
//! least one slot occurring exactly once. That slot's position is the
//! distinguished position `p`. Sequences are 1-based at the API and JSON
//! boundary; internally `p` is stored 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated generalized-product descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductDescriptor {
    k: usize,
    seq: Vec<usize>,
    p: usize,
}

/// Classification of a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqClass {
    pub is_semi_jordan: bool,
    pub is_quasi_semi_jordan: bool,
    pub width: usize,
}

/// Wire form of a descriptor: `{"k": int, "seq": [int, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub k: i64,
    pub seq: Vec<i64>,
}

/// Wire form of a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub width: usize,
    pub p: usize,
    pub semi_jordan: bool,
    pub quasi_semi_jordan: bool,
}

impl ProductDescriptor {
    /// Validates `seq` (1-based slot labels) against `k` slots.
    ///
    /// When several slots occur exactly once, the distinguished position is
    /// the one holding the smallest such slot.
    pub fn validate(k: usize, seq: &[usize]) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDescriptor("k must be at least 1".into()));
        }
        if seq.is_empty() {
            return Err(Error::InvalidDescriptor("sequence must be nonempty".into()));
        }
        let mut counts = vec![0usize; k + 1];
        for &v in seq {
            if v == 0 || v > k {
                return Err(Error::OutOfRange { value: v as i64, k });
            }
            counts[v] += 1;
        }
        if let Some(missing) = (1..=k).find(|&v| counts[v] == 0) {
            return Err(Error::MissingIndex(missing));
        }
        let unique = (1..=k)
            .find(|&v| counts[v] == 1)
            .ok_or(Error::NoUniqueOccurrence)?;
        let p = seq.iter().position(|&v| v == unique).expect("slot counted once");
        Ok(Self { k, seq: seq.to_vec(), p })
    }

    /// Parses and validates the wire form.
    pub fn from_json(json: &DescriptorJson) -> Result<Self> {
        if json.k < 1 {
            return Err(Error::InvalidDescriptor("k must be at least 1".into()));
        }
        let k = json.k as usize;
        let mut seq = Vec::with_capacity(json.seq.len());
        for &v in &json.seq {
            if v < 1 || v as u64 > k as u64 {
                return Err(Error::OutOfRange { value: v, k });
            }
            seq.push(v as usize);
        }
        Self::validate(k, &seq)
    }

    pub fn to_json(&self) -> DescriptorJson {
        DescriptorJson {
            k: self.k as i64,
            seq: self.seq.iter().map(|&v| v as i64).collect(),
        }
    }

    /// The product `B^r A B^s`, with `A` in slot 1 and `B` in slot 2.
    pub fn sandwich(r: usize, s: usize) -> Self {
        let mut seq = vec![2; r];
        seq.push(1);
        seq.extend(std::iter::repeat_n(2, s));
        let k = if r + s == 0 { 1 } else { 2 };
        Self::validate(k, &seq).expect("sandwich descriptor is valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Slot labels, 1-based.
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Distinguished position, 0-based.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Distinguished position, 1-based.
    pub fn p_one_based(&self) -> usize {
        self.p + 1
    }

    pub fn width(&self) -> usize {
        self.seq.len()
    }

    /// The slots after `p` followed by the slots before `p`.
    pub fn rotated_tail(&self) -> Vec<usize> {
        self.seq[self.p + 1..]
            .iter()
            .chain(&self.seq[..self.p])
            .copied()
            .collect()
    }

    pub fn is_semi_jordan(&self) -> bool {
        let m = self.seq.len();
        if 2 * self.p + 1 != m {
            return false;
        }
        (1..=self.p).all(|j| self.seq[self.p - j] == self.seq[self.p + j])
    }

    pub fn is_quasi_semi_jordan(&self) -> bool {
        let tail = self.rotated_tail();
        tail.iter().eq(tail.iter().rev())
    }

    pub fn classify(&self) -> SeqClass {
        SeqClass {
            is_semi_jordan: self.is_semi_jordan(),
            is_quasi_semi_jordan: self.is_quasi_semi_jordan(),
            width: self.width(),
        }
    }

    pub fn classification_json(&self) -> ClassificationJson {
        let c = self.classify();
        ClassificationJson {
            width: c.width,
            p: self.p_one_based(),
            semi_jordan: c.is_semi_jordan,
            quasi_semi_jordan: c.is_quasi_semi_jordan,
        }
    }
}

/// Free-function form of [`ProductDescriptor::validate`].
pub fn validate(k: usize, seq: &[usize]) -> Result<ProductDescriptor> {
    ProductDescriptor::validate(k, seq)
}

/// Free-function form of [`ProductDescriptor::classify`].
pub fn classify(d: &ProductDescriptor) -> SeqClass {
    d.classify()
}

/// Every valid descriptor with `k <= max_k` slots and width `<= max_m`,
/// in lexicographic order of `(k, m, seq)`.
pub fn enumerate(max_k: usize, max_m: usize) -> Vec<ProductDescriptor> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for m in 1..=max_m {
            let mut seq = vec![1usize; m];
            loop {
                if let Ok(d) = ProductDescriptor::validate(k, &seq) {
                    out.push(d);
                }
                if !advance(&mut seq, k) {
                    break;
                }
            }
        }
    }
    out
}

// Odometer step over {1..=k}^m, last position fastest.
fn advance(seq: &mut [usize], k: usize) -> bool {
    for i in (0..seq.len()).rev() {
        if seq[i] < k {
            seq[i] += 1;
            seq[i + 1..].iter_mut().for_each(|v| *v = 1);
            return true;
        }
    }
    false
}
