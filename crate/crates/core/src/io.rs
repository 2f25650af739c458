//! File formats.
//!
//! - Truth table (JSON): `{"n": 3, "bits_hex": "01"}`; entry `i` is bit
//!   `i % 8` of byte `i / 8`, bytes hex-encoded in order.
//! - Joint table (CSV): `y_index,p0_num,p0_den,p1_num,p1_den`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::boolfn::{TruthTable, MAX_N};
use crate::channel::JointYZ;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableFile {
    pub n: u32,
    pub bits_hex: String,
}

impl From<&TruthTable> for TruthTableFile {
    fn from(t: &TruthTable) -> Self {
        let nbytes = t.len().div_ceil(8);
        let bytes: Vec<u8> = t
            .words()
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect();
        TruthTableFile {
            n: t.n(),
            bits_hex: hex::encode(bytes),
        }
    }
}

impl TryFrom<&TruthTableFile> for TruthTable {
    type Error = Error;

    fn try_from(file: &TruthTableFile) -> Result<Self> {
        let n = file.n;
        if n == 0 || n > MAX_N {
            return Err(Error::Range(format!("dimension {n} outside 1..={MAX_N}")));
        }
        let bytes = hex::decode(file.bits_hex.trim())
            .map_err(|e| Error::Parse(format!("bits_hex: {e}")))?;
        let len = 1usize << n;
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Parse(format!(
                "bits_hex has {} bytes, expected {} for n = {n}",
                bytes.len(),
                len.div_ceil(8)
            )));
        }
        if len < 8 && bytes[0] >> len != 0 {
            return Err(Error::Parse(format!("bits_hex sets entries beyond 2^{n}")));
        }
        TruthTable::from_fn(n, |i| (bytes[i / 8] >> (i % 8)) & 1 == 1)
    }
}

pub fn read_truth_table<R: Read>(reader: R) -> Result<TruthTable> {
    let file: TruthTableFile = serde_json::from_reader(reader)?;
    TruthTable::try_from(&file)
}

pub fn write_truth_table<W: Write>(mut out: W, t: &TruthTable) -> Result<()> {
    serde_json::to_writer(&mut out, &TruthTableFile::from(t))?;
    writeln!(out)?;
    Ok(())
}

/// Dumps every row of the joint table in reduced form.
pub fn write_joint_csv<W: Write>(mut out: W, j: &JointYZ) -> Result<()> {
    writeln!(out, "y_index,p0_num,p0_den,p1_num,p1_den")?;
    for y in 0..j.len() {
        let (p0, p1) = j.row(y);
        writeln!(out, "{y},{},{},{},{}", p0.numer(), p0.denom(), p1.numer(), p1.denom())?;
    }
    Ok(())
}
