//! Reading and writing the text artifact formats.

use std::path::Path;

use pigeon_core::bits::Bits;
use pigeon_core::circuit::{text, Circuit};
use pigeon_core::error::{Error, Result};
use pigeon_core::forge::manifest::InstanceSpec;
use pigeon_core::property_circuits::BitProbeScheme;
use pigeon_core::tm::TuringMachine;

pub fn read_table(path: &Path) -> Result<Bits> {
    text::table_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_table(path: &Path, t: &Bits) -> Result<()> {
    Ok(std::fs::write(path, text::table_to_string(t))?)
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    text::circuit_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_circuit(path: &Path, c: &Circuit) -> Result<()> {
    Ok(std::fs::write(path, text::circuit_to_string(c))?)
}

pub fn read_matrix(path: &Path) -> Result<Vec<Bits>> {
    text::matrix_from_str(&std::fs::read_to_string(path)?)
}

pub fn read_manifest(path: &Path) -> Result<InstanceSpec> {
    InstanceSpec::from_text(&std::fs::read_to_string(path)?)
}

pub fn write_manifest(path: &Path, spec: &InstanceSpec) -> Result<()> {
    Ok(std::fs::write(path, spec.to_text())?)
}

pub fn read_machine(path: &Path) -> Result<TuringMachine> {
    TuringMachine::from_text(&std::fs::read_to_string(path)?)
}

pub fn read_scheme(path: &Path) -> Result<BitProbeScheme> {
    BitProbeScheme::from_text(&std::fs::read_to_string(path)?)
}

/// Complexity certificates: `N=`, `s_star=`, `witness=` (a circuit file
/// path, relative to the certificate).
pub struct Cert {
    pub n_len: usize,
    pub s_star: usize,
    pub witness: Circuit,
}

pub fn write_cert(path: &Path, table_len: usize, s_star: usize, witness_path: &Path) -> Result<()> {
    let text = format!(
        "N={}\ns_star={}\nwitness={}\n",
        table_len,
        s_star,
        witness_path.display()
    );
    Ok(std::fs::write(path, text)?)
}

pub fn read_cert(path: &Path) -> Result<Cert> {
    let text = std::fs::read_to_string(path)?;
    let mut n_len = None;
    let mut s_star = None;
    let mut witness = None;
    for line in text.lines().map(str::trim) {
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad certificate line {line:?}")))?;
        match k {
            "N" => n_len = v.parse().ok(),
            "s_star" => s_star = v.parse().ok(),
            "witness" => {
                let wpath = Path::new(v);
                let resolved = if wpath.is_relative() {
                    path.parent().unwrap_or(Path::new(".")).join(wpath)
                } else {
                    wpath.to_path_buf()
                };
                witness = Some(read_circuit(&resolved)?);
            }
            other => return Err(Error::Parse(format!("unknown certificate field {other:?}"))),
        }
    }
    Ok(Cert {
        n_len: n_len.ok_or_else(|| Error::Parse("certificate is missing N=".into()))?,
        s_star: s_star.ok_or_else(|| Error::Parse("certificate is missing s_star=".into()))?,
        witness: witness.ok_or_else(|| Error::Parse("certificate is missing witness=".into()))?,
    })
}
