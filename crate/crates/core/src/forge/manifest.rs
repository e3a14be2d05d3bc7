//! Line-based `key=value` manifests describing instances on disk.
//!
//! Every manifest starts with a `kind=` line followed by that builder's
//! numeric parameters. Machine-backed instances embed the machine
//! description verbatim (its `states`/`start`/`halt`/`delta` lines).

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::stretch::StretchMap;
use crate::tm::TuringMachine;

#[derive(Clone, Debug)]
pub enum InstanceSpec {
    HardTt { n_len: usize },
    Prg { n: usize, c: usize },
    Extractor { n: usize, eps: Ratio<u64>, d_override: Option<u64> },
    Rigid { n: usize, r: usize, s_count: usize, q: u64 },
    Kt { n: usize, t: u64, machine: TuringMachine },
    /// The gate-free doubling map, handy for demos and smoke tests.
    Duplicate { n: usize },
}

impl InstanceSpec {
    pub fn build(&self) -> Result<StretchMap> {
        match self {
            InstanceSpec::HardTt { n_len } => super::phi_hard_tt(*n_len),
            InstanceSpec::Prg { n, c } => super::phi_prg(*n, *c),
            InstanceSpec::Extractor { n, eps, d_override } => {
                super::phi_extractor(*n, *eps, *d_override)
            }
            InstanceSpec::Rigid { n, r, s_count, q } => super::phi_rigid(*n, *r, *s_count, *q),
            InstanceSpec::Kt { n, t, machine } => super::phi_kt(*n, machine.clone(), *t),
            InstanceSpec::Duplicate { n } => Ok(fixtures::duplicate_map(*n)),
        }
    }

    /// A gate-backed build for solver-driven inversion: the table map has a
    /// dedicated structural compiler, everything else compiles exhaustively
    /// within the width budget.
    pub fn build_circuit_backed(&self) -> Result<StretchMap> {
        match self {
            InstanceSpec::HardTt { n_len } => super::phi_hard_tt_circuit(*n_len),
            other => other.build()?.with_circuit_backend(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            InstanceSpec::HardTt { n_len } => format!("kind=hard_tt\nN={n_len}\n"),
            InstanceSpec::Prg { n, c } => format!("kind=prg\nn={n}\nc={c}\n"),
            InstanceSpec::Extractor { n, eps, d_override } => {
                let mut s = format!("kind=extractor\nn={n}\neps={}/{}\n", eps.numer(), eps.denom());
                if let Some(d) = d_override {
                    s.push_str(&format!("d_override={d}\n"));
                }
                s
            }
            InstanceSpec::Rigid { n, r, s_count, q } => {
                format!("kind=rigid\nn={n}\nr={r}\ns_count={s_count}\nq={q}\n")
            }
            InstanceSpec::Kt { n, t, machine } => {
                format!("kind=kt\nn={n}\nt={t}\n{}", machine.to_text())
            }
            InstanceSpec::Duplicate { n } => format!("kind=duplicate\nn={n}\n"),
        }
    }

    pub fn from_text(text: &str) -> Result<InstanceSpec> {
        let mut kind = None;
        let mut fields: Vec<(String, String)> = Vec::new();
        let mut machine_lines = String::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((k, v)) = line.split_once('=') {
                if k == "kind" {
                    kind = Some(v.to_string());
                } else {
                    fields.push((k.to_string(), v.to_string()));
                }
            } else {
                machine_lines.push_str(line);
                machine_lines.push('\n');
            }
        }
        let kind = kind.ok_or_else(|| Error::Parse("manifest is missing a kind= line".into()))?;
        let get = |name: &str| -> Result<&str> {
            fields
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Parse(format!("manifest is missing {name}=")))
        };
        let num = |name: &str| -> Result<usize> {
            get(name)?
                .parse()
                .map_err(|_| Error::Parse(format!("bad numeric field {name}=")))
        };
        match kind.as_str() {
            "hard_tt" => Ok(InstanceSpec::HardTt { n_len: num("N")? }),
            "prg" => Ok(InstanceSpec::Prg {
                n: num("n")?,
                c: num("c")?,
            }),
            "extractor" => {
                let eps_text = get("eps")?;
                let (p, q) = eps_text
                    .split_once('/')
                    .ok_or_else(|| Error::Parse("eps must be written p/q".into()))?;
                let eps = Ratio::new(
                    p.parse().map_err(|_| Error::Parse("bad eps numerator".into()))?,
                    q.parse().map_err(|_| Error::Parse("bad eps denominator".into()))?,
                );
                let d_override = match get("d_override") {
                    Ok(v) => Some(
                        v.parse()
                            .map_err(|_| Error::Parse("bad d_override".into()))?,
                    ),
                    Err(_) => None,
                };
                Ok(InstanceSpec::Extractor {
                    n: num("n")?,
                    eps,
                    d_override,
                })
            }
            "rigid" => Ok(InstanceSpec::Rigid {
                n: num("n")?,
                r: num("r")?,
                s_count: num("s_count")?,
                q: num("q")? as u64,
            }),
            "kt" => {
                let machine = TuringMachine::from_text(&machine_lines)?;
                Ok(InstanceSpec::Kt {
                    n: num("n")?,
                    t: num("t")? as u64,
                    machine,
                })
            }
            "duplicate" => Ok(InstanceSpec::Duplicate { n: num("n")? }),
            other => Err(Error::Parse(format!("unknown instance kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_tt_manifest_roundtrip() {
        let spec = InstanceSpec::HardTt { n_len: 32 };
        let text = spec.to_text();
        let back = InstanceSpec::from_text(&text).unwrap();
        let map = back.build().unwrap();
        assert_eq!(map.in_width(), 26);
        assert_eq!(map.out_width(), 32);
    }

    #[test]
    fn kt_manifest_embeds_the_machine() {
        let spec = InstanceSpec::Kt {
            n: 8,
            t: 100,
            machine: crate::fixtures::copy_machine(),
        };
        let text = spec.to_text();
        assert!(text.contains("kind=kt"));
        assert!(text.contains("delta 0 0 -> 0 0 R"));
        let back = InstanceSpec::from_text(&text).unwrap();
        let map = back.build().unwrap();
        assert_eq!(
            map.eval(&"0000011".parse().unwrap()),
            "10000000".parse().unwrap()
        );
    }

    #[test]
    fn extractor_manifest_with_override() {
        let spec = InstanceSpec::Extractor {
            n: 2,
            eps: Ratio::new(1, 4),
            d_override: Some(2),
        };
        let back = InstanceSpec::from_text(&spec.to_text()).unwrap();
        assert!(back.build().is_ok());
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(InstanceSpec::from_text("kind=banana\nn=3\n").is_err());
    }
}
