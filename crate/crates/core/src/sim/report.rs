use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::campaign::{BlerPoint, CampaignConfig};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "snr_db,frames,errors,bler";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
    Plotscript,
}

/// One decoder's BLER curve together with the configuration that made it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub label: String,
    pub config: CampaignConfig,
    pub points: Vec<BlerPoint>,
}

/// Non-finite SNR values are written as the strings `"inf"` / `"-inf"`
/// since JSON numbers cannot hold them.
pub(crate) mod snr_value {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn to_repr(v: f64) -> impl Serialize {
        if v.is_finite() {
            Repr::Num(v)
        } else {
            Repr::Text(v.to_string())
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(v) => Ok(v),
            Repr::Text(s) => s.parse().map_err(|_| E::custom(format!("bad SNR value {s:?}"))),
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod list {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|&x| to_repr(x)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
        }
    }
}

pub fn to_csv(points: &[BlerPoint]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    for p in points {
        let _ = writeln!(s, "{},{},{},{}", p.snr_db, p.frames, p.block_errors, p.bler);
    }
    s
}

pub fn to_json(curves: &[Curve]) -> Result<String> {
    Ok(serde_json::to_string_pretty(curves)?)
}

pub fn from_json(text: &str) -> Result<Vec<Curve>> {
    Ok(serde_json::from_str(text)?)
}

/// Gnuplot script drawing every curve on a log-scale BLER axis. `data`
/// holds one CSV file name per curve.
pub fn to_plotscript(curves: &[Curve], data: &[String], title: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set logscale y\nset format y \"10^{%L}\"\nset grid\nset key bottom left\n");
    let conv = curves.first().map_or("Es/N0", |c| c.config.convention.label());
    let _ = writeln!(s, "set xlabel \"{conv} (dB)\"\nset ylabel \"BLER\"\nset title \"{title}\"");
    let plots: Vec<String> = curves
        .iter()
        .zip(data)
        .enumerate()
        .map(|(i, (c, f))| {
            format!("\"{f}\" using 1:($4 > 0 ? $4 : 1/0) skip 1 with linespoints lw 2 pt {} title \"{}\"", 5 + 2 * i, c.label)
        })
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

fn sibling(out: &Path, suffix: &str, ext: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("bler");
    out.with_file_name(format!("{stem}{suffix}.{ext}"))
}

fn slug(label: &str) -> String {
    label.split_whitespace().next().unwrap_or("curve").to_lowercase()
}

/// Writes the report and returns the paths created. A single CSV curve
/// goes to `out`; several go to `<stem>-<i>-<decoder>.csv`. The plotscript
/// is written to `out` with one CSV data file per curve beside it.
pub fn emit_report(curves: &[Curve], format: ReportFormat, out: &Path) -> Result<Vec<PathBuf>> {
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut written = Vec::new();
    match format {
        ReportFormat::Json => {
            fs::write(out, to_json(curves)?)?;
            written.push(out.to_path_buf());
        }
        ReportFormat::Csv if curves.len() <= 1 => {
            fs::write(out, to_csv(curves.first().map_or(&[][..], |c| &c.points)))?;
            written.push(out.to_path_buf());
        }
        ReportFormat::Csv | ReportFormat::Plotscript => {
            let mut names = Vec::new();
            for (i, c) in curves.iter().enumerate() {
                let path = sibling(out, &format!("-{i}-{}", slug(&c.label)), "csv");
                fs::write(&path, to_csv(&c.points))?;
                names.push(path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string());
                written.push(path);
            }
            if format == ReportFormat::Plotscript {
                let title = curves.first().map_or(String::new(), |c| {
                    format!("N = {}, K = {}", c.config.code.n, c.config.code.k)
                });
                fs::write(out, to_plotscript(curves, &names, &title))?;
                written.push(out.to_path_buf());
            }
        }
    }
    if written.is_empty() {
        return Err(Error::invalid("nothing to write"));
    }
    Ok(written)
}
