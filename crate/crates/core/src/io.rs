//! Text and image formats: Wigner and kernel CSV dumps, density JSON, model
//! configuration and 8-bit PGM heatmaps.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::kernel::PropagatorKernel;
use crate::dynamics::spectrum::SpectrumModel;
use crate::error::{Error, Result};
use crate::models::dressed::DressedMap;
use crate::models::jc::JcParams;
use crate::models::rabi::RabiParams;
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::{Period, QuasiMomentumGrid};
use crate::phase_space::lattice::{DensityWindow, DensityWindowJson, LatticeMode};
use crate::C64;

fn header(mode: LatticeMode, period: Period, n_min_twice: i64, k_count: usize) -> String {
    format!("# mode={}, period={}, n_min_twice={}, k_count={}\n", mode.label(), period.label(), n_min_twice, k_count)
}

/// `n` as a decimal: `3`, `-1.5`.
fn half_label(n_twice: i64) -> String {
    if n_twice % 2 == 0 {
        (n_twice / 2).to_string()
    } else {
        let sign = if n_twice < 0 { "-" } else { "" };
        format!("{sign}{}.5", n_twice.abs() / 2)
    }
}

pub fn field_to_csv(w: &WignerField) -> String {
    let mut s = header(w.mode(), w.grid().period(), w.n_min_twice(), w.grid().count());
    s.push_str("n_twice,k_index,value\n");
    for r in 0..w.rows() {
        let n2 = w.n_twice(r);
        for (j, v) in w.row(r).iter().enumerate() {
            let _ = writeln!(s, "{n2},{j},{v:.16e}");
        }
    }
    s
}

struct Header {
    mode: LatticeMode,
    period: Period,
    n_min_twice: i64,
    k_count: usize,
}

fn parse_header(line: &str) -> Result<Header> {
    let body = line.strip_prefix('#').ok_or_else(|| Error::Parse("missing '#' header".into()))?;
    let (mut mode, mut period, mut n_min, mut count) = (None, None, None, None);
    for part in body.split(',') {
        let (key, value) = part.trim().split_once('=').ok_or_else(|| Error::Parse(format!("bad header field `{part}`")))?;
        match key {
            "mode" => {
                mode = Some(match value {
                    "integer" => LatticeMode::Integer,
                    "half" => LatticeMode::HalfInteger,
                    _ => return Err(Error::Parse(format!("unknown mode `{value}`"))),
                })
            }
            "period" => {
                period = Some(match value {
                    "pi" => Period::Pi,
                    "2pi" => Period::TwoPi,
                    _ => return Err(Error::Parse(format!("unknown period `{value}`"))),
                })
            }
            "n_min_twice" => n_min = Some(value.parse().map_err(|_| Error::Parse(format!("bad n_min_twice `{value}`")))?),
            "k_count" => count = Some(value.parse().map_err(|_| Error::Parse(format!("bad k_count `{value}`")))?),
            _ => return Err(Error::Parse(format!("unknown header key `{key}`"))),
        }
    }
    match (mode, period, n_min, count) {
        (Some(mode), Some(period), Some(n_min_twice), Some(k_count)) => Ok(Header { mode, period, n_min_twice, k_count }),
        _ => Err(Error::Parse("incomplete header".into())),
    }
}

pub fn field_from_csv(text: &str) -> Result<WignerField> {
    let mut lines = text.lines();
    let h = parse_header(lines.next().ok_or_else(|| Error::Parse("empty file".into()))?)?;
    let grid = QuasiMomentumGrid::new(h.period, h.k_count)?;
    let mut values = Vec::new();
    let mut rows = 0usize;
    for line in lines {
        if line.starts_with("n_twice") || line.trim().is_empty() {
            continue;
        }
        let mut it = line.split(',');
        let (Some(n2), Some(j), Some(v), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("bad row `{line}`")));
        };
        let n2: i64 = n2.trim().parse().map_err(|_| Error::Parse(format!("bad n_twice in `{line}`")))?;
        let j: usize = j.trim().parse().map_err(|_| Error::Parse(format!("bad k_index in `{line}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad value in `{line}`")))?;
        let step = h.mode.row_step();
        if j != values.len() % h.k_count {
            return Err(Error::Parse(format!("k_index out of order in `{line}`")));
        }
        if j == 0 {
            if n2 != h.n_min_twice + step * rows as i64 {
                return Err(Error::Parse(format!("row out of order in `{line}`")));
            }
            rows += 1;
        }
        values.push(v);
    }
    if values.len() != rows * h.k_count {
        return Err(Error::Parse("truncated final row".into()));
    }
    WignerField::from_values(h.mode, grid, h.n_min_twice, rows, values)
}

/// `n, k_index, t, value` for each kernel, all on the same grid.
pub fn kernels_to_csv(kernels: &[PropagatorKernel], mode: LatticeMode) -> Result<String> {
    let first = kernels.first().ok_or_else(|| Error::InvalidParameter("no kernels to write".into()))?;
    let grid = first.grid;
    let n_min = kernels.iter().map(|k| k.n_twice).min().unwrap_or(0);
    let mut s = header(mode, grid.period(), n_min, grid.count());
    s.push_str("n,k_index,t,value\n");
    for k in kernels {
        if k.grid != grid {
            return Err(Error::InvalidGrid("kernels sampled on different grids".into()));
        }
        let n = half_label(k.n_twice);
        for (j, v) in k.values.iter().enumerate() {
            let _ = writeln!(s, "{n},{j},{},{v:.16e}", k.t);
        }
    }
    Ok(s)
}

pub fn density_to_json(rho: &DensityWindow) -> Result<String> {
    serde_json::to_string_pretty(&DensityWindowJson::from(rho)).map_err(|e| Error::Parse(e.to_string()))
}

pub fn density_from_json(text: &str) -> Result<DensityWindow> {
    let j: DensityWindowJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    DensityWindow::try_from(j)
}

/// Symmetric gray map: 0 -> 128, `+-max|W|` -> 255 / 1.
pub fn gray_level(v: f64, max_abs: f64) -> u8 {
    if max_abs == 0.0 || !v.is_finite() {
        return 128;
    }
    (128.0 + 127.0 * v / max_abs).round().clamp(1.0, 255.0) as u8
}

/// Binary PGM (P5) with `n` along x (left to right) and `k` along y (`k = 0`
/// on the bottom row).
pub fn field_to_pgm(w: &WignerField) -> Vec<u8> {
    let (width, height) = (w.rows(), w.grid().count());
    let m = w.max_abs();
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.reserve(width * height);
    for y in 0..height {
        let j = height - 1 - y;
        for r in 0..width {
            out.push(gray_level(w.row(r)[j], m));
        }
    }
    out
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Jc,
    Rabi,
    BuckSukumar,
    Dispersive,
    /// Nearest-neighbour chain; not diagonal in the lattice basis.
    TightBinding,
}

/// Model section of a run configuration. Energies are in units of `omega`,
/// which defaults to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub model: ModelKind,
    #[serde(default = "unit")]
    pub omega: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub g: f64,
    /// Atomic frequency of the Rabi model; `omega + delta` when absent.
    #[serde(rename = "Omega", default, skip_serializing_if = "Option::is_none")]
    pub big_omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub alpha_re: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_im: Option<f64>,
}

fn unit() -> f64 {
    1.0
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn alpha(&self) -> C64 {
        C64::new(self.alpha_re, self.alpha_im.unwrap_or(0.0))
    }

    /// Lattice spectrum. The Rabi model has none of its own and uses the JC
    /// spectrum of the same parameters for its dressed labels.
    pub fn spectrum(&self) -> Result<SpectrumModel> {
        let s = match self.model {
            ModelKind::Jc | ModelKind::Rabi => SpectrumModel::Jc { omega: self.omega, delta: self.delta, g: self.g },
            ModelKind::BuckSukumar => SpectrumModel::BuckSukumar { omega: self.omega, g: self.g },
            ModelKind::Dispersive => SpectrumModel::Dispersive { omega: self.omega, delta: self.delta, g: self.g },
            ModelKind::TightBinding => return Err(Error::Unsupported { required: "a model diagonal in the lattice basis" }),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn dressed_map(&self) -> Result<DressedMap> {
        Ok(match self.model {
            ModelKind::Jc | ModelKind::Rabi => DressedMap::Jc(self.jc()?),
            ModelKind::BuckSukumar => DressedMap::BuckSukumar { omega: self.omega, g: self.g },
            ModelKind::Dispersive => DressedMap::Dispersive { omega: self.omega, delta: self.delta, g: self.g },
            ModelKind::TightBinding => return Err(Error::Unsupported { required: "an atom-field model" }),
        })
    }

    pub fn jc(&self) -> Result<JcParams> {
        JcParams::new(self.omega, self.delta, self.g)
    }

    pub fn rabi(&self) -> RabiParams {
        RabiParams { omega: self.omega, big_omega: self.big_omega.unwrap_or(self.omega + self.delta), g: self.g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::wigner::wigner_from_state;
    use crate::LatticeState;

    #[test]
    fn csv_round_trip_is_exact() {
        let psi = LatticeState::superposition(&[(-1, C64::new(0.3, 0.2)), (2, C64::new(-0.5, 0.1))]).unwrap();
        let grid = QuasiMomentumGrid::full(16).unwrap();
        let w = wigner_from_state(&psi, grid, LatticeMode::HalfInteger).unwrap();
        let text = field_to_csv(&w);
        assert!(text.starts_with("# mode=half, period=2pi, n_min_twice=-2, k_count=16\n"));
        let back = field_from_csv(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(field_from_csv("").is_err());
        assert!(field_from_csv("# mode=odd, period=pi, n_min_twice=0, k_count=2\n").is_err());
        let ok = "# mode=integer, period=pi, n_min_twice=0, k_count=2\n0,0,1.0\n0,1,2.0\n2,0,3.0\n";
        assert!(matches!(field_from_csv(ok), Err(Error::Parse(_))));
    }

    #[test]
    fn gray_mapping() {
        assert_eq!(gray_level(0.0, 1.0), 128);
        assert_eq!(gray_level(1.0, 1.0), 255);
        assert_eq!(gray_level(-1.0, 1.0), 1);
        assert_eq!(gray_level(-3.0, 1.0), 1);
        assert_eq!(gray_level(0.5, 0.0), 128);
    }

    #[test]
    fn half_labels() {
        assert_eq!(half_label(6), "3");
        assert_eq!(half_label(-3), "-1.5");
        assert_eq!(half_label(-1), "-0.5");
        assert_eq!(half_label(1), "0.5");
    }

    #[test]
    fn model_config_defaults() {
        let c = ModelConfig::from_json(r#"{"model": "rabi", "delta": 1.5, "g": 1.0, "alpha_re": 0.0}"#).unwrap();
        assert_eq!(c.omega, 1.0);
        assert_eq!(c.rabi().big_omega, 2.5);
        let c = ModelConfig::from_json(r#"{"model": "jc", "g": 1.0, "alpha_re": 0.0, "alpha_im": 6.0, "Omega": 3.0}"#).unwrap();
        assert_eq!(c.alpha(), C64::new(0.0, 6.0));
        assert_eq!(c.rabi().big_omega, 3.0);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
