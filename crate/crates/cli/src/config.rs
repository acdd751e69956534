use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use polariton_core::dynamics::spectrum::SpectrumModel;
use polariton_core::io::{ModelConfig, ModelKind};
use polariton_core::models::caustics::CausticQuery;
use polariton_core::models::coherent::{coherent_lattice_amplitude, coherent_n_max, dressed_coherent, Branch};
use polariton_core::phase_space::cats::{cat_momentum_wigner, DeltaLine, DeltaLineField, LineProfile};
use polariton_core::{LatticeMode, LatticeState, Period, QuasiMomentumGrid, C64};
use serde::{Deserialize, Serialize};

/// Initial state of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    Position {
        n: i64,
    },
    PositionCat {
        n1: i64,
        n2: i64,
        /// Relative phase of the second component.
        #[serde(default)]
        phase: f64,
    },
    Momentum {
        k0: f64,
    },
    MomentumCat {
        k1: f64,
        k2: f64,
    },
    /// Lattice image of a field coherent state; `alpha` comes from the model section.
    Coherent,
    DressedCoherent {
        branch: Branch,
    },
    /// Amplitudes `{n_min, re: [..], im: [..]}` read from a JSON file.
    Amplitudes {
        file: PathBuf,
    },
}

impl Default for StateSpec {
    fn default() -> Self {
        StateSpec::Position { n: 0 }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct AmplitudeFile {
    n_min: i64,
    re: Vec<f64>,
    #[serde(default)]
    im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(default = "default_k_count")]
    pub k_count: usize,
    #[serde(default = "default_period")]
    pub period: Period,
    /// Integer lattice window `[lo, hi]`; the state's support when absent.
    #[serde(default)]
    pub window: Option<(i64, i64)>,
}

fn default_k_count() -> usize {
    64
}

fn default_period() -> Period {
    Period::TwoPi
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { k_count: default_k_count(), period: default_period(), window: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    #[serde(alias = "integer")]
    Int,
    #[default]
    Half,
}

impl From<ModeArg> for LatticeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Int => LatticeMode::Integer,
            ModeArg::Half => LatticeMode::HalfInteger,
        }
    }
}

/// A whole run as a single JSON document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: Option<ModelConfig>,
    /// Explicit lattice spectrum, e.g. `{"model": "custom", "epsilon": [..]}`;
    /// overrides the one implied by `model`.
    #[serde(default)]
    pub spectrum: Option<SpectrumModel>,
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub mode: ModeArg,
    #[serde(default)]
    pub times: Vec<f64>,
    /// Kernel truncation `N'`.
    #[serde(default)]
    pub n_prime: Option<usize>,
    #[serde(default)]
    pub caustics: Vec<CausticQuery>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Directory of the config file, for relative paths.
    #[serde(skip)]
    pub base: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        cfg.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.grid.k_count == 0 || self.grid.k_count % 2 != 0 {
            bail!("k count must be even and positive, got {}", self.grid.k_count);
        }
        if let Some(t) = self.times.iter().find(|t| !(**t >= 0.0)) {
            bail!("times must be non-negative, got {t}");
        }
        if let Some((lo, hi)) = self.grid.window {
            if lo > hi {
                bail!("empty window {lo}:{hi}");
            }
        }
        if let StateSpec::Amplitudes { file } = &self.state {
            let p = self.base.join(file);
            if !p.exists() {
                bail!("amplitude file {} does not exist", p.display());
            }
        }
        Ok(())
    }

    pub fn lattice_mode(&self) -> LatticeMode {
        self.mode.into()
    }

    pub fn k_grid(&self) -> anyhow::Result<QuasiMomentumGrid> {
        Ok(QuasiMomentumGrid::new(self.grid.period, self.grid.k_count)?)
    }

    pub fn model_kind(&self) -> Option<ModelKind> {
        self.model.as_ref().map(|m| m.model)
    }

    pub fn alpha(&self) -> anyhow::Result<C64> {
        match &self.model {
            Some(m) => Ok(m.alpha()),
            None => bail!("coherent states need a model section with alpha_re/alpha_im"),
        }
    }

    pub fn spectrum(&self) -> anyhow::Result<SpectrumModel> {
        if let Some(s) = &self.spectrum {
            s.validate()?;
            return Ok(s.clone());
        }
        match &self.model {
            Some(m) => Ok(m.spectrum()?),
            None => bail!("no model or spectrum given"),
        }
    }

    /// Pure state for every spec except the momentum ones.
    pub fn lattice_state(&self) -> anyhow::Result<Option<LatticeState>> {
        let one = C64::new(1.0, 0.0);
        let psi = match &self.state {
            StateSpec::Position { n } => LatticeState::basis(*n),
            StateSpec::PositionCat { n1, n2, phase } => {
                if n1 == n2 {
                    bail!("position cat needs distinct sites");
                }
                LatticeState::superposition(&[(*n1, one), (*n2, C64::from_polar(1.0, *phase))])?
            }
            StateSpec::Momentum { .. } | StateSpec::MomentumCat { .. } => return Ok(None),
            StateSpec::Coherent => {
                let alpha = self.alpha()?;
                let reach = coherent_n_max(alpha) as i64;
                let amps = (-reach..=reach).map(|n| coherent_lattice_amplitude(alpha, n)).collect();
                LatticeState::normalize(-reach, amps)?
            }
            StateSpec::DressedCoherent { branch } => {
                let alpha = self.alpha()?;
                dressed_coherent(alpha, *branch, coherent_n_max(alpha))?
            }
            StateSpec::Amplitudes { file } => {
                let p = self.base.join(file);
                let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                let a: AmplitudeFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
                let im = if a.im.is_empty() { vec![0.0; a.re.len()] } else { a.im };
                if im.len() != a.re.len() {
                    bail!("re and im have different lengths in {}", p.display());
                }
                LatticeState::normalize(a.n_min, a.re.iter().zip(&im).map(|(r, i)| C64::new(*r, *i)).collect())?
            }
        };
        Ok(Some(psi))
    }

    /// Delta-line field of a momentum eigenstate or cat on the window.
    pub fn delta_field(&self) -> anyhow::Result<Option<DeltaLineField>> {
        let (lo, hi) = self.grid.window.unwrap_or((-10, 10));
        let mode = self.lattice_mode();
        match self.state {
            StateSpec::Momentum { k0 } => Ok(Some(DeltaLineField {
                mode,
                n_min: lo,
                n_max: hi,
                lines: vec![DeltaLine {
                    k0,
                    profile: LineProfile::Constant { value: 1.0 / (2.0 * std::f64::consts::PI) },
                }],
            })),
            StateSpec::MomentumCat { k1, k2 } => Ok(Some(cat_momentum_wigner(k1, k2, mode, lo, hi)?)),
            _ => Ok(None),
        }
    }

    /// Window for a pure state: the configured one, or the state's support.
    pub fn window_for(&self, psi: &LatticeState) -> (i64, i64) {
        self.grid.window.unwrap_or((psi.n_min(), psi.n_max()))
    }
}

pub fn parse_window(s: &str) -> anyhow::Result<(i64, i64)> {
    let (a, b) = s.split_once(':').context("window must look like A:B")?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

pub fn parse_times(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().with_context(|| format!("bad time `{t}`"))).collect()
}

pub fn parse_model(s: &str) -> anyhow::Result<ModelKind> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .with_context(|| format!("unknown model `{s}` (jc, rabi, buck_sukumar, dispersive, tight_binding)"))
}
