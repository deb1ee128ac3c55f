use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::control_functional::KernelParams;
use crate::error::{Error, Result};
use crate::estimate::{Method, SurrogateConfig};
use crate::function::{builtin, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurrogateKind {
    Grid,
    Kernel,
}

impl std::str::FromStr for SurrogateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(SurrogateKind::Grid),
            "kernel" => Ok(SurrogateKind::Kernel),
            other => Err(Error::Config(format!("unknown surrogate `{other}`"))),
        }
    }
}

/// A convergence study, read from a flat TOML key-value file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub function: String,
    pub dims: usize,
    pub methods: Vec<Method>,
    pub budget_min: usize,
    pub budget_max: usize,
    pub budget_factor: usize,
    pub replicates: usize,
    pub seed: u64,
    pub surrogate: SurrogateKind,
    /// Kernel lengthscale; `0.2·√d` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengthscale: Option<f64>,
    pub ridge: f64,
    /// Number of smallest budgets left out of the slope fit.
    pub slope_skip: usize,
    pub out_dir: PathBuf,
    /// Fail when fitted slopes are not ordered rqmc-cf < rqmc < mc.
    pub check_ordering: bool,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            function: "fig1".into(),
            dims: 1,
            methods: Method::ALL.to_vec(),
            budget_min: 16,
            budget_max: 4096,
            budget_factor: 2,
            replicates: 20,
            seed: 2015,
            surrogate: SurrogateKind::Grid,
            lengthscale: None,
            ridge: 1e-8,
            slope_skip: 2,
            out_dir: PathBuf::from("out"),
            check_ordering: true,
        }
    }
}

impl StudyConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: StudyConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// `budget_min, budget_min·factor, …` up to `budget_max`.
    pub fn budgets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut b = self.budget_min;
        while b <= self.budget_max && b > 0 {
            out.push(b);
            match b.checked_mul(self.budget_factor) {
                Some(next) if self.budget_factor > 1 => b = next,
                _ => break,
            }
        }
        out
    }

    pub fn test_function(&self) -> Result<TestFunction> {
        builtin(&self.function, self.dims)
    }

    pub fn surrogate_config(&self) -> SurrogateConfig {
        match self.surrogate {
            SurrogateKind::Grid => SurrogateConfig::Grid,
            SurrogateKind::Kernel => {
                let mut p = KernelParams::default_for(self.dims);
                if let Some(l) = self.lengthscale {
                    p.lengthscale = l;
                }
                p.ridge = self.ridge;
                SurrogateConfig::Kernel(p)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.methods.is_empty() {
            return bad("methods must not be empty".into());
        }
        if self.methods.iter().collect::<BTreeSet<_>>().len() != self.methods.len() {
            return bad("methods must be distinct".into());
        }
        self.test_function().map_err(|e| Error::Config(e.to_string()))?;
        if self.budget_min < 2 {
            return bad(format!("budget_min {} < 2", self.budget_min));
        }
        if self.budget_factor < 2 {
            return bad(format!("budget_factor {} < 2", self.budget_factor));
        }
        let budgets = self.budgets();
        if budgets.len() < 2 {
            return bad(format!("budget range {}..={} gives fewer than two budgets", self.budget_min, self.budget_max));
        }
        if budgets.len() < self.slope_skip + 2 {
            return bad(format!("slope_skip {} leaves fewer than two of {} budgets", self.slope_skip, budgets.len()));
        }
        if self.replicates == 0 {
            return bad("replicates must be positive".into());
        }
        if self.lengthscale.is_some_and(|l| l.is_nan() || l <= 0.0) {
            return bad("lengthscale must be positive".into());
        }
        if self.ridge.is_nan() || self.ridge < 0.0 {
            return bad("ridge must be non-negative".into());
        }
        Ok(())
    }
}
