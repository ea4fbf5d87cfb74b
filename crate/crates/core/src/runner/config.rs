//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::RunError;
use crate::aim::WhichDelta;
use crate::algebra::{parse_rational, BigRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Jt,
    Rashba,
    Jc,
    Mjc,
    Dirac,
    Custom,
}

impl ModelKind {
    /// Parameter names the model accepts besides `k`.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            ModelKind::Jt | ModelKind::Rashba | ModelKind::Jc => &["omega", "omega0", "kappa", "kappa_sq"],
            ModelKind::Mjc => &["omega0", "kappa"],
            ModelKind::Dirac => &["mass", "c", "omega_prime", "hbar"],
            ModelKind::Custom => &[
                "omega1", "omega2", "omega0", "kappa1", "kappa2", "kappa3", "kappa4", "gamma1", "gamma2", "gamma3",
                "gamma4",
            ],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Jt => "jt",
            ModelKind::Rashba => "rashba",
            ModelKind::Jc => "jc",
            ModelKind::Mjc => "mjc",
            ModelKind::Dirac => "dirac",
            ModelKind::Custom => "custom",
        }
    }
}

impl FromStr for ModelKind {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Self, RunError> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "jt" => ModelKind::Jt,
            "rashba" => ModelKind::Rashba,
            "jc" => ModelKind::Jc,
            "mjc" => ModelKind::Mjc,
            "dirac" => ModelKind::Dirac,
            "custom" => ModelKind::Custom,
            other => return Err(RunError::BadInput(format!("unknown model '{other}'"))),
        })
    }
}

fn which_str(w: WhichDelta) -> &'static str {
    match w {
        WhichDelta::D1 => "d1",
        WhichDelta::D2 => "d2",
        WhichDelta::Both => "both",
    }
}

fn parse_which(s: &str) -> Result<WhichDelta, RunError> {
    match s.trim() {
        "d1" => Ok(WhichDelta::D1),
        "d2" => Ok(WhichDelta::D2),
        "both" => Ok(WhichDelta::Both),
        other => Err(RunError::BadInput(format!("which must be d1, d2 or both, got '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub param: String,
    pub from: BigRational,
    pub to: BigRational,
    pub steps: u32,
}

impl Sweep {
    /// `param:from:to:steps`.
    pub fn parse(text: &str) -> Result<Self, RunError> {
        let parts: Vec<&str> = text.split(':').collect();
        let [param, from, to, steps] = parts.as_slice() else {
            return Err(RunError::BadInput(format!("sweep must be param:from:to:steps, got '{text}'")));
        };
        Ok(Sweep {
            param: param.trim().to_string(),
            from: rational(from, "sweep start")?,
            to: rational(to, "sweep end")?,
            steps: steps
                .trim()
                .parse()
                .map_err(|_| RunError::BadInput(format!("sweep steps must be an integer, got '{steps}'")))?,
        })
    }

    /// Evenly spaced points including both ends.
    pub fn points(&self) -> Vec<BigRational> {
        let last = BigRational::from_integer((self.steps.max(2) - 1).into());
        (0..self.steps)
            .map(|i| &self.from + (&self.to - &self.from) * BigRational::from_integer(i.into()) / &last)
            .collect()
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.param, self.from, self.to, self.steps)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub params: BTreeMap<String, BigRational>,
    pub k: BigRational,
    pub n_max: u32,
    pub tol: f64,
    pub z0: BigRational,
    pub which: WhichDelta,
    pub sweep: Option<Sweep>,
    pub levels: u32,
    pub output_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: ModelKind::Jt,
            params: BTreeMap::new(),
            k: BigRational::zero(),
            n_max: 14,
            tol: 1e-6,
            z0: BigRational::zero(),
            which: WhichDelta::D1,
            sweep: None,
            levels: 1,
            output_path: None,
        }
    }
}

fn rational(text: &str, what: &str) -> Result<BigRational, RunError> {
    parse_rational(text).ok_or_else(|| RunError::BadInput(format!("{what}: '{}' is not a rational number", text.trim())))
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, RunError> {
        let mut cfg = RunConfig::default();
        let mut pending = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| RunError::BadInput(format!("line {}: expected key = value", lineno + 1)))?;
            pending.push((key.trim().to_string(), value.trim().to_string()));
        }
        // The model decides which parameter names are legal, so read it first.
        if let Some((_, v)) = pending.iter().rev().find(|(k, _)| k == "model") {
            cfg.model = v.parse()?;
        }
        for (key, value) in pending {
            if key != "model" {
                cfg.set(&key, &value)?;
            }
        }
        Ok(cfg)
    }

    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), RunError> {
        match key {
            "model" => self.model = value.parse()?,
            "k" => self.k = rational(value, "k")?,
            "n_max" => {
                self.n_max = value.parse().map_err(|_| RunError::BadInput(format!("n_max: '{value}' is not an integer")))?
            }
            "tol" => self.tol = value.parse().map_err(|_| RunError::BadInput(format!("tol: '{value}' is not a number")))?,
            "z0" => self.z0 = rational(value, "z0")?,
            "which" => self.which = parse_which(value)?,
            "levels" => {
                self.levels = value.parse().map_err(|_| RunError::BadInput(format!("levels: '{value}' is not an integer")))?
            }
            "sweep" => self.sweep = Some(Sweep::parse(value)?),
            "out" => self.output_path = Some(value.to_string()),
            name => {
                if !self.model.parameter_names().contains(&name) {
                    return Err(RunError::BadInput(format!(
                        "unknown key '{name}' for model {}",
                        self.model.as_str()
                    )));
                }
                let v = rational(value, name)?;
                // κ and κ² are alternatives; the latest assignment wins.
                match name {
                    "kappa" => {
                        self.params.remove("kappa_sq");
                    }
                    "kappa_sq" => {
                        self.params.remove("kappa");
                    }
                    _ => {}
                }
                self.params.insert(name.to_string(), v);
            }
        }
        Ok(())
    }

    /// Checks the invariants that do not depend on solving.
    pub fn validate(&self) -> Result<(), RunError> {
        if self.n_max < 2 {
            return Err(RunError::BadInput("n_max must be at least 2".into()));
        }
        if self.levels < 1 {
            return Err(RunError::BadInput("levels must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(RunError::BadInput("tol must be positive".into()));
        }
        if let Some(s) = &self.sweep {
            if s.steps < 2 {
                return Err(RunError::BadInput("sweep needs at least 2 steps".into()));
            }
            if !self.model.parameter_names().contains(&s.param.as_str()) {
                return Err(RunError::BadInput(format!(
                    "cannot sweep '{}' for model {}",
                    s.param,
                    self.model.as_str()
                )));
            }
        }
        Ok(())
    }

    /// Named parameter, or `default` when absent.
    pub fn param_or(&self, name: &str, default: BigRational) -> BigRational {
        self.params.get(name).cloned().unwrap_or(default)
    }

    pub fn param_or_one(&self, name: &str) -> BigRational {
        self.param_or(name, BigRational::one())
    }

    pub fn param_or_zero(&self, name: &str) -> BigRational {
        self.param_or(name, BigRational::zero())
    }

    /// Copy with `param = value`, as used for one sweep point.
    pub fn with_param(&self, param: &str, value: &BigRational) -> Result<Self, RunError> {
        let mut c = self.clone();
        c.set(param, &value.to_string())?;
        c.sweep = None;
        Ok(c)
    }

    /// Canonical text form; `parse(serialize(c)) == c`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("model", self.model.as_str().into());
        line("k", self.k.to_string());
        line("n_max", self.n_max.to_string());
        line("tol", format!("{:e}", self.tol));
        line("z0", self.z0.to_string());
        line("which", which_str(self.which).into());
        line("levels", self.levels.to_string());
        for (k, v) in &self.params {
            line(k, v.to_string());
        }
        if let Some(s) = &self.sweep {
            line("sweep", s.to_string());
        }
        if let Some(p) = &self.output_path {
            line("out", p.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    const SAMPLE: &str = "# ground state point\nmodel = jt\nkappa_sq = 0.25   # κ²\nk = 0\nn_max = 14\nlevels = 3\n";

    #[test]
    fn parses_sample() {
        let c = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.model, ModelKind::Jt);
        assert_eq!(c.params["kappa_sq"], rat(1, 4));
        assert_eq!(c.levels, 3);
    }

    #[test]
    fn round_trip_is_idempotent() {
        let mut c = RunConfig::parse(SAMPLE).unwrap();
        c.sweep = Some(Sweep::parse("kappa_sq:0.1:1:10").unwrap());
        c.output_path = Some("out.csv".into());
        c.tol = 1e-7;
        let text = c.serialize();
        let back = RunConfig::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("model = nope").is_err());
        assert!(RunConfig::parse("model = jt\nkappa1 = 1").is_err());
        assert!(RunConfig::parse("kappa = x").is_err());
        assert!(RunConfig::parse("just words").is_err());
        let c = RunConfig { sweep: Some(Sweep::parse("kappa:0.1:1:1").unwrap()), ..RunConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn kappa_forms_are_exclusive() {
        let c = RunConfig::parse("kappa = 1/2\nkappa_sq = 3").unwrap();
        assert!(!c.params.contains_key("kappa"));
        assert_eq!(c.params["kappa_sq"], rat(3, 1));
    }

    #[test]
    fn sweep_points_are_exact() {
        let s = Sweep::parse("kappa:0.1:1.0:10").unwrap();
        let p = s.points();
        assert_eq!(p.len(), 10);
        assert_eq!(p[0], rat(1, 10));
        assert_eq!(p[9], rat(1, 1));
        assert_eq!(p[4], rat(1, 2));
    }
}
