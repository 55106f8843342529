// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a UTF-8 `key = value` document with `[section]`
//! headers.
//!
//! Values use TOML syntax (numbers, booleans, quoted strings, arrays). Keys
//! are any run of non-whitespace characters other than `=`, so a typo such
//! as `Ω_typo` is reported as an unknown key with a suggestion rather than
//! as a syntax error.
//!
//! ```text
//! experiment = "swap"
//! units = "plain"
//!
//! [params]
//! n_atoms = 40000
//! g = 1.0
//! omega_ratio = 20.0
//! kappa = 0.1
//! gamma = 0.1
//!
//! [swap]
//! backend = "full"
//! decay = true
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::experiments::PhysicalInputs;
use crate::gates::Backend;
use crate::params::{SystemParams, UnitConvention, REFERENCE_ATOMS, REFERENCE_OMEGA_RATIO};
use crate::propagator::DEFAULT_TOLERANCE;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Swap,
    TruthTable,
    Conversion,
    Fig2Sweep,
    Rwa,
    UnitsReport,
    OracleCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Swap,
        Experiment::TruthTable,
        Experiment::Conversion,
        Experiment::Fig2Sweep,
        Experiment::Rwa,
        Experiment::UnitsReport,
        Experiment::OracleCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Swap => "swap",
            Experiment::TruthTable => "truth-table",
            Experiment::Conversion => "conversion",
            Experiment::Fig2Sweep => "fig2-sweep",
            Experiment::Rwa => "rwa",
            Experiment::UnitsReport => "units-report",
            Experiment::OracleCheck => "oracle-check",
        }
    }

    /// Unit convention used when the config does not name one.
    pub fn default_units(self) -> UnitConvention {
        match self {
            Experiment::UnitsReport => UnitConvention::Angular,
            _ => UnitConvention::Plain,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|e| e.name()).collect();
                Error::Config(format!("unknown experiment `{s}`{}", suggestion(s, &names)))
            })
    }
}

/// How the drive strength is given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Drive {
    /// `omega = ratio * sqrt(N) * max(|g_a|, |g_b|)`.
    Ratio(f64),
    /// `omega` in config units.
    Absolute(f64),
}

/// `[params]`: rates in config units, converted by [`UnitConvention`] and
/// `frequency_unit_hz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamsSection {
    pub n_atoms: u64,
    pub g_a: f64,
    pub g_b: f64,
    pub g_a_phase: f64,
    pub g_b_phase: f64,
    pub drive: Drive,
    pub phi: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
    pub frequency_unit_hz: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        Self {
            n_atoms: REFERENCE_ATOMS,
            g_a: 1.0,
            g_b: 1.0,
            g_a_phase: 0.0,
            g_b_phase: 0.0,
            drive: Drive::Ratio(REFERENCE_OMEGA_RATIO),
            phi: 0.0,
            kappa_a: 0.1,
            kappa_b: 0.1,
            gamma_1: 0.1,
            gamma_2: 0.1,
            frequency_unit_hz: 1.0,
        }
    }
}

impl ParamsSection {
    pub fn to_system_params(&self, units: UnitConvention) -> Result<SystemParams> {
        let rate = |v: f64| units.to_rate(v, self.frequency_unit_hz);
        if !(self.frequency_unit_hz.is_finite() && self.frequency_unit_hz > 0.0) {
            return Err(Error::invalid(
                "frequency_unit_hz",
                "must be finite and > 0",
            ));
        }
        for (field, v) in [("g_a", self.g_a), ("g_b", self.g_b)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(
                    field,
                    format!("magnitude must be finite and >= 0, got {v}"),
                ));
            }
        }
        let g_a = Complex64::from_polar(rate(self.g_a), self.g_a_phase);
        let g_b = Complex64::from_polar(rate(self.g_b), self.g_b_phase);
        let omega = match self.drive {
            Drive::Ratio(r) => {
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::invalid(
                        "omega_ratio",
                        format!("must be finite and > 0, got {r}"),
                    ));
                }
                r * (self.n_atoms as f64).sqrt() * g_a.norm().max(g_b.norm())
            }
            Drive::Absolute(w) => rate(w),
        };
        let p = SystemParams {
            n_atoms: self.n_atoms,
            g_a,
            g_b,
            omega,
            phi: self.phi,
            kappa_a: rate(self.kappa_a),
            kappa_b: rate(self.kappa_b),
            gamma_1: rate(self.gamma_1),
            gamma_2: rate(self.gamma_2),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwapSection {
    pub backend: Backend,
    pub decay: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruthTableSection {
    pub backend: Backend,
    /// Evolution time as a fraction of the gate time `pi / (2 |xi|)`.
    pub time_fraction: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConversionSection {
    pub backend: Backend,
    pub samples: usize,
    /// Curve end as a fraction of the gate time.
    pub time_fraction: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSection {
    pub backend: Backend,
    pub grid: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RwaSection {
    pub multipliers: Vec<f64>,
}

/// `[units-report]`: experimental numbers, read under the run's unit
/// convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitsSection {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub n_atoms: u64,
    pub omega_ratio: f64,
    pub frequency_unit_hz: f64,
}

impl UnitsSection {
    pub fn to_inputs(&self, convention: UnitConvention) -> PhysicalInputs {
        PhysicalInputs {
            g: self.g,
            kappa: self.kappa,
            gamma: self.gamma,
            n_atoms: self.n_atoms,
            omega_ratio: self.omega_ratio,
            frequency_unit_hz: self.frequency_unit_hz,
            convention,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleSection {
    pub atoms: u64,
    pub seed: u64,
    pub decay: bool,
    pub samples: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub units: UnitConvention,
    pub threads: Option<usize>,
    pub out: Option<String>,
    pub params: ParamsSection,
    pub swap: SwapSection,
    pub truth_table: TruthTableSection,
    pub conversion: ConversionSection,
    pub sweep: SweepSection,
    pub rwa: RwaSection,
    pub units_report: UnitsSection,
    pub oracle: OracleSection,
    pub tolerance: f64,
    pub plot_data: bool,
}

impl RunConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        let reference = PhysicalInputs::reference();
        Self {
            experiment,
            units: experiment.default_units(),
            threads: None,
            out: None,
            params: ParamsSection::default(),
            swap: SwapSection {
                backend: Backend::Full,
                decay: true,
            },
            truth_table: TruthTableSection {
                backend: Backend::Effective,
                time_fraction: 1.0,
            },
            conversion: ConversionSection {
                backend: Backend::Effective,
                samples: 20,
                time_fraction: 2.0,
            },
            sweep: SweepSection {
                backend: Backend::Full,
                grid: vec![1.0, 2.0, 5.0, 10.0, 20.0],
            },
            rwa: RwaSection {
                multipliers: vec![5.0, 10.0, 20.0, 40.0],
            },
            units_report: UnitsSection {
                g: reference.g,
                kappa: reference.kappa,
                gamma: reference.gamma,
                n_atoms: reference.n_atoms,
                omega_ratio: reference.omega_ratio,
                frequency_unit_hz: reference.frequency_unit_hz,
            },
            oracle: OracleSection {
                atoms: 3,
                seed: 7,
                decay: true,
                samples: 16,
                max_deviation: 1e-8,
            },
            tolerance: DEFAULT_TOLERANCE,
            plot_data: true,
        }
    }

    pub fn system_params(&self) -> Result<SystemParams> {
        self.params.to_system_params(self.units)
    }

    /// Writes every field explicitly; [`parse_config`] reads it back unchanged.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "experiment = \"{}\"", self.experiment);
        let _ = writeln!(w, "units = \"{}\"", self.units);
        if let Some(t) = self.threads {
            let _ = writeln!(w, "threads = {t}");
        }
        if let Some(o) = &self.out {
            let _ = writeln!(w, "out = {}", toml::Value::String(o.clone()));
        }

        let p = &self.params;
        let _ = writeln!(w, "\n[params]");
        let _ = writeln!(w, "n_atoms = {}", p.n_atoms);
        let _ = writeln!(w, "g_a = {:?}", p.g_a);
        let _ = writeln!(w, "g_b = {:?}", p.g_b);
        let _ = writeln!(w, "g_a_phase = {:?}", p.g_a_phase);
        let _ = writeln!(w, "g_b_phase = {:?}", p.g_b_phase);
        match p.drive {
            Drive::Ratio(r) => writeln!(w, "omega_ratio = {r:?}"),
            Drive::Absolute(o) => writeln!(w, "omega = {o:?}"),
        }
        .ok();
        let _ = writeln!(w, "phi = {:?}", p.phi);
        let _ = writeln!(w, "kappa_a = {:?}", p.kappa_a);
        let _ = writeln!(w, "kappa_b = {:?}", p.kappa_b);
        let _ = writeln!(w, "gamma_1 = {:?}", p.gamma_1);
        let _ = writeln!(w, "gamma_2 = {:?}", p.gamma_2);
        let _ = writeln!(w, "frequency_unit_hz = {:?}", p.frequency_unit_hz);

        let _ = writeln!(w, "\n[swap]");
        let _ = writeln!(w, "backend = \"{}\"", self.swap.backend);
        let _ = writeln!(w, "decay = {}", self.swap.decay);

        let _ = writeln!(w, "\n[truth-table]");
        let _ = writeln!(w, "backend = \"{}\"", self.truth_table.backend);
        let _ = writeln!(w, "time_fraction = {:?}", self.truth_table.time_fraction);

        let _ = writeln!(w, "\n[conversion]");
        let _ = writeln!(w, "backend = \"{}\"", self.conversion.backend);
        let _ = writeln!(w, "samples = {}", self.conversion.samples);
        let _ = writeln!(w, "time_fraction = {:?}", self.conversion.time_fraction);

        let _ = writeln!(w, "\n[fig2-sweep]");
        let _ = writeln!(w, "backend = \"{}\"", self.sweep.backend);
        let _ = writeln!(w, "grid = {}", float_list(&self.sweep.grid));

        let _ = writeln!(w, "\n[rwa]");
        let _ = writeln!(w, "multipliers = {}", float_list(&self.rwa.multipliers));

        let u = &self.units_report;
        let _ = writeln!(w, "\n[units-report]");
        let _ = writeln!(w, "g = {:?}", u.g);
        let _ = writeln!(w, "kappa = {:?}", u.kappa);
        let _ = writeln!(w, "gamma = {:?}", u.gamma);
        let _ = writeln!(w, "n_atoms = {}", u.n_atoms);
        let _ = writeln!(w, "omega_ratio = {:?}", u.omega_ratio);
        let _ = writeln!(w, "frequency_unit_hz = {:?}", u.frequency_unit_hz);

        let o = &self.oracle;
        let _ = writeln!(w, "\n[oracle-check]");
        let _ = writeln!(w, "atoms = {}", o.atoms);
        let _ = writeln!(w, "seed = {}", o.seed);
        let _ = writeln!(w, "decay = {}", o.decay);
        let _ = writeln!(w, "samples = {}", o.samples);
        let _ = writeln!(w, "max_deviation = {:?}", o.max_deviation);

        let _ = writeln!(w, "\n[tolerance]");
        let _ = writeln!(w, "evolution = {:?}", self.tolerance);

        let _ = writeln!(w, "\n[output]");
        let _ = writeln!(w, "plot_data = {}", self.plot_data);
        s
    }
}

fn float_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

const TOP_KEYS: &[&str] = &["experiment", "units", "threads", "out"];
const SECTIONS: &[(&str, &[&str])] = &[
    (
        "params",
        &[
            "n_atoms",
            "g",
            "g_a",
            "g_b",
            "g_a_phase",
            "g_b_phase",
            "omega",
            "omega_ratio",
            "phi",
            "kappa",
            "kappa_a",
            "kappa_b",
            "gamma",
            "gamma_1",
            "gamma_2",
            "frequency_unit_hz",
        ],
    ),
    ("swap", &["backend", "decay"]),
    ("truth-table", &["backend", "time_fraction"]),
    ("conversion", &["backend", "samples", "time_fraction"]),
    ("fig2-sweep", &["backend", "grid"]),
    ("rwa", &["multipliers"]),
    (
        "units-report",
        &[
            "g",
            "kappa",
            "gamma",
            "n_atoms",
            "omega_ratio",
            "frequency_unit_hz",
        ],
    ),
    (
        "oracle-check",
        &["atoms", "seed", "decay", "samples", "max_deviation"],
    ),
    ("tolerance", &["evolution"]),
    ("output", &["plot_data"]),
];

/// Spells out Greek letters so `Ω_ratio` is compared as `omega_ratio`.
fn transliterate(key: &str) -> String {
    key.chars()
        .map(|c| match c {
            'Ω' | 'ω' => "omega".to_string(),
            'κ' => "kappa".to_string(),
            'γ' | 'Γ' => "gamma".to_string(),
            'φ' | 'ϕ' | 'Φ' => "phi".to_string(),
            _ => c.to_string(),
        })
        .collect()
}

fn suggestion(key: &str, valid: &[&str]) -> String {
    let key = transliterate(key);
    valid
        .iter()
        .map(|v| (strsim::levenshtein(&key, v), *v))
        .min()
        .map(|(_, v)| format!("; did you mean `{v}`? (valid: {})", valid.join(", ")))
        .unwrap_or_default()
}

/// Section name (`""` for top level) to ordered `(key, value, line)` entries.
type RawDoc = BTreeMap<String, Vec<(String, toml::Value, usize)>>;

fn parse_value(raw: &str, line: usize) -> Result<toml::Value> {
    let doc = format!("v = {raw}");
    let mut table: toml::Table = doc.parse().map_err(|e: toml::de::Error| {
        Error::Config(format!("line {line}: bad value `{raw}`: {}", e.message()))
    })?;
    Ok(table.remove("v").expect("key present"))
}

fn strip_comment(line: &str) -> &str {
    // `#` outside a quoted string starts a comment.
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn read_raw(text: &str) -> Result<RawDoc> {
    let mut doc = RawDoc::new();
    let mut section = String::new();
    doc.insert(section.clone(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| {
                    Error::Config(format!("line {lineno}: unterminated section header"))
                })?
                .trim();
            let names: Vec<&str> = SECTIONS.iter().map(|(n, _)| *n).collect();
            if !names.contains(&name) {
                return Err(Error::Config(format!(
                    "line {lineno}: unknown section `[{name}]`{}",
                    suggestion(name, &names)
                )));
            }
            section = name.to_string();
            doc.entry(section.clone()).or_default();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {lineno}: expected `key = value`")))?;
        let key = key.trim().trim_matches('"').to_string();
        if key.is_empty() || key.chars().any(char::is_whitespace) {
            return Err(Error::Config(format!("line {lineno}: bad key `{key}`")));
        }
        let valid: &[&str] = if section.is_empty() {
            TOP_KEYS
        } else {
            SECTIONS
                .iter()
                .find(|(n, _)| *n == section)
                .map(|(_, k)| *k)
                .expect("section validated")
        };
        if !valid.contains(&key.as_str()) {
            let scope = if section.is_empty() {
                "top level".to_string()
            } else {
                format!("[{section}]")
            };
            return Err(Error::Config(format!(
                "line {lineno}: unknown key `{key}` in {scope}{}",
                suggestion(&key, valid)
            )));
        }
        let entries = doc.get_mut(&section).expect("section inserted");
        if entries.iter().any(|(k, _, _)| *k == key) {
            return Err(Error::Config(format!(
                "line {lineno}: duplicate key `{key}`"
            )));
        }
        entries.push((key, parse_value(value.trim(), lineno)?, lineno));
    }
    Ok(doc)
}

struct Section<'a> {
    name: &'a str,
    entries: &'a [(String, toml::Value, usize)],
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<(&'a toml::Value, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, l)| (v, *l))
    }

    fn err(&self, key: &str, line: usize, what: &str) -> Error {
        let scope = if self.name.is_empty() {
            String::new()
        } else {
            format!("[{}] ", self.name)
        };
        Error::Config(format!("line {line}: {scope}`{key}` {what}"))
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some((toml::Value::Float(f), _)) => Ok(Some(*f)),
            Some((toml::Value::Integer(i), _)) => Ok(Some(*i as f64)),
            Some((_, l)) => Err(self.err(key, l, "must be a number")),
        }
    }

    fn nonneg(&self, key: &str) -> Result<Option<f64>> {
        match self.float(key)? {
            Some(v) if !(v.is_finite() && v >= 0.0) => {
                let (_, l) = self.get(key).expect("present");
                Err(self.err(key, l, &format!("must be finite and >= 0, got {v}")))
            }
            other => Ok(other),
        }
    }

    fn positive(&self, key: &str) -> Result<Option<f64>> {
        match self.float(key)? {
            Some(v) if !(v.is_finite() && v > 0.0) => {
                let (_, l) = self.get(key).expect("present");
                Err(self.err(key, l, &format!("must be finite and > 0, got {v}")))
            }
            other => Ok(other),
        }
    }

    fn uint(&self, key: &str) -> Result<Option<u64>> {
        match self.get(key) {
            None => Ok(None),
            Some((toml::Value::Integer(i), l)) => u64::try_from(*i)
                .map(Some)
                .map_err(|_| self.err(key, l, "must be >= 0")),
            Some((_, l)) => Err(self.err(key, l, "must be an integer")),
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>> {
        match self.get(key) {
            None => Ok(None),
            Some((toml::Value::Boolean(b), _)) => Ok(Some(*b)),
            Some((_, l)) => Err(self.err(key, l, "must be true or false")),
        }
    }

    fn string(&self, key: &str) -> Result<Option<&'a str>> {
        match self.get(key) {
            None => Ok(None),
            Some((toml::Value::String(s), _)) => Ok(Some(s.as_str())),
            Some((_, l)) => Err(self.err(key, l, "must be a quoted string")),
        }
    }

    fn parsed<T: FromStr<Err = Error>>(&self, key: &str) -> Result<Option<T>> {
        match self.string(key)? {
            None => Ok(None),
            Some(s) => {
                let (_, l) = self.get(key).expect("present");
                s.parse::<T>()
                    .map(Some)
                    .map_err(|e: Error| self.err(key, l, &e.to_string()))
            }
        }
    }

    fn floats(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.get(key) {
            None => Ok(None),
            Some((toml::Value::Array(items), l)) => items
                .iter()
                .map(|v| match v {
                    toml::Value::Float(f) => Ok(*f),
                    toml::Value::Integer(i) => Ok(*i as f64),
                    _ => Err(self.err(key, l, "must be an array of numbers")),
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some((_, l)) => Err(self.err(key, l, "must be an array of numbers")),
        }
    }

    /// Either the shorthand `both` or the pair `(first, second)`; mixing is an error.
    fn pair(&self, both: &str, first: &str, second: &str, def: (f64, f64)) -> Result<(f64, f64)> {
        let b = self.nonneg(both)?;
        let f = self.nonneg(first)?;
        let s = self.nonneg(second)?;
        match (b, f, s) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                let (_, l) = self.get(both).expect("present");
                Err(self.err(both, l, &format!("conflicts with `{first}`/`{second}`")))
            }
            (Some(v), None, None) => Ok((v, v)),
            (None, f, s) => Ok((f.unwrap_or(def.0), s.unwrap_or(def.1))),
        }
    }
}

/// Parses a config document. `experiment` must be present.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_inner(text, None)
}

/// Parses a config for a known experiment; an `experiment` key in the text,
/// if any, must agree.
pub fn parse_config_for(text: &str, experiment: Experiment) -> Result<RunConfig> {
    parse_config_inner(text, Some(experiment))
}

fn parse_config_inner(text: &str, forced: Option<Experiment>) -> Result<RunConfig> {
    let doc = read_raw(text)?;
    let empty = Vec::new();
    let section = |name: &'static str| Section {
        name,
        entries: doc.get(name).unwrap_or(&empty),
    };

    let top = section("");
    let named: Option<Experiment> = match top.string("experiment")? {
        Some(s) => Some(s.parse()?),
        None => None,
    };
    let experiment = match (forced, named) {
        (Some(f), Some(n)) if f != n => {
            return Err(Error::Config(format!(
                "config names experiment `{n}` but `{f}` was requested"
            )))
        }
        (Some(f), _) => f,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::Config(
                "missing required key `experiment` (one of swap, truth-table, conversion, \
                 fig2-sweep, rwa, units-report, oracle-check)"
                    .into(),
            ))
        }
    };

    let mut cfg = RunConfig::defaults(experiment);
    if let Some(u) = top.parsed::<UnitConvention>("units")? {
        cfg.units = u;
    }
    if let Some(t) = top.uint("threads")? {
        if t == 0 {
            let (_, l) = top.get("threads").expect("present");
            return Err(top.err("threads", l, "must be at least 1"));
        }
        cfg.threads = Some(t as usize);
    }
    cfg.out = top.string("out")?.map(str::to_string);

    let p = section("params");
    let d = ParamsSection::default();
    if let Some(n) = p.uint("n_atoms")? {
        if n == 0 {
            let (_, l) = p.get("n_atoms").expect("present");
            return Err(p.err("n_atoms", l, "must be at least 1"));
        }
        cfg.params.n_atoms = n;
    }
    (cfg.params.g_a, cfg.params.g_b) = p.pair("g", "g_a", "g_b", (d.g_a, d.g_b))?;
    cfg.params.g_a_phase = p.float("g_a_phase")?.unwrap_or(d.g_a_phase);
    cfg.params.g_b_phase = p.float("g_b_phase")?.unwrap_or(d.g_b_phase);
    cfg.params.drive = match (p.positive("omega_ratio")?, p.nonneg("omega")?) {
        (Some(_), Some(_)) => {
            let (_, l) = p.get("omega").expect("present");
            return Err(p.err("omega", l, "conflicts with `omega_ratio`"));
        }
        (Some(r), None) => Drive::Ratio(r),
        (None, Some(w)) => Drive::Absolute(w),
        (None, None) => d.drive,
    };
    cfg.params.phi = p.float("phi")?.unwrap_or(d.phi);
    (cfg.params.kappa_a, cfg.params.kappa_b) =
        p.pair("kappa", "kappa_a", "kappa_b", (d.kappa_a, d.kappa_b))?;
    (cfg.params.gamma_1, cfg.params.gamma_2) =
        p.pair("gamma", "gamma_1", "gamma_2", (d.gamma_1, d.gamma_2))?;
    if let Some(f) = p.positive("frequency_unit_hz")? {
        cfg.params.frequency_unit_hz = f;
    }

    let s = section("swap");
    if let Some(b) = s.parsed("backend")? {
        cfg.swap.backend = b;
    }
    if let Some(v) = s.boolean("decay")? {
        cfg.swap.decay = v;
    }

    let s = section("truth-table");
    if let Some(b) = s.parsed("backend")? {
        cfg.truth_table.backend = b;
    }
    if let Some(v) = s.nonneg("time_fraction")? {
        cfg.truth_table.time_fraction = v;
    }

    let s = section("conversion");
    if let Some(b) = s.parsed("backend")? {
        cfg.conversion.backend = b;
    }
    if let Some(v) = s.uint("samples")? {
        if v == 0 {
            let (_, l) = s.get("samples").expect("present");
            return Err(s.err("samples", l, "must be at least 1"));
        }
        cfg.conversion.samples = v as usize;
    }
    if let Some(v) = s.positive("time_fraction")? {
        cfg.conversion.time_fraction = v;
    }

    let s = section("fig2-sweep");
    if let Some(b) = s.parsed("backend")? {
        cfg.sweep.backend = b;
    }
    if let Some(g) = s.floats("grid")? {
        cfg.sweep.grid = g;
    }

    if let Some(m) = section("rwa").floats("multipliers")? {
        cfg.rwa.multipliers = m;
    }

    let s = section("units-report");
    let u = &mut cfg.units_report;
    u.g = s.positive("g")?.unwrap_or(u.g);
    u.kappa = s.positive("kappa")?.unwrap_or(u.kappa);
    u.gamma = s.positive("gamma")?.unwrap_or(u.gamma);
    u.n_atoms = s.uint("n_atoms")?.unwrap_or(u.n_atoms);
    u.omega_ratio = s.positive("omega_ratio")?.unwrap_or(u.omega_ratio);
    u.frequency_unit_hz = s
        .positive("frequency_unit_hz")?
        .unwrap_or(u.frequency_unit_hz);

    let s = section("oracle-check");
    let o = &mut cfg.oracle;
    o.atoms = s.uint("atoms")?.unwrap_or(o.atoms);
    o.seed = s.uint("seed")?.unwrap_or(o.seed);
    o.decay = s.boolean("decay")?.unwrap_or(o.decay);
    o.samples = s.uint("samples")?.map_or(o.samples, |v| v as usize);
    o.max_deviation = s.positive("max_deviation")?.unwrap_or(o.max_deviation);
    if o.atoms == 0 || o.samples == 0 {
        return Err(Error::Config(
            "[oracle-check] `atoms` and `samples` must be at least 1".into(),
        ));
    }

    if let Some(t) = section("tolerance").positive("evolution")? {
        if t > 1e-4 {
            return Err(Error::Config(
                "[tolerance] `evolution` must be <= 1e-4".into(),
            ));
        }
        cfg.tolerance = t;
    }
    if let Some(v) = section("output").boolean("plot_data")? {
        cfg.plot_data = v;
    }
    Ok(cfg)
}
