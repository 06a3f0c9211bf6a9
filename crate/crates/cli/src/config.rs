//! Run configuration: which potential, orbit constants or grids, output options.
//!
//! A JSON config file uses the flag names as keys, for example
//! `{"henon": "mu=1,beta=1", "xi": -0.25, "lambda": 0.5, "format": "json"}`.
//! Flags given on the command line override the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use isochrone::{GaugeTerm, GenericPotential, ParabolaParams, RadialPotential};
use serde::Deserialize;

use crate::exit::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `lo:hi:n`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|k| {
                if k + 1 == self.n {
                    self.hi
                } else {
                    self.lo + step * k as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("grid '{s}' must look like lo:hi:n"));
        };
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad grid start '{lo}'"))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad grid end '{hi}'"))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count '{n}'"))?;
        if n == 0 {
            return Err("grid must have at least one point".into());
        }
        if !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
            return Err(format!("grid '{s}' needs finite lo < hi"));
        }
        Ok(Grid { lo, hi, n })
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `key=value,key=value` with numeric values.
fn key_values(s: &str) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{item}'"))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| format!("value of '{k}' is not a number: '{v}'"))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(format!("'{k}' given twice"));
        }
    }
    Ok(out)
}

fn take(kv: &mut BTreeMap<String, f64>, key: &str, what: &str) -> Result<f64, String> {
    kv.remove(key).ok_or_else(|| format!("{what} needs {key}="))
}

fn finish(kv: BTreeMap<String, f64>, what: &str) -> Result<(), String> {
    match kv.keys().next() {
        Some(k) => Err(format!("{what} does not take '{k}'")),
        None => Ok(()),
    }
}

/// The potential as written by the user.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Latin([f64; 5]),
    Kepler { mu: f64 },
    Harmonic { omega: f64 },
    Henon { mu: f64, beta: f64 },
    Bounded { mu: f64, beta: f64 },
    Hollowed { mu: f64, beta: f64 },
    Plummer { mu: f64, b: f64 },
}

impl PotentialSpec {
    pub fn parse(kind: &str, arg: &str) -> Result<Self, String> {
        if kind == "latin" {
            let vals: Vec<f64> = arg
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| format!("latin entry '{t}' is not a number"))
                })
                .collect::<Result<_, _>>()?;
            let arr: [f64; 5] = vals
                .try_into()
                .map_err(|v: Vec<f64>| format!("latin needs 5 numbers, got {}", v.len()))?;
            return Ok(PotentialSpec::Latin(arr));
        }
        let mut kv = key_values(arg)?;
        let what = format!("--{kind}");
        let spec = match kind {
            "kepler" => PotentialSpec::Kepler {
                mu: take(&mut kv, "mu", &what)?,
            },
            "harmonic" => PotentialSpec::Harmonic {
                omega: take(&mut kv, "omega", &what)?,
            },
            "henon" | "bounded" | "hollowed" => {
                let mu = take(&mut kv, "mu", &what)?;
                let beta = take(&mut kv, "beta", &what)?;
                match kind {
                    "henon" => PotentialSpec::Henon { mu, beta },
                    "bounded" => PotentialSpec::Bounded { mu, beta },
                    _ => PotentialSpec::Hollowed { mu, beta },
                }
            }
            "plummer" => {
                let b = take(&mut kv, "b", &what)?;
                let mu = kv.remove("mu").unwrap_or(1.0);
                PotentialSpec::Plummer { mu, b }
            }
            _ => return Err(format!("unknown potential '{kind}'")),
        };
        finish(kv, &what)?;
        Ok(spec)
    }

    fn is_named(&self) -> bool {
        !matches!(self, PotentialSpec::Latin(_))
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::Latin(l) => {
                write!(f, "latin {},{},{},{},{}", l[0], l[1], l[2], l[3], l[4])
            }
            PotentialSpec::Kepler { mu } => write!(f, "kepler mu={mu}"),
            PotentialSpec::Harmonic { omega } => write!(f, "harmonic omega={omega}"),
            PotentialSpec::Henon { mu, beta } => write!(f, "henon mu={mu},beta={beta}"),
            PotentialSpec::Bounded { mu, beta } => write!(f, "bounded mu={mu},beta={beta}"),
            PotentialSpec::Hollowed { mu, beta } => write!(f, "hollowed mu={mu},beta={beta}"),
            PotentialSpec::Plummer { mu, b } => write!(f, "plummer mu={mu},b={b}"),
        }
    }
}

pub fn parse_gauge(arg: &str) -> Result<GaugeTerm, String> {
    let mut kv = key_values(arg)?;
    let g = GaugeTerm {
        eps_gauge: kv.remove("eps").unwrap_or(0.0),
        lam_gauge: kv.remove("lam").unwrap_or(0.0),
    };
    finish(kv, "--gauge")?;
    Ok(g)
}

/// A potential ready for evaluation.
pub enum Potential {
    Parabola { params: ParabolaParams, named: bool },
    Generic(GenericPotential),
}

impl Potential {
    pub fn radial(&self) -> &dyn RadialPotential {
        match self {
            Potential::Parabola { params, .. } => params,
            Potential::Generic(g) => g,
        }
    }

    pub fn parabola(&self) -> Option<&ParabolaParams> {
        match self {
            Potential::Parabola { params, .. } => Some(params),
            Potential::Generic(_) => None,
        }
    }
}

/// Settings after merging the config file and the flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub latin: Option<String>,
    pub kepler: Option<String>,
    pub harmonic: Option<String>,
    pub henon: Option<String>,
    pub bounded: Option<String>,
    pub hollowed: Option<String>,
    pub plummer: Option<String>,
    pub gauge: Option<String>,
    pub xi: Option<f64>,
    pub lambda: Option<f64>,
    pub xi_grid: Option<Grid>,
    pub lambda_grid: Option<Grid>,
    pub samples: Option<usize>,
    pub periods: Option<f64>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub bertrand: Option<bool>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::invalid(format!("config {}: {e}", path.display())))
    }

    fn potential_slots(&self) -> [(&'static str, &Option<String>); 7] {
        [
            ("latin", &self.latin),
            ("kepler", &self.kepler),
            ("harmonic", &self.harmonic),
            ("henon", &self.henon),
            ("bounded", &self.bounded),
            ("hollowed", &self.hollowed),
            ("plummer", &self.plummer),
        ]
    }

    fn has_potential(&self) -> bool {
        self.potential_slots().iter().any(|(_, v)| v.is_some())
    }

    /// Fields set in `flags` win; a potential given by flags replaces the file's entirely.
    pub fn overridden_by(mut self, flags: RunConfig) -> RunConfig {
        if flags.has_potential() {
            self.latin = flags.latin;
            self.kepler = flags.kepler;
            self.harmonic = flags.harmonic;
            self.henon = flags.henon;
            self.bounded = flags.bounded;
            self.hollowed = flags.hollowed;
            self.plummer = flags.plummer;
        }
        macro_rules! over {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        over!(
            gauge,
            xi,
            lambda,
            xi_grid,
            lambda_grid,
            samples,
            periods,
            format,
            tol,
            bertrand
        );
        self
    }

    pub fn potential_spec(&self) -> Result<PotentialSpec, Failure> {
        let given: Vec<(&str, &String)> = self
            .potential_slots()
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|s| (k, s)))
            .collect();
        match given[..] {
            [(kind, arg)] => PotentialSpec::parse(kind, arg).map_err(Failure::invalid),
            [] => Err(Failure::invalid(
                "no potential given; use one of --latin, --kepler, --harmonic, --henon, --bounded, --hollowed, --plummer",
            )),
            _ => Err(Failure::invalid(format!(
                "exactly one potential must be given, got {}",
                given.iter().map(|(k, _)| format!("--{k}")).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn potential(&self) -> Result<Potential, Failure> {
        let spec = self.potential_spec()?;
        let params = match spec {
            PotentialSpec::Plummer { mu, b } => {
                if self.gauge.is_some() {
                    return Err(Failure::invalid(
                        "--gauge applies to parabola potentials only",
                    ));
                }
                return Ok(Potential::Generic(GenericPotential::plummer(mu, b)?));
            }
            PotentialSpec::Latin(l) => ParabolaParams::from_latin(l)?,
            PotentialSpec::Kepler { mu } => ParabolaParams::kepler(mu)?,
            PotentialSpec::Harmonic { omega } => ParabolaParams::harmonic(omega)?,
            PotentialSpec::Henon { mu, beta } => ParabolaParams::henon(mu, beta)?,
            PotentialSpec::Bounded { mu, beta } => ParabolaParams::bounded(mu, beta)?,
            PotentialSpec::Hollowed { mu, beta } => ParabolaParams::hollowed(mu, beta)?,
        };
        let named = spec.is_named();
        let params = match &self.gauge {
            Some(g) => params.apply_gauge(parse_gauge(g).map_err(Failure::invalid)?)?,
            None => params,
        };
        Ok(Potential::Parabola { params, named })
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn xi_values(&self) -> Option<Vec<f64>> {
        self.xi_grid
            .map(|g| g.values())
            .or(self.xi.map(|x| vec![x]))
    }

    pub fn lambda_values(&self) -> Option<Vec<f64>> {
        self.lambda_grid
            .map(|g| g.values())
            .or(self.lambda.map(|l| vec![l]))
    }

    pub fn single_orbit(&self) -> Result<(f64, f64), Failure> {
        match (self.xi, self.lambda) {
            (Some(x), Some(l)) => Ok((x, l)),
            _ => Err(Failure::invalid("this command needs --xi and --lambda")),
        }
    }
}
