use serde::Deserialize;
use std::path::{Path, PathBuf};
use superqg::cartan::{self, datum_from_cartan, CartanSuperdatum, Weight};
use superqg::params::{ParamFamily, ParamSpec};
use superqg::qhs::{QParams, TTerm};
use thiserror::Error;

/// Exit 1 for a failed check, exit 2 for unusable configuration.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Config(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Check(_) => "check_failed",
            CliError::Config(_) => "config",
        }
    }
}

impl From<superqg::Error> for CliError {
    fn from(e: superqg::Error) -> Self {
        match e {
            superqg::Error::Inconsistent(_) => CliError::Check(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Either a full datum or `{name, a, d, parity}` with the rest derived.
#[derive(Deserialize)]
#[serde(untagged)]
enum DatumFile {
    Full(CartanSuperdatum),
    Short {
        #[serde(default)]
        name: String,
        a: Vec<Vec<i64>>,
        d: Vec<i64>,
        parity: Vec<u8>,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub datum: Option<PathBuf>,
    pub params: Option<String>,
    pub lambda: Option<Vec<i64>>,
    pub cutoff: usize,
    pub seed: u64,
    pub fuzz: usize,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.cutoff == 0 {
            return Err(CliError::Config("--cutoff must be positive".into()));
        }
        if self.preset.is_some() && self.datum.is_some() {
            return Err(CliError::Config("give either --preset or --datum, not both".into()));
        }
        Ok(())
    }

    /// The datum without validation; `Err` only for unreadable input.
    pub fn raw_datum(&self) -> CliResult<superqg::Result<CartanSuperdatum>> {
        match (&self.preset, &self.datum) {
            (_, Some(path)) => Ok(match parse_json::<DatumFile>(path)? {
                DatumFile::Full(d) => d.validate().map(|_| d),
                DatumFile::Short { name, a, d, parity } => datum_from_cartan(&name, a, d, parity),
            }),
            (Some(name), None) => Ok(cartan::preset(name)),
            (None, None) => Err(CliError::Config("a datum is required: --preset NAME or --datum FILE".into())),
        }
    }

    pub fn datum(&self) -> CliResult<CartanSuperdatum> {
        Ok(self.raw_datum()??)
    }

    pub fn family(&self, datum: &CartanSuperdatum) -> CliResult<ParamFamily> {
        self.family_or(datum, "Uqsg")
    }

    /// `--params` is a preset name or a JSON file holding a family; `default` when absent.
    pub fn family_or(&self, datum: &CartanSuperdatum, default: &str) -> CliResult<ParamFamily> {
        let name = self.params.as_deref().unwrap_or(default);
        let path = Path::new(name);
        let spec = if path.is_file() { parse_json::<ParamSpec>(path)? } else { ParamSpec::Preset { preset: name.to_string() } };
        Ok(spec.resolve(datum)?)
    }

    pub fn lambda(&self, datum: &CartanSuperdatum) -> CliResult<Weight> {
        let l = self.lambda.clone().ok_or_else(|| CliError::Config("--lambda is required".into()))?;
        if l.len() != datum.dim_p() {
            return Err(CliError::Config(format!("--lambda needs {} coordinates", datum.dim_p())));
        }
        Ok(Weight(l))
    }

    /// Quiver Hecke parameters: the preset built from the datum, or a JSON list of terms.
    pub fn qparams(&self, datum: &CartanSuperdatum, terms: Option<&Path>) -> CliResult<QParams> {
        match terms {
            None => Ok(QParams::preset(datum)?),
            Some(p) => Ok(QParams::from_terms(datum, &parse_json::<Vec<TTerm>>(p)?)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig { preset: Some("A2".into()), datum: None, params: None, lambda: Some(vec![1, 1]), cutoff: 3, seed: 1, fuzz: 10 }
    }

    #[test]
    fn library_errors_split_by_kind() {
        assert_eq!(CliError::from(superqg::Error::Inconsistent("x".into())).code(), 1);
        assert_eq!(CliError::from(superqg::Error::UnknownPreset("x".into())).code(), 2);
        assert_eq!(CliError::from(superqg::Error::Parse("x".into())).code(), 2);
    }

    #[test]
    fn validation() {
        assert!(cfg().validate().is_ok());
        assert!(RunConfig { cutoff: 0, ..cfg() }.validate().is_err());
        assert!(RunConfig { datum: Some("d.json".into()), ..cfg() }.validate().is_err());
    }

    #[test]
    fn lambda_length_follows_the_datum() {
        let d = cfg().datum().unwrap();
        assert_eq!(cfg().lambda(&d).unwrap().0, vec![1, 1]);
        assert!(RunConfig { lambda: Some(vec![1]), ..cfg() }.lambda(&d).is_err());
        assert!(RunConfig { lambda: None, ..cfg() }.lambda(&d).is_err());
    }

    #[test]
    fn params_default_and_unknown() {
        let d = cfg().datum().unwrap();
        assert!(cfg().family(&d).is_ok());
        let bad = RunConfig { params: Some("nope".into()), ..cfg() };
        assert_eq!(bad.family(&d).unwrap_err().code(), 2);
    }
}
