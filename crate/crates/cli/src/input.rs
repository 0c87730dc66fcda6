use serde::{Deserialize, Serialize};
use vgit::polycore::{parse_q, GramForm};
use vgit::{QVector, State, StateFamily, WeightSystem, Q};

use crate::CliError;

/// A rational entry: a JSON integer or a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    fn value(&self, field: &str) -> Result<Q, CliError> {
        match self {
            Rational::Int(n) => Ok(Q::from_integer((*n).into())),
            Rational::Text(s) => parse_q(s).map_err(|e| CliError::schema(format!("{field}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub label: String,
    pub coords: Vec<i64>,
}

fn default_degree_bound() -> i64 {
    24
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_degree_bound")]
    pub degree_bound: i64,
    #[serde(default)]
    pub grid: i64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_bound: default_degree_bound(),
            grid: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    /// Free text, ignored by every command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub rank: usize,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queries: Option<Vec<Vec<Rational>>>,
    #[serde(default)]
    pub options: Options,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub ws: WeightSystem,
    pub family: StateFamily,
    pub queries: Vec<QVector>,
    pub options: Options,
}

pub fn parse(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::schema(format!("invalid document: {e}")))
}

fn int_matrix(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

pub fn rational_vector(v: &[Rational], field: &str) -> Result<QVector, CliError> {
    Ok(QVector::new(
        v.iter().map(|x| x.value(field)).collect::<Result<_, _>>()?,
    ))
}

impl InputDocument {
    pub fn load(&self) -> Result<Loaded, CliError> {
        let weights = self
            .weights
            .iter()
            .map(|w| (w.label.clone(), QVector::from_ints(&w.coords)))
            .collect();
        let mut ws =
            WeightSystem::new(self.rank, weights).map_err(|e| CliError::schema(format!("weights: {e}")))?;
        if let Some(form) = &self.form {
            let b = form
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| x.value(&format!("form[{i}][{j}]")))
                        .collect::<Result<Vec<Q>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if b.len() != self.rank {
                return Err(CliError::schema(format!(
                    "form: expected a {r}x{r} matrix, got {} rows",
                    b.len(),
                    r = self.rank
                )));
            }
            let form = GramForm::new(b).map_err(|e| CliError::schema(format!("form: {e}")))?;
            ws = ws
                .with_form(form)
                .map_err(|e| CliError::schema(format!("form: {e}")))?;
        }
        if let Some(weyl) = &self.weyl {
            let mats = weyl.iter().map(|m| int_matrix(m)).collect();
            ws = ws
                .with_weyl(mats)
                .map_err(|e| CliError::schema(format!("weyl: {e}")))?;
        }
        let family = match &self.states {
            None => StateFamily::AllSubsets,
            Some(list) => {
                let states = list
                    .iter()
                    .enumerate()
                    .map(|(k, labels)| {
                        ws.state_of_labels(labels)
                            .map_err(|e| CliError::schema(format!("states[{k}]: {e}")))
                    })
                    .collect::<Result<Vec<State>, _>>()?;
                StateFamily::explicit(&ws, states).map_err(|e| CliError::schema(format!("states: {e}")))?
            }
        };
        let queries = self
            .queries
            .iter()
            .flatten()
            .enumerate()
            .map(|(k, q)| {
                let field = format!("queries[{k}]");
                let v = rational_vector(q, &field)?;
                if v.dim() != self.rank {
                    return Err(CliError::schema(format!(
                        "{field}: has {} coordinates, expected {}",
                        v.dim(),
                        self.rank
                    )));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if self.options.degree_bound < 1 {
            return Err(CliError::schema("options.degree_bound: must be at least 1"));
        }
        if self.options.grid < 0 {
            return Err(CliError::schema("options.grid: must be nonnegative"));
        }
        Ok(Loaded {
            ws,
            family,
            queries,
            options: self.options.clone(),
        })
    }
}

/// Parse `"a/b,c/d"`.
pub fn parse_theta(text: &str, rank: usize) -> Result<QVector, CliError> {
    let coords = text
        .split(',')
        .map(|t| parse_q(t).map_err(|e| CliError::schema(format!("--theta: {e}"))))
        .collect::<Result<Vec<Q>, _>>()?;
    if coords.len() != rank {
        return Err(CliError::schema(format!(
            "--theta: has {} coordinates, expected {rank}",
            coords.len()
        )));
    }
    Ok(QVector::new(coords))
}
