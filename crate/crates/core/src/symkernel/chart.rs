use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("coordinate name `{0}` is not a valid identifier")]
    BadName(String),
    #[error("duplicate coordinate name `{0}`")]
    DuplicateName(String),
    #[error("chart must have at least one coordinate")]
    Empty,
    #[error("coordinate `{0}` not in chart {1}")]
    UnknownCoord(String, String),
}

/// A fixed ordered coordinate chart. Cheap to clone; equality is by the
/// ordered list of names.
#[derive(Clone, Eq)]
pub struct Chart {
    names: Arc<Vec<String>>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self, ChartError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ChartError::Empty);
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(ChartError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(ChartError::DuplicateName(n.clone()));
            }
        }
        Ok(Chart {
            names: Arc::new(names),
        })
    }

    /// Chart `x1, ..., xn` (or any other prefix).
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Chart::new((1..=n).map(|i| format!("{prefix}{i}")))
            .expect("numbered chart names are valid")
    }

    /// Phase-space chart `x1..xn, p1..pn`.
    pub fn canonical(n: usize) -> Self {
        let names = (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("p{i}")));
        Chart::new(names).expect("canonical chart names are valid")
    }

    /// Extends a base chart with conjugate momenta `p1..pn`.
    pub fn cotangent(base: &Chart) -> Result<Self, ChartError> {
        let n = base.dim();
        let momenta: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        for m in &momenta {
            if base.index_of(m).is_some() {
                return Err(ChartError::DuplicateName(m.clone()));
            }
        }
        Chart::new(base.names.iter().cloned().chain(momenta))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coord(&self, name: &str) -> Result<Coord, ChartError> {
        self.index_of(name)
            .map(|index| Coord {
                name: name.to_string(),
                index,
            })
            .ok_or_else(|| ChartError::UnknownCoord(name.to_string(), self.to_string()))
    }

    pub fn coord_at(&self, index: usize) -> Coord {
        Coord {
            name: self.names[index].clone(),
            index,
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.dim()).map(|i| self.coord_at(i))
    }

    /// First n names form the base (position) block of a 2n-dim phase chart.
    pub fn base_half(&self) -> Result<Chart, ChartError> {
        let n = self.dim() / 2;
        Chart::new(self.names[..n].iter().cloned())
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl std::hash::Hash for Chart {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart{self}")
    }
}

/// A named coordinate together with its fixed position in the chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coord {
    pub name: String,
    pub index: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            Chart::new(["x1", "x1"]),
            Err(ChartError::DuplicateName(_))
        ));
        assert!(matches!(
            Chart::new(["2x"]),
            Err(ChartError::BadName(_))
        ));
        assert!(matches!(Chart::new(Vec::<String>::new()), Err(ChartError::Empty)));
    }

    #[test]
    fn canonical_chart_layout() {
        let c = Chart::canonical(2);
        assert_eq!(c.names(), ["x1", "x2", "p1", "p2"]);
        assert_eq!(c.coord("p2").unwrap().index, 3);
    }

    #[test]
    fn cotangent_refuses_momentum_collision() {
        let base = Chart::new(["p1", "q"]).unwrap();
        assert!(Chart::cotangent(&base).is_err());
        let base = Chart::new(["y1", "y2"]).unwrap();
        assert_eq!(Chart::cotangent(&base).unwrap().names(), ["y1", "y2", "p1", "p2"]);
    }
}
