//! Point and line files.
//!
//! A dataset is a JSON record with optional `points` and `lines` keys.
//! Coordinates are exact rationals written as strings (`"3/4"`, `"-2"`);
//! bare JSON integers are accepted on input. Points have two or three
//! coordinates. A space line is `{"base": [..3], "dir": [..3]}`; a planar
//! line `a x + b y = c` is the triple `[a, b, c]`.

use std::path::Path;

use incidence_core::census::Configuration;
use incidence_core::{Line3, PlanarLine, PlanarPoint, Point3, Rat};
use serde::{Deserialize, Serialize};

use crate::parse::{format_rational, parse_rational, ParseError};

pub const DATASET_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{what} {index}: {source}")]
    Coordinate { what: &'static str, index: usize, source: ParseError },
    #[error("{what} {index}: expected {expected} coordinates, found {found}")]
    Dimension { what: &'static str, index: usize, expected: usize, found: usize },
    #[error("{what} {index}: {msg}")]
    Invalid { what: &'static str, index: usize, msg: String },
    #[error("dataset has no {0}")]
    Missing(&'static str),
}

/// A coordinate as read from or written to a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    fn value(&self) -> Result<Rat, ParseError> {
        match self {
            Coord::Text(s) => parse_rational(s),
            Coord::Int(n) => Ok(Rat::from_integer((*n).into())),
        }
    }
}

impl From<&Rat> for Coord {
    fn from(r: &Rat) -> Self {
        Coord::Text(format_rational(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LineRecord {
    Space { base: Vec<Coord>, dir: Vec<Coord> },
    Planar(Vec<Coord>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Dataset {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format_version: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<LineRecord>,
}

fn coords(what: &'static str, index: usize, raw: &[Coord], expected: usize) -> Result<Vec<Rat>, FormatError> {
    if raw.len() != expected {
        return Err(FormatError::Dimension { what, index, expected, found: raw.len() });
    }
    raw.iter().map(|c| c.value().map_err(|source| FormatError::Coordinate { what, index, source })).collect()
}

fn triple(v: Vec<Rat>) -> [Rat; 3] {
    let [a, b, c]: [Rat; 3] = v.try_into().expect("checked length");
    [a, b, c]
}

impl Dataset {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn points3(&self) -> Result<Vec<Point3>, FormatError> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let [x, y, z] = triple(coords("point", i, p, 3)?);
                Ok(Point3::new(x, y, z))
            })
            .collect()
    }

    pub fn points2(&self) -> Result<Vec<PlanarPoint>, FormatError> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let [x, y]: [Rat; 2] = coords("point", i, p, 2)?.try_into().expect("checked length");
                Ok(PlanarPoint::new(x, y))
            })
            .collect()
    }

    pub fn lines3(&self) -> Result<Vec<Line3>, FormatError> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                LineRecord::Space { base, dir } => {
                    let [x, y, z] = triple(coords("line base", i, base, 3)?);
                    let dir = triple(coords("line direction", i, dir, 3)?);
                    Line3::new(Point3::new(x, y, z), dir)
                        .map_err(|e| FormatError::Invalid { what: "line", index: i, msg: e.to_string() })
                }
                LineRecord::Planar(_) => {
                    Err(FormatError::Invalid { what: "line", index: i, msg: "expected a space line with base and dir".into() })
                }
            })
            .collect()
    }

    pub fn planar_lines(&self) -> Result<Vec<PlanarLine>, FormatError> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                LineRecord::Planar(c) => {
                    let [a, b, c] = triple(coords("planar line", i, c, 3)?);
                    PlanarLine::new(a, b, c).map_err(|e| FormatError::Invalid { what: "planar line", index: i, msg: e.to_string() })
                }
                LineRecord::Space { .. } => {
                    Err(FormatError::Invalid { what: "planar line", index: i, msg: "expected [a, b, c]".into() })
                }
            })
            .collect()
    }

    pub fn from_points3(points: &[Point3]) -> Self {
        Dataset { points: points.iter().map(|p| p.coords().iter().map(Coord::from).collect()).collect(), ..Self::versioned() }
    }

    pub fn from_points2(points: &[PlanarPoint]) -> Self {
        Dataset { points: points.iter().map(|p| p.0.iter().map(Coord::from).collect()).collect(), ..Self::versioned() }
    }

    pub fn with_lines3(mut self, lines: &[Line3]) -> Self {
        self.lines = lines
            .iter()
            .map(|l| LineRecord::Space {
                base: l.base().coords().iter().map(Coord::from).collect(),
                dir: l.dir().iter().map(Coord::from).collect(),
            })
            .collect();
        self
    }

    pub fn with_planar_lines(mut self, lines: &[PlanarLine]) -> Self {
        self.lines = lines.iter().map(|l| LineRecord::Planar(l.coeffs().iter().map(Coord::from).collect())).collect();
        self
    }

    /// The planar part of a configuration if it has one, else the space part.
    pub fn from_configuration(cfg: &Configuration) -> Self {
        if cfg.planar_points.is_empty() && cfg.planar_lines.is_empty() {
            Self::from_points3(&cfg.points).with_lines3(&cfg.lines)
        } else {
            Self::from_points2(&cfg.planar_points).with_planar_lines(&cfg.planar_lines)
        }
    }

    fn versioned() -> Self {
        Dataset { format_version: Some(DATASET_VERSION), ..Default::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use incidence_core::algebra::{int, rat};
    use incidence_core::census::{make_configuration, ConfigKind};

    #[test]
    fn reads_strings_and_integers() {
        let d = Dataset::from_json(r#"{"points": [["3/4", 0, "-2"]], "lines": [{"base": [0, 0, 0], "dir": ["1", "1/2", 0]}]}"#).unwrap();
        assert_eq!(d.points3().unwrap(), vec![Point3::new(rat(3, 4), int(0), int(-2))]);
        let l = &d.lines3().unwrap()[0];
        assert!(l.contains(&Point3::new(int(2), int(1), int(0))));
        assert!(matches!(d.points2(), Err(FormatError::Dimension { expected: 2, found: 3, .. })));
        assert!(matches!(d.planar_lines(), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn reports_bad_coordinates() {
        let d = Dataset::from_json(r#"{"points": [[0, 0, 0], ["1", "x", "0"]]}"#).unwrap();
        match d.points3() {
            Err(FormatError::Coordinate { index: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let d = Dataset::from_json(r#"{"lines": [{"base": [0, 0, 0], "dir": [0, 0, 0]}]}"#).unwrap();
        assert!(matches!(d.lines3(), Err(FormatError::Invalid { index: 0, .. })));
        assert!(Dataset::from_json(r#"{"points": [[1.5, 0]]}"#).is_err());
    }

    #[test]
    fn configurations_round_trip() {
        for kind in ConfigKind::ALL {
            let cfg = make_configuration(kind, 3, 7).unwrap();
            let back = Dataset::from_json(&Dataset::from_configuration(&cfg).to_json()).unwrap();
            if cfg.planar_points.is_empty() {
                assert_eq!(back.points3().unwrap(), cfg.points);
                assert_eq!(back.lines3().unwrap(), cfg.lines);
            } else {
                assert_eq!(back.points2().unwrap(), cfg.planar_points);
                assert_eq!(back.planar_lines().unwrap(), cfg.planar_lines);
            }
        }
    }
}
