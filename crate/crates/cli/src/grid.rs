//! Sweep ranges and coupling resolution.

use zigzag_core::model::ladder::{Boundary, UniformCouplings};
use zigzag_core::SpinValue;

use crate::CliError;

pub const VARIABLES: [&str; 4] = ["J", "Jp", "J2", "J2p"];

fn var_index(name: &str) -> Result<usize, CliError> {
    VARIABLES
        .iter()
        .position(|v| *v == name.trim())
        .ok_or_else(|| CliError::Config(format!("unknown coupling `{name}` (expected one of {VARIABLES:?})")))
}

/// `min:max:steps`, both ends included.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("bad range `{text}` (expected min:max:steps)"));
    let parts: Vec<&str> = text.split(':').collect();
    let [min, max, steps] = parts.as_slice() else {
        return Err(bad());
    };
    let min: f64 = min.trim().parse().map_err(|_| bad())?;
    let max: f64 = max.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if !min.is_finite() || !max.is_finite() || steps == 0 {
        return Err(bad());
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    // trimmed to 12 significant digits so that grid values print cleanly
    let clean = |x: f64| format!("{x:.11e}").parse::<f64>().expect("formatted float");
    Ok((0..steps)
        .map(|i| if i + 1 == steps { max } else { clean(min + h * i as f64) })
        .collect())
}

pub fn parse_spins(list: &[String]) -> Result<Vec<SpinValue>, CliError> {
    list.iter()
        .map(|s| s.parse::<SpinValue>().map_err(|e| CliError::Config(e.to_string())))
        .collect()
}

pub fn parse_boundary(text: &str) -> Result<Boundary, CliError> {
    match text {
        "periodic" => Ok(Boundary::Periodic),
        "open" => Ok(Boundary::Open),
        _ => Err(CliError::Config(format!("unknown boundary `{text}`"))),
    }
}

/// `LHS = [a*]VAR[/b]` or `LHS = number`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    target: usize,
    coef: f64,
    source: Option<usize>,
}

impl Relation {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Config(format!("bad relation `{text}` (e.g. J2=Jp/2)"));
        let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
        let target = var_index(lhs)?;
        let rhs = rhs.trim();
        if let Ok(v) = rhs.parse::<f64>() {
            return Ok(Self {
                target,
                coef: v,
                source: None,
            });
        }
        let (body, den) = match rhs.split_once('/') {
            Some((b, d)) => (b, d.trim().parse::<f64>().map_err(|_| bad())?),
            None => (rhs, 1.0),
        };
        let (num, var) = match body.split_once('*') {
            Some((a, v)) => match a.trim().parse::<f64>() {
                Ok(a) => (a, v),
                Err(_) => (v.trim().parse::<f64>().map_err(|_| bad())?, a),
            },
            None => (1.0, body),
        };
        Ok(Self {
            target,
            coef: num / den,
            source: Some(var_index(var)?),
        })
    }
}

/// One coupling assignment plus the sweep coordinates that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub coords: Vec<f64>,
    pub couplings: UniformCouplings,
}

/// Row-major Cartesian product of the sweeps, with fixed values applied
/// first and the derived relation last. `J2p` follows `J2` unless set.
#[derive(Debug, Clone)]
pub struct Grid {
    pub axes: Vec<(usize, Vec<f64>)>,
    pub fixed: Vec<Relation>,
    pub line: Option<Relation>,
    pub defaults: [Option<f64>; 4],
}

impl Grid {
    pub fn new(sweep: &[String], fixed: &[String], line: Option<&str>) -> Result<Self, CliError> {
        if sweep.len() % 2 != 0 {
            return Err(CliError::Config("--sweep takes VAR RANGE pairs".into()));
        }
        let axes = sweep
            .chunks(2)
            .map(|p| Ok((var_index(&p[0])?, parse_range(&p[1])?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let fixed = fixed
            .iter()
            .map(|f| {
                let r = Relation::parse(f)?;
                if r.source.is_some() {
                    return Err(CliError::Config(format!("--fixed needs a number: `{f}`")));
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let line = line.map(Relation::parse).transpose()?;
        Ok(Self {
            axes,
            fixed,
            line,
            defaults: [Some(1.0), Some(0.0), Some(0.0), None],
        })
    }

    pub fn axis_names(&self) -> Vec<&'static str> {
        self.axes.iter().map(|(i, _)| VARIABLES[*i]).collect()
    }

    pub fn points(&self) -> Vec<GridPoint> {
        let mut coords: Vec<Vec<f64>> = vec![vec![]];
        for (_, values) in &self.axes {
            coords = coords
                .into_iter()
                .flat_map(|c| {
                    values.iter().map(move |&v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        coords
            .into_iter()
            .map(|c| {
                let mut vals = self.defaults;
                for f in &self.fixed {
                    vals[f.target] = Some(f.coef);
                }
                for ((i, _), &v) in self.axes.iter().zip(&c) {
                    vals[*i] = Some(v);
                }
                if let Some(r) = &self.line {
                    let src = match r.source {
                        None => 1.0,
                        Some(3) => vals[3].or(vals[2]).unwrap_or(0.0),
                        Some(s) => vals[s].unwrap_or(0.0),
                    };
                    vals[r.target] = Some(r.coef * src);
                }
                let j2 = vals[2].unwrap_or(0.0);
                GridPoint {
                    coords: c,
                    couplings: UniformCouplings {
                        j: vals[0].unwrap_or(1.0),
                        jp: vals[1].unwrap_or(0.0),
                        j2,
                        j2p: vals[3].unwrap_or(j2),
                    },
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = parse_range("0:0.9:19").unwrap();
        assert_eq!(r.len(), 19);
        assert_eq!(r[18], 0.9);
        assert!((r[1] - 0.05).abs() < 1e-15);
        assert_eq!(parse_range("0.6:0.6:1").unwrap(), vec![0.6]);
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
    }

    #[test]
    fn relations() {
        let g = Grid::new(&["Jp".into(), "0:1:3".into()], &[], Some("J2=Jp/2")).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 3);
        assert_eq!(p[2].couplings, UniformCouplings::dimer_line(1.0, 1.0));
        let g = Grid::new(&["J2".into(), "0:1:2".into()], &["Jp=0.6".into()], None).unwrap();
        assert_eq!(g.points()[1].couplings, UniformCouplings::symmetric(1.0, 0.6, 1.0));
        assert!(Relation::parse("Jp=2*J2").is_ok());
        assert!(Relation::parse("K=1").is_err());
    }

    #[test]
    fn cartesian_order() {
        let g = Grid::new(&["Jp".into(), "0:1:2".into(), "J2".into(), "0:1:3".into()], &[], None).unwrap();
        let c: Vec<Vec<f64>> = g.points().into_iter().map(|p| p.coords).collect();
        assert_eq!(c[0], vec![0.0, 0.0]);
        assert_eq!(c[1], vec![0.0, 0.5]);
        assert_eq!(c[3], vec![1.0, 0.0]);
    }
}
