//! One table builder per subcommand.

use std::sync::{Arc, OnceLock};

use zigzag_core::exact::{eigen_solvers, fidelity_landscape, local_references, low_spectrum, EdOptions};
use zigzag_core::exact::ground::{ed_departure_point, relative_energy};
use zigzag_core::meanfield::{classical_phase, phase_with_dimer};
use zigzag_core::model::ladder::{uniform_spec, LadderSpec, UniformCouplings};
use zigzag_core::perturb::{
    critical_coupling, critical_coupling_bisect, gap_estimate, resummed_energies, sector_table, SectorFamily,
};
use zigzag_core::rpa::{dimer_rpa_dispersion, rpa_methods, spiral_rpa_blocks, spiral_rpa_spectrum};
use zigzag_core::SpinValue;

use crate::args::{EdArgs, FidelityArgs, GridArgs, PerturbArgs, PhaseArgs, RpaArgs};
use crate::grid::{parse_boundary, parse_range, parse_spins, Grid};
use crate::table::{num, opt, Job, Row, Table};
use crate::CliError;

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn coupling_cells(c: &UniformCouplings) -> Row {
    [c.j, c.jp, c.j2, c.j2p].iter().map(|v| v.to_string()).collect()
}

fn spin_key(spin: SpinValue, coords: &[f64]) -> Row {
    let mut key = vec![spin.to_string()];
    key.extend(coords.iter().map(|v| v.to_string()));
    key
}

/// Spin-by-grid points of the ED-backed commands.
struct Points {
    axes: Vec<&'static str>,
    items: Vec<(SpinValue, Vec<f64>, UniformCouplings)>,
}

impl Points {
    fn new(g: &GridArgs) -> Result<Self, CliError> {
        let grid = Grid::new(&g.sweep, &g.fixed, g.line.as_deref())?;
        let spins = parse_spins(&g.spins)?;
        let points = grid.points();
        let items = spins
            .iter()
            .flat_map(|&s| points.iter().map(move |p| (s, p.coords.clone(), p.couplings)))
            .collect();
        Ok(Self {
            axes: grid.axis_names(),
            items,
        })
    }

    fn header(&self, tail: &[&str]) -> Vec<String> {
        let mut h = vec!["spin".to_string()];
        h.extend(self.axes.iter().map(|a| format!("sweep_{a}")));
        h.extend(strings(&["J", "Jp", "J2", "J2p"]));
        h.extend(strings(tail));
        h
    }
}

fn ed_options(solver: &str, full_sweep: bool) -> Result<EdOptions, CliError> {
    eigen_solvers().get(solver).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(EdOptions {
        solver: solver.to_string(),
        full_sweep,
        ..EdOptions::default()
    })
}

fn level_rows(prefix: &Row, spec: &LadderSpec, n: usize, opts: &EdOptions) -> zigzag_core::Result<Vec<Row>> {
    let spectrum = low_spectrum(spec, n, opts)?;
    let group_of = |i: usize| spectrum.degeneracy_groups.iter().position(|g| g.contains(&i)).unwrap_or(0);
    Ok(spectrum
        .levels
        .iter()
        .take(n)
        .enumerate()
        .map(|(i, l)| {
            let mut row = prefix.clone();
            row.extend([i.to_string(), num(l.energy), l.twice_sz.to_string(), group_of(i).to_string()]);
            row
        })
        .collect())
}

pub fn ed(a: &EdArgs) -> Result<Table, CliError> {
    let opts = ed_options(&a.solver, a.full_sweep)?;
    if let Some(path) = &a.spec {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let spec = LadderSpec::from_json(&text).map_err(|e| CliError::Config(e.to_string()))?;
        let levels = a.levels.unwrap_or(1);
        let key = vec![spec.spin().to_string()];
        return Ok(Table {
            header: strings(&["spin", "level", "energy", "twice_sz", "group"]),
            jobs: vec![Job::new(key.clone(), move || level_rows(&key, &spec, levels, &opts))],
        });
    }
    let points = Points::new(&a.grid)?;
    let boundary = parse_boundary(&a.grid.boundary)?;
    let n_rungs = a.grid.rungs;
    let header = match a.levels {
        Some(_) => points.header(&["level", "energy", "twice_sz", "group"]),
        None => points.header(&["ground_energy", "dimer_energy", "relative"]),
    };
    let levels = a.levels;
    let jobs = points
        .items
        .into_iter()
        .map(|(spin, coords, c)| {
            let key = spin_key(spin, &coords);
            let opts = opts.clone();
            Job::new(key.clone(), move || {
                let spec = uniform_spec(n_rungs, spin, c, boundary)?;
                let mut prefix = key.clone();
                prefix.extend(coupling_cells(&c));
                match levels {
                    Some(n) => level_rows(&prefix, &spec, n, &opts),
                    None => {
                        let (eg, ed, rel) = relative_energy(&spec, &opts)?;
                        prefix.extend([num(eg), num(ed), num(rel)]);
                        Ok(vec![prefix])
                    }
                }
            })
        })
        .collect();
    Ok(Table { header, jobs })
}

pub fn phase(a: &PhaseArgs) -> Result<Table, CliError> {
    let spin: SpinValue = a.spin.parse().map_err(|e: zigzag_core::Error| CliError::Config(e.to_string()))?;
    let (jps, j2s) = (parse_range(&a.jp)?, parse_range(&a.j2)?);
    let with_dimer = a.with_dimer;
    let mut jobs = Vec::with_capacity(jps.len() * j2s.len());
    for &jp in &jps {
        for &j2 in &j2s {
            let key = vec![jp.to_string(), j2.to_string()];
            jobs.push(Job::new(key.clone(), move || {
                let c = UniformCouplings::symmetric(1.0, jp, j2);
                let p = if with_dimer {
                    phase_with_dimer(&c, spin)
                } else {
                    classical_phase(&c, spin)
                };
                let mut row = key.clone();
                row.extend([
                    p.label.to_string(),
                    num(p.energy_per_rung),
                    opt(p.angles.map(|x| x.theta)),
                    opt(p.angles.map(|x| x.phi)),
                ]);
                Ok(vec![row])
            }));
        }
    }
    Ok(Table {
        header: strings(&["Jp", "J2", "label", "energy_per_rung", "theta", "phi"]),
        jobs,
    })
}

fn flag(b: bool) -> String {
    u8::from(b).to_string()
}

pub fn rpa(a: &RpaArgs) -> Result<Table, CliError> {
    let spin: SpinValue = a.spin.parse().map_err(|e: zigzag_core::Error| CliError::Config(e.to_string()))?;
    if a.rungs == 0 {
        return Err(CliError::Config("--rungs must be positive".into()));
    }
    if a.dispersion {
        let s = dimer_rpa_dispersion(a.gamma, a.rungs);
        let jobs = (0..a.rungs)
            .map(|i| {
                let row = vec![
                    i.to_string(),
                    num(s.momenta[i]),
                    num(s.branches[0][i]),
                    flag(s.zero_mode[i]),
                    flag(s.unstable[i]),
                ];
                Job::new(vec![i.to_string()], move || Ok(vec![row.clone()]))
            })
            .collect();
        return Ok(Table {
            header: strings(&["k_index", "k", "omega", "zero_mode", "unstable"]),
            jobs,
        });
    }
    if a.spiral {
        let c = UniformCouplings::symmetric(1.0, a.jp, a.j2);
        let angles = classical_phase(&c, spin)
            .angles
            .ok_or_else(|| CliError::Config("no classical angles".into()))?;
        if !spiral_rpa_blocks(0.0, &angles, &c, spin).stationary {
            log::warn!("angles {angles:?} are not stationary");
        }
        let s = spiral_rpa_spectrum(&angles, &c, spin, a.rungs);
        let jobs = (0..a.rungs)
            .map(|i| {
                let row = vec![
                    i.to_string(),
                    num(s.momenta[i]),
                    num(s.branches[0][i]),
                    num(s.branches[1][i]),
                    flag(s.zero_mode[i]),
                    flag(s.unstable[i]),
                ];
                Job::new(vec![i.to_string()], move || Ok(vec![row.clone()]))
            })
            .collect();
        return Ok(Table {
            header: strings(&["k_index", "k", "omega_minus", "omega_plus", "zero_mode", "unstable"]),
            jobs,
        });
    }
    let methods: Vec<String> = match a.method.as_str() {
        "all" => rpa_methods().names().iter().map(|s| s.to_string()).collect(),
        name => {
            rpa_methods().get(name).map_err(|e| CliError::Config(e.to_string()))?;
            vec![name.to_string()]
        }
    };
    let mut grid = Grid::new(&a.sweep, &a.fixed, a.line.as_deref())?;
    grid.defaults = [Some(1.0), Some(a.jp), Some(a.j2), None];
    let axes = grid.axis_names();
    let points = grid.points();
    let (with_ed, ed_rungs) = (a.with_ed, a.ed_rungs);
    let mut header = strings(&["method", "spin"]);
    header.extend(axes.iter().map(|a| format!("sweep_{a}")));
    header.extend(strings(&[
        "J",
        "Jp",
        "J2",
        "J2p",
        "mf_energy",
        "rpa_energy",
        "dimer_energy",
        "mf_ratio",
        "rpa_ratio",
        "ed_energy",
        "ed_ratio",
    ]));
    let mut jobs = Vec::new();
    for method in methods {
        for p in &points {
            let mut key = vec![method.clone()];
            key.extend(spin_key(spin, &p.coords));
            let (c, method) = (p.couplings, method.clone());
            jobs.push(Job::new(key.clone(), move || {
                let registry = rpa_methods();
                let est = registry.get(&method)?.estimate(&c, spin)?;
                let dimer = -c.j * spin.casimir();
                let exact = if with_ed {
                    let spec = uniform_spec(ed_rungs, spin, c, zigzag_core::model::ladder::Boundary::Periodic)?;
                    Some(zigzag_core::exact::ground_state_full(&spec, &EdOptions::default())?.energy / ed_rungs as f64)
                } else {
                    None
                };
                let ratio = |e: f64| e / dimer.abs();
                let mut row = key.clone();
                row.extend(coupling_cells(&c));
                row.extend([
                    num(est.mean_field),
                    opt(est.rpa),
                    num(dimer),
                    num(ratio(est.mean_field)),
                    opt(est.rpa.map(ratio)),
                    opt(exact),
                    opt(exact.map(ratio)),
                ]);
                Ok(vec![row])
            }));
        }
    }
    Ok(Table { header, jobs })
}

pub fn perturb(a: &PerturbArgs) -> Result<Table, CliError> {
    let spin: SpinValue = a.spin.parse().map_err(|e: zigzag_core::Error| CliError::Config(e.to_string()))?;
    if a.sectors {
        let x = a.jp;
        let mut jobs = Vec::new();
        for s in sector_table(a.rungs) {
            let (family, index) = match s.family {
                SectorFamily::Dimer => ("dimer", 0),
                SectorFamily::OneExcitation { mu } => ("one-exc", mu),
                SectorFamily::TwoExcitation { distance } => ("two-exc", distance),
            };
            let key = vec![family.to_string(), index.to_string(), s.j_total.to_string(), s.k.to_string()];
            jobs.push(Job::new(key.clone(), move || {
                let mut row = key.clone();
                row.extend([s.epsilon.to_string(), num(s.energy(spin, x)?)]);
                Ok(vec![row])
            }));
        }
        for (family, epsilon) in [("resum-pair", 2), ("resum-single", 1)] {
            let key = strings(&[family, "0", "", "0"]);
            jobs.push(Job::new(key.clone(), move || {
                let r = resummed_energies(spin, x)?;
                let mut row = key.clone();
                let e = if epsilon == 2 { r.pair } else { r.single };
                row.extend([epsilon.to_string(), num(e)]);
                Ok(vec![row])
            }));
        }
        return Ok(Table {
            header: strings(&["family", "index", "j_total", "k", "epsilon", "energy"]),
            jobs,
        });
    }
    if a.with_ed {
        let n_rungs = a.rungs;
        let departure: Arc<OnceLock<Option<f64>>> = Arc::new(OnceLock::new());
        let opts = EdOptions::default();
        let jobs = parse_range(&a.jp_grid)?
            .into_iter()
            .map(|x| {
                let (departure, opts) = (departure.clone(), opts.clone());
                Job::new(vec![x.to_string()], move || {
                    let g = gap_estimate(spin, x)?;
                    let spec = uniform_spec(
                        n_rungs,
                        spin,
                        UniformCouplings::dimer_line(1.0, x),
                        zigzag_core::model::ladder::Boundary::Periodic,
                    )?;
                    let gap_ed = low_spectrum(&spec, 4, &opts)?.gap();
                    let dep = *departure.get_or_init(|| {
                        ed_departure_point(spin, n_rungs, 1.5, 30, 1e-4, &opts).unwrap_or_else(|e| {
                            log::error!("departure scan failed: {e}");
                            None
                        })
                    });
                    let mut row = vec![x.to_string()];
                    for name in [
                        "one_exc",
                        "two_exc_j1",
                        "two_exc_j2",
                        "two_exc_far",
                        "resum_pair",
                        "resum_single",
                    ] {
                        row.push(opt(g.sector(name)));
                    }
                    row.extend([num(g.gap), opt(gap_ed), opt(dep)]);
                    Ok(vec![row])
                })
            })
            .collect();
        return Ok(Table {
            header: strings(&[
                "jp_over_j",
                "dE_one_exc",
                "dE_two_exc_j1",
                "dE_two_exc_j2",
                "dE_two_exc_far",
                "dE_resum_pair",
                "dE_resum_single",
                "gap_perturbative",
                "gap_ed",
                "ed_departure",
            ]),
            jobs,
        });
    }
    let jobs = parse_spins(&a.spins)?
        .into_iter()
        .map(|s| {
            Job::new(vec![s.to_string()], move || {
                let c = critical_coupling(s)?;
                let b = critical_coupling_bisect(s, 1e-13)?;
                Ok(vec![vec![s.to_string(), num(c.jp_over_j), flag(c.valid), num(b)]])
            })
        })
        .collect();
    Ok(Table {
        header: strings(&["spin", "jp_o", "valid", "jp_o_bisection"]),
        jobs,
    })
}

pub fn fidelity(a: &FidelityArgs) -> Result<Table, CliError> {
    local_references()
        .get(&a.reference)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let points = Points::new(&a.grid)?;
    let boundary = parse_boundary(&a.grid.boundary)?;
    let n_rungs = a.grid.rungs;
    let header = points.header(&["ground_energy", "fidelity"]);
    let jobs = points
        .items
        .into_iter()
        .map(|(spin, coords, c)| {
            let key = spin_key(spin, &coords);
            let reference = a.reference.clone();
            Job::new(key.clone(), move || {
                let spec = uniform_spec(n_rungs, spin, c, boundary)?;
                let rows = fidelity_landscape(&[(coords.clone(), spec)], &reference, &EdOptions::default())?;
                let r = rows.into_iter().next().expect("one point")?;
                let mut row = key.clone();
                row.extend(coupling_cells(&c));
                row.extend([num(r.ground_energy), num(r.fidelity)]);
                Ok(vec![row])
            })
        })
        .collect();
    Ok(Table { header, jobs })
}
