//! Named scenarios reproducing each figure's set of curves.
//!
//! A preset is a group of runs (`fig5b`); each run is also addressable on its
//! own by its scenario name (`fig5b-wdd-p3`). Presets default to the full
//! 2016-qubit grid and 1000 steps.

use crate::config::{PositionSpec, RunConfig, ScheduleKind, ScheduleSpec};
use qwalk_core::{TransientDirection, TransientShape};

/// What a preset produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Job {
    /// One `t,mean_SE` file per run.
    Series,
    /// `p,mean_SE_at_tref` per run.
    PScan { p_values: Vec<f64> },
    /// `dt,eta_ado2,eta_adoinf` per run, relative to the matching strong-disorder walk.
    EtaScan { blocks: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: String,
    pub description: &'static str,
    pub job: Job,
    pub runs: Vec<RunConfig>,
}

/// Block lengths dividing 500, so a 1000-step walk has equal ordered and disordered time.
pub const BALANCED_BLOCKS: [usize; 12] = [1, 2, 4, 5, 10, 20, 25, 50, 100, 125, 250, 500];

/// `count` evenly spaced probabilities covering `[0, 1]`.
pub fn uniform_p_values(count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![0.0],
        n => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

fn position_label(pos: PositionSpec) -> String {
    match pos {
        PositionSpec::Local => "local".into(),
        PositionSpec::Gaussian { sigma0, .. } => format!("gauss{sigma0}"),
    }
}

fn percent_label(p: f64) -> String {
    let pct = (p * 1000.0).round() / 10.0;
    format!("p{pct}")
}

fn run(name: String, schedule: ScheduleSpec, position: PositionSpec) -> RunConfig {
    RunConfig {
        scenario: name,
        schedule,
        position,
        ..RunConfig::default()
    }
}

fn kind(k: ScheduleKind) -> ScheduleSpec {
    ScheduleSpec::of(k)
}

fn with_dt(k: ScheduleKind, dt: usize) -> ScheduleSpec {
    ScheduleSpec { dt, ..kind(k) }
}

fn wdd(p: f64) -> ScheduleSpec {
    ScheduleSpec {
        p,
        ..kind(ScheduleKind::Wdd)
    }
}

fn transient(shape: TransientShape, direction: TransientDirection) -> ScheduleSpec {
    ScheduleSpec {
        transient: shape,
        direction,
        ..kind(ScheduleKind::Transient)
    }
}

fn series(name: &str, description: &'static str, runs: Vec<RunConfig>) -> Preset {
    Preset {
        name: name.into(),
        description,
        job: Job::Series,
        runs,
    }
}

/// Ordered walks, or strong disorder, from each initial position.
fn by_position(fig: &str, kinds: &[(ScheduleKind, &str)]) -> Vec<RunConfig> {
    let positions = [
        PositionSpec::Local,
        PositionSpec::gaussian(1.0),
        PositionSpec::gaussian(2.0),
        PositionSpec::gaussian(5.0),
        PositionSpec::gaussian(10.0),
    ];
    kinds
        .iter()
        .flat_map(|(k, label)| {
            positions.iter().map(move |pos| {
                run(
                    format!("{fig}-{label}-{}", position_label(*pos)),
                    kind(*k),
                    *pos,
                )
            })
        })
        .collect()
}

fn restart_order(fig: &str, pos: PositionSpec) -> Vec<RunConfig> {
    let mut runs = vec![
        run(format!("{fig}-sdd2"), kind(ScheduleKind::Sdd2), pos),
        run(format!("{fig}-sddinf"), kind(ScheduleKind::SddInf), pos),
    ];
    for (k, label) in [
        (ScheduleKind::Switch2, "switch2"),
        (ScheduleKind::SwitchInf, "switchinf"),
    ] {
        for t in [500, 250, 100, 50] {
            runs.push(run(format!("{fig}-{label}-t{t}"), with_dt(k, t), pos));
        }
    }
    runs
}

fn alternating(fig: &str, pos: PositionSpec) -> Vec<RunConfig> {
    let mut runs = Vec::new();
    for (k, label) in [
        (ScheduleKind::Ado2, "ado2"),
        (ScheduleKind::AdoInf, "adoinf"),
    ] {
        for dt in [10, 100] {
            runs.push(run(format!("{fig}-{label}-dt{dt}"), with_dt(k, dt), pos));
        }
    }
    runs.push(run(format!("{fig}-sdd2"), kind(ScheduleKind::Sdd2), pos));
    runs.push(run(
        format!("{fig}-sddinf"),
        kind(ScheduleKind::SddInf),
        pos,
    ));
    runs
}

fn weak(fig: &str, pos: PositionSpec, ps: &[f64]) -> Vec<RunConfig> {
    let mut runs: Vec<_> = ps
        .iter()
        .map(|p| run(format!("{fig}-wdd-{}", percent_label(*p)), wdd(*p), pos))
        .collect();
    runs.push(run(format!("{fig}-sdd2"), kind(ScheduleKind::Sdd2), pos));
    runs.push(run(
        format!("{fig}-hadamard"),
        kind(ScheduleKind::Hadamard),
        pos,
    ));
    runs
}

fn transients(fig: &str, direction: TransientDirection) -> Vec<RunConfig> {
    let pos = PositionSpec::gaussian(10.0);
    let mut runs: Vec<_> = [
        TransientShape::Quadratic,
        TransientShape::Linear,
        TransientShape::NegativeQuadratic,
    ]
    .into_iter()
    .map(|shape| {
        let label = crate::config::shape_name(shape);
        run(format!("{fig}-{label}"), transient(shape, direction), pos)
    })
    .collect();
    runs.push(run(format!("{fig}-wdd-p3"), wdd(0.03), pos));
    runs.push(run(format!("{fig}-sdd2"), kind(ScheduleKind::Sdd2), pos));
    runs.push(run(
        format!("{fig}-hadamard"),
        kind(ScheduleKind::Hadamard),
        pos,
    ));
    runs
}

/// Every preset, in figure order.
pub fn presets() -> Vec<Preset> {
    let local = PositionSpec::Local;
    let g10 = PositionSpec::gaussian(10.0);
    let mut all = vec![
        series(
            "fig1a",
            "ordered Hadamard and Fourier walks, local and Gaussian starts",
            by_position(
                "fig1a",
                &[
                    (ScheduleKind::Hadamard, "hadamard"),
                    (ScheduleKind::Fourier, "fourier"),
                ],
            ),
        ),
        series(
            "fig1b",
            "strong disorder (two-coin and SU(2)), local and Gaussian starts",
            by_position(
                "fig1b",
                &[
                    (ScheduleKind::Sdd2, "sdd2"),
                    (ScheduleKind::SddInf, "sddinf"),
                ],
            ),
        ),
        series(
            "fig1c",
            "strong disorder switching to Hadamard order, local start",
            restart_order("fig1c", local),
        ),
        series(
            "fig1d",
            "strong disorder switching to Hadamard order, Gaussian σ0=10",
            restart_order("fig1d", g10),
        ),
        series(
            "fig2a",
            "alternating disorder/order, local start",
            alternating("fig2a", local),
        ),
        series(
            "fig2b",
            "alternating disorder/order, Gaussian σ0=10",
            alternating("fig2b", g10),
        ),
    ];
    for (name, pos, description) in [
        ("fig2c", local, "η versus block length, local start"),
        ("fig2d", g10, "η versus block length, Gaussian σ0=10"),
    ] {
        all.push(Preset {
            name: name.into(),
            description,
            job: Job::EtaScan {
                blocks: BALANCED_BLOCKS.to_vec(),
            },
            runs: vec![run(name.into(), kind(ScheduleKind::Sdd2), pos)],
        });
    }
    all.extend([
        series(
            "fig3a",
            "weak disorder p = 12%, 25%, local start",
            weak("fig3a", local, &[0.12, 0.25]),
        ),
        series(
            "fig3b",
            "weak disorder p = 12%, 1%, 0.1%, local start",
            weak("fig3b", local, &[0.12, 0.01, 0.001]),
        ),
        series(
            "fig3c",
            "weak disorder p = 3%, 10%, 30%, Gaussian σ0=10",
            weak("fig3c", g10, &[0.03, 0.10, 0.30]),
        ),
        series(
            "fig3d",
            "weak disorder p = 3%, 1%, 0.5%, 0.1%, Gaussian σ0=10",
            weak("fig3d", g10, &[0.03, 0.01, 0.005, 0.001]),
        ),
    ]);
    all.push(Preset {
        name: "fig4".into(),
        description: "⟨S_E(100)⟩ versus constant Fourier probability p",
        job: Job::PScan {
            p_values: uniform_p_values(1000),
        },
        runs: [
            local,
            PositionSpec::gaussian(2.0),
            PositionSpec::gaussian(5.0),
            g10,
        ]
        .into_iter()
        .map(|pos| RunConfig {
            steps: 100,
            tref: 100,
            ..run(
                format!("fig4-{}", position_label(pos)),
                kind(ScheduleKind::Wdd),
                pos,
            )
        })
        .collect(),
    });
    all.push(series(
        "fig5a",
        "best cases from a local start",
        vec![
            run(
                "fig5a-ado2-dt100".into(),
                with_dt(ScheduleKind::Ado2, 100),
                local,
            ),
            run("fig5a-wdd-p12".into(), wdd(0.12), local),
            run("fig5a-sdd2".into(), kind(ScheduleKind::Sdd2), local),
            run("fig5a-hadamard".into(), kind(ScheduleKind::Hadamard), local),
        ],
    ));
    all.push(series(
        "fig5b",
        "best cases from a Gaussian σ0=10 start, with the periodic-Fourier control",
        vec![
            run(
                "fig5b-ado2-dt100".into(),
                with_dt(ScheduleKind::Ado2, 100),
                g10,
            ),
            run("fig5b-wdd-p3".into(), wdd(0.03), g10),
            run("fig5b-sdd2".into(), kind(ScheduleKind::Sdd2), g10),
            run(
                "fig5b-periodic-fourier-33".into(),
                with_dt(ScheduleKind::PeriodicFourier, 33),
                g10,
            ),
            run("fig5b-hadamard".into(), kind(ScheduleKind::Hadamard), g10),
        ],
    ));
    all.push(series(
        "fig6a",
        "time-dependent p(t), Hadamard to strong disorder, Gaussian σ0=10",
        transients("fig6a", TransientDirection::OrderToDisorder),
    ));
    all.push(series(
        "fig6b",
        "time-dependent p(t), strong disorder to Hadamard, Gaussian σ0=10",
        transients("fig6b", TransientDirection::DisorderToOrder),
    ));
    all
}

/// A whole preset, or the single run named `name` within its preset.
pub fn find(name: &str) -> Option<Preset> {
    let all = presets();
    if let Some(p) = all.iter().find(|p| p.name == name) {
        return Some(p.clone());
    }
    all.into_iter().find_map(|p| {
        p.runs
            .iter()
            .find(|r| r.scenario == name)
            .cloned()
            .map(|r| Preset {
                name: name.to_string(),
                description: p.description,
                job: p.job.clone(),
                runs: vec![r],
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_are_unique_and_valid() {
        let mut seen = HashSet::new();
        for p in presets() {
            assert!(seen.insert(p.name.clone()), "duplicate {}", p.name);
            for r in &p.runs {
                if p.runs.len() > 1 {
                    assert!(seen.insert(r.scenario.clone()), "duplicate {}", r.scenario);
                }
                r.ensemble()
                    .unwrap_or_else(|e| panic!("{}: {e}", r.scenario));
            }
        }
    }

    #[test]
    fn lookup_group_and_member() {
        assert_eq!(find("fig5b").unwrap().runs.len(), 5);
        let one = find("fig1a-hadamard-local").unwrap();
        assert_eq!(one.runs.len(), 1);
        assert_eq!(one.runs[0].schedule.kind, ScheduleKind::Hadamard);
        assert_eq!(one.runs[0].position, PositionSpec::Local);
        assert_eq!(find("fig3d-wdd-p0.5").unwrap().runs[0].schedule.p, 0.005);
        assert!(find("fig9").is_none());
    }

    #[test]
    fn pscan_grid() {
        let p = uniform_p_values(1000);
        assert_eq!(p.len(), 1000);
        assert_eq!((p[0], p[999]), (0.0, 1.0));
        match find("fig4").unwrap().job {
            Job::PScan { p_values } => assert_eq!(p_values.len(), 1000),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn balanced_blocks_divide_the_walk() {
        for b in BALANCED_BLOCKS {
            assert_eq!(1000 % (2 * b), 0);
        }
    }
}
