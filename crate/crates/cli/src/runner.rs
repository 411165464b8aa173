//! Runs configurations and presets, and writes their output files.
//!
//! For a scenario `name` in directory `out`:
//! - `name.csv`, `t,mean_SE[,stderr]`
//! - `name_pscan.csv`, `p,mean_SE_at_tref`
//! - `name_eta.csv`, `dt,eta_ado2,eta_adoinf`
//! - `name.meta` (or `name_pscan.meta`, `name_eta.meta`) with the config and run details

use std::fs;
use std::path::{Path, PathBuf};

use qwalk_core::{
    average_entanglement, average_over_sequence, best_p_scan, eta, generate_sequence_on_stream,
    stream_id, CoinSequence, EnsembleConfig, EnsembleResult64, PScan64,
};

use crate::config::{write_kv, RunConfig, ScheduleKind, ScheduleSpec};
use crate::error::{config_err, CliError, Result};
use crate::format::fmt_g17;
use crate::presets::{Job, Preset};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn series_csv(mean: &[f64], stderr: Option<&[f64]>) -> String {
    let mut out = String::from(if stderr.is_some() {
        "t,mean_SE,stderr\n"
    } else {
        "t,mean_SE\n"
    });
    for (t, m) in mean.iter().enumerate() {
        match stderr {
            Some(se) => out.push_str(&format!("{t},{},{}\n", fmt_g17(*m), fmt_g17(se[t]))),
            None => out.push_str(&format!("{t},{}\n", fmt_g17(*m))),
        }
    }
    out
}

pub fn pscan_csv(scan: &PScan64) -> String {
    let mut out = String::from("p,mean_SE_at_tref\n");
    for (p, v) in &scan.entries {
        out.push_str(&format!("{},{}\n", fmt_g17(*p), fmt_g17(*v)));
    }
    out
}

/// Config keys followed by run details.
pub fn meta_text(
    cfg: &RunConfig,
    ens: &EnsembleConfig,
    extra: &[(&'static str, String)],
) -> String {
    let mut kv = cfg.to_kv();
    kv.push(("code_version", CODE_VERSION.to_string()));
    kv.push(("grid_size", ens.grid.len().to_string()));
    kv.push(("schedule_descriptor", ens.schedule.to_string()));
    kv.extend(extra.iter().cloned());
    write_kv(&kv)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn output_path(cfg: &RunConfig, suffix: &str) -> PathBuf {
    cfg.out.join(format!("{}{suffix}", cfg.scenario))
}

/// Time series run; returns the result and the path of the series file.
pub fn run_series(cfg: &RunConfig) -> Result<(EnsembleResult64, PathBuf)> {
    let ens = cfg.ensemble()?;
    let res = average_entanglement::<f64>(&ens)?;
    let path = output_path(cfg, ".csv");
    write_file(&path, &series_csv(&res.mean_entropy, res.stderr.as_deref()))?;
    write_file(&output_path(cfg, ".meta"), &meta_text(cfg, &ens, &[]))?;
    Ok((res, path))
}

/// Constant-p scan at `cfg.tref`; the schedule in `cfg` is ignored.
pub fn run_pscan(cfg: &RunConfig, p_values: &[f64]) -> Result<(PScan64, PathBuf)> {
    if p_values.is_empty() {
        return config_err("p-list is empty");
    }
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return config_err(format!("p-list value {p} outside [0, 1]"));
    }
    let scan_cfg = RunConfig {
        schedule: ScheduleSpec {
            kind: ScheduleKind::Wdd,
            ..cfg.schedule
        },
        steps: cfg.tref,
        ..cfg.clone()
    };
    let ens = scan_cfg.ensemble()?;
    let scan = best_p_scan::<f64>(p_values, &ens, cfg.tref)?;
    let path = output_path(cfg, "_pscan.csv");
    write_file(&path, &pscan_csv(&scan))?;
    let (p_best, s_best) = scan.argmax().expect("nonempty scan");
    let extra = [
        ("p_count", scan.entries.len().to_string()),
        ("argmax_p", fmt_g17(p_best)),
        ("argmax_mean_SE", fmt_g17(s_best)),
    ];
    write_file(
        &output_path(cfg, "_pscan.meta"),
        &meta_text(&scan_cfg, &ens, &extra),
    )?;
    Ok((scan, path))
}

/// One row of an η scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaRow {
    pub dt: usize,
    pub eta_ado2: f64,
    pub eta_adoinf: f64,
}

/// η at `t_ref = cfg.steps` for each block length, against SDD₂ and SDD∞.
pub fn run_eta_scan(cfg: &RunConfig, blocks: &[usize]) -> Result<(Vec<EtaRow>, PathBuf)> {
    let with = |kind: ScheduleKind, dt: usize| RunConfig {
        schedule: ScheduleSpec {
            kind,
            dt,
            ..cfg.schedule
        },
        ..cfg.clone()
    };
    let run = |c: &RunConfig| -> Result<EnsembleResult64> {
        Ok(average_entanglement::<f64>(&c.ensemble()?)?)
    };
    let sdd2 = run(&with(ScheduleKind::Sdd2, cfg.schedule.dt))?;
    let sddinf = run(&with(ScheduleKind::SddInf, cfg.schedule.dt))?;
    let mut rows = Vec::with_capacity(blocks.len());
    for &dt in blocks {
        let ado2 = run(&with(ScheduleKind::Ado2, dt))?;
        let adoinf = run(&with(ScheduleKind::AdoInf, dt))?;
        rows.push(EtaRow {
            dt,
            eta_ado2: eta(&ado2, &sdd2, cfg.steps)?,
            eta_adoinf: eta(&adoinf, &sddinf, cfg.steps)?,
        });
    }
    let mut text = String::from("dt,eta_ado2,eta_adoinf\n");
    for r in &rows {
        text.push_str(&format!(
            "{},{},{}\n",
            r.dt,
            fmt_g17(r.eta_ado2),
            fmt_g17(r.eta_adoinf)
        ));
    }
    let path = output_path(cfg, "_eta.csv");
    write_file(&path, &text)?;
    let ens = cfg.ensemble()?;
    let extra = [
        ("t_ref", cfg.steps.to_string()),
        (
            "sdd2_mean_SE_at_tref",
            fmt_g17(sdd2.mean_entropy[cfg.steps]),
        ),
        (
            "sddinf_mean_SE_at_tref",
            fmt_g17(sddinf.mean_entropy[cfg.steps]),
        ),
    ];
    write_file(
        &output_path(cfg, "_eta.meta"),
        &meta_text(cfg, &ens, &extra),
    )?;
    Ok((rows, path))
}

/// Runs every member of a preset; returns the files written.
pub fn run_preset(preset: &Preset, adjust: impl Fn(&mut RunConfig)) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for base in &preset.runs {
        let mut cfg = base.clone();
        adjust(&mut cfg);
        let path = match &preset.job {
            Job::Series => run_series(&cfg)?.1,
            Job::PScan { p_values } => run_pscan(&cfg, p_values)?.1,
            Job::EtaScan { blocks } => run_eta_scan(&cfg, blocks)?.1,
        };
        written.push(path);
    }
    Ok(written)
}

/// Coin sequence of one realization, as used by every qubit under the shared policy.
pub fn realization_sequence(cfg: &RunConfig, realization: u32) -> Result<CoinSequence> {
    let ens = cfg.ensemble()?;
    Ok(generate_sequence_on_stream(
        &ens.schedule,
        ens.steps,
        ens.seed,
        stream_id(realization, 0),
    )?)
}

/// Grid average driven by an explicit sequence; `cfg.steps` is replaced by its length.
pub fn run_replay(
    cfg: &RunConfig,
    seq: &CoinSequence,
    source: &Path,
) -> Result<(Vec<f64>, PathBuf)> {
    let cfg = RunConfig {
        steps: seq.len(),
        ..cfg.clone()
    };
    let ens = cfg.ensemble()?;
    let mean = average_over_sequence::<f64>(&ens.grid, &ens.init, seq)?;
    let path = output_path(&cfg, ".csv");
    write_file(&path, &series_csv(&mean, None))?;
    let extra = [("replayed_sequence", source.display().to_string())];
    write_file(&output_path(&cfg, ".meta"), &meta_text(&cfg, &ens, &extra))?;
    Ok((mean, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        assert_eq!(series_csv(&[0.0, 0.5], None), "t,mean_SE\n0,0\n1,0.5\n");
        assert_eq!(
            series_csv(&[0.0, 0.5], Some(&[0.0, 0.25])),
            "t,mean_SE,stderr\n0,0,0\n1,0.5,0.25\n"
        );
        let scan = PScan64 {
            t_ref: 3,
            entries: vec![(0.0, 0.25), (1.0, 0.5)],
        };
        assert_eq!(pscan_csv(&scan), "p,mean_SE_at_tref\n0,0.25\n1,0.5\n");
    }

    #[test]
    fn meta_reads_back_as_config() {
        let cfg = RunConfig::default();
        let text = meta_text(&cfg, &cfg.ensemble().unwrap(), &[]);
        assert!(text.contains("grid_size = 2016\n"));
        assert!(text.contains(&format!("code_version = {CODE_VERSION}\n")));
        let config_part: String = text
            .lines()
            .filter(|l| {
                !l.starts_with("code_version")
                    && !l.starts_with("grid_size")
                    && !l.starts_with("schedule_descriptor")
            })
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(RunConfig::parse(&config_part, Path::new("m")).unwrap(), cfg);
    }
}
