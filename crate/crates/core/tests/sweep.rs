use std::fs;

use rifsim::kinematics::Tag;
use rifsim::pipeline::{run_sweep, write_artifacts, SweepConfig};
use rifsim::{ModeLabel, Side};

fn config(points: usize) -> SweepConfig {
    let mut c = SweepConfig::default();
    c.grid.points = points;
    c
}

#[test]
fn flux_balances_at_every_point() {
    let a = run_sweep(&config(400)).unwrap();
    assert_eq!(a.failures(), 0);
    for r in &a.rows {
        let d = r.result.as_ref().unwrap();
        assert!(d.balance_defect < 1e-10, "{} at {}", d.balance_defect, r.omega);
    }
}

#[test]
fn output_bytes_do_not_depend_on_thread_count() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut c = config(300);
    c.dump_modes = true;
    c.dump_smatrix = true;
    c.jobs = 1;
    let f1 = write_artifacts(&run_sweep(&c).unwrap(), d1.path()).unwrap();
    c.jobs = 4;
    let f2 = write_artifacts(&run_sweep(&c).unwrap(), d2.path()).unwrap();
    assert_eq!(f1, f2);
    for name in &f1 {
        assert_eq!(fs::read(d1.path().join(name)).unwrap(), fs::read(d2.path().join(name)).unwrap(), "{name:?}");
    }
}

#[test]
fn no_step_means_no_emission() {
    let mut c = config(200);
    c.medium.delta_n = 0.0;
    c.dump_smatrix = true;
    let a = run_sweep(&c).unwrap();
    assert_eq!(a.failures(), 0);
    for r in &a.rows {
        let d = r.result.as_ref().unwrap();
        assert!(d.flux.iter().all(|&x| x < 1e-14));
        let m = d.smatrix.as_ref().unwrap();
        let n = m.in_basis.len();
        for (i, o) in m.out_basis.iter().enumerate() {
            for (j, inp) in m.in_basis.iter().enumerate() {
                let want = if o.tag == inp.tag { 1.0 } else { 0.0 };
                assert!((m.entries[i * n + j] - want).norm() < 1e-12, "{o} <- {inp} at {}", r.omega);
            }
        }
    }
}

#[test]
fn every_file_carries_the_config_header() {
    let d = tempfile::tempdir().unwrap();
    let files = write_artifacts(&run_sweep(&config(50)).unwrap(), d.path()).unwrap();
    for name in files.iter().filter(|n| n.extension().is_some_and(|e| e == "csv")) {
        let text = fs::read_to_string(d.path().join(name)).unwrap();
        assert!(text.starts_with("# rif-sweep output"), "{name:?}");
        assert!(text.contains("# left_elastic_constants = ["), "{name:?}");
        assert!(text.contains("# j_convention = "), "{name:?}");
    }
}

#[test]
fn spectra_has_one_line_per_grid_point() {
    let d = tempfile::tempdir().unwrap();
    let a = run_sweep(&config(120)).unwrap();
    write_artifacts(&a, d.path()).unwrap();
    let text = fs::read_to_string(d.path().join("spectra.csv")).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 121);
    let cols = body[0].split(',').count();
    assert!(body.iter().all(|l| l.split(',').count() == cols));
    let nol = format!("phi_{}", ModeLabel::new(Tag::No, Side::Left));
    assert!(body[0].split(',').any(|h| h == nol));
}

#[test]
fn fast_front_rows_carry_no_scenario() {
    let mut c = config(20);
    c.medium.u_over_c = 0.8;
    let a = run_sweep(&c).unwrap();
    assert_eq!(a.rows.len(), 20);
    assert!(a.rows.iter().all(|r| r.scenario.is_none()));
}

#[test]
fn failed_points_are_written_as_gap_rows() {
    let d = tempfile::tempdir().unwrap();
    let mut a = run_sweep(&config(30)).unwrap();
    a.rows[7].result = Err("solver gave up, twice".into());
    assert_eq!(a.failures(), 1);
    write_artifacts(&a, d.path()).unwrap();
    let text = fs::read_to_string(d.path().join("spectra.csv")).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 31);
    let gap = body[8];
    assert!(gap.contains(",failed,"));
    assert!(gap.ends_with("\"solver gave up, twice\""));
    assert_eq!(gap.matches(',').count() - 1, body[0].matches(',').count());
}
