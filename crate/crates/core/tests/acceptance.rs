//! Exit-gate checks. One PASS/FAIL line per criterion; non-zero exit when
//! any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;

use fci::chern::{chern_loop, chern_plaquette, LoopSpec};
use fci::classical::{
    count_min_energy_configs_dp, enumerate_ground_states, enumerate_ground_states_with, green_sites,
    CouplingConstants, EnumerationOptions, Mode, OccupationConfig, PairCounts,
};
use fci::composite::{aligned_specs, build_total_hopping, composite_chern, translation_check, ChernMethod};
use fci::ed::{composite_many_body_chern, is_strictly_decreasing, slater_chern, strong_coupling_scan, TwistGrid};
use fci::hk::{analytic_spectrum, hermitian_eigenvalues, realspace_hamiltonian, HkLatticeSize, HkParams};
use fci::lattice::{SublatticeId, TorusLattice};

type Outcome = Result<String, String>;

fn params(t1: f64, t2: f64, td: f64) -> HkParams {
    HkParams::new(t1, t2, td).expect("finite parameters")
}

fn sgn_ratio(td: f64, t1: f64) -> i64 {
    if (td > 0.0) == (t1 > 0.0) {
        1
    } else {
        -1
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn within(label: &str, elapsed: Duration, bound: Duration) -> Result<(), String> {
    if elapsed > bound {
        return Err(format!("{label} took {:.2} s, bound {:.0} s", elapsed.as_secs_f64(), bound.as_secs_f64()));
    }
    Ok(())
}

fn chern_formula() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut count = 0;
    for t1 in [-1.0, -0.5, 0.5, 1.0] {
        for t2 in [0.5, 1.0, 2.0] {
            for td in [-2.0, -1.0, -0.25, 0.25, 1.0, 2.0] {
                let (r, dt) = timed(|| chern_plaquette(&params(t1, t2, td), 24));
                let c = r.map_err(|e| format!("({t1},{t2},{td}): {e}"))?;
                if c.chern != sgn_ratio(td, t1) {
                    return Err(format!("({t1},{t2},{td}): got {}, want {}", c.chern, sgn_ratio(td, t1)));
                }
                within(&format!("({t1},{t2},{td})"), dt, Duration::from_secs(1))?;
                worst = worst.max(dt);
                count += 1;
            }
        }
    }
    Ok(format!("{count}/72 points equal sgn(td/t1), slowest {:.3} s", worst.as_secs_f64()))
}

fn loop_integral() -> Outcome {
    let spec = LoopSpec::new(0.05, 2048).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for td in [1.0, -1.0, 0.25, -0.25] {
        let p = params(1.0, 1.0, td);
        let integer = chern_plaquette(&p, 24).map_err(|e| e.to_string())?.chern;
        let (r, dt) = timed(|| chern_loop(&p, &spec));
        let value = r.map_err(|e| e.to_string())?;
        let err = (value - integer as f64).abs();
        if !(err <= 0.05) {
            return Err(format!("td = {td}: loop {value}, integer {integer}"));
        }
        within(&format!("td = {td}"), dt, Duration::from_secs(1))?;
        worst = worst.max(err);
    }
    Ok(format!("max |loop - C| = {worst:.2e}"))
}

fn bloch_consistency() -> Outcome {
    let (diff, dt) = timed(|| {
        let p = params(1.0, 1.0, 0.5);
        let size = HkLatticeSize::new(4, 4).expect("size");
        let real = hermitian_eigenvalues(&realspace_hamiltonian(&p, size, (0.0, 0.0)));
        let bands = analytic_spectrum(&p, size);
        real.iter().zip(&bands).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    });
    within("spectrum", dt, Duration::from_secs(1))?;
    if !(diff <= 1e-10) {
        return Err(format!("max deviation {diff:e}"));
    }
    Ok(format!("max deviation {diff:.2e}"))
}

fn classical_degeneracy() -> Outcome {
    let l4 = TorusLattice::new(4, 4).map_err(|e| e.to_string())?;
    let couplings = CouplingConstants::new(1.0, 1.0).map_err(|e| e.to_string())?;
    let (r, dt) = timed(|| enumerate_ground_states(&l4, 4, couplings, Mode::Numeric));
    let report = r.map_err(|e| e.to_string())?;
    within("brute force", dt, Duration::from_secs(1))?;
    if report.degeneracy != 4 || report.min_pair_counts != PairCounts::default() {
        return Err(format!(
            "brute force: degeneracy {} at {:?}",
            report.degeneracy, report.min_pair_counts
        ));
    }
    let dp4 = count_min_energy_configs_dp(&l4, 4).map_err(|e| e.to_string())?;
    if dp4 != 4 {
        return Err(format!("transfer counter on 4x4 gives {dp4}"));
    }
    let l8 = TorusLattice::new(8, 8).map_err(|e| e.to_string())?;
    let (r, dt8) = timed(|| count_min_energy_configs_dp(&l8, 16));
    let dp8 = r.map_err(|e| e.to_string())?;
    within("transfer counter 8x8", dt8, Duration::from_secs(60))?;
    if dp8 != 4 {
        return Err(format!("transfer counter on 8x8 at n = 16 gives {dp8}, expected 4"));
    }
    Ok(format!(
        "4x4 brute 4 ({:.3} s), 4x4 transfer 4, 8x8 transfer {dp8} ({:.2} s)",
        dt.as_secs_f64(),
        dt8.as_secs_f64()
    ))
}

fn filling_three_eighths() -> Outcome {
    let l = TorusLattice::new(4, 4).map_err(|e| e.to_string())?;
    let couplings = CouplingConstants::new(100.0, 1.0).map_err(|e| e.to_string())?;
    let options = EnumerationOptions {
        list_cap: 64,
        ..EnumerationOptions::default()
    };
    let (r, dt) = timed(|| enumerate_ground_states_with(&l, 6, couplings, Mode::Lexicographic, options));
    let report = r.map_err(|e| e.to_string())?;
    within("enumeration", dt, Duration::from_secs(5))?;
    if report.min_pair_counts != (PairCounts { m1: 0, m2: 8 }) || report.degeneracy != 24 {
        return Err(format!(
            "minimum {:?} with {} minimizers",
            report.min_pair_counts, report.degeneracy
        ));
    }
    for entry in &report.configurations {
        let config = OccupationConfig(entry.mask.parse::<u128>().map_err(|e| e.to_string())?);
        let matched = SublatticeId::ALL.iter().any(|&id| {
            let pattern = OccupationConfig::from_sites(l.sublattice_sites(id));
            let green = OccupationConfig::from_sites(green_sites(id, &l));
            (config.0 & pattern.0) == pattern.0 && (config.0 & green.0).count_ones() == 2
        });
        if !matched {
            return Err(format!("minimizer {} is not a sector pattern plus two green sites", entry.mask));
        }
    }
    Ok(format!("minimum (0, 8), 24 minimizers checked ({:.3} s)", dt.as_secs_f64()))
}

fn composite_quantization() -> Outcome {
    let plus = params(1.0, 1.0, 1.0);
    let minus = params(1.0, 1.0, -1.0);
    let (r, dt) = timed(|| {
        let mixed = composite_chern(&aligned_specs([plus, plus, plus, minus]), ChernMethod::Plaquette { grid: 24 }, None)?;
        let uniform = composite_chern(&aligned_specs([plus; 4]), ChernMethod::Plaquette { grid: 24 }, None)?;
        Ok::<_, fci::Error>((mixed.average, uniform.average))
    });
    let (mixed, uniform) = r.map_err(|e| e.to_string())?;
    within("composite", dt, Duration::from_secs(1))?;
    if mixed != Ratio::new(1, 2) || uniform != Ratio::from_integer(1) {
        return Err(format!("averages {mixed} and {uniform}"));
    }
    Ok(format!("(+,+,+,-) -> {mixed}, (+,+,+,+) -> {uniform}"))
}

fn translation_symmetry() -> Outcome {
    let l = TorusLattice::new(8, 8).map_err(|e| e.to_string())?;
    let plus = params(1.0, 1.0, 1.0);
    let minus = params(1.0, 1.0, -1.0);
    let (r, dt) = timed(|| {
        let mixed = build_total_hopping(&l, &aligned_specs([plus, plus, plus, minus]), (0.0, 0.0))?;
        let uniform = build_total_hopping(&l, &aligned_specs([plus; 4]), (0.0, 0.0))?;
        Ok::<_, fci::Error>((
            translation_check(&mixed, (1, 0)),
            translation_check(&mixed, (0, 1)),
            translation_check(&uniform, (0, 1)),
        ))
    });
    let (m1, m2, u2) = r.map_err(|e| e.to_string())?;
    within("translation checks", dt, Duration::from_secs(1))?;
    if m1 || m2 || !u2 {
        return Err(format!("mixed e1 {m1}, mixed e2 {m2}, uniform e2 {u2}"));
    }
    Ok("mixed breaks e1 and e2, uniform keeps e2".into())
}

fn strong_coupling() -> Outcome {
    let l = TorusLattice::new(4, 4).map_err(|e| e.to_string())?;
    let specs = aligned_specs([params(1.0, 1.0, 0.5); 4]);
    let g1s = [1e2, 1e3, 1e4];
    let (r, dt) = timed(|| strong_coupling_scan(&l, 6, &specs, 5.0, &g1s, 1.0));
    let rows = r.map_err(|e| e.to_string())?;
    let table: Vec<String> = rows.iter().map(|r| format!("{:.0e}: {:.6e}", r.g1, r.max_deviation)).collect();
    let table = table.join(", ");
    within("scan", dt, Duration::from_secs(600))?;
    let last = rows.last().map(|r| r.max_deviation).unwrap_or(f64::INFINITY);
    if !is_strictly_decreasing(&rows) || !(last <= 1e-2) {
        return Err(format!("deviations [{table}] ({:.1} s)", dt.as_secs_f64()));
    }
    Ok(format!("deviations [{table}] ({:.1} s)", dt.as_secs_f64()))
}

fn slater_many_body() -> Outcome {
    let size = HkLatticeSize::new(2, 4).map_err(|e| e.to_string())?;
    let grid = TwistGrid::new(8).map_err(|e| e.to_string())?;
    let (r, dt) = timed(|| {
        let mut found = Vec::new();
        for td in [1.0, -1.0] {
            let p = params(1.0, 1.0, td);
            let band = chern_plaquette(&p, 24)?.chern;
            let slater = slater_chern(&p, size, size.dimension() / 2, grid)?;
            found.push((td, band, slater));
        }
        let plus = params(1.0, 1.0, 1.0);
        let minus = params(1.0, 1.0, -1.0);
        let avg = composite_many_body_chern(&aligned_specs([plus, plus, plus, minus]), size, grid)?;
        Ok::<_, fci::Error>((found, avg))
    });
    let (found, avg) = r.map_err(|e| e.to_string())?;
    within("twist-grid Chern", dt, Duration::from_secs(120))?;
    for (td, band, slater) in &found {
        if band != slater {
            return Err(format!("td = {td}: Slater {slater}, band {band}"));
        }
    }
    if avg != Ratio::new(1, 2) {
        return Err(format!("composite average {avg}"));
    }
    Ok(format!("Slater = band for td = +-1, composite {avg} ({:.2} s)", dt.as_secs_f64()))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_fci"))
            .args(["phase-diagram", "--td-range", "-2:2:0.25", "--t1", "1", "--t2", "1", "--grid", "24", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("--jobs {jobs} exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let one = run("1")?;
    let eight = run("8")?;
    if one != eight {
        return Err("CSV differs between --jobs 1 and --jobs 8".into());
    }
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{lines} identical CSV lines"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("chern formula sweep", chern_formula),
        ("loop integral", loop_integral),
        ("bloch / real-space consistency", bloch_consistency),
        ("classical degeneracy", classical_degeneracy),
        ("filling 3/8 structure", filling_three_eighths),
        ("composite quantization", composite_quantization),
        ("translation symmetry", translation_symmetry),
        ("strong-coupling convergence", strong_coupling),
        ("slater many-body chern", slater_many_body),
        ("phase-diagram determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
