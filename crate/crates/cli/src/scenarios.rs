//! The named scenarios. Each builds its states, runs the checks, and
//! returns a report; all randomness is seeded from the settings.

use std::path::Path;

use serde_json::json;

use fourstate::algebra::GeneratorSet;
use fourstate::bell::{
    chsh_classical, chsh_grid_scan, chsh_quantum, correlation_gap_report, refine_setting,
    ChshSetting, CLASSICAL_BOUND, QUANTUM_BOUND,
};
use fourstate::ensemble::{
    max_correlation_shift, sample_env_perturbation, ClassicalEnsemble, EnvPerturbation,
};
use fourstate::evolution::{
    apply_propagator, cnot_gate, interference_expected_coords, interference_hamiltonian,
    interference_scenario, propagator_from_hamiltonian, InterferenceConfig,
};
use fourstate::observables::{
    conditional_probabilities, expectation, joint_outcomes, Observable,
};
use fourstate::sampling::{
    random_exchange_symmetric_hamiltonian, random_pure_state, rng_from_seed,
};
use fourstate::state::{
    coords_from_wavefunction, mix, StateCoords, WaveFunction,
};
use fourstate::symmetry::{
    antisymmetric_state, fermion_invariance_check, is_exchange_symmetric, superselection_check,
    symmetric_pair_state, ExchangeClass,
};
use fourstate::Complex64;

use crate::config::Settings;
use crate::formats;
use crate::report::{CheckResult, ConditionalJson, OutcomeJson, ScenarioReport};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn coords_vec(s: &StateCoords) -> Vec<f64> {
    (0..15).map(|k| s.component(k)).collect()
}

fn entangled_pair(sign: f64, gens: &GeneratorSet) -> (WaveFunction, StateCoords) {
    let psi = WaveFunction::superposition(&[
        (re(1.0), &WaveFunction::basis(1)),
        (re(sign), &WaveFunction::basis(2)),
    ])
    .expect("normalizable");
    let s = coords_from_wavefunction(&psi, gens);
    (psi, s)
}

/// Entangled pair states: expectations, outcome tables, conditionals, and
/// agreement with the enumerated classical ensemble. The hidden
/// `inject_failure` hook corrupts one tolerance to prove failures surface.
pub fn run_entanglement(
    settings: &Settings,
    out: &Path,
    inject_failure: bool,
) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let (_, plus) = entangled_pair(1.0, &g);
    let (_, minus) = entangled_pair(-1.0, &g);
    let tol = 1e-12;
    // The corrupted tolerance cannot hold: rho_3 carries ~1e-16 of rounding.
    let t3_tol = if inject_failure { 1e-18 } else { tol };

    let mut checks = Vec::new();
    let t = |k: usize, s: &StateCoords| expectation(&Observable::basis(k, &g), s);
    checks.push(CheckResult::equals("plus_expect_t1", t(0, &plus), 0.0, tol));
    checks.push(CheckResult::equals("plus_expect_t2", t(1, &plus), 0.0, tol));
    checks.push(CheckResult::equals("plus_expect_t3", t(2, &plus), -1.0, t3_tol));
    checks.push(CheckResult::equals("plus_purity", plus.purity(), 3.0, tol));

    let outcomes = joint_outcomes(&plus);
    checks.push(CheckResult::equals("plus_w_pp", outcomes.w_pp, 0.0, tol));
    checks.push(CheckResult::equals("plus_w_pm", outcomes.w_pm, 0.5, tol));
    checks.push(CheckResult::equals("plus_w_mp", outcomes.w_mp, 0.5, tol));
    checks.push(CheckResult::equals("plus_w_mm", outcomes.w_mm, 0.0, tol));

    let cond = conditional_probabilities(&plus);
    let defined = |p: Option<f64>, name: &str| -> Result<f64, String> {
        p.ok_or_else(|| format!("conditional {name} undefined on the pair state"))
    };
    checks.push(CheckResult::equals(
        "plus_p_1_given_1",
        defined(cond.p_plus_given_plus, "p(1;1)")?,
        0.0,
        tol,
    ));
    checks.push(CheckResult::equals(
        "plus_p_m1_given_1",
        defined(cond.p_minus_given_plus, "p(-1;1)")?,
        1.0,
        tol,
    ));
    checks.push(CheckResult::equals(
        "plus_p_1_given_m1",
        defined(cond.p_plus_given_minus, "p(1;-1)")?,
        1.0,
        tol,
    ));
    checks.push(CheckResult::equals(
        "plus_p_m1_given_m1",
        defined(cond.p_minus_given_minus, "p(-1;-1)")?,
        0.0,
        tol,
    ));

    // The minus pair state is every bit as anticorrelated.
    let minus_outcomes = joint_outcomes(&minus);
    checks.push(CheckResult::equals("minus_w_pp", minus_outcomes.w_pp, 0.0, tol));
    checks.push(CheckResult::equals("minus_w_mm", minus_outcomes.w_mm, 0.0, tol));

    // Enumerated ensemble reproduces the coordinates as first moments.
    let ens = ClassicalEnsemble::from_state(&plus, &[1.0]).map_err(|e| e.to_string())?;
    let moments = ens.first_moments();
    let worst_moment = (0..15)
        .map(|k| (moments[k] - plus.component(k)).abs())
        .fold(0.0f64, f64::max);
    checks.push(CheckResult::equals("ensemble_moment_max_diff", worst_moment, 0.0, tol));

    // Per-coordinate diff table: quantum coordinate vs ensemble first moment.
    let mut diff_csv = String::from("k,quantum,ensemble,diff\n");
    for k in 0..15 {
        let q = plus.component(k);
        diff_csv.push_str(&format!("{},{:.16e},{:.16e},{:.16e}\n", k + 1, q, moments[k], moments[k] - q));
    }
    std::fs::write(out.join("entanglement.csv"), diff_csv).map_err(|e| e.to_string())?;

    // Classical pair correlation vs measurement correlation for (1, 2).
    let gap = correlation_gap_report(&plus, &[(0, 1)], &g).map_err(|e| e.to_string())?[0];
    checks.push(CheckResult::equals("gap_classical_s1_s2", gap.classical, 0.0, tol));
    checks.push(CheckResult::equals("gap_measured_t2_t1", gap.quantum, -1.0, tol));

    // Identity smoke test: the maximally mixed state weighs every joint
    // outcome at one quarter.
    let mixed = joint_outcomes(&StateCoords::maximally_mixed());
    for (name, w) in [
        ("mixed_w_pp", mixed.w_pp),
        ("mixed_w_pm", mixed.w_pm),
        ("mixed_w_mp", mixed.w_mp),
        ("mixed_w_mm", mixed.w_mm),
    ] {
        checks.push(CheckResult::equals(name, w, 0.25, tol));
    }

    std::fs::write(out.join("psi_plus.state.txt"), formats::state_record(&plus))
        .map_err(|e| e.to_string())?;
    std::fs::write(out.join("psi_minus.state.txt"), formats::state_record(&minus))
        .map_err(|e| e.to_string())?;
    // The record format carries 17 significant digits, so the round trip
    // through the file is bit-exact.
    let reread = std::fs::read_to_string(out.join("psi_plus.state.txt"))
        .map_err(|e| e.to_string())
        .and_then(|text| formats::parse_state_record(&text, &g))?;
    checks.push(CheckResult::equals("state_record_round_trip", reread.max_diff(&plus), 0.0, 0.0));

    let detail = json!({
        "seed": settings.seed,
        "plus_coords": coords_vec(&plus),
        "minus_coords": coords_vec(&minus),
        "outcomes": OutcomeJson::from(&outcomes),
        "conditionals": ConditionalJson::from(&cond),
        "correlation_gap": { "pair": [1, 2], "classical": gap.classical, "quantum": gap.quantum },
        "state_records": ["psi_plus.state.txt", "psi_minus.state.txt"],
        "diff_table": "entanglement.csv",
    });
    Ok(ScenarioReport::new("entanglement", checks, detail))
}

/// Two-path interference: CSV time series of the oscillating coordinates
/// and the deviation from the closed-form signal.
pub fn run_interference(settings: &Settings, out: &Path) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let cfg = InterferenceConfig::uniform_grid(settings.delta, 0.0, settings.grid, 2.0)
        .map_err(|e| e.to_string())?;
    let delta = cfg.delta();
    let points = interference_scenario(&cfg, &g);

    let mut max_signal_dev = 0.0f64;
    let mut max_coord_dev = 0.0f64;
    for p in &points {
        max_signal_dev = max_signal_dev.max((p.expect_t2 - (delta * p.t).cos()).abs());
        let want = interference_expected_coords(delta, p.t);
        for k in 0..15 {
            max_coord_dev = max_coord_dev.max((p.state.component(k) - want[k]).abs());
        }
    }

    // The t = 0 row is (1, 1, 1, 0, ..., 0) with <T_2> = 1.
    let first = &points[0];
    let mut t0_dev = (first.expect_t2 - 1.0f64).abs();
    for k in 0..15 {
        let want = if k < 3 { 1.0 } else { 0.0 };
        t0_dev = t0_dev.max((first.state.component(k) - want).abs());
    }

    // Half a beat later the signal bottoms out: <T_2> = -1 at Delta t = pi.
    let h = interference_hamiltonian(cfg.omega_a, cfg.omega_b);
    let u = propagator_from_hamiltonian(&h, std::f64::consts::PI / delta);
    let bottom = coords_from_wavefunction(&u.apply_to_wavefunction(&WaveFunction::basis(0)), &g);
    let t2_bottom = expectation(&Observable::basis(1, &g), &bottom);

    let checks = vec![
        CheckResult::at_most("max_signal_deviation", max_signal_dev, 0.0, 1e-9),
        CheckResult::at_most("max_coordinate_deviation", max_coord_dev, 0.0, 1e-9),
        CheckResult::equals("t0_row", t0_dev, 0.0, 1e-12),
        CheckResult::equals("expect_t2_at_half_period", t2_bottom, -1.0, 1e-12),
    ];

    let csv = formats::interference_csv(&points);
    std::fs::write(out.join("interference.csv"), csv).map_err(|e| e.to_string())?;

    let detail = json!({
        "omega_a": cfg.omega_a,
        "omega_b": cfg.omega_b,
        "delta": delta,
        "grid": settings.grid,
        "t_max": points.last().map(|p| p.t),
        "max_signal_deviation": max_signal_dev,
        "max_coordinate_deviation": max_coord_dev,
        "csv": "interference.csv",
    });
    Ok(ScenarioReport::new("interference", checks, detail))
}

/// The controlled flip: exact truth table and the entangling action on
/// (psi_1 + psi_3)/sqrt(2), computed along two independent routes.
pub fn run_cnot(_settings: &Settings, out: &Path) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let u = cnot_gate();
    let truth = [0usize, 1, 3, 2];
    let mut truth_dev = 0.0f64;
    for (input, &output) in truth.iter().enumerate() {
        let image = u.apply_to_wavefunction(&WaveFunction::basis(input));
        truth_dev = truth_dev.max(image.max_diff(&WaveFunction::basis(output)));
    }
    let involution_dev = u.compose(&u).matrix().max_diff(&fourstate::Matrix4::identity());

    let psi_in = WaveFunction::superposition(&[
        (re(1.0), &WaveFunction::basis(0)),
        (re(1.0), &WaveFunction::basis(2)),
    ])
    .expect("normalizable");
    let s_in = coords_from_wavefunction(&psi_in, &g);
    let via_wavefunction = coords_from_wavefunction(&u.apply_to_wavefunction(&psi_in), &g);
    let via_density = apply_propagator(&u, &s_in, &g);

    let checks = vec![
        CheckResult::equals("truth_table_deviation", truth_dev, 0.0, 0.0),
        CheckResult::equals("involution_deviation", involution_dev, 0.0, 0.0),
        CheckResult::equals(
            "route_disagreement",
            via_wavefunction.max_diff(&via_density),
            0.0,
            1e-12,
        ),
        CheckResult::equals("output_rho_3", via_wavefunction.component(2), 1.0, 1e-12),
        CheckResult::equals("output_rho_1", via_wavefunction.component(0), 0.0, 1e-12),
        CheckResult::equals("output_rho_2", via_wavefunction.component(1), 0.0, 1e-12),
        CheckResult::equals("output_purity", via_wavefunction.purity(), 3.0, 1e-12),
    ];

    std::fs::write(out.join("cnot_output.state.txt"), formats::state_record(&via_wavefunction))
        .map_err(|e| e.to_string())?;

    let detail = json!({
        "truth_table": [[1, 1], [2, 2], [3, 4], [4, 3]],
        "input_coords": coords_vec(&s_in),
        "output_coords": coords_vec(&via_wavefunction),
        "state_record": "cnot_output.state.txt",
    });
    Ok(ScenarioReport::new("cnot", checks, detail))
}

/// Correlation-inequality harness: quantum S at the recorded angles, the
/// grid scan with local refinement, and classical S on the enumerated
/// ensemble plus sampled admissible perturbations.
pub fn run_chsh(settings: &Settings, _out: &Path) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let (_, plus) = entangled_pair(1.0, &g);
    let setting = ChshSetting::max_violation();
    let quantum = chsh_quantum(&plus, &setting, &g).map_err(|e| e.to_string())?;

    let mut checks = vec![
        CheckResult::equals("s_at_recorded_angles", quantum.s, QUANTUM_BOUND, 1e-9),
    ];
    for (name, e) in [
        ("e_ab_in_range", quantum.e_ab),
        ("e_ab_prime_in_range", quantum.e_ab_prime),
        ("e_a_prime_b_in_range", quantum.e_a_prime_b),
        ("e_a_prime_b_prime_in_range", quantum.e_a_prime_b_prime),
    ] {
        checks.push(CheckResult::at_most(name, e.abs(), 1.0, 1e-12));
    }

    let scan = chsh_grid_scan(&plus, &g, 64).map_err(|e| e.to_string())?;
    checks.push(CheckResult::at_most("grid_max_s", scan.s, QUANTUM_BOUND, 1e-9));
    checks.push(CheckResult::equals("grid_reaches_bound", scan.s, QUANTUM_BOUND, 1e-9));

    let step = 2.0 * std::f64::consts::PI / 64.0;
    let refined = refine_setting(&plus, &scan.setting, &g, step, 1e-6).map_err(|e| e.to_string())?;
    checks.push(CheckResult::equals("refined_s", refined.s, QUANTUM_BOUND, 1e-9));

    let product = coords_from_wavefunction(&WaveFunction::basis(0), &g);
    let product_scan = chsh_grid_scan(&product, &g, 64).map_err(|e| e.to_string())?;
    checks.push(CheckResult::at_most("product_grid_max_s", product_scan.s, CLASSICAL_BOUND, 1e-12));

    let mixed = chsh_quantum(&StateCoords::maximally_mixed(), &setting, &g)
        .map_err(|e| e.to_string())?;
    checks.push(CheckResult::equals("maximally_mixed_s", mixed.s, 0.0, 1e-12));

    // Classical side: the enumerated ensemble and sampled admissible
    // perturbations of it never beat the classical bound.
    let ens = ClassicalEnsemble::from_state(&plus, &[1.0]).map_err(|e| e.to_string())?;
    let classical = |e: &ClassicalEnsemble| {
        chsh_classical(
            e,
            &|c| c.sigma(0),
            &|c| c.sigma(7),
            &|c| c.sigma(1),
            &|c| c.sigma(3),
        )
        .s
    };
    let mut worst_classical = classical(&ens);
    // Deterministic stress: weighted pair characters on the very pairs the
    // assignments read, each applied to the base ensemble. The touched
    // coordinates all vanish on the pair state, so each is admissible and
    // sets that pair correlation to epsilon exactly.
    for &(k, l, eps) in
        &[(0usize, 1usize, 1.0), (0, 3, -1.0), (7, 1, 1.0), (7, 3, 1.0), (0, 1, -0.9)]
    {
        let delta =
            EnvPerturbation::from_weighted_character(&ens, k, l, eps).map_err(|e| e.to_string())?;
        let shifted = ens.perturbed(&delta).map_err(|e| e.to_string())?;
        worst_classical = worst_classical.max(classical(&shifted));
    }
    // Stacking characters on index-disjoint pairs stays admissible (their
    // product is a degree-four character) and drives E(a,b) and E(a',b')
    // to one simultaneously: classical S touches the bound exactly and
    // still never crosses it.
    let mut stacked = ens.clone();
    for &(k, l) in &[(0usize, 1usize), (7, 3)] {
        let delta =
            EnvPerturbation::from_weighted_character(&stacked, k, l, 1.0).map_err(|e| e.to_string())?;
        stacked = stacked.perturbed(&delta).map_err(|e| e.to_string())?;
    }
    let saturated = classical(&stacked);
    worst_classical = worst_classical.max(saturated);
    for j in 0..50u64 {
        let delta = sample_env_perturbation(&ens, settings.seed.wrapping_add(j), settings.perturb)
            .map_err(|e| e.to_string())?;
        let shifted = ens.perturbed(&delta).map_err(|e| e.to_string())?;
        worst_classical = worst_classical.max(classical(&shifted));
    }
    checks.push(CheckResult::at_most("classical_max_s", worst_classical, CLASSICAL_BOUND, 1e-12));
    checks.push(CheckResult::equals("classical_saturated_s", saturated, CLASSICAL_BOUND, 1e-12));

    let detail = json!({
        "setting": {
            "angle_a": setting.angle_a,
            "angle_a_prime": setting.angle_a_prime,
            "angle_b": setting.angle_b,
            "angle_b_prime": setting.angle_b_prime,
        },
        "e_ab": quantum.e_ab,
        "e_ab_prime": quantum.e_ab_prime,
        "e_a_prime_b": quantum.e_a_prime_b,
        "e_a_prime_b_prime": quantum.e_a_prime_b_prime,
        "s": quantum.s,
        "classical_bound": CLASSICAL_BOUND,
        "quantum_bound": QUANTUM_BOUND,
        "violates_classical_bound": quantum.s > CLASSICAL_BOUND + 1e-12,
        "within_quantum_bound": quantum.s <= QUANTUM_BOUND + 1e-9,
        "grid": { "points_per_angle": 64, "max_s": scan.s },
        "refined": {
            "s": refined.s,
            "angle_a": refined.setting.angle_a,
            "angle_a_prime": refined.setting.angle_a_prime,
            "angle_b": refined.setting.angle_b,
            "angle_b_prime": refined.setting.angle_b_prime,
        },
        "classical_max_s": worst_classical,
        "classical_saturated_s": saturated,
        "perturbation_samples": 50,
    });
    Ok(ScenarioReport::new("chsh", checks, detail))
}

fn class_name(class: ExchangeClass) -> &'static str {
    match class {
        ExchangeClass::Antisymmetric => "antisymmetric",
        ExchangeClass::Symmetric => "symmetric",
        ExchangeClass::NotEligible => "not_eligible",
    }
}

/// Exchange statistics: sector classification and invariance of the
/// antisymmetric density under exchange-symmetric evolution.
pub fn run_exchange(settings: &Settings, _out: &Path) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let minus = coords_from_wavefunction(&antisymmetric_state(), &g);
    let plus = coords_from_wavefunction(&symmetric_pair_state(), &g);
    let blocked = WaveFunction::superposition(&[
        (re(0.6), &antisymmetric_state()),
        (re(0.8), &symmetric_pair_state()),
    ])
    .expect("normalizable");

    let minus_report = superselection_check(&antisymmetric_state());
    let plus_report = superselection_check(&symmetric_pair_state());
    let blocked_report = superselection_check(&blocked);

    let bool_check = |name: &str, ok: bool| {
        CheckResult::equals(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    };
    let mut checks = vec![
        bool_check("minus_density_exchange_symmetric", is_exchange_symmetric(&minus).symmetric),
        bool_check("plus_density_exchange_symmetric", is_exchange_symmetric(&plus).symmetric),
        bool_check(
            "minus_classified_antisymmetric",
            minus_report.class == ExchangeClass::Antisymmetric,
        ),
        bool_check("plus_classified_symmetric", plus_report.class == ExchangeClass::Symmetric),
        bool_check(
            "superposition_blocked",
            blocked_report.class == ExchangeClass::NotEligible,
        ),
        CheckResult::equals("blocked_sector_defect", blocked_report.defect, 0.6, 1e-12),
    ];

    let mut rng = rng_from_seed(settings.seed);
    let times = [0.4, 1.1, 2.7];
    let mut worst_drift = 0.0f64;
    let mut worst_cross = 0.0f64;
    for _ in 0..20 {
        let h = random_exchange_symmetric_hamiltonian(&mut rng, 1.2).map_err(|e| e.to_string())?;
        let inv = fermion_invariance_check(&h, &times, &g).map_err(|e| e.to_string())?;
        worst_drift = worst_drift.max(inv.max_state_drift);
        worst_cross = worst_cross.max(inv.max_cross_element);
    }
    checks.push(CheckResult::at_most("fermion_density_drift", worst_drift, 0.0, 1e-10));
    checks.push(CheckResult::at_most("sector_cross_elements", worst_cross, 0.0, 1e-12));

    let classification = |name: &str, r: &fourstate::symmetry::SuperselectionReport| {
        json!({
            "state": name,
            "class": class_name(r.class),
            "defect": r.defect,
            "amplitudes": r.amplitudes,
        })
    };
    let detail = json!({
        "seed": settings.seed,
        "classifications": [
            classification("psi_minus", &minus_report),
            classification("psi_plus", &plus_report),
            classification("0.6 psi_minus + 0.8 psi_plus", &blocked_report),
        ],
        "fermion_invariance": {
            "hamiltonians": 20,
            "times": times,
            "max_state_drift": worst_drift,
            "max_cross_element": worst_cross,
        },
    });
    Ok(ScenarioReport::new("exchange", checks, detail))
}

/// Incomplete statistics demonstration: sampled admissible perturbations
/// freeze every first moment while pair correlations move; the base
/// ensemble is dumped in the binary format and read back.
pub fn run_environment(settings: &Settings, out: &Path) -> Result<ScenarioReport, String> {
    let g = GeneratorSet::new();
    let mut rng = rng_from_seed(settings.seed);
    let pure = random_pure_state(&mut rng, &g);
    let s = mix(&[(0.6, pure), (0.4, StateCoords::maximally_mixed())], &g)
        .map_err(|e| e.to_string())?;
    let z = settings.env_states;
    let weights = vec![1.0 / z as f64; z];
    let base = ClassicalEnsemble::from_state(&s, &weights).map_err(|e| e.to_string())?;

    let base_moments = base.first_moments();
    let moment_fidelity = (0..15)
        .map(|k| (base_moments[k] - s.component(k)).abs())
        .fold(0.0f64, f64::max);

    let samples = 50u64;
    let mut worst_residual = 0.0f64;
    let mut smallest_best_shift = f64::INFINITY;
    let mut largest_best_shift = 0.0f64;
    let mut best_pair = (0usize, 0usize);
    for j in 0..samples {
        let delta =
            sample_env_perturbation(&base, settings.seed.wrapping_add(1000 + j), settings.perturb)
                .map_err(|e| e.to_string())?;
        let shifted = base.perturbed(&delta).map_err(|e| e.to_string())?;
        let moments = shifted.first_moments();
        for k in 0..15 {
            worst_residual = worst_residual.max((moments[k] - base_moments[k]).abs());
        }
        let (k, l, shift) = max_correlation_shift(&base, &shifted);
        if shift > largest_best_shift {
            largest_best_shift = shift;
            best_pair = (k + 1, l + 1);
        }
        smallest_best_shift = smallest_best_shift.min(shift);
    }

    let dump = out.join("ensemble.qce1");
    formats::write_ensemble(&dump, &base)?;
    let reread = formats::read_ensemble(&dump)?;
    let dump_fidelity = base
        .probs()
        .iter()
        .zip(reread.probs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    let checks = vec![
        CheckResult::equals("total_probability", base.total(), 1.0, 1e-12),
        CheckResult::equals("moment_fidelity", moment_fidelity, 0.0, 1e-12),
        CheckResult::equals("perturbed_moment_residual", worst_residual, 0.0, 1e-12),
        // Every sampled perturbation moves at least one pair correlation
        // detectably: the smallest best shift still clears 1e-6.
        CheckResult::at_least("min_correlation_shift", smallest_best_shift, 1e-6, 0.0),
        CheckResult::equals("dump_round_trip", dump_fidelity, 0.0, 0.0),
    ];

    let detail = json!({
        "seed": settings.seed,
        "env_states": z,
        "perturb_magnitude": settings.perturb,
        "samples": samples,
        "base_moments": base_moments.to_vec(),
        "max_moment_residual": worst_residual,
        "min_best_correlation_shift": smallest_best_shift,
        "max_best_correlation_shift": largest_best_shift,
        "strongest_shift_pair": [best_pair.0, best_pair.1],
        "ensemble_dump": "ensemble.qce1",
    });
    Ok(ScenarioReport::new("environment", checks, detail))
}

/// Runs one scenario by name.
pub fn run_scenario(
    name: &str,
    settings: &Settings,
    out: &Path,
    inject_failure: bool,
) -> Result<ScenarioReport, String> {
    match name {
        "entanglement" => run_entanglement(settings, out, inject_failure),
        "interference" => run_interference(settings, out),
        "cnot" => run_cnot(settings, out),
        "chsh" => run_chsh(settings, out),
        "exchange" => run_exchange(settings, out),
        "environment" => run_environment(settings, out),
        other => Err(format!("unknown scenario `{other}`")),
    }
}

/// All scenario names in their canonical order.
pub const ALL_SCENARIOS: [&str; 6] =
    ["entanglement", "interference", "cnot", "chsh", "exchange", "environment"];
