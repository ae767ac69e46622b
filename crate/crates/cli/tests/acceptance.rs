//! Acceptance checks, one PASS/FAIL line per criterion.

use std::f64::consts::SQRT_2;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lpow_cli::{Grid, Quantity, StateSpec, SweepSpec};
use lpow_core::bell::{self, BellFunctional, MeasurementScenario};
use lpow_core::linalg::{ComplexMatrix, Factorization};
use lpow_core::lpo;
use lpow_core::optimize::OptimizerConfig;
use lpow_core::random;
use lpow_core::states::{self, make_state, DensityMatrix, QubitObservable, StateFamily};
use lpow_core::witness::{self, MerminMode, MerminSettings, SettingsConstraint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const EXACT_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-6;
const BOUND_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-10;
const C3322_TAVAKOLI: f64 = 4.05;
const C3322_TAVAKOLI_TOL: f64 = 0.01;
const CHSH_SCAN_MARGIN: f64 = 1e-3;
const CHSH_SCAN_RESTARTS: usize = 100_000;
const CHSH_CROSSING: f64 = 0.30;
const I3322_CROSSING: f64 = 0.25;
const CROSSING_TOL: f64 = 0.02;
const BUMP: f64 = 0.05;
const BUMP_TOL: f64 = 0.03;
const PROPERTY_STATES: usize = 1000;
const SETTINGS_PER_STATE: usize = 10;
const PROPERTY_SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn state(f: StateFamily) -> Result<DensityMatrix, String> {
    make_state(&f).map_err(err)
}

fn zero_state(parties: usize) -> Result<DensityMatrix, String> {
    let kets = "0".repeat(parties);
    format!("product:kets={kets}").parse::<StateSpec>().and_then(|s| s.build()).map_err(err)
}

fn singlet() -> Outcome {
    let rho = state(StateFamily::Singlet)?;
    let chsh = BellFunctional::chsh();
    let s = MeasurementScenario::chsh_standard();
    let fixed = rho.expectation(&bell::bell_operator_matrix(&chsh, &s).map_err(err)?).map_err(err)?.abs();
    let closed = witness::chsh_sup_horodecki(&rho).map_err(err)?;
    let numeric = witness::bell_sup_numeric(&rho, &chsh, &OptimizerConfig::default()).map_err(err)?.value;
    let ws = witness::sym_value_fixed(&rho, &chsh, &s).map_err(err)?;
    let target = 2.0 * SQRT_2;
    for (name, v) in [("fixed settings", fixed), ("closed form", closed), ("optimizer", numeric)] {
        ensure((v - target).abs() < OPT_TOL, || format!("{name} S = {v}"))?;
    }
    ensure(ws.abs() < EXACT_TOL, || format!("W^s = {ws}"))?;
    Ok(format!("S fixed {fixed:.9}, closed {closed:.9}, optimizer {numeric:.9}; W^s = {ws:e}"))
}

fn zero_zero() -> Outcome {
    let rho = zero_state(2)?;
    let chsh = BellFunctional::chsh();
    let cfg = OptimizerConfig { restarts: 64, ..Default::default() };
    let sym = witness::sym_sup(&rho, &chsh, SettingsConstraint::Free, &cfg).map_err(err)?;
    let asym = witness::asym_sup(&rho, &chsh).map_err(err)?;
    let lhv = bell::lhv_bound(&chsh).map_err(err)?;
    ensure((sym.value - 2.0).abs() < OPT_TOL, || format!("symmetric = {}", sym.value))?;
    ensure(asym.value == 2.0 && lhv == 2.0, || format!("asymmetric = {}, lhv = {lhv}", asym.value))?;
    Ok(format!("symmetric {:.9}, asymmetric {}, lhv {lhv}", sym.value, asym.value))
}

fn unpolarized() -> Outcome {
    let mut states = vec![("I/4".to_string(), DensityMatrix::maximally_mixed(Factorization::qubits(2)))];
    let grid = Grid::new(0.0, 1.0, 101).map_err(err)?;
    for p in grid.points() {
        states.push((format!("werner p={p}"), state(StateFamily::Werner { p })?));
    }
    let cfg = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    for (name, rho) in &states {
        for f in [BellFunctional::chsh(), BellFunctional::c3322()] {
            let a = witness::asym_sup(rho, &f).map_err(err)?.value;
            let s = witness::sym_sup(rho, &f, SettingsConstraint::Free, &cfg).map_err(err)?.value;
            let o = witness::sym_sup(rho, &f, SettingsConstraint::Orthogonal, &cfg).map_err(err)?.value;
            for v in [a, s, o] {
                worst = worst.max(v.abs());
                ensure(v.abs() < EXACT_TOL, || format!("{name} {}: witness {v}", f.name))?;
            }
        }
    }
    Ok(format!("{} states, largest |witness| {worst:e}", states.len()))
}

fn sigma() -> Outcome {
    let rho = state(StateFamily::Sigma)?;
    let c = bell::c3322_value(&rho, &MeasurementScenario::tavakoli()).map_err(err)?;
    ensure((c - C3322_TAVAKOLI).abs() <= C3322_TAVAKOLI_TOL, || format!("C3322 = {c}"))?;
    let m = states::horodecki(&rho).map_err(err)?.m_value;
    ensure(m < 1.0, || format!("Horodecki M = {m}"))?;
    let cfg = OptimizerConfig {
        restarts: CHSH_SCAN_RESTARTS,
        ..Default::default()
    };
    let scan = witness::bell_sup_numeric(&rho, &BellFunctional::chsh(), &cfg).map_err(err)?;
    ensure(scan.value < 2.0 - CHSH_SCAN_MARGIN, || format!("CHSH scan reached {}", scan.value))?;
    ensure(scan.converged, || "CHSH scan did not converge".into())?;
    Ok(format!("C3322 {c:.4}, M {m:.4}, CHSH scan max {:.6} over {CHSH_SCAN_RESTARTS} restarts", scan.value))
}

fn mermin() -> Outcome {
    let ghz = state(StateFamily::Ghz)?;
    let v = witness::mermin_value(&ghz, &MerminSettings::default()).map_err(err)?;
    ensure((v - 4.0).abs() < EXACT_TOL, || format!("GHZ Mermin = {v}"))?;
    let mut lpo_values = Vec::new();
    for mode in [MerminMode::AsymSup, MerminMode::SymFixed(MerminSettings::default())] {
        let w = witness::mermin_lpo_witness(&ghz, &mode).map_err(err)?.value;
        ensure(w.abs() < EXACT_TOL, || format!("GHZ {mode:?} witness = {w}"))?;
        lpo_values.push(w);
    }
    let zero = zero_state(3)?;
    let z = witness::mermin_lpo_witness(&zero, &MerminMode::AsymSup).map_err(err)?.value;
    ensure((z - 2.0).abs() < EXACT_TOL, || format!("|000> witness = {z}"))?;
    Ok(format!("GHZ Mermin {v}, GHZ witnesses {lpo_values:?}, |000> witness {z}"))
}

/// Interpolated parameter where `ys` first changes side of `level`.
fn crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    xs.windows(2).zip(ys.windows(2)).find_map(|(x, y)| {
        let (d0, d1) = (y[0] - level, y[1] - level);
        (d0 != 0.0 && d0.signum() != d1.signum()).then(|| x[0] + d0 * (x[1] - x[0]) / (d0 - d1))
    })
}

fn transition() -> Outcome {
    let spec = SweepSpec {
        state: "transition".parse().map_err(err)?,
        param: "p".into(),
        grid: Grid::new(0.0, 1.0, 101).map_err(err)?,
        quantities: vec![Quantity::I2222Tilde, Quantity::I3322Tilde, Quantity::I2222LpoTilde],
        optimizer: OptimizerConfig::default(),
        output: "unused.csv".into(),
        with_bounds: false,
    };
    let table = lpow_cli::sweep::run(&spec).map_err(err)?;
    ensure(table.warnings.is_empty(), || table.warnings.join("; "))?;
    let p = table.params();
    let column = |q| table.column(q).ok_or_else(|| format!("no column {q}"));
    let chsh = crossing(&p, &column(Quantity::I2222Tilde)?, 1.0).ok_or("no CHSH crossing")?;
    let i3322 = crossing(&p, &column(Quantity::I3322Tilde)?, 1.0).ok_or("no 3322 crossing")?;
    let lpo = column(Quantity::I2222LpoTilde)?;
    let (bump_at, bump) = p
        .iter()
        .zip(&lpo)
        .filter(|(x, _)| (0.1..0.5).contains(*x))
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, (&x, &y)| if y > acc.1 { (x, y) } else { acc });
    ensure((chsh - CHSH_CROSSING).abs() <= CROSSING_TOL, || format!("CHSH crossing at {chsh}"))?;
    ensure((i3322 - I3322_CROSSING).abs() <= CROSSING_TOL, || format!("3322 crossing at {i3322}"))?;
    ensure((bump - BUMP).abs() <= BUMP_TOL, || format!("LPO bump {bump} at p={bump_at}"))?;
    Ok(format!("CHSH crossing {chsh:.4}, 3322 crossing {i3322:.4}, LPO bump {bump:.4} at p={bump_at:.2}"))
}

#[derive(Default)]
struct Violations {
    dominance: usize,
    geometry_free: usize,
    orthogonal: usize,
    c3322: usize,
    povm: usize,
    side_symmetry: usize,
    c3322_identity: usize,
    correlator: usize,
    sym_dual: usize,
    settings: usize,
}

impl Violations {
    fn add(mut self, o: Self) -> Self {
        self.dominance += o.dominance;
        self.geometry_free += o.geometry_free;
        self.orthogonal += o.orthogonal;
        self.c3322 += o.c3322;
        self.povm += o.povm;
        self.side_symmetry += o.side_symmetry;
        self.c3322_identity += o.c3322_identity;
        self.correlator += o.correlator;
        self.sym_dual += o.sym_dual;
        self.settings += o.settings;
        self
    }

    fn counts(&self) -> [(&'static str, usize); 9] {
        [
            ("asym dominance", self.dominance),
            ("free bound", self.geometry_free),
            ("orthogonal bound", self.orthogonal),
            ("c3322 bounds", self.c3322),
            ("povm sum", self.povm),
            ("side symmetry", self.side_symmetry),
            ("c3322 identity", self.c3322_identity),
            ("correlator routes", self.correlator),
            ("symmetric dual forms", self.sym_dual),
        ]
    }
}

fn scenario(m: usize, n: usize, orthogonal: bool, r: &mut ChaCha8Rng) -> lpow_core::Result<MeasurementScenario> {
    if orthogonal {
        let (fa, fb) = (random::frame(r), random::frame(r));
        let obs = |d: &[[f64; 3]]| d.iter().map(|&v| QubitObservable::new(v)).collect::<lpow_core::Result<Vec<_>>>();
        MeasurementScenario::new(obs(&fa[..m])?, obs(&fb[..n])?, true)
    } else {
        let alice = (0..m).map(|_| random::observable(r)).collect();
        let bob = (0..n).map(|_| random::observable(r)).collect();
        MeasurementScenario::new(alice, bob, false)
    }
}

fn check_state(index: usize) -> lpow_core::Result<Violations> {
    let mut r = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    r.set_stream(index as u64);
    let rho = random::two_qubit_state(&mut r);
    let mut v = Violations::default();
    let chsh = BellFunctional::chsh();
    let c3322 = BellFunctional::c3322();
    let c_bounds = witness::bound_c3322(&rho)?;
    for f in [&chsh, &c3322] {
        let sup = witness::asym_sup(&rho, f)?.value;
        let lhv = bell::lhv_bound(f)?;
        let free_bound = witness::bound_geometry_free(&rho, f)?;
        let orth_bound = witness::bound_orthogonal(&rho, f)?;
        v.dominance += usize::from(sup > lhv + BOUND_TOL);
        for k in 0..SETTINGS_PER_STATE {
            let orthogonal = k % 2 == 1;
            let s = scenario(f.m(), f.n(), orthogonal, &mut r)?;
            v.settings += 1;
            v.dominance += usize::from(witness::asym_value_fixed(&rho, f, &s)? > sup + BOUND_TOL);
            let sym = witness::sym_value_fixed(&rho, f, &s)?;
            v.geometry_free += usize::from(sym > free_bound + BOUND_TOL);
            if orthogonal {
                v.orthogonal += usize::from(sym > orth_bound + BOUND_TOL);
            }
            if f == &c3322 {
                let limit = if orthogonal { c_bounds.orthogonal } else { c_bounds.free };
                v.c3322 += usize::from(sym > limit + BOUND_TOL);
                let c = bell::c3322_value(&rho, &s)?;
                let i = bell::i3322_probability_value(&rho, &s)?;
                v.c3322_identity += usize::from((c - 4.0 * (i + 1.0)).abs() > IDENTITY_TOL);
            }
            let op = witness::sym_value_operator(&rho, f, &s)?;
            v.sym_dual += usize::from((sym - op).abs() > IDENTITY_TOL);
        }
    }
    for povm in [random::projective_povm(4, &mut r), random::mixed_povm(4, &mut r)] {
        for keep in 0..2 {
            let mut sum = ComplexMatrix::zeros(2, 2);
            for e in &povm {
                sum = &sum + &lpo::lpo_project(e, &rho, keep)?.matrix;
            }
            v.povm += usize::from(sum.max_abs_diff(&ComplexMatrix::identity(2)) > IDENTITY_TOL);
        }
    }
    let x = random::hermitian(4, &mut r);
    let (e0, e1) = (lpo::perceived_expectation(&x, &rho, 0)?, lpo::perceived_expectation(&x, &rho, 1)?);
    v.side_symmetry += usize::from((e0 - e1).abs() > IDENTITY_TOL);
    let (a, b) = (random::observable(&mut r), random::observable(&mut r));
    let parts = lpo::lpo_correlator_parts(&a, &b, &rho)?;
    v.correlator += usize::from((parts.product_formula - parts.operator_form).abs() > IDENTITY_TOL);
    Ok(v)
}

fn properties() -> Outcome {
    let per_state: Vec<Violations> = (0..PROPERTY_STATES)
        .into_par_iter()
        .map(check_state)
        .collect::<lpow_core::Result<_>>()
        .map_err(err)?;
    let total = per_state.into_iter().fold(Violations::default(), Violations::add);
    let summary: Vec<String> = total.counts().iter().map(|(n, c)| format!("{n} {c}")).collect();
    let detail = format!(
        "{PROPERTY_STATES} states, {} settings; violations: {}",
        total.settings,
        summary.join(", ")
    );
    ensure(total.counts().iter().all(|(_, c)| *c == 0), || detail.clone())?;
    Ok(detail)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_lpow"))
            .args(["sweep", "--state", "transition", "--param", "p", "--grid", "0:1:21"])
            .args(["--quantities", "s_chsh,s_chsh_lpo,i3322_tilde,i2222_lpo_tilde"])
            .args(["--seed", "17", "--with-bounds", "--out"])
            .arg(&out)
            .status()
            .map_err(err)?;
        ensure(status.success(), || format!("lpow exited with {status}"))?;
        std::fs::read(&out).map_err(err)
    };
    let (a, b) = (run("first.csv")?, run("second.csv")?);
    ensure(a == b, || "sweep outputs differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn cg_family() -> Outcome {
    let spec = SweepSpec {
        state: "cg".parse().map_err(err)?,
        param: "theta".into(),
        grid: Grid::new(0.05, 0.45, 41).map_err(err)?,
        quantities: vec![Quantity::I3322Tilde, Quantity::I2222Tilde],
        optimizer: OptimizerConfig::default(),
        output: "unused.csv".into(),
        with_bounds: false,
    };
    let table = lpow_cli::sweep::run(&spec).map_err(err)?;
    ensure(table.warnings.is_empty(), || table.warnings.join("; "))?;
    let i3322 = table.column(Quantity::I3322Tilde).ok_or("missing column")?;
    let chsh = table.column(Quantity::I2222Tilde).ok_or("missing column")?;
    let min = i3322.iter().copied().fold(f64::INFINITY, f64::min);
    let pin = chsh.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    ensure(min > 1.0, || format!("smallest normalized 3322 value {min}"))?;
    ensure(pin < EXACT_TOL, || format!("normalized CHSH departs from 1 by {pin}"))?;
    Ok(format!("smallest normalized 3322 {min:.5}, CHSH pinned within {pin:e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Duration, fn() -> Outcome); 9] = [
        ("1", "singlet CHSH and symmetric witness", Duration::from_secs(1), singlet),
        ("2", "|00> witnesses", Duration::from_secs(5), zero_zero),
        ("3", "unpolarized states give zero witnesses", Duration::from_secs(30), unpolarized),
        ("4", "sigma state", Duration::from_secs(120), sigma),
        ("5", "Mermin", Duration::from_secs(1), mermin),
        ("6", "transition sweep", Duration::from_secs(120), transition),
        ("7", "property suite", Duration::from_secs(300), properties),
        ("8", "deterministic sweeps", Duration::from_secs(60), determinism),
        ("fig2", "CG family", Duration::from_secs(60), cg_family),
    ];
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if took <= limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {took:.2?}, limit {limit:.0?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL [{id}] {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} criteria, {failures} failed", criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
