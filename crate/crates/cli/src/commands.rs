use std::f64::consts::PI;

use clap::{Args, Subcommand, ValueEnum};
use pathsum::algorithms::{deutsch_run, grover_iterate, AmplitudeProfile, GroverInstance, Verdict};
use pathsum::anneal::{
    grover_gap, grover_pair, linear_schedule_time_bound, local_adiabatic_schedule, protocol_curve, qaoa_evolve,
    ring_hamiltonians, spectral_gap, trotterize, HamiltonianPair, MixerSign, QaoaAngles, Schedule,
};
use pathsum::dense::{Circuit, Gate, State, TruthTable};
use pathsum::paths::{propagator_column_threaded, qft_element, random_circuit, QftGroup};
use pathsum::statmech::{
    free_propagator_discretized, free_propagator_exact, partition_transfer, sign_statistics,
    single_spin_partition_exact, tfim_euclidean_action, trotter_partition_single_spin, Grid, SignModel,
    SpinConfiguration,
};
use pathsum::walks::{
    checkerboard_kernel, classical_rw_distribution, ctqrw_bessel, ctqrw_exact, dtqrw_combinatorial_from, dtqrw_run,
    gaussian_limit_density, grover_walk, Coin, StartDirection, WalkerState,
};
use pathsum::Complex;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::{Cell, Table};
use crate::Common;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pathsum::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use pathsum::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::InvalidParameter { .. }
                | E::DimensionMismatch { .. }
                | E::QubitOutOfRange { .. }
                | E::BasisOutOfRange { .. }
                | E::NotHermitian { .. }
                | E::NotUnitary { .. }
                | E::NotFlaggedUnitary
                | E::NonPeriodic => 2,
                _ => 1,
            },
        }
    }
}

type Out = Result<Table, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn complex_cells(z: Complex<f64>) -> [Cell; 3] {
    [z.re.into(), z.im.into(), z.norm_sqr().into()]
}

fn parse_list(s: &str, name: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("--{name}: `{t}` is not a number"))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QftKind {
    Z2,
    Cyclic,
}

#[derive(Debug, Args)]
pub struct PathsumArgs {
    /// Register size.
    #[arg(long)]
    qubits: usize,
    /// Gate list such as `h0 ccx0,1,2 cx1,2 x0`.
    #[arg(long, conflicts_with_all = ["random", "qft"])]
    gates: Option<String>,
    /// Draw a random Hadamard/Toffoli circuit from `--seed`.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 20)]
    depth: usize,
    #[arg(long, default_value_t = 10)]
    max_hadamards: usize,
    /// Fourier transform matrix elements instead of a circuit.
    #[arg(long, value_enum)]
    qft: Option<QftKind>,
    #[arg(long)]
    z_in: Option<usize>,
    #[arg(long)]
    z_out: Option<usize>,
}

fn parse_gate(tok: &str) -> Result<Gate, CliError> {
    let split = tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len());
    let (name, rest) = tok.split_at(split);
    let idx: Vec<usize> = rest
        .split(',')
        .map(|s| s.parse::<usize>().map_err(|_| usage(format!("--gates: bad qubit list in `{tok}`"))))
        .collect::<Result<_, _>>()?;
    match (name.to_ascii_lowercase().as_str(), idx.as_slice()) {
        ("h", [q]) => Ok(Gate::Hadamard(*q)),
        ("x", [q]) => Ok(Gate::Not(*q)),
        ("cx" | "cnot", [c, t]) => Ok(Gate::cnot(*c, *t)),
        ("ccx" | "toffoli", [a, b, t]) => Ok(Gate::toffoli(*a, *b, *t)),
        _ => Err(usage(format!("--gates: unknown gate `{tok}`"))),
    }
}

pub fn pathsum(a: &PathsumArgs, common: &Common) -> Out {
    if common.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let n = a.qubits;
    if n == 0 || n > pathsum::dense::MAX_DENSE_QUBITS {
        return Err(usage(format!("--qubits must lie in 1..={}", pathsum::dense::MAX_DENSE_QUBITS)));
    }
    let dim = 1usize << n;
    let inputs: Vec<usize> = a.z_in.map_or_else(|| (0..dim).collect(), |z| vec![z]);
    let outputs: Vec<usize> = a.z_out.map_or_else(|| (0..dim).collect(), |z| vec![z]);
    for &z in inputs.iter().chain(&outputs) {
        if z >= dim {
            return Err(pathsum::Error::BasisOutOfRange { z, dim }.into());
        }
    }
    let mut t = Table::new(&["z_in", "z_out", "re", "im", "probability"]);
    let mut emit = |zi: usize, column: &dyn Fn(usize) -> Complex<f64>| {
        for &zo in &outputs {
            let [re, im, p] = complex_cells(column(zo));
            t.push(vec![zi.into(), zo.into(), re, im, p]);
        }
    };
    if let Some(kind) = a.qft {
        let group = match kind {
            QftKind::Z2 => QftGroup::Z2Power,
            QftKind::Cyclic => QftGroup::Cyclic,
        };
        for &zi in &inputs {
            let col: Vec<Complex<f64>> =
                (0..dim).map(|zo| qft_element(group, n, zi, zo)).collect::<Result<_, _>>()?;
            emit(zi, &|zo| col[zo]);
        }
        return Ok(t);
    }
    let circuit = if a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        random_circuit(n, a.depth, a.max_hadamards, &mut rng)?
    } else {
        let text = a.gates.as_deref().ok_or_else(|| usage("one of --gates, --random or --qft is required"))?;
        let gates = text
            .split(|c: char| c.is_whitespace() || c == ';')
            .filter(|s| !s.is_empty())
            .map(parse_gate)
            .collect::<Result<Vec<_>, _>>()?;
        Circuit::new(n, gates)?
    };
    for &zi in &inputs {
        let col = propagator_column_threaded::<f64>(&circuit, zi, common.threads)?;
        emit(zi, &|zo| col[zo]);
    }
    Ok(t)
}

#[derive(Debug, Args)]
pub struct DeutschArgs {
    /// Truth table `f(0)f(1)`, e.g. `01`; all four functions when absent.
    #[arg(long)]
    f: Option<String>,
}

pub fn deutsch(a: &DeutschArgs) -> Out {
    let tables: Vec<String> = match &a.f {
        Some(s) => vec![s.clone()],
        None => ["00", "11", "01", "10"].iter().map(|s| s.to_string()).collect(),
    };
    let mut t = Table::new(&["f0", "f1", "verdict", "probability_one", "paths"]);
    for s in tables {
        let bits: Vec<bool> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(usage("--f takes two characters from {0,1}")),
            })
            .collect::<Result<_, _>>()?;
        if bits.len() != 2 {
            return Err(usage("--f takes two characters from {0,1}"));
        }
        let r = deutsch_run::<f64>(&TruthTable::new(bits.clone())?)?;
        let verdict = match r.verdict {
            Verdict::Constant => "constant",
            Verdict::Balanced => "balanced",
        };
        t.push(vec![
            usize::from(bits[0]).into(),
            usize::from(bits[1]).into(),
            verdict.into(),
            r.probability_one.into(),
            r.paths.len().into(),
        ]);
    }
    Ok(t)
}

#[derive(Debug, Args)]
pub struct GroverArgs {
    /// Number of qubits; `N = 2^n` items.
    #[arg(long)]
    n: usize,
    /// Marked item.
    #[arg(long)]
    w: usize,
    /// Iterations; defaults to `round(π√N/4)`.
    #[arg(long)]
    iters: Option<usize>,
}

pub fn grover(a: &GroverArgs) -> Out {
    let g = GroverInstance::new(a.n, a.w)?;
    let iters = a.iters.unwrap_or_else(|| (PI / 4.0 * (g.items() as f64).sqrt()).round() as usize);
    if iters > pathsum::algorithms::MAX_CURVE_ITERATIONS {
        return Err(usage(format!("--iters exceeds {}", pathsum::algorithms::MAX_CURVE_ITERATIONS)));
    }
    let mut t = Table::new(&["iter", "z", "amplitude_re", "amplitude_im", "prob"]);
    let mut p = AmplitudeProfile::<f64>::uniform(&g);
    for k in 0..=iters {
        if k > 0 {
            p = grover_iterate(&p, &g)?;
        }
        for (z, amp) in p.amplitudes.iter().enumerate() {
            let [re, im, pr] = complex_cells(*amp);
            t.push(vec![k.into(), z.into(), re, im, pr]);
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Grover,
    Ring,
}

#[derive(Debug, Subcommand)]
pub enum AnnealCommand {
    /// `(t, λ, gap)` along the linear and local-adiabatic schedules.
    Protocol {
        #[arg(long = "N")]
        n_items: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Final state of a QAOA circuit.
    Qaoa {
        #[arg(long, value_enum)]
        problem: Problem,
        /// Number of qubits.
        #[arg(long)]
        n: usize,
        /// Marked item for the Grover problem.
        #[arg(long, default_value_t = 0)]
        w: usize,
        /// Comma-separated mixer angles.
        #[arg(long, requires = "gamma", conflicts_with = "trotter")]
        beta: Option<String>,
        /// Comma-separated problem angles.
        #[arg(long, requires = "beta")]
        gamma: Option<String>,
        /// Layers of a trotterized linear schedule of duration `--time`.
        #[arg(long, requires = "time")]
        trotter: Option<usize>,
        #[arg(long)]
        time: Option<f64>,
    },
    /// Spectral gap of the Grover interpolation.
    Gap {
        #[arg(long = "N")]
        n_items: usize,
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Add a column from dense eigensolves (`N` a power of two).
        #[arg(long)]
        dense: bool,
    },
}

fn grid_points(points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    Ok((0..points).map(|i| i as f64 / (points - 1) as f64).collect())
}

pub fn anneal(c: &AnnealCommand) -> Out {
    match c {
        AnnealCommand::Protocol { n_items, eps, points } => {
            let mut t = Table::new(&["schedule", "t", "lambda", "gap"]);
            let linear = Schedule::linear(linear_schedule_time_bound(*n_items, *eps)?)?;
            let local = local_adiabatic_schedule(*n_items, *eps)?;
            for (name, s) in [("linear", &linear), ("local", &local)] {
                for (time, lam, gap) in protocol_curve(s, *n_items, *points)? {
                    t.push(vec![name.into(), time.into(), lam.into(), gap.into()]);
                }
            }
            Ok(t)
        }
        AnnealCommand::Qaoa { problem, n, w, beta, gamma, trotter, time } => {
            let pair: HamiltonianPair<f64> = match problem {
                Problem::Grover => grover_pair(*n, *w)?,
                Problem::Ring => ring_hamiltonians(*n, MixerSign::Negative)?,
            };
            let angles = match (beta, gamma, trotter, time) {
                (Some(b), Some(g), None, _) => QaoaAngles::new(parse_list(b, "beta")?, parse_list(g, "gamma")?)?,
                (None, None, Some(m), Some(total)) => trotterize(&Schedule::linear(*total)?, *m)?,
                _ => return Err(usage("give either --beta/--gamma or --trotter/--time")),
            };
            let out = qaoa_evolve(&angles, &pair, &State::uniform(pair.dim()))?;
            let mut t = Table::new(&["z", "amplitude_re", "amplitude_im", "prob"]);
            for (z, amp) in out.amplitudes().iter().enumerate() {
                let [re, im, p] = complex_cells(*amp);
                t.push(vec![z.into(), re, im, p]);
            }
            Ok(t)
        }
        AnnealCommand::Gap { n_items, points, dense } => {
            let lams = grid_points(*points)?;
            let pair = if *dense {
                if !n_items.is_power_of_two() {
                    return Err(usage("--dense needs N to be a power of two"));
                }
                Some(grover_pair::<f64>(n_items.trailing_zeros() as usize, 0)?)
            } else {
                None
            };
            let cols: &[&'static str] = if *dense { &["lambda", "gap", "gap_dense"] } else { &["lambda", "gap"] };
            let mut t = Table::new(cols);
            for lam in lams {
                let mut row: Vec<Cell> = vec![lam.into(), grover_gap(lam, *n_items)?.into()];
                if let Some(p) = &pair {
                    row.push(spectral_gap(p, lam)?.into());
                }
                t.push(row);
            }
            Ok(t)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    Exact,
    Bessel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoinArg {
    Up,
    Down,
    Symmetrized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Simulate,
    Combinatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Start {
    Right,
    Left,
    Superposed,
}

#[derive(Debug, Subcommand)]
pub enum WalksCommand {
    /// Exact symmetric random walk distribution with its Gaussian limit.
    Classical {
        #[arg(long)]
        steps: usize,
    },
    /// Continuous-time walk kernel on the ring.
    Ctqrw {
        #[arg(long = "N", default_value_t = 1000)]
        n_sites: usize,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Kernel::Exact)]
        kernel: Kernel,
        /// Largest `|d|` listed; defaults to `⌈2t⌉ + 20`.
        #[arg(long)]
        range: Option<usize>,
    },
    /// Hadamard walk on the line.
    Dtqrw {
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = CoinArg::Symmetrized)]
        coin: CoinArg,
        #[arg(long, value_enum, default_value_t = Method::Simulate)]
        method: Method,
    },
    /// Lattice path kernel weighted by reversals.
    Checkerboard {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        mass_a: f64,
        #[arg(long, value_enum, default_value_t = Start::Superposed)]
        start: Start,
    },
    /// Success probability of the search Hamiltonian over time.
    GroverWalk {
        #[arg(long = "N")]
        n_items: usize,
        /// Defaults to `1/N`.
        #[arg(long)]
        gamma: Option<f64>,
        /// Defaults to `π√N/2`.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

pub fn walks(c: &WalksCommand) -> Out {
    match c {
        WalksCommand::Classical { steps } => {
            let d = classical_rw_distribution(*steps)?;
            let mut t = Table::new(&["z", "probability", "gaussian", "exact"]);
            for ((z, p), (_, real)) in d.entries().zip(d.to_real::<f64>()) {
                let g = if *steps == 0 { f64::NAN } else { gaussian_limit_density(*steps as f64, z as f64)? };
                t.push(vec![z.into(), real.into(), g.into(), p.to_string().into()]);
            }
            Ok(t)
        }
        WalksCommand::Ctqrw { n_sites, t: time, kernel, range } => {
            if !(time.is_finite() && *time >= 0.0) {
                return Err(usage("--t must be finite and nonnegative"));
            }
            let r = range.unwrap_or((2.0 * time).ceil() as usize + 20) as i64;
            let mut t = Table::new(&["d", "re", "im", "probability"]);
            for d in -r..=r {
                let k = match kernel {
                    Kernel::Exact => ctqrw_exact(*n_sites, *time, d)?,
                    Kernel::Bessel => ctqrw_bessel(*time, d)?,
                };
                let [re, im, p] = complex_cells(k);
                t.push(vec![d.into(), re, im, p]);
            }
            Ok(t)
        }
        WalksCommand::Dtqrw { steps, coin, method } => {
            let coin = match coin {
                CoinArg::Up => Coin::Up,
                CoinArg::Down => Coin::Down,
                CoinArg::Symmetrized => Coin::Symmetric,
            };
            if *steps > pathsum::walks::MAX_COMBINATORIAL_STEPS {
                return Err(usage(format!("--steps exceeds {}", pathsum::walks::MAX_COMBINATORIAL_STEPS)));
            }
            let n = *steps as i64;
            let mut t = Table::new(&["z", "probability"]);
            match method {
                Method::Simulate => {
                    let s = dtqrw_run(&WalkerState::at_origin(coin.spinor::<f64>())?, *steps);
                    for (z, p) in s.distribution() {
                        t.push(vec![z.into(), p.into()]);
                    }
                }
                Method::Combinatorial => {
                    for z in -n..=n {
                        let (l, r) = dtqrw_combinatorial_from(*steps, z, coin.spinor::<f64>())?;
                        t.push(vec![z.into(), (l.norm_sqr() + r.norm_sqr()).into()]);
                    }
                }
            }
            Ok(t)
        }
        WalksCommand::Checkerboard { steps, mass_a, start } => {
            let start = match start {
                Start::Right => StartDirection::Right,
                Start::Left => StartDirection::Left,
                Start::Superposed => StartDirection::Superposed,
            };
            let n = *steps as i64;
            let mut t = Table::new(&["z", "re", "im", "probability"]);
            for z in -n..=n {
                let [re, im, p] = complex_cells(checkerboard_kernel(*steps, z, *mass_a, start)?);
                t.push(vec![z.into(), re, im, p]);
            }
            Ok(t)
        }
        WalksCommand::GroverWalk { n_items, gamma, time, points } => {
            let nf = *n_items as f64;
            let gamma = gamma.unwrap_or(1.0 / nf);
            let total = time.unwrap_or(PI * nf.sqrt() / 2.0);
            let mut t = Table::new(&["t", "probability"]);
            for s in grid_points(*points)? {
                let at = s * total;
                t.push(vec![at.into(), grover_walk(*n_items, gamma, at)?.into()]);
            }
            Ok(t)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Xz,
    Xy,
}

#[derive(Debug, Subcommand)]
pub enum StatmechCommand {
    /// Ring partition functions `Tr(Tⁿ)` for sizes 2 through `--n`.
    Transfer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: f64,
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Sliced single-spin partition function against the exact value.
    Trotter {
        #[arg(long)]
        h: f64,
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        beta: f64,
        /// Slices run over powers of two up to this value.
        #[arg(long, default_value_t = 64)]
        max_slices: usize,
    },
    /// Phase histogram of closed path weights.
    Sign {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        h: f64,
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        slices: usize,
    },
    /// Euclidean action of a spin grid written as rows of `+`/`-` joined by `/`.
    Action {
        #[arg(long)]
        config: String,
        #[arg(long)]
        h: f64,
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        dtau: f64,
    },
    /// Free-particle propagator, closed form and sliced.
    Propagator {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xf: f64,
        #[arg(long, default_value_t = 32)]
        slices: usize,
        #[arg(long, default_value_t = 40.0)]
        extent: f64,
        #[arg(long, default_value_t = 0.05)]
        spacing: f64,
    },
}

pub fn statmech(c: &StatmechCommand) -> Out {
    match c {
        StatmechCommand::Transfer { n, h, j, beta } => {
            if *n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            let mut t = Table::new(&["n", "partition"]);
            for k in 2..=*n {
                t.push(vec![k.into(), partition_transfer(k, *h, *j, *beta)?.into()]);
            }
            Ok(t)
        }
        StatmechCommand::Trotter { h, j, beta, max_slices } => {
            let exact = single_spin_partition_exact(*h, *j, *beta);
            let mut t = Table::new(&["slices", "partition", "exact", "error"]);
            let mut m = 2;
            while m <= *max_slices {
                let z = trotter_partition_single_spin(*h, *j, *beta, m)?;
                t.push(vec![m.into(), z.into(), exact.into(), (z - exact).into()]);
                m *= 2;
            }
            if t.rows().is_empty() {
                return Err(usage("--max-slices must be at least 2"));
            }
            Ok(t)
        }
        StatmechCommand::Sign { model, h, j, beta, slices } => {
            let model = match model {
                ModelArg::Xz => SignModel::XzInZBasis,
                ModelArg::Xy => SignModel::XyInZBasis,
            };
            let hist = sign_statistics(model, *h, *j, *beta, *slices)?;
            let mut t = Table::new(&["phase", "paths", "weight"]);
            for (k, name) in ["+1", "+i", "-1", "-i"].iter().enumerate() {
                t.push(vec![(*name).into(), hist.counts[k].into(), hist.weights[k].into()]);
            }
            Ok(t)
        }
        StatmechCommand::Action { config, h, j, dtau } => {
            let rows: Vec<Vec<i8>> = config
                .split('/')
                .map(|r| {
                    r.chars()
                        .map(|ch| match ch {
                            '+' => Ok(1),
                            '-' => Ok(-1),
                            _ => Err(usage("--config uses `+`, `-` and `/` only")),
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let a = tfim_euclidean_action(&SpinConfiguration::from_rows(&rows)?, *h, *j, *dtau)?;
            let mut t = Table::new(&[
                "temporal",
                "spatial",
                "offset",
                "log_prefactor",
                "temporal_flips",
                "spatial_walls",
            ]);
            t.push(vec![
                a.temporal.into(),
                a.spatial.into(),
                a.offset.into(),
                a.log_prefactor.into(),
                a.temporal_flips.into(),
                a.spatial_walls.into(),
            ]);
            Ok(t)
        }
        StatmechCommand::Propagator { m, t: time, xi, xf, slices, extent, spacing } => {
            let exact = free_propagator_exact(*m, *time, *xi, *xf)?;
            let grid = Grid { extent: *extent, spacing: *spacing };
            let sliced = free_propagator_discretized(*m, *time, *xi, *xf, *slices, grid)?;
            let mut t = Table::new(&["method", "re", "im", "modulus"]);
            for (name, k) in [("exact", exact), ("sliced", sliced)] {
                t.push(vec![name.into(), k.re.into(), k.im.into(), k.norm().into()]);
            }
            Ok(t)
        }
    }
}
