use crate::error::{Error, Result};

/// Explicit truth table of a Boolean function over `inputs` bits.
///
/// Entry `x` holds `f(x)`, where the first input bit is the most significant
/// bit of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    inputs: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        let len = bits.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::param(
                "truth table",
                format!("length {len} is not a positive power of two"),
            ));
        }
        Ok(Self {
            inputs: len.trailing_zeros() as usize,
            bits,
        })
    }

    pub fn from_fn(inputs: usize, f: impl Fn(usize) -> bool) -> Self {
        Self {
            inputs,
            bits: (0..1usize << inputs).map(f).collect(),
        }
    }

    /// Indicator of a single marked item, `f(x) = [x == marked]`.
    pub fn indicator(inputs: usize, marked: usize) -> Self {
        Self::from_fn(inputs, |x| x == marked)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.bits[x]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Gates of the circuit model. Every gate acts on a register of `n` qubits
/// addressed by index, qubit 0 being the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Hadamard(usize),
    Not(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        controls: [usize; 2],
        target: usize,
    },
    /// `|z⟩ ↦ (-1)^{f(z)} |z⟩` with `f` tabulated over the whole register.
    PhaseOracle(TruthTable),
    /// `|x, q⟩ ↦ |x, q ⊕ f(x)⟩`, `x` read from `inputs` in order.
    BitFlipOracle {
        inputs: Vec<usize>,
        target: usize,
        table: TruthTable,
    },
}

impl Gate {
    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Toffoli {
            controls: [c1, c2],
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    /// True for gates that split a basis state into several successors.
    pub fn is_branching(&self) -> bool {
        matches!(self, Gate::Hadamard(_))
    }

    /// Checks qubit indices and table sizes against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange {
                    index: q,
                    qubits: n,
                })
            }
        };
        let distinct = |qs: &[usize]| {
            for (i, a) in qs.iter().enumerate() {
                if qs[i + 1..].contains(a) {
                    return Err(Error::param("gate", format!("qubit {a} used twice")));
                }
            }
            Ok(())
        };
        match self {
            Gate::Hadamard(t) | Gate::Not(t) => check(*t),
            Gate::Cnot { control, target } => {
                check(*control)?;
                check(*target)?;
                distinct(&[*control, *target])
            }
            Gate::Toffoli { controls, target } => {
                check(controls[0])?;
                check(controls[1])?;
                check(*target)?;
                distinct(&[controls[0], controls[1], *target])
            }
            Gate::PhaseOracle(table) => {
                if table.inputs() != n {
                    return Err(Error::param(
                        "phase oracle",
                        format!("table covers {} bits, register has {n}", table.inputs()),
                    ));
                }
                Ok(())
            }
            Gate::BitFlipOracle {
                inputs,
                target,
                table,
            } => {
                for &q in inputs {
                    check(q)?;
                }
                check(*target)?;
                let mut all = inputs.clone();
                all.push(*target);
                distinct(&all)?;
                if table.inputs() != inputs.len() {
                    return Err(Error::param(
                        "bit-flip oracle",
                        format!(
                            "table covers {} bits but {} inputs were given",
                            table.inputs(),
                            inputs.len()
                        ),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Ordered gate list on a fixed register, applied first to last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::param("qubits", "register must hold at least one qubit"));
        }
        if qubits > 30 {
            return Err(Error::param("qubits", format!("{qubits} exceeds 30")));
        }
        for g in &gates {
            g.validate(qubits)?;
        }
        Ok(Self { qubits, gates })
    }

    pub fn empty(qubits: usize) -> Result<Self> {
        Self::new(qubits, Vec::new())
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn hadamard_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_branching()).count()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Concatenation `self` then `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.qubits != other.qubits {
            return Err(Error::DimensionMismatch {
                expected: self.qubits,
                found: other.qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit {
            qubits: self.qubits,
            gates,
        })
    }
}

/// Value of qubit `j` in the basis index `z` of an `n`-qubit register.
#[inline]
pub fn qubit_value(z: usize, n: usize, j: usize) -> usize {
    (z >> (n - 1 - j)) & 1
}

#[inline]
pub fn flip_qubit(z: usize, n: usize, j: usize) -> usize {
    z ^ (1 << (n - 1 - j))
}

/// Gathers the bits of `z` at `qubits` into an integer, first qubit most significant.
pub fn gather_bits(z: usize, n: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | qubit_value(z, n, q))
}
