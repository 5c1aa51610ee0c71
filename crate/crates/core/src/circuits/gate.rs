use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Active when the control qubit is `|1⟩`.
    Positive,
    /// Active when the control qubit is `|0⟩`.
    Negative,
}

impl Polarity {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn active_value(self) -> bool {
        self == Polarity::Positive
    }

    fn symbol(self) -> char {
        match self {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn new(qubit: usize, polarity: Polarity) -> Self {
        Self { qubit, polarity }
    }

    pub fn positive(qubit: usize) -> Self {
        Self::new(qubit, Polarity::Positive)
    }

    pub fn negative(qubit: usize) -> Self {
        Self::new(qubit, Polarity::Negative)
    }
}

/// Multi-controlled Pauli: applies `sign · P` to `targets` on the subspace
/// where every control matches its polarity, identity elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mcp {
    pub controls: Vec<Control>,
    /// Non-identity letters on distinct qubits.
    pub targets: Vec<(usize, Pauli)>,
    pub sign: Sign,
}

impl Mcp {
    pub fn new(controls: Vec<Control>, targets: Vec<(usize, Pauli)>, sign: Sign) -> Self {
        Self {
            controls,
            targets,
            sign,
        }
    }

    /// Controls reading `value` in binary on `qubits` (qubits[b] carries bit b).
    pub fn binary_controls(qubits: &[usize], value: u64) -> Vec<Control> {
        qubits
            .iter()
            .enumerate()
            .map(|(b, &q)| Control::new(q, Polarity::from_bit(value >> b & 1 == 1)))
            .collect()
    }

    /// Targets taken from a Pauli string laid out on `qubits`; identity
    /// positions are omitted.
    pub fn targets_from(pauli: &PauliString, qubits: &[usize]) -> Vec<(usize, Pauli)> {
        (0..pauli.n_qubits())
            .filter_map(|i| match pauli.get(i) {
                Pauli::I => None,
                l => Some((qubits[i], l)),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    S,
    X,
    Z,
    Cnot,
    Cz,
    Toffoli,
    Mcp,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Mcp => "MCP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Toffoli { controls: [usize; 2], target: usize },
    Mcp(Mcp),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Toffoli {
            controls: [c1, c2],
            target,
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz(..) => GateKind::Cz,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Mcp(_) => GateKind::Mcp,
        }
    }

    /// Operand qubits: controls first, then targets.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Toffoli { controls, target } => vec![controls[0], controls[1], *target],
            Gate::Mcp(m) => m
                .controls
                .iter()
                .map(|c| c.qubit)
                .chain(m.targets.iter().map(|t| t.0))
                .collect(),
        }
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::Toffoli { .. } | Gate::Mcp(_))
    }

    /// Gates that cost T operations once decomposed.
    pub fn is_t_bearing(&self) -> bool {
        match self {
            Gate::Toffoli { .. } => true,
            Gate::Mcp(m) => !m.controls.is_empty(),
            _ => false,
        }
    }

    pub fn control_count(&self) -> usize {
        match self {
            Gate::Cnot { .. } => 1,
            Gate::Toffoli { .. } => 2,
            Gate::Mcp(m) => m.controls.len(),
            _ => 0,
        }
    }

    /// Operands in range and pairwise distinct; MCP targets non-identity.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::InvalidGate(format!(
                    "{self}: qubit {q} out of range for {n_qubits} qubits"
                )));
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidGate(format!("{self}: qubit {q} repeated")));
            }
        }
        if let Gate::Mcp(m) = self {
            if m.targets.is_empty() {
                return Err(Error::InvalidGate("MCP without targets".into()));
            }
            if m.targets.iter().any(|t| t.1 == Pauli::I) {
                return Err(Error::InvalidGate(format!("{self}: identity target")));
            }
        }
        Ok(())
    }

    /// Gates whose product, in order, is the inverse of this gate.
    pub fn inverse(&self) -> Vec<Gate> {
        match self {
            // S† = S·Z = Z·S.
            Gate::S(q) => vec![Gate::S(*q), Gate::Z(*q)],
            g => vec![g.clone()],
        }
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::H(q) => Gate::H(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::X(q) => Gate::X(f(*q)),
            Gate::Z(q) => Gate::Z(f(*q)),
            Gate::Cnot { control, target } => Gate::cnot(f(*control), f(*target)),
            Gate::Cz(a, b) => Gate::Cz(f(*a), f(*b)),
            Gate::Toffoli { controls, target } => {
                Gate::toffoli(f(controls[0]), f(controls[1]), f(*target))
            }
            Gate::Mcp(m) => Gate::Mcp(Mcp {
                controls: m
                    .controls
                    .iter()
                    .map(|c| Control::new(f(c.qubit), c.polarity))
                    .collect(),
                targets: m.targets.iter().map(|&(q, l)| (f(q), l)).collect(),
                sign: m.sign,
            }),
        }
    }

    /// Conjugates `p` in place: `p <- G p G†`. Only Clifford gates qualify.
    pub fn conjugate(&self, p: &mut PauliString) -> Result<()> {
        match *self {
            Gate::H(q) => p.conj_h(q),
            Gate::S(q) => p.conj_s(q),
            Gate::X(q) => p.conj_x(q),
            Gate::Z(q) => p.conj_z(q),
            Gate::Cnot { control, target } => p.conj_cx(control, target),
            Gate::Cz(a, b) => p.conj_cz(a, b),
            _ => return Err(Error::UnsupportedGate(self.to_string())),
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => {
                write!(f, "{} {q}", self.kind().name())
            }
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Toffoli { controls, target } => {
                write!(f, "TOFFOLI {} {} {target}", controls[0], controls[1])
            }
            Gate::Mcp(m) => {
                write!(f, "MCP sign={} controls=", m.sign)?;
                for (i, c) in m.controls.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}:{}", c.qubit, c.polarity.symbol())?;
                }
                f.write_str(" target=")?;
                for (_, l) in &m.targets {
                    write!(f, "{}", l.letter())?;
                }
                f.write_str("@")?;
                for (i, (q, _)) in m.targets.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{q}")?;
                }
                Ok(())
            }
        }
    }
}

/// A named, contiguous qubit range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Register {
    pub fn qubits(&self) -> Vec<usize> {
        (self.start..self.start + self.len).collect()
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn qubit(&self, i: usize) -> usize {
        assert!(
            i < self.len,
            "register {} has {} qubits",
            self.name,
            self.len
        );
        self.start + i
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    registers: Vec<Register>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            registers: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Declares a register; ranges must fit and stay disjoint.
    pub fn add_register(&mut self, name: &str, start: usize, len: usize) -> Result<Register> {
        if self.register(name).is_some() {
            return Err(Error::Register(format!("register {name} declared twice")));
        }
        if start + len > self.n_qubits {
            return Err(Error::Register(format!(
                "register {name} [{start}, {}) exceeds {} qubits",
                start + len,
                self.n_qubits
            )));
        }
        if let Some(r) = self
            .registers
            .iter()
            .find(|r| start < r.end() && r.start < start + len)
        {
            return Err(Error::Register(format!(
                "register {name} overlaps register {}",
                r.name
            )));
        }
        let reg = Register {
            name: name.to_string(),
            start,
            len,
        };
        self.registers.push(reg.clone());
        Ok(reg)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends every gate of `other`, which must not be wider.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits > self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Reversed gate list with each gate inverted; registers are kept.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().flat_map(Gate::inverse).collect(),
            registers: self.registers.clone(),
        }
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn t_bearing_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_t_bearing()).count()
    }
}
