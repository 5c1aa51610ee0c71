//! Line-oriented circuit text.
//!
//! ```text
//! qubits 5
//! register system 0 3
//! H 0
//! CNOT 0 1
//! MCP sign=-1 controls=3:+,4:- target=ZX@0,2
//! ```
//!
//! `#` starts a comment. Staged circuits mark stage boundaries with
//! `# stage <KIND>` lines, which [`parse_staged`] reads back.

use std::fmt::Write as _;

use crate::circuits::gate::{Circuit, Control, Gate, Mcp, Polarity};
use crate::clifford::{Stage, StageKind, StagedCircuit};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, Sign};

fn header(out: &mut String, c: &Circuit) {
    writeln!(out, "qubits {}", c.n_qubits()).unwrap();
    for r in c.registers() {
        writeln!(out, "register {} {} {}", r.name, r.start, r.len).unwrap();
    }
}

pub fn emit_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    header(&mut out, c);
    for g in c.gates() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

pub fn emit_staged(s: &StagedCircuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", s.n_qubits()).unwrap();
    for stage in s.stages() {
        writeln!(out, "# stage {}", stage.kind).unwrap();
        for g in &stage.gates {
            writeln!(out, "{g}").unwrap();
        }
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn num(tok: Option<&str>, line: usize) -> Result<usize> {
    let t = tok.ok_or_else(|| perr(line, "missing operand"))?;
    t.parse()
        .map_err(|_| perr(line, format!("`{t}` is not a qubit index")))
}

fn parse_mcp(tokens: &[&str], line: usize) -> Result<Gate> {
    let mut sign = None;
    let mut controls = None;
    let mut targets = None;
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| perr(line, format!("expected key=value, found `{tok}`")))?;
        match key {
            "sign" => {
                sign = Some(match value {
                    "+1" | "1" => Sign::Plus,
                    "-1" => Sign::Minus,
                    _ => return Err(perr(line, format!("bad sign `{value}`"))),
                })
            }
            "controls" => {
                let mut cs = Vec::new();
                for item in value.split(',').filter(|s| !s.is_empty()) {
                    let (q, pol) = item
                        .split_once(':')
                        .ok_or_else(|| perr(line, format!("bad control `{item}`")))?;
                    let polarity = match pol {
                        "+" => Polarity::Positive,
                        "-" => Polarity::Negative,
                        _ => return Err(perr(line, format!("bad polarity `{pol}`"))),
                    };
                    cs.push(Control::new(num(Some(q), line)?, polarity));
                }
                controls = Some(cs);
            }
            "target" => {
                let (letters, qubits) = value
                    .split_once('@')
                    .ok_or_else(|| perr(line, format!("bad target `{value}`")))?;
                let qs: Vec<usize> = qubits
                    .split(',')
                    .map(|q| num(Some(q), line))
                    .collect::<Result<_>>()?;
                if qs.len() != letters.chars().count() {
                    return Err(perr(line, "target letters and qubits differ in count"));
                }
                let ts = letters
                    .chars()
                    .zip(qs)
                    .map(|(ch, q)| {
                        Pauli::from_char(ch)
                            .map(|p| (q, p))
                            .ok_or_else(|| perr(line, format!("bad Pauli letter `{ch}`")))
                    })
                    .collect::<Result<_>>()?;
                targets = Some(ts);
            }
            _ => return Err(perr(line, format!("unknown MCP field `{key}`"))),
        }
    }
    Ok(Gate::Mcp(Mcp::new(
        controls.ok_or_else(|| perr(line, "MCP without controls field"))?,
        targets.ok_or_else(|| perr(line, "MCP without target field"))?,
        sign.ok_or_else(|| perr(line, "MCP without sign field"))?,
    )))
}

fn parse_gate(text: &str, line: usize) -> Result<Gate> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut it = tokens[1..].iter().copied();
    let gate = match tokens[0] {
        "H" => Gate::H(num(it.next(), line)?),
        "S" => Gate::S(num(it.next(), line)?),
        "X" => Gate::X(num(it.next(), line)?),
        "Z" => Gate::Z(num(it.next(), line)?),
        "CNOT" => Gate::cnot(num(it.next(), line)?, num(it.next(), line)?),
        "CZ" => Gate::Cz(num(it.next(), line)?, num(it.next(), line)?),
        "TOFFOLI" => Gate::toffoli(
            num(it.next(), line)?,
            num(it.next(), line)?,
            num(it.next(), line)?,
        ),
        "MCP" => return parse_mcp(&tokens[1..], line),
        other => return Err(perr(line, format!("unknown gate `{other}`"))),
    };
    if it.next().is_some() {
        return Err(perr(line, "too many operands"));
    }
    Ok(gate)
}

/// Parses circuit text; stage markers are accepted and ignored.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    Ok(parse_inner(text)?.0)
}

/// Parses circuit text with `# stage` markers into a staged circuit.
pub fn parse_staged(text: &str) -> Result<StagedCircuit> {
    let (c, stages) = parse_inner(text)?;
    Ok(StagedCircuit::new(c.n_qubits(), stages))
}

fn parse_inner(text: &str) -> Result<(Circuit, Vec<Stage>)> {
    let mut circuit: Option<Circuit> = None;
    let mut stages: Vec<Stage> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim())),
            None => (raw.trim(), None),
        };
        if let Some(kind) = comment.and_then(|c| c.strip_prefix("stage ")) {
            let kind = match kind.trim() {
                "CX" => StageKind::Cx,
                "CZ" => StageKind::Cz,
                "P" => StageKind::P,
                "H" => StageKind::H,
                k => return Err(perr(line, format!("unknown stage kind `{k}`"))),
            };
            stages.push(Stage {
                kind,
                gates: Vec::new(),
            });
        }
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("qubits") => {
                if circuit.is_some() {
                    return Err(perr(line, "repeated qubits header"));
                }
                circuit = Some(Circuit::new(num(tokens.next(), line)?));
            }
            Some("register") => {
                let c = circuit
                    .as_mut()
                    .ok_or_else(|| perr(line, "register before qubits header"))?;
                let name = tokens.next().ok_or_else(|| perr(line, "missing name"))?;
                let start = num(tokens.next(), line)?;
                let len = num(tokens.next(), line)?;
                c.add_register(name, start, len)
                    .map_err(|e| perr(line, e.to_string()))?;
            }
            Some(_) => {
                let c = circuit
                    .as_mut()
                    .ok_or_else(|| perr(line, "gate before qubits header"))?;
                let g = parse_gate(body, line)?;
                if let Some(stage) = stages.last_mut() {
                    if !stage.kind.admits(&g) {
                        return Err(perr(
                            line,
                            format!("{g} does not belong in a {} stage", stage.kind),
                        ));
                    }
                    stage.gates.push(g.clone());
                }
                c.push(g).map_err(|e| perr(line, e.to_string()))?;
            }
            None => {}
        }
    }
    let c = circuit.ok_or_else(|| perr(1, "missing qubits header"))?;
    Ok((c, stages))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "qubits 5
register system 0 3
register index 3 2
H 0
S 1
CNOT 0 1
CZ 1 2
TOFFOLI 0 1 2
X 4
Z 3
MCP sign=-1 controls=3:+,4:- target=ZX@0,2
MCP sign=+1 controls= target=Y@1
";

    #[test]
    fn round_trip_is_byte_stable() {
        let c = parse_circuit(SAMPLE).unwrap();
        assert_eq!(emit_circuit(&c), SAMPLE);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_circuit("qubits 2\nH 0\nFOO 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_circuit("qubits 2\nCNOT 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_circuit("H 0\n").is_err());
    }

    #[test]
    fn staged_round_trip() {
        let text = "qubits 2\n# stage CX\nCNOT 0 1\n# stage P\nS 0\nZ 1\n# stage H\nH 0\nH 1\n";
        let s = parse_staged(text).unwrap();
        assert_eq!(s.kinds(), vec![StageKind::Cx, StageKind::P, StageKind::H]);
        assert_eq!(emit_staged(&s), text);
        assert!(parse_staged("qubits 2\n# stage CZ\nH 0\n").is_err());
    }
}
