//! Line-oriented circuit text format. Qubit indices are 1-based in the file
//! and 0-based in the returned [`Circuit`].
//!
//! ```text
//! # Toffoli-style phase flip on three controls
//! qubits 4 work 2
//! LAMBDAZ 1 2 3 : 4
//! MZROT pi/4 1 2
//! SQ 1 pi/2 0 -pi/3
//! ```

use std::f64::consts::PI;

use crate::error::{HqcmError, Result};
use crate::state::{BlochVector, NamedGate};

use super::ir::{Circuit, Gate, Step};
use super::macros::MacroGate;

/// Parses a product/quotient of numbers and `pi`, with an optional leading
/// sign: `pi/4`, `-pi`, `3*pi/4`, `0.25`, `-2*pi/3`.
pub fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let t = text.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return Err(format!("empty angle '{text}'"));
    }
    let mut value = 1.0;
    let mut op = '*';
    let mut rest = body;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = match rest[..end].trim() {
            "pi" | "PI" | "π" => PI,
            lit => lit
                .parse::<f64>()
                .map_err(|_| format!("bad angle '{text}'"))?,
        };
        if op == '*' {
            value *= factor;
        } else {
            if factor == 0.0 {
                return Err(format!("division by zero in angle '{text}'"));
            }
            value /= factor;
        }
        if end == rest.len() {
            break;
        }
        op = rest[end..].chars().next().expect("operator present");
        rest = &rest[end + 1..];
    }
    if !value.is_finite() {
        return Err(format!("angle '{text}' is not finite"));
    }
    Ok(sign * value)
}

/// Inverse of [`parse_angle`]: multiples of `π/12` print as `pi`
/// expressions, anything else as a plain decimal.
pub fn format_angle(angle: f64) -> String {
    let twelfths = angle / PI * 12.0;
    let k = twelfths.round();
    if (twelfths - k).abs() > 1e-9 || k.abs() > 1e6 {
        return format!("{angle}");
    }
    let k = k as i64;
    if k == 0 {
        return "0".into();
    }
    let g = gcd(k.unsigned_abs(), 12) as i64;
    let (num, den) = (k / g, 12 / g);
    let sign = if num < 0 { "-" } else { "" };
    let num = num.abs();
    match (num, den) {
        (1, 1) => format!("{sign}pi"),
        (1, d) => format!("{sign}pi/{d}"),
        (n, 1) => format!("{sign}{n}*pi"),
        (n, d) => format!("{sign}{n}*pi/{d}"),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Line<'a> {
    number: usize,
    op: &'a str,
    args: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn err(&self, message: impl Into<String>) -> HqcmError {
        HqcmError::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.args.len() == n {
            Ok(())
        } else {
            Err(self.err(format!("{} takes {n} arguments, got {}", self.op, self.args.len())))
        }
    }

    fn count(&self, s: &str) -> Result<usize> {
        s.parse().map_err(|_| self.err(format!("expected a count, got '{s}'")))
    }

    fn qubit(&self, s: &str) -> Result<usize> {
        match s.parse::<usize>() {
            Ok(q) if q >= 1 => Ok(q - 1),
            _ => Err(self.err(format!("expected a 1-based qubit index, got '{s}'"))),
        }
    }

    fn qubits(&self, items: &[&str]) -> Result<Vec<usize>> {
        items.iter().map(|s| self.qubit(s)).collect()
    }

    fn angle(&self, s: &str) -> Result<f64> {
        parse_angle(s).map_err(|m| self.err(m))
    }

    /// Splits `a b : c d` around the single colon.
    fn split_colon<'b>(&self, items: &'b [&'a str]) -> Result<(&'b [&'a str], &'b [&'a str])> {
        let pos = items
            .iter()
            .position(|s| *s == ":")
            .ok_or_else(|| self.err("expected ':' between controls and targets"))?;
        Ok((&items[..pos], &items[pos + 1..]))
    }
}

fn tokenize(number: usize, raw: &str) -> Option<Line<'_>> {
    let content = raw.split('#').next().unwrap_or("");
    let mut words = content.split_whitespace();
    let op = words.next()?;
    Some(Line {
        number,
        op,
        args: words.collect(),
    })
}

fn header(line: &Line) -> Result<Circuit> {
    if !line.op.eq_ignore_ascii_case("qubits") {
        return Err(line.err("first statement must be 'qubits <n> [work <w>]'"));
    }
    let (n, w) = match line.args.as_slice() {
        [n] => (line.count(n)?, 0),
        [n, kw, w] if kw.eq_ignore_ascii_case("work") => (line.count(n)?, line.count(w)?),
        _ => return Err(line.err("expected 'qubits <n> [work <w>]'")),
    };
    if n == 0 {
        return Err(line.err("a circuit needs at least one logical qubit"));
    }
    Ok(Circuit::new(n, w))
}

fn statement(line: &Line, circuit: &Circuit) -> Result<Vec<Step>> {
    let a = &line.args;
    let single = |g: Gate| Ok(vec![Step::single(g)]);
    match line.op.to_ascii_uppercase().as_str() {
        "H" | "X" | "Z" => {
            line.arity(1)?;
            let gate = match line.op.to_ascii_uppercase().as_str() {
                "H" => NamedGate::H,
                "X" => NamedGate::X,
                _ => NamedGate::Z,
            };
            single(Gate::named(line.qubit(a[0])?, gate))
        }
        "RZ" => {
            line.arity(2)?;
            single(Gate::named(line.qubit(a[0])?, NamedGate::Rz(line.angle(a[1])?)))
        }
        "SQ" => {
            line.arity(4)?;
            single(Gate::SingleQubit {
                qubit: line.qubit(a[0])?,
                axis: BlochVector::new(line.angle(a[1])?, line.angle(a[2])?),
                angle: line.angle(a[3])?,
            })
        }
        "CZ" => {
            line.arity(2)?;
            single(Gate::Cz(line.qubit(a[0])?, line.qubit(a[1])?))
        }
        "MZROT" => {
            if a.len() < 2 {
                return Err(line.err("MZROT takes an angle and at least one qubit"));
            }
            single(Gate::rotation(line.qubits(&a[1..])?, line.angle(a[0])?))
        }
        "LAMBDA1" => {
            let (head, targets) = line.split_colon(a)?;
            let [angle, control] = head else {
                return Err(line.err("expected 'LAMBDA1 <angle> c : t...'"));
            };
            MacroGate::Lambda1 {
                control: line.qubit(control)?,
                targets: line.qubits(targets)?,
                angle: line.angle(angle)?,
            }
            .steps(circuit)
        }
        "LAMBDA2" => {
            let (head, targets) = line.split_colon(a)?;
            let [angle, c1, c2] = head else {
                return Err(line.err("expected 'LAMBDA2 <angle> c1 c2 : t...'"));
            };
            MacroGate::Lambda2 {
                controls: [line.qubit(c1)?, line.qubit(c2)?],
                targets: line.qubits(targets)?,
                angle: line.angle(angle)?,
            }
            .steps(circuit)
        }
        "LAMBDAZ" => {
            let (controls, target) = line.split_colon(a)?;
            let [target] = target else {
                return Err(line.err("LAMBDAZ takes exactly one target"));
            };
            MacroGate::LambdaZ {
                controls: line.qubits(controls)?,
                target: line.qubit(target)?,
            }
            .steps(circuit)
        }
        "GROVER" => {
            let (n, marked, iterations) = match a.as_slice() {
                [n, j] => (line.count(n)?, line.count(j)?, None),
                [n, j, k] => (line.count(n)?, line.count(j)?, Some(line.count(k)?)),
                _ => return Err(line.err("expected 'GROVER <n> <marked> [iterations]'")),
            };
            MacroGate::Grover {
                n,
                marked,
                iterations,
            }
            .steps(circuit)
        }
        "QUBITS" => Err(line.err("duplicate 'qubits' header")),
        other => Err(line.err(format!("unknown gate '{other}'"))),
    }
}

/// Attaches the line number and restores 1-based qubit labels.
fn one_based(line: &Line, e: HqcmError) -> HqcmError {
    match e {
        HqcmError::Parse { .. } => e,
        HqcmError::QubitOutOfRange { qubit, num_qubits } => line.err(format!(
            "qubit {} out of range for a register of {num_qubits} qubits",
            qubit + 1
        )),
        HqcmError::SameQubit(q) => line.err(format!("qubit {} used twice in one gate", q + 1)),
        HqcmError::Input(m) => line.err(m),
        other => line.err(other.to_string()),
    }
}

/// Parses a whole circuit file.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| tokenize(i + 1, raw));
    let first = lines.next().ok_or(HqcmError::Parse {
        line: 1,
        message: "empty circuit file".into(),
    })?;
    let mut circuit = header(&first)?;
    for line in lines {
        let steps = statement(&line, &circuit).map_err(|e| one_based(&line, e))?;
        for step in steps {
            circuit.push_step(step).map_err(|e| one_based(&line, e))?;
        }
    }
    Ok(circuit)
}
