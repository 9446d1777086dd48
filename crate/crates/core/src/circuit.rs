//! Staged circuit IR for the measurement-assisted normal form and the synthesis pass.
//!
//! A circuit on `n` data qubits uses `2n` ancillas `a_iz, a_ix` and `2n`
//! classical bits `m_iz, m_ix`, and runs five stages in order:
//!
//! * `A`: prepare every ancilla in `|+>`;
//! * `CPn`: controlled tableau rows, `a_iz` controls `C† Z_i C`, `a_ix` controls `C† X_i C`;
//! * `CP1`: single-qubit controlled `X_i` (from `a_ix`) and `Z_i` (from `a_iz`);
//! * `MA`: X-basis measurement of every ancilla into its bit;
//! * `P1`: `X_i` when `m_iz = 1`, `Z_i` when `m_ix = 1`.
//!
//! Outcome `+1` records bit `0`, outcome `-1` records bit `1`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Factor, SignedPauli};
use crate::tableau::{content_lines, parse_size_line, Generator, RowLabel, Tableau};

pub const CIRCUIT_HEADER: &str = "mcs-circuit v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    A,
    CPn,
    CP1,
    MA,
    P1,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::A, Stage::CPn, Stage::CP1, Stage::MA, Stage::P1];

    pub fn name(self) -> &'static str {
        match self {
            Stage::A => "A",
            Stage::CPn => "CPn",
            Stage::CP1 => "CP1",
            Stage::MA => "MA",
            Stage::P1 => "P1",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ancilla `a_iz` / `a_ix`, named after the tableau row it controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ancilla(pub RowLabel);

/// Classical bit `m_iz` / `m_ix`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalBit(pub RowLabel);

impl Ancilla {
    pub fn z(qubit: usize) -> Self {
        Ancilla(RowLabel {
            qubit,
            generator: Generator::Z,
        })
    }

    pub fn x(qubit: usize) -> Self {
        Ancilla(RowLabel {
            qubit,
            generator: Generator::X,
        })
    }

    /// Position in the ancilla register: `a_1z, a_1x, a_2z, ...`.
    pub fn index(self) -> usize {
        self.0.row_index()
    }

    pub fn bit(self) -> ClassicalBit {
        ClassicalBit(self.0)
    }
}

impl ClassicalBit {
    /// Position in the outcome vector `(m_1z, m_1x, ..., m_nz, m_nx)`.
    pub fn index(self) -> usize {
        self.0.row_index()
    }
}

fn write_label(f: &mut fmt::Formatter<'_>, prefix: char, l: RowLabel) -> fmt::Result {
    let g = match l.generator {
        Generator::Z => 'z',
        Generator::X => 'x',
    };
    write!(f, "{prefix}{}{g}", l.qubit + 1)
}

impl fmt::Display for Ancilla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_label(f, 'a', self.0)
    }
}

impl fmt::Display for ClassicalBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_label(f, 'm', self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Correction {
    X,
    Z,
}

impl Correction {
    pub fn factor(self) -> Factor {
        match self {
            Correction::X => Factor::X,
            Correction::Z => Factor::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    PrepPlus(Ancilla),
    /// Applies `payload` (sign included) to the data register when `control` is `|1>`.
    ControlledPauli {
        control: Ancilla,
        payload: SignedPauli,
    },
    MeasureX {
        ancilla: Ancilla,
        bit: ClassicalBit,
    },
    /// Applies `pauli` to data qubit `qubit` (0-based) when `bit` is 1.
    ClassicalCorrection {
        bit: ClassicalBit,
        pauli: Correction,
        qubit: usize,
    },
}

impl Gate {
    /// Joint-register resources: ancillas `0..2n`, data `2n..3n`, bits `3n..5n`.
    fn resources(&self, n: usize) -> Vec<usize> {
        match self {
            Gate::PrepPlus(a) => vec![a.index()],
            Gate::ControlledPauli { control, payload } => {
                let mut r = vec![control.index()];
                r.extend(payload.string().support().into_iter().map(|q| 2 * n + q));
                r
            }
            Gate::MeasureX { ancilla, bit } => vec![ancilla.index(), 3 * n + bit.index()],
            Gate::ClassicalCorrection { bit, qubit, .. } => vec![3 * n + bit.index(), 2 * n + qubit],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::PrepPlus(a) => write!(f, "prep+ {a}"),
            Gate::ControlledPauli { control, payload } => write!(f, "cp {control} {payload}"),
            Gate::MeasureX { ancilla, bit } => write!(f, "mx {ancilla} -> {bit}"),
            Gate::ClassicalCorrection { bit, pauli, qubit } => {
                write!(f, "cpc {bit} {}@{}", pauli.factor().to_char(), qubit + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    /// `bounds[s]..bounds[s + 1]` is the gate range of stage `s`.
    bounds: [usize; 6],
}

impl Circuit {
    /// Assembles a circuit from per-stage gate lists and checks every structural invariant.
    pub fn from_stages(n: usize, stages: [Vec<Gate>; 5]) -> Result<Circuit> {
        let mut bounds = [0usize; 6];
        let mut gates = Vec::new();
        for (s, stage_gates) in stages.into_iter().enumerate() {
            gates.extend(stage_gates);
            bounds[s + 1] = gates.len();
        }
        let c = Circuit { n, gates, bounds };
        c.validate()?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ancilla_count(&self) -> usize {
        2 * self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn stage(&self, s: Stage) -> &[Gate] {
        &self.gates[self.bounds[s.index()]..self.bounds[s.index() + 1]]
    }

    pub fn stages(&self) -> impl Iterator<Item = (Stage, &[Gate])> {
        Stage::ALL.into_iter().map(move |s| (s, self.stage(s)))
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        let fail = |msg: String| Err(Error::InvalidCircuit(msg));
        if n == 0 {
            return fail("circuit needs at least one data qubit".into());
        }
        let check_label = |l: RowLabel| -> Result<()> {
            if l.qubit >= n {
                Err(Error::InvalidCircuit(format!(
                    "label index {} exceeds n = {n}",
                    l.qubit + 1
                )))
            } else {
                Ok(())
            }
        };
        for (stage, gates) in self.stages() {
            let mut seen = HashSet::new();
            for g in gates {
                let key = match (stage, g) {
                    (Stage::A, Gate::PrepPlus(a)) => a.0,
                    (Stage::CPn, Gate::ControlledPauli { control, payload })
                    | (Stage::CP1, Gate::ControlledPauli { control, payload }) => {
                        if payload.n() != n {
                            return Err(Error::Dimension {
                                expected: n,
                                found: payload.n(),
                            });
                        }
                        if stage == Stage::CP1 && payload.weight() != 1 {
                            return fail(format!(
                                "stage CP1 gate on {control} must have exactly one target, got {payload}"
                            ));
                        }
                        control.0
                    }
                    (Stage::MA, Gate::MeasureX { ancilla, bit }) => {
                        if ancilla.0 != bit.0 {
                            return fail(format!("{ancilla} must be measured into its own bit, not {bit}"));
                        }
                        ancilla.0
                    }
                    (Stage::P1, Gate::ClassicalCorrection { bit, qubit, .. }) => {
                        if *qubit >= n {
                            return fail(format!("correction targets data qubit {} > n", qubit + 1));
                        }
                        bit.0
                    }
                    (stage, g) => return fail(format!("gate `{g}` does not belong to stage {stage}")),
                };
                check_label(key)?;
                if !seen.insert(key) {
                    return fail(format!("{} used twice in stage {stage}", Ancilla(key)));
                }
            }
            if seen.len() != 2 * n {
                return fail(format!("stage {stage} covers {} of the {} ancillas", seen.len(), 2 * n));
            }
        }
        Ok(())
    }

    /// Two-qubit gates in the selected stages: each controlled-Pauli counts one per non-identity factor.
    pub fn two_qubit_gate_count(&self, stages: &[Stage]) -> usize {
        stages
            .iter()
            .flat_map(|&s| self.stage(s))
            .map(|g| match g {
                Gate::ControlledPauli { payload, .. } => payload.weight(),
                _ => 0,
            })
            .sum()
    }

    /// ASAP layer count over the selected stages; gates share a layer iff their
    /// supports (ancilla, data positions, classical bit) are disjoint.
    pub fn depth(&self, stages: &[Stage]) -> usize {
        let mut selected = stages.to_vec();
        selected.sort();
        selected.dedup();
        let mut last = vec![0usize; 5 * self.n];
        let mut depth = 0;
        for g in selected.into_iter().flat_map(|s| self.stage(s)) {
            let res = g.resources(self.n);
            let layer = 1 + res.iter().map(|&r| last[r]).max().unwrap_or(0);
            for r in res {
                last[r] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn stats(&self) -> CircuitStats {
        CircuitStats {
            n: self.n,
            two_qubit_cpn: self.two_qubit_gate_count(&[Stage::CPn]),
            two_qubit_cp1: self.two_qubit_gate_count(&[Stage::CP1]),
            tableau_weight_of_payloads: self
                .stage(Stage::CPn)
                .iter()
                .map(|g| match g {
                    Gate::ControlledPauli { payload, .. } => payload.weight(),
                    _ => 0,
                })
                .sum(),
            depth_total: self.depth(&Stage::ALL),
            depth_per_stage: Stage::ALL.map(|s| (s, self.depth(&[s]))),
            ancilla_count: self.ancilla_count(),
        }
    }

    /// The `CPn` payloads in emission order.
    pub fn row_payloads(&self) -> Vec<&SignedPauli> {
        self.stage(Stage::CPn)
            .iter()
            .filter_map(|g| match g {
                Gate::ControlledPauli { payload, .. } => Some(payload),
                _ => None,
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{CIRCUIT_HEADER}\nn {}\n", self.n);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let last_line = text.lines().count().max(1);
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, 1, "missing header"))?;
        if header != CIRCUIT_HEADER {
            return Err(Error::parse(ln, 1, format!("malformed header {header:?}")));
        }
        let n = parse_size_line(&mut lines, last_line)?;

        let mut stages: [Vec<Gate>; 5] = Default::default();
        let mut seen: [HashSet<RowLabel>; 5] = Default::default();
        let mut current = Stage::A;
        for (ln, line) in lines {
            let gate = parse_gate(line, n).map_err(|e| e.at_line(ln, 0))?;
            let stage = match &gate {
                Gate::PrepPlus(_) => Stage::A,
                Gate::ControlledPauli { .. } => {
                    if current <= Stage::CPn && stages[Stage::CPn.index()].len() < 2 * n {
                        Stage::CPn
                    } else {
                        Stage::CP1
                    }
                }
                Gate::MeasureX { .. } => Stage::MA,
                Gate::ClassicalCorrection { .. } => Stage::P1,
            };
            if stage < current {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("gate `{gate}` of stage {stage} appears after stage {current}"),
                ));
            }
            current = stage;
            let key = match &gate {
                Gate::PrepPlus(a) | Gate::ControlledPauli { control: a, .. } | Gate::MeasureX { ancilla: a, .. } => a.0,
                Gate::ClassicalCorrection { bit, .. } => bit.0,
            };
            if !seen[stage.index()].insert(key) {
                return Err(Error::parse(ln, 1, format!("{} reused in stage {stage}", Ancilla(key))));
            }
            stages[stage.index()].push(gate);
        }
        Circuit::from_stages(n, stages).map_err(|e| match e {
            Error::InvalidCircuit(msg) => Error::parse(last_line, 1, msg),
            other => other,
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_label(token: &str, prefix: char, n: usize) -> Option<RowLabel> {
    let rest = token.strip_prefix(prefix)?;
    let generator = match rest.chars().last()? {
        'z' => Generator::Z,
        'x' => Generator::X,
        _ => return None,
    };
    let i: usize = rest[..rest.len() - 1].parse().ok()?;
    if i == 0 || i > n {
        return None;
    }
    Some(RowLabel {
        qubit: i - 1,
        generator,
    })
}

fn parse_gate(line: &str, n: usize) -> Result<Gate> {
    let parts: Vec<&str> = line.split(' ').collect();
    let ancilla = |tok: &str, col: usize| {
        parse_label(tok, 'a', n)
            .map(Ancilla)
            .ok_or_else(|| Error::parse(0, col, format!("bad ancilla label {tok:?}")))
    };
    let bit = |tok: &str, col: usize| {
        parse_label(tok, 'm', n)
            .map(ClassicalBit)
            .ok_or_else(|| Error::parse(0, col, format!("bad classical bit {tok:?}")))
    };
    match parts.as_slice() {
        ["prep+", a] => Ok(Gate::PrepPlus(ancilla(a, 7)?)),
        ["cp", a, p] => {
            let control = ancilla(a, 4)?;
            let col = 5 + a.len();
            let payload: SignedPauli = p.parse().map_err(|e: Error| e.at_line(0, col - 1))?;
            if payload.n() != n {
                return Err(Error::parse(
                    0,
                    col,
                    format!("payload has {} qubits, expected {n}", payload.n()),
                ));
            }
            Ok(Gate::ControlledPauli { control, payload })
        }
        ["mx", a, "->", m] => Ok(Gate::MeasureX {
            ancilla: ancilla(a, 4)?,
            bit: bit(m, 8 + a.len())?,
        }),
        ["cpc", m, target] => {
            let bit = bit(m, 5)?;
            let col = 6 + m.len();
            let bad = || Error::parse(0, col, format!("bad correction {target:?}"));
            let (p, q) = target.split_once('@').ok_or_else(bad)?;
            let pauli = match p {
                "X" => Correction::X,
                "Z" => Correction::Z,
                _ => return Err(bad()),
            };
            let qubit: usize = q.parse().map_err(|_| bad())?;
            if qubit == 0 || qubit > n {
                return Err(bad());
            }
            Ok(Gate::ClassicalCorrection {
                bit,
                pauli,
                qubit: qubit - 1,
            })
        }
        _ => Err(Error::parse(0, 1, format!("malformed gate line {line:?}"))),
    }
}

/// Resource summary of a circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitStats {
    pub n: usize,
    pub two_qubit_cpn: usize,
    pub two_qubit_cp1: usize,
    pub tableau_weight_of_payloads: usize,
    pub depth_total: usize,
    pub depth_per_stage: [(Stage, usize); 5],
    pub ancilla_count: usize,
}

impl CircuitStats {
    pub fn stage_depth(&self, s: Stage) -> usize {
        self.depth_per_stage[s.index()].1
    }
}

impl fmt::Display for CircuitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "two_qubit_cpn={}", self.two_qubit_cpn)?;
        writeln!(f, "two_qubit_cp1={}", self.two_qubit_cp1)?;
        writeln!(f, "tableau_weight_of_payloads={}", self.tableau_weight_of_payloads)?;
        writeln!(f, "depth_total={}", self.depth_total)?;
        let per: Vec<String> = self.depth_per_stage.iter().map(|(s, d)| format!("{s}:{d}")).collect();
        writeln!(f, "depth_per_stage={}", per.join(","))?;
        writeln!(f, "ancilla_count={}", self.ancilla_count)
    }
}

/// Synthesizes the circuit for the Clifford whose tableau is `t`.
pub fn synthesize(t: &Tableau) -> Result<Circuit> {
    synthesize_from_inverse(&t.invert()?)
}

/// Synthesizes the circuit for `C` given the tableau of `C†`.
pub fn synthesize_from_inverse(t_inv: &Tableau) -> Result<Circuit> {
    t_inv.check_symplectic().map_err(Error::NotSymplectic)?;
    let n = t_inv.n();
    let ancillas: Vec<Ancilla> = (0..n).flat_map(|i| [Ancilla::z(i), Ancilla::x(i)]).collect();

    let prep = ancillas.iter().map(|&a| Gate::PrepPlus(a)).collect();
    let rows = ancillas
        .iter()
        .zip(t_inv.rows())
        .map(|(&a, row)| Gate::ControlledPauli {
            control: a,
            payload: row.clone(),
        })
        .collect();
    let singles = (0..n)
        .rev()
        .flat_map(|i| {
            [
                Gate::ControlledPauli {
                    control: Ancilla::x(i),
                    payload: SignedPauli::single(n, i, Factor::X),
                },
                Gate::ControlledPauli {
                    control: Ancilla::z(i),
                    payload: SignedPauli::single(n, i, Factor::Z),
                },
            ]
        })
        .collect();
    let measure = ancillas
        .iter()
        .map(|&a| Gate::MeasureX {
            ancilla: a,
            bit: a.bit(),
        })
        .collect();
    let corrections = (0..n)
        .flat_map(|i| {
            [
                Gate::ClassicalCorrection {
                    bit: Ancilla::z(i).bit(),
                    pauli: Correction::X,
                    qubit: i,
                },
                Gate::ClassicalCorrection {
                    bit: Ancilla::x(i).bit(),
                    pauli: Correction::Z,
                    qubit: i,
                },
            ]
        })
        .collect();
    Circuit::from_stages(n, [prep, rows, singles, measure, corrections])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::random_clifford;

    fn tab(rows: &[&str]) -> Tableau {
        Tableau::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    fn payload_texts(c: &Circuit) -> Vec<String> {
        c.stage(Stage::CPn).iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn synthesis_examples() {
        let id = synthesize(&Tableau::identity(1).unwrap()).unwrap();
        assert_eq!(payload_texts(&id), ["cp a1z +Z", "cp a1x +X"]);
        let h = synthesize(&tab(&["+X", "+Z"])).unwrap();
        assert_eq!(payload_texts(&h), ["cp a1z +X", "cp a1x +Z"]);
        let s = synthesize(&tab(&["+Z", "+Y"])).unwrap();
        assert_eq!(payload_texts(&s), ["cp a1z +Z", "cp a1x -Y"]);
    }

    #[test]
    fn identity_gate_sequence() {
        let c = synthesize_from_inverse(&Tableau::identity(1).unwrap()).unwrap();
        let expected = "mcs-circuit v1\nn 1\nprep+ a1z\nprep+ a1x\ncp a1z +Z\ncp a1x +X\n\
                        cp a1x +X\ncp a1z +Z\nmx a1z -> m1z\nmx a1x -> m1x\ncpc m1z X@1\ncpc m1x Z@1\n";
        assert_eq!(c.to_text(), expected);
    }

    #[test]
    fn stage_shapes() {
        for seed in 0..30 {
            let n = 1 + seed as usize % 7;
            let (t, _) = random_clifford(n, seed).unwrap();
            let c = synthesize(&t).unwrap();
            assert_eq!(c.gates().len(), 10 * n);
            for s in Stage::ALL {
                assert_eq!(c.stage(s).len(), 2 * n);
            }
            let targets: HashSet<(usize, usize)> = c
                .stage(Stage::CP1)
                .iter()
                .map(|g| match g {
                    Gate::ControlledPauli { payload, .. } => {
                        let s = payload.string().support();
                        assert_eq!(s.len(), 1);
                        (s[0], payload.string().get(s[0]).code())
                    }
                    _ => unreachable!(),
                })
                .collect();
            assert_eq!(targets.len(), 2 * n);
            let inv = t.invert().unwrap();
            let payloads: Vec<SignedPauli> = c.row_payloads().into_iter().cloned().collect();
            assert_eq!(payloads, inv.rows());
            assert_eq!(c.two_qubit_gate_count(&[Stage::CPn]), inv.weight());
            assert_eq!(c.two_qubit_gate_count(&[Stage::CP1]), 2 * n);
        }
    }

    #[test]
    fn depth_examples() {
        for n in 1..6 {
            let c = synthesize(&Tableau::identity(n).unwrap()).unwrap();
            // X_i and Z_i land on the same data qubit
            assert_eq!(c.depth(&[Stage::CP1]), 2);
            assert_eq!(c.depth(&[Stage::P1]), 2);
            assert_eq!(c.depth(&[Stage::CPn]), 2);
            assert_eq!(c.depth(&[Stage::A]), 1);
            assert_eq!(c.two_qubit_gate_count(&[Stage::CPn]), 2 * n);
        }
        assert_eq!(synthesize(&Tableau::identity(2).unwrap()).unwrap().depth(&[]), 0);
    }

    #[test]
    fn stats_for_identity() {
        let st = synthesize(&Tableau::identity(3).unwrap()).unwrap().stats();
        assert_eq!((st.two_qubit_cpn, st.two_qubit_cp1, st.ancilla_count), (6, 6, 6));
        assert_eq!(st.stage_depth(Stage::CP1), 2);
        assert_eq!(st.stage_depth(Stage::P1), 2);
        let text = st.to_string();
        assert!(text.contains("depth_per_stage=A:1,CPn:2,CP1:2,MA:1,P1:2"), "{text}");
    }

    #[test]
    fn text_round_trip() {
        for seed in 0..100 {
            let (t, _) = random_clifford(4, seed).unwrap();
            let c = synthesize(&t).unwrap();
            assert_eq!(Circuit::from_text(&c.to_text()).unwrap(), c);
        }
    }

    fn parse_err(text: &str) -> (usize, String) {
        match Circuit::from_text(text) {
            Err(Error::Parse { line, message, .. }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejections() {
        let good = synthesize(&Tableau::identity(1).unwrap()).unwrap().to_text();
        let mut lines: Vec<&str> = good.lines().collect();

        // controlled-Pauli after the measurement stage
        let mut late = lines.clone();
        late.insert(10, "cp a1z +Z");
        let (line, msg) = parse_err(&late.join("\n"));
        assert_eq!(line, 11);
        assert!(msg.contains("after stage MA"), "{msg}");

        let mut wide = lines.clone();
        wide[4] = "cp a1z +ZZ";
        let (line, msg) = parse_err(&wide.join("\n"));
        assert_eq!(line, 5);
        assert!(msg.contains("expected 1"), "{msg}");

        let mut reused = lines.clone();
        reused[3] = "prep+ a1z";
        let (line, msg) = parse_err(&reused.join("\n"));
        assert_eq!(line, 4);
        assert!(msg.contains("reused"), "{msg}");

        lines[0] = "mcs-circuit v0";
        assert_eq!(parse_err(&lines.join("\n")).0, 1);

        assert!(parse_err("mcs-circuit v1\nn 1\nprep+ a2z\n").1.contains("ancilla"));
        assert!(parse_err("mcs-circuit v1\nn 1\nprep+ a1z\n")
            .1
            .contains("covers 1 of the 2"));
    }

    #[test]
    fn from_stages_rejects_wrong_kinds() {
        let a = Ancilla::z(0);
        let r = Circuit::from_stages(
            1,
            [
                vec![Gate::MeasureX {
                    ancilla: a,
                    bit: a.bit(),
                }],
                vec![],
                vec![],
                vec![],
                vec![],
            ],
        );
        assert!(matches!(r, Err(Error::InvalidCircuit(_))));
    }

    #[test]
    fn rejects_non_symplectic() {
        let bad = Tableau::from_rows_unchecked(vec!["+X".parse().unwrap(), "+X".parse().unwrap()]).unwrap();
        assert!(matches!(synthesize_from_inverse(&bad), Err(Error::NotSymplectic(_))));
        assert!(matches!(synthesize(&bad), Err(Error::NotSymplectic(_))));
    }
}
