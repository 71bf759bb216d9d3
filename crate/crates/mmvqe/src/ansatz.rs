//! Parameterized circuit families: EfficientSU2, TwoLocal, and the
//! evolved-operator ansatz.
//!
//! Ordering conventions (pinned so circuits are reproducible byte-for-byte):
//! within a rotation layer, gates run in ascending qubit order (for the RyRz
//! block: all RY first, then all RZ; for RyY: RY then the fixed Y per qubit);
//! circular entanglement pairs are (0,1), (1,2), …, (n−1,0); full
//! entanglement pairs are all (i,j) with i<j in lexicographic order. The
//! layout is one initial rotation layer followed by `depth` repetitions of
//! (entanglement layer, rotation layer).
//!
//! The evolved-operator family is the first-order Trotterization
//! ∏ exp(−i(θ/2)·P) over its operator list, repeated `depth` times with one
//! fresh parameter per operator per repetition; operators enter with unit
//! coefficient (any scalar would be absorbed by θ).

use crate::pauli::{Pauli, PauliString};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum AnsatzError {
    #[error("entangled ansatz families need at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("depth must be at least 1, got {0}")]
    BadDepth(usize),
    #[error("evolved-operator ansatz needs a non-empty operator list")]
    NoOperators,
    #[error("the identity operator cannot be parameterized")]
    IdentityOperator,
    #[error("operator length {got} does not match register of {want} qubits")]
    OperatorLength { got: usize, want: usize },
    #[error("unknown ansatz name {0:?}")]
    UnknownName(String),
}

/// Rotation-block choice for the generic families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Rotation {
    Ry,
    Rz,
    RyRz,
    RyY,
}

impl Rotation {
    /// Parameterized rotations per qubit per layer.
    fn params_per_qubit(self) -> usize {
        match self {
            Rotation::Ry | Rotation::Rz | Rotation::RyY => 1,
            Rotation::RyRz => 2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Rotation::Ry => "Ry",
            Rotation::Rz => "Rz",
            Rotation::RyRz => "RyRz",
            Rotation::RyY => "RyY",
        }
    }
}

/// Entanglement-pattern choice for the generic families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Entanglement {
    Circular,
    Full,
}

impl Entanglement {
    pub fn token(self) -> &'static str {
        match self {
            Entanglement::Circular => "c",
            Entanglement::Full => "f",
        }
    }

    fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::Circular => {
                let mut v: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
                v.push((n - 1, 0));
                v
            }
            Entanglement::Full => {
                let mut v = Vec::with_capacity(n * (n - 1) / 2);
                for i in 0..n {
                    for j in (i + 1)..n {
                        v.push((i, j));
                    }
                }
                v
            }
        }
    }
}

/// One circuit element. Parameterized gates carry an index into the θ vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Gate {
    Ry { qubit: usize, slot: usize },
    Rz { qubit: usize, slot: usize },
    Y { qubit: usize },
    Cx { control: usize, target: usize },
    Crx { control: usize, target: usize, slot: usize },
    PauliRot { labels: Vec<Pauli>, slot: usize },
}

impl Gate {
    pub fn param_slot(&self) -> Option<usize> {
        match self {
            Gate::Ry { slot, .. } | Gate::Rz { slot, .. } | Gate::Crx { slot, .. } => Some(*slot),
            Gate::PauliRot { slot, .. } => Some(*slot),
            Gate::Y { .. } | Gate::Cx { .. } => None,
        }
    }
}

/// An ordered gate list over `n_qubits` with `n_params` distinct parameters.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    n_params: usize,
}

impl Circuit {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Count of non-parameterized + parameterized gates, by kind name.
    pub fn gate_counts(&self) -> Vec<(&'static str, usize)> {
        let mut ry = 0;
        let mut rz = 0;
        let mut y = 0;
        let mut cx = 0;
        let mut crx = 0;
        let mut prot = 0;
        for g in &self.gates {
            match g {
                Gate::Ry { .. } => ry += 1,
                Gate::Rz { .. } => rz += 1,
                Gate::Y { .. } => y += 1,
                Gate::Cx { .. } => cx += 1,
                Gate::Crx { .. } => crx += 1,
                Gate::PauliRot { .. } => prot += 1,
            }
        }
        [("ry", ry), ("rz", rz), ("y", y), ("cx", cx), ("crx", crx), ("pauli_rot", prot)]
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    fn validate(&self) {
        let mut seen = vec![false; self.n_params];
        for g in &self.gates {
            if let Some(s) = g.param_slot() {
                assert!(s < self.n_params, "slot {s} out of range");
                assert!(!seen[s], "slot {s} used twice");
                seen[s] = true;
            }
        }
        assert!(seen.iter().all(|&b| b), "unused parameter slots");
    }
}

/// Entangler flavor shared by the two generic builders.
enum Entangler {
    Fixed,         // CX
    Parameterized, // CRX
}

fn build_generic(
    n_qubits: usize,
    rotation: Rotation,
    entanglement: Entanglement,
    depth: usize,
    entangler: Entangler,
) -> Result<Circuit, AnsatzError> {
    if n_qubits < 2 {
        return Err(AnsatzError::TooFewQubits(n_qubits));
    }
    if depth == 0 {
        return Err(AnsatzError::BadDepth(depth));
    }
    let mut gates = Vec::new();
    let mut slot = 0usize;
    let rotation_layer = |gates: &mut Vec<Gate>, slot: &mut usize| {
        match rotation {
            Rotation::Ry => {
                for q in 0..n_qubits {
                    gates.push(Gate::Ry { qubit: q, slot: *slot });
                    *slot += 1;
                }
            }
            Rotation::Rz => {
                for q in 0..n_qubits {
                    gates.push(Gate::Rz { qubit: q, slot: *slot });
                    *slot += 1;
                }
            }
            Rotation::RyRz => {
                for q in 0..n_qubits {
                    gates.push(Gate::Ry { qubit: q, slot: *slot });
                    *slot += 1;
                }
                for q in 0..n_qubits {
                    gates.push(Gate::Rz { qubit: q, slot: *slot });
                    *slot += 1;
                }
            }
            Rotation::RyY => {
                for q in 0..n_qubits {
                    gates.push(Gate::Ry { qubit: q, slot: *slot });
                    *slot += 1;
                }
                for q in 0..n_qubits {
                    gates.push(Gate::Y { qubit: q });
                }
            }
        }
    };

    rotation_layer(&mut gates, &mut slot);
    for _ in 0..depth {
        for (c, t) in entanglement.pairs(n_qubits) {
            match entangler {
                Entangler::Fixed => gates.push(Gate::Cx { control: c, target: t }),
                Entangler::Parameterized => {
                    gates.push(Gate::Crx { control: c, target: t, slot });
                    slot += 1;
                }
            }
        }
        rotation_layer(&mut gates, &mut slot);
    }

    let circuit = Circuit { n_qubits, gates, n_params: slot };
    circuit.validate();
    debug_assert_eq!(
        circuit.n_params,
        expected_generic_params(n_qubits, rotation, entanglement, depth, &entangler)
    );
    Ok(circuit)
}

fn expected_generic_params(
    n: usize,
    rotation: Rotation,
    entanglement: Entanglement,
    d: usize,
    entangler: &Entangler,
) -> usize {
    let rot = rotation.params_per_qubit() * n * (d + 1);
    let ent = match entangler {
        Entangler::Fixed => 0,
        Entangler::Parameterized => {
            d * match entanglement {
                Entanglement::Circular => n,
                Entanglement::Full => n * (n - 1) / 2,
            }
        }
    };
    rot + ent
}

/// EfficientSU2: rotation layers interleaved with fixed-CX entanglement.
/// n_params = (d+1)·n for single-rotation blocks, 2(d+1)·n for RyRz.
pub fn build_efficient_su2(
    n_qubits: usize,
    rotation: Rotation,
    entanglement: Entanglement,
    depth: usize,
) -> Result<Circuit, AnsatzError> {
    build_generic(n_qubits, rotation, entanglement, depth, Entangler::Fixed)
}

/// TwoLocal: same layout with parameterized CRX entanglers.
/// n_params = (d+1)·n·r + d·|pairs| with r ∈ {1,2}.
pub fn build_two_local(
    n_qubits: usize,
    rotation: Rotation,
    entanglement: Entanglement,
    depth: usize,
) -> Result<Circuit, AnsatzError> {
    build_generic(n_qubits, rotation, entanglement, depth, Entangler::Parameterized)
}

/// Evolved-operator ansatz: `depth` repetitions of one PauliRot per operator,
/// each with its own parameter. At θ = 0 the circuit is the identity.
///
/// Each repetition realizes the operator product
/// `exp(−iθ₁O₁)·exp(−iθ₂O₂)·…·exp(−iθ_N O_N)` applied to the state, so the
/// LAST listed operator acts on the state first and the first listed one
/// acts last. With the catalog lists (diagonal Z strings first, excitation
/// strings after) this makes the excitations act on |0…0⟩ before the
/// diagonal phases; applying the diagonal strings first would reduce them
/// to dead global-phase parameters at depth 1. Parameter slots stay in list
/// order: slot r·N + i always multiplies operator `i` of repetition `r`.
pub fn build_evolved_operator(
    operators: &[PauliString],
    depth: usize,
) -> Result<Circuit, AnsatzError> {
    if operators.is_empty() {
        return Err(AnsatzError::NoOperators);
    }
    if depth == 0 {
        return Err(AnsatzError::BadDepth(depth));
    }
    let n_qubits = operators[0].n_qubits();
    for op in operators {
        if op.n_qubits() != n_qubits {
            return Err(AnsatzError::OperatorLength { got: op.n_qubits(), want: n_qubits });
        }
        if op.is_identity() {
            return Err(AnsatzError::IdentityOperator);
        }
    }
    let n = operators.len();
    let mut gates = Vec::with_capacity(n * depth);
    for rep in 0..depth {
        for (i, op) in operators.iter().enumerate().rev() {
            gates.push(Gate::PauliRot { labels: op.labels.clone(), slot: rep * n + i });
        }
    }
    let circuit = Circuit { n_qubits, gates, n_params: n * depth };
    circuit.validate();
    Ok(circuit)
}

/// Ansatz family tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Family {
    EfficientSu2,
    TwoLocal,
    EvolvedOperator,
}

/// A named, fully specified ansatz; `name` determines every other field
/// within a model's catalog.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub name: String,
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rotation: Option<Rotation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub entanglement: Option<Entanglement>,
    pub depth: usize,
    /// Unit-coefficient operator labels (EvolvedOperator only).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub operators: Vec<String>,
}

impl AnsatzSpec {
    pub fn generic(
        family: Family,
        rotation: Rotation,
        entanglement: Entanglement,
        depth: usize,
    ) -> Self {
        let prefix = match family {
            Family::EfficientSu2 => "effsu2",
            Family::TwoLocal => "tl",
            Family::EvolvedOperator => unreachable!("generic() is for the generic families"),
        };
        let name = if depth == 1 {
            format!("{prefix}_{}_{}", rotation.token(), entanglement.token())
        } else {
            format!("{prefix}_{}_{}_{}f", rotation.token(), entanglement.token(), depth)
        };
        AnsatzSpec {
            name,
            family,
            rotation: Some(rotation),
            entanglement: Some(entanglement),
            depth,
            operators: Vec::new(),
        }
    }

    pub fn evolved(name: impl Into<String>, operators: Vec<String>, depth: usize) -> Self {
        AnsatzSpec {
            name: name.into(),
            family: Family::EvolvedOperator,
            rotation: None,
            entanglement: None,
            depth,
            operators,
        }
    }

    /// Build the circuit on a register of `n_qubits`.
    pub fn build(&self, n_qubits: usize) -> Result<Circuit, AnsatzError> {
        match self.family {
            Family::EfficientSu2 => build_efficient_su2(
                n_qubits,
                self.rotation.expect("generic spec carries a rotation"),
                self.entanglement.expect("generic spec carries an entanglement"),
                self.depth,
            ),
            Family::TwoLocal => build_two_local(
                n_qubits,
                self.rotation.expect("generic spec carries a rotation"),
                self.entanglement.expect("generic spec carries an entanglement"),
                self.depth,
            ),
            Family::EvolvedOperator => {
                let one = num_complex::Complex64::new(1.0, 0.0);
                let ops: Vec<PauliString> = self
                    .operators
                    .iter()
                    .map(|l| {
                        PauliString::parse(l, one).unwrap_or_else(|e| {
                            panic!("catalog operator {l:?} must parse: {e}")
                        })
                    })
                    .collect();
                for op in &ops {
                    if op.n_qubits() != n_qubits {
                        return Err(AnsatzError::OperatorLength {
                            got: op.n_qubits(),
                            want: n_qubits,
                        });
                    }
                }
                build_evolved_operator(&ops, self.depth)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROTATIONS: [Rotation; 4] = [Rotation::Ry, Rotation::Rz, Rotation::RyRz, Rotation::RyY];
    const PATTERNS: [Entanglement; 2] = [Entanglement::Circular, Entanglement::Full];

    #[test]
    fn efficient_su2_param_counts_match_closed_form() {
        for n in [6usize, 9, 12] {
            for d in 1..=3 {
                for rot in ROTATIONS {
                    for ent in PATTERNS {
                        let c = build_efficient_su2(n, rot, ent, d).unwrap();
                        let want = rot.params_per_qubit() * n * (d + 1);
                        assert_eq!(c.n_params(), want, "effsu2 {rot:?} {ent:?} n={n} d={d}");
                    }
                }
            }
        }
        // Published spot values.
        assert_eq!(build_efficient_su2(6, Rotation::Ry, Entanglement::Circular, 1).unwrap().n_params(), 12);
        assert_eq!(build_efficient_su2(6, Rotation::RyRz, Entanglement::Full, 1).unwrap().n_params(), 24);
        assert_eq!(build_efficient_su2(12, Rotation::Ry, Entanglement::Full, 3).unwrap().n_params(), 48);
    }

    #[test]
    fn two_local_param_counts_match_closed_form() {
        for n in [6usize, 9, 12] {
            for d in 1..=3 {
                for rot in ROTATIONS {
                    // Circular: (r(d+1) + d)·n; footnote identity Σk = n(n−1)/2 drives full.
                    let c = build_two_local(n, rot, Entanglement::Circular, d).unwrap();
                    assert_eq!(c.n_params(), rot.params_per_qubit() * n * (d + 1) + d * n);
                    let f = build_two_local(n, rot, Entanglement::Full, d).unwrap();
                    assert_eq!(
                        f.n_params(),
                        rot.params_per_qubit() * n * (d + 1) + d * n * (n - 1) / 2
                    );
                }
            }
        }
        // Published spot values.
        assert_eq!(build_two_local(6, Rotation::Ry, Entanglement::Circular, 1).unwrap().n_params(), 18);
        assert_eq!(build_two_local(6, Rotation::RyRz, Entanglement::Full, 1).unwrap().n_params(), 39);
        assert_eq!(build_two_local(12, Rotation::RyRz, Entanglement::Full, 1).unwrap().n_params(), 114);
        assert_eq!(build_two_local(12, Rotation::Ry, Entanglement::Full, 1).unwrap().n_params(), 90);
        assert_eq!(build_two_local(12, Rotation::Ry, Entanglement::Circular, 1).unwrap().n_params(), 36);
    }

    #[test]
    fn layer_structure_and_pair_order() {
        let c = build_efficient_su2(3, Rotation::Ry, Entanglement::Circular, 1).unwrap();
        use Gate::*;
        assert_eq!(
            c.gates(),
            &[
                Ry { qubit: 0, slot: 0 },
                Ry { qubit: 1, slot: 1 },
                Ry { qubit: 2, slot: 2 },
                Cx { control: 0, target: 1 },
                Cx { control: 1, target: 2 },
                Cx { control: 2, target: 0 },
                Ry { qubit: 0, slot: 3 },
                Ry { qubit: 1, slot: 4 },
                Ry { qubit: 2, slot: 5 },
            ]
        );
        // Full pattern is lexicographic (i, j).
        assert_eq!(
            Entanglement::Full.pairs(4),
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        );
        // RyY places a fixed Y after the RY sub-layer.
        let c = build_efficient_su2(2, Rotation::RyY, Entanglement::Circular, 1).unwrap();
        assert!(matches!(c.gates()[2], Gate::Y { qubit: 0 }));
        assert_eq!(c.n_params(), 4);
    }

    #[test]
    fn building_twice_is_identical() {
        let a = build_two_local(6, Rotation::RyRz, Entanglement::Full, 2).unwrap();
        let b = build_two_local(6, Rotation::RyRz, Entanglement::Full, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn evolved_operator_structure() {
        let one = num_complex::Complex64::new(1.0, 0.0);
        let ops = vec![
            PauliString::parse("ZZIIII", one).unwrap(),
            PauliString::parse("IZIIZI", one).unwrap(),
            PauliString::parse("IXIXIX", one).unwrap(),
        ];
        let c = build_evolved_operator(&ops, 1).unwrap();
        assert_eq!(c.n_params(), 3);
        // Last listed operator is applied first; slots stay in list order.
        let order: Vec<(String, usize)> = c
            .gates()
            .iter()
            .map(|g| match g {
                Gate::PauliRot { labels, slot } => {
                    (labels.iter().map(|p| p.as_char()).collect(), *slot)
                }
                _ => panic!("expected PauliRot"),
            })
            .collect();
        assert_eq!(
            order,
            vec![
                ("IXIXIX".to_string(), 2),
                ("IZIIZI".to_string(), 1),
                ("ZZIIII".to_string(), 0),
            ]
        );
        let c3 = build_evolved_operator(&ops, 3).unwrap();
        assert_eq!(c3.n_params(), 9);
        assert_eq!(c3.gates().len(), 9);
        // Identity operator rejected.
        let id = vec![PauliString::identity(6, one)];
        assert!(matches!(build_evolved_operator(&id, 1), Err(AnsatzError::IdentityOperator)));
        // Mixed lengths rejected.
        let bad = vec![
            PauliString::parse("ZZ", one).unwrap(),
            PauliString::parse("ZZZ", one).unwrap(),
        ];
        assert!(build_evolved_operator(&bad, 1).is_err());
        // Empty list rejected.
        assert!(matches!(build_evolved_operator(&[], 1), Err(AnsatzError::NoOperators)));
    }

    #[test]
    fn names_are_canonical() {
        let s = AnsatzSpec::generic(Family::TwoLocal, Rotation::Ry, Entanglement::Circular, 1);
        assert_eq!(s.name, "tl_Ry_c");
        let s = AnsatzSpec::generic(Family::EfficientSu2, Rotation::RyRz, Entanglement::Full, 1);
        assert_eq!(s.name, "effsu2_RyRz_f");
        let s = AnsatzSpec::evolved("ev_op_r", vec!["ZZIIII".into()], 1);
        assert_eq!(s.name, "ev_op_r");
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(build_efficient_su2(1, Rotation::Ry, Entanglement::Full, 1).is_err());
        assert!(build_efficient_su2(6, Rotation::Ry, Entanglement::Full, 0).is_err());
        assert!(build_two_local(0, Rotation::Ry, Entanglement::Circular, 1).is_err());
    }
}
