//! JSON shapes of the command outputs.

use serde::Serialize;
use serde_json::Value;
use sonc_core::exposing::ExposednessDecision;
use sonc_core::grading::GradedPartition;
use sonc_core::rational;
use sonc_core::verify::{Check, ProbeCurve, SpotcheckReport};
use sonc_core::{Certificate, Circuit, ExtremeRay, GroundSet, LatticePoint, Parity, Sign, Verdict};

#[derive(Serialize)]
pub struct GroundSetJson {
    pub n: usize,
    pub points: Vec<LatticePoint>,
}

impl From<&GroundSet> for GroundSetJson {
    fn from(a: &GroundSet) -> Self {
        GroundSetJson {
            n: a.dim(),
            points: a.points().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct CircuitJson {
    pub id: String,
    pub support: Vec<LatticePoint>,
    pub beta: LatticePoint,
    /// Barycentric coordinates aligned with `support`.
    pub lambda: Vec<String>,
    pub parity: Parity,
    pub reduced: bool,
}

impl CircuitJson {
    pub fn new(c: &Circuit, reduced: bool) -> Self {
        CircuitJson {
            id: c.to_string(),
            support: c.support_vec(),
            beta: c.beta().clone(),
            lambda: c.lambda().weights().map(rational::to_string).collect(),
            parity: c.parity(),
            reduced,
        }
    }
}

#[derive(Serialize)]
pub struct CircuitListing {
    pub ground_set: GroundSetJson,
    pub circuits: Vec<CircuitJson>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayJson {
    Monomial {
        id: String,
        point: LatticePoint,
    },
    Circuit {
        id: String,
        circuit: String,
        sign: &'static str,
    },
}

impl From<&ExtremeRay> for RayJson {
    fn from(r: &ExtremeRay) -> Self {
        match r {
            ExtremeRay::Monomial(p) => RayJson::Monomial {
                id: r.to_string(),
                point: p.clone(),
            },
            ExtremeRay::CircuitRay { circuit, sign } => RayJson::Circuit {
                id: r.to_string(),
                circuit: circuit.to_string(),
                sign: match sign {
                    Sign::Minus => "-",
                    Sign::Plus => "+",
                },
            },
        }
    }
}

#[derive(Serialize)]
pub struct DecisionJson {
    pub ray: String,
    pub exposed: bool,
    pub witness: Option<String>,
}

impl From<&ExposednessDecision> for DecisionJson {
    fn from(d: &ExposednessDecision) -> Self {
        DecisionJson {
            ray: d.ray.to_string(),
            exposed: d.exposed,
            witness: d.witness.as_ref().map(Circuit::to_string),
        }
    }
}

#[derive(Serialize)]
pub struct ValueJson {
    pub point: LatticePoint,
    pub value: Value,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub ray: String,
    pub lambda_used: u64,
    pub functional: Vec<ValueJson>,
    /// Layers `E_0 = keep, E_1, …, E_K`.
    pub layers: Vec<Vec<LatticePoint>>,
}

fn layers(p: &GradedPartition) -> Vec<Vec<LatticePoint>> {
    p.layers().to_vec()
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            ray: c.ray.to_string(),
            lambda_used: c.lambda_used,
            functional: c
                .functional
                .values()
                .iter()
                .map(|(p, v)| ValueJson {
                    point: p.clone(),
                    value: v.to_json(),
                })
                .collect(),
            layers: layers(&c.partition),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub ray: String,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<Check>,
    pub spotcheck: SpotcheckReport,
}

impl VerdictJson {
    pub fn new(ray: &ExtremeRay, v: Verdict, spotcheck: SpotcheckReport) -> Self {
        VerdictJson {
            ray: ray.to_string(),
            pass: v.pass,
            checks: v.checks.len(),
            failures: v.failures,
            spotcheck,
        }
    }
}

#[derive(Serialize)]
pub struct ProbeJson {
    #[serde(flatten)]
    pub curve: ProbeCurve,
    pub final_margin: f64,
    pub monotone: bool,
    pub pass: bool,
}

#[derive(Serialize, Default)]
pub struct Timing {
    pub circuits_ms: f64,
    pub decisions_ms: f64,
    pub certificates_ms: f64,
    pub verification_ms: f64,
    pub probes_ms: f64,
}

#[derive(Serialize)]
pub struct RunReport {
    pub ground_set: GroundSetJson,
    pub circuits: Vec<CircuitJson>,
    pub lambda: u64,
    pub rays: Vec<RayJson>,
    pub decisions: Vec<DecisionJson>,
    pub certificates: Vec<CertificateJson>,
    pub verdicts: Vec<VerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<ProbeJson>>,
    pub pass: bool,
    pub failures: Vec<String>,
    pub timing: Timing,
}
