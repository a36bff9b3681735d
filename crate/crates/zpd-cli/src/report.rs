//! Machine-readable report assembly. Field order in these structs is
//! the key order in the emitted JSON, and everything that could vary
//! between runs (timing) stays out unless explicitly requested, so a
//! report is reproducible byte for byte given the same seed.

use serde::Serialize;
use serde_json::Value;
use zpd_core::algebra::StructureAlgebra;
use zpd_core::derivations::{
    derivation_square_zero_check, derivation_space, dual_derivation_space, dual_inner_space,
    inner_derivation_space,
};
use zpd_core::properties::{is_2zpd, is_2zpd_dual, is_zlpd, is_zpd, Certificate, PropertyOutcome, Verdict};
use zpd_core::separability::separability_idempotent;
use zpd_core::spans::{
    commuting_span, one_sided_span, square_zero_span, zero_pair_span, SpanMode, SpanResult,
    SpanStrategy,
};
use zpd_core::tensor::{kappa, mu, mu1};
use zpd_core::{Error, Fp, Rat, Scalar};

/// Scalar rendering for JSON output: prime-field residues as numbers,
/// rationals as strings.
pub trait RenderScalar: Scalar {
    fn json(&self) -> Value;
}

impl RenderScalar for Fp {
    fn json(&self) -> Value {
        self.residue().into()
    }
}

impl RenderScalar for Rat {
    fn json(&self) -> Value {
        self.to_string().into()
    }
}

pub fn vec_json<S: RenderScalar>(v: &[S]) -> Vec<Value> {
    v.iter().map(RenderScalar::json).collect()
}

#[derive(Serialize)]
pub struct Report {
    pub algebra: AlgebraSummary,
    pub strategy: StrategyEcho,
    pub spans: SpansReport,
    pub kernels: KernelsReport,
    pub properties: PropertiesReport,
    pub derivations: DerivationsReport,
    pub separability: SeparabilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct AlgebraSummary {
    pub label: String,
    pub field: String,
    pub dim: usize,
    pub builder: Option<String>,
}

#[derive(Serialize)]
pub struct StrategyEcho {
    pub mode: &'static str,
    pub seed: u64,
    pub enumeration_cap: u64,
    pub sample_window: u32,
    pub sample_range: i64,
}

impl StrategyEcho {
    pub fn of(st: &SpanStrategy) -> Self {
        StrategyEcho {
            mode: match st.mode {
                SpanMode::Exhaustive => "exhaustive",
                SpanMode::MonteCarlo => "monte-carlo",
            },
            seed: st.seed,
            enumeration_cap: st.enumeration_cap,
            sample_window: st.sample_window,
            sample_range: st.sample_range,
        }
    }
}

#[derive(Serialize)]
pub struct SpanDim {
    pub dim: usize,
    pub exact: bool,
    pub points: u64,
}

impl SpanDim {
    fn of<S: Scalar>(r: &SpanResult<S>) -> Self {
        SpanDim { dim: r.span.dim(), exact: r.exact, points: r.points }
    }
}

#[derive(Serialize)]
pub struct SpansReport {
    pub zero_pair: SpanDim,
    pub one_sided: SpanDim,
    pub commuting: SpanDim,
    /// Absent when the strategy cannot enumerate square-zero elements.
    pub square_zero: Option<SpanDim>,
}

#[derive(Serialize)]
pub struct KernelsReport {
    pub mu1: usize,
    pub mu: usize,
    pub kappa: usize,
}

#[derive(Serialize)]
pub struct PropertiesReport {
    pub zpd: PropertyReport,
    pub zlpd: PropertyReport,
    pub two_sided: PropertyReport,
    pub two_sided_dual: PropertyReport,
}

#[derive(Serialize)]
pub struct PropertyReport {
    pub verdict: &'static str,
    pub exact: bool,
    pub points: u64,
    pub certificate: CertificateReport,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateReport {
    KernelInsideSpan { kernel_dim: usize, span_dim: usize },
    AnnihilatorInsideRowSpace { annihilator_dim: usize, operator_rank: usize },
    Escape { tensor: Vec<Value>, functional: Vec<Value> },
    SampledGap { kernel_dim: usize, span_dim: usize },
}

impl PropertyReport {
    pub fn of<S: RenderScalar>(out: &PropertyOutcome<S>) -> Self {
        let certificate = match &out.certificate {
            Certificate::KernelInsideSpan { kernel_dim, span_dim } => {
                CertificateReport::KernelInsideSpan { kernel_dim: *kernel_dim, span_dim: *span_dim }
            }
            Certificate::AnnihilatorInsideRowSpace { annihilator_dim, operator_rank } => {
                CertificateReport::AnnihilatorInsideRowSpace {
                    annihilator_dim: *annihilator_dim,
                    operator_rank: *operator_rank,
                }
            }
            Certificate::Escape(w) => CertificateReport::Escape {
                tensor: vec_json(&w.tensor),
                functional: vec_json(&w.functional.flatten()),
            },
            Certificate::SampledGap { kernel_dim, span_dim } => {
                CertificateReport::SampledGap { kernel_dim: *kernel_dim, span_dim: *span_dim }
            }
        };
        PropertyReport {
            verdict: verdict_name(out.verdict),
            exact: out.exact,
            points: out.points,
            certificate,
        }
    }
}

#[derive(Serialize)]
pub struct DerivationsReport {
    pub dim: usize,
    pub inner_dim: usize,
    pub h1: usize,
    pub dual_dim: usize,
    pub dual_inner_dim: usize,
    pub all_dual_inner: bool,
    /// Square-zero image criterion; absent when the strategy cannot
    /// produce the exact square-zero span.
    pub images_in_square_zero: Option<bool>,
}

#[derive(Serialize)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub idempotent: Option<Vec<Value>>,
}

/// Runs every analysis once and assembles the full report.
pub fn build<S: RenderScalar>(
    a: &StructureAlgebra<S>,
    builder: Option<&str>,
    st: &SpanStrategy,
    timing_ms: Option<u128>,
) -> zpd_core::Result<Report> {
    let zp = zero_pair_span(a, st)?;
    let os = one_sided_span(a, st)?;
    let cm = commuting_span(a, st)?;
    let sq = match square_zero_span(a, st) {
        Ok(r) => Some(SpanDim::of(&r)),
        Err(Error::ModeUnsupported { .. }) | Err(Error::ExhaustiveUnsupported { .. }) => None,
        Err(e) => return Err(e),
    };

    let der = derivation_space(a);
    let inn = inner_derivation_space(a);
    assert!(inn.leq(&der));
    let ddual = dual_derivation_space(a);
    let dinn = dual_inner_space(a);
    assert!(dinn.leq(&ddual));
    let images = match derivation_square_zero_check(a, st) {
        Ok(c) => Some(c.holds),
        Err(Error::ModeUnsupported { .. }) | Err(Error::ExhaustiveUnsupported { .. }) => None,
        Err(e) => return Err(e),
    };

    Ok(Report {
        algebra: AlgebraSummary {
            label: a.label().to_string(),
            field: a.field().to_string(),
            dim: a.dim(),
            builder: builder.map(str::to_string),
        },
        strategy: StrategyEcho::of(st),
        spans: SpansReport {
            zero_pair: SpanDim::of(&zp),
            one_sided: SpanDim::of(&os),
            commuting: SpanDim::of(&cm),
            square_zero: sq,
        },
        kernels: KernelsReport {
            mu1: mu1(a).kernel().dim(),
            mu: mu(a).kernel().dim(),
            kappa: kappa(a).kernel().dim(),
        },
        properties: PropertiesReport {
            zpd: PropertyReport::of(&is_zpd(a, st)?),
            zlpd: PropertyReport::of(&is_zlpd(a, st)?),
            two_sided: PropertyReport::of(&is_2zpd(a, st)?),
            two_sided_dual: PropertyReport::of(&is_2zpd_dual(a, st)?),
        },
        derivations: DerivationsReport {
            dim: der.dim(),
            inner_dim: inn.dim(),
            h1: der.dim() - inn.dim(),
            dual_dim: ddual.dim(),
            dual_inner_dim: dinn.dim(),
            all_dual_inner: ddual == dinn,
            images_in_square_zero: images,
        },
        separability: {
            let idem = separability_idempotent(a);
            SeparabilityReport {
                separable: idem.is_some(),
                idempotent: idem.map(|e| vec_json(e.tensor())),
            }
        },
        timing_ms,
    })
}
