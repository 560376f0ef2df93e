use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("operator is not particle-hole symmetric (residual {residual:e})")]
    NotParticleHoleSymmetric { residual: f64 },

    #[error("spectral gap closed: eigenvalue {eigenvalue:e} lies within {gap_tol:e} of zero")]
    GapClosed { eigenvalue: f64, gap_tol: f64 },

    #[error("operator is not Real (residual {residual:e})")]
    NotReal { residual: f64 },

    #[error("invalid real structure: {reason} (residual {residual:e})")]
    InvalidRealStructure { reason: &'static str, residual: f64 },

    #[error("matrix is not antisymmetric (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("not a skew-adjoint unitary: {reason} (residual {residual:e})")]
    NotSkewUnitary { reason: &'static str, residual: f64 },

    #[error("not an odd self-adjoint unitary: {reason} (residual {residual:e})")]
    NotOddSelfAdjointUnitary { reason: &'static str, residual: f64 },

    #[error("ambiguous kernel: singular value {singular_value:e} lies in ({cut:e}, {upper:e})")]
    AmbiguousKernel { singular_value: f64, cut: f64, upper: f64 },

    #[error("norm condition violated: ||J0 - J1|| = {norm} is not below 2")]
    NormCondition { norm: f64 },

    #[error("square root of a non-positive operator (eigenvalue {eigenvalue:e})")]
    NegativeSquareRoot { eigenvalue: f64 },

    #[error("Clifford relation `{relation}` violated (residual {residual:e})")]
    CliffordRelations { relation: &'static str, residual: f64 },

    #[error("Clifford signature ({r},{s}) exceeds the supported bound r + s <= 10")]
    SignatureTooLarge { r: usize, s: usize },

    #[error("unsupported Clifford degree {k}")]
    UnsupportedDegree { k: usize },

    #[error("expected an ungraded Cl(0,{expected}) module, found signature ({r},{s})")]
    WrongSignature { expected: usize, r: usize, s: usize },

    #[error("module has no real structure")]
    MissingRealStructure,

    #[error("module of real dimension {dim} is not a multiple of the irreducible dimension {irrep_dim}")]
    MalformedModule { dim: usize, irrep_dim: usize },

    #[error("kernel is not invariant under {what} (residual {residual:e})")]
    KernelNotInvariant { what: String, residual: f64 },

    #[error("kernel of J0 + J1 has odd dimension {dim}; the threshold is unreliable")]
    OddKernel { dim: usize },

    #[error("Pfaffian too small to fix its sign (|Pf| = {value:e})")]
    PfaffianConditioning { value: f64 },

    #[error("unresolvable degeneracy near path parameter {parameter}")]
    UnresolvableDegeneracy { parameter: f64 },

    #[error("invalid projection: {reason} (residual {residual:e})")]
    InvalidProjection { reason: &'static str, residual: f64 },

    #[error("invalid symmetry data: {what} (residual {residual:e})")]
    InvalidSymmetry { what: String, residual: f64 },

    #[error("unknown site {0:?}")]
    UnknownSite(Vec<i64>),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("critical parameters: {0}")]
    CriticalParameters(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable tag used in CSV error rows.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } | Error::NotSquare { .. } => "dimension_mismatch",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::NotParticleHoleSymmetric { .. } => "not_particle_hole_symmetric",
            Error::GapClosed { .. } => "gap_closed",
            Error::NotReal { .. } => "not_real",
            Error::InvalidRealStructure { .. } => "invalid_real_structure",
            Error::NotAntisymmetric { .. } => "not_antisymmetric",
            Error::NotSkewUnitary { .. } => "not_skew_unitary",
            Error::NotOddSelfAdjointUnitary { .. } => "not_odd_self_adjoint_unitary",
            Error::AmbiguousKernel { .. } => "ambiguous_kernel",
            Error::NormCondition { .. } => "norm_condition",
            Error::NegativeSquareRoot { .. } => "negative_square_root",
            Error::CliffordRelations { .. } => "clifford_relations",
            Error::SignatureTooLarge { .. } => "signature_too_large",
            Error::UnsupportedDegree { .. } => "unsupported_degree",
            Error::WrongSignature { .. } => "wrong_signature",
            Error::MissingRealStructure => "missing_real_structure",
            Error::MalformedModule { .. } => "malformed_module",
            Error::KernelNotInvariant { .. } => "kernel_not_invariant",
            Error::OddKernel { .. } => "odd_kernel",
            Error::PfaffianConditioning { .. } => "pfaffian_conditioning",
            Error::UnresolvableDegeneracy { .. } => "unresolvable_degeneracy",
            Error::InvalidProjection { .. } => "invalid_projection",
            Error::InvalidSymmetry { .. } => "invalid_symmetry",
            Error::UnknownSite(_) => "unknown_site",
            Error::InvalidModel(_) => "invalid_model",
            Error::CriticalParameters(_) => "critical_parameters",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
