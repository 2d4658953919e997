use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`])
/// which the command-line front end reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different primes ({0} vs {1})")]
    CtxMismatch(u64, u64),
    #[error("operation is not defined at the point at infinity")]
    InfinityNotAllowed,
    #[error("kernel has a pole: base point is a classical point equal to an argument")]
    KernelPole,
    #[error("operation requires a point of type 2 or 3, got a classical point")]
    TypeOnePoint,
    #[error("polynomials in different variables ({0} vs {1})")]
    VarMismatch(char, char),
    #[error("degree {degree} exceeds the budget of {budget}")]
    DegreeBudgetExceeded { degree: usize, budget: usize },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("skeletons do not span the same tree")]
    SkeletonMismatch,
    #[error("skeleton must contain the point at infinity")]
    MissingInfinity,
    #[error("empty region")]
    EmptyRegion,
    #[error("region has capacity zero")]
    ZeroCapacity,
    #[error("measure has an atom outside the skeleton")]
    AtomOffSkeleton,
    #[error("base point must be a non-classical point of the skeleton")]
    TypeOneBasePoint,
    #[error("measure must be a positive probability measure")]
    NotProbability,
    #[error("leading coefficient must be a nonzero constant")]
    NonConstantLeadingCoeff,
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("marked orbit is constant; pullback undefined")]
    ConstantMarkedOrbit,
    #[error("pullback target must be of type 2 or 3")]
    TypeOneTarget,
    #[error("constant polynomial; pullback undefined")]
    ConstantPolynomial,
    #[error("parameter must be a classical point")]
    NotTypeOne,
    #[error("resultant vanishes at the parameter")]
    ResultantVanishes,
    #[error("resultant of the lift is identically zero")]
    ResultantIdenticallyZero,
    #[error("a coefficient is unbounded on the region")]
    UnboundedRegion,
    #[error("singular linear system")]
    Singular,
    #[error("base point lies in the region")]
    BaseInRegion,
}

impl Error {
    /// Stable snake_case identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::DivisionByZero => "division_by_zero",
            Error::CtxMismatch(..) => "ctx_mismatch",
            Error::InfinityNotAllowed => "infinity_not_allowed",
            Error::KernelPole => "kernel_pole",
            Error::TypeOnePoint => "type_one_point",
            Error::VarMismatch(..) => "var_mismatch",
            Error::DegreeBudgetExceeded { .. } => "degree_budget_exceeded",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::Parse(_) => "parse",
            Error::SkeletonMismatch => "skeleton_mismatch",
            Error::MissingInfinity => "missing_infinity",
            Error::EmptyRegion => "empty_region",
            Error::ZeroCapacity => "zero_capacity",
            Error::AtomOffSkeleton => "atom_off_skeleton",
            Error::TypeOneBasePoint => "type_one_base_point",
            Error::NotProbability => "not_probability",
            Error::NonConstantLeadingCoeff => "non_constant_leading_coeff",
            Error::InvalidFamily(_) => "invalid_family",
            Error::ConstantMarkedOrbit => "constant_marked_orbit",
            Error::TypeOneTarget => "type_one_target",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::NotTypeOne => "not_type_one",
            Error::ResultantVanishes => "resultant_vanishes",
            Error::ResultantIdenticallyZero => "resultant_identically_zero",
            Error::UnboundedRegion => "unbounded_region",
            Error::Singular => "singular",
            Error::BaseInRegion => "base_in_region",
        }
    }

    /// Budget exhaustion and degenerate mathematical input, as opposed to
    /// malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegreeBudgetExceeded { .. }
                | Error::ZeroCapacity
                | Error::ConstantMarkedOrbit
                | Error::ConstantPolynomial
                | Error::ResultantVanishes
                | Error::ResultantIdenticallyZero
                | Error::KernelPole
                | Error::ZeroPolynomial
                | Error::Singular
                | Error::UnboundedRegion
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
