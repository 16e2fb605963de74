use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("characteristic 2 is out of scope")]
    CharacteristicTwo,

    #[error("extension degree {requested} exceeds the supported maximum {max}")]
    DegreeTooLarge { requested: usize, max: usize },

    #[error("elements live in different fields: {0}")]
    FieldMismatch(String),

    #[error("element does not lie in the requested subfield")]
    NotInSubfield,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial has a repeated root")]
    RepeatedRoot,

    #[error("singular curve: {0}")]
    SingularCurve(String),

    #[error("degenerate Möbius transformation (zero determinant)")]
    DegenerateMobius,

    #[error("the zero vector is not a point of weighted projective space")]
    ZeroPoint,

    #[error("point violates J4^2 - J2*J6 + 4*J8 = 0")]
    RelationViolated,

    #[error("value outside the domain of {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("stratum {label} is not supported in characteristic {p}")]
    UnsupportedStratum { label: String, p: u64 },

    #[error("the point is the singular point of the {0} stratum")]
    SingularStratumPoint(&'static str),

    #[error("field too large for {op}: order {order}, limit {limit}")]
    FieldTooLarge { op: &'static str, order: u128, limit: u128 },

    #[error("budget exceeded: the sweep needs {required} curve evaluations, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("formula {name} is not integral at p = {p}: {value}")]
    NonIntegral { name: String, p: u64, value: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
