//! Bound reports: a computed quantity set against a bound formula.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Absolute tolerance applied on the real side of every bound comparison.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// A computed quantity, kept exact whenever the quantity is combinatorial.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Integer(BigInt),
    Rational(BigRational),
    Real(f64),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Integer(n) => n.to_f64().unwrap_or(f64::INFINITY),
            Quantity::Rational(r) => rational_to_f64(r),
            Quantity::Real(x) => *x,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Quantity::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Quantity::Real(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigInt> for Quantity {
    fn from(n: BigInt) -> Self {
        Quantity::Integer(n)
    }
}

impl From<num_bigint::BigUint> for Quantity {
    fn from(n: num_bigint::BigUint) -> Self {
        Quantity::Integer(n.into())
    }
}

impl From<BigRational> for Quantity {
    fn from(r: BigRational) -> Self {
        Quantity::Rational(r)
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Real(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `computed <= bound`
    Upper,
    /// `computed >= bound`
    Lower,
}

/// Outcome of checking one bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub quantity: String,
    pub computed: Quantity,
    pub bound: f64,
    /// `computed / bound`, or NaN when the bound is zero.
    pub ratio: f64,
    pub direction: Direction,
    pub satisfied: bool,
    /// Conjectured bounds are reported but never count as failures.
    pub conjecture: bool,
    pub source: String,
    /// The real parameter the bound was evaluated at, when there is one.
    pub parameter: Option<f64>,
}

impl BoundReport {
    fn new(
        quantity: impl Into<String>,
        computed: Quantity,
        bound: f64,
        direction: Direction,
        satisfied: bool,
        source: impl Into<String>,
    ) -> Self {
        let c = computed.to_f64();
        let ratio = if bound == 0.0 { f64::NAN } else { c / bound };
        BoundReport {
            quantity: quantity.into(),
            computed,
            bound,
            ratio,
            direction,
            satisfied,
            conjecture: false,
            source: source.into(),
            parameter: None,
        }
    }

    /// Upper bound compared exactly.
    pub fn upper_exact(
        quantity: impl Into<String>,
        computed: BigRational,
        bound: BigRational,
        source: impl Into<String>,
    ) -> Self {
        let satisfied = computed <= bound;
        let b = rational_to_f64(&bound);
        Self::new(
            quantity,
            Quantity::Rational(computed),
            b,
            Direction::Upper,
            satisfied,
            source,
        )
    }

    /// Upper bound compared with [`BOUND_TOLERANCE`].
    pub fn upper(
        quantity: impl Into<String>,
        computed: impl Into<Quantity>,
        bound: f64,
        source: impl Into<String>,
    ) -> Self {
        Self::upper_with_tolerance(quantity, computed, bound, BOUND_TOLERANCE, source)
    }

    pub fn upper_with_tolerance(
        quantity: impl Into<String>,
        computed: impl Into<Quantity>,
        bound: f64,
        tolerance: f64,
        source: impl Into<String>,
    ) -> Self {
        let computed = computed.into();
        let satisfied = computed.to_f64() <= bound + tolerance;
        Self::new(quantity, computed, bound, Direction::Upper, satisfied, source)
    }

    /// Lower bound compared with [`BOUND_TOLERANCE`].
    pub fn lower(
        quantity: impl Into<String>,
        computed: impl Into<Quantity>,
        bound: f64,
        source: impl Into<String>,
    ) -> Self {
        let computed = computed.into();
        let satisfied = computed.to_f64() >= bound - BOUND_TOLERANCE;
        Self::new(quantity, computed, bound, Direction::Lower, satisfied, source)
    }

    pub fn as_conjecture(mut self) -> Self {
        self.conjecture = true;
        self
    }

    pub fn with_parameter(mut self, t: f64) -> Self {
        self.parameter = Some(t);
        self
    }

    /// Distance to the bound on the satisfying side (negative when violated).
    pub fn slack(&self) -> f64 {
        let c = self.computed.to_f64();
        match self.direction {
            Direction::Upper => self.bound - c,
            Direction::Lower => c - self.bound,
        }
    }

    /// True when the bound is satisfied with equality up to tolerance.
    pub fn is_tight(&self) -> bool {
        match &self.computed {
            Quantity::Rational(r) => (rational_to_f64(r) - self.bound).abs() <= BOUND_TOLERANCE,
            _ => self.slack().abs() <= BOUND_TOLERANCE,
        }
    }

    /// A failed proven bound: either a bug or a counterexample.
    pub fn is_violation(&self) -> bool {
        !self.satisfied && !self.conjecture
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.direction {
            Direction::Upper => "<=",
            Direction::Lower => ">=",
        };
        let verdict = match (self.satisfied, self.conjecture) {
            (true, _) => "ok",
            (false, true) => "exceeds conjecture",
            (false, false) => "VIOLATED",
        };
        write!(
            f,
            "{} = {} {} {} [{}] ({})",
            self.quantity, self.computed, rel, self.bound, verdict, self.source
        )
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Shift both sides down so the quotient survives conversion.
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::INFINITY);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}
