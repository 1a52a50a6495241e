use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ring::{render_rational, QRing, RingScalar};

/// Every identity the catalogue can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    VerticalFirst,
    VerticalSecond,
    HorizontalFirst,
    HorizontalSecond,
    GenfuncSecond,
    Boundary,
    RDecompFirst,
    RDecompSecond,
    RShift,
    ConvoFirstA,
    ConvoFirstB,
    ConvoSecondA,
    ConvoSecondB,
    DowlingBinomialFwd,
    DowlingBinomialInv,
    Orthogonality,
    PrivaultQ,
    DefiningFirst,
    DefiningSecond,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::VerticalFirst,
        IdentityId::VerticalSecond,
        IdentityId::HorizontalFirst,
        IdentityId::HorizontalSecond,
        IdentityId::GenfuncSecond,
        IdentityId::Boundary,
        IdentityId::RDecompFirst,
        IdentityId::RDecompSecond,
        IdentityId::RShift,
        IdentityId::ConvoFirstA,
        IdentityId::ConvoFirstB,
        IdentityId::ConvoSecondA,
        IdentityId::ConvoSecondB,
        IdentityId::DowlingBinomialFwd,
        IdentityId::DowlingBinomialInv,
        IdentityId::Orthogonality,
        IdentityId::PrivaultQ,
        IdentityId::DefiningFirst,
        IdentityId::DefiningSecond,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::VerticalFirst => "vertical_first",
            IdentityId::VerticalSecond => "vertical_second",
            IdentityId::HorizontalFirst => "horizontal_first",
            IdentityId::HorizontalSecond => "horizontal_second",
            IdentityId::GenfuncSecond => "genfunc_second",
            IdentityId::Boundary => "boundary",
            IdentityId::RDecompFirst => "r_decomp_first",
            IdentityId::RDecompSecond => "r_decomp_second",
            IdentityId::RShift => "r_shift",
            IdentityId::ConvoFirstA => "convo_first_a",
            IdentityId::ConvoFirstB => "convo_first_b",
            IdentityId::ConvoSecondA => "convo_second_a",
            IdentityId::ConvoSecondB => "convo_second_b",
            IdentityId::DowlingBinomialFwd => "dowling_binomial_fwd",
            IdentityId::DowlingBinomialInv => "dowling_binomial_inv",
            IdentityId::Orthogonality => "orthogonality",
            IdentityId::PrivaultQ => "privault_q",
            IdentityId::DefiningFirst => "defining_first",
            IdentityId::DefiningSecond => "defining_second",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Where in parameter space a check was made.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    pub m: BigRational,
    pub r: BigRational,
    pub q: String,
    pub indices: Vec<(&'static str, i64)>,
    pub extras: Vec<(&'static str, BigRational)>,
}

impl Point {
    pub fn new(m: &BigRational, r: &BigRational, q: String) -> Self {
        Self {
            m: m.clone(),
            r: r.clone(),
            q,
            indices: Vec::new(),
            extras: Vec::new(),
        }
    }

    pub fn idx(mut self, name: &'static str, v: impl TryInto<i64>) -> Self {
        self.indices
            .push((name, v.try_into().unwrap_or_else(|_| panic!("index {name} overflows"))));
        self
    }

    pub fn extra(mut self, name: &'static str, v: &BigRational) -> Self {
        self.extras.push((name, v.clone()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("m".into(), json!(render_rational(&self.m)));
        obj.insert("r".into(), json!(render_rational(&self.r)));
        obj.insert("q".into(), json!(self.q));
        for (k, v) in &self.indices {
            obj.insert((*k).into(), json!(v));
        }
        for (k, v) in &self.extras {
            obj.insert((*k).into(), json!(render_rational(v)));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} r={} {}",
            render_rational(&self.m),
            render_rational(&self.r),
            self.q
        )?;
        for (k, v) in &self.indices {
            write!(f, " {k}={v}")?;
        }
        for (k, v) in &self.extras {
            write!(f, " {k}={}", render_rational(v))?;
        }
        Ok(())
    }
}

/// Outcome of checking one identity at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub point: Point,
    pub lhs: RingScalar,
    pub rhs: RingScalar,
    pub pass: bool,
}

impl IdentityReport {
    pub fn check<R: QRing>(ring: &R, id: IdentityId, point: Point, lhs: &R::Elem, rhs: &R::Elem) -> Self {
        Self {
            id,
            pass: ring.same(lhs, rhs),
            lhs: ring.to_scalar(lhs),
            rhs: ring.to_scalar(rhs),
            point,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.as_str(),
            "point": self.point.to_json(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "pass": self.pass,
        })
    }
}
