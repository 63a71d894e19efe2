//! Piecewise-polynomial activations over [`Dyadic`] values.
//!
//! Pieces are left-closed and right-open: with breakpoints `b_1 < ... <
//! b_{p-1}`, piece `j` covers `[b_j, b_{j+1})`, the first piece covers
//! `(-inf, b_1)` and the last covers `[b_{p-1}, inf)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Identity,
    Sign,
    Relu,
    Lsig,
    A,
    AScaled(Dyadic),
    Inline,
}

#[derive(Clone, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<Dyadic>,
    /// Coefficients per piece, constant term first.
    pieces: Vec<Vec<Dyadic>>,
    kind: Kind,
}

fn d(v: i64) -> Dyadic {
    Dyadic::from_int(v)
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<Dyadic>, pieces: Vec<Vec<Dyadic>>) -> Result<Self> {
        Self::with_kind(breakpoints, pieces, Kind::Inline)
    }

    fn with_kind(breakpoints: Vec<Dyadic>, pieces: Vec<Vec<Dyadic>>, kind: Kind) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints, pieces, kind })
    }

    pub fn identity() -> Self {
        Self { breakpoints: vec![], pieces: vec![vec![d(0), d(1)]], kind: Kind::Identity }
    }

    /// `x -> 1 if x >= 0 else 0`.
    pub fn sign() -> Self {
        Self { breakpoints: vec![d(0)], pieces: vec![vec![d(0)], vec![d(1)]], kind: Kind::Sign }
    }

    pub fn relu() -> Self {
        Self { breakpoints: vec![d(0)], pieces: vec![vec![d(0)], vec![d(0), d(1)]], kind: Kind::Relu }
    }

    /// `x -> max(0, min(1, x))`.
    pub fn lsig() -> Self {
        Self {
            breakpoints: vec![d(0), d(1)],
            pieces: vec![vec![d(0)], vec![d(0), d(1)], vec![d(1)]],
            kind: Kind::Lsig,
        }
    }

    /// The bump used by the bit-extraction construction: 0 below 0, `2x` on
    /// `[0, 1/2)`, 1 on `[1/2, 1)`, `3 - 2x` on `[1, 3/2)`, 0 from `3/2`.
    pub fn a() -> Self {
        Self {
            breakpoints: vec![d(0), Dyadic::pow2(-1), d(1), Dyadic::new(3, -1)],
            pieces: vec![vec![d(0)], vec![d(0), d(2)], vec![d(1)], vec![d(3), d(-2)], vec![d(0)]],
            kind: Kind::A,
        }
    }

    /// `t -> A(t / m)` for a positive power of two `m`.
    pub fn a_scaled(m: &Dyadic) -> Result<Self> {
        if m.signum() <= 0 || m.mantissa() != &num_bigint::BigInt::from(1) {
            return Err(Error::InvalidArgument(format!("A_scaled needs a positive power of two, got {m}")));
        }
        let slope = Dyadic::from_int(2).scale_pow2(-m.exponent());
        let half = m.scale_pow2(-1);
        Ok(Self {
            breakpoints: vec![d(0), half.clone(), m.clone(), m + &half],
            pieces: vec![vec![d(0)], vec![d(0), slope.clone()], vec![d(1)], vec![d(3), -&slope], vec![d(0)]],
            kind: Kind::AScaled(m.clone()),
        })
    }

    /// Looks up `identity`, `sign`, `relu`, `lsig`, `A` or `A_scaled(M)`.
    pub fn by_name(name: &str) -> Result<Self> {
        if let Some(arg) = name.strip_prefix("A_scaled(").and_then(|r| r.strip_suffix(')')) {
            return Self::a_scaled(&arg.parse()?);
        }
        match name {
            "identity" | "id" => Ok(Self::identity()),
            "sign" => Ok(Self::sign()),
            "relu" => Ok(Self::relu()),
            "lsig" => Ok(Self::lsig()),
            "A" => Ok(Self::a()),
            _ => Err(Error::Parse(format!("unknown activation {name:?}"))),
        }
    }

    pub fn breakpoints(&self) -> &[Dyadic] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<Dyadic>] {
        &self.pieces
    }

    /// Number of pieces `p`.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Maximal polynomial degree `delta` over all pieces.
    pub fn degree(&self) -> usize {
        self.pieces
            .iter()
            .map(|c| c.iter().rposition(|x| !x.is_zero()).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].len() == 2 && self.pieces[0][0].is_zero() && self.pieces[0][1] == d(1)
    }

    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        let j = self.breakpoints.partition_point(|b| b <= x);
        horner(&self.pieces[j], x)
    }

    fn name(&self) -> Option<String> {
        match &self.kind {
            Kind::Identity => Some("identity".into()),
            Kind::Sign => Some("sign".into()),
            Kind::Relu => Some("relu".into()),
            Kind::Lsig => Some("lsig".into()),
            Kind::A => Some("A".into()),
            Kind::AScaled(m) => Some(format!("A_scaled({m})")),
            Kind::Inline => None,
        }
    }
}

fn horner(coeffs: &[Dyadic], x: &Dyadic) -> Dyadic {
    coeffs.iter().rev().fold(Dyadic::zero(), |acc, c| &(&acc * x) + c)
}

impl fmt::Debug for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => write!(f, "{n}"),
            None => f
                .debug_struct("PiecewisePoly")
                .field("breakpoints", &self.breakpoints)
                .field("pieces", &self.pieces)
                .finish(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Named(String),
    Inline { breakpoints: Vec<Dyadic>, pieces: Vec<Vec<Dyadic>> },
}

/// Named activations serialize as their name (`"relu"`, `"A_scaled(256)"`),
/// others as `{"breakpoints": [...], "pieces": [[...], ...]}`.
impl Serialize for PiecewisePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.name() {
            Some(n) => Repr::Named(n),
            None => Repr::Inline { breakpoints: self.breakpoints.clone(), pieces: self.pieces.clone() },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiecewisePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match Repr::deserialize(deserializer)? {
            Repr::Named(n) => PiecewisePoly::by_name(&n).map_err(D::Error::custom),
            Repr::Inline { breakpoints, pieces } => PiecewisePoly::new(breakpoints, pieces).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn standard_activations() {
        assert_eq!(PiecewisePoly::relu().eval(&q("-3")), q("0"));
        assert_eq!(PiecewisePoly::relu().eval(&q("5/8")), q("5/8"));
        assert_eq!(PiecewisePoly::lsig().eval(&q("1/2")), q("1/2"));
        assert_eq!(PiecewisePoly::lsig().eval(&q("2")), q("1"));
        assert_eq!(PiecewisePoly::sign().eval(&q("0")), q("1"));
        assert_eq!(PiecewisePoly::sign().eval(&q("-1/1024")), q("0"));
    }

    #[test]
    fn bump_values() {
        let a = PiecewisePoly::a();
        assert_eq!(a.eval(&q("5/8")), q("1"));
        assert_eq!(a.eval(&q("5/4")), q("1/2"));
        assert_eq!(a.eval(&q("3/2")), q("0"));
        assert_eq!(a.eval(&q("0")), q("0"));
        assert_eq!(a.eval(&q("1")), q("1"));
        assert_eq!(a.eval(&q("-3/8")), q("0"));
        assert_eq!(a.piece_count(), 5);
        assert_eq!(a.degree(), 1);
    }

    #[test]
    fn piece_counts_and_degrees() {
        assert_eq!((PiecewisePoly::sign().piece_count(), PiecewisePoly::sign().degree()), (2, 0));
        assert_eq!((PiecewisePoly::relu().piece_count(), PiecewisePoly::relu().degree()), (2, 1));
        assert_eq!((PiecewisePoly::lsig().piece_count(), PiecewisePoly::lsig().degree()), (3, 1));
    }

    #[test]
    fn rejects_bad_inline_definitions() {
        assert!(PiecewisePoly::new(vec![q("1"), q("0")], vec![vec![], vec![], vec![]]).is_err());
        assert!(PiecewisePoly::new(vec![q("1")], vec![vec![]]).is_err());
        assert!(PiecewisePoly::a_scaled(&q("3")).is_err());
    }

    #[test]
    fn json_names_round_trip() {
        for act in [PiecewisePoly::relu(), PiecewisePoly::a(), PiecewisePoly::a_scaled(&q("256")).unwrap()] {
            let s = serde_json::to_string(&act).unwrap();
            assert_eq!(serde_json::from_str::<PiecewisePoly>(&s).unwrap(), act);
        }
        assert_eq!(serde_json::to_string(&PiecewisePoly::a_scaled(&q("16")).unwrap()).unwrap(), r#""A_scaled(16)""#);
        let inline = PiecewisePoly::new(vec![q("1/2")], vec![vec![q("1")], vec![q("0"), q("0"), q("3")]]).unwrap();
        let s = serde_json::to_string(&inline).unwrap();
        assert_eq!(serde_json::from_str::<PiecewisePoly>(&s).unwrap(), inline);
        assert_eq!(inline.eval(&q("2")), q("12"));
    }

    proptest! {
        #[test]
        fn scaled_bump_matches_bump(m_exp in 0i64..12, mant in -5000i64..5000, e in -8i64..2) {
            let t = Dyadic::new(mant, e);
            let m = Dyadic::pow2(m_exp);
            let scaled = PiecewisePoly::a_scaled(&m).unwrap();
            prop_assert_eq!(scaled.eval(&(&m * &t)), PiecewisePoly::a().eval(&t));
            prop_assert_eq!(scaled.piece_count(), 5);
        }
    }
}
