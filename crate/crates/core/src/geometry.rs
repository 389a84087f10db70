//! Torus action on `(P^2)^[3]`: fixed points, tangent characters,
//! tautological Chern classes and the fifteen contracted invariant curves.
//!
//! Chart indices are 0-based. In chart `i` the local coordinates `(u_i, v_i)`
//! carry characters `lambda_i`, `mu_i` with weights `(w_i, z_i)`; a character
//! `lambda_i^a mu_i^b` is stored additively as `a*w_i + b*z_i`.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{Rational, Specialization, VirtualCharacter, Weight};

/// Index of a torus-fixed point `P_0, P_1, P_2` of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Chart(u8);

impl Chart {
    pub const ALL: [Chart; 3] = [Chart(0), Chart(1), Chart(2)];

    pub fn new(i: u8) -> Result<Chart> {
        if i < 3 {
            Ok(Chart(i))
        } else {
            Err(Error::ChartIndex(i))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `a * w_i + b * z_i` as a global weight.
    pub fn character(self, a: i64, b: i64) -> Weight {
        let (wi, zi) = torus_weights(self);
        &(a * wi) + &(b * zi)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(w_i, z_i)`: `(w, z)`, `(-w, -w+z)`, `(-z, -z+w)`.
pub fn torus_weights(i: Chart) -> (Weight, Weight) {
    match i.0 {
        0 => (Weight::from_ints(1, 0), Weight::from_ints(0, 1)),
        1 => (Weight::from_ints(-1, 0), Weight::from_ints(-1, 1)),
        _ => (Weight::from_ints(0, -1), Weight::from_ints(1, -1)),
    }
}

/// `g_i = c_1(O(1)|_{P_i})`: `0`, `w`, `z`.
pub fn g_class(i: Chart) -> Weight {
    match i.0 {
        0 => Weight::zero(),
        1 => Weight::w(),
        _ => Weight::z(),
    }
}

/// Torus-fixed points lying on contracted invariant curves.
///
/// `Punctual { i, k }` is `Q_{i,k}` (ideals `(u^2,uv,v^2)`, `(u^3,v)`, `(u,v^3)`
/// for `k = 0, 1, 2`); `Pair { i, j, s }` is `R_{i,j}^{(s)} = xi_{i,s} + P_j`.
/// The triple point `P_0 + P_1 + P_2` meets no contracted curve and is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedPoint {
    Punctual { i: Chart, k: u8 },
    Pair { i: Chart, j: Chart, s: u8 },
}

impl FixedPoint {
    pub fn punctual(i: Chart, k: u8) -> Result<FixedPoint> {
        if k > 2 {
            return Err(Error::FixedPoint(format!("Q_{{{i},{k}}}: k must be 0..2")));
        }
        Ok(FixedPoint::Punctual { i, k })
    }

    pub fn pair(i: Chart, j: Chart, s: u8) -> Result<FixedPoint> {
        if i == j || !(1..=2).contains(&s) {
            return Err(Error::FixedPoint(format!("R_{{{i},{j}}}^({s}): need i != j and s in 1..2")));
        }
        Ok(FixedPoint::Pair { i, j, s })
    }

    /// The 9 punctual and 12 pair points, in a fixed order.
    pub fn all() -> Vec<FixedPoint> {
        let mut out = Vec::with_capacity(21);
        for i in Chart::ALL {
            for k in 0..3 {
                out.push(FixedPoint::Punctual { i, k });
            }
        }
        for i in Chart::ALL {
            for j in Chart::ALL {
                if i != j {
                    for s in 1..=2 {
                        out.push(FixedPoint::Pair { i, j, s });
                    }
                }
            }
        }
        out
    }

    pub fn chart(&self) -> Chart {
        match *self {
            FixedPoint::Punctual { i, .. } | FixedPoint::Pair { i, .. } => i,
        }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedPoint::Punctual { i, k } => write!(f, "Q_{{{i},{k}}}"),
            FixedPoint::Pair { i, j, s } => write!(f, "R_{{{i},{j}}}^({s})"),
        }
    }
}

/// Six tangent weights at `p`, with multiplicity.
pub fn tangent_weights(p: &FixedPoint) -> Vec<Weight> {
    let (chart, chars): (Chart, &[(i64, i64)]) = match *p {
        FixedPoint::Punctual { i, k: 0 } => (i, &[(-1, 0), (-1, 0), (0, -1), (0, -1), (-2, 1), (1, -2)]),
        FixedPoint::Punctual { i, k: 1 } => (i, &[(-1, 2), (-1, 1), (-1, 0), (0, -3), (0, -2), (0, -1)]),
        FixedPoint::Punctual { i, .. } => (i, &[(-3, 0), (-2, 0), (-1, 0), (2, -1), (1, -1), (0, -1)]),
        FixedPoint::Pair { i, s: 1, .. } => (i, &[(-1, 1), (-1, 0), (0, -2), (0, -1)]),
        FixedPoint::Pair { i, .. } => (i, &[(-2, 0), (-1, 0), (1, -1), (0, -1)]),
    };
    let mut out: Vec<Weight> = chars.iter().map(|&(a, b)| chart.character(a, b)).collect();
    if let FixedPoint::Pair { j, .. } = *p {
        out.push(j.character(-1, 0));
        out.push(j.character(0, -1));
    }
    out
}

pub fn tangent_rep(p: &FixedPoint) -> VirtualCharacter {
    VirtualCharacter::from_weights(tangent_weights(p))
}

/// `e(T_p)`, the product of the six tangent weights.
pub fn euler_tangent(p: &FixedPoint, spec: &Specialization) -> Result<Rational> {
    let mut acc = Rational::one();
    for w in tangent_weights(p) {
        acc *= spec.nonzero(&w)?;
    }
    Ok(acc)
}

/// Tautological bundle `E_0 = O^[3]` or `E_1 = O(1)^[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tautological {
    E0,
    E1,
}

/// Equivariant `c_1` of `E_0` or `E_1` restricted to `p`.
pub fn c1_taut(bundle: Tautological, p: &FixedPoint) -> Weight {
    let (base, twist) = match *p {
        FixedPoint::Pair { i, j, s } => {
            let (wi, zi) = torus_weights(i);
            let base = if s == 1 { zi } else { wi };
            (base, &(2 * g_class(i)) + &g_class(j))
        }
        FixedPoint::Punctual { i, k } => {
            let base = match k {
                0 => i.character(1, 1),
                1 => i.character(0, 3),
                _ => i.character(3, 0),
            };
            (base, 3 * g_class(i))
        }
    };
    match bundle {
        Tautological::E0 => base,
        Tautological::E1 => base + twist,
    }
}

/// A torus-invariant curve contracted by the Hilbert–Chow morphism.
///
/// `Pair { i, j }` is `C_{i,j} = M_2(P_i) + P_j`; `Punctual { i, k, l }` is
/// `C^{(i)}_{k,l}` inside `M_3(P_i)`, joining `Q_{i,k}` and `Q_{i,l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvariantCurve {
    Pair { i: Chart, j: Chart },
    Punctual { i: Chart, k: u8, l: u8 },
}

impl InvariantCurve {
    pub fn pair(i: Chart, j: Chart) -> Result<InvariantCurve> {
        if i == j {
            return Err(Error::FixedPoint(format!("C_{{{i},{j}}} needs i != j")));
        }
        Ok(InvariantCurve::Pair { i, j })
    }

    pub fn punctual(i: Chart, k: u8, l: u8) -> Result<InvariantCurve> {
        if !(k < l && l <= 2) {
            return Err(Error::FixedPoint(format!("C^({i})_{{{k},{l}}} needs 0 <= k < l <= 2")));
        }
        Ok(InvariantCurve::Punctual { i, k, l })
    }

    pub fn chart(&self) -> Chart {
        match *self {
            InvariantCurve::Pair { i, .. } | InvariantCurve::Punctual { i, .. } => i,
        }
    }

    pub fn endpoints(&self) -> (FixedPoint, FixedPoint) {
        match *self {
            InvariantCurve::Pair { i, j } => (FixedPoint::Pair { i, j, s: 1 }, FixedPoint::Pair { i, j, s: 2 }),
            InvariantCurve::Punctual { i, k, l } => (FixedPoint::Punctual { i, k }, FixedPoint::Punctual { i, k: l }),
        }
    }

    pub fn contains(&self, p: &FixedPoint) -> bool {
        let (a, b) = self.endpoints();
        *p == a || *p == b
    }

    pub fn other_end(&self, p: &FixedPoint) -> Option<FixedPoint> {
        let (a, b) = self.endpoints();
        if *p == a {
            Some(b)
        } else if *p == b {
            Some(a)
        } else {
            None
        }
    }

    /// Tangent weight of the curve at its endpoint `p`.
    pub fn tangent_at(&self, p: &FixedPoint) -> Option<Weight> {
        let (first, _) = self.endpoints();
        if !self.contains(p) {
            return None;
        }
        let (a, b) = match *self {
            InvariantCurve::Pair { .. } => (-1, 1),
            InvariantCurve::Punctual { k: 0, l: 1, .. } => (1, -2),
            InvariantCurve::Punctual { k: 0, .. } => (-2, 1),
            InvariantCurve::Punctual { .. } => (-1, 1),
        };
        let at_first = self.chart().character(a, b);
        Some(if *p == first { at_first } else { -at_first })
    }

    /// Homology class as a multiple of `beta_3`.
    pub fn beta_multiple(&self) -> u32 {
        match *self {
            InvariantCurve::Punctual { k: 1, l: 2, .. } => 3,
            _ => 1,
        }
    }

    /// The curve joining two fixed points, if any.
    pub fn joining(a: &FixedPoint, b: &FixedPoint) -> Option<InvariantCurve> {
        match (*a, *b) {
            (FixedPoint::Pair { i, j, s }, FixedPoint::Pair { i: i2, j: j2, s: s2 })
                if i == i2 && j == j2 && s != s2 =>
            {
                Some(InvariantCurve::Pair { i, j })
            }
            (FixedPoint::Punctual { i, k }, FixedPoint::Punctual { i: i2, k: k2 }) if i == i2 && k != k2 => {
                Some(InvariantCurve::Punctual { i, k: k.min(k2), l: k.max(k2) })
            }
            _ => None,
        }
    }
}

impl fmt::Display for InvariantCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantCurve::Pair { i, j } => write!(f, "C_{{{i},{j}}}"),
            InvariantCurve::Punctual { i, k, l } => write!(f, "C^({i})_{{{k},{l}}}"),
        }
    }
}

/// The 15 contracted invariant curves: 6 pair curves, then 9 punctual ones.
pub fn curve_catalog() -> Vec<InvariantCurve> {
    let mut out = Vec::with_capacity(15);
    for i in Chart::ALL {
        for j in Chart::ALL {
            if i != j {
                out.push(InvariantCurve::Pair { i, j });
            }
        }
    }
    for i in Chart::ALL {
        for (k, l) in [(0, 1), (0, 2), (1, 2)] {
            out.push(InvariantCurve::Punctual { i, k, l });
        }
    }
    out
}
