//! Printed closed forms for degrees 1..=4, used as reference values.
//!
//! Every function takes chart-local values; [`Local::at`] checks that the
//! denominators `w_i, z_i, w_i +- z_i, w_i - 2 z_i, 2 w_i - z_i` are nonzero.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{g_class, torus_weights, Chart};
use crate::scalars::{int, Rational, Specialization};

/// `(w_i, z_i, g_i)` evaluated at a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Local {
    pub w: Rational,
    pub z: Rational,
    pub g: Rational,
}

impl Local {
    pub fn at(i: Chart, spec: &Specialization) -> Result<Local> {
        let (wi, zi) = torus_weights(i);
        let w = spec.nonzero(&wi)?;
        let z = spec.nonzero(&zi)?;
        spec.nonzero(&(&wi + &zi))?;
        spec.nonzero(&(&wi - &zi))?;
        spec.nonzero(&(&wi - &(2 * zi.clone())))?;
        spec.nonzero(&(&(2 * wi.clone()) - &zi))?;
        Ok(Local { w, z, g: g_class(i).evaluate(spec) })
    }

    /// Exchange `w_i` and `z_i`.
    pub fn swapped(&self) -> Local {
        Local { w: self.z.clone(), z: self.w.clone(), g: self.g.clone() }
    }
}

fn check_degree(d: u32) -> Result<Rational> {
    if (1..=4).contains(&d) {
        Ok(int(i64::from(d)))
    } else {
        Err(Error::Degree(d))
    }
}

/// `e_{d,i,j} = (w_i + z_i) / (d w_i w_j (w_i - z_i)^2 z_i z_j)`.
pub fn e_closed(d: u32, li: &Local, lj: &Local) -> Result<Rational> {
    let d = check_degree(d)?;
    let diff = &li.w - &li.z;
    Ok((&li.w + &li.z) / (d * &li.w * &lj.w * &diff * &diff * &li.z * &lj.z))
}

/// The printed `S'_{d,i,j} = (2 g_i + g_j)(w_i + z_i)^3 / (d w_i w_j z_i z_j)`.
pub fn s_prime_printed(d: u32, li: &Local, lj: &Local) -> Result<Rational> {
    let d = check_degree(d)?;
    let s = &li.w + &li.z;
    Ok((int(2) * &li.g + &lj.g) * &s * &s * &s / (d * &li.w * &lj.w * &li.z * &lj.z))
}

/// `-(2 g_i + g_j)(w_i^2 - z_i^2)^2 e_{d,i,j}` with the printed `e`.
pub fn s_prime_assembled(d: u32, li: &Local, lj: &Local) -> Result<Rational> {
    let e = e_closed(d, li, lj)?;
    let q = &li.w * &li.w - &li.z * &li.z;
    Ok(-(int(2) * &li.g + &lj.g) * &q * &q * e)
}

// w (w - 2z)^2 (w - z) (2w - z)
fn f_base(l: &Local) -> Rational {
    let two = int(2);
    let a = &l.w - &two * &l.z;
    &l.w * &a * &a * (&l.w - &l.z) * (&two * &l.w - &l.z)
}

pub fn f01_1(l: &Local) -> Rational {
    let two = int(2);
    let a = &l.w - &two * &l.z;
    (&l.w + &l.z) / (&l.w * &a * &a * (&l.w - &l.z) * &l.z * &l.z)
}

/// `f_{d,i,0,1}` in its first printed shape.
pub fn f01(d: u32, l: &Local) -> Result<Rational> {
    let dd = check_degree(d)?;
    if d == 1 {
        return Ok(f01_1(l));
    }
    let (w, z) = (&l.w, &l.z);
    let num = match d {
        3 => int(2) * (w + z) * (w + int(4) * z),
        _ => int(2) * w * w + int(7) * w * z + int(5) * z * z,
    };
    Ok(num / (dd * f_base(l) * z * z))
}

/// `f_{d,i,0,1}` in its recursive shape `f_1 / d + c (w+z) / (base z)`.
pub fn f01_recursive(d: u32, l: &Local) -> Result<Rational> {
    let dd = check_degree(d)?;
    if d == 1 {
        return Ok(f01_1(l));
    }
    let tail = int(3) * (&l.w + &l.z) / (f_base(l) * &l.z);
    let tail = if d == 4 { tail / int(2) } else { tail };
    Ok(f01_1(l) / dd + tail)
}

/// `f_{d,i,0,2}` as `f_{d,i,0,1}` with `w_i`, `z_i` exchanged.
pub fn f02(d: u32, l: &Local) -> Result<Rational> {
    f01(d, &l.swapped())
}

/// `f_{d,i,1,2}` exactly as printed.
pub fn f12_printed(d: u32, l: &Local) -> Result<Rational> {
    check_degree(d)?;
    if d == 1 {
        return Ok(Rational::zero());
    }
    let two = int(2);
    let diff = &l.w - &l.z;
    let base = &l.w * (&l.w - &two * &l.z) * &diff * &diff * (&two * &l.w - &l.z) * &l.z;
    let v = (&l.w + &l.z) / base;
    Ok(if d == 4 { v / two } else { v })
}

/// `T'_{d,i}` in its first printed shape.
pub fn t_prime_closed(d: u32, l: &Local) -> Result<Rational> {
    let dd = check_degree(d)?;
    let (w, z) = (&l.w, &l.z);
    let c = match d {
        1 => int(-6),
        3 => int(21),
        _ => int(12),
    };
    let cubic = w * w * w + &c * w * w * z + &c * w * z * z + z * z * z;
    Ok(int(-3) * &l.g * cubic / (dd * w * w * z * z))
}

/// `T'_{d,i} = T'_{1,i} / d - c * 27 g_i (w_i + z_i) / (w_i z_i)`.
pub fn t_prime_recursive(d: u32, l: &Local) -> Result<Rational> {
    let dd = check_degree(d)?;
    let t1 = t_prime_closed(1, l)?;
    if d == 1 {
        return Ok(t1);
    }
    let tail = int(27) * &l.g * (&l.w + &l.z) / (&l.w * &l.z);
    let tail = if d == 4 { tail / int(2) } else { tail };
    Ok(t1 / dd - tail)
}

/// Printed `gamma_{i,j,k}` for `(j, k)` in `(0,1), (0,2), (1,2)`.
pub fn gamma_closed(j: u8, k: u8, l: &Local) -> Result<Rational> {
    let (w, z) = (&l.w, &l.z);
    let sq = |r: Rational| &r * &r;
    match (j, k) {
        (0, 1) => Ok(int(-3) * &l.g * sq(w * w + int(2) * w * z - int(8) * z * z)),
        (0, 2) => Ok(int(-3) * &l.g * sq(int(-8) * w * w + int(2) * w * z + z * z)),
        (1, 2) => Ok(int(-243) * &l.g * sq(w * w - z * z)),
        _ => Err(Error::Family(format!("gamma_{{i,{j},{k}}}"))),
    }
}
