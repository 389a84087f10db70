//! Nakajima monomials on `(P^2)^[3]`, the Poincaré pairing, dual bases and
//! the two- and three-point tables in classes `d * beta_3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{fmt_rational, int, rat, Rational};

/// `K_X^2` for the projective plane.
pub const K_SQUARED: i64 = 9;
/// `K_X . l` for the projective plane.
pub const K_DOT_LINE: i64 = -3;

/// Homology class on `P^2`. Declaration order is the canonical factor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SurfaceClass {
    /// `X`
    Surface,
    /// `l`
    Line,
    /// `x`
    Point,
}

impl SurfaceClass {
    /// Real homology degree.
    pub fn degree(self) -> u32 {
        match self {
            SurfaceClass::Point => 0,
            SurfaceClass::Line => 2,
            SurfaceClass::Surface => 4,
        }
    }

    /// Intersection pairing: `<x, X> = <l, l> = 1`.
    pub fn pairing(self, other: SurfaceClass) -> i64 {
        if self.degree() + other.degree() == 4 {
            1
        } else {
            0
        }
    }

    fn symbol(self) -> char {
        match self {
            SurfaceClass::Point => 'x',
            SurfaceClass::Line => 'l',
            SurfaceClass::Surface => 'X',
        }
    }
}

/// `a_{-n_1}(c_1) ... a_{-n_k}(c_k)|0>` with `sum n_i = 3`.
///
/// Factors are kept sorted by decreasing `n`, then by class, so equal
/// monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockMonomial {
    factors: Vec<(u32, SurfaceClass)>,
}

impl FockMonomial {
    pub fn new(factors: &[(u32, SurfaceClass)]) -> FockMonomial {
        let mut f = factors.to_vec();
        f.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        FockMonomial { factors: f }
    }

    pub fn factors(&self) -> &[(u32, SurfaceClass)] {
        &self.factors
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.0).sum()
    }

    /// `sum (2 n_i - 2 + |c_i|)`.
    pub fn homology_degree(&self) -> u32 {
        self.factors.iter().map(|&(n, c)| 2 * n - 2 + c.degree()).sum()
    }

    fn partition(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.0).collect()
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut k = 0;
        while k < self.factors.len() {
            let mut run = 1;
            while k + run < self.factors.len() && self.factors[k + run] == self.factors[k] {
                run += 1;
            }
            let (n, c) = self.factors[k];
            write!(f, "a_{{-{n}}}({})", c.symbol())?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl FromStr for FockMonomial {
    type Err = Error;

    /// Parses the `Display` form, e.g. `a_{-1}(X)^2a_{-1}(x)`.
    fn from_str(s: &str) -> Result<FockMonomial> {
        let bad = || Error::Usage(format!("cannot parse Nakajima monomial '{s}'"));
        let mut rest = s.trim();
        let mut factors = Vec::new();
        while !rest.is_empty() {
            rest = rest.strip_prefix("a_{-").ok_or_else(bad)?;
            let close = rest.find('}').ok_or_else(bad)?;
            let n: u32 = rest[..close].parse().map_err(|_| bad())?;
            rest = rest[close + 1..].strip_prefix('(').ok_or_else(bad)?;
            let class = match rest.chars().next() {
                Some('x') => SurfaceClass::Point,
                Some('l') => SurfaceClass::Line,
                Some('X') => SurfaceClass::Surface,
                _ => return Err(bad()),
            };
            rest = rest[1..].strip_prefix(')').ok_or_else(bad)?;
            let mut power = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                power = r[..end].parse().map_err(|_| bad())?;
                rest = &r[end..];
            }
            if n == 0 {
                return Err(bad());
            }
            for _ in 0..power {
                factors.push((n, class));
            }
        }
        let m = FockMonomial::new(&factors);
        if m.weight() != 3 {
            return Err(Error::Usage(format!("'{s}' does not have total weight 3")));
        }
        Ok(m)
    }
}

/// A rational combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockElement {
    terms: BTreeMap<FockMonomial, Rational>,
}

impl FockElement {
    pub fn zero() -> FockElement {
        FockElement::default()
    }

    pub fn monomial(m: FockMonomial) -> FockElement {
        FockElement::term(int(1), m)
    }

    pub fn term(c: Rational, m: FockMonomial) -> FockElement {
        let mut e = FockElement::zero();
        e.add(c, m);
        e
    }

    pub fn add(&mut self, c: Rational, m: FockMonomial) {
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &FockMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The monomial if this is `1 * m`.
    pub fn as_monomial(&self) -> Option<&FockMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for FockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !a.is_one() {
                write!(f, "{}*", fmt_rational(&a))?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

fn mono(s: &str) -> FockMonomial {
    s.parse().expect("well-formed monomial literal")
}

/// The listed bases `B_2 .. B_10` of `H_k(X^[3])`, in printed order.
pub fn basis(degree: u32) -> Result<Vec<FockMonomial>> {
    let names: &[&str] = match degree {
        2 => &["a_{-2}(x)a_{-1}(x)", "a_{-1}(l)a_{-1}(x)^2"],
        4 => &["a_{-1}(X)a_{-1}(x)^2", "a_{-2}(l)a_{-1}(x)", "a_{-1}(l)^2a_{-1}(x)", "a_{-2}(x)a_{-1}(l)", "a_{-3}(x)"],
        6 => &[
            "a_{-2}(X)a_{-1}(x)",
            "a_{-2}(x)a_{-1}(X)",
            "a_{-1}(X)a_{-1}(l)a_{-1}(x)",
            "a_{-3}(l)",
            "a_{-2}(l)a_{-1}(l)",
            "a_{-1}(l)^3",
        ],
        8 => &["a_{-3}(X)", "a_{-2}(X)a_{-1}(l)", "a_{-2}(l)a_{-1}(X)", "a_{-1}(X)a_{-1}(l)^2", "a_{-1}(X)^2a_{-1}(x)"],
        10 => &["a_{-2}(X)a_{-1}(X)", "a_{-1}(X)^2a_{-1}(l)"],
        _ => return Err(Error::HomologyDegree(degree)),
    };
    Ok(names.iter().map(|s| mono(s)).collect())
}

/// `[p]`, the classes of [`basis`] with the normalizations of `B_3` and
/// `D_l`, and `[X^[3]] = (1/6) a_{-1}(X)^3`.
pub fn full_basis(degree: u32) -> Result<Vec<FockElement>> {
    match degree {
        0 => Ok(vec![FockElement::monomial(mono("a_{-1}(x)^3"))]),
        12 => Ok(vec![FockElement::term(rat(1, 6), mono("a_{-1}(X)^3"))]),
        10 => Ok(vec![b3(), d_line()]),
        _ => Ok(basis(degree)?.into_iter().map(FockElement::monomial).collect()),
    }
}

/// `B_3 = a_{-2}(X) a_{-1}(X)`.
pub fn b3() -> FockElement {
    FockElement::monomial(mono("a_{-2}(X)a_{-1}(X)"))
}

/// `D_l = (1/2) a_{-1}(l) a_{-1}(X)^2`.
pub fn d_line() -> FockElement {
    FockElement::term(rat(1, 2), mono("a_{-1}(X)^2a_{-1}(l)"))
}

/// `(-1)^{3-k} sum_sigma prod n_i <c_i, c'_sigma(i)>` over bijections
/// matching equal parts; zero for different partitions.
pub fn pairing(m1: &FockMonomial, m2: &FockMonomial) -> Rational {
    if m1.partition() != m2.partition() {
        return Rational::zero();
    }
    let k = m1.factors.len();
    let mut used = vec![false; k];
    let total = bijection_sum(&m1.factors, &m2.factors, 0, &mut used);
    let sign = if (3 - k).is_multiple_of(2) { 1 } else { -1 };
    int(sign * total)
}

fn bijection_sum(a: &[(u32, SurfaceClass)], b: &[(u32, SurfaceClass)], i: usize, used: &mut [bool]) -> i64 {
    if i == a.len() {
        return 1;
    }
    let mut total = 0;
    for j in 0..b.len() {
        if used[j] || b[j].0 != a[i].0 {
            continue;
        }
        let p = i64::from(a[i].0) * a[i].1.pairing(b[j].1);
        if p == 0 {
            continue;
        }
        used[j] = true;
        total += p * bijection_sum(a, b, i + 1, used);
        used[j] = false;
    }
    total
}

pub fn pairing_elements(e1: &FockElement, e2: &FockElement) -> Rational {
    let mut acc = Rational::zero();
    for (m1, c1) in e1.terms() {
        for (m2, c2) in e2.terms() {
            acc += c1 * c2 * pairing(m1, m2);
        }
    }
    acc
}

fn check_degree(degree: u32) -> Result<()> {
    if degree <= 12 && degree.is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::HomologyDegree(degree))
    }
}

/// `G[a][b] = <full_basis(k)[a], full_basis(12-k)[b]>`.
pub fn gram_matrix(degree: u32) -> Result<Vec<Vec<Rational>>> {
    check_degree(degree)?;
    let left = full_basis(degree)?;
    let right = full_basis(12 - degree)?;
    Ok(left.iter().map(|a| right.iter().map(|b| pairing_elements(a, b)).collect()).collect())
}

/// Exact Gauss-Jordan inverse.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `Delta^a` for each `Delta_a` of `full_basis(degree)`, written in
/// `full_basis(12 - degree)` monomials.
pub fn dual_basis(degree: u32) -> Result<Vec<FockElement>> {
    let g = gram_matrix(degree)?;
    let inv = invert(&g).ok_or(Error::SingularGram(degree))?;
    let right = full_basis(12 - degree)?;
    Ok((0..g.len())
        .map(|c| {
            let mut e = FockElement::zero();
            for (row, elem) in inv.iter().zip(&right) {
                for (m, coeff) in elem.terms() {
                    e.add(&row[c] * coeff, m.clone());
                }
            }
            e
        })
        .collect())
}

/// One-point invariant `<PD(m)>_{0, d beta_3}` for `m` in `B_4`.
pub fn one_point(m: &FockMonomial, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Degree(d));
    }
    if !basis(4)?.contains(m) {
        return Err(Error::Usage(format!("{m} is not in the degree-4 basis")));
    }
    if *m == mono("a_{-2}(l)a_{-1}(x)") {
        let dd = i64::from(d);
        Ok(rat(2 * K_DOT_LINE, dd * dd))
    } else {
        Ok(Rational::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub classes: Vec<FockMonomial>,
    pub value: Rational,
}

/// Two-point invariants `<PD(A_1), PD(A_2)>_{0,d}` over `B_6 x B_8`.
pub fn two_point_table(d: u32, f_d: &Rational) -> Result<Vec<TableEntry>> {
    if d == 0 {
        return Err(Error::Degree(d));
    }
    let twelve_over_d = rat(12, i64::from(d));
    let nonzero = [
        (mono("a_{-2}(X)a_{-1}(x)"), mono("a_{-2}(l)a_{-1}(X)"), twelve_over_d.clone()),
        (mono("a_{-2}(l)a_{-1}(l)"), mono("a_{-2}(X)a_{-1}(l)"), twelve_over_d),
        (mono("a_{-3}(l)"), mono("a_{-3}(X)"), f_d / int(i64::from(d))),
    ];
    let mut out = Vec::with_capacity(30);
    for a in basis(6)? {
        for b in basis(8)? {
            let value = nonzero
                .iter()
                .find(|(x, y, _)| *x == a && *y == b)
                .map(|(_, _, v)| v.clone())
                .unwrap_or_else(Rational::zero);
            out.push(TableEntry { classes: vec![a.clone(), b], value });
        }
    }
    Ok(out)
}

fn sum_lower(f: &[Rational], d: usize) -> (Rational, Rational) {
    let mut single = Rational::zero();
    let mut pairs = Rational::zero();
    for d1 in 1..d {
        single += &f[d1 - 1];
        pairs += &f[d1 - 1] * &f[d - d1 - 1];
    }
    (single, pairs)
}

/// `w_3 = -162 - 15 f(d) + 6 sum f(d_1) + (1/3) sum f(d_1) f(d - d_1)`.
pub fn three_point_case_iv(d: u32, f: &[Rational]) -> Result<Rational> {
    let du = d as usize;
    if d == 0 {
        return Err(Error::Degree(d));
    }
    if f.len() < du {
        return Err(Error::MissingF(f.len() as u32 + 1));
    }
    let (single, pairs) = sum_lower(f, du);
    Ok(int(-162) - int(15) * &f[du - 1] + int(6) * single + pairs / int(3))
}

/// Three-point invariants over unordered triples from `B_8`, `f[k] = f(k+1)`.
pub fn three_point_table(d: u32, f: &[Rational]) -> Result<Vec<TableEntry>> {
    let w3 = three_point_case_iv(d, f)?;
    let fd = &f[d as usize - 1];
    let a3x = mono("a_{-3}(X)");
    let a2x1l = mono("a_{-2}(X)a_{-1}(l)");
    let a1x2l = mono("a_{-2}(l)a_{-1}(X)");
    let sorted = |mut v: Vec<FockMonomial>| {
        v.sort();
        v
    };
    let nonzero = [
        (sorted(vec![a2x1l.clone(), a2x1l.clone(), a1x2l.clone()]), int(-24)),
        (sorted(vec![a3x.clone(), a3x.clone(), a2x1l]), int(-2) * fd),
        (sorted(vec![a3x.clone(), a3x.clone(), a1x2l]), int(-2) * fd),
        (sorted(vec![a3x.clone(), a3x.clone(), a3x]), w3),
    ];
    let b8 = basis(8)?;
    let mut out = Vec::with_capacity(35);
    for x in 0..b8.len() {
        for y in x..b8.len() {
            for z in y..b8.len() {
                let key = sorted(vec![b8[x].clone(), b8[y].clone(), b8[z].clone()]);
                let value =
                    nonzero.iter().find(|(k, _)| *k == key).map(|(_, v)| v.clone()).unwrap_or_else(Rational::zero);
                out.push(TableEntry { classes: vec![b8[x].clone(), b8[y].clone(), b8[z].clone()], value });
            }
        }
    }
    Ok(out)
}

/// Both sides of the composition-law identity that determines `w_3`.
pub fn wdvv_sides(d: u32, f: &[Rational]) -> Result<(Rational, Rational)> {
    let w3 = three_point_case_iv(d, f)?;
    let du = d as usize;
    let (single, pairs) = sum_lower(f, du);
    let k2 = int(K_SQUARED);
    let kl = int(K_DOT_LINE);
    let fd = &f[du - 1];
    let lhs = w3 + &kl * fd + int(24) * k2 + int(18) * &kl + int(2) * &kl * single;
    let rhs = int(6) * &kl * fd + pairs / int(3);
    Ok((lhs, rhs))
}

pub fn wdvv_consistency(d: u32, f: &[Rational]) -> Result<bool> {
    let (lhs, rhs) = wdvv_sides(d, f)?;
    Ok(lhs == rhs)
}

/// A printed cup-product identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupIdentity {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: FockElement,
}

fn combo(terms: &[(Rational, &str)]) -> FockElement {
    let mut e = FockElement::zero();
    for (c, m) in terms {
        e.add(c.clone(), mono(m));
    }
    e
}

/// `c_1(E_0)^2` with `a_{-2}(K_X) = -3 a_{-2}(l)`.
pub fn c1_e0_squared() -> FockElement {
    combo(&[
        (int(1), "a_{-3}(X)"),
        (int(-1), "a_{-1}(X)^2a_{-1}(x)"),
        (rat(-1, 2), "a_{-1}(X)a_{-1}(l)^2"),
        (rat(-1, 2) * int(K_DOT_LINE), "a_{-2}(l)a_{-1}(X)"),
    ])
}

/// `A = D_l . c_1(E_0)^2` in `B_6` monomials.
pub fn class_a_expansion() -> FockElement {
    combo(&[
        (int(3), "a_{-3}(l)"),
        (int(-3), "a_{-1}(X)a_{-1}(l)a_{-1}(x)"),
        (rat(-1, 2), "a_{-1}(l)^3"),
        (int(3), "a_{-2}(x)a_{-1}(X)"),
        (rat(3, 2), "a_{-2}(l)a_{-1}(l)"),
    ])
}

pub fn cup_identities() -> Vec<CupIdentity> {
    let mut c1_e1 = d_line();
    for (m, c) in b3().terms() {
        c1_e1.add(c * rat(-1, 2), m.clone());
    }
    let mut c1_e0 = FockElement::zero();
    for (m, c) in b3().terms() {
        c1_e0.add(c * rat(-1, 2), m.clone());
    }
    vec![
        CupIdentity { name: "c1(E_0)", lhs: "c_1(E_0) = -B_3/2", rhs: c1_e0 },
        CupIdentity { name: "c1(E_1)", lhs: "c_1(E_1) = D_l - B_3/2", rhs: c1_e1 },
        CupIdentity { name: "c1(E_0)^2", lhs: "c_1(E_0)^2", rhs: c1_e0_squared() },
        CupIdentity {
            name: "D_l^2",
            lhs: "D_l^2",
            rhs: combo(&[(int(1), "a_{-1}(X)a_{-1}(l)^2"), (rat(1, 2), "a_{-1}(X)^2a_{-1}(x)")]),
        },
        CupIdentity {
            name: "D_l^2 . a_{-1}(X)a_{-2}(l)",
            lhs: "D_l^2 . a_{-1}(X)a_{-2}(l)",
            rhs: combo(&[(int(1), "a_{-2}(l)a_{-1}(x)"), (int(4), "a_{-2}(x)a_{-1}(l)")]),
        },
        CupIdentity {
            name: "a_{-1}(X)^2a_{-1}(x) . a_{-1}(X)a_{-2}(l)",
            lhs: "a_{-1}(X)^2a_{-1}(x) . a_{-1}(X)a_{-2}(l)",
            rhs: combo(&[(int(2), "a_{-2}(l)a_{-1}(x)")]),
        },
        CupIdentity { name: "A", lhs: "(c_1(E_1) - c_1(E_0)) c_1(E_0)^2", rhs: class_a_expansion() },
    ]
}

/// `(c_1(E_0) . beta_3)`.
pub const C1_DOT_BETA3: i64 = 1;

/// `<A, B>_{0,d}` by bilinearity from the two-point table.
pub fn ab_from_table(d: u32, f_d: &Rational) -> Result<Rational> {
    let table = two_point_table(d, f_d)?;
    let a = class_a_expansion();
    let b = c1_e0_squared();
    let mut acc = Rational::zero();
    for entry in &table {
        let ca = a.coefficient(&entry.classes[0]);
        let cb = b.coefficient(&entry.classes[1]);
        acc += ca * cb * &entry.value;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_roundtrip() {
        for k in [2, 4, 6, 8, 10] {
            for m in basis(k).unwrap() {
                assert_eq!(m.to_string().parse::<FockMonomial>().unwrap(), m);
                assert_eq!(m.weight(), 3);
                assert_eq!(m.homology_degree(), k, "{m}");
            }
        }
        assert_eq!(mono("a_{-1}(X)a_{-2}(l)").to_string(), "a_{-2}(l)a_{-1}(X)");
        assert!("a_{-2}(l)".parse::<FockMonomial>().is_err());
        assert!("b_{-2}(l)".parse::<FockMonomial>().is_err());
    }

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = [2, 4, 6, 8, 10].iter().map(|&k| basis(k).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 5, 6, 5, 2]);
        assert!(basis(3).is_err());
        assert!(basis(12).is_err());
        assert_eq!(full_basis(12).unwrap().len(), 1);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&mono("a_{-2}(l)a_{-1}(x)"), &mono("a_{-1}(X)a_{-2}(l)")), int(-2));
        assert!(pairing(&mono("a_{-3}(X)"), &mono("a_{-2}(X)a_{-1}(l)")).is_zero());
        let p = FockElement::monomial(mono("a_{-1}(x)^3"));
        let top = full_basis(12).unwrap().remove(0);
        assert_eq!(pairing_elements(&p, &top), int(1));
    }

    #[test]
    fn dual_examples() {
        let b4 = basis(4).unwrap();
        let duals = dual_basis(4).unwrap();
        let k = b4.iter().position(|m| *m == mono("a_{-2}(l)a_{-1}(x)")).unwrap();
        assert_eq!(duals[k], FockElement::term(rat(-1, 2), mono("a_{-1}(X)a_{-2}(l)")));
        let d0 = dual_basis(0).unwrap();
        assert_eq!(d0[0], full_basis(12).unwrap()[0]);
    }

    #[test]
    fn inversion() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    #[test]
    fn one_point_values() {
        assert_eq!(one_point(&mono("a_{-2}(l)a_{-1}(x)"), 2).unwrap(), rat(-3, 2));
        assert!(one_point(&mono("a_{-3}(x)"), 5).unwrap().is_zero());
        assert!(one_point(&mono("a_{-1}(X)a_{-1}(x)^2"), 1).unwrap().is_zero());
        assert!(one_point(&mono("a_{-3}(X)"), 1).is_err());
    }

    #[test]
    fn case_iv_degree_one() {
        assert_eq!(three_point_case_iv(1, &[int(-27)]).unwrap(), int(243));
        assert!(wdvv_consistency(1, &[int(-27)]).unwrap());
        assert!(matches!(three_point_case_iv(3, &[int(1)]), Err(Error::MissingF(2))));
    }

    #[test]
    fn cup_data() {
        let ids = cup_identities();
        let sq = ids.iter().find(|c| c.name == "c1(E_0)^2").unwrap();
        assert_eq!(sq.rhs.coefficient(&mono("a_{-3}(X)")), int(1));
        assert_eq!(sq.rhs.coefficient(&mono("a_{-1}(X)a_{-2}(l)")), rat(3, 2));
        for id in &ids {
            for (m, _) in id.rhs.terms() {
                assert_eq!(m.weight(), 3);
            }
        }
    }

    #[test]
    fn a_times_b_reduces_to_three_times_invariant() {
        for (d, f) in [(1, int(-27)), (2, int(27)), (3, int(54))] {
            let inv = &f / int(d as i64);
            assert_eq!(ab_from_table(d, &f).unwrap(), int(3) * inv);
        }
    }
}
