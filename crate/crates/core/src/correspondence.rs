//! Correspondences on `P^1 x P^1` given by a bihomogeneous form
//! `F(X0, X1; Y0, Y1)` of bidegree `(d1, d2)`.
//!
//! Coefficients are stored in the affine chart: `coeffs[i][j]` multiplies
//! `x^i y^j`, i.e. `X0^i X1^(d1-i) Y0^j Y1^(d2-j)`. Fibers over a point are
//! binary forms, so the point at infinity needs no special treatment: its
//! multiplicity is the gap between the nominal and the actual degree.

use std::borrow::Cow;

use serde::Serialize;
use thiserror::Error;

use crate::fields::{FieldElement, FieldError, FieldSpec, Polynomial, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("rational map is constant")]
    ConstantMap,
    #[error("the form vanishes identically")]
    DegenerateCorrespondence,
    #[error("bidegree must be at least (1,1), got ({0},{1})")]
    BadBidegree(usize, usize),
    #[error("coefficient matrix does not have shape ({rows}, {cols})")]
    BadShape { rows: usize, cols: usize },
    #[error("the form has a factor in the first variable alone (vertical component)")]
    VerticalComponent,
    #[error("the form has a factor in the second variable alone (horizontal component)")]
    HorizontalComponent,
    #[error("({0}, {1}) does not lie on the correspondence")]
    NotOnCorrespondence(String, String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Binary form `sum_j a_j Z0^j Z1^(deg-j)` of nominal degree `deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    poly: Polynomial,
    deg: usize,
}

impl BinaryForm {
    pub fn new(poly: Polynomial, deg: usize) -> Self {
        debug_assert!(poly.degree().map_or(true, |k| k <= deg));
        BinaryForm { poly, deg }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The dehomogenized polynomial in `z = Z0/Z1`.
    pub fn affine(&self) -> &Polynomial {
        &self.poly
    }

    pub fn nominal_degree(&self) -> usize {
        self.deg
    }

    fn infinity_multiplicity(&self) -> u32 {
        (self.deg - self.poly.degree().unwrap_or(0)) as u32
    }

    pub fn multiplicity_at(&self, field: &FieldSpec, pt: ProjPoint) -> u32 {
        match pt {
            ProjPoint::Affine(z) => self.poly.root_multiplicity(field, z),
            ProjPoint::Infinity => self.infinity_multiplicity(),
        }
    }

    pub fn eval(&self, field: &FieldSpec, pt: ProjPoint) -> FieldElement {
        match pt {
            ProjPoint::Affine(z) => self.poly.eval(field, z),
            ProjPoint::Infinity => self.poly.coeff(self.deg),
        }
    }

    /// Zeros among `candidates` (finite points) plus infinity, with multiplicities.
    pub fn roots_among(&self, field: &FieldSpec, candidates: &[FieldElement]) -> Vec<(ProjPoint, u32)> {
        let mut out: Vec<(ProjPoint, u32)> = self
            .poly
            .roots_among(field, candidates.iter().copied())
            .into_iter()
            .map(|(z, m)| (ProjPoint::Affine(z), m))
            .collect();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            out.push((ProjPoint::Infinity, inf));
        }
        out
    }

    /// All zeros in `P^1` of the ambient field.
    pub fn roots(&self, field: &FieldSpec) -> Vec<(ProjPoint, u32)> {
        let all: Vec<FieldElement> = field.elements().collect();
        self.roots_among(field, &all)
    }

    /// No repeated geometric root (including at infinity).
    pub fn is_squarefree(&self, field: &FieldSpec) -> bool {
        if self.poly.is_zero() || self.infinity_multiplicity() > 1 {
            return false;
        }
        self.poly.gcd(field, &self.poly.derivative(field)).degree() == Some(0)
    }
}

/// `num / den` with coprime numerator and monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    pub fn new(field: &FieldSpec, num: Polynomial, den: Polynomial) -> Result<Self, CorrespondenceError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        let g = num.gcd(field, &den);
        let (num, _) = num.div_rem(field, &g)?;
        let (den, _) = den.div_rem(field, &g)?;
        let lc = field.inv(den.leading().expect("nonzero denominator"))?;
        let map = RationalMap {
            num: num.scale(field, lc),
            den: den.scale(field, lc),
        };
        if map.degree() == 0 {
            return Err(CorrespondenceError::ConstantMap);
        }
        Ok(map)
    }

    pub fn from_ints(field: &FieldSpec, num: &[i64], den: &[i64]) -> Result<Self, CorrespondenceError> {
        RationalMap::new(
            field,
            Polynomial::from_ints(field, num),
            Polynomial::from_ints(field, den),
        )
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    fn homogeneous(&self, field: &FieldSpec, poly: &Polynomial, pt: ProjPoint) -> FieldElement {
        match pt {
            ProjPoint::Affine(x) => poly.eval(field, x),
            ProjPoint::Infinity => poly.coeff(self.degree()),
        }
    }

    pub fn eval(&self, field: &FieldSpec, pt: ProjPoint) -> ProjPoint {
        let n = self.homogeneous(field, &self.num, pt);
        let d = self.homogeneous(field, &self.den, pt);
        ProjPoint::from_coords(field, n, d).expect("coprime numerator and denominator")
    }

    /// The fiber `h = c` as a binary form of degree `deg h`.
    pub fn fiber(&self, field: &FieldSpec, value: ProjPoint) -> BinaryForm {
        let (c0, c1) = value.coords(field);
        let poly = self.num.scale(field, c1).sub(field, &self.den.scale(field, c0));
        BinaryForm::new(poly, self.degree())
    }

    /// `tau o self o sigma` with `sigma(x) = a x + b`, `tau(y) = c y + e`.
    pub fn conjugate_affine(
        &self,
        field: &FieldSpec,
        (a, b): (FieldElement, FieldElement),
        (c, e): (FieldElement, FieldElement),
    ) -> Result<Self, CorrespondenceError> {
        let sigma = Polynomial::new(vec![b, a]);
        let subst = |p: &Polynomial| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Polynomial::zero(), |acc, &k| {
                    acc.mul(field, &sigma).add(field, &Polynomial::constant(k))
                })
        };
        let n = subst(&self.num);
        let d = subst(&self.den);
        RationalMap::new(field, n.scale(field, c).add(field, &d.scale(field, e)), d)
    }

    /// Canonical ordering key: packed coefficient indices of numerator and denominator.
    pub fn key(&self) -> (Vec<u32>, Vec<u32>) {
        (
            self.num.coeffs().iter().map(|c| c.index()).collect(),
            self.den.coeffs().iter().map(|c| c.index()).collect(),
        )
    }

    pub fn to_string(&self, field: &FieldSpec) -> String {
        format!("({})/({})", self.num.to_string(field), self.den.to_string(field))
    }
}

/// Points `P` where the fiber of `h` through `P` is ramified, with index
/// `e = mult_P(h - h(P)) >= 2`.
pub fn ramification_points(h: &RationalMap, ambient: &FieldSpec) -> Vec<(ProjPoint, u32)> {
    let mut out: Vec<(ProjPoint, u32)> = ambient
        .elements()
        .map(ProjPoint::Affine)
        .chain(std::iter::once(ProjPoint::Infinity))
        .filter_map(|pt| {
            let e = h.fiber(ambient, h.eval(ambient, pt)).multiplicity_at(ambient, pt);
            (e >= 2).then_some((pt, e))
        })
        .collect();
    out.sort();
    out
}

/// Ramification of the two projections at a point of the correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeFlags {
    /// `Q` is a simple root of the fiber `F(P; .)`.
    pub etale_pi1: bool,
    /// `P` is a simple root of the fiber `F(.; Q)`.
    pub etale_pi2: bool,
}

impl EdgeFlags {
    pub fn is_etale(self) -> bool {
        self.etale_pi1 && self.etale_pi2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reducedness {
    Reduced,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    field: FieldSpec,
    coeffs: Vec<Vec<FieldElement>>,
    d1: usize,
    d2: usize,
}

fn pow(field: &FieldSpec, x: FieldElement, e: usize) -> FieldElement {
    field.pow(x, e as u64)
}

fn gcd_all<'a>(field: &FieldSpec, polys: impl Iterator<Item = &'a Polynomial>) -> Polynomial {
    polys.fold(Polynomial::zero(), |acc, p| acc.gcd(field, p))
}

impl Correspondence {
    /// Validates a coefficient matrix of shape `(d1+1) x (d2+1)`.
    pub fn new(
        field: &FieldSpec,
        coeffs: Vec<Vec<FieldElement>>,
        d1: usize,
        d2: usize,
    ) -> Result<Self, CorrespondenceError> {
        if d1 == 0 || d2 == 0 {
            return Err(CorrespondenceError::BadBidegree(d1, d2));
        }
        if coeffs.len() != d1 + 1 || coeffs.iter().any(|row| row.len() != d2 + 1) {
            return Err(CorrespondenceError::BadShape {
                rows: d1 + 1,
                cols: d2 + 1,
            });
        }
        let zero = field.zero();
        if coeffs.iter().flatten().all(|&c| c == zero) {
            return Err(CorrespondenceError::DegenerateCorrespondence);
        }
        let corr = Correspondence {
            field: field.clone(),
            coeffs,
            d1,
            d2,
        };
        // A factor in X alone divides every column polynomial, or kills the x^d1 row
        // when it vanishes at infinity.
        let cols: Vec<Polynomial> = (0..=d2).map(|j| corr.column(j)).collect();
        if corr.coeffs[d1].iter().all(|&c| c == zero)
            || gcd_all(field, cols.iter()).degree().unwrap_or(0) > 0
        {
            return Err(CorrespondenceError::VerticalComponent);
        }
        let rows: Vec<Polynomial> = (0..=d1).map(|i| corr.row(i)).collect();
        if corr.coeffs.iter().all(|row| row[d2] == zero)
            || gcd_all(field, rows.iter()).degree().unwrap_or(0) > 0
        {
            return Err(CorrespondenceError::HorizontalComponent);
        }
        Ok(corr)
    }

    /// `num_f(x) den_g(y) - den_f(x) num_g(y)`, of bidegree `(deg f, deg g)`.
    pub fn from_separated(
        field: &FieldSpec,
        f: &RationalMap,
        g: &RationalMap,
    ) -> Result<Self, CorrespondenceError> {
        let (d1, d2) = (f.degree(), g.degree());
        let coeffs = (0..=d1)
            .map(|i| {
                (0..=d2)
                    .map(|j| {
                        field.sub(
                            field.mul(f.num.coeff(i), g.den.coeff(j)),
                            field.mul(f.den.coeff(i), g.num.coeff(j)),
                        )
                    })
                    .collect()
            })
            .collect();
        Correspondence::new(field, coeffs, d1, d2)
    }

    /// `y = x`.
    pub fn diagonal(field: &FieldSpec) -> Self {
        let one = field.one();
        let coeffs = vec![vec![field.zero(), field.neg(one)], vec![one, field.zero()]];
        Correspondence::new(field, coeffs, 1, 1).expect("diagonal is a valid correspondence")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn coeffs(&self) -> &[Vec<FieldElement>] {
        &self.coeffs
    }

    fn column(&self, j: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|row| row[j]).collect())
    }

    fn row(&self, i: usize) -> Polynomial {
        Polynomial::new(self.coeffs[i].clone())
    }

    /// The same form over a larger field.
    pub fn embed(&self, ambient: &FieldSpec) -> Result<Correspondence, CorrespondenceError> {
        let e = ambient.embedding(&self.field)?;
        Ok(Correspondence {
            field: ambient.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|&c| e.apply(c)).collect())
                .collect(),
            d1: self.d1,
            d2: self.d2,
        })
    }

    /// `self` when already over `ambient`, else its embedding.
    pub fn over(&self, ambient: &FieldSpec) -> Result<Cow<'_, Correspondence>, CorrespondenceError> {
        if &self.field == ambient {
            Ok(Cow::Borrowed(self))
        } else {
            self.embed(ambient).map(Cow::Owned)
        }
    }

    /// `F(P; Q)` at the normalized representatives.
    pub fn eval(&self, p: ProjPoint, q: ProjPoint) -> FieldElement {
        self.fiber_over(p).eval(&self.field, q)
    }

    /// `F(P; Y0, Y1)`, a form of degree `d2`.
    pub fn fiber_over(&self, p: ProjPoint) -> BinaryForm {
        let f = &self.field;
        let (x0, x1) = p.coords(f);
        let weights: Vec<FieldElement> = (0..=self.d1)
            .map(|i| f.mul(pow(f, x0, i), pow(f, x1, self.d1 - i)))
            .collect();
        let poly = (0..=self.d2)
            .map(|j| {
                (0..=self.d1).fold(f.zero(), |acc, i| {
                    f.add(acc, f.mul(weights[i], self.coeffs[i][j]))
                })
            })
            .collect();
        BinaryForm::new(Polynomial::new(poly), self.d2)
    }

    /// `F(X0, X1; Q)`, a form of degree `d1`.
    pub fn fiber_under(&self, q: ProjPoint) -> BinaryForm {
        let f = &self.field;
        let (y0, y1) = q.coords(f);
        let weights: Vec<FieldElement> = (0..=self.d2)
            .map(|j| f.mul(pow(f, y0, j), pow(f, y1, self.d2 - j)))
            .collect();
        let poly = (0..=self.d1)
            .map(|i| {
                (0..=self.d2).fold(f.zero(), |acc, j| {
                    f.add(acc, f.mul(weights[j], self.coeffs[i][j]))
                })
            })
            .collect();
        BinaryForm::new(Polynomial::new(poly), self.d1)
    }

    /// Chart-local partial derivatives `(dF/ds, dF/dt)` at `(P, Q)`, where `s`
    /// (resp. `t`) is `X0` on the chart `X1 = 1` and `X1` on the chart `X0 = 1`
    /// containing `P` (resp. `Q`).
    pub fn local_partials(&self, p: ProjPoint, q: ProjPoint) -> (FieldElement, FieldElement) {
        let f = &self.field;
        let (x0, x1) = p.coords(f);
        let (y0, y1) = q.coords(f);
        let int = |k: usize| f.from_int(k as i64);
        let mut a = f.zero();
        let mut b = f.zero();
        for i in 0..=self.d1 {
            for j in 0..=self.d2 {
                let c = self.coeffs[i][j];
                if c == f.zero() {
                    continue;
                }
                let ymon = f.mul(pow(f, y0, j), pow(f, y1, self.d2 - j));
                let xmon = f.mul(pow(f, x0, i), pow(f, x1, self.d1 - i));
                let dx = match p {
                    ProjPoint::Affine(_) if i >= 1 => f.mul(
                        int(i),
                        f.mul(pow(f, x0, i - 1), pow(f, x1, self.d1 - i)),
                    ),
                    ProjPoint::Infinity if i < self.d1 => f.mul(
                        int(self.d1 - i),
                        f.mul(pow(f, x0, i), pow(f, x1, self.d1 - i - 1)),
                    ),
                    _ => f.zero(),
                };
                let dy = match q {
                    ProjPoint::Affine(_) if j >= 1 => f.mul(
                        int(j),
                        f.mul(pow(f, y0, j - 1), pow(f, y1, self.d2 - j)),
                    ),
                    ProjPoint::Infinity if j < self.d2 => f.mul(
                        int(self.d2 - j),
                        f.mul(pow(f, y0, j), pow(f, y1, self.d2 - j - 1)),
                    ),
                    _ => f.zero(),
                };
                a = f.add(a, f.mul(c, f.mul(dx, ymon)));
                b = f.add(b, f.mul(c, f.mul(xmon, dy)));
            }
        }
        (a, b)
    }

    pub fn arithmetic_genus(&self) -> i64 {
        (self.d1 as i64 - 1) * (self.d2 as i64 - 1)
    }

    pub fn self_intersection(&self) -> i64 {
        2 * self.d1 as i64 * self.d2 as i64
    }

    /// A squarefree fiber over some sampled point certifies that no squared factor
    /// divides `F`. Samples the first `min(2 d1 d2 + 1, q + 1)` points of `P^1`
    /// over the coefficient field.
    pub fn reducedness(&self) -> Reducedness {
        let budget = 2 * self.d1 * self.d2 + 1;
        let pts = self
            .field
            .elements()
            .map(ProjPoint::Affine)
            .chain(std::iter::once(ProjPoint::Infinity))
            .take(budget);
        for p in pts {
            if self.fiber_over(p).is_squarefree(&self.field) {
                return Reducedness::Reduced;
            }
        }
        Reducedness::Inconclusive
    }

    /// Affine equation as text, e.g. `x^2*y^2 + 3*x + ...`.
    pub fn to_string(&self) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for i in (0..=self.d1).rev() {
            for j in (0..=self.d2).rev() {
                let c = self.coeffs[i][j];
                if c == f.zero() {
                    continue;
                }
                let mut parts = Vec::new();
                if c != f.one() || (i == 0 && j == 0) {
                    parts.push(f.label(c));
                }
                match i {
                    0 => {}
                    1 => parts.push("x".into()),
                    _ => parts.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("y".into()),
                    _ => parts.push(format!("y^{j}")),
                }
                terms.push(parts.join("*"));
            }
        }
        terms.join(" + ")
    }
}

/// Distinct points `Q` of `P^1(ambient)` with `(P, Q)` on the correspondence.
pub fn out_neighbors(
    corr: &Correspondence,
    p: ProjPoint,
    ambient: &FieldSpec,
) -> Result<Vec<(ProjPoint, u32)>, CorrespondenceError> {
    let c = corr.over(ambient)?;
    Ok(c.fiber_over(p).roots(ambient))
}

/// Distinct points `P` of `P^1(ambient)` with `(P, Q)` on the correspondence.
pub fn in_neighbors(
    corr: &Correspondence,
    q: ProjPoint,
    ambient: &FieldSpec,
) -> Result<Vec<(ProjPoint, u32)>, CorrespondenceError> {
    let c = corr.over(ambient)?;
    Ok(c.fiber_under(q).roots(ambient))
}

pub fn edge_flags(
    corr: &Correspondence,
    p: ProjPoint,
    q: ProjPoint,
    ambient: &FieldSpec,
) -> Result<EdgeFlags, CorrespondenceError> {
    let c = corr.over(ambient)?;
    flags_local(&c, p, q)
}

pub(crate) fn flags_local(
    c: &Correspondence,
    p: ProjPoint,
    q: ProjPoint,
) -> Result<EdgeFlags, CorrespondenceError> {
    let f = c.field();
    if c.eval(p, q) != f.zero() {
        return Err(CorrespondenceError::NotOnCorrespondence(p.label(f), q.label(f)));
    }
    Ok(EdgeFlags {
        etale_pi1: c.fiber_over(p).multiplicity_at(f, q) == 1,
        etale_pi2: c.fiber_under(q).multiplicity_at(f, p) == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn aff(f: &FieldSpec, v: i64) -> ProjPoint {
        ProjPoint::Affine(f.from_int(v))
    }

    fn f5_tower(field: &FieldSpec) -> Correspondence {
        let f = RationalMap::from_ints(field, &[1, 0, 1], &[0, 2]).unwrap();
        let g = RationalMap::from_ints(field, &[0, 0, 1], &[1]).unwrap();
        Correspondence::from_separated(field, &f, &g).unwrap()
    }

    fn bgs(field: &FieldSpec) -> (RationalMap, RationalMap, Correspondence) {
        let f = RationalMap::from_ints(field, &[-1, 1, 0, 1], &[0, 1]).unwrap();
        let g = RationalMap::from_ints(field, &[1, -1], &[0, 0, 0, 1]).unwrap();
        let c = Correspondence::from_separated(field, &f, &g).unwrap();
        (f, g, c)
    }

    #[test]
    fn separated_form_of_the_f5_tower() {
        let f5 = make_field(5, 1, None).unwrap();
        let c = f5_tower(&f5);
        assert_eq!(c.bidegree(), (2, 2));
        // den f = x/2 after normalization, so F = (x^2+1)/2 - x y^2 = 3x^2 + 3 - x y^2,
        // a scalar multiple of (x^2 + 1) - 2 x y^2.
        let s = f5.from_int(3);
        let expected = [[1, 0, 0], [0, 0, -2], [1, 0, 0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.coeffs()[i][j], f5.mul(s, f5.from_int(expected[i][j])));
            }
        }
        assert_eq!(c.arithmetic_genus(), 1);
        assert_eq!(c.self_intersection(), 8);
        assert_eq!(c.reducedness(), Reducedness::Reduced);
    }

    #[test]
    fn neighbors_in_the_f5_tower() {
        let f5 = make_field(5, 1, None).unwrap();
        let c = f5_tower(&f5);
        assert_eq!(
            out_neighbors(&c, aff(&f5, 1), &f5).unwrap(),
            vec![(aff(&f5, 1), 1), (aff(&f5, 4), 1)]
        );
        assert_eq!(
            in_neighbors(&c, aff(&f5, 0), &f5).unwrap(),
            vec![(aff(&f5, 2), 1), (aff(&f5, 3), 1)]
        );
        let fl = edge_flags(&c, aff(&f5, 2), aff(&f5, 0), &f5).unwrap();
        assert_eq!(
            fl,
            EdgeFlags {
                etale_pi1: false,
                etale_pi2: true
            }
        );
        assert!(matches!(
            edge_flags(&c, aff(&f5, 2), aff(&f5, 1), &f5),
            Err(CorrespondenceError::NotOnCorrespondence(..))
        ));
    }

    #[test]
    fn bgs_fibers() {
        let f3 = make_field(3, 1, None).unwrap();
        let (f, g, c) = bgs(&f3);
        assert_eq!(c.bidegree(), (3, 3));
        assert_eq!(c.arithmetic_genus(), 4);
        assert_eq!(c.self_intersection(), 18);
        assert_eq!(out_neighbors(&c, aff(&f3, 0), &f3).unwrap(), vec![(aff(&f3, 0), 3)]);
        assert_eq!(
            in_neighbors(&c, aff(&f3, 0), &f3).unwrap(),
            vec![(aff(&f3, 0), 1), (ProjPoint::Infinity, 2)]
        );
        // Over F_27 the fiber above 1 is {y : y^3 + y - 1 = 0}: 2 plus two points of degree 2,
        // so only one of them is visible there.
        let f27 = make_field(3, 3, None).unwrap();
        assert_eq!(out_neighbors(&c, aff(&f27, 1), &f27).unwrap(), vec![(aff(&f27, 2), 1)]);
        let f9 = make_field(3, 2, None).unwrap();
        let over1 = out_neighbors(&c, aff(&f9, 1), &f9).unwrap();
        assert_eq!(over1.len(), 3);
        for (q, m) in over1 {
            assert_eq!(m, 1);
            let fl = edge_flags(&c, aff(&f9, 1), q, &f9).unwrap();
            assert!(!fl.etale_pi2 && fl.etale_pi1);
        }
        assert_eq!(
            ramification_points(&f, &f27),
            vec![(aff(&f27, 1), 3), (ProjPoint::Infinity, 2)]
        );
        assert_eq!(
            ramification_points(&g, &f27),
            vec![(aff(&f27, 0), 3), (ProjPoint::Infinity, 2)]
        );
    }

    #[test]
    fn diagonal() {
        let f7 = make_field(7, 1, None).unwrap();
        let d = Correspondence::diagonal(&f7);
        assert_eq!(d.arithmetic_genus(), 0);
        assert_eq!(d.self_intersection(), 2);
        for v in 0..7 {
            assert_eq!(in_neighbors(&d, aff(&f7, v), &f7).unwrap(), vec![(aff(&f7, v), 1)]);
            assert!(edge_flags(&d, aff(&f7, v), aff(&f7, v), &f7).unwrap().is_etale());
        }
        assert_eq!(
            out_neighbors(&d, ProjPoint::Infinity, &f7).unwrap(),
            vec![(ProjPoint::Infinity, 1)]
        );
        let x = RationalMap::from_ints(&f7, &[0, 1], &[1]).unwrap();
        assert_eq!(Correspondence::from_separated(&f7, &x, &x).unwrap(), d);
    }

    #[test]
    fn ramification_of_the_f5_maps() {
        let f25 = make_field(5, 2, None).unwrap();
        let f = RationalMap::from_ints(&f25, &[1, 0, 1], &[0, 2]).unwrap();
        let g = RationalMap::from_ints(&f25, &[0, 0, 1], &[1]).unwrap();
        assert_eq!(
            ramification_points(&f, &f25),
            vec![(aff(&f25, 1), 2), (aff(&f25, 4), 2)]
        );
        assert_eq!(
            ramification_points(&g, &f25),
            vec![(aff(&f25, 0), 2), (ProjPoint::Infinity, 2)]
        );
    }

    #[test]
    fn invalid_forms() {
        let f5 = make_field(5, 1, None).unwrap();
        let z = f5.zero();
        let o = f5.one();
        assert_eq!(
            RationalMap::from_ints(&f5, &[2, 4], &[1, 2]).unwrap_err(),
            CorrespondenceError::ConstantMap
        );
        assert_eq!(
            Correspondence::new(&f5, vec![vec![z, z], vec![z, z]], 1, 1).unwrap_err(),
            CorrespondenceError::DegenerateCorrespondence
        );
        // x * (y - 1): vertical line x = 0
        assert_eq!(
            Correspondence::new(&f5, vec![vec![z, z], vec![f5.neg(o), o]], 1, 1).unwrap_err(),
            CorrespondenceError::VerticalComponent
        );
        // (y - 1)(x - y): horizontal line y = 1
        let m = f5.neg(o);
        assert_eq!(
            Correspondence::new(&f5, vec![vec![z, o, m], vec![m, o, z]], 1, 2).unwrap_err(),
            CorrespondenceError::HorizontalComponent
        );
    }

    #[test]
    fn conjugation_by_affine_maps() {
        let f5 = make_field(5, 1, None).unwrap();
        let g = RationalMap::from_ints(&f5, &[0, 0, 1], &[1]).unwrap();
        // (y + 1)^2 * 2 + 3
        let h = g
            .conjugate_affine(&f5, (f5.one(), f5.one()), (f5.from_int(2), f5.from_int(3)))
            .unwrap();
        assert_eq!(h, RationalMap::from_ints(&f5, &[0, 4, 2], &[1]).unwrap());
    }
}
