use super::{FieldElement, FieldError, FieldSpec};

/// Dense univariate polynomial with ascending coefficients, kept normalized
/// (no trailing zeros; the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.index() == 0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(field: &FieldSpec, root: FieldElement) -> Self {
        Polynomial::new(vec![field.neg(root), field.one()])
    }

    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement(0))
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, field: &FieldSpec, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &FieldSpec, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &FieldSpec, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &FieldSpec, c: FieldElement) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &FieldSpec, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.index() == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, field: &FieldSpec, e: u32) -> Self {
        (0..e).fold(Polynomial::constant(field.one()), |acc, _| acc.mul(field, self))
    }

    /// Formal derivative.
    pub fn derivative(&self, field: &FieldSpec) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn div_rem(&self, field: &FieldSpec, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = field.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c.index() == 0 {
                continue;
            }
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(rem[k + i], field.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, field: &FieldSpec, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn monic(&self, field: &FieldSpec) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => self.scale(field, field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Multiplicity of `root` as a zero, by repeated exact division by `x - root`.
    pub fn root_multiplicity(&self, field: &FieldSpec, root: FieldElement) -> u32 {
        let mut f = self.clone();
        let mut mult = 0;
        while !f.is_zero() && f.eval(field, root).index() == 0 {
            f = f.deflate(field, root);
            mult += 1;
        }
        mult
    }

    /// Quotient of synthetic division by `x - root` (remainder discarded).
    fn deflate(&self, field: &FieldSpec, root: FieldElement) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Polynomial::zero();
        }
        let mut quot = vec![field.zero(); n - 1];
        let mut carry = field.zero();
        for k in (1..n).rev() {
            carry = field.add(self.coeffs[k], field.mul(carry, root));
            quot[k - 1] = carry;
        }
        Polynomial::new(quot)
    }

    /// Roots lying in `candidates`, with multiplicities, in candidate order.
    pub fn roots_among<I>(&self, field: &FieldSpec, candidates: I) -> Vec<(FieldElement, u32)>
    where
        I: IntoIterator<Item = FieldElement>,
    {
        candidates
            .into_iter()
            .filter(|&x| self.eval(field, x).index() == 0)
            .map(|x| (x, self.root_multiplicity(field, x)))
            .collect()
    }

    pub fn to_string(&self, field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| c.index() != 0)
            .map(|(i, &c)| {
                let cs = field.label(c);
                match i {
                    0 => cs,
                    _ => {
                        let x = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                        if c == field.one() {
                            x
                        } else {
                            format!("{cs}*{x}")
                        }
                    }
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// All roots of `f` in the ambient field, found by exhaustive scan, with exact
/// multiplicities.
pub fn poly_roots(f: &Polynomial, field: &FieldSpec) -> Result<Vec<(FieldElement, u32)>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    Ok(f.roots_among(field, field.elements()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn roots_with_multiplicity() {
        let f5 = make_field(5, 1, None).unwrap();
        let g = Polynomial::from_ints(&f5, &[-1, 0, 1]);
        assert_eq!(
            poly_roots(&g, &f5).unwrap(),
            vec![(f5.from_int(1), 1), (f5.from_int(4), 1)]
        );
        let sq = Polynomial::linear(&f5, f5.from_int(2)).pow(&f5, 2);
        assert_eq!(poly_roots(&sq, &f5).unwrap(), vec![(f5.from_int(2), 2)]);
        assert_eq!(
            poly_roots(&Polynomial::zero(), &f5).unwrap_err(),
            FieldError::ZeroPolynomial
        );
    }

    #[test]
    fn bgs_numerator_splits_over_f9_but_not_f27() {
        // x^3 + x - 1 = (x - 2)(x^2 + 2x + 2) over F_3.
        let f27 = make_field(3, 3, None).unwrap();
        let h = Polynomial::from_ints(&f27, &[-1, 1, 0, 1]);
        assert_eq!(poly_roots(&h, &f27).unwrap(), vec![(f27.from_int(2), 1)]);
        let f9 = make_field(3, 2, None).unwrap();
        let h9 = Polynomial::from_ints(&f9, &[-1, 1, 0, 1]);
        assert_eq!(poly_roots(&h9, &f9).unwrap().len(), 3);
    }

    #[test]
    fn division_and_gcd() {
        let f7 = make_field(7, 1, None).unwrap();
        let a = Polynomial::from_ints(&f7, &[1, 2, 1]); // (x+1)^2
        let b = Polynomial::from_ints(&f7, &[1, 1]);
        let (q, r) = a.div_rem(&f7, &b).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&f7, &a.derivative(&f7)), b);
        assert_eq!(
            a.div_rem(&f7, &Polynomial::zero()).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f3 = make_field(3, 1, None).unwrap();
        let h = Polynomial::from_ints(&f3, &[1, 0, 0, 1]);
        assert!(h.derivative(&f3).is_zero());
        assert_eq!(h.root_multiplicity(&f3, f3.from_int(2)), 3);
    }

    #[test]
    fn display() {
        let f5 = make_field(5, 1, None).unwrap();
        let h = Polynomial::from_ints(&f5, &[1, 0, 3, 1]);
        assert_eq!(h.to_string(&f5), "x^3 + 3*x^2 + 1");
    }
}
