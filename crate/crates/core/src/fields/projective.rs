use std::fmt;

use serde::{Serialize, Serializer};

use super::{FieldElement, FieldError, FieldSpec};

/// A point of `P^1` over the ambient field, normalized to `(x : 1)` or `(1 : 0)`.
///
/// The derived order puts finite points first, by packed index, and the point at
/// infinity last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Affine(FieldElement),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(self) -> Option<FieldElement> {
        match self {
            ProjPoint::Affine(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    /// Homogeneous coordinates `(x0, x1)`.
    pub fn coords(self, field: &FieldSpec) -> (FieldElement, FieldElement) {
        match self {
            ProjPoint::Affine(x) => (x, field.one()),
            ProjPoint::Infinity => (field.one(), field.zero()),
        }
    }

    /// Normalizes `(x0 : x1)`; `None` for `(0 : 0)`.
    pub fn from_coords(field: &FieldSpec, x0: FieldElement, x1: FieldElement) -> Option<Self> {
        if x1 == field.zero() {
            (x0 != field.zero()).then_some(ProjPoint::Infinity)
        } else {
            Some(ProjPoint::Affine(field.div(x0, x1).ok()?))
        }
    }

    pub fn label(self, field: &FieldSpec) -> String {
        match self {
            ProjPoint::Affine(x) => field.label(x),
            ProjPoint::Infinity => "inf".to_string(),
        }
    }

    /// Degree over `F_q` of the residue field of the point (1 at infinity).
    pub fn degree(self, field: &FieldSpec, q: u64) -> Result<u32, FieldError> {
        match self {
            ProjPoint::Affine(x) => field.element_degree(x, q),
            ProjPoint::Infinity => field.subfield_degree(q).map(|_| 1),
        }
    }
}

/// A point paired with its field, for display and serialization.
pub struct Labelled<'a>(pub ProjPoint, pub &'a FieldSpec);

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label(self.1))
    }
}

impl Serialize for Labelled<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.label(self.1))
    }
}

impl FieldSpec {
    /// Elements of the subfield of order `q^r`, in canonical order.
    pub fn subfield_elements(&self, q: u64, r: u32) -> Result<Vec<FieldElement>, FieldError> {
        let s = self.subfield_degree(q)?;
        let q_r = q.checked_pow(r).ok_or(FieldError::InvalidSubfield {
            q,
            order: self.order(),
        })?;
        if r == 0 || self.m() % (s * r) != 0 {
            return Err(FieldError::InvalidSubfield {
                q: q_r,
                order: self.order(),
            });
        }
        if q_r == self.order() {
            return Ok(self.elements().collect());
        }
        Ok(self.elements().filter(|&x| self.in_subfield(x, q_r)).collect())
    }

    /// Embeds a field with the same characteristic and dividing degree.
    pub fn embedding(&self, base: &FieldSpec) -> Result<Embedding, FieldError> {
        let invalid = FieldError::InvalidSubfield {
            q: base.order(),
            order: self.order(),
        };
        if base.p() != self.p() || self.m() % base.m() != 0 {
            return Err(invalid);
        }
        let image_of_t = if base.m() == 1 {
            self.zero()
        } else {
            let modulus: Vec<i64> = base.modulus().iter().map(|&c| c as i64).collect();
            let f = super::Polynomial::from_ints(self, &modulus);
            self.elements()
                .find(|&x| f.eval(self, x) == self.zero())
                .ok_or(invalid)?
        };
        let images = base
            .elements()
            .map(|x| {
                base.coeffs(x)
                    .iter()
                    .rev()
                    .fold(self.zero(), |acc, &c| {
                        self.add(self.mul(acc, image_of_t), self.from_int(c as i64))
                    })
            })
            .collect();
        Ok(Embedding {
            base: base.clone(),
            target: self.clone(),
            images,
        })
    }
}

/// Field homomorphism from a subfield into the ambient field.
#[derive(Debug, Clone)]
pub struct Embedding {
    base: FieldSpec,
    target: FieldSpec,
    images: Vec<FieldElement>,
}

impl Embedding {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        self.images[x.index() as usize]
    }
}

/// The `q^r + 1` points of `P^1(F_{q^r})` inside the ambient field, infinity last.
pub fn enumerate_projective_line(
    field: &FieldSpec,
    q: u64,
    r: u32,
) -> Result<Vec<ProjPoint>, FieldError> {
    let mut pts: Vec<ProjPoint> = field
        .subfield_elements(q, r)?
        .into_iter()
        .map(ProjPoint::Affine)
        .collect();
    pts.push(ProjPoint::Infinity);
    Ok(pts)
}
