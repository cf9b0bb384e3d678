#![allow(dead_code)]

use std::path::PathBuf;

use towerlab::correspondence::{Correspondence, RationalMap};
use towerlab::fields::{make_field, FieldSpec, ProjPoint};

pub fn field(p: u64, m: u32) -> FieldSpec {
    make_field(p, m, None).unwrap()
}

/// (x^2 + 1) / (2x) = y^2 over F_5.
pub fn f5_maps() -> (FieldSpec, RationalMap, RationalMap) {
    let f = field(5, 1);
    let a = RationalMap::from_ints(&f, &[1, 0, 1], &[0, 2]).unwrap();
    let b = RationalMap::from_ints(&f, &[0, 0, 1], &[1]).unwrap();
    (f, a, b)
}

pub fn f5_tower() -> Correspondence {
    let (f, a, b) = f5_maps();
    Correspondence::from_separated(&f, &a, &b).unwrap()
}

/// (x^3 + x - 1) / x = (1 - y) / y^3 over F_3.
pub fn bgs_maps() -> (FieldSpec, RationalMap, RationalMap) {
    let f = field(3, 1);
    let a = RationalMap::from_ints(&f, &[-1, 1, 0, 1], &[0, 1]).unwrap();
    let b = RationalMap::from_ints(&f, &[1, -1], &[0, 0, 0, 1]).unwrap();
    (f, a, b)
}

pub fn bgs() -> Correspondence {
    let (f, a, b) = bgs_maps();
    Correspondence::from_separated(&f, &a, &b).unwrap()
}

pub fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn point(f: &FieldSpec, v: i64) -> ProjPoint {
    if v < 0 {
        ProjPoint::Infinity
    } else {
        ProjPoint::Affine(f.from_int(v))
    }
}
