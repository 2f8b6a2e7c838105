//! Built-in example maps and seeded families used by the test suites.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::document::MapDocument;
use super::text::parse_map;
use crate::error::{Error, Result};
use crate::polycore::Monomial;
use crate::{rng, Poly, PolyMap, Rational};

const PINCHUK: &str = include_str!("../../data/pinchuk.map");

/// Properties an example is known to have.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mfs_observed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub keller: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yagzhev: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub druzkowski: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// Known from the literature, not computed here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sag_external: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub document: MapDocument,
    pub expected: Expected,
}

struct Spec {
    id: &'static str,
    description: &'static str,
    text: &'static str,
    expected: Expected,
}

fn specs() -> Vec<Spec> {
    let e = Expected::default;
    vec![
        Spec {
            id: "identity2",
            description: "identity of the plane",
            text: "vars x y\npoly f1 = x\npoly f2 = y\n",
            expected: Expected {
                dex: Some(1),
                mfs_observed: Some(1),
                keller: Some(true),
                yagzhev: Some(true),
                druzkowski: Some(true),
                degree: Some(1),
                ..e()
            },
        },
        Spec {
            id: "x3y",
            description: "cube in the first coordinate",
            text: "vars x y\npoly f1 = x^3\npoly f2 = y\n",
            expected: Expected {
                dex: Some(3),
                mfs_observed: Some(1),
                keller: Some(false),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "fold3",
            description: "three real preimages over the origin",
            text: "vars x y\npoly f1 = x^3 - 3*x\npoly f2 = y\n",
            expected: Expected {
                dex: Some(3),
                mfs_observed: Some(3),
                keller: Some(false),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "druzkowski-toy",
            description: "cubic linear map X + (AX)^3 with A = [[0,0],[1,1]]",
            text: "vars u v\npoly f1 = u\npoly f2 = v + (u + v)^3\n",
            expected: Expected {
                keller: Some(false),
                yagzhev: Some(true),
                druzkowski: Some(true),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "triangular",
            description: "triangular Keller map",
            text: "vars x y\npoly f1 = x + y^3\npoly f2 = y\n",
            expected: Expected {
                dex: Some(1),
                mfs_observed: Some(1),
                keller: Some(true),
                yagzhev: Some(true),
                druzkowski: Some(true),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "quartic-shear",
            description: "Keller map of degree four",
            text: "vars x y\npoly f1 = x + y^4 + y^2\npoly f2 = y\n",
            expected: Expected {
                dex: Some(1),
                mfs_observed: Some(1),
                keller: Some(true),
                degree: Some(4),
                ..e()
            },
        },
        Spec {
            id: "triangular3",
            description: "Keller map in three variables",
            text: "vars x y z\npoly f1 = x + y^2\npoly f2 = y + z^3\npoly f3 = z\n",
            expected: Expected {
                keller: Some(true),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "yagzhev3",
            description: "cubic homogeneous Keller map in three variables",
            text: "vars x y z\npoly f1 = x + y^2*z\npoly f2 = y + z^3\npoly f3 = z\n",
            expected: Expected {
                keller: Some(true),
                yagzhev: Some(true),
                druzkowski: Some(false),
                degree: Some(3),
                ..e()
            },
        },
        Spec {
            id: "mixed3",
            description: "nondegenerate map with a nonconstant Jacobian determinant",
            text: "vars x y z\npoly f1 = x^2 + y\npoly f2 = y + x*z\npoly f3 = z - y^2\n",
            expected: Expected {
                keller: Some(false),
                degree: Some(2),
                ..e()
            },
        },
        Spec {
            id: "chain4",
            description: "Keller map in four variables",
            text: "vars x1 x2 x3 x4\npoly f1 = x1 + x2^2\npoly f2 = x2 + x3^2\npoly f3 = x3 + x4^2\npoly f4 = x4\n",
            expected: Expected {
                keller: Some(true),
                degree: Some(2),
                ..e()
            },
        },
        Spec {
            id: "pinchuk",
            description: "Pinchuk's nonsingular, non-injective map of degree 25",
            text: PINCHUK,
            expected: Expected {
                dex: Some(6),
                mfs_observed: Some(2),
                keller: Some(false),
                degree: Some(25),
                sag_external: Some(1),
                ..e()
            },
        },
    ]
}

fn entry(s: Spec) -> ExampleEntry {
    let document = parse_map(s.text).unwrap_or_else(|e| panic!("built-in example `{}`: {e}", s.id));
    ExampleEntry {
        id: s.id,
        description: s.description,
        document,
        expected: s.expected,
    }
}

pub fn example_ids() -> Vec<&'static str> {
    specs().iter().map(|s| s.id).collect()
}

pub fn builtin_examples() -> Vec<ExampleEntry> {
    specs().into_iter().map(entry).collect()
}

pub fn builtin_example(id: &str) -> Result<ExampleEntry> {
    specs()
        .into_iter()
        .find(|s| s.id == id)
        .map(entry)
        .ok_or_else(|| Error::UnknownExample(id.to_string()))
}

/// Random polynomial with up to `max_terms` terms of degree at most
/// `max_degree` and small rational coefficients.
pub fn random_poly<R: Rng>(r: &mut R, nvars: usize, max_degree: u32, max_terms: usize) -> Poly {
    let count = r.gen_range(0..=max_terms);
    let mut p = Poly::zero(nvars);
    for _ in 0..count {
        let degree = r.gen_range(0..=max_degree);
        let exps = random_exponents(r, nvars, degree);
        let c = rng::small_rational(r, 20, 6);
        p.add_term(Monomial::from_exponents(&exps), c);
    }
    p
}

/// Exponent vector of total degree `degree`.
fn random_exponents<R: Rng>(r: &mut R, nvars: usize, degree: u32) -> Vec<u32> {
    let mut exps = vec![0u32; nvars];
    if nvars > 0 {
        for _ in 0..degree {
            exps[r.gen_range(0..nvars)] += 1;
        }
    }
    exps
}

fn nonzero_coeff<R: Rng>(r: &mut R) -> Rational {
    loop {
        let c = rng::small_rational(r, 5, 3);
        if c != Rational::from_integer(0.into()) {
            return c;
        }
    }
}

/// `X` plus random terms of degrees `2..=degree`, with a term of degree
/// `degree` in the first component.
pub fn random_map(n: usize, degree: u32, seed: u64) -> PolyMap {
    let mut r = rng::stream(seed, (n as u64) << 8 | degree as u64);
    let comps = (0..n)
        .map(|i| {
            let mut p = Poly::var(n, i);
            let terms = r.gen_range(1..=3);
            for k in 0..terms {
                let d = if i == 0 && k == 0 { degree } else { r.gen_range(2..=degree) };
                let exps = random_exponents(&mut r, n, d);
                p.add_term(Monomial::from_exponents(&exps), nonzero_coeff(&mut r));
            }
            p
        })
        .collect();
    PolyMap::square(comps).expect("square")
}

/// `X + H` with `H` random cubic homogeneous.
pub fn random_yagzhev(n: usize, seed: u64) -> PolyMap {
    let mut r = rng::stream(seed ^ 0x7961_677a, n as u64);
    let comps = (0..n)
        .map(|i| {
            let mut p = Poly::var(n, i);
            for _ in 0..r.gen_range(0..=2) {
                let exps = random_exponents(&mut r, n, 3);
                p.add_term(Monomial::from_exponents(&exps), nonzero_coeff(&mut r));
            }
            p
        })
        .collect();
    PolyMap::square(comps).expect("square")
}

/// Degree 4..6 maps in dimensions 1..3.
pub fn lowering_family(seed: u64) -> Vec<PolyMap> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for d in 4..=6 {
            out.push(random_map(n, d, seed));
        }
    }
    out
}

/// Cubic homogeneous maps of dimension at most four: fixed ones first,
/// then seeded random ones.
pub fn yagzhev_family(seed: u64) -> Vec<PolyMap> {
    let fixed = [
        "vars x\npoly f = x + x^3",
        "vars x y\npoly f1 = x + y^3\npoly f2 = y",
        "vars u v\npoly f1 = u\npoly f2 = v + (u + v)^3",
        "vars x y z\npoly f1 = x + y^2*z\npoly f2 = y + z^3\npoly f3 = z",
        "vars x y\npoly f1 = x\npoly f2 = y",
        "vars x y z w\npoly f1 = x + 2*x*y*z - w^3\npoly f2 = y + 1/2*x^2*w\npoly f3 = z\npoly f4 = w + y^3",
    ];
    let mut out: Vec<PolyMap> = fixed
        .iter()
        .map(|t| parse_map(t).and_then(|d| d.to_map()).expect("fixed family member"))
        .collect();
    for (k, n) in [2, 2, 3, 3, 4, 4].into_iter().enumerate() {
        out.push(random_yagzhev(n, seed.wrapping_add(k as u64)));
    }
    out
}
