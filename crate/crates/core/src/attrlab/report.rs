use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fiber::{fiber_count_real, generic_rotation_from, Rotation, SpecializedFiber, ROTATION_RETRIES};
use crate::elimination::{resultant, subresultant_prs, to_univariate_over, UniPoly};
use crate::scalar::Ring;
use crate::error::{Error, Result};
use crate::{rng, Poly, PolyMap, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DexResult {
    pub dex: usize,
    pub genericity_retries: usize,
    /// Matrices of the two rotations used, row-major.
    pub rotations: Vec<Vec<String>>,
}

fn target_for(seed: u64, index: u64) -> [Rational; 2] {
    let mut r = rng::stream(seed ^ 0x7461_7267, index);
    [rng::small_rational(&mut r, 50, 7), rng::small_rational(&mut r, 50, 7)]
}

fn matrix_strings(rot: &Rotation) -> Vec<String> {
    rot.matrix.entries().iter().map(ToString::to_string).collect()
}

/// Degree of the field extension of a plane map: the number of complex
/// points in a generic fiber, read off two targets under each of two
/// rotations, which must all agree.
pub fn dex2(f: &PolyMap, seed: u64) -> Result<DexResult> {
    let mut retries = 0usize;
    let mut next_target = 0u64;
    let mut skip = 0u64;
    for _round in 0..ROTATION_RETRIES {
        let (r1, a1) = generic_rotation_from(f, seed, skip)?;
        let (r2, a2) = generic_rotation_from(f, seed, a1 + 1)?;
        skip = a2 + 1;
        let mut counts = Vec::with_capacity(4);
        let mut failed = false;
        for rot in [&r1, &r2] {
            for _ in 0..2 {
                let t = target_for(seed, next_target);
                next_target += 1;
                match fiber_count_real(rot, &t) {
                    Ok(fib) => counts.push(fib.complex_count),
                    Err(Error::Genericity(_)) => {
                        failed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if failed {
                break;
            }
        }
        if !failed && counts.iter().all(|&c| c == counts[0]) {
            if counts[0] == 0 {
                return Err(Error::Degenerate);
            }
            return Ok(DexResult {
                dex: counts[0],
                genericity_retries: retries,
                rotations: vec![matrix_strings(&r1), matrix_strings(&r2)],
            });
        }
        retries += 1;
    }
    Err(Error::RetriesExhausted(format!(
        "fiber degrees did not agree within {ROTATION_RETRIES} rounds"
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributeReport {
    pub dex: Option<usize>,
    /// Largest real fiber seen; a lower bound for the true maximum.
    pub mfs_observed: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub parity_consistent: Option<bool>,
    pub genericity_retries: usize,
    /// Externally sourced automorphism-group size; never computed here.
    pub sag_external: Option<usize>,
    /// How many sampled fibers had each real size.
    pub real_count_histogram: BTreeMap<usize, usize>,
    pub max_complex_count: usize,
    /// Targets of the form `F(p)`; their fibers are nonempty.
    pub image_targets: usize,
    pub free_targets: usize,
    /// Image targets whose fiber came out with no real point; nonzero
    /// means an inconsistency.
    pub empty_image_fibers: usize,
}

impl AttributeReport {
    pub fn with_sag(mut self, sag: Option<usize>) -> Self {
        self.sag_external = sag;
        self
    }
}

/// Real fiber of one sampled target, trying further rotations on a
/// genericity violation.
fn sample_fiber(f: &PolyMap, seed: u64, index: u64, base: &Rotation) -> Result<(SpecializedFiber, usize)> {
    let mut r = rng::stream(seed ^ 0x6d66_7300, index);
    let target = if index % 2 == 0 {
        let p = rng::rational_point(&mut r, 2, 8, 3);
        let v = f.eval(&p)?;
        [v[0].clone(), v[1].clone()]
    } else {
        [rng::small_rational(&mut r, 50, 7), rng::small_rational(&mut r, 50, 7)]
    };
    match fiber_count_real(base, &target) {
        Ok(fib) => return Ok((fib, 0)),
        Err(Error::Genericity(_)) => {}
        Err(e) => return Err(e),
    }
    let mut skip = 1;
    for retry in 1..=ROTATION_RETRIES as usize {
        let (rot, used) = generic_rotation_from(f, seed ^ index.rotate_left(17), skip)?;
        skip = used + 1;
        match fiber_count_real(&rot, &target) {
            Ok(fib) => return Ok((fib, retry)),
            Err(Error::Genericity(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted(format!("no separating rotation for sample {index}")))
}

/// Samples fibers over images of random points and over free targets.
pub fn mfs_sample(f: &PolyMap, seed: u64, samples: usize) -> Result<AttributeReport> {
    let dex = dex2(f, seed)?;
    let (base, _) = generic_rotation_from(f, seed, 0)?;
    let fibers: Vec<(SpecializedFiber, usize)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| sample_fiber(f, seed, i, &base))
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    for (fib, _) in &fibers {
        *histogram.entry(fib.real_count).or_insert(0) += 1;
    }
    let mfs = fibers.iter().map(|(fib, _)| fib.real_count).max();
    let parity = mfs.map(|m| (dex.dex + m) % 2 == 0);
    Ok(AttributeReport {
        dex: Some(dex.dex),
        mfs_observed: mfs,
        samples,
        seed,
        parity_consistent: parity,
        genericity_retries: dex.genericity_retries + fibers.iter().map(|(_, r)| r).sum::<usize>(),
        sag_external: None,
        real_count_histogram: histogram,
        max_complex_count: fibers.iter().map(|(fib, _)| fib.complex_count).max().unwrap_or(0),
        image_targets: samples.div_ceil(2),
        free_targets: samples / 2,
        empty_image_fibers: fibers.iter().step_by(2).filter(|(fib, _)| fib.real_count == 0).count(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPolyCoordinate {
    /// The resultant, in variables `(x_coord, Y_0, Y_1)`.
    pub resultant: Poly,
    /// Squarefree part over `Q(Y)` with polynomial content in `Y` removed as
    /// far as exact division allows, scaled to a unit leading coefficient.
    pub reduced: Poly,
    /// Degree of `reduced` in `x_coord`.
    pub degree: usize,
    pub resultant_degree: usize,
}

fn from_univariate(u: &UniPoly<Poly>, var: usize) -> Poly {
    let n = u.zero_coeff().nvars();
    let mut out = Poly::zero(n);
    for (k, c) in u.coeffs().iter().enumerate() {
        out += &(c * &Poly::var(n, var).pow(k as u32));
    }
    out
}

/// `Res_{other}(f_0 - Y_0, f_1 - Y_1)` as a polynomial in the chosen
/// coordinate over `Q[Y_0, Y_1]`.
pub fn minimal_poly_coordinate(f: &PolyMap, coord: usize) -> Result<MinimalPolyCoordinate> {
    f.check_square()?;
    if f.nvars() != 2 || coord > 1 {
        return Err(Error::Precondition("plane map and coordinate 0 or 1 expected".into()));
    }
    let other = 1 - coord;
    // variables (x0, x1, Y0, Y1)
    let a = &f.component(0).with_nvars(4)? - &Poly::var(4, 2);
    let b = &f.component(1).with_nvars(4)? - &Poly::var(4, 3);
    let r = resultant(&a, &b, other)?;
    if r.is_zero() {
        return Err(Error::Degenerate);
    }
    let r = to_univariate_over(&r, coord);
    let resultant_degree = r.degree().expect("nonzero");

    // squarefree part over Q(Y) by a pseudo-quotient with gcd(r, r')
    let dr = UniPoly::new(
        r.coeffs().iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into()))).collect(),
        r.zero_coeff().clone(),
    );
    let mut reduced = r.clone();
    if dr.degree().is_some_and(|d| d > 0) {
        let prs = subresultant_prs(&r, &dr);
        let g = prs.members.iter().rev().find(|m| !m.is_zero()).unwrap_or(&dr);
        if g.degree().is_some_and(|d| d > 0) {
            let lg = g.lc().expect("nonzero").clone();
            let k = (resultant_degree - g.degree().unwrap() + 1) as u32;
            let scaled = r.scale(&lg.pow(k));
            let mut q = scaled.exact_div(g).ok_or_else(|| Error::Precondition("pseudo-division failed".into()))?;
            while !lg.is_constant() {
                let Some(next) = q.coeffs().iter().map(|c| c.div_exact(&lg)).collect::<Option<Vec<_>>>() else {
                    break;
                };
                q = UniPoly::new(next, q.zero_coeff().clone());
            }
            reduced = q;
        }
    }
    let lc = reduced.lc().expect("nonzero");
    let unit = match lc.as_constant() {
        Some(c) => c,
        None => lc.leading_term().map(|(_, c)| c.clone()).expect("nonzero"),
    };
    let reduced = from_univariate(&reduced.scale(&Poly::constant(4, Rational::from_integer(1.into()) / unit)), coord);
    let degree = reduced.degree_in(coord).unwrap_or(0) as usize;
    let drop_other = |p: &Poly| {
        p.remap(3, |v| match v {
            2 => 1,
            3 => 2,
            _ => 0,
        })
    };
    Ok(MinimalPolyCoordinate {
        resultant: drop_other(&from_univariate(&r, coord)),
        reduced: drop_other(&reduced),
        degree,
        resultant_degree,
    })
}
