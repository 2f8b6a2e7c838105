use serde::{Deserialize, Serialize};

use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::OrderedField;
use crate::Rational;

/// Endpoint of a counting interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound<S> {
    NegInf,
    PosInf,
    At(S),
}

/// Half-open interval `(lo, hi]` holding exactly one distinct real root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatingInterval<S = Rational> {
    pub lo: S,
    pub hi: S,
    pub sign_change_count: usize,
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part<S: OrderedField>(p: &UniPoly<S>) -> Result<UniPoly<S>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let (q, _) = p.div_rem(&g)?;
    Ok(q.monic())
}

/// Strict upper bound on the absolute value of every root.
pub fn cauchy_bound<S: OrderedField>(p: &UniPoly<S>) -> S {
    let lc = p.lc().expect("nonzero").abs_val();
    let mut m = S::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs_val() / lc.clone();
        if r > m {
            m = r;
        }
    }
    m + S::one()
}

/// Sturm sequence of a squarefree polynomial. Members are rescaled by
/// positive constants, which keeps sign counts intact.
pub fn sturm_sequence<S: OrderedField>(p: &UniPoly<S>) -> Vec<UniPoly<S>> {
    let normalize = |q: UniPoly<S>| match q.lc() {
        Some(l) => {
            let l = l.abs_val();
            q.scale(&l.inv())
        }
        None => q,
    };
    let mut seq = vec![normalize(p.clone())];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(normalize(d));
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(normalize(r.neg()));
    }
    seq
}

fn sign_changes<S: OrderedField>(seq: &[UniPoly<S>], at: &S) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for q in seq {
        let s = q.eval(at).sign();
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count<S: OrderedField>(p: &UniPoly<S>, lo: &Bound<S>, hi: &Bound<S>) -> Result<usize> {
    let sf = squarefree_part(p)?;
    let seq = sturm_sequence(&sf);
    let b = cauchy_bound(&sf);
    let resolve = |x: &Bound<S>| match x {
        Bound::NegInf => -b.clone(),
        Bound::PosInf => b.clone(),
        Bound::At(v) => v.clone(),
    };
    let (l, h) = (resolve(lo), resolve(hi));
    if l >= h {
        return Err(Error::Precondition("empty counting interval".into()));
    }
    Ok(count_in(&seq, &l, &h))
}

fn count_in<S: OrderedField>(seq: &[UniPoly<S>], lo: &S, hi: &S) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Distinct real roots of `p` over the whole line.
pub fn count_real_roots<S: OrderedField>(p: &UniPoly<S>) -> Result<usize> {
    sturm_count(p, &Bound::NegInf, &Bound::PosInf)
}

/// One isolating interval per distinct real root, ascending, by bisection.
pub fn isolate_real_roots<S: OrderedField>(p: &UniPoly<S>) -> Result<Vec<IsolatingInterval<S>>> {
    let sf = squarefree_part(p)?;
    let seq = sturm_sequence(&sf);
    let b = cauchy_bound(&sf);
    let two = S::from_int(2);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_in(&seq, &lo, &hi) {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo,
                hi,
                sign_change_count: 1,
            }),
            _ => {
                let mid = (lo.clone() + hi.clone()) / two.clone();
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("ordered"));
    Ok(out)
}

/// Shrinks an isolating interval of squarefree `p` until it is narrower than `width`.
pub fn refine<S: OrderedField>(p: &UniPoly<S>, iv: &IsolatingInterval<S>, width: &S) -> IsolatingInterval<S> {
    let seq = sturm_sequence(p);
    let two = S::from_int(2);
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while hi.clone() - lo.clone() > *width {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if count_in(&seq, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval {
        lo,
        hi,
        sign_change_count: 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::QUniPoly;

    fn q(c: &[i64]) -> QUniPoly {
        QUniPoly::from_coeffs(c.iter().map(|&n| int(n)).collect())
    }
    const ALL: (Bound<Rational>, Bound<Rational>) = (Bound::NegInf, Bound::PosInf);

    #[test]
    fn squarefree_examples() {
        let p = QUniPoly::from_roots(&[int(1), int(1), int(-2)]);
        assert_eq!(squarefree_part(&p).unwrap(), QUniPoly::from_roots(&[int(1), int(-2)]));
        assert_eq!(squarefree_part(&q(&[0, 0, 0, 5])).unwrap(), q(&[0, 1]));
        assert!(squarefree_part(&q(&[])).is_err());
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_count(&q(&[1, 0, 1]), &ALL.0, &ALL.1).unwrap(), 0);
        assert_eq!(sturm_count(&q(&[0, -1, 0, 1]), &ALL.0, &ALL.1).unwrap(), 3);
        let p = QUniPoly::from_roots(&[int(1), int(2)]).mul(&q(&[3, 0, 1]));
        assert_eq!(sturm_count(&p, &Bound::At(int(0)), &Bound::At(int(3))).unwrap(), 2);
        // half-open: a root at hi counts, at lo does not
        assert_eq!(sturm_count(&p, &Bound::At(int(1)), &Bound::At(int(2))).unwrap(), 1);
    }

    #[test]
    fn isolate_examples() {
        let ivs = isolate_real_roots(&q(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        let p = q(&[-2, 0, 1]);
        for iv in &ivs {
            // sign change across each interval, an independent check of the root
            let (a, b) = (p.eval(&iv.lo), p.eval(&iv.hi));
            assert!(a * b <= int(0));
        }
        let tight = refine(&p, &ivs[1], &rat(1, 1000));
        assert!(tight.hi.clone() - tight.lo.clone() <= rat(1, 1000));
        assert!(tight.lo.clone() * tight.lo.clone() < int(2) && tight.hi.clone() * tight.hi.clone() >= int(2));
        assert!(isolate_real_roots(&q(&[1, 0, 1])).unwrap().is_empty());
        let z = isolate_real_roots(&q(&[0, 1])).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].lo < int(0) && z[0].hi >= int(0));
    }

    #[test]
    fn works_over_floats() {
        let p = UniPoly::<f64>::from_roots(&[-1.0, 0.5, 3.0]);
        assert_eq!(count_real_roots(&p).unwrap(), 3);
    }
}
