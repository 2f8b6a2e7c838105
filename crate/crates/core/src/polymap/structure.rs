use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::PolyMap;
use crate::polycore::Monomial;
use crate::{Poly, Rational};

/// Where a map fails to be `X + H` with `H` cubic homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeWitness {
    pub component: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YagzhevCheck {
    pub holds: bool,
    pub witness: Option<ShapeWitness>,
}

/// `H_i = scale * form^3`, with `form` having coefficient one at its pivot variable.
#[derive(Clone, Debug, PartialEq)]
pub struct CubeForm {
    pub form: Poly,
    pub scale: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DruzkowskiCheck {
    pub holds: bool,
    /// One entry per component; `None` where `H_i = 0`.
    pub forms: Vec<Option<CubeForm>>,
    pub failing_component: Option<usize>,
}

pub fn is_yagzhev(f: &PolyMap) -> YagzhevCheck {
    let Ok(h) = f.nonlinear_remainder() else {
        return YagzhevCheck {
            holds: false,
            witness: None,
        };
    };
    for (i, hi) in h.iter().enumerate() {
        if let Some((m, _)) = hi.terms().find(|(m, _)| m.degree() != 3) {
            return YagzhevCheck {
                holds: false,
                witness: Some(ShapeWitness {
                    component: i,
                    degree: m.degree(),
                }),
            };
        }
    }
    YagzhevCheck {
        holds: true,
        witness: None,
    }
}

/// Recognizes `h = c * l^3` for a linear form `l`.
pub fn recognize_cube(h: &Poly) -> Option<CubeForm> {
    let n = h.nvars();
    let k = (0..n).find(|&k| !h.coeff(&Monomial::var_pow(k, 3)).is_zero())?;
    let c = h.coeff(&Monomial::var_pow(k, 3));
    let three_c = c.clone() * Rational::from_integer(3.into());
    let mut form = Poly::var(n, k);
    for j in (0..n).filter(|&j| j != k) {
        let a = h.coeff(&Monomial::from_pairs([(k, 2), (j, 1)])) / three_c.clone();
        form.add_term(Monomial::var(j), a);
    }
    (form.pow(3).scale(&c) == *h).then_some(CubeForm { form, scale: c })
}

pub fn is_druzkowski(f: &PolyMap) -> DruzkowskiCheck {
    let fail = |i: Option<usize>, forms| DruzkowskiCheck {
        holds: false,
        forms,
        failing_component: i,
    };
    let yz = is_yagzhev(f);
    if !yz.holds {
        return fail(yz.witness.map(|w| w.component), Vec::new());
    }
    let h = f.nonlinear_remainder().expect("square");
    let mut forms = Vec::with_capacity(h.len());
    for (i, hi) in h.iter().enumerate() {
        if hi.is_zero() {
            forms.push(None);
            continue;
        }
        match recognize_cube(hi) {
            Some(cf) => forms.push(Some(cf)),
            None => return fail(Some(i), forms),
        }
    }
    DruzkowskiCheck {
        holds: true,
        forms,
        failing_component: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn yagzhev_examples() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let bad = PolyMap::square(vec![&x + &x.pow(2), y.clone()]).unwrap();
        let r = is_yagzhev(&bad);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(ShapeWitness { component: 0, degree: 2 }));
        assert!(is_yagzhev(&PolyMap::identity(3)).holds);
        // (x - t^2 y + t q(x), y + c(x), t) in variables (x, y, t)
        let (x3, y3, t3) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let g = PolyMap::square(vec![
            &(&x3 - &(&t3.pow(2) * &y3)) + &(&t3 * &x3.pow(2)),
            &y3 + &x3.pow(3),
            t3.clone(),
        ])
        .unwrap();
        assert!(is_yagzhev(&g).holds);
    }

    #[test]
    fn druzkowski_examples() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x + &y.pow(3), y.clone()]).unwrap();
        let r = is_druzkowski(&f);
        assert!(r.holds);
        assert_eq!(r.forms[0].as_ref().unwrap().form, y);
        assert!(r.forms[1].is_none());

        let s = &x + &y;
        let g = PolyMap::square(vec![x.clone(), &y + &s.pow(3)]).unwrap();
        let r = is_druzkowski(&g);
        assert!(r.holds);
        assert_eq!(r.forms[1].as_ref().unwrap().form, s);

        let h = PolyMap::square(vec![&x + &(&x.pow(2) * &y), y.clone()]).unwrap();
        assert!(!is_druzkowski(&h).holds);

        let scaled = PolyMap::square(vec![&x + &(&x - &y.scale(&int(2))).pow(3).scale(&int(-5)), y]).unwrap();
        let r = is_druzkowski(&scaled);
        assert!(r.holds);
        assert_eq!(r.forms[0].as_ref().unwrap().scale, int(-5));
    }
}
