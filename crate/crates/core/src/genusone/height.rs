//! Height pairing on elliptic K3 surfaces (`χ = 2`).

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::model::{Kodaira, Place, SectionPt, WeierstrassModel};
use super::ratfn::RatFn;
use super::tate::{bad_places, tate_local, TateResult};
use super::GenusOneError;
use crate::lattices::linalg::{q_inverse, to_qmat, to_zmat};
use crate::lattices::standard_root_lattice;

/// Local data of a section at one place.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalHeight {
    pub place: Place,
    /// Intersection number with the zero section at this place.
    pub meets_zero: i64,
    /// Correction term from the fiber component the section meets.
    pub contribution: Rational64,
}

/// `h(P) = 4 + 2(P·O) − Σ contr_v(P)`, with the local terms.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    pub height: Rational64,
    pub intersection_with_zero: i64,
    pub local: Vec<LocalHeight>,
}

/// Diagonal entries of the inverse Cartan matrix of the fiber's root lattice.
pub fn component_contributions(k: Kodaira) -> Vec<Rational64> {
    let Some(tag) = k.root_lattice() else {
        return Vec::new();
    };
    let lattice = standard_root_lattice(tag).expect("valid tag");
    let inv =
        q_inverse(&to_qmat(&to_zmat(lattice.gram()))).expect("Cartan matrices are invertible");
    let mut out: Vec<Rational64> = (0..inv.len())
        .map(|i| {
            let q = &inv[i][i];
            Rational64::new(q.numer().to_i64().unwrap(), q.denom().to_i64().unwrap())
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn val(f: &RatFn) -> i64 {
    f.val0()
}

fn val_poly(p: &RatFn) -> Rational64 {
    Rational64::from_integer(val(p))
}

/// Local intersection with `O` and component correction at `t = 0` of a
/// minimal model.
fn local_terms(tr: &TateResult, p: &SectionPt) -> Result<(i64, Rational64), GenusOneError> {
    let SectionPt::Affine(x, y) = tr.transform.apply(p) else {
        return Ok((0, Rational64::zero()));
    };
    let vx = val(&x);
    if vx < 0 {
        if vx % 2 != 0 {
            return Err(GenusOneError::Height(format!(
                "odd pole order {} of X at {}",
                -vx, tr.fiber.place
            )));
        }
        return Ok((-vx / 2, Rational64::zero()));
    }
    let m = &tr.minimal;
    let [a1, _, a3, a4, _] = m.a.each_ref().map(|c| RatFn::from(c.clone()));
    let psi2 = &(&a1 * &x) + &a3;
    let fx = &(&x.square() + &a4) + &(&a1 * &y);
    if val(&psi2) <= 0 || val(&fx) <= 0 {
        return Ok((0, Rational64::zero()));
    }
    let [b2, b4, b6, b8] = [m.b2(), m.b4(), m.b6(), m.b8()].map(RatFn::from);
    let psi3 = &(&(&(&x.pow(4) + &(&b2 * &x.pow(3))) + &(&b4 * &x.square())) + &(&b6 * &x)) + &b8;
    let k = tr.fiber.kodaira;
    let contr = if k.is_multiplicative() {
        let n = Rational64::from_integer(tr.fiber.v_delta as i64);
        let i = val_poly(&psi2).min(n / 2);
        i * (n - i) / n
    } else {
        let (v2, v3) = (val_poly(&psi2), val_poly(&psi3));
        if v3 >= v2 * 3 {
            v2 * 2 / 3
        } else {
            v3 / 4
        }
    };
    if !contr.is_zero() && !component_contributions(k).contains(&contr) {
        return Err(GenusOneError::Height(format!(
            "correction {contr} at {} matches no component of {k}",
            tr.fiber.place
        )));
    }
    Ok((0, contr))
}

/// The height of a section, computed place by place.
pub fn section_height(w: &WeierstrassModel, p: &SectionPt) -> Result<HeightReport, GenusOneError> {
    let SectionPt::Affine(x, _) = p else {
        return Ok(HeightReport {
            height: Rational64::zero(),
            intersection_with_zero: 0,
            local: Vec::new(),
        });
    };
    if w.is_quasi_elliptic() {
        return Err(GenusOneError::Model(
            "heights are defined for elliptic models only".into(),
        ));
    }
    if !super::model::on_model(w, p) {
        return Err(GenusOneError::OffCurve(p.to_string()));
    }
    let places = bad_places(w)?;
    let mut local = Vec::new();
    for place in &places {
        let tr = tate_local(w, place)?;
        let chart_p = p.chart_at(place)?;
        let (meets, contr) = local_terms(&tr, &chart_p)?;
        if meets != 0 || !contr.is_zero() {
            local.push(LocalHeight {
                place: place.clone(),
                meets_zero: meets,
                contribution: contr,
            });
        }
    }
    // poles of X at places of good reduction, where the global model is minimal
    for (f, _) in x.den().factor() {
        let place = Place::Finite(f.clone());
        if places.contains(&place) {
            continue;
        }
        let v = x.val_at(&f);
        if v % 2 != 0 {
            return Err(GenusOneError::Height(format!(
                "odd pole order {} of X at {place}",
                -v
            )));
        }
        let deg = f.degree().unwrap_or(0) as i64;
        local.push(LocalHeight {
            place,
            meets_zero: -v / 2 * deg,
            contribution: Rational64::zero(),
        });
    }
    let po: i64 = local.iter().map(|l| l.meets_zero).sum();
    let contr: Rational64 = local.iter().map(|l| l.contribution).sum();
    Ok(HeightReport {
        height: Rational64::from_integer(4 + 2 * po) - contr,
        intersection_with_zero: po,
        local,
    })
}

/// `⟨P, Q⟩ = (h(P+Q) − h(P) − h(Q)) / 2`.
pub fn height_pairing(
    w: &WeierstrassModel,
    p: &SectionPt,
    q: &SectionPt,
) -> Result<Rational64, GenusOneError> {
    let s = super::model::add(w, p, q);
    let hs = section_height(w, &s)?.height;
    let hp = section_height(w, p)?.height;
    let hq = section_height(w, q)?.height;
    Ok((hs - hp - hq) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cartan_diagonals() {
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(
            component_contributions(Kodaira::IVStar),
            vec![r(4, 3), r(2, 1), r(10, 3), r(6, 1)]
        );
        assert!(component_contributions(Kodaira::IStar(1)).contains(&r(5, 4)));
        assert!(component_contributions(Kodaira::III).contains(&r(1, 2)));
        assert!(component_contributions(Kodaira::I(10)).contains(&r(25, 10)));
        assert!(component_contributions(Kodaira::I(1)).is_empty());
    }
}
