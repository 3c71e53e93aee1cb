//! Quasi-elliptic models `y² = x³ + a2x² + a4x + a6` in characteristic 2.

use std::collections::BTreeSet;

use super::f4::F4;
use super::model::{on_model, FiberData, Kodaira, Place, SectionPt, WeierstrassModel};
use super::poly::{all_up_to_degree, monic_of_degree, Poly};
use super::ratfn::RatFn;
use super::GenusOneError;

/// Remove the quadratic term by `x ↦ x + a2`: returns `(a2² + a4, a2·a4 + a6)`.
pub fn depress_qe(w: &WeierstrassModel) -> Result<(Poly, Poly), GenusOneError> {
    if !w.is_quasi_elliptic() {
        return Err(GenusOneError::Model("depress_qe needs a1 = a3 = 0".into()));
    }
    let (a2, a4, a6) = (w.a2(), w.a4(), w.a6());
    Ok((&a2.square() + a4, &(a2 * a4) + a6))
}

/// `Δ = a4·(a4')² + (a6')²`.
pub fn qe_discriminant(a4: &Poly, a6: &Poly) -> Poly {
    &(a4 * &a4.derivative().square()) + &a6.derivative().square()
}

/// Least exponent not divisible by 4 among the nonzero terms (`None` if all are).
pub fn reduced_valuation(a4: &Poly) -> Option<usize> {
    a4.coeffs()
        .iter()
        .enumerate()
        .find(|(i, c)| i % 4 != 0 && !c.is_zero())
        .map(|(i, _)| i)
}

/// Fiber type of a given Dynkin rank.
pub fn qe_type(rank: usize, red_val_a4: Option<usize>) -> Result<Option<Kodaira>, GenusOneError> {
    Ok(Some(match rank {
        0 => return Ok(None),
        1 => Kodaira::III,
        4 => Kodaira::IStar(0),
        6 => Kodaira::IStar(2),
        7 => Kodaira::IIIStar,
        8 => {
            if red_val_a4.is_none_or(|v| v >= 4) {
                Kodaira::IIStar
            } else {
                Kodaira::IStar(4)
            }
        }
        r if r >= 10 && r % 2 == 0 => Kodaira::IStar(r - 4),
        r => return Err(GenusOneError::NoQeFiber(r)),
    }))
}

/// Depressed coefficients in the chart of a rational place.
fn local_pair(a4: &Poly, a6: &Poly, place: &Place) -> Result<(Poly, Poly), GenusOneError> {
    match place.rational_point() {
        Some(Some(c)) => Ok((a4.translate(c), a6.translate(c))),
        Some(None) => Ok((a4.reverse(8), a6.reverse(12))),
        None => Err(GenusOneError::Place(format!(
            "place {place} is not rational over F4"
        ))),
    }
}

/// Fiber at a single rational place (`None` if the fiber is irreducible).
pub fn qe_fiber_at(
    w: &WeierstrassModel,
    place: &Place,
) -> Result<Option<FiberData>, GenusOneError> {
    let (a4, a6) = depress_qe(w)?;
    let (l4, l6) = local_pair(&a4, &a6, place)?;
    let disc = qe_discriminant(&l4, &l6);
    if disc.is_zero() {
        return Err(GenusOneError::Model(
            "quasi-elliptic discriminant vanishes identically".into(),
        ));
    }
    let rank = disc.val0();
    Ok(qe_type(rank, reduced_valuation(&l4))?.map(|k| FiberData {
        place: place.clone(),
        kodaira: k,
        m: k.components(),
        v_delta: rank,
        delta_wild: 0,
        dynkin_rank: rank,
    }))
}

/// All reducible fibers; fails unless the Dynkin ranks add up to 20.
pub fn qe_fibers(w: &WeierstrassModel) -> Result<Vec<FiberData>, GenusOneError> {
    let (a4, a6) = depress_qe(w)?;
    let disc = qe_discriminant(&a4, &a6);
    if disc.is_zero() {
        return Err(GenusOneError::Model(
            "quasi-elliptic discriminant vanishes identically".into(),
        ));
    }
    let mut out = Vec::new();
    for (f, _) in disc.factor() {
        if f.degree() != Some(1) {
            return Err(GenusOneError::Place(format!(
                "discriminant has the non-rational factor {f}"
            )));
        }
    }
    for place in Place::rational_places() {
        if let Some(fd) = qe_fiber_at(w, &place)? {
            out.push(fd);
        }
    }
    let total: usize = out.iter().map(|f| f.dynkin_rank).sum();
    if total != 20 {
        return Err(GenusOneError::Euler {
            expected: 20,
            found: total,
        });
    }
    Ok(out)
}

/// Solve `L(z) = rhs` for an `F2`-linear map given by the images of a basis.
/// Vectors are bitmasks; returns all solutions as bitmasks over the basis.
fn solve_f2(images: &[u64], rhs: u64) -> Vec<u64> {
    // slot[b]: a reduced image with leading bit b, and the basis combination producing it
    let mut slot: [Option<(u64, u64)>; 64] = [None; 64];
    let mut kernel: Vec<u64> = Vec::new();
    for (i, &img) in images.iter().enumerate() {
        let (mut v, mut tag) = (img, 1u64 << i);
        while v != 0 {
            let b = 63 - v.leading_zeros() as usize;
            match slot[b] {
                Some((pv, ptag)) => {
                    v ^= pv;
                    tag ^= ptag;
                }
                None => {
                    slot[b] = Some((v, tag));
                    break;
                }
            }
        }
        if v == 0 {
            kernel.push(tag);
        }
    }
    let (mut r, mut sol) = (rhs, 0u64);
    while r != 0 {
        let b = 63 - r.leading_zeros() as usize;
        match slot[b] {
            Some((pv, ptag)) => {
                r ^= pv;
                sol ^= ptag;
            }
            None => return Vec::new(),
        }
    }
    (0..1u64 << kernel.len())
        .map(|mask| {
            kernel
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(sol, |s, (_, &k)| s ^ k)
        })
        .collect()
}

/// Pack the odd-degree coefficients of `p` (two bits each) into a bitmask.
fn odd_bits(p: &Poly) -> u64 {
    let mut v = 0u64;
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 1 {
            let k = i / 2;
            assert!(k < 32, "polynomial degree too large for the section search");
            v |= (c.bits() as u64) << (2 * k);
        }
    }
    v
}

/// All sections with `X = A/C²`, `C` monic of degree `≤ den_deg` and
/// `deg A ≤ 4 + 2·deg C` (capped at `num_deg`), zero section included.
///
/// On the depressed model `y² = x³ + a4x + a6`, write `A = Z + tW` with `Z, W`
/// polynomials in `t²`. The right-hand side `A³ + a4AC⁴ + a6C⁶` is a square
/// iff its odd part vanishes, and for fixed `W, C` that is the affine
/// `F2`-linear condition `tW·Z² + a4ₒC⁴·Z = t³W³ + a4ₑtWC⁴ + a6ₒC⁶`.
pub fn enumerate_sections(
    w: &WeierstrassModel,
    num_deg: usize,
    den_deg: usize,
) -> Result<Vec<SectionPt>, GenusOneError> {
    let (a4, a6) = depress_qe(w)?;
    let (a4e, a4o) = a4.even_odd();
    let a6o = a6.even_odd().1;
    let a2 = RatFn::from(w.a2().clone());
    let mut xs: BTreeSet<RatFn> = BTreeSet::new();
    let mut out = vec![SectionPt::O];
    for dc in 0..=den_deg {
        let bound = (4 + 2 * dc).min(num_deg);
        let zk = bound / 2;
        let w_deg = bound.saturating_sub(1) / 2;
        for c in monic_of_degree(dc) {
            let c2 = c.square();
            let c4 = c2.square();
            let c6 = &c4 * &c2;
            let a4o_c4 = &a4o * &c4;
            for v in all_up_to_degree(w_deg) {
                if bound == 0 && !v.is_zero() {
                    continue;
                }
                let wp = v.square();
                let tw = wp.shift(1);
                let basis: Vec<Poly> = (0..=zk)
                    .flat_map(|k| {
                        [
                            Poly::monomial(F4::ONE, 2 * k),
                            Poly::monomial(F4::RHO, 2 * k),
                        ]
                    })
                    .collect();
                let images: Vec<u64> = basis
                    .iter()
                    .map(|z| odd_bits(&(&(&tw * &z.square()) + &(&a4o_c4 * z))))
                    .collect();
                let rhs = &(&tw.pow(3) + &(&(&a4e * &tw) * &c4)) + &(&a6o * &c6);
                for sol in solve_f2(&images, odd_bits(&rhs)) {
                    let mut z = Poly::zero();
                    for (i, b) in basis.iter().enumerate() {
                        if sol >> i & 1 == 1 {
                            z = &z + b;
                        }
                    }
                    let a = &z + &tw;
                    let rhs_full = &(&(&a.pow(3) + &(&(&a4 * &a) * &c4)) + &(&a6 * &c6));
                    let root = rhs_full
                        .sqrt()
                        .ok_or_else(|| GenusOneError::Internal("square test failed".into()))?;
                    let x_dep = RatFn::new(a, c2.clone());
                    let y = RatFn::new(root, c.pow(3));
                    let x = &x_dep + &a2;
                    if xs.insert(x.clone()) {
                        let p = SectionPt::new(x, y);
                        if !on_model(w, &p) {
                            return Err(GenusOneError::Internal(format!(
                                "enumerated section {p} is off the model"
                            )));
                        }
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genusone::expr::parse_poly;

    fn model(c: [&str; 5]) -> WeierstrassModel {
        WeierstrassModel::new(c.map(|s| parse_poly(s).unwrap()))
    }

    #[test]
    fn depression() {
        let (a4, a6) = depress_qe(&model(["0", "t^3", "0", "0", "t"])).unwrap();
        assert_eq!(
            (a4, a6),
            (parse_poly("t^6").unwrap(), parse_poly("t").unwrap())
        );
        let (a4, a6) = depress_qe(&model(["0", "t", "0", "t^6", "0"])).unwrap();
        assert_eq!(
            (a4, a6),
            (parse_poly("t^2+t^6").unwrap(), parse_poly("t^7").unwrap())
        );
        assert!(depress_qe(&model(["1", "0", "0", "0", "t"])).is_err());
    }

    #[test]
    fn rank_table() {
        assert_eq!(qe_type(8, Some(2)).unwrap(), Some(Kodaira::IStar(4)));
        assert_eq!(qe_type(8, Some(6)).unwrap(), Some(Kodaira::IIStar));
        assert_eq!(qe_type(8, None).unwrap(), Some(Kodaira::IIStar));
        assert_eq!(qe_type(20, None).unwrap(), Some(Kodaira::IStar(16)));
        for bad in [2, 3, 5, 9, 11] {
            assert!(qe_type(bad, None).is_err());
        }
    }

    #[test]
    fn model_eighteen() {
        let f = qe_fibers(&model(["0", "t^3", "0", "0", "t"])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(
            (f[0].place.clone(), f[0].kodaira),
            (Place::Infinity, Kodaira::IStar(16))
        );
    }

    #[test]
    fn f2_solver() {
        // images e0 -> 0b01, e1 -> 0b01, e2 -> 0b10: solutions of L(z) = 0b11
        let mut s = solve_f2(&[0b01, 0b01, 0b10], 0b11);
        s.sort();
        assert_eq!(s, vec![0b101, 0b110]);
        assert!(solve_f2(&[0b01], 0b10).is_empty());
    }
}
