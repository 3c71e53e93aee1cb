//! Tate's algorithm over the local ring of `F4[t]` at a rational place,
//! specialised to residue characteristic 2.

use super::f4::F4;
use super::model::{FiberData, Kodaira, Place, Transform, WeierstrassModel};
use super::poly::Poly;
use super::GenusOneError;

/// Fiber data together with the local minimal model (in the chart where the
/// place is `t = 0`) and the coordinate change leading to it.
#[derive(Clone, Debug)]
pub struct TateResult {
    pub fiber: FiberData,
    pub minimal: WeierstrassModel,
    pub transform: Transform,
}

struct Local {
    w: WeierstrassModel,
    tr: Transform,
}

impl Local {
    fn rst(&mut self, r: Poly, s: Poly, t: Poly) {
        self.w = self.w.rst(&r, &s, &t);
        self.tr = self.tr.then(0, &r, &s, &t);
    }

    fn a(&self, i: usize) -> &Poly {
        &self.w.a[i]
    }

    /// Residue of `a_i / t^k`.
    fn res(&self, i: usize, k: usize) -> Result<F4, GenusOneError> {
        self.a(i).unshift(k).map(|p| p.coeff(0)).ok_or_else(|| {
            GenusOneError::Internal(format!("a{} not divisible by t^{k}", [1, 2, 3, 4, 6][i]))
        })
    }
}

fn c(x: F4) -> Poly {
    Poly::constant(x)
}

fn mono(x: F4, k: usize) -> Poly {
    Poly::monomial(x, k)
}

/// The singular point of the reduction, which is rational because it is unique.
fn singular_point(w: &WeierstrassModel) -> Result<(F4, F4), GenusOneError> {
    let [a1, a2, a3, a4, a6] = w.a.each_ref().map(|p| p.coeff(0));
    for x in F4::ALL {
        for y in F4::ALL {
            let f = y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6;
            let fx = a1 * y + x * x + a4;
            let fy = a1 * x + a3;
            if f.is_zero() && fx.is_zero() && fy.is_zero() {
                return Ok((x, y));
            }
        }
    }
    Err(GenusOneError::Internal(
        "reduction has no singular point over F4".into(),
    ))
}

/// Run Tate's algorithm for the fiber at `place`.
pub fn tate_local(w: &WeierstrassModel, place: &Place) -> Result<TateResult, GenusOneError> {
    if w.is_quasi_elliptic() {
        return Err(GenusOneError::Model(
            "Tate's algorithm needs an elliptic model".into(),
        ));
    }
    let chart = w.chart_at(place)?;
    tate_at_zero(chart, place.clone())
}

/// Tate's algorithm at `t = 0` of the given model.
pub fn tate_at_zero(w: WeierstrassModel, place: Place) -> Result<TateResult, GenusOneError> {
    let mut loc = Local {
        w,
        tr: Transform::identity(),
    };
    loop {
        let disc = loc.w.discriminant();
        if disc.is_zero() {
            return Err(GenusOneError::Model("singular generic fiber".into()));
        }
        let vd = disc.val0();
        let done = |loc: Local, k: Kodaira| finish(loc, k, vd, place.clone());
        if vd == 0 {
            return done(loc, Kodaira::I(0));
        }
        let (x0, y0) = singular_point(&loc.w)?;
        loc.rst(c(x0), Poly::zero(), c(y0));
        if !loc.w.b2().coeff(0).is_zero() {
            return done(loc, Kodaira::I(vd));
        }
        if loc.a(4).val0() < 2 {
            return done(loc, Kodaira::II);
        }
        if loc.w.b8().val0() < 3 {
            return done(loc, Kodaira::III);
        }
        if loc.w.b6().val0() < 3 {
            return done(loc, Kodaira::IV);
        }
        // now t | a1, a2;  t² | a3, a4;  t³ | a6
        let s = loc.a(1).coeff(0).sqrt();
        loc.rst(Poly::zero(), c(s), Poly::zero());
        let tau = loc.res(4, 2)?.sqrt();
        loc.rst(Poly::zero(), Poly::zero(), mono(tau, 1));
        let (b, cc, d) = (loc.res(1, 1)?, loc.res(3, 2)?, loc.res(4, 3)?);
        let cubic = Poly::new(vec![d, cc, b, F4::ONE]);
        if Poly::gcd(&cubic, &cubic.derivative()).is_one() {
            return done(loc, Kodaira::IStar(0));
        }
        let (alpha, mult) = cubic
            .roots()
            .into_iter()
            .find(|&(_, m)| m >= 2)
            .expect("repeated root is rational");
        loc.rst(mono(alpha, 1), Poly::zero(), Poly::zero());
        if mult == 2 {
            let n = star_subprocedure(&mut loc, vd)?;
            return done(loc, Kodaira::IStar(n));
        }
        if !loc.res(2, 2)?.is_zero() {
            return done(loc, Kodaira::IVStar);
        }
        let tau = loc.res(4, 4)?.sqrt();
        loc.rst(Poly::zero(), Poly::zero(), mono(tau, 2));
        if loc.a(3).val0() < 4 {
            return done(loc, Kodaira::IIIStar);
        }
        if loc.a(4).val0() < 6 {
            return done(loc, Kodaira::IIStar);
        }
        loc.w = loc
            .w
            .rescale()
            .ok_or_else(|| GenusOneError::Internal("non-minimal model failed to rescale".into()))?;
        loc.tr = loc.tr.then(1, &Poly::zero(), &Poly::zero(), &Poly::zero());
    }
}

/// The `I_n*` loop; alternates between the quadratics in `Y` and in `X`.
fn star_subprocedure(loc: &mut Local, vd: usize) -> Result<usize, GenusOneError> {
    for n in 1..=vd {
        if n % 2 == 1 {
            let k = n.div_ceil(2);
            if !loc.res(2, k + 1)?.is_zero() {
                return Ok(n);
            }
            let tau = loc.res(4, 2 * k + 2)?.sqrt();
            loc.rst(Poly::zero(), Poly::zero(), mono(tau, k + 1));
        } else {
            let k = n / 2;
            if !loc.res(3, k + 2)?.is_zero() {
                return Ok(n);
            }
            let rho = (loc.res(4, 2 * k + 3)? / loc.res(1, 1)?).sqrt();
            loc.rst(mono(rho, k + 1), Poly::zero(), Poly::zero());
        }
    }
    Err(GenusOneError::Internal(
        "I_n* loop did not terminate".into(),
    ))
}

fn finish(
    loc: Local,
    kodaira: Kodaira,
    vd: usize,
    place: Place,
) -> Result<TateResult, GenusOneError> {
    let m = kodaira.components();
    let delta_wild = if kodaira.is_additive() {
        vd.checked_sub(m + 1).ok_or_else(|| {
            GenusOneError::Internal(format!("v(Δ) = {vd} below the Euler number of {kodaira}"))
        })?
    } else {
        0
    };
    Ok(TateResult {
        fiber: FiberData {
            place,
            kodaira,
            m,
            v_delta: vd,
            delta_wild,
            dynkin_rank: kodaira.dynkin_rank(),
        },
        minimal: loc.w,
        transform: loc.tr,
    })
}

/// Places to scan for an elliptic model: rational roots of `Δ` and `∞`.
/// Fails if `Δ` has a non-rational irreducible factor.
pub fn bad_places(w: &WeierstrassModel) -> Result<Vec<Place>, GenusOneError> {
    let disc = w.discriminant();
    let mut out = Vec::new();
    for (f, _) in disc.factor() {
        if f.degree() != Some(1) {
            return Err(GenusOneError::Place(format!(
                "discriminant has the non-rational factor {f}"
            )));
        }
        out.push(Place::Finite(f));
    }
    out.sort_by_key(|p| p.rational_point().flatten().map(F4::bits));
    out.push(Place::Infinity);
    Ok(out)
}

/// All singular fibers of an elliptic model.
pub fn elliptic_fibers(w: &WeierstrassModel) -> Result<Vec<TateResult>, GenusOneError> {
    let mut out = Vec::new();
    for p in bad_places(w)? {
        let r = tate_local(w, &p)?;
        if r.fiber.kodaira != Kodaira::I(0) {
            out.push(r);
        }
    }
    Ok(out)
}
