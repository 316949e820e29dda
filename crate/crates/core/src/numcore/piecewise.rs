use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::rat::{binomial, fmt_rat, int, parse_rat, rat_to_f64, BigRat};
use crate::error::{Result, WalkError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Stored for x ≥ 0 only, f(−x) = f(x).
    Even,
    /// Stored for x ≥ 0 only, f(−x) = −f(x).
    Odd,
    /// Stored on its whole domain.
    None,
}

impl Parity {
    fn product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::None, _) | (_, Parity::None) => Parity::None,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

/// Piecewise Laurent polynomial with rational breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFn {
    breaks: Vec<BigRat>,
    pieces: Vec<LaurentPoly>,
    parity: Parity,
}

impl PiecewiseFn {
    pub fn new(breaks: Vec<BigRat>, pieces: Vec<LaurentPoly>, parity: Parity) -> Result<Self> {
        if breaks.len() < 2 || pieces.len() + 1 != breaks.len() {
            return Err(WalkError::Invariant("piece count must be breakpoint count - 1".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WalkError::Invariant("breakpoints must increase strictly".into()));
        }
        if parity != Parity::None && !breaks[0].is_zero() {
            return Err(WalkError::Invariant("symmetric functions are stored from 0".into()));
        }
        Ok(PiecewiseFn { breaks, pieces, parity })
    }

    /// c_m (1 − x²)^{m−1} on [−1, 1] with c_m = Γ(m+1/2)/(√π Γ(m)), a probability density.
    pub fn sphere_kernel(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(WalkError::Domain("kernel order must be at least 1".into()));
        }
        // c_m = (2m−1)!! / (2^m (m−1)!)
        let mut c = BigRat::one();
        for j in 1..=m {
            c *= BigRat::new((2 * j as i64 - 1).into(), 2.into());
        }
        for j in 1..m {
            c /= int(j as i64);
        }
        let mut poly = LaurentPoly::zero();
        for r in 0..m {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let b = BigRat::from_integer(binomial((m - 1) as u64, r as u64) * sign);
            poly.add_term(2 * r as i32, b * &c);
        }
        Self::new(vec![int(0), int(1)], vec![poly], Parity::Even)
    }

    pub fn breaks(&self) -> &[BigRat] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[LaurentPoly] {
        &self.pieces
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(mut self, parity: Parity) -> Result<Self> {
        if parity != Parity::None && !self.breaks[0].is_zero() {
            return Err(WalkError::Invariant("symmetric functions are stored from 0".into()));
        }
        self.parity = parity;
        Ok(self)
    }

    pub fn domain(&self) -> (&BigRat, &BigRat) {
        (&self.breaks[0], self.breaks.last().unwrap())
    }

    /// Index of the piece owning x; breakpoints go to the left piece.
    fn locate(&self, x: &BigRat) -> Result<usize> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(WalkError::Domain(format!("{} outside [{}, {}]", fmt_rat(x), fmt_rat(lo), fmt_rat(hi))));
        }
        Ok(self.breaks[1..].iter().position(|b| x <= b).unwrap_or(self.pieces.len() - 1))
    }

    pub fn eval_rat(&self, x: &BigRat) -> Result<BigRat> {
        let i = self.locate(x)?;
        self.pieces[i].eval_rat(x)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        let (lo, hi) = (rat_to_f64(lo), rat_to_f64(hi));
        if !(lo..=hi).contains(&x) {
            return Err(WalkError::Domain(format!("{x} outside [{lo}, {hi}]")));
        }
        let i = self.breaks[1..].iter().position(|b| x <= rat_to_f64(b)).unwrap_or(self.pieces.len() - 1);
        Ok(self.pieces[i].eval(x))
    }

    /// Merges adjacent pieces carrying the same polynomial.
    pub fn simplified(&self) -> Self {
        let mut breaks = vec![self.breaks[0].clone()];
        let mut pieces: Vec<LaurentPoly> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if pieces.last() == Some(p) {
                *breaks.last_mut().unwrap() = self.breaks[i + 1].clone();
            } else {
                pieces.push(p.clone());
                breaks.push(self.breaks[i + 1].clone());
            }
        }
        PiecewiseFn { breaks, pieces, parity: self.parity }
    }

    pub fn map_pieces(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        PiecewiseFn { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(f).collect(), parity: self.parity }
    }

    /// Applies p ↦ −p′/(2x) to every piece, m times.
    pub fn half_derivative_op(&self, m: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.map_pieces(LaurentPoly::half_derivative);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let parity = match self.parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        };
        PiecewiseFn { parity, ..self.map_pieces(LaurentPoly::derivative) }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.map_pieces(|q| q * p)
    }

    /// Exact integral over the stored domain.
    pub fn integral(&self) -> Result<BigRat> {
        let mut acc = BigRat::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            acc += p.integrate(&self.breaks[i], &self.breaks[i + 1])?;
        }
        Ok(acc)
    }

    /// Exact integral over the whole real line, using the parity.
    pub fn integral_full(&self) -> Result<BigRat> {
        Ok(match self.parity {
            Parity::Even => self.integral()? * int(2),
            Parity::Odd => BigRat::zero(),
            Parity::None => self.integral()?,
        })
    }

    /// Antiderivative F with F(left end) = 0, continuous across breakpoints.
    pub fn cumulative(&self) -> Result<PiecewiseFn> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut offset = BigRat::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let q = p.antiderivative()?;
            let at_left = if self.breaks[i].is_zero() && !q.is_polynomial() {
                return Err(WalkError::Pole("cumulative integral from 0".into()));
            } else {
                q.eval_rat(&self.breaks[i])?
            };
            let piece = &q + &LaurentPoly::constant(&offset - &at_left);
            offset = piece.eval_rat(&self.breaks[i + 1])?;
            pieces.push(piece);
        }
        PiecewiseFn::new(self.breaks.clone(), pieces, Parity::None)
    }

    fn full_line(&self) -> (Vec<BigRat>, Vec<LaurentPoly>) {
        if self.parity == Parity::None {
            return (self.breaks.clone(), self.pieces.clone());
        }
        let mut breaks: Vec<BigRat> = self.breaks.iter().rev().map(|b| -b).collect();
        let mut pieces: Vec<LaurentPoly> = self
            .pieces
            .iter()
            .rev()
            .map(|p| if self.parity == Parity::Even { p.reflect() } else { -&p.reflect() })
            .collect();
        breaks.extend(self.breaks.iter().skip(1).cloned());
        pieces.extend(self.pieces.iter().cloned());
        (breaks, pieces)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "breaks": self.breaks.iter().map(fmt_rat).collect::<Vec<_>>(),
            "pieces": self.pieces.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
            "parity": match self.parity { Parity::Even => "even", Parity::Odd => "odd", Parity::None => "none" },
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| WalkError::Parse(format!("piecewise JSON: bad {what}"));
        let breaks = v["breaks"]
            .as_array()
            .ok_or_else(|| bad("breaks"))?
            .iter()
            .map(|b| b.as_str().ok_or_else(|| bad("breakpoint")).and_then(parse_rat))
            .collect::<Result<Vec<_>>>()?;
        let pieces = v["pieces"]
            .as_array()
            .ok_or_else(|| bad("pieces"))?
            .iter()
            .map(LaurentPoly::from_json)
            .collect::<Result<Vec<_>>>()?;
        let parity = match v["parity"].as_str() {
            Some("even") => Parity::Even,
            Some("odd") => Parity::Odd,
            Some("none") | None => Parity::None,
            Some(_) => return Err(bad("parity")),
        };
        PiecewiseFn::new(breaks, pieces, parity)
    }
}

/// ∫_L^U P(y) Q(x − y) dy as a polynomial in x, where L = a0 + a1 x, U = b0 + b1 x.
fn convolution_piece(
    p: &LaurentPoly,
    q: &LaurentPoly,
    lower: (&BigRat, &BigRat),
    upper: (&BigRat, &BigRat),
) -> Result<LaurentPoly> {
    // P(y) Q(x − y) = Σ_t y^t K_t(x), integrated in y.
    let mut anti: Vec<LaurentPoly> = Vec::new();
    for (s, ps) in p.terms() {
        for (qd, qc) in q.terms() {
            for r in 0..=qd {
                let sign = if r % 2 == 0 { 1 } else { -1 };
                let c = ps * qc * BigRat::from_integer(binomial(qd as u64, r as u64) * sign);
                let t = (r + s + 1) as usize;
                if anti.len() <= t {
                    anti.resize(t + 1, LaurentPoly::zero());
                }
                anti[t].add_term(qd - r, c / int(t as i64));
            }
        }
    }
    let eval_at = |a: &BigRat, b: &BigRat| -> Result<LaurentPoly> {
        let lin = LaurentPoly::from_coeffs(&[a.clone(), b.clone()]);
        let mut power = LaurentPoly::constant(BigRat::one());
        let mut out = LaurentPoly::zero();
        for k in &anti {
            if !k.is_zero() {
                out = &out + &(k * &power);
            }
            power = &power * &lin;
        }
        Ok(out)
    };
    Ok(&eval_at(upper.0, upper.1)? - &eval_at(lower.0, lower.1)?)
}

/// Exact convolution of compactly supported piecewise polynomials.
pub fn convolve(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    if f.pieces.iter().chain(g.pieces.iter()).any(|p| !p.is_polynomial()) {
        return Err(WalkError::Unsupported("convolution of pieces with negative exponents".into()));
    }
    let (fb, fp) = f.full_line();
    let (gb, gp) = g.full_line();
    let zero = BigRat::zero();
    let one = BigRat::one();
    let two = int(2);
    let mut parts: Vec<(BigRat, BigRat, LaurentPoly)> = Vec::new();
    for (i, p) in fp.iter().enumerate() {
        let (a, b) = (&fb[i], &fb[i + 1]);
        for (j, q) in gp.iter().enumerate() {
            let (c, d) = (&gb[j], &gb[j + 1]);
            let mut cuts = vec![a + c, a + d, b + c, b + d];
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                let mid = (&w[0] + &w[1]) / &two;
                let lower = if *a >= &mid - d { (a.clone(), zero.clone()) } else { (-d, one.clone()) };
                let upper = if *b <= &mid - c { (b.clone(), zero.clone()) } else { (-c, one.clone()) };
                let piece = convolution_piece(p, q, (&lower.0, &lower.1), (&upper.0, &upper.1))?;
                parts.push((w[0].clone(), w[1].clone(), piece));
            }
        }
    }
    let parity = f.parity.product(g.parity);
    let mut breaks: Vec<BigRat> = parts.iter().flat_map(|(u, v, _)| [u.clone(), v.clone()]).collect();
    if parity != Parity::None {
        breaks.push(zero.clone());
    }
    breaks.sort();
    breaks.dedup();
    let mut pieces = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        let mut acc = LaurentPoly::zero();
        for (u, v, poly) in &parts {
            if *u <= w[0] && w[1] <= *v {
                acc = &acc + poly;
            }
        }
        pieces.push(acc);
    }
    if parity == Parity::None {
        return PiecewiseFn::new(breaks, pieces, Parity::None);
    }
    let start = breaks.iter().position(|b| b.is_zero()).ok_or_else(|| WalkError::Invariant("symmetric convolution lost 0".into()))?;
    PiecewiseFn::new(breaks[start..].to_vec(), pieces[start..].to_vec(), parity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rat::rat;
    use proptest::prelude::*;

    fn poly(c: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_coeffs(&c.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>())
    }

    #[test]
    fn box_convolutions() {
        let b1 = PiecewiseFn::sphere_kernel(1).unwrap();
        assert_eq!(b1.pieces()[0], LaurentPoly::constant(rat(1, 2)));
        let p12 = convolve(&b1, &b1).unwrap();
        // (2 − |x|)/4 on [0, 2]
        assert_eq!(p12.breaks(), &[int(0), int(1), int(2)]);
        for piece in p12.pieces() {
            assert_eq!(piece, &poly(&[(1, 2), (-1, 4)]));
        }
        let p13 = convolve(&b1, &p12).unwrap();
        assert_eq!(p13.breaks(), &[int(0), int(1), int(2), int(3)]);
        assert_eq!(p13.pieces()[0], poly(&[(3, 8), (0, 1), (-1, 8)]));
        // (x − 3)²/16
        let tail = poly(&[(9, 16), (-6, 16), (1, 16)]);
        assert_eq!(p13.pieces()[1], tail);
        assert_eq!(p13.pieces()[2], tail);
    }

    #[test]
    fn unit_box_identity() {
        // Convolving with a narrow box of mass one averages; a constant on a wide box stays constant inside.
        let wide = PiecewiseFn::new(vec![int(-10), int(10)], vec![LaurentPoly::constant(int(1))], Parity::None).unwrap();
        let narrow = PiecewiseFn::new(vec![rat(-1, 2), rat(1, 2)], vec![LaurentPoly::constant(int(1))], Parity::None).unwrap();
        let c = convolve(&wide, &narrow).unwrap();
        assert_eq!(c.eval_rat(&int(0)).unwrap(), int(1));
        assert_eq!(c.eval_rat(&int(9)).unwrap(), int(1));
        assert_eq!(c.integral().unwrap(), int(20));
    }

    #[test]
    fn evaluation_rules() {
        let f = PiecewiseFn::new(
            vec![int(0), int(1), int(2)],
            vec![LaurentPoly::constant(int(1)), LaurentPoly::constant(int(5))],
            Parity::None,
        )
        .unwrap();
        assert_eq!(f.eval_rat(&int(1)).unwrap(), int(1));
        assert_eq!(f.eval(1.5).unwrap(), 5.0);
        assert!(f.eval(2.5).is_err());
        assert!(f.eval_rat(&int(-1)).is_err());
    }

    #[test]
    fn rejects_negative_exponents() {
        let f = PiecewiseFn::new(vec![int(0), int(1)], vec![LaurentPoly::monomial(int(1), -2)], Parity::Even).unwrap();
        assert!(convolve(&f, &f).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b = PiecewiseFn::sphere_kernel(3).unwrap();
        let c = convolve(&b, &b).unwrap();
        assert_eq!(PiecewiseFn::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn kernels_are_normalised() {
        for m in 1..6 {
            assert_eq!(PiecewiseFn::sphere_kernel(m).unwrap().integral_full().unwrap(), int(1));
        }
    }

    fn piecewise() -> impl Strategy<Value = PiecewiseFn> {
        (1usize..3, proptest::collection::vec(proptest::collection::vec(-5i64..6, 1..3), 3))
            .prop_map(|(np, cs)| {
                let breaks: Vec<BigRat> = (0..=np).map(|i| int(i as i64 - 1)).collect();
                let pieces = cs[..np].iter().map(|c| LaurentPoly::from_coeffs(&c.iter().map(|&v| int(v)).collect::<Vec<_>>())).collect();
                PiecewiseFn::new(breaks, pieces, Parity::None).unwrap()
            })
    }

    proptest! {
        #[test]
        fn convolution_commutes_and_multiplies_mass(f in piecewise(), g in piecewise()) {
            let fg = convolve(&f, &g).unwrap();
            let gf = convolve(&g, &f).unwrap();
            for k in -8..=8 {
                let x = rat(k, 4);
                let (lo, hi) = fg.domain();
                if &x >= lo && &x <= hi {
                    prop_assert_eq!(fg.eval_rat(&x).unwrap(), gf.eval_rat(&x).unwrap());
                }
            }
            prop_assert_eq!(fg.integral().unwrap(), f.integral().unwrap() * g.integral().unwrap());
        }

        #[test]
        fn kernel_powers_stay_normalised(m in 1u32..4, n in 1usize..4) {
            let k = PiecewiseFn::sphere_kernel(m).unwrap();
            let mut acc = k.clone();
            for _ in 1..n {
                acc = convolve(&acc, &k).unwrap();
            }
            prop_assert_eq!(acc.integral_full().unwrap(), int(1));
        }
    }
}
