use crate::error::{Result, WalkError};
use crate::numcore::{int, rat, Basis, ConstCombo};

/// Taylor coefficients of the planar five-step density: p₅(0;x) = Σ r_k x^{2k+1}.
#[derive(Debug, Clone)]
pub struct TaylorDensity {
    /// Coefficient of x^{2k+1} over {r₅₀, 1/(π⁴ r₅₀)}.
    pub coeffs: Vec<ConstCombo>,
}

impl TaylorDensity {
    pub fn numeric(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// Checks the four-term recursion exactly on every stored window.
    pub fn satisfies_recursion(&self) -> bool {
        let zero = ConstCombo::zero(Basis::FiveStep);
        (0..self.coeffs.len().saturating_sub(2)).all(|k| {
            let prev = if k == 0 { &zero } else { &self.coeffs[k - 1] };
            step(k as i64, prev, &self.coeffs[k], &self.coeffs[k + 1]) == self.coeffs[k + 2]
        })
    }

    /// Σ r_k x^{2k+1}; the expansion is used on [0, 1).
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&x) {
            return Err(WalkError::Domain(format!("the expansion at 0 is used on [0, 1), got x = {x}")));
        }
        let x2 = x * x;
        let mut sum = 0.0;
        let mut pow = x;
        for r in self.numeric() {
            sum += r * pow;
            pow *= x2;
        }
        Ok(sum)
    }
}

fn step(k: i64, rm1: &ConstCombo, r0: &ConstCombo, r1: &ConstCombo) -> ConstCombo {
    let a = 2 * k + 2;
    let b = 2 * k + 1;
    let lead = int((15 * a * (2 * k + 4)).pow(2));
    let c1 = int(259 * a.pow(4) + 104 * a * a);
    let c0 = int(35 * b.pow(4) + 42 * b * b + 3);
    let cm = int((2 * k).pow(4));
    r1.lin(&(c1 / &lead), r0, &(-c0 / &lead)).lin(&int(1), rm1, &(cm / lead))
}

/// Coefficients r₅,₀ … r₅,kmax.
pub fn p5_taylor(kmax: usize) -> Result<TaylorDensity> {
    if kmax < 2 {
        return Err(WalkError::Domain(format!("kmax must be at least 2, got {kmax}")));
    }
    let mut coeffs = vec![
        ConstCombo::new(Basis::FiveStep, vec![int(1), int(0)])?,
        ConstCombo::new(Basis::FiveStep, vec![rat(13, 225), rat(-2, 5)])?,
    ];
    let zero = ConstCombo::zero(Basis::FiveStep);
    for k in 0..kmax - 1 {
        let prev = if k == 0 { &zero } else { &coeffs[k - 1] };
        let next = step(k as i64, prev, &coeffs[k], &coeffs[k + 1]);
        coeffs.push(next);
    }
    Ok(TaylorDensity { coeffs })
}

/// p₅(0;x) for 0 ≤ x < 1 from the expansion at 0.
pub fn p5_eval(x: f64) -> Result<f64> {
    p5_taylor(60)?.eval(x)
}
