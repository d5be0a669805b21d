//! Layer occupation through the renewal structure of the center column.
//!
//! Every center arrival is a renewal; the `i`-th center particle sits at
//! `psi_1 + ... + psi_i`. The weight `w_i(r)` is the probability that this sum
//! equals `r`, and layer `r` is eventually occupied with probability
//! `sum_i w_i(r)`.

use crate::analytic::psi::PsiPmf;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Largest layer accepted by [`renewal_weights_naive`]; it visits `2^(r-1)` compositions.
pub const NAIVE_MAX_LAYER: u32 = 14;

/// Per-renewal weights for one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct RenewalWeights<T> {
    layer: u32,
    weights: Vec<T>,
}

impl<T: Scalar> RenewalWeights<T> {
    pub fn layer(&self) -> u32 {
        self.layer
    }

    /// `w_i` for `i = 1..=layer`, stored from index 0.
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `w_i`, or `None` outside `1..=layer`.
    pub fn weight(&self, i: u32) -> Option<&T> {
        i.checked_sub(1).and_then(|j| self.weights.get(j as usize))
    }

    /// Eventual occupation probability of the layer.
    pub fn total(&self) -> T {
        self.weights.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

/// `w_i(r)` for `i = 1..=r` by repeated convolution with the `psi` pmf.
///
/// Row `i` holds `P(psi_1 + ... + psi_i = s)` for `s = i..=r`; each row costs
/// `O(r^2)` multiplications, never enumerating compositions.
pub fn renewal_weights<T: Scalar>(r: u32) -> Result<RenewalWeights<T>> {
    if r == 0 {
        return Err(Error::ZeroLayer);
    }
    let pmf = PsiPmf::<T>::new(r)?;
    let p = pmf.probs();
    let n = r as usize;

    // row[s] = P(sum of i distances = s), s in 0..=n.
    let mut row: Vec<T> = std::iter::once(T::zero())
        .chain(p.iter().cloned())
        .collect();
    let mut weights = Vec::with_capacity(n);
    weights.push(row[n].clone());

    for i in 2..=n {
        let mut next = vec![T::zero(); n + 1];
        for (s, slot) in next.iter_mut().enumerate().skip(i) {
            // The previous row is zero below i - 1.
            let mut acc = T::zero();
            for d in 1..=(s + 1 - i) {
                acc = acc + p[d - 1].clone() * row[s - d].clone();
            }
            *slot = acc;
        }
        row = next;
        weights.push(row[n].clone());
    }

    Ok(RenewalWeights { layer: r, weights })
}

/// Same contract as [`renewal_weights`], by listing every composition of `r`.
///
/// Exponential in `r`; kept as an independent check of the convolution.
pub fn renewal_weights_naive<T: Scalar>(r: u32) -> Result<RenewalWeights<T>> {
    if r == 0 {
        return Err(Error::ZeroLayer);
    }
    if r > NAIVE_MAX_LAYER {
        return Err(Error::LayerTooLarge {
            layer: r,
            max: NAIVE_MAX_LAYER,
        });
    }
    let pmf = PsiPmf::<T>::new(r)?;
    let n = r as usize;
    let mut weights = vec![T::zero(); n];

    // Bit j of the mask set means a part boundary after unit j + 1.
    for mask in 0u32..(1 << (r - 1)) {
        let mut product = T::one();
        let mut start = 0u32;
        for cut in 1..=r {
            if cut == r || mask & (1 << (cut - 1)) != 0 {
                product = product * pmf.get(cut - start).expect("part within table").clone();
                start = cut;
            }
        }
        let parts = mask.count_ones() as usize + 1;
        weights[parts - 1] = weights[parts - 1].clone() + product;
    }

    Ok(RenewalWeights { layer: r, weights })
}

/// Eventual occupation probabilities `u_0, u_1, ..., u_{r_max}` with `u_0 = 1`,
/// from the renewal equation `u_r = sum_{d=1}^{r} P(psi = d) u_{r-d}`.
pub fn end_density_sequence<T: Scalar>(r_max: u32) -> Vec<T> {
    let n = r_max as usize;
    let mut u = Vec::with_capacity(n + 1);
    u.push(T::one());
    if n == 0 {
        return u;
    }
    let pmf = PsiPmf::<T>::new(r_max).expect("r_max is positive");
    let p = pmf.probs();
    for r in 1..=n {
        let value = (1..=r).fold(T::zero(), |acc, d| {
            acc + p[d - 1].clone() * u[r - d].clone()
        });
        u.push(value);
    }
    u
}

/// `rho_inf(0, r)`: probability that center site `(0, r)` is ever occupied.
pub fn end_density<T: Scalar>(r: u32) -> Result<T> {
    if r == 0 {
        return Err(Error::ZeroLayer);
    }
    Ok(end_density_sequence::<T>(r)
        .pop()
        .expect("sequence is non-empty"))
}

/// Time-dependent density of a center layer in closed form:
/// `rho_t = C - e^{-t} sum_{l=0}^{r} b_l t^l / l!`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile<T> {
    layer: u32,
    constant: T,
    coeffs: Vec<T>,
}

impl<T: Scalar> DensityProfile<T> {
    pub fn layer(&self) -> u32 {
        self.layer
    }

    /// The `t -> infinity` limit `C`.
    pub fn constant(&self) -> &T {
        &self.constant
    }

    /// `b_0, ..., b_r`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Evaluate at time `t` in floating point.
    ///
    /// The envelope is summed as Poisson probabilities `e^{-t} t^l / l!`, built
    /// up multiplicatively, so large `t` underflows to the constant rather
    /// than overflowing.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidTime(t));
        }
        let constant = self.constant.to_f64();
        let mut poisson = (-t).exp();
        let mut envelope = 0.0;
        for (l, b) in self.coeffs.iter().enumerate() {
            if l > 0 {
                poisson *= t / l as f64;
            }
            envelope += b.to_f64() * poisson;
        }
        Ok((constant - envelope).clamp(0.0, constant))
    }
}

/// Closed-form time profile of layer `r`.
///
/// `b_0 = C = sum_i w_i` and `b_l = sum_{i >= l} w_i` for `l >= 1`: renewal `i`
/// contributes `w_i (1 - e^{-t} sum_{l=0}^{i} t^l / l!)`.
pub fn density_profile<T: Scalar>(r: u32) -> Result<DensityProfile<T>> {
    let weights = renewal_weights::<T>(r)?;
    let w = weights.weights();
    let n = r as usize;

    // tails[l] = sum_{i >= l} w_i for l = 1..=n.
    let mut tails = vec![T::zero(); n + 1];
    let mut acc = T::zero();
    for l in (1..=n).rev() {
        acc = acc + w[l - 1].clone();
        tails[l] = acc.clone();
    }
    let constant = acc;
    tails[0] = constant.clone();

    Ok(DensityProfile {
        layer: r,
        constant,
        coeffs: tails,
    })
}

/// Floating-point value of the closed-form profile of layer `r` at time `t`.
pub fn density_at(r: u32, t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidTime(t));
    }
    density_profile::<Rational>(r)?.evaluate(t)
}
