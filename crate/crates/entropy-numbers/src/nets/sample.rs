//! Seeded samplers for audit point clouds on `B_{l_p^m}`.

use crate::space::{quasi_norm_unchecked, Exponent};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random point of the unit ball: uniform direction from the cube,
/// rescaled to the `l_p` sphere, then pulled inward by a random radius
/// `t^(1/m)`. Dense on the closed ball including its boundary.
pub fn random_ball_point(rng: &mut ChaCha8Rng, dim: usize, p: Exponent) -> Vec<f64> {
    loop {
        let y: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = quasi_norm_unchecked(&y, p);
        if norm < 1e-12 {
            continue;
        }
        let t: f64 = rng.gen_range(0.0..1.0f64);
        let radius = t.powf(1.0 / dim as f64);
        return y.iter().map(|c| c / norm * radius).collect();
    }
}

/// Deterministic boundary stress points: the axis extremes and, for small
/// dimension, every full sign vector scaled to the `l_p` sphere.
pub fn extreme_points(dim: usize, p: Exponent) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; dim];
            c[i] = sign;
            out.push(c);
        }
    }
    if dim <= 12 {
        let scale = (dim as f64).powf(-p.recip());
        for bits in 0..(1u32 << dim) {
            out.push(
                (0..dim)
                    .map(|i| if bits >> i & 1 == 1 { -scale } else { scale })
                    .collect(),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Exponent;
    use rand::SeedableRng;

    #[test]
    fn samples_stay_in_the_ball() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &p in &[Exponent::Finite(0.5), Exponent::Finite(1.0), Exponent::Finite(2.0)] {
            for _ in 0..2000 {
                let x = random_ball_point(&mut rng, 3, p);
                assert!(quasi_norm_unchecked(&x, p) <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn extreme_points_on_the_sphere() {
        let p = Exponent::Finite(1.0);
        for x in extreme_points(3, p) {
            assert!((quasi_norm_unchecked(&x, p) - 1.0).abs() < 1e-9);
        }
    }
}
