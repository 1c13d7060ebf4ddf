//! Seeded random ideal generators for the check suites.
//!
//! Plane (`d = 2`) m-primary monomial ideals are always finitely
//! supported, so they can be drawn freely. In `d = 3` the generator family
//! is products of powers of the maximal ideal with order-one factors of
//! the shape `(x, y, z^k)` (in any coordinate arrangement), filtered
//! through principalization; such products are frequently finitely
//! supported, and the family always contains plain powers of the maximal
//! ideal, so rejection sampling terminates.

use crate::monomial::{principalize, MonomialIdeal, Principalization};
use rand::Rng;

/// Random m-primary ideal in two variables: pure powers of both variables
/// (up to `max_exp`) plus a few mixed generators.
pub fn random_d2_m_primary(rng: &mut impl Rng, max_exp: i64) -> MonomialIdeal {
    let a = rng.gen_range(1..=max_exp);
    let b = rng.gen_range(1..=max_exp);
    let mut gens = vec![vec![a, 0], vec![0, b]];
    for _ in 0..rng.gen_range(0..=3) {
        if a > 1 && b > 1 {
            gens.push(vec![rng.gen_range(1..a), rng.gen_range(1..b)]);
        }
    }
    MonomialIdeal::new(2, gens).expect("nonempty generators")
}

/// One order-one factor `(x_i, x_j, x_k^e)` with `{i, j, k}` a coordinate
/// arrangement and `e <= 3`.
fn order_one_factor(rng: &mut impl Rng) -> MonomialIdeal {
    let mut axes = [0usize, 1, 2];
    // cheap Fisher-Yates
    for i in (1..3).rev() {
        axes.swap(i, rng.gen_range(0..=i));
    }
    let e = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    for (slot, &axis) in axes.iter().enumerate() {
        let mut v = vec![0i64; 3];
        v[axis] = if slot == 2 { e } else { 1 };
        gens.push(v);
    }
    MonomialIdeal::new(3, gens).expect("pure generators")
}

/// Random finitely supported m-primary ideal in three variables.
pub fn random_d3_finitely_supported(rng: &mut impl Rng) -> MonomialIdeal {
    loop {
        let a = rng.gen_range(0..=2u32);
        let factors = rng.gen_range(0..=2usize);
        if a == 0 && factors == 0 {
            continue;
        }
        let mut ideal = MonomialIdeal::maximal(3).pow(a);
        for _ in 0..factors {
            ideal = ideal.product(&order_one_factor(rng)).expect("same dim");
        }
        if !ideal.is_m_primary() {
            continue;
        }
        if let Ok(Principalization::Tree(_)) = principalize(std::slice::from_ref(&ideal)) {
            return ideal;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn d2_generator_is_m_primary_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let i = random_d2_m_primary(&mut rng, 8);
            assert!(i.is_m_primary());
            assert!(i.gens().iter().all(|g| g.iter().all(|&e| e <= 8)));
        }
    }

    #[test]
    fn d3_generator_yields_finitely_supported_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let i = random_d3_finitely_supported(&mut rng);
            assert!(i.is_m_primary());
            let p = principalize(&[i]).unwrap();
            assert!(matches!(p, Principalization::Tree(_)));
        }
    }

    #[test]
    fn generators_are_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            assert_eq!(
                random_d2_m_primary(&mut a, 8),
                random_d2_m_primary(&mut b, 8)
            );
        }
    }
}
