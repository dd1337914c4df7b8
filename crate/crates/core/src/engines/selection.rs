use rand::Rng;

/// Binary tournament over `0..n`: draws two members uniformly (with
/// replacement) and returns the second only if `better(second, first)`, so
/// exact ties go to the first draw.
///
/// # Panics
///
/// If `n == 0`.
pub fn binary_tournament<R, F>(n: usize, rng: &mut R, better: F) -> usize
where
    R: Rng + ?Sized,
    F: Fn(usize, usize) -> bool,
{
    assert!(n > 0, "tournament over an empty population");
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    if better(b, a) {
        b
    } else {
        a
    }
}

/// Fitness-proportionate (roulette-wheel) selection on non-negative
/// `fitness`; falls back to a uniform draw when the total is not positive.
pub fn proportionate<R: Rng + ?Sized>(fitness: &[f64], rng: &mut R) -> usize {
    assert!(!fitness.is_empty(), "selection from an empty population");
    let total: f64 = fitness.iter().map(|f| f.max(0.0)).sum();
    if !(total > 0.0 && total.is_finite()) {
        return rng.gen_range(0..fitness.len());
    }
    let mut target = rng.gen::<f64>() * total;
    for (i, f) in fitness.iter().enumerate() {
        target -= f.max(0.0);
        if target < 0.0 {
            return i;
        }
    }
    fitness
        .iter()
        .rposition(|&f| f > 0.0)
        .expect("positive total")
}
