#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sopq_core::curve::{from_coords, new_curve, pluri_dim, CurveModel, PluriSection};
use sopq_core::exact::{int, FFElem, Rational};
use sopq_core::hitchin::seeded_input;
use sopq_core::invariants::Z2Class;
use sopq_core::model::{build_exotic_model, HiggsModel, OrthogonalSplitBundle, TwistedPair};

/// `y² = x^{2g+2} + 3`, which has the rational points `(±1, ±2)`.
pub fn curve(g: usize) -> CurveModel {
    let mut c = vec![int(0); 2 * g + 3];
    c[0] = int(3);
    c[2 * g + 2] = int(1);
    new_curve(g, &c).unwrap()
}

pub fn random_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            Rational::new(
                rng.gen_range(-7i64..=7).into(),
                rng.gen_range(1i64..=4).into(),
            )
        })
        .collect()
}

pub fn random_section(rng: &mut ChaCha8Rng, c: &CurveModel, m: i64) -> PluriSection {
    let coords = random_coords(rng, pluri_dim(c.genus(), m));
    from_coords(c, m, &coords).unwrap()
}

/// `W₀` with hyperbolic pairs `K^e ⊕ K^{−e}`, `e = 1, 2, …`, and trivial summands filling
/// the rank `q−p+1`.
pub fn w0_for(p: usize, q: usize, g: usize, pairs: usize) -> OrthogonalSplitBundle {
    let n = q - p + 1;
    let pairs = pairs.min(n / 2);
    let twists = (1..=pairs as i64).collect();
    OrthogonalSplitBundle::new(twists, n - 2 * pairs, Z2Class::zero(g)).unwrap()
}

pub fn random_model(c: &CurveModel, p: usize, q: usize, pairs: usize, seed: u64) -> HiggsModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let w0 = w0_for(p, q, c.genus(), pairs);
    let eta_p = TwistedPair::component_twists(p, &w0)
        .into_iter()
        .map(|m| random_section(&mut rng, c, m))
        .collect();
    let pair = TwistedPair::new(c, p, w0, eta_p).unwrap();
    build_exotic_model(&pair, &seeded_input(c, p, seed).unwrap(), q).unwrap()
}

/// Evaluates `a(x₀) + b(x₀)·y₀` at a point of the curve.
pub fn eval_at(e: &FFElem, x0: &Rational, y0: &Rational) -> Rational {
    e.a().eval(x0) + e.b().eval(x0) * y0
}
