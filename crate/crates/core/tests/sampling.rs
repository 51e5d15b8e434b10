use barnesbeta::mellin::{eta, BarnesBetaParams};
use barnesbeta::quad::QuadratureConfig;
use barnesbeta::sampling::{
    mc_mellin, mc_mellin_streams, sample_beta_compound, sample_beta_product, sample_elementary, BetaSampler, ElementaryLaw, RngStream, Variate,
};
use barnesbeta::special::gamma_real;
use num_complex::Complex;
use rand::RngCore;

const N: usize = 100_000;

fn within(stats: barnesbeta::SampleStats, target: f64, sigmas: f64) -> bool {
    (stats.mean - target).abs() < sigmas * stats.stderr
}

fn m0n1() -> BarnesBetaParams<f64> {
    BarnesBetaParams::new(vec![], 1.0, vec![1.0]).unwrap()
}

struct One;

impl Variate for One {
    fn draw(&self, _: &mut dyn RngCore) -> f64 {
        1.0
    }
}

#[test]
fn constant_sampler() {
    let mut rng = RngStream::new(1, 0).rng();
    let s = mc_mellin(&One, 2.0, 1000, &mut rng).unwrap();
    assert_eq!((s.mean, s.stderr), (1.0, 0.0));
}

#[test]
fn compound_atom_and_mean() {
    let cfg = QuadratureConfig::default();
    let p = m0n1();
    let sampler = BetaSampler::compound(&p, &cfg).unwrap();
    assert!((sampler.lambda() - 2f64.ln()).abs() < 1e-12);
    let mut rng = RngStream::new(7, 0).rng();
    let xs = sample_beta_compound(&p, &mut rng, N, &cfg).unwrap();
    assert!(xs.iter().all(|&x| x > 0.0 && x <= 1.0));
    let ones = xs.iter().filter(|&&x| x == 1.0).count() as f64 / N as f64;
    assert!((ones - 0.5).abs() < 3.0 * (0.25 / N as f64).sqrt(), "{ones}");
    let mean = xs.iter().sum::<f64>() / N as f64;
    let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (N - 1) as f64 / N as f64).sqrt();
    assert!((mean - 0.75).abs() < 3.0 * sd);
}

#[test]
fn compound_rejects_m_at_least_n() {
    let cfg = QuadratureConfig::default();
    let p = BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0]).unwrap();
    assert!(BetaSampler::compound(&p, &cfg).unwrap_err().is_domain());
}

#[test]
fn replications_track_eta() {
    let cfg = QuadratureConfig::default();
    let p = BarnesBetaParams::new(vec![1.0], 0.8, vec![0.7, 1.9]).unwrap();
    let sampler = BetaSampler::compound(&p, &cfg).unwrap();
    for q in [0.5, 1.0, 2.0] {
        let target = eta(&p, Complex::new(q, 0.0), &cfg).unwrap().value.re;
        let hits = (0..20u64).filter(|&r| within(mc_mellin_streams(&sampler, q, 20_000, 100 + r, 4).unwrap(), target, 3.0)).count();
        assert!(hits >= 18, "q={q}: {hits}/20");
    }
}

#[test]
fn product_sampler_one_period() {
    let cfg = QuadratureConfig::default();
    let p = BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0]).unwrap();
    let target = eta(&p, Complex::new(1.0, 0.0), &cfg).unwrap().value.re;
    let mut rng = RngStream::new(3, 0).rng();
    let (_, s) = sample_beta_product(&p, &mut rng, 0, 200, true, &cfg).unwrap();
    assert!(s.warning.is_none());
    assert!(within(mc_mellin(&s, 1.0, N, &mut rng).unwrap(), target, 3.0));
}

#[test]
fn product_sampler_two_periods() {
    let cfg = QuadratureConfig::default();
    let p = BarnesBetaParams::new(vec![1.0, 2.0], 1.0, vec![1.0, 1.0]).unwrap();
    let target = eta(&p, Complex::new(1.0, 0.0), &cfg).unwrap().value.re;
    let s = BetaSampler::product(&p, 0, 200, true, 1e-4, &cfg).unwrap();
    assert!(within(mc_mellin_streams(&s, 1.0, N, 11, 4).unwrap(), target, 3.0));
}

#[test]
fn product_truncation_bias_shrinks_with_k() {
    let cfg = QuadratureConfig::default();
    let p = BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0]).unwrap();
    let t1 = BetaSampler::product(&p, 0, 100, false, 1e-6, &cfg).unwrap();
    let t2 = BetaSampler::product(&p, 0, 200, false, 1e-6, &cfg).unwrap();
    assert!(t1.tail_mean > t2.tail_mean && t2.tail_mean > 0.0);
    assert!(t1.warning.is_some());
}

#[test]
fn elementary_laws() {
    let mut rng = RngStream::new(5, 1).rng();
    let fr = ElementaryLaw::Frechet { tau: 2.0 };
    assert!(within(mc_mellin(&fr, 0.5, N, &mut rng).unwrap(), gamma_real(0.75).unwrap(), 3.0));
    assert!(within(mc_mellin(&ElementaryLaw::Beta00 { b0: 2.0 }, 1.0, N, &mut rng).unwrap(), 2.0 / 3.0, 3.0));
    assert!(within(mc_mellin(&ElementaryLaw::Pareto23, -1.0, N, &mut rng).unwrap(), 2.0 / 3.0, 3.0));
    assert!(within(mc_mellin(&ElementaryLaw::Lognormal { sigma2: 1.0 }, 1.0, N, &mut rng).unwrap(), 0.5f64.exp(), 3.0));
    assert!(within(mc_mellin(&ElementaryLaw::Gamma2, 1.0, N, &mut rng).unwrap(), 2.0, 3.0));
    assert!(within(mc_mellin(&ElementaryLaw::Exp { rate: 4.0 }, 1.0, N, &mut rng).unwrap(), 0.25, 3.0));
}

#[test]
fn elementary_rejects_bad_parameters() {
    let mut rng = RngStream::new(5, 1).rng();
    assert!(sample_elementary(ElementaryLaw::Frechet { tau: 0.0 }, &mut rng, 3).is_err());
    assert!(sample_elementary(ElementaryLaw::Beta00 { b0: -1.0 }, &mut rng, 3).is_err());
    assert!(sample_elementary(ElementaryLaw::Exp { rate: f64::NAN }, &mut rng, 3).is_err());
}

#[test]
fn reproducible_streams() {
    let cfg = QuadratureConfig::default();
    let p = m0n1();
    let draw = |seed, stream| sample_beta_compound(&p, &mut RngStream::new(seed, stream).rng(), 500, &cfg).unwrap();
    assert_eq!(draw(9, 0), draw(9, 0));
    assert_ne!(draw(9, 0), draw(9, 1));
    assert_ne!(draw(9, 0), draw(10, 0));
    let s = BetaSampler::compound(&p, &cfg).unwrap();
    assert_eq!(mc_mellin_streams(&s, 1.0, 10_001, 4, 3).unwrap(), mc_mellin_streams(&s, 1.0, 10_001, 4, 3).unwrap());
}
