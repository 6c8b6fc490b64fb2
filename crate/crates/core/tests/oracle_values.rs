//! Values computed at 40 digits by `oracles/potential_oracle.py`.

use gelfond_core::debruijn::{code_to_orbit, OrbitPoint};
use gelfond_core::potential::{eval_g, eval_g_d, haar_average, integrate_cells, PotentialSpec};
use gelfond_core::verify::exponent_from_orbit;
use gelfond_core::DyadicRational;

fn dy(s: &str) -> DyadicRational {
    s.parse().unwrap()
}

const A3_HALF: [f64; 8] = [
    -0.960_547_178_929_730_494_68,
    -0.609_232_346_091_924_618_93,
    -0.193_940_206_966_328_439_62,
    -0.026_110_538_030_287_058_656,
    -0.026_110_538_030_287_058_656,
    -0.193_940_206_966_328_439_62,
    -0.609_232_346_091_924_618_93,
    -0.960_547_178_929_730_494_68,
];

const A3_THREE_QUARTERS: [f64; 8] = [
    -0.193_940_206_966_328_439_62,
    -0.026_110_538_030_287_058_656,
    -0.026_110_538_030_287_058_656,
    -0.193_940_206_966_328_439_62,
    -0.609_232_346_091_924_618_93,
    -0.960_547_178_929_730_494_68,
    -0.960_547_178_929_730_494_68,
    -0.193_940_206_966_328_439_62,
];

#[test]
fn pointwise_values() {
    let v = eval_g(dy("1/4"), 7.0 / 15.0).as_f64();
    assert!((v - -0.463_114_786_225_378_895_87).abs() < 1e-14);
    let spec = PotentialSpec::new(dy("1/2"), 6, 6).unwrap();
    assert!((eval_g_d(&spec, 0.001) - -3.014_554_825_002_117_394_2).abs() < 1e-14);
    let spec = PotentialSpec::new(dy("3/8"), 4, 4).unwrap();
    assert!((eval_g_d(&spec, 0.1) - -1.634_292_637_831_385_545_1).abs() < 1e-14);
}

#[test]
fn level_three_averages_within_reported_error() {
    for (c, expected) in [("1/2", A3_HALF), ("3/4", A3_THREE_QUARTERS)] {
        let spec = PotentialSpec::new(dy(c), 3, 3).unwrap();
        assert!(spec.is_valid());
        let cells = integrate_cells(&spec, 20, 3).unwrap();
        let averages = haar_average(&cells, 3).unwrap();
        for (k, want) in expected.iter().enumerate() {
            let err = (averages.at(k).value - want).abs();
            let eps = averages.epsilons()[k];
            assert!(err <= eps, "c = {c}, cell {k}: error {err:e} exceeds bound {eps:e}");
            assert!(eps < 1e-4);
        }
    }
}

#[test]
fn total_integral_within_reported_error() {
    let spec = PotentialSpec::new(dy("1/2"), 3, 3).unwrap();
    let cells = integrate_cells(&spec, 22, 10).unwrap();
    let total: f64 = cells.cells().map(|c| c.value).sum();
    let bound: f64 = cells.cells().map(|c| c.epsilon).sum();
    let err = (total - -0.447_457_567_504_567_652_97).abs();
    assert!(err <= bound, "{err:e} > {bound:e}");
    assert!(bound < 1e-5);
}

#[test]
fn exponents_of_known_orbits() {
    let cases = [
        ("1/2", "01", 0.792_481_250_360_578_090_73),
        ("1/4", "0111", 0.744_227_606_620_520_881_61),
        ("3/8", "011", 0.741_634_673_755_196_677_83),
    ];
    for (c, code, want) in cases {
        let orbit = code_to_orbit(code.parse().unwrap()).unwrap();
        let (_, delta) = exponent_from_orbit(dy(c), &orbit).unwrap();
        assert!((delta - want).abs() < 1e-13, "c = {c}: {delta} vs {want}");
    }
    let orbit = code_to_orbit("0111".parse().unwrap()).unwrap();
    let expected: Vec<OrbitPoint> = [7, 11, 13, 14].iter().map(|&k| OrbitPoint::new(k, 15).unwrap()).collect();
    assert_eq!(orbit, expected);
}
