use std::f64::consts::PI;
use zeta_geometry::arith::*;
use zeta_geometry::zeros::scan_zeros;
use zeta_geometry::zeta::{zeta_em_auto, zeta_geometric};
use zeta_geometry::{Complex64, Error, SParam};

fn s(sigma: f64, t: f64) -> SParam {
    SParam::new(sigma, t).unwrap()
}

#[test]
fn prime_counts() {
    assert_eq!(sieve(100).unwrap().len(), 25);
    assert_eq!(sieve(100_000).unwrap().len(), 9592);
    assert!(sieve(1).unwrap().is_empty());
    assert!(matches!(sieve(MAX_SIEVE + 1), Err(Error::Range(_))));
}

#[test]
fn von_mangoldt() {
    assert_eq!(mangoldt(1).unwrap(), 0.0);
    assert_eq!(mangoldt(6).unwrap(), 0.0);
    assert_eq!(mangoldt(7).unwrap(), 7f64.ln());
    assert_eq!(mangoldt(8).unwrap(), 2f64.ln());
    assert_eq!(mangoldt(81).unwrap(), 3f64.ln());
    assert!(mangoldt(0).is_err());
}

#[test]
fn character_column_sums() {
    for k in [5, 7, 8, 12, 15, 16, 24, 63, 100] {
        let chars = characters(k).unwrap();
        let phi = chars.len() as f64;
        for n in 0..k {
            let sum: Complex64 = chars.iter().map(|c| c.eval(n)).sum();
            let want = if n % k == 1 % k { phi } else { 0.0 };
            assert!((sum - want).norm() < 1e-12, "k = {k}, n = {n}: {sum}");
        }
    }
}

#[test]
fn character_rows_are_orthogonal() {
    for k in [9, 20, 32] {
        let chars = characters(k).unwrap();
        let phi = chars.len() as f64;
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let dot: Complex64 = (0..k).map(|n| a.eval(n) * b.eval(n).conj()).sum();
                let want = if i == j { phi } else { 0.0 };
                assert!((dot - want).norm() < 1e-12, "k = {k}: ({i}, {j})");
            }
        }
    }
}

#[test]
fn k7_is_a_cyclic_group_of_sixth_roots() {
    let chars = characters(7).unwrap();
    assert_eq!(chars.len(), 6);
    assert_eq!(chars.iter().filter(|c| c.is_real()).count(), 2);
    let w = Complex64::from_polar(1.0, PI / 3.0);
    for c in &chars {
        assert_eq!(c.eval(0), Complex64::new(0.0, 0.0));
        assert_eq!(c.eval(1), Complex64::new(1.0, 0.0));
        // 3 generates (Z/7)^*, so χ(3) fixes the character
        assert!((0..6).any(|j| (c.eval(3) - w.powi(j)).norm() < 1e-12));
    }
}

#[test]
fn character_modulus_limits() {
    assert!(characters(0).is_err());
    assert!(characters(MAX_CHARACTER_MODULUS + 1).is_err());
    assert_eq!(characters(1).unwrap().len(), 1);
}

// ζ(s, a) from mpmath at 30 digits.
const HURWITZ: [(f64, f64, f64, f64, f64); 4] = [
    (
        0.5,
        10_911.995_1,
        1.0 / 7.0,
        -3.223_089_995_402_042,
        5.093_763_979_079_811,
    ),
    (
        0.5,
        100.0,
        0.3,
        0.558_735_594_632_745_5,
        -1.096_772_511_904_417_2,
    ),
    (
        2.0,
        10.0,
        0.25,
        3.935_513_594_477_851_7,
        14.744_695_697_835_82,
    ),
    (3.0, 0.0, 0.6, 4.981_415_768_571_729, 0.0),
];

#[test]
fn hurwitz_against_reference() {
    for (sigma, t, a, re, im) in HURWITZ {
        let h = hurwitz(s(sigma, t), a).unwrap();
        let want = Complex64::new(re, im);
        let tol = if t >= 10.0 && sigma <= 1.2 {
            10.0 * (t / PI).powf(-2.0 - sigma)
        } else {
            1e-10
        };
        assert!((h - want).norm() <= tol, "{sigma} {t} {a}: {h} vs {want}");
    }
}

#[test]
fn hurwitz_at_one_is_zeta() {
    for (sigma, t) in [(0.5, 1100.5), (0.3, 549.4975), (2.0, 3.0)] {
        let h = hurwitz(s(sigma, t), 1.0).unwrap();
        let z = zeta_geometric(s(sigma, t)).unwrap();
        assert!(
            (h - z.value).norm() <= z.est_error.max(1e-10),
            "{sigma} {t}"
        );
    }
}

#[test]
fn hurwitz_half_shift_identity() {
    let sp = s(2.0, 10.0);
    let two_s = Complex64::new(2.0, 0.0).powc(sp.to_complex());
    let want = (two_s - 1.0) * zeta_em_auto(sp).unwrap().value;
    assert!((hurwitz(sp, 0.5).unwrap() - want).norm() < 1e-10);
}

#[test]
fn hurwitz_domain() {
    assert!(hurwitz(s(0.5, 100.0), 0.0).is_err());
    assert!(hurwitz(s(0.5, 100.0), 1.5).is_err());
    assert!(hurwitz(s(1.0, 0.0), 0.5).is_err());
    assert!(hurwitz_regular(s(1.0, 0.0), 0.5)
        .unwrap()
        .norm()
        .is_finite());
}

#[test]
fn hurwitz_regular_at_one_is_minus_digamma() {
    // ζ(s, a) − 1/(s−1) → −ψ(a) at s = 1; ψ(1/2) = −γ − 2 ln 2
    let psi_half = -0.577_215_664_901_532_9 - 2.0 * 2f64.ln();
    let v = hurwitz_regular(s(1.0, 0.0), 0.5).unwrap();
    assert!((v.re + psi_half).abs() < 1e-10 && v.im.abs() < 1e-12, "{v}");
}

#[test]
fn l_function_matches_direct_sum() {
    let sp = s(2.0, 5.0);
    for chi in characters(7).unwrap() {
        let l = l_function(sp, &chi).unwrap();
        let d = dirichlet_series_direct(sp, &chi, 100_000).unwrap();
        assert!(
            (l - d).norm() < 2e-5,
            "{:?}: {}",
            chi.exponents,
            (l - d).norm()
        );
    }
}

#[test]
fn l_function_on_the_critical_line() {
    // k = 7 at a zero height of ζ; each L is finite and the principal one is (1 − 7^{−s})ζ(s)
    let sp = s(0.5, 10_911.995_1);
    let chars = characters(7).unwrap();
    let l0 = l_function(sp, &chars[0]).unwrap();
    let z = zeta_geometric(sp).unwrap();
    let seven = Complex64::new(7.0, 0.0).powc(-sp.to_complex());
    assert!((l0 - (1.0 - seven) * z.value).norm() <= 2.0 * z.est_error + 1e-6);
    for chi in &chars[1..] {
        assert!(l_function(sp, chi).unwrap().norm().is_finite());
    }
}

#[test]
fn l_at_one() {
    let chi4 = characters(4)
        .unwrap()
        .into_iter()
        .find(|c| !c.principal)
        .unwrap();
    assert!((l_function(s(1.0, 0.0), &chi4).unwrap() - PI / 4.0).norm() < 1e-4);
    let principal = &characters(4).unwrap()[0];
    assert!(l_function(s(1.0, 0.0), principal).is_err());
}

#[test]
fn euler_products() {
    let sp = s(2.0, 3.0);
    let one = Complex64::new(1.0, 0.0);
    let want = one / (one - Complex64::new(2.0, 0.0).powc(-sp.to_complex()));
    assert!((euler_product(sp, 2).unwrap() - want).norm() < 1e-14);
    assert!((euler_product(s(4.0, 0.0), 1000).unwrap().re - PI.powi(4) / 90.0).abs() < 1e-6);
    assert!((euler_product(s(2.0, 0.0), 100_000).unwrap().re - PI * PI / 6.0).abs() < 1e-4);
    assert!(euler_product(s(1.0, 5.0), 100).is_err());
}

#[test]
fn euler_product_within_tail_bound() {
    for sigma in [1.5, 2.0, 4.0] {
        for p_max in [100, 10_000] {
            let sp = s(sigma, 7.0);
            let z = zeta_em_auto(sp).unwrap().value;
            let e = euler_product(sp, p_max).unwrap();
            assert!(
                ((e - z) / z).norm() <= euler_tail_bound(sigma, p_max),
                "{sigma} {p_max}"
            );
        }
    }
}

#[test]
fn landau_minima_at_primes() {
    let zeros: Vec<f64> = scan_zeros(10.0, 80.0, 0.05)
        .unwrap()
        .iter()
        .take(20)
        .map(|z| z.alpha)
        .collect();
    assert_eq!(zeros.len(), 20);
    let xs: Vec<f64> = (0..2900).map(|i| 1.5 + 0.01 * i as f64).collect();
    let f = landau_cosine_sum(&xs, &zeros).unwrap();
    let minima = local_minima(&xs, &f);
    for p in [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0] {
        assert!(
            minima.iter().any(|m| (m.x - p).abs() <= 0.2),
            "no minimum near {p}"
        );
    }
}

#[test]
fn landau_edges() {
    assert_eq!(landau_cosine_sum(&[2.0, 3.0], &[]).unwrap(), vec![0.0, 0.0]);
    assert!(landau_cosine_sum(&[1.0], &[14.13]).is_err());
    assert!(ensemble_real_sum(&[14.13, 21.02], 20.0, 10).is_err());
    assert!(ensemble_real_sum(&[14.13], 20.0, 0).is_err());
}

#[test]
fn ensemble_rows() {
    let zeros = [14.134_725_141_734_695, 21.022_039_638_771_556];
    let table = ensemble_real_sum(&zeros, 25.0, 6).unwrap();
    assert_eq!(table.rows.len(), 6);
    assert_eq!(table.rows[0].change, 2.0);
    let r = table.rows[2];
    let want: f64 = zeros.iter().map(|a| (a * 3f64.ln()).cos()).sum();
    assert!((r.cos_sum - want).abs() < 1e-14);
    assert!((r.change - want / 3f64.sqrt()).abs() < 1e-14);
    let cum: f64 = table.rows.iter().map(|r| r.change).sum();
    assert!((table.rows[5].cumulative - cum).abs() < 1e-12);
    assert!(!table.rows[5].is_prime_power && table.rows[3].is_prime_power);
    assert!(expected_prime_change(1200.0, 2) < 0.0);
}

#[test]
fn primes_locate_zeros() {
    let ys: Vec<f64> = (0..=7000).map(|i| 1100.0 + 0.01 * i as f64).collect();
    let f = invert_primes_to_zeros(&ys, 2, 100_000, PrimeWeight::LogOverSqrt).unwrap();
    let candidates = candidate_zeros(&ys, &f);
    let zeros = scan_zeros(1100.0, 1170.0, 0.05).unwrap();
    assert!(
        (candidates.len() as i64 - zeros.len() as i64).abs() <= 3,
        "{} vs {}",
        candidates.len(),
        zeros.len()
    );
    for z in &zeros {
        let near = candidates
            .iter()
            .map(|c| (c - z.alpha).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(near < 0.1, "{}: {near}", z.alpha);
    }
}

#[test]
fn empty_prime_range() {
    let f = invert_primes_to_zeros(&[1100.0, 1101.0], 200, 100, PrimeWeight::Unit).unwrap();
    assert_eq!(f, vec![0.0, 0.0]);
    assert!(invert_primes_to_zeros(&[1.0], 1, 100, PrimeWeight::Unit).is_err());
}
