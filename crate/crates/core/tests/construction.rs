mod common;

use avoidance::detectors::find_congruential_power;
use avoidance::number::{construct_peng, element_order, find_generator, is_prime, is_qr, mod_pow};
use avoidance::table::golden;
use common::naive_congruential;

const PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[test]
fn parameters_follow_the_recipe() {
    for p in PRIMES {
        let (params, _) = construct_peng(p).unwrap();
        // g generates, and nothing smaller does
        assert_eq!(element_order(params.g, p).unwrap(), p - 1);
        assert!((2..params.g).all(|x| element_order(x, p).unwrap() < p - 1));
        assert_eq!(params.c, params.g * params.g % p);
        assert_eq!(element_order(params.c, p).unwrap(), (p - 1) / 2);
        let want_square = matches!(p % 8, 5 | 7);
        assert_eq!(is_qr(params.a, p).unwrap(), want_square, "p={p}");
        assert!((1..params.a).all(|x| is_qr(x, p).unwrap() != want_square));
        assert_eq!(params.word_len, p * p - p - 1);
    }
}

#[test]
fn words_are_first_differences_of_e() {
    for p in PRIMES {
        let (params, word) = construct_peng(p).unwrap();
        let e = |k: u64| (mod_pow(params.c, k, p) + params.a * mod_pow(k, 2, p)) % p;
        assert_eq!(word.len() as u64, p * p - p - 1);
        for (i, &f) in word.iter().enumerate() {
            let k = i as u64 + 1;
            assert_eq!(f as u64, (e(k + 1) + p - e(k)) % p, "p={p} k={k}");
        }
    }
}

#[test]
fn words_avoid_congruential_squares() {
    for p in PRIMES {
        let (_, word) = construct_peng(p).unwrap();
        assert!(find_congruential_power(&word, 2, p as u32)
            .unwrap()
            .is_none());
        if p <= 13 {
            assert_eq!(naive_congruential(&word, 2, p as u32), None, "p={p}");
        }
    }
}

#[test]
fn construction_stays_below_exact_values() {
    for p in [3u64, 5, 7] {
        let (l, _) = golden(2, p as u32).unwrap();
        assert!(p * p - p - 1 <= l as u64);
    }
}

#[test]
fn all_primes_in_letter_range() {
    for p in (3..=127).filter(|&p| is_prime(p)) {
        let (_, word) = construct_peng(p).unwrap();
        assert!(word.iter().all(|&a| (a as u64) < p));
    }
    assert_eq!(find_generator(127).unwrap(), 3);
}
