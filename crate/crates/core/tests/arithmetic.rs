mod common;

use common::*;
use intmat_core::poly::dense;
use intmat_core::{IntPoly, ModPoly, RatPoly, Zmod};
use num_bigint::BigInt;
use proptest::prelude::*;

fn int_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..=50, 0..=max_deg + 1).prop_map(|c| poly(&c))
}

fn monic(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 0..max_deg).prop_map(|mut c| {
        c.push(1);
        poly(&c)
    })
}

proptest! {
    #[test]
    fn divrem_reconstructs_over_z(a in int_poly(10), b in monic(5)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert!(r.degree() < b.degree());
        let back = IntPoly::new(naive_mul(q.coeffs(), b.coeffs()));
        prop_assert_eq!(&(&back + &r), &a);
    }

    #[test]
    fn reduce_mod_is_a_ring_morphism(a in int_poly(6), b in int_poly(6), d in 2u64..30) {
        let (ra, rb) = (a.reduce_mod(d).unwrap(), b.reduce_mod(d).unwrap());
        prop_assert_eq!((&a + &b).reduce_mod(d).unwrap(), &ra + &rb);
        prop_assert_eq!((&a * &b).reduce_mod(d).unwrap(), &ra * &rb);
    }

    #[test]
    fn canonicalize_is_idempotent_and_value_preserving(g in int_poly(6), d in -40i64..=40) {
        prop_assume!(d != 0);
        let f = RatPoly::canonicalize(g.clone(), BigInt::from(d)).unwrap();
        let again = RatPoly::canonicalize(f.numerator().clone(), f.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.denominator() > &BigInt::from(0));
        // g * d' == g' * d coefficient-wise
        let lhs = g.scale(f.denominator());
        let rhs = f.numerator().scale(&BigInt::from(d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips_through_coefficients(g in int_poly(6)) {
        // the printed form lists exactly the non-zero terms
        let s = g.to_string();
        let terms = g.coeffs().iter().filter(|c| **c != BigInt::from(0)).count();
        if terms == 0 {
            prop_assert_eq!(s, "0");
        } else {
            let separators = s.matches(" + ").count() + s.matches(" - ").count();
            prop_assert_eq!(separators + 1, terms);
        }
    }
}

#[test]
fn divrem_exhaustive_over_small_residue_rings() {
    for d in [2u64, 3, 4, 6] {
        let ring = Zmod::new(d).unwrap();
        let values: Vec<i64> = (0..d as i64).collect();
        for a in coefficient_box(4, &values) {
            let a: Vec<u64> = a.iter().map(|&c| c as u64).collect();
            for b in coefficient_box(2, &values) {
                let mut b: Vec<u64> = b.iter().map(|&c| c as u64).collect();
                b.push(1);
                let (q, r) = dense::divrem_monic(&ring, &a, &b).unwrap();
                assert!(dense::degree(&r) < dense::degree(&b));
                let back = dense::add(&ring, &dense::mul(&ring, &q, &b), &r);
                assert_eq!(back, dense::trim(&ring, a.clone()), "d={d} a={a:?} b={b:?}");
            }
        }
    }
}

#[test]
fn worked_examples() {
    let (q, r) = poly(&[0, 0, 0, 1]).divrem(&poly(&[1, 0, 1])).unwrap();
    assert_eq!((q, r), (poly(&[0, 1]), poly(&[0, -1])));
    let p = poly(&[3, -2, 0, 1]);
    assert_eq!(p.divrem(&p).unwrap(), (IntPoly::one(), IntPoly::zero()));

    assert_eq!(ratpoly(&[0, -2, 2], 4), ratpoly(&[0, -1, 1], 2));
    assert_eq!(ratpoly(&[0, -2, 2], 4).denominator(), &BigInt::from(2));
    let f = ratpoly(&[3, -3], -6);
    assert_eq!(f.numerator(), &poly(&[-1, 1]));
    assert_eq!(f.denominator(), &BigInt::from(2));

    assert_eq!(poly(&[4, 3, 2]).reduce_mod(2).unwrap().coeffs(), &[0, 1]);
    assert!(IntPoly::zero().reduce_mod(7).unwrap().is_zero());
    assert!(poly(&[0, 0, 0, 5]).reduce_mod(5).unwrap().is_zero());
    assert!(ModPoly::from_residues(3, vec![1, 3]).is_err());
}

#[test]
fn rejects_bad_inputs() {
    assert!(RatPoly::canonicalize(poly(&[1]), BigInt::from(0)).is_err());
    assert!(poly(&[1, 2, 2]).divrem(&poly(&[1, 2])).is_err());
    assert!(poly(&[1, 2]).reduce_mod(1).is_err());
}
