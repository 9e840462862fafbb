use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use psupp_core::arith::{Field, Scalar};
use psupp_core::weyl::{Exp, WeylElement, WeylRing};

const N: usize = 2;

type Terms = Vec<(Vec<i32>, i64)>;

// Terms x^alpha d^beta with total degree at most 6.
fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0i32..4, 2 * N), -4i64..5), 0..5).prop_map(|v| {
        v.into_iter()
            .map(|(mut k, c)| {
                while k.iter().sum::<i32>() > 6 {
                    let i = k.iter().position(|&e| e > 0).unwrap();
                    k[i] -= 1;
                }
                (k, c)
            })
            .collect()
    })
}

fn build(ring: &Arc<WeylRing>, t: &Terms) -> WeylElement {
    let f = ring.field();
    WeylElement::from_terms(ring, t.iter().map(|(k, c)| (Exp::from_slice(k), f.from_i64(*c))))
}

type QPoly = BTreeMap<Vec<u32>, BigRational>;

fn rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(r) => r.clone(),
        _ => panic!("expected a rational"),
    }
}

// The operator acting on a polynomial, computed term by term from the
// definition: d_i lowers an exponent, x_i raises it.
fn act(e: &WeylElement, f: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (key, c) in e.terms() {
        for (mono, v) in f {
            let mut m = mono.clone();
            let mut coeff = rational(c) * v;
            for i in 0..N {
                for _ in 0..key[N + i] {
                    if m[i] == 0 {
                        coeff = BigRational::zero();
                        break;
                    }
                    coeff *= BigRational::from_integer(BigInt::from(m[i]));
                    m[i] -= 1;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            for i in 0..N {
                m[i] += key[i] as u32;
            }
            let slot = out.entry(m).or_insert_with(BigRational::zero);
            *slot += coeff;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn test_polys() -> Vec<QPoly> {
    let mut out = Vec::new();
    for a in 0..5u32 {
        for b in 0..5u32 {
            out.push(QPoly::from([(vec![a, b], BigRational::one())]));
        }
    }
    out
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn associative_over_q(a in terms(), b in terms(), c in terms()) {
        let r = WeylRing::new(N, &Field::rationals());
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn associative_over_f5(a in terms(), b in terms(), c in terms()) {
        let r = WeylRing::new(N, &f5());
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_is_composition(a in terms(), b in terms()) {
        // Q[x] is a faithful module, so (ab) f = a (b f) pins the product down.
        let r = WeylRing::new(N, &Field::rationals());
        let (a, b) = (build(&r, &a), build(&r, &b));
        let ab = a.mul(&b);
        for f in test_polys() {
            prop_assert_eq!(act(&ab, &f), act(&a, &act(&b, &f)));
        }
    }

    #[test]
    fn adjoint_is_an_anti_involution(a in terms(), b in terms(), fi in 0usize..2) {
        let field = if fi == 0 { Field::rationals() } else { f5() };
        let r = WeylRing::new(N, &field);
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
    }

    #[test]
    fn pth_powers_are_central(a in terms(), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let field = Field::prime(p).unwrap();
        let r = WeylRing::new(N, &field);
        let a = build(&r, &a);
        for i in 0..N {
            let xp = WeylElement::x(&r, i).pow(p);
            let dp = WeylElement::d(&r, i).pow(p);
            prop_assert!(xp.commutator(&a).is_zero());
            prop_assert!(dp.commutator(&a).is_zero());
        }
        let z = WeylElement::x(&r, 0).pow(p).mul(&WeylElement::d(&r, 1).pow(p));
        prop_assert!(z.commutator(&a).is_zero());
    }
}

#[test]
fn canonical_commutation() {
    for field in [Field::rationals(), f5()] {
        let r = WeylRing::new(N, &field);
        for i in 0..N {
            for j in 0..N {
                let c = WeylElement::d(&r, i).commutator(&WeylElement::x(&r, j));
                let expected = if i == j { WeylElement::one(&r) } else { WeylElement::zero(&r) };
                assert_eq!(c, expected);
                assert!(WeylElement::x(&r, i).commutator(&WeylElement::x(&r, j)).is_zero());
                assert!(WeylElement::d(&r, i).commutator(&WeylElement::d(&r, j)).is_zero());
            }
        }
    }
}

#[test]
fn lucas_coefficients_in_char_p() {
    // d^p x^p = sum_k k! binom(p,k)^2 x^{p-k} d^{p-k}, and every k > 0 term vanishes mod p
    for p in [2u64, 3, 5, 7] {
        let field = Field::prime(p).unwrap();
        let r = WeylRing::new(1, &field);
        let dp = WeylElement::d(&r, 0).pow(p);
        let xp = WeylElement::x(&r, 0).pow(p);
        let expected = xp.mul(&dp);
        assert_eq!(dp.mul(&xp), expected, "p = {p}");
    }
}

#[test]
fn chart_inverse() {
    let field = f5();
    let r = WeylRing::with_chart(1, &field, vec![1]).unwrap();
    let x = WeylElement::x(&r, 0);
    let xi = WeylElement::x_pow(&r, 0, -1).unwrap();
    assert_eq!(x.mul(&xi), WeylElement::one(&r));
    assert_eq!(xi.mul(&x), WeylElement::one(&r));
    // [d, x^-1] = -x^-2
    let c = WeylElement::d(&r, 0).commutator(&xi);
    assert_eq!(c, WeylElement::x_pow(&r, 0, -2).unwrap().neg());
}
